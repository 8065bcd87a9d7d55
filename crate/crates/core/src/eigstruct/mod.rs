//! Additive structure of unit vectors: LCD, regularized LCD,
//! compressibility and spread sets, delocalization of input vectors and
//! ε-nets of low-dimensional spheres.

mod compress;
mod constants;
mod lcd;
mod net;
mod rlcd;

pub use compress::{
    classify, classify_excluding, is_delocalized, spread_policy, spread_window, Class,
    CompressibilityReport,
};
pub use constants::{ceil_count, floor_count, ConstantsSpec, StructureConstants};
pub use lcd::{default_theta_max, lcd, lcd_with_bisect_tol, LcdResult, LCD_BISECT_TOL};
pub use net::{sphere_net, sphere_net_with, NET_PROBES};
pub use rlcd::{
    calibrate_rlcd_constant, regularized_lcd, regularized_lcd_on, RegularizedLcdResult, RlcdMode,
    EXACT_SUBSET_LIMIT, HEURISTIC_SUBSETS,
};
