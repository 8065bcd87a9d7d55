//! Least common denominator D_L(x) = inf{θ > 0 : dist(θx, ℤⁿ) < L√log₊(θ/L)}.
//!
//! The scan walks θ upward through pieces on which every coordinate keeps
//! its nearest integer. On such a piece dist(θx, ℤⁿ)² is a convex quadratic
//! in θ, so its minimum over any sub-interval is exact, while the threshold
//! g(θ) = L√log₊(θ/L) is increasing. An interval whose minimal distance is
//! at least g at its right end contains no crossing; other intervals are
//! bisected, left first, down to [`LCD_BISECT_TOL`].

use crate::error::{Error, Result};
use crate::vectors::UnitFloatVector;
use serde::{Deserialize, Serialize};

pub const LCD_BISECT_TOL: f64 = 1e-9;

/// Bracket for D_L(x). When `resolved`, `upper` is a witness θ with
/// dist(θx, ℤⁿ) < L√log₊(θ/L) and no crossing was found below `lower`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LcdResult {
    pub lower: f64,
    pub upper: f64,
    pub witness_theta: Option<f64>,
    pub resolved: bool,
}

/// 10·n², the default upper end of the scan.
pub fn default_theta_max(n: usize) -> f64 {
    10.0 * (n as f64).powi(2)
}

fn threshold(theta: f64, l: f64) -> f64 {
    if theta <= l {
        0.0
    } else {
        l * (theta / l).ln().sqrt()
    }
}

pub(crate) fn dist_to_lattice(theta: f64, x: &[f64]) -> f64 {
    x.iter()
        .map(|&xk| {
            let t = theta * xk;
            (t - t.round()).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

struct Piece<'a> {
    x: &'a [f64],
    m: Vec<f64>,
    /// Minimiser of Σ(θxₖ − mₖ)² over ℝ.
    vertex: f64,
}

impl Piece<'_> {
    fn dist(&self, theta: f64) -> f64 {
        self.x
            .iter()
            .zip(&self.m)
            .map(|(xk, mk)| (theta * xk - mk).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn min_dist(&self, a: f64, b: f64) -> f64 {
        self.dist(self.vertex.clamp(a, b))
    }
}

/// Nearest integers on the piece starting at `a`, and where it ends.
fn piece_at(x: &[f64], a: f64) -> (Vec<f64>, f64) {
    let mut end = f64::INFINITY;
    let mut m = Vec::with_capacity(x.len());
    for &xk in x {
        if xk == 0.0 {
            m.push(0.0);
            continue;
        }
        let s = xk.signum();
        let mut mk = (a * xk).round();
        let mut brk = (mk + 0.5 * s) / xk;
        if brk <= a {
            mk += s;
            brk = (mk + 0.5 * s) / xk;
        }
        m.push(mk);
        end = end.min(brk);
    }
    (m, end)
}

fn search(piece: &Piece, a: f64, b: f64, l: f64, tol: f64) -> Option<(f64, f64)> {
    if piece.min_dist(a, b) >= threshold(b, l) {
        return None;
    }
    if b - a <= tol {
        let candidates = [piece.vertex.clamp(a, b), b];
        let hit = candidates
            .into_iter()
            .filter(|&t| dist_to_lattice(t, piece.x) < threshold(t, l))
            .min_by(f64::total_cmp);
        return hit.map(|w| (a, w));
    }
    let mid = 0.5 * (a + b);
    if mid <= a || mid >= b {
        return search(piece, a, b, l, f64::INFINITY);
    }
    search(piece, a, mid, l, tol).or_else(|| search(piece, mid, b, l, tol))
}

/// D_L(x) bracketed on [max(L, 1/(2‖x‖∞)), θ_max].
pub fn lcd(x: &UnitFloatVector, l: f64, theta_max: f64) -> Result<LcdResult> {
    lcd_with_bisect_tol(x, l, theta_max, LCD_BISECT_TOL)
}

pub fn lcd_with_bisect_tol(
    x: &UnitFloatVector,
    l: f64,
    theta_max: f64,
    tol: f64,
) -> Result<LcdResult> {
    if !(l >= 1.0 && l.is_finite()) {
        return Err(Error::Precondition(format!("L must be at least 1, got {l}")));
    }
    if !(theta_max > l) {
        return Err(Error::Precondition(format!(
            "theta_max = {theta_max} must exceed L = {l}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("bisection tolerance must be positive".into()));
    }
    let xs = x.as_slice();
    let floor = l.max(0.5 / x.sup_norm());
    let unresolved = |lower: f64| LcdResult {
        lower,
        upper: f64::INFINITY,
        witness_theta: None,
        resolved: false,
    };
    let result = 'scan: {
        let mut a = floor;
        while a < theta_max {
            let (m, end) = piece_at(xs, a);
            let b = end.min(theta_max).max(a.next_up());
            let sq: f64 = xs.iter().map(|v| v * v).sum();
            let vertex = xs.iter().zip(&m).map(|(xk, mk)| xk * mk).sum::<f64>() / sq;
            let piece = Piece { x: xs, m, vertex };
            if let Some((lo, w)) = search(&piece, a, b, l, tol) {
                break 'scan LcdResult {
                    lower: lo,
                    upper: w,
                    witness_theta: Some(w),
                    resolved: true,
                };
            }
            a = b;
        }
        unresolved(theta_max.max(floor))
    };
    assert!(result.lower >= l && result.lower >= 0.5 / x.sup_norm());
    assert!(result.lower <= result.upper);
    Ok(result)
}
