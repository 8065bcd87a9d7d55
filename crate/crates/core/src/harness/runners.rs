use super::config::{Experiment, ExperimentConfig};
use super::output::*;
use crate::control::{is_controllable, simple_spectrum};
use crate::eigen::{dot, eigh};
use crate::eigstruct::{classify, regularized_lcd_on, Class};
use crate::error::{Error, Result};
use crate::matgen::{sample_gnpq, sample_wigner, spectral_norm_event, IntSymMatrix};
use crate::rng::SeedSpec;
use crate::smallball::{designed_family, family_report};
use crate::stats::{ks_critical_1pct, ks_statistic, linear_fit, median, wilson_interval, Z95};
use crate::vectors::{RationalVector, UnitFloatVector};
use rayon::prelude::*;
use std::path::PathBuf;
use std::time::Instant;

/// Radii at which the smallball family is evaluated.
pub const FAMILY_RADII: [f64; 5] = [0.001, 0.003, 0.01, 0.03, 0.1];

/// Stream for graph trial (n, t); shared by the plain and loops sweeps.
pub fn graph_seed(master: u64, n: usize, trial: usize) -> SeedSpec {
    SeedSpec::new(master).tagged("graph", &[n as u64, trial as u64])
}

/// Stream for Wigner trial (n, t); shared by every Wigner experiment.
pub fn wigner_seed(master: u64, n: usize, trial: usize) -> SeedSpec {
    SeedSpec::new(master).tagged("wigner", &[n as u64, trial as u64])
}

/// Runs `f` for every (n, trial) in parallel and returns records in
/// (n, trial) order.
fn run_trials<F>(cfg: &ExperimentConfig, seed_of: fn(u64, usize, usize) -> SeedSpec, f: F) -> Result<Vec<Vec<TrialRecord>>>
where
    F: Fn(usize, &SeedSpec) -> Result<TrialValues> + Sync,
{
    cfg.n_list
        .iter()
        .map(|&n| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = seed_of(cfg.master_seed, n, trial);
                    let start = Instant::now();
                    let values = f(n, &seed)?;
                    Ok(TrialRecord {
                        experiment: cfg.experiment,
                        n,
                        trial,
                        seed,
                        values,
                        wall_time_s: start.elapsed().as_secs_f64(),
                    })
                })
                .collect()
        })
        .collect()
}

fn expect(cfg: &ExperimentConfig, kinds: &[Experiment]) -> Result<()> {
    cfg.validate()?;
    if kinds.contains(&cfg.experiment) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "runner cannot execute a {} config",
            cfg.experiment.id()
        )))
    }
}

fn sweep_table(experiment: Experiment, per_n: Vec<Vec<TrialRecord>>, success: fn(&TrialValues) -> bool) -> SweepTable {
    let mut rows = Vec::with_capacity(per_n.len());
    for recs in &per_n {
        let trials = recs.len();
        let k = recs.iter().filter(|r| success(&r.values)).count();
        let (ci_lo, ci_hi) = wilson_interval(k, trials, Z95);
        rows.push(SweepRow {
            n: recs[0].n,
            trials,
            controllable: k,
            fraction: k as f64 / trials as f64,
            ci_lo,
            ci_hi,
        });
    }
    let fit = power_fit(&rows);
    SweepTable {
        experiment,
        rows,
        fit,
        records: per_n.into_iter().flatten().collect(),
    }
}

/// Log-log least squares on the failure fraction, skipping dimensions where
/// every trial succeeded.
fn power_fit(rows: &[SweepRow]) -> Option<PowerFit> {
    let (x, y): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.fraction < 1.0)
        .map(|r| ((r.n as f64).ln(), (1.0 - r.fraction).ln()))
        .unzip();
    let (a, s) = linear_fit(&x, &y)?;
    Some(PowerFit {
        alpha_hat: -s,
        c_hat: a.exp(),
        points: x.len(),
    })
}

fn controllability(a: &IntSymMatrix, cfg: &ExperimentConfig) -> Result<TrialValues> {
    let v = is_controllable(a, &RationalVector::ones(a.n()), cfg.rank_policy)?;
    Ok(TrialValues::Controllability {
        controllable: v.controllable,
        rank: v.rank,
        certificate: v.certificate,
    })
}

fn is_success(v: &TrialValues) -> bool {
    matches!(
        v,
        TrialValues::Controllability { controllable: true, .. } | TrialValues::SimpleSpectrum { simple: true }
    )
}

/// Fraction of G(n,½) samples for which (A, 𝟏) is controllable.
pub fn run_godsil_sweep(cfg: &ExperimentConfig) -> Result<SweepTable> {
    expect(cfg, &[Experiment::GodsilSweep])?;
    let per_n = run_trials(cfg, graph_seed, |n, seed| {
        controllability(&sample_gnpq(n, cfg.p, 0.0, seed)?, cfg)
    })?;
    Ok(sweep_table(cfg.experiment, per_n, is_success))
}

/// As [`run_godsil_sweep`] on G(n,½,q).
pub fn run_loops_sweep(cfg: &ExperimentConfig) -> Result<SweepTable> {
    expect(cfg, &[Experiment::LoopsSweep])?;
    let per_n = run_trials(cfg, graph_seed, |n, seed| {
        controllability(&sample_gnpq(n, cfg.p, cfg.q, seed)?, cfg)
    })?;
    Ok(sweep_table(cfg.experiment, per_n, is_success))
}

/// Fraction of Wigner samples with a simple spectrum.
pub fn run_simple_spectrum(cfg: &ExperimentConfig) -> Result<SweepTable> {
    expect(cfg, &[Experiment::SimpleSpectrum])?;
    let per_n = run_trials(cfg, wigner_seed, |n, seed| {
        let w = sample_wigner(n, &cfg.xi, &cfg.zeta, seed)?;
        Ok(TrialValues::SimpleSpectrum {
            simple: simple_spectrum(&w),
        })
    })?;
    Ok(sweep_table(cfg.experiment, per_n, is_success))
}

/// min |vᵀ𝟏| over unit eigenvectors, or `None` when the spectrum is not
/// simple.
fn min_dot(w: &IntSymMatrix) -> Result<Option<f64>> {
    if !simple_spectrum(w) {
        return Ok(None);
    }
    let ones = vec![1.0; w.n()];
    let e = eigh(w)?;
    Ok(e.eigenvectors
        .iter()
        .map(|v| dot(v, &ones).abs())
        .reduce(f64::min))
}

/// Distribution of min |vᵀ𝟏| per dimension; non-simple spectra are skipped.
pub fn run_dot_profile(cfg: &ExperimentConfig) -> Result<DotProfileTable> {
    expect(cfg, &[Experiment::DotProfile])?;
    let per_n = run_trials(cfg, wigner_seed, |n, seed| {
        let w = sample_wigner(n, &cfg.xi, &cfg.zeta, seed)?;
        Ok(TrialValues::DotProfile {
            min_dot: min_dot(&w)?,
            norm_event: spectral_norm_event(&w, cfg.m).resolved(),
        })
    })?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for recs in &per_n {
        let n = recs[0].n;
        let mut kept = Vec::new();
        let mut kept_norm = Vec::new();
        let mut norm_event = 0;
        for r in recs {
            let TrialValues::DotProfile { min_dot, norm_event: ev } = r.values else {
                unreachable!("dot-profile trial");
            };
            rows.push(DotProfileRow {
                n,
                trial: r.trial,
                min_dot,
                skipped: min_dot.is_none(),
            });
            let holds = ev == Some(true);
            norm_event += holds as usize;
            if let Some(d) = min_dot {
                kept.push(d);
                if holds {
                    kept_norm.push(d);
                }
            }
        }
        let sq = (n as f64).sqrt();
        let frac = |xs: &[f64], thr: f64| {
            if xs.is_empty() {
                0.0
            } else {
                xs.iter().filter(|&&d| d < thr * sq).count() as f64 / xs.len() as f64
            }
        };
        summary.push(DotProfileSummary {
            n,
            trials: recs.len(),
            skipped: recs.len() - kept.len(),
            below_1e6: frac(&kept, 1e-6),
            below_1e9: frac(&kept, 1e-9),
            norm_event,
            below_1e6_given_norm: frac(&kept_norm, 1e-6),
            median_min_dot: median(&kept),
        });
    }
    Ok(DotProfileTable {
        rows,
        summary,
        records: per_n.into_iter().flatten().collect(),
    })
}

/// Compressibility and regularized LCD of every eigenvector.
pub fn run_eig_structure(cfg: &ExperimentConfig) -> Result<EigStructureTable> {
    expect(cfg, &[Experiment::EigStructure])?;
    let consts = &cfg.constants;
    let per_n = run_trials(cfg, wigner_seed, |n, seed| {
        let w = sample_wigner(n, &cfg.xi, &cfg.zeta, seed)?;
        let e = eigh(&w)?;
        let mut eigvecs = Vec::with_capacity(n);
        for (k, v) in e.eigenvectors.into_iter().enumerate() {
            let x = UnitFloatVector::normalized(v)?;
            let report = classify(&x, consts)?;
            let incompressible = report.class == Class::Incompressible;
            let rlcd_lower = if incompressible {
                Some(regularized_lcd_on(&x, consts, &report.spread_set, cfg.rlcd_mode)?.value_lower)
            } else {
                None
            };
            eigvecs.push(EigRow {
                n,
                trial: 0,
                eig_index: k,
                incompressible,
                sparse_dist: report.sparse_distance,
                rlcd_lower,
            });
        }
        Ok(TrialValues::EigStructure { eigvecs })
    })?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for recs in &per_n {
        let n = recs[0].n;
        let mut total = 0;
        let mut incompressible = 0;
        let mut values = Vec::new();
        for r in recs {
            let TrialValues::EigStructure { eigvecs } = &r.values else {
                unreachable!("eig-structure trial");
            };
            for row in eigvecs {
                total += 1;
                incompressible += row.incompressible as usize;
                values.extend(row.rlcd_lower);
                rows.push(EigRow { trial: r.trial, ..row.clone() });
            }
        }
        let power = (n as f64).powf(cfg.alpha);
        summary.push(EigStructureSummary {
            n,
            eigenvectors: total,
            incompressible_fraction: incompressible as f64 / total as f64,
            median_rlcd: median(&values),
            above_power: if values.is_empty() {
                0.0
            } else {
                values.iter().filter(|&&v| v >= power).count() as f64 / values.len() as f64
            },
            subset_size: consts.subset_size(n),
        });
    }
    let records = per_n
        .into_iter()
        .flatten()
        .map(|mut r| {
            if let TrialValues::EigStructure { eigvecs } = &mut r.values {
                eigvecs.iter_mut().for_each(|e| e.trial = r.trial);
            }
            r
        })
        .collect();
    Ok(EigStructureTable {
        alpha: cfg.alpha,
        rows,
        summary,
        records,
    })
}

/// (ψᵢψⱼwᵢⱼ): conjugation of W by diag(ψ).
pub fn sign_symmetrize(w: &IntSymMatrix, psi: &[i64]) -> Result<IntSymMatrix> {
    if psi.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: psi.len(),
        });
    }
    Ok(IntSymMatrix::from_upper(w.n(), |i, j| psi[i] * psi[j] * w.get(i, j)))
}

fn draw_signs(cfg: &ExperimentConfig, n: usize, seed: &SeedSpec) -> Vec<i64> {
    let mut rng = seed.tagged("psi", &[]).rng();
    (0..n).map(|_| cfg.psi.sample_scaled(&mut rng, 1)).collect()
}

/// Compares min |vᵀ𝟏| of W with that of ψψᵀ∘W′ for an independent W′, and
/// checks that W and ψψᵀ∘W share their spectrum.
pub fn run_symmetrization(cfg: &ExperimentConfig) -> Result<SymmetrizationTable> {
    expect(cfg, &[Experiment::Symmetrization])?;
    let per_n = run_trials(cfg, wigner_seed, |n, seed| {
        let psi = draw_signs(cfg, n, seed);
        let w = sample_wigner(n, &cfg.xi, &cfg.zeta, seed)?;
        let w2 = sign_symmetrize(&w, &psi)?;
        let (e, e2) = (eigh(&w)?, eigh(&w2)?);
        let max_eig_diff = e
            .eigenvalues
            .iter()
            .zip(&e2.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let other = sample_wigner(n, &cfg.xi, &cfg.zeta, &seed.tagged("independent", &[]))?;
        Ok(TrialValues::Symmetrization {
            min_dot_w: min_dot(&w)?,
            min_dot_w2: min_dot(&sign_symmetrize(&other, &psi)?)?,
            max_eig_diff,
        })
    })?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for recs in &per_n {
        let n = recs[0].n;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut worst: f64 = 0.0;
        for r in recs {
            let TrialValues::Symmetrization { min_dot_w, min_dot_w2, max_eig_diff } = r.values else {
                unreachable!("symmetrization trial");
            };
            rows.push(SymmetrizationRow {
                n,
                pair: r.trial,
                min_dot_w,
                min_dot_w2,
                max_eig_diff,
            });
            worst = worst.max(max_eig_diff);
            if let (Some(x), Some(y)) = (min_dot_w, min_dot_w2) {
                a.push(x);
                b.push(y);
            }
        }
        let (ks, crit) = if a.is_empty() {
            (0.0, f64::INFINITY)
        } else {
            (ks_statistic(&a, &b), ks_critical_1pct(a.len(), b.len()))
        };
        summary.push(SymmetrizationSummary {
            n,
            pairs: recs.len(),
            compared: a.len(),
            ks_statistic: ks,
            ks_critical: crit,
            ks_passes: ks <= crit,
            max_eig_diff: worst,
        });
    }
    Ok(SymmetrizationTable {
        rows,
        summary,
        records: per_n.into_iter().flatten().collect(),
    })
}

/// Empirical concentration of the designed family at [`FAMILY_RADII`],
/// with `trials` samples per member and radius.
pub fn run_smallball_family(cfg: &ExperimentConfig) -> Result<FamilyTable> {
    expect(cfg, &[Experiment::SmallballFamily])?;
    let family = designed_family();
    let seed = SeedSpec::new(cfg.master_seed).tagged("family", &[]);
    let l = cfg.constants.l;
    let reports = FAMILY_RADII
        .iter()
        .map(|&t| family_report(&family, &cfg.xi, l, t, cfg.trials, &seed))
        .collect::<Result<Vec<_>>>()?;
    let c = reports
        .iter()
        .flat_map(|r| r.rows.iter().map(move |row| row.levy / (l * (r.t + 1.0 / row.lcd))))
        .fold(0.0, f64::max);
    Ok(FamilyTable { reports, c })
}

fn dispatch(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    Ok(match cfg.experiment {
        Experiment::GodsilSweep => ExperimentOutput::Sweep(run_godsil_sweep(cfg)?),
        Experiment::LoopsSweep => ExperimentOutput::Sweep(run_loops_sweep(cfg)?),
        Experiment::SimpleSpectrum => ExperimentOutput::Sweep(run_simple_spectrum(cfg)?),
        Experiment::DotProfile => ExperimentOutput::DotProfile(run_dot_profile(cfg)?),
        Experiment::EigStructure => ExperimentOutput::EigStructure(run_eig_structure(cfg)?),
        Experiment::Symmetrization => ExperimentOutput::Symmetrization(run_symmetrization(cfg)?),
        Experiment::SmallballFamily => ExperimentOutput::Family(run_smallball_family(cfg)?),
    })
}

/// Runs the configured experiment, on a dedicated pool when `threads` is set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    match cfg.threads {
        None => dispatch(cfg),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Unresolved(format!("thread pool: {e}")))?
            .install(|| dispatch(cfg)),
    }
}

/// Writes the CSV to `output_path`, if one is configured.
pub fn write_output(cfg: &ExperimentConfig, out: &ExperimentOutput) -> Result<Option<PathBuf>> {
    let Some(path) = &cfg.output_path else {
        return Ok(None);
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, out.to_csv())?;
    Ok(Some(path.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgen::AtomDistribution;

    fn cfg(e: Experiment, n: Vec<usize>, trials: usize) -> ExperimentConfig {
        ExperimentConfig::new(e, n, trials, 11)
    }

    #[test]
    fn small_godsil_sweep() {
        let t = run_godsil_sweep(&cfg(Experiment::GodsilSweep, vec![1, 2, 3, 8], 40)).unwrap();
        assert_eq!(t.rows.len(), 4);
        // a single vertex is controllable; no graph on 2 or 3 vertices is
        assert_eq!(t.rows[0].controllable, 40);
        assert_eq!(t.rows[1].controllable, 0);
        assert_eq!(t.rows[2].controllable, 0);
        for r in &t.rows {
            assert!(r.ci_lo <= r.fraction && r.fraction <= r.ci_hi);
        }
        assert_eq!(t.records.len(), 160);
        assert!(t.fit.is_some());
    }

    #[test]
    fn loops_at_q_zero_match_plain_sweep() {
        let a = run_godsil_sweep(&cfg(Experiment::GodsilSweep, vec![6, 9], 30)).unwrap();
        let b = run_loops_sweep(&cfg(Experiment::LoopsSweep, vec![6, 9], 30)).unwrap();
        assert_eq!(a.rows, b.rows);
        let va: Vec<_> = a.records.iter().map(|r| &r.values).collect();
        let vb: Vec<_> = b.records.iter().map(|r| &r.values).collect();
        assert_eq!(va, vb);
    }

    #[test]
    fn wrong_runner_is_a_config_error() {
        let err = run_godsil_sweep(&cfg(Experiment::LoopsSweep, vec![3], 1)).unwrap_err();
        assert!(err.is_config());
    }

    #[test]
    fn dot_profile_skips_match_simple_spectrum() {
        let dp = run_dot_profile(&cfg(Experiment::DotProfile, vec![3, 6], 60)).unwrap();
        let ss = run_simple_spectrum(&cfg(Experiment::SimpleSpectrum, vec![3, 6], 60)).unwrap();
        for (s, r) in dp.summary.iter().zip(&ss.rows) {
            assert_eq!(s.skipped, r.trials - r.controllable);
        }
        assert!(dp.summary.iter().any(|s| s.skipped > 0));
        assert!(dp.to_csv().starts_with("n,trial,min_dot,skipped\n"));
    }

    #[test]
    fn eig_structure_rows() {
        let mut c = cfg(Experiment::EigStructure, vec![20], 3);
        c.constants = crate::eigstruct::StructureConstants::new(0.1, 0.1, None, None).unwrap();
        let t = run_eig_structure(&c).unwrap();
        assert_eq!(t.rows.len(), 60);
        assert_eq!(t.rows[25].trial, 1);
        assert_eq!(t.rows[25].eig_index, 5);
        for r in &t.rows {
            assert_eq!(r.incompressible, r.rlcd_lower.is_some());
            if let Some(v) = r.rlcd_lower {
                assert!(v >= c.constants.l);
            }
        }
    }

    #[test]
    fn symmetrization_preserves_spectrum() {
        let t = run_symmetrization(&cfg(Experiment::Symmetrization, vec![12], 40)).unwrap();
        assert!(t.summary[0].max_eig_diff <= 1e-8);
        assert_eq!(t.rows.len(), 40);
    }

    #[test]
    fn unit_signs_leave_w_unchanged() {
        let w = sample_wigner(9, &AtomDistribution::Rademacher, &AtomDistribution::Rademacher, &SeedSpec::new(4)).unwrap();
        let same = sign_symmetrize(&w, &[1; 9]).unwrap();
        assert_eq!(same, w);
        let (e, e2) = (eigh(&w).unwrap(), eigh(&same).unwrap());
        assert_eq!(e.eigenvectors, e2.eigenvectors);
    }

    #[test]
    fn signs_conjugate_eigenvectors() {
        let w = sample_wigner(7, &AtomDistribution::Rademacher, &AtomDistribution::Rademacher, &SeedSpec::new(5)).unwrap();
        let psi = [1, -1, -1, 1, 1, -1, 1];
        let w2 = sign_symmetrize(&w, &psi).unwrap();
        let (e, e2) = (eigh(&w).unwrap(), eigh(&w2).unwrap());
        for (v, v2) in e.eigenvectors.iter().zip(&e2.eigenvectors) {
            let mapped: Vec<f64> = v.iter().zip(&psi).map(|(x, &s)| x * s as f64).collect();
            let d = dot(&mapped, v2).abs();
            assert!((d - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn output_path_is_written() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = cfg(Experiment::GodsilSweep, vec![4], 5);
        c.output_path = Some(dir.path().join("sub/out.csv"));
        let out = run_experiment(&c).unwrap();
        let p = write_output(&c, &out).unwrap().unwrap();
        assert_eq!(std::fs::read_to_string(p).unwrap(), out.to_csv());
    }
}
