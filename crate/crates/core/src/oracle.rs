//! Randomized falsification of variation bounds: feed inputs with few sign changes and
//! count sign changes in the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{float_tolerance, Matrix, Scalar};
use crate::lti::observability_matrix;
use crate::variation::{v_minus_signs, v_plus_signs};

/// Fraction of input entries set to zero.
pub const ZERO_FRACTION: f64 = 0.25;
/// Magnitudes are log-uniform on `[MIN_MAGNITUDE, MAX_MAGNITUDE]`.
pub const MIN_MAGNITUDE: f64 = 1e-3;
pub const MAX_MAGNITUDE: f64 = 1e3;

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Nonzero vector of length `m` with at most `k` sign changes: up to `k` breakpoints split
/// it into segments of alternating sign, then some entries are zeroed.
pub fn sample_bounded_variation(m: usize, k: usize, rng: &mut impl Rng) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    let k = k.min(m - 1);
    let changes = rng.random_range(0..=k);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, m - 1, changes).into_iter().map(|i| i + 1).collect();
    cuts.sort_unstable();
    let mut positive = rng.random_bool(0.5);
    let (lo, hi) = (MIN_MAGNITUDE.ln(), MAX_MAGNITUDE.ln());
    let mut next_cut = cuts.iter().peekable();
    let mut u = Vec::with_capacity(m);
    for i in 0..m {
        if next_cut.peek().is_some_and(|&&c| c == i) {
            next_cut.next();
            positive = !positive;
        }
        let mag = rng.random_range(lo..hi).exp();
        u.push(if positive { mag } else { -mag });
    }
    for x in u.iter_mut() {
        if rng.random_bool(ZERO_FRACTION) {
            *x = 0.0;
        }
    }
    if u.iter().all(|&x| x == 0.0) {
        let i = rng.random_range(0..m);
        let mag = rng.random_range(lo..hi).exp();
        u[i] = if rng.random_bool(0.5) { mag } else { -mag };
    }
    u
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// The count exceeds the bound even after treating near-zero outputs as zero.
    Violation,
    /// The count exceeds the bound only through outputs within tolerance of zero.
    Suspect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleViolation {
    pub trial: u64,
    pub severity: Severity,
    pub input: Vec<f64>,
    pub output_variation: i64,
    /// 1-based output positions where a new sign begins.
    pub witness_times: Vec<usize>,
    /// Dominant-mode sign of the output beyond the horizon, when the operator has one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail_sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub k: usize,
    pub strict: bool,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub horizon: Option<usize>,
    pub violations: Vec<OracleViolation>,
}

impl OracleReport {
    pub fn violation_count(&self) -> usize {
        self.violations.iter().filter(|v| v.severity == Severity::Violation).count()
    }

    pub fn suspect_count(&self) -> usize {
        self.violations.iter().filter(|v| v.severity == Severity::Suspect).count()
    }
}

fn exact_polarity(x: f64) -> Option<bool> {
    if x > 0.0 {
        Some(true)
    } else if x < 0.0 {
        Some(false)
    } else {
        None
    }
}

/// Polarity with entries within `tol · max|y|` read as zero.
fn robust_polarity(y: &[f64]) -> Vec<Option<bool>> {
    let scale = y.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = float_tolerance() * scale;
    y.iter().map(|&x| if x.abs() <= tol { None } else { exact_polarity(x) }).collect()
}

fn sign_change_times(signs: &[Option<bool>]) -> Vec<usize> {
    let mut last = None;
    let mut out = Vec::new();
    for (i, s) in signs.iter().enumerate() {
        if let Some(s) = s {
            if last.is_some_and(|l| l != *s) {
                out.push(i + 1);
            }
            last = Some(*s);
        }
    }
    out
}

/// Classifies an output against the bound `k - 1`.
fn judge(y: &[f64], k: usize, strict: bool) -> Option<(Severity, i64, Vec<usize>)> {
    let raw: Vec<Option<bool>> = y.iter().map(|&x| exact_polarity(x)).collect();
    let robust = robust_polarity(y);
    let bound = k as i64 - 1;
    let (definite, possible) = if strict {
        (v_plus_signs(raw.iter().copied()), v_plus_signs(robust.iter().copied()))
    } else {
        (v_minus_signs(robust.iter().copied()), v_minus_signs(raw.iter().copied()))
    };
    if definite > bound {
        Some((Severity::Violation, definite, sign_change_times(&robust)))
    } else if possible > bound {
        Some((Severity::Suspect, possible, sign_change_times(&raw)))
    } else {
        None
    }
}

fn run_trials(
    x: &Matrix<f64>,
    k: usize,
    strict: bool,
    trials: u64,
    seed: u64,
    tail: impl Fn(&[f64]) -> Option<i8> + Sync,
) -> Vec<OracleViolation> {
    let m = x.cols();
    let k_in = k.saturating_sub(1);
    (0..trials)
        .into_par_iter()
        .filter_map(|trial| {
            let u = sample_bounded_variation(m, k_in, &mut trial_rng(seed, trial));
            let y = x.mul_vec(&u).expect("input length matches columns");
            judge(&y, k, strict).map(|(severity, output_variation, witness_times)| OracleViolation {
                trial,
                severity,
                tail_sign: tail(&u),
                input: u,
                output_variation,
                witness_times,
            })
        })
        .collect()
}

/// Searches for `u` with `v⁻(u) ≤ k-1` and `v⁻(Xu) ≥ k` (`v⁺` in strict mode).
pub fn falsify_matrix_vb<T: Scalar>(x: &Matrix<T>, k: usize, strict: bool, trials: u64, seed: u64) -> OracleReport {
    let violations = run_trials(&x.to_f64(), k, strict, trials, seed, |_| None);
    OracleReport { k, strict, trials, seed, horizon: None, violations }
}

/// Dominant real mode `(λ, c v, w)` of `A` with `w` normalized so `wᵀv = 1`.
fn dominant_mode(a: &Matrix<f64>, c: &[f64]) -> Option<(f64, f64, Vec<f64>)> {
    let spec = crate::lti::eigen_sorted(a).ok()?;
    let (lambda, mult) = spec.dominant()?;
    if mult != 1 || lambda.im != 0.0 || spec.subdominant_modulus() >= lambda.norm() * (1.0 - 1e-9) {
        return None;
    }
    let shifted = |m: &Matrix<f64>| {
        let n = m.rows();
        let d = m.sub(&Matrix::identity(n).scale(&lambda.re)).ok()?;
        let svd = d.to_nalgebra().svd(true, true);
        let vt = svd.v_t?;
        let (imin, _) = svd.singular_values.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1))?;
        Some(vt.row(imin).iter().copied().collect::<Vec<f64>>())
    };
    let v = shifted(a)?;
    let w = shifted(&a.transpose())?;
    let wv = crate::linalg::matrix::dot(&w, &v);
    if wv.abs() < 1e-12 {
        return None;
    }
    let cv = crate::linalg::matrix::dot(c, &v);
    Some((lambda.re, cv, w.iter().map(|x| x / wv).collect()))
}

/// Searches for initial states `x₀` with `v⁻(x₀) ≤ k-1` whose outputs `c A^{t-1} x₀`,
/// `t = 1..horizon`, change sign at least `k` times.
pub fn falsify_operator_vb<T: Scalar>(
    a: &Matrix<T>,
    c: &[T],
    k: usize,
    strict: bool,
    horizon: usize,
    trials: u64,
    seed: u64,
) -> crate::Result<OracleReport> {
    let af = a.to_f64();
    let cf: Vec<f64> = c.iter().map(|x| x.to_f64()).collect();
    let o = observability_matrix(&af, &cf, horizon)?;
    let mode = dominant_mode(&af, &cf);
    let tail = |x0: &[f64]| {
        let (lambda, cv, w) = mode.as_ref()?;
        let coeff = cv * crate::linalg::matrix::dot(w, x0);
        if *lambda <= 0.0 || coeff == 0.0 {
            return None;
        }
        Some(if coeff > 0.0 { 1 } else { -1 })
    };
    let violations = run_trials(&o, k, strict, trials, seed, tail);
    Ok(OracleReport { k, strict, trials, seed, horizon: Some(horizon), violations })
}

/// Regenerates the input of one trial.
pub fn replay(len: usize, k: usize, seed: u64, trial: u64) -> Vec<f64> {
    sample_bounded_variation(len, k.saturating_sub(1), &mut trial_rng(seed, trial))
}
