//! Discrete-time single-input single-output systems `x(t+1) = A x(t) + b u(t)`, `y = c x`.

pub mod spectrum;
pub mod tail;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::linalg::{Backend, Matrix, Rational, Scalar, Sign};

pub use spectrum::{eigen_sorted, OrderedSpectrum};
pub use tail::{minimal_realization, tail_evidence, MinimalRealization, TailEvidence};

/// Longest sample run used to reach a tail bound, per backend.
pub const EXACT_SAMPLE_CAP: usize = 500;
pub const FLOAT_SAMPLE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LtiSystem<T: Scalar> {
    pub a: Matrix<T>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Scalar> LtiSystem<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>, c: Vec<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        if b.len() != n || c.len() != n {
            return Err(Error::SizeMismatch(format!(
                "A is {n}x{n} but b has {} and c has {} entries",
                b.len(),
                c.len()
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn empty() -> Self {
        Self { a: Matrix::zeros(0, 0), b: Vec::new(), c: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `g(1), …, g(len)` with `g(t) = c A^{t-1} b`, by state propagation.
    pub fn impulse_response(&self, len: usize) -> Vec<T> {
        if T::BACKEND == Backend::Exact {
            return exact_impulse_response(self, len).iter().map(T::from_rational).collect();
        }
        let mut x = self.b.clone();
        let mut out = Vec::with_capacity(len);
        for t in 0..len {
            out.push(crate::linalg::matrix::dot(&self.c, &x));
            if t + 1 < len {
                x = self.a.mul_vec(&x).expect("square system");
            }
        }
        out
    }

    pub fn to_f64(&self) -> LtiSystem<f64> {
        LtiSystem {
            a: self.a.to_f64(),
            b: self.b.iter().map(|x| x.to_f64()).collect(),
            c: self.c.iter().map(|x| x.to_f64()).collect(),
        }
    }

    /// `(Aᵀ, cᵀ, bᵀ)`: same impulse response, observability and controllability swapped.
    pub fn dual(&self) -> Self {
        Self { a: self.a.transpose(), b: self.c.clone(), c: self.b.clone() }
    }
}

fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled_integers<T: Scalar>(values: &[T]) -> (Vec<BigInt>, BigInt) {
    let q: Vec<Rational> = values.iter().map(|x| x.to_rational()).collect();
    let d = common_denominator(&q);
    let ints = q.iter().map(|x| (x * Rational::from_integer(d.clone())).to_integer()).collect();
    (ints, d)
}

/// Propagates `M^{t} (d_b b)` over the integers with `M = d_A A`, dividing once per sample.
fn exact_impulse_response<T: Scalar>(sys: &LtiSystem<T>, len: usize) -> Vec<Rational> {
    let n = sys.dim();
    let (m, da) = scaled_integers(sys.a.data());
    let (mut x, db) = scaled_integers(&sys.b);
    let (c, dc) = scaled_integers(&sys.c);
    let mut denom = db * dc;
    let mut out = Vec::with_capacity(len);
    for t in 0..len {
        let num: BigInt = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
        out.push(Rational::new(num, denom.clone()));
        if t + 1 < len {
            x = (0..n).map(|i| (0..n).map(|j| &m[i * n + j] * &x[j]).sum()).collect();
            denom *= &da;
        }
    }
    out
}

/// `t × n` matrix whose `i`-th row is `c A^{i-1}`.
pub fn observability_matrix<T: Scalar>(a: &Matrix<T>, c: &[T], t: usize) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if c.len() != a.rows() {
        return Err(Error::SizeMismatch(format!(
            "c has {} entries for a {}x{} A",
            c.len(),
            a.rows(),
            a.cols()
        )));
    }
    let mut rows = Vec::with_capacity(t);
    let mut row = c.to_vec();
    for i in 0..t {
        rows.push(row.clone());
        if i + 1 < t {
            row = a.vec_mul(&row)?;
        }
    }
    if t == 0 {
        return Ok(Matrix::zeros(0, a.rows()));
    }
    Matrix::from_rows(rows)
}

/// `max(50, 10 n)`.
pub fn default_horizon(n: usize) -> usize {
    (10 * n).max(50)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Requirement {
    /// `g(t)` strictly of one sign for every `t ≥ 1`.
    Strict,
    /// Strict on `t ≤ strict_prefix`, one non-strict sign afterwards.
    NonStrict { strict_prefix: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtPosStatus {
    StrictPositive,
    StrictNegative,
    NonNegative,
    NonPositive,
    Violated,
    /// Samples are fine but no tail certificate exists.
    VerifiedUpToHorizonOnly,
    /// Float samples too close to zero to classify.
    Inconclusive,
}

impl ExtPosStatus {
    pub fn is_certified(self) -> bool {
        matches!(
            self,
            ExtPosStatus::StrictPositive
                | ExtPosStatus::StrictNegative
                | ExtPosStatus::NonNegative
                | ExtPosStatus::NonPositive
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub t: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtPosVerdict {
    pub status: ExtPosStatus,
    pub requirement: Requirement,
    /// Number of samples checked.
    pub horizon: usize,
    pub tail_start: Option<usize>,
    pub first_violation: Option<Violation>,
    /// Sign the samples follow (`+1`/`-1`), when one was established.
    pub sample_sign: Option<i8>,
    pub tail: TailEvidence,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Strict or non-strict external positivity/negativity. The sign is the one of the first
/// decisive sample; use [`assess`] directly for a prefix-strict requirement.
pub fn external_positivity<T: Scalar>(sys: &LtiSystem<T>, strict: bool, horizon: usize) -> ExtPosVerdict {
    let req = if strict { Requirement::Strict } else { Requirement::NonStrict { strict_prefix: 0 } };
    assess(sys, req, horizon).0
}

/// Checks `req` on `g(1..)` and returns the verdict with the samples it looked at.
pub fn assess<T: Scalar>(sys: &LtiSystem<T>, req: Requirement, horizon: usize) -> (ExtPosVerdict, Vec<T>) {
    let tail = tail_evidence(sys);
    let cap = match T::BACKEND {
        Backend::Exact => EXACT_SAMPLE_CAP,
        Backend::Float => FLOAT_SAMPLE_CAP,
    };
    let mut notes = Vec::new();
    let prefix = match req {
        Requirement::Strict => usize::MAX,
        Requirement::NonStrict { strict_prefix } => strict_prefix,
    };
    let mut usable_tail = tail.start();
    if let Some(ts) = usable_tail {
        if ts > cap {
            notes.push(format!("tail bound starts at t = {ts}, beyond the sampling cap {cap}"));
            usable_tail = None;
        }
    }
    let explicit_prefix = match req {
        Requirement::Strict => 0,
        Requirement::NonStrict { strict_prefix } => strict_prefix.min(cap),
    };
    let mut len = horizon.max(1).max(explicit_prefix);
    if let Some(ts) = usable_tail {
        len = len.max(ts);
    }
    if T::BACKEND == Backend::Exact {
        len = len.max(sys.dim() + 1);
    }
    let len = len.min(cap.max(horizon));
    let g = sys.impulse_response(len);

    let mut sign: Option<i8> = None;
    let mut violation = None;
    let mut unclear: Option<usize> = None;
    for (i, v) in g.iter().enumerate() {
        let t = i + 1;
        let strict_here = t <= prefix;
        let covered = usable_tail.is_some_and(|ts| t >= ts);
        match v.sign() {
            s @ (Sign::Positive | Sign::Negative) => {
                let e = if s == Sign::Positive { 1 } else { -1 };
                match sign {
                    None => sign = Some(e),
                    Some(prev) if prev != e => {
                        violation = Some(Violation { t, value: v.render() });
                        break;
                    }
                    _ => {}
                }
            }
            Sign::Zero if strict_here => {
                violation = Some(Violation { t, value: v.render() });
                break;
            }
            Sign::Zero => {}
            Sign::Indeterminate => {
                if !covered && unclear.is_none() {
                    unclear = Some(t);
                }
            }
        }
    }

    let tail_ok = match (&tail, usable_tail) {
        (TailEvidence::Dominant { .. }, Some(_)) => {
            let ts = tail.sign();
            if sign.is_some() && ts != sign {
                notes.push("dominant mode sign disagrees with the samples".into());
                false
            } else {
                if sign.is_none() {
                    sign = ts;
                }
                true
            }
        }
        (TailEvidence::Vanishing { from }, Some(_)) => {
            if *from <= prefix {
                notes.push(format!("response vanishes from t = {from}"));
                false
            } else {
                true
            }
        }
        _ => false,
    };
    if let TailEvidence::Unavailable { reason } = &tail {
        notes.push(format!("no tail certificate: {reason}"));
    }

    let status = if violation.is_some() {
        ExtPosStatus::Violated
    } else if let Some(t) = unclear {
        notes.push(format!("sample at t = {t} lies within tolerance of zero"));
        ExtPosStatus::Inconclusive
    } else if !tail_ok {
        ExtPosStatus::VerifiedUpToHorizonOnly
    } else {
        match (req, sign.unwrap_or(1)) {
            (Requirement::Strict, 1) => ExtPosStatus::StrictPositive,
            (Requirement::Strict, _) => ExtPosStatus::StrictNegative,
            (Requirement::NonStrict { .. }, 1) => ExtPosStatus::NonNegative,
            (Requirement::NonStrict { .. }, _) => ExtPosStatus::NonPositive,
        }
    };
    let verdict = ExtPosVerdict {
        status,
        requirement: req,
        horizon: g.len(),
        tail_start: if tail_ok { usable_tail } else { None },
        first_violation: violation,
        sample_sign: sign,
        tail,
        notes,
    };
    (verdict, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_sys(a: &str) -> LtiSystem<Rational> {
        let p = |s: &str| Rational::parse_decimal(s).unwrap();
        LtiSystem::new(Matrix::from_rows(vec![vec![p(a)]]).unwrap(), vec![p("1")], vec![p("1")]).unwrap()
    }

    #[test]
    fn impulse_response_of_scalar_system() {
        let g = scalar_sys("0.5").impulse_response(4);
        let p = |s: &str| Rational::parse_decimal(s).unwrap();
        assert_eq!(g, vec![p("1"), p("0.5"), p("0.25"), p("0.125")]);
    }

    #[test]
    fn observability_rows_follow_recursion() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 1], &[0, 2]]).unwrap();
        let c = vec![Rational::from_integer(1.into()), Rational::from_integer(0.into())];
        let o = observability_matrix(&a, &c, 3).unwrap();
        assert_eq!(o, Matrix::from_i64_rows(&[&[1, 0], &[1, 1], &[1, 3]]).unwrap());
        assert_eq!(observability_matrix(&a, &c, 1).unwrap().row(0), c);
    }

    #[test]
    fn geometric_decay_is_strictly_positive() {
        let v = external_positivity(&scalar_sys("0.5"), true, 50);
        assert_eq!(v.status, ExtPosStatus::StrictPositive);
        assert_eq!(v.tail_start, Some(1));
    }

    #[test]
    fn alternating_decay_is_violated_at_two() {
        let v = external_positivity(&scalar_sys("-0.5"), true, 50);
        assert_eq!(v.status, ExtPosStatus::Violated);
        assert_eq!(v.first_violation.unwrap().t, 2);
    }

    #[test]
    fn float_backend_agrees() {
        let s = scalar_sys("0.5").to_f64();
        assert_eq!(external_positivity(&s, true, 50).status, ExtPosStatus::StrictPositive);
    }

    #[test]
    fn prefix_strict_requirement() {
        // g = (1, 1, 0, 0, ...): strict for two samples, zero afterwards.
        let a = Matrix::<Rational>::from_i64_rows(&[&[0, 0], &[1, 0]]).unwrap();
        let one = Rational::from_integer(1.into());
        let s = LtiSystem::new(a, vec![one.clone(), one.clone()], vec![one.clone(), one]).unwrap();
        let (v, g) = assess(&s, Requirement::NonStrict { strict_prefix: 2 }, 10);
        assert_eq!(g.len(), 10);
        assert_eq!(v.status, ExtPosStatus::NonNegative);
        let (v, _) = assess(&s, Requirement::NonStrict { strict_prefix: 3 }, 10);
        assert_eq!(v.status, ExtPosStatus::Violated);
        assert_eq!(external_positivity(&s, true, 10).status, ExtPosStatus::Violated);
    }
}
