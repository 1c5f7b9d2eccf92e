//! Scalar backends.
//!
//! Two backends share one trait: [`Rational`] (arbitrary precision, exact)
//! and `f64` (fast, compared against a process-wide tolerance). Certificates
//! are meant to run on the exact backend; eigenvalue work always happens in
//! floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const DEFAULT_TOL: f64 = 1e-9;

static FLOAT_TOL: AtomicU64 = AtomicU64::new(DEFAULT_TOL.to_bits());

/// Tolerance used when classifying the sign of an `f64`.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOL.load(Ordering::Relaxed))
}

pub fn set_float_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    FLOAT_TOL.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

/// Sign of a single value. `Indeterminate` is only produced by the float
/// backend, for values within tolerance of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    Indeterminate,
}

impl Sign {
    pub fn is_strict(self) -> bool {
        matches!(self, Sign::Positive | Sign::Negative)
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
            s => s,
        }
    }

    /// `+1` / `-1` for strict signs.
    pub fn epsilon(self) -> Option<i8> {
        match self {
            Sign::Positive => Some(1),
            Sign::Negative => Some(-1),
            _ => None,
        }
    }

    pub fn from_epsilon(eps: i8) -> Sign {
        if eps >= 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
            Sign::Indeterminate => "?",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;
    /// Exact backend converts the binary value of `v` without rounding.
    fn from_f64(v: f64) -> Self;
    /// Parses `"1.25"`, `"-3e-2"`, `"7"` or `"3/4"`. Exact for the rational backend.
    fn parse_decimal(s: &str) -> Result<Self>;
    fn to_f64(&self) -> f64;
    /// Exact rational value; floats convert their binary value without rounding.
    fn to_rational(&self) -> Rational;
    fn from_rational(r: &Rational) -> Self;
    fn sign(&self) -> Sign;
    fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self.clone()
        } else {
            self.clone()
        }
    }
    /// True when the value must be treated as zero during elimination.
    fn is_negligible(&self, scale: f64) -> bool;
    /// Full-precision text form used in trace files.
    fn render(&self) -> String;
    fn determinant(square: &crate::linalg::Matrix<Self>) -> Self;
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn parse_decimal(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| bad_number(s))?;
            let q: f64 = q.trim().parse().map_err(|_| bad_number(s))?;
            if q == 0.0 {
                return Err(bad_number(s));
            }
            return Ok(p / q);
        }
        let v: f64 = s.parse().map_err(|_| bad_number(s))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad_number(s))
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn sign(&self) -> Sign {
        let tol = float_tolerance();
        if *self > tol {
            Sign::Positive
        } else if *self < -tol {
            Sign::Negative
        } else {
            Sign::Indeterminate
        }
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negligible(&self, scale: f64) -> bool {
        f64::abs(*self) <= float_tolerance() * scale.max(1.0)
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn determinant(square: &crate::linalg::Matrix<Self>) -> Self {
        crate::linalg::matrix::det_partial_pivot(square)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn parse_decimal(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn sign(&self) -> Sign {
        match self.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        render_rational(self, 40)
    }

    fn determinant(square: &crate::linalg::Matrix<Self>) -> Self {
        crate::linalg::matrix::det_bareiss(square)
    }
}

fn bad_number(s: &str) -> Error {
    Error::Parse(format!("not a finite number: {s:?}"))
}

/// Parses a decimal literal (optionally with exponent) or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(bad_number(s));
        }
        return Ok(p / q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad_number(s))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad_number(s));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad_number(s));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad_number(s))?
    };
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad_number(s));
    }
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Large numerators/denominators: shift both to 64 significant bits first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    let exp = shift_n - shift_d;
    (n / d) * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Renders `r` as a terminating decimal when its denominator allows it (and the
/// expansion is short), otherwise in scientific notation with `sig` significant digits.
pub fn render_rational(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    let places = twos.max(fives);
    if d.is_one() && places <= 60 {
        let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
        let mut digits = scaled.to_integer().abs().to_string();
        let negative = r.is_negative();
        if places > 0 {
            if digits.len() <= places {
                digits = format!("{}{}", "0".repeat(places - digits.len() + 1), digits);
            }
            let split = digits.len() - places;
            digits = format!("{}.{}", &digits[..split], &digits[split..]);
            digits = digits.trim_end_matches('0').trim_end_matches('.').to_string();
        }
        return if negative { format!("-{digits}") } else { digits };
    }
    render_scientific(r, sig)
}

fn render_scientific(r: &Rational, sig: usize) -> String {
    let negative = r.is_negative();
    let a = Signed::abs(r);
    let ten = Rational::from_integer(BigInt::from(10));
    // Estimate exponent from bit lengths, then correct.
    let approx = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut exp = approx.floor() as i64;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            num_traits::pow(ten.clone(), e as usize)
        } else {
            Rational::one() / num_traits::pow(ten.clone(), (-e) as usize)
        }
    };
    loop {
        let scaled = &a / pow10(exp);
        if scaled >= ten {
            exp += 1;
        } else if scaled < Rational::one() {
            exp -= 1;
        } else {
            break;
        }
    }
    let scaled = &a / pow10(exp) * pow10(sig as i64 - 1);
    let mut m = scaled.round().to_integer();
    if m.to_string().len() > sig {
        m /= BigInt::from(10);
        exp += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    format!("{}{}e{}", if negative { "-" } else { "" }, body, exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.785").unwrap(), q(785, 1000));
        assert_eq!(parse_rational("-1.20").unwrap(), q(-6, 5));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn float_sign_respects_tolerance() {
        assert_eq!(1e-12f64.sign(), Sign::Indeterminate);
        assert_eq!((-1e-3f64).sign(), Sign::Negative);
        assert_eq!(0.0f64.sign(), Sign::Indeterminate);
        assert_eq!(q(0, 1).sign(), Sign::Zero);
        assert_eq!(q(-1, 10_000_000).sign(), Sign::Negative);
    }

    #[test]
    fn renders_rationals() {
        assert_eq!(render_rational(&q(785, 1000), 40), "0.785");
        assert_eq!(render_rational(&q(-3, 1), 40), "-3");
        assert_eq!(render_rational(&q(1, 3), 5), "3.3333e-1");
        assert_eq!(render_rational(&q(-200, 3), 4), "-6.667e1");
        assert_eq!(render_rational(&q(1, 40), 40), "0.025");
    }

    #[test]
    fn rational_to_float_handles_huge_parts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(big.clone() * BigInt::from(3), big * BigInt::from(4));
        assert_eq!(rational_to_f64(&r), 0.75);
        let tiny = Rational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), 320));
        assert!(rational_to_f64(&tiny) < 1e-300);
    }
}
