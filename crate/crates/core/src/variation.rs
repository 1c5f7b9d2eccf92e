//! Sign-change counts of finite sequences and the Gaussian smoother.

use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Scalar, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariationKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariationCount {
    pub value: i64,
    pub kind: VariationKind,
}

/// Reading of one entry: `Some(true)` positive, `Some(false)` negative, `None` zero.
/// Float entries within tolerance count as zero.
fn polarity<T: Scalar>(x: &T) -> Option<bool> {
    match x.sign() {
        Sign::Positive => Some(true),
        Sign::Negative => Some(false),
        Sign::Zero | Sign::Indeterminate => None,
    }
}

/// Sign changes after deleting zeros; `-1` for the zero vector.
pub fn v_minus<T: Scalar>(u: &[T]) -> i64 {
    v_minus_signs(u.iter().map(polarity))
}

/// Largest number of sign changes over all sign assignments to the zero entries.
pub fn v_plus<T: Scalar>(u: &[T]) -> i64 {
    v_plus_signs(u.iter().map(polarity))
}

pub fn v_minus_signs(signs: impl IntoIterator<Item = Option<bool>>) -> i64 {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    let mut seen = false;
    for s in signs.into_iter().flatten() {
        if seen && last != Some(s) {
            changes += 1;
        }
        last = Some(s);
        seen = true;
    }
    if seen {
        changes
    } else {
        -1
    }
}

pub fn v_plus_signs(signs: impl IntoIterator<Item = Option<bool>>) -> i64 {
    let signs: Vec<Option<bool>> = signs.into_iter().collect();
    if signs.is_empty() {
        return 0;
    }
    let Some(first) = signs.iter().flatten().next().copied() else {
        return signs.len() as i64 - 1;
    };
    let lead = signs.iter().take_while(|s| s.is_none()).count();
    // Leading zeros alternate backwards from the first nonzero entry; `prev` starts
    // as the sign a virtual entry before position 0 would need.
    let mut prev = if lead % 2 == 0 { !first } else { first };
    let mut changes = 0;
    for (i, s) in signs.iter().enumerate() {
        let cur = s.unwrap_or(!prev);
        if i > 0 && cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    changes
}

pub fn v_minus_count<T: Scalar>(u: &[T]) -> VariationCount {
    VariationCount { value: v_minus(u), kind: VariationKind::Lower }
}

pub fn v_plus_count<T: Scalar>(u: &[T]) -> VariationCount {
    VariationCount { value: v_plus(u), kind: VariationKind::Upper }
}

/// `T(σ)` with entries `exp(-σ (i-j)^2)`.
pub fn gauss_smoother(n: usize, sigma: f64) -> Matrix<f64> {
    Matrix::from_fn(n, n, |i, j| {
        let d = i as f64 - j as f64;
        (-sigma * d * d).exp()
    })
}
