//! Minimal realizations and the dominant-mode bound that fixes the sign of an impulse
//! response beyond a computable time.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::spectrum::{spectrum_of_poly, spectrum_of_values, OrderedSpectrum, TIE_TOL};
use super::LtiSystem;
use crate::linalg::poly::{self, Poly};
use crate::linalg::{Backend, Matrix, Scalar};

/// Power iterations allowed when searching for a contracting power of the remainder.
const MAX_POWER: usize = 5000;

/// A realization of the same impulse response with no unobservable or uncontrollable part,
/// in observer companion form: `c = e_1`, `b = (g(1), …, g(q))`.
#[derive(Debug, Clone)]
pub struct MinimalRealization<T: Scalar> {
    pub system: LtiSystem<T>,
    /// Characteristic polynomial of `system.a`, lowest degree first.
    pub charpoly: Vec<T>,
}

impl<T: Scalar> MinimalRealization<T> {
    pub fn dim(&self) -> usize {
        self.system.dim()
    }
}

/// Smallest `p` with `A^p v` in the span of `v, …, A^{p-1} v`, and the coefficients of that
/// combination.
fn krylov<T: Scalar>(a: &Matrix<T>, v: &[T]) -> (usize, Vec<T>) {
    let n = v.len();
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    let mut vectors: Vec<Vec<T>> = Vec::new();
    let mut cur = v.to_vec();
    loop {
        let scale = cur.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let mut red = cur.clone();
        for (piv, bvec) in &basis {
            if red[*piv].is_zero() {
                continue;
            }
            let f = red[*piv].clone() / bvec[*piv].clone();
            for i in 0..n {
                red[i] = red[i].clone() - f.clone() * bvec[i].clone();
            }
        }
        let pivot = (0..n)
            .filter(|&i| !red[i].is_negligible(scale))
            .max_by(|&i, &j| red[i].to_f64().abs().total_cmp(&red[j].to_f64().abs()));
        match pivot {
            Some(piv) if vectors.len() < n => {
                basis.push((piv, red));
                vectors.push(cur.clone());
                cur = a.mul_vec(&cur).expect("square system");
            }
            _ => break,
        }
    }
    let p = vectors.len();
    if p == 0 {
        return (0, Vec::new());
    }
    let k = Matrix::from_fn(n, p, |i, j| vectors[j][i].clone());
    if T::BACKEND == Backend::Float {
        // Normal equations square the condition number; solve the least-squares problem by SVD.
        let svd = k.to_nalgebra().svd(true, true);
        let rhs = DVector::from_iterator(n, cur.iter().map(|x| x.to_f64()));
        let coeffs = svd
            .solve(&rhs, f64::EPSILON * svd.singular_values.max() * n as f64)
            .map(|s| s.iter().map(|&x| T::from_f64(x)).collect())
            .unwrap_or_else(|_| vec![T::zero(); p]);
        return (p, coeffs);
    }
    // Exact least-squares coefficients via normal equations; the system is consistent.
    let kt = k.transpose();
    let gram = kt.matmul(&k).expect("shapes");
    let rhs = Matrix::column_vector(kt.mul_vec(&cur).expect("shapes"));
    let coeffs = gram.solve(&rhs).map(|s| s.col(0)).unwrap_or_else(|_| vec![T::zero(); p]);
    (p, coeffs)
}

pub fn minimal_realization<T: Scalar>(sys: &LtiSystem<T>) -> MinimalRealization<T> {
    let (p, a_coef) = krylov(&sys.a, &sys.b);
    if p == 0 {
        return MinimalRealization { system: LtiSystem::empty(), charpoly: vec![T::one()] };
    }
    // Controllable companion form: A_r e_i = e_{i+1}, A_r e_p = Σ a_i e_i, b_r = e_1.
    let ar = Matrix::from_fn(p, p, |i, j| {
        if j == p - 1 {
            a_coef[i].clone()
        } else if i == j + 1 {
            T::one()
        } else {
            T::zero()
        }
    });
    let g = sys.impulse_response(p);
    let cr: Vec<T> = g[..p].to_vec();
    let (q, d) = krylov(&ar.transpose(), &cr);
    if q == 0 {
        return MinimalRealization { system: LtiSystem::empty(), charpoly: vec![T::one()] };
    }
    let ao = Matrix::from_fn(q, q, |i, j| {
        if i == q - 1 {
            d[j].clone()
        } else if j == i + 1 {
            T::one()
        } else {
            T::zero()
        }
    });
    let mut co = vec![T::zero(); q];
    co[0] = T::one();
    let bo = g[..q].to_vec();
    let mut charpoly: Vec<T> = d.iter().map(|x| -x.clone()).collect();
    charpoly.push(T::one());
    MinimalRealization {
        system: LtiSystem::new(ao, bo, co).expect("consistent shapes"),
        charpoly,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailEvidence {
    /// For `t ≥ tail_start`, `|g(t) - residue·λ^{t-1}| ≤ bound·γ^{t-1} < |residue|·λ^{t-1}`.
    Dominant {
        lambda: f64,
        residue: f64,
        gamma: f64,
        bound: f64,
        tail_start: usize,
        minimal_order: usize,
    },
    /// `g(t) = 0` for every `t ≥ from`.
    Vanishing { from: usize },
    Unavailable { reason: String },
}

impl TailEvidence {
    pub fn start(&self) -> Option<usize> {
        match self {
            TailEvidence::Dominant { tail_start, .. } => Some(*tail_start),
            TailEvidence::Vanishing { from } => Some(*from),
            TailEvidence::Unavailable { .. } => None,
        }
    }

    /// `+1`/`-1` for a dominant tail, `0` for a vanishing one.
    pub fn sign(&self) -> Option<i8> {
        match self {
            TailEvidence::Dominant { residue, .. } => Some(if *residue > 0.0 { 1 } else { -1 }),
            TailEvidence::Vanishing { .. } => Some(0),
            TailEvidence::Unavailable { .. } => None,
        }
    }
}

fn unavailable(reason: impl Into<String>) -> TailEvidence {
    TailEvidence::Unavailable { reason: reason.into() }
}

fn spectrum_of<T: Scalar>(charpoly: &[T]) -> OrderedSpectrum {
    if T::BACKEND == Backend::Exact {
        let p: Poly = charpoly.iter().map(|x| x.to_rational()).collect();
        spectrum_of_poly(&p)
    } else {
        let p: Vec<f64> = charpoly.iter().map(|x| x.to_f64()).collect();
        spectrum_of_values(&poly::roots(&p))
    }
}

/// Null vector of a (numerically) singular square matrix: the right singular vector of the
/// smallest singular value.
fn null_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let svd = m.clone().svd(false, true);
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let vt = svd.v_t.expect("requested");
    vt.row(idx).transpose()
}

/// Sign certificate for the tail of the impulse response of `sys`.
///
/// The bound itself is evaluated in `f64` on the minimal realization; the realization and its
/// characteristic polynomial are exact when `T` is.
pub fn tail_evidence<T: Scalar>(sys: &LtiSystem<T>) -> TailEvidence {
    let mr = minimal_realization(sys);
    let q = mr.dim();
    if q == 0 {
        return TailEvidence::Vanishing { from: 1 };
    }
    if T::BACKEND == Backend::Exact && mr.charpoly[..q].iter().all(|x| x.is_zero()) {
        // Nilpotent minimal realization: g(t) = 0 from t = q + 1 on.
        return TailEvidence::Vanishing { from: q + 1 };
    }
    let spec = spectrum_of(&mr.charpoly);
    let Some((lambda1, mult)) = spec.dominant() else {
        return unavailable("empty spectrum");
    };
    if mult > 1 {
        return unavailable(format!(
            "dominant eigenvalue {lambda1} sits in a Jordan block of size {mult}; growth is polynomial"
        ));
    }
    if lambda1.im != 0.0 {
        return unavailable(format!("dominant eigenvalue {lambda1} is not real"));
    }
    let l1 = lambda1.re;
    if l1 <= 0.0 {
        return unavailable(format!("dominant eigenvalue {l1} is not positive"));
    }
    let rho2 = spec.subdominant_modulus();
    if rho2 >= l1 * (1.0 - TIE_TOL) {
        return unavailable(format!(
            "dominant eigenvalue {l1} is not strictly dominant (next modulus {rho2})"
        ));
    }

    let a = mr.system.a.to_nalgebra();
    let b = DVector::from_iterator(q, mr.system.b.iter().map(|x| x.to_f64()));
    let c = DVector::from_iterator(q, mr.system.c.iter().map(|x| x.to_f64()));
    let shifted = &a - DMatrix::identity(q, q) * l1;
    let v = null_vector(&shifted);
    let w = null_vector(&shifted.transpose());
    let wv = w.dot(&v);
    if wv.abs() < 1e-12 {
        return unavailable("dominant eigenvector pair is nearly orthogonal");
    }
    let p1 = &v * w.transpose() / wv;
    let residue = c.dot(&v) * w.dot(&b) / wv;
    if residue.abs() <= 1e-12 * c.norm() * b.norm() {
        return unavailable("dominant mode has negligible residue");
    }
    let rem_b = &b - &p1 * &b;
    let gamma = (rho2 + l1) / 2.0;
    let scaled = (&a - &p1 * l1) / gamma;
    // sup_j ||(B/γ)^j|| ≤ max_{j<q} ||(B/γ)^j|| once ||(B/γ)^q|| ≤ 1 (Frobenius bounds spectral).
    let mut power = DMatrix::<f64>::identity(q, q);
    let mut sup = 1.0f64;
    let mut contracted = false;
    for _ in 0..MAX_POWER {
        power = &power * &scaled;
        let nrm = power.norm();
        if !nrm.is_finite() {
            break;
        }
        if nrm <= 1.0 {
            contracted = true;
            break;
        }
        sup = sup.max(nrm);
    }
    if !contracted {
        return unavailable("remainder powers do not contract");
    }
    let bound = 1.01 * c.norm() * rem_b.norm() * sup + 1e-9 * residue.abs();
    let ratio = l1 / gamma;
    let tail_start = if bound < residue.abs() {
        1
    } else {
        1 + ((bound / residue.abs()).ln() / ratio.ln()).ceil() as usize
    };
    TailEvidence::Dominant { lambda: l1, residue, gamma, bound, tail_start, minimal_order: q }
}
