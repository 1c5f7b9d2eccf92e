//! Ordered spectra: descending modulus, then descending real part, then descending
//! imaginary part.

use nalgebra::Schur;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::poly::{self, Poly};
use crate::linalg::{Backend, Matrix, Scalar};

/// Relative tolerance under which two eigenvalue coordinates are treated as tied.
pub const TIE_TOL: f64 = 1e-9;
/// Relative distance under which float eigenvalues are merged into one repeated eigenvalue.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Largest matrix whose characteristic polynomial is formed exactly.
pub const EXACT_CHARPOLY_MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderedSpectrum {
    pub eigenvalues: Vec<Complex64>,
    /// Algebraic multiplicity of each listed eigenvalue (repeated entries share it).
    pub multiplicities: Vec<usize>,
    /// Whether multiplicities come from an exact square-free factorization.
    pub exact_multiplicities: bool,
}

impl OrderedSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dominant(&self) -> Option<(Complex64, usize)> {
        Some((*self.eigenvalues.first()?, self.multiplicities[0]))
    }

    /// Largest modulus among eigenvalues other than the first (with its copies).
    pub fn subdominant_modulus(&self) -> f64 {
        let Some((_, mult)) = self.dominant() else { return 0.0 };
        self.eigenvalues.get(mult).map_or(0.0, |z| z.norm())
    }

    fn from_roots(mut roots: Vec<(Complex64, usize)>, exact: bool) -> Self {
        sort_spectrum(&mut roots);
        let mut eigenvalues = Vec::new();
        let mut multiplicities = Vec::new();
        for (z, m) in roots {
            for _ in 0..m {
                eigenvalues.push(z);
                multiplicities.push(m);
            }
        }
        OrderedSpectrum { eigenvalues, multiplicities, exact_multiplicities: exact }
    }
}

fn tied(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= TIE_TOL * scale.max(1.0)
}

/// Groups runs of `items` (already sorted by `key` descending) whose keys are tied to the
/// first element of the run; returns group boundaries.
fn tie_groups<T>(items: &[T], key: impl Fn(&T) -> f64, scale: impl Fn(&T) -> f64) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut start = 0;
    while start < items.len() {
        let k0 = key(&items[start]);
        let s0 = scale(&items[start]);
        let mut end = start + 1;
        while end < items.len() && tied(key(&items[end]), k0, s0) {
            end += 1;
        }
        groups.push((start, end));
        start = end;
    }
    groups
}

/// Sorts by modulus, real part, imaginary part (all descending), treating near-equal
/// coordinates as ties so conjugate pairs and equal-modulus sets order deterministically.
pub fn sort_spectrum(roots: &mut [(Complex64, usize)]) {
    roots.sort_by(|a, b| b.0.norm().total_cmp(&a.0.norm()));
    for (s, e) in tie_groups(roots, |r| r.0.norm(), |r| r.0.norm()) {
        let group = &mut roots[s..e];
        group.sort_by(|a, b| b.0.re.total_cmp(&a.0.re));
        for (s2, e2) in tie_groups(group, |r| r.0.re, |r| r.0.norm()) {
            group[s2..e2].sort_by(|a, b| b.0.im.total_cmp(&a.0.im));
        }
    }
}

/// Eigenvalues with multiplicities from an exact characteristic polynomial.
pub fn spectrum_of_poly(p: &Poly) -> OrderedSpectrum {
    let mut roots = Vec::new();
    for (factor, mult) in poly::squarefree(p) {
        for z in poly::roots(&poly::to_f64(&factor)) {
            roots.push((clean(z), mult));
        }
    }
    OrderedSpectrum::from_roots(roots, true)
}

/// Eigenvalues with multiplicities estimated by clustering.
pub fn spectrum_of_values(values: &[Complex64]) -> OrderedSpectrum {
    let mut used = vec![false; values.len()];
    let mut roots = Vec::new();
    for i in 0..values.len() {
        if used[i] {
            continue;
        }
        let members: Vec<usize> = (i..values.len())
            .filter(|&j| !used[j] && (values[j] - values[i]).norm() <= CLUSTER_TOL * values[i].norm().max(1.0))
            .collect();
        let mean = members.iter().map(|&j| values[j]).sum::<Complex64>() / members.len() as f64;
        for &j in &members {
            used[j] = true;
        }
        roots.push((clean(mean), members.len()));
    }
    OrderedSpectrum::from_roots(roots, false)
}

/// Snaps negligible imaginary parts to zero so real eigenvalues compare exactly.
fn clean(z: Complex64) -> Complex64 {
    if z.im.abs() <= TIE_TOL * z.norm().max(1.0) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

pub fn float_eigenvalues<T: Scalar>(a: &Matrix<T>) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    let m = a.to_nalgebra();
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenSolveFailed("non-finite entries".into()));
    }
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigenSolveFailed("Schur iteration did not converge".into()))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Full spectrum in descending-modulus order. Exact matrices up to
/// [`EXACT_CHARPOLY_MAX_DIM`] get exact multiplicities.
pub fn eigen_sorted<T: Scalar>(a: &Matrix<T>) -> Result<OrderedSpectrum> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if T::BACKEND == Backend::Exact && a.rows() <= EXACT_CHARPOLY_MAX_DIM {
        let p = poly::charpoly(&a.map(|x| x.to_rational()));
        return Ok(spectrum_of_poly(&p));
    }
    Ok(spectrum_of_values(&float_eigenvalues(a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_order() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 3]]).unwrap();
        let s = eigen_sorted(&a).unwrap();
        let re: Vec<f64> = s.eigenvalues.iter().map(|z| z.re).collect();
        assert_eq!(re.len(), 3);
        assert!((re[0] - 3.0).abs() < 1e-12 && (re[1] + 2.0).abs() < 1e-12 && (re[2] - 1.0).abs() < 1e-12);
        assert!(s.exact_multiplicities);
    }

    #[test]
    fn rotation_pair_by_imaginary_part() {
        let a = Matrix::<f64>::from_i64_rows(&[&[0, -1], &[1, 0]]).unwrap();
        let s = eigen_sorted(&a).unwrap();
        assert!((s.eigenvalues[0] - c(0.0, 1.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1] - c(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn equal_modulus_sorted_by_real_part() {
        let mut v = vec![(c(-1.0, 0.0), 1), (c(0.0, 1.0), 1), (c(1.0, 0.0), 1), (c(0.0, -1.0), 1)];
        sort_spectrum(&mut v);
        let got: Vec<Complex64> = v.iter().map(|p| p.0).collect();
        assert_eq!(got, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn jordan_block_multiplicity_is_exact() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]).unwrap();
        let s = eigen_sorted(&a).unwrap();
        assert_eq!(s.multiplicities, vec![3, 3, 3]);
        assert!(s.eigenvalues.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-12));
    }
}
