//! Univariate polynomials with rational coefficients, stored lowest degree first.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{rational_to_f64, Rational};

pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// `det(λI - A)` by the Faddeev-LeVerrier recursion.
pub fn charpoly(a: &Matrix<Rational>) -> Poly {
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m).expect("square");
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let am = a.matmul(&next).expect("square");
        let trace = (0..n).fold(Rational::zero(), |t, i| t + am[(i, i)].clone());
        coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
        m = next;
    }
    coeffs
}

pub fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * Rational::from_integer((i as i64).into()))
            .collect(),
    )
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = degree(&b).expect("division by the zero polynomial");
    let mut r = trim(a.clone());
    let Some(da) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); da - db + 1];
    let lead = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = r[dr].clone() / lead.clone();
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] = r[dr - db + i].clone() - f.clone() * bc.clone();
        }
        q[dr - db] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    let p = trim(p);
    match p.last() {
        Some(lead) if !lead.is_one() => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / lead.clone()).collect()
        }
        _ => p,
    }
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while degree(&b).is_some() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Square-free decomposition: returns `(f_i, i)` with `p = lead * Π f_i^i`, each `f_i`
/// square-free and pairwise coprime. Factors of degree zero are dropped.
pub fn squarefree(p: &Poly) -> Vec<(Poly, usize)> {
    let p = monic(p.clone());
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divrem(&p, &a0).0;
    let mut c = divrem(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = divrem(&b, &a).0;
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Rational::zero)
                    - b.get(i).cloned().unwrap_or_else(Rational::zero)
            })
            .collect(),
    )
}

pub fn to_f64(p: &Poly) -> Vec<f64> {
    p.iter().map(rational_to_f64).collect()
}

/// Complex roots of a real polynomial (companion eigenvalues, then Newton polishing). Empty
/// when the coefficients are not finite or the eigenvalue iteration does not converge.
pub fn roots(p: &[f64]) -> Vec<Complex64> {
    let p: Vec<f64> = {
        let mut v = p.to_vec();
        while v.last() == Some(&0.0) {
            v.pop();
        }
        v
    };
    let zeros = p.iter().take_while(|&&c| c == 0.0).count();
    if zeros > 0 {
        let mut rts = vec![Complex64::zero(); zeros.min(p.len().saturating_sub(1))];
        rts.extend(roots(&p[zeros.min(p.len())..]));
        return rts;
    }
    let Some(n) = p.len().checked_sub(1) else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -p[i] / lead;
    }
    if companion.iter().any(|x| !x.is_finite()) {
        return Vec::new();
    }
    let Some(schur) = Schur::try_new(companion, f64::EPSILON, 10_000) else {
        return Vec::new();
    };
    let mut rts: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    for z in rts.iter_mut() {
        *z = polish(&p, *z);
    }
    rts
}

fn polish(p: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..20 {
        let mut val = Complex64::zero();
        let mut der = Complex64::zero();
        for &c in p.iter().rev() {
            der = der * z + val;
            val = val * z + c;
        }
        if der.norm() == 0.0 {
            break;
        }
        let step = val / der;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        z = next;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn poly(v: &[i64]) -> Poly {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[2, 1], &[0, 3]]).unwrap();
        assert_eq!(charpoly(&a), poly(&[6, -5, 1]));
        let i3 = Matrix::<Rational>::identity(3);
        assert_eq!(charpoly(&i3), poly(&[-1, 3, -3, 1]));
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        // (x-1)^3 (x+2)
        let p = poly(&[-2, 5, -3, -1, 1]);
        let f = squarefree(&p);
        assert_eq!(f, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 3)]);
        assert!(squarefree(&poly(&[5])).is_empty());
    }

    #[test]
    fn roots_of_quadratic() {
        let mut rts = roots(&[2.0, -3.0, 1.0]);
        rts.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((rts[0].re - 1.0).abs() < 1e-12 && (rts[1].re - 2.0).abs() < 1e-12);
        let rts = roots(&[1.0, 0.0, 1.0]);
        assert!(rts.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
        assert_eq!(roots(&[-0.0, 0.0, 0.0, 1.0]), vec![Complex64::zero(); 3]);
        let rts = roots(&[0.0, -1.0, 1.0]);
        assert_eq!(rts[0], Complex64::zero());
        assert!((rts[1].re - 1.0).abs() < 1e-12);
    }
}
