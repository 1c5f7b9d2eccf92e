#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use varbound::io::SystemFile;
use varbound::linalg::{Matrix, Rational, Scalar};
use varbound::lti::observability_matrix;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load_system(name: &str) -> SystemFile {
    SystemFile::read(&fixture(name)).expect("fixture parses")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn int_matrix<T: Scalar>(rows: usize, cols: usize, lo: i64, hi: i64, rng: &mut impl Rng) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| T::from_i64(rng.random_range(lo..=hi)))
}

/// Random `(A, c)` with small integer entries and `rank O_n = n`.
pub fn observable_pair(n: usize, rng: &mut impl Rng) -> (Matrix<Rational>, Vec<Rational>) {
    loop {
        let a: Matrix<Rational> = int_matrix(n, n, -3, 3, rng);
        let c: Vec<Rational> = (0..n).map(|_| q(rng.random_range(-3..=3))).collect();
        if observability_matrix(&a, &c, n).unwrap().rank() == n {
            return (a, c);
        }
    }
}

/// `n × n` bidiagonal factor with positive diagonal and nonnegative off-diagonal.
fn bidiagonal<T: Scalar>(n: usize, lower: bool, allow_zero: bool, rng: &mut impl Rng) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| {
        let off = if lower { i == j + 1 } else { j == i + 1 };
        if i == j {
            T::from_i64(rng.random_range(1..=3))
        } else if off {
            T::from_i64(rng.random_range(if allow_zero { 0 } else { 1 }..=3))
        } else {
            T::zero()
        }
    })
}

/// Totally nonnegative `rows × cols` matrix of full column rank: the leading columns of a
/// product of nonnegative bidiagonal factors. Strictly positive off-diagonals and enough
/// factors give a strictly totally positive result.
pub fn totally_nonnegative<T: Scalar>(rows: usize, cols: usize, factors: usize, allow_zero: bool, rng: &mut impl Rng) -> Matrix<T> {
    let mut x = Matrix::<T>::identity(rows);
    for f in 0..factors {
        x = x.matmul(&bidiagonal(rows, f % 2 == 0, allow_zero, rng)).unwrap();
    }
    let all: Vec<usize> = (0..rows).collect();
    let lead: Vec<usize> = (0..cols).collect();
    x.select(&all, &lead)
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix<f64> {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}
