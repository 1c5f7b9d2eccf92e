//! Dense row-major matrices over a [`Scalar`] backend.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::index::{binomial, lex_tuples, IndexTuple};
use super::scalar::{Rational, Scalar, Sign};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from small integers; handy in tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    /// Parses decimal strings (`"1.25"`, `"-3e-2"`, `"3/4"`).
    pub fn parse_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| T::parse_decimal(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn row_vector(v: Vec<T>) -> Self {
        Self { rows: 1, cols: v.len(), data: v }
    }

    pub fn column_vector(v: Vec<T>) -> Self {
        Self { rows: v.len(), cols: 1, data: v }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_iterator(self.rows, self.cols, self.data.iter().map(|x| x.to_f64()))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.render()).collect())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(l, j)].clone();
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::SizeMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + vi.clone() * self[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::SizeMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Submatrix from 0-based row and column lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::SizeMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Self::new(self.rows + below.rows, self.cols, data)
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        self.require_square()?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(result)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn det(&self) -> Result<T> {
        self.require_square()?;
        Ok(T::determinant(self))
    }

    pub fn minor(&self, rows: &IndexTuple, cols: &IndexTuple) -> Result<T> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows but {} columns selected",
                rows.len(),
                cols.len()
            )));
        }
        check_tuple(rows, self.rows)?;
        check_tuple(cols, self.cols)?;
        self.select(&rows.zero_based(), &cols.zero_based()).det()
    }

    pub fn rank(&self) -> usize {
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(rank, col, scale) else {
                continue;
            };
            m.swap_rows(rank, p);
            let piv = m[(rank, col)].clone();
            for i in rank + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone() / piv.clone();
                for j in col..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(rank, j)].clone();
                    m[(i, j)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Row index in `from..` with the largest magnitude in `col`, if it is not negligible.
    fn pivot_row(&self, from: usize, col: usize, scale: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in from..self.rows {
            let v = &self[(i, col)];
            if v.is_negligible(scale) {
                continue;
            }
            let mag = v.to_f64().abs();
            if best.is_none_or(|(_, b)| mag > b) {
                best = Some((i, mag));
            }
        }
        best.map(|(i, _)| i)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self * X = rhs` by Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.require_square()?;
        if rhs.rows != self.rows {
            return Err(Error::SizeMismatch("right-hand side row count".into()));
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let p = a.pivot_row(col, col, scale).ok_or(Error::Singular)?;
            a.swap_rows(col, p);
            b.swap_rows(col, p);
            let inv = T::one() / a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * inv.clone();
            }
            for j in 0..b.cols {
                b[(col, j)] = b[(col, j)].clone() * inv.clone();
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(col, j)].clone();
                }
                for j in 0..b.cols {
                    b[(i, j)] = b[(i, j)].clone() - f.clone() * b[(col, j)].clone();
                }
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// `r`-th multiplicative compound: all `r`-minors, rows and columns in lexicographic order.
    pub fn compound(&self, r: usize) -> Result<Self> {
        let max = self.rows.min(self.cols);
        if r == 0 || r > max {
            return Err(Error::RankOutOfRange { order: r, max });
        }
        if self.rows > 64 || self.cols > 64 {
            return Err(Error::PreconditionViolated("compound supports at most 64 rows/columns".into()));
        }
        let table = MinorTable::build(self, r);
        let row_sets = lex_tuples(self.rows, r);
        let col_sets = lex_tuples(self.cols, r);
        let col_idx: Vec<usize> = col_sets.iter().map(|t| colex_rank(tuple_mask(t))).collect();
        let mut data = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            let ri = colex_rank(tuple_mask(rs));
            for &ci in &col_idx {
                data.push(table.get(ri, ci).clone());
            }
        }
        Self::new(row_sets.len(), col_sets.len(), data)
    }

    /// Sign of every entry.
    pub fn signs(&self) -> Vec<Sign> {
        self.data.iter().map(|x| x.sign()).collect()
    }
}

impl Matrix<f64> {
    pub fn from_nalgebra(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Exact rational image of every entry, without rounding.
    pub fn to_rational(&self) -> Matrix<Rational> {
        self.map(|&x| <Rational as Scalar>::from_f64(x))
    }
}

fn check_tuple(t: &IndexTuple, bound: usize) -> Result<()> {
    if t.ground() > bound {
        if let Some(&bad) = t.elems().iter().find(|&&e| e > bound) {
            return Err(Error::IndexOutOfRange { index: bad, bound });
        }
    }
    Ok(())
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn tuple_mask(t: &IndexTuple) -> u64 {
    t.elems().iter().fold(0u64, |m, &e| m | (1u64 << (e - 1)))
}

/// Rank of a bitmask among masks of equal popcount in increasing numeric order.
fn colex_rank(mask: u64) -> usize {
    let mut rank = 0;
    let mut bits = mask;
    let mut idx = 0;
    while bits != 0 {
        let pos = bits.trailing_zeros() as usize;
        idx += 1;
        rank += binomial(pos, idx);
        bits &= bits - 1;
    }
    rank
}

/// Masks with `s` bits set below bit `n`, increasing (Gosper's hack).
fn masks(n: usize, s: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(binomial(n, s));
    if s == 0 {
        out.push(0);
        return out;
    }
    if s > n {
        return out;
    }
    let limit: u128 = 1u128 << n;
    let mut m: u64 = (1u64 << s) - 1;
    while (m as u128) < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// All `s`-minors for `s = r`, built order by order with Laplace expansion along the last row.
struct MinorTable<T> {
    n_cols: usize,
    values: Vec<T>,
}

impl<T: Scalar> MinorTable<T> {
    fn build(x: &Matrix<T>, r: usize) -> Self {
        let (n, m) = x.shape();
        let mut prev = MinorTable { n_cols: 1, values: vec![T::one()] };
        for s in 1..=r {
            let row_masks = masks(n, s);
            let col_masks = masks(m, s);
            let mut values = Vec::with_capacity(row_masks.len() * col_masks.len());
            for &rm in &row_masks {
                let last = 63 - rm.leading_zeros() as usize;
                let prev_row = colex_rank(rm & !(1u64 << last));
                for &cm in &col_masks {
                    let mut acc = T::zero();
                    let mut bits = cm;
                    let mut p = 0;
                    while bits != 0 {
                        let j = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let entry = &x[(last, j)];
                        if !entry.is_zero() {
                            let sub = prev.get(prev_row, colex_rank(cm & !(1u64 << j)));
                            if !sub.is_zero() {
                                let term = entry.clone() * sub.clone();
                                // Cofactor sign for row position s-1, column position p.
                                acc = if (s - 1 + p) % 2 == 0 { acc + term } else { acc - term };
                            }
                        }
                        p += 1;
                    }
                    values.push(acc);
                }
            }
            prev = MinorTable { n_cols: col_masks.len(), values };
        }
        prev
    }

    fn get(&self, row: usize, col: usize) -> &T {
        &self.values[row * self.n_cols + col]
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_strings()).finish()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination: clears row denominators, runs Bareiss on integers.
pub(crate) fn det_bareiss(x: &Matrix<Rational>) -> Rational {
    let n = x.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut denom_product = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = x.row(i);
        let l = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        a.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        denom_product *= l;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if negate {
        d = -d;
    }
    Rational::new(d, denom_product)
}

pub(crate) fn det_partial_pivot(x: &Matrix<f64>) -> f64 {
    let n = x.rows();
    let mut a = x.clone();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k);
        if a[(p, k)] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let piv = a[(k, k)];
        det *= piv;
        for i in k + 1..n {
            let f = a[(i, k)] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    det
}

/// Exact cofactor expansion along the first row. Exponential; for cross-checks only.
pub fn det_cofactor<T: Scalar>(x: &Matrix<T>) -> T {
    let n = x.rows();
    if n == 0 {
        return T::one();
    }
    if n == 1 {
        return x[(0, 0)].clone();
    }
    let mut acc = T::zero();
    for j in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let rows: Vec<usize> = (1..n).collect();
        let term = x[(0, j)].clone() * det_cofactor(&x.select(&rows, &cols));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Largest absolute value among the entries of an exact matrix.
pub fn max_abs_exact(x: &Matrix<Rational>) -> Rational {
    x.data().iter().map(Signed::abs).fold(Rational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Matrix<Rational>;

    fn q(rows: &[&[i64]]) -> Q {
        Q::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn determinants_agree_with_cofactor_expansion() {
        let x = q(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 1, 5, -1], &[3, 0, 1, 2]]);
        assert_eq!(x.det().unwrap(), det_cofactor(&x));
        assert_eq!(q(&[&[1, 1], &[1, 2]]).det().unwrap(), Rational::one());
        assert_eq!(Q::identity(3).det().unwrap(), Rational::one());
        let singular = q(&[&[1, 2], &[2, 4]]);
        assert!(singular.det().unwrap().is_zero());
        let needs_swap = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(needs_swap.det().unwrap(), -Rational::one());
        assert!(q(&[&[1, 2, 3]]).det().is_err());
    }

    #[test]
    fn float_determinant() {
        let x = Matrix::<f64>::from_i64_rows(&[&[0, 2], &[3, 1]]).unwrap();
        assert!((x.det().unwrap() + 6.0).abs() < 1e-12);
    }

    #[test]
    fn minors_of_the_four_by_two_example() {
        let x = q(&[&[1, 1], &[1, 2], &[1, 3], &[1, 4]]);
        let t = |n, v: Vec<usize>| IndexTuple::new(n, v).unwrap();
        assert_eq!(x.minor(&t(4, vec![1, 2]), &t(2, vec![1, 2])).unwrap(), Rational::one());
        assert_eq!(x.minor(&t(4, vec![3, 4]), &t(2, vec![1, 2])).unwrap(), Rational::one());
        assert!(x.minor(&t(4, vec![1]), &t(2, vec![1, 2])).is_err());
        assert!(x.minor(&t(5, vec![5]), &t(2, vec![1])).is_err());
        let i4 = Q::identity(4);
        assert_eq!(i4.minor(&t(4, vec![1, 3]), &t(4, vec![1, 3])).unwrap(), Rational::one());
    }

    #[test]
    fn compound_layout_is_lexicographic() {
        let x = q(&[&[1, 2, 0], &[3, -1, 4], &[2, 5, 1]]);
        let c = x.compound(2).unwrap();
        let tuples = lex_tuples(3, 2);
        for (i, rs) in tuples.iter().enumerate() {
            for (j, cs) in tuples.iter().enumerate() {
                assert_eq!(c[(i, j)], x.minor(rs, cs).unwrap());
            }
        }
        // entry (1,2) is rows {1,2}, columns {1,3}
        assert_eq!(c[(0, 1)], Rational::from_integer(4.into()));
        assert_eq!(x.compound(1).unwrap(), x);
        assert_eq!(x.compound(3).unwrap()[(0, 0)], x.det().unwrap());
        assert!(x.compound(4).is_err());
        assert!(x.compound(0).is_err());
        assert_eq!(Q::identity(4).compound(2).unwrap(), Q::identity(6));
    }

    #[test]
    fn inverse_and_solve() {
        let x = q(&[&[2, -1], &[-1, 1]]);
        assert_eq!(x.inverse().unwrap(), q(&[&[1, 1], &[1, 2]]));
        assert_eq!(Q::identity(3).inverse().unwrap(), Q::identity(3));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn rank_and_power() {
        assert_eq!(q(&[&[1, 2], &[2, 4], &[3, 6]]).rank(), 1);
        assert_eq!(q(&[&[1, 0], &[0, 1], &[1, 1]]).rank(), 2);
        assert_eq!(Q::zeros(3, 2).rank(), 0);
        let a = q(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.pow(5).unwrap(), q(&[&[1, 5], &[0, 1]]));
        assert_eq!(a.pow(0).unwrap(), Q::identity(2));
    }

    #[test]
    fn masks_enumerate_in_colex_order() {
        for n in 0..7 {
            for s in 0..=n {
                let ms = masks(n, s);
                assert_eq!(ms.len(), binomial(n, s));
                for (i, &m) in ms.iter().enumerate() {
                    assert_eq!(colex_rank(m), i);
                    assert_eq!(m.count_ones() as usize, s);
                }
            }
        }
    }
}
