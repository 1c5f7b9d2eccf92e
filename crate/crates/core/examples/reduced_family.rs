//! The transform that maps top-order minors of a tall matrix to all minors of a smaller one,
//! and the reduced minor family that decides strict sign consistency.

use varbound::linalg::{IndexTuple, Matrix, Rational};
use varbound::signcons::{pena_transform, reduced_check, reduced_family, sign_consistent};

fn main() -> varbound::Result<()> {
    let x = Matrix::<Rational>::from_i64_rows(&[&[1, 1], &[1, 2], &[1, 3], &[1, 4]])?;
    let p = pena_transform(&x)?;
    println!("C = {:?}, det X[1:2, 1:2] = {}", p.c.to_strings(), p.head_det);
    let (alpha, beta) = (IndexTuple::new(2, vec![2])?, IndexTuple::new(2, vec![1])?);
    println!("det C[{alpha}, {beta}] pairs with rows {} of X", p.gamma(&alpha, &beta)?);

    let family = reduced_family(4, 2, 2, true)?;
    println!("reduced family for order 2: {} minors instead of 6", family.pairs.len());
    for pair in &family.pairs {
        println!("  rows {} cols {}", pair.rows, pair.cols);
    }
    let reduced = reduced_check(&x, 2, true)?;
    let full = sign_consistent(&x, 2, true)?;
    println!("reduced: {:?}, full: {:?}", reduced.verdict, full.verdict);
    Ok(())
}
