//! Compound matrices: entries, the product rule and the spectrum of a compound.

use varbound::linalg::{lex_tuples, Matrix, Rational};
use varbound::lti::eigen_sorted;

fn main() -> varbound::Result<()> {
    let x = Matrix::<Rational>::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]])?;
    let c2 = x.compound(2)?;
    let sets: Vec<String> = lex_tuples(3, 2).iter().map(|s| s.to_string()).collect();
    println!("2nd compound, rows and columns indexed by {}", sets.join(" "));
    for row in c2.to_strings() {
        println!("  {}", row.join("\t"));
    }

    let y = Matrix::<Rational>::from_i64_rows(&[&[1, -1, 2], &[0, 1, 1], &[3, 0, 1]])?;
    let lhs = x.matmul(&y)?.compound(2)?;
    let rhs = c2.matmul(&y.compound(2)?)?;
    println!("(XY)_[2] = X_[2] Y_[2]: {}", lhs == rhs);

    let eig = eigen_sorted(&x.to_f64())?.eigenvalues;
    let comp = eigen_sorted(&c2.to_f64())?.eigenvalues;
    println!("eigenvalues of X:     {:?}", eig.iter().map(|z| z.re).collect::<Vec<_>>());
    println!("eigenvalues of X_[2]: {:?}", comp.iter().map(|z| z.re).collect::<Vec<_>>());
    Ok(())
}
