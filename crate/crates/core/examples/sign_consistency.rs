//! Finite-matrix decisions: sign consistency, regularity, positivity and variation bounds.

use varbound::linalg::{Matrix, Rational};
use varbound::signcons::{k_positive, sign_consistent, sign_regular, vb_matrix_check, vd_matrix_check};

fn main() -> varbound::Result<()> {
    let x = Matrix::<Rational>::from_i64_rows(&[&[1, 1], &[1, 2], &[1, 3], &[1, 4]])?;
    for k in 1..=2 {
        let sc = sign_consistent(&x, k, true)?;
        println!("strictly {k}-sign consistent: {:?} ({:?})", sc.holds, sc.verdict);
    }
    println!("sign regular of order 2: {:?}", sign_regular(&x, 2, false)?.holds);
    println!("2-positive: {:?}", k_positive(&x, 2, false)?.holds);

    let vb = vb_matrix_check(&x, 2)?;
    println!("bounds variation by 1: {:?} via {:?}", vb.vb.holds, vb.vb.rule);
    let vd = vd_matrix_check(&x, 2)?;
    println!("diminishes variation up to 1: {:?} via {:?}", vd.vd.holds, vd.vd.rule);

    let mixed = Matrix::<Rational>::from_i64_rows(&[&[1, -1], &[1, 1], &[-1, 2]])?;
    let out = sign_consistent(&mixed, 1, false)?;
    println!("mixed entries, 1-sign consistent: {:?}, witness {:?}", out.holds, out.witness.iter().map(|w| &w.value).collect::<Vec<_>>());
    Ok(())
}
