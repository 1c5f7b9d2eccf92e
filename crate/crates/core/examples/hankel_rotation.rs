//! A system whose Hankel operator is sign regular of order 2 although no realization has a
//! 2-sign-consistent state matrix.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::{Matrix, Rational, Scalar};
use varbound::obsv::eigen_necessary_check;
use varbound::signcons::{consecutive_certificate, sign_regular};

fn main() -> varbound::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example3.json");
    let sys = SystemFile::read(&path)?.system::<Rational>()?;
    let g = sys.impulse_response(30);
    let shown: Vec<String> = g.iter().take(6).map(|x| format!("{:.6}", x.to_f64())).collect();
    println!("g(1..6) = {}", shown.join(", "));
    let minors: Vec<String> = (2..=8).map(|t| format!("{:.4}", (&g[t - 2] * &g[t] - &g[t - 1] * &g[t - 1]).to_f64())).collect();
    println!("g(t-1) g(t+1) - g(t)^2 for t = 2..8: {}", minors.join(", "));

    let hankel = Matrix::from_fn(20, 5, |i, j| g[i + j].clone());
    let reversed = Matrix::from_fn(20, 5, |i, j| g[i + 4 - j].clone());
    println!("reversed Hankel passes the consecutive-minor test: {:?}", consecutive_certificate(&reversed, 2, true)?.holds);
    println!("Hankel sign regular of order 2: {:?}", sign_regular(&hankel, 2, false)?.holds);

    let screen = eigen_necessary_check(&sys.a, 2)?;
    println!("eigenvalue screen for order 2: passes = {}, dominant = {:?}", screen.passes, screen.dominant);
    Ok(())
}
