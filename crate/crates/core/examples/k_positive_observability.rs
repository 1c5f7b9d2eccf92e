//! 2-positivity of the observability operator of a third-order system from the compound
//! systems whose impulse responses list its consecutive minors.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::Rational;
use varbound::obsv::certify_k_positive;

fn main() -> varbound::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example1.json");
    let file = SystemFile::read(&path)?;
    let (a, c) = (file.matrix_a::<Rational>()?, file.vector_c::<Rational>()?);
    let cert = certify_k_positive(&a, &c, 2, true, 50)?;
    println!("{}: {:?}", cert.claim, cert.conclusion);
    for sys in &cert.per_system {
        let head: Vec<&str> = sys.samples.iter().take(5).map(String::as_str).collect();
        println!("  r = {} beta = {:<6} {:?}  g(1..5) = {}", sys.r, sys.beta.to_string(), sys.verdict.status, head.join(", "));
    }
    Ok(())
}
