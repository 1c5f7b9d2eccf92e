//! Strict variation bounds of an observability operator: certified at order 2, refuted at
//! order 1 with a witness minor.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::Rational;
use varbound::lti::observability_matrix;
use varbound::obsv::certify_svb;

fn main() -> varbound::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example2.json");
    let file = SystemFile::read(&path)?;
    let (a, c) = (file.matrix_a::<Rational>()?, file.vector_c::<Rational>()?);
    println!("O_3 = {:?}", observability_matrix(&a, &c, 3)?.to_strings());
    for k in [1, 2] {
        let cert = certify_svb(&a, &c, k, 50)?;
        println!("{}: {:?}, common sign {:?}", cert.claim, cert.conclusion, cert.common_sign);
        if let Some(w) = &cert.witness {
            println!("  witness: r = {}, beta = {}, t = {}, rows {}, value {} ({})", w.r, w.beta, w.t, w.rows, w.value, w.reason);
        }
    }
    Ok(())
}
