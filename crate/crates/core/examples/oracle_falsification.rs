//! Random search for initial states with few sign changes whose outputs change sign more
//! often than a claimed bound allows.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::Rational;
use varbound::oracle::{falsify_operator_vb, replay};

fn main() -> varbound::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example2.json");
    let file = SystemFile::read(&path)?;
    let (a, c) = (file.matrix_a::<Rational>()?, file.vector_c::<Rational>()?);
    for k in [1, 2] {
        let report = falsify_operator_vb(&a, &c, k, false, 50, 1000, 0)?;
        println!("bound {}: {} violations, {} suspects in {} trials", k - 1, report.violation_count(), report.suspect_count(), report.trials);
        if let Some(v) = report.violations.first() {
            println!("  trial {}: x0 = {:?}, output sign changes at {:?}", v.trial, v.input, v.witness_times);
            assert_eq!(replay(3, k, 0, v.trial), v.input);
        }
    }
    Ok(())
}
