//! Necessary eigenvalue condition for strict sign consistency of an observability operator.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::Rational;
use varbound::obsv::eigen_necessary_check;

fn main() -> varbound::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["example1.json", "example2.json", "example3.json"] {
        let a = SystemFile::read(&dir.join(name))?.matrix_a::<Rational>()?;
        for k in 1..=2 {
            let s = eigen_necessary_check(&a, k)?;
            println!("{name} k = {k}: passes = {}, refutes = {}, diagonalizable = {:?}", s.passes, s.refutes, s.diagonalizable);
            for note in &s.notes {
                println!("  {note}");
            }
        }
    }
    Ok(())
}
