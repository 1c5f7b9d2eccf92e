//! Bound on the sign changes of an impulse response from the smallest certified order.

use std::path::PathBuf;

use varbound::io::SystemFile;
use varbound::linalg::Rational;
use varbound::obsv::impulse_variation_bound;

fn main() -> varbound::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example1.json");
    let sys = SystemFile::read(&path)?.system::<Rational>()?;
    let report = impulse_variation_bound(&sys, 50)?;
    println!("v-(b) = {}", report.input_variation);
    println!("certified bound {:?} via {:?}", report.bound, report.certified_by);
    println!("measured over {} samples: {}, tail sign {:?}", report.horizon, report.measured, report.tail_sign);
    Ok(())
}
