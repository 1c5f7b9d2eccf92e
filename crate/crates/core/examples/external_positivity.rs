//! External positivity of single systems: sampled prefix plus a dominant-mode tail bound.

use varbound::linalg::{Matrix, Rational};
use varbound::lti::{external_positivity, LtiSystem};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn main() -> varbound::Result<()> {
    let decaying = LtiSystem::new(
        Matrix::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(1, 4), q(1, 3)]])?,
        vec![q(1, 1), q(-1, 2)],
        vec![q(1, 1), q(1, 1)],
    )?;
    let alternating = LtiSystem::new(Matrix::from_rows(vec![vec![q(-1, 2)]])?, vec![q(1, 1)], vec![q(1, 1)])?;
    for (name, sys) in [("decaying", &decaying), ("alternating", &alternating)] {
        let v = external_positivity(sys, true, 20);
        println!("{name}: {:?}, tail from {:?}, first violation {:?}", v.status, v.tail_start, v.first_violation.map(|f| f.t));
    }
    Ok(())
}
