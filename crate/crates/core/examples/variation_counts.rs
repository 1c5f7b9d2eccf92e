//! Lower and upper sign-change counts, and how the Gaussian smoother acts on them.

use varbound::variation::{gauss_smoother, v_minus, v_plus};

fn main() {
    for u in [vec![1.0, -1.0, 1.0], vec![1.0, 0.0, -2.0, 3.0], vec![0.0, 1.0, 1.0, 0.0], vec![0.0; 3]] {
        println!("{u:?}: v- = {}, v+ = {}", v_minus(&u), v_plus(&u));
    }

    let u = vec![3.0, -0.2, 2.0, -0.1, 1.0];
    for sigma in [0.5, 2.0, 20.0] {
        let tu = gauss_smoother(u.len(), sigma).mul_vec(&u).expect("square smoother");
        println!("sigma = {sigma:>4}: v-(u) = {}, v+(T u) = {}", v_minus(&u), v_plus(&tu));
    }
}
