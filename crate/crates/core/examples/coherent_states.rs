//! Coherent-state mechanics: the Gilmore overlap power law
//! <Psi_k, U_k(x) Psi_k> = <Psi_1, U_1(x) Psi_1>^k, the resolution of the
//! identity, and the momentum map sending coherent states back to the orbit.
//!
//! ```bash
//! cargo run --release --example coherent_states
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use berezin::coherent::{check_normalization, gilmore_check};
use berezin::group::haar_random;
use berezin::irrep::build_irrep;
use berezin::lie::{build_cartan_weyl, build_root_system, Weight};
use berezin::orbit::{base_point, coadjoint_act, momentum_map};
use berezin::quad::build_quadrature;

fn main() -> berezin::Result<()> {
    let rs = build_root_system('A', 2)?;
    let cw = build_cartan_weyl(&rs);
    let lambda = Weight::from_integers(&[1, 1]);
    let k = 3;
    let rep_k = build_irrep(&cw, &lambda, k)?;
    let rep_1 = build_irrep(&cw, &lambda, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let mut worst = 0.0f64;
    for _ in 0..50 {
        let x = haar_random(&cw, &mut rng)?;
        worst = worst.max(gilmore_check(&cw, &rep_k, &rep_1, &x)?);
    }
    println!("SU(3), lambda (1,1), k = {k}");
    println!("  worst Gilmore residual over 50 Haar samples: {worst:.3e}");

    // d_k * integral over G of |<U(x) Psi, psi>|^2 dx = 1 for any unit psi.
    let rule = build_quadrature(&cw, &lambda, k, 1)?;
    let psi = rep_k.hw_vector();
    let v = check_normalization(&cw, &rep_k, &rule, &psi)?;
    println!("  resolution of identity on the hw vector: {v:.12}");

    // Coherent states sit on the coadjoint orbit through lambda.
    let base = base_point(&cw, &lambda);
    let x = haar_random(&cw, &mut rng)?;
    let coherent = rep_k.apply_group(&cw, &x, &psi);
    let j = momentum_map(&cw, &rep_k, &coherent)?;
    let sigma = coadjoint_act(&cw, &x, &base);
    println!("  momentum map vs coadjoint action: distance {:.3e}", j.distance(&sigma));
    Ok(())
}
