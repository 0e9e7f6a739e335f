//! Berezin quantization on the fuzzy sphere: quantize a linear coordinate
//! function at several levels k and watch Q(f) land on the exact closed form
//! (k/(k+2)) * (i/k) dU(X), with operator norm approaching ||f||_inf.
//!
//! ```bash
//! cargo run --release --example quantize_sphere
//! ```

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use berezin::berezin::{covariant_symbol, quantize, sup_norm};
use berezin::irrep::build_irrep;
use berezin::lie::{build_cartan_weyl, build_root_system, Weight};
use berezin::linalg::max_abs_diff;
use berezin::orbit::{base_point, OrbitFunction};
use berezin::quad::build_quadrature;

fn main() -> berezin::Result<()> {
    let rs = build_root_system('A', 1)?;
    let cw = build_cartan_weyl(&rs);
    let lambda = Weight::from_integers(&[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    // f(sigma) = sigma(X) for the first root direction.
    let mut coords = vec![0.0; cw.dim_g()];
    coords[1] = 1.0;
    let f = OrbitFunction::Linear(coords.clone());
    let norm_f = sup_norm(&cw, &lambda, &f, &mut rng)?;
    println!("||f||_inf ~= {norm_f:.6}");
    println!("{:>4} {:>5} {:>12} {:>12} {:>12}", "k", "dim", "||Q(f)||", "gap", "vs closed");

    for k in [2u64, 4, 8, 16, 32] {
        let rep = build_irrep(&cw, &lambda, k)?;
        let rule = build_quadrature(&cw, &lambda, k, 1)?;
        let q = quantize(&cw, &rep, &f, &rule)?;

        // Closed form: Q(f_X) = (k/(k+2)) (i/k) dU(X).
        let c = k as f64 / (k as f64 + 2.0);
        let expect = rep.du(&cw, &coords) * Complex64::new(0.0, c / k as f64);
        let dev = max_abs_diff(&q.matrix, &expect);

        println!(
            "{:>4} {:>5} {:>12.6} {:>12.6} {:>12.3e}",
            k,
            rep.dim,
            q.op_norm(),
            norm_f - q.op_norm(),
            dev
        );

        // The covariant symbol of Q(f) evaluated back at the base point.
        if k == 32 {
            let base = base_point(&cw, &lambda);
            let f_base = f.eval(&base)?;
            let sym = covariant_symbol(&cw, &rep, &q.matrix, &base)?;
            println!(
                "covariant symbol at the base point: {:.6} (f there = {f_base:.6})",
                sym.re
            );
        }
    }
    Ok(())
}
