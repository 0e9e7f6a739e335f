//! Concentration of the coherent-state overlap measure: as k grows, the
//! measure d_k |<Psi, U(x) Psi>|^(2k) dx concentrates on the stabilizer of
//! the base point, so mu_k(f) converges to the stabilizer average of f.
//!
//! ```bash
//! cargo run --release --example duffield_concentration
//! ```

use berezin::coherent::duffield_concentration;
use berezin::group::GroupElement;
use berezin::irrep::build_irrep;
use berezin::lie::{build_cartan_weyl, build_root_system, weyl_dimension, Weight};
use berezin::quad::{build_quadrature, stabilizer_quadrature};

fn main() -> berezin::Result<()> {
    let rs = build_root_system('A', 1)?;
    let cw = build_cartan_weyl(&rs);
    let lambda = Weight::from_integers(&[1]);
    let rep_1 = build_irrep(&cw, &lambda, 1)?;

    // A smooth test function on the group: 1 + the (0,0) matrix entry's
    // squared modulus of the defining representation.
    let f = |x: &GroupElement| -> berezin::Result<f64> {
        let m = x.defining_matrix(&cw);
        Ok(1.0 + m[(0, 0)].norm_sqr())
    };

    let ks = [4u64, 8, 16, 32, 64];
    let rule = build_quadrature(&cw, &lambda, *ks.last().unwrap(), 2)?;
    let stab_rule = stabilizer_quadrature(&cw, &lambda, 8)?;

    println!("{:>4} {:>14} {:>14} {:>12}", "k", "mu_k(f)", "stab average", "|gap|");
    for &k in &ks {
        let d_k = weyl_dimension(&rs, &lambda, k)?;
        let (mu, avg) = duffield_concentration(&cw, &rep_1, k, d_k, &rule, &stab_rule, &f)?;
        println!("{:>4} {:>14.8} {:>14.8} {:>12.4e}", k, mu, avg, (mu - avg).abs());
    }

    // f = 1 integrates to exactly 1 at every level (resolution of identity).
    let one = |_: &GroupElement| Ok(1.0);
    let d4 = weyl_dimension(&rs, &lambda, 4)?;
    let (mu1, _) = duffield_concentration(&cw, &rep_1, 4, d4, &rule, &stab_rule, &one)?;
    println!("mu_4(1) = {mu1:.15}");
    Ok(())
}
