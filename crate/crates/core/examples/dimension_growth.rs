//! Dimension asymptotics: d_{k lambda} grows like k^(|Delta_lambda^+|), half
//! the symplectic dimension of the coadjoint orbit. Pure weight-lattice
//! arithmetic, no matrices.
//!
//! ```bash
//! cargo run --example dimension_growth
//! ```

use berezin::berezin::dimension_growth;
use berezin::lie::{build_root_system, orbit_dimension, weyl_dimension, Weight};

fn main() -> berezin::Result<()> {
    let ks = [8u64, 16, 32, 64];
    let cases: &[(usize, &[i64])] = &[(1, &[1]), (2, &[1, 0]), (2, &[1, 1])];
    for &(rank, labels) in cases {
        let rs = build_root_system('A', rank)?;
        let lambda = Weight::from_integers(labels);
        let dims: Vec<u64> = ks
            .iter()
            .map(|&k| weyl_dimension(&rs, &lambda, k).unwrap())
            .collect();
        let exponent = dimension_growth(&rs, &lambda, &ks)?;
        let (orbit_dim, _) = orbit_dimension(&rs, &lambda);
        println!(
            "A_{rank}, lambda {labels:?}: dims {dims:?} -> exponent {exponent:.4} \
             (orbit dimension / 2 = {})",
            orbit_dim / 2
        );
    }
    Ok(())
}
