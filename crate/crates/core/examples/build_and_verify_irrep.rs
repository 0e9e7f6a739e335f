//! Build the irreducible representation with highest weight k*lambda and
//! print the verification residuals: commutation relations, anti-Hermiticity
//! and the highest-weight-vector identities.
//!
//! ```bash
//! cargo run --release --example build_and_verify_irrep
//! ```

use berezin::irrep::{build_irrep, verify_irrep};
use berezin::lie::{build_cartan_weyl, build_root_system, Weight};

fn main() -> berezin::Result<()> {
    let cases: &[(usize, &[i64], u64)] = &[
        (1, &[1], 8),
        (1, &[3], 5),
        (2, &[1, 0], 4),
        (2, &[1, 1], 3),
    ];
    for &(rank, labels, k) in cases {
        let rs = build_root_system('A', rank)?;
        let cw = build_cartan_weyl(&rs);
        let lambda = Weight::from_integers(labels);
        let rep = build_irrep(&cw, &lambda, k)?;
        let report = verify_irrep(&cw, &rep);
        println!("A_{rank}, lambda {labels:?}, k = {k}:");
        println!("  dim = {} (expected {})", report.dim, report.expected_dim);
        println!("  commutator residual      {:.3e}", report.commutator_residual);
        println!("  anti-hermiticity residual {:.3e}", report.anti_hermiticity_residual);
        println!("  hw cartan residual       {:.3e}", report.hw_cartan_residual);
        println!("  hw raising residual      {:.3e}", report.hw_raising_residual);
        println!("  hw expectation residual  {:.3e}", report.hw_expectation_residual);
        println!("  irreducible: {}", rep.irreducibility_check());
        println!();
    }
    Ok(())
}
