//! Tour of the A_1 and A_2 root-system data the rest of the crate is built
//! on: simple roots, Cartan matrices, Weyl dimensions and orbit dimensions.
//!
//! ```bash
//! cargo run --example root_systems
//! ```

use berezin::lie::{
    build_cartan_weyl, build_root_system, orbit_dimension, weyl_dimension, weyl_group_orbit,
    Weight,
};

fn main() -> berezin::Result<()> {
    for rank in [1usize, 2] {
        let rs = build_root_system('A', rank)?;
        println!("A_{rank}: su({})", rank + 1);
        println!("  positive roots: {}", rs.num_positive);
        println!("  group dimension: {}", rs.group_dim());
        for i in 0..rank {
            let row: Vec<String> = (0..rank)
                .map(|j| format!("{:2}", rs.cartan_matrix[i][j]))
                .collect();
            println!("  cartan[{i}] = [{}]", row.join(" "));
        }

        let cw = build_cartan_weyl(&rs);
        println!("  real basis size: {}", cw.dim_g());

        // Fundamental and adjoint-type weights: dimensions at a few levels.
        let weights: Vec<Vec<i64>> = if rank == 1 {
            vec![vec![1], vec![2]]
        } else {
            vec![vec![1, 0], vec![1, 1]]
        };
        for labels in weights {
            let lambda = Weight::from_integers(&labels);
            let dims: Vec<u64> = (1..=4)
                .map(|k| weyl_dimension(&rs, &lambda, k).unwrap())
                .collect();
            let (orbit_dim, _) = orbit_dimension(&rs, &lambda);
            let orbit = weyl_group_orbit(&rs, &lambda);
            println!(
                "  lambda {labels:?}: dim(V_k) for k=1..4 = {dims:?}, \
                 orbit dimension {orbit_dim}, Weyl orbit size {}",
                orbit.len()
            );
        }
        println!();
    }
    Ok(())
}
