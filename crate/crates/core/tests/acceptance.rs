//! Acceptance suite: one test per release criterion, with the tolerances
//! pinned in the assertions. Each test prints a single pass line on success.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use berezin::berezin::{
    completeness_rank, dimension_growth, equivariance_defect, quantize,
};
use berezin::coherent::{duffield_concentration, gilmore_check, normalization_operator};
use berezin::group::haar_random;
use berezin::harness::{run_sweep, ExperimentConfig, FunctionSpec, GroupSpec, QuadratureSpec};
use berezin::irrep::{build_irrep, verify_irrep, Irrep};
use berezin::lie::{build_cartan_weyl, build_root_system, weyl_dimension, CartanWeylBasis, Weight};
use berezin::orbit::{base_point, coadjoint_act, momentum_map, OrbitFunction};
use berezin::quad::{build_quadrature, stabilizer_quadrature, QuadratureRule};

fn setup(rank: usize) -> CartanWeylBasis {
    build_cartan_weyl(&build_root_system('A', rank).unwrap())
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> berezin::linalg::CVec {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let v = berezin::linalg::CVec::from_fn(d, |_, _| {
        num_complex::Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.norm();
    v / num_complex::Complex64::new(n, 0.0)
}

fn sweep_config(k_values: Vec<u64>, fn_coords: Vec<Vec<f64>>, sign: &str) -> ExperimentConfig {
    ExperimentConfig {
        schema_version: 1,
        group: GroupSpec { series: "A".into(), rank: 1 },
        lambda: vec![1],
        k_values,
        functions: fn_coords
            .into_iter()
            .map(|v| FunctionSpec { kind: "linear".into(), parameters: vec![v], constant: None })
            .collect(),
        quadrature: QuadratureSpec::default(),
        sign_convention: sign.into(),
        seed: 20_260_826,
    }
}

/// The levels exercised by criterion 1, shared by criteria 1 and 3.
fn criterion1_levels() -> Vec<(usize, Vec<i64>, Vec<u64>)> {
    let mut levels = Vec::new();
    for m in 1..=8i64 {
        levels.push((1usize, vec![m], (1..=32).collect()));
    }
    levels.push((2, vec![1, 0], (1..=8).collect()));
    levels.push((2, vec![1, 1], (1..=8).collect()));
    levels
}

#[test]
fn criterion_01_irrep_validity() {
    let t0 = Instant::now();
    for (rank, labels, ks) in criterion1_levels() {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        for k in ks {
            let rep = build_irrep(&cw, &lambda, k).unwrap();
            let report = verify_irrep(&cw, &rep);
            assert!(
                report.dimension_match
                    && rep.dim as u64 == weyl_dimension(&cw.root_system, &lambda, k).unwrap(),
                "dimension mismatch at rank {rank}, lambda {labels:?}, k {k}"
            );
            assert!(
                report.commutator_residual < 1e-9,
                "commutator residual {} at rank {rank}, lambda {labels:?}, k {k}",
                report.commutator_residual
            );
            let hw = report
                .hw_cartan_residual
                .max(report.hw_raising_residual)
                .max(report.hw_expectation_residual);
            assert!(hw < 1e-10, "hw residual {hw} at rank {rank}, lambda {labels:?}, k {k}");
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 60, "criterion 1 took {dt:?}, budget 60 s");
    println!("criterion 01 irrep validity: PASS ({dt:?})");
}

#[test]
fn criterion_02_gilmore() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (rank, labels, k) in [(1usize, vec![1i64], 5u64), (2, vec![1, 1], 3)] {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        let rep_k = build_irrep(&cw, &lambda, k).unwrap();
        let rep_1 = build_irrep(&cw, &lambda, 1).unwrap();
        for _ in 0..100 {
            let x = haar_random(&cw, &mut rng).unwrap();
            let res = gilmore_check(&cw, &rep_k, &rep_1, &x).unwrap();
            assert!(res < 1e-8, "gilmore residual {res} at rank {rank}, k {k}");
        }
    }
    println!("criterion 02 gilmore overlap power law: PASS");
}

#[test]
fn criterion_03_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (rank, labels, ks) in criterion1_levels() {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        for k in ks {
            let rep = build_irrep(&cw, &lambda, k).unwrap();
            let rule = build_quadrature(&cw, &lambda, k, 1).unwrap();
            let op = normalization_operator(&cw, &rep, &rule).unwrap();
            for _ in 0..20 {
                let psi = random_unit(&mut rng, rep.dim);
                let v = psi.dotc(&(&op * &psi)).re;
                assert!(
                    (v - 1.0).abs() < 1e-6,
                    "normalization {v} at rank {rank}, lambda {labels:?}, k {k}"
                );
            }
        }
    }
    println!("criterion 03 pure-state normalization: PASS");
}

#[test]
fn criterion_04_momentum_map_left_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (rank, labels, k) in [(1usize, vec![1i64], 4u64), (2, vec![1, 0], 3)] {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        let rep = build_irrep(&cw, &lambda, k).unwrap();
        let base = base_point(&cw, &lambda);
        let psi = rep.hw_vector();
        for _ in 0..50 {
            let x = haar_random(&cw, &mut rng).unwrap();
            let sigma = coadjoint_act(&cw, &x, &base);
            let coherent = rep.apply_group(&cw, &x, &psi);
            let j = momentum_map(&cw, &rep, &coherent).unwrap();
            let dev = j.distance(&sigma);
            assert!(dev < 1e-9, "left-inverse residual {dev} at rank {rank}, k {k}");
        }
    }
    println!("criterion 04 momentum-map left inverse: PASS");
}

#[test]
fn criterion_05_unit_positivity_norm_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Q(1) = I at every feasible level.
    let one = OrbitFunction::Constant(1.0);
    for (rank, labels, ks) in [
        (1usize, vec![1i64], vec![1u64, 2, 4, 8, 16]),
        (2, vec![1, 0], vec![1, 2, 4]),
        (2, vec![1, 1], vec![1, 2]),
    ] {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        for k in ks {
            let rep = build_irrep(&cw, &lambda, k).unwrap();
            let rule = build_quadrature(&cw, &lambda, k, 1).unwrap();
            let q = quantize(&cw, &rep, &one, &rule).unwrap().matrix;
            let dev = berezin::linalg::max_abs_diff(
                &q,
                &berezin::linalg::CMat::identity(rep.dim, rep.dim),
            );
            assert!(dev < 1e-10, "Q(1) deviates {dev} at rank {rank}, lambda {labels:?}, k {k}");
        }
    }

    // Positivity and the norm bound on A1, k = 8.
    let cw = setup(1);
    let lambda = Weight::from_integers(&[1]);
    let rep = build_irrep(&cw, &lambda, 8).unwrap();
    let rule = build_quadrature(&cw, &lambda, 8, 2).unwrap();
    for _ in 0..10 {
        use rand::Rng;
        let v: Vec<f64> = (0..cw.dim_g()).map(|_| rng.gen::<f64>() - 0.5).collect();
        // f = sigma(v)^2 is nonnegative on the orbit.
        let f = OrbitFunction::Product(vec![v.clone(), v]);
        let q = quantize(&cw, &rep, &f, &rule).unwrap();
        let min = q.min_eigenvalue();
        assert!(min >= -1e-10, "Q(f) min eigenvalue {min} for nonnegative f");
        let sup = berezin::berezin::sup_norm(&cw, &lambda, &f, &mut rng).unwrap();
        assert!(
            q.op_norm() <= sup + 1e-8,
            "norm bound violated: ||Q(f)|| = {} > ||f||_inf = {sup}",
            q.op_norm()
        );
    }
    println!("criterion 05 unit, positivity, norm bound: PASS");
}

#[test]
fn criterion_06_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (rank, labels, ks) in
        [(1usize, vec![1i64], vec![1u64, 2, 4, 8, 16, 32]), (2, vec![1, 0], vec![1, 2, 3, 4])]
    {
        let cw = setup(rank);
        let lambda = Weight::from_integers(&labels);
        let mut coords = vec![0.0; cw.dim_g()];
        coords[cw.root_system.rank] = 1.0;
        let f = OrbitFunction::Linear(coords);
        for k in ks {
            let rep = build_irrep(&cw, &lambda, k).unwrap();
            let rule = build_quadrature(&cw, &lambda, k, 1).unwrap();
            for _ in 0..20 {
                let x = haar_random(&cw, &mut rng).unwrap();
                let dev = equivariance_defect(&cw, &rep, &f, &x, &rule).unwrap();
                assert!(dev < 1e-7, "equivariance defect {dev} at rank {rank}, k {k}");
            }
        }
    }
    println!("criterion 06 equivariance: PASS");
}

#[test]
fn criterion_07_dirac_rate() {
    let t0 = Instant::now();
    let ks = vec![4u64, 8, 16, 32, 64];
    let fx = vec![0.0, 1.0, 0.0];
    let fy = vec![0.0, 0.0, 1.0];

    let cfg = sweep_config(ks.clone(), vec![fx.clone(), fy.clone()], "theorem");
    let report = run_sweep(&cfg, None).unwrap();
    let fit = &report.fits["dirac_defect"];
    assert!(
        fit.slope >= -1.3 && fit.slope <= -0.7,
        "theorem-convention dirac slope {} outside [-1.3, -0.7]",
        fit.slope
    );
    assert!(fit.r2 > 0.98, "dirac fit r2 {} <= 0.98", fit.r2);

    let flipped_cfg = sweep_config(ks, vec![fx, fy], "liepbr");
    let flipped = run_sweep(&flipped_cfg, None).unwrap();
    let ffit = &flipped.fits["dirac_defect"];
    assert!(
        ffit.slope > -0.2,
        "flipped-convention dirac slope {} does not stay bounded away from decay",
        ffit.slope
    );

    let dt = t0.elapsed();
    assert!(dt.as_secs() < 300, "criterion 7 took {dt:?}, budget 5 min");
    println!(
        "criterion 07 dirac rate: PASS (theorem slope {:.3}, r2 {:.4}; flipped slope {:.3}; {dt:?})",
        fit.slope, fit.r2, ffit.slope
    );
}

#[test]
fn criterion_08_jordan_rate() {
    let fx = vec![0.0, 1.0, 0.0];
    let cfg = sweep_config(vec![4, 8, 16, 32, 64], vec![fx.clone(), fx], "theorem");
    let report = run_sweep(&cfg, None).unwrap();
    let fit = &report.fits["jordan_defect"];
    assert!(
        fit.slope >= -1.3 && fit.slope <= -0.7,
        "jordan slope {} outside [-1.3, -0.7]",
        fit.slope
    );
    let products: Vec<f64> = report.rows.iter().map(|r| r.product_defect.unwrap()).collect();
    assert!(
        products.windows(2).all(|w| w[1] < w[0]),
        "product defect not decreasing: {products:?}"
    );
    println!("criterion 08 jordan rate: PASS (slope {:.3})", fit.slope);
}

#[test]
fn criterion_09_norm_convergence() {
    let cfg = sweep_config(
        vec![4, 8, 16, 32, 64],
        vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        "theorem",
    );
    let report = run_sweep(&cfg, None).unwrap();
    let gaps: Vec<f64> = report.rows.iter().map(|r| r.norm_gap.unwrap()).collect();
    assert!(gaps.iter().all(|&g| g > 0.0), "norm gap not positive: {gaps:?}");
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "norm gap not decreasing: {gaps:?}");
    let fit = &report.fits["norm_gap"];
    assert!(
        fit.slope >= -1.3 && fit.slope <= -0.7,
        "norm gap slope {} outside [-1.3, -0.7]",
        fit.slope
    );
    println!("criterion 09 norm convergence: PASS (slope {:.3})", fit.slope);
}

#[test]
fn criterion_10_duffield_concentration() {
    let ks = [4u64, 8, 16, 32, 64];

    // A smooth non-invariant test function through the sweep.
    let cfg = sweep_config(
        ks.to_vec(),
        vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
        "theorem",
    );
    let report = run_sweep(&cfg, None).unwrap();
    let gaps: Vec<f64> = report.rows.iter().map(|r| r.duffield_gap.unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "duffield gap not decreasing: {gaps:?}");

    // f = 1 integrates to exactly 1 at every k.
    let cw = setup(1);
    let lambda = Weight::from_integers(&[1]);
    let rep_1 = build_irrep(&cw, &lambda, 1).unwrap();
    let rule = build_quadrature(&cw, &lambda, *ks.last().unwrap(), 1).unwrap();
    let stab_rule = stabilizer_quadrature(&cw, &lambda, 4).unwrap();
    let one = |_: &berezin::group::GroupElement| Ok(1.0);
    for &k in &ks {
        let d_k = weyl_dimension(&cw.root_system, &lambda, k).unwrap();
        let (mu, avg) =
            duffield_concentration(&cw, &rep_1, k, d_k, &rule, &stab_rule, &one).unwrap();
        assert!((mu - 1.0).abs() < 1e-10, "mu_k(1) = {mu} at k {k}");
        assert!((avg - 1.0).abs() < 1e-12);
    }
    println!("criterion 10 duffield concentration: PASS");
}

#[test]
fn criterion_11_dimension_asymptotics() {
    let ks = [8u64, 16, 32, 64];
    for (rank, labels, expect) in
        [(1usize, vec![1i64], 1.0), (2, vec![1, 1], 3.0), (2, vec![1, 0], 2.0)]
    {
        let rs = build_root_system('A', rank).unwrap();
        let lambda = Weight::from_integers(&labels);
        let p = dimension_growth(&rs, &lambda, &ks).unwrap();
        assert!(
            (p - expect).abs() <= 0.1,
            "exponent {p} for rank {rank}, lambda {labels:?}; expected {expect} +- 0.1"
        );
    }
    println!("criterion 11 dimension asymptotics: PASS");
}

#[test]
fn criterion_12_monte_carlo_cross_validation() {
    for (rank, labels) in [(1usize, vec![1i64]), (2, vec![1, 0])] {
        let dim_g = if rank == 1 { 3 } else { 8 };
        let mut coords = vec![0.0; dim_g];
        coords[rank] = 1.0;
        let cfg = ExperimentConfig {
            schema_version: 1,
            group: GroupSpec { series: "A".into(), rank },
            lambda: labels.clone(),
            k_values: vec![1, 2, 3, 4],
            functions: vec![FunctionSpec {
                kind: "linear".into(),
                parameters: vec![coords],
                constant: None,
            }],
            quadrature: QuadratureSpec::default(),
            sign_convention: "theorem".into(),
            seed: 12,
        };
        let report = berezin::harness::cross_validate(&cfg, 20_000).unwrap();
        assert!(!report.rows.is_empty());
        for row in &report.rows {
            assert!(
                row.pass,
                "MC cross-validation failed at rank {rank}, k {}: {}σ",
                row.k, row.max_sigma_ratio
            );
        }
    }
    println!("criterion 12 monte carlo cross-validation: PASS");
}

/// All monomials sigma(e_{i1})...sigma(e_{id}) of degree <= max_degree.
fn monomials(dim_g: usize, max_degree: usize) -> Vec<OrbitFunction> {
    let mut out = vec![OrbitFunction::Constant(1.0)];
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for combo in &stack {
            let start = combo.last().copied().unwrap_or(0);
            for i in start..dim_g {
                let mut c = combo.clone();
                c.push(i);
                let factors: Vec<Vec<f64>> = c
                    .iter()
                    .map(|&j| {
                        let mut v = vec![0.0; dim_g];
                        v[j] = 1.0;
                        v
                    })
                    .collect();
                out.push(OrbitFunction::Product(factors));
                next.push(c);
            }
        }
        stack = next;
    }
    out
}

#[test]
fn criterion_13_completeness() {
    let cw = setup(1);
    let lambda = Weight::from_integers(&[1]);
    for k in [1u64, 2] {
        let rep = build_irrep(&cw, &lambda, k).unwrap();
        let family = monomials(cw.dim_g(), 2 * k as usize);
        let rule: QuadratureRule = build_quadrature(&cw, &lambda, k, 2 * k as u32).unwrap();
        let rank = completeness_rank(&cw, &rep, &family, &rule).unwrap();
        let d2 = rep.dim * rep.dim;
        assert_eq!(rank, d2, "completeness rank {rank} != d^2 = {d2} at k {k}");
    }
    println!("criterion 13 completeness: PASS");
}
