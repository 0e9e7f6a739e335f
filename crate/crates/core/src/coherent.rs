//! Perelomov coherent states U_{k lambda}(x) Psi and the pure-state
//! quantization checks: normalization, overlap powers (Gilmore), kernel
//! localization and Duffield concentration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::irrep::Irrep;
use crate::lie::{CartanWeylBasis, CMat};
use crate::linalg::CVec;
use crate::orbit::{base_point, coadjoint_act, OrbitFunction, OrbitPoint};
use crate::quad::{sweep_conj, QuadratureRule};

pub struct CoherentState {
    pub x: GroupElement,
    pub vector: CVec,
    pub point: OrbitPoint,
}

/// q(Co(x) lambda) = U(x) Psi together with its orbit point.
pub fn coherent_state(cw: &CartanWeylBasis, rep: &Irrep, x: &GroupElement) -> CoherentState {
    let vector = rep.apply_group(cw, x, &rep.hw_vector());
    let point = coadjoint_act(cw, x, &base_point(cw, &rep.base_weight));
    CoherentState { x: x.clone(), vector, point }
}

/// p(a, b) = |<a, b>|^2.
pub fn transition_probability(a: &CVec, b: &CVec) -> f64 {
    a.dotc(b).norm_sqr()
}

/// d * integral of |U(x) Psi><U(x) Psi| dx, which must be the identity.
/// Computed by the channel sweep, so it is cheap even at large d.
pub fn normalization_operator(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
) -> Result<CMat> {
    let psi = rep.hw_vector();
    let p = &psi * psi.adjoint();
    let swept = sweep_conj(cw, rep, rule, &p, false)?;
    Ok(swept * Complex64::new(rep.dim as f64, 0.0))
}

/// d * sum_i w_i |<U(x_i) Psi, psi>|^2; equals 1 for every unit psi when the
/// rule is exact.
pub fn check_normalization(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
    psi: &CVec,
) -> Result<f64> {
    let op = normalization_operator(cw, rep, rule)?;
    Ok(psi.dotc(&(op * psi)).re)
}

/// |<Psi_k, U_k(x) Psi_k> - <Psi_1, U_1(x) Psi_1>^k|.
pub fn gilmore_check(
    cw: &CartanWeylBasis,
    rep_k: &Irrep,
    rep_1: &Irrep,
    x: &GroupElement,
) -> Result<f64> {
    if rep_k.base_weight != rep_1.base_weight || rep_1.level != 1 {
        return Err(Error::Domain(
            "gilmore_check needs the level-k and level-1 irreps of the same lambda".into(),
        ));
    }
    let ov_k = rep_k.hw_vector().dotc(&rep_k.apply_group(cw, x, &rep_k.hw_vector()));
    let ov_1 = rep_1.hw_vector().dotc(&rep_1.apply_group(cw, x, &rep_1.hw_vector()));
    Ok((ov_k - ov_1.powu(rep_k.level as u32)).norm())
}

/// S(x) = -log <Psi, U(x) Psi>, principal branch; Re S >= 0.
pub fn overlap_action(cw: &CartanWeylBasis, rep: &Irrep, x: &GroupElement) -> Result<Complex64> {
    let ov = rep.hw_vector().dotc(&rep.apply_group(cw, x, &rep.hw_vector()));
    if ov.norm() < 1e-300 {
        return Err(Error::Domain("overlap vanishes; action undefined".into()));
    }
    Ok(-ov.ln())
}

/// mu_k(f) = d_{k lambda} sum_i w_i |<Psi_1, U_1(x_i) Psi_1>|^{2k} f(x_i),
/// built from the level-1 irrep only, together with the stabilizer average
/// int_{G_lambda} f(h) dh from a subgroup rule. f must be right-G_lambda-
/// invariant (the rule's fiber axes are dropped).
pub fn duffield_concentration<F>(
    cw: &CartanWeylBasis,
    rep_1: &Irrep,
    k: u64,
    d_k: u64,
    rule: &QuadratureRule,
    stab_rule: &QuadratureRule,
    f: &F,
) -> Result<(f64, f64)>
where
    F: Fn(&GroupElement) -> Result<f64>,
{
    let psi = rep_1.hw_vector();
    let mut mu = 0.0;
    for i in 0..rule.num_nodes(false) {
        let (x, w) = rule.node(i, false);
        let ov = psi.dotc(&rep_1.apply_group(cw, &x, &psi));
        mu += w * ov.norm_sqr().powi(k as i32) * f(&x)?;
    }
    mu *= d_k as f64;
    let mut avg = 0.0;
    for i in 0..stab_rule.num_nodes(true) {
        let (h, w) = stab_rule.node(i, true);
        avg += w * f(&h)?;
    }
    Ok((mu, avg))
}

/// d_{k lambda} sum_i w_i p(q(rho), q(x_i)) f(sigma_i); tends to f(rho).
pub fn kernel_localization(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
    rho: &OrbitPoint,
    f: &OrbitFunction,
) -> Result<f64> {
    let y = rho
        .source
        .as_ref()
        .ok_or_else(|| Error::Domain("orbit point carries no group element".into()))?;
    let psi = rep.hw_vector();
    let v_rho = rep.apply_group(cw, y, &psi);
    let lambda = &rep.base_weight;
    let base = base_point(cw, lambda);
    let mut acc = 0.0;
    for i in 0..rule.num_nodes(false) {
        let (x, w) = rule.node(i, false);
        let v = rep.apply_group(cw, &x, &psi);
        let sigma = coadjoint_act(cw, &x, &base);
        acc += w * transition_probability(&v_rho, &v) * f.eval_node(i, &sigma)?;
    }
    Ok(acc * rep.dim as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{haar_random, GroupElement};
    use crate::irrep::build_irrep;
    use crate::lie::{build_cartan_weyl, build_root_system, BasisLabel, CartanWeylBasis, Weight};
    use crate::orbit::{base_point, coadjoint_act};
    use crate::quad::{build_quadrature, stabilizer_quadrature};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn setup(rank: usize) -> CartanWeylBasis {
        build_cartan_weyl(&build_root_system('A', rank).unwrap())
    }

    fn rand_state(d: usize, rng: &mut ChaCha8Rng) -> CVec {
        let v = CVec::from_fn(d, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let n = v.norm();
        v / Complex64::new(n, 0.0)
    }

    #[test]
    fn coherent_state_at_identity_is_highest_weight_vector() {
        let cw = setup(1);
        let rep = build_irrep(&cw, &Weight::from_integers(&[2]), 2).unwrap();
        let cs = coherent_state(&cw, &rep, &GroupElement::identity());
        assert!((cs.vector - rep.hw_vector()).norm() < 1e-15);
        assert!(cs.point.distance(&base_point(&cw, &rep.base_weight)) < 1e-12);
    }

    #[test]
    fn transition_probability_follows_overlap_power_law() {
        // p(rho, sigma) = cos^{2 k m}(t) along the X rotation for A1.
        let cw = setup(1);
        for (m, k) in [(1i64, 4u64), (3, 2)] {
            let rep = build_irrep(&cw, &Weight::from_integers(&[m]), k).unwrap();
            let psi = rep.hw_vector();
            for t in [0.3f64, 0.9] {
                let x = GroupElement::single(&cw, BasisLabel::RootX(0), t);
                let cs = coherent_state(&cw, &rep, &x);
                let p = transition_probability(&psi, &cs.vector);
                let want = t.cos().powi(2 * m as i32 * k as i32);
                assert!((p - want).abs() < 1e-12, "m={m} k={k} t={t}");
            }
        }
    }

    #[test]
    fn normalization_is_exact_for_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for (rank, labels, k) in [(1usize, vec![1i64], 6u64), (2, vec![1i64, 0], 2), (2, vec![1i64, 1], 1)] {
            let cw = setup(rank);
            let lam = Weight::from_integers(&labels);
            let rep = build_irrep(&cw, &lam, k).unwrap();
            let rule = build_quadrature(&cw, &lam, k, 2).unwrap();
            let op = normalization_operator(&cw, &rep, &rule).unwrap();
            let diff = crate::linalg::max_abs_diff(&op, &CMat::identity(rep.dim, rep.dim));
            assert!(diff < 1e-12, "rank {rank} {labels:?}: {diff}");
            for _ in 0..5 {
                let psi = rand_state(rep.dim, &mut rng);
                let v = check_normalization(&cw, &rep, &rule, &psi).unwrap();
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gilmore_residual_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for (rank, labels, k) in [(1usize, vec![1i64], 5u64), (2, vec![1i64, 1], 2)] {
            let cw = setup(rank);
            let lam = Weight::from_integers(&labels);
            let rep_k = build_irrep(&cw, &lam, k).unwrap();
            let rep_1 = build_irrep(&cw, &lam, 1).unwrap();
            assert!(gilmore_check(&cw, &rep_k, &rep_1, &GroupElement::identity()).unwrap() < 1e-15);
            for _ in 0..10 {
                let x = haar_random(&cw, &mut rng).unwrap();
                let r = gilmore_check(&cw, &rep_k, &rep_1, &x).unwrap();
                assert!(r < 1e-10, "rank {rank} k={k}: {r}");
            }
            // mismatched levels are rejected
            assert!(gilmore_check(&cw, &rep_1, &rep_k, &GroupElement::identity()).is_err());
        }
    }

    #[test]
    fn overlap_action_quadratic_growth_and_torus_phase() {
        let cw = setup(1);
        let rep = build_irrep(&cw, &Weight::from_integers(&[1]), 1).unwrap();
        // identity: S = 0
        let s0 = overlap_action(&cw, &rep, &GroupElement::identity()).unwrap();
        assert!(s0.norm() < 1e-14);
        // torus: S = i k lambda(t) phi, purely imaginary
        let phi = 0.37;
        let h = GroupElement::single(&cw, BasisLabel::Torus(0), phi);
        let s = overlap_action(&cw, &rep, &h).unwrap();
        assert!(s.re.abs() < 1e-13 && (s.im - phi).abs() < 1e-13, "{s}");
        // root direction: Re S = -ln cos t, quadratic near 0
        for t in [1e-2f64, 1e-3] {
            let x = GroupElement::single(&cw, BasisLabel::RootX(0), t);
            let s = overlap_action(&cw, &rep, &x).unwrap();
            assert!((s.re + t.cos().ln()).abs() < 1e-13);
            assert!((s.re / (t * t) - 0.5).abs() < 1e-2, "quadratic coefficient");
        }
    }

    #[test]
    fn duffield_closed_form_for_a1() {
        // mu_k(|<Psi_1, U_1 Psi_1>|^2) = d_k / (k + 2) = (k+1)/(k+2) for m=1,
        // and the stabilizer average of that observable is exactly 1.
        let cw = setup(1);
        let lam = Weight::from_integers(&[1]);
        let rep_1 = build_irrep(&cw, &lam, 1).unwrap();
        let stab = stabilizer_quadrature(&cw, &lam, 4).unwrap();
        let psi = rep_1.hw_vector();
        let f = |x: &GroupElement| -> crate::Result<f64> {
            let u = rep_1.apply_group(&cw, x, &psi);
            Ok(psi.dotc(&u).norm_sqr())
        };
        for k in [1u64, 3, 6] {
            let rule = build_quadrature(&cw, &lam, k, 2).unwrap();
            let d_k = k + 1;
            let (mu, avg) = duffield_concentration(&cw, &rep_1, k, d_k, &rule, &stab, &f).unwrap();
            let want = (k as f64 + 1.0) / (k as f64 + 2.0);
            assert!((mu - want).abs() < 1e-12, "k={k}: {mu} vs {want}");
            assert!((avg - 1.0).abs() < 1e-12);
            // f == 1 integrates to exactly 1
            let (one, avg1) =
                duffield_concentration(&cw, &rep_1, k, d_k, &rule, &stab, &|_| Ok(1.0)).unwrap();
            assert!((one - 1.0).abs() < 1e-12 && (avg1 - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn kernel_localization_is_exact_on_constants_and_concentrates() {
        let cw = setup(1);
        let lam = Weight::from_integers(&[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let y = haar_random(&cw, &mut rng).unwrap();
        let rho = coadjoint_act(&cw, &y, &base_point(&cw, &lam));
        let lin = crate::orbit::OrbitFunction::Linear(vec![0.3, -1.1, 0.7]);
        let target = lin.eval(&rho).unwrap();
        let mut errs = Vec::new();
        for k in [2u64, 4, 8, 16] {
            let rep = build_irrep(&cw, &lam, k).unwrap();
            let rule = build_quadrature(&cw, &lam, k, 2).unwrap();
            let c = kernel_localization(&cw, &rep, &rule, &rho, &crate::orbit::OrbitFunction::Constant(2.0)).unwrap();
            assert!((c - 2.0).abs() < 1e-12, "constants reproduce exactly");
            let v = kernel_localization(&cw, &rep, &rule, &rho, &lin).unwrap();
            errs.push((v - target).abs());
        }
        for w in errs.windows(2) {
            assert!(w[1] < w[0], "localization error should decrease: {errs:?}");
        }
    }
}
