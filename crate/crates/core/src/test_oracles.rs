//! Independent oracles used by the unit tests: closed-form or brute-force
//! recomputations of quantities the library derives by other routes.

use std::collections::HashMap;

/// Weight multiset of the A1 irrep with highest weight m (Dynkin label):
/// labels m, m-2, ..., -m, each with multiplicity one.
pub fn a1_weights(m: i64) -> Vec<i64> {
    (0..=m).map(|l| m - 2 * l).collect()
}

/// Off-diagonal lowering amplitudes of the A1 irrep in the weight-ordered
/// basis: F e_l = sqrt((l+1)(m-l)) e_{l+1}.
pub fn a1_lowering_amplitude(m: i64, l: i64) -> f64 {
    (((l + 1) * (m - l)) as f64).sqrt()
}

/// Kostant partition function for A2: number of ways to write
/// c1*alpha1 + c2*alpha2 as a nonnegative integer combination of the
/// positive roots {alpha1, alpha2, alpha1+alpha2}; equals min(c1,c2)+1.
fn kostant_p(c1: i64, c2: i64) -> i64 {
    if c1 < 0 || c2 < 0 {
        0
    } else {
        c1.min(c2) + 1
    }
}

/// Convert epsilon coordinates (e1,e2,e3) of an A2 weight to Dynkin labels.
fn eps_to_labels(e: [i64; 3]) -> (i64, i64) {
    (e[0] - e[1], e[1] - e[2])
}

/// Dynkin labels to simple-root coordinates times 3 (A2): if
/// mu = c1 alpha1 + c2 alpha2 then 3*c1 = 2 mu1 + mu2, 3*c2 = mu1 + 2 mu2.
fn labels_to_root_coords_x3(labels: (i64, i64)) -> (i64, i64) {
    (2 * labels.0 + labels.1, labels.0 + 2 * labels.1)
}

/// Weight multiplicity in the A2 irrep of highest weight `lambda` via the
/// Kostant multiplicity formula, summing over the Weyl group S3 acting on
/// epsilon coordinates.
pub fn a2_multiplicity(lambda: (i64, i64), mu: (i64, i64)) -> i64 {
    // epsilon coordinates (up to the common shift, which cancels in
    // differences): lambda = (l1+l2, l2, 0) works for differences of labels.
    let lam_eps = [lambda.0 + lambda.1, lambda.1, 0];
    let delta_eps = [2, 1, 0]; // labels (1,1)
    let rho = [lam_eps[0] + delta_eps[0], lam_eps[1] + delta_eps[1], lam_eps[2] + delta_eps[2]];
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
    ];
    let mut total = 0;
    for (p, sgn) in perms {
        let w = [rho[p[0]], rho[p[1]], rho[p[2]]];
        // w(lambda+delta) - (mu+delta) in labels
        let wl = eps_to_labels(w);
        let arg = (wl.0 - mu.0 - 1, wl.1 - mu.1 - 1);
        let (t1, t2) = labels_to_root_coords_x3(arg);
        if t1 % 3 != 0 || t2 % 3 != 0 {
            continue;
        }
        total += sgn * kostant_p(t1 / 3, t2 / 3);
    }
    total
}

/// Full weight multiset of the A2 irrep with highest weight `lambda`,
/// enumerated by walking down from the highest weight by simple roots.
pub fn a2_weight_multiset(lambda: (i64, i64)) -> HashMap<(i64, i64), i64> {
    let mut out = HashMap::new();
    // mu = lambda - a*alpha1 - b*alpha2; labels mu = lambda - (2a-b, 2b-a).
    let height = (lambda.0 + lambda.1) * 2 + 2;
    for a in 0..=height {
        for b in 0..=height {
            let mu = (lambda.0 - 2 * a + b, lambda.1 - 2 * b + a);
            let m = a2_multiplicity(lambda, mu);
            assert!(m >= 0, "negative multiplicity at {mu:?}");
            if m > 0 {
                out.insert(mu, m);
            }
        }
    }
    out
}

/// Dimension of the A2 irrep by summing Kostant multiplicities.
pub fn a2_dimension(lambda: (i64, i64)) -> i64 {
    a2_weight_multiset(lambda).values().sum()
}
