//! Product quadrature rules on SU(2) and SU(3) that integrate matrix
//! coefficients of U_{k lambda} (x) conj(U_{k lambda}) exactly, and the
//! channel-sweep evaluator that applies such a rule to an operator without
//! ever enumerating the full product grid.
//!
//! SU(2) uses the Euler chain D(phi) R(theta) D(gamma) with theta in
//! [0, pi/2]; normalized Haar factorizes as
//! dphi/2pi x sin(2 theta) dtheta x dgamma/2pi, so uniform phase grids plus
//! Gauss-Legendre in u = cos(2 theta) give an exact rule: the phase grids
//! kill every unbalanced monomial in the matrix entries and the survivors
//! are polynomials in u.
//!
//! SU(3) is fibered over CP^2 = SU(3)/U(2): a section
//! T(c1,c2) R_23(theta2) R_12(theta1) carries the uniform (Fubini-Study)
//! measure of CP^2 when (|z_i|^2) is simplex-uniform — Gauss-Legendre in
//! u = cos(2 theta1) against the weight (1-u)/2 and in v = cos(2 theta2)
//! against dv/2, with uniform circle grids for the phases — and the fiber is
//! Haar U(2): a uniform central circle along the torus direction (2,1) times
//! an SU(2) Euler chain in the (2,3) block. Haar on G disintegrates as the
//! invariant base measure times fiber Haar for any section, so the product
//! rule pushes forward to normalized Haar.

use std::collections::HashMap;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{Factor, GroupElement};
use crate::irrep::Irrep;
use crate::lie::{weyl_group_orbit, BasisLabel, CartanWeylBasis, CMat, Weight};
use crate::linalg;

/// One axis of a product rule: nodes exp(angle * X) along a fixed generator
/// direction X (real-basis coordinates), with per-axis weights summing to 1.
#[derive(Debug, Clone)]
pub struct QuadAxis {
    pub coeffs: Vec<f64>,
    pub nodes: Vec<(f64, f64)>,
    /// uniform circle grid (metadata; such axes average characters exactly).
    pub circle: bool,
}

impl QuadAxis {
    fn circle_grid(cw: &CartanWeylBasis, dirs: &[(usize, f64)], m: usize) -> QuadAxis {
        let mut coeffs = vec![0.0; cw.dim_g()];
        for &(j, c) in dirs {
            coeffs[j] = c;
        }
        let w = 1.0 / m as f64;
        let nodes = (0..m).map(|i| (2.0 * std::f64::consts::PI * i as f64 / m as f64, w)).collect();
        QuadAxis { coeffs, nodes, circle: true }
    }

    /// Gauss axis in u = cos(2 theta) with node weight w(u_i) * gl_w_i, for
    /// a rotation generator. `extra` multiplies the flat density 1/2.
    fn rotation_grid<F>(cw: &CartanWeylBasis, idx: usize, n: usize, extra: F) -> QuadAxis
    where
        F: Fn(f64) -> f64,
    {
        let mut coeffs = vec![0.0; cw.dim_g()];
        coeffs[idx] = 1.0;
        let nodes = gauss_legendre(n)
            .into_iter()
            .map(|(u, w)| (0.5 * u.clamp(-1.0, 1.0).acos(), 0.5 * w * extra(u)))
            .collect();
        QuadAxis { coeffs, nodes, circle: false }
    }
}

/// A product quadrature rule with total weight 1. The last `fiber_axes` axes
/// lie in the stabilizer G_lambda and may be dropped for right-G_lambda-
/// invariant integrands.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub scheme: String,
    pub axes: Vec<QuadAxis>,
    pub fiber_axes: usize,
    pub exactness_degree: i64,
}

impl QuadratureRule {
    pub fn active_axes(&self, use_fiber: bool) -> &[QuadAxis] {
        let n = if use_fiber { self.axes.len() } else { self.axes.len() - self.fiber_axes };
        &self.axes[..n]
    }

    pub fn num_nodes(&self, use_fiber: bool) -> usize {
        self.active_axes(use_fiber).iter().map(|a| a.nodes.len()).product()
    }

    /// The idx-th node (mixed-radix over axes, first axis most significant)
    /// and its weight.
    pub fn node(&self, mut idx: usize, use_fiber: bool) -> (GroupElement, f64) {
        let axes = self.active_axes(use_fiber);
        let mut digits = vec![0usize; axes.len()];
        for (a, axis) in axes.iter().enumerate().rev() {
            digits[a] = idx % axis.nodes.len();
            idx /= axis.nodes.len();
        }
        let mut factors = Vec::with_capacity(axes.len());
        let mut weight = 1.0;
        for (a, axis) in axes.iter().enumerate() {
            let (angle, w) = axis.nodes[digits[a]];
            weight *= w;
            factors.push(Factor { coeffs: axis.coeffs.iter().map(|c| c * angle).collect() });
        }
        (GroupElement { factors }, weight)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_n'(x).
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Max |mu(t_j)| over the weights of V_{k lambda}, bounded by the Weyl orbit
/// of the highest weight (weights lie in its convex hull).
fn weight_bound(cw: &CartanWeylBasis, lambda: &Weight, k: u64) -> Vec<i64> {
    let rs = &cw.root_system;
    let orbit = weyl_group_orbit(rs, &lambda.scaled(k));
    (0..rs.rank)
        .map(|j| {
            orbit
                .iter()
                .map(|w| w.dynkin_labels[j].round().abs() as i64)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Builds a product rule exact for matrix coefficients of
/// U_{k lambda} (x) conj(U_{k lambda}) times lifts of polynomial degree
/// `f_degree` on the orbit, for all k <= k_max.
pub fn build_quadrature(
    cw: &CartanWeylBasis,
    lambda: &Weight,
    k_max: u64,
    f_degree: u32,
) -> Result<QuadratureRule> {
    let rs = &cw.root_system;
    if !lambda.is_dominant() || !lambda.is_integral() {
        return Err(Error::Domain("quadrature requires a dominant integral weight".into()));
    }
    if lambda.is_zero() {
        return Ok(QuadratureRule {
            scheme: "trivial".into(),
            axes: vec![QuadAxis::circle_grid(cw, &[(0, 1.0)], 1)],
            fiber_axes: 0,
            exactness_degree: f_degree as i64,
        });
    }
    let wk = weight_bound(cw, lambda, k_max);
    let w1 = weight_bound(cw, lambda, 1);
    // Phase-frequency bound per torus coordinate: U (x) conj(U) contributes
    // 2*wk, each polynomial degree of the lift contributes 2*w1.
    let b: Vec<usize> =
        wk.iter().zip(&w1).map(|(&a, &c)| (2 * a + 2 * f_degree as i64 * c) as usize).collect();
    match rs.rank {
        1 => {
            let x1 = rs.rank; // real-basis index of RootX(alpha_1)
            let n_gl = b[0] / 4 + 2;
            let axes = vec![
                QuadAxis::circle_grid(cw, &[(0, 1.0)], b[0] + 1),
                QuadAxis::rotation_grid(cw, x1, n_gl, |_| 1.0),
                QuadAxis::circle_grid(cw, &[(0, 1.0)], b[0] + 1),
            ];
            Ok(QuadratureRule {
                scheme: "su2-euler".into(),
                axes,
                fiber_axes: 1,
                exactness_degree: f_degree as i64,
            })
        }
        2 => {
            // Real-basis indices of RootX for the simple roots.
            let idx_x = |p: usize| -> usize {
                cw.real_basis_labels
                    .iter()
                    .position(|&l| l == BasisLabel::RootX(rs.simple[p]))
                    .unwrap()
            };
            let (x1, x2) = (idx_x(0), idx_x(1));
            let n_gl = (b[0] + b[1]) / 4 + 3;
            let labels = lambda.integer_labels()?;
            let fiber_axes = if labels[0] > 0 && labels[1] == 0 { 4 } else { 1 };
            let axes = vec![
                QuadAxis::circle_grid(cw, &[(0, 1.0)], b[0] + 1),
                QuadAxis::circle_grid(cw, &[(1, 1.0)], b[1] + 1),
                QuadAxis::rotation_grid(cw, x2, n_gl, |_| 1.0),
                QuadAxis::rotation_grid(cw, x1, n_gl, |u| 1.0 - u),
                QuadAxis::circle_grid(cw, &[(0, 2.0), (1, 1.0)], 2 * b[0] + b[1] + 1),
                QuadAxis::circle_grid(cw, &[(1, 1.0)], b[1] + 1),
                QuadAxis::rotation_grid(cw, x2, n_gl, |_| 1.0),
                QuadAxis::circle_grid(cw, &[(1, 1.0)], b[1] + 1),
            ];
            Ok(QuadratureRule {
                scheme: "su3-cp2-fiber".into(),
                axes,
                fiber_axes,
                exactness_degree: f_degree as i64,
            })
        }
        r => Err(Error::Config(format!("quadrature not implemented for rank {r}"))),
    }
}

/// Quadrature over the stabilizer G_lambda, for subgroup averages.
pub fn stabilizer_quadrature(
    cw: &CartanWeylBasis,
    lambda: &Weight,
    freq_bound: usize,
) -> Result<QuadratureRule> {
    let rs = &cw.root_system;
    let labels = lambda.integer_labels()?;
    let m = freq_bound + 1;
    let singular_a2 = rs.rank == 2 && labels[0] > 0 && labels[1] == 0;
    let axes = if singular_a2 {
        // G_lambda = U(2) in the (2,3) block: central circle + SU(2) Euler.
        let x2 = cw
            .real_basis_labels
            .iter()
            .position(|&l| l == BasisLabel::RootX(rs.simple[1]))
            .unwrap();
        vec![
            QuadAxis::circle_grid(cw, &[(0, 2.0), (1, 1.0)], 2 * freq_bound + 1),
            QuadAxis::circle_grid(cw, &[(1, 1.0)], m),
            QuadAxis::rotation_grid(cw, x2, freq_bound / 2 + 2, |_| 1.0),
            QuadAxis::circle_grid(cw, &[(1, 1.0)], m),
        ]
    } else {
        // Regular lambda: G_lambda is the maximal torus.
        (0..rs.rank).map(|j| QuadAxis::circle_grid(cw, &[(j, 1.0)], m)).collect()
    };
    Ok(QuadratureRule {
        scheme: "stabilizer".into(),
        axes,
        fiber_axes: 0,
        exactness_degree: freq_bound as i64,
    })
}

/// Per-axis spectral data for the sweep: frequencies lambda_b and (unless the
/// axis is diagonal in the weight basis) the eigenvector frame.
enum AxisFrame<'a> {
    Diagonal(DVector<f64>),
    Frame(&'a DVector<f64>, &'a CMat),
}

fn axis_frame<'a>(
    cw: &CartanWeylBasis,
    rep: &'a Irrep,
    axis: &QuadAxis,
) -> Result<AxisFrame<'a>> {
    let rank = cw.root_system.rank;
    let torus_only = axis
        .coeffs
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0.0 || i < rank);
    if torus_only {
        // exp(theta * sum_j c_j H_j) has phase e^{-i theta sum_j c_j mu_j}.
        let vals = DVector::from_iterator(
            rep.dim,
            (0..rep.dim).map(|b| {
                (0..rank).map(|j| axis.coeffs[j] * rep.weights[b][j] as f64).sum::<f64>()
            }),
        );
        return Ok(AxisFrame::Diagonal(vals));
    }
    let f = Factor { coeffs: axis.coeffs.clone() };
    match f.single_generator() {
        Some((idx, _)) => {
            let (vals, vecs) = rep.generator_eigen(cw, idx);
            Ok(AxisFrame::Frame(vals, vecs))
        }
        None => Err(Error::Quadrature(
            "sweep axes must be torus combinations or single generators".into(),
        )),
    }
}

/// K(delta) = sum_i w_i e^{-i theta_i delta}, memoized over the distinct
/// frequency differences.
struct Kernel<'a> {
    nodes: &'a [(f64, f64)],
    memo: HashMap<i64, Complex64>,
}

impl<'a> Kernel<'a> {
    fn new(nodes: &'a [(f64, f64)]) -> Self {
        Kernel { nodes, memo: HashMap::new() }
    }

    fn eval(&mut self, delta: f64) -> Complex64 {
        let key = (delta * 1048576.0).round() as i64;
        *self.memo.entry(key).or_insert_with(|| {
            self.nodes
                .iter()
                .map(|&(t, w)| Complex64::from_polar(w, -t * delta))
                .sum()
        })
    }
}

/// sum_i w_i U(x_i) M U(x_i)^dag over the product rule, computed one axis at
/// a time: per axis, M <- V [(V^dag M V) .* K] V^dag with
/// K_ab = sum w e^{-i theta (lambda_a - lambda_b)}.
pub fn sweep_conj(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
    m0: &CMat,
    use_fiber: bool,
) -> Result<CMat> {
    let mut m = m0.clone();
    for axis in rule.active_axes(use_fiber).iter().rev() {
        let frame = axis_frame(cw, rep, axis)?;
        let mut ker = Kernel::new(&axis.nodes);
        match frame {
            AxisFrame::Diagonal(vals) => {
                for a in 0..rep.dim {
                    for b in 0..rep.dim {
                        let k = ker.eval(vals[a] - vals[b]);
                        m[(a, b)] *= k;
                    }
                }
            }
            AxisFrame::Frame(vals, vecs) => {
                let mut t = vecs.adjoint() * &m * vecs;
                for a in 0..rep.dim {
                    for b in 0..rep.dim {
                        let k = ker.eval(vals[a] - vals[b]);
                        t[(a, b)] *= k;
                    }
                }
                m = vecs * t * vecs.adjoint();
            }
        }
    }
    Ok(m)
}

/// sum_i w_i U(x_i) M (no conjugation), same sweep organization.
pub fn sweep_left(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
    m0: &CMat,
    use_fiber: bool,
) -> Result<CMat> {
    let mut m = m0.clone();
    for axis in rule.active_axes(use_fiber).iter().rev() {
        let frame = axis_frame(cw, rep, axis)?;
        let mut ker = Kernel::new(&axis.nodes);
        match frame {
            AxisFrame::Diagonal(vals) => {
                for a in 0..rep.dim {
                    let k = ker.eval(vals[a]);
                    for b in 0..rep.dim {
                        m[(a, b)] *= k;
                    }
                }
            }
            AxisFrame::Frame(vals, vecs) => {
                let mut t = vecs.adjoint() * &m;
                for a in 0..rep.dim {
                    let k = ker.eval(vals[a]);
                    for b in 0..rep.dim {
                        t[(a, b)] *= k;
                    }
                }
                m = vecs * t;
            }
        }
    }
    Ok(m)
}

/// Orthogonality self-test of a rule against an irrep:
/// sum w U (psi1 psi2^dag) U^dag must equal <psi2,psi1>/d * I and
/// sum w U must vanish (orthogonality against the trivial irrep). Returns
/// the larger defect, or a quadrature error when it exceeds `tol`.
pub fn self_test(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    rule: &QuadratureRule,
    psi1: &crate::linalg::CVec,
    psi2: &crate::linalg::CVec,
    tol: f64,
) -> Result<f64> {
    let d = rep.dim;
    let m0 = psi1 * psi2.adjoint();
    let swept = sweep_conj(cw, rep, rule, &m0, true)?;
    let target = CMat::identity(d, d) * (psi2.dotc(psi1) / d as f64);
    let d1 = linalg::max_abs_diff(&swept, &target);
    let mean_u = sweep_left(cw, rep, rule, &CMat::identity(d, d), true)?;
    let d2 = linalg::max_abs(&mean_u);
    let defect = d1.max(d2);
    if defect > tol {
        return Err(Error::Quadrature(format!(
            "orthogonality self-test defect {defect:.3e} exceeds {tol:.1e}; \
             increase the grid orders (scheme {})",
            rule.scheme
        )));
    }
    Ok(defect)
}
