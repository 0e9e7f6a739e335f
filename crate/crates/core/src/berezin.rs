//! The Berezin quantization map Q(f) = d sum_i w_i f_lambda(x_i) |v_i><v_i|
//! with v_i = U(x_i) Psi, and the strictness defects measured on it: Dirac,
//! Jordan, product, norm gap, equivariance and completeness.

use num_complex::Complex64;
use rand::Rng;

use crate::coherent;
use crate::error::{Error, Result};
use crate::group::{self, GroupElement};
use crate::irrep::Irrep;
use crate::lie::{CartanWeylBasis, CMat, RootSystem, Weight};
use crate::linalg;
use crate::orbit::{
    base_point, coadjoint_act, poisson_general, OrbitFunction, OrbitPoint, SignConvention,
};
use crate::quad::QuadratureRule;

const MAX_ENUMERATED_NODES: usize = 20_000_000;

pub struct BerezinOperator {
    pub matrix: CMat,
    pub level: u64,
    /// max-entry asymmetry of the raw operator before symmetrization.
    pub asymmetry: f64,
    pub descriptor: String,
}

impl BerezinOperator {
    pub fn op_norm(&self) -> f64 {
        linalg::op_norm(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let (vals, _) = linalg::hermitian_eigen(&self.matrix);
        vals.min()
    }
}

/// Q(f) over the rule (fiber axes dropped: lifts are right-G_lambda-
/// invariant). Constants go through the channel sweep and avoid node
/// enumeration entirely; other functions enumerate nodes.
pub fn quantize(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    rule: &QuadratureRule,
) -> Result<BerezinOperator> {
    if let OrbitFunction::Constant(c) = f {
        let m = coherent::normalization_operator(cw, rep, rule)? * Complex64::new(*c, 0.0);
        let asym = linalg::max_abs_diff(&m.adjoint(), &m);
        return Ok(BerezinOperator {
            matrix: (m.adjoint() + &m) * Complex64::new(0.5, 0.0),
            level: rep.level,
            asymmetry: asym,
            descriptor: format!("const {c}"),
        });
    }
    let n = rule.num_nodes(false);
    if n > MAX_ENUMERATED_NODES {
        return Err(Error::Quadrature(format!(
            "rule has {n} nodes; node enumeration refused (only constants are \
             quantized by the channel sweep at this size)"
        )));
    }
    let d = rep.dim;
    let psi0 = rep.hw_vector();
    let base = base_point(cw, &rep.base_weight);
    let axes = rule.active_axes(false);
    let m = axes.len();
    let mut q = CMat::zeros(d, d);
    if m == 0 {
        let fv = f.eval_node(0, &base)?;
        q.gerc(Complex64::new(fv, 0.0), &psi0, &psi0, Complex64::new(1.0, 0.0));
    } else {
        // Depth-first walk of the axis product, applying factors from the
        // last axis inward so each prefix application is shared by the whole
        // subtree instead of redone per node.
        let mut strides = vec![1usize; m];
        for a in (0..m - 1).rev() {
            strides[a] = strides[a + 1] * axes[a + 1].nodes.len();
        }
        let def_factors: Vec<Vec<CMat>> = axes
            .iter()
            .map(|ax| {
                let gen = cw.real_combination(&ax.coeffs);
                ax.nodes
                    .iter()
                    .map(|&(angle, _)| {
                        linalg::exp_anti_hermitian(&(&gen * Complex64::new(angle, 0.0)))
                    })
                    .collect()
            })
            .collect();
        let rep_factors: Vec<Vec<group::Factor>> = axes
            .iter()
            .map(|ax| {
                ax.nodes
                    .iter()
                    .map(|&(angle, _)| group::Factor {
                        coeffs: ax.coeffs.iter().map(|c| c * angle).collect(),
                    })
                    .collect()
            })
            .collect();
        #[allow(clippy::too_many_arguments)]
        fn walk(
            cw: &CartanWeylBasis,
            rep: &Irrep,
            axes: &[crate::quad::QuadAxis],
            def_f: &[Vec<CMat>],
            rep_f: &[Vec<group::Factor>],
            strides: &[usize],
            a: usize,
            psi: &crate::linalg::CVec,
            th: &CMat,
            w: f64,
            idx: usize,
            f: &OrbitFunction,
            q: &mut CMat,
        ) -> Result<()> {
            for (j, &(_, wj)) in axes[a].nodes.iter().enumerate() {
                let mut p = psi.clone();
                rep.apply_factor(cw, &rep_f[a][j], &mut p);
                let u = &def_f[a][j];
                let t2 = u * th * u.adjoint();
                let w2 = w * wj;
                let idx2 = idx + j * strides[a];
                if a == 0 {
                    // theta_i = Re tr(B_i^dag Theta), elementwise
                    let theta: Vec<f64> = cw
                        .real_basis
                        .iter()
                        .map(|b| b.iter().zip(t2.iter()).map(|(x, y)| (x.conj() * y).re).sum())
                        .collect();
                    let sigma = OrbitPoint { theta, source: None };
                    let fv = f.eval_node(idx2, &sigma)?;
                    if fv != 0.0 {
                        q.gerc(Complex64::new(w2 * fv, 0.0), &p, &p, Complex64::new(1.0, 0.0));
                    }
                } else {
                    walk(cw, rep, axes, def_f, rep_f, strides, a - 1, &p, &t2, w2, idx2, f, q)?;
                }
            }
            Ok(())
        }
        let theta_mat = cw.functional_matrix(&base.theta);
        walk(
            cw,
            rep,
            axes,
            &def_factors,
            &rep_factors,
            &strides,
            m - 1,
            &psi0,
            &theta_mat,
            1.0,
            0,
            f,
            &mut q,
        )?;
    }
    q *= Complex64::new(d as f64, 0.0);
    let asym = linalg::max_abs_diff(&q.adjoint(), &q);
    Ok(BerezinOperator {
        matrix: (q.adjoint() + &q) * Complex64::new(0.5, 0.0),
        level: rep.level,
        asymmetry: asym,
        descriptor: format!("degree-{} function", f.degree()),
    })
}

/// <q(sigma), A q(sigma)> for sigma = Co(y) lambda.
pub fn covariant_symbol(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    a: &CMat,
    sigma: &OrbitPoint,
) -> Result<Complex64> {
    let y = sigma
        .source
        .as_ref()
        .ok_or_else(|| Error::Domain("orbit point carries no group element".into()))?;
    let v = rep.apply_group(cw, y, &rep.hw_vector());
    Ok(v.dotc(&(a * &v)))
}

/// The Poisson bracket {f, g} as a quantizable OrbitFunction: analytic for
/// pairs of linear functions, otherwise tabulated at the rule's nodes via
/// the root-derivative formula.
pub fn poisson_bracket_function(
    cw: &CartanWeylBasis,
    lambda: &Weight,
    f: &OrbitFunction,
    g: &OrbitFunction,
    rule: &QuadratureRule,
    sign: SignConvention,
) -> Result<OrbitFunction> {
    if let (OrbitFunction::Linear(x), OrbitFunction::Linear(y)) = (f, g) {
        let br = cw.bracket_real(x, y);
        let scaled: Vec<f64> = br.iter().map(|c| c * sign.factor()).collect();
        return Ok(OrbitFunction::Linear(scaled));
    }
    let n = rule.num_nodes(false);
    if n > MAX_ENUMERATED_NODES {
        return Err(Error::Quadrature("rule too large to tabulate a bracket".into()));
    }
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let (x, _) = rule.node(i, false);
        values.push(poisson_general(cw, lambda, f, g, &x, sign)?);
    }
    Ok(OrbitFunction::Tabulated {
        values,
        degree: f.degree() + g.degree(),
        descriptor: "poisson bracket".into(),
    })
}

/// || (k/i) [Q(f), Q(g)] - Q({f, g}) ||.
pub fn dirac_defect(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    g: &OrbitFunction,
    rule: &QuadratureRule,
    sign: SignConvention,
) -> Result<f64> {
    let qf = quantize(cw, rep, f, rule)?.matrix;
    let qg = quantize(cw, rep, g, rule)?.matrix;
    let br = poisson_bracket_function(cw, &rep.base_weight, f, g, rule, sign)?;
    let qbr = quantize(cw, rep, &br, rule)?.matrix;
    Ok(dirac_defect_ops(&qf, &qg, &qbr, rep.level))
}

/// Dirac defect from precomputed operators.
pub fn dirac_defect_ops(qf: &CMat, qg: &CMat, qbr: &CMat, k: u64) -> f64 {
    // Correspondence normalization: (k/i) [Q(f), Q(g)] should approach
    // Q({f, g}) as k grows.
    let defect = (qf * qg - qg * qf) * Complex64::new(0.0, -(k as f64)) - qbr;
    linalg::op_norm(&defect)
}

/// || (Q(f)Q(g) + Q(g)Q(f))/2 - Q(fg) ||.
pub fn jordan_defect(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    g: &OrbitFunction,
    rule: &QuadratureRule,
) -> Result<f64> {
    let qf = quantize(cw, rep, f, rule)?.matrix;
    let qg = quantize(cw, rep, g, rule)?.matrix;
    let qfg = quantize(cw, rep, &f.product(g)?, rule)?.matrix;
    Ok(jordan_defect_ops(&qf, &qg, &qfg))
}

/// Jordan defect from precomputed operators.
pub fn jordan_defect_ops(qf: &CMat, qg: &CMat, qfg: &CMat) -> f64 {
    let defect = (qf * qg + qg * qf) * Complex64::new(0.5, 0.0) - qfg;
    linalg::op_norm(&defect)
}

/// || Q(f)Q(g) - Q(fg) ||; tends to zero as a consequence of the Dirac and
/// Jordan rates.
pub fn product_defect(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    g: &OrbitFunction,
    rule: &QuadratureRule,
) -> Result<f64> {
    let qf = quantize(cw, rep, f, rule)?.matrix;
    let qg = quantize(cw, rep, g, rule)?.matrix;
    let qfg = quantize(cw, rep, &f.product(g)?, rule)?.matrix;
    Ok(linalg::op_norm(&(&qf * &qg - qfg)))
}

/// Product defect from precomputed operators.
pub fn product_defect_ops(qf: &CMat, qg: &CMat, qfg: &CMat) -> f64 {
    linalg::op_norm(&(qf * qg - qfg))
}

/// Sup norm of f over the orbit: dense random sampling followed by local
/// refinement around the best point.
pub fn sup_norm<R: Rng + ?Sized>(
    cw: &CartanWeylBasis,
    lambda: &Weight,
    f: &OrbitFunction,
    rng: &mut R,
) -> Result<f64> {
    let base = base_point(cw, lambda);
    let mut best = f.eval(&base)?.abs();
    let mut best_x = GroupElement::identity();
    for _ in 0..10_000 {
        let x = group::haar_random(cw, rng)?;
        let v = f.eval(&coadjoint_act(cw, &x, &base))?.abs();
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let dim = cw.dim_g();
    let mut scale = 0.5;
    for _ in 0..40 {
        let mut improved = false;
        for _ in 0..60 {
            let dir: Vec<f64> = (0..dim).map(|_| scale * (rng.gen::<f64>() - 0.5)).collect();
            let x = best_x.compose(&GroupElement::from_algebra(dir));
            let v = f.eval(&coadjoint_act(cw, &x, &base))?.abs();
            if v > best {
                best = v;
                best_x = x;
                improved = true;
            }
        }
        if !improved {
            scale *= 0.5;
        }
        if scale < 1e-9 {
            break;
        }
    }
    Ok(best)
}

/// ||f||_inf - ||Q(f)||; nonnegative up to quadrature error.
pub fn norm_gap<R: Rng + ?Sized>(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    rule: &QuadratureRule,
    rng: &mut R,
) -> Result<f64> {
    let q = quantize(cw, rep, f, rule)?;
    Ok(sup_norm(cw, &rep.base_weight, f, rng)? - q.op_norm())
}

/// || Q(f o Co(x^{-1})) - U(x) Q(f) U(x)^dag ||; zero up to quadrature error
/// at every level.
pub fn equivariance_defect(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    x: &GroupElement,
    rule: &QuadratureRule,
) -> Result<f64> {
    let q = quantize(cw, rep, f, rule)?.matrix;
    equivariance_defect_ops(cw, rep, f, &q, x, rule)
}

/// Equivariance defect with Q(f) precomputed.
pub fn equivariance_defect_ops(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    f: &OrbitFunction,
    qf: &CMat,
    x: &GroupElement,
    rule: &QuadratureRule,
) -> Result<f64> {
    let rotated = rotate_function(cw, f, x)?;
    let q_rot = quantize(cw, rep, &rotated, rule)?.matrix;
    let u = rep.group_unitary(cw, x);
    let defect = q_rot - &u * qf * u.adjoint();
    Ok(linalg::op_norm(&defect))
}

/// f o Co(x^{-1}): linear coordinates transform by Ad(x).
pub fn rotate_function(
    cw: &CartanWeylBasis,
    f: &OrbitFunction,
    x: &GroupElement,
) -> Result<OrbitFunction> {
    let ad = x.adjoint_matrix(cw);
    let rot = |v: &Vec<f64>| -> Vec<f64> {
        let w = &ad * nalgebra::DVector::from_row_slice(v);
        w.iter().copied().collect()
    };
    match f {
        OrbitFunction::Constant(c) => Ok(OrbitFunction::Constant(*c)),
        OrbitFunction::Linear(v) => Ok(OrbitFunction::Linear(rot(v))),
        OrbitFunction::Product(fs) => Ok(OrbitFunction::Product(fs.iter().map(&rot).collect())),
        OrbitFunction::Sum(terms) => {
            let mut out = Vec::with_capacity(terms.len());
            for (c, g) in terms {
                out.push((*c, rotate_function(cw, g, x)?));
            }
            Ok(OrbitFunction::Sum(out))
        }
        OrbitFunction::Tabulated { .. } => {
            Err(Error::Domain("cannot rotate a tabulated function".into()))
        }
    }
}

/// Rank of span{Q(f) : f in family} inside the d^2-dimensional matrix space.
pub fn completeness_rank(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    family: &[OrbitFunction],
    rule: &QuadratureRule,
) -> Result<usize> {
    let d = rep.dim;
    let mut rows = CMat::zeros(family.len(), d * d);
    for (r, f) in family.iter().enumerate() {
        let q = quantize(cw, rep, f, rule)?.matrix;
        for (c, v) in q.iter().enumerate() {
            rows[(r, c)] = *v;
        }
    }
    // Rank via the Gram matrix: eigenvalues are squared singular values.
    let gram = &rows * rows.adjoint();
    let (vals, _) = linalg::hermitian_eigen(&gram);
    let vmax = vals.max();
    Ok(vals.iter().filter(|&&v| v > 1e-14 * vmax.max(1.0)).count())
}

/// Least-squares slope of log d_{k lambda} against log k.
pub fn dimension_growth(rs: &RootSystem, lambda: &Weight, k_list: &[u64]) -> Result<f64> {
    if k_list.len() < 3 {
        return Err(Error::Domain("dimension fit needs at least 3 levels".into()));
    }
    // d(k) = c k^p (1 + O(1/k)), so fit log d = p log k + a + b/k to strip
    // the leading finite-size bias from the exponent estimate.
    let n = k_list.len();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, 3);
    let mut y = nalgebra::DVector::<f64>::zeros(n);
    for (i, &k) in k_list.iter().enumerate() {
        let kf = k as f64;
        a[(i, 0)] = kf.ln();
        a[(i, 1)] = 1.0;
        a[(i, 2)] = 1.0 / kf;
        y[i] = (crate::lie::weyl_dimension(rs, lambda, k)? as f64).ln();
    }
    let ata = a.transpose() * &a;
    let aty = a.transpose() * y;
    let sol = ata
        .lu()
        .solve(&aty)
        .ok_or_else(|| Error::Numerical("singular dimension fit".into()))?;
    Ok(sol[0])
}
