//! The classical side: points of the coadjoint orbit O_lambda, the coadjoint
//! action, the momentum map, Poisson brackets and function spaces on the
//! orbit (represented through their right-G_lambda-invariant lifts to G).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::irrep::Irrep;
use crate::lie::{BasisLabel, CartanWeylBasis, RootId, Weight};
use crate::linalg::CVec;

/// A functional theta in g*, stored by its values theta(B_i) on the fixed
/// real basis, optionally remembering a group element with theta = Co(x) lambda.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub theta: Vec<f64>,
    pub source: Option<GroupElement>,
}

impl OrbitPoint {
    /// Invariant-polynomial signature (tr Theta^2, Im tr Theta^3) of the dual
    /// matrix; constant along the orbit.
    pub fn invariants(&self, cw: &CartanWeylBasis) -> (f64, f64) {
        let m = cw.functional_matrix(&self.theta);
        let m2 = &m * &m;
        let tr2 = m2.trace();
        let tr3 = (&m2 * &m).trace();
        (tr2.re, tr3.im)
    }

    pub fn norm(&self) -> f64 {
        self.theta.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Pairing theta(X) with X in real-basis coordinates.
    pub fn pair(&self, x: &[f64]) -> f64 {
        self.theta.iter().zip(x).map(|(t, c)| t * c).sum()
    }

    pub fn distance(&self, other: &OrbitPoint) -> f64 {
        self.theta
            .iter()
            .zip(&other.theta)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// theta(lambda): the Dynkin labels on the torus directions, zero on the
/// root directions.
pub fn base_point(cw: &CartanWeylBasis, lambda: &Weight) -> OrbitPoint {
    let mut theta = vec![0.0; cw.dim_g()];
    for (i, &label) in cw.real_basis_labels.iter().enumerate() {
        if let BasisLabel::Torus(j) = label {
            theta[i] = lambda.dynkin_labels[j];
        }
    }
    OrbitPoint { theta, source: Some(GroupElement::identity()) }
}

/// (Co(x) theta)(Y) = theta(Ad(x^{-1}) Y).
pub fn coadjoint_act(cw: &CartanWeylBasis, x: &GroupElement, theta: &OrbitPoint) -> OrbitPoint {
    let ad_inv = x.inverse().adjoint_matrix(cw);
    let v = nalgebra::DVector::from_row_slice(&theta.theta);
    let new_theta: Vec<f64> = (ad_inv.transpose() * v).iter().copied().collect();
    let source = theta.source.as_ref().map(|s| x.compose(s));
    OrbitPoint { theta: new_theta, source }
}

/// J(psi)/k: theta(X) = i <psi, dU(X) psi> / k on each basis direction.
pub fn momentum_map(cw: &CartanWeylBasis, rep: &Irrep, psi: &CVec) -> Result<OrbitPoint> {
    if (psi.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::Domain(format!("momentum map needs a unit vector, norm {}", psi.norm())));
    }
    let k = rep.level as f64;
    let theta: Vec<f64> = cw
        .real_basis_labels
        .iter()
        .map(|&label| {
            let act = rep.du_label(label) * psi;
            (Complex64::i() * psi.dotc(&act)).re / k
        })
        .collect();
    Ok(OrbitPoint { theta, source: None })
}

/// Sign convention for the Poisson bracket on the orbit. `Theorem` is
/// +theta([X,Y]) on linear functions, `LiePoisson` the textbook
/// -theta([X,Y]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    Theorem,
    LiePoisson,
}

impl SignConvention {
    pub fn factor(self) -> f64 {
        match self {
            SignConvention::Theorem => 1.0,
            SignConvention::LiePoisson => -1.0,
        }
    }
}

/// {f_X, f_Y}(theta) = sign * theta([X, Y]).
pub fn poisson_linear(
    cw: &CartanWeylBasis,
    x: &[f64],
    y: &[f64],
    theta: &OrbitPoint,
    sign: SignConvention,
) -> f64 {
    let br = cw.bracket_real(x, y);
    sign.factor() * theta.pair(&br)
}

/// A function on the orbit, represented so that both the pointwise value
/// f(theta) and the lift f_lambda(x) = f(Co(x) lambda) are computable.
#[derive(Debug, Clone)]
pub enum OrbitFunction {
    Constant(f64),
    /// f_X(theta) = theta(X), X in real-basis coordinates.
    Linear(Vec<f64>),
    /// Product of linear factors.
    Product(Vec<Vec<f64>>),
    /// Real linear combination of other orbit functions.
    Sum(Vec<(f64, OrbitFunction)>),
    /// Values tabulated per quadrature-node index ("group-coefficient"
    /// kind); only evaluable through node indices.
    Tabulated { values: Vec<f64>, degree: u32, descriptor: String },
}

impl OrbitFunction {
    pub fn eval(&self, theta: &OrbitPoint) -> Result<f64> {
        match self {
            OrbitFunction::Constant(c) => Ok(*c),
            OrbitFunction::Linear(x) => Ok(theta.pair(x)),
            OrbitFunction::Product(fs) => Ok(fs.iter().map(|x| theta.pair(x)).product()),
            OrbitFunction::Sum(terms) => {
                let mut v = 0.0;
                for (c, f) in terms {
                    v += c * f.eval(theta)?;
                }
                Ok(v)
            }
            OrbitFunction::Tabulated { descriptor, .. } => Err(Error::Domain(format!(
                "tabulated function {descriptor:?} is only defined at quadrature nodes"
            ))),
        }
    }

    /// Value at a quadrature node: the tabulated entry if present, else the
    /// pointwise value at the node's orbit point.
    pub fn eval_node(&self, idx: usize, theta: &OrbitPoint) -> Result<f64> {
        match self {
            OrbitFunction::Tabulated { values, .. } => values
                .get(idx)
                .copied()
                .ok_or_else(|| Error::Domain(format!("node index {idx} outside tabulation"))),
            _ => self.eval(theta),
        }
    }

    /// Polynomial degree in the linear coordinates (for quadrature sizing).
    pub fn degree(&self) -> u32 {
        match self {
            OrbitFunction::Constant(_) => 0,
            OrbitFunction::Linear(_) => 1,
            OrbitFunction::Product(fs) => fs.len() as u32,
            OrbitFunction::Sum(terms) => terms.iter().map(|(_, f)| f.degree()).max().unwrap_or(0),
            OrbitFunction::Tabulated { degree, .. } => *degree,
        }
    }

    /// Pointwise product (used for the Jordan identity's f*g).
    pub fn product(&self, other: &OrbitFunction) -> Result<OrbitFunction> {
        let factors = |f: &OrbitFunction| -> Result<(f64, Vec<Vec<f64>>)> {
            match f {
                OrbitFunction::Constant(c) => Ok((*c, vec![])),
                OrbitFunction::Linear(x) => Ok((1.0, vec![x.clone()])),
                OrbitFunction::Product(fs) => Ok((1.0, fs.clone())),
                _ => Err(Error::Domain("product only supported for monomial kinds".into())),
            }
        };
        let (ca, mut fa) = factors(self)?;
        let (cb, fb) = factors(other)?;
        fa.extend(fb);
        if fa.is_empty() {
            return Ok(OrbitFunction::Constant(ca * cb));
        }
        let f = OrbitFunction::Product(fa);
        if (ca * cb - 1.0).abs() < 1e-15 {
            Ok(f)
        } else {
            Ok(OrbitFunction::Sum(vec![(ca * cb, f)]))
        }
    }

    /// The lift f_lambda(x) = f(Co(x) lambda).
    pub fn lift(&self, cw: &CartanWeylBasis, lambda: &Weight, x: &GroupElement) -> Result<f64> {
        let theta = coadjoint_act(cw, x, &base_point(cw, lambda));
        self.eval(&theta)
    }
}

/// Left-invariant directional derivative (xi^L_X f)(x) = d/dt f(x Exp(tX))|_0
/// by central differences with one Richardson extrapolation (steps h, h/2).
fn left_derivative<F>(f: &F, x: &GroupElement, dir: &[f64], h: f64) -> f64
where
    F: Fn(&GroupElement) -> f64,
{
    let shift = |t: f64| -> f64 {
        let step = GroupElement::from_algebra(dir.iter().map(|c| c * t).collect());
        f(&x.compose(&step))
    };
    let d1 = (shift(h) - shift(-h)) / (2.0 * h);
    let d2 = (shift(h / 2.0) - shift(-h / 2.0)) / h;
    (4.0 * d2 - d1) / 3.0
}

/// Complexified derivatives along E_alpha for a positive root p:
/// xi_{E_p} = (xi_X - i xi_Y)/2, xi_{E_{-p}} = -(xi_X + i xi_Y)/2.
fn complex_root_derivatives<F>(
    cw: &CartanWeylBasis,
    f: &F,
    x: &GroupElement,
    p: RootId,
    h: f64,
) -> (Complex64, Complex64)
where
    F: Fn(&GroupElement) -> f64,
{
    let dim = cw.dim_g();
    let idx = |label: BasisLabel| cw.real_basis_labels.iter().position(|&l| l == label).unwrap();
    let mut dir_x = vec![0.0; dim];
    dir_x[idx(BasisLabel::RootX(p))] = 1.0;
    let mut dir_y = vec![0.0; dim];
    dir_y[idx(BasisLabel::RootY(p))] = 1.0;
    let dx = left_derivative(f, x, &dir_x, h);
    let dy = left_derivative(f, x, &dir_y, h);
    let xi_pos = Complex64::new(dx, -dy) * 0.5;
    let xi_neg = Complex64::new(-dx, -dy) * 0.5;
    (xi_pos, xi_neg)
}

/// The Poisson bracket of two lifts at the point Co(x) lambda, evaluated by
/// the root-derivative formula
/// {f,g} = -i sum_{alpha in Delta_lambda} (lambda,alpha)^{-1}
///          (xi^L_alpha f)(xi^L_{-alpha} g),
/// with the sum over both signs of each supporting root, then multiplied by
/// the chosen sign convention (the formula as written is the LiePoisson one).
pub fn poisson_general(
    cw: &CartanWeylBasis,
    lambda: &Weight,
    f: &OrbitFunction,
    g: &OrbitFunction,
    x: &GroupElement,
    sign: SignConvention,
) -> Result<f64> {
    let rs = &cw.root_system;
    let h = 1e-5;
    let fl = |y: &GroupElement| f.lift(cw, lambda, y).expect("analytic lift");
    let gl = |y: &GroupElement| g.lift(cw, lambda, y).expect("analytic lift");
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..rs.num_positive {
        let pairing = rs.pair_root(lambda, p);
        if pairing.abs() < 1e-12 {
            continue;
        }
        let (f_pos, f_neg) = complex_root_derivatives(cw, &fl, x, p, h);
        let (g_pos, g_neg) = complex_root_derivatives(cw, &gl, x, p, h);
        // alpha = +p term and alpha = -p term.
        acc += (f_pos * g_neg - f_neg * g_pos) / pairing;
    }
    let val = -(Complex64::i() * acc);
    // On linear pairs the formula evaluates to +theta([X, Y]), i.e. the
    // Theorem convention; the LiePoisson convention is its negative.
    Ok(sign.factor() * val.re)
}

/// Measures the ratio of the pulled-back Fubini-Study form to the
/// Kirillov-Kostant value theta([X,Y]) at sigma = Co(y) lambda, using
/// phase-aligned finite differences of the coherent lift.
pub fn fs_pullback_ratio(
    cw: &CartanWeylBasis,
    rep: &Irrep,
    sigma: &OrbitPoint,
    x_dir: &[f64],
    y_dir: &[f64],
) -> Result<f64> {
    let y = sigma
        .source
        .as_ref()
        .ok_or_else(|| Error::Domain("orbit point carries no group element".into()))?;
    // The curves below are t -> Co(y exp(tX)) lambda = Co(y) (flow of X at
    // the base point), so by Co-invariance of the KKS form the reference
    // symplectic area is lambda([X, Y]), evaluated at the base point.
    let kks = base_point(cw, &rep.base_weight).pair(&cw.bracket_real(x_dir, y_dir));
    if kks.abs() < 1e-10 {
        return Err(Error::Domain("degenerate tangent pair: lambda([X,Y]) ~ 0".into()));
    }
    let psi0 = rep.apply_group(cw, y, &rep.hw_vector());
    // Phase-aligned lift along a tangent direction, finite differences with
    // one Richardson pass.
    let lift = |dir: &[f64], t: f64| -> CVec {
        let step = GroupElement::from_algebra(dir.iter().map(|c| c * t).collect());
        let v = rep.apply_group(cw, &y.compose(&step), &rep.hw_vector());
        let ov = psi0.dotc(&v);
        let phase = if ov.norm() > 0.0 { ov.conj() / ov.norm() } else { Complex64::new(1.0, 0.0) };
        v * phase
    };
    let h = 1e-4;
    let tangent = |dir: &[f64]| -> CVec {
        let d1 = (lift(dir, h) - lift(dir, -h)) / Complex64::new(2.0 * h, 0.0);
        let d2 = (lift(dir, h / 2.0) - lift(dir, -h / 2.0)) / Complex64::new(h, 0.0);
        (d2 * Complex64::new(4.0, 0.0) - d1) / Complex64::new(3.0, 0.0)
    };
    let tx = tangent(x_dir);
    let ty = tangent(y_dir);
    // Projective tangent vectors: remove the component along psi0.
    let project = |v: &CVec| -> CVec { v - &psi0 * psi0.dotc(v) };
    let (px, py) = (project(&tx), project(&ty));
    let omega_fs = 2.0 * px.dotc(&py).im;
    Ok(omega_fs / kks)
}
