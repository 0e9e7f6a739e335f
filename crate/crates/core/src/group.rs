//! Group elements of SU(n+1) as ordered products of one-parameter factors.
//!
//! A `GroupElement` is a chain of factors exp(X_1) exp(X_2) ... with each X_m
//! an element of su(n+1) in real-basis coordinates. This keeps a group element
//! representation-independent: the same chain can be evaluated in the defining
//! representation or pushed through any unitary irrep.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lie::{BasisLabel, CartanWeylBasis, CMat};
use crate::linalg;

/// One factor exp(X) with X = sum_i coeffs[i] * B_i in the real basis.
#[derive(Debug, Clone)]
pub struct Factor {
    pub coeffs: Vec<f64>,
}

impl Factor {
    /// If the factor lies along a single basis direction, returns
    /// (basis index, angle). Lets representations use cached
    /// eigendecompositions of the generator images.
    pub fn single_generator(&self) -> Option<(usize, f64)> {
        let mut hit = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                if hit.is_some() {
                    return None;
                }
                hit = Some((i, c));
            }
        }
        hit
    }
}

#[derive(Debug, Clone, Default)]
pub struct GroupElement {
    pub factors: Vec<Factor>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { factors: Vec::new() }
    }

    /// exp(angle * B) for a single labelled basis generator.
    pub fn single(cw: &CartanWeylBasis, label: BasisLabel, angle: f64) -> Self {
        let idx = cw
            .real_basis_labels
            .iter()
            .position(|&l| l == label)
            .expect("label belongs to the basis");
        let mut coeffs = vec![0.0; cw.dim_g()];
        coeffs[idx] = angle;
        GroupElement { factors: vec![Factor { coeffs }] }
    }

    /// exp(X) for X given in real-basis coordinates.
    pub fn from_algebra(coeffs: Vec<f64>) -> Self {
        GroupElement { factors: vec![Factor { coeffs }] }
    }

    /// x * y as concatenated chains.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        GroupElement { factors }
    }

    /// Chain for x^{-1} (reversed factors, negated generators).
    pub fn inverse(&self) -> GroupElement {
        let mut factors: Vec<Factor> = self
            .factors
            .iter()
            .rev()
            .map(|f| Factor { coeffs: f.coeffs.iter().map(|c| -c).collect() })
            .collect();
        factors.shrink_to_fit();
        GroupElement { factors }
    }

    /// The element evaluated in the defining representation.
    pub fn defining_matrix(&self, cw: &CartanWeylBasis) -> CMat {
        let n = cw.root_system.defining_dim();
        let mut m = CMat::identity(n, n);
        for f in &self.factors {
            let x = cw.real_combination(&f.coeffs);
            m *= linalg::exp_anti_hermitian(&x);
        }
        m
    }

    /// Ad(x) as a real matrix in the real basis: column i holds the
    /// coordinates of x B_i x^{-1}.
    pub fn adjoint_matrix(&self, cw: &CartanWeylBasis) -> DMatrix<f64> {
        let u = self.defining_matrix(cw);
        let ui = u.adjoint();
        let dim = cw.dim_g();
        let mut ad = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            let conj = &u * &cw.real_basis[i] * &ui;
            let col = cw.expand_real(&conj);
            for (r, &v) in col.iter().enumerate() {
                ad[(r, i)] = v;
            }
        }
        ad
    }
}

/// zyz Euler angles for an SU(2) matrix [[a, b], [-conj(b), conj(a)]]:
/// D(phi) R(theta) D(gamma) with D(phi) = diag(e^{-i phi}, e^{i phi}) and
/// R(theta) = [[cos, sin], [-sin, cos]].
fn su2_zyz(a: Complex64, b: Complex64) -> (f64, f64, f64) {
    let (ra, rb) = (a.norm(), b.norm());
    let theta = rb.atan2(ra);
    if rb < 1e-14 {
        // a = e^{-i(phi+gamma)}; put it all into phi.
        (-a.arg(), 0.0, 0.0)
    } else if ra < 1e-14 {
        // b = e^{i(-phi+gamma)}.
        (-b.arg(), theta, 0.0)
    } else {
        let phi = -(a.arg() + b.arg()) / 2.0;
        let gamma = (b.arg() - a.arg()) / 2.0;
        (phi, theta, gamma)
    }
}

/// Chain D(phi) R(theta) D(gamma) in the SU(2) block spanned by the simple
/// root alpha_{l+1} (rows l, l+1 of the defining representation).
fn su2_block_chain(cw: &CartanWeylBasis, l: usize, phi: f64, theta: f64, gamma: f64) -> GroupElement {
    let p = cw.root_system.simple[l];
    let mut g = GroupElement::identity();
    if phi != 0.0 {
        g = g.compose(&GroupElement::single(cw, BasisLabel::Torus(l), phi));
    }
    if theta != 0.0 {
        g = g.compose(&GroupElement::single(cw, BasisLabel::RootX(p), theta));
    }
    if gamma != 0.0 {
        g = g.compose(&GroupElement::single(cw, BasisLabel::Torus(l), gamma));
    }
    g
}

/// Factors an explicit special unitary matrix (2x2 or 3x3) into a chain of
/// one-parameter subgroups along the fixed basis generators.
pub fn factorize_su_matrix(cw: &CartanWeylBasis, m: &CMat) -> Result<GroupElement> {
    let n = cw.root_system.defining_dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Domain(format!(
            "matrix is {}x{}, expected {}x{}",
            m.nrows(),
            m.ncols(),
            n,
            n
        )));
    }
    if linalg::unitary_residual(m) > 1e-10 {
        return Err(Error::Domain("matrix is not unitary".into()));
    }
    let det = m.determinant();
    if (det - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::Domain(format!("matrix has determinant {det}, expected 1")));
    }
    match n {
        2 => {
            let (phi, theta, gamma) = su2_zyz(m[(0, 0)], m[(0, 1)]);
            Ok(su2_block_chain(cw, 0, phi, theta, gamma))
        }
        3 => {
            // Reduce the first column to e_1 by embedded SU(2) rotations,
            // then the residue lives in the lower 2x2 block.
            let mut cur = m.clone();
            // rows (2, 3): send (z2, z3) -> (r, 0).
            let (z2, z3) = (cur[(1, 0)], cur[(2, 0)]);
            let r = (z2.norm_sqr() + z3.norm_sqr()).sqrt();
            let mut chain_23 = GroupElement::identity();
            if r > 1e-14 {
                let s = CMat::from_row_slice(2, 2, &[z2.conj() / r, z3.conj() / r, -z3 / r, z2 / r]);
                let (phi, theta, gamma) = su2_zyz(s[(0, 0)], s[(0, 1)]);
                let emb = su2_block_chain(cw, 1, phi, theta, gamma);
                cur = emb.defining_matrix(cw) * &cur;
                chain_23 = emb;
            }
            // rows (1, 2): send (z1, r) -> (1, 0).
            let (z1, z2) = (cur[(0, 0)], cur[(1, 0)]);
            let s = CMat::from_row_slice(2, 2, &[z1.conj(), z2.conj(), -z2, z1]);
            let (phi, theta, gamma) = su2_zyz(s[(0, 0)], s[(0, 1)]);
            let chain_12 = su2_block_chain(cw, 0, phi, theta, gamma);
            cur = chain_12.defining_matrix(cw) * &cur;
            // Residue: diag(1, v) with v in SU(2), embedded in rows (2, 3).
            let (phi, theta, gamma) = su2_zyz(cur[(1, 1)], cur[(1, 2)]);
            let tail = su2_block_chain(cw, 1, phi, theta, gamma);
            // chain_12 chain_23 m = tail, so m = chain_23^{-1} chain_12^{-1} tail
            Ok(chain_23.inverse().compose(&chain_12.inverse()).compose(&tail))
        }
        _ => Err(Error::Domain(format!("factorization implemented for n <= 3, got n = {n}"))),
    }
}

/// Haar-random element of SU(n+1): complex Ginibre + QR with the standard
/// phase fix, determinant normalized into SU, then factorized into a chain.
pub fn haar_random<R: Rng + ?Sized>(cw: &CartanWeylBasis, rng: &mut R) -> Result<GroupElement> {
    let n = cw.root_system.defining_dim();
    let g = CMat::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let rdiag: Vec<Complex64> = (0..n).map(|i| qr.r()[(i, i)]).collect();
    let mut q = qr.q();
    for (j, rj) in rdiag.iter().enumerate() {
        let ph = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= ph;
    }
    // rescale by a global phase to land in SU(n); a central n-th root of
    // unity ambiguity is absorbed by Haar invariance.
    let det = q.determinant();
    let corr = Complex64::from_polar(1.0, -det.arg() / n as f64);
    q *= corr;
    factorize_su_matrix(cw, &q)
}
