//! Root systems, weights and the Cartan-Weyl basis for the A series.
//!
//! Everything is realized concretely inside `sl(n+1, C)` with `E_alpha` the
//! matrix units and `t_j = E_jj - E_{j+1,j+1}` the simple coroots. The trace
//! form then satisfies `(E_alpha, E_{-alpha}) = 1` and gives long roots
//! squared length 2, which fixes the structure constants `N_{alpha,beta}`
//! deterministically.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

/// Index into `RootSystem::roots` (positive roots first, then negatives).
pub type RootId = usize;

/// A weight given by its Dynkin labels (coordinates in the basis of
/// fundamental weights).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    pub dynkin_labels: Vec<f64>,
}

impl Weight {
    pub fn new(labels: &[f64]) -> Self {
        Weight { dynkin_labels: labels.to_vec() }
    }

    pub fn from_integers(labels: &[i64]) -> Self {
        Weight { dynkin_labels: labels.iter().map(|&m| m as f64).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.dynkin_labels.iter().all(|m| (m - m.round()).abs() < 1e-9)
    }

    pub fn is_dominant(&self) -> bool {
        self.dynkin_labels.iter().all(|&m| m >= -1e-12)
    }

    pub fn is_zero(&self) -> bool {
        self.dynkin_labels.iter().all(|&m| m.abs() < 1e-12)
    }

    pub fn integer_labels(&self) -> Result<Vec<i64>> {
        if !self.is_integral() {
            return Err(Error::Domain(format!(
                "weight {:?} is not integral",
                self.dynkin_labels
            )));
        }
        Ok(self.dynkin_labels.iter().map(|m| m.round() as i64).collect())
    }

    pub fn scaled(&self, k: u64) -> Weight {
        Weight { dynkin_labels: self.dynkin_labels.iter().map(|m| m * k as f64).collect() }
    }
}

/// Returns (integral, dominant) for a weight.
pub fn is_integral_dominant(w: &Weight) -> (bool, bool) {
    (w.is_integral(), w.is_dominant())
}

/// Root system of type A_n realized in epsilon coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    pub series_label: char,
    pub rank: usize,
    /// All roots as ordered pairs (i, j), i != j: alpha = e_i - e_j.
    /// The first `num_positive` entries are the positive roots (i < j).
    pub roots: Vec<(usize, usize)>,
    pub num_positive: usize,
    /// Indices (into `roots`) of the simple roots alpha_1..alpha_rank.
    pub simple: Vec<RootId>,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Half-sum of positive roots (Dynkin labels are all 1 for A_n).
    pub delta: Weight,
}

impl RootSystem {
    /// Dimension of the defining representation, n + 1.
    pub fn defining_dim(&self) -> usize {
        self.rank + 1
    }

    /// Dimension of the compact group SU(n+1).
    pub fn group_dim(&self) -> usize {
        let n = self.defining_dim();
        n * n - 1
    }

    pub fn positive_roots(&self) -> &[(usize, usize)] {
        &self.roots[..self.num_positive]
    }

    /// Index of -alpha.
    pub fn negate(&self, id: RootId) -> RootId {
        let (i, j) = self.roots[id];
        self.root_index(j, i).expect("negated root exists")
    }

    pub fn root_index(&self, i: usize, j: usize) -> Option<RootId> {
        self.roots.iter().position(|&r| r == (i, j))
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive
    }

    /// Epsilon coordinates (in R^{n+1}, sum zero) of a weight.
    pub fn eps_coords(&self, w: &Weight) -> Vec<f64> {
        let n = self.defining_dim();
        let mut c = vec![0.0; n];
        for (l, &m) in w.dynkin_labels.iter().enumerate() {
            // fundamental weight omega_{l+1} = sum_{i<=l} e_i - ((l+1)/n) * sum e_i
            let l1 = l + 1;
            for (i, ci) in c.iter_mut().enumerate() {
                let base = if i < l1 { 1.0 } else { 0.0 };
                *ci += m * (base - l1 as f64 / n as f64);
            }
        }
        c
    }

    /// Invariant inner product on t*, normalized so long roots have (a,a)=2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> f64 {
        let ca = self.eps_coords(a);
        let cb = self.eps_coords(b);
        ca.iter().zip(&cb).map(|(x, y)| x * y).sum()
    }

    /// (w, alpha) for a root alpha.
    pub fn pair_root(&self, w: &Weight, alpha: RootId) -> f64 {
        let c = self.eps_coords(w);
        let (i, j) = self.roots[alpha];
        c[i] - c[j]
    }

    /// Dynkin labels of a root (its pairing with the simple coroots).
    pub fn root_labels(&self, alpha: RootId) -> Vec<i64> {
        let (i, j) = self.roots[alpha];
        (0..self.rank)
            .map(|l| {
                let mut v = 0i64;
                if i == l { v += 1 }
                if i == l + 1 { v -= 1 }
                if j == l { v -= 1 }
                if j == l + 1 { v += 1 }
                v
            })
            .collect()
    }

    /// The root as a Weight (coordinates in the fundamental-weight basis).
    pub fn root_weight(&self, alpha: RootId) -> Weight {
        Weight::from_integers(&self.root_labels(alpha))
    }

    /// Value of the root on the simple coroot t_l, i.e. alpha(t_l).
    pub fn root_on_coroot(&self, alpha: RootId, l: usize) -> i64 {
        self.root_labels(alpha)[l]
    }

    /// Expansion of the coroot t_alpha in the simple coroots t_l.
    pub fn coroot_coords(&self, alpha: RootId) -> Vec<i64> {
        let (i, j) = self.roots[alpha];
        let mut c = vec![0i64; self.rank];
        if i < j {
            for x in c.iter_mut().take(j).skip(i) {
                *x = 1;
            }
        } else {
            for x in c.iter_mut().take(i).skip(j) {
                *x = -1;
            }
        }
        c
    }
}

/// Builds the A_n root system. Only the A series is supported.
pub fn build_root_system(series: char, rank: usize) -> Result<RootSystem> {
    if series != 'A' {
        return Err(Error::Config(format!("unsupported series {series:?}; only \"A\" is supported")));
    }
    if rank == 0 {
        return Err(Error::Config("rank must be positive".into()));
    }
    let n = rank + 1;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                roots.push((i, j));
            }
        }
    }
    let num_positive = roots.len();
    for p in 0..num_positive {
        let (i, j) = roots[p];
        roots.push((j, i));
    }
    let simple: Vec<RootId> = (0..rank)
        .map(|l| roots.iter().position(|&r| r == (l, l + 1)).unwrap())
        .collect();
    let mut cartan = vec![vec![0i64; rank]; rank];
    for (a, row) in cartan.iter_mut().enumerate() {
        for (b, x) in row.iter_mut().enumerate() {
            *x = if a == b {
                2
            } else if a.abs_diff(b) == 1 {
                -1
            } else {
                0
            };
        }
    }
    Ok(RootSystem {
        series_label: series,
        rank,
        roots,
        num_positive,
        simple,
        cartan_matrix: cartan,
        delta: Weight::from_integers(&vec![1i64; rank]),
    })
}

/// Weyl dimension formula d_{k lambda} = prod (k lambda + delta, alpha) / (delta, alpha).
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight, k: u64) -> Result<u64> {
    if !lambda.is_dominant() || !lambda.is_integral() {
        return Err(Error::Domain("weyl_dimension requires a dominant integral weight".into()));
    }
    let scaled = lambda.scaled(k);
    let mut num = 1.0f64;
    let mut den = 1.0f64;
    for p in 0..rs.num_positive {
        let mut shifted = scaled.clone();
        for (l, x) in shifted.dynkin_labels.iter_mut().enumerate() {
            *x += rs.delta.dynkin_labels[l];
        }
        num *= rs.pair_root(&shifted, p);
        den *= rs.pair_root(&rs.delta, p);
    }
    Ok((num / den).round() as u64)
}

/// Orbit dimension per dim(O) = dim(g) - dim(t) - 2 |{alpha > 0 : (lambda, alpha) = 0}|,
/// together with the support set of positive roots not orthogonal to lambda.
pub fn orbit_dimension(rs: &RootSystem, lambda: &Weight) -> (usize, Vec<RootId>) {
    let support: Vec<RootId> = (0..rs.num_positive)
        .filter(|&p| rs.pair_root(lambda, p).abs() > 1e-12)
        .collect();
    let zeros = rs.num_positive - support.len();
    let dim = rs.group_dim() - rs.rank - 2 * zeros;
    (dim, support)
}

/// Full Weyl group orbit of a weight, generated by simple reflections.
pub fn weyl_group_orbit(rs: &RootSystem, w: &Weight) -> Vec<Weight> {
    let key = |labels: &[f64]| -> Vec<i64> {
        labels.iter().map(|x| (x * 1048576.0).round() as i64).collect()
    };
    let mut seen = HashMap::new();
    let mut queue = vec![w.clone()];
    seen.insert(key(&w.dynkin_labels), w.clone());
    while let Some(cur) = queue.pop() {
        for i in 0..rs.rank {
            // s_i(mu) = mu - mu_i * alpha_i
            let ai = rs.root_labels(rs.simple[i]);
            let mi = cur.dynkin_labels[i];
            let refl: Vec<f64> = cur
                .dynkin_labels
                .iter()
                .enumerate()
                .map(|(l, &m)| m - mi * ai[l] as f64)
                .collect();
            let k = key(&refl);
            if !seen.contains_key(&k) {
                let nw = Weight { dynkin_labels: refl };
                seen.insert(k, nw.clone());
                queue.push(nw);
            }
        }
    }
    seen.into_values().collect()
}

fn unit_matrix(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

/// Labels for elements of the fixed real basis of the compact algebra su(n+1):
/// `H_j = -i t_j` for the Cartan part, then `X_p = E_p - E_{-p}` and
/// `Y_p = i(E_p + E_{-p})` for each positive root p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    Torus(usize),
    RootX(RootId),
    RootY(RootId),
}

/// The Cartan-Weyl basis data in its defining realization, plus the fixed
/// real basis of su(n+1) used for group elements and orbit points.
pub struct CartanWeylBasis {
    pub root_system: RootSystem,
    /// Hermitian simple coroots t_j in the defining representation.
    pub coroot_mats: Vec<CMat>,
    /// Matrix units E_alpha for all roots, defining representation.
    pub e_mats: Vec<CMat>,
    /// Structure constants N_{alpha,beta} with [E_a, E_b] = N E_{a+b}.
    pub structure_constants: HashMap<(RootId, RootId), f64>,
    /// Real basis of su(n+1) (anti-Hermitian defining matrices).
    pub real_basis: Vec<CMat>,
    pub real_basis_labels: Vec<BasisLabel>,
    gram_inv: DMatrix<f64>,
}

impl CartanWeylBasis {
    pub fn dim_g(&self) -> usize {
        self.real_basis.len()
    }

    /// N_{alpha,beta}, or 0 when alpha + beta is not a root.
    pub fn n_constant(&self, a: RootId, b: RootId) -> f64 {
        *self.structure_constants.get(&(a, b)).unwrap_or(&0.0)
    }

    /// Expands an anti-Hermitian defining matrix in the real basis.
    pub fn expand_real(&self, m: &CMat) -> Vec<f64> {
        let rhs: Vec<f64> = self
            .real_basis
            .iter()
            .map(|b| (b.adjoint() * m).trace().re)
            .collect();
        let v = nalgebra::DVector::from_vec(rhs);
        let c = &self.gram_inv * v;
        c.iter().copied().collect()
    }

    /// The defining matrix dual to a functional given by its values on the
    /// real basis: returns M with Re tr(B_i^dag M) = theta_i for all i.
    pub fn functional_matrix(&self, theta: &[f64]) -> CMat {
        let v = nalgebra::DVector::from_row_slice(theta);
        let c = &self.gram_inv * v;
        self.real_combination(c.as_slice())
    }

    /// The defining matrix of a real-basis coordinate vector.
    pub fn real_combination(&self, coeffs: &[f64]) -> CMat {
        let n = self.root_system.defining_dim();
        let mut m = CMat::zeros(n, n);
        for (c, b) in coeffs.iter().zip(&self.real_basis) {
            m += b * Complex64::new(*c, 0.0);
        }
        m
    }

    /// Bracket of two real-basis coordinate vectors, again in coordinates.
    pub fn bracket_real(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mx = self.real_combination(x);
        let my = self.real_combination(y);
        let br = &mx * &my - &my * &mx;
        self.expand_real(&br)
    }
}

/// Builds the Cartan-Weyl basis for a root system.
pub fn build_cartan_weyl(rs: &RootSystem) -> CartanWeylBasis {
    let n = rs.defining_dim();
    let coroot_mats: Vec<CMat> = (0..rs.rank)
        .map(|l| unit_matrix(n, l, l) - unit_matrix(n, l + 1, l + 1))
        .collect();
    let e_mats: Vec<CMat> = rs.roots.iter().map(|&(i, j)| unit_matrix(n, i, j)).collect();

    // N_{alpha,beta} from [E_ij, E_kl] = d_jk E_il - d_li E_kj.
    let mut nc = HashMap::new();
    for (a, &(i, j)) in rs.roots.iter().enumerate() {
        for (b, &(k, l)) in rs.roots.iter().enumerate() {
            if a == b || rs.negate(a) == b {
                continue;
            }
            if j == k && i != l {
                nc.insert((a, b), 1.0);
            } else if l == i && k != j {
                nc.insert((a, b), -1.0);
            }
        }
    }

    let im = Complex64::new(0.0, 1.0);
    let mut real_basis = Vec::new();
    let mut labels = Vec::new();
    for (l, t) in coroot_mats.iter().enumerate() {
        real_basis.push(t * (-im));
        labels.push(BasisLabel::Torus(l));
    }
    for p in 0..rs.num_positive {
        let e = &e_mats[p];
        let f = &e_mats[rs.negate(p)];
        real_basis.push(e - f);
        labels.push(BasisLabel::RootX(p));
        real_basis.push((e + f) * im);
        labels.push(BasisLabel::RootY(p));
    }

    let dim = real_basis.len();
    let mut gram = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram[(i, j)] = (real_basis[i].adjoint() * &real_basis[j]).trace().re;
        }
    }
    let gram_inv = gram.try_inverse().expect("real basis Gram matrix is invertible");

    CartanWeylBasis {
        root_system: rs.clone(),
        coroot_mats,
        e_mats,
        structure_constants: nc,
        real_basis,
        real_basis_labels: labels,
        gram_inv,
    }
}
