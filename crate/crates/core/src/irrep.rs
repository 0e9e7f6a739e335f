//! Explicit highest-weight irreps of su(n+1).
//!
//! The module builds the irrep with highest weight k*lambda level by level:
//! starting from the highest-weight vector, simple lowering operators are
//! applied, Gram matrices of the resulting vectors are computed through the
//! commutation relations (a Shapovalov-form recursion), null vectors are
//! discarded and the rest orthonormalized. In the resulting basis every
//! matrix entry of pi(E_alpha) is real and pi(E_{-alpha}) = pi(E_alpha)^T.

use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Factor, GroupElement};
use crate::lie::{
    build_cartan_weyl, build_root_system, weyl_dimension, BasisLabel, CartanWeylBasis, CMat,
    RootId, RootSystem, Weight,
};
use crate::linalg::{self, CVec};

pub type RMat = DMatrix<f64>;

struct GenCache {
    vals: DVector<f64>,
    vecs: CMat,
}

/// A concrete unitary irrep with highest weight k*lambda. Basis vector 0 is
/// the highest-weight vector; all pi(E_alpha) matrices are real.
pub struct Irrep {
    pub root_system: RootSystem,
    /// lambda (the orbit label; the actual highest weight is k*lambda).
    pub base_weight: Weight,
    pub level: u64,
    pub highest_weight: Weight,
    pub dim: usize,
    /// Dynkin labels (values on the simple coroots) of each basis vector.
    pub weights: Vec<Vec<i64>>,
    /// pi(E_p) for every positive root p; pi(E_{-p}) = pi(E_p)^T.
    e_pos: Vec<RMat>,
    gen_caches: Vec<OnceLock<GenCache>>,
}

/// Residual report from `verify_irrep`.
#[derive(Debug, Clone, Serialize)]
pub struct IrrepReport {
    pub dim: usize,
    pub expected_dim: u64,
    pub dimension_match: bool,
    /// max relative residual of the Cartan-Weyl commutation relations.
    pub commutator_residual: f64,
    /// max anti-Hermiticity residual of dU over the real basis.
    pub anti_hermiticity_residual: f64,
    /// residual of dU(H_j) Psi = -i (k lambda)(H_j) Psi.
    pub hw_cartan_residual: f64,
    /// max over positive alpha of ||dU(E_alpha) Psi||.
    pub hw_raising_residual: f64,
    /// max over all alpha of |<Psi, dU(E_alpha) Psi>|.
    pub hw_expectation_residual: f64,
}

impl IrrepReport {
    pub fn max_residual(&self) -> f64 {
        self.commutator_residual
            .max(self.anti_hermiticity_residual)
            .max(self.hw_cartan_residual)
            .max(self.hw_raising_residual)
            .max(self.hw_expectation_residual)
    }
}

/// Column-sparse linear combination: pairs (basis index, coefficient).
type Combo = Vec<(usize, f64)>;

fn combo_add(dst: &mut HashMap<usize, f64>, src: &Combo, scale: f64) {
    for &(i, c) in src {
        *dst.entry(i).or_insert(0.0) += scale * c;
    }
}

/// Builds the irrep with highest weight k*lambda.
pub fn build_irrep(cw: &CartanWeylBasis, lambda: &Weight, k: u64) -> Result<Irrep> {
    let rs = &cw.root_system;
    if !lambda.is_dominant() || !lambda.is_integral() {
        return Err(Error::Domain(format!(
            "highest weight must be dominant integral, got {:?}",
            lambda.dynkin_labels
        )));
    }
    if k == 0 {
        return Err(Error::Domain("level k must be >= 1".into()));
    }
    let r = rs.rank;
    let hw = lambda.scaled(k);
    let hw_labels = hw.integer_labels()?;
    let expected = weyl_dimension(rs, lambda, k)?;

    // Per-vector data, indexed globally.
    let mut weights: Vec<Vec<i64>> = vec![hw_labels.clone()];
    // e_cols[i][v] = E_i v as a combination of earlier vectors;
    // f_cols[i][v] = F_i v as a combination of later vectors.
    let mut e_cols: Vec<Vec<Combo>> = vec![vec![Vec::new()]; r];
    let mut f_cols: Vec<Vec<Combo>> = vec![vec![Vec::new()]; r];

    let simple_labels: Vec<Vec<i64>> = (0..r).map(|i| rs.root_labels(rs.simple[i])).collect();

    let mut prev_level: Vec<usize> = vec![0];
    while !prev_level.is_empty() {
        // Candidates F_i u grouped by target weight.
        let mut groups: HashMap<Vec<i64>, Vec<(usize, usize)>> = HashMap::new();
        for &u in &prev_level {
            for i in 0..r {
                let mu: Vec<i64> = weights[u]
                    .iter()
                    .zip(&simple_labels[i])
                    .map(|(&w, &a)| w - a)
                    .collect();
                groups.entry(mu).or_default().push((i, u));
            }
        }
        let mut new_level = Vec::new();
        let mut group_keys: Vec<Vec<i64>> = groups.keys().cloned().collect();
        group_keys.sort();
        for mu in group_keys {
            let cands = &groups[&mu];
            let m = cands.len();
            // Gram[a][b] = <F_i u, F_j w> = <u, F_j (E_i w)> + d_ij wt(w)_i d_uw.
            let mut gram = RMat::zeros(m, m);
            // E_i F_j w expanded over the previous level, cached per candidate.
            let mut lowered: Vec<Vec<HashMap<usize, f64>>> = Vec::with_capacity(m);
            for &(j, w) in cands {
                let mut per_i: Vec<HashMap<usize, f64>> = Vec::with_capacity(r);
                for (i, e_col) in e_cols.iter().enumerate() {
                    let mut acc: HashMap<usize, f64> = HashMap::new();
                    // F_j (E_i w): E_i w lives two levels up, F_j brings it back.
                    for &(v, a) in &e_col[w] {
                        combo_add(&mut acc, &f_cols[j][v], a);
                    }
                    if i == j {
                        *acc.entry(w).or_insert(0.0) += weights[w][i] as f64;
                    }
                    per_i.push(acc);
                }
                lowered.push(per_i);
            }
            for (a, &(i, u)) in cands.iter().enumerate() {
                for (b, _) in cands.iter().enumerate() {
                    gram[(a, b)] = *lowered[b][i].get(&u).unwrap_or(&0.0);
                }
            }
            // Symmetrize against roundoff and diagonalize.
            let gram = (gram.transpose() + &gram) * 0.5;
            let se = gram.symmetric_eigen();
            let max_eig = se.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x));
            if se.eigenvalues.iter().any(|&x| x < -1e-8 * max_eig.max(1.0)) {
                return Err(Error::Numerical(format!(
                    "Gram matrix at weight {mu:?} is not PSD (min eigenvalue {:.3e})",
                    se.eigenvalues.min()
                )));
            }
            let keep: Vec<usize> = (0..m)
                .filter(|&s| se.eigenvalues[s] > 1e-8 * max_eig.max(1.0))
                .collect();
            if keep.is_empty() {
                continue;
            }
            // Register the surviving orthonormal vectors.
            let base = weights.len();
            for _ in &keep {
                weights.push(mu.clone());
                for i in 0..r {
                    e_cols[i].push(Vec::new());
                    f_cols[i].push(Vec::new());
                }
            }
            for (s_new, &s) in keep.iter().enumerate() {
                let g = base + s_new;
                new_level.push(g);
                let d_s = se.eigenvalues[s];
                let sq = d_s.sqrt();
                // F_i u = sum_s sqrt(d_s) P[c,s] n_s.
                for (c, &(i, u)) in cands.iter().enumerate() {
                    let coef = sq * se.eigenvectors[(c, s)];
                    if coef.abs() > 1e-13 {
                        f_cols[i][u].push((g, coef));
                    }
                }
                // E_i n_s = d_s^{-1/2} sum_c P[c,s] (E_i F_{j(c)} u(c)).
                for i in 0..r {
                    let mut acc: HashMap<usize, f64> = HashMap::new();
                    for (c, _) in cands.iter().enumerate() {
                        let p = se.eigenvectors[(c, s)];
                        if p.abs() < 1e-15 {
                            continue;
                        }
                        for (&v, &a) in &lowered[c][i] {
                            *acc.entry(v).or_insert(0.0) += p * a;
                        }
                    }
                    let col: Combo = acc
                        .into_iter()
                        .filter(|&(_, c)| c.abs() > 1e-13 * sq)
                        .map(|(v, c)| (v, c / sq))
                        .collect();
                    e_cols[i][g] = col;
                }
            }
        }
        prev_level = new_level;
    }

    let dim = weights.len();
    if dim as u64 != expected {
        return Err(Error::Numerical(format!(
            "constructed dimension {dim} does not match Weyl dimension {expected}"
        )));
    }

    // Dense pi(E) for the simple roots, then the rest by bracketing down
    // to simple factors (ordered by root height).
    let num_pos = rs.num_positive;
    let mut e_pos: Vec<Option<RMat>> = vec![None; num_pos];
    for (i, &p) in rs.simple.iter().enumerate() {
        let mut m = RMat::zeros(dim, dim);
        for (v, col) in e_cols[i].iter().enumerate() {
            for &(u, c) in col {
                m[(u, v)] = c;
            }
        }
        e_pos[p] = Some(m);
    }
    let mut order: Vec<RootId> = (0..num_pos).collect();
    order.sort_by_key(|&p| {
        let (i, j) = rs.roots[p];
        j - i
    });
    for p in order {
        if e_pos[p].is_some() {
            continue;
        }
        let (i, j) = rs.roots[p];
        // (i,j) = (i,i+1) + (i+1,j)
        let a = rs.root_index(i, i + 1).unwrap();
        let b = rs.root_index(i + 1, j).unwrap();
        let n = cw.n_constant(a, b);
        debug_assert!(n != 0.0);
        let (ma, mb) = (e_pos[a].as_ref().unwrap(), e_pos[b].as_ref().unwrap());
        e_pos[p] = Some((ma * mb - mb * ma) / n);
    }
    let e_pos: Vec<RMat> = e_pos.into_iter().map(|m| m.unwrap()).collect();

    let dim_g = cw.dim_g();
    Ok(Irrep {
        root_system: rs.clone(),
        base_weight: lambda.clone(),
        level: k,
        highest_weight: hw,
        dim,
        weights,
        e_pos,
        gen_caches: (0..dim_g).map(|_| OnceLock::new()).collect(),
    })
}

impl Irrep {
    /// The highest-weight vector (basis vector 0).
    pub fn hw_vector(&self) -> CVec {
        let mut v = CVec::zeros(self.dim);
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    /// pi(E_alpha) as a real matrix (transpose for negative roots).
    pub fn pi_e_real(&self, alpha: RootId) -> RMat {
        if self.root_system.is_positive(alpha) {
            self.e_pos[alpha].clone()
        } else {
            self.e_pos[self.root_system.negate(alpha)].transpose()
        }
    }

    /// pi(E_alpha) as a complex matrix.
    pub fn pi_e(&self, alpha: RootId) -> CMat {
        self.pi_e_real(alpha).map(|x| Complex64::new(x, 0.0))
    }

    /// Weight of basis vector v on the simple coroot t_j.
    fn wt(&self, v: usize, j: usize) -> f64 {
        self.weights[v][j] as f64
    }

    /// dU of the real-basis generator with the given label.
    pub fn du_label(&self, label: BasisLabel) -> CMat {
        let im = Complex64::new(0.0, 1.0);
        match label {
            BasisLabel::Torus(j) => {
                let mut m = CMat::zeros(self.dim, self.dim);
                for v in 0..self.dim {
                    m[(v, v)] = -im * self.wt(v, j);
                }
                m
            }
            BasisLabel::RootX(p) => {
                let e = &self.e_pos[p];
                (e - e.transpose()).map(|x| Complex64::new(x, 0.0))
            }
            BasisLabel::RootY(p) => {
                let e = &self.e_pos[p];
                (e + e.transpose()).map(|x| Complex64::new(0.0, x))
            }
        }
    }

    /// dU(X) for X in real-basis coordinates.
    pub fn du(&self, cw: &CartanWeylBasis, coeffs: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (c, &label) in coeffs.iter().zip(&cw.real_basis_labels) {
            if *c != 0.0 {
                m += self.du_label(label) * Complex64::new(*c, 0.0);
            }
        }
        m
    }

    fn gen_cache(&self, cw: &CartanWeylBasis, idx: usize) -> &GenCache {
        self.gen_caches[idx].get_or_init(|| {
            let h = self.du_label(cw.real_basis_labels[idx]) * Complex64::new(0.0, 1.0);
            let (vals, vecs) = linalg::hermitian_eigen(&h);
            GenCache { vals, vecs }
        })
    }

    /// Cached eigendecomposition of i*dU(B_idx) for a real-basis generator:
    /// returns (eigenvalues, eigenvectors).
    pub fn generator_eigen(&self, cw: &CartanWeylBasis, idx: usize) -> (&DVector<f64>, &CMat) {
        let c = self.gen_cache(cw, idx);
        (&c.vals, &c.vecs)
    }

    fn factor_is_torus_only(&self, cw: &CartanWeylBasis, f: &Factor) -> bool {
        f.coeffs
            .iter()
            .zip(&cw.real_basis_labels)
            .all(|(&c, &l)| c == 0.0 || matches!(l, BasisLabel::Torus(_)))
    }

    /// Applies exp(dU(X_f)) for one factor to a state vector in place.
    pub fn apply_factor(&self, cw: &CartanWeylBasis, f: &Factor, v: &mut CVec) {
        if self.factor_is_torus_only(cw, f) {
            // exp(sum_j c_j dU(H_j)) is a diagonal phase in the weight basis.
            let torus: Vec<(usize, f64)> = f
                .coeffs
                .iter()
                .zip(&cw.real_basis_labels)
                .filter_map(|(&c, &l)| match l {
                    BasisLabel::Torus(j) if c != 0.0 => Some((j, c)),
                    _ => None,
                })
                .collect();
            for b in 0..self.dim {
                let phase: f64 = torus.iter().map(|&(j, c)| c * self.wt(b, j)).sum();
                v[b] *= Complex64::from_polar(1.0, -phase);
            }
        } else if let Some((idx, angle)) = f.single_generator() {
            let cache = self.gen_cache(cw, idx);
            let mut y = cache.vecs.adjoint() * &*v;
            for (b, &l) in cache.vals.iter().enumerate() {
                y[b] *= Complex64::from_polar(1.0, -angle * l);
            }
            *v = &cache.vecs * y;
        } else {
            let u = linalg::exp_anti_hermitian(&self.du(cw, &f.coeffs));
            *v = u * &*v;
        }
    }

    /// U(x) psi for a chained group element (factors applied right to left).
    pub fn apply_group(&self, cw: &CartanWeylBasis, x: &GroupElement, psi: &CVec) -> CVec {
        let mut v = psi.clone();
        for f in x.factors.iter().rev() {
            self.apply_factor(cw, f, &mut v);
        }
        v
    }

    /// The full unitary U(x).
    pub fn group_unitary(&self, cw: &CartanWeylBasis, x: &GroupElement) -> CMat {
        let mut u = CMat::identity(self.dim, self.dim);
        for f in &x.factors {
            u *= self.factor_matrix(cw, f);
        }
        u
    }

    fn factor_matrix(&self, cw: &CartanWeylBasis, f: &Factor) -> CMat {
        if self.factor_is_torus_only(cw, f) {
            let torus: Vec<(usize, f64)> = f
                .coeffs
                .iter()
                .zip(&cw.real_basis_labels)
                .filter_map(|(&c, &l)| match l {
                    BasisLabel::Torus(j) if c != 0.0 => Some((j, c)),
                    _ => None,
                })
                .collect();
            let mut m = CMat::zeros(self.dim, self.dim);
            for b in 0..self.dim {
                let phase: f64 = torus.iter().map(|&(j, c)| c * self.wt(b, j)).sum();
                m[(b, b)] = Complex64::from_polar(1.0, -phase);
            }
            m
        } else if let Some((idx, angle)) = f.single_generator() {
            let cache = self.gen_cache(cw, idx);
            let phases: Vec<Complex64> =
                cache.vals.iter().map(|&l| Complex64::from_polar(1.0, -angle * l)).collect();
            linalg::scaled_columns(&cache.vecs, &phases) * cache.vecs.adjoint()
        } else {
            linalg::exp_anti_hermitian(&self.du(cw, &f.coeffs))
        }
    }

    /// Number of irreducible components: the dimension of the joint kernel
    /// of the simple raising operators (= multiplicity of highest-weight
    /// vectors). By complete reducibility the commutant is trivial iff this
    /// is 1.
    pub fn irreducibility_check(&self) -> bool {
        let e_simple: Vec<RMat> =
            self.root_system.simple.iter().map(|&p| self.e_pos[p].clone()).collect();
        num_hw_vectors(&e_simple) == 1
    }
}

/// Dimension of the joint kernel of the given raising operators, computed
/// from the spectrum of sum E^T E.
pub fn num_hw_vectors(e_simple: &[RMat]) -> usize {
    let d = e_simple[0].nrows();
    let mut k = RMat::zeros(d, d);
    for e in e_simple {
        k += e.transpose() * e;
    }
    let k = k.map(|x| Complex64::new(x, 0.0));
    let (vals, _) = linalg::hermitian_eigen(&k);
    let scale = vals.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    vals.iter().filter(|&&x| x.abs() < 1e-9 * scale).count()
}

/// Checks the Cartan-Weyl commutation relations and highest-weight-vector
/// conditions on the constructed matrices.
pub fn verify_irrep(cw: &CartanWeylBasis, rep: &Irrep) -> IrrepReport {
    let rs = &rep.root_system;
    let d = rep.dim;
    let num_roots = rs.roots.len();

    // Materialize pi(E) for all roots once.
    let pis: Vec<RMat> = (0..num_roots).map(|a| rep.pi_e_real(a)).collect();
    let scale = pis
        .iter()
        .map(|m| m.iter().fold(0.0f64, |mx, &x| mx.max(x.abs())))
        .fold(1.0f64, f64::max);

    let mut comm_res = 0.0f64;
    // [pi(t_l), pi(E_a)] = a(t_l) pi(E_a): diagonal conjugation, O(d^2).
    for l in 0..rs.rank {
        for (a, pa) in pis.iter().enumerate() {
            let alabels = if rs.is_positive(a) {
                rs.root_labels(a)
            } else {
                rs.root_labels(rs.negate(a)).iter().map(|x| -x).collect()
            };
            let av = alabels[l] as f64;
            for u in 0..d {
                for v in 0..d {
                    let x = pa[(u, v)];
                    if x != 0.0 {
                        let lhs = (rep.wt(u, l) - rep.wt(v, l)) * x;
                        comm_res = comm_res.max((lhs - av * x).abs());
                    }
                }
            }
        }
    }
    // [pi(E_a), pi(E_b)] for all unordered root pairs.
    for a in 0..num_roots {
        for b in (a + 1)..num_roots {
            let comm = &pis[a] * &pis[b] - &pis[b] * &pis[a];
            let target: RMat = if rs.negate(a) == b {
                // [E_alpha, E_{-alpha}] = t_alpha
                let pos = if rs.is_positive(a) { a } else { b };
                let sgn = if rs.is_positive(a) { 1.0 } else { -1.0 };
                let coords = rs.coroot_coords(pos);
                let mut m = RMat::zeros(d, d);
                for u in 0..d {
                    let val: f64 =
                        coords.iter().enumerate().map(|(l, &c)| c as f64 * rep.wt(u, l)).sum();
                    m[(u, u)] = sgn * val;
                }
                m
            } else {
                let (i, j) = rs.roots[a];
                let (p, q) = rs.roots[b];
                let sum = if j == p && i != q {
                    rs.root_index(i, q)
                } else if q == i && p != j {
                    rs.root_index(p, j)
                } else {
                    None
                };
                match sum {
                    Some(c) => &pis[c] * cw.n_constant(a, b),
                    None => RMat::zeros(d, d),
                }
            };
            let res = (&comm - &target).iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            comm_res = comm_res.max(res / scale.max(1.0));
        }
    }

    // Anti-Hermiticity of dU over the real basis (exact by construction for
    // X/Y pairs since pi(E_{-p}) = pi(E_p)^T; recomputed as a check).
    let mut ah_res = 0.0f64;
    for &label in &cw.real_basis_labels {
        let m = rep.du_label(label);
        ah_res = ah_res.max(linalg::max_abs(&(m.adjoint() + &m)));
    }

    // Highest-weight conditions.
    let psi = rep.hw_vector();
    let hw_labels = rep.highest_weight.integer_labels().expect("integral");
    let mut hw1 = 0.0f64;
    for (j, &m) in hw_labels.iter().enumerate() {
        let act = rep.du_label(BasisLabel::Torus(j)) * &psi;
        let target = &psi * Complex64::new(0.0, -(m as f64));
        hw1 = hw1.max((act - target).iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    let mut hw2 = 0.0f64;
    let mut hw3 = 0.0f64;
    for a in 0..num_roots {
        let col = pis[a].column(0);
        let nrm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rs.is_positive(a) {
            hw2 = hw2.max(nrm);
        }
        hw3 = hw3.max(pis[a][(0, 0)].abs());
    }

    let expected = weyl_dimension(rs, &rep.base_weight, rep.level).unwrap_or(0);
    IrrepReport {
        dim: d,
        expected_dim: expected,
        dimension_match: d as u64 == expected,
        commutator_residual: comm_res,
        anti_hermiticity_residual: ah_res,
        hw_cartan_residual: hw1,
        hw_raising_residual: hw2,
        hw_expectation_residual: hw3,
    }
}

/// Serializable matrix bundle for caching irreps across CLI runs.
#[derive(Serialize, Deserialize)]
pub struct IrrepBundle {
    pub series: char,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub level: u64,
    pub dim: usize,
    pub weights: Vec<Vec<i64>>,
    /// Row-major real entries of pi(E_p), one per positive root.
    pub e_pos: Vec<Vec<f64>>,
}

impl Irrep {
    pub fn to_bundle(&self) -> Result<IrrepBundle> {
        Ok(IrrepBundle {
            series: self.root_system.series_label,
            rank: self.root_system.rank,
            lambda: self.base_weight.integer_labels()?,
            level: self.level,
            dim: self.dim,
            weights: self.weights.clone(),
            e_pos: self
                .e_pos
                .iter()
                .map(|m| m.transpose().iter().copied().collect())
                .collect(),
        })
    }

    pub fn from_bundle(b: &IrrepBundle) -> Result<Irrep> {
        let rs = build_root_system(b.series, b.rank)?;
        let cw = build_cartan_weyl(&rs);
        if b.weights.len() != b.dim || b.e_pos.len() != rs.num_positive {
            return Err(Error::Config("inconsistent irrep bundle".into()));
        }
        let e_pos: Vec<RMat> = b
            .e_pos
            .iter()
            .map(|v| RMat::from_row_slice(b.dim, b.dim, v))
            .collect();
        let lambda = Weight::from_integers(&b.lambda);
        Ok(Irrep {
            root_system: rs,
            highest_weight: lambda.scaled(b.level),
            base_weight: lambda,
            level: b.level,
            dim: b.dim,
            weights: b.weights.clone(),
            e_pos,
            gen_caches: (0..cw.dim_g()).map(|_| OnceLock::new()).collect(),
        })
    }
}
