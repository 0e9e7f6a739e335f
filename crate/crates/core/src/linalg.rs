//! Small dense linear-algebra helpers on complex matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigendecomposition of a Hermitian matrix: returns (eigenvalues, eigenvectors)
/// with `m = V diag(vals) V^dag`.
pub fn hermitian_eigen(m: &CMat) -> (DVector<f64>, CMat) {
    let se = m.clone().symmetric_eigen();
    (se.eigenvalues, se.eigenvectors)
}

/// exp(a) for anti-Hermitian a, computed by diagonalizing the Hermitian i*a.
pub fn exp_anti_hermitian(a: &CMat) -> CMat {
    let h = a * Complex64::new(0.0, 1.0);
    let (vals, v) = hermitian_eigen(&h);
    let phases: Vec<Complex64> = vals.iter().map(|&l| Complex64::from_polar(1.0, -l)).collect();
    scaled_columns(&v, &phases) * v.adjoint()
}

/// V * diag(s).
pub fn scaled_columns(v: &CMat, s: &[Complex64]) -> CMat {
    let mut out = v.clone();
    for (j, &sj) in s.iter().enumerate() {
        let mut col = out.column_mut(j);
        col *= sj;
    }
    out
}

/// Operator norm (largest singular value) via a Hermitian eigensolve of a^dag a.
pub fn op_norm(a: &CMat) -> f64 {
    if a.nrows() == 0 {
        return 0.0;
    }
    let g = a.adjoint() * a;
    let (vals, _) = hermitian_eigen(&g);
    vals.iter().fold(0.0f64, |m, &x| m.max(x)).max(0.0).sqrt()
}

/// max_ij |a_ij - b_ij|.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// max_ij |a_ij|.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// ||u^dag u - I||_max.
pub fn unitary_residual(u: &CMat) -> f64 {
    let g = u.adjoint() * u;
    let id = CMat::identity(u.nrows(), u.ncols());
    max_abs_diff(&g, &id)
}

/// Frobenius norm.
pub fn fro_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_cmat(n: usize, rng: &mut ChaCha8Rng) -> CMat {
        CMat::from_fn(n, n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_cmat(6, &mut rng);
        let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
        let (vals, vecs) = hermitian_eigen(&h);
        let mut back = CMat::zeros(6, 6);
        for i in 0..6 {
            let v = vecs.column(i);
            back += (v * v.adjoint()) * Complex64::new(vals[i], 0.0);
        }
        assert!(max_abs_diff(&back, &h) < 1e-12);
        assert!(unitary_residual(&vecs) < 1e-12);
    }

    #[test]
    fn exp_anti_hermitian_is_unitary_and_matches_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_cmat(5, &mut rng);
        let x = (&a - a.adjoint()) * Complex64::new(0.3, 0.0);
        let u = exp_anti_hermitian(&x);
        assert!(unitary_residual(&u) < 1e-12);
        // power series oracle
        let mut series = CMat::identity(5, 5);
        let mut term = CMat::identity(5, 5);
        for j in 1..40 {
            term = &term * &x / Complex64::new(j as f64, 0.0);
            series += &term;
        }
        assert!(max_abs_diff(&u, &series) < 1e-12);
    }

    #[test]
    fn op_norm_matches_known_cases() {
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(-7.0, 0.0),
            Complex64::new(0.5, 0.0),
        ]));
        assert!((op_norm(&d) - 7.0).abs() < 1e-12);
        // rank-1: ||x y^*|| = |x| |y|
        let x = nalgebra::DVector::from_vec(vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)]);
        let y = nalgebra::DVector::from_vec(vec![Complex64::new(0.0, 2.0), Complex64::new(1.0, 0.0)]);
        let m = &x * y.adjoint();
        assert!((op_norm(&m) - x.norm() * y.norm()).abs() < 1e-12);
        // unitary invariance
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_cmat(4, &mut rng);
        let h = (&a - a.adjoint()) * Complex64::new(0.5, 0.0);
        let u = exp_anti_hermitian(&h);
        let b = random_cmat(4, &mut rng);
        assert!((op_norm(&(&u * &b)) - op_norm(&b)).abs() < 1e-10);
    }

    #[test]
    fn norm_helpers() {
        let a = CMat::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -4.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert!((max_abs(&a) - 4.0).abs() < 1e-15);
        assert!((fro_norm(&a) - (1.0f64 + 16.0 + 4.0).sqrt()).abs() < 1e-15);
        let b = a.clone() * Complex64::new(1.0, 0.0);
        assert_eq!(max_abs_diff(&a, &b), 0.0);
    }
}
