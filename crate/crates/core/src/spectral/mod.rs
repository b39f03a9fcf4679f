//! Signless Laplacian spectra.
//!
//! `q1(G)` is computed by power iteration on `Q(G) = D(G) + A(G)`, which is
//! nonnegative and positive semidefinite, so the iteration from a positive
//! start vector converges to the Perron root. Convergence is certified by
//! the Rayleigh residual; when the iteration cap is hit the dense cyclic
//! Jacobi solver takes over.

mod poly;
mod quotient;
mod threshold;

pub use poly::{largest_real_root, real_roots, Polynomial};
pub use quotient::{is_equitable, quotient_matrix, Partition, QuotientMatrix};
pub use threshold::{
    closed_form_r, closed_form_r_complex, edge_threshold, q1_threshold, r_cubic, r_l, r_of_n,
};

use crate::error::{input, Error, Result};
use crate::graph::Graph;

/// Internal eigenvalue tolerance.
pub const EIG_TOL: f64 = 1e-10;
/// Power iteration cap before falling back to Jacobi.
pub const POWER_ITER_CAP: usize = 100_000;

/// Dense real symmetric matrix with nonnegative entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Validates symmetry and nonnegativity.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return input("matrix rows must all have length equal to the row count");
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_vec(order, data)
    }

    pub fn from_vec(order: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != order * order {
            return input("data length must be order^2");
        }
        for i in 0..order {
            for j in 0..order {
                let x = data[i * order + j];
                if !x.is_finite() || x < 0.0 {
                    return input(format!(
                        "entry ({i}, {j}) = {x} is not a finite nonnegative value"
                    ));
                }
                if x != data[j * order + i] {
                    return input(format!("matrix is not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(Self { order, data })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self::from_vec(order, data)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Simultaneous row/column relabeling: entry `(i, j)` moves to
    /// `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n {
            return input("permutation length differs from matrix order");
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return input("not a permutation");
            }
            inv[p] = i;
        }
        Self::from_fn(n, |i, j| self.get(inv[i], inv[j]))
    }

    fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Whether every entry is an integer (exact comparisons are then safe).
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.fract() == 0.0)
    }
}

/// `Q(G) = D(G) + A(G)`.
pub fn signless_laplacian(g: &Graph) -> SymMatrix {
    let n = g.order();
    let mut data = vec![0.0; n * n];
    for u in 0..n {
        data[u * n + u] = g.degree(u) as f64;
        for v in g.neighbors(u) {
            data[u * n + v] = 1.0;
        }
    }
    SymMatrix { order: n, data }
}

/// Outcome of the dominant-eigenvalue computation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    /// Unit-norm Perron vector estimate.
    pub vector: Vec<f64>,
    /// `‖Mx - λx‖∞` at the returned vector.
    pub residual: f64,
    /// Power iterations used; `None` if the Jacobi fallback produced the value.
    pub iterations: Option<usize>,
}

/// Largest eigenvalue of `m` within `tol`.
pub fn spectral_radius(m: &SymMatrix, tol: f64) -> Result<f64> {
    spectral_radius_detailed(m, tol).map(|r| r.value)
}

pub fn spectral_radius_detailed(m: &SymMatrix, tol: f64) -> Result<SpectralRadius> {
    if tol.is_nan() || tol <= 0.0 {
        return input("tolerance must be positive");
    }
    let n = m.order();
    if n == 0 {
        return input("spectral radius of an empty matrix");
    }
    match power_iteration(m, tol, POWER_ITER_CAP) {
        Some(r) => Ok(r),
        None => {
            let (values, vectors) = jacobi_eigen(m)?;
            let (k, &value) = values
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty spectrum");
            let mut vector: Vec<f64> = (0..n).map(|i| vectors[i * n + k]).collect();
            if vector.iter().sum::<f64>() < 0.0 {
                vector.iter_mut().for_each(|x| *x = -*x);
            }
            let residual = residual_inf(m, value, &vector);
            Ok(SpectralRadius {
                value,
                vector,
                residual,
                iterations: None,
            })
        }
    }
}

fn residual_inf(m: &SymMatrix, lambda: f64, x: &[f64]) -> f64 {
    let mut y = vec![0.0; x.len()];
    m.mul_vec(x, &mut y);
    y.iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max)
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

fn power_iteration(m: &SymMatrix, tol: f64, cap: usize) -> Option<SpectralRadius> {
    let n = m.order();
    // all-ones with a fixed tiny tilt, so results are reproducible bit for bit
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + 1e-6 * (i as f64 + 1.0) / n as f64)
        .collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    for it in 1..=cap {
        m.mul_vec(&x, &mut y);
        let lambda: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let residual = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0, f64::max);
        if residual <= tol * lambda.abs().max(1.0) {
            return Some(SpectralRadius {
                value: lambda,
                vector: x,
                residual,
                iterations: Some(it),
            });
        }
        if normalize(&mut y) == 0.0 {
            // x lies in the kernel; only the zero matrix gets here from a positive start
            return None;
        }
        std::mem::swap(&mut x, &mut y);
    }
    None
}

/// All eigenvalues (unsorted) and the column-major eigenvector matrix, by
/// cyclic Jacobi rotations.
pub fn jacobi_eigen(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    const SWEEPS: usize = 100;
    let n = m.order();
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    for _ in 0..SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::Numerical("Jacobi sweeps did not converge".into()))
}

/// Eigenvalues in ascending order.
pub fn eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi_eigen(m)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `q1(G)`, the signless Laplacian spectral radius, at [`EIG_TOL`].
pub fn q1(g: &Graph) -> Result<f64> {
    if g.order() == 0 {
        return input("q1 of the empty graph");
    }
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    spectral_radius(&signless_laplacian(g), EIG_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, complete, cycle, path, petersen, star};

    #[test]
    fn laplacian_entries() {
        let q = signless_laplacian(&path(3));
        let expect = SymMatrix::from_rows(&[
            vec![1.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(q, expect);
        let k2 = signless_laplacian(&complete(2));
        assert_eq!(
            k2,
            SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap()
        );
        let p = petersen();
        let q = signless_laplacian(&p);
        for (u, s) in q.row_sums().into_iter().enumerate() {
            assert_eq!(s, 2.0 * p.degree(u) as f64);
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0, 1.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![-1.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn known_spectral_radii() {
        assert!((q1(&complete(4)).unwrap() - 6.0).abs() < 1e-10);
        assert!((q1(&cycle(6).unwrap()).unwrap() - 4.0).abs() < 1e-10);
        // Q(P3) has characteristic polynomial x(x-1)(x-3)
        assert!((q1(&path(3)).unwrap() - 3.0).abs() < 1e-10);
        assert!((q1(&star(3)).unwrap() - 4.0).abs() < 1e-10);
        assert_eq!(q1(&graph::Graph::empty(3)).unwrap(), 0.0);
    }

    #[test]
    fn residual_certificate() {
        let q = signless_laplacian(&petersen());
        let r = spectral_radius_detailed(&q, 1e-10).unwrap();
        assert!(r.iterations.is_some());
        assert!(r.residual <= 1e-10 * r.value.max(1.0));
        assert!((r.value - 6.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_matches_power_iteration() {
        for g in [
            petersen(),
            graph::extremal_h(12).unwrap(),
            graph::clique_join_independent(3, 5),
        ] {
            let q = signless_laplacian(&g);
            let top = *eigenvalues(&q).unwrap().last().unwrap();
            assert!((top - spectral_radius(&q, 1e-10).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_spectrum_of_p3() {
        let ev = eigenvalues(&signless_laplacian(&path(3))).unwrap();
        for (a, b) in ev.iter().zip([0.0, 1.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn fallback_on_iteration_cap() {
        // disconnected copies of K3: eigenspace of dimension two, still converges
        let g = complete(3).disjoint_union(&complete(3));
        assert!((q1(&g).unwrap() - 4.0).abs() < 1e-10);
        let m = signless_laplacian(&petersen());
        assert!(power_iteration(&m, 1e-10, 1).is_none());
    }

    #[test]
    fn bad_tolerance() {
        assert!(spectral_radius(&signless_laplacian(&path(3)), 0.0).is_err());
    }

    #[test]
    fn permutation_invariance() {
        let g = graph::extremal_h(10).unwrap();
        let q = signless_laplacian(&g);
        let perm: Vec<usize> = (0..10).rev().collect();
        let qp = q.permute(&perm).unwrap();
        assert_eq!(qp, signless_laplacian(&g.permute(&perm).unwrap()));
        let a = spectral_radius(&q, EIG_TOL).unwrap();
        let b = spectral_radius(&qp, EIG_TOL).unwrap();
        assert!((a - b).abs() <= 1e-9);
    }
}
