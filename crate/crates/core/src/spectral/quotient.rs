//! Partitions of a matrix index set and the induced quotient matrices.
//!
//! For a partition `{P1, …, Pm}` of a symmetric `B`, `c_ij` is the average
//! row sum of the block `B[Pi, Pj]`. Since `|Pi| c_ij` and `|Pj| c_ji` are
//! both the total of that block, `D C D⁻¹` with `D = diag(√|Pi|)` is
//! symmetric; the spectral radius is computed on that form.

use super::poly::{largest_real_root, Polynomial};
use super::{spectral_radius, SymMatrix, EIG_TOL};
use crate::error::{input, Error, Result};

const EQUITABLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Classes must be nonempty, disjoint and cover `0..order`.
    pub fn new(order: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; order];
        for (ci, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return input(format!("class {ci} is empty"));
            }
            for &i in class {
                if i >= order {
                    return input(format!("index {i} outside 0..{order}"));
                }
                if owner[i] != usize::MAX {
                    return input(format!("index {i} appears in more than one class"));
                }
                owner[i] = ci;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return input(format!("index {i} is not covered"));
        }
        Ok(Self { order, classes })
    }

    /// Consecutive runs of the given sizes: `[0..s0), [s0..s0+s1), …`.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let classes = sizes
            .iter()
            .map(|&s| {
                let c: Vec<usize> = (start..start + s).collect();
                start += s;
                c
            })
            .collect();
        Self::new(start, classes)
    }

    pub fn singletons(order: usize) -> Self {
        Self {
            order,
            classes: (0..order).map(|i| vec![i]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Quotient of a symmetric nonnegative matrix, together with the class sizes
/// that make it symmetrizable.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    order: usize,
    entries: Vec<f64>,
    class_sizes: Vec<usize>,
}

impl QuotientMatrix {
    /// Hand-built quotient. Requires `|Pi| c_ij = |Pj| c_ji`, which every
    /// quotient of a symmetric matrix satisfies.
    pub fn new(rows: Vec<Vec<f64>>, class_sizes: Vec<usize>) -> Result<Self> {
        let m = rows.len();
        if class_sizes.len() != m || rows.iter().any(|r| r.len() != m) {
            return input("quotient rows and class sizes must all have length m");
        }
        if class_sizes.contains(&0) {
            return input("class sizes must be positive");
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        for i in 0..m {
            for j in 0..m {
                let c = entries[i * m + j];
                if !c.is_finite() || c < 0.0 {
                    return input(format!(
                        "entry ({i}, {j}) = {c} is not a finite nonnegative value"
                    ));
                }
                let lhs = class_sizes[i] as f64 * c;
                let rhs = class_sizes[j] as f64 * entries[j * m + i];
                if (lhs - rhs).abs() > 1e-9 * lhs.abs().max(rhs.abs()).max(1.0) {
                    return input(format!(
                        "block totals disagree at ({i}, {j}): {lhs} vs {rhs}"
                    ));
                }
            }
        }
        Ok(Self {
            order: m,
            entries,
            class_sizes,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.order)
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// `D C D⁻¹` with `D = diag(√|Pi|)`; same spectrum as `C`.
    pub fn symmetrized(&self) -> SymMatrix {
        let m = self.order;
        let w: Vec<f64> = self
            .class_sizes
            .iter()
            .map(|&s| (s as f64).sqrt())
            .collect();
        let half = |i: usize, j: usize| self.get(i, j) * w[i] / w[j];
        SymMatrix::from_fn(m, |i, j| 0.5 * (half(i, j) + half(j, i)))
            .expect("weighted-symmetric nonnegative quotient symmetrizes cleanly")
    }

    /// Largest eigenvalue, via the symmetrized form.
    pub fn spectral_radius(&self) -> Result<f64> {
        spectral_radius(&self.symmetrized(), EIG_TOL)
    }

    /// `det(xI - C)` by Gaussian elimination with partial pivoting.
    pub fn char_poly_at(&self, x: f64) -> f64 {
        let m = self.order;
        let mut a: Vec<f64> = (0..m * m)
            .map(|k| {
                let (i, j) = (k / m, k % m);
                (if i == j { x } else { 0.0 }) - self.entries[k]
            })
            .collect();
        let mut det = 1.0;
        for col in 0..m {
            let piv = (col..m)
                .max_by(|&r, &s| a[r * m + col].abs().total_cmp(&a[s * m + col].abs()))
                .expect("nonempty range");
            if a[piv * m + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..m {
                    a.swap(piv * m + k, col * m + k);
                }
                det = -det;
            }
            let p = a[col * m + col];
            det *= p;
            for r in col + 1..m {
                let f = a[r * m + col] / p;
                if f != 0.0 {
                    for k in col..m {
                        a[r * m + k] -= f * a[col * m + k];
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(xI - C)` by Faddeev–LeVerrier.
    /// Exact in floating point for small integer matrices.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        let m = self.order;
        let mut coeffs = vec![1.0];
        // running product N_k = C (N_{k-1} + c_{k-1} I), starting from N_0 = 0
        let mut mk = vec![0.0; m * m];
        for k in 1..=m {
            let prev_c = *coeffs.last().expect("seeded");
            let mut shifted = mk.clone();
            for i in 0..m {
                shifted[i * m + i] += prev_c;
            }
            let mut next = vec![0.0; m * m];
            for i in 0..m {
                for l in 0..m {
                    let a = self.entries[i * m + l];
                    if a != 0.0 {
                        for j in 0..m {
                            next[i * m + j] += a * shifted[l * m + j];
                        }
                    }
                }
            }
            let trace: f64 = (0..m).map(|i| next[i * m + i]).sum();
            coeffs.push(-trace / k as f64);
            mk = next;
        }
        Polynomial::new(coeffs).expect("monic")
    }

    /// Largest real root of the characteristic polynomial; an independent
    /// route to the spectral radius.
    pub fn largest_char_root(&self) -> Result<f64> {
        largest_real_root(&self.characteristic_polynomial())
    }
}

fn check_order(m: &SymMatrix, p: &Partition) -> Result<()> {
    if p.order() != m.order() {
        return Err(Error::Input(format!(
            "partition covers 0..{} but the matrix has order {}",
            p.order(),
            m.order()
        )));
    }
    Ok(())
}

/// `c_ij = (Σ_{r∈Pi, c∈Pj} M[r][c]) / |Pi|`.
pub fn quotient_matrix(m: &SymMatrix, p: &Partition) -> Result<QuotientMatrix> {
    check_order(m, p)?;
    let k = p.len();
    let rows = p
        .classes()
        .iter()
        .map(|pi| {
            p.classes()
                .iter()
                .map(|pj| {
                    let total: f64 = pi
                        .iter()
                        .flat_map(|&r| pj.iter().map(move |&c| m.get(r, c)))
                        .sum();
                    total / pi.len() as f64
                })
                .collect()
        })
        .collect();
    let sizes = p.sizes();
    debug_assert_eq!(sizes.len(), k);
    QuotientMatrix::new(rows, sizes)
}

/// Whether every block has constant row sums. Exact for integer matrices,
/// within `1e-9` otherwise. A partition of the wrong order is not equitable.
pub fn is_equitable(m: &SymMatrix, p: &Partition) -> bool {
    if check_order(m, p).is_err() {
        return false;
    }
    let exact = m.is_integral();
    p.classes().iter().all(|pi| {
        p.classes().iter().all(|pj| {
            let mut sums = pi
                .iter()
                .map(|&r| pj.iter().map(|&c| m.get(r, c)).sum::<f64>());
            let first = sums.next().expect("classes are nonempty");
            sums.all(|s| {
                if exact {
                    s == first
                } else {
                    (s - first).abs() <= EQUITABLE_TOL
                }
            })
        })
    })
}
