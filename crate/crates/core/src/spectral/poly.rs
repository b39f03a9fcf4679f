use std::fmt;

use crate::error::{input, Error, Result};

/// Real polynomial, coefficients stored from the leading term down.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// `descending[0]` is the leading coefficient. Leading zeros are dropped;
    /// the zero polynomial is rejected.
    pub fn new(descending: impl Into<Vec<f64>>) -> Result<Self> {
        let mut coeffs = descending.into();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return input("polynomial coefficients must be finite");
        }
        let lead = coeffs.iter().position(|&c| c != 0.0);
        match lead {
            None => input("the zero polynomial has no roots to find"),
            Some(k) => {
                coeffs.drain(..k);
                Ok(Self { coeffs })
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |a_i| |x|^i`, the natural scale for rounding error in `eval`.
    fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Option<Self> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let coeffs = self.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (d - i) as f64)
            .collect();
        Some(Self { coeffs })
    }

    /// Every real root lies in `[-bound, bound]`.
    fn cauchy_bound(&self) -> f64 {
        let lead = self.coeffs[0];
        1.0 + self.coeffs[1..]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

fn bisect(p: &Polynomial, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = p.eval(lo);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    // one Newton step, kept only if it stays inside the bracket and helps
    if let Some(dp) = p.derivative() {
        let d = dp.eval(x);
        if d != 0.0 {
            let y = x - p.eval(x) / d;
            if y >= lo && y <= hi && p.eval(y).abs() < p.eval(x).abs() {
                return y;
            }
        }
    }
    x
}

/// All distinct real roots in ascending order.
///
/// Roots of the derivative split the line into monotone pieces; each piece
/// holds at most one root, found by bisection. A critical point where the
/// polynomial vanishes to rounding accuracy is reported as a repeated root.
pub fn real_roots(p: &Polynomial) -> Vec<f64> {
    match p.degree() {
        0 => return Vec::new(),
        1 => return vec![-p.coeffs[1] / p.coeffs[0]],
        _ => {}
    }
    let bound = p.cauchy_bound();
    let crit = real_roots(&p.derivative().expect("degree >= 2"));
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(-bound);
    knots.extend(crit.iter().copied().filter(|c| c.abs() < bound));
    knots.push(bound);

    let mut roots: Vec<f64> = Vec::new();
    let near_zero = |x: f64| p.eval(x).abs() <= 64.0 * f64::EPSILON * p.eval_abs(x);
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (flo, fhi) = (p.eval(lo), p.eval(hi));
        if near_zero(lo) {
            roots.push(lo);
        } else if flo * fhi < 0.0 && !near_zero(hi) {
            roots.push(bisect(p, lo, hi));
        }
    }
    if near_zero(bound) {
        roots.push(bound);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    roots
}

/// Largest real root, to about machine precision.
pub fn largest_real_root(p: &Polynomial) -> Result<f64> {
    real_roots(p)
        .last()
        .copied()
        .ok_or_else(|| Error::Numerical(format!("{p:?} has no real root")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn factored_cubic() {
        // x(x-1)(x-4)
        let p = poly(&[1.0, -5.0, 4.0, 0.0]);
        let r = real_roots(&p);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([0.0, 1.0, 4.0]) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
        assert!((largest_real_root(&p).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_and_linear() {
        let (n, s) = (6.0, 2.0);
        let p = poly(&[1.0, -(2.0 * s + n - 2.0), s * n - 4.0 * s]);
        let expect = 4.0 + 2.0 * 3f64.sqrt();
        assert!((largest_real_root(&p).unwrap() - expect).abs() < 1e-12);
        assert_eq!(largest_real_root(&poly(&[1.0, -7.0])).unwrap(), 7.0);
    }

    #[test]
    fn repeated_and_missing_roots() {
        // (x-2)^2 (x+1)
        let p = poly(&[1.0, -3.0, 0.0, 4.0]);
        let r = largest_real_root(&p).unwrap();
        assert!((r - 2.0).abs() < 1e-7, "{r}");
        assert!(matches!(
            largest_real_root(&poly(&[1.0, 0.0, 1.0])),
            Err(Error::Numerical(_))
        ));
        assert!(Polynomial::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn leading_zeros_dropped() {
        let p = poly(&[0.0, 0.0, 2.0, -6.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(largest_real_root(&p).unwrap(), 3.0);
    }

    #[test]
    fn quartic_with_close_roots() {
        // (x-1)(x-1.001)(x-3)(x+2)
        let roots = [1.0, 1.001, 3.0, -2.0];
        let mut c = vec![1.0];
        for r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i] += a;
                next[i + 1] -= a * r;
            }
            c = next;
        }
        let found = real_roots(&poly(&c));
        assert_eq!(found.len(), 4);
        for (a, b) in found.iter().zip([-2.0, 1.0, 1.001, 3.0]) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
