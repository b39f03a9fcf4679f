//! The q1 and edge-count thresholds that force a perfect matching.

use num_complex::Complex64;

use super::poly::{largest_real_root, Polynomial};
use crate::error::{input, Error, Result};

fn check_even_order(n: usize) -> Result<()> {
    if n < 4 || n % 2 == 1 {
        return input(format!("threshold defined for even n >= 4, got {n}"));
    }
    Ok(())
}

/// `x³ - (3n-7)x² + n(2n-7)x - 2(n² - 7n + 12)`.
pub fn r_cubic(n: usize) -> Polynomial {
    let n = n as f64;
    Polynomial::new(vec![
        1.0,
        -(3.0 * n - 7.0),
        n * (2.0 * n - 7.0),
        -2.0 * (n * n - 7.0 * n + 12.0),
    ])
    .expect("monic")
}

/// `r(n)`: the largest root of [`r_cubic`], which is `q1(K1 ∨ (K_{n-3} ∪ K̄2))`.
pub fn r_of_n(n: usize) -> f64 {
    largest_real_root(&r_cubic(n)).expect("a real cubic has a real root")
}

/// Cardano's formula for `r(n)` evaluated with principal complex cube roots.
///
/// The cubic has three real roots, so the discriminant under the square root
/// is negative and the two cube-root terms are complex conjugates; the sum
/// is real up to rounding.
pub fn closed_form_r_complex(n: usize) -> Complex64 {
    let n = n as f64;
    let n2 = n * n;
    let disc = -4.0 * n2 * n2 * n2 + 84.0 * n2 * n2 * n - 781.0 * n2 * n2 + 4074.0 * n2 * n
        - 12633.0 * n2
        + 22232.0 * n
        - 17376.0;
    let inner = Complex64::new(63.0 * n - 9.0 * n2 - 38.0, 0.0)
        + 3.0 * 3f64.sqrt() * Complex64::new(disc, 0.0).sqrt();
    let cube = inner.cbrt();
    let first = 2f64.powf(2.0 / 3.0) * cube / 6.0;
    let second = 2f64.powf(1.0 / 3.0) * (3.0 * n2 - 21.0 * n + 49.0) / (3.0 * cube);
    n + first + second - 7.0 / 3.0
}

/// Largest imaginary part tolerated (and then discarded) in [`closed_form_r`].
pub const CLOSED_FORM_IMAG_TOL: f64 = 1e-6;

pub fn closed_form_r(n: usize) -> Result<f64> {
    if n < 4 {
        return input(format!("closed form needs n >= 4, got {n}"));
    }
    let z = closed_form_r_complex(n);
    if z.im.abs() > CLOSED_FORM_IMAG_TOL {
        return Err(Error::Numerical(format!(
            "closed form for n = {n} left imaginary part {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// `(2n - 4 + √(2n(n-2))) / 2`: q1 of `K_{s} ∨ K̄_{s+2}` with `n = 2s + 2`.
pub fn r_l(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * n - 4.0 + (2.0 * n * (n - 2.0)).sqrt()) / 2.0
}

/// Spectral threshold: a connected graph of even order `n` whose q1 exceeds
/// it has a perfect matching.
pub fn q1_threshold(n: usize) -> Result<f64> {
    check_even_order(n)?;
    Ok(match n {
        6 => 4.0 + 2.0 * 3f64.sqrt(),
        8 => 6.0 + 2.0 * 6f64.sqrt(),
        _ => r_of_n(n),
    })
}

/// Edge threshold `n²/2 - 5n/2 + 5` (9 for n = 6, 18 for n = 8); an integer
/// for every even `n`.
pub fn edge_threshold(n: usize) -> Result<u64> {
    check_even_order(n)?;
    Ok(match n {
        6 => 9,
        8 => 18,
        _ => {
            let n = n as u64;
            (n * n + 10 - 5 * n) / 2
        }
    })
}
