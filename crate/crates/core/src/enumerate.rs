//! Labeled connected graphs: exhaustive for tiny orders, seeded random
//! sampling beyond that.
//!
//! An edge mask assigns bit `k` to the `k`-th vertex pair in graph6 order,
//! so `(u, v)` with `u < v` maps to bit `v(v-1)/2 + u`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::graph::Graph;

pub const MAX_EXHAUSTIVE_ORDER: usize = 7;
/// Rejection attempts allowed per connected sample.
pub const MAX_ATTEMPTS: usize = 10_000;

#[inline]
pub fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if mask >> pair_index(u, v) & 1 == 1 {
                g.insert(u, v);
            }
        }
    }
    g
}

/// Inverse of [`graph_from_mask`]; needs `C(n,2) <= 64`.
pub fn mask_of(g: &Graph) -> Result<u64> {
    let n = g.order();
    if n * n.saturating_sub(1) / 2 > 64 {
        return Err(Error::Capacity(format!(
            "order {n} does not fit a 64-bit edge mask"
        )));
    }
    Ok(g.edges().fold(0u64, |m, (u, v)| m | 1 << pair_index(u, v)))
}

fn mask_connected(n: usize, mask: u64, adj: &mut [u16]) -> bool {
    adj.iter_mut().for_each(|a| *a = 0);
    for v in 1..n {
        for u in 0..v {
            if mask >> pair_index(u, v) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

/// Every labeled connected graph on `n` vertices, once each, by increasing
/// edge mask.
pub fn all_connected(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 {
        return input("all_connected needs n >= 1");
    }
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_ORDER}, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let mut adj = vec![0u16; n];
    Ok((0..1u64 << pairs)
        .filter(move |&m| mask_connected(n, m, &mut adj))
        .map(move |m| graph_from_mask(n, m)))
}

/// Number of labeled connected graphs on `n` vertices, by
/// `c(n) = 2^C(n,2) - Σ_{k<n} C(n-1,k-1) c(k) 2^C(n-k,2)`.
pub fn connected_count(n: usize) -> u128 {
    fn binom(n: usize, k: usize) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    let pow2 = |m: usize| 1u128 << (m * m.saturating_sub(1) / 2);
    let mut c = vec![0u128; n + 1];
    for m in 1..=n {
        let split: u128 = (1..m)
            .map(|k| binom(m - 1, k - 1) * c[k] * pow2(m - k))
            .sum();
        c[m] = pow2(m) - split;
    }
    c[n]
}

/// One draw from `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.random_bool(p) {
                g.insert(u, v);
            }
        }
    }
    g
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return input(format!("edge probability must lie in (0, 1), got {p}"));
    }
    Ok(())
}

/// `count` draws from `G(n, p)` (not necessarily connected), deterministic in
/// `seed`.
pub fn sample_gnp(n: usize, p: f64, count: usize, seed: u64) -> Result<Vec<Graph>> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| random_graph(&mut rng, n, p)).collect())
}

/// `count` connected graphs from `G(n, p)` by rejection, deterministic in
/// `seed`.
pub fn sample_connected(n: usize, p: f64, count: usize, seed: u64) -> Result<Vec<Graph>> {
    check_probability(p)?;
    if n < 2 {
        return input(format!("sample_connected needs n >= 2, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let g = (0..MAX_ATTEMPTS)
            .map(|_| random_graph(&mut rng, n, p))
            .find(|g| g.components().len() == 1)
            .ok_or_else(|| {
                Error::Sampling(format!(
                    "no connected G({n}, {p}) sample after {MAX_ATTEMPTS} attempts (graph {i})"
                ))
            })?;
        out.push(g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Connected count by filtering every mask through `Graph::is_connected`.
    fn brute_count(n: usize) -> usize {
        let pairs = n * (n - 1) / 2;
        (0..1u64 << pairs)
            .filter(|&m| graph_from_mask(n, m).is_connected().unwrap())
            .count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(brute_count(3), 4);
        assert_eq!(brute_count(4), 38);
        assert_eq!(all_connected(3).unwrap().count(), 4);
        assert_eq!(all_connected(4).unwrap().count(), 38);
        assert_eq!(all_connected(1).unwrap().count(), 1);
    }

    #[test]
    fn six_vertices() {
        assert_eq!(brute_count(6), 26704);
        assert_eq!(all_connected(6).unwrap().count(), 26704);
        assert_eq!(connected_count(6), 26704);
    }

    #[test]
    fn oracle_sequence() {
        let expect = [1u128, 1, 4, 38, 728, 26704, 1866256, 251548592];
        for (i, &c) in expect.iter().enumerate() {
            assert_eq!(connected_count(i + 1), c);
        }
        assert_eq!(
            all_connected(5).unwrap().count() as u128,
            connected_count(5)
        );
    }

    #[test]
    fn limits() {
        assert!(matches!(all_connected(8), Err(Error::Capacity(_))));
        assert!(all_connected(0).is_err());
        assert!(sample_connected(10, 0.0, 1, 1).is_err());
        assert!(sample_connected(10, 1.0, 1, 1).is_err());
        assert!(sample_connected(1, 0.5, 1, 1).is_err());
        assert!(matches!(
            sample_connected(30, 1e-6, 1, 1),
            Err(Error::Sampling(_))
        ));
    }

    #[test]
    fn masks_roundtrip_in_order() {
        let graphs: Vec<_> = all_connected(4).unwrap().collect();
        let masks: Vec<u64> = graphs.iter().map(|g| mask_of(g).unwrap()).collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        for (g, &m) in graphs.iter().zip(&masks) {
            assert_eq!(&graph_from_mask(4, m), g);
        }
        // bit order matches graph6: K4 minus edge (2,3) sets the first five bits
        assert_eq!(mask_of(&crate::graph::complete(4)).unwrap(), 0b111111);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_connected(10, 0.5, 3, 7).unwrap();
        let b = sample_connected(10, 0.5, 3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.is_connected().unwrap()));
        let k2 = sample_connected(2, 0.99, 1, 1).unwrap();
        assert_eq!(k2[0], crate::graph::complete(2));
        assert_ne!(
            sample_gnp(10, 0.5, 3, 1).unwrap(),
            sample_gnp(10, 0.5, 3, 2).unwrap()
        );
    }
}
