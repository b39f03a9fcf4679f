//! Numerical checks of the extremal argument behind the q1 threshold.
//!
//! A graph without a perfect matching has a set `S` whose removal leaves
//! `k >= |S| + 2` odd components. Completing `S` and every component to
//! cliques and joining `S` to everything gives `K_s ∨ (K_{n1} ∪ … ∪ K_{nk})`,
//! whose q1 can only be larger. The checks here confirm, instance by
//! instance, every inequality the argument relies on:
//!
//! * the quotient matrices `M1` (partition `{S, V(G1), …, V(Gk)}`), `M3`/`M4`
//!   (partition `{V(G1), S, rest}`) and `M5` (partition `{S, rest}`) are
//!   equitable and reproduce q1;
//! * `r_f > n+s-2` and `r_f > 2n1+2s-2`;
//! * moving two vertices from a component of order >= 3 to the largest, or
//!   merging two singleton components into the largest, strictly raises q1;
//! * `r(n)² - (2s+4) r(n) - 2s² >= 4.2843`, with the minimum at `s = 1, n = 6`;
//! * `r(n)` versus `r_l(n)`: greater for `n >= 10`, smaller for 6 and 8,
//!   equal for 4.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::{proof_graph, Graph};
use crate::spectral::{
    self, is_equitable, quotient_matrix, r_l, r_of_n, signless_laplacian, Partition, QuotientMatrix,
};

/// Seed for the sampled instance set.
pub const PROOF_SAMPLE_SEED: u64 = 0x005E_ED0F_2021;
/// Strict-inequality margin for the root bounds.
pub const ROOT_MARGIN: f64 = 1e-6;
/// Strict-increase margin for the monotonicity steps.
pub const SHIFT_MARGIN: f64 = 1e-9;
/// Quotient versus full-matrix agreement.
pub const QUOTIENT_TOL: f64 = 1e-8;
/// Lower bound on `r(n)² - (2s+4) r(n) - 2s²`, and its slack.
pub const H_BOUND_MIN: f64 = 4.2843;
pub const H_BOUND_SLACK: f64 = 1e-3;
pub const CASE_MARGIN: f64 = 1e-6;
pub const CASE_EQUALITY_TOL: f64 = 1e-8;
pub const TRANSCRIPTION_REL_TOL: f64 = 1e-9;

/// `(s, [n1 >= … >= nk])` with every `ni` odd, `k >= s + 2` and even total
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProofInstance {
    s: usize,
    parts: Vec<usize>,
}

impl ProofInstance {
    /// `parts` is sorted into nonincreasing order.
    pub fn new(s: usize, mut parts: Vec<usize>) -> Result<Self> {
        if s == 0 {
            return input("s must be at least 1");
        }
        if parts.iter().any(|p| p % 2 == 0) {
            return input(format!("component orders must be odd: {parts:?}"));
        }
        if parts.len() < s + 2 {
            return input(format!(
                "need k >= s + 2, got k = {} with s = {s}",
                parts.len()
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { s, parts })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.s + self.parts.iter().sum::<usize>()
    }

    pub fn n1(&self) -> usize {
        self.parts[0]
    }

    pub fn graph(&self) -> Graph {
        proof_graph(self.s, &self.parts).expect("validated instance")
    }

    /// `{S, V(G1), …, V(Gk)}` in the vertex layout of [`Self::graph`].
    pub fn partition(&self) -> Partition {
        let mut sizes = vec![self.s];
        sizes.extend(&self.parts);
        Partition::from_sizes(&sizes).expect("positive sizes")
    }

    /// Two vertices moved from the smallest component with at least three
    /// vertices (other than `G1`) to `G1`.
    pub fn shifted(&self) -> Option<Self> {
        let donor = (1..self.k()).rev().find(|&i| self.parts[i] >= 3)?;
        let mut parts = self.parts.clone();
        parts[0] += 2;
        parts[donor] -= 2;
        Self::new(self.s, parts).ok()
    }

    /// Two trailing singleton components absorbed into the largest one.
    /// Requires `k >= s + 4` so the result is still a valid instance.
    pub fn merged(&self) -> Option<Self> {
        let k = self.k();
        if k < self.s + 4 || self.parts[k - 1] != 1 || self.parts[k - 2] != 1 {
            return None;
        }
        let mut parts = self.parts[..k - 2].to_vec();
        parts[0] += 2;
        Self::new(self.s, parts).ok()
    }

    /// Whether every component except the largest is a single vertex.
    pub fn is_star_shaped(&self) -> bool {
        self.parts[1..].iter().all(|&p| p == 1)
    }
}

impl fmt::Display for ProofInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} s={} parts={:?}", self.n(), self.s, self.parts)
    }
}

/// `M1`: first row `(n+s-2, n1, …, nk)`, first column `s`, diagonal
/// `2ni+s-2`, zero elsewhere.
pub fn build_m1(inst: &ProofInstance) -> QuotientMatrix {
    let (n, s, k) = (inst.n() as f64, inst.s() as f64, inst.k());
    let mut rows = vec![vec![0.0; k + 1]; k + 1];
    rows[0][0] = n + s - 2.0;
    for (i, &p) in inst.parts().iter().enumerate() {
        rows[0][i + 1] = p as f64;
        rows[i + 1][0] = s;
        rows[i + 1][i + 1] = 2.0 * p as f64 + s - 2.0;
    }
    let mut sizes = vec![inst.s()];
    sizes.extend(inst.parts());
    QuotientMatrix::new(rows, sizes).expect("M1 is a valid quotient")
}

/// `M3` for `K_s ∨ (K_{n1} ∪ (k-1) K1)` with `n1 = n - s - k + 1`, partition
/// `{V(G1), S, rest}`.
pub fn build_m3(n: usize, s: usize, k: usize) -> Result<QuotientMatrix> {
    if s == 0 || k < 2 || n < s + k {
        return input(format!(
            "M3 needs s >= 1, k >= 2 and n1 = n - s - k + 1 >= 1 (n={n}, s={s}, k={k})"
        ));
    }
    let n1 = n - s - k + 1;
    let (nf, sf, kf, n1f) = (n as f64, s as f64, k as f64, n1 as f64);
    QuotientMatrix::new(
        vec![
            vec![2.0 * n1f + sf - 2.0, sf, 0.0],
            vec![n1f, nf + sf - 2.0, kf - 1.0],
            vec![0.0, sf, sf],
        ],
        vec![n1, s, k - 1],
    )
}

/// `M4 = M3` with `k = s + 2`, so `n1 = n - 2s - 1`.
pub fn build_m4(n: usize, s: usize) -> Result<QuotientMatrix> {
    build_m3(n, s, s + 2)
}

/// `M5` for `K_s ∨ K̄_{s+2}` (`n = 2s + 2`), partition `{S, rest}`.
pub fn build_m5(s: usize) -> Result<QuotientMatrix> {
    if s == 0 {
        return input("M5 needs s >= 1");
    }
    let n = 2 * s + 2;
    let (nf, sf) = (n as f64, s as f64);
    QuotientMatrix::new(
        vec![vec![nf + sf - 2.0, sf + 2.0], vec![sf, sf]],
        vec![s, s + 2],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check's precondition does not hold for this subject.
    Skipped,
}

/// Outcome of one check on one subject.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub subject: String,
    pub status: Status,
    pub values: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn new(check: &'static str, subject: impl ToString) -> Self {
        Self {
            check,
            subject: subject.to_string(),
            status: Status::Pass,
            values: BTreeMap::new(),
            note: None,
        }
    }

    fn value(mut self, key: &'static str, v: f64) -> Self {
        self.values.insert(key, v);
        self
    }

    fn require(mut self, ok: bool, what: &str) -> Self {
        if !ok && self.status != Status::Skipped {
            self.status = Status::Fail;
            let note = self
                .note
                .take()
                .map_or(what.to_string(), |n| format!("{n}; {what}"));
            self.note = Some(note);
        }
        self
    }

    fn skip(mut self, why: &str) -> Self {
        self.status = Status::Skipped;
        self.note = Some(why.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{status} {} [{}]", self.check, self.subject)?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

fn q1_of(g: &Graph) -> f64 {
    spectral::q1(g).expect("proof graphs are nonempty")
}

fn same_entries(a: &QuotientMatrix, b: &QuotientMatrix) -> bool {
    a.order() == b.order()
        && (0..a.order())
            .all(|i| (0..a.order()).all(|j| (a.get(i, j) - b.get(i, j)).abs() <= 1e-12))
}

/// `M1` equals the computed quotient of `Q(G')`, the partition is equitable,
/// and (for the matching shapes) `M3`/`M5` equal their computed quotients.
pub fn check_quotient_structure(inst: &ProofInstance) -> CheckReport {
    let g = inst.graph();
    let q = signless_laplacian(&g);
    let p = inst.partition();
    let m1 = build_m1(inst);
    let computed = quotient_matrix(&q, &p).expect("partition matches graph order");
    let rho_quot = m1.spectral_radius().expect("small quotient");
    let rho_full = q1_of(&g);
    let mut report = CheckReport::new("quotient-structure", inst)
        .value("rho_m1", rho_quot)
        .value("q1", rho_full)
        .require(
            same_entries(&m1, &computed),
            "M1 differs from the computed quotient",
        )
        .require(is_equitable(&q, &p), "partition is not equitable")
        .require(
            (rho_quot - rho_full).abs() <= QUOTIENT_TOL,
            "rho(M1) != q1(G')",
        );

    if inst.is_star_shaped() {
        let (n, s, k, n1) = (inst.n(), inst.s(), inst.k(), inst.n1());
        let m3 = build_m3(n, s, k).expect("valid instance");
        let rest: Vec<usize> = (s + n1..n).collect();
        let p3 =
            Partition::new(n, vec![(s..s + n1).collect(), (0..s).collect(), rest]).expect("covers");
        let computed3 = quotient_matrix(&q, &p3).expect("partition matches graph order");
        report = report
            .require(
                same_entries(&m3, &computed3),
                "M3 differs from the computed quotient",
            )
            .require(is_equitable(&q, &p3), "M3 partition is not equitable");
        if n1 == 1 && k == s + 2 {
            let m5 = build_m5(s).expect("s >= 1");
            let p5 = Partition::new(n, vec![(0..s).collect(), (s..n).collect()]).expect("covers");
            let computed5 = quotient_matrix(&q, &p5).expect("partition matches graph order");
            report = report
                .require(
                    same_entries(&m5, &computed5),
                    "M5 differs from the computed quotient",
                )
                .require(is_equitable(&q, &p5), "M5 partition is not equitable");
        }
    }
    report
}

/// `r_f = ρ(M1)` exceeds `n+s-2` and `2n1+2s-2` by at least [`ROOT_MARGIN`],
/// and equals `q1(G')`.
pub fn check_root_bounds(inst: &ProofInstance) -> CheckReport {
    let (n, s, n1) = (inst.n() as f64, inst.s() as f64, inst.n1() as f64);
    let r_f = build_m1(inst).spectral_radius().expect("small quotient");
    let q1 = q1_of(&inst.graph());
    let printed = 2.0 * n1 + 2.0 * s - 2.0;
    let diagonal = 2.0 * n1 + s - 2.0;
    CheckReport::new("root-bounds", inst)
        .value("r_f", r_f)
        .value("q1", q1)
        .value("n+s-2", n + s - 2.0)
        .value("2n1+2s-2", printed)
        .value("2n1+s-2", diagonal)
        .require(r_f > n + s - 2.0 + ROOT_MARGIN, "r_f <= n+s-2")
        .require(r_f > printed + ROOT_MARGIN, "r_f <= 2n1+2s-2")
        .require(r_f > diagonal + ROOT_MARGIN, "r_f <= 2n1+s-2")
        .require((r_f - q1).abs() <= QUOTIENT_TOL, "r_f != q1(G')")
}

/// Moving two vertices from a component `G_j` (`j >= 2`, `nj >= 3`) to `G_1` strictly raises
/// q1; the characteristic polynomial of the new `M1` is negative at the old
/// root.
pub fn check_vertex_shift(inst: &ProofInstance) -> CheckReport {
    let report = CheckReport::new("vertex-shift", inst);
    let Some(next) = inst.shifted() else {
        return report.skip("no component besides G1 has 3 or more vertices");
    };
    let before = q1_of(&inst.graph());
    let after = q1_of(&next.graph());
    let m2 = build_m1(&next);
    let r_f = build_m1(inst).spectral_radius().expect("small quotient");
    let f_tilde_at_rf = m2.char_poly_at(r_f);
    report
        .value("q1_before", before)
        .value("q1_after", after)
        .value("f_tilde(r_f)", f_tilde_at_rf)
        .require(after > before + SHIFT_MARGIN, "q1 did not increase")
        .require(f_tilde_at_rf < 0.0, "f~(r_f) is not negative")
}

/// Absorbing two singleton components into `G_1` strictly raises q1. For
/// star-shaped instances the displayed `g~(r_g) < 0` is also evaluated.
pub fn check_merge_singletons(inst: &ProofInstance) -> CheckReport {
    let report = CheckReport::new("merge-singletons", inst);
    let Some(next) = inst.merged() else {
        return report.skip("needs two singleton components and k >= s + 4");
    };
    let before = q1_of(&inst.graph());
    let after = q1_of(&next.graph());
    let mut report = report
        .value("q1_before", before)
        .value("q1_after", after)
        .require(after > before + SHIFT_MARGIN, "q1 did not increase");
    if inst.is_star_shaped() {
        let (n, s, k) = (inst.n(), inst.s(), inst.k());
        let r_g = build_m3(n, s, k)
            .expect("valid")
            .spectral_radius()
            .expect("small quotient");
        let g_tilde = displayed_g_tilde_at_root(n, s, k, r_g);
        report = report
            .value("g_tilde(r_g)", g_tilde)
            .require(g_tilde < 0.0, "g~(r_g) is not negative");
    }
    report
}

/// `g~(r_g) = -4 s n1 - 4s - 4[(r_g-n-s+2)(r_g-s) - s(k-1)]`.
fn displayed_g_tilde_at_root(n: usize, s: usize, k: usize, r_g: f64) -> f64 {
    let (nf, sf, kf) = (n as f64, s as f64, k as f64);
    let n1 = nf - sf - kf + 1.0;
    -4.0 * sf * n1 - 4.0 * sf - 4.0 * ((r_g - nf - sf + 2.0) * (r_g - sf) - sf * (kf - 1.0))
}

/// `E(n, s) = r(n)² - (2s+4) r(n) - 2s²`.
pub fn h_bound_expression(n: usize, s: usize) -> f64 {
    let r = r_of_n(n);
    let s = s as f64;
    r * r - (2.0 * s + 4.0) * r - 2.0 * s * s
}

/// For `n >= 2s + 4`: `E(n, s) >= 4.2843`, `h(r(n)) >= 0` where `h` is the
/// characteristic polynomial of `M4`, and hence `ρ(M4) <= r(n)`.
pub fn check_h_bound(n: usize, s: usize) -> CheckReport {
    let report = CheckReport::new("h-bound", format!("n={n} s={s}"));
    if s == 0 || n < 2 * s + 4 {
        return report.skip("needs s >= 1 and n >= 2s + 4");
    }
    let e = h_bound_expression(n, s);
    let r = r_of_n(n);
    let m4 = build_m4(n, s).expect("n1 >= 3");
    let h_at_r = m4.char_poly_at(r);
    let rho_m4 = m4.spectral_radius().expect("small quotient");
    report
        .value("E", e)
        .value("r(n)", r)
        .value("h(r(n))", h_at_r)
        .value("rho_m4", rho_m4)
        .require(e >= H_BOUND_MIN - H_BOUND_SLACK, "E(n, s) below 4.2843")
        .require(h_at_r >= -1e-6, "h(r(n)) is negative")
        .require(rho_m4 <= r + 1e-9, "rho(M4) exceeds r(n)")
}

/// `r(n)` against `r_l(n) = (2n-4+√(2n(n-2)))/2`.
pub fn check_case_analysis(n: usize) -> CheckReport {
    let report = CheckReport::new("case-analysis", format!("n={n}"));
    if n < 4 || n % 2 == 1 {
        return report.skip("needs even n >= 4");
    }
    let r = r_of_n(n);
    let rl = r_l(n);
    let report = report.value("r(n)", r).value("r_l", rl);
    match n {
        4 => report.require(
            (r - rl).abs() <= CASE_EQUALITY_TOL,
            "expected r(4) = r_l(4)",
        ),
        6 | 8 => report.require(r < rl - CASE_MARGIN, "expected r(n) < r_l(n)"),
        _ => report.require(r > rl + CASE_MARGIN, "expected r(n) > r_l(n)"),
    }
}

/// Nonincreasing partitions of `total` into odd parts no larger than `max`.
fn odd_partitions(total: usize, max: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let top = max.min(total);
    for p in (1..=top).rev().filter(|p| p % 2 == 1) {
        for mut rest in odd_partitions(total - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// Every valid instance of even order `n`, by `s` then descending parts.
pub fn valid_instances(n: usize) -> Vec<ProofInstance> {
    (1..n)
        .flat_map(|s| {
            odd_partitions(n - s, n - s)
                .into_iter()
                .filter(move |parts| parts.len() >= s + 2)
                .map(move |parts| ProofInstance { s, parts })
        })
        .collect()
}

/// Every valid instance for even `n` in `4..=nmax`.
pub fn exhaustive_instances(nmax: usize) -> Vec<ProofInstance> {
    (4..=nmax).step_by(2).flat_map(valid_instances).collect()
}

/// `count` random valid instances with even `n` in `n_lo..=n_hi`.
pub fn sampled_instances(
    count: usize,
    n_lo: usize,
    n_hi: usize,
    seed: u64,
) -> Result<Vec<ProofInstance>> {
    let n_lo = n_lo.max(4) + n_lo.max(4) % 2;
    if n_hi < n_lo {
        return input(format!("empty order range {n_lo}..={n_hi}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let evens: Vec<usize> = (n_lo..=n_hi).step_by(2).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = evens[rng.random_range(0..evens.len())];
        let s = rng.random_range(1..=(n - 2) / 2);
        // k ≡ s (mod 2), s + 2 <= k <= n - s
        let k = s + 2 + 2 * rng.random_range(0..=(n - 2 * s - 2) / 2);
        let mut parts = vec![1usize; k];
        for _ in 0..(n - s - k) / 2 {
            let i = rng.random_range(0..k);
            parts[i] += 2;
        }
        out.push(ProofInstance::new(s, parts)?);
    }
    Ok(out)
}

/// The instance maximizing q1 among all valid instances of order `n`.
pub fn maximizer(n: usize) -> Option<(ProofInstance, f64)> {
    valid_instances(n)
        .into_iter()
        .map(|inst| {
            let q = q1_of(&inst.graph());
            (inst, q)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
}

/// The maximizer predicted by the threshold's case split.
pub fn expected_maximizer(n: usize) -> Result<ProofInstance> {
    match n {
        6 => ProofInstance::new(2, vec![1; 4]),
        8 => ProofInstance::new(3, vec![1; 5]),
        n if n >= 4 && n % 2 == 0 => ProofInstance::new(1, vec![n - 3, 1, 1]),
        _ => input(format!("no maximizer for n = {n}")),
    }
}

/// Agreement of one displayed closed form with the characteristic
/// polynomial it claims to expand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranscriptionCheck {
    pub polynomial: &'static str,
    pub instance: String,
    pub points: usize,
    pub max_rel_error: f64,
    pub agrees: bool,
}

pub const SAMPLE_POINTS: [f64; 8] = [-3.0, -1.0, 0.0, 0.5, 2.0, 5.5, 11.0, 17.25];

fn compare(
    polynomial: &'static str,
    instance: String,
    displayed: impl Fn(f64) -> f64,
    actual: impl Fn(f64) -> f64,
) -> TranscriptionCheck {
    let max_rel_error = SAMPLE_POINTS
        .iter()
        .map(|&x| {
            let (a, b) = (displayed(x), actual(x));
            (a - b).abs() / a.abs().max(b.abs()).max(1.0)
        })
        .fold(0.0, f64::max);
    TranscriptionCheck {
        polynomial,
        instance,
        points: SAMPLE_POINTS.len(),
        max_rel_error,
        agrees: max_rel_error <= TRANSCRIPTION_REL_TOL,
    }
}

/// `f(x)` with the cofactor terms signed `(-1)^i s n_i`, exactly as displayed.
pub fn f_displayed(inst: &ProofInstance, x: f64) -> f64 {
    f_expansion(inst, x, true)
}

/// `f(x) = (x-n-s+2) Π(x-2ni-s+2) - Σ s ni Π_{j≠i}(x-2nj-s+2)`.
pub fn f_expanded(inst: &ProofInstance, x: f64) -> f64 {
    f_expansion(inst, x, false)
}

fn f_expansion(inst: &ProofInstance, x: f64, alternate: bool) -> f64 {
    let (n, s) = (inst.n() as f64, inst.s() as f64);
    let d: Vec<f64> = inst
        .parts()
        .iter()
        .map(|&p| x - 2.0 * p as f64 - s + 2.0)
        .collect();
    let lead = (x - n - s + 2.0) * d.iter().product::<f64>();
    let tail: f64 = inst
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let sign = if alternate && i % 2 == 1 { 1.0 } else { -1.0 };
            let others: f64 = d
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .product();
            sign * s * p as f64 * others
        })
        .sum();
    lead + tail
}

/// `g(x) = (x-2n1-s+2)[(x-n-s+2)(x-s) - s(k-1)] - n1 s (x-s)`.
pub fn g_displayed(n: usize, s: usize, k: usize, x: f64) -> f64 {
    let (nf, sf, kf) = (n as f64, s as f64, k as f64);
    let n1 = nf - sf - kf + 1.0;
    (x - 2.0 * n1 - sf + 2.0) * ((x - nf - sf + 2.0) * (x - sf) - sf * (kf - 1.0))
        - n1 * sf * (x - sf)
}

/// `g~(x) = g(x) - 4 s n1 - 4s - 4[(x-n-s+2)(x-s) - s(k-1)]`.
pub fn g_tilde_displayed(n: usize, s: usize, k: usize, x: f64) -> f64 {
    let (nf, sf, kf) = (n as f64, s as f64, k as f64);
    let n1 = nf - sf - kf + 1.0;
    g_displayed(n, s, k, x)
        - 4.0 * sf * n1
        - 4.0 * sf
        - 4.0 * ((x - nf - sf + 2.0) * (x - sf) - sf * (kf - 1.0))
}

/// `h(x) = x³ + (s-3n+6)x² + (2n²+ns-8n-4s²-4s+8)x - 2s(n²-2ns-5n+s²+5s+6)`.
pub fn h_displayed(n: usize, s: usize, x: f64) -> f64 {
    let (n, s) = (n as f64, s as f64);
    x * x * x
        + (s - 3.0 * n + 6.0) * x * x
        + (2.0 * n * n + n * s - 8.0 * n - 4.0 * s * s - 4.0 * s + 8.0) * x
        - 2.0 * s * (n * n - 2.0 * n * s - 5.0 * n + s * s + 5.0 * s + 6.0)
}

/// `l(x) = x² + (2-2s-n)x + (sn-4s)`.
pub fn l_displayed(n: usize, s: usize, x: f64) -> f64 {
    let (n, s) = (n as f64, s as f64);
    x * x + (2.0 - 2.0 * s - n) * x + (s * n - 4.0 * s)
}

/// Compares every displayed polynomial with the characteristic polynomial of
/// the matrix it belongs to. Disagreements are findings about the displayed
/// formula, reported with the polynomial and instance.
pub fn verify_polynomial_transcriptions() -> Vec<TranscriptionCheck> {
    let mut out = Vec::new();
    let f_instances: [(usize, &[usize]); 6] = [
        (1, &[3, 1, 1]),
        (2, &[1, 1, 1, 1]),
        (1, &[5, 1, 1]),
        (3, &[1, 1, 1, 1, 1]),
        (1, &[3, 3, 1]),
        (2, &[3, 1, 1, 1]),
    ];
    for (s, parts) in f_instances {
        let inst = ProofInstance::new(s, parts.to_vec()).expect("valid");
        let m1 = build_m1(&inst);
        out.push(compare(
            "f (displayed signs)",
            inst.to_string(),
            |x| f_displayed(&inst, x),
            |x| m1.char_poly_at(x),
        ));
        out.push(compare(
            "f (all cofactors negative)",
            inst.to_string(),
            |x| f_expanded(&inst, x),
            |x| m1.char_poly_at(x),
        ));
    }
    let g_instances = [
        (6, 1, 3),
        (10, 1, 3),
        (10, 2, 4),
        (12, 3, 5),
        (14, 2, 6),
        (20, 4, 8),
    ];
    for (n, s, k) in g_instances {
        let label = format!("n={n} s={s} k={k}");
        let m3 = build_m3(n, s, k).expect("valid");
        out.push(compare(
            "g",
            label.clone(),
            |x| g_displayed(n, s, k, x),
            |x| m3.char_poly_at(x),
        ));
        if k >= 4 {
            // g~ belongs to G''': n1 + 2 and k - 2 components
            let merged = build_m3(n, s, k - 2).expect("valid");
            out.push(compare(
                "g~",
                label,
                |x| g_tilde_displayed(n, s, k, x),
                |x| merged.char_poly_at(x),
            ));
        }
    }
    for (n, s) in [(6, 1), (10, 1), (12, 4), (14, 3), (20, 5), (30, 2)] {
        let m4 = build_m4(n, s).expect("valid");
        out.push(compare(
            "h",
            format!("n={n} s={s}"),
            |x| h_displayed(n, s, x),
            |x| m4.char_poly_at(x),
        ));
    }
    for s in 1..=6 {
        let n = 2 * s + 2;
        let m5 = build_m5(s).expect("s >= 1");
        out.push(compare(
            "l",
            format!("n={n} s={s}"),
            |x| l_displayed(n, s, x),
            |x| m5.char_poly_at(x),
        ));
    }
    out
}

/// Aggregate of a proof-check run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ProofSuite {
    pub reports: Vec<CheckReport>,
    pub transcriptions: Vec<TranscriptionCheck>,
}

impl ProofSuite {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn count(&self, check: &str, status: Status) -> usize {
        self.reports
            .iter()
            .filter(|r| r.check == check && r.status == status)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Every per-instance check on one instance.
pub fn check_instance(inst: &ProofInstance) -> Vec<CheckReport> {
    vec![
        check_quotient_structure(inst),
        check_root_bounds(inst),
        check_vertex_shift(inst),
        check_merge_singletons(inst),
    ]
}

/// The full suite: per-instance checks on every instance with `n <= 12` plus
/// `sample` seeded instances with `14 <= n <= sample_nmax`; the h-bound over
/// all valid `(n, s)` and the case analysis for even `n <= case_nmax`; the
/// maximizer for `n <= 12`; and the transcription comparisons.
pub fn run_suite(sample: usize, sample_nmax: usize, case_nmax: usize) -> Result<ProofSuite> {
    use rayon::prelude::*;

    let mut instances = exhaustive_instances(12);
    if sample > 0 && sample_nmax >= 14 {
        instances.extend(sampled_instances(
            sample,
            14,
            sample_nmax,
            PROOF_SAMPLE_SEED,
        )?);
    }
    let mut reports: Vec<CheckReport> =
        instances.par_iter().flat_map_iter(check_instance).collect();

    for n in (4..=case_nmax).step_by(2) {
        for s in 1..=n.saturating_sub(4) / 2 {
            reports.push(check_h_bound(n, s));
        }
        reports.push(check_case_analysis(n));
    }
    for n in (4..=12).step_by(2) {
        let (best, q) = maximizer(n).expect("instances exist for even n >= 4");
        let expected = expected_maximizer(n)?;
        reports.push(
            CheckReport::new("maximizer", format!("n={n}"))
                .value("q1_max", q)
                .require(
                    best == expected,
                    &format!("maximizer is {best}, expected {expected}"),
                ),
        );
    }
    Ok(ProofSuite {
        reports,
        transcriptions: verify_polynomial_transcriptions(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::clique_join_independent;

    fn inst(s: usize, parts: &[usize]) -> ProofInstance {
        ProofInstance::new(s, parts.to_vec()).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(ProofInstance::new(0, vec![1, 1]).is_err());
        assert!(ProofInstance::new(1, vec![2, 1, 1]).is_err());
        assert!(ProofInstance::new(2, vec![1, 1, 1]).is_err());
        let i = inst(1, &[1, 3, 1]);
        assert_eq!(i.parts(), &[3, 1, 1]);
        assert_eq!((i.n(), i.k(), i.n1()), (6, 3, 3));
    }

    #[test]
    fn m1_templates() {
        assert_eq!(
            build_m1(&inst(1, &[3, 1, 1])).rows(),
            vec![
                vec![5.0, 3.0, 1.0, 1.0],
                vec![1.0, 5.0, 0.0, 0.0],
                vec![1.0, 0.0, 1.0, 0.0],
                vec![1.0, 0.0, 0.0, 1.0],
            ]
        );
        let m = build_m1(&inst(2, &[1, 1, 1, 1])).rows();
        assert_eq!(m[0], vec![6.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(m[1], vec![2.0, 2.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            check_quotient_structure(&inst(1, &[7, 1, 1])).status,
            Status::Pass
        );
    }

    #[test]
    fn m3_m5_match_known_quotients() {
        // M3 with (n=10, s=1, k=3) is the H(10) quotient up to class order
        let m3 = build_m3(10, 1, 3).unwrap();
        assert_eq!(
            m3.rows(),
            vec![
                vec![13.0, 1.0, 0.0],
                vec![7.0, 9.0, 2.0],
                vec![0.0, 1.0, 1.0]
            ]
        );
        assert_eq!(
            build_m5(2).unwrap().rows(),
            vec![vec![6.0, 4.0], vec![2.0, 2.0]]
        );
        assert_eq!(
            build_m5(3).unwrap().rows(),
            vec![vec![9.0, 5.0], vec![3.0, 3.0]]
        );
        assert!(build_m3(4, 1, 4).is_err());
    }

    #[test]
    fn root_bound_examples() {
        let r = check_root_bounds(&inst(1, &[3, 1, 1]));
        assert_eq!(r.status, Status::Pass, "{r}");
        assert_eq!(r.values["2n1+2s-2"], 6.0);
        assert!((r.values["r_f"] - r_of_n(6)).abs() < 1e-8);

        let r = check_root_bounds(&inst(1, &[1, 1, 1]));
        assert!((r.values["r_f"] - 4.0).abs() < 1e-9);
        assert!(r.passed());

        let r = check_root_bounds(&inst(1, &[7, 1, 1]));
        assert!((r.values["r_f"] - r_of_n(10)).abs() < 1e-8);
        assert!(r.passed());
    }

    #[test]
    fn shift_examples() {
        for (s, parts) in [
            (1, vec![3, 3, 1]),
            (1, vec![3, 3, 3]),
            (3, vec![3, 3, 3, 3, 3]),
        ] {
            let i = inst(s, &parts);
            let r = check_vertex_shift(&i);
            assert_eq!(r.status, Status::Pass, "{r}");
            assert!(r.values["q1_after"] > r.values["q1_before"]);
        }
        assert_eq!(inst(1, &[3, 3, 1]).shifted().unwrap().parts(), &[5, 1, 1]);
        assert_eq!(inst(1, &[3, 3, 3]).shifted().unwrap().parts(), &[5, 3, 1]);
        assert_eq!(
            check_vertex_shift(&inst(1, &[3, 1, 1])).status,
            Status::Skipped
        );
        assert_eq!(
            inst(3, &[3, 3, 3, 3, 3]).shifted().unwrap().parts(),
            &[5, 3, 3, 3, 1]
        );
    }

    #[test]
    fn merge_examples() {
        for (s, parts, merged) in [
            (1, vec![1, 1, 1, 1, 1], vec![3, 1, 1]),
            (1, vec![3, 1, 1, 1, 1], vec![5, 1, 1]),
            (2, vec![1, 1, 1, 1, 1, 1], vec![3, 1, 1, 1]),
        ] {
            let i = inst(s, &parts);
            assert_eq!(i.merged().unwrap().parts(), merged.as_slice());
            let r = check_merge_singletons(&i);
            assert_eq!(r.status, Status::Pass, "{r}");
            assert!(r.values["g_tilde(r_g)"] < 0.0);
        }
        assert_eq!(
            check_merge_singletons(&inst(1, &[3, 1, 1])).status,
            Status::Skipped
        );
    }

    #[test]
    fn h_bound_examples() {
        let r = check_h_bound(6, 1);
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!((r.values["E"] - 4.2843).abs() < 1e-3);
        for (n, s) in [(10, 1), (12, 4)] {
            let r = check_h_bound(n, s);
            assert_eq!(r.status, Status::Pass, "{r}");
            assert!(r.values["E"] > 4.2843);
        }
        assert_eq!(check_h_bound(8, 3).status, Status::Skipped);
    }

    #[test]
    fn case_analysis_examples() {
        let r6 = check_case_analysis(6);
        assert!((r6.values["r(n)"] - 6.9095).abs() < 5e-4);
        assert!((r6.values["r_l"] - 7.4641).abs() < 5e-4);
        let r8 = check_case_analysis(8);
        assert!((r8.values["r(n)"] - 10.5136).abs() < 5e-4);
        assert!((r8.values["r_l"] - 10.8990).abs() < 5e-4);
        for n in (4..=100).step_by(2) {
            assert_eq!(check_case_analysis(n).status, Status::Pass, "n = {n}");
        }
        assert_eq!(check_case_analysis(5).status, Status::Skipped);
    }

    #[test]
    fn instance_enumeration() {
        assert_eq!(valid_instances(4), vec![inst(1, &[1, 1, 1])]);
        assert_eq!(valid_instances(6).len(), 3);
        let counts: Vec<usize> = (4..=12)
            .step_by(2)
            .map(|n| valid_instances(n).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 7, 14, 25]);
        let sampled = sampled_instances(200, 14, 40, PROOF_SAMPLE_SEED).unwrap();
        assert_eq!(sampled.len(), 200);
        assert!(sampled
            .iter()
            .all(|i| (14..=40).contains(&i.n()) && i.n() % 2 == 0));
        assert_eq!(
            sampled,
            sampled_instances(200, 14, 40, PROOF_SAMPLE_SEED).unwrap()
        );
    }

    #[test]
    fn small_suite_passes() {
        let suite = run_suite(20, 20, 20).unwrap();
        let failures: Vec<String> = suite.failures().map(|r| r.to_string()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        // all-singleton shapes with k > s + 2 have no M5 partition but still pass
        assert!(check_quotient_structure(&inst(1, &[1, 1, 1, 1, 1])).status == Status::Pass);
    }

    #[test]
    fn maximizers() {
        for n in (4..=12).step_by(2) {
            let (best, _) = maximizer(n).unwrap();
            assert_eq!(best, expected_maximizer(n).unwrap(), "n = {n}");
        }
        assert_eq!(
            inst(2, &[1, 1, 1, 1]).graph(),
            clique_join_independent(2, 4)
        );
    }

    #[test]
    fn transcriptions() {
        let checks = verify_polynomial_transcriptions();
        assert!(checks.len() >= 5 * 4);
        for c in &checks {
            let expect_agree = c.polynomial != "f (displayed signs)";
            assert_eq!(c.agrees, expect_agree, "{c:?}");
        }
        // the displayed h cubic vanishes at r(n) when s = 1
        assert!(h_displayed(10, 1, r_of_n(10)).abs() < 1e-9);
        assert!(l_displayed(6, 2, 4.0 + 2.0 * 3f64.sqrt()).abs() < 1e-12);
        // f(0) = det(-M1)
        let i = inst(1, &[3, 1, 1]);
        assert!((f_expanded(&i, 0.0) - build_m1(&i).char_poly_at(0.0)).abs() < 1e-9);
        assert!(g_displayed(10, 1, 3, r_of_n(10)).abs() < 1e-9);
    }
}
