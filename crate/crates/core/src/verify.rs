//! Theorem harness: classify graphs against the q1 and edge thresholds and
//! look for counterexamples.
//!
//! A record is a `COUNTEREXAMPLE` when `q1 > threshold + ε` and the graph has
//! no perfect matching. Extremal graphs sit exactly on the threshold, so
//! `|q1 - threshold| <= ε` is reported as `boundary` and never escalated.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{all_connected, sample_connected};
use crate::error::{Error, Result};
use crate::graph::{clique_join_independent, extremal_h, tutte_deficiency, Graph, VertexSet};
use crate::graph6::{encode_graph6, StreamError};
use crate::matching::maximum_matching;
use crate::spectral::{self, edge_threshold, q1_threshold};

/// Guard band around the q1 threshold.
pub const GUARD_BAND: f64 = 1e-8;
/// Graphs checked per parallel batch.
const BATCH: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "conclusion-holds")]
    ConclusionHolds,
    #[serde(rename = "hypothesis-not-met")]
    HypothesisNotMet,
    #[serde(rename = "boundary")]
    Boundary,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
}

impl Verdict {
    pub fn classify(q1: f64, threshold: f64, has_pm: bool) -> Self {
        if (q1 - threshold).abs() <= GUARD_BAND {
            Verdict::Boundary
        } else if q1 < threshold {
            Verdict::HypothesisNotMet
        } else if has_pm {
            Verdict::ConclusionHolds
        } else {
            Verdict::Counterexample
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConclusionHolds => "conclusion-holds",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::Boundary => "boundary",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One JSONL line. Field order is part of the output format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub q1: f64,
    pub q1_threshold: f64,
    pub edge_threshold: u64,
    pub has_pm: bool,
    pub verdict: Verdict,
    pub witness: Option<VertexSet>,
}

impl VerdictRecord {
    /// More edges than the edge threshold but no perfect matching.
    pub fn edge_theorem_violated(&self) -> bool {
        self.edges as u64 > self.edge_threshold && !self.has_pm
    }
}

/// Why a graph was not checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Skip {
    OddOrder,
    TooSmall,
    Disconnected,
}

fn hypothesis_gap(g: &Graph) -> Option<Skip> {
    let n = g.order();
    if n % 2 == 1 {
        Some(Skip::OddOrder)
    } else if n < 4 {
        Some(Skip::TooSmall)
    } else if g.components().len() != 1 {
        Some(Skip::Disconnected)
    } else {
        None
    }
}

/// Evaluates both thresholds on a connected graph of even order `n >= 4`.
pub fn check_graph(g: &Graph) -> Result<VerdictRecord> {
    if let Some(skip) = hypothesis_gap(g) {
        let why = match skip {
            Skip::OddOrder => "order is odd",
            Skip::TooSmall => "order is below 4",
            Skip::Disconnected => "graph is disconnected",
        };
        return Err(Error::Hypothesis(why.into()));
    }
    let n = g.order();
    let q1 = spectral::q1(g)?;
    let threshold = q1_threshold(n)?;
    let matching = maximum_matching(g);
    let has_pm = matching.is_perfect(n);
    Ok(VerdictRecord {
        graph6: encode_graph6(g)?,
        n,
        edges: g.edge_count(),
        q1,
        q1_threshold: threshold,
        edge_threshold: edge_threshold(n)?,
        has_pm,
        verdict: Verdict::classify(q1, threshold, has_pm),
        witness: matching.witness,
    })
}

/// Counters for a run. Counterexample and edge-violation records are kept
/// in full.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub conclusion_holds: usize,
    pub hypothesis_not_met: usize,
    pub boundary: usize,
    pub counterexamples: usize,
    pub edge_violations: usize,
    pub boundary_without_pm: usize,
    pub skipped_odd: usize,
    pub skipped_small: usize,
    pub skipped_disconnected: usize,
    pub parse_errors: usize,
    pub counterexample_records: Vec<VerdictRecord>,
    pub edge_violation_records: Vec<VerdictRecord>,
}

impl Summary {
    fn record(&mut self, rec: &VerdictRecord) {
        self.checked += 1;
        match rec.verdict {
            Verdict::ConclusionHolds => self.conclusion_holds += 1,
            Verdict::HypothesisNotMet => self.hypothesis_not_met += 1,
            Verdict::Boundary => {
                self.boundary += 1;
                if !rec.has_pm {
                    self.boundary_without_pm += 1;
                }
            }
            Verdict::Counterexample => {
                self.counterexamples += 1;
                self.counterexample_records.push(rec.clone());
            }
        }
        if rec.edge_theorem_violated() {
            self.edge_violations += 1;
            self.edge_violation_records.push(rec.clone());
        }
    }

    fn skip(&mut self, why: Skip) {
        match why {
            Skip::OddOrder => self.skipped_odd += 1,
            Skip::TooSmall => self.skipped_small += 1,
            Skip::Disconnected => self.skipped_disconnected += 1,
        }
    }

    /// True if either theorem failed on some graph.
    pub fn found_violation(&self) -> bool {
        self.counterexamples > 0 || self.edge_violations > 0
    }

    /// 0 when clean, 1 when a counterexample was found.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.found_violation())
    }
}

/// How a run is executed. Output order always follows input order.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` or `Some(1)` runs on the calling thread.
    pub jobs: Option<usize>,
}

type Sink<'a> = &'a mut dyn FnMut(&VerdictRecord) -> Result<()>;

fn process<I>(items: I, opts: RunOptions, sink: Option<Sink<'_>>) -> Result<Summary>
where
    I: Iterator<Item = std::result::Result<Graph, StreamError>>,
{
    let pool = match opts.jobs {
        Some(j) if j > 1 => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Input(format!("cannot start {j} workers: {e}")))?,
        ),
        _ => None,
    };
    let mut summary = Summary::default();
    let mut sink = sink;
    let mut batch: Vec<Graph> = Vec::with_capacity(BATCH);
    let mut items = items.peekable();

    while items.peek().is_some() {
        batch.clear();
        for item in items.by_ref() {
            match item {
                Err(_) => summary.parse_errors += 1,
                Ok(g) => match hypothesis_gap(&g) {
                    Some(skip) => summary.skip(skip),
                    None => batch.push(g),
                },
            }
            if batch.len() == BATCH {
                break;
            }
        }
        let records: Vec<Result<VerdictRecord>> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(check_graph).collect()),
            None => batch.iter().map(check_graph).collect(),
        };
        for rec in records {
            let rec = rec?;
            summary.record(&rec);
            if let Some(sink) = sink.as_mut() {
                sink(&rec)?;
            }
        }
    }
    Ok(summary)
}

/// Checks any sequence of graphs; unsuitable graphs are counted and skipped.
pub fn run_graphs<I>(graphs: I, opts: RunOptions, sink: Option<Sink<'_>>) -> Result<Summary>
where
    I: IntoIterator<Item = Graph>,
{
    process(graphs.into_iter().map(Ok), opts, sink)
}

/// Every labeled connected graph on `n ∈ {4, 6}` vertices.
pub fn run_exhaustive(n: usize, opts: RunOptions, sink: Option<Sink<'_>>) -> Result<Summary> {
    if n != 4 && n != 6 {
        return Err(Error::Input(format!(
            "exhaustive runs cover n = 4 or 6, got {n}"
        )));
    }
    run_graphs(all_connected(n)?, opts, sink)
}

/// A decoded graph6 stream; parse errors are counted, not fatal.
pub fn run_stream<I>(source: I, opts: RunOptions, sink: Option<Sink<'_>>) -> Result<Summary>
where
    I: IntoIterator<Item = std::result::Result<Graph, StreamError>>,
{
    process(source.into_iter(), opts, sink)
}

/// `count` seeded connected samples from `G(n, p)`.
pub fn run_random(
    n: usize,
    p: f64,
    count: usize,
    seed: u64,
    opts: RunOptions,
    sink: Option<Sink<'_>>,
) -> Result<Summary> {
    run_graphs(sample_connected(n, p, count, seed)?, opts, sink)
}

/// Graphs attaining the q1 threshold without a perfect matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    /// `K1 ∨ (K_{n-3} ∪ K̄2)`.
    H,
    /// `K2 ∨ K̄4`.
    K2e4,
    /// `K3 ∨ K̄5`.
    K3e5,
}

impl Extremal {
    /// The sharp example for order `n`.
    pub fn for_order(n: usize) -> Self {
        match n {
            6 => Extremal::K2e4,
            8 => Extremal::K3e5,
            _ => Extremal::H,
        }
    }

    pub fn build(self, n: usize) -> Result<Graph> {
        match self {
            Extremal::H => extremal_h(n),
            Extremal::K2e4 if n == 6 => Ok(clique_join_independent(2, 4)),
            Extremal::K3e5 if n == 8 => Ok(clique_join_independent(3, 5)),
            other => Err(Error::Input(format!(
                "{} has a fixed order; n = {n} does not match",
                other.label()
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Extremal::H => "K1+(K_{n-3} u 2K1)",
            Extremal::K2e4 => "K2+E4",
            Extremal::K3e5 => "K3+E5",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessEntry {
    pub n: usize,
    pub graph: Extremal,
    pub graph6: String,
    pub q1: f64,
    pub q1_threshold: f64,
    pub edges: usize,
    pub edge_threshold: u64,
    pub has_pm: bool,
    pub witness: Option<VertexSet>,
    /// `o(G - S) - |S|` recomputed for the witness.
    pub witness_deficiency: Option<i64>,
    pub passed: bool,
}

/// Tolerance for `|q1 - threshold|` on the sharp examples.
pub const SHARPNESS_TOL: f64 = 1e-8;

/// Checks the sharp example for one order.
pub fn sharpness_entry(n: usize, which: Extremal) -> Result<SharpnessEntry> {
    let g = which.build(n)?;
    let q1 = spectral::q1(&g)?;
    let threshold = q1_threshold(n)?;
    let edges = g.edge_count();
    let edge_thr = edge_threshold(n)?;
    let m = maximum_matching(&g);
    let has_pm = m.is_perfect(n);
    let witness_deficiency = m
        .witness
        .as_ref()
        .map(|w| tutte_deficiency(&g, w))
        .transpose()?;
    let edges_ok = which != Extremal::for_order(n) || edges as u64 == edge_thr;
    let passed = (q1 - threshold).abs() <= SHARPNESS_TOL
        && !has_pm
        && witness_deficiency.is_some_and(|d| d >= 1)
        && edges_ok;
    Ok(SharpnessEntry {
        n,
        graph: which,
        graph6: encode_graph6(&g)?,
        q1,
        q1_threshold: threshold,
        edges,
        edge_threshold: edge_thr,
        has_pm,
        witness: m.witness,
        witness_deficiency,
        passed,
    })
}

/// Sharpness of the threshold for each order in `ns`.
pub fn sharpness_report(ns: &[usize]) -> Result<Vec<SharpnessEntry>> {
    ns.iter()
        .map(|&n| sharpness_entry(n, Extremal::for_order(n)))
        .collect()
}
