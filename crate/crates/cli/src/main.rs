use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use qspec::graph6::{decode_graph6, encode_graph6, read_edge_list, read_stream, JsonlSink};
use qspec::proof::{self, ProofInstance, Status};
use qspec::spectral::{closed_form_r_complex, edge_threshold, q1_threshold, r_of_n};
use qspec::verify::{self, Extremal, RunOptions, Summary, VerdictRecord};
use qspec::{Error, Graph, Result, VertexSet};

mod fmt;

use fmt::{kv_table, num, table};

/// Signless Laplacian spectral radius, perfect matchings and the thresholds
/// linking them.
#[derive(Parser)]
#[command(name = "qspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest signless Laplacian eigenvalue of a graph.
    Q1(GraphSource),
    /// q1 and edge thresholds for an even order.
    Threshold {
        #[arg(long)]
        n: usize,
    },
    /// Largest root r(n) of the extremal cubic.
    Rn {
        #[arg(long)]
        n: usize,
        /// Also evaluate the Cardano closed form.
        #[arg(long)]
        closed_form: bool,
    },
    /// Classify one graph against both thresholds.
    Check(GraphSource),
    /// Search a corpus of graphs for counterexamples.
    Verify(VerifyArgs),
    /// Sharp example for an order.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        which: Option<Which>,
        /// Print only the graph6 encoding.
        #[arg(long)]
        emit_graph6: bool,
    },
    /// Check the intermediate inequalities on concrete instances.
    ProofCheck(ProofArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    #[arg(long, value_name = "S")]
    graph6: Option<String>,
    /// Edge list: `n <count>` then `u v` per line.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "graph6_file", "random"])))]
struct VerifyArgs {
    /// Every labeled connected graph on N in {4, 6} vertices.
    #[arg(long, value_name = "N")]
    exhaustive: Option<usize>,
    /// graph6 stream, one graph per line; `-` reads standard input.
    #[arg(long, value_name = "PATH")]
    graph6_file: Option<PathBuf>,
    /// Connected samples from G(N, p).
    #[arg(long, value_name = "N", requires_all = ["p", "count", "seed"])]
    random: Option<usize>,
    #[arg(long, value_name = "P", requires = "random")]
    p: Option<f64>,
    #[arg(long, value_name = "C", requires = "random")]
    count: Option<usize>,
    #[arg(long, value_name = "S", requires = "random")]
    seed: Option<u64>,
    /// Write one JSON record per graph.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "J", default_value_t = 1)]
    jobs: usize,
    /// Emit records in input order (always the case in this implementation).
    #[arg(long)]
    stable: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProofArgs {
    /// Full suite: every instance up to 12 vertices plus a seeded sample.
    #[arg(long)]
    all: bool,
    /// One instance: `s,n1,n2,...` with odd parts.
    #[arg(long, value_name = "S,PARTS", value_delimiter = ',', num_args = 1..)]
    instance: Option<Vec<usize>>,
    /// Largest order in the seeded sample.
    #[arg(long, value_name = "N", default_value_t = 40)]
    nmax: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    H,
    K2e4,
    K3e5,
}

impl From<Which> for Extremal {
    fn from(w: Which) -> Self {
        match w {
            Which::H => Extremal::H,
            Which::K2e4 => Extremal::K2e4,
            Which::K3e5 => Extremal::K3e5,
        }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Proof-check sample size.
const PROOF_SAMPLE: usize = 200;
/// Largest order in the proof-check case analysis.
const CASE_NMAX: usize = 100;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8> {
    match command {
        Command::Q1(src) => {
            let g = load_graph(&src)?;
            writeln!(out, "{}", num(qspec::q1(&g)?))?;
            Ok(EXIT_OK)
        }
        Command::Threshold { n } => threshold(n, out),
        Command::Rn { n, closed_form } => rn(n, closed_form, out),
        Command::Check(src) => check(&load_graph(&src)?, out),
        Command::Verify(args) => verify_cmd(args, out),
        Command::Extremal {
            n,
            which,
            emit_graph6,
        } => extremal(n, which, emit_graph6, out),
        Command::ProofCheck(args) => proof_check(args, out),
    }
}

fn load_graph(src: &GraphSource) -> Result<Graph> {
    match (&src.graph6, &src.edges) {
        (Some(s), _) => decode_graph6(s),
        (None, Some(path)) => read_edge_list(BufReader::new(open(path)?)),
        (None, None) => unreachable!("clap requires one graph source"),
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn threshold(n: usize, out: &mut impl Write) -> Result<u8> {
    let rows = vec![vec![
        n.to_string(),
        num(q1_threshold(n)?),
        num(r_of_n(n)),
        edge_threshold(n)?.to_string(),
    ]];
    write!(
        out,
        "{}",
        table(&["n", "q1_threshold", "r(n)", "edge_threshold"], &rows)
    )?;
    Ok(EXIT_OK)
}

fn rn(n: usize, closed_form: bool, out: &mut impl Write) -> Result<u8> {
    if n < 4 {
        return Err(Error::Input(format!(
            "r(n) is defined here for n >= 4, got {n}"
        )));
    }
    let root = r_of_n(n);
    if !closed_form {
        writeln!(out, "{}", num(root))?;
        return Ok(EXIT_OK);
    }
    let z = closed_form_r_complex(n);
    let rows = [
        ("r(n)", num(root)),
        ("closed_form", num(z.re)),
        ("imaginary_part", num(z.im)),
        ("difference", num((z.re - root).abs())),
    ];
    write!(out, "{}", kv_table(&rows))?;
    Ok(EXIT_OK)
}

fn witness_str(w: &Option<VertexSet>) -> String {
    match w {
        None => "none".into(),
        Some(s) => {
            let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", items.join(", "))
        }
    }
}

fn record_table(r: &VerdictRecord) -> String {
    kv_table(&[
        ("graph6", r.graph6.clone()),
        ("n", r.n.to_string()),
        ("edges", r.edges.to_string()),
        ("q1", num(r.q1)),
        ("q1_threshold", num(r.q1_threshold)),
        ("edge_threshold", r.edge_threshold.to_string()),
        ("has_pm", r.has_pm.to_string()),
        ("verdict", r.verdict.to_string()),
        ("witness", witness_str(&r.witness)),
    ])
}

fn check(g: &Graph, out: &mut impl Write) -> Result<u8> {
    let r = verify::check_graph(g)?;
    write!(out, "{}", record_table(&r))?;
    if r.edge_theorem_violated() {
        writeln!(out, "edge theorem violated")?;
    }
    let violation = r.verdict == verify::Verdict::Counterexample || r.edge_theorem_violated();
    Ok(if violation { EXIT_VIOLATION } else { EXIT_OK })
}

fn summary_table(s: &Summary) -> String {
    kv_table(&[
        ("checked", s.checked.to_string()),
        ("conclusion-holds", s.conclusion_holds.to_string()),
        ("hypothesis-not-met", s.hypothesis_not_met.to_string()),
        ("boundary", s.boundary.to_string()),
        ("boundary without pm", s.boundary_without_pm.to_string()),
        ("COUNTEREXAMPLE", s.counterexamples.to_string()),
        ("edge-theorem violations", s.edge_violations.to_string()),
        ("skipped odd order", s.skipped_odd.to_string()),
        ("skipped order < 4", s.skipped_small.to_string()),
        ("skipped disconnected", s.skipped_disconnected.to_string()),
        ("parse errors", s.parse_errors.to_string()),
    ])
}

fn verify_cmd(args: VerifyArgs, out: &mut impl Write) -> Result<u8> {
    if args.jobs == 0 {
        return Err(Error::Input("--jobs must be at least 1".into()));
    }
    let opts = RunOptions {
        jobs: Some(args.jobs),
    };
    let mut sink = match &args.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Some(JsonlSink::new(BufWriter::new(file)))
        }
        None => None,
    };
    let mut emit = |r: &VerdictRecord| match sink.as_mut() {
        Some(s) => s.write(r),
        None => Ok(()),
    };
    let summary = if let Some(n) = args.exhaustive {
        verify::run_exhaustive(n, opts, Some(&mut emit))?
    } else if let Some(path) = &args.graph6_file {
        if path.as_os_str() == "-" {
            verify::run_stream(read_stream(io::stdin().lock()), opts, Some(&mut emit))?
        } else {
            let reader = BufReader::new(open(path)?);
            verify::run_stream(read_stream(reader), opts, Some(&mut emit))?
        }
    } else {
        let n = args.random.expect("clap requires a mode");
        let (p, count, seed) = (args.p.unwrap(), args.count.unwrap(), args.seed.unwrap());
        verify::run_random(n, p, count, seed, opts, Some(&mut emit))?
    };
    if let Some(s) = sink.as_mut() {
        s.flush()?;
    }

    write!(out, "{}", summary_table(&summary))?;
    for r in &summary.counterexample_records {
        writeln!(
            out,
            "COUNTEREXAMPLE {} q1={} witness={}",
            r.graph6,
            num(r.q1),
            witness_str(&r.witness)
        )?;
    }
    for r in &summary.edge_violation_records {
        writeln!(out, "EDGE-VIOLATION {} edges={}", r.graph6, r.edges)?;
    }
    Ok(summary.exit_code() as u8)
}

fn extremal(n: usize, which: Option<Which>, emit_graph6: bool, out: &mut impl Write) -> Result<u8> {
    let which = which.map_or(Extremal::for_order(n), Extremal::from);
    if emit_graph6 {
        writeln!(out, "{}", encode_graph6(&which.build(n)?)?)?;
        return Ok(EXIT_OK);
    }
    let e = verify::sharpness_entry(n, which)?;
    let sharp = which == Extremal::for_order(n);
    let status = match (e.passed, sharp) {
        (true, _) => "sharp",
        (false, true) => "FAIL",
        (false, false) => "not sharp for this order",
    };
    let deficiency = e
        .witness_deficiency
        .map_or("none".into(), |d| d.to_string());
    write!(
        out,
        "{}",
        kv_table(&[
            ("graph", which.label().to_string()),
            ("graph6", e.graph6.clone()),
            ("n", n.to_string()),
            ("edges", e.edges.to_string()),
            ("edge_threshold", e.edge_threshold.to_string()),
            ("q1", num(e.q1)),
            ("q1_threshold", num(e.q1_threshold)),
            ("difference", num((e.q1 - e.q1_threshold).abs())),
            ("has_pm", e.has_pm.to_string()),
            ("witness", witness_str(&e.witness)),
            ("deficiency", deficiency),
            ("status", status.to_string()),
        ])
    )?;
    Ok(if !e.passed && sharp {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn proof_check(args: ProofArgs, out: &mut impl Write) -> Result<u8> {
    if let Some(values) = args.instance {
        let (&s, parts) = values
            .split_first()
            .ok_or_else(|| Error::Input("--instance needs s followed by the part sizes".into()))?;
        let inst = ProofInstance::new(s, parts.to_vec())?;
        let reports = proof::check_instance(&inst);
        for r in &reports {
            writeln!(out, "{r}")?;
            for (k, v) in &r.values {
                writeln!(out, "    {k} = {}", num(*v))?;
            }
        }
        let failed = reports.iter().any(|r| !r.passed());
        return Ok(if failed { EXIT_VIOLATION } else { EXIT_OK });
    }

    let suite = proof::run_suite(PROOF_SAMPLE, args.nmax, CASE_NMAX)?;
    let mut checks: Vec<&str> = Vec::new();
    for r in &suite.reports {
        if !checks.contains(&r.check) {
            checks.push(r.check);
        }
    }
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.to_string(),
                suite.count(c, Status::Pass).to_string(),
                suite.count(c, Status::Fail).to_string(),
                suite.count(c, Status::Skipped).to_string(),
            ]
        })
        .collect();
    write!(out, "{}", table(&["check", "pass", "fail", "skip"], &rows))?;
    for r in suite.failures() {
        writeln!(out, "{r}")?;
    }
    writeln!(out)?;
    let rows: Vec<Vec<String>> = suite
        .transcriptions
        .iter()
        .map(|t| {
            vec![
                t.polynomial.to_string(),
                t.instance.clone(),
                num(t.max_rel_error),
                if t.agrees { "agrees" } else { "DIFFERS" }.to_string(),
            ]
        })
        .collect();
    write!(
        out,
        "{}",
        table(&["formula", "instance", "max_rel_error", "result"], &rows)
    )?;
    Ok(if suite.all_passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
