//! `segconn`: curve codecs, segment components, censuses and check suites.
//!
//! Exit status is 0 on success, 1 when a verification suite fails and 2 on
//! usage or domain errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use segconn::census::{self, ComponentHistogram, Enumerator, Phi, Ratio};
use segconn::cube::{self, Coords, CurveIndex};
use segconn::mesh::{self, Geometry, MeshView};
use segconn::simplex::{self, Simplex, TmRank};
use segconn::verify::{self, Suite, SuiteParams};
use segconn::Segment;

/// Scans visiting more segments than this need `--force`.
const FORCE_THRESHOLD: u128 = 1 << 28;

#[derive(Parser, Debug)]
#[command(
    name = "segconn",
    version,
    about = "Face-connectivity of Morton and tetrahedral Morton curve segments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Output format; tabular commands default to csv, others to plain text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for exhaustive scans. Results do not depend on it.
    #[arg(long, global = true, env = "SEGCONN_THREADS")]
    threads: Option<usize>,

    /// Run scans beyond the default size limit.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Curve rank of a cube cell (coordinates) or a simplex (anchor and type).
    Encode {
        #[arg(long, short)]
        geometry: String,
        #[arg(long, short)]
        level: u32,
        /// Comma-separated cell coordinates, or the simplex anchor.
        #[arg(long, value_delimiter = ',', required = true)]
        coords: Vec<u64>,
        /// Simplex type.
        #[arg(long = "type")]
        stype: Option<u8>,
    },
    /// Cell coordinates or simplex vertices of a curve rank.
    Decode {
        #[arg(long, short)]
        geometry: String,
        #[arg(long, short)]
        level: u32,
        #[arg(long, short)]
        rank: u128,
    },
    /// Face-connected components of the segment [start, end].
    Components {
        #[arg(long, short)]
        geometry: String,
        #[arg(long, short)]
        level: u32,
        #[arg(long)]
        start: u128,
        #[arg(long)]
        end: u128,
    },
    /// Histogram of component counts over all segments of length >= 2.
    Scan {
        #[arg(long, short)]
        geometry: String,
        #[arg(long, short)]
        level: u32,
    },
    /// Census and connected fraction of segment lengths on the cubical curve.
    Phi {
        #[arg(long, short)]
        dim: u32,
        #[arg(long, short)]
        level: u32,
        /// A single length `l` or an inclusive range `a..b`.
        #[arg(long, conflicts_with = "sample")]
        length: Option<String>,
        /// Number of log-uniformly sampled lengths in [2, 2^(dL)].
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run a named check suite.
    Verify {
        /// One of the suite names listed by `--help`.
        #[arg(value_parser = parse_suite)]
        #[serde(serialize_with = "suite_name")]
        suite: Suite,
        #[arg(long, short)]
        dim: Option<u32>,
        #[arg(long, short)]
        level: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite '{s}'; expected one of {}", names.join(", "))
    })
}

fn suite_name<S: serde::Serializer>(suite: &Suite, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(suite.name())
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or a domain error.
    Usage(String),
    /// A check suite reported failures; the report was already written.
    Verification,
}

impl From<segconn::Error> for Failure {
    fn from(e: segconn::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type CmdResult<T> = Result<T, Failure>;

/// Command output: plain lines, or a table with a frozen header.
enum Output {
    Text(Vec<String>, Vec<Value>),
    Table(Vec<&'static str>, Vec<Vec<String>>, Vec<Value>),
}

fn geometry(s: &str) -> CmdResult<Geometry> {
    Ok(s.parse::<Geometry>()?)
}

fn axis_name(dim: u32, axis: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][axis].to_string()
    } else {
        format!("x{axis}")
    }
}

fn point(dim: u32, p: &[u32; 3]) -> String {
    let parts: Vec<String> = p[..dim as usize].iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn simplex_anchor(dim: u32, coords: &[u64]) -> CmdResult<[u32; 3]> {
    if coords.len() != dim as usize {
        return Err(Failure::Usage(format!(
            "expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    let mut a = [0u32; 3];
    for (slot, &c) in a.iter_mut().zip(coords) {
        *slot =
            u32::try_from(c).map_err(|_| Failure::Usage(format!("coordinate {c} too large")))?;
    }
    Ok(a)
}

fn encode(g: Geometry, level: u32, coords: &[u64], stype: Option<u8>) -> CmdResult<Output> {
    let rank = match g {
        Geometry::Cube { dim } => {
            if stype.is_some() {
                return Err(Failure::Usage("--type applies to simplices only".into()));
            }
            if coords.len() != dim as usize {
                return Err(Failure::Usage(format!(
                    "expected {dim} coordinates, got {}",
                    coords.len()
                )));
            }
            cube::encode(&Coords::new(level, coords.to_vec())?).rank()
        }
        Geometry::Simplex { dim } => {
            let t = stype.ok_or_else(|| Failure::Usage("simplices need --type".into()))?;
            let s = Simplex::new(dim, level, simplex_anchor(dim, coords)?, t)?;
            simplex::tm_rank(&s)?.rank
        }
    };
    Ok(Output::Text(
        vec![rank.to_string()],
        vec![json!({ "rank": rank })],
    ))
}

fn decode(g: Geometry, level: u32, rank: u128) -> CmdResult<Output> {
    match g {
        Geometry::Cube { dim } => {
            let x = cube::decode(&CurveIndex::new(dim, level, rank)?);
            let parts: Vec<String> = x
                .as_slice()
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{}={v}", axis_name(dim, i)))
                .collect();
            Ok(Output::Text(
                vec![parts.join(" ")],
                vec![json!({ "rank": rank, "coords": x.as_slice() })],
            ))
        }
        Geometry::Simplex { dim } => {
            let s = simplex::simplex_at(&TmRank::new(dim, level, rank)?);
            let verts: Vec<String> = s.vertices().iter().map(|v| point(dim, v)).collect();
            let line = format!(
                "type={} anchor={} vertices={}",
                s.simplex_type(),
                point(dim, &s.anchor()),
                verts.join(" ")
            );
            let raw: Vec<Vec<u32>> = s
                .vertices()
                .iter()
                .map(|v| v[..dim as usize].to_vec())
                .collect();
            let row = json!({
                "rank": rank,
                "type": s.simplex_type(),
                "anchor": &s.anchor()[..dim as usize],
                "vertices": raw,
            });
            Ok(Output::Text(vec![line], vec![row]))
        }
    }
}

fn runs_text(runs: &[(u128, u128)]) -> String {
    let parts: Vec<String> = runs
        .iter()
        .map(|&(a, b)| {
            if a == b {
                a.to_string()
            } else {
                format!("{a}-{b}")
            }
        })
        .collect();
    parts.join(",")
}

fn components(g: Geometry, level: u32, start: u128, end: u128) -> CmdResult<Output> {
    let seg = Segment::new(start, end)?;
    seg.check_within(g.element_count(level)?)?;
    let view = MeshView::new(g, level)?;
    let comps = mesh::count_components(&view, &seg)?;
    let mut lines = vec![comps.count.to_string()];
    let mut rows = Vec::new();
    for (i, (runs, size)) in comps.rank_runs().iter().zip(comps.sizes()).enumerate() {
        lines.push(format!(
            "component {i}: size {size} ranks {}",
            runs_text(runs)
        ));
        let pairs: Vec<[u128; 2]> = runs.iter().map(|&(a, b)| [a, b]).collect();
        rows.push(json!({ "component": i, "size": size, "runs": pairs }));
    }
    Ok(Output::Text(lines, rows))
}

/// Prints the size of a long scan and refuses it without `--force`.
fn guard_scan(g: Geometry, level: u32, force: bool) -> CmdResult<()> {
    let n = g.element_count(level)?;
    let segments = n * n.saturating_sub(1) / 2;
    if segments > FORCE_THRESHOLD {
        if !force {
            return Err(Failure::Usage(format!(
                "{g} level {level} scan visits about {segments} segments; rerun with --force"
            )));
        }
        eprintln!("segconn: {g} level {level}: estimated {segments} scan steps");
    }
    Ok(())
}

fn scan(g: Geometry, level: u32, force: bool) -> CmdResult<Output> {
    guard_scan(g, level, force)?;
    let hist = census::scan_distribution(g, level, force)?;
    Ok(histogram_table(&hist))
}

fn ratio_decimal(r: Ratio<u128>) -> String {
    census::decimal(*r.numer(), *r.denom(), 6)
}

fn histogram_table(hist: &ComponentHistogram) -> Output {
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (&k, &(count, _)) in &hist.bins {
        let fraction = ratio_decimal(hist.fraction(k));
        let mean = hist.mean_length(k).map(ratio_decimal).unwrap_or_default();
        values.push(json!({
            "components": k,
            "count": count,
            "fraction": number(&fraction),
            "mean_length": number(&mean),
        }));
        rows.push(vec![k.to_string(), count.to_string(), fraction, mean]);
    }
    Output::Table(
        vec!["components", "count", "fraction", "mean_length"],
        rows,
        values,
    )
}

/// A decimal string as a JSON number.
fn number(s: &str) -> Value {
    s.parse::<f64>().map(Value::from).unwrap_or(Value::Null)
}

fn parse_lengths(spec: &str) -> CmdResult<Vec<u128>> {
    let bad = || Failure::Usage(format!("invalid length '{spec}'; use l or a..b"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u128 = a.trim().parse().map_err(|_| bad())?;
        let b: u128 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        if b - a >= 1 << 20 {
            return Err(Failure::Usage(
                "length ranges are limited to 2^20 entries".into(),
            ));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![spec.trim().parse().map_err(|_| bad())?])
    }
}

fn phi(
    dim: u32,
    level: u32,
    length: Option<&str>,
    sample: Option<usize>,
    seed: u64,
) -> CmdResult<Output> {
    let mut en = Enumerator::new(dim)?;
    let lengths = match (length, sample) {
        (Some(spec), _) => parse_lengths(spec)?,
        (None, Some(k)) => {
            let n = segconn::cube::element_count(dim, level)?;
            if n < 2 {
                return Err(Failure::Usage(
                    "sampling needs at least two elements".into(),
                ));
            }
            census::log_uniform_lengths(k, n, seed)
        }
        (None, None) => return Err(Failure::Usage("give --length or --sample".into())),
    };
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for l in lengths {
        let c = en.enumerate(level, l)?;
        let p = Phi::from_census(&c).to_decimal(6);
        values.push(json!({
            "length": l,
            "n_disconnected": c.disconnected,
            "n_strong": c.strong,
            "n_weak_total": c.weak_total(),
            "phi": number(&p),
        }));
        rows.push(vec![
            l.to_string(),
            c.disconnected.to_string(),
            c.strong.to_string(),
            c.weak_total().to_string(),
            p,
        ]);
    }
    Ok(Output::Table(
        vec![
            "length",
            "n_disconnected",
            "n_strong",
            "n_weak_total",
            "phi",
        ],
        rows,
        values,
    ))
}

fn run_verify(suite: Suite, params: SuiteParams) -> CmdResult<(Output, bool)> {
    let report = verify::run(suite, &params)?;
    let lines = report.checks.iter().map(|c| c.to_string()).collect();
    let values = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "check": c.name,
                "expected": c.expected,
                "actual": c.actual,
                "passed": c.passed,
            })
        })
        .collect();
    Ok((Output::Text(lines, values), report.passed()))
}

fn render(out: Output, format: Option<Format>, config: Value) -> String {
    match (out, format) {
        (Output::Text(_, rows), Some(Format::Json))
        | (Output::Table(_, _, rows), Some(Format::Json)) => {
            let doc = json!({ "config": config, "rows": rows });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        (Output::Text(lines, _), _) => lines.iter().map(|l| format!("{l}\n")).collect(),
        (Output::Table(header, rows, _), _) => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &r.join(",");
                s.push('\n');
            }
            s
        }
    }
}

fn execute(cli: &Cli) -> CmdResult<bool> {
    let force = cli.common.force;
    let (out, passed) = match &cli.command {
        Command::Encode {
            geometry: g,
            level,
            coords,
            stype,
        } => (encode(geometry(g)?, *level, coords, *stype)?, true),
        Command::Decode {
            geometry: g,
            level,
            rank,
        } => (decode(geometry(g)?, *level, *rank)?, true),
        Command::Components {
            geometry: g,
            level,
            start,
            end,
        } => (components(geometry(g)?, *level, *start, *end)?, true),
        Command::Scan { geometry: g, level } => (scan(geometry(g)?, *level, force)?, true),
        Command::Phi {
            dim,
            level,
            length,
            sample,
            seed,
        } => (phi(*dim, *level, length.as_deref(), *sample, *seed)?, true),
        Command::Verify {
            suite,
            dim,
            level,
            samples,
            seed,
        } => run_verify(
            *suite,
            SuiteParams {
                dim: *dim,
                level: *level,
                samples: *samples,
                seed: *seed,
                force,
            },
        )?,
    };
    let mut config = serde_json::to_value(&cli.command).expect("config");
    if let Value::Object(map) = &mut config {
        map.insert("force".into(), Value::from(force));
    }
    let text = render(out, cli.common.format, config);
    match &cli.common.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    if passed {
        Ok(true)
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("segconn: cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("segconn: {msg}");
            ExitCode::from(2)
        }
    }
}
