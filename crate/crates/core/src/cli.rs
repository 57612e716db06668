//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so it can be driven from
//! tests as well as from the binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or parse error, 3 size
//! cap exceeded, 4 a proved criterion disagreed with brute force.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diagram::{CoxeterGraph, DiagramKind, NodeSet};
use crate::lattice::{CrossSectionLattice, LatticeError};
use crate::poset::PosetError;
use crate::report;
use crate::theorems::{self, CriterionReport, ScanSummary, TheoremError};

/// Largest node count for `build`, `analyze` and `export-dot`.
pub const SINGLE_NODE_CAP: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "crosslat", version, about = "Cross section lattices over Coxeter graphs")]
pub struct Cli {
    /// File of `key=value` lines supplying defaults for the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the elements of one lattice.
    Build(Target),
    /// Run every criterion and oracle on one lattice.
    Analyze(Target),
    /// Run a criterion or conjecture scan over a family.
    Scan(ScanArgs),
    /// Hasse diagram of one lattice as DOT.
    ExportDot(Target),
}

#[derive(Debug, Args)]
pub struct Target {
    /// `path A 5`, `cycle 6` or `custom 4: 1-2,2-3,3-4`.
    #[arg(long)]
    pub graph: Option<String>,
    /// Node set such as `{1,2,5}`.
    #[arg(long)]
    pub j0: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub kind: ScanKind,
    /// `path A`, `path B`, `path C` or `cycle`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Charpoly,
    Chains,
    DistributiveCount,
    Supersolvable,
    Theorems,
    Circuit,
    Smooth,
    InnerProduct,
    Flags,
}

impl ScanKind {
    /// Scans of proved statements; a disagreement there is a defect.
    fn asserts_theorems(self) -> bool {
        matches!(
            self,
            ScanKind::Supersolvable | ScanKind::Theorems | ScanKind::Circuit | ScanKind::Smooth | ScanKind::Flags
        )
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Breach(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Breach(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Cap(m) | Failure::Breach(m) | Failure::Io(m) => m,
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        let msg = e.to_string();
        match e {
            TheoremError::ScanCap { .. }
            | TheoremError::Lattice(LatticeError::NodeCap { .. } | LatticeError::ElementCap { .. })
            | TheoremError::Poset(PosetError::SizeLimit { .. })
            | TheoremError::Lattice(LatticeError::Poset(PosetError::SizeLimit { .. })) => Failure::Cap(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        TheoremError::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Values after merging flags over the config file.
#[derive(Debug, Default)]
struct Settings {
    graph: Option<String>,
    j0: Option<String>,
    family: Option<String>,
    n_max: Option<usize>,
    n_min: Option<usize>,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
}

fn read_config(path: &PathBuf) -> Result<Settings, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut s = Settings::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Failure::Usage(format!("{}:{}: cannot read `{raw}`", path.display(), no + 1));
        let (k, v) = line.split_once('=').ok_or_else(bad)?;
        let v = v.trim().to_string();
        let num = |v: &str| v.parse::<usize>().map_err(|_| bad());
        match k.trim().replace('_', "-").as_str() {
            "graph" => s.graph = Some(v),
            "j0" => s.j0 = Some(v),
            "family" => s.family = Some(v),
            "n-max" => s.n_max = Some(num(&v)?),
            "n-min" => s.n_min = Some(num(&v)?),
            "jobs" => s.jobs = Some(num(&v)?),
            "out" => s.out = Some(PathBuf::from(v)),
            "format" => s.format = Some(Format::from_str(&v, true).map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    Ok(s)
}

fn parse_graph(s: &Settings) -> Result<CoxeterGraph, Failure> {
    let text = s.graph.as_deref().ok_or_else(|| Failure::Usage("--graph is required".into()))?;
    text.parse().map_err(|e: crate::diagram::DiagramError| Failure::Usage(e.to_string()))
}

fn parse_target(s: &Settings) -> Result<(CoxeterGraph, NodeSet), Failure> {
    let g = parse_graph(s)?;
    let j0: NodeSet = s
        .j0
        .as_deref()
        .unwrap_or("{}")
        .parse()
        .map_err(|e: crate::diagram::DiagramError| Failure::Usage(e.to_string()))?;
    if g.node_count() > SINGLE_NODE_CAP {
        return Err(Failure::Cap(format!(
            "{} nodes exceed the single-lattice cap of {SINGLE_NODE_CAP}",
            g.node_count()
        )));
    }
    Ok((g, j0))
}

fn parse_family(text: Option<&str>) -> Result<DiagramKind, Failure> {
    let t = text.unwrap_or("path A").trim().to_ascii_lowercase();
    let words: Vec<&str> = t.split_whitespace().collect();
    match words.as_slice() {
        ["path"] | ["path", "a"] => Ok(DiagramKind::PathA),
        ["path", "b"] => Ok(DiagramKind::PathB),
        ["path", "c"] => Ok(DiagramKind::PathC),
        ["cycle"] => Ok(DiagramKind::Cycle),
        _ => Err(Failure::Usage(format!("unknown family `{t}`"))),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let mut s = match &cli.config {
        Some(p) => read_config(p)?,
        None => Settings::default(),
    };
    if cli.format.is_some() {
        s.format = cli.format;
    }
    if cli.out.is_some() {
        s.out = cli.out.clone();
    }
    if cli.jobs.is_some() {
        s.jobs = cli.jobs;
    }
    match &cli.command {
        Command::Build(t) | Command::Analyze(t) | Command::ExportDot(t) => {
            if t.graph.is_some() {
                s.graph = t.graph.clone();
            }
            if t.j0.is_some() {
                s.j0 = t.j0.clone();
            }
        }
        Command::Scan(a) => {
            if a.family.is_some() {
                s.family = a.family.clone();
            }
            if a.n_max.is_some() {
                s.n_max = a.n_max;
            }
            if a.n_min.is_some() {
                s.n_min = a.n_min;
            }
        }
    }

    let (body, breach) = match &cli.command {
        Command::Build(_) => (build(&s)?, None),
        Command::Analyze(_) => analyze(&s)?,
        Command::ExportDot(_) => {
            let (g, j0) = parse_target(&s)?;
            (report::to_dot(&CrossSectionLattice::enumerate(&g, j0)?), None)
        }
        Command::Scan(a) => {
            let jobs = s.jobs.unwrap_or(0);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let (body, breach, note) = pool.install(|| scan(a.kind, &s))?;
            if let Some(note) = note {
                let _ = writeln!(err, "{note}");
            }
            (body, breach)
        }
    };
    match &s.out {
        Some(path) => fs::write(path, body.as_bytes())?,
        None => out.write_all(body.as_bytes())?,
    }
    match breach {
        Some(msg) => Err(Failure::Breach(msg)),
        None => Ok(()),
    }
}

fn build(s: &Settings) -> Result<String, Failure> {
    let (g, j0) = parse_target(s)?;
    let l = CrossSectionLattice::enumerate(&g, j0)?;
    Ok(match s.format.unwrap_or(Format::Text) {
        Format::Text => l.dump(),
        Format::Json => pretty(&report::lattice_json(&l)),
        Format::Csv => report::lattice_csv(&l)?,
        Format::Dot => report::to_dot(&l),
    })
}

fn analyze(s: &Settings) -> Result<(String, Option<String>), Failure> {
    let (g, j0) = parse_target(s)?;
    let a = report::analyze(&g, j0)?;
    let body = match s.format.unwrap_or(Format::Text) {
        Format::Text => a.to_text(),
        Format::Json => pretty(&serde_json::to_value(&a).expect("serializable")),
        Format::Csv => a.to_csv(),
        Format::Dot => report::to_dot(&CrossSectionLattice::enumerate(&g, j0)?),
    };
    let breaches = a.breaches();
    Ok((body, (!breaches.is_empty()).then(|| breaches.join("; "))))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn scan(kind: ScanKind, s: &Settings) -> Result<(String, Option<String>, Option<String>), Failure> {
    let family = parse_family(s.family.as_deref())?;
    let n_max = s.n_max.unwrap_or(6);
    let rows: Vec<CriterionReport> = match kind {
        ScanKind::Charpoly => theorems::conjecture_charpoly_scan(family, n_max)?,
        ScanKind::Chains => theorems::conjecture_chains_scan(family, n_max)?,
        ScanKind::DistributiveCount => theorems::scan_distributive_count(n_max)?,
        ScanKind::Supersolvable => theorems::scan_supersolvable(family, n_max)?,
        ScanKind::Theorems => theorems::scan_theorems(family, n_max)?,
        ScanKind::Circuit => theorems::scan_circuit(s.n_min.unwrap_or(3), n_max)?,
        ScanKind::Smooth => theorems::scan_smooth(n_max)?,
        ScanKind::InnerProduct => theorems::scan_inner_product(family, n_max)?,
        ScanKind::Flags => theorems::scan_flags(family, n_max)?,
    };
    let summary = ScanSummary::of(&rows);
    let mut note = None;
    let body = match s.format.unwrap_or(Format::Text) {
        Format::Text => report::rows_text(&rows),
        Format::Json => pretty(&report::rows_json(&rows)),
        Format::Csv => {
            note = Some(format!("summary: {summary}"));
            report::rows_csv(&rows)?
        }
        Format::Dot => return Err(Failure::Usage("scan output cannot be DOT".into())),
    };
    let breach = (kind.asserts_theorems() && summary.disagree > 0).then(|| {
        let first = rows.iter().find(|r| r.is_counterexample()).expect("counted");
        format!(
            "{} disagreement(s); first: {} j0={} {}",
            summary.disagree, first.graph, first.j0_mask, first.criterion
        )
    });
    Ok((body, breach, note))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["crosslat"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn build_counts() {
        let (code, out, _) = call(&["build", "--graph", "path A 3", "--j0", "{2}"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
        let (code, out, _) = call(&["build", "--graph", "path A 2", "--j0", "{}"]);
        assert_eq!((code, out.lines().count()), (0, 4));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["build", "--graph", "pth 3"]).0, 2);
        assert_eq!(call(&["build", "--graph", "path A 3", "--j0", "{x}"]).0, 2);
        assert_eq!(call(&["build", "--graph", "path A 30"]).0, 3);
        assert_eq!(call(&["scan", "charpoly", "--n-max", "13"]).0, 3);
        assert_eq!(call(&["scan", "charpoly", "--family", "hexagon"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn deterministic_scan() {
        let a = call(&["scan", "charpoly", "--n-max", "4", "--format", "csv", "--jobs", "3"]);
        let b = call(&["scan", "charpoly", "--n-max", "4", "--format", "csv", "--jobs", "1"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        // 2 + 4 + 8 + 16 configurations plus the header
        assert_eq!(a.1.lines().count(), 31);
    }
}
