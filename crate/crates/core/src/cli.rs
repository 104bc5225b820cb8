//! Command-line front end. Reports are `key: value` lines in a fixed
//! order; `--json` switches to a machine-readable document.
//!
//! Exit codes: 0 success, 1 input error, 2 undecided within budget,
//! 3 certificate or audit failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{bundle, verify_bundle, Bundle, BundleReport};
use crate::colouring::residual_support;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{self, ArrayFile, ColouringFile};
use crate::matchings::{core_of, defect_exhaustive, defect_from, enumerate_perfect_matchings};
use crate::measures::{audit_inequalities, measure, InequalityAudit, MeasureOptions, MeasureReport, Verdict};
use crate::search::Budget;
use crate::superposition::{build, ConstructionPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "snarkdefect", version, about = "Uncolourability measures of cubic graphs and large-girth snark construction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute invariants of every graph in a file.
    Measure(MeasureArgs),
    /// Colouring defect with an optimal 3-array and its core.
    Defect(DefectArgs),
    /// Build a cyclically 5-edge-connected snark of the given girth.
    BuildSnark(BuildArgs),
    /// Check a certificate bundle, colouring file or array file.
    Verify(VerifyArgs),
    /// Measure and audit every graph in a directory.
    AuditCorpus(AuditArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Search limit in branching nodes per decision (unlimited if absent).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget }
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub defect: bool,
    #[arg(long)]
    pub oddness: bool,
    #[arg(long)]
    pub resistance: bool,
    #[arg(long)]
    pub density: bool,
    #[arg(long)]
    pub cyclic: bool,
    /// Largest cut size probed for cyclic connectivity.
    #[arg(long, default_value_t = 6)]
    pub cyclic_limit: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DefectArgs {
    pub path: PathBuf,
    /// Cross-check against plain enumeration of all triples.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub girth: Option<usize>,
    /// Registry cage name or path to a graph file.
    #[arg(long)]
    pub cage: Option<String>,
    /// Construction plan (TOML); command-line values override it.
    #[arg(long)]
    pub plan: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output prefix for the graph, bundle, plan and near-colouring files.
    #[arg(long)]
    pub prefix: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// Bundle, colouring or array file (JSON).
    pub certificate: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    pub dir: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

/// Text output: ordered `key: value` lines.
#[derive(Default)]
struct Lines(Vec<(String, String)>);

impl Lines {
    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

struct Output {
    text: String,
    code: i32,
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let (result, target) = match &cli.command {
        Command::Measure(a) => (cmd_measure(a), &a.common.out),
        Command::Defect(a) => (cmd_defect(a), &a.common.out),
        Command::BuildSnark(a) => (cmd_build(a), &a.common.out),
        Command::Verify(a) => (cmd_verify(a), &a.common.out),
        Command::AuditCorpus(a) => (cmd_audit(a), &a.common.out),
    };
    match result {
        Ok(o) => {
            let written = match target {
                Some(p) => std::fs::write(p, &o.text).map_err(Error::from),
                None => out.write_all(o.text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => o.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificateMismatch(_) => EXIT_CERTIFICATE,
        _ => EXIT_INPUT,
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serialises") + "\n"
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match io::detect(&text) {
        Some(io::Format::Native) => Ok(vec![Graph::new(io::parse_native(&text)?)?]),
        _ => io::parse_graphs(&text),
    }
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn fmt_edges(edges: &[usize]) -> String {
    let parts: Vec<String> = edges.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn report_lines(lines: &mut Lines, prefix: &str, r: &MeasureReport) {
    let p = |k: &str| format!("{prefix}{k}");
    lines.push(p("vertices"), r.vertices);
    lines.push(p("edges"), r.edges);
    lines.push(p("bridgeless"), r.bridgeless);
    lines.push(p("colourable"), fmt_opt(r.colourable));
    lines.push(p("perfect-matchings"), fmt_opt(r.perfect_matchings));
    lines.push(p("girth"), fmt_opt(r.girth));
    for (k, v) in [
        ("defect", r.defect),
        ("oddness", r.oddness),
        ("resistance", r.resistance),
        ("density", r.density),
        ("cyclic-connectivity", r.cyclic_connectivity),
    ] {
        if let Some(v) = v {
            lines.push(p(k), v);
        }
    }
    let w = &r.witnesses;
    if let Some(a) = &w.defect_array {
        for (i, m) in a.members().iter().enumerate() {
            lines.push(p(&format!("witness.array.{}", i + 1)), fmt_edges(&m.to_vec()));
        }
    }
    if let Some(c) = &w.core_edges {
        lines.push(p("witness.core"), fmt_edges(c));
    }
    if let Some(m) = &w.oddness_matching {
        lines.push(p("witness.oddness-matching"), fmt_edges(&m.to_vec()));
    }
    if let Some(e) = &w.resistance_edges {
        lines.push(p("witness.resistance-edges"), fmt_edges(e));
    }
    if let Some([a, b]) = &w.density_pair {
        lines.push(p("witness.density-pair.1"), fmt_edges(&a.to_vec()));
        lines.push(p("witness.density-pair.2"), fmt_edges(&b.to_vec()));
    }
    if let Some(c) = &w.girth_cycle {
        lines.push(p("witness.girth-cycle"), fmt_edges(c));
    }
    if let Some(c) = &w.cyclic_cut {
        lines.push(p("witness.cyclic-cut"), fmt_edges(&c.edges));
    }
}

fn cmd_measure(a: &MeasureArgs) -> Result<Output> {
    let graphs = read_graphs(&a.path)?;
    let any = a.defect || a.oddness || a.resistance || a.density || a.cyclic;
    let opts = if a.all || !any {
        MeasureOptions {
            cyclic_limit: a.cyclic_limit,
            budget: a.common.budget(),
            ..MeasureOptions::all()
        }
    } else {
        MeasureOptions {
            defect: a.defect,
            oddness: a.oddness,
            resistance: a.resistance,
            density: a.density,
            cyclic: a.cyclic,
            cyclic_limit: a.cyclic_limit,
            budget: a.common.budget(),
        }
    };
    let reports: Vec<MeasureReport> = graphs.iter().map(|g| measure(g, &opts)).collect::<Result<_>>()?;
    let undecided = reports.iter().any(MeasureReport::has_undecided);
    let text = if a.common.json {
        json(&reports)
    } else {
        let mut lines = Lines::default();
        lines.push("file", a.path.display());
        lines.push("graphs", reports.len());
        for (i, r) in reports.iter().enumerate() {
            let prefix = if reports.len() == 1 { String::new() } else { format!("graph.{i}.") };
            report_lines(&mut lines, &prefix, r);
        }
        lines.render()
    };
    Ok(Output {
        text,
        code: if undecided { EXIT_UNDECIDED } else { EXIT_OK },
    })
}

#[derive(Serialize)]
struct DefectReport {
    defect: usize,
    array: [Vec<usize>; 3],
    classes: [usize; 4],
    core: Vec<usize>,
    core_cyclic: bool,
    oracle: Option<usize>,
}

fn cmd_defect(a: &DefectArgs) -> Result<Output> {
    let graphs = read_graphs(&a.path)?;
    let g = graphs.first().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "no graph in file".into(),
    })?;
    let pms = enumerate_perfect_matchings(g)?;
    let d = defect_from(g, &pms)?;
    let core = core_of(g, &d.witness);
    let oracle = if a.oracle { Some(defect_exhaustive(g)?) } else { None };
    let r = DefectReport {
        defect: d.defect,
        array: d.witness.members().map(|m| m.to_vec()),
        classes: d.witness.class_sizes(),
        core: core.edges.to_vec(),
        core_cyclic: core.cyclic,
        oracle,
    };
    let agree = oracle.is_none_or(|o| o == d.defect);
    let text = if a.common.json {
        json(&r)
    } else {
        let mut lines = Lines::default();
        lines.push("defect", r.defect);
        for (i, m) in r.array.iter().enumerate() {
            lines.push(format!("array.{}", i + 1), fmt_edges(m));
        }
        lines.push("classes", format!("{:?}", r.classes));
        lines.push("core", fmt_edges(&r.core));
        lines.push("core-cyclic", r.core_cyclic);
        if let Some(o) = oracle {
            lines.push("oracle", format!("{o} ({})", if agree { "agrees" } else { "DISAGREES" }));
        }
        lines.render()
    };
    Ok(Output {
        text,
        code: if agree { EXIT_OK } else { EXIT_CERTIFICATE },
    })
}

fn check_lines(lines: &mut Lines, r: &BundleReport) {
    for c in &r.checks {
        lines.push(
            format!("check.{}", c.name),
            format!("{} ({})", if c.pass { "pass" } else { "FAIL" }, c.detail),
        );
    }
    lines.push("verified", r.valid());
}

fn cmd_build(a: &BuildArgs) -> Result<Output> {
    let mut plan = match &a.plan {
        Some(p) => ConstructionPlan::from_toml(&std::fs::read_to_string(p)?)?,
        None => {
            let g = a.girth.ok_or_else(|| Error::Unsupported("--girth or --plan is required".into()))?;
            match &a.cage {
                Some(c) => ConstructionPlan::new(g, c.clone()),
                None => ConstructionPlan::for_girth(g)?,
            }
        }
    };
    if let Some(g) = a.girth {
        plan.girth = g;
    }
    if let Some(c) = &a.cage {
        plan.cage = c.clone();
    }
    if let Some(s) = a.seed {
        plan.seed = s;
    }
    let budget = a.common.budget();
    let c = build(&plan, budget)?;
    let b = bundle(&c, budget)?;
    let report = verify_bundle(&c.graph, &b, budget)?;
    let prefix = a
        .prefix
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("snark-g{}", plan.girth)));
    let with = |ext: &str| {
        let mut s = prefix.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    let mut files = vec![
        (with(".s6"), io::to_sparse6(&c.graph) + "\n"),
        (with(".bundle.json"), b.to_json() + "\n"),
        (with(".plan.toml"), c.plan.to_toml()?),
    ];
    if let Some(n) = &c.near_colouring {
        let f = ColouringFile::near(&c.graph, n, vec![c.u, c.v]);
        files.push((with(".near.json"), json(&f)));
    }
    for (path, text) in &files {
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let text = if a.common.json {
        #[derive(Serialize)]
        struct BuildReport<'a> {
            vertices: usize,
            edges: usize,
            files: Vec<String>,
            claims: &'a crate::certificate::Claims,
            report: &'a BundleReport,
        }
        json(&BuildReport {
            vertices: c.graph.vertex_count(),
            edges: c.graph.edge_count(),
            files: files.iter().map(|(p, _)| p.display().to_string()).collect(),
            claims: &b.claims,
            report: &report,
        })
    } else {
        let mut lines = Lines::default();
        lines.push("girth", plan.girth);
        lines.push("cage", &c.cage.name);
        lines.push("vertices", c.graph.vertex_count());
        lines.push("edges", c.graph.edge_count());
        lines.push("checksum", &b.graph_checksum);
        for (p, _) in &files {
            lines.push("wrote", p.display());
        }
        check_lines(&mut lines, &report);
        lines.push("claim.snark", b.claims.snark);
        lines.push("claim.oddness", fmt_opt(b.claims.oddness));
        lines.push("claim.resistance", fmt_opt(b.claims.resistance));
        lines.push("claim.defect", format!(">={}", b.claims.defect_at_least));
        lines.render()
    };
    Ok(Output {
        text,
        code: if report.valid() { EXIT_OK } else { EXIT_CERTIFICATE },
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    let g = io::read_graph(&a.graph)?;
    let text = std::fs::read_to_string(&a.certificate)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let budget = a.common.budget();
    let parse_err = |e: serde_json::Error| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    let report = if value.get("snark").is_some() {
        verify_bundle(&g, &Bundle::from_json(&text)?, budget)?
    } else if value.get("members").is_some() {
        let f: ArrayFile = serde_json::from_value(value).map_err(parse_err)?;
        let arr = f.load(&g)?;
        let mut r = BundleReport::default();
        r.checks.push(crate::certificate::Check {
            name: "array".into(),
            pass: arr.bookkeeping_holds(),
            detail: format!("classes {:?}", arr.class_sizes()),
        });
        r
    } else if value.get("colours").is_some() {
        let f: ColouringFile = serde_json::from_value(value).map_err(parse_err)?;
        let c = f.load(&g)?;
        let support = residual_support(g.multipole(), c.colours());
        let mut r = BundleReport::default();
        r.checks.push(crate::certificate::Check {
            name: "colouring".into(),
            pass: support == f.improper,
            detail: if support == f.improper {
                if support.is_empty() {
                    "proper".to_string()
                } else {
                    format!("proper except at vertices {}", fmt_edges(&support))
                }
            } else {
                format!("improper at vertices {}, declared {}", fmt_edges(&support), fmt_edges(&f.improper))
            },
        });
        r
    } else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "unrecognised certificate file".into(),
        });
    };
    let out = if a.common.json {
        json(&report)
    } else {
        let mut lines = Lines::default();
        check_lines(&mut lines, &report);
        lines.render()
    };
    Ok(Output {
        text: out,
        code: if report.valid() { EXIT_OK } else { EXIT_CERTIFICATE },
    })
}

#[derive(Clone, Debug, Serialize)]
struct AuditEntry {
    name: String,
    error: Option<String>,
    report: Option<MeasureReport>,
    audit: Option<InequalityAudit>,
    verdict: String,
}

fn audit_graph(name: String, g: &Graph, budget: Budget) -> AuditEntry {
    let opts = MeasureOptions {
        budget,
        cyclic_limit: 6,
        ..MeasureOptions::all()
    };
    match measure(g, &opts) {
        Err(e) => AuditEntry {
            name,
            error: Some(e.to_string()),
            report: None,
            audit: None,
            verdict: "error".into(),
        },
        Ok(r) => {
            let audit = audit_inequalities(&r);
            let verdict = if audit.violations() > 0 {
                "fail"
            } else if r.colourable == Some(true) {
                "colourable"
            } else if audit.inconclusive() > 0 || r.has_undecided() {
                "undecided"
            } else {
                "pass"
            };
            AuditEntry {
                name,
                error: None,
                report: Some(r),
                audit: Some(audit),
                verdict: verdict.into(),
            }
        }
    }
}

fn cmd_audit(a: &AuditArgs) -> Result<Output> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&a.dir)
        .map_err(|e| Error::Io(format!("{}: {e}", a.dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let budget = a.common.budget();
    let entries: Vec<AuditEntry> = paths
        .par_iter()
        .flat_map_iter(|p| {
            let file = p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
            match read_graphs(p) {
                Err(e) => vec![AuditEntry {
                    name: file,
                    error: Some(e.to_string()),
                    report: None,
                    audit: None,
                    verdict: "parse-error".into(),
                }],
                Ok(gs) => {
                    let single = gs.len() == 1;
                    gs.iter()
                        .enumerate()
                        .map(|(i, g)| {
                            let name = if single { file.clone() } else { format!("{file}#{i}") };
                            audit_graph(name, g, budget)
                        })
                        .collect()
                }
            }
        })
        .collect();
    let count = |v: &str| entries.iter().filter(|e| e.verdict == v).count();
    let (fail, undecided, errors) = (count("fail"), count("undecided"), count("parse-error") + count("error"));
    let text = if a.common.json {
        json(&entries)
    } else {
        let mut lines = Lines::default();
        for e in &entries {
            let detail = match (&e.report, &e.error) {
                (Some(r), _) => {
                    let mut s = format!(
                        "n={} d={} w={} r={} dn={} girth={} cc={}",
                        r.vertices,
                        fmt_opt(r.defect),
                        fmt_opt(r.oddness),
                        fmt_opt(r.resistance),
                        fmt_opt(r.density),
                        fmt_opt(r.girth),
                        fmt_opt(r.cyclic_connectivity)
                    );
                    if let Some(a) = &e.audit {
                        for row in a.rows.iter().filter(|r| r.verdict == Verdict::Fail) {
                            s.push_str(&format!(" violated=\"{}\"", row.name));
                        }
                    }
                    s
                }
                (None, Some(err)) => err.clone(),
                (None, None) => String::new(),
            };
            lines.push(format!("row.{}", e.name), format!("{} {detail}", e.verdict));
        }
        lines.push("files", paths.len());
        lines.push("graphs", entries.len() - count("parse-error"));
        lines.push("snarks", entries.iter().filter(|e| e.report.as_ref().is_some_and(|r| r.colourable == Some(false))).count());
        lines.push("colourable", count("colourable"));
        lines.push("passed", count("pass"));
        lines.push("violations", fail);
        lines.push("undecided", undecided);
        lines.push("errors", errors);
        lines.render()
    };
    let code = if fail > 0 {
        EXIT_CERTIFICATE
    } else if undecided > 0 {
        EXIT_UNDECIDED
    } else if errors > 0 {
        EXIT_INPUT
    } else {
        EXIT_OK
    };
    Ok(Output { text, code })
}
