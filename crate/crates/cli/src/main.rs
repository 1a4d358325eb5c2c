//! operlab: exact dormant-operator computations from the command line.
//!
//! One subcommand per library area. Data goes to stdout as JSON (or CSV for
//! tables), logs go to stderr, and identical inputs with the same seed give
//! byte-identical output. Exit codes: 0 success, 1 usage or data error, 2
//! internal consistency failure.

use clap::{Parser, Subcommand};
use operlab_core::dormancy::{
    default_rank_window, dormant_by_division, dormant_by_pcurvature, dormant_by_solution_rank,
    exponents_at, singular_points,
};
use operlab_core::duality::{dualize, self_duality_kind};
use operlab_core::fusion::{build_ring, factorization_check_seeded, verlinde_degree_seeded};
use operlab_core::json as codec;
use operlab_core::modsearch::{
    count_by_radii, enumerate_dormant, verify_bc_bijection, DegreeTable, SearchSpec,
    DEFAULT_BUDGET,
};
use operlab_core::radii::{enumerate_classes, enumerate_symmetric_classes, RadiusClass};
use operlab_core::{Error, Fp, PointP1, Prime, Result, SelfDualityKind};
use serde_json::{json, Map, Value};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "operlab",
    version,
    about = "Exact computations with dormant differential operators over F_p(x)"
)]
struct Cli {
    /// Config file with "key = value" lines (budget, workers, seed).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cap on the dormancy tests a search may schedule.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for the search grid (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for the character-splitting weights.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress progress logs on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Test an operator document for dormancy with three independent oracles.
    Dormant {
        /// Operator JSON document (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// Compute the dual operator and report its certification checks.
    Dualize {
        /// Operator JSON document (stdin when omitted).
        file: Option<PathBuf>,
    },
    /// List radius classes, or apply an involution to one.
    Radii {
        #[arg(long)]
        p: u64,
        /// Cardinality of the exponent sets (required when listing).
        #[arg(long)]
        n: Option<usize>,
        /// Restrict the listing to negation-fixed classes.
        #[arg(long)]
        sym: bool,
        /// Apply tri, comp or neg to the class of REP, e.g. --apply neg 0,1
        #[arg(long, num_args = 2, value_names = ["OP", "REP"])]
        apply: Option<Vec<String>>,
    },
    /// Enumerate dormant operators or tabulate dormancy-locus degrees.
    Search {
        #[arg(long)]
        p: u64,
        /// Operator order.
        #[arg(long)]
        n: usize,
        /// Comma-separated marked points, e.g. "0,1,inf".
        #[arg(long, default_value = "0,1,inf")]
        points: String,
        /// Semicolon-joined radius prescription, e.g. "0,1;0,1;0,2".
        #[arg(long)]
        radii: Option<String>,
        /// Self-duality filter: none, orthogonal or symplectic.
        #[arg(long = "self-dual", default_value = "none")]
        self_dual: String,
        /// What to print: operators or table.
        #[arg(long, default_value = "table")]
        emit: String,
        /// Print the table as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Build the ring of a degree table and evaluate degree formulas.
    Fusion {
        /// Degree table document, or search output carrying one.
        #[arg(long)]
        table: PathBuf,
        /// Evaluate a degree: "g=G,rho=KEY" with KEY like "0,1;0,1;0,1".
        #[arg(long)]
        verlinde: Option<String>,
        /// Check a four-point table against gluings of the ring.
        #[arg(long = "factorization-check")]
        factorization_check: Option<PathBuf>,
    },
    /// Cross-check the orthogonal-symplectic enumeration bijection.
    BcVerify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: usize,
        /// Number of marked points.
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
}

struct RunConfig {
    budget: u64,
    workers: Option<usize>,
    seed: u64,
}

impl RunConfig {
    fn load(
        path: Option<&Path>,
        budget: Option<u64>,
        workers: Option<usize>,
        seed: Option<u64>,
    ) -> Result<RunConfig> {
        let mut cfg = RunConfig { budget: DEFAULT_BUDGET, workers: None, seed: 42 };
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
            for (idx, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap().trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::InvalidSpec(format!("config line {}: expected key = value", idx + 1))
                })?;
                let (key, value) = (key.trim(), value.trim());
                let parse = |what: &str| -> Result<u64> {
                    value.parse().map_err(|_| {
                        Error::InvalidSpec(format!("config {what} must be an integer"))
                    })
                };
                match key {
                    "budget" => cfg.budget = parse("budget")?,
                    "workers" => cfg.workers = Some(parse("workers")? as usize),
                    "seed" => cfg.seed = parse("seed")?,
                    other => {
                        return Err(Error::InvalidSpec(format!(
                            "unknown config key \"{other}\""
                        )))
                    }
                }
            }
        }
        if let Ok(value) = std::env::var("OPERLAB_BUDGET") {
            cfg.budget = value.parse().map_err(|_| {
                Error::InvalidSpec("OPERLAB_BUDGET must be an integer".into())
            })?;
        }
        if let Some(b) = budget {
            cfg.budget = b;
        }
        if let Some(w) = workers {
            cfg.workers = Some(w);
        }
        if let Some(s) = seed {
            cfg.seed = s;
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code: u8 = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::OracleDisagreement(msg)) => {
            eprintln!("internal consistency failure: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = RunConfig::load(cli.config.as_deref(), cli.budget, cli.workers, cli.seed)?;
    if let Some(workers) = cfg.workers {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    let quiet = cli.quiet;
    match cli.cmd {
        Cmd::Dormant { file } => cmd_dormant(file.as_deref()),
        Cmd::Dualize { file } => cmd_dualize(file.as_deref()),
        Cmd::Radii { p, n, sym, apply } => cmd_radii(p, n, sym, apply),
        Cmd::Search { p, n, points, radii, self_dual, emit, csv } => {
            cmd_search(&cfg, quiet, p, n, &points, radii.as_deref(), &self_dual, &emit, csv)
        }
        Cmd::Fusion { table, verlinde, factorization_check } => {
            cmd_fusion(&cfg, quiet, &table, verlinde.as_deref(), factorization_check.as_deref())
        }
        Cmd::BcVerify { p, ell, m, r } => cmd_bc_verify(&cfg, quiet, p, ell, m, r),
    }
}

fn read_document(file: Option<&Path>) -> Result<Value> {
    let text = match file {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::InvalidDocument(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidDocument(format!("stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidDocument(format!("not JSON: {e}")))
}

fn emit(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable document"));
}

fn cmd_dormant(file: Option<&Path>) -> Result<()> {
    let d = codec::operator_from_value(&read_document(file)?)?;
    let division = dormant_by_division(&d)?;
    let curvature = dormant_by_pcurvature(&d)?.0;
    let rank = dormant_by_solution_rank(&d, default_rank_window(&d))?;
    let mut exponents = Map::new();
    if division && curvature && rank {
        for pt in singular_points(&d) {
            let e = exponents_at(&d, pt)?;
            exponents.insert(pt.to_string(), json!(e.elems()));
        }
    }
    emit(&json!({
        "division": division,
        "pcurvature": curvature,
        "solution_rank": rank,
        "exponents": exponents,
    }));
    if division != curvature || division != rank {
        return Err(Error::OracleDisagreement(format!(
            "division {division}, curvature {curvature}, solution rank {rank}"
        )));
    }
    Ok(())
}

fn cmd_dualize(file: Option<&Path>) -> Result<()> {
    let d = codec::operator_from_value(&read_document(file)?)?;
    let pair = dualize(&d)?;
    let central = pair.central();
    let two_sided =
        pair.dual.mul(&pair.operator) == central && pair.operator.mul(&pair.dual) == central;
    let dual_kind = self_duality_kind(&pair.dual);
    let self_dual_dual = match self_duality_kind(&d) {
        SelfDualityKind::None => true,
        SelfDualityKind::Orthogonal => dual_kind == SelfDualityKind::Symplectic,
        SelfDualityKind::Symplectic => dual_kind == SelfDualityKind::Orthogonal,
    };
    emit(&json!({
        "dual": codec::operator_to_value(&pair.dual),
        "kind": dual_kind.to_string(),
        "checks": { "two_sided": two_sided, "self_dual_dual": self_dual_dual },
    }));
    if !two_sided || !self_dual_dual {
        return Err(Error::OracleDisagreement("dual fails its certification".into()));
    }
    Ok(())
}

fn parse_rep(prime: Prime, s: &str) -> Result<RadiusClass> {
    let mut classes = codec::radii_key_parse(prime, s)?;
    if classes.len() != 1 {
        return Err(Error::InvalidSpec(format!(
            "expected a single representative, got \"{s}\""
        )));
    }
    Ok(classes.pop().unwrap())
}

fn cmd_radii(p: u64, n: Option<usize>, sym: bool, apply: Option<Vec<String>>) -> Result<()> {
    let prime = Prime::new(p)?;
    if let Some(args) = apply {
        let class = parse_rep(prime, &args[1])?;
        let image = match args[0].as_str() {
            "tri" => class.tri(),
            "comp" => class.complemented(),
            "neg" => class.negated(),
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown involution \"{other}\"; use tri, comp or neg"
                )))
            }
        };
        emit(&codec::class_to_value(&image));
        return Ok(());
    }
    let n = n.ok_or_else(|| Error::InvalidSpec("--n is required when listing classes".into()))?;
    let mut classes =
        if sym { enumerate_symmetric_classes(prime, n)? } else { enumerate_classes(prime, n)? };
    classes.sort();
    let reps: Vec<Value> = classes.iter().map(|c| json!(c.rep().elems())).collect();
    emit(&json!({ "p": p, "n": n, "count": classes.len(), "classes": reps }));
    Ok(())
}

fn parse_points(prime: Prime, s: &str) -> Result<Vec<PointP1>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "inf" {
                Ok(PointP1::Infinity)
            } else {
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad point \"{tok}\"")))?;
                Ok(PointP1::Finite(Fp::new(v, prime)))
            }
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<SelfDualityKind> {
    match s {
        "none" => Ok(SelfDualityKind::None),
        "orthogonal" => Ok(SelfDualityKind::Orthogonal),
        "symplectic" => Ok(SelfDualityKind::Symplectic),
        other => Err(Error::InvalidSpec(format!(
            "unknown self-duality filter \"{other}\""
        ))),
    }
}

fn print_table_csv(table: &DegreeTable) -> Result<()> {
    let io_err = |e: csv::Error| Error::InvalidDocument(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["radii", "count"]).map_err(io_err)?;
    for (key, count) in &table.entries {
        w.write_record([codec::radii_key_string(key), count.to_string()]).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::InvalidDocument(format!("csv output: {e}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cfg: &RunConfig,
    quiet: bool,
    p: u64,
    n: usize,
    points: &str,
    radii: Option<&str>,
    self_dual: &str,
    emit_kind: &str,
    csv_out: bool,
) -> Result<()> {
    let prime = Prime::new(p)?;
    let spec = SearchSpec {
        prime,
        order: n,
        points: parse_points(prime, points)?,
        radii: match radii {
            None => None,
            Some(s) => Some(codec::radii_key_parse(prime, s)?),
        },
        self_dual: parse_kind(self_dual)?,
        budget: cfg.budget,
    };
    let t0 = Instant::now();
    match emit_kind {
        "operators" => {
            if csv_out {
                return Err(Error::InvalidSpec("--csv applies to --emit table only".into()));
            }
            let found = enumerate_dormant(&spec)?;
            if !quiet {
                eprintln!("search: {} operators in {:.2?}", found.len(), t0.elapsed());
            }
            let ops: Vec<Value> =
                found.iter().map(|it| codec::operator_to_value(&it.operator)).collect();
            emit(&json!({ "spec": codec::spec_to_value(&spec), "operators": ops }));
        }
        "table" => {
            let table = count_by_radii(&spec)?;
            if !quiet {
                eprintln!("search: {} table entries in {:.2?}", table.entries.len(), t0.elapsed());
            }
            if csv_out {
                print_table_csv(&table)?;
            } else {
                let doc = codec::table_to_value(&table);
                let entries = doc.get("table").cloned().unwrap_or(Value::Null);
                emit(&json!({ "spec": codec::spec_to_value(&spec), "table": entries }));
            }
        }
        other => return Err(Error::InvalidSpec(format!("unknown emit mode \"{other}\""))),
    }
    Ok(())
}

fn parse_verlinde(prime: Prime, s: &str) -> Result<(u64, Vec<RadiusClass>)> {
    let misshapen = || Error::InvalidSpec(format!("expected \"g=G,rho=KEY\", got \"{s}\""));
    let body = s.strip_prefix("g=").ok_or_else(misshapen)?;
    let (genus, rho) = body.split_once(",rho=").ok_or_else(misshapen)?;
    let genus: u64 = genus.trim().parse().map_err(|_| misshapen())?;
    let rho = codec::radii_key_parse(prime, rho.trim())?;
    Ok((genus, rho))
}

fn cmd_fusion(
    cfg: &RunConfig,
    quiet: bool,
    table: &Path,
    verlinde: Option<&str>,
    fact: Option<&Path>,
) -> Result<()> {
    let table = codec::table_from_value(&read_document(Some(table))?)?;
    let ring = build_ring(&table)?;
    if !quiet {
        eprintln!("fusion: ring of rank {} over p = {}", ring.rank(), ring.prime.get());
    }
    let mut out = Map::new();
    out.insert(
        "ring".into(),
        json!({
            "p": ring.prime.get(),
            "n": ring.order,
            "kind": ring.kind.to_string(),
            "rank": ring.rank(),
            "basis": ring.basis.iter().map(codec::rep_string).collect::<Vec<_>>(),
            "casimir": ring.casimir(),
        }),
    );
    if let Some(spec) = verlinde {
        let (genus, rho) = parse_verlinde(ring.prime, spec)?;
        let (degree, raw) = verlinde_degree_seeded(&ring, genus, &rho, cfg.seed)?;
        out.insert(
            "verlinde".into(),
            json!({
                "genus": genus,
                "rho": codec::radii_key_string(&rho),
                "degree": degree,
                "raw": raw,
            }),
        );
    }
    let mut failure = None;
    if let Some(path) = fact {
        let table4 = codec::table_from_value(&read_document(Some(path))?)?;
        let report = factorization_check_seeded(&ring, &table4, cfg.seed)?;
        if !report.passed() {
            failure = Some(Error::OracleDisagreement(format!(
                "factorization check found {} mismatches",
                report.mismatches.len()
            )));
        }
        out.insert(
            "factorization".into(),
            json!({
                "checked": report.checked,
                "mismatches": report.mismatches,
                "passed": report.passed(),
            }),
        );
    }
    emit(&Value::Object(out));
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn cmd_bc_verify(
    cfg: &RunConfig,
    quiet: bool,
    p: u64,
    ell: usize,
    m: usize,
    r: usize,
) -> Result<()> {
    let prime = Prime::new(p)?;
    let t0 = Instant::now();
    let report = verify_bc_bijection(prime, ell, m, r, cfg.budget)?;
    if !quiet {
        eprintln!(
            "bc-verify: {} orthogonal against {} symplectic operators in {:.2?}",
            report.so_count,
            report.sp_count,
            t0.elapsed()
        );
    }
    let mut pairs = Map::new();
    for (key, (so, sp)) in &report.pairs_by_radii {
        pairs.insert(codec::radii_key_string(key), json!([so, sp]));
    }
    emit(&json!({
        "p": p, "ell": ell, "m": m, "r": r,
        "so_count": report.so_count,
        "sp_count": report.sp_count,
        "bijection": report.bijection,
        "pairs": pairs,
        "mismatches": report.mismatches,
    }));
    if !report.bijection {
        return Err(Error::OracleDisagreement(
            "enumerated orthogonal and symplectic sides do not match".into(),
        ));
    }
    Ok(())
}
