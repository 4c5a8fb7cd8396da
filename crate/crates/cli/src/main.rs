//! `covrad`: covering-radius bounds for spherical designs.
//!
//! Subcommands: lower, upper, table, quadrature, verify. Lower bounds render
//! truncated to 6 digits, upper bounds rounded up in the fourth digit; JSON
//! output always carries the raw full-precision values as well.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use covrad::adjacent::AdjacentSystem;
use covrad::config::Config;
use covrad::lowerbound::{
    combined_lower_bound, dgs_bound, fl_bound, DesignSpec, LowerBoundError, LowerBoundReport,
};
use covrad::oracle::{measure_covering, verify_strength, PointSet};
use covrad::tables::{
    ceil4, compute_table1_row, compute_table2_row, truncate6, TABLE1, TABLE2,
};
use covrad::upperbound::{
    antipodal_3_upper, antipodal_5_upper, optimal_upper_4design, search_upper_bound,
    UpperBoundError, UpperBoundResult,
};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DIFF: u8 = 3;

#[derive(Parser)]
#[command(name = "covrad", version, about = "Covering-radius bounds for spherical designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Seed for randomized procedures (verification directions, descent
    /// restarts).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Iteration tolerance override for the branch refinement.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Evaluation budget override per optimization half-step.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Signed-measure parameter; must lie in [-1, 0). The boundary -1 means
    /// no refinement.
    #[arg(long, global = true, default_value_t = -0.97, allow_hyphen_values = true)]
    ell: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bounds on rho(C) for a (n, tau, |C|) design hypothesis.
    Lower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        /// Cardinality |C|.
        #[arg(long)]
        m: u64,
        /// Report only the bound valid under the assumption ell <= t_1(y).
        #[arg(long)]
        assume_ell_le_t1: bool,
    },
    /// Upper bounds on rho(C).
    Upper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        m: u64,
        /// Use the antipodal variants (even cardinality, symmetric set).
        #[arg(long)]
        antipodal: bool,
    },
    /// Recompute a reference table; `--diff` compares against the embedded
    /// golden copy.
    Table {
        /// Which table: 1 or 2.
        which: u8,
        #[arg(long)]
        diff: bool,
    },
    /// Dump the positive quadrature rule for (n, k, ell).
    Quadrature {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Verify the strength of a point set loaded from a file.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        tau: usize,
        /// Also measure the covering radius of the loaded set.
        #[arg(long)]
        measure: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: msg.into() }
    }

    fn internal(msg: impl Into<String>) -> Self {
        Self { code: EXIT_INTERNAL, message: msg.into() }
    }

    fn diff(msg: impl Into<String>) -> Self {
        Self { code: EXIT_DIFF, message: msg.into() }
    }
}

impl From<LowerBoundError> for Failure {
    fn from(e: LowerBoundError) -> Self {
        match e {
            LowerBoundError::CardinalityBelowFloor { .. }
            | LowerBoundError::OddStrength(_)
            | LowerBoundError::ZeroOutsideWindow { .. } => Failure::invalid(e.to_string()),
            LowerBoundError::Adjacent(covrad::adjacent::AdjacentError::InvalidEll(msg)) => {
                Failure::invalid(format!("ell rejected: {msg}"))
            }
            other => Failure::internal(other.to_string()),
        }
    }
}

impl From<UpperBoundError> for Failure {
    fn from(e: UpperBoundError) -> Self {
        match e {
            UpperBoundError::Precondition(_) | UpperBoundError::DegreeExceedsStrength { .. } => {
                Failure::invalid(e.to_string())
            }
            other => Failure::internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = Config::default();
    cfg.seed = cli.seed;
    if let Some(tol) = cli.tol {
        cfg.iter_tol = tol;
    }
    if let Some(budget) = cli.budget {
        cfg.optimizer_budget = budget;
    }
    match run(&cli, &cfg) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, cfg: &Config) -> Result<String, Failure> {
    match &cli.command {
        Command::Lower { n, tau, m, assume_ell_le_t1 } => {
            cmd_lower(*n, *tau, *m, cli.ell, *assume_ell_le_t1, cli.format, cfg)
        }
        Command::Upper { n, tau, m, antipodal } => {
            cmd_upper(*n, *tau, *m, *antipodal, cli.format, cfg)
        }
        Command::Table { which, diff } => cmd_table(*which, *diff, cli.format, cfg),
        Command::Quadrature { n, k } => cmd_quadrature(*n, *k, cli.ell, cli.format),
        Command::Verify { file, tau, measure } => {
            cmd_verify(file, *tau, *measure, cli.format, cfg)
        }
    }
}

#[derive(Serialize)]
struct LowerOut {
    mode: &'static str,
    dimension: usize,
    strength: usize,
    cardinality: u64,
    ell: f64,
    fl_bound_raw: f64,
    fl_bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_kk_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_kk: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<LowerBoundReport>,
}

fn trunc6_str(x: f64) -> String {
    format!("{:.6}", truncate6(x))
}

fn cmd_lower(
    n: usize,
    tau: usize,
    m: u64,
    ell: f64,
    assume: bool,
    format: Format,
    cfg: &Config,
) -> Result<String, Failure> {
    if n < 2 {
        return Err(Failure::invalid("dimension must be at least 2"));
    }
    if !(-1.0..0.0).contains(&ell) {
        return Err(Failure::invalid(format!("ell = {ell} outside [-1, 0)")));
    }
    let floor = dgs_bound(n, tau);
    if m < floor {
        return Err(Failure::invalid(format!(
            "cardinality {m} below the design floor D({n},{tau}) = {floor}"
        )));
    }
    let fl = fl_bound::<f64>(n, tau);
    let boundary = ell == -1.0;
    let even = tau % 2 == 0;

    let out = if assume {
        if !even {
            return Err(Failure::invalid(
                "--assume-ell-le-t1 needs an even strength (the signed-measure bound)",
            ));
        }
        let system = AdjacentSystem::<f64>::new(n, tau / 2, ell).map_err(|e| match e {
            covrad::adjacent::AdjacentError::InvalidEll(msg) => Failure::invalid(msg),
            other => Failure::internal(other.to_string()),
        })?;
        let t_kk = system.largest_zero();
        LowerOut {
            mode: "assume-ell-le-t1",
            dimension: n,
            strength: tau,
            cardinality: m,
            ell,
            fl_bound_raw: fl,
            fl_bound: trunc6_str(fl),
            t_kk_raw: Some(t_kk),
            t_kk: Some(trunc6_str(t_kk)),
            worst_case_raw: Some(t_kk),
            worst_case: Some(trunc6_str(t_kk)),
            report: None,
        }
    } else if boundary || !even {
        LowerOut {
            mode: "fl-only",
            dimension: n,
            strength: tau,
            cardinality: m,
            ell,
            fl_bound_raw: fl,
            fl_bound: trunc6_str(fl),
            t_kk_raw: None,
            t_kk: None,
            worst_case_raw: Some(fl),
            worst_case: Some(trunc6_str(fl)),
            report: None,
        }
    } else {
        let spec = DesignSpec::new(n, tau, m)?;
        let report = combined_lower_bound(&spec, ell, cfg)?;
        let worst = report.worst_case_bound;
        LowerOut {
            mode: "combined",
            dimension: n,
            strength: tau,
            cardinality: m,
            ell,
            fl_bound_raw: report.t_fl,
            fl_bound: trunc6_str(report.t_fl),
            t_kk_raw: Some(report.t_kk_adjacent),
            t_kk: Some(trunc6_str(report.t_kk_adjacent)),
            worst_case_raw: worst,
            worst_case: worst.map(trunc6_str),
            report: Some(report),
        }
    };

    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("n,strength,cardinality,ell,mode,fl_bound,worst_case\n");
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                out.dimension,
                out.strength,
                out.cardinality,
                out.ell,
                out.mode,
                out.fl_bound,
                out.worst_case.as_deref().unwrap_or("infeasible"),
            ));
            Ok(s.trim_end().to_string())
        }
        Format::Md => {
            let mut s = format!(
                "lower bounds for (n={}, tau={}, |C|={}), ell = {}\n\n",
                out.dimension, out.strength, out.cardinality, out.ell
            );
            s.push_str(&format!("- universal bound: {}\n", out.fl_bound));
            if let Some(t) = &out.t_kk {
                s.push_str(&format!("- refined bound if ell <= t1(y): {t}\n"));
            }
            match (&out.worst_case, out.mode) {
                (Some(w), "combined") => s.push_str(&format!("- worst-case bound: {w}\n")),
                (Some(w), "assume-ell-le-t1") => {
                    s.push_str(&format!("- bound under the assumption: {w}\n"))
                }
                (Some(w), _) => s.push_str(&format!("- bound: {w}\n")),
                (None, _) => s.push_str("- all branches infeasible (nonexistence signal)\n"),
            }
            if let Some(report) = &out.report {
                s.push_str(&format!(
                    "- m(C) = {}{}\n\n| case | j | s | bound | status |\n|---|---|---|---|---|\n",
                    report.m_c,
                    if report.m_c_clamped { " (clamped to n)" } else { "" }
                ));
                for b in &report.branches {
                    s.push_str(&format!(
                        "| {:?} | {} | {:.9} | {} | {:?} |\n",
                        b.case,
                        b.j,
                        b.s,
                        trunc6_str(b.bound),
                        b.status
                    ));
                }
            }
            Ok(s.trim_end().to_string())
        }
    }
}

#[derive(Serialize)]
struct UpperOut {
    dimension: usize,
    strength: usize,
    cardinality: u64,
    antipodal: bool,
    bound_raw: f64,
    bound: String,
    result: UpperBoundResult,
}

fn cmd_upper(
    n: usize,
    tau: usize,
    m: u64,
    antipodal: bool,
    format: Format,
    cfg: &Config,
) -> Result<String, Failure> {
    if n < 2 {
        return Err(Failure::invalid("dimension must be at least 2"));
    }
    if tau < 2 && !(antipodal && tau >= 1) {
        return Err(Failure::invalid("strength must be at least 2"));
    }
    let floor = dgs_bound(n, tau);
    if m < floor {
        return Err(Failure::invalid(format!(
            "cardinality {m} below the design floor D({n},{tau}) = {floor}"
        )));
    }
    let result = match (tau, antipodal) {
        (3, true) => antipodal_3_upper(n, m)?,
        (5, true) => antipodal_5_upper(n, m)?,
        (4, false) => optimal_upper_4design(n, m)?,
        _ => search_upper_bound::<f64>(n, tau, m, antipodal, cfg)?,
    };
    let out = UpperOut {
        dimension: n,
        strength: tau,
        cardinality: m,
        antipodal,
        bound_raw: result.bound,
        bound: format!("{:.4}", ceil4(result.bound)),
        result,
    };
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("n,strength,cardinality,antipodal,method,upper_bound,radius\n");
            s.push_str(&format!(
                "{},{},{},{},{:?},{},{:.9}\n",
                out.dimension,
                out.strength,
                out.cardinality,
                out.antipodal,
                out.result.method,
                out.bound,
                out.result.radius
            ));
            Ok(s.trim_end().to_string())
        }
        Format::Md => {
            let mut s = format!(
                "upper bound for (n={}, tau={}, |C|={}){}\n\n",
                out.dimension,
                out.strength,
                out.cardinality,
                if out.antipodal { " [antipodal]" } else { "" }
            );
            s.push_str(&format!("- method: {:?}\n", out.result.method));
            s.push_str(&format!("- bound: {} (raw {:.9})\n", out.bound, out.bound_raw));
            s.push_str(&format!("- radius: {:.9}\n", out.result.radius));
            if let Some((a, b)) = out.result.params {
                s.push_str(&format!("- parameters: a = {a:.9}, b = {b:.9}\n"));
            }
            if out.result.clamped {
                s.push_str("- note: equation root exceeded 1; clamped\n");
            }
            Ok(s.trim_end().to_string())
        }
    }
}

#[derive(Serialize)]
struct Table1Out {
    n: usize,
    cardinality: u64,
    strength: usize,
    ell: f64,
    fl_bound_raw: f64,
    fl_bound: String,
    new_bound_raw: f64,
    new_bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_fl: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_new: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_new: Option<f64>,
}

#[derive(Serialize)]
struct Table2Out {
    n: usize,
    cardinality: u64,
    m_c: u64,
    fl_bound_raw: f64,
    fl_bound: String,
    lower_raw: f64,
    lower: String,
    upper_raw: f64,
    upper: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_m_c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_upper: Option<f64>,
}

fn cmd_table(which: u8, diff: bool, format: Format, cfg: &Config) -> Result<String, Failure> {
    match which {
        1 => cmd_table1(diff, format),
        2 => cmd_table2(diff, format, cfg),
        other => Err(Failure::invalid(format!("unknown table {other}; use 1 or 2"))),
    }
}

fn cmd_table1(diff: bool, format: Format) -> Result<String, Failure> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for golden in TABLE1.iter() {
        let c = compute_table1_row(golden).map_err(|e| Failure::internal(e.to_string()))?;
        let mut row = Table1Out {
            n: c.dimension,
            cardinality: c.cardinality,
            strength: c.strength,
            ell: c.ell,
            fl_bound_raw: c.fl_bound_raw,
            fl_bound: trunc6_str(c.fl_bound_raw),
            new_bound_raw: c.new_bound_raw,
            new_bound: trunc6_str(c.new_bound_raw),
            golden_fl: None,
            golden_new: None,
            delta_new: None,
        };
        if diff {
            row.golden_fl = Some(golden.fl_bound);
            row.golden_new = Some(golden.new_bound);
            row.delta_new = Some(c.new_bound_raw - golden.new_bound);
            let fl_ok = (truncate6(c.fl_bound_raw) - golden.fl_bound).abs() < 1e-9;
            let new_ok = (truncate6(c.new_bound_raw) - golden.new_bound).abs() < 1e-9;
            if !fl_ok || !new_ok {
                failures.push(format!(
                    "(n={}, tau={}, ell={}): fl {} vs {}, new {} vs {}",
                    c.dimension,
                    c.strength,
                    c.ell,
                    row.fl_bound,
                    golden.fl_bound,
                    row.new_bound,
                    golden.new_bound
                ));
            }
        }
        rows.push(row);
    }
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "table": 1,
            "rows": rows,
            "diff": diff,
            "failures": failures,
        }))
        .expect("serializable"),
        Format::Csv => {
            let mut s = String::from("n,cardinality,strength,ell,fl_bound,new_bound\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.cardinality, r.strength, r.ell, r.fl_bound, r.new_bound
                ));
            }
            s.trim_end().to_string()
        }
        Format::Md => {
            let mut s = String::from(
                "| n | |C| | tau | ell | universal bound | new bound |\n|---|---|---|---|---|---|\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.n, r.cardinality, r.strength, r.ell, r.fl_bound, r.new_bound
                ));
            }
            if diff {
                s.push_str(&format!("\n{} rows, {} failures\n", rows.len(), failures.len()));
                for f in &failures {
                    s.push_str(&format!("- {f}\n"));
                }
            }
            s.trim_end().to_string()
        }
    };
    if diff && !failures.is_empty() {
        eprintln!("{body}");
        return Err(Failure::diff(format!("{} table-1 cells outside tolerance", failures.len())));
    }
    Ok(body)
}

fn cmd_table2(diff: bool, format: Format, cfg: &Config) -> Result<String, Failure> {
    // rows are independent; compute them concurrently, collect in order
    let computed: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = TABLE2
            .iter()
            .map(|golden| {
                scope.spawn(move || compute_table2_row(golden.dimension, golden.cardinality, cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("row thread")).collect()
    });

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (golden, result) in TABLE2.iter().zip(computed) {
        let c = result.map_err(|e| Failure::internal(e.to_string()))?;
        let mut row = Table2Out {
            n: c.dimension,
            cardinality: c.cardinality,
            m_c: c.m_c,
            fl_bound_raw: c.fl_bound_raw,
            fl_bound: trunc6_str(c.fl_bound_raw),
            lower_raw: c.lower_raw,
            lower: trunc6_str(c.lower_raw),
            upper_raw: c.upper_raw,
            upper: format!("{:.4}", ceil4(c.upper_raw)),
            golden_m_c: None,
            golden_lower: None,
            golden_upper: None,
            delta_lower: None,
            delta_upper: None,
        };
        if diff {
            row.golden_m_c = Some(golden.m_c);
            row.golden_lower = Some(golden.lower);
            row.golden_upper = Some(golden.upper);
            row.delta_lower = Some(c.lower_raw - golden.lower);
            row.delta_upper = Some(c.upper_raw - golden.upper);
            let m_ok = c.m_c == golden.m_c;
            let lower_ok = (truncate6(c.lower_raw) - golden.lower).abs() <= 2e-4
                && c.lower_raw >= golden.lower - 1e-4;
            let upper_ok = (ceil4(c.upper_raw) - golden.upper).abs() < 1e-9;
            if !m_ok || !lower_ok || !upper_ok {
                failures.push(format!(
                    "(n={}, M={}): m {} vs {}, lower {} vs {} (d={:+.2e}), upper {} vs {}",
                    c.dimension,
                    c.cardinality,
                    c.m_c,
                    golden.m_c,
                    row.lower,
                    golden.lower,
                    c.lower_raw - golden.lower,
                    row.upper,
                    golden.upper
                ));
            }
        }
        rows.push(row);
    }
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "table": 2,
            "ell": -0.97,
            "rows": rows,
            "diff": diff,
            "failures": failures,
        }))
        .expect("serializable"),
        Format::Csv => {
            let mut s = String::from("n,cardinality,m_c,fl_bound,lower_bound,upper_bound\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.cardinality, r.m_c, r.fl_bound, r.lower, r.upper
                ));
            }
            s.trim_end().to_string()
        }
        Format::Md => {
            let mut s = String::from(
                "| n | |C| | m(C) | universal bound | lower (ell=-0.97) | upper |\n|---|---|---|---|---|---|\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.n, r.cardinality, r.m_c, r.fl_bound, r.lower, r.upper
                ));
            }
            if diff {
                s.push_str(&format!("\n{} rows, {} failures\n", rows.len(), failures.len()));
                for f in &failures {
                    s.push_str(&format!("- {f}\n"));
                }
            }
            s.trim_end().to_string()
        }
    };
    if diff && !failures.is_empty() {
        eprintln!("{body}");
        return Err(Failure::diff(format!("{} table-2 cells outside tolerance", failures.len())));
    }
    Ok(body)
}

fn cmd_quadrature(n: usize, k: usize, ell: f64, format: Format) -> Result<String, Failure> {
    if n < 2 || k < 1 {
        return Err(Failure::invalid("need n >= 2 and k >= 1"));
    }
    let system = AdjacentSystem::<f64>::new(n, k, ell).map_err(|e| match e {
        covrad::adjacent::AdjacentError::InvalidEll(msg) => Failure::invalid(msg),
        other => Failure::internal(other.to_string()),
    })?;
    let rule = system.quadrature().map_err(|e| Failure::internal(e.to_string()))?;
    let payload = json!({
        "n": n,
        "k": k,
        "ell": ell,
        "nodes": rule.nodes,
        "weights": rule.weights,
        "valid_strict": rule.valid_strict,
    });
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&payload).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("node,weight\n");
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                s.push_str(&format!("{x:.15},{w:.15}\n"));
            }
            Ok(s.trim_end().to_string())
        }
        Format::Md => {
            let mut s = format!(
                "quadrature rule for n={n}, k={k}, ell={ell} (strict: {})\n\n| node | weight |\n|---|---|\n",
                rule.valid_strict
            );
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                s.push_str(&format!("| {x:.15} | {w:.15} |\n"));
            }
            Ok(s.trim_end().to_string())
        }
    }
}

fn cmd_verify(
    file: &PathBuf,
    tau: usize,
    measure: bool,
    format: Format,
    cfg: &Config,
) -> Result<String, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", file.display())))?;
    let ps = PointSet::<f64>::from_text(&text).map_err(|e| Failure::invalid(e.to_string()))?;
    let verdict = verify_strength(&ps, tau, 200, 1e-9, cfg.seed);
    let covering = if measure { Some(measure_covering(&ps, cfg)) } else { None };
    let payload = json!({
        "file": file.display().to_string(),
        "points": ps.len(),
        "dimension": ps.dimension(),
        "antipodal": ps.is_antipodal(),
        "strength_tested": tau,
        "pass": verdict.pass,
        "worst_residual": verdict.worst_residual,
        "worst_degree": verdict.worst_degree,
        "covering": covering,
    });
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&payload).expect("serializable"),
        Format::Csv => format!(
            "file,points,dimension,tau,pass,worst_residual\n{},{},{},{},{},{:e}",
            file.display(),
            ps.len(),
            ps.dimension(),
            tau,
            verdict.pass,
            verdict.worst_residual
        ),
        Format::Md => {
            let mut s = format!(
                "{}: {} points in dimension {}{}\n\nstrength {} check: {} (worst residual {:.3e} at degree {})",
                file.display(),
                ps.len(),
                ps.dimension(),
                if ps.is_antipodal() { ", antipodal" } else { "" },
                tau,
                if verdict.pass { "pass" } else { "fail" },
                verdict.worst_residual,
                verdict.worst_degree
            );
            if let Some(c) = &covering {
                s.push_str(&format!(
                    "\nmeasured rho = {:.9} with {} attaining points",
                    c.rho, c.attaining
                ));
            }
            s
        }
    };
    if verdict.pass {
        Ok(body)
    } else {
        println!("{body}");
        Err(Failure::internal(format!(
            "strength {tau} verification failed (worst residual {:.3e})",
            verdict.worst_residual
        )))
    }
}
