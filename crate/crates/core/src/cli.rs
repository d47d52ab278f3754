//! Command-line front end. [`run`] parses arguments and renders output
//! without touching the process, so it can be tested in-process; the
//! `threefold` binary only forwards the result.
//!
//! Exit codes: 0 success, 1 computation error or failed check, 2 usage error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basket_solver::{self, LinearConstraint, Preset, ShapeRange, SolverScenario, DEFAULT_BOUND};
use crate::Catalog;
use crate::checker::{check_family, check_hypersurface_numeric, CheckReport};
use crate::error::Error;
use crate::hilbert::{ci_series, DEFAULT_TRUNCATION};
use crate::json::render;
use crate::model::{Basket, FamilyRecord, NumericalData, WeightSystem};
use crate::moduli::moduli_report;
use crate::noether::{non12pencil_diagnostics, noether_row, noether_table, NoetherRow};
use crate::reid_rr::{plurigenus_table, DEFAULT_M_MAX};
use crate::scalar::Scalar;
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "threefold", version, about = "Exact invariants of canonical 3-folds in weighted projective spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert series prefix of a weighted hypersurface or complete intersection.
    Hilbert(HilbertArgs),
    /// Plurigenera from Riemann–Roch.
    Rr(RrArgs),
    /// Search baskets and chi(O) under plurigenus constraints.
    Solve(SolveArgs),
    /// Automorphism and moduli dimensions of a hypersurface family.
    Moduli(ModuliArgs),
    /// Volume lower bounds for p_g >= 5.
    Noether(NoetherArgs),
    /// Numeric hypotheses for a hypersurface family.
    Check(CheckArgs),
    /// The embedded catalog of families.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit a single JSON document.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(long)]
    weights: WeightSystem,
    /// Degree of a defining equation; one value or two (comma separated or repeated).
    #[arg(long = "degree", alias = "degrees", value_delimiter = ',', required = true)]
    degrees: Vec<u64>,
    /// Number of coefficients c_0, c_1, ... to print.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION + 1)]
    terms: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct RrArgs {
    #[arg(long, allow_hyphen_values = true)]
    k3: Rational,
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long)]
    pg: u64,
    /// Basket such as 2x1/2,1x1/3 (empty or `none` for Gorenstein).
    #[arg(long, default_value = "")]
    basket: Basket,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_parser = ["pg2", "pg3", "pg4"], conflicts_with_all = ["k3", "pg", "shape", "constraints", "chi_range"])]
    preset: Option<String>,
    /// Multiplicity bound (and |chi| bound) of the preset search box.
    #[arg(long, requires = "preset")]
    bound: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    k3: Option<Rational>,
    #[arg(long)]
    pg: Option<u64>,
    /// Basket types with multiplicity ranges, e.g. 1/2:0-20,1/3:1-20.
    #[arg(long, value_delimiter = ',')]
    shape: Vec<ShapeRange>,
    /// Inclusive chi range LO:HI.
    #[arg(long, allow_hyphen_values = true)]
    chi_range: Option<String>,
    /// Constraints separated by ';', e.g. "P2<=4;P3>=P2+3".
    #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
    constraints: Vec<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ModuliArgs {
    #[arg(long)]
    weights: WeightSystem,
    #[arg(long)]
    degree: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct NoetherArgs {
    #[arg(long, conflicts_with = "table", required_unless_present = "table")]
    pg: Option<u64>,
    /// Inclusive range FROM:TO.
    #[arg(long)]
    table: Option<String>,
    #[arg(long, conflicts_with = "json")]
    tsv: bool,
    /// Also print the proof-internal sub-bounds of the non-(1,2)-pencil case.
    #[arg(long)]
    diagnostics: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_parser = ["x16", "x12", "x10", "x2_10"], conflicts_with_all = ["weights", "degree", "k3", "chi", "pg", "basket"])]
    family: Option<String>,
    #[arg(long, default_value_t = 32)]
    k_max: usize,
    #[arg(long)]
    weights: Option<WeightSystem>,
    #[arg(long)]
    degree: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    k3: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<i64>,
    #[arg(long)]
    pg: Option<u64>,
    #[arg(long)]
    basket: Option<Basket>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Re-derive every catalog number and report mismatches.
    Verify {
        #[arg(long, default_value_t = 32)]
        k_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the catalog records.
    Show {
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {message}\n") }
    }

    fn computation(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_COMPUTATION, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = match cli.command {
        Command::Hilbert(a) => hilbert(a),
        Command::Rr(a) => rr(a),
        Command::Solve(a) => solve(a),
        Command::Moduli(a) => moduli(a),
        Command::Noether(a) => noether(a),
        Command::Check(a) => check(a),
        Command::Catalog(CatalogCommand::Verify { k_max, out }) => catalog_verify(k_max, out.json),
        Command::Catalog(CatalogCommand::Show { out }) => catalog_show(out.json),
    };
    match result {
        Ok(outcome) => outcome,
        Err(Failure::Usage(m)) => Outcome::usage(m),
        Err(Failure::Computation(m)) => Outcome::computation(m),
    }
}

fn hilbert(a: HilbertArgs) -> CmdResult {
    if a.degrees.is_empty() || a.degrees.len() > 2 {
        return Err(Failure::Usage("give one or two degrees".into()));
    }
    if a.terms == 0 {
        return Err(Failure::Usage("--terms must be positive".into()));
    }
    let series = ci_series(&a.weights, &a.degrees, a.terms - 1)?;
    if a.out.json {
        #[derive(Serialize)]
        struct Doc<'a> {
            weights: &'a WeightSystem,
            degrees: &'a [u64],
            #[serde(serialize_with = "crate::json::big_seq_as_numbers")]
            coefficients: &'a [BigUint],
        }
        return Ok(Outcome::ok(render(&Doc {
            weights: &a.weights,
            degrees: &a.degrees,
            coefficients: series.coefficients(),
        })));
    }
    let degs: Vec<String> = a.degrees.iter().map(u64::to_string).collect();
    let mut out = format!("# X_{{{}}} in {}\n# k\tc_k\n", degs.join(","), a.weights);
    for (k, c) in series.coefficients().iter().enumerate() {
        let _ = writeln!(out, "{k}\t{c}");
    }
    Ok(Outcome::ok(out))
}

fn rr(a: RrArgs) -> CmdResult {
    let data = NumericalData::new(a.k3, a.chi, a.pg)?;
    if a.m_max < 2 {
        return Err(Failure::Usage("--m-max must be at least 2".into()));
    }
    let table = plurigenus_table(&data, &a.basket, a.m_max)?;
    if a.out.json {
        let plurigenera: Vec<Value> = std::iter::once(json!({"m": 1, "value": a.pg, "source": "p_g"}))
            .chain(table.values().iter().map(|(m, p)| json!({"m": m, "value": big_json(p)})))
            .collect();
        let doc = json!({
            "data": data,
            "basket": a.basket,
            "plurigenera": plurigenera,
        });
        return Ok(Outcome::ok(render(&doc)));
    }
    let mut out = format!("# {data}, basket {}\n# m\tP_m\n", a.basket);
    let _ = writeln!(out, "1\t{}\t(p_g, input)", a.pg);
    for (m, p) in table.values() {
        let _ = writeln!(out, "{m}\t{p}");
    }
    Ok(Outcome::ok(out))
}

fn parse_range(raw: &str, what: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("{what} must look like LO:HI, got {raw:?}"));
    let (lo, hi) = raw.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn solve(a: SolveArgs) -> CmdResult {
    let (scenario, label): (SolverScenario, String) = match &a.preset {
        Some(name) => {
            let preset: Preset = name.parse()?;
            let bound = a.bound.unwrap_or(DEFAULT_BOUND);
            (preset.scenario(bound), format!("preset {} (bound {bound})", preset.name()))
        }
        None => {
            let (Some(k3), Some(pg)) = (a.k3.clone(), a.pg) else {
                return Err(Failure::Usage("give --preset, or --k3 and --pg with --shape/--constraints".into()));
            };
            let (chi_min, chi_max) = match &a.chi_range {
                Some(r) => parse_range(r, "--chi-range")?,
                None => (-i64::from(DEFAULT_BOUND), i64::from(DEFAULT_BOUND)),
            };
            let constraints = a
                .constraints
                .iter()
                .filter(|c| !c.trim().is_empty())
                .map(|c| c.parse::<LinearConstraint>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let scenario = SolverScenario { k3, pg, shape: a.shape.clone(), chi_min, chi_max, constraints };
            (scenario, "custom scenario".to_string())
        }
    };
    let solutions = basket_solver::solve(&scenario)?;
    let m_max = scenario.max_index();
    if a.out.json {
        let doc = json!({
            "scenario": {
                "k3": scenario.k3.to_string(),
                "pg": scenario.pg,
                "shape": scenario.shape.iter().map(|s| json!({
                    "b": s.entry.b(), "r": s.entry.r(), "min": s.min, "max": s.max,
                })).collect::<Vec<_>>(),
                "chi": [scenario.chi_min, scenario.chi_max],
                "constraints": scenario.constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
            },
            "solutions": solutions.iter().map(|s| json!({
                "multiplicities": s.multiplicities.iter().map(|(e, m)| json!({
                    "b": e.b(), "r": e.r(), "mult": m,
                })).collect::<Vec<_>>(),
                "chi": s.chi,
                "basket": s.basket(),
                "plurigenera": (1..=m_max).map(|m| json!({
                    "m": m, "value": big_json(&s.table.get(m).expect("table covers m_max")),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        return Ok(Outcome::ok(render(&doc)));
    }
    let mut out = format!("# {label}: K^3 = {}, p_g = {}, chi in [{}, {}]\n", scenario.k3, scenario.pg, scenario.chi_min, scenario.chi_max);
    for c in &scenario.constraints {
        let _ = writeln!(out, "# constraint {c}");
    }
    let _ = writeln!(out, "{} solution(s)", solutions.len());
    for s in &solutions {
        let ps: Vec<String> = (2..=m_max)
            .map(|m| format!("P{m}={}", s.table.get(m).expect("table covers m_max")))
            .collect();
        let _ = writeln!(out, "basket {}  chi={}  {}", s.basket(), s.chi, ps.join(" "));
    }
    Ok(Outcome::ok(out))
}

fn moduli(a: ModuliArgs) -> CmdResult {
    let report = moduli_report(&a.weights, a.degree);
    if a.out.json {
        return Ok(Outcome::ok(render(&report)));
    }
    let mut outcome = Outcome::ok(format!("{}\n", report.moduli_dim));
    if report.formula_extrapolated {
        outcome.stderr = format!(
            "note: dim Aut {} = {} is formula-extrapolated (only checked on the catalog ambients)\n",
            a.weights, report.aut_dim
        );
    }
    Ok(outcome)
}

fn noether(a: NoetherArgs) -> CmdResult {
    let rows: Vec<NoetherRow> = match (a.pg, &a.table) {
        (Some(pg), None) => vec![noether_row(pg)?],
        (None, Some(range)) => {
            let (from, to) = parse_range(range, "--table")?;
            let to_u = |x: i64| u64::try_from(x).map_err(|_| Failure::Usage(format!("invalid p_g {x}")));
            noether_table(to_u(from)?, to_u(to)?)?
        }
        _ => return Err(Failure::Usage("give exactly one of --pg or --table".into())),
    };
    let diagnostics = if a.diagnostics {
        rows.iter()
            .map(|r| non12pencil_diagnostics::<Rational>(r.pg).map(|d| (r.pg, d)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    if a.out.json {
        let diag_json = |pg: u64| {
            diagnostics.iter().find(|(p, _)| *p == pg).map(|(_, d)| {
                d.iter()
                    .map(|(label, v)| json!({"case": label, "bound": v.to_string()}))
                    .collect::<Vec<_>>()
            })
        };
        let row_json = |r: &NoetherRow| {
            let mut v = serde_json::to_value(r).expect("row serializes");
            if let Some(d) = diag_json(r.pg) {
                v["proof_internal_sub_bounds"] = Value::from(d);
            }
            v
        };
        let doc = match a.pg {
            Some(_) => row_json(&rows[0]),
            None => json!({ "rows": rows.iter().map(row_json).collect::<Vec<_>>() }),
        };
        return Ok(Outcome::ok(render(&doc)));
    }
    let mut out = String::new();
    if a.tsv {
        out.push_str("pg\tnon_12_pencil\tirrational_pencil\trational_12_pencil\tmin\tminimizing\texpected\texceeds_expected\n");
        for r in &rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.pg,
                r.bounds.non_12_pencil,
                r.bounds.irrational_pencil,
                r.bounds.rational_12_pencil,
                r.min,
                minimizing(r),
                r.expected,
                r.exceeds_expected
            );
        }
    } else {
        let _ = writeln!(
            out,
            "{:>4}  {:>12}  {:>12}  {:>12}  {:>10}  {:>10}  {}",
            "p_g", "non-(1,2)", "irrational", "rat. (1,2)", "min", "expected", "min > expected"
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "{:>4}  {:>12}  {:>12}  {:>12}  {:>10}  {:>10}  {}",
                r.pg,
                r.bounds.non_12_pencil.to_string(),
                r.bounds.irrational_pencil.to_string(),
                r.bounds.rational_12_pencil.to_string(),
                r.min.to_string(),
                r.expected.to_string(),
                if r.exceeds_expected { "yes" } else { "no" }
            );
        }
    }
    for (pg, d) in &diagnostics {
        let _ = writeln!(out, "# p_g = {pg}, proof-internal sub-bounds (not part of the stated bound):");
        for (label, v) in d {
            let _ = writeln!(out, "#   {label}: {v}");
        }
    }
    Ok(Outcome::ok(out))
}

fn minimizing(r: &NoetherRow) -> String {
    r.minimizing.iter().map(|c| c.key()).collect::<Vec<_>>().join(",")
}

fn check(a: CheckArgs) -> CmdResult {
    let report: CheckReport = match &a.family {
        Some(name) => {
            let catalog = Catalog::shipped();
            let family = catalog
                .family(name)
                .ok_or_else(|| Failure::Usage(format!("unknown family {name:?}")))?;
            check_family(family, a.k_max)?
        }
        None => {
            let (Some(w), Some(d), Some(k3), Some(chi), Some(pg)) =
                (&a.weights, a.degree, a.k3.clone(), a.chi, a.pg)
            else {
                return Err(Failure::Usage(
                    "give --family, or all of --weights --degree --k3 --chi --pg [--basket]".into(),
                ));
            };
            let data = NumericalData::new(k3, chi, pg)?;
            check_hypersurface_numeric(w, d, &data, &a.basket.clone().unwrap_or_default(), a.k_max)?
        }
    };
    let passed = report.passed();
    let stdout = if a.out.json {
        render(&json!({ "family": report.family, "checks": report.checks, "passed": passed }))
    } else {
        let mut out = format!("# {}: {}\n", report.family.name, describe(&report.family));
        for c in &report.checks {
            let _ = writeln!(out, "{c}");
        }
        let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "CHECKS FAILED" });
        out
    };
    Ok(Outcome { code: if passed { EXIT_OK } else { EXIT_COMPUTATION }, stdout, stderr: String::new() })
}

fn describe<Q: Scalar>(f: &FamilyRecord<Q>) -> String {
    format!("{}, {}, basket {}", f.label(), f.data, f.basket)
}

fn catalog_verify(k_max: usize, as_json: bool) -> CmdResult {
    let report = Catalog::shipped().verify_all(k_max)?;
    let passed = report.passed();
    let stdout = if as_json {
        let failures: Vec<Value> = report
            .failures()
            .map(|(family, c)| json!({"family": family, "check": c.name, "detail": c.detail}))
            .collect();
        render(&json!({
            "k_max": report.k_max,
            "passed": passed,
            "families": report.families,
            "failures": failures,
        }))
    } else {
        let mut out = String::new();
        for f in &report.families {
            let _ = writeln!(out, "# {} ({})", f.family, f.label);
            for c in &f.checks {
                let _ = writeln!(out, "{c}");
            }
        }
        let failures = report.failures().count();
        let _ = writeln!(
            out,
            "{} families checked up to k = {}, {failures} failure(s)",
            report.families.len(),
            report.k_max
        );
        out
    };
    Ok(Outcome { code: if passed { EXIT_OK } else { EXIT_COMPUTATION }, stdout, stderr: String::new() })
}

fn catalog_show(as_json: bool) -> CmdResult {
    let catalog = Catalog::shipped();
    if as_json {
        return Ok(Outcome::ok(render(&catalog)));
    }
    let mut out = format!("# catalog version {}\n", catalog.version);
    for f in &catalog.families {
        let _ = writeln!(out, "{:<6} {}  moduli dim {}", f.name, describe(f), f.moduli_dim);
        if let Some(parent) = &f.specializes {
            let _ = writeln!(out, "       specialization of {parent}");
        }
    }
    Ok(Outcome::ok(out))
}

fn big_json(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}
