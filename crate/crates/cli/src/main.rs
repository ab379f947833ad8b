mod output;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frobenius_core::bounds::{
    main_bound, main_sufficiency_rhs, roar_bound, roar_sufficiency_rhs,
};
use frobenius_core::constants::{
    a_dependent_discrepancies, chain_checks, ledger, published_table, verify_b1_b3, verify_c3, verify_psi,
    verify_upsilon, ClaimReport,
};
use frobenius_core::curves::{load_ap_table, load_curves, CurveModel, Method};
use frobenius_core::lemmas::{
    digamma_grid, minorant_suite, rankin_domination, sym_power_domination, xi_sum_suite, xi_true_sum_suite,
    SuiteReport,
};
use frobenius_core::minorant::{xi_coefficients, xi_coefficients_reflected, Interval, MinorantSpec};
use frobenius_core::search::{least_angle_in_interval, least_opposite_sign, Scan, SearchReport, TraceSource};

use output::{object, to_value, write_csv, write_json, ReportEnvelope};

/// Explicit least-prime bounds for Frobenius traces and Sato–Tate angles.
#[derive(Parser)]
#[command(name = "frobenius", version)]
struct Cli {
    /// Emit CSV rows instead of a JSON line.
    #[arg(long, global = true)]
    csv: bool,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an explicit bound.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Find the least prime with a property.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Re-verify the numeric claims.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Coefficients of the interval minorant.
    Minorant(MinorantArgs),
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Bound for a prime with a_{E1}(p) a_{E2}(p) < 0.
    OppositeSign {
        /// Product of the two conductors.
        #[arg(long)]
        n: u64,
    },
    /// Bound for a prime with Sato–Tate angle in [alpha, beta].
    Angle {
        #[arg(long)]
        conductor: u64,
        #[command(flatten)]
        interval: IntervalArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct IntervalArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
}

impl IntervalArgs {
    fn interval(self) -> anyhow::Result<Interval> {
        Ok(Interval::new(self.alpha, self.beta)?)
    }
}

#[derive(Args)]
struct ScanArgs {
    /// JSON-lines curve file.
    #[arg(long)]
    curves: PathBuf,
    /// Search limit; defaults to the explicit bound.
    #[arg(long)]
    xmax: Option<u64>,
    /// Precomputed traces, as LABEL=PATH to a p,ap CSV.
    #[arg(long = "ap-table", value_name = "LABEL=PATH")]
    ap_tables: Vec<String>,
    #[arg(long, value_enum, default_value = "brute")]
    method: MethodArg,
    /// Examine primes in parallel blocks of this size.
    #[arg(long)]
    block: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum SearchCmd {
    OppositeSign {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, num_args = 2, value_names = ["LABEL1", "LABEL2"])]
        pair: Vec<String>,
    },
    Angle {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        label: String,
        #[command(flatten)]
        interval: IntervalArgs,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum MethodArg {
    Brute,
    Bsgs,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum VerifyTarget {
    Constants,
    Psi,
    C3,
    B1b3,
    Upsilon,
    Lemmas,
    All,
}

#[derive(Args)]
struct MinorantArgs {
    #[command(flatten)]
    interval: IntervalArgs,
    #[arg(long)]
    m: u32,
    /// Use the reflected minorant; the interval must start at 0 or end at pi.
    #[arg(long)]
    reflect: bool,
    /// Write (theta, chi, S, f) samples on [0, pi] as CSV to this path.
    #[arg(long, value_name = "PATH")]
    emit_plot_data: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

/// Failures that should exit with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

struct Outcome {
    envelope: ReportEnvelope,
    rows: Vec<Value>,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli.command) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            let written = if cli.csv {
                write_csv(&mut stdout, &outcome.rows)
            } else {
                write_json(&mut stdout, &outcome.envelope)
            };
            if let Err(e) = written.and_then(|_| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Bound(b) => cmd_bound(b),
        Command::Search(s) => cmd_search(s),
        Command::Verify { target } => cmd_verify(*target),
        Command::Minorant(m) => cmd_minorant(m),
    }
}

fn single(command: &str, inputs: Value, results: Value) -> Outcome {
    Outcome {
        rows: vec![results.clone()],
        envelope: ReportEnvelope::new(command, inputs, results),
        pass: true,
    }
}

fn cmd_bound(cmd: &BoundCmd) -> anyhow::Result<Outcome> {
    match cmd {
        BoundCmd::OppositeSign { n } => {
            let r = main_bound(*n)?;
            let s = main_sufficiency_rhs(r.log_n, r.x, r.a)?;
            let results = object(vec![("bound", to_value(&r)), ("sufficiency", to_value(&s))]);
            Ok(single("bound opposite-sign", json!({ "n": n }), results))
        }
        BoundCmd::Angle { conductor, interval } => {
            let iv = interval.interval()?;
            let r = roar_bound(*conductor, &iv)?;
            let s = roar_sufficiency_rhs(*conductor, &iv, r.x)?;
            let results = object(vec![("bound", to_value(&r)), ("sufficiency", to_value(&s))]);
            let inputs = json!({ "conductor": conductor, "alpha": interval.alpha, "beta": interval.beta });
            Ok(single("bound angle", inputs, results))
        }
    }
}

fn find_curve<'a>(curves: &'a [CurveModel], label: &str, path: &Path) -> anyhow::Result<&'a CurveModel> {
    curves.iter().find(|c| c.label == label).ok_or_else(|| {
        let known: Vec<_> = curves.iter().map(|c| c.label.as_str()).collect();
        anyhow!(UsageError(format!(
            "unknown label {label:?} in {}; candidates: {}",
            path.display(),
            known.join(", ")
        )))
    })
}

struct Loaded {
    curves: Vec<CurveModel>,
    tables: Vec<(String, frobenius_core::curves::ApTable)>,
}

fn load(scan: &ScanArgs) -> anyhow::Result<Loaded> {
    let curves = load_curves(&scan.curves)?;
    let mut tables = Vec::new();
    for spec in &scan.ap_tables {
        let (label, path) = spec
            .split_once('=')
            .ok_or_else(|| UsageError(format!("--ap-table expects LABEL=PATH, got {spec:?}")))?;
        find_curve(&curves, label, &scan.curves)?;
        let table = load_ap_table(path).with_context(|| format!("reading {path}"))?;
        tables.push((label.to_string(), table));
    }
    Ok(Loaded { curves, tables })
}

fn source<'a>(loaded: &'a Loaded, curve: &'a CurveModel, scan: &ScanArgs) -> TraceSource<'a> {
    let method = match scan.method {
        MethodArg::Brute => Method::Brute,
        MethodArg::Bsgs => Method::Bsgs,
    };
    let mut s = TraceSource::new(curve).with_method(method);
    if let Some((_, t)) = loaded.tables.iter().find(|(l, _)| *l == curve.label) {
        s = s.with_table(t);
    }
    s
}

fn scan_mode(scan: &ScanArgs) -> Scan {
    scan.block.map_or(Scan::Sequential, Scan::Blocks)
}

fn default_xmax(x: f64) -> u64 {
    if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.floor() as u64
    }
}

fn search_outcome(command: &str, inputs: Value, report: &SearchReport, timing: bool) -> Outcome {
    let mut results = to_value(report);
    if timing {
        if let Value::Object(o) = &mut results {
            o.insert("elapsed_seconds".into(), json!(output::round_sig(report.elapsed.as_secs_f64())));
        }
    }
    let mut outcome = single(command, inputs, results);
    if report.found_prime.is_none() {
        outcome.envelope.warnings.push(format!("no witness below {}", report.x_max));
    }
    outcome
}

fn cmd_search(cmd: &SearchCmd) -> anyhow::Result<Outcome> {
    match cmd {
        SearchCmd::OppositeSign { scan, pair } => {
            let loaded = load(scan)?;
            let e1 = find_curve(&loaded.curves, &pair[0], &scan.curves)?;
            let e2 = find_curve(&loaded.curves, &pair[1], &scan.curves)?;
            let (s1, s2) = (source(&loaded, e1, scan), source(&loaded, e2, scan));
            let x_max = match scan.xmax {
                Some(x) => x,
                None => {
                    let log_n = (e1.conductor as f64).ln() + (e2.conductor as f64).ln();
                    default_xmax(frobenius_core::bounds::main_bound_log(log_n)?.x)
                }
            };
            let report = least_opposite_sign(s1, s2, x_max, scan_mode(scan))?;
            let inputs = json!({ "curves": scan.curves.display().to_string(), "pair": pair, "xmax": x_max });
            Ok(search_outcome("search opposite-sign", inputs, &report, scan.timing))
        }
        SearchCmd::Angle { scan, label, interval } => {
            let loaded = load(scan)?;
            let e = find_curve(&loaded.curves, label, &scan.curves)?;
            let iv = interval.interval()?;
            let x_max = match scan.xmax {
                Some(x) => x,
                None => default_xmax(roar_bound(e.conductor, &iv)?.x),
            };
            let report = least_angle_in_interval(source(&loaded, e, scan), &iv, x_max, scan_mode(scan))?;
            let inputs = json!({
                "curves": scan.curves.display().to_string(),
                "label": label,
                "alpha": interval.alpha,
                "beta": interval.beta,
                "xmax": x_max,
            });
            Ok(search_outcome("search angle", inputs, &report, scan.timing))
        }
    }
}

fn claim_row(r: &ClaimReport) -> Value {
    json!({ "claim": r.claim, "published": r.published, "computed": r.supremum, "pass": r.pass })
}

fn suite_row(r: &SuiteReport) -> Value {
    json!({ "claim": r.name, "published": 0, "computed": r.violations, "pass": r.pass() })
}

fn cmd_verify(target: VerifyTarget) -> anyhow::Result<Outcome> {
    use VerifyTarget::*;
    let wants = |t: VerifyTarget| target == t || target == All;
    let mut results = serde_json::Map::new();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut pass = true;

    if wants(Constants) {
        let table = published_table();
        let chains = chain_checks();
        for r in &table {
            pass &= r.within_tolerance;
            if let Some(d) = &r.discrepancy {
                warnings.push(format!("{}: {d}", r.name));
            }
            rows.push(json!({ "claim": r.name, "published": r.printed, "computed": r.recomputed, "pass": r.within_tolerance }));
        }
        for c in &chains {
            pass &= c.pass;
            rows.push(json!({ "claim": c.name, "published": 0, "computed": c.worst_slack, "pass": c.pass }));
        }
        warnings.extend(a_dependent_discrepancies(0.25)?);
        results.insert(
            "constants".into(),
            json!({ "table": to_value(&table), "chain_checks": to_value(&chains), "ledger_at_quarter": to_value(&ledger(0.25)?) }),
        );
    }
    let mut claim = |name: &str, r: ClaimReport, results: &mut serde_json::Map<String, Value>| {
        pass &= r.pass;
        rows.push(claim_row(&r));
        results.insert(name.into(), to_value(&r));
    };
    if wants(Upsilon) {
        claim("upsilon", verify_upsilon(), &mut results);
    }
    if wants(Psi) {
        claim("psi", verify_psi(), &mut results);
    }
    if wants(C3) {
        claim("c3", verify_c3(), &mut results);
    }
    if wants(B1b3) {
        let (b1, b3) = verify_b1_b3();
        claim("b1", b1, &mut results);
        claim("b3", b3, &mut results);
    }
    if wants(Lemmas) {
        let suites = [
            digamma_grid(200),
            sym_power_domination(40, 500),
            rankin_domination(500),
            xi_sum_suite(8, 2000),
            xi_true_sum_suite(200, 1),
        ];
        let minorant = minorant_suite(100, 10_000, 1);
        for s in &suites {
            pass &= s.pass();
            rows.push(suite_row(s));
            results.insert(s.name.into(), to_value(s));
        }
        pass &= minorant.pass();
        for s in [&minorant.below_indicator, &minorant.bounded, &minorant.xi0] {
            rows.push(suite_row(s));
        }
        rows.push(json!({
            "claim": "minorant_reconstruction",
            "published": 1e-9,
            "computed": minorant.reconstruction_error,
            "pass": minorant.reconstruction_error <= 1e-9,
        }));
        results.insert("minorant".into(), to_value(&minorant));
    }
    let name = match target {
        Constants => "constants",
        Psi => "psi",
        C3 => "c3",
        B1b3 => "b1b3",
        Upsilon => "upsilon",
        Lemmas => "lemmas",
        All => "all",
    };
    results.insert("pass".into(), json!(pass));
    let mut envelope = ReportEnvelope::new(&format!("verify {name}"), json!({ "target": name }), Value::Object(results));
    envelope.warnings = warnings;
    Ok(Outcome { envelope, rows, pass })
}

fn cmd_minorant(args: &MinorantArgs) -> anyhow::Result<Outcome> {
    let iv = args.interval.interval()?;
    let spec: MinorantSpec = if args.reflect {
        xi_coefficients_reflected(&iv, args.m)?
    } else {
        xi_coefficients(&iv, args.m)?
    };
    let mut warnings = Vec::new();
    if let Some(path) = &args.emit_plot_data {
        let plot = spec.plot_rows(args.points);
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["theta", "chi", "s", "f"])?;
        let mut above = 0;
        for row in &plot {
            if row[2] > row[1] + 1e-9 {
                above += 1;
            }
            w.write_record(row.iter().map(|x| output::round_sig(*x).to_string()))?;
        }
        w.flush()?;
        if above > 0 {
            warnings.push(format!("{above} plot rows have S above the indicator"));
        }
    }
    let rows = spec.xi.iter().enumerate().map(|(k, x)| json!({ "k": k, "xi": x })).collect();
    let inputs = json!({
        "alpha": args.interval.alpha,
        "beta": args.interval.beta,
        "m": args.m,
        "reflect": args.reflect,
        "plot_data": args.emit_plot_data.as_ref().map(|p| p.display().to_string()),
    });
    let mut envelope = ReportEnvelope::new("minorant", inputs, to_value(&spec));
    envelope.warnings = warnings;
    Ok(Outcome { envelope, rows, pass: true })
}

