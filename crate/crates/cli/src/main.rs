//! `remix`: evaluate, classify and tabulate remixed Eulerian numbers,
//! verify the closed forms, and simulate the ball dynamics.
//!
//! Every successful command prints one JSON envelope
//! `{"command", "inputs", "result", "version"}`, except `table --format csv`.
//! Exit codes: 0 success, 2 usage or parse error, 3 cross-check mismatch,
//! 4 verification failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use remix_core::config::{max_weakly_shift, one_hole_decompose, Configuration, OneHoleShape};
use remix_core::engine::success_probability;
use remix_core::formulas::{
    a_connected, a_one_hole, a_weakly_lukasiewicz, carlitz_scoville_q, evaluate, q_hit_row, CSParams, CrossCheck,
    MethodChoice,
};
use remix_core::simulate::estimate_success;
use remix_core::verify::{run_suite, Oracle, Suite};
use remix_core::{QPoly, QRat};

const EXACT_COMPARISON_MAX_N: usize = 10;

#[derive(Parser)]
#[command(name = "remix", version, about = "Exact remixed Eulerian numbers A_c(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute A_c(q) for a configuration such as 0,3,0,2,0.
    Eval {
        config: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Compare against an independent evaluator (exit 3 on mismatch).
        #[arg(long)]
        crosscheck: bool,
        /// Also evaluate at this rational point (a/b or an integer).
        #[arg(long)]
        q: Option<String>,
        /// Add the expanded display and, when available, the q-bracket form.
        #[arg(long)]
        pretty: bool,
    },
    /// Report the family flags and core of a configuration.
    Classify { config: String },
    /// Tabulate a family of polynomials.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
        #[arg(long)]
        rsmax: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check closed forms and identities against the oracle (exit 4 on failure).
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        nmax: usize,
    },
    /// Monte Carlo estimate of the success probability.
    Simulate {
        config: String,
        #[arg(long, default_value = "1")]
        q: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Decimal or 0x-prefixed hexadecimal.
        #[arg(long, default_value = "0", value_parser = parse_seed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Induction,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Connected,
    Weakly,
    OneHole,
    Cs,
    Hit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Families,
    Congruence,
    Corrective,
    Abelian,
    All,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

fn parse_seed(text: &str) -> Result<u64, String> {
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => text.parse(),
    }
    .map_err(|e| format!("invalid seed {text:?}: {e}"))
}

fn parse_config(text: &str) -> Result<Configuration, Failure> {
    text.parse().map_err(|e| Failure::usage(format!("invalid configuration {text:?}: {e}")))
}

fn parse_q(text: &str) -> Result<QRat, Failure> {
    let q: QRat = text.parse().map_err(Failure::usage)?;
    if q.is_negative() {
        return Err(Failure::usage(format!("q = {q} must be non-negative")));
    }
    Ok(q)
}

fn parse_list(flag: &str, text: Option<&str>) -> Result<Vec<usize>, Failure> {
    let text = text.ok_or_else(|| Failure::usage(format!("--{flag} is required")))?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| part.trim().parse().map_err(|_| Failure::usage(format!("--{flag}: bad entry {part:?}"))))
        .collect()
}

fn required<T>(flag: &str, value: Option<T>) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--{flag} is required")))
}

fn envelope(command: &str, inputs: Value, result: Value) -> String {
    let env = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    });
    serde_json::to_string_pretty(&env).expect("JSON values serialize")
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn cmd_eval(config: &str, method: MethodArg, crosscheck: bool, q: Option<&str>, pretty: bool) -> Result<(), Failure> {
    let c = parse_config(config)?;
    let q0 = q.map(parse_q).transpose()?;
    let choice = match method {
        MethodArg::Auto => MethodChoice::Auto,
        MethodArg::Exact => MethodChoice::Exact,
        MethodArg::Induction => MethodChoice::Induction,
        MethodArg::Formula => MethodChoice::Formula,
    };
    let report = evaluate(&c, choice, crosscheck).map_err(Failure::usage)?;
    let mut result = to_value(&report);
    let obj = result.as_object_mut().expect("report is an object");
    if pretty {
        obj.insert("expanded".into(), json!(report.poly.to_string()));
    } else {
        obj.remove("factored");
    }
    if let Some(q0) = &q0 {
        obj.insert("q".into(), to_value(q0));
        obj.insert("value".into(), to_value(&report.poly.eval(q0)));
    }
    let inputs = json!({
        "config": c.sites(),
        "method": method.to_possible_value().expect("not skipped").get_name(),
        "crosscheck": crosscheck,
        "q": q0.as_ref().map(to_value),
        "pretty": pretty,
    });
    println!("{}", envelope("eval", inputs, result));
    if report.crosscheck == CrossCheck::Fail {
        let reference = report.reference.as_ref().map(ToString::to_string).unwrap_or_default();
        return Err(Failure {
            code: 3,
            message: format!("cross-check failed for {c}:\n  {}: {}\n  reference: {reference}", report.method.name(), report.poly),
        });
    }
    Ok(())
}

fn cmd_classify(config: &str) -> Result<(), Failure> {
    let c = parse_config(config)?;
    let core = c.core();
    let one_hole = one_hole_decompose(&c).ok().map(|s: OneHoleShape| json!({"alpha": s.alpha, "beta": s.beta}));
    let result = json!({
        "config": c.sites(),
        "flags": to_value(&c.classify()),
        "core": {"leading": core.leading, "gamma": core.gamma, "trailing": core.trailing},
        "max_weakly_shift": max_weakly_shift(&core.gamma, c.n()).ok(),
        "one_hole": one_hole,
    });
    println!("{}", envelope("classify", json!({"config": c.sites()}), result));
    Ok(())
}

struct Row {
    index: Value,
    poly: QPoly,
}

#[allow(clippy::too_many_arguments)]
fn table_rows(
    kind: TableKind,
    gamma: Option<&str>,
    n: Option<usize>,
    alpha: Option<&str>,
    beta: Option<&str>,
    x: Option<usize>,
    y: Option<usize>,
    rsmax: Option<usize>,
    lambda: Option<&str>,
) -> Result<(Value, Vec<Row>), Failure> {
    let indexed = |i: usize, poly: QPoly| Row { index: json!(i), poly };
    Ok(match kind {
        TableKind::Connected | TableKind::Weakly => {
            let gamma = parse_list("gamma", gamma)?;
            let n = required("n", n)?;
            let top = match kind {
                TableKind::Connected => n.checked_sub(gamma.len()).ok_or_else(|| Failure::usage("core longer than n"))?,
                _ => max_weakly_shift(&gamma, n).map_err(Failure::usage)?,
            };
            let rows = (0..=top)
                .map(|i| {
                    let poly = match kind {
                        TableKind::Connected => a_connected(&gamma, i, n),
                        _ => a_weakly_lukasiewicz(&gamma, i, n),
                    };
                    poly.map(|p| indexed(i, p)).map_err(Failure::usage)
                })
                .collect::<Result<_, _>>()?;
            (json!({"gamma": gamma, "n": n}), rows)
        }
        TableKind::OneHole => {
            let alpha = parse_list("alpha", alpha)?;
            let beta = parse_list("beta", beta)?;
            let shape = OneHoleShape::new(alpha.clone(), beta.clone()).map_err(Failure::usage)?;
            let (gamma, n) = (shape.gamma(), shape.n());
            let top = n.checked_sub(gamma.len()).ok_or_else(|| Failure::usage("core does not fit in n sites"))?;
            let rows = (0..=top)
                .map(|i| {
                    let c = Configuration::from_core(i, &gamma, n).map_err(Failure::usage)?;
                    a_one_hole(&c).map(|p| indexed(i, p)).map_err(Failure::usage)
                })
                .collect::<Result<_, _>>()?;
            (json!({"alpha": alpha, "beta": beta, "n": n}), rows)
        }
        TableKind::Cs => {
            let (x, y, rsmax) = (required("x", x)?, required("y", y)?, required("rsmax", rsmax)?);
            let mut rows = Vec::new();
            for d in 0..=rsmax {
                for r in 0..=d {
                    let p = CSParams::new(r, d - r, x, y).map_err(Failure::usage)?;
                    rows.push(Row { index: json!(format!("{r}:{}", d - r)), poly: carlitz_scoville_q(&p) });
                }
            }
            (json!({"x": x, "y": y, "rsmax": rsmax}), rows)
        }
        TableKind::Hit => {
            let lambda = parse_list("lambda", lambda)?;
            let n = required("n", n)?;
            let row = q_hit_row(&lambda, n).map_err(Failure::usage)?;
            let rows = row.into_iter().enumerate().map(|(i, p)| indexed(i, p)).collect();
            (json!({"lambda": lambda, "n": n}), rows)
        }
    })
}

fn csv_table(rows: &[Row]) -> String {
    let width = rows.iter().filter_map(|r| r.poly.degree()).max().unwrap_or(0) + 1;
    let mut out = String::from("index");
    for k in 0..width {
        out.push_str(&format!(",coeff{k}"));
    }
    out.push('\n');
    for row in rows {
        let index = match &row.index {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&index);
        for k in 0..width {
            out.push_str(&format!(",{}", row.poly.coeff(k)));
        }
        out.push('\n');
    }
    out
}

fn cmd_verify(suite: SuiteArg, nmax: usize) -> Result<(), Failure> {
    if nmax == 0 {
        return Err(Failure::usage("--nmax must be at least 1"));
    }
    let (name, suite) = match suite {
        SuiteArg::Families => ("families", Suite::Families),
        SuiteArg::Congruence => ("congruence", Suite::Congruence),
        SuiteArg::Corrective => ("corrective", Suite::Corrective),
        SuiteArg::Abelian => ("abelian", Suite::Abelian),
        SuiteArg::All => ("all", Suite::All),
    };
    let reports = run_suite(suite, nmax, &mut Oracle::new());
    let pass = reports.iter().all(|r| r.passed());
    let result = json!({"properties": to_value(&reports), "pass": pass});
    println!("{}", envelope("verify", json!({"suite": name, "nmax": nmax}), result));
    if !pass {
        return Err(Failure { code: 4, message: "verification failed".into() });
    }
    Ok(())
}

fn cmd_simulate(config: &str, q: &str, trials: u64, seed: u64) -> Result<(), Failure> {
    let c = parse_config(config)?;
    let q0 = parse_q(q)?;
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let sim = estimate_success(&c, &q0, trials, seed).map_err(Failure::usage)?;
    let mut result = to_value(&sim);
    let obj = result.as_object_mut().expect("SimResult is an object");
    obj.insert("estimate".into(), to_value(&sim.estimate()));
    if c.n() <= EXACT_COMPARISON_MAX_N {
        let exact = success_probability(&c, &q0).map_err(Failure::usage)?;
        obj.insert("sigma".into(), json!(sim.sigma(exact.to_f64())));
        obj.insert("deviation_sigmas".into(), json!(sim.deviation_sigmas(&exact)));
        obj.insert("exact".into(), to_value(&exact));
    }
    let inputs = json!({"config": c.sites(), "q": to_value(&q0), "trials": trials, "seed": format!("{seed:#x}")});
    println!("{}", envelope("simulate", inputs, result));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { config, method, crosscheck, q, pretty } => {
            cmd_eval(&config, method, crosscheck, q.as_deref(), pretty)
        }
        Command::Classify { config } => cmd_classify(&config),
        Command::Table { kind, gamma, n, alpha, beta, x, y, rsmax, lambda, format } => {
            let (params, rows) = table_rows(
                kind,
                gamma.as_deref(),
                n,
                alpha.as_deref(),
                beta.as_deref(),
                x,
                y,
                rsmax,
                lambda.as_deref(),
            )?;
            let kind_name = kind.to_possible_value().expect("not skipped").get_name().to_string();
            match format {
                Format::Csv => print!("{}", csv_table(&rows)),
                Format::Json => {
                    let rows: Vec<Value> =
                        rows.iter().map(|r| json!({"index": r.index, "poly": to_value(&r.poly)})).collect();
                    let inputs = json!({"kind": kind_name, "params": params, "format": "json"});
                    println!("{}", envelope("table", inputs, json!({"kind": kind_name, "rows": rows})));
                }
            }
            Ok(())
        }
        Command::Verify { suite, nmax } => cmd_verify(suite, nmax),
        Command::Simulate { config, q, trials, seed } => cmd_simulate(&config, &q, trials, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("remix: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
