//! Command-line front end: `operators`, `table`, `verify`, `simulate`.
//!
//! Exit codes: 0 success, 1 completed but something was flagged (a suspected
//! closed-form typo, or a simulation z-score beyond 5), 2 usage or input
//! error. Nothing is written to stdout when the exit code is 2.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::amplitude::{general_table, probabilities, PhaseConvention};
use crate::closed_form::{verify_all, ErrataRecord, Verdict, DEFAULT_TOLERANCE};
use crate::simulate::{compare, run_chain, ChainSpec, Outcome, DEFAULT_SEED};
use crate::spin::{spin_components, Direction, Projection, Spin, SpinMatrix};

/// Unitarity threshold reported by `table`.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_VERIFY_SAMPLES: usize = 1000;
pub const DEFAULT_SIMULATE_SAMPLES: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    Canonical,
    #[value(alias = "paper")]
    #[serde(alias = "paper")]
    Tabulated,
}

impl From<ConventionArg> for PhaseConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Canonical => PhaseConvention::Canonical,
            ConventionArg::Tabulated => PhaseConvention::Tabulated,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinamp", version, about = "Spin projection measurement amplitudes and Stern–Gerlach chains")]
pub struct Cli {
    /// TOML file with default flag values; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print S_x, S_y, S_z for spin j (units of ħ).
    Operators(OperatorsArgs),
    /// Amplitude and probability tables between two directions.
    Table(TableArgs),
    /// Check the tabulated spin-2 closed forms against the numeric engine.
    Verify(VerifyArgs),
    /// Monte Carlo of a Stern–Gerlach chain described in a JSON file.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
struct OperatorsArgs {
    #[arg(long)]
    j: f64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    j: f64,
    /// Initial axis: THETA PHI (radians, or degrees with a `d` suffix).
    #[arg(long, num_args = 2, value_names = ["THETA", "PHI"], allow_hyphen_values = true)]
    from: Vec<String>,
    /// Final axis: THETA PHI.
    #[arg(long, num_args = 2, value_names = ["THETA", "PHI"], allow_hyphen_values = true)]
    to: Vec<String>,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Read unsuffixed angles as degrees.
    #[arg(long)]
    degrees: bool,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    samples: Option<usize>,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    chain: PathBuf,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Read chain angles as degrees.
    #[arg(long)]
    degrees: bool,
    #[command(flatten)]
    format: FormatArg,
}

/// Optional defaults file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    format: Option<OutputFormat>,
    seed: Option<u64>,
    degrees: Option<bool>,
    convention: Option<ConventionArg>,
    #[serde(default)]
    verify: VerifyConfig,
    #[serde(default)]
    simulate: SimulateConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyConfig {
    samples: Option<usize>,
    tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    samples: Option<u64>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// Parses an angle: radians by default, degrees with a `d` suffix or when
/// `degrees` is set.
pub fn parse_angle(s: &str, degrees: bool) -> Result<f64, String> {
    let (body, deg) = match s.strip_suffix('d') {
        Some(b) => (b, true),
        None => (s, degrees),
    };
    let v: f64 = body.trim().parse().map_err(|_| format!("invalid angle {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("invalid angle {s:?}"));
    }
    Ok(if deg { v.to_radians() } else { v })
}

/// Formats with 12 significant digits, `%g` style.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with 12 significant digits per part.
pub fn fmt_complex(z: Complex<f64>) -> String {
    let re = fmt_sig(z.re + 0.0);
    let im = z.im + 0.0;
    if im < 0.0 {
        format!("{re}-{}i", fmt_sig(-im))
    } else {
        format!("{re}+{}i", fmt_sig(im))
    }
}

fn complex_json(z: Complex<f64>) -> Value {
    json!({ "re": z.re + 0.0, "im": z.im + 0.0 })
}

fn outcome_label(o: &Outcome) -> String {
    o.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
}

/// Projection as a plain number for CSV.
fn m_csv(m: Projection) -> String {
    fmt_sig(m.value())
}

fn outcome_csv(o: &Outcome) -> String {
    o.iter().map(|&m| m_csv(m)).collect::<Vec<_>>().join(";")
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process streams.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let config = match cli.config.as_deref().map(load_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => return CliOutput::usage(e),
    };
    let result = match cli.command {
        Command::Operators(a) => cmd_operators(&a, &config),
        Command::Table(a) => cmd_table(&a, &config),
        Command::Verify(a) => cmd_verify(&a, &config),
        Command::Simulate(a) => cmd_simulate(&a, &config),
    };
    match result {
        Ok((code, stdout)) => CliOutput { code, stdout, stderr: String::new() },
        Err(e) => CliOutput::usage(e),
    }
}

fn load_config(path: &Path) -> Result<Config, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
}

fn format_of(arg: &FormatArg, config: &Config) -> OutputFormat {
    arg.format.or(config.format).unwrap_or_default()
}

type CmdResult = Result<(i32, String), String>;

fn matrix_rows(m: &SpinMatrix<f64>) -> Value {
    Value::Array(
        (0..m.dim()).map(|r| Value::Array((0..m.dim()).map(|c| complex_json(m.get(r, c))).collect())).collect(),
    )
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).map_err(|e| e.to_string())?;
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// Right-aligned grid with a header row and a header column.
fn grid(corner: &str, cols: &[String], rows: &[(String, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|(l, _)| l.chars().count()).chain([corner.chars().count()]).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|c| {
            rows.iter().map(|(_, cells)| cells[c].chars().count()).chain([cols[c].chars().count()]).max().unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w.saturating_sub(s.chars().count())), s);
    let _ = write!(out, "{}", pad(corner, label_w));
    for (c, w) in cols.iter().zip(&widths) {
        let _ = write!(out, "  {}", pad(c, *w));
    }
    out.push('\n');
    for (label, cells) in rows {
        let _ = write!(out, "{}", pad(label, label_w));
        for (cell, w) in cells.iter().zip(&widths) {
            let _ = write!(out, "  {}", pad(cell, *w));
        }
        out.push('\n');
    }
    out.lines().map(|l| format!("{}\n", l.trim_end())).collect()
}

fn cmd_operators(a: &OperatorsArgs, config: &Config) -> CmdResult {
    let spin = Spin::new(a.j).map_err(|e| e.to_string())?;
    let ops = spin_components::<f64>(spin);
    let named = [("S_x", &ops.x), ("S_y", &ops.y), ("S_z", &ops.z)];
    let levels: Vec<_> = spin.levels().collect();
    let out = match format_of(&a.format, config) {
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("spin".into(), json!(spin.j()));
            obj.insert("levels".into(), json!(levels));
            for (name, m) in named {
                obj.insert(name.into(), matrix_rows(m));
            }
            serde_json::to_string_pretty(&Value::Object(obj)).map_err(|e| e.to_string())? + "\n"
        }
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["operator", "row_m", "col_m", "re", "im"])?;
            for (name, m) in named {
                for (r, mr) in levels.iter().enumerate() {
                    for (c, mc) in levels.iter().enumerate() {
                        let z = m.get(r, c);
                        w.write_record([
                            name.to_string(),
                            m_csv(*mr),
                            m_csv(*mc),
                            fmt_sig(z.re + 0.0),
                            fmt_sig(z.im + 0.0),
                        ])?;
                    }
                }
            }
            Ok(())
        })?,
        OutputFormat::Pretty => {
            let cols: Vec<String> = levels.iter().map(|m| m.to_string()).collect();
            let mut out = String::new();
            for (name, m) in named {
                let _ = writeln!(out, "{name} for spin {spin} (units of ħ)");
                let rows: Vec<_> = levels
                    .iter()
                    .enumerate()
                    .map(|(r, mr)| (mr.to_string(), (0..m.dim()).map(|c| fmt_complex(m.get(r, c))).collect()))
                    .collect();
                out.push_str(&grid("m", &cols, &rows));
                out.push('\n');
            }
            out
        }
    };
    Ok((0, out))
}

fn cmd_table(a: &TableArgs, config: &Config) -> CmdResult {
    let spin = Spin::new(a.j).map_err(|e| e.to_string())?;
    let degrees = a.degrees || config.degrees.unwrap_or(false);
    let convention: PhaseConvention = a.convention.or(config.convention).map(Into::into).unwrap_or_default();
    let direction = |pair: &[String], flag: &str| -> Result<Direction<f64>, String> {
        match pair {
            [] => Ok(Direction::z()),
            [t, p] => Ok(Direction::new(
                parse_angle(t, degrees).map_err(|e| format!("--{flag}: {e}"))?,
                parse_angle(p, degrees).map_err(|e| format!("--{flag}: {e}"))?,
            )),
            _ => Err(format!("--{flag} takes THETA PHI")),
        }
    };
    let source = direction(&a.from, "from")?;
    let target = direction(&a.to, "to")?;
    let table = general_table(spin, &source, &target, convention).map_err(|e| e.to_string())?;
    let probs = probabilities(&table);
    let unitarity = table.unitarity_defect();
    let stochastic = probs.stochastic_defect();
    let levels: Vec<_> = spin.levels().collect();
    let conv_name = match convention {
        PhaseConvention::Canonical => "canonical",
        PhaseConvention::Tabulated => "tabulated",
    };

    let out = match format_of(&a.format, config) {
        OutputFormat::Json => {
            let mut entries = Vec::new();
            for (c, m_i) in levels.iter().enumerate() {
                for (r, m_f) in levels.iter().enumerate() {
                    entries.push(json!({
                        "m_i": m_i,
                        "m_f": m_f,
                        "amplitude": complex_json(table.entries.get(r, c)),
                        "probability": probs.entries[(r, c)],
                    }));
                }
            }
            let doc = json!({
                "spin": spin.j(),
                "convention": conv_name,
                "source": { "theta": source.theta(), "phi": source.phi() },
                "target": { "theta": target.theta(), "phi": target.phi() },
                "entries": entries,
                "unitarity_defect": unitarity,
                "stochastic_defect": stochastic,
                "unitary": unitarity < UNITARITY_TOLERANCE,
            });
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n"
        }
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["m_i", "m_f", "re", "im", "prob"])?;
            for (c, m_i) in levels.iter().enumerate() {
                for (r, m_f) in levels.iter().enumerate() {
                    let z = table.entries.get(r, c);
                    w.write_record([
                        m_csv(*m_i),
                        m_csv(*m_f),
                        fmt_sig(z.re + 0.0),
                        fmt_sig(z.im + 0.0),
                        fmt_sig(probs.entries[(r, c)]),
                    ])?;
                }
            }
            Ok(())
        })?,
        OutputFormat::Pretty => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "spin {spin}, {conv_name} phases, from (θ′={}, φ′={}) to (θ={}, φ={}) [radians]",
                fmt_sig(source.theta()),
                fmt_sig(source.phi()),
                fmt_sig(target.theta()),
                fmt_sig(target.phi())
            );
            let cols: Vec<String> = levels.iter().map(|m| format!("m_i={m}")).collect();
            let amp_rows: Vec<_> = levels
                .iter()
                .enumerate()
                .map(|(r, m)| {
                    (format!("m_f={m}"), (0..spin.dim()).map(|c| fmt_complex(table.entries.get(r, c))).collect())
                })
                .collect();
            let prob_rows: Vec<_> = levels
                .iter()
                .enumerate()
                .map(|(r, m)| (format!("m_f={m}"), (0..spin.dim()).map(|c| fmt_sig(probs.entries[(r, c)])).collect()))
                .collect();
            out.push_str("\namplitudes ψ(m_i; m_f)\n");
            out.push_str(&grid("", &cols, &amp_rows));
            out.push_str("\nprobabilities |ψ|²\n");
            out.push_str(&grid("", &cols, &prob_rows));
            let _ = writeln!(
                out,
                "\nunitarity: max|U†U − I| = {:.3e} ({} at {:e})",
                unitarity,
                if unitarity < UNITARITY_TOLERANCE { "ok" } else { "FAILED" },
                UNITARITY_TOLERANCE
            );
            let _ = writeln!(out, "row/column sums: max|sum − 1| = {stochastic:.3e}");
            out
        }
    };
    Ok((0, out))
}

fn errata_csv(records: &[ErrataRecord]) -> Result<String, String> {
    csv_string(|w| {
        w.write_record(["equation_id", "m_i", "m_f", "max_abs_deviation", "verdict", "suggested_correction"])?;
        for r in records {
            w.write_record([
                r.equation_id.clone(),
                r.m_i.to_string(),
                r.m_f.to_string(),
                fmt_sig(r.max_abs_deviation),
                verdict_name(r.verdict).into(),
                r.suggested_correction.clone().unwrap_or_default(),
            ])?;
        }
        Ok(())
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "confirmed",
        Verdict::SuspectedTypo => "suspected-typo",
    }
}

fn cmd_verify(a: &VerifyArgs, config: &Config) -> CmdResult {
    let samples = a.samples.or(config.verify.samples).unwrap_or(DEFAULT_VERIFY_SAMPLES);
    let seed = a.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let tolerance = a.tolerance.or(config.verify.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    if samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err("--tolerance must be positive".into());
    }
    let records = verify_all::<f64>(tolerance, samples, seed).map_err(|e| e.to_string())?;
    let suspected = records.iter().filter(|r| r.verdict == Verdict::SuspectedTypo).count();
    let out = match format_of(&a.format, config) {
        OutputFormat::Json => serde_json::to_string_pretty(&records).map_err(|e| e.to_string())? + "\n",
        OutputFormat::Csv => errata_csv(&records)?,
        OutputFormat::Pretty => {
            let mut out = String::new();
            let cols = ["m_i", "m_f", "max deviation", "verdict"].map(String::from);
            let rows: Vec<_> = records
                .iter()
                .map(|r| {
                    (
                        r.equation_id.clone(),
                        vec![
                            r.m_i.to_string(),
                            r.m_f.to_string(),
                            format!("{:.3e}", r.max_abs_deviation),
                            verdict_name(r.verdict).to_string(),
                        ],
                    )
                })
                .collect();
            out.push_str(&grid("equation", &cols, &rows));
            for r in records.iter().filter(|r| r.suggested_correction.is_some()) {
                let _ = writeln!(out, "\n{}: {}", r.equation_id, r.suggested_correction.as_deref().unwrap_or(""));
            }
            let _ = writeln!(
                out,
                "\n{} confirmed, {} suspected-typo ({} angle samples incl. pole corners, seed {:#x}, tolerance {:e})",
                records.len() - suspected,
                suspected,
                records.first().map_or(0, |r| r.sample_count),
                seed,
                tolerance
            );
            out
        }
    };
    Ok((i32::from(suspected > 0), out))
}

fn cmd_simulate(a: &SimulateArgs, config: &Config) -> CmdResult {
    let samples = a.samples.or(config.simulate.samples).unwrap_or(DEFAULT_SIMULATE_SAMPLES);
    let seed = a.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let degrees = a.degrees || config.degrees.unwrap_or(false);
    if samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    let text = std::fs::read_to_string(&a.chain).map_err(|e| format!("{}: {e}", a.chain.display()))?;
    let spec = ChainSpec::from_json(&text).map_err(|e| format!("{}: {e}", a.chain.display()))?;
    let chain = spec.to_chain(degrees).map_err(|e| format!("{}: {e}", a.chain.display()))?;
    let result = run_chain(&chain, samples, seed).map_err(|e| e.to_string())?;
    let report = compare(&result);

    let out = match format_of(&a.format, config) {
        OutputFormat::Json => {
            let analytic: Vec<Value> = result
                .analytic
                .joint
                .iter()
                .map(|(o, p)| {
                    json!({
                        "outcome": o,
                        "joint": p,
                        "post_selected": result.analytic.post_selected.get(o),
                    })
                })
                .collect();
            let counts: Vec<Value> = result.counts.iter().map(|(o, c)| json!({ "outcome": o, "count": c })).collect();
            let doc = json!({
                "spin": chain.spin().j(),
                "samples": samples,
                "seed": seed,
                "rng": "ChaCha8",
                "discarded": result.discarded,
                "acceptance": result.analytic.acceptance,
                "counts": counts,
                "analytic": analytic,
                "comparison": report,
            });
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n"
        }
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["outcome", "count", "probability", "expected", "frequency", "z", "flagged"])?;
            for r in &report.rows {
                w.write_record([
                    r.outcome.as_ref().map_or("discarded".to_string(), outcome_csv),
                    r.count.to_string(),
                    fmt_sig(r.probability),
                    fmt_sig(r.expected),
                    fmt_sig(r.frequency),
                    fmt_sig(r.z),
                    r.flagged.to_string(),
                ])?;
            }
            Ok(())
        })?,
        OutputFormat::Pretty => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "spin {} chain, {} stage(s), {} samples, seed {:#x} (ChaCha8)",
                chain.spin(),
                chain.stages().len(),
                samples,
                seed
            );
            let cols = ["count", "probability", "frequency", "z", ""].map(String::from);
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    (
                        r.outcome.as_ref().map_or("discarded".to_string(), outcome_label),
                        vec![
                            r.count.to_string(),
                            fmt_sig(r.probability),
                            fmt_sig(r.frequency),
                            format!("{:.3}", r.z),
                            if r.flagged { "FLAG".into() } else { String::new() },
                        ],
                    )
                })
                .collect();
            out.push_str(&grid("outcome", &cols, &rows));
            if !result.analytic.post_selected.is_empty() && chain.stages().iter().any(|s| s.select.is_some()) {
                let _ = writeln!(out, "\nacceptance probability {}", fmt_sig(result.analytic.acceptance));
                for (o, p) in &result.analytic.post_selected {
                    let _ = writeln!(out, "  P({} | selected) = {}", outcome_label(o), fmt_sig(*p));
                }
            }
            let _ = writeln!(
                out,
                "\nmax |frequency − p| = {:.3e}, max |z| = {:.3}, {}",
                report.max_abs_deviation,
                report.max_abs_z,
                if report.flagged { "FLAGGED (|z| > 5)" } else { "no flags" }
            );
            out
        }
    };
    Ok((i32::from(report.flagged), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(6f64.sqrt() / 4.0), "0.612372435696");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(6f64.sqrt() / 2.0), "1.22474487139");
        assert_eq!(fmt_sig(1.5e-17), "1.5e-17");
        assert_eq!(fmt_sig(123456.0), "123456");
        assert_eq!(fmt_complex(Complex::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(fmt_complex(Complex::new(-0.0, -0.0)), "0+0i");
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("0", false).unwrap(), 0.0);
        assert!((parse_angle("90d", false).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((parse_angle("90", true).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(parse_angle("-1.5", false).unwrap(), -1.5);
        assert!(parse_angle("abc", false).is_err());
        assert!(parse_angle("infd", false).is_err());
    }

    #[test]
    fn seed_parsing() {
        assert_eq!(parse_seed("0xC0FFEE").unwrap(), 0xC0FFEE);
        assert_eq!(parse_seed("12").unwrap(), 12);
        assert!(parse_seed("zz").is_err());
    }
}
