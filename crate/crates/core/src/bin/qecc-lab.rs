use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use qecc_lab::fidelity::{compute_f, probability_grid, AverageMethod, Universe, MIN_GRID};
use qecc_lab::noise::{parse_error_spec, ErrorOperator};
use qecc_lab::report::{self, Corruption, Format, Table};
use qecc_lab::state::dirac_symbolic;
use qecc_lab::{
    build_code, run_pipeline, CodeName, CodeSpec, PipelineOptions, Policy, QeccError, StateVector,
    YConvention,
};

const DISPLAY_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "qecc-lab",
    version,
    about = "Simulate small quantum error-correcting codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one encode / error / correct / decode pipeline and print each stage.
    Simulate(SimulateArgs),
    /// Write single- and double-error tables, one file per table.
    Tables(TableArgs),
    /// Write the double-error tables and print residual histograms.
    Doubles(TableArgs),
    /// Write average-fidelity curves over a probability grid.
    Curves(CurveArgs),
    /// Run the cross-oracle checks; exit 1 on the first failure.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value = "shor9")]
    code: String,
    /// `none`, Pauli tokens such as `X1 Z4`, or `c:co,cx,cy,cz`.
    #[arg(long, default_value = "none")]
    error: String,
    /// Target qubit for the `c:` form.
    #[arg(long, default_value_t = 1)]
    qubit: usize,
    #[arg(long, default_value = "correct")]
    policy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "injected")]
    y_convention: String,
    /// Text by default; `json` for a machine-readable summary.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    /// All codes when omitted.
    #[arg(long)]
    code: Option<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output directory.
    #[arg(long, default_value = "tables")]
    out: PathBuf,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "0:1:100")]
    pgrid: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadrature grid for the Bloch-sphere checks.
    #[arg(long, default_value = "64x128")]
    grid: String,
    /// Replace the correction for `code:syndrome` before checking.
    #[arg(long, hide = true)]
    corrupt: Option<String>,
}

enum Failure {
    Spec(String),
    Invariant(String),
    Io(String),
    Verify(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Spec(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Spec(m) | Failure::Invariant(m) | Failure::Io(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<QeccError> for Failure {
    fn from(e: QeccError) -> Self {
        use QeccError::*;
        let msg = e.to_string();
        match e {
            Io(_) => Failure::Io(msg),
            PauliParse { .. }
            | ErrorSpecParse { .. }
            | UnknownCode(_)
            | Index { .. }
            | Size { .. }
            | ZeroCoefficients
            | CoefficientNormalization { .. }
            | ProbabilityOutOfRange(_)
            | InvalidSyndrome { .. }
            | GridTooSmall(..)
            | InvalidAngle(_)
            | DimensionMismatch { .. } => Failure::Spec(msg),
            _ => Failure::Invariant(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Tables(a) => cmd_tables(a, false),
        Command::Doubles(a) => cmd_tables(a, true),
        Command::Curves(a) => cmd_curves(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qecc-lab: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn parse_format(text: &str) -> Result<Format, Failure> {
    Ok(text.parse::<Format>()?)
}

fn parse_grid(text: &str) -> Result<AverageMethod, Failure> {
    let bad = || Failure::Spec(format!("grid {text:?} must look like 64x128"));
    let (t, p) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let theta = t.trim().parse().map_err(|_| bad())?;
    let phi = p.trim().parse().map_err(|_| bad())?;
    if theta < MIN_GRID.0 || phi < MIN_GRID.1 {
        return Err(QeccError::GridTooSmall(theta, phi).into());
    }
    Ok(AverageMethod::Quadrature { theta, phi })
}

fn parse_pgrid(text: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Spec(format!("pgrid {text:?} must look like START:STOP:STEPS"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(probability_grid(start, stop, steps)?)
}

fn symbolic(zero: &StateVector, one: &StateVector) -> Result<String, Failure> {
    Ok(dirac_symbolic(zero, one, DISPLAY_TOLERANCE)?)
}

/// Raw (unnormalized) image of a state under the error operator.
fn raw_image(error: &ErrorOperator, state: &StateVector) -> Result<StateVector, Failure> {
    let (s, norm) = error.apply(state)?;
    Ok(s.scale(Complex64::new(norm, 0.0)))
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let code = build_code(a.code.parse()?)?;
    let policy: Policy = a.policy.parse()?;
    let y: YConvention = a.y_convention.parse()?;
    let error = parse_error_spec(&a.error, code.n, a.qubit, y)?;
    let json = match a.format.as_deref() {
        None | Some("text") => false,
        Some("json") => true,
        Some(other) => {
            return Err(Failure::Spec(format!(
                "format {other:?} must be text or json"
            )))
        }
    };
    let opts = PipelineOptions {
        policy,
        seed: a.seed,
        ..PipelineOptions::default()
    };
    let r = run_pipeline(&code, &error, &opts)?;

    // Symbolic forms follow |0_L> and |1_L> through each linear stage.
    let (z1, o1) = (code.zero_l().clone(), code.one_l().clone());
    let (z2, o2) = (raw_image(&error, &z1)?, raw_image(&error, &o1)?);
    let t3 = if r.measured {
        None
    } else {
        let (z, o) = match &r.correction {
            Some(c) => (c.apply(&z2)?, c.apply(&o2)?),
            None => (z2.clone(), o2.clone()),
        };
        Some((code.decode(&z)?, code.decode(&o)?))
    };
    let t1_text = symbolic(&z1, &o1)?;
    let t2_text = symbolic(&z2, &o2)?;
    let t3_text = match &t3 {
        Some((z, o)) => symbolic(z, o)?,
        None => r.decoded.dirac(DISPLAY_TOLERANCE),
    };
    let syndrome = r.syndrome.as_ref().map(|s| s.to_string());
    let correction = r.correction.as_ref().map(|c| c.to_string());
    let output_error = r.physical_output_error.map(|p| p.compact_label());

    let mut out = io::stdout().lock();
    if json {
        let doc = serde_json::json!({
            "code": code.name.as_str(),
            "error": error.label(),
            "policy": policy.to_string(),
            "seed": a.seed,
            "t1_encoded": t1_text,
            "t2_after_error": t2_text,
            "t3_decoded": t3_text,
            "error_norm": r.error_norm,
            "syndrome": syndrome,
            "syndrome_measured": r.measured,
            "correction": correction,
            "residual": r.residual.logical.to_string(),
            "phase": r.residual.global_phase.to_string(),
            "output_error": output_error,
            "probe_fidelity": r.overlap_fidelity,
        });
        serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::other)?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "code: {}", code.name)?;
    writeln!(out, "error: {}", error.label())?;
    writeln!(out, "policy: {policy}")?;
    writeln!(out, "t1 encoded: {t1_text}")?;
    writeln!(out, "t2 after error: {t2_text}")?;
    if (r.error_norm - 1.0).abs() > DISPLAY_TOLERANCE {
        writeln!(out, "error image norm: {}", r.error_norm)?;
    }
    match &syndrome {
        Some(s) if r.measured => writeln!(out, "syndrome: {s} (measured, seed {})", a.seed)?,
        Some(s) => writeln!(out, "syndrome: {s}")?,
        None => writeln!(out, "syndrome: none (not a generator eigenstate)")?,
    }
    writeln!(
        out,
        "correction: {}",
        correction.as_deref().unwrap_or("none")
    )?;
    if t3.is_some() {
        writeln!(out, "t3 decoded: {t3_text}")?;
    } else {
        writeln!(out, "t3 decoded (a, b = probe): {t3_text}")?;
    }
    writeln!(
        out,
        "residual: {} (phase {})",
        r.residual.logical, r.residual.global_phase
    )?;
    if let Some(p) = &output_error {
        writeln!(out, "output error: {p}")?;
    }
    writeln!(out, "probe fidelity: {}", r.overlap_fidelity)?;
    Ok(())
}

fn selected_codes(code: Option<&str>) -> Result<Vec<CodeSpec>, Failure> {
    let names: Vec<CodeName> = match code {
        Some(c) => vec![c.parse()?],
        None => CodeName::ALL.to_vec(),
    };
    names.into_iter().map(|n| Ok(build_code(n)?)).collect()
}

fn io_at(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn write_table(dir: &Path, table: &Table, format: Format) -> Result<PathBuf, Failure> {
    let path = dir.join(format!("{}.{}", table.name, format.extension()));
    let file = io::BufWriter::new(fs::File::create(&path).map_err(io_at(&path))?);
    report::write_rows(&table.rows, format, file).map_err(io_at(&path))?;
    Ok(path)
}

fn cmd_tables(a: TableArgs, doubles_only: bool) -> Result<(), Failure> {
    let format = parse_format(&a.format)?;
    let codes = selected_codes(a.code.as_deref())?;
    fs::create_dir_all(&a.out).map_err(io_at(&a.out))?;
    for code in &codes {
        for table in report::generate_tables(code)? {
            if doubles_only && !table.name.ends_with("_doubles") {
                continue;
            }
            let path = write_table(&a.out, &table, format)?;
            println!("{} ({} rows)", path.display(), table.rows.len());
        }
        if doubles_only && code.n >= 5 {
            let mut universes = vec![(Universe::FullXz, report::full_universe(code)?)];
            if code.name == CodeName::Steane7 {
                universes.insert(
                    0,
                    (Universe::ReferenceTables, report::reference_universe(code)?),
                );
            }
            for (u, errors) in universes {
                let rep = compute_f(code, u, &errors)?;
                let hist: Vec<String> = rep
                    .histogram
                    .iter()
                    .filter(|(_, &v)| v > 0)
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect();
                println!(
                    "{} {}: N={} {{{}}} f={}/{}",
                    code.name,
                    u.as_str(),
                    rep.total,
                    hist.join(", "),
                    rep.f.numer(),
                    rep.f.denom()
                );
            }
        }
    }
    Ok(())
}

fn cmd_curves(a: CurveArgs) -> Result<(), Failure> {
    let format = parse_format(&a.format)?;
    let grid = parse_pgrid(&a.pgrid)?;
    let curves = report::curve_set(&report::curve_scores()?);
    match &a.out {
        Some(path) => {
            let file = io::BufWriter::new(fs::File::create(path).map_err(io_at(path))?);
            report::write_curves(&curves, &grid, format, file)?;
        }
        None => report::write_curves(&curves, &grid, format, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let format = parse_format(&a.format)?;
    let method = parse_grid(&a.grid)?;
    let corruption = a.corrupt.as_deref().map(Corruption::parse).transpose()?;
    let rep = report::verify(corruption.as_ref(), method)?;

    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &rep).map_err(io::Error::other)?;
            writeln!(buf)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            for c in &rep.checks {
                w.serialize(c).map_err(io::Error::other)?;
            }
            w.flush()?;
        }
    }
    match &a.out {
        Some(path) => fs::write(path, &buf).map_err(io_at(path))?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    match rep.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Verify(format!(
            "check {} failed: {}",
            c.name, c.detail
        ))),
    }
}
