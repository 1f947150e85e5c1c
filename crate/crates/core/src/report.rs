//! Table rows, curve samples and the cross-oracle verification run.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::Serialize;

use crate::codes::{build_code, run_pipeline, CodeName, CodeSpec, PipelineOptions, Policy};
use crate::error::{QeccError, Result};
use crate::fidelity::{
    average_residual_fidelity, compute_f, AverageMethod, FidelityCurve, FnReport, Rational,
    Universe,
};
use crate::noise::{
    double_error_universe, parse_error_spec, pauli_error_op, ErrorOperator, YConvention,
};
use crate::pauli::{Pauli1, PauliString, Syndrome};
use crate::reference;

pub const CSV_HEADER: [&str; 7] = [
    "code",
    "error",
    "syndrome",
    "correction",
    "residual",
    "phase",
    "notes",
];

pub const NOT_LISTED: &str = "not-listed-in-reference-table";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub code: String,
    pub error: String,
    pub syndrome: String,
    pub correction: String,
    pub residual: String,
    pub phase: String,
    pub notes: String,
}

/// A named group of rows written to one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(QeccError::ErrorSpecParse {
                spec: s.into(),
                reason: "format must be csv or json".into(),
            }),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn write_rows<W: Write>(rows: &[TableRow], format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(CSV_HEADER)?;
            }
            for r in rows {
                w.serialize(r).map_err(std::io::Error::other)?;
            }
            w.flush()
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(std::io::Error::other)?;
            writeln!(out)
        }
    }
}

fn table_row(
    code: &CodeSpec,
    label: &str,
    error: &PauliString,
    policy: Policy,
    notes: &str,
) -> Result<TableRow> {
    let opts = PipelineOptions::with_policy(policy);
    let r = run_pipeline(code, &ErrorOperator::Pauli(*error), &opts)?;
    let syndrome = match &r.syndrome {
        Some(s) => s.clone(),
        None => code.syndrome_of(error)?,
    };
    let mut notes = notes.to_string();
    if policy == Policy::DecodeOnly {
        if let Some(p) = r.physical_output_error {
            notes = format!("output={}", p.compact_label());
        }
    }
    Ok(TableRow {
        code: code.name.to_string(),
        error: label.to_string(),
        syndrome: syndrome.to_string(),
        correction: r.correction.map_or("none".into(), |c| c.to_string()),
        residual: r.residual.logical.to_string(),
        phase: r.residual.global_phase.to_string(),
        notes,
    })
}

/// Injected single errors, X then Z then Y, each over qubits ascending.
pub fn single_errors(code: &CodeSpec, y: YConvention) -> Result<Vec<(String, PauliString)>> {
    let mut out = Vec::new();
    for kind in [Pauli1::X, Pauli1::Z, Pauli1::Y] {
        for q in 1..=code.n {
            out.push((format!("{kind}{q}"), pauli_error_op(kind, q, code.n, y)?));
        }
    }
    Ok(out)
}

/// The full X/Z double-error universe as labelled operators.
pub fn full_universe(code: &CodeSpec) -> Result<Vec<(String, PauliString)>> {
    double_error_universe(code.n)?
        .into_iter()
        .map(|d| {
            let p = d.to_pauli(code.n)?;
            Ok((p.to_string(), p))
        })
        .collect()
}

/// Doubles listed in the reference tables for `code`, in table order.
pub fn reference_universe(code: &CodeSpec) -> Result<Vec<(String, PauliString)>> {
    let mut out = Vec::new();
    for row in reference::tables_for(code.name) {
        for label in row.doubles() {
            let p = PauliString::parse(code.n, label)?;
            out.push((p.to_string(), p));
        }
    }
    Ok(out)
}

/// Canonical labels (sorted tokens) of the tabulated doubles.
fn listed_doubles(code: &CodeSpec) -> Result<BTreeSet<String>> {
    Ok(reference_universe(code)?
        .into_iter()
        .map(|(l, _)| l)
        .collect())
}

/// All tables for one code.
pub fn generate_tables(code: &CodeSpec) -> Result<Vec<Table>> {
    let mut tables = Vec::new();
    let singles: Vec<(String, PauliString)> = single_errors(code, YConvention::Injected)?
        .into_iter()
        .filter(|(l, _)| {
            let kind = Pauli1::from_letter(l.chars().next().unwrap_or('I')).unwrap_or(Pauli1::I);
            code.name.correctable_kinds().contains(&kind)
        })
        .collect();
    let rows = singles
        .iter()
        .map(|(l, e)| table_row(code, l, e, Policy::CorrectThenDecode, ""))
        .collect::<Result<Vec<_>>>()?;
    tables.push(Table {
        name: format!("{}_singles", code.name),
        rows,
    });

    if code.name == CodeName::Shor9 {
        let rows = singles
            .iter()
            .map(|(l, e)| table_row(code, l, e, Policy::DecodeOnly, ""))
            .collect::<Result<Vec<_>>>()?;
        tables.push(Table {
            name: "shor9_decode_only".into(),
            rows,
        });
    }

    if matches!(
        code.name,
        CodeName::Shor9 | CodeName::Steane7 | CodeName::Five5
    ) {
        let listed = listed_doubles(code)?;
        let rows = full_universe(code)?
            .iter()
            .map(|(l, e)| {
                let note = if listed.contains(l) { "" } else { NOT_LISTED };
                table_row(code, l, e, Policy::CorrectThenDecode, note)
            })
            .collect::<Result<Vec<_>>>()?;
        tables.push(Table {
            name: format!("{}_doubles", code.name),
            rows,
        });
    }
    Ok(tables)
}

/// f-scores for the curve set.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveScores {
    pub f5: FnReport,
    pub f7_reference: FnReport,
    pub f7_full: FnReport,
    pub f9: FnReport,
}

pub fn curve_scores() -> Result<CurveScores> {
    let five = build_code(CodeName::Five5)?;
    let steane = build_code(CodeName::Steane7)?;
    let shor = build_code(CodeName::Shor9)?;
    Ok(CurveScores {
        f5: compute_f(&five, Universe::FullXz, &full_universe(&five)?)?,
        f7_reference: compute_f(
            &steane,
            Universe::ReferenceTables,
            &reference_universe(&steane)?,
        )?,
        f7_full: compute_f(&steane, Universe::FullXz, &full_universe(&steane)?)?,
        f9: compute_f(&shor, Universe::FullXz, &full_universe(&shor)?)?,
    })
}

/// `C0, C5, C7 (reference set), C7 (full set), C9`.
pub fn curve_set(scores: &CurveScores) -> Vec<FidelityCurve> {
    vec![
        FidelityCurve::unprotected(),
        FidelityCurve::for_code("C5", scores.f5.f),
        FidelityCurve::for_code("C7_reference", scores.f7_reference.f),
        FidelityCurve::for_code("C7_full", scores.f7_full.f),
        FidelityCurve::for_code("C9", scores.f9.f),
    ]
}

pub fn write_curves<W: Write>(
    curves: &[FidelityCurve],
    grid: &[f64],
    format: Format,
    mut out: W,
) -> Result<()> {
    let io = |e: std::io::Error| QeccError::Io(e.to_string());
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["P".to_string()];
            header.extend(
                curves
                    .iter()
                    .map(|c| format!("{}={}", c.label, c.formula())),
            );
            w.write_record(&header).map_err(|e| io(e.into()))?;
            for &p in grid {
                let mut rec = vec![format!("{p:.6}")];
                for c in curves {
                    rec.push(format!("{:.12}", c.value(p)?));
                }
                w.write_record(&rec).map_err(|e| io(e.into()))?;
            }
            w.flush().map_err(io)
        }
        Format::Json => {
            let mut samples = Vec::new();
            for &p in grid {
                let mut m = serde_json::Map::new();
                m.insert("P".into(), p.into());
                for c in curves {
                    m.insert(c.label.clone(), c.value(p)?.into());
                }
                samples.push(serde_json::Value::Object(m));
            }
            let doc = serde_json::json!({
                "curves": curves.iter().map(|c| serde_json::json!({
                    "label": c.label,
                    "formula": c.formula(),
                    "coefficient": format!("{}/{}", c.coefficient.numer(), c.coefficient.denom()),
                })).collect::<Vec<_>>(),
                "samples": samples,
            });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| io(e.into()))?;
            writeln!(out).map_err(io)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub shor9_histogram: BTreeMap<String, usize>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Replaces one correction-table entry before verifying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corruption {
    pub code: CodeName,
    pub syndrome: Syndrome,
}

impl Corruption {
    /// Parses `code:bits`.
    pub fn parse(text: &str) -> Result<Self> {
        let (code, bits) = text
            .split_once(':')
            .ok_or_else(|| QeccError::ErrorSpecParse {
                spec: text.into(),
                reason: "expected code:syndrome".into(),
            })?;
        let code: CodeName = code.parse()?;
        let len = build_code(code)?.generator_count();
        Ok(Self {
            code,
            syndrome: Syndrome::parse(bits, len)?,
        })
    }

    fn apply(&self, code: &CodeSpec) -> Result<CodeSpec> {
        let current = code.lookup_correction(&self.syndrome)?;
        let replacement = if current.is_identity() {
            PauliString::single(code.n, Pauli1::X, 1)?
        } else {
            PauliString::identity(code.n)
        };
        Ok(code.with_corrupted_entry(self.syndrome.clone(), replacement))
    }
}

fn check(name: &str, result: std::result::Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name: name.into(),
            passed: false,
            detail,
        },
    }
}

fn ratio_text(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Runs every cross-oracle check. Errors inside a check fail that check.
pub fn verify(corruption: Option<&Corruption>, method: AverageMethod) -> Result<VerifyReport> {
    let mut codes = BTreeMap::new();
    for name in CodeName::ALL {
        let mut code = build_code(name)?;
        if let Some(c) = corruption.filter(|c| c.code == name) {
            code = c.apply(&code)?;
        }
        codes.insert(name, code);
    }
    let mut checks = Vec::new();

    checks.push(check(
        "correction-table-consistency",
        (|| {
            for code in codes.values() {
                for (s, p) in code.correction.entries().map_err(|e| e.to_string())? {
                    let got = code.syndrome_of(&p).map_err(|e| e.to_string())?;
                    if got != s {
                        return Err(format!(
                            "{} syndrome {s}: correction {p} has syndrome {got}",
                            code.name
                        ));
                    }
                }
            }
            Ok("every syndrome maps to a correction with that syndrome".into())
        })(),
    ));

    checks.push(check(
        "oracle-agreement",
        (|| {
            let mut count = 0;
            for code in codes.values() {
                let mut errors =
                    single_errors(code, YConvention::Standard).map_err(|e| e.to_string())?;
                if code.n >= 5 {
                    errors.extend(full_universe(code).map_err(|e| e.to_string())?);
                }
                let encoded = code
                    .encode(
                        crate::codes::GENERIC_PROBE_ALPHA,
                        crate::codes::GENERIC_PROBE_BETA,
                    )
                    .map_err(|e| e.to_string())?;
                for (label, e) in errors {
                    let state = e.apply(&encoded).map_err(|e| e.to_string())?;
                    let eigen = code
                        .eigen_syndrome(&state)
                        .map_err(|e| format!("{} {label}: {e}", code.name))?;
                    let oracle = code.syndrome_of(&e).map_err(|e| e.to_string())?;
                    if eigen != oracle {
                        return Err(format!(
                            "{} {label}: eigen {eigen} vs oracle {oracle}",
                            code.name
                        ));
                    }
                    count += 1;
                }
            }
            Ok(format!("{count} errors agree"))
        })(),
    ));

    checks.push(check(
        "single-error-recovery",
        (|| {
            let mut count = 0;
            for code in codes.values() {
                let opts = PipelineOptions::default();
                for (label, e) in
                    single_errors(code, YConvention::Injected).map_err(|e| e.to_string())?
                {
                    let kind = Pauli1::from_letter(label.chars().next().unwrap_or('I'))
                        .unwrap_or(Pauli1::I);
                    if !code.name.correctable_kinds().contains(&kind) {
                        continue;
                    }
                    let r = run_pipeline(code, &ErrorOperator::Pauli(e), &opts)
                        .map_err(|err| format!("{} {label}: {err}", code.name))?;
                    if r.residual.logical != Pauli1::I || (r.overlap_fidelity - 1.0).abs() > 1e-9 {
                        let s = r.syndrome.map(|s| s.to_string()).unwrap_or_default();
                        return Err(format!(
                            "{} {label} (syndrome {s}): residual {} fidelity {}",
                            code.name, r.residual, r.overlap_fidelity
                        ));
                    }
                    count += 1;
                }
            }
            Ok(format!("{count} single errors recovered"))
        })(),
    ));

    checks.push(check(
        "decode-only-outputs",
        (|| {
            let shor = &codes[&CodeName::Shor9];
            let opts = PipelineOptions::with_policy(Policy::DecodeOnly);
            for (err, want) in reference::shor_decode_only_rows() {
                let e = parse_error_spec(err, 9, 1, YConvention::Injected)
                    .map_err(|e| e.to_string())?;
                let r = run_pipeline(shor, &e, &opts).map_err(|e| e.to_string())?;
                let got = r
                    .physical_output_error
                    .map(|p| p.compact_label())
                    .unwrap_or_default();
                if got != want {
                    return Err(format!("{err}: got {got}, expected {want}"));
                }
            }
            Ok("27 rows match".into())
        })(),
    ));

    checks.push(check(
        "reference-table-syndromes",
        (|| {
            let mut count = 0;
            for name in [CodeName::Shor9, CodeName::Steane7, CodeName::Five5] {
                let code = &codes[&name];
                for row in reference::tables_for(name) {
                    for label in &row.errors {
                        let p = PauliString::parse(code.n, label).map_err(|e| e.to_string())?;
                        let s = code.syndrome_of(&p).map_err(|e| e.to_string())?;
                        if s.to_string() != row.syndrome {
                            return Err(format!(
                                "{name} table {} {label}: {s} vs {}",
                                row.table, row.syndrome
                            ));
                        }
                        count += 1;
                    }
                }
            }
            Ok(format!("{count} listed errors match"))
        })(),
    ));

    checks.push(check(
        "reference-table-residuals",
        (|| {
            let opts = PipelineOptions::default();
            for name in [CodeName::Shor9, CodeName::Steane7, CodeName::Five5] {
                let code = &codes[&name];
                for row in reference::tables_for(name) {
                    let mut seen = BTreeSet::new();
                    for label in &row.errors {
                        let e = parse_error_spec(label, code.n, 1, YConvention::Injected)
                            .map_err(|e| e.to_string())?;
                        let r = run_pipeline(code, &e, &opts).map_err(|e| e.to_string())?;
                        seen.insert(r.residual.logical);
                    }
                    let want: BTreeSet<Pauli1> = row.residuals.iter().copied().collect();
                    if seen != want {
                        return Err(format!(
                            "{name} table {} row {}: residuals {seen:?} vs {want:?}",
                            row.table, row.syndrome
                        ));
                    }
                }
            }
            Ok("every row's residual set matches".into())
        })(),
    ));

    let mut shor9_histogram = BTreeMap::new();
    checks.push(check(
        "shor9-doubles",
        (|| {
            let code = &codes[&CodeName::Shor9];
            let rep = compute_f(
                code,
                Universe::FullXz,
                &full_universe(code).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            for (k, v) in &rep.histogram {
                if *v > 0 {
                    shor9_histogram.insert(k.to_string(), *v);
                }
            }
            let detail = format!(
                "N={} histogram {:?} f9={}",
                rep.total,
                shor9_histogram,
                ratio_text(rep.f)
            );
            let want: BTreeMap<String, usize> = [("I", 108), ("X", 27), ("Z", 9)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            if rep.total == 144 && shor9_histogram == want && rep.f == Rational::new(5, 6) {
                Ok(detail)
            } else {
                Err(detail)
            }
        })(),
    ));

    checks.push(check(
        "steane7-doubles",
        (|| {
            let code = &codes[&CodeName::Steane7];
            let reference_set = reference_universe(code).map_err(|e| e.to_string())?;
            let full = full_universe(code).map_err(|e| e.to_string())?;
            let r = compute_f(code, Universe::ReferenceTables, &reference_set)
                .map_err(|e| e.to_string())?;
            let f = compute_f(code, Universe::FullXz, &full).map_err(|e| e.to_string())?;
            let listed: BTreeSet<String> = reference_set.iter().map(|(l, _)| l.clone()).collect();
            let missing: Vec<String> = full
                .iter()
                .filter(|(l, _)| !listed.contains(l))
                .map(|(l, _)| l.clone())
                .collect();
            let detail = format!(
                "reference N={} f7={}; full N={} x={} f7={}; unlisted {:?}",
                r.total,
                ratio_text(r.f),
                f.total,
                f.identity,
                ratio_text(f.f),
                missing
            );
            if r.f == Rational::new(53, 81)
                && f.total == 84
                && f.identity == 42
                && f.f == Rational::new(2, 3)
            {
                Ok(detail)
            } else {
                Err(detail)
            }
        })(),
    ));

    checks.push(check(
        "five5-doubles",
        (|| {
            let code = &codes[&CodeName::Five5];
            let rep = compute_f(
                code,
                Universe::FullXz,
                &full_universe(code).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let detail = format!(
                "N={} x={} f5={}",
                rep.total,
                rep.identity,
                ratio_text(rep.f)
            );
            if rep.total == 40 && rep.identity == 0 && rep.f == Rational::new(1, 3) {
                Ok(detail)
            } else {
                Err(detail)
            }
        })(),
    ));

    checks.push(check(
        "bloch-averages",
        (|| {
            for p in Pauli1::ALL {
                let q = average_residual_fidelity(p, method).map_err(|e| e.to_string())?;
                let a = average_residual_fidelity(p, AverageMethod::Analytic)
                    .map_err(|e| e.to_string())?;
                if (q - a).abs() > 1e-9 {
                    return Err(format!("{p}: quadrature {q} vs {a}"));
                }
            }
            Ok(format!("{method:?} matches 1 and 1/3 within 1e-9"))
        })(),
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        passed,
        checks,
        shor9_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corruption_parsing() {
        let c = Corruption::parse("shor9:11000000").unwrap();
        assert_eq!(c.code, CodeName::Shor9);
        assert!(Corruption::parse("shor9:110").is_err());
        assert!(Corruption::parse("shor9").is_err());
    }

    #[test]
    fn csv_header_and_row() {
        let rows = vec![TableRow {
            code: "shor9".into(),
            error: "X2".into(),
            syndrome: "11000000".into(),
            correction: "X2".into(),
            residual: "I".into(),
            phase: "1".into(),
            notes: "".into(),
        }];
        let mut buf = Vec::new();
        write_rows(&rows, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "code,error,syndrome,correction,residual,phase,notes\nshor9,X2,11000000,X2,I,1,\n"
        );
    }

    #[test]
    fn reference_universes() {
        let steane = build_code(CodeName::Steane7).unwrap();
        assert_eq!(reference_universe(&steane).unwrap().len(), 81);
        let labels: BTreeSet<_> = reference_universe(&steane)
            .unwrap()
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        assert_eq!(labels.len(), 81);
    }
}
