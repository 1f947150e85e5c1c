//! Encode, corrupt, correct, decode, classify.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CodeSpec;
use crate::error::{QeccError, Result};
use crate::noise::ErrorOperator;
use crate::pauli::{Pauli1, PauliString, Phase, Syndrome};
use crate::state::StateVector;

/// Probe amplitudes: `cos(pi/8)` and `e^{i pi/5} sin(pi/8)`. The overlaps of
/// the probe with its images under I, X, Y and Z have distinct magnitudes.
pub const GENERIC_PROBE_ALPHA: Complex64 = Complex64::new(0.923_879_532_511_286_7, 0.0);
pub const GENERIC_PROBE_BETA: Complex64 =
    Complex64::new(0.309_597_400_249_093_44, 0.224_935_677_840_863_88);

const MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    #[default]
    CorrectThenDecode,
    DecodeOnly,
}

impl std::str::FromStr for Policy {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "correct" | "correct-then-decode" => Ok(Policy::CorrectThenDecode),
            "decode-only" | "decode" => Ok(Policy::DecodeOnly),
            _ => Err(QeccError::ErrorSpecParse {
                spec: s.into(),
                reason: "policy must be `correct` or `decode-only`".into(),
            }),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::CorrectThenDecode => "correct",
            Policy::DecodeOnly => "decode-only",
        })
    }
}

/// Logical error left on the useful qubit, with its global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidualClass {
    pub logical: Pauli1,
    pub global_phase: Phase,
}

impl ResidualClass {
    pub const IDENTITY: ResidualClass = ResidualClass {
        logical: Pauli1::I,
        global_phase: Phase::ONE,
    };
}

impl fmt::Display for ResidualClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.global_phase.prefix(), self.logical)
    }
}

/// A decoded register written as `qubit-1 factor (x) ancilla factor`. The
/// ancilla factor is normalized with its largest amplitude (first in index
/// order) real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub qubit1: (Complex64, Complex64),
    pub ancilla: StateVector,
}

impl Factorization {
    /// Splits `state` (n >= 2) or fails with the qubit-1 purity.
    pub fn of(state: &StateVector) -> Result<Self> {
        let n = state.n();
        let rho = state.reduced_density(1)?;
        let purity = rho.purity();
        if (purity - 1.0).abs() > MATCH_TOLERANCE {
            return Err(QeccError::EntangledResidual { purity });
        }
        let half = state.dim() / 2;
        let rows = [&state.amps()[..half], &state.amps()[half..]];
        let norm = |r: &[Complex64]| r.iter().map(|a| a.norm_sqr()).sum::<f64>();
        let pick = if norm(rows[0]) >= norm(rows[1]) { 0 } else { 1 };
        let row = rows[pick];
        let row_norm = norm(row).sqrt();
        let max = row.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let lead = row
            .iter()
            .find(|a| a.norm() >= max - MATCH_TOLERANCE)
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        let rot = lead.conj() / lead.norm() / row_norm;
        let anc: Vec<Complex64> = row.iter().map(|a| a * rot).collect();
        let coeff =
            |r: &[Complex64]| -> Complex64 { anc.iter().zip(r).map(|(a, b)| a.conj() * b).sum() };
        let qubit1 = (coeff(rows[0]), coeff(rows[1]));
        let ancilla = if n > 1 {
            StateVector::from_amplitudes(n - 1, anc)?
        } else {
            StateVector::zero(1)?
        };
        let f = Factorization { qubit1, ancilla };
        if n > 1 {
            let back = StateVector::qubit_unchecked(qubit1.0, qubit1.1).kron(&f.ancilla)?;
            if !back.approx_eq(state, 1e-9) {
                return Err(QeccError::EntangledResidual { purity });
            }
        }
        Ok(f)
    }

    /// The ancilla basis index, when the ancilla is a single basis state.
    pub fn ancilla_basis(&self) -> Option<usize> {
        self.ancilla
            .amps()
            .iter()
            .position(|a| (a.norm() - 1.0).abs() <= MATCH_TOLERANCE)
    }
}

/// Matches the qubit-1 factor of `decoded` against `E (alpha, beta)`.
pub fn classify_residual(
    decoded: &StateVector,
    alpha: Complex64,
    beta: Complex64,
) -> Result<ResidualClass> {
    let f = Factorization::of(decoded)?;
    classify_factor(f.qubit1, alpha, beta).map(|(r, _)| r)
}

/// Returns the class and the full complex overlap with `E psi`.
fn classify_factor(
    phi: (Complex64, Complex64),
    alpha: Complex64,
    beta: Complex64,
) -> Result<(ResidualClass, Complex64)> {
    let mut best = 0.0f64;
    for logical in Pauli1::ALL {
        let (e0, e1) = logical.apply_pair(alpha, beta);
        let ov = e0.conj() * phi.0 + e1.conj() * phi.1;
        best = best.max(ov.norm());
        if ov.norm() > 1.0 - MATCH_TOLERANCE {
            let global_phase =
                Phase::from_complex(ov / ov.norm(), MATCH_TOLERANCE).unwrap_or(Phase::ONE);
            return Ok((
                ResidualClass {
                    logical,
                    global_phase,
                },
                ov,
            ));
        }
    }
    Err(QeccError::Unclassifiable { best_overlap: best })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub policy: Policy,
    pub seed: u64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            policy: Policy::CorrectThenDecode,
            seed: 0,
            alpha: GENERIC_PROBE_ALPHA,
            beta: GENERIC_PROBE_BETA,
        }
    }
}

impl PipelineOptions {
    pub fn with_policy(policy: Policy) -> Self {
        Self {
            policy,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub encoded: StateVector,
    pub corrupted: StateVector,
    /// Norm of the raw error image before renormalization.
    pub error_norm: f64,
    /// `None` when the policy skips correction and the corrupted state is
    /// not a generator eigenstate.
    pub syndrome: Option<Syndrome>,
    /// True when the syndrome came from projective measurement.
    pub measured: bool,
    pub correction: Option<PauliString>,
    pub corrected: StateVector,
    pub decoded: StateVector,
    pub residual: ResidualClass,
    /// `phase * R_1 * X(ancilla)` acting on `|psi>|0...0>`, when the ancilla
    /// is a basis state and the phase is a quarter turn.
    pub physical_output_error: Option<PauliString>,
    pub ancilla: StateVector,
    pub overlap_fidelity: f64,
}

/// Runs encode, error, optional correction, decode and classification.
pub fn run_pipeline(
    code: &CodeSpec,
    error: &ErrorOperator,
    opts: &PipelineOptions,
) -> Result<PipelineResult> {
    let (alpha, beta) = (opts.alpha, opts.beta);
    let encoded = code.encode(alpha, beta)?;
    let (corrupted, error_norm) = error.apply(&encoded)?;

    let (syndrome, measured, correction, corrected) = match opts.policy {
        Policy::CorrectThenDecode => {
            let (syndrome, collapsed, measured) = match code.eigen_syndrome(&corrupted) {
                Ok(s) => (s, corrupted.clone(), false),
                Err(QeccError::NotPauliDiagnosable { .. }) => {
                    let (s, st) = code.projective_syndrome(&corrupted, opts.seed)?;
                    (s, st, true)
                }
                Err(e) => return Err(e),
            };
            let fix = code.lookup_correction(&syndrome)?;
            let corrected = fix.apply(&collapsed)?;
            (Some(syndrome), measured, Some(fix), corrected)
        }
        Policy::DecodeOnly => {
            let syndrome = match code.eigen_syndrome(&corrupted) {
                Ok(s) => Some(s),
                Err(QeccError::NotPauliDiagnosable { .. }) => None,
                Err(e) => return Err(e),
            };
            (syndrome, false, None, corrupted.clone())
        }
    };

    let decoded = code.decode(&corrected)?;
    let f = Factorization::of(&decoded)?;
    let (residual, ov) = classify_factor(f.qubit1, alpha, beta)?;
    let quarter = Phase::from_complex(ov / ov.norm(), MATCH_TOLERANCE).is_some();

    let physical_output_error = match (f.ancilla_basis(), quarter) {
        (Some(s), true) => {
            let n = code.n;
            let mut p = PauliString::single(n, residual.logical, 1)?;
            let x_anc = PauliString::from_masks(n, s as u64, 0, Phase::ONE)?;
            p = p.mul(&x_anc)?;
            let amp = f.ancilla.amp(s);
            let extra = Phase::from_complex(amp, MATCH_TOLERANCE).unwrap_or(Phase::ONE);
            Some(p.with_phase(p.phase() * residual.global_phase * extra))
        }
        _ => None,
    };

    let rho = decoded.reduced_density(1)?;
    let overlap_fidelity = rho.expectation(alpha, beta);

    Ok(PipelineResult {
        encoded,
        corrupted,
        error_norm,
        syndrome,
        measured,
        correction,
        corrected,
        decoded,
        residual,
        physical_output_error,
        ancilla: f.ancilla,
        overlap_fidelity,
    })
}
