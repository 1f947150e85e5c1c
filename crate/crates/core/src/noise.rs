//! Error operators: single Pauli errors, the coefficient error
//! `c_o I + c_x X + c_y Y + c_z Z`, and the double-error universe.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QeccError, Result};
use crate::pauli::{Pauli1, PauliString, Phase};
use crate::state::{check_qubit, StateVector, TOLERANCE};

/// How a `Y` token in an injected error is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum YConvention {
    /// The Pauli matrix `[[0, -i], [i, 0]]`.
    Standard,
    /// `-i` times the real matrix `XZ = [[0, -1], [1, 0]]`, i.e. `-Y`. This is
    /// the operator whose decode-only outputs carry the `-i` factors of the
    /// reference output table.
    #[default]
    Injected,
}

impl FromStr for YConvention {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" | "standard-y" | "standard_y" => Ok(YConvention::Standard),
            "injected" | "minus-i-xz" => Ok(YConvention::Injected),
            _ => Err(QeccError::ErrorSpecParse {
                spec: s.into(),
                reason: "y convention must be `standard` or `injected`".into(),
            }),
        }
    }
}

impl fmt::Display for YConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YConvention::Standard => "standard",
            YConvention::Injected => "injected",
        })
    }
}

/// Single Pauli error on `qubit` of an `n`-qubit register.
pub fn pauli_error_op(kind: Pauli1, qubit: usize, n: usize, y: YConvention) -> Result<PauliString> {
    let p = PauliString::single(n, kind, qubit)?;
    Ok(match (kind, y) {
        (Pauli1::Y, YConvention::Injected) => p.with_phase(p.phase() * Phase::MINUS_ONE),
        _ => p,
    })
}

/// An error acting on the encoded register.
#[derive(Debug, Clone, PartialEq)]
pub enum ErrorOperator {
    None,
    Pauli(PauliString),
    /// `c_o I + c_x X + c_y Y + c_z Z` on one qubit, standard `Y`.
    Arbitrary {
        coeffs: [Complex64; 4],
        qubit: usize,
        n: usize,
    },
}

impl ErrorOperator {
    /// Applies the operator; returns the (renormalized) state and the norm the
    /// raw image had. Pauli errors always report norm 1.
    pub fn apply(&self, state: &StateVector) -> Result<(StateVector, f64)> {
        match self {
            ErrorOperator::None => Ok((state.clone(), 1.0)),
            ErrorOperator::Pauli(p) => Ok((p.apply(state)?, 1.0)),
            ErrorOperator::Arbitrary { coeffs, qubit, n } => {
                if state.n() != *n {
                    return Err(QeccError::DimensionMismatch {
                        left: *n,
                        right: state.n(),
                    });
                }
                let mut acc =
                    StateVector::from_amplitudes(*n, vec![Complex64::new(0.0, 0.0); state.dim()])?;
                for (c, kind) in coeffs.iter().zip(Pauli1::ALL) {
                    if c.norm() == 0.0 {
                        continue;
                    }
                    let term = PauliString::single(*n, kind, *qubit)?.apply(state)?;
                    acc = acc.add(&term.scale(*c))?;
                }
                let (out, norm) = acc.normalized();
                if norm == 0.0 {
                    return Err(QeccError::ZeroCoefficients);
                }
                Ok((out, norm))
            }
        }
    }

    /// The Pauli operator, when the error is one.
    pub fn as_pauli(&self) -> Option<&PauliString> {
        match self {
            ErrorOperator::Pauli(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ErrorOperator::None => "none".into(),
            ErrorOperator::Pauli(p) => p.to_string(),
            ErrorOperator::Arbitrary { coeffs, qubit, .. } => {
                let parts: Vec<String> = coeffs
                    .iter()
                    .map(|c| crate::state::format_complex(*c, 1e-12))
                    .collect();
                format!("c:{} on qubit {qubit}", parts.join(","))
            }
        }
    }
}

/// `c_o I + c_x X + c_y Y + c_z Z` on `qubit`. The coefficients must satisfy
/// `sum |c|^2 = 1`; the operator itself need not be unitary.
pub fn arbitrary_error_op(coeffs: [Complex64; 4], qubit: usize, n: usize) -> Result<ErrorOperator> {
    check_qubit(n, qubit)?;
    let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(QeccError::ZeroCoefficients);
    }
    if (norm_sq - 1.0).abs() > TOLERANCE {
        return Err(QeccError::CoefficientNormalization { norm_sq });
    }
    Ok(ErrorOperator::Arbitrary { coeffs, qubit, n })
}

/// Parses `none`, Pauli tokens (`X1`, `Y7 Z2`, `XXZIZ`) or
/// `c:<co>,<cx>,<cy>,<cz>` (applied on `qubit`). Complex coefficients are
/// written `re+imi` or `re-imi`.
pub fn parse_error_spec(
    spec: &str,
    n: usize,
    qubit: usize,
    y: YConvention,
) -> Result<ErrorOperator> {
    let trimmed = spec.trim();
    let fail = |reason: String| QeccError::ErrorSpecParse {
        spec: spec.to_string(),
        reason,
    };
    if trimmed.eq_ignore_ascii_case("none") || trimmed.is_empty() {
        return Ok(ErrorOperator::None);
    }
    if let Some(rest) = trimmed
        .strip_prefix("c:")
        .or_else(|| trimmed.strip_prefix("C:"))
    {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 4 {
            return Err(fail(
                "expected four coefficients c:<co>,<cx>,<cy>,<cz>".into(),
            ));
        }
        let mut coeffs = [Complex64::new(0.0, 0.0); 4];
        for (slot, text) in coeffs.iter_mut().zip(&parts) {
            *slot = parse_complex(text).ok_or_else(|| fail(format!("bad coefficient {text:?}")))?;
        }
        return arbitrary_error_op(coeffs, qubit, n).map_err(|e| fail(e.to_string()));
    }
    let p = PauliString::parse(n, trimmed).map_err(|e| fail(e.to_string()))?;
    let ys = trimmed
        .chars()
        .filter(|c| c.eq_ignore_ascii_case(&'y'))
        .count() as i64;
    Ok(ErrorOperator::Pauli(match y {
        YConvention::Standard => p,
        YConvention::Injected => p.with_phase(p.phase() * Phase::new(2 * ys)),
    }))
}

/// `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if let Ok(re) = t.parse::<f64>() {
        return Some(Complex64::new(re, 0.0));
    }
    let body = t.strip_suffix('i')?;
    // split at the last sign that is not part of an exponent
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, ch)| {
            (ch == '+' || ch == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
        })
        .map(|(k, _)| k);
    let im_of = |s: &str| match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        s => s.parse::<f64>().ok(),
    };
    match split {
        Some(k) => Some(Complex64::new(body[..k].parse().ok()?, im_of(&body[k..])?)),
        None => Some(Complex64::new(0.0, im_of(body)?)),
    }
}

/// A pair of single-qubit X or Z errors on distinct qubits, `k < l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleError {
    pub first: (Pauli1, usize),
    pub second: (Pauli1, usize),
}

impl DoubleError {
    /// Orders the two parts by qubit.
    pub fn new(a: (Pauli1, usize), b: (Pauli1, usize)) -> Result<Self> {
        for (kind, _) in [a, b] {
            if !matches!(kind, Pauli1::X | Pauli1::Z) {
                return Err(QeccError::ErrorSpecParse {
                    spec: format!("{kind}"),
                    reason: "double errors are built from X and Z".into(),
                });
            }
        }
        if a.1 == b.1 {
            return Err(QeccError::ErrorSpecParse {
                spec: format!("{}{}{}{}", a.0, a.1, b.0, b.1),
                reason: "double errors act on distinct qubits".into(),
            });
        }
        Ok(if a.1 < b.1 {
            Self {
                first: a,
                second: b,
            }
        } else {
            Self {
                first: b,
                second: a,
            }
        })
    }

    pub fn to_pauli(&self, n: usize) -> Result<PauliString> {
        PauliString::single(n, self.first.0, self.first.1)?.mul(&PauliString::single(
            n,
            self.second.0,
            self.second.1,
        )?)
    }

    pub fn label(&self) -> String {
        format!(
            "{}{} {}{}",
            self.first.0, self.first.1, self.second.0, self.second.1
        )
    }

    /// True when the pair mixes an X and a Z.
    pub fn is_mixed(&self) -> bool {
        self.first.0 != self.second.0
    }
}

impl fmt::Display for DoubleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Every X/Z pair on distinct qubits for `n` in {5, 7, 9}: `2n(n-1)` entries
/// ordered by `k`, then `l`, then the two types with X before Z.
pub fn double_error_universe(n: usize) -> Result<Vec<DoubleError>> {
    if !matches!(n, 5 | 7 | 9) {
        return Err(QeccError::UnsupportedQubitCount(n));
    }
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for k in 1..=n {
        for l in k + 1..=n {
            for a in [Pauli1::X, Pauli1::Z] {
                for b in [Pauli1::X, Pauli1::Z] {
                    out.push(DoubleError {
                        first: (a, k),
                        second: (b, l),
                    });
                }
            }
        }
    }
    Ok(out)
}
