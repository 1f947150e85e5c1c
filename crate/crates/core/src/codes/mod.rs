//! The five codes: generators, encoders, decoders and lookup correction.

mod correction;
mod pipeline;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use correction::{CorrectionTable, Segment};
pub use pipeline::{
    classify_residual, run_pipeline, Factorization, PipelineOptions, PipelineResult, Policy,
    ResidualClass, GENERIC_PROBE_ALPHA, GENERIC_PROBE_BETA,
};

use crate::error::{QeccError, Result};
use crate::pauli::{Pauli1, PauliString, Syndrome};
use crate::state::{Gate, StateVector, TOLERANCE};

/// Eigenvalue comparison tolerance for syndrome extraction.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeName {
    Bitflip3,
    Phaseflip3,
    Shor9,
    Steane7,
    Five5,
}

impl CodeName {
    pub const ALL: [CodeName; 5] = [
        CodeName::Bitflip3,
        CodeName::Phaseflip3,
        CodeName::Shor9,
        CodeName::Steane7,
        CodeName::Five5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeName::Bitflip3 => "bitflip3",
            CodeName::Phaseflip3 => "phaseflip3",
            CodeName::Shor9 => "shor9",
            CodeName::Steane7 => "steane7",
            CodeName::Five5 => "five5",
        }
    }

    pub fn n(self) -> usize {
        match self {
            CodeName::Bitflip3 | CodeName::Phaseflip3 => 3,
            CodeName::Shor9 => 9,
            CodeName::Steane7 => 7,
            CodeName::Five5 => 5,
        }
    }

    /// Single-qubit error types the code is designed to correct.
    pub fn correctable_kinds(self) -> &'static [Pauli1] {
        match self {
            CodeName::Bitflip3 => &[Pauli1::X],
            CodeName::Phaseflip3 => &[Pauli1::Z],
            _ => &[Pauli1::X, Pauli1::Y, Pauli1::Z],
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeName {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self> {
        CodeName::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| QeccError::UnknownCode(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Encoder {
    /// Gate list run on `(alpha, beta)` on qubit 1 and `|0>` elsewhere.
    Circuit(Vec<Gate>),
    /// Explicit codewords.
    Codewords,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decoder {
    Circuit(Vec<Gate>),
    /// Columns of a unitary `U`; decoding applies `U^dagger`.
    Unitary(Vec<StateVector>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub name: CodeName,
    pub n: usize,
    pub generators: Vec<PauliString>,
    pub encoder: Encoder,
    pub decoder: Decoder,
    pub correction: CorrectionTable,
    zero_l: StateVector,
    one_l: StateVector,
}

fn paulis(n: usize, labels: &[&str]) -> Vec<PauliString> {
    labels
        .iter()
        .map(|l| PauliString::parse(n, l).expect("built-in label"))
        .collect()
}

fn singles(n: usize, kind: Pauli1, qubits: impl IntoIterator<Item = usize>) -> Vec<PauliString> {
    qubits
        .into_iter()
        .map(|q| PauliString::single(n, kind, q).expect("built-in qubit"))
        .collect()
}

fn shor_encoder() -> Vec<Gate> {
    let mut g = vec![
        Gate::cnot(1, 2),
        Gate::cnot(1, 3),
        Gate::H(1),
        Gate::H(2),
        Gate::H(3),
        Gate::Permute(vec![1, 4, 5, 2, 6, 7, 3, 8, 9]),
    ];
    g.extend(shor_block_cnots());
    g
}

fn shor_block_cnots() -> Vec<Gate> {
    vec![
        Gate::cnot(7, 8),
        Gate::cnot(4, 5),
        Gate::cnot(1, 2),
        Gate::cnot(7, 9),
        Gate::cnot(4, 6),
        Gate::cnot(1, 3),
    ]
}

fn shor_decoder() -> Vec<Gate> {
    let mut g = shor_block_cnots();
    g.extend([
        Gate::toffoli(8, 9, 7),
        Gate::toffoli(5, 6, 4),
        Gate::toffoli(2, 3, 1),
        Gate::Permute(vec![1, 4, 7, 2, 3, 5, 6, 8, 9]),
        Gate::H(1),
        Gate::H(2),
        Gate::H(3),
        Gate::cnot(1, 3),
        Gate::cnot(1, 2),
        Gate::toffoli(2, 3, 1),
    ]);
    g
}

/// `prod_i (I + g_i)/2 |0...0>`, normalized.
fn projected_zero(n: usize, generators: &[PauliString]) -> Result<StateVector> {
    let mut s = StateVector::zero(n)?;
    for g in generators {
        s = s.add(&g.apply(&s)?)?.scale(Complex64::new(0.5, 0.0));
    }
    let (s, norm) = s.normalized();
    if norm < 1e-6 {
        return Err(QeccError::InvalidGate(
            "stabilizer projection of |0...0> vanished".into(),
        ));
    }
    Ok(s)
}

pub fn build_code(name: CodeName) -> Result<CodeSpec> {
    let n = name.n();
    let (generators, encoder, decoder_gates, segments) = match name {
        CodeName::Bitflip3 => (
            paulis(n, &["Z1 Z2", "Z2 Z3"]),
            Encoder::Circuit(vec![Gate::cnot(1, 2), Gate::cnot(1, 3)]),
            Some(vec![
                Gate::cnot(1, 3),
                Gate::cnot(1, 2),
                Gate::toffoli(3, 2, 1),
            ]),
            vec![(0..2, singles(n, Pauli1::X, 1..=3))],
        ),
        CodeName::Phaseflip3 => (
            paulis(n, &["X1 X2", "X2 X3"]),
            Encoder::Circuit(vec![
                Gate::cnot(1, 2),
                Gate::cnot(1, 3),
                Gate::H(1),
                Gate::H(2),
                Gate::H(3),
            ]),
            Some(vec![
                Gate::H(1),
                Gate::H(2),
                Gate::H(3),
                Gate::cnot(1, 3),
                Gate::cnot(1, 2),
                Gate::toffoli(3, 2, 1),
            ]),
            vec![(0..2, singles(n, Pauli1::Z, 1..=3))],
        ),
        CodeName::Shor9 => (
            paulis(
                n,
                &[
                    "Z1 Z2",
                    "Z2 Z3",
                    "Z4 Z5",
                    "Z5 Z6",
                    "Z7 Z8",
                    "Z8 Z9",
                    "X1 X2 X3 X4 X5 X6",
                    "X4 X5 X6 X7 X8 X9",
                ],
            ),
            Encoder::Circuit(shor_encoder()),
            Some(shor_decoder()),
            vec![
                (0..2, singles(n, Pauli1::X, 1..=3)),
                (2..4, singles(n, Pauli1::X, 4..=6)),
                (4..6, singles(n, Pauli1::X, 7..=9)),
                (6..8, paulis(n, &["Z1 Z2 Z3", "Z4 Z5 Z6", "Z7 Z8 Z9"])),
            ],
        ),
        CodeName::Steane7 => (
            paulis(
                n,
                &[
                    "X4 X5 X6 X7",
                    "X2 X3 X6 X7",
                    "X1 X3 X5 X7",
                    "Z4 Z5 Z6 Z7",
                    "Z2 Z3 Z6 Z7",
                    "Z1 Z3 Z5 Z7",
                ],
            ),
            Encoder::Codewords,
            None,
            vec![
                (0..3, singles(n, Pauli1::Z, 1..=7)),
                (3..6, singles(n, Pauli1::X, 1..=7)),
            ],
        ),
        CodeName::Five5 => (
            paulis(n, &["XXZIZ", "ZXXZI", "IZXXZ", "ZIZXX"]),
            Encoder::Codewords,
            None,
            vec![(0..4, {
                let mut c = singles(n, Pauli1::X, 1..=5);
                c.extend(singles(n, Pauli1::Z, 1..=5));
                c.extend(singles(n, Pauli1::Y, 1..=5));
                c
            })],
        ),
    };
    let correction = CorrectionTable::from_candidates(n, &generators, &segments)?;

    let (zero_l, one_l) = match &encoder {
        Encoder::Circuit(gates) => {
            let zero = StateVector::zero(n)?.apply_circuit(gates)?;
            let one = StateVector::basis(n, 1 << (n - 1))?.apply_circuit(gates)?;
            (zero, one)
        }
        Encoder::Codewords => {
            let zero = projected_zero(n, &generators)?;
            let all_x = PauliString::from_masks(n, (1 << n) - 1, 0, Default::default())?;
            let one = all_x.apply(&zero)?;
            (zero, one)
        }
    };

    let decoder = match decoder_gates {
        Some(g) => Decoder::Circuit(g),
        None => {
            // U |b>|s> = T_s |b_L>, with s the ancilla register value
            let m = n - 1;
            let mut columns = Vec::with_capacity(1 << n);
            for b in 0..2 {
                let logical = if b == 0 { &zero_l } else { &one_l };
                for s in 0..1usize << m {
                    let t = correction.lookup(&Syndrome::from_value(s, m))?;
                    columns.push(t.apply(logical)?);
                }
            }
            Decoder::Unitary(columns)
        }
    };

    Ok(CodeSpec {
        name,
        n,
        generators,
        encoder,
        decoder,
        correction,
        zero_l,
        one_l,
    })
}

impl CodeSpec {
    pub fn zero_l(&self) -> &StateVector {
        &self.zero_l
    }

    pub fn one_l(&self) -> &StateVector {
        &self.one_l
    }

    /// `alpha|0_L> + beta|1_L>`.
    pub fn encode(&self, alpha: Complex64, beta: Complex64) -> Result<StateVector> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > TOLERANCE {
            return Err(QeccError::Normalization { norm_sq });
        }
        match &self.encoder {
            Encoder::Circuit(gates) => {
                StateVector::make_state(self.n, &[(1, [alpha, beta])])?.apply_circuit(gates)
            }
            Encoder::Codewords => self.zero_l.scale(alpha).add(&self.one_l.scale(beta)),
        }
    }

    /// Linear extension of `encode` to unnormalized amplitudes; used for
    /// symbolic display.
    pub fn encode_linear(&self, alpha: Complex64, beta: Complex64) -> Result<StateVector> {
        self.zero_l.scale(alpha).add(&self.one_l.scale(beta))
    }

    pub fn decode(&self, state: &StateVector) -> Result<StateVector> {
        if state.n() != self.n {
            return Err(QeccError::DimensionMismatch {
                left: self.n,
                right: state.n(),
            });
        }
        match &self.decoder {
            Decoder::Circuit(gates) => state.apply_circuit(gates),
            Decoder::Unitary(columns) => {
                let amps = columns
                    .iter()
                    .map(|c| c.overlap(state))
                    .collect::<Result<Vec<_>>>()?;
                StateVector::from_amplitudes(self.n, amps)
            }
        }
    }

    /// Commutation-oracle syndrome of a Pauli error.
    pub fn syndrome_of(&self, error: &PauliString) -> Result<Syndrome> {
        error.syndrome(&self.generators)
    }

    /// Reads each generator's eigenvalue off the state.
    pub fn eigen_syndrome(&self, state: &StateVector) -> Result<Syndrome> {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let ov = state.overlap(&g.apply(state)?)?;
                if (ov - 1.0).norm() <= EIGEN_TOLERANCE {
                    Ok(0)
                } else if (ov + 1.0).norm() <= EIGEN_TOLERANCE {
                    Ok(1)
                } else {
                    Err(QeccError::NotPauliDiagnosable { generator: k + 1 })
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Syndrome)
    }

    /// Sequential Born-rule measurement of every generator. Returns the
    /// outcomes and the collapsed, renormalized state.
    pub fn projective_syndrome(
        &self,
        state: &StateVector,
        seed: u64,
    ) -> Result<(Syndrome, StateVector)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let half = Complex64::new(0.5, 0.0);
        let mut current = state.normalized().0;
        let mut bits = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let g_state = g.apply(&current)?;
            let plus = current.add(&g_state)?.scale(half);
            let minus = current
                .add(&g_state.scale(Complex64::new(-1.0, 0.0)))?
                .scale(half);
            let p_plus = plus.norm_sqr();
            let draw: f64 = rng.gen();
            let (bit, branch) = if draw < p_plus { (0, plus) } else { (1, minus) };
            bits.push(bit);
            current = branch.normalized().0;
        }
        Ok((Syndrome(bits), current))
    }

    pub fn lookup_correction(&self, syndrome: &Syndrome) -> Result<PauliString> {
        self.correction.lookup(syndrome)
    }

    /// Copy with one correction entry replaced; the decoder is unchanged.
    pub fn with_corrupted_entry(&self, syndrome: Syndrome, replacement: PauliString) -> Self {
        let mut out = self.clone();
        out.correction = self.correction.with_override(syndrome, replacement);
        out
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn names_round_trip() {
        for name in CodeName::ALL {
            assert_eq!(name.as_str().parse::<CodeName>().unwrap(), name);
        }
        assert!(matches!(
            "golay".parse::<CodeName>(),
            Err(QeccError::UnknownCode(_))
        ));
    }

    #[test]
    fn codewords_are_orthonormal_and_stabilized() {
        for name in CodeName::ALL {
            let code = build_code(name).unwrap();
            assert!(
                code.zero_l().overlap(code.one_l()).unwrap().norm() < 1e-12,
                "{name}"
            );
            for w in [code.zero_l(), code.one_l()] {
                assert!((w.norm_sqr() - 1.0).abs() < 1e-12);
                for g in &code.generators {
                    assert!(g.apply(w).unwrap().approx_eq(w, 1e-12), "{name} {g}");
                }
            }
        }
    }

    #[test]
    fn bitflip_encoding() {
        let code = build_code(CodeName::Bitflip3).unwrap();
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let s = code.encode(a, b).unwrap();
        assert_eq!(s.amp(0), a);
        assert_eq!(s.amp(7), b);
        assert!(code.encode(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn shor_codewords() {
        let code = build_code(CodeName::Shor9).unwrap();
        let k = 1.0 / 8f64.sqrt();
        for (w, sign) in [(code.zero_l(), 1.0f64), (code.one_l(), -1.0)] {
            for idx in 0..512usize {
                let blocks = [(idx >> 6) & 7, (idx >> 3) & 7, idx & 7];
                let want = if blocks.iter().all(|&b| b == 0 || b == 7) {
                    let ones = blocks.iter().filter(|&&b| b == 7).count() as i32;
                    k * sign.powi(ones)
                } else {
                    0.0
                };
                assert!(
                    (w.amp(idx) - c(want, 0.0)).norm() < 1e-12,
                    "index {idx:09b}"
                );
            }
        }
    }

    #[test]
    fn lookup_examples() {
        let shor = build_code(CodeName::Shor9).unwrap();
        let lk = |s: &str| {
            shor.lookup_correction(&Syndrome::parse(s, 8).unwrap())
                .unwrap()
        };
        assert_eq!(lk("11000000"), PauliString::parse(9, "X2").unwrap());
        assert_eq!(lk("00000010"), PauliString::parse(9, "Z1 Z2 Z3").unwrap());
        assert!(lk("00000000").is_identity());

        let steane = build_code(CodeName::Steane7).unwrap();
        let s = steane
            .lookup_correction(&Syndrome::parse("100111", 6).unwrap())
            .unwrap();
        let want = PauliString::parse(7, "X7")
            .unwrap()
            .mul(&PauliString::parse(7, "Z4").unwrap())
            .unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn every_syndrome_has_a_consistent_correction() {
        for name in CodeName::ALL {
            let code = build_code(name).unwrap();
            for (s, p) in code.correction.entries().unwrap() {
                assert_eq!(code.syndrome_of(&p).unwrap(), s, "{name}");
            }
        }
    }

    #[test]
    fn eigen_syndrome_rejects_superpositions() {
        let code = build_code(CodeName::Bitflip3).unwrap();
        let s = code.encode(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let x1 = PauliString::parse(3, "X1").unwrap().apply(&s).unwrap();
        let mixed = s.add(&x1).unwrap().normalized().0;
        assert!(matches!(
            code.eigen_syndrome(&mixed),
            Err(QeccError::NotPauliDiagnosable { generator: 1 })
        ));
        let (syn, collapsed) = code.projective_syndrome(&mixed, 3).unwrap();
        assert_eq!(code.eigen_syndrome(&collapsed).unwrap(), syn);
    }

    #[test]
    fn decoder_unitary_is_orthonormal() {
        for name in [CodeName::Steane7, CodeName::Five5] {
            let code = build_code(name).unwrap();
            let Decoder::Unitary(cols) = &code.decoder else {
                panic!("expected unitary decoder");
            };
            for (i, a) in cols.iter().enumerate() {
                for (j, b) in cols.iter().enumerate().skip(i) {
                    let ov = a.overlap(b).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ov - c(want, 0.0)).norm() < 1e-12, "{name} {i} {j}");
                }
            }
        }
    }
}
