//! Symplectic n-qubit Pauli operators.
//!
//! A `PauliString` is `i^k * X(x) * Z(z)`: the Z part acts first. Masks use the
//! same bit layout as the statevector index, so qubit `q` of an `n`-qubit
//! operator lives at bit `n - q`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QeccError, Result};
use crate::state::{check_qubit, qubit_bit, StateVector, MAX_QUBITS};

/// A power of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exp: i64) -> Self {
        Phase(exp.rem_euclid(4) as u8)
    }

    pub fn exp(self) -> u8 {
        self.0
    }

    pub fn factor(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// The quarter-turn phase equal to `c` within `tol`, if any.
    pub fn from_complex(c: Complex64, tol: f64) -> Option<Phase> {
        (0..4).map(Phase).find(|p| (p.factor() - c).norm() <= tol)
    }

    /// Prefix used in operator text: "", "i", "-", "-i".
    pub fn prefix(self) -> &'static str {
        ["", "i", "-", "-i"][self.0 as usize]
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

impl FromStr for Phase {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "" | "+" => Ok(Phase::ONE),
            "i" | "+i" => Ok(Phase::I),
            "-1" | "-" => Ok(Phase::MINUS_ONE),
            "-i" => Ok(Phase::MINUS_I),
            other => Err(QeccError::PauliParse {
                label: other.into(),
                reason: "not a phase in {1, i, -1, -i}".into(),
            }),
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const ALL: [Pauli1; 4] = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];

    pub fn letter(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli1::I),
            'X' => Some(Pauli1::X),
            'Y' => Some(Pauli1::Y),
            'Z' => Some(Pauli1::Z),
            _ => None,
        }
    }

    /// Standard matrix applied to `(alpha, beta)`.
    pub fn apply_pair(self, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli1::I => (alpha, beta),
            Pauli1::X => (beta, alpha),
            Pauli1::Y => (-i * beta, i * alpha),
            Pauli1::Z => (alpha, -beta),
        }
    }
}

impl fmt::Display for Pauli1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: 0,
            z: 0,
            phase: Phase::ONE,
        }
    }

    /// Builds from raw masks; bits above `n` are rejected.
    pub fn from_masks(n: usize, x: u64, z: u64, phase: Phase) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(QeccError::Size {
                requested: n,
                max: MAX_QUBITS,
            });
        }
        let full = (1u64 << n) - 1;
        if x & !full != 0 || z & !full != 0 {
            return Err(QeccError::PauliParse {
                label: format!("x={x:b} z={z:b}"),
                reason: format!("mask wider than {n} qubits"),
            });
        }
        Ok(Self { n, x, z, phase })
    }

    /// Standard single-qubit Pauli on qubit `q`.
    pub fn single(n: usize, p: Pauli1, q: usize) -> Result<Self> {
        check_qubit(n, q)?;
        let bit = qubit_bit(n, q) as u64;
        let mut out = Self::identity(n);
        match p {
            Pauli1::I => {}
            Pauli1::X => out.x = bit,
            Pauli1::Z => out.z = bit,
            Pauli1::Y => {
                out.x = bit;
                out.z = bit;
                out.phase = Phase::I;
            }
        }
        Ok(out)
    }

    /// Parses positional ("XXZIZ") or indexed ("X1 Z4", "X2X3", "Z1·X4")
    /// labels, case-insensitive, with an optional leading phase ("-i X2").
    pub fn parse(n: usize, label: &str) -> Result<Self> {
        let err = |reason: &str| QeccError::PauliParse {
            label: label.to_string(),
            reason: reason.to_string(),
        };
        let (phase, body) = split_phase(label.trim());
        let body: String = body
            .chars()
            .map(|c| {
                if c == '·' || c == '*' || c == ',' {
                    ' '
                } else {
                    c
                }
            })
            .collect();
        let body = body.trim();
        if body.is_empty() {
            return Err(err("empty label"));
        }
        let mut out = Self::identity(n);
        if n == 0 || n > MAX_QUBITS {
            return Err(QeccError::Size {
                requested: n,
                max: MAX_QUBITS,
            });
        }
        let compact: String = body.split_whitespace().collect();
        if compact.chars().all(|c| Pauli1::from_letter(c).is_some()) {
            if compact.len() == 1 && compact.eq_ignore_ascii_case("I") {
                out.phase = phase;
                return Ok(out);
            }
            if compact.len() != n {
                return Err(err(&format!("positional label needs {n} letters")));
            }
            for (k, c) in compact.chars().enumerate() {
                let p = Pauli1::from_letter(c).expect("checked above");
                out = out.mul(&Self::single(n, p, k + 1)?)?;
            }
        } else {
            let chars: Vec<char> = compact.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let p =
                    Pauli1::from_letter(chars[i]).ok_or_else(|| err("expected I, X, Y or Z"))?;
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err("missing qubit index"));
                }
                let q: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("bad qubit index"))?;
                let single = Self::single(n, p, q)
                    .map_err(|_| err(&format!("qubit {q} outside 1..={n}")))?;
                out = out.mul(&single)?;
            }
        }
        out.phase = out.phase * phase;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase.exp()
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        Self { phase, ..*self }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// The letter acting on qubit `q` (Y wherever both masks are set).
    pub fn letter(&self, q: usize) -> Pauli1 {
        let bit = qubit_bit(self.n, q) as u64;
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    /// Phase relative to the tensor product of standard letters.
    pub fn standard_phase(&self) -> Phase {
        let ys = (self.x & self.z).count_ones() as i64;
        Phase::new(self.phase.exp() as i64 - ys)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(QeccError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let swap = 2 * (self.z & other.x).count_ones() as i64;
        Ok(Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: Phase::new(self.phase.exp() as i64 + other.phase.exp() as i64 + swap),
        })
    }

    /// Hermitian adjoint, which is also the inverse.
    pub fn inverse(&self) -> Self {
        let swap = 2 * (self.x & self.z).count_ones() as i64;
        Self {
            phase: Phase::new(-(self.phase.exp() as i64) + swap),
            ..*self
        }
    }

    pub fn symplectic(&self, other: &Self) -> u32 {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.symplectic(other) == 0)
    }

    /// One bit per generator: 1 where the operator anticommutes.
    pub fn syndrome(&self, generators: &[PauliString]) -> Result<Syndrome> {
        generators
            .iter()
            .map(|g| {
                self.check_same(g)?;
                Ok(self.symplectic(g) as u8)
            })
            .collect::<Result<Vec<u8>>>()
            .map(Syndrome)
    }

    /// Image of the basis state `index`: `(new_index, factor)`.
    pub fn act_on_basis(&self, index: usize) -> (usize, Complex64) {
        let sign = if (self.z & index as u64).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        (index ^ self.x as usize, self.phase.factor() * sign)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.n() != self.n {
            return Err(QeccError::DimensionMismatch {
                left: self.n,
                right: state.n(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); state.dim()];
        for (i, a) in state.amps().iter().enumerate() {
            let (j, f) = self.act_on_basis(i);
            amps[j] = a * f;
        }
        StateVector::from_amplitudes(self.n, amps)
    }

    /// Dense `2^n x 2^n` matrix, row-major. Limited to six qubits.
    #[allow(clippy::needless_range_loop)]
    pub fn to_dense(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.n > 6 {
            return Err(QeccError::TooLargeForDense(self.n));
        }
        let dim = 1usize << self.n;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let (row, f) = self.act_on_basis(col);
            m[row][col] = f;
        }
        Ok(m)
    }

    /// Indexed tokens without a phase prefix, e.g. "X2 Z4", or "I".
    pub fn body_label(&self) -> String {
        let tokens: Vec<String> = (1..=self.n)
            .filter(|&q| self.letter(q) != Pauli1::I)
            .map(|q| format!("{}{}", self.letter(q), q))
            .collect();
        if tokens.is_empty() {
            "I".into()
        } else {
            tokens.join(" ")
        }
    }

    /// Table-style text without spaces: "-iX2X3X4X5".
    pub fn compact_label(&self) -> String {
        format!(
            "{}{}",
            self.standard_phase().prefix(),
            self.body_label().replace(' ', "")
        )
    }

    /// Positional letters, qubit 1 first, e.g. "XXZIZ".
    pub fn positional(&self) -> String {
        (1..=self.n).map(|q| self.letter(q).letter()).collect()
    }
}

fn split_phase(label: &str) -> (Phase, &str) {
    let (sign, rest) = if let Some(r) = label.strip_prefix('-') {
        (Phase::MINUS_ONE, r)
    } else if let Some(r) = label.strip_prefix('+') {
        (Phase::ONE, r)
    } else {
        (Phase::ONE, label)
    };
    let rest = rest.trim_start();
    // a lowercase `i` is a phase only when followed by a space or an
    // uppercase letter; "i" alone would be the identity
    let mut chars = rest.chars();
    if chars.next() == Some('i') {
        match chars.next() {
            Some(c) if c.is_whitespace() || c.is_ascii_uppercase() => {
                return (sign * Phase::I, &rest[1..]);
            }
            None if sign != Phase::ONE || label.starts_with('+') => {
                return (sign * Phase::I, "I");
            }
            _ => {}
        }
    }
    (sign, rest)
}

impl fmt::Display for PauliString {
    /// Indexed tokens with a standard-letter phase prefix: "-i X2 X3".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self.standard_phase().prefix();
        if prefix.is_empty() || self.is_identity() {
            write!(f, "{}", prefix)?;
            f.write_str(&self.body_label())
        } else {
            write!(f, "{} {}", prefix, self.body_label())
        }
    }
}

/// Generator eigenvalue record: 0 for +1, 1 for -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syndrome(pub Vec<u8>);

impl Syndrome {
    pub fn zeros(len: usize) -> Self {
        Syndrome(vec![0; len])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Integer value with the first bit most significant.
    pub fn value(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn from_value(value: usize, len: usize) -> Self {
        Syndrome(
            (0..len)
                .map(|k| ((value >> (len - 1 - k)) & 1) as u8)
                .collect(),
        )
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        Syndrome(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Syndrome {
        Syndrome(self.0[range].to_vec())
    }

    pub fn parse(text: &str, len: usize) -> Result<Self> {
        let err = |reason: &str| QeccError::InvalidSyndrome {
            syndrome: text.to_string(),
            reason: reason.to_string(),
        };
        let bits: Vec<u8> = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(err("only 0 and 1 are allowed")),
            })
            .collect::<Result<_>>()?;
        if bits.len() != len {
            return Err(err(&format!("expected {len} bits")));
        }
        Ok(Syndrome(bits))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> PauliString {
        PauliString::parse(n, s).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_positional_and_indexed() {
        let g = p(5, "XXZIZ");
        assert_eq!(
            (g.x_mask(), g.z_mask(), g.phase_exp()),
            (0b11000, 0b00101, 0)
        );
        let x1 = p(9, "X1");
        assert_eq!((x1.x_mask(), x1.z_mask()), (1 << 8, 0));
        let y1 = p(2, "Y1");
        assert_eq!((y1.x_mask(), y1.z_mask(), y1.phase_exp()), (0b10, 0b10, 1));
        assert_eq!(p(9, "x2 x3"), p(9, "X2X3"));
        assert_eq!(p(7, "Z1·X4"), p(7, "Z1 X4"));
        assert_eq!(p(9, "-i X2 X3").phase(), Phase::MINUS_I);
        assert_eq!(p(9, "-iX2X3").phase(), Phase::MINUS_I);
        assert_eq!(p(3, "I"), PauliString::identity(3));
        assert_eq!(p(3, "iii"), PauliString::identity(3));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "X0", "X10", "Q1", "XXZ", "X", "X1 Q2", "Z"] {
            let res = PauliString::parse(9, bad);
            assert!(matches!(res, Err(QeccError::PauliParse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn dense_single_qubit_matrices() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let i = c(0.0, 1.0);
        assert_eq!(
            p(1, "X").to_dense().unwrap(),
            vec![vec![zero, one], vec![one, zero]]
        );
        assert_eq!(
            p(1, "Z").to_dense().unwrap(),
            vec![vec![one, zero], vec![zero, -one]]
        );
        assert_eq!(
            p(1, "Y").to_dense().unwrap(),
            vec![vec![zero, -i], vec![i, zero]]
        );
        assert!(matches!(
            PauliString::identity(7).to_dense(),
            Err(QeccError::TooLargeForDense(7))
        ));
    }

    #[test]
    fn products() {
        let xz = p(1, "X").mul(&p(1, "Z")).unwrap();
        assert_eq!((xz.x_mask(), xz.z_mask(), xz.phase_exp()), (1, 1, 0));
        assert_eq!(xz.compact_label(), "-iY1");
        assert_eq!(p(3, "Z1Z2").mul(&p(3, "Z2Z3")).unwrap(), p(3, "Z1Z3"));
        assert!(p(9, "X1").mul(&p(9, "X1")).unwrap().is_identity());
        assert!(p(3, "X1").mul(&p(2, "X1")).is_err());
        for s in ["Y1", "XYZ", "-i X1 Y3", "Z1X1"] {
            let a = p(3, s);
            assert_eq!(a.mul(&a.inverse()).unwrap(), PauliString::identity(3));
        }
    }

    #[test]
    fn commutation() {
        assert!(!p(9, "X1").commutes(&p(9, "Z1Z2")).unwrap());
        assert!(p(9, "X1").commutes(&p(9, "Z2Z3")).unwrap());
        let g = p(5, "XXZIZ");
        assert!(g.commutes(&g).unwrap());
    }

    #[test]
    fn labels() {
        let e = p(9, "-i X2 X3 X4 X5");
        assert_eq!(e.to_string(), "-i X2 X3 X4 X5");
        assert_eq!(e.compact_label(), "-iX2X3X4X5");
        assert_eq!(p(9, "Y1").to_string(), "Y1");
        assert_eq!(p(5, "XXZIZ").positional(), "XXZIZ");
        assert_eq!(PauliString::identity(4).to_string(), "I");
        assert_eq!(p(4, "-I").to_string(), "-I");
        assert_eq!(p(9, &e.to_string()), e);
    }

    #[test]
    fn syndrome_text() {
        let s = Syndrome::parse("0101", 4).unwrap();
        assert_eq!(s.value(), 5);
        assert_eq!(Syndrome::from_value(5, 4), s);
        assert_eq!(s.to_string(), "0101");
        assert!(Syndrome::parse("012", 3).is_err());
        assert!(Syndrome::parse("01", 3).is_err());
    }

    #[test]
    fn phase_helpers() {
        assert_eq!(
            Phase::from_complex(c(0.0, -1.0), 1e-9),
            Some(Phase::MINUS_I)
        );
        assert_eq!(Phase::from_complex(c(0.7, 0.7), 1e-9), None);
        assert_eq!("-i".parse::<Phase>().unwrap(), Phase::MINUS_I);
        assert_eq!(Phase::I * Phase::I, Phase::MINUS_ONE);
    }
}
