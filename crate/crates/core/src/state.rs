//! Dense statevectors and the gate kernels used by the encoding and decoding
//! circuits.
//!
//! Basis labels read left to right as `|q1 q2 ... qn>`: qubit 1 is the most
//! significant bit of the amplitude index. Every operation returns a new
//! value; a `StateVector` is never mutated after construction.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::density::DensityMatrix2;
use crate::error::{QeccError, Result};

/// Largest register the simulator accepts (dimension 4096).
pub const MAX_QUBITS: usize = 12;

/// Equality tolerance for amplitudes and norms.
pub const TOLERANCE: f64 = 1e-12;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[inline]
pub(crate) fn qubit_bit(n: usize, qubit: usize) -> usize {
    1 << (n - qubit)
}

pub(crate) fn check_qubit(n: usize, qubit: usize) -> Result<()> {
    if qubit == 0 || qubit > n {
        Err(QeccError::Index { index: qubit, n })
    } else {
        Ok(())
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(QeccError::Size {
            requested: n,
            max: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// A gate of the circuit model. Qubit indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        controls: [usize; 2],
        target: usize,
    },
    /// Gather permutation: new position `i` holds old qubit `order[i - 1]`.
    Permute(Vec<usize>),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Toffoli {
            controls: [c1, c2],
            target,
        }
    }

    /// Checks the gate against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => check_qubit(n, *q),
            Gate::Cnot { control, target } => {
                check_qubit(n, *control)?;
                check_qubit(n, *target)?;
                if control == target {
                    return Err(QeccError::InvalidGate(format!(
                        "CNOT control and target coincide on qubit {control}"
                    )));
                }
                Ok(())
            }
            Gate::Toffoli { controls, target } => {
                for q in controls.iter().chain(std::iter::once(target)) {
                    check_qubit(n, *q)?;
                }
                if controls[0] == controls[1] || controls.contains(target) {
                    return Err(QeccError::InvalidGate(format!(
                        "Toffoli qubits must be distinct, got {controls:?} -> {target}"
                    )));
                }
                Ok(())
            }
            Gate::Permute(order) => validate_permutation(order, n),
        }
    }
}

pub(crate) fn validate_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if order.len() != n {
        return Err(QeccError::InvalidPermutation(order.to_vec(), n));
    }
    for &q in order {
        if q == 0 || q > n || seen[q] {
            return Err(QeccError::InvalidPermutation(order.to_vec(), n));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Inverse of a gather permutation.
pub fn inverse_permutation(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (pos, &q) in order.iter().enumerate() {
        inv[q - 1] = pos + 1;
    }
    inv
}

/// Complex amplitudes of an `n`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_size(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(QeccError::Index { index, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps raw amplitudes. The length must be `2^n`; normalization is not
    /// enforced so that intermediate linear combinations can be represented.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        if amps.len() != 1usize << n {
            return Err(QeccError::DimensionMismatch {
                left: n,
                right: amps.len().trailing_zeros() as usize,
            });
        }
        Ok(Self { n, amps })
    }

    /// Single-qubit state `alpha|0> + beta|1>`.
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::make_state(1, &[(1, [alpha, beta])])
    }

    pub(crate) fn qubit_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        Self {
            n: 1,
            amps: vec![alpha, beta],
        }
    }

    /// Tensor product of single-qubit states in qubit order. Qubits that are
    /// not assigned start in `|0>`.
    pub fn make_state(n: usize, assignments: &[(usize, [Complex64; 2])]) -> Result<Self> {
        check_size(n)?;
        let mut factors = vec![[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]; n];
        for &(q, pair) in assignments {
            check_qubit(n, q)?;
            let norm_sq = pair[0].norm_sqr() + pair[1].norm_sqr();
            if (norm_sq - 1.0).abs() > TOLERANCE {
                return Err(QeccError::Normalization { norm_sq });
            }
            factors[q - 1] = pair;
        }
        let amps = (0..1usize << n)
            .map(|idx| {
                factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f[(idx >> (n - 1 - k)) & 1])
                    .product()
            })
            .collect();
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn kron(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        check_size(n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { n, amps })
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// Amplitude-wise sum, used to build linear combinations of operators.
    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.check_same(other)?;
        Ok(StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Returns the state scaled to unit norm together with the norm it had.
    pub fn normalized(&self) -> (StateVector, f64) {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return (self.clone(), 0.0);
        }
        (self.scale(Complex64::new(1.0 / norm, 0.0)), norm)
    }

    fn check_same(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            Err(QeccError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.n == other.n
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn apply_gate(&self, gate: &Gate) -> Result<StateVector> {
        gate.validate(self.n)?;
        let n = self.n;
        let out = match gate {
            Gate::H(q) => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.single_qubit(*q, [[h, h], [h, -h]])
            }
            Gate::X(q) => {
                let bit = qubit_bit(n, *q);
                self.map_indices(|i| i ^ bit)
            }
            Gate::Y(q) => {
                let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
                self.single_qubit(*q, [[o, -i], [i, o]])
            }
            Gate::Z(q) => {
                let bit = qubit_bit(n, *q);
                let amps = self
                    .amps
                    .iter()
                    .enumerate()
                    .map(|(idx, a)| if idx & bit != 0 { -a } else { *a })
                    .collect();
                StateVector { n, amps }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (qubit_bit(n, *control), qubit_bit(n, *target));
                self.map_indices(|i| if i & c != 0 { i ^ t } else { i })
            }
            Gate::Toffoli { controls, target } => {
                let c = qubit_bit(n, controls[0]) | qubit_bit(n, controls[1]);
                let t = qubit_bit(n, *target);
                self.map_indices(|i| if i & c == c { i ^ t } else { i })
            }
            Gate::Permute(order) => self.gather(order),
        };
        Ok(out)
    }

    pub fn apply_circuit<'a, I>(&self, gates: I) -> Result<StateVector>
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        gates
            .into_iter()
            .try_fold(self.clone(), |s, g| s.apply_gate(g))
    }

    /// Relabels qubits: new position `i` holds old qubit `gather[i - 1]`.
    pub fn permute_qubits(&self, gather: &[usize]) -> Result<StateVector> {
        validate_permutation(gather, self.n)?;
        Ok(self.gather(gather))
    }

    fn gather(&self, order: &[usize]) -> StateVector {
        let n = self.n;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (old, a) in self.amps.iter().enumerate() {
            let new = order.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                let bit = (old >> (n - q)) & 1;
                acc | (bit << (n - 1 - pos))
            });
            amps[new] = *a;
        }
        StateVector { n, amps }
    }

    /// Basis-permuting gate: amplitude at `i` moves to `f(i)`.
    fn map_indices(&self, f: impl Fn(usize) -> usize) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, a) in self.amps.iter().enumerate() {
            amps[f(i)] = *a;
        }
        StateVector { n: self.n, amps }
    }

    fn single_qubit(&self, q: usize, m: [[Complex64; 2]; 2]) -> StateVector {
        let bit = qubit_bit(self.n, q);
        let mut amps = self.amps.clone();
        for i in (0..self.dim()).filter(|i| i & bit == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
        StateVector { n: self.n, amps }
    }

    /// Partial trace over every qubit except `q`.
    pub fn reduced_density(&self, q: usize) -> Result<DensityMatrix2> {
        check_qubit(self.n, q)?;
        let bit = qubit_bit(self.n, q);
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in (0..self.dim()).filter(|i| i & bit == 0) {
            let pair = [self.amps[i], self.amps[i | bit]];
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c] += pair[r] * pair[c].conj();
                }
            }
        }
        let trace = m[0][0].re + m[1][1].re;
        if trace > 0.0 {
            for row in m.iter_mut() {
                for v in row.iter_mut() {
                    *v /= trace;
                }
            }
        }
        DensityMatrix2::new(m)
    }

    /// Bit string label of a basis index, qubit 1 first.
    pub fn bit_label(&self, index: usize) -> String {
        format!("{:0width$b}", index, width = self.n)
    }

    /// Sum of `(amplitude)|bits>` terms in ascending basis order; terms with
    /// magnitude at or below `tolerance` are dropped.
    pub fn dirac(&self, tolerance: f64) -> String {
        let terms: Vec<String> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tolerance)
            .map(|(i, a)| format!("({})|{}>", format_complex(*a, tolerance), self.bit_label(i)))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Renders a state that is linear in the input amplitudes, `a * zero_image +
/// b * one_image`, with `a` and `b` kept symbolic.
pub fn dirac_symbolic(
    zero_image: &StateVector,
    one_image: &StateVector,
    tolerance: f64,
) -> Result<String> {
    zero_image.check_same(one_image)?;
    let mut terms = Vec::new();
    for i in 0..zero_image.dim() {
        let (ca, cb) = (zero_image.amps[i], one_image.amps[i]);
        let mut coeff = String::new();
        for (c, sym) in [(ca, "a"), (cb, "b")] {
            if c.norm() <= tolerance {
                continue;
            }
            let part = symbolic_term(c, sym, tolerance);
            if !coeff.is_empty() && !part.starts_with('-') {
                coeff.push('+');
            }
            coeff.push_str(&part);
        }
        if !coeff.is_empty() {
            terms.push(format!("({coeff})|{}>", zero_image.bit_label(i)));
        }
    }
    Ok(if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    })
}

fn symbolic_term(c: Complex64, sym: &str, tol: f64) -> String {
    let near = |re: f64, im: f64| (c - Complex64::new(re, im)).norm() <= tol;
    if near(1.0, 0.0) {
        sym.to_string()
    } else if near(-1.0, 0.0) {
        format!("-{sym}")
    } else if near(0.0, 1.0) {
        format!("i{sym}")
    } else if near(0.0, -1.0) {
        format!("-i{sym}")
    } else if c.im.abs() <= tol {
        format!("{}{sym}", format_real(c.re))
    } else {
        format!("({}){sym}", format_complex(c, tol))
    }
}

/// Six-decimal rendering with trailing zeros removed.
pub fn format_real(x: f64) -> String {
    let mut s = format!("{x:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `re`, or `re+imi` / `re-imi` when the imaginary part is significant.
pub fn format_complex(c: Complex64, tolerance: f64) -> String {
    let mut s = format_real(if c.re.abs() <= tolerance { 0.0 } else { c.re });
    if c.im.abs() > tolerance {
        let im = format_real(c.im.abs());
        let _ = write!(s, "{}{}i", if c.im < 0.0 { '-' } else { '+' }, im);
    }
    s
}
