//! Single-qubit density matrices.

use num_complex::Complex64;

use crate::error::{QeccError, Result};
use crate::state::TOLERANCE;

/// A validated 2x2 density matrix: Hermitian, unit trace, positive
/// semidefinite (all within `TOLERANCE`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    m: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        if (m[0][1] - m[1][0].conj()).norm() > TOLERANCE
            || m[0][0].im.abs() > TOLERANCE
            || m[1][1].im.abs() > TOLERANCE
        {
            return Err(QeccError::InvalidDensity("not Hermitian".into()));
        }
        let trace = m[0][0].re + m[1][1].re;
        if (trace - 1.0).abs() > TOLERANCE {
            return Err(QeccError::InvalidDensity(format!("trace {trace}")));
        }
        let rho = Self { m };
        let (lo, _) = rho.eigenvalues();
        if lo < -TOLERANCE {
            return Err(QeccError::InvalidDensity(format!(
                "negative eigenvalue {lo}"
            )));
        }
        Ok(rho)
    }

    /// `|psi><psi|` for `psi = alpha|0> + beta|1>`.
    pub fn pure(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let v = [alpha, beta];
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = v[r] * v[c].conj();
            }
        }
        Self::new(m)
    }

    pub fn maximally_mixed() -> Self {
        let h = Complex64::new(0.5, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self {
            m: [[h, z], [z, h]],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.m[r][c]
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn purity(&self) -> f64 {
        let m = &self.m;
        (m[0][0] * m[0][0] + m[0][1] * m[1][0] + m[1][0] * m[0][1] + m[1][1] * m[1][1]).re
    }

    pub fn determinant(&self) -> f64 {
        (self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d).powi(2) + self.m[0][1].norm_sqr()).sqrt();
        (mean - r, mean + r)
    }

    /// Eigenpairs `(lambda, [v0, v1])`, eigenvalues ascending, vectors
    /// normalized.
    pub fn eigen(&self) -> [(f64, [Complex64; 2]); 2] {
        let (l0, l1) = self.eigenvalues();
        let b = self.m[0][1];
        let a = self.m[0][0].re;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if b.norm() <= 1e-300 {
            // already diagonal
            return if a <= self.m[1][1].re {
                [(l0, [one, zero]), (l1, [zero, one])]
            } else {
                [(l0, [zero, one]), (l1, [one, zero])]
            };
        }
        let vec_for = |l: f64| {
            // (a - l) v0 + b v1 = 0
            let v = [b, Complex64::new(l - a, 0.0)];
            let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / n, v[1] / n]
        };
        [(l0, vec_for(l0)), (l1, vec_for(l1))]
    }

    /// Principal square root through the eigendecomposition.
    pub fn sqrt_matrix(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (l, v) in self.eigen() {
            let s = l.max(0.0).sqrt();
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] += v[r] * v[c].conj() * s;
                }
            }
        }
        out
    }

    /// `<psi|rho|psi>` for an unnormalized-safe pair `(alpha, beta)`.
    pub fn expectation(&self, alpha: Complex64, beta: Complex64) -> f64 {
        let v = [alpha, beta];
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..2 {
            for c in 0..2 {
                acc += v[r].conj() * self.m[r][c] * v[c];
            }
        }
        acc.re
    }

    /// Convex combination `(1 - w) self + w other`.
    pub fn mix(&self, other: &DensityMatrix2, w: f64) -> Result<DensityMatrix2> {
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| self.m[r][c] * (1.0 - w) + other.m[r][c] * w)
        });
        DensityMatrix2::new(m)
    }
}

pub(crate) fn matmul2(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}
