//! Fidelity, Bloch-sphere averages, the double-error census and the
//! depolarizing-channel curves.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use num_rational::Ratio;

use crate::codes::{run_pipeline, CodeName, CodeSpec, PipelineOptions, ResidualClass};
use crate::density::{matmul2, DensityMatrix2};
use crate::error::{QeccError, Result};
use crate::noise::ErrorOperator;
use crate::pauli::{Pauli1, PauliString};
use crate::state::StateVector;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    /// `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(QeccError::InvalidAngle(format!(
                "theta {theta} outside [0, pi]"
            )));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(QeccError::InvalidAngle(format!(
                "phi {phi} outside [0, 2pi)"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `(cos(theta/2), e^{i phi} sin(theta/2))`.
pub fn bloch_state(angles: BlochAngles) -> (Complex64, Complex64) {
    (
        Complex64::new((angles.theta / 2.0).cos(), 0.0),
        Complex64::from_polar((angles.theta / 2.0).sin(), angles.phi),
    )
}

/// `<psi|rho|psi>` for a one-qubit state.
pub fn fidelity_pure(psi: &StateVector, rho: &DensityMatrix2) -> Result<f64> {
    if psi.n() != 1 {
        return Err(QeccError::DimensionMismatch {
            left: 1,
            right: psi.n(),
        });
    }
    Ok(rho.expectation(psi.amp(0), psi.amp(1)))
}

/// Determinants below this are roundoff from rank-one inputs and are read as
/// zero; `sqrt` would otherwise amplify 1e-17 into 1e-9.
const DET_FLOOR: f64 = 1e-14;

/// `(Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2`, through the qubit identity
/// `Tr(sigma rho) + 2 sqrt(det sigma det rho)`.
pub fn fidelity_general(sigma: &DensityMatrix2, rho: &DensityMatrix2) -> f64 {
    let prod = matmul2(&sigma.matrix(), &rho.matrix());
    let overlap = (prod[0][0] + prod[1][1]).re;
    let det = |m: &DensityMatrix2| {
        let d = m.determinant();
        if d < DET_FLOOR {
            0.0
        } else {
            d
        }
    };
    (overlap + 2.0 * (det(sigma) * det(rho)).sqrt()).clamp(0.0, 1.0)
}

/// Closed form of `|<psi|E psi>|^2` on the Bloch sphere.
pub fn residual_fidelity(angles: BlochAngles, residual: Pauli1) -> f64 {
    let (t, p) = (angles.theta, angles.phi);
    match residual {
        Pauli1::I => 1.0,
        Pauli1::X => (t.sin() * p.cos()).powi(2),
        Pauli1::Y => (t.sin() * p.sin()).powi(2),
        Pauli1::Z => t.cos().powi(2),
    }
}

/// `|<psi|E psi>|^2` from the statevector path.
pub fn residual_fidelity_numeric(angles: BlochAngles, residual: Pauli1) -> f64 {
    let (a, b) = bloch_state(angles);
    let (e0, e1) = residual.apply_pair(a, b);
    let rho = DensityMatrix2::pure(e0, e1).expect("Pauli image of a normalized state");
    rho.expectation(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageMethod {
    Analytic,
    /// Gauss-Legendre in `cos(theta)` with `theta` nodes, uniform `phi` grid.
    Quadrature {
        theta: usize,
        phi: usize,
    },
}

impl Default for AverageMethod {
    fn default() -> Self {
        AverageMethod::Quadrature {
            theta: 64,
            phi: 128,
        }
    }
}

/// Minimum grid accepted by the quadrature.
pub const MIN_GRID: (usize, usize) = (32, 64);

/// `(1/4 pi) * integral of f over the sphere`.
pub fn sphere_average(
    theta_nodes: usize,
    phi_nodes: usize,
    f: impl Fn(BlochAngles) -> f64,
) -> Result<f64> {
    if theta_nodes < MIN_GRID.0 || phi_nodes < MIN_GRID.1 {
        return Err(QeccError::GridTooSmall(theta_nodes, phi_nodes));
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(theta_nodes).expect("checked above"));
    let h = 2.0 * PI / phi_nodes as f64;
    let total = rule.integrate(-1.0, 1.0, |u| {
        let theta = u.clamp(-1.0, 1.0).acos();
        (0..phi_nodes)
            .map(|k| {
                f(BlochAngles {
                    theta,
                    phi: k as f64 * h,
                })
            })
            .sum::<f64>()
            * h
    });
    Ok(total / (4.0 * PI))
}

pub fn average_residual_fidelity(residual: Pauli1, method: AverageMethod) -> Result<f64> {
    match method {
        AverageMethod::Analytic => Ok(if residual == Pauli1::I {
            1.0
        } else {
            1.0 / 3.0
        }),
        AverageMethod::Quadrature { theta, phi } => {
            sphere_average(theta, phi, |a| residual_fidelity_numeric(a, residual))
        }
    }
}

/// Exact Bloch average of a residual: 1 for I, 1/3 otherwise.
pub fn exact_average(residual: Pauli1) -> Rational {
    if residual == Pauli1::I {
        Rational::from_integer(1)
    } else {
        Rational::new(1, 3)
    }
}

/// Sphere average of `<psi| (1 - P^2) rho + P^2 E rho E |psi>`.
pub fn mixed_channel_average(residual: Pauli1, p: f64, theta: usize, phi: usize) -> Result<f64> {
    check_probability(p)?;
    sphere_average(theta, phi, |angles| {
        let (a, b) = bloch_state(angles);
        let (e0, e1) = residual.apply_pair(a, b);
        let rho = DensityMatrix2::pure(a, b).expect("normalized");
        let rho_e = DensityMatrix2::pure(e0, e1).expect("normalized");
        rho.mix(&rho_e, p * p)
            .expect("convex mix")
            .expectation(a, b)
    })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(QeccError::ProbabilityOutOfRange(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Universe {
    ReferenceTables,
    FullXz,
}

impl Universe {
    pub fn as_str(self) -> &'static str {
        match self {
            Universe::ReferenceTables => "reference-tables",
            Universe::FullXz => "full-xz-universe",
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FnReport {
    pub code: CodeName,
    pub universe: Universe,
    pub total: usize,
    pub identity: usize,
    pub histogram: BTreeMap<Pauli1, usize>,
    pub f: Rational,
    /// Each error label with its residual, in input order.
    pub residuals: Vec<(String, ResidualClass)>,
}

impl FnReport {
    /// `(x + (N - x)/3) / N` from the stored counts.
    pub fn recompute(&self) -> Rational {
        let n = self.total as i64;
        let x = self.identity as i64;
        (Rational::from_integer(x) + Rational::new(n - x, 3)) / n
    }
}

/// Runs correct-then-decode on every error and tallies residuals.
pub fn compute_f(
    code: &CodeSpec,
    universe: Universe,
    errors: &[(String, PauliString)],
) -> Result<FnReport> {
    if errors.is_empty() {
        return Err(QeccError::EmptyUniverse);
    }
    let opts = PipelineOptions::default();
    let mut histogram: BTreeMap<Pauli1, usize> = Pauli1::ALL.iter().map(|p| (*p, 0)).collect();
    let mut residuals = Vec::with_capacity(errors.len());
    let mut weight = Rational::from_integer(0);
    for (label, e) in errors {
        let r = run_pipeline(code, &ErrorOperator::Pauli(*e), &opts)?;
        *histogram.entry(r.residual.logical).or_default() += 1;
        weight += exact_average(r.residual.logical);
        residuals.push((label.clone(), r.residual));
    }
    let total = errors.len();
    Ok(FnReport {
        code: code.name,
        universe,
        total,
        identity: histogram[&Pauli1::I],
        histogram,
        f: weight / total as i64,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveForm {
    /// `1 - c P`
    Linear,
    /// `1 - c P^2`
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FidelityCurve {
    pub label: String,
    pub form: CurveForm,
    pub coefficient: Rational,
}

impl FidelityCurve {
    /// Unprotected qubit: `(1 - P) + P/3`.
    pub fn unprotected() -> Self {
        Self {
            label: "C0".into(),
            form: CurveForm::Linear,
            coefficient: Rational::from_integer(1) - Rational::new(1, 3),
        }
    }

    /// Code with double-error score `f`: `(1 - P^2) + P^2 f`.
    pub fn for_code(label: &str, f: Rational) -> Self {
        Self {
            label: label.into(),
            form: CurveForm::Quadratic,
            coefficient: Rational::from_integer(1) - f,
        }
    }

    pub fn value(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        let c = *self.coefficient.numer() as f64 / *self.coefficient.denom() as f64;
        Ok(match self.form {
            CurveForm::Linear => 1.0 - c * p,
            CurveForm::Quadratic => 1.0 - c * p * p,
        })
    }

    pub fn value_exact(&self, p: Rational) -> Result<Rational> {
        if p < Rational::from_integer(0) || p > Rational::from_integer(1) {
            return Err(QeccError::ProbabilityOutOfRange(
                *p.numer() as f64 / *p.denom() as f64,
            ));
        }
        Ok(match self.form {
            CurveForm::Linear => Rational::from_integer(1) - self.coefficient * p,
            CurveForm::Quadratic => Rational::from_integer(1) - self.coefficient * p * p,
        })
    }

    /// `1-(2/3)P` or `1-(1/6)P^2`.
    pub fn formula(&self) -> String {
        let power = match self.form {
            CurveForm::Linear => "P",
            CurveForm::Quadratic => "P^2",
        };
        format!(
            "1-({}/{}){}",
            self.coefficient.numer(),
            self.coefficient.denom(),
            power
        )
    }

    pub fn sample(&self, grid: &[f64]) -> Result<Vec<f64>> {
        grid.iter().map(|&p| self.value(p)).collect()
    }
}

/// Evenly spaced points `start..=stop` with `steps` intervals.
pub fn probability_grid(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    check_probability(start)?;
    check_probability(stop)?;
    if steps == 0 {
        return Ok(vec![start]);
    }
    Ok((0..=steps)
        .map(|k| start + (stop - start) * k as f64 / steps as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn angles(t: f64, p: f64) -> BlochAngles {
        BlochAngles::new(t, p).unwrap()
    }

    #[test]
    fn bloch_poles() {
        let (a, b) = bloch_state(angles(0.0, 1.3));
        assert_abs_diff_eq!(a.re, 1.0);
        assert_abs_diff_eq!(b.norm(), 0.0);
        let (a, b) = bloch_state(angles(PI, 0.0));
        assert_abs_diff_eq!(a.norm(), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(b.re, 1.0);
        let (a, b) = bloch_state(angles(PI / 2.0, 0.0));
        assert_abs_diff_eq!(a.re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(b.re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(0.1, 2.0 * PI).is_err());
    }

    #[test]
    fn pure_fidelity_cases() {
        let zero = StateVector::zero(1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        assert_abs_diff_eq!(
            fidelity_pure(&zero, &DensityMatrix2::pure(one, z).unwrap()).unwrap(),
            1.0
        );
        assert_abs_diff_eq!(
            fidelity_pure(&zero, &DensityMatrix2::pure(z, one).unwrap()).unwrap(),
            0.0
        );
        let ang = angles(1.0, 2.0);
        let (a, b) = bloch_state(ang);
        let psi = StateVector::qubit(a, b).unwrap();
        let (e0, e1) = Pauli1::Z.apply_pair(a, b);
        let f = fidelity_pure(&psi, &DensityMatrix2::pure(e0, e1).unwrap()).unwrap();
        assert_abs_diff_eq!(f, 1.0f64.cos().powi(2), epsilon = 1e-14);
        assert!(fidelity_pure(
            &StateVector::zero(2).unwrap(),
            &DensityMatrix2::maximally_mixed()
        )
        .is_err());
    }

    #[test]
    fn general_fidelity_cases() {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let sigma = DensityMatrix2::pure(one, z).unwrap();
        assert_abs_diff_eq!(fidelity_general(&sigma, &sigma), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            fidelity_general(&sigma, &DensityMatrix2::maximally_mixed()),
            0.5,
            epsilon = 1e-14
        );
        let m = DensityMatrix2::maximally_mixed();
        assert_abs_diff_eq!(fidelity_general(&m, &m), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn general_fidelity_matches_uhlmann_on_full_rank_states() {
        // Definition evaluated with matrix square roots; well conditioned
        // when both states are full rank.
        let uhlmann = |s: &DensityMatrix2, r: &DensityMatrix2| {
            let root = s.sqrt_matrix();
            let inner = matmul2(&matmul2(&root, &r.matrix()), &root);
            let (a, d) = (inner[0][0].re, inner[1][1].re);
            let r = (0.25 * (a - d).powi(2) + inner[0][1].norm_sqr()).sqrt();
            let (l0, l1) = (0.5 * (a + d) - r, 0.5 * (a + d) + r);
            (l0.sqrt() + l1.sqrt()).powi(2)
        };
        let m = DensityMatrix2::maximally_mixed();
        for (t1, p1, w1, t2, p2, w2) in [
            (0.3, 1.1, 0.2, 2.0, 4.0, 0.5),
            (1.7, 0.2, 0.9, 0.1, 5.5, 0.05),
        ] {
            let (a, b) = bloch_state(angles(t1, p1));
            let s = DensityMatrix2::pure(a, b).unwrap().mix(&m, w1).unwrap();
            let (a, b) = bloch_state(angles(t2, p2));
            let r = DensityMatrix2::pure(a, b).unwrap().mix(&m, w2).unwrap();
            assert_abs_diff_eq!(fidelity_general(&s, &r), uhlmann(&s, &r), epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_forms() {
        assert_abs_diff_eq!(residual_fidelity(angles(PI / 2.0, 0.0), Pauli1::X), 1.0);
        assert_abs_diff_eq!(
            residual_fidelity(angles(PI / 2.0, 0.3), Pauli1::Z),
            0.0,
            epsilon = 1e-30
        );
        assert_abs_diff_eq!(residual_fidelity(angles(0.4, 0.3), Pauli1::I), 1.0);
    }

    #[test]
    fn quadrature_grid_guard() {
        assert!(average_residual_fidelity(
            Pauli1::Z,
            AverageMethod::Quadrature { theta: 8, phi: 128 }
        )
        .is_err());
        let v = average_residual_fidelity(Pauli1::Z, AverageMethod::default()).unwrap();
        assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn curves() {
        let c0 = FidelityCurve::unprotected();
        assert_eq!(c0.formula(), "1-(2/3)P");
        assert_eq!(
            c0.value_exact(Rational::from_integer(1)).unwrap(),
            Rational::new(1, 3)
        );
        let c9 = FidelityCurve::for_code("C9", Rational::new(5, 6));
        assert_eq!(c9.formula(), "1-(1/6)P^2");
        assert_eq!(c9.value(0.0).unwrap(), 1.0);
        assert!(c9.value(1.5).is_err());
        let g = probability_grid(0.0, 1.0, 4).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(probability_grid(0.0, 1.2, 4).is_err());
    }

    #[test]
    fn report_recompute() {
        let r = FnReport {
            code: CodeName::Shor9,
            universe: Universe::FullXz,
            total: 144,
            identity: 108,
            histogram: BTreeMap::new(),
            f: Rational::new(5, 6),
            residuals: vec![],
        };
        assert_eq!(r.recompute(), Rational::new(5, 6));
    }
}
