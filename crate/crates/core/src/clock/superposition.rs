use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::operators::{commutator_tcyclot_hc, cyclo_sum_coefficient};
use super::{ClockError, ClockModel, Exact, Unit};
use crate::linalg::OperatorMatrix;

/// `⟨f|[T_cyclot, H_c]|f⟩` evaluated two ways, in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionValue {
    /// `(ħω)(τ/N) Σ_{n,l} c_n^* c_l a_{ln}`.
    pub formula: Complex64,
    /// Direct sandwich with the brute-force commutator matrix.
    pub sandwich: Complex64,
}

impl SuperpositionValue {
    pub fn abs_diff(&self) -> f64 {
        (self.formula - self.sandwich).norm()
    }
}

/// Caches the `a_{ln}` table and the commutator matrix for repeated
/// evaluation on many states of one model.
#[derive(Debug, Clone)]
pub struct SuperpositionEvaluator {
    model: ClockModel,
    /// `a_{ln}` embedded, indexed `[l * N + n]`.
    coefficients: Vec<Complex64>,
    commutator: OperatorMatrix<Complex64>,
}

impl SuperpositionEvaluator {
    pub fn new(model: &ClockModel) -> Result<Self, ClockError> {
        let n = model.dim() as i64;
        let mut coefficients = Vec::with_capacity((n * n) as usize);
        for l in 0..n {
            for k in 0..n {
                coefficients.push(cyclo_sum_coefficient(model, l, k)?.to_complex());
            }
        }
        let commutator = commutator_tcyclot_hc::<Exact>(model)?.physical();
        Ok(Self {
            model: *model,
            coefficients,
            commutator,
        })
    }

    pub fn evaluate(&self, c: &[Complex64]) -> Result<SuperpositionValue, ClockError> {
        let n = self.model.dim();
        if c.len() != n {
            return Err(ClockError::AmplitudeCount {
                expected: n,
                found: c.len(),
            });
        }
        let norm: f64 = c.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(ClockError::NotNormalized(norm));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (l, cl) in c.iter().enumerate() {
            for (k, ck) in c.iter().enumerate() {
                sum += ck.conj() * cl * self.coefficients[l * n + k];
            }
        }
        let formula = sum * (Unit::TauHbarOmega.value(n) / n as f64);

        let mut sandwich = Complex64::new(0.0, 0.0);
        for (a, ca) in c.iter().enumerate() {
            for (b, cb) in c.iter().enumerate() {
                sandwich += ca.conj() * self.commutator.get(a, b) * cb;
            }
        }
        Ok(SuperpositionValue { formula, sandwich })
    }
}

pub fn superposition_expectation(
    model: &ClockModel,
    c: &[Complex64],
) -> Result<SuperpositionValue, ClockError> {
    SuperpositionEvaluator::new(model)?.evaluate(c)
}

/// Normalized state with i.i.d. standard normal real and imaginary parts.
pub fn random_normalized_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}
