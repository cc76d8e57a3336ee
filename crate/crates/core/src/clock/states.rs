use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::{ClockError, ClockModel, ClockScalar, Exact};
use crate::linalg::{Float, OperatorMatrix, StateVector};

/// `u_n(θ) = (2π)^{-1/2} e^{inθ}` for `0 <= n < N`.
pub fn azimuthal_wavefunction(model: &ClockModel, n: i64, theta: f64) -> Result<Complex64, ClockError> {
    model.check_index(n)?;
    Ok(Complex64::from_polar((2.0 * PI).sqrt().recip(), n as f64 * theta))
}

/// Unnormalized pointer vector with entries `ζ_N^{-kn}`, `n = 0..N-1`.
pub fn pointer_vector_raw<S: ClockScalar>(model: &ClockModel, k: i64) -> Result<StateVector<S>, ClockError> {
    let k = model.check_index(k)? as i64;
    let entries = (0..model.dim() as i64).map(|n| S::phase(model, -k * n)).collect();
    Ok(StateVector::new(S::kind_for(model), entries)?)
}

/// Normalized `v_k` in floating point.
pub fn pointer_state_float(model: &ClockModel, k: i64) -> Result<StateVector<Complex64>, ClockError> {
    let raw = pointer_vector_raw::<Complex64>(model, k)?;
    Ok(raw.scale(&Complex64::new((model.dim() as f64).sqrt().recip(), 0.0)))
}

/// Exact pointer state `v_k = N^{-1/2} Σ_n ζ_N^{-kn} u_n`.
///
/// The irrational normalization is kept symbolic: the state is
/// `sqrt(scale_sq) · raw` with `scale_sq = 1/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerState {
    index: usize,
    raw: StateVector<Exact>,
    scale_sq: BigRational,
}

pub fn pointer_state_vector(model: &ClockModel, k: i64) -> Result<PointerState, ClockError> {
    let raw = pointer_vector_raw::<Exact>(model, k)?;
    Ok(PointerState {
        index: k as usize,
        raw,
        scale_sq: BigRational::new(BigInt::from(1), BigInt::from(model.dim())),
    })
}

impl PointerState {
    pub fn index(&self) -> usize {
        self.index
    }

    /// Integer-coefficient vector before the `N^{-1/2}` scale.
    pub fn raw(&self) -> &StateVector<Exact> {
        &self.raw
    }

    pub fn scale_sq(&self) -> &BigRational {
        &self.scale_sq
    }

    pub fn dim(&self) -> usize {
        self.raw.dim()
    }

    /// `"1/sqrt(N)"`.
    pub fn scale_label(&self) -> String {
        format!("1/sqrt({})", self.dim())
    }

    /// `⟨self|other⟩`, exact. Both states carry the same `1/N` scale, so the
    /// product of square roots is rational.
    pub fn overlap(&self, other: &PointerState) -> Result<Exact, ClockError> {
        assert_eq!(self.scale_sq, other.scale_sq, "pointer states of different models");
        Ok(self.raw.inner_product(&other.raw)?.scale(&self.scale_sq))
    }

    /// `⟨self|A|other⟩`, exact.
    pub fn element(&self, op: &OperatorMatrix<Exact>, other: &PointerState) -> Result<Exact, ClockError> {
        assert_eq!(self.scale_sq, other.scale_sq, "pointer states of different models");
        Ok(op.sandwich(&self.raw, &other.raw)?.scale(&self.scale_sq))
    }

    pub fn embed(&self) -> StateVector<Complex64> {
        let s = num_traits::ToPrimitive::to_f64(&self.scale_sq).unwrap().sqrt();
        self.raw.embed().scale(&Complex64::new(s, 0.0))
    }
}

/// Find `k` and a phase `λ` with `raw = λ · raw(v_k)`, comparing exactly.
pub fn identify_pointer(model: &ClockModel, raw: &StateVector<Exact>) -> Option<(usize, Exact)> {
    // raw(v_k) has 1 in position 0
    let lambda = raw.get(0).clone();
    if lambda.is_zero() || raw.dim() != model.dim() {
        return None;
    }
    (0..model.dim()).find_map(|k| {
        let matches = (0..model.dim()).all(|n| {
            let expected = &lambda * &Exact::root_of_unity(model.dim(), -((k * n) as i64));
            *raw.get(n) == expected
        });
        matches.then(|| (k, lambda.clone()))
    })
}

/// Dirichlet-kernel form `(2πN)^{-1/2} sin(N x/2) / sin(x/2)`, `x = θ - 2πk/N`.
///
/// At `x = 2πm` the continuous limit `N (-1)^{m(N-1)} (2πN)^{-1/2}` is returned.
pub fn pointer_wavefunction_closed_form(model: &ClockModel, k: i64, theta: f64) -> Result<f64, ClockError> {
    let k = model.check_index(k)?;
    let n = model.dim() as f64;
    let norm = (2.0 * PI * n).sqrt().recip();
    let x = theta - 2.0 * PI * k as f64 / n;
    let turns = (x / (2.0 * PI)).round();
    if (x - 2.0 * PI * turns).abs() < 1e-12 {
        let odd = (turns as i64 * (model.dim() as i64 - 1)).rem_euclid(2) == 1;
        let sign = if odd { -1.0 } else { 1.0 };
        return Ok(sign * n * norm);
    }
    Ok(norm * (n * x / 2.0).sin() / (x / 2.0).sin())
}

/// Finite sum `N^{-1/2} Σ_n e^{-2πikn/N} u_n(θ)`.
///
/// Equals `e^{i(N-1)x/2}` times the closed form, with `x = θ - 2πk/N`.
pub fn pointer_wavefunction_sum(model: &ClockModel, k: i64, theta: f64) -> Result<Complex64, ClockError> {
    let k = model.check_index(k)?;
    let n = model.dim();
    let sum: Complex64 = (0..n)
        .map(|i| {
            let phase = Complex64::from_polar(1.0, -2.0 * PI * (k * i) as f64 / n as f64);
            phase * azimuthal_wavefunction(model, i as i64, theta).unwrap()
        })
        .sum();
    Ok(sum / (n as f64).sqrt())
}

/// Amplitudes and frequency offset of a clock wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSpec {
    omega0: f64,
    amplitudes: Vec<Complex64>,
}

impl EvolutionSpec {
    pub fn new(omega0: f64, amplitudes: Vec<Complex64>) -> Result<Self, ClockError> {
        let norm: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(ClockError::NotNormalized(norm));
        }
        Ok(Self { omega0, amplitudes })
    }

    /// `a_k = N^{-1/2}` for every `k`.
    pub fn uniform(model: &ClockModel, omega0: f64) -> Self {
        let a = Complex64::new((model.dim() as f64).sqrt().recip(), 0.0);
        Self {
            omega0,
            amplitudes: vec![a; model.dim()],
        }
    }

    /// Amplitudes of the pointer state `v_k`, so that `φ(0) = v_k`.
    pub fn pointer(model: &ClockModel, k: i64, omega0: f64) -> Result<Self, ClockError> {
        let v = pointer_state_float(model, k)?;
        Ok(Self {
            omega0,
            amplitudes: v.entries().to_vec(),
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// `φ(t)` with entries `a_k e^{-iω_k t}`, `ω_k = ω_0 + m_k ω`.
pub fn wavefunction_evolution(
    model: &ClockModel,
    spec: &EvolutionSpec,
    t: f64,
) -> Result<StateVector<Complex64>, ClockError> {
    if t < 0.0 {
        return Err(ClockError::NegativeTime(t));
    }
    if spec.amplitudes.len() != model.dim() {
        return Err(ClockError::AmplitudeCount {
            expected: model.dim(),
            found: spec.amplitudes.len(),
        });
    }
    let entries = spec
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let omega_k = spec.omega0 + model.omega() * model.spectrum_label(n) as f64;
            a * Complex64::from_polar(1.0, -omega_k * t)
        })
        .collect();
    Ok(StateVector::new(Float, entries)?)
}

/// `|⟨v_k|φ⟩|` for every `k`.
pub fn pointer_overlaps(model: &ClockModel, phi: &StateVector<Complex64>) -> Result<Vec<f64>, ClockError> {
    (0..model.dim() as i64)
        .map(|k| Ok(pointer_state_float(model, k)?.inner_product(phi)?.norm()))
        .collect()
}
