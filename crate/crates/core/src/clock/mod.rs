//! The Salecker–Wigner–Peres clock on an `N`-dimensional state space.
//!
//! Natural units are fixed: `τ = 1`, `ħ = 1`, so `ω = 2π/N`. Exact operators
//! never carry `π`; each [`Operator`] instead records the physical [`Unit`] its
//! entries are measured in, and [`Operator::physical`] applies it.

mod energy;
mod operators;
mod states;
mod superposition;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactcyc::CyclotomicNumber;
use crate::linalg::{CyclotomicOrder, Float, LinalgError, OperatorMatrix, Scalar};

pub use energy::{energy_uncertainty, EnergyReport};
pub use operators::{
    basis_relation, classic_commutator, clock_time_operator, commutator_tc_hc_element,
    commutator_tcyclot_hc, cyclo_commutator_element, cyclo_sum_coefficient,
    cyclotomic_time_operator, evolution_operator, hamiltonian, matrix_element, to_pointer_basis,
    Basis, BasisRelation,
};
pub use states::{
    azimuthal_wavefunction, identify_pointer, pointer_overlaps, pointer_state_float,
    pointer_state_vector, pointer_vector_raw, pointer_wavefunction_closed_form,
    pointer_wavefunction_sum, wavefunction_evolution, EvolutionSpec, PointerState,
};
pub use superposition::{
    random_normalized_state, superposition_expectation, SuperpositionEvaluator,
    SuperpositionValue,
};

/// Exact scalar used by the clock operators.
pub type Exact = CyclotomicNumber;

pub const TAU: f64 = 1.0;
pub const HBAR: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClockError {
    #[error("clock dimension must be at least 1")]
    ZeroDimension,
    #[error("symmetric convention requires odd N = 2j+1, got {0}")]
    EvenSymmetric(usize),
    #[error("index {index} out of range for N = {dim}")]
    IndexOutOfRange { index: i64, dim: usize },
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("expected {expected} amplitudes, found {found}")]
    AmplitudeCount { expected: usize, found: usize },
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Index set of the azimuthal spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `m = 0, …, N-1`.
    ZeroBased,
    /// `m = -j, …, j` with `N = 2j+1`.
    Symmetric,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::ZeroBased => "zero-based",
            Convention::Symmetric => "symmetric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClockModel {
    dim: usize,
    convention: Convention,
}

impl ClockModel {
    pub fn new(dim: usize, convention: Convention) -> Result<Self, ClockError> {
        if dim == 0 {
            return Err(ClockError::ZeroDimension);
        }
        if convention == Convention::Symmetric && dim % 2 == 0 {
            return Err(ClockError::EvenSymmetric(dim));
        }
        Ok(Self { dim, convention })
    }

    pub fn zero_based(dim: usize) -> Result<Self, ClockError> {
        Self::new(dim, Convention::ZeroBased)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn tau(&self) -> f64 {
        TAU
    }

    /// `ω = 2π / (Nτ)`.
    pub fn omega(&self) -> f64 {
        2.0 * PI / (self.dim as f64 * TAU)
    }

    /// `j` with `N = 2j+1`, for odd `N`.
    pub fn j(&self) -> Option<usize> {
        (self.dim % 2 == 1).then_some((self.dim - 1) / 2)
    }

    /// Spectrum label `m` of the azimuthal state stored at position `n`.
    pub fn spectrum_label(&self, n: usize) -> i64 {
        match self.convention {
            Convention::ZeroBased => n as i64,
            Convention::Symmetric => n as i64 - ((self.dim - 1) / 2) as i64,
        }
    }

    pub fn spectrum(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.dim).map(|n| self.spectrum_label(n))
    }

    pub(crate) fn check_index(&self, index: i64) -> Result<usize, ClockError> {
        if index < 0 || index as usize >= self.dim {
            return Err(ClockError::IndexOutOfRange {
                index,
                dim: self.dim,
            });
        }
        Ok(index as usize)
    }
}

/// Physical unit an operator's entries are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Dimensionless,
    /// Time, `τ`.
    Tau,
    /// Energy, `ħω`.
    HbarOmega,
    /// Action, `τ·ħω = 2πħ/N`.
    TauHbarOmega,
}

impl Unit {
    pub fn value(self, dim: usize) -> f64 {
        let omega = 2.0 * PI / (dim as f64 * TAU);
        match self {
            Unit::Dimensionless => 1.0,
            Unit::Tau => TAU,
            Unit::HbarOmega => HBAR * omega,
            Unit::TauHbarOmega => TAU * HBAR * omega,
        }
    }

    /// Unit of a product of quantities in `self` and `other`.
    pub fn times(self, other: Unit) -> Option<Unit> {
        use Unit::*;
        match (self, other) {
            (Dimensionless, u) | (u, Dimensionless) => Some(u),
            (Tau, HbarOmega) | (HbarOmega, Tau) => Some(TauHbarOmega),
            _ => None,
        }
    }
}

/// An operator matrix in the azimuthal basis together with its unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<S: Scalar> {
    pub matrix: OperatorMatrix<S>,
    pub unit: Unit,
}

impl<S: Scalar> Operator<S> {
    /// Entries converted to `f64` in natural units (`τ = ħ = 1`).
    pub fn physical(&self) -> OperatorMatrix<Complex64> {
        let u = Complex64::new(self.unit.value(self.matrix.dim()), 0.0);
        self.matrix.embed().map(|z| z * u)
    }

    /// `[A, B]`, with the product unit.
    pub fn commutator(&self, other: &Self) -> Result<Self, ClockError> {
        let unit = self
            .unit
            .times(other.unit)
            .expect("commutator of operators with incompatible units");
        Ok(Operator {
            matrix: self.matrix.commutator(&other.matrix)?,
            unit,
        })
    }
}

/// Scalars the clock can be assembled over: roots of unity and rationals must
/// be representable.
pub trait ClockScalar: Scalar {
    fn kind_for(model: &ClockModel) -> Self::Kind;
    /// `ζ_N^k`.
    fn phase(model: &ClockModel, k: i64) -> Self;
    fn ratio(model: &ClockModel, num: i64, den: i64) -> Self;
}

impl ClockScalar for CyclotomicNumber {
    fn kind_for(model: &ClockModel) -> CyclotomicOrder {
        CyclotomicOrder(model.dim)
    }
    fn phase(model: &ClockModel, k: i64) -> Self {
        CyclotomicNumber::root_of_unity(model.dim, k)
    }
    fn ratio(model: &ClockModel, num: i64, den: i64) -> Self {
        CyclotomicNumber::from_rational(
            model.dim,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }
}

impl ClockScalar for Complex64 {
    fn kind_for(_: &ClockModel) -> Float {
        Float
    }
    fn phase(model: &ClockModel, k: i64) -> Self {
        let n = model.dim as i64;
        let e = k.rem_euclid(n);
        Complex64::from_polar(1.0, 2.0 * PI * e as f64 / n as f64)
    }
    fn ratio(_: &ClockModel, num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_validation() {
        assert_eq!(ClockModel::zero_based(0), Err(ClockError::ZeroDimension));
        assert_eq!(
            ClockModel::new(4, Convention::Symmetric),
            Err(ClockError::EvenSymmetric(4))
        );
        let m = ClockModel::new(5, Convention::Symmetric).unwrap();
        assert_eq!(m.j(), Some(2));
        assert_eq!(m.spectrum().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        let z = ClockModel::zero_based(4).unwrap();
        assert_eq!(z.spectrum().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(z.j(), None);
    }

    #[test]
    fn omega_tau_n_is_two_pi() {
        for n in [1usize, 2, 7, 100] {
            let m = ClockModel::zero_based(n).unwrap();
            assert!((m.omega() * m.tau() * n as f64 - 2.0 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_products() {
        assert_eq!(Unit::Tau.times(Unit::HbarOmega), Some(Unit::TauHbarOmega));
        assert_eq!(Unit::Dimensionless.times(Unit::Tau), Some(Unit::Tau));
        assert_eq!(Unit::Tau.times(Unit::Tau), None);
        assert!((Unit::TauHbarOmega.value(2) - PI).abs() < 1e-15);
    }
}
