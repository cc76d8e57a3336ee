use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{ClockModel, Convention};

/// Energy statistics of a pointer state. Exact moments are in units of `ħω`
/// (`(ħω)^2` for second moments); `delta_h` is in units of `ħ/τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub dim: usize,
    pub convention: Convention,
    /// `⟨H_c⟩ / ħω`.
    pub mean: BigRational,
    /// `⟨H_c^2⟩ / (ħω)^2`.
    pub second_moment: BigRational,
    /// `(ΔH_c)^2 / (ħω)^2`.
    pub variance: BigRational,
    /// `(1/N) Σ_{m=0}^{N-1} m^2`, the zero-based raw second moment.
    pub raw_second_moment: BigRational,
    /// `ΔH_c · τ/ħ`.
    pub delta_h: f64,
    /// `π/√3`.
    pub asymptote: f64,
    /// `|delta_h - asymptote| / asymptote`.
    pub relative_error: f64,
}

impl EnergyReport {
    /// `N^2/3`, the large-`N` approximation of the raw second moment.
    pub fn raw_second_moment_approx(&self) -> f64 {
        (self.dim * self.dim) as f64 / 3.0
    }

    pub fn mean_is_zero(&self) -> bool {
        self.mean.is_zero()
    }
}

/// `ΔH_c` in a pointer state `v_k`.
///
/// Every pointer state has weight `|⟨u_n|v_k⟩|^2 = 1/N` on each azimuthal
/// level, so the moments are uniform spectrum averages and do not depend on
/// `k`.
pub fn energy_uncertainty(model: &ClockModel) -> EnergyReport {
    let n = BigInt::from(model.dim());
    let weight = BigRational::new(BigInt::from(1), n);
    let (sum, sum_sq) = model.spectrum().fold(
        (BigInt::zero(), BigInt::zero()),
        |(s, q), m| (s + m, q + m * m),
    );
    let mean = &weight * BigRational::from_integer(sum);
    let second_moment = &weight * BigRational::from_integer(sum_sq);
    let variance = &second_moment - &mean * &mean;
    let raw_sq: BigInt = (0..model.dim() as i64).map(|m| BigInt::from(m * m)).sum();
    let raw_second_moment = &weight * BigRational::from_integer(raw_sq);

    let delta_h = model.omega() * variance.to_f64().unwrap().sqrt();
    let asymptote = PI / 3f64.sqrt();
    EnergyReport {
        dim: model.dim(),
        convention: model.convention(),
        mean,
        second_moment,
        variance,
        raw_second_moment,
        delta_h,
        asymptote,
        relative_error: (delta_h - asymptote).abs() / asymptote,
    }
}
