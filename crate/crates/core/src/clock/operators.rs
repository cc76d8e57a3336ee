use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::states::pointer_vector_raw;
use super::{ClockError, ClockModel, ClockScalar, Exact, Operator, Unit};
use crate::linalg::OperatorMatrix;
use crate::numtheory::{coprime_residues, weighted_coprime_sum};

/// Which basis a matrix element is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Azimuthal states `u_n`.
    Azimuthal,
    /// Pointer states `v_k`.
    Pointer,
}

/// `Σ_k w_k |v_k⟩⟨v_k|` in the azimuthal basis.
fn weighted_projector_sum<S: ClockScalar>(
    model: &ClockModel,
    weights: &[(i64, i64)],
) -> Result<OperatorMatrix<S>, ClockError> {
    let n = model.dim();
    let kind = S::kind_for(model);
    let zero = OperatorMatrix::zeros(n, kind)?;
    weights
        .par_iter()
        .filter(|(_, w)| *w != 0)
        .map(|&(k, w)| {
            let raw = pointer_vector_raw::<S>(model, k)?;
            // raw vectors have squared norm N
            let projector = raw.outer(&raw)?;
            Ok(projector.scale(&S::ratio(model, w, n as i64))?)
        })
        .try_reduce(|| zero.clone(), |a, b| Ok(a.add(&b)?))
}

/// `T_c = τ Σ_k k |v_k⟩⟨v_k|`.
pub fn clock_time_operator<S: ClockScalar>(model: &ClockModel) -> Result<Operator<S>, ClockError> {
    let weights: Vec<_> = (0..model.dim() as i64).map(|k| (k, k)).collect();
    Ok(Operator {
        matrix: weighted_projector_sum(model, &weights)?,
        unit: Unit::Tau,
    })
}

/// `T_cyclot = τ Σ_{(p,N)=1} p |v_p⟩⟨v_p|`.
pub fn cyclotomic_time_operator<S: ClockScalar>(model: &ClockModel) -> Result<Operator<S>, ClockError> {
    let weights: Vec<_> = coprime_residues(model.dim() as u64)
        .iter()
        .map(|p| (p as i64, p as i64))
        .collect();
    Ok(Operator {
        matrix: weighted_projector_sum(model, &weights)?,
        unit: Unit::Tau,
    })
}

/// `H_c = diag(m) ħω` over the model's index convention.
pub fn hamiltonian<S: ClockScalar>(model: &ClockModel) -> Result<Operator<S>, ClockError> {
    let diag = model.spectrum().map(|m| S::ratio(model, m, 1)).collect();
    Ok(Operator {
        matrix: OperatorMatrix::diagonal(S::kind_for(model), diag)?,
        unit: Unit::HbarOmega,
    })
}

/// `exp(-i H_c t/ħ)` at `t = steps·τ`: `diag(ζ_N^{-m·steps})`.
pub fn evolution_operator<S: ClockScalar>(model: &ClockModel, steps: u64) -> Result<Operator<S>, ClockError> {
    let n = model.dim() as i64;
    let s = (steps % model.dim() as u64) as i64;
    let diag = model
        .spectrum()
        .map(|m| S::phase(model, (-m * s).rem_euclid(n)))
        .collect();
    Ok(Operator {
        matrix: OperatorMatrix::diagonal(S::kind_for(model), diag)?,
        unit: Unit::Dimensionless,
    })
}

/// `[T_c, H_c]` by matrix multiplication.
pub fn classic_commutator<S: ClockScalar>(model: &ClockModel) -> Result<Operator<S>, ClockError> {
    clock_time_operator::<S>(model)?.commutator(&hamiltonian::<S>(model)?)
}

/// `[T_cyclot, H_c]` by matrix multiplication.
pub fn commutator_tcyclot_hc<S: ClockScalar>(model: &ClockModel) -> Result<Operator<S>, ClockError> {
    cyclotomic_time_operator::<S>(model)?.commutator(&hamiltonian::<S>(model)?)
}

/// `W† A W / N` with `W[n][k] = ζ_N^{-kn}`: the matrix of `A` between pointer
/// states.
pub fn to_pointer_basis<S: ClockScalar>(
    model: &ClockModel,
    op: &OperatorMatrix<S>,
) -> Result<OperatorMatrix<S>, ClockError> {
    let n = model.dim();
    let w = OperatorMatrix::from_fn(n, S::kind_for(model), |r, c| {
        S::phase(model, -((r * c) as i64))
    })?;
    let inner = w.adjoint().matmul(op)?.matmul(&w)?;
    Ok(inner.scale(&S::ratio(model, 1, n as i64))?)
}

/// `⟨b_row|A|b_col⟩` in the requested basis.
pub fn matrix_element<S: ClockScalar>(
    model: &ClockModel,
    op: &OperatorMatrix<S>,
    basis: Basis,
    row: i64,
    col: i64,
) -> Result<S, ClockError> {
    let r = model.check_index(row)?;
    let c = model.check_index(col)?;
    match basis {
        Basis::Azimuthal => Ok(op.get(r, c).clone()),
        Basis::Pointer => {
            let x = pointer_vector_raw::<S>(model, row)?;
            let y = pointer_vector_raw::<S>(model, col)?;
            Ok(op.sandwich(&x, &y)?.mul(&S::ratio(model, 1, model.dim() as i64)))
        }
    }
}

/// Closed form of the `(m, n)` element of `[T_c, H_c]`, in units of `τħω`:
/// zero on the diagonal, otherwise `iħ (2πi/N)(n-m) / (1 - ζ_N^{n-m})`.
///
/// The two factors of `i` combine to `-1`, so the value lies in `Q(ζ_N)`.
/// `basis` names the element being claimed; the same expression is returned
/// for both, and [`basis_relation`] measures how the two bases actually relate.
pub fn commutator_tc_hc_element(
    model: &ClockModel,
    m: i64,
    n: i64,
    basis: Basis,
) -> Result<Exact, ClockError> {
    let _ = basis;
    model.check_index(m)?;
    model.check_index(n)?;
    let order = model.dim();
    if m == n {
        return Ok(Exact::zero(order));
    }
    let d = n - m;
    let denom = &Exact::one(order) - &Exact::root_of_unity(order, d);
    let inv = denom.inv().expect("1 - ζ^d is nonzero for d ≢ 0 mod N");
    Ok(inv.scale(&BigRational::from_integer(BigInt::from(-d))))
}

/// `a_{ln} = (l-n) Σ_{(p,N)=1} p ζ_N^{p(l-n)}`.
pub fn cyclo_sum_coefficient(model: &ClockModel, l: i64, n: i64) -> Result<Exact, ClockError> {
    model.check_index(l)?;
    model.check_index(n)?;
    let d = l - n;
    Ok(weighted_coprime_sum(model.dim() as u64, d).scale(&BigRational::from_integer(d.into())))
}

/// Cyclotomic commutator element in units of `τħω`:
/// `(1/N) Σ_{(p,N)=1} p(l-n) ζ_N^{p(l-n)}`.
///
/// This is the `(n, l)` entry of `[T_cyclot, H_c]` in the azimuthal basis.
pub fn cyclo_commutator_element(model: &ClockModel, l: i64, n: i64) -> Result<Exact, ClockError> {
    let a = cyclo_sum_coefficient(model, l, n)?;
    Ok(a.scale(&BigRational::new(1.into(), BigInt::from(model.dim()))))
}

/// Measured relation between the azimuthal and pointer matrix elements of
/// `C = [T_c, H_c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisRelation {
    pub dim: usize,
    pub pairs: usize,
    /// `⟨v_m|C|v_n⟩ = ζ_N^{n-m} ⟨u_m|C|u_n⟩` for every pair.
    pub phase_relation_holds: bool,
    /// `⟨v_m|C|v_n⟩ = ⟨u_m|C|u_n⟩` for every pair.
    pub literal_equality_holds: bool,
    pub literal_mismatches: usize,
}

pub fn basis_relation(model: &ClockModel) -> Result<BasisRelation, ClockError> {
    let c = classic_commutator::<Exact>(model)?.matrix;
    let cv = to_pointer_basis(model, &c)?;
    let n = model.dim();
    let mut phase_ok = true;
    let mut mismatches = 0;
    for r in 0..n {
        for col in 0..n {
            let u = c.get(r, col);
            let v = cv.get(r, col);
            let phase = Exact::root_of_unity(n, col as i64 - r as i64);
            phase_ok &= *v == &phase * u;
            if v != u {
                mismatches += 1;
            }
        }
    }
    Ok(BasisRelation {
        dim: n,
        pairs: n * n,
        phase_relation_holds: phase_ok,
        literal_equality_holds: mismatches == 0,
        literal_mismatches: mismatches,
    })
}
