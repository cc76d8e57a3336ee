//! Dense matrices and vectors, generic over exact cyclotomic or `f64` complex
//! scalars.

use std::fmt::Debug;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactcyc::CyclotomicNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("scalar kind mismatch: {left} vs {right}")]
    ScalarKindMismatch { left: String, right: String },
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
}

/// Arithmetic shared by the exact and floating scalar kinds.
///
/// `Kind` identifies which values may be combined: the cyclotomic order for
/// exact scalars, a unit marker for floats.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    type Kind: Clone + PartialEq + Debug + Send + Sync;

    fn kind(&self) -> Self::Kind;
    fn zero(kind: &Self::Kind) -> Self;
    fn one(kind: &Self::Kind) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn embed(&self) -> Complex64;
}

/// Scalar kind of `Complex64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Float;

impl Scalar for Complex64 {
    type Kind = Float;

    fn kind(&self) -> Float {
        Float
    }
    fn zero(_: &Float) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: &Float) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn embed(&self) -> Complex64 {
        *self
    }
}

/// Scalar kind of `CyclotomicNumber`: the field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclotomicOrder(pub usize);

impl Scalar for CyclotomicNumber {
    type Kind = CyclotomicOrder;

    fn kind(&self) -> CyclotomicOrder {
        CyclotomicOrder(self.order())
    }
    fn zero(kind: &CyclotomicOrder) -> Self {
        CyclotomicNumber::zero(kind.0)
    }
    fn one(kind: &CyclotomicOrder) -> Self {
        CyclotomicNumber::one(kind.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        CyclotomicNumber::conj(self)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn embed(&self) -> Complex64 {
        self.to_complex()
    }
}

fn check_kind<K: PartialEq + Debug>(a: &K, b: &K) -> Result<(), LinalgError> {
    if a != b {
        return Err(LinalgError::ScalarKindMismatch {
            left: format!("{a:?}"),
            right: format!("{b:?}"),
        });
    }
    Ok(())
}

fn check_dim(a: usize, b: usize) -> Result<(), LinalgError> {
    if a != b {
        return Err(LinalgError::DimMismatch { left: a, right: b });
    }
    Ok(())
}

fn dot<S: Scalar>(kind: &S::Kind, pairs: impl Iterator<Item = (S, S)>) -> S {
    pairs
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(S::zero(kind), |acc, (a, b)| acc.add(&a.mul(&b)))
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<S: Scalar> {
    dim: usize,
    kind: S::Kind,
    entries: Vec<S>,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn from_fn(
        dim: usize,
        kind: S::Kind,
        mut f: impl FnMut(usize, usize) -> S,
    ) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let v = f(r, c);
                check_kind(&kind, &v.kind())?;
                entries.push(v);
            }
        }
        Ok(Self { dim, kind, entries })
    }

    pub fn from_entries(dim: usize, kind: S::Kind, entries: Vec<S>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::EntryCount {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for e in &entries {
            check_kind(&kind, &e.kind())?;
        }
        Ok(Self { dim, kind, entries })
    }

    pub fn zeros(dim: usize, kind: S::Kind) -> Result<Self, LinalgError> {
        let z = S::zero(&kind);
        Self::from_fn(dim, kind, |_, _| z.clone())
    }

    pub fn identity(dim: usize, kind: S::Kind) -> Result<Self, LinalgError> {
        Self::diagonal(kind.clone(), vec![S::one(&kind); dim])
    }

    pub fn diagonal(kind: S::Kind, diag: Vec<S>) -> Result<Self, LinalgError> {
        let z = S::zero(&kind);
        Self::from_fn(diag.len(), kind, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                z.clone()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &S::Kind {
        &self.kind
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        check_dim(self.dim, other.dim)?;
        check_kind(&self.kind, &other.kind)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self, LinalgError> {
        self.check(other)?;
        Ok(Self {
            dim: self.dim,
            kind: self.kind.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, S::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, S::sub)
    }

    pub fn scale(&self, factor: &S) -> Result<Self, LinalgError> {
        check_kind(&self.kind, &factor.kind())?;
        Ok(self.map(|e| e.mul(factor)))
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            dim: self.dim,
            kind: self.kind.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Rows are computed in parallel.
    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let n = self.dim;
        let entries: Vec<S> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (r, c) = (idx / n, idx % n);
                dot(
                    &self.kind,
                    (0..n).map(|k| (self.get(r, k).clone(), other.get(k, c).clone())),
                )
            })
            .collect();
        Ok(Self {
            dim: n,
            kind: self.kind.clone(),
            entries,
        })
    }

    pub fn matvec(&self, x: &StateVector<S>) -> Result<StateVector<S>, LinalgError> {
        check_dim(self.dim, x.dim())?;
        check_kind(&self.kind, &x.kind)?;
        let entries = (0..self.dim)
            .map(|r| {
                dot(
                    &self.kind,
                    self.row(r).iter().cloned().zip(x.entries.iter().cloned()),
                )
            })
            .collect();
        Ok(StateVector {
            kind: self.kind.clone(),
            entries,
        })
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self {
            dim: n,
            kind: self.kind.clone(),
            entries: (0..n * n)
                .map(|idx| self.get(idx % n, idx / n).conj())
                .collect(),
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, LinalgError> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(&self.kind), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// `⟨x|A|y⟩`.
    pub fn sandwich(&self, x: &StateVector<S>, y: &StateVector<S>) -> Result<S, LinalgError> {
        x.inner_product(&self.matvec(y)?)
    }

    pub fn embed(&self) -> OperatorMatrix<Complex64> {
        OperatorMatrix {
            dim: self.dim,
            kind: Float,
            entries: self.entries.par_iter().map(S::embed).collect(),
        }
    }
}

impl OperatorMatrix<Complex64> {
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Entrywise comparison at `DEFAULT_TOLERANCE * dim`.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.max_abs_diff(other)
            .is_ok_and(|d| d <= DEFAULT_TOLERANCE * self.dim as f64)
    }
}

/// Base float tolerance, scaled by dimension in [`OperatorMatrix::approx_eq`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Coefficient vector in the azimuthal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<S: Scalar> {
    kind: S::Kind,
    entries: Vec<S>,
}

impl<S: Scalar> StateVector<S> {
    pub fn new(kind: S::Kind, entries: Vec<S>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::EmptyDimension);
        }
        for e in &entries {
            check_kind(&kind, &e.kind())?;
        }
        Ok(Self { kind, entries })
    }

    /// Unit coordinate vector `e_i`.
    pub fn basis(dim: usize, kind: S::Kind, i: usize) -> Result<Self, LinalgError> {
        if i >= dim {
            return Err(LinalgError::DimMismatch {
                left: i,
                right: dim,
            });
        }
        let entries = (0..dim)
            .map(|j| if j == i { S::one(&kind) } else { S::zero(&kind) })
            .collect();
        Self::new(kind, entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn kind(&self) -> &S::Kind {
        &self.kind
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &S {
        &self.entries[i]
    }

    /// `Σ conj(x_n) y_n`.
    pub fn inner_product(&self, other: &Self) -> Result<S, LinalgError> {
        check_dim(self.dim(), other.dim())?;
        check_kind(&self.kind, &other.kind)?;
        Ok(dot(
            &self.kind,
            self.entries
                .iter()
                .map(S::conj)
                .zip(other.entries.iter().cloned()),
        ))
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            kind: self.kind.clone(),
            entries: self.entries.iter().map(|e| e.mul(factor)).collect(),
        }
    }

    /// `|x⟩⟨y|`.
    pub fn outer(&self, other: &Self) -> Result<OperatorMatrix<S>, LinalgError> {
        check_dim(self.dim(), other.dim())?;
        check_kind(&self.kind, &other.kind)?;
        OperatorMatrix::from_fn(self.dim(), self.kind.clone(), |r, c| {
            self.entries[r].mul(&other.entries[c].conj())
        })
    }

    pub fn embed(&self) -> StateVector<Complex64> {
        StateVector {
            kind: Float,
            entries: self.entries.iter().map(S::embed).collect(),
        }
    }
}

impl StateVector<Complex64> {
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(Complex64::norm_sqr).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exact(order: usize, v: &[i64]) -> Vec<CyclotomicNumber> {
        v.iter()
            .map(|&x| CyclotomicNumber::from_integer(order, x))
            .collect()
    }

    #[test]
    fn identity_commutes() {
        let a = OperatorMatrix::from_entries(2, CyclotomicOrder(3), exact(3, &[1, 2, 3, 4])).unwrap();
        let id = OperatorMatrix::identity(2, CyclotomicOrder(3)).unwrap();
        assert!(id.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn two_by_two_commutator() {
        let d = OperatorMatrix::diagonal(CyclotomicOrder(1), exact(1, &[0, 1])).unwrap();
        let x = OperatorMatrix::from_entries(2, CyclotomicOrder(1), exact(1, &[0, 1, 1, 0])).unwrap();
        let expected =
            OperatorMatrix::from_entries(2, CyclotomicOrder(1), exact(1, &[0, -1, 1, 0])).unwrap();
        assert_eq!(d.commutator(&x).unwrap(), expected);
    }

    #[test]
    fn adjoint_is_involution() {
        let z = CyclotomicNumber::root_of_unity(5, 2);
        let a = OperatorMatrix::from_fn(3, CyclotomicOrder(5), |r, c| {
            z.pow((r * 3 + c) as u64)
        })
        .unwrap();
        assert_eq!(a.adjoint().adjoint(), a);
        assert_ne!(a.adjoint(), a);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = OperatorMatrix::<Complex64>::identity(2, Float).unwrap();
        let b = OperatorMatrix::<Complex64>::identity(3, Float).unwrap();
        assert_eq!(
            a.matmul(&b).unwrap_err(),
            LinalgError::DimMismatch { left: 2, right: 3 }
        );
        let x = OperatorMatrix::<CyclotomicNumber>::identity(2, CyclotomicOrder(3)).unwrap();
        let y = OperatorMatrix::<CyclotomicNumber>::identity(2, CyclotomicOrder(4)).unwrap();
        assert!(matches!(
            x.commutator(&y),
            Err(LinalgError::ScalarKindMismatch { .. })
        ));
        assert!(matches!(
            OperatorMatrix::from_entries(2, CyclotomicOrder(3), exact(4, &[1, 0, 0, 1])),
            Err(LinalgError::ScalarKindMismatch { .. })
        ));
        assert_eq!(
            OperatorMatrix::<Complex64>::zeros(0, Float).unwrap_err(),
            LinalgError::EmptyDimension
        );
        let v = StateVector::<Complex64>::basis(3, Float, 0).unwrap();
        assert!(a.matvec(&v).is_err());
    }

    #[test]
    fn basis_inner_products() {
        let e0 = StateVector::<CyclotomicNumber>::basis(3, CyclotomicOrder(3), 0).unwrap();
        let e1 = StateVector::<CyclotomicNumber>::basis(3, CyclotomicOrder(3), 1).unwrap();
        assert!(e0.inner_product(&e0).unwrap().is_one());
        assert!(e0.inner_product(&e1).unwrap().is_zero());
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_slot() {
        let x = StateVector::new(Float, vec![c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        let y = StateVector::new(Float, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn embedding() {
        assert!(OperatorMatrix::<CyclotomicNumber>::zeros(3, CyclotomicOrder(4))
            .unwrap()
            .embed()
            .is_zero());
        let d = OperatorMatrix::diagonal(
            CyclotomicOrder(4),
            vec![CyclotomicNumber::root_of_unity(4, 1)],
        )
        .unwrap();
        assert!((d.embed().get(0, 0) - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_and_outer() {
        let x = StateVector::new(CyclotomicOrder(1), exact(1, &[1, 2])).unwrap();
        let p = x.outer(&x).unwrap();
        assert_eq!(p.trace(), CyclotomicNumber::from_integer(1, 5));
        assert!(p.is_self_adjoint());
    }

    #[test]
    fn approx_eq_scales_with_dim() {
        let a = OperatorMatrix::<Complex64>::identity(4, Float).unwrap();
        let b = a.map(|z| z + c(3e-9, 0.0));
        assert!(a.approx_eq(&b));
        let b = a.map(|z| z + c(5e-9, 0.0));
        assert!(!a.approx_eq(&b));
    }
}
