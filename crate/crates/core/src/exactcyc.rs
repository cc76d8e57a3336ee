//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` with rational
//! coefficients, always reduced modulo the `N`-th cyclotomic polynomial. The
//! representation is canonical, so equality is a coefficient comparison.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(usize),
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientLength { expected: usize, found: usize },
}

static POLYNOMIALS: LazyLock<RwLock<HashMap<usize, Arc<Vec<BigInt>>>>> =
    LazyLock::new(Default::default);

static FIELDS: LazyLock<RwLock<HashMap<usize, Arc<Field>>>> = LazyLock::new(Default::default);

/// Coefficients of `Φ_n`, lowest degree first.
///
/// Computed from `x^n - 1 = ∏_{d | n} Φ_d(x)` by exact division and memoized.
///
/// # Panics
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial requires n >= 1");
    cyclotomic_polynomial_shared(n).as_ref().clone()
}

fn cyclotomic_polynomial_shared(n: usize) -> Arc<Vec<BigInt>> {
    if let Some(p) = POLYNOMIALS.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1
    let mut quotient = vec![BigInt::zero(); n + 1];
    quotient[0] = BigInt::from(-1);
    quotient[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let divisor = cyclotomic_polynomial_shared(d);
        quotient = divide_exact_monic(&quotient, &divisor);
    }
    let poly = Arc::new(quotient);
    POLYNOMIALS
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn divide_exact_monic(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let qdeg = dividend.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qdeg + 1];
    for i in (0..=qdeg).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in divisor.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Per-order data shared by all elements of `Q(ζ_N)`.
#[derive(Debug)]
struct Field {
    order: usize,
    modulus: Arc<Vec<BigInt>>,
    /// `x^k mod Φ_N` for `k in 0..order`.
    powers: Vec<Vec<BigInt>>,
    /// `ζ^k` embedded, for `k in 0..order`.
    embedding: Vec<Complex64>,
}

impl Field {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn get(order: usize) -> Arc<Field> {
        assert!(order >= 1, "cyclotomic order must be positive");
        if let Some(f) = FIELDS.read().unwrap().get(&order) {
            return Arc::clone(f);
        }
        let modulus = cyclotomic_polynomial_shared(order);
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce the overflowing top coefficient
            let top = cur.pop().unwrap();
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(modulus.iter()) {
                    *c -= &top * m;
                }
            }
        }
        let embedding = (0..order)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64))
            .collect();
        let field = Arc::new(Field {
            order,
            modulus,
            powers,
            embedding,
        });
        FIELDS
            .write()
            .unwrap()
            .entry(order)
            .or_insert_with(|| Arc::clone(&field))
            .clone()
    }

    /// Reduce an arbitrary-length polynomial in `x` to canonical form.
    fn reduce(&self, poly: &[BigRational]) -> Vec<BigRational> {
        let deg = self.degree();
        let mut out: Vec<BigRational> = vec![BigRational::zero(); deg];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < deg {
                out[i] += c;
            } else {
                for (o, p) in out.iter_mut().zip(&self.powers[i % self.order]) {
                    if !p.is_zero() {
                        *o += c * BigRational::from_integer(p.clone());
                    }
                }
            }
        }
        out
    }
}

/// An element of `Q(ζ_N)` in reduced power-basis form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(order: usize) -> Self {
        let field = Field::get(order);
        let coeffs = vec![BigRational::zero(); field.degree()];
        Self { field, coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: usize, value: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn from_integer(order: usize, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(value.into()))
    }

    /// Build from a coefficient vector already in canonical form.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::InvalidOrder);
        }
        let field = Field::get(order);
        if coeffs.len() != field.degree() {
            return Err(CycloError::CoefficientLength {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        Ok(Self { field, coeffs })
    }

    /// Build from any polynomial in `ζ_N` (lowest degree first), reducing it.
    pub fn from_polynomial(order: usize, poly: &[BigRational]) -> Self {
        let field = Field::get(order);
        let coeffs = field.reduce(poly);
        Self { field, coeffs }
    }

    /// `ζ_n^k`, with `k` taken modulo `n`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        let field = Field::get(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = field.powers[e]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Self { field, coeffs }
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.order() != other.order() {
            return Err(CycloError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.order()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r));
        }
        let deg = self.coeffs.len();
        let mut product = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    product[i + j] += a * b;
                }
            }
        }
        Ok(Self {
            coeffs: self.field.reduce(&product),
            field: Arc::clone(&self.field),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Complex conjugation: the automorphism `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Self {
            coeffs: self.field.reduce(&poly),
            field: Arc::clone(&self.field),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero(self.order()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), r.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_N is irreducible
        let g = r1[0].recip();
        let scaled: Vec<BigRational> = s1.iter().map(|c| c * &g).collect();
        Ok(Self::from_polynomial(self.order(), &scaled))
    }

    /// Embedding at `ζ = e^{2πi/N}`.
    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&self.field.embedding)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, z)| z * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo<{}>({})", self.order(), self)
    }
}

/// Renders as a polynomial in `z = ζ_N`, lowest degree first, e.g. `1 - z^2`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let monomial = match i {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{i}")),
            };
            match monomial {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
