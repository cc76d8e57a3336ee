//! Arithmetic functions for coprimality-restricted character sums.

use num_complex::Complex64;
use num_integer::Integer;

use crate::exactcyc::CyclotomicNumber;

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient. `euler_phi(1) == 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius requires n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Residues `p` in `[0, N)` with `gcd(p, N) = 1`, ascending.
///
/// For `N = 1` the set is `{0}`, since `gcd(0, 1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl CoprimeSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.residues.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }
}

pub fn coprime_residues(n: u64) -> CoprimeSet {
    assert!(n >= 1, "coprime_residues requires n >= 1");
    let residues = (0..n).filter(|p| p.gcd(&n) == 1).collect();
    CoprimeSet {
        modulus: n,
        residues,
    }
}

/// Ramanujan's sum `c_n(m)` by Hölder's formula `μ(n/d) φ(n) / φ(n/d)`,
/// `d = gcd(m, n)`.
pub fn ramanujan_sum(n: u64, m: i64) -> i64 {
    assert!(n >= 1, "ramanujan_sum requires n >= 1");
    let r = m.rem_euclid(n as i64) as u64;
    let d = r.gcd(&n);
    let q = n / d;
    moebius(q) * (euler_phi(n) / euler_phi(q)) as i64
}

/// `Σ_{(p,n)=1} e^{2πi pm/n}` summed directly in floating point.
pub fn coprime_character_sum(n: u64, m: i64) -> Complex64 {
    let r = m.rem_euclid(n as i64) as u64;
    coprime_residues(n)
        .iter()
        .map(|p| {
            let e = (p * r) % n;
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n as f64)
        })
        .sum()
}

/// `Σ_{(p,n)=1} ζ_n^{pm}` summed exactly in `Q(ζ_n)`.
pub fn coprime_character_sum_exact(n: u64, m: i64) -> CyclotomicNumber {
    let order = n as usize;
    let r = m.rem_euclid(n as i64);
    coprime_residues(n)
        .iter()
        .fold(CyclotomicNumber::zero(order), |acc, p| {
            &acc + &CyclotomicNumber::root_of_unity(order, p as i64 * r)
        })
}

/// `S_n(m) = Σ_{(p,n)=1} p·ζ_n^{pm}`, exactly.
pub fn weighted_coprime_sum(n: u64, m: i64) -> CyclotomicNumber {
    let order = n as usize;
    let r = m.rem_euclid(n as i64);
    coprime_residues(n)
        .iter()
        .filter(|&p| p != 0)
        .fold(CyclotomicNumber::zero(order), |acc, p| {
            let term = CyclotomicNumber::root_of_unity(order, p as i64 * r);
            &acc + &term.scale(&num_rational::BigRational::from_integer((p as i64).into()))
        })
}
