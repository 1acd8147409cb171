//! Finite fields `GF(p^e)`.
//!
//! An element is a polynomial of degree `< e` over `GF(p)`, packed as the
//! integer `c₀ + c₁·p + … + c_{e−1}·p^{e−1}`. Arithmetic works directly on
//! the coefficient digits modulo an explicit monic irreducible modulus.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be between 1 and {MAX_DEGREE}")]
    BadDegree,
    #[error("field order p^e exceeds 2^31")]
    TooLarge,
    #[error("modulus must be monic of degree {0} with coefficients below p")]
    BadModulus(usize),
    #[error("modulus is reducible")]
    Reducible,
    #[error("division by zero")]
    DivisionByZero,
}

/// A field element code in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u32);

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: usize,
    /// Coefficients `m₀..m_e` of the monic modulus, constant term first (`m_e = 1`).
    pub modulus: Vec<u64>,
}

/// A handle to a finite field; cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field(Arc<FieldSpec>);

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Field {
    /// `GF(p)`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// `GF(p^e)`. Without an explicit modulus the default is the monic
    /// irreducible polynomial of degree `e` with the smallest code.
    pub fn new(p: u64, e: usize, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 || e > MAX_DEGREE {
            return Err(FieldError::BadDegree);
        }
        if (p as f64).powi(e as i32) > (1u64 << 31) as f64 {
            return Err(FieldError::TooLarge);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 || m[e] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(e));
                }
                if !poly_irreducible(&m, p) {
                    return Err(FieldError::Reducible);
                }
                m
            }
            None => default_modulus(p, e),
        };
        Ok(Field(Arc::new(FieldSpec { p, e, modulus })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.e
    }

    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.e as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// Image of an integer under `ℤ → GF(p) ⊆ GF(q)`.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The element with the given code, if `code < q`.
    pub fn element(&self, code: u64) -> Option<Fq> {
        (code < self.order()).then_some(Fq(code as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order() as u32).map(Fq)
    }

    /// Coefficient digits over `GF(p)`, constant term first.
    pub fn digits(&self, a: Fq) -> [u64; MAX_DEGREE] {
        let mut d = [0u64; MAX_DEGREE];
        let mut x = a.0 as u64;
        for slot in d.iter_mut().take(self.0.e) {
            *slot = x % self.0.p;
            x /= self.0.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u64]) -> Fq {
        let p = self.0.p;
        Fq(d.iter().take(self.0.e).rev().fold(0u64, |acc, &c| acc * p + c % p) as u32)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.e == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..self.0.e {
            d[i] = (da[i] + db[i]) % p;
        }
        self.from_digits(&d)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if self.0.e == 1 {
            return Fq(((p - a.0 as u64) % p) as u32);
        }
        let da = self.digits(a);
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..self.0.e {
            d[i] = (p - da[i]) % p;
        }
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.e == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let e = self.0.e;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // reduce x^k for k >= e using x^e = -(m_0 + ... + m_{e-1} x^{e-1})
        let m = &self.0.modulus;
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                prod[k - e + i] = (prod[k - e + i] + (p - m[i]) * c) % p;
            }
        }
        self.from_digits(&prod[..e])
    }

    pub fn pow(&self, a: Fq, mut k: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> u64 {
        let n = self.order() - 1;
        let mut ord = n;
        for (prime, _) in factorize(n) {
            while ord.is_multiple_of(prime) && self.pow(a, ord / prime) == self.one() {
                ord /= prime;
            }
        }
        ord
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Irreducibility by trial division by every monic polynomial of degree `1..=deg/2`.
pub fn poly_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(e + 1);
        let mut x = code;
        for _ in 0..e {
            m.push(x % p);
            x /= p;
        }
        m.push(1);
        if poly_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
