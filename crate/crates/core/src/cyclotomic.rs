//! Exact arithmetic in `Q(ζ_n)`.
//!
//! A value is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}`, i.e. as a
//! polynomial in ζ reduced modulo the cyclotomic polynomial `Φ_n`. That
//! representation is unique, so structural equality is value equality for a
//! fixed `n`. Coefficients are arbitrary-precision rationals.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("cannot combine values in Q(zeta_{0}) and Q(zeta_{1})")]
    IncompatibleOrder(u32, u32),
    #[error("root order must be positive")]
    ZeroOrder,
    #[error("cannot parse `{text}` as a cyclotomic number: {reason}")]
    Parse { text: String, reason: String },
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_exact(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(poly);
    cache().write().unwrap().insert(n, Arc::clone(&poly));
    poly
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of `Q(ζ_n)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        assert!(n > 0, "root order must be positive");
        Cyclotomic {
            n,
            coeffs: vec![BigRational::zero(); totient(n) as usize],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u32, value: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(n: u32, value: BigRational) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = value;
        out
    }

    /// `ζ_n^k`, with `k` taken mod `n`.
    pub fn zeta_power(n: u32, k: i64) -> Self {
        let mut c = vec![BigRational::zero(); n as usize];
        c[k.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::from_coeffs(n, c)
    }

    /// `Σ coeffs[k] ζ^k` for any number of coefficients; reduces to
    /// canonical form.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(n > 0, "root order must be positive");
        let nn = n as usize;
        let mut folded = vec![BigRational::zero(); nn];
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % nn] += c;
            }
        }
        Cyclotomic {
            n,
            coeffs: reduce(n, folded),
        }
    }

    pub fn from_int_coeffs(n: u32, coeffs: &[i64]) -> Self {
        Self::from_coeffs(n, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Canonical power-basis coefficients; `φ(n)` of them.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, or `None` when the number is irrational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(BigRational::is_integer)
            .map(|r| r.to_integer())
    }

    /// Coefficients as machine integers when all are integral and small.
    pub fn to_int_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Re-expresses the value in `Q(ζ_m)` for a multiple `m` of `n`.
    pub fn promote(&self, m: u32) -> Result<Self, CyclotomicError> {
        if m == 0 {
            return Err(CyclotomicError::ZeroOrder);
        }
        if m == self.n {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.n) {
            return Err(CyclotomicError::IncompatibleOrder(self.n, m));
        }
        let step = (m / self.n) as usize;
        let mut c = vec![BigRational::zero(); m as usize];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[k * step] = v.clone();
        }
        Ok(Self::from_coeffs(m, c))
    }

    fn common_order(&self, other: &Self) -> Result<u32, CyclotomicError> {
        if self.n == other.n {
            Ok(self.n)
        } else if other.n.is_multiple_of(self.n) {
            Ok(other.n)
        } else if self.n.is_multiple_of(other.n) {
            Ok(self.n)
        } else if self.is_rational() || other.is_rational() {
            Ok(self.n.lcm(&other.n))
        } else {
            Err(CyclotomicError::IncompatibleOrder(self.n, other.n))
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self), CyclotomicError> {
        let m = self.common_order(other)?;
        let lift = |x: &Self| {
            if x.n == m {
                Ok(x.clone())
            } else if x.is_rational() {
                Ok(Self::from_rational(m, x.coeffs[0].clone()))
            } else {
                x.promote(m)
            }
        };
        Ok((lift(self)?, lift(other)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        if self.n == other.n {
            return Ok(self.add_same(other));
        }
        let (a, b) = self.aligned(other)?;
        Ok(a.add_same(&b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        if self.n == other.n {
            return Ok(self.mul_same(other));
        }
        let (a, b) = self.aligned(other)?;
        Ok(a.mul_same(&b))
    }

    fn add_same(&self, other: &Self) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            n: self.n,
            coeffs: reduce(self.n, prod),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// The Galois automorphism `ζ ↦ ζ^k`; `k` must be coprime to `n`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(
            k.rem_euclid(n).gcd(&n),
            1,
            "ζ ↦ ζ^{k} is not an automorphism of Q(ζ_{n})"
        );
        let mut c = vec![BigRational::zero(); self.n as usize];
        for (j, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                c[(j as i64 * k).rem_euclid(n) as usize] += v.clone();
            }
        }
        Self::from_coeffs(self.n, c)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Parses the rendering produced by `Display`, e.g. `1 - 2*z + 1/2*z^3`.
    pub fn parse(text: &str, n: u32) -> Result<Self, CyclotomicError> {
        if n == 0 {
            return Err(CyclotomicError::ZeroOrder);
        }
        let err = |reason: &str| CyclotomicError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for ch in compact.chars() {
            let starts_term = (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with(['^', '*', '/']);
            if starts_term {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut c = vec![BigRational::zero(); n as usize];
        for term in terms {
            let (negative, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, power) = if let Some(idx) = body.find('z') {
                let (coef_part, z_part) = body.split_at(idx);
                let coef = match coef_part {
                    "" => BigRational::one(),
                    s => parse_rational(s.strip_suffix('*').ok_or_else(|| err("expected `*` before z"))?)
                        .ok_or_else(|| err("bad coefficient"))?,
                };
                let power: i64 = match &z_part[1..] {
                    "" => 1,
                    s => s
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| err("bad exponent"))?,
                };
                (coef, power)
            } else {
                (parse_rational(body).ok_or_else(|| err("bad coefficient"))?, 0)
            };
            let coef = if negative { -coef } else { coef };
            c[power.rem_euclid(n as i64) as usize] += coef;
        }
        Ok(Self::from_coeffs(n, c))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.parse().ok()?;
            let den: BigInt = den.parse().ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Reduces a coefficient vector modulo `Φ_n`, leaving `φ(n)` coefficients.
fn reduce(n: u32, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    for k in (d..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut c[k], BigRational::zero());
        for (i, &p) in phi[..d].iter().enumerate() {
            if p != 0 {
                c[k - d + i] -= &lead * BigRational::from_integer(p.into());
            }
        }
    }
    c.resize(d, BigRational::zero());
    c
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    f.write_str("z")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Result<Cyclotomic, CyclotomicError> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }

        impl $trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.try_add(b));
binop!(Sub, sub, |a, b| a.try_add(&-b));
binop!(Mul, mul, |a, b| a.try_mul(b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8(k: i64) -> Cyclotomic {
        Cyclotomic::zeta_power(8, k)
    }

    fn int(v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(8, v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, totient(n));
        }
    }

    #[test]
    fn zeta8_relations() {
        assert_eq!(z8(4), int(-1));
        assert_eq!(&z8(1) * &z8(7), int(1));
        let a = &int(1) + &z8(1);
        let b = &int(1) - &z8(1);
        assert_eq!(&a * &b, &int(1) - &z8(2));
        assert_eq!(z8(8), int(1));
        assert_eq!(z8(-1), z8(7));
    }

    #[test]
    fn conjugation() {
        assert_eq!(int(-3).conj(), int(-3));
        assert_eq!(z8(1).conj(), z8(7));
        let a = &int(2) + &(&z8(3) * &int(5));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn rationality() {
        assert_eq!(int(-1).as_rational(), Some(BigRational::from_integer((-1).into())));
        assert_eq!(z8(1).as_rational(), None);
        // ζ₃ + ζ₃² = -1
        let s = &Cyclotomic::zeta_power(3, 1) + &Cyclotomic::zeta_power(3, 2);
        assert_eq!(s.as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn promotion_and_mixing() {
        let i4 = Cyclotomic::zeta_power(4, 1);
        assert_eq!(i4.promote(8).unwrap(), z8(2));
        assert_eq!(i4.try_add(&z8(2)).unwrap(), &z8(2) + &z8(2));
        let three = Cyclotomic::from_integer(1, 3);
        assert_eq!(three.try_mul(&z8(1)).unwrap(), &z8(1) * &int(3));
        let w3 = Cyclotomic::zeta_power(3, 1);
        assert_eq!(w3.try_add(&z8(1)), Err(CyclotomicError::IncompatibleOrder(3, 8)));
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyclotomic::zero(8).to_string(), "0");
        assert_eq!(int(-1).to_string(), "-1");
        assert_eq!(z8(1).to_string(), "z");
        assert_eq!((&int(1) - &z8(2)).to_string(), "1 - z^2");
        let half = BigRational::new(1.into(), 2.into());
        let v = &z8(3).scale(&half) + &(&int(-2) * &z8(1));
        assert_eq!(v.to_string(), "-2*z + 1/2*z^3");
        assert_eq!(z8(5).to_string(), "-z");
    }

    #[test]
    fn parsing() {
        assert_eq!(Cyclotomic::parse("1 - z^2", 8).unwrap(), &int(1) - &z8(2));
        assert_eq!(
            Cyclotomic::parse("-2*z + 1/2*z^3", 8).unwrap().to_string(),
            "-2*z + 1/2*z^3"
        );
        assert_eq!(Cyclotomic::parse("z^4", 8).unwrap(), int(-1));
        assert_eq!(Cyclotomic::parse("0", 8).unwrap(), Cyclotomic::zero(8));
        assert!(Cyclotomic::parse("", 8).is_err());
        assert!(Cyclotomic::parse("1 + 2z", 8).is_err());
        assert!(Cyclotomic::parse("1/0", 8).is_err());
        assert!(Cyclotomic::parse("q", 8).is_err());
    }

    #[test]
    fn galois_permutes_roots() {
        for k in [1, 3, 5, 7] {
            assert_eq!(z8(1).galois(k), z8(k));
            let sum: Cyclotomic = (0..8).map(z8).fold(Cyclotomic::zero(8), |a, b| &a + &b);
            assert_eq!(sum.galois(k), Cyclotomic::zero(8));
        }
    }
}
