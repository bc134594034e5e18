use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Zero};

use super::primes::{is_prime_u64, prime_factors};
use crate::error::{Error, Result};

/// A positive integer stored as prime → exponent.
///
/// Only primes with non-zero exponent are stored, so two factorizations
/// are equal exactly when the integers they describe are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    powers: BTreeMap<BigUint, u64>,
}

impl Factorization {
    /// The integer 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn prime_power(p: u64, exponent: u64) -> Self {
        let mut f = Self::one();
        f.multiply_prime(BigUint::from(p), exponent);
        f
    }

    /// Factorizes a positive integer.
    pub fn of(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::invalid("cannot factor 0"));
        }
        let mut f = Self::one();
        for p in prime_factors(n) {
            f.multiply_prime(p, 1);
        }
        Ok(f)
    }

    pub fn of_u64(n: u64) -> Result<Self> {
        Self::of(&BigUint::from(n))
    }

    /// Factorizes `|n|`; rejects zero.
    pub fn of_int(n: &BigInt) -> Result<Self> {
        Self::of(n.magnitude())
    }

    /// Multiplies in `p^exponent`. `p` must be prime.
    pub fn multiply_prime(&mut self, p: BigUint, exponent: u64) {
        if exponent == 0 {
            return;
        }
        *self.powers.entry(p).or_insert(0) += exponent;
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.powers.get(&BigUint::from(p)).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = (&BigUint, u64)> {
        self.powers.iter().map(|(p, e)| (p, *e))
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    /// The `p`-part of this integer, as a factorization.
    pub fn restrict(&self, p: u64) -> Self {
        Self::prime_power(p, self.exponent(p))
    }

    /// Everything except the `p`-part.
    pub fn without(&self, p: u64) -> Self {
        let key = BigUint::from(p);
        let powers = self
            .powers
            .iter()
            .filter(|(q, _)| **q != key)
            .map(|(q, e)| (q.clone(), *e))
            .collect();
        Self { powers }
    }

    pub fn value(&self) -> BigUint {
        self.powers
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * Pow::pow(p, *e))
    }

    /// Exponent-wise comparison; no large integers are formed.
    pub fn divides(&self, other: &Self) -> bool {
        self.powers
            .iter()
            .all(|(p, e)| other.powers.get(p).is_some_and(|f| e <= f))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in &other.powers {
            let slot = out.powers.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let powers = self
            .powers
            .iter()
            .filter_map(|(p, e)| other.powers.get(p).map(|f| (p.clone(), (*e).min(*f))))
            .collect();
        Self { powers }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut out = self.clone();
        for (p, e) in &other.powers {
            let slot = out.powers.get_mut(p).expect("divisibility checked");
            *slot -= e;
            if *slot == 0 {
                out.powers.remove(p);
            }
        }
        Some(out)
    }

    /// Natural logarithm of the value, computed without materializing it.
    pub fn ln(&self) -> f64 {
        self.powers
            .iter()
            .map(|(p, e)| *e as f64 * biguint_ln(p))
            .sum()
    }
}

fn biguint_ln(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        // exact enough through f64 for anything a prime key will hold
        let digits = n.to_u64_digits();
        let mut x = 0f64;
        for d in digits.iter().rev() {
            x = x * 18446744073709551616.0 + *d as f64;
        }
        return x.ln();
    }
    let shift = bits - 64;
    let top = n >> shift;
    (top.to_u64_digits()[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

impl Mul for &Factorization {
    type Output = Factorization;
    fn mul(self, rhs: &Factorization) -> Factorization {
        let mut out = self.clone();
        for (p, e) in &rhs.powers {
            out.multiply_prime(p.clone(), *e);
        }
        out
    }
}

impl Mul for Factorization {
    type Output = Factorization;
    fn mul(self, rhs: Factorization) -> Factorization {
        &self * &rhs
    }
}

impl std::iter::Product for Factorization {
    fn product<I: Iterator<Item = Factorization>>(iter: I) -> Self {
        iter.fold(Factorization::one(), |a, b| a * b)
    }
}

/// Renders as `2^7 · 3^2 · 5`; the empty product is `1`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.powers.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p`-adic valuation of a non-zero integer.
pub fn valuation(m: &BigInt, p: u64) -> u64 {
    debug_assert!(!m.is_zero());
    let p = BigInt::from(p);
    let mut rest = m.clone();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Returns `(v, p^v)` with `p^v` the largest power of `p` dividing `m`.
pub fn p_part(m: &BigInt, p: u64) -> Result<(u64, BigInt)> {
    if m.sign() != Sign::Plus {
        return Err(Error::invalid(format!("p-part needs a positive integer, got {m}")));
    }
    require_prime(p)?;
    let v = valuation(m, p);
    Ok((v, Pow::pow(BigInt::from(p), v)))
}

/// `v_p(m!)` by Legendre's formula `⌊m/p⌋ + ⌊m/p²⌋ + …`.
pub fn legendre(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// The `p`-part of `m!`.
pub fn factorial_p_part(m: u64, p: u64) -> Result<Factorization> {
    require_prime(p)?;
    Ok(Factorization::prime_power(p, legendre(m, p)))
}
