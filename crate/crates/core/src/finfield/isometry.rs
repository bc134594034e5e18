//! Orders of unitary, symplectic and orthogonal groups over `F_q`, and the
//! 2-adic bookkeeping that compares them with the Schur bound at `ℓ = 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::gl::prime_power;
use crate::bounds::{schur_bound, SchurField};
use crate::error::{Error, Result};
use crate::exactnum::primes::is_prime_u64;
use crate::exactnum::{factorial_p_part, valuation, Factorization};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    Unitary,
    Symplectic,
    Orthogonal,
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometryKind::Unitary => "unitary",
            IsometryKind::Symplectic => "symplectic",
            IsometryKind::Orthogonal => "orthogonal",
        })
    }
}

impl FromStr for IsometryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary" => Ok(IsometryKind::Unitary),
            "symplectic" => Ok(IsometryKind::Symplectic),
            "orthogonal" => Ok(IsometryKind::Orthogonal),
            _ => Err(Error::invalid(format!(
                "unknown form kind {s:?}; expected unitary, symplectic or orthogonal"
            ))),
        }
    }
}

fn factor_product(terms: impl IntoIterator<Item = BigInt>) -> Result<Factorization> {
    terms.into_iter().map(|t| Factorization::of_int(&t)).product()
}

/// `∏_{i=1}^{k} (q^{2i} − 1)`
fn even_power_product(q: &BigInt, k: u64) -> Result<Factorization> {
    factor_product((1..=k).map(|i| Pow::pow(q, 2 * i) - 1))
}

/// Order of the isometry group of a non-singular form on `F_q^n`.
///
/// `epsilon` is required for even-dimensional orthogonal groups and
/// rejected otherwise.
pub fn isometry_order(kind: IsometryKind, n: u64, q: u64, epsilon: Option<i8>) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let (p, f) = prime_power(q)?;
    let f = f as u64;
    let qb = BigInt::from(q);
    let needs_epsilon = kind == IsometryKind::Orthogonal && n % 2 == 0;
    match (needs_epsilon, epsilon) {
        (true, None) => return Err(Error::invalid("even-dimensional orthogonal groups need ε = ±1")),
        (false, Some(_)) => return Err(Error::invalid("ε only applies to even-dimensional orthogonal groups")),
        (true, Some(e)) if e != 1 && e != -1 => return Err(Error::invalid(format!("ε must be ±1, got {e}"))),
        _ => {}
    }

    match kind {
        IsometryKind::Unitary => {
            if f % 2 != 0 {
                return Err(Error::invalid(format!("unitary groups need q to be a square, got {q}")));
            }
            let root = BigInt::from(p).pow(f / 2);
            let terms = factor_product((1..=n).map(|i| {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                Pow::pow(&root, i) - sign
            }))?;
            Ok(Factorization::prime_power(p, f * n * (n - 1) / 4) * terms)
        }
        IsometryKind::Symplectic => {
            if n % 2 != 0 {
                return Err(Error::invalid(format!("symplectic forms need even dimension, got {n}")));
            }
            Ok(Factorization::prime_power(p, f * n * n / 4) * even_power_product(&qb, n / 2)?)
        }
        IsometryKind::Orthogonal => {
            if p == 2 {
                return Err(Error::invalid("orthogonal group orders are given for odd q only"));
            }
            let two = Factorization::prime_power(2, 1);
            if n % 2 == 1 {
                let h = (n - 1) / 2;
                Ok(two * Factorization::prime_power(p, f * h * h) * even_power_product(&qb, h)?)
            } else {
                let h = n / 2;
                let eps = BigInt::from(epsilon.expect("checked above"));
                let middle = Factorization::of_int(&(Pow::pow(&qb, h) - eps))?;
                Ok(two * Factorization::prime_power(p, f * h * (h - 1)) * middle * even_power_product(&qb, h - 1)?)
            }
        }
    }
}

fn check_two_adic_congruence(p: u64, k: u32) -> Result<()> {
    if !(2..=62).contains(&k) {
        return Err(Error::invalid(format!("k must lie in 2..=62, got {k}")));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = 1u64 << (k + 1);
    if p % modulus != (1u64 << k) - 1 {
        return Err(Error::invalid(format!("{p} is not ≡ −1 + 2^{k} mod 2^{}", k + 1)));
    }
    Ok(())
}

/// Checks `v_2(p^i − (−1)^i) = k + v_2(i)` for `1 <= i <= i_max`, given
/// `p ≡ −1 + 2^k (mod 2^{k+1})`.
pub fn two_adic_checks(p: u64, k: u32, i_max: u64) -> Result<bool> {
    check_two_adic_congruence(p, k)?;
    let pb = BigInt::from(p);
    Ok((1..=i_max).all(|i| {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let lhs = valuation(&(Pow::pow(&pb, i) - sign), 2);
        lhs == k as u64 + i.trailing_zeros() as u64
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPartReport {
    /// 2-part of the isometry group order (or of `o(n, q)` in the real case).
    pub actual: Factorization,
    /// The closed form it should equal.
    pub predicted: Factorization,
    /// `S(n, K)_2`, in the unitary case.
    pub schur_two_part: Option<Factorization>,
    pub holds: bool,
}

/// Unitary case over `K = Q(ζ_{2^m})`, `m >= 2`, with `p ≡ −1 + 2^m mod 2^{m+1}`:
/// `∏_{i=1}^n (p^i − (−1)^i)_2 = 2^{mn} (n!)_2`, and this equals `S(n, K)_2`.
pub fn lemma510_two_part_check(field: &SchurField, n: u64, p: u64) -> Result<TwoPartReport> {
    let k = field.conductor();
    if !matches!(field, SchurField::Cyclotomic(_)) || k < 4 || !k.is_power_of_two() {
        return Err(Error::invalid(format!("need a cyclotomic field of 2-power conductor >= 4, got {field}")));
    }
    let m = k.trailing_zeros();
    check_two_adic_congruence(p, m)?;
    let pb = BigInt::from(p);
    let exponent: u64 = (1..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            valuation(&(Pow::pow(&pb, i) - sign), 2)
        })
        .sum();
    let actual = Factorization::prime_power(2, exponent);
    let predicted = Factorization::prime_power(2, m as u64 * n) * factorial_p_part(n, 2)?;
    let schur = schur_bound(n, field)?.restrict(2);
    let holds = actual == predicted && actual.divides(&schur);
    Ok(TwoPartReport { actual, predicted, schur_two_part: Some(schur), holds })
}

/// `o(n, q)`: the symplectic/orthogonal order with `q`-factors removed and
/// `q^{n/2} − ε` replaced by `(q^n − 1)/2`.
pub fn real_case_o(n: u64, q: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let qb = BigInt::from(q);
    if n % 2 == 1 {
        Ok(Factorization::prime_power(2, 1) * even_power_product(&qb, (n - 1) / 2)?)
    } else {
        even_power_product(&qb, n / 2)
    }
}

/// Real case with `p ≡ 3 mod 8` and `f` a power of two:
/// `o(n, p^f)_2 = f^{⌊n/2⌋} 2^n (n!)_2`.
pub fn real_case_two_part_check(n: u64, p: u64, f: u32) -> Result<TwoPartReport> {
    if !is_prime_u64(p) || p % 8 != 3 {
        return Err(Error::invalid(format!("need a prime p ≡ 3 mod 8, got {p}")));
    }
    if !f.is_power_of_two() {
        return Err(Error::invalid(format!("f must be a power of two, got {f}")));
    }
    let q = p
        .checked_pow(f)
        .ok_or_else(|| Error::invalid(format!("{p}^{f} does not fit in 64 bits")))?;
    let actual = real_case_o(n, q)?.restrict(2);
    let predicted = Factorization::prime_power(2, f.trailing_zeros() as u64 * (n / 2) + n) * factorial_p_part(n, 2)?;
    let holds = actual == predicted;
    Ok(TwoPartReport { actual, predicted, schur_two_part: None, holds })
}
