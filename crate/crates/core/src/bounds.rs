//! The Minkowski bound `M(n)` and Schur's generalization `S(n, K)`.
//!
//! `M(n)` is the least common multiple of the orders of all finite
//! subgroups of `GL_n(Q)`:
//!
//! ```text
//! M(n) = ∏_p p^( ⌊n/(p−1)⌋ + ⌊n/(p(p−1))⌋ + ⌊n/(p²(p−1))⌋ + … )
//! ```
//!
//! `S(n, K)` bounds finite groups whose traces lie in `K`. Only `K = Q`
//! and cyclotomic fields `Q(ζ_k)` are supported, since those are the
//! fields for which `m(K, ℓ)` and `t(K, ℓ)` have a closed form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exactnum::primes::{prime_divisors, primes_up_to};
use crate::exactnum::{legendre, require_prime, valuation, ExactInt, Factorization};

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::invalid(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

/// Exponent of `p` in `M(n)` via the floor series.
fn minkowski_exponent_series(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut d = p - 1;
    while d <= n {
        total += n / d;
        d = match d.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    total
}

pub fn minkowski_bound(n: u64) -> Result<Factorization> {
    require_positive(n, "dimension")?;
    let mut f = Factorization::one();
    for p in primes_up_to(n + 1) {
        f.multiply_prime(BigUint::from(p), minkowski_exponent_series(n, p));
    }
    Ok(f)
}

/// `M(n)_p = p^a · (a!)_p` with `a = ⌊n/(p−1)⌋`.
pub fn minkowski_p_part(n: u64, p: u64) -> Result<Factorization> {
    require_positive(n, "dimension")?;
    require_prime(p)?;
    let a = n / (p - 1);
    let exponent = a + legendre(a, p);
    assert_eq!(exponent, minkowski_exponent_series(n, p), "M({n})_{p}: compact form disagrees with floor series");
    Ok(Factorization::prime_power(p, exponent))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionCheck {
    pub holds: bool,
    /// `∏_{p : p−1 | 2n} p · n_p`
    pub product_term: Factorization,
}

/// Checks `M(2n+1) = 2·M(2n)` and `M(2n) = 2·M(2n−1)·∏_{p−1 | 2n} p·n_p`.
pub fn minkowski_recursion_check(n: u64) -> Result<RecursionCheck> {
    require_positive(n, "n")?;
    let two = Factorization::prime_power(2, 1);
    let mut product_term = Factorization::one();
    for p in primes_up_to(2 * n + 1) {
        if (2 * n) % (p - 1) == 0 {
            let n_p = valuation(&ExactInt::from(n), p);
            product_term.multiply_prime(BigUint::from(p), 1 + n_p);
        }
    }
    let odd = minkowski_bound(2 * n + 1)?;
    let even = minkowski_bound(2 * n)?;
    let prev = minkowski_bound(2 * n - 1)?;
    let holds = odd == &two * &even && even == &(&two * &prev) * &product_term;
    Ok(RecursionCheck { holds, product_term })
}

/// A number field admissible for the Schur bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchurField {
    Rational,
    Cyclotomic(u64),
}

impl SchurField {
    pub fn cyclotomic(k: u64) -> Result<Self> {
        require_positive(k, "conductor")?;
        Ok(SchurField::Cyclotomic(k))
    }

    /// Conductor, with `Q` treated as conductor 1.
    pub fn conductor(&self) -> u64 {
        match self {
            SchurField::Rational => 1,
            SchurField::Cyclotomic(k) => *k,
        }
    }

    /// `self ⊆ other`, decided by conductor divisibility only.
    pub fn is_subfield_of(&self, other: &SchurField) -> bool {
        other.conductor() % self.conductor() == 0
    }
}

impl fmt::Display for SchurField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurField::Rational => write!(f, "Q"),
            SchurField::Cyclotomic(k) => write!(f, "Q(ζ_{k})"),
        }
    }
}

/// Accepts `Q` or `zeta:<k>`.
impl FromStr for SchurField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(SchurField::Rational);
        }
        let k = s
            .strip_prefix("zeta:")
            .and_then(|k| k.parse::<u64>().ok())
            .ok_or_else(|| Error::invalid(format!("field must be Q or zeta:<k>, got {s:?}")))?;
        SchurField::cyclotomic(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchurParams {
    pub ell: u64,
    pub m: u64,
    pub t: u64,
}

pub fn schur_params(field: &SchurField, ell: u64) -> Result<SchurParams> {
    require_prime(ell)?;
    let (m, t) = match field {
        SchurField::Rational => (1, ell - 1),
        SchurField::Cyclotomic(k) => {
            let v = valuation(&ExactInt::from(*k), ell);
            (v.max(1), if v == 0 { ell - 1 } else { 1 })
        }
    };
    Ok(SchurParams { ell, m, t })
}

// Primes whose factor in S(n, K) can be non-trivial: t(K, ℓ) <= n.
fn schur_primes(n: u64, field: &SchurField) -> Vec<u64> {
    let mut ps = primes_up_to(n + 1);
    ps.extend(prime_divisors(field.conductor()));
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// `S(n, K) = 2^(n − ⌊n/t(K,2)⌋) · ∏_ℓ ℓ^(m(K,ℓ)⌊n/t(K,ℓ)⌋) (⌊n/t(K,ℓ)⌋!)_ℓ`.
///
/// `n = 0` gives the empty product.
pub fn schur_bound(n: u64, field: &SchurField) -> Result<Factorization> {
    let mut f = Factorization::one();
    let t2 = schur_params(field, 2)?.t;
    f.multiply_prime(BigUint::from(2u32), n - n / t2);
    for ell in schur_primes(n, field) {
        let SchurParams { m, t, .. } = schur_params(field, ell)?;
        let a = n / t;
        f.multiply_prime(BigUint::from(ell), m * a + legendre(a, ell));
    }
    Ok(f)
}

/// `[K ∩ Q(μ_{2^∞}) : Q]^⌊n/t⌋ · 2^n · (n!)_2`, the closed form of `S(n, K)_2`.
pub fn schur_two_part_closed_form(n: u64, field: &SchurField) -> Result<Factorization> {
    let SchurParams { m, t, .. } = schur_params(field, 2)?;
    let log_degree = if t == 1 { m - 1 } else { m - 2 };
    Ok(Factorization::prime_power(2, log_degree * (n / t) + n + legendre(n, 2)))
}

/// `S(m, K)·S(n, K)` divides `S(m + n, K)`.
pub fn schur_additive_divisibility(m: u64, n: u64, field: &SchurField) -> Result<bool> {
    let lhs = &schur_bound(m, field)? * &schur_bound(n, field)?;
    Ok(lhs.divides(&schur_bound(m + n, field)?))
}

/// `S(n, K)` divides `S(n, F)` for `K ⊆ F`.
pub fn schur_inclusion_divisibility(n: u64, small: &SchurField, large: &SchurField) -> Result<bool> {
    if !small.is_subfield_of(large) {
        return Err(Error::invalid(format!(
            "{small} is not contained in {large} (conductor {} does not divide {})",
            small.conductor(),
            large.conductor()
        )));
    }
    Ok(schur_bound(n, small)?.divides(&schur_bound(n, large)?))
}

/// Both divisibility properties of the Schur bound. The inclusion test is
/// skipped when `larger` is `None`, and otherwise run at `m`, `n` and `m + n`.
pub fn schur_divisibility_checks(
    m: u64,
    n: u64,
    field: &SchurField,
    larger: Option<&SchurField>,
) -> Result<bool> {
    let mut ok = schur_additive_divisibility(m, n, field)?;
    if let Some(large) = larger {
        for d in [m, n, m + n] {
            ok &= schur_inclusion_divisibility(d, field, large)?;
        }
    }
    Ok(ok)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KatznelsonEstimate {
    /// `∏_{p < bound} p^{1/(p−1)²}`
    pub constant: f64,
    /// `(M(n)/n!)^{1/n}`
    pub ratio: f64,
}

/// Truncated `∏_{p < prime_bound} p^{1/(p−1)²}`, accumulated in log space.
pub fn katznelson_constant(prime_bound: u64) -> Result<f64> {
    if prime_bound < 2 {
        return Err(Error::invalid("prime bound must be at least 2"));
    }
    let log_sum: f64 = primes_up_to(prime_bound - 1)
        .into_iter()
        .map(|p| {
            let d = (p - 1) as f64;
            (p as f64).ln() / (d * d)
        })
        .sum();
    Ok(log_sum.exp())
}

/// `(M(n)/n!)^{1/n}` from the exact factorization of `M(n)`.
pub fn minkowski_ratio(n: u64) -> Result<f64> {
    let ln_m = minkowski_bound(n)?.ln();
    let ln_fact: f64 = (2..=n).map(|i| (i as f64).ln()).sum();
    Ok(((ln_m - ln_fact) / n as f64).exp())
}

pub fn katznelson_estimate(prime_bound: u64, n: u64) -> Result<KatznelsonEstimate> {
    Ok(KatznelsonEstimate { constant: katznelson_constant(prime_bound)?, ratio: minkowski_ratio(n)? })
}
