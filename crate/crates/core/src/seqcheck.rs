//! Cross-checks of the Minkowski bound against Bernoulli denominators and
//! Hanna's polynomials.
//!
//! `M(2n) / (2·M(2n−1))` is the denominator of `B_{2n}/n`, and the
//! denominator of `P(n, z)`, the coefficient of `x^n` in
//! `(−ln(1−x)/x)^z`, appears to be `M(n)`. The latter is only an
//! empirical observation; [`hanna_denominator_check`] reports rather than
//! assumes it.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bounds::{minkowski_bound, minkowski_recursion_check};
use crate::error::{Error, Result};
use crate::exactnum::primes::primes_up_to;
use crate::exactnum::{Factorization, RatPolynomial};

/// `B_0, …, B_n` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, so `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // C(m+1, j) for j = 0..m, built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorCheck {
    pub observed: BigInt,
    pub expected: BigInt,
    pub holds: bool,
}

fn compare(observed: BigInt, expected: BigInt) -> DenominatorCheck {
    let holds = observed == expected;
    DenominatorCheck { observed, expected, holds }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(())
}

/// Denominator of `B_{2n}` against `∏_{p−1 | 2n} p`.
pub fn von_staudt_clausen_check(n: u64) -> Result<DenominatorCheck> {
    require_positive(n)?;
    let b = bernoulli(2 * n as usize);
    let expected: BigInt = primes_up_to(2 * n + 1)
        .into_iter()
        .filter(|p| (2 * n) % (p - 1) == 0)
        .map(BigInt::from)
        .product();
    Ok(compare(b.denom().clone(), expected))
}

/// Denominator of `B_{2n}/n` against `M(2n) / (2·M(2n−1))`.
pub fn bernoulli_vs_minkowski(n: u64) -> Result<DenominatorCheck> {
    require_positive(n)?;
    let ratio = bernoulli(2 * n as usize) / BigRational::from_integer(BigInt::from(n));
    let term = minkowski_recursion_check(n)?.product_term.value();
    Ok(compare(ratio.denom().clone(), BigInt::from(term)))
}

/// `binom(z, m) = z(z−1)…(z−m+1)/m!` as a polynomial in `z`.
fn binomial_polynomial(m: usize) -> RatPolynomial {
    let mut acc = RatPolynomial::one();
    for j in 0..m {
        let factor = RatPolynomial::from_ints([-(j as i64), 1]);
        acc = acc.mul(&factor).scale(&BigRational::new(BigInt::one(), BigInt::from(j + 1)));
    }
    acc
}

/// `P(n, z) = Σ_{m=1}^{n} [x^n] ξ^m · binom(z, m)`, `ξ = Σ_{k>=1} x^k/(k+1)`.
pub fn hanna_polynomial(n: usize) -> Result<RatPolynomial> {
    require_positive(n as u64)?;
    let xi = RatPolynomial::new(
        std::iter::once(BigRational::zero())
            .chain((1..=n).map(|k| BigRational::new(BigInt::one(), BigInt::from(k + 1))))
            .collect(),
    );
    let mut power = RatPolynomial::one();
    let mut out = RatPolynomial::zero();
    for m in 1..=n {
        power = power.mul_truncated(&xi, n);
        let c = power.coeff(n);
        if !c.is_zero() {
            out = out.add(&binomial_polynomial(m).scale(&c));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HannaReport {
    pub polynomial: RatPolynomial,
    /// Least `q > 0` with `q·P(n, z) ∈ Z[z]`.
    pub denominator: BigInt,
    pub minkowski: BigUint,
    pub equals_m: bool,
    /// Primes at which the denominator and `M(n)` have different valuations.
    pub mismatch_primes: Vec<u64>,
}

pub fn hanna_denominator_check(n: u64) -> Result<HannaReport> {
    let polynomial = hanna_polynomial(n as usize)?;
    let denominator = polynomial.denominator();
    let m = minkowski_bound(n)?;
    let d = Factorization::of_int(&denominator)?;
    let mut mismatch_primes: Vec<u64> = d
        .primes()
        .chain(m.primes())
        .filter_map(|(p, _)| p.to_u64())
        .filter(|&p| d.exponent(p) != m.exponent(p))
        .collect();
    mismatch_primes.sort_unstable();
    mismatch_primes.dedup();
    let minkowski = m.value();
    let equals_m = denominator.is_positive() && denominator.magnitude() == &minkowski;
    Ok(HannaReport { polynomial, denominator, minkowski, equals_m, mismatch_primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::primes::prime_divisors;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        let all = bernoulli_numbers(30);
        assert!(all.iter().enumerate().skip(3).step_by(2).all(|(_, b)| b.is_zero()));
    }

    /// Inverts `(e^x − 1)/x = Σ x^k/(k+1)!` as a power series.
    fn bernoulli_by_series(n: usize) -> Vec<BigRational> {
        let mut fact = vec![BigInt::one()];
        for k in 1..=n + 1 {
            let next = &fact[k - 1] * BigInt::from(k);
            fact.push(next);
        }
        let a: Vec<BigRational> = (0..=n).map(|k| BigRational::new(BigInt::one(), fact[k + 1].clone())).collect();
        let mut inv: Vec<BigRational> = vec![BigRational::one()];
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|j| &a[j] * &inv[k - j]).sum();
            inv.push(-s);
        }
        inv.into_iter().enumerate().map(|(k, c)| c * BigRational::from_integer(fact[k].clone())).collect()
    }

    #[test]
    fn recurrence_matches_series_inversion() {
        assert_eq!(bernoulli_numbers(20), bernoulli_by_series(20));
    }

    #[test]
    fn von_staudt_clausen() {
        assert_eq!(von_staudt_clausen_check(1).unwrap().observed, BigInt::from(6));
        assert_eq!(von_staudt_clausen_check(6).unwrap().observed, BigInt::from(2730));
        assert_eq!(von_staudt_clausen_check(2).unwrap().observed, BigInt::from(30));
        for n in 1..=15 {
            assert!(von_staudt_clausen_check(n).unwrap().holds, "n = {n}");
        }
        assert!(von_staudt_clausen_check(0).is_err());
    }

    #[test]
    fn bernoulli_against_minkowski() {
        for (n, d) in [(1, 6), (2, 60), (3, 126)] {
            let r = bernoulli_vs_minkowski(n).unwrap();
            assert_eq!(r.observed, BigInt::from(d));
            assert!(r.holds);
        }
        for n in 1..=15 {
            let r = bernoulli_vs_minkowski(n).unwrap();
            assert!(r.holds, "n = {n}");
            let m2n = minkowski_bound(2 * n).unwrap().value();
            let m2n1 = minkowski_bound(2 * n - 1).unwrap().value();
            assert_eq!(BigInt::from(m2n), r.observed * 2 * BigInt::from(m2n1));
        }
    }

    #[test]
    fn hanna_examples() {
        assert_eq!(hanna_polynomial(1).unwrap(), RatPolynomial::new(vec![rat(0, 1), rat(1, 2)]));
        assert_eq!(
            hanna_polynomial(2).unwrap(),
            RatPolynomial::new(vec![rat(0, 1), rat(5, 24), rat(3, 24)])
        );
        assert_eq!(
            hanna_polynomial(3).unwrap(),
            RatPolynomial::new(vec![rat(0, 1), rat(6, 48), rat(5, 48), rat(1, 48)])
        );
        assert!(hanna_polynomial(0).is_err());
        let r = hanna_denominator_check(1).unwrap();
        assert_eq!((r.denominator, r.equals_m), (BigInt::from(2), true));
        let r = hanna_denominator_check(2).unwrap();
        assert_eq!((r.denominator, r.equals_m), (BigInt::from(24), true));
        let r = hanna_denominator_check(4).unwrap();
        assert_eq!((r.denominator, r.equals_m), (BigInt::from(5760), true));
    }

    #[test]
    fn hanna_at_special_points() {
        // z = 1: −ln(1−x)/x has coefficients 1/(n+1); z = −1: Gregory coefficients
        let gregory = [rat(-1, 2), rat(-1, 12), rat(-1, 24), rat(-19, 720), rat(-3, 160)];
        for n in 1..=5usize {
            let p = hanna_polynomial(n).unwrap();
            assert_eq!(p.coeff(0), rat(0, 1));
            assert_eq!(p.eval(&rat(1, 1)), rat(1, n as i64 + 1));
            assert_eq!(p.eval(&rat(-1, 1)), gregory[n - 1]);
        }
    }

    #[test]
    fn hanna_denominators_equal_minkowski() {
        for n in 1..=12 {
            let r = hanna_denominator_check(n).unwrap();
            assert!(r.equals_m, "n = {n}");
            assert!(r.mismatch_primes.is_empty());
        }
    }

    #[test]
    fn lcm_is_the_ideal_generator() {
        for n in 1..=10usize {
            let p = hanna_polynomial(n).unwrap();
            let d = p.denominator();
            assert!(p.scale(&BigRational::from_integer(d.clone())).has_integer_coeffs());
            for r in prime_divisors(d.to_u64().unwrap()) {
                let smaller = BigRational::from_integer(&d / BigInt::from(r));
                assert!(!p.scale(&smaller).has_integer_coeffs(), "n = {n}, r = {r}");
            }
        }
    }
}
