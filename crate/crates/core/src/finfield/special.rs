//! Primes `p` generating `(Z/ℓ²Z)^*`, and the `ℓ`-part of `|GL_n(F_{p^f})|`.
//!
//! For such `p` the order of `p^f` modulo `ℓ` is `τ = (ℓ−1)/gcd(ℓ−1, f)`,
//! and `|GL_n(F_{p^f})|_ℓ = ℓ^{(1+v_ℓ(f))⌊n/τ⌋} (⌊n/τ⌋!)_ℓ`. With `f = 1`
//! this is `M(n)_ℓ`, which is how the Minkowski bound is shown sharp at odd
//! primes. At `ℓ = 2` the same argument breaks: `|GL_2(F_p)|` is divisible
//! by 16 for every odd `p` while `M(2)_2 = 8`.

use num_integer::Integer;

use super::gl::gl_order_valuation;
use crate::bounds::minkowski_p_part;
use crate::error::{Error, Result};
use crate::exactnum::primes::{is_prime_u64, multiplicative_order};
use crate::exactnum::{factorial_p_part, Factorization};

/// Candidates examined by [`find_special_prime`].
pub const SPECIAL_PRIME_SEARCH_BOUND: u64 = 1_000_000;

fn require_odd_prime(ell: u64) -> Result<()> {
    if ell == 2 || !is_prime_u64(ell) || ell > u32::MAX as u64 {
        return Err(Error::invalid(format!("ℓ must be an odd prime below 2^32, got {ell}")));
    }
    Ok(())
}

/// True iff `p ≠ ℓ` is prime and has order `ℓ(ℓ−1)` modulo `ℓ²`.
pub fn is_special_prime(ell: u64, p: u64) -> bool {
    ell <= u32::MAX as u64 && p != ell && is_prime_u64(p) && multiplicative_order(p, ell * ell) == Some(ell * (ell - 1))
}

/// The `(skip+1)`-th smallest special prime for `ℓ`.
pub fn find_special_prime(ell: u64, skip: usize) -> Result<u64> {
    require_odd_prime(ell)?;
    (2..=SPECIAL_PRIME_SEARCH_BOUND)
        .filter(|&p| is_special_prime(ell, p))
        .nth(skip)
        .ok_or(Error::SearchExhausted(SPECIAL_PRIME_SEARCH_BOUND))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma51Report {
    pub ell: u64,
    pub p: u64,
    pub f: u64,
    pub n: u64,
    pub tau: u64,
    pub predicted: Factorization,
    pub actual: Factorization,
    pub matches: bool,
    /// For `f = 1`: whether `|GL_n(F_p)|_ℓ = M(n)_ℓ`.
    pub minkowski_match: Option<bool>,
}

pub fn lemma51_check(n: u64, f: u64, ell: u64, p: u64) -> Result<Lemma51Report> {
    require_odd_prime(ell)?;
    if n == 0 || f == 0 {
        return Err(Error::invalid("n and f must be positive"));
    }
    if !is_special_prime(ell, p) {
        return Err(Error::invalid(format!("{p} does not generate the units modulo {}", ell * ell)));
    }
    let tau = (ell - 1) / (ell - 1).gcd(&f);
    let k = n / tau;
    let mut vf = 0;
    let mut rest = f;
    while rest % ell == 0 {
        rest /= ell;
        vf += 1;
    }
    let predicted = Factorization::prime_power(ell, (1 + vf) * k) * factorial_p_part(k, ell)?;
    let q = u32::try_from(f)
        .ok()
        .and_then(|f| p.checked_pow(f))
        .ok_or_else(|| Error::invalid(format!("{p}^{f} does not fit in 64 bits")))?;
    let actual = Factorization::prime_power(ell, gl_order_valuation(n, q, ell)?);
    let minkowski_match = (f == 1).then(|| minkowski_p_part(n, ell).map(|m| m == actual)).transpose()?;
    Ok(Lemma51Report {
        ell,
        p,
        f,
        n,
        tau,
        matches: predicted == actual,
        predicted,
        actual,
        minkowski_match,
    })
}

/// `(|GL_2(F_p)|_2, M(2)_2)` for an odd prime `p`.
pub fn ell_two_counterexample(p: u64) -> Result<(Factorization, Factorization)> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::invalid(format!("p must be an odd prime, got {p}")));
    }
    let gl = Factorization::prime_power(2, gl_order_valuation(2, p, 2)?);
    Ok((gl, minkowski_p_part(2, 2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::gl::gl_order;

    fn naive_order(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut k = 1;
        while x != 1 {
            x = x * a % m;
            k += 1;
        }
        k
    }

    #[test]
    fn special_prime_examples() {
        assert_eq!(find_special_prime(3, 0).unwrap(), 2);
        assert_eq!(find_special_prime(3, 1).unwrap(), 5);
        assert_eq!(find_special_prime(5, 0).unwrap(), 2);
        assert_eq!(find_special_prime(5, 1).unwrap(), 3);
        assert_eq!(find_special_prime(7, 0).unwrap(), 3);
        assert_eq!(find_special_prime(7, 1).unwrap(), 5);
        assert!(find_special_prime(2, 0).is_err());
        assert!(find_special_prime(9, 0).is_err());
    }

    #[test]
    fn special_primes_against_naive_orders() {
        for ell in [3u64, 5, 7, 11, 13] {
            let m = ell * ell;
            let expected: Vec<u64> = (2..200)
                .filter(|&p| p != ell && is_prime_u64(p) && naive_order(p, m) == ell * (ell - 1))
                .take(3)
                .collect();
            let found: Vec<u64> = (0..3).map(|s| find_special_prime(ell, s).unwrap()).collect();
            assert_eq!(found, expected, "ℓ = {ell}");
        }
        // 2 has order 21 mod 49
        assert_eq!(naive_order(2, 49), 21);
        assert!(!is_special_prime(7, 2));
    }

    #[test]
    fn lemma51_examples() {
        let r = lemma51_check(4, 1, 3, 2).unwrap();
        assert_eq!(r.tau, 2);
        assert_eq!(r.predicted.value(), 9u32.into());
        assert!(r.matches);
        assert_eq!(r.minkowski_match, Some(true));

        let r = lemma51_check(2, 2, 3, 2).unwrap();
        assert_eq!(r.tau, 1);
        assert_eq!(r.actual.value(), 9u32.into());
        assert!(r.matches);
        assert_eq!(r.minkowski_match, None);

        let r = lemma51_check(1, 1, 5, 2).unwrap();
        assert_eq!(r.tau, 4);
        assert!(r.predicted.is_one() && r.matches);

        assert!(lemma51_check(3, 1, 7, 2).is_err());
    }

    #[test]
    fn lemma51_grid() {
        for ell in [3u64, 5, 7] {
            for skip in 0..2 {
                let p = find_special_prime(ell, skip).unwrap();
                for f in 1..=3 {
                    for n in 1..=8 {
                        let r = lemma51_check(n, f, ell, p).unwrap();
                        assert!(r.matches, "ℓ={ell} p={p} f={f} n={n}");
                        if f == 1 {
                            assert_eq!(r.minkowski_match, Some(true));
                            let full = gl_order(n, p).unwrap().full.restrict(ell);
                            assert_eq!(full, minkowski_p_part(n, ell).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_breaks_the_argument() {
        for p in [3u64, 5, 7, 11] {
            let (gl, m) = ell_two_counterexample(p).unwrap();
            assert!(gl.exponent(2) >= 4, "p = {p}");
            assert_eq!(m.value(), 8u32.into());
            assert!(!gl.divides(&m));
        }
        assert!(ell_two_counterexample(2).is_err());
    }
}
