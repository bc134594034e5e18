use num_bigint::{BigInt, BigUint};
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::exactnum::primes::prime_divisors;
use crate::exactnum::{valuation, Factorization};
use crate::exec::Execution;

/// Splits `q = p^f`. Fails unless `q` is a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    let p = ps[0];
    let mut f = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        f += 1;
    }
    Ok((p, f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlOrder {
    pub p: u64,
    pub f: u32,
    pub full: Factorization,
    /// `∏_{i=1}^n (q^i − 1)`
    pub p_prime_part: Factorization,
}

/// `|GL_n(F_q)| = q^{n(n−1)/2} ∏_{i=1}^n (q^i − 1)`, factored.
pub fn gl_order(n: u64, q: u64) -> Result<GlOrder> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let (p, f) = prime_power(q)?;
    let qb = BigUint::from(q);
    let mut p_prime_part = Factorization::one();
    for i in 1..=n {
        let term: BigUint = Pow::pow(&qb, i) - 1u32;
        p_prime_part = p_prime_part * Factorization::of(&term)?;
    }
    let full = &p_prime_part * &Factorization::prime_power(p, f as u64 * n * (n - 1) / 2);
    Ok(GlOrder { p, f, full, p_prime_part })
}

/// `v_ℓ(|GL_n(F_q)|)` without factoring the cyclotomic-like terms.
pub fn gl_order_valuation(n: u64, q: u64, ell: u64) -> Result<u64> {
    let (p, f) = prime_power(q)?;
    if ell == p {
        return Ok(f as u64 * n * (n - 1) / 2);
    }
    let qb = BigInt::from(q);
    Ok((1..=n).map(|i| valuation(&(Pow::pow(&qb, i) - 1), ell)).sum())
}

/// Addition and multiplication tables of `F_q` for `q ∈ {2, 3, 4, 5}`.
///
/// `F_4` uses the basis `{1, x}` modulo `x² + x + 1`; element `b₁b₀` in
/// binary is `b₀ + b₁x`.
#[derive(Debug, Clone)]
pub struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self> {
        let q = q as usize;
        let (add, mul): (Vec<u8>, Vec<u8>) = match q {
            2 | 3 | 5 => (0..q * q)
                .map(|k| (((k / q + k % q) % q) as u8, ((k / q) * (k % q) % q) as u8))
                .unzip(),
            4 => (0..16)
                .map(|k| {
                    let (a, b) = ((k / 4) as u8, (k % 4) as u8);
                    (a ^ b, gf4_mul(a, b))
                })
                .unzip(),
            _ => return Err(Error::invalid(format!("brute-force field size must be 2, 3, 4 or 5, got {q}"))),
        };
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let inv = (0..q)
            .map(|a| (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8)
            .collect();
        Ok(Self { q, add, mul, neg, inv })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// `0` maps to `0`.
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Gaussian elimination on a row-major `n × n` matrix.
    pub fn is_invertible(&self, n: usize, m: &mut [u8]) -> bool {
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return false;
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
            }
            let inv = self.inv(m[col * n + col]);
            for r in col + 1..n {
                let factor = self.mul(m[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = self.neg(self.mul(factor, m[col * n + c]));
                    m[r * n + c] = self.add(m[r * n + c], sub);
                }
            }
        }
        true
    }
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // carry-less product, then x² = x + 1
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

/// Counts invertible matrices over `F_q` by enumerating all `q^{n²}`.
pub fn gl_order_bruteforce(n: usize, q: u64) -> Result<BigUint> {
    gl_order_bruteforce_with(n, q, Execution::default())
}

pub fn gl_order_bruteforce_with(n: usize, q: u64, exec: Execution) -> Result<BigUint> {
    if !(1..=3).contains(&n) || q > 5 {
        return Err(Error::invalid(format!("brute force is limited to n <= 3, q <= 5; got n = {n}, q = {q}")));
    }
    let field = SmallField::new(q)?;
    let cells = n * n;
    let total = q.pow(cells as u32);
    let count = exec.count_range(total, |mut idx| {
        let mut m = [0u8; 9];
        for cell in m.iter_mut().take(cells) {
            *cell = (idx % q) as u8;
            idx /= q;
        }
        field.is_invertible(n, &mut m[..cells])
    });
    Ok(BigUint::from(count))
}

impl GlOrder {
    pub fn value(&self) -> BigUint {
        self.full.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(1024).unwrap(), (2, 10));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
        assert!(prime_power(0).is_err());
    }

    #[test]
    fn gl_order_examples() {
        assert_eq!(gl_order(2, 2).unwrap().value(), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3).unwrap().value(), BigUint::from(48u32));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            assert_eq!(gl_order(1, q).unwrap().value(), BigUint::from(q - 1));
        }
        let g = gl_order(2, 4).unwrap();
        assert_eq!(g.value(), BigUint::from(180u32));
        assert_eq!(g.p_prime_part.value(), BigUint::from(45u32));
        assert_eq!(g.p_prime_part.exponent(2), 0);
        assert!(gl_order(0, 2).is_err());
        assert!(gl_order(2, 12).is_err());
    }

    #[test]
    fn product_formula_matches_value_and_valuation() {
        for n in 1..6 {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
                let g = gl_order(n, q).unwrap();
                // ∏_{i=0}^{n−1} (q^n − q^i)
                let qb = BigUint::from(q);
                let direct: BigUint = (0..n).map(|i| Pow::pow(&qb, n) - Pow::pow(&qb, i)).product();
                assert_eq!(g.value(), direct);
                for ell in [2, 3, 5, 7] {
                    assert_eq!(gl_order_valuation(n, q, ell).unwrap(), g.full.exponent(ell), "n={n} q={q} l={ell}");
                }
            }
        }
    }

    #[test]
    fn small_field_axioms() {
        for q in [2u64, 3, 4, 5] {
            let f = SmallField::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(SmallField::new(7).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(gl_order_bruteforce(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(gl_order_bruteforce(1, 5).unwrap(), BigUint::from(4u32));
        assert_eq!(gl_order_bruteforce(2, 3).unwrap(), BigUint::from(48u32));
        assert!(gl_order_bruteforce(4, 2).is_err());
        assert!(gl_order_bruteforce(2, 7).is_err());
        assert!(gl_order_bruteforce(2, 6).is_err());
    }

    #[test]
    fn bruteforce_agrees_with_formula() {
        for n in 1..=3usize {
            for q in [2u64, 3, 4, 5] {
                let brute = gl_order_bruteforce(n, q).unwrap();
                assert_eq!(brute, gl_order(n as u64, q).unwrap().value(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn execution_modes_agree() {
        let a = gl_order_bruteforce_with(2, 4, Execution::Sequential).unwrap();
        let b = gl_order_bruteforce_with(2, 4, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
