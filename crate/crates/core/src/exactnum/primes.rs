//! Primality, sieving and integer factorization.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

// Witness set that makes Miller-Rabin deterministic for every n < 3.3e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over arbitrary precision. Deterministic below 3.3e24,
/// probabilistic with a fixed witness set above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// Brent's variant of Pollard rho; `n` odd, composite, not a prime power of a tiny prime.
fn rho_u64(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(mut n: u64, out: &mut Vec<u64>) {
    let mut d = 2u64;
    while d < 1000 && d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

fn rho_big(n: &BigUint) -> BigUint {
    let mut rng = SplitMix(0x9E37_79B9_7F4A_7C15);
    loop {
        let c = rng.below(n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = rng.below(n);
        let mut y = x.clone();
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
    }
}

fn factor_big_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut v = Vec::new();
        factor_u64_into(small, &mut v);
        out.extend(v.into_iter().map(BigUint::from));
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    factor_big_into(d, out);
    factor_big_into(rest, out);
}

/// Prime factors of `n` with multiplicity, ascending. `n = 0` yields nothing.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigUint::from(p);
        while (&rest % &p).is_zero() {
            rest /= &p;
            out.push(p.clone());
        }
    }
    factor_big_into(rest, &mut out);
    out.sort();
    out
}

/// Multiplicative order of `a` modulo `m`, or `None` if `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd_u64(a % m, m) != 1 {
        return None;
    }
    // the order divides φ(m); strip prime factors while the power stays 1
    let phi = totient(m);
    let mut k = phi;
    for r in prime_divisors(phi) {
        while k % r == 0 && pow_mod(a % m, k / r, m) == 1 {
            k /= r;
        }
    }
    Some(k)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Distinct prime divisors of a machine integer.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    if n > 1 {
        factor_u64_into(n, &mut v);
    }
    v.sort_unstable();
    v.dedup();
    v
}

// Tiny deterministic generator for rho seeds; reproducible factor order.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: &BigUint) -> BigUint {
        let words = (n.bits() / 64 + 2) as usize;
        let digits: Vec<u64> = (0..words).map(|_| self.next()).collect();
        BigUint::from_slice(
            &digits
                .iter()
                .flat_map(|d| [*d as u32, (*d >> 32) as u32])
                .collect::<Vec<_>>(),
        ) % n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), trial_is_prime(n), "n = {n}");
        }
        // strong pseudoprime to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn sieve_agrees() {
        let s = primes_up_to(1000);
        let t: Vec<u64> = (0..=1000).filter(|&n| trial_is_prime(n)).collect();
        assert_eq!(s, t);
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1u64, 2, 12, 97, 5760, 2903040, 600851475143, 1_000_000_007 * 998_244_353] {
            let f = prime_factors(&BigUint::from(n));
            let prod: BigUint = f.iter().product();
            assert_eq!(prod, BigUint::from(n));
            assert!(f.iter().all(is_prime));
        }
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * 18446744073709551557u64;
        let f = prime_factors(&big);
        assert_eq!(f.len(), 3);
        assert_eq!(f.iter().product::<BigUint>(), big);
    }

    #[test]
    fn orders_and_totients() {
        assert_eq!(multiplicative_order(2, 9), Some(6));
        assert_eq!(multiplicative_order(2, 25), Some(20));
        assert_eq!(multiplicative_order(2, 49), Some(21));
        assert_eq!(multiplicative_order(3, 49), Some(42));
        assert_eq!(multiplicative_order(3, 9), None);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
    }

    #[test]
    fn orders_match_repeated_multiplication() {
        for m in 2..200u64 {
            for a in 1..m {
                let naive = (gcd_u64(a, m) == 1).then(|| {
                    let (mut x, mut k) = (a, 1);
                    while x != 1 {
                        x = x * a % m;
                        k += 1;
                    }
                    k
                });
                assert_eq!(multiplicative_order(a, m), naive, "a={a} m={m}");
            }
        }
    }
}
