//! Divisibility certificates for finite `p`-groups with rational traces.
//!
//! With trace values `z_t = n − pt` and multiplicities `m_t`, the power-sum
//! congruences `Σ_t m_t z_t^s ≡ 0 (mod |G|)` say that `m·V ≡ 0`, `V` the
//! Vandermonde matrix `(z_t^s)`. Multiplying by the companion matrix `E`
//! of signed elementary symmetric functions diagonalises `V`, and pulling
//! the powers of `p` out of `z_t − z_s = p(s − t)` gives
//! `|G|  |  m_t · p^a · ∏_{s≠t} (s − t)` for every `t`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::require_prime;
use crate::matgroup::{trace_stats, GroupClosure, Scalar};

/// `e_s(values)`: sum over `s`-subsets of the product.
pub fn elementary_symmetric(values: &[BigInt], s: usize) -> Result<BigInt> {
    if s > values.len() {
        return Err(Error::invalid(format!(
            "e_{s} is undefined for {} values",
            values.len()
        )));
    }
    // coefficients of ∏ (1 + v x), truncated at degree s
    let mut e = vec![BigInt::zero(); s + 1];
    e[0] = BigInt::one();
    for v in values {
        for k in (1..=s).rev() {
            let term = &e[k - 1] * v;
            e[k] += term;
        }
    }
    Ok(e.swap_remove(s))
}

/// Square integer matrix as rows.
pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VandermondePair {
    /// `V[t][s] = z_t^s`
    pub v: IntMatrix,
    /// `E[s][t] = (−1)^{a−s} e_{a−s}(z without z_t)`
    pub e: IntMatrix,
    /// `∏_{s≠t} (z_t − z_s)`
    pub diagonal: Vec<BigInt>,
    /// `V·E` equals `diag(diagonal)` exactly.
    pub diagonal_ok: bool,
}

pub fn vandermonde_pair(z: &[BigInt]) -> Result<VandermondePair> {
    let size = z.len();
    if size == 0 {
        return Err(Error::invalid("need at least one value"));
    }
    for i in 0..size {
        if z[i + 1..].contains(&z[i]) {
            return Err(Error::invalid(format!("repeated value {}", z[i])));
        }
    }
    let a = size - 1;
    let v: IntMatrix = z
        .iter()
        .map(|zt| (0..size).map(|s| Pow::pow(zt, s as u32)).collect())
        .collect();

    let mut e = vec![vec![BigInt::zero(); size]; size];
    for t in 0..size {
        let rest: Vec<BigInt> = z.iter().enumerate().filter(|&(i, _)| i != t).map(|(_, x)| x.clone()).collect();
        for (s, row) in e.iter_mut().enumerate() {
            let val = elementary_symmetric(&rest, a - s)?;
            row[t] = if (a - s) % 2 == 0 { val } else { -val };
        }
    }

    let diagonal: Vec<BigInt> = (0..size)
        .map(|t| {
            (0..size)
                .filter(|&s| s != t)
                .map(|s| &z[t] - &z[s])
                .product()
        })
        .collect();

    let diagonal_ok = (0..size).all(|i| {
        (0..size).all(|j| {
            let entry: BigInt = (0..size).map(|k| &v[i][k] * &e[k][j]).sum();
            if i == j {
                entry == diagonal[i]
            } else {
                entry.is_zero()
            }
        })
    });
    Ok(VandermondePair { v, e, diagonal, diagonal_ok })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateLine {
    pub t: u64,
    /// `m_t · p^a · ∏_{s≠t} (s − t)`
    pub product: BigInt,
    pub divisible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub p: u64,
    pub a: u64,
    pub order: BigInt,
    pub z: Vec<BigInt>,
    pub m: Vec<u64>,
    pub per_t: Vec<CertificateLine>,
    /// `(m_0, …, m_a)·V ≡ 0 (mod |G|)`.
    pub congruences_ok: bool,
    /// Every trace is one of the `z_t`.
    pub spectrum_ok: bool,
    pub overall: bool,
}

impl CertificateReport {
    /// The `t = 0` line: `|G|` divides `p^a · a!`.
    pub fn bound_line(&self) -> &CertificateLine {
        &self.per_t[0]
    }
}

pub fn schur_certificate<S: Scalar>(g: &GroupClosure<S>, p: u64) -> Result<CertificateReport> {
    require_prime(p)?;
    let mut rest = g.order();
    while rest % p as usize == 0 {
        rest /= p as usize;
    }
    if rest != 1 {
        return Err(Error::invalid(format!("group order {} is not a power of {p}", g.order())));
    }
    let report = trace_stats(g, p)?;
    let stats = report.stats;
    let a = stats.a;
    let order = BigInt::from(g.order());
    let pa = Pow::pow(BigInt::from(p), a);

    let congruences_ok = (0..=a).all(|s| {
        let sum: BigInt = stats
            .values
            .iter()
            .zip(&stats.counts)
            .map(|(z, &m)| BigInt::from(m) * Pow::pow(z, s as u32))
            .sum();
        sum.is_multiple_of(&order)
    });

    let per_t: Vec<CertificateLine> = (0..=a)
        .map(|t| {
            let diffs: BigInt = (0..=a)
                .filter(|&s| s != t)
                .map(|s| BigInt::from(s as i64 - t as i64))
                .product();
            let product = BigInt::from(stats.counts[t as usize]) * &pa * diffs;
            let divisible = product.abs().is_multiple_of(&order);
            CertificateLine { t, product, divisible }
        })
        .collect();

    let overall = report.spectrum_ok && congruences_ok && per_t.iter().all(|l| l.divisible);
    Ok(CertificateReport {
        p,
        a,
        order,
        z: stats.values,
        m: stats.counts,
        per_t,
        congruences_ok,
        spectrum_ok: report.spectrum_ok,
        overall,
    })
}
