use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::closure::GroupClosure;
use super::matrix::Scalar;
use crate::error::{Error, Result};
use crate::exactnum::require_prime;
use crate::exec::Execution;

/// Trace distribution of a group against the admissible values
/// `z_t = n − p·t`, `0 <= t <= a = ⌊n/(p−1)⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStats {
    pub n: u64,
    pub p: u64,
    pub a: u64,
    pub values: Vec<BigInt>,
    /// `counts[t] = #{g : tr(g) = z_t}`
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub stats: TraceStats,
    /// Every trace is some `z_t`, and only the identity has trace `n`.
    pub spectrum_ok: bool,
    /// `Σ_g tr(g)^s ≡ 0 (mod |G|)` for `s = 0..=a`.
    pub fact1_ok: bool,
    /// `Σ_g tr(g)^s` for `s = 0..=a`.
    pub power_sums: Vec<BigRational>,
    /// Traces that are not among the `z_t`, with multiplicity.
    pub stray: BTreeMap<BigRational, u64>,
}

/// Rational traces of every element, in element order.
pub fn rational_traces<S: Scalar>(g: &GroupClosure<S>, exec: Execution) -> Result<Vec<BigRational>> {
    let elems = g.to_vec();
    exec.map(&elems, |x| x.trace().to_rational().ok_or(Error::NonRationalTrace))
        .into_iter()
        .collect()
}

/// Trace value → multiplicity. Fails on a non-rational trace.
pub fn trace_multiset<S: Scalar>(g: &GroupClosure<S>) -> Result<BTreeMap<BigRational, u64>> {
    let mut out = BTreeMap::new();
    for t in rational_traces(g, Execution::default())? {
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn trace_stats<S: Scalar>(g: &GroupClosure<S>, p: u64) -> Result<TraceReport> {
    trace_stats_with(g, p, Execution::default())
}

pub fn trace_stats_with<S: Scalar>(g: &GroupClosure<S>, p: u64, exec: Execution) -> Result<TraceReport> {
    require_prime(p)?;
    let n = g.dim() as u64;
    let a = n / (p - 1);
    let traces = rational_traces(g, exec)?;
    let values: Vec<BigInt> = (0..=a).map(|t| BigInt::from(n) - BigInt::from(p * t)).collect();

    let mut counts = vec![0u64; values.len()];
    let mut stray = BTreeMap::new();
    let mut spectrum_ok = true;
    for (i, tr) in traces.iter().enumerate() {
        let slot = tr
            .is_integer()
            .then(|| values.iter().position(|z| *z == tr.to_integer()))
            .flatten();
        match slot {
            Some(t) => {
                counts[t] += 1;
                if t == 0 && !g.element(i).is_identity() {
                    spectrum_ok = false;
                }
            }
            None => {
                spectrum_ok = false;
                *stray.entry(tr.clone()).or_insert(0) += 1;
            }
        }
    }

    let order = BigRational::from_integer(g.order().into());
    let power_sums: Vec<BigRational> = (0..=a)
        .map(|s| traces.iter().map(|tr| Pow::pow(tr, s as u32)).fold(BigRational::zero(), |x, y| x + y))
        .collect();
    let fact1_ok = power_sums
        .iter()
        .all(|sum| sum.is_integer() && (sum / &order).is_integer());

    Ok(TraceReport {
        stats: TraceStats { n, p, a, values, counts },
        spectrum_ok,
        fact1_ok,
        power_sums,
        stray,
    })
}

/// `(1/|G|) Σ_g tr(g²)`.
pub fn frobenius_schur_indicator<S: Scalar>(g: &GroupClosure<S>) -> Result<BigRational> {
    let elems = g.to_vec();
    let squares = Execution::default().map(&elems, |x| x.mul(x).trace().to_rational());
    let mut total = BigRational::zero();
    for sq in squares {
        total += sq.ok_or(Error::NonRationalTrace)?;
    }
    Ok(total / BigRational::from_integer(g.order().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{CycloElem, CycloField};
    use crate::matgroup::closure::closure;
    use crate::matgroup::matrix::{CycloMatrix, RatMatrix};

    fn q8() -> Vec<CycloMatrix> {
        let f = CycloField::new(4).unwrap();
        let c = |n| CycloElem::from_int(&f, n);
        let i = CycloElem::zeta_pow(&f, 1);
        let g = CycloMatrix::from_rows(vec![vec![c(0), c(-1)], vec![c(1), c(0)]]).unwrap();
        let h = CycloMatrix::from_rows(vec![vec![i.clone(), c(0)], vec![c(0), -&i]]).unwrap();
        vec![g, h]
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn q8_statistics() {
        let g = closure(&q8(), 100).unwrap();
        assert_eq!(g.order(), 8);
        let r = trace_stats(&g, 2).unwrap();
        assert_eq!(r.stats.values, vec![int(2), int(0), int(-2)]);
        assert_eq!(r.stats.counts, vec![1, 6, 1]);
        assert!(r.spectrum_ok && r.fact1_ok);
        assert_eq!(r.power_sums[1], BigRational::zero());
        assert_eq!(r.power_sums[2], BigRational::from_integer(8.into()));
        assert_eq!(frobenius_schur_indicator(&g).unwrap(), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn trivial_group() {
        for n in 1..4 {
            let id = RatMatrix::identity(n, &BigRational::zero());
            let g = closure(&[id], 10).unwrap();
            for p in [2, 3, 5] {
                let r = trace_stats(&g, p).unwrap();
                assert_eq!(r.stats.counts[0], 1);
                assert_eq!(r.stats.counts.iter().sum::<u64>(), 1);
                assert!(r.spectrum_ok && r.fact1_ok);
            }
            assert_eq!(frobenius_schur_indicator(&g).unwrap(), BigRational::from_integer(n.into()));
        }
    }

    #[test]
    fn cyclic_three_from_companion() {
        // companion matrix of x² + x + 1
        let c = RatMatrix::from_int_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
        let g = closure(&[c], 10).unwrap();
        let r = trace_stats(&g, 3).unwrap();
        assert_eq!(r.stats.values, vec![int(2), int(-1)]);
        assert_eq!(r.stats.counts, vec![1, 2]);
        assert!(r.spectrum_ok && r.fact1_ok);
    }

    #[test]
    fn rotation_indicator_is_zero() {
        let r = RatMatrix::from_int_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        let g = closure(&[r], 10).unwrap();
        assert_eq!(frobenius_schur_indicator(&g).unwrap(), BigRational::zero());
    }

    #[test]
    fn spectrum_violation_is_reported() {
        // order-3 rotation checked against p = 2: trace −1 is not in {2, 0, −2}
        let c = RatMatrix::from_int_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
        let g = closure(&[c], 10).unwrap();
        let r = trace_stats(&g, 2).unwrap();
        assert!(!r.spectrum_ok);
        assert_eq!(r.stray.values().sum::<u64>(), 2);
    }

    #[test]
    fn non_rational_trace_is_an_error() {
        let f = CycloField::new(4).unwrap();
        let i = CycloElem::zeta_pow(&f, 1);
        let one = CycloElem::one(&f);
        let m = CycloMatrix::from_rows(vec![vec![i, CycloElem::zero(&f)], vec![CycloElem::zero(&f), one]]).unwrap();
        let g = closure(&[m], 10).unwrap();
        assert_eq!(trace_stats(&g, 2).unwrap_err(), Error::NonRationalTrace);
    }
}
