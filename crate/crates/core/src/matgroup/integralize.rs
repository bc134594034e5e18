//! Conjugating a finite subgroup of `GL_n(Q)` into `GL_n(Z)`.
//!
//! The lattice `L = Σ_{g ∈ G} g·Z^n` is `G`-stable and contains `Z^n`, so
//! writing every `g` in a Z-basis `B` of `L` gives integer matrices
//! `B⁻¹ g B`. A basis is read off from the Hermite normal form of the
//! integer matrix whose columns are the columns of `d·g`, `d` a common
//! denominator.

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::closure::GroupClosure;
use super::matrix::RatMatrix;
use super::traces::trace_multiset;
use crate::error::{Error, Result};

/// Lower-triangular column Hermite normal form.
///
/// Returns `n` columns `h_0, …, h_{n−1}` spanning the same Z-module as the
/// input, where `h_j` vanishes above row `j`, `h_j[j] > 0`, and every entry
/// left of a pivot lies in `[0, pivot)`. Fails if the columns do not span a
/// full-rank lattice.
pub fn column_hnf(n: usize, columns: impl IntoIterator<Item = Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for mut v in columns {
        assert_eq!(v.len(), n, "column length");
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            match &mut basis[i] {
                slot @ None => {
                    if v[i].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    *slot = Some(v);
                    break;
                }
                Some(b) => {
                    let ExtendedGcd { gcd, x, y, .. } = b[i].extended_gcd(&v[i]);
                    let (bq, vq) = (&b[i] / &gcd, &v[i] / &gcd);
                    let new_b: Vec<BigInt> = b.iter().zip(&v).map(|(bj, vj)| &x * bj + &y * vj).collect();
                    let new_v: Vec<BigInt> = b.iter().zip(&v).map(|(bj, vj)| &bq * vj - &vq * bj).collect();
                    debug_assert!(new_v[i].is_zero());
                    *b = new_b;
                    if b[i].is_negative() {
                        b.iter_mut().for_each(|x| *x = -&*x);
                    }
                    v = new_v;
                }
            }
        }
        reduce_below_pivots(&mut basis);
    }
    basis
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::Internal(format!("lattice has no pivot in row {i}"))))
        .collect()
}

fn reduce_below_pivots(basis: &mut [Option<Vec<BigInt>>]) {
    let n = basis.len();
    for i in 1..n {
        let Some(pivot_col) = basis[i].clone() else { continue };
        let pivot = &pivot_col[i];
        for col in basis[..i].iter_mut().flatten() {
            let q = col[i].div_floor(pivot);
            if q.is_zero() {
                continue;
            }
            for (r, c) in col.iter_mut().enumerate().skip(i) {
                *c -= &q * &pivot_col[r];
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Integralization {
    /// Columns form a Z-basis of `Σ g·Z^n`.
    pub basis_change: RatMatrix,
    /// `{B⁻¹ g B}`, in the same element order as the input group.
    pub group: GroupClosure<BigRational>,
}

pub fn integralize(g: &GroupClosure<BigRational>) -> Result<Integralization> {
    let n = g.dim();
    let denom = g
        .elements()
        .flat_map(|x| x.entries().iter())
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let d = BigRational::from_integer(denom.clone());

    let columns = g.elements().flat_map(|x| {
        let scaled: Vec<BigInt> = x.entries().iter().map(|e| (e * &d).to_integer()).collect();
        (0..n).map(move |j| (0..n).map(|i| scaled[i * n + j].clone()).collect::<Vec<_>>())
    });
    let hnf = column_hnf(n, columns)?;

    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::new(hnf[j][i].clone(), denom.clone())).collect())
        .collect();
    let basis_change = RatMatrix::from_rows(rows)?;
    let inverse = basis_change.inverse()?;
    let group = g.conjugated(&inverse, &basis_change)?;

    if let Some(bad) = group.elements().position(|x| !x.is_integral()) {
        return Err(Error::Internal(format!("conjugated element {bad} is not integral")));
    }
    if group.order() != g.order() {
        return Err(Error::Internal("conjugation changed the group order".into()));
    }
    if trace_multiset(&group)? != trace_multiset(g)? {
        return Err(Error::Internal("conjugation changed the trace multiset".into()));
    }
    Ok(Integralization { basis_change, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::closure::closure;
    use crate::matgroup::witness::wreath_witness;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        // columns (2, 0), (0, 3), (1, 1) span Z²
        let h = column_hnf(2, vec![ints(&[2, 0]), ints(&[0, 3]), ints(&[1, 1])]).unwrap();
        assert_eq!(h, vec![ints(&[1, 0]), ints(&[0, 1])]);
        // (2, 1), (0, 2): index 4 sublattice
        let h = column_hnf(2, vec![ints(&[2, 1]), ints(&[0, 2])]).unwrap();
        assert_eq!(h, vec![ints(&[2, 1]), ints(&[0, 2])]);
        let h = column_hnf(2, vec![ints(&[4, 6]), ints(&[6, 4])]).unwrap();
        // determinant is preserved up to sign: |16 − 36| = 20
        assert_eq!(&h[0][0] * &h[1][1], BigInt::from(20));
        assert!(column_hnf(2, vec![ints(&[1, 1]), ints(&[2, 2])]).is_err());
    }

    #[test]
    fn integral_witness_stays_integral() {
        let g = closure(&wreath_witness(2, 2).unwrap(), 100).unwrap();
        let r = integralize(&g).unwrap();
        assert_eq!(r.group.order(), 8);
        assert!(r.group.elements().all(RatMatrix::is_integral));
        assert!(r.basis_change.is_integral());
    }

    #[test]
    fn conjugated_rotation_is_integralized() {
        let rot = RatMatrix::from_int_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        let c = RatMatrix::from_rows(vec![
            vec![BigRational::one(), BigRational::new(1.into(), 2.into())],
            vec![BigRational::zero(), BigRational::one()],
        ])
        .unwrap();
        let conj = c.mul(&rot).mul(&c.inverse().unwrap());
        assert!(!conj.is_integral());
        let g = closure(&[conj], 10).unwrap();
        let r = integralize(&g).unwrap();
        assert_eq!(r.group.order(), 4);
        assert!(r.group.elements().all(RatMatrix::is_integral));
        let traces = trace_multiset(&r.group).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(traces.get(&two), Some(&1));
        assert_eq!(traces.get(&-two), Some(&1));
        assert_eq!(traces.get(&BigRational::zero()), Some(&2));
    }

    fn random_conjugator(seed: u64, n: usize) -> RatMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        loop {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let den = [1i64, 2, 3, 4][rng.gen_range(0..4)];
                            BigRational::new(rng.gen_range(-3i64..=3).into(), den.into())
                        })
                        .collect()
                })
                .collect();
            let c = RatMatrix::from_rows(rows).unwrap();
            if !Scalar::is_zero(&c.determinant()) {
                return c;
            }
        }
    }

    use crate::matgroup::matrix::Scalar;

    #[test]
    fn random_rational_conjugates_of_witnesses() {
        for (seed, (n, p)) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3), (4, 5)].into_iter().enumerate() {
            let gens = wreath_witness(n, p).unwrap();
            let c = random_conjugator(seed as u64 + 7, n);
            let ci = c.inverse().unwrap();
            let conj: Vec<RatMatrix> = gens.iter().map(|g| c.mul(g).mul(&ci)).collect();
            let g = closure(&conj, 10_000).unwrap();
            let r = integralize(&g).unwrap();
            assert_eq!(r.group.order(), g.order());
            assert!(r.group.elements().all(RatMatrix::is_integral), "n={n} p={p}");
            assert_eq!(trace_multiset(&r.group).unwrap(), trace_multiset(&g).unwrap());
            let b = &r.basis_change;
            let bi = b.inverse().unwrap();
            for (x, y) in g.elements().zip(r.group.elements()) {
                assert_eq!(&bi.mul(x).mul(b), y);
            }
        }
    }
}
