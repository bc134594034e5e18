use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::require_prime;
use crate::exec::Execution;
use crate::matgroup::{GroupClosure, RatMatrix};

/// Square matrix over `F_p`, entries in `[0, p)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    dim: usize,
    p: u64,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn new(dim: usize, p: u64, entries: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::invalid(format!("expected {} entries, got {}", dim * dim, entries.len())));
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(Self { dim, p, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries.iter().enumerate().all(|(k, &x)| x == u64::from(k / n == k % n))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!((self.dim, self.p), (rhs.dim, rhs.p), "incompatible matrices");
        let (n, p) = (self.dim, self.p as u128);
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let s: u128 = (0..n).map(|l| self.get(i, l) as u128 * rhs.get(l, j) as u128 % p).sum();
                (s % p) as u64
            })
            .collect();
        Self { dim: n, p: self.p, entries }
    }

    pub fn determinant(&self) -> u64 {
        let (n, p) = (self.dim, self.p as u128);
        let mut a: Vec<u128> = self.entries.iter().map(|&x| x as u128).collect();
        let mut det: u128 = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = (p - det) % p;
            }
            let pv = a[col * n + col];
            det = det * pv % p;
            let inv = inverse_mod(pv as u64, self.p) as u128;
            for r in col + 1..n {
                let factor = a[r * n + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    a[r * n + c] = (a[r * n + c] + p - factor * a[col * n + c] % p) % p;
                }
            }
        }
        det as u64
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Image of `r` in `F_p`; the denominator must be prime to `p`.
pub fn reduce_rational(r: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den == BigInt::from(0) {
        return Err(Error::invalid(format!("denominator of {r} is divisible by {p}")));
    }
    let num = r.numer().mod_floor(&pb).to_u64().expect("reduced below p");
    let inv = inverse_mod(den.to_u64().expect("reduced below p"), p);
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

pub fn reduce_matrix(m: &RatMatrix, p: u64) -> Result<FpMatrix> {
    let entries = m.entries().iter().map(|x| reduce_rational(x, p)).collect::<Result<Vec<_>>>()?;
    FpMatrix::new(m.dim(), p, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub p: u64,
    pub group_order: usize,
    pub image_order: usize,
    pub injective: bool,
    /// No non-identity element of order prime to `p` reduces to the
    /// identity, so every subgroup of order prime to `p` embeds.
    pub injective_on_coprime_order: bool,
    /// Element order → number of kernel elements of that order.
    pub kernel_element_orders: BTreeMap<u64, usize>,
    /// Every kernel element has `p`-power order.
    pub kernel_is_p_torsion: bool,
}

/// Reduces every element of `g` modulo `p`.
///
/// The image is returned in the element order of `g`, without duplicates.
pub fn reduce_mod_p(g: &GroupClosure<BigRational>, p: u64) -> Result<(IndexSet<FpMatrix>, ReductionReport)> {
    reduce_mod_p_with(g, p, Execution::default())
}

pub fn reduce_mod_p_with(
    g: &GroupClosure<BigRational>,
    p: u64,
    exec: Execution,
) -> Result<(IndexSet<FpMatrix>, ReductionReport)> {
    require_prime(p)?;
    let elems = g.to_vec();
    let reduced = exec
        .map(&elems, |m| reduce_matrix(m, p))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let orders = g.element_orders(exec);

    let image: IndexSet<FpMatrix> = reduced.iter().cloned().collect();

    let mut kernel_element_orders = BTreeMap::new();
    for (red, &ord) in reduced.iter().zip(&orders) {
        if red.is_identity() {
            *kernel_element_orders.entry(ord).or_insert(0) += 1;
        }
    }
    let kernel_is_p_torsion = kernel_element_orders.keys().all(|&o| is_power_of(o, p));
    let injective_on_coprime_order = kernel_element_orders.keys().all(|&o| o == 1 || o % p == 0);

    let report = ReductionReport {
        p,
        group_order: g.order(),
        image_order: image.len(),
        injective: image.len() == g.order(),
        injective_on_coprime_order,
        kernel_element_orders,
        kernel_is_p_torsion,
    };
    Ok((image, report))
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}
