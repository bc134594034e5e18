//! Arithmetic in Q(ζ_k) as Q[x] modulo the k-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RatPolynomial;
use super::primes::totient;
use crate::error::{Error, Result};

/// The k-th cyclotomic polynomial, ascending integer coefficients.
///
/// Computed as `x^k − 1` divided exactly by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(k: u64) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::invalid("cyclotomic conductor must be positive"));
    }
    let mut memo = HashMap::new();
    let poly = cyclotomic_rec(k, &mut memo);
    Ok(poly
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "cyclotomic coefficient {c} not integral");
            c.to_integer()
        })
        .collect())
}

fn cyclotomic_rec(k: u64, memo: &mut HashMap<u64, RatPolynomial>) -> RatPolynomial {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut x_k_minus_1 = vec![BigRational::zero(); k as usize + 1];
    x_k_minus_1[0] = -BigRational::one();
    x_k_minus_1[k as usize] = BigRational::one();
    let mut result = RatPolynomial::new(x_k_minus_1);
    for d in (1..k).filter(|d| k % d == 0) {
        let phi_d = cyclotomic_rec(d, memo);
        let (q, r) = result.div_rem(&phi_d).expect("non-zero divisor");
        assert!(r.is_zero(), "Φ_{d} does not divide x^{k} - 1 exactly");
        result = q;
    }
    memo.insert(k, result.clone());
    result
}

/// Q(ζ_k) for a fixed conductor `k`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u64,
    degree: usize,
    modulus: Vec<BigInt>,
    modulus_poly: RatPolynomial,
}

impl CycloField {
    pub fn new(k: u64) -> Result<Arc<Self>> {
        let modulus = cyclotomic_polynomial(k)?;
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree as u64, totient(k));
        let modulus_poly = RatPolynomial::new(
            modulus.iter().cloned().map(BigRational::from_integer).collect(),
        );
        Ok(Arc::new(Self { conductor: k, degree, modulus, modulus_poly }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(k)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cyclotomic polynomial, ascending, monic.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, p: &RatPolynomial) -> Vec<BigRational> {
        let r = if p.degree().is_some_and(|d| d >= self.degree) {
            p.div_rem(&self.modulus_poly).expect("monic modulus").1
        } else {
            p.clone()
        };
        (0..self.degree).map(|i| r.coeff(i)).collect()
    }
}

/// An element `Σ c_j ζ^j`, `0 <= j < φ(k)`.
#[derive(Debug, Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

impl Hash for CycloElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloElem {
    /// Builds from coefficients of `1, ζ, ζ², …`; longer inputs are reduced.
    pub fn new(field: &Arc<CycloField>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = field.reduce(&RatPolynomial::new(coeffs));
        Self { field: Arc::clone(field), coeffs }
    }

    pub fn from_rational(field: &Arc<CycloField>, r: BigRational) -> Self {
        Self::new(field, vec![r])
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `ζ^j` for any integer exponent.
    pub fn zeta_pow(field: &Arc<CycloField>, j: i64) -> Self {
        let e = j.rem_euclid(field.conductor as i64) as usize;
        Self::new(field, RatPolynomial::monomial(BigRational::one(), e).coeffs().to_vec())
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if every `ζ^j` coefficient with `j >= 1` vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn as_poly(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.clone())
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "mixing elements of Q(ζ_{}) and Q(ζ_{})",
            self.field.conductor, other.field.conductor
        );
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s) = self.as_poly().ext_gcd(&self.field.modulus_poly)?;
        if g != RatPolynomial::one() {
            return Err(Error::Internal("cyclotomic modulus is not irreducible".into()));
        }
        Ok(Self::new(&self.field, s.coeffs().to_vec()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the automorphism `ζ ↦ ζ^j`; `j` must be coprime to `k`.
    pub fn galois(&self, j: u64) -> Self {
        let k = self.field.conductor;
        debug_assert_eq!(j.gcd(&k), 1);
        let mut out = vec![BigRational::zero(); k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i as u64 * j % k) as usize] += c;
        }
        Self::new(&self.field, out)
    }

    /// Trace from Q(ζ_k) down to Q: the sum of all Galois conjugates.
    pub fn trace_to_q(&self) -> BigRational {
        let k = self.field.conductor;
        let total = (1..=k)
            .filter(|j| j.gcd(&k) == 1)
            .map(|j| self.galois(j))
            .fold(Self::zero(&self.field), |acc, x| &acc + &x);
        total
            .to_rational()
            .expect("sum over the Galois group is fixed by it")
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycloElem { field: Arc::clone(&self.field), coeffs }
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycloElem { field: Arc::clone(&self.field), coeffs }
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.check_same(rhs);
        let prod = self.as_poly().mul(&rhs.as_poly());
        CycloElem { field: Arc::clone(&self.field), coeffs: self.field.reduce(&prod) }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly().render("ζ"))
    }
}
