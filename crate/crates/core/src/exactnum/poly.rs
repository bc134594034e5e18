use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product with every term of degree `> max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree.saturating_add(1));
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division, `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading().expect("non-zero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and `s·self ≡ g (mod modulus)`.
    pub fn ext_gcd(&self, modulus: &Self) -> Result<(Self, Self)> {
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus)?.1);
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lead = r0.leading().cloned().ok_or(Error::DivisionByZero)?;
        let inv = lead.recip();
        Ok((r0.scale(&inv), s0.scale(&inv)))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Least common multiple of the coefficient denominators (1 for zero).
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "x")
    }
}

impl RatPolynomial {
    /// Writes the polynomial using `var` as the indeterminate, highest degree first.
    pub fn fmt_in(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{i}")?,
            }
        }
        Ok(())
    }

    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        self.fmt_in(&mut s, var).expect("string write");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(RatPolynomial::from_ints([1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(RatPolynomial::from_ints([0, 0]).degree(), None);
    }

    #[test]
    fn division_reconstructs() {
        let a = RatPolynomial::from_ints([-1, 0, 0, 0, 1]);
        let b = RatPolynomial::from_ints([1, 1]);
        let (qt, r) = a.div_rem(&b).unwrap();
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.is_zero());
        assert!(a.div_rem(&RatPolynomial::zero()).is_err());
    }

    #[test]
    fn inverse_mod_irreducible() {
        // (x + 2) inverse modulo x^2 + 1 is (2 - x)/5
        let m = RatPolynomial::from_ints([1, 0, 1]);
        let a = RatPolynomial::from_ints([2, 1]);
        let (g, s) = a.ext_gcd(&m).unwrap();
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(s, RatPolynomial::new(vec![q(2, 5), q(-1, 5)]));
    }

    #[test]
    fn truncation_and_render() {
        let a = RatPolynomial::new(vec![q(0, 1), q(1, 2), q(1, 3)]);
        let sq = a.mul_truncated(&a, 3);
        assert_eq!(sq, RatPolynomial::new(vec![q(0, 1), q(0, 1), q(1, 4), q(1, 3)]));
        assert_eq!(a.render("z"), "1/3*z^2 + 1/2*z");
        assert_eq!(a.denominator(), BigInt::from(6));
        assert_eq!(RatPolynomial::from_ints([-1, 0, 1]).render("x"), "x^2 - 1");
    }
}
