//! Exact integers, rationals, factorizations and cyclotomic numbers.

pub mod cyclo;
pub mod factor;
pub mod poly;
pub mod primes;

pub use cyclo::{cyclotomic_polynomial, CycloElem, CycloField};
pub use factor::{factorial_p_part, legendre, p_part, valuation, Factorization};
pub use poly::RatPolynomial;

/// Arbitrary-precision signed integer.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRat = num_rational::BigRational;

pub(crate) use factor::require_prime;
