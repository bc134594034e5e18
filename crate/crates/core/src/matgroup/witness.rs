//! Integer matrix groups whose orders reach `M(n)_p`.
//!
//! For a prime `p <= n + 1`, put `m = p − 1` and `a = ⌊n/m⌋`. The group
//! generated by
//!
//! * block permutation matrices (one `m × m` identity per block row and
//!   block column), a copy of `S_a`, and
//! * block-diagonal images of `S_p` acting on the root lattice
//!   `A_m = {z ∈ Z^p : Σ z_i = 0}`,
//!
//! padded with an identity block up to size `n`, is the wreath product
//! `S_p ≀ S_a` of order `(p!)^a · a!`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use crate::error::{Error, Result};
use crate::exactnum::require_prime;

/// Matrix of the permutation `σ` of `{0, …, m}` acting on `A_m` in the
/// basis `b_j = e_j − e_{j+1}`.
///
/// Coordinates of a lattice vector `z` in that basis are its partial sums
/// `c_j = z_0 + … + z_j`.
pub fn root_lattice_matrix(perm: &[usize]) -> Result<RatMatrix> {
    let size = perm.len();
    if size < 2 {
        return Err(Error::invalid("permutation must act on at least two points"));
    }
    let mut seen = vec![false; size];
    for &x in perm {
        if x >= size || std::mem::replace(&mut seen[x], true) {
            return Err(Error::invalid(format!("{perm:?} is not a permutation")));
        }
    }
    let m = size - 1;
    let mut rows = vec![vec![BigRational::zero(); m]; m];
    for j in 0..m {
        // σ(b_j) = e_σ(j) − e_σ(j+1)
        let mut z = vec![0i64; size];
        z[perm[j]] += 1;
        z[perm[j + 1]] -= 1;
        let mut partial = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            partial += z[i];
            row[j] = BigRational::from_integer(partial.into());
        }
    }
    RatMatrix::from_rows(rows)
}

/// Images of the adjacent transpositions `(i, i+1)`, `0 <= i < m`, of
/// `S_{m+1}` acting on `A_m`.
pub fn a_m_representation(m: usize) -> Result<Vec<((usize, usize), RatMatrix)>> {
    if m == 0 {
        return Err(Error::invalid("A_m needs m >= 1"));
    }
    (0..m)
        .map(|i| {
            let mut perm: Vec<usize> = (0..=m).collect();
            perm.swap(i, i + 1);
            Ok(((i, i + 1), root_lattice_matrix(&perm)?))
        })
        .collect()
}

/// Permutation matrix swapping blocks `b` and `b + 1` of size `block`.
fn block_swap(n: usize, block: usize, b: usize) -> RatMatrix {
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        let j = if i >= b * block && i < (b + 1) * block {
            i + block
        } else if i >= (b + 1) * block && i < (b + 2) * block {
            i - block
        } else {
            i
        };
        row[j] = BigRational::one();
    }
    RatMatrix::from_rows(rows).expect("square by construction")
}

/// Generators of `S_p ≀ S_a` inside `GL_n(Z)`, `a = ⌊n/(p−1)⌋`.
///
/// The `A_{p−1}` generators are placed in the first diagonal block; block
/// swaps conjugate them into every other block.
pub fn wreath_witness(n: usize, p: u64) -> Result<Vec<RatMatrix>> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    require_prime(p)?;
    if p > n as u64 + 1 {
        return Err(Error::invalid(format!("witness needs p <= n + 1, got p = {p}, n = {n}")));
    }
    let m = p as usize - 1;
    let a = n / m;
    let mut gens: Vec<RatMatrix> = a_m_representation(m)?
        .into_iter()
        .map(|(_, g)| g.embed(n, 0))
        .collect();
    gens.extend((0..a.saturating_sub(1)).map(|b| block_swap(n, m, b)));
    Ok(gens)
}

/// `(p!)^a · a!` with `a = ⌊n/(p−1)⌋`.
pub fn wreath_order(n: usize, p: u64) -> BigUint {
    let a = n as u64 / (p - 1);
    let p_fact: BigUint = (1..=p).map(BigUint::from).product();
    let a_fact: BigUint = (1..=a).map(BigUint::from).product();
    num_traits::Pow::pow(p_fact, a) * a_fact
}
