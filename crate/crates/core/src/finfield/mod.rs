//! Finite general linear and isometry groups, and reduction modulo `p`.

pub mod gl;
pub mod isometry;
pub mod reduce;
pub mod special;

pub use gl::{gl_order, gl_order_bruteforce, gl_order_bruteforce_with, gl_order_valuation, prime_power, GlOrder};
pub use isometry::{
    isometry_order, lemma510_two_part_check, real_case_o, real_case_two_part_check, two_adic_checks, IsometryKind,
    TwoPartReport,
};
pub use reduce::{reduce_matrix, reduce_mod_p, reduce_mod_p_with, reduce_rational, FpMatrix, ReductionReport};
pub use special::{
    ell_two_counterexample, find_special_prime, is_special_prime, lemma51_check, Lemma51Report,
    SPECIAL_PRIME_SEARCH_BOUND,
};
