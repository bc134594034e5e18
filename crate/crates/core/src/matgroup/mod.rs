//! Exact matrix groups over `Q` and cyclotomic fields.

pub mod closure;
pub mod integralize;
pub mod matrix;
pub mod traces;
pub mod witness;

pub use closure::{closure, closure_with, GroupClosure, DEFAULT_CAP};
pub use integralize::{column_hnf, integralize, Integralization};
pub use matrix::{CycloMatrix, Matrix, RatMatrix, Scalar};
pub use traces::{
    frobenius_schur_indicator, rational_traces, trace_multiset, trace_stats, trace_stats_with, TraceReport,
    TraceStats,
};
pub use witness::{a_m_representation, root_lattice_matrix, wreath_order, wreath_witness};
