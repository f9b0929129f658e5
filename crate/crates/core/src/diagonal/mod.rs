//! Diagonal gates `τ_R^(k)` described by symmetric matrices over ℤ_{2^k}.

mod conjugation;
mod form;
mod synthesis;
mod table;

pub use conjugation::{
    conjugate, eta, full_recursion_trace, phi, q_from_recursion_consistency, q_function, r_tilde,
    ConjugationResult, RecursionTrace, TraceStep,
};
pub use form::{
    diagonal_entries, group_add, group_order, group_order_log2, tensor, DiagonalGate, SymForm,
};
pub use synthesis::{qubits_for_len, synthesize, Synthesis};
pub use table::{ccz_companion, lookup, standard_gate_table, NamedGate};
