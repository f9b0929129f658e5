//! Diagonal gates over ℤ_{2^k}, their conjugation action on Pauli operators,
//! and stabilizer tracking through Clifford and diagonal layers.

pub mod cli;
pub mod diagonal;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod ring;
pub mod symplectic;
pub mod tracker;
pub mod verify;

pub use error::{Error, Result};
pub use diagonal::{conjugate, synthesize, DiagonalGate, SymForm, Synthesis};
pub use pauli::PauliLabel;
