//! Dissipative dynamics of a single qubit.
//!
//! The crate covers the five equivalent ways of writing a completely positive
//! dissipator `D[ρ]` for a two-level system with hermitian Lindblad operators,
//! the constructive maps between them, two independent complete-positivity
//! deciders, the Bloch-vector master equation and the classification of its
//! `t → ∞` limit.
//!
//! | representation | type |
//! |---|---|
//! | hermitian Lindblad operators | [`FormA`] |
//! | rates and projector axes | [`FormB`] |
//! | plane-projector matrix `L` | [`DissipationMatrix`] |
//! | Gram vectors `q_α` | [`GramFactor`] |
//! | six-parameter packing of `L` | [`FormE`] |
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the `lindblad2` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod cpcheck;
pub mod dynamics;
mod error;
pub mod forms;
pub mod linalg;
pub mod qubit;
pub mod tol;

pub use error::{Error, Result};
pub use forms::{
    DissipationMatrix, Dissipator, DissipatorForm, FormA, FormB, FormE, GksMatrix, GramFactor,
    SymmetricM, TraceSplit,
};
pub use linalg::{Mat3, Vec3};
pub use qubit::{ComplexMatrix2, DensityState, Hamiltonian, Projector2, UnitVector3};
