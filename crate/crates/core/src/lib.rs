//! Exact analysis of multiband linear cellular automata over prime fields.
//!
//! A rule is a square matrix over the Laurent ring F_p[Z, Z^-1] acting on
//! bi-infinite sequences of F_p^r blocks by convolution. Everything is
//! computed exactly, with no floating point: fixed-point counts of all
//! iterates, the Newton-polygon invariants that govern their growth, the
//! dynamical zeta function classification, periodic-orbit counts, and a
//! finite-level realization of the correspondence between such automata and
//! twisted endomorphisms of vector groups, cross-checked against
//! independent linear-algebra oracles.

pub mod algebra;
pub mod arith;
pub mod automaton;
pub mod correspondence;
pub mod dynamics;
mod error;
pub mod finitefield;
pub mod oracle;

pub use error::{Error, Result};
