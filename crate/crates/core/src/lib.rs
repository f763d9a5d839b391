//! Fuzzy logic in narrow sense with graded syntax, extended by many hedges
//! and many dual hedges.
//!
//! * [`mv`]: exact Łukasiewicz truth values and finite MV-chains.
//! * [`lang`]: formulas, theories, parsing and printing.
//! * [`hedge`]: piecewise-linear hedge truth functions and their validation.
//! * [`deduction`]: logical axioms, graded proofs, saturation.
//! * [`semantics`]: finite structures, model checking, semantic degrees.

pub mod deduction;
pub mod hedge;
pub mod lang;
pub mod mv;
pub mod semantics;
