//! Exact computations on finite-dimensional Jordan superalgebras and the
//! degeneration order on their algebraic varieties.

pub mod scalars;
pub mod superalgebra;
pub mod invariants;
pub mod grassmann;
pub mod catalog;
pub mod deformation;
pub mod certify;
pub mod variety;
pub mod io;
