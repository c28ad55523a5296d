//! Exact SL(2,C) central functions of free groups of rank 1, 2, and 3,
//! expressed as polynomials in trace coordinates.
//!
//! Two independent engines produce the same functions and cross-validate
//! each other:
//!
//! * [`recurrence`] — the combinatorial engine: loop-multiplication
//!   recurrences on trace diagrams, exact rationals end to end.
//! * [`tensorial`] — the tensorial engine: symmetric-power matrix actions,
//!   Clebsch-Gordan injections, central-tensor contraction, and exact
//!   interpolation back to trace coordinates.
//!
//! Everything is exact; floating point appears only inside
//! [`tracecoords::goldman_slice`].

pub mod exactmath;
pub mod par;
pub mod recurrence;
pub mod reptheory;
pub mod tensorial;
pub mod tracecoords;

pub use exactmath::{Polynomial, RadExact, Rat, VarAlphabet};
pub use recurrence::{BarbellLabel, Engine, Rank3Label};
pub use tracecoords::{SL2Rational, TraceTuple};
