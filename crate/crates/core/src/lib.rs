//! Constructions with a ruler, a compass, and one fixed conic.
//!
//! The pipeline turns an expression over Gaussian rationals, closed under
//! field operations, conjugation, square roots and cube roots, into an
//! explicit program of ruler-and-compass steps plus intersections with a
//! single fixed non-degenerate, non-circular conic, then executes that
//! program at arbitrary precision and checks the result against a direct
//! evaluation of the expression.
//!
//! Module layout:
//! - [`numeric`]: fixed-point big reals, complex arithmetic, polynomial roots
//! - [`expr`]: the input language (parser, printer, evaluator)
//! - [`conic`]: conic classification, regular forms, intersections, similarity
//! - [`planner`]: the compiler from expressions to construction programs
//! - [`executor`]: the interpreter, legality auditor and verifier
//! - [`trace`]: the on-disk program format

pub mod conic;
pub mod executor;
pub mod expr;
pub mod numeric;
pub mod planner;
pub mod trace;

pub use numeric::{BigComplex, BigReal, Precision};
