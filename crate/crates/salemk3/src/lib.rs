//! Exact-arithmetic toolkit for quadratic form invariants over `Q`, number
//! field trace forms, Salem polynomial certificates, and executable existence
//! tests for K3 surfaces and hyperkahler manifolds with real or Salem
//! multiplication on their transcendental Hodge structure.
//!
//! Everything that feeds a verdict is computed in exact rational arithmetic:
//! square classes, Hilbert symbols, Hasse invariants, Sturm-sequence root
//! counts, trace-form Gram matrices. Floating point appears only in the
//! `periods` module, and every float check there is paired with an exact
//! counterpart.

pub mod arith;
pub mod classify;
pub mod numfield;
pub mod periods;
pub mod qforms;
pub mod salem;
pub mod selftest;
pub mod transfer;

pub use arith::{Place, Rat, SquareClass};
