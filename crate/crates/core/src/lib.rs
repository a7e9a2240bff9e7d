//! Discrete nabla fractional calculus.
//!
//! Left and right nabla fractional sums, Riemann and Caputo fractional
//! differences and their delta duals on unit-step grids; a harness that
//! evaluates both sides of the summation-by-parts formulas relating them;
//! and Euler–Lagrange residuals, gradient oracles and Newton solvers for
//! discrete fractional variational problems.
//!
//! All numerical code is generic over [`Scalar`], implemented for `f64` and
//! for exact rationals ([`Rational`]), so every identity can be checked with
//! a residual that is exactly zero.

pub mod cli;
pub mod error;
pub mod grid;
pub mod identities;
pub mod numerics;
pub mod operators;
pub mod variational;

pub use error::{Error, Result};
pub use grid::{inner_sum, Grid, GridFn};
pub use numerics::{Backend, FracOrder, Rational, Scalar};
