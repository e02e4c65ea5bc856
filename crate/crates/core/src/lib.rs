//! Exact census toolkit for condition numbers of rational inputs.
//!
//! The crate enumerates rational and Gauss-rational inputs of bounded
//! projective height, decides conditioning membership exactly, and evaluates
//! the matching closed-form tail bounds with rigorous enclosures. It also
//! certifies Newton convergence discs and counts the rational approximate
//! zeros they contain.

pub mod constants;
pub mod gauss;
pub mod interval;
pub mod monomial;
pub mod nt;

pub use interval::{BoundValue, Rat};
