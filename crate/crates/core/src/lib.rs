//! Exact decision procedures for `cos(t θ) = c` over algebraic numbers.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod algebraic;
pub mod arith;
pub mod continuize;
pub mod engine;
pub mod error;
pub mod field;
pub mod lattice;
pub mod lrs;
pub mod power;

pub use error::{Error, Precision, Result};
