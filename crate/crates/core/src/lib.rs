//! Exact Khovanov-type link homology for arbitrary (nearly) Frobenius
//! algebras, and exhaustive desk-scale checks of rank-2 algebra structure.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod poly;
pub mod rank2;
pub mod ring;
pub mod snf;
pub mod verifier;

pub use error::{Error, Result};
pub use linalg::ExactMatrix;
pub use ring::{Integers, PrimeField, Rationals, Ring, RingSpec};
