//! Exact combinatorics of blocks of category O over symmetrizable Kac-Moody
//! algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootdata`]: Cartan data, real roots, the invariant form, `rho`.
//! - [`blocks`]: integral root systems of a weight, the integral Weyl group
//!   as a Coxeter system, stabilizers, orbits, criticality and level.
//! - [`coxeter`]: abstract Coxeter systems, reduced words, Bruhat order.
//! - [`kl`]: Kazhdan-Lusztig polynomials and the character formulas built on
//!   them.
//! - [`zmod`]: the structure algebra of a block, graded lattices over it,
//!   translation functors, Bott-Samelson modules and their decomposition.
//! - [`cli`]: the `blocko` command line driver.
//!
//! All arithmetic is exact. Inner loops that are embarrassingly parallel run on
//! rayon when the `parallel` feature is enabled (the default).

pub mod blocks;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod kl;
pub mod linalg;
pub mod modp;
pub mod par;
pub mod rational;
pub mod rootdata;
pub mod zmod;

pub use error::{Error, Result};
pub use rational::Q;
