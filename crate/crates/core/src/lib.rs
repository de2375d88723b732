//! Exact linear data of Bridgeland stability conditions on products of
//! smooth projective curves.
//!
//! Everything here is exact: scalars are Gaussian rationals over
//! arbitrary-precision integers, lattices are subset-indexed free abelian
//! groups, and every normal form is computed over the integers. The crate is
//! `no_std` and only needs `alloc`.
//!
//! * [`cohomology`]: the numerical cohomology ring of `C_1 x ... x C_n`
//!   (Chern characters, Todd class, integration, pushforward, Euler form).
//! * [`lattice`]: the lattices `Λ_n`, the class maps `v_n`, integer actions,
//!   invariant sublattices, kernel quotients and image lattices.
//! * [`charge`]: central charges `Z_n^{B,ω}`, the `a, b, c, d` functionals,
//!   weak and product charges, phases and linear-data comparison.
//! * [`support`]: support-property checks and the gluing projections.
//! * [`descent`]: symmetric-group actions for Hilbert schemes of points and
//!   the descended invariant data.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charge;
pub mod cohomology;
pub mod descent;
mod error;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod space;
pub mod support;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational};
pub use space::{Permutation, ProductSpace, Subset};
