//! Spectral toolkit for bilinear Fourier multipliers on periodic lattices.
//!
//! Everything here works on a discrete periodic model of `R^n` (n = 1 or 2):
//! band-limited functions sampled on a uniform grid, with forward/inverse
//! transforms normalized so that discrete sums approximate the continuum
//! integrals. On top of that sit the linear operators (Bessel potentials,
//! Fourier multipliers, Riesz transforms, maximal functions), the norm zoo
//! (Lebesgue, mixed, Sobolev, Besov, BMO, Hardy, Carleson), dyadic window
//! families and bilinear symbols, the bilinear multiplier operator itself,
//! and the constructive decompositions used to probe its boundedness.
//!
//! The crate is `no_std` + `alloc`; all operations are pure functions over
//! immutable inputs and safe to call concurrently.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bilinear;
pub mod calculus;
pub mod decomp;
pub mod error;
pub mod fft;
pub mod lattice;
pub mod norms;
pub mod rng;
pub mod symbols;

pub use error::{Error, Result};
pub use lattice::{Field, Lattice, Spectrum};

/// Complex sample type used throughout.
pub type C64 = num_complex::Complex<f64>;
