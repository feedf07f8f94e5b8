//! Exact combinatorics of the q-deformed Gelfand-Tsetlin graph.
//!
//! Everything is computed in arbitrary-precision rational arithmetic at a
//! fixed rational parameter `0 < q < 1`. The crate provides:
//!
//! - [`exact`]: rational scalars, q-powers and Euler-product enclosures
//! - [`gt`]: signatures, interlacing, paths, tableaux, 3D volumes and the
//!   lozenge-tiling coordinate map
//! - [`schur`]: rational Schur functions, principal specializations and the
//!   q-weighted dimension `Dim_q`
//! - [`interp`]: factorial and q-interpolation Schur polynomials, binomial
//!   (Newton-type) expansions and the triangular interpolation solve
//! - [`measures`]: cotransition kernel, q-coherent systems, the boundary
//!   measures `E^nu` and their generating functions
//! - [`qtoeplitz`]: q-Toeplitz matrices, initial minors and the determinant
//!   identity for expansion coefficients
//! - [`sampling`]: exact top-down samplers for random paths / lozenge tilings
//! - [`svg`]: tiling renderer
//! - [`cli`]: the `qgt` command-line surface including the `verify` battery

pub mod cli;
pub mod exact;
pub mod gt;
pub mod interp;
pub mod measures;
pub mod qtoeplitz;
pub mod sampling;
pub mod schur;
pub mod svg;

mod error;

pub use error::Error;

/// Shorthand result type used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
