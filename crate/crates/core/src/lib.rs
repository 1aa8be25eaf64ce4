//! Exact combinatorics for the GL(2) spherical Hecke algebra.
//!
//! The crate is organized bottom-up:
//!
//! - [`partition`] — partitions in a box: counting, enumeration, Gaussian
//!   (q-binomial) coefficients, and the explicit weight-step bijection
//!   between bounded partition classes.
//! - [`plethysm`] — multiplicities N(j,k,n) of Sym^{jk-2n}·det^n inside
//!   Sym^j(Sym^k) of the standard 2-dimensional representation, by several
//!   independent routes (generic differences, closed forms for k = 3 and
//!   k = 4, and a brute-force character oracle).
//! - [`qlaurent`] — the coefficient ring Z[q^{1/2}, q^{-1/2}].
//! - [`hecke`] — the spherical Hecke algebra of GL(2) in the basis
//!   1_m * 1_{i,i}, with convolution, the Satake transform and its inverse,
//!   and conversion to the Cartan (double coset) basis.
//! - [`basic`] — truncated basic functions for Sym^3 and Sym^4, their Hecke
//!   traces, and the Euler-factor power series they must reproduce.
//! - [`verify`] — named verification suites over parameter grids, reported
//!   with case counts and failures.
//!
//! All arithmetic is exact: big integers for counts, `Z[q^{±1/2}]` for Hecke
//! coefficients, big rationals for evaluation. Nothing is floating point.

pub mod basic;
pub mod hecke;
pub mod partition;
pub mod plethysm;
pub mod qlaurent;
pub mod verify;
