//! Core algorithms for coset complexes over matrix groups of truncated
//! polynomial rings.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! the command line or wall-clock time lives in the `hdx` companion crate.
//!
//! Module map:
//!
//! * [`polyring`]: arithmetic in `F_p[t]/<t^s>`.
//! * [`matgroup`]: matrix and abstract finite groups, cosets, normal
//!   closures, quotients and congruence kernels.
//! * [`rootsys`]: the `A_n` root system, Weyl chambers and chamber propagation.
//! * [`relations`]: Steinberg-type relations indexed by pairs of roots.
//! * [`complex`]: partite simplicial complexes, coset complexes, links,
//!   weights and quotients.
//! * [`ko`]: the cyclically rotated unitriangular subgroups `K_i` and the
//!   coset complexes built from them.
//! * [`cohomology`]: non-Abelian cochains in degrees 0 and 1, H¹ decisions and
//!   expansion constants.
//! * [`spectral`]: weighted random walks on 1-skeletons and link spectra.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cohomology;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod ko;
pub mod matgroup;
pub mod polyring;
pub mod relations;
pub mod rootsys;
pub mod spectral;

pub use error::{Error, Result};

/// Exact rational numbers used for weights, norms and expansion ratios.
pub type Rational = num_rational::Ratio<i128>;
