//! Curves on the one-holed torus.
//!
//! Free homotopy classes are cyclic words in `a, A, b, B`. The crate
//! enumerates mapping class group orbits of such classes by word length,
//! computes self-intersection numbers, checks Euler-totient counting
//! formulas, and measures geodesic length spectra under explicit hyperbolic
//! metrics built from pentagon parameters.

pub mod error;
pub mod experiments;
pub mod export;
pub mod geometry;
pub mod intersect;
pub mod orbits;
pub mod words;

pub use error::{Error, Result};
pub use words::{ClassKey, CyclicWord, Letter};
