//! Exact multivariate partition functions of non-intersecting Up-Right
//! lattice paths, symmetry verification, and the lozenge-tiling view.
//!
//! The weight of a path system is `∏ 1/(x_i + y_j)` over every visited cell
//! `(i, j)`; the partition function `F_{A,B}(x | y)` sums this over all
//! vertex-disjoint systems from `A` to `B`.

pub mod algebra;
pub mod error;
pub mod field;
pub mod lattice;
pub mod partition;
pub mod regions;
pub mod render;
pub mod reports;
pub mod suites;
pub mod symmetry;

pub use algebra::{ratfn_equal, Family, Poly, RatFn, UniPoly, VarId};
pub use error::{Error, Result};
