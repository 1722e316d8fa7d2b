//! Exact algebra: integer polynomials, rational functions, residues modulo
//! `P_k(t)` and determinants.

pub mod matrix;
pub mod modp;
pub mod poly;
pub mod ratfn;
pub mod series;
pub mod unipoly;
pub mod var;

pub use matrix::{det_bigint, det_cofactor, det_poly, det_ratfn, det_ratfn_bounded, DEFAULT_DET_BOUND};
pub use poly::{Monomial, Poly};
pub use ratfn::{ratfn_equal, RatFn};
pub use series::{series_coeff_multi, vandermonde, vandermonde_check};
pub use unipoly::{coeff_t, mod_inverse_linear, LinearModulus, UniPoly};
pub use var::{Family, VarId};
