//! Coefficient extraction in `K[t_1..t_k] / (P_{b_1}(t_1), …, P_{b_k}(t_k))`
//! and the Vandermonde-type determinant identity behind it.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::matrix::det_poly;
use super::poly::{Monomial, Poly};
use super::ratfn::RatFn;
use super::unipoly::{LinearModulus, UniPoly};
use super::var::VarId;
use crate::error::{Error, Result};

/// `∏_{1≤i<j≤k} (t_j − t_i)`.
pub fn vandermonde(k: u32) -> Poly {
    let mut acc = Poly::one();
    for j in 1..=k {
        for i in 1..j {
            acc = &acc * &Poly::diff_of(VarId::t(j), VarId::t(i));
        }
    }
    acc
}

/// `φ_i(t_j) = (x_{a+i+1} − t_j)…(x_{a+k} − t_j)`, rows `i`, columns `j`.
pub fn phi_matrix(k: u32, a: u32) -> Vec<Vec<Poly>> {
    (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    ((a + i + 1)..=(a + k)).fold(Poly::one(), |acc, s| &acc * &Poly::diff_of(VarId::x(s), VarId::t(j)))
                })
                .collect()
        })
        .collect()
}

/// Whether `det(φ_i(t_j)) = ∏_{i<j} (t_j − t_i)` holds as a polynomial identity.
pub fn vandermonde_check(k: u32, a: u32) -> Result<bool> {
    if k > 6 {
        return Err(Error::Capacity { what: "Vandermonde check size", size: k as usize, bound: 6 });
    }
    Ok(det_poly(&phi_matrix(k, a))? == vandermonde(k))
}

/// `∏_{s=1}^{m} (x_s − t)^{-1}` as a residue modulo `P_b(t)`.
pub fn inverse_product_residue(m: u32, b: u32, t: VarId) -> Result<UniPoly> {
    let modulus = LinearModulus::y_prefix(t, b);
    let mut acc = UniPoly::constant(t, RatFn::one());
    for s in 1..=m {
        let inv = modulus.inverse(&UniPoly::from_poly(t, &Poly::diff_of(VarId::x(s), t)))?;
        acc = modulus.mul(&acc, &inv)?;
    }
    Ok(acc)
}

/// `[t_1^{b_1−1} … t_k^{b_k−1}]` of `∏_{i<j}(t_j − t_i) · ∏_{j}∏_{s≤m} 1/(x_s − t_j)`,
/// reading every factor in `t_j` as a residue modulo `P_{b_j}(t_j)`.
///
/// Any `b_j = 0` gives zero: there is no `t_j^{-1}` coefficient.
pub fn series_coeff_multi(exponents: &[u32], m: u32) -> Result<RatFn> {
    let k = exponents.len() as u32;
    if exponents.contains(&0) {
        return Ok(RatFn::zero());
    }
    // column[j][e] = [t^{b_j - 1}] (t^e · R_{b_j}(t) mod P_{b_j}(t))
    let t = VarId::t(1);
    let mut by_b: HashMap<u32, Vec<RatFn>> = HashMap::new();
    for &b in exponents {
        if by_b.contains_key(&b) {
            continue;
        }
        let modulus = LinearModulus::y_prefix(t, b);
        let mut cur = inverse_product_residue(m, b, t)?;
        let shift = UniPoly::from_poly(t, &Poly::var(t));
        let mut col = Vec::with_capacity(k as usize);
        for e in 0..k {
            if e > 0 {
                cur = modulus.mul(&cur, &shift)?;
            }
            col.push(cur.coeff(b as usize - 1));
        }
        by_b.insert(b, col);
    }
    let mut terms: Vec<RatFn> = Vec::new();
    for (mono, c) in vandermonde(k).terms() {
        let mut term = RatFn::from_int(c.clone());
        for (j, &b) in exponents.iter().enumerate() {
            let e = mono.exponent(VarId::t(j as u32 + 1)) as usize;
            term = &term * &by_b[&b][e];
            if term.is_zero() {
                break;
            }
        }
        terms.push(term);
    }
    Ok(RatFn::sum(terms.iter()).reduce())
}

/// Truncated power series of `1/(x − t) = Σ_r t^r / x^{r+1}`, coefficients
/// `0..order`.
pub fn inverse_linear_series(x: VarId, order: usize) -> Vec<RatFn> {
    (0..order).map(|r| RatFn::recip_poly(&Poly::term(BigInt::from(1), Monomial::var_pow(x, r as u32 + 1)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_small_cases() {
        assert!(vandermonde(1).is_one());
        assert_eq!(vandermonde(2), Poly::diff_of(VarId::t(2), VarId::t(1)));
        let det2 = det_poly(&phi_matrix(2, 0)).unwrap();
        assert_eq!(det2, Poly::diff_of(VarId::t(2), VarId::t(1)));
        assert!(vandermonde_check(4, 0).unwrap());
    }

    #[test]
    fn zero_exponent_gives_zero() {
        assert!(series_coeff_multi(&[0, 2], 3).unwrap().is_zero());
    }

    #[test]
    fn single_cell_residue() {
        let f = series_coeff_multi(&[1], 1).unwrap();
        assert_eq!(f, RatFn::recip_poly(&Poly::sum_of(VarId::x(1), VarId::y(1))));
    }

    #[test]
    fn geometric_series_constant_term() {
        let s = inverse_linear_series(VarId::x(1), 3);
        assert_eq!(s[0], RatFn::recip_poly(&Poly::var(VarId::x(1))));
        let x2 = &Poly::var(VarId::x(1)) * &Poly::var(VarId::x(1));
        assert_eq!(s[1], RatFn::recip_poly(&x2));
    }
}
