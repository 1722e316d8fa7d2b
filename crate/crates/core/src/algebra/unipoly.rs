//! Univariate polynomials in an auxiliary `t` variable with rational-function
//! coefficients, and residues modulo `P(t) = (t + r_1)…(t + r_k)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::ratfn::RatFn;
use super::var::{Family, VarId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    var: VarId,
    /// `coeffs[d]` is the coefficient of `var^d`; no trailing zeros.
    coeffs: Vec<RatFn>,
}

impl UniPoly {
    pub fn new(var: VarId, coeffs: Vec<RatFn>) -> Self {
        debug_assert_eq!(var.family, Family::T);
        let mut p = UniPoly { var, coeffs };
        p.trim();
        p
    }

    pub fn zero(var: VarId) -> Self {
        UniPoly::new(var, Vec::new())
    }

    pub fn constant(var: VarId, c: RatFn) -> Self {
        UniPoly::new(var, vec![c])
    }

    /// Reads a polynomial in `var` whose other variables become coefficients.
    pub fn from_poly(var: VarId, p: &Poly) -> Self {
        UniPoly::new(var, p.coefficients_in(var).into_iter().map(RatFn::from_poly).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFn::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `var^d`; zero beyond the degree.
    pub fn coeff(&self, d: usize) -> RatFn {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn scale(&self, c: &RatFn) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn map_coeffs<F: Fn(&RatFn) -> RatFn>(&self, f: F) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division. The divisor's leading coefficient must be invertible.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].recip()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFn::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = (&rem[top] * &lead_inv).reduce();
            if !c.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] = (&rem[shift + i] - &(&c * dc)).reduce();
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(RatFn::is_zero) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(self.var, quot), UniPoly::new(self.var, rem)))
    }

    /// Extended Euclid: `(g, s, u)` with `s·a + u·b = g`.
    pub fn ext_gcd(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
        let var = a.var;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::constant(var, RatFn::one()), UniPoly::zero(var));
        let (mut u0, mut u1) = (UniPoly::zero(var), UniPoly::constant(var, RatFn::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        Ok((r0, s0, u0))
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(self.var, (0..n).map(|d| &self.coeff(d) + &rhs.coeff(d)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            let lo = d.saturating_sub(rhs.coeffs.len() - 1);
            let hi = d.min(self.coeffs.len() - 1);
            let terms: Vec<RatFn> = (lo..=hi).map(|i| &self.coeffs[i] * &rhs.coeffs[d - i]).collect();
            out.push(RatFn::sum(terms.iter()).reduce());
        }
        UniPoly::new(self.var, out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*{}", self.var),
                _ => format!("[{c}]*{}^{d}", self.var),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The quotient ring `K[t] / P(t)` for `P(t) = (t + r_1)…(t + r_k)`.
#[derive(Clone, Debug)]
pub struct LinearModulus {
    var: VarId,
    roots: Vec<Poly>,
    modulus: UniPoly,
}

impl LinearModulus {
    /// `P_k(t) = (t + y_1)…(t + y_k)`.
    pub fn y_prefix(var: VarId, k: u32) -> Self {
        Self::new(var, (1..=k).map(|j| Poly::var(VarId::y(j))).collect())
    }

    pub fn new(var: VarId, roots: Vec<Poly>) -> Self {
        let t = Poly::var(var);
        let p = roots.iter().fold(Poly::one(), |acc, r| &acc * &(&t + r));
        LinearModulus { var, modulus: UniPoly::from_poly(var, &p), roots }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn roots(&self) -> &[Poly] {
        &self.roots
    }

    /// Squarefree iff the roots are pairwise distinct.
    pub fn is_squarefree(&self) -> bool {
        let mut r = self.roots.clone();
        r.sort();
        r.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reduce(&self, a: &UniPoly) -> Result<UniPoly> {
        if self.degree() == 0 {
            return Ok(UniPoly::zero(self.var));
        }
        if a.degree().is_none_or(|d| d < self.degree()) {
            return Ok(a.clone());
        }
        Ok(a.div_rem(&self.modulus)?.1)
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        self.reduce(&(a * b))
    }

    /// Inverse of `a` modulo `P(t)` by the extended Euclidean algorithm.
    pub fn inverse(&self, a: &UniPoly) -> Result<UniPoly> {
        if self.degree() == 0 {
            // The zero ring: every residue is 0 = 1. Return 1 so recurrences
            // that start at k = 0 stay uniform.
            return Ok(UniPoly::constant(self.var, RatFn::one()));
        }
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let a = self.reduce(a)?;
        let (g, _, u) = UniPoly::ext_gcd(&self.modulus, &a)?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible(a.to_string()));
        }
        let g_inv = g.coeff(0).recip()?;
        self.reduce(&u.scale(&g_inv).map_coeffs(RatFn::reduce))
    }
}

/// Inverse of the linear form `x_s − t` (or any `c` of degree ≤ 1 in `t`)
/// modulo `P(t)`.
pub fn mod_inverse_linear(c: &Poly, modulus: &LinearModulus) -> Result<UniPoly> {
    if c.degree_in(modulus.var()) > 1 {
        return Err(Error::Input(format!("{c} is not linear in {}", modulus.var())));
    }
    modulus.inverse(&UniPoly::from_poly(modulus.var(), c))
}

/// `[t^d] p`, zero beyond the degree.
pub fn coeff_t(p: &UniPoly, d: usize) -> RatFn {
    p.coeff(d)
}
