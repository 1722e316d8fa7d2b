//! Rational functions `num / den` with the denominator kept as a product of
//! primitive factors.
//!
//! Every denominator the path algorithms produce is a product of linear forms
//! such as `x_i + y_j`, so the factored representation makes common
//! denominators cheap (take maximum multiplicities) without a multivariate
//! gcd. Values are never required to be in lowest terms: equality is decided
//! by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::poly::Poly;
use super::var::VarId;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RatFn {
    num: Poly,
    /// Positive integer part of the denominator.
    den_const: BigInt,
    /// Primitive, non-constant factors with positive leading coefficient.
    den: BTreeMap<Poly, u32>,
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den_const: BigInt::one(), den: BTreeMap::new() }
    }

    pub fn from_int<I: Into<BigInt>>(c: I) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        RatFn::from_poly(Poly::var(v))
    }

    /// `1 / p`. Panics on the zero polynomial.
    pub fn recip_poly(p: &Poly) -> Self {
        RatFn::one().div_poly(p)
    }

    /// `num / den`. Returns an error if `den` is zero.
    pub fn new(num: Poly, den: &Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::from_poly(num).div_poly(den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Expanded denominator.
    pub fn den(&self) -> Poly {
        let mut d = Poly::constant(self.den_const.clone());
        for (p, &e) in &self.den {
            d = &d * &p.pow(e);
        }
        d
    }

    pub fn den_constant(&self) -> &BigInt {
        &self.den_const
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, &e)| (p, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Polynomial value if the denominator is trivially one.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den.is_empty() && self.den_const.is_one()).then_some(&self.num)
    }

    fn canonicalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            self.den_const = BigInt::one();
        }
        self
    }

    /// Multiplies the denominator by `p^e`.
    fn push_factor(&mut self, p: &Poly, e: u32) {
        if e == 0 {
            return;
        }
        let mut c = p.content();
        if p.leading_coeff_sign() == std::cmp::Ordering::Less {
            c = -c;
        }
        if c.is_negative() && e % 2 == 1 {
            self.num = -&self.num;
        }
        self.den_const *= num_traits::pow(c.abs(), e as usize);
        let prim = p.div_exact(&Poly::constant(c)).expect("content divides");
        if prim.as_constant().is_some() {
            return;
        }
        *self.den.entry(prim).or_insert(0) += e;
    }

    /// `self / p`, splitting `p` into linear factors where possible so later
    /// common denominators stay small.
    pub fn div_poly(mut self, p: &Poly) -> Self {
        assert!(!p.is_zero(), "division by the zero polynomial");
        let hints: Vec<Poly> = self.den.keys().cloned().collect();
        for (f, e) in split_linear_factors(p, &hints) {
            self.push_factor(&f, e);
        }
        self
    }

    /// Reciprocal. Errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = RatFn::from_poly(self.den());
        let hints: Vec<Poly> = self.den.keys().cloned().collect();
        for (f, e) in split_linear_factors(&self.num, &hints) {
            out.push_factor(&f, e);
        }
        Ok(out)
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Common denominator data: (integer lcm, factor lcm).
    fn lcm_den<'a, I: IntoIterator<Item = &'a RatFn>>(items: I) -> (BigInt, BTreeMap<Poly, u32>) {
        let mut c = BigInt::one();
        let mut fac: BTreeMap<Poly, u32> = BTreeMap::new();
        for f in items {
            c = c.lcm(&f.den_const);
            for (p, &e) in &f.den {
                let slot = fac.entry(p.clone()).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        (c, fac)
    }

    /// Numerator rescaled to the common denominator `(c, fac)`.
    fn lifted_num(&self, c: &BigInt, fac: &BTreeMap<Poly, u32>) -> Poly {
        let mut n = self.num.scale(&(c / &self.den_const));
        for (p, &e) in fac {
            let have = self.den.get(p).copied().unwrap_or(0);
            for _ in have..e {
                n = &n * p;
            }
        }
        n
    }

    /// Numerators over a shared denominator `D`, returned with `1 / D`.
    pub fn over_common_denominator(items: &[RatFn]) -> (Vec<Poly>, RatFn) {
        let (c, fac) = Self::lcm_den(items.iter());
        let nums = items.iter().map(|f| f.lifted_num(&c, &fac)).collect();
        let inv = RatFn { num: Poly::one(), den_const: c, den: fac };
        (nums, inv)
    }

    /// Sum of many terms over a single common denominator.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatFn>>(items: I) -> RatFn {
        let items: Vec<&RatFn> = items.into_iter().filter(|f| !f.is_zero()).collect();
        if items.is_empty() {
            return RatFn::zero();
        }
        let (c, fac) = Self::lcm_den(items.iter().copied());
        let mut num = Poly::zero();
        for f in &items {
            num += &f.lifted_num(&c, &fac);
        }
        RatFn { num, den_const: c, den: fac }.canonicalize()
    }

    /// Cancels denominator factors that divide the numerator, and the common
    /// integer content.
    pub fn reduce(&self) -> RatFn {
        let mut num = self.num.clone();
        if num.is_zero() {
            return RatFn::zero();
        }
        let mut den = BTreeMap::new();
        for (p, &e) in &self.den {
            let mut left = e;
            while left > 0 {
                match num.div_exact(p) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(p.clone(), left);
            }
        }
        let g = num.content().gcd(&self.den_const);
        let num = num.div_exact(&Poly::constant(g.clone())).unwrap();
        RatFn { num, den_const: &self.den_const / g, den }
    }

    /// Renames variables in numerator and every denominator factor.
    pub fn map_vars<F: Fn(VarId) -> VarId>(&self, f: F) -> RatFn {
        let mut out = RatFn { num: self.num.map_vars(&f), den_const: self.den_const.clone(), den: BTreeMap::new() };
        for (p, &e) in &self.den {
            out.push_factor(&p.map_vars(&f), e);
        }
        out
    }

    pub fn swap_vars(&self, a: VarId, b: VarId) -> RatFn {
        self.map_vars(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Exact rational value. A vanishing denominator factor is reported by name.
    pub fn eval_rational<F: Fn(VarId) -> BigRational>(&self, value: F) -> Result<BigRational> {
        let mut den = BigRational::from_integer(self.den_const.clone());
        for (p, &e) in &self.den {
            let v = p.eval_rational(&value);
            if v.is_zero() {
                return Err(Error::Pole { factor: p.to_string() });
            }
            den *= num_traits::pow(v, e as usize);
        }
        Ok(self.num.eval_rational(&value) / den)
    }

    /// Value in `Z/p`; a vanishing denominator factor is reported by name.
    pub fn eval_mod<F: Fn(VarId) -> u64>(&self, p: u64, value: F) -> Result<u64> {
        let mut den = (&self.den_const % BigInt::from(p)).try_into().unwrap_or(0u64);
        if den == 0 {
            return Err(Error::Pole { factor: self.den_const.to_string() });
        }
        for (f, &e) in &self.den {
            let v = f.eval_mod(p, &value);
            if v == 0 {
                return Err(Error::Pole { factor: f.to_string() });
            }
            den = modp::mul(den, modp::pow(v, e as u64, p), p);
        }
        Ok(modp::mul(self.num.eval_mod(p, &value), modp::inv(den, p).unwrap(), p))
    }
}

/// Cross-multiplication equality: `f.num·g.den == g.num·f.den`.
pub fn ratfn_equal(f: &RatFn, g: &RatFn) -> bool {
    if f.is_zero() || g.is_zero() {
        return f.is_zero() && g.is_zero();
    }
    if f.den_const == g.den_const && f.den == g.den {
        return f.num == g.num;
    }
    let (c, fac) = RatFn::lcm_den([f, g]);
    f.lifted_num(&c, &fac) == g.lifted_num(&c, &fac)
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        ratfn_equal(self, other)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::sum([self, rhs])
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        &self - &rhs
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den_const: self.den_const.clone(), den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        let mut den = self.den.clone();
        for (p, &e) in &rhs.den {
            *den.entry(p.clone()).or_insert(0) += e;
        }
        RatFn { num: &self.num * &rhs.num, den_const: &self.den_const * &rhs.den_const, den }
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        &self * &rhs
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

/// Splits `p` into `(factor, multiplicity)` pairs: linear factors found by
/// trial division (hints first, then `v`, `u ± v` over the variables of `p`),
/// then a leftover cofactor. The integer content comes out as a constant
/// factor.
pub fn split_linear_factors(p: &Poly, hints: &[Poly]) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let content = p.content();
    let sign = if p.leading_coeff_sign() == std::cmp::Ordering::Less { -BigInt::one() } else { BigInt::one() };
    let unit = content * sign;
    if !unit.is_one() {
        out.push((Poly::constant(unit.clone()), 1));
    }
    let mut rest = p.div_exact(&Poly::constant(unit)).expect("content divides");
    if rest.as_constant().is_some() {
        return out;
    }
    let try_factor = |rest: &mut Poly, f: &Poly, out: &mut Vec<(Poly, u32)>| {
        if rest.total_degree() < f.total_degree() {
            return;
        }
        let mut e = 0;
        while rest.total_degree() >= 1 {
            match rest.div_exact(f) {
                Some(q) => {
                    *rest = q;
                    e += 1;
                }
                None => break,
            }
        }
        if e > 0 {
            out.push((f.clone(), e));
        }
    };
    for h in hints.iter().filter(|h| h.total_degree() == 1) {
        if rest.total_degree() <= 1 {
            break;
        }
        try_factor(&mut rest, h, &mut out);
    }
    if rest.total_degree() > 1 {
        let vars: Vec<VarId> = rest.vars().into_iter().collect();
        let mut candidates: Vec<Poly> = vars.iter().map(|&v| Poly::var(v)).collect();
        for (i, &u) in vars.iter().enumerate() {
            for &v in &vars[i + 1..] {
                candidates.push(Poly::sum_of(u, v));
                candidates.push(Poly::diff_of(u, v));
            }
        }
        for c in &candidates {
            if rest.total_degree() <= 1 {
                break;
            }
            try_factor(&mut rest, c, &mut out);
        }
    }
    if rest.as_constant().is_none() {
        out.push((rest, 1));
    } else if let Some(c) = rest.as_constant() {
        if !c.is_one() {
            out.push((rest, 1));
        }
    }
    out
}

fn fmt_factor(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.len() > 1 {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for RatFn {
    /// Canonical text: `num / den`, the denominator written as the product of
    /// its stored factors (sorted by the monomial order) and parenthesized
    /// unless it is a single plain factor; omitted when 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.den_const.is_one() {
            return write!(f, "{}", self.num);
        }
        fmt_factor(&self.num, f)?;
        write!(f, " / ")?;
        let factors = self.den.len() + usize::from(!self.den_const.is_one());
        let single_power = factors == 1 && self.den.values().any(|&e| e > 1);
        let wrap = factors > 1 || single_power;
        if wrap {
            write!(f, "(")?;
        }
        let mut first = true;
        if !self.den_const.is_one() {
            write!(f, "{}", self.den_const)?;
            first = false;
        }
        for (p, &e) in self.den.iter().rev() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            fmt_factor(p, f)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}
