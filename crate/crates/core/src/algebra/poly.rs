//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic with `x1 > x2 > … > y1 > … > t1 > …`. Zero coefficients are
//! never stored, so structural equality of the map is polynomial equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::VarId;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(VarId, u32); 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.binary_search_by(|&(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for &(v, e) in self.0.iter() {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Drops variable `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: VarId) -> (u32, Monomial) {
        let mut rest = self.clone();
        let e = match rest.0.binary_search_by(|&(w, _)| w.cmp(&v)) {
            Ok(i) => rest.0.remove(i).1,
            Err(_) => 0,
        };
        (e, rest)
    }

    pub fn map_vars<F: Fn(VarId) -> VarId>(&self, f: F) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        // Lexicographic on exponent vectors; earlier variables are more significant.
        for (&(va, ea), &(vb, eb)) in self.0.iter().zip(other.0.iter()) {
            match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    let c = ea.cmp(&eb);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (n, &(v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant<I: Into<BigInt>>(c: I) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term<I: Into<BigInt>>(c: I, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `u + v` for two variables; the workhorse linear form `x_i + y_j`.
    pub fn sum_of(u: VarId, v: VarId) -> Self {
        Poly::var(u) + Poly::var(v)
    }

    /// `u - v`.
    pub fn diff_of(u: VarId, v: VarId) -> Self {
        Poly::var(u) - Poly::var(v)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match terms.get_mut(&m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(&m);
                    }
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_sign(&self) -> Ordering {
        match self.leading() {
            Some((_, c)) if c.is_negative() => Ordering::Less,
            Some(_) => Ordering::Greater,
            None => Ordering::Equal,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Greatest common divisor of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            let mut terms = BTreeMap::new();
            for (m, k) in &self.terms {
                let (q, r) = k.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(m.clone(), q);
            }
            return Some(Poly { terms });
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem -= &d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Renames variables. Monomials are re-sorted and colliding terms merged.
    pub fn map_vars<F: Fn(VarId) -> VarId>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Exchanges two variables everywhere.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> Poly {
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

    /// Coefficients of powers of `v`: `self = Σ_d out[d] · v^d`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Evaluates with every variable assigned a rational number.
    pub fn eval_rational<F: Fn(VarId) -> BigRational>(&self, value: F) -> BigRational {
        let mut cache: HashMap<VarId, BigRational> = HashMap::new();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in m.pairs() {
                let x = cache.entry(v).or_insert_with(|| value(v));
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Evaluates modulo a prime `p < 2^63` with every variable assigned a residue.
    pub fn eval_mod<F: Fn(VarId) -> u64>(&self, p: u64, value: F) -> u64 {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let cm = c.mod_floor(&pb);
            let mut t: u64 = cm.try_into().expect("reduced coefficient fits in u64");
            for &(v, e) in m.pairs() {
                t = super::modp::mul(t, super::modp::pow(value(v) % p, e as u64, p), p);
            }
            acc = super::modp::add(acc, t, p);
        }
        acc
    }

    /// Substitutes polynomials for variables; unmapped variables are kept.
    pub fn substitute<F: Fn(VarId) -> Option<Poly>>(&self, f: F) -> Poly {
        let mut cache: HashMap<VarId, Option<Poly>> = HashMap::new();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut kept: Vec<(VarId, u32)> = Vec::new();
            for &(v, e) in m.pairs() {
                match cache.entry(v).or_insert_with(|| f(v)) {
                    Some(p) => t = &t * &p.pow(e),
                    None => kept.push((v, e)),
                }
            }
            acc += &t.mul_term(&Monomial::from_pairs(kept), &BigInt::one());
        }
        acc
    }
}

fn add_into(terms: &mut BTreeMap<Monomial, BigInt>, m: &Monomial, c: &BigInt, negate: bool) {
    match terms.get_mut(m) {
        Some(acc) => {
            if negate {
                *acc -= c;
            } else {
                *acc += c;
            }
            if acc.is_zero() {
                terms.remove(m);
            }
        }
        None => {
            terms.insert(m.clone(), if negate { -c } else { c.clone() });
        }
    }
}

/// Linear merge of two sorted term maps, for operands of similar size.
fn merge_terms(
    a: BTreeMap<Monomial, BigInt>,
    b: &BTreeMap<Monomial, BigInt>,
    negate: bool,
) -> BTreeMap<Monomial, BigInt> {
    let sign = |c: &BigInt| if negate { -c } else { c.clone() };
    let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => {
                let (m, c) = ib.next().unwrap();
                out.push((m.clone(), sign(c)));
            }
            Ordering::Equal => {
                let (m, mut c) = ia.next().unwrap();
                let (_, d) = ib.next().unwrap();
                if negate {
                    c -= d;
                } else {
                    c += d;
                }
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out.into_iter().collect()
}

impl Poly {
    fn accumulate(&mut self, rhs: &Poly, negate: bool) {
        if rhs.len() * 8 >= self.len() && rhs.len() > 16 {
            let a = std::mem::take(&mut self.terms);
            self.terms = merge_terms(a, &rhs.terms, negate);
        } else {
            for (m, c) in &rhs.terms {
                add_into(&mut self.terms, m, c, negate);
            }
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.accumulate(rhs, false);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.accumulate(rhs, true);
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big += small;
        big
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(p) = packed_mul(self, rhs) {
            return p;
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let k = acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero);
                *k += ca * cb;
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

/// Multiplication with exponent vectors packed into a `u128`, 8 bits per
/// variable, and `i128` coefficients. `None` when the operands do not fit.
fn packed_mul(a: &Poly, b: &Poly) -> Option<Poly> {
    const SMALL: i64 = 1 << 31;
    let mut vars: Vec<VarId> = Vec::new();
    let mut max_exp: HashMap<VarId, u32> = HashMap::new();
    for (i, p) in [a, b].into_iter().enumerate() {
        let mut local: HashMap<VarId, u32> = HashMap::new();
        for (m, c) in &p.terms {
            if c.bits() > 31 {
                return None;
            }
            for &(v, e) in m.pairs() {
                let slot = local.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        for (v, e) in local {
            let slot = max_exp.entry(v).or_insert(0);
            if i == 0 {
                *slot = e;
            } else {
                *slot += e;
            }
        }
    }
    if max_exp.len() > 16 || max_exp.values().any(|&e| e > 255) {
        return None;
    }
    vars.extend(max_exp.keys().copied());
    vars.sort();
    let pos: HashMap<VarId, u32> = vars.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let pack =
        |m: &Monomial| -> u128 { m.pairs().iter().fold(0u128, |acc, &(v, e)| acc | ((e as u128) << (8 * pos[&v]))) };
    let small = |c: &BigInt| -> i128 {
        let v: i64 = c.try_into().expect("checked to fit");
        debug_assert!(v.abs() < SMALL);
        v as i128
    };
    let pa: Vec<(u128, i128)> = a.terms.iter().map(|(m, c)| (pack(m), small(c))).collect();
    let pb: Vec<(u128, i128)> = b.terms.iter().map(|(m, c)| (pack(m), small(c))).collect();
    let mut acc: HashMap<u128, i128> = HashMap::with_capacity(pa.len() * pb.len() / 2 + 1);
    for &(ma, ca) in &pa {
        for &(mb, cb) in &pb {
            *acc.entry(ma + mb).or_insert(0) += ca * cb;
        }
    }
    let unpack = |k: u128| -> Monomial {
        Monomial(
            vars.iter()
                .enumerate()
                .filter_map(|(i, &v)| {
                    let e = ((k >> (8 * i)) & 0xff) as u32;
                    (e > 0).then_some((v, e))
                })
                .collect(),
        )
    };
    Some(Poly { terms: acc.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (unpack(k), BigInt::from(c))).collect() })
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Poly {
        Poly::var(VarId::x(i))
    }
    fn y(i: u32) -> Poly {
        Poly::var(VarId::y(i))
    }

    #[test]
    fn grlex_orders_blocks() {
        let mx = Monomial::var(VarId::x(2));
        let my = Monomial::var(VarId::y(1));
        let mt = Monomial::var(VarId::t(1));
        assert!(mx > my && my > mt);
        assert!(Monomial::var(VarId::x(1)) > mx);
        assert!(Monomial::var_pow(VarId::t(1), 2) > Monomial::var(VarId::x(1)));
        let a = Monomial::from_pairs([(VarId::x(1), 1), (VarId::y(2), 1)]);
        let b = Monomial::from_pairs([(VarId::x(2), 2)]);
        assert!(a > b);
    }

    #[test]
    fn canonical_text() {
        let p = &(&x(1) + &y(3)) * &(&x(1) - &Poly::constant(2));
        assert_eq!(p.to_string(), "x1^2 + x1*y3 - 2*x1 - 2*y3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-x(2)).to_string(), "-x2");
    }

    #[test]
    fn exact_division() {
        let a = &x(1) + &y(1);
        let b = &x(2) - &y(1);
        let prod = &(&a * &b) * &a;
        assert_eq!(prod.div_exact(&a), Some(&a * &b));
        assert_eq!(prod.div_exact(&(&x(1) + &y(2))), None);
        assert_eq!(Poly::constant(6).div_exact(&Poly::constant(4)), None);
    }

    #[test]
    fn coefficients_in_variable() {
        let t = Poly::var(VarId::t(1));
        let p = &(&t + &y(1)) * &(&t + &y(2));
        let cs = p.coefficients_in(VarId::t(1));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], &y(1) * &y(2));
        assert_eq!(cs[1], &y(1) + &y(2));
        assert!(cs[2].is_one());
    }

    #[test]
    fn swap_is_involution() {
        let p = &(&x(1) + &y(2)).pow(3) - &x(2);
        let s = p.swap_vars(VarId::x(1), VarId::x(2));
        assert_ne!(s, p);
        assert_eq!(s.swap_vars(VarId::x(1), VarId::x(2)), p);
    }

    #[test]
    fn substitute_specializes() {
        let p = &(&x(1) + &y(1)) * &x(2);
        let q = p.substitute(|v| (v == VarId::y(1)).then(Poly::zero));
        assert_eq!(q, &x(1) * &x(2));
    }
}
