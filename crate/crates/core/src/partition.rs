//! The weighted partition function `F_{A,B}(x | y)` by independent routes:
//! enumeration, the single-path recurrence, coefficient extraction modulo
//! `P_k(t) = ∏ (t + y_j)`, the LGV determinant, and the horizontal-cut
//! closed form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{det_ratfn, series_coeff_multi, LinearModulus, Monomial, Poly, RatFn, UniPoly, VarId};
use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_systems, for_each_system, for_each_system_matching, Config, GridPoint, Path, PathSystem, ShapeTag,
};

/// The variables `x_1..x_m`, `y_1..y_n` of an `m × n` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    pub m: u32,
    pub n: u32,
}

impl SymbolTable {
    pub fn new(m: u32, n: u32) -> Self {
        SymbolTable { m, n }
    }

    pub fn for_config(c: &Config) -> Self {
        SymbolTable { m: c.m, n: c.n }
    }

    pub fn x_vars(&self) -> Vec<VarId> {
        (1..=self.m).map(VarId::x).collect()
    }

    pub fn y_vars(&self) -> Vec<VarId> {
        (1..=self.n).map(VarId::y).collect()
    }

    fn check(&self, s: u32, k: u32) -> Result<()> {
        if (1..=self.m).contains(&s) && (1..=self.n).contains(&k) {
            Ok(())
        } else {
            Err(Error::Input(format!("cell ({s},{k}) is outside the {}×{} grid", self.m, self.n)))
        }
    }
}

/// `x_i + y_j`.
pub fn cell_form(p: GridPoint) -> Poly {
    Poly::sum_of(VarId::x(p.row), VarId::y(p.col))
}

fn cell_weight(cells: &[GridPoint]) -> RatFn {
    cells.iter().fold(RatFn::one(), |acc, &p| acc.div_poly(&cell_form(p)))
}

/// `w(γ) = ∏ 1/(x_i + y_j)` over every visited cell, endpoints included.
pub fn weight_path(path: &Path) -> RatFn {
    cell_weight(path.vertices())
}

pub fn weight_system(system: &PathSystem) -> RatFn {
    let cells: Vec<GridPoint> = system.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect();
    cell_weight(&cells)
}

/// `Σ_Υ w(Υ)` over the enumerated systems; `k = 0` gives 1.
#[allow(non_snake_case)]
pub fn F_enum(c: &Config) -> RatFn {
    let mut weights = Vec::new();
    for_each_system(c, |paths| {
        let cells: Vec<GridPoint> = paths.iter().flatten().copied().collect();
        weights.push(cell_weight(&cells));
    });
    RatFn::sum(weights.iter())
}

/// Weighted path sums from one start to every cell of the grid.
///
/// `table[(r, c)]` is the sum of `w(γ)` over Up-Right paths `start → (r, c)`.
#[derive(Clone, Debug)]
pub struct PathSums {
    start: GridPoint,
    values: HashMap<GridPoint, RatFn>,
}

impl PathSums {
    /// Fills the quadrant above and to the right of `start`, clipped to `bound`.
    pub fn from_start(start: GridPoint, bound: GridPoint) -> Self {
        let mut values: HashMap<GridPoint, RatFn> = HashMap::new();
        for r in (bound.row..=start.row).rev() {
            for c in start.col..=bound.col {
                let p = GridPoint::new(r, c);
                let f = if p == start {
                    RatFn::one()
                } else {
                    let left = (c > start.col).then(|| &values[&GridPoint::new(r, c - 1)]);
                    let below = (r < start.row).then(|| &values[&GridPoint::new(r + 1, c)]);
                    RatFn::sum(left.into_iter().chain(below))
                };
                values.insert(p, f.div_poly(&cell_form(p)));
            }
        }
        PathSums { start, values }
    }

    pub fn start(&self) -> GridPoint {
        self.start
    }

    pub fn get(&self, end: GridPoint) -> RatFn {
        self.values.get(&end).cloned().unwrap_or_else(RatFn::zero)
    }
}

/// `F_{s,k}`: the weighted sum of paths `(m, 1) → (s, k)` by the recurrence
/// `F_{s,k} = (F_{s,k−1} + F_{s+1,k}) / (x_s + y_k)`.
#[allow(non_snake_case)]
pub fn F_single_dp(s: u32, k: u32, table: &SymbolTable) -> Result<RatFn> {
    table.check(s, k)?;
    let sums = PathSums::from_start(GridPoint::new(table.m, 1), GridPoint::new(s, k));
    Ok(sums.get(GridPoint::new(s, k)))
}

/// Polynomials in `t` with coefficients in `Z[x, y]`, index = power of `t`.
type TPoly = Vec<Poly>;

fn y_prefix_coeffs(k: u32) -> TPoly {
    let mut p: TPoly = vec![Poly::one()];
    for j in 1..=k {
        // multiply by (t + y_j)
        let yj = Poly::var(VarId::y(j));
        let mut next = vec![Poly::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] += &(c * &yj);
        }
        p = next;
    }
    p
}

/// `N(t)·q(t) mod P(t)`, where `q(t) = (P(t) − P(x))/(t − x)` is the
/// numerator of `(x − t)^{-1}` from one Euclid step
/// `P(t) = (t − x)·q(t) + P(x)`.
///
/// Uses `N·q ≡ [P(x)·N(t) − N(x)·P(t)] / (x − t)`, whose right side is an
/// exact synthetic division by `t − x`.
fn times_linear_inverse(n: &TPoly, p: &TPoly, x: VarId, p_at_x: &Poly) -> TPoly {
    let k = p.len() - 1;
    let xm = Monomial::var(x);
    let one = BigInt::one();
    let n_at_x = eval_at(n, x);
    // S(t) = P(x)·N(t) − N(x)·P(t), degree k.
    let mut s_coeffs: TPoly = (0..=k)
        .map(|i| match n.get(i) {
            Some(c) if i < k => c * p_at_x,
            _ => Poly::zero(),
        })
        .collect();
    for (i, pi) in p.iter().enumerate() {
        s_coeffs[i] -= &(&n_at_x * pi);
    }
    // S(t) = (t − x)·Q(t); the result is −Q(t).
    let mut out = vec![Poly::zero(); k];
    let mut carry = s_coeffs[k].clone();
    for i in (0..k).rev() {
        out[i] = -&carry;
        carry = carry.mul_term(&xm, &one);
        carry += &s_coeffs[i];
    }
    debug_assert!(carry.is_zero(), "t − x divides S(t)");
    out
}

fn eval_at(p: &TPoly, x: VarId) -> Poly {
    let xm = Monomial::var(x);
    let one = BigInt::one();
    let mut acc = Poly::zero();
    for c in p.iter().rev() {
        acc = acc.mul_term(&xm, &one);
        acc += c;
    }
    acc
}

/// `Q_{s,k}(t) = ∏_{j=s}^{m} (x_j − t)^{-1} mod P_k(t)` for every `s`,
/// index `s − 1`, each as a numerator residue over `∏_{j≥s} P_k(x_j)`.
///
/// Every inverse is a single Euclid step against the monic `P_k`, so the
/// products stay in `Z[x, y][t]` and no fractions appear until the end.
pub fn q_residues(k: u32, table: &SymbolTable) -> Result<Vec<UniPoly>> {
    q_residues_from(k, table, 1)
}

/// [`q_residues`] for `s = m, m−1, …, lowest` only; index `s − lowest`.
pub fn q_residues_from(k: u32, table: &SymbolTable, lowest: u32) -> Result<Vec<UniPoly>> {
    if k == 0 {
        return Err(Error::Input("column index k must be at least 1".into()));
    }
    let t = VarId::t(1);
    let p = y_prefix_coeffs(k);
    let mut num: TPoly = vec![Poly::zero(); k as usize];
    num[0] = Poly::one();
    let mut den = RatFn::one();
    let mut out = Vec::with_capacity(table.m as usize);
    for s in (lowest.max(1)..=table.m).rev() {
        let x = VarId::x(s);
        num = times_linear_inverse(&num, &p, x, &eval_at(&p, x));
        for j in 1..=k {
            den = den.div_poly(&cell_form(GridPoint::new(s, j)));
        }
        let coeffs = num.iter().map(|c| &RatFn::from_poly(c.clone()) * &den).collect();
        out.push(UniPoly::new(t, coeffs));
    }
    out.reverse();
    Ok(out)
}

/// `F_{s,k} = [t^{k−1}] Q_{s,k}(t)`.
#[allow(non_snake_case)]
pub fn F_single_modular(s: u32, k: u32, table: &SymbolTable) -> Result<RatFn> {
    table.check(s, k)?;
    let q = q_residues_from(k, &SymbolTable::new(table.m, k), s)?;
    Ok(q[0].coeff(k as usize - 1))
}

/// All `F_{s,k}` for one column `k` via the modular route; index `s − 1`.
pub fn modular_column(k: u32, table: &SymbolTable) -> Result<Vec<RatFn>> {
    Ok(q_residues(k, table)?.iter().map(|q| q.coeff(k as usize - 1)).collect())
}

/// `F_{s,k}` for `s = m, …, lowest` in column `k`; index `s − lowest`.
pub fn modular_column_from(k: u32, table: &SymbolTable, lowest: u32) -> Result<Vec<RatFn>> {
    Ok(q_residues_from(k, table, lowest)?.iter().map(|q| q.coeff(k as usize - 1)).collect())
}

/// `Q_{s,k}` through the general extended-Euclid inverse over the fraction
/// field. Slower; kept as an independent check of [`q_residues`].
pub fn q_residue_euclid(s: u32, k: u32, table: &SymbolTable) -> Result<UniPoly> {
    table.check(s, k)?;
    let t = VarId::t(1);
    let modulus = LinearModulus::y_prefix(t, k);
    let mut acc = UniPoly::constant(t, RatFn::one());
    for j in s..=table.m {
        let inv = modulus.inverse(&UniPoly::from_poly(t, &Poly::diff_of(VarId::x(j), t)))?;
        acc = modulus.mul(&acc, &inv)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LgvMode {
    /// Determinant only, after checking that no other matching admits a
    /// disjoint system (when the instance is small enough to check).
    Identity,
    /// Also sums `sign(π)·w(Υ)` over every permutation by brute force and
    /// requires it to equal the determinant.
    Signed,
}

/// Largest `k` for which the identity mode checks all other matchings.
pub const LGV_MATCHING_CHECK_K: usize = 5;
/// Largest `k` accepted by the signed mode.
pub const LGV_SIGNED_K: usize = 4;

/// The transfer matrix `u_ij = Σ_{γ: A_i → B_j} w(γ)`.
pub fn transfer_matrix(c: &Config) -> Vec<Vec<RatFn>> {
    let top_right = GridPoint::new(1, c.n);
    c.a.iter()
        .map(|&ai| {
            let sums = PathSums::from_start(ai, top_right);
            c.b.iter().map(|&bj| sums.get(bj)).collect()
        })
        .collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn sign(perm: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

/// The first non-identity matching `A_i → B_{π(i)}` admitting a
/// vertex-disjoint system, if any.
pub fn other_matching(c: &Config) -> Option<Vec<usize>> {
    for perm in permutations(c.k()) {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            continue;
        }
        let ends: Vec<GridPoint> = perm.iter().map(|&j| c.b[j]).collect();
        let mut found = false;
        // The visitor cannot stop the search early, so keep it cheap.
        for_each_system_matching(c.m, c.n, &c.a, &ends, |_| found = true);
        if found {
            return Some(perm);
        }
    }
    None
}

/// `Σ_π sign(π) Σ_{Υ: A → π(B)} w(Υ)` by brute force.
pub fn signed_sum(c: &Config) -> RatFn {
    let mut terms = Vec::new();
    for perm in permutations(c.k()) {
        let ends: Vec<GridPoint> = perm.iter().map(|&j| c.b[j]).collect();
        let neg = sign(&perm) < 0;
        for_each_system_matching(c.m, c.n, &c.a, &ends, |paths| {
            let cells: Vec<GridPoint> = paths.iter().flatten().copied().collect();
            let w = cell_weight(&cells);
            terms.push(if neg { -w } else { w });
        });
    }
    RatFn::sum(terms.iter())
}

/// `det(u_ij)`. Equal to `F_{A,B}` when the identity is the only matching
/// that admits vertex-disjoint systems.
#[allow(non_snake_case)]
pub fn F_lgv(c: &Config, mode: LgvMode) -> Result<RatFn> {
    let k = c.k();
    if k == 0 {
        return Ok(RatFn::one());
    }
    match mode {
        LgvMode::Identity if k <= LGV_MATCHING_CHECK_K => {
            if let Some(perm) = other_matching(c) {
                return Err(Error::LgvNotApplicable(format!("matching {perm:?} also admits non-intersecting systems")));
            }
        }
        LgvMode::Signed if k > LGV_SIGNED_K => {
            return Err(Error::Capacity { what: "signed LGV size k", size: k, bound: LGV_SIGNED_K });
        }
        _ => {}
    }
    let det = det_ratfn(&transfer_matrix(c))?;
    if mode == LgvMode::Signed {
        let brute = signed_sum(c);
        if brute != det {
            return Err(Error::LgvNotApplicable(format!("signed path sum {brute} differs from the determinant {det}")));
        }
    }
    Ok(det)
}

/// The horizontal-cut closed form
/// `[t_1^{b_1−1}…t_k^{b_k−1}] ∏_{i<j}(t_j − t_i) ∏_j ∏_{s≤m} 1/(x_s − t_j)`,
/// each `t_j` read modulo `P_{b_j}(t_j)`.
#[allow(non_snake_case)]
pub fn F_horizontal_closed(c: &Config) -> Result<RatFn> {
    if c.shape != ShapeTag::HorizontalCut {
        return Err(Error::Input(format!("the closed form applies to horizontal-cut instances, not {}", c.shape)));
    }
    let b: Vec<u32> = c.b.iter().map(|p| p.col).collect();
    series_coeff_multi(&b, c.m)
}

/// The two-row sum over paths `(2,1) → (1,m)` and its numerator
/// `G_m = F_m · ∏_{i≤2, j≤m} (x_i + y_j)`.
pub fn two_row_sum(m: u32) -> Result<(RatFn, Poly)> {
    if m < 1 {
        return Err(Error::Input("two_row_sum needs m >= 1".into()));
    }
    let c = Config::custom(2, m, vec![GridPoint::new(2, 1)], vec![GridPoint::new(1, m)])?;
    let f = F_enum(&c);
    let mut g = f.clone();
    for i in 1..=2 {
        for j in 1..=m {
            g = &g * &RatFn::from_poly(cell_form(GridPoint::new(i, j)));
        }
    }
    let g = g.reduce();
    let g =
        g.as_poly().cloned().ok_or_else(|| Error::Hypothesis(format!("G_{m} did not clear to a polynomial: {g}")))?;
    Ok((f, g))
}

/// `[∏_j (x_1 + y_j) − ∏_j (x_2 + y_j)] / (x_1 − x_2)`.
pub fn telescoped_numerator(m: u32) -> Poly {
    let row = |i: u32| (1..=m).fold(Poly::one(), |acc, j| &acc * &Poly::sum_of(VarId::x(i), VarId::y(j)));
    (&row(1) - &row(2)).div_exact(&Poly::diff_of(VarId::x(1), VarId::x(2))).expect("x1 - x2 divides the difference")
}

/// Exact value of `f` at `x_i = x_vals[i−1]`, `y_j = y_vals[j−1]`.
pub fn specialize(f: &RatFn, x_vals: &[BigRational], y_vals: &[BigRational]) -> Result<BigRational> {
    let mut needed = f.num().vars();
    for (p, _) in f.den_factors() {
        needed.extend(p.vars());
    }
    for v in &needed {
        let have = match v.family {
            crate::algebra::Family::X => x_vals.len(),
            crate::algebra::Family::Y => y_vals.len(),
            crate::algebra::Family::T => 0,
        };
        if v.index as usize > have {
            return Err(Error::Input(format!("no value given for {v}")));
        }
    }
    f.eval_rational(|v| match v.family {
        crate::algebra::Family::X => x_vals[v.index as usize - 1].clone(),
        crate::algebra::Family::Y => y_vals[v.index as usize - 1].clone(),
        crate::algebra::Family::T => unreachable!("checked above"),
    })
}

/// `x_i = q^i`, `y_j = −q^{−j}`.
pub fn q_racah_assignment(q: &BigRational, m: u32, n: u32) -> (Vec<BigRational>, Vec<BigRational>) {
    let x = (1..=m).map(|i| num_traits::pow(q.clone(), i as usize)).collect();
    let y = (1..=n).map(|j| -num_traits::pow(q.recip(), j as usize)).collect();
    (x, y)
}

/// `x = (1, …, 1)`, `y = (0, …, 0)`, under which `F` counts systems.
pub fn counting_assignment(m: u32, n: u32) -> (Vec<BigRational>, Vec<BigRational>) {
    (vec![BigRational::one(); m as usize], vec![BigRational::zero(); n as usize])
}

/// `F` at the counting assignment, as an integer when it is one.
pub fn count_by_specialization(f: &RatFn, m: u32, n: u32) -> Result<BigRational> {
    let (x, y) = counting_assignment(m, n);
    specialize(f, &x, &y)
}

/// The systems of `c` and their weights, in enumeration order.
pub fn weighted_systems(c: &Config) -> Vec<(PathSystem, RatFn)> {
    enumerate_systems(c)
        .into_iter()
        .map(|s| {
            let w = weight_system(&s);
            (s, w)
        })
        .collect()
}

/// Integer value of a rational, if it is one.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}
