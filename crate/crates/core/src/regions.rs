//! Regions of the triangular lattice, the bijection `Φ` between path
//! systems and lozenge tilings, and closed-form tiling counts.
//!
//! # Coordinates
//!
//! Lattice points are `P(u, v)`, drawn at `(u·√3/2, v − u/2)`. Cell
//! `(i, j)` of an `m × n` grid is the vertical edge from `P(u, v)` to
//! `P(u, v+1)` with `u = j − i + m − 1`, `v = m − i`, so the lower-left cell
//! `(m, 1)` sits at the origin. Two unit triangles are named
//!
//! * `T1(u, v)` with corners `P(u,v)`, `P(u+1,v)`, `P(u+1,v+1)`;
//! * `T2(u, v)` with corners `P(u,v)`, `P(u,v+1)`, `P(u+1,v+1)`.
//!
//! Cell `(u, v)` owns `T1(u−1, v)` on its left and `T2(u, v)` on its right.
//! The region of a configuration is every owned triangle except the left
//! triangle of each start and the right triangle of each end. A Right step
//! out of cell `(u, v)` is the lozenge `T2(u,v) ∪ T1(u,v)` (`R`), an Up step
//! is `T2(u,v) ∪ T1(u,v+1)` (`U`), and a cell no path visits is
//! `T1(u−1,v) ∪ T2(u,v)` (`Y`). Every lozenge is anchored at its source
//! cell.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    general_config, hexagon_config, horizontal_cut_config, vertical_cut_config, Config, GridPoint, Instance, Path,
    PathSystem,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionSpec {
    #[serde(rename = "hexagon")]
    Hexagon(u32, u32, u32),
    /// Tooth widths `c_1, …, c_k`.
    #[serde(rename = "trapezoid")]
    Trapezoid(Vec<u32>),
    /// Strictly increasing positions, counted from the bottom, of the `k`
    /// start and end edges; `l` defaults to `max(a_k, b_k) − k`.
    #[serde(rename = "parallelogram")]
    Parallelogram {
        a: Vec<u32>,
        b: Vec<u32>,
        m: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l: Option<u32>,
    },
    /// Column multiplicities as in [`general_config`].
    #[serde(rename = "general")]
    General { a: Vec<u32>, b: Vec<u32>, m: u32 },
    /// The region of an arbitrary configuration.
    #[serde(rename = "custom")]
    Custom(Instance),
}

/// Trapezoid end columns `b_j = 1 + c_1 + … + c_j`.
pub fn trapezoid_columns(c: &[u32]) -> Vec<u32> {
    c.iter()
        .scan(1u32, |acc, &ci| {
            *acc += ci;
            Some(*acc)
        })
        .collect()
}

/// The path configuration whose systems biject with tilings of `r`.
pub fn region_to_config(r: &RegionSpec) -> Result<Config> {
    match r {
        RegionSpec::Hexagon(a, b, c) => hexagon_config(*a, *b, *c),
        RegionSpec::Trapezoid(c) => {
            if c.is_empty() {
                return Err(Error::Input("a trapezoid needs at least one tooth".into()));
            }
            let b = trapezoid_columns(c);
            horizontal_cut_config(0, &b, *b.last().unwrap())
        }
        RegionSpec::Parallelogram { a, b, m, l } => {
            let k = a.len() as u32;
            if b.len() != a.len() || k == 0 {
                return Err(Error::Input("a and b must be non-empty and of equal length".into()));
            }
            let top = (*a.iter().max().unwrap()).max(*b.iter().max().unwrap());
            let h = match l {
                Some(l) => k + l,
                None => top.max(k),
            };
            if top > h {
                return Err(Error::Hypothesis(format!("positions must lie in [1, k + l] = [1, {h}]")));
            }
            // Positions count upward from the bottom; rows count downward.
            let flip = |s: &[u32]| -> Vec<u32> { s.iter().rev().map(|&p| h + 1 - p.min(h + 1)).collect() };
            if a.iter().chain(b.iter()).any(|&p| p < 1) {
                return Err(Error::Hypothesis("positions start at 1".into()));
            }
            vertical_cut_config(&flip(a), &flip(b), k, h - k, *m)
        }
        RegionSpec::General { a, b, m } => general_config(a, b, *m),
        RegionSpec::Custom(inst) => Config::try_from(inst.clone()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orient {
    /// Right step (light green).
    R,
    /// Up step (dark green).
    U,
    /// No path (yellow).
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lozenge {
    pub anchor: [i64; 2],
    pub orient: Orient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    T1(i64, i64),
    T2(i64, i64),
}

impl Lozenge {
    pub fn triangles(&self) -> [Tri; 2] {
        let [u, v] = self.anchor;
        match self.orient {
            Orient::R => [Tri::T2(u, v), Tri::T1(u, v)],
            Orient::U => [Tri::T2(u, v), Tri::T1(u, v + 1)],
            Orient::Y => [Tri::T1(u - 1, v), Tri::T2(u, v)],
        }
    }

    /// Corner lattice points in drawing order.
    pub fn corners(&self) -> [(i64, i64); 4] {
        let [u, v] = self.anchor;
        match self.orient {
            Orient::R => [(u, v), (u, v + 1), (u + 1, v + 1), (u + 1, v)],
            Orient::U => [(u, v), (u, v + 1), (u + 1, v + 2), (u + 1, v + 1)],
            Orient::Y => [(u - 1, v), (u, v + 1), (u + 1, v + 1), (u, v)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub region: RegionSpec,
    /// Sorted by anchor, then orientation.
    pub lozenges: Vec<Lozenge>,
}

impl Tiling {
    pub fn count(&self, o: Orient) -> usize {
        self.lozenges.iter().filter(|l| l.orient == o).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tiling serializes")
    }

    pub fn from_json(s: &str) -> Result<Tiling> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Cell `(i, j)` as a lattice anchor.
pub fn cell_anchor(c: &Config, p: GridPoint) -> (i64, i64) {
    let (i, j, m) = (p.row as i64, p.col as i64, c.m as i64);
    (j - i + m - 1, m - i)
}

fn anchor_cell(c: &Config, (u, v): (i64, i64)) -> Option<GridPoint> {
    let m = c.m as i64;
    let i = m - v;
    let j = u - v + 1;
    let p = GridPoint::new(u32::try_from(i).ok()?, u32::try_from(j).ok()?);
    c.in_bounds(p).then_some(p)
}

/// The unit triangles of the region of `c`.
pub fn region_triangles(c: &Config) -> BTreeSet<Tri> {
    let mut out = BTreeSet::new();
    for i in 1..=c.m {
        for j in 1..=c.n {
            let (u, v) = cell_anchor(c, GridPoint::new(i, j));
            out.insert(Tri::T1(u - 1, v));
            out.insert(Tri::T2(u, v));
        }
    }
    for &a in &c.a {
        let (u, v) = cell_anchor(c, a);
        out.remove(&Tri::T1(u - 1, v));
    }
    for &b in &c.b {
        let (u, v) = cell_anchor(c, b);
        out.remove(&Tri::T2(u, v));
    }
    out
}

/// `Φ`: Right steps become `R` lozenges, Up steps `U`, and every unvisited
/// cell a `Y`.
pub fn phi(system: &PathSystem, r: &RegionSpec) -> Result<Tiling> {
    let c = region_to_config(r)?;
    if !system.fits(&c) {
        return Err(Error::Input("the path system is not a system for this region".into()));
    }
    let mut visited = BTreeSet::new();
    let mut lozenges = Vec::new();
    for path in &system.paths {
        visited.extend(path.vertices().iter().copied());
        for w in path.vertices().windows(2) {
            let (u, v) = cell_anchor(&c, w[0]);
            let orient = if w[1].col > w[0].col { Orient::R } else { Orient::U };
            lozenges.push(Lozenge { anchor: [u, v], orient });
        }
    }
    for i in 1..=c.m {
        for j in 1..=c.n {
            let p = GridPoint::new(i, j);
            if !visited.contains(&p) {
                let (u, v) = cell_anchor(&c, p);
                lozenges.push(Lozenge { anchor: [u, v], orient: Orient::Y });
            }
        }
    }
    lozenges.sort();
    Ok(Tiling { region: r.clone(), lozenges })
}

/// `Φ^{-1}`: follows the `R` and `U` lozenges out of each start.
pub fn phi_inv(t: &Tiling) -> Result<PathSystem> {
    let c = region_to_config(&t.region)?;
    let region = region_triangles(&c);
    let mut owner: BTreeMap<Tri, usize> = BTreeMap::new();
    for (idx, l) in t.lozenges.iter().enumerate() {
        for tri in l.triangles() {
            if !region.contains(&tri) {
                return Err(Error::Input(format!("lozenge {l:?} leaves the region")));
            }
            if owner.insert(tri, idx).is_some() {
                return Err(Error::Input(format!("lozenges overlap at {tri:?}")));
            }
        }
    }
    if owner.len() != region.len() {
        return Err(Error::Input(format!("lozenges cover {} of the region's {} triangles", owner.len(), region.len())));
    }
    let mut paths = Vec::with_capacity(c.k());
    for (&a, &b) in c.a.iter().zip(&c.b) {
        let mut cur = a;
        let mut vertices = vec![cur];
        while cur != b {
            let (u, v) = cell_anchor(&c, cur);
            let l = owner
                .get(&Tri::T2(u, v))
                .map(|&i| t.lozenges[i])
                .ok_or_else(|| Error::Input(format!("no lozenge leaves cell {cur}")))?;
            let next = match l.orient {
                Orient::R => (u + 1, v),
                Orient::U => (u + 1, v + 1),
                Orient::Y => return Err(Error::Input(format!("path through {cur} runs into a yellow lozenge"))),
            };
            cur = anchor_cell(&c, next).ok_or_else(|| Error::Input("path leaves the grid".into()))?;
            vertices.push(cur);
            if vertices.len() > (c.m + c.n) as usize {
                return Err(Error::Input("path does not reach its end".into()));
            }
        }
        paths.push(Path::new(vertices)?);
    }
    let system = PathSystem { paths };
    if !system.fits(&c) || phi(&system, &t.region)?.lozenges != t.lozenges {
        return Err(Error::Input("the tiling does not come from a non-intersecting system".into()));
    }
    Ok(system)
}

fn exact_quotient(num: BigInt, den: BigInt) -> BigInt {
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `∏_{i≤a, j≤b, k≤c} (i+j+k−1)/(i+j+k−2)`, the number of plane partitions
/// in an `a × b × c` box.
pub fn macmahon(a: u32, b: u32, c: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= i + j + k - 1;
                den *= i + j + k - 2;
            }
        }
    }
    exact_quotient(num, den)
}

/// Largest `a·b·c` accepted by [`macmahon_q`].
pub const MACMAHON_Q_BOUND: u64 = 60;

/// `Σ_π q^{|π|}` over plane partitions `π` in the `a × b × c` box, by
/// enumerating rows; coefficient of `q^d` at index `d`.
pub fn macmahon_q(a: u32, b: u32, c: u32) -> Result<Vec<BigInt>> {
    let size = a as u64 * b as u64 * c as u64;
    if size > MACMAHON_Q_BOUND {
        return Err(Error::Capacity {
            what: "box volume a·b·c",
            size: size as usize,
            bound: MACMAHON_Q_BOUND as usize,
        });
    }
    if size == 0 {
        return Ok(vec![BigInt::one()]);
    }
    // Rows: weakly decreasing sequences of length b with entries in [0, c].
    let mut rows: Vec<Vec<u32>> = Vec::new();
    fn gen(cur: &mut Vec<u32>, len: usize, max: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max {
            cur.push(v);
            gen(cur, len, v, out);
            cur.pop();
        }
    }
    gen(&mut Vec::new(), b as usize, c, &mut rows);
    let deg = size as usize;
    let add_shifted = |acc: &mut Vec<BigInt>, src: &[BigInt], shift: usize| {
        for (d, v) in src.iter().enumerate() {
            if !v.is_zero() {
                acc[d + shift] += v;
            }
        }
    };
    // gf[r] = generating function of the rows placed so far, last row r.
    let mut gf: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut p = vec![BigInt::zero(); deg + 1];
            p[r.iter().sum::<u32>() as usize] = BigInt::one();
            p
        })
        .collect();
    for _ in 1..a {
        let mut next = vec![vec![BigInt::zero(); deg + 1]; rows.len()];
        for (ri, r) in rows.iter().enumerate() {
            let w = r.iter().sum::<u32>() as usize;
            for (pi, p) in rows.iter().enumerate() {
                if r.iter().zip(p).all(|(x, y)| x <= y) {
                    let src = gf[pi].clone();
                    add_shifted(&mut next[ri], &src[..deg + 1 - w], w);
                }
            }
        }
        gf = next;
    }
    let mut total = vec![BigInt::zero(); deg + 1];
    for p in &gf {
        add_shifted(&mut total, p, 0);
    }
    while total.len() > 1 && total.last().is_some_and(|c| c.is_zero()) {
        total.pop();
    }
    Ok(total)
}

/// `q`-polynomial in canonical text: `1 + q + 2*q^2`.
pub fn q_poly_string(coeffs: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{d}"),
        };
        parts.push(match (d, c.is_one()) {
            (0, _) => c.to_string(),
            (_, true) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `N(λ) = ∏_{i<j} (b_j − b_i)/(j − i)` together with
/// `λ_i = b_{k+1−i} − k + i`.
pub fn n_lambda(b: &[u32]) -> Result<(BigInt, Vec<i64>)> {
    if b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("b_1 < b_2 < … < b_k must increase strictly".into()));
    }
    let k = b.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        for j in i + 1..k {
            num *= b[j] - b[i];
            den *= j - i;
        }
    }
    let lambda = (1..=k).map(|i| b[k - i] as i64 - k as i64 + i as i64).collect();
    Ok((exact_quotient(num, den), lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{count_systems, enumerate_systems};

    #[test]
    fn macmahon_small_values() {
        assert_eq!(macmahon(1, 1, 1), BigInt::from(2));
        assert_eq!(macmahon(1, 1, 2), BigInt::from(3));
        assert_eq!(macmahon(2, 2, 2), BigInt::from(20));
        assert_eq!(macmahon(0, 3, 3), BigInt::from(1));
    }

    #[test]
    fn q_analogue_small_values() {
        assert_eq!(q_poly_string(&macmahon_q(1, 1, 1).unwrap()), "1 + q");
        assert_eq!(q_poly_string(&macmahon_q(1, 1, 2).unwrap()), "1 + q + q^2");
        assert_eq!(q_poly_string(&macmahon_q(2, 2, 1).unwrap()), "1 + q + 2*q^2 + q^3 + q^4");
        assert!(macmahon_q(4, 4, 4).is_err());
    }

    #[test]
    fn trapezoid_layouts() {
        let c = region_to_config(&RegionSpec::Trapezoid(vec![1, 5, 3, 2])).unwrap();
        let cols: Vec<u32> = c.b.iter().map(|p| p.col).collect();
        assert_eq!(cols, [2, 7, 10, 12]);
        assert_eq!(n_lambda(&cols).unwrap().0, count_systems(&c));
        assert_eq!(n_lambda(&[1, 3]).unwrap().0, BigInt::from(2));
        assert_eq!(n_lambda(&[1, 2, 3]).unwrap().0, BigInt::from(1));
        assert!(n_lambda(&[2, 2]).is_err());
    }

    #[test]
    fn phi_round_trips_on_the_small_hexagon() {
        let r = RegionSpec::Hexagon(1, 1, 2);
        let c = region_to_config(&r).unwrap();
        let systems = enumerate_systems(&c);
        let tilings: Vec<Tiling> = systems.iter().map(|s| phi(s, &r).unwrap()).collect();
        assert_eq!(tilings.len(), 3);
        for (s, t) in systems.iter().zip(&tilings) {
            assert_eq!(&phi_inv(t).unwrap(), s);
            assert_eq!(Tiling::from_json(&t.to_json()).unwrap(), *t);
        }
        assert_ne!(tilings[0], tilings[1]);
    }

    #[test]
    fn empty_system_is_all_yellow() {
        let inst = Instance::from(&Config::custom(2, 3, vec![], vec![]).unwrap());
        let r = RegionSpec::Custom(inst);
        let t = phi(&PathSystem::default(), &r).unwrap();
        assert_eq!(t.count(Orient::Y), 6);
        assert_eq!(t.lozenges.len(), 6);
    }

    #[test]
    fn overlapping_tiling_is_rejected() {
        let r = RegionSpec::Hexagon(1, 1, 1);
        let c = region_to_config(&r).unwrap();
        let mut t = phi(&enumerate_systems(&c)[0], &r).unwrap();
        t.lozenges[0] = t.lozenges[1];
        assert!(phi_inv(&t).is_err());
    }

    #[test]
    fn parallelogram_counts_from_the_bottom() {
        let r = RegionSpec::Parallelogram { a: vec![1, 2], b: vec![1, 3], m: 2, l: None };
        let c = region_to_config(&r).unwrap();
        assert_eq!(count_systems(&c), BigInt::from(2));
        let fig = RegionSpec::Parallelogram { a: vec![1, 2, 3, 5], b: vec![2, 6, 7, 9], m: 5, l: Some(5) };
        let c = region_to_config(&fig).unwrap();
        assert_eq!((c.m, c.n), (9, 5));
        assert!(count_systems(&c) > BigInt::zero());
    }

    #[test]
    fn region_json_forms() {
        let r: RegionSpec = serde_json::from_str(r#"{"hexagon":[2,2,2]}"#).unwrap();
        assert_eq!(r, RegionSpec::Hexagon(2, 2, 2));
        let r: RegionSpec = serde_json::from_str(r#"{"trapezoid":[1,5,3,2]}"#).unwrap();
        assert_eq!(r, RegionSpec::Trapezoid(vec![1, 5, 3, 2]));
        let r: RegionSpec = serde_json::from_str(r#"{"parallelogram":{"a":[1,2],"b":[1,3],"m":2}}"#).unwrap();
        assert!(matches!(r, RegionSpec::Parallelogram { l: None, .. }));
    }
}
