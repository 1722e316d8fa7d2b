//! Grid configurations and Up-Right lattice paths.
//!
//! Coordinates follow matrix convention: `row` grows downward, `col` grows to
//! the right, both 1-based. An Up step decreases `row`, a Right step
//! increases `col`. Paths are vertex sequences, and "non-intersecting" means
//! vertex-disjoint.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::det_bigint;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct GridPoint {
    pub row: u32,
    pub col: u32,
}

impl GridPoint {
    pub const fn new(row: u32, col: u32) -> Self {
        GridPoint { row, col }
    }
}

impl From<[u32; 2]> for GridPoint {
    fn from([row, col]: [u32; 2]) -> Self {
        GridPoint { row, col }
    }
}

impl From<GridPoint> for [u32; 2] {
    fn from(p: GridPoint) -> Self {
        [p.row, p.col]
    }
}

impl From<(u32, u32)> for GridPoint {
    fn from((row, col): (u32, u32)) -> Self {
        GridPoint { row, col }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Lattice steps. `Right < Up` fixes the lexicographic order of paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Right,
    Up,
}

impl Step {
    pub fn apply(self, p: GridPoint) -> GridPoint {
        match self {
            Step::Right => GridPoint::new(p.row, p.col + 1),
            Step::Up => GridPoint::new(p.row - 1, p.col),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    vertices: Vec<GridPoint>,
}

impl Path {
    /// Validates that consecutive vertices differ by one Up or Right step.
    pub fn new(vertices: Vec<GridPoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Input("a path needs at least one vertex".into()));
        }
        for w in vertices.windows(2) {
            let (p, q) = (w[0], w[1]);
            let right = q.row == p.row && q.col == p.col + 1;
            let up = q.col == p.col && q.row + 1 == p.row;
            if !(right || up) {
                return Err(Error::Input(format!("{p} -> {q} is not an Up or Right step")));
            }
        }
        Ok(Path { vertices })
    }

    pub fn from_steps(start: GridPoint, steps: &[Step]) -> Self {
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        vertices.push(start);
        let mut cur = start;
        for &s in steps {
            cur = s.apply(cur);
            vertices.push(cur);
        }
        Path { vertices }
    }

    pub fn vertices(&self) -> &[GridPoint] {
        &self.vertices
    }

    pub fn start(&self) -> GridPoint {
        self.vertices[0]
    }

    pub fn end(&self) -> GridPoint {
        *self.vertices.last().unwrap()
    }

    pub fn steps(&self) -> Vec<Step> {
        self.vertices.windows(2).map(|w| if w[1].col > w[0].col { Step::Right } else { Step::Up }).collect()
    }

    pub fn step_string(&self) -> String {
        self.steps().into_iter().map(Step::letter).collect()
    }
}

/// A tuple of paths, `paths[i]` from `A_i` to `B_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PathSystem {
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.paths.iter().flat_map(|p| p.vertices()).all(|v| seen.insert(*v))
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Whether this is a system for `c` with the identity matching.
    pub fn fits(&self, c: &Config) -> bool {
        self.paths.len() == c.k()
            && self
                .paths
                .iter()
                .zip(c.a.iter().zip(&c.b))
                .all(|(p, (a, b))| p.start() == *a && p.end() == *b && p.vertices().iter().all(|v| c.in_bounds(*v)))
            && self.is_vertex_disjoint()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    #[serde(rename = "hexagon")]
    Hexagon,
    #[serde(rename = "hcut")]
    HorizontalCut,
    #[serde(rename = "vcut")]
    VerticalCut,
    #[serde(rename = "general")]
    General,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ShapeTag::Hexagon => "hexagon",
            ShapeTag::HorizontalCut => "hcut",
            ShapeTag::VerticalCut => "vcut",
            ShapeTag::General => "general",
            ShapeTag::Custom => "custom",
        };
        write!(f, "{s}")
    }
}

/// A problem instance: an `m × n` grid with ordered start and end points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub m: u32,
    pub n: u32,
    pub a: Vec<GridPoint>,
    pub b: Vec<GridPoint>,
    pub shape: ShapeTag,
}

impl Config {
    /// An unconstrained instance; only bounds and `|A| = |B|` are checked.
    pub fn custom(m: u32, n: u32, a: Vec<GridPoint>, b: Vec<GridPoint>) -> Result<Self> {
        let c = Config { m, n, a, b, shape: ShapeTag::Custom };
        c.check_bounds()?;
        Ok(c)
    }

    /// An instance tagged with `shape`, validated against that shape's layout.
    pub fn with_shape(m: u32, n: u32, a: Vec<GridPoint>, b: Vec<GridPoint>, shape: ShapeTag) -> Result<Self> {
        let mut c = Config::custom(m, n, a, b)?;
        c.shape = shape;
        c.validate_shape()?;
        Ok(c)
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn in_bounds(&self, p: GridPoint) -> bool {
        (1..=self.m).contains(&p.row) && (1..=self.n).contains(&p.col)
    }

    fn check_bounds(&self) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(Error::Input(format!("|A| = {} but |B| = {}", self.a.len(), self.b.len())));
        }
        for &p in self.a.iter().chain(&self.b) {
            if !self.in_bounds(p) {
                return Err(Error::OutOfBounds { row: p.row, col: p.col, m: self.m, n: self.n });
            }
        }
        Ok(())
    }

    /// Re-derives the shape parameters from the endpoints and checks that the
    /// corresponding constructor reproduces them.
    pub fn validate_shape(&self) -> Result<()> {
        let k = self.k() as u32;
        let mismatch = |what: &str| Error::Hypothesis(format!("endpoints do not form a {what} layout"));
        let rebuilt = match self.shape {
            ShapeTag::Custom => return Ok(()),
            ShapeTag::Hexagon => {
                if k == 0 || self.m < k || self.n <= k {
                    return Err(mismatch("hexagon"));
                }
                hexagon_config(self.m - k, self.n - k, k)?
            }
            ShapeTag::HorizontalCut => {
                if self.m < k {
                    return Err(mismatch("horizontal-cut"));
                }
                let bs: Vec<u32> = self.b.iter().map(|p| p.col).collect();
                horizontal_cut_config(self.m - k, &bs, self.n)?
            }
            ShapeTag::VerticalCut => {
                if self.m < k {
                    return Err(mismatch("vertical-cut"));
                }
                let a: Vec<u32> = self.a.iter().map(|p| p.row).collect();
                let b: Vec<u32> = self.b.iter().map(|p| p.row).collect();
                vertical_cut_config(&a, &b, k, self.m - k, self.n)?
            }
            ShapeTag::General => {
                let mut av = vec![0u32; self.n as usize];
                let mut bv = vec![0u32; self.n as usize];
                for p in &self.a {
                    av[p.col as usize - 1] += 1;
                }
                for p in &self.b {
                    bv[p.col as usize - 1] += 1;
                }
                general_config(&av, &bv, self.m)?
            }
        };
        if rebuilt.m != self.m || rebuilt.n != self.n || rebuilt.a != self.a || rebuilt.b != self.b {
            return Err(mismatch(&self.shape.to_string()));
        }
        Ok(())
    }

    pub fn with_tag(mut self, shape: ShapeTag) -> Self {
        self.shape = shape;
        self
    }
}

/// The JSON interchange form of a [`Config`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub m: u32,
    pub n: u32,
    #[serde(rename = "A")]
    pub a: Vec<GridPoint>,
    #[serde(rename = "B")]
    pub b: Vec<GridPoint>,
    #[serde(default = "custom_tag")]
    pub shape: ShapeTag,
}

fn custom_tag() -> ShapeTag {
    ShapeTag::Custom
}

impl From<&Config> for Instance {
    fn from(c: &Config) -> Self {
        Instance { m: c.m, n: c.n, a: c.a.clone(), b: c.b.clone(), shape: c.shape }
    }
}

impl TryFrom<Instance> for Config {
    type Error = Error;

    fn try_from(i: Instance) -> Result<Config> {
        Config::with_shape(i.m, i.n, i.a, i.b, i.shape)
    }
}

impl Config {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&Instance::from(self)).expect("instance serializes")
    }

    pub fn from_json(s: &str) -> Result<Config> {
        let inst: Instance = serde_json::from_str(s)?;
        inst.try_into()
    }
}

/// The instance whose systems biject with tilings of the `a × b × c` hexagon:
/// `m = a + c`, `n = b + c`, `A_k = (a + k, 1)`, `B_k = (k, b + c)`.
pub fn hexagon_config(a: u32, b: u32, c: u32) -> Result<Config> {
    if b < 1 || c < 1 {
        return Err(Error::Hypothesis("hexagon needs b >= 1 and c >= 1".into()));
    }
    Ok(Config {
        m: a + c,
        n: b + c,
        a: (1..=c).map(|k| GridPoint::new(a + k, 1)).collect(),
        b: (1..=c).map(|k| GridPoint::new(k, b + c)).collect(),
        shape: ShapeTag::Hexagon,
    })
}

/// Starts `A_i = (a + i, 1)` filling the bottom of column 1, ends
/// `B_i = (1, b_i)` for strictly increasing columns.
pub fn horizontal_cut_config(a: u32, b_cols: &[u32], n: u32) -> Result<Config> {
    let k = b_cols.len() as u32;
    if b_cols.first().is_some_and(|&b| b < 1) || b_cols.last().is_some_and(|&b| b > n) {
        return Err(Error::Hypothesis(format!("need 1 <= b_1 and b_k <= n = {n}")));
    }
    if b_cols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Hypothesis("end columns b_1 < b_2 < ... < b_k must increase strictly".into()));
    }
    Ok(Config {
        m: a + k,
        n,
        a: (1..=k).map(|i| GridPoint::new(a + i, 1)).collect(),
        b: b_cols.iter().map(|&b| GridPoint::new(1, b)).collect(),
        shape: ShapeTag::HorizontalCut,
    })
}

/// Starts `A_i = (a_i, 1)` in the first column, ends `B_i = (b_i, m)` in the
/// last column, rows `1..=k+ℓ`.
pub fn vertical_cut_config(a_rows: &[u32], b_rows: &[u32], k: u32, l: u32, m: u32) -> Result<Config> {
    if a_rows.len() != k as usize || b_rows.len() != k as usize {
        return Err(Error::Hypothesis(format!("need exactly k = {k} start and end rows")));
    }
    if m < 1 {
        return Err(Error::Hypothesis("need m >= 1".into()));
    }
    let h = k + l;
    for (name, rows) in [("a", a_rows), ("b", b_rows)] {
        if rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Hypothesis(format!("{name}_1 < ... < {name}_k must increase strictly")));
        }
        if rows.iter().any(|&r| r < 1 || r > h) {
            return Err(Error::Hypothesis(format!("{name} rows must lie in [1, k + l] = [1, {h}]")));
        }
    }
    Ok(Config {
        m: h,
        n: m,
        a: a_rows.iter().map(|&r| GridPoint::new(r, 1)).collect(),
        b: b_rows.iter().map(|&r| GridPoint::new(r, m)).collect(),
        shape: ShapeTag::VerticalCut,
    })
}

/// Column-multiplicity layout: `a_i` starts at the bottom of column `i`,
/// `b_i` ends at the top of column `i`; both ordered left to right and,
/// within a column, top to bottom.
pub fn general_config(a_vec: &[u32], b_vec: &[u32], m: u32) -> Result<Config> {
    if a_vec.len() != b_vec.len() {
        return Err(Error::Hypothesis("a and b must both have one entry per column".into()));
    }
    let n = a_vec.len() as u32;
    let (sa, sb): (u32, u32) = (a_vec.iter().sum(), b_vec.iter().sum());
    if sa != sb {
        return Err(Error::Hypothesis(format!("sum a_i = {sa} differs from sum b_i = {sb}")));
    }
    if m < 1 || n < 1 || sa < 1 {
        return Err(Error::Hypothesis("need m, n, k >= 1".into()));
    }
    if a_vec.iter().chain(b_vec).any(|&v| v > m) {
        return Err(Error::Hypothesis(format!("column multiplicities must lie in [0, m] = [0, {m}]")));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, (&ai, &bi)) in a_vec.iter().zip(b_vec).enumerate() {
        let col = i as u32 + 1;
        a.extend((m - ai + 1..=m).map(|r| GridPoint::new(r, col)));
        b.extend((1..=bi).map(|r| GridPoint::new(r, col)));
    }
    Ok(Config { m, n, a, b, shape: ShapeTag::General })
}

/// Starts moved to `C_i = (m, i)` along the bottom row; same ends.
pub fn bottom_row_starts(c: &Config) -> Result<Config> {
    if c.shape != ShapeTag::HorizontalCut {
        return Err(Error::Input("bottom-row starts are defined for horizontal-cut instances".into()));
    }
    let starts = (1..=c.k() as u32).map(|i| GridPoint::new(c.m, i)).collect();
    Config::custom(c.m, c.n, starts, c.b.clone())
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of Up-Right paths from `a` to `b`.
pub fn path_count(a: GridPoint, b: GridPoint) -> BigInt {
    if b.row > a.row || b.col < a.col {
        return BigInt::zero();
    }
    let up = (a.row - b.row) as u64;
    let right = (b.col - a.col) as u64;
    binomial(up + right, up)
}

fn check_point(p: GridPoint, m: u32, n: u32) -> Result<()> {
    if (1..=m).contains(&p.row) && (1..=n).contains(&p.col) {
        Ok(())
    } else {
        Err(Error::OutOfBounds { row: p.row, col: p.col, m, n })
    }
}

/// All Up-Right paths `a → b` in lexicographic order of their step strings.
pub fn enumerate_paths(a: GridPoint, b: GridPoint, m: u32, n: u32) -> Result<Vec<Path>> {
    check_point(a, m, n)?;
    check_point(b, m, n)?;
    let mut out = Vec::new();
    if b.row > a.row || b.col < a.col {
        return Ok(out);
    }
    let mut steps = Vec::new();
    fn go(cur: GridPoint, b: GridPoint, start: GridPoint, steps: &mut Vec<Step>, out: &mut Vec<Path>) {
        if cur == b {
            out.push(Path::from_steps(start, steps));
            return;
        }
        if cur.col < b.col {
            steps.push(Step::Right);
            go(Step::Right.apply(cur), b, start, steps, out);
            steps.pop();
        }
        if cur.row > b.row {
            steps.push(Step::Up);
            go(Step::Up.apply(cur), b, start, steps, out);
            steps.pop();
        }
    }
    go(a, b, a, &mut steps, &mut out);
    Ok(out)
}

/// Backtracking search over vertex-disjoint systems.
struct Search<'a> {
    m: u32,
    n: u32,
    starts: &'a [GridPoint],
    ends: &'a [GridPoint],
    occupied: Vec<bool>,
    /// Endpoint cells reserved for paths other than the one being placed.
    owner: Vec<Option<usize>>,
    paths: Vec<Vec<GridPoint>>,
}

impl<'a> Search<'a> {
    fn new(m: u32, n: u32, starts: &'a [GridPoint], ends: &'a [GridPoint]) -> Option<Self> {
        let mut owner = vec![None; (m * n) as usize];
        for (i, p) in starts.iter().chain(ends).enumerate() {
            let idx = ((p.row - 1) * n + p.col - 1) as usize;
            let path = i % starts.len();
            match owner[idx] {
                Some(o) if o != path => return None,
                _ => owner[idx] = Some(path),
            }
        }
        Some(Search {
            m,
            n,
            starts,
            ends,
            occupied: vec![false; (m * n) as usize],
            owner,
            paths: Vec::with_capacity(starts.len()),
        })
    }

    fn idx(&self, p: GridPoint) -> usize {
        ((p.row - 1) * self.n + p.col - 1) as usize
    }

    fn free_for(&self, p: GridPoint, path: usize) -> bool {
        let i = self.idx(p);
        !self.occupied[i] && self.owner[i].is_none_or(|o| o == path)
    }

    /// Whether path `j` can still reach its end through free cells.
    fn reachable(&self, j: usize) -> bool {
        let (a, b) = (self.starts[j], self.ends[j]);
        if b.row > a.row || b.col < a.col {
            return false;
        }
        let h = (a.row - b.row + 1) as usize;
        let w = (b.col - a.col + 1) as usize;
        // ok[r][c]: cell (a.row - r, a.col + c) reachable from a.
        let mut ok = vec![false; h * w];
        for r in 0..h {
            for c in 0..w {
                let p = GridPoint::new(a.row - r as u32, a.col + c as u32);
                if !self.free_for(p, j) {
                    continue;
                }
                ok[r * w + c] = (r == 0 && c == 0) || (r > 0 && ok[(r - 1) * w + c]) || (c > 0 && ok[r * w + c - 1]);
            }
        }
        ok[h * w - 1]
    }

    fn run<F: FnMut(&[Vec<GridPoint>])>(&mut self, visit: &mut F) {
        let i = self.paths.len();
        if i == self.starts.len() {
            visit(&self.paths);
            return;
        }
        let a = self.starts[i];
        if !self.free_for(a, i) || !self.reachable(i) {
            return;
        }
        let mut cur = vec![a];
        let ai = self.idx(a);
        self.occupied[ai] = true;
        self.extend(i, &mut cur, visit);
        self.occupied[ai] = false;
    }

    fn extend<F: FnMut(&[Vec<GridPoint>])>(&mut self, i: usize, cur: &mut Vec<GridPoint>, visit: &mut F) {
        let p = *cur.last().unwrap();
        let b = self.ends[i];
        if p == b {
            if (i + 1..self.starts.len()).all(|j| self.reachable(j)) {
                self.paths.push(cur.clone());
                self.run(visit);
                self.paths.pop();
            }
            return;
        }
        for step in [Step::Right, Step::Up] {
            let can = match step {
                Step::Right => p.col < b.col,
                Step::Up => p.row > b.row,
            };
            if !can {
                continue;
            }
            let q = step.apply(p);
            if q.row < 1 || q.col > self.n || q.row > self.m || !self.free_for(q, i) {
                continue;
            }
            let qi = self.idx(q);
            self.occupied[qi] = true;
            cur.push(q);
            self.extend(i, cur, visit);
            cur.pop();
            self.occupied[qi] = false;
        }
    }
}

/// Visits every vertex-disjoint system with `paths[i]: starts[i] → ends[i]`
/// in lexicographic order of `(path_1, path_2, …)`.
pub fn for_each_system_matching<F: FnMut(&[Vec<GridPoint>])>(
    m: u32,
    n: u32,
    starts: &[GridPoint],
    ends: &[GridPoint],
    mut visit: F,
) {
    if starts.is_empty() {
        visit(&[]);
        return;
    }
    if let Some(mut s) = Search::new(m, n, starts, ends) {
        s.run(&mut visit);
    }
}

pub fn for_each_system<F: FnMut(&[Vec<GridPoint>])>(c: &Config, visit: F) {
    for_each_system_matching(c.m, c.n, &c.a, &c.b, visit)
}

/// Every non-intersecting system for `c` with the identity matching.
pub fn enumerate_systems(c: &Config) -> Vec<PathSystem> {
    let mut out = Vec::new();
    for_each_system(c, |paths| {
        out.push(PathSystem { paths: paths.iter().map(|v| Path { vertices: v.clone() }).collect() })
    });
    out
}

/// `N(A, B)` by enumeration.
pub fn count_systems(c: &Config) -> BigInt {
    let mut count = 0u64;
    for_each_system(c, |_| count += 1);
    BigInt::from(count)
}

/// The binomial LGV determinant `det(#paths A_i → B_j)`.
pub fn count_systems_lgv(c: &Config) -> BigInt {
    let m: Vec<Vec<BigInt>> = c.a.iter().map(|&ai| c.b.iter().map(|&bj| path_count(ai, bj)).collect()).collect();
    det_bigint(&m).expect("square by construction")
}
