//! Exact and randomized checks that `F` is symmetric in the `x` or `y`
//! variables, with reproducible witnesses when it is not.
//!
//! Adjacent transpositions generate the symmetric group, so checking
//! `f = f∘(i i+1)` for every adjacent pair in a range decides symmetry there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{modp, Family, RatFn, VarId};
use crate::error::{Error, Result};
use crate::field::{self, Assignment, SystemCells};
use crate::lattice::{Config, ShapeTag};
use crate::partition::{other_matching, F_enum, LGV_MATCHING_CHECK_K};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: u32 = 20;
/// Exact checks run when `k·m·n` is at most this.
pub const DEFAULT_EXACT_KMN: u64 = 64;
/// ... and the grid has at most this many cells. A single path across a
/// `d × d` grid already has a numerator with `d^{2(d−1)}` terms.
pub const DEFAULT_EXACT_CELLS: u64 = 20;
/// Attempts at a pole-free assignment before giving up.
pub const SAMPLE_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymFamily {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    /// The joint list `(x_1, …, x_m, y_1, …, y_n)`; position `p ≤ m` is
    /// `x_p`, later positions are `y_{p−m}`.
    #[serde(rename = "xy")]
    Joint,
}

impl SymFamily {
    pub fn full_range(self, c: &Config) -> (u32, u32) {
        match self {
            SymFamily::X => (1, c.m),
            SymFamily::Y => (1, c.n),
            SymFamily::Joint => (1, c.m + c.n),
        }
    }
}

impl std::str::FromStr for SymFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(SymFamily::X),
            "y" | "Y" => Ok(SymFamily::Y),
            "xy" => Ok(SymFamily::Joint),
            _ => Err(Error::Input(format!("unknown variable family {s:?}; expected x or y"))),
        }
    }
}

impl std::fmt::Display for SymFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SymFamily::X => "x",
            SymFamily::Y => "y",
            SymFamily::Joint => "xy",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Symmetric,
    Asymmetric,
    ProbableSymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Randomized,
}

/// The assignment over `Z/p` at which `f` and its transpose differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The adjacent pair `(i, i+1)` of indices (positions, for the joint family).
    pub transposition: (u32, u32),
    pub prime: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymReport {
    pub family: SymFamily,
    pub index_range: (u32, u32),
    pub verdict: Verdict,
    pub mode: Mode,
    pub witness: Option<Witness>,
    pub trials: u32,
    pub seed: u64,
    /// Schwartz–Zippel degree bound used for the false-accept estimate.
    pub degree_bound: Option<u64>,
}

impl SymReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Asymmetric
    }
}

/// `f` with variables `i` and `i + 1` of `family` exchanged.
pub fn swap_vars(f: &RatFn, family: Family, i: u32) -> RatFn {
    f.swap_vars(VarId::new(family, i), VarId::new(family, i + 1))
}

fn joint_var(m: u32, pos: u32) -> VarId {
    if pos <= m {
        VarId::x(pos)
    } else {
        VarId::y(pos - m)
    }
}

/// `f` with joint positions `i` and `i + 1` exchanged.
fn swap_joint(f: &RatFn, m: u32, i: u32) -> RatFn {
    f.swap_vars(joint_var(m, i), joint_var(m, i + 1))
}

/// Highest `x` and `y` index occurring in `f`.
fn var_extent(f: &RatFn) -> (u32, u32) {
    let mut vars = f.num().vars();
    for (p, _) in f.den_factors() {
        vars.extend(p.vars());
    }
    let top = |fam: Family| vars.iter().filter(|v| v.family == fam).map(|v| v.index).max().unwrap_or(0);
    (top(Family::X), top(Family::Y))
}

fn random_assignment(rng: &mut ChaCha8Rng, p: u64, m: u32, n: u32) -> Assignment {
    Assignment { p, x: (0..m).map(|_| rng.gen_range(0..p)).collect(), y: (0..n).map(|_| rng.gen_range(0..p)).collect() }
}

fn eval_ratfn(f: &RatFn, a: &Assignment) -> Option<u64> {
    f.eval_mod(a.p, |v| match v.family {
        Family::X => a.x(v.index),
        Family::Y => a.y(v.index),
        Family::T => 0,
    })
    .ok()
}

/// Searches seeded assignments for a point where `f ≠ g`.
fn find_witness(f: &RatFn, g: &RatFn, transposition: (u32, u32), seed: u64) -> Option<Witness> {
    let (fm, fn_) = var_extent(f);
    let (gm, gn) = var_extent(g);
    let (m, n) = (fm.max(gm).max(1), fn_.max(gn).max(1));
    let p = modp::DEFAULT_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let a = random_assignment(&mut rng, p, m, n);
        if let (Some(lhs), Some(rhs)) = (eval_ratfn(f, &a), eval_ratfn(g, &a)) {
            if lhs != rhs {
                return Some(Witness { transposition, prime: p, x: a.x, y: a.y, lhs, rhs });
            }
        }
    }
    None
}

/// Symbolic check over adjacent transpositions `(i, i+1)`, `lo ≤ i < hi`.
///
/// For the joint family the `x` block is taken to end at the largest `x`
/// index occurring in `f`.
pub fn check_symmetric_exact(f: &RatFn, family: SymFamily, range: (u32, u32), seed: u64) -> SymReport {
    let (lo, hi) = range;
    let mut report = SymReport {
        family,
        index_range: range,
        verdict: Verdict::Symmetric,
        mode: Mode::Exact,
        witness: None,
        trials: 0,
        seed,
        degree_bound: None,
    };
    let m = var_extent(f).0;
    for i in lo..hi {
        let j = i + 1;
        let g = match family {
            SymFamily::X => swap_vars(f, Family::X, i),
            SymFamily::Y => swap_vars(f, Family::Y, i),
            SymFamily::Joint => swap_joint(f, m, i),
        };
        report.trials += 1;
        if f != &g {
            report.verdict = Verdict::Asymmetric;
            report.witness = find_witness(f, &g, (i, j), seed);
            break;
        }
    }
    report
}

/// Field-valued evaluation of `F` for one configuration.
enum Evaluator {
    Lgv,
    Systems(SystemCells),
}

impl Evaluator {
    fn for_config(c: &Config) -> Self {
        let lgv_ok = c.shape != ShapeTag::Custom || (c.k() <= LGV_MATCHING_CHECK_K && other_matching(c).is_none());
        if lgv_ok {
            Evaluator::Lgv
        } else {
            Evaluator::Systems(SystemCells::enumerate(c))
        }
    }

    fn eval(&self, c: &Config, a: &Assignment) -> field::FieldResult<u64> {
        match self {
            Evaluator::Lgv => field::lgv(c, a),
            Evaluator::Systems(s) => s.eval(a),
        }
    }
}

fn transposed(a: &Assignment, family: SymFamily, i: u32, j: u32) -> Assignment {
    let mut b = a.clone();
    match family {
        SymFamily::X => b.x.swap(i as usize - 1, j as usize - 1),
        SymFamily::Y => b.y.swap(i as usize - 1, j as usize - 1),
        SymFamily::Joint => {
            let m = a.x.len() as u32;
            let get = |b: &Assignment, pos: u32| if pos <= m { b.x(pos) } else { b.y(pos - m) };
            let (vi, vj) = (get(a, i), get(a, j));
            for (pos, v) in [(i, vj), (j, vi)] {
                if pos <= m {
                    b.x[pos as usize - 1] = v;
                } else {
                    b.y[(pos - m) as usize - 1] = v;
                }
            }
        }
    }
    b
}

/// A pole-free assignment, resampling only the offending coordinate of each
/// vanishing cell form.
fn pole_free(rng: &mut ChaCha8Rng, p: u64, m: u32, n: u32, family: SymFamily, range: (u32, u32)) -> Result<Assignment> {
    let mut a = random_assignment(rng, p, m, n);
    for _ in 0..SAMPLE_ATTEMPTS {
        let bad = std::iter::once(a.clone())
            .chain(transpositions(family, range).map(|(i, j)| transposed(&a, family, i, j)))
            .find_map(|b| b.first_pole(m, n));
        match bad {
            None => return Ok(a),
            Some(pole) => {
                // The transposed copies permute coordinates, so the offending
                // x may sit at a neighbouring index; resampling a y is the
                // same under every x-transposition.
                match family {
                    SymFamily::X => a.y[pole.col as usize - 1] = rng.gen_range(0..p),
                    _ => a.x[pole.row as usize - 1] = rng.gen_range(0..p),
                }
            }
        }
    }
    Err(Error::Sampling { attempts: SAMPLE_ATTEMPTS })
}

fn transpositions(_family: SymFamily, (lo, hi): (u32, u32)) -> impl Iterator<Item = (u32, u32)> {
    (lo..hi).map(|i| (i, i + 1))
}

/// `2·k·(m + n)`, a conservative bound on the total degree of numerator and
/// denominator.
pub fn degree_bound(c: &Config) -> u64 {
    2 * c.k() as u64 * (c.m + c.n) as u64
}

fn check_range(c: &Config, family: SymFamily, range: (u32, u32)) -> Result<()> {
    let (lo, hi) = range;
    let top = match family {
        SymFamily::X => c.m,
        SymFamily::Y => c.n,
        SymFamily::Joint => c.m + c.n,
    };
    if lo < 1 || hi > top || lo > hi {
        return Err(Error::Input(format!("index range ({lo},{hi}) is outside 1..={top} for {family}")));
    }
    Ok(())
}

/// Polynomial identity test over `Z/p`: each trial compares `F` at a random
/// assignment with `F` at every transposed assignment.
pub fn check_symmetric_random(
    c: &Config,
    family: SymFamily,
    range: (u32, u32),
    trials: u32,
    prime: u64,
    seed: u64,
) -> Result<SymReport> {
    if prime <= 1 << 30 || !modp::is_prime(prime) {
        return Err(Error::Input(format!("{prime} is not a prime above 2^30")));
    }
    if trials < 1 {
        return Err(Error::Input("need at least one trial".into()));
    }
    check_range(c, family, range)?;
    let eval = Evaluator::for_config(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SymReport {
        family,
        index_range: range,
        verdict: Verdict::ProbableSymmetric,
        mode: Mode::Randomized,
        witness: None,
        trials: 0,
        seed,
        degree_bound: Some(degree_bound(c)),
    };
    for _ in 0..trials {
        report.trials += 1;
        let a = pole_free(&mut rng, prime, c.m, c.n, family, range)?;
        let lhs = eval.eval(c, &a).expect("pole-free");
        for (i, j) in transpositions(family, range) {
            let b = transposed(&a, family, i, j);
            let rhs = eval.eval(c, &b).expect("pole-free");
            if lhs != rhs {
                report.verdict = Verdict::Asymmetric;
                report.witness = Some(Witness { transposition: (i, j), prime, x: a.x, y: a.y, lhs, rhs });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Size thresholds deciding between exact and randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub exact_kmn: u64,
    pub exact_cells: u64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { exact_kmn: DEFAULT_EXACT_KMN, exact_cells: DEFAULT_EXACT_CELLS }
    }
}

impl Thresholds {
    pub fn allows_exact(&self, c: &Config) -> bool {
        let cells = c.m as u64 * c.n as u64;
        c.k() as u64 * cells <= self.exact_kmn && cells <= self.exact_cells
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub trials: u32,
    pub prime: u64,
    pub seed: u64,
    pub thresholds: Thresholds,
    /// Force the symbolic check regardless of size.
    pub force_exact: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            trials: DEFAULT_TRIALS,
            prime: modp::DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            thresholds: Thresholds::default(),
            force_exact: false,
        }
    }
}

/// Symmetry of `F_{A,B}` for `c` in `family`, exact or randomized by size.
pub fn check_config(c: &Config, family: SymFamily, opts: &CheckOptions) -> Result<SymReport> {
    let range = family.full_range(c);
    check_range(c, family, range)?;
    if opts.force_exact || opts.thresholds.allows_exact(c) {
        Ok(check_symmetric_exact(&F_enum(c), family, range, opts.seed))
    } else {
        check_symmetric_random(c, family, range, opts.trials, opts.prime, opts.seed)
    }
}

/// The families the theorem for `c`'s shape asserts symmetry in.
pub fn theorem_families(shape: ShapeTag) -> Result<Vec<SymFamily>> {
    match shape {
        ShapeTag::HorizontalCut | ShapeTag::General => Ok(vec![SymFamily::X]),
        ShapeTag::VerticalCut => Ok(vec![SymFamily::Y]),
        ShapeTag::Hexagon => Ok(vec![SymFamily::X, SymFamily::Y]),
        ShapeTag::Custom => {
            Err(Error::Input("custom instances carry no theorem; use an explicit family check instead".into()))
        }
    }
}

/// Checks the symmetry the matching theorem asserts for `c`.
pub fn verify_theorem(c: &Config, opts: &CheckOptions) -> Result<Vec<SymReport>> {
    theorem_families(c.shape)?.into_iter().map(|fam| check_config(c, fam, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::lattice::{hexagon_config, GridPoint};

    fn cell(i: u32, j: u32) -> Poly {
        Poly::sum_of(VarId::x(i), VarId::y(j))
    }

    #[test]
    fn swap_moves_the_pole() {
        let f = RatFn::recip_poly(&cell(1, 1));
        assert_eq!(swap_vars(&f, Family::X, 1), RatFn::recip_poly(&cell(2, 1)));
    }

    #[test]
    fn diagonal_counterexample_is_asymmetric_with_witness() {
        let f = RatFn::recip_poly(&cell(1, 1)).div_poly(&cell(2, 2));
        let r = check_symmetric_exact(&f, SymFamily::X, (1, 2), DEFAULT_SEED);
        assert_eq!(r.verdict, Verdict::Asymmetric);
        let w = r.witness.expect("witness");
        assert_eq!(w.transposition, (1, 2));
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn hexagon_example_symmetries() {
        let c = hexagon_config(1, 1, 2).unwrap();
        let f = F_enum(&c);
        assert_eq!(check_symmetric_exact(&f, SymFamily::X, (1, 3), 1).verdict, Verdict::Symmetric);
        assert_eq!(check_symmetric_exact(&f, SymFamily::Y, (1, 3), 1).verdict, Verdict::Symmetric);
        assert_eq!(check_symmetric_exact(&f, SymFamily::Joint, (1, 6), 1).verdict, Verdict::Asymmetric);
        let reports = verify_theorem(&c, &CheckOptions::default()).unwrap();
        assert!(reports.iter().all(|r| r.verdict == Verdict::Symmetric));
    }

    #[test]
    fn randomized_agrees_with_exact() {
        let c = hexagon_config(2, 2, 2).unwrap();
        let r = check_symmetric_random(&c, SymFamily::X, (1, 4), 5, modp::DEFAULT_PRIME, 3).unwrap();
        assert_eq!(r.verdict, Verdict::ProbableSymmetric);
        let d = Config::custom(
            2,
            2,
            vec![GridPoint::new(1, 1), GridPoint::new(2, 2)],
            vec![GridPoint::new(1, 1), GridPoint::new(2, 2)],
        )
        .unwrap();
        let r = check_symmetric_random(&d, SymFamily::X, (1, 2), 5, modp::DEFAULT_PRIME, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Asymmetric);
    }

    #[test]
    fn custom_shape_has_no_theorem() {
        let d = Config::custom(1, 1, vec![], vec![]).unwrap();
        assert!(verify_theorem(&d, &CheckOptions::default()).is_err());
    }

    #[test]
    fn prime_must_be_large() {
        let c = hexagon_config(1, 1, 1).unwrap();
        assert!(check_symmetric_random(&c, SymFamily::X, (1, 2), 1, 101, 0).is_err());
    }
}
