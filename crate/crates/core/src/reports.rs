//! Structured reports behind the command-line subcommands. Every report
//! serializes to canonical JSON (sorted keys) so equal runs give equal bytes.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{ratfn_equal, Family, RatFn, VarId};
use crate::error::{Error, Result};
use crate::lattice::{count_systems, general_config, Config, GridPoint, Instance, ShapeTag};
use crate::partition::{F_enum, F_horizontal_closed, F_lgv, F_single_dp, F_single_modular, LgvMode, SymbolTable};
use crate::regions::{macmahon, macmahon_q, n_lambda, q_poly_string, region_to_config, RegionSpec, MACMAHON_Q_BOUND};
use crate::symmetry::{
    check_config, check_symmetric_random, verify_theorem, CheckOptions, SymFamily, SymReport, Verdict,
};

/// Pretty JSON with keys in sorted order.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enum,
    Dp,
    Modular,
    Lgv,
    Closed,
}

pub const ALL_METHODS: [Method; 5] = [Method::Enum, Method::Dp, Method::Modular, Method::Lgv, Method::Closed];

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enum" => Ok(Method::Enum),
            "dp" => Ok(Method::Dp),
            "modular" => Ok(Method::Modular),
            "lgv" => Ok(Method::Lgv),
            "closed" => Ok(Method::Closed),
            _ => Err(Error::Input(format!("unknown method {s:?}; expected enum, dp, modular, lgv or closed"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Enum => "enum",
            Method::Dp => "dp",
            Method::Modular => "modular",
            Method::Lgv => "lgv",
            Method::Closed => "closed",
        };
        f.write_str(s)
    }
}

/// Largest path rectangle (cells) the single-path methods accept in a
/// crosscheck. Numerators grow like `d^{2(d−1)}` on a `d × d` square.
pub const DEFAULT_SINGLE_CELLS: u64 = 20;

fn single_path_rectangle(c: &Config) -> Result<(GridPoint, GridPoint)> {
    if c.k() != 1 {
        return Err(Error::Input(format!("the single-path methods need k = 1, not k = {}", c.k())));
    }
    Ok((c.a[0], c.b[0]))
}

/// `F` for a one-path instance `(r0, c0) → (r1, c1)` by the recurrence or
/// the modular route, computed on the shifted rectangle and renamed back.
fn single_path(c: &Config, modular: bool) -> Result<RatFn> {
    let (a, b) = single_path_rectangle(c)?;
    if b.row > a.row || b.col < a.col {
        return Ok(RatFn::zero());
    }
    let width = b.col - a.col + 1;
    let table = SymbolTable::new(a.row, width);
    let f = if modular { F_single_modular(b.row, width, &table)? } else { F_single_dp(b.row, width, &table)? };
    let shift = a.col - 1;
    Ok(f.map_vars(|v| match v.family {
        Family::Y => VarId::y(v.index + shift),
        _ => v,
    }))
}

/// `F_{A,B}` by one method.
pub fn compute(c: &Config, method: Method) -> Result<RatFn> {
    match method {
        Method::Enum => Ok(F_enum(c)),
        Method::Dp => single_path(c, false),
        Method::Modular => single_path(c, true),
        Method::Lgv => F_lgv(c, LgvMode::Identity),
        Method::Closed => F_horizontal_closed(c),
    }
}

/// Why `method` does not apply to `c`, if it does not.
pub fn inapplicable(c: &Config, method: Method, single_cells: u64) -> Option<String> {
    match method {
        Method::Enum => None,
        Method::Dp | Method::Modular => match single_path_rectangle(c) {
            Err(e) => Some(e.to_string()),
            Ok((a, b)) => {
                let cells = (a.row.saturating_sub(b.row) + 1) as u64 * (b.col.saturating_sub(a.col) + 1) as u64;
                (cells > single_cells).then(|| format!("path rectangle has {cells} cells, above {single_cells}"))
            }
        },
        Method::Lgv => None,
        Method::Closed => {
            (c.shape != ShapeTag::HorizontalCut).then(|| format!("needs a horizontal-cut instance, not {}", c.shape))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub method: Method,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailingPair {
    pub first: Method,
    pub second: Method,
    pub first_value: String,
    pub second_value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub instance: Instance,
    pub systems: String,
    pub methods: Vec<MethodResult>,
    pub skipped: Vec<Skipped>,
    pub agree: bool,
    pub failing_pair: Option<FailingPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct CrosscheckOptions {
    pub single_cells: u64,
    /// Record wall-clock time per method (makes the report non-reproducible).
    pub timings: bool,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        CrosscheckOptions { single_cells: DEFAULT_SINGLE_CELLS, timings: false }
    }
}

/// Runs every applicable method and compares all pairs; the first
/// disagreeing pair in method order is reported.
pub fn crosscheck(c: &Config, opts: &CrosscheckOptions) -> CrosscheckReport {
    let mut values: Vec<(Method, RatFn)> = Vec::new();
    let mut methods = Vec::new();
    let mut skipped = Vec::new();
    for m in ALL_METHODS {
        if let Some(reason) = inapplicable(c, m, opts.single_cells) {
            skipped.push(Skipped { method: m, reason });
            continue;
        }
        let t0 = Instant::now();
        match compute(c, m) {
            Ok(v) => {
                let seconds = opts.timings.then(|| t0.elapsed().as_secs_f64());
                methods.push(MethodResult { method: m, value: v.to_string(), seconds });
                values.push((m, v));
            }
            Err(e) => skipped.push(Skipped { method: m, reason: e.to_string() }),
        }
    }
    let mut failing_pair = None;
    'outer: for i in 0..values.len() {
        for j in i + 1..values.len() {
            if !ratfn_equal(&values[i].1, &values[j].1) {
                failing_pair = Some(FailingPair {
                    first: values[i].0,
                    second: values[j].0,
                    first_value: values[i].1.to_string(),
                    second_value: values[j].1.to_string(),
                });
                break 'outer;
            }
        }
    }
    let systems = count_systems(c);
    let note = systems
        .is_zero()
        .then(|| "vacuously true: no non-intersecting system exists, so F = 0 and every symmetry holds".to_string());
    CrosscheckReport {
        instance: Instance::from(c),
        systems: systems.to_string(),
        methods,
        skipped,
        agree: failing_pair.is_none(),
        failing_pair,
        note,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub instance: Instance,
    pub systems: String,
    pub reports: Vec<SymReport>,
    pub symmetric: bool,
}

/// Checks `family`, or every family the instance's theorem covers (both
/// `x` and `y` for custom instances).
pub fn verify(c: &Config, family: Option<SymFamily>, opts: &CheckOptions) -> Result<VerifyReport> {
    let reports = match family {
        Some(f) => vec![check_config(c, f, opts)?],
        None if c.shape == ShapeTag::Custom => {
            vec![check_config(c, SymFamily::X, opts)?, check_config(c, SymFamily::Y, opts)?]
        }
        None => verify_theorem(c, opts)?,
    };
    Ok(VerifyReport {
        instance: Instance::from(c),
        systems: count_systems(c).to_string(),
        symmetric: reports.iter().all(SymReport::holds),
        reports,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Formula {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_analogue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub region: RegionSpec,
    pub instance: Instance,
    pub systems: String,
    pub formula: Option<Formula>,
    pub agree: bool,
}

/// Tilings of `r` by enumeration, next to the product formula when one exists.
pub fn count_region(r: &RegionSpec) -> Result<CountReport> {
    let c = region_to_config(r)?;
    let systems = count_systems(&c);
    let formula = match r {
        RegionSpec::Hexagon(a, b, cc) => {
            let q = (*a as u64 * *b as u64 * *cc as u64 <= MACMAHON_Q_BOUND)
                .then(|| macmahon_q(*a, *b, *cc).map(|p| q_poly_string(&p)))
                .transpose()?;
            Some(Formula {
                name: "macmahon".into(),
                value: macmahon(*a, *b, *cc).to_string(),
                q_analogue: q,
                lambda: None,
            })
        }
        RegionSpec::Trapezoid(_) => {
            let b: Vec<u32> = c.b.iter().map(|p| p.col).collect();
            let (v, lambda) = n_lambda(&b)?;
            Some(Formula { name: "n_lambda".into(), value: v.to_string(), q_analogue: None, lambda: Some(lambda) })
        }
        _ => None,
    };
    let agree = formula.as_ref().is_none_or(|f| f.value == systems.to_string());
    Ok(CountReport { region: r.clone(), instance: Instance::from(&c), systems: systems.to_string(), formula, agree })
}

/// Whether `c` is exactly the column-multiplicity layout its own column
/// counts describe.
pub fn matches_general_layout(c: &Config) -> bool {
    if c.k() == 0 {
        return false;
    }
    let mut a = vec![0u32; c.n as usize];
    let mut b = vec![0u32; c.n as usize];
    for p in &c.a {
        a[p.col as usize - 1] += 1;
    }
    for p in &c.b {
        b[p.col as usize - 1] += 1;
    }
    general_config(&a, &b, c.m).is_ok_and(|g| g.a == c.a && g.b == c.b)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchEntry {
    pub instance: Instance,
    pub systems: String,
    pub general_layout: bool,
    pub x: SymReport,
    pub y: SymReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub entries: Vec<SearchEntry>,
    pub symmetric_in_x: usize,
    pub symmetric_in_y: usize,
    /// Entries with a general layout that were nonetheless refuted in `x`.
    pub layout_violations: Vec<usize>,
}

/// Randomized `x`- and `y`-symmetry checks on each configuration.
pub fn search_configs(configs: &[Config], opts: &CheckOptions) -> Result<Vec<SearchEntry>> {
    configs
        .iter()
        .map(|c| {
            Ok(SearchEntry {
                instance: Instance::from(c),
                systems: count_systems(c).to_string(),
                general_layout: matches_general_layout(c),
                x: check_symmetric_random(c, SymFamily::X, (1, c.m), opts.trials, opts.prime, opts.seed)?,
                y: check_symmetric_random(c, SymFamily::Y, (1, c.n), opts.trials, opts.prime, opts.seed)?,
            })
        })
        .collect()
}

/// Draws up to `samples` configurations with at least one system: `A` and
/// `B` are uniform `k`-subsets of the grid, ordered by column, then row.
pub fn sample_configs(m: u32, n: u32, k: u32, samples: usize, seed: u64) -> Result<Vec<Config>> {
    let cells: Vec<GridPoint> = (1..=n).flat_map(|j| (1..=m).map(move |i| GridPoint::new(i, j))).collect();
    if k == 0 || k as usize > cells.len() {
        return Err(Error::Input(format!("k must lie in 1..={}", cells.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let order = |p: &GridPoint| (p.col, p.row);
    for _ in 0..samples.saturating_mul(200) {
        if out.len() == samples {
            break;
        }
        let mut a: Vec<GridPoint> = cells.choose_multiple(&mut rng, k as usize).copied().collect();
        let mut b: Vec<GridPoint> = cells.choose_multiple(&mut rng, k as usize).copied().collect();
        a.sort_by_key(order);
        b.sort_by_key(order);
        let c = Config::custom(m, n, a, b)?;
        if count_systems(&c) > BigInt::zero() {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn summarize_search(m: u32, n: u32, k: u32, opts: &CheckOptions, entries: Vec<SearchEntry>) -> SearchReport {
    let holds = |r: &SymReport| r.verdict != Verdict::Asymmetric;
    SearchReport {
        m,
        n,
        k,
        seed: opts.seed,
        trials: opts.trials,
        prime: opts.prime,
        symmetric_in_x: entries.iter().filter(|e| holds(&e.x)).count(),
        symmetric_in_y: entries.iter().filter(|e| holds(&e.y)).count(),
        layout_violations: entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.general_layout && !holds(&e.x))
            .map(|(i, _)| i)
            .collect(),
        entries,
    }
}

/// Random search for symmetric instances beyond the known layouts.
pub fn search(m: u32, n: u32, k: u32, samples: usize, opts: &CheckOptions) -> Result<SearchReport> {
    let configs = sample_configs(m, n, k, samples, opts.seed)?;
    Ok(summarize_search(m, n, k, opts, search_configs(&configs, opts)?))
}

/// Parses `x=1,1,1;y=0,0,0`. A single value is broadcast to the whole
/// family; values may be integers or fractions such as `3/2`.
pub fn parse_spec(spec: &str, m: u32, n: u32) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let mut x = None;
    let mut y = None;
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, vals) =
            part.split_once('=').ok_or_else(|| Error::Input(format!("expected x=... or y=..., got {part:?}")))?;
        let vals: Vec<BigRational> = vals
            .split(',')
            .map(|v| v.trim().parse::<BigRational>().map_err(|_| Error::Input(format!("bad value {v:?}"))))
            .collect::<Result<_>>()?;
        let (slot, len) = match name.trim() {
            "x" => (&mut x, m),
            "y" => (&mut y, n),
            other => return Err(Error::Input(format!("unknown family {other:?} in --spec"))),
        };
        let vals = match vals.len() {
            1 => vec![vals[0].clone(); len as usize],
            l if l == len as usize => vals,
            l => return Err(Error::Input(format!("{name} needs 1 or {len} values, got {l}"))),
        };
        *slot = Some(vals);
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Input("--spec must give both x and y".into())),
    }
}
