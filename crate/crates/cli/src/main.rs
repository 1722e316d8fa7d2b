//! `lozsym`: partition functions of non-intersecting lattice paths, their
//! hidden symmetries, and the matching lozenge tilings.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lozsym_core::algebra::modp::DEFAULT_PRIME;
use lozsym_core::lattice::{enumerate_systems, Config, Instance};
use lozsym_core::partition::specialize;
use lozsym_core::regions::{phi, region_to_config, RegionSpec, Tiling};
use lozsym_core::render::{render_paths, render_tiling, Palette, DARK_GREEN, LIGHT_GREEN, YELLOW};
use lozsym_core::reports::{
    canonical_json, compute, count_region, crosscheck, parse_spec, search, verify, CrosscheckOptions, Method,
    DEFAULT_SINGLE_CELLS,
};
use lozsym_core::symmetry::{
    CheckOptions, SymFamily, Thresholds, DEFAULT_EXACT_CELLS, DEFAULT_EXACT_KMN, DEFAULT_SEED, DEFAULT_TRIALS,
};
use lozsym_core::Error;

const AFTER_HELP: &str = "\
Exit codes: 0 success or symmetry confirmed, 1 symmetry refuted or methods disagree, 2 invalid input.

Environment overrides:
  LOZSYM_EXACT_KMN     exact symmetry checks run when k*m*n is at most this (default 64)
  LOZSYM_EXACT_CELLS   ... and the grid has at most this many cells (default 20)
  LOZSYM_SINGLE_CELLS  largest path rectangle for the dp and modular methods in crosscheck (default 20)";

#[derive(Parser)]
#[command(name = "lozsym", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute F_{A,B} by one method, symbolically or at a point.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "enum")]
        method: String,
        /// Evaluate at a point, e.g. "x=1,1,1;y=0,0,0"; one value is broadcast.
        #[arg(long)]
        spec: Option<String>,
        /// Print a JSON report instead of bare text.
        #[arg(long)]
        json: bool,
    },
    /// Check symmetry in the x or y variables.
    Verify {
        #[command(flatten)]
        input: Input,
        /// x or y; defaults to the families the instance's theorem covers.
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        check: Check,
        /// Use the symbolic check regardless of size.
        #[arg(long)]
        exact: bool,
    },
    /// Count tilings of a region, next to its product formula.
    Count {
        #[command(flatten)]
        input: Input,
    },
    /// Write the tiling of one path system as JSON.
    Tile {
        #[command(flatten)]
        input: Input,
        /// Index of the system in enumeration order.
        #[arg(long, default_value_t = 0)]
        system: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a path diagram or a tiling as SVG.
    Render {
        #[command(flatten)]
        input: OptInput,
        /// Render this tiling JSON instead of a path diagram.
        #[arg(long, conflicts_with_all = ["instance", "region"])]
        tiling: Option<PathBuf>,
        /// Index of the system to draw; omit for a bare diagram.
        #[arg(long)]
        system: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = LIGHT_GREEN)]
        light_green: String,
        #[arg(long, default_value = DARK_GREEN)]
        dark_green: String,
        #[arg(long, default_value = YELLOW)]
        yellow: String,
    },
    /// Run every applicable method and compare the results.
    Crosscheck {
        #[command(flatten)]
        input: Input,
        /// Include per-method wall-clock times (not reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, env = "LOZSYM_SINGLE_CELLS", default_value_t = DEFAULT_SINGLE_CELLS)]
        single_cells: u64,
    },
    /// Randomly sample configurations and test both symmetries.
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        check: Check,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Instance JSON file, or a file holding {"region": {...}}.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Inline region, e.g. '{"hexagon":[2,2,2]}'.
    #[arg(long)]
    region: Option<String>,
}

#[derive(Args)]
#[group(multiple = false)]
struct OptInput {
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long)]
    region: Option<String>,
}

#[derive(Args)]
struct Check {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, env = "LOZSYM_EXACT_KMN", default_value_t = DEFAULT_EXACT_KMN)]
    exact_kmn: u64,
    #[arg(long, env = "LOZSYM_EXACT_CELLS", default_value_t = DEFAULT_EXACT_CELLS)]
    exact_cells: u64,
}

impl Check {
    fn options(&self, force_exact: bool) -> CheckOptions {
        CheckOptions {
            trials: self.trials,
            prime: self.prime,
            seed: self.seed,
            thresholds: Thresholds { exact_kmn: self.exact_kmn, exact_cells: self.exact_cells },
            force_exact,
        }
    }
}

/// An input error; reported on stderr with exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse_region(s: &str) -> Result<RegionSpec, Failure> {
    serde_json::from_str(s).map_err(|e| Failure(format!("bad region: {e}")))
}

/// The region an input describes; plain instances become custom regions.
fn load_region(instance: Option<&Path>, region: Option<&str>) -> Result<RegionSpec, Failure> {
    if let Some(r) = region {
        return parse_region(r);
    }
    let path = instance.ok_or_else(|| Failure("give --instance or --region".into()))?;
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if let Some(r) = value.get("region") {
        return serde_json::from_value(r.clone()).map_err(|e| Failure(format!("bad region: {e}")));
    }
    let inst: Instance = serde_json::from_value(value).map_err(|e| Failure(format!("bad instance: {e}")))?;
    Config::try_from(inst.clone())?;
    Ok(RegionSpec::Custom(inst))
}

fn load(input: &Input) -> Result<(RegionSpec, Config), Failure> {
    let r = load_region(input.instance.as_deref(), input.region.as_deref())?;
    let c = region_to_config(&r)?;
    Ok((r, c))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn nth_system(c: &Config, idx: usize) -> Result<lozsym_core::lattice::PathSystem, Failure> {
    let systems = enumerate_systems(c);
    let count = systems.len();
    systems
        .into_iter()
        .nth(idx)
        .ok_or_else(|| Failure(format!("system {idx} does not exist; the instance has {count}")))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { input, method, spec, json } => {
            let (_, c) = load(&input)?;
            let method: Method = method.parse()?;
            let f = compute(&c, method)?;
            let value = match &spec {
                Some(s) => {
                    let (x, y) = parse_spec(s, c.m, c.n)?;
                    specialize(&f, &x, &y)?.to_string()
                }
                None => f.to_string(),
            };
            if json {
                let report = serde_json::json!({
                    "instance": Instance::from(&c),
                    "method": method,
                    "spec": spec,
                    "value": value,
                });
                print!("{}", canonical_json(&report));
            } else {
                println!("{value}");
            }
            Ok(true)
        }
        Command::Verify { input, family, check, exact } => {
            let (_, c) = load(&input)?;
            let family = family.map(|f| f.parse::<SymFamily>()).transpose()?;
            let report = verify(&c, family, &check.options(exact))?;
            print!("{}", canonical_json(&report));
            Ok(report.symmetric)
        }
        Command::Count { input } => {
            let (r, _) = load(&input)?;
            let report = count_region(&r)?;
            print!("{}", canonical_json(&report));
            Ok(report.agree)
        }
        Command::Tile { input, system, out } => {
            let (r, c) = load(&input)?;
            let t = phi(&nth_system(&c, system)?, &r)?;
            emit(&canonical_json(&t), out.as_deref())?;
            Ok(true)
        }
        Command::Render { input, tiling, system, out, light_green, dark_green, yellow } => {
            let svg = if let Some(path) = tiling {
                let t: Tiling = serde_json::from_str(&read(&path)?).map_err(|e| Failure(format!("bad tiling: {e}")))?;
                lozsym_core::regions::phi_inv(&t)?;
                let palette = Palette { right: light_green, up: dark_green, empty: yellow };
                render_tiling(&t, &palette).to_svg()
            } else {
                let r = load_region(input.instance.as_deref(), input.region.as_deref())?;
                let c = region_to_config(&r)?;
                let sys = system.map(|i| nth_system(&c, i)).transpose()?;
                render_paths(&c, sys.as_ref()).to_svg()
            };
            emit(&svg, out.as_deref())?;
            Ok(true)
        }
        Command::Crosscheck { input, timings, single_cells } => {
            let (_, c) = load(&input)?;
            let report = crosscheck(&c, &CrosscheckOptions { single_cells, timings });
            print!("{}", canonical_json(&report));
            Ok(report.agree)
        }
        Command::Search { m, n, k, samples, check } => {
            let report = search(m, n, k, samples, &check.options(false))?;
            print!("{}", canonical_json(&report));
            Ok(report.layout_violations.is_empty())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("lozsym: {msg}");
            ExitCode::from(2)
        }
    }
}
