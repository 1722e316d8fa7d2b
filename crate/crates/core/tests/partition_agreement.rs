use lozsym_core::algebra::modp;
use lozsym_core::field::{self, Assignment};
use lozsym_core::lattice::{count_systems, Config};
use lozsym_core::partition::{
    count_by_specialization, telescoped_numerator, two_row_sum, F_enum, F_horizontal_closed, F_lgv, F_single_dp,
    F_single_modular, LgvMode, SymbolTable,
};
use lozsym_core::ratfn_equal;
use lozsym_core::suites;
use lozsym_core::symmetry::{check_symmetric_exact, SymFamily, Verdict, DEFAULT_SEED};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

/// Cells in the rectangle crossed by a single path `(m, 1) → (s, k)`.
fn cells(m: u32, s: u32, k: u32) -> u32 {
    (m - s + 1) * k
}

#[test]
fn enumeration_equals_lgv_on_hexagons() {
    for c in suites::hexagons(4, 4) {
        let lgv = F_lgv(&c, LgvMode::Identity).unwrap();
        assert!(ratfn_equal(&F_enum(&c), &lgv), "{}", c.to_json());
    }
}

#[test]
fn closed_form_agrees_on_horizontal_cuts() {
    for c in suites::horizontal_cuts(4, 4) {
        let e = F_enum(&c);
        assert!(ratfn_equal(&e, &F_lgv(&c, LgvMode::Identity).unwrap()), "{}", c.to_json());
        assert!(ratfn_equal(&e, &F_horizontal_closed(&c).unwrap()), "{}", c.to_json());
    }
}

#[test]
fn recurrence_equals_modular_route_on_small_rectangles() {
    for m in 1..=6 {
        for s in 1..=m {
            for k in 1..=6 {
                if cells(m, s, k) > 16 {
                    continue;
                }
                let t = SymbolTable::new(m, k);
                let dp = F_single_dp(s, k, &t).unwrap();
                let md = F_single_modular(s, k, &t).unwrap();
                assert!(ratfn_equal(&dp, &md), "m={m} s={s} k={k}");
            }
        }
    }
}

/// The remaining rectangles up to 20 cells; a few seconds each.
#[test]
fn recurrence_equals_modular_route_up_to_twenty_cells() {
    for (rows, cols) in [(3, 6), (6, 3), (4, 5), (5, 4)] {
        let t = SymbolTable::new(rows, cols);
        let dp = F_single_dp(1, cols, &t).unwrap();
        let md = F_single_modular(1, cols, &t).unwrap();
        assert!(ratfn_equal(&dp, &md), "{rows}x{cols}");
    }
}

/// 25 and 24 cells: about two minutes in total.
#[test]
#[ignore]
fn recurrence_equals_modular_route_on_large_rectangles() {
    for (rows, cols) in [(5, 5), (4, 6), (6, 4)] {
        let t = SymbolTable::new(rows, cols);
        let dp = F_single_dp(1, cols, &t).unwrap();
        let md = F_single_modular(1, cols, &t).unwrap();
        assert!(ratfn_equal(&dp, &md), "{rows}x{cols}");
    }
}

#[test]
fn recurrence_equals_modular_route_over_the_field() {
    let p = modp::DEFAULT_PRIME;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..10 {
        let a = Assignment {
            p,
            x: (0..6).map(|_| rng.gen_range(0..p)).collect(),
            y: (0..6).map(|_| rng.gen_range(0..p)).collect(),
        };
        for m in 1..=6 {
            for s in 1..=m {
                for k in 1..=6 {
                    assert_eq!(field::single_dp(&a, m, s, k), field::single_modular(&a, m, s, k));
                }
            }
        }
    }
}

#[test]
fn single_path_sums_are_symmetric() {
    for m in 1..=4 {
        for s in 1..=m {
            for k in 1..=4 {
                let f = F_single_modular(s, k, &SymbolTable::new(m, k)).unwrap();
                let x = check_symmetric_exact(&f, SymFamily::X, (s, m), DEFAULT_SEED);
                let y = check_symmetric_exact(&f, SymFamily::Y, (1, k), DEFAULT_SEED);
                assert_eq!((x.verdict, y.verdict), (Verdict::Symmetric, Verdict::Symmetric), "m={m} s={s} k={k}");
            }
        }
    }
}

#[test]
fn two_row_numerators_telescope() {
    for m in 1..=8 {
        let (_, g) = two_row_sum(m).unwrap();
        assert_eq!(g, telescoped_numerator(m), "m={m}");
    }
}

#[test]
fn specialization_counts_systems() {
    let mut configs: Vec<Config> = suites::hexagons(4, 4);
    configs.extend(suites::horizontal_cuts(3, 4));
    configs.extend(suites::vertical_cuts(2, 1, 3));
    configs.extend(suites::generals(3, 3, 2));
    for c in &configs {
        let v = count_by_specialization(&F_enum(c), c.m, c.n).unwrap();
        assert_eq!(v, BigRational::from_integer(count_systems(c)), "{}", c.to_json());
    }
}

/// Symbolic up to 16 cells; single paths across larger grids have
/// numerators too large to expand.
#[test]
fn signed_determinant_equals_identity_mode() {
    let small = |c: &Config| c.k() <= 3 && c.m * c.n <= 16;
    let mut configs: Vec<Config> = suites::hexagons(5, 5).into_iter().filter(small).collect();
    configs.extend(suites::horizontal_cuts(4, 4).into_iter().filter(small));
    configs.extend(suites::generals(3, 3, 3));
    for c in &configs {
        let signed = F_lgv(c, LgvMode::Signed).unwrap();
        let identity = F_lgv(c, LgvMode::Identity).unwrap();
        assert!(ratfn_equal(&signed, &identity), "{}", c.to_json());
    }
}

/// The same comparison over `Z/p` for every theorem-shaped grid up to 5 × 5:
/// the determinant against the sum over disjoint systems.
#[test]
fn determinant_equals_system_sum_over_the_field() {
    let p = modp::DEFAULT_PRIME;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut configs: Vec<Config> = suites::hexagons(5, 5).into_iter().filter(|c| c.k() <= 3).collect();
    configs.extend(suites::horizontal_cuts(5, 5).into_iter().filter(|c| c.k() <= 3));
    configs.extend(suites::vertical_cuts(3, 2, 3));
    for c in &configs {
        let cells = field::SystemCells::enumerate(c);
        let a = Assignment {
            p,
            x: (0..c.m).map(|_| rng.gen_range(1..p / 2)).collect(),
            y: (0..c.n).map(|_| rng.gen_range(1..p / 2)).collect(),
        };
        assert_eq!(field::lgv(c, &a).unwrap(), cells.eval(&a).unwrap(), "{}", c.to_json());
    }
}
