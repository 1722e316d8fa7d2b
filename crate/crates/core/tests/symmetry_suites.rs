use lozsym_core::algebra::modp;
use lozsym_core::lattice::{count_systems, general_config, hexagon_config, Config, GridPoint};
use lozsym_core::partition::F_enum;
use lozsym_core::suites;
use lozsym_core::symmetry::{
    check_symmetric_exact, check_symmetric_random, SymFamily, Verdict, DEFAULT_SEED, DEFAULT_TRIALS,
};
use num_traits::Zero;

fn exact(c: &Config, family: SymFamily) -> Verdict {
    check_symmetric_exact(&F_enum(c), family, family.full_range(c), DEFAULT_SEED).verdict
}

fn random(c: &Config, family: SymFamily) -> Verdict {
    check_symmetric_random(c, family, family.full_range(c), DEFAULT_TRIALS, modp::DEFAULT_PRIME, DEFAULT_SEED)
        .unwrap()
        .verdict
}

/// Exact and randomized verdicts name the same outcome.
fn concordant(exact: Verdict, random: Verdict) -> bool {
    match exact {
        Verdict::Asymmetric => random == Verdict::Asymmetric,
        _ => random == Verdict::ProbableSymmetric,
    }
}

#[test]
fn horizontal_cuts_are_symmetric_in_x() {
    for c in suites::horizontal_cuts(4, 4) {
        let v = exact(&c, SymFamily::X);
        assert_eq!(v, Verdict::Symmetric, "{}", c.to_json());
        assert!(concordant(v, random(&c, SymFamily::X)), "{}", c.to_json());
    }
}

#[test]
fn vertical_cuts_are_symmetric_in_y() {
    let configs = suites::vertical_cuts(3, 2, 3);
    let nonvacuous = configs.iter().filter(|c| !count_systems(c).is_zero()).count();
    assert!(nonvacuous > 0);
    for c in &configs {
        let v = exact(c, SymFamily::Y);
        assert_eq!(v, Verdict::Symmetric, "{}", c.to_json());
        assert!(concordant(v, random(c, SymFamily::Y)), "{}", c.to_json());
    }
}

#[test]
fn general_layouts_are_symmetric_in_x() {
    let configs: Vec<Config> = suites::generals(3, 4, 3).into_iter().filter(|c| !count_systems(c).is_zero()).collect();
    assert!(configs.len() >= 100, "only {} general configs", configs.len());
    for c in &configs {
        let v = exact(c, SymFamily::X);
        assert_eq!(v, Verdict::Symmetric, "{}", c.to_json());
        assert!(concordant(v, random(c, SymFamily::X)), "{}", c.to_json());
    }
}

/// An end moved below the top of its column breaks the x-symmetry.
#[test]
fn end_below_the_top_breaks_symmetry() {
    let g = general_config(&[0, 1, 0], &[0, 0, 1], 3).unwrap();
    let mut b = g.b.clone();
    b[0] = GridPoint::new(2, 3);
    let c = Config::custom(3, 3, g.a.clone(), b).unwrap();
    assert!(!count_systems(&c).is_zero());
    let v = exact(&c, SymFamily::X);
    assert_eq!(v, Verdict::Asymmetric);
    assert!(concordant(v, random(&c, SymFamily::X)));
}

#[test]
fn diagonal_singletons_are_asymmetric_in_both_families() {
    let pts = vec![GridPoint::new(1, 1), GridPoint::new(2, 2)];
    let c = Config::custom(2, 2, pts.clone(), pts).unwrap();
    for fam in [SymFamily::X, SymFamily::Y] {
        let r = check_symmetric_exact(&F_enum(&c), fam, (1, 2), DEFAULT_SEED);
        assert_eq!(r.verdict, Verdict::Asymmetric);
        let w = r.witness.unwrap();
        assert_ne!(w.lhs, w.rhs);
        // The witness is reproducible.
        assert_eq!(check_symmetric_exact(&F_enum(&c), fam, (1, 2), DEFAULT_SEED).witness.unwrap(), w);
        assert!(concordant(r.verdict, random(&c, fam)));
    }
}

#[test]
fn large_instances_are_probably_symmetric() {
    let h = hexagon_config(3, 3, 3).unwrap();
    assert_eq!(random(&h, SymFamily::X), Verdict::ProbableSymmetric);
    assert_eq!(random(&h, SymFamily::Y), Verdict::ProbableSymmetric);
    let fig = general_config(&[2, 0, 0, 3, 0, 0, 1, 0, 0, 1, 0, 0], &[0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 3], 5).unwrap();
    assert!(!count_systems(&fig).is_zero());
    assert_eq!(random(&fig, SymFamily::X), Verdict::ProbableSymmetric);
}
