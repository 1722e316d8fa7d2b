use lozsym_core::lattice::{count_systems, enumerate_systems, Config, GridPoint, Instance, Step};
use lozsym_core::regions::{
    macmahon, macmahon_q, n_lambda, phi, phi_inv, region_to_config, Orient, RegionSpec, Tiling,
};
use lozsym_core::render::{render_paths, render_tiling, Element, Palette};
use lozsym_core::suites;
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_regions() -> Vec<RegionSpec> {
    let mut out = Vec::new();
    for a in 0..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                out.push(RegionSpec::Hexagon(a, b, c));
            }
        }
    }
    for cs in [vec![1, 2], vec![0, 1, 1], vec![2, 1, 3], vec![1, 5, 3, 2], vec![0, 2, 2]] {
        out.push(RegionSpec::Trapezoid(cs));
    }
    out.push(RegionSpec::Parallelogram { a: vec![1, 2], b: vec![1, 3], m: 2, l: None });
    out.push(RegionSpec::Parallelogram { a: vec![2, 3], b: vec![1, 2], m: 3, l: Some(2) });
    for c in suites::generals(3, 3, 3) {
        out.push(RegionSpec::Custom(Instance::from(&c)));
    }
    out.retain(|r| {
        let n = count_systems(&region_to_config(r).unwrap());
        n > BigInt::from(0) && n <= BigInt::from(200)
    });
    out
}

fn step_counts(c: &Config) -> Vec<(usize, usize)> {
    enumerate_systems(c)
        .iter()
        .map(|s| {
            let steps: Vec<Step> = s.paths.iter().flat_map(|p| p.steps()).collect();
            let right = steps.iter().filter(|&&st| st == Step::Right).count();
            (right, steps.len() - right)
        })
        .collect()
}

#[test]
fn phi_is_a_bijection_on_small_regions() {
    let regions = small_regions();
    assert!(regions.len() > 40);
    for r in &regions {
        let c = region_to_config(r).unwrap();
        let systems = enumerate_systems(&c);
        let mut tilings = Vec::new();
        for s in &systems {
            let t = phi(s, r).unwrap();
            assert_eq!(&phi_inv(&t).unwrap(), s);
            let back = Tiling::from_json(&t.to_json()).unwrap();
            assert_eq!(phi(&phi_inv(&back).unwrap(), r).unwrap(), t);
            tilings.push(t);
        }
        let mut distinct = tilings.clone();
        distinct.dedup();
        assert_eq!(distinct.len(), tilings.len(), "{r:?}");
    }
}

#[test]
fn orientation_counts_follow_steps_and_are_constant() {
    for r in small_regions() {
        let c = region_to_config(&r).unwrap();
        let steps = step_counts(&c);
        let tilings: Vec<Tiling> = enumerate_systems(&c).iter().map(|s| phi(s, &r).unwrap()).collect();
        for (t, &(right, up)) in tilings.iter().zip(&steps) {
            assert_eq!(t.count(Orient::R), right);
            assert_eq!(t.count(Orient::U), up);
        }
        let first = &tilings[0];
        for t in &tilings {
            for o in [Orient::R, Orient::U, Orient::Y] {
                assert_eq!(t.count(o), first.count(o), "{r:?}");
            }
        }
    }
}

#[test]
fn q_analogue_at_one_is_the_box_count() {
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let total: BigInt = macmahon_q(a, b, c).unwrap().iter().sum();
                assert_eq!(total, macmahon(a, b, c), "({a},{b},{c})");
            }
        }
    }
}

#[test]
fn box_count_is_symmetric_in_its_sides() {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let v = macmahon(a, b, c);
                for (p, q, r) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    assert_eq!(macmahon(p, q, r), v);
                }
            }
        }
    }
}

#[test]
fn schur_dimension_counts_trapezoid_tilings() {
    for k in 1..=4 {
        for b in suites::subsets(8, k) {
            let mut prev = 1;
            let teeth: Vec<u32> = b
                .iter()
                .map(|&bj| {
                    let c = bj - prev;
                    prev = bj;
                    c
                })
                .collect();
            let c = region_to_config(&RegionSpec::Trapezoid(teeth)).unwrap();
            assert_eq!(n_lambda(&b).unwrap().0, count_systems(&c), "b={b:?}");
        }
    }
}

#[test]
fn flipped_parallelogram_of_the_figure_has_systems() {
    let r = RegionSpec::Parallelogram { a: vec![1, 2, 3, 5], b: vec![2, 6, 7, 9], m: 5, l: Some(5) };
    let c = region_to_config(&r).unwrap();
    let rows = |ps: &[GridPoint]| ps.iter().map(|p| p.row).collect::<Vec<_>>();
    assert_eq!(rows(&c.a), [5, 7, 8, 9]);
    assert_eq!(rows(&c.b), [1, 3, 4, 8]);
    assert!(count_systems(&c) > BigInt::from(0));
}

#[test]
fn renderings_have_one_element_per_piece() {
    for r in small_regions().into_iter().take(12) {
        let c = region_to_config(&r).unwrap();
        let s = &enumerate_systems(&c)[0];
        let doc = render_paths(&c, Some(s));
        assert_eq!(doc.count(|e| matches!(e, Element::Polyline { .. })), c.k());
        assert_eq!(doc.count(|e| matches!(e, Element::Node { .. })), (c.m * c.n) as usize);
        let t = phi(s, &r).unwrap();
        let svg = render_tiling(&t, &Palette::default());
        assert_eq!(svg.elements.len(), t.lozenges.len());
        assert_eq!(svg.to_svg(), render_tiling(&t, &Palette::default()).to_svg());
    }
}

fn custom_region() -> impl Strategy<Value = (Config, RegionSpec)> {
    (1u32..=4, 1u32..=4, 0usize..=2)
        .prop_flat_map(|(m, n, k)| {
            let cell = (1..=m, 1..=n).prop_map(|(r, c)| GridPoint::new(r, c));
            (prop::collection::vec(cell.clone(), k), prop::collection::vec(cell, k))
                .prop_map(move |(a, b)| Config::custom(m, n, a, b).unwrap())
        })
        .prop_map(|c| {
            let r = RegionSpec::Custom(Instance::from(&c));
            (c, r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn phi_round_trips_on_random_instances((c, r) in custom_region()) {
        for s in enumerate_systems(&c) {
            let t = phi(&s, &r).unwrap();
            prop_assert_eq!(phi_inv(&t).unwrap(), s);
            // Each path has one more vertex than steps.
            let steps = t.count(Orient::R) + t.count(Orient::U);
            prop_assert_eq!(steps + c.k(), (c.m * c.n) as usize - t.count(Orient::Y));
        }
    }
}
