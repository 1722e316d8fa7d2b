use lozsym_core::algebra::{
    det_cofactor, det_ratfn, mod_inverse_linear, modp, vandermonde_check, LinearModulus, Monomial, Poly, UniPoly,
};
use lozsym_core::symmetry::swap_vars;
use lozsym_core::{ratfn_equal, Family, RatFn, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Variables x1..x3, y1..y2.
fn var(ix: usize) -> VarId {
    if ix < 3 {
        VarId::x(ix as u32 + 1)
    } else {
        VarId::y(ix as u32 - 2)
    }
}

fn poly() -> impl Strategy<Value = Poly> {
    let term = (-6i64..=6, prop::collection::vec(0u32..=1, 5), 0u32..=4).prop_map(|(c, mask, cap)| {
        let mut left = cap;
        let pairs: Vec<(VarId, u32)> = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &on)| {
                if on == 1 && left > 0 {
                    left -= 1;
                    Some((var(i), 1))
                } else {
                    None
                }
            })
            .collect();
        (Monomial::from_pairs(pairs), BigInt::from(c))
    });
    prop::collection::vec(term, 0..5).prop_map(Poly::from_terms)
}

/// A sum of cell forms `x_i + y_j` and small constants, never zero.
fn linear_factor() -> impl Strategy<Value = Poly> {
    (1u32..=3, 1u32..=2).prop_map(|(i, j)| Poly::sum_of(VarId::x(i), VarId::y(j)))
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (poly(), prop::collection::vec(linear_factor(), 0..3))
        .prop_map(|(num, dens)| dens.iter().fold(RatFn::from_poly(num), |acc, d| acc.div_poly(d)))
}

fn assignment() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 5)
}

fn value_of(sigma: &[i64]) -> impl Fn(VarId) -> BigRational + '_ {
    move |v| {
        let ix = match v.family {
            Family::X => v.index as usize - 1,
            _ => v.index as usize + 2,
        };
        BigRational::from_integer(BigInt::from(sigma[ix]))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), sigma in assignment()) {
        let at = value_of(&sigma);
        prop_assert_eq!((&a * &b).eval_rational(&at), a.eval_rational(&at) * b.eval_rational(&at));
        prop_assert_eq!((&a + &b).eval_rational(&at), a.eval_rational(&at) + b.eval_rational(&at));
        let p = modp::DEFAULT_PRIME;
        let at_p = |v: VarId| {
            let r = at(v).to_integer();
            let r = ((r % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
            u64::try_from(r).unwrap()
        };
        prop_assert_eq!((&a * &b).eval_mod(p, at_p), modp::mul(a.eval_mod(p, at_p), b.eval_mod(p, at_p), p));
    }

    #[test]
    fn ratfn_equal_is_an_equivalence(f in ratfn(), g in ratfn(), h in ratfn(), d in linear_factor()) {
        prop_assert!(ratfn_equal(&f, &f));
        prop_assert_eq!(ratfn_equal(&f, &g), ratfn_equal(&g, &f));
        // f·d/d is a different representative of f.
        let f2 = (&f * &RatFn::from_poly(d.clone())).div_poly(&d);
        prop_assert!(ratfn_equal(&f, &f2));
        if ratfn_equal(&f, &g) && ratfn_equal(&g, &h) {
            prop_assert!(ratfn_equal(&f, &h));
        }
        prop_assert!(ratfn_equal(&(&f2 + &g), &(&f + &g)));
        prop_assert!(ratfn_equal(&(&f2 * &g), &(&f * &g)));
    }

    #[test]
    fn swap_is_an_involution_and_commutes(f in ratfn(), g in ratfn(), i in 1u32..=2) {
        prop_assert!(ratfn_equal(&swap_vars(&swap_vars(&f, Family::X, i), Family::X, i), &f));
        prop_assert!(ratfn_equal(
            &swap_vars(&(&f * &g), Family::X, i),
            &(&swap_vars(&f, Family::X, i) * &swap_vars(&g, Family::X, i))
        ));
        prop_assert!(ratfn_equal(
            &swap_vars(&(&f + &g), Family::Y, 1),
            &(&swap_vars(&f, Family::Y, 1) + &swap_vars(&g, Family::Y, 1))
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(entries in prop::collection::vec(ratfn(), 16), n in 3usize..=4) {
        let m: Vec<Vec<RatFn>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert!(ratfn_equal(&det_ratfn(&m).unwrap(), &det_cofactor(&m).unwrap()));
    }
}

#[test]
fn linear_inverses_reduce_to_one() {
    let t = VarId::t(1);
    for k in 1..=4 {
        let modulus = LinearModulus::y_prefix(t, k);
        for m in 1..=4 {
            for s in 1..=m {
                let c = Poly::diff_of(VarId::x(s), t);
                let inv = mod_inverse_linear(&c, &modulus).unwrap();
                let prod = modulus.mul(&UniPoly::from_poly(t, &c), &inv).unwrap();
                assert_eq!(prod, UniPoly::constant(t, RatFn::one()), "k={k} s={s}");
            }
        }
    }
}

#[test]
fn vandermonde_identity_small_sizes() {
    for k in 1..=5 {
        for a in 0..=1 {
            assert!(vandermonde_check(k, a).unwrap(), "k={k} a={a}");
        }
    }
}
