use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use wittcalc::exact::{poly_parse, poly_print, LaurentPoly, Rational, Ring, TruncatedSeries};
use wittcalc::lambda::{
    character_ring, expand_fundamentals, invariantize, triple_product_borel, Character, LambdaTable,
};
use wittcalc::symfun::{
    basis_ring, kronecker_pairing, newton_table, orbit_sum, orbit_sum_poly, pairing_bruteforce, DualWord, Partition,
};
use wittcalc::tower::{phi_compatibility, rho_basis, s_q_image_report, tau_basis, PhiConvention};
use wittcalc::wittm::{generator_denominator, make_generator, membership, MembershipOptions};

fn xy() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::laurent(&["x", "y"]).unwrap()).clone()
}

fn chi2() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| character_ring(2)).clone()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), rational()), 0..7).prop_map(|terms| {
        let ring = xy();
        terms.into_iter().fold(LaurentPoly::zero(&ring), |acc, ((a, b), c)| {
            &acc + &LaurentPoly::monomial(&ring, &[a, b], c).unwrap()
        })
    })
}

fn effective_character(max_terms: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(((-2i32..=2, -2i32..=2), 1i64..=2), 0..=max_terms).prop_map(|terms| {
        let ring = chi2();
        let v = terms.into_iter().fold(LaurentPoly::zero(&ring), |acc, ((a, b), k)| {
            &acc + &LaurentPoly::monomial(&ring, &[a, b], k).unwrap()
        });
        Character::new(v).unwrap()
    })
}

fn partition(max_size: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=4, 0..=max_size as usize).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn canonical_forms(a in laurent(), b in laurent()) {
        prop_assert!((&a - &a).is_zero());
        let s = &(&a + &b) - &b;
        prop_assert_eq!(&s, &a);
        prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn print_parse_round_trip(a in laurent()) {
        let text = poly_print(&a);
        prop_assert_eq!(poly_parse(&text, &xy()).unwrap(), a);
    }

    #[test]
    fn exp_of_log_is_identity(tail in prop::collection::vec(rational(), 1..8)) {
        let ring = Ring::polynomial(&["z"]).unwrap();
        let n = tail.len();
        let coeffs = std::iter::once(Rational::one())
            .chain(tail)
            .map(|c| LaurentPoly::constant(&ring, c));
        let u = TruncatedSeries::from_coeffs("t", &ring, n, coeffs).unwrap();
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn orbit_sum_ignores_order(mut exps in prop::collection::vec(0u32..=3, 1..=4), seed in any::<u64>()) {
        let ring = basis_ring("x", exps.len());
        let before = orbit_sum_poly(&exps, &ring).unwrap();
        let sym_before = orbit_sum(&exps).unwrap();
        let k = exps.len();
        exps.rotate_left((seed as usize) % k);
        exps.swap(0, (seed as usize / 7) % k);
        prop_assert_eq!(orbit_sum_poly(&exps, &ring).unwrap(), before);
        prop_assert_eq!(orbit_sum(&exps).unwrap(), sym_before);
    }

    #[test]
    fn pairing_matches_bruteforce(lambda in partition(6), word in prop::collection::vec(0u32..=3, 0..=4)) {
        let l = DualWord::new(word);
        prop_assert_eq!(kronecker_pairing(&lambda, &l), pairing_bruteforce(&lambda, &l));
    }

    #[test]
    fn newton_round_trips(r in 1usize..=8, k in 1usize..=12) {
        let t = newton_table(r, 12).unwrap();
        prop_assert_eq!(t.e_roundtrip_via_p(k).unwrap(), t.e_expected(k));
        prop_assert_eq!(t.e_roundtrip_via_h(k).unwrap(), t.e_expected(k));
    }

    #[test]
    fn exterior_powers_are_exponential(c in effective_character(6), d in effective_character(6)) {
        let sum = Character::new(c.value() + d.value()).unwrap();
        let (tc, td, ts) = (LambdaTable::compute(&c, 6), LambdaTable::compute(&d, 6), LambdaTable::compute(&sum, 6));
        for m in 0..=6 {
            let conv = (0..=m).fold(LaurentPoly::zero(&chi2()), |acc, i| {
                &acc + &(tc.values[i].value() * td.values[m - i].value())
            });
            prop_assert_eq!(ts.values[m].value(), &conv);
        }
    }

    #[test]
    fn invariantize_is_a_section(terms in prop::collection::vec(((0i32..=3, 0i32..=3), -5i64..=5), 0..5)) {
        let e = basis_ring("e", 2);
        let p = terms.into_iter().fold(LaurentPoly::zero(&e), |acc, ((a, b), c)| {
            &acc + &LaurentPoly::monomial(&e, &[a, b], c).unwrap()
        });
        let chi = chi2();
        let expanded = expand_fundamentals(&p, &chi).unwrap();
        let back = invariantize(&expanded).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(expand_fundamentals(&back, &chi).unwrap(), expanded);
    }

    #[test]
    fn s_q_image_is_stable(n in 1usize..=15) {
        let checks = s_q_image_report(n);
        prop_assert!(checks.iter().all(|c| c.passed), "{:?}", checks);
    }

    #[test]
    fn rho_and_tau_certify(n in 2usize..=16) {
        let rho = rho_basis(n).unwrap();
        prop_assert!(rho.checks.iter().all(|c| c.passed), "{:?}", rho.checks);
        let tau = tau_basis(n).unwrap();
        prop_assert!(tau.checks.iter().all(|c| c.passed), "{:?}", tau.checks);
    }

    #[test]
    fn phi_compatible_window(l in 1i64..=8, j in 1u32..=8) {
        prop_assert!(phi_compatibility(PhiConvention::NegativeShift, l, j).is_empty());
    }

    #[test]
    fn generators_clear_to_primitive(j in 0u32..=8, n in -4i64..=4) {
        let f = make_generator(j, n).poly;
        let cleared = f.scale(&Rational::from_bigint(generator_denominator(j)));
        let ints: Vec<BigInt> = cleared.terms().map(|(_, c)| c.to_integer().unwrap()).collect();
        let g = ints.iter().fold(BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
        prop_assert!(g.is_one());
    }

    #[test]
    fn membership_is_sound(combo in prop::collection::vec(((0u32..=3, -2i64..=2), -5i64..=5), 1..4)) {
        let target = combo.iter().fold(LaurentPoly::zero(&make_generator(0, 0).poly.ring().clone()), |acc, &((j, n), c)| {
            &acc + &make_generator(j, n).poly.scale(&Rational::from_int(c))
        });
        let cert = membership(&target, MembershipOptions::new(4, 3));
        prop_assert!(cert.is_member(), "{}", cert.describe());
        prop_assert_eq!(cert.evaluate(), target);
    }
}

#[test]
fn borel_classes_are_symmetric() {
    let tp = triple_product_borel().unwrap();
    let ring = tp.borel[0].ring().clone();
    let v = |name: &str| LaurentPoly::var(&ring, name).unwrap();
    let perms = [
        ["xi1", "xi2", "xi3"],
        ["xi2", "xi1", "xi3"],
        ["xi1", "xi3", "xi2"],
        ["xi3", "xi2", "xi1"],
        ["xi2", "xi3", "xi1"],
        ["xi3", "xi1", "xi2"],
    ];
    for b in &tp.borel {
        for p in &perms {
            let images = [v("beta"), v(p[0]), v(p[1]), v(p[2])];
            assert_eq!(&b.eval_hom(&ring, &images).unwrap(), b);
        }
    }
}
