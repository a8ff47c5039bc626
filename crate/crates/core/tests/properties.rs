//! Property tests for ideals, complexes, homology, resolutions and covers.

use domcore::complexes::SimplicialComplex;
use domcore::covers::{
    count_covers_square_free, cover_coefficient, cover_coefficient_square_free, covering_polynomial, euler_via_covers,
};
use domcore::homology::{boundary, reduced_homology, Chain, HomologyGroup, HomologyProfile};
use domcore::ideals::{minimalize, MonomialIdeal, SquareFreeMonomial, VariableUniverse};
use domcore::polynomial::{square_free_exponents, MultigradedPolynomial};
use domcore::resolution::{
    all_maximal_resolutions, classify, dominates, find_resolution, is_cone_apex, permutation_equivalence, Strategy as Order,
    Verdict,
};
use domcore::{analyze, AnalysisOptions, Budgets};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::Config;

const MAX_FACES: usize = 1 << 16;

fn build(n: usize, masks: &[u64]) -> MonomialIdeal {
    let full = (1u64 << n) - 1;
    let gens = masks
        .iter()
        .map(|&m| m & full)
        .filter(|&m| m != 0)
        .map(SquareFreeMonomial::from_bits);
    MonomialIdeal::new(VariableUniverse::indexed(n).unwrap(), gens).unwrap()
}

/// `(n, I)` with `1 <= n <= max_n`, never the unit ideal.
fn ideal(max_n: usize, max_gens: usize) -> impl Strategy<Value = (usize, MonomialIdeal)> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 0..=max_gens).prop_map(move |m| (n, build(n, &m)))
    })
}

fn subsets(n: usize) -> impl Iterator<Item = SquareFreeMonomial> {
    (0..1u64 << n).map(SquareFreeMonomial::from_bits)
}

fn realize(i: &MonomialIdeal) -> SimplicialComplex {
    SimplicialComplex::realize(i, MAX_FACES).unwrap()
}

fn shifted(p: &HomologyProfile, by: i64) -> HomologyProfile {
    HomologyProfile::from_groups(
        p.groups()
            .iter()
            .map(|g| HomologyGroup {
                degree: g.degree + by,
                ..g.clone()
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(Config::with_cases(128))]

    #[test]
    fn colon_matches_brute_force((n, i) in ideal(6, 6), x in any::<u64>()) {
        let x = SquareFreeMonomial::from_bits(x & ((1 << n) - 1));
        let c = i.colon(x).unwrap();
        for m in subsets(n) {
            // x m lies in I iff its square-free part does, unless m and x overlap.
            let expected = !m.is_coprime(x) || i.contains(m.lcm(x)).unwrap();
            prop_assert_eq!(c.contains(m).unwrap(), expected, "m = {:?}", m);
        }
    }

    #[test]
    fn add_matches_brute_force((n, i) in ideal(6, 6), x in 1u64..64) {
        let x = SquareFreeMonomial::from_bits(x & ((1 << n) - 1));
        prop_assume!(!x.is_one());
        let a = i.add(x).unwrap();
        for m in subsets(n) {
            prop_assert_eq!(a.contains(m).unwrap(), i.contains(m).unwrap() || x.divides(m));
        }
    }

    #[test]
    fn operations_return_antichains((n, i) in ideal(7, 8), x in any::<u64>()) {
        let x = SquareFreeMonomial::from_bits(x & ((1 << n) - 1));
        for j in [i.colon(x).unwrap(), i.add(x).unwrap()] {
            let g = j.generators();
            for (p, &a) in g.iter().enumerate() {
                for (q, &b) in g.iter().enumerate() {
                    prop_assert!(p == q || !a.divides(b));
                }
            }
        }
        prop_assert_eq!(i.colon(SquareFreeMonomial::ONE).unwrap(), i.clone());
        if let Some(&g) = i.generators().first() {
            prop_assert_eq!(i.add(g).unwrap(), i.clone());
        }
    }

    #[test]
    fn minimalize_is_idempotent(masks in prop::collection::vec(0u64..256, 0..10)) {
        let once = minimalize(masks.iter().map(|&m| SquareFreeMonomial::from_bits(m)).collect());
        prop_assert_eq!(minimalize(once.clone()), once);
    }

    #[test]
    fn canonicalize_is_idempotent_and_keeps_the_complex((_, i) in ideal(7, 8)) {
        let (c, _) = i.canonicalize().unwrap();
        let (cc, _) = c.canonicalize().unwrap();
        prop_assert_eq!(&cc, &c);
        prop_assert_eq!(realize(&c).len(), realize(&i).len());
        prop_assert_eq!(reduced_homology(&realize(&c)).unwrap(), reduced_homology(&realize(&i)).unwrap());
    }

    #[test]
    fn realized_complexes_are_downward_closed((_, i) in ideal(10, 10)) {
        let d = realize(&i);
        prop_assert!(d.is_downward_closed());
        for f in d.faces() {
            prop_assert!(!i.contains(f).unwrap());
        }
    }

    #[test]
    fn link_and_deletion_are_colon_and_add((n, i) in ideal(8, 8), v in 0usize..8) {
        let x = SquareFreeMonomial::var(v % n);
        let d = realize(&i);
        prop_assert_eq!(d.link(x).unwrap(), realize(&i.colon(x).unwrap()));
        prop_assert_eq!(d.deletion(x).unwrap(), realize(&i.add(x).unwrap()));
        prop_assert!(d.decompose_check(x).unwrap());
    }

    #[test]
    fn face_polynomial_splits_at_a_variable((n, i) in ideal(7, 8), v in 0usize..7) {
        let xv = SquareFreeMonomial::var(v % n);
        let d = realize(&i);
        let x = MultigradedPolynomial::term(square_free_exponents(xv, n), BigInt::from(1));
        let lhs = d.face_polynomial();
        let rhs = &(&x * &d.link(xv).unwrap().face_polynomial()) + &d.deletion(xv).unwrap().face_polynomial();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_squares_to_zero((_, i) in ideal(8, 8), seed in any::<u64>()) {
        let d = realize(&i);
        let by_degree = d.faces_by_degree();
        for (k, faces) in by_degree.iter().enumerate() {
            if faces.is_empty() {
                continue;
            }
            let mut state = seed;
            let terms = faces.iter().map(|&f| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (f, (state >> 60) as i64 - 8)
            });
            let c = Chain::from_terms(k, terms).unwrap();
            let dd = boundary(&boundary(&c, &d).unwrap(), &d).unwrap();
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn euler_poincare((_, i) in ideal(9, 10)) {
        let d = realize(&i);
        prop_assert_eq!(reduced_homology(&d).unwrap().euler_characteristic(), d.reduced_euler());
    }

    #[test]
    fn collapses_preserve_counts_and_homology((_, i) in ideal(8, 8), pick in any::<prop::sample::Index>()) {
        let d = realize(&i);
        let pairs = d.free_pairs();
        prop_assume!(!pairs.is_empty());
        let step = pairs[pick.index(pairs.len())];
        let e = d.apply_collapse(&step).unwrap();
        prop_assert!(e.is_downward_closed());
        prop_assert_eq!(e.len() + 2, d.len());
        prop_assert_eq!(e.reduced_euler(), d.reduced_euler());
        prop_assert_eq!(reduced_homology(&e).unwrap(), reduced_homology(&d).unwrap());
    }

    #[test]
    fn suspension_shifts_homology_up_one((n, i) in ideal(7, 8)) {
        // Two fresh variables appended to the universe act as poles.
        let wide = VariableUniverse::indexed(n + 2).unwrap();
        let j = MonomialIdeal::new(wide, i.generators().iter().copied()).unwrap();
        let (poles_x, poles_y) = (n, n + 1);
        // Without the poles the wide complex is a cone; restrict to the base first.
        let base = realize(&j.add(SquareFreeMonomial::var(poles_x)).unwrap().add(SquareFreeMonomial::var(poles_y)).unwrap());
        let s = base.coprime_suspension(poles_x, poles_y).unwrap();
        prop_assert_eq!(reduced_homology(&s).unwrap(), shifted(&reduced_homology(&realize(&i)).unwrap(), 1));
    }

    #[test]
    fn domination_is_transitive((n, i) in ideal(8, 8), a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assume!(a != b && b != c && a != c);
        let live = i.live_variables();
        prop_assume!(live.contains_var(a) && live.contains_var(b) && live.contains_var(c));
        if dominates(&i, a, b).unwrap() && dominates(&i, b, c).unwrap() {
            prop_assert!(dominates(&i, a, c).unwrap());
        }
    }

    #[test]
    fn domination_persists_under_colon((n, i) in ideal(8, 8)) {
        let live = i.live_variables();
        for a in live.iter() {
            for b in live.iter().filter(|&b| b != a && dominates(&i, a, b).unwrap()) {
                for c in live.iter().filter(|&c| c != a && c != b) {
                    let j = i.colon(SquareFreeMonomial::var(c)).unwrap();
                    let lj = j.live_variables();
                    if j.is_unit() || !lj.contains_var(a) || !lj.contains_var(b) {
                        continue;
                    }
                    prop_assert!(dominates(&j, a, b).unwrap() || is_cone_apex(&j, b).unwrap(), "n = {}", n);
                }
            }
        }
    }

    #[test]
    fn classification_does_not_depend_on_the_order((_, i) in ideal(8, 8), seed in any::<u64>()) {
        let reference = classify(&i).unwrap();
        for strategy in [Order::Smallest, Order::Largest, Order::Seeded(seed)] {
            let r = find_resolution(&i, strategy).unwrap();
            // A cone step ends the greedy construction early.
            prop_assert!(r.is_maximal() || r.first_cone().is_some());
            prop_assert_eq!(r.is_spherical(), reference.verdict == Verdict::Spherical);
            if r.is_spherical() {
                prop_assert_eq!(Some(r.depth()), reference.depth());
                prop_assert!(permutation_equivalence(r.core(), reference.core()).is_some());
            }
        }
    }

    #[test]
    fn maximal_resolutions_share_depth_and_core((_, i) in ideal(7, 7)) {
        let all = all_maximal_resolutions(&i, 1 << 16).unwrap();
        let spherical: Vec<_> = all.iter().filter(|r| r.is_spherical()).collect();
        prop_assert!(spherical.is_empty() || spherical.len() == all.len());
        for r in &spherical {
            prop_assert_eq!(r.depth(), spherical[0].depth());
            prop_assert!(permutation_equivalence(r.core(), spherical[0].core()).is_some());
        }
    }

    #[test]
    fn analysis_is_consistent((_, i) in ideal(8, 8)) {
        let opts = AnalysisOptions { witness: true, generator: true, all_resolutions: false };
        let a = analyze(&i, &Budgets::default(), opts).unwrap();
        prop_assert!(a.consistent(), "{:?}", a);
        if a.verdict == Verdict::Conical {
            prop_assert!(a.homology.is_zero());
        }
        if a.simple {
            prop_assert!(a.homology.is_sphere(a.depth.unwrap() as i64 - 1));
        }
    }

    #[test]
    fn cover_coefficients_match_the_covering_polynomial((n, i) in ideal(6, 7)) {
        let ms: Vec<_> = i.generators().iter().map(|&g| square_free_exponents(g, n)).collect();
        let p = covering_polynomial(&ms, n, 16).unwrap();
        let top = i.generators().iter().fold(SquareFreeMonomial::ONE, |a, &g| a.lcm(g));
        for q in subsets(n).filter(|q| q.divides(top)) {
            let e = square_free_exponents(q, n);
            prop_assert_eq!(p.coefficient(&e), cover_coefficient(&ms, &e));
            prop_assert_eq!(cover_coefficient(&ms, &e), BigInt::from(cover_coefficient_square_free(i.generators(), q)));
        }
    }

    #[test]
    fn euler_via_covers_matches_enumeration((n, i) in ideal(10, 12)) {
        let d = realize(&i);
        prop_assert_eq!(euler_via_covers(&i), d.reduced_euler());
        let covers = count_covers_square_free(i.generators(), SquareFreeMonomial::from_bits((1 << n) - 1));
        prop_assert_eq!(d.reduced_euler().rem_euclid(2) as u64, covers % 2);
    }

    #[test]
    fn covering_polynomial_is_multiplicative_on_disjoint_supports(
        (n1, i1) in ideal(3, 4),
        (n2, i2) in ideal(3, 4),
    ) {
        let n = n1 + n2;
        let left: Vec<_> = i1.generators().iter().map(|&g| square_free_exponents(g, n)).collect();
        let right: Vec<_> = i2
            .generators()
            .iter()
            .map(|&g| square_free_exponents(SquareFreeMonomial::from_bits(g.bits() << n1), n))
            .collect();
        let both: Vec<_> = left.iter().chain(&right).cloned().collect();
        let c1 = covering_polynomial(&left, n, 16).unwrap();
        let c2 = covering_polynomial(&right, n, 16).unwrap();
        prop_assert_eq!(covering_polynomial(&both, n, 16).unwrap(), &c1 * &c2);
    }
}
