use proptest::prelude::*;

use sidon_core::algebra::{AbelianGroup, FieldElement, FiniteField};
use sidon_core::dense::{construct_dense, DenseName};
use sidon_core::incidence::IncidenceStructure;
use sidon_core::search::canonical_form;
use sidon_core::sidon::{check_sidon, counting_bound, is_sidon, t_set};

fn group_strategy() -> impl Strategy<Value = AbelianGroup> {
    prop_oneof![
        (2u64..60).prop_map(AbelianGroup::cyclic),
        (2u64..8, 1u64..4).prop_map(|(a, k)| AbelianGroup::new(vec![a, a * k]).unwrap()),
        (2u64..4, 1u64..3).prop_map(|(a, k)| AbelianGroup::new(vec![a, a, a * k]).unwrap()),
    ]
}

fn group_and_set() -> impl Strategy<Value = (AbelianGroup, Vec<usize>)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.len();
        (Just(g), proptest::collection::vec(0..n, 0..7))
    })
}

fn quadruple_count(g: &AbelianGroup, s: &[usize]) -> u64 {
    let mut n = 0;
    for &x in s {
        for &y in s {
            for &z in s {
                for &w in s {
                    n += (g.add(x, y) == g.add(z, w)) as u64;
                }
            }
        }
    }
    n
}

fn nontrivial_quadruple(g: &AbelianGroup, s: &[usize]) -> bool {
    s.iter().any(|&x| {
        s.iter().any(|&y| {
            s.iter()
                .any(|&z| s.iter().any(|&w| g.add(x, y) == g.add(z, w) && !((x == z && y == w) || (x == w && y == z))))
        })
    })
}

fn dedup(s: &[usize]) -> Vec<usize> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

proptest! {
    #[test]
    fn group_laws((g, s) in group_and_set()) {
        for &a in &s {
            prop_assert_eq!(g.add(a, g.zero()), a);
            prop_assert_eq!(g.add(a, g.neg(a)), g.zero());
            prop_assert_eq!(g.index_of(&g.element(a)).unwrap(), a);
            prop_assert_eq!(g.scale(a, g.element_order(a)), g.zero());
            for &b in &s {
                prop_assert_eq!(g.add(a, b), g.add(b, a));
                prop_assert_eq!(g.sub(g.add(a, b), b), a);
                for &c in &s {
                    prop_assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn sidon_matches_quadruple_scan((g, s) in group_and_set()) {
        let s = dedup(&s);
        let r = is_sidon(&g, &s);
        prop_assert_eq!(r.is_sidon, !nontrivial_quadruple(&g, &s));
        prop_assert_eq!(check_sidon(&g, &s), r.is_sidon);
        prop_assert_eq!(r.energy, quadruple_count(&g, &s));
        if r.is_sidon {
            let k = s.len() as u64;
            prop_assert_eq!(r.energy, 2 * k * k - k);
            prop_assert!(k <= counting_bound(g.order()));
        } else {
            let w: Vec<usize> = r.witness.unwrap().iter().map(|e| g.index_of(e).unwrap()).collect();
            prop_assert_eq!(g.add(w[0], w[1]), g.add(w[2], w[3]));
            prop_assert!(dedup(&[w[0], w[1]]) != dedup(&[w[2], w[3]]));
        }
    }

    #[test]
    fn sidon_is_affine_invariant((g, s) in group_and_set(), t in 0usize..1000) {
        let t = t % g.len();
        let shifted: Vec<usize> = s.iter().map(|&x| g.add(x, t)).collect();
        let negated: Vec<usize> = s.iter().map(|&x| g.neg(x)).collect();
        let base = is_sidon(&g, &s).is_sidon;
        prop_assert_eq!(is_sidon(&g, &shifted).is_sidon, base);
        prop_assert_eq!(is_sidon(&g, &negated).is_sidon, base);
        prop_assert_eq!(t_set(&g, &shifted), t_set(&g, &s));
    }

    #[test]
    fn canonical_form_is_a_class_invariant((g, s) in group_and_set(), t in 0usize..1000) {
        let s = dedup(&s);
        prop_assume!(!s.is_empty());
        let t = t % g.len();
        let moved: Vec<usize> = s.iter().map(|&x| g.neg(g.add(x, t))).collect();
        prop_assert_eq!(canonical_form(&g, &s), canonical_form(&g, &moved));
    }

    #[test]
    fn development_is_partial_linear_space_iff_sidon((g, s) in group_and_set()) {
        let s = dedup(&s);
        let dev = IncidenceStructure::develop(&g, &s);
        prop_assert_eq!(dev.is_partial_linear_space().is_ok(), is_sidon(&g, &s).is_sidon);
        prop_assert_eq!(dev.n_points(), g.len());
        for p in 0..g.len() {
            prop_assert_eq!(dev.lines_through(p).len(), s.len());
        }
    }

    #[test]
    fn field_laws(qi in 0usize..9, xs in proptest::collection::vec(0u32..1024, 3)) {
        let q = [2u64, 3, 4, 5, 7, 8, 9, 25, 27][qi];
        let f = FiniteField::of_order(q).unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| FieldElement(xs[i] % q as u32));
        prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement(0));
        prop_assert_eq!(f.pow(a, q), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.from_int(1));
            prop_assert_eq!(f.exp(f.log(a).unwrap()), a);
        }
    }

    #[test]
    fn group_json_round_trip(g in group_strategy()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: AbelianGroup = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn dense_constructions_are_sidon_for_small_q() {
    for q in [3u64, 5, 7, 9] {
        let f = FiniteField::of_order(q).unwrap();
        for name in DenseName::ALL {
            let c = construct_dense(name, &f).unwrap();
            assert!(!nontrivial_quadruple(&c.group, &c.set), "{name} q={q}");
        }
    }
}
