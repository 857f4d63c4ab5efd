use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasivar::algebra::{
    are_isomorphic, direct_product, enumerate_subalgebras, product_coordinates, quotient, Signature, Term,
};
use quasivar::brouwer::*;
use quasivar::congruence::{all_congruences, principal_congruence, Congruence};
use quasivar::format::{algebra_from_json, algebra_to_json, parse_term, poset_from_json, poset_to_json};
use quasivar::gen::{random_algebra, random_brouwerian, random_demorgan_monoid, random_dominated_poset};
use quasivar::morphisms::{embedding_exists, enumerate_homs, is_homomorphism};
use quasivar::oracle::{naive_embeds, naive_homs, naive_subuniverses};
use quasivar::quasivar::{q_membership, GeneratorSet};
use quasivar::{FiniteAlgebra, Limits};
use std::sync::Arc;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unary_binary() -> Arc<Signature> {
    Signature::new([("g", 1), ("f", 2)]).unwrap()
}

fn with_constant() -> Arc<Signature> {
    Signature::new([("f", 2), ("c", 0)]).unwrap()
}

fn pair(seed: u64) -> (FiniteAlgebra, FiniteAlgebra) {
    let mut r = rng(seed);
    let sig = if seed % 2 == 0 { unary_binary() } else { with_constant() };
    let n = 1 + (seed as usize / 2) % 4;
    let m = 1 + (seed as usize / 8) % 4;
    (random_algebra(&mut r, &sig, n), random_algebra(&mut r, &sig, m))
}

fn compose(h: &[usize], k: &[usize]) -> Vec<usize> {
    h.iter().map(|&x| k[x]).collect()
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z", "x1"]).prop_map(Term::var),
        Just(Term::constant("e")),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["meet", "join", "fuse", "imp"]), inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Term::app(op, vec![a, b])),
            inner.clone().prop_map(|a| Term::app("neg", vec![a])),
            prop::collection::vec(inner, 3).prop_map(|v| Term::app("h", v)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_search_matches_the_oracle(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let mut fast = enumerate_homs(&a, &b, None).unwrap();
        fast.sort();
        prop_assert_eq!(fast, naive_homs(&a, &b, usize::MAX));
        prop_assert_eq!(embedding_exists(&a, &b).unwrap().is_some(), naive_embeds(&a, &b));
    }

    #[test]
    fn homomorphisms_compose(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let c = random_algebra(&mut rng(seed ^ 1), a.signature(), 2);
        for h in enumerate_homs(&a, &b, Some(4)).unwrap() {
            for k in enumerate_homs(&b, &c, Some(4)).unwrap() {
                prop_assert!(is_homomorphism(&a, &c, &compose(&h, &k)));
            }
        }
    }

    #[test]
    fn subalgebras_match_the_oracle(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let mut fast: Vec<Vec<usize>> =
            enumerate_subalgebras(&a, false, &Limits::default()).unwrap().into_iter().map(|s| s.inclusion).collect();
        fast.sort();
        let mut slow = naive_subuniverses(&a).unwrap();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn quotients_by_congruences(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let lattice = all_congruences(&a, &Limits::default()).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                prop_assert!(lattice.contains(&principal_congruence(&a, x, y)));
            }
        }
        for theta in lattice.congruences() {
            let (q, proj) = quotient(&a, theta).unwrap();
            prop_assert_eq!(q.size(), theta.num_blocks());
            prop_assert!(is_homomorphism(&a, &q, &proj));
            prop_assert_eq!(&Congruence::kernel(&proj), theta);
        }
    }

    #[test]
    fn kernels_of_homomorphisms_are_congruences(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let lattice = all_congruences(&a, &Limits::default()).unwrap();
        for h in enumerate_homs(&a, &b, None).unwrap() {
            prop_assert!(lattice.contains(&Congruence::kernel(&h)));
        }
    }

    #[test]
    fn products_project_and_stay_in_the_quasivariety(seed in any::<u64>()) {
        let (a, b) = pair(seed);
        let p = direct_product(a.signature(), &[&a, &b], &Limits::default()).unwrap();
        prop_assert_eq!(p.size(), a.size() * b.size());
        let factors = [&a, &b];
        for (i, f) in factors.iter().enumerate() {
            let proj: Vec<usize> = p.elements().map(|x| product_coordinates(&factors, x)[i]).collect();
            prop_assert!(is_homomorphism(&p, f, &proj));
        }
        let gens = GeneratorSet::new(vec![a.clone(), b.clone()]).unwrap();
        prop_assert!(q_membership(&p, &gens).unwrap());
        prop_assert!(q_membership(&a, &gens).unwrap());
    }

    #[test]
    fn algebra_json_round_trips(seed in any::<u64>()) {
        let (a, _) = pair(seed);
        let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
        prop_assert_eq!(back.tables(), a.tables());
        let shuffled = a.permuted(&a.elements().rev().collect::<Vec<_>>()).unwrap();
        prop_assert!(are_isomorphic(&a, &shuffled).unwrap().is_some());
    }

    #[test]
    fn terms_reparse(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string(), None).unwrap(), t);
    }

    #[test]
    fn random_demorgan_monoids_satisfy_the_axioms(seed in any::<u64>()) {
        let a = random_demorgan_monoid(&mut rng(seed), 6);
        prop_assert!(quasivar::demorgan::is_demorgan_monoid(&a).unwrap());
    }

    #[test]
    fn up_set_duality_round_trips(seed in any::<u64>()) {
        let x = random_dominated_poset(&mut rng(seed), 6);
        let a = up_algebra(&x, &Limits::default()).unwrap().algebra;
        prop_assert!(quasivar::demorgan::is_brouwerian(&a).unwrap());
        let pf = prime_filters(&a).unwrap();
        prop_assert!(poset_isomorphism(&pf.poset, &x).is_some());
        prop_assert_eq!(pf.poset.depth(), x.depth());
        let back = poset_from_json(&poset_to_json(&x)).unwrap();
        prop_assert_eq!(back.pairs(), x.pairs());
    }

    #[test]
    fn brouwerian_algebras_are_their_double_duals(seed in any::<u64>()) {
        let a = random_brouwerian(&mut rng(seed), 8);
        let pf = prime_filters(&a).unwrap();
        let back = up_algebra(&pf.poset, &Limits::default()).unwrap().algebra;
        prop_assert!(are_isomorphic(&a, &back).unwrap().is_some());
    }

    #[test]
    fn duals_of_homomorphisms_are_contravariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_brouwerian(&mut r, 5);
        let b = random_brouwerian(&mut r, 5);
        let c = random_brouwerian(&mut r, 5);
        for h in enumerate_homs(&a, &b, Some(3)).unwrap() {
            let dh = dual_of_hom(&a, &b, &h).unwrap();
            for k in enumerate_homs(&b, &c, Some(3)).unwrap() {
                let dk = dual_of_hom(&b, &c, &k).unwrap();
                let whole = dual_of_hom(&a, &c, &compose(&h, &k)).unwrap();
                prop_assert_eq!(whole.map, dk.then(&dh).unwrap().map);
            }
            // injective homomorphisms dualize to surjective p-morphisms
            let injective = h.iter().collect::<std::collections::HashSet<_>>().len() == h.len();
            prop_assert_eq!(injective, dh.is_surjective());
        }
    }

    #[test]
    fn pmorphisms_carry_up_sets_and_do_not_raise_depth(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_dominated_poset(&mut r, 6);
        let y = random_dominated_poset(&mut r, 4);
        if let Some(map) = find_pmorphism(&x, &y, false, false) {
            prop_assert!(is_pmorphism(&x, &y, &map));
            for p in 0..x.size() {
                let image = (0..x.size()).filter(|&q| x.leq(p, q)).fold(0u64, |m, q| m | 1 << map[q]);
                prop_assert_eq!(image, y.up(map[p]));
                prop_assert!(y.element_depth(map[p]) <= x.element_depth(p));
            }
            let g = PMorphism::new(x.clone(), y.clone(), map).unwrap();
            if g.is_surjective() {
                prop_assert!(y.depth() <= x.depth());
            }
            let d = dual_of_pmorphism(&g, &Limits::default()).unwrap();
            prop_assert!(is_homomorphism(&d.source.algebra, &d.target.algebra, &d.map));
            prop_assert_eq!(
                g.is_surjective(),
                d.map.iter().collect::<std::collections::HashSet<_>>().len() == d.map.len()
            );
        }
    }
}
