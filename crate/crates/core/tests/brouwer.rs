use quasivar::algebra::{are_isomorphic, quotient};
use quasivar::brouwer::*;
use quasivar::congruence::{all_congruences, si_status, SiStatus};
use quasivar::demorgan::is_brouwerian;
use quasivar::format::{parse_qe, poset_from_json, poset_to_json};
use quasivar::morphisms::{embedding_exists, enumerate_homs};
use quasivar::quasivar::{admissible_upto, valid, Answer, GeneratorSet, Replay, ReplayContext};
use quasivar::Limits;

fn lim() -> Limits {
    Limits::default()
}

fn dominated(n: usize, covers: &[(usize, usize)]) -> DominatedPoset {
    DominatedPoset::new(Poset::from_covers(n, covers).unwrap()).unwrap()
}

/// Two minimal points under a top: dominated, not bounded.
fn vee() -> DominatedPoset {
    dominated(3, &[(0, 2), (1, 2)])
}

/// `a, b < c < top`: depth 2 with two points of depth 2.
fn fork() -> DominatedPoset {
    dominated(4, &[(0, 2), (1, 2), (2, 3)])
}

#[test]
fn up_set_algebras() {
    assert_eq!(up_algebra(&chain(2).unwrap(), &lim()).unwrap().algebra.size(), 2);
    let up = up_algebra(&p6(), &lim()).unwrap();
    assert_eq!(up.algebra.size(), 10);
    assert!(is_brouwerian(&up.algebra).unwrap());
    for x in [p6(), k_poset(3).unwrap(), vee(), fork(), chain(1).unwrap(), chain(4).unwrap()] {
        let a = up_algebra(&x, &lim()).unwrap().algebra;
        assert!(is_brouwerian(&a).unwrap());
        let si = si_status(&a, None, &lim()).unwrap().is_si();
        assert_eq!(si, x.is_bounded() && x.size() > 1, "{x:?}");
    }
}

#[test]
fn brouwerian_identities_hold_in_up_set_algebras() {
    let sig = quasivar::demorgan::brouwer_signature();
    let qs = ["x -> x = e", "x ^ e = x", "x ^ (x -> y) <= y"];
    for x in [p6(), hat(&p6()).unwrap(), k_poset(3).unwrap(), vee(), fork()] {
        let g = GeneratorSet::single(up_algebra(&x, &lim()).unwrap().algebra);
        for q in qs {
            let q = parse_qe(q, Some(sig)).unwrap();
            assert!(valid(&q, &g, &lim()).unwrap().is_yes(), "{q}");
        }
    }
}

#[test]
fn prime_filter_posets() {
    let two = up_algebra(&chain(2).unwrap(), &lim()).unwrap().algebra;
    assert_eq!(prime_filters(&two).unwrap().poset.size(), 2);
    for x in [p6(), k_poset(3).unwrap(), vee(), fork(), chain(3).unwrap()] {
        let a = up_algebra(&x, &lim()).unwrap().algebra;
        let pf = prime_filters(&a).unwrap();
        assert!(poset_isomorphism(&pf.poset, &x).is_some(), "{x:?}");
        let fsi = si_status(&a, None, &lim()).unwrap().is_fsi();
        assert_eq!(pf.poset.is_bounded(), fsi, "{x:?}");
    }
    let heyting = quasivar::brouwer::heyting_chain(3).unwrap();
    assert!(prime_filters(&heyting).is_ok());
}

#[test]
fn duals_of_identities_and_inclusions() {
    let x = p6();
    let a = up_algebra(&x, &lim()).unwrap().algebra;
    let id: Vec<usize> = a.elements().collect();
    let g = dual_of_hom(&a, &a, &id).unwrap();
    assert_eq!(g.map, (0..g.dom.size()).collect::<Vec<_>>());

    let d = dual_of_pmorphism(&PMorphism::identity(&x), &lim()).unwrap();
    assert_eq!(d.map, id);

    // the up-set {a, 1, top} of P6 and its inclusion
    let u = x.up(1);
    let (sub, inclusion) = x.up_set(u).unwrap();
    let i = PMorphism::new(sub, x.clone(), inclusion.clone()).unwrap();
    let d = dual_of_pmorphism(&i, &lim()).unwrap();
    for (v, &w) in d.source.masks.iter().zip(&d.map) {
        let restricted = inclusion
            .iter()
            .enumerate()
            .filter(|&(_, &p)| v >> p & 1 == 1)
            .fold(0u64, |m, (k, _)| m | 1 << k);
        assert_eq!(d.target.masks[w], restricted);
    }
    assert_eq!(d.target.masks.len(), {
        let mut img = d.map.clone();
        img.sort_unstable();
        img.dedup();
        img.len()
    });
}

#[test]
fn surjective_iff_dual_injective() {
    let xs = [p6(), vee(), fork(), chain(3).unwrap(), k_poset(3).unwrap()];
    let algebras: Vec<_> = xs.iter().map(|x| up_algebra(x, &lim()).unwrap().algebra).collect();
    let mut seen = 0;
    for a in &algebras {
        for b in &algebras {
            for h in enumerate_homs(a, b, Some(40)).unwrap() {
                let g = dual_of_hom(a, b, &h).unwrap();
                let mut img = h.clone();
                img.sort_unstable();
                img.dedup();
                let surjective = img.len() == b.size();
                let injective = img.len() == a.size();
                assert_eq!(surjective, g.is_injective());
                assert_eq!(injective, g.is_surjective());
                seen += 1;
            }
        }
    }
    assert!(seen > 50);
}

#[test]
fn depths() {
    let p = p6();
    assert_eq!(p.element_depth(p.top()), 0);
    assert_eq!(chain(4).unwrap().depth(), 3);
    for n in 3..=6 {
        assert_eq!(k_poset(n).unwrap().depth(), 3, "K{n}");
    }
    // the small cases collapse inside the cube
    assert_eq!(k_poset(1).unwrap().depth(), 1);
    assert_eq!(k_poset(2).unwrap().depth(), 2);
}

#[test]
fn hat_depths() {
    for x in [chain(2).unwrap(), chain(3).unwrap(), chain(4).unwrap(), p6(), k_poset(3).unwrap(), k_poset(4).unwrap()] {
        let h = hat(&x).unwrap();
        assert_eq!(h.depth(), x.depth(), "{x:?}");
        let (sub, _) = h.up_set(x.all()).unwrap();
        assert!(poset_isomorphism(&sub, &x).is_some());
    }
    let f = fork();
    assert_eq!(f.depth(), 2);
    assert_eq!(hat(&f).unwrap().depth(), 3);
    assert_eq!(hat(&chain(3).unwrap()).unwrap().size(), 3);
}

#[test]
fn k_poset_atoms_and_coatoms() {
    for n in 3..=6 {
        let k = k_poset(n).unwrap();
        assert_eq!(k.size(), 2 * n + 2);
        for atom in 1..=n {
            let above = (n + 1..=2 * n).filter(|&c| k.leq(atom, c)).count();
            assert_eq!(above, n - 1);
        }
    }
}

#[test]
fn pmorphism_searches() {
    for x in [p6(), k_poset(3).unwrap(), hat(&p6()).unwrap()] {
        let id = surjective_pmorphism_exists(&x, &x).unwrap();
        assert_eq!(id, (0..x.size()).collect::<Vec<_>>());
        assert!(sh_membership_dual(&x, &x, &lim()).unwrap().is_some());
    }
    let k3 = k_poset(3).unwrap();
    let k4 = k_poset(4).unwrap();
    assert!(surjective_pmorphism_exists(&hat(&k3).unwrap(), &k4).is_none());
    assert!(sh_membership_dual(&k4, &hat(&k3).unwrap(), &lim()).unwrap().is_none());
    let w = sh_membership_dual(&p6(), &hat(&p6()).unwrap(), &lim()).unwrap().unwrap();
    assert_eq!(w.up_set, vec![0, 1, 2, 3, 4, 5]);
}

#[test]
fn pmorphisms_respect_up_sets_and_depth() {
    let h = hat(&p6()).unwrap();
    for y in [chain(2).unwrap(), chain(3).unwrap(), chain(4).unwrap(), vee(), fork(), p6()] {
        let Some(g) = surjective_pmorphism_exists(&h, &y) else {
            continue;
        };
        let (dh, dy) = (h.depths(), y.depths());
        for x in 0..h.size() {
            let img = image_of(&g, h.up(x));
            assert_eq!(y.up(g[x]), img);
            assert!(dy[g[x]] <= dh[x]);
        }
    }
}

fn image_of(map: &[usize], set: u64) -> u64 {
    (0..map.len()).filter(|&x| set >> x & 1 == 1).fold(0, |m, x| m | 1 << map[x])
}

/// Every dominated poset on `n` points, up to labelling accidents.
fn small_dominated(n: usize) -> Vec<DominatedPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let mut out: Vec<DominatedPoset> = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let covers: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let Ok(p) = Poset::from_covers(n, &covers) else { continue };
        let Ok(d) = DominatedPoset::new(p) else { continue };
        if !out.iter().any(|o| poset_isomorphism(o, &d).is_some()) {
            out.push(d);
        }
    }
    out
}

#[test]
fn dual_sh_agrees_with_the_algebra_side() {
    let mut posets = Vec::new();
    for n in 1..=4 {
        posets.extend(small_dominated(n));
    }
    assert_eq!(posets.len(), 1 + 1 + 2 + 5);
    for y in &posets {
        let ya = up_algebra(y, &lim()).unwrap().algebra;
        for z in &posets {
            let za = up_algebra(z, &lim()).unwrap().algebra;
            let dual = sh_membership_dual(y, z, &lim()).unwrap().is_some();
            let mut direct = false;
            for theta in all_congruences(&za, &lim()).unwrap().congruences() {
                let (q, _) = quotient(&za, theta).unwrap();
                if embedding_exists(&ya, &q).unwrap().is_some() {
                    direct = true;
                    break;
                }
            }
            assert_eq!(dual, direct, "{y:?} into {z:?}");
        }
    }
}

#[test]
fn two_five_element_heyting_algebras() {
    let a = heyting_chain(5).unwrap();
    let b = heyting_square_plus_top();
    for h in [&a, &b] {
        assert_eq!(h.size(), 5);
        assert!(is_brouwerian(h).unwrap());
        assert_eq!(si_status(h, None, &lim()).unwrap(), SiStatus::Si);
    }
    assert!(are_isomorphic(&a, &b).unwrap().is_none());
}

#[test]
fn poset_json() {
    let p = p6();
    let text = poset_to_json(&p);
    let back = poset_from_json(&text).unwrap();
    assert_eq!(&back, p.poset());
    assert!(poset_from_json(r#"{"size": 2, "leq": [[0, 0], [1, 1], [0, 1], [1, 0]]}"#).is_err());
    assert!(poset_from_json(r#"{"size": 2, "leq": [[0, 0], [0, 1]]}"#).is_err());
    assert!(poset_from_json(r#"{"size": 2, "leq": [[0, 0], [1, 1], [0, 5]]}"#).is_err());
}

#[test]
fn up_set_guard() {
    let anti = Poset::from_leq(20, |x, y| x == y).unwrap();
    let small = Limits {
        up_sets: 1000,
        ..Limits::default()
    };
    assert!(matches!(up_sets(&anti, &small), Err(quasivar::Error::GuardExceeded { .. })));
}

#[test]
fn mints_rule() {
    let sig = quasivar::demorgan::brouwer_signature();
    let q = parse_qe("x -> y <= x v z => ((x->y)->x) v ((x->y)->z) = e", Some(sig)).unwrap();
    let l = lim();
    let up6 = GeneratorSet::single(up_algebra(&p6(), &l).unwrap().algebra);
    let verdict = valid(&q, &up6, &l).unwrap();
    assert!(verdict.is_no());
    let ctx = ReplayContext {
        gens: &up6,
        qe: Some(&q),
        equations: None,
        maps: None,
        limits: &l,
    };
    assert_eq!(verdict.witness.unwrap().replay(&ctx).unwrap(), Replay::Verified);
    // every substitution instance over two free generators holds
    assert_eq!(admissible_upto(&q, &up6, 2, &l).unwrap().answer, Answer::CertifiedUpTo(2));
    // the smallest refuting poset: three points between a bottom and the top
    let fork3 = dominated(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
    let small = GeneratorSet::single(up_algebra(&fork3, &l).unwrap().algebra);
    assert!(valid(&q, &small, &l).unwrap().is_no());
    let hatted = GeneratorSet::single(up_algebra(&hat(&p6()).unwrap(), &l).unwrap().algebra);
    assert!(valid(&q, &hatted, &l).unwrap().is_yes());
}
