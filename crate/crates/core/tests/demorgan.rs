use quasivar::algebra::{are_isomorphic, direct_product, enumerate_subalgebras, quotient};
use quasivar::congruence::{all_congruences, si_status, Congruence, SiStatus};
use quasivar::demorgan::*;
use quasivar::morphisms::zero_generated_subalgebra;
use quasivar::quasivar::{psc_check, v_membership, GeneratorSet};
use quasivar::{FiniteAlgebra, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn two_by_s3() -> FiniteAlgebra {
    direct_product(dmm_signature(), &[&two(), &s3()], &lim()).unwrap()
}

fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::trivial(dmm_signature().clone())
}

fn leq(a: &FiniteAlgebra, x: usize, y: usize) -> bool {
    a.apply2(1, x, y) == x
}

#[test]
fn catalog_algebras_are_demorgan_monoids() {
    for name in ["two", "s1", "s3", "s5", "s7", "c4", "d4", "x-trivial"] {
        let a = catalog(name).unwrap();
        assert_eq!(demorgan_violation(&a).unwrap(), None, "{name}");
    }
    assert!(is_demorgan_monoid(&two_by_s3()).unwrap());
    assert!(catalog("s4").is_err());
    assert!(catalog("k9").is_err());
}

#[test]
fn catalog_shapes() {
    assert_eq!(sugihara(3).size(), 7);
    assert!(sugihara(0).is_trivial());
    let d = d4();
    let (e, f) = (1, 2);
    assert!(!leq(&d, e, f) && !leq(&d, f, e));
    assert!(leq(&d, 0, e) && leq(&d, f, 3));
    let t = two();
    assert!((0..2).all(|x| leq(&t, x, 1)));
    assert_eq!(t.apply1(3, 1), 0);
    // fusion of 1 and -1 in S3 is -1
    let s = s3();
    assert_eq!(s.apply2(0, 2, 0), 0);
}

#[test]
fn failed_axiom_is_reported() {
    let mut tables = c4().tables().to_vec();
    // f·f := bottom: (f·f)·f² is bottom, f·(f·f²) is f²
    tables[0][2 * 4 + 2] = 0;
    let bad = FiniteAlgebra::from_tables(dmm_signature().clone(), 4, tables).unwrap();
    assert_eq!(demorgan_violation(&bad).unwrap().unwrap().axiom, "associativity");
    assert!(is_demorgan_monoid(&sugihara(1)).is_ok());
    assert!(is_demorgan_monoid(&dunn_reduct(&c4()).unwrap()).is_err());
}

#[test]
fn reducts() {
    let r = dunn_reduct(&c4()).unwrap();
    assert!(is_dunn_monoid(&r).unwrap());
    let fail = brouwer_violation(&r).unwrap().unwrap();
    assert_eq!(fail.axiom, "e is the top");
}

#[test]
fn simple_catalog() {
    for a in [two(), c4(), d4(), catalog("x-trivial").unwrap()] {
        assert_eq!(si_status(&a, None, &lim()).unwrap(), SiStatus::Simple);
    }
    for n in 1..4 {
        assert!(si_status(&sugihara(n), None, &lim()).unwrap().is_si());
    }
}

#[test]
fn reflection_of_trivial_is_c4() {
    let r = reflect(&dunn_reduct(&trivial()).unwrap()).unwrap();
    assert!(are_isomorphic(&r, &c4()).unwrap().is_some());
}

#[test]
fn reflection_of_s3() {
    let r = reflect(&dunn_reduct(&s3()).unwrap()).unwrap();
    assert_eq!(r.size(), 8);
    assert!(is_demorgan_monoid(&r).unwrap());
    assert!(in_m(&r).unwrap());
    // {bot, e, e', top}
    let e = 1;
    let sub = r.induced(&[e, 3 + e, 6, 7]).unwrap();
    assert!(are_isomorphic(&sub, &c4()).unwrap().is_some());
}

#[test]
fn reflected_congruences() {
    for a in [trivial(), s3(), two(), two_by_s3()] {
        let d = dunn_reduct(&a).unwrap();
        let r = reflect(&d).unwrap();
        let id = reflect_congruence(&d, &Congruence::identity(d.size())).unwrap();
        assert!(id.is_identity());
        let con_a = all_congruences(&d, &lim()).unwrap();
        let con_r = all_congruences(&r, &lim()).unwrap();
        let mut images: Vec<Congruence> = con_a
            .congruences()
            .iter()
            .map(|t| reflect_congruence(&d, t).unwrap())
            .collect();
        for (t, rt) in con_a.congruences().iter().zip(&images) {
            let (qa, _) = quotient(&d, t).unwrap();
            let (qr, _) = quotient(&r, rt).unwrap();
            assert!(are_isomorphic(&qr, &reflect(&qa).unwrap()).unwrap().is_some());
        }
        images.push(Congruence::total(r.size()));
        assert_eq!(images.len(), con_r.len());
        assert!(images.iter().all(|c| con_r.contains(c)));
    }
}

#[test]
fn reflected_subalgebras() {
    for a in [trivial(), s3(), two(), two_by_s3()] {
        let d = dunn_reduct(&a).unwrap();
        let r = reflect(&d).unwrap();
        let n = d.size();
        let subs_a = enumerate_subalgebras(&d, false, &lim()).unwrap();
        let subs_r = enumerate_subalgebras(&r, false, &lim()).unwrap();
        assert_eq!(subs_a.len(), subs_r.len());
        for s in &subs_a {
            let mut u = s.inclusion.clone();
            u.extend(s.inclusion.iter().map(|x| x + n));
            u.extend([2 * n, 2 * n + 1]);
            u.sort_unstable();
            let found = subs_r.iter().find(|t| t.inclusion == u).expect("reflected subuniverse");
            assert!(are_isomorphic(&found.algebra, &reflect(&s.algebra).unwrap()).unwrap().is_some());
        }
    }
}

#[test]
fn reflection_keeps_si_status() {
    for a in [s3(), two(), two_by_s3()] {
        let d = dunn_reduct(&a).unwrap();
        let before = si_status(&d, None, &lim()).unwrap().is_si();
        let after = si_status(&reflect(&d).unwrap(), None, &lim()).unwrap().is_si();
        assert_eq!(before, after);
    }
    let r = reflect(&dunn_reduct(&trivial()).unwrap()).unwrap();
    assert!(si_status(&r, None, &lim()).unwrap().is_si());
}

#[test]
fn x_construction_examples() {
    let x = x_construction(&two_by_s3()).unwrap();
    assert_eq!(x.size(), 15);
    let xe = catalog("x-trivial").unwrap();
    assert_eq!(xe.size(), 5);
    let z = zero_generated_subalgebra(&xe).unwrap();
    assert!(are_isomorphic(&z, &c4()).unwrap().is_some());
    // simple, so C4 cannot be a retract
    assert!(!in_n(&xe).unwrap());
    assert!(!in_m(&xe).unwrap());
}

#[test]
fn m_membership() {
    assert!(!in_m(&s3()).unwrap());
    assert!(in_m(&c4()).unwrap());
    assert!(!in_m(&two()).unwrap());
    assert!(in_n(&c4()).unwrap());
    assert!(!in_n(&d4()).unwrap());
}

#[test]
fn facts_on_catalog() {
    for name in ["two", "s1", "s3", "s5", "c4", "d4", "x-trivial"] {
        let a = catalog(name).unwrap();
        for f in dmm_facts_suite(&a, &lim()).unwrap() {
            assert!(f.holds, "{name}: {} ({})", f.name, f.detail);
        }
    }
    let c = dmm_facts_suite(&c4(), &lim()).unwrap();
    assert_eq!(c.len(), 10);
}

#[test]
fn sugihara_chain_grows() {
    let s5 = GeneratorSet::single(sugihara(2));
    let s3g = GeneratorSet::single(s3());
    assert!(!v_membership(&sugihara(2), &s3g, &lim()).unwrap());
    assert!(v_membership(&s3(), &s5, &lim()).unwrap());
}

fn gens(v: Vec<FiniteAlgebra>) -> GeneratorSet {
    GeneratorSet::new(v).unwrap()
}

#[test]
fn psc_classification() {
    let cases = [
        (vec![two()], PscClass::Boolean),
        (vec![d4()], PscClass::D4),
        (vec![s3()], PscClass::OddSugihara),
        (vec![c4()], PscClass::SubM),
        (vec![two(), s3()], PscClass::NotPsc),
        (vec![x_construction(&two_by_s3()).unwrap()], PscClass::NotPsc),
    ];
    for (g, want) in cases {
        let g = gens(g);
        let got = classify_psc_variety(&g, &lim()).unwrap();
        assert_eq!(got, want);
        let psc = psc_check(&g, &lim()).unwrap_or_else(|e| panic!("{want:?}: {e}"));
        assert_eq!(psc.is_no(), got == PscClass::NotPsc, "{want:?}");
    }
}

#[test]
fn jep_conditions() {
    let x = gens(vec![x_construction(&two_by_s3()).unwrap()]);
    let r = jep_classification_conditions(&x, &lim()).unwrap();
    assert!(!r.psc_variety && r.simple_over_d4.is_none());
    let w = r.quasivariety_over_c4.expect("condition on C4");
    assert_eq!(w.simple.size(), 5);

    let r = jep_classification_conditions(&gens(vec![two()]), &lim()).unwrap();
    assert!(r.psc_variety);

    let r = jep_classification_conditions(&gens(vec![c4(), d4()]), &lim()).unwrap();
    assert!(!r.any());
}
