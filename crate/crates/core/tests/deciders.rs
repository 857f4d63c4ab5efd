use quasivar::algebra::{are_isomorphic, direct_product, Term};
use quasivar::brouwer::{chain, hat, heyting_chain, heyting_square_plus_top, k_poset, p6, up_algebra};
use quasivar::demorgan::{
    brouwer_signature, c4, d4, dmm_signature, dunn_reduct, reflect, s3, sugihara, two,
};
use quasivar::format::parse_qe;
use quasivar::quasivar::{
    admissible_upto, excludes, free_algebra, jep_check, kollar_check, minimal_quasivariety_check, passive, psc_check,
    q_membership, ret_membership, sc_check, unifiable, v_membership, valid, Answer, GeneratorSet, ScOptions, Witness,
};
use quasivar::{FiniteAlgebra, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn g(algebras: Vec<FiniteAlgebra>) -> GeneratorSet {
    GeneratorSet::new(algebras).unwrap()
}

fn up(x: &quasivar::brouwer::DominatedPoset) -> FiniteAlgebra {
    up_algebra(x, &lim()).unwrap().algebra
}

fn dmm(text: &str) -> quasivar::algebra::QuasiEquation {
    parse_qe(text, Some(dmm_signature())).unwrap()
}

const CD: ScOptions = ScOptions {
    bound: 2,
    assume_cd: true,
};

#[test]
fn free_algebras() {
    assert_eq!(free_algebra(&g(vec![two()]), 1, &lim()).unwrap().algebra.size(), 4);
    let f = free_algebra(&g(vec![c4()]), 0, &lim()).unwrap();
    assert!(are_isomorphic(&f.algebra, &c4()).unwrap().is_some());
    let chain2 = up(&chain(2).unwrap());
    assert_eq!(free_algebra(&g(vec![chain2]), 0, &lim()).unwrap().algebra.size(), 1);
}

#[test]
fn validity() {
    for a in [two(), s3(), c4(), d4()] {
        assert!(valid(&dmm("x = x"), &g(vec![a]), &lim()).unwrap().is_yes());
    }
    assert!(valid(&dmm("e <= ~e"), &g(vec![c4()]), &lim()).unwrap().is_yes());
    assert!(valid(&dmm("e <= ~e"), &g(vec![two()]), &lim()).unwrap().is_no());
}

#[test]
fn unification() {
    let brouwer = g(vec![up(&p6())]);
    let sig = brouwer_signature();
    let eqs = vec![parse_qe("x -> y = x v y", Some(sig)).unwrap().conclusion];
    assert!(unifiable(&eqs, &brouwer, &lim()).unwrap().is_yes());
    let neg = vec![dmm("x = ~x").conclusion];
    assert!(unifiable(&neg, &g(vec![two()]), &lim()).unwrap().is_no());
    let consts = vec![(Term::constant("e"), Term::app("neg", vec![Term::constant("e")]))];
    assert!(unifiable(&consts, &g(vec![c4()]), &lim()).unwrap().is_no());

    let q = dmm("x = ~x => x = e");
    assert!(passive(&q, &g(vec![two()]), &lim()).unwrap());
    let q = parse_qe("x ^ y = x => x -> y = y", Some(sig)).unwrap();
    assert!(!passive(&q, &brouwer, &lim()).unwrap());
    assert!(!passive(&dmm("x = e"), &g(vec![two()]), &lim()).unwrap());
}

#[test]
fn kollar() {
    assert!(kollar_check(&g(vec![heyting_chain(5).unwrap(), heyting_square_plus_top()])));
    assert!(!kollar_check(&g(vec![s3()])));
    assert!(kollar_check(&g(vec![two()])));
}

#[test]
fn joint_embedding() {
    assert!(jep_check(&g(vec![c4()]), &lim()).unwrap().is_yes());
    assert!(jep_check(&g(vec![two(), s3()]), &lim()).unwrap().is_no());
    let heyting = g(vec![heyting_chain(5).unwrap(), heyting_square_plus_top()]);
    assert!(jep_check(&heyting, &lim()).unwrap().is_yes());
}

#[test]
fn passive_structural_completeness() {
    assert!(psc_check(&g(vec![two()]), &lim()).unwrap().is_yes());
    let v = psc_check(&g(vec![c4(), d4()]), &lim()).unwrap();
    assert!(v.is_no());
    assert!(matches!(v.witness, Some(Witness::TwoRelativelySimple { .. })));
    let v = psc_check(&g(vec![up(&p6())]), &lim()).unwrap();
    assert!(v.is_yes());
    assert!(matches!(v.witness, Some(Witness::TrivialPoint { .. })));
}

#[test]
fn minimality() {
    for a in [two(), s3(), c4(), d4()] {
        assert!(minimal_quasivariety_check(&g(vec![a]), &lim()).unwrap().is_yes());
    }
    assert!(minimal_quasivariety_check(&g(vec![sugihara(2)]), &lim()).unwrap().is_no());
    let trivial = FiniteAlgebra::trivial(dmm_signature().clone());
    assert!(minimal_quasivariety_check(&g(vec![trivial]), &lim()).unwrap().is_no());
}

#[test]
fn structural_completeness() {
    let v = sc_check(&g(vec![s3()]), CD, &lim()).unwrap();
    assert!(v.is_yes());
    let v = sc_check(&g(vec![two()]), CD, &lim()).unwrap();
    assert!(v.is_yes());
    assert!(matches!(v.witness, Some(Witness::ScCertificate { rank, .. }) if rank <= 1));
    assert!(sc_check(&g(vec![two()]), ScOptions::default(), &lim()).is_err());
}

#[test]
fn admissibility() {
    let q = dmm("x = x");
    assert_eq!(admissible_upto(&q, &g(vec![s3()]), 1, &lim()).unwrap().answer, Answer::CertifiedUpTo(1));
    let q = dmm("x = ~x => x = e ^ ~e");
    assert_eq!(admissible_upto(&q, &g(vec![two()]), 2, &lim()).unwrap().answer, Answer::CertifiedUpTo(2));
}

#[test]
fn memberships() {
    assert!(q_membership(&s3(), &g(vec![s3()])).unwrap());
    let up_p6 = up(&p6());
    let hp6 = up(&hat(&p6()).unwrap());
    assert!(v_membership(&up_p6, &g(vec![hp6]), &lim()).unwrap());

    let r = reflect(&dunn_reduct(&s3()).unwrap()).unwrap();
    assert!(ret_membership(&r, &g(vec![r.clone()]), &c4()).unwrap());
    let trivial = FiniteAlgebra::trivial(dmm_signature().clone());
    assert!(ret_membership(&trivial, &g(vec![two(), c4()]), &c4()).unwrap());
    assert!(!ret_membership(&two(), &g(vec![two(), c4()]), &c4()).unwrap());
}

#[test]
fn exclusions() {
    assert!(!excludes(&s3(), &s3(), &lim()).unwrap());
    let k4 = up(&k_poset(4).unwrap());
    let hk3 = up(&hat(&k_poset(3).unwrap()).unwrap());
    assert!(excludes(&k4, &hk3, &lim()).unwrap());
    assert!(excludes(&two(), &c4(), &lim()).unwrap());
}

#[test]
fn products_stay_inside() {
    let p = direct_product(dmm_signature(), &[&two(), &s3()], &lim()).unwrap();
    assert!(q_membership(&p, &g(vec![two(), s3()])).unwrap());
    assert!(!q_membership(&p, &g(vec![s3()])).unwrap());
}
