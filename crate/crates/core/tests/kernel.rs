use quasivar::algebra::{
    are_isomorphic, direct_product, enumerate_subalgebras, quotient, subalgebra_generated, term::eval, Assignment, Term,
};
use quasivar::congruence::{
    all_congruences, principal_congruence, relative_congruences, relatively_simple_image, si_status, Congruence, SiStatus,
};
use quasivar::demorgan::{c4, catalog, d4, dmm_signature, dunn_reduct, is_demorgan_monoid, reflect, s3, sugihara, two};
use quasivar::morphisms::{
    embedding_exists, enumerate_homs, hom_exists, is_embedding, is_retract, separates, trivial_subalgebra_points,
    zero_generated_subalgebra,
};
use quasivar::{FiniteAlgebra, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn s5() -> FiniteAlgebra {
    sugihara(2)
}

fn two_by_two() -> FiniteAlgebra {
    direct_product(dmm_signature(), &[&two(), &two()], &lim()).unwrap()
}

fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::trivial(dmm_signature().clone())
}

fn el(a: &FiniteAlgebra, name: &str) -> usize {
    a.element_named(name).unwrap_or_else(|| panic!("no element {name}"))
}

#[test]
fn tables() {
    let s = s3();
    let fuse = s.op("fuse").unwrap();
    assert_eq!(s.apply2(fuse, el(&s, "1"), el(&s, "-1")), el(&s, "-1"));
    let e = eval(&Term::constant("e"), &s, &Assignment::new()).unwrap();
    assert_eq!(e, el(&s, "0"));
    let c = c4();
    let f = c.apply1(c.op("neg").unwrap(), c.constant(c.op("e").unwrap()));
    let ff = c.apply2(c.op("fuse").unwrap(), f, f);
    assert_eq!(ff, 3);
    assert!(c.elements().all(|x| c.apply2(c.op("join").unwrap(), x, ff) == ff));
}

#[test]
fn products() {
    assert_eq!(direct_product(dmm_signature(), &[], &lim()).unwrap().size(), 1);
    assert_eq!(two_by_two().size(), 4);
    let p = direct_product(dmm_signature(), &[&two(), &s3()], &lim()).unwrap();
    assert_eq!(p.size(), 6);
    assert!(is_demorgan_monoid(&p).unwrap());
}

#[test]
fn subalgebras() {
    assert_eq!(subalgebra_generated(&s3(), &[]).unwrap().inclusion, vec![el(&s3(), "0")]);
    assert_eq!(subalgebra_generated(&c4(), &[]).unwrap().algebra.size(), 4);
    let all: Vec<usize> = s5().elements().collect();
    assert_eq!(subalgebra_generated(&s5(), &all).unwrap().inclusion, all);
    let subs = enumerate_subalgebras(&c4(), false, &lim()).unwrap();
    assert_eq!(subs.len(), 1);
    assert_eq!(subs[0].algebra.size(), 4);
    let subs = enumerate_subalgebras(&s5(), true, &lim()).unwrap();
    assert!(subs.iter().any(|s| are_isomorphic(&s.algebra, &s3()).unwrap().is_some()));
    assert_eq!(enumerate_subalgebras(&trivial(), false, &lim()).unwrap().len(), 1);
}

#[test]
fn quotients_and_isomorphisms() {
    let a = s5();
    let (q, _) = quotient(&a, &Congruence::identity(a.size())).unwrap();
    assert!(are_isomorphic(&q, &a).unwrap().is_some());
    assert_eq!(quotient(&a, &Congruence::total(a.size())).unwrap().0.size(), 1);
    let p = two_by_two();
    let first: Vec<usize> = p.elements().map(|x| x / 2).collect();
    let (q, _) = quotient(&p, &Congruence::kernel(&first)).unwrap();
    assert!(are_isomorphic(&q, &two()).unwrap().is_some());
    assert_eq!(are_isomorphic(&c4(), &c4()).unwrap(), Some(vec![0, 1, 2, 3]));
    assert!(are_isomorphic(&c4(), &d4()).unwrap().is_none());
    let swapped = p.permuted(&[3, 1, 2, 0]).unwrap();
    assert!(are_isomorphic(&p, &swapped).unwrap().is_some());
}

#[test]
fn homomorphisms() {
    let homs = enumerate_homs(&two(), &s3(), None).unwrap();
    assert!(homs.contains(&vec![el(&s3(), "0"); 2]));
    assert!(enumerate_homs(&c4(), &two(), None).unwrap().is_empty());
    let id: Vec<usize> = s5().elements().collect();
    assert!(enumerate_homs(&s5(), &s5(), None).unwrap().contains(&id));
    // both {-1, 0, 1} and {-2, 0, 2} are copies of S3; the least is reported
    let e = embedding_exists(&s3(), &s5()).unwrap().unwrap();
    assert!(is_embedding(&s3(), &s5(), &e));
    assert!(is_embedding(&s3(), &s5(), &[1, 2, 3]));
    assert!(embedding_exists(&s5(), &s3()).unwrap().is_none());
    assert!(hom_exists(&s3(), &two()).unwrap().is_none());
}

#[test]
fn retracts_and_trivial_points() {
    assert!(is_retract(&two(), &two_by_two()).unwrap().is_some());
    let r = reflect(&dunn_reduct(&s3()).unwrap()).unwrap();
    assert!(is_retract(&c4(), &r).unwrap().is_some());
    assert!(is_retract(&c4(), &two()).unwrap().is_none());
    assert_eq!(trivial_subalgebra_points(&s3()), vec![el(&s3(), "0")]);
    assert!(trivial_subalgebra_points(&two()).is_empty());
    assert_eq!(trivial_subalgebra_points(&trivial()), vec![0]);
    assert_eq!(zero_generated_subalgebra(&c4()).unwrap().size(), 4);
    assert_eq!(zero_generated_subalgebra(&s3()).unwrap().size(), 1);
    let z = zero_generated_subalgebra(&catalog("x-trivial").unwrap()).unwrap();
    assert!(are_isomorphic(&z, &c4()).unwrap().is_some());
}

#[test]
fn separation() {
    assert!(separates(&s3(), &[s3()]).unwrap().separated());
    assert!(!separates(&two(), &[s3()]).unwrap().separated());
    assert!(separates(&s3(), &[s5()]).unwrap().separated());
}

#[test]
fn congruences() {
    let c = c4();
    assert!(principal_congruence(&c, 2, 2).is_identity());
    let (e, f) = (1, 2);
    assert!(principal_congruence(&c, e, f).is_total());
    let p = two_by_two();
    let first: Vec<usize> = p.elements().map(|x| x / 2).collect();
    assert_eq!(principal_congruence(&p, 0, 1), Congruence::kernel(&first));
    assert_eq!(all_congruences(&two(), &lim()).unwrap().len(), 2);
    assert_eq!(all_congruences(&p, &lim()).unwrap().len(), 4);
    assert_eq!(all_congruences(&d4(), &lim()).unwrap().len(), 2);
    assert_eq!(si_status(&c4(), None, &lim()).unwrap(), SiStatus::Simple);
    assert_eq!(si_status(&s3(), None, &lim()).unwrap(), SiStatus::Simple);
    assert_eq!(si_status(&p, None, &lim()).unwrap(), SiStatus::None);
}

#[test]
fn relative_congruences_are_kernels() {
    assert!(relative_congruences(&s5(), &[s5()]).unwrap().contains_identity());
    let rel = relative_congruences(&two(), &[s3()]).unwrap();
    assert_eq!(rel.len(), 1);
    assert!(rel.congruences()[0].is_total());
    for a in [quasivar::brouwer::heyting_chain(5).unwrap(), quasivar::brouwer::heyting_square_plus_top()] {
        let rel = relative_congruences(&a, std::slice::from_ref(&a)).unwrap();
        let all = all_congruences(&a, &lim()).unwrap();
        assert_eq!(rel.congruences(), all.congruences());
    }
    let (q, _) = relatively_simple_image(&s3(), &[s3()]).unwrap();
    assert!(are_isomorphic(&q, &s3()).unwrap().is_some());
    let (q, _) = relatively_simple_image(&two_by_two(), &[two()]).unwrap();
    assert!(are_isomorphic(&q, &two()).unwrap().is_some());
    assert!(relatively_simple_image(&trivial(), &[two()]).is_err());
}
