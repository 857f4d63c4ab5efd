//! De Morgan monoids, Dunn monoids and Brouwerian algebras: axioms, the
//! small catalog, reflections and the classification checkers.

mod catalog;
mod classify;
mod facts;
mod reflect;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra, QuasiEquation, Signature, Term};
use crate::error::{precondition, Error, Result};

pub use catalog::{c4, catalog, catalog_names, d4, s3, sugihara, two};
pub use classify::{
    classify_psc_variety, in_m, in_n, jep_classification_conditions, JepConditions, PscClass, ProperExtension,
};
pub use facts::{dmm_facts_suite, Fact};
pub use reflect::{dunn_reduct, reflect, reflect_congruence, x_construction};

/// `fuse, meet, join, neg, e`.
pub fn dmm_signature() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| {
        Signature::new([("fuse", 2), ("meet", 2), ("join", 2), ("neg", 1), ("e", 0)]).expect("fixed signature")
    })
}

/// `fuse, imp, meet, join, e`.
pub fn dunn_signature() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| {
        Signature::new([("fuse", 2), ("imp", 2), ("meet", 2), ("join", 2), ("e", 0)]).expect("fixed signature")
    })
}

/// `imp, meet, join, e`; fusion is meet.
pub fn brouwer_signature() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| Signature::new([("imp", 2), ("meet", 2), ("join", 2), ("e", 0)]).expect("fixed signature"))
}

/// Brouwerian signature with a least element `bot`, for Heyting algebras.
pub fn heyting_signature() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| {
        Signature::new([("imp", 2), ("meet", 2), ("join", 2), ("e", 0), ("bot", 0)]).expect("fixed signature")
    })
}

/// The first axiom an algebra fails, with the elements exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub elements: Vec<Elem>,
}

/// Operation indices of a De Morgan monoid.
#[derive(Clone, Copy)]
pub(crate) struct Dmm {
    pub fuse: usize,
    pub meet: usize,
    pub join: usize,
    pub neg: usize,
    pub e: usize,
}

impl Dmm {
    pub fn of(a: &FiniteAlgebra) -> Result<Dmm> {
        if a.signature().as_ref() != dmm_signature().as_ref() {
            return Err(precondition(format!(
                "expected the De Morgan signature {}, got {}",
                dmm_signature(),
                a.signature()
            )));
        }
        Ok(Dmm {
            fuse: 0,
            meet: 1,
            join: 2,
            neg: 3,
            e: 4,
        })
    }

    /// Like [`of`](Self::of), also requiring the axioms.
    pub fn checked(a: &FiniteAlgebra) -> Result<Dmm> {
        let ops = Dmm::of(a)?;
        if let Some(fail) = demorgan_violation(a)? {
            return Err(Error::Axiom {
                kind: "De Morgan monoid",
                axiom: fail.axiom.to_string(),
            });
        }
        Ok(ops)
    }
}

/// Order helpers over a meet table.
pub(crate) fn leq(a: &FiniteAlgebra, meet: usize, x: Elem, y: Elem) -> bool {
    a.apply2(meet, x, y) == x
}

type Check<'a> = (&'static str, usize, Box<dyn Fn(&[Elem]) -> bool + 'a>);

fn first_failure(a: &FiniteAlgebra, checks: Vec<Check<'_>>) -> Option<AxiomFailure> {
    for (axiom, arity, holds) in checks {
        let mut bad = None;
        crate::algebra::for_each_tuple(a.size(), arity, |xs| {
            if bad.is_none() && !holds(xs) {
                bad = Some(xs.to_vec());
            }
        });
        if let Some(elements) = bad {
            return Some(AxiomFailure { axiom, elements });
        }
    }
    None
}

fn lattice_checks<'a>(a: &'a FiniteAlgebra, meet: usize, join: usize) -> Vec<Check<'a>> {
    let m = move |x, y| a.apply2(meet, x, y);
    let j = move |x, y| a.apply2(join, x, y);
    vec![
        ("meet is idempotent", 1, Box::new(move |v| m(v[0], v[0]) == v[0])),
        ("join is idempotent", 1, Box::new(move |v| j(v[0], v[0]) == v[0])),
        ("meet is commutative", 2, Box::new(move |v| m(v[0], v[1]) == m(v[1], v[0]))),
        ("join is commutative", 2, Box::new(move |v| j(v[0], v[1]) == j(v[1], v[0]))),
        (
            "meet is associative",
            3,
            Box::new(move |v| m(m(v[0], v[1]), v[2]) == m(v[0], m(v[1], v[2]))),
        ),
        (
            "join is associative",
            3,
            Box::new(move |v| j(j(v[0], v[1]), v[2]) == j(v[0], j(v[1], v[2]))),
        ),
        (
            "absorption",
            2,
            Box::new(move |v| m(v[0], j(v[0], v[1])) == v[0] && j(v[0], m(v[0], v[1])) == v[0]),
        ),
        (
            "distributivity",
            3,
            Box::new(move |v| m(v[0], j(v[1], v[2])) == j(m(v[0], v[1]), m(v[0], v[2]))),
        ),
    ]
}

fn monoid_checks<'a>(a: &'a FiniteAlgebra, fuse: usize, meet: usize, e: Elem) -> Vec<Check<'a>> {
    let p = move |x, y| a.apply2(fuse, x, y);
    vec![
        (
            "associativity",
            3,
            Box::new(move |v| p(p(v[0], v[1]), v[2]) == p(v[0], p(v[1], v[2]))),
        ),
        ("commutativity", 2, Box::new(move |v| p(v[0], v[1]) == p(v[1], v[0]))),
        ("e is the identity", 1, Box::new(move |v| p(v[0], e) == v[0])),
        ("square-increasing", 1, Box::new(move |v| leq(a, meet, v[0], p(v[0], v[0])))),
    ]
}

/// The first De Morgan monoid axiom `a` fails, or `None`.
pub fn demorgan_violation(a: &FiniteAlgebra) -> Result<Option<AxiomFailure>> {
    let o = Dmm::of(a)?;
    let e = a.constant(o.e);
    let p = move |x, y| a.apply2(o.fuse, x, y);
    let n = move |x| a.apply1(o.neg, x);
    let mut checks = lattice_checks(a, o.meet, o.join);
    checks.extend(monoid_checks(a, o.fuse, o.meet, e));
    checks.push(("double negation", 1, Box::new(move |v| n(n(v[0])) == v[0])));
    checks.push((
        "contraposition",
        3,
        Box::new(move |v| leq(a, o.meet, p(v[0], v[1]), v[2]) == leq(a, o.meet, p(v[0], n(v[2])), n(v[1]))),
    ));
    Ok(first_failure(a, checks))
}

pub fn is_demorgan_monoid(a: &FiniteAlgebra) -> Result<bool> {
    Ok(demorgan_violation(a)?.is_none())
}

fn residuation_check<'a>(a: &'a FiniteAlgebra, fuse: Option<usize>, imp: usize, meet: usize) -> Check<'a> {
    let p = move |x, y| match fuse {
        Some(f) => a.apply2(f, x, y),
        None => a.apply2(meet, x, y),
    };
    (
        "residuation",
        3,
        Box::new(move |v| leq(a, meet, p(v[0], v[1]), v[2]) == leq(a, meet, v[1], a.apply2(imp, v[0], v[2]))),
    )
}

fn op_index(a: &FiniteAlgebra, name: &str, arity: usize) -> Option<usize> {
    a.signature().index_of(name).filter(|&i| a.signature().arity(i) == arity)
}

/// The first Dunn monoid axiom `a` fails, or `None`.
pub fn dunn_violation(a: &FiniteAlgebra) -> Result<Option<AxiomFailure>> {
    if a.signature().as_ref() != dunn_signature().as_ref() {
        return Err(precondition(format!("expected the Dunn signature {}", dunn_signature())));
    }
    let (fuse, imp, meet, join) = (0, 1, 2, 3);
    let e = a.constant(4);
    let mut checks = lattice_checks(a, meet, join);
    checks.extend(monoid_checks(a, fuse, meet, e));
    checks.push(residuation_check(a, Some(fuse), imp, meet));
    Ok(first_failure(a, checks))
}

pub fn is_dunn_monoid(a: &FiniteAlgebra) -> Result<bool> {
    Ok(dunn_violation(a)?.is_none())
}

/// The first Brouwerian axiom `a` fails, or `None`. Accepts the Brouwerian
/// and Heyting signatures, and the Dunn signature, where fusion must then
/// coincide with meet.
pub fn brouwer_violation(a: &FiniteAlgebra) -> Result<Option<AxiomFailure>> {
    let sig = a.signature().as_ref();
    let dunn = sig == dunn_signature().as_ref();
    if !(dunn || sig == brouwer_signature().as_ref() || sig == heyting_signature().as_ref()) {
        return Err(precondition(format!(
            "expected the Brouwerian signature {}",
            brouwer_signature()
        )));
    }
    let ix = |n: &str, k: usize| op_index(a, n, k).expect("present in the signature");
    let (imp, meet, join) = (ix("imp", 2), ix("meet", 2), ix("join", 2));
    let e = a.constant(ix("e", 0));
    let mut checks = lattice_checks(a, meet, join);
    checks.push(("e is the top", 1, Box::new(move |v| leq(a, meet, v[0], e))));
    if dunn {
        let fuse = ix("fuse", 2);
        checks.push((
            "fusion is meet",
            2,
            Box::new(move |v| a.apply2(fuse, v[0], v[1]) == a.apply2(meet, v[0], v[1])),
        ));
    }
    if let Some(bot) = op_index(a, "bot", 0) {
        let b = a.constant(bot);
        checks.push(("bot is the least element", 1, Box::new(move |v| leq(a, meet, b, v[0]))));
    }
    checks.push(residuation_check(a, None, imp, meet));
    Ok(first_failure(a, checks))
}

pub fn is_brouwerian(a: &FiniteAlgebra) -> Result<bool> {
    Ok(brouwer_violation(a)?.is_none())
}

/// Rewrites a Brouwerian term so that it makes sense in Dunn monoids:
/// constants stay, variables become `x ∧ e`, meet and join (and fusion,
/// which is meet) commute with the transform, and `α → β` becomes
/// `(α' → β') ∧ e`.
pub fn amendment(t: &Term) -> Term {
    let e = || Term::constant("e");
    match t {
        Term::Var(_) => Term::app("meet", vec![t.clone(), e()]),
        Term::App(name, args) if args.is_empty() => Term::constant(name.clone()),
        Term::App(name, args) => {
            let args: Vec<Term> = args.iter().map(amendment).collect();
            if name == "imp" {
                Term::app("meet", vec![Term::app("imp", args), e()])
            } else {
                Term::app(name.clone(), args)
            }
        }
    }
}

/// [`amendment`] applied to every term of a quasi-equation.
pub fn amend_qe(q: &QuasiEquation) -> QuasiEquation {
    q.map_terms(amendment)
}

/// Expands `imp` into `¬(x · ¬y)`, moving a Dunn-signature term into the
/// De Morgan signature.
pub fn expand_imp(t: &Term) -> Term {
    let body = Term::app(
        "neg",
        vec![Term::app("fuse", vec![Term::var("_0"), Term::app("neg", vec![Term::var("_1")])])],
    );
    t.expand("imp", &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amendment_unfolds() {
        let t = |s| crate::format::parse_term(s, None).unwrap();
        assert_eq!(amendment(&t("e")), t("e"));
        assert_eq!(amendment(&t("x")), t("x ^ e"));
        assert_eq!(amendment(&t("x -> y")), t("((x ^ e) -> (y ^ e)) ^ e"));
    }

    #[test]
    fn imp_expands() {
        let t = crate::format::parse_term("x -> y", None).unwrap();
        assert_eq!(expand_imp(&t).to_string(), "~(x * ~y)");
    }
}
