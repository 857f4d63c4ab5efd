use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::congruence::{si_status, SiStatus};
use crate::error::Result;
use crate::limits::Limits;
use crate::quasivar::{si_in_hs, GeneratorSet};

use super::{leq, Dmm};

/// One known property of De Morgan monoids, instantiated on an algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub name: &'static str,
    pub holds: bool,
    /// The evaluated sides of the statement.
    pub detail: String,
}

fn fact(name: &'static str, holds: bool, detail: String) -> Fact {
    Fact { name, holds, detail }
}

fn iff(name: &'static str, left: (&str, bool), right: (&str, bool)) -> Fact {
    fact(
        name,
        left.1 == right.1,
        format!("{}: {}; {}: {}", left.0, left.1, right.0, right.1),
    )
}

/// Checks the standard list of De Morgan monoid facts on `a`. Anti-
/// idempotence is read finitely: `x ⩽ f²` holds iff no nontrivial
/// idempotent algebra lies in `HS(A)`.
pub fn dmm_facts_suite(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Fact>> {
    let o = Dmm::checked(a)?;
    let n = a.size();
    let le = |x: Elem, y: Elem| leq(a, o.meet, x, y);
    let fuse = |x: Elem, y: Elem| a.apply2(o.fuse, x, y);
    let join = |x: Elem, y: Elem| a.apply2(o.join, x, y);
    let neg = |x: Elem| a.apply1(o.neg, x);
    let e = a.constant(o.e);
    let f = neg(e);
    let f2 = fuse(f, f);
    let least = (0..n).find(|&x| (0..n).all(|y| le(x, y))).expect("finite lattice");
    let greatest = neg(least);
    let status = si_status(a, None, limits)?;

    let lower: Vec<Elem> = (0..n).filter(|&y| y != e && le(y, e)).collect();
    let join_irreducible =
        e != least && (0..n).all(|x| (0..n).all(|y| join(x, y) != e || x == e || y == e));
    let below_join = lower.iter().fold(least, |acc, &y| join(acc, y));
    let idempotent = |b: &FiniteAlgebra| {
        let p = b.signature().index_of("fuse").expect("De Morgan signature");
        b.elements().all(|x| b.apply2(p, x, x) == x)
    };
    let idempotent_in_hs = si_in_hs(&GeneratorSet::single(a.clone()), limits)?
        .iter()
        .any(|s| !s.algebra.is_trivial() && idempotent(&s.algebra));
    let boolean = (0..n).all(|x| {
        (0..n).all(|y| fuse(x, y) == a.apply2(o.meet, x, y))
            && a.apply2(o.meet, x, neg(x)) == least
            && join(x, neg(x)) == greatest
    });

    Ok(vec![
        iff("nontrivial iff e is not least", ("nontrivial", n > 1), ("e not least", e != least)),
        iff(
            "simple iff e has exactly one strict lower bound",
            ("simple", status == SiStatus::Simple),
            ("strict lower bounds of e", lower.len() == 1),
        ),
        iff(
            "finitely subdirectly irreducible iff e is join-irreducible",
            ("FSI", status.is_fsi()),
            ("e join-irreducible", join_irreducible),
        ),
        iff(
            "subdirectly irreducible iff e is completely join-irreducible",
            ("SI", status.is_si()),
            ("e completely join-irreducible", below_join != e),
        ),
        fact(
            "the least element annihilates",
            (0..n).all(|x| fuse(x, least) == least),
            format!("least element {}", a.label(least)),
        ),
        fact(
            "in an FSI algebra every element is above e or below f",
            !status.is_fsi() || (0..n).all(|x| le(e, x) || le(x, f)),
            format!("FSI: {}", status.is_fsi()),
        ),
        iff(
            "f <= e iff idempotent",
            ("f <= e", le(f, e)),
            ("idempotent", idempotent(a)),
        ),
        iff(
            "x <= f^2 iff no nontrivial idempotent algebra in HS",
            ("x <= f^2", (0..n).all(|x| le(x, f2))),
            ("no idempotent in HS", !idempotent_in_hs),
        ),
        iff(
            "x <= e iff Boolean",
            ("x <= e", (0..n).all(|x| le(x, e))),
            ("Boolean", boolean),
        ),
        fact(
            "f^3 = f^2",
            fuse(f2, f) == f2,
            format!("f^2 = {}, f^3 = {}", a.label(f2), a.label(fuse(f2, f))),
        ),
    ])
}
