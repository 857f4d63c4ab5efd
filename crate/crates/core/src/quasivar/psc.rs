use crate::algebra::quotient;
use crate::congruence::{relative_congruences, SiStatus};
use crate::error::Result;
use crate::format::AlgebraJson;
use crate::limits::Limits;
use crate::morphisms::hom_exists;

use super::members::relative_subalgebras;
use super::{free_algebra, kollar_violation, trivial_subalgebras_everywhere, GeneratorSet, Verdict, Witness};

/// Staged decision of passive structural completeness.
///
/// 1. Only trivial generators: the trivial quasivariety, PSC.
/// 2. `F(1)` has a one-element subalgebra: then every member has one, no
///    quasi-equation is passive, PSC.
/// 3. Otherwise a nontrivial member with a trivial subalgebra contradicts
///    PSC, since `F(1)` lacks one.
/// 4. PSC forces a unique relatively simple member `A`. Relatively simple
///    members lie in `IS(𝒢)`.
/// 5. PSC holds iff `A` maps into every nontrivial one-generated member,
///    i.e. every nontrivial quotient of `F(1)` in the class. Sufficiency:
///    a nontrivial member `B` has a nontrivial one-generated subalgebra (the
///    class is Kollár here), so `A → B`, and `B` maps onto its relatively
///    simple image `A`; all nontrivial members are then hom-equivalent.
///    With constants it is enough that `A` maps into `F(0)`: the smallest
///    subalgebra of any member is a homomorphic image of `F(0)`.
pub fn psc_check(gens: &GeneratorSet, limits: &Limits) -> Result<Verdict> {
    if gens.is_trivial_class() {
        return Ok(Verdict::yes(Some(Witness::TrivialClass)));
    }
    if let Some(w) = trivial_subalgebras_everywhere(gens, limits)? {
        return Ok(Verdict::yes(Some(w)));
    }
    if let Some((gi, p)) = kollar_violation(gens) {
        return Ok(Verdict::no(Witness::TrivialPoint {
            algebra: format!("generator {gi}"),
            element: p,
        }));
    }
    let simple: Vec<_> = relative_subalgebras(gens, limits)?
        .into_iter()
        .filter(|m| m.status == SiStatus::Simple)
        .collect();
    if let [first, second, ..] = simple.as_slice() {
        return Ok(Verdict::no(Witness::TwoRelativelySimple {
            first: AlgebraJson::from(&first.algebra),
            second: AlgebraJson::from(&second.algebra),
        }));
    }
    let hub = &simple
        .first()
        .expect("a nontrivial finite member has a relatively simple image")
        .algebra;
    if gens.signature().has_constants() {
        let f0 = free_algebra(gens, 0, limits)?;
        if hom_exists(hub, &f0.algebra)?.is_none() {
            return Ok(Verdict::no(Witness::NoHubHomomorphism {
                simple: AlgebraJson::from(hub),
                target: AlgebraJson::from(&f0.algebra),
            }));
        }
        return Ok(Verdict::yes(Some(Witness::Stage {
            stage: 5,
            reason: "the unique relatively simple member maps into the free algebra of rank 0".into(),
        })));
    }
    let f = free_algebra(gens, 1, limits)?;
    let lattice = relative_congruences(&f.algebra, gens.algebras())?;
    for theta in lattice.congruences() {
        if theta.is_total() {
            continue;
        }
        let (q, _) = quotient(&f.algebra, theta)?;
        if hom_exists(hub, &q)?.is_none() {
            return Ok(Verdict::no(Witness::NoHubHomomorphism {
                simple: AlgebraJson::from(hub),
                target: AlgebraJson::from(&q),
            }));
        }
    }
    Ok(Verdict::yes(Some(Witness::Stage {
        stage: 5,
        reason: "the unique relatively simple member maps into every nontrivial one-generated member".into(),
    })))
}
