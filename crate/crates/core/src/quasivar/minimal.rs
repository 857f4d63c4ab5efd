use std::slice;

use crate::algebra::quotient;
use crate::congruence::relative_congruences;
use crate::error::Result;
use crate::format::AlgebraJson;
use crate::limits::Limits;
use crate::morphisms::separates;

use super::{free_algebra, kollar_violation, GeneratorSet, Verdict, Witness};

/// `Q(𝒢)` is minimal iff it is nontrivial and every nontrivial quotient `B`
/// of `F(r)` lying in the class generates it, i.e. every generator is in
/// `ISP(B)`. Every nontrivial member contains a nontrivial subalgebra
/// generated by `r` elements. `r = 1` when the class is Kollár, and also
/// with constants: an element other than the constants' value generates a
/// nontrivial subalgebra. Otherwise `r = 2` (two distinct elements).
pub fn minimal_quasivariety_check(gens: &GeneratorSet, limits: &Limits) -> Result<Verdict> {
    if gens.is_trivial_class() {
        return Ok(Verdict::no(Witness::TrivialClass));
    }
    let rank = if kollar_violation(gens).is_none() || gens.signature().has_constants() {
        1
    } else {
        2
    };
    let f = free_algebra(gens, rank, limits)?;
    let lattice = relative_congruences(&f.algebra, gens.algebras())?;
    for theta in lattice.congruences() {
        if theta.is_total() {
            continue;
        }
        let (b, _) = quotient(&f.algebra, theta)?;
        for (gi, g) in gens.iter().enumerate() {
            if let Some(pair) = separates(g, slice::from_ref(&b))?.failing_pair {
                return Ok(Verdict::no(Witness::NotMinimal {
                    quotient: AlgebraJson::from(&b),
                    generator: gi,
                    pair,
                }));
            }
        }
    }
    Ok(Verdict::yes(None))
}
