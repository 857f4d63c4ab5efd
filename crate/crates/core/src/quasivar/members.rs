use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::{enumerate_subalgebras, Elem, FiniteAlgebra};
use crate::congruence::{si_status, SiStatus};
use crate::error::Result;
use crate::limits::Limits;

use super::GeneratorSet;

/// A nontrivial subalgebra of a generator with its status relative to
/// `Q(𝒢)`.
#[derive(Clone, Debug)]
pub struct Member {
    pub algebra: FiniteAlgebra,
    pub generator: usize,
    pub inclusion: Vec<Elem>,
    pub status: SiStatus,
}

/// Nontrivial members of `IS(𝒢)` up to isomorphism, each with its relative
/// status, ordered by generator and then by subalgebra order.
pub fn relative_subalgebras(gens: &GeneratorSet, limits: &Limits) -> Result<Vec<Member>> {
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for s in enumerate_subalgebras(g, true, limits)? {
            if s.algebra.is_trivial() || !seen.insert(s.algebra.canonical_form()) {
                continue;
            }
            candidates.push((i, s));
        }
    }
    candidates
        .into_par_iter()
        .map(|(i, s)| {
            let status = si_status(&s.algebra, Some(gens.algebras()), limits)?;
            Ok(Member {
                algebra: s.algebra,
                generator: i,
                inclusion: s.inclusion,
                status,
            })
        })
        .collect()
}

/// Relatively subdirectly irreducible members of `Q(𝒢)` up to isomorphism.
/// They all lie in `IS(𝒢)`.
pub fn relative_si_members(gens: &GeneratorSet, limits: &Limits) -> Result<Vec<Member>> {
    Ok(relative_subalgebras(gens, limits)?
        .into_iter()
        .filter(|m| m.status.is_si())
        .collect())
}
