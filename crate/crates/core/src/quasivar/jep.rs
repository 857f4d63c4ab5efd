use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::algebra::FiniteAlgebra;
use crate::error::Result;
use crate::format::AlgebraJson;
use crate::limits::Limits;
use crate::morphisms::{for_each_hom, SearchOptions};

use super::{relative_si_members, trivial_subalgebras_everywhere, GeneratorSet, Verdict, Witness};

/// For one member and one generator: whether a homomorphism exists, and
/// which pairs `x < y` (packed row-major) some homomorphism separates.
pub(crate) struct HomProfile {
    pub exists: bool,
    pub separated: FixedBitSet,
}

pub(crate) fn pair_index(n: usize, x: usize, y: usize) -> usize {
    x * n + y
}

pub(crate) fn hom_profile(a: &FiniteAlgebra, g: &FiniteAlgebra) -> Result<HomProfile> {
    let n = a.size();
    let mut separated = FixedBitSet::with_capacity(n * n);
    let mut exists = false;
    for_each_hom(a, g, &SearchOptions::default(), |h| {
        exists = true;
        for x in 0..n {
            for y in x + 1..n {
                if h[x] != h[y] {
                    separated.insert(pair_index(n, x, y));
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(HomProfile { exists, separated })
}

/// `Q(𝒢)` has the JEP iff any two relatively subdirectly irreducible
/// members embed jointly into some member, and such members lie in
/// `IS(𝒢)`. `A` and `B` embed jointly into a product of generators iff
/// every pair of distinct elements of `A` is separated by a homomorphism
/// into a generator that also receives a homomorphism from `B`, and
/// symmetrically: the product of those generators then receives both.
///
/// When every member has a one-element subalgebra, `A` embeds into `A × B`
/// through the constant map onto that point, and the JEP holds outright.
pub fn jep_check(gens: &GeneratorSet, limits: &Limits) -> Result<Verdict> {
    if let Some(w) = trivial_subalgebras_everywhere(gens, limits)? {
        return Ok(Verdict::yes(Some(w)));
    }
    let members = relative_si_members(gens, limits)?;
    let profiles: Vec<Vec<HomProfile>> = members
        .par_iter()
        .map(|m| gens.iter().map(|g| hom_profile(&m.algebra, g)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for (i, a) in members.iter().enumerate() {
        let n = a.algebra.size();
        for (j, b) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut covered = FixedBitSet::with_capacity(n * n);
            for (gi, p) in profiles[i].iter().enumerate() {
                if profiles[j][gi].exists {
                    covered.union_with(&p.separated);
                }
            }
            let open = (0..n)
                .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
                .find(|&(x, y)| !covered.contains(pair_index(n, x, y)));
            if let Some(pair) = open {
                return Ok(Verdict::no(Witness::JepFailure {
                    left: AlgebraJson::from(&a.algebra),
                    right: AlgebraJson::from(&b.algebra),
                    pair,
                }));
            }
        }
    }
    Ok(Verdict::yes(None))
}
