use std::collections::HashSet;

use crate::algebra::{enumerate_subalgebras, quotient, Elem, FiniteAlgebra};
use crate::congruence::all_congruences;
use crate::error::{precondition, Error, Result};
use crate::format::AlgebraJson;
use crate::limits::Limits;
use crate::morphisms::embedding_exists;

use super::{free_algebra, Answer, GeneratorSet, Verdict, Witness};

#[derive(Clone, Copy, Debug)]
pub struct ScOptions {
    /// Largest free rank tried for a certificate.
    pub bound: usize,
    /// The generated variety is congruence distributive (e.g. the algebras
    /// have lattice reducts). Required: the certificate relies on every
    /// subdirectly irreducible member of the variety lying in `HS(𝒢)`.
    pub assume_cd: bool,
}

impl Default for ScOptions {
    fn default() -> Self {
        ScOptions {
            bound: 2,
            assume_cd: false,
        }
    }
}

/// A subdirectly irreducible algebra in `HS(𝒢)`: `generator` restricted to
/// `subuniverse`, divided by the partition `blocks`.
pub(crate) struct SiSection {
    pub algebra: FiniteAlgebra,
    pub generator: usize,
    pub subuniverse: Vec<Elem>,
    pub blocks: Vec<usize>,
}

fn push_si_quotients(
    s: &FiniteAlgebra,
    generator: usize,
    subuniverse: &[Elem],
    seen: &mut HashSet<std::sync::Arc<Vec<u32>>>,
    out: &mut Vec<SiSection>,
    limits: &Limits,
) -> Result<()> {
    let lattice = all_congruences(s, limits)?;
    for theta in lattice.completely_meet_irreducible() {
        let (q, _) = quotient(s, theta)?;
        if seen.insert(q.canonical_form()) {
            out.push(SiSection {
                algebra: q.without_names(),
                generator,
                subuniverse: subuniverse.to_vec(),
                blocks: theta.blocks().to_vec(),
            });
        }
    }
    Ok(())
}

/// Subdirectly irreducible quotients of the generators themselves, up to
/// isomorphism.
pub(crate) fn si_in_h(gens: &GeneratorSet, limits: &Limits) -> Result<Vec<SiSection>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let all: Vec<Elem> = g.elements().collect();
        push_si_quotients(g, gi, &all, &mut seen, &mut out, limits)?;
    }
    Ok(out)
}

/// Subdirectly irreducible members of `HS(𝒢)` up to isomorphism, quotients
/// of the generators first.
pub(crate) fn si_in_hs(gens: &GeneratorSet, limits: &Limits) -> Result<Vec<SiSection>> {
    let mut out = si_in_h(gens, limits)?;
    let mut seen: HashSet<_> = out.iter().map(|s| s.algebra.canonical_form()).collect();
    for (gi, g) in gens.iter().enumerate() {
        for sub in enumerate_subalgebras(g, true, limits)? {
            push_si_quotients(&sub.algebra, gi, &sub.inclusion, &mut seen, &mut out, limits)?;
        }
    }
    Ok(out)
}

fn embeds_in_some(a: &FiniteAlgebra, gens: &GeneratorSet) -> Result<bool> {
    for g in gens.iter() {
        if embedding_exists(a, g)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn refutation(s: &SiSection) -> Verdict {
    Verdict::no(Witness::ScRefutation {
        algebra: AlgebraJson::from(&s.algebra),
        generator: s.generator,
        subuniverse: s.subuniverse.clone(),
        blocks: s.blocks.clone(),
    })
}

/// Structural completeness, three ways.
///
/// Refutation: an SI algebra of `HS(𝒢)` embedding into no generator. SC
/// would give `V(𝒢) = Q(F(ω)) ⊆ Q(𝒢)`, so the algebra would be relatively
/// SI in `Q(𝒢)` and hence in `IS(𝒢)`.
///
/// Certificate: every SI algebra of `HS(𝒢)` embeds into `F(m)` for some
/// `m ≤ bound`. By Jónsson's lemma these are all the SI members of the
/// variety, so `V(𝒢) = Q(F(m)) ⊆ Q(F(ω))` and the class is SC.
///
/// Otherwise `Unknown(bound)`: no bound on the needed rank is known.
pub fn sc_check(gens: &GeneratorSet, opts: ScOptions, limits: &Limits) -> Result<Verdict> {
    if !opts.assume_cd {
        return Err(precondition(
            "structural completeness checks need a congruence-distributive variety (set assume_cd)",
        ));
    }
    let quotients = si_in_h(gens, limits)?;
    for s in &quotients {
        if !embeds_in_some(&s.algebra, gens)? {
            return Ok(refutation(s));
        }
    }
    let pieces = si_in_hs(gens, limits)?;
    for s in &pieces[quotients.len()..] {
        if !embeds_in_some(&s.algebra, gens)? {
            return Ok(refutation(s));
        }
    }
    let first = if gens.signature().has_constants() { 0 } else { 1 };
    for rank in first..=opts.bound {
        let f = match free_algebra(gens, rank, limits) {
            Ok(f) => f,
            Err(Error::GuardExceeded { .. }) => {
                return Ok(Verdict {
                    answer: Answer::Unknown(opts.bound),
                    witness: Some(Witness::Exhausted {
                        searched: format!("free algebras below rank {rank}; rank {rank} exceeds the carrier guard"),
                    }),
                })
            }
            Err(e) => return Err(e),
        };
        let mut embeddings = Vec::new();
        for s in &pieces {
            match embedding_exists(&s.algebra, &f.algebra)? {
                Some(map) => embeddings.push((AlgebraJson::from(&s.algebra), map)),
                None => break,
            }
        }
        if embeddings.len() == pieces.len() {
            return Ok(Verdict::yes(Some(Witness::ScCertificate { rank, embeddings })));
        }
    }
    Ok(Verdict {
        answer: Answer::Unknown(opts.bound),
        witness: Some(Witness::Exhausted {
            searched: format!("free algebras up to rank {}", opts.bound),
        }),
    })
}
