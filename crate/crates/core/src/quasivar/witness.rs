use serde::Serialize;

use crate::algebra::term::Compiled;
use crate::algebra::{for_each_tuple, quotient, Assignment, Elem, FiniteAlgebra, QuasiEquation, Term};
use crate::congruence::Congruence;
use crate::error::Result;
use crate::format::AlgebraJson;
use crate::limits::Limits;
use crate::morphisms::{is_embedding, is_homomorphism};
use crate::oracle;

use super::{free_algebra, GeneratorSet};

/// Evidence attached to a verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Values in one generator satisfying the premises and not the conclusion.
    CounterAssignment {
        generator: usize,
        assignment: Assignment,
    },
    /// Terms in the free generators of `rank`: the substituted premises are
    /// identities of the class, the substituted conclusion fails in
    /// `generator` under `values`.
    CounterSubstitution {
        rank: usize,
        substitution: Vec<(String, Term)>,
        generator: usize,
        values: Assignment,
    },
    /// One-variable terms turning every equation into an identity.
    Unifier { substitution: Vec<(String, Term)> },
    /// A finite space was searched exhaustively without a hit.
    Exhausted { searched: String },
    /// The class is trivial (or every generator is).
    TrivialClass,
    /// A one-element subalgebra of a nontrivial algebra.
    TrivialPoint {
        algebra: String,
        element: Elem,
    },
    /// `left` and `right` are relatively subdirectly irreducible members that
    /// no member jointly embeds: no generator admitting a homomorphism from
    /// `right` separates `pair` of `left` by a homomorphism.
    JepFailure {
        left: AlgebraJson,
        right: AlgebraJson,
        pair: (Elem, Elem),
    },
    /// Two non-isomorphic relatively simple members.
    TwoRelativelySimple {
        first: AlgebraJson,
        second: AlgebraJson,
    },
    /// The unique relatively simple member does not map into a nontrivial
    /// one-generated member.
    NoHubHomomorphism {
        simple: AlgebraJson,
        target: AlgebraJson,
    },
    /// Staged decision passed at `stage`.
    Stage { stage: u8, reason: String },
    /// A nontrivial quotient of a free algebra that does not generate the
    /// class: `generator`'s `pair` is not separated by homomorphisms into it.
    NotMinimal {
        quotient: AlgebraJson,
        generator: usize,
        pair: (Elem, Elem),
    },
    /// A subdirectly irreducible algebra in HS(𝒢) that embeds in no
    /// generator; it is `generator` restricted to `subuniverse`, divided by
    /// `blocks`.
    ScRefutation {
        algebra: AlgebraJson,
        generator: usize,
        subuniverse: Vec<Elem>,
        blocks: Vec<usize>,
    },
    /// Embeddings of every subdirectly irreducible member of HS(𝒢) into
    /// the free algebra of `rank`.
    ScCertificate {
        rank: usize,
        embeddings: Vec<(AlgebraJson, Vec<Elem>)>,
    },
    Homomorphism { map: Vec<Elem> },
    Embedding { map: Vec<Elem> },
    Retraction {
        embedding: Vec<Elem>,
        retraction: Vec<Elem>,
    },
    /// Elements of the target matched to generators of the source.
    Surjection {
        source: AlgebraJson,
        target_generators: Vec<Elem>,
        source_generators: Vec<Elem>,
    },
}

/// Outcome of re-checking a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "replay", content = "detail", rename_all = "snake_case")]
pub enum Replay {
    Verified,
    Failed(String),
    /// The witness is a record of exhaustion or a pointer, nothing to re-run.
    NotApplicable,
}

/// What a replay may need besides the witness.
#[derive(Clone, Copy)]
pub struct ReplayContext<'a> {
    pub gens: &'a GeneratorSet,
    pub qe: Option<&'a QuasiEquation>,
    pub equations: Option<&'a [(Term, Term)]>,
    /// Domain and codomain for map witnesses.
    pub maps: Option<(&'a FiniteAlgebra, &'a FiniteAlgebra)>,
    pub limits: &'a Limits,
}

impl Witness {
    /// Re-verifies by evaluation. Negative claims (no homomorphism, no
    /// separation) are re-derived with the naive search of the oracle module,
    /// which shares no code with the deciders.
    pub fn replay(&self, ctx: &ReplayContext<'_>) -> Result<Replay> {
        let fail = |m: &str| Ok(Replay::Failed(m.to_string()));
        match self {
            Witness::CounterAssignment { generator, assignment } => {
                let Some(qe) = ctx.qe else { return Ok(Replay::NotApplicable) };
                let g = &ctx.gens[*generator];
                let c = qe.compile(g.signature())?;
                let vals: Vec<Elem> = c.vars.iter().map(|v| assignment[v]).collect();
                if c.premises_hold(g, &vals) && !c.holds(g, &vals) {
                    Ok(Replay::Verified)
                } else {
                    fail("assignment does not violate the quasi-equation")
                }
            }
            Witness::CounterSubstitution {
                rank,
                substitution,
                generator,
                values,
            } => {
                let Some(qe) = ctx.qe else { return Ok(Replay::NotApplicable) };
                let inst = substitute_qe(qe, substitution);
                for (s, t) in &inst.premises {
                    if !is_identity(ctx.gens, s, t, *rank)? {
                        return fail("a substituted premise is not an identity");
                    }
                }
                let g = &ctx.gens[*generator];
                let (s, t) = &inst.conclusion;
                if crate::algebra::term::eval(s, g, values)? == crate::algebra::term::eval(t, g, values)? {
                    return fail("the substituted conclusion holds at the given values");
                }
                Ok(Replay::Verified)
            }
            Witness::Unifier { substitution } => {
                let Some(eqs) = ctx.equations else { return Ok(Replay::NotApplicable) };
                for (s, t) in eqs {
                    let (s, t) = (apply_subst(s, substitution), apply_subst(t, substitution));
                    if !is_identity(ctx.gens, &s, &t, 1)? {
                        return fail("a unified equation is not an identity");
                    }
                }
                Ok(Replay::Verified)
            }
            Witness::TrivialPoint { .. }
            | Witness::Exhausted { .. }
            | Witness::TrivialClass
            | Witness::Stage { .. } => Ok(Replay::NotApplicable),
            Witness::JepFailure { left, right, pair } => {
                let sig = ctx.gens.signature();
                let a = left.to_algebra_with(sig)?;
                let b = right.to_algebra_with(sig)?;
                for g in ctx.gens.iter() {
                    if oracle::naive_homs(&b, g, 1).is_empty() {
                        continue;
                    }
                    if oracle::naive_homs(&a, g, usize::MAX)
                        .iter()
                        .any(|h| h[pair.0] != h[pair.1])
                    {
                        return fail("a generator separates the pair");
                    }
                }
                Ok(Replay::Verified)
            }
            Witness::TwoRelativelySimple { first, second } => {
                let sig = ctx.gens.signature();
                let a = first.to_algebra_with(sig)?;
                let b = second.to_algebra_with(sig)?;
                if oracle::naive_isomorphic(&a, &b) {
                    fail("the two algebras are isomorphic")
                } else {
                    Ok(Replay::Verified)
                }
            }
            Witness::NoHubHomomorphism { simple, target } => {
                let sig = ctx.gens.signature();
                let a = simple.to_algebra_with(sig)?;
                let b = target.to_algebra_with(sig)?;
                if oracle::naive_homs(&a, &b, 1).is_empty() && !b.is_trivial() {
                    Ok(Replay::Verified)
                } else {
                    fail("a homomorphism exists")
                }
            }
            Witness::NotMinimal {
                quotient: q,
                generator,
                pair,
            } => {
                let b = q.to_algebra_with(ctx.gens.signature())?;
                let g = &ctx.gens[*generator];
                if b.is_trivial() {
                    return fail("the quotient is trivial");
                }
                if oracle::naive_homs(g, &b, usize::MAX)
                    .iter()
                    .any(|h| h[pair.0] != h[pair.1])
                {
                    fail("the pair is separated")
                } else {
                    Ok(Replay::Verified)
                }
            }
            Witness::ScRefutation {
                algebra,
                generator,
                subuniverse,
                blocks,
            } => {
                let g = &ctx.gens[*generator];
                let s = algebra.to_algebra_with(g.signature())?;
                let sub = g.induced(subuniverse)?;
                let (q, _) = quotient(&sub, &Congruence::from_labels(blocks))?;
                if q.tables() != s.tables() {
                    return fail("the algebra is not the stated quotient");
                }
                for h in ctx.gens.iter() {
                    if oracle::naive_embeds(&s, h) {
                        return fail("the algebra embeds into a generator");
                    }
                }
                Ok(Replay::Verified)
            }
            Witness::ScCertificate { rank, embeddings } => {
                let f = free_algebra(ctx.gens, *rank, ctx.limits)?;
                for (a, map) in embeddings {
                    let a = a.to_algebra_with(ctx.gens.signature())?;
                    if !is_embedding(&a, &f.algebra, map) {
                        return fail("a listed map is not an embedding");
                    }
                }
                Ok(Replay::Verified)
            }
            Witness::Homomorphism { map } => match ctx.maps {
                Some((a, b)) if is_homomorphism(a, b, map) => Ok(Replay::Verified),
                Some(_) => fail("not a homomorphism"),
                None => Ok(Replay::NotApplicable),
            },
            Witness::Embedding { map } => match ctx.maps {
                Some((a, b)) if is_embedding(a, b, map) => Ok(Replay::Verified),
                Some(_) => fail("not an embedding"),
                None => Ok(Replay::NotApplicable),
            },
            Witness::Retraction {
                embedding,
                retraction,
            } => match ctx.maps {
                Some((a, b)) => {
                    let ok = is_embedding(a, b, embedding)
                        && is_homomorphism(b, a, retraction)
                        && (0..a.size()).all(|x| retraction[embedding[x]] == x);
                    if ok {
                        Ok(Replay::Verified)
                    } else {
                        fail("not a retraction pair")
                    }
                }
                None => Ok(Replay::NotApplicable),
            },
            Witness::Surjection { .. } => Ok(Replay::NotApplicable),
        }
    }
}

pub(crate) fn apply_subst(t: &Term, subst: &[(String, Term)]) -> Term {
    t.substitute(&|v: &str| subst.iter().find(|(w, _)| w == v).map(|(_, s)| s.clone()))
}

fn substitute_qe(qe: &QuasiEquation, subst: &[(String, Term)]) -> QuasiEquation {
    qe.map_terms(|t| apply_subst(t, subst))
}

/// `s ≈ t` holds in every generator, for terms over `rank` free generators.
pub(crate) fn is_identity(gens: &GeneratorSet, s: &Term, t: &Term, rank: usize) -> Result<bool> {
    let mut vars = s.variables();
    for v in t.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let _ = rank;
    for g in gens.iter() {
        let cs = Compiled::new(s, g.signature(), &vars)?;
        let ct = Compiled::new(t, g.signature(), &vars)?;
        let mut ok = true;
        for_each_tuple(g.size(), vars.len(), |vals| {
            if ok && cs.eval(g, vals) != ct.eval(g, vals) {
                ok = false;
            }
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
