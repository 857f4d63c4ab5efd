//! Decision procedures for quasivarieties generated by finitely many finite
//! algebras.
//!
//! A finite generator set `𝒢` presents `Q(𝒢) = ISP(𝒢)`: ultraproducts of
//! finitely many finite algebras are isomorphic to one of them, so the
//! usual `ISPPu` collapses to `ISP`.

mod equations;
mod free;
mod jep;
mod members;
mod membership;
mod minimal;
mod psc;
mod sc;
mod witness;

use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{precondition, Error, Result};
use crate::limits::Limits;
use crate::morphisms::trivial_subalgebra_points;

pub use equations::{admissible_upto, passive, unifiable, valid};
pub use free::{free_algebra, generator_name, FreeAlgebra};
pub use jep::jep_check;
pub use members::{relative_si_members, relative_subalgebras, Member};
pub use membership::{
    lattice_reduct,
    excludes, hs_membership, q_membership, ret_membership, v_membership, v_membership_free,
    v_membership_jonsson,
};
pub use minimal::minimal_quasivariety_check;
pub use psc::psc_check;
pub use sc::{sc_check, ScOptions};
pub(crate) use sc::si_in_hs;
pub use witness::{Replay, ReplayContext, Witness};

/// A non-empty list of finite algebras over one signature.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    algebras: Vec<FiniteAlgebra>,
}

impl GeneratorSet {
    pub fn new(algebras: Vec<FiniteAlgebra>) -> Result<Self> {
        let first = algebras
            .first()
            .ok_or_else(|| precondition("a generator set needs at least one algebra"))?;
        if algebras.iter().any(|a| !a.same_signature(first)) {
            return Err(Error::SignatureMismatch);
        }
        Ok(GeneratorSet { algebras })
    }

    pub fn single(a: FiniteAlgebra) -> Self {
        GeneratorSet { algebras: vec![a] }
    }

    pub fn algebras(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.algebras[0].signature()
    }

    /// Whether the generated class contains only trivial algebras.
    pub fn is_trivial_class(&self) -> bool {
        self.algebras.iter().all(|a| a.is_trivial())
    }
}

impl Deref for GeneratorSet {
    type Target = [FiniteAlgebra];

    fn deref(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", content = "rank")]
pub enum Answer {
    Yes,
    No,
    /// Passed every check up to the given rank; not a proof.
    CertifiedUpTo(usize),
    /// Undecided with the given bound.
    Unknown(usize),
}

impl Answer {
    pub fn is_definite(self) -> bool {
        matches!(self, Answer::Yes | Answer::No)
    }

    /// 0 for yes/certified, 1 for no, 2 for unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Answer::Yes | Answer::CertifiedUpTo(_) => 0,
            Answer::No => 1,
            Answer::Unknown(_) => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub answer: Answer,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes(witness: Option<Witness>) -> Self {
        Verdict {
            answer: Answer::Yes,
            witness,
        }
    }

    pub fn no(witness: Witness) -> Self {
        Verdict {
            answer: Answer::No,
            witness: Some(witness),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

/// `Q(𝒢)` is Kollár unless some nontrivial generator has a one-element
/// subalgebra: such a point makes the generator itself a nontrivial member
/// with a trivial subalgebra, and conversely a nontrivial member with a
/// trivial subalgebra embeds in a product of generators, and some
/// coordinate where it stays nontrivial carries the point.
pub fn kollar_check(gens: &GeneratorSet) -> bool {
    kollar_violation(gens).is_none()
}

/// Evidence that every member of `Q(𝒢)` has a one-element subalgebra. With
/// constants that subalgebra can only be the rank-0 free algebra; without
/// them, a one-element subalgebra of `F(1)` maps into every member. `F(1)`
/// maps into every generator, so it is only built when each generator has
/// such a point.
pub(crate) fn trivial_subalgebras_everywhere(gens: &GeneratorSet, limits: &Limits) -> Result<Option<Witness>> {
    if gens.is_trivial_class() {
        return Ok(Some(Witness::TrivialClass));
    }
    if !gens.iter().all(|g| !trivial_subalgebra_points(g).is_empty()) {
        return Ok(None);
    }
    let rank = if gens.signature().has_constants() { 0 } else { 1 };
    let f = free_algebra(gens, rank, limits)?;
    Ok(trivial_subalgebra_points(&f.algebra).first().map(|&p| Witness::TrivialPoint {
        algebra: format!("F({rank})"),
        element: p,
    }))
}

pub(crate) fn kollar_violation(gens: &GeneratorSet) -> Option<(usize, usize)> {
    gens.iter().enumerate().find_map(|(i, g)| {
        if g.is_trivial() {
            return None;
        }
        trivial_subalgebra_points(g).first().map(|&p| (i, p))
    })
}
