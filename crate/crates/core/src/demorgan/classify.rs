use serde::Serialize;

use crate::algebra::{direct_product, enumerate_subalgebras, Elem, FiniteAlgebra};
use crate::congruence::{si_status, SiStatus};
use crate::error::Result;
use crate::limits::Limits;
use crate::morphisms::{embedding_exists, is_retract};
use crate::quasivar::{si_in_hs, v_membership, GeneratorSet};

use super::{c4, d4, leq, Dmm};

/// `A ⊨ e ⩽ f, x ⩽ f², f²·¬((f·x) ∧ (f·¬x)) ≈ f²`.
pub fn in_m(a: &FiniteAlgebra) -> Result<bool> {
    let o = Dmm::checked(a)?;
    let fuse = |x, y| a.apply2(o.fuse, x, y);
    let neg = |x| a.apply1(o.neg, x);
    let e = a.constant(o.e);
    let f = neg(e);
    let f2 = fuse(f, f);
    Ok(leq(a, o.meet, e, f)
        && a.elements().all(|x| {
            leq(a, o.meet, x, f2) && fuse(f2, neg(a.apply2(o.meet, fuse(f, x), fuse(f, neg(x))))) == f2
        }))
}

/// `A` is trivial or has `C4` as a retract.
pub fn in_n(a: &FiniteAlgebra) -> Result<bool> {
    Dmm::checked(a)?;
    Ok(a.is_trivial() || is_retract(&c4(), a)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PscClass {
    Boolean,
    D4,
    OddSugihara,
    SubM,
    NotPsc,
}

impl PscClass {
    pub fn is_psc(self) -> bool {
        self != PscClass::NotPsc
    }
}

fn all_below_e(a: &FiniteAlgebra, o: Dmm) -> bool {
    let e = a.constant(o.e);
    a.elements().all(|x| leq(a, o.meet, x, e))
}

fn odd_sugihara(a: &FiniteAlgebra, o: Dmm) -> bool {
    let e = a.constant(o.e);
    a.apply1(o.neg, e) == e && a.elements().all(|x| a.apply2(o.fuse, x, x) == x)
}

/// Which of the four PSC varieties of De Morgan monoids `V(𝒢)` is, tested
/// in order: Boolean, `V(D4)`, odd Sugihara, nontrivial subvariety of `M`.
pub fn classify_psc_variety(gens: &GeneratorSet, limits: &Limits) -> Result<PscClass> {
    let ops: Vec<Dmm> = gens.iter().map(Dmm::checked).collect::<Result<_>>()?;
    let nontrivial = gens.iter().any(|a| !a.is_trivial());
    if nontrivial && gens.iter().zip(&ops).all(|(a, &o)| all_below_e(a, o)) {
        return Ok(PscClass::Boolean);
    }
    let d4 = GeneratorSet::single(d4());
    let mut is_d4 = v_membership(&d4[0], gens, limits)?;
    for g in gens.iter() {
        if !is_d4 {
            break;
        }
        is_d4 = v_membership(g, &d4, limits)?;
    }
    if is_d4 {
        return Ok(PscClass::D4);
    }
    if gens.iter().zip(&ops).all(|(a, &o)| odd_sugihara(a, o)) {
        return Ok(PscClass::OddSugihara);
    }
    if nontrivial {
        let mut all = true;
        for g in gens.iter() {
            all = all && in_m(g)?;
        }
        if all {
            return Ok(PscClass::SubM);
        }
    }
    Ok(PscClass::NotPsc)
}

/// A simple algebra containing a smaller 0-generated simple algebra as a
/// proper subalgebra.
#[derive(Clone, Debug, Serialize)]
pub struct ProperExtension {
    /// `c4` or `d4`.
    pub core: &'static str,
    pub simple: FiniteAlgebra,
    /// Embedding of the core into `simple`.
    pub embedding: Vec<Elem>,
    /// For the quasivariety condition: the algebra `B` with `V(𝒢) = Q(B)`
    /// of which `simple` is a subalgebra, and the inclusion.
    pub host: Option<(FiniteAlgebra, Vec<Elem>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JepConditions {
    pub psc: PscClass,
    /// `V(𝒢)` is passively structurally complete.
    pub psc_variety: bool,
    /// `V(𝒢) = V(A)` for a simple `A` properly containing `D4`.
    pub simple_over_d4: Option<ProperExtension>,
    /// `V(𝒢) = Q(B)` for some `B` with a simple subalgebra properly
    /// containing `C4`. `B` ranges over the generators and their product.
    pub quasivariety_over_c4: Option<ProperExtension>,
}

impl JepConditions {
    pub fn any(&self) -> bool {
        self.psc_variety || self.simple_over_d4.is_some() || self.quasivariety_over_c4.is_some()
    }
}

fn generates_all(b: &FiniteAlgebra, gens: &GeneratorSet, limits: &Limits) -> Result<bool> {
    let single = GeneratorSet::single(b.clone());
    for g in gens.iter() {
        if !v_membership(g, &single, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn proper_core(core: &FiniteAlgebra, a: &FiniteAlgebra) -> Result<Option<Vec<Elem>>> {
    if a.size() <= core.size() {
        return Ok(None);
    }
    embedding_exists(core, a)
}

/// Searches for witnesses of the three conditions under which a variety of
/// De Morgan monoids has the joint embedding property.
pub fn jep_classification_conditions(gens: &GeneratorSet, limits: &Limits) -> Result<JepConditions> {
    let psc = classify_psc_variety(gens, limits)?;

    let mut simple_over_d4 = None;
    let d4 = d4();
    for s in si_in_hs(gens, limits)? {
        if si_status(&s.algebra, None, limits)? != SiStatus::Simple {
            continue;
        }
        if let Some(embedding) = proper_core(&d4, &s.algebra)? {
            if generates_all(&s.algebra, gens, limits)? {
                simple_over_d4 = Some(ProperExtension {
                    core: "d4",
                    simple: s.algebra,
                    embedding,
                    host: None,
                });
                break;
            }
        }
    }

    let mut hosts: Vec<FiniteAlgebra> = gens.algebras().to_vec();
    if gens.len() > 1 {
        let factors: Vec<&FiniteAlgebra> = gens.iter().collect();
        hosts.push(direct_product(gens.signature(), &factors, limits)?);
    }
    let c4 = c4();
    let mut quasivariety_over_c4 = None;
    'hosts: for b in hosts {
        if !generates_all(&b, gens, limits)? {
            continue;
        }
        // Q(B) = V(B): every SI algebra of HS(B) embeds into B
        let mut q_is_v = true;
        for s in si_in_hs(&GeneratorSet::single(b.clone()), limits)? {
            if embedding_exists(&s.algebra, &b)?.is_none() {
                q_is_v = false;
                break;
            }
        }
        if !q_is_v {
            continue;
        }
        for sub in enumerate_subalgebras(&b, true, limits)? {
            if si_status(&sub.algebra, None, limits)? != SiStatus::Simple {
                continue;
            }
            if let Some(embedding) = proper_core(&c4, &sub.algebra)? {
                quasivariety_over_c4 = Some(ProperExtension {
                    core: "c4",
                    simple: sub.algebra,
                    embedding,
                    host: Some((b, sub.inclusion)),
                });
                break 'hosts;
            }
        }
    }

    Ok(JepConditions {
        psc,
        psc_variety: psc.is_psc(),
        simple_over_d4,
        quasivariety_over_c4,
    })
}
