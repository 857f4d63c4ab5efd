use std::collections::HashSet;

use crate::algebra::term::eval;
use crate::algebra::{for_each_new_tuple, quotient, Assignment, Elem, FiniteAlgebra};
use crate::congruence::{all_congruences, si_status};
use crate::error::{precondition, Result};
use crate::limits::Limits;
use crate::morphisms::{embedding_exists, greedy_generators, is_homomorphism, is_retract, separates};

use super::{free_algebra, generator_name, GeneratorSet};

const NONE: usize = usize::MAX;

/// `A ∈ ISP(𝒢)`.
pub fn q_membership(a: &FiniteAlgebra, gens: &GeneratorSet) -> Result<bool> {
    Ok(separates(a, gens.algebras())?.separated())
}

/// Partial map `G → S` grown as the subalgebra of `G × S` generated by
/// chosen pairs; it stays a function or the branch dies.
struct Relation<'a> {
    g: &'a FiniteAlgebra,
    s: &'a FiniteAlgebra,
    map: Vec<Elem>,
    list: Vec<Elem>,
}

impl Relation<'_> {
    fn add(&mut self, b: Elem, v: Elem) -> bool {
        if self.map[b] != NONE {
            return self.map[b] == v;
        }
        let start = self.list.len();
        self.map[b] = v;
        self.list.push(b);
        self.close(start)
    }

    fn close(&mut self, start: usize) -> bool {
        let mut p = start;
        let mut ok = true;
        let (mut ag, mut as_) = (Vec::new(), Vec::new());
        while ok && p < self.list.len() {
            for (op, o) in self.g.signature().ops().iter().enumerate() {
                if o.arity == 0 || !ok {
                    continue;
                }
                for_each_new_tuple(p, o.arity, |pos| {
                    if !ok {
                        return;
                    }
                    ag.clear();
                    as_.clear();
                    ag.extend(pos.iter().map(|&i| self.list[i]));
                    as_.extend(ag.iter().map(|&x| self.map[x]));
                    let rg = self.g.apply(op, &ag);
                    let rs = self.s.apply(op, &as_);
                    if self.map[rg] == NONE {
                        self.map[rg] = rs;
                        self.list.push(rg);
                    } else if self.map[rg] != rs {
                        ok = false;
                    }
                });
            }
            p += 1;
        }
        ok
    }

    fn truncate(&mut self, len: usize) {
        for &x in &self.list[len..] {
            self.map[x] = NONE;
        }
        self.list.truncate(len);
    }
}

/// `S ∈ HS(G)`: elements `b̄` of `G` such that `b_i ↦ s_i` extends to a
/// homomorphism from the subalgebra generated by `b̄` onto `S`, where `s̄`
/// generates `S`. Returns `(b̄, s̄)`.
pub fn hs_membership(s: &FiniteAlgebra, g: &FiniteAlgebra) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
    s.require_same_signature(g)?;
    let targets = greedy_generators(s);
    let mut rel = Relation {
        g,
        s,
        map: vec![NONE; g.size()],
        list: Vec::new(),
    };
    for c in g.signature().constants() {
        if !rel.add(g.constant(c), s.constant(c)) {
            return Ok(None);
        }
    }
    if s.size() > g.size() {
        return Ok(None);
    }
    fn go(rel: &mut Relation<'_>, targets: &[Elem], chosen: &mut Vec<Elem>) -> bool {
        let i = chosen.len();
        if i == targets.len() {
            return true;
        }
        for b in 0..rel.g.size() {
            if rel.map[b] != NONE {
                continue;
            }
            let len = rel.list.len();
            if rel.add(b, targets[i]) {
                chosen.push(b);
                if go(rel, targets, chosen) {
                    return true;
                }
                chosen.pop();
            }
            rel.truncate(len);
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(go(&mut rel, &targets, &mut chosen).then_some((chosen, targets)))
}

/// A pair of binary operations forming a lattice in every generator.
/// With one, the generated variety is congruence distributive.
pub fn lattice_reduct(gens: &GeneratorSet) -> Option<(usize, usize)> {
    let sig = gens.signature();
    let binary: Vec<usize> = (0..sig.len()).filter(|&o| sig.arity(o) == 2).collect();
    let semilattice = |a: &FiniteAlgebra, m: usize| {
        let n = a.size();
        (0..n).all(|x| a.apply2(m, x, x) == x)
            && (0..n).all(|x| (0..n).all(|y| a.apply2(m, x, y) == a.apply2(m, y, x)))
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| a.apply2(m, a.apply2(m, x, y), z) == a.apply2(m, x, a.apply2(m, y, z)))
                })
            })
    };
    let semis: Vec<usize> = binary
        .iter()
        .copied()
        .filter(|&m| gens.iter().all(|a| semilattice(a, m)))
        .collect();
    for &m in &semis {
        for &j in &semis {
            if m == j {
                continue;
            }
            let absorbs = gens.iter().all(|a| {
                let n = a.size();
                (0..n).all(|x| (0..n).all(|y| a.apply2(m, x, a.apply2(j, x, y)) == x && a.apply2(j, x, a.apply2(m, x, y)) == x))
            });
            if absorbs {
                return Some((m, j));
            }
        }
    }
    None
}

/// Membership in `V(𝒢)` when the variety is congruence distributive: by
/// Jónsson's lemma its subdirectly irreducible members lie in `HS(𝒢)`, and
/// `A` is a subdirect product of its subdirectly irreducible quotients.
pub fn v_membership_jonsson(a: &FiniteAlgebra, gens: &GeneratorSet, limits: &Limits) -> Result<bool> {
    if a.is_trivial() {
        return Ok(true);
    }
    let lattice = all_congruences(a, limits)?;
    let mut seen = HashSet::new();
    for theta in lattice.completely_meet_irreducible() {
        let (q, _) = quotient(a, theta)?;
        if !seen.insert(q.canonical_form()) {
            continue;
        }
        let mut found = false;
        for g in gens.iter() {
            if embedding_exists(&q, g)?.is_some() || hs_membership(&q, g)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `V(𝒢)` through the free algebra: with `ā` generating `A`
/// (`k` elements), `A ∈ V(𝒢)` iff `x_i ↦ a_i` extends to a homomorphism
/// `F(k) → A`. The map is forced by the terms naming the free elements, so
/// only one candidate is checked.
pub fn v_membership_free(a: &FiniteAlgebra, gens: &GeneratorSet, limits: &Limits) -> Result<bool> {
    a.require_same_signature(&gens[0])?;
    let targets = greedy_generators(a);
    let rank = targets.len();
    let f = free_algebra(gens, rank, limits)?;
    let v: Assignment = targets
        .iter()
        .enumerate()
        .map(|(i, &t)| (generator_name(rank, i), t))
        .collect();
    let map = f
        .terms
        .iter()
        .map(|t| eval(t, a, &v))
        .collect::<Result<Vec<_>>>()?;
    Ok(is_homomorphism(&f.algebra, a, &map))
}

/// `A ∈ V(𝒢)`. Uses Jónsson's lemma when the generators share a lattice
/// reduct, the free algebra otherwise.
pub fn v_membership(a: &FiniteAlgebra, gens: &GeneratorSet, limits: &Limits) -> Result<bool> {
    a.require_same_signature(&gens[0])?;
    if lattice_reduct(gens).is_some() {
        v_membership_jonsson(a, gens, limits)
    } else {
        v_membership_free(a, gens, limits)
    }
}

/// `B ∈ Ret(Q(𝒢), A)`: `B` trivial or `A` a retract of `B`.
pub fn ret_membership(b: &FiniteAlgebra, gens: &GeneratorSet, a: &FiniteAlgebra) -> Result<bool> {
    if !q_membership(b, gens)? {
        return Err(precondition("the algebra is not in the generated quasivariety"));
    }
    Ok(b.is_trivial() || is_retract(a, b)?.is_some())
}

/// `A ∉ SH(B)` for a subdirectly irreducible `A`: `A` embeds into no
/// quotient of `B`.
pub fn excludes(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    a.require_same_signature(b)?;
    if !si_status(a, None, limits)?.is_si() {
        return Err(precondition("the excluded algebra must be subdirectly irreducible"));
    }
    for theta in all_congruences(b, limits)?.congruences() {
        let (q, _) = quotient(b, theta)?;
        if embedding_exists(a, &q)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
