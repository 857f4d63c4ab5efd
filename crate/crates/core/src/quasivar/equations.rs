use crate::algebra::term::Compiled;
use crate::algebra::{for_each_tuple, Assignment, Elem, FiniteAlgebra, QuasiEquation, Term};
use crate::error::Result;
use crate::limits::{pow_sat, Limits};

use super::witness::apply_subst;
use super::{free_algebra, generator_name, Answer, GeneratorSet, Verdict, Witness};

/// First assignment (lexicographic in variable order) under which `qe`
/// fails in `a`.
fn counter_assignment(a: &FiniteAlgebra, qe: &QuasiEquation, limits: &Limits) -> Result<Option<Vec<Elem>>> {
    let c = qe.compile(a.signature())?;
    limits.check_assignments(pow_sat(a.size(), c.vars.len()))?;
    let mut found = None;
    for_each_tuple(a.size(), c.vars.len(), |vals| {
        if found.is_none() && c.premises_hold(a, vals) && !c.holds(a, vals) {
            found = Some(vals.to_vec());
        }
    });
    Ok(found)
}

fn to_assignment(vars: &[String], vals: &[Elem]) -> Assignment {
    vars.iter().cloned().zip(vals.iter().copied()).collect()
}

/// Quasi-equations are preserved by I, S and P, so validity in `Q(𝒢)` is
/// validity in every generator.
pub fn valid(qe: &QuasiEquation, gens: &GeneratorSet, limits: &Limits) -> Result<Verdict> {
    let vars = qe.variables();
    for (i, g) in gens.iter().enumerate() {
        if let Some(vals) = counter_assignment(g, qe, limits)? {
            return Ok(Verdict::no(Witness::CounterAssignment {
                generator: i,
                assignment: to_assignment(&vars, &vals),
            }));
        }
    }
    Ok(Verdict::yes(None))
}

/// Solutions of `eqs` in `a`, searched variable by variable; each equation
/// is tested as soon as its last variable is assigned.
fn solve(a: &FiniteAlgebra, eqs: &[(Term, Term)], vars: &[String], limits: &Limits) -> Result<Option<Vec<Elem>>> {
    limits.check_assignments(pow_sat(a.size(), vars.len()))?;
    let mut at_depth: Vec<Vec<(Compiled, Compiled)>> = (0..=vars.len()).map(|_| Vec::new()).collect();
    for (s, t) in eqs {
        let mut used = s.variables();
        used.extend(t.variables());
        let depth = used
            .iter()
            .map(|v| vars.iter().position(|w| w == v).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0);
        at_depth[depth].push((Compiled::new(s, a.signature(), vars)?, Compiled::new(t, a.signature(), vars)?));
    }
    let mut vals = vec![0; vars.len()];
    fn go(a: &FiniteAlgebra, at: &[Vec<(Compiled, Compiled)>], vals: &mut Vec<Elem>, d: usize) -> bool {
        if !at[d].iter().all(|(s, t)| s.eval(a, vals) == t.eval(a, vals)) {
            return false;
        }
        if d == vals.len() {
            return true;
        }
        for x in 0..a.size() {
            vals[d] = x;
            if go(a, at, vals, d + 1) {
                return true;
            }
        }
        false
    }
    Ok(go(a, &at_depth, &mut vals, 0).then_some(vals))
}

fn variables_of(eqs: &[(Term, Term)]) -> Vec<String> {
    let mut vars = Vec::new();
    for (s, t) in eqs {
        s.collect_vars(&mut vars);
        t.collect_vars(&mut vars);
    }
    vars
}

/// A unifier exists iff the equations have a solution in `F(1)`: a unifier
/// in `m` variables is a solution in `F(m)`, which maps onto `F(1)`, and the
/// elements of `F(1)` are one-variable terms.
pub fn unifiable(eqs: &[(Term, Term)], gens: &GeneratorSet, limits: &Limits) -> Result<Verdict> {
    let f = free_algebra(gens, 1, limits)?;
    let vars = variables_of(eqs);
    Ok(match solve(&f.algebra, eqs, &vars, limits)? {
        Some(vals) => Verdict::yes(Some(Witness::Unifier {
            substitution: vars
                .iter()
                .cloned()
                .zip(vals.iter().map(|&v| f.terms[v].clone()))
                .collect(),
        })),
        None => Verdict::no(Witness::Exhausted {
            searched: format!("all {}^{} assignments into F(1)", f.algebra.size(), vars.len()),
        }),
    })
}

/// Premises not unifiable. Equations are active.
pub fn passive(qe: &QuasiEquation, gens: &GeneratorSet, limits: &Limits) -> Result<bool> {
    if qe.premises.is_empty() {
        return Ok(false);
    }
    Ok(unifiable(&qe.premises, gens, limits)?.is_no())
}

/// Validity in `F(r)` for each rank from the least available one up to
/// `max_rank`. Admissibility is validity in `F(ω)`, so a failure at any rank
/// is final and passing every rank only certifies up to `max_rank`.
pub fn admissible_upto(qe: &QuasiEquation, gens: &GeneratorSet, max_rank: usize, limits: &Limits) -> Result<Verdict> {
    let first = if gens.signature().has_constants() { 0 } else { 1 };
    let vars = qe.variables();
    for rank in first..=max_rank {
        let f = free_algebra(gens, rank, limits)?;
        let Some(vals) = counter_assignment(&f.algebra, qe, limits)? else {
            continue;
        };
        let substitution: Vec<(String, Term)> = vars
            .iter()
            .cloned()
            .zip(vals.iter().map(|&v| f.terms[v].clone()))
            .collect();
        let (s, t) = &qe.conclusion;
        let (s, t) = (apply_subst(s, &substitution), apply_subst(t, &substitution));
        let names: Vec<String> = (0..rank).map(|i| generator_name(rank, i)).collect();
        for (gi, g) in gens.iter().enumerate() {
            let cs = Compiled::new(&s, g.signature(), &names)?;
            let ct = Compiled::new(&t, g.signature(), &names)?;
            let mut hit = None;
            for_each_tuple(g.size(), rank, |v| {
                if hit.is_none() && cs.eval(g, v) != ct.eval(g, v) {
                    hit = Some(v.to_vec());
                }
            });
            if let Some(v) = hit {
                return Ok(Verdict::no(Witness::CounterSubstitution {
                    rank,
                    substitution,
                    generator: gi,
                    values: to_assignment(&names, &v),
                }));
            }
        }
        unreachable!("distinct elements of a free algebra differ in some coordinate");
    }
    Ok(Verdict {
        answer: Answer::CertifiedUpTo(max_rank),
        witness: None,
    })
}
