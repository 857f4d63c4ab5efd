use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteAlgebra};
use crate::error::{precondition, Result};
use crate::limits::Limits;

/// A subalgebra together with its inclusion map into the parent.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    /// `inclusion[i]` is the parent element of subalgebra element `i`,
    /// increasing in `i`.
    pub inclusion: Vec<Elem>,
}

pub fn subalgebra_generated(a: &FiniteAlgebra, seed: &[Elem]) -> Result<Subalgebra> {
    if let Some(&bad) = seed.iter().find(|&&s| s >= a.size()) {
        return Err(precondition(format!("element {bad} is outside the carrier")));
    }
    if seed.is_empty() && !a.signature().has_constants() {
        return Err(precondition(
            "the empty set generates no subalgebra without constants",
        ));
    }
    let member = a.closure(seed);
    let inclusion: Vec<Elem> = (0..a.size()).filter(|&x| member[x]).collect();
    Ok(Subalgebra {
        algebra: a.induced(&inclusion)?,
        inclusion,
    })
}

/// All subalgebras, ordered by size and then canonical form. With
/// `up_to_iso` only the first representative of each isomorphism type is
/// kept.
pub fn enumerate_subalgebras(
    a: &FiniteAlgebra,
    up_to_iso: bool,
    limits: &Limits,
) -> Result<Vec<Subalgebra>> {
    limits.check_subalgebras(a.size())?;
    let subs = subuniverses(a);
    let mut out: Vec<Subalgebra> = subs
        .into_iter()
        .map(|set| {
            let inclusion: Vec<Elem> = set.ones().collect();
            let algebra = a.induced(&inclusion).expect("closed subset");
            Subalgebra { algebra, inclusion }
        })
        .collect();
    out.sort_by(|x, y| {
        (x.algebra.size(), x.algebra.canonical_form(), &x.inclusion).cmp(&(
            y.algebra.size(),
            y.algebra.canonical_form(),
            &y.inclusion,
        ))
    });
    if up_to_iso {
        out.dedup_by(|x, y| x.algebra.canonical_form() == y.algebra.canonical_form());
    }
    Ok(out)
}

/// Every non-empty subuniverse, found by adding one element at a time to
/// already known subuniverses and closing.
pub(crate) fn subuniverses(a: &FiniteAlgebra) -> Vec<FixedBitSet> {
    let n = a.size();
    let to_set = |member: &[bool]| {
        let mut s = FixedBitSet::with_capacity(n);
        for (i, &m) in member.iter().enumerate() {
            s.set(i, m);
        }
        s
    };
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: Vec<FixedBitSet> = Vec::new();
    let push = |s: FixedBitSet, seen: &mut HashSet<FixedBitSet>, queue: &mut Vec<FixedBitSet>| {
        if s.count_ones(..) > 0 && seen.insert(s.clone()) {
            queue.push(s);
        }
    };
    if a.signature().has_constants() {
        push(to_set(&a.closure(&[])), &mut seen, &mut queue);
    }
    for x in 0..n {
        push(to_set(&a.closure(&[x])), &mut seen, &mut queue);
    }
    let mut i = 0;
    while i < queue.len() {
        let base = queue[i].clone();
        let member: Vec<bool> = (0..n).map(|x| base.contains(x)).collect();
        let list_base: Vec<Elem> = base.ones().collect();
        for x in 0..n {
            if base.contains(x) {
                continue;
            }
            let mut m = member.clone();
            let mut list = list_base.clone();
            m[x] = true;
            list.push(x);
            let start = list_base.len();
            a.close_list(&mut m, &mut list, start);
            push(to_set(&m), &mut seen, &mut queue);
        }
        i += 1;
    }
    queue
}

