//! Canonical labelling.
//!
//! Fix the least number `k` of generators needed on top of the constants.
//! Every generating `k`-tuple induces a labelling: constants first in
//! signature order, then the tuple, then the closure discovered tuple by
//! tuple in label order. The relabelled tables depend only on the
//! isomorphism type of (algebra, tuple), so the least serialization over
//! all generating tuples is an isomorphism invariant that separates
//! non-isomorphic algebras.

use super::{for_each_new_tuple, for_each_tuple, Elem, FiniteAlgebra};

pub(super) fn canonical_form(a: &FiniteAlgebra) -> Vec<u32> {
    let n = a.size();
    let k = min_generators(a);
    let mut best: Option<Vec<u32>> = None;
    let mut label = vec![usize::MAX; n];
    let mut order: Vec<Elem> = Vec::with_capacity(n);
    for_each_tuple(n, k, |gens| {
        if !label_from(a, gens, &mut label, &mut order) {
            return;
        }
        let ser = serialize(a, &label, &order);
        if best.as_ref().is_none_or(|b| ser < *b) {
            best = Some(ser);
        }
    });
    let mut out = vec![n as u32];
    out.extend(best.expect("some tuple generates"));
    out
}

fn min_generators(a: &FiniteAlgebra) -> usize {
    fn search(a: &FiniteAlgebra, k: usize, from: Elem, chosen: &mut Vec<Elem>) -> bool {
        if chosen.len() == k {
            return a.closure(chosen).iter().all(|&m| m);
        }
        for x in from..a.size() {
            chosen.push(x);
            if search(a, k, x + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (0..=a.size())
        .find(|&k| search(a, k, 0, &mut Vec::new()))
        .unwrap_or(a.size())
}

/// Labels elements from a generating tuple. Returns false if the tuple
/// repeats an element already labelled or does not generate.
fn label_from(a: &FiniteAlgebra, gens: &[Elem], label: &mut [usize], order: &mut Vec<Elem>) -> bool {
    label.iter_mut().for_each(|l| *l = usize::MAX);
    order.clear();
    let push = |x: Elem, label: &mut [usize], order: &mut Vec<Elem>| {
        if label[x] == usize::MAX {
            label[x] = order.len();
            order.push(x);
            true
        } else {
            false
        }
    };
    for c in a.signature().constants() {
        push(a.constant(c), label, order);
    }
    for &g in gens {
        if !push(g, label, order) {
            // a redundant generator can never be part of a minimal tuple
            return false;
        }
    }
    let mut p = 0;
    let mut args = Vec::new();
    while p < order.len() {
        for (op, o) in a.signature().ops().iter().enumerate() {
            if o.arity == 0 {
                continue;
            }
            for_each_new_tuple(p, o.arity, |pos| {
                args.clear();
                args.extend(pos.iter().map(|&i| order[i]));
                let v = a.apply(op, &args);
                if label[v] == usize::MAX {
                    label[v] = order.len();
                    order.push(v);
                }
            });
        }
        p += 1;
    }
    order.len() == a.size()
}

fn serialize(a: &FiniteAlgebra, label: &[usize], order: &[Elem]) -> Vec<u32> {
    let n = a.size();
    let mut out = Vec::new();
    let mut args = Vec::new();
    for (op, o) in a.signature().ops().iter().enumerate() {
        for_each_tuple(n, o.arity, |local| {
            args.clear();
            args.extend(local.iter().map(|&l| order[l]));
            out.push(label[a.apply(op, &args)] as u32);
        });
    }
    out
}
