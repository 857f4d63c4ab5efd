use std::collections::HashMap;

use crate::algebra::{for_each_new_tuple, for_each_tuple, Elem, FiniteAlgebra, Term};
use crate::error::{precondition, Result};
use crate::limits::{pow_sat, Limits};

use super::GeneratorSet;

/// The free algebra of a given rank for the class generated by a
/// generator set.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub rank: usize,
    pub algebra: FiniteAlgebra,
    /// Images of the free generators `x1, …, x_rank`.
    pub generators: Vec<Elem>,
    /// A term in `x1, …, x_rank` naming each element.
    pub terms: Vec<Term>,
}

/// Name of the `i`-th free generator (0-based), rendered `x1`, `x2`, …
pub fn generator_name(rank: usize, i: usize) -> String {
    if rank == 1 {
        "x".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

struct Builder<'a> {
    elems: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, Elem>,
    terms: Vec<Term>,
    limit: &'a Limits,
}

impl Builder<'_> {
    fn add(&mut self, v: Vec<u16>, t: impl FnOnce() -> Term) -> Result<Elem> {
        if let Some(&i) = self.index.get(&v) {
            return Ok(i);
        }
        let i = self.elems.len();
        self.limit.check_carrier("free algebra", i as u128 + 1)?;
        self.index.insert(v.clone(), i);
        self.elems.push(v);
        self.terms.push(t());
        Ok(i)
    }
}

/// Birkhoff construction: the subalgebra of `∏ G` over all pairs
/// `(G, v ∈ G^rank)` generated by the coordinate projections.
pub fn free_algebra(gens: &GeneratorSet, rank: usize, limits: &Limits) -> Result<FreeAlgebra> {
    let sig = gens.signature().clone();
    if rank == 0 && !sig.has_constants() {
        return Err(precondition("rank 0 needs a constant symbol"));
    }
    let coords: u128 = gens
        .iter()
        .fold(0u128, |acc, g| acc.saturating_add(pow_sat(g.size(), rank)));
    Limits::check("free algebra coordinates", coords, limits.carrier as u128 * 64)?;
    // coordinate c belongs to generator owner[c] and is the tuple values[c]
    let mut owner: Vec<usize> = Vec::new();
    let mut values: Vec<Vec<Elem>> = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        for_each_tuple(g.size(), rank, |v| {
            owner.push(gi);
            values.push(v.to_vec());
        });
    }
    let width = owner.len();

    let mut b = Builder {
        elems: Vec::new(),
        index: HashMap::new(),
        terms: Vec::new(),
        limit: limits,
    };
    let mut entries: Vec<Vec<(Vec<usize>, Elem)>> = vec![Vec::new(); sig.len()];

    for c in sig.constants() {
        let v: Vec<u16> = owner.iter().map(|&gi| gens[gi].constant(c) as u16).collect();
        let i = b.add(v, || Term::constant(sig.ops()[c].name.clone()))?;
        entries[c].push((Vec::new(), i));
    }
    let mut generators = Vec::new();
    for j in 0..rank {
        let v: Vec<u16> = values.iter().map(|t| t[j] as u16).collect();
        generators.push(b.add(v, || Term::var(generator_name(rank, j)))?);
    }

    let mut p = 0;
    let mut buf = vec![0u16; width];
    let mut args = Vec::new();
    let mut tuples = Vec::new();
    while p < b.elems.len() {
        for (op, o) in sig.ops().iter().enumerate() {
            if o.arity == 0 {
                continue;
            }
            tuples.clear();
            for_each_new_tuple(p, o.arity, |pos| tuples.push(pos.to_vec()));
            for pos in tuples.drain(..) {
                for c in 0..width {
                    args.clear();
                    args.extend(pos.iter().map(|&i| b.elems[i][c] as Elem));
                    buf[c] = gens[owner[c]].apply(op, &args) as u16;
                }
                let i = match b.index.get(&buf) {
                    Some(&i) => i,
                    None => {
                        let t = Term::app(o.name.clone(), pos.iter().map(|&i| b.terms[i].clone()).collect());
                        b.add(buf.clone(), || t)?
                    }
                };
                entries[op].push((pos, i));
            }
        }
        p += 1;
    }
    let Builder { elems, terms, .. } = b;

    let n = elems.len();
    let mut tables: Vec<Vec<u32>> = sig
        .ops()
        .iter()
        .map(|o| vec![0u32; pow_sat(n, o.arity) as usize])
        .collect();
    for (op, list) in entries.into_iter().enumerate() {
        for (pos, r) in list {
            let idx = pos.iter().fold(0usize, |acc, &x| acc * n + x);
            tables[op][idx] = r as u32;
        }
    }
    let names = terms.iter().map(|t| t.to_string()).collect();
    let algebra = FiniteAlgebra::from_tables(sig, n, tables)?.with_names(names)?;
    Ok(FreeAlgebra {
        rank,
        algebra,
        generators,
        terms,
    })
}
