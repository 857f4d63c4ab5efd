//! Deliberately naive procedures used to cross-check the deciders.
//!
//! Nothing here shares code with the homomorphism engine or the congruence
//! machinery: maps are built element by element in index order, every table
//! entry is checked once all its elements have images, and subalgebras are
//! found by testing subsets.

use std::collections::HashSet;

use crate::algebra::{for_each_tuple, Elem, FiniteAlgebra};
use crate::error::{precondition, Result};
use crate::quasivar::GeneratorSet;

/// Table entries grouped by their largest element index.
struct Entries {
    by_max: Vec<Vec<(usize, Vec<Elem>, Elem)>>,
}

impl Entries {
    fn new(a: &FiniteAlgebra) -> Entries {
        let mut by_max = vec![Vec::new(); a.size()];
        for (op, o) in a.signature().ops().iter().enumerate() {
            for_each_tuple(a.size(), o.arity, |args| {
                let r = a.apply(op, args);
                let m = args.iter().copied().fold(r, usize::max);
                by_max[m].push((op, args.to_vec(), r));
            });
        }
        Entries { by_max }
    }
}

fn search(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    entries: &Entries,
    injective: bool,
    map: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
    limit: usize,
) {
    let i = map.len();
    if i == a.size() {
        out.push(map.clone());
        return;
    }
    let mut img = Vec::new();
    for v in 0..b.size() {
        if injective && map.contains(&v) {
            continue;
        }
        map.push(v);
        let ok = entries.by_max[i].iter().all(|(op, args, r)| {
            img.clear();
            img.extend(args.iter().map(|&x| map[x]));
            b.apply(*op, &img) == map[*r]
        });
        if ok {
            search(a, b, entries, injective, map, out, limit);
        }
        map.pop();
        if out.len() >= limit {
            return;
        }
    }
}

fn naive(a: &FiniteAlgebra, b: &FiniteAlgebra, injective: bool, limit: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    if !a.same_signature(b) || limit == 0 {
        return out;
    }
    let entries = Entries::new(a);
    search(a, b, &entries, injective, &mut Vec::new(), &mut out, limit);
    out
}

/// Up to `limit` homomorphisms, lexicographically ordered.
pub fn naive_homs(a: &FiniteAlgebra, b: &FiniteAlgebra, limit: usize) -> Vec<Vec<Elem>> {
    naive(a, b, false, limit)
}

pub fn naive_embeds(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    !naive(a, b, true, 1).is_empty()
}

pub fn naive_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size() == b.size() && naive_embeds(a, b)
}

/// Nonempty subuniverses, by testing every subset. At most 20 elements.
pub fn naive_subuniverses(a: &FiniteAlgebra) -> Result<Vec<Vec<Elem>>> {
    let n = a.size();
    if n > 20 {
        return Err(precondition("subset enumeration is capped at 20 elements"));
    }
    let constants = a.constant_values();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let inside = |x: Elem| mask >> x & 1 == 1;
        if !constants.iter().all(|&c| inside(c)) {
            continue;
        }
        let members: Vec<Elem> = (0..n).filter(|&x| inside(x)).collect();
        let mut closed = true;
        for (op, o) in a.signature().ops().iter().enumerate() {
            if o.arity == 0 || !closed {
                continue;
            }
            for_each_tuple(members.len(), o.arity, |pos| {
                if closed {
                    let args: Vec<Elem> = pos.iter().map(|&p| members[p]).collect();
                    closed = inside(a.apply(op, &args));
                }
            });
        }
        if closed {
            out.push(members);
        }
    }
    Ok(out)
}

/// Nontrivial subalgebras of the generators, one per isomorphism type.
fn nontrivial_members(gens: &GeneratorSet) -> Result<Vec<FiniteAlgebra>> {
    let mut reps: Vec<FiniteAlgebra> = Vec::new();
    for g in gens.iter() {
        for u in naive_subuniverses(g)? {
            if u.len() < 2 {
                continue;
            }
            let s = g.induced(&u)?;
            if !reps.iter().any(|r| naive_isomorphic(r, &s)) {
                reps.push(s);
            }
        }
    }
    Ok(reps)
}

/// Joint embedding, brute force. Members of `Q(𝒢)` are subalgebras of
/// products of subalgebras of generators, so JEP holds iff every two
/// nontrivial subalgebras `A`, `B` of generators embed into one product of
/// generators. The tuple maps are assembled from all homomorphisms into
/// generators receiving maps from both sides and checked for injectivity.
pub fn jep_oracle(gens: &GeneratorSet) -> Result<bool> {
    let members = nontrivial_members(gens)?;
    let homs: Vec<Vec<Vec<Vec<Elem>>>> = members
        .iter()
        .map(|m| gens.iter().map(|g| naive_homs(m, g, usize::MAX)).collect())
        .collect();
    for i in 0..members.len() {
        for j in 0..members.len() {
            if i == j {
                continue;
            }
            // coordinates: generators that receive homomorphisms from both
            let mut tuple: Vec<Vec<Elem>> = vec![Vec::new(); members[i].size()];
            for gi in 0..gens.len() {
                if homs[j][gi].is_empty() {
                    continue;
                }
                for h in &homs[i][gi] {
                    for (x, t) in tuple.iter_mut().enumerate() {
                        t.push(h[x]);
                    }
                }
            }
            let distinct: HashSet<&Vec<Elem>> = tuple.iter().collect();
            if distinct.len() != members[i].size() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Passive structural completeness, brute force: all nontrivial members
/// with at most `max_size` elements found inside products of at most three
/// generators (generated by one or two elements) must admit homomorphisms
/// into each other.
pub fn psc_oracle(gens: &GeneratorSet, max_size: usize) -> Result<bool> {
    let mut members: Vec<FiniteAlgebra> = Vec::new();
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let k = gens.len();
    let mut combos: Vec<Vec<usize>> = Vec::new();
    for r in 1..=3 {
        for_each_tuple(k, r, |t| {
            if t.windows(2).all(|w| w[0] <= w[1]) {
                combos.push(t.to_vec());
            }
        });
    }
    for combo in combos {
        let factors: Vec<&FiniteAlgebra> = combo.iter().map(|&i| &gens[i]).collect();
        let size: usize = factors.iter().map(|f| f.size()).product();
        if size > 512 {
            continue;
        }
        let p = product(&factors);
        let mut consider = |seed: &[Elem]| {
            if let Some(u) = bounded_closure(&p, seed, max_size) {
                if u.len() >= 2 {
                    let s = p.induced(&u).expect("closed");
                    if seen.insert(s.tables().to_vec()) && !members.iter().any(|m| naive_isomorphic(m, &s)) {
                        members.push(s);
                    }
                }
            }
        };
        for x in 0..p.size() {
            consider(&[x]);
            for y in x + 1..p.size() {
                consider(&[x, y]);
            }
        }
    }
    for a in &members {
        for b in &members {
            if naive_homs(a, b, 1).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Direct product built from scratch, first factor most significant.
fn product(factors: &[&FiniteAlgebra]) -> FiniteAlgebra {
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let n: usize = sizes.iter().product();
    let decode = |mut x: Elem| {
        let mut c = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            c[i] = x % sizes[i];
            x /= sizes[i];
        }
        c
    };
    FiniteAlgebra::from_fn(factors[0].signature().clone(), n, |op, args| {
        let coords: Vec<Vec<Elem>> = args.iter().map(|&a| decode(a)).collect();
        (0..sizes.len()).fold(0, |acc, i| {
            let a: Vec<Elem> = coords.iter().map(|c| c[i]).collect();
            acc * sizes[i] + factors[i].apply(op, &a)
        })
    })
    .expect("product tables")
}

/// Closure of `seed` and the constants, abandoned past `max` elements.
fn bounded_closure(a: &FiniteAlgebra, seed: &[Elem], max: usize) -> Option<Vec<Elem>> {
    let mut set: Vec<Elem> = a.constant_values();
    set.extend_from_slice(seed);
    set.sort_unstable();
    set.dedup();
    loop {
        if set.len() > max {
            return None;
        }
        let mut new = Vec::new();
        for (op, o) in a.signature().ops().iter().enumerate() {
            if o.arity == 0 {
                continue;
            }
            for_each_tuple(set.len(), o.arity, |pos| {
                let args: Vec<Elem> = pos.iter().map(|&p| set[p]).collect();
                let v = a.apply(op, &args);
                if set.binary_search(&v).is_err() && !new.contains(&v) {
                    new.push(v);
                }
            });
        }
        if new.is_empty() {
            return Some(set);
        }
        set.extend(new);
        set.sort_unstable();
    }
}
