//! Seeded random instances for property tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Elem, FiniteAlgebra, Signature};
use crate::brouwer::{brouwerian_from_order, DominatedPoset, Poset};
use crate::demorgan::{dmm_signature, is_demorgan_monoid};
use std::sync::Arc;

/// A dominated poset with `1..=max` points: a random order on the first
/// points, put under a new top, then shuffled.
pub fn random_dominated_poset(rng: &mut impl Rng, max: usize) -> DominatedPoset {
    let n = rng.gen_range(1..=max.max(1));
    let density = rng.gen_range(0.1..0.7);
    let mut covers = Vec::new();
    for x in 0..n.saturating_sub(1) {
        for y in x + 1..n - 1 {
            if rng.gen_bool(density) {
                covers.push((x, y));
            }
        }
        covers.push((x, n - 1));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let covers: Vec<_> = covers.into_iter().map(|(x, y)| (perm[x], perm[y])).collect();
    DominatedPoset::new(Poset::from_covers(n, &covers).expect("acyclic")).expect("has a top")
}

/// A lattice of subsets of a 4-element set closed under union and
/// intersection, with `1..=max` members, or exactly `exact` members.
fn random_set_lattice(rng: &mut impl Rng, max: usize, exact: Option<usize>) -> Vec<u16> {
    loop {
        let mut sets: Vec<u16> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..16)).collect();
        sets.sort_unstable();
        sets.dedup();
        loop {
            let mut grown = sets.clone();
            for &a in &sets {
                for &b in &sets {
                    for c in [a | b, a & b] {
                        if !grown.contains(&c) {
                            grown.push(c);
                        }
                    }
                }
            }
            if grown.len() == sets.len() || grown.len() > max {
                sets = grown;
                break;
            }
            sets = grown;
        }
        if sets.len() <= max && exact.map_or(true, |k| k == sets.len()) {
            sets.shuffle(rng);
            return sets;
        }
    }
}

/// A Brouwerian algebra with at most `max` elements, from a random finite
/// distributive lattice.
pub fn random_brouwerian(rng: &mut impl Rng, max: usize) -> FiniteAlgebra {
    let sets = random_set_lattice(rng, max.max(1), None);
    let p = Poset::from_leq(sets.len(), |x, y| sets[x] & !sets[y] == 0).expect("inclusion order");
    brouwerian_from_order(&p).expect("distributive")
}

/// Tables drawn uniformly, for properties of the generic machinery.
pub fn random_algebra(rng: &mut impl Rng, sig: &Arc<Signature>, n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig.clone(), n, |_, _| rng.gen_range(0..n)).expect("in range")
}

/// Order-reversing involutions of a poset.
fn involutions(p: &Poset) -> Vec<Vec<Elem>> {
    let n = p.size();
    let mut out = Vec::new();
    fn go(p: &Poset, neg: &mut Vec<Option<Elem>>, x: usize, out: &mut Vec<Vec<Elem>>) {
        let n = p.size();
        if x == n {
            out.push(neg.iter().map(|v| v.expect("assigned")).collect());
            return;
        }
        if neg[x].is_some() {
            return go(p, neg, x + 1, out);
        }
        for y in x..n {
            if neg[y].is_some() {
                continue;
            }
            neg[x] = Some(y);
            neg[y] = Some(x);
            let reversing = (0..n).all(|a| {
                (0..n).all(|b| match (neg[a], neg[b]) {
                    (Some(na), Some(nb)) => !p.leq(a, b) || p.leq(nb, na),
                    _ => true,
                })
            });
            if reversing {
                go(p, neg, x + 1, out);
            }
            neg[x] = None;
            neg[y] = None;
        }
    }
    go(p, &mut vec![None; n], 0, &mut out);
    out
}

/// A De Morgan monoid with `1..=max` elements, the size drawn uniformly
/// (`max ≤ 8`): a random De Morgan lattice, a random identity and a fusion
/// found by randomized backtracking.
pub fn random_demorgan_monoid(rng: &mut impl Rng, max: usize) -> FiniteAlgebra {
    assert!((1..=8).contains(&max), "fusion search is meant for small algebras");
    let size = rng.gen_range(1..=max);
    loop {
        let sets = random_set_lattice(rng, max, Some(size));
        let p = Poset::from_leq(sets.len(), |x, y| sets[x] & !sets[y] == 0).expect("inclusion order");
        let negs = involutions(&p);
        let Some(neg) = negs.choose(rng) else { continue };
        let e = rng.gen_range(0..p.size());
        if let Some(fuse) = find_fusion(rng, &p, neg, e) {
            let n = p.size();
            let meet = |x: Elem, y: Elem| (0..n).find(|&z| sets[z] == sets[x] & sets[y]).expect("closed");
            let join = |x: Elem, y: Elem| (0..n).find(|&z| sets[z] == sets[x] | sets[y]).expect("closed");
            let a = FiniteAlgebra::from_fn(dmm_signature().clone(), n, |op, args| match op {
                0 => fuse[args[0] * n + args[1]],
                1 => meet(args[0], args[1]),
                2 => join(args[0], args[1]),
                3 => neg[args[0]],
                _ => e,
            })
            .expect("in range");
            debug_assert!(is_demorgan_monoid(&a).unwrap_or(false));
            return a;
        }
    }
}

const UNSET: usize = usize::MAX;

fn find_fusion(rng: &mut impl Rng, p: &Poset, neg: &[Elem], e: Elem) -> Option<Vec<Elem>> {
    let n = p.size();
    let mut t = vec![UNSET; n * n];
    for x in 0..n {
        t[e * n + x] = x;
        t[x * n + e] = x;
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != e && y != e)
        .collect();
    fn consistent(p: &Poset, neg: &[Elem], t: &[usize]) -> bool {
        let n = p.size();
        let f = |x: usize, y: usize| t[x * n + y];
        for x in 0..n {
            if f(x, x) != UNSET && !p.leq(x, f(x, x)) {
                return false;
            }
            for y in 0..n {
                let xy = f(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    // isotone in the second argument
                    if p.leq(y, z) && f(x, z) != UNSET && !p.leq(xy, f(x, z)) {
                        return false;
                    }
                    // x·y ≤ z iff x·¬z ≤ ¬y
                    let xnz = f(x, neg[z]);
                    if xnz != UNSET && p.leq(xy, z) != p.leq(xnz, neg[y]) {
                        return false;
                    }
                    let yz = f(y, z);
                    if yz != UNSET && f(xy, z) != UNSET && f(x, yz) != UNSET && f(xy, z) != f(x, yz) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        rng: &mut impl Rng,
        p: &Poset,
        neg: &[Elem],
        cells: &[(usize, usize)],
        i: usize,
        t: &mut Vec<usize>,
        budget: &mut usize,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if i == cells.len() {
            return true;
        }
        let n = p.size();
        let (x, y) = cells[i];
        let mut values: Vec<usize> = (0..n).collect();
        values.shuffle(rng);
        for v in values {
            t[x * n + y] = v;
            t[y * n + x] = v;
            if consistent(p, neg, t) && go(rng, p, neg, cells, i + 1, t, budget) {
                return true;
            }
        }
        t[x * n + y] = UNSET;
        t[y * n + x] = UNSET;
        false
    }
    if !consistent(p, neg, &t) {
        return None;
    }
    let mut budget = 20_000;
    go(rng, p, neg, &cells, 0, &mut t, &mut budget).then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demorgan::is_brouwerian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut sizes = Vec::new();
        for _ in 0..30 {
            let a = random_demorgan_monoid(&mut rng, 6);
            assert!(is_demorgan_monoid(&a).unwrap());
            sizes.push(a.size());
            let b = random_brouwerian(&mut rng, 12);
            assert!(b.size() <= 12 && is_brouwerian(&b).unwrap());
            let x = random_dominated_poset(&mut rng, 7);
            assert!(x.size() <= 7);
        }
        sizes.sort_unstable();
        sizes.dedup();
        assert!(sizes.len() >= 3, "{sizes:?}");
    }
}
