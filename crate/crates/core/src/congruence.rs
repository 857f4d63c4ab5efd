//! Congruences, their lattices, and subdirect irreducibility.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{for_each_tuple, quotient, Elem, FiniteAlgebra};
use crate::error::{precondition, Error, Result};
use crate::limits::Limits;
use crate::morphisms;

/// A partition of the carrier, stored as block ids numbered in order of
/// least member.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.block_string())
    }
}

impl Congruence {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut rename = HashMap::new();
        let blocks = labels
            .iter()
            .map(|l| {
                let next = rename.len();
                *rename.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { blocks: vec![0; n] }
    }

    /// Kernel of a map.
    pub fn kernel(map: &[Elem]) -> Congruence {
        Self::from_labels(map)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: Elem) -> usize {
        self.blocks[x]
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.blocks.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Least member of each block.
    pub fn representatives(&self) -> Vec<Elem> {
        let mut reps = vec![usize::MAX; self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }

    pub fn members(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// `|0,1|2|3` style rendering; doubles as the canonical sort key.
    pub fn block_string(&self) -> String {
        self.members()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let reps = self.representatives();
        self.blocks
            .iter()
            .enumerate()
            .all(|(x, &b)| other.related(x, reps[b]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.blocks.len();
        Congruence::from_labels(
            &(0..n)
                .map(|x| self.blocks[x] * n + other.blocks[x])
                .collect::<Vec<_>>(),
        )
    }

    /// Least congruence of `a` containing both.
    pub fn join(&self, other: &Congruence, a: &FiniteAlgebra) -> Congruence {
        let mut uf = UnionFind::from_congruence(self);
        let mut pending = Vec::new();
        let reps = other.representatives();
        for (x, &b) in other.blocks.iter().enumerate() {
            let r = reps[b];
            if uf.union(x, r) {
                pending.push((x, r));
            }
        }
        close(a, &mut uf, pending);
        uf.to_congruence()
    }

    /// Checks compatibility with every operation.
    pub fn check_compatible(&self, a: &FiniteAlgebra) -> Result<()> {
        let reps = self.representatives();
        let mut rargs = Vec::new();
        for (op, o) in a.signature().ops().iter().enumerate() {
            if o.arity == 0 {
                continue;
            }
            let mut ok = true;
            for_each_tuple(a.size(), o.arity, |args| {
                if !ok {
                    return;
                }
                rargs.clear();
                rargs.extend(args.iter().map(|&x| reps[self.blocks[x]]));
                if !self.related(a.apply(op, args), a.apply(op, &rargs)) {
                    ok = false;
                }
            });
            if !ok {
                return Err(Error::NotCompatible(o.name.clone()));
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn from_congruence(c: &Congruence) -> Self {
        let reps = c.representatives();
        UnionFind {
            parent: c.blocks.iter().map(|&b| reps[b]).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    fn to_congruence(&mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

/// Processes merged pairs until every one-coordinate translate of every
/// merged pair is merged too. The merged pairs form a spanning forest of
/// the new identifications, so their translates generate the closure.
fn close(a: &FiniteAlgebra, uf: &mut UnionFind, mut pending: Vec<(Elem, Elem)>) {
    let n = a.size();
    let ops: Vec<(usize, usize)> = a
        .signature()
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, o)| o.arity > 0)
        .map(|(i, o)| (i, o.arity))
        .collect();
    let mut args_x = Vec::new();
    let mut args_y = Vec::new();
    while let Some((x, y)) = pending.pop() {
        for &(op, k) in &ops {
            match k {
                1 => {
                    let (u, v) = (a.apply1(op, x), a.apply1(op, y));
                    if uf.union(u, v) {
                        pending.push((u, v));
                    }
                }
                2 => {
                    for z in 0..n {
                        let (u, v) = (a.apply2(op, x, z), a.apply2(op, y, z));
                        if uf.union(u, v) {
                            pending.push((u, v));
                        }
                        let (u, v) = (a.apply2(op, z, x), a.apply2(op, z, y));
                        if uf.union(u, v) {
                            pending.push((u, v));
                        }
                    }
                }
                _ => {
                    for pos in 0..k {
                        for_each_tuple(n, k - 1, |rest| {
                            args_x.clear();
                            args_x.extend_from_slice(&rest[..pos]);
                            args_x.push(x);
                            args_x.extend_from_slice(&rest[pos..]);
                            args_y.clear();
                            args_y.extend_from_slice(&args_x);
                            args_y[pos] = y;
                            let (u, v) = (a.apply(op, &args_x), a.apply(op, &args_y));
                            if uf.union(u, v) {
                                pending.push((u, v));
                            }
                        });
                    }
                }
            }
        }
    }
}

/// Congruence generated by a set of pairs.
pub fn generated_congruence(a: &FiniteAlgebra, pairs: &[(Elem, Elem)]) -> Congruence {
    let mut uf = UnionFind::new(a.size());
    let pending: Vec<(Elem, Elem)> = pairs.iter().copied().filter(|&(x, y)| uf.union(x, y)).collect();
    close(a, &mut uf, pending);
    uf.to_congruence()
}

pub fn principal_congruence(a: &FiniteAlgebra, x: Elem, y: Elem) -> Congruence {
    generated_congruence(a, &[(x, y)])
}

/// A finite congruence lattice as an explicit list, sorted by number of
/// blocks and then by block string.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    size: usize,
    congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    fn new(size: usize, set: HashSet<Congruence>) -> Self {
        let mut congruences: Vec<Congruence> = set.into_iter().collect();
        congruences.sort_by_cached_key(|c| (c.num_blocks(), c.block_string()));
        CongruenceLattice { size, congruences }
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.congruences.contains(c)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Congruence::identity(self.size))
    }

    /// Members with a nontrivial quotient.
    pub fn proper(&self) -> impl Iterator<Item = &Congruence> {
        self.congruences.iter().filter(|c| !c.is_total())
    }

    /// Maximal members below the total relation.
    pub fn coatoms(&self) -> Vec<&Congruence> {
        let proper: Vec<&Congruence> = self.proper().collect();
        proper
            .iter()
            .filter(|c| !proper.iter().any(|d| d != *c && c.refines(d)))
            .copied()
            .collect()
    }

    /// Completely meet-irreducible members: those whose quotient is
    /// subdirectly irreducible (relative to the lattice).
    pub fn completely_meet_irreducible(&self) -> Vec<&Congruence> {
        let n = self.size;
        self.proper()
            .filter(|c| {
                let cover = self
                    .congruences
                    .iter()
                    .filter(|d| *d != *c && c.refines(d))
                    .fold(Congruence::total(n), |acc, d| acc.meet(d));
                cover != **c
            })
            .collect()
    }

    /// Subdirect irreducibility of the identity inside this lattice.
    pub fn si_status(&self) -> SiStatus {
        let n = self.size;
        if n <= 1 || !self.contains_identity() {
            return SiStatus::None;
        }
        let id = Congruence::identity(n);
        let above: Vec<&Congruence> = self.congruences.iter().filter(|c| **c != id).collect();
        if above.len() == 1 && above[0].is_total() {
            return SiStatus::Simple;
        }
        let monolith = above
            .iter()
            .fold(Congruence::total(n), |acc, c| acc.meet(c));
        if monolith != id {
            return SiStatus::Si;
        }
        for (i, c) in above.iter().enumerate() {
            for d in &above[i + 1..] {
                if c.meet(d) == id {
                    return SiStatus::None;
                }
            }
        }
        SiStatus::Fsi
    }
}

/// Strongest irreducibility property of the identity congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SiStatus {
    None,
    /// Finitely subdirectly irreducible.
    Fsi,
    /// Subdirectly irreducible.
    Si,
    Simple,
}

impl SiStatus {
    pub fn is_fsi(self) -> bool {
        self >= SiStatus::Fsi
    }

    pub fn is_si(self) -> bool {
        self >= SiStatus::Si
    }
}

pub fn all_congruences(a: &FiniteAlgebra, limits: &Limits) -> Result<CongruenceLattice> {
    limits.check_congruences(a.size())?;
    let n = a.size();
    let pairs: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let principals: Vec<Congruence> = pairs
        .par_iter()
        .map(|&(x, y)| principal_congruence(a, x, y))
        .collect();
    let mut unique: Vec<Congruence> = Vec::new();
    let mut seen: HashSet<Congruence> = HashSet::new();
    for p in principals {
        if seen.insert(p.clone()) {
            unique.push(p);
        }
    }
    let mut all: HashSet<Congruence> = seen.clone();
    all.insert(Congruence::identity(n));
    let mut queue: Vec<Congruence> = unique.clone();
    while let Some(c) = queue.pop() {
        for p in &unique {
            if p.refines(&c) {
                continue;
            }
            let j = c.join(p, a);
            if all.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    Ok(CongruenceLattice::new(n, all))
}

/// Congruences whose quotient lies in the quasivariety generated by
/// `gens`: intersections of kernels of homomorphisms into generators,
/// together with the total relation.
pub fn relative_congruences(a: &FiniteAlgebra, gens: &[FiniteAlgebra]) -> Result<CongruenceLattice> {
    let n = a.size();
    let mut kernels: HashSet<Congruence> = HashSet::new();
    for g in gens {
        a.require_same_signature(g)?;
        morphisms::for_each_hom(a, g, &morphisms::SearchOptions::default(), |h| {
            kernels.insert(Congruence::kernel(h));
            std::ops::ControlFlow::Continue(())
        })?;
    }
    let base: Vec<Congruence> = kernels.iter().cloned().collect();
    let mut all = kernels;
    all.insert(Congruence::total(n));
    let mut queue: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(c) = queue.pop() {
        for k in &base {
            let m = c.meet(k);
            if all.insert(m.clone()) {
                queue.push(m);
            }
        }
    }
    Ok(CongruenceLattice::new(n, all))
}

/// Absolute status with `gens = None`, relative to `Q(gens)` otherwise.
pub fn si_status(a: &FiniteAlgebra, gens: Option<&[FiniteAlgebra]>, limits: &Limits) -> Result<SiStatus> {
    let lattice = match gens {
        None => all_congruences(a, limits)?,
        Some(g) => relative_congruences(a, g)?,
    };
    Ok(lattice.si_status())
}

/// Quotient by the least maximal proper relative congruence.
pub fn relatively_simple_image(
    a: &FiniteAlgebra,
    gens: &[FiniteAlgebra],
) -> Result<(FiniteAlgebra, Vec<Elem>)> {
    if a.is_trivial() {
        return Err(precondition("a trivial algebra has no relatively simple image"));
    }
    let lattice = relative_congruences(a, gens)?;
    if !lattice.contains_identity() {
        return Err(precondition("the algebra is not in the generated quasivariety"));
    }
    let theta = lattice.coatoms()[0].clone();
    quotient(a, &theta)
}
