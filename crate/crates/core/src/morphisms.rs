//! Homomorphism, embedding and retraction search.
//!
//! The search assigns images to a small generating set of the domain, one
//! generator at a time. After each assignment the images of everything the
//! generators produce are computed straight from the codomain's tables and
//! every table entry that became fully determined is checked, so a bad
//! choice is refuted as soon as it is made.

use std::ops::ControlFlow;

use crate::algebra::{for_each_new_tuple, for_each_tuple, quotient, subalgebra_generated, Elem, FiniteAlgebra};
use crate::congruence::all_congruences;
use crate::error::{precondition, Result};
use crate::limits::Limits;

const NONE: usize = usize::MAX;

/// Extra constraints on a homomorphism search.
#[derive(Default, Clone, Copy)]
pub struct SearchOptions<'a> {
    pub injective: bool,
    /// The two elements must get different images.
    pub distinct: Option<(Elem, Elem)>,
    /// `allowed(a, b)`: may `a` be sent to `b`?
    pub allowed: Option<&'a (dyn Fn(Elem, Elem) -> bool + Sync)>,
    /// Generators to use instead of a greedily chosen set.
    pub generators: Option<&'a [Elem]>,
}

struct Level {
    gen: Option<Elem>,
    /// (element, op, args): the element's image is forced by its arguments.
    derived: Vec<(Elem, usize, Vec<Elem>)>,
    /// (op, args, result): entries to verify once everything is assigned.
    checks: Vec<(usize, Vec<Elem>, Elem)>,
}

/// Generator-indexed plan covering every table entry of the domain once.
struct Plan {
    levels: Vec<Level>,
}

impl Plan {
    fn new(a: &FiniteAlgebra, generators: Option<&[Elem]>) -> Plan {
        let n = a.size();
        let mut member = vec![false; n];
        let mut list: Vec<Elem> = Vec::new();
        let mut levels = Vec::new();

        let mut level = Level {
            gen: None,
            derived: Vec::new(),
            checks: Vec::new(),
        };
        for c in a.signature().constants() {
            let v = a.constant(c);
            if member[v] {
                level.checks.push((c, Vec::new(), v));
            } else {
                member[v] = true;
                list.push(v);
                level.derived.push((v, c, Vec::new()));
            }
        }
        extend_level(a, &mut level, &mut member, &mut list, 0);
        levels.push(level);

        let mut explicit = generators.map(|g| g.iter().copied());
        loop {
            if list.len() == n {
                break;
            }
            let g = match explicit.as_mut() {
                Some(it) => match it.find(|&g| !member[g]) {
                    Some(g) => g,
                    None => (0..n).find(|&x| !member[x]).unwrap(),
                },
                None => greedy_next(a, &member, &list),
            };
            let start = list.len();
            member[g] = true;
            list.push(g);
            let mut level = Level {
                gen: Some(g),
                derived: Vec::new(),
                checks: Vec::new(),
            };
            extend_level(a, &mut level, &mut member, &mut list, start);
            levels.push(level);
        }
        Plan { levels }
    }
}

fn greedy_next(a: &FiniteAlgebra, member: &[bool], list: &[Elem]) -> Elem {
    let mut best = (0usize, NONE);
    for x in 0..a.size() {
        if member[x] {
            continue;
        }
        let mut m = member.to_vec();
        let mut l = list.to_vec();
        let start = l.len();
        m[x] = true;
        l.push(x);
        a.close_list(&mut m, &mut l, start);
        if l.len() > best.0 {
            best = (l.len(), x);
            if l.len() == a.size() {
                break;
            }
        }
    }
    best.1
}

/// A generating set chosen greedily (each pick maximizes the closure).
pub fn greedy_generators(a: &FiniteAlgebra) -> Vec<Elem> {
    let n = a.size();
    let mut member = vec![false; n];
    let mut list = Vec::new();
    for c in a.signature().constants() {
        let v = a.constant(c);
        if !member[v] {
            member[v] = true;
            list.push(v);
        }
    }
    a.close_list(&mut member, &mut list, 0);
    let mut gens = Vec::new();
    while list.len() < n {
        let g = greedy_next(a, &member, &list);
        let start = list.len();
        member[g] = true;
        list.push(g);
        a.close_list(&mut member, &mut list, start);
        gens.push(g);
    }
    gens
}

/// Closes `list` from `start`, recording each table entry as a derivation
/// (new element) or a check (known element).
fn extend_level(a: &FiniteAlgebra, level: &mut Level, member: &mut [bool], list: &mut Vec<Elem>, start: usize) {
    let mut p = start;
    while p < list.len() {
        for (op, o) in a.signature().ops().iter().enumerate() {
            if o.arity == 0 {
                continue;
            }
            for_each_new_tuple(p, o.arity, |pos| {
                let args: Vec<Elem> = pos.iter().map(|&i| list[i]).collect();
                let v = a.apply(op, &args);
                if member[v] {
                    level.checks.push((op, args, v));
                } else {
                    member[v] = true;
                    list.push(v);
                    level.derived.push((v, op, args));
                }
            });
        }
        p += 1;
    }
}

/// Bit profile of the one-variable equations an element satisfies:
/// `f(x,…,x) = x` per operation and `x = c` per constant. Homomorphisms can
/// only add bits; embeddings keep them unchanged.
fn profiles(a: &FiniteAlgebra) -> Vec<u64> {
    let sig = a.signature();
    (0..a.size())
        .map(|x| {
            let mut bits = 0u64;
            for (op, o) in sig.ops().iter().enumerate().take(64) {
                let holds = if o.arity == 0 {
                    a.constant(op) == x
                } else {
                    a.apply(op, &vec![x; o.arity]) == x
                };
                if holds {
                    bits |= 1 << op;
                }
            }
            bits
        })
        .collect()
}

/// Isomorphism invariants: profile plus per-operation counts.
fn iso_invariants(a: &FiniteAlgebra) -> Vec<Vec<u64>> {
    let n = a.size();
    let prof = profiles(a);
    let mut inv: Vec<Vec<u64>> = prof.iter().map(|&p| vec![p]).collect();
    for (op, o) in a.signature().ops().iter().enumerate() {
        match o.arity {
            0 => {}
            2 => {
                for x in 0..n {
                    let mut left_fixed = 0;
                    let mut right_fixed = 0;
                    let mut absorbs = 0;
                    let mut image = 0;
                    for y in 0..n {
                        left_fixed += (a.apply2(op, x, y) == x) as u64;
                        right_fixed += (a.apply2(op, y, x) == x) as u64;
                        absorbs += (a.apply2(op, x, y) == y) as u64;
                    }
                    for y in 0..n {
                        for z in 0..n {
                            image += (a.apply2(op, y, z) == x) as u64;
                        }
                    }
                    inv[x].extend([left_fixed, right_fixed, absorbs, image]);
                }
            }
            k => {
                let mut image = vec![0u64; n];
                for_each_tuple(n, k, |args| image[a.apply(op, args)] += 1);
                for x in 0..n {
                    inv[x].push(image[x]);
                }
            }
        }
    }
    inv
}

struct Search<'a> {
    b: &'a FiniteAlgebra,
    plan: Plan,
    opts: SearchOptions<'a>,
    img: Vec<Elem>,
    used: Vec<u32>,
    prof_a: Vec<u64>,
    prof_b: Vec<u64>,
}

impl<'a> Search<'a> {
    fn ok_pair(&self, x: Elem, v: Elem) -> bool {
        if self.prof_a[x] & !self.prof_b[v] != 0 {
            return false;
        }
        if self.opts.injective && (self.used[v] > 0 || self.prof_a[x] != self.prof_b[v]) {
            return false;
        }
        if let Some(f) = self.opts.allowed {
            if !f(x, v) {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, x: Elem, v: Elem) {
        self.img[x] = v;
        self.used[v] += 1;
    }

    fn unassign(&mut self, x: Elem) {
        let v = self.img[x];
        if v != NONE {
            self.used[v] -= 1;
            self.img[x] = NONE;
        }
    }

    /// Fills in a level after its generator (if any) is assigned. Returns
    /// the elements assigned so they can be undone, and whether it worked.
    fn propagate(&mut self, li: usize, assigned: &mut Vec<Elem>) -> bool {
        let mut args_img = Vec::new();
        let level = &self.plan.levels[li];
        for (x, op, args) in &level.derived {
            args_img.clear();
            args_img.extend(args.iter().map(|&y| self.img[y]));
            let v = self.b.apply(*op, &args_img);
            if !self.ok_pair(*x, v) {
                return false;
            }
            self.img[*x] = v;
            self.used[v] += 1;
            assigned.push(*x);
        }
        for (op, args, r) in &level.checks {
            args_img.clear();
            args_img.extend(args.iter().map(|&y| self.img[y]));
            if self.b.apply(*op, &args_img) != self.img[*r] {
                return false;
            }
        }
        if let Some((p, q)) = self.opts.distinct {
            if self.img[p] != NONE && self.img[p] == self.img[q] {
                return false;
            }
        }
        true
    }

    fn run(&mut self, li: usize, visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>) -> ControlFlow<()> {
        if li == self.plan.levels.len() {
            return visit(&self.img);
        }
        let gen = self.plan.levels[li].gen;
        let candidates: Vec<Elem> = match gen {
            None => vec![NONE],
            Some(g) => (0..self.b.size()).filter(|&v| self.ok_pair(g, v)).collect(),
        };
        for v in candidates {
            let mut assigned = Vec::new();
            if let Some(g) = gen {
                self.assign(g, v);
                assigned.push(g);
            }
            let ok = self.propagate(li, &mut assigned);
            let flow = if ok { self.run(li + 1, visit) } else { ControlFlow::Continue(()) };
            for x in assigned {
                self.unassign(x);
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every homomorphism in search order until it breaks.
pub fn for_each_hom(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    opts: &SearchOptions<'_>,
    mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>,
) -> Result<()> {
    a.require_same_signature(b)?;
    if opts.injective && a.size() > b.size() {
        return Ok(());
    }
    let mut s = Search {
        b,
        plan: Plan::new(a, opts.generators),
        opts: *opts,
        img: vec![NONE; a.size()],
        used: vec![0; b.size()],
        prof_a: profiles(a),
        prof_b: profiles(b),
    };
    let _ = s.run(0, &mut visit);
    Ok(())
}

fn first_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, opts: &SearchOptions<'_>) -> Result<Option<Vec<Elem>>> {
    let mut found = None;
    for_each_hom(a, b, opts, |h| {
        found = Some(h.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// All homomorphisms (the first `limit` found, if given), sorted by table.
pub fn enumerate_homs(a: &FiniteAlgebra, b: &FiniteAlgebra, limit: Option<usize>) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for_each_hom(a, b, &SearchOptions::default(), |h| {
        out.push(h.to_vec());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    out.sort();
    Ok(out)
}

pub fn hom_exists(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Elem>>> {
    first_hom(a, b, &SearchOptions::default())
}

pub fn embedding_exists(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Elem>>> {
    first_hom(
        a,
        b,
        &SearchOptions {
            injective: true,
            ..Default::default()
        },
    )
}

pub(crate) fn isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Elem>>> {
    a.require_same_signature(b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let ia = iso_invariants(a);
    let ib = iso_invariants(b);
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let allowed = |x: Elem, y: Elem| ia[x] == ib[y];
    first_hom(
        a,
        b,
        &SearchOptions {
            injective: true,
            allowed: Some(&allowed),
            ..Default::default()
        },
    )
}

/// Exhaustive table scan.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem]) -> bool {
    if !a.same_signature(b) || map.len() != a.size() || map.iter().any(|&v| v >= b.size()) {
        return false;
    }
    let mut ok = true;
    let mut img = Vec::new();
    for (op, o) in a.signature().ops().iter().enumerate() {
        for_each_tuple(a.size(), o.arity, |args| {
            if !ok {
                return;
            }
            img.clear();
            img.extend(args.iter().map(|&x| map[x]));
            ok = map[a.apply(op, args)] == b.apply(op, &img);
        });
    }
    ok
}

pub fn is_embedding(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem]) -> bool {
    let mut seen = vec![false; b.size()];
    is_homomorphism(a, b, map) && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

pub fn is_zero_generated(a: &FiniteAlgebra) -> bool {
    a.signature().has_constants() && a.closure(&[]).iter().all(|&m| m)
}

/// Embedding `g: A → B` and homomorphism `h: B → A` with `h ∘ g = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub embedding: Vec<Elem>,
    pub retraction: Vec<Elem>,
}

pub fn is_retract(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Retraction>> {
    a.require_same_signature(b)?;
    if is_zero_generated(a) {
        // h ∘ g is an endomorphism of a 0-generated algebra, hence the identity
        let Some(g) = hom_exists(a, b)? else { return Ok(None) };
        let Some(h) = hom_exists(b, a)? else { return Ok(None) };
        return Ok(Some(Retraction {
            embedding: g,
            retraction: h,
        }));
    }
    let mut found = None;
    for_each_hom(b, a, &SearchOptions::default(), |h| {
        let mut hit = vec![false; a.size()];
        h.iter().for_each(|&v| hit[v] = true);
        if hit.iter().any(|&m| !m) {
            return ControlFlow::Continue(());
        }
        let allowed = |x: Elem, y: Elem| h[y] == x;
        let opts = SearchOptions {
            allowed: Some(&allowed),
            ..Default::default()
        };
        match first_hom(a, b, &opts) {
            Ok(Some(g)) => {
                found = Some(Retraction {
                    embedding: g,
                    retraction: h.to_vec(),
                });
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    })?;
    Ok(found)
}

/// Elements forming a one-element subalgebra.
pub fn trivial_subalgebra_points(a: &FiniteAlgebra) -> Vec<Elem> {
    let sig = a.signature();
    (0..a.size())
        .filter(|&c| {
            sig.ops().iter().enumerate().all(|(op, o)| {
                if o.arity == 0 {
                    a.constant(op) == c
                } else {
                    a.apply(op, &vec![c; o.arity]) == c
                }
            })
        })
        .collect()
}

pub fn zero_generated_subalgebra(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if !a.signature().has_constants() {
        return Err(precondition("no constants, so no 0-generated subalgebra"));
    }
    Ok(subalgebra_generated(a, &[])?.algebra)
}

/// Outcome of a separation test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Least pair no homomorphism into a generator tells apart.
    pub failing_pair: Option<(Elem, Elem)>,
}

impl Separation {
    pub fn separated(&self) -> bool {
        self.failing_pair.is_none()
    }
}

/// Decides `A ∈ ISP(gens)`: homomorphisms into generators separate points.
///
/// A few homomorphisms are tried first. Pairs still open are then settled
/// through the congruences of `A` that do not identify them: a quotient
/// embedding into a generator gives a homomorphism with that kernel, and if
/// none does the pair cannot be separated. Embedding searches prune far
/// better than plain enumeration when the generators are large.
pub fn separates(a: &FiniteAlgebra, gens: &[FiniteAlgebra]) -> Result<Separation> {
    const SAMPLE: usize = 64;
    let n = a.size();
    let mut open = vec![vec![true; n]; n];
    let mut remaining = n * (n.saturating_sub(1)) / 2;
    let close = |open: &mut Vec<Vec<bool>>, remaining: &mut usize, h: &dyn Fn(Elem) -> usize| {
        for x in 0..n {
            for y in x + 1..n {
                if open[x][y] && h(x) != h(y) {
                    open[x][y] = false;
                    *remaining -= 1;
                }
            }
        }
    };
    for g in gens {
        if remaining == 0 {
            break;
        }
        let mut seen = 0;
        for_each_hom(a, g, &SearchOptions::default(), |h| {
            close(&mut open, &mut remaining, &|x| h[x]);
            seen += 1;
            if remaining == 0 || seen == SAMPLE {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
    }
    let limits = Limits::default();
    if remaining > 0 && n <= limits.congruence_size {
        let lattice = all_congruences(a, &limits)?;
        for theta in lattice.congruences().iter().rev() {
            let useful = (0..n).any(|x| (x + 1..n).any(|y| open[x][y] && !theta.related(x, y)));
            if !useful {
                continue;
            }
            let (q, map) = quotient(a, theta)?;
            for g in gens {
                if embedding_exists(&q, g)?.is_some() {
                    close(&mut open, &mut remaining, &|x| map[x]);
                    break;
                }
            }
            if remaining == 0 {
                break;
            }
        }
    } else if remaining > 0 {
        for g in gens {
            for_each_hom(a, g, &SearchOptions::default(), |h| {
                close(&mut open, &mut remaining, &|x| h[x]);
                if remaining == 0 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
        }
    }
    let failing_pair = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| open[x][y]);
    Ok(Separation { failing_pair })
}

/// A homomorphism into one of `gens` telling `x` and `y` apart.
pub fn separating_hom(
    a: &FiniteAlgebra,
    gens: &[FiniteAlgebra],
    x: Elem,
    y: Elem,
) -> Result<Option<(usize, Vec<Elem>)>> {
    for (i, g) in gens.iter().enumerate() {
        let opts = SearchOptions {
            distinct: Some((x, y)),
            ..Default::default()
        };
        if let Some(h) = first_hom(a, g, &opts)? {
            return Ok(Some((i, h)));
        }
    }
    Ok(None)
}
