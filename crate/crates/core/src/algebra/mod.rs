//! Finite algebras stored as operation tables.

mod canon;
mod sub;
pub mod term;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::{precondition, Error, Result};
use crate::limits::{pow_sat, Limits};

pub use sub::{enumerate_subalgebras, subalgebra_generated, Subalgebra};
pub use term::{Assignment, QuasiEquation, Term};

/// Dense element index.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// Ordered list of operation symbols. The order is the canonical one used by
/// every table, serialization and search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<Operation>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Arc<Self>> {
        let ops: Vec<Operation> = ops
            .into_iter()
            .map(|(name, arity)| Operation {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, op) in ops.iter().enumerate() {
            if op.name.is_empty() {
                return Err(Error::InvalidAlgebra("empty operation name".into()));
            }
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::InvalidAlgebra(format!(
                    "operation `{}` declared twice",
                    op.name
                )));
            }
        }
        Ok(Arc::new(Signature { ops }))
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops
            .iter()
            .enumerate()
            .filter(|(_, o)| o.arity == 0)
            .map(|(i, _)| i)
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .map(|o| format!("{}/{}", o.name, o.arity))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A finite algebra: one total table per operation over `0..size`.
///
/// Tables are row-major: the entry for `(a0, …, a_{k-1})` sits at
/// `Σ a_i · n^(k-1-i)`.
#[derive(Clone)]
pub struct FiniteAlgebra {
    sig: Arc<Signature>,
    size: usize,
    names: Option<Vec<String>>,
    tables: Vec<Vec<u32>>,
    canonical: OnceLock<Arc<Vec<u32>>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.sig == other.sig && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("signature", &self.sig.to_string())
            .field("size", &self.size)
            .field("names", &self.names)
            .finish()
    }
}

impl FiniteAlgebra {
    pub fn from_tables(sig: Arc<Signature>, size: usize, tables: Vec<Vec<u32>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("empty carrier".into()));
        }
        if tables.len() != sig.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} operations",
                tables.len(),
                sig.len()
            )));
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            let want = pow_sat(size, op.arity);
            if table.len() as u128 != want {
                return Err(Error::InvalidAlgebra(format!(
                    "table of `{}` has {} entries, expected {}",
                    op.name,
                    table.len(),
                    want
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "table of `{}` mentions element {} outside 0..{}",
                    op.name, bad, size
                )));
            }
        }
        Ok(FiniteAlgebra {
            sig,
            size,
            names: None,
            tables,
            canonical: OnceLock::new(),
        })
    }

    /// Builds every table by calling `f(op_index, args)`.
    pub fn from_fn(
        sig: Arc<Signature>,
        size: usize,
        mut f: impl FnMut(usize, &[Elem]) -> Elem,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(sig.len());
        for (i, op) in sig.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(pow_sat(size, op.arity) as usize);
            for_each_tuple(size, op.arity, |args| table.push(f(i, args) as u32));
            tables.push(table);
        }
        Self::from_tables(sig, size, tables)
    }

    /// The one-element algebra of a signature.
    pub fn trivial(sig: Arc<Signature>) -> Self {
        Self::from_fn(sig, 1, |_, _| 0).expect("trivial algebra")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::InvalidAlgebra(format!(
                "{} names for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, e: Elem) -> String {
        match &self.names {
            Some(n) => n[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn element_named(&self, name: &str) -> Option<Elem> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig
    }

    pub(crate) fn require_same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn table(&self, op: usize) -> &[u32] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    pub fn op(&self, name: &str) -> Result<usize> {
        self.sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownOperation(name.to_string()))
    }

    pub fn apply(&self, op: usize, args: &[Elem]) -> Elem {
        debug_assert_eq!(args.len(), self.sig.arity(op));
        let mut idx = 0usize;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.tables[op][idx] as Elem
    }

    #[inline]
    pub fn apply1(&self, op: usize, a: Elem) -> Elem {
        self.tables[op][a] as Elem
    }

    #[inline]
    pub fn apply2(&self, op: usize, a: Elem, b: Elem) -> Elem {
        self.tables[op][a * self.size + b] as Elem
    }

    pub fn constant(&self, op: usize) -> Elem {
        self.tables[op][0] as Elem
    }

    /// Values of all constants, in signature order.
    pub fn constant_values(&self) -> Vec<Elem> {
        self.sig.constants().map(|c| self.constant(c)).collect()
    }

    /// Tables induced on a subset closed under every operation, elements
    /// renumbered in the order given.
    pub fn induced(&self, members: &[Elem]) -> Result<FiniteAlgebra> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let mut bad = None;
        let mut args = Vec::new();
        let sub = FiniteAlgebra::from_fn(self.sig.clone(), members.len(), |op, local| {
            args.clear();
            args.extend(local.iter().map(|&l| members[l]));
            let v = pos[self.apply(op, &args)];
            if v == usize::MAX {
                bad = Some(op);
                0
            } else {
                v
            }
        })?;
        if let Some(op) = bad {
            return Err(precondition(format!(
                "subset is not closed under `{}`",
                self.sig.ops()[op].name
            )));
        }
        Ok(match &self.names {
            Some(n) => sub.with_names(members.iter().map(|&m| n[m].clone()).collect())?,
            None => sub,
        })
    }

    /// Relabels elements: element `i` of the result is element `order[i]` here.
    pub fn permuted(&self, order: &[Elem]) -> Result<FiniteAlgebra> {
        let mut seen = vec![false; self.size];
        if order.len() != self.size || order.iter().any(|&e| e >= self.size || std::mem::replace(&mut seen[e], true)) {
            return Err(precondition("not a permutation of the carrier"));
        }
        self.induced(order)
    }

    /// Least subuniverse containing `seed` and the constants.
    pub fn closure(&self, seed: &[Elem]) -> Vec<bool> {
        let mut member = vec![false; self.size];
        let mut list = Vec::new();
        for c in self.sig.constants() {
            let v = self.constant(c);
            if !member[v] {
                member[v] = true;
                list.push(v);
            }
        }
        for &s in seed {
            if !member[s] {
                member[s] = true;
                list.push(s);
            }
        }
        self.close_list(&mut member, &mut list, 0);
        member
    }

    /// Semi-naive closure: every tuple over `list` whose largest position is
    /// at least `start` gets evaluated exactly once.
    pub(crate) fn close_list(&self, member: &mut [bool], list: &mut Vec<Elem>, start: usize) {
        let mut p = start;
        let mut args = Vec::new();
        while p < list.len() {
            for (op, o) in self.sig.ops().iter().enumerate() {
                if o.arity == 0 {
                    continue;
                }
                for_each_new_tuple(p, o.arity, |pos| {
                    args.clear();
                    args.extend(pos.iter().map(|&i| list[i]));
                    let v = self.apply(op, &args);
                    if !member[v] {
                        member[v] = true;
                        list.push(v);
                    }
                });
            }
            p += 1;
        }
    }

    /// Canonical serialization: equal for two algebras iff they are isomorphic.
    pub fn canonical_form(&self) -> Arc<Vec<u32>> {
        self.canonical
            .get_or_init(|| Arc::new(canon::canonical_form(self)))
            .clone()
    }

    /// Every element index, rendered as in JSON tables.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }
}

/// Calls `f` on every `k`-tuple over `0..n` in lexicographic order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[Elem])) {
    let mut t = vec![0usize; k];
    if k == 0 {
        f(&t);
        return;
    }
    if n == 0 {
        return;
    }
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Calls `f` on every `k`-tuple over `0..=p` that contains `p`, each once.
pub(crate) fn for_each_new_tuple(p: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; k];
    for j in 0..k {
        // first occurrence of p at position j
        let bound = |i: usize| if i < j { p } else { p + 1 };
        if j > 0 && p == 0 {
            // positions before j must be < 0: impossible
            continue;
        }
        for (i, slot) in t.iter_mut().enumerate() {
            *slot = if i == j { p } else { 0 };
        }
        loop {
            f(&t);
            let mut i = k;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if i == j {
                    continue;
                }
                t[i] += 1;
                if t[i] < bound(i) {
                    break false;
                }
                t[i] = 0;
            };
            if done {
                break;
            }
        }
    }
}

/// Direct product in factor order; elements are tuples in lexicographic
/// order (the first factor is most significant). The empty product is the
/// one-element algebra of `sig`.
pub fn direct_product(
    sig: &Arc<Signature>,
    factors: &[&FiniteAlgebra],
    limits: &Limits,
) -> Result<FiniteAlgebra> {
    for a in factors {
        if a.signature().as_ref() != sig.as_ref() {
            return Err(Error::SignatureMismatch);
        }
    }
    let size: u128 = factors
        .iter()
        .fold(1u128, |acc, a| acc.saturating_mul(a.size() as u128));
    limits.check_carrier("direct product", size)?;
    let size = size as usize;
    let sizes: Vec<usize> = factors.iter().map(|a| a.size()).collect();
    let decode = |mut x: usize, out: &mut Vec<usize>| {
        out.clear();
        out.resize(sizes.len(), 0);
        for i in (0..sizes.len()).rev() {
            out[i] = x % sizes[i];
            x /= sizes[i];
        }
    };
    let mut coords: Vec<Vec<usize>> = Vec::new();
    let mut scratch = Vec::new();
    for x in 0..size {
        decode(x, &mut scratch);
        coords.push(scratch.clone());
    }
    let mut fargs = Vec::new();
    let prod = FiniteAlgebra::from_fn(sig.clone(), size, |op, args| {
        let mut v = 0usize;
        for (i, a) in factors.iter().enumerate() {
            fargs.clear();
            fargs.extend(args.iter().map(|&x| coords[x][i]));
            v = v * sizes[i] + a.apply(op, &fargs);
        }
        v
    })?;
    let names: Option<Vec<String>> = if factors.iter().all(|a| a.names().is_some()) && !factors.is_empty() {
        Some(
            coords
                .iter()
                .map(|c| {
                    let parts: Vec<String> =
                        c.iter().enumerate().map(|(i, &x)| factors[i].label(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect(),
        )
    } else {
        None
    };
    match names {
        Some(n) => prod.with_names(n),
        None => Ok(prod),
    }
}

/// Coordinates of a product element, as produced by [`direct_product`].
pub fn product_coordinates(factors: &[&FiniteAlgebra], mut x: Elem) -> Vec<Elem> {
    let mut out = vec![0; factors.len()];
    for i in (0..factors.len()).rev() {
        out[i] = x % factors[i].size();
        x /= factors[i].size();
    }
    out
}

/// Inverse of [`product_coordinates`].
pub fn product_index(factors: &[&FiniteAlgebra], coords: &[Elem]) -> Elem {
    let mut v = 0;
    for (a, &c) in factors.iter().zip(coords) {
        v = v * a.size() + c;
    }
    v
}

/// Quotient by a congruence; blocks are numbered in order of least member.
/// Returns the quotient and the projection map.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<(FiniteAlgebra, Vec<Elem>)> {
    if theta.len() != a.size() {
        return Err(precondition("partition is over a different carrier"));
    }
    theta.check_compatible(a)?;
    let reps = theta.representatives();
    let proj = theta.blocks().to_vec();
    let mut args = Vec::new();
    let q = FiniteAlgebra::from_fn(a.signature().clone(), reps.len(), |op, local| {
        args.clear();
        args.extend(local.iter().map(|&b| reps[b]));
        proj[a.apply(op, &args)]
    })?;
    let q = match a.names() {
        Some(n) => {
            let labels = (0..reps.len())
                .map(|b| {
                    let members: Vec<&str> = (0..a.size())
                        .filter(|&x| proj[x] == b)
                        .map(|x| n[x].as_str())
                        .collect();
                    if members.len() == 1 {
                        members[0].to_string()
                    } else {
                        format!("[{}]", members.join(","))
                    }
                })
                .collect();
            q.with_names(labels)?
        }
        None => q,
    };
    Ok((q, proj))
}

/// Isomorphism test; returns the first witness bijection in search order.
pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<Elem>>> {
    crate::morphisms::isomorphism(a, b)
}
