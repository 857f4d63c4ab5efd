//! JSON forms of algebras and posets, and the quasi-equation grammar.
//!
//! ```json
//! {"signature": [{"name": "fuse", "arity": 2}, {"name": "e", "arity": 0}],
//!  "size": 2, "names": ["a", "b"],
//!  "ops": {"fuse": [[0, 1], [1, 1]], "e": 0}}
//! ```
//!
//! Constants are bare indices, unary tables flat lists, binary tables lists
//! of rows, and higher arities nest one level per argument.

mod qe;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{FiniteAlgebra, Operation, Signature};
use crate::brouwer::Poset;
use crate::error::{Error, Result};

pub use qe::{parse_qe, parse_term, Dialect};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub signature: Vec<Operation>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub ops: BTreeMap<String, Value>,
}

fn nest(table: &[u32], n: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(table[0]);
    }
    if arity == 1 {
        return Value::from(table.to_vec());
    }
    let stride = table.len() / n;
    Value::Array((0..n).map(|i| nest(&table[i * stride..(i + 1) * stride], n, arity - 1)).collect())
}

fn flatten(v: &Value, n: usize, arity: usize, name: &str, out: &mut Vec<u32>) -> Result<()> {
    let bad = || Error::InvalidAlgebra(format!("table of `{name}` has the wrong shape"));
    if arity == 0 {
        let x = v.as_u64().ok_or_else(bad)?;
        out.push(u32::try_from(x).map_err(|_| bad())?);
        return Ok(());
    }
    let rows = v.as_array().ok_or_else(bad)?;
    if rows.len() != n {
        return Err(bad());
    }
    for r in rows {
        flatten(r, n, arity - 1, name, out)?;
    }
    Ok(())
}

impl From<&FiniteAlgebra> for AlgebraJson {
    fn from(a: &FiniteAlgebra) -> Self {
        let ops = a
            .signature()
            .ops()
            .iter()
            .enumerate()
            .map(|(i, o)| (o.name.clone(), nest(a.table(i), a.size(), o.arity)))
            .collect();
        AlgebraJson {
            signature: a.signature().ops().to_vec(),
            size: a.size(),
            names: a.names().map(|n| n.to_vec()),
            ops,
        }
    }
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let sig = Signature::new(self.signature.iter().map(|o| (o.name.clone(), o.arity)))?;
        self.build(sig)
    }

    /// Like [`to_algebra`](Self::to_algebra), sharing `sig`, which must be
    /// the declared signature.
    pub fn to_algebra_with(&self, sig: &Arc<Signature>) -> Result<FiniteAlgebra> {
        if sig.ops() != self.signature.as_slice() {
            return Err(Error::SignatureMismatch);
        }
        self.build(sig.clone())
    }

    fn build(&self, sig: Arc<Signature>) -> Result<FiniteAlgebra> {
        if let Some(extra) = self.ops.keys().find(|k| sig.index_of(k).is_none()) {
            return Err(Error::InvalidAlgebra(format!("table for undeclared operation `{extra}`")));
        }
        let mut tables = Vec::with_capacity(sig.len());
        for o in sig.ops() {
            let v = self
                .ops
                .get(&o.name)
                .ok_or_else(|| Error::InvalidAlgebra(format!("no table for `{}`", o.name)))?;
            let mut t = Vec::new();
            flatten(v, self.size, o.arity, &o.name, &mut t)?;
            tables.push(t);
        }
        let a = FiniteAlgebra::from_tables(sig, self.size, tables)?;
        match &self.names {
            Some(n) => a.with_names(n.clone()),
            None => Ok(a),
        }
    }
}

impl Serialize for FiniteAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson::from(self).serialize(s)
    }
}

pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    serde_json::from_str::<AlgebraJson>(text)?.to_algebra()
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from(a)).expect("plain data")
}

/// `{"size": 2, "names": ["0", "1"], "leq": [[0, 0], [0, 1], [1, 1]]}`,
/// the full reflexive relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub leq: Vec<(usize, usize)>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson {
            size: p.size(),
            names: p.names().map(|n| n.to_vec()),
            leq: p.pairs(),
        }
    }
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset> {
        let p = Poset::from_pairs(self.size, &self.leq)?;
        match &self.names {
            Some(n) => p.with_names(n.clone()),
            None => Ok(p),
        }
    }
}

pub fn poset_from_json(text: &str) -> Result<Poset> {
    serde_json::from_str::<PosetJson>(text)?.to_poset()
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetJson::from(p)).expect("plain data")
}
