use crate::algebra::{Elem, FiniteAlgebra, Signature};
use crate::demorgan::{brouwer_signature, brouwer_violation, heyting_signature};
use crate::error::{Error, Result};

use super::Poset;

fn bound(p: &Poset, x: usize, y: usize, upper: bool) -> Result<usize> {
    let common: Vec<usize> = (0..p.size())
        .filter(|&z| if upper { p.leq(x, z) && p.leq(y, z) } else { p.leq(z, x) && p.leq(z, y) })
        .collect();
    common
        .iter()
        .copied()
        .find(|&b| common.iter().all(|&z| if upper { p.leq(b, z) } else { p.leq(z, b) }))
        .ok_or_else(|| Error::InvalidPoset(format!("{} and {} have no {}", p.label(x), p.label(y), if upper { "join" } else { "meet" })))
}

fn from_order(sig: &std::sync::Arc<Signature>, p: &Poset) -> Result<FiniteAlgebra> {
    let n = p.size();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            meet[x * n + y] = bound(p, x, y, false)?;
            join[x * n + y] = bound(p, x, y, true)?;
        }
    }
    // x → y is the largest z with x ∧ z ≤ y, when there is one
    let mut imp = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let ok: Vec<usize> = (0..n).filter(|&z| p.leq(meet[x * n + z], y)).collect();
            imp[x * n + y] = ok
                .iter()
                .copied()
                .find(|&m| ok.iter().all(|&z| p.leq(z, m)))
                .ok_or_else(|| Error::InvalidPoset("the lattice is not relatively pseudocomplemented".into()))?;
        }
    }
    let top = p.maximum().ok_or_else(|| Error::InvalidPoset("no greatest element".into()))?;
    let bottom = p.minimum();
    let a = FiniteAlgebra::from_fn(sig.clone(), n, |op, args: &[Elem]| match sig.ops()[op].name.as_str() {
        "imp" => imp[args[0] * n + args[1]],
        "meet" => meet[args[0] * n + args[1]],
        "join" => join[args[0] * n + args[1]],
        "e" => top,
        _ => bottom.expect("checked below"),
    });
    let a = match p.names() {
        Some(names) => a?.with_names(names.to_vec())?,
        None => a?,
    };
    if let Some(f) = brouwer_violation(&a)? {
        return Err(Error::Axiom {
            kind: "Brouwerian algebra",
            axiom: f.axiom.into(),
        });
    }
    Ok(a)
}

/// The Brouwerian algebra on a finite distributive lattice given by its
/// order.
pub fn brouwerian_from_order(p: &Poset) -> Result<FiniteAlgebra> {
    from_order(brouwer_signature(), p)
}

/// As [`brouwerian_from_order`], with the least element as `bot`.
pub fn heyting_from_order(p: &Poset) -> Result<FiniteAlgebra> {
    if p.minimum().is_none() {
        return Err(Error::InvalidPoset("no least element".into()));
    }
    from_order(heyting_signature(), p)
}

/// The `n`-element Heyting chain.
pub fn heyting_chain(n: usize) -> Result<FiniteAlgebra> {
    heyting_from_order(&Poset::from_leq(n, |x, y| x <= y)?)
}

/// The four-element Boolean lattice with a new top: `0 < a, b < a∨b < 1`.
pub fn heyting_square_plus_top() -> FiniteAlgebra {
    let p = Poset::from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
        .and_then(|p| p.with_names(["0", "a", "b", "avb", "1"].map(String::from).to_vec()))
        .expect("fixed order");
    heyting_from_order(&p).expect("a Heyting algebra")
}
