use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{precondition, Result};

use super::{dmm_signature, x_construction};

/// Builds a De Morgan monoid from a lattice order given as a `≤` test, a
/// negation, a fusion and the position of `e`. The lattice operations are
/// read off the order.
fn from_order(
    n: usize,
    le: impl Fn(Elem, Elem) -> bool,
    neg: impl Fn(Elem) -> Elem,
    fuse: impl Fn(Elem, Elem) -> Elem,
    e: Elem,
    names: &[&str],
) -> FiniteAlgebra {
    let bound = |x: Elem, y: Elem, upper: bool| {
        let cands: Vec<Elem> = (0..n)
            .filter(|&z| if upper { le(x, z) && le(y, z) } else { le(z, x) && le(z, y) })
            .collect();
        *cands
            .iter()
            .find(|&&z| cands.iter().all(|&w| if upper { le(z, w) } else { le(w, z) }))
            .expect("lattice order")
    };
    FiniteAlgebra::from_fn(dmm_signature().clone(), n, |op, args| match op {
        0 => fuse(args[0], args[1]),
        1 => bound(args[0], args[1], false),
        2 => bound(args[0], args[1], true),
        3 => neg(args[0]),
        _ => e,
    })
    .and_then(|a| a.with_names(names.iter().map(|s| s.to_string()).collect()))
    .expect("catalog tables")
}

/// The two-element Boolean algebra: `f < e`, fusion is meet.
pub fn two() -> FiniteAlgebra {
    from_order(2, |x, y| x <= y, |x| 1 - x, |x, y| x.min(y), 1, &["f", "e"])
}

/// The odd Sugihara chain on `-n..=n`; element `i` is the integer `i - n`.
pub fn sugihara(n: usize) -> FiniteAlgebra {
    let size = 2 * n + 1;
    let val = |i: Elem| i as i64 - n as i64;
    let idx = |v: i64| (v + n as i64) as Elem;
    let names: Vec<String> = (0..size).map(|i| val(i).to_string()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    from_order(
        size,
        |x, y| x <= y,
        |x| size - 1 - x,
        |x, y| {
            let (a, b) = (val(x), val(y));
            let v = if a.abs() != b.abs() {
                if a.abs() > b.abs() {
                    a
                } else {
                    b
                }
            } else {
                a.min(b)
            };
            idx(v)
        },
        n,
        &names,
    )
}

pub fn s3() -> FiniteAlgebra {
    sugihara(1)
}

const C4_NAMES: [&str; 4] = ["~f2", "e", "f", "f2"];

/// Fusion shared by the four-element algebras: the bottom absorbs, `e` is
/// neutral and everything else multiplies to the top.
fn four_fuse(x: Elem, y: Elem) -> Elem {
    match (x, y) {
        (0, _) | (_, 0) => 0,
        (1, z) | (z, 1) => z,
        _ => 3,
    }
}

/// The chain `¬f² < e < f < f²`.
pub fn c4() -> FiniteAlgebra {
    from_order(4, |x, y| x <= y, |x| 3 - x, four_fuse, 1, &C4_NAMES)
}

/// The diamond with `e` and `f` incomparable between `¬f²` and `f²`.
pub fn d4() -> FiniteAlgebra {
    from_order(4, |x, y| x == y || x == 0 || y == 3, |x| 3 - x, four_fuse, 1, &C4_NAMES)
}

pub fn catalog_names() -> &'static [&'static str] {
    &["two", "s3", "s5", "s7", "c4", "d4", "x-trivial", "s<2n+1>"]
}

/// Catalog lookup: `two`, `c4`, `d4`, `x-trivial` and `s1`, `s3`, `s5`, …
pub fn catalog(name: &str) -> Result<FiniteAlgebra> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "two" | "2" => Ok(two()),
        "c4" => Ok(c4()),
        "d4" => Ok(d4()),
        "x-trivial" => x_construction(&FiniteAlgebra::trivial(dmm_signature().clone())),
        _ => {
            let odd = lower
                .strip_prefix('s')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| k % 2 == 1);
            match odd {
                Some(k) => Ok(sugihara(k / 2)),
                None => Err(precondition(format!(
                    "unknown catalog algebra `{name}` (known: {})",
                    catalog_names().join(", ")
                ))),
            }
        }
    }
}
