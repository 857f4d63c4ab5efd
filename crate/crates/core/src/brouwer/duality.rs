use std::fmt::Write as _;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::demorgan::{brouwer_signature, brouwer_violation};
use crate::error::{precondition, Error, Result};
use crate::limits::Limits;
use crate::morphisms::is_homomorphism;

use super::{bits, DominatedPoset, PMorphism, Poset};

/// Non-empty up-sets of `x`, in increasing order of their masks.
pub fn up_sets(x: &Poset, limits: &Limits) -> Result<Vec<u64>> {
    // a point is decided only after everything strictly above it
    let mut order: Vec<usize> = (0..x.size()).collect();
    order.sort_by_key(|&p| x.up(p).count_ones());
    let mut out = Vec::new();
    fn go(x: &Poset, order: &[usize], i: usize, set: u64, out: &mut Vec<u64>, limit: usize) -> Result<()> {
        if i == order.len() {
            if set != 0 {
                if out.len() == limit {
                    return Err(Error::GuardExceeded {
                        what: "up-set enumeration",
                        needed: limit as u128 + 1,
                        limit: limit as u128,
                    });
                }
                out.push(set);
            }
            return Ok(());
        }
        let p = order[i];
        go(x, order, i + 1, set, out, limit)?;
        if x.up(p) & !(set | 1 << p) == 0 {
            go(x, order, i + 1, set | 1 << p, out, limit)?;
        }
        Ok(())
    }
    go(x, &order, 0, 0, &mut out, limits.up_sets)?;
    out.sort_unstable();
    Ok(out)
}

/// `Up(X)` with the up-set behind each element.
#[derive(Clone, Debug)]
pub struct UpSetAlgebra {
    pub algebra: FiniteAlgebra,
    /// `masks[i]` is the up-set of element `i`, increasing.
    pub masks: Vec<u64>,
    pub poset: DominatedPoset,
}

impl UpSetAlgebra {
    pub fn element_of(&self, mask: u64) -> Option<Elem> {
        self.masks.binary_search(&mask).ok()
    }
}

fn set_label(x: &Poset, set: u64) -> String {
    let mut s = String::from("{");
    for (i, p) in bits(set).enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}", x.label(p));
    }
    s.push('}');
    s
}

/// The Brouwerian algebra of non-empty up-sets: `∩`, `∪`, `e = X` and
/// `U → V = X \ ↓(U \ V)`.
pub fn up_algebra(x: &DominatedPoset, limits: &Limits) -> Result<UpSetAlgebra> {
    let masks = up_sets(x, limits)?;
    limits.check_carrier("up-set algebra", masks.len() as u128)?;
    let all = x.all();
    let index = |m: u64| masks.binary_search(&m).expect("up-sets are closed under the operations");
    let sig = brouwer_signature().clone();
    let (imp, meet, join, e) = (0, 1, 2, 3);
    let algebra = FiniteAlgebra::from_fn(sig, masks.len(), |op, args| {
        let u = |i: usize| masks[args[i]];
        match op {
            o if o == imp => index(all & !x.down_of(u(0) & !u(1))),
            o if o == meet => index(u(0) & u(1)),
            o if o == join => index(u(0) | u(1)),
            o if o == e => index(all),
            _ => unreachable!(),
        }
    })?
    .with_names(masks.iter().map(|&m| set_label(x, m)).collect())?;
    Ok(UpSetAlgebra {
        algebra,
        masks,
        poset: x.clone(),
    })
}

/// The prime filters of a finite Brouwerian algebra, the algebra itself
/// included, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct PrimeFilters {
    pub poset: DominatedPoset,
    /// Point `i` is the filter `↑generators[i]`.
    pub generators: Vec<Elem>,
    pub members: Vec<Vec<bool>>,
}

impl PrimeFilters {
    pub fn point_of(&self, filter: &[bool]) -> Option<usize> {
        self.members.iter().position(|m| m.as_slice() == filter)
    }
}

/// Every filter of a finite lattice is principal, so the prime filters are
/// the `↑a` whose complement is closed under joins.
pub fn prime_filters(a: &FiniteAlgebra) -> Result<PrimeFilters> {
    if let Some(f) = brouwer_violation(a)? {
        return Err(Error::Axiom {
            kind: "Brouwerian algebra",
            axiom: f.axiom.into(),
        });
    }
    let meet = a.op("meet")?;
    let join = a.op("join")?;
    let n = a.size();
    let leq = |x: Elem, y: Elem| a.apply2(meet, x, y) == x;
    let mut generators = Vec::new();
    let mut members = Vec::new();
    for g in 0..n {
        let f: Vec<bool> = (0..n).map(|x| leq(g, x)).collect();
        let prime = (0..n).all(|x| f[x] || (0..n).all(|y| f[y] || !f[a.apply2(join, x, y)]));
        if prime {
            generators.push(g);
            members.push(f);
        }
    }
    let subset = |p: &Vec<bool>, q: &Vec<bool>| p.iter().zip(q).all(|(&x, &y)| !x || y);
    let poset = Poset::from_leq(members.len(), |i, j| subset(&members[i], &members[j]))?
        .with_names(generators.iter().map(|&g| format!("^{}", a.label(g))).collect())?;
    Ok(PrimeFilters {
        poset: DominatedPoset::new(poset)?,
        generators,
        members,
    })
}

/// `h⁻¹[·]` on prime filters: the p-morphism `B_* → A_*` of a homomorphism
/// `h: A → B`.
pub fn dual_of_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[Elem]) -> Result<PMorphism> {
    if !is_homomorphism(a, b, h) {
        return Err(precondition("the map is not a homomorphism"));
    }
    let pa = prime_filters(a)?;
    let pb = prime_filters(b)?;
    let map = pb
        .members
        .iter()
        .map(|q| {
            let pre: Vec<bool> = h.iter().map(|&y| q[y]).collect();
            pa.point_of(&pre)
                .ok_or_else(|| precondition("preimage of a prime filter is not prime"))
        })
        .collect::<Result<Vec<_>>>()?;
    PMorphism::new(pb.poset, pa.poset, map)
}

/// The homomorphism `Up(Y) → Up(X)`, `V ↦ g⁻¹[V]`, of a p-morphism
/// `g: X → Y`.
#[derive(Clone, Debug)]
pub struct DualHom {
    pub source: UpSetAlgebra,
    pub target: UpSetAlgebra,
    pub map: Vec<Elem>,
}

pub fn dual_of_pmorphism(g: &PMorphism, limits: &Limits) -> Result<DualHom> {
    let source = up_algebra(&g.cod, limits)?;
    let target = up_algebra(&g.dom, limits)?;
    let map = source
        .masks
        .iter()
        .map(|&v| {
            let pre = (0..g.dom.size())
                .filter(|&x| v >> g.map[x] & 1 == 1)
                .fold(0u64, |m, x| m | 1 << x);
            target.element_of(pre).expect("preimages of up-sets are up-sets")
        })
        .collect();
    Ok(DualHom { source, target, map })
}
