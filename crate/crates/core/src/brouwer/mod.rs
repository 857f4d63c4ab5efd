//! Finite posets and the duality between finite Brouwerian algebras and
//! finite dominated posets.
//!
//! Points are `0..n`; a set of points is a `u64` bitmask. Posets have at
//! most 30 points.

mod duality;
mod lattice;
mod pmorphism;

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub use duality::{dual_of_hom, dual_of_pmorphism, prime_filters, up_algebra, up_sets, DualHom, PrimeFilters, UpSetAlgebra};
pub use lattice::{brouwerian_from_order, heyting_chain, heyting_from_order, heyting_square_plus_top};
pub use pmorphism::{
    find_pmorphism, is_pmorphism, poset_isomorphism, sh_membership_dual, surjective_pmorphism_exists, PMorphism, ShWitness,
};

pub const MAX_POINTS: usize = 30;

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A finite partial order. `up[x]` is the mask of `↑x`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<u64>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        write!(f, "Poset({}; {})", self.size(), pairs.join(" "))
    }
}

impl Poset {
    /// From a `≤` test, which must be reflexive, antisymmetric and
    /// transitive.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::InvalidPoset(format!("{n} points (allowed 1..={MAX_POINTS})")));
        }
        let up: Vec<u64> = (0..n)
            .map(|x| (0..n).filter(|&y| leq(x, y)).fold(0u64, |m, y| m | 1 << y))
            .collect();
        for x in 0..n {
            if up[x] >> x & 1 == 0 {
                return Err(Error::InvalidPoset(format!("not reflexive at {x}")));
            }
            for y in bits(up[x]) {
                if y != x && up[y] >> x & 1 == 1 {
                    return Err(Error::InvalidPoset(format!("not antisymmetric at {x}, {y}")));
                }
                if up[y] & !up[x] != 0 {
                    return Err(Error::InvalidPoset(format!("not transitive above {x} through {y}")));
                }
            }
        }
        Ok(Poset { up, names: None })
    }

    /// From the full relation as `(x, y)` pairs meaning `x ≤ y`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
            return Err(Error::InvalidPoset(format!("pair ({x}, {y}) outside 0..{n}")));
        }
        let mut rel = vec![vec![false; n]; n];
        for &(x, y) in pairs {
            rel[x][y] = true;
        }
        Poset::from_leq(n, |x, y| rel[x][y])
    }

    /// The order generated by `x < y` for the given pairs (reflexive and
    /// transitive closure).
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::InvalidPoset(format!("{n} points (allowed 1..={MAX_POINTS})")));
        }
        let mut up: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::InvalidPoset(format!("pair ({x}, {y}) outside 0..{n}")));
            }
            up[x] |= 1 << y;
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let closed = bits(up[x]).fold(up[x], |m, y| m | up[y]);
                if closed != up[x] {
                    up[x] = closed;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Poset::from_leq(n, |x, y| up[x] >> y & 1 == 1)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.size() {
            return Err(Error::InvalidPoset(format!("{} names for {} points", names.len(), self.size())));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn all(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    /// `↑x`.
    pub fn up(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// `↓x`.
    pub fn down(&self, x: usize) -> u64 {
        (0..self.size()).filter(|&y| self.leq(y, x)).fold(0, |m, y| m | 1 << y)
    }

    pub fn up_of(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, x| m | self.up[x])
    }

    pub fn down_of(&self, set: u64) -> u64 {
        (0..self.size())
            .filter(|&y| self.up[y] & set != 0)
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn is_up_set(&self, set: u64) -> bool {
        self.up_of(set) == set
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.size()).find(|&x| self.down(x) == self.all())
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size()).find(|&x| self.up[x] == self.all())
    }

    /// Upper covers of `x`.
    pub fn covers(&self, x: usize) -> Vec<usize> {
        let strict = self.up[x] & !(1 << x);
        bits(strict)
            .filter(|&y| bits(strict).all(|z| z == y || !self.leq(z, y)))
            .collect()
    }

    /// All `(x, y)` with `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|x| bits(self.up[x] & !(1 << x)).map(move |y| (x, y)))
            .collect()
    }

    /// The full relation as `(x, y)` pairs with `x ≤ y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size()).flat_map(|x| bits(self.up[x]).map(move |y| (x, y))).collect()
    }

    /// The induced order on a set of points, in increasing order, and the
    /// inclusion map.
    pub fn subposet(&self, set: u64) -> Result<(Poset, Vec<usize>)> {
        let inclusion: Vec<usize> = bits(set).collect();
        let p = Poset::from_leq(inclusion.len(), |x, y| self.leq(inclusion[x], inclusion[y]))?;
        let p = match &self.names {
            Some(n) => p.with_names(inclusion.iter().map(|&x| n[x].clone()).collect())?,
            None => p,
        };
        Ok((p, inclusion))
    }

    /// Depth of every point: the longest chain above it, counted in steps.
    pub fn depths(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&x| self.up[x].count_ones());
        let mut d = vec![0; self.size()];
        for x in order {
            d[x] = bits(self.up[x] & !(1 << x)).map(|y| d[y] + 1).max().unwrap_or(0);
        }
        d
    }
}

/// A poset with a greatest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatedPoset {
    poset: Poset,
    top: usize,
}

impl Deref for DominatedPoset {
    type Target = Poset;
    fn deref(&self) -> &Poset {
        &self.poset
    }
}

impl DominatedPoset {
    pub fn new(poset: Poset) -> Result<DominatedPoset> {
        let top = poset
            .maximum()
            .ok_or_else(|| Error::InvalidPoset("no greatest element".into()))?;
        Ok(DominatedPoset { poset, top })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Has a least element as well.
    pub fn is_bounded(&self) -> bool {
        self.minimum().is_some()
    }

    pub fn element_depth(&self, x: usize) -> usize {
        self.depths()[x]
    }

    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// The up-set `set` as a dominated poset of its own.
    pub fn up_set(&self, set: u64) -> Result<(DominatedPoset, Vec<usize>)> {
        if set == 0 || !self.is_up_set(set) {
            return Err(Error::InvalidPoset("not a non-empty up-set".into()));
        }
        let (p, inc) = self.subposet(set)?;
        Ok((DominatedPoset::new(p)?, inc))
    }
}

fn named(p: Poset, names: &[&str]) -> DominatedPoset {
    DominatedPoset::new(p.with_names(names.iter().map(|s| s.to_string()).collect()).expect("names"))
        .expect("dominated")
}

/// A chain of `n` points, `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> Result<DominatedPoset> {
    DominatedPoset::new(Poset::from_leq(n, |x, y| x <= y)?)
}

/// `0 < a, b, c < 1 < ⊤`.
pub fn p6() -> DominatedPoset {
    let covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5)];
    named(Poset::from_covers(6, &covers).expect("order"), &["0", "a", "b", "c", "1", "top"])
}

/// The least element, the atoms, the co-atoms and the greatest element of
/// the Boolean lattice of subsets of an `n`-element set, in that order
/// (co-atom `i` misses element `i`). For `n < 3` atoms and co-atoms
/// coincide with other points and the subposet has fewer than `2n + 2`
/// points.
pub fn k_poset(n: usize) -> Result<DominatedPoset> {
    if n == 0 || 2 * n + 2 > MAX_POINTS {
        return Err(Error::InvalidPoset(format!("K_n needs 1 <= n <= {}", (MAX_POINTS - 2) / 2)));
    }
    let full: u64 = (1u64 << n) - 1;
    let mut sets: Vec<(u64, String)> = vec![(0, "0".into())];
    sets.extend((0..n).map(|i| (1u64 << i, format!("a{}", i + 1))));
    sets.extend((0..n).map(|i| (full & !(1u64 << i), format!("c{}", i + 1))));
    sets.push((full, "1".into()));
    let mut seen = Vec::new();
    sets.retain(|(s, _)| {
        let fresh = !seen.contains(s);
        seen.push(*s);
        fresh
    });
    let p = Poset::from_leq(sets.len(), |x, y| sets[x].0 & !sets[y].0 == 0)?;
    DominatedPoset::new(p.with_names(sets.into_iter().map(|(_, l)| l).collect())?)
}

/// Adds a new minimal point below each pair of distinct depth-2 points,
/// covered exactly by the up-set of the pair. New points follow the old
/// ones, ordered by their pair.
pub fn hat(x: &DominatedPoset) -> Result<DominatedPoset> {
    let d = x.depths();
    let two: Vec<usize> = (0..x.size()).filter(|&p| d[p] == 2).collect();
    let mut pairs = Vec::new();
    for (i, &a) in two.iter().enumerate() {
        for &b in &two[i + 1..] {
            pairs.push((a, b));
        }
    }
    let n = x.size();
    let m = n + pairs.len();
    if m > MAX_POINTS {
        return Err(Error::InvalidPoset(format!("the hat would have {m} points")));
    }
    let up_of = |p: usize| -> u64 {
        if p < n {
            x.up(p)
        } else {
            let (a, b) = pairs[p - n];
            (1u64 << p) | x.up(a) | x.up(b)
        }
    };
    let poset = Poset::from_leq(m, |p, q| up_of(p) >> q & 1 == 1)?;
    let names: Vec<String> = (0..n)
        .map(|p| x.label(p))
        .chain(pairs.iter().map(|&(a, b)| format!("e_{}{}", x.label(a), x.label(b))))
        .collect();
    DominatedPoset::new(poset.with_names(names)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p6_shape() {
        let p = p6();
        assert_eq!(p.depth(), 3);
        let d = p.depths();
        assert_eq!((0..6).filter(|&x| d[x] == 3).collect::<Vec<_>>(), vec![0]);
        assert!(p.is_bounded());
        assert_eq!(p.covers(0), vec![1, 2, 3]);
    }

    #[test]
    fn k_posets() {
        let k = k_poset(3).unwrap();
        assert_eq!(k.size(), 8);
        assert_eq!(k.depth(), 3);
        for atom in 1..=3 {
            let coatoms = (4..=6).filter(|&c| k.leq(atom, c)).count();
            assert_eq!(coatoms, 2);
        }
        assert_eq!(k_poset(1).unwrap().size(), 2);
        assert_eq!(k_poset(2).unwrap().size(), 4);
    }

    #[test]
    fn hats() {
        let h = hat(&p6()).unwrap();
        assert_eq!(h.size(), 9);
        assert_eq!(h.label(6), "e_ab");
        assert_eq!(h.covers(6), vec![1, 2]);
        assert_eq!(hat(&k_poset(3).unwrap()).unwrap().size(), 11);
        assert_eq!(hat(&k_poset(4).unwrap()).unwrap().size(), 16);
        let c = chain(3).unwrap();
        assert_eq!(hat(&c).unwrap().pairs(), c.pairs());
    }

    #[test]
    fn bad_orders_rejected() {
        assert!(Poset::from_pairs(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).is_err());
        assert!(Poset::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).is_err());
        assert!(Poset::from_pairs(2, &[(0, 0)]).is_err());
        assert!(DominatedPoset::new(Poset::from_leq(2, |x, y| x == y).unwrap()).is_err());
    }
}
