use serde::Serialize;

use crate::error::{precondition, Result};
use crate::limits::Limits;

use super::{bits, up_sets, DominatedPoset, Poset};

/// An isotone map `g` with `↑g(x) = g[↑x]` for every `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMorphism {
    pub dom: DominatedPoset,
    pub cod: DominatedPoset,
    pub map: Vec<usize>,
}

fn image(map: &[usize], set: u64) -> u64 {
    bits(set).fold(0, |m, x| m | 1 << map[x])
}

pub fn is_pmorphism(dom: &Poset, cod: &Poset, map: &[usize]) -> bool {
    map.len() == dom.size()
        && map.iter().all(|&y| y < cod.size())
        && (0..dom.size()).all(|x| cod.up(map[x]) == image(map, dom.up(x)))
}

impl PMorphism {
    pub fn new(dom: DominatedPoset, cod: DominatedPoset, map: Vec<usize>) -> Result<PMorphism> {
        if !is_pmorphism(&dom, &cod, &map) {
            return Err(precondition("the map is not a p-morphism"));
        }
        Ok(PMorphism { dom, cod, map })
    }

    pub fn identity(x: &DominatedPoset) -> PMorphism {
        PMorphism {
            dom: x.clone(),
            cod: x.clone(),
            map: (0..x.size()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PMorphism) -> Result<PMorphism> {
        if self.cod.size() != other.dom.size() {
            return Err(precondition("the maps do not compose"));
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        PMorphism::new(self.dom.clone(), other.cod.clone(), map)
    }

    pub fn is_surjective(&self) -> bool {
        image(&self.map, self.dom.all()) == self.cod.all()
    }

    pub fn is_injective(&self) -> bool {
        image(&self.map, self.dom.all()).count_ones() as usize == self.dom.size()
    }
}

/// Backtracking search for a p-morphism `dom → cod`. Points are assigned
/// after everything strictly above them, so the condition
/// `↑g(x) = {g(x)} ∪ g[↑x \ {x}]` can be checked exactly when `x` is
/// placed. Candidates are tried in increasing order, so the answer is the
/// least one in that order.
pub fn find_pmorphism(dom: &Poset, cod: &Poset, surjective: bool, injective: bool) -> Option<Vec<usize>> {
    if (surjective && dom.size() < cod.size()) || (injective && dom.size() > cod.size()) {
        return None;
    }
    let mut order: Vec<usize> = (0..dom.size()).collect();
    order.sort_by_key(|&p| dom.up(p).count_ones());
    let mut map = vec![usize::MAX; dom.size()];

    struct Search<'a> {
        dom: &'a Poset,
        cod: &'a Poset,
        order: Vec<usize>,
        surjective: bool,
        injective: bool,
    }

    fn go(s: &Search<'_>, i: usize, map: &mut [usize], used: u64) -> bool {
        if s.surjective {
            let missing = (s.cod.all() & !used).count_ones() as usize;
            if missing > s.order.len() - i {
                return false;
            }
        }
        if i == s.order.len() {
            return true;
        }
        let x = s.order[i];
        let above = image(map, s.dom.up(x) & !(1 << x));
        for y in 0..s.cod.size() {
            if s.injective && used >> y & 1 == 1 {
                continue;
            }
            if s.cod.up(y) != above | 1 << y {
                continue;
            }
            map[x] = y;
            if go(s, i + 1, map, used | 1 << y) {
                return true;
            }
        }
        map[x] = usize::MAX;
        false
    }

    let s = Search {
        dom,
        cod,
        order,
        surjective,
        injective,
    };
    go(&s, 0, &mut map, 0).then_some(map)
}

pub fn surjective_pmorphism_exists(u: &Poset, y: &Poset) -> Option<Vec<usize>> {
    find_pmorphism(u, y, true, false)
}

/// An order isomorphism. A bijective p-morphism is one.
pub fn poset_isomorphism(x: &Poset, y: &Poset) -> Option<Vec<usize>> {
    if x.size() != y.size() {
        return None;
    }
    find_pmorphism(x, y, true, true)
}

/// An up-set `U` of `Z` (its points, increasing) with a surjective
/// p-morphism `U → Y` (`map[i]` is the image of `up_set[i]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShWitness {
    pub up_set: Vec<usize>,
    pub map: Vec<usize>,
}

/// The dual form of `Y* ∈ SH(Z*)`: some non-empty up-set of `Z` maps onto
/// `Y` by a p-morphism.
pub fn sh_membership_dual(y: &DominatedPoset, z: &DominatedPoset, limits: &Limits) -> Result<Option<ShWitness>> {
    let depth = y.depth();
    for u in up_sets(z, limits)? {
        if (u.count_ones() as usize) < y.size() {
            continue;
        }
        let (sub, inclusion) = z.up_set(u)?;
        // p-morphisms never raise depth, and onto maps reach every depth
        if sub.depth() < depth {
            continue;
        }
        if let Some(map) = surjective_pmorphism_exists(&sub, y) {
            return Ok(Some(ShWitness { up_set: inclusion, map }));
        }
    }
    Ok(None)
}
