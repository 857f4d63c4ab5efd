use crate::error::{Error, Result};

/// Size guards shared by every exponential procedure.
///
/// Exceeding a guard is always an error, never a silent truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra whose subalgebras may be enumerated.
    pub subalgebra_size: usize,
    /// Largest carrier a derived algebra (product, free algebra) may have.
    pub carrier: usize,
    /// Largest algebra whose full congruence lattice may be computed.
    pub congruence_size: usize,
    /// Largest number of variable assignments an exhaustive check may try.
    pub assignments: u128,
    /// Largest number of up-sets a poset may have.
    pub up_sets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subalgebra_size: 24,
            carrier: 4096,
            congruence_size: 1024,
            assignments: 50_000_000,
            up_sets: 1 << 20,
        }
    }
}

impl Limits {
    pub fn with_subalgebra_size(mut self, n: usize) -> Self {
        self.subalgebra_size = n;
        self
    }

    pub fn with_carrier(mut self, n: usize) -> Self {
        self.carrier = n;
        self
    }

    pub(crate) fn check(what: &'static str, needed: u128, limit: u128) -> Result<()> {
        if needed > limit {
            Err(Error::GuardExceeded { what, needed, limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_carrier(&self, what: &'static str, needed: u128) -> Result<()> {
        Self::check(what, needed, self.carrier as u128)
    }

    pub(crate) fn check_subalgebras(&self, size: usize) -> Result<()> {
        Self::check(
            "subalgebra enumeration",
            size as u128,
            self.subalgebra_size as u128,
        )
    }

    pub(crate) fn check_congruences(&self, size: usize) -> Result<()> {
        Self::check(
            "congruence lattice",
            size as u128,
            self.congruence_size as u128,
        )
    }

    pub(crate) fn check_assignments(&self, needed: u128) -> Result<()> {
        Self::check("exhaustive assignment", needed, self.assignments)
    }
}

/// `base^exp`, saturating.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
