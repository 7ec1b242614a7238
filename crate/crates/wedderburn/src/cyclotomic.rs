//! q-cyclotomic classes of `Irr(H/K)` for a cyclic quotient `H/K`.
//!
//! With `k = [H:K]` and a fixed generator of the quotient, irreducible
//! characters are identified with residues mod `k` (the exponent applied to
//! `ξ_k`); the Galois action is multiplication by `q`, and its orbits are
//! the q-cyclotomic classes.  The generator classes `C_q(H/K)` are the
//! orbits consisting of units mod `k`.

use serde::{Deserialize, Serialize};

use crate::arith::gcd_u64;
use crate::gf::GfError;

/// One orbit of residues mod `k` under multiplication by `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicClass {
    /// The modulus `k = [H:K]`.
    pub k: u64,
    /// Sorted orbit members; the representative is the smallest.
    pub exponents: Vec<u64>,
}

impl CyclotomicClass {
    pub fn representative(&self) -> u64 {
        self.exponents[0]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.exponents.binary_search(&(e % self.k)).is_ok()
    }

    /// Whether all members are units mod `k` (they share a gcd with `k`,
    /// so checking the representative suffices).
    pub fn is_generator_class(&self) -> bool {
        self.k == 1 || gcd_u64(self.representative(), self.k) == 1
    }
}

/// Partition of `{0, .., k-1}` into q-cyclotomic classes, ordered by
/// representative.
pub fn cyclotomic_classes(k: u64, q: u128) -> Result<Vec<CyclotomicClass>, GfError> {
    if k == 0 || (k > 1 && gcd_u64((q % k as u128) as u64, k) != 1) {
        return Err(GfError::NotCoprime { q, k });
    }
    if k == 1 {
        return Ok(vec![CyclotomicClass { k: 1, exponents: vec![0] }]);
    }
    let qk = (q % k as u128) as u64;
    let mut seen = vec![false; k as usize];
    let mut classes = Vec::new();
    for start in 0..k {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut e = start;
        while !seen[e as usize] {
            seen[e as usize] = true;
            orbit.push(e);
            e = e * qk % k;
        }
        orbit.sort_unstable();
        classes.push(CyclotomicClass { k, exponents: orbit });
    }
    Ok(classes)
}

/// The classes of `C_q(H/K)`: those containing generators of the character
/// group, i.e. units mod `k`.  For `k = 1` this is the class of the
/// principal character.
pub fn generator_classes(k: u64, q: u128) -> Result<Vec<CyclotomicClass>, GfError> {
    Ok(cyclotomic_classes(k, q)?.into_iter().filter(|c| c.is_generator_class()).collect())
}
