//! Shared fixtures for the integration suites.
#![allow(dead_code)] // each test binary uses a different subset

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use wedderburn::decomposer::PairSpec;
use wedderburn::gf::FiniteField;
use wedderburn::group::FiniteGroup;
use wedderburn::io;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// The bundled order-1000 example group, built once per test binary.
pub fn g1000() -> FiniteGroup {
    static GROUP: OnceLock<FiniteGroup> = OnceLock::new();
    GROUP
        .get_or_init(|| io::load_group(&data_path("smallgroup_1000_86.json")).expect("bundled group file"))
        .clone()
}

pub fn g1000_pairs(g: &FiniteGroup) -> Vec<PairSpec> {
    io::load_pairs(g, &data_path("smallgroup_1000_86.pairs.json")).expect("bundled pairs file")
}

pub fn field(q: u64) -> Arc<FiniteField> {
    FiniteField::with_cardinality(q as u128).expect("prime power")
}

/// Three semisimple field sizes for a group, preferring small primes and
/// including a proper prime power when the order is odd.
pub fn semisimple_qs(order: usize) -> Vec<u64> {
    let candidates = [2u64, 3, 4, 5, 7, 9, 11, 13, 17];
    candidates
        .into_iter()
        .filter(|&q| {
            let p = match q {
                4 => 2,
                9 => 3,
                q => q,
            };
            order as u64 % p != 0
        })
        .take(3)
        .collect()
}
