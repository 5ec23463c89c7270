//! Seeded randomness shared by the integration suites.
//!
//! Set `COXLIE_SEED` to reproduce or vary a run; each suite derives its own
//! stream from the seed and a fixed tag.

#![allow(dead_code)]

use coxlie::FlagComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

pub fn seed() -> u64 {
    std::env::var("COXLIE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Flag complex on `m` vertices with each edge present with probability 1/2.
pub fn random_complex(rng: &mut ChaCha8Rng, m: usize) -> FlagComplex {
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    FlagComplex::new(m, &edges).expect("valid complex")
}

/// Flag complex with at least one non-edge, so that `RC_K` is not abelian.
pub fn random_nonabelian_complex(rng: &mut ChaCha8Rng, m: usize) -> FlagComplex {
    loop {
        let k = random_complex(rng, m);
        if k.edges().len() < m * (m - 1) / 2 {
            return k;
        }
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, m: usize, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(1..=m) as u8).collect()
}

pub fn random_letters(rng: &mut ChaCha8Rng, m: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..=m)).collect()
}
