//! Seed derivation and random stream construction.
//!
//! Every random quantity in the crate is drawn from a [`ChaCha8Rng`]. A
//! pattern generator seeded with `seed` uses stream `0` for global draws and
//! a dedicated stream per lattice site, keyed by the site's integer lattice
//! coordinates, so the realization never depends on iteration order or on
//! how work is split between threads.
//!
//! Replication seeds are derived with [`derive_seed`], a fixed
//! FNV-1a/SplitMix64 construction that is stable across platforms and
//! releases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// Seed for replication `index` of the stage `label` under `master`.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    mix64(mix64(master ^ fnv1a(label.as_bytes())).wrapping_add(mix64(index)))
}

/// `count` consecutive replication seeds for `label`.
pub fn derive_seeds(master: u64, label: &str, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| derive_seed(master, label, i)).collect()
}

/// Main stream for a generator seed.
pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Independent substream for the lattice site with integer coordinates `(i, j)`.
pub fn site_rng(seed: u64, i: i64, j: i64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    // stream 0 is the main stream
    let key = mix64((i as u64).wrapping_mul(0x9e37_79b9) ^ mix64(j as u64)) | 1;
    rng.set_stream(key);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derived_seeds_are_stable_and_distinct() {
        let a = derive_seeds(42, "fig2", 4);
        assert_eq!(a, derive_seeds(42, "fig2", 4));
        assert_ne!(a, derive_seeds(43, "fig2", 4));
        assert_ne!(a, derive_seeds(42, "fig1", 4));
        let mut sorted = a.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
    }

    #[test]
    fn site_streams_do_not_depend_on_order() {
        let x: u64 = site_rng(7, 3, -2).random();
        let _ = site_rng(7, 0, 0).random::<u64>();
        let y: u64 = site_rng(7, 3, -2).random();
        assert_eq!(x, y);
        let z: u64 = site_rng(7, -2, 3).random();
        assert_ne!(x, z);
    }
}
