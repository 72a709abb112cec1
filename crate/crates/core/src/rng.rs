//! Seeded randomness. Every random draw in the crate goes through a generator built from an
//! explicit [`RandomSeed`]; nothing global.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modular::{Dimension, ModInt};

/// Generator used for Born-rule sampling and random parameters.
pub type SimRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    pub fn rng(self) -> SimRng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent child seed for stream `index` (splitmix64 finalizer).
    pub fn derive(self, index: u64) -> RandomSeed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RandomSeed(z ^ (z >> 31))
    }
}

impl From<u64> for RandomSeed {
    fn from(seed: u64) -> Self {
        RandomSeed(seed)
    }
}

/// Uniform residue in `[0, d)`.
pub fn random_residue<R: Rng + ?Sized>(rng: &mut R, dim: Dimension) -> ModInt {
    ModInt::new(rng.gen_range(0..dim.get()), dim).expect("sampled in range")
}

/// Index drawn from `weights` by inverse CDF. Falls back to the last positive weight when
/// roundoff leaves the cumulative sum just short of the draw.
pub fn sample_index<R: Rng + ?Sized>(rng: &mut R, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_positive = i;
            acc += w;
            if target < acc {
                return i;
            }
        }
    }
    last_positive
}
