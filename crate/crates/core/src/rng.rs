//! Seeded random streams.
//!
//! Every simulation owns a [`StreamSet`]: six ChaCha8 generators sharing one
//! 256-bit key and differing only in their ChaCha stream number. The key is
//! expanded from the 64-bit master seed with `SeedableRng::seed_from_u64`
//! (rand_chacha 0.9), and the stream number is the [`Purpose`] discriminant.
//! Because ChaCha streams are disjoint keystreams, drawing from one purpose
//! never moves any other.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RngError {
    #[error("standard deviation must be >= 0, got {0}")]
    NegativeDeviation(f64),
}

/// What a substream is used for. The discriminant is the ChaCha stream id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purpose {
    Init = 0,
    Scheduling = 1,
    Perception = 2,
    Rejection = 3,
    Mortality = 4,
    Replacement = 5,
}

impl Purpose {
    pub const ALL: [Purpose; 6] = [
        Purpose::Init,
        Purpose::Scheduling,
        Purpose::Perception,
        Purpose::Rejection,
        Purpose::Mortality,
        Purpose::Replacement,
    ];
}

/// A single deterministic random stream.
#[derive(Clone, Debug)]
pub struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: u64, purpose: Purpose) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(purpose as u64);
        Stream(rng)
    }

    /// Draw from `[lo, hi)`; `lo == hi` returns `lo`.
    ///
    /// Panics if `lo > hi`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        assert!(lo <= hi, "uniform: empty interval [{lo}, {hi})");
        if lo == hi {
            return lo;
        }
        let v = lo + (hi - lo) * self.0.random::<f64>();
        // the affine map can round up onto `hi`
        if v < hi {
            v
        } else {
            hi.next_down()
        }
    }

    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    pub fn gaussian(&mut self, mean: f64, sd: f64) -> Result<f64, RngError> {
        if sd.is_nan() || sd < 0.0 {
            return Err(RngError::NegativeDeviation(sd));
        }
        Ok(self.normal(mean, sd))
    }

    /// Infallible form for deviations already known to be non-negative.
    /// A zero deviation returns `mean` without consuming a draw.
    #[inline]
    pub(crate) fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        if sd == 0.0 {
            return mean;
        }
        let z: f64 = self.0.sample(StandardNormal);
        mean + sd * z
    }

    /// Uniformly random ordering of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.0);
        order
    }
}

/// The six substreams of one simulation.
#[derive(Clone, Debug)]
pub struct StreamSet {
    pub init: Stream,
    pub scheduling: Stream,
    pub perception: Stream,
    pub rejection: Stream,
    pub mortality: Stream,
    pub replacement: Stream,
}

impl StreamSet {
    pub fn new(seed: u64) -> Self {
        StreamSet {
            init: Stream::new(seed, Purpose::Init),
            scheduling: Stream::new(seed, Purpose::Scheduling),
            perception: Stream::new(seed, Purpose::Perception),
            rejection: Stream::new(seed, Purpose::Rejection),
            mortality: Stream::new(seed, Purpose::Mortality),
            replacement: Stream::new(seed, Purpose::Replacement),
        }
    }

    pub fn get_mut(&mut self, purpose: Purpose) -> &mut Stream {
        match purpose {
            Purpose::Init => &mut self.init,
            Purpose::Scheduling => &mut self.scheduling,
            Purpose::Perception => &mut self.perception,
            Purpose::Rejection => &mut self.rejection,
            Purpose::Mortality => &mut self.mortality,
            Purpose::Replacement => &mut self.replacement,
        }
    }
}

pub fn make_streams(seed: u64) -> StreamSet {
    StreamSet::new(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `rep` in experiment cell `cell`:
/// `splitmix64(splitmix64(splitmix64(master) ^ cell) ^ rep)`.
pub fn derive_seed(master: u64, cell: u64, rep: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ cell) ^ rep)
}
