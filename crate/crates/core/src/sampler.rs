//! Sources of random index draws.
//!
//! The recovery algorithms ask for "count distinct indices from this pool"
//! and nothing else, so the draw source is a trait: seeded RNG sampling for
//! experiments, scripted draws for replaying a known run step by step.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Draws `count` distinct elements of `pool`, returned in ascending order.
pub trait Sampler {
    fn sample_distinct(&mut self, pool: &[usize], count: usize) -> Result<Vec<usize>>;
}

/// Uniform sampling without replacement from a seeded generator.
#[derive(Debug, Clone)]
pub struct RngSampler {
    rng: ChaCha8Rng,
}

impl RngSampler {
    pub fn from_seed(seed: u64) -> Self {
        RngSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Sampler for RngSampler {
    fn sample_distinct(&mut self, pool: &[usize], count: usize) -> Result<Vec<usize>> {
        if count > pool.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot draw {count} distinct indices from a pool of {}",
                pool.len()
            )));
        }
        let mut picks: Vec<usize> = rand::seq::index::sample(&mut self.rng, pool.len(), count)
            .iter()
            .map(|i| pool[i])
            .collect();
        picks.sort_unstable();
        Ok(picks)
    }
}

/// Replays a fixed sequence of draws, verifying each against the request.
///
/// Each scripted draw must have exactly the requested size and lie inside
/// the candidate pool, so a script that drifts out of sync with the
/// algorithm fails loudly instead of producing a nonsense run.
#[derive(Debug, Clone)]
pub struct ScriptedSampler {
    draws: VecDeque<Vec<usize>>,
}

impl ScriptedSampler {
    pub fn new<I>(draws: I) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        ScriptedSampler {
            draws: draws.into_iter().collect(),
        }
    }

    pub fn remaining(&self) -> usize {
        self.draws.len()
    }
}

impl Sampler for ScriptedSampler {
    fn sample_distinct(&mut self, pool: &[usize], count: usize) -> Result<Vec<usize>> {
        let mut draw = self.draws.pop_front().ok_or(Error::ScriptExhausted)?;
        draw.sort_unstable();
        let in_pool = draw.iter().all(|i| pool.contains(i));
        let distinct = draw.windows(2).all(|w| w[0] != w[1]);
        if draw.len() != count || !in_pool || !distinct {
            return Err(Error::ScriptMismatch { draw, count });
        }
        Ok(draw)
    }
}
