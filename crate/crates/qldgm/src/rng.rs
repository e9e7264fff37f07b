//! Counter-based RNG streams.
//!
//! Every consumer derives its own ChaCha stream from the master seed and a
//! logical position (construction domain, or point/trial indices), so the
//! sequence a worker sees never depends on how work is scheduled.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRIAL_TAG: u64 = 1 << 62;
const DOMAIN_TAG: u64 = 2 << 62;

/// Stream for trial `trial` of sweep point `point`.
pub fn trial_rng(master_seed: u64, point: u32, trial: u64) -> ChaCha8Rng {
    debug_assert!(trial < 1 << 40, "trial index exceeds stream space");
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(TRIAL_TAG | (u64::from(point) << 40) | trial);
    rng
}

/// Stream for a non-trial purpose (code construction, tie-breaking draws).
pub fn domain_rng(master_seed: u64, domain: u64) -> ChaCha8Rng {
    debug_assert!(domain < 1 << 40);
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(DOMAIN_TAG | domain);
    rng
}
