//! Binary-input AWGN channel with BPSK (`0 -> +1`, `1 -> -1`).

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Channel LLRs are saturated at `±LLR_CLAMP`.
pub const LLR_CLAMP: f64 = 60.0;

/// Noise standard deviation for `Eb/N0` in dB at code rate `rate`.
pub fn snr_to_sigma(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Config(format!("rate {rate} outside (0, 1]")));
    }
    if !ebn0_db.is_finite() {
        return Err(Error::Config(format!("Eb/N0 {ebn0_db} dB is not finite")));
    }
    Ok((2.0 * rate * 10f64.powf(ebn0_db / 10.0)).powf(-0.5))
}

/// LLR `2y/σ²` of a received sample, saturated.
#[inline]
pub fn llr_of(y: f64, sigma: f64) -> f64 {
    (2.0 * y / (sigma * sigma)).clamp(-LLR_CLAMP, LLR_CLAMP)
}

/// Sends `bits` over the channel and returns their LLRs (positive favors 0).
pub fn transmit<R: Rng + ?Sized>(bits: &[u8], sigma: f64, rng: &mut R) -> Vec<f64> {
    bits.iter()
        .map(|&b| {
            let x = if b == 0 { 1.0 } else { -1.0 };
            let z: f64 = rng.sample(StandardNormal);
            llr_of(x + sigma * z, sigma)
        })
        .collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for frame `frame` of stream `stream` under a master seed.
///
/// ChaCha8 keyed by a splitmix64 mix of `(master, stream)`, with the frame
/// index as the ChaCha stream id.
pub fn frame_rng(master: u64, stream: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(master ^ splitmix64(stream)));
    rng.set_stream(frame);
    rng
}
