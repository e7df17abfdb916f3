//! Monte Carlo estimation of first-error probabilities.

use super::{hard_decision, DecodePath, MetricMode};
use crate::channel::{frame_rng, transmit};
use crate::code::{CodeSpec, ReliabilityProfile};
use crate::polar::transmitted_word;
use rand::Rng;
use rayon::prelude::*;

/// Stream id reserved for profile estimation in [`frame_rng`].
pub const PROFILE_STREAM: u64 = u64::MAX;

const CHUNK: u64 = 1024;

/// Estimates `p_j`, the probability that the first SC error happens at phase `j`.
///
/// Each trial sends a random message and runs genie-aided SC until the first
/// wrong information decision. Information entries are clamped to
/// `[1e-9, 0.5]`; frozen entries are `0`.
pub fn estimate_first_error_probs(
    spec: &CodeSpec,
    sigma: f64,
    trials: u64,
    seed: u64,
    mode: MetricMode,
) -> ReliabilityProfile {
    let len = spec.len();
    let chunks = trials.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; len];
            let mut path = DecodePath::new(spec, mode);
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = frame_rng(seed, PROFILE_STREAM, t);
                let msg: Vec<u8> = (0..spec.dimension()).map(|_| rng.random_range(0..2)).collect();
                let u = spec.u_from_message(&msg).expect("message length");
                let x = transmitted_word(&u).expect("power-of-two length");
                path.load(&transmit(&x, sigma, &mut rng));
                if let Some(pos) = first_error(&mut path, &u) {
                    counts[pos] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let probs = counts
        .iter()
        .enumerate()
        .map(|(pos, &c)| {
            if spec.info_at(pos) {
                (c as f64 / trials.max(1) as f64).clamp(ReliabilityProfile::LOG_CLAMP, 0.5)
            } else {
                0.0
            }
        })
        .collect();
    ReliabilityProfile::new(probs).expect("probabilities in range")
}

fn first_error(path: &mut DecodePath<'_>, u: &[u8]) -> Option<usize> {
    for (pos, &bit) in u.iter().enumerate() {
        let ell = path.next_llr();
        if path.next_is_info() && hard_decision(ell) != bit {
            return Some(pos);
        }
        path.push(bit);
    }
    None
}

/// Raw first-error counts, for tests of the estimator.
#[cfg(test)]
fn raw_probs(spec: &CodeSpec, sigma: f64, trials: u64, seed: u64) -> Vec<f64> {
    let mut counts = vec![0u64; spec.len()];
    let mut path = DecodePath::new(spec, MetricMode::Exact);
    for t in 0..trials {
        let mut rng = frame_rng(seed, PROFILE_STREAM, t);
        let msg: Vec<u8> = (0..spec.dimension()).map(|_| rng.random_range(0..2)).collect();
        let u = spec.u_from_message(&msg).unwrap();
        path.load(&transmit(&transmitted_word(&u).unwrap(), sigma, &mut rng));
        if let Some(pos) = first_error(&mut path, &u) {
            counts[pos] += 1;
        }
    }
    counts.iter().map(|&c| c as f64 / trials as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_profile_sits_at_floor() {
        let spec = CodeSpec::with_static_frozen(2, vec![2, 4]).unwrap();
        let p = estimate_first_error_probs(&spec, 1e-3, 500, 1, MetricMode::Exact);
        assert_eq!(p.probs(), &[0.0, 1e-9, 0.0, 1e-9]);
    }

    #[test]
    fn first_errors_are_disjoint() {
        let spec = crate::code::sample_drm_polar(4, 8, 2f64.powf(0.25), 2).unwrap();
        let raw = raw_probs(&spec, 1.0, 4000, 5);
        assert!(raw.iter().sum::<f64>() <= 1.0 + 1e-12);
        assert!(raw.iter().enumerate().all(|(i, &p)| spec.info_at(i) || p == 0.0));
    }

    #[test]
    fn independent_runs_agree() {
        let spec = CodeSpec::with_static_frozen(2, vec![2, 4]).unwrap();
        let trials = 20_000;
        let a = estimate_first_error_probs(&spec, 0.9, trials, 1, MetricMode::Exact);
        let b = estimate_first_error_probs(&spec, 0.9, trials, 2, MetricMode::Exact);
        for (pa, pb) in a.probs().iter().zip(b.probs()) {
            let pooled = (pa + pb) / 2.0;
            let sd = (2.0 * pooled * (1.0 - pooled) / trials as f64).sqrt();
            assert!((pa - pb).abs() <= 3.0 * sd + 1e-12, "{pa} vs {pb}");
        }
        assert!(a.probs()[1] > 0.01);
    }

    #[test]
    fn estimate_is_deterministic() {
        let spec = crate::code::sample_drm_polar(4, 8, 2f64.powf(0.25), 2).unwrap();
        let a = estimate_first_error_probs(&spec, 0.8, 3000, 9, MetricMode::Exact);
        let b = estimate_first_error_probs(&spec, 0.8, 3000, 9, MetricMode::Exact);
        assert_eq!(a, b);
    }
}
