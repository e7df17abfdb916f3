use super::DecodeResult;
use crate::code::{CodeSpec, ReliabilityProfile};
use crate::error::{Error, Result};
use crate::sc::{check_inputs, DecodePath, MetricMode};

/// Parameters of SC-Fano decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoParams {
    /// Threshold step `Δ`.
    pub delta: f64,
    /// Visit budget `χ_max`; `None` is unbounded.
    pub max_visits: Option<u64>,
}

impl Default for FanoParams {
    fn default() -> Self {
        Self {
            delta: 1.0,
            max_visits: None,
        }
    }
}

impl FanoParams {
    pub fn validate(&self, len: usize) -> Result<()> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(Error::Config(format!("delta = {} must be positive", self.delta)));
        }
        if self.max_visits.is_some_and(|v| v < len as u64) {
            return Err(Error::Config(format!(
                "visit budget must be at least N = {len}"
            )));
        }
        Ok(())
    }
}

/// Fano sequential decoding on the SC tree with node metric `-S`.
///
/// The threshold starts at 0 and moves in steps of `Δ`. A backward move is
/// taken only while the remaining budget still allows reaching a leaf from
/// the parent; otherwise the search completes greedily along SC decisions.
/// The first leaf reached is returned.
pub fn sc_fano_decode(
    spec: &CodeSpec,
    llr: &[f64],
    params: &FanoParams,
    profile: &ReliabilityProfile,
    mode: MetricMode,
) -> Result<DecodeResult> {
    check_inputs(spec, llr, profile)?;
    params.validate(spec.len())?;
    let len = spec.len();
    let bias = profile.cumulative_bias();
    let delta = params.delta;
    let budget = params.max_visits.unwrap_or(u64::MAX);

    let mut path = DecodePath::new(spec, mode);
    path.load(llr);
    // mu[d]: node metric at depth d; rank[d]: child rank taken to reach depth d
    let mut mu = vec![0.0f64; len + 1];
    let mut rank = vec![0u8; len + 1];
    let mut k: i64 = 0;
    let mut want = 0u8;

    while !path.is_complete() {
        let depth = path.phase();
        let threshold = k as f64 * delta;
        let sc = path.sc_bit();
        let bit = sc ^ want;
        let child_mu = -(path.metric_if(bit) + bias[depth + 1]);
        if child_mu >= threshold {
            let parent_mu = mu[depth];
            path.push(bit);
            mu[depth + 1] = child_mu;
            rank[depth + 1] = want;
            want = 0;
            if parent_mu < threshold + delta {
                // first visit: tighten
                k += ((child_mu - threshold) / delta).floor() as i64;
            }
            continue;
        }
        // look back
        loop {
            let depth = path.phase();
            let remaining = budget.saturating_sub(path.visits());
            if remaining < (len - depth + 1) as u64 {
                while !path.is_complete() {
                    let b = path.sc_bit();
                    path.push(b);
                }
                break;
            }
            let threshold = k as f64 * delta;
            let parent_mu = if depth == 0 { f64::NEG_INFINITY } else { mu[depth - 1] };
            if parent_mu >= threshold {
                let came = rank[depth];
                path.rewind(depth - 1);
                if came == 0 && spec.info_at(depth - 1) {
                    want = 1;
                    break;
                }
            } else {
                k -= 1;
                want = 0;
                break;
            }
        }
    }
    Ok(DecodeResult::new(
        spec,
        path.bits().to_vec(),
        path.metric(),
        path.visits(),
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{frame_rng, transmit};
    use crate::decoders::sc_result;

    #[test]
    fn example_reaches_good_leaf() {
        let spec = CodeSpec::with_static_frozen(2, vec![2, 4]).unwrap();
        let prof = ReliabilityProfile::new(vec![0.4512, 0.1813, 0.1813, 0.0952]).unwrap();
        let p = FanoParams {
            delta: 0.5,
            max_visits: None,
        };
        let out = sc_fano_decode(&spec, &[-1.2, 3.4, -2.2, 0.9], &p, &prof, MetricMode::Hardened)
            .unwrap();
        assert!(out.metric <= 3.4 + 1e-12);
    }

    #[test]
    fn budget_n_is_sc() {
        let spec = crate::code::sample_drm_polar(5, 16, 2f64.powf(0.25), 6).unwrap();
        let prof = crate::sc::estimate_first_error_probs(&spec, 0.8, 2000, 1, MetricMode::Exact);
        let p = FanoParams {
            delta: 1.0,
            max_visits: Some(32),
        };
        for f in 0..200 {
            let llr = transmit(&[0; 32], 0.8, &mut frame_rng(1, 2, f));
            let out = sc_fano_decode(&spec, &llr, &p, &prof, MetricMode::Exact).unwrap();
            let sc = sc_result(&spec, &llr, MetricMode::Exact).unwrap();
            assert_eq!(out.u, sc.u);
            assert_eq!(out.visits, 32);
        }
    }

    #[test]
    fn budget_is_respected() {
        let spec = crate::code::sample_drm_polar(5, 16, 2f64.powf(0.25), 6).unwrap();
        let prof = crate::sc::estimate_first_error_probs(&spec, 1.0, 2000, 1, MetricMode::Exact);
        for budget in [32u64, 40, 64, 200] {
            let p = FanoParams {
                delta: 1.0,
                max_visits: Some(budget),
            };
            for f in 0..200 {
                let llr = transmit(&[0; 32], 1.0, &mut frame_rng(1, 3, f));
                let out = sc_fano_decode(&spec, &llr, &p, &prof, MetricMode::Exact).unwrap();
                assert!(out.visits <= budget);
                assert!(spec.satisfies_constraints(&out.u));
            }
        }
    }

    #[test]
    fn large_delta_on_benign_frame_follows_sc() {
        let spec = crate::code::sample_drm_polar(5, 16, 2f64.powf(0.25), 6).unwrap();
        let prof = ReliabilityProfile::zeros(32);
        let p = FanoParams {
            delta: 1e6,
            max_visits: None,
        };
        let llr = [8.0; 32];
        let out = sc_fano_decode(&spec, &llr, &p, &prof, MetricMode::Exact).unwrap();
        assert_eq!(out.visits, 32);
        assert_eq!(out.u, vec![0; 32]);
    }
}
