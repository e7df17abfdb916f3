//! Rollback-capable SC decoder state.

use super::metric::{f_combine, g_combine, hard_decision, pm_increment, MetricMode};
use crate::code::CodeSpec;

/// A partial input sequence `û^phase` with its path metric history and the
/// intermediate LLRs and partial sums needed to continue SC decoding.
///
/// Level `λ` of the LLR and partial-sum tables is split into blocks of
/// `2^λ` positions; level `n` holds the channel LLRs (transmitted-word order)
/// and level `0` the per-phase decision LLRs. A block is written only when SC
/// first enters it, so every block starting at or before the current phase
/// stays consistent with the prefix. [`DecodePath::rewind`] is therefore free.
#[derive(Debug, Clone)]
pub struct DecodePath<'a> {
    spec: &'a CodeSpec,
    mode: MetricMode,
    log_len: usize,
    llr: Vec<Vec<f64>>,
    ps: Vec<Vec<u8>>,
    bits: Vec<u8>,
    pm: Vec<f64>,
    phase: usize,
    ready: bool,
    visits: u64,
}

impl<'a> DecodePath<'a> {
    pub fn new(spec: &'a CodeSpec, mode: MetricMode) -> Self {
        let len = spec.len();
        let log_len = spec.log_len() as usize;
        Self {
            spec,
            mode,
            log_len,
            llr: vec![vec![0.0; len]; log_len + 1],
            ps: vec![vec![0; len]; log_len + 1],
            bits: vec![0; len],
            pm: vec![0.0; len + 1],
            phase: 0,
            ready: false,
            visits: 0,
        }
    }

    /// Loads channel LLRs (length `N`) and resets to phase 0 with zero visits.
    pub fn load(&mut self, channel: &[f64]) {
        assert_eq!(channel.len(), self.len(), "channel LLR length");
        self.llr[self.log_len].copy_from_slice(channel);
        self.phase = 0;
        self.ready = false;
        self.visits = 0;
    }

    pub fn spec(&self) -> &'a CodeSpec {
        self.spec
    }

    pub fn mode(&self) -> MetricMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of decided bits.
    pub fn phase(&self) -> usize {
        self.phase
    }

    pub fn is_complete(&self) -> bool {
        self.phase == self.len()
    }

    /// Decided prefix `û^phase`.
    pub fn bits(&self) -> &[u8] {
        &self.bits[..self.phase]
    }

    /// Path metric of the current prefix.
    pub fn metric(&self) -> f64 {
        self.pm[self.phase]
    }

    /// Path metric of the prefix of length `i <= phase`.
    pub fn metric_at(&self, i: usize) -> f64 {
        assert!(i <= self.phase);
        self.pm[i]
    }

    /// Phases processed since the last [`load`](Self::load).
    pub fn visits(&self) -> u64 {
        self.visits
    }

    /// Truncates to the prefix of length `phase`.
    pub fn rewind(&mut self, phase: usize) {
        assert!(phase <= self.phase, "cannot rewind forward");
        if phase != self.phase {
            self.phase = phase;
            self.ready = false;
        }
    }

    /// Whether the next position (0-based `phase`) carries information.
    pub fn next_is_info(&self) -> bool {
        self.spec.info_at(self.phase)
    }

    /// Frozen value of the next position given the decided prefix.
    pub fn next_frozen_bit(&self) -> u8 {
        self.spec.frozen_bit(self.phase, &self.bits)
    }

    /// Decision LLR of the next position.
    pub fn next_llr(&mut self) -> f64 {
        assert!(self.phase < self.len(), "path is complete");
        if !self.ready {
            self.compute_llr();
            self.ready = true;
        }
        self.llr[0][self.phase]
    }

    /// SC decision for the next position: frozen value or hard decision.
    pub fn sc_bit(&mut self) -> u8 {
        let ell = self.next_llr();
        if self.next_is_info() {
            hard_decision(ell)
        } else {
            self.next_frozen_bit()
        }
    }

    /// Metric the path would have after appending `bit`.
    pub fn metric_if(&mut self, bit: u8) -> f64 {
        let ell = self.next_llr();
        self.pm[self.phase] + pm_increment(ell, bit, self.mode)
    }

    /// Appends `bit`, counting one visit.
    pub fn push(&mut self, bit: u8) {
        let ell = self.next_llr();
        let i = self.phase;
        self.pm[i + 1] = self.pm[i] + pm_increment(ell, bit, self.mode);
        self.bits[i] = bit;
        self.ps[0][i] = bit;
        let mut lambda = 0;
        while lambda < self.log_len && (i + 1).is_multiple_of(2 << lambda) {
            let h = 1 << lambda;
            let p = i + 1 - 2 * h;
            let (lo, hi) = self.ps.split_at_mut(lambda + 1);
            let (src, dst) = (&lo[lambda], &mut hi[0]);
            for k in p..p + h {
                dst[k] = src[k] ^ src[k + h];
                dst[k + h] = src[k + h];
            }
            lambda += 1;
        }
        self.phase += 1;
        self.ready = false;
        self.visits += 1;
    }

    fn compute_llr(&mut self) {
        let phase = self.phase;
        let top = if phase == 0 {
            self.log_len
        } else {
            phase.trailing_zeros() as usize + 1
        };
        for lambda in (0..top).rev() {
            let h = 1 << lambda;
            let p = phase & !((2 << lambda) - 1);
            let (lo, hi) = self.llr.split_at_mut(lambda + 1);
            let (dst, src) = (&mut lo[lambda], &hi[0]);
            if phase & h != 0 {
                let sums = &self.ps[lambda];
                for k in p..p + h {
                    dst[k + h] = g_combine(src[k], src[k + h], sums[k]);
                }
            } else {
                for k in p..p + h {
                    dst[k] = f_combine(src[k], src[k + h], self.mode);
                }
            }
        }
    }
}
