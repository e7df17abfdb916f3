//! Code specifications for modified G_N-coset codes.
//!
//! A [`CodeSpec`] fixes the block length `N = 2^n`, the information set `A`,
//! and for every frozen index a (possibly empty) list of earlier information
//! indices whose XOR gives the frozen value. An empty list is a static zero.
//! All indices are 1-based, `u_1..u_N`.

mod construct;
mod crc;
mod file;

pub use construct::{
    beta_expansion_ranking, pac_precoder, polar_info_set, rm_info_set, rm_polar_info_set,
    sample_drm_polar,
};
pub use crc::{crc_attach, crc_check, Crc};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest supported `n`.
pub const MAX_LOG_LEN: u32 = 20;

/// Provenance of a code specification.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub construction: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub beta: Option<f64>,
}

impl Metadata {
    pub fn new(construction: impl Into<String>) -> Self {
        Self {
            construction: construction.into(),
            ..Default::default()
        }
    }
}

/// A modified G_N-coset code.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    log_len: u32,
    info_set: Vec<usize>,
    frozen_rows: Vec<(usize, Vec<usize>)>,
    crc: Option<Crc>,
    metadata: Metadata,
    // 0-based lookup tables derived from the fields above
    is_info: Vec<bool>,
    rows: Vec<Vec<u32>>,
}

impl CodeSpec {
    /// Checked constructor.
    ///
    /// `frozen_rows` lists `(i, row)` pairs for dynamic frozen indices; frozen
    /// indices that do not appear are static zeros. Rows are normalized to
    /// sorted order and empty rows are dropped.
    pub fn new(
        log_len: u32,
        info_set: Vec<usize>,
        frozen_rows: impl IntoIterator<Item = (usize, Vec<usize>)>,
        crc: Option<Crc>,
    ) -> Result<Self> {
        if log_len > MAX_LOG_LEN {
            return Err(Error::InvalidCode(format!(
                "n = {log_len} exceeds the maximum {MAX_LOG_LEN}"
            )));
        }
        let len = 1usize << log_len;
        let mut is_info = vec![false; len];
        let mut prev = 0;
        for &i in &info_set {
            if i == 0 || i > len {
                return Err(Error::InvalidCode(format!(
                    "information index {i} outside 1..={len}"
                )));
            }
            if i <= prev {
                return Err(Error::InvalidCode(
                    "information set must be strictly increasing".into(),
                ));
            }
            prev = i;
            is_info[i - 1] = true;
        }

        let mut rows = vec![Vec::new(); len];
        let mut normalized = Vec::new();
        for (i, mut row) in frozen_rows {
            if i == 0 || i > len {
                return Err(Error::InvalidCode(format!(
                    "frozen index {i} outside 1..={len}"
                )));
            }
            if is_info[i - 1] {
                return Err(Error::NotFrozen(i));
            }
            if !rows[i - 1].is_empty() {
                return Err(Error::InvalidCode(format!("duplicate frozen row for u_{i}")));
            }
            row.sort_unstable();
            row.dedup();
            for &j in &row {
                if j == 0 || j >= i || !is_info[j - 1] {
                    return Err(Error::InvalidCode(format!(
                        "frozen row of u_{i} references u_{j}, which is not an earlier information bit"
                    )));
                }
            }
            if row.is_empty() {
                continue;
            }
            rows[i - 1] = row.iter().map(|&j| (j - 1) as u32).collect();
            normalized.push((i, row));
        }
        normalized.sort_by_key(|(i, _)| *i);

        if let Some(crc) = &crc {
            if crc.degree() > info_set.len() {
                return Err(Error::InvalidCode(format!(
                    "CRC degree {} exceeds K = {}",
                    crc.degree(),
                    info_set.len()
                )));
            }
        }

        Ok(Self {
            log_len,
            info_set,
            frozen_rows: normalized,
            crc,
            metadata: Metadata::default(),
            is_info,
            rows,
        })
    }

    /// Code with all frozen bits static zero.
    pub fn with_static_frozen(log_len: u32, info_set: Vec<usize>) -> Result<Self> {
        Self::new(log_len, info_set, std::iter::empty(), None)
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// Attaches (or replaces) the outer CRC.
    pub fn with_crc(self, crc: Option<Crc>) -> Result<Self> {
        let metadata = self.metadata.clone();
        Ok(Self::new(self.log_len, self.info_set, self.frozen_rows, crc)?.with_metadata(metadata))
    }

    /// `n = log2 N`.
    pub fn log_len(&self) -> u32 {
        self.log_len
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        self.is_info.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of information bits `K`.
    pub fn dimension(&self) -> usize {
        self.info_set.len()
    }

    /// Number of payload bits carried per frame (`K` minus the CRC degree).
    pub fn payload_len(&self) -> usize {
        self.info_set.len() - self.crc.as_ref().map_or(0, Crc::degree)
    }

    /// Payload bits per channel use.
    pub fn rate(&self) -> f64 {
        self.payload_len() as f64 / self.len() as f64
    }

    /// The information set `A`, sorted, 1-based.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    /// Frozen indices `A^c`, sorted, 1-based.
    pub fn frozen_set(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| !self.is_info[i - 1]).collect()
    }

    /// Non-empty frozen rows as `(i, [j...])`, 1-based.
    pub fn frozen_rows(&self) -> &[(usize, Vec<usize>)] {
        &self.frozen_rows
    }

    /// Row of frozen index `i` (1-based); empty for static frozen bits.
    pub fn frozen_row(&self, i: usize) -> Result<Vec<usize>> {
        self.check_frozen(i)?;
        Ok(self.rows[i - 1].iter().map(|&j| j as usize + 1).collect())
    }

    pub fn crc(&self) -> Option<&Crc> {
        self.crc.as_ref()
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    /// Whether `u_i` (1-based) carries information.
    pub fn is_info(&self, i: usize) -> bool {
        i >= 1 && i <= self.len() && self.is_info[i - 1]
    }

    /// Frozen value of `u_i` given the decided prefix `û^{i-1}` (at least `i-1` bits).
    pub fn frozen_value(&self, i: usize, decided: &[u8]) -> Result<u8> {
        self.check_frozen(i)?;
        let mut v = 0;
        for &j in &self.rows[i - 1] {
            let j = j as usize;
            match decided.get(j) {
                Some(&b) => v ^= b,
                None => {
                    return Err(Error::Undecided {
                        index: i,
                        reference: j + 1,
                    })
                }
            }
        }
        Ok(v)
    }

    /// Whether 0-based position `pos` is an information position.
    #[inline]
    pub(crate) fn info_at(&self, pos: usize) -> bool {
        self.is_info[pos]
    }

    /// Frozen value at 0-based position `pos`; `bits` must hold every referenced bit.
    #[inline]
    pub(crate) fn frozen_bit(&self, pos: usize, bits: &[u8]) -> u8 {
        self.rows[pos]
            .iter()
            .fold(0, |acc, &j| acc ^ bits[j as usize])
    }

    /// Appends the CRC (if any) to a payload, giving the `K`-bit message.
    pub fn message_from_payload(&self, payload: &[u8]) -> Result<Vec<u8>> {
        if payload.len() != self.payload_len() {
            return Err(Error::LengthMismatch {
                expected: self.payload_len(),
                actual: payload.len(),
            });
        }
        match &self.crc {
            Some(crc) => crc_attach(payload, crc),
            None => Ok(payload.to_vec()),
        }
    }

    /// Places a `K`-bit message into `A` and evaluates every frozen bit.
    pub fn u_from_message(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                actual: message.len(),
            });
        }
        let mut u = vec![0u8; self.len()];
        let mut next = message.iter();
        for pos in 0..self.len() {
            u[pos] = if self.is_info[pos] {
                *next.next().expect("message length checked")
            } else {
                self.frozen_bit(pos, &u)
            };
        }
        Ok(u)
    }

    /// Extracts `u_A` from a full input vector.
    pub fn message_of(&self, u: &[u8]) -> Vec<u8> {
        self.info_set.iter().map(|&i| u[i - 1]).collect()
    }

    /// Checks that `u` satisfies every frozen constraint.
    pub fn satisfies_constraints(&self, u: &[u8]) -> bool {
        u.len() == self.len()
            && (0..self.len()).all(|pos| self.is_info[pos] || u[pos] == self.frozen_bit(pos, u))
    }

    /// CRC check of the message carried by `u`; `true` when the code has no CRC.
    pub fn crc_passes(&self, u: &[u8]) -> bool {
        match &self.crc {
            Some(crc) => crc_check(&self.message_of(u), crc),
            None => true,
        }
    }

    fn check_frozen(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::PhaseOutOfRange {
                phase: i,
                len: self.len(),
            });
        }
        if self.is_info[i - 1] {
            return Err(Error::NotFrozen(i));
        }
        Ok(())
    }
}

/// Per-phase first-error probabilities `p_j` of SC decoding.
///
/// Entries are stored as given (in `[0, 1]`) and clamped to
/// `[1e-9, 1 - 1e-9]` only when logarithms are taken.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    probs: Vec<f64>,
}

impl ReliabilityProfile {
    pub const LOG_CLAMP: f64 = 1e-9;

    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidCode(format!("probability {p} outside [0, 1]")));
        }
        Ok(Self { probs })
    }

    /// All-zero profile: scores coincide with path metrics.
    pub fn zeros(len: usize) -> Self {
        Self {
            probs: vec![0.0; len],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `ln(1 - p_j)` with `p_j` clamped, for `j = 1..=N`.
    pub fn log_complements(&self) -> Vec<f64> {
        self.probs
            .iter()
            .map(|&p| {
                let p = p.clamp(Self::LOG_CLAMP, 1.0 - Self::LOG_CLAMP);
                (-p).ln_1p()
            })
            .collect()
    }

    /// Prefix sums `Σ_{j<=i} ln(1 - p_j)` for `i = 0..=N`.
    pub fn cumulative_bias(&self) -> Vec<f64> {
        let mut acc = Vec::with_capacity(self.probs.len() + 1);
        acc.push(0.0);
        let mut s = 0.0;
        for l in self.log_complements() {
            s += l;
            acc.push(s);
        }
        acc
    }

    /// One value per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.probs {
            out.push_str(&format!("{p:e}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let probs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("profile entry {l:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}
