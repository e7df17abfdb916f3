//! Successive-cancellation ordered search.
//!
//! SCOS starts from the SC leaf and explores flipping sets `E` (information
//! phases whose SC decision is inverted) in ascending score order. A branch is
//! abandoned as soon as its path metric reaches that of the best leaf. When
//! the list of candidate sets runs empty the best leaf is an ML decision.

use crate::code::{CodeSpec, ReliabilityProfile};
use crate::decoders::DecodeResult;
use crate::error::{Error, Result};
use crate::sc::{check_inputs, extend, DecodePath, Extension, FlipRecord, Limits, MetricMode};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Visit budget and list capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScosParams {
    /// `χ_max`; `None` is unbounded.
    pub max_visits: Option<u64>,
    /// List capacity; `None` derives it from `max_visits`.
    pub list_cap: Option<usize>,
    /// Keep the metrics of pruned prefixes for inspection.
    pub audit: bool,
}

impl ScosParams {
    pub fn unbounded() -> Self {
        Self::default()
    }

    /// Budget of `chi_max` visits with the default list capacity.
    pub fn bounded(chi_max: u64) -> Self {
        Self {
            max_visits: Some(chi_max),
            ..Self::default()
        }
    }

    pub fn with_list_cap(mut self, cap: usize) -> Self {
        self.list_cap = Some(cap);
        self
    }

    /// Effective list capacity for block length `len`.
    pub fn effective_list_cap(&self, len: usize) -> Option<usize> {
        self.list_cap
            .or_else(|| self.max_visits.map(|chi| default_list_cap(len, chi)))
    }

    pub fn validate(&self, len: usize) -> Result<()> {
        if self.max_visits.is_some_and(|v| v < len as u64) {
            return Err(Error::Config(format!(
                "visit budget must be at least N = {len}"
            )));
        }
        if self.list_cap == Some(0) {
            return Err(Error::Config("list capacity must be at least 1".into()));
        }
        Ok(())
    }
}

/// `log2(N) · χ_max / N`, at least 1.
pub fn default_list_cap(len: usize, chi_max: u64) -> usize {
    let n = len.trailing_zeros() as u64;
    ((n * chi_max) / len as u64).max(1) as usize
}

/// A candidate flipping set.
#[derive(Debug, Clone)]
pub struct FlipSet {
    /// Sorted 1-based information phases.
    pub set: Vec<usize>,
    /// Score of the flipped one-step extension at creation.
    pub score: f64,
    /// Path metric of that extension.
    pub created_metric: f64,
}

impl FlipSet {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then(self.set.len().cmp(&other.set.len()))
            .then_with(|| self.set.cmp(&other.set))
    }
}

impl PartialEq for FlipSet {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}

impl Eq for FlipSet {}

impl PartialOrd for FlipSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FlipSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

/// Candidate list ordered by score, then set size, then lexicographically.
#[derive(Debug, Clone, Default)]
pub struct FlipList {
    entries: BTreeSet<FlipSet>,
    cap: Option<usize>,
    evicted: u64,
}

impl FlipList {
    pub fn new(cap: Option<usize>) -> Self {
        Self {
            entries: BTreeSet::new(),
            cap,
            evicted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries dropped or rejected because the list was full.
    pub fn evicted(&self) -> u64 {
        self.evicted
    }

    pub fn iter(&self) -> impl Iterator<Item = &FlipSet> {
        self.entries.iter()
    }

    pub fn pop_min(&mut self) -> Option<FlipSet> {
        self.entries.pop_first()
    }
}

/// Inserts `fs`; when the capacity is exceeded the largest entry is dropped
/// and returned (possibly `fs` itself).
pub fn list_insert(list: &mut FlipList, fs: FlipSet) -> Option<FlipSet> {
    let dropped = match list.cap {
        Some(cap) if list.entries.len() >= cap => {
            if list.entries.last().is_some_and(|max| fs >= *max) {
                Some(fs)
            } else {
                list.entries.insert(fs);
                list.entries.pop_last()
            }
        }
        _ => {
            let fresh = list.entries.insert(fs);
            debug_assert!(fresh, "duplicate flipping set");
            None
        }
    };
    if dropped.is_some() {
        list.evicted += 1;
    }
    dropped
}

/// `min(E* △ E_prev)`, or `min(E*)` when `E_prev` is empty. Both sets sorted.
pub fn next_rollback_phase(e_star: &[usize], e_prev: &[usize]) -> Result<usize> {
    let mut a = e_star.iter().peekable();
    let mut b = e_prev.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(&&x), Some(&&y)) if x == y => {
                a.next();
                b.next();
            }
            (Some(&&x), Some(&&y)) => return Ok(x.min(y)),
            (Some(&&x), None) => return Ok(x),
            (None, Some(&&y)) => return Ok(y),
            (None, None) => {
                return Err(Error::Config(
                    "flipping set equals the previous one".into(),
                ))
            }
        }
    }
}

/// What a single [`ScosSearch::step`] did.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// The list is empty or the budget is spent.
    Finished,
    /// The popped set was stale and discarded.
    Stale(Vec<usize>),
    /// A branch was explored for the popped set.
    Explored {
        set: Vec<usize>,
        rollback: usize,
        end: Extension,
        improved: bool,
    },
}

/// Incremental SCOS search state.
#[derive(Debug, Clone)]
pub struct ScosSearch<'a> {
    path: DecodePath<'a>,
    bias: Vec<f64>,
    best_u: Vec<u8>,
    best_metric: f64,
    list: FlipList,
    e_prev: Vec<usize>,
    max_visits: Option<u64>,
    aborted: bool,
    initial_records: Vec<FlipRecord>,
    branch_records: Vec<FlipRecord>,
    audit: bool,
    pruned: Vec<f64>,
}

impl<'a> ScosSearch<'a> {
    /// Runs the initial SC pass and seeds the list with singleton sets.
    pub fn new(
        spec: &'a CodeSpec,
        llr: &[f64],
        profile: &ReliabilityProfile,
        mode: MetricMode,
        params: ScosParams,
    ) -> Result<Self> {
        check_inputs(spec, llr, profile)?;
        params.validate(spec.len())?;
        let bias = profile.cumulative_bias();
        let mut path = DecodePath::new(spec, mode);
        path.load(llr);
        let mut records = Vec::with_capacity(spec.dimension());
        extend(&mut path, &bias, Limits::default(), |_, b| b, |r| records.push(r));
        let best_metric = path.metric();
        let mut search = Self {
            best_u: path.bits().to_vec(),
            path,
            bias,
            best_metric,
            list: FlipList::new(params.effective_list_cap(spec.len())),
            e_prev: Vec::new(),
            max_visits: params.max_visits,
            aborted: false,
            initial_records: records.clone(),
            branch_records: Vec::new(),
            audit: params.audit,
            pruned: Vec::new(),
        };
        for r in records {
            search.offer(&[], r);
        }
        Ok(search)
    }

    fn offer(&mut self, base: &[usize], r: FlipRecord) {
        if r.metric < self.best_metric {
            let mut set = base.to_vec();
            set.push(r.phase);
            list_insert(
                &mut self.list,
                FlipSet {
                    set,
                    score: r.score,
                    created_metric: r.metric,
                },
            );
        }
    }

    /// Explores the next candidate set.
    pub fn step(&mut self) -> Step {
        if self.aborted {
            return Step::Finished;
        }
        let Some(fs) = self.list.pop_min() else {
            return Step::Finished;
        };
        if fs.created_metric >= self.best_metric {
            return Step::Stale(fs.set);
        }
        let j = next_rollback_phase(&fs.set, &self.e_prev).expect("popped sets are distinct");
        if j - 1 > self.path.phase() {
            // the shared prefix was pruned, so this set cannot beat the best leaf
            debug_assert!(false, "rollback beyond the stored prefix");
            return Step::Stale(fs.set);
        }
        self.path.rewind(j - 1);
        let last = *fs.set.last().expect("flipping sets are non-empty");
        let limits = Limits {
            prune_at: Some(self.best_metric),
            max_visits: self.max_visits,
        };
        let set = &fs.set;
        let mut records = Vec::new();
        let end = extend(
            &mut self.path,
            &self.bias,
            limits,
            |pos, b| b ^ u8::from(set.binary_search(&(pos + 1)).is_ok()),
            |r| {
                if r.phase > last {
                    records.push(r)
                }
            },
        );
        let mut improved = false;
        match end {
            Extension::Leaf => {
                debug_assert!(self.path.metric() < self.best_metric);
                self.best_metric = self.path.metric();
                self.best_u.copy_from_slice(self.path.bits());
                improved = true;
            }
            Extension::Pruned { .. } => {
                if self.audit {
                    self.pruned.push(self.path.metric());
                }
            }
            Extension::BudgetExhausted => self.aborted = true,
        }
        if !self.aborted {
            for &r in &records {
                self.offer(&fs.set, r);
            }
        }
        self.branch_records = records;
        self.e_prev = fs.set.clone();
        Step::Explored {
            set: fs.set,
            rollback: j,
            end,
            improved,
        }
    }

    /// Runs to completion.
    pub fn run(mut self) -> DecodeResult {
        while self.step() != Step::Finished {}
        self.finish()
    }

    pub fn finish(self) -> DecodeResult {
        let certified = self.is_certified();
        DecodeResult::new(
            self.path.spec(),
            self.best_u,
            self.best_metric,
            self.path.visits(),
            certified,
        )
    }

    /// Empty list with nothing lost to the budget or the capacity.
    pub fn is_certified(&self) -> bool {
        self.list.is_empty() && !self.aborted && self.list.evicted() == 0
    }

    pub fn best_leaf(&self) -> &[u8] {
        &self.best_u
    }

    pub fn best_metric(&self) -> f64 {
        self.best_metric
    }

    pub fn list(&self) -> &FlipList {
        &self.list
    }

    pub fn visits(&self) -> u64 {
        self.path.visits()
    }

    pub fn aborted(&self) -> bool {
        self.aborted
    }

    /// Flip records of the initial SC pass.
    pub fn initial_records(&self) -> &[FlipRecord] {
        &self.initial_records
    }

    /// Records spawned by the last explored branch (phases after the set's last index).
    pub fn branch_records(&self) -> &[FlipRecord] {
        &self.branch_records
    }

    /// Metrics at which branches were pruned; filled only with `audit`.
    pub fn pruned_metrics(&self) -> &[f64] {
        &self.pruned
    }
}

/// SCOS decoding of one frame.
pub fn scos_decode(
    spec: &CodeSpec,
    llr: &[f64],
    profile: &ReliabilityProfile,
    mode: MetricMode,
    params: ScosParams,
) -> Result<DecodeResult> {
    Ok(ScosSearch::new(spec, llr, profile, mode, params)?.run())
}
