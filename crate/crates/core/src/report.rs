//! Cost reports shared by the maxima and hull pipelines.

use alloc::vec::Vec;

use crate::geom::{Phase, ProbeCounter};

/// Entropy `sum (n_i / n) log2(n / n_i)` of a list of part sizes, in bits.
/// Zero-sized parts are ignored.
pub fn entropy_bits(sizes: &[usize]) -> f64 {
    let n: usize = sizes.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let sf = s as f64;
            (sf / nf) * libm::log2(nf / sf)
        })
        .sum()
}

/// Per-run measurements of one algorithm invocation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CostReport {
    /// Input size after deduplication.
    pub n: usize,
    /// Output size.
    pub h: usize,
    /// Smooth runs (maxima pipelines).
    pub sigma: usize,
    /// Simple chains (hull pipelines).
    pub kappa: usize,
    /// Sequences handed to the merge step.
    pub rho: usize,
    /// Blocks in the emitted certificate.
    pub beta: usize,
    /// Certificate length: distinct argument points.
    pub delta: usize,
    /// Per-argument count of distinct sequences referenced.
    pub m_list: Vec<usize>,
    /// Part sizes of the run/chain partition.
    pub sizes: Vec<usize>,
    /// Entropy of `sizes` in bits.
    pub entropy: f64,
    /// Predicates charged per recursion level (recursive halving baseline only).
    pub level_counts: Vec<u64>,
    /// Predicate counts by phase.
    pub counter: ProbeCounter,
    /// Generator seed, when the input came from a generator.
    pub seed: Option<u64>,
}

impl CostReport {
    pub fn predicate_count(&self) -> u64 {
        self.counter.total()
    }

    pub fn phase(&self, phase: Phase) -> u64 {
        self.counter.count(phase)
    }
}
