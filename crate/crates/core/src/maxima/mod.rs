//! Planar maxima: smooth decomposition, staircase merging, Quick Union
//! Maxima with certificates, the Left-to-Right certifier and verification.

mod certificate;
mod left_to_right;
mod quick_union;
mod smooth;

use alloc::vec::Vec;
use core::fmt;

use crate::geom::{dedup, Phase, Point, ProbeCounter};
use crate::report::{entropy_bits, CostReport};

pub use certificate::{check_maxima_argument, verify_maxima_certificate};
pub(crate) use certificate::first_uncovered;
pub use left_to_right::left_to_right_merge;
pub use quick_union::quick_union_maxima;
pub use smooth::{decompose_smooth, merge_two_staircases, validate_smooth, SmoothDecomposition, SmoothRun};

/// A maxima sequence: x strictly increasing, y strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Staircase(Vec<Point>);

impl Staircase {
    /// Checks the staircase invariant; on failure returns the 0-based index
    /// of the first point that breaks it.
    pub fn new(points: Vec<Point>) -> Result<Self, usize> {
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1].x > w[0].x && w[1].y < w[0].y) {
                return Err(i + 1);
            }
        }
        Ok(Staircase(points))
    }

    pub(crate) fn from_vec_unchecked(points: Vec<Point>) -> Self {
        debug_assert!(Staircase::new(points.clone()).is_ok());
        Staircase(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn into_points(self) -> Vec<Point> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl core::ops::Index<usize> for Staircase {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.0[i]
    }
}

/// A block `seq[lo..=hi]` of an input sequence, 1-based. Maximality witnesses
/// may be empty (`lo == hi + 1`); everything else has `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockRef {
    pub seq: usize,
    pub lo: usize,
    pub hi: usize,
    pub pivot: Option<usize>,
}

impl BlockRef {
    pub fn new(seq: usize, lo: usize, hi: usize) -> Self {
        BlockRef { seq, lo, hi, pivot: None }
    }

    pub fn single(seq: usize, pos: usize) -> Self {
        BlockRef::new(seq, pos, pos)
    }

    pub fn with_pivot(seq: usize, lo: usize, pivot: usize, hi: usize) -> Self {
        BlockRef { seq, lo, hi, pivot: Some(pivot) }
    }

    pub fn len(&self) -> usize {
        (self.hi + 1).saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// 0-based half-open position range.
    pub(crate) fn range0(&self) -> core::ops::Range<usize> {
        self.lo - 1..self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaximaKind {
    Domination,
    Maximality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximaArgument {
    pub kind: MaximaKind,
    /// The dominating point (a one-position block) or the output block.
    pub subject: BlockRef,
    pub witnesses: Vec<BlockRef>,
}

impl MaximaArgument {
    pub fn domination(seq: usize, pos: usize, witnesses: Vec<BlockRef>) -> Self {
        MaximaArgument { kind: MaximaKind::Domination, subject: BlockRef::single(seq, pos), witnesses }
    }

    pub fn maximality(block: BlockRef, witnesses: Vec<BlockRef>) -> Self {
        MaximaArgument { kind: MaximaKind::Maximality, subject: block, witnesses }
    }

    /// Argument points: the dominating point, or the two ends of the output block.
    pub fn argument_points(&self) -> impl Iterator<Item = (usize, usize)> {
        let s = self.subject;
        let second = (self.kind == MaximaKind::Maximality && s.hi != s.lo).then_some((s.seq, s.hi));
        core::iter::once((s.seq, s.lo)).chain(second)
    }

    /// Number of distinct sequences referenced by subject and witnesses.
    pub fn sequence_count(&self) -> usize {
        let mut seqs: Vec<usize> = self.witnesses.iter().map(|w| w.seq).collect();
        seqs.push(self.subject.seq);
        seqs.sort_unstable();
        seqs.dedup();
        seqs.len()
    }
}

/// Domination and maximality arguments plus the ordered output blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaximaCertificate {
    pub arguments: Vec<MaximaArgument>,
    pub output_blocks: Vec<BlockRef>,
}

impl MaximaCertificate {
    /// Certificate length: number of distinct argument points.
    pub fn length(&self) -> usize {
        let mut pts: Vec<(usize, usize)> = self.arguments.iter().flat_map(|a| a.argument_points()).collect();
        pts.sort_unstable();
        pts.dedup();
        pts.len()
    }

    /// Number of blocks: output blocks plus witness blocks.
    pub fn block_count(&self) -> usize {
        self.output_blocks.len() + self.arguments.iter().map(|a| a.witnesses.len()).sum::<usize>()
    }

    pub fn m_list(&self) -> Vec<usize> {
        self.arguments.iter().map(|a| a.sequence_count()).collect()
    }
}

/// Why a certificate was rejected. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// An argument refers to a sequence or position that does not exist,
    /// or has the wrong shape for its kind.
    Structural { argument: usize, detail: &'static str },
    /// The argument's inequalities do not hold.
    ArgumentFailed { argument: usize },
    /// Output blocks differ from the subjects of the maximality arguments.
    OutputMismatch,
    /// Output blocks do not concatenate into a staircase (hull) at this block.
    OutputNotMonotone { block: usize },
    /// A position is neither eliminated by a witness block nor in an output block.
    Uncovered { seq: usize, pos: usize },
    /// The instance itself is invalid (e.g. a point repeated across sequences).
    InvalidInstance { detail: &'static str },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Structural { argument, detail } => write!(f, "argument {argument}: malformed ({detail})"),
            Rejection::ArgumentFailed { argument } => write!(f, "argument {argument} does not hold"),
            Rejection::OutputMismatch => f.write_str("output blocks do not match the convexity/maximality subjects"),
            Rejection::OutputNotMonotone { block } => write!(f, "output block {block} breaks the output order"),
            Rejection::Uncovered { seq, pos } => write!(f, "position {pos} of sequence {seq} is not covered"),
            Rejection::InvalidInstance { detail } => write!(f, "invalid instance: {detail}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Rejection),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// An argument refers outside the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralError(pub &'static str);

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed argument: {}", self.0)
    }
}

impl core::error::Error for StructuralError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximaError {
    /// No sequences were given.
    NoSequences,
    /// The same point occurs in two sequences (1-based sequence indices).
    SharedPoint { first: usize, second: usize, point: Point },
}

impl fmt::Display for MaximaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximaError::NoSequences => f.write_str("at least one sequence is required"),
            MaximaError::SharedPoint { first, second, point } => {
                write!(f, "point {point} occurs in sequences {first} and {second}")
            }
        }
    }
}

impl core::error::Error for MaximaError {}

/// Rejects inputs whose sequences share a point.
pub(crate) fn check_disjoint<'a>(seqs: impl Iterator<Item = &'a [Point]>) -> Result<(), (usize, usize, Point)> {
    let mut owner = hashbrown::HashMap::new();
    for (k, s) in seqs.enumerate() {
        for &p in s {
            if let Some(&first) = owner.get(&p) {
                if first != k {
                    return Err((first + 1, k + 1, p));
                }
            }
            owner.insert(p, k);
        }
    }
    Ok(())
}

fn validate_input(seqs: &[Staircase]) -> Result<(), MaximaError> {
    if seqs.is_empty() {
        return Err(MaximaError::NoSequences);
    }
    check_disjoint(seqs.iter().map(|s| s.points()))
        .map_err(|(first, second, point)| MaximaError::SharedPoint { first, second, point })
}

/// Maxima of an arbitrary point list: deduplicate, split into smooth runs,
/// merge the run staircases with Quick Union Maxima.
pub fn synergistic_maxima(points: &[Point]) -> (Staircase, CostReport) {
    let (out, _, report) = synergistic_maxima_certified(points);
    (out, report)
}

/// As [`synergistic_maxima`], also returning the run staircases and the
/// certificate of the merge step.
pub fn synergistic_maxima_certified(points: &[Point]) -> (Staircase, (Vec<Staircase>, MaximaCertificate), CostReport) {
    let mut counter = ProbeCounter::new();
    let pts = counter.in_phase(Phase::Dedup, |c| dedup(points, c));
    let dec = counter.in_phase(Phase::Partition, |c| decompose_smooth(&pts, c));
    let sizes: Vec<usize> = dec.runs.iter().map(|r| r.range.len()).collect();
    let stairs: Vec<Staircase> = dec.runs.into_iter().map(|r| r.staircase).collect();
    let (out, cert) = if stairs.is_empty() {
        (Staircase::default(), MaximaCertificate::default())
    } else {
        counter.in_phase(Phase::Merge, |c| quick_union::run(&stairs, c))
    };
    let report = CostReport {
        n: pts.len(),
        h: out.len(),
        sigma: stairs.len(),
        kappa: 0,
        rho: stairs.len(),
        beta: cert.block_count(),
        delta: cert.length(),
        m_list: cert.m_list(),
        entropy: entropy_bits(&sizes),
        sizes,
        level_counts: Vec::new(),
        counter,
        seed: None,
    };
    (out, (stairs, cert), report)
}
