//! Upper hulls: simplicity testing, chain partition, simple-chain hulls,
//! hull merging (Quick Union Hull and the recursive halving baseline),
//! tangents, and hull certificates.
//!
//! Hulls are strict: no two vertices share an x-coordinate and no three
//! consecutive vertices are collinear.

mod certificate;
mod chain;
mod quick_union;
mod simple;
mod tangent;

use alloc::vec::Vec;
use core::fmt;

use crate::geom::{dedup, orient, Phase, Point, ProbeCounter};
use crate::maxima::BlockRef;
use crate::report::{entropy_bits, CostReport};

pub use certificate::{check_hull_argument, verify_hull_certificate};
pub use chain::{levcopoulos_hull, merge_two_upper_hulls, simple_chain_hull};
pub use quick_union::quick_union_hull;
pub use simple::{is_simple_chain, partition_simple_chains, ChainPartition};
pub use tangent::{supporting_point, tangent_between_hulls, tangents_from_point, Separator, Side};

/// Vertices of an upper hull, left to right: x strictly increasing, edge
/// slopes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UpperHullSeq(Vec<Point>);

/// Vertices of a lower hull, left to right in true coordinates: x strictly
/// increasing, edge slopes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LowerHullSeq(Vec<Point>);

fn first_break(points: &[Point], turn: i8) -> Option<usize> {
    for (i, w) in points.windows(2).enumerate() {
        if w[1].x <= w[0].x {
            return Some(i + 1);
        }
    }
    for (i, w) in points.windows(3).enumerate() {
        if orient(w[0], w[1], w[2]) != turn {
            return Some(i + 1);
        }
    }
    None
}

macro_rules! hull_seq_common {
    ($name:ident, $turn:expr) => {
        impl $name {
            /// Checks the invariant; on failure returns the 0-based index of an
            /// offending vertex.
            pub fn new(points: Vec<Point>) -> Result<Self, usize> {
                match first_break(&points, $turn) {
                    Some(i) => Err(i),
                    None => Ok($name(points)),
                }
            }

            pub(crate) fn from_vec_unchecked(points: Vec<Point>) -> Self {
                debug_assert_eq!(first_break(&points, $turn), None);
                $name(points)
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

        impl core::ops::Index<usize> for $name {
            type Output = Point;
            fn index(&self, i: usize) -> &Point {
                &self.0[i]
            }
        }
    };
}

hull_seq_common!(UpperHullSeq, -1);
hull_seq_common!(LowerHullSeq, 1);

impl LowerHullSeq {
    /// The same hull reflected through the x axis, as an upper hull.
    pub fn to_mirrored_upper(&self) -> UpperHullSeq {
        UpperHullSeq(self.0.iter().map(|p| p.mirror_y()).collect())
    }

    pub(crate) fn from_mirrored_upper(u: UpperHullSeq) -> Self {
        LowerHullSeq(u.0.into_iter().map(|p| p.mirror_y()).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HullKind {
    Eliminator,
    Convex,
}

/// A 1-based `(sequence, position)` pair.
pub type PointRef = (usize, usize);

/// An eliminator argument `U_i[a], U_j[b]` or a convex argument over the
/// output block `U_i[a..b]`.
///
/// Eliminator witnesses are blocks `(k, lo, hi)` with a pivot `d` anywhere in
/// `U_k`. Convex witnesses reuse the block fields as `(k, c, e)` with pivot
/// `d`: `U_k[c]` and `U_k[e]` stand against the block ends, `U_k[d]` against
/// the chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullArgument {
    pub kind: HullKind,
    pub anchors: [PointRef; 2],
    pub witnesses: Vec<BlockRef>,
}

impl HullArgument {
    pub fn eliminator(left: PointRef, right: PointRef, witnesses: Vec<BlockRef>) -> Self {
        HullArgument { kind: HullKind::Eliminator, anchors: [left, right], witnesses }
    }

    pub fn convex(seq: usize, a: usize, b: usize, witnesses: Vec<BlockRef>) -> Self {
        HullArgument { kind: HullKind::Convex, anchors: [(seq, a), (seq, b)], witnesses }
    }

    /// The output block of a convex argument.
    pub fn block(&self) -> BlockRef {
        BlockRef::new(self.anchors[0].0, self.anchors[0].1, self.anchors[1].1)
    }

    pub fn argument_points(&self) -> impl Iterator<Item = PointRef> {
        let [a, b] = self.anchors;
        core::iter::once(a).chain((a != b).then_some(b))
    }

    pub fn sequence_count(&self) -> usize {
        let mut seqs: Vec<usize> = self.witnesses.iter().map(|w| w.seq).collect();
        seqs.push(self.anchors[0].0);
        seqs.push(self.anchors[1].0);
        seqs.sort_unstable();
        seqs.dedup();
        seqs.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HullCertificate {
    pub arguments: Vec<HullArgument>,
    pub output_blocks: Vec<BlockRef>,
}

impl HullCertificate {
    /// Number of distinct argument points.
    pub fn length(&self) -> usize {
        let mut pts: Vec<PointRef> = self.arguments.iter().flat_map(|a| a.argument_points()).collect();
        pts.sort_unstable();
        pts.dedup();
        pts.len()
    }

    pub fn block_count(&self) -> usize {
        self.output_blocks.len() + self.arguments.iter().map(|a| a.witnesses.len()).sum::<usize>()
    }

    pub fn m_list(&self) -> Vec<usize> {
        self.arguments.iter().map(|a| a.sequence_count()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullError {
    NoSequences,
    /// The same point occurs in two sequences (1-based).
    SharedPoint { first: usize, second: usize, point: Point },
    /// A chain handed to the simple-chain hull is not simple.
    NotSimple,
    /// The hull does not lie strictly on the requested side of the point.
    WrongSide,
    /// The separator does not separate the two hulls.
    NotSeparated,
    /// The hulls overlap in x, so there is no left-to-right common tangent.
    NoCommonTangent,
    /// An empty hull was given where a vertex is needed.
    EmptyHull,
}

impl fmt::Display for HullError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HullError::NoSequences => f.write_str("at least one sequence is required"),
            HullError::SharedPoint { first, second, point } => {
                write!(f, "point {point} occurs in sequences {first} and {second}")
            }
            HullError::NotSimple => f.write_str("chain is not simple"),
            HullError::WrongSide => f.write_str("hull is not strictly on the given side of the point"),
            HullError::NotSeparated => f.write_str("separator does not separate the hulls"),
            HullError::NoCommonTangent => f.write_str("hulls overlap in x"),
            HullError::EmptyHull => f.write_str("empty hull"),
        }
    }
}

impl core::error::Error for HullError {}

/// Upper hull of an arbitrary point list: deduplicate, partition into simple
/// chains, hull each chain, merge with Quick Union Hull.
pub fn synergistic_upper_hull(points: &[Point]) -> (UpperHullSeq, CostReport) {
    let (out, _, report) = synergistic_upper_hull_certified(points);
    (out, report)
}

/// As [`synergistic_upper_hull`], also returning the chain hulls and the
/// certificate of the merge step.
pub fn synergistic_upper_hull_certified(
    points: &[Point],
) -> (UpperHullSeq, (Vec<UpperHullSeq>, HullCertificate), CostReport) {
    let mut counter = ProbeCounter::new();
    let pts = counter.in_phase(Phase::Dedup, |c| dedup(points, c));
    let part = counter.in_phase(Phase::Partition, |c| partition_simple_chains(&pts, c));
    let hulls: Vec<UpperHullSeq> = counter.in_phase(Phase::Local, |c| {
        part.chains
            .iter()
            .map(|r| chain::melkman(&pts[r.clone()], c).0)
            .collect()
    });
    let (out, cert) = if hulls.is_empty() {
        (UpperHullSeq::default(), HullCertificate::default())
    } else {
        let (out, refs) = counter.in_phase(Phase::Merge, |c| quick_union::run(&hulls, c));
        let cert = counter.in_phase(Phase::Certify, |c| certificate::certify(&hulls, &refs, c));
        (out, cert)
    };
    let report = CostReport {
        n: pts.len(),
        h: out.len(),
        sigma: 0,
        kappa: part.kappa,
        rho: hulls.len(),
        beta: cert.block_count(),
        delta: cert.length(),
        m_list: cert.m_list(),
        entropy: entropy_bits(&part.sizes),
        sizes: part.sizes,
        level_counts: Vec::new(),
        counter,
        seed: None,
    };
    (out, (hulls, cert), report)
}

/// Convex hull as a counterclockwise vertex list starting at the leftmost
/// (lowest on ties) vertex, without repeated extreme vertices. Collinear
/// inputs give their two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let (upper, _) = synergistic_upper_hull(points);
    let mirrored: Vec<Point> = points.iter().map(|p| p.mirror_y()).collect();
    let (lower_m, _) = synergistic_upper_hull(&mirrored);
    let lower: Vec<Point> = lower_m.points().iter().map(|p| p.mirror_y()).collect();
    let upper = upper.points();
    if upper.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<Point> = lower.clone();
    // Walk the upper hull right to left, skipping shared extremes.
    for &p in upper.iter().rev() {
        if Some(&p) != out.last() && Some(&p) != out.first() {
            out.push(p);
        }
    }
    out
}
