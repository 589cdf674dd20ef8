//! Brute-force references. Slow on purpose; they share no code path with the
//! algorithms they check beyond the exact predicates.

use alloc::vec::Vec;
use core::fmt;

use crate::geom::{dominates, orient, Point, ProbeCounter, Slope};
use crate::report::entropy_bits;
use crate::maxima::{
    validate_smooth, verify_maxima_certificate, BlockRef, MaximaArgument, MaximaCertificate, Staircase,
};

/// An exhaustive oracle was called beyond its size guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub limit: usize,
    pub got: usize,
}

impl fmt::Display for SizeGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exhaustive oracle limited to {} points, got {}", self.limit, self.got)
    }
}

impl core::error::Error for SizeGuard {}

fn guard(limit: usize, got: usize) -> Result<(), SizeGuard> {
    if got > limit {
        Err(SizeGuard { limit, got })
    } else {
        Ok(())
    }
}

fn distinct(points: &[Point]) -> Vec<Point> {
    let mut v = points.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Maxima by testing every pair, sorted by x.
pub fn brute_maxima(points: &[Point]) -> Staircase {
    brute_maxima_counted(points, &mut ProbeCounter::new())
}

/// [`brute_maxima`] charging each dominance test to `counter`.
pub fn brute_maxima_counted(points: &[Point], counter: &mut ProbeCounter) -> Staircase {
    let pts = distinct(points);
    let max: Vec<Point> = pts.iter().copied().filter(|&p| !pts.iter().any(|&q| counter.dominates(q, p))).collect();
    Staircase::new(max).expect("undominated points form a staircase")
}

/// Strict upper hull vertices, left to right.
///
/// `p` is a vertex iff some non-vertical line through `p` has every other
/// point strictly below it: every point straight below `p`, and the steepest
/// slope from `p` to a point on its right smaller than the shallowest slope
/// from a point on its left to `p`.
pub fn brute_upper_hull(points: &[Point]) -> Vec<Point> {
    brute_upper_hull_counted(points, &mut ProbeCounter::new())
}

/// [`brute_upper_hull`] charging one unit per point pair examined.
pub fn brute_upper_hull_counted(points: &[Point], counter: &mut ProbeCounter) -> Vec<Point> {
    let pts = distinct(points);
    pts.iter()
        .copied()
        .filter(|&p| {
            let mut to_right: Option<Slope> = None;
            let mut from_left: Option<Slope> = None;
            for &q in &pts {
                counter.tick();
                if q.x == p.x {
                    if q.y > p.y {
                        return false;
                    }
                } else if q.x > p.x {
                    let m = Slope::of(p, q);
                    to_right = Some(to_right.map_or(m, |r| r.max(m)));
                } else {
                    let m = Slope::of(q, p);
                    from_left = Some(from_left.map_or(m, |l| l.min(m)));
                }
            }
            match (to_right, from_left) {
                (Some(r), Some(l)) => r < l,
                _ => true,
            }
        })
        .collect()
}

fn on_segment(a: Point, b: Point, q: Point) -> bool {
    orient(a, b, q) == 0 && a.x.min(b.x) <= q.x && q.x <= a.x.max(b.x) && a.y.min(b.y) <= q.y && q.y <= a.y.max(b.y)
}

fn closed_segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    (o1 * o2 < 0 && o3 * o4 < 0) || on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Simplicity by testing every pair of segments.
pub fn brute_is_simple(points: &[Point]) -> bool {
    let m = points.len();
    if m >= 2 && points.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for i in 0..m.saturating_sub(1) {
        for j in i + 1..m - 1 {
            let (a, b, c, d) = (points[i], points[i + 1], points[j], points[j + 1]);
            if j == i + 1 {
                // Shared vertex b == c: anything more is an overlap.
                if on_segment(a, b, d) || on_segment(c, d, a) {
                    return false;
                }
            } else if closed_segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Smallest entropy `H(n_1, ..., n_k)` (bits) over all partitions into
/// consecutive simple chains (`n <= 16`).
pub fn min_entropy_simple_partition(points: &[Point]) -> Result<f64, SizeGuard> {
    let n = points.len();
    guard(16, n)?;
    if n == 0 {
        return Ok(0.0);
    }
    let simple: Vec<Vec<bool>> =
        (0..n).map(|i| (0..=n).map(|j| j > i && brute_is_simple(&points[i..j])).collect()).collect();
    let mut best = f64::INFINITY;
    // Bit t of `cuts` set: a chain ends after point t.
    for cuts in 0u32..1 << (n - 1) {
        let mut sizes = Vec::new();
        let mut start = 0;
        let mut ok = true;
        for end in 1..=n {
            if end == n || cuts >> (end - 1) & 1 == 1 {
                if !simple[start].get(end).copied().unwrap_or(false) {
                    ok = false;
                    break;
                }
                sizes.push(end - start);
                start = end;
            }
        }
        if ok {
            best = best.min(entropy_bits(&sizes));
        }
    }
    Ok(best)
}

/// Fewest consecutive pieces each passing [`validate_smooth`] (`n <= 12`).
pub fn min_smooth_partition(points: &[Point]) -> Result<usize, SizeGuard> {
    guard(12, points.len())?;
    let n = points.len();
    // best[i]: fewest pieces covering the first i points.
    let mut best = alloc::vec![usize::MAX; n + 1];
    best[0] = 0;
    for end in 1..=n {
        for start in 0..end {
            if best[start] != usize::MAX && validate_smooth(&points[start..end]) {
                best[end] = best[end].min(best[start] + 1);
            }
        }
    }
    Ok(best[n])
}

/// Fewest distinct argument points over all certificates the verifier
/// accepts (total points `<= 6`).
///
/// Candidates: every subset of positions taken as output, every way of
/// cutting it into contiguous blocks, and every set of domination subjects,
/// each subject covering the maximal runs of positions it dominates.
/// Maximality arguments carry no witnesses (witnesses only add conditions).
pub fn min_certificate_length_exhaustive(seqs: &[Staircase]) -> Result<usize, SizeGuard> {
    let total: usize = seqs.iter().map(|s| s.len()).sum();
    guard(6, total)?;
    if total == 0 {
        return Ok(0);
    }
    let all: Vec<(usize, usize, Point)> = seqs
        .iter()
        .enumerate()
        .flat_map(|(k, s)| s.points().iter().enumerate().map(move |(i, &p)| (k, i, p)))
        .collect();
    let mut counter = ProbeCounter::new();
    let mut best = usize::MAX;

    for out_mask in 1u32..(1 << total) {
        let mut out: Vec<usize> = (0..total).filter(|&t| out_mask >> t & 1 == 1).collect();
        out.sort_by_key(|&t| all[t].2.x);
        // Adjacent output points that may share a block.
        let joinable: Vec<usize> = (0..out.len().saturating_sub(1))
            .filter(|&j| {
                let (a, b) = (all[out[j]], all[out[j + 1]]);
                a.0 == b.0 && a.1 + 1 == b.1
            })
            .collect();
        for join_mask in 0u32..(1 << joinable.len()) {
            let mut blocks: Vec<BlockRef> = Vec::new();
            let mut ends: Vec<usize> = Vec::new();
            let mut start = 0;
            for j in 0..out.len() {
                let join = joinable.iter().position(|&q| q == j).is_some_and(|bit| join_mask >> bit & 1 == 1);
                if !join {
                    let (k, lo, _) = all[out[start]];
                    let (_, hi, _) = all[out[j]];
                    blocks.push(BlockRef::new(k + 1, lo + 1, hi + 1));
                    ends.push(out[start]);
                    ends.push(out[j]);
                    start = j + 1;
                }
            }
            ends.sort_unstable();
            ends.dedup();
            for subj_mask in 0u32..(1 << total) {
                let extra = (0..total).filter(|&t| subj_mask >> t & 1 == 1 && !ends.contains(&t)).count();
                if ends.len() + extra >= best {
                    continue;
                }
                let mut cert = MaximaCertificate::default();
                for &b in &blocks {
                    cert.arguments.push(MaximaArgument::maximality(b, Vec::new()));
                    cert.output_blocks.push(b);
                }
                let mut usable = true;
                for t in (0..total).filter(|&t| subj_mask >> t & 1 == 1) {
                    let (sk, si, sp) = all[t];
                    let mut witnesses = Vec::new();
                    for (k, s) in seqs.iter().enumerate() {
                        let mut i = 0;
                        while i < s.len() {
                            let covered = |i: usize| {
                                out_mask >> index_of(&all, k, i) & 1 == 0 && dominates(sp, s[i])
                            };
                            if covered(i) {
                                let lo = i;
                                while i + 1 < s.len() && covered(i + 1) {
                                    i += 1;
                                }
                                witnesses.push(BlockRef::new(k + 1, lo + 1, i + 1));
                            }
                            i += 1;
                        }
                    }
                    if witnesses.is_empty() {
                        usable = false;
                        break;
                    }
                    cert.arguments.push(MaximaArgument::domination(sk + 1, si + 1, witnesses));
                }
                if usable && verify_maxima_certificate(seqs, &cert, &mut counter).is_valid() {
                    best = best.min(cert.length());
                }
            }
        }
    }
    Ok(best)
}

fn index_of(all: &[(usize, usize, Point)], k: usize, i: usize) -> usize {
    all.iter().position(|&(a, b, _)| a == k && b == i).unwrap()
}
