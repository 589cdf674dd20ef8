//! Simple-chain hulls (Melkman), pairwise hull merging and the recursive
//! halving baseline.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::simple::simple_counted;
use super::{HullError, LowerHullSeq, UpperHullSeq};
use crate::geom::{dedup, Phase, Point, ProbeCounter};
use crate::report::CostReport;

/// Upper and lower hull of a simple chain in `O(m)` predicates.
pub fn simple_chain_hull(
    points: &[Point],
    counter: &mut ProbeCounter,
) -> Result<(UpperHullSeq, LowerHullSeq), HullError> {
    if !simple_counted(points, counter) {
        return Err(HullError::NotSimple);
    }
    Ok(melkman(points, counter))
}

fn strictly_between(a: Point, b: Point, q: Point) -> bool {
    let d = (q.x - a.x) as i128 * (b.x - q.x) as i128 + (q.y - a.y) as i128 * (b.y - q.y) as i128;
    d > 0
}

/// Melkman's deque hull. The chain must be simple.
pub(crate) fn melkman(points: &[Point], counter: &mut ProbeCounter) -> (UpperHullSeq, LowerHullSeq) {
    let n = points.len();
    if n == 0 {
        return Default::default();
    }
    let p0 = points[0];
    let Some(k) = (2..n).find(|&k| counter.orient(p0, points[1], points[k]) != 0) else {
        // Collinear: a simple chain on a line runs monotonically along it.
        let (lo, hi) = if p0 < points[n - 1] { (p0, points[n - 1]) } else { (points[n - 1], p0) };
        return if lo.x == hi.x {
            (UpperHullSeq(alloc::vec![hi]), LowerHullSeq(alloc::vec![lo]))
        } else {
            (UpperHullSeq(alloc::vec![lo, hi]), LowerHullSeq(alloc::vec![lo, hi]))
        };
    };
    let (a, b, c) = (p0, points[k - 1], points[k]);
    // Counterclockwise, with the newest chain point at both ends.
    let mut dq: VecDeque<Point> =
        if counter.orient(a, b, c) > 0 { [c, a, b, c].into() } else { [c, b, a, c].into() };
    for &v in &points[k + 1..] {
        let t = dq.len() - 1;
        let o_top = counter.orient(dq[t - 1], dq[t], v);
        let o_bot = counter.orient(dq[0], dq[1], v);
        let inside = (o_top > 0 && o_bot > 0)
            || (o_top == 0 && o_bot >= 0 && strictly_between(dq[t - 1], dq[t], v))
            || (o_bot == 0 && o_top >= 0 && strictly_between(dq[0], dq[1], v));
        if inside {
            continue;
        }
        while dq.len() >= 2 && counter.orient(dq[dq.len() - 2], dq[dq.len() - 1], v) <= 0 {
            dq.pop_back();
        }
        dq.push_back(v);
        while dq.len() >= 3 && counter.orient(v, dq[0], dq[1]) <= 0 {
            dq.pop_front();
        }
        dq.push_front(v);
    }
    dq.pop_back();
    split_ccw(dq.into(), counter)
}

/// Splits a strictly convex counterclockwise polygon into upper and lower hulls.
fn split_ccw(poly: Vec<Point>, counter: &mut ProbeCounter) -> (UpperHullSeq, LowerHullSeq) {
    let m = poly.len();
    let arg = |counter: &mut ProbeCounter, better: &dyn Fn(Point, Point) -> bool| {
        let mut best = 0;
        for i in 1..m {
            counter.tick();
            if better(poly[i], poly[best]) {
                best = i;
            }
        }
        best
    };
    let left_top = arg(counter, &|p, q| (p.x, -p.y) < (q.x, -q.y));
    let left_bot = arg(counter, &|p, q| (p.x, p.y) < (q.x, q.y));
    let right_top = arg(counter, &|p, q| (p.x, p.y) > (q.x, q.y));
    let right_bot = arg(counter, &|p, q| (p.x, -p.y) > (q.x, -q.y));
    let walk = |from: usize, to: usize| {
        let mut v = Vec::new();
        let mut i = from;
        loop {
            v.push(poly[i]);
            if i == to {
                break;
            }
            i = (i + 1) % m;
        }
        v
    };
    let mut upper = walk(right_top, left_top);
    upper.reverse();
    let lower = walk(left_bot, right_bot);
    (UpperHullSeq::from_vec_unchecked(upper), LowerHullSeq::from_vec_unchecked(lower))
}

/// Upper hull of the union of two upper hulls in `O(|a| + |b|)` predicates.
pub fn merge_two_upper_hulls(a: &UpperHullSeq, b: &UpperHullSeq, counter: &mut ProbeCounter) -> UpperHullSeq {
    merge_upper(a.points(), b.points(), counter)
}

fn merge_upper(a: &[Point], b: &[Point], counter: &mut ProbeCounter) -> UpperHullSeq {
    let (mut i, mut j) = (0, 0);
    let mut h: Vec<Point> = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        let p = if j == b.len() || (i < a.len() && counter.cmp((a[i].x, a[i].y), (b[j].x, b[j].y)).is_lt()) {
            i += 1;
            a[i - 1]
        } else {
            j += 1;
            b[j - 1]
        };
        if let Some(&last) = h.last() {
            if last.x == p.x {
                if p.y <= last.y {
                    continue;
                }
                h.pop();
            }
        }
        while h.len() >= 2 && counter.orient(h[h.len() - 2], h[h.len() - 1], p) >= 0 {
            h.pop();
        }
        h.push(p);
    }
    UpperHullSeq::from_vec_unchecked(h)
}

fn mirror(points: &[Point]) -> Vec<Point> {
    points.iter().map(|p| p.mirror_y()).collect()
}

/// Recursive halving baseline: a simple chain is hulled directly, anything
/// else is split in half, both halves are solved and the hulls merged.
/// `level_counts[d]` holds the predicates charged at recursion depth `d`.
pub fn levcopoulos_hull(points: &[Point]) -> (UpperHullSeq, LowerHullSeq, CostReport) {
    let mut counter = ProbeCounter::new();
    let pts = counter.in_phase(Phase::Dedup, |c| dedup(points, c));
    let mut levels: Vec<u64> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    let (upper, lower) = if pts.is_empty() {
        Default::default()
    } else {
        halve(&pts, 0, &mut counter, &mut levels, &mut sizes)
    };
    let report = CostReport {
        n: pts.len(),
        h: upper.len(),
        kappa: sizes.len(),
        entropy: crate::report::entropy_bits(&sizes),
        sizes,
        level_counts: levels,
        counter,
        ..CostReport::default()
    };
    (upper, lower, report)
}

fn halve(
    pts: &[Point],
    depth: usize,
    counter: &mut ProbeCounter,
    levels: &mut Vec<u64>,
    sizes: &mut Vec<usize>,
) -> (UpperHullSeq, LowerHullSeq) {
    if levels.len() <= depth {
        levels.push(0);
    }
    let before = counter.total();
    let simple = counter.in_phase(Phase::Partition, |c| simple_counted(pts, c));
    if simple {
        let out = counter.in_phase(Phase::Local, |c| melkman(pts, c));
        levels[depth] += counter.total() - before;
        sizes.push(pts.len());
        return out;
    }
    levels[depth] += counter.total() - before;
    let mid = pts.len().div_ceil(2);
    let (ua, la) = halve(&pts[..mid], depth + 1, counter, levels, sizes);
    let (ub, lb) = halve(&pts[mid..], depth + 1, counter, levels, sizes);
    let before = counter.total();
    let out = counter.in_phase(Phase::Merge, |c| {
        let upper = merge_upper(ua.points(), ub.points(), c);
        let lower = merge_upper(&mirror(la.points()), &mirror(lb.points()), c);
        (upper, LowerHullSeq::from_mirrored_upper(lower))
    });
    levels[depth] += counter.total() - before;
    out
}
