use alloc::vec::Vec;
use core::ops::Range;

use super::Staircase;
use crate::geom::{Point, ProbeCounter};

/// One smooth run: its input positions (0-based, half-open) and its maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothRun {
    pub range: Range<usize>,
    pub staircase: Staircase,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SmoothDecomposition {
    pub runs: Vec<SmoothRun>,
    pub sigma: usize,
}

enum Step {
    Dominated,
    NewTip,
    Break,
}

fn step(tip: Point, q: Point, counter: &mut ProbeCounter) -> Step {
    if counter.dominates(tip, q) {
        Step::Dominated
    } else if counter.cmp(q.x, tip.x).is_gt() && !counter.dominates(q, tip) {
        Step::NewTip
    } else {
        Step::Break
    }
}

/// True iff the greedy scan (tip `p`; `q` continues when `p` dominates it, or
/// becomes the new tip when it lies right of `p` without dominating it)
/// consumes the whole list.
pub fn validate_smooth(points: &[Point]) -> bool {
    let mut c = ProbeCounter::new();
    let Some(&first) = points.first() else { return true };
    let mut tip = first;
    for &q in &points[1..] {
        match step(tip, q, &mut c) {
            Step::Dominated => {}
            Step::NewTip => tip = q,
            Step::Break => return false,
        }
    }
    true
}

/// Greedy partition into maximal smooth prefixes, each with its staircase.
/// At most three predicates per point.
pub fn decompose_smooth(points: &[Point], counter: &mut ProbeCounter) -> SmoothDecomposition {
    let mut runs = Vec::new();
    let mut start = 0;
    while start < points.len() {
        let mut tips = alloc::vec![points[start]];
        let mut end = start + 1;
        while end < points.len() {
            let tip = *tips.last().unwrap();
            match step(tip, points[end], counter) {
                Step::Dominated => {}
                Step::NewTip => tips.push(points[end]),
                Step::Break => break,
            }
            end += 1;
        }
        runs.push(SmoothRun { range: start..end, staircase: Staircase::from_vec_unchecked(tips) });
        start = end;
    }
    let sigma = runs.len();
    SmoothDecomposition { runs, sigma }
}

/// Maxima of the union of two staircases in `O(|a| + |b|)` comparisons.
pub fn merge_two_staircases(a: &Staircase, b: &Staircase, counter: &mut ProbeCounter) -> Staircase {
    let (a, b) = (a.points(), b.points());
    let (mut i, mut j) = (a.len(), b.len());
    let mut rev = Vec::with_capacity(a.len() + b.len());
    let mut best_y: Option<i64> = None;
    // Right to left; among equal x the higher point first.
    while i > 0 || j > 0 {
        let take_a = if i == 0 {
            false
        } else if j == 0 {
            true
        } else {
            counter.cmp((a[i - 1].x, a[i - 1].y), (b[j - 1].x, b[j - 1].y)).is_ge()
        };
        let p = if take_a {
            i -= 1;
            a[i]
        } else {
            j -= 1;
            b[j]
        };
        let keep = match best_y {
            None => true,
            Some(y) => counter.cmp(p.y, y).is_gt(),
        };
        if keep {
            best_y = Some(p.y);
            rev.push(p);
        }
    }
    rev.reverse();
    Staircase::from_vec_unchecked(rev)
}
