//! Simplicity testing and the doubling chain partition.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use crate::geom::{Point, ProbeCounter};
use crate::report::entropy_bits;

/// True iff non-adjacent segments of the chain are disjoint and adjacent
/// segments meet only at their shared vertex.
pub fn is_simple_chain(points: &[Point]) -> bool {
    simple_counted(points, &mut ProbeCounter::new())
}

fn dot_sign(o: Point, a: Point, b: Point) -> i8 {
    let d = (a.x - o.x) as i128 * (b.x - o.x) as i128 + (a.y - o.y) as i128 * (b.y - o.y) as i128;
    d.signum() as i8
}

/// `q` on the closed segment `a b`, given that the three are collinear.
fn within(a: Point, b: Point, q: Point) -> bool {
    a.x.min(b.x) <= q.x && q.x <= a.x.max(b.x) && a.y.min(b.y) <= q.y && q.y <= a.y.max(b.y)
}

fn segments_meet(a: Point, b: Point, c: Point, d: Point, counter: &mut ProbeCounter) -> bool {
    let o1 = counter.orient(a, b, c);
    let o2 = counter.orient(a, b, d);
    let o3 = counter.orient(c, d, a);
    let o4 = counter.orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(a, b, c)) || (o2 == 0 && within(a, b, d)) || (o3 == 0 && within(c, d, a)) || (o4 == 0 && within(c, d, b))
}

/// Counted simplicity test: a repeated-vertex check, a fold-back check for
/// adjacent segments, then a sweep over the segments in `(x, y)` order that
/// tests newly adjacent segments for intersection.
pub(crate) fn simple_counted(points: &[Point], counter: &mut ProbeCounter) -> bool {
    let m = points.len();
    if m <= 2 {
        return m < 2 || points[0] != points[1];
    }
    let mut seen = hashbrown::HashSet::with_capacity(m);
    for &p in points {
        counter.tick();
        if !seen.insert(p) {
            return false;
        }
    }
    for w in points.windows(3) {
        if counter.orient(w[0], w[1], w[2]) == 0 && dot_sign(w[1], w[0], w[2]) > 0 {
            return false;
        }
    }
    Sweep::new(points, counter).run()
}

struct Sweep<'c> {
    /// Segment `i` joins `pts[i]` and `pts[i + 1]`; `ends[i]` is (left, right) in `(x, y)` order.
    ends: Vec<(Point, Point)>,
    status: Vec<usize>,
    counter: &'c mut ProbeCounter,
}

impl<'c> Sweep<'c> {
    fn new(pts: &[Point], counter: &'c mut ProbeCounter) -> Self {
        let ends = pts.windows(2).map(|w| if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) }).collect();
        Sweep { ends, status: Vec::new(), counter }
    }

    fn adjacent(i: usize, j: usize) -> bool {
        i.abs_diff(j) == 1
    }

    fn meet(&mut self, i: usize, j: usize) -> bool {
        let (a, b) = self.ends[i];
        let (c, d) = self.ends[j];
        segments_meet(a, b, c, d, self.counter)
    }

    /// Order of point `p` against status segment `t` at the sweep position `p`:
    /// `Greater` when `p` is above `t`. `Equal` means `p` lies on `t`.
    fn point_vs(&mut self, p: Point, t: usize) -> Ordering {
        let (l, r) = self.ends[t];
        let o = self.counter.orient(l, r, p);
        if l.x == r.x {
            // A vertical segment in the status spans the sweep line from l up to r.
            return if p.y > r.y { Ordering::Greater } else if p.y < l.y { Ordering::Less } else { Ordering::Equal };
        }
        o.cmp(&0)
    }

    /// Order of segment `s` (starting at `p`) against `t`, for insertion.
    fn insert_vs(&mut self, s: usize, t: usize) -> Ordering {
        let p = self.ends[s].0;
        let (tl, tr) = self.ends[t];
        if tl == p {
            // Both start at p: the one turning counterclockwise lies above.
            let sr = self.ends[s].1;
            return self.counter.orient(p, tr, sr).cmp(&0);
        }
        self.point_vs(p, t)
    }

    /// Checks `s` against the nearest segment above (below) status slot
    /// `from` that is not a chain neighbor of `s`.
    fn probe(&mut self, from: usize, s: usize, up: bool) -> bool {
        let mut k = from;
        loop {
            let next = if up { k.checked_add(1).filter(|&n| n < self.status.len()) } else { k.checked_sub(1) };
            let Some(n) = next else { return false };
            let t = self.status[n];
            if t != s && !Self::adjacent(s, t) {
                return self.meet(s, t);
            }
            k = n;
        }
    }

    fn run(mut self) -> bool {
        let nseg = self.ends.len();
        // Events: (point, is_insert, segment); removals first at equal points.
        let mut events: Vec<(Point, bool, usize)> = Vec::with_capacity(2 * nseg);
        for (i, &(l, r)) in self.ends.iter().enumerate() {
            events.push((l, true, i));
            events.push((r, false, i));
        }
        let counter = &mut *self.counter;
        events.sort_unstable_by(|a, b| counter.cmp((a.0, a.1), (b.0, b.1)));
        for (p, insert, s) in events {
            if insert {
                // Binary search for the insertion slot.
                let (mut lo, mut hi) = (0usize, self.status.len());
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    let t = self.status[mid];
                    match self.insert_vs(s, t) {
                        Ordering::Greater => lo = mid + 1,
                        Ordering::Less => hi = mid,
                        Ordering::Equal => {
                            if !Self::adjacent(s, t) {
                                return false;
                            }
                            lo = mid + 1;
                        }
                    }
                }
                self.status.insert(lo, s);
                if self.probe(lo, s, true) || self.probe(lo, s, false) {
                    return false;
                }
            } else {
                let Some(idx) = self.locate(p, s) else { return false };
                self.status.remove(idx);
                if idx > 0 && idx < self.status.len() {
                    let (a, b) = (self.status[idx - 1], self.status[idx]);
                    if Self::adjacent(a, b) {
                        if self.probe(idx, a, true) || self.probe(idx - 1, b, false) {
                            return false;
                        }
                    } else if self.meet(a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Position of segment `s` in the status, searched at its right end `p`.
    fn locate(&mut self, p: Point, s: usize) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.status.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let t = self.status[mid];
            if t == s {
                return Some(mid);
            }
            match self.point_vs(p, t) {
                Ordering::Greater => lo = mid + 1,
                Ordering::Less => hi = mid,
                Ordering::Equal => break,
            }
        }
        // Equal block around the search point: scan outward.
        let centre = lo.min(self.status.len().saturating_sub(1));
        let mut d = 0;
        while d <= self.status.len() {
            for k in [centre.checked_sub(d), centre.checked_add(d)].into_iter().flatten() {
                if k < self.status.len() && self.status[k] == s {
                    return Some(k);
                }
            }
            d += 1;
        }
        None
    }
}

/// A partition of a point sequence into consecutive simple chains.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChainPartition {
    /// 0-based half-open position ranges, in order.
    pub chains: Vec<Range<usize>>,
    pub kappa: usize,
    pub sizes: Vec<usize>,
    /// Entropy of `sizes` in bits.
    pub entropy: f64,
}

/// Doubling partition: from the current start `p_i`, test the prefixes
/// `p_i..p_(i+e)` for `e = 1, 2, 4, ...` edges while they stay simple and emit
/// the last simple one. When `p_(i+e)` would lie past the end, the whole
/// remaining suffix is emitted instead if it is simple.
pub fn partition_simple_chains(points: &[Point], counter: &mut ProbeCounter) -> ChainPartition {
    let n = points.len();
    let mut chains = Vec::new();
    let mut i = 0;
    while i < n {
        // Edges of the last simple prefix.
        let mut good = 0usize;
        let mut edges = 1usize;
        loop {
            if i + edges >= n {
                let rest = n - 1 - i;
                if rest > good && simple_counted(&points[i..n], counter) {
                    good = rest;
                }
                break;
            }
            if !simple_counted(&points[i..=i + edges], counter) {
                break;
            }
            good = edges;
            edges *= 2;
        }
        chains.push(i..i + good + 1);
        i += good + 1;
    }
    let sizes: Vec<usize> = chains.iter().map(|r| r.len()).collect();
    ChainPartition { kappa: chains.len(), entropy: entropy_bits(&sizes), sizes, chains }
}
