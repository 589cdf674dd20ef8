//! Exact planar primitives, the probe counter and doubling search.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Range;

/// Largest coordinate magnitude for which every predicate is exact.
pub const COORD_LIMIT: i64 = 1 << 31;

/// A planar point with integer coordinates, `|x|, |y| <= 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// True when both coordinates are inside the exactness bound.
    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }

    /// Reflection through the x axis; turns lower hulls into upper hulls.
    pub fn mirror_y(self) -> Self {
        Point::new(self.x, -self.y)
    }

    /// Reflection through the y axis; reverses left and right.
    pub fn mirror_x(self) -> Self {
        Point::new(-self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomError {
    /// `cmp_slopes` called with an edge whose x extent is not positive.
    VerticalOrReversedEdge,
    /// A line was requested through two equal points.
    DegenerateLine,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::VerticalOrReversedEdge => f.write_str("edge is vertical or reversed in x"),
            GeomError::DegenerateLine => f.write_str("line through two equal points"),
        }
    }
}

impl core::error::Error for GeomError {}

fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ax, ay) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (bx, by) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ax * by - ay * bx
}

/// Sign of `(q - p) x (r - p)`: `+1` when `r` is left of `p -> q`.
pub fn orient(p: Point, q: Point, r: Point) -> i8 {
    cross(p, q, r).signum() as i8
}

/// `p` dominates `q`: both coordinates at least as large, and `p != q`.
pub fn dominates(p: Point, q: Point) -> bool {
    p.x >= q.x && p.y >= q.y && p != q
}

/// Compares the slope of `p -> q` with the slope of `r -> s`.
pub fn cmp_slopes(p: Point, q: Point, r: Point, s: Point) -> Result<Ordering, GeomError> {
    if q.x <= p.x || s.x <= r.x {
        return Err(GeomError::VerticalOrReversedEdge);
    }
    Ok(Slope::of(p, q).cmp(&Slope::of(r, s)))
}

/// `-1` when `q` is strictly below the line through `a` and `b`, `0` on it, `+1` above.
///
/// For a vertical line "below" is taken as the right-hand side of the upward direction.
pub fn side_of_line(a: Point, b: Point, q: Point) -> Result<i8, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateLine);
    }
    let (l, r) = if (a.x, a.y) < (b.x, b.y) { (a, b) } else { (b, a) };
    Ok(orient(l, r, q))
}

/// An exact rational slope `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Slope {
    pub num: i128,
    pub den: i128,
}

impl Slope {
    /// Slope of the segment from `p` to `q`; the points must differ in x.
    pub fn of(p: Point, q: Point) -> Slope {
        let dx = (q.x - p.x) as i128;
        let dy = (q.y - p.y) as i128;
        debug_assert!(dx != 0, "vertical segment has no slope");
        if dx < 0 {
            Slope { num: -dy, den: -dx }
        } else {
            Slope { num: dy, den: dx }
        }
    }

    pub fn new(num: i128, den: i128) -> Slope {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            Slope { num: -num, den: -den }
        } else {
            Slope { num, den }
        }
    }

    /// `y - slope * x`, scaled by `den` so it stays an integer.
    pub fn intercept_key(&self, p: Point) -> i128 {
        p.y as i128 * self.den - self.num * p.x as i128
    }
}

impl PartialEq for Slope {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Slope {}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Algorithm phase a predicate is charged to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Dedup,
    Partition,
    Local,
    Merge,
    Certify,
    Verify,
    Brute,
    Other,
}

impl Phase {
    pub const ALL: [Phase; 8] = [
        Phase::Dedup,
        Phase::Partition,
        Phase::Local,
        Phase::Merge,
        Phase::Certify,
        Phase::Verify,
        Phase::Brute,
        Phase::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Dedup => "dedup",
            Phase::Partition => "partition",
            Phase::Local => "local",
            Phase::Merge => "merge",
            Phase::Certify => "certify",
            Phase::Verify => "verify",
            Phase::Brute => "brute",
            Phase::Other => "other",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Counts predicate evaluations, split by phase.
///
/// One counter belongs to one running computation; parallel branches use
/// their own counters and [`ProbeCounter::merge`] them afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeCounter {
    counts: [u64; 8],
    current: Phase,
}

impl Default for ProbeCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl ProbeCounter {
    pub fn new() -> Self {
        ProbeCounter { counts: [0; 8], current: Phase::Other }
    }

    pub fn phase(&self) -> Phase {
        self.current
    }

    /// Switches the phase new charges go to; returns the previous phase.
    pub fn set_phase(&mut self, phase: Phase) -> Phase {
        core::mem::replace(&mut self.current, phase)
    }

    /// Runs `f` with charges going to `phase`, then restores the old phase.
    pub fn in_phase<T>(&mut self, phase: Phase, f: impl FnOnce(&mut Self) -> T) -> T {
        let prev = self.set_phase(phase);
        let out = f(self);
        self.set_phase(prev);
        out
    }

    #[inline]
    pub fn tick(&mut self) {
        self.counts[self.current.index()] += 1;
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        self.counts[self.current.index()] += n;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, phase: Phase) -> u64 {
        self.counts[phase.index()]
    }

    /// Non-zero phases in declaration order.
    pub fn phase_counts(&self) -> impl Iterator<Item = (Phase, u64)> + '_ {
        Phase::ALL.iter().map(|&p| (p, self.count(p))).filter(|&(_, c)| c > 0)
    }

    /// Adds another counter's charges into this one (associative, commutative).
    pub fn merge(&mut self, other: &ProbeCounter) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    pub fn orient(&mut self, p: Point, q: Point, r: Point) -> i8 {
        self.tick();
        orient(p, q, r)
    }

    pub fn dominates(&mut self, p: Point, q: Point) -> bool {
        self.tick();
        dominates(p, q)
    }

    pub fn cmp_slopes(&mut self, p: Point, q: Point, r: Point, s: Point) -> Result<Ordering, GeomError> {
        self.tick();
        cmp_slopes(p, q, r, s)
    }

    pub fn side_of_line(&mut self, a: Point, b: Point, q: Point) -> Result<i8, GeomError> {
        self.tick();
        side_of_line(a, b, q)
    }

    /// A charged integer key comparison.
    pub fn cmp<T: Ord>(&mut self, a: T, b: T) -> Ordering {
        self.tick();
        a.cmp(&b)
    }
}

/// Removes exact duplicates, keeping first occurrences in order.
/// Charges one probe per point (a hash-set membership test).
pub fn dedup(points: &[Point], counter: &mut ProbeCounter) -> alloc::vec::Vec<Point> {
    let mut seen = hashbrown::HashSet::with_capacity(points.len());
    let mut out = alloc::vec::Vec::with_capacity(points.len());
    for &p in points {
        counter.tick();
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Which end(s) of the range a doubling search starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchFrom {
    Low,
    High,
    Both,
}

/// Finds the first index of `range` where the monotone `pred` holds
/// (`range.end` if none).
///
/// Every call of `pred` is charged one probe. The probe count is at most
/// `2 * ceil(log2(d + 2)) + 3`, where `d` is the distance of the answer from
/// the starting end (`answer - start` for `Low`, `end - answer` for `High`,
/// the smaller of the two for `Both`).
///
/// The gallop uses offsets `4^i - 1`; once a bracket is found, one extra probe
/// at offset `2 * 4^(i-1) - 1` recovers the resolution of a base-2 gallop
/// before bisecting.
pub fn doubling_search<F>(range: Range<usize>, from: SearchFrom, counter: &mut ProbeCounter, mut pred: F) -> usize
where
    F: FnMut(usize, &mut ProbeCounter) -> bool,
{
    let (lo, end) = (range.start, range.end);
    if end <= lo {
        return lo;
    }
    let n = end - lo;
    let mut probe = |i: usize, c: &mut ProbeCounter| {
        c.tick();
        pred(lo + i, c)
    };
    // Offsets relative to lo; `lo_f` is the last known false, `hi_t` the first known true.
    let mut lo_f: isize = -1;
    let mut hi_t: isize = n as isize;
    let near_low: bool;
    let mut rounds: u32 = 0;
    let use_low = matches!(from, SearchFrom::Low | SearchFrom::Both);
    let use_high = matches!(from, SearchFrom::High | SearchFrom::Both);
    loop {
        let o = gallop_offset(rounds);
        if use_low {
            let pos = o.min(hi_t - 1);
            if pos <= lo_f {
                near_low = true;
                break;
            }
            if probe(pos as usize, counter) {
                hi_t = pos;
                near_low = true;
                break;
            }
            lo_f = pos;
        }
        if use_high {
            let pos = (n as isize - 1 - o).max(lo_f + 1);
            if pos >= hi_t {
                near_low = false;
                break;
            }
            if probe(pos as usize, counter) {
                hi_t = pos;
            } else {
                lo_f = pos;
                near_low = false;
                break;
            }
        }
        rounds += 1;
    }
    if rounds > 0 {
        let o = 2 * gallop_offset(rounds - 1) + 1;
        let pos = if near_low { o } else { n as isize - 1 - o };
        if lo_f < pos && pos < hi_t {
            if probe(pos as usize, counter) {
                hi_t = pos;
            } else {
                lo_f = pos;
            }
        }
    }
    while hi_t - lo_f > 1 {
        let mid = lo_f + (hi_t - lo_f) / 2;
        if probe(mid as usize, counter) {
            hi_t = mid;
        } else {
            lo_f = mid;
        }
    }
    lo + hi_t as usize
}

fn gallop_offset(round: u32) -> isize {
    // 4^round - 1, saturating well beyond any slice length.
    if round >= 31 {
        isize::MAX / 2
    } else {
        (1isize << (2 * round)) - 1
    }
}

/// Probe budget of [`doubling_search`] at distance `d`.
pub fn doubling_budget(d: usize) -> u64 {
    let v = d as u64 + 2;
    // ceil(log2(v))
    let ceil_log = 64 - (v - 1).leading_zeros() as u64;
    2 * ceil_log + 3
}
