//! Quick Union Hull.
//!
//! A subproblem is a set of position ranges plus the two output vertices
//! that bound it in x (either may be absent at the outer ends). Points on or
//! below the chord between those anchors are dropped first. The pivot `p` is
//! the vertex supporting the median slope of the middle edges; tangents from
//! `p` discard what lies under them, the output block around `p` in its own
//! sequence is extended edge by edge with doubling searches, and the two
//! sides recurse with the block ends as new anchors.

use alloc::vec::Vec;

use super::certificate::certify;
use super::tangent::{support, tangent_right};
use super::{HullCertificate, HullError, UpperHullSeq};
use crate::geom::{doubling_search, orient, Phase, Point, ProbeCounter, SearchFrom, Slope};

/// Upper hull of the union of the sequences, with a certificate.
pub fn quick_union_hull(
    seqs: &[UpperHullSeq],
    counter: &mut ProbeCounter,
) -> Result<(UpperHullSeq, HullCertificate), HullError> {
    if seqs.is_empty() {
        return Err(HullError::NoSequences);
    }
    crate::maxima::check_disjoint(seqs.iter().map(|s| s.points()))
        .map_err(|(first, second, point)| HullError::SharedPoint { first, second, point })?;
    let (out, refs) = run(seqs, counter);
    let cert = counter.in_phase(Phase::Certify, |c| certify(seqs, &refs, c));
    Ok((out, cert))
}

#[derive(Clone, Copy, Debug)]
struct Part {
    seq: usize,
    lo: usize,
    hi: usize,
}

impl Part {
    fn len(&self) -> usize {
        self.hi - self.lo
    }
}

struct Sub {
    parts: Vec<Part>,
    left: Option<Point>,
    right: Option<Point>,
}

enum Task {
    Solve(Sub),
    Emit(usize, usize, usize),
}

struct Ctx<'a> {
    real: &'a [Vec<Point>],
    mirror: &'a [Vec<Point>],
}

/// Output hull and the `(seq, pos)` (0-based) of each output vertex.
pub(crate) fn run(seqs: &[UpperHullSeq], counter: &mut ProbeCounter) -> (UpperHullSeq, Vec<(usize, usize)>) {
    let real: Vec<Vec<Point>> = seqs.iter().map(|s| s.points().to_vec()).collect();
    let mirror: Vec<Vec<Point>> =
        seqs.iter().map(|s| s.points().iter().rev().map(|p| p.mirror_x()).collect()).collect();
    let ctx = Ctx { real: &real, mirror: &mirror };
    let parts: Vec<Part> =
        real.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(k, s)| Part { seq: k, lo: 0, hi: s.len() }).collect();
    let mut refs = Vec::new();
    let mut stack = alloc::vec![Task::Solve(Sub { parts, left: None, right: None })];
    while let Some(task) = stack.pop() {
        match task {
            Task::Emit(seq, lo, hi) => refs.extend((lo..hi).map(|i| (seq, i))),
            Task::Solve(sub) => solve(&ctx, sub, counter, &mut stack),
        }
    }
    let pts = refs.iter().map(|&(k, i)| real[k][i]).collect();
    (UpperHullSeq::from_vec_unchecked(pts), refs)
}

fn above(a: Point, b: Point, q: Point, counter: &mut ProbeCounter) -> bool {
    counter.orient(a, b, q) > 0
}

fn solve(ctx: &Ctx, sub: Sub, counter: &mut ProbeCounter, stack: &mut Vec<Task>) {
    let Sub { mut parts, left, right } = sub;
    let real = ctx.real;

    // End-line step: only points strictly above the anchor chord can be vertices.
    if let (Some(l), Some(r)) = (left, right) {
        let m = Slope::of(l, r);
        parts = parts
            .into_iter()
            .filter_map(|p| {
                let s = &real[p.seq][p.lo..p.hi];
                let top = support(s, m, false, counter);
                if !above(l, r, s[top], counter) {
                    return None;
                }
                let first = doubling_search(0..top, SearchFrom::High, counter, |i, _| orient(l, r, s[i]) > 0);
                let end = doubling_search(top + 1..s.len(), SearchFrom::Low, counter, |i, _| orient(l, r, s[i]) <= 0);
                Some(Part { seq: p.seq, lo: p.lo + first, hi: p.lo + end })
            })
            .collect();
    }
    if parts.is_empty() {
        return;
    }

    if parts.iter().filter(|p| p.len() == 1).count() >= 2 {
        parts = pair_singletons(real, parts, left, right, counter);
    }

    if parts.len() == 1 {
        let p = parts[0];
        let s = &real[p.seq][p.lo..p.hi];
        let from = left.map_or(0, |l| tangent_right(l, s, counter));
        let to = right.map_or(s.len() - 1, |r| super::tangent::tangent_left(r, s, counter));
        debug_assert!(from <= to);
        stack.push(Task::Emit(p.seq, p.lo + from, p.lo + to + 1));
        return;
    }

    if parts.iter().all(|p| p.len() == 1) {
        finish_singletons(real, &parts, left, right, counter, stack);
        return;
    }

    // Step 1: median of the middle-edge slopes.
    let mut slopes: Vec<Slope> = parts
        .iter()
        .filter(|p| p.len() >= 2)
        .map(|p| {
            let e = (p.len() - 1).div_ceil(2);
            let s = &real[p.seq];
            Slope::of(s[p.lo + e - 1], s[p.lo + e])
        })
        .collect();
    let k = (slopes.len() - 1) / 2;
    let (_, &mut mu, _) = slopes.select_nth_unstable_by(k, |a, b| counter.cmp(*a, *b));

    // Step 2: the pivot, best over the sequences' supporting points.
    let pick = |counter: &mut ProbeCounter, slope: Slope| -> (usize, usize) {
        let mut best: Option<(usize, usize)> = None;
        for (idx, p) in parts.iter().enumerate() {
            let s = &real[p.seq];
            let pos = p.lo + support(&s[p.lo..p.hi], slope, false, counter);
            best = match best {
                None => Some((idx, pos)),
                Some((bi, bp)) => {
                    let (q, cur) = (s[pos], real[parts[bi].seq][bp]);
                    let key = |v: Point| (slope.intercept_key(v), -v.x);
                    if counter.cmp(key(q), key(cur)).is_gt() { Some((idx, pos)) } else { Some((bi, bp)) }
                }
            };
        }
        best.unwrap()
    };
    let (mut jdx, mut ppos) = pick(counter, mu);
    let value = mu.intercept_key(real[parts[jdx].seq][ppos]);
    let beaten = |a: Option<Point>, counter: &mut ProbeCounter| {
        a.is_some_and(|a| counter.cmp(mu.intercept_key(a), value).is_ge())
    };
    if beaten(left, counter) || beaten(right, counter) {
        (jdx, ppos) = match (left, right) {
            (Some(l), Some(r)) => pick(counter, Slope::of(l, r)),
            (Some(_), None) => extreme(real, &parts, counter, |p: &Part| p.hi - 1, |q: Point| (q.x, q.y)),
            (None, Some(_)) => extreme(real, &parts, counter, |p: &Part| p.lo, |q: Point| (-q.x, q.y)),
            (None, None) => unreachable!(),
        };
    }
    let j = parts[jdx];
    let pv = real[j.seq][ppos];

    // Step 3: split the other sequences at p's x; points straight below p go.
    let mut lefts: Vec<Part> = Vec::new();
    let mut rights: Vec<Part> = Vec::new();
    for (idx, part) in parts.iter().enumerate() {
        if idx == jdx {
            continue;
        }
        let s = &real[part.seq];
        let split = doubling_search(part.lo..part.hi, SearchFrom::Both, counter, |i, _| s[i].x >= pv.x);
        let after = if split < part.hi && s[split].x == pv.x { split + 1 } else { split };
        if part.lo < split {
            lefts.push(Part { seq: part.seq, lo: part.lo, hi: split });
        }
        if after < part.hi {
            rights.push(Part { seq: part.seq, lo: after, hi: part.hi });
        }
    }

    // Steps 4-5 on the right, then the mirror image on the left.
    let (e, rest_right) = extend(ctx.real, j.seq, ppos, j.hi, &rights, right, counter);
    let mj = real[j.seq].len();
    let mirrored_lefts: Vec<Part> =
        lefts.iter().map(|p| Part { seq: p.seq, lo: ctx.mirror[p.seq].len() - p.hi, hi: ctx.mirror[p.seq].len() - p.lo }).collect();
    let (ms, mrest) = extend(
        ctx.mirror,
        j.seq,
        mj - 1 - ppos,
        mj - j.lo,
        &mirrored_lefts,
        left.map(|l| l.mirror_x()),
        counter,
    );
    let s = mj - 1 - ms;
    let mut rest_left: Vec<Part> = mrest
        .into_iter()
        .map(|p| {
            let n = real[p.seq].len();
            Part { seq: p.seq, lo: n - p.hi, hi: n - p.lo }
        })
        .collect();

    if j.lo < s {
        rest_left.push(Part { seq: j.seq, lo: j.lo, hi: s });
    }
    let mut rest_right = rest_right;
    if e + 1 < j.hi {
        rest_right.push(Part { seq: j.seq, lo: e + 1, hi: j.hi });
    }
    let (first, last) = (real[j.seq][s], real[j.seq][e]);
    stack.push(Task::Solve(Sub { parts: rest_right, left: Some(last), right }));
    stack.push(Task::Emit(j.seq, s, e + 1));
    stack.push(Task::Solve(Sub { parts: rest_left, left, right: Some(first) }));
}

/// The part end point maximizing `key`, as `(part index, position)`.
fn extreme(
    real: &[Vec<Point>],
    parts: &[Part],
    counter: &mut ProbeCounter,
    end: impl Fn(&Part) -> usize,
    key: impl Fn(Point) -> (i64, i64),
) -> (usize, usize) {
    let mut best = (0, end(&parts[0]));
    for (idx, p) in parts.iter().enumerate().skip(1) {
        let pos = end(p);
        if counter.cmp(key(real[p.seq][pos]), key(real[parts[best.0].seq][best.1])).is_gt() {
            best = (idx, pos);
        }
    }
    best
}

/// Extends the output block rightwards from the pivot `view[j][ppos]`.
///
/// `others` are the other sequences' ranges strictly right of the pivot and
/// `far` the right anchor. Returns the last block position and the ranges
/// left for the right-hand subproblem (tangent discards applied, everything
/// up to the block end removed).
fn extend(
    view: &[Vec<Point>],
    j: usize,
    ppos: usize,
    hi_j: usize,
    others: &[Part],
    far: Option<Point>,
    counter: &mut ProbeCounter,
) -> (usize, Vec<Part>) {
    let own = &view[j];
    let p = own[ppos];
    // Tangents from p; lambda is the steepest, the anchor counting as a point.
    let tangents: Vec<Part> = others
        .iter()
        .map(|o| Part { seq: o.seq, lo: o.lo + tangent_right(p, &view[o.seq][o.lo..o.hi], counter), hi: o.hi })
        .collect();
    let mut lambda: Option<Point> = far;
    for t in &tangents {
        let q = view[t.seq][t.lo];
        lambda = Some(match lambda {
            None => q,
            Some(cur) => match counter.orient(p, cur, q) {
                1 => q,
                0 if q.x > cur.x => q,
                _ => cur,
            },
        });
    }
    // z: last own vertex strictly above lambda.
    let z = match lambda {
        None => hi_j - 1,
        Some(t) => doubling_search(ppos + 1..hi_j, SearchFrom::Low, counter, |i, _| orient(p, t, own[i]) <= 0) - 1,
    };
    // First c whose edge (c, c+1) is not a hull edge.
    let q = doubling_search(ppos..z, SearchFrom::Low, counter, |c, counter| {
        let (a, b) = (own[c], own[c + 1]);
        let m = Slope::of(a, b);
        // The search already charged this probe; the orientations below are part of it.
        let clear = |v: Point| match orient(a, b, v) {
            -1 => true,
            0 => v.x < b.x,
            _ => false,
        };
        for t in &tangents {
            let s = &view[t.seq][t.lo..t.hi];
            let v = s[support(s, m, true, counter)];
            if !clear(v) {
                return true;
            }
        }
        far.is_some_and(|r| orient(a, b, r) >= 0)
    });
    let qx = own[q].x;
    let rest = tangents
        .iter()
        .filter_map(|t| {
            let s = &view[t.seq];
            let lo = doubling_search(t.lo..t.hi, SearchFrom::Low, counter, |i, _| s[i].x > qx);
            (lo < t.hi).then_some(Part { seq: t.seq, lo, hi: t.hi })
        })
        .collect();
    (q, rest)
}

/// Pairs single-vertex ranges and drops the ones the pair partner and an
/// anchor show to be under the hull; repeats while anything is dropped.
fn pair_singletons(
    real: &[Vec<Point>],
    parts: Vec<Part>,
    left: Option<Point>,
    right: Option<Point>,
    counter: &mut ProbeCounter,
) -> Vec<Part> {
    let (mut singles, mut rest): (Vec<Part>, Vec<Part>) = parts.into_iter().partition(|p| p.len() == 1);
    loop {
        let mut keep = alloc::vec![true; singles.len()];
        let mut dropped = false;
        for pair in (0..singles.len() / 2).map(|t| (2 * t, 2 * t + 1)) {
            let (a, b) = (real[singles[pair.0].seq][singles[pair.0].lo], real[singles[pair.1].seq][singles[pair.1].lo]);
            let (iu, iw, u, w) = if counter.cmp((a.x, a.y), (b.x, b.y)).is_lt() {
                (pair.0, pair.1, a, b)
            } else {
                (pair.1, pair.0, b, a)
            };
            if u.x == w.x {
                keep[iu] = false;
                dropped = true;
                continue;
            }
            if left.is_some_and(|l| counter.orient(l, w, u) <= 0) {
                keep[iu] = false;
                dropped = true;
            }
            if right.is_some_and(|r| counter.orient(u, r, w) <= 0) {
                keep[iw] = false;
                dropped = true;
            }
        }
        let mut it = keep.iter();
        singles.retain(|_| *it.next().unwrap());
        if !dropped || singles.len() < 2 {
            break;
        }
    }
    rest.extend(singles);
    rest
}

/// Monotone-chain pass over single points plus the anchors.
fn finish_singletons(
    real: &[Vec<Point>],
    parts: &[Part],
    left: Option<Point>,
    right: Option<Point>,
    counter: &mut ProbeCounter,
    stack: &mut Vec<Task>,
) {
    // (point, Some(seq) for input points, None for anchors)
    let mut pts: Vec<(Point, Option<usize>)> = parts.iter().map(|p| (real[p.seq][p.lo], Some(p.seq))).collect();
    pts.sort_unstable_by(|a, b| counter.cmp((a.0.x, a.0.y), (b.0.x, b.0.y)));
    if let Some(l) = left {
        pts.insert(0, (l, None));
    }
    if let Some(r) = right {
        pts.push((r, None));
    }
    let mut hull: Vec<(Point, Option<usize>)> = Vec::new();
    for v in pts {
        if let Some(&last) = hull.last() {
            if last.0.x == v.0.x {
                if v.0.y <= last.0.y {
                    continue;
                }
                hull.pop();
            }
        }
        while hull.len() >= 2 && counter.orient(hull[hull.len() - 2].0, hull[hull.len() - 1].0, v.0) >= 0 {
            hull.pop();
        }
        hull.push(v);
    }
    let pos = |seq: usize| parts.iter().find(|p| p.seq == seq).unwrap().lo;
    for &(_, seq) in hull.iter().rev() {
        if let Some(k) = seq {
            let i = pos(k);
            stack.push(Task::Emit(k, i, i + 1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::verify_hull_certificate;

    fn up(v: &[(i64, i64)]) -> UpperHullSeq {
        UpperHullSeq::new(v.iter().map(|&p| p.into()).collect::<Vec<Point>>()).unwrap()
    }

    #[test]
    fn examples() {
        let mut c = ProbeCounter::new();
        let seqs = [up(&[(0, 0), (2, 2), (4, 0)]), up(&[(1, 3), (3, 2)])];
        let (out, cert) = quick_union_hull(&seqs, &mut c).unwrap();
        assert_eq!(out, up(&[(0, 0), (1, 3), (3, 2), (4, 0)]));
        assert!(verify_hull_certificate(&seqs, &cert, &mut c).is_valid());

        let seqs = [up(&[(0, 0), (1, 3), (3, 4)])];
        let (out, cert) = quick_union_hull(&seqs, &mut c).unwrap();
        assert_eq!(out, seqs[0]);
        assert_eq!(cert.arguments.len(), 1);

        let seqs = [up(&[(0, 5), (10, 4)]), up(&[(2, 1), (5, 0)])];
        let (out, cert) = quick_union_hull(&seqs, &mut c).unwrap();
        assert_eq!(out, seqs[0]);
        assert!(verify_hull_certificate(&seqs, &cert, &mut c).is_valid());
    }
}
