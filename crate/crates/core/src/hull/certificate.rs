//! Building and checking hull certificates.
//!
//! An eliminator argument anchored at two output vertices `A`, `B` says that
//! its witness blocks lie in the closed vertical strip of `A B` and under the
//! line `A B`, shown by a pivot of the witness sequence whose edge slopes
//! bracket the line's slope. With `A == B` the witnesses are single points
//! straight below `A`. A convex argument shows that the ends of an output
//! block are strict vertices against the other sequences.
//!
//! Acceptance needs every argument to hold, every non-output position to lie
//! in an eliminator witness block, and the output blocks, ordered by x, to
//! concatenate into a strictly convex chain. Covered positions are not
//! vertices, so every vertex is in the output, and a strictly convex chain
//! through all vertices cannot pass through any other point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::tangent::support;
use super::{HullArgument, HullCertificate, HullKind, PointRef, UpperHullSeq};
use crate::geom::{doubling_search, Point, ProbeCounter, SearchFrom, Slope};
use crate::maxima::{BlockRef, Rejection, StructuralError, Verdict};

fn seq_of(seqs: &[UpperHullSeq], k: usize) -> Result<&[Point], StructuralError> {
    if k == 0 || k > seqs.len() {
        return Err(StructuralError("sequence index out of range"));
    }
    Ok(seqs[k - 1].points())
}

fn point_at(seqs: &[UpperHullSeq], r: PointRef) -> Result<Point, StructuralError> {
    let s = seq_of(seqs, r.0)?;
    if r.1 == 0 || r.1 > s.len() {
        return Err(StructuralError("position out of range"));
    }
    Ok(s[r.1 - 1])
}

fn pivot_of(w: &BlockRef, len: usize) -> Result<usize, StructuralError> {
    match w.pivot {
        Some(d) if d >= 1 && d <= len => Ok(d),
        Some(_) => Err(StructuralError("pivot out of range")),
        None => Err(StructuralError("witness without pivot")),
    }
}

/// Edge slopes around 0-based vertex `d`: (right edge, left edge), `None`
/// where the vertex is an end.
fn bracket(s: &[Point], d: usize) -> (Option<Slope>, Option<Slope>) {
    let right = (d + 1 < s.len()).then(|| Slope::of(s[d], s[d + 1]));
    let left = (d > 0).then(|| Slope::of(s[d - 1], s[d]));
    (right, left)
}

fn in_bracket(s: &[Point], d: usize, m: Slope, counter: &mut ProbeCounter) -> bool {
    let (right, left) = bracket(s, d);
    right.is_none_or(|r| counter.cmp(r, m).is_le()) && left.is_none_or(|l| counter.cmp(m, l).is_le())
}

/// Checks one argument with `O(t)` predicates, `t` the witness count.
pub fn check_hull_argument(
    seqs: &[UpperHullSeq],
    arg: &HullArgument,
    counter: &mut ProbeCounter,
) -> Result<bool, StructuralError> {
    let [ra, rb] = arg.anchors;
    let (a, b) = (point_at(seqs, ra)?, point_at(seqs, rb)?);
    match arg.kind {
        HullKind::Eliminator => check_eliminator(seqs, a, b, &arg.witnesses, counter),
        HullKind::Convex => {
            if ra.0 != rb.0 || ra.1 > rb.1 {
                return Err(StructuralError("convex argument needs a block of one sequence"));
            }
            check_convex(seqs, ra.0, ra.1 - 1, rb.1 - 1, &arg.witnesses, counter)
        }
    }
}

fn check_eliminator(
    seqs: &[UpperHullSeq],
    a: Point,
    b: Point,
    witnesses: &[BlockRef],
    counter: &mut ProbeCounter,
) -> Result<bool, StructuralError> {
    let mut ok = true;
    if a == b {
        for w in witnesses {
            let s = seq_of(seqs, w.seq)?;
            pivot_of(w, s.len())?;
            if w.lo == 0 || w.lo > w.hi || w.hi > s.len() {
                return Err(StructuralError("block out of range"));
            }
            let q = s[w.lo - 1];
            ok &= w.lo == w.hi && counter.cmp(q.x, a.x).is_eq() && counter.cmp(q.y, a.y).is_lt();
        }
        return Ok(ok);
    }
    if counter.cmp(a.x, b.x).is_ge() {
        return Ok(false);
    }
    let m = Slope::of(a, b);
    for w in witnesses {
        let s = seq_of(seqs, w.seq)?;
        let d = pivot_of(w, s.len())? - 1;
        if w.lo == 0 || w.lo > w.hi || w.hi > s.len() {
            return Err(StructuralError("block out of range"));
        }
        let (first, last) = (s[w.lo - 1], s[w.hi - 1]);
        if counter.cmp(first.x, a.x).is_lt() || counter.cmp(last.x, b.x).is_gt() || !in_bracket(s, d, m, counter) {
            ok = false;
            continue;
        }
        match counter.orient(a, b, s[d]) {
            1 => ok = false,
            0 => {
                // The sequence touches the line: the strip ends must stay strictly under it.
                for q in [first, last] {
                    if (q.x == a.x || q.x == b.x) && counter.orient(a, b, q) >= 0 {
                        ok = false;
                    }
                }
            }
            _ => {}
        }
    }
    Ok(ok)
}

/// A slope bound: value and whether it is strict.
type Bound = Option<(Slope, bool)>;

fn tighten(cur: &mut Bound, new: (Slope, bool), want: Ordering, counter: &mut ProbeCounter) {
    *cur = Some(match *cur {
        None => new,
        Some(old) => match counter.cmp(new.0, old.0) {
            o if o == want => new,
            Ordering::Equal => (old.0, old.1 || new.1),
            _ => old,
        },
    });
}

/// Is there a slope strictly inside the vertex cone of `p = own[a]` under
/// which `p` supports strictly above every witness point `s_k[c_k]`, each
/// also within its own closed edge bracket?
fn endpoint_ok(
    own: &[Point],
    a: usize,
    pts: &[(&[Point], usize)],
    counter: &mut ProbeCounter,
) -> bool {
    let p = own[a];
    let (r, l) = bracket(own, a);
    let mut lower: Bound = r.map(|s| (s, true));
    let mut upper: Bound = l.map(|s| (s, true));
    for &(s, c) in pts {
        let q = s[c];
        let (r, l) = bracket(s, c);
        if let Some(r) = r {
            tighten(&mut lower, (r, false), Ordering::Greater, counter);
        }
        if let Some(l) = l {
            tighten(&mut upper, (l, false), Ordering::Less, counter);
        }
        match counter.cmp(q.x, p.x) {
            Ordering::Equal => {
                if counter.cmp(q.y, p.y).is_ge() {
                    return false;
                }
            }
            Ordering::Greater => tighten(&mut lower, (Slope::of(p, q), true), Ordering::Greater, counter),
            Ordering::Less => tighten(&mut upper, (Slope::of(q, p), true), Ordering::Less, counter),
        }
    }
    match (lower, upper) {
        (Some((lo, ls)), Some((hi, hs))) => match counter.cmp(lo, hi) {
            Ordering::Less => true,
            Ordering::Equal => !ls && !hs,
            Ordering::Greater => false,
        },
        _ => true,
    }
}

fn check_convex(
    seqs: &[UpperHullSeq],
    i: usize,
    a: usize,
    b: usize,
    witnesses: &[BlockRef],
    counter: &mut ProbeCounter,
) -> Result<bool, StructuralError> {
    let own = seq_of(seqs, i)?;
    let mut starts = Vec::with_capacity(witnesses.len());
    let mut ends = Vec::with_capacity(witnesses.len());
    let mut ok = true;
    for w in witnesses {
        let s = seq_of(seqs, w.seq)?;
        let d = pivot_of(w, s.len())? - 1;
        if w.lo == 0 || w.lo > s.len() || w.hi == 0 || w.hi > s.len() {
            return Err(StructuralError("block out of range"));
        }
        starts.push((s, w.lo - 1));
        ends.push((s, w.hi - 1));
        if a < b {
            let m = Slope::of(own[a], own[b]);
            ok &= in_bracket(s, d, m, counter) && counter.orient(own[a], own[b], s[d]) <= 0;
        }
    }
    Ok(ok && endpoint_ok(own, a, &starts, counter) && endpoint_ok(own, b, &ends, counter))
}

/// Validates a whole certificate.
pub fn verify_hull_certificate(seqs: &[UpperHullSeq], cert: &HullCertificate, counter: &mut ProbeCounter) -> Verdict {
    if crate::maxima::check_disjoint(seqs.iter().map(|s| s.points())).is_err() {
        return Verdict::Invalid(Rejection::InvalidInstance { detail: "a point occurs in two sequences" });
    }
    for (i, arg) in cert.arguments.iter().enumerate() {
        match check_hull_argument(seqs, arg, counter) {
            Err(StructuralError(detail)) => return Verdict::Invalid(Rejection::Structural { argument: i + 1, detail }),
            Ok(false) => return Verdict::Invalid(Rejection::ArgumentFailed { argument: i + 1 }),
            Ok(true) => {}
        }
    }

    let mut subjects: Vec<BlockRef> =
        cert.arguments.iter().filter(|a| a.kind == HullKind::Convex).map(|a| a.block()).collect();
    let mut blocks: Vec<BlockRef> = cert.output_blocks.iter().map(|b| BlockRef::new(b.seq, b.lo, b.hi)).collect();
    subjects.sort_unstable();
    blocks.sort_unstable();
    if subjects != blocks {
        return Verdict::Invalid(Rejection::OutputMismatch);
    }

    // Blocks are convex arguments that checked out, so they are in range.
    let pt = |k: usize, pos: usize| seqs[k - 1][pos - 1];
    let mut ordered = blocks;
    ordered.sort_by(|x, y| counter.cmp(pt(x.seq, x.lo).x, pt(y.seq, y.lo).x));
    // Junction t joins the last point of block t with the first of block t+1;
    // check x order and the turns on both sides of the joining edge.
    for t in 0..ordered.len().saturating_sub(1) {
        let (u, v) = (&ordered[t], &ordered[t + 1]);
        let (p, q) = (pt(u.seq, u.hi), pt(v.seq, v.lo));
        let before = if u.hi > u.lo {
            Some(pt(u.seq, u.hi - 1))
        } else {
            t.checked_sub(1).map(|s| pt(ordered[s].seq, ordered[s].hi))
        };
        let after = if v.hi > v.lo {
            Some(pt(v.seq, v.lo + 1))
        } else {
            ordered.get(t + 2).map(|w| pt(w.seq, w.lo))
        };
        let good = counter.cmp(p.x, q.x).is_lt()
            && before.is_none_or(|o| counter.orient(o, p, q) < 0)
            && after.is_none_or(|o| counter.orient(p, q, o) < 0);
        if !good {
            return Verdict::Invalid(Rejection::OutputNotMonotone { block: t + 2 });
        }
    }

    let covering = cert
        .arguments
        .iter()
        .filter(|a| a.kind == HullKind::Eliminator)
        .flat_map(|a| a.witnesses.iter())
        .chain(cert.output_blocks.iter());
    if let Some((seq, pos)) = crate::maxima::first_uncovered(seqs.iter().map(|s| s.len()), covering) {
        return Verdict::Invalid(Rejection::Uncovered { seq, pos });
    }
    Verdict::Valid
}

/// A slope strictly inside the cone of output vertex `g`.
fn cone_slope(hull: &[Point], g: usize) -> Slope {
    let right = (g + 1 < hull.len()).then(|| Slope::of(hull[g], hull[g + 1]));
    let left = (g > 0).then(|| Slope::of(hull[g - 1], hull[g]));
    match (right, left) {
        (Some(r), Some(l)) => Slope::new(r.num * l.den + l.num * r.den, 2 * r.den * l.den),
        (Some(r), None) => Slope::new(r.num + r.den, r.den),
        (None, Some(l)) => Slope::new(l.num - l.den, l.den),
        (None, None) => Slope::new(0, 1),
    }
}

/// Certificate for the output `refs` (0-based `(seq, pos)` in x order).
pub(crate) fn certify(seqs: &[UpperHullSeq], refs: &[(usize, usize)], counter: &mut ProbeCounter) -> HullCertificate {
    let hull: Vec<Point> = refs.iter().map(|&(k, i)| seqs[k][i]).collect();
    let one = |g: usize| (refs[g].0 + 1, refs[g].1 + 1);

    // Output blocks as (first, last) output indices.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for g in 0..refs.len() {
        match runs.last_mut() {
            Some(r) if refs[g].0 == refs[r.1].0 && refs[g].1 == refs[r.1].1 + 1 => r.1 = g,
            _ => runs.push((g, g)),
        }
    }
    let mut output_blocks = Vec::with_capacity(runs.len());
    let mut convex = Vec::with_capacity(runs.len());
    for &(s, e) in &runs {
        let (i, a, b) = (refs[s].0, refs[s].1, refs[e].1);
        output_blocks.push(BlockRef::new(i + 1, a + 1, b + 1));
        let (ma, mb) = (cone_slope(&hull, s), cone_slope(&hull, e));
        let mut wit = Vec::new();
        for (k, u) in seqs.iter().enumerate() {
            if k == i || u.is_empty() {
                continue;
            }
            let pts = u.points();
            let c = support(pts, ma, false, counter);
            let f = support(pts, mb, false, counter);
            let d = if s < e {
                let d = support(pts, Slope::of(hull[s], hull[e]), false, counter);
                if counter.orient(hull[s], hull[e], pts[d]) > 0 {
                    continue;
                }
                d
            } else {
                c
            };
            wit.push(BlockRef::with_pivot(k + 1, c + 1, d + 1, f + 1));
        }
        convex.push(HullArgument::convex(i + 1, a + 1, b + 1, wit));
    }

    let mut elim: BTreeMap<(usize, usize), Vec<BlockRef>> = BTreeMap::new();
    let mut is_output: Vec<Vec<bool>> = seqs.iter().map(|u| alloc::vec![false; u.len()]).collect();
    for &(k, i) in refs {
        is_output[k][i] = true;
    }
    for (k, u) in seqs.iter().enumerate() {
        let pts = u.points();
        if pts.is_empty() {
            continue;
        }
        if hull.len() == 1 {
            for (i, _) in pts.iter().enumerate().filter(|&(i, _)| !is_output[k][i]) {
                elim.entry((0, 0)).or_default().push(BlockRef::with_pivot(k + 1, i + 1, i + 1, i + 1));
            }
            continue;
        }
        // Segments of the output in x order, as anchor index pairs.
        let mut segs: Vec<(usize, usize)> = Vec::new();
        for (t, &(s, e)) in runs.iter().enumerate() {
            if s < e {
                let top = support(pts, Slope::of(hull[s], hull[e]), false, counter);
                if refs[s].0 == k || counter.orient(hull[s], hull[e], pts[top]) > 0 {
                    segs.extend((s..e).map(|g| (g, g + 1)));
                } else {
                    segs.push((s, e));
                }
            }
            if t + 1 < runs.len() {
                segs.push((e, e + 1));
            }
        }
        let mut ptr = 0;
        for (g1, g2) in segs {
            if ptr == pts.len() {
                break;
            }
            let end = doubling_search(ptr..pts.len(), SearchFrom::Low, counter, |i, _| pts[i].x > hull[g2].x);
            let pivot = support(pts, Slope::of(hull[g1], hull[g2]), false, counter) + 1;
            let mut i = ptr;
            while i < end {
                if is_output[k][i] {
                    i += 1;
                    continue;
                }
                let lo = i;
                while i < end && !is_output[k][i] {
                    i += 1;
                }
                elim.entry((g1, g2)).or_default().push(BlockRef::with_pivot(k + 1, lo + 1, pivot, i));
            }
            ptr = end;
        }
        debug_assert_eq!(ptr, pts.len());
    }
    let mut arguments: Vec<HullArgument> =
        elim.into_iter().map(|((g1, g2), w)| HullArgument::eliminator(one(g1), one(g2), w)).collect();
    arguments.extend(convex);
    HullCertificate { arguments, output_blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[(i64, i64)]) -> UpperHullSeq {
        UpperHullSeq::new(v.iter().map(|&p| p.into()).collect::<Vec<Point>>()).unwrap()
    }

    #[test]
    fn argument_examples() {
        let mut c = ProbeCounter::new();
        let seqs = [up(&[(0, 5), (10, 4)]), up(&[(2, 1), (5, 0)])];
        let elim = HullArgument::eliminator((1, 1), (1, 2), alloc::vec![BlockRef::with_pivot(2, 1, 1, 2)]);
        assert_eq!(check_hull_argument(&seqs, &elim, &mut c), Ok(true));
        let lone = [up(&[(0, 0), (1, 3), (3, 4)])];
        assert_eq!(check_hull_argument(&lone, &HullArgument::convex(1, 1, 3, alloc::vec![]), &mut c), Ok(true));
        // widened past the strip
        let seqs = [up(&[(1, 5), (4, 4)]), up(&[(0, 1), (2, 1), (5, 0)])];
        let elim = HullArgument::eliminator((1, 1), (1, 2), alloc::vec![BlockRef::with_pivot(2, 1, 2, 2)]);
        assert_eq!(check_hull_argument(&seqs, &elim, &mut c), Ok(false));
        let bad = HullArgument::eliminator((1, 1), (1, 2), alloc::vec![BlockRef::new(2, 2, 2)]);
        assert!(check_hull_argument(&seqs, &bad, &mut c).is_err());
    }

    #[test]
    fn certify_verifies() {
        let mut c = ProbeCounter::new();
        let seqs = [up(&[(0, 0), (2, 2), (4, 0)]), up(&[(1, 3), (3, 2)]), up(&[(2, -5)])];
        let refs = [(0, 0), (1, 0), (1, 1), (0, 2)];
        let cert = certify(&seqs, &refs, &mut c);
        assert_eq!(verify_hull_certificate(&seqs, &cert, &mut c), Verdict::Valid);
        let mut short = cert.clone();
        short.output_blocks.pop();
        assert!(!verify_hull_certificate(&seqs, &short, &mut c).is_valid());
    }
}
