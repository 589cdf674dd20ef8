//! Quick Union Maxima.
//!
//! Each subproblem is a list of position ranges, one per sequence. The pivot
//! `p` is the highest point right of the median middle x; everything `p`
//! dominates is discarded, the output block around `p` in its own sequence is
//! cut with doubling searches, and the points left (above) and right (below)
//! of that block form two independent subproblems.

use alloc::vec::Vec;

use super::{validate_input, BlockRef, MaximaArgument, MaximaCertificate, MaximaError, Staircase};
use crate::geom::{doubling_search, Point, ProbeCounter, SearchFrom};

/// Maxima of the union of the staircases, with a certificate.
///
/// Input sequences must be valid staircases that share no point.
pub fn quick_union_maxima(
    seqs: &[Staircase],
    counter: &mut ProbeCounter,
) -> Result<(Staircase, MaximaCertificate), MaximaError> {
    validate_input(seqs)?;
    Ok(run(seqs, counter))
}

#[derive(Clone, Copy, Debug)]
struct Part {
    seq: usize,
    lo: usize,
    hi: usize,
}

enum Task {
    Solve(Vec<Part>),
    Emit(usize, usize, usize),
}

pub(super) fn run(seqs: &[Staircase], counter: &mut ProbeCounter) -> (Staircase, MaximaCertificate) {
    let mut cert = MaximaCertificate::default();
    let mut out = Vec::new();
    let initial: Vec<Part> =
        seqs.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(k, s)| Part { seq: k, lo: 0, hi: s.len() }).collect();
    let mut stack = alloc::vec![Task::Solve(initial)];
    while let Some(task) = stack.pop() {
        match task {
            Task::Emit(seq, lo, hi) => {
                out.extend_from_slice(&seqs[seq].points()[lo..hi]);
                cert.output_blocks.push(BlockRef::new(seq + 1, lo + 1, hi));
            }
            Task::Solve(parts) => solve(seqs, parts, counter, &mut cert, &mut stack),
        }
    }
    (Staircase::from_vec_unchecked(out), cert)
}

fn solve(
    seqs: &[Staircase],
    parts: Vec<Part>,
    counter: &mut ProbeCounter,
    cert: &mut MaximaCertificate,
    stack: &mut Vec<Task>,
) {
    if parts.is_empty() {
        return;
    }
    let pt = |k: usize, i: usize| seqs[k][i];
    if parts.len() == 1 {
        let Part { seq, lo, hi } = parts[0];
        cert.arguments.push(MaximaArgument::maximality(BlockRef::new(seq + 1, lo + 1, hi), Vec::new()));
        stack.push(Task::Emit(seq, lo, hi));
        return;
    }

    // Step 1: lower median of the middle points' x.
    let mut mids: Vec<i64> = parts.iter().map(|p| pt(p.seq, p.lo + (p.hi - p.lo).div_ceil(2) - 1).x).collect();
    let k = (mids.len() - 1) / 2;
    let (_, &mut mu, _) = mids.select_nth_unstable_by(k, |a, b| counter.cmp(*a, *b));

    // Step 2: split every range at mu.
    let splits: Vec<usize> = parts
        .iter()
        .map(|p| doubling_search(p.lo..p.hi, SearchFrom::Both, counter, |i, _| pt(p.seq, i).x >= mu))
        .collect();

    // Step 3: pivot = highest point with x >= mu; the rightmost on ties.
    let mut best: Option<(usize, usize)> = None;
    for (idx, (p, &s)) in parts.iter().zip(&splits).enumerate() {
        if s == p.hi {
            continue;
        }
        let cand = pt(p.seq, s);
        best = match best {
            None => Some((idx, s)),
            Some((bi, bs)) => {
                let cur = pt(parts[bi].seq, bs);
                if counter.cmp((cand.y, cand.x), (cur.y, cur.x)).is_gt() {
                    Some((idx, s))
                } else {
                    Some((bi, bs))
                }
            }
        };
    }
    let (jdx, ppos) = best.expect("the median middle point lies right of mu");
    let j = parts[jdx];
    let p = pt(j.seq, ppos);

    // Step 4: per other sequence, left part (above p), dominated middle, right part.
    struct Cut {
        part: Part,
        f: usize,
        g: usize,
    }
    let mut cuts: Vec<Cut> = Vec::with_capacity(parts.len() - 1);
    for (idx, &part) in parts.iter().enumerate() {
        if idx == jdx {
            continue;
        }
        let f = doubling_search(part.lo..part.hi, SearchFrom::Both, counter, |i, _| pt(part.seq, i).y <= p.y);
        let g = doubling_search(f..part.hi, SearchFrom::Both, counter, |i, _| pt(part.seq, i).x > p.x);
        cuts.push(Cut { part, f, g });
    }

    // Step 5: r = highest first point right of p; l = rightmost last point above p.
    let mut r: Option<Point> = None;
    let mut l: Option<Point> = None;
    for c in &cuts {
        if c.g < c.part.hi {
            let q = pt(c.part.seq, c.g);
            r = Some(match r {
                Some(cur) if counter.cmp(cur.y, q.y).is_ge() => cur,
                _ => q,
            });
        }
        if c.f > c.part.lo {
            let q = pt(c.part.seq, c.f - 1);
            l = Some(match l {
                Some(cur) if counter.cmp(cur.x, q.x).is_ge() => cur,
                _ => q,
            });
        }
    }

    // Step 6: the output block M_j[s..e] around p.
    let s = match l {
        None => j.lo,
        Some(l) => doubling_search(j.lo..ppos, SearchFrom::High, counter, |i, _| pt(j.seq, i).x > l.x),
    };
    let e_end = match r {
        None => j.hi,
        Some(r) => doubling_search(ppos + 1..j.hi, SearchFrom::Low, counter, |i, _| pt(j.seq, i).y <= r.y),
    };
    let (ps, pe) = (pt(j.seq, s), pt(j.seq, e_end - 1));

    // Points the block ends dominate are discarded as well.
    let mut dom_p = Vec::new();
    let mut dom_s = Vec::new();
    let mut dom_e = Vec::new();
    let mut max_w = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for c in &cuts {
        let (seq, lo, hi) = (c.part.seq, c.part.lo, c.part.hi);
        let lcut = doubling_search(lo..c.f, SearchFrom::High, counter, |i, _| pt(seq, i).y <= ps.y);
        let rcut = doubling_search(c.g..hi, SearchFrom::Low, counter, |i, _| pt(seq, i).x > pe.x);
        if lcut < c.f {
            dom_s.push(BlockRef::new(seq + 1, lcut + 1, c.f));
        }
        if c.f < c.g {
            dom_p.push(BlockRef::new(seq + 1, c.f + 1, c.g));
        }
        if c.g < rcut {
            dom_e.push(BlockRef::new(seq + 1, c.g + 1, rcut));
        }
        // Maximality witness: the discarded middle, when one of its ends is dominated
        // by a block end (or it is empty); the neighbor conditions hold by construction.
        let ok = lcut == rcut
            || counter.dominates(pe, pt(seq, lcut))
            || counter.dominates(ps, pt(seq, rcut - 1));
        if ok {
            max_w.push(BlockRef::new(seq + 1, lcut + 1, rcut));
        }
        if lo < lcut {
            left.push(Part { seq, lo, hi: lcut });
        }
        if rcut < hi {
            right.push(Part { seq, lo: rcut, hi });
        }
    }

    let mut subjects: Vec<(usize, Vec<BlockRef>)> = Vec::new();
    for (pos, w) in [(ppos, dom_p), (s, dom_s), (e_end - 1, dom_e)] {
        if w.is_empty() {
            continue;
        }
        match subjects.iter_mut().find(|(q, _)| *q == pos) {
            Some((_, ws)) => ws.extend(w),
            None => subjects.push((pos, w)),
        }
    }
    for (pos, mut w) in subjects {
        w.sort_unstable();
        cert.arguments.push(MaximaArgument::domination(j.seq + 1, pos + 1, w));
    }
    cert.arguments.push(MaximaArgument::maximality(BlockRef::new(j.seq + 1, s + 1, e_end), max_w));

    if j.lo < s {
        left.push(Part { seq: j.seq, lo: j.lo, hi: s });
    }
    if e_end < j.hi {
        right.push(Part { seq: j.seq, lo: e_end, hi: j.hi });
    }
    stack.push(Task::Solve(right));
    stack.push(Task::Emit(j.seq, s, e_end));
    stack.push(Task::Solve(left));
}
