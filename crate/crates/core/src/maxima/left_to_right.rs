//! Left-to-Right merging with a minimum-length certificate.
//!
//! Sequences are consumed from their tops. The sequence holding the highest
//! first point emits its prefix down to the next sequence's first point;
//! every other sequence then drops the prefix that lies left of the emitted
//! block's last point. The emitted blocks, coalesced into maximal runs, are
//! the output blocks. Dominated points are then charged to as few dominators
//! as possible: a dominated point `d` is dominated exactly by the output
//! points in an interval of the output order, run endpoints are already
//! argument points, and the remaining intervals are stabbed greedily.

use alloc::vec::Vec;

use super::{validate_input, BlockRef, MaximaArgument, MaximaCertificate, MaximaError, Staircase};
use crate::geom::{doubling_search, Phase, Point, ProbeCounter, SearchFrom};

/// Maxima of the union plus a certificate with the fewest argument points.
pub fn left_to_right_merge(
    seqs: &[Staircase],
    counter: &mut ProbeCounter,
) -> Result<(Staircase, MaximaCertificate), MaximaError> {
    validate_input(seqs)?;
    let runs = merge(seqs, counter);
    let cert = counter.in_phase(Phase::Certify, |c| certify(seqs, runs, c));
    let out: Vec<Point> =
        cert.output_blocks.iter().flat_map(|b| seqs[b.seq - 1].points()[b.range0()].iter().copied()).collect();
    Ok((Staircase::from_vec_unchecked(out), cert))
}

/// Output runs `(seq, lo, hi)`, 0-based half-open, in x order.
fn merge(seqs: &[Staircase], counter: &mut ProbeCounter) -> Vec<(usize, usize, usize)> {
    let mut cur: Vec<usize> = alloc::vec![0; seqs.len()];
    let mut runs: Vec<(usize, usize, usize)> = Vec::new();
    loop {
        let mut top: Option<usize> = None;
        let mut second: Option<usize> = None;
        for k in 0..seqs.len() {
            if cur[k] == seqs[k].len() {
                continue;
            }
            let q = seqs[k][cur[k]];
            let key = |i: usize| (seqs[i][cur[i]].y, seqs[i][cur[i]].x);
            match top {
                None => top = Some(k),
                Some(t) if counter.cmp((q.y, q.x), key(t)).is_gt() => {
                    second = top;
                    top = Some(k);
                }
                Some(_) => {
                    if second.is_none_or(|s| counter.cmp((q.y, q.x), key(s)).is_gt()) {
                        second = Some(k);
                    }
                }
            }
        }
        let Some(u) = top else { break };
        let seq = &seqs[u];
        let end = match second {
            None => seq.len(),
            Some(w) => {
                let v = seqs[w][cur[w]];
                doubling_search(cur[u] + 1..seq.len(), SearchFrom::Low, counter, |i, c| {
                    c.cmp((seq[i].y, seq[i].x), (v.y, v.x)).is_lt()
                })
            }
        };
        match runs.last_mut() {
            Some(last) if last.0 == u && last.2 == cur[u] => last.2 = end,
            _ => runs.push((u, cur[u], end)),
        }
        cur[u] = end;
        let g = seq[end - 1];
        for k in 0..seqs.len() {
            if k != u {
                let s = &seqs[k];
                cur[k] = doubling_search(cur[k]..s.len(), SearchFrom::Low, counter, |i, _| s[i].x > g.x);
            }
        }
    }
    runs
}

fn certify(seqs: &[Staircase], runs: Vec<(usize, usize, usize)>, counter: &mut ProbeCounter) -> MaximaCertificate {
    // Output in x order with the owning position of each point.
    let mut out: Vec<(Point, usize, usize)> = Vec::new();
    let mut endpoint_before = alloc::vec![0usize];
    let mut endpoints: Vec<usize> = Vec::new();
    let mut in_output: Vec<Vec<bool>> = seqs.iter().map(|s| alloc::vec![false; s.len()]).collect();
    for &(k, lo, hi) in &runs {
        for i in lo..hi {
            let idx = out.len();
            out.push((seqs[k][i], k, i));
            in_output[k][i] = true;
            let is_end = i == lo || i + 1 == hi;
            if is_end {
                endpoints.push(idx);
            }
            endpoint_before.push(endpoint_before[idx] + is_end as usize);
        }
    }

    // Dominator interval [a, b] in output order for every dominated point.
    struct Dominated {
        seq: usize,
        pos: usize,
        a: usize,
        b: usize,
    }
    let mut dominated = Vec::new();
    for (k, s) in seqs.iter().enumerate() {
        for (i, &d) in s.points().iter().enumerate() {
            if in_output[k][i] {
                continue;
            }
            let a = doubling_search(0..out.len(), SearchFrom::Both, counter, |j, c| c.cmp(out[j].0.x, d.x).is_ge());
            let b = doubling_search(0..out.len(), SearchFrom::Both, counter, |j, c| c.cmp(out[j].0.y, d.y).is_lt()) - 1;
            dominated.push(Dominated { seq: k, pos: i, a, b });
        }
    }

    // Subject (output index) per dominated point.
    let mut subject = alloc::vec![usize::MAX; dominated.len()];
    let mut pending: Vec<usize> = Vec::new();
    for (t, d) in dominated.iter().enumerate() {
        if endpoint_before[d.b + 1] > endpoint_before[d.a] {
            subject[t] = endpoints[endpoints.partition_point(|&e| e < d.a)];
        } else {
            pending.push(t);
        }
    }
    pending.sort_by_key(|&t| dominated[t].b);
    let mut stab: Option<usize> = None;
    for t in pending {
        let d = &dominated[t];
        if stab.is_none_or(|s| s < d.a) {
            stab = Some(d.b);
        }
        subject[t] = stab.unwrap();
    }

    let mut cert = MaximaCertificate::default();
    for &(k, lo, hi) in &runs {
        let block = BlockRef::new(k + 1, lo + 1, hi);
        cert.arguments.push(MaximaArgument::maximality(block, Vec::new()));
        cert.output_blocks.push(block);
    }
    // Group by subject; consecutive positions of one sequence share a witness block.
    let mut order: Vec<usize> = (0..dominated.len()).collect();
    order.sort_by_key(|&t| (subject[t], dominated[t].seq, dominated[t].pos));
    let mut t = 0;
    while t < order.len() {
        let subj = subject[order[t]];
        let mut witnesses = Vec::new();
        while t < order.len() && subject[order[t]] == subj {
            let first = &dominated[order[t]];
            let mut last = first.pos;
            t += 1;
            while t < order.len() && subject[order[t]] == subj {
                let d = &dominated[order[t]];
                if d.seq != first.seq || d.pos != last + 1 {
                    break;
                }
                last = d.pos;
                t += 1;
            }
            witnesses.push(BlockRef::new(first.seq + 1, first.pos + 1, last + 1));
        }
        let (_, k, i) = out[subj];
        cert.arguments.push(MaximaArgument::domination(k + 1, i + 1, witnesses));
    }
    cert
}
