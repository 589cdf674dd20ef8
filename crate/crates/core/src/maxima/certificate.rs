//! Checking maxima arguments and whole certificates.
//!
//! A certificate is accepted when every argument holds, every input position
//! lies in a domination witness block or an output block, and the output
//! blocks, ordered by x, concatenate into a staircase. Together these force
//! the output to be the maxima set: a covered non-output point is dominated,
//! and a non-maximal output point would be dominated by a maximal point that
//! is itself in the output, which the staircase order rules out.

use alloc::vec::Vec;

use super::{BlockRef, MaximaArgument, MaximaCertificate, MaximaKind, Rejection, Staircase, StructuralError, Verdict};
use crate::geom::{Point, ProbeCounter};

fn seq_of<'a>(seqs: &'a [Staircase], b: &BlockRef) -> Result<&'a [Point], StructuralError> {
    if b.seq == 0 || b.seq > seqs.len() {
        return Err(StructuralError("sequence index out of range"));
    }
    Ok(seqs[b.seq - 1].points())
}

fn nonempty_block<'a>(seqs: &'a [Staircase], b: &BlockRef) -> Result<&'a [Point], StructuralError> {
    let s = seq_of(seqs, b)?;
    if b.lo == 0 || b.lo > b.hi || b.hi > s.len() {
        return Err(StructuralError("block out of range"));
    }
    Ok(s)
}

/// Checks one argument with `O(t)` predicates, `t` the witness count.
///
/// Domination: the subject dominates the first and last point of every
/// witness block. Maximality, per witness `M_k[lo..hi]` against the output
/// block `M_i[a..b]`: the left neighbor `M_k[lo-1]` (if any) lies left of
/// `M_i[a]`, the right neighbor `M_k[hi+1]` (if any) lies below `M_i[b]`, and
/// the witness is empty or `M_i[b]` dominates `M_k[lo]` or `M_i[a]` dominates
/// `M_k[hi]`.
pub fn check_maxima_argument(
    seqs: &[Staircase],
    arg: &MaximaArgument,
    counter: &mut ProbeCounter,
) -> Result<bool, StructuralError> {
    let subj = nonempty_block(seqs, &arg.subject)?;
    match arg.kind {
        MaximaKind::Domination => {
            if arg.subject.lo != arg.subject.hi {
                return Err(StructuralError("domination subject must be a single position"));
            }
            if arg.witnesses.is_empty() {
                return Err(StructuralError("domination needs a witness block"));
            }
            let p = subj[arg.subject.lo - 1];
            let mut ok = true;
            for w in &arg.witnesses {
                let s = nonempty_block(seqs, w)?;
                ok &= counter.dominates(p, s[w.lo - 1]) && counter.dominates(p, s[w.hi - 1]);
            }
            Ok(ok)
        }
        MaximaKind::Maximality => {
            let a = subj[arg.subject.lo - 1];
            let b = subj[arg.subject.hi - 1];
            let mut ok = true;
            for w in &arg.witnesses {
                let s = seq_of(seqs, w)?;
                if w.lo == 0 || w.lo > w.hi + 1 || w.hi > s.len() {
                    return Err(StructuralError("maximality witness out of range"));
                }
                let left = w.lo == 1 || counter.cmp(s[w.lo - 2].x, a.x).is_lt();
                let right = w.hi == s.len() || counter.cmp(s[w.hi].y, b.y).is_lt();
                let middle = w.is_empty() || counter.dominates(b, s[w.lo - 1]) || counter.dominates(a, s[w.hi - 1]);
                ok &= left && right && middle;
            }
            Ok(ok)
        }
    }
}

/// Validates a whole certificate.
pub fn verify_maxima_certificate(seqs: &[Staircase], cert: &MaximaCertificate, counter: &mut ProbeCounter) -> Verdict {
    if super::check_disjoint(seqs.iter().map(|s| s.points())).is_err() {
        return Verdict::Invalid(Rejection::InvalidInstance { detail: "a point occurs in two sequences" });
    }
    for (i, arg) in cert.arguments.iter().enumerate() {
        match check_maxima_argument(seqs, arg, counter) {
            Err(StructuralError(detail)) => return Verdict::Invalid(Rejection::Structural { argument: i + 1, detail }),
            Ok(false) => return Verdict::Invalid(Rejection::ArgumentFailed { argument: i + 1 }),
            Ok(true) => {}
        }
    }

    let mut subjects: Vec<BlockRef> =
        cert.arguments.iter().filter(|a| a.kind == MaximaKind::Maximality).map(|a| a.subject).collect();
    let mut blocks = cert.output_blocks.clone();
    subjects.sort_unstable();
    blocks.sort_unstable();
    if subjects != blocks {
        return Verdict::Invalid(Rejection::OutputMismatch);
    }

    let first = |b: &BlockRef| seqs[b.seq - 1][b.lo - 1];
    let mut ordered = cert.output_blocks.clone();
    ordered.sort_by(|a, b| counter.cmp(first(a).x, first(b).x));
    for (i, w) in ordered.windows(2).enumerate() {
        let last = seqs[w[0].seq - 1][w[0].hi - 1];
        let next = first(&w[1]);
        if !(counter.cmp(next.x, last.x).is_gt() && counter.cmp(next.y, last.y).is_lt()) {
            return Verdict::Invalid(Rejection::OutputNotMonotone { block: i + 2 });
        }
    }

    let covering = cert
        .arguments
        .iter()
        .filter(|a| a.kind == MaximaKind::Domination)
        .flat_map(|a| a.witnesses.iter())
        .chain(cert.output_blocks.iter());
    if let Some((seq, pos)) = first_uncovered(seqs.iter().map(|s| s.len()), covering) {
        return Verdict::Invalid(Rejection::Uncovered { seq, pos });
    }
    Verdict::Valid
}

/// First 1-based `(seq, pos)` not inside any of the (in-range) blocks.
pub(crate) fn first_uncovered<'a>(
    lens: impl Iterator<Item = usize>,
    blocks: impl Iterator<Item = &'a BlockRef>,
) -> Option<(usize, usize)> {
    let mut diff: Vec<Vec<i64>> = lens.map(|n| alloc::vec![0; n + 1]).collect();
    for b in blocks {
        if b.is_empty() {
            continue;
        }
        let d = &mut diff[b.seq - 1];
        d[b.lo - 1] += 1;
        d[b.hi] -= 1;
    }
    for (k, d) in diff.iter().enumerate() {
        let mut run = 0;
        for (i, v) in d[..d.len() - 1].iter().enumerate() {
            run += v;
            if run <= 0 {
                return Some((k + 1, i + 1));
            }
        }
    }
    None
}
