//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false` so the lines always print.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use synergeo::bench::{self, reference_maxima, reference_upper_hull, Family, Instance, InstanceSpec};
use synergeo::formats::{
    format_hull_certificate, format_maxima_certificate, parse_hull_certificate, parse_maxima_certificate,
};
use synergeo_core::geom::{doubling_budget, Phase, Slope};
use synergeo_core::hull::{
    levcopoulos_hull, partition_simple_chains, quick_union_hull, synergistic_upper_hull, verify_hull_certificate,
    HullCertificate, HullKind, UpperHullSeq,
};
use synergeo_core::maxima::{
    decompose_smooth, left_to_right_merge, quick_union_maxima, synergistic_maxima, verify_maxima_certificate,
    BlockRef, MaximaCertificate, MaximaKind, Staircase,
};
use synergeo_core::oracles::{
    brute_maxima, brute_upper_hull, min_certificate_length_exhaustive, min_entropy_simple_partition,
    min_smooth_partition,
};
use synergeo_core::{dominates, doubling_search, entropy_bits, Point, ProbeCounter, SearchFrom};

/// Upper bound on the fitted slope of merge predicates per point against
/// log2 of the number of smooth runs.
const SMOOTH_SLOPE_BOUND: f64 = 8.0;

type Outcome = Result<String, String>;

/// Name, check and runtime target in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn random_points(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))).collect()
}

fn distinct(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    pts
}

/// Distinct random points dealt into `rho` groups; each group contributes
/// its maxima. Empty groups are dropped.
fn random_staircases(rng: &mut ChaCha8Rng, n: usize, rho: usize, bound: i64) -> Vec<Staircase> {
    let mut pts = distinct(random_points(rng, n, bound));
    pts.shuffle(rng);
    let mut groups = vec![Vec::new(); rho];
    for p in pts {
        groups[rng.gen_range(0..rho)].push(p);
    }
    groups.into_iter().filter(|g| !g.is_empty()).map(|g| Staircase::new(reference_maxima(&g)).unwrap()).collect()
}

/// Like [`random_staircases`] with upper hulls. Points are drawn near random
/// downward parabolas so the hulls are not tiny.
fn random_hulls(rng: &mut ChaCha8Rng, n: usize, rho: usize, bound: i64) -> Vec<UpperHullSeq> {
    let caps: Vec<(i64, i64)> = (0..rho).map(|_| (rng.gen_range(-bound..=bound), rng.gen_range(0..=bound))).collect();
    let mut pts: Vec<(usize, Point)> = Vec::new();
    for _ in 0..n {
        let k = rng.gen_range(0..rho);
        let (c, top) = caps[k];
        let x = rng.gen_range(-bound..=bound);
        let d = x - c;
        let y = top - d * d / bound.max(1) - rng.gen_range(0..=2);
        pts.push((k, Point::new(x, y)));
    }
    pts.sort_by_key(|&(k, p)| (p, k));
    pts.dedup_by_key(|e| e.1);
    let mut groups = vec![Vec::new(); rho];
    for (k, p) in pts {
        groups[k].push(p);
    }
    groups.into_iter().filter(|g| !g.is_empty()).map(|g| UpperHullSeq::new(reference_upper_hull(&g)).unwrap()).collect()
}

fn merge_staircase_instance(seed: u64) -> Vec<Staircase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = rng.gen_range(1..=8);
    if seed.is_multiple_of(2) {
        let n = rng.gen_range(2 * rho..=256);
        match bench::generate(&InstanceSpec::new(Family::MergeStaircases, n, rho, seed)).unwrap() {
            Instance::Staircases(s) => s,
            _ => unreachable!(),
        }
    } else {
        let n = rng.gen_range(rho..=256);
        let bound = [6, 30, 200][rng.gen_range(0..3)];
        random_staircases(&mut rng, n, rho, bound)
    }
}

fn merge_hull_instance(seed: u64) -> Vec<UpperHullSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let rho = rng.gen_range(1..=8);
    if seed.is_multiple_of(2) {
        let n = rng.gen_range(2 * rho..=256);
        match bench::generate(&InstanceSpec::new(Family::MergeHulls, n, rho, seed)).unwrap() {
            Instance::Hulls(s) => s,
            _ => unreachable!(),
        }
    } else {
        let n = rng.gen_range(rho..=256);
        let bound = [6, 30, 200][rng.gen_range(0..3)];
        random_hulls(&mut rng, n, rho, bound)
    }
}

fn criterion_1() -> Outcome {
    let bad: Vec<String> = (0..10_000u64)
        .into_par_iter()
        .filter_map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(0..=64);
            let bound = if seed % 3 == 0 { 4 } else { 100 };
            let pts = random_points(&mut rng, n, bound);
            let max_ok = synergistic_maxima(&pts).0.into_points() == brute_maxima(&pts).into_points();
            let brute = brute_upper_hull(&pts);
            let hull_ok = synergistic_upper_hull(&pts).0.into_points() == brute
                && levcopoulos_hull(&pts).0.into_points() == brute;
            (!(max_ok && hull_ok)).then(|| format!("seed {seed}"))
        })
        .collect();
    if bad.is_empty() {
        Ok("10000 instances agree with the brute-force oracles".into())
    } else {
        Err(format!("{} disagreements, first {}", bad.len(), bad[0]))
    }
}

/// Positions of sequence `k` (1-based) covered by `blocks`, counted.
fn coverage(len: usize, k: usize, blocks: &[BlockRef]) -> Vec<usize> {
    let mut cov = vec![0; len + 2];
    for b in blocks.iter().filter(|b| b.seq == k && !b.is_empty()) {
        for c in &mut cov[b.lo..=b.hi] {
            *c += 1;
        }
    }
    cov
}

/// A single-field change that makes the maxima certificate claim something
/// false, or `None` if none of the mutation kinds applies.
fn mutate_maxima(seqs: &[Staircase], cert: &MaximaCertificate, rng: &mut ChaCha8Rng) -> Option<MaximaCertificate> {
    let covering: Vec<BlockRef> = cert
        .arguments
        .iter()
        .filter(|a| a.kind == MaximaKind::Domination)
        .flat_map(|a| a.witnesses.iter().copied())
        .chain(cert.output_blocks.iter().copied())
        .collect();
    let mut options: Vec<MaximaCertificate> = Vec::new();
    for (i, arg) in cert.arguments.iter().enumerate() {
        let s = arg.subject;
        let len = seqs[s.seq - 1].len();
        match arg.kind {
            MaximaKind::Maximality => {
                // Shrinking drops a maximal point from the output; growing
                // adds a dominated or duplicated one.
                let mut cands = vec![];
                if s.lo < s.hi {
                    cands.push(BlockRef::new(s.seq, s.lo + 1, s.hi));
                    cands.push(BlockRef::new(s.seq, s.lo, s.hi - 1));
                }
                if s.lo > 1 {
                    cands.push(BlockRef::new(s.seq, s.lo - 1, s.hi));
                }
                if s.hi < len {
                    cands.push(BlockRef::new(s.seq, s.lo, s.hi + 1));
                }
                for b in cands {
                    let mut m = cert.clone();
                    m.arguments[i].subject = b;
                    let j = m.output_blocks.iter().position(|o| *o == s).unwrap();
                    m.output_blocks[j] = b;
                    options.push(m);
                }
            }
            MaximaKind::Domination => {
                let p = seqs[s.seq - 1].points()[s.lo - 1];
                for (w_i, w) in arg.witnesses.iter().enumerate() {
                    let wp = seqs[w.seq - 1].points();
                    let cov = coverage(wp.len(), w.seq, &covering);
                    let mut cands = vec![];
                    // Growing onto a point the subject does not dominate.
                    if w.lo > 1 && !dominates(p, wp[w.lo - 2]) {
                        cands.push(BlockRef::new(w.seq, w.lo - 1, w.hi));
                    }
                    if w.hi < wp.len() && !dominates(p, wp[w.hi]) {
                        cands.push(BlockRef::new(w.seq, w.lo, w.hi + 1));
                    }
                    // Shrinking off a position nothing else covers.
                    if w.lo < w.hi && cov[w.lo] == 1 {
                        cands.push(BlockRef::new(w.seq, w.lo + 1, w.hi));
                    }
                    if w.lo < w.hi && cov[w.hi] == 1 {
                        cands.push(BlockRef::new(w.seq, w.lo, w.hi - 1));
                    }
                    for b in cands {
                        let mut m = cert.clone();
                        m.arguments[i].witnesses[w_i] = b;
                        options.push(m);
                    }
                }
            }
        }
    }
    if options.is_empty() {
        // Nothing to grow or shrink (e.g. one single-point staircase): point
        // an output block past the end of its sequence.
        let i = cert.arguments.iter().position(|a| a.kind == MaximaKind::Maximality)?;
        let s = cert.arguments[i].subject;
        let b = BlockRef::new(s.seq, s.lo, seqs[s.seq - 1].len() + 1);
        let mut m = cert.clone();
        m.arguments[i].subject = b;
        let j = m.output_blocks.iter().position(|o| *o == s).unwrap();
        m.output_blocks[j] = b;
        options.push(m);
    }
    options.choose(rng).cloned()
}

fn mutate_hull(seqs: &[UpperHullSeq], cert: &HullCertificate, rng: &mut ChaCha8Rng) -> Option<HullCertificate> {
    let covering: Vec<BlockRef> = cert
        .arguments
        .iter()
        .filter(|a| a.kind == HullKind::Eliminator)
        .flat_map(|a| a.witnesses.iter().copied())
        .chain(cert.output_blocks.iter().copied())
        .collect();
    let at = |k: usize, i: usize| seqs[k - 1].points()[i - 1];
    let mut options: Vec<HullCertificate> = Vec::new();
    for (i, arg) in cert.arguments.iter().enumerate() {
        let [(sa, pa), (sb, pb)] = arg.anchors;
        match arg.kind {
            HullKind::Convex => {
                let len = seqs[sa - 1].len();
                let mut cands = vec![];
                if pa < pb {
                    cands.push((pa + 1, pb));
                    cands.push((pa, pb - 1));
                }
                if pa > 1 {
                    cands.push((pa - 1, pb));
                }
                if pb < len {
                    cands.push((pa, pb + 1));
                }
                for (a, b) in cands {
                    let mut m = cert.clone();
                    m.arguments[i].anchors = [(sa, a), (sb, b)];
                    let j = m.output_blocks.iter().position(|o| *o == BlockRef::new(sa, pa, pb)).unwrap();
                    m.output_blocks[j] = BlockRef::new(sa, a, b);
                    options.push(m);
                }
            }
            HullKind::Eliminator => {
                let (a, b) = (at(sa, pa), at(sb, pb));
                for (w_i, w) in arg.witnesses.iter().enumerate() {
                    let wp = seqs[w.seq - 1].points();
                    let cov = coverage(wp.len(), w.seq, &covering);
                    let mut cands = vec![];
                    // Growing past the strip.
                    if w.lo > 1 && wp[w.lo - 2].x < a.x {
                        cands.push(BlockRef::with_pivot(w.seq, w.lo - 1, w.pivot.unwrap(), w.hi));
                    }
                    if w.hi < wp.len() && wp[w.hi].x > b.x {
                        cands.push(BlockRef::with_pivot(w.seq, w.lo, w.pivot.unwrap(), w.hi + 1));
                    }
                    if w.lo < w.hi && cov[w.lo] == 1 {
                        cands.push(BlockRef::with_pivot(w.seq, w.lo + 1, w.pivot.unwrap(), w.hi));
                    }
                    if w.lo < w.hi && cov[w.hi] == 1 {
                        cands.push(BlockRef::with_pivot(w.seq, w.lo, w.pivot.unwrap(), w.hi - 1));
                    }
                    // A pivot whose edge slopes do not bracket the anchor line.
                    if a.x < b.x {
                        let m = Slope::of(a, b);
                        for d in 0..wp.len() {
                            let right = (d + 1 < wp.len()).then(|| Slope::of(wp[d], wp[d + 1]));
                            let left = (d > 0).then(|| Slope::of(wp[d - 1], wp[d]));
                            let fits = right.is_none_or(|r| r <= m) && left.is_none_or(|l| m <= l);
                            if !fits {
                                cands.push(BlockRef::with_pivot(w.seq, w.lo, d + 1, w.hi));
                            }
                        }
                    }
                    for blk in cands {
                        let mut m = cert.clone();
                        m.arguments[i].witnesses[w_i] = blk;
                        options.push(m);
                    }
                }
            }
        }
    }
    if options.is_empty() {
        let i = cert.arguments.iter().position(|a| a.kind == HullKind::Convex)?;
        let [(sa, pa), (_, pb)] = cert.arguments[i].anchors;
        let end = seqs[sa - 1].len() + 1;
        let mut m = cert.clone();
        m.arguments[i].anchors[1].1 = end;
        let j = m.output_blocks.iter().position(|o| *o == BlockRef::new(sa, pa, pb)).unwrap();
        m.output_blocks[j] = BlockRef::new(sa, pa, end);
        options.push(m);
    }
    options.choose(rng).cloned()
}

fn criterion_2() -> Outcome {
    let results: Vec<Result<(), String>> = (0..2000u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9));
            let stairs = merge_staircase_instance(seed);
            let (_, cert) = quick_union_maxima(&stairs, &mut ProbeCounter::new()).map_err(|e| e.to_string())?;
            let text = format_maxima_certificate(&cert);
            let parsed = parse_maxima_certificate(&text).map_err(|e| e.to_string())?;
            if !verify_maxima_certificate(&stairs, &parsed, &mut ProbeCounter::new()).is_valid() {
                return Err(format!("seed {seed}: maxima certificate rejected"));
            }
            let bad = mutate_maxima(&stairs, &parsed, &mut rng).ok_or(format!("seed {seed}: no maxima mutation"))?;
            let bad = parse_maxima_certificate(&format_maxima_certificate(&bad)).map_err(|e| e.to_string())?;
            if verify_maxima_certificate(&stairs, &bad, &mut ProbeCounter::new()).is_valid() {
                return Err(format!("seed {seed}: mutated maxima certificate accepted"));
            }

            let hulls = merge_hull_instance(seed);
            let (_, cert) = quick_union_hull(&hulls, &mut ProbeCounter::new()).map_err(|e| e.to_string())?;
            let parsed = parse_hull_certificate(&format_hull_certificate(&cert)).map_err(|e| e.to_string())?;
            if !verify_hull_certificate(&hulls, &parsed, &mut ProbeCounter::new()).is_valid() {
                return Err(format!("seed {seed}: hull certificate rejected"));
            }
            let bad = mutate_hull(&hulls, &parsed, &mut rng).ok_or(format!("seed {seed}: no hull mutation"))?;
            let bad = parse_hull_certificate(&format_hull_certificate(&bad)).map_err(|e| e.to_string())?;
            if verify_hull_certificate(&hulls, &bad, &mut ProbeCounter::new()).is_valid() {
                return Err(format!("seed {seed}: mutated hull certificate accepted"));
            }
            Ok(())
        })
        .collect();
    let errs: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if errs.is_empty() {
        Ok("2000 maxima and 2000 hull certificates VALID; 2000 + 2000 mutations INVALID".into())
    } else {
        Err(format!("{} failures, first: {}", errs.len(), errs[0]))
    }
}

fn criterion_3() -> Outcome {
    let mut mismatches = Vec::new();
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = rng.gen_range(1..=3);
        let n = rng.gen_range(rho..=6);
        let bound = if seed % 2 == 0 { 3 } else { 20 };
        let mut stairs = random_staircases(&mut rng, n, rho, bound);
        stairs.truncate(6);
        let (_, cert) = left_to_right_merge(&stairs, &mut ProbeCounter::new()).map_err(|e| e.to_string())?;
        if !verify_maxima_certificate(&stairs, &cert, &mut ProbeCounter::new()).is_valid() {
            return Err(format!("seed {seed}: left-to-right certificate rejected"));
        }
        let min = min_certificate_length_exhaustive(&stairs).map_err(|e| format!("{e:?}"))?;
        if cert.length() != min {
            mismatches.push(format!("seed {seed}: {} vs {min}", cert.length()));
        }
    }
    if mismatches.is_empty() {
        Ok("500 instances: left-to-right length equals the exhaustive minimum".into())
    } else {
        Err(format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))
    }
}

fn criterion_4() -> Outcome {
    let ratios: Vec<f64> = (10_000..11_000u64)
        .into_par_iter()
        .map(|seed| {
            let stairs = merge_staircase_instance(seed);
            let (_, q) = quick_union_maxima(&stairs, &mut ProbeCounter::new()).unwrap();
            let (_, l) = left_to_right_merge(&stairs, &mut ProbeCounter::new()).unwrap();
            q.length() as f64 / l.length() as f64
        })
        .collect();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let msg = format!("max quick-union / left-to-right length ratio {max:.3} over 1000 instances (bound 8)");
    if max <= 8.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_5() -> Outcome {
    let n = 1 << 16;
    let (grid, alg, phase) = bench::suite("smooth-runs", n, 0).map_err(|e| e.to_string())?;
    let res = bench::scaling_suite(&grid, alg, phase).map_err(|e| e.to_string())?;
    let counts: Vec<(usize, u64)> = res.rows.iter().map(|m| (m.spec.param, m.report.phase(Phase::Merge))).collect();
    let slope = res.slope.unwrap_or(f64::NAN);
    let first = counts[0].1;
    let monotone = counts.windows(2).all(|w| w[0].1 <= w[1].1);
    let shown: Vec<String> = counts.iter().map(|(s, c)| format!("{s}:{c}")).collect();
    let msg = format!(
        "merge predicates by sigma [{}]; sigma=1 {first} <= {}; slope {slope:.3} in (0, {SMOOTH_SLOPE_BOUND}]",
        shown.join(" "),
        6 * n
    );
    if first <= 6 * n as u64 && monotone && slope > 0.0 && slope <= SMOOTH_SLOPE_BOUND {
        Ok(msg)
    } else {
        Err(format!("{msg}; monotone {monotone}"))
    }
}

fn criterion_6() -> Outcome {
    let n = 1 << 16;
    let (grid, alg, phase) = bench::suite("small-output", n, 0).map_err(|e| e.to_string())?;
    let res = bench::scaling_suite(&grid, alg, phase).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut over = Vec::new();
    for m in &res.rows {
        let h = m.spec.param;
        let bound = 12.0 * n as f64 * ((h + 1) as f64).log2();
        let total = m.report.predicate_count() as f64;
        worst = worst.max(total / bound);
        if total > bound {
            over.push(format!("h={h}: {total} > {bound:.0}"));
        }
    }
    let msg = format!("largest predicates / (12 n log2(h+1)) over h in 2..1024 is {worst:.3}");
    if over.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {}", over.join(", ")))
    }
}

fn criterion_7() -> Outcome {
    let (grid, alg, phase) = bench::suite("simple-chains", 0, 0).map_err(|e| e.to_string())?;
    let res = bench::scaling_suite(&grid, alg, phase).map_err(|e| e.to_string())?;
    let ratios: Vec<(usize, f64)> = res
        .rows
        .iter()
        .map(|m| {
            let n = m.spec.n;
            let mut sizes = vec![n - 15];
            sizes.extend([1; 15]);
            let h = entropy_bits(&sizes);
            (n, m.report.phase(Phase::Merge) as f64 / (n as f64 * (1.0 + h)))
        })
        .collect();
    let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let shown: Vec<String> = ratios.iter().map(|(n, r)| format!("{n}:{r:.3}")).collect();
    let msg = format!("merge / (n (1 + H)) [{}], spread {:.3} (bound 2)", shown.join(" "), hi / lo);
    if lo > 0.0 && hi / lo <= 2.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0;
    for case in 0..100_000 {
        let n = 1usize << rng.gen_range(0..=20);
        let n = rng.gen_range(0..=n);
        let from = [SearchFrom::Low, SearchFrom::High, SearchFrom::Both][rng.gen_range(0..3)];
        // Log-uniform distance from the starting end.
        let scale = 1usize << rng.gen_range(0..=20);
        let d = rng.gen_range(0..=scale).min(n);
        let answer = match from {
            SearchFrom::Low => d,
            SearchFrom::High => n - d,
            SearchFrom::Both if rng.gen() => d,
            SearchFrom::Both => n - d,
        };
        let base = rng.gen_range(0..1000);
        let mut c = ProbeCounter::new();
        let got = doubling_search(base..base + n, from, &mut c, |i, _| i >= base + answer);
        let dist = match from {
            SearchFrom::Low => answer,
            SearchFrom::High => n - answer,
            SearchFrom::Both => answer.min(n - answer),
        };
        let budget = doubling_budget(dist);
        worst = worst.max(c.total() as i64 - budget as i64);
        if got != base + answer || c.total() > budget {
            return Err(format!("case {case}: n {n}, answer {answer}, got {}, {} probes > {budget}", got - base, c.total()));
        }
    }
    Ok(format!("100000 searches within 2 ceil(log2(d+2)) + 3 probes (tightest slack {})", -worst))
}

fn criterion_9() -> Outcome {
    let mut worst_gap: f64 = f64::NEG_INFINITY;
    let mut smooth_checked = 0;
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..=16);
        let pts = match seed % 3 {
            0 => random_points(&mut rng, n, 3),
            1 => random_points(&mut rng, n, 1000),
            _ => {
                // A short-step walk, which is often simple for a while.
                let mut p = Point::new(0, 0);
                (0..n)
                    .map(|_| {
                        p = Point::new(p.x + rng.gen_range(-2..=4), p.y + rng.gen_range(-3..=3));
                        p
                    })
                    .collect()
            }
        };
        let part = partition_simple_chains(&pts, &mut ProbeCounter::new());
        let min = min_entropy_simple_partition(&pts).map_err(|e| format!("{e:?}"))?;
        worst_gap = worst_gap.max(part.entropy - min);
        if part.entropy > min + 1.0 + 1e-9 {
            return Err(format!("seed {seed}: entropy {:.4} > min {min:.4} + 1", part.entropy));
        }
        if n <= 12 {
            let sigma = decompose_smooth(&pts, &mut ProbeCounter::new()).sigma;
            let want = min_smooth_partition(&pts).map_err(|e| format!("{e:?}"))?;
            if sigma != want {
                return Err(format!("seed {seed}: {sigma} smooth runs, minimum {want}"));
            }
            smooth_checked += 1;
        }
    }
    Ok(format!(
        "500 inputs: chain entropy within {worst_gap:.3} bits of the minimum; {smooth_checked} smooth run counts minimal"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", criterion_1, 60),
        ("certificate soundness", criterion_2, 120),
        ("minimal left-to-right certificate", criterion_3, 120),
        ("certificate length ratio", criterion_4, 60),
        ("smooth-run adaptivity", criterion_5, 120),
        ("output-size adaptivity", criterion_6, 120),
        ("chain entropy adaptivity", criterion_7, 180),
        ("doubling-search budget", criterion_8, 10),
        ("partition quality", criterion_9, 120),
    ];
    let mut failed = 0;
    for (i, (name, run, target)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let time = format!("{:.1}s, target {target}s", took.as_secs_f64());
        let slow = if took > Duration::from_secs(*target) { " (over time target)" } else { "" };
        match outcome {
            Ok(msg) => println!("criterion {} PASS {name}: {msg} [{time}]{slow}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg} [{time}]{slow}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
