use proptest::prelude::*;
use synergeo_core::maxima::{
    decompose_smooth, left_to_right_merge, merge_two_staircases, quick_union_maxima, synergistic_maxima,
    validate_smooth, verify_maxima_certificate, Staircase,
};
use synergeo_core::oracles::{brute_maxima, min_certificate_length_exhaustive, min_smooth_partition};
use synergeo_core::{Point, ProbeCounter};

/// Builds disjoint staircases from raw coordinate lists: each list's distinct
/// x values ascending are paired with its distinct y values descending.
fn staircases(raw: &[(Vec<i64>, Vec<i64>)]) -> Vec<Staircase> {
    let mut seen = std::collections::HashSet::new();
    raw.iter()
        .map(|(xs, ys)| {
            let mut xs = xs.clone();
            xs.sort_unstable();
            xs.dedup();
            let mut ys = ys.clone();
            ys.sort_unstable_by(|a, b| b.cmp(a));
            ys.dedup();
            let pts: Vec<Point> = xs.into_iter().zip(ys).map(|(x, y)| Point::new(x, y)).filter(|p| seen.insert(*p)).collect();
            Staircase::new(pts).unwrap()
        })
        .collect()
}

fn raw_instance(max_seqs: usize, max_len: usize, coord: i64) -> impl Strategy<Value = Vec<(Vec<i64>, Vec<i64>)>> {
    prop::collection::vec(
        (prop::collection::vec(-coord..=coord, 0..=max_len), prop::collection::vec(-coord..=coord, 0..=max_len)),
        1..=max_seqs,
    )
}

fn union(seqs: &[Staircase]) -> Vec<Point> {
    seqs.iter().flat_map(|s| s.points().iter().copied()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn quick_union_matches_brute_and_verifies(raw in raw_instance(8, 24, 60)) {
        let seqs = staircases(&raw);
        let mut c = ProbeCounter::new();
        let (out, cert) = quick_union_maxima(&seqs, &mut c).unwrap();
        prop_assert_eq!(&out, &brute_maxima(&union(&seqs)));
        let verdict = verify_maxima_certificate(&seqs, &cert, &mut c);
        prop_assert!(verdict.is_valid(), "{:?}", verdict);
    }

    #[test]
    fn left_to_right_matches_brute_and_verifies(raw in raw_instance(8, 24, 60)) {
        let seqs = staircases(&raw);
        let mut c = ProbeCounter::new();
        let (out, cert) = left_to_right_merge(&seqs, &mut c).unwrap();
        prop_assert_eq!(&out, &brute_maxima(&union(&seqs)));
        let verdict = verify_maxima_certificate(&seqs, &cert, &mut c);
        prop_assert!(verdict.is_valid(), "{:?}", verdict);
        let (_, qcert) = quick_union_maxima(&seqs, &mut c).unwrap();
        prop_assert!(cert.length() <= qcert.length());
    }

    #[test]
    fn synergistic_matches_brute(pts in prop::collection::vec((-100i64..=100, -100i64..=100), 0..=64)) {
        let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
        let (out, report) = synergistic_maxima(&pts);
        prop_assert_eq!(&out, &brute_maxima(&pts));
        prop_assert_eq!(report.h, out.len());
    }

    #[test]
    fn pairwise_merging_matches_brute(pts in prop::collection::vec((-30i64..=30, -30i64..=30), 0..=64)) {
        let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
        let mut c = ProbeCounter::new();
        let dec = decompose_smooth(&pts, &mut c);
        let merged = dec.runs.iter().fold(Staircase::default(), |acc, r| merge_two_staircases(&acc, &r.staircase, &mut c));
        prop_assert_eq!(merged, brute_maxima(&pts));
    }

    #[test]
    fn smooth_runs_tile_and_are_minimal(pts in prop::collection::vec((-5i64..=5, -5i64..=5), 0..=12)) {
        let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
        let mut c = ProbeCounter::new();
        let dec = decompose_smooth(&pts, &mut c);
        let mut next = 0;
        for run in &dec.runs {
            prop_assert_eq!(run.range.start, next);
            prop_assert!(validate_smooth(&pts[run.range.clone()]));
            next = run.range.end;
        }
        prop_assert_eq!(next, pts.len());
        prop_assert_eq!(dec.sigma, min_smooth_partition(&pts).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn left_to_right_length_is_minimal(raw in raw_instance(3, 3, 6)) {
        let mut seqs = staircases(&raw);
        // Stay within the exhaustive oracle's guard.
        let mut budget = 6usize;
        for s in seqs.iter_mut() {
            let keep = s.len().min(budget);
            budget -= keep;
            *s = Staircase::new(s.points()[..keep].to_vec()).unwrap();
        }
        let mut c = ProbeCounter::new();
        let (_, cert) = left_to_right_merge(&seqs, &mut c).unwrap();
        prop_assert_eq!(cert.length(), min_certificate_length_exhaustive(&seqs).unwrap());
    }
}

#[test]
fn single_sequence_passes_through() {
    let s = Staircase::new(vec![Point::new(0, 3), Point::new(1, 2), Point::new(2, 1)]).unwrap();
    let mut c = ProbeCounter::new();
    let (out, cert) = quick_union_maxima(std::slice::from_ref(&s), &mut c).unwrap();
    assert_eq!(out, s);
    assert_eq!(cert.arguments.len(), 1);
    assert!(c.total() <= 2);
}
