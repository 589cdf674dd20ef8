//! Instance generators and the measurement harness.
//!
//! Generators are deterministic in their [`InstanceSpec`]: randomness comes
//! from a ChaCha8 stream seeded with `seed`. Measurements run an algorithm
//! with a fresh counter, cross-check the output against a reference and
//! return the [`CostReport`].

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use synergeo_core::hull::{
    levcopoulos_hull, quick_union_hull, synergistic_upper_hull, UpperHullSeq,
};
use synergeo_core::maxima::{decompose_smooth, left_to_right_merge, quick_union_maxima, synergistic_maxima, Staircase};
use synergeo_core::oracles::{brute_maxima_counted, brute_upper_hull_counted};
use synergeo_core::{entropy_bits, CostReport, Phase, Point, ProbeCounter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `param` = number of smooth runs.
    SmoothRuns,
    /// `param` = number of simple chains.
    SimpleChains,
    /// `param` = number of staircases.
    MergeStaircases,
    /// `param` = number of upper hulls.
    MergeHulls,
    /// `param` = coordinate bound.
    RandomUniform,
    /// `param` = output size of both maxima and upper hull.
    SmallOutput,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::SmoothRuns,
        Family::SimpleChains,
        Family::MergeStaircases,
        Family::MergeHulls,
        Family::RandomUniform,
        Family::SmallOutput,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SmoothRuns => "SMOOTH_RUNS",
            Family::SimpleChains => "SIMPLE_CHAINS",
            Family::MergeStaircases => "MERGE_STAIRCASES",
            Family::MergeHulls => "MERGE_HULLS",
            Family::RandomUniform => "RANDOM_UNIFORM",
            Family::SmallOutput => "SMALL_OUTPUT",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let want = s.to_ascii_uppercase().replace('-', "_");
        Family::ALL.into_iter().find(|f| f.name() == want).ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// Chain sizes for [`Family::SimpleChains`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Profile {
    /// Sizes as equal as possible.
    #[default]
    Equal,
    /// One chain of `n - param + 1` points, the rest single points.
    OneLarge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub param: usize,
    pub seed: u64,
    pub profile: Profile,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, param: usize, seed: u64) -> Self {
        InstanceSpec { family, n, param, seed, profile: Profile::Equal }
    }

    pub fn with_profile(mut self, profile: Profile) -> Self {
        self.profile = profile;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Points(Vec<Point>),
    Staircases(Vec<Staircase>),
    Hulls(Vec<UpperHullSeq>),
}

impl Instance {
    /// Points in input order, sequences concatenated.
    pub fn points(&self) -> Vec<Point> {
        match self {
            Instance::Points(p) => p.clone(),
            Instance::Staircases(s) => s.iter().flat_map(|s| s.points().iter().copied()).collect(),
            Instance::Hulls(s) => s.iter().flat_map(|s| s.points().iter().copied()).collect(),
        }
    }

    /// Sequences as point lists (a point instance is one sequence).
    pub fn sequences(&self) -> Vec<Vec<Point>> {
        match self {
            Instance::Points(p) => vec![p.clone()],
            Instance::Staircases(s) => s.iter().map(|s| s.points().to_vec()).collect(),
            Instance::Hulls(s) => s.iter().map(|s| s.points().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("infeasible spec: {0}")]
    Infeasible(String),
    #[error("{algorithm} does not run on this instance kind")]
    WrongInstance { algorithm: Algorithm },
    #[error("{algorithm} output differs from the reference")]
    Mismatch { algorithm: Algorithm },
    #[error("{0}")]
    Input(String),
}

fn infeasible(msg: impl Into<String>) -> BenchError {
    BenchError::Infeasible(msg.into())
}

/// Builds the instance described by `spec`.
pub fn generate(spec: &InstanceSpec) -> Result<Instance, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, param) = (spec.n, spec.param);
    match spec.family {
        Family::SmoothRuns => smooth_runs(n, param, &mut rng),
        Family::SimpleChains => simple_chains(n, param, spec.profile, &mut rng),
        Family::MergeStaircases => merge_staircases(n, param, &mut rng),
        Family::MergeHulls => merge_hulls(n, param, &mut rng),
        Family::RandomUniform => {
            if param == 0 || param as i64 > synergeo_core::geom::COORD_LIMIT {
                return Err(infeasible("coordinate bound must be in 1..=2^31"));
            }
            let r = param as i64;
            Ok(Instance::Points((0..n).map(|_| Point::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))).collect()))
        }
        Family::SmallOutput => small_output(n, param, &mut rng),
    }
}

/// Labels `0..k` with the given multiplicities in random order, except that
/// the first and last `k` slots hold `0..k` in order.
fn interleave(sizes: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = sizes.len();
    let mut middle: Vec<usize> = sizes.iter().enumerate().flat_map(|(r, &s)| std::iter::repeat_n(r, s - 2)).collect();
    middle.shuffle(rng);
    (0..k).chain(middle).chain(0..k).collect()
}

fn split_sizes(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|r| n / k + usize::from(r < n % k)).collect()
}

/// Decreasing staircase coordinates for `t` ranks: x increasing, y decreasing,
/// random gaps of 1 to 3.
fn staircase_coords(t: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let (mut x, mut y) = (-(1i64 << 30), 1i64 << 30);
    (0..t)
        .map(|_| {
            x += rng.gen_range(1..=3);
            y -= rng.gen_range(1..=3);
            Point::new(x, y)
        })
        .collect()
}

fn smooth_runs(n: usize, sigma: usize, rng: &mut ChaCha8Rng) -> Result<Instance, BenchError> {
    if sigma == 0 || n < 4 * sigma {
        return Err(infeasible("SMOOTH_RUNS needs 1 <= sigma <= n/4"));
    }
    let sizes = split_sizes(n, sigma);
    // About a quarter of each run is fillers dominated by the current tip.
    let fillers: Vec<usize> = sizes.iter().map(|&s| s / 4).collect();
    let tips: Vec<usize> = sizes.iter().zip(&fillers).map(|(s, f)| s - f).collect();
    let labels = interleave(&tips, rng);
    let coords = staircase_coords(labels.len(), rng);
    let mut per_run: Vec<Vec<Point>> = vec![Vec::new(); sigma];
    for (&r, &p) in labels.iter().zip(&coords) {
        per_run[r].push(p);
    }
    let mut out = Vec::with_capacity(n);
    for (r, run_tips) in per_run.into_iter().enumerate() {
        // Filler slots after random tips other than the last.
        let mut after = vec![0usize; run_tips.len()];
        for _ in 0..fillers[r] {
            after[rng.gen_range(0..run_tips.len() - 1)] += 1;
        }
        for (t, tip) in run_tips.into_iter().enumerate() {
            out.push(tip);
            for k in 0..after[t] {
                out.push(Point::new(tip.x, tip.y - 1 - k as i64));
            }
        }
    }
    debug_assert_eq!(decompose_smooth(&out, &mut ProbeCounter::new()).sigma, sigma);
    Ok(Instance::Points(out))
}

fn small_output(n: usize, h: usize, rng: &mut ChaCha8Rng) -> Result<Instance, BenchError> {
    if h == 0 || h > n || h > 1 << 12 {
        return Err(infeasible("SMALL_OUTPUT needs 1 <= h <= min(n, 4096)"));
    }
    // Strictly concave and decreasing: (64 i, 2^30 - 64 i^2).
    let top: Vec<Point> = (1..=h as i64).map(|i| Point::new(64 * i, (1 << 30) - 64 * i * i)).collect();
    let (x_lo, x_hi, y_floor) = (top[0].x, top[h - 1].x, top[h - 1].y);
    let mut seen: std::collections::HashSet<Point> = top.iter().copied().collect();
    let mut out = top;
    while out.len() < n {
        let p = Point::new(rng.gen_range(x_lo..=x_hi), rng.gen_range(0..y_floor));
        if seen.insert(p) {
            out.push(p);
        }
    }
    out.shuffle(rng);
    Ok(Instance::Points(out))
}

fn chain_sizes(n: usize, k: usize, profile: Profile) -> Vec<usize> {
    match profile {
        Profile::Equal => split_sizes(n, k),
        Profile::OneLarge => std::iter::once(n - k + 1).chain(std::iter::repeat_n(1, k - 1)).collect(),
    }
}

fn simple_chains(n: usize, k: usize, profile: Profile, rng: &mut ChaCha8Rng) -> Result<Instance, BenchError> {
    if k == 0 || n < k || n > 1 << 20 {
        return Err(infeasible("SIMPLE_CHAINS needs 1 <= kappa <= n <= 2^20"));
    }
    let sizes = chain_sizes(n, k, profile);
    let mut out = Vec::with_capacity(n);
    for (c, &m) in sizes.iter().enumerate() {
        // A concave cap over x in [0, 4m), shifted down by a random offset;
        // single points alternate far above and far below.
        if m == 1 {
            let y = if c % 2 == 0 { 1 << 30 } else { -(1 << 30) };
            out.push(Point::new(rng.gen_range(0..4 * n as i64), y - c as i64));
            continue;
        }
        let half = 2 * m as i64;
        let drop = rng.gen_range(0..=half) + c as i64;
        let mut x = 0i64;
        for _ in 0..m {
            x += rng.gen_range(1..=4);
            let d = (x - half) / 4;
            out.push(Point::new(x, -d * d - drop));
        }
    }
    Ok(Instance::Points(out))
}

fn merge_staircases(n: usize, rho: usize, rng: &mut ChaCha8Rng) -> Result<Instance, BenchError> {
    if rho == 0 || n < 2 * rho {
        return Err(infeasible("MERGE_STAIRCASES needs 1 <= rho <= n/2"));
    }
    let labels = interleave(&split_sizes(n, rho), rng);
    let offsets: Vec<i64> = (0..rho).map(|_| rng.gen_range(-8..=8)).collect();
    let mut seqs: Vec<Vec<Point>> = vec![Vec::new(); rho];
    for (t, &r) in labels.iter().enumerate() {
        let t = t as i64;
        seqs[r].push(Point::new(4 * t, -4 * t + offsets[r]));
    }
    Ok(Instance::Staircases(seqs.into_iter().map(|s| Staircase::new(s).expect("staircase")).collect()))
}

fn merge_hulls(n: usize, rho: usize, rng: &mut ChaCha8Rng) -> Result<Instance, BenchError> {
    if rho == 0 || n < 2 * rho || n > 40_000 {
        return Err(infeasible("MERGE_HULLS needs 1 <= rho <= n/2 and n <= 40000"));
    }
    let labels = interleave(&split_sizes(n, rho), rng);
    let caps: Vec<(i64, i64)> = (0..rho).map(|_| (rng.gen_range(0..n as i64), rng.gen_range(0..=n as i64))).collect();
    let mut seqs: Vec<Vec<Point>> = vec![Vec::new(); rho];
    for (x, &r) in labels.iter().enumerate() {
        let (c, off) = caps[r];
        let d = x as i64 - c;
        seqs[r].push(Point::new(x as i64, off - d * d));
    }
    Ok(Instance::Hulls(seqs.into_iter().map(|s| UpperHullSeq::new(s).expect("concave")).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BruteMaxima,
    SynergisticMaxima,
    QuickUnionMaxima,
    LeftToRight,
    BruteHull,
    LevcopoulosHull,
    SynergisticHull,
    QuickUnionHull,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::BruteMaxima,
        Algorithm::SynergisticMaxima,
        Algorithm::QuickUnionMaxima,
        Algorithm::LeftToRight,
        Algorithm::BruteHull,
        Algorithm::LevcopoulosHull,
        Algorithm::SynergisticHull,
        Algorithm::QuickUnionHull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteMaxima => "brute_maxima",
            Algorithm::SynergisticMaxima => "synergistic_maxima",
            Algorithm::QuickUnionMaxima => "quick_union_maxima",
            Algorithm::LeftToRight => "left_to_right_merge",
            Algorithm::BruteHull => "brute_upper_hull",
            Algorithm::LevcopoulosHull => "levcopoulos_hull",
            Algorithm::SynergisticHull => "synergistic_upper_hull",
            Algorithm::QuickUnionHull => "quick_union_hull",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Maxima by sorting and one sweep; independent of the measured code.
pub fn reference_maxima(points: &[Point]) -> Vec<Point> {
    let mut v = points.to_vec();
    v.sort_unstable_by_key(|p| std::cmp::Reverse((p.x, p.y)));
    let mut out: Vec<Point> = Vec::new();
    for p in v {
        if out.last().is_none_or(|l| p.y > l.y) {
            out.push(p);
        }
    }
    out.reverse();
    out
}

/// Upper hull by the monotone chain; independent of the measured code.
pub fn reference_upper_hull(points: &[Point]) -> Vec<Point> {
    let mut v = points.to_vec();
    v.sort_unstable();
    v.dedup();
    let mut out: Vec<Point> = Vec::new();
    for p in v {
        if out.last().is_some_and(|l| l.x == p.x) {
            out.pop();
        }
        while out.len() >= 2 && synergeo_core::orient(out[out.len() - 2], out[out.len() - 1], p) >= 0 {
            out.pop();
        }
        out.push(p);
    }
    out
}

fn merge_report(n: usize, h: usize, cert_blocks: usize, delta: usize, m_list: Vec<usize>, counter: ProbeCounter, sizes: Vec<usize>) -> CostReport {
    CostReport {
        n,
        h,
        rho: sizes.len(),
        beta: cert_blocks,
        delta,
        m_list,
        entropy: entropy_bits(&sizes),
        sizes,
        counter,
        ..CostReport::default()
    }
}

/// Runs `algorithm` on `instance` with a fresh counter and checks its output
/// against the sort-based reference.
pub fn measure(algorithm: Algorithm, instance: &Instance) -> Result<CostReport, BenchError> {
    let wrong = || BenchError::WrongInstance { algorithm };
    let pts = instance.points();
    let (report, output) = match (algorithm, instance) {
        (Algorithm::BruteMaxima, Instance::Points(p)) => {
            let mut c = ProbeCounter::new();
            c.set_phase(Phase::Brute);
            let out = brute_maxima_counted(p, &mut c);
            let h = out.len();
            (CostReport { n: pts.len(), h, counter: c, ..CostReport::default() }, out.into_points())
        }
        (Algorithm::SynergisticMaxima, Instance::Points(p)) => {
            let (out, r) = synergistic_maxima(p);
            (r, out.into_points())
        }
        (Algorithm::QuickUnionMaxima | Algorithm::LeftToRight, Instance::Staircases(s)) => {
            let mut c = ProbeCounter::new();
            c.set_phase(Phase::Merge);
            let res = if algorithm == Algorithm::QuickUnionMaxima {
                quick_union_maxima(s, &mut c)
            } else {
                left_to_right_merge(s, &mut c)
            };
            let (out, cert) = res.map_err(|e| BenchError::Input(e.to_string()))?;
            let sizes = s.iter().map(|s| s.len()).collect();
            let r = merge_report(pts.len(), out.len(), cert.block_count(), cert.length(), cert.m_list(), c, sizes);
            (r, out.into_points())
        }
        (Algorithm::BruteHull, Instance::Points(p)) => {
            let mut c = ProbeCounter::new();
            c.set_phase(Phase::Brute);
            let out = brute_upper_hull_counted(p, &mut c);
            (CostReport { n: pts.len(), h: out.len(), counter: c, ..CostReport::default() }, out)
        }
        (Algorithm::LevcopoulosHull, Instance::Points(p)) => {
            let (out, _, r) = levcopoulos_hull(p);
            (r, out.into_points())
        }
        (Algorithm::SynergisticHull, Instance::Points(p)) => {
            let (out, r) = synergistic_upper_hull(p);
            (r, out.into_points())
        }
        (Algorithm::QuickUnionHull, Instance::Hulls(s)) => {
            let mut c = ProbeCounter::new();
            c.set_phase(Phase::Merge);
            let (out, cert) = quick_union_hull(s, &mut c).map_err(|e| BenchError::Input(e.to_string()))?;
            let sizes = s.iter().map(|s| s.len()).collect();
            let r = merge_report(pts.len(), out.len(), cert.block_count(), cert.length(), cert.m_list(), c, sizes);
            (r, out.into_points())
        }
        _ => return Err(wrong()),
    };
    let reference = match algorithm {
        Algorithm::BruteMaxima | Algorithm::SynergisticMaxima | Algorithm::QuickUnionMaxima | Algorithm::LeftToRight => {
            reference_maxima(&pts)
        }
        _ => reference_upper_hull(&pts),
    };
    if output != reference {
        return Err(BenchError::Mismatch { algorithm });
    }
    Ok(report)
}

/// One measured grid cell.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub spec: InstanceSpec,
    pub algorithm: Algorithm,
    pub report: CostReport,
    pub wall_ns: u128,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub rows: Vec<Measurement>,
    /// Least-squares slope of `predicates / n` against `log2(param)`, using
    /// the phase if given, else the total. `None` with fewer than two
    /// distinct parameters.
    pub slope: Option<f64>,
}

/// Generates and measures every cell of `grid` (in parallel), then fits the
/// per-point count against `log2(param)`.
pub fn scaling_suite(grid: &[InstanceSpec], algorithm: Algorithm, phase: Option<Phase>) -> Result<SuiteResult, BenchError> {
    let rows: Vec<Measurement> = grid
        .par_iter()
        .map(|spec| {
            let inst = generate(spec)?;
            let start = Instant::now();
            let mut report = measure(algorithm, &inst)?;
            let wall_ns = start.elapsed().as_nanos();
            report.seed = Some(spec.seed);
            Ok(Measurement { spec: *spec, algorithm, report, wall_ns })
        })
        .collect::<Result<_, BenchError>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|m| {
            let count = phase.map_or(m.report.predicate_count(), |p| m.report.phase(p));
            ((m.spec.param as f64).log2(), count as f64 / m.spec.n as f64)
        })
        .collect();
    Ok(SuiteResult { slope: fit_slope(&points), rows })
}

/// Least-squares slope; `None` when the x values do not vary.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 1e-12).then(|| sxy / sxx)
}

pub const CSV_HEADER: &str = "family,n,param,seed,algorithm,phase,predicates,h,sigma,kappa,beta,delta,entropy,wall_ns";

/// One CSV row per (run, phase) with a non-zero count, plus a `total` row.
pub fn to_csv(rows: &[Measurement]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for m in rows {
        let r = &m.report;
        let phases = r.counter.phase_counts().filter(|&(_, c)| c > 0).map(|(p, c)| (p.as_str(), c));
        for (phase, count) in phases.chain(std::iter::once(("total", r.predicate_count()))) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{:.6},{}",
                m.spec.family, m.spec.n, m.spec.param, m.spec.seed, m.algorithm, phase, count, r.h, r.sigma, r.kappa,
                r.beta, r.delta, r.entropy, m.wall_ns
            );
        }
    }
    out
}

/// Named grids used by the command-line `bench` subcommand.
pub fn suite(name: &str, n: usize, seed: u64) -> Result<(Vec<InstanceSpec>, Algorithm, Option<Phase>), BenchError> {
    let pow2 = |hi: u32| (0..=hi).map(|e| 1usize << e);
    Ok(match name {
        "smooth-runs" => (
            pow2(8).map(|s| InstanceSpec::new(Family::SmoothRuns, n, s, seed)).collect(),
            Algorithm::SynergisticMaxima,
            Some(Phase::Merge),
        ),
        "small-output" => (
            pow2(10).skip(1).map(|h| InstanceSpec::new(Family::SmallOutput, n, h, seed)).collect(),
            Algorithm::SynergisticMaxima,
            None,
        ),
        "small-output-hull" => (
            pow2(10).skip(1).map(|h| InstanceSpec::new(Family::SmallOutput, n, h, seed)).collect(),
            Algorithm::SynergisticHull,
            None,
        ),
        "simple-chains" => (
            (12..=16)
                .map(|e| InstanceSpec::new(Family::SimpleChains, 1 << e, 16, seed).with_profile(Profile::OneLarge))
                .collect(),
            Algorithm::LevcopoulosHull,
            Some(Phase::Merge),
        ),
        "merge-staircases" => (
            pow2(8).map(|r| InstanceSpec::new(Family::MergeStaircases, n, r, seed)).collect(),
            Algorithm::QuickUnionMaxima,
            None,
        ),
        "merge-hulls" => (
            pow2(8).map(|r| InstanceSpec::new(Family::MergeHulls, n.min(40_000), r, seed)).collect(),
            Algorithm::QuickUnionHull,
            None,
        ),
        "random-uniform" => (
            pow2(16).skip(4).step_by(2).map(|r| InstanceSpec::new(Family::RandomUniform, n, r, seed)).collect(),
            Algorithm::SynergisticHull,
            None,
        ),
        other => return Err(BenchError::Input(format!("unknown suite {other:?}"))),
    })
}

pub const SUITES: [&str; 7] =
    ["smooth-runs", "small-output", "small-output-hull", "simple-chains", "merge-staircases", "merge-hulls", "random-uniform"];
