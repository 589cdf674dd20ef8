//! The `synergeo` command line. Exit codes: 0 success, 1 verification
//! failure, 2 input or parse error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, Family, InstanceSpec, Profile};
use crate::formats::{
    format_hull_certificate, format_maxima_certificate, format_points, parse_hull_certificate,
    parse_maxima_certificate, parse_points,
};
use synergeo_core::hull::{
    levcopoulos_hull, partition_simple_chains, quick_union_hull, synergistic_upper_hull_certified,
    verify_hull_certificate, UpperHullSeq,
};
use synergeo_core::maxima::{
    decompose_smooth, quick_union_maxima, synergistic_maxima_certified, verify_maxima_certificate, Staircase, Verdict,
};
use synergeo_core::oracles::{brute_maxima, brute_upper_hull};
use synergeo_core::{Point, ProbeCounter};

#[derive(Parser, Debug)]
#[command(name = "synergeo", version, about = "Adaptive planar maxima and upper hulls with certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MaximaAlgo {
    Brute,
    Synergistic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HullAlgo {
    Brute,
    Levcopoulos,
    Synergistic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PartitionMode {
    Smooth,
    Simple,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProfileArg {
    Equal,
    OneLarge,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maxima of the points in a file (all sequences together).
    Maxima {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "synergistic")]
        algo: MaximaAlgo,
        /// Write the merge certificate here and its instance to `<out>.inst`.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Upper hull of the points in a file.
    Hull {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "synergistic")]
        algo: HullAlgo,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Smooth-run or simple-chain partition, printed as a multi-sequence file.
    Partition {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: PartitionMode,
    },
    /// Merge the staircases of a multi-sequence file.
    MergeMaxima {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Merge the upper hulls of a multi-sequence file.
    MergeHulls {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Check a maxima certificate against its instance.
    VerifyMaxima { inst: PathBuf, cert: PathBuf },
    /// Check a hull certificate against its instance.
    VerifyHull { inst: PathBuf, cert: PathBuf },
    /// Write a generated instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        param: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "equal")]
        profile: ProfileArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named measurement grid and write CSV.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1 << 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit code.
struct Exit(i32, String);

fn input(msg: impl std::fmt::Display) -> Exit {
    Exit(2, msg.to_string())
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_sequences(path: &Path) -> Result<Vec<Vec<Point>>, Exit> {
    parse_points(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_points(path: &Path) -> Result<Vec<Point>, Exit> {
    Ok(read_sequences(path)?.concat())
}

fn staircases(seqs: Vec<Vec<Point>>) -> Result<Vec<Staircase>, Exit> {
    seqs.into_iter()
        .enumerate()
        .map(|(k, s)| Staircase::new(s).map_err(|i| input(format!("sequence {} is not a staircase at position {}", k + 1, i + 1))))
        .collect()
}

fn hulls(seqs: Vec<Vec<Point>>) -> Result<Vec<UpperHullSeq>, Exit> {
    seqs.into_iter()
        .enumerate()
        .map(|(k, s)| UpperHullSeq::new(s).map_err(|i| input(format!("sequence {} is not an upper hull at position {}", k + 1, i + 1))))
        .collect()
}

fn inst_path(cert: &Path) -> PathBuf {
    let mut s = cert.as_os_str().to_owned();
    s.push(".inst");
    PathBuf::from(s)
}

fn verdict(v: Verdict, out: &mut dyn Write) -> Result<(), Exit> {
    match v {
        Verdict::Valid => {
            let _ = writeln!(out, "VALID");
            Ok(())
        }
        Verdict::Invalid(r) => Err(Exit(1, format!("INVALID: {r}"))),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Exit> {
    match cmd {
        Command::Maxima { file, algo, cert } => {
            let pts = read_points(&file)?;
            let result = match algo {
                MaximaAlgo::Brute => brute_maxima(&pts),
                MaximaAlgo::Synergistic => synergistic_maxima_certified(&pts).0,
            };
            if let Some(path) = cert {
                let (_, (stairs, c), _) = synergistic_maxima_certified(&pts);
                write(&path, &format_maxima_certificate(&c))?;
                write(&inst_path(&path), &format_points(&stairs.iter().map(|s| s.points()).collect::<Vec<_>>()))?;
            }
            let _ = out.write_all(format_points(&[result.points()]).as_bytes());
        }
        Command::Hull { file, algo, cert } => {
            let pts = read_points(&file)?;
            let result = match algo {
                HullAlgo::Brute => brute_upper_hull(&pts),
                HullAlgo::Levcopoulos => levcopoulos_hull(&pts).0.into_points(),
                HullAlgo::Synergistic => synergistic_upper_hull_certified(&pts).0.into_points(),
            };
            if let Some(path) = cert {
                let (_, (chains, c), _) = synergistic_upper_hull_certified(&pts);
                write(&path, &format_hull_certificate(&c))?;
                write(&inst_path(&path), &format_points(&chains.iter().map(|s| s.points()).collect::<Vec<_>>()))?;
            }
            let _ = out.write_all(format_points(&[result]).as_bytes());
        }
        Command::Partition { file, mode } => {
            let pts = read_points(&file)?;
            let mut c = ProbeCounter::new();
            let (parts, summary): (Vec<&[Point]>, String) = match mode {
                PartitionMode::Smooth => {
                    let d = decompose_smooth(&pts, &mut c);
                    (d.runs.iter().map(|r| &pts[r.range.clone()]).collect(), format!("# sigma {}", d.sigma))
                }
                PartitionMode::Simple => {
                    let p = partition_simple_chains(&pts, &mut c);
                    let parts = p.chains.iter().map(|r| &pts[r.clone()]).collect();
                    (parts, format!("# kappa {} entropy {:.6}", p.kappa, p.entropy))
                }
            };
            let _ = writeln!(out, "{summary}");
            let _ = out.write_all(format_points(&parts).as_bytes());
        }
        Command::MergeMaxima { file, cert } => {
            let seqs = staircases(read_sequences(&file)?)?;
            let (res, c) = quick_union_maxima(&seqs, &mut ProbeCounter::new()).map_err(input)?;
            write(&cert, &format_maxima_certificate(&c))?;
            let _ = out.write_all(format_points(&[res.points()]).as_bytes());
        }
        Command::MergeHulls { file, cert } => {
            let seqs = hulls(read_sequences(&file)?)?;
            let (res, c) = quick_union_hull(&seqs, &mut ProbeCounter::new()).map_err(input)?;
            write(&cert, &format_hull_certificate(&c))?;
            let _ = out.write_all(format_points(&[res.points()]).as_bytes());
        }
        Command::VerifyMaxima { inst, cert } => {
            let seqs = staircases(read_sequences(&inst)?)?;
            let c = parse_maxima_certificate(&read(&cert)?).map_err(|e| input(format!("{}: {e}", cert.display())))?;
            verdict(verify_maxima_certificate(&seqs, &c, &mut ProbeCounter::new()), out)?;
        }
        Command::VerifyHull { inst, cert } => {
            let seqs = hulls(read_sequences(&inst)?)?;
            let c = parse_hull_certificate(&read(&cert)?).map_err(|e| input(format!("{}: {e}", cert.display())))?;
            verdict(verify_hull_certificate(&seqs, &c, &mut ProbeCounter::new()), out)?;
        }
        Command::Gen { family, n, param, seed, profile, out: path } => {
            let profile = match profile {
                ProfileArg::Equal => Profile::Equal,
                ProfileArg::OneLarge => Profile::OneLarge,
            };
            let inst = bench::generate(&InstanceSpec::new(family, n, param, seed).with_profile(profile)).map_err(input)?;
            write(&path, &format_points(&inst.sequences()))?;
        }
        Command::Bench { suite, out: path, n, seed } => {
            let (grid, alg, phase) = bench::suite(&suite, n, seed).map_err(input)?;
            let res = bench::scaling_suite(&grid, alg, phase).map_err(input)?;
            write(&path, &bench::to_csv(&res.rows))?;
            match res.slope {
                Some(s) => {
                    let _ = writeln!(out, "{suite}: {} cells, fitted slope {s:.4} per log2(param)", res.rows.len());
                }
                None => {
                    let _ = writeln!(out, "{suite}: {} cells, slope undefined", res.rows.len());
                }
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}
