//! Command-line front end.
//!
//! Exit codes: 0 on success (including `evidence_only` verdicts), 1 on usage,
//! parse or field errors, 2 when a claimed rank is refuted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certify::{self, CertifyOptions, Verdict, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::io::{AnyLinearMatrix, MatrixFile};
use crate::lines::{self, Line};
use crate::pfaffian::{subsets, SubPfaffians};
use crate::polymat::LinearMatrix;
use crate::scalars::Field;
use crate::skewsym::{self, DEFAULT_MAX_RETRIES};
use crate::{corpus, numerology, with_matrix};

pub const SEED_ENV: &str = "SKEWRANK_SEED";

#[derive(Debug, Parser)]
#[command(name = "skewrank", version, about = "Certify constant rank of skew-symmetric matrices of linear forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify that a matrix file has constant rank and write `<file>.cert.json`.
    Certify {
        path: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Prime for the exact stage (rational inputs are reduced mod this prime).
        #[arg(long)]
        prime: Option<u64>,
        /// Run the Groebner emptiness check.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
        #[command(flatten)]
        seed: SeedArg,
        /// Certificate path, defaults to the input with extension `cert.json`.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print principal sub-Pfaffians of the given size (default: the full Pfaffian).
    Pfaffian {
        path: PathBuf,
        #[arg(long)]
        size: Option<usize>,
        /// Only print the symbolic rank upper bound.
        #[arg(long)]
        bound: bool,
    },
    /// Find an invertible scalar matrix making the pencil skew and write `<file>.skew.json`.
    Skewify {
        path: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
        max_retries: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Minimal indices of the pencil restricted to lines.
    Lines {
        path: PathBuf,
        /// Two spanning points, each a comma-separated list of integers.
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_hyphen_values = true, conflicts_with = "random")]
        line: Option<Vec<String>>,
        /// Number of random lines.
        #[arg(long)]
        random: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Numerical invariants for constant rank `r` and size `r + 2`.
    Numerology {
        #[arg(long)]
        rank: i64,
        #[arg(long)]
        json: bool,
    },
    /// Write a built-in matrix to `<name>.json` or the given path.
    Corpus {
        name: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<AnyLinearMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = MatrixFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_matrix()?)
}

pub fn execute(command: &Command, out: &mut dyn Write) -> anyhow::Result<u8> {
    match command {
        Command::Certify { path, rank, samples, prime, exact, degree_cap, seed, output } => {
            let m = read_matrix(path)?;
            let options = CertifyOptions {
                samples: *samples,
                prime: *prime,
                exact: *exact,
                seed: seed.seed,
                degree_cap: *degree_cap,
            };
            let cert = with_matrix!(&m, a => certify::certify_constant_rank(a, *rank, &options))?;
            let target = output.clone().unwrap_or_else(|| path.with_extension("cert.json"));
            fs::write(&target, cert.to_json()).with_context(|| format!("writing {}", target.display()))?;
            writeln!(out, "verdict: {}", cert.verdict.as_str())?;
            if let Some(w) = &cert.witness {
                writeln!(out, "witness rank {} at {:?}", w.rank, w.point.coords)?;
            }
            if let Some(lb) = &cert.lower_bound {
                writeln!(
                    out,
                    "groebner basis over F_{}: {} elements, leading pure powers {:?}",
                    lb.prime, lb.basis_size, lb.leading_pure_powers
                )?;
            }
            writeln!(out, "certificate: {}", target.display())?;
            Ok(if cert.verdict == Verdict::Refuted { 2 } else { 0 })
        }
        Command::Pfaffian { path, size, bound } => {
            let m = read_matrix(path)?;
            with_matrix!(&m, a => print_pfaffians(a, *size, *bound, out))?;
            Ok(0)
        }
        Command::Skewify { path, seed, max_retries, output } => {
            let m = read_matrix(path)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
            let (file, dim, delta) = with_matrix!(&m, b => {
                let s = skewsym::skew_symmetrize(b, &mut rng, *max_retries)?;
                let f = b.field();
                let delta: Vec<Vec<String>> = (0..s.delta.rows())
                    .map(|i| (0..s.delta.cols()).map(|j| f.format(s.delta.get(i, j))).collect())
                    .collect();
                (MatrixFile::from_matrix(&s.result)?, s.solution_dim, delta)
            });
            let target = output.clone().unwrap_or_else(|| path.with_extension("skew.json"));
            fs::write(&target, file.to_canonical_json()).with_context(|| format!("writing {}", target.display()))?;
            writeln!(out, "solution space dimension: {dim}")?;
            writeln!(out, "delta:")?;
            for row in delta {
                writeln!(out, "  [{}]", row.join(", "))?;
            }
            writeln!(out, "skew matrix: {}", target.display())?;
            Ok(0)
        }
        Command::Lines { path, line, random, seed } => {
            let m = read_matrix(path)?;
            with_matrix!(&m, a => print_lines(a, line.as_deref(), *random, seed.seed, out))?;
            Ok(0)
        }
        Command::Numerology { rank, json } => {
            let report = numerology::report(*rank)?;
            if *json {
                let value = serde_json::to_value(&report)?;
                writeln!(out, "{}", crate::io::canonical_json(&value))?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
            Ok(0)
        }
        Command::Corpus { name, output } => {
            let text = corpus::source(name)?;
            corpus::load(name)?;
            let target = output.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
            fs::write(&target, text).with_context(|| format!("writing {}", target.display()))?;
            writeln!(out, "wrote {}", target.display())?;
            Ok(0)
        }
    }
}

fn print_pfaffians<F: Field>(
    a: &LinearMatrix<F>,
    size: Option<usize>,
    bound: bool,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut subs = SubPfaffians::new(a)?;
    if bound {
        writeln!(out, "rank upper bound: {}", subs.rank_upper_bound())?;
        return Ok(());
    }
    let size = size.unwrap_or(a.n());
    if size % 2 == 1 {
        bail!(crate::Error::OddSize(size));
    }
    if size > a.n() {
        bail!(crate::Error::DimensionMismatch(format!("size {size} exceeds matrix size {}", a.n())));
    }
    for subset in subsets(a.n(), size) {
        let pf = subs.get(&subset);
        let idx: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
        writeln!(out, "pf[{}] = {}", idx.join(","), pf)?;
    }
    Ok(())
}

fn parse_point(text: &str) -> anyhow::Result<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad coordinate `{s}`")))
        .collect()
}

fn print_lines<F: Field>(
    a: &LinearMatrix<F>,
    line: Option<&[String]>,
    random: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let f = a.field();
    let lines: Vec<Line<F>> = match (line, random) {
        (Some(points), _) => {
            let p = parse_point(&points[0])?;
            let q = parse_point(&points[1])?;
            if p.len() != a.d() || q.len() != a.d() {
                bail!(crate::Error::DimensionMismatch(format!("points need {} coordinates", a.d())));
            }
            vec![Line::from_i64(f, &p, &q)?]
        }
        (None, Some(count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| Line::random(f, a.d(), &mut rng)).collect()
        }
        (None, None) => bail!("pass either --line P Q or --random M"),
    };
    let fmt = |v: &[F::Elem]| v.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(",");
    for l in &lines {
        let [p, q] = l.points();
        match lines::line_profile(a, l) {
            Ok(profile) => {
                let idx: Vec<String> = profile.indices.iter().map(|i| i.to_string()).collect();
                writeln!(out, "[{}] [{}] indices ({})", fmt(p), fmt(q), idx.join(","))?;
            }
            Err(e) => writeln!(out, "[{}] [{}] {e}", fmt(p), fmt(q))?,
        }
    }
    Ok(())
}
