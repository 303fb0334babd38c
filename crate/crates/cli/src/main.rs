//! `lcex`: build, query and benchmark encoding LCE indexes.
//!
//! All positions on the command line and in output are 1-based.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lcex::corpus;
use lcex::{
    build_index, lz77_factorize, naive_lce, tune_tau, AncestorKind, BuildOptions, Factor, IsaOracle,
    LceIndex, SentinelPolicy, Text,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CSV_HEADER: [&str; 13] = [
    "corpus",
    "n",
    "sigma",
    "z",
    "t",
    "t_prime",
    "build_ms",
    "index_bytes",
    "queries",
    "mean_query_ns",
    "p99_query_ns",
    "oracle_mean_ns",
    "mismatches",
];

#[derive(Parser)]
#[command(name = "lcex", version, about = "Encoding LCE index (positions are 1-based)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a text file and save it.
    Build(BuildArgs),
    /// Answer LCE queries against a saved index.
    Query(QueryArgs),
    /// Time random queries and check them against the ISA+LCP+RMQ oracle.
    Bench(BenchArgs),
    /// Choose the block length by measured structure sizes.
    Tune(TuneArgs),
    /// Print the space statistics of a saved index.
    Stats { index: PathBuf },
    /// Print the LZ77 factorization size of a text file.
    Lz77 {
        input: PathBuf,
        /// Also list the factors.
        #[arg(long)]
        factors: bool,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Run the oracle-equivalence suites.
    Selftest {
        /// Smaller suite.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args, Clone)]
struct TextArgs {
    /// Sentinel byte ("auto" remaps the alphabet and appends a fresh symbol).
    #[arg(long, default_value = "auto")]
    sentinel: String,
}

impl TextArgs {
    fn policy(&self) -> Result<SentinelPolicy> {
        if self.sentinel == "auto" {
            return Ok(SentinelPolicy::Auto);
        }
        let s = self.sentinel.as_str();
        let byte = match s.strip_prefix("0x") {
            Some(hex) => u8::from_str_radix(hex, 16),
            None => s.parse::<u8>(),
        };
        match byte {
            Ok(b) => Ok(SentinelPolicy::Explicit(b)),
            Err(_) if s.len() == 1 => Ok(SentinelPolicy::Explicit(s.as_bytes()[0])),
            Err(_) => Err(usage(format!("bad sentinel {s:?}"))),
        }
    }

    fn load(&self, path: &Path) -> Result<Text> {
        let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Text::load(&raw, self.policy()?)?)
    }
}

#[derive(Args, Clone)]
struct IndexParams {
    /// Block length t.
    #[arg(long, conflicts_with = "auto_tune")]
    t: Option<usize>,
    /// Navigation parameter t' <= t (defaults to t).
    #[arg(long)]
    t_prime: Option<usize>,
    /// Pick t by measured sizes.
    #[arg(long)]
    auto_tune: bool,
    /// Probe budget for --auto-tune.
    #[arg(long, default_value_t = 32)]
    budget: usize,
    /// Also build the packed-bit variant.
    #[arg(long)]
    packed: bool,
    /// Use the constant-time ladder level-ancestor structure.
    #[arg(long)]
    ladder: bool,
    #[command(flatten)]
    text: TextArgs,
}

impl IndexParams {
    fn build(&self, text: &Text, compute_z: bool) -> Result<LceIndex> {
        let t = match (self.t, self.auto_tune) {
            (Some(t), _) => t,
            (None, true) => {
                let report = tune_tau(text, self.budget);
                eprintln!("auto-tuned t = {}", report.chosen);
                report.chosen
            }
            (None, false) => return Err(usage("one of --t or --auto-tune is required")),
        };
        let opts = BuildOptions {
            t_prime: self.t_prime,
            packed: self.packed,
            ancestor: if self.ladder { AncestorKind::Ladder } else { AncestorKind::BinaryLifting },
            compute_z,
        };
        Ok(build_index(text, t, opts)?)
    }
}

#[derive(Args)]
struct BuildArgs {
    input: PathBuf,
    #[command(flatten)]
    params: IndexParams,
    /// Run LZ77 to record z in the statistics.
    #[arg(long)]
    z: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    index: PathBuf,
    /// A query pair; repeatable.
    #[arg(long, num_args = 2, value_names = ["I", "J"], action = clap::ArgAction::Append)]
    pair: Vec<usize>,
    /// File of whitespace-separated pairs, one per line.
    #[arg(long)]
    pairs_file: Option<PathBuf>,
    /// Number of uniformly random pairs.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Text the index was built from (needed by the oracle).
    input: PathBuf,
    /// Load this index instead of building one.
    #[arg(long)]
    index: Option<PathBuf>,
    #[command(flatten)]
    params: IndexParams,
    #[arg(long, default_value_t = 100_000)]
    queries: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Reader threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Append a record to this CSV file (header written when new).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write "i j lce" lines for every query.
    #[arg(long)]
    answers: Option<PathBuf>,
    /// Corpus label for the CSV record (defaults to the file name).
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Args)]
struct TuneArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 32)]
    budget: usize,
    #[command(flatten)]
    text: TextArgs,
}

/// Marks an error as a usage error (exit code 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Query or benchmark failure after all output was written (exit code 1).
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Mismatch>() {
        return 1;
    }
    if err.is::<Usage>() {
        return 2;
    }
    if let Some(e) = err.downcast_ref::<lcex::Error>() {
        return match e {
            lcex::Error::OutOfRange { .. } => 1,
            lcex::Error::ParamOutOfRange(_) => 2,
            _ => 3,
        };
    }
    3
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("LCE_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Build(a) => cmd_build(a),
        Command::Query(a) => cmd_query(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Tune(a) => cmd_tune(a),
        Command::Stats { index } => cmd_stats(&index),
        Command::Lz77 { input, factors, text } => cmd_lz77(&input, factors, &text),
        Command::Selftest { quick } => cmd_selftest(quick),
    }
}

fn print_stats(out: &mut impl Write, ix: &LceIndex) -> Result<()> {
    let s = ix.space_report();
    writeln!(out, "n\t{}", s.n)?;
    writeln!(out, "t\t{}", s.t)?;
    writeln!(out, "t_prime\t{}", s.t_prime)?;
    writeln!(out, "z\t{}", s.z.map_or("-".to_string(), |z| z.to_string()))?;
    writeln!(out, "tst_nodes\t{}", s.tst_nodes)?;
    writeln!(out, "tst_leaves\t{}", s.tst_leaves)?;
    writeln!(out, "tst_ref_len\t{}", s.tst_ref_len)?;
    writeln!(out, "nav_nodes\t{}", s.nav_nodes)?;
    writeln!(out, "sampled_count\t{}", s.sampled_count)?;
    writeln!(out, "code_len\t{}", s.code_len)?;
    writeln!(out, "estimated_words\t{}", s.estimated_words)?;
    writeln!(out, "heap_bytes\t{}", s.heap_bytes)?;
    writeln!(out, "index_bytes\t{}", ix.to_bytes().len())?;
    writeln!(out, "packed\t{}", ix.packed().is_some())?;
    Ok(())
}

fn cmd_build(a: BuildArgs) -> Result<()> {
    let text = a.params.text.load(&a.input)?;
    let start = Instant::now();
    let ix = a.params.build(&text, a.z)?;
    log::info!("build took {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    drop(text);
    ix.save(&a.output)
        .with_context(|| format!("writing {}", a.output.display()))?;
    print_stats(&mut io::stdout().lock(), &ix)
}

fn parse_pairs_file(path: &Path) -> Result<Vec<(usize, usize)>> {
    let body = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut pairs = Vec::new();
    for (k, line) in body.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<&str> = line.split_whitespace().collect();
        let parsed = match nums.as_slice() {
            [i, j] => i.parse().ok().zip(j.parse().ok()),
            _ => None,
        };
        match parsed {
            Some(p) => pairs.push(p),
            None => bail!(usage(format!("{}:{}: expected two positions", path.display(), k + 1))),
        }
    }
    Ok(pairs)
}

fn random_pairs(n: usize, k: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n)))
        .collect()
}

fn cmd_query(a: QueryArgs) -> Result<()> {
    let ix = LceIndex::load(&a.index).with_context(|| format!("loading {}", a.index.display()))?;
    let mut pairs: Vec<(usize, usize)> = a.pair.chunks(2).map(|c| (c[0], c[1])).collect();
    if let Some(path) = &a.pairs_file {
        pairs.extend(parse_pairs_file(path)?);
    }
    if let Some(k) = a.random {
        pairs.extend(random_pairs(ix.len(), k, a.seed));
    }
    if pairs.is_empty() {
        return Err(usage("no queries: give --pair, --pairs-file or --random"));
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let mut errors = 0usize;
    for (i, j) in pairs {
        match ix.lce(i, j) {
            Ok(l) => writeln!(out, "{i} {j} {l}")?,
            Err(e) => {
                errors += 1;
                writeln!(out, "{i} {j} error: {e}")?;
            }
        }
    }
    out.flush()?;
    if errors > 0 {
        return Err(Mismatch(format!("{errors} queries failed")).into());
    }
    Ok(())
}

fn percentile(sorted: &[u64], p: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let k = ((sorted.len() as f64 * p).ceil() as usize).clamp(1, sorted.len());
    sorted[k - 1]
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let text = a.params.text.load(&a.input)?;
    let start = Instant::now();
    let ix = match &a.index {
        Some(path) => LceIndex::load(path).with_context(|| format!("loading {}", path.display()))?,
        None => a.params.build(&text, false)?,
    };
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    if ix.len() != text.len() {
        return Err(usage(format!(
            "index covers {} symbols but the text has {}",
            ix.len(),
            text.len()
        )));
    }
    let z = lz77_factorize(&text).z();
    let oracle = IsaOracle::build(&text);
    let pairs = random_pairs(text.len(), a.queries, a.seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads.max(1))
        .build()
        .context("starting thread pool")?;

    let timed = |f: &(dyn Fn(usize, usize) -> usize + Sync)| -> Vec<(usize, u64)> {
        pool.install(|| {
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    let s = Instant::now();
                    let l = std::hint::black_box(f(i, j));
                    (l, s.elapsed().as_nanos() as u64)
                })
                .collect()
        })
    };
    let got = timed(&|i, j| ix.lce(i, j).expect("validated positions"));
    let want = timed(&|i, j| oracle.lce(i, j).expect("validated positions"));

    let mismatches = got.iter().zip(&want).filter(|(g, w)| g.0 != w.0).count();
    let mut lat: Vec<u64> = got.iter().map(|x| x.1).collect();
    lat.sort_unstable();
    let mean = |v: &[(usize, u64)]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().map(|x| x.1 as f64).sum::<f64>() / v.len() as f64
        }
    };
    let corpus_id = a.corpus.clone().unwrap_or_else(|| {
        a.input
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let record = [
        corpus_id,
        text.len().to_string(),
        text.sigma().to_string(),
        z.to_string(),
        ix.t().to_string(),
        ix.t_prime().to_string(),
        format!("{build_ms:.3}"),
        ix.to_bytes().len().to_string(),
        pairs.len().to_string(),
        format!("{:.1}", mean(&got)),
        percentile(&lat, 0.99).to_string(),
        format!("{:.1}", mean(&want)),
        mismatches.to_string(),
    ];

    if let Some(path) = &a.answers {
        let mut w = BufWriter::new(fs::File::create(path).with_context(|| format!("writing {}", path.display()))?);
        for (&(i, j), &(l, _)) in pairs.iter().zip(&got) {
            writeln!(w, "{i} {j} {l}")?;
        }
        w.flush()?;
    }
    match &a.csv {
        Some(path) => {
            let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("writing {}", path.display()))?;
            let mut w = csv::Writer::from_writer(file);
            if fresh {
                w.write_record(CSV_HEADER)?;
            }
            w.write_record(&record)?;
            w.flush()?;
        }
        None => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(CSV_HEADER)?;
            w.write_record(&record)?;
            w.flush()?;
        }
    }
    if mismatches > 0 {
        return Err(Mismatch(format!("{mismatches} answers disagree with the oracle")).into());
    }
    Ok(())
}

fn cmd_tune(a: TuneArgs) -> Result<()> {
    let text = a.text.load(&a.input)?;
    let report = tune_tau(&text, a.budget);
    let mut out = io::stdout().lock();
    writeln!(out, "t\ttst_leaves\tcover_term\tcost")?;
    for p in &report.probes {
        writeln!(out, "{}\t{}\t{}\t{}", p.t, p.tst_leaves, p.cover_term, p.cost)?;
    }
    writeln!(out, "chosen\t{}", report.chosen)?;
    Ok(())
}

fn cmd_stats(path: &Path) -> Result<()> {
    let ix = LceIndex::load(path).with_context(|| format!("loading {}", path.display()))?;
    print_stats(&mut io::stdout().lock(), &ix)
}

fn cmd_lz77(input: &Path, factors: bool, args: &TextArgs) -> Result<()> {
    let text = args.load(input)?;
    let lz = lz77_factorize(&text);
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "z\t{}", lz.z())?;
    if factors {
        for f in lz.factors.iter().take(lz.z()) {
            match *f {
                Factor::Literal(c) => writeln!(out, "literal\t{}", text.decode_symbol(c) as char)?,
                Factor::Copy { src, len } => writeln!(out, "copy\t{src}\t{len}")?,
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_selftest(quick: bool) -> Result<()> {
    let mut texts: Vec<(String, Vec<u8>)> = vec![
        ("baab".into(), b"baabbaabbaaabbaabba".to_vec()),
        ("example".into(), b"abababcabababcabababcd".to_vec()),
    ];
    let scale = if quick { 1 } else { 4 };
    for k in 0..4 * scale as u64 {
        texts.push((format!("random{k}"), corpus::random(150 * scale, 2 + (k % 3) as u8 * 2, k)));
    }
    texts.push(("fibonacci".into(), corpus::fibonacci(233 * scale)));
    texts.push(("thue-morse".into(), corpus::thue_morse(233 * scale)));

    let mut checks = 0u64;
    let mut failures = 0u64;
    for (name, raw) in &texts {
        let text = Text::load(raw, SentinelPolicy::Auto)?;
        let n = text.len();
        let oracle = IsaOracle::build(&text);
        for t in [1, 2, 3, 5, 8, n.isqrt()] {
            for tp in [1, t] {
                if tp > t || t > n || 2 * tp > n {
                    continue;
                }
                let opts = BuildOptions {
                    t_prime: Some(tp),
                    packed: true,
                    ..Default::default()
                };
                let ix = build_index(&text, t, opts)?;
                let ix = LceIndex::from_bytes(&ix.to_bytes())?;
                for i in 1..=n {
                    for j in 1..=n {
                        let want = naive_lce(&text, i, j)?;
                        checks += 3;
                        let bad = [ix.lce(i, j)?, oracle.lce(i, j)?, ix.lce_packed(i, j)?]
                            .iter()
                            .filter(|&&g| g != want)
                            .count();
                        if bad > 0 {
                            failures += bad as u64;
                            if failures <= 10 {
                                eprintln!("{name} t={t} t'={tp} ({i},{j}): expected {want}");
                            }
                        }
                    }
                }
            }
        }
    }
    println!("{checks} checks, {failures} failures");
    if failures > 0 {
        return Err(Mismatch(format!("{failures} answers disagree with the naive scan")).into());
    }
    Ok(())
}
