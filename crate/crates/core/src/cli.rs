//! Command-line front end: `mine`, `verify`, `bench`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::checker::Engine;
use crate::dataset::{build_vertical, load_fimi, MinSupport, TransactionDb};
use crate::error::Error;
use crate::miner::{mine_patterns, MinerConfig, MiningOutput, WordBits};
use crate::oracle::oracle_mfi;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fastlmfi", version, about = "Maximal frequent itemset mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine the maximal frequent itemsets of a FIMI file.
    Mine(MineArgs),
    /// Run every engine and the brute-force oracle; exit 0 iff all agree.
    Verify(VerifyArgs),
    /// Time the engines over several support thresholds, CSV output.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Pruning {
    /// Disable parent equivalence pruning.
    #[arg(long)]
    pub no_pep: bool,
    /// Disable the frequent head-union-tail cutoff.
    #[arg(long)]
    pub no_fhut: bool,
    /// Disable head-union-tail subsumption pruning.
    #[arg(long)]
    pub no_hutmfi: bool,
    /// Disable dynamic tail reordering.
    #[arg(long)]
    pub no_reorder: bool,
    /// Pattern bitmap word width.
    #[arg(long, default_value = "64")]
    pub word_bits: WordBits,
}

impl Pruning {
    fn config(&self, minsup: usize, engine: Engine) -> MinerConfig {
        MinerConfig {
            pep: !self.no_pep,
            fhut: !self.no_fhut,
            hutmfi: !self.no_hutmfi,
            reorder: !self.no_reorder,
            word_bits: self.word_bits,
            ..MinerConfig::new(minsup).with_engine(engine)
        }
    }
}

#[derive(Debug, Args)]
pub struct MineArgs {
    pub input: PathBuf,
    /// Absolute count (`42`) or fraction with a decimal point (`0.5`).
    #[arg(long)]
    pub minsup: MinSupport,
    #[arg(long, default_value = "fastlmfi")]
    pub engine: Engine,
    #[command(flatten)]
    pub pruning: Pruning,
    /// Pattern output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run statistics; CSV if the path ends in `.csv`, key=value otherwise.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub minsup: MinSupport,
    #[command(flatten)]
    pub pruning: Pruning,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub input: PathBuf,
    /// Comma-separated thresholds, e.g. `0.9,0.8,0.7`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub minsup: Vec<MinSupport>,
    #[arg(long, value_delimiter = ',', default_value = "fastlmfi,profocus")]
    pub engines: Vec<Engine>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[command(flatten)]
    pub pruning: Pruning,
    /// CSV output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Mine(a) => cmd_mine(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::OracleGuard { .. } => EXIT_GUARD,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn load(path: &Path) -> Result<TransactionDb, Error> {
    load_fimi(path).map_err(|e| match e {
        Error::Io(io) => Error::Config(format!("cannot read {}: {io}", path.display())),
        other => other,
    })
}

fn open_out<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn mine_db(
    db: &TransactionDb,
    spec: MinSupport,
    pruning: &Pruning,
    engine: Engine,
) -> Result<(usize, MiningOutput), Error> {
    let minsup = spec.resolve(db.n_transactions())?;
    let vdb = build_vertical(db, minsup)?;
    let out = mine_patterns(&vdb, &pruning.config(minsup, engine))?;
    Ok((minsup, out))
}

pub fn cmd_mine(args: &MineArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let db = load(&args.input)?;
    let (_, out) = mine_db(&db, args.minsup, &args.pruning, args.engine)?;
    {
        let mut w = open_out(args.out.as_deref(), stdout)?;
        out.write_fimi(&mut w)?;
        w.flush()?;
    }
    if let Some(path) = &args.stats {
        let mut w = BufWriter::new(File::create(path)?);
        if path.extension().is_some_and(|e| e == "csv") {
            out.stats.write_csv(&mut w)?;
        } else {
            out.stats.write_key_values(&mut w)?;
        }
        w.flush()?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Error> {
    let db = load(&args.input)?;
    let minsup = args.minsup.resolve(db.n_transactions())?;
    let oracle = oracle_mfi(&db, minsup)?;
    let want: Vec<Vec<u32>> = oracle.maximal.iter().cloned().collect();
    for engine in Engine::ALL {
        let (_, out) = mine_db(&db, args.minsup, &args.pruning, engine)?;
        let got = out.sorted_itemsets();
        if got != want {
            let missing = want.iter().find(|x| !got.contains(x));
            let extra = got.iter().find(|x| !want.contains(x));
            writeln!(stdout, "verify: {engine} diverges from oracle at minsup {minsup}")?;
            if let Some(m) = missing {
                writeln!(stdout, "  missing {m:?}")?;
            }
            if let Some(x) = extra {
                writeln!(stdout, "  unexpected {x:?}")?;
            }
            return Ok(EXIT_FAILURE);
        }
    }
    writeln!(
        stdout,
        "verify: ok, {} maximal itemsets at minsup {minsup}, all engines agree with oracle",
        want.len()
    )?;
    Ok(EXIT_OK)
}

pub const BENCH_HEADER: &str =
    "dataset,minsup,minsup_abs,engine,rep,total_ms,superset_ms,n_mfi,n_word_ands,peak_lind_entries";

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Error> {
    let db = load(&args.input)?;
    let dataset = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut failures = 0;
    let mut w = open_out(args.out.as_deref(), stdout)?;
    writeln!(w, "{BENCH_HEADER}")?;
    for (spec, raw) in args.minsup.iter().zip(minsup_labels(&args.minsup)) {
        let minsup = spec.resolve(db.n_transactions())?;
        let vdb = build_vertical(&db, minsup)?;
        let mut n_mfi: Option<usize> = None;
        for &engine in &args.engines {
            for rep in 0..args.reps.max(1) {
                let out = mine_patterns(&vdb, &args.pruning.config(minsup, engine))?;
                let s = &out.stats;
                let peak = if engine == Engine::FastLmfi {
                    s.peak_lind_entries
                } else {
                    0
                };
                writeln!(
                    w,
                    "{dataset},{raw},{minsup},{engine},{rep},{:.3},{:.3},{},{},{peak}",
                    s.total_ms(),
                    s.superset_ms(),
                    s.n_mfi,
                    s.n_word_ands,
                )?;
                if *n_mfi.get_or_insert(s.n_mfi) != s.n_mfi {
                    writeln!(
                        stderr,
                        "bench: {engine} found {} MFI at {raw}, expected {}",
                        s.n_mfi,
                        n_mfi.unwrap()
                    )?;
                    failures += 1;
                }
                if engine == Engine::FastLmfi && (s.peak_lind_entries > s.index_bound() || s.index_bound_violations > 0)
                {
                    writeln!(
                        stderr,
                        "bench: index bound violated at {raw}: peak {} > ceil({}/{})",
                        s.peak_lind_entries, s.n_mfi, s.word_bits
                    )?;
                    failures += 1;
                }
            }
        }
    }
    w.flush()?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn minsup_labels(specs: &[MinSupport]) -> Vec<String> {
    specs
        .iter()
        .map(|s| match s {
            MinSupport::Absolute(n) => n.to_string(),
            MinSupport::Relative(r) => r.to_string(),
        })
        .collect()
}
