mod bench;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gcis::index::{use_narrow, Index};
use gcis::{Container, Profile};
use thiserror::Error;

use bench::BenchRecord;

#[derive(Parser)]
#[command(
    name = "gcis",
    version,
    about = "Grammar compression by induced suffix sorting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    S8b,
    Ef,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::S8b => Profile::S8b,
            ProfileArg::Ef => Profile::Ef,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    /// compression
    C,
    /// decompression
    D,
    /// decompression with suffix array
    Sa,
    /// decompression with suffix and LCP arrays
    Salcp,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into a container
    C {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value = "s8b")]
        profile: ProfileArg,
        #[arg(long)]
        no_header: bool,
    },
    /// Decompress a container
    D { input: PathBuf, output: PathBuf },
    /// Print byte ranges `l,r` (zero-based, end exclusive) of a random-access container
    X {
        input: PathBuf,
        #[arg(short, required = true, value_parser = parse_range)]
        q: Vec<Range<u64>>,
    },
    /// Write the suffix array as 64-bit little-endian positions
    Sa { input: PathBuf, output: PathBuf },
    /// Write suffix and LCP arrays as 64-bit little-endian integers
    Salcp {
        input: PathBuf,
        sa: PathBuf,
        lcp: PathBuf,
    },
    /// Describe the layout of a container
    Info { input: PathBuf },
    /// Generate a repetitive corpus from a seed file
    Gen {
        seed_file: PathBuf,
        output: PathBuf,
        #[arg(long, default_value_t = 1000)]
        copies: usize,
        #[arg(long, default_value_t = 0.001)]
        rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time an operation in memory and print CSV records
    Bench {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "c")]
        op: Op,
        #[arg(long, value_enum, default_value = "s8b")]
        profile: ProfileArg,
        #[arg(long)]
        no_header: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Gcis(#[from] gcis::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Gcis(e) if e.is_corruption() => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_range(s: &str) -> std::result::Result<Range<u64>, String> {
    let (l, r) = s.split_once(',').ok_or("expected l,r")?;
    let l: u64 = l.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let r: u64 = r.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    if l > r {
        return Err(format!("start {l} exceeds end {r}"));
    }
    Ok(l..r)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Container> {
    Ok(gcis::deserialize(&read(path)?)?)
}

fn name_of(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

fn print_records(records: &[BenchRecord], no_header: bool) {
    if !no_header {
        println!("{}", bench::HEADER);
    }
    for r in records {
        println!("{r}");
    }
}

/// Writes `values` without the sentinel entry at index 0.
fn write_positions<I: Index>(path: &Path, values: &[I]) -> Result<()> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    for v in values.iter().skip(1) {
        w.write_all(&(v.as_usize() as u64).to_le_bytes())
            .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

fn suffix_arrays<I: Index>(c: &Container, sa: &Path, lcp: Option<&Path>) -> Result<()> {
    let art = if lcp.is_some() {
        gcis::decompress_with_sa_lcp::<I>(&c.grammar)?
    } else {
        gcis::decompress_with_sa::<I>(&c.grammar)?
    };
    write_positions(sa, &art.sa)?;
    if let (Some(path), Some(values)) = (lcp, &art.lcp) {
        write_positions(path, values)?;
    }
    Ok(())
}

fn run_suffix_arrays(input: &Path, sa: &Path, lcp: Option<&Path>) -> Result<()> {
    let c = load(input)?;
    let len = c.grammar.original_len() as usize + 1;
    if use_narrow(len) {
        suffix_arrays::<u32>(&c, sa, lcp)
    } else {
        suffix_arrays::<u64>(&c, sa, lcp)
    }
}

fn info(input: &Path) -> Result<()> {
    let bytes = read(input)?;
    let info = gcis::inspect(&bytes)?;
    println!("profile        {}", info.profile.name());
    println!("version        {}", info.version);
    if info.profile == Profile::Ef {
        println!("reset period   {}", info.period);
    }
    println!("text bytes     {}", info.original_len);
    println!("levels         {}", info.levels.len());
    println!("header bytes   {}", info.header_bytes);
    println!("level  sigma  rules  lcp  lengths  symbols  expansion  total");
    for (j, l) in info.levels.iter().enumerate() {
        println!(
            "{j}  {}  {}  {}  {}  {}  {}  {}",
            l.sigma,
            l.rules,
            l.lcp_bytes,
            l.length_bytes,
            l.symbol_bytes,
            l.expansion_bytes,
            l.total_bytes
        );
    }
    println!(
        "final string   {} symbols, sigma {}, {} bytes",
        info.final_len, info.final_sigma, info.final_bytes
    );
    if info.profile == Profile::Ef {
        println!("partial sums   {} bytes", info.prefix_sum_bytes);
    }
    println!("total bytes    {} (file {})", info.total_bytes, bytes.len());
    Ok(())
}

fn bench_one(path: &Path, op: Op, profile: Profile) -> Result<BenchRecord> {
    let text = read(path)?;
    let name = name_of(path);
    let n = text.len() as u64;
    if let Op::C = op {
        let start = Instant::now();
        let out = gcis::serialize(&gcis::compress(&text), profile);
        return Ok(BenchRecord::new(
            &name,
            n,
            out.len() as u64,
            start.elapsed(),
        ));
    }
    let bytes = gcis::serialize(&gcis::compress(&text), profile);
    let start = Instant::now();
    let grammar = gcis::deserialize(&bytes)?.grammar;
    let narrow = use_narrow(text.len() + 1);
    let ok = match op {
        Op::D => gcis::decompress(&grammar)? == text,
        Op::Sa if narrow => gcis::decompress_with_sa::<u32>(&grammar)?.text == text,
        Op::Sa => gcis::decompress_with_sa::<u64>(&grammar)?.text == text,
        Op::Salcp if narrow => gcis::decompress_with_sa_lcp::<u32>(&grammar)?.text == text,
        Op::Salcp => gcis::decompress_with_sa_lcp::<u64>(&grammar)?.text == text,
        Op::C => unreachable!(),
    };
    let elapsed = start.elapsed();
    if !ok {
        return Err(CliError::Usage(format!(
            "{name}: decoded text differs from input"
        )));
    }
    Ok(BenchRecord::new(&name, n, bytes.len() as u64, elapsed))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::C {
            input,
            output,
            profile,
            no_header,
        } => {
            let text = read(&input)?;
            let start = Instant::now();
            let bytes = gcis::serialize(&gcis::compress(&text), profile.into());
            let elapsed = start.elapsed();
            write(&output, &bytes)?;
            let record = BenchRecord::new(
                &name_of(&input),
                text.len() as u64,
                bytes.len() as u64,
                elapsed,
            );
            print_records(&[record], no_header);
        }
        Command::D { input, output } => {
            let c = load(&input)?;
            write(&output, &gcis::decompress(&c.grammar)?)?;
        }
        Command::X { input, q } => {
            let c = load(&input)?;
            let ex = c.extractor.ok_or(gcis::Error::NoRandomAccess)?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for range in q {
                let slice = ex.extract(range)?;
                out.write_all(&slice)
                    .and_then(|_| out.write_all(b"\n"))
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    })?;
            }
        }
        Command::Sa { input, output } => run_suffix_arrays(&input, &output, None)?,
        Command::Salcp { input, sa, lcp } => run_suffix_arrays(&input, &sa, Some(&lcp))?,
        Command::Info { input } => info(&input)?,
        Command::Gen {
            seed_file,
            output,
            copies,
            rate,
            seed,
        } => {
            if copies == 0 {
                return Err(CliError::Usage("--copies must be at least 1".into()));
            }
            if !(0.0..=1.0).contains(&rate) {
                return Err(CliError::Usage("--rate must lie in [0, 1]".into()));
            }
            let seed_bytes = read(&seed_file)?;
            write(
                &output,
                &gcis::corpus::gen_repetitive(&seed_bytes, copies, rate, seed),
            )?;
        }
        Command::Bench {
            inputs,
            op,
            profile,
            no_header,
        } => {
            let records = inputs
                .iter()
                .map(|p| bench_one(p, op, profile.into()))
                .collect::<Result<Vec<_>>>()?;
            print_records(&records, no_header);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gcis: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
