use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use insitu_sa::audit::{audited_run_with, Algorithm, CountingAlloc, WorkspaceReport};
use insitu_sa::io::{compact_alphabet, decode, encode, ingest, InputFormat, OutputFormat};
use insitu_sa::ip_ro_int::MAX_D;
use insitu_sa::text::{bwt, verify_suffix_array};
use insitu_sa::{Error, Text};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

const EXIT_INGEST: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_AUDIT: u8 = 4;

#[derive(Parser)]
#[command(name = "insitu-sa", version, about = "In-place suffix array construction")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    IpInt,
    IpRoInt,
    IpGeneral,
    SaisRef,
    Naive,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::IpInt => Algorithm::IpInt,
            Algo::IpRoInt => Algorithm::IpRoInt,
            Algo::IpGeneral => Algorithm::IpGeneral,
            Algo::SaisRef => Algorithm::SaisRef,
            Algo::Naive => Algorithm::Naive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InFmt {
    Bytes,
    U32,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFmt {
    U32,
    U64,
    Text,
}

impl From<InFmt> for InputFormat {
    fn from(f: InFmt) -> Self {
        match f {
            InFmt::Bytes => InputFormat::Bytes,
            InFmt::U32 => InputFormat::U32,
            InFmt::Text => InputFormat::Text,
        }
    }
}

impl From<OutFmt> for OutputFormat {
    fn from(f: OutFmt) -> Self {
        match f {
            OutFmt::U32 => OutputFormat::U32,
            OutFmt::U64 => OutputFormat::U64,
            OutFmt::Text => OutputFormat::Text,
        }
    }
}

#[derive(clap::Args)]
struct Input {
    /// Input file.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "bytes")]
    input_format: InFmt,
}

#[derive(clap::Args)]
struct SortArgs {
    #[command(flatten)]
    src: Input,
    #[arg(long, value_enum, default_value = "ip-ro-int")]
    algo: Algo,
    /// Sort with text restoration (ip-int only).
    #[arg(long)]
    restore: bool,
    /// Print a JSON record of the run to stdout.
    #[arg(long)]
    stats: bool,
}

#[derive(clap::Args)]
struct Output {
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "u32")]
    output_format: OutFmt,
    /// Prefix binary output with magic, count and width.
    #[arg(long)]
    header: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the suffix array.
    Build {
        #[command(flatten)]
        input: SortArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Check a suffix array file against a text.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Suffix array file.
        #[arg(long)]
        sa: PathBuf,
        #[arg(long, value_enum, default_value = "u32")]
        sa_format: OutFmt,
    },
    /// Write the Burrows-Wheeler transform.
    Bwt {
        #[command(flatten)]
        input: SortArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Time an algorithm on random texts of growing size.
    Bench {
        #[arg(long, value_enum, default_value = "ip-ro-int")]
        algo: Algo,
        /// Comma-separated sizes, plain or as powers like 2^20.
        #[arg(long, value_delimiter = ',', default_value = "2^16,2^17,2^18", value_parser = parse_size)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, default_value_t = 256)]
        sigma: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_size(p: &str) -> Result<usize, String> {
    let p = p.trim();
    let v = match p.split_once('^') {
        Some((b, e)) => {
            let b: usize = b.parse().map_err(|_| format!("bad size {p}"))?;
            let e: u32 = e.parse().map_err(|_| format!("bad size {p}"))?;
            b.checked_pow(e).ok_or(format!("size {p} overflows"))?
        }
        None => p.parse().map_err(|_| format!("bad size {p}"))?,
    };
    if v < 2 {
        return Err(format!("size {p} is below 2"));
    }
    Ok(v)
}

struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AuditFailure(_) => EXIT_AUDIT,
            _ => EXIT_INGEST,
        };
        Fail(code, e.to_string())
    }
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    sigma: usize,
    algo: &'static str,
    elapsed_ns: u128,
    peak_aux_words: usize,
    alloc_events: usize,
    restored_ok: bool,
    verified: bool,
}

fn load(inp: &Input) -> Result<Text, Fail> {
    let data = fs::read(&inp.input).map_err(|e| Fail(EXIT_INGEST, format!("{}: {e}", inp.input.display())))?;
    ingest(&data, inp.input_format.into()).map_err(|e| Fail(EXIT_INGEST, format!("{}: {e}", inp.input.display())))
}

/// Sorts `text`, compacting the alphabet first where the algorithm needs a
/// smaller bound than the input declares.
fn sort(text: &Text, algo: Algorithm, restore: bool) -> Result<(Vec<usize>, WorkspaceReport), Fail> {
    let n = text.len();
    let sigma = text.sigma();
    let needs = match algo {
        Algorithm::IpInt => restore || sigma > n,
        Algorithm::IpRoInt => sigma > MAX_D * n,
        _ => false,
    };
    if needs {
        let mut t = text.symbols().to_vec();
        let s = compact_alphabet(&mut t);
        Ok(audited_run_with(algo, &t, s, restore)?)
    } else {
        Ok(audited_run_with(algo, text.symbols(), sigma, restore)?)
    }
}

fn emit(out: &Output, values: &[usize]) -> Result<(), Fail> {
    let bytes = encode(values, out.output_format.into(), out.header).map_err(|e| Fail(1, e))?;
    let res = match &out.output {
        Some(p) => fs::write(p, bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    res.map_err(|e| Fail(1, format!("write failed: {e}")))
}

fn print_stats(text: &Text, r: &WorkspaceReport, verified: bool) {
    let s = Stats {
        n: r.n,
        sigma: text.sigma(),
        algo: r.algo,
        elapsed_ns: r.elapsed.as_nanos(),
        peak_aux_words: r.peak_aux_words,
        alloc_events: r.alloc_events,
        restored_ok: !r.text_touched,
        verified,
    };
    println!("{}", serde_json::to_string(&s).unwrap());
}

fn build_and_check(inp: &SortArgs) -> Result<(Text, Vec<usize>), Fail> {
    let text = load(&inp.src)?;
    let (sa, report) = sort(&text, inp.algo.into(), inp.restore)?;
    let ok = verify_suffix_array(text.symbols(), &sa)?;
    if inp.stats {
        print_stats(&text, &report, ok);
    }
    if !ok {
        return Err(Fail(
            EXIT_VERIFY,
            format!("{} produced an invalid suffix array", report.algo),
        ));
    }
    Ok((text, sa))
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Build { input, output } => {
            if input.stats && output.output.is_none() {
                return Err(Fail(EXIT_INGEST, "--stats needs --output".into()));
            }
            let (_, sa) = build_and_check(&input)?;
            emit(&output, &sa)
        }
        Cmd::Bwt { input, output } => {
            if input.stats && output.output.is_none() {
                return Err(Fail(EXIT_INGEST, "--stats needs --output".into()));
            }
            let (text, sa) = build_and_check(&input)?;
            emit(&output, &bwt(text.symbols(), &sa)?)
        }
        Cmd::Verify { input, sa, sa_format } => {
            let text = load(&input)?;
            let data = fs::read(&sa).map_err(|e| Fail(EXIT_INGEST, format!("{}: {e}", sa.display())))?;
            let sa = decode(&data, sa_format.into()).map_err(|e| Fail(EXIT_INGEST, format!("suffix array: {e}")))?;
            let ok = verify_suffix_array(text.symbols(), &sa)?;
            println!("{}", if ok { "OK" } else { "FAIL" });
            if ok {
                Ok(())
            } else {
                Err(Fail(EXIT_VERIFY, "suffix array does not match the text".into()))
            }
        }
        Cmd::Bench {
            algo,
            sizes,
            repeat,
            sigma,
            seed,
        } => bench(algo.into(), &sizes, repeat.max(1), sigma, seed),
    }
}

#[derive(Serialize)]
struct BenchRow {
    algo: &'static str,
    n: usize,
    sigma: usize,
    median_ns: u128,
    mb_per_s: f64,
    ratio: Option<f64>,
    peak_aux_words: usize,
}

fn bench(algo: Algorithm, sizes: &[usize], repeat: usize, sigma: usize, seed: u64) -> Result<(), Fail> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prev: Option<u128> = None;
    for &n in sizes {
        let s = sigma.clamp(1, n - 1);
        let mut t: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(1..=s)).collect();
        t.push(0);
        let text = Text::new(t, s)?;
        let mut times = Vec::with_capacity(repeat);
        let mut peak = 0;
        for _ in 0..repeat {
            let (sa, r) = sort(&text, algo, false)?;
            if !verify_suffix_array(text.symbols(), &sa)? {
                return Err(Fail(EXIT_VERIFY, format!("{} failed at n = {n}", algo.name())));
            }
            times.push(r.elapsed.as_nanos());
            peak = r.peak_aux_words;
        }
        times.sort_unstable();
        let med = times[times.len() / 2];
        let row = BenchRow {
            algo: algo.name(),
            n,
            sigma: s,
            median_ns: med,
            mb_per_s: n as f64 / (med.max(1) as f64 / 1e3),
            ratio: prev.map(|p| med as f64 / p.max(1) as f64),
            peak_aux_words: peak,
        };
        println!("{}", serde_json::to_string(&row).unwrap());
        prev = Some(med);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("insitu-sa: {msg}");
            ExitCode::from(code)
        }
    }
}
