//! `dtpc`: command-line zero-error coding for the discrete-time particle
//! channel. Exit codes: 0 success (or verified zero-error), 1 runtime
//! failure or a verification counterexample, 2 usage/input errors, 3
//! enumeration budget exceeded.

mod format;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dtpc::capacity::{self, CapacityResult};
use dtpc::{channel, codes, decode, verify};
use dtpc::{BigCount, ChannelParams, ParticleSeq};

#[derive(Parser)]
#[command(
    name = "dtpc",
    version,
    about = "Zero-error codes, decoding, and capacity for the discrete-time particle channel",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zero-error capacity in bits per slot (K may be `inf`)
    Capacity {
        #[arg(value_name = "N")]
        max_per_slot: u32,
        #[arg(value_name = "K")]
        max_delay: String,
        /// Residual tolerance for the root solve
        #[arg(long, default_value_t = capacity::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Also print the K=0 / K=1 closed form when one exists
        #[arg(long)]
        closed_form: bool,
    },
    /// Construct the optimal code of blocklength n and print or write it
    Codebook {
        #[arg(value_name = "N")]
        max_per_slot: u32,
        #[arg(value_name = "K")]
        max_delay: u32,
        #[arg(value_name = "n")]
        block_len: usize,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Write the codebook file here; the word count then goes to stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print the codeword at a given index (0 is the inverse-lex greatest)
    Encode {
        #[arg(value_name = "N")]
        max_per_slot: u32,
        #[arg(value_name = "K")]
        max_delay: u32,
        #[arg(value_name = "n")]
        block_len: usize,
        #[arg(value_name = "INDEX")]
        index: String,
    },
    /// Recover the codeword behind a received count sequence
    Decode {
        #[arg(value_name = "N")]
        max_per_slot: u32,
        #[arg(value_name = "K")]
        max_delay: u32,
        #[arg(value_name = "n")]
        block_len: usize,
        /// Received sequence, quoted space-separated counts
        #[arg(value_name = "OUTPUT")]
        received: String,
    },
    /// Push an input through the channel with seeded random delays
    Simulate {
        #[arg(value_name = "N")]
        max_per_slot: u32,
        #[arg(value_name = "K")]
        max_delay: u32,
        /// Input sequence, quoted space-separated counts
        #[arg(value_name = "INPUT")]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a codebook file for the zero-error property
    Verify {
        #[arg(long, value_name = "FILE")]
        codebook: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Padded)]
        mode: Mode,
        /// Longest concatenation checked in `sequences` mode
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Capacity CSV over a parameter grid (header `N,K,capacity_bits`)
    Curves {
        /// Write the CSV here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Comma-separated per-slot maxima
        #[arg(long = "N-list", value_name = "LIST", default_value = "1,3,7,15,31,63")]
        n_list: String,
        /// Inclusive delay range `lo..hi`
        #[arg(long = "K-range", value_name = "RANGE", default_value = "0..10")]
        k_range: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Pairwise check, complete for zero-padded codebooks
    Padded,
    /// Definition-level check over concatenations of up to `m` codewords
    Sequences,
}

enum CliError {
    Lib(dtpc::Error),
    Format(format::FormatError),
    Io(PathBuf, std::io::Error),
    Arg(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(dtpc::Error::BudgetExceeded { .. }) => 3,
            // A non-padded codebook under the pairwise mode is a mode
            // mismatch, not a failed verification.
            CliError::Lib(dtpc::Error::NotZeroPadded { .. }) => 2,
            CliError::Lib(_) => 1,
            CliError::Format(_) | CliError::Arg(_) => 2,
            CliError::Io(..) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Format(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Arg(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<dtpc::Error> for CliError {
    fn from(e: dtpc::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<format::FormatError> for CliError {
    fn from(e: format::FormatError) -> Self {
        CliError::Format(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Capacity {
            max_per_slot,
            max_delay,
            tol,
            closed_form,
        } => cmd_capacity(max_per_slot, &max_delay, tol, closed_form),
        Command::Codebook {
            max_per_slot,
            max_delay,
            block_len,
            method,
            out,
        } => cmd_codebook(
            ChannelParams::new(max_per_slot, max_delay),
            block_len,
            method,
            out.as_deref(),
        ),
        Command::Encode {
            max_per_slot,
            max_delay,
            block_len,
            index,
        } => {
            let index: BigCount = index.parse().map_err(|_| {
                CliError::Arg(format!("INDEX is not a nonnegative integer: {index:?}"))
            })?;
            let params = ChannelParams::new(max_per_slot, max_delay);
            println!("{}", codes::unrank(params, block_len, &index)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode {
            max_per_slot,
            max_delay,
            block_len,
            received,
        } => {
            let y = parse_seq(&received, "OUTPUT")?;
            let params = ChannelParams::new(max_per_slot, max_delay);
            println!("{}", decode::decode(params, block_len, &y)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            max_per_slot,
            max_delay,
            input,
            seed,
        } => {
            let x = parse_seq(&input, "INPUT")?;
            let params = ChannelParams::new(max_per_slot, max_delay);
            println!("{}", channel::simulate(params, &x, seed)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { codebook, mode, m } => cmd_verify(&codebook, mode, m),
        Command::Curves {
            out,
            n_list,
            k_range,
        } => cmd_curves(out.as_deref(), &n_list, &k_range),
    }
}

fn parse_seq(text: &str, what: &str) -> Result<ParticleSeq, CliError> {
    text.parse()
        .map_err(|e| CliError::Arg(format!("{what} is not a count sequence: {e}")))
}

fn cmd_capacity(
    max_per_slot: u32,
    max_delay: &str,
    tol: f64,
    closed_form: bool,
) -> Result<ExitCode, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Arg(format!("--tol must be positive, got {tol}")));
    }
    let solved = match max_delay {
        // Unbounded delays: nothing is ever decodable, capacity collapses.
        "inf" => CapacityResult {
            root: 1.0,
            capacity_bits: 0.0,
            residual: 0.0,
        },
        _ => {
            let k: u32 = max_delay.parse().map_err(|_| {
                CliError::Arg(format!(
                    "K must be a nonnegative integer or `inf`, got {max_delay:?}"
                ))
            })?;
            capacity::capacity(ChannelParams::new(max_per_slot, k), tol)
        }
    };
    print!(
        "N={max_per_slot} K={max_delay} root={} capacity_bits={}",
        solved.root, solved.capacity_bits
    );
    if closed_form {
        let exact = match max_delay {
            "inf" => Some(0.0),
            _ => capacity_closed_form_by_key(max_per_slot, max_delay),
        };
        match exact {
            Some(bits) => print!(" closed_form_bits={bits}"),
            None => print!(" closed_form_bits=none"),
        }
    }
    println!();
    Ok(ExitCode::SUCCESS)
}

fn capacity_closed_form_by_key(max_per_slot: u32, max_delay: &str) -> Option<f64> {
    let k: u32 = max_delay.parse().ok()?;
    capacity::capacity_closed_form(ChannelParams::new(max_per_slot, k))
}

fn cmd_codebook(
    params: ChannelParams,
    block_len: usize,
    method: Method,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let method = match method {
        Method::Recursive => codes::ConstructionMethod::Recursive,
        Method::Greedy => codes::ConstructionMethod::Greedy,
    };
    let cb = codes::build(params, block_len, method)?;
    let text = format::serialize(&cb);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))?;
            println!("{}", cb.len());
        }
        None => {
            // Keep stdout byte-identical to the file; the count goes aside.
            print!("{text}");
            eprintln!("{}", cb.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(path: &std::path::Path, mode: Mode, m: usize) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    let cb = format::parse(&text)?;
    let triple = match mode {
        Mode::Padded => verify::is_zero_error_padded(&cb)?,
        Mode::Sequences => verify::is_zero_error_sequences(&cb, m)?
            .map(|cex| (cex.left(), cex.right(), cex.witness)),
    };
    match triple {
        None => {
            println!("ZERO-ERROR");
            Ok(ExitCode::SUCCESS)
        }
        Some((x, y, witness)) => {
            println!("CONFUSABLE");
            println!("x: {x}");
            println!("y: {y}");
            println!("witness: {witness}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_curves(
    out: Option<&std::path::Path>,
    n_list: &str,
    k_range: &str,
) -> Result<ExitCode, CliError> {
    let ns: Vec<u32> = n_list
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| CliError::Arg(format!("--N-list entry is not an integer: {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    let (lo, hi) = k_range
        .split_once("..")
        .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
        .ok_or_else(|| {
            CliError::Arg(format!("--K-range must look like `0..10`, got {k_range:?}"))
        })?;

    let mut csv = String::from("N,K,capacity_bits\n");
    for &n in &ns {
        for (params, bits) in capacity::capacity_curve::<f64>(
            capacity::CurveAxis::VaryK,
            n,
            lo..=hi,
            capacity::DEFAULT_TOLERANCE,
        ) {
            csv.push_str(&format!(
                "{},{},{bits}\n",
                params.max_per_slot, params.max_delay
            ));
        }
    }
    match out {
        Some(path) => fs::write(path, csv).map_err(|e| CliError::Io(path.to_owned(), e))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}
