//! `kzcover`: analyze cyclic covers, search for degenerate ones, build their
//! square-tiled models and estimate Lyapunov exponents.
//!
//! Exit status is 0 on success, 1 on a domain error and 2 on a usage error.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kzcover::cocycle::{estimate_on_orbit, write_trace_csv, Block, LyapunovConfig, Orbit};
use kzcover::cyclic::{analyze, parse_exponents, teichmuller_spectrum, CoverParams};
use kzcover::flat::{deck_check, to_origami, Origami, PillowComplex};
use kzcover::search::run_search;
use kzcover::Execution;
use serde_json::json;

use kzcover_cli::report::{FlatReport, LyapunovReport, OrigamiSummary, Payload, ReportEnvelope, SpectrumReport};

#[derive(Parser)]
#[command(name = "kzcover", version, about = "Cyclic covers with degenerate Kontsevich–Zorich spectrum")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, eigenspace dimensions, spectrum and rank bounds of one cover.
    Analyze {
        /// Cover degree N.
        n: u32,
        /// Branching exponents `a1,a2,a3,a4`.
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        out: Output,
    },
    /// Sweep all cover classes with N up to `--nmax`.
    Search {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(2..=400))]
        nmax: u32,
        #[command(flatten)]
        exec: ExecArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Build the pillowcase cover and its square-tiled surface.
    Flat {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Write the origami in text format to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Monte-Carlo estimate of the Lyapunov exponents over the `SL(2,Z)` orbit.
    Lyapunov(LyapunovArgs),
    /// Teichmüller-flow spectrum from Kontsevich–Zorich exponents.
    Spectrum {
        /// Comma-separated `λ1,…,λg` with λ1 = 1.
        #[arg(long, allow_hyphen_values = true)]
        kz: String,
        /// Number of zeros of the abelian differential.
        #[arg(long)]
        sigma: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Print the full JSON report instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExecArgs {
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BlockArg {
    Zero,
    Full,
}

#[derive(Args)]
#[group(id = "surface", required = true, multiple = false, args = ["cover", "origami"])]
struct LyapunovArgs {
    /// Cover `N:a1,a2,a3,a4`.
    #[arg(long)]
    cover: Option<String>,
    /// Origami file in text format.
    #[arg(long)]
    origami: Option<PathBuf>,
    /// Continued-fraction digits per sample.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BlockArg::Zero)]
    block: BlockArg,
    /// Digits discarded before measuring growth (default steps/10).
    #[arg(long)]
    burn_in: Option<u64>,
    /// Orbit point to start from (default: uniform per sample).
    #[arg(long)]
    start: Option<usize>,
    /// Write the convergence trace to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Trace period in digits (default steps/1000).
    #[arg(long, requires = "csv", value_parser = clap::value_parser!(u64).range(1..))]
    trace_every: Option<u64>,
    #[command(flatten)]
    exec: ExecArgs,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage { code: &'static str, message: String },
    Domain { code: &'static str, message: String },
}

impl Failure {
    fn usage(e: kzcover::Error) -> Self {
        Failure::Usage { code: e.code(), message: e.to_string() }
    }

    fn domain(e: kzcover::Error) -> Self {
        Failure::Domain { code: e.code(), message: e.to_string() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::Domain { code: "E_IO", message: format!("{}: {e}", path.display()) }
    }
}

type Outcome = Result<(ReportEnvelope, bool), Failure>;

fn cover_from_parts(n: u32, a: &str) -> Result<CoverParams, Failure> {
    let a = parse_exponents(a).map_err(Failure::usage)?;
    CoverParams::new(n, a).map_err(|e| Failure::usage(e.into()))
}

fn cmd_analyze(n: u32, a: &str, out: &Output) -> Outcome {
    let p = cover_from_parts(n, a)?;
    let echo = json!({ "n": n, "a": p.a() });
    Ok((ReportEnvelope::new("analyze", echo, Payload::Analysis(analyze(&p))), out.json))
}

fn cmd_search(nmax: u32, exec: &ExecArgs, out: &Output) -> Outcome {
    let report = run_search(nmax, exec.execution());
    let echo = json!({ "nmax": nmax });
    Ok((ReportEnvelope::new("search", echo, Payload::Search(report)), out.json))
}

fn cmd_flat(n: u32, a: &str, file: Option<&Path>, out: &Output) -> Outcome {
    let p = cover_from_parts(n, a)?;
    let complex = PillowComplex::build(&p);
    let sig = complex.stratum_signature();
    let origami = match to_origami(&complex) {
        Ok(o) => {
            let text = o.to_string();
            if let Some(path) = file {
                fs::write(path, &text).map_err(|e| Failure::io(path, e))?;
            }
            Some(OrigamiSummary {
                squares: o.degree(),
                genus: o.genus(),
                stratum: o.stratum(),
                deck_ok: deck_check(&o),
                text,
                file: file.map(|f| f.display().to_string()),
            })
        }
        Err(e) if file.is_some() => return Err(Failure::domain(e)),
        Err(_) => None,
    };
    let report = FlatReport {
        params: p,
        genus: complex.genus(),
        cells: complex.cell_count(),
        connected: complex.is_connected(),
        orientable: complex.holonomy_orientable(),
        quadratic_orders: sig.quadratic_orders,
        abelian_orders: sig.abelian_orders,
        origami,
    };
    let echo = json!({ "n": n, "a": p.a(), "out": file.map(|f| f.display().to_string()) });
    Ok((ReportEnvelope::new("flat", echo, Payload::Flat(report)), out.json))
}

fn cmd_lyapunov(args: &LyapunovArgs) -> Outcome {
    let (source, origami) = match (&args.cover, &args.origami) {
        (Some(c), _) => {
            let p: CoverParams = c.parse().map_err(Failure::usage)?;
            let o = to_origami(&PillowComplex::build(&p)).map_err(Failure::domain)?;
            (format!("cover {p}"), o)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            let o: Origami = text.parse().map_err(Failure::domain)?;
            (format!("origami {}", path.display()), o)
        }
        (None, None) => unreachable!("clap requires one surface"),
    };
    let orbit = Orbit::new(&origami);
    let block = match args.block {
        BlockArg::Zero => Block::Zero,
        BlockArg::Full => Block::Full,
    };
    let trace_every = args.csv.as_ref().map(|_| args.trace_every.unwrap_or((args.steps / 1000).max(1)));
    let cfg = LyapunovConfig {
        block,
        start: args.start,
        trace_every,
        burn_in: args.burn_in,
        exec: args.exec.execution(),
        ..LyapunovConfig::new(args.steps, args.samples as usize, args.seed)
    };
    let mut estimate = estimate_on_orbit(&orbit, &cfg).map_err(Failure::domain)?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).map_err(|e| Failure::io(path, e))?;
        let mut w = BufWriter::new(file);
        write_trace_csv(&estimate, &mut w)
            .and_then(|_| w.flush())
            .map_err(|e| Failure::io(path, e))?;
        estimate.trace.clear();
    }
    let echo = json!({
        "cover": args.cover,
        "origami": args.origami.as_ref().map(|p| p.display().to_string()),
        "steps": args.steps,
        "samples": args.samples,
        "seed": args.seed,
        "block": block,
        "burn_in": args.burn_in,
        "start": args.start,
        "csv": args.csv.as_ref().map(|p| p.display().to_string()),
        "trace_every": trace_every,
    });
    let report = LyapunovReport {
        source,
        genus: orbit.genus(),
        squares: origami.degree(),
        estimate,
        csv: args.csv.as_ref().map(|p| p.display().to_string()),
    };
    Ok((ReportEnvelope::new("lyapunov", echo, Payload::Lyapunov(report)), args.out.json))
}

fn cmd_spectrum(kz: &str, sigma: usize, out: &Output) -> Outcome {
    let parsed: Vec<f64> = kz
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage { code: "E_PARSE", message: format!("bad exponent list {kz:?}") })?;
    let values = teichmuller_spectrum(&parsed, sigma).map_err(Failure::domain)?;
    let echo = json!({ "kz": parsed, "sigma": sigma });
    let report = SpectrumReport { kz: parsed, sigma, values };
    Ok((ReportEnvelope::new("spectrum", echo, Payload::Spectrum(report)), out.json))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn summary(env: &ReportEnvelope) -> String {
    let mut s = String::new();
    let mut line = |l: String| {
        s.push_str(&l);
        s.push('\n');
    };
    match &env.payload {
        Payload::Analysis(a) => {
            line(format!("cover {}", a.params));
            line(format!("genus {}", a.genus));
            line(format!("eigenspace dims {}", list(&a.eigenspace_dims)));
            match a.square_root_index {
                Some(m) => line(format!("square-root index {m}")),
                None => line("not orientable: no verdict".into()),
            }
            if let Some(e) = &a.spectrum_exponents {
                line(format!("spectrum exponents {} (mod {})", list(e), a.params.n()));
            }
            if let Some(r) = &a.rank_bound {
                line(format!(
                    "structural rank {}, corollary bound {}, verdict {:?}",
                    r.structural_rank, r.corollary_bound, r.verdict
                ));
            }
        }
        Payload::Search(r) => {
            line(format!("{} classes with N <= {}", r.examined, r.n_max));
            line(format!("{} not orientable, {} genus one", r.skipped_nonorientable, r.genus_one_excluded.len()));
            for h in &r.hits {
                let flag = if h.review { "  (needs review)" } else { "" };
                line(format!("hit {} genus {}{flag}", h.params, h.genus));
            }
        }
        Payload::Flat(f) => {
            line(format!("cover {}: {} cells, genus {}", f.params, f.cells, f.genus));
            line(format!("quadratic orders {}", list(&f.quadratic_orders)));
            match &f.origami {
                Some(o) => {
                    line(format!("abelian stratum ({}), {} squares", list(&o.stratum), o.squares));
                    s.push_str(&o.text);
                }
                None => line("not orientable: no square-tiled surface".into()),
            }
        }
        Payload::Lyapunov(l) => {
            let e = &l.estimate;
            line(format!("{}: genus {}, {} squares, orbit size {}", l.source, l.genus, l.squares, e.orbit_size));
            line(format!("{} samples x {} digits, seed {}", e.samples, e.steps, e.seed));
            let first = if e.block == Block::Zero { 2 } else { 1 };
            for (i, (x, se)) in e.lambdas.iter().zip(&e.stderr).enumerate() {
                line(format!("lambda_{} = {x:+.6e} +- {se:.2e}", i + first));
            }
            line(format!("lambda_1 check {:.6}, sum check {:.6}", e.taut_exponent, e.sum_check));
        }
        Payload::Spectrum(r) => line(list(&r.values)),
    }
    s
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { n, a, out } => cmd_analyze(*n, a, out),
        Command::Search { nmax, exec, out } => cmd_search(*nmax, exec, out),
        Command::Flat { n, a, out, output } => cmd_flat(*n, a, out.as_deref(), output),
        Command::Lyapunov(args) => cmd_lyapunov(args),
        Command::Spectrum { kz, sigma, out } => cmd_spectrum(kz, *sigma, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok((env, true)) => {
            println!("{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
            ExitCode::SUCCESS
        }
        Ok((env, false)) => {
            print!("{}", summary(&env));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage { code, message }) => {
            eprintln!("error[{code}]: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Domain { code, message }) => {
            eprintln!("error[{code}]: {message}");
            ExitCode::from(1)
        }
    }
}
