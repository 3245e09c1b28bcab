use clap::{Parser, Subcommand};
use mcmatch::dimacs::{emit_dimacs, emit_solution, parse_dimacs};
use mcmatch::gen::{generate, GenKind};
use mcmatch::graph::Matching;
use mcmatch::oracle::brute_max_matching;
use mcmatch::solve::{maximum_matching_from, SolveOptions};
use std::fs;
use std::io::Write;
use std::panic::AssertUnwindSafe;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "mcmatch", about = "Maximum cardinality matching on DIMACS edge-format instances", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file and print the matching.
    Solve {
        file: PathBuf,
        /// Validate the result: certificate at the optimal halt, full
        /// brute-force comparison on small instances.
        #[arg(long)]
        verify: bool,
        /// Write a step trace of every phase to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print a per-phase statistics table to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Generate an instance file.
    Gen {
        /// random-gnm | random-bipartite | long-path-chain | nested-blossom-gadget
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Solve generated random instances and print a timing table.
    Bench {
        /// Comma-separated n:m pairs, e.g. 50000:250000,100000:500000
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match std::panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err((code, msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
        Err(_) => {
            eprintln!("error: internal invariant failure");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.cmd {
        Cmd::Solve { file, verify, trace, stats } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| (EXIT_PARSE, format!("{}: {e}", file.display())))?;
            let g = parse_dimacs(&text).map_err(|e| (EXIT_PARSE, format!("{}: {e}", file.display())))?;
            let mut trace_file = match &trace {
                Some(path) => Some(
                    fs::File::create(path).map_err(|e| (EXIT_USAGE, format!("{}: {e}", path.display())))?,
                ),
                None => None,
            };
            let mut opts = SolveOptions {
                verify,
                check_invariants: verify && g.vertex_count() <= 1000,
                trace: trace_file.as_mut().map(|f| f as &mut dyn Write),
            };
            let (m, solve_stats) = maximum_matching_from(&g, Matching::empty(g.vertex_count()), &mut opts)
                .expect("empty matching is always valid");
            if verify {
                assert!(m.is_valid_for(&g), "solver returned an invalid matching");
                if g.vertex_count() <= 20 {
                    let (best, _) = brute_max_matching(&g).expect("size guard already checked");
                    assert_eq!(m.size(), best, "solver disagrees with brute force");
                }
            }
            print!("{}", emit_solution(&m, &solve_stats));
            if stats {
                eprintln!("phase\tdelta\tpaths\tlen\tms");
                for (i, p) in solve_stats.phases.iter().enumerate() {
                    eprintln!(
                        "{}\t{}\t{}\t{}\t{:.3}",
                        i + 1,
                        p.delta_final,
                        p.path_count,
                        p.path_len,
                        p.elapsed.as_secs_f64() * 1e3
                    );
                }
            }
            Ok(())
        }
        Cmd::Gen { kind, n, m, seed, out } => {
            let kind = GenKind::parse(&kind)
                .ok_or_else(|| (EXIT_USAGE, format!("unknown generator kind '{kind}'")))?;
            let g = generate(kind, n, m, seed).map_err(|e| (EXIT_USAGE, e.to_string()))?;
            fs::write(&out, emit_dimacs(&g)).map_err(|e| (EXIT_USAGE, format!("{}: {e}", out.display())))?;
            Ok(())
        }
        Cmd::Bench { sizes, seed } => {
            println!("n\tm\tseed\tmatched\tphases\ttotal_ms\tper_phase_ms");
            for (i, spec) in sizes.iter().enumerate() {
                let (n, m) = parse_size(spec).ok_or_else(|| {
                    (EXIT_USAGE, format!("bad size '{spec}', expected n:m"))
                })?;
                let instance_seed = seed.wrapping_add(i as u64);
                let g = mcmatch::gen::random_gnm(n, m, instance_seed)
                    .map_err(|e| (EXIT_USAGE, e.to_string()))?;
                let mut opts = SolveOptions::default();
                let (matching, stats) =
                    maximum_matching_from(&g, Matching::empty(n), &mut opts).expect("valid start");
                let per_phase: Vec<String> = stats
                    .phases
                    .iter()
                    .map(|p| format!("{:.3}", p.elapsed.as_secs_f64() * 1e3))
                    .collect();
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{:.3}\t{}",
                    n,
                    m,
                    instance_seed,
                    matching.size(),
                    stats.phase_count(),
                    stats.total_elapsed.as_secs_f64() * 1e3,
                    per_phase.join(";")
                );
            }
            Ok(())
        }
    }
}

fn parse_size(spec: &str) -> Option<(usize, usize)> {
    let (n, m) = spec.split_once(':')?;
    Some((n.trim().parse().ok()?, m.trim().parse().ok()?))
}
