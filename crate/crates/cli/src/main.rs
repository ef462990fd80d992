use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use severi_cli::cache::Cache;
use severi_cli::config::{default_budget, RunConfig, Source};
use severi_cli::report::run;
use severi_cli::verify::verify_paper;
use severi_core::Error;

const EXIT_ERROR: u8 = 1;
const EXIT_BUDGET: u8 = 2;

#[derive(Parser)]
#[command(name = "severi", version, about = "Saito matrices, period symplectic forms and Severi strata of simple plane curve singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a catalog singularity (A2, A4, A6, A8, E6, E8) or a custom x^p + y^q.
    Analyze {
        label: Option<String>,
        /// Custom defining polynomial, e.g. "x^5 + y^2".
        #[arg(long = "f", requires = "weights", conflicts_with = "label")]
        f: Option<String>,
        /// Weights of x and y for --f, as WX,WY.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Strata D(k) to analyse, comma separated; "all" for every k.
        #[arg(long, value_delimiter = ',')]
        strata: Vec<String>,
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        degree: bool,
        #[arg(long)]
        poisson: bool,
        #[arg(long)]
        rank_tests: bool,
        #[arg(long)]
        presentations: bool,
        #[arg(long)]
        lie_check: bool,
        /// Everything above on every stratum.
        #[arg(long)]
        all: bool,
        /// Initial relative precision of the chart at infinity.
        #[arg(long)]
        trunc: Option<i64>,
        /// Seconds per Gröbner computation.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Compare the computed results for a catalog entry with the published ones.
    VerifyPaper {
        label: String,
        #[arg(long)]
        budget: Option<f64>,
    },
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_ERROR)
}

fn main() -> ExitCode {
    // usage errors exit with 1; 2 is reserved for exhausted budgets
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Analyze {
            label,
            f,
            weights,
            strata,
            betti,
            degree,
            poisson,
            rank_tests,
            presentations,
            lie_check,
            all,
            trunc,
            budget,
            format,
            cache,
            no_cache,
        } => {
            let source = match (label, f, weights) {
                (Some(l), None, _) => Source::Catalog(l.to_ascii_uppercase()),
                (None, Some(f), Some(w)) if w.len() == 2 => Source::Custom { f, weights: (w[0], w[1]) },
                _ => return fail("give a catalog label or --f with --weights"),
            };
            let sing = match source.singularity() {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let delta = sing.invariants().delta;
            let mut config = if all {
                match RunConfig::everything(source.clone()) {
                    Ok(c) => c,
                    Err(e) => return fail(e),
                }
            } else {
                RunConfig::basic(source.clone())
            };
            for s in &strata {
                if s == "all" {
                    config.strata = (1..=delta).rev().collect();
                    continue;
                }
                match s.parse::<usize>() {
                    Ok(k) if !config.strata.contains(&k) => config.strata.push(k),
                    Ok(_) => {}
                    Err(_) => return fail(format!("bad stratum index `{s}`")),
                }
            }
            config.betti |= betti;
            config.degree |= degree;
            config.poisson |= poisson;
            config.rank_tests |= rank_tests;
            config.presentations |= presentations;
            config.lie_check |= lie_check;
            config.trunc = trunc;
            config.budget = budget.unwrap_or_else(|| default_budget(&source));

            let cache = if no_cache { None } else { cache.or_else(Cache::default_dir).map(Cache::new) };
            let start = Instant::now();
            let (report, hit) = match cache.as_ref().and_then(|c| c.load(&config)) {
                Some(r) => (r, true),
                None => match run(&config) {
                    Ok(r) => (r, false),
                    Err(Error::BudgetExceeded) => {
                        eprintln!("error: budget exceeded");
                        return ExitCode::from(EXIT_BUDGET);
                    }
                    Err(e) => return fail(e),
                },
            };
            if let (Some(c), false) = (&cache, hit) {
                if let Err(e) = c.store(&config, &report) {
                    eprintln!("warning: could not write cache in {}: {e}", c.dir().display());
                }
            }
            eprintln!("{} in {:.2?}{}", report.singularity.label, start.elapsed(), if hit { " (cached)" } else { "" });
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if !report.invariants_hold() {
                eprintln!("error: consistency checks failed");
                ExitCode::from(EXIT_ERROR)
            } else if report.budget_exceeded {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::VerifyPaper { label, budget } => {
            let start = Instant::now();
            let card = match verify_paper(&label, budget) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            print!("{card}");
            eprintln!("{} verified in {:.2?}", card.label, start.elapsed());
            if !card.passed() {
                ExitCode::from(EXIT_ERROR)
            } else if card.budget_exceeded() {
                ExitCode::from(EXIT_BUDGET)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
