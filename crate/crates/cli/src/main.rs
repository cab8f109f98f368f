use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invlab_core::construct::parse_expr;
use invlab_core::digraph::{Digraph, InversionFamily};
use invlab_core::experiments::{self, Experiment, ExperimentParams};
use invlab_core::f2::{gram_factor, gram_factor_min, SymMatrix};
use invlab_core::solver::{inv, Backend, InvOutcome, SearchOptions, MAX_K};
use invlab_core::Error;

/// Exact inversion numbers of small oriented graphs.
#[derive(Parser, Debug)]
#[command(name = "invlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute inv(D) with a witness family.
    Inv {
        /// Digraph file, `expr:<expression>` or `code:<rows>`.
        source: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Apply a family and report whether the result is acyclic.
    Verify {
        source: String,
        /// One set per line, space-separated vertex indices.
        family: String,
    },
    /// Factor a symmetric F2 matrix as a Gram matrix.
    Gram {
        /// Order on the first line, then one 0/1 row per line.
        matrix: String,
    },
    /// Run a named sweep.
    Experiment {
        /// thm13, direction, abnormal, kjoin, thm15, qn, bounds, conj-direction or rank.
        name: String,
        #[arg(long)]
        n_max: Option<usize>,
        /// Every labelled tournament instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value = "assign")]
    backend: String,
    #[arg(long, default_value_t = MAX_K)]
    max_k: usize,
    /// Search node limit.
    #[arg(long)]
    budget: Option<u64>,
    /// Identical output across runs and thread counts.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    even_weight_only: bool,
    /// Single-threaded search.
    #[arg(long)]
    sequential: bool,
}

impl SearchArgs {
    fn options(&self) -> Result<SearchOptions, Error> {
        let backend: Backend = self.backend.parse()?;
        if self.max_k > MAX_K {
            return Err(Error::TooLarge {
                what: "max_k",
                got: self.max_k,
                limit: MAX_K,
            });
        }
        let base = SearchOptions::default();
        Ok(SearchOptions {
            backend,
            max_k: self.max_k,
            budget: self.budget.unwrap_or(base.budget),
            even_weight_only: self.even_weight_only,
            deterministic: self.deterministic,
            parallel: base.parallel && !self.sequential,
        })
    }
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
}

fn load_graph(source: &str) -> Result<Digraph, Error> {
    if let Some(text) = source.strip_prefix("expr:") {
        parse_expr(text)?.build()
    } else if let Some(code) = source.strip_prefix("code:") {
        Digraph::from_code(code)
    } else {
        Digraph::parse(&read(source)?)
    }
}

fn cmd_inv(source: &str, search: &SearchArgs) -> Result<u8, Error> {
    let d = load_graph(source)?;
    let opts = search.options()?;
    match inv(&d, &opts) {
        Ok(outcome) => {
            print!("{}", outcome.report());
            Ok(match outcome {
                InvOutcome::Exact(_) => 0,
                InvOutcome::AboveLimit { .. } => 2,
            })
        }
        Err(Error::BudgetExceeded { budget }) => {
            println!("inv=? backend={} budget={budget} status=budget_exceeded", opts.backend);
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn cmd_verify(source: &str, family_path: &str) -> Result<u8, Error> {
    let d = load_graph(source)?;
    let family = InversionFamily::parse(&read(family_path)?, d.order())?;
    let flipped = d.apply_family(&family)?;
    match flipped.topological_order() {
        Some(order) => {
            println!("acyclic sets={}", family.len());
            println!("order {}", join(&order, " "));
        }
        None => {
            let cycle = flipped.find_cycle().expect("cyclic digraph has a cycle");
            let mut closed = cycle.clone();
            closed.push(cycle[0]);
            println!("cyclic sets={}", family.len());
            println!("cycle {}", join(&closed, " -> "));
        }
    }
    Ok(0)
}

fn cmd_gram(path: &str) -> Result<u8, Error> {
    let m = SymMatrix::parse(&read(path)?)?;
    let n = m.order();
    match gram_factor(&m) {
        Some(f) => {
            println!("gram n={n} k={} status=factored", f.k);
            for v in &f.columns {
                println!("{v}");
            }
        }
        None => println!("gram n={n} k={n} status=infeasible reason=even_order_zero_diagonal_nonsingular"),
    }
    let min = gram_factor_min(&m);
    println!("min_gram_dim={}", min.k);
    for v in &min.columns {
        println!("{v}");
    }
    Ok(0)
}

fn cmd_experiment(name: &str, n_max: Option<usize>, labeled: bool, search: &SearchArgs) -> Result<u8, Error> {
    let exp: Experiment = name.parse()?;
    let params = ExperimentParams {
        n_max,
        labeled,
        opts: search.options()?,
    };
    let report = experiments::run(exp, &params)?;
    print!("{}", report.to_text());
    Ok(report.exit_code() as u8)
}

fn join(items: &[usize], sep: &str) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Inv { source, search } => cmd_inv(source, search),
        Command::Verify { source, family } => cmd_verify(source, family),
        Command::Gram { matrix } => cmd_gram(matrix),
        Command::Experiment {
            name,
            n_max,
            labeled,
            search,
        } => cmd_experiment(name, *n_max, *labeled, search),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e @ Error::InvariantViolation(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
