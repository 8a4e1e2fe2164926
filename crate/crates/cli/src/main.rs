use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coinweigh::adversary::{self, lower_bound};
use coinweigh::counting;
use coinweigh::exec::Exec;
use coinweigh::scale::transcript_jsonl;
use coinweigh::solver::{find_tree_within, Depth, Solver, SolverOptions, Tree, Universe};
use coinweigh::strategies::{self, Mark, StrategyParams};
use coinweigh::verify;
use coinweigh::{Answer, Assignment, Error, Goal, PanPolicy, Session, Transcript, WeightModel};

#[derive(Parser)]
#[command(name = "coinweigh", version, about = "Sort coins of a few weights with a balance scale")]
struct Cli {
    /// Human-readable output instead of JSONL/TSV.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    All,
    OneMiddle,
    #[value(name = "hunt-4-1-4")]
    Hunt414,
}

impl UniverseArg {
    fn build(self, n: usize, c: u8) -> coinweigh::Result<Universe> {
        match self {
            UniverseArg::All => Universe::all(n, c),
            UniverseArg::OneMiddle => Universe::one_middle(n),
            UniverseArg::Hunt414 => Ok(Universe::hunt_4_1_4()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(name = "sort3-tiny")]
    Sort3Tiny,
    #[value(name = "sort3-huge")]
    Sort3Huge,
    #[value(name = "find-mid")]
    FindMid,
    Hunt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Dist,
    Balance,
}

#[derive(clap::Args)]
struct StrategyArgs {
    #[arg(long)]
    strategy: String,
    /// Number of classes for sortk-tiny.
    #[arg(long)]
    k: Option<u8>,
    /// Per-coin L/H marks for ternary, e.g. LLHHL.
    #[arg(long)]
    marks: Option<String>,
}

impl StrategyArgs {
    fn params(&self) -> anyhow::Result<StrategyParams> {
        Ok(StrategyParams {
            k: self.k,
            marks: self.marks.as_deref().map(Mark::parse_all).transpose()?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one strategy on one hidden assignment and print the transcript.
    Run {
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Hidden classes as digits, coin 0 first.
        #[arg(long, conflicts_with_all = ["seed", "universe"])]
        assignment: Option<String>,
        /// Picks the hidden assignment from --universe.
        #[arg(long, requires = "universe")]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        universe: Option<UniverseArg>,
    },
    /// Run a strategy on every assignment of a universe.
    Verify {
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        universe: UniverseArg,
        /// Print the full JSON report instead of the TSV line.
        #[arg(long)]
        json: bool,
    },
    /// Play a one-coin-per-pan strategy against the adversary.
    Adversary {
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Compute an optimal worst-case number of weighings.
    Solve {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        budget: usize,
        /// Write the optimal decision tree as JSON.
        #[arg(long)]
        emit_tree: Option<PathBuf>,
        /// Reduce moves by coin symmetries of the knowledge state.
        #[arg(long)]
        symmetry: bool,
    },
    /// Closed forms next to brute-force counts.
    Count {
        #[arg(long, value_enum)]
        table: Table,
        #[arg(long)]
        max: usize,
    },
    /// Nine coins, four light, four heavy: find the middle one.
    Hunt {
        #[arg(long, value_parser = clap::value_parser!(u8).range(6..=7))]
        weighings: u8,
        #[arg(long)]
        emit_tree: Option<PathBuf>,
    },
}

/// Usage problems detected after argument parsing.
fn is_usage(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::UnknownStrategy(_)
                | Error::InvalidArgument(_)
                | Error::InvalidAssignment(_)
                | Error::GuardExceeded(_)
                | Error::SizeMismatch(..)
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("COINWEIGH_THREADS").ok().and_then(|v| v.parse().ok()) {
        init_threads(threads);
    }
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}

#[cfg(feature = "parallel")]
fn init_threads(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
}

#[cfg(not(feature = "parallel"))]
fn init_threads(_threads: usize) {}

/// Returns whether every check passed.
fn dispatch(cli: &Cli) -> anyhow::Result<bool> {
    let exec = Exec::default();
    match &cli.command {
        Command::Run {
            strategy,
            n,
            assignment,
            seed,
            universe,
        } => {
            let s = strategies::build(&strategy.strategy, &strategy.params()?)?;
            let hidden = match (assignment, seed, universe) {
                (Some(digits), _, _) => Assignment::from_digits(digits, s.classes())?,
                (None, seed, Some(u)) => {
                    let n = n.ok_or_else(|| Error::InvalidArgument("--n is required with --universe".into()))?;
                    let u = u.build(n, s.classes())?;
                    let mut rng = StdRng::seed_from_u64(seed.unwrap_or(0));
                    u.assignments()[rng.gen_range(0..u.len())].clone()
                }
                _ => return Err(Error::InvalidArgument("give --assignment or --universe".into()).into()),
            };
            if let Some(n) = n {
                if *n != hidden.n() {
                    return Err(Error::SizeMismatch(*n, hidden.n()).into());
                }
            }
            let mut session = Session::new(hidden.clone(), WeightModel::Generic, s.policy());
            let answer = s.run(hidden.n(), &mut session)?;
            let correct = s.goal().truth(&hidden).as_ref() == Some(&answer);
            if cli.pretty {
                print_pretty(session.transcript(), &answer);
                println!("hidden: {hidden}  correct: {}", if correct { "yes" } else { "no" });
            } else {
                print!("{}", transcript_jsonl(session.transcript(), Some(&answer), None));
            }
            Ok(correct)
        }
        Command::Verify {
            strategy,
            n,
            universe,
            json,
        } => {
            let params = strategy.params()?;
            let c = match strategy.strategy.as_str() {
                "sortk-tiny" => params.k.unwrap_or(3),
                "sort2-tiny" => 2,
                _ => 3,
            };
            let u = universe.build(*n, c)?;
            let report = verify::exhaustive_check_by_name(&strategy.strategy, &params, &u, exec)?;
            if *json {
                println!("{}", report.to_json());
            } else if cli.pretty {
                println!(
                    "{} on {} (n={}): {} runs, {} failures, worst {} of {} allowed",
                    report.strategy,
                    report.universe,
                    report.n,
                    report.runs,
                    report.failures.len(),
                    report.max_count,
                    report.bound
                );
                for (count, freq) in &report.histogram {
                    println!("  {count:>3} weighings: {freq}");
                }
            } else {
                println!("{}", report.to_tsv());
            }
            Ok(report.passed())
        }
        Command::Adversary { strategy, n } => {
            let s = strategies::build(&strategy.strategy, &strategy.params()?)?;
            let play = adversary::play(s.as_ref(), *n)?;
            let ok = play.count() >= lower_bound(*n) && play.trace.is_sound();
            if cli.pretty {
                for (i, r) in play.state.records().iter().enumerate() {
                    println!(
                        "{:>3}. {} {}  rule {}  s = {}/2",
                        i + 1,
                        r.weighing,
                        r.outcome,
                        r.rule.number(),
                        play.trace.after[i]
                    );
                }
                println!("answer: {}", play.answer);
                println!("weighings: {}  lower bound: {}", play.count(), lower_bound(*n));
            } else {
                print!("{}", play.to_jsonl());
            }
            Ok(ok)
        }
        Command::Solve {
            variant,
            n,
            budget,
            emit_tree,
            symmetry,
        } => {
            let (u, policy, goal) = match variant {
                Variant::Sort3Tiny => (Universe::all(*n, 3)?, PanPolicy::Tiny, Goal::Sort),
                Variant::Sort3Huge => (Universe::all(*n, 3)?, PanPolicy::Huge, Goal::Sort),
                Variant::FindMid => (Universe::one_middle(*n)?, PanPolicy::Huge, Goal::FindMiddle),
                Variant::Hunt => (Universe::hunt_4_1_4(), PanPolicy::Huge, Goal::FindMiddle),
            };
            if *budget > 16 {
                return Err(Error::InvalidArgument(format!("budget {budget} above 16")).into());
            }
            let opts = SolverOptions {
                symmetry: *symmetry,
                ..SolverOptions::default()
            };
            let mut solver = Solver::new(&u, policy, goal, opts)?;
            let root = u.full_state();
            let depth = solver.depth_of(&root, *budget);
            let name = variant.to_possible_value().expect("named variant").get_name().to_string();
            match depth {
                Depth::Exact(d) => {
                    println!("variant={name}\tn={}\tuniverse={}\tdepth={d}", u.n(), u.name());
                    if let Some(path) = emit_tree {
                        let tree = solver.tree(&root, d).context("tree for a solved depth")?;
                        write_tree(path, &tree)?;
                    }
                    Ok(true)
                }
                Depth::Exceeded => {
                    println!("variant={name}\tn={}\tuniverse={}\tdepth=exceeded\tbudget={budget}", u.n(), u.name());
                    Ok(true)
                }
            }
        }
        Command::Count { table, max } => {
            let t = match table {
                Table::Dist => counting::distinguishable_table(*max, exec)?,
                Table::Balance => counting::balance_table(*max, exec)?,
            };
            print!("{}", t.to_tsv());
            Ok(t.all_match())
        }
        Command::Hunt { weighings, emit_tree } => {
            let u = Universe::hunt_4_1_4();
            if *weighings == 7 {
                let report = verify::exhaustive_check(&strategies::FindMiddle, &u, exec)?;
                let ok = report.failures.is_empty() && report.max_count <= 7;
                if cli.pretty {
                    println!(
                        "{}/{} correct, at most {} weighings",
                        report.runs - report.failures.len(),
                        report.runs,
                        report.max_count
                    );
                } else {
                    println!("{}", report.to_tsv());
                }
                return Ok(ok);
            }
            let Some((tree, equal_pans)) = find_tree_within(&u, PanPolicy::Huge, Goal::FindMiddle, 6)? else {
                println!("weighings=6\tfound=no");
                return Ok(false);
            };
            let replay = tree.replay(&u, Goal::FindMiddle, exec);
            let ok = replay.mismatches == 0 && replay.max_depth <= 6;
            if let Some(path) = emit_tree {
                write_tree(path, &tree)?;
            }
            if cli.pretty {
                println!(
                    "depth-{} tree ({} pans): {}/{} correct",
                    tree.depth(),
                    if equal_pans { "equal" } else { "any" },
                    replay.runs - replay.mismatches,
                    replay.runs
                );
            } else {
                println!(
                    "weighings=6\tfound=yes\tdepth={}\tequal_pans={}\truns={}\tmismatches={}",
                    tree.depth(),
                    if equal_pans { "yes" } else { "no" },
                    replay.runs,
                    replay.mismatches
                );
            }
            Ok(ok)
        }
    }
}

fn print_pretty(t: &Transcript, answer: &Answer) {
    for (i, (w, o)) in t.steps().iter().enumerate() {
        println!("{:>3}. {w}  {o}", i + 1);
    }
    println!("answer: {answer}");
}

fn write_tree(path: &PathBuf, tree: &Tree) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&tree.to_json())?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
