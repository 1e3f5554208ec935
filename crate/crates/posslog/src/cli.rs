//! Command-line front-end: distribution listings, entailment queries,
//! conversions between bases and networks, conditional queries, randomized
//! verification and kappa rankings.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::base::PossBase;
use crate::base2graph::compile;
use crate::format::{parse_kap, parse_pkb, parse_pnet, write_distribution, write_pkb, write_pnet};
use crate::graph2base::encode;
use crate::logic::VarId;
use crate::network::{Mode, PossNetwork};
use crate::parser::parse_formula_closed;
use crate::verify::{run_check, CheckKind, GeneratorConfig};
use crate::weight::Weight;
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "posslog", version, about = "Possibilistic bases, networks and rankings")]
struct Cli {
    /// Override the exhaustive enumeration guard (max variables).
    #[arg(long, global = true, value_name = "N")]
    max_vars: Option<usize>,
    /// Write results to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Min,
    Prod,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Min => Mode::Min,
            ModeArg::Prod => Mode::Product,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the possibility distribution induced by a base file.
    Dist { file: PathBuf },
    /// Decide whether a base entails a formula at a given level.
    Entail {
        file: PathBuf,
        /// Query formula, e.g. "a | b".
        query: String,
        /// Entailment level, e.g. "1/2".
        alpha: String,
    },
    /// Translate a network file into an equivalent base file.
    Net2base {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "min")]
        mode: ModeArg,
    },
    /// Compile a base file into a min-based network file.
    Base2net {
        file: PathBuf,
        /// Comma-separated variable ordering; defaults to file order.
        #[arg(long)]
        order: Option<String>,
        /// Emit the rewriting steps as comments before the network.
        #[arg(long)]
        trace: bool,
    },
    /// Conditional possibility of a target given evidence, from a base or
    /// network file.
    Query {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "min")]
        mode: ModeArg,
        /// Target formula.
        #[arg(long)]
        target: String,
        /// Evidence formula; "true" for the marginal.
        #[arg(long, default_value = "true")]
        evidence: String,
    },
    /// Run an oracle check on random instances or on a given file.
    Verify {
        /// One of: encode-min, encode-product, recovery-product,
        /// recovery-min, independence, roundtrip, cstar-algebra.
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        max_parents: usize,
        #[arg(long, default_value_t = 8)]
        clauses: usize,
        /// Check this file instead of random instances.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Ordering for roundtrip checks on a file.
        #[arg(long)]
        order: Option<String>,
    },
    /// Print the possibility distribution of a kappa ranking file.
    Kappa2pi { file: PathBuf },
}

/// Runs the CLI; returns the process exit code (0 success, 1 domain error,
/// 2 usage or parse error).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_base(path: &Path, max_vars: Option<usize>) -> Result<PossBase> {
    let mut base = parse_pkb(&read(path)?)?;
    if let Some(g) = max_vars {
        base.vars_mut().set_guard(g);
    }
    Ok(base)
}

fn load_net(path: &Path, max_vars: Option<usize>) -> Result<PossNetwork> {
    let mut net = parse_pnet(&read(path)?)?;
    if let Some(g) = max_vars {
        net.vars_mut().set_guard(g);
    }
    let report = net.validate();
    if !report.is_valid() {
        return Err(Error::InvalidNetwork(report.errors.join("; ")));
    }
    for warning in report.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(net)
}

fn parse_ordering(base: &PossBase, order: &Option<String>) -> Result<Vec<VarId>> {
    match order {
        None => Ok(base.vars().ids().collect()),
        Some(text) => text
            .split(',')
            .map(|name| {
                base.vars()
                    .lookup(name.trim())
                    .ok_or_else(|| Error::UnknownVariable(name.trim().to_string()))
            })
            .collect(),
    }
}

/// A file whose first content line is a `node` declaration is a network.
fn is_network_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("node "))
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Dist { file } => {
            let base = load_base(file, cli.max_vars)?;
            emit(&cli.output, &write_distribution(&base.pi()?))
        }
        Command::Entail { file, query, alpha } => {
            let base = load_base(file, cli.max_vars)?;
            let f = parse_formula_closed(query, base.vars())?;
            let a = Weight::parse(alpha)?;
            let verdict = if base.entails(&f, &a)? { "yes" } else { "no" };
            emit(&cli.output, &format!("{verdict}\n"))
        }
        Command::Net2base { file, mode } => {
            let net = load_net(file, cli.max_vars)?;
            let base = encode(&net, (*mode).into())?;
            emit(&cli.output, &write_pkb(&base))
        }
        Command::Base2net { file, order, trace } => {
            let base = load_base(file, cli.max_vars)?;
            let ordering = parse_ordering(&base, order)?;
            let (r, net) = compile(&base, &ordering)?;
            let mut text = String::new();
            if *trace {
                for step in &r.trace {
                    text.push_str(&format!("# {}\n", step.display(base.vars())));
                }
            }
            text.push_str(&write_pnet(&net));
            emit(&cli.output, &text)
        }
        Command::Query { file, mode, target, evidence } => {
            let text = read(file)?;
            let mode: Mode = (*mode).into();
            let (vars, joint) = if is_network_file(&text) {
                let mut net = parse_pnet(&text)?;
                if let Some(g) = cli.max_vars {
                    net.vars_mut().set_guard(g);
                }
                (net.vars().clone(), net.joint_by_mode(mode)?)
            } else {
                let mut base = parse_pkb(&text)?;
                if let Some(g) = cli.max_vars {
                    base.vars_mut().set_guard(g);
                }
                (base.vars().clone(), base.pi()?)
            };
            let target = parse_formula_closed(target, &vars)?;
            let evidence = parse_formula_closed(evidence, &vars)?;
            let cond = match mode {
                Mode::Min => joint.condition_min(&evidence)?,
                Mode::Product => joint.condition_product(&evidence)?,
            };
            let degree = cond.possibility(&target);
            emit(&cli.output, &format!("{degree} ({})\n", degree.to_f64()))
        }
        Command::Verify { check, trials, seed, vars, max_parents, clauses, input, order } => {
            let kind = CheckKind::parse(check)
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown check `{check}`") })?;
            let report = match input {
                Some(path) => verify_file(kind, path, order, cli.max_vars)?,
                None => {
                    let cfg = GeneratorConfig {
                        seed: *seed,
                        vars: *vars,
                        max_parents: *max_parents,
                        max_clauses: *clauses,
                        ..GeneratorConfig::default()
                    };
                    run_check(kind, &cfg, *trials)?
                }
            };
            emit(&cli.output, &report.render())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Error::Invalid(format!("{} failed", report.name)))
            }
        }
        Command::Kappa2pi { file } => {
            let mut k = parse_kap(&read(file)?)?;
            if let Some(g) = cli.max_vars {
                k.vars_mut().set_guard(g);
            }
            emit(&cli.output, &write_distribution(&k.to_possibility()))
        }
    }
}

fn verify_file(
    kind: CheckKind,
    path: &Path,
    order: &Option<String>,
    max_vars: Option<usize>,
) -> Result<crate::verify::CheckReport> {
    use crate::verify::{
        check_cstar_algebra, check_encode_min, check_encode_product, check_independence,
        check_recovery_min, check_recovery_product, check_roundtrip,
    };
    match kind {
        CheckKind::Roundtrip => {
            let base = load_base(path, max_vars)?;
            let ordering = parse_ordering(&base, order)?;
            check_roundtrip(&base, &ordering)
        }
        CheckKind::CstarAlgebra => {
            let base = load_base(path, max_vars)?;
            let bases = [base.clone(), base.clone(), base];
            check_cstar_algebra(&bases)
        }
        _ => {
            let net = load_net(path, max_vars)?;
            match kind {
                CheckKind::EncodeMin => check_encode_min(&net),
                CheckKind::EncodeProduct => check_encode_product(&net),
                CheckKind::RecoveryProduct => check_recovery_product(&net),
                CheckKind::RecoveryMin => check_recovery_min(&net),
                CheckKind::Independence => check_independence(&net),
                _ => unreachable!(),
            }
        }
    }
}
