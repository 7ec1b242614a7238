//! Command-line interface: decompose semisimple group algebras, run the
//! independent center-splitting oracle, diff the two, and inspect pairs,
//! chains, cyclotomic classes and polycyclic collection.
//!
//! Exit codes: 0 success, 1 domain failures (non-semisimple input,
//! incomplete pair sets, failed certification, non-empty diffs), 2 input
//! errors (unreadable or malformed files, invalid q, inconsistent
//! presentations).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wedderburn::cyclotomic;
use wedderburn::decomposer::{self, DecomposeError, DecomposeOptions, VerifyDims};
use wedderburn::gf::{FiniteField, RootChoice};
use wedderburn::group::FiniteGroup;
use wedderburn::io::{self, IoError};
use wedderburn::oracle;
use wedderburn::shoda::{self, SearchLimits, ShodaCheck};

#[derive(Parser)]
#[command(name = "wedderburn", version, about = "Wedderburn decomposition of semisimple finite group algebras F_q G")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the primitive central idempotents and simple components of F_q G.
    Decompose(DecomposeArgs),
    /// Independent decomposition by splitting the center along class sums.
    Oracle(OracleArgs),
    /// Run both decompose and oracle and report their difference.
    Compare(CompareArgs),
    /// Check the (strong) Shoda pair conditions for each pair in a file.
    PairCheck(PairCheckArgs),
    /// Certify strong inductive chains for each pair in a file.
    ChainCheck(ChainCheckArgs),
    /// q-cyclotomic classes mod k, or conjugacy classes of a group.
    Classes(ClassesArgs),
    /// Collect a word of a polycyclic group to its normal form.
    Collect(CollectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonRun {
    /// Group description file (JSON).
    #[arg(long)]
    group: PathBuf,
    /// Field size q (a prime power coprime to |G|).
    #[arg(long)]
    q: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    common: CommonRun,
    /// Pair/chain file; without it the pair set is searched.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Include idempotents in the report.
    #[arg(long)]
    emit_idempotents: bool,
    /// Verify dim(F_q G e) = n^2 l exactly for every component.
    #[arg(long)]
    verify_dims: bool,
    /// Use the alternate primitive root convention (relabels classes).
    #[arg(long)]
    alt_root: bool,
    /// Subgroup-enumeration ceiling for searches.
    #[arg(long, default_value_t = wedderburn::group::DEFAULT_SUBGROUP_CEILING)]
    subgroup_ceiling: usize,
    /// Chain-search budget per pair.
    #[arg(long, default_value_t = 256)]
    chain_budget: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonRun,
    #[arg(long)]
    emit_idempotents: bool,
    /// Seed for the center-splitting probe sequence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonRun,
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = wedderburn::group::DEFAULT_SUBGROUP_CEILING)]
    subgroup_ceiling: usize,
}

#[derive(Args)]
struct PairCheckArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    pairs: PathBuf,
    /// Field size for the strong-pair check (orthogonality is over F_q).
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct ChainCheckArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    pairs: PathBuf,
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct ClassesArgs {
    /// Modulus for q-cyclotomic classes.
    #[arg(long, conflicts_with = "group")]
    k: Option<u64>,
    /// Field size (required with --k).
    #[arg(long)]
    q: Option<u64>,
    /// Group file: print conjugacy classes instead.
    #[arg(long)]
    group: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CollectArgs {
    /// Polycyclic group file.
    #[arg(long)]
    group: PathBuf,
    /// Word such as "x5*x4^2*x1^-1".
    #[arg(long)]
    word: String,
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Decompose(args) => run_decompose(args),
        Cmd::Oracle(args) => run_oracle(args),
        Cmd::Compare(args) => run_compare(args),
        Cmd::PairCheck(args) => run_pair_check(args),
        Cmd::ChainCheck(args) => run_chain_check(args),
        Cmd::Classes(args) => run_classes(args),
        Cmd::Collect(args) => run_collect(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn map_decompose_err(e: DecomposeError) -> CliError {
    match &e {
        DecomposeError::NotSemisimple { .. }
        | DecomposeError::NotShodaPair { .. }
        | DecomposeError::IncompletePairSet { .. }
        | DecomposeError::DivisibilityViolation { .. }
        | DecomposeError::Incomplete { .. }
        | DecomposeError::Internal(_)
        | DecomposeError::Chain(_) => CliError::Domain(e.to_string()),
        DecomposeError::Group(_) | DecomposeError::Algebra(_) | DecomposeError::Gf(_) => {
            CliError::Input(e.to_string())
        }
    }
}

fn load_field(q: u64) -> Result<Arc<FiniteField>, CliError> {
    FiniteField::with_cardinality(q as u128)
        .map_err(|e| CliError::Input(format!("invalid q = {q}: {e}")))
}

fn load_group(path: &PathBuf) -> Result<FiniteGroup, CliError> {
    Ok(io::load_group(path)?)
}

fn emit(common: &CommonRun, json: &io::ReportJson) -> Result<(), CliError> {
    let rendered = match common.format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Text => io::render_text(json),
    };
    match &common.out {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
    }
}

fn run_decompose(args: DecomposeArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.common.group)?;
    let field = load_field(args.common.q)?;
    let opts = DecomposeOptions {
        root_choice: if args.alt_root { RootChoice::Alternate } else { RootChoice::Canonical },
        verify_dims: if args.verify_dims { VerifyDims::Always } else { VerifyDims::Auto },
        limits: SearchLimits {
            subgroup_ceiling: args.subgroup_ceiling,
            chain_budget: args.chain_budget,
            ..SearchLimits::default()
        },
    };
    let report = match &args.pairs {
        Some(path) => {
            let pairs = io::load_pairs(&g, path)?;
            decomposer::decompose(&g, &field, &pairs, &opts)
        }
        None => decomposer::decompose_by_search(&g, &field, &opts),
    }
    .map_err(map_decompose_err)?;
    emit(&args.common, &io::report_to_json(&report, args.emit_idempotents))?;
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(args: OracleArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.common.group)?;
    let field = load_field(args.common.q)?;
    let report = oracle::oracle_report(&g, &field, args.seed)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    emit(&args.common, &io::oracle_to_json(&report, args.emit_idempotents))?;
    Ok(ExitCode::SUCCESS)
}

fn run_compare(args: CompareArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.common.group)?;
    let field = load_field(args.common.q)?;
    let opts = DecomposeOptions {
        limits: SearchLimits { subgroup_ceiling: args.subgroup_ceiling, ..SearchLimits::default() },
        ..DecomposeOptions::default()
    };
    let report = match &args.pairs {
        Some(path) => {
            let pairs = io::load_pairs(&g, path)?;
            decomposer::decompose(&g, &field, &pairs, &opts)
        }
        None => decomposer::decompose_by_search(&g, &field, &opts),
    }
    .map_err(map_decompose_err)?;
    let diff =
        oracle::compare(&report, &g, &field, args.seed).map_err(|e| CliError::Domain(e.to_string()))?;
    if diff.is_empty() {
        println!(
            "match: {} components, {} over F_{}",
            report.components.len(),
            report.aggregate_string(),
            args.common.q
        );
        Ok(ExitCode::SUCCESS)
    } else {
        println!("MISMATCH:");
        if !diff.only_in_report.is_empty() {
            println!("  idempotents only in decomposer: {:?}", diff.only_in_report);
        }
        if !diff.only_in_oracle.is_empty() {
            println!("  idempotents only in oracle: {:?}", diff.only_in_oracle);
        }
        for ((n, l), a, b) in &diff.param_mismatches {
            println!("  component (n={n}, l={l}): decomposer has {a}, oracle has {b}");
        }
        Ok(ExitCode::from(EXIT_DOMAIN))
    }
}

fn run_pair_check(args: PairCheckArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.group)?;
    let field = load_field(args.q)?;
    let pairs = io::load_pairs(&g, &args.pairs)?;
    let mut all_ok = true;
    for (i, spec) in pairs.iter().enumerate() {
        let check = shoda::is_shoda_pair(&g, &spec.h, &spec.k)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        match check {
            ShodaCheck::Pair(_) => {
                let strong = shoda::is_strong_shoda_pair(&g, &spec.h, &spec.k, &field)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                println!(
                    "pair {i}: |H| = {}, |K| = {}: Shoda pair, strong = {strong}",
                    spec.h.order(),
                    spec.k.order()
                );
            }
            ShodaCheck::NotCyclic => {
                all_ok = false;
                println!("pair {i}: NOT a Shoda pair (H/K not cyclic)");
            }
            ShodaCheck::ConditionIiViolated { witness } => {
                all_ok = false;
                println!(
                    "pair {i}: NOT a Shoda pair (condition (ii) violated by element {witness} = {})",
                    g.element_name(witness)
                );
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_DOMAIN) })
}

fn run_chain_check(args: ChainCheckArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.group)?;
    let field = load_field(args.q)?;
    let pairs = io::load_pairs(&g, &args.pairs)?;
    let mut all_ok = true;
    for (i, spec) in pairs.iter().enumerate() {
        let pair = match shoda::is_shoda_pair(&g, &spec.h, &spec.k)
            .map_err(|e| CliError::Domain(e.to_string()))?
        {
            ShodaCheck::Pair(p) => p,
            other => {
                all_ok = false;
                println!("pair {i}: not a Shoda pair ({other:?})");
                continue;
            }
        };
        let levels = match &spec.chain {
            Some(levels) => levels.clone(),
            None => {
                if pair.h.is_full_group() {
                    vec![g.full_subgroup()]
                } else {
                    vec![pair.h.clone(), g.full_subgroup()]
                }
            }
        };
        let orders: Vec<usize> = levels.iter().map(|l| l.order()).collect();
        match shoda::check_chain(&g, &pair, levels, &field) {
            Ok(chain) => {
                println!(
                    "pair {i}: chain {orders:?} certified ({} steps)",
                    chain.num_steps()
                );
            }
            Err(shoda::ChainError::Certification(fail)) => {
                all_ok = false;
                println!("pair {i}: chain {orders:?} FAILED: {fail}");
            }
            Err(e) => return Err(CliError::Domain(e.to_string())),
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_DOMAIN) })
}

fn run_classes(args: ClassesArgs) -> Result<ExitCode, CliError> {
    match (&args.k, &args.group) {
        (Some(k), None) => {
            let q = args.q.ok_or_else(|| CliError::Input("--q is required with --k".into()))?;
            load_field(q)?;
            let classes = cyclotomic::cyclotomic_classes(*k, q as u128)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let gens = cyclotomic::generator_classes(*k, q as u128)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            match args.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "k": k,
                        "q": q,
                        "classes": classes,
                        "generator_classes": gens,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Text => {
                    println!("q-cyclotomic classes mod {k} for q = {q}:");
                    for c in &classes {
                        let mark = if c.is_generator_class() { " (generator class)" } else { "" };
                        println!("  {:?}{mark}", c.exponents);
                    }
                }
            }
        }
        (None, Some(path)) => {
            let g = load_group(path)?;
            let classes = g.conjugacy_classes();
            match args.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "group": g.description(),
                        "order": g.order(),
                        "num_classes": classes.len(),
                        "classes": classes,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Text => {
                    println!("{} has {} conjugacy classes:", g.description(), classes.len());
                    for c in &classes {
                        println!("  size {:3}  min {}", c.len(), g.element_name(c[0]));
                    }
                }
            }
        }
        _ => return Err(CliError::Input("provide exactly one of --k (with --q) or --group".into())),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_collect(args: CollectArgs) -> Result<ExitCode, CliError> {
    let g = load_group(&args.group)?;
    let pres = g
        .presentation()
        .ok_or_else(|| CliError::Input("collect requires a polycyclic group".into()))?;
    let letters = io::parse_word(&args.word)?;
    let normal = pres.collect(&letters).map_err(|e| CliError::Domain(e.to_string()))?;
    let index = pres.rank(&normal);
    println!("{} -> {} (element {index})", args.word, pres.word_name(&normal));
    Ok(ExitCode::SUCCESS)
}
