//! `reid`: exact twisted-conjugacy computations from JSON specs, with
//! deterministic JSON output.
//!
//! Exit codes: 0 success / all checks pass, 1 a verification check failed,
//! 2 invalid input.

mod spec;

use clap::{Parser, Subcommand};
use reidemeister::abelian::{
    fin_fix_check, fixed_abelian, reidemeister_abelian, tbft_witness_abelian, torsion_decompose,
    Cardinal,
};
use reidemeister::characters::{character_table, class_permutation, fixed_character_count};
use reidemeister::corpus::CorpusConfig;
use reidemeister::pipeline::{class_coset_union, run_corpus};
use reidemeister::prufer::{
    fin_fix_check_quasicyclic, quasicyclic_fixed_checked, quasicyclic_quotient, quasicyclic_r,
    QuotientDichotomy,
};
use reidemeister::twisted::{
    jabara_check, reidemeister_classes, semidirect_coset_oracle, sigma_witness, verify_shift,
};
use reidemeister::{Error, Limits};
use serde::Serialize;
use spec::GroupSpecFile;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "reid",
    about = "Exact twisted conjugacy classes, character tables, and abelian endomorphism invariants",
    version
)]
struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Group closure cap (also via REID_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Base truncation exponent for quasicyclic checks (also via
    /// REID_TRUNCATION_LEVEL).
    #[arg(long, global = true)]
    truncation_level: Option<u32>,
    /// Seed for automorphism sampling in corpus runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a group spec: order, classes, derived length, rank.
    Info { spec: PathBuf },
    /// Twisted-conjugacy report with all internal cross-checks.
    Twisted { spec: PathBuf },
    /// Character table of a permutation-group spec.
    Chartable { spec: PathBuf },
    /// Full abelian lattice report: shape, classes, fixed subgroup, witness.
    Abelian { spec: PathBuf },
    /// Full quasicyclic report: fixed count, truncation levels, dichotomy.
    Prufer { spec: PathBuf },
    /// Run every lemma check over a corpus config (built-in when omitted).
    Corpus { config: Option<PathBuf> },
}

fn limits_from(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Some(cap) = env_usize("REID_CAP") {
        limits.group_cap = cap;
    }
    if let Some(level) = env_usize("REID_TRUNCATION_LEVEL") {
        limits.truncation_level = level as u32;
    }
    if let Some(cap) = cli.cap {
        limits.group_cap = cap;
    }
    if let Some(level) = cli.truncation_level {
        limits.truncation_level = level;
    }
    limits
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.parse().ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<(), Error> {
    let text = if cli.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| Error::Internal(e.to_string()))?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let limits = limits_from(cli);
    match &cli.command {
        Command::Info { spec } => cmd_info(cli, &limits, spec),
        Command::Twisted { spec } => cmd_twisted(cli, &limits, spec),
        Command::Chartable { spec } => cmd_chartable(cli, &limits, spec),
        Command::Abelian { spec } => cmd_abelian(cli, spec),
        Command::Prufer { spec } => cmd_prufer(cli, &limits, spec),
        Command::Corpus { config } => cmd_corpus(cli, &limits, config.as_deref()),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum InfoReport {
    Perm {
        kind: &'static str,
        degree: usize,
        order: usize,
        classes: usize,
        derived_length: Option<usize>,
        soluble: bool,
        abelian: bool,
        exponent: u64,
        rank: Option<usize>,
        center_order: usize,
    },
    Abelian {
        kind: &'static str,
        free_rank: usize,
        invariant_factors: Vec<String>,
        order: Cardinal,
        automorphism: bool,
    },
    Prufer {
        kind: &'static str,
        p: u64,
        d: usize,
        automorphism: bool,
    },
}

fn cmd_info(cli: &Cli, limits: &Limits, path: &std::path::Path) -> Result<u8, Error> {
    let report = match spec::load(path)? {
        GroupSpecFile::Perm {
            degree,
            generators,
            automorphism,
        } => {
            let case = spec::build_perm_case(degree, &generators, &automorphism, limits)?;
            let series = case.group.derived_series(limits)?;
            InfoReport::Perm {
                kind: "perm",
                degree,
                order: case.group.order(),
                classes: case.group.class_count(),
                derived_length: series.derived_length,
                soluble: series.soluble,
                abelian: case.group.is_abelian(),
                exponent: case.group.exponent(),
                rank: case.group.rank(limits).ok(),
                center_order: case.group.center().len(),
            }
        }
        GroupSpecFile::Abelian {
            ambient_rank,
            relations,
            matrix,
        } => {
            let endo = spec::build_abelian_endo(ambient_rank, &relations, &matrix)?;
            let shape = endo.group.shape();
            InfoReport::Abelian {
                kind: "abelian",
                free_rank: shape.free_rank,
                invariant_factors: shape
                    .invariant_factors
                    .iter()
                    .map(|f| f.to_string())
                    .collect(),
                order: shape.order(),
                automorphism: endo.is_automorphism(),
            }
        }
        GroupSpecFile::Prufer { p, d, matrix, .. } => {
            let endo = spec::build_prufer_endo(p, d, &matrix)?;
            InfoReport::Prufer {
                kind: "prufer",
                p,
                d,
                automorphism: endo.is_automorphism(),
            }
        }
    };
    emit(cli, &report)?;
    Ok(0)
}

#[derive(Serialize)]
struct PermTwistedReport {
    kind: &'static str,
    order: usize,
    aut_order: u64,
    r: usize,
    class_sizes: Vec<usize>,
    fixed: usize,
    oracle: usize,
    oracle_ok: bool,
    tbft_fixed: usize,
    tbft_ok: bool,
    sigma_degree: usize,
    sigma_kernel_order: usize,
    sigma_ok: bool,
    coset_union_ok: bool,
    shift_ok: bool,
    jabara_ok: bool,
}

#[derive(Serialize)]
struct AbelianTwistedReport {
    kind: &'static str,
    automorphism: bool,
    r: Cardinal,
    fixed_free_rank: usize,
    fixed_invariant_factors: Vec<String>,
    witness_order: Option<String>,
    witness_ok: Option<bool>,
    fin_fix_ok: bool,
}

#[derive(Serialize)]
struct PruferTwistedReport {
    kind: &'static str,
    automorphism: bool,
    r: Cardinal,
    fixed: Cardinal,
    levels: std::collections::BTreeMap<u32, String>,
    levels_ok: bool,
}

fn cmd_twisted(cli: &Cli, limits: &Limits, path: &std::path::Path) -> Result<u8, Error> {
    match spec::load(path)? {
        GroupSpecFile::Perm {
            degree,
            generators,
            automorphism,
        } => {
            let case = spec::build_perm_case(degree, &generators, &automorphism, limits)?;
            let group = &case.group;
            let phi = &case.phi;
            let partition = reidemeister_classes(group, phi);
            let class_sizes: Vec<usize> = partition.classes.iter().map(Vec::len).collect();
            let oracle = semidirect_coset_oracle(group, phi, limits)?;
            let table = character_table(group, limits)?;
            let tbft_fixed = fixed_character_count(&table, &class_permutation(group, phi));
            let witness = sigma_witness(group, phi)?;
            let order = group.order();
            let stride = if order <= 24 { 1 } else { (order / 16).max(1) };
            let shift_ok = (0..order as u32)
                .step_by(stride)
                .all(|x| verify_shift(group, phi, x));
            let report = PermTwistedReport {
                kind: "perm",
                order,
                aut_order: phi.order(),
                r: partition.r(),
                fixed: phi.fixed_subgroup().order(),
                oracle,
                oracle_ok: oracle == partition.r(),
                tbft_fixed,
                tbft_ok: tbft_fixed == partition.r(),
                sigma_degree: witness.action_degree,
                sigma_kernel_order: witness.kernel.order(),
                sigma_ok: witness.bijection_ok,
                coset_union_ok: class_coset_union(group, phi, &witness.kernel),
                shift_ok,
                jabara_ok: jabara_check(group, phi),
                class_sizes,
            };
            let all_ok = report.oracle_ok
                && report.tbft_ok
                && report.sigma_ok
                && report.coset_union_ok
                && report.shift_ok
                && report.jabara_ok;
            emit(cli, &report)?;
            Ok(if all_ok { 0 } else { 1 })
        }
        GroupSpecFile::Abelian {
            ambient_rank,
            relations,
            matrix,
        } => {
            let endo = spec::build_abelian_endo(ambient_rank, &relations, &matrix)?;
            let r = reidemeister_abelian(&endo);
            let fixed = fixed_abelian(&endo);
            let fin_fix = fin_fix_check(&endo);
            let (witness_order, witness_ok) = match &r {
                Cardinal::Finite(_) => {
                    let witness = tbft_witness_abelian(&endo)?;
                    (Some(witness.order.to_string()), Some(witness.ok()))
                }
                Cardinal::Infinite => (None, None),
            };
            let report = AbelianTwistedReport {
                kind: "abelian",
                automorphism: endo.is_automorphism(),
                r,
                fixed_free_rank: fixed.free_rank,
                fixed_invariant_factors: fixed
                    .invariant_factors
                    .iter()
                    .map(|f| f.to_string())
                    .collect(),
                witness_order,
                witness_ok,
                fin_fix_ok: fin_fix.implication_ok,
            };
            let all_ok = report.witness_ok.unwrap_or(true) && report.fin_fix_ok;
            emit(cli, &report)?;
            Ok(if all_ok { 0 } else { 1 })
        }
        GroupSpecFile::Prufer { p, d, matrix, .. } => {
            let endo = spec::build_prufer_endo(p, d, &matrix)?;
            let checked = quasicyclic_fixed_checked(&endo, limits.truncation_level);
            let report = PruferTwistedReport {
                kind: "prufer",
                automorphism: endo.is_automorphism(),
                r: quasicyclic_r(&endo),
                fixed: checked.fixed,
                levels: checked
                    .levels
                    .iter()
                    .map(|(k, v)| (*k, v.to_string()))
                    .collect(),
                levels_ok: checked.stable_ok,
            };
            let all_ok = report.levels_ok;
            emit(cli, &report)?;
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct ChartableReport {
    #[serde(flatten)]
    table: reidemeister::characters::ModPCharacterTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_rows: Option<usize>,
}

fn cmd_chartable(cli: &Cli, limits: &Limits, path: &std::path::Path) -> Result<u8, Error> {
    match spec::load(path)? {
        GroupSpecFile::Perm {
            degree,
            generators,
            automorphism,
        } => {
            let case = spec::build_perm_case(degree, &generators, &automorphism, limits)?;
            let table = character_table(&case.group, limits)?;
            let fixed_rows = case.explicit_automorphism.then(|| {
                fixed_character_count(&table, &class_permutation(&case.group, &case.phi))
            });
            emit(cli, &ChartableReport { table, fixed_rows })?;
            Ok(0)
        }
        _ => Err(Error::Parse(
            "chartable expects a permutation-group spec".into(),
        )),
    }
}

#[derive(Serialize)]
struct AbelianReport {
    shape_free_rank: usize,
    shape_invariant_factors: Vec<String>,
    automorphism: bool,
    r: Cardinal,
    fixed_free_rank: usize,
    fixed_invariant_factors: Vec<String>,
    torsion: reidemeister::abelian::TorsionDecomposition,
    witness_order: Option<String>,
    witness_ok: Option<bool>,
    fin_fix_ok: bool,
}

fn cmd_abelian(cli: &Cli, path: &std::path::Path) -> Result<u8, Error> {
    let GroupSpecFile::Abelian {
        ambient_rank,
        relations,
        matrix,
    } = spec::load(path)?
    else {
        return Err(Error::Parse("abelian expects an abelian spec".into()));
    };
    let endo = spec::build_abelian_endo(ambient_rank, &relations, &matrix)?;
    let shape = endo.group.shape();
    let fixed = fixed_abelian(&endo);
    let r = reidemeister_abelian(&endo);
    let fin_fix = fin_fix_check(&endo);
    let (witness_order, witness_ok) = match &r {
        Cardinal::Finite(_) => {
            let witness = tbft_witness_abelian(&endo)?;
            (Some(witness.order.to_string()), Some(witness.ok()))
        }
        Cardinal::Infinite => (None, None),
    };
    let report = AbelianReport {
        shape_free_rank: shape.free_rank,
        shape_invariant_factors: shape.invariant_factors.iter().map(|f| f.to_string()).collect(),
        automorphism: endo.is_automorphism(),
        r,
        fixed_free_rank: fixed.free_rank,
        fixed_invariant_factors: fixed.invariant_factors.iter().map(|f| f.to_string()).collect(),
        torsion: torsion_decompose(&endo.group),
        witness_order,
        witness_ok,
        fin_fix_ok: fin_fix.implication_ok,
    };
    let all_ok = report.witness_ok.unwrap_or(true) && report.fin_fix_ok;
    emit(cli, &report)?;
    Ok(if all_ok { 0 } else { 1 })
}

#[derive(Serialize)]
#[serde(untagged)]
enum DichotomyReport {
    Finite { form: &'static str, order: String },
    Quotient { form: &'static str, dimension: usize },
}

#[derive(Serialize)]
struct PruferReport {
    p: u64,
    d: usize,
    automorphism: bool,
    r: Cardinal,
    fixed: Cardinal,
    levels: std::collections::BTreeMap<u32, String>,
    levels_ok: bool,
    fin_fix_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    subgroup: Option<DichotomyReport>,
}

fn cmd_prufer(cli: &Cli, limits: &Limits, path: &std::path::Path) -> Result<u8, Error> {
    let GroupSpecFile::Prufer {
        p,
        d,
        matrix,
        subgroup,
    } = spec::load(path)?
    else {
        return Err(Error::Parse("prufer expects a prufer spec".into()));
    };
    let endo = spec::build_prufer_endo(p, d, &matrix)?;
    let checked = quasicyclic_fixed_checked(&endo, limits.truncation_level);
    let dichotomy = match &subgroup {
        None => None,
        Some(form) => Some(match quasicyclic_quotient(p, d, form)? {
            QuotientDichotomy::FiniteSubgroup { order } => DichotomyReport::Finite {
                form: "finite",
                order: order.to_string(),
            },
            QuotientDichotomy::QuasicyclicQuotient { dimension } => DichotomyReport::Quotient {
                form: "quotient",
                dimension,
            },
        }),
    };
    let fin_fix = fin_fix_check_quasicyclic(&endo);
    let report = PruferReport {
        p,
        d,
        automorphism: endo.is_automorphism(),
        r: quasicyclic_r(&endo),
        fixed: checked.fixed,
        levels: checked
            .levels
            .iter()
            .map(|(k, v)| (*k, v.to_string()))
            .collect(),
        levels_ok: checked.stable_ok,
        fin_fix_ok: fin_fix.implication_ok,
        subgroup: dichotomy,
    };
    let all_ok = report.levels_ok && report.fin_fix_ok;
    emit(cli, &report)?;
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_corpus(cli: &Cli, limits: &Limits, path: Option<&std::path::Path>) -> Result<u8, Error> {
    let mut config = match path {
        None => CorpusConfig::builtin(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad config: {e}")))?
        }
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.limits.group_cap = limits.group_cap;
    let reports = run_corpus(&config);
    let all_ok = reports.iter().all(|r| r.all_ok());
    emit(cli, &reports)?;
    if cli.out.is_some() {
        eprintln!(
            "corpus: {} cases, {}",
            reports.len(),
            if all_ok { "all passed" } else { "FAILURES" }
        );
    }
    Ok(if all_ok { 0 } else { 1 })
}
