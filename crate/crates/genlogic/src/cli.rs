//! Command-line surface: dataset ingestion, probability queries,
//! consequence checks, regime diagnostics, μ sweeps, and regeneration of
//! the bundled reference artifacts against their golden files.
//!
//! Exit codes: 0 success (an undefined probability is a success), 1 usage
//! or parse error, 2 IO error, 3 golden-file mismatch.

use crate::consequence::{self, SubsetFamily};
use crate::dataset::Dataset;
use crate::engine::{self, MuSpec, Probability};
use crate::logic::{scan_atoms, Formula, FormulaSet, Language, ModelSet, DEFAULT_ATOM_CAP};
use crate::oracle;
use crate::rational::{decimal_string, fraction_string, parse_rational, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Zero};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable overriding the default 20-atom cap.
pub const ATOM_CAP_ENV: &str = "GENLOGIC_ATOM_CAP";

#[derive(Parser)]
#[command(
    name = "genlogic",
    version,
    about = "Exact probabilities of propositional formulas derived from data, \
             with classical, empirical, paraconsistent and parapossible \
             consequence checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationKind {
    Classical,
    Empirical,
    Mcs,
    Mps,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReproTarget {
    Table1,
    Table2,
    Fig3,
    Examples,
}

#[derive(Subcommand)]
enum Command {
    /// Read a dataset and print its language, size and model distribution
    Ingest {
        #[arg(short, long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
        #[arg(long, default_value_t = crate::rational::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Conditional probability p(alpha | premises) at a fixed mu
    Query {
        #[arg(short, long)]
        dataset: PathBuf,
        #[arg(short, long)]
        alpha: String,
        /// Premise formula; repeat the flag for several premises
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        /// `1`, `limit`, or a rational/decimal in [0,1]
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
        /// Cross-check the answer against the naive oracle
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = crate::rational::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Decide an entailment relation between premises and a conclusion
    Entail {
        #[arg(long, value_enum)]
        relation: RelationKind,
        #[arg(short, long)]
        alpha: String,
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        /// Required for the empirical and mps relations
        #[arg(short, long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Cardinality-maximal consistent subsets of the premises
    Mcs {
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        #[arg(short, long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Cardinality-maximal possible subsets of the premises under a dataset
    Mps {
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        #[arg(short, long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Which reasoning regime the premises fall into under a dataset
    Regime {
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        #[arg(short, long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// CSV of p(alpha | premises) across a grid of mu values
    Sweep {
        #[arg(short, long)]
        dataset: PathBuf,
        #[arg(short, long)]
        alpha: String,
        #[arg(short, long = "premise")]
        premises: Vec<String>,
        /// start:end:step, each a rational or decimal in [0,1]
        #[arg(long, default_value = "0:1:0.01")]
        grid: String,
        #[arg(long, default_value_t = crate::rational::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Regenerate a bundled artifact and diff it against its golden file
    Reproduce {
        #[arg(value_enum)]
        target: ReproTarget,
        /// Directory holding the bundled datasets and expected outputs
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        /// Rewrite the golden file instead of diffing
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Diff(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Diff(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Diff(m) => m,
        }
    }
}

fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest {
            dataset,
            output,
            digits,
        } => cmd_ingest(&dataset, output, digits),
        Command::Query {
            dataset,
            alpha,
            premises,
            mu,
            output,
            verify,
            digits,
        } => cmd_query(&dataset, &alpha, &premises, &mu, output, verify, digits),
        Command::Entail {
            relation,
            alpha,
            premises,
            dataset,
            output,
        } => cmd_entail(relation, &alpha, &premises, dataset.as_deref(), output),
        Command::Mcs {
            premises,
            dataset,
            output,
        } => cmd_mcs(&premises, dataset.as_deref(), output),
        Command::Mps {
            premises,
            dataset,
            output,
        } => cmd_mps(&premises, &dataset, output),
        Command::Regime {
            premises,
            dataset,
            output,
        } => cmd_regime(&premises, &dataset, output),
        Command::Sweep {
            dataset,
            alpha,
            premises,
            grid,
            digits,
        } => cmd_sweep(&dataset, &alpha, &premises, &grid, digits),
        Command::Reproduce {
            target,
            fixtures,
            bless,
        } => cmd_reproduce(target, &fixtures, bless),
    }
}

fn atom_cap() -> Result<usize, CliError> {
    match std::env::var(ATOM_CAP_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| usage(format!("{ATOM_CAP_ENV}={v} is not a valid atom cap"))),
        Err(_) => Ok(DEFAULT_ATOM_CAP),
    }
}

fn load_dataset(path: &Path) -> Result<Dataset, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Dataset::ingest_with(&text, None, atom_cap()?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// When no dataset fixes the language, infer it from the formulas' atoms in
/// order of first appearance.
fn infer_language(texts: &[&str]) -> Result<Language, CliError> {
    let mut atoms: Vec<String> = Vec::new();
    for text in texts {
        for atom in scan_atoms(text).map_err(usage)? {
            if !atoms.contains(&atom) {
                atoms.push(atom);
            }
        }
    }
    Language::with_cap(atoms, atom_cap()?).map_err(usage)
}

fn parse_alpha_and_premises(
    lang: &Language,
    alpha: &str,
    premises: &[String],
) -> Result<(Formula, FormulaSet), CliError> {
    let alpha = lang
        .parse(alpha)
        .map_err(|e| usage(format!("alpha: {e}")))?;
    let mut delta = FormulaSet::new();
    for p in premises {
        delta.insert(lang.parse(p).map_err(|e| usage(format!("premise `{p}`: {e}")))?);
    }
    Ok((alpha, delta))
}

fn parse_mu(text: &str) -> Result<MuSpec, CliError> {
    match text.trim() {
        "1" => Ok(MuSpec::One),
        "limit" => Ok(MuSpec::LimitToOne),
        other => {
            let r = parse_rational(other).map_err(|e| usage(format!("--mu: {e}")))?;
            MuSpec::exact(r).map_err(|e| usage(format!("--mu: {e}")))
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("--grid `{spec}` is not start:end:step")));
    }
    let start = parse_rational(parts[0]).map_err(|e| usage(format!("--grid start: {e}")))?;
    let end = parse_rational(parts[1]).map_err(|e| usage(format!("--grid end: {e}")))?;
    let step = parse_rational(parts[2]).map_err(|e| usage(format!("--grid step: {e}")))?;
    if start < Rational::zero() || end > Rational::one() || start > end {
        return Err(usage(format!("--grid `{spec}` must stay within [0,1]")));
    }
    if step <= Rational::zero() {
        return Err(usage("--grid step must be positive".to_string()));
    }
    let mut grid = Vec::new();
    let mut mu = start;
    while mu <= end {
        grid.push(mu.clone());
        mu += &step;
    }
    Ok(grid)
}

fn render_probability(p: &Probability, digits: usize) -> String {
    match p {
        Probability::Value(v) => format!("{} ({})", fraction_string(v), decimal_string(v, digits)),
        Probability::Undefined => "undefined".to_string(),
    }
}

fn probability_json(p: &Probability, digits: usize) -> serde_json::Value {
    match p {
        Probability::Value(v) => serde_json::json!({
            "defined": true,
            "value": fraction_string(v),
            "decimal": decimal_string(v, digits),
        }),
        Probability::Undefined => serde_json::json!({ "defined": false }),
    }
}

fn cmd_ingest(path: &Path, output: OutputFormat, digits: usize) -> Result<(), CliError> {
    let ds = load_dataset(path)?;
    let dist = ds.distribution();
    let lang = ds.language();
    match output {
        OutputFormat::Text => {
            println!("atoms: {}", lang.atoms().join(", "));
            println!("K: {}", ds.total());
            for (&index, &count) in ds.tallies() {
                let m = lang.model(index);
                let p = dist.prob(m);
                println!(
                    "{} ({}): count={} p={} ({})",
                    lang.model_label(m),
                    lang.describe_model(m),
                    count,
                    fraction_string(&p),
                    decimal_string(&p, digits)
                );
            }
        }
        OutputFormat::Json => {
            let models: Vec<serde_json::Value> = ds
                .tallies()
                .iter()
                .map(|(&index, &count)| {
                    let m = lang.model(index);
                    let p = dist.prob(m);
                    serde_json::json!({
                        "index": index,
                        "label": lang.model_label(m),
                        "assignment": lang.describe_model(m),
                        "count": count,
                        "p": fraction_string(&p),
                        "decimal": decimal_string(&p, digits),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "atoms": lang.atoms(),
                "k": ds.total(),
                "models": models,
            });
            println!("{doc}");
        }
        OutputFormat::Csv => {
            println!("model,{},count,p", lang.atoms().join(","));
            for (&index, &count) in ds.tallies() {
                let m = lang.model(index);
                let bits: Vec<String> = (0..lang.atom_count())
                    .map(|i| u8::from(m.truth(i)).to_string())
                    .collect();
                let p = dist.prob(m);
                println!(
                    "{},{},{},{}",
                    lang.model_label(m),
                    bits.join(","),
                    count,
                    decimal_string(&p, digits)
                );
            }
        }
    }
    Ok(())
}

/// Recomputes a query along an independent route: the literal joint table
/// at exact μ, or the maximal-possible-subset characterisation for the
/// limit.
fn oracle_check(
    alpha: &Formula,
    delta: &FormulaSet,
    ds: &Dataset,
    mu: &MuSpec,
    reported: &Probability,
) -> String {
    let expected = match mu {
        MuSpec::Exact(r) => match oracle::joint_conditional(alpha, delta, ds, r) {
            Ok(p) => p,
            Err(e) => return format!("skipped ({e})"),
        },
        MuSpec::One => match oracle::joint_conditional(alpha, delta, ds, &Rational::one()) {
            Ok(p) => p,
            Err(e) => return format!("skipped ({e})"),
        },
        MuSpec::LimitToOne => {
            let dist = ds.distribution();
            let lang = dist.language();
            let star = match consequence::mps_models(delta, &dist) {
                Ok(s) => s,
                Err(e) => return format!("skipped ({e})"),
            };
            let alpha_models = lang.formula_models(alpha);
            let num = dist.mass_of(&star.intersect(&alpha_models));
            let den = dist.mass_of(&star);
            Probability::Value(num / den)
        }
    };
    if &expected == reported {
        "agree".to_string()
    } else {
        format!("DISAGREE (oracle says {expected})")
    }
}

fn cmd_query(
    path: &Path,
    alpha_text: &str,
    premises: &[String],
    mu_text: &str,
    output: OutputFormat,
    verify: bool,
    digits: usize,
) -> Result<(), CliError> {
    let ds = load_dataset(path)?;
    let (alpha, delta) = parse_alpha_and_premises(ds.language(), alpha_text, premises)?;
    let mu = parse_mu(mu_text)?;
    let dist = ds.distribution();
    let result = engine::conditional(&alpha, &delta, &dist, &mu);
    let verdict = verify.then(|| oracle_check(&alpha, &delta, &ds, &mu, &result));
    match output {
        OutputFormat::Text => {
            let mut line = render_probability(&result, digits);
            if let Some(v) = &verdict {
                write!(line, " [oracle: {v}]").unwrap();
            }
            println!("{line}");
        }
        OutputFormat::Json => {
            let mut doc = serde_json::json!({
                "alpha": alpha.to_string(),
                "premises": delta.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "mu": mu.to_string(),
                "result": probability_json(&result, digits),
            });
            if let Some(v) = verdict {
                doc["oracle"] = serde_json::Value::String(v);
            }
            println!("{doc}");
        }
        OutputFormat::Csv => {
            println!("alpha,mu,value,decimal");
            let (value, decimal) = match &result {
                Probability::Value(v) => (fraction_string(v), decimal_string(v, digits)),
                Probability::Undefined => ("UNDEF".to_string(), String::new()),
            };
            println!("{},{},{},{}", alpha, mu, value, decimal);
        }
    }
    Ok(())
}

fn require_dataset(path: Option<&Path>, relation: &str) -> Result<Dataset, CliError> {
    match path {
        Some(p) => load_dataset(p),
        None => Err(usage(format!(
            "--relation {relation} needs --dataset for the model distribution"
        ))),
    }
}

fn cmd_entail(
    relation: RelationKind,
    alpha_text: &str,
    premises: &[String],
    dataset: Option<&Path>,
    output: OutputFormat,
) -> Result<(), CliError> {
    // language comes from the dataset when present, otherwise from the atoms
    // mentioned in the formulas
    let ds = match relation {
        RelationKind::Empirical | RelationKind::Mps => Some(require_dataset(
            dataset,
            match relation {
                RelationKind::Empirical => "empirical",
                _ => "mps",
            },
        )?),
        RelationKind::Classical | RelationKind::Mcs => {
            dataset.map(load_dataset).transpose()?
        }
    };
    let lang = match &ds {
        Some(ds) => ds.language().clone(),
        None => {
            let mut texts: Vec<&str> = premises.iter().map(String::as_str).collect();
            texts.push(alpha_text);
            infer_language(&texts)?
        }
    };
    let (alpha, delta) = parse_alpha_and_premises(&lang, alpha_text, premises)?;

    let (holds, witness) = match relation {
        RelationKind::Classical => {
            let holds = consequence::classical_entails(&lang, &delta, &alpha);
            let delta_models = lang.model_set(&delta);
            let witness = if holds {
                format!("premise models {}", delta_models.label_string())
            } else {
                let counter = delta_models.intersect(&lang.formula_models(&alpha).complement());
                format!("countermodels {}", counter.label_string())
            };
            (holds, witness)
        }
        RelationKind::Empirical => {
            let dist = ds.as_ref().unwrap().distribution();
            let holds = consequence::empirical_entails(&delta, &alpha, &dist);
            let possible = dist.possible_models(&lang.model_set(&delta));
            let witness = if holds {
                format!("possible premise models {}", possible.label_string())
            } else {
                let counter =
                    possible.intersect(&lang.formula_models(&alpha).complement());
                format!("possible countermodels {}", counter.label_string())
            };
            (holds, witness)
        }
        RelationKind::Mcs => {
            let family = consequence::mcs(&lang, &delta).map_err(usage)?;
            let holds = family
                .iter()
                .all(|s| consequence::classical_entails(&lang, s, &alpha));
            let witness = match family
                .iter()
                .find(|s| !consequence::classical_entails(&lang, s, &alpha))
            {
                Some(failing) => format!("failing subset {failing}"),
                None => format!("subsets {family}"),
            };
            (holds, witness)
        }
        RelationKind::Mps => {
            let dist = ds.as_ref().unwrap().distribution();
            let family = consequence::mps(&delta, &dist).map_err(usage)?;
            let holds = family
                .iter()
                .all(|s| consequence::empirical_entails(s, &alpha, &dist));
            let witness = match family
                .iter()
                .find(|s| !consequence::empirical_entails(s, &alpha, &dist))
            {
                Some(failing) => format!("failing subset {failing}"),
                None => format!("subsets {family}"),
            };
            (holds, witness)
        }
    };

    match output {
        OutputFormat::Text => {
            println!("{}", if holds { "YES" } else { "NO" });
            println!("{witness}");
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "holds": holds,
                "alpha": alpha.to_string(),
                "premises": delta.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "witness": witness,
            });
            println!("{doc}");
        }
        OutputFormat::Csv => {
            return Err(usage("entail does not support --output csv".to_string()))
        }
    }
    Ok(())
}

fn family_text(
    family: &SubsetFamily,
    per_member_models: &[ModelSet],
    union: &ModelSet,
    possible: bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cardinality: {}", family.common_cardinality());
    let tag = if possible { "possible" } else { "models" };
    for (i, (member, models)) in family.iter().zip(per_member_models).enumerate() {
        let _ = writeln!(out, "S{} = {member}  {tag}={}", i + 1, models.label_string());
    }
    let _ = write!(out, "union: {}", union.label_string());
    out
}

fn family_json(
    family: &SubsetFamily,
    per_member_models: &[ModelSet],
    union: &ModelSet,
) -> serde_json::Value {
    let members: Vec<serde_json::Value> = family
        .iter()
        .zip(per_member_models)
        .map(|(member, models)| {
            serde_json::json!({
                "subset": member.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "models": models.iter_indices().collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "cardinality": family.common_cardinality(),
        "members": members,
        "union_models": union.iter_indices().collect::<Vec<_>>(),
    })
}

fn cmd_mcs(
    premises: &[String],
    dataset: Option<&Path>,
    output: OutputFormat,
) -> Result<(), CliError> {
    let ds = dataset.map(load_dataset).transpose()?;
    let lang = match &ds {
        Some(ds) => ds.language().clone(),
        None => {
            let texts: Vec<&str> = premises.iter().map(String::as_str).collect();
            infer_language(&texts)?
        }
    };
    let (_, delta) = parse_alpha_and_premises(&lang, "true", premises)?;
    let family = consequence::mcs(&lang, &delta).map_err(usage)?;
    let member_models: Vec<ModelSet> = family.iter().map(|s| lang.model_set(s)).collect();
    let union = consequence::mcs_models(&lang, &delta).map_err(usage)?;
    match output {
        OutputFormat::Text => println!("{}", family_text(&family, &member_models, &union, false)),
        OutputFormat::Json => println!("{}", family_json(&family, &member_models, &union)),
        OutputFormat::Csv => return Err(usage("mcs does not support --output csv".to_string())),
    }
    Ok(())
}

fn cmd_mps(premises: &[String], dataset: &Path, output: OutputFormat) -> Result<(), CliError> {
    let ds = load_dataset(dataset)?;
    let dist = ds.distribution();
    let lang = dist.language().clone();
    let (_, delta) = parse_alpha_and_premises(&lang, "true", premises)?;
    let family = consequence::mps(&delta, &dist).map_err(usage)?;
    let member_models: Vec<ModelSet> = family
        .iter()
        .map(|s| dist.possible_models(&lang.model_set(s)))
        .collect();
    let union = consequence::mps_models(&delta, &dist).map_err(usage)?;
    match output {
        OutputFormat::Text => println!("{}", family_text(&family, &member_models, &union, true)),
        OutputFormat::Json => println!("{}", family_json(&family, &member_models, &union)),
        OutputFormat::Csv => return Err(usage("mps does not support --output csv".to_string())),
    }
    Ok(())
}

fn cmd_regime(premises: &[String], dataset: &Path, output: OutputFormat) -> Result<(), CliError> {
    let ds = load_dataset(dataset)?;
    let dist = ds.distribution();
    let (_, delta) = parse_alpha_and_premises(dist.language(), "true", premises)?;
    let report = consequence::classify_regime(&delta, &dist);
    match output {
        OutputFormat::Text => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            println!("delta consistent:          {}", yn(report.delta_consistent));
            println!("delta possible:            {}", yn(report.delta_possible));
            println!("all delta models possible: {}", yn(report.all_models_possible));
            println!("mcs models all possible:   {}", yn(report.mcs_models_possible));
            println!("regime: {}", report.regime);
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "delta_consistent": report.delta_consistent,
                "delta_possible": report.delta_possible,
                "all_models_possible": report.all_models_possible,
                "mcs_models_possible": report.mcs_models_possible,
                "regime": report.regime.as_str(),
            });
            println!("{doc}");
        }
        OutputFormat::Csv => {
            return Err(usage("regime does not support --output csv".to_string()))
        }
    }
    Ok(())
}

fn sweep_csv(
    alpha: &Formula,
    delta: &FormulaSet,
    dist: &crate::dataset::ModelDistribution,
    grid: &[Rational],
    digits: usize,
) -> String {
    let mut out = String::from("mu,probability,limit\n");
    for point in engine::sweep(alpha, delta, dist, grid) {
        let value = match &point.exact {
            Probability::Value(v) => decimal_string(v, digits),
            Probability::Undefined => "UNDEF".to_string(),
        };
        let limit = point
            .limit
            .map(|l| decimal_string(&l, digits))
            .unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", decimal_string(&point.mu, digits), value, limit);
    }
    out
}

fn cmd_sweep(
    path: &Path,
    alpha_text: &str,
    premises: &[String],
    grid_spec: &str,
    digits: usize,
) -> Result<(), CliError> {
    let ds = load_dataset(path)?;
    let (alpha, delta) = parse_alpha_and_premises(ds.language(), alpha_text, premises)?;
    let grid = parse_grid(grid_spec)?;
    let dist = ds.distribution();
    print!("{}", sweep_csv(&alpha, &delta, &dist, &grid, digits));
    Ok(())
}

// ---- reproduction of the bundled reference artifacts ----

fn fixture_dataset(dir: &Path, name: &str) -> Result<Dataset, CliError> {
    load_dataset(&dir.join(name))
}

/// The running-example dataset: distribution and the symbolic marginal of
/// the implication query.
fn render_table1(dir: &Path) -> Result<String, CliError> {
    let ds = fixture_dataset(dir, "table1.csv")?;
    let dist = ds.distribution();
    let lang = dist.language().clone();
    let alpha = lang.parse("rain -> wet").unwrap();
    let poly = engine::marginal_poly(&alpha, &dist);
    let at_one = engine::marginal(&alpha, &dist, &MuSpec::One);
    let at_limit = engine::marginal(&alpha, &dist, &MuSpec::LimitToOne);
    let probs: Vec<String> = (0..4)
        .map(|i| fraction_string(&dist.prob_index(i)))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "p(M) = ({})", probs.join(", "));
    let _ = writeln!(out, "p(rain -> wet) = {poly}");
    let _ = writeln!(
        out,
        "p(rain -> wet) at mu=1: {} ({})",
        fraction_string(&at_one),
        decimal_string(&at_one, 6)
    );
    let _ = writeln!(
        out,
        "p(rain -> wet) at mu->1: {} ({})",
        fraction_string(&at_limit),
        decimal_string(&at_limit, 6)
    );
    Ok(out)
}

/// The three disagreements between generative conditioning at μ=1 and the
/// classical relation, under the zero-m3 distribution.
fn render_table2(dir: &Path) -> Result<String, CliError> {
    let ds = fixture_dataset(dir, "table2.csv")?;
    let dist = ds.distribution();
    let lang = dist.language().clone();
    let rows: [(&str, &[&str]); 3] = [
        ("wet", &["rain", "!rain"]),
        ("wet", &["rain"]),
        ("!rain | wet", &[]),
    ];
    let mut out = String::new();
    for (alpha_text, premise_texts) in rows {
        let alpha = lang.parse(alpha_text).unwrap();
        let delta: FormulaSet = premise_texts
            .iter()
            .map(|t| lang.parse(t).unwrap())
            .collect();
        let p = engine::conditional(&alpha, &delta, &dist, &MuSpec::One);
        let entails = consequence::classical_entails(&lang, &delta, &alpha);
        let p_text = match &p {
            Probability::Value(v) => format!("{} ({})", fraction_string(v), decimal_string(v, 6)),
            Probability::Undefined => "undefined".to_string(),
        };
        let _ = writeln!(
            out,
            "p({alpha_text} given {{{}}}) at mu=1: {p_text} ; classical entailment: {}",
            premise_texts.join(", "),
            if entails { "YES" } else { "NO" }
        );
    }
    Ok(out)
}

/// The solid inconsistency curve: probability against μ with the limit at
/// the right endpoint.
fn render_fig3(dir: &Path) -> Result<String, CliError> {
    let ds = fixture_dataset(dir, "fig3.csv")?;
    let dist = ds.distribution();
    let lang = dist.language().clone();
    let alpha = lang.parse("rain").unwrap();
    let delta: FormulaSet = ["rain", "wet", "!wet"]
        .iter()
        .map(|t| lang.parse(t).unwrap())
        .collect();
    let grid = parse_grid("0:1:0.05")?;
    Ok(sweep_csv(&alpha, &delta, &dist, &grid, 6))
}

/// The subset-family walkthroughs: the conflicting report's MCS, its MPS
/// under heavily skewed data, and the direct contradiction's possible
/// models.
fn render_examples(dir: &Path) -> Result<String, CliError> {
    let skew = fixture_dataset(dir, "examples45.csv")?.distribution();
    let zero_m3 = fixture_dataset(dir, "table2.csv")?.distribution();
    let lang = skew.language().clone();
    let delta: FormulaSet = ["rain", "wet", "rain -> wet", "!wet"]
        .iter()
        .map(|t| lang.parse(t).unwrap())
        .collect();

    let mut out = String::new();
    let mcs = consequence::mcs(&lang, &delta).map_err(usage)?;
    let _ = writeln!(out, "MCS of {delta}:");
    for (i, s) in mcs.iter().enumerate() {
        let _ = writeln!(out, "  S{} = {s}  models={}", i + 1, lang.model_set(s).label_string());
    }
    let _ = writeln!(
        out,
        "  union: {}",
        consequence::mcs_models(&lang, &delta).map_err(usage)?.label_string()
    );

    let mps = consequence::mps(&delta, &skew).map_err(usage)?;
    let _ = writeln!(out, "MPS of {delta} under examples45:");
    for (i, s) in mps.iter().enumerate() {
        let possible = skew.possible_models(&lang.model_set(s));
        let _ = writeln!(out, "  S{} = {s}  possible={}", i + 1, possible.label_string());
    }
    let _ = writeln!(
        out,
        "  union: {}",
        consequence::mps_models(&delta, &skew).map_err(usage)?.label_string()
    );

    for premise_texts in [&["rain", "!rain"][..], &["rain & !rain"][..]] {
        let delta: FormulaSet = premise_texts
            .iter()
            .map(|t| lang.parse(t).unwrap())
            .collect();
        let stars = consequence::mps_models(&delta, &zero_m3).map_err(usage)?;
        let _ = writeln!(
            out,
            "MPS-models of {delta} under table2: {}",
            stars.label_string()
        );
    }
    Ok(out)
}

/// Reports mismatches cell by cell for CSV artifacts and line by line for
/// text artifacts.
fn diff_artifact(name: &str, expected: &str, actual: &str) -> Option<String> {
    if expected == actual {
        return None;
    }
    let mut report = format!("{name}: regenerated output differs from the golden file\n");
    let is_csv = name.ends_with(".csv");
    let expected_lines: Vec<&str> = expected.lines().collect();
    let actual_lines: Vec<&str> = actual.lines().collect();
    let rows = expected_lines.len().max(actual_lines.len());
    for row in 0..rows {
        let e = expected_lines.get(row).copied().unwrap_or("<missing>");
        let a = actual_lines.get(row).copied().unwrap_or("<missing>");
        if e == a {
            continue;
        }
        if is_csv {
            let e_cells: Vec<&str> = e.split(',').collect();
            let a_cells: Vec<&str> = a.split(',').collect();
            let cols = e_cells.len().max(a_cells.len());
            for col in 0..cols {
                let ec = e_cells.get(col).copied().unwrap_or("<missing>");
                let ac = a_cells.get(col).copied().unwrap_or("<missing>");
                if ec != ac {
                    let _ = writeln!(
                        report,
                        "  row {}, col {}: expected `{ec}`, got `{ac}`",
                        row + 1,
                        col + 1
                    );
                }
            }
        } else {
            let _ = writeln!(report, "  line {}: expected `{e}`, got `{a}`", row + 1);
        }
    }
    Some(report.trim_end().to_string())
}

fn cmd_reproduce(target: ReproTarget, fixtures: &Path, bless: bool) -> Result<(), CliError> {
    let (artifact, expected_name) = match target {
        ReproTarget::Table1 => (render_table1(fixtures)?, "table1.txt"),
        ReproTarget::Table2 => (render_table2(fixtures)?, "table2.txt"),
        ReproTarget::Fig3 => (render_fig3(fixtures)?, "fig3.csv"),
        ReproTarget::Examples => (render_examples(fixtures)?, "examples.txt"),
    };
    let expected_path = fixtures.join("expected").join(expected_name);
    if bless {
        std::fs::create_dir_all(expected_path.parent().unwrap())
            .map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(&expected_path, &artifact)
            .map_err(|e| CliError::Io(format!("{}: {e}", expected_path.display())))?;
        println!("wrote {}", expected_path.display());
        return Ok(());
    }
    let expected = std::fs::read_to_string(&expected_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", expected_path.display())))?;
    print!("{artifact}");
    match diff_artifact(expected_name, &expected, &artifact) {
        None => Ok(()),
        Some(report) => Err(CliError::Diff(report)),
    }
}
