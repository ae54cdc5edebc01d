//! The `hopeprep` command line.
//!
//! Every subcommand reads a problem file and writes JSON (or DOT / CSV where
//! asked) to standard output. Errors go to standard error as
//! `{"error": {"kind", "path", "message"}}`.
//!
//! Exit codes: 0 success, 1 error, 2 usage error, 3 some check reported
//! VIOLATED, 4 some check was INCONCLUSIVE and none VIOLATED.

pub mod dot;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use hopeprep_core::aggregation::{aggregate, audit_caution, audit_pareto, planner_set, AggregationMode};
use hopeprep_core::axioms::mixture_alpha_sets;
use hopeprep_core::completion::{complete_with_alpha, recover_alpha, verify_extension};
use hopeprep_core::criteria::partial_order;
use hopeprep_core::mechanism::audit_obvious_manipulability;
use hopeprep_core::rational::parse_rational;
use hopeprep_core::sampling::Verdict;
use hopeprep_core::{act::apply_utility, check_axiom, Act, Axiom, HopeAndPrepare, PreferenceSpec, Relation};
use serde_json::{json, Value};
use thiserror::Error;

use crate::problem::{canonical_text, parse_problem, Problem, ProblemError};
use crate::report::{evaluation, inequalities, r, verdict_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hopeprep", version, about = "Exact multiple-prior decision criteria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct Search {
    /// Number of random trials.
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// Seed of the trial generator.
    #[arg(long, env = "HOPEPREP_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Bewley,
    Hp,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one act under a preference.
    Eval { file: String, spec: String, act: String },
    /// Compare two acts.
    Compare { file: String, spec: String, first: String, second: String },
    /// Strict order over a menu of acts.
    Order {
        file: String,
        spec: String,
        #[arg(required = true)]
        acts: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OrderFormat,
    },
    /// Complete a hope-and-prepare preference to alpha-MEU and test the extension.
    Complete {
        file: String,
        spec: String,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        search: Search,
    },
    /// Recover the alpha-MEU weight from evaluations `ACT=VALUE`.
    Recover {
        file: String,
        spec: String,
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// Aggregate an expert panel and audit Pareto and caution.
    Aggregate {
        file: String,
        panel: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        search: Search,
    },
    /// List obvious manipulations of a direct mechanism.
    AuditMechanism {
        file: String,
        mechanism: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Randomized axiom checks.
    CheckAxioms {
        file: String,
        spec: String,
        /// Comma-separated axiom numbers, 1 to 9; all by default.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<u8>,
        #[command(flatten)]
        search: Search,
    },
    /// Exact weights `a` with `a F + (1 - a) G` above, and below, `H`.
    AlphaSet { file: String, spec: String, f: String, g: String, h: String },
    /// Print the problem file in canonical form.
    Canonicalize { file: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("{message}")]
    Lookup { path: String, message: String },
    #[error("{message}")]
    Argument { path: String, message: String },
    #[error(transparent)]
    Core(#[from] hopeprep_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            Self::Io { .. } => "io",
            Self::Problem(ProblemError::Json(_)) => "json",
            Self::Problem(ProblemError::Invalid { .. }) => "invalid_problem",
            Self::Lookup { .. } => "unknown_name",
            Self::Argument { .. } => "invalid_argument",
            Self::Core(_) => "computation",
        }
    }

    fn path(&self) -> Option<&str> {
        match self {
            Self::Io { path, .. } | Self::Lookup { path, .. } | Self::Argument { path, .. } => Some(path),
            Self::Problem(e) => e.path(),
            Self::Core(_) => None,
        }
    }

    fn message(&self) -> String {
        match self {
            Self::Problem(ProblemError::Invalid { message, .. }) => message.clone(),
            other => other.to_string(),
        }
    }
}

fn error_json(kind: &str, path: Option<&str>, message: &str) -> String {
    json!({"error": {"kind": kind, "path": path, "message": message}}).to_string()
}

/// Runs the command line on `argv` (program name first) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(err, "{}", error_json("usage", None, e.to_string().trim()));
            return EXIT_USAGE;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), e.path(), &e.message()));
            EXIT_ERROR
        }
    }
}

fn load(file: &str) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io {
        path: file.to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_problem(&text)?)
}

fn lookup<'a, T>(map: &'a indexmap::IndexMap<String, T>, section: &str, name: &str) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| CliError::Lookup {
        path: format!("{section}.{name}"),
        message: format!("no entry `{name}` in `{section}`"),
    })
}

fn hope_and_prepare<'a>(p: &'a Problem, name: &str) -> Result<&'a HopeAndPrepare, CliError> {
    match lookup(&p.specs, "specs", name)? {
        PreferenceSpec::HopeAndPrepare(hp) => Ok(hp),
        other => Err(CliError::Argument {
            path: format!("specs.{name}"),
            message: format!("requires a hope_and_prepare preference, found {}", other.kind()),
        }),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn status_code<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> i32 {
    let mut code = EXIT_OK;
    for v in verdicts {
        match v {
            Verdict::Violated(_) => return EXIT_VIOLATED,
            Verdict::Inconclusive => code = EXIT_INCONCLUSIVE,
            Verdict::Pass => {}
        }
    }
    code
}

fn execute(command: Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Eval { file, spec, act } => {
            let p = load(&file)?;
            let s = lookup(&p.specs, "specs", &spec)?;
            let f = lookup(&p.acts, "acts", &act)?;
            let profile = profile_of(s, f)?;
            let v = json!({
                "spec": spec,
                "type": s.kind(),
                "act": act,
                "utility_profile": profile,
                "evaluation": evaluation(s, &profile),
            });
            Ok((pretty(&v), EXIT_OK))
        }
        Command::Compare { file, spec, first, second } => {
            let p = load(&file)?;
            let s = lookup(&p.specs, "specs", &spec)?;
            let (f, g) = (lookup(&p.acts, "acts", &first)?, lookup(&p.acts, "acts", &second)?);
            let c = s.compare(f, g)?;
            let (pf, pg) = (profile_of(s, f)?, profile_of(s, g)?);
            let v = json!({
                "spec": spec,
                "type": s.kind(),
                "first": first,
                "second": second,
                "comparison": c,
                "verdict": verdict_text(c, &first, &second),
                "inequalities": inequalities(s, &pf, &pg),
            });
            Ok((pretty(&v), EXIT_OK))
        }
        Command::Order { file, spec, acts, format } => {
            let p = load(&file)?;
            let s = lookup(&p.specs, "specs", &spec)?;
            let menu = acts
                .iter()
                .map(|a| Ok((a.clone(), lookup(&p.acts, "acts", a)?.clone())))
                .collect::<Result<Vec<(String, Act)>, CliError>>()?;
            let g = partial_order(s, &menu)?;
            let text = match format {
                OrderFormat::Dot => dot::render(&spec, &g),
                OrderFormat::Json => {
                    let names = |pairs: &[(usize, usize)]| {
                        pairs.iter().map(|&(i, j)| json!([g.nodes[i], g.nodes[j]])).collect::<Vec<_>>()
                    };
                    pretty(&json!({
                        "spec": spec,
                        "nodes": g.nodes,
                        "edges": names(&g.edges),
                        "cover": names(&g.cover),
                        "maximal": g.maximal().iter().map(|&i| &g.nodes[i]).collect::<Vec<_>>(),
                    }))
                }
            };
            Ok((text, EXIT_OK))
        }
        Command::Complete { file, spec, alpha, search } => {
            let p = load(&file)?;
            let hp = hope_and_prepare(&p, &spec)?;
            let a = parse_rational(&alpha).map_err(|e| CliError::Argument {
                path: "--alpha".into(),
                message: e.to_string(),
            })?;
            let ext = complete_with_alpha(hp, a)?;
            let report = verify_extension(&ext, hp, search.budget, search.seed)?;
            let code = if report.extends { EXIT_OK } else { EXIT_VIOLATED };
            let v = json!({
                "spec": spec,
                "completion": {"type": "alpha_meu", "alpha": r(ext.alpha())},
                "seed": search.seed,
                "report": report,
            });
            Ok((pretty(&v), code))
        }
        Command::Recover { file, spec, values } => {
            let p = load(&file)?;
            let hp = hope_and_prepare(&p, &spec)?;
            let mut evaluations = Vec::new();
            for (i, item) in values.iter().enumerate() {
                let path = format!("values[{i}]");
                let (name, value) = item.split_once('=').ok_or_else(|| CliError::Argument {
                    path: path.clone(),
                    message: format!("expected ACT=VALUE, found `{item}`"),
                })?;
                let value = parse_rational(value).map_err(|e| CliError::Argument {
                    path,
                    message: e.to_string(),
                })?;
                evaluations.push((lookup(&p.acts, "acts", name)?.clone(), value));
            }
            let recovery = recover_alpha(hp, &evaluations)?;
            Ok((pretty(&json!({"spec": spec, "recovery": recovery})), EXIT_OK))
        }
        Command::Aggregate { file, panel, mode, search } => {
            let p = load(&file)?;
            let experts = lookup(&p.panels, "panels", &panel)?;
            let mode = match mode {
                Mode::Bewley => AggregationMode::Bewley,
                Mode::Hp => AggregationMode::ConcordantHp,
            };
            let planner = aggregate(experts, mode);
            let pareto = audit_pareto(experts, &planner, search.budget, search.seed)?;
            let caution = audit_caution(experts, &planner, search.budget, search.seed)?;
            let code = status_code([&pareto.verdict, &caution.verdict]);
            let v = json!({
                "panel": panel,
                "planner": {"type": planner.kind(), "scenarios": planner_set(&planner).map(|c| c.generators())},
                "seed": search.seed,
                "audits": [pareto, caution],
            });
            Ok((pretty(&v), code))
        }
        Command::AuditMechanism { file, mechanism, format } => {
            let p = load(&file)?;
            let m = lookup(&p.mechanisms, "mechanisms", &mechanism)?;
            let audit = audit_obvious_manipulability(m)?;
            let text = match format {
                TableFormat::Json => pretty(&serde_json::to_value(&audit).expect("audit serializes")),
                TableFormat::Csv => mechanism_csv(&audit),
            };
            Ok((text, EXIT_OK))
        }
        Command::CheckAxioms { file, spec, axioms, search } => {
            let p = load(&file)?;
            let s = lookup(&p.specs, "specs", &spec)?;
            let selected = if axioms.is_empty() {
                Axiom::ALL.to_vec()
            } else {
                axioms
                    .iter()
                    .map(|&k| {
                        Axiom::from_number(k).ok_or_else(|| CliError::Argument {
                            path: "--axioms".into(),
                            message: format!("no axiom numbered {k}; expected 1 to 9"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let reports: Vec<_> = selected
                .iter()
                .map(|&a| check_axiom(s, a, search.budget, search.seed))
                .collect();
            let code = status_code(reports.iter().map(|r| &r.verdict));
            let v = json!({"spec": spec, "type": s.kind(), "seed": search.seed, "reports": reports});
            Ok((pretty(&v), code))
        }
        Command::AlphaSet { file, spec, f, g, h } => {
            let p = load(&file)?;
            let s = lookup(&p.specs, "specs", &spec)?;
            let acts = [&f, &g, &h]
                .iter()
                .map(|a| lookup(&p.acts, "acts", a))
                .collect::<Result<Vec<_>, _>>()?;
            let (above, below) = mixture_alpha_sets(s, acts[0], acts[1], acts[2])?;
            let v = json!({
                "spec": spec,
                "mixture": [f, g],
                "reference": h,
                "above": above,
                "below": below,
                "above_text": above.to_string(),
                "below_text": below.to_string(),
            });
            Ok((pretty(&v), EXIT_OK))
        }
        Command::Canonicalize { file } => Ok((canonical_text(&load(&file)?), EXIT_OK)),
    }
}

fn profile_of(s: &PreferenceSpec, f: &Act) -> Result<hopeprep_core::UtilityProfile, CliError> {
    let profile = apply_utility(s.utility(), f)?;
    if profile.len() != s.n_states() {
        return Err(hopeprep_core::Error::StateMismatch {
            expected: s.n_states(),
            found: profile.len(),
        }
        .into());
    }
    Ok(profile)
}

fn mechanism_csv(audit: &hopeprep_core::mechanism::ManipulabilityAudit) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "agent",
        "true_type",
        "misreport",
        "min_truth",
        "max_truth",
        "min_misreport",
        "max_misreport",
        "worst_case_improves",
        "best_case_improves",
        "obvious_manipulation",
    ])
    .expect("in-memory write");
    for row in &audit.rows {
        w.write_record([
            row.agent.clone(),
            row.true_type.clone(),
            row.misreport.clone(),
            r(&row.min_truth),
            r(&row.max_truth),
            r(&row.min_misreport),
            r(&row.max_misreport),
            row.worst_case_improves.to_string(),
            row.best_case_improves.to_string(),
            row.is_obvious_manipulation().to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}
