//! Command-line front end. Exit codes: 0 success, 1 bad input or failed
//! validation, 2 usage error, 3 internal invariant or self-test failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::axioms::{check_operator, check_relation};
use crate::duality::relation_from_operator;
use crate::engine::{distributed_knowledge_closed_form, simulate, GroupModel, DEFAULT_MAX_ROUNDS};
use crate::error::Error;
use crate::io::render::{
    axiom_table, class_summary, min_sets_table, operator_table, relation_report_table,
    relation_table, render_closed_form, render_fields, render_simulation, verification_table,
};
use crate::io::{parse_model, parse_model_unvalidated, write_model_as, BodyForm, Format};
use crate::model::{operator_union, KnowledgeOperator, PossibilityRelation};
use crate::oracle::{random_model, verify_propositions, GeneratorConfig, TargetClass, VerifyOptions};
use crate::traces::{left_trace, minimal_sets, symmetric_part, GroupRelations};
use crate::types::{apply_pipeline, apply_revision_type, RevisionType, Stage};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "groupknow", version, about = "Knowledge operators, revision types and distributed knowledge")]
struct Cli {
    /// Output layout.
    #[arg(long, global = true, default_value = "pretty", value_parser = parse_format)]
    format: Format,

    /// Skip the check that every agent's operator lies in K1.
    #[arg(long, global = true)]
    no_validate: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Operators,
    Relations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceKind {
    /// Each relation with its left trace.
    Trace,
    /// The relations and their left n-ary trace.
    Nary,
    /// Left n-ary trace and its symmetric part.
    Sym,
    /// Minimal contour sets per state.
    Min,
    /// Intersection, traces and symmetric parts together.
    Group,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Axiom and class report for every agent.
    Check { file: PathBuf },
    /// Rewrite the model with relation or operator blocks.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Revise one agent's operator, or the union of several.
    Revise {
        file: PathBuf,
        /// Comma-separated agents; all agents when omitted.
        #[arg(long, value_delimiter = ',')]
        agent: Vec<String>,
        /// Revision type: d, +d, d+d, pmd or dpmd.
        #[arg(long = "type", conflicts_with = "pipeline", value_parser = parse_type)]
        revision_type: Option<RevisionType>,
        /// Comma-separated stages: d, +, pm, -.
        #[arg(long, value_delimiter = ',', value_parser = parse_stage)]
        pipeline: Vec<Stage>,
    },
    /// Traces, symmetric parts and minimal sets of the agents' relations.
    Trace {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        agents: Vec<String>,
        #[arg(long, value_enum, default_value = "nary")]
        kind: TraceKind,
    },
    /// Distributed knowledge by closed form.
    Dk { file: PathBuf },
    /// Round-by-round communication, compared against the closed form.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Run every structural check on a model file or on generated models.
    Selftest {
        file: Option<PathBuf>,
        /// Generate models instead of reading a file.
        #[arg(long)]
        random: bool,
        /// Inclusive seed range, `a..b`.
        #[arg(long, default_value = "1..20", value_parser = parse_seeds)]
        seeds: RangeInclusive<u64>,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 3)]
        agents: usize,
        #[arg(long, default_value = "k1", value_parser = parse_class)]
        class: TargetClass,
        /// Only the model's own type profile, not all of them.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_type(s: &str) -> Result<RevisionType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_class(s: &str) -> Result<TargetClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_seeds(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad seed `{a}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad seed `{b}`"))?;
    if a > b {
        return Err(format!("empty seed range `{s}`"));
    }
    Ok(a..=b)
}

/// Error with its exit code already decided.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) => EXIT_USAGE,
            Error::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

/// Output and exit code of a successful or self-test-failing run.
struct Outcome {
    stdout: String,
    code: i32,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

/// Parses `args` (program name first), runs the command, prints results to
/// stdout and diagnostics to stderr, and returns the exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load(cli: &Cli, path: &PathBuf) -> Result<GroupModel, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let parsed = if cli.no_validate {
        parse_model_unvalidated(&text)
    } else {
        parse_model(&text)
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn require_group(model: &GroupModel) -> Result<(), Failure> {
    if model.agents().len() < 2 {
        return Err(Failure::input(format!(
            "distributed knowledge needs at least two agents, model has {}",
            model.agents().len()
        )));
    }
    Ok(())
}

fn select_agents(model: &GroupModel, names: &[String]) -> Result<Vec<usize>, Failure> {
    if names.is_empty() {
        return Ok((0..model.agents().len()).collect());
    }
    names
        .iter()
        .map(|n| {
            model
                .agents()
                .iter()
                .position(|a| &a.name == n)
                .ok_or_else(|| Failure::usage(format!("no agent named `{n}`")))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Check { file } => {
            let model = load(cli, file)?;
            Ok(check(&model, format).into())
        }
        Command::Convert { file, to } => {
            let model = load(cli, file)?;
            let form = match to {
                ConvertTarget::Operators => BodyForm::Operators,
                ConvertTarget::Relations => BodyForm::Relations,
            };
            write_model_as(&model, form)
                .map(Outcome::from)
                .map_err(|agent| {
                    Failure::input(format!(
                        "agent {agent} is not distributive with necessitation and has no relation form"
                    ))
                })
        }
        Command::Revise { file, agent, revision_type, pipeline } => {
            let model = load(cli, file)?;
            let picked = select_agents(&model, agent)?;
            let ops: Vec<KnowledgeOperator> =
                picked.iter().map(|&i| model.agents()[i].operator.clone()).collect();
            let base = operator_union(&ops)?;
            let base_label = if picked.len() == 1 {
                format!("K_{}", model.agents()[picked[0]].name)
            } else {
                let names: Vec<&str> = picked.iter().map(|&i| model.agents()[i].name.as_str()).collect();
                format!("∪K[{}]", names.join(","))
            };
            let (revised, label) = match (revision_type, pipeline.is_empty()) {
                (Some(t), _) => (apply_revision_type(&base, *t)?, format!("({base_label})^{t}")),
                (None, false) => {
                    let stages: Vec<&str> = pipeline.iter().map(|s| s.symbol()).collect();
                    (apply_pipeline(&base, pipeline)?, format!("({base_label})^({})", stages.join("")))
                }
                (None, true) => return Err(Failure::usage("revise needs --type or --pipeline")),
            };
            let table = operator_table(model.space(), &[(base_label, &base), (label, &revised)]);
            Ok(table.render(format).into())
        }
        Command::Trace { file, agents, kind } => {
            let model = load(cli, file)?;
            let picked = select_agents(&model, agents)?;
            Ok(trace(&model, &picked, *kind, format)?.into())
        }
        Command::Dk { file } => {
            let model = load(cli, file)?;
            require_group(&model)?;
            let closed = distributed_knowledge_closed_form(&model)?;
            Ok(render_closed_form(&model, &closed, format).into())
        }
        Command::Simulate { file, max_rounds } => {
            if *max_rounds == 0 {
                return Err(Failure::usage("--max-rounds must be positive"));
            }
            let model = load(cli, file)?;
            require_group(&model)?;
            let trace = simulate(&model, *max_rounds)?;
            let closed = distributed_knowledge_closed_form(&model)?;
            let out = render_simulation(&model, &trace, &closed, format);
            if trace.dk != closed.dk {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("simulation disagrees with closed form\n{out}"),
                });
            }
            Ok(out.into())
        }
        Command::Selftest { file, random, seeds, states, agents, class, quick } => {
            let options = VerifyOptions { exhaustive_profiles: !quick };
            match (file, random) {
                (Some(path), false) => {
                    let model = load(cli, path)?;
                    let report = verify_propositions(&model, options);
                    let code = if report.all_passed() { EXIT_OK } else { EXIT_INTERNAL };
                    Ok(Outcome { stdout: verification_table(&report).render(format), code })
                }
                (None, true) => selftest_random(seeds.clone(), *states, *agents, *class, options, format),
                (Some(_), true) => Err(Failure::usage("selftest takes a file or --random, not both")),
                (None, false) => Err(Failure::usage("selftest needs a model file or --random")),
            }
        }
    }
}

fn check(model: &GroupModel, format: Format) -> String {
    let space = model.space();
    let mut out = String::new();
    for (i, agent) in model.agents().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let report = check_operator(&agent.operator);
        out.push_str(&render_fields(
            &[
                ("agent", agent.name.clone()),
                ("type", agent.revision_type.to_string()),
                ("classes", class_summary(&report)),
            ],
            format,
        ));
        out.push_str(&axiom_table(space, &report).render(format));
        if let Ok(p) = relation_from_operator(&agent.operator) {
            out.push_str(&relation_report_table(space, &check_relation(&p)).render(format));
        }
    }
    out
}

fn trace(model: &GroupModel, picked: &[usize], kind: TraceKind, format: Format) -> Result<String, Failure> {
    let space = model.space();
    let mut names = Vec::new();
    let mut rels = Vec::new();
    for &i in picked {
        let a = &model.agents()[i];
        let p = relation_from_operator(&a.operator)
            .map_err(|e| Failure::input(format!("agent {}: {e}", a.name)))?;
        names.push(a.name.clone());
        rels.push(p);
    }
    let group = GroupRelations::of(&rels)?;
    let mut columns: Vec<(String, PossibilityRelation)> = names
        .iter()
        .zip(&rels)
        .map(|(n, p)| (format!("P_{n}"), p.clone()))
        .collect();
    match kind {
        TraceKind::Trace => {
            columns.extend(names.iter().zip(&rels).map(|(n, p)| (format!("T_{n}"), left_trace(p))));
        }
        TraceKind::Nary => columns.push(("T_P".into(), group.nary_trace.clone())),
        TraceKind::Sym => {
            columns.push(("T_P".into(), group.nary_trace.clone()));
            columns.push(("E_P".into(), symmetric_part(&group.nary_trace)));
        }
        TraceKind::Min => {
            return Ok(min_sets_table(space, &minimal_sets(&rels)?).render(format));
        }
        TraceKind::Group => {
            columns.extend([
                ("∩P".to_string(), group.intersection.clone()),
                ("T_∩P".to_string(), group.intersection_trace.clone()),
                ("E_∩P".to_string(), group.intersection_symmetric.clone()),
                ("T_P".to_string(), group.nary_trace.clone()),
                ("E_P".to_string(), group.nary_symmetric.clone()),
            ]);
        }
    }
    let borrowed: Vec<(String, &PossibilityRelation)> = columns.iter().map(|(n, p)| (n.clone(), p)).collect();
    Ok(relation_table(space, &borrowed).render(format))
}

fn selftest_random(
    seeds: RangeInclusive<u64>,
    states: usize,
    agents: usize,
    class: TargetClass,
    options: VerifyOptions,
    format: Format,
) -> Result<Outcome, Failure> {
    let mut out = String::new();
    let mut failed_models = 0;
    let mut summary = crate::io::Table::new(["seed", "passed", "failed", "skipped"]);
    let mut details = String::new();
    for seed in seeds {
        let model = random_model(&GeneratorConfig::new(seed, states, agents, class))?;
        let report = verify_propositions(&model, options);
        let failed: Vec<_> = report.failures().collect();
        let skipped = report.checks.len() - report.count_passed() - failed.len();
        summary.push([
            seed.to_string(),
            report.count_passed().to_string(),
            failed.len().to_string(),
            skipped.to_string(),
        ]);
        if !failed.is_empty() {
            failed_models += 1;
            for f in failed {
                writeln!(details, "seed {seed}: {}: {}", f.name, f.outcome).unwrap();
            }
        }
    }
    out.push_str(&summary.render(format));
    out.push_str(&details);
    let code = if failed_models == 0 { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Outcome { stdout: out, code })
}
