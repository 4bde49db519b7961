//! Deterministic text output: aligned tables or tab-separated values.

use std::fmt;
use std::str::FromStr;

use crate::axioms::{AxiomReport, RelationReport};
use crate::engine::{ClosedForm, Dispatch, GroupModel, SimulationTrace};
use crate::error::Error;
use crate::model::{Event, KnowledgeOperator, PossibilityRelation, StateSpace};
use crate::oracle::{CheckOutcome, VerificationReport};
use crate::traces::MinimalSetFamily;
use crate::types::RevisionType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Pretty,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "pretty" => Ok(Format::Pretty),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::Argument(format!("unknown format `{other}` (expected pretty or tsv)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Pretty => "pretty",
            Format::Tsv => "tsv",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = String::new();
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    out.push_str(&row.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Pretty => {
                let width = |s: &String| s.chars().count();
                let mut widths: Vec<usize> = self.header.iter().map(width).collect();
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(width(cell));
                    }
                }
                let line = |row: &[String]| -> String {
                    let cells: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - width(c))))
                        .collect();
                    format!("{}\n", cells.join(" | ").trim_end())
                };
                let mut out = line(&self.header);
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                out.push_str(&rule.join("-+-"));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&line(row));
                }
                out
            }
        }
    }
}

/// `key: value` lines in pretty mode, `key<TAB>value` in TSV.
pub fn render_fields(fields: &[(&str, String)], format: Format) -> String {
    fields
        .iter()
        .map(|(k, v)| match format {
            Format::Pretty => format!("{k}: {v}\n"),
            Format::Tsv => format!("{k}\t{v}\n"),
        })
        .collect()
}

/// One row per event in table order, one column per operator.
pub fn operator_table(space: &StateSpace, columns: &[(String, &KnowledgeOperator)]) -> Table {
    let mut t = Table::new(std::iter::once("A".to_string()).chain(columns.iter().map(|(n, _)| n.clone())));
    for a in space.events_table_order() {
        let mut row = vec![space.format_event(a)];
        row.extend(columns.iter().map(|(_, k)| space.format_event(k.apply(a))));
        t.push(row);
    }
    t
}

/// One row per state, one column per relation.
pub fn relation_table(space: &StateSpace, columns: &[(String, &PossibilityRelation)]) -> Table {
    let mut t = Table::new(std::iter::once("ω".to_string()).chain(columns.iter().map(|(n, _)| n.clone())));
    for w in 0..space.len() {
        let mut row = vec![space.name(w).to_string()];
        row.extend(columns.iter().map(|(_, p)| space.format_event(p.contour(w))));
        t.push(row);
    }
    t
}

fn format_family(space: &StateSpace, events: &[Event]) -> String {
    let inner: Vec<String> = events.iter().map(|&e| space.format_event(e)).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn min_sets_table(space: &StateSpace, family: &MinimalSetFamily) -> Table {
    let mut t = Table::new(["ω", "Min(ω)"]);
    for w in 0..space.len() {
        t.push([space.name(w).to_string(), format_family(space, family.at(w))]);
    }
    t
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn axiom_table(space: &StateSpace, report: &AxiomReport) -> Table {
    use crate::axioms::Axiom::*;
    let mut t = Table::new(["axiom", "holds", "witness"]);
    for axiom in [
        Distributivity,
        Necessitation,
        Veridicality,
        PositiveIntrospection,
        NegativeIntrospection,
        Monotonicity,
    ] {
        let w = report.witness(axiom);
        t.push([
            axiom.to_string(),
            yes_no(w.is_none()).to_string(),
            w.map_or_else(|| "-".to_string(), |w| w.format(space)),
        ]);
    }
    t
}

pub fn class_summary(report: &AxiomReport) -> String {
    let c = report.classes;
    let names: Vec<&str> = [
        (c.veridical, "Kv"),
        (c.k0, "K0"),
        (c.k1, "K1"),
        (c.k2, "K2"),
        (c.k3, "K3"),
    ]
    .iter()
    .filter(|(b, _)| *b)
    .map(|(_, n)| *n)
    .collect();
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join(" ")
    }
}

pub fn relation_report_table(space: &StateSpace, report: &RelationReport) -> Table {
    let mut t = Table::new(["property", "holds", "witness"]);
    let name = |w: usize| space.name(w).to_string();
    t.push([
        "reflexive".to_string(),
        yes_no(report.is_reflexive()).into(),
        report.reflexive.map_or("-".into(), name),
    ]);
    for (label, triple) in [("transitive", report.transitive), ("euclidean", report.euclidean)] {
        t.push([
            label.to_string(),
            yes_no(triple.is_none()).into(),
            triple.map_or("-".into(), |(a, b, c)| format!("({} {} {})", name(a), name(b), name(c))),
        ]);
    }
    t.push([
        "symmetric".to_string(),
        yes_no(report.is_symmetric()).into(),
        report.symmetric.map_or("-".into(), |(a, b)| format!("({} {})", name(a), name(b))),
    ]);
    t
}

fn agent_list(model: &GroupModel, idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| {
            let a = &model.agents()[i];
            format!("{} {}", a.name, a.revision_type)
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn profile_summary(model: &GroupModel) -> String {
    model
        .agents()
        .iter()
        .map(|a| format!("{} {}", a.name, a.revision_type))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn dispatch_fields(model: &GroupModel, dispatch: &Dispatch) -> Vec<(&'static str, String)> {
    match dispatch {
        Dispatch::HighestType { theta, agents } => vec![
            ("dispatch", format!("highest type {theta}")),
            ("realized by", agent_list(model, agents)),
            ("distributed knowledge", format!("(∪K)^{theta}")),
        ],
        Dispatch::WiseCrowd {
            positive,
            dfd,
            heterogeneous,
        } => vec![
            (
                "dispatch",
                format!(
                    "wise crowd, maximal types {} and {}",
                    RevisionType::PD,
                    RevisionType::DFD
                ),
            ),
            (
                "wise agents",
                agent_list(model, &positive.iter().chain(dfd).copied().collect::<Vec<_>>()),
            ),
            ("heterogeneous", yes_no(*heterogeneous).to_string()),
            (
                "identity",
                "((∪K)^(+d) ∪ (∪K)^(d±d))^(d±d) = (∪K)^(±d) verified".to_string(),
            ),
            ("distributed knowledge", format!("(∪K)^{}", RevisionType::FD)),
        ],
    }
}

pub fn render_closed_form(model: &GroupModel, closed: &ClosedForm, format: Format) -> String {
    let mut fields = vec![("profile", profile_summary(model))];
    fields.extend(dispatch_fields(model, &closed.dispatch));
    let mut out = render_fields(&fields, format);
    out.push('\n');
    out.push_str(&operator_table(model.space(), &[("K_D".into(), &closed.dk)]).render(format));
    out
}

pub fn render_simulation(
    model: &GroupModel,
    trace: &SimulationTrace,
    closed: &ClosedForm,
    format: Format,
) -> String {
    let agrees = trace.dk == closed.dk;
    let realized: Vec<String> = trace
        .realized_by
        .iter()
        .map(|&(i, t)| format!("{} (round {t})", model.agents()[i].name))
        .collect();
    let mut fields = vec![
        ("profile", profile_summary(model)),
        ("rounds", (trace.rounds.len() - 1).to_string()),
        ("converged_at", trace.converged_at.to_string()),
        ("profile_fixed_at", trace.profile_fixed_at.to_string()),
        ("monotone", yes_no(trace.is_monotone()).to_string()),
        (
            "realized by",
            if realized.is_empty() {
                "nobody".to_string()
            } else {
                realized.join(", ")
            },
        ),
    ];
    fields.extend(dispatch_fields(model, &closed.dispatch).into_iter().filter(|(k, _)| *k == "dispatch"));
    fields.push(("agreement", if agrees { "OK" } else { "MISMATCH" }.to_string()));
    let mut out = render_fields(&fields, format);
    out.push('\n');
    let mut columns: Vec<(String, &KnowledgeOperator)> = Vec::new();
    for (t, profile) in trace.rounds.iter().enumerate() {
        for (agent, k) in model.agents().iter().zip(profile) {
            columns.push((format!("{}^{t}", agent.name), k));
        }
    }
    columns.push(("K_D".into(), &trace.dk));
    out.push_str(&operator_table(model.space(), &columns).render(format));
    out
}

pub fn verification_table(report: &VerificationReport) -> Table {
    let mut t = Table::new(["check", "result", "detail"]);
    for c in &report.checks {
        let (result, detail) = match &c.outcome {
            CheckOutcome::Pass(n) => ("pass", format!("{n} cases")),
            CheckOutcome::Fail(w) => ("FAIL", w.clone()),
            CheckOutcome::Skipped(why) => ("skip", why.clone()),
        };
        t.push([c.name.to_string(), result.to_string(), detail]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateSpace;

    #[test]
    fn pretty_and_tsv_layouts() {
        let s = StateSpace::numbered(2).unwrap();
        let k = KnowledgeOperator::identity(&s);
        let t = operator_table(&s, &[("K".into(), &k)]);
        assert_eq!(
            t.render(Format::Tsv),
            "A\tK\n{}\t{}\n{w1}\t{w1}\n{w2}\t{w2}\n{w1 w2}\t{w1 w2}\n"
        );
        let pretty = t.render(Format::Pretty);
        assert!(pretty.starts_with("A       | K\n--------+--------\n"));
        assert_eq!(pretty, t.render(Format::Pretty));
    }

    #[test]
    fn families_print_as_nested_sets() {
        let s = StateSpace::numbered(3).unwrap();
        let f = MinimalSetFamily {
            per_state: vec![vec![Event::singleton(0), Event::from_states([1, 2])], vec![], vec![]],
        };
        let t = min_sets_table(&s, &f);
        assert_eq!(t.rows[0][1], "{{w1}, {w2 w3}}");
    }
}
