//! Full-communication rounds and the closed forms for distributed knowledge.
//!
//! Each round, every agent pools all current operators and revises the
//! union with its own type. Distributed knowledge is the union of
//! everything known across agents and rounds.

use std::sync::Arc;

use crate::axioms::{check_operator, K1_AXIOMS};
use crate::error::{Error, Result};
use crate::model::{operator_union, same_space, KnowledgeOperator, StateSpace};
use crate::revision::require_veridical;
use crate::types::{apply_revision_type, highest_type, RevisionType, TypeProfile};

/// Default cap on simulated rounds.
pub const DEFAULT_MAX_ROUNDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub name: String,
    pub operator: KnowledgeOperator,
    pub revision_type: RevisionType,
}

/// Agents sharing a state space. Engine entry points additionally require
/// at least two agents whose operators lie in K1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupModel {
    space: Arc<StateSpace>,
    agents: Vec<Agent>,
}

impl GroupModel {
    pub fn new(space: Arc<StateSpace>, agents: Vec<Agent>) -> Result<Self> {
        for (i, agent) in agents.iter().enumerate() {
            if !same_space(&space, agent.operator.space()) {
                return Err(Error::SpaceMismatch(format!(
                    "agent {} is defined over a different state space",
                    agent.name
                )));
            }
            if agents[..i].iter().any(|a| a.name == agent.name) {
                return Err(Error::Argument(format!("duplicate agent `{}`", agent.name)));
            }
        }
        Ok(Self { space, agents })
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, name: &str) -> Option<&Agent> {
        self.agents.iter().find(|a| a.name == name)
    }

    pub fn operators(&self) -> Vec<KnowledgeOperator> {
        self.agents.iter().map(|a| a.operator.clone()).collect()
    }

    pub fn types(&self) -> Vec<RevisionType> {
        self.agents.iter().map(|a| a.revision_type).collect()
    }

    pub fn type_profile(&self) -> TypeProfile {
        TypeProfile::new(
            self.agents
                .iter()
                .map(|a| (a.name.clone(), a.revision_type))
                .collect(),
        )
        .expect("agent names are unique by construction")
    }

    /// Same operators, different types.
    pub fn with_types(&self, types: &[RevisionType]) -> Result<Self> {
        if types.len() != self.agents.len() {
            return Err(Error::Argument(format!(
                "{} types given for {} agents",
                types.len(),
                self.agents.len()
            )));
        }
        let agents = self
            .agents
            .iter()
            .zip(types)
            .map(|(a, &t)| Agent {
                revision_type: t,
                ..a.clone()
            })
            .collect();
        Ok(Self {
            space: Arc::clone(&self.space),
            agents,
        })
    }

    /// Checks that every operator lies in K1.
    pub fn validate_operators(&self) -> Result<()> {
        for agent in &self.agents {
            let report = check_operator(&agent.operator);
            if let Some((axiom, witness)) = report.first_failure(K1_AXIOMS) {
                return Err(Error::Validation {
                    agent: agent.name.clone(),
                    axiom,
                    witness: witness.format(&self.space),
                });
            }
        }
        Ok(())
    }

    /// Preconditions of [`simulate`] and [`distributed_knowledge_closed_form`].
    pub fn validate_for_engine(&self) -> Result<()> {
        if self.agents.len() < 2 {
            return Err(Error::Argument(format!(
                "distributed knowledge needs at least two agents, model has {}",
                self.agents.len()
            )));
        }
        self.validate_operators()
    }
}

/// One communication round: `K_i' = (∪_j K_j)^{θ_i}`.
pub fn simulate_round(
    ops: &[KnowledgeOperator],
    types: &[RevisionType],
) -> Result<Vec<KnowledgeOperator>> {
    if ops.len() != types.len() {
        return Err(Error::Argument(format!(
            "{} operators but {} types",
            ops.len(),
            types.len()
        )));
    }
    for k in ops {
        require_veridical(k)?;
    }
    let pooled = operator_union(ops)?;
    types
        .iter()
        .map(|&t| apply_revision_type(&pooled, t))
        .collect()
}

/// Which closed form applies to a type profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dispatch {
    /// Some present type dominates all others; its holders reach `K_𝐃` alone.
    HighestType {
        theta: RevisionType,
        agents: Vec<usize>,
    },
    /// No dominating type: the `(+d)` and `(d±d)` agents jointly reach `K_𝐃`,
    /// which equals the `(±d)` revision of the pooled knowledge.
    WiseCrowd {
        positive: Vec<usize>,
        dfd: Vec<usize>,
        heterogeneous: bool,
    },
}

impl Dispatch {
    pub fn for_types(types: &[RevisionType]) -> Result<Self> {
        let holders = |t: RevisionType| -> Vec<usize> {
            types
                .iter()
                .enumerate()
                .filter(|(_, &u)| u == t)
                .map(|(i, _)| i)
                .collect()
        };
        let dominance = highest_type(types);
        if let Some(theta) = dominance.highest {
            return Ok(Dispatch::HighestType {
                theta,
                agents: holders(theta),
            });
        }
        let positive = holders(RevisionType::PD);
        let dfd = holders(RevisionType::DFD);
        if types.contains(&RevisionType::FD) || positive.is_empty() || dfd.is_empty() {
            return Err(Error::Invariant(format!(
                "profile {types:?} has no highest type but is not a (+d)/(d±d) profile"
            )));
        }
        let heterogeneous = types.iter().any(|&t| t != types[0]);
        Ok(Dispatch::WiseCrowd {
            positive,
            dfd,
            heterogeneous,
        })
    }

    pub fn is_wise_crowd(&self) -> bool {
        matches!(self, Dispatch::WiseCrowd { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub dk: KnowledgeOperator,
    pub dispatch: Dispatch,
}

/// `K_𝐃` without simulating: the highest type applied to the pooled
/// knowledge, or `(±d)` when the profile has two incomparable maximal types.
pub fn distributed_knowledge_closed_form(model: &GroupModel) -> Result<ClosedForm> {
    model.validate_for_engine()?;
    let types = model.types();
    let dispatch = Dispatch::for_types(&types)?;
    let pooled = operator_union(&model.operators())?;
    let dk = match &dispatch {
        Dispatch::HighestType { theta, .. } => apply_revision_type(&pooled, *theta)?,
        Dispatch::WiseCrowd { .. } => {
            let two_step = operator_union(&[
                apply_revision_type(&pooled, RevisionType::PD)?,
                apply_revision_type(&pooled, RevisionType::DFD)?,
            ])?;
            let two_step = apply_revision_type(&two_step, RevisionType::DFD)?;
            let direct = apply_revision_type(&pooled, RevisionType::FD)?;
            if two_step != direct {
                return Err(Error::Invariant(
                    "((∪K)^{+d} ∪ (∪K)^{d±d})^{d±d} differs from (∪K)^{±d}".into(),
                ));
            }
            direct
        }
    };
    Ok(ClosedForm { dk, dispatch })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationTrace {
    /// `rounds[t][i] = K_i^t`, starting with the initial profile.
    pub rounds: Vec<Vec<KnowledgeOperator>>,
    /// First round whose group union already equals `K_𝐃`.
    pub converged_at: usize,
    /// First round whose profile is reproduced by the next round.
    pub profile_fixed_at: usize,
    pub dk: KnowledgeOperator,
    pub dispatch: Dispatch,
    /// Agents holding `K_𝐃` themselves, with the first round they do.
    pub realized_by: Vec<(usize, usize)>,
}

impl SimulationTrace {
    /// `K_i^t ≤ K_i^{t+1}` for every agent and recorded round.
    pub fn is_monotone(&self) -> bool {
        self.rounds
            .windows(2)
            .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a <= b))
    }

    /// The union over every agent and every recorded round.
    pub fn union_over_all_rounds(&self) -> Result<KnowledgeOperator> {
        let all: Vec<KnowledgeOperator> = self.rounds.iter().flatten().cloned().collect();
        operator_union(&all)
    }
}

/// Runs communication rounds until the whole profile stops changing.
pub fn simulate(model: &GroupModel, max_rounds: usize) -> Result<SimulationTrace> {
    if max_rounds == 0 {
        return Err(Error::Argument("max_rounds must be positive".into()));
    }
    model.validate_for_engine()?;
    let types = model.types();
    let mut rounds = vec![model.operators()];
    let profile_fixed_at = loop {
        let last = rounds.last().expect("initial profile present");
        let next = simulate_round(last, &types)?;
        if &next == last {
            break rounds.len() - 1;
        }
        if rounds.len() > max_rounds {
            return Err(Error::Invariant(format!(
                "no fixed profile after {max_rounds} rounds"
            )));
        }
        rounds.push(next);
    };
    let final_profile = rounds.last().expect("non-empty");
    let dk = operator_union(final_profile)?;
    let converged_at = rounds
        .iter()
        .position(|profile| operator_union(profile).is_ok_and(|u| u == dk))
        .expect("final round reaches its own union");
    let realized_by = (0..types.len())
        .filter_map(|i| {
            rounds
                .iter()
                .position(|profile| profile[i] == dk)
                .map(|t| (i, t))
        })
        .collect();
    Ok(SimulationTrace {
        rounds,
        converged_at,
        profile_fixed_at,
        dk,
        dispatch: Dispatch::for_types(&types)?,
        realized_by,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::operator_from_relation;
    use crate::model::{Event, PossibilityRelation};
    use RevisionType::*;

    fn partition_model(types: &[RevisionType]) -> GroupModel {
        let s = StateSpace::numbered(3).unwrap();
        let cells = PossibilityRelation::from_pairs(&s, |w, v| (w == 2) == (v == 2));
        let k = operator_from_relation(&cells);
        let agents = types
            .iter()
            .enumerate()
            .map(|(i, &t)| Agent {
                name: format!("a{i}"),
                operator: k.clone(),
                revision_type: t,
            })
            .collect();
        GroupModel::new(s, agents).unwrap()
    }

    #[test]
    fn fully_introspective_profile_is_a_fixed_point() {
        let m = partition_model(&[FD, D, DFD]);
        let ops = m.operators();
        assert_eq!(simulate_round(&ops, &m.types()).unwrap(), ops);
        let trace = simulate(&m, DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(trace.converged_at, 0);
        assert_eq!(trace.profile_fixed_at, 0);
        assert_eq!(trace.dk, ops[0]);
    }

    #[test]
    fn identical_partitions_closed_form() {
        let m = partition_model(&[FD, FD]);
        let cf = distributed_knowledge_closed_form(&m).unwrap();
        assert_eq!(cf.dk, m.agents()[0].operator);
        assert_eq!(
            cf.dispatch,
            Dispatch::HighestType {
                theta: FD,
                agents: vec![0, 1]
            }
        );
    }

    #[test]
    fn engine_rejects_single_agent_and_non_k1() {
        let m = partition_model(&[D]);
        assert!(matches!(simulate(&m, 8), Err(Error::Argument(_))));
        let s = StateSpace::numbered(2).unwrap();
        let bad = KnowledgeOperator::from_fn(&s, |_| Event::EMPTY);
        let m = GroupModel::new(
            Arc::clone(&s),
            vec![
                Agent { name: "a".into(), operator: bad.clone(), revision_type: D },
                Agent { name: "b".into(), operator: bad, revision_type: D },
            ],
        )
        .unwrap();
        assert!(matches!(
            distributed_knowledge_closed_form(&m),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn round_requires_matching_lengths() {
        let m = partition_model(&[D, D]);
        assert!(simulate_round(&m.operators(), &[D]).is_err());
    }

    #[test]
    fn dispatch_reports_wise_pair() {
        let d = Dispatch::for_types(&[D, PD, DFD]).unwrap();
        assert_eq!(
            d,
            Dispatch::WiseCrowd {
                positive: vec![1],
                dfd: vec![2],
                heterogeneous: true
            }
        );
    }
}
