use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duality::operator_from_relation;
use crate::engine::{Agent, GroupModel};
use crate::error::{Error, Result};
use crate::model::{Event, KnowledgeOperator, PossibilityRelation, StateSpace};
use crate::types::RevisionType;

/// Class the generated operators are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetClass {
    /// Veridical only: `K(A)` is a uniform subset of `A`.
    Kv,
    /// Reflexive relations.
    K1,
    /// Reflexive transitive relations.
    K2,
    /// Partitions.
    K3,
}

impl TargetClass {
    pub fn tag(self) -> &'static str {
        match self {
            TargetClass::Kv => "kv",
            TargetClass::K1 => "k1",
            TargetClass::K2 => "k2",
            TargetClass::K3 => "k3",
        }
    }
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TargetClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kv" => Ok(TargetClass::Kv),
            "k1" => Ok(TargetClass::K1),
            "k2" => Ok(TargetClass::K2),
            "k3" => Ok(TargetClass::K3),
            other => Err(Error::Argument(format!(
                "unknown class `{other}` (expected kv, k1, k2 or k3)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_states: usize,
    pub num_agents: usize,
    pub class: TargetClass,
}

impl GeneratorConfig {
    pub const MAX_STATES: usize = 5;
    pub const MAX_AGENTS: usize = 4;

    pub fn new(seed: u64, num_states: usize, num_agents: usize, class: TargetClass) -> Self {
        Self {
            seed,
            num_states,
            num_agents,
            class,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=Self::MAX_STATES).contains(&self.num_states) {
            return Err(Error::Argument(format!(
                "generator supports 1 to {} states, got {}",
                Self::MAX_STATES,
                self.num_states
            )));
        }
        if !(1..=Self::MAX_AGENTS).contains(&self.num_agents) {
            return Err(Error::Argument(format!(
                "generator supports 1 to {} agents, got {}",
                Self::MAX_AGENTS,
                self.num_agents
            )));
        }
        Ok(())
    }
}

/// Each off-diagonal pair is included with a per-relation density.
pub fn random_reflexive_relation<R: Rng>(rng: &mut R, space: &Arc<StateSpace>) -> PossibilityRelation {
    let density: f64 = rng.gen_range(0.1..0.7);
    PossibilityRelation::from_pairs(space, |w, v| w == v || rng.gen_bool(density))
}

/// Transitive closure of a random reflexive relation.
pub fn random_preorder<R: Rng>(rng: &mut R, space: &Arc<StateSpace>) -> PossibilityRelation {
    let base = random_reflexive_relation(rng, space);
    let n = space.len();
    let mut contour: Vec<Event> = base.contours().to_vec();
    for mid in 0..n {
        for w in 0..n {
            if contour[w].contains(mid) {
                contour[w] = contour[w] | contour[mid];
            }
        }
    }
    PossibilityRelation::from_fn(space, |w| contour[w])
}

/// Each state joins a uniformly chosen block label.
pub fn random_partition<R: Rng>(rng: &mut R, space: &Arc<StateSpace>) -> PossibilityRelation {
    let n = space.len();
    let blocks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    PossibilityRelation::from_pairs(space, |w, v| blocks[w] == blocks[v])
}

pub fn random_veridical_operator<R: Rng>(rng: &mut R, space: &Arc<StateSpace>) -> KnowledgeOperator {
    KnowledgeOperator::from_fn(space, |a| Event::from_bits(rng.gen::<u32>() & a.bits()))
}

/// Deterministic in the config: equal configs give equal models.
pub fn random_model(config: &GeneratorConfig) -> Result<GroupModel> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let space = StateSpace::numbered(config.num_states)?;
    let agents = (0..config.num_agents)
        .map(|i| {
            let operator = match config.class {
                TargetClass::Kv => random_veridical_operator(&mut rng, &space),
                TargetClass::K1 => operator_from_relation(&random_reflexive_relation(&mut rng, &space)),
                TargetClass::K2 => operator_from_relation(&random_preorder(&mut rng, &space)),
                TargetClass::K3 => operator_from_relation(&random_partition(&mut rng, &space)),
            };
            let revision_type = RevisionType::ALL[rng.gen_range(0..RevisionType::ALL.len())];
            Agent {
                name: format!("a{}", i + 1),
                operator,
                revision_type,
            }
        })
        .collect();
    GroupModel::new(space, agents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_operator, check_relation};
    use crate::duality::relation_from_operator;

    #[test]
    fn same_config_same_model() {
        let c = GeneratorConfig::new(1, 4, 3, TargetClass::K1);
        assert_eq!(random_model(&c).unwrap(), random_model(&c).unwrap());
        let other = GeneratorConfig { seed: 2, ..c };
        assert_ne!(random_model(&c).unwrap(), random_model(&other).unwrap());
    }

    #[test]
    fn generated_models_land_in_their_class() {
        for seed in 0..40 {
            for class in [TargetClass::Kv, TargetClass::K1, TargetClass::K2, TargetClass::K3] {
                let m = random_model(&GeneratorConfig::new(seed, 5, 3, class)).unwrap();
                for agent in m.agents() {
                    let c = check_operator(&agent.operator).classes;
                    assert!(c.veridical);
                    match class {
                        TargetClass::Kv => {}
                        TargetClass::K1 => assert!(c.k1),
                        TargetClass::K2 => assert!(c.k2),
                        TargetClass::K3 => {
                            assert!(c.k3);
                            let p = relation_from_operator(&agent.operator).unwrap();
                            assert!(check_relation(&p).is_equivalence());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_oversized_configs() {
        assert!(random_model(&GeneratorConfig::new(0, 6, 2, TargetClass::K1)).is_err());
        assert!(random_model(&GeneratorConfig::new(0, 3, 5, TargetClass::K1)).is_err());
        assert_eq!("K2".parse::<TargetClass>().unwrap(), TargetClass::K2);
    }
}
