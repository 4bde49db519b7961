//! Image and fixed-point extraction, and the revision operators
//! `(.)⁺`, `(.)±`, `(.)⁻` and `(.)ᵈ`.
//!
//! Every operator here is defined on veridical knowledge only and checks
//! veridicality on entry.

use std::sync::Arc;

use crate::axioms::{Axiom, KnownCores};
use crate::error::{Error, Result};
use crate::model::{Event, KnowledgeOperator, StateSpace};

/// Set of events over one state space, as a membership table.
#[derive(Clone, PartialEq, Eq)]
pub struct EventFamily {
    space: Arc<StateSpace>,
    members: Vec<bool>,
}

impl EventFamily {
    pub fn empty(space: &Arc<StateSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            members: vec![false; space.num_events()],
        }
    }

    pub fn from_events(space: &Arc<StateSpace>, events: impl IntoIterator<Item = Event>) -> Self {
        let mut family = Self::empty(space);
        for e in events {
            family.members[e.index()] = true;
        }
        family
    }

    pub fn contains(&self, event: Event) -> bool {
        self.members[event.index()]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Event> + '_ {
        self.space.events().filter(|e| self.members[e.index()])
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            space: Arc::clone(&self.space),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }
}

impl std::fmt::Debug for EventFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|e| self.space.format_event(e)))
            .finish()
    }
}

/// `Img(K)`, `Img(¬K)` and `Fix(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorImages {
    pub img: EventFamily,
    pub img_not: EventFamily,
    pub fix: EventFamily,
}

pub fn operator_images(k: &KnowledgeOperator) -> OperatorImages {
    let space = k.space();
    OperatorImages {
        img: EventFamily::from_events(space, k.table().iter().copied()),
        img_not: EventFamily::from_events(space, k.table().iter().map(|&e| space.complement(e))),
        fix: EventFamily::from_events(space, k.entries().filter(|(a, ka)| a == ka).map(|(a, _)| a)),
    }
}

pub(crate) fn require_veridical(k: &KnowledgeOperator) -> Result<()> {
    match k.space().events().find(|&a| !k.apply(a).is_subset(a)) {
        None => Ok(()),
        Some(a) => Err(Error::Domain {
            class: "Kv",
            axiom: Axiom::Veridicality,
            witness: k.space().format_event(a),
        }),
    }
}

/// Replaces `K(A)` by `A` on every event of `family`.
fn promote(k: &KnowledgeOperator, family: &EventFamily) -> KnowledgeOperator {
    KnowledgeOperator::from_fn(k.space(), |a| if family.contains(a) { a } else { k.apply(a) })
}

/// `K⁺(A) = A` if `A ∈ Img(K)`, else `K(A)`.
pub fn positive_introspection_op(k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
    require_veridical(k)?;
    Ok(promote(k, &operator_images(k).img))
}

/// `K±(A) = A` if `A ∈ Img(K) ∪ Img(¬K)`, else `K(A)`.
pub fn full_introspection_op(k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
    require_veridical(k)?;
    let images = operator_images(k);
    Ok(promote(k, &images.img.union(&images.img_not)))
}

/// `K⁻(A) = A` if `A ∈ Img(¬K)`, else `K(A)`. Not idempotent; `K⁻⁻ = K±`.
pub fn negative_introspection_step(k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
    require_veridical(k)?;
    Ok(promote(k, &operator_images(k).img_not))
}

/// Distributive closure `Kᵈ(A) = ∪{∩ K(Bᵢ) : ∩ Bᵢ ⊆ A}`.
///
/// Taking every event known at `ω` as the family gives the smallest
/// possible `∩ Bᵢ`, so `ω ∈ Kᵈ(A)` iff some event is known at `ω` and the
/// intersection `D(ω)` of all of them lies inside `A`.
pub fn distributive_closure(k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
    require_veridical(k)?;
    let cores = KnownCores::of(k);
    Ok(KnowledgeOperator::from_fn(k.space(), |a| cores.known_at(a)))
}
