//! Exhaustive axiom checks for operators and property checks for relations.

use std::sync::Arc;

use crate::model::{Event, KnowledgeOperator, PossibilityRelation, StateSpace};

/// Largest space on which distributivity is decided over all event pairs.
pub const BRUTE_FORCE_K0_MAX_STATES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Distributivity,
    Necessitation,
    Veridicality,
    PositiveIntrospection,
    NegativeIntrospection,
    Monotonicity,
}

/// Smallest counterexample found for an axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Event(Event),
    Pair(Event, Event),
}

impl Witness {
    pub fn format(&self, space: &StateSpace) -> String {
        match *self {
            Witness::Event(a) => space.format_event(a),
            Witness::Pair(a, b) => format!("({}, {})", space.format_event(a), space.format_event(b)),
        }
    }
}

/// Operator classes, nested `K3 ⊆ K2 ⊆ K1 ⊆ K0` plus the veridical class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classes {
    pub veridical: bool,
    pub k0: bool,
    pub k1: bool,
    pub k2: bool,
    pub k3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub distributivity: Option<Witness>,
    pub necessitation: Option<Witness>,
    pub veridicality: Option<Witness>,
    pub positive_introspection: Option<Witness>,
    pub negative_introspection: Option<Witness>,
    pub monotonicity: Option<Witness>,
    pub classes: Classes,
}

impl AxiomReport {
    /// `None` when the axiom holds, otherwise a counterexample.
    pub fn witness(&self, axiom: Axiom) -> Option<Witness> {
        match axiom {
            Axiom::Distributivity => self.distributivity,
            Axiom::Necessitation => self.necessitation,
            Axiom::Veridicality => self.veridicality,
            Axiom::PositiveIntrospection => self.positive_introspection,
            Axiom::NegativeIntrospection => self.negative_introspection,
            Axiom::Monotonicity => self.monotonicity,
        }
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.witness(axiom).is_none()
    }

    /// First failing axiom among `required`, in the given order.
    pub fn first_failure(&self, required: &[Axiom]) -> Option<(Axiom, Witness)> {
        required
            .iter()
            .find_map(|&ax| self.witness(ax).map(|w| (ax, w)))
    }
}

pub const K0_AXIOMS: &[Axiom] = &[Axiom::Distributivity, Axiom::Necessitation];
pub const K1_AXIOMS: &[Axiom] = &[
    Axiom::Distributivity,
    Axiom::Necessitation,
    Axiom::Veridicality,
];

pub fn check_operator(k: &KnowledgeOperator) -> AxiomReport {
    let space = k.space();
    let full = space.full();

    let necessitation = (k.apply(full) != full).then_some(Witness::Event(full));
    let veridicality = space
        .events()
        .find(|&a| !k.apply(a).is_subset(a))
        .map(Witness::Event);
    let positive_introspection = space
        .events()
        .find(|&a| {
            let ka = k.apply(a);
            !ka.is_subset(k.apply(ka))
        })
        .map(Witness::Event);
    let negative_introspection = space
        .events()
        .find(|&a| {
            let not_ka = space.complement(k.apply(a));
            !not_ka.is_subset(k.apply(not_ka))
        })
        .map(Witness::Event);
    let monotonicity = monotonicity_witness(k);
    let distributivity = if space.len() <= BRUTE_FORCE_K0_MAX_STATES {
        distributivity_witness_pairs(k)
    } else {
        distributivity_witness_filters(k)
    };

    let veridical = veridicality.is_none();
    let k0 = distributivity.is_none() && necessitation.is_none();
    let k1 = k0 && veridical;
    let k2 = k1 && positive_introspection.is_none();
    let k3 = k2 && negative_introspection.is_none();

    AxiomReport {
        distributivity,
        necessitation,
        veridicality,
        positive_introspection,
        negative_introspection,
        monotonicity,
        classes: Classes {
            veridical,
            k0,
            k1,
            k2,
            k3,
        },
    }
}

/// Monotone iff adding any single state to an argument never shrinks the image.
fn monotonicity_witness(k: &KnowledgeOperator) -> Option<Witness> {
    let space = k.space();
    for a in space.events() {
        for s in space.complement(a).states() {
            let b = a | Event::singleton(s);
            if !k.apply(a).is_subset(k.apply(b)) {
                return Some(Witness::Pair(a, b));
            }
        }
    }
    None
}

/// Decides `K(A ∩ B) = K(A) ∩ K(B)` over all pairs of events.
pub(crate) fn distributivity_witness_pairs(k: &KnowledgeOperator) -> Option<Witness> {
    let space = k.space();
    for a in space.events() {
        let ka = k.apply(a);
        for b in space.events().filter(|b| b.bits() >= a.bits()) {
            if k.apply(a & b) != ka & k.apply(b) {
                return Some(Witness::Pair(a, b));
            }
        }
    }
    None
}

/// Distributivity holds iff, at every state, the events known there form an
/// empty family or the principal filter generated by their intersection.
pub(crate) fn distributivity_witness_filters(k: &KnowledgeOperator) -> Option<Witness> {
    let cores = KnownCores::of(k);
    k.space()
        .events()
        .find(|&a| k.apply(a) != cores.known_at(a))
        .map(Witness::Event)
}

/// For each state `ω`: the intersection `D(ω)` of every event known at `ω`,
/// and whether any event is known there at all.
pub(crate) struct KnownCores {
    space: Arc<StateSpace>,
    core: Vec<Event>,
    known_somewhere: Vec<bool>,
}

impl KnownCores {
    pub(crate) fn of(k: &KnowledgeOperator) -> Self {
        let space = k.space();
        let n = space.len();
        let mut core = vec![space.full(); n];
        let mut known_somewhere = vec![false; n];
        for (a, ka) in k.entries() {
            for w in ka.states() {
                core[w] = core[w] & a;
                known_somewhere[w] = true;
            }
        }
        Self {
            space: Arc::clone(space),
            core,
            known_somewhere,
        }
    }

    /// `{ω : some event is known at ω ∧ D(ω) ⊆ A}`.
    pub(crate) fn known_at(&self, a: Event) -> Event {
        Event::from_states(
            (0..self.space.len()).filter(|&w| self.known_somewhere[w] && self.core[w].is_subset(a)),
        )
    }
}

/// Triple that violates transitivity or the Euclidean property.
pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RelationReport {
    /// State missing from its own contour set.
    pub reflexive: Option<usize>,
    pub transitive: Option<Triple>,
    pub euclidean: Option<Triple>,
    pub symmetric: Option<(usize, usize)>,
}

impl RelationReport {
    pub fn is_reflexive(&self) -> bool {
        self.reflexive.is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive.is_none()
    }

    pub fn is_euclidean(&self) -> bool {
        self.euclidean.is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric.is_none()
    }

    pub fn p1(&self) -> bool {
        self.is_reflexive()
    }

    pub fn p2(&self) -> bool {
        self.p1() && self.is_transitive()
    }

    pub fn p3(&self) -> bool {
        self.p2() && self.is_euclidean()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }
}

pub fn check_relation(p: &PossibilityRelation) -> RelationReport {
    let n = p.space().len();
    let states = 0..n;
    let reflexive = states.clone().find(|&w| !p.contains(w, w));
    let symmetric = states
        .clone()
        .flat_map(|w| (0..n).map(move |v| (w, v)))
        .find(|&(w, v)| p.contains(w, v) && !p.contains(v, w));
    let mut transitive = None;
    let mut euclidean = None;
    'outer: for w in 0..n {
        for v in p.contour(w).states() {
            for u in 0..n {
                if transitive.is_none() && p.contains(v, u) && !p.contains(w, u) {
                    transitive = Some((w, v, u));
                }
                if euclidean.is_none() && p.contains(w, u) && !p.contains(v, u) {
                    euclidean = Some((w, v, u));
                }
                if transitive.is_some() && euclidean.is_some() {
                    break 'outer;
                }
            }
        }
    }
    RelationReport {
        reflexive,
        transitive,
        euclidean,
        symmetric,
    }
}
