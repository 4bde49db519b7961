//! Conversions between possibility relations and distributive operators.
//!
//! `P ↦ K` with `K(A) = {ω : P(ω) ⊆ A}` is an order-reversing bijection
//! onto the operators satisfying distributivity and necessitation. Both
//! inverse constructions check that class on entry.

use crate::axioms::{check_operator, K0_AXIOMS};
use crate::error::{Error, Result};
use crate::model::{Event, KnowledgeOperator, PossibilityRelation};

pub fn operator_from_relation(p: &PossibilityRelation) -> KnowledgeOperator {
    let n = p.space().len();
    KnowledgeOperator::from_fn(p.space(), |a| {
        Event::from_states((0..n).filter(|&w| p.contour(w).is_subset(a)))
    })
}

pub(crate) fn require_k0(k: &KnowledgeOperator) -> Result<()> {
    let report = check_operator(k);
    match report.first_failure(K0_AXIOMS) {
        None => Ok(()),
        Some((axiom, witness)) => Err(Error::Domain {
            class: "K0",
            axiom,
            witness: witness.format(k.space()),
        }),
    }
}

/// `P(ω) = ∩{A : ω ∈ K(A)}`, seeded with Ω.
pub fn relation_from_operator(k: &KnowledgeOperator) -> Result<PossibilityRelation> {
    require_k0(k)?;
    Ok(relation_from_operator_unchecked(k))
}

pub(crate) fn relation_from_operator_unchecked(k: &KnowledgeOperator) -> PossibilityRelation {
    let space = k.space();
    let mut contour = vec![space.full(); space.len()];
    for (a, ka) in k.entries() {
        for w in ka.states() {
            contour[w] = contour[w] & a;
        }
    }
    PossibilityRelation::from_fn(space, |w| contour[w])
}

/// `P̂(ω) = {ω' : ω ∉ K(¬{ω'})}`: the states not ruled out at `ω`.
pub fn relation_from_operator_morris(k: &KnowledgeOperator) -> Result<PossibilityRelation> {
    require_k0(k)?;
    let space = k.space();
    let n = space.len();
    Ok(PossibilityRelation::from_fn(space, |w| {
        Event::from_states(
            (0..n).filter(|&v| !k.apply(space.complement(Event::singleton(v))).contains(w)),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Axiom;
    use crate::model::StateSpace;

    fn ev(states: &[usize]) -> Event {
        Event::from_states(states.iter().copied())
    }

    #[test]
    fn bob_round_trip() {
        let s = StateSpace::numbered(2).unwrap();
        let pb = PossibilityRelation::from_contours(&s, vec![ev(&[0]), ev(&[0, 1])]).unwrap();
        let kb = operator_from_relation(&pb);
        assert_eq!(kb.apply(ev(&[0])), ev(&[0]));
        assert_eq!(kb.apply(ev(&[1])), Event::EMPTY);
        let back = relation_from_operator(&kb).unwrap();
        assert_eq!(back, pb);
        assert_eq!(back.contour(1), ev(&[0, 1]));
        assert_eq!(relation_from_operator_morris(&kb).unwrap(), pb);
    }

    #[test]
    fn identity_maps_to_identity() {
        let s = StateSpace::numbered(3).unwrap();
        let id = PossibilityRelation::identity(&s);
        let k = operator_from_relation(&id);
        assert_eq!(k, KnowledgeOperator::identity(&s));
        assert_eq!(relation_from_operator(&k).unwrap(), id);
        assert_eq!(relation_from_operator_morris(&k).unwrap(), id);
    }

    #[test]
    fn rejects_operators_outside_k0() {
        let s = StateSpace::numbered(2).unwrap();
        let k = KnowledgeOperator::from_fn(&s, |_| Event::EMPTY);
        match relation_from_operator(&k) {
            Err(Error::Domain { axiom, .. }) => assert_eq!(axiom, Axiom::Necessitation),
            other => panic!("unexpected {other:?}"),
        }
        // K(∅) = {w1} while K({w1}) ∩ K({w2}) = ∅
        let k = KnowledgeOperator::from_fn(&s, |a| if a.is_empty() { ev(&[0]) } else { a });
        match relation_from_operator_morris(&k) {
            Err(Error::Domain { axiom, .. }) => assert_eq!(axiom, Axiom::Distributivity),
            other => panic!("unexpected {other:?}"),
        }
    }
}
