//! Left traces, the left n-ary trace of a tuple of relations, symmetric
//! parts, and minimal contour sets.

use crate::error::Result;
use crate::model::{check_same_space, relation_intersection, Event, PossibilityRelation};

/// `(ω, ω') ∈ T_P` iff `P(ω') ⊆ P(ω)`.
pub fn left_trace(p: &PossibilityRelation) -> PossibilityRelation {
    PossibilityRelation::from_pairs(p.space(), |w, v| p.contour(v).is_subset(p.contour(w)))
}

/// `(ω, ω') ∈ T_𝐏` iff for every `i` some `j` has `P_j(ω') ⊆ P_i(ω)`.
pub fn left_nary_trace(rels: &[PossibilityRelation]) -> Result<PossibilityRelation> {
    let space = check_same_space(rels, |p| p.space())?;
    Ok(PossibilityRelation::from_pairs(&space, |w, v| {
        rels.iter()
            .all(|pi| rels.iter().any(|pj| pj.contour(v).is_subset(pi.contour(w))))
    }))
}

/// Pairs of `r` whose reverse is also in `r`.
pub fn symmetric_part(r: &PossibilityRelation) -> PossibilityRelation {
    PossibilityRelation::from_pairs(r.space(), |w, v| r.contains(w, v) && r.contains(v, w))
}

/// Per state, the inclusion-minimal sets among `P_1(ω), …, P_n(ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSetFamily {
    /// Sorted and deduplicated for each state.
    pub per_state: Vec<Vec<Event>>,
}

impl MinimalSetFamily {
    pub fn at(&self, state: usize) -> &[Event] {
        &self.per_state[state]
    }
}

pub fn minimal_sets(rels: &[PossibilityRelation]) -> Result<MinimalSetFamily> {
    let space = check_same_space(rels, |p| p.space())?;
    let per_state = (0..space.len())
        .map(|w| {
            let contours: Vec<Event> = rels.iter().map(|p| p.contour(w)).collect();
            let mut min: Vec<Event> = contours
                .iter()
                .copied()
                .filter(|&c| {
                    contours
                        .iter()
                        .all(|&other| !other.is_subset(c) || other == c)
                })
                .collect();
            min.sort();
            min.dedup();
            min
        })
        .collect();
    Ok(MinimalSetFamily { per_state })
}

/// `E_𝐏` computed as `{(ω, ω') : Min(ω) = Min(ω')}`, without building `T_𝐏`.
pub fn e_from_minimal_sets(rels: &[PossibilityRelation]) -> Result<PossibilityRelation> {
    let family = minimal_sets(rels)?;
    Ok(PossibilityRelation::from_pairs(rels[0].space(), |w, v| {
        family.at(w) == family.at(v)
    }))
}

/// The five relations that represent revised group knowledge:
/// `∩P_i`, `T_𝐏`, `T_{∩P_i}`, `E_𝐏`, `E_{∩P_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRelations {
    pub intersection: PossibilityRelation,
    pub nary_trace: PossibilityRelation,
    pub intersection_trace: PossibilityRelation,
    pub nary_symmetric: PossibilityRelation,
    pub intersection_symmetric: PossibilityRelation,
}

impl GroupRelations {
    pub fn of(rels: &[PossibilityRelation]) -> Result<Self> {
        let intersection = relation_intersection(rels)?;
        let intersection_trace = left_trace(&intersection);
        Ok(Self {
            nary_trace: left_nary_trace(rels)?,
            intersection_symmetric: symmetric_part(&intersection_trace),
            nary_symmetric: e_from_minimal_sets(rels)?,
            intersection,
            intersection_trace,
        })
    }
}
