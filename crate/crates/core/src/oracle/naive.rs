use crate::error::{Error, Result};
use crate::model::{Event, KnowledgeOperator};
use crate::revision::require_veridical;

/// Largest state space the family enumeration accepts (2^16 families).
pub const NAIVE_MAX_STATES: usize = 4;

/// Distributive closure by literal enumeration of every non-empty family of
/// distinct events: `Kᵈ(A) = ∪{∩_{B∈F} K(B) : ∩F ⊆ A}`.
pub fn naive_distributive_closure(k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
    let space = k.space();
    if space.len() > NAIVE_MAX_STATES {
        return Err(Error::Capability(format!(
            "family enumeration needs at most {NAIVE_MAX_STATES} states, got {}",
            space.len()
        )));
    }
    require_veridical(k)?;
    let events = space.num_events();
    let families = 1usize << events;
    // joint[m] and known[m]: ∩F and ∩K(B) for the family with bitmask m
    let mut joint = vec![space.full(); families];
    let mut known = vec![space.full(); families];
    // best[X]: union of ∩K(B) over families whose intersection is exactly X
    let mut best = vec![Event::EMPTY; events];
    for m in 1..families {
        let low = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        let b = Event::from_bits(low as u32);
        joint[m] = joint[rest] & b;
        known[m] = known[rest] & k.apply(b);
        let x = joint[m].bits() as usize;
        best[x] = best[x] | known[m];
    }
    Ok(KnowledgeOperator::from_fn(space, |a| {
        space
            .events()
            .filter(|x| x.is_subset(a))
            .fold(Event::EMPTY, |acc, x| acc | best[x.bits() as usize])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateSpace;
    use crate::revision::distributive_closure;

    #[test]
    fn agrees_with_fast_closure_on_every_two_state_operator() {
        let s = StateSpace::numbered(2).unwrap();
        let mut veridical = 0;
        for code in 0u32..256 {
            let k = KnowledgeOperator::from_fn(&s, |a| {
                Event::from_bits((code >> (2 * a.bits())) & 0b11)
            });
            if require_veridical(&k).is_err() {
                continue;
            }
            veridical += 1;
            assert_eq!(
                naive_distributive_closure(&k).unwrap(),
                distributive_closure(&k).unwrap()
            );
        }
        assert_eq!(veridical, 1 * 2 * 2 * 4);
    }

    #[test]
    fn rejects_large_spaces() {
        let s = StateSpace::numbered(5).unwrap();
        let k = KnowledgeOperator::identity(&s);
        assert!(matches!(naive_distributive_closure(&k), Err(Error::Capability(_))));
    }
}
