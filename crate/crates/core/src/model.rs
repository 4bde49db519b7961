//! State spaces, events, knowledge operators and possibility relations.
//!
//! An [`Event`] is a bit mask whose bit `i` is the `i`-th declared state.
//! A [`KnowledgeOperator`] stores one image per event, indexed by the mask
//! of its argument, so evaluation is a single table lookup.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported number of states; dense tables hold `2^MAX_STATES` rows.
pub const MAX_STATES: usize = 16;

/// Ordered, finite set of named states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    names: Vec<String>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Argument("a state space needs at least one state".into()));
        }
        if names.len() > MAX_STATES {
            return Err(Error::Capability(format!(
                "{} states declared, at most {MAX_STATES} are supported",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Argument("state labels must be non-empty".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::Argument(format!("duplicate state label `{name}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `w1, .., wn`; handy in tests and generators.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of events, `2^|Ω|`.
    pub fn num_events(&self) -> usize {
        1 << self.names.len()
    }

    /// The sure event Ω.
    pub fn full(&self) -> Event {
        Event((1u32 << self.names.len()) - 1)
    }

    pub fn complement(&self, event: Event) -> Event {
        Event(!event.0 & self.full().0)
    }

    /// All events in mask order.
    pub fn events(&self) -> impl Iterator<Item = Event> + Clone {
        (0..self.num_events() as u32).map(Event)
    }

    /// Events ordered by size, then lexicographically by member index.
    pub fn events_table_order(&self) -> Vec<Event> {
        let mut events: Vec<Event> = self.events().collect();
        events.sort_by(|a, b| table_order(*a, *b));
        events
    }

    pub fn event_from_names<'a, I>(&self, names: I) -> Result<Event>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().try_fold(Event::EMPTY, |acc, name| {
            self.index_of(name)
                .map(|i| acc | Event::singleton(i))
                .ok_or_else(|| Error::Argument(format!("unknown state `{name}`")))
        })
    }

    /// Renders an event as `{w1 w2}` in declared state order.
    pub fn format_event(&self, event: Event) -> String {
        let mut out = String::from("{");
        for (k, i) in event.states().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }
}

fn table_order(a: Event, b: Event) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.states().cmp(b.states()))
}

/// Subset of the state space, as a characteristic bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Event(u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub const fn from_bits(bits: u32) -> Self {
        Event(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub(crate) const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn singleton(state: usize) -> Self {
        Event(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Self {
        states
            .into_iter()
            .fold(Event::EMPTY, |acc, s| acc | Event::singleton(s))
    }

    pub const fn contains(self, state: usize) -> bool {
        self.0 & (1 << state) != 0
    }

    pub const fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub const fn intersection(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    pub const fn without(self, state: usize) -> Event {
        Event(self.0 & !(1 << state))
    }

    /// Member state indices in increasing order.
    pub fn states(self) -> impl Iterator<Item = usize> + Clone {
        let bits = self.0;
        (0..u32::BITS as usize).filter(move |i| bits & (1 << i) != 0)
    }
}

impl BitOr for Event {
    type Output = Event;
    fn bitor(self, rhs: Event) -> Event {
        self.union(rhs)
    }
}

impl BitAnd for Event {
    type Output = Event;
    fn bitand(self, rhs: Event) -> Event {
        self.intersection(rhs)
    }
}

pub(crate) fn same_space(a: &Arc<StateSpace>, b: &Arc<StateSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn ensure_same_space(a: &Arc<StateSpace>, b: &Arc<StateSpace>) -> Result<()> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(format!(
            "[{}] vs [{}]",
            a.names().join(" "),
            b.names().join(" ")
        )))
    }
}

/// Total map from events to events over a fixed state space.
///
/// Ordered pointwise: `K <= J` iff `K(A) ⊆ J(A)` for every event `A`.
/// Operators over different spaces compare as `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KnowledgeOperator {
    space: Arc<StateSpace>,
    table: Arc<[Event]>,
}

impl KnowledgeOperator {
    pub fn from_fn(space: &Arc<StateSpace>, mut f: impl FnMut(Event) -> Event) -> Self {
        let full = space.full();
        let table: Arc<[Event]> = space.events().map(|a| f(a) & full).collect();
        Self {
            space: Arc::clone(space),
            table,
        }
    }

    /// Builds an operator from a table indexed by event mask.
    pub fn from_table(space: &Arc<StateSpace>, table: Vec<Event>) -> Result<Self> {
        if table.len() != space.num_events() {
            return Err(Error::Argument(format!(
                "operator table has {} rows, expected {}",
                table.len(),
                space.num_events()
            )));
        }
        let full = space.full();
        if let Some(bad) = table.iter().find(|e| !e.is_subset(full)) {
            return Err(Error::Argument(format!(
                "image {:#b} mentions undeclared states",
                bad.bits()
            )));
        }
        Ok(Self {
            space: Arc::clone(space),
            table: table.into(),
        })
    }

    /// `K(A) = A`.
    pub fn identity(space: &Arc<StateSpace>) -> Self {
        Self::from_fn(space, |a| a)
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn apply(&self, event: Event) -> Event {
        self.table[event.index()]
    }

    pub fn table(&self) -> &[Event] {
        &self.table
    }

    /// `(A, K(A))` in mask order.
    pub fn entries(&self) -> impl Iterator<Item = (Event, Event)> + '_ {
        self.table
            .iter()
            .enumerate()
            .map(|(i, &img)| (Event(i as u32), img))
    }

    /// Events where `self(A) ⊄ other(A)`, in mask order.
    pub fn leq_violations(&self, other: &Self) -> Result<Vec<Event>> {
        ensure_same_space(&self.space, &other.space)?;
        Ok(self
            .entries()
            .filter(|&(a, img)| !img.is_subset(other.apply(a)))
            .map(|(a, _)| a)
            .collect())
    }
}

impl PartialOrd for KnowledgeOperator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !same_space(&self.space, &other.space) {
            return None;
        }
        let (mut le, mut ge) = (true, true);
        for (a, b) in self.table.iter().zip(other.table.iter()) {
            le &= a.is_subset(*b);
            ge &= b.is_subset(*a);
            if !le && !ge {
                return None;
            }
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Debug for KnowledgeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for a in self.space.events_table_order() {
            map.entry(
                &self.space.format_event(a),
                &self.space.format_event(self.apply(a)),
            );
        }
        map.finish()
    }
}

/// Binary relation on the state space, stored as lower contour sets `P(ω)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PossibilityRelation {
    space: Arc<StateSpace>,
    contour: Vec<Event>,
}

impl PossibilityRelation {
    pub fn from_contours(space: &Arc<StateSpace>, contour: Vec<Event>) -> Result<Self> {
        if contour.len() != space.len() {
            return Err(Error::Argument(format!(
                "relation lists {} contour sets, expected {}",
                contour.len(),
                space.len()
            )));
        }
        let full = space.full();
        if contour.iter().any(|c| !c.is_subset(full)) {
            return Err(Error::Argument("contour set mentions undeclared states".into()));
        }
        Ok(Self {
            space: Arc::clone(space),
            contour,
        })
    }

    pub fn from_fn(space: &Arc<StateSpace>, mut f: impl FnMut(usize) -> Event) -> Self {
        let full = space.full();
        Self {
            space: Arc::clone(space),
            contour: (0..space.len()).map(|w| f(w) & full).collect(),
        }
    }

    /// Builds the relation holding exactly the pairs `(ω, ω')` accepted by `f`.
    pub fn from_pairs(space: &Arc<StateSpace>, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let n = space.len();
        Self::from_fn(space, |w| Event::from_states((0..n).filter(|&v| f(w, v))))
    }

    /// `P(ω) = {ω}`.
    pub fn identity(space: &Arc<StateSpace>) -> Self {
        Self::from_fn(space, Event::singleton)
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn contour(&self, state: usize) -> Event {
        self.contour[state]
    }

    pub fn contours(&self) -> &[Event] {
        &self.contour
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        self.contour[from].contains(to)
    }

    /// Pairwise inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self
                .contour
                .iter()
                .zip(&other.contour)
                .all(|(a, b)| a.is_subset(*b))
    }
}

impl fmt::Debug for PossibilityRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (w, c) in self.contour.iter().enumerate() {
            map.entry(&self.space.name(w), &self.space.format_event(*c));
        }
        map.finish()
    }
}

fn first_space<'a, T>(items: &'a [T], space_of: impl Fn(&T) -> &Arc<StateSpace>) -> Result<&'a Arc<StateSpace>> {
    let first = items
        .first()
        .ok_or_else(|| Error::Argument("expected a non-empty list".into()))?;
    let space = space_of(first);
    for item in &items[1..] {
        ensure_same_space(space, space_of(item))?;
    }
    Ok(space)
}

/// Pointwise union `A ↦ ∪_i K_i(A)`.
pub fn operator_union(ops: &[KnowledgeOperator]) -> Result<KnowledgeOperator> {
    let space = first_space(ops, |k| &k.space)?;
    Ok(KnowledgeOperator::from_fn(space, |a| {
        ops.iter().fold(Event::EMPTY, |acc, k| acc | k.apply(a))
    }))
}

/// `K ≤ J` in the pointwise order.
pub fn operator_leq(k: &KnowledgeOperator, j: &KnowledgeOperator) -> Result<bool> {
    ensure_same_space(&k.space, &j.space)?;
    Ok(k.le(j))
}

/// Pointwise intersection `ω ↦ ∩_i P_i(ω)`.
pub fn relation_intersection(rels: &[PossibilityRelation]) -> Result<PossibilityRelation> {
    let space = first_space(rels, |p| &p.space)?;
    Ok(PossibilityRelation::from_fn(space, |w| {
        rels.iter().fold(space.full(), |acc, p| acc & p.contour(w))
    }))
}

pub(crate) fn check_same_space<T>(
    items: &[T],
    space_of: impl Fn(&T) -> &Arc<StateSpace>,
) -> Result<Arc<StateSpace>> {
    first_space(items, space_of).map(Arc::clone)
}
