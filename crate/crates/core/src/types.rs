//! Revision types: which revision operators an agent uses, and in which order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::KnowledgeOperator;
use crate::revision::{
    distributive_closure, full_introspection_op, negative_introspection_step,
    positive_introspection_op,
};

/// One revision operator, as a pipeline stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    /// `(.)ᵈ`
    Distributive,
    /// `(.)⁺`
    Positive,
    /// `(.)±`
    Full,
    /// `(.)⁻`
    Negative,
}

impl Stage {
    pub fn apply(self, k: &KnowledgeOperator) -> Result<KnowledgeOperator> {
        match self {
            Stage::Distributive => distributive_closure(k),
            Stage::Positive => positive_introspection_op(k),
            Stage::Full => full_introspection_op(k),
            Stage::Negative => negative_introspection_step(k),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Stage::Distributive => "d",
            Stage::Positive => "+",
            Stage::Full => "±",
            Stage::Negative => "-",
        }
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "d" | "𝐝" => Ok(Stage::Distributive),
            "+" | "＋" => Ok(Stage::Positive),
            "±" | "pm" => Ok(Stage::Full),
            "-" | "−" => Ok(Stage::Negative),
            other => Err(Error::Argument(format!(
                "unknown revision stage `{other}` (expected d, +, pm/± or -)"
            ))),
        }
    }
}

/// Applies the stages left to right.
pub fn apply_pipeline(k: &KnowledgeOperator, stages: &[Stage]) -> Result<KnowledgeOperator> {
    stages
        .iter()
        .try_fold(k.clone(), |acc, stage| stage.apply(&acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RevisionType {
    /// `(d)`: distributive closure only.
    D,
    /// `(+d)`
    PD,
    /// `(d+d)`
    DPD,
    /// `(±d)`
    FD,
    /// `(d±d)`
    DFD,
}

impl RevisionType {
    pub const ALL: [RevisionType; 5] = [
        RevisionType::D,
        RevisionType::PD,
        RevisionType::DPD,
        RevisionType::FD,
        RevisionType::DFD,
    ];

    pub fn stages(self) -> &'static [Stage] {
        use Stage::*;
        match self {
            RevisionType::D => &[Distributive],
            RevisionType::PD => &[Positive, Distributive],
            RevisionType::DPD => &[Distributive, Positive, Distributive],
            RevisionType::FD => &[Full, Distributive],
            RevisionType::DFD => &[Distributive, Full, Distributive],
        }
    }

    /// Tag accepted in model files and on the command line.
    pub fn ascii(self) -> &'static str {
        match self {
            RevisionType::D => "d",
            RevisionType::PD => "+d",
            RevisionType::DPD => "d+d",
            RevisionType::FD => "pmd",
            RevisionType::DFD => "dpmd",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RevisionType::D => "d",
            RevisionType::PD => "+d",
            RevisionType::DPD => "d+d",
            RevisionType::FD => "±d",
            RevisionType::DFD => "d±d",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for RevisionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.symbol())
    }
}

impl FromStr for RevisionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        let normalized: String = inner
            .chars()
            .map(|c| match c {
                '𝐝' => 'd',
                '＋' => '+',
                c => c,
            })
            .collect();
        match normalized.as_str() {
            "d" => Ok(RevisionType::D),
            "+d" => Ok(RevisionType::PD),
            "d+d" => Ok(RevisionType::DPD),
            "±d" | "pmd" => Ok(RevisionType::FD),
            "d±d" | "dpmd" => Ok(RevisionType::DFD),
            _ => Err(Error::Argument(format!(
                "unknown revision type `{trimmed}` (expected d, +d, d+d, pmd or dpmd)"
            ))),
        }
    }
}

pub fn apply_revision_type(k: &KnowledgeOperator, theta: RevisionType) -> Result<KnowledgeOperator> {
    apply_pipeline(k, theta.stages())
}

/// Covering arcs of the revision-type preorder, lower type first.
const HASSE_ARCS: [(RevisionType, RevisionType); 5] = [
    (RevisionType::D, RevisionType::DPD),
    (RevisionType::DPD, RevisionType::PD),
    (RevisionType::DPD, RevisionType::DFD),
    (RevisionType::PD, RevisionType::FD),
    (RevisionType::DFD, RevisionType::FD),
];

/// `θ ⪯ θ'`: reachability along the covering arcs.
pub fn type_leq(lower: RevisionType, upper: RevisionType) -> bool {
    let mut reached = [false; 5];
    let mut stack = vec![lower];
    while let Some(t) = stack.pop() {
        if std::mem::replace(&mut reached[t.index()], true) {
            continue;
        }
        stack.extend(HASSE_ARCS.iter().filter(|(a, _)| *a == t).map(|(_, b)| *b));
    }
    reached[upper.index()]
}

/// Result of looking for a type that dominates a whole profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDominance {
    pub highest: Option<RevisionType>,
    /// Maximal types present, in declaration order of [`RevisionType::ALL`].
    pub maximal: Vec<RevisionType>,
}

pub fn highest_type(profile: &[RevisionType]) -> TypeDominance {
    let present: Vec<RevisionType> = RevisionType::ALL
        .into_iter()
        .filter(|t| profile.contains(t))
        .collect();
    let highest = present
        .iter()
        .copied()
        .find(|&top| present.iter().all(|&t| type_leq(t, top)));
    let maximal = present
        .iter()
        .copied()
        .filter(|&m| !present.iter().any(|&t| t != m && type_leq(m, t) && !type_leq(t, m)))
        .collect();
    TypeDominance { highest, maximal }
}

/// Agent ids paired with their revision types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeProfile {
    entries: Vec<(String, RevisionType)>,
}

impl TypeProfile {
    pub fn new(entries: Vec<(String, RevisionType)>) -> Result<Self> {
        for (i, (id, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::Argument(format!("duplicate agent `{id}`")));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(String, RevisionType)] {
        &self.entries
    }

    pub fn types(&self) -> Vec<RevisionType> {
        self.entries.iter().map(|(_, t)| *t).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RevisionType::*;

    #[test]
    fn parses_all_spellings() {
        for (text, t) in [
            ("d", D),
            ("(d)", D),
            ("+d", PD),
            ("(＋𝐝)", PD),
            ("d+d", DPD),
            ("pmd", FD),
            ("±d", FD),
            ("(±d)", FD),
            ("dpmd", DFD),
            ("d±d", DFD),
        ] {
            assert_eq!(text.parse::<RevisionType>().unwrap(), t, "{text}");
        }
        assert!("dd".parse::<RevisionType>().is_err());
        for t in RevisionType::ALL {
            assert_eq!(t.ascii().parse::<RevisionType>().unwrap(), t);
            assert_eq!(t.to_string().parse::<RevisionType>().unwrap(), t);
        }
    }

    #[test]
    fn preorder_matches_hasse_diagram() {
        assert!(type_leq(D, FD));
        assert!(!type_leq(PD, DFD));
        assert!(!type_leq(DFD, PD));
        for t in RevisionType::ALL {
            assert!(type_leq(t, t));
            assert!(type_leq(D, t));
            assert!(type_leq(t, FD));
        }
        assert!(type_leq(DPD, PD) && type_leq(DPD, DFD));
        assert!(!type_leq(PD, DPD));
    }

    #[test]
    fn preorder_is_antisymmetric_on_distinct_types() {
        for a in RevisionType::ALL {
            for b in RevisionType::ALL {
                if a != b {
                    assert!(!(type_leq(a, b) && type_leq(b, a)));
                }
            }
        }
    }

    #[test]
    fn highest_type_examples() {
        assert_eq!(highest_type(&[D, DPD, DFD]).highest, Some(DFD));
        let r = highest_type(&[D, PD, DFD]);
        assert_eq!(r.highest, None);
        assert_eq!(r.maximal, vec![PD, DFD]);
        assert_eq!(highest_type(&[FD, FD]).highest, Some(FD));
    }

    #[test]
    fn dispatch_is_exhaustive_for_small_profiles() {
        fn profiles(n: usize) -> Vec<Vec<RevisionType>> {
            (0..5usize.pow(n as u32))
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let t = RevisionType::ALL[code % 5];
                            code /= 5;
                            t
                        })
                        .collect()
                })
                .collect()
        }
        for n in 1..=4 {
            for p in profiles(n) {
                let has_top = highest_type(&p).highest.is_some();
                let crowd = !p.contains(&FD) && p.contains(&PD) && p.contains(&DFD);
                assert!(has_top ^ crowd, "{p:?}");
            }
        }
    }

    #[test]
    fn duplicate_agents_rejected() {
        assert!(TypeProfile::new(vec![("a".into(), D), ("a".into(), PD)]).is_err());
    }
}
