use std::fmt;
use std::sync::Arc;

use crate::axioms::{check_operator, check_relation, Axiom};
use crate::duality::{
    operator_from_relation, relation_from_operator, relation_from_operator_morris,
    relation_from_operator_unchecked,
};
use crate::engine::{distributed_knowledge_closed_form, simulate, GroupModel, DEFAULT_MAX_ROUNDS};
use crate::error::Result;
use crate::model::{operator_union, Event, KnowledgeOperator, PossibilityRelation, StateSpace};
use crate::oracle::naive::{naive_distributive_closure, NAIVE_MAX_STATES};
use crate::revision::{
    distributive_closure, full_introspection_op, negative_introspection_step, operator_images,
    positive_introspection_op,
};
use crate::traces::{left_nary_trace, left_trace, minimal_sets, symmetric_part, GroupRelations};
use crate::types::{apply_revision_type, type_leq, RevisionType, Stage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Compare simulation and closed form for every one of the `5^N` type
    /// profiles, not just the model's own.
    pub exhaustive_profiles: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            exhaustive_profiles: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Number of instances checked.
    Pass(usize),
    Fail(String),
    /// Preconditions do not hold on this model.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Fail(_)))
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn count_passed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Pass(_)))
            .count()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Pass(n) => write!(f, "pass ({n} cases)"),
            CheckOutcome::Fail(w) => write!(f, "FAIL: {w}"),
            CheckOutcome::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

type Outcome = std::result::Result<usize, String>;

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Operators and relations derived once per model and shared by the checks.
struct Ctx<'a> {
    model: &'a GroupModel,
    space: Arc<StateSpace>,
    ops: Vec<KnowledgeOperator>,
    union: KnowledgeOperator,
    /// Veridical operators the revision laws are exercised on.
    subjects: Vec<(String, KnowledgeOperator)>,
    /// Set when every agent is in K1.
    group: Option<Group>,
    /// Relations for the duality laws.
    relations: Vec<(String, PossibilityRelation)>,
}

struct Group {
    rels: Vec<PossibilityRelation>,
    derived: GroupRelations,
}

impl Ctx<'_> {
    fn ev(&self, e: Event) -> String {
        self.space.format_event(e)
    }

    fn state(&self, w: usize) -> &str {
        self.space.name(w)
    }

    fn op_eq(&self, a: &KnowledgeOperator, b: &KnowledgeOperator, label: &str) -> std::result::Result<(), String> {
        match self.space.events().find(|&e| a.apply(e) != b.apply(e)) {
            None => Ok(()),
            Some(e) => Err(format!(
                "{label}: differ at {} ({} vs {})",
                self.ev(e),
                self.ev(a.apply(e)),
                self.ev(b.apply(e))
            )),
        }
    }

    fn op_leq(&self, a: &KnowledgeOperator, b: &KnowledgeOperator, label: &str) -> std::result::Result<(), String> {
        match self.space.events().find(|&e| !a.apply(e).is_subset(b.apply(e))) {
            None => Ok(()),
            Some(e) => Err(format!("{label}: fails at {}", self.ev(e))),
        }
    }

    fn rel_eq(&self, a: &PossibilityRelation, b: &PossibilityRelation, label: &str) -> std::result::Result<(), String> {
        match (0..self.space.len()).find(|&w| a.contour(w) != b.contour(w)) {
            None => Ok(()),
            Some(w) => Err(format!(
                "{label}: differ at {} ({} vs {})",
                self.state(w),
                self.ev(a.contour(w)),
                self.ev(b.contour(w))
            )),
        }
    }

    fn rel_sub(&self, a: &PossibilityRelation, b: &PossibilityRelation, label: &str) -> std::result::Result<(), String> {
        match (0..self.space.len()).find(|&w| !a.contour(w).is_subset(b.contour(w))) {
            None => Ok(()),
            Some(w) => Err(format!("{label}: fails at {}", self.state(w))),
        }
    }

    fn k0_operators(&self) -> Vec<(String, KnowledgeOperator)> {
        let mut out: Vec<(String, KnowledgeOperator)> = self
            .model
            .agents()
            .iter()
            .filter(|a| check_operator(&a.operator).classes.k0)
            .map(|a| (a.name.clone(), a.operator.clone()))
            .collect();
        out.extend(
            self.relations
                .iter()
                .map(|(n, r)| (format!("K[{n}]"), operator_from_relation(r))),
        );
        out
    }
}

/// Runs every structural law that applies to `model` and reports each one.
pub fn verify_propositions(model: &GroupModel, options: VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    let ops = model.operators();
    if ops.is_empty() {
        report.checks.push(CheckResult {
            name: "model: agents present",
            outcome: CheckOutcome::Fail("model has no agents".into()),
        });
        return report;
    }
    let union = operator_union(&ops).expect("agents share one space");
    let mut subjects: Vec<(String, KnowledgeOperator)> = model
        .agents()
        .iter()
        .filter(|a| check_operator(&a.operator).classes.veridical)
        .map(|a| (a.name.clone(), a.operator.clone()))
        .collect();
    if check_operator(&union).classes.veridical {
        subjects.push(("∪K".into(), union.clone()));
        for (label, stage) in [("(∪K)⁺", Stage::Positive), ("(∪K)±", Stage::Full), ("(∪K)⁻", Stage::Negative)] {
            if let Ok(k) = stage.apply(&union) {
                subjects.push((label.into(), k));
            }
        }
    }
    let all_k1 = ops.iter().all(|k| check_operator(k).classes.k1);
    let group = all_k1.then(|| {
        let rels: Vec<PossibilityRelation> = ops
            .iter()
            .map(|k| relation_from_operator(k).expect("K1 operators are distributive"))
            .collect();
        let derived = GroupRelations::of(&rels).expect("agents share one space");
        Group { rels, derived }
    });
    let mut relations: Vec<(String, PossibilityRelation)> = model
        .agents()
        .iter()
        .map(|a| (format!("P[{}]", a.name), relation_from_operator_unchecked(&a.operator)))
        .collect();
    if let Some(g) = &group {
        let d = &g.derived;
        relations.extend([
            ("∩P".to_string(), d.intersection.clone()),
            ("T_P".to_string(), d.nary_trace.clone()),
            ("T_∩P".to_string(), d.intersection_trace.clone()),
            ("E_P".to_string(), d.nary_symmetric.clone()),
            ("E_∩P".to_string(), d.intersection_symmetric.clone()),
        ]);
    }
    let ctx = Ctx {
        model,
        space: Arc::clone(model.space()),
        ops,
        union,
        subjects,
        group,
        relations,
    };

    let mut push = |name: &'static str, outcome: CheckOutcome| {
        report.checks.push(CheckResult { name, outcome });
    };
    let run = |f: &dyn Fn(&Ctx) -> Outcome| match f(&ctx) {
        Ok(n) => CheckOutcome::Pass(n),
        Err(w) => CheckOutcome::Fail(w),
    };
    let no_subjects = "no veridical operator in the model";
    let not_k1 = "some agent is outside K1";

    push("duality: operator round trip", run(&check_operator_round_trip));
    push("duality: relation round trip", run(&check_relation_round_trip));
    push("duality: alternative inverse", run(&check_alternative_inverse));
    push("duality: order reversal", run(&check_order_reversal));
    push("duality: class correspondence", run(&check_class_correspondence));
    push("axioms: class nesting", run(&check_class_nesting));

    let revision_checks: [(&'static str, &dyn Fn(&Ctx) -> Outcome); 9] = [
        ("revision: images", &check_images),
        ("revision: extensive", &check_extensive),
        ("revision: idempotent", &check_idempotent),
        ("revision: result axioms", &check_revision_results),
        ("revision: fixed points", &check_fixed_points),
        ("revision: negative step twice", &check_negative_twice),
        ("revision: closure preserves introspection", &check_preservation),
        ("revision: least operator", &check_least_operator),
        ("revision: closure monotone", &check_closure_monotone),
    ];
    for (name, f) in revision_checks {
        if ctx.subjects.is_empty() {
            push(name, CheckOutcome::Skipped(no_subjects.into()));
        } else {
            push(name, run(f));
        }
    }
    let naive = if ctx.subjects.is_empty() {
        CheckOutcome::Skipped(no_subjects.into())
    } else if ctx.space.len() > NAIVE_MAX_STATES {
        CheckOutcome::Skipped(format!("more than {NAIVE_MAX_STATES} states"))
    } else {
        run(&check_naive_closure)
    };
    push("closure: naive enumeration agrees", naive);

    let group_checks: [(&'static str, &dyn Fn(&Ctx) -> Outcome); 14] = [
        ("types: preorder soundness", &check_type_soundness),
        ("types: result classes", &check_type_classes),
        ("types: pipelines terminate", &check_pipeline_termination),
        ("representation: (d) by ∩P", &|c| check_representation(c, RevisionType::D)),
        ("representation: (+d) by T_P", &|c| check_representation(c, RevisionType::PD)),
        ("representation: (d+d) by T_∩P", &|c| check_representation(c, RevisionType::DPD)),
        ("representation: (±d) by E_P", &|c| check_representation(c, RevisionType::FD)),
        ("representation: (d±d) by E_∩P", &|c| check_representation(c, RevisionType::DFD)),
        ("traces: minimal sets", &check_minimal_sets),
        ("traces: preorders and equivalences", &check_trace_shapes),
        ("traces: inclusion chains", &check_chains),
        ("traces: preorder inputs collapse", &check_p2_chain),
        ("traces: n-ary trace equivalences", &check_trace_equivalences),
        ("traces: symmetric part equivalences", &check_symmetric_equivalences),
    ];
    for (name, f) in group_checks {
        if ctx.group.is_none() {
            push(name, CheckOutcome::Skipped(not_k1.into()));
        } else if name == "traces: preorder inputs collapse"
            && !ctx.group.as_ref().is_some_and(|g| g.rels.iter().all(|p| check_relation(p).p2()))
        {
            push(name, CheckOutcome::Skipped("some relation is not transitive".into()));
        } else {
            push(name, run(f));
        }
    }

    let engine_skip = if ctx.group.is_none() {
        Some(not_k1.to_string())
    } else if ctx.ops.len() < 2 {
        Some("fewer than two agents".to_string())
    } else {
        None
    };
    match &engine_skip {
        Some(why) => push("engine: model profile", CheckOutcome::Skipped(why.clone())),
        None => push("engine: model profile", run(&|c| check_engine(c, &[c.model.types()]))),
    }
    let all_profiles = match (&engine_skip, options.exhaustive_profiles) {
        (Some(why), _) => CheckOutcome::Skipped(why.clone()),
        (None, false) => CheckOutcome::Skipped("exhaustive profiles disabled".into()),
        (None, true) if ctx.ops.len() > 4 => CheckOutcome::Skipped("more than four agents".into()),
        (None, true) => run(&|c| check_engine(c, &all_type_profiles(c.ops.len()))),
    };
    push("engine: all type profiles", all_profiles);
    report
}

/// Every assignment of the five types to `n` agents.
pub(crate) fn all_type_profiles(n: usize) -> Vec<Vec<RevisionType>> {
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

fn check_operator_round_trip(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (name, k) in c.k0_operators() {
        let p = lib(relation_from_operator(&k))?;
        c.op_eq(&operator_from_relation(&p), &k, &format!("K[P[{name}]] vs {name}"))?;
        n += 1;
    }
    Ok(n)
}

fn check_relation_round_trip(c: &Ctx) -> Outcome {
    for (name, p) in &c.relations {
        let back = lib(relation_from_operator(&operator_from_relation(p)))?;
        c.rel_eq(&back, p, name)?;
    }
    Ok(c.relations.len())
}

fn check_alternative_inverse(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (name, k) in c.k0_operators() {
        let p = lib(relation_from_operator(&k))?;
        let q = lib(relation_from_operator_morris(&k))?;
        c.rel_eq(&q, &p, &name)?;
        n += 1;
    }
    Ok(n)
}

fn check_order_reversal(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (a, p) in &c.relations {
        for (b, q) in &c.relations {
            let sub = p.is_subset(q);
            let rev = operator_from_relation(q) <= operator_from_relation(p);
            ensure(sub == rev, || format!("{a} ⊆ {b} is {sub} but K[{b}] ≤ K[{a}] is {rev}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn check_class_correspondence(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (name, k) in c.k0_operators() {
        let classes = check_operator(&k).classes;
        let rel = check_relation(&lib(relation_from_operator(&k))?);
        ensure(classes.k0, || format!("{name}: expected distributive with necessitation"))?;
        for (label, op_side, rel_side) in [
            ("K1/P1", classes.k1, rel.p1()),
            ("K2/P2", classes.k2, rel.p2()),
            ("K3/P3", classes.k3, rel.p3()),
        ] {
            ensure(op_side == rel_side, || {
                format!("{name}: {label} operator side {op_side}, relation side {rel_side}")
            })?;
        }
        n += 1;
    }
    Ok(n)
}

fn check_class_nesting(c: &Ctx) -> Outcome {
    let mut all: Vec<(String, KnowledgeOperator)> = c.subjects.clone();
    all.extend(c.k0_operators());
    for (name, k) in &all {
        let r = check_operator(k);
        let cl = r.classes;
        ensure(!cl.k3 || cl.k2, || format!("{name}: K3 class without K2 class"))?;
        ensure(!cl.k2 || cl.k1, || format!("{name}: K2 class without K1 class"))?;
        ensure(!cl.k1 || cl.k0, || format!("{name}: K1 class without K0 class"))?;
        ensure(!r.holds(Axiom::Distributivity) || r.holds(Axiom::Monotonicity), || {
            format!("{name}: distributive but not monotone")
        })?;
        ensure(
            !(cl.k1 && r.holds(Axiom::NegativeIntrospection)) || r.holds(Axiom::PositiveIntrospection),
            || format!("{name}: negatively but not positively introspective"),
        )?;
    }
    Ok(all.len())
}

fn check_images(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        let images = operator_images(k);
        for a in c.space.events() {
            ensure(images.img.contains(a) == images.img_not.contains(c.space.complement(a)), || {
                format!("{name}: image and negated image disagree at {}", c.ev(a))
            })?;
        }
        ensure(images.fix.is_subset(&images.img), || format!("{name}: fixed point outside image"))?;
    }
    Ok(c.subjects.len())
}

fn check_extensive(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        let plus = lib(positive_introspection_op(k))?;
        let full = lib(full_introspection_op(k))?;
        c.op_leq(k, &plus, &format!("{name} ≤ {name}⁺"))?;
        c.op_leq(&plus, &full, &format!("{name}⁺ ≤ {name}±"))?;
        c.op_leq(k, &lib(negative_introspection_step(k))?, &format!("{name} ≤ {name}⁻"))?;
        c.op_leq(k, &lib(distributive_closure(k))?, &format!("{name} ≤ {name}ᵈ"))?;
    }
    Ok(c.subjects.len())
}

fn check_idempotent(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        for stage in [Stage::Positive, Stage::Full, Stage::Distributive] {
            let once = lib(stage.apply(k))?;
            let twice = lib(stage.apply(&once))?;
            c.op_eq(&twice, &once, &format!("{name} twice {}", stage.symbol()))?;
        }
    }
    Ok(c.subjects.len())
}

fn check_revision_results(c: &Ctx) -> Outcome {
    use Axiom::*;
    for (name, k) in &c.subjects {
        let expectations: [(Stage, &[Axiom]); 3] = [
            (Stage::Positive, &[Veridicality, PositiveIntrospection]),
            (
                Stage::Full,
                &[Veridicality, Necessitation, PositiveIntrospection, NegativeIntrospection],
            ),
            (Stage::Distributive, &[Veridicality, Distributivity]),
        ];
        for (stage, axioms) in expectations {
            let report = check_operator(&lib(stage.apply(k))?);
            if let Some((axiom, w)) = report.first_failure(axioms) {
                return Err(format!(
                    "{name} revised by {}: {axiom} fails at {}",
                    stage.symbol(),
                    w.format(&c.space)
                ));
            }
        }
    }
    Ok(c.subjects.len())
}

fn check_fixed_points(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        let r = check_operator(k);
        for (stage, axiom) in [
            (Stage::Positive, Axiom::PositiveIntrospection),
            (Stage::Full, Axiom::NegativeIntrospection),
            (Stage::Distributive, Axiom::Distributivity),
        ] {
            let fixed = lib(stage.apply(k))? == *k;
            ensure(fixed == r.holds(axiom), || {
                format!(
                    "{name}: fixed by {} is {fixed} but {axiom} holds is {}",
                    stage.symbol(),
                    r.holds(axiom)
                )
            })?;
        }
    }
    Ok(c.subjects.len())
}

fn check_negative_twice(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        let twice = lib(negative_introspection_step(&lib(negative_introspection_step(k))?))?;
        c.op_eq(&twice, &lib(full_introspection_op(k))?, &format!("{name}⁻⁻ vs {name}±"))?;
    }
    Ok(c.subjects.len())
}

fn check_preservation(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (name, k) in &c.subjects {
        let before = check_operator(k);
        let after = check_operator(&lib(distributive_closure(k))?);
        for axiom in [Axiom::PositiveIntrospection, Axiom::NegativeIntrospection] {
            if before.holds(axiom) {
                ensure(after.holds(axiom), || format!("{name}: closure loses {axiom}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn check_least_operator(c: &Ctx) -> Outcome {
    let mut candidates: Vec<KnowledgeOperator> = Vec::new();
    for (_, k) in &c.subjects {
        candidates.push(k.clone());
        for stage in [Stage::Positive, Stage::Full, Stage::Distributive] {
            candidates.push(lib(stage.apply(k))?);
        }
    }
    candidates.push(KnowledgeOperator::identity(&c.space));
    let mut n = 0;
    for (name, k) in &c.subjects {
        let images = operator_images(k);
        let both = images.img.union(&images.img_not);
        let plus = lib(positive_introspection_op(k))?;
        let full = lib(full_introspection_op(k))?;
        for j in &candidates {
            if !(k <= j) {
                continue;
            }
            let fix = operator_images(j).fix;
            if images.img.is_subset(&fix) {
                c.op_leq(&plus, j, &format!("{name}⁺ below an upper bound fixing Img"))?;
                n += 1;
            }
            if both.is_subset(&fix) {
                c.op_leq(&full, j, &format!("{name}± below an upper bound fixing Img ∪ Img¬"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn check_closure_monotone(c: &Ctx) -> Outcome {
    let mut n = 0;
    for (a, k) in &c.subjects {
        for (b, j) in &c.subjects {
            if k <= j {
                let (kd, jd) = (lib(distributive_closure(k))?, lib(distributive_closure(j))?);
                c.op_leq(&kd, &jd, &format!("{a}ᵈ ≤ {b}ᵈ"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn check_naive_closure(c: &Ctx) -> Outcome {
    for (name, k) in &c.subjects {
        let naive = lib(naive_distributive_closure(k))?;
        c.op_eq(&lib(distributive_closure(k))?, &naive, &format!("{name}ᵈ fast vs naive"))?;
    }
    Ok(c.subjects.len())
}

fn revised_union(c: &Ctx) -> std::result::Result<Vec<(RevisionType, KnowledgeOperator)>, String> {
    RevisionType::ALL
        .iter()
        .map(|&t| lib(apply_revision_type(&c.union, t)).map(|k| (t, k)))
        .collect()
}

fn check_type_soundness(c: &Ctx) -> Outcome {
    let revised = revised_union(c)?;
    let mut n = 0;
    for (s, ks) in &revised {
        for (t, kt) in &revised {
            if type_leq(*s, *t) {
                c.op_leq(ks, kt, &format!("(∪K)^{s} ≤ (∪K)^{t}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn check_type_classes(c: &Ctx) -> Outcome {
    for (t, k) in revised_union(c)? {
        let cl = check_operator(&k).classes;
        let ok = match t {
            RevisionType::D => cl.k1,
            RevisionType::PD | RevisionType::DPD => cl.k2,
            RevisionType::FD | RevisionType::DFD => cl.k3,
        };
        ensure(ok, || format!("(∪K)^{t} lands in {cl:?}"))?;
    }
    Ok(RevisionType::ALL.len())
}

fn check_pipeline_termination(c: &Ctx) -> Outcome {
    for (t, k) in revised_union(c)? {
        let stages = t.stages();
        let last = *stages.last().expect("pipelines are non-empty");
        c.op_eq(&lib(last.apply(&k))?, &k, &format!("(∪K)^{t} re-closed"))?;
        if let Some(intro) = stages.iter().find(|s| **s != Stage::Distributive) {
            c.op_eq(&lib(intro.apply(&k))?, &k, &format!("(∪K)^{t} re-introspected"))?;
        }
    }
    Ok(RevisionType::ALL.len())
}

fn check_representation(c: &Ctx, t: RevisionType) -> Outcome {
    let g = c.group.as_ref().expect("guarded by caller");
    let rel = match t {
        RevisionType::D => &g.derived.intersection,
        RevisionType::PD => &g.derived.nary_trace,
        RevisionType::DPD => &g.derived.intersection_trace,
        RevisionType::FD => &g.derived.nary_symmetric,
        RevisionType::DFD => &g.derived.intersection_symmetric,
    };
    let revised = lib(apply_revision_type(&c.union, t))?;
    c.op_eq(&revised, &operator_from_relation(rel), &format!("(∪K)^{t} vs relation path"))?;
    c.rel_eq(&lib(relation_from_operator(&revised))?, rel, &format!("relation of (∪K)^{t}"))?;
    Ok(1)
}

fn check_minimal_sets(c: &Ctx) -> Outcome {
    let g = c.group.as_ref().expect("guarded by caller");
    let min = lib(minimal_sets(&g.rels))?;
    for w in 0..c.space.len() {
        let contours: Vec<Event> = g.rels.iter().map(|p| p.contour(w)).collect();
        for &m in min.at(w) {
            ensure(contours.contains(&m), || format!("Min({}) holds a foreign set", c.state(w)))?;
            ensure(min.at(w).iter().all(|&o| o == m || !o.is_subset(m)), || {
                format!("Min({}) is not an antichain", c.state(w))
            })?;
        }
        ensure(contours.iter().all(|&p| min.at(w).iter().any(|&m| m.is_subset(p))), || {
            format!("Min({}) misses a minimal contour", c.state(w))
        })?;
    }
    let direct = symmetric_part(&lib(left_nary_trace(&g.rels))?);
    c.rel_eq(&g.derived.nary_symmetric, &direct, "E_P from minimal sets vs from T_P")?;
    Ok(c.space.len())
}

fn check_trace_shapes(c: &Ctx) -> Outcome {
    let g = c.group.as_ref().expect("guarded by caller");
    let mut preorders: Vec<(String, PossibilityRelation)> = g
        .rels
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("T_P{}", i + 1), left_trace(p)))
        .collect();
    preorders.push(("T_P".into(), g.derived.nary_trace.clone()));
    preorders.push(("T_∩P".into(), g.derived.intersection_trace.clone()));
    for (name, t) in &preorders {
        ensure(check_relation(t).p2(), || format!("{name} is not a preorder"))?;
    }
    for (name, e) in [("E_P", &g.derived.nary_symmetric), ("E_∩P", &g.derived.intersection_symmetric)] {
        ensure(check_relation(e).is_equivalence(), || format!("{name} is not an equivalence"))?;
    }
    Ok(preorders.len() + 2)
}

fn check_chains(c: &Ctx) -> Outcome {
    let d = &c.group.as_ref().expect("guarded by caller").derived;
    c.rel_sub(&d.intersection_trace, &d.intersection, "T_∩P ⊆ ∩P")?;
    c.rel_sub(&d.intersection_symmetric, &d.intersection_trace, "E_∩P ⊆ T_∩P")?;
    c.rel_sub(&d.nary_symmetric, &d.intersection_symmetric, "E_P ⊆ E_∩P")?;
    c.rel_sub(&d.nary_trace, &d.intersection_trace, "T_P ⊆ T_∩P")?;
    c.rel_sub(&d.nary_symmetric, &d.nary_trace, "E_P ⊆ T_P")?;
    let r = revised_union(c)?;
    let by = |t: RevisionType| &r.iter().find(|(u, _)| *u == t).expect("all types").1;
    use RevisionType::*;
    for chain in [[D, DPD, DFD, FD], [D, DPD, PD, FD]] {
        for pair in chain.windows(2) {
            c.op_leq(by(pair[0]), by(pair[1]), &format!("(∪K)^{} ≤ (∪K)^{}", pair[0], pair[1]))?;
        }
    }
    Ok(11)
}

fn check_p2_chain(c: &Ctx) -> Outcome {
    let d = &c.group.as_ref().expect("guarded by caller").derived;
    c.rel_eq(&d.intersection, &d.intersection_trace, "∩P vs T_∩P")?;
    c.rel_eq(&d.intersection_trace, &d.nary_trace, "T_∩P vs T_P")?;
    c.rel_sub(&d.intersection_symmetric, &d.nary_trace, "E_∩P ⊆ T_P")?;
    c.rel_eq(&d.intersection_symmetric, &d.nary_symmetric, "E_∩P vs E_P")?;
    Ok(4)
}

/// `ω` forwards to `ω'` under `k` when every event known at `ω` is known at `ω'`.
fn forwards(space: &StateSpace, k: &KnowledgeOperator, w: usize, v: usize) -> bool {
    space.events().all(|a| !k.apply(a).contains(w) || k.apply(a).contains(v))
}

fn check_trace_equivalences(c: &Ctx) -> Outcome {
    let g = c.group.as_ref().expect("guarded by caller");
    let plus = lib(positive_introspection_op(&c.union))?;
    let plus_d = lib(apply_revision_type(&c.union, RevisionType::PD))?;
    let q = lib(relation_from_operator(&plus_d))?;
    let n = c.space.len();
    for w in 0..n {
        for v in 0..n {
            let statements = [
                g.derived.nary_trace.contains(w, v),
                forwards(&c.space, &c.union, w, v),
                forwards(&c.space, &plus, w, v),
                forwards(&c.space, &plus_d, w, v),
                q.contains(w, v),
            ];
            ensure(statements.iter().all(|&s| s == statements[0]), || {
                format!("({}, {}): statements disagree {statements:?}", c.state(w), c.state(v))
            })?;
        }
    }
    Ok(n * n)
}

fn check_symmetric_equivalences(c: &Ctx) -> Outcome {
    let g = c.group.as_ref().expect("guarded by caller");
    let full = lib(full_introspection_op(&c.union))?;
    let full_d = lib(apply_revision_type(&c.union, RevisionType::FD))?;
    let q = lib(relation_from_operator(&full_d))?;
    let both = |k: &KnowledgeOperator, w, v| forwards(&c.space, k, w, v) && forwards(&c.space, k, v, w);
    let n = c.space.len();
    for w in 0..n {
        for v in 0..n {
            let statements = [
                g.derived.nary_symmetric.contains(w, v),
                both(&c.union, w, v),
                both(&full, w, v),
                both(&full_d, w, v),
                q.contains(w, v),
            ];
            ensure(statements.iter().all(|&s| s == statements[0]), || {
                format!("({}, {}): statements disagree {statements:?}", c.state(w), c.state(v))
            })?;
        }
    }
    Ok(n * n)
}

fn check_engine(c: &Ctx, profiles: &[Vec<RevisionType>]) -> Outcome {
    let e_p = operator_from_relation(&c.group.as_ref().expect("guarded by caller").derived.nary_symmetric);
    for types in profiles {
        let m = lib(c.model.with_types(types))?;
        let label = types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
        let trace = lib(simulate(&m, DEFAULT_MAX_ROUNDS))?;
        let closed = lib(distributed_knowledge_closed_form(&m))?;
        c.op_eq(&trace.dk, &closed.dk, &format!("[{label}] simulated vs closed form"))?;
        ensure(trace.converged_at <= 2, || {
            format!("[{label}] converged only at round {}", trace.converged_at)
        })?;
        ensure(trace.is_monotone(), || format!("[{label}] some agent lost knowledge"))?;
        c.op_eq(&lib(trace.union_over_all_rounds())?, &trace.dk, &format!("[{label}] union over rounds"))?;
        if closed.dispatch.is_wise_crowd() {
            c.op_eq(&closed.dk, &e_p, &format!("[{label}] wise-crowd result vs E_P"))?;
        }
    }
    Ok(profiles.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_model, GeneratorConfig, TargetClass};

    #[test]
    fn random_models_pass_every_check() {
        for (seed, class) in [(3, TargetClass::K1), (4, TargetClass::K2), (5, TargetClass::K3), (6, TargetClass::Kv)] {
            let m = random_model(&GeneratorConfig::new(seed, 4, 3, class)).unwrap();
            let r = verify_propositions(&m, VerifyOptions::default());
            let failures: Vec<_> = r.failures().collect();
            assert!(failures.is_empty(), "{class}: {failures:?}");
        }
    }

    #[test]
    fn kv_models_skip_group_checks() {
        let m = random_model(&GeneratorConfig::new(9, 3, 2, TargetClass::Kv)).unwrap();
        let r = verify_propositions(&m, VerifyOptions::default());
        assert!(matches!(r.get("engine: model profile"), Some(CheckOutcome::Skipped(_))));
        assert!(matches!(r.get("revision: extensive"), Some(CheckOutcome::Pass(_))));
    }

    #[test]
    fn profile_count() {
        assert_eq!(all_type_profiles(3).len(), 125);
        assert_eq!(all_type_profiles(1), RevisionType::ALL.map(|t| vec![t]).to_vec());
    }
}
