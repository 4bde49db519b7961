//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{column, ev, example, load, load_unvalidated, operator_mismatches, relation_mismatches};
use groupknow::oracle::{
    naive_distributive_closure, random_model, random_veridical_operator, verify_propositions,
    CheckOutcome, GeneratorConfig, TargetClass, VerifyOptions,
};
use groupknow::{
    apply_revision_type, distributed_knowledge_closed_form, distributive_closure,
    full_introspection_op, left_nary_trace, left_trace, operator_from_relation, operator_union,
    positive_introspection_op, relation_from_operator, simulate, Dispatch, Event,
    GroupRelations, KnowledgeOperator, PossibilityRelation, RevisionType, StateSpace,
    DEFAULT_MAX_ROUNDS,
};

type Verdict = Result<String, String>;

fn expect_none(mismatches: Vec<String>, what: &str) -> Result<(), String> {
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(format!("{what}: {}", mismatches.join("; ")))
    }
}

fn introspection_example() -> Verdict {
    let m = load("introspection.model");
    let k = &m.agents()[0].operator;
    let s = m.space();
    let plus = positive_introspection_op(k).map_err(|e| e.to_string())?;
    let full = full_introspection_op(k).map_err(|e| e.to_string())?;
    expect_none(
        operator_mismatches(&plus, &column(s, &["", "", "w2", "w3", "w2", "", "w3", "w1 w2 w3"])),
        "K⁺",
    )?;
    expect_none(
        operator_mismatches(
            &full,
            &column(s, &["", "", "w2", "w3", "w1 w2", "w1 w3", "w3", "w1 w2 w3"]),
        ),
        "K±",
    )?;
    Ok("K⁺ and K± match on all 8 events".into())
}

fn trace_pair() -> Verdict {
    let m = load("traces.model");
    let rels: Vec<PossibilityRelation> = m
        .agents()
        .iter()
        .map(|a| relation_from_operator(&a.operator).unwrap())
        .collect();
    expect_none(relation_mismatches(&rels[0], &["w1 w2", "w2 w3", "w2 w3 w4", "w4"]), "P1")?;
    expect_none(relation_mismatches(&rels[1], &["w1 w2", "w2", "w2 w3 w4", "w1 w4"]), "P2")?;
    expect_none(relation_mismatches(&left_trace(&rels[0]), &["w1", "w2", "w2 w3 w4", "w4"]), "T_P1")?;
    expect_none(relation_mismatches(&left_trace(&rels[1]), &["w1 w2", "w2", "w2 w3", "w4"]), "T_P2")?;
    let t = left_nary_trace(&rels).map_err(|e| e.to_string())?;
    expect_none(relation_mismatches(&t, &["w1 w2", "w2", "w2 w3 w4", "w4"]), "T_P")?;
    Ok("T_P1, T_P2 and T_P match on all 4 states".into())
}

fn nonmonotone_pair() -> Verdict {
    let m = load_unvalidated("nonmonotone.model");
    let (k, j) = (&m.agents()[0].operator, &m.agents()[1].operator);
    let s = m.space();
    if !(k <= j) {
        return Err("K ≤ J does not hold".into());
    }
    let (kp, jp) = (positive_introspection_op(k).unwrap(), positive_introspection_op(j).unwrap());
    let (kf, jf) = (full_introspection_op(k).unwrap(), full_introspection_op(j).unwrap());
    expect_none(operator_mismatches(&kp, &column(s, &["", "w1", "", "w1"])), "K⁺")?;
    expect_none(operator_mismatches(&jp, &column(s, &["", "", "", "w1 w2"])), "J⁺")?;
    expect_none(operator_mismatches(&kf, &column(s, &["", "w1", "w2", "w1 w2"])), "K±")?;
    expect_none(operator_mismatches(&jf, &column(s, &["", "", "", "w1 w2"])), "J±")?;
    let plus = kp.leq_violations(&jp).unwrap();
    let full = kf.leq_violations(&jf).unwrap();
    if plus != [ev(s, "w1")] || full != [ev(s, "w1"), ev(s, "w2")] {
        return Err(format!("violations {plus:?} and {full:?}"));
    }
    Ok(format!(
        "K ≤ J; K⁺ ≰ J⁺ at {}; K± ≰ J± at {} and {}",
        s.format_event(plus[0]),
        s.format_event(full[0]),
        s.format_event(full[1])
    ))
}

fn partial_closure() -> Verdict {
    let m = load_unvalidated("closure.model");
    let k = &m.agents()[0].operator;
    let s = m.space();
    let kd = distributive_closure(k).map_err(|e| e.to_string())?;
    let got = kd.apply(ev(s, "w2 w5"));
    if got != ev(s, "w2") {
        return Err(format!("Kᵈ({{w2 w5}}) = {}", s.format_event(got)));
    }
    for (a, ka) in [
        ("w1 w2 w3 w5", "w1 w2 w3"),
        ("w2 w3 w4 w5", "w2 w3 w4"),
        ("w1 w2 w4 w5", "w1 w2 w4"),
    ] {
        if kd.apply(ev(s, a)) != ev(s, ka) || k.apply(ev(s, a)) != ev(s, ka) {
            return Err(format!("row {{{a}}} changed"));
        }
    }
    Ok("Kᵈ({w2 w5}) = {w2}; listed rows unchanged".into())
}

fn worked_example() -> Verdict {
    let m = load("example61.model");
    let s = m.space();
    let union = operator_union(&m.operators()).unwrap();
    expect_none(operator_mismatches(&union, &column(s, &example::UNION)), "∪K")?;
    let rels: Vec<PossibilityRelation> = m.operators().iter().map(|k| relation_from_operator(k).unwrap()).collect();
    for (p, want, name) in [(&rels[0], example::P1, "P1"), (&rels[1], example::P2, "P2"), (&rels[2], example::P3, "P3")] {
        expect_none(relation_mismatches(p, &want), name)?;
    }
    let g = GroupRelations::of(&rels).unwrap();
    expect_none(relation_mismatches(&g.intersection, &example::INTERSECTION), "∩P")?;
    expect_none(relation_mismatches(&g.intersection_trace, &example::INTERSECTION), "T_∩P")?;
    expect_none(relation_mismatches(&g.intersection_symmetric, &example::INTERSECTION), "E_∩P")?;
    expect_none(relation_mismatches(&g.nary_trace, &example::NARY_TRACE), "T_P")?;
    expect_none(relation_mismatches(&g.nary_symmetric, &example::NARY_SYMMETRIC), "E_P")?;
    for (t, want) in [
        (RevisionType::D, example::MERGED),
        (RevisionType::DPD, example::MERGED),
        (RevisionType::DFD, example::MERGED),
        (RevisionType::PD, example::PLUS_D),
        (RevisionType::FD, example::FULL_D),
    ] {
        let k = apply_revision_type(&union, t).unwrap();
        expect_none(operator_mismatches(&k, &column(s, &want)), &format!("(∪K)^{t}"))?;
    }
    let relational = load("highest_type.model");
    if relational.operators() != m.operators() {
        return Err("relation and operator transcriptions disagree".into());
    }
    Ok("∪K, 8 relations and 5 revised operators match".into())
}

fn dispatch() -> Verdict {
    let m = load("example61.model");
    let s = m.space();
    let union = operator_union(&m.operators()).unwrap();
    let merged = KnowledgeOperator::from_table(s, reorder(s, &column(s, &example::MERGED))).unwrap();
    let full = KnowledgeOperator::from_table(s, reorder(s, &column(s, &example::FULL_D))).unwrap();

    let first = load("highest_type.model");
    let cf = distributed_knowledge_closed_form(&first).map_err(|e| e.to_string())?;
    match &cf.dispatch {
        Dispatch::HighestType { theta: RevisionType::DFD, agents } if agents == &[2] => {}
        other => return Err(format!("first profile dispatched as {other:?}")),
    }
    if cf.dk != merged {
        return Err("first profile: K_D differs from the merged column".into());
    }
    let sim = simulate(&first, DEFAULT_MAX_ROUNDS).map_err(|e| e.to_string())?;
    if sim.dk != cf.dk {
        return Err("first profile: simulation disagrees".into());
    }

    let cf = distributed_knowledge_closed_form(&m).map_err(|e| e.to_string())?;
    if !matches!(&cf.dispatch, Dispatch::WiseCrowd { positive, dfd, .. } if positive == &[1] && dfd == &[2]) {
        return Err(format!("second profile dispatched as {:?}", cf.dispatch));
    }
    if cf.dk != full {
        return Err("second profile: K_D differs from the last column".into());
    }
    let sim = simulate(&m, DEFAULT_MAX_ROUNDS).map_err(|e| e.to_string())?;
    if sim.dk != cf.dk || sim.converged_at != 2 {
        return Err(format!("simulation: agrees {} converged_at {}", sim.dk == cf.dk, sim.converged_at));
    }
    let expected_round1: Vec<KnowledgeOperator> = [RevisionType::D, RevisionType::PD, RevisionType::DFD]
        .iter()
        .map(|&t| apply_revision_type(&union, t).unwrap())
        .collect();
    if sim.rounds[1] != expected_round1 {
        return Err("round 1 differs from ((∪K)^(d), (∪K)^(+d), (∪K)^(d±d))".into());
    }
    for k in &sim.rounds[1] {
        if !(k <= &sim.dk) || k == &sim.dk {
            return Err("K_D is not strictly above a round-1 operator".into());
        }
    }
    Ok(format!(
        "highest type (d±d); wise crowd reaches (∪K)^(±d); converged_at {}",
        sim.converged_at
    ))
}

/// Table-order column to a table indexed by event bits.
fn reorder(space: &StateSpace, col: &[Event]) -> Vec<Event> {
    let mut table = vec![Event::EMPTY; space.num_events()];
    for (a, e) in space.events_table_order().into_iter().zip(col) {
        table[a.bits() as usize] = *e;
    }
    table
}

fn motivating() -> Verdict {
    let m = load("table1.model");
    let types: Vec<RevisionType> = m.types();
    if types != [RevisionType::FD, RevisionType::PD] {
        return Err(format!("unexpected types {types:?}"));
    }
    let cf = distributed_knowledge_closed_form(&m).map_err(|e| e.to_string())?;
    let sim = simulate(&m, DEFAULT_MAX_ROUNDS).map_err(|e| e.to_string())?;
    let p = relation_from_operator(&cf.dk).map_err(|e| e.to_string())?;
    if p != PossibilityRelation::identity(m.space()) || sim.dk != cf.dk {
        return Err(format!("P_D = {p:?}"));
    }
    if operator_from_relation(&p) != KnowledgeOperator::identity(m.space()) {
        return Err("identity relation does not give the identity operator".into());
    }
    Ok("P_D(w1) = {w1}, P_D(w2) = {w2}".into())
}

fn property_suite() -> Verdict {
    let classes = [TargetClass::K1, TargetClass::K2, TargetClass::K3];
    let mut passes: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut models = 0;
    for seed in 1..=200u64 {
        for states in 2..=5 {
            for agents in 2..=3 {
                let class = classes[(seed % 3) as usize];
                let config = GeneratorConfig::new(seed, states, agents, class);
                let model = random_model(&config).map_err(|e| e.to_string())?;
                let report = verify_propositions(&model, VerifyOptions::default());
                models += 1;
                for c in &report.checks {
                    match &c.outcome {
                        CheckOutcome::Pass(_) => *passes.entry(c.name).or_default() += 1,
                        CheckOutcome::Fail(w) => failures.push(format!("{config:?}: {}: {w}", c.name)),
                        CheckOutcome::Skipped(_) => {
                            passes.entry(c.name).or_default();
                        }
                    }
                }
            }
        }
        // veridical-only models exercise the revision laws outside K1
        let config = GeneratorConfig::new(seed, 2 + (seed % 4) as usize, 2, TargetClass::Kv);
        let report = verify_propositions(&random_model(&config).unwrap(), VerifyOptions::default());
        models += 1;
        failures.extend(report.failures().map(|c| format!("{config:?}: {}: {}", c.name, c.outcome)));
    }
    if !failures.is_empty() {
        return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
    }
    let never: Vec<&str> = passes.iter().filter(|(_, &n)| n == 0).map(|(k, _)| *k).collect();
    if !never.is_empty() {
        return Err(format!("checks never exercised: {never:?}"));
    }
    Ok(format!("{models} models, {} checks, zero failures", passes.len()))
}

fn oracle_equivalence() -> Verdict {
    let mut compared = 0;
    let s4 = StateSpace::numbered(4).unwrap();
    for seed in 1..=50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_veridical_operator(&mut rng, &s4);
        if naive_distributive_closure(&k).unwrap() != distributive_closure(&k).unwrap() {
            return Err(format!("mismatch at 4 states, seed {seed}"));
        }
        compared += 1;
    }
    for n in [2usize, 3] {
        let s = StateSpace::numbered(n).unwrap();
        let events = s.events_table_order();
        // every veridical operator: choose a subset of each A independently
        let choices: Vec<Vec<Event>> = events
            .iter()
            .map(|&a| s.events().filter(|b| b.is_subset(a)).collect())
            .collect();
        let mut idx = vec![0usize; events.len()];
        loop {
            let mut table = vec![Event::EMPTY; s.num_events()];
            for (i, &a) in events.iter().enumerate() {
                table[a.bits() as usize] = choices[i][idx[i]];
            }
            let k = KnowledgeOperator::from_table(&s, table).unwrap();
            if naive_distributive_closure(&k).unwrap() != distributive_closure(&k).unwrap() {
                return Err(format!("mismatch at {n} states: {k:?}"));
            }
            compared += 1;
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    Ok(format!("{compared} operators, zero mismatches"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Verdict); 9] = [
        ("AC1", "positive and full introspection table", introspection_example),
        ("AC2", "left traces of a two-agent profile", trace_pair),
        ("AC3", "non-monotonicity witness", nonmonotone_pair),
        ("AC4", "distributive closure of a partial operator", partial_closure),
        ("AC5", "four-state example, full pipeline", worked_example),
        ("AC6", "distributed knowledge dispatch and simulation", dispatch),
        ("AC7", "two-agent example reaches perfect knowledge", motivating),
        ("AC8", "randomized property suite", property_suite),
        ("AC9", "fast closure equals family enumeration", oracle_equivalence),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match verdict {
            Ok(detail) => println!("{id} PASS {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {title}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
