#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use strata::logic::{Axiom, AxiomTag, Formula, Literal, Polarity, Strength, Term, Theory};
use strata::presup::PresuppositionReport;
use strata::schemata::{optimistic, project_model, ModelSchema};
use strata::tableaux::{expand, ExpansionBudget};

pub const GROUND_PREDICATES: [&str; 4] = ["p", "q", "r", "s"];

/// A random ground theory over at most four unary atoms and at most six
/// axioms, everything hard-coded to the single individual `a`. The same
/// seed always yields the same theory.
pub fn random_ground_theory(seed: u64) -> Theory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_predicates = rng.gen_range(1..=GROUND_PREDICATES.len());
    let n_axioms = rng.gen_range(1..=6);
    let axioms = (0..n_axioms)
        .map(|i| Axiom {
            id: format!("ax{i}"),
            tag: AxiomTag::Core,
            formula: random_formula(&mut rng, n_predicates, 0),
        })
        .collect();
    Theory::from_axioms(axioms).expect("generated theories are well-formed")
}

fn random_literal(rng: &mut ChaCha8Rng, n_predicates: usize) -> Formula {
    let predicate = GROUND_PREDICATES[rng.gen_range(0..n_predicates)];
    let strength = if rng.gen_bool(0.5) {
        Strength::U
    } else {
        Strength::D
    };
    let polarity = if rng.gen_bool(0.5) {
        Polarity::Pos
    } else {
        Polarity::Neg
    };
    Formula::Lit(Literal::new(
        predicate,
        vec![Term::Constant("a".into())],
        strength,
        polarity,
    ))
}

fn random_formula(rng: &mut ChaCha8Rng, n_predicates: usize, depth: usize) -> Formula {
    if depth >= 3 || rng.gen_bool(0.4) {
        return random_literal(rng, n_predicates);
    }
    match rng.gen_range(0..4) {
        0 => Formula::And(vec![
            random_formula(rng, n_predicates, depth + 1),
            random_formula(rng, n_predicates, depth + 1),
        ]),
        1 => Formula::Or(vec![
            random_formula(rng, n_predicates, depth + 1),
            random_formula(rng, n_predicates, depth + 1),
        ]),
        2 => Formula::Not(Box::new(random_formula(rng, n_predicates, depth + 1))),
        _ => Formula::Implies(
            Box::new(random_formula(rng, n_predicates, depth + 1)),
            Box::new(random_formula(rng, n_predicates, depth + 1)),
        ),
    }
}

/// Universe plus layers as one string, so two schemata render equal only
/// when they really are the same structure.
pub fn schema_key(m: &ModelSchema) -> String {
    let universe: Vec<String> = m.universe.iter().map(|t| t.machine_name()).collect();
    format!("[{}] {}", universe.join(","), m)
}

/// The engine's answer for a theory: projected optimistic schemata, keyed
/// for set comparison.
pub fn engine_models(theory: &Theory) -> std::collections::BTreeSet<String> {
    let expansion = expand(theory, &ExpansionBudget::default())
        .expect("small ground theories fit the default budget");
    if expansion.schemata.is_empty() {
        return Default::default();
    }
    optimistic(&expansion.schemata)
        .expect("nonempty candidates")
        .iter()
        .map(|m| schema_key(&project_model(m)))
        .collect()
}

pub fn corpus_report(name: &str) -> PresuppositionReport {
    let fixture = strata::corpus::fixture(name).expect("fixture exists");
    let theory = strata::parser::parse_theory(fixture.source).expect("fixture parses");
    strata::presup::analyze(&theory, &ExpansionBudget::default())
        .expect("fixture fits default budget")
}
