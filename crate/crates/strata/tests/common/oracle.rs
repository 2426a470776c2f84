//! Brute-force reference semantics for ground theories.
//!
//! Everything here is deliberately independent of the engine: its own
//! truth table, its own enumeration of candidate schemata, its own
//! minimality sieve. Only the optimism ordering is shared, since both
//! sides must rank schemata the same way for the comparison to mean
//! anything.

use std::collections::BTreeSet;

use strata::logic::{Atom, Formula, Literal, Polarity, Strength, Term, Theory};
use strata::schemata::{optimistic, project_model, ModelSchema};

use super::schema_key;

/// How one atom sits in a candidate schema: absent, affirmed, or denied,
/// independently at each strength.
#[derive(Clone, Copy)]
enum Slot {
    Absent,
    Affirmed,
    Denied,
}

const SLOTS: [Slot; 3] = [Slot::Absent, Slot::Affirmed, Slot::Denied];

fn collect_atoms(f: &Formula, out: &mut BTreeSet<Atom>) {
    match f {
        Formula::Lit(l) => {
            assert!(!l.meta && !l.is_neq(), "oracle handles plain ground atoms");
            out.insert(l.atom());
        }
        Formula::Not(g) => collect_atoms(g, out),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| collect_atoms(g, out)),
        Formula::Implies(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        Formula::ForAll(..) | Formula::Exists(..) => {
            panic!("oracle handles quantifier-free theories")
        }
    }
}

fn literal_holds(m: &ModelSchema, l: &Literal) -> bool {
    let atom = l.atom();
    match (l.strength, l.polarity) {
        (Strength::U, Polarity::Pos) => m.ru.contains(&atom),
        (Strength::U, Polarity::Neg) => m.ru_bar.contains(&atom),
        (Strength::D, Polarity::Pos) => {
            m.ru.contains(&atom) || m.ru_bar.contains(&atom) || m.rd.contains(&atom)
        }
        (Strength::D, Polarity::Neg) => {
            m.ru.contains(&atom) || m.ru_bar.contains(&atom) || m.rd_bar.contains(&atom)
        }
    }
}

fn holds(m: &ModelSchema, f: &Formula, positively: bool) -> bool {
    match f {
        Formula::Lit(l) => {
            if positively {
                literal_holds(m, l)
            } else {
                literal_holds(m, &l.negated())
            }
        }
        Formula::Not(g) => holds(m, g, !positively),
        Formula::And(fs) => {
            if positively {
                fs.iter().all(|g| holds(m, g, true))
            } else {
                fs.iter().any(|g| holds(m, g, false))
            }
        }
        Formula::Or(fs) => {
            if positively {
                fs.iter().any(|g| holds(m, g, true))
            } else {
                fs.iter().all(|g| holds(m, g, false))
            }
        }
        Formula::Implies(a, b) => {
            if positively {
                holds(m, a, false) || holds(m, b, true)
            } else {
                holds(m, a, true) && holds(m, b, false)
            }
        }
        Formula::ForAll(..) | Formula::Exists(..) => {
            panic!("oracle handles quantifier-free theories")
        }
    }
}

fn layers_subset(small: &ModelSchema, big: &ModelSchema) -> bool {
    small.ru.is_subset(&big.ru)
        && small.ru_bar.is_subset(&big.ru_bar)
        && small.rd.is_subset(&big.rd)
        && small.rd_bar.is_subset(&big.rd_bar)
}

fn candidate(universe: &[Term], atoms: &[Atom], code: usize) -> ModelSchema {
    let mut m = ModelSchema::new(universe.to_vec());
    let mut rest = code;
    for atom in atoms {
        let u = SLOTS[rest % 3];
        let d = SLOTS[(rest / 3) % 3];
        rest /= 9;
        match u {
            Slot::Absent => {}
            Slot::Affirmed => {
                m.ru.insert(atom.clone());
            }
            Slot::Denied => {
                m.ru_bar.insert(atom.clone());
            }
        }
        match d {
            Slot::Absent => {}
            Slot::Affirmed => {
                m.rd.insert(atom.clone());
            }
            Slot::Denied => {
                m.rd_bar.insert(atom.clone());
            }
        }
    }
    m
}

/// Reference answer: enumerate all 9^k ways to place the theory's atoms,
/// keep the candidates satisfying every axiom, reduce to the minimal ones
/// under layer inclusion, then rank and project exactly as the engine
/// presents its own results.
pub fn reference_models(theory: &Theory) -> BTreeSet<String> {
    assert!(theory.is_ground(), "oracle handles ground theories");
    let mut atoms = BTreeSet::new();
    for ax in &theory.axioms {
        collect_atoms(&ax.formula, &mut atoms);
    }
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    let universe = theory.individuals();

    let mut satisfying = Vec::new();
    for code in 0..9usize.pow(atoms.len() as u32) {
        let m = candidate(&universe, &atoms, code);
        if theory.axioms.iter().all(|ax| holds(&m, &ax.formula, true)) {
            satisfying.push(m);
        }
    }

    satisfying.sort_by_key(|m| m.ru.len() + m.ru_bar.len() + m.rd.len() + m.rd_bar.len());
    let mut minimal: Vec<ModelSchema> = Vec::new();
    for m in satisfying {
        if !minimal.iter().any(|kept| layers_subset(kept, &m)) {
            minimal.push(m);
        }
    }

    if minimal.is_empty() {
        return Default::default();
    }
    optimistic(&minimal)
        .expect("nonempty candidates")
        .iter()
        .map(|m| schema_key(&project_model(m)))
        .collect()
}
