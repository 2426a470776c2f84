//! Model schemata and the operations that judge and rank them.
//!
//! A schema records four layers over ground atoms: hard facts `R^u`, hard
//! denials `R̄^u`, defeasible facts `R^d`, and defeasible denials `R̄^d`.
//! The same atom may sit in a defeasible layer and the opposite hard layer
//! at once; such an atom is cancelled, not contradictory.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{negate, substitute, Atom, Formula, Literal, Polarity, Strength, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModelSchema {
    /// Individuals the schema talks about, in the order they were met.
    pub universe: Vec<Term>,
    pub ru: BTreeSet<Atom>,
    pub ru_bar: BTreeSet<Atom>,
    pub rd: BTreeSet<Atom>,
    pub rd_bar: BTreeSet<Atom>,
}

/// Which notion of satisfaction to apply: tolerant (`u`) or skeptical (`d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatLevel {
    USat,
    DSat,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("literal {0} is not ground")]
    NonGroundLiteral(String),
    #[error("metapredicate literal {0} has no place in a model layer")]
    MetaLiteral(String),
    #[error("formula has free variable `{0}`")]
    FreeVariable(String),
    #[error("atom {0} appears in both polarities of the same stratum")]
    LayerConflict(String),
    #[error("cannot select an optimistic model from an empty candidate set")]
    EmptyCandidateSet,
}

impl ModelSchema {
    pub fn new(universe: Vec<Term>) -> ModelSchema {
        ModelSchema {
            universe,
            ..ModelSchema::default()
        }
    }

    /// Builds a schema by routing each literal into its layer. Metapredicate
    /// and `neq` literals are rejected: neither describes a world.
    pub fn from_literals<'a, I>(
        universe: Vec<Term>,
        literals: I,
    ) -> Result<ModelSchema, SchemaError>
    where
        I: IntoIterator<Item = &'a Literal>,
    {
        let mut m = ModelSchema::new(universe);
        for l in literals {
            if l.meta || l.is_neq() {
                return Err(SchemaError::MetaLiteral(l.to_string()));
            }
            if !l.is_ground() {
                return Err(SchemaError::NonGroundLiteral(l.to_string()));
            }
            let atom = l.atom();
            match (l.strength, l.polarity) {
                (Strength::U, Polarity::Pos) => m.ru.insert(atom),
                (Strength::U, Polarity::Neg) => m.ru_bar.insert(atom),
                (Strength::D, Polarity::Pos) => m.rd.insert(atom),
                (Strength::D, Polarity::Neg) => m.rd_bar.insert(atom),
            };
        }
        if let Some(a) = m.ru.intersection(&m.ru_bar).next() {
            return Err(SchemaError::LayerConflict(a.to_string()));
        }
        if let Some(a) = m.rd.intersection(&m.rd_bar).next() {
            return Err(SchemaError::LayerConflict(a.to_string()));
        }
        Ok(m)
    }

    pub fn layers_equal(&self, other: &ModelSchema) -> bool {
        self.ru == other.ru
            && self.ru_bar == other.ru_bar
            && self.rd == other.rd
            && self.rd_bar == other.rd_bar
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        out.extend(self.ru.iter().cloned());
        out.extend(self.ru_bar.iter().cloned());
        out.extend(self.rd.iter().cloned());
        out.extend(self.rd_bar.iter().cloned());
        out
    }

    pub fn is_empty(&self) -> bool {
        self.ru.is_empty() && self.ru_bar.is_empty() && self.rd.is_empty() && self.rd_bar.is_empty()
    }
}

/// How metapredicate literals are read during evaluation.
#[derive(Debug, Clone, Copy)]
enum MetaReading<'a> {
    /// A metapredicate assertion is taken at face value.
    AlwaysTrue,
    /// Truth is membership in an explicit record of metapredicate facts.
    Recorded(&'a BTreeSet<Atom>),
}

/// Judges one ground literal against the schema.
pub fn satisfies_literal(
    m: &ModelSchema,
    l: &Literal,
    level: SatLevel,
) -> Result<bool, SchemaError> {
    if l.meta {
        return Err(SchemaError::MetaLiteral(l.to_string()));
    }
    if !l.is_ground() {
        return Err(SchemaError::NonGroundLiteral(l.to_string()));
    }
    if l.is_neq() {
        let distinct = l.args[0] != l.args[1];
        return Ok(match l.polarity {
            Polarity::Pos => distinct,
            Polarity::Neg => !distinct,
        });
    }
    let a = l.atom();
    let hit = match (level, l.strength, l.polarity) {
        (SatLevel::USat, Strength::U, Polarity::Pos) => m.ru.contains(&a),
        (SatLevel::USat, Strength::U, Polarity::Neg) => m.ru_bar.contains(&a),
        (SatLevel::USat, Strength::D, Polarity::Pos) => {
            m.ru.contains(&a) || m.ru_bar.contains(&a) || m.rd.contains(&a)
        }
        (SatLevel::USat, Strength::D, Polarity::Neg) => {
            m.ru.contains(&a) || m.ru_bar.contains(&a) || m.rd_bar.contains(&a)
        }
        (SatLevel::DSat, _, Polarity::Pos) => m.rd.contains(&a),
        (SatLevel::DSat, _, Polarity::Neg) => m.rd_bar.contains(&a),
    };
    Ok(hit)
}

/// Judges a closed formula against the schema. Compound negation is pushed
/// inward and resolved at the literals, so `not` never means classical
/// complementation; in particular no formula is satisfied by every schema.
/// Metapredicate assertions count as true.
pub fn satisfies_formula(
    m: &ModelSchema,
    f: &Formula,
    level: SatLevel,
) -> Result<bool, SchemaError> {
    eval(m, f, level, MetaReading::AlwaysTrue)
}

/// Like [`satisfies_formula`], but metapredicate literals are true exactly
/// when recorded in `meta_facts`. Expansion records those facts per branch;
/// this variant lets a schema be checked against the same record.
pub fn satisfies_formula_with_meta(
    m: &ModelSchema,
    f: &Formula,
    level: SatLevel,
    meta_facts: &BTreeSet<Atom>,
) -> Result<bool, SchemaError> {
    eval(m, f, level, MetaReading::Recorded(meta_facts))
}

fn eval(
    m: &ModelSchema,
    f: &Formula,
    level: SatLevel,
    meta: MetaReading<'_>,
) -> Result<bool, SchemaError> {
    match f {
        Formula::Lit(l) => {
            if l.meta {
                if !l.is_ground() {
                    return Err(SchemaError::NonGroundLiteral(l.to_string()));
                }
                return Ok(match meta {
                    MetaReading::AlwaysTrue => l.polarity == Polarity::Pos,
                    MetaReading::Recorded(facts) => {
                        let present = facts.contains(&l.atom());
                        match l.polarity {
                            Polarity::Pos => present,
                            Polarity::Neg => !present,
                        }
                    }
                });
            }
            if let Some(v) = l.args.iter().flat_map(first_variable).next() {
                return Err(SchemaError::FreeVariable(v));
            }
            satisfies_literal(m, l, level)
        }
        Formula::Not(inner) => eval(m, &negate(inner), level, meta),
        Formula::And(fs) => {
            for f in fs {
                if !eval(m, f, level, meta)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for f in fs {
                if eval(m, f, level, meta)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Implies(a, b) => {
            if eval(m, &negate(a), level, meta)? {
                Ok(true)
            } else {
                eval(m, b, level, meta)
            }
        }
        Formula::ForAll(vars, body) => {
            let mut all = true;
            for_each_assignment(m, vars, body, &mut |g| {
                if !eval(m, g, level, meta)? {
                    all = false;
                }
                Ok(())
            })?;
            Ok(all)
        }
        Formula::Exists(vars, body) => {
            let mut any = false;
            for_each_assignment(m, vars, body, &mut |g| {
                if eval(m, g, level, meta)? {
                    any = true;
                }
                Ok(())
            })?;
            Ok(any)
        }
    }
}

fn first_variable(t: &Term) -> Option<String> {
    match t {
        Term::Variable(v) => Some(v.clone()),
        Term::Apply(_, args) => args.iter().flat_map(first_variable).next(),
        _ => None,
    }
}

fn for_each_assignment(
    m: &ModelSchema,
    vars: &[String],
    body: &Formula,
    visit: &mut dyn FnMut(&Formula) -> Result<(), SchemaError>,
) -> Result<(), SchemaError> {
    fn go(
        m: &ModelSchema,
        vars: &[String],
        f: &Formula,
        visit: &mut dyn FnMut(&Formula) -> Result<(), SchemaError>,
    ) -> Result<(), SchemaError> {
        match vars.split_first() {
            None => visit(f),
            Some((v, rest)) => {
                for ind in &m.universe {
                    let g = substitute(f, v, ind)
                        .map_err(|_| SchemaError::NonGroundLiteral(ind.to_string()))?;
                    go(m, rest, &g, visit)?;
                }
                Ok(())
            }
        }
    }
    go(m, vars, body, visit)
}

/// Atoms whose defeasible claim is overridden by the opposite hard layer,
/// keyed by the polarity of the cancelled claim.
pub fn cancelled_atoms(m: &ModelSchema) -> BTreeSet<(Atom, Polarity)> {
    let mut out = BTreeSet::new();
    for a in m.rd.intersection(&m.ru_bar) {
        out.insert((a.clone(), Polarity::Pos));
    }
    for a in m.rd_bar.intersection(&m.ru) {
        out.insert((a.clone(), Polarity::Neg));
    }
    out
}

/// Drops cancelled atoms from the defeasible layers; the hard layers stay.
pub fn project_model(m: &ModelSchema) -> ModelSchema {
    ModelSchema {
        universe: m.universe.clone(),
        ru: m.ru.clone(),
        ru_bar: m.ru_bar.clone(),
        rd: m.rd.difference(&m.ru_bar).cloned().collect(),
        rd_bar: m.rd_bar.difference(&m.ru).cloned().collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct AtomConfig {
    ru: bool,
    ru_bar: bool,
    rd: bool,
    rd_bar: bool,
}

impl AtomConfig {
    fn of(m: &ModelSchema, a: &Atom) -> AtomConfig {
        AtomConfig {
            ru: m.ru.contains(a),
            ru_bar: m.ru_bar.contains(a),
            rd: m.rd.contains(a),
            rd_bar: m.rd_bar.contains(a),
        }
    }

    /// Information level of one atom: silence < hard claim < defeasible
    /// claim < claims in both strata.
    fn level(self) -> u8 {
        let count = self.ru as u8 + self.ru_bar as u8 + self.rd as u8 + self.rd_bar as u8;
        match count {
            0 => 0,
            1 if self.rd || self.rd_bar => 2,
            1 => 1,
            _ => 3,
        }
    }

    /// `self` is at least as good as `other` for this atom: identical, or a
    /// strictly higher information level. Opposite claims at the same level
    /// stay incomparable.
    fn dominates(self, other: AtomConfig) -> bool {
        self == other || self.level() > other.level()
    }
}

/// Ranks two schemata by optimism. A schema improves on another when it
/// cancels strictly fewer defeasible claims; among schemata with the same
/// cancellations, when every atom carries at least as much information with
/// defeasible claims preferred over hard ones.
pub fn compare(m1: &ModelSchema, m2: &ModelSchema) -> SchemaOrder {
    if m1.layers_equal(m2) {
        return SchemaOrder::Equal;
    }
    let c1 = cancelled_atoms(m1);
    let c2 = cancelled_atoms(m2);
    if c1 != c2 {
        return if c1.is_subset(&c2) {
            SchemaOrder::Greater
        } else if c2.is_subset(&c1) {
            SchemaOrder::Less
        } else {
            SchemaOrder::Incomparable
        };
    }
    let mut atoms = m1.atoms();
    atoms.extend(m2.atoms());
    let mut ge = true;
    let mut le = true;
    for a in &atoms {
        let cfg1 = AtomConfig::of(m1, a);
        let cfg2 = AtomConfig::of(m2, a);
        ge &= cfg1.dominates(cfg2);
        le &= cfg2.dominates(cfg1);
    }
    match (ge, le) {
        (true, true) => SchemaOrder::Equal,
        (true, false) => SchemaOrder::Greater,
        (false, true) => SchemaOrder::Less,
        (false, false) => SchemaOrder::Incomparable,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelectionStats {
    pub comparisons: usize,
}

/// Keeps the maximally optimistic schemata: those no other candidate ranks
/// strictly above. Input order is preserved.
pub fn optimistic(candidates: &[ModelSchema]) -> Result<Vec<ModelSchema>, SchemaError> {
    optimistic_with_stats(candidates).map(|(kept, _)| kept)
}

pub fn optimistic_with_stats(
    candidates: &[ModelSchema],
) -> Result<(Vec<ModelSchema>, SelectionStats), SchemaError> {
    if candidates.is_empty() {
        return Err(SchemaError::EmptyCandidateSet);
    }
    let mut stats = SelectionStats::default();
    let mut kept = Vec::new();
    for (i, m) in candidates.iter().enumerate() {
        let mut dominated = false;
        for (j, other) in candidates.iter().enumerate() {
            if i == j {
                continue;
            }
            stats.comparisons += 1;
            if compare(other, m) == SchemaOrder::Greater {
                dominated = true;
                break;
            }
        }
        if !dominated {
            kept.push(m.clone());
        }
    }
    Ok((kept, stats))
}

fn fmt_part(
    f: &mut fmt::Formatter<'_>,
    pos: &BTreeSet<Atom>,
    neg: &BTreeSet<Atom>,
    strength: Strength,
) -> fmt::Result {
    if pos.is_empty() && neg.is_empty() {
        return write!(f, "∅^{strength}");
    }
    let mut entries: Vec<(Atom, Polarity)> = pos
        .iter()
        .map(|a| (a.clone(), Polarity::Pos))
        .chain(neg.iter().map(|a| (a.clone(), Polarity::Neg)))
        .collect();
    entries.sort();
    write!(f, "{{")?;
    for (i, (a, pol)) in entries.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        if *pol == Polarity::Neg {
            write!(f, "¬")?;
        }
        write!(f, "{}^{}(", a.predicate, strength)?;
        for (k, arg) in a.args.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{arg}")?;
        }
        write!(f, ")")?;
    }
    write!(f, "}}")
}

impl fmt::Display for ModelSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_part(f, &self.ru, &self.ru_bar, Strength::U)?;
        write!(f, " ∪ ")?;
        fmt_part(f, &self.rd, &self.rd_bar, Strength::D)
    }
}
