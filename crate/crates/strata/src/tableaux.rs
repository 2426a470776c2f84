//! Tableaux expansion for stratified theories.
//!
//! A theory is expanded into branches. Conjunctions and ground literals are
//! recorded directly; existentials introduce witnesses ξ₀, ξ₁, …;
//! universals are instantiated over the branch universe; disjunctions fork
//! the branch. A branch closes only on a same-stratum conflict: `p^u`
//! against `¬p^u`, or `p^d` against `¬p^d`. The cross-strength pairs
//! survive and become cancellations in the extracted schema.
//!
//! Disjunctions are handled in one of two modes. For ground theories with
//! neither metapredicates nor language-use rules, a defeasible disjunct
//! opens all three of its satisfying routes (`p^d` itself, `p^u`, `¬p^u`),
//! a clause already satisfied by the branch is dropped, and schemata that
//! strictly contain another schema are pruned at extraction; together this
//! makes the extracted set line up with exhaustive enumeration. For
//! theories with quantifiers or metapredicates, disjuncts are taken
//! verbatim, and rule instances whose antecedents are undecided at a
//! witness (or that stem from a language-use rule) stay dormant instead of
//! forking: a rule fires only where the discourse gives it grounds. That
//! discipline is what keeps the king-of-France model unique instead of
//! splitting on every unreferenced individual.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::logic::{
    nnf, substitute, Atom, AxiomTag, Formula, Literal, Polarity, Strength, Term, Theory,
};
use crate::schemata::{satisfies_formula, ModelSchema, SatLevel, SchemaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionBudget {
    pub max_universe: usize,
    pub max_steps: u64,
}

impl Default for ExpansionBudget {
    fn default() -> ExpansionBudget {
        ExpansionBudget {
            max_universe: 16,
            max_steps: 100_000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpansionStats {
    pub steps: u64,
    pub peak_universe: usize,
    pub open_branches: usize,
    pub closed_branches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauxError {
    #[error(
        "expansion budget exhausted after {} steps with universe size {} ({} open / {} closed branches so far)",
        .stats.steps, .stats.peak_universe, .stats.open_branches, .stats.closed_branches
    )]
    ResourceExhausted { stats: ExpansionStats },
}

/// Where a queued formula came from. Language-use rules and rule instances
/// grounded at a witness are treated as triggers: they fire when their
/// antecedent is settled rather than forking eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Origin {
    axiom_id: String,
    tag: AxiomTag,
    via_witness: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Branch {
    /// Ground non-meta literals established on this branch.
    pub literals: BTreeSet<Literal>,
    /// Metapredicate facts (`defref`) recorded for rule matching.
    pub meta_facts: BTreeSet<Atom>,
    /// Constants and witnesses, in the order they were met.
    pub universe: Vec<Term>,
    /// Instantiations already performed, per universal formula.
    pub gamma_log: BTreeMap<Formula, BTreeSet<Vec<Term>>>,
    /// For each literal, the language-use axioms that derived it.
    pub provenance: BTreeMap<Literal, BTreeSet<String>>,
    next_witness: u32,
    alpha: VecDeque<(Formula, Origin)>,
    delta: VecDeque<(Formula, Origin)>,
    beta: VecDeque<(Formula, Origin)>,
    deferred: Vec<(Formula, Origin)>,
    universals: Vec<(Formula, Origin)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AddOutcome {
    Added,
    NoOp,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Action {
    AddLiteral(Literal),
    NoOp,
    Process(Formula),
}

#[derive(Debug)]
enum ClauseVerdict {
    Consumed,
    Defer,
    Close,
    Apply(Action),
    Split(Vec<Action>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Satisfied,
    Violated,
    /// A negated metapredicate whose fact is currently absent: true if the
    /// branch never records it, so the clause waits instead of acting.
    PendingMeta,
    Open,
}

impl Branch {
    pub fn new() -> Branch {
        Branch::default()
    }

    /// Replaces the bound variables of an existential with fresh witnesses,
    /// adds the witnesses to the universe, and returns the instantiated
    /// body. Returns `None` if `f` is not an existential.
    pub fn skolemize_existential(&mut self, f: &Formula) -> Option<Formula> {
        let Formula::Exists(vars, body) = f else {
            return None;
        };
        let mut out = (**body).clone();
        for v in vars {
            let w = self.fresh_witness();
            out = substitute(&out, v, &w).expect("witness terms are ground");
        }
        Some(out)
    }

    /// Instantiates a universal over every universe tuple not yet logged
    /// for it, logging them as it goes. An empty universe first receives a
    /// single default witness, so that universals are never vacuous.
    /// Returns the new instances; empty if `f` is not a universal.
    pub fn instantiate_universal(&mut self, f: &Formula) -> Vec<Formula> {
        self.instantiate_universal_logged(f)
            .into_iter()
            .map(|(_, inst)| inst)
            .collect()
    }

    fn instantiate_universal_logged(&mut self, f: &Formula) -> Vec<(Vec<Term>, Formula)> {
        let Formula::ForAll(vars, body) = f else {
            return Vec::new();
        };
        if self.universe.is_empty() {
            self.fresh_witness();
        }
        let mut out = Vec::new();
        for tuple in tuples(&self.universe, vars.len()) {
            let logged = self.gamma_log.entry(f.clone()).or_default();
            if !logged.insert(tuple.clone()) {
                continue;
            }
            let mut inst = (**body).clone();
            for (v, t) in vars.iter().zip(&tuple) {
                inst = substitute(&inst, v, t).expect("universe terms are ground");
            }
            out.push((tuple, inst));
        }
        out
    }

    fn fresh_witness(&mut self) -> Term {
        let w = Term::Witness(self.next_witness);
        self.next_witness += 1;
        self.universe.push(w.clone());
        w
    }

    fn push_individuals_of(&mut self, args: &[Term]) {
        let mut found = Vec::new();
        for a in args {
            a.individuals(&mut found);
        }
        for t in found {
            if !self.universe.contains(&t) {
                self.universe.push(t);
            }
        }
    }

    fn enqueue(&mut self, f: Formula, origin: Origin) {
        match &f {
            Formula::Or(_) => self.beta.push_back((f, origin)),
            Formula::Exists(..) => self.delta.push_back((f, origin)),
            _ => self.alpha.push_back((f, origin)),
        }
    }

    fn has_work(&self) -> bool {
        !(self.alpha.is_empty() && self.delta.is_empty() && self.beta.is_empty())
    }

    fn add_literal(&mut self, l: Literal, origin: Option<&Origin>) -> AddOutcome {
        debug_assert!(l.is_ground() && !l.meta && !l.is_neq());
        if self.literals.contains(&l) {
            self.record_provenance(&l, origin);
            return AddOutcome::NoOp;
        }
        if self.literals.contains(&l.negated()) {
            return AddOutcome::Closed;
        }
        match l.strength {
            Strength::D => {
                let asserted = Literal {
                    strength: Strength::U,
                    ..l.clone()
                };
                if self.literals.contains(&asserted) {
                    return AddOutcome::NoOp;
                }
            }
            Strength::U => {
                let weak = Literal {
                    strength: Strength::D,
                    ..l.clone()
                };
                if self.literals.remove(&weak) {
                    self.provenance.remove(&weak);
                }
            }
        }
        self.push_individuals_of(&l.args);
        self.record_provenance(&l, origin);
        self.literals.insert(l);
        AddOutcome::Added
    }

    fn record_provenance(&mut self, l: &Literal, origin: Option<&Origin>) {
        if let Some(o) = origin {
            if o.tag == AxiomTag::LanguageUse {
                self.provenance
                    .entry(l.clone())
                    .or_default()
                    .insert(o.axiom_id.clone());
            }
        }
    }
}

fn tuples(universe: &[Term], arity: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * universe.len());
        for partial in &out {
            for t in universe {
                let mut grown = partial.clone();
                grown.push(t.clone());
                next.push(grown);
            }
        }
        out = next;
    }
    out
}

/// Result of a full expansion: the open branches, their deduplicated
/// schemata, and for each schema the language-use provenance of its
/// literals, merged across the branches that produced it.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub branches: Vec<Branch>,
    pub schemata: Vec<ModelSchema>,
    pub provenance: Vec<BTreeMap<Literal, BTreeSet<String>>>,
    pub stats: ExpansionStats,
}

pub fn extract_schema(b: &Branch) -> Result<ModelSchema, SchemaError> {
    ModelSchema::from_literals(b.universe.clone(), b.literals.iter())
}

pub fn expand(theory: &Theory, budget: &ExpansionBudget) -> Result<Expansion, TableauxError> {
    let ground_mode = theory.is_ground()
        && !theory.contains_meta()
        && theory
            .axioms
            .iter()
            .all(|ax| ax.tag != AxiomTag::LanguageUse);
    let mut root = Branch::new();
    for t in theory.individuals() {
        if !root.universe.contains(&t) {
            root.universe.push(t);
        }
    }
    for ax in &theory.axioms {
        let origin = Origin {
            axiom_id: ax.id.clone(),
            tag: ax.tag,
            via_witness: false,
        };
        root.enqueue(nnf(&ax.formula), origin);
    }

    let mut stats = ExpansionStats {
        peak_universe: root.universe.len(),
        ..ExpansionStats::default()
    };
    check_universe(&root, budget, &mut stats)?;

    let mut stack = vec![root];
    let mut open = Vec::new();
    while let Some(branch) = stack.pop() {
        match run_branch(branch, ground_mode, budget, &mut stats)? {
            RunOutcome::Open(b) => {
                let b = *b;
                stats.open_branches += 1;
                open.push(b);
            }
            RunOutcome::Closed => {
                stats.closed_branches += 1;
            }
            RunOutcome::Split(children) => {
                for c in children.into_iter().rev() {
                    stack.push(c);
                }
            }
        }
    }

    let mut schemata: Vec<ModelSchema> = Vec::new();
    let mut provenance: Vec<BTreeMap<Literal, BTreeSet<String>>> = Vec::new();
    for b in &open {
        let schema = extract_schema(b).expect("open branches route into disjoint layers");
        match schemata.iter().position(|s| *s == schema) {
            Some(i) => {
                for (lit, ids) in &b.provenance {
                    provenance[i]
                        .entry(lit.clone())
                        .or_default()
                        .extend(ids.iter().cloned());
                }
            }
            None => {
                schemata.push(schema);
                provenance.push(b.provenance.clone());
            }
        }
    }
    if ground_mode {
        let keep: Vec<bool> = schemata
            .iter()
            .map(|s| {
                !schemata
                    .iter()
                    .any(|other| !other.layers_equal(s) && layers_subset(other, s))
            })
            .collect();
        let mut kept_schemata = Vec::new();
        let mut kept_provenance = Vec::new();
        for (i, s) in schemata.into_iter().enumerate() {
            if keep[i] {
                kept_schemata.push(s);
                kept_provenance.push(provenance[i].clone());
            }
        }
        schemata = kept_schemata;
        provenance = kept_provenance;
    }

    Ok(Expansion {
        branches: open,
        schemata,
        provenance,
        stats,
    })
}

fn layers_subset(small: &ModelSchema, big: &ModelSchema) -> bool {
    small.ru.is_subset(&big.ru)
        && small.ru_bar.is_subset(&big.ru_bar)
        && small.rd.is_subset(&big.rd)
        && small.rd_bar.is_subset(&big.rd_bar)
}

#[derive(Debug)]
enum RunOutcome {
    Open(Box<Branch>),
    Closed,
    Split(Vec<Branch>),
}

fn exhausted(stats: &ExpansionStats) -> TableauxError {
    TableauxError::ResourceExhausted {
        stats: stats.clone(),
    }
}

fn bump(stats: &mut ExpansionStats, budget: &ExpansionBudget) -> Result<(), TableauxError> {
    stats.steps += 1;
    if stats.steps > budget.max_steps {
        Err(exhausted(stats))
    } else {
        Ok(())
    }
}

fn check_universe(
    b: &Branch,
    budget: &ExpansionBudget,
    stats: &mut ExpansionStats,
) -> Result<(), TableauxError> {
    stats.peak_universe = stats.peak_universe.max(b.universe.len());
    if b.universe.len() > budget.max_universe {
        Err(exhausted(stats))
    } else {
        Ok(())
    }
}

fn run_branch(
    mut b: Branch,
    ground: bool,
    budget: &ExpansionBudget,
    stats: &mut ExpansionStats,
) -> Result<RunOutcome, TableauxError> {
    loop {
        if let Some((f, o)) = b.alpha.pop_front() {
            bump(stats, budget)?;
            if ground && is_plain_defeasible(&f) {
                match eval_clause(&b, &f, &o, true) {
                    ClauseVerdict::Consumed => continue,
                    ClauseVerdict::Close => return Ok(RunOutcome::Closed),
                    ClauseVerdict::Apply(action) => {
                        if apply_action(&mut b, action, &o) == AddOutcome::Closed {
                            return Ok(RunOutcome::Closed);
                        }
                        check_universe(&b, budget, stats)?;
                        continue;
                    }
                    ClauseVerdict::Split(actions) => return split(b, actions, &o, stats),
                    ClauseVerdict::Defer => unreachable!("ground clauses never wait"),
                }
            }
            if process_alpha(&mut b, f, &o) == AddOutcome::Closed {
                return Ok(RunOutcome::Closed);
            }
            check_universe(&b, budget, stats)?;
            continue;
        }
        if let Some((f, o)) = b.delta.pop_front() {
            bump(stats, budget)?;
            let body = b
                .skolemize_existential(&f)
                .expect("delta queue holds existentials");
            check_universe(&b, budget, stats)?;
            b.enqueue(body, o);
            continue;
        }
        let produced = gamma_round(&mut b, budget, stats)?;
        if produced > 0 {
            continue;
        }
        if let Some((f, o)) = b.beta.pop_front() {
            bump(stats, budget)?;
            match eval_clause(&b, &f, &o, ground) {
                ClauseVerdict::Consumed => continue,
                ClauseVerdict::Defer => {
                    b.deferred.push((f, o));
                    continue;
                }
                ClauseVerdict::Close => return Ok(RunOutcome::Closed),
                ClauseVerdict::Apply(action) => {
                    if apply_action(&mut b, action, &o) == AddOutcome::Closed {
                        return Ok(RunOutcome::Closed);
                    }
                    check_universe(&b, budget, stats)?;
                    continue;
                }
                ClauseVerdict::Split(actions) => return split(b, actions, &o, stats),
            }
        }
        if !b.deferred.is_empty() {
            let mut pending_action: Option<(ClauseVerdict, Origin)> = None;
            let mut remaining = Vec::new();
            for (f, o) in std::mem::take(&mut b.deferred) {
                if pending_action.is_some() {
                    remaining.push((f, o));
                    continue;
                }
                bump(stats, budget)?;
                match eval_clause(&b, &f, &o, ground) {
                    ClauseVerdict::Consumed => {}
                    ClauseVerdict::Defer => remaining.push((f, o)),
                    verdict => pending_action = Some((verdict, o)),
                }
            }
            b.deferred = remaining;
            match pending_action {
                None => {}
                Some((ClauseVerdict::Close, _)) => return Ok(RunOutcome::Closed),
                Some((ClauseVerdict::Apply(action), o)) => {
                    if apply_action(&mut b, action, &o) == AddOutcome::Closed {
                        return Ok(RunOutcome::Closed);
                    }
                    check_universe(&b, budget, stats)?;
                    continue;
                }
                Some((ClauseVerdict::Split(actions), o)) => return split(b, actions, &o, stats),
                Some((ClauseVerdict::Consumed | ClauseVerdict::Defer, _)) => unreachable!(),
            }
        }
        if !b.has_work() {
            return Ok(RunOutcome::Open(Box::new(b)));
        }
    }
}

fn gamma_round(
    b: &mut Branch,
    budget: &ExpansionBudget,
    stats: &mut ExpansionStats,
) -> Result<usize, TableauxError> {
    let mut produced = 0;
    for i in 0..b.universals.len() {
        let (f, origin) = b.universals[i].clone();
        for (tuple, inst) in b.instantiate_universal_logged(&f) {
            bump(stats, budget)?;
            let via_witness =
                origin.via_witness || tuple.iter().any(|t| matches!(t, Term::Witness(_)));
            b.enqueue(
                inst,
                Origin {
                    via_witness,
                    ..origin.clone()
                },
            );
            produced += 1;
        }
        check_universe(b, budget, stats)?;
    }
    Ok(produced)
}

fn process_alpha(b: &mut Branch, f: Formula, origin: &Origin) -> AddOutcome {
    match f {
        Formula::Lit(l) => {
            if l.is_neq() {
                let distinct = l.args[0] != l.args[1];
                let holds = match l.polarity {
                    Polarity::Pos => distinct,
                    Polarity::Neg => !distinct,
                };
                return if holds {
                    AddOutcome::NoOp
                } else {
                    AddOutcome::Closed
                };
            }
            if l.meta {
                return match l.polarity {
                    Polarity::Pos => {
                        b.push_individuals_of(&l.args);
                        b.meta_facts.insert(l.atom());
                        AddOutcome::Added
                    }
                    Polarity::Neg => {
                        if b.meta_facts.contains(&l.atom()) {
                            AddOutcome::Closed
                        } else {
                            AddOutcome::NoOp
                        }
                    }
                };
            }
            b.add_literal(l, Some(origin))
        }
        Formula::And(fs) => {
            for g in fs {
                b.enqueue(g, origin.clone());
            }
            AddOutcome::Added
        }
        Formula::ForAll(..) => {
            let already = b
                .universals
                .iter()
                .any(|(g, o)| *g == f && o.axiom_id == origin.axiom_id);
            if !already {
                b.universals.push((f, origin.clone()));
            }
            AddOutcome::Added
        }
        other => unreachable!("normal form leaves only literals, and, forall here: {other:?}"),
    }
}

/// In ground mode a defeasible literal is never recorded blindly: like a
/// one-disjunct clause it may already hold, or be settled either way in the
/// hard layer instead. Without this, a branch would close on `s^d` against
/// `¬s^d` even when `s^u` already satisfies both weakly, and the minimal
/// models the brute-force enumerator finds would be missing.
fn is_plain_defeasible(f: &Formula) -> bool {
    matches!(f, Formula::Lit(l) if l.strength == Strength::D && !l.meta && !l.is_neq())
}

fn flatten_or<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Or(fs) => {
            for g in fs {
                flatten_or(g, out);
            }
        }
        other => out.push(other),
    }
}

fn eval_clause(b: &Branch, clause: &Formula, origin: &Origin, ground: bool) -> ClauseVerdict {
    let mut disjuncts = Vec::new();
    flatten_or(clause, &mut disjuncts);
    if ground {
        eval_clause_ground(b, &disjuncts)
    } else {
        eval_clause_general(b, &disjuncts, origin)
    }
}

fn eval_clause_ground(b: &Branch, disjuncts: &[&Formula]) -> ClauseVerdict {
    let schema = extract_schema(b).expect("live branches route into disjoint layers");
    for d in disjuncts {
        if satisfies_formula(&schema, d, SatLevel::USat).unwrap_or(false) {
            return ClauseVerdict::Consumed;
        }
    }
    let mut ways = Vec::new();
    for d in disjuncts {
        match d {
            Formula::Lit(l) if l.is_neq() => {}
            Formula::Lit(l) => {
                debug_assert!(!l.meta);
                for candidate in satisfying_routes(l) {
                    if !b.literals.contains(&candidate.negated()) {
                        push_unique(&mut ways, Action::AddLiteral(candidate));
                    }
                }
            }
            other => push_unique(&mut ways, Action::Process((*other).clone())),
        }
    }
    decide(ways)
}

/// The layer configurations under which a single literal holds at the
/// tolerant level: an undefeasible literal only as itself, a defeasible
/// literal as itself or through either hard decision on its atom.
fn satisfying_routes(l: &Literal) -> Vec<Literal> {
    match l.strength {
        Strength::U => vec![l.clone()],
        Strength::D => vec![
            l.clone(),
            Literal {
                strength: Strength::U,
                polarity: Polarity::Pos,
                ..l.clone()
            },
            Literal {
                strength: Strength::U,
                polarity: Polarity::Neg,
                ..l.clone()
            },
        ],
    }
}

fn eval_clause_general(b: &Branch, disjuncts: &[&Formula], origin: &Origin) -> ClauseVerdict {
    let trigger = origin.tag == AxiomTag::LanguageUse || origin.via_witness;
    let mut saw_pending = false;
    let mut saw_violated = false;
    let mut ways = Vec::new();
    for d in disjuncts {
        let (status, action) = disjunct_status(b, d, trigger);
        match status {
            Status::Satisfied => return ClauseVerdict::Consumed,
            Status::Violated => saw_violated = true,
            Status::PendingMeta => saw_pending = true,
            Status::Open => push_unique(&mut ways, action.expect("open disjuncts carry an action")),
        }
    }
    if saw_pending {
        return ClauseVerdict::Defer;
    }
    if ways.is_empty() {
        return ClauseVerdict::Close;
    }
    if trigger && !saw_violated {
        return ClauseVerdict::Defer;
    }
    decide(ways)
}

fn disjunct_status(b: &Branch, d: &Formula, trigger: bool) -> (Status, Option<Action>) {
    match d {
        Formula::Lit(l) if l.is_neq() => {
            let distinct = l.args[0] != l.args[1];
            let holds = match l.polarity {
                Polarity::Pos => distinct,
                Polarity::Neg => !distinct,
            };
            if holds {
                (Status::Satisfied, None)
            } else {
                (Status::Violated, None)
            }
        }
        Formula::Lit(l) if l.meta => {
            let present = b.meta_facts.contains(&l.atom());
            match (l.polarity, present) {
                (Polarity::Pos, true) => (Status::Satisfied, None),
                (Polarity::Pos, false) => (Status::Violated, None),
                (Polarity::Neg, true) => (Status::Violated, None),
                (Polarity::Neg, false) => (Status::PendingMeta, None),
            }
        }
        Formula::Lit(l) => {
            if b.literals.contains(l) {
                return if trigger {
                    (Status::Satisfied, None)
                } else {
                    (Status::Open, Some(Action::NoOp))
                };
            }
            if l.strength == Strength::D {
                let asserted = Literal {
                    strength: Strength::U,
                    ..l.clone()
                };
                if b.literals.contains(&asserted) {
                    return (Status::Satisfied, None);
                }
            }
            if b.literals.contains(&l.negated()) {
                (Status::Violated, None)
            } else {
                (Status::Open, Some(Action::AddLiteral(l.clone())))
            }
        }
        other => (Status::Open, Some(Action::Process((*other).clone()))),
    }
}

fn decide(mut ways: Vec<Action>) -> ClauseVerdict {
    match ways.len() {
        0 => ClauseVerdict::Close,
        1 => ClauseVerdict::Apply(ways.pop().expect("length checked")),
        _ => ClauseVerdict::Split(ways),
    }
}

fn push_unique(ways: &mut Vec<Action>, action: Action) {
    if !ways.contains(&action) {
        ways.push(action);
    }
}

fn apply_action(b: &mut Branch, action: Action, origin: &Origin) -> AddOutcome {
    match action {
        Action::AddLiteral(l) => b.add_literal(l, Some(origin)),
        Action::NoOp => AddOutcome::NoOp,
        Action::Process(f) => {
            b.enqueue(f, origin.clone());
            AddOutcome::Added
        }
    }
}

fn split(
    b: Branch,
    actions: Vec<Action>,
    origin: &Origin,
    stats: &mut ExpansionStats,
) -> Result<RunOutcome, TableauxError> {
    let mut children = Vec::new();
    for action in actions {
        let mut child = b.clone();
        if apply_action(&mut child, action, origin) == AddOutcome::Closed {
            stats.closed_branches += 1;
            continue;
        }
        children.push(child);
    }
    if children.is_empty() {
        return Ok(RunOutcome::Closed);
    }
    Ok(RunOutcome::Split(children))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_theory};
    use crate::schemata::{cancelled_atoms, optimistic};

    fn theory(src: &str) -> Theory {
        parse_theory(src).expect("test theory parses")
    }

    fn expand_default(src: &str) -> Expansion {
        expand(&theory(src), &ExpansionBudget::default()).expect("expansion fits default budget")
    }

    fn atom(p: &str, args: &[&str]) -> Atom {
        Atom::new(
            p,
            args.iter()
                .map(|a| {
                    if let Some(idx) = a.strip_prefix("xi") {
                        Term::Witness(idx.parse().unwrap())
                    } else {
                        Term::Constant((*a).to_string())
                    }
                })
                .collect(),
        )
    }

    const TWEETY: &str = "
        (axiom t1 :core (bird^u T))
        (axiom t2 :core (forall (x) (-> (bird^u x) (flies^d x))))
        (axiom t3 :core (forall (x) (-> (penguin^u x) (bird^u x))))
        (axiom t4 :core (forall (x) (-> (penguin^u x) (not (flies^u x)))))
    ";

    #[test]
    fn tweety_yields_exactly_the_three_schemata_in_order() {
        let expansion = expand_default(TWEETY);
        let bird = atom("bird", &["T"]);
        let penguin = atom("penguin", &["T"]);
        let flies = atom("flies", &["T"]);

        assert_eq!(expansion.schemata.len(), 3);
        let m1 = &expansion.schemata[0];
        assert_eq!(m1.ru, BTreeSet::from([bird.clone()]));
        assert_eq!(m1.ru_bar, BTreeSet::from([penguin.clone()]));
        assert_eq!(m1.rd, BTreeSet::from([flies.clone()]));
        assert!(m1.rd_bar.is_empty());

        let m2 = &expansion.schemata[1];
        assert_eq!(m2.ru, BTreeSet::from([bird.clone()]));
        assert_eq!(m2.ru_bar, BTreeSet::from([penguin.clone(), flies.clone()]));
        assert_eq!(m2.rd, BTreeSet::from([flies.clone()]));

        let m3 = &expansion.schemata[2];
        assert_eq!(m3.ru, BTreeSet::from([bird.clone()]));
        assert_eq!(m3.ru_bar, BTreeSet::from([flies.clone()]));
        assert_eq!(m3.rd, BTreeSet::from([flies.clone()]));

        let best = optimistic(&expansion.schemata).unwrap();
        assert_eq!(best, vec![m1.clone()]);
    }

    #[test]
    fn hard_denial_already_settles_the_weak_affirmation() {
        let expansion = expand_default("(axiom a :core (and (not (p^u a)) (p^d a)))");
        assert_eq!(expansion.branches.len(), 1);
        let branch = &expansion.branches[0];
        let expected: BTreeSet<Literal> = BTreeSet::from([Literal::new(
            "p",
            vec![Term::Constant("a".into())],
            Strength::U,
            Polarity::Neg,
        )]);
        assert_eq!(branch.literals, expected);
        assert!(cancelled_atoms(&expansion.schemata[0]).is_empty());
    }

    #[test]
    fn same_stratum_contradiction_closes_every_branch() {
        let expansion = expand_default("(axiom a :core (p^u c)) (axiom b :core (not (p^u c)))");
        assert!(expansion.branches.is_empty());
        assert_eq!(expansion.stats.closed_branches, 1);
        assert_eq!(expansion.stats.open_branches, 0);
    }

    #[test]
    fn quantified_contradiction_closes() {
        let expansion = expand_default(
            "(axiom u :utterance (exists (x) (and (king_of_buganda^u x) (E!^u x))))
             (axiom c :core (forall (x) (-> (king_of_buganda^u x) (not (E!^u x)))))",
        );
        assert!(expansion.branches.is_empty());
    }

    #[test]
    fn defeasible_disjunct_opens_every_tolerant_route() {
        let expansion = expand_default("(axiom a :core (or (p^d a) (q^u a)))");
        let layers: Vec<(usize, usize, usize, usize)> = expansion
            .schemata
            .iter()
            .map(|s| (s.ru.len(), s.ru_bar.len(), s.rd.len(), s.rd_bar.len()))
            .collect();
        assert_eq!(expansion.schemata.len(), 4, "{layers:?}");
        let best = optimistic(&expansion.schemata).unwrap();
        assert_eq!(best.len(), 2);
        assert_eq!(best[0].rd, BTreeSet::from([atom("p", &["a"])]));
        assert_eq!(best[1].ru, BTreeSet::from([atom("q", &["a"])]));
    }

    #[test]
    fn satisfied_clause_is_dropped_instead_of_forking() {
        let expansion = expand_default(
            "(axiom a :core (not (p^u a)))
             (axiom b :core (or (p^d a) (r^u a)))",
        );
        assert_eq!(expansion.schemata.len(), 1);
        let only = &expansion.schemata[0];
        assert_eq!(only.ru_bar, BTreeSet::from([atom("p", &["a"])]));
        assert!(only.ru.is_empty() && only.rd.is_empty() && only.rd_bar.is_empty());
    }

    #[test]
    fn language_use_rule_fires_at_referenced_witness_only() {
        let expansion = expand_default(
            "(axiom u :utterance (exists (x y) (and (ross^u x) (zeus^u y) (worship^u x y) (defref x) (defref y))))
             (axiom lu :language-use (forall (x) (-> (defref x) (E!^d x))))",
        );
        assert_eq!(expansion.schemata.len(), 1);
        let m = &expansion.schemata[0];
        assert_eq!(
            m.rd,
            BTreeSet::from([atom("E!", &["xi0"]), atom("E!", &["xi1"])])
        );
        let prov = &expansion.provenance[0];
        let e0 = Literal::new("E!", vec![Term::Witness(0)], Strength::D, Polarity::Pos);
        assert_eq!(prov.get(&e0), Some(&BTreeSet::from(["lu".to_string()])));
    }

    #[test]
    fn dormant_core_rule_at_witness_does_not_fork_but_fires_when_grounded() {
        let expansion = expand_default(
            "(axiom u :utterance (exists (x) (and (strike^u x) (averted^u x))))
             (axiom c1 :core (forall (x) (-> (averted^u x) (UE!^u x))))
             (axiom c2 :core (forall (x) (-> (UE!^u x) (not (E!^u x)))))",
        );
        assert_eq!(expansion.schemata.len(), 1);
        let m = &expansion.schemata[0];
        assert_eq!(
            m.ru,
            BTreeSet::from([
                atom("strike", &["xi0"]),
                atom("averted", &["xi0"]),
                atom("UE!", &["xi0"]),
            ])
        );
        assert_eq!(m.ru_bar, BTreeSet::from([atom("E!", &["xi0"])]));
    }

    #[test]
    fn skolemization_introduces_fresh_witnesses_in_order() {
        let mut b = Branch::new();
        let f = parse_formula("(exists (x y) (worship^u x y))").unwrap();
        let body = b.skolemize_existential(&nnf(&f)).unwrap();
        assert_eq!(
            body,
            Formula::Lit(Literal::new(
                "worship",
                vec![Term::Witness(0), Term::Witness(1)],
                Strength::U,
                Polarity::Pos,
            ))
        );
        assert_eq!(b.universe, vec![Term::Witness(0), Term::Witness(1)]);

        let again = parse_formula("(exists (x) (p^u x))").unwrap();
        let body = b.skolemize_existential(&nnf(&again)).unwrap();
        assert_eq!(
            body,
            Formula::Lit(Literal::new(
                "p",
                vec![Term::Witness(2)],
                Strength::U,
                Polarity::Pos,
            ))
        );
    }

    #[test]
    fn universal_instantiation_covers_universe_once() {
        let mut b = Branch::new();
        b.universe.push(Term::Constant("T".into()));
        let f = parse_formula("(forall (x) (-> (bird^u x) (flies^d x)))").unwrap();
        let f = nnf(&f);
        let first = b.instantiate_universal(&f);
        assert_eq!(first.len(), 1);
        assert_eq!(b.instantiate_universal(&f), Vec::new());
        b.universe.push(Term::Constant("U".into()));
        assert_eq!(b.instantiate_universal(&f).len(), 1);
    }

    #[test]
    fn universal_on_empty_universe_gets_a_default_witness() {
        let expansion = expand_default("(axiom a :core (forall (x) (p^u x)))");
        assert_eq!(expansion.schemata.len(), 1);
        assert_eq!(
            expansion.schemata[0].ru,
            BTreeSet::from([atom("p", &["xi0"])])
        );
        assert_eq!(expansion.schemata[0].universe, vec![Term::Witness(0)]);
    }

    #[test]
    fn witness_chain_exhausts_the_budget_explicitly() {
        let t = theory("(axiom a :core (forall (x) (exists (y) (r^u x y))))");
        let tight = ExpansionBudget {
            max_universe: 4,
            max_steps: 10_000,
        };
        let err = expand(&t, &tight).unwrap_err();
        let TableauxError::ResourceExhausted { stats } = err;
        assert!(stats.peak_universe > 4);
    }

    #[test]
    fn expansion_is_deterministic() {
        let a = expand_default(TWEETY);
        let b = expand_default(TWEETY);
        assert_eq!(a.schemata, b.schemata);
        assert_eq!(a.stats, b.stats);
        let branches_a: Vec<_> = a.branches.iter().map(|br| br.literals.clone()).collect();
        let branches_b: Vec<_> = b.branches.iter().map(|br| br.literals.clone()).collect();
        assert_eq!(branches_a, branches_b);
    }

    #[test]
    fn asserted_existence_absorbs_the_defeasible_inference() {
        let expansion = expand_default(
            "(axiom u :utterance (exists (x) (and (king_of_buganda^u x) (defref x) (E!^u x))))
             (axiom lu :language-use (forall (x) (-> (defref x) (E!^d x))))",
        );
        assert_eq!(expansion.schemata.len(), 1);
        let m = &expansion.schemata[0];
        assert_eq!(
            m.ru,
            BTreeSet::from([atom("king_of_buganda", &["xi0"]), atom("E!", &["xi0"])])
        );
        assert!(m.rd.is_empty());
        assert!(expansion.provenance[0].is_empty());
    }
}
