//! Terms, literals, and formulas of a stratified first-order language.
//!
//! Every literal carries a strength alongside its polarity. Undefeasible
//! literals (`bird^u`) state hard facts; defeasible literals (`flies^d`)
//! state facts that may later be overridden without contradiction. Negation
//! of a literal lives in its polarity; the `Not` connective survives only
//! around compound formulas.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Predicates whose extension is fixed by the background ontology rather
/// than by individual discourses. All of them are unary.
pub const ONTOLOGY_PREDICATES: [&str; 4] = ["E!", "UE!", "EOW!", "F!"];

/// Built-in syntactic inequality. Evaluated during expansion, never stored
/// in a model layer.
pub const NEQ: &str = "neq";

/// Built-in metapredicate marking a term as discourse-referential.
pub const DEFREF: &str = "defref";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Constant(String),
    Variable(String),
    /// Function application, e.g. the reified event `come(mary, party)`.
    Apply(String, Vec<Term>),
    /// Witness introduced for an existential quantifier, printed `ξ0`, `ξ1`, …
    Witness(u32),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Constant(_) | Term::Witness(_) => true,
            Term::Variable(_) => false,
            Term::Apply(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Collects the individuals this term mentions: constants and witnesses,
    /// including those nested inside function applications. Function terms
    /// themselves are not individuals and are not collected.
    pub fn individuals(&self, out: &mut Vec<Term>) {
        match self {
            Term::Constant(_) | Term::Witness(_) => {
                if !out.contains(self) {
                    out.push(self.clone());
                }
            }
            Term::Variable(_) => {}
            Term::Apply(_, args) => {
                for a in args {
                    a.individuals(out);
                }
            }
        }
    }

    pub fn substitute(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Variable(v) if v == var => replacement.clone(),
            Term::Apply(f, args) => Term::Apply(
                f.clone(),
                args.iter()
                    .map(|a| a.substitute(var, replacement))
                    .collect(),
            ),
            other => other.clone(),
        }
    }

    fn collect_free_variables(&self, bound: &BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Variable(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Term::Apply(_, args) => {
                for a in args {
                    a.collect_free_variables(bound, out);
                }
            }
            Term::Constant(_) | Term::Witness(_) => {}
        }
    }

    /// Machine-readable name: `xi0` for witnesses, otherwise the plain
    /// identifier or `f(a,b)` spelling.
    pub fn machine_name(&self) -> String {
        match self {
            Term::Constant(c) => c.clone(),
            Term::Variable(v) => v.clone(),
            Term::Witness(i) => format!("xi{i}"),
            Term::Apply(f, args) => {
                let inner: Vec<String> = args.iter().map(Term::machine_name).collect();
                format!("{f}({})", inner.join(","))
            }
        }
    }
}

fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(c) => write!(f, "{c}"),
            Term::Variable(v) => write!(f, "{v}"),
            Term::Witness(i) => write!(f, "ξ{}", subscript(*i)),
            Term::Apply(fun, args) => {
                write!(f, "{fun}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Literal strength. `D` (defeasible) sorts before `U` (undefeasible), so
/// `D < U` mirrors "weaker before stronger".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    D,
    U,
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strength::D => write!(f, "d"),
            Strength::U => write!(f, "u"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flipped(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }
}

/// A ground or open atom: predicate applied to argument terms, with no
/// strength or polarity attached. Model layers hold atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.predicate)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<Term>,
    pub strength: Strength,
    pub polarity: Polarity,
    /// Metapredicate literals (`defref`) participate in rule matching but
    /// never enter a model layer.
    pub meta: bool,
}

impl Literal {
    pub fn new(
        predicate: impl Into<String>,
        args: Vec<Term>,
        strength: Strength,
        polarity: Polarity,
    ) -> Literal {
        Literal {
            predicate: predicate.into(),
            args,
            strength,
            polarity,
            meta: false,
        }
    }

    pub fn meta(predicate: impl Into<String>, args: Vec<Term>) -> Literal {
        Literal {
            predicate: predicate.into(),
            args,
            strength: Strength::U,
            polarity: Polarity::Pos,
            meta: true,
        }
    }

    pub fn atom(&self) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.clone(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn is_neq(&self) -> bool {
        self.predicate == NEQ
    }

    pub fn negated(&self) -> Literal {
        Literal {
            polarity: self.polarity.flipped(),
            ..self.clone()
        }
    }

    pub fn substitute(&self, var: &str, replacement: &Term) -> Literal {
        Literal {
            args: self
                .args
                .iter()
                .map(|a| a.substitute(var, replacement))
                .collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.polarity == Polarity::Neg {
            write!(f, "¬")?;
        }
        if self.meta {
            write!(f, "{}(", self.predicate)?;
        } else if self.is_neq() {
            let lhs = &self.args[0];
            let rhs = &self.args[1];
            let op = if self.polarity == Polarity::Neg {
                "="
            } else {
                "≠"
            };
            return write!(f, "({lhs} {op} {rhs})");
        } else {
            write!(f, "{}^{}(", self.predicate, self.strength)?;
        }
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Lit(Literal),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

impl Formula {
    /// Builds the negation of `f`, flipping literal polarity directly so
    /// that `Not` never wraps a bare literal.
    pub fn negation(f: Formula) -> Formula {
        match f {
            Formula::Lit(l) => Formula::Lit(l.negated()),
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Lit(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::ForAll(..) | Formula::Exists(..) => false,
        }
    }

    pub fn contains_meta(&self) -> bool {
        match self {
            Formula::Lit(l) => l.meta,
            Formula::Not(f) => f.contains_meta(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::contains_meta),
            Formula::Implies(a, b) => a.contains_meta() || b.contains_meta(),
            Formula::ForAll(_, f) | Formula::Exists(_, f) => f.contains_meta(),
        }
    }

    fn collect_free_variables(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Lit(l) => {
                for a in &l.args {
                    a.collect_free_variables(bound, out);
                }
            }
            Formula::Not(f) => f.collect_free_variables(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free_variables(bound, out);
                }
            }
            Formula::Implies(a, b) => {
                a.collect_free_variables(bound, out);
                b.collect_free_variables(bound, out);
            }
            Formula::ForAll(vars, f) | Formula::Exists(vars, f) => {
                let added: Vec<String> = vars
                    .iter()
                    .filter(|v| bound.insert((*v).clone()))
                    .cloned()
                    .collect();
                f.collect_free_variables(bound, out);
                for v in added {
                    bound.remove(&v);
                }
            }
        }
    }

    /// Every individual (constant or witness) mentioned anywhere in the
    /// formula, in encounter order.
    pub fn individuals(&self, out: &mut Vec<Term>) {
        match self {
            Formula::Lit(l) => {
                for a in &l.args {
                    a.individuals(out);
                }
            }
            Formula::Not(f) => f.individuals(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.individuals(out);
                }
            }
            Formula::Implies(a, b) => {
                a.individuals(out);
                b.individuals(out);
            }
            Formula::ForAll(_, f) | Formula::Exists(_, f) => f.individuals(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("cannot substitute non-ground term {0} for a variable")]
    NonGroundSubstitution(String),
}

/// Negation in negation normal form: flips literal polarity, swaps the
/// connectives, and turns `A -> B` into `A and not B`.
pub fn negate(f: &Formula) -> Formula {
    nnf_signed(f, true)
}

/// Negation normal form: `Not` nodes and `Implies` disappear, negation
/// settles into literal polarity.
pub fn nnf(f: &Formula) -> Formula {
    nnf_signed(f, false)
}

fn nnf_signed(f: &Formula, negated: bool) -> Formula {
    match f {
        Formula::Lit(l) => Formula::Lit(if negated { l.negated() } else { l.clone() }),
        Formula::Not(inner) => nnf_signed(inner, !negated),
        Formula::And(fs) => {
            let parts = fs.iter().map(|g| nnf_signed(g, negated)).collect();
            if negated {
                Formula::Or(parts)
            } else {
                Formula::And(parts)
            }
        }
        Formula::Or(fs) => {
            let parts = fs.iter().map(|g| nnf_signed(g, negated)).collect();
            if negated {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        Formula::Implies(a, b) => {
            if negated {
                Formula::And(vec![nnf_signed(a, false), nnf_signed(b, true)])
            } else {
                Formula::Or(vec![nnf_signed(a, true), nnf_signed(b, false)])
            }
        }
        Formula::ForAll(vars, body) => {
            let inner = Box::new(nnf_signed(body, negated));
            if negated {
                Formula::Exists(vars.clone(), inner)
            } else {
                Formula::ForAll(vars.clone(), inner)
            }
        }
        Formula::Exists(vars, body) => {
            let inner = Box::new(nnf_signed(body, negated));
            if negated {
                Formula::ForAll(vars.clone(), inner)
            } else {
                Formula::Exists(vars.clone(), inner)
            }
        }
    }
}

/// Substitutes the ground term `replacement` for every free occurrence of
/// `var`. Occurrences under a binder that rebinds `var` are left alone.
pub fn substitute(f: &Formula, var: &str, replacement: &Term) -> Result<Formula, LogicError> {
    if !replacement.is_ground() {
        return Err(LogicError::NonGroundSubstitution(replacement.to_string()));
    }
    Ok(substitute_unchecked(f, var, replacement))
}

fn substitute_unchecked(f: &Formula, var: &str, replacement: &Term) -> Formula {
    match f {
        Formula::Lit(l) => Formula::Lit(l.substitute(var, replacement)),
        Formula::Not(inner) => {
            Formula::Not(Box::new(substitute_unchecked(inner, var, replacement)))
        }
        Formula::And(fs) => Formula::And(
            fs.iter()
                .map(|g| substitute_unchecked(g, var, replacement))
                .collect(),
        ),
        Formula::Or(fs) => Formula::Or(
            fs.iter()
                .map(|g| substitute_unchecked(g, var, replacement))
                .collect(),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(substitute_unchecked(a, var, replacement)),
            Box::new(substitute_unchecked(b, var, replacement)),
        ),
        Formula::ForAll(vars, body) | Formula::Exists(vars, body) => {
            let rebuilt = if vars.iter().any(|v| v == var) {
                (**body).clone()
            } else {
                substitute_unchecked(body, var, replacement)
            };
            match f {
                Formula::ForAll(..) => Formula::ForAll(vars.clone(), Box::new(rebuilt)),
                _ => Formula::Exists(vars.clone(), Box::new(rebuilt)),
            }
        }
    }
}

pub fn free_variables(f: &Formula) -> BTreeSet<String> {
    let mut bound = BTreeSet::new();
    let mut out = BTreeSet::new();
    f.collect_free_variables(&mut bound, &mut out);
    out
}

/// Origin of an axiom within a discourse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomTag {
    /// World knowledge that holds regardless of what is said.
    Core,
    /// Rules about what using an expression commits the speaker to.
    LanguageUse,
    /// The asserted content of the discourse itself.
    Utterance,
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomTag::Core => write!(f, "core"),
            AxiomTag::LanguageUse => write!(f, "language-use"),
            AxiomTag::Utterance => write!(f, "utterance"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub tag: AxiomTag,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    pub axioms: Vec<Axiom>,
    /// Arity of every predicate that occurs in the axioms.
    pub signature: std::collections::BTreeMap<String, usize>,
    /// Ontology predicates actually used by this theory.
    pub ontology: BTreeSet<String>,
}

impl Theory {
    /// Assembles a theory from axioms, deriving the signature. Fails on
    /// inconsistent arities or duplicate axiom ids; richer diagnostics with
    /// source positions come from the parser.
    pub fn from_axioms(axioms: Vec<Axiom>) -> Result<Theory, String> {
        let mut signature = std::collections::BTreeMap::new();
        let mut ids = BTreeSet::new();
        for ax in &axioms {
            if !ids.insert(ax.id.clone()) {
                return Err(format!("duplicate axiom id `{}`", ax.id));
            }
            collect_signature(&ax.formula, &mut signature)
                .map_err(|e| format!("in axiom `{}`: {e}", ax.id))?;
        }
        let ontology = signature
            .keys()
            .filter(|p| ONTOLOGY_PREDICATES.contains(&p.as_str()))
            .cloned()
            .collect();
        Ok(Theory {
            axioms,
            signature,
            ontology,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.axioms
            .iter()
            .all(|ax| ax.formula.is_quantifier_free() && free_variables(&ax.formula).is_empty())
    }

    pub fn contains_meta(&self) -> bool {
        self.axioms.iter().any(|ax| ax.formula.contains_meta())
    }

    /// Constants and witnesses mentioned by the axioms, in encounter order.
    pub fn individuals(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for ax in &self.axioms {
            ax.formula.individuals(&mut out);
        }
        out
    }

    pub fn extended(&self, axiom: Axiom) -> Result<Theory, String> {
        let mut axioms = self.axioms.clone();
        axioms.push(axiom);
        Theory::from_axioms(axioms)
    }
}

fn collect_signature(
    f: &Formula,
    signature: &mut std::collections::BTreeMap<String, usize>,
) -> Result<(), String> {
    match f {
        Formula::Lit(l) => {
            if l.is_neq() {
                return Ok(());
            }
            let arity = l.args.len();
            match signature.get(&l.predicate) {
                Some(&known) if known != arity => Err(format!(
                    "predicate `{}` used with arity {arity} but previously {known}",
                    l.predicate
                )),
                _ => {
                    signature.insert(l.predicate.clone(), arity);
                    Ok(())
                }
            }
        }
        Formula::Not(f) => collect_signature(f, signature),
        Formula::And(fs) | Formula::Or(fs) => {
            for f in fs {
                collect_signature(f, signature)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) => {
            collect_signature(a, signature)?;
            collect_signature(b, signature)
        }
        Formula::ForAll(_, f) | Formula::Exists(_, f) => collect_signature(f, signature),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str) -> Term {
        Term::Constant(name.into())
    }

    fn v(name: &str) -> Term {
        Term::Variable(name.into())
    }

    fn lit(p: &str, args: Vec<Term>, s: Strength, pol: Polarity) -> Formula {
        Formula::Lit(Literal::new(p, args, s, pol))
    }

    #[test]
    fn negate_flips_literal_polarity_without_a_not_node() {
        let f = lit("p", vec![c("a")], Strength::U, Polarity::Pos);
        let n = negate(&f);
        assert_eq!(n, lit("p", vec![c("a")], Strength::U, Polarity::Neg));
        assert_eq!(negate(&n), f);
    }

    #[test]
    fn negate_dualizes_connectives_and_quantifiers() {
        let p = lit("p", vec![c("a")], Strength::U, Polarity::Pos);
        let q = lit("q", vec![c("a")], Strength::D, Polarity::Pos);
        assert_eq!(
            negate(&Formula::And(vec![p.clone(), q.clone()])),
            Formula::Or(vec![negate(&p), negate(&q)])
        );
        assert_eq!(
            negate(&Formula::Implies(Box::new(p.clone()), Box::new(q.clone()))),
            Formula::And(vec![p.clone(), negate(&q)])
        );
        let all = Formula::ForAll(
            vec!["x".into()],
            Box::new(lit("p", vec![v("x")], Strength::U, Polarity::Pos)),
        );
        assert_eq!(
            negate(&all),
            Formula::Exists(
                vec!["x".into()],
                Box::new(lit("p", vec![v("x")], Strength::U, Polarity::Neg)),
            )
        );
    }

    #[test]
    fn negate_unwraps_not() {
        let p = lit("p", vec![c("a")], Strength::U, Polarity::Pos);
        let conj = Formula::And(vec![p.clone(), p.clone()]);
        assert_eq!(negate(&Formula::Not(Box::new(conj.clone()))), conj);
    }

    #[test]
    fn nnf_eliminates_not_and_implies_at_any_depth() {
        let p = lit("p", vec![c("a")], Strength::U, Polarity::Pos);
        let q = lit("q", vec![c("a")], Strength::D, Polarity::Pos);
        let f = Formula::Not(Box::new(Formula::Implies(
            Box::new(Formula::Not(Box::new(p.clone()))),
            Box::new(Formula::Exists(vec!["x".into()], Box::new(q.clone()))),
        )));
        assert_eq!(
            nnf(&f),
            Formula::And(vec![
                negate(&p),
                Formula::ForAll(vec!["x".into()], Box::new(negate(&q))),
            ])
        );
        assert_eq!(nnf(&nnf(&f)), nnf(&f));
        assert_eq!(negate(&negate(&f)), nnf(&f));
    }

    #[test]
    fn substitute_replaces_free_occurrences_only() {
        let body = Formula::And(vec![
            lit("p", vec![v("x")], Strength::U, Polarity::Pos),
            Formula::ForAll(
                vec!["x".into()],
                Box::new(lit("q", vec![v("x")], Strength::U, Polarity::Pos)),
            ),
        ]);
        let out = substitute(&body, "x", &c("a")).unwrap();
        assert_eq!(
            out,
            Formula::And(vec![
                lit("p", vec![c("a")], Strength::U, Polarity::Pos),
                Formula::ForAll(
                    vec!["x".into()],
                    Box::new(lit("q", vec![v("x")], Strength::U, Polarity::Pos)),
                ),
            ])
        );
    }

    #[test]
    fn substitute_reaches_inside_function_terms() {
        let f = lit(
            "regret",
            vec![
                c("john"),
                Term::Apply("come".into(), vec![v("y"), c("party")]),
            ],
            Strength::U,
            Polarity::Neg,
        );
        let out = substitute(&f, "y", &c("mary")).unwrap();
        assert_eq!(
            out,
            lit(
                "regret",
                vec![
                    c("john"),
                    Term::Apply("come".into(), vec![c("mary"), c("party")])
                ],
                Strength::U,
                Polarity::Neg,
            )
        );
    }

    #[test]
    fn substitute_rejects_non_ground_replacement() {
        let f = lit("p", vec![v("x")], Strength::U, Polarity::Pos);
        let err = substitute(&f, "x", &v("y")).unwrap_err();
        assert_eq!(err, LogicError::NonGroundSubstitution("y".into()));
    }

    #[test]
    fn free_variables_sees_through_shadowing() {
        let f = Formula::And(vec![
            lit("p", vec![v("x"), v("y")], Strength::U, Polarity::Pos),
            Formula::Exists(
                vec!["y".into()],
                Box::new(lit("q", vec![v("y"), v("z")], Strength::D, Polarity::Neg)),
            ),
        ]);
        let fv = free_variables(&f);
        assert_eq!(
            fv.into_iter().collect::<Vec<_>>(),
            vec!["x".to_string(), "y".to_string(), "z".to_string()]
        );
    }

    #[test]
    fn individuals_collects_constants_inside_function_terms_but_not_the_term() {
        let f = lit(
            "regret",
            vec![
                c("john"),
                Term::Apply("come".into(), vec![c("mary"), c("party")]),
            ],
            Strength::U,
            Polarity::Neg,
        );
        let mut out = Vec::new();
        f.individuals(&mut out);
        assert_eq!(out, vec![c("john"), c("mary"), c("party")]);
    }

    #[test]
    fn witness_display_uses_subscripts() {
        assert_eq!(Term::Witness(0).to_string(), "ξ₀");
        assert_eq!(Term::Witness(12).to_string(), "ξ₁₂");
        assert_eq!(Term::Witness(12).machine_name(), "xi12");
    }

    #[test]
    fn strength_orders_defeasible_below_undefeasible() {
        assert!(Strength::D < Strength::U);
    }

    #[test]
    fn theory_signature_rejects_inconsistent_arity() {
        let axioms = vec![
            Axiom {
                id: "a1".into(),
                tag: AxiomTag::Core,
                formula: lit("p", vec![c("a")], Strength::U, Polarity::Pos),
            },
            Axiom {
                id: "a2".into(),
                tag: AxiomTag::Core,
                formula: lit("p", vec![c("a"), c("b")], Strength::U, Polarity::Pos),
            },
        ];
        assert!(Theory::from_axioms(axioms).is_err());
    }

    #[test]
    fn theory_signature_rejects_duplicate_ids() {
        let ax = Axiom {
            id: "a1".into(),
            tag: AxiomTag::Core,
            formula: lit("p", vec![c("a")], Strength::U, Polarity::Pos),
        };
        assert!(Theory::from_axioms(vec![ax.clone(), ax]).is_err());
    }
}
