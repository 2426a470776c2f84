//! Presupposition reports and incremental discourse sessions.
//!
//! A presupposition is a defeasible literal that a language-use rule put
//! into the optimistic models of the discourse. It stays `Presupposed`
//! while every optimistic schema carries it uncancelled, becomes
//! `Cancelled` when every optimistic schema defeats it with the opposite
//! hard literal, and is `Disputed` when the optimistic schemata disagree.
//! Defeasible facts from core knowledge never appear in a report: knowing
//! that birds fly is not something an utterance presupposes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{free_variables, Axiom, AxiomTag, Formula, Literal, Polarity, Strength, Theory};
use crate::schemata::{cancelled_atoms, optimistic, project_model, ModelSchema};
use crate::tableaux::{expand, ExpansionBudget, ExpansionStats, TableauxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PresupStatus {
    Presupposed,
    Cancelled,
    Disputed,
}

impl std::fmt::Display for PresupStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PresupStatus::Presupposed => write!(f, "Presupposed"),
            PresupStatus::Cancelled => write!(f, "Cancelled"),
            PresupStatus::Disputed => write!(f, "Disputed"),
        }
    }
}

/// A defeasible literal derived by language-use rules, with the ids of the
/// axioms that derived it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenancedLiteral {
    pub literal: Literal,
    pub sources: BTreeSet<String>,
    pub status: PresupStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresuppositionReport {
    /// Every schema the expansion produced, cancellations still visible.
    pub all_schemata: Vec<ModelSchema>,
    /// The optimistic schemata with cancelled defeasible atoms dropped:
    /// the models the discourse actually commits to.
    pub optimistic_schemata: Vec<ModelSchema>,
    pub presuppositions: Vec<ProvenancedLiteral>,
    pub unsatisfiable: bool,
    pub stats: ExpansionStats,
}

impl PresuppositionReport {
    pub fn status_of(&self, literal: &Literal) -> Option<PresupStatus> {
        self.presuppositions
            .iter()
            .find(|p| &p.literal == literal)
            .map(|p| p.status)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Expansion(#[from] TableauxError),
    #[error("{0}")]
    Theory(String),
    #[error("utterance has free variables: {0}")]
    OpenUtterance(String),
}

pub fn analyze(
    theory: &Theory,
    budget: &ExpansionBudget,
) -> Result<PresuppositionReport, TableauxError> {
    let expansion = expand(theory, budget)?;
    if expansion.schemata.is_empty() {
        return Ok(PresuppositionReport {
            all_schemata: Vec::new(),
            optimistic_schemata: Vec::new(),
            presuppositions: Vec::new(),
            unsatisfiable: true,
            stats: expansion.stats,
        });
    }

    let best = optimistic(&expansion.schemata).expect("nonempty candidate set");
    let best_provenance: Vec<&BTreeMap<Literal, BTreeSet<String>>> = best
        .iter()
        .map(|s| {
            let i = expansion
                .schemata
                .iter()
                .position(|c| c == s)
                .expect("optimistic schemata come from the candidate list");
            &expansion.provenance[i]
        })
        .collect();

    let mut candidates: BTreeMap<Literal, BTreeSet<String>> = BTreeMap::new();
    for prov in &best_provenance {
        for (lit, ids) in prov.iter() {
            if lit.strength == Strength::D {
                candidates
                    .entry(lit.clone())
                    .or_default()
                    .extend(ids.iter().cloned());
            }
        }
    }

    let mut presuppositions = Vec::new();
    for (literal, sources) in candidates {
        let atom = literal.atom();
        let mut alive_everywhere = true;
        let mut cancelled_everywhere = true;
        for schema in &best {
            let in_layer = match literal.polarity {
                Polarity::Pos => schema.rd.contains(&atom),
                Polarity::Neg => schema.rd_bar.contains(&atom),
            };
            let cancelled = cancelled_atoms(schema).contains(&(atom.clone(), literal.polarity));
            if !(in_layer && !cancelled) {
                alive_everywhere = false;
            }
            if !cancelled {
                cancelled_everywhere = false;
            }
        }
        let status = if alive_everywhere {
            PresupStatus::Presupposed
        } else if cancelled_everywhere {
            PresupStatus::Cancelled
        } else {
            PresupStatus::Disputed
        };
        presuppositions.push(ProvenancedLiteral {
            literal,
            sources,
            status,
        });
    }

    Ok(PresuppositionReport {
        optimistic_schemata: best.iter().map(project_model).collect(),
        all_schemata: expansion.schemata,
        presuppositions,
        unsatisfiable: false,
        stats: expansion.stats,
    })
}

/// A persistent view of an evolving discourse. Adding an utterance
/// re-analyzes the whole theory and returns a new session; the old session
/// keeps its report, so discourse states can be compared or rolled back.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscourseSession {
    pub base_theory: Theory,
    pub utterance_log: Vec<Axiom>,
    pub current_report: PresuppositionReport,
    budget: ExpansionBudget,
}

pub fn open_session(
    base: Theory,
    budget: &ExpansionBudget,
) -> Result<DiscourseSession, AnalysisError> {
    let current_report = analyze(&base, budget)?;
    Ok(DiscourseSession {
        base_theory: base,
        utterance_log: Vec::new(),
        current_report,
        budget: *budget,
    })
}

impl DiscourseSession {
    pub fn add_utterance(&self, formula: Formula) -> Result<DiscourseSession, AnalysisError> {
        let free = free_variables(&formula);
        if let Some(v) = free.into_iter().next() {
            return Err(AnalysisError::OpenUtterance(v));
        }
        let axiom = Axiom {
            id: self.fresh_utterance_id(),
            tag: AxiomTag::Utterance,
            formula,
        };
        let theory = self
            .combined_theory_with(&axiom)
            .map_err(AnalysisError::Theory)?;
        let current_report = analyze(&theory, &self.budget)?;
        let mut utterance_log = self.utterance_log.clone();
        utterance_log.push(axiom);
        Ok(DiscourseSession {
            base_theory: self.base_theory.clone(),
            utterance_log,
            current_report,
            budget: self.budget,
        })
    }

    pub fn combined_theory(&self) -> Result<Theory, String> {
        let mut axioms = self.base_theory.axioms.clone();
        axioms.extend(self.utterance_log.iter().cloned());
        Theory::from_axioms(axioms)
    }

    fn combined_theory_with(&self, extra: &Axiom) -> Result<Theory, String> {
        let mut axioms = self.base_theory.axioms.clone();
        axioms.extend(self.utterance_log.iter().cloned());
        axioms.push(extra.clone());
        Theory::from_axioms(axioms)
    }

    fn fresh_utterance_id(&self) -> String {
        let used: BTreeSet<&str> = self
            .base_theory
            .axioms
            .iter()
            .map(|a| a.id.as_str())
            .chain(self.utterance_log.iter().map(|a| a.id.as_str()))
            .collect();
        let mut n = self.utterance_log.len() + 1;
        loop {
            let id = format!("said-{n}");
            if !used.contains(id.as_str()) {
                return id;
            }
            n += 1;
        }
    }
}
