//! Output formats for schemata and reports.
//!
//! The table format mirrors the usual hand notation: hard layer, union
//! sign, defeasible layer, with witnesses written ξ₀, ξ₁. The machine
//! format is JSON with ASCII witness names (xi0, xi1) and lists the four
//! relation layers explicitly; it deserializes back into the same structs,
//! and its bytes are stable across runs for a given theory.

use serde::{Deserialize, Serialize};

use crate::logic::{Atom, Literal, Polarity};
use crate::presup::{PresupStatus, PresuppositionReport, ProvenancedLiteral};
use crate::schemata::ModelSchema;

pub fn machine_atom(a: &Atom) -> String {
    let args: Vec<String> = a.args.iter().map(|t| t.machine_name()).collect();
    format!("{}({})", a.predicate, args.join(","))
}

pub fn machine_literal(l: &Literal) -> String {
    let sign = if l.polarity == Polarity::Neg {
        "¬"
    } else {
        ""
    };
    let args: Vec<String> = l.args.iter().map(|t| t.machine_name()).collect();
    if l.meta {
        format!("{sign}{}({})", l.predicate, args.join(","))
    } else {
        format!("{sign}{}^{}({})", l.predicate, l.strength, args.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineSchema {
    pub universe: Vec<String>,
    pub ru: Vec<String>,
    pub ru_bar: Vec<String>,
    pub rd: Vec<String>,
    pub rd_bar: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachinePresupposition {
    pub literal: String,
    pub status: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineModels {
    pub unsatisfiable: bool,
    pub schemata: Vec<MachineSchema>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineReport {
    pub unsatisfiable: bool,
    pub schemata: Vec<MachineSchema>,
    pub presuppositions: Vec<MachinePresupposition>,
}

pub fn machine_schema(m: &ModelSchema) -> MachineSchema {
    MachineSchema {
        universe: m.universe.iter().map(|t| t.machine_name()).collect(),
        ru: m.ru.iter().map(machine_atom).collect(),
        ru_bar: m.ru_bar.iter().map(machine_atom).collect(),
        rd: m.rd.iter().map(machine_atom).collect(),
        rd_bar: m.rd_bar.iter().map(machine_atom).collect(),
    }
}

pub fn machine_models(schemata: &[ModelSchema], unsatisfiable: bool) -> MachineModels {
    MachineModels {
        unsatisfiable,
        schemata: schemata.iter().map(machine_schema).collect(),
    }
}

pub fn machine_report(r: &PresuppositionReport) -> MachineReport {
    MachineReport {
        unsatisfiable: r.unsatisfiable,
        schemata: r.optimistic_schemata.iter().map(machine_schema).collect(),
        presuppositions: r
            .presuppositions
            .iter()
            .map(|p| MachinePresupposition {
                literal: machine_literal(&p.literal),
                status: match p.status {
                    PresupStatus::Presupposed => "presupposed".to_string(),
                    PresupStatus::Cancelled => "cancelled".to_string(),
                    PresupStatus::Disputed => "disputed".to_string(),
                },
                sources: p.sources.iter().cloned().collect(),
            })
            .collect(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("machine structs serialize");
    s.push('\n');
    s
}

pub fn table_models(schemata: &[ModelSchema]) -> String {
    let mut out = String::new();
    for (i, m) in schemata.iter().enumerate() {
        out.push_str(&format!("{}. {}\n", i + 1, m));
    }
    out
}

fn table_status_section(out: &mut String, heading: &str, items: &[&ProvenancedLiteral]) {
    if items.is_empty() {
        return;
    }
    out.push_str(heading);
    out.push('\n');
    for p in items {
        let sources: Vec<&str> = p.sources.iter().map(String::as_str).collect();
        out.push_str(&format!("  {}  [{}]\n", p.literal, sources.join(", ")));
    }
}

pub fn table_report(r: &PresuppositionReport) -> String {
    if r.unsatisfiable {
        return "theory has no model (utterance interpreted as false)\n".to_string();
    }
    let mut out = String::new();
    out.push_str("models:\n");
    for (i, m) in r.optimistic_schemata.iter().enumerate() {
        out.push_str(&format!("  {}. {}\n", i + 1, m));
    }
    if r.presuppositions.is_empty() {
        out.push_str("no presuppositions\n");
        return out;
    }
    let by_status = |s: PresupStatus| -> Vec<&ProvenancedLiteral> {
        r.presuppositions.iter().filter(|p| p.status == s).collect()
    };
    table_status_section(
        &mut out,
        "presupposed:",
        &by_status(PresupStatus::Presupposed),
    );
    table_status_section(&mut out, "cancelled:", &by_status(PresupStatus::Cancelled));
    table_status_section(&mut out, "disputed:", &by_status(PresupStatus::Disputed));
    out
}

/// Lines describing how presupposition statuses moved between two reports,
/// for the interactive session loop. Unchanged literals produce no line.
pub fn status_changes(old: &PresuppositionReport, new: &PresuppositionReport) -> Vec<String> {
    let mut lines = Vec::new();
    for p in &old.presuppositions {
        match new.status_of(&p.literal) {
            Some(s) if s == p.status => {}
            Some(s) => lines.push(format!("{}: {} → {}", p.literal, p.status, s)),
            None => lines.push(format!("{}: {} → none", p.literal, p.status)),
        }
    }
    for p in &new.presuppositions {
        if old.status_of(&p.literal).is_none() {
            lines.push(format!("{}: none → {}", p.literal, p.status));
        }
    }
    lines
}
