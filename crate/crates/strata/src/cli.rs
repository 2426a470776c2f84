//! The `strata` command line tool.
//!
//! Exit codes: 0 for a satisfiable theory (or clean validation), 1 for
//! usage, parse, and budget problems, 2 when the theory has no model and
//! the utterance is therefore interpreted as false.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::logic::Theory;
use crate::parser::{parse_formula, parse_theory, ParseError};
use crate::presup::{analyze, open_session, AnalysisError, DiscourseSession, PresuppositionReport};
use crate::render::{
    machine_models, machine_report, status_changes, table_models, table_report, to_json,
};
use crate::schemata::ModelSchema;
use crate::tableaux::ExpansionBudget;

pub const NO_MODEL_MESSAGE: &str = "theory has no model (utterance interpreted as false)";
pub const BUDGET_STEPS_ENV: &str = "STRATA_BUDGET_STEPS";

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Model schemata and presuppositions for stratified theories"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the model schemata of a theory
    Models {
        file: PathBuf,
        /// Show every schema, including defeated and non-optimistic ones
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Report the presuppositions of a theory
    Presup {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Parse and validate a theory file without analyzing it
    Check { file: PathBuf },
    /// Explore a discourse interactively, one utterance at a time
    Repl {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    /// Hand notation with ξ witnesses
    #[default]
    Table,
    /// Stable JSON with ASCII witness names
    Machine,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest universe a branch may grow before expansion gives up
    #[arg(long, value_name = "N")]
    budget_universe: Option<usize>,
    /// Most expansion steps before giving up; STRATA_BUDGET_STEPS also works
    #[arg(long, value_name = "N")]
    budget_steps: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<ExpansionBudget, String> {
        let mut budget = ExpansionBudget::default();
        if let Some(n) = self.budget_universe {
            budget.max_universe = n;
        }
        match self.budget_steps {
            Some(n) => budget.max_steps = n,
            None => {
                if let Ok(raw) = std::env::var(BUDGET_STEPS_ENV) {
                    budget.max_steps = raw
                        .parse()
                        .map_err(|_| format!("invalid {BUDGET_STEPS_ENV}: {raw:?}"))?;
                }
            }
        }
        Ok(budget)
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch(cli.command, &mut stdout.lock(), &mut stderr.lock()).unwrap_or(1)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match command {
        Command::Models {
            file,
            all,
            format,
            budget,
        } => {
            let Some(theory) = load_theory(&file, err)? else {
                return Ok(1);
            };
            let budget = match resolve_budget(&budget, err)? {
                Some(b) => b,
                None => return Ok(1),
            };
            let report = match analyze(&theory, &budget) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "strata: {e}")?;
                    return Ok(1);
                }
            };
            let schemata: &[ModelSchema] = if all {
                &report.all_schemata
            } else {
                &report.optimistic_schemata
            };
            match format {
                Format::Table => {
                    if report.unsatisfiable {
                        writeln!(out, "{NO_MODEL_MESSAGE}")?;
                    } else {
                        write!(out, "{}", table_models(schemata))?;
                    }
                }
                Format::Machine => {
                    write!(
                        out,
                        "{}",
                        to_json(&machine_models(schemata, report.unsatisfiable))
                    )?;
                }
            }
            Ok(if report.unsatisfiable { 2 } else { 0 })
        }
        Command::Presup {
            file,
            format,
            budget,
        } => {
            let Some(theory) = load_theory(&file, err)? else {
                return Ok(1);
            };
            let budget = match resolve_budget(&budget, err)? {
                Some(b) => b,
                None => return Ok(1),
            };
            let report = match analyze(&theory, &budget) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "strata: {e}")?;
                    return Ok(1);
                }
            };
            match format {
                Format::Table => write!(out, "{}", table_report(&report))?,
                Format::Machine => write!(out, "{}", to_json(&machine_report(&report)))?,
            }
            Ok(if report.unsatisfiable { 2 } else { 0 })
        }
        Command::Check { file } => {
            let Some(theory) = load_theory(&file, err)? else {
                return Ok(1);
            };
            writeln!(out, "ok: {} axioms", theory.axioms.len())?;
            Ok(0)
        }
        Command::Repl { file, budget } => {
            let Some(theory) = load_theory(&file, err)? else {
                return Ok(1);
            };
            let budget = match resolve_budget(&budget, err)? {
                Some(b) => b,
                None => return Ok(1),
            };
            let session = match open_session(theory, &budget) {
                Ok(s) => s,
                Err(e) => {
                    writeln!(err, "strata: {e}")?;
                    return Ok(1);
                }
            };
            let stdin = std::io::stdin();
            repl(session, &mut stdin.lock(), out, err)
        }
    }
}

fn load_theory(path: &Path, err: &mut dyn Write) -> std::io::Result<Option<Theory>> {
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "strata: {}: {e}", path.display())?;
            return Ok(None);
        }
    };
    match parse_theory(&source) {
        Ok(t) => Ok(Some(t)),
        Err(errors) => {
            write_parse_errors(path, &errors, err)?;
            Ok(None)
        }
    }
}

fn write_parse_errors(
    path: &Path,
    errors: &[ParseError],
    err: &mut dyn Write,
) -> std::io::Result<()> {
    for e in errors {
        writeln!(
            err,
            "{}:{}:{}: {}",
            path.display(),
            e.span.line,
            e.span.column,
            e
        )?;
    }
    Ok(())
}

fn resolve_budget(
    args: &BudgetArgs,
    err: &mut dyn Write,
) -> std::io::Result<Option<ExpansionBudget>> {
    match args.resolve() {
        Ok(b) => Ok(Some(b)),
        Err(msg) => {
            writeln!(err, "strata: {msg}")?;
            Ok(None)
        }
    }
}

const REPL_HELP: &str = "\
commands:
  add <formula>   assert an utterance, e.g. add (not (come^u mary party))
  report          show models and presupposition statuses
  models          show the optimistic model schemata
  undo            retract the most recent utterance
  quit            leave the session
";

fn repl(
    initial: DiscourseSession,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let mut history = vec![initial];
    if current(&history).unsatisfiable {
        writeln!(out, "{NO_MODEL_MESSAGE}")?;
    }
    loop {
        write!(out, "> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(0);
        }
        let line = line.trim();
        let (command, rest) = match line.split_once(char::is_whitespace) {
            Some((c, r)) => (c, r.trim()),
            None => (line, ""),
        };
        match command {
            "" => {}
            "quit" | "exit" => return Ok(0),
            "help" => write!(out, "{REPL_HELP}")?,
            "report" => write!(out, "{}", table_report(current(&history)))?,
            "models" => {
                let report = current(&history);
                if report.unsatisfiable {
                    writeln!(out, "{NO_MODEL_MESSAGE}")?;
                } else {
                    write!(out, "{}", table_models(&report.optimistic_schemata))?;
                }
            }
            "undo" => {
                if history.len() == 1 {
                    writeln!(out, "nothing to undo")?;
                } else {
                    history.pop();
                    writeln!(out, "retracted; {} utterance(s) remain", history.len() - 1)?;
                }
            }
            "add" => {
                if rest.is_empty() {
                    writeln!(err, "usage: add <formula>")?;
                    continue;
                }
                let formula = match parse_formula(rest) {
                    Ok(f) => f,
                    Err(errors) => {
                        for e in &errors {
                            writeln!(err, "utterance:{}:{}: {}", e.span.line, e.span.column, e)?;
                        }
                        continue;
                    }
                };
                let session = history.last().expect("history starts nonempty");
                match session.add_utterance(formula) {
                    Ok(next) => {
                        if next.current_report.unsatisfiable {
                            writeln!(out, "{NO_MODEL_MESSAGE}")?;
                            writeln!(out, "utterance rejected")?;
                            continue;
                        }
                        let changes = status_changes(&session.current_report, &next.current_report);
                        if changes.is_empty() {
                            writeln!(out, "no presupposition changes")?;
                        } else {
                            for line in changes {
                                writeln!(out, "{line}")?;
                            }
                        }
                        history.push(next);
                    }
                    Err(AnalysisError::Expansion(e)) => writeln!(err, "strata: {e}")?,
                    Err(e) => writeln!(err, "strata: {e}")?,
                }
            }
            other => {
                writeln!(err, "unknown command: {other} (try help)")?;
            }
        }
    }
}

fn current(history: &[DiscourseSession]) -> &PresuppositionReport {
    &history
        .last()
        .expect("history starts nonempty")
        .current_report
}
