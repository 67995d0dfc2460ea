//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code with the text to
//! print, so the binary is a thin wrapper and tests can drive it in-process.

use std::fmt::Write as _;
use std::num::NonZeroUsize;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::completion::complete;
use crate::metacheck::{Checker, EnumSpec};
use crate::semantics::{step, trace, StepOutcome};
use crate::syntax::structured::{to_structured, trace_to_structured};
use crate::syntax::{parse, print, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_FUEL: usize = 100;
pub const DEFAULT_MAX_SIZE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Parse,
    Step,
    Trace,
    Classify,
    Complete,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Plain,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    /// Term source text; `None` means read standard input.
    pub term_text: Option<String>,
    pub fuel: NonZeroUsize,
    pub output_mode: OutputMode,
    pub check_max_size: NonZeroUsize,
    pub check_labels: Vec<String>,
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        CliConfig {
            command,
            term_text: None,
            fuel: NonZeroUsize::new(DEFAULT_FUEL).unwrap(),
            output_mode: OutputMode::Plain,
            check_max_size: NonZeroUsize::new(DEFAULT_MAX_SIZE).unwrap(),
            check_labels: vec!["a".into(), "b".into()],
        }
    }

    pub fn with_term(mut self, text: impl Into<String>) -> Self {
        self.term_text = Some(text.into());
        self
    }

    fn with_optional_term(mut self, text: Option<String>) -> Self {
        self.term_text = text;
        self
    }
}

/// Run a command of the mirror calculus on a term.
#[derive(Debug, Parser)]
#[command(name = "mirror", version, about)]
struct Args {
    /// Emit JSON documents instead of plain text.
    #[arg(long, global = true)]
    structured: bool,

    #[command(subcommand)]
    command: ArgCommand,
}

#[derive(Debug, Subcommand)]
enum ArgCommand {
    /// Parse a term and echo its canonical form.
    Parse { term: Option<String> },
    /// Take one reduction step.
    Step { term: Option<String> },
    /// Reduce repeatedly, printing every intermediate term.
    Trace {
        term: Option<String>,
        #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_FUEL).unwrap())]
        fuel: NonZeroUsize,
    },
    /// Print the state of a term: Normal, Paradox, Integrate or Reentry.
    Classify { term: Option<String> },
    /// Resolve every paradox to its canonical form.
    Complete { term: Option<String> },
    /// Exhaustively check the meta-theory up to a size bound.
    Check {
        #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_MAX_SIZE).unwrap())]
        max_size: NonZeroUsize,
        /// Comma-separated labels used for `named` terms.
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        labels: Vec<String>,
    },
}

/// Parses command-line arguments. `Err` carries clap's rendered message and exit code.
pub fn config_from_args<I, T>(args: I) -> Result<CliConfig, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        (code, e.render().to_string())
    })?;
    let mut config = match args.command {
        ArgCommand::Parse { term } => CliConfig::new(Command::Parse).with_optional_term(term),
        ArgCommand::Step { term } => CliConfig::new(Command::Step).with_optional_term(term),
        ArgCommand::Trace { term, fuel } => CliConfig {
            fuel,
            ..CliConfig::new(Command::Trace).with_optional_term(term)
        },
        ArgCommand::Classify { term } => CliConfig::new(Command::Classify).with_optional_term(term),
        ArgCommand::Complete { term } => CliConfig::new(Command::Complete).with_optional_term(term),
        ArgCommand::Check { max_size, labels } => CliConfig {
            check_max_size: max_size,
            check_labels: labels,
            ..CliConfig::new(Command::Check)
        },
    };
    if args.structured {
        config.output_mode = OutputMode::Structured;
    }
    Ok(config)
}

fn render_parse_error(src: &str, e: &ParseError) -> String {
    let mut out = format!("error: parse error at {e}\n");
    if let Some(line) = src.lines().nth(e.line - 1) {
        let _ = writeln!(out, "  | {line}");
        let _ = writeln!(out, "  | {}^", " ".repeat(e.column - 1));
    }
    out
}

fn doc_line(doc: Value) -> String {
    let mut s = doc.to_string();
    s.push('\n');
    s
}

/// Executes `config`. `input` is the term text when `config.term_text` is `None`.
pub fn run(config: &CliConfig, input: &str) -> (i32, String) {
    let structured = config.output_mode == OutputMode::Structured;

    if config.command == Command::Check {
        let spec = match EnumSpec::new(
            config.check_max_size.get(),
            config.check_labels.iter().map(String::as_str),
        ) {
            Ok(s) => s,
            Err(e) => return (EXIT_USAGE, format!("error: {e}\n")),
        };
        let reports = Checker::new(spec).run_all();
        let passed = reports.iter().all(|r| r.passed);
        let code = if passed { EXIT_OK } else { EXIT_CHECK_FAILED };
        if structured {
            let docs: Vec<Value> = reports.iter().map(|r| r.to_structured()).collect();
            return (code, doc_line(json!({ "passed": passed, "reports": docs })));
        }
        let mut out = String::new();
        for r in &reports {
            let _ = writeln!(out, "{r}");
        }
        if let Some(t) = reports
            .iter()
            .find(|r| !r.passed)
            .and_then(|r| r.counterexample.as_ref())
        {
            let _ = writeln!(out, "first counterexample: {}", print(t));
        }
        return (code, out);
    }

    let src = config.term_text.as_deref().unwrap_or(input);
    let term = match parse(src) {
        Ok(t) => t,
        Err(e) => return (EXIT_USAGE, render_parse_error(src, &e)),
    };

    let out = match config.command {
        Command::Parse if structured => doc_line(to_structured(&term)),
        Command::Parse => format!("{}\n", print(&term)),
        Command::Step => match (step(&term), structured) {
            (StepOutcome::Stepped(rule, next), true) => doc_line(json!({
                "outcome": "stepped",
                "rule": rule.name(),
                "term": to_structured(&next),
            })),
            (StepOutcome::Stepped(rule, next), false) => format!("{rule}: {}\n", print(&next)),
            (StepOutcome::Value, true) => doc_line(json!({ "outcome": "value" })),
            (StepOutcome::Value, false) => "value\n".to_owned(),
        },
        Command::Trace => {
            let tr = trace(&term, config.fuel);
            if structured {
                doc_line(trace_to_structured(&tr))
            } else {
                let mut out = String::new();
                for e in &tr.entries {
                    let _ = writeln!(out, "Step {}: {}", e.index, print(&e.term));
                }
                out
            }
        }
        Command::Classify if structured => doc_line(json!({ "state": term.classify().name() })),
        Command::Classify => format!("{}\n", term.classify()),
        Command::Complete => {
            let r = complete(&term);
            if structured {
                doc_line(json!({
                    "canonical": to_structured(&r.canonical),
                    "rewrites_applied": r.rewrites_applied,
                }))
            } else {
                format!(
                    "{}\nrewrites_applied: {}\n",
                    print(&r.canonical),
                    r.rewrites_applied
                )
            }
        }
        Command::Check => unreachable!("handled above"),
    };
    (EXIT_OK, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_term(command: Command, term: &str) -> (i32, String) {
        run(&CliConfig::new(command).with_term(term), "")
    }

    #[test]
    fn liar_trace_listing() {
        let mut cfg = CliConfig::new(Command::Trace).with_term(r#"named("Liar", self)"#);
        cfg.fuel = NonZeroUsize::new(3).unwrap();
        let (code, out) = run(&cfg, "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            concat!(
                "Step 0: named(\"Liar\", self)\n",
                "Step 1: cap(named(\"Liar\", self))\n",
                "Step 2: enter(named(\"Liar\", self))\n",
                "Step 3: node(named(\"Liar\", self))\n",
            )
        );
    }

    #[test]
    fn step_and_classify() {
        assert_eq!(run_term(Command::Step, "base"), (0, "value\n".into()));
        assert_eq!(
            run_term(Command::Step, "node(base)"),
            (0, "Reduction-Node: node(node(base))\n".into())
        );
        assert_eq!(
            run_term(Command::Classify, r#"named("x", self)"#),
            (0, "Paradox\n".into())
        );
        assert_eq!(
            run_term(Command::Classify, "enter(base)"),
            (0, "Reentry\n".into())
        );
    }

    #[test]
    fn complete_output() {
        assert_eq!(
            run_term(Command::Complete, r#"cap(named("L", self))"#),
            (
                0,
                "cap(node(named(\"L\", self)))\nrewrites_applied: 1\n".into()
            )
        );
    }

    #[test]
    fn parse_normalizes_and_reports_errors() {
        assert_eq!(
            run_term(Command::Parse, " node ( base ) "),
            (0, "node(base)\n".into())
        );
        let (code, out) = run_term(Command::Parse, "node(");
        assert_eq!(code, EXIT_USAGE);
        assert!(out.contains("line 1, column 6"), "{out}");
        assert!(out.contains("expected a term, found end of input"), "{out}");
    }

    #[test]
    fn term_read_from_input_when_absent() {
        let (code, out) = run(&CliConfig::new(Command::Parse), "cap(self)\n");
        assert_eq!((code, out.as_str()), (0, "cap(self)\n"));
    }

    #[test]
    fn args_defaults_and_flags() {
        let cfg = config_from_args(["mirror", "trace", "base"]).unwrap();
        assert_eq!(cfg.fuel.get(), DEFAULT_FUEL);
        assert_eq!(cfg.term_text.as_deref(), Some("base"));
        let cfg = config_from_args([
            "mirror",
            "check",
            "--max-size",
            "3",
            "--labels",
            "x,y,z",
            "--structured",
        ])
        .unwrap();
        assert_eq!(cfg.command, Command::Check);
        assert_eq!(cfg.check_max_size.get(), 3);
        assert_eq!(cfg.check_labels, ["x", "y", "z"]);
        assert_eq!(cfg.output_mode, OutputMode::Structured);
        let cfg = config_from_args(["mirror", "check"]).unwrap();
        assert_eq!(cfg.check_max_size.get(), 7);
        assert_eq!(cfg.check_labels, ["a", "b"]);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(
            config_from_args(["mirror", "trace", "base", "--fuel", "0"])
                .unwrap_err()
                .0,
            EXIT_USAGE
        );
        assert_eq!(
            config_from_args(["mirror", "frobnicate"]).unwrap_err().0,
            EXIT_USAGE
        );
        assert_eq!(
            config_from_args(["mirror", "--help"]).unwrap_err().0,
            EXIT_OK
        );
    }
}
