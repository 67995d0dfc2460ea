//! An executable model of a small term rewriting calculus in which a labelled
//! self-reference, `named(s, self_ref)`, is a paradox that the reduction
//! rules resolve in exactly three steps:
//!
//! ```text
//! p  ->  cap(p)  ->  enter(p)  ->  node(p)
//! ```
//!
//! after which the term only grows by `node`. The crate provides the term
//! algebra, a deterministic stepper with fuel-bounded traces, a completion
//! procedure that short-circuits the cycle, a parser and printer, and a
//! bounded-exhaustive checker for the calculus' meta-theory.
//!
//! ```
//! use mirror_core::{parse, print, step, StepOutcome, RuleId};
//!
//! let liar = parse(r#"named("Liar", self)"#).unwrap();
//! let StepOutcome::Stepped(rule, next) = step(&liar) else { unreachable!() };
//! assert_eq!(rule, RuleId::Paradox);
//! assert_eq!(print(&next), r#"cap(named("Liar", self))"#);
//! ```

pub mod cli;
pub mod completion;
pub mod metacheck;
pub mod semantics;
pub mod syntax;
pub mod term;

pub use completion::{
    complete, equivalent_mod_completion, is_mirror_canonical, is_stratified, CompletionResult,
};
pub use metacheck::{enumerate, CheckReport, Checker, EnumSpec, Property, Strategy};
pub use semantics::{
    applicable_rules, step, trace, RuleId, StepOutcome, StopReason, Trace, TraceEntry,
};
pub use syntax::structured::{from_structured, to_structured, trace_to_structured};
pub use syntax::{parse, print, ParseError};
pub use term::{Label, MirrorState, Term, TermKind};
