//! Single-step reduction, rule introspection and fuel-bounded traces.

use std::fmt;
use std::num::NonZeroUsize;

use crate::term::{Term, TermKind};

/// The five reduction rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `named(s, self_ref) -> cap(named(s, self_ref))`
    Paradox,
    /// `cap(t) -> enter(t)`
    Integrate,
    /// `enter(t) -> node(t)`
    Reentry,
    /// `node(t) -> node(node(t))`
    Node,
    /// Congruence under `named`.
    Named,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::Paradox,
        RuleId::Integrate,
        RuleId::Reentry,
        RuleId::Node,
        RuleId::Named,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Paradox => "Reduction-Paradox",
            RuleId::Integrate => "Reduction-Integrate",
            RuleId::Reentry => "Reduction-Reentry",
            RuleId::Node => "Reduction-Node",
            RuleId::Named => "Reduction-Named",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Stepped(RuleId, Term),
    Value,
}

impl StepOutcome {
    pub fn into_stepped(self) -> Option<(RuleId, Term)> {
        match self {
            StepOutcome::Stepped(r, t) => Some((r, t)),
            StepOutcome::Value => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, StepOutcome::Value)
    }
}

// Rules that fire at the root of `t` without descending, in dispatch order.
fn root_redex(t: &Term) -> Option<(RuleId, Term)> {
    if t.is_paradox() {
        return Some((RuleId::Paradox, Term::cap(t.clone())));
    }
    match t.kind() {
        TermKind::Cap(u) => Some((RuleId::Integrate, Term::enter(u.clone()))),
        // The side condition applies to `enter(u)` as a whole, which is never
        // a paradox, so re-entry always fires.
        TermKind::Enter(u) => Some((RuleId::Reentry, Term::node(u.clone()))),
        TermKind::Node(_) => Some((RuleId::Node, Term::node(t.clone()))),
        TermKind::Base | TermKind::SelfRef | TermKind::Named(..) => None,
    }
}

/// One deterministic reduction step.
///
/// The paradox check runs before the `named` congruence. Under `named` the
/// step descends through the label chain and rewraps the result; no other
/// constructor has a congruence rule.
pub fn step(t: &Term) -> StepOutcome {
    let mut labels: Vec<&Term> = Vec::new();
    let mut cur = t;
    loop {
        if let Some((rule, next)) = root_redex(cur) {
            return if labels.is_empty() {
                StepOutcome::Stepped(rule, next)
            } else {
                StepOutcome::Stepped(RuleId::Named, Term::rewrap(next, labels.into_iter()))
            };
        }
        match cur.kind() {
            TermKind::Named(_, child) => {
                labels.push(cur);
                cur = child;
            }
            _ => return StepOutcome::Value,
        }
    }
}

/// Every `(rule, successor)` derivable for `t` when the rules are read as an
/// unordered relation, with no dispatch priority.
pub fn applicable_rules(t: &Term) -> Vec<(RuleId, Term)> {
    // Walk the named prefix, then fold the results back outwards: at every
    // level the congruence lifts the inner results and any root rule adds its own.
    let mut levels: Vec<&Term> = Vec::new();
    let mut cur = t;
    levels.push(cur);
    while let TermKind::Named(_, child) = cur.kind() {
        cur = child;
        levels.push(cur);
    }

    let mut results: Vec<(RuleId, Term)> = Vec::new();
    for level in levels.into_iter().rev() {
        let mut here: Vec<(RuleId, Term)> = Vec::new();
        if level.is_paradox() {
            here.push((RuleId::Paradox, Term::cap(level.clone())));
        }
        match level.kind() {
            TermKind::Cap(u) => here.push((RuleId::Integrate, Term::enter(u.clone()))),
            TermKind::Enter(u) if !level.is_paradox() => {
                here.push((RuleId::Reentry, Term::node(u.clone())))
            }
            TermKind::Node(_) => here.push((RuleId::Node, Term::node(level.clone()))),
            TermKind::Named(label, _) => {
                here.extend(
                    results
                        .drain(..)
                        .map(|(_, inner)| (RuleId::Named, Term::named(label.clone(), inner))),
                );
            }
            _ => {}
        }
        results = here;
    }
    results
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    ReachedValue,
    FuelExhausted,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::ReachedValue => "value",
            StopReason::FuelExhausted => "fuel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub index: usize,
    pub term: Term,
    /// Rule that produced this term; `None` for the initial entry.
    pub rule: Option<RuleId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    pub stop_reason: StopReason,
}

impl Trace {
    pub fn last(&self) -> &Term {
        &self
            .entries
            .last()
            .expect("a trace has at least one entry")
            .term
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.entries.iter().map(|e| &e.term)
    }

    /// Number of reduction steps taken.
    pub fn steps(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Iterates [`step`] from `t` for at most `fuel` steps.
pub fn trace(t: &Term, fuel: NonZeroUsize) -> Trace {
    let mut entries = vec![TraceEntry {
        index: 0,
        term: t.clone(),
        rule: None,
    }];
    for (index, outcome) in Reductions::new(t.clone()).take(fuel.get()).enumerate() {
        entries.push(TraceEntry {
            index: index + 1,
            term: outcome.1,
            rule: Some(outcome.0),
        });
    }
    let stop_reason = if entries.last().is_some_and(|e| e.term.is_value()) {
        StopReason::ReachedValue
    } else {
        StopReason::FuelExhausted
    };
    Trace {
        entries,
        stop_reason,
    }
}

/// Unbounded stream of reduction steps; ends when a value is reached.
pub struct Reductions {
    current: Option<Term>,
}

impl Reductions {
    pub fn new(start: Term) -> Self {
        Reductions {
            current: Some(start),
        }
    }
}

impl Iterator for Reductions {
    type Item = (RuleId, Term);

    fn next(&mut self) -> Option<(RuleId, Term)> {
        let cur = self.current.take()?;
        let (rule, next) = step(&cur).into_stepped()?;
        self.current = Some(next.clone());
        Some((rule, next))
    }
}
