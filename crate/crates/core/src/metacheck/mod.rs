//! Bounded-exhaustive checking of the calculus' meta-theory.
//!
//! Every suite walks the whole enumerated term space for an [`EnumSpec`] and
//! reports the first counterexample in enumeration order, so a report does
//! not depend on the [`Strategy`] or on the order the terms are visited in.

mod enumerate;
mod exec;

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroUsize;

use serde_json::{json, Value};

use crate::completion::{complete, is_mirror_canonical, is_stratified};
use crate::semantics::{applicable_rules, step, trace, RuleId, StepOutcome, StopReason};
use crate::syntax::structured::{from_structured, to_structured};
use crate::syntax::{parse, print};
use crate::term::{MirrorState, Term, TermKind};

pub use enumerate::{enumerate, EnumSpec, EnumSpecError, Enumerate};
pub use exec::{run_property, Failure, Strategy, Tally};

/// Steps past the paradox cycle over which node growth is checked.
pub const DIVERGENCE_HORIZON: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Progress,
    Determinism,
    LabelPreservation,
    /// The label-preservation statement without the non-paradox restriction.
    /// Passes when it is refuted by exactly the paradox family.
    LabelPreservationUnrestricted,
    ParadoxCycle,
    Completion,
    RoundTrip,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Progress,
        Property::Determinism,
        Property::LabelPreservation,
        Property::LabelPreservationUnrestricted,
        Property::ParadoxCycle,
        Property::Completion,
        Property::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Progress => "progress",
            Property::Determinism => "determinism",
            Property::LabelPreservation => "label_preservation",
            Property::LabelPreservationUnrestricted => "label_preservation_unrestricted",
            Property::ParadoxCycle => "paradox_cycle",
            Property::Completion => "completion",
            Property::RoundTrip => "roundtrip",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: Property,
    pub spec: EnumSpec,
    pub terms_checked: usize,
    pub passed: bool,
    pub counterexample: Option<Term>,
    pub detail: String,
}

impl CheckReport {
    fn from_tally(property: Property, spec: &EnumSpec, tally: Tally, ok_detail: &str) -> Self {
        let detail = match &tally.first {
            None => ok_detail.to_owned(),
            Some(f) => format!(
                "{} failure(s); first at enumeration index {}: {}",
                tally.failures, f.index, f.reason
            ),
        };
        CheckReport {
            property,
            spec: spec.clone(),
            terms_checked: tally.checked,
            passed: tally.failures == 0,
            counterexample: tally.first.map(|f| f.term),
            detail,
        }
    }

    pub fn to_structured(&self) -> Value {
        json!({
            "property": self.property.name(),
            "passed": self.passed,
            "terms_checked": self.terms_checked,
            "max_size": self.spec.max_size(),
            "labels": self.spec.labels().iter().map(|l| l.as_ref()).collect::<Vec<&str>>(),
            "counterexample": self.counterexample.as_ref().map(to_structured),
            "detail": self.detail,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} terms (max_size {}, labels {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.property,
            self.terms_checked,
            self.spec.max_size(),
            self.spec.labels().join(",")
        )?;
        if let Some(t) = &self.counterexample {
            write!(f, "; counterexample {}", print(t))?;
        }
        write!(f, "; {}", self.detail)
    }
}

fn check(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn all(_: &Term) -> bool {
    true
}

fn is_named(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Named(..))
}

fn fuel(n: usize) -> NonZeroUsize {
    NonZeroUsize::new(n).expect("fuel is positive")
}

fn progress(t: &Term) -> Result<(), String> {
    let stepped = !step(t).is_value();
    check(t.is_value() != stepped, || {
        format!("is_value = {}, steps = {}", t.is_value(), stepped)
    })?;
    check(
        t.classify() != MirrorState::Paradox || !t.is_value(),
        || "paradox classified as a value".into(),
    )
}

fn determinism(t: &Term) -> Result<(), String> {
    let rules = applicable_rules(t);
    check(rules.len() <= 1, || {
        format!("{} rules apply: {:?}", rules.len(), rules)
    })?;
    match (rules.into_iter().next(), step(t)) {
        (None, StepOutcome::Value) => Ok(()),
        (Some((r, u)), StepOutcome::Stepped(r2, u2)) if r == r2 && u == u2 => Ok(()),
        (rel, fun) => Err(format!("relation gives {rel:?}, step gives {fun:?}")),
    }
}

// Stepping `named(s, u)` yields `named(s, u'')` with `u` stepping to `u''`.
fn label_statement(t: &Term) -> Result<(), String> {
    let TermKind::Named(label, inner) = t.kind() else {
        return Ok(());
    };
    match step(t) {
        StepOutcome::Value => Ok(()),
        StepOutcome::Stepped(_, result) => match result.kind() {
            TermKind::Named(l2, res_inner) if l2 == label => match step(inner) {
                StepOutcome::Stepped(_, u) if &u == res_inner => Ok(()),
                other => Err(format!(
                    "result {} but child steps to {:?}",
                    print(&result),
                    other
                )),
            },
            _ => Err(format!("label lost: result is {}", print(&result))),
        },
    }
}

fn paradox_cycle(p: &Term) -> Result<(), String> {
    let expected = [
        p.clone(),
        Term::cap(p.clone()),
        Term::enter(p.clone()),
        Term::node(p.clone()),
    ];
    let tr = trace(p, fuel(3));
    let got: Vec<&Term> = tr.terms().collect();
    check(got.iter().copied().eq(expected.iter()), || {
        format!("trace was {:?}", got)
    })?;
    let rules: Vec<Option<RuleId>> = tr.entries.iter().map(|e| e.rule).collect();
    check(
        rules
            == [
                None,
                Some(RuleId::Paradox),
                Some(RuleId::Integrate),
                Some(RuleId::Reentry),
            ],
        || format!("rules were {rules:?}"),
    )?;
    check(tr.stop_reason == StopReason::FuelExhausted, || {
        "cycle stopped at a value".into()
    })?;
    let states: Vec<MirrorState> = expected.iter().map(Term::classify).collect();
    check(
        states
            == [
                MirrorState::Paradox,
                MirrorState::Integrate,
                MirrorState::Reentry,
                MirrorState::Normal,
            ],
        || format!("states were {states:?}"),
    )?;

    // Reachability over the unordered relation: no branching anywhere.
    let mut frontier = vec![p.clone()];
    let mut reached: HashSet<Term> = frontier.iter().cloned().collect();
    for _ in 0..3 {
        let mut next = Vec::new();
        for t in &frontier {
            let succ = applicable_rules(t);
            check(succ.len() == 1, || {
                format!("{} successors from {}", succ.len(), print(t))
            })?;
            next.extend(succ.into_iter().map(|(_, u)| u));
        }
        reached.extend(next.iter().cloned());
        frontier = next;
    }
    check(
        reached.len() == 4 && expected.iter().all(|t| reached.contains(t)),
        || format!("reachable set within 3 steps has {} terms", reached.len()),
    )?;

    // After resolution the term only grows by node.
    let long = trace(p, fuel(3 + DIVERGENCE_HORIZON));
    for (k, t) in long.terms().skip(3).enumerate() {
        check(t.node_depth_prefix() == 1 + k, || {
            format!("after {} steps prefix is {}", 3 + k, t.node_depth_prefix())
        })?;
        check(t.strip_node_prefix() == p, || {
            format!(
                "after {} steps remainder is {}",
                3 + k,
                print(t.strip_node_prefix())
            )
        })?;
    }
    Ok(())
}

fn completion(t: &Term) -> Result<(), String> {
    let r = complete(t);
    check(r.rewrites_applied <= t.size(), || {
        format!(
            "{} rewrites on a term of size {}",
            r.rewrites_applied,
            t.size()
        )
    })?;
    check((r.rewrites_applied == 0) == (r.canonical == *t), || {
        format!(
            "{} rewrites but canonical {} input",
            r.rewrites_applied,
            if r.canonical == *t {
                "equals"
            } else {
                "differs from"
            }
        )
    })?;
    let again = complete(&r.canonical);
    check(again.rewrites_applied == 0, || {
        format!(
            "not idempotent: {} -> {}",
            print(&r.canonical),
            print(&again.canonical)
        )
    })?;
    check(is_mirror_canonical(&r.canonical), || {
        format!("output {} not canonical", print(&r.canonical))
    })?;
    check(is_mirror_canonical(t) == (r.rewrites_applied == 0), || {
        "is_mirror_canonical disagrees with complete".into()
    })?;
    if !t.subterms().any(Term::is_paradox) {
        check(r.canonical == *t, || "paradox-free term changed".into())?;
    }
    check(is_stratified(t), || "term not stratified".into())?;
    if t.is_paradox() {
        let after = trace(t, fuel(3));
        check(after.last() == &r.canonical, || {
            format!(
                "completion {} but three steps reach {}",
                print(&r.canonical),
                print(after.last())
            )
        })?;
    }
    Ok(())
}

fn roundtrip(t: &Term) -> Result<(), String> {
    let text = print(t);
    match parse(&text) {
        Ok(u) if &u == t => {}
        Ok(u) => return Err(format!("{text} reparsed as {}", print(&u))),
        Err(e) => return Err(format!("{text} failed to parse: {e}")),
    }
    match from_structured(&to_structured(t)) {
        Ok(u) if &u == t => Ok(()),
        Ok(u) => Err(format!("structured form decoded as {}", print(&u))),
        Err(e) => Err(format!("structured form rejected: {e}")),
    }
}

/// Enumerates a term space once and runs suites over it.
pub struct Checker {
    spec: EnumSpec,
    terms: Vec<Term>,
    strategy: Strategy,
}

impl Checker {
    pub fn new(spec: EnumSpec) -> Self {
        let terms = enumerate(&spec).collect();
        Checker {
            spec,
            terms,
            strategy: Strategy::default(),
        }
    }

    /// Checks over an explicit term list. Counterexamples are reported by
    /// position in `terms`.
    pub fn from_terms(spec: EnumSpec, terms: Vec<Term>) -> Self {
        Checker {
            spec,
            terms,
            strategy: Strategy::default(),
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn spec(&self) -> &EnumSpec {
        &self.spec
    }

    fn run<A, P>(&self, property: Property, applies: A, prop: P, ok_detail: &str) -> CheckReport
    where
        A: Fn(&Term) -> bool + Sync,
        P: Fn(&Term) -> Result<(), String> + Sync,
    {
        let tally = run_property(&self.terms, self.strategy, applies, prop);
        CheckReport::from_tally(property, &self.spec, tally, ok_detail)
    }

    pub fn progress(&self) -> CheckReport {
        self.run(
            Property::Progress,
            all,
            progress,
            "every term is a value or steps, never both",
        )
    }

    pub fn determinism(&self) -> CheckReport {
        self.run(
            Property::Determinism,
            all,
            determinism,
            "at most one rule applies and it agrees with step",
        )
    }

    pub fn label_preservation(&self) -> CheckReport {
        self.run(
            Property::LabelPreservation,
            |t| is_named(t) && !t.is_paradox(),
            label_statement,
            "labels preserved on every non-paradox named term",
        )
    }

    pub fn label_preservation_unrestricted(&self) -> CheckReport {
        let refuted = run_property(&self.terms, self.strategy, is_named, label_statement);
        // The refutations must be exactly the paradoxes.
        let family = run_property(&self.terms, self.strategy, is_named, |t| {
            let fails = label_statement(t).is_err();
            check(fails == t.is_paradox(), || {
                if fails {
                    "refuted by a term outside the named(s, self_ref) family".into()
                } else {
                    "paradox term does not refute the statement".into()
                }
            })
        });

        // With no paradox in the space the family is empty and so is the refutation set.
        let passed = family.failures == 0;
        let detail = match (&family.first, &refuted.first) {
            (Some(f), _) => format!(
                "unexpected refutation family at index {}: {}",
                f.index, f.reason
            ),
            (None, Some(r)) => format!(
                "refuted as expected by {} term(s), all of shape named(s, self_ref); first: {}",
                refuted.failures, r.reason
            ),
            (None, None) => "no paradox in the term space, nothing refutes the statement".into(),
        };
        let counterexample = match family.first {
            Some(f) => Some(f.term),
            None => refuted.first.map(|f| f.term),
        };
        CheckReport {
            property: Property::LabelPreservationUnrestricted,
            spec: self.spec.clone(),
            terms_checked: refuted.checked,
            passed,
            counterexample,
            detail,
        }
    }

    pub fn paradox_cycle(&self) -> CheckReport {
        self.run(
            Property::ParadoxCycle,
            Term::is_paradox,
            paradox_cycle,
            "every paradox resolves as p, cap(p), enter(p), node(p) and then only grows",
        )
    }

    pub fn completion(&self) -> CheckReport {
        self.run(
            Property::Completion,
            all,
            completion,
            "idempotent, fixes paradox-free terms, canonical output, agrees with three steps",
        )
    }

    pub fn roundtrip(&self) -> CheckReport {
        self.run(
            Property::RoundTrip,
            all,
            roundtrip,
            "print/parse and structured encode/decode are inverse",
        )
    }

    pub fn check(&self, property: Property) -> CheckReport {
        match property {
            Property::Progress => self.progress(),
            Property::Determinism => self.determinism(),
            Property::LabelPreservation => self.label_preservation(),
            Property::LabelPreservationUnrestricted => self.label_preservation_unrestricted(),
            Property::ParadoxCycle => self.paradox_cycle(),
            Property::Completion => self.completion(),
            Property::RoundTrip => self.roundtrip(),
        }
    }

    pub fn run_all(&self) -> Vec<CheckReport> {
        Property::ALL.iter().map(|&p| self.check(p)).collect()
    }
}

pub fn check_progress(spec: &EnumSpec) -> CheckReport {
    Checker::new(spec.clone()).progress()
}

pub fn check_determinism(spec: &EnumSpec) -> CheckReport {
    Checker::new(spec.clone()).determinism()
}

/// The restricted statement and the expected refutation of the unrestricted one.
pub fn check_label_preservation(spec: &EnumSpec) -> (CheckReport, CheckReport) {
    let c = Checker::new(spec.clone());
    (c.label_preservation(), c.label_preservation_unrestricted())
}

pub fn check_paradox_cycle(spec: &EnumSpec) -> CheckReport {
    Checker::new(spec.clone()).paradox_cycle()
}

pub fn check_completion(spec: &EnumSpec) -> CheckReport {
    Checker::new(spec.clone()).completion()
}

pub fn check_roundtrip(spec: &EnumSpec) -> CheckReport {
    Checker::new(spec.clone()).roundtrip()
}

pub fn check_all(spec: &EnumSpec) -> Vec<CheckReport> {
    Checker::new(spec.clone()).run_all()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_has_only_values() {
        let spec = EnumSpec::new(1, ["a"]).unwrap();
        let c = Checker::new(spec);
        for p in [
            Property::Progress,
            Property::Determinism,
            Property::Completion,
            Property::RoundTrip,
        ] {
            let r = c.check(p);
            assert!(r.passed, "{r}");
            assert_eq!(r.terms_checked, 2);
        }
        for p in [
            Property::LabelPreservation,
            Property::LabelPreservationUnrestricted,
            Property::ParadoxCycle,
        ] {
            let r = c.check(p);
            assert!(r.passed, "{r}");
            assert_eq!(r.terms_checked, 0);
            assert!(r.counterexample.is_none());
        }
    }

    #[test]
    fn small_space_passes() {
        let spec = EnumSpec::new(4, ["a", "b"]).unwrap();
        for r in check_all(&spec) {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn unrestricted_counterexample_is_first_paradox() {
        let spec = EnumSpec::new(3, ["a", "b"]).unwrap();
        let (restricted, unrestricted) = check_label_preservation(&spec);
        assert!(restricted.passed);
        assert!(unrestricted.passed);
        assert_eq!(unrestricted.counterexample, Some(Term::paradox("a")));
    }

    #[test]
    fn failing_property_reports_first_in_order() {
        let spec = EnumSpec::new(3, ["a"]).unwrap();
        let terms: Vec<Term> = enumerate(&spec).collect();
        let tally = run_property(&terms, Strategy::Sequential, all, |t| {
            check(!matches!(t.kind(), TermKind::Cap(_)), || "cap".into())
        });
        let r = CheckReport::from_tally(Property::Progress, &spec, tally, "");
        assert!(!r.passed);
        assert_eq!(r.counterexample, Some(Term::cap(Term::base())));
        assert!(r
            .detail
            .starts_with("10 failure(s); first at enumeration index 4"));
    }

    #[test]
    fn report_document_shape() {
        let spec = EnumSpec::new(2, ["a"]).unwrap();
        let (_, r) = check_label_preservation(&spec);
        let doc = r.to_structured();
        assert_eq!(doc["property"], "label_preservation_unrestricted");
        assert_eq!(doc["passed"], true);
        assert_eq!(doc["max_size"], 2);
        assert_eq!(doc["labels"], json!(["a"]));
        assert_eq!(
            doc["counterexample"],
            json!({"kind":"named","label":"a","child":{"kind":"self_ref"}})
        );
    }
}
