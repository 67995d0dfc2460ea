//! JSON encoding of terms and traces.
//!
//! A term is `{"kind": K}` with `"label"` present only for `named` and
//! `"child"` present only for the unary constructors. A trace is
//! `{"entries": [{"index", "rule", "term"}...], "stop_reason": "value"|"fuel"}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::semantics::{RuleId, StopReason, Trace, TraceEntry};
use crate::term::{Term, TermKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructuredError {
    #[error("expected an object at {0}")]
    NotAnObject(String),
    #[error("unknown kind {kind:?} at {path}")]
    UnknownKind { kind: String, path: String },
    #[error("missing or ill-typed field `{field}` at {path}")]
    BadField { field: &'static str, path: String },
    #[error("unexpected field `{field}` at {path}")]
    UnexpectedField { field: String, path: String },
    #[error("unknown rule name {0:?}")]
    UnknownRule(String),
}

pub fn kind_name(t: &Term) -> &'static str {
    match t.kind() {
        TermKind::Base => "base",
        TermKind::SelfRef => "self_ref",
        TermKind::Node(_) => "node",
        TermKind::Cap(_) => "cap",
        TermKind::Enter(_) => "enter",
        TermKind::Named(..) => "named",
    }
}

pub fn to_structured(t: &Term) -> Value {
    let spine: Vec<&Term> = t.subterms().collect();
    let mut doc: Option<Value> = None;
    for s in spine.into_iter().rev() {
        let mut obj = Map::new();
        obj.insert("kind".into(), Value::from(kind_name(s)));
        if let Some(label) = s.label() {
            obj.insert("label".into(), Value::from(label));
        }
        if let Some(child) = doc.take() {
            obj.insert("child".into(), child);
        }
        doc = Some(Value::Object(obj));
    }
    doc.expect("subterms is never empty")
}

pub fn from_structured(doc: &Value) -> Result<Term, StructuredError> {
    enum Wrap {
        Node,
        Cap,
        Enter,
        Named(String),
    }

    let mut wrappers = Vec::new();
    let mut cur = doc;
    let mut path = String::from("$");
    let leaf = loop {
        let obj = cur
            .as_object()
            .ok_or_else(|| StructuredError::NotAnObject(path.clone()))?;
        let kind =
            obj.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| StructuredError::BadField {
                    field: "kind",
                    path: path.clone(),
                })?;
        let (allowed, wrap): (&[&str], Option<Wrap>) = match kind {
            "base" | "self_ref" => (&["kind"], None),
            "node" => (&["kind", "child"], Some(Wrap::Node)),
            "cap" => (&["kind", "child"], Some(Wrap::Cap)),
            "enter" => (&["kind", "child"], Some(Wrap::Enter)),
            "named" => {
                let label = obj.get("label").and_then(Value::as_str).ok_or_else(|| {
                    StructuredError::BadField {
                        field: "label",
                        path: path.clone(),
                    }
                })?;
                (
                    &["kind", "label", "child"],
                    Some(Wrap::Named(label.to_owned())),
                )
            }
            other => {
                return Err(StructuredError::UnknownKind {
                    kind: other.to_owned(),
                    path,
                })
            }
        };
        if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(StructuredError::UnexpectedField {
                field: extra.clone(),
                path,
            });
        }
        match wrap {
            None => {
                break if kind == "base" {
                    Term::base()
                } else {
                    Term::self_ref()
                }
            }
            Some(w) => {
                wrappers.push(w);
                cur = obj.get("child").ok_or_else(|| StructuredError::BadField {
                    field: "child",
                    path: path.clone(),
                })?;
                path.push_str(".child");
            }
        }
    };

    Ok(wrappers.into_iter().rev().fold(leaf, |acc, w| match w {
        Wrap::Node => Term::node(acc),
        Wrap::Cap => Term::cap(acc),
        Wrap::Enter => Term::enter(acc),
        Wrap::Named(l) => Term::named(l, acc),
    }))
}

pub fn trace_to_structured(tr: &Trace) -> Value {
    let entries: Vec<Value> = tr
        .entries
        .iter()
        .map(|e| {
            json!({
                "index": e.index,
                "rule": e.rule.map(RuleId::name),
                "term": to_structured(&e.term),
            })
        })
        .collect();
    json!({
        "entries": entries,
        "stop_reason": tr.stop_reason.name(),
    })
}

pub fn trace_from_structured(doc: &Value) -> Result<Trace, StructuredError> {
    let bad = |field| StructuredError::BadField {
        field,
        path: "$".into(),
    };
    let stop_reason = match doc.get("stop_reason").and_then(Value::as_str) {
        Some("value") => StopReason::ReachedValue,
        Some("fuel") => StopReason::FuelExhausted,
        _ => return Err(bad("stop_reason")),
    };
    let raw = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("entries"))?;
    let mut entries = Vec::with_capacity(raw.len());
    for e in raw {
        let index = e
            .get("index")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("index"))? as usize;
        let rule = match e.get("rule") {
            Some(Value::Null) => None,
            Some(Value::String(s)) => {
                Some(RuleId::from_name(s).ok_or_else(|| StructuredError::UnknownRule(s.clone()))?)
            }
            _ => return Err(bad("rule")),
        };
        let term = from_structured(e.get("term").ok_or_else(|| bad("term"))?)?;
        entries.push(TraceEntry { index, term, rule });
    }
    Ok(Trace {
        entries,
        stop_reason,
    })
}
