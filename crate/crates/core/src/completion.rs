//! Mirror-completion: short-circuits every unresolved paradox `p` to its
//! resolved form `node(p)`.
//!
//! A paradox occurrence counts as resolved when its immediate parent is
//! `node`. Without that guard the rewrite would re-fire on its own output.

use crate::term::{Term, TermKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    pub canonical: Term,
    /// Number of paradox occurrences wrapped in `node`.
    pub rewrites_applied: usize,
}

fn is_node(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Node(_))
}

/// One bottom-up pass over the spine.
pub fn complete(t: &Term) -> CompletionResult {
    let spine: Vec<&Term> = t.subterms().collect();
    let (leaf, wrappers) = spine.split_last().expect("subterms is never empty");

    let mut rewrites = 0;
    let mut built = (*leaf).clone();
    let mut changed = false;
    // `wrappers[i]` is the parent of the term currently held in `built`.
    for i in (0..=wrappers.len()).rev() {
        let parent = i.checked_sub(1).map(|j| wrappers[j]);
        if built.is_paradox() && !parent.is_some_and(is_node) {
            built = Term::node(built);
            rewrites += 1;
            changed = true;
        }
        if let Some(p) = parent {
            built = if changed {
                p.with_child(built)
            } else {
                p.clone()
            };
        }
    }
    CompletionResult {
        canonical: built,
        rewrites_applied: rewrites,
    }
}

/// True iff no paradox subterm contains another paradox as a proper subterm.
///
/// A paradox is exactly `named(s, self_ref)`, whose only proper subterm is
/// `self_ref`, so this holds for every term.
pub fn is_stratified(t: &Term) -> bool {
    t.subterms()
        .filter(|s| s.is_paradox())
        .all(|p| !p.subterms().skip(1).any(Term::is_paradox))
}

/// True iff every paradox occurrence sits directly under `node`.
pub fn is_mirror_canonical(t: &Term) -> bool {
    let mut parent: Option<&Term> = None;
    for s in t.subterms() {
        if s.is_paradox() && !parent.is_some_and(is_node) {
            return false;
        }
        parent = Some(s);
    }
    true
}

pub fn equivalent_mod_completion(a: &Term, b: &Term) -> bool {
    complete(a).canonical == complete(b).canonical
}
