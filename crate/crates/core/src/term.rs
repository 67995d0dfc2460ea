//! The term algebra of the mirror calculus.
//!
//! Every constructor is either nullary (`base`, `self_ref`) or unary (`node`,
//! `cap`, `enter`, `named`), so a term is always a finite spine of unary
//! wrappers ending in a leaf. All traversals in this crate exploit that shape
//! and run as loops, which keeps arbitrarily deep terms off the call stack.
//!
//! Children are reference counted, so wrapping a term never copies it.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::mem;
use std::sync::Arc;

/// Label carried by a `named` constructor. Compared codepoint-wise.
pub type Label = Arc<str>;

/// The shape of the outermost constructor of a [`Term`].
#[derive(Clone)]
pub enum TermKind {
    Base,
    SelfRef,
    Node(Term),
    /// Encapsulation of a paradox.
    Cap(Term),
    /// Re-entry of an encapsulated term.
    Enter(Term),
    Named(Label, Term),
}

impl TermKind {
    fn take_child(&mut self) -> Option<Term> {
        match mem::replace(self, TermKind::Base) {
            TermKind::Node(c) | TermKind::Cap(c) | TermKind::Enter(c) | TermKind::Named(_, c) => {
                Some(c)
            }
            TermKind::Base | TermKind::SelfRef => None,
        }
    }
}

/// An immutable, cheaply clonable term.
#[derive(Clone)]
pub struct Term(Arc<TermKind>);

/// The four-way classification of a term by its root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MirrorState {
    Normal,
    Paradox,
    Integrate,
    Reentry,
}

impl MirrorState {
    pub fn name(self) -> &'static str {
        match self {
            MirrorState::Normal => "Normal",
            MirrorState::Paradox => "Paradox",
            MirrorState::Integrate => "Integrate",
            MirrorState::Reentry => "Reentry",
        }
    }
}

impl fmt::Display for MirrorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Term {
    fn from_kind(kind: TermKind) -> Self {
        Term(Arc::new(kind))
    }

    pub fn base() -> Self {
        Self::from_kind(TermKind::Base)
    }

    pub fn self_ref() -> Self {
        Self::from_kind(TermKind::SelfRef)
    }

    pub fn node(child: Term) -> Self {
        Self::from_kind(TermKind::Node(child))
    }

    pub fn cap(child: Term) -> Self {
        Self::from_kind(TermKind::Cap(child))
    }

    pub fn enter(child: Term) -> Self {
        Self::from_kind(TermKind::Enter(child))
    }

    pub fn named(label: impl Into<Label>, child: Term) -> Self {
        Self::from_kind(TermKind::Named(label.into(), child))
    }

    /// `named(label, self_ref)`, the canonical paradox shape.
    pub fn paradox(label: impl Into<Label>) -> Self {
        Self::named(label, Self::self_ref())
    }

    pub fn kind(&self) -> &TermKind {
        &self.0
    }

    pub fn child(&self) -> Option<&Term> {
        match self.kind() {
            TermKind::Node(c) | TermKind::Cap(c) | TermKind::Enter(c) | TermKind::Named(_, c) => {
                Some(c)
            }
            TermKind::Base | TermKind::SelfRef => None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self.kind() {
            TermKind::Named(l, _) => Some(l),
            _ => None,
        }
    }

    /// True when both handles point at the same allocation.
    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The term itself followed by each proper subterm, outermost first.
    pub fn subterms(&self) -> Subterms<'_> {
        Subterms { next: Some(self) }
    }

    /// The innermost leaf of the spine.
    pub fn leaf(&self) -> &Term {
        self.subterms().last().expect("subterms is never empty")
    }

    /// Number of constructor occurrences. Labels do not count.
    pub fn size(&self) -> usize {
        self.subterms().count()
    }

    /// Number of consecutive `node` constructors at the root.
    pub fn node_depth_prefix(&self) -> usize {
        self.subterms()
            .take_while(|t| matches!(t.kind(), TermKind::Node(_)))
            .count()
    }

    /// Strips every leading `node`.
    pub fn strip_node_prefix(&self) -> &Term {
        let mut cur = self;
        while let TermKind::Node(c) = cur.kind() {
            cur = c;
        }
        cur
    }

    /// Root-only check for the shape `named(s, self_ref)`.
    pub fn is_paradox(&self) -> bool {
        matches!(self.kind(), TermKind::Named(_, c) if matches!(c.kind(), TermKind::SelfRef))
    }

    /// True iff no reduction rule applies.
    ///
    /// Values are `base`, `self_ref`, and `named(s, v)` for a value `v` when
    /// the whole term is not a paradox. Unfolding that definition along the
    /// spine: any chain of `named` over `base`, or a bare `self_ref`.
    pub fn is_value(&self) -> bool {
        let mut cur = self;
        loop {
            if cur.is_paradox() {
                return false;
            }
            match cur.kind() {
                TermKind::Base | TermKind::SelfRef => return true,
                TermKind::Named(_, c) => cur = c,
                TermKind::Node(_) | TermKind::Cap(_) | TermKind::Enter(_) => return false,
            }
        }
    }

    pub fn classify(&self) -> MirrorState {
        if self.is_paradox() {
            return MirrorState::Paradox;
        }
        match self.kind() {
            TermKind::Cap(_) => MirrorState::Integrate,
            TermKind::Enter(_) => MirrorState::Reentry,
            _ => MirrorState::Normal,
        }
    }

    /// Rebuilds `self` with `wrappers` applied innermost-last, i.e. the
    /// first wrapper ends up outermost. Used by every spine rewrite.
    pub(crate) fn rewrap<'a, I>(inner: Term, wrappers: I) -> Term
    where
        I: DoubleEndedIterator<Item = &'a Term>,
    {
        wrappers.rev().fold(inner, |acc, w| w.with_child(acc))
    }

    /// Same outer constructor as `self`, new child. Leaves are returned unchanged.
    pub(crate) fn with_child(&self, child: Term) -> Term {
        match self.kind() {
            TermKind::Node(_) => Term::node(child),
            TermKind::Cap(_) => Term::cap(child),
            TermKind::Enter(_) => Term::enter(child),
            TermKind::Named(l, _) => Term::named(l.clone(), child),
            TermKind::Base | TermKind::SelfRef => self.clone(),
        }
    }
}

/// Iterator over a term's spine, outermost first.
pub struct Subterms<'a> {
    next: Option<&'a Term>,
}

impl<'a> Iterator for Subterms<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        let cur = self.next?;
        self.next = cur.child();
        Some(cur)
    }
}

// Root constructor equality, ignoring children.
fn same_head(a: &TermKind, b: &TermKind) -> bool {
    match (a, b) {
        (TermKind::Base, TermKind::Base)
        | (TermKind::SelfRef, TermKind::SelfRef)
        | (TermKind::Node(_), TermKind::Node(_))
        | (TermKind::Cap(_), TermKind::Cap(_))
        | (TermKind::Enter(_), TermKind::Enter(_)) => true,
        (TermKind::Named(x, _), TermKind::Named(y, _)) => x == y,
        _ => false,
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let (mut a, mut b) = (self, other);
        loop {
            if a.ptr_eq(b) {
                return true;
            }
            if !same_head(a.kind(), b.kind()) {
                return false;
            }
            match (a.child(), b.child()) {
                (Some(x), Some(y)) => {
                    a = x;
                    b = y;
                }
                _ => return true,
            }
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for t in self.subterms() {
            let tag: u8 = match t.kind() {
                TermKind::Base => 0,
                TermKind::SelfRef => 1,
                TermKind::Node(_) => 2,
                TermKind::Cap(_) => 3,
                TermKind::Enter(_) => 4,
                TermKind::Named(l, _) => {
                    l.hash(state);
                    5
                }
            };
            state.write_u8(tag);
        }
    }
}

impl Drop for Term {
    fn drop(&mut self) {
        // Unlink uniquely owned children one at a time instead of recursing.
        let mut next = Arc::get_mut(&mut self.0).and_then(TermKind::take_child);
        while let Some(mut t) = next {
            next = Arc::get_mut(&mut t.0).and_then(TermKind::take_child);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::syntax::write_term(f, self)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn liar() -> Term {
        Term::paradox("Liar")
    }

    #[test]
    fn paradox_is_root_only() {
        assert!(liar().is_paradox());
        assert!(!Term::self_ref().is_paradox());
        assert!(!Term::node(liar()).is_paradox());
        assert!(!Term::cap(liar()).is_paradox());
        assert!(!Term::enter(liar()).is_paradox());
        assert!(!Term::named("x", Term::base()).is_paradox());
        assert!(!Term::named("x", liar()).is_paradox());
        assert!(Term::paradox("").is_paradox());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(liar().classify(), MirrorState::Paradox);
        assert_eq!(Term::cap(Term::base()).classify(), MirrorState::Integrate);
        assert_eq!(Term::enter(Term::base()).classify(), MirrorState::Reentry);
        assert_eq!(Term::node(Term::base()).classify(), MirrorState::Normal);
        assert_eq!(Term::base().classify(), MirrorState::Normal);
        assert_eq!(Term::self_ref().classify(), MirrorState::Normal);
        assert_eq!(
            Term::named("x", Term::base()).classify(),
            MirrorState::Normal
        );
        // cap wrapping a paradox is still classified by its root
        assert_eq!(Term::cap(liar()).classify(), MirrorState::Integrate);
    }

    #[test]
    fn value_examples() {
        assert!(Term::base().is_value());
        assert!(Term::self_ref().is_value());
        assert!(Term::named("a", Term::base()).is_value());
        assert!(Term::named("a", Term::named("b", Term::base())).is_value());
        assert!(!liar().is_value());
        assert!(!Term::named("a", liar()).is_value());
        assert!(!Term::node(Term::base()).is_value());
        assert!(!Term::named("a", Term::cap(Term::base())).is_value());
    }

    #[test]
    fn size_and_prefix() {
        assert_eq!(Term::base().size(), 1);
        assert_eq!(Term::node(Term::base()).size(), 2);
        assert_eq!(liar().size(), 2);
        assert_eq!(Term::base().node_depth_prefix(), 0);
        assert_eq!(Term::node(Term::node(Term::base())).node_depth_prefix(), 2);
        assert_eq!(Term::node(liar()).node_depth_prefix(), 1);
        assert_eq!(Term::node(Term::node(liar())).strip_node_prefix(), &liar());
    }

    #[test]
    fn equality_is_structural_and_label_sensitive() {
        assert_eq!(Term::node(liar()), Term::node(liar()));
        assert_ne!(Term::paradox("a"), Term::paradox("b"));
        assert_ne!(Term::node(Term::base()), Term::cap(Term::base()));
        assert_ne!(Term::base(), Term::node(Term::base()));
        // composed vs precomposed e-acute are different codepoint sequences
        assert_ne!(Term::paradox("\u{e9}"), Term::paradox("e\u{301}"));
    }

    #[test]
    fn deep_terms_do_not_overflow() {
        let mut t = Term::base();
        for _ in 0..200_000 {
            t = Term::node(t);
        }
        let u = t.clone();
        assert_eq!(t, u);
        assert_eq!(t.size(), 200_001);
        let mut h = std::collections::hash_map::DefaultHasher::new();
        t.hash(&mut h);
        drop(u);
        drop(t);
    }

    #[test]
    fn drop_keeps_shared_children_alive() {
        let shared = Term::node(Term::base());
        let outer = Term::cap(shared.clone());
        drop(outer);
        assert_eq!(shared.size(), 2);
    }
}
