use thiserror::Error;

use crate::term::{Label, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumSpecError {
    #[error("max_size must be at least 1")]
    ZeroSize,
    #[error("labels must be non-empty when max_size >= 2")]
    NoLabels,
}

/// Bounds for exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    max_size: usize,
    labels: Vec<Label>,
}

impl EnumSpec {
    pub fn new<I, S>(max_size: usize, labels: I) -> Result<Self, EnumSpecError>
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        if max_size == 0 {
            return Err(EnumSpecError::ZeroSize);
        }
        if max_size >= 2 && labels.is_empty() {
            return Err(EnumSpecError::NoLabels);
        }
        Ok(EnumSpec { max_size, labels })
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Number of terms [`enumerate`] yields, by the closed-form recurrence.
    pub fn term_count(&self) -> u128 {
        let branching = 3 + self.labels.len() as u128;
        let mut layer = 2u128;
        let mut total = 0u128;
        for _ in 0..self.max_size {
            total += layer;
            layer *= branching;
        }
        total
    }
}

impl Default for EnumSpec {
    fn default() -> Self {
        EnumSpec::new(7, ["a", "b"]).expect("default bounds are valid")
    }
}

/// All terms up to `spec.max_size()`, each once.
///
/// Order: by size; within a size by outer constructor
/// `base < self_ref < node < cap < enter < named`, then by label order, then
/// by the order of the child in the previous size layer.
pub fn enumerate(spec: &EnumSpec) -> Enumerate<'_> {
    Enumerate {
        spec,
        layer: vec![Term::base(), Term::self_ref()],
        size: 1,
        pos: 0,
    }
}

pub struct Enumerate<'s> {
    spec: &'s EnumSpec,
    layer: Vec<Term>,
    size: usize,
    pos: usize,
}

impl Enumerate<'_> {
    fn next_layer(&self) -> Vec<Term> {
        let wrappers = 3 + self.spec.labels.len();
        let mut next = Vec::with_capacity(self.layer.len() * wrappers);
        for build in [Term::node, Term::cap, Term::enter] {
            next.extend(self.layer.iter().cloned().map(build));
        }
        for label in &self.spec.labels {
            next.extend(
                self.layer
                    .iter()
                    .map(|c| Term::named(label.clone(), c.clone())),
            );
        }
        next
    }
}

impl Iterator for Enumerate<'_> {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        if self.pos == self.layer.len() {
            if self.size >= self.spec.max_size {
                return None;
            }
            self.layer = self.next_layer();
            self.size += 1;
            self.pos = 0;
        }
        let t = self.layer[self.pos].clone();
        self.pos += 1;
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print;

    #[test]
    fn size_one() {
        let spec = EnumSpec::new(1, ["a"]).unwrap();
        let got: Vec<Term> = enumerate(&spec).collect();
        assert_eq!(got, vec![Term::base(), Term::self_ref()]);
    }

    #[test]
    fn size_two_order() {
        let spec = EnumSpec::new(2, ["a"]).unwrap();
        let got: Vec<String> = enumerate(&spec).map(|t| print(&t)).collect();
        assert_eq!(
            got,
            [
                "base",
                "self",
                "node(base)",
                "node(self)",
                "cap(base)",
                "cap(self)",
                "enter(base)",
                "enter(self)",
                r#"named("a", base)"#,
                r#"named("a", self)"#,
            ]
        );
    }

    #[test]
    fn size_one_accepts_empty_labels() {
        let spec = EnumSpec::new(1, Vec::<String>::new()).unwrap();
        assert_eq!(enumerate(&spec).count(), 2);
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            EnumSpec::new(0, ["a"]).unwrap_err(),
            EnumSpecError::ZeroSize
        );
        assert_eq!(
            EnumSpec::new(2, Vec::<String>::new()).unwrap_err(),
            EnumSpecError::NoLabels
        );
    }
}
