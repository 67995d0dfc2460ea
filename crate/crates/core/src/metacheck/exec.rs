//! Runs a per-term property over a slice of terms, sequentially or with rayon.
//!
//! Both strategies return the same [`Tally`]: the failure count plus the
//! failure with the smallest enumeration index.

use crate::term::Term;

/// Defaults to `Parallel` when the `parallel` feature is enabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub index: usize,
    pub term: Term,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failures: usize,
    pub first: Option<Failure>,
}

impl Tally {
    fn record(mut self, index: usize, term: &Term, reason: String) -> Self {
        self.failures += 1;
        if self.first.as_ref().is_none_or(|f| index < f.index) {
            self.first = Some(Failure {
                index,
                term: term.clone(),
                reason,
            });
        }
        self
    }

    #[cfg(feature = "parallel")]
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Applies `prop` to every term in `terms`; `Err(reason)` marks a failure.
///
/// Terms for which `applies` is false are skipped and not counted.
pub fn run_property<A, P>(terms: &[Term], strategy: Strategy, applies: A, prop: P) -> Tally
where
    A: Fn(&Term) -> bool + Sync,
    P: Fn(&Term) -> Result<(), String> + Sync,
{
    let visit = |acc: Tally, (index, t): (usize, &Term)| -> Tally {
        if !applies(t) {
            return acc;
        }
        let acc = Tally {
            checked: acc.checked + 1,
            ..acc
        };
        match prop(t) {
            Ok(()) => acc,
            Err(reason) => acc.record(index, t, reason),
        }
    };

    match strategy {
        Strategy::Sequential => terms.iter().enumerate().fold(Tally::default(), visit),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            terms
                .par_iter()
                .enumerate()
                .fold(Tally::default, visit)
                .reduce(Tally::default, Tally::merge)
        }
    }
}
