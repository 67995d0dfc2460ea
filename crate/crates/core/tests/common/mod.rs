#![allow(dead_code)]

use mirror_core::Term;

/// Independent count of terms of size <= `max_size` over `labels` labels.
///
/// Each term is a chain of unary wrappers over one of two leaves, and there
/// are `3 + labels` wrappers, so size `n` contributes `2 * (3 + labels)^(n-1)`.
pub fn recurrence_count(max_size: u32, labels: u64) -> u64 {
    let mut by_size = vec![0u64; max_size as usize + 1];
    if max_size >= 1 {
        by_size[1] = 2;
    }
    for n in 2..=max_size as usize {
        by_size[n] = (3 + labels) * by_size[n - 1];
    }
    by_size.iter().sum()
}

/// Brute-force construction of every term, by enumerating wrapper words.
pub fn brute_force_terms(max_size: usize, labels: &[&str]) -> Vec<Term> {
    let wrappers = 3 + labels.len();
    let mut out = Vec::new();
    for len in 0..max_size {
        let total = wrappers.pow(len as u32);
        for word in 0..total {
            for leaf in [Term::base(), Term::self_ref()] {
                let mut w = word;
                let mut t = leaf;
                for _ in 0..len {
                    let pick = w % wrappers;
                    w /= wrappers;
                    t = match pick {
                        0 => Term::node(t),
                        1 => Term::cap(t),
                        2 => Term::enter(t),
                        k => Term::named(labels[k - 3], t),
                    };
                }
                out.push(t);
            }
        }
    }
    out
}
