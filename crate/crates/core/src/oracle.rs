//! Brute-force reference deciders for the source problems of the
//! reductions.

use crate::formula::{Assignment, Formula};
use crate::reductions::{HittingSetInstance, QbfPrimeInstance};

/// `∃x1 ∀x2 ... ∃x(2ℓ-1) ∀x(2ℓ) F`, by full recursion over the prefix.
pub fn eval_qbf_prime(q: &QbfPrimeInstance) -> bool {
    fn go(f: &Formula, bits: &mut Vec<bool>, n: usize) -> bool {
        if bits.len() == n {
            return f.eval(&Assignment::new(bits.clone())).expect("all variables assigned");
        }
        let existential = bits.len().is_multiple_of(2);
        let branch = |v: bool, bits: &mut Vec<bool>| {
            bits.push(v);
            let r = go(f, bits, n);
            bits.pop();
            r
        };
        if existential {
            branch(false, bits) || branch(true, bits)
        } else {
            branch(false, bits) && branch(true, bits)
        }
    }
    go(&q.formula, &mut Vec::new(), 2 * q.ell as usize)
}

fn assignments(f: &Formula) -> impl Iterator<Item = Assignment> {
    let n = f.max_var() as usize;
    assert!(n < 64, "too many variables for brute force");
    (0..1u64 << n).map(move |mask| Assignment::from_mask(mask, n))
}

pub fn sat_satisfiable(f: &Formula) -> bool {
    assignments(f).any(|a| f.eval(&a).unwrap())
}

pub fn taut(f: &Formula) -> bool {
    assignments(f).all(|a| f.eval(&a).unwrap())
}

/// A set of at most `k` elements meeting every set, if one exists; the
/// first found in order of size, then lexicographic element order.
pub fn find_hitting_set(h: &HittingSetInstance) -> Option<Vec<usize>> {
    fn extend(h: &HittingSetInstance, start: usize, size: usize, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        if chosen.len() == size {
            let hits = h.sets.iter().all(|s| s.iter().any(|e| chosen.contains(e)));
            return hits.then(|| chosen.clone());
        }
        for e in start..=h.m {
            chosen.push(e);
            if let Some(found) = extend(h, e + 1, size, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    (0..=h.k.min(h.m)).find_map(|size| extend(h, 1, size, &mut Vec::new()))
}

pub fn hitting_set_exists(h: &HittingSetInstance) -> bool {
    find_hitting_set(h).is_some()
}
