//! Monomial and module orders.
//!
//! All comparisons return `Ordering::Greater` when the first argument is the
//! larger monomial under the order.

use crate::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic over all variables.
    GrevLex,
    /// Block elimination order: grevlex on the first `k` variables, ties
    /// broken by grevlex on the remaining variables. Eliminates the first
    /// block.
    Elim(usize),
}

/// Grevlex comparison on the slice `a[lo..hi]` vs `b[lo..hi]`.
fn grevlex_block(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    let da: u64 = a[lo..hi].iter().map(|&e| e as u64).sum();
    let db: u64 = b[lo..hi].iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the larger monomial is the one whose last nonzero entry
    // of a - b is negative.
    for i in (lo..hi).rev() {
        if a[i] != b[i] {
            return if a[i] < b[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        let n = a.arity();
        match *self {
            MonomialOrder::GrevLex => grevlex_block(&a.0, &b.0, 0, n),
            MonomialOrder::Elim(k) => {
                debug_assert!(k <= n);
                match grevlex_block(&a.0, &b.0, 0, k) {
                    Ordering::Equal => grevlex_block(&a.0, &b.0, k, n),
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// Position-over-term comparison for module monomials `(position, monomial)`.
/// Positions dominate, and a LOWER position index is GREATER, so component 0
/// leads whenever it is populated.
pub fn module_cmp(
    order: MonomialOrder,
    a_pos: usize,
    a_mono: &Monomial,
    b_pos: usize,
    b_mono: &Monomial,
) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => order.cmp(a_mono, b_mono),
        ord => ord,
    }
}
