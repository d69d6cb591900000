//! Monomial orderings: global, local, and block orders mixing the two.

use std::cmp::Ordering;

use crate::algebra::monomial::{cmp_degrevlex_in, full_mask, revlex_tiebreak, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; a well-order with `1` smallest.
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic; `1` is the largest monomial, so
    /// leading terms are lowest-degree forms (computations in the local ring
    /// at the origin).
    LocalNegDegRevLex,
    /// Variables in `block` (a bitmask) are compared first with `block_order`;
    /// ties are broken by `rest` on the remaining variables.
    BlockElimination {
        block: u32,
        block_order: Box<MonomialOrder>,
        rest: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for the variables in `block`, which must be global on
    /// that block; the remaining variables keep `base`.
    pub fn eliminating(block: u32, base: MonomialOrder) -> Self {
        Self::BlockElimination {
            block,
            block_order: Box::new(Self::GlobalDegRevLex),
            rest: Box::new(base),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_in(a, b, full_mask())
    }

    fn cmp_in(&self, a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
        match self {
            Self::GlobalDegRevLex => cmp_degrevlex_in(a, b, mask),
            Self::LocalNegDegRevLex => {
                let (da, db) = (a.degree_in(mask), b.degree_in(mask));
                if da != db {
                    db.cmp(&da)
                } else {
                    revlex_tiebreak(a, b, mask)
                }
            }
            Self::BlockElimination {
                block,
                block_order,
                rest,
            } => match block_order.cmp_in(a, b, mask & block) {
                Ordering::Equal => rest.cmp_in(a, b, mask & !block),
                o => o,
            },
        }
    }

    /// Whether every variable is greater than `1` (Buchberger applies).
    pub fn is_global(&self) -> bool {
        match self {
            Self::GlobalDegRevLex => true,
            Self::LocalNegDegRevLex => false,
            Self::BlockElimination {
                block_order, rest, ..
            } => block_order.is_global() && rest.is_global(),
        }
    }

    /// Whether every variable is smaller than `1`.
    pub fn is_local(&self) -> bool {
        match self {
            Self::GlobalDegRevLex => false,
            Self::LocalNegDegRevLex => true,
            Self::BlockElimination {
                block_order, rest, ..
            } => block_order.is_local() && rest.is_local(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn global_has_one_smallest() {
        let o = MonomialOrder::GlobalDegRevLex;
        for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert_eq!(o.cmp(&m(&e), &Monomial::one()), Ordering::Greater);
        }
        assert!(o.is_global());
    }

    #[test]
    fn local_has_one_largest() {
        let o = MonomialOrder::LocalNegDegRevLex;
        for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert_eq!(o.cmp(&m(&e), &Monomial::one()), Ordering::Less);
        }
        // x - x^2: leading monomial is x
        assert_eq!(o.cmp(&m(&[1]), &m(&[2])), Ordering::Greater);
        // same degree keeps the revlex tie-break
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert!(o.is_local());
    }

    #[test]
    fn elimination_block_dominates() {
        // eliminate variable 2 (bit 2), local on the rest
        let o = MonomialOrder::eliminating(0b100, MonomialOrder::LocalNegDegRevLex);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 0, 1])), Ordering::Less);
        assert!(!o.is_global());
        assert!(!o.is_local());
    }
}
