//! Exact arithmetic in `Z[q, q^-1][P^vee]` and its fraction field.

mod coeff;
mod group_ring;
mod rational;

pub use coeff::CoeffQ;
pub use group_ring::{GroupRingElem, SpecializedElem, TermRecord};
pub use rational::RationalElem;

use crate::root_system::Coweight;

/// `1 - pi^{-mu}`
pub fn one_minus_inverse(mu: &Coweight) -> GroupRingElem {
    GroupRingElem::one_minus(-mu, CoeffQ::one())
}

/// Product of the given factors, multiplied in order.
pub fn product<'a>(rank: usize, factors: impl IntoIterator<Item = &'a GroupRingElem>) -> GroupRingElem {
    factors.into_iter().fold(GroupRingElem::one(rank), |acc, f| &acc * f)
}

/// Divide successively by each factor, failing on the first inexact step.
pub fn divide_by_factors<'a>(
    f: &GroupRingElem,
    factors: impl IntoIterator<Item = &'a GroupRingElem>,
) -> crate::Result<GroupRingElem> {
    factors.into_iter().try_fold(f.clone(), |acc, g| acc.exact_div(g))
}
