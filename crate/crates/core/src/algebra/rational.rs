use std::ops::{Add, Mul, Neg, Sub};

use super::GroupRingElem;
use crate::error::{Error, Result};
use crate::root_system::{IntMatrix, WeylElement};

/// Element of the fraction field of `Z[q, q^-1][P^vee]`, kept as an
/// unreduced pair. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalElem {
    pub num: GroupRingElem,
    pub den: GroupRingElem,
}

impl RationalElem {
    pub fn new(num: GroupRingElem, den: GroupRingElem) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotDivisible("zero denominator".into()));
        }
        Ok(RationalElem { num, den })
    }

    pub fn from_elem(f: GroupRingElem, rank: usize) -> Self {
        RationalElem { num: f, den: GroupRingElem::one(rank) }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_elem(GroupRingElem::zero(), rank)
    }

    pub fn one(rank: usize) -> Self {
        Self::from_elem(GroupRingElem::one(rank), rank)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalElem) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        self.act_matrix(&w.action)
    }

    pub fn act_matrix(&self, m: &IntMatrix) -> Self {
        RationalElem { num: self.num.act_matrix(m), den: self.den.act_matrix(m) }
    }

    /// Clear the denominator; fails unless it divides the numerator exactly.
    pub fn clear(&self) -> Result<GroupRingElem> {
        self.num.exact_div(&self.den)
    }

    /// Replace the pair by `(num / den, 1)` when the division is exact.
    pub fn reduced(self) -> Self {
        match self.num.exact_div(&self.den) {
            Ok(q) => {
                let rank = self.den.rank().expect("nonzero denominator");
                RationalElem::from_elem(q, rank)
            }
            Err(_) => self,
        }
    }

    fn den_is_one(&self) -> bool {
        self.den.len() == 1 && self.den.terms().next().is_some_and(|(mu, c)| mu.is_zero() && c.is_one())
    }
}

impl PartialEq for RationalElem {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalElem {}

impl<'a> Add<&'a RationalElem> for &'a RationalElem {
    type Output = RationalElem;

    fn add(self, rhs: &'a RationalElem) -> RationalElem {
        if self.den == rhs.den {
            return RationalElem { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RationalElem { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }
    }
}

impl<'a> Sub<&'a RationalElem> for &'a RationalElem {
    type Output = RationalElem;

    fn sub(self, rhs: &'a RationalElem) -> RationalElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalElem> for &'a RationalElem {
    type Output = RationalElem;

    fn mul(self, rhs: &'a RationalElem) -> RationalElem {
        let den = match (self.den_is_one(), rhs.den_is_one()) {
            (true, _) => rhs.den.clone(),
            (_, true) => self.den.clone(),
            _ => &self.den * &rhs.den,
        };
        RationalElem { num: &self.num * &rhs.num, den }
    }
}

impl Neg for &RationalElem {
    type Output = RationalElem;

    fn neg(self) -> RationalElem {
        RationalElem { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CoeffQ;
    use crate::root_system::Coweight;

    fn pi(c: i32) -> GroupRingElem {
        GroupRingElem::monomial(Coweight::new([c]))
    }

    #[test]
    fn cross_multiplication_equality() {
        let one = GroupRingElem::one(1);
        let a = RationalElem::new(&one - &pi(-4), &one - &pi(-2)).unwrap();
        let b = RationalElem::from_elem(&one + &pi(-2), 1);
        assert_eq!(a, b);
        assert_eq!(a.clear().unwrap(), &one + &pi(-2));
        assert!(RationalElem::new(one.clone(), GroupRingElem::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let one = GroupRingElem::one(1);
        let x = RationalElem::new(pi(1), &one - &pi(-2)).unwrap();
        let y = RationalElem::new(GroupRingElem::one_minus(Coweight::new([2]), CoeffQ::q()), pi(3)).unwrap();
        let sum = &x + &y;
        assert_eq!(&sum - &y, x);
        let prod = &x * &y;
        assert_eq!(prod.div(&y).unwrap(), x);
        assert!(x.div(&RationalElem::zero(1)).is_err());
    }
}
