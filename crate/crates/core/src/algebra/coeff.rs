use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with integer coefficients, stored sparsely.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoeffQ {
    terms: BTreeMap<i32, BigInt>,
}

impl CoeffQ {
    pub fn zero() -> Self {
        CoeffQ::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    /// `q`
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e`
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(e, BigInt::one())
    }

    /// `c q^e`
    pub fn monomial(e: i32, c: BigInt) -> Self {
        let mut out = CoeffQ::zero();
        out.add_term(e, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigInt)>) -> Self {
        let mut out = CoeffQ::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, e: i32, c: &BigInt) {
        if let Some(slot) = self.terms.get_mut(&e) {
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(&e);
            }
        } else if !c.is_zero() {
            self.terms.insert(e, c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order of exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Highest-exponent term.
    pub fn leading(&self) -> Option<(i32, &BigInt)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Multiply by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        CoeffQ { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return CoeffQ::zero();
        }
        CoeffQ { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// If this is `+-q^k`, return `(sign, k)`.
    pub fn as_unit(&self) -> Option<(i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, e))
        } else if (-c).is_one() {
            Some((-1, e))
        } else {
            None
        }
    }

    /// Substitute `q = v` exactly.
    pub fn specialize(&self, v: &BigRational) -> Result<BigRational> {
        if v.is_zero() {
            if let Some(e) = self.min_exp().filter(|&e| e < 0) {
                return Err(Error::NegativeQExponentAtZero(e));
            }
            return Ok(BigRational::from_integer(self.coefficient(0)));
        }
        let mut total = BigRational::zero();
        for (&e, c) in &self.terms {
            let power = if e >= 0 { v.pow(e) } else { v.recip().pow(-e) };
            total += power * BigRational::from_integer(c.clone());
        }
        Ok(total)
    }
}

impl From<i64> for CoeffQ {
    fn from(c: i64) -> Self {
        CoeffQ::constant(c)
    }
}

impl<'a> Add<&'a CoeffQ> for &'a CoeffQ {
    type Output = CoeffQ;

    fn add(self, rhs: &'a CoeffQ) -> CoeffQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CoeffQ> for &'a CoeffQ {
    type Output = CoeffQ;

    fn sub(self, rhs: &'a CoeffQ) -> CoeffQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&CoeffQ> for CoeffQ {
    fn add_assign(&mut self, rhs: &CoeffQ) {
        for (&e, c) in &rhs.terms {
            self.add_term_ref(e, c);
        }
    }
}

impl SubAssign<&CoeffQ> for CoeffQ {
    fn sub_assign(&mut self, rhs: &CoeffQ) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl<'a> Mul<&'a CoeffQ> for &'a CoeffQ {
    type Output = CoeffQ;

    fn mul(self, rhs: &'a CoeffQ) -> CoeffQ {
        let mut out = CoeffQ::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &CoeffQ {
    type Output = CoeffQ;

    fn neg(self) -> CoeffQ {
        CoeffQ { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Add for CoeffQ {
    type Output = CoeffQ;
    fn add(mut self, rhs: CoeffQ) -> CoeffQ {
        self += &rhs;
        self
    }
}

impl Sub for CoeffQ {
    type Output = CoeffQ;
    fn sub(mut self, rhs: CoeffQ) -> CoeffQ {
        self -= &rhs;
        self
    }
}

impl Mul for CoeffQ {
    type Output = CoeffQ;
    fn mul(self, rhs: CoeffQ) -> CoeffQ {
        &self * &rhs
    }
}

impl Neg for CoeffQ {
    type Output = CoeffQ;
    fn neg(self) -> CoeffQ {
        -&self
    }
}

/// Descending powers of `q`, e.g. `q^2 - 2*q + 1 - q^-1`.
impl fmt::Display for CoeffQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
