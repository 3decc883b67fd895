use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CoeffQ;
use crate::error::{Error, Result};
use crate::root_system::{Coweight, IntMatrix, WeylElement};

/// Sparse element of `Z[q, q^-1][P^vee]`: a finite sum of `c_mu(q) pi^mu`.
///
/// Monomials are kept in lexicographic order of their coweight coordinates;
/// no zero coefficient is ever stored, so structural equality is equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    terms: BTreeMap<Coweight, CoeffQ>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Coweight::zero(rank))
    }

    /// `pi^mu`
    pub fn monomial(mu: Coweight) -> Self {
        Self::term(mu, CoeffQ::one())
    }

    /// `c pi^mu`
    pub fn term(mu: Coweight, c: CoeffQ) -> Self {
        let mut out = GroupRingElem::zero();
        out.add_term(mu, c);
        out
    }

    pub fn constant(rank: usize, c: CoeffQ) -> Self {
        Self::term(Coweight::zero(rank), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coweight, CoeffQ)>) -> Self {
        let mut out = GroupRingElem::zero();
        for (mu, c) in terms {
            out.add_term(mu, c);
        }
        out
    }

    /// `1 - c pi^mu`
    pub fn one_minus(mu: Coweight, c: CoeffQ) -> Self {
        let rank = mu.rank();
        let mut out = GroupRingElem::one(rank);
        out.add_term(mu, -c);
        out
    }

    pub fn add_term(&mut self, mu: Coweight, c: CoeffQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, mu: &Coweight, c: &CoeffQ) {
        if let Some(slot) = self.terms.get_mut(mu) {
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(mu);
            }
        } else if !c.is_zero() {
            self.terms.insert(mu.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Coweight, &CoeffQ)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, mu: &Coweight) -> CoeffQ {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|mu| mu.rank())
    }

    /// Multiply by `pi^mu`.
    pub fn shift(&self, mu: &Coweight) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(nu, c)| (nu + mu, c.clone())).collect() }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &CoeffQ) -> Self {
        if c.is_zero() {
            return GroupRingElem::zero();
        }
        GroupRingElem { terms: self.terms.iter().map(|(mu, d)| (mu.clone(), d * c)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&CoeffQ::constant(k))
    }

    /// Substitute a linear map on exponents; `map` must be injective.
    pub fn map_coweights(&self, map: impl Fn(&Coweight) -> Coweight) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(mu, c)| (map(mu), c.clone())).collect() }
    }

    /// `w(f)`: the ring automorphism induced by `pi^mu -> pi^{w mu}`.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        self.act_matrix(&w.action)
    }

    pub fn act_matrix(&self, m: &IntMatrix) -> Self {
        self.map_coweights(|mu| m.apply(mu))
    }

    /// Leading monomial under lexicographic order on (coweight, q-exponent).
    pub fn leading_term(&self) -> Option<(&Coweight, i32, &BigInt)> {
        let (mu, c) = self.terms.iter().next_back()?;
        let (e, k) = c.leading().expect("stored coefficients are nonzero");
        Some((mu, e, k))
    }

    /// If this element is `+-q^k pi^mu`, return `(sign, k, mu)`.
    pub fn as_unit_monomial(&self) -> Option<(i32, i32, Coweight)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (mu, c) = self.terms.iter().next().unwrap();
        c.as_unit().map(|(s, k)| (s, k, mu.clone()))
    }

    /// Per-coordinate (coweight coords then q exponent) minima and maxima.
    fn exponent_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let rank = self.rank().unwrap_or(0);
        let mut lo = vec![i64::MAX; rank + 1];
        let mut hi = vec![i64::MIN; rank + 1];
        for (mu, c) in &self.terms {
            for (j, &x) in mu.coords().iter().enumerate() {
                lo[j] = lo[j].min(x as i64);
                hi[j] = hi[j].max(x as i64);
            }
            lo[rank] = lo[rank].min(c.min_exp().unwrap() as i64);
            hi[rank] = hi[rank].max(c.max_exp().unwrap() as i64);
        }
        (lo, hi)
    }

    /// Exact quotient `self / g` in `Z[q, q^-1][P^vee]`.
    ///
    /// Leading-term elimination under lexicographic order on (coweight,
    /// q-exponent). Degrees in each coordinate are additive under
    /// multiplication, so every quotient monomial lies in the box
    /// `[min f - min g, max f - max g]`; leaving that box, a non-integral
    /// coefficient ratio, or a nonzero remainder means `NotDivisible`.
    pub fn exact_div(&self, g: &GroupRingElem) -> Result<GroupRingElem> {
        if g.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(GroupRingElem::zero());
        }
        let (f_lo, f_hi) = self.exponent_bounds();
        let (g_lo, g_hi) = g.exponent_bounds();
        let lo: Vec<i64> = f_lo.iter().zip(&g_lo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = f_hi.iter().zip(&g_hi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::NotDivisible(format!("({self}) / ({g})")));
        }
        let rank = lo.len() - 1;
        let (g_mu, g_e, g_c) = {
            let (mu, e, c) = g.leading_term().unwrap();
            (mu.clone(), e, c.clone())
        };

        let mut rem = self.terms.clone();
        let mut quotient = GroupRingElem::zero();
        loop {
            let (q_mu, q_e, k_quo) = {
                let Some((mu, c)) = rem.iter().next_back() else { break };
                let (e, k) = c.leading().unwrap();
                let q_mu = mu - &g_mu;
                let q_e = e - g_e;
                let inside = q_mu.coords().iter().enumerate().all(|(j, &x)| (lo[j]..=hi[j]).contains(&(x as i64)))
                    && (lo[rank]..=hi[rank]).contains(&(q_e as i64));
                let (k_quo, k_rem) = k.div_rem(&g_c);
                if !inside || !k_rem.is_zero() {
                    return Err(Error::NotDivisible(format!("({self}) / ({g})")));
                }
                (q_mu, q_e, k_quo)
            };
            let factor = CoeffQ::monomial(q_e, k_quo);
            for (nu, d) in &g.terms {
                let target = &q_mu + nu;
                let delta = d * &factor;
                let now_zero = {
                    let slot = rem.entry(target.clone()).or_default();
                    *slot -= &delta;
                    slot.is_zero()
                };
                if now_zero {
                    rem.remove(&target);
                }
            }
            quotient.add_term(q_mu, factor);
        }
        Ok(quotient)
    }

    /// Substitute `q = v`, producing rational constant coefficients.
    pub fn specialize_q(&self, v: &BigRational) -> Result<SpecializedElem> {
        let mut out = BTreeMap::new();
        for (mu, c) in &self.terms {
            let value = c.specialize(v)?;
            if !value.is_zero() {
                out.insert(mu.clone(), value);
            }
        }
        Ok(SpecializedElem(out))
    }

    /// The `q = 0` specialization, kept as a group-ring element.
    pub fn at_q_zero(&self) -> Result<GroupRingElem> {
        Ok(self.specialize_q(&BigRational::zero())?.to_integral().expect("integer coefficients stay integral at q = 0"))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(mu, c)| TermRecord {
                coweight: mu.coords().to_vec(),
                coeff: c.terms().map(|(e, k)| (e, k.to_string())).collect(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self> {
        let mut out = GroupRingElem::zero();
        for r in records {
            let mut c = CoeffQ::zero();
            for (e, k) in &r.coeff {
                let k: BigInt = k.parse().map_err(|_| Error::Malformed(format!("integer {k:?}")))?;
                c.add_term(*e, k);
            }
            out.add_term(Coweight::new(r.coweight.iter().copied()), c);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let records: Vec<TermRecord> = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_records(&records)
    }
}

/// One serialized monomial: `{"coweight": [..], "coeff": [[q_exp, "int"], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coweight: Vec<i32>,
    pub coeff: Vec<(i32, String)>,
}

/// Group-ring element with rational constant coefficients, the result of
/// specializing `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecializedElem(pub BTreeMap<Coweight, BigRational>);

impl SpecializedElem {
    pub fn to_integral(&self) -> Option<GroupRingElem> {
        let mut out = GroupRingElem::zero();
        for (mu, c) in &self.0 {
            if !c.is_integer() {
                return None;
            }
            out.add_term(mu.clone(), CoeffQ::monomial(0, c.to_integer()));
        }
        Some(out)
    }

    pub fn total(&self) -> BigRational {
        self.0.values().fold(BigRational::zero(), |acc, c| acc + c)
    }
}

impl<'a> Add<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;

    fn add(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;

    fn sub(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&GroupRingElem> for GroupRingElem {
    fn add_assign(&mut self, rhs: &GroupRingElem) {
        for (mu, c) in &rhs.terms {
            self.add_term_ref(mu, c);
        }
    }
}

impl SubAssign<&GroupRingElem> for GroupRingElem {
    fn sub_assign(&mut self, rhs: &GroupRingElem) {
        for (mu, c) in &rhs.terms {
            self.add_term(mu.clone(), -c);
        }
    }
}

impl<'a> Mul<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;

    fn mul(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (mu, c) in &self.terms {
            for (nu, d) in &rhs.terms {
                out.add_term(mu + nu, c * d);
            }
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;

    fn neg(self) -> GroupRingElem {
        GroupRingElem { terms: self.terms.iter().map(|(mu, c)| (mu.clone(), -c)).collect() }
    }
}

impl Add for GroupRingElem {
    type Output = GroupRingElem;
    fn add(mut self, rhs: GroupRingElem) -> GroupRingElem {
        self += &rhs;
        self
    }
}

impl Sub for GroupRingElem {
    type Output = GroupRingElem;
    fn sub(mut self, rhs: GroupRingElem) -> GroupRingElem {
        self -= &rhs;
        self
    }
}

impl Mul for GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: GroupRingElem) -> GroupRingElem {
        &self * &rhs
    }
}

impl Neg for GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        -&self
    }
}

/// Leading monomial first, e.g. `q*pi^[2] + (q - 1) - pi^[-2]`.
impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Coweight::zero(self.terms.keys().next().unwrap().rank())) {
                return write!(f, "{c}");
            }
        }
        for (k, (mu, c)) in self.terms.iter().rev().enumerate() {
            let (negative, coeff) = match c.as_single() {
                Some((e, n)) => (n.is_negative(), CoeffQ::monomial(e, n.abs()).to_string()),
                None => (false, format!("({c})")),
            };
            let body = if mu.is_zero() {
                coeff
            } else if coeff == "1" {
                format!("pi^{mu}")
            } else {
                format!("{coeff}*pi^{mu}")
            };
            match (k, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl CoeffQ {
    fn as_single(&self) -> Option<(i32, BigInt)> {
        if self.len() == 1 {
            self.terms().next().map(|(e, c)| (e, c.clone()))
        } else {
            None
        }
    }
}
