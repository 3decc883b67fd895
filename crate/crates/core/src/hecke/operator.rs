use std::collections::BTreeMap;

use crate::algebra::{divide_by_factors, one_minus_inverse, CoeffQ, GroupRingElem, RationalElem};
use crate::error::Result;
use crate::hecke::HeckeCharacter;
use crate::root_system::{RootDatum, WeylGroup};

/// A finite sum `Σ_w f_w · w` with coefficients in the fraction field,
/// acting by `(Σ f_w w)(g) = Σ f_w · w(g)`. Keys are element indices of the
/// Weyl group the operator was built against.
#[derive(Clone, Debug)]
pub struct WeylOperator {
    rank: usize,
    terms: BTreeMap<usize, RationalElem>,
}

impl WeylOperator {
    pub fn zero(rank: usize) -> Self {
        WeylOperator { rank, terms: BTreeMap::new() }
    }

    pub fn identity(rank: usize) -> Self {
        Self::group_element(rank, 0)
    }

    /// The bare group element `w`.
    pub fn group_element(rank: usize, w: usize) -> Self {
        Self::term(rank, w, RationalElem::one(rank))
    }

    /// `f · w`
    pub fn term(rank: usize, w: usize, f: RationalElem) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(w, f);
        out
    }

    /// Multiplication by `f`.
    pub fn multiplication(rank: usize, f: RationalElem) -> Self {
        Self::term(rank, 0, f)
    }

    pub fn add_term(&mut self, w: usize, f: RationalElem) {
        if f.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&w) {
            Some(g) => &g + &f,
            None => f,
        };
        if !merged.is_zero() {
            self.terms.insert(w, merged.reduced());
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RationalElem)> + '_ {
        self.terms.iter().map(|(&w, f)| (w, f))
    }

    pub fn coefficient(&self, w: usize) -> RationalElem {
        self.terms.get(&w).cloned().unwrap_or_else(|| RationalElem::zero(self.rank))
    }

    pub fn add(&self, other: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for (w, f) in other.terms() {
            out.add_term(w, f.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoeffQ) -> WeylOperator {
        let mut out = Self::zero(self.rank);
        for (w, f) in self.terms() {
            out.add_term(w, RationalElem { num: f.num.scale(c), den: f.den.clone() });
        }
        out
    }

    /// `self ∘ other`, using `(f·w) ∘ (g·v) = (f · w(g)) · (wv)`.
    pub fn compose(&self, other: &WeylOperator, group: &WeylGroup) -> WeylOperator {
        let mut out = Self::zero(self.rank);
        for (w, f) in self.terms() {
            let action = &group.element(w).action;
            for (v, g) in other.terms() {
                out.add_term(group.mul(w, v), f * &g.act_matrix(action));
            }
        }
        out
    }

    pub fn apply_rational(&self, group: &WeylGroup, g: &RationalElem) -> RationalElem {
        let mut total = RationalElem::zero(self.rank);
        for (w, f) in self.terms() {
            total = &total + &(f * &g.act_matrix(&group.element(w).action));
        }
        total
    }

    pub fn apply(&self, group: &WeylGroup, g: &GroupRingElem) -> RationalElem {
        self.apply_rational(group, &RationalElem::from_elem(g.clone(), self.rank))
    }

    /// Coefficientwise equality in the fraction field.
    pub fn equals(&self, other: &WeylOperator) -> bool {
        let keys: std::collections::BTreeSet<usize> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().all(|w| self.coefficient(w) == other.coefficient(w))
    }
}

fn monomial_rational(rank: usize, f: GroupRingElem) -> RationalElem {
    RationalElem::from_elem(f, rank)
}

/// `∂_i = (pi^{-alpha_i^vee} - 1)^{-1} (pi^{-alpha_i^vee} - s_i)` as an operator.
pub fn demazure_operator(datum: &RootDatum, i: usize) -> WeylOperator {
    let n = datum.rank();
    let alpha = datum.roots.simple_coroot(i);
    let den = -one_minus_inverse(&alpha);
    let mut out = WeylOperator::zero(n);
    out.add_term(0, RationalElem { num: GroupRingElem::monomial(-&alpha), den: den.clone() });
    out.add_term(datum.weyl.simple(i), RationalElem { num: -GroupRingElem::one(n), den });
    out
}

/// `𝔗_i` in the form `a · 1 + b · s_i` with
/// `a = (1-q)/(pi^{-alpha}-1)` and `b = (q pi^{±alpha} - 1)/(pi^{-alpha}-1)`.
pub fn fraktur_operator(datum: &RootDatum, eps: &HeckeCharacter, i: usize) -> WeylOperator {
    let n = datum.rank();
    let alpha = datum.roots.simple_coroot(i);
    let den = -one_minus_inverse(&alpha);
    let exponent = if eps.is_minus_one(i) { alpha } else { -&alpha };
    let mut out = WeylOperator::zero(n);
    out.add_term(0, RationalElem { num: GroupRingElem::constant(n, CoeffQ::one() - CoeffQ::q()), den: den.clone() });
    out.add_term(
        datum.weyl.simple(i),
        RationalElem { num: GroupRingElem::term(exponent, CoeffQ::q()) - GroupRingElem::one(n), den },
    );
    out
}

/// The alternator `Σ_w (-1)^{l(w)} w`.
pub fn alternator_operator(datum: &RootDatum) -> WeylOperator {
    let n = datum.rank();
    let mut out = WeylOperator::zero(n);
    for (k, w) in datum.weyl.elements().iter().enumerate() {
        out.add_term(k, monomial_rational(n, GroupRingElem::constant(n, CoeffQ::constant(w.sign() as i64))));
    }
    out
}

/// Factors of the Weyl denominator `Δ = pi^{rho^vee} Π_{alpha>0}(1 - pi^{-alpha^vee})`.
pub fn weyl_denominator_factors(datum: &RootDatum) -> Vec<GroupRingElem> {
    let mut out = vec![GroupRingElem::monomial(datum.roots.rho())];
    out.extend(datum.roots.positive_roots().iter().map(|r| one_minus_inverse(&r.coroot)));
    out
}

pub fn weyl_denominator(datum: &RootDatum) -> GroupRingElem {
    crate::algebra::product(datum.rank(), &weyl_denominator_factors(datum))
}

/// `A(f) = Σ_w (-1)^{l(w)} w(f)`.
pub fn alternate(datum: &RootDatum, f: &GroupRingElem) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    for w in datum.weyl.elements() {
        let image = f.weyl_act(w);
        if w.sign() > 0 {
            out += &image;
        } else {
            out -= &image;
        }
    }
    out
}

/// `A(f) / Δ`, divided factor by factor.
pub fn alternate_over_denominator(datum: &RootDatum, f: &GroupRingElem) -> Result<GroupRingElem> {
    divide_by_factors(&alternate(datum, f), &weyl_denominator_factors(datum))
}

/// `Ω = (-1)^{l(w_0)} pi^{-rho^vee} Π(1 - pi^{-alpha^vee})^{-1} ∘ A ∘ pi^{-rho^vee}`,
/// or the same without the global sign when `sign_corrected` is false.
pub fn omega_operator(datum: &RootDatum, sign_corrected: bool) -> WeylOperator {
    let n = datum.rank();
    let rho = datum.roots.rho();
    let sign = if sign_corrected { datum.longest_sign() as i64 } else { 1 };
    // pi^{-rho} Π(1 - pi^{-alpha})^{-1} = 1/Δ
    let left = RationalElem { num: GroupRingElem::constant(n, CoeffQ::constant(sign)), den: weyl_denominator(datum) };
    let left = WeylOperator::multiplication(n, left);
    let right = WeylOperator::multiplication(n, monomial_rational(n, GroupRingElem::monomial(-&rho)));
    left.compose(&alternator_operator(datum), &datum.weyl).compose(&right, &datum.weyl)
}

/// `Ω(g)` as a fraction `(-1)^{l(w_0)} A(pi^{-rho} g) / Δ`.
pub fn omega_apply(datum: &RootDatum, g: &GroupRingElem, sign_corrected: bool) -> RationalElem {
    let sign = if sign_corrected { datum.longest_sign() as i64 } else { 1 };
    let num = alternate(datum, &g.shift(&-datum.roots.rho())).scale(&CoeffQ::constant(sign));
    RationalElem { num, den: weyl_denominator(datum) }
}

/// `Ω(g)` cleared to a group-ring element when the quotient is exact.
pub fn omega_cleared(datum: &RootDatum, g: &GroupRingElem, sign_corrected: bool) -> Result<GroupRingElem> {
    let sign = if sign_corrected { datum.longest_sign() as i64 } else { 1 };
    Ok(alternate_over_denominator(datum, &g.shift(&-datum.roots.rho()))?.scale(&CoeffQ::constant(sign)))
}

/// `D_{-1} = Π_{Φ^+_{-1}(eps)} (1 - q pi^{alpha^vee})` and
/// `D_q = Π_{Φ^+_q(eps)} (1 - q pi^{alpha^vee})`.
pub fn character_products(datum: &RootDatum, eps: &HeckeCharacter) -> (GroupRingElem, GroupRingElem) {
    let n = datum.rank();
    let mut d_minus = GroupRingElem::one(n);
    let mut d_q = GroupRingElem::one(n);
    for r in datum.roots.positive_roots() {
        let factor = GroupRingElem::one_minus(r.coroot.clone(), CoeffQ::q());
        if eps.acts_by_minus_one_on(r.length) {
            d_minus = &d_minus * &factor;
        } else {
            d_q = &d_q * &factor;
        }
    }
    (d_minus, d_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::action::{demazure, fraktur_t, pi, sum_fraktur};
    use crate::root_system::{coweight_box, Coweight};

    fn datum(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    fn cw(x: &[i32]) -> Coweight {
        Coweight::new(x.iter().copied())
    }

    #[test]
    fn omega_a1_examples() {
        let d = datum("A1");
        let chi1 = GroupRingElem::from_terms([(cw(&[1]), CoeffQ::one()), (cw(&[-1]), CoeffQ::one())]);
        assert_eq!(omega_cleared(&d, &pi(&cw(&[-1])), true).unwrap(), chi1);
        assert_eq!(omega_cleared(&d, &GroupRingElem::one(1), true).unwrap(), GroupRingElem::one(1));
        let chi3 = demazure(&d.roots, 0, &pi(&cw(&[-3])));
        assert_eq!(omega_cleared(&d, &pi(&cw(&[-3])), true).unwrap(), chi3);
        assert_eq!(omega_cleared(&d, &GroupRingElem::one(1), false).unwrap(), -GroupRingElem::one(1));
    }

    #[test]
    fn omega_operator_matches_direct_application() {
        for t in ["A1", "A2", "B2"] {
            let d = datum(t);
            let omega = omega_operator(&d, true);
            for mu in coweight_box(d.rank(), 2, 30) {
                let g = pi(&mu);
                assert_eq!(omega.apply(&d.weyl, &g), omega_apply(&d, &g, true), "{t} {mu}");
            }
        }
    }

    #[test]
    fn operator_forms_match_actions() {
        for t in ["A2", "B2", "G2"] {
            let d = datum(t);
            for eps in crate::hecke::HeckeCharacter::all(&d.roots) {
                for i in 0..d.rank() {
                    let op = fraktur_operator(&d, &eps, i);
                    let del = demazure_operator(&d, i);
                    for mu in coweight_box(d.rank(), 2, 20) {
                        let g = pi(&mu);
                        assert_eq!(op.apply(&d.weyl, &g).clear().unwrap(), fraktur_t(&d.roots, &eps, i, &g));
                        assert_eq!(del.apply(&d.weyl, &g).clear().unwrap(), demazure(&d.roots, i, &g));
                    }
                }
            }
        }
    }

    #[test]
    fn operator_identity_as_operators_a1_a2() {
        // Σ_w 𝔗_w and D_{-1} Ω D_q agree coefficientwise as Σ f_w w
        for t in ["A1", "A2"] {
            let d = datum(t);
            let n = d.rank();
            for eps in crate::hecke::HeckeCharacter::all(&d.roots) {
                let fraktur: Vec<WeylOperator> = (0..n).map(|i| fraktur_operator(&d, &eps, i)).collect();
                let mut theta = WeylOperator::zero(n);
                for w in d.weyl.elements() {
                    let op = w
                        .reduced_word
                        .iter()
                        .fold(WeylOperator::identity(n), |acc, &i| acc.compose(&fraktur[i], &d.weyl));
                    theta = theta.add(&op);
                }
                let (dm, dq) = character_products(&d, &eps);
                let rhs = WeylOperator::multiplication(n, RationalElem::from_elem(dm, n))
                    .compose(&omega_operator(&d, true), &d.weyl)
                    .compose(&WeylOperator::multiplication(n, RationalElem::from_elem(dq, n)), &d.weyl);
                assert!(theta.equals(&rhs), "{t} {eps}");
                let wrong = WeylOperator::multiplication(n, RationalElem::from_elem(character_products(&d, &eps).0, n))
                    .compose(&omega_operator(&d, false), &d.weyl)
                    .compose(
                        &WeylOperator::multiplication(n, RationalElem::from_elem(character_products(&d, &eps).1, n)),
                        &d.weyl,
                    );
                assert!(!theta.equals(&wrong), "{t} {eps}");
                // spot check the operator against the memoized evaluation
                let g = pi(&Coweight::fundamental(n, 0));
                assert_eq!(theta.apply(&d.weyl, &g).clear().unwrap(), sum_fraktur(&d, &eps, &g));
            }
        }
    }

    #[test]
    fn composition_rule() {
        let d = datum("A2");
        let n = 2;
        let s1 = d.weyl.simple(0);
        let f = RationalElem::from_elem(pi(&cw(&[1, 0])), n);
        let g = RationalElem::from_elem(pi(&cw(&[0, 1])), n);
        let a = WeylOperator::term(n, s1, f.clone());
        let b = WeylOperator::term(n, s1, g.clone());
        let ab = a.compose(&b, &d.weyl);
        let expected = &f * &g.weyl_act(d.weyl.element(s1));
        assert!(ab.equals(&WeylOperator::term(n, 0, expected)));
    }

    #[test]
    fn weyl_denominator_alternates() {
        for t in ["A2", "B2", "G2", "A3"] {
            let d = datum(t);
            let delta = weyl_denominator(&d);
            for w in d.weyl.elements() {
                assert_eq!(delta.weyl_act(w), delta.scale_int(w.sign() as i64), "{t}");
            }
        }
    }
}
