//! Checkers for the identities satisfied by the operators of this module.
//!
//! Each checker runs over a list of inputs in parallel and reports the
//! number of inputs checked and, on failure, the first failing input in
//! list order (so the witness does not depend on scheduling).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::action::{
    demazure, demazure_longest, fraktur_t, intertwiner_op, intertwiner_scalar, pi, reflect_elem, sum_fraktur, t_act,
};
use super::operator::{character_products, omega_cleared};
use super::HeckeCharacter;
use crate::algebra::{one_minus_inverse, CoeffQ, GroupRingElem};
use crate::error::Error;
use crate::root_system::{Coweight, RootDatum};

/// A failing input with both sides of the identity, printed canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(input: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Witness { input: input.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Run `check` on every item; stop at the first failure in list order.
pub fn check_all<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<Witness> + Sync + Send) -> Outcome {
    match items.par_iter().enumerate().find_map_first(|(k, item)| check(item).map(|w| (k, w))) {
        Some((k, w)) => Outcome { checked: k + 1, witness: Some(w) },
        None => Outcome { checked: items.len(), witness: None },
    }
}

fn compare(input: impl FnOnce() -> String, lhs: GroupRingElem, rhs: GroupRingElem) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::new(input(), lhs, rhs))
}

/// Negative controls: each one breaks a single ingredient so that the
/// corresponding checker must fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// `T_s` acts on the character line by `q^2` where it should act by `q`.
    QSquared,
    /// Use the assignment `(-1, q)` on `A2`, which is not a character.
    InconsistentCharacter,
    /// Flip the sign of the correction term in the Bernstein relation.
    FlipBernstein,
    /// Exchange the two cases of the deformed Demazure identity.
    SwapDeformedDemazure,
    /// Use `rho^vee` in place of `rho^vee_eps`.
    RhoForRhoEps,
    /// Omit the global `(-1)^{l(w_0)}` in the operator `Ω`.
    DropSignCorrection,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::QSquared,
        Mutation::InconsistentCharacter,
        Mutation::FlipBernstein,
        Mutation::SwapDeformedDemazure,
        Mutation::RhoForRhoEps,
        Mutation::DropSignCorrection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::QSquared => "q-squared",
            Mutation::InconsistentCharacter => "inconsistent-character",
            Mutation::FlipBernstein => "flip-bernstein",
            Mutation::SwapDeformedDemazure => "swap-deformed-demazure",
            Mutation::RhoForRhoEps => "rho-for-rho-eps",
            Mutation::DropSignCorrection => "drop-sign-correction",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown mutation '{s}'")))
    }
}

fn pairs(rank: usize, basis: &[Coweight]) -> Vec<(usize, Coweight)> {
    (0..rank).flat_map(|i| basis.iter().map(move |mu| (i, mu.clone()))).collect()
}

/// `(T_{s_i} - q)(T_{s_i} + 1) = 0` on every basis monomial.
///
/// With `q_squared`, generators acting on the line by `q` act by `q^2`.
pub fn verify_quadratic(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight], q_squared: bool) -> Outcome {
    let rs = &datum.roots;
    let mut eps = eps.clone();
    if q_squared {
        for i in 0..rs.rank() {
            if !eps.is_minus_one(i) {
                eps = eps.with_action_value(i, CoeffQ::q_pow(2));
            }
        }
    }
    check_all(&pairs(rs.rank(), basis), |(i, mu)| {
        let f = pi(mu);
        let tf = t_act(rs, &eps, *i, &f);
        let ttf = t_act(rs, &eps, *i, &tf);
        let one_minus_q = CoeffQ::one() - CoeffQ::q();
        let lhs = ttf + tf.scale(&one_minus_q) - f.scale(&CoeffQ::q());
        compare(|| format!("i={} mu={mu}", i + 1), lhs, GroupRingElem::zero())
    })
}

/// `T_w f` is independent of the reduced word of `w`, for every `w`.
///
/// Every reduced word of `w` starts with a left descent `i` followed by a
/// reduced word of `s_i w`. Walking the group in order of length and
/// checking that `T_i(T_{s_i w} f)` agrees over all left descents `i`
/// therefore covers all reduced words.
pub fn verify_braid(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight]) -> Outcome {
    let rs = &datum.roots;
    let group = &datum.weyl;
    check_all(basis, |mu| {
        let mut values: Vec<GroupRingElem> = Vec::with_capacity(group.order());
        for (k, w) in group.elements().iter().enumerate() {
            let Some(&first) = w.reduced_word.first() else {
                values.push(pi(mu));
                continue;
            };
            let value = t_act(rs, eps, first, &values[group.left_mul_simple(first, k)]);
            for i in 0..rs.rank() {
                let rest = group.left_mul_simple(i, k);
                if i == first || group.element(rest).length() > w.length() {
                    continue;
                }
                let other = t_act(rs, eps, i, &values[rest]);
                if other != value {
                    let mut alt = vec![i];
                    alt.extend(&group.element(rest).reduced_word);
                    return Some(Witness::new(
                        format!("mu={mu} words {:?} vs {:?}", one_based(&w.reduced_word), one_based(&alt)),
                        value,
                        other,
                    ));
                }
            }
            values.push(value);
        }
        None
    })
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

/// `T_{s_i} π^mu g = π^{s_i mu} T_{s_i} g + (1-q)(π^{s_i mu} - π^mu)/(1 - π^{-alpha_i^vee}) g`
/// for `mu` in `mus` and `g` in the monomial basis `gs` of the module.
pub fn verify_bernstein(
    datum: &RootDatum,
    eps: &HeckeCharacter,
    mus: &[Coweight],
    gs: &[Coweight],
    flip_sign: bool,
) -> Outcome {
    let rs = &datum.roots;
    let items: Vec<(usize, Coweight, Coweight)> = pairs(rs.rank(), mus)
        .into_iter()
        .flat_map(|(i, mu)| gs.iter().map(move |nu| (i, mu.clone(), nu.clone())))
        .collect();
    let correction_sign = if flip_sign { -1 } else { 1 };
    check_all(&items, |(i, mu, nu)| {
        let g = pi(nu);
        let smu = rs.reflect(*i, mu);
        let lhs = t_act(rs, eps, *i, &pi(&(mu + nu)));
        let quotient = (pi(&smu) - pi(mu))
            .exact_div(&one_minus_inverse(&rs.simple_coroot(*i)))
            .expect("pi^{s mu} - pi^mu is divisible by 1 - pi^{-alpha^vee}");
        let correction = (&quotient * &g).scale(&(CoeffQ::one() - CoeffQ::q())).scale_int(correction_sign);
        let rhs = t_act(rs, eps, *i, &g).shift(&smu) + correction;
        compare(|| format!("i={} mu={mu} g=pi^{nu}", i + 1), lhs, rhs)
    })
}

/// `1 + 𝔗_i = (1 - q π^{alpha_i^vee}) ∂_i` when `alpha_i ∈ Φ^+_{-1}(eps)`,
/// and `∂_i (1 - q π^{alpha_i^vee})` otherwise.
pub fn verify_deformed_demazure(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight], swap: bool) -> Outcome {
    let rs = &datum.roots;
    check_all(&pairs(rs.rank(), basis), |(i, mu)| {
        let f = pi(mu);
        let lhs = &f + &fraktur_t(rs, eps, *i, &f);
        let factor = GroupRingElem::one_minus(rs.simple_coroot(*i), CoeffQ::q());
        let rhs = if eps.is_minus_one(*i) != swap {
            &factor * &demazure(rs, *i, &f)
        } else {
            demazure(rs, *i, &(&factor * &f))
        };
        compare(|| format!("i={} mu={mu}", i + 1), lhs, rhs)
    })
}

/// `<alpha_i, rho^vee_eps>` is 1 on `Φ^+_{-1}(eps)` simple roots and 0 otherwise.
pub fn verify_rho_pairing(datum: &RootDatum, eps: &HeckeCharacter, use_rho: bool) -> Outcome {
    let rho = if use_rho { datum.roots.rho() } else { eps.rho_eps().clone() };
    let indices: Vec<usize> = (0..datum.rank()).collect();
    check_all(&indices, |&i| {
        let pairing = rho.coords()[i];
        let expected = i32::from(eps.is_minus_one(i));
        (pairing != expected).then(|| Witness::new(format!("i={}", i + 1), pairing, expected))
    })
}

/// `Σ_w 𝔗_w = D_{-1} · Ω · D_q` applied to every basis monomial.
pub fn verify_operator_identity(
    datum: &RootDatum,
    eps: &HeckeCharacter,
    basis: &[Coweight],
    sign_corrected: bool,
) -> Outcome {
    let (d_minus, d_q) = character_products(datum, eps);
    check_all(basis, |mu| {
        let f = pi(mu);
        let lhs = sum_fraktur(datum, eps, &f);
        let omega = omega_cleared(datum, &(&d_q * &f), sign_corrected).expect("alternating sums are divisible by Δ");
        compare(|| format!("mu={mu}"), lhs, &d_minus * &omega)
    })
}

/// `A_{s_i} f = c_{eps,i} f^{s_i}` with the scalar of [`intertwiner_scalar`].
pub fn verify_intertwiner(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight]) -> Outcome {
    let rs = &datum.roots;
    check_all(&pairs(rs.rank(), basis), |(i, mu)| {
        let f = pi(mu);
        let lhs = intertwiner_op(rs, eps, *i, &f);
        let rhs = &intertwiner_scalar(rs, eps, *i) * &reflect_elem(rs, *i, &f);
        compare(|| format!("i={} mu={mu}", i + 1), lhs, rhs)
    })
}

/// The two symmetries of `D_{-1}^{-1} Θ D_q^{-1}` with `Θ = Σ_w 𝔗_w`:
/// it commutes with `s_i` on the left, and composing with `s_i` on the
/// right equals composing with `-π^{alpha_i^vee}`. Both are checked in
/// denominator-free form:
/// `s_i(Θ π^mu) · D_{-1} = Θ π^mu · s_i(D_{-1})` and
/// `Θ(s_i(D_q) π^{s_i mu}) = -Θ(π^{alpha_i^vee} s_i(D_q) π^mu)`.
pub fn verify_omega_symmetry(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight]) -> Outcome {
    let rs = &datum.roots;
    let (d_minus, d_q) = character_products(datum, eps);
    check_all(&pairs(rs.rank(), basis), |(i, mu)| {
        let theta = sum_fraktur(datum, eps, &pi(mu));
        let lhs = &reflect_elem(rs, *i, &theta) * &d_minus;
        let rhs = &theta * &reflect_elem(rs, *i, &d_minus);
        if lhs != rhs {
            return Some(Witness::new(format!("left i={} mu={mu}", i + 1), lhs, rhs));
        }
        let sdq = reflect_elem(rs, *i, &d_q);
        let lhs = sum_fraktur(datum, eps, &sdq.shift(&rs.reflect(*i, mu)));
        let rhs = -sum_fraktur(datum, eps, &sdq.shift(&(mu + &rs.simple_coroot(*i))));
        compare(|| format!("right i={} mu={mu}", i + 1), lhs, rhs)
    })
}

/// At `q = 0`, `Σ_w 𝔗_w` becomes `∂_{w_0}` for every character.
pub fn verify_q0_degeneration(datum: &RootDatum, eps: &HeckeCharacter, basis: &[Coweight]) -> Outcome {
    check_all(basis, |mu| {
        let f = pi(mu);
        let lhs = sum_fraktur(datum, eps, &f).at_q_zero().expect("Σ𝔗_w has coefficients in Z[q]");
        compare(|| format!("mu={mu}"), lhs, demazure_longest(datum, &f))
    })
}

/// `∂_i ∂_i = ∂_i`, `s_i ∂_i = ∂_i` and `∂_i s_i = -∂_i π^{alpha_i^vee}`.
pub fn verify_demazure_relations(datum: &RootDatum, basis: &[Coweight]) -> Outcome {
    let rs = &datum.roots;
    check_all(&pairs(rs.rank(), basis), |(i, mu)| {
        let f = pi(mu);
        let df = demazure(rs, *i, &f);
        let ddf = demazure(rs, *i, &df);
        if ddf != df {
            return Some(Witness::new(format!("idempotent i={} mu={mu}", i + 1), ddf, df));
        }
        let sdf = reflect_elem(rs, *i, &df);
        if sdf != df {
            return Some(Witness::new(format!("invariant i={} mu={mu}", i + 1), sdf, df));
        }
        let lhs = demazure(rs, *i, &reflect_elem(rs, *i, &f));
        let rhs = -demazure(rs, *i, &f.shift(&rs.simple_coroot(*i)));
        compare(|| format!("twisted i={} mu={mu}", i + 1), lhs, rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::CharValue;
    use crate::root_system::coweight_box;

    fn datum(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    #[test]
    fn quadratic_and_its_control() {
        let d = datum("B2");
        let basis = coweight_box(2, 2, 200);
        for eps in HeckeCharacter::all(&d.roots) {
            assert!(verify_quadratic(&d, &eps, &basis, false).passed(), "{eps}");
        }
        let triv = HeckeCharacter::trivial(&d.roots);
        let out = verify_quadratic(&d, &triv, &basis, true);
        assert!(!out.passed());
        assert_eq!(out.checked, 1);
    }

    #[test]
    fn braid_and_its_control() {
        for t in ["A2", "B2", "G2"] {
            let d = datum(t);
            let basis = coweight_box(2, 1, 200);
            for eps in HeckeCharacter::all(&d.roots) {
                assert!(verify_braid(&d, &eps, &basis).passed(), "{t} {eps}");
            }
        }
        let a2 = datum("A2");
        let bad = HeckeCharacter::unchecked(&a2.roots, "bad", vec![CharValue::MinusOne, CharValue::Q]);
        let zero = [Coweight::zero(2)];
        let out = verify_braid(&a2, &bad, &zero);
        let w = out.witness.expect("T1T2T1(1) = q but T2T1T2(1) = -q^2");
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("q", "-q^2"));
    }

    #[test]
    fn bernstein_and_its_control() {
        let d = datum("A1");
        let sign = HeckeCharacter::sign(&d.roots);
        let mus = coweight_box(1, 2, 200);
        let gs = coweight_box(1, 1, 200);
        assert!(verify_bernstein(&d, &sign, &mus, &gs, false).passed());
        assert!(!verify_bernstein(&d, &sign, &mus, &gs, true).passed());
        // mu = 0 and mu fixed by s_i carry no correction, so the control passes there
        let fixed = [Coweight::zero(1)];
        assert!(verify_bernstein(&d, &sign, &fixed, &gs, true).passed());
    }

    #[test]
    fn deformed_demazure_and_its_control() {
        let d = datum("B2");
        let basis = coweight_box(2, 2, 200);
        for eps in HeckeCharacter::all(&d.roots) {
            assert!(verify_deformed_demazure(&d, &eps, &basis, false).passed(), "{eps}");
            assert!(!verify_deformed_demazure(&d, &eps, &basis, true).passed(), "{eps}");
        }
    }

    #[test]
    fn rho_pairing_and_its_control() {
        let d = datum("C3");
        for eps in HeckeCharacter::all(&d.roots) {
            assert!(verify_rho_pairing(&d, &eps, false).passed());
        }
        assert!(!verify_rho_pairing(&d, &HeckeCharacter::trivial(&d.roots), true).passed());
    }

    #[test]
    fn operator_identity_small() {
        for t in ["A1", "A2", "B2", "G2"] {
            let d = datum(t);
            let basis = coweight_box(d.rank(), 1, 200);
            for eps in HeckeCharacter::all(&d.roots) {
                assert!(verify_operator_identity(&d, &eps, &basis, true).passed(), "{t} {eps}");
                assert!(verify_q0_degeneration(&d, &eps, &basis).passed(), "{t} {eps}");
                assert!(verify_intertwiner(&d, &eps, &basis).passed(), "{t} {eps}");
                assert!(verify_omega_symmetry(&d, &eps, &basis).passed(), "{t} {eps}");
            }
            assert!(verify_demazure_relations(&d, &basis).passed());
        }
    }

    #[test]
    fn dropping_the_sign_breaks_a1() {
        let d = datum("A1");
        let triv = HeckeCharacter::trivial(&d.roots);
        let out = verify_operator_identity(&d, &triv, &[Coweight::zero(1)], false);
        let w = out.witness.unwrap();
        assert_eq!(w.lhs, "q + 1");
        assert_eq!(w.rhs, "-q - 1");
    }

    #[test]
    fn mutation_names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>().unwrap(), m);
        }
        assert!("nope".parse::<Mutation>().is_err());
    }
}
