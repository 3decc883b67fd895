//! Actions of `T_{s_i}`, `𝔗_i`, `∂_i` and the normalized intertwiners on
//! the induced module, realized on `Z[q, q^-1][P^vee]`.

use crate::algebra::{one_minus_inverse, CoeffQ, GroupRingElem};
use crate::error::{Error, Result};
use crate::hecke::HeckeCharacter;
use crate::root_system::{Coweight, RootDatum, RootSystem};

/// `f^{s_i}`
pub fn reflect_elem(rs: &RootSystem, i: usize, f: &GroupRingElem) -> GroupRingElem {
    f.map_coweights(|mu| rs.reflect(i, mu))
}

/// `(f^{s_i} - f) / (1 - pi^{-alpha_i^vee})`, always exact.
fn reflection_quotient(rs: &RootSystem, i: usize, f: &GroupRingElem, fs: &GroupRingElem) -> GroupRingElem {
    (fs - f).exact_div(&one_minus_inverse(&rs.simple_coroot(i))).expect("f^s - f is divisible by 1 - pi^{-alpha^vee}")
}

/// `T_{s_i} f = eps(T_{s_i}) f^s + (1 - q)(f^s - f)/(1 - pi^{-alpha_i^vee})`.
pub fn t_act(rs: &RootSystem, eps: &HeckeCharacter, i: usize, f: &GroupRingElem) -> GroupRingElem {
    let fs = reflect_elem(rs, i, f);
    let d = reflection_quotient(rs, i, f, &fs);
    let one_minus_q = CoeffQ::one() - CoeffQ::q();
    fs.scale(eps.value(i)) + d.scale(&one_minus_q)
}

/// `𝔗_i f = pi^{rho_eps} T_{s_i} (pi^{-rho_eps} f)`.
pub fn fraktur_t(rs: &RootSystem, eps: &HeckeCharacter, i: usize, f: &GroupRingElem) -> GroupRingElem {
    let rho_eps = eps.rho_eps();
    t_act(rs, eps, i, &f.shift(&-rho_eps)).shift(rho_eps)
}

/// `∂_i f = (pi^{-alpha_i^vee} f - f^{s_i}) / (pi^{-alpha_i^vee} - 1)`.
pub fn demazure(rs: &RootSystem, i: usize, f: &GroupRingElem) -> GroupRingElem {
    let alpha = rs.simple_coroot(i);
    let num = f.shift(&-&alpha) - reflect_elem(rs, i, f);
    let den = -one_minus_inverse(&alpha);
    num.exact_div(&den).expect("Demazure numerator is divisible by pi^{-alpha^vee} - 1")
}

/// Normalized intertwiner `(1 - q^-1) pi^{alpha^vee} f + q^-1 (1 - pi^{alpha^vee}) T_{s_i} f`.
pub fn intertwiner_op(rs: &RootSystem, eps: &HeckeCharacter, i: usize, f: &GroupRingElem) -> GroupRingElem {
    let alpha = rs.simple_coroot(i);
    let q_inv = CoeffQ::q_pow(-1);
    let first = f.shift(&alpha).scale(&(CoeffQ::one() - q_inv.clone()));
    let tf = t_act(rs, eps, i, f);
    let second = (&tf - &tf.shift(&alpha)).scale(&q_inv);
    first + second
}

/// Expected scalar `c` with `intertwiner_op(f) = c * f^{s_i}`:
/// `1 - q^-1 pi^{alpha^vee}` when `eps(T_{s_i}) = q`, `pi^{alpha^vee} - q^-1` when it is `-1`.
pub fn intertwiner_scalar(rs: &RootSystem, eps: &HeckeCharacter, i: usize) -> GroupRingElem {
    let alpha = rs.simple_coroot(i);
    let n = rs.rank();
    if eps.is_minus_one(i) {
        GroupRingElem::monomial(alpha) - GroupRingElem::constant(n, CoeffQ::q_pow(-1))
    } else {
        GroupRingElem::one_minus(alpha, CoeffQ::q_pow(-1))
    }
}

/// Check that `word` is reduced, i.e. its length equals the length of the
/// element it represents.
pub fn check_reduced(datum: &RootDatum, word: &[usize]) -> Result<usize> {
    for &i in word {
        datum.roots.check_index(i)?;
    }
    let w = datum.weyl.word_element(word);
    if datum.weyl.element(w).length() != word.len() {
        return Err(Error::NonReducedWord(word.to_vec()));
    }
    Ok(w)
}

/// Apply `op_{i_1} ... op_{i_k}` (rightmost first) along a reduced word.
fn along_word(
    datum: &RootDatum,
    word: &[usize],
    f: &GroupRingElem,
    op: impl Fn(usize, &GroupRingElem) -> GroupRingElem,
) -> Result<GroupRingElem> {
    check_reduced(datum, word)?;
    Ok(word.iter().rev().fold(f.clone(), |acc, &i| op(i, &acc)))
}

/// `T_w f` for `w = s_{word[0]} s_{word[1]} ...`.
pub fn t_word(datum: &RootDatum, eps: &HeckeCharacter, word: &[usize], f: &GroupRingElem) -> Result<GroupRingElem> {
    along_word(datum, word, f, |i, g| t_act(&datum.roots, eps, i, g))
}

/// `𝔗_w f` along a reduced word.
pub fn fraktur_word(
    datum: &RootDatum,
    eps: &HeckeCharacter,
    word: &[usize],
    f: &GroupRingElem,
) -> Result<GroupRingElem> {
    along_word(datum, word, f, |i, g| fraktur_t(&datum.roots, eps, i, g))
}

/// `∂_w f` along a reduced word.
pub fn demazure_word(datum: &RootDatum, word: &[usize], f: &GroupRingElem) -> Result<GroupRingElem> {
    along_word(datum, word, f, |i, g| demazure(&datum.roots, i, g))
}

/// `∂_{w_0} f`.
pub fn demazure_longest(datum: &RootDatum, f: &GroupRingElem) -> GroupRingElem {
    let word = &datum.weyl.longest_element().reduced_word;
    demazure_word(datum, word, f).expect("stored words are reduced")
}

/// `op_w f` for every `w` in enumeration order, using the stored words.
///
/// Elements come in ShortLex order and ShortLex words are suffix closed, so
/// `op_w f = op_{i}(op_{s_i w} f)` with `i` the first letter of the word of
/// `w` reuses an earlier entry.
pub fn images_over_group(
    datum: &RootDatum,
    f: &GroupRingElem,
    op: impl Fn(usize, &GroupRingElem) -> GroupRingElem,
) -> Vec<GroupRingElem> {
    let group = &datum.weyl;
    let mut out: Vec<GroupRingElem> = Vec::with_capacity(group.order());
    for (k, w) in group.elements().iter().enumerate() {
        let value = match w.reduced_word.first() {
            None => f.clone(),
            Some(&i) => {
                let rest = group.left_mul_simple(i, k);
                debug_assert!(rest < k);
                op(i, &out[rest])
            }
        };
        out.push(value);
    }
    out
}

fn sum(values: Vec<GroupRingElem>) -> GroupRingElem {
    values.into_iter().fold(GroupRingElem::zero(), |acc, v| acc + v)
}

/// `Θ f = Σ_w 𝔗_w f`.
pub fn sum_fraktur(datum: &RootDatum, eps: &HeckeCharacter, f: &GroupRingElem) -> GroupRingElem {
    sum(images_over_group(datum, f, |i, g| fraktur_t(&datum.roots, eps, i, g)))
}

/// `Σ_w T_w f`.
pub fn sum_t(datum: &RootDatum, eps: &HeckeCharacter, f: &GroupRingElem) -> GroupRingElem {
    sum(images_over_group(datum, f, |i, g| t_act(&datum.roots, eps, i, g)))
}

/// `π^mu` as a group-ring element.
pub fn pi(mu: &Coweight) -> GroupRingElem {
    GroupRingElem::monomial(mu.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::coweight_box;

    fn datum(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    fn cw(x: &[i32]) -> Coweight {
        Coweight::new(x.iter().copied())
    }

    fn q() -> CoeffQ {
        CoeffQ::q()
    }

    /// `(pi^{s mu} - pi^mu) / (1 - pi^{-alpha})` by the finite geometric series.
    fn geometric_quotient(rs: &RootSystem, i: usize, mu: &Coweight) -> GroupRingElem {
        let alpha = rs.simple_coroot(i);
        let k = mu.coords()[i];
        let mut out = GroupRingElem::zero();
        if k > 0 {
            for j in 0..k {
                out.add_term(mu - &alpha.scaled(j), CoeffQ::constant(-1));
            }
        } else {
            for j in 1..=-k {
                out.add_term(mu + &alpha.scaled(j), CoeffQ::one());
            }
        }
        out
    }

    fn t_act_oracle(rs: &RootSystem, eps: &HeckeCharacter, i: usize, f: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (mu, c) in f.terms() {
            let smu = rs.reflect(i, mu);
            out.add_term(smu, eps.value(i) * c);
            out += &geometric_quotient(rs, i, mu).scale(&(c * &(CoeffQ::one() - q())));
        }
        out
    }

    #[test]
    fn t_act_on_constants() {
        let d = datum("B2");
        let one = GroupRingElem::one(2);
        for i in 0..2 {
            assert_eq!(t_act(&d.roots, &HeckeCharacter::trivial(&d.roots), i, &one), GroupRingElem::constant(2, q()));
            assert_eq!(
                t_act(&d.roots, &HeckeCharacter::sign(&d.roots), i, &one),
                GroupRingElem::constant(2, (-1).into())
            );
        }
    }

    #[test]
    fn t_act_a1_sign_golden() {
        let d = datum("A1");
        let sign = HeckeCharacter::sign(&d.roots);
        let out = t_act(&d.roots, &sign, 0, &pi(&cw(&[2])));
        let qm1 = q() - CoeffQ::one();
        let expected =
            GroupRingElem::from_terms([(cw(&[0]), qm1.clone()), (cw(&[2]), qm1), (cw(&[-2]), CoeffQ::constant(-1))]);
        assert_eq!(out, expected);
    }

    #[test]
    fn t_act_matches_geometric_oracle() {
        for t in ["A2", "B2", "G2", "C3"] {
            let d = datum(t);
            for eps in HeckeCharacter::all(&d.roots) {
                for mu in coweight_box(d.rank(), 2, 60) {
                    let f = pi(&mu);
                    for i in 0..d.rank() {
                        assert_eq!(
                            t_act(&d.roots, &eps, i, &f),
                            t_act_oracle(&d.roots, &eps, i, &f),
                            "{t} {eps} {mu} {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fraktur_matches_case_formula() {
        // (𝔗_i f)(pi^{-alpha} - 1) = (1-q) f + (q pi^{±alpha} - 1) f^s
        for t in ["A2", "B2", "G2"] {
            let d = datum(t);
            for eps in HeckeCharacter::all(&d.roots) {
                for mu in coweight_box(d.rank(), 2, 40) {
                    let f = pi(&mu);
                    for i in 0..d.rank() {
                        let alpha = d.roots.simple_coroot(i);
                        let sign_alpha = if eps.is_minus_one(i) { alpha.clone() } else { -&alpha };
                        let lhs = &fraktur_t(&d.roots, &eps, i, &f) * &(-one_minus_inverse(&alpha));
                        let fs = reflect_elem(&d.roots, i, &f);
                        let coeff_fs = GroupRingElem::term(sign_alpha, q()) - GroupRingElem::one(d.rank());
                        let rhs = f.scale(&(CoeffQ::one() - q())) + &coeff_fs * &fs;
                        assert_eq!(lhs, rhs, "{t} {eps} {mu} {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn fraktur_a1_sign_examples() {
        let d = datum("A1");
        let sign = HeckeCharacter::sign(&d.roots);
        let out = fraktur_t(&d.roots, &sign, 0, &GroupRingElem::one(1));
        assert_eq!(out, GroupRingElem::term(cw(&[2]), -q()));

        let f = pi(&cw(&[3]));
        let total = &f + &fraktur_t(&d.roots, &sign, 0, &f);
        let expected = GroupRingElem::from_terms([
            (cw(&[3]), q()),
            (cw(&[1]), q() - CoeffQ::one()),
            (cw(&[-1]), CoeffQ::constant(-1)),
        ]);
        assert_eq!(total, expected);
        assert_eq!(sum_fraktur(&d, &sign, &f), expected);
    }

    #[test]
    fn fraktur_is_t_for_trivial() {
        let d = datum("B2");
        let triv = HeckeCharacter::trivial(&d.roots);
        for mu in coweight_box(2, 2, 25) {
            let f = pi(&mu);
            assert_eq!(fraktur_t(&d.roots, &triv, 1, &f), t_act(&d.roots, &triv, 1, &f));
        }
    }

    #[test]
    fn demazure_examples() {
        let d = datum("A1");
        assert_eq!(demazure(&d.roots, 0, &GroupRingElem::one(1)), GroupRingElem::one(1));
        let chi3 = GroupRingElem::from_terms([-3, -1, 1, 3].map(|x| (cw(&[x]), CoeffQ::one())));
        assert_eq!(demazure(&d.roots, 0, &pi(&cw(&[-3]))), chi3);
        assert!(demazure(&d.roots, 0, &pi(&cw(&[1]))).is_zero());
    }

    #[test]
    fn demazure_identities() {
        for t in ["A2", "B2", "G2"] {
            let d = datum(t);
            for mu in coweight_box(d.rank(), 2, 50) {
                let f = pi(&mu);
                for i in 0..d.rank() {
                    let df = demazure(&d.roots, i, &f);
                    assert_eq!(demazure(&d.roots, i, &df), df, "idempotent {t} {mu}");
                    assert_eq!(reflect_elem(&d.roots, i, &df), df, "invariant {t} {mu}");
                    let alpha = d.roots.simple_coroot(i);
                    let left = demazure(&d.roots, i, &reflect_elem(&d.roots, i, &f));
                    let right = -demazure(&d.roots, i, &f.shift(&alpha));
                    assert_eq!(left, right, "∂s = -∂π^α {t} {mu}");
                }
            }
        }
    }

    #[test]
    fn deformed_demazure_a1() {
        let d = datum("A1");
        let alpha = cw(&[2]);
        let one = GroupRingElem::one(1);
        let sign = HeckeCharacter::sign(&d.roots);
        let lhs = &one + &fraktur_t(&d.roots, &sign, 0, &one);
        assert_eq!(lhs, GroupRingElem::one_minus(alpha.clone(), q()));
        let triv = HeckeCharacter::trivial(&d.roots);
        let lhs = &one + &fraktur_t(&d.roots, &triv, 0, &one);
        let rhs = demazure(&d.roots, 0, &GroupRingElem::one_minus(alpha, q()));
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, GroupRingElem::constant(1, q() + CoeffQ::one()));
    }

    #[test]
    fn intertwiner_examples() {
        let d = datum("B2");
        let bessel = HeckeCharacter::by_name(&d.roots, "neg-long").unwrap();
        let f = pi(&cw(&[1, -1]));
        // alpha_1 is long in B2, alpha_2 short
        let long = intertwiner_op(&d.roots, &bessel, 0, &f);
        let short = intertwiner_op(&d.roots, &bessel, 1, &f);
        let a1 = d.roots.simple_coroot(0);
        let a2 = d.roots.simple_coroot(1);
        let f1 = reflect_elem(&d.roots, 0, &f);
        let f2 = reflect_elem(&d.roots, 1, &f);
        let c_long = pi(&a1) - GroupRingElem::constant(2, CoeffQ::q_pow(-1));
        let c_short = GroupRingElem::one_minus(a2, CoeffQ::q_pow(-1));
        assert_eq!(long, &c_long * &f1);
        assert_eq!(short, &c_short * &f2);
    }

    #[test]
    fn word_checks() {
        let d = datum("A2");
        let f = pi(&cw(&[1, 0]));
        let sign = HeckeCharacter::sign(&d.roots);
        assert_eq!(t_word(&d, &sign, &[], &f).unwrap(), f);
        let a = t_word(&d, &sign, &[0, 1, 0], &f).unwrap();
        let b = t_word(&d, &sign, &[1, 0, 1], &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(t_word(&d, &sign, &[0, 0], &f), Err(Error::NonReducedWord(vec![0, 0])));
        assert!(matches!(t_word(&d, &sign, &[5], &f), Err(Error::IndexOutOfRange { .. })));

        let b2 = datum("B2");
        let g = pi(&cw(&[1, 1]));
        for eps in HeckeCharacter::all(&b2.roots) {
            let a = t_word(&b2, &eps, &[0, 1, 0, 1], &g).unwrap();
            let b = t_word(&b2, &eps, &[1, 0, 1, 0], &g).unwrap();
            assert_eq!(a, b, "{eps}");
        }
    }

    #[test]
    fn memoized_sum_matches_word_by_word() {
        let d = datum("B2");
        for eps in HeckeCharacter::all(&d.roots) {
            let f = pi(&cw(&[1, -2]));
            let direct = d
                .weyl
                .elements()
                .iter()
                .fold(GroupRingElem::zero(), |acc, w| acc + fraktur_word(&d, &eps, &w.reduced_word, &f).unwrap());
            assert_eq!(sum_fraktur(&d, &eps, &f), direct);
        }
    }

    #[test]
    fn poincare_sums() {
        let a1 = datum("A1");
        let triv = HeckeCharacter::trivial(&a1.roots);
        assert_eq!(sum_fraktur(&a1, &triv, &GroupRingElem::one(1)), GroupRingElem::constant(1, q() + CoeffQ::one()));
        let a2 = datum("A2");
        let triv = HeckeCharacter::trivial(&a2.roots);
        let poincare = (q() + CoeffQ::one()) * (CoeffQ::q_pow(2) + q() + CoeffQ::one());
        assert_eq!(sum_fraktur(&a2, &triv, &GroupRingElem::one(2)), GroupRingElem::constant(2, poincare));
    }
}
