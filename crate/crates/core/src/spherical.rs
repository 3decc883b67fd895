//! Images of spherical and Iwahori-fixed vectors: both sides of the
//! alternator formula, the Weyl and Demazure character formulas, and the
//! closed forms they specialize to.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{divide_by_factors, CoeffQ, GroupRingElem};
use crate::error::{Error, Result};
use crate::hecke::action::{demazure_longest, pi, sum_fraktur, t_word};
use crate::hecke::operator::{alternate_over_denominator, character_products};
use crate::hecke::HeckeCharacter;
use crate::root_system::{Coweight, Family, LengthClass, RootDatum};

fn require_dominant(lambda: &Coweight) -> Result<()> {
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NonDominant(lambda.to_string()))
    }
}

fn require_family(datum: &RootDatum, family: Family) -> Result<()> {
    let t = datum.roots.cartan_type();
    if t.family == family {
        Ok(())
    } else {
        Err(Error::WrongFamily { expected: family.letter(), found: t.to_string() })
    }
}

fn check_rank(datum: &RootDatum, lambda: &Coweight) -> Result<()> {
    if lambda.rank() == datum.rank() {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected: datum.rank(), found: lambda.rank() })
    }
}

/// `π^{-rho_eps} Σ_w 𝔗_w π^{lambda + 2 rho_eps}`.
pub fn theorem_lhs(datum: &RootDatum, eps: &HeckeCharacter, lambda: &Coweight) -> Result<GroupRingElem> {
    check_rank(datum, lambda)?;
    let rho_eps = eps.rho_eps();
    let start = lambda + &rho_eps.scaled(2);
    Ok(sum_fraktur(datum, eps, &pi(&start)).shift(&-rho_eps))
}

/// `(-1)^{l(w_0)} π^{-rho_eps} D_{-1} A(π^{lambda + 2 rho_eps - rho} D_q) / Δ`
/// where `Δ = π^{rho} Π_{alpha>0}(1 - π^{-alpha^vee})`.
///
/// The alternating sum is divided by `Δ` first, factor by factor; that
/// division is always exact. Without `sign_corrected` the global sign is
/// dropped.
pub fn theorem_rhs_with(
    datum: &RootDatum,
    eps: &HeckeCharacter,
    lambda: &Coweight,
    sign_corrected: bool,
) -> Result<GroupRingElem> {
    check_rank(datum, lambda)?;
    let rho_eps = eps.rho_eps();
    let (d_minus, d_q) = character_products(datum, eps);
    let exponent = &(lambda + &rho_eps.scaled(2)) - &datum.roots.rho();
    let symmetric = alternate_over_denominator(datum, &d_q.shift(&exponent))?;
    let sign = if sign_corrected { datum.longest_sign() } else { 1 };
    Ok((&d_minus * &symmetric).shift(&-rho_eps).scale_int(sign as i64))
}

pub fn theorem_rhs(datum: &RootDatum, eps: &HeckeCharacter, lambda: &Coweight) -> Result<GroupRingElem> {
    theorem_rhs_with(datum, eps, lambda, true)
}

/// `χ_lambda = A(π^{lambda + rho}) / A(π^{rho})`, with `A(π^rho)` taken in its
/// factored form `Δ`.
pub fn weyl_character(datum: &RootDatum, lambda: &Coweight) -> Result<GroupRingElem> {
    check_rank(datum, lambda)?;
    require_dominant(lambda)?;
    alternate_over_denominator(datum, &pi(&(lambda + &datum.roots.rho())))
}

/// `∂_{w_0} π^{w_0 lambda}`.
pub fn demazure_character(datum: &RootDatum, lambda: &Coweight) -> Result<GroupRingElem> {
    check_rank(datum, lambda)?;
    require_dominant(lambda)?;
    let lowest = datum.weyl.longest_element().apply(lambda);
    Ok(demazure_longest(datum, &pi(&lowest)))
}

/// Printed Casselman-Shalika closed form next to the value of the
/// alternator formula for the sign character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasselmanShalika {
    /// `q^{l(w_0)} π^{rho} Π_{alpha>0}(1 - q^{-1} π^{-alpha^vee}) χ_lambda`
    pub closed_form: GroupRingElem,
    /// `theorem_lhs(sign, lambda)`
    pub theorem_value: GroupRingElem,
}

impl CasselmanShalika {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.theorem_value
    }
}

pub fn casselman_shalika(datum: &RootDatum, lambda: &Coweight) -> Result<CasselmanShalika> {
    let chi = weyl_character(datum, lambda)?;
    let n = datum.rank();
    let rs = &datum.roots;
    let mut closed = GroupRingElem::term(rs.rho(), CoeffQ::q_pow(rs.positive_roots().len() as i32));
    for r in rs.positive_roots() {
        closed = &closed * &GroupRingElem::one_minus(-&r.coroot, CoeffQ::q_pow(-1));
    }
    let closed_form = &closed * &chi;
    let theorem_value = theorem_lhs(datum, &HeckeCharacter::sign(rs), lambda)?;
    debug_assert_eq!(closed_form.rank().unwrap_or(n), n);
    Ok(CasselmanShalika { closed_form, theorem_value })
}

/// `Σ_w w(π^lambda Π_{alpha>0} (1 - q π^{alpha^vee}) / (1 - π^{alpha^vee}))`.
///
/// All summands are brought over the common denominator
/// `D = Π_{alpha>0}(1 - π^{alpha^vee})`: `w(D)` differs from `D` by the unit
/// `D / w(D)`, obtained by exact division. The numerator is then divided by
/// `D` factor by factor.
pub fn macdonald(datum: &RootDatum, lambda: &Coweight) -> Result<GroupRingElem> {
    check_rank(datum, lambda)?;
    require_dominant(lambda)?;
    let n = datum.rank();
    let roots = datum.roots.positive_roots();
    let den_factors: Vec<GroupRingElem> =
        roots.iter().map(|r| GroupRingElem::one_minus(r.coroot.clone(), CoeffQ::one())).collect();
    let den = crate::algebra::product(n, &den_factors);
    let mut num = pi(lambda);
    for r in roots {
        num = &num * &GroupRingElem::one_minus(r.coroot.clone(), CoeffQ::q());
    }
    let mut total = GroupRingElem::zero();
    for w in datum.weyl.elements() {
        let unit = den.exact_div(&den.weyl_act(w))?;
        total += &(&num.weyl_act(w) * &unit);
    }
    divide_by_factors(&total, &den_factors)
}

/// `Σ_w q^{l(w)}`.
pub fn poincare_polynomial(datum: &RootDatum) -> CoeffQ {
    datum.weyl.elements().iter().fold(CoeffQ::zero(), |acc, w| acc + CoeffQ::q_pow(w.length() as i32))
}

/// The two displayed forms of the spherical Shalika value on type `B`, for
/// the character acting by `-1` on short and `q` on long simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShalikaForms {
    /// The alternator formula for this character.
    pub theorem_form: GroupRingElem,
    /// `(-1)^{l(w_0)} q^{#long} π^{-rho_eps} D_{-1} A(π^{lambda+rho} Π_long (1 - q^{-1} π^{-alpha^vee})) / Δ`
    pub rewritten_form: GroupRingElem,
}

impl ShalikaForms {
    pub fn agree(&self) -> bool {
        self.theorem_form == self.rewritten_form
    }
}

pub fn shalika(datum: &RootDatum, lambda: &Coweight) -> Result<ShalikaForms> {
    require_family(datum, Family::B)?;
    check_rank(datum, lambda)?;
    require_dominant(lambda)?;
    let rs = &datum.roots;
    let eps = HeckeCharacter::by_name(rs, "neg-short")?;
    let theorem_form = theorem_rhs(datum, &eps, lambda)?;

    let mut inner = pi(&(lambda + &rs.rho()));
    let mut long_count = 0;
    for r in rs.positive_roots().iter().filter(|r| r.length == LengthClass::Long) {
        inner = &inner * &GroupRingElem::one_minus(-&r.coroot, CoeffQ::q_pow(-1));
        long_count += 1;
    }
    let (d_minus, _) = character_products(datum, &eps);
    let symmetric = alternate_over_denominator(datum, &inner)?;
    let rewritten_form = (&d_minus * &symmetric)
        .shift(&-eps.rho_eps())
        .scale(&CoeffQ::q_pow(long_count))
        .scale_int(datum.longest_sign() as i64);
    Ok(ShalikaForms { theorem_form, rewritten_form })
}

/// The Bessel value on type `B` and its comparison with the quoted product
/// `π^{-rho_eps} Π_{long alpha>0}(1 - q^{-1} π^{alpha^vee})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselValue {
    /// `theorem_lhs(neg-long, 0)`
    pub theorem_value: GroupRingElem,
    pub quoted_product: GroupRingElem,
    /// `theorem_value / quoted_product = sign * q^q_exponent * π^shift`
    pub sign: i32,
    pub q_exponent: i32,
    pub shift: Coweight,
}

impl BesselValue {
    pub fn unit(&self) -> GroupRingElem {
        GroupRingElem::term(self.shift.clone(), CoeffQ::q_pow(self.q_exponent)).scale_int(self.sign as i64)
    }
}

pub fn bessel_product(datum: &RootDatum, eps: &HeckeCharacter) -> GroupRingElem {
    let rs = &datum.roots;
    let mut out = pi(&-eps.rho_eps());
    for r in rs.positive_roots().iter().filter(|r| eps.acts_by_minus_one_on(r.length)) {
        out = &out * &GroupRingElem::one_minus(r.coroot.clone(), CoeffQ::q_pow(-1));
    }
    out
}

pub fn bessel_value(datum: &RootDatum) -> Result<BesselValue> {
    require_family(datum, Family::B)?;
    let rs = &datum.roots;
    let eps = HeckeCharacter::by_name(rs, "neg-long")?;
    let theorem_value = theorem_lhs(datum, &eps, &Coweight::zero(rs.rank()))?;
    let quoted_product = bessel_product(datum, &eps);
    let report = |detail: &str| Error::RatioNotMonomial(format!("({theorem_value}) / ({quoted_product}): {detail}"));
    let ratio = theorem_value.exact_div(&quoted_product).map_err(|_| report("not divisible"))?;
    let (sign, q_exponent, shift) = ratio.as_unit_monomial().ok_or_else(|| report(&format!("quotient {ratio}")))?;
    Ok(BesselValue { theorem_value, quoted_product, sign, q_exponent, shift })
}

/// Both quotients of the Bessel value by the quoted product: as printed,
/// and with the product's exponents negated (`π^mu -> π^{-mu}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselComparison {
    pub theorem_value: GroupRingElem,
    pub quoted_product: GroupRingElem,
    /// `theorem_value / quoted_product` when the division is exact.
    pub ratio: Option<GroupRingElem>,
    /// `theorem_value / quoted_product(π^{-mu})` when the division is exact.
    pub inverted_ratio: Option<GroupRingElem>,
}

impl BesselComparison {
    pub fn ratio_is_unit(&self) -> bool {
        self.ratio.as_ref().is_some_and(|r| r.as_unit_monomial().is_some())
    }
}

pub fn bessel_comparison(datum: &RootDatum) -> Result<BesselComparison> {
    require_family(datum, Family::B)?;
    let rs = &datum.roots;
    let eps = HeckeCharacter::by_name(rs, "neg-long")?;
    let theorem_value = theorem_lhs(datum, &eps, &Coweight::zero(rs.rank()))?;
    let quoted_product = bessel_product(datum, &eps);
    let ratio = theorem_value.exact_div(&quoted_product).ok();
    let inverted = quoted_product.map_coweights(|mu| -mu);
    let inverted_ratio = theorem_value.exact_div(&inverted).ok();
    Ok(BesselComparison { theorem_value, quoted_product, ratio, inverted_ratio })
}

/// `|I π^lambda I| = q^{<2 rho, lambda>}` for dominant `lambda`.
pub fn coset_measure(datum: &RootDatum, lambda: &Coweight) -> Result<CoeffQ> {
    check_rank(datum, lambda)?;
    require_dominant(lambda)?;
    Ok(CoeffQ::q_pow(datum.roots.two_rho_pairing(lambda) as i32))
}

/// `T_w π^{lambda + rho_eps}` together with the measure `|I π^lambda I|`
/// that normalizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwahoriImage {
    pub value: GroupRingElem,
    pub measure: CoeffQ,
}

/// `w` is given by a reduced word.
pub fn iwahori_image(
    datum: &RootDatum,
    eps: &HeckeCharacter,
    word: &[usize],
    lambda: &Coweight,
) -> Result<IwahoriImage> {
    let measure = coset_measure(datum, lambda)?;
    let value = t_word(datum, eps, word, &pi(&(lambda + eps.rho_eps())))?;
    Ok(IwahoriImage { value, measure })
}

/// `Σ_w T_w π^{lambda + rho_eps}` over the stored reduced words.
pub fn iwahori_sum(datum: &RootDatum, eps: &HeckeCharacter, lambda: &Coweight) -> Result<GroupRingElem> {
    require_dominant(lambda)?;
    let mut total = GroupRingElem::zero();
    for w in datum.weyl.elements() {
        total += &iwahori_image(datum, eps, &w.reduced_word, lambda)?.value;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    TheoremLhs,
    TheoremRhs,
    WeylChar,
    DemazureChar,
    CasselmanShalika,
    Macdonald,
    Shalika,
    BesselValue,
    IwahoriImage,
}

impl Formula {
    pub const ALL: [Formula; 9] = [
        Formula::TheoremLhs,
        Formula::TheoremRhs,
        Formula::WeylChar,
        Formula::DemazureChar,
        Formula::CasselmanShalika,
        Formula::Macdonald,
        Formula::Shalika,
        Formula::BesselValue,
        Formula::IwahoriImage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::TheoremLhs => "theorem-lhs",
            Formula::TheoremRhs => "theorem-rhs",
            Formula::WeylChar => "weyl-char",
            Formula::DemazureChar => "demazure-char",
            Formula::CasselmanShalika => "casselman-shalika",
            Formula::Macdonald => "macdonald",
            Formula::Shalika => "shalika",
            Formula::BesselValue => "bessel-value",
            Formula::IwahoriImage => "iwahori-image",
        }
    }

    /// The character a closed form is attached to, if any.
    pub fn fixed_character(self) -> Option<&'static str> {
        match self {
            Formula::CasselmanShalika => Some("sign"),
            Formula::Macdonald => Some("triv"),
            Formula::Shalika => Some("neg-short"),
            Formula::BesselValue => Some("neg-long"),
            _ => None,
        }
    }

    /// Whether the formula is defined for the given type and character.
    pub fn applies_to(self, datum: &RootDatum, character: &str) -> bool {
        let family_ok = match self {
            Formula::Shalika | Formula::BesselValue => datum.roots.cartan_type().family == Family::B,
            _ => true,
        };
        family_ok && self.fixed_character().is_none_or(|c| c == character)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Malformed(format!("unknown formula '{s}'")))
    }
}

#[derive(Clone, Debug)]
pub struct FormulaRequest<'a> {
    pub datum: &'a RootDatum,
    pub character: &'a HeckeCharacter,
    pub lambda: Coweight,
    pub formula: Formula,
    /// Reduced word of `w` for [`Formula::IwahoriImage`]; empty means `w = e`.
    pub word: Vec<usize>,
}

/// The value of a formula plus any side data it reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: GroupRingElem,
    pub notes: Vec<(String, String)>,
}

impl Evaluation {
    fn plain(value: GroupRingElem) -> Self {
        Evaluation { value, notes: Vec::new() }
    }
}

pub fn evaluate(req: &FormulaRequest<'_>) -> Result<Evaluation> {
    let datum = req.datum;
    check_rank(datum, &req.lambda)?;
    if let Some(required) = req.formula.fixed_character() {
        if req.character.name() != required {
            return Err(Error::UnknownCharacter {
                name: format!("{} (formula {} uses {required})", req.character.name(), req.formula),
                cartan: datum.roots.cartan_type().to_string(),
            });
        }
    }
    let lambda = &req.lambda;
    Ok(match req.formula {
        Formula::TheoremLhs => Evaluation::plain(theorem_lhs(datum, req.character, lambda)?),
        Formula::TheoremRhs => Evaluation::plain(theorem_rhs(datum, req.character, lambda)?),
        Formula::WeylChar => Evaluation::plain(weyl_character(datum, lambda)?),
        Formula::DemazureChar => Evaluation::plain(demazure_character(datum, lambda)?),
        Formula::CasselmanShalika => {
            let cs = casselman_shalika(datum, lambda)?;
            let agrees = cs.agrees();
            Evaluation {
                notes: vec![
                    ("theorem_value".into(), cs.theorem_value.to_string()),
                    ("agrees".into(), agrees.to_string()),
                ],
                value: cs.closed_form,
            }
        }
        Formula::Macdonald => Evaluation::plain(macdonald(datum, lambda)?),
        Formula::Shalika => {
            let forms = shalika(datum, lambda)?;
            Evaluation {
                notes: vec![
                    ("theorem_form".into(), forms.theorem_form.to_string()),
                    ("agree".into(), forms.agree().to_string()),
                ],
                value: forms.rewritten_form,
            }
        }
        Formula::BesselValue => {
            if !lambda.is_zero() {
                return Err(Error::Precondition("bessel-value requires lambda = 0".into()));
            }
            let b = bessel_comparison(datum)?;
            let show =
                |r: &Option<GroupRingElem>| r.as_ref().map_or_else(|| "not divisible".to_string(), |r| r.to_string());
            Evaluation {
                notes: vec![
                    ("theorem_value".into(), b.theorem_value.to_string()),
                    ("ratio".into(), show(&b.ratio)),
                    ("ratio_is_unit".into(), b.ratio_is_unit().to_string()),
                    ("inverted_ratio".into(), show(&b.inverted_ratio)),
                ],
                value: b.quoted_product,
            }
        }
        Formula::IwahoriImage => {
            let image = iwahori_image(datum, req.character, &req.word, lambda)?;
            Evaluation { notes: vec![("measure".into(), image.measure.to_string())], value: image.value }
        }
    })
}
