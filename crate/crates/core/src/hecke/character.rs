use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::CoeffQ;
use crate::error::{Error, Result};
use crate::root_system::{Coweight, LengthClass, RootSystem};

/// The two eigenvalues a generator `T_s` can take in a linear character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    MinusOne,
    Q,
}

impl CharValue {
    pub fn as_coeff(self) -> CoeffQ {
        match self {
            CharValue::MinusOne => CoeffQ::constant(-1),
            CharValue::Q => CoeffQ::q(),
        }
    }
}

/// A linear character of the finite Hecke algebra, with the derived
/// partition of the positive roots and `rho^vee_eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeCharacter {
    name: String,
    simple_values: Vec<CharValue>,
    /// Value actually used for `eps(T_{s_i})`. Equals `simple_values[i]` for
    /// every genuine character; negative controls may override it.
    action_values: Vec<CoeffQ>,
    minus_one_classes: BTreeSet<LengthClass>,
    rho_eps: Coweight,
}

impl HeckeCharacter {
    /// Build a character from its values on the simple reflections.
    ///
    /// The values must agree across every odd braid bond (`m_ij = 3`), which
    /// for an irreducible system is the same as being constant on root
    /// length classes.
    pub fn new(rs: &RootSystem, name: &str, simple_values: Vec<CharValue>) -> Result<Self> {
        let n = rs.rank();
        if simple_values.len() != n {
            return Err(Error::IllDefinedCharacter(format!("{} values for rank {n}", simple_values.len())));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && rs.braid_order(i, j) == 3 && simple_values[i] != simple_values[j] {
                    return Err(Error::IllDefinedCharacter(format!(
                        "values differ across the odd bond s_{} - s_{}",
                        i + 1,
                        j + 1
                    )));
                }
                if rs.simple_length(i) == rs.simple_length(j) && simple_values[i] != simple_values[j] {
                    return Err(Error::IllDefinedCharacter(format!(
                        "values differ on same-length simple roots {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let minus_one_classes = (0..n)
            .filter(|&i| simple_values[i] == CharValue::MinusOne)
            .map(|i| rs.simple_length(i))
            .collect::<BTreeSet<_>>();
        let rho_eps = rs.half_sum_coroots(|r| minus_one_classes.contains(&r.length))?;
        Ok(HeckeCharacter {
            name: name.to_string(),
            action_values: simple_values.iter().map(|v| v.as_coeff()).collect(),
            simple_values,
            minus_one_classes,
            rho_eps,
        })
    }

    /// Assign values to simple reflections without any consistency check.
    /// Only useful as a negative control: the result is generally not a
    /// character and `rho_eps` is set to zero.
    pub fn unchecked(rs: &RootSystem, name: &str, simple_values: Vec<CharValue>) -> Self {
        let minus_one_classes =
            (0..rs.rank()).filter(|&i| simple_values[i] == CharValue::MinusOne).map(|i| rs.simple_length(i)).collect();
        HeckeCharacter {
            name: name.to_string(),
            action_values: simple_values.iter().map(|v| v.as_coeff()).collect(),
            simple_values,
            minus_one_classes,
            rho_eps: Coweight::zero(rs.rank()),
        }
    }

    /// Same partition and `rho_eps`, but `T_{s_i}` acts on the character
    /// line by `value` instead. Negative control only.
    pub fn with_action_value(&self, i: usize, value: CoeffQ) -> Self {
        let mut out = self.clone();
        out.action_values[i] = value;
        out.name = format!("{}[mutated]", self.name);
        out
    }

    /// Replace `rho_eps`. Negative control only.
    pub fn with_rho_eps(&self, rho_eps: Coweight) -> Self {
        let mut out = self.clone();
        out.rho_eps = rho_eps;
        out
    }

    pub fn trivial(rs: &RootSystem) -> Self {
        Self::new(rs, "triv", vec![CharValue::Q; rs.rank()]).expect("trivial character")
    }

    pub fn sign(rs: &RootSystem) -> Self {
        Self::new(rs, "sign", vec![CharValue::MinusOne; rs.rank()]).expect("sign character")
    }

    /// `-1` on simple roots of the given length, `q` on the others.
    fn minus_one_on(rs: &RootSystem, name: &str, length: LengthClass) -> Self {
        let values =
            rs.simple_lengths().iter().map(|&l| if l == length { CharValue::MinusOne } else { CharValue::Q }).collect();
        Self::new(rs, name, values).expect("length-class characters are well defined")
    }

    /// All linear characters: `triv`, `sign`, and for two root lengths also
    /// `neg-long` (the Bessel character) and `neg-short`.
    pub fn all(rs: &RootSystem) -> Vec<HeckeCharacter> {
        let mut out = vec![Self::trivial(rs), Self::sign(rs)];
        if rs.has_two_lengths() {
            out.push(Self::minus_one_on(rs, "neg-long", LengthClass::Long));
            out.push(Self::minus_one_on(rs, "neg-short", LengthClass::Short));
        }
        out
    }

    pub fn by_name(rs: &RootSystem, name: &str) -> Result<Self> {
        Self::all(rs)
            .into_iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCharacter { name: name.to_string(), cartan: rs.cartan_type().to_string() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn simple_value(&self, i: usize) -> CharValue {
        self.simple_values[i]
    }

    /// `eps(T_{s_i})` as a coefficient.
    pub fn value(&self, i: usize) -> &CoeffQ {
        &self.action_values[i]
    }

    /// Whether `alpha_i` lies in `Phi^+_{-1}(eps)`.
    pub fn is_minus_one(&self, i: usize) -> bool {
        self.simple_values[i] == CharValue::MinusOne
    }

    pub fn acts_by_minus_one_on(&self, length: LengthClass) -> bool {
        self.minus_one_classes.contains(&length)
    }

    pub fn rho_eps(&self) -> &Coweight {
        &self.rho_eps
    }
}

impl fmt::Display for HeckeCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
