//! Linear characters of the finite Hecke algebra, the induced-module action
//! of its generators, Demazure-type operators and their verifiers.

pub mod action;
mod character;
pub mod operator;
pub mod verify;

pub use action::{
    demazure, demazure_longest, demazure_word, fraktur_t, fraktur_word, intertwiner_op, sum_fraktur, sum_t, t_act,
    t_word,
};
pub use character::{CharValue, HeckeCharacter};
pub use operator::{omega_apply, omega_cleared, omega_operator, WeylOperator};
pub use verify::{Mutation, Outcome, Witness};
