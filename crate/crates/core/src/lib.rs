//! Exact computations in modules over the Iwahori-Hecke algebra induced from
//! linear characters of the finite Hecke algebra.
//!
//! The crate is layered bottom-up:
//!
//! - [`root_system`]: Cartan data, positive roots and coroots, Weyl group
//!   enumeration with ShortLex reduced words, `rho` and `rho_eps`.
//! - [`algebra`]: sparse exact arithmetic in `Z[q, q^-1][P^vee]` and its
//!   fraction field, with exact division.
//! - [`hecke`]: linear characters, the induced action of `T_i`, Demazure and
//!   deformed Demazure operators, intertwiners, the operator algebra
//!   `sum f_w w`, and identity verifiers.
//! - [`spherical`]: both sides of the alternator formula and the closed forms
//!   it specializes to (Casselman-Shalika, Macdonald, Bessel, Shalika).
//! - [`cli`]: the `hecke` command line front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod root_system;
pub mod spherical;

pub use algebra::{CoeffQ, GroupRingElem, RationalElem};
pub use error::{Error, Result};
pub use hecke::{HeckeCharacter, WeylOperator};
pub use root_system::{CartanType, Coweight, RootDatum, RootSystem, WeylElement, WeylGroup};
