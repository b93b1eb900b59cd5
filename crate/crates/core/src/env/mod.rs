//! Enveloping-algebra arithmetic: PBW normal forms, the isomorphism witness
//! between the two family enveloping algebras, and finite reduced quotients.

mod iso;
mod pbw;
mod reduced;

use thiserror::Error;

use crate::liealg::LieError;

pub use iso::{iso_build, iso_build_with_cap, iso_verify, IsoReport, IsoVerdict, IsoWitness};
pub use pbw::{Monomial, PbwElement};
pub use reduced::{
    mu_from_chi, parse_generators, reduced_algebra, reduced_algebra_with, reduced_dim,
    write_generators, ReducedAlgebra,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvError {
    #[error("degree {degree} exceeds cap {cap}; raise the cap")]
    CapOverflow { degree: usize, cap: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("character has {got} values, algebra has dimension {expected}")]
    BadCharacter { expected: usize, got: usize },
    #[error("p-polynomial of {0} does not annihilate its adjoint")]
    NotCentral(String),
    #[error("parse error: {0}")]
    Parse(String),
}
