//! Exact computations on smooth projective toric varieties: fans, primitive
//! collections and the Mori cone, the cohomology ring, the GKZ I-function,
//! and the Batyrev ring with its module structure over a truncated Novikov
//! ring.
//!
//! Everything downstream of the fan is generic over an exact [`Scalar`]
//! field. The aliases at the crate root fix it to arbitrary-precision
//! rationals, which is what the command line tool uses.

pub mod batyrev;
pub mod catalog;
pub mod cohomring;
pub mod fan;
pub mod gkz;
pub mod lattice;
mod lp;
pub mod moricone;
pub mod novikov;
pub mod poly;
pub mod scalar;

use thiserror::Error;

pub use fan::{Cone, Fan};
pub use moricone::{CurveClass, MoriData};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type CohomRing = cohomring::CohomRing<Rational>;
pub type CohClass = cohomring::CohClass<Rational>;
pub type Poly = poly::Poly<Rational>;
pub type NovikovScalar = novikov::NovikovScalar<Rational>;
pub type NovikovSeries = novikov::NovikovSeries<Rational>;
pub type HLaurent = novikov::HLaurent<Rational>;
pub type TwoPointTable = gkz::TwoPointTable<Rational>;
pub type DeformedIdeal = batyrev::DeformedIdeal<Rational>;
pub type BatyrevModule = batyrev::BatyrevModule<Rational>;
pub type IsoCertificate = batyrev::IsoCertificate<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Fan(#[from] fan::FanError),
    #[error("fan is invalid: {0}")]
    Invalid(#[from] fan::Violation),
    #[error(transparent)]
    Mori(#[from] moricone::MoriError),
    #[error(transparent)]
    Cohom(#[from] cohomring::CohomError),
    #[error(transparent)]
    Novikov(#[from] novikov::NovikovError),
    #[error(transparent)]
    Gkz(#[from] gkz::GkzError),
    #[error(transparent)]
    Batyrev(#[from] batyrev::BatyrevError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
