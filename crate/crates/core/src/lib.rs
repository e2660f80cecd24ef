//! Exact umbral Clifford analysis.
//!
//! Everything is computed over arbitrary-precision rationals:
//!
//! * [`clifford`]: the algebra `Cl(0,n)`;
//! * [`poly`] / [`text`]: Clifford-valued polynomials and their text form;
//! * [`series`]: formal power series as indicators of shift-invariant operators;
//! * [`umbral`]: delta operators, raising operators, basic polynomial
//!   sequences and the Sheffer map;
//! * [`dirac`]: umbral Dirac operator, vector variable, Almansi and Fischer
//!   decompositions;
//! * [`oscillator`]: harmonic-oscillator ladder algebra and its Almansi-type
//!   decomposition in the Gaussian gauge;
//! * [`verify`]: seeded identity suites used by tests and the CLI.

pub mod clifford;
pub mod dirac;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod oscillator;
pub mod poly;
pub mod random;
pub mod rational;
pub mod series;
pub mod text;
pub mod umbral;
pub mod verify;

pub use clifford::{blade_mul, Blade, Multivector};
pub use dirac::AlmansiResult;
pub use error::{Error, Result};
pub use oscillator::GaugeContext;

pub use poly::{CliffPoly, MultiIndex};
pub use rational::Rational;
pub use series::{catalog_series, DeltaSeries, PowerSeries, SeriesKind};
pub use text::{parse_poly, print_poly};
pub use umbral::{DeltaKind, UmbralContext, Variant};
