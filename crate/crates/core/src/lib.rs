//! Explicit lower bounds for the modular degree of a rational elliptic curve,
//! together with numeric certification of every constant they rest on.
//!
//! The bound is assembled from the degree formula
//! `deg phi = N/(2 pi Omega) * L(Sym^2 E, 1) * prod U_p(1)^{-1}`:
//! [`periods`] bounds `1/Omega`, [`zero_free`] and [`lvalue`] bound the
//! L-value, [`fudge`] handles the local factors and [`bounds`] combines them.

pub mod arith;
pub mod bounds;
pub mod cert;
pub mod curve;
pub mod error;
pub mod fudge;
pub mod json;
pub mod lvalue;
pub mod periods;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod suite;
pub mod zero_free;

pub use cert::{Bound, Waypoint};
pub use curve::{CurveModel, Invariants, RootData};
pub use error::{Error, Result};
pub use periods::{PeriodCase, PeriodData};
pub use report::{CurveRecord, DegreeBoundReport, ProcessOptions};
pub use zero_free::{CertReport, SymPowerConductors, ZeroFreeCase};
