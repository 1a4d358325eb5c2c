//! Exact skew-operator calculus over F_p(x).
//!
//! The crate is organized bottom-up: `exactalg` provides the scalar tower
//! (F_p, F_p[x], F_p(x)), `ore` the noncommutative operator rings in the two
//! derivation gauges, and the remaining modules build the oracles on top:
//! dormancy detection, local exponents, kernel duality, radii combinatorics,
//! moduli search, and fusion rings.

pub mod dormancy;
pub mod duality;
pub mod error;
pub mod exactalg;
pub mod fusion;
pub mod json;
pub mod linalg;
pub mod modsearch;
pub mod ore;
pub mod radii;

pub use duality::{DualPair, SelfDualityKind};
pub use fusion::{Character, FactorizationReport, FusionRing};
pub use modsearch::{BcReport, DegreeTable, DormantOper, SearchSpec, TableKind};
pub use error::{Error, Result};
pub use exactalg::{Fp, Poly, Prime, RationalFunction};
pub use ore::{Gauge, PointP1, SkewOperator};
pub use radii::{ExponentSet, RadiusClass};
