//! Kernel duality on dormant operators.
//!
//! A dormant operator right-divides the central element, and the quotient is
//! again dormant: that quotient is the dual. The pairing is an involution,
//! swaps the two self-duality kinds, and complements exponent sets.

use crate::dormancy::central_element;
use crate::error::{Error, Result};
use crate::exactalg::Prime;
use crate::ore::{Gauge, SkewOperator};
use std::fmt;

/// Behavior of a monic operator under the adjoint anti-automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfDualityKind {
    None,
    Orthogonal,
    Symplectic,
}

impl fmt::Display for SelfDualityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelfDualityKind::None => write!(f, "none"),
            SelfDualityKind::Orthogonal => write!(f, "orthogonal"),
            SelfDualityKind::Symplectic => write!(f, "symplectic"),
        }
    }
}

/// A dormant operator together with its dual. Both products with the dual
/// recover the central element; construction verifies the two-sided identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    pub operator: SkewOperator,
    pub dual: SkewOperator,
}

impl DualPair {
    pub fn central(&self) -> SkewOperator {
        central_element(self.operator.gauge(), self.operator.prime())
    }
}

/// The dual of a dormant operator: the right quotient of the central element.
pub fn dualize(d: &SkewOperator) -> Result<DualPair> {
    let p = d.prime().get() as usize;
    let n = d.order().ok_or(Error::ZeroDivisor)?;
    if !d.is_monic() {
        return Err(Error::NotMonic);
    }
    if n > p {
        return Err(Error::OrderOutOfRange { order: n, min: 0, max: p });
    }
    let z = central_element(d.gauge(), d.prime());
    let (q, r) = z.divmod_right(d)?;
    if !r.is_zero() {
        return Err(Error::NotDormant);
    }
    // the one-sided quotient relation is the construction; the reversed
    // product holding too is the structural fact the pair certifies
    if q.mul(d) != z || d.mul(&q) != z {
        return Err(Error::OracleDisagreement(
            "dual quotient fails the two-sided central identity".into(),
        ));
    }
    Ok(DualPair { operator: d.clone(), dual: q })
}

/// Compares the adjoint against (-1)^n times the operator; the sign forces
/// the kind to match the order parity.
pub fn self_duality_kind(d: &SkewOperator) -> SelfDualityKind {
    let Some(n) = d.order() else {
        return SelfDualityKind::None;
    };
    let adj = d.adjoint();
    let signed = if n % 2 == 0 { d.clone() } else { d.neg() };
    if adj != signed {
        return SelfDualityKind::None;
    }
    if n % 2 == 0 {
        SelfDualityKind::Symplectic
    } else {
        SelfDualityKind::Orthogonal
    }
}

/// Duality restricted to self-dual operators, certifying the kind swap: the
/// dual of an orthogonal operator is symplectic and conversely.
pub fn bc_dualize(d: &SkewOperator) -> Result<DualPair> {
    let kind = self_duality_kind(d);
    if kind == SelfDualityKind::None {
        return Err(Error::NotSelfDual);
    }
    let pair = dualize(d)?;
    let expect = match kind {
        SelfDualityKind::Orthogonal => SelfDualityKind::Symplectic,
        SelfDualityKind::Symplectic => SelfDualityKind::Orthogonal,
        SelfDualityKind::None => unreachable!(),
    };
    if self_duality_kind(&pair.dual) != expect {
        return Err(Error::OracleDisagreement(format!(
            "dual of a {kind} operator is not {expect}"
        )));
    }
    Ok(pair)
}

/// The dual of the gauge generator: the unique maximal-order symplectic
/// dormant operator, G^{p-1} in the Partial gauge and G^{p-1} - 1 in Theta.
pub fn canonical_sp_full(gauge: Gauge, prime: Prime) -> SkewOperator {
    let g = SkewOperator::generator(gauge, prime);
    dualize(&g).expect("the generator divides the central element").dual
}
