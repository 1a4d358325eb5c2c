//! Shared fixtures for the criterion benches.

use operlab_core::{Fp, Gauge, Poly, Prime, RationalFunction, SkewOperator};

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// A monic theta-gauge operator that is dormant by construction: the product
/// of theta - c over the first `order` residues, a right factor of the
/// central element.
pub fn dormant_product(p: u64, order: usize) -> SkewOperator {
    let prime = prime(p);
    assert!(order < p as usize);
    let mut d = SkewOperator::one(Gauge::Theta, prime);
    for c in 0..order as u64 {
        let factor = SkewOperator::new(
            Gauge::Theta,
            prime,
            vec![
                RationalFunction::constant(-Fp::new(c, prime)),
                RationalFunction::constant(Fp::new(1, prime)),
            ],
        );
        d = d.mul(&factor);
    }
    d
}

/// A dense monic operator with rational coefficients, singular at 0 and 1.
pub fn dense_operator(p: u64, order: usize) -> SkewOperator {
    let prime = prime(p);
    let den = Poly::from_i64(prime, &[0, -1, 1]);
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..order {
        let num: Vec<i64> = (0..=order as i64).map(|j| 1 + j + k as i64).collect();
        coeffs.push(RationalFunction::new(Poly::from_i64(prime, &num), den.clone()).unwrap());
    }
    coeffs.push(RationalFunction::constant(Fp::new(1, prime)));
    SkewOperator::new(Gauge::Partial, prime, coeffs)
}
