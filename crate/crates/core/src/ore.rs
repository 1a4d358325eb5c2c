//! Skew polynomial rings over F_p(x) in two derivation gauges.
//!
//! The generator G satisfies G*f = f*G + delta(f), where delta is d/dx in the
//! `Partial` gauge and x*d/dx in the `Theta` gauge. Coefficients always sit
//! on the left of powers of G and are stored lowest order first with no
//! trailing zeros.

use crate::error::{Error, Result};
use crate::exactalg::{Fp, Poly, Prime, RationalFunction};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gauge {
    /// G = d/dx.
    Partial,
    /// G = x * d/dx.
    Theta,
}

impl Gauge {
    /// The derivation the gauge attaches to coefficients.
    pub fn delta(self, f: &RationalFunction) -> RationalFunction {
        match self {
            Gauge::Partial => f.derivative(),
            Gauge::Theta => f.theta_derivative(),
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::Partial => write!(f, "partial"),
            Gauge::Theta => write!(f, "theta"),
        }
    }
}

/// A point of the projective line over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointP1 {
    Finite(Fp),
    Infinity,
}

impl fmt::Display for PointP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointP1::Finite(c) => write!(f, "{c}"),
            PointP1::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewOperator {
    gauge: Gauge,
    prime: Prime,
    coeffs: Vec<RationalFunction>,
}

impl SkewOperator {
    pub fn new(gauge: Gauge, prime: Prime, mut coeffs: Vec<RationalFunction>) -> SkewOperator {
        for c in &coeffs {
            assert_eq!(c.prime(), prime, "mixed primes in operator coefficients");
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        SkewOperator { gauge, prime, coeffs }
    }

    pub fn zero(gauge: Gauge, prime: Prime) -> SkewOperator {
        SkewOperator { gauge, prime, coeffs: Vec::new() }
    }

    pub fn one(gauge: Gauge, prime: Prime) -> SkewOperator {
        SkewOperator { gauge, prime, coeffs: vec![RationalFunction::one(prime)] }
    }

    /// The gauge generator G itself.
    pub fn generator(gauge: Gauge, prime: Prime) -> SkewOperator {
        SkewOperator {
            gauge,
            prime,
            coeffs: vec![RationalFunction::zero(prime), RationalFunction::one(prime)],
        }
    }

    /// Multiplication operator by f (order zero).
    pub fn multiplication(gauge: Gauge, f: RationalFunction) -> SkewOperator {
        SkewOperator::new(gauge, f.prime(), vec![f])
    }

    /// c * G^k.
    pub fn monomial(gauge: Gauge, c: RationalFunction, k: usize) -> SkewOperator {
        let prime = c.prime();
        let mut coeffs = vec![RationalFunction::zero(prime); k];
        coeffs.push(c);
        SkewOperator::new(gauge, prime, coeffs)
    }

    #[inline]
    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Coefficient of G^k, zero past the end.
    pub fn coeff(&self, k: usize) -> RationalFunction {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RationalFunction::zero(self.prime))
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() { None } else { Some(self.coeffs.len() - 1) }
    }

    pub fn leading(&self) -> Option<&RationalFunction> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |lc| lc == &RationalFunction::one(self.prime))
    }

    /// Scales from the left by the leading coefficient's inverse.
    pub fn monicize(&self) -> Result<SkewOperator> {
        let lc = self.leading().ok_or(Error::ZeroDivisor)?;
        Ok(self.scale_left(&lc.inv()?))
    }

    fn check_compatible(&self, rhs: &SkewOperator) {
        assert_eq!(self.prime, rhs.prime, "mixed primes in operator arithmetic");
        assert_eq!(self.gauge, rhs.gauge, "mixed gauges in operator arithmetic");
    }

    pub fn add(&self, rhs: &SkewOperator) -> SkewOperator {
        self.check_compatible(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        SkewOperator::new(self.gauge, self.prime, coeffs)
    }

    pub fn sub(&self, rhs: &SkewOperator) -> SkewOperator {
        self.check_compatible(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        SkewOperator::new(self.gauge, self.prime, coeffs)
    }

    pub fn neg(&self) -> SkewOperator {
        SkewOperator::new(self.gauge, self.prime, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    /// f * self, with f acting as a multiplication operator.
    pub fn scale_left(&self, f: &RationalFunction) -> SkewOperator {
        SkewOperator::new(self.gauge, self.prime, self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    /// G * self, one step of left multiplication by the generator:
    /// G * (f G^m) = f G^{m+1} + delta(f) G^m.
    pub fn left_mul_generator(&self) -> SkewOperator {
        let zero = RationalFunction::zero(self.prime);
        let mut coeffs = vec![zero; self.coeffs.len() + 1];
        for (m, f) in self.coeffs.iter().enumerate() {
            coeffs[m + 1] = coeffs[m + 1].add(f);
            coeffs[m] = coeffs[m].add(&self.gauge.delta(f));
        }
        SkewOperator::new(self.gauge, self.prime, coeffs)
    }

    /// Ring product, computed as sum_i a_i * (G^i * rhs).
    pub fn mul(&self, rhs: &SkewOperator) -> SkewOperator {
        self.check_compatible(rhs);
        let mut acc = SkewOperator::zero(self.gauge, self.prime);
        if self.is_zero() || rhs.is_zero() {
            return acc;
        }
        let mut gpow_rhs = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                gpow_rhs = gpow_rhs.left_mul_generator();
            }
            if !a.is_zero() {
                acc = acc.add(&gpow_rhs.scale_left(a));
            }
        }
        acc
    }

    pub fn pow(&self, e: u64) -> SkewOperator {
        let mut acc = SkewOperator::one(self.gauge, self.prime);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Right division: self = q * d + r with ord r < ord d. Works because
    /// the leading coefficient of (c G^s) * d is c * lc(d): the gauge has a
    /// trivial twist, so monomial left factors do not disturb the top term.
    pub fn divmod_right(&self, d: &SkewOperator) -> Result<(SkewOperator, SkewOperator)> {
        self.check_compatible(d);
        let dd = d.order().ok_or(Error::ZeroDivisor)?;
        let lc_inv = d.leading().unwrap().inv()?;
        let mut r = self.clone();
        let mut q = SkewOperator::zero(self.gauge, self.prime);
        while let Some(dr) = r.order() {
            if dr < dd {
                break;
            }
            let c = r.leading().unwrap().mul(&lc_inv);
            let mono = SkewOperator::monomial(self.gauge, c, dr - dd);
            r = r.sub(&mono.mul(d));
            q = q.add(&mono);
        }
        Ok((q, r))
    }

    pub fn rem_right(&self, d: &SkewOperator) -> Result<SkewOperator> {
        Ok(self.divmod_right(d)?.1)
    }

    pub fn is_right_divisible_by(&self, d: &SkewOperator) -> Result<bool> {
        Ok(self.rem_right(d)?.is_zero())
    }

    /// The formal adjoint sum (-1)^i G^i a_i, an anti-automorphism fixing
    /// coefficients and sending G to -G in either gauge.
    pub fn adjoint(&self) -> SkewOperator {
        let mut acc = SkewOperator::zero(self.gauge, self.prime);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut term = SkewOperator::multiplication(self.gauge, a.clone());
            for _ in 0..i {
                term = term.left_mul_generator();
            }
            if i % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Applies the operator to a rational function: sum a_i delta^i(f).
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero(self.prime);
        let mut df = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = self.gauge.delta(&df);
            }
            if !a.is_zero() {
                acc = acc.add(&a.mul(&df));
            }
        }
        acc
    }

    /// Conjugation g^{-1} * self * g by a nonzero rational function.
    pub fn twist(&self, g: &RationalFunction) -> Result<SkewOperator> {
        if g.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let gm = SkewOperator::multiplication(self.gauge, g.clone());
        let gm_inv = SkewOperator::multiplication(self.gauge, g.inv()?);
        Ok(gm_inv.mul(self).mul(&gm))
    }

    /// Rewrites a Theta-gauge operator exactly in the Partial gauge by
    /// expanding powers of G as (x * d/dx)^j. Partial input is returned as is.
    pub fn to_partial(&self) -> SkewOperator {
        if self.gauge == Gauge::Partial {
            return self.clone();
        }
        let x_dx = SkewOperator::monomial(Gauge::Partial, RationalFunction::x(self.prime), 1);
        let mut acc = SkewOperator::zero(Gauge::Partial, self.prime);
        let mut pow = SkewOperator::one(Gauge::Partial, self.prime);
        for (j, b) in self.coeffs.iter().enumerate() {
            if j > 0 {
                pow = x_dx.mul(&pow);
            }
            if !b.is_zero() {
                acc = acc.add(&pow.scale_left(b));
            }
        }
        acc
    }

    /// Rewrites the operator in the Theta gauge local to `center`.
    ///
    /// For a Partial-gauge input of order n at a finite center t the result
    /// represents x^n * (self recentered by t), using x^i G^i = phi_i(theta)
    /// with phi_i the falling factorial. At infinity the substitution is
    /// x -> 1/y, d/dx -> -y^2 d/dy, and the result is an operator in the
    /// local coordinate y. Theta input recenters through the Partial gauge
    /// when the center is a nonzero finite point.
    pub fn to_theta_at(&self, center: PointP1) -> SkewOperator {
        match (self.gauge, center) {
            (Gauge::Theta, PointP1::Finite(t)) if t.is_zero() => self.clone(),
            (Gauge::Theta, PointP1::Finite(_)) => self.to_partial().to_theta_at(center),
            (Gauge::Theta, PointP1::Infinity) => {
                // theta_x = -theta_y under x -> 1/y
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, b)| {
                        let s = b.subst_inverse();
                        if j % 2 == 1 { s.neg() } else { s }
                    })
                    .collect();
                SkewOperator::new(Gauge::Theta, self.prime, coeffs)
            }
            (Gauge::Partial, PointP1::Finite(t)) => {
                let n = match self.order() {
                    None => return SkewOperator::zero(Gauge::Theta, self.prime),
                    Some(n) => n,
                };
                let shifted: Vec<RationalFunction> =
                    self.coeffs.iter().map(|a| a.shift(t)).collect();
                // x^n * sum a_i G^i = sum (a_i x^{n-i}) phi_i(theta)
                let mut out = vec![RationalFunction::zero(self.prime); n + 1];
                let mut phi = Poly::one(self.prime);
                for (i, a) in shifted.iter().enumerate() {
                    if i > 0 {
                        let step = Poly::from_i64(self.prime, &[-((i as i64) - 1), 1]);
                        phi = phi.mul(&step);
                    }
                    if a.is_zero() {
                        continue;
                    }
                    let factor = a.mul(&RationalFunction::x_pow(self.prime, (n - i) as i64));
                    for (j, &c) in phi.coeffs().iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let term = factor.scale(Fp::new(c, self.prime));
                        out[j] = out[j].add(&term);
                    }
                }
                SkewOperator::new(Gauge::Theta, self.prime, out)
            }
            (Gauge::Partial, PointP1::Infinity) => {
                let n = match self.order() {
                    None => return SkewOperator::zero(Gauge::Theta, self.prime),
                    Some(n) => n,
                };
                // (-y^2 d/dy)^i = (-1)^i y^i (theta)(theta+1)...(theta+i-1)
                let mut out = vec![RationalFunction::zero(self.prime); n + 1];
                let mut psi = Poly::one(self.prime);
                for (i, a) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        let step = Poly::from_i64(self.prime, &[(i as i64) - 1, 1]);
                        psi = psi.mul(&step);
                    }
                    if a.is_zero() {
                        continue;
                    }
                    let mut factor =
                        a.subst_inverse().mul(&RationalFunction::x_pow(self.prime, i as i64));
                    if i % 2 == 1 {
                        factor = factor.neg();
                    }
                    for (j, &c) in psi.coeffs().iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        out[j] = out[j].add(&factor.scale(Fp::new(c, self.prime)));
                    }
                }
                SkewOperator::new(Gauge::Theta, self.prime, out)
            }
        }
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = match self.gauge {
            Gauge::Partial => "D",
            Gauge::Theta => "T",
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{sym}")?,
                _ => write!(f, "({c})*{sym}^{i}")?,
            }
        }
        Ok(())
    }
}
