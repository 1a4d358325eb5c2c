//! The field F_p(x), represented as reduced fractions of polynomials.
//!
//! Invariant: gcd(num, den) = 1 and den is monic, so equality is structural.

use crate::error::{Error, Result};
use crate::exactalg::fp::{Fp, Prime};
use crate::exactalg::poly::Poly;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        assert_eq!(num.prime(), den.prime(), "mixed primes in rational arithmetic");
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one(den.prime()) };
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g).expect("nonzero gcd").0;
        let den = den.divmod(&g).expect("nonzero gcd").0;
        let lc_inv = den.leading().unwrap().inv().expect("nonzero denominator");
        RationalFunction { num: num.scale(lc_inv), den: den.scale(lc_inv) }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let one = Poly::one(p.prime());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(prime: Prime) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(prime))
    }

    pub fn one(prime: Prime) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(prime))
    }

    pub fn constant(c: Fp) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn x(prime: Prime) -> RationalFunction {
        RationalFunction::from_poly(Poly::x(prime))
    }

    /// x^k for any integer k, negative powers included.
    pub fn x_pow(prime: Prime, k: i64) -> RationalFunction {
        if k >= 0 {
            RationalFunction::from_poly(Poly::monomial(Fp::one(prime), k as usize))
        } else {
            RationalFunction {
                num: Poly::one(prime),
                den: Poly::monomial(Fp::one(prime), (-k) as usize),
            }
        }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.num.prime()
    }

    #[inline]
    pub fn num(&self) -> &Poly {
        &self.num
    }

    #[inline]
    pub fn den(&self) -> &Poly {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.is_poly() { Some(&self.num) } else { None }
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn scale(&self, c: Fp) -> RationalFunction {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one(self.prime());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// d/dx by the quotient rule.
    pub fn derivative(&self) -> RationalFunction {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::reduced(n, self.den.mul(&self.den))
    }

    /// x * d/dx, the derivation attached to the logarithmic gauge.
    pub fn theta_derivative(&self) -> RationalFunction {
        self.derivative().mul(&RationalFunction::x(self.prime()))
    }

    /// Recenters: x -> x + t.
    pub fn shift(&self, t: Fp) -> RationalFunction {
        Self::reduced(self.num.shift(t), self.den.shift(t))
    }

    /// Substitutes x -> 1/x.
    pub fn subst_inverse(&self) -> RationalFunction {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd >= dn {
            num = num.mul_xk(dd - dn);
        } else {
            den = den.mul_xk(dn - dd);
        }
        Self::reduced(num, den)
    }

    /// Order of vanishing at x = c; None for the zero function.
    pub fn val_at(&self, c: Fp) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(root_multiplicity(&self.num, c) as i64 - root_multiplicity(&self.den, c) as i64)
    }

    /// Order of vanishing at infinity: deg(den) - deg(num); None for zero.
    pub fn val_at_infinity(&self) -> Option<i64> {
        Some(self.den.degree()? as i64 - self.num.degree()? as i64)
    }

    pub fn regular_at(&self, c: Fp) -> bool {
        self.val_at(c).map_or(true, |v| v >= 0)
    }

    /// Evaluates at a point where the function is regular.
    pub fn eval(&self, c: Fp) -> Result<Fp> {
        let dv = self.den.eval(c);
        if dv.is_zero() {
            if self.num.eval(c).is_zero() {
                // reduced form means this cannot happen
                unreachable!("common root survived reduction");
            }
            return Err(Error::ZeroInverse);
        }
        Ok(self.num.eval(c) * dv.inv()?)
    }
}

fn root_multiplicity(f: &Poly, c: Fp) -> usize {
    let lin = Poly::from_i64(f.prime(), &[-(c.value() as i64), 1]);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, r) = g.divmod(&lin).expect("nonzero divisor");
        if !r.is_zero() {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// Rewrites each entry over the least common denominator D (monic), returning
/// the scaled numerators and D itself: rs[i] = out[i] / D.
pub fn clear_denominators(rs: &[RationalFunction]) -> (Vec<Poly>, Poly) {
    let Some(first) = rs.first() else {
        panic!("clear_denominators on empty slice");
    };
    let prime = first.prime();
    let mut lcm = Poly::one(prime);
    for r in rs {
        let g = lcm.gcd(r.den());
        lcm = lcm.divmod(&g).expect("nonzero gcd").0.mul(r.den());
    }
    let lcm = lcm.make_monic();
    let nums = rs
        .iter()
        .map(|r| {
            let cofactor = lcm.divmod(r.den()).expect("denominator divides lcm").0;
            r.num().mul(&cofactor)
        })
        .collect();
    (nums, lcm)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn rf(p: Prime, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64(p, num), Poly::from_i64(p, den)).unwrap()
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let p = pr(5);
        let f = rf(p, &[-1, 0, 1], &[-1, 1]); // (x^2-1)/(x-1)
        assert_eq!(f, RationalFunction::from_poly(Poly::from_i64(p, &[1, 1])));
        // denominator forced monic
        let g = rf(p, &[1], &[0, 2]);
        assert_eq!(g.den(), &Poly::x(p));
        assert_eq!(g.num(), &Poly::from_i64(p, &[3]));
    }

    #[test]
    fn quotient_rule() {
        let p = pr(5);
        let f = RationalFunction::x_pow(p, -1);
        let expect = rf(p, &[-1], &[0, 0, 1]);
        assert_eq!(f.derivative(), expect);
    }

    #[test]
    fn theta_derivative_scales_monomials() {
        let p = pr(7);
        for k in -3i64..=3 {
            let f = RationalFunction::x_pow(p, k);
            let expect = f.scale(Fp::from_i64(k, p));
            assert_eq!(f.theta_derivative(), expect);
        }
    }

    #[test]
    fn valuations() {
        let p = pr(5);
        let f = rf(p, &[0, 0, 1], &[-1, 1]); // x^2/(x-1)
        assert_eq!(f.val_at(Fp::zero(p)), Some(2));
        assert_eq!(f.val_at(Fp::one(p)), Some(-1));
        assert_eq!(f.val_at(Fp::new(2, p)), Some(0));
        assert_eq!(f.val_at_infinity(), Some(-1));
        assert!(RationalFunction::zero(p).val_at(Fp::zero(p)).is_none());
    }

    #[test]
    fn inverse_substitution() {
        let p = pr(5);
        let f = rf(p, &[1, 0, 1], &[1]); // x^2 + 1
        let expect = rf(p, &[1, 0, 1], &[0, 0, 1]);
        assert_eq!(f.subst_inverse(), expect);
        // involution
        assert_eq!(f.subst_inverse().subst_inverse(), f);
    }

    #[test]
    fn denominator_clearing() {
        let p = pr(5);
        let a = RationalFunction::x_pow(p, -1);
        let b = rf(p, &[1], &[-1, 1]);
        let (nums, d) = clear_denominators(&[a.clone(), b.clone()]);
        assert_eq!(d, Poly::from_i64(p, &[0, -1, 1]));
        for (n, orig) in nums.iter().zip([a, b]) {
            let back = RationalFunction::new(n.clone(), d.clone()).unwrap();
            assert_eq!(back, orig);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rf() -> impl Strategy<Value = RationalFunction> {
            (
                prop_oneof![Just(3u64), Just(5), Just(7)],
                prop::collection::vec(0u64..7, 0..=4),
                prop::collection::vec(0u64..7, 1..=4),
            )
                .prop_filter_map("zero denominator", |(p, n, d)| {
                    let p = pr(p);
                    let den = Poly::new(p, d);
                    if den.is_zero() {
                        None
                    } else {
                        Some(RationalFunction::new(Poly::new(p, n), den).unwrap())
                    }
                })
        }

        fn arb_triple() -> impl Strategy<Value = (RationalFunction, RationalFunction, RationalFunction)>
        {
            (
                prop_oneof![Just(3u64), Just(5), Just(7)],
                prop::collection::vec(0u64..7, 0..=3),
                prop::collection::vec(0u64..7, 1..=3),
                prop::collection::vec(0u64..7, 0..=3),
                prop::collection::vec(0u64..7, 1..=3),
                prop::collection::vec(0u64..7, 0..=3),
                prop::collection::vec(0u64..7, 1..=3),
            )
                .prop_filter_map("zero denominator", |(p, n1, d1, n2, d2, n3, d3)| {
                    let p = pr(p);
                    let mk = |n: Vec<u64>, d: Vec<u64>| {
                        let den = Poly::new(p, d);
                        if den.is_zero() {
                            None
                        } else {
                            Some(RationalFunction::new(Poly::new(p, n), den).unwrap())
                        }
                    };
                    Some((mk(n1, d1)?, mk(n2, d2)?, mk(n3, d3)?))
                })
        }

        /// Substitutes x -> x^p.
        fn inflate(q: &Poly) -> Poly {
            let p = q.prime().get() as usize;
            let mut coeffs = vec![0u64; q.coeffs().len() * p];
            for (k, &c) in q.coeffs().iter().enumerate() {
                coeffs[k * p] = c;
            }
            Poly::new(q.prime(), coeffs)
        }

        fn p_supported(q: &Poly) -> bool {
            let p = q.prime().get() as usize;
            q.coeffs().iter().enumerate().all(|(k, &c)| c == 0 || k % p == 0)
        }

        proptest! {
            #[test]
            fn field_laws((a, b, c) in arb_triple()) {
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.sub(&a), RationalFunction::zero(a.prime()));
            }

            #[test]
            fn inverse_round_trip(a in arb_rf()) {
                prop_assume!(!a.is_zero());
                prop_assert_eq!(a.mul(&a.inv().unwrap()), RationalFunction::one(a.prime()));
            }

            #[test]
            fn derivation_leibniz((a, b, _) in arb_triple()) {
                let lhs = a.mul(&b).derivative();
                let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
                prop_assert_eq!(lhs, rhs);
                let lhs_t = a.mul(&b).theta_derivative();
                let rhs_t = a.theta_derivative().mul(&b).add(&a.mul(&b.theta_derivative()));
                prop_assert_eq!(lhs_t, rhs_t);
            }

            // the kernel of d/dx is exactly F_p(x^p): elements built by the
            // substitution x -> x^p have zero derivative, and a vanishing
            // derivative forces numerator and denominator support on
            // multiples of p even after reduction to lowest terms
            #[test]
            fn frobenius_subfield_kills_the_derivation(
                (p, n, d) in (
                    prop_oneof![Just(3u64), Just(5), Just(7)],
                    prop::collection::vec(0u64..7, 0..=3),
                    prop::collection::vec(0u64..7, 1..=3),
                )
            ) {
                let p = pr(p);
                let den = inflate(&Poly::new(p, d));
                prop_assume!(!den.is_zero());
                let f = RationalFunction::new(inflate(&Poly::new(p, n)), den).unwrap();
                prop_assert!(f.derivative().is_zero());
                prop_assert!(p_supported(f.num()) && p_supported(f.den()));
            }

            #[test]
            fn derivation_kernel_is_the_frobenius_subfield(f in arb_rf()) {
                let in_kernel = f.derivative().is_zero();
                let in_subfield = p_supported(f.num()) && p_supported(f.den());
                prop_assert_eq!(in_kernel, in_subfield);
            }

            #[test]
            fn valuation_is_additive((a, b, _) in arb_triple()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let prod = a.mul(&b);
                let c = Fp::zero(a.prime());
                prop_assert_eq!(prod.val_at(c).unwrap(), a.val_at(c).unwrap() + b.val_at(c).unwrap());
                prop_assert_eq!(
                    prod.val_at_infinity().unwrap(),
                    a.val_at_infinity().unwrap() + b.val_at_infinity().unwrap()
                );
            }
        }
    }
}
