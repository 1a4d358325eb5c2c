//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored lowest-degree first with no trailing zeros; the
//! zero polynomial is the empty vector, so degree is len - 1 otherwise.

use crate::error::{Error, Result};
use crate::exactalg::fp::{Fp, Prime};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    prime: Prime,
    coeffs: Vec<u64>,
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl Poly {
    /// Builds from raw coefficients, lowest degree first; reduces mod p.
    pub fn new(prime: Prime, coeffs: Vec<u64>) -> Poly {
        let p = prime.get();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        Poly { prime, coeffs }
    }

    /// Builds from signed coefficients, lowest degree first.
    pub fn from_i64(prime: Prime, coeffs: &[i64]) -> Poly {
        let p = prime.get() as i64;
        Poly::new(prime, coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect())
    }

    pub fn zero(prime: Prime) -> Poly {
        Poly { prime, coeffs: Vec::new() }
    }

    pub fn one(prime: Prime) -> Poly {
        Poly { prime, coeffs: vec![1] }
    }

    pub fn constant(c: Fp) -> Poly {
        Poly::new(c.modulus(), vec![c.value()])
    }

    /// c * x^k.
    pub fn monomial(c: Fp, k: usize) -> Poly {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = c.value();
        Poly::new(c.modulus(), coeffs)
    }

    pub fn x(prime: Prime) -> Poly {
        Poly { prime, coeffs: vec![0, 1] }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of x^k, zero past the end.
    pub fn coeff(&self, k: usize) -> Fp {
        Fp::new(self.coeffs.get(k).copied().unwrap_or(0), self.prime)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() { None } else { Some(self.coeffs.len() - 1) }
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().map(|&c| Fp::new(c, self.prime))
    }

    /// Order of vanishing at x = 0; None for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn scale(&self, c: Fp) -> Poly {
        let p = self.prime.get();
        let cv = c.value();
        Poly::new(self.prime, self.coeffs.iter().map(|&a| a * cv % p).collect())
    }

    /// Multiplies by x^k.
    pub fn mul_xk(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { prime: self.prime, coeffs }
    }

    /// Quotient of self by x^k; panics if the valuation is smaller.
    pub fn div_xk(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.valuation().unwrap_or(0) >= k, "valuation below requested shift");
        Poly { prime: self.prime, coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.prime, rhs.prime, "mixed primes in polynomial arithmetic");
        let p = self.prime.get();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        trim(&mut out);
        Poly { prime: self.prime, coeffs: out }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.prime, rhs.prime, "mixed primes in polynomial arithmetic");
        let p = self.prime.get();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        trim(&mut out);
        Poly { prime: self.prime, coeffs: out }
    }

    pub fn neg(&self) -> Poly {
        let p = self.prime.get();
        Poly::new(self.prime, self.coeffs.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.prime, rhs.prime, "mixed primes in polynomial arithmetic");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.prime);
        }
        let p = self.prime.get();
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                // a*b < 2^62 and the running sum is reduced every step
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        trim(&mut out);
        Poly { prime: self.prime, coeffs: out }
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(self.prime);
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

    /// Long division: self = q * d + r with deg r < deg d.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        assert_eq!(self.prime, d.prime, "mixed primes in polynomial arithmetic");
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        if rem.degree().map_or(true, |rd| rd < dd) {
            return Ok((Poly::zero(self.prime), rem));
        }
        let p = self.prime.get();
        let lc_inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut q = vec![0u64; rem.coeffs.len() - dd];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * lc_inv;
            let shift = rd - dd;
            q[shift] = factor.value();
            let fv = factor.value();
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = shift + j;
                rem.coeffs[idx] = (rem.coeffs[idx] + p - fv * dc % p) % p;
            }
            trim(&mut rem.coeffs);
        }
        let mut q = q;
        trim(&mut q);
        Ok((Poly { prime: self.prime, coeffs: q }, rem))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.prime);
        }
        let p = self.prime.get();
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out.push((i as u64 % p) * c % p);
        }
        trim(&mut out);
        Poly { prime: self.prime, coeffs: out }
    }

    pub fn eval(&self, a: Fp) -> Fp {
        let p = self.prime.get();
        let av = a.value();
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * av + c) % p;
        }
        Fp::new(acc, self.prime)
    }

    /// Recenters: returns f(x + t).
    pub fn shift(&self, t: Fp) -> Poly {
        let mut acc = Poly::zero(self.prime);
        let lin = Poly::new(self.prime, vec![t.value(), 1]);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::new(self.prime, vec![c]));
        }
        acc
    }

    /// Coefficient reversal: x^deg * f(1/x). Requires a nonzero input.
    pub fn reversed(&self) -> Poly {
        assert!(!self.is_zero(), "reversal of the zero polynomial");
        let mut coeffs: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        trim(&mut coeffs);
        Poly { prime: self.prime, coeffs }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn divmod_examples() {
        let p = pr(5);
        // x^5 - x = (x - 2) * (x^4 + 2x^3 + 4x^2 + 3x)
        let a = Poly::from_i64(p, &[0, -1, 0, 0, 0, 1]);
        let d = Poly::from_i64(p, &[-2, 1]);
        let (q, r) = a.divmod(&d).unwrap();
        assert_eq!(q, Poly::new(p, vec![0, 3, 4, 2, 1]));
        assert!(r.is_zero());
        assert!(a.divmod(&Poly::zero(p)).is_err());
    }

    #[test]
    fn gcd_examples() {
        let p = pr(5);
        let a = Poly::from_i64(p, &[-1, 0, 1]); // (x-1)(x+1)
        let b = Poly::from_i64(p, &[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), Poly::from_i64(p, &[1, 1]));
        assert_eq!(Poly::zero(p).gcd(&Poly::zero(p)), Poly::zero(p));
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let p = pr(5);
        let f = Poly::monomial(Fp::one(p), 5);
        assert!(f.derivative().is_zero());
    }

    #[test]
    fn shift_and_reverse() {
        let p = pr(5);
        let f = Poly::new(p, vec![0, 0, 1]); // x^2
        assert_eq!(f.shift(Fp::new(1, p)), Poly::new(p, vec![1, 2, 1]));
        let g = Poly::new(p, vec![3, 0, 1]); // x^2 + 3
        assert_eq!(g.reversed(), Poly::new(p, vec![1, 0, 3]));
    }

    #[test]
    fn valuation_tracks_low_zeros() {
        let p = pr(7);
        assert_eq!(Poly::new(p, vec![0, 0, 2, 1]).valuation(), Some(2));
        assert_eq!(Poly::zero(p).valuation(), None);
        assert_eq!(Poly::one(p).valuation(), Some(0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
            (prop_oneof![Just(3u64), Just(5), Just(7)], prop::collection::vec(0u64..7, 0..=max_deg))
                .prop_map(|(p, coeffs)| Poly::new(pr(p), coeffs))
        }

        fn arb_pair(max_deg: usize) -> impl Strategy<Value = (Poly, Poly)> {
            (
                prop_oneof![Just(3u64), Just(5), Just(7)],
                prop::collection::vec(0u64..7, 0..=max_deg),
                prop::collection::vec(0u64..7, 0..=max_deg),
            )
                .prop_map(|(p, a, b)| (Poly::new(pr(p), a), Poly::new(pr(p), b)))
        }

        proptest! {
            #[test]
            fn divmod_round_trip((a, b) in arb_pair(8)) {
                prop_assume!(!b.is_zero());
                let (q, r) = a.divmod(&b).unwrap();
                prop_assert_eq!(q.mul(&b).add(&r), a);
                if let Some(rd) = r.degree() {
                    prop_assert!(rd < b.degree().unwrap());
                }
            }

            #[test]
            fn gcd_divides_both((a, b) in arb_pair(6)) {
                let g = a.gcd(&b);
                if !g.is_zero() {
                    prop_assert!(a.rem(&g).unwrap().is_zero());
                    prop_assert!(b.rem(&g).unwrap().is_zero());
                }
            }

            #[test]
            fn leibniz_rule((f, g) in arb_pair(6)) {
                let lhs = f.mul(&g).derivative();
                let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn shift_is_evaluation_compatible(f in arb_poly(6), t in 0u64..7, a in 0u64..7) {
                let p = f.prime();
                let t = Fp::new(t, p);
                let a = Fp::new(a, p);
                prop_assert_eq!(f.shift(t).eval(a), f.eval(a + t));
            }

            #[test]
            fn frobenius_additivity((f, g) in arb_pair(4)) {
                let e = f.prime().get();
                let lhs = f.add(&g).pow(e);
                let rhs = f.pow(e).add(&g.pow(e));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
