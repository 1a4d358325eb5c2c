//! Prime moduli and prime-field scalars.
//!
//! Values stay below 2^31, so products of two reduced scalars fit in a u64
//! without widening.

use crate::error::{Error, Result};
use std::fmt;

/// An odd prime p with 3 <= p <= 2^31, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 3 || p > (1 << 31) || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A scalar in F_p, always reduced to [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    modulus: Prime,
}

impl Fp {
    #[inline]
    pub fn new(value: u64, modulus: Prime) -> Fp {
        Fp { value: value % modulus.get(), modulus }
    }

    /// Embeds a signed integer, reducing mod p.
    pub fn from_i64(value: i64, modulus: Prime) -> Fp {
        let p = modulus.get() as i64;
        Fp::new(value.rem_euclid(p) as u64, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn zero(modulus: Prime) -> Fp {
        Fp { value: 0, modulus }
    }

    #[inline]
    pub fn one(modulus: Prime) -> Fp {
        Fp { value: 1, modulus }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus.get();
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }

    /// Multiplicative inverse via extended Euclid.
    pub fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        let p = self.modulus.get() as i64;
        let (mut r0, mut r1) = (p, self.value as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp::from_i64(s0, self.modulus))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! check_same_prime {
    ($a:expr, $b:expr) => {
        assert_eq!($a.modulus, $b.modulus, "mixed primes in F_p arithmetic");
    };
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        check_same_prime!(self, rhs);
        let p = self.modulus.get();
        Fp { value: (self.value + rhs.value) % p, modulus: self.modulus }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        check_same_prime!(self, rhs);
        let p = self.modulus.get();
        Fp { value: (self.value + p - rhs.value) % p, modulus: self.modulus }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        check_same_prime!(self, rhs);
        let p = self.modulus.get();
        Fp { value: self.value * rhs.value % p, modulus: self.modulus }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let p = self.modulus.get();
        Fp { value: (p - self.value) % p, modulus: self.modulus }
    }
}
