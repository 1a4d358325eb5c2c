//! Subsets of Z/p up to translation.
//!
//! An `ExponentSet` is a plain subset of residues; a `RadiusClass` is its
//! translation orbit, held by the lexicographically least sorted translate
//! (which always contains 0). Classes carry three involutions built from
//! negation and complement; sizes 1..p-1 keep all of them total.

use crate::error::{Error, Result};
use crate::exactalg::{Fp, Prime};
use itertools::Itertools;
use std::collections::BTreeSet;
use std::fmt;

/// A set of distinct residues mod p, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentSet {
    prime: Prime,
    elems: Vec<u64>,
}

impl ExponentSet {
    pub fn new(prime: Prime, elems: Vec<u64>) -> Result<ExponentSet> {
        let p = prime.get();
        let mut elems: Vec<u64> = elems.into_iter().map(|e| e % p).collect();
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElements);
        }
        Ok(ExponentSet { prime, elems })
    }

    pub fn from_i64(prime: Prime, elems: &[i64]) -> Result<ExponentSet> {
        let p = prime.get() as i64;
        ExponentSet::new(prime, elems.iter().map(|&e| e.rem_euclid(p) as u64).collect())
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.elems.binary_search(&(e % self.prime.get())).is_ok()
    }

    pub fn translate(&self, t: u64) -> ExponentSet {
        let p = self.prime.get();
        let mut elems: Vec<u64> = self.elems.iter().map(|&e| (e + t) % p).collect();
        elems.sort_unstable();
        ExponentSet { prime: self.prime, elems }
    }

    pub fn negate(&self) -> ExponentSet {
        let p = self.prime.get();
        let mut elems: Vec<u64> = self.elems.iter().map(|&e| (p - e) % p).collect();
        elems.sort_unstable();
        ExponentSet { prime: self.prime, elems }
    }

    pub fn complement(&self) -> ExponentSet {
        let p = self.prime.get();
        let elems = (0..p).filter(|&e| !self.contains(e)).collect();
        ExponentSet { prime: self.prime, elems }
    }

    /// Sum of the residues in F_p.
    pub fn sum(&self) -> Fp {
        self.elems.iter().fold(Fp::zero(self.prime), |acc, &e| acc + Fp::new(e, self.prime))
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A translation orbit of exponent sets, held by its canonical member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadiusClass {
    rep: ExponentSet,
}

impl RadiusClass {
    /// Canonicalizes. Sizes 0 and p are rejected: the empty orbit has no
    /// useful representative and the full set is its own complement's hole.
    pub fn new(set: ExponentSet) -> Result<RadiusClass> {
        let p = set.prime().get();
        let n = set.len() as u64;
        if n == p {
            return Err(Error::FullSet);
        }
        if n == 0 {
            return Err(Error::OrderOutOfRange { order: 0, min: 1, max: (p - 1) as usize });
        }
        let rep = (0..p).map(|t| set.translate(t)).min().unwrap();
        Ok(RadiusClass { rep })
    }

    pub fn from_i64(prime: Prime, elems: &[i64]) -> Result<RadiusClass> {
        RadiusClass::new(ExponentSet::from_i64(prime, elems)?)
    }

    #[inline]
    pub fn rep(&self) -> &ExponentSet {
        &self.rep
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.rep.prime()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rep.len()
    }

    /// All distinct translates of the representative.
    pub fn members(&self) -> Vec<ExponentSet> {
        let p = self.prime().get();
        let set: BTreeSet<ExponentSet> = (0..p).map(|t| self.rep.translate(t)).collect();
        set.into_iter().collect()
    }

    /// Whether some translate equals its own negation. Equivalent to the
    /// class being fixed by `negated`, via the shift-by-half trick in odd
    /// characteristic.
    pub fn is_symmetric(&self) -> bool {
        let p = self.prime().get();
        (0..p).any(|t| {
            let s = self.rep.translate(t);
            s.negate() == s
        })
    }

    pub fn negated(&self) -> RadiusClass {
        RadiusClass::new(self.rep.negate()).expect("size preserved")
    }

    pub fn complemented(&self) -> RadiusClass {
        RadiusClass::new(self.rep.complement()).expect("proper nonempty complement")
    }

    /// Negated complement, the pairing that swaps sizes n and p - n.
    pub fn tri(&self) -> RadiusClass {
        RadiusClass::new(self.rep.complement().negate()).expect("proper nonempty complement")
    }
}

impl fmt::Display for RadiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// All size-n classes, sorted by representative. There are C(p,n)/p of them.
pub fn enumerate_classes(prime: Prime, n: usize) -> Result<Vec<RadiusClass>> {
    let p = prime.get();
    if n == 0 || n as u64 >= p {
        return Err(Error::OrderOutOfRange { order: n, min: 1, max: (p - 1) as usize });
    }
    // every class has a member containing 0, so only those sets are scanned
    let mut seen: BTreeSet<RadiusClass> = BTreeSet::new();
    for tail in (1..p).combinations(n - 1) {
        let mut elems = vec![0u64];
        elems.extend(tail);
        let set = ExponentSet::new(prime, elems)?;
        seen.insert(RadiusClass::new(set)?);
    }
    Ok(seen.into_iter().collect())
}

/// The symmetric (negation-fixed) size-n classes; C((p-1)/2, floor(n/2)) of
/// them.
pub fn enumerate_symmetric_classes(prime: Prime, n: usize) -> Result<Vec<RadiusClass>> {
    Ok(enumerate_classes(prime, n)?.into_iter().filter(|c| c.is_symmetric()).collect())
}

/// The single class of size p - 1: all residues but one.
pub fn full_class(prime: Prime) -> RadiusClass {
    let elems = (0..prime.get() - 1).collect();
    RadiusClass::new(ExponentSet::new(prime, elems).unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn cls(p: u64, elems: &[i64]) -> RadiusClass {
        RadiusClass::from_i64(pr(p), elems).unwrap()
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(cls(7, &[0, 3, 4]).rep().elems(), &[0, 1, 4]);
        assert_eq!(cls(5, &[2, 3, 4]).rep().elems(), &[0, 1, 2]);
        // canonical member always contains 0
        assert!(cls(11, &[5, 7]).rep().contains(0));
    }

    #[test]
    fn degenerate_sizes_rejected() {
        let p = pr(5);
        let full = ExponentSet::new(p, (0..5).collect()).unwrap();
        assert_eq!(RadiusClass::new(full), Err(Error::FullSet));
        let empty = ExponentSet::new(p, vec![]).unwrap();
        assert!(matches!(RadiusClass::new(empty), Err(Error::OrderOutOfRange { .. })));
        assert_eq!(ExponentSet::new(p, vec![1, 6]), Err(Error::DuplicateElements));
    }

    #[test]
    fn tri_examples() {
        assert_eq!(cls(5, &[0, 1]).tri(), cls(5, &[0, 1, 2]));
        assert_eq!(cls(3, &[0, 1]).tri(), cls(3, &[0]));
    }

    #[test]
    fn symmetric_detection() {
        // {0,1,2} at p = 7 translates to {6,0,1}, which is negation stable
        assert!(cls(7, &[0, 1, 2]).is_symmetric());
        assert!(cls(5, &[0, 1]).is_symmetric());
        // {0,1,3} at p = 7: negation gives {0,4,6} ~ {0,2,3}, a different class
        assert!(!cls(7, &[0, 1, 3]).is_symmetric());
    }

    #[test]
    fn symmetric_classes_of_size_three() {
        let got = enumerate_symmetric_classes(pr(7), 3).unwrap();
        let expect = vec![cls(7, &[0, 1, 2]), cls(7, &[0, 2, 4]), cls(7, &[0, 1, 4])];
        let expect: BTreeSet<_> = expect.into_iter().collect();
        let got: BTreeSet<_> = got.into_iter().collect();
        assert_eq!(got, expect);
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as u64
    }

    #[test]
    fn class_counts() {
        for p in [5u64, 7, 11, 13] {
            for n in 1..p as usize {
                let all = enumerate_classes(pr(p), n).unwrap();
                assert_eq!(all.len() as u64, binom(p, n as u64) / p, "p={p} n={n}");
                let sym = enumerate_symmetric_classes(pr(p), n).unwrap();
                assert_eq!(
                    sym.len() as u64,
                    binom((p - 1) / 2, n as u64 / 2),
                    "p={p} n={n} symmetric"
                );
            }
        }
    }

    #[test]
    fn top_size_class_is_unique() {
        for p in [5u64, 7, 11] {
            let all = enumerate_classes(pr(p), p as usize - 1).unwrap();
            assert_eq!(all, vec![full_class(pr(p))]);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_class() -> impl Strategy<Value = RadiusClass> {
            (prop_oneof![Just(5u64), Just(7), Just(11)]).prop_flat_map(|p| {
                prop::collection::btree_set(0u64..p, 1..=(p as usize - 1)).prop_map(move |s| {
                    let set = ExponentSet::new(pr(p), s.into_iter().collect()).unwrap();
                    RadiusClass::new(set).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn canonical_is_translation_invariant(c in arb_class(), t in 0u64..11) {
                let shifted = c.rep().translate(t % c.prime().get());
                prop_assert_eq!(RadiusClass::new(shifted).unwrap(), c);
            }

            #[test]
            fn involutions(c in arb_class()) {
                prop_assert_eq!(c.tri().tri(), c.clone());
                prop_assert_eq!(c.negated().negated(), c.clone());
                prop_assert_eq!(c.complemented().complemented(), c.clone());
                prop_assert_eq!(c.tri().size() + c.size(), c.prime().get() as usize);
            }

            #[test]
            fn symmetry_is_negation_fixedness(c in arb_class()) {
                prop_assert_eq!(c.is_symmetric(), c.negated() == c);
            }

            #[test]
            fn members_contain_rep(c in arb_class()) {
                let ms = c.members();
                prop_assert!(ms.contains(c.rep()));
                // orbit size divides p, and p is prime, so it is 1 or p;
                // size 1 would force full or empty
                prop_assert_eq!(ms.len() as u64, c.prime().get());
            }
        }
    }
}
