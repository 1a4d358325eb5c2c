//! Gaussian elimination over exact fields.
//!
//! Generic over a minimal scalar trait so the same elimination serves both
//! F_p and F_p(x). Pivoting picks the first nonzero entry, which is always
//! valid in exact arithmetic.

use crate::exactalg::{Fp, RationalFunction};

pub trait Scalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; caller guarantees the value is nonzero.
    fn inv(&self) -> Self;
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.modulus())
    }
    fn one_like(&self) -> Self {
        Fp::one(self.modulus())
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn inv(&self) -> Self {
        Fp::inv(*self).expect("nonzero pivot")
    }
}

impl Scalar for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.prime())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.prime())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RationalFunction::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RationalFunction::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        RationalFunction::inv(self).expect("nonzero pivot")
    }
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns in order.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv();
        for x in rows[r][c..].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel of the matrix. `proto` supplies zero and one so
/// the kernel of an empty row set is still expressible.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize, proto: &S) -> Vec<Vec<S>> {
    let mut work: Vec<Vec<S>> = rows.to_vec();
    let pivots = rref(&mut work);
    let zero = proto.zero_like();
    let one = proto.one_like();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &pc) in work.iter().zip(&pivots) {
            v[pc] = zero.sub(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves A x = b. Returns a particular solution and a basis of the
/// homogeneous solutions, or None when the system is inconsistent.
pub fn solve_affine<S: Scalar>(
    a: &[Vec<S>],
    b: &[S],
    ncols: usize,
    proto: &S,
) -> Option<(Vec<S>, Vec<Vec<S>>)> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let zero = proto.zero_like();
    let mut part = vec![zero.clone(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        part[pc] = row[ncols].clone();
    }
    let stripped: Vec<Vec<S>> =
        aug.iter().take(pivots.len()).map(|r| r[..ncols].to_vec()).collect();
    Some((part, nullspace(&stripped, ncols, proto)))
}

/// Rearranges a set of independent vectors so their first nonzero positions
/// are pairwise distinct (staircase form), each normalized to lead with 1.
pub fn echelonize_by_first_nonzero<S: Scalar>(mut vs: Vec<Vec<S>>) -> Vec<Vec<S>> {
    let mut done: Vec<Vec<S>> = Vec::new();
    while let Some(mut v) = vs.pop() {
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                // dependent input; drop it
                break;
            };
            let inv = v[lead].inv();
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
            match done.iter().find(|w| w.iter().position(|x| !x.is_zero()) == Some(lead)) {
                None => {
                    done.push(v);
                    break;
                }
                Some(w) => {
                    let w = w.clone();
                    for (x, y) in v.iter_mut().zip(&w) {
                        *x = x.sub(y);
                    }
                }
            }
        }
    }
    done.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
    done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Prime;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn fpv(p: Prime, vals: &[u64]) -> Vec<Fp> {
        vals.iter().map(|&v| Fp::new(v, p)).collect()
    }

    #[test]
    fn rref_ranks() {
        let p = pr(5);
        let mut m = vec![fpv(p, &[1, 2, 3]), fpv(p, &[2, 4, 1]), fpv(p, &[0, 0, 1])];
        let pivots = rref(&mut m);
        assert_eq!(pivots, vec![0, 2]);
    }

    #[test]
    fn nullspace_dimension() {
        let p = pr(5);
        // second row is twice the first mod 5, so the rank is 1
        let rows = vec![fpv(p, &[1, 2, 3]), fpv(p, &[2, 4, 1])];
        let ns = nullspace(&rows, 3, &Fp::zero(p));
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(Fp::zero(p), |acc, (a, b)| acc + *a * *b);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn affine_solve_round_trip() {
        let p = pr(7);
        let a = vec![fpv(p, &[1, 1, 0]), fpv(p, &[0, 1, 1])];
        let b = fpv(p, &[3, 5]);
        let (part, hom) = solve_affine(&a, &b, 3, &Fp::zero(p)).unwrap();
        assert_eq!(hom.len(), 1);
        for row in 0..2 {
            let dot = a[row]
                .iter()
                .zip(&part)
                .fold(Fp::zero(p), |acc, (x, y)| acc + *x * *y);
            assert_eq!(dot, b[row]);
        }
        // inconsistent system
        let a2 = vec![fpv(p, &[1, 0]), fpv(p, &[1, 0])];
        let b2 = fpv(p, &[1, 2]);
        assert!(solve_affine(&a2, &b2, 2, &Fp::zero(p)).is_none());
    }

    #[test]
    fn staircase_form() {
        let p = pr(5);
        let vs = vec![fpv(p, &[2, 1, 0, 3]), fpv(p, &[4, 2, 1, 0])];
        let out = echelonize_by_first_nonzero(vs);
        assert_eq!(out.len(), 2);
        let leads: Vec<usize> =
            out.iter().map(|v| v.iter().position(|x| !x.is_zero()).unwrap()).collect();
        assert_eq!(leads.len(), 2);
        assert!(leads[0] < leads[1]);
        for (v, &l) in out.iter().zip(&leads) {
            assert_eq!(v[l], Fp::one(p));
        }
    }

    #[test]
    fn rational_function_entries() {
        use crate::exactalg::Poly;
        let p = pr(5);
        let x = RationalFunction::x(p);
        let one = RationalFunction::one(p);
        // [x 1; x^2 x] has rank 1
        let rows = vec![
            vec![x.clone(), one.clone()],
            vec![x.mul(&x), x.clone()],
        ];
        let ns = nullspace(&rows, 2, &one);
        assert_eq!(ns.len(), 1);
        let expect = RationalFunction::new(
            Poly::from_i64(p, &[-1]),
            Poly::from_i64(p, &[0, 1]),
        )
        .unwrap();
        assert_eq!(ns[0], vec![expect, one]);
    }
}
