//! Dormancy oracles and local exponents.
//!
//! An operator is dormant when it right-divides the central element of its
//! gauge. Two further routes certify the same property: vanishing of the
//! p-curvature of the companion system, and a full space of truncated series
//! solutions at an ordinary point. The three are kept independent so they can
//! cross-check each other.

use crate::error::{Error, Result};
use crate::exactalg::{clear_denominators, Fp, Poly, Prime, RationalFunction};
use crate::linalg::{echelonize_by_first_nonzero, nullspace};
use crate::ore::{Gauge, PointP1, SkewOperator};
use crate::radii::{ExponentSet, RadiusClass};

/// The monic order-p central element: G^p in the Partial gauge, G^p - G in
/// the Theta gauge.
pub fn central_element(gauge: Gauge, prime: Prime) -> SkewOperator {
    let mut coeffs = vec![RationalFunction::zero(prime); prime.get() as usize + 1];
    coeffs[prime.get() as usize] = RationalFunction::one(prime);
    if gauge == Gauge::Theta {
        coeffs[1] = RationalFunction::one(prime).neg();
    }
    SkewOperator::new(gauge, prime, coeffs)
}

fn require_monic(d: &SkewOperator, max_order: usize) -> Result<usize> {
    let n = d.order().ok_or(Error::ZeroDivisor)?;
    if !d.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 0 || n > max_order {
        return Err(Error::OrderOutOfRange { order: n, min: 1, max: max_order });
    }
    Ok(n)
}

/// Division route: the right remainder of the central element vanishes.
pub fn dormant_by_division(d: &SkewOperator) -> Result<bool> {
    let p = d.prime().get() as usize;
    require_monic(d, p)?;
    let z = central_element(d.gauge(), d.prime());
    Ok(z.rem_right(d)?.is_zero())
}

pub type Matrix = Vec<Vec<RationalFunction>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut orow = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = RationalFunction::zero(row[0].prime());
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() && !b[k][j].is_zero() {
                    acc = acc.add(&x.mul(&b[k][j]));
                }
            }
            orow.push(acc);
        }
        out.push(orow);
    }
    out
}

fn mat_map(a: &Matrix, f: impl Fn(&RationalFunction) -> RationalFunction) -> Matrix {
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

fn mat_is_zero(a: &Matrix) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Companion matrix of a monic operator in the basis (y, Gy, ..., G^{n-1}y).
fn companion(d: &SkewOperator, n: usize) -> Matrix {
    let prime = d.prime();
    let zero = RationalFunction::zero(prime);
    let mut a = vec![vec![zero; n]; n];
    for (i, row) in a.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = RationalFunction::one(prime);
    }
    for j in 0..n {
        a[n - 1][j] = d.coeff(j).neg();
    }
    a
}

/// p-curvature route: iterates A_1 = A, A_{k+1} = A_k' + A_k * A to k = p
/// with the gauge derivation applied entrywise. The returned matrix is the
/// obstruction itself: A_p in the Partial gauge, A_p - A_1 in the Theta gauge
/// (where the central element is G^p - G rather than G^p).
pub fn dormant_by_pcurvature(d: &SkewOperator) -> Result<(bool, Matrix)> {
    let p = d.prime().get() as usize;
    let n = require_monic(d, p)?;
    let gauge = d.gauge();
    let a = companion(d, n);
    let mut ak = a.clone();
    for _ in 1..p {
        let dak = mat_map(&ak, |x| gauge.delta(x));
        ak = mat_add(&dak, &mat_mul(&ak, &a));
    }
    let psi = match gauge {
        Gauge::Partial => ak,
        Gauge::Theta => mat_add(&ak, &mat_map(&a, |x| x.neg())),
    };
    Ok((mat_is_zero(&psi), psi))
}

/// A search window for the solution-rank oracle that is generous enough for
/// the obstruction of a non-dormant operator to surface within it. The
/// obstruction valuation is bounded by the numerator degree of the
/// p-curvature, roughly (p+1) times the cleared coefficient degree, so the
/// window grows with the coefficient height and not just the order.
pub fn default_rank_window(d: &SkewOperator) -> usize {
    let n = d.order().unwrap_or(1);
    let p = d.prime().get() as usize;
    let e = d.to_partial();
    let (b, _den) = clear_denominators(e.coeffs());
    let height: usize = b.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    n * p + 3 * p + 2 * n + 2 + (p + 1) * height
}

/// Solution-rank route: the space of truncated power-series solutions at an
/// ordinary point, filtered to the window where truncation junk cannot hide,
/// spans n distinct residues of valuations mod p exactly when d is dormant.
pub fn dormant_by_solution_rank(d: &SkewOperator, degree_bound: usize) -> Result<bool> {
    let p = d.prime().get() as usize;
    let n = require_monic(d, p - 1)?;
    if degree_bound < n * p {
        return Err(Error::DegreeBoundTooSmall);
    }
    let e = d.to_partial();
    let prime = d.prime();

    // ordinary point: every coefficient regular, leading coefficient nonzero
    let lc = e.leading().unwrap();
    let center = (0..p as u64)
        .map(|c| Fp::new(c, prime))
        .find(|&c| e.coeffs().iter().all(|a| a.regular_at(c)) && lc.val_at(c) == Some(0))
        .ok_or(Error::NoOrdinaryPoint)?;

    let shifted: Vec<RationalFunction> = e.coeffs().iter().map(|a| a.shift(center)).collect();
    let (b, _den) = clear_denominators(&shifted);

    let cols = degree_bound;
    if cols < p || cols - p < n {
        return Err(Error::DegreeBoundTooSmall);
    }
    let rows = cols - n;
    let zero = Fp::zero(prime);
    let mut m = vec![vec![zero; cols]; rows];
    for j in 0..cols {
        // column j holds the operator applied to x^j, truncated to the rows
        for (i, bi) in b.iter().enumerate() {
            if i > j || bi.is_zero() {
                continue;
            }
            let mut fall = Fp::one(prime);
            for l in 0..i {
                fall = fall * Fp::new((j - l) as u64 % p as u64, prime);
            }
            if fall.is_zero() {
                continue;
            }
            for (k, &c) in bi.coeffs().iter().enumerate() {
                let deg = j - i + k;
                if deg < rows && c != 0 {
                    m[deg][j] = m[deg][j] + fall * Fp::new(c, prime);
                }
            }
        }
    }

    let kernel = nullspace(&m, cols, &zero);
    let stair = echelonize_by_first_nonzero(kernel);
    let vals: Vec<usize> =
        stair.iter().map(|v| v.iter().position(|x| !x.is_zero()).unwrap()).collect();
    // a genuine solution class starts at an ordinary-point exponent, below p;
    // truncation junk enters the kernel only near the top of the window
    let counted: Vec<usize> = vals.iter().copied().filter(|&v| v < p).collect();
    for &v in &counted {
        // multiplication by x^p preserves truncated solutions, so a counted
        // valuation must reappear every period; a gap means the window was
        // too shallow to separate junk from genuine solutions
        let mut w = v;
        while w + p < cols {
            w += p;
            if !vals.contains(&w) {
                return Err(Error::DegreeBoundTooSmall);
            }
        }
    }
    let mut residues: Vec<usize> = counted.iter().map(|v| v % p).collect();
    residues.sort_unstable();
    residues.dedup();
    Ok(residues.len() == n)
}

fn simple_roots(chi: &Poly) -> Result<Vec<u64>> {
    let prime = chi.prime();
    let p = prime.get();
    let mut roots = Vec::new();
    for s in 0..p {
        let c = Fp::new(s, prime);
        if !chi.eval(c).is_zero() {
            continue;
        }
        let lin = Poly::from_i64(prime, &[-(s as i64), 1]);
        let q = chi.divmod(&lin).expect("nonzero divisor").0;
        if q.eval(c).is_zero() {
            return Err(Error::MultipleRoots);
        }
        roots.push(s);
    }
    Ok(roots)
}

/// The indicial polynomial of the theta-form of d local to the point: scale
/// all coefficients by the common power of x that makes them regular with at
/// least one unit, then read the constant terms.
fn indicial_polynomial(d: &SkewOperator, point: PointP1) -> Result<Poly> {
    let prime = d.prime();
    let t = d.to_theta_at(point);
    let n = t.order().expect("nonzero operator");
    let zero = Fp::zero(prime);
    let minval = t
        .coeffs()
        .iter()
        .filter_map(|c| c.val_at(zero))
        .min()
        .expect("nonzero operator");
    let mut chi = vec![0u64; n + 1];
    for (j, c) in t.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let scaled = c.mul(&RationalFunction::x_pow(prime, -minval));
        chi[j] = scaled.eval(zero).expect("regular after scaling").value();
    }
    let chi = Poly::new(prime, chi);
    if chi.degree() != Some(n) {
        return Err(Error::IrregularSingularity);
    }
    Ok(chi)
}

/// Local exponents of a dormant operator: the roots of the indicial
/// polynomial at the point, necessarily n distinct elements of F_p.
pub fn exponents_at(d: &SkewOperator, point: PointP1) -> Result<ExponentSet> {
    let p = d.prime().get() as usize;
    let n = require_monic(d, p)?;
    if !dormant_by_division(d)? {
        return Err(Error::NotDormant);
    }
    let chi = indicial_polynomial(d, point)?;
    let roots = simple_roots(&chi)?;
    if roots.len() != n {
        return Err(Error::IndicialNotSplit);
    }
    ExponentSet::new(d.prime(), roots)
}

/// The translation class of the exponents at a point.
pub fn radius_at(d: &SkewOperator, point: PointP1) -> Result<RadiusClass> {
    RadiusClass::new(exponents_at(d, point)?)
}

/// Points of P^1 where the operator is not ordinary: finite points are poles
/// of the partial-form coefficients or zeros of the leading coefficient;
/// infinity counts when some coefficient decays slower than the projective
/// bound val(coeff of G^{n-i}) >= 2i.
pub fn singular_points(d: &SkewOperator) -> Vec<PointP1> {
    let e = d.to_partial();
    let Some(n) = e.order() else {
        return Vec::new();
    };
    let prime = d.prime();
    let lc = e.leading().unwrap();
    let mut out = Vec::new();
    for c in 0..prime.get() {
        let c = Fp::new(c, prime);
        let singular = e.coeffs().iter().any(|a| !a.regular_at(c)) || lc.val_at(c) != Some(0);
        if singular {
            out.push(PointP1::Finite(c));
        }
    }
    let at_infinity = (1..=n).any(|i| {
        let a = e.coeff(n - i);
        match (a.val_at_infinity(), lc.val_at_infinity()) {
            (None, _) => false,
            // compare relative to the leading coefficient to cover
            // non-monic partial forms of theta-gauge operators
            (Some(v), Some(l)) => v - l < 2 * i as i64,
            (Some(_), None) => unreachable!("nonzero leading coefficient"),
        }
    });
    if at_infinity {
        out.push(PointP1::Infinity);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn op(gauge: Gauge, p: Prime, coeffs: &[&[i64]]) -> SkewOperator {
        let cs = coeffs
            .iter()
            .map(|c| RationalFunction::from_poly(Poly::from_i64(p, c)))
            .collect();
        SkewOperator::new(gauge, p, cs)
    }

    #[test]
    fn central_elements_are_central() {
        for (gauge, p) in [(Gauge::Partial, 5u64), (Gauge::Theta, 5), (Gauge::Partial, 3)] {
            let p = pr(p);
            let z = central_element(gauge, p);
            assert!(z.is_monic());
            assert_eq!(z.order(), Some(p.get() as usize));
            let f = SkewOperator::multiplication(
                gauge,
                RationalFunction::new(Poly::from_i64(p, &[1, 2]), Poly::from_i64(p, &[0, 0, 1]))
                    .unwrap(),
            );
            assert_eq!(z.mul(&f), f.mul(&z));
            let g = SkewOperator::generator(gauge, p);
            assert_eq!(z.mul(&g), g.mul(&z));
        }
    }

    #[test]
    fn division_route_examples() {
        let p = pr(5);
        let d = SkewOperator::generator(Gauge::Partial, p);
        assert!(dormant_by_division(&d).unwrap());
        let d1 = op(Gauge::Partial, p, &[&[-1], &[1]]);
        assert!(!dormant_by_division(&d1).unwrap());
        // D - 1/x annihilates x
        let dx = SkewOperator::new(
            Gauge::Partial,
            p,
            vec![
                RationalFunction::x_pow(p, -1).neg(),
                RationalFunction::one(p),
            ],
        );
        assert!(dormant_by_division(&dx).unwrap());
        // non-monic and out-of-range orders are rejected
        let shifted = d.scale_left(&RationalFunction::x(p));
        assert_eq!(dormant_by_division(&shifted), Err(Error::NotMonic));
        let six = op(Gauge::Partial, p, &[&[], &[], &[], &[], &[], &[], &[1]]);
        assert!(matches!(dormant_by_division(&six), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn pcurvature_route_examples() {
        let p3 = pr(3);
        let (flag, psi) = dormant_by_pcurvature(&op(Gauge::Partial, p3, &[&[], &[], &[1]])).unwrap();
        assert!(flag);
        assert!(mat_is_zero(&psi));

        let p5 = pr(5);
        let (flag, psi) = dormant_by_pcurvature(&op(Gauge::Partial, p5, &[&[-1], &[1]])).unwrap();
        assert!(!flag);
        assert_eq!(psi, vec![vec![RationalFunction::one(p5)]]);

        let (flag, psi) = dormant_by_pcurvature(&op(Gauge::Theta, p5, &[&[-1], &[], &[1]])).unwrap();
        assert!(flag);
        assert!(mat_is_zero(&psi));
    }

    #[test]
    fn solution_rank_route_examples() {
        let p5 = pr(5);
        let d2 = op(Gauge::Partial, p5, &[&[], &[], &[1]]);
        assert!(dormant_by_solution_rank(&d2, default_rank_window(&d2)).unwrap());
        let d1 = op(Gauge::Partial, p5, &[&[-1], &[1]]);
        assert!(!dormant_by_solution_rank(&d1, default_rank_window(&d1)).unwrap());
        let p7 = pr(7);
        let t2 = op(Gauge::Theta, p7, &[&[-1], &[], &[1]]);
        assert!(dormant_by_solution_rank(&t2, default_rank_window(&t2)).unwrap());
        // window below n*p is rejected up front
        assert_eq!(dormant_by_solution_rank(&d2, 9), Err(Error::DegreeBoundTooSmall));
    }

    #[test]
    fn no_ordinary_point_is_detected() {
        let p = pr(3);
        // denominator x^3 - x vanishes at every element of F_3
        let a = RationalFunction::new(Poly::one(p), Poly::from_i64(p, &[0, -1, 0, 1])).unwrap();
        let d = SkewOperator::new(Gauge::Partial, p, vec![a, RationalFunction::one(p)]);
        assert_eq!(
            dormant_by_solution_rank(&d, default_rank_window(&d)),
            Err(Error::NoOrdinaryPoint)
        );
    }

    #[test]
    fn exponent_examples() {
        let p = pr(5);
        let zero = PointP1::Finite(Fp::zero(p));
        let t = op(Gauge::Theta, p, &[&[], &[-1], &[1]]);
        assert_eq!(exponents_at(&t, zero).unwrap().elems(), &[0, 1]);

        // constant-coefficient product (T-2)(T-3)(T-4)
        let a = op(Gauge::Theta, p, &[&[-2], &[1]]);
        let b = op(Gauge::Theta, p, &[&[-3], &[1]]);
        let c = op(Gauge::Theta, p, &[&[-4], &[1]]);
        let d = a.mul(&b).mul(&c);
        assert_eq!(exponents_at(&d, zero).unwrap().elems(), &[2, 3, 4]);

        // D^2 - (1/x)D has theta-form T^2 - 2T
        let dd = SkewOperator::new(
            Gauge::Partial,
            p,
            vec![
                RationalFunction::zero(p),
                RationalFunction::x_pow(p, -1).neg(),
                RationalFunction::one(p),
            ],
        );
        assert_eq!(exponents_at(&dd, zero).unwrap().elems(), &[0, 2]);
    }

    #[test]
    fn exponents_reject_bad_inputs() {
        let p = pr(5);
        let zero = PointP1::Finite(Fp::zero(p));
        let nondormant = op(Gauge::Partial, p, &[&[-1], &[1]]);
        assert_eq!(exponents_at(&nondormant, zero), Err(Error::NotDormant));
        // dormant, but irregular at 0: coefficient pole deeper than order
        let irr = SkewOperator::new(
            Gauge::Partial,
            p,
            vec![
                RationalFunction::x_pow(p, -3).neg(),
                RationalFunction::one(p),
            ],
        );
        // twist of D - 1/x^3; not dormant, so build directly instead:
        // indicial machinery is exercised through the internal helper
        assert!(matches!(
            indicial_polynomial(&irr, zero),
            Err(Error::IrregularSingularity)
        ));
    }

    #[test]
    fn multiple_roots_detected_by_helper() {
        let p = pr(5);
        let chi = Poly::from_i64(p, &[0, 0, 1]); // s^2
        assert_eq!(simple_roots(&chi), Err(Error::MultipleRoots));
        let ok = Poly::from_i64(p, &[0, -1, 0, 0, 1]); // s^4 - s = s(s-1)(s^2+s+1)
        assert_eq!(simple_roots(&ok).unwrap(), vec![0, 1]);
    }

    #[test]
    fn ordinary_points_have_consecutive_exponents() {
        let p = pr(7);
        let d = op(Gauge::Partial, p, &[&[], &[], &[], &[1]]);
        let one = PointP1::Finite(Fp::one(p));
        assert_eq!(exponents_at(&d, one).unwrap().elems(), &[0, 1, 2]);
    }

    #[test]
    fn exponents_at_infinity() {
        let p = pr(5);
        let t = SkewOperator::generator(Gauge::Theta, p);
        assert_eq!(exponents_at(&t, PointP1::Infinity).unwrap().elems(), &[0]);
        // exponent e at 0 becomes -e at infinity for T - e
        let te = op(Gauge::Theta, p, &[&[-1], &[1]]);
        assert_eq!(exponents_at(&te, PointP1::Infinity).unwrap().elems(), &[4]);
        // D^2 at infinity: {0, -1}
        let d2 = op(Gauge::Partial, p, &[&[], &[], &[1]]);
        assert_eq!(exponents_at(&d2, PointP1::Infinity).unwrap().elems(), &[0, 4]);
    }

    #[test]
    fn recentring_reads_local_exponents() {
        let p = pr(5);
        // D - 1/(x-1) annihilates x - 1: exponent 1 at the point 1, 0 elsewhere
        let a = RationalFunction::new(Poly::one(p), Poly::from_i64(p, &[-1, 1])).unwrap();
        let d = SkewOperator::new(Gauge::Partial, p, vec![a.neg(), RationalFunction::one(p)]);
        let at1 = exponents_at(&d, PointP1::Finite(Fp::one(p))).unwrap();
        assert_eq!(at1.elems(), &[1]);
        let at0 = exponents_at(&d, PointP1::Finite(Fp::zero(p))).unwrap();
        assert_eq!(at0.elems(), &[0]);
    }

    #[test]
    fn twist_shifts_exponents_down_by_the_zero_order() {
        let p = pr(5);
        let zero = PointP1::Finite(Fp::zero(p));
        let t = op(Gauge::Theta, p, &[&[], &[-1], &[1]]); // exponents {0,1}
        for k in 1..3i64 {
            let g = RationalFunction::x_pow(p, k);
            let twisted = t.twist(&g).unwrap();
            let got = exponents_at(&twisted, zero).unwrap();
            let expect: Vec<u64> = ExponentSet::from_i64(p, &[-k, 1 - k]).unwrap().elems().to_vec();
            assert_eq!(got.elems(), &expect[..]);
        }
    }

    #[test]
    fn remainder_conjugation_transport() {
        let p = pr(5);
        let z = central_element(Gauge::Theta, p);
        let d = op(Gauge::Theta, p, &[&[0, 1], &[2], &[1]]);
        let r = z.rem_right(&d).unwrap();
        // constant twists leave the operator, hence the remainder, unchanged
        let c = RationalFunction::constant(Fp::new(3, p));
        assert_eq!(d.twist(&c).unwrap(), d);
        // general twists conjugate the remainder
        let g = RationalFunction::from_poly(Poly::from_i64(p, &[1, 0, 2]));
        let rt = z.rem_right(&d.twist(&g).unwrap()).unwrap();
        assert_eq!(rt, r.twist(&g).unwrap());
    }

    #[test]
    fn singular_point_detection() {
        let p = pr(5);
        let d2 = op(Gauge::Partial, p, &[&[], &[], &[1]]);
        assert_eq!(singular_points(&d2), vec![]);
        // T has the minimal decay pattern at infinity, so only 0 is flagged
        let t = SkewOperator::generator(Gauge::Theta, p);
        assert_eq!(singular_points(&t), vec![PointP1::Finite(Fp::zero(p))]);
        let a = RationalFunction::new(Poly::one(p), Poly::from_i64(p, &[-1, 1])).unwrap();
        let d = SkewOperator::new(Gauge::Partial, p, vec![a.neg(), RationalFunction::one(p)]);
        assert_eq!(
            singular_points(&d),
            vec![PointP1::Finite(Fp::one(p)), PointP1::Infinity]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Mixed pool: raw random coefficients, dormant constant-coefficient
        /// products with distinct roots, their unit twists, and repeated-root
        /// products (never dormant).
        fn arb_pool_op() -> impl Strategy<Value = SkewOperator> {
            let raw = (
                prop_oneof![Just(3u64), Just(5), Just(7)],
                prop_oneof![Just(Gauge::Partial), Just(Gauge::Theta)],
                prop::collection::vec(prop::collection::vec(0u64..7, 0..=2), 1..=3),
            )
                .prop_map(|(p, gauge, coeffs)| {
                    let p = pr(p);
                    let mut cs: Vec<RationalFunction> = coeffs
                        .into_iter()
                        .map(|c| RationalFunction::from_poly(Poly::new(p, c)))
                        .collect();
                    cs.push(RationalFunction::one(p));
                    SkewOperator::new(gauge, p, cs)
                });
            let factored = (
                prop_oneof![Just(3u64), Just(5), Just(7)],
                prop_oneof![Just(Gauge::Partial), Just(Gauge::Theta)],
                prop::collection::vec(0u64..7, 1..=3),
                0usize..3,
                prop::collection::vec(1u64..5, 1..=2),
            )
                .prop_map(|(p, gauge, roots, twist_pow, gcoeffs)| {
                    let p = pr(p);
                    let mut d = SkewOperator::one(gauge, p);
                    for r in roots {
                        let lin = SkewOperator::new(
                            gauge,
                            p,
                            vec![
                                RationalFunction::constant(Fp::new(r, p)).neg(),
                                RationalFunction::one(p),
                            ],
                        );
                        d = d.mul(&lin);
                    }
                    let g = RationalFunction::from_poly(
                        Poly::new(p, gcoeffs).add(&Poly::monomial(Fp::one(p), twist_pow)),
                    );
                    if g.is_zero() {
                        d
                    } else {
                        d.twist(&g).unwrap()
                    }
                });
            prop_oneof![raw, factored]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn triple_oracle_agreement(d in arb_pool_op()) {
                let n = d.order().unwrap();
                let p = d.prime().get() as usize;
                prop_assume!(n >= 1 && n < p);
                let by_div = dormant_by_division(&d).unwrap();
                let (by_pc, _) = dormant_by_pcurvature(&d).unwrap();
                let by_rank = dormant_by_solution_rank(&d, default_rank_window(&d));
                prop_assert_eq!(by_div, by_pc);
                match by_rank {
                    Ok(flag) => prop_assert_eq!(by_div, flag),
                    Err(Error::NoOrdinaryPoint) => {}
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                }
            }

            #[test]
            fn dormant_exponents_are_distinct_and_complete(d in arb_pool_op()) {
                let n = d.order().unwrap();
                let p = d.prime().get() as usize;
                prop_assume!(n >= 1 && n <= p);
                prop_assume!(dormant_by_division(&d).unwrap());
                for point in singular_points(&d).into_iter().chain([PointP1::Infinity]) {
                    let e = exponents_at(&d, point).unwrap();
                    prop_assert_eq!(e.len(), n);
                }
            }
        }
    }
}
