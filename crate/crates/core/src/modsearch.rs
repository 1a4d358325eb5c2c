//! Exhaustive search for dormant operators with prescribed singular points.
//!
//! The ansatz is a monic operator D = G^n + sum_{i=2..n} a_i G^{n-i} in the
//! Partial gauge with vanishing subleading coefficient, where a_i is a
//! polynomial of degree at most i(r-2) over the i-th power of the product of
//! the finite marked points. Prescribing the local exponents at every marked
//! point pins each a_i on an affine subspace; the remaining free parameters
//! are gridded exhaustively and every candidate is tested for dormancy by
//! division.

use crate::dormancy::{central_element, dormant_by_pcurvature, exponents_at};
use crate::duality::{bc_dualize, self_duality_kind, SelfDualityKind};
use crate::error::{Error, Result};
use crate::exactalg::{clear_denominators, Fp, Poly, Prime, RationalFunction};
use crate::linalg::solve_affine;
use crate::ore::{Gauge, PointP1, SkewOperator};
use crate::radii::{enumerate_classes, enumerate_symmetric_classes, ExponentSet, RadiusClass};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Default cap on the number of dormancy tests a search may schedule.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub prime: Prime,
    pub order: usize,
    /// Marked points, at least three, pairwise distinct; at most one of them
    /// may be the point at infinity.
    pub points: Vec<PointP1>,
    /// Optional per-point radius prescription, aligned with `points`.
    pub radii: Option<Vec<RadiusClass>>,
    /// `None` searches all operators; a kind restricts to self-dual ones.
    pub self_dual: SelfDualityKind,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DormantOper {
    pub operator: SkewOperator,
    /// Local exponents at each marked point, aligned with the spec points.
    pub exponents: Vec<ExponentSet>,
    pub radii: Vec<RadiusClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    Sl,
    So,
    Sp,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Sl => write!(f, "sl"),
            TableKind::So => write!(f, "so"),
            TableKind::Sp => write!(f, "sp"),
        }
    }
}

impl TableKind {
    pub fn from_filter(kind: SelfDualityKind) -> TableKind {
        match kind {
            SelfDualityKind::None => TableKind::Sl,
            SelfDualityKind::Orthogonal => TableKind::So,
            SelfDualityKind::Symplectic => TableKind::Sp,
        }
    }
}

/// Counts of dormant operators keyed by the unordered multiset of their
/// radii over the marked points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    pub prime: Prime,
    pub order: usize,
    pub kind: TableKind,
    pub entries: BTreeMap<Vec<RadiusClass>, u64>,
}

impl DegreeTable {
    pub fn count(&self, key: &[RadiusClass]) -> u64 {
        let mut k = key.to_vec();
        k.sort();
        self.entries.get(&k).copied().unwrap_or(0)
    }

    /// Builds a table from possibly ordered keys. Keys are sorted; two keys
    /// that collide after sorting must agree, otherwise the input was not
    /// symmetric under slot permutation.
    pub fn from_entries(
        prime: Prime,
        order: usize,
        kind: TableKind,
        raw: impl IntoIterator<Item = (Vec<RadiusClass>, u64)>,
    ) -> Result<DegreeTable> {
        let mut entries: BTreeMap<Vec<RadiusClass>, u64> = BTreeMap::new();
        for (key, count) in raw {
            let mut k = key;
            k.sort();
            match entries.insert(k.clone(), count) {
                Some(prev) if prev != count => {
                    let names: Vec<String> = k.iter().map(|c| c.to_string()).collect();
                    return Err(Error::AsymmetricTable(format!(
                        "{} maps to both {prev} and {count}",
                        names.join("; ")
                    )));
                }
                _ => {}
            }
        }
        Ok(DegreeTable { prime, order, kind, entries })
    }
}

fn triangle(n: usize, p: u64) -> u64 {
    ((n * (n - 1) / 2) as u64) % p
}

/// The unique translate of the class whose exponent sum matches the value
/// pinned by the vanishing subleading coefficient: n(n-1)/2 at finite marked
/// points and its negative at infinity.
fn pinned_set(class: &RadiusClass, n: usize, at_infinity: bool) -> ExponentSet {
    let prime = class.prime();
    let p = prime.get();
    let mut target = Fp::new(triangle(n, p), prime);
    if at_infinity {
        target = -target;
    }
    let s0 = class.rep().sum();
    let step = Fp::new(n as u64 % p, prime).inv().expect("order below p");
    let t = (target - s0) * step;
    class.rep().translate(t.value())
}

/// s(s-1)...(s-k+1).
fn falling(prime: Prime, k: usize) -> Poly {
    let mut f = Poly::one(prime);
    for l in 0..k {
        f = f.mul(&Poly::from_i64(prime, &[-(l as i64), 1]));
    }
    f
}

/// s(s+1)...(s+k-1).
fn rising(prime: Prime, k: usize) -> Poly {
    let mut f = Poly::one(prime);
    for l in 0..k {
        f = f.mul(&Poly::from_i64(prime, &[l as i64, 1]));
    }
    f
}

fn from_roots(set: &ExponentSet) -> Poly {
    let prime = set.prime();
    let mut f = Poly::one(prime);
    for &e in set.elems() {
        f = f.mul(&Poly::from_i64(prime, &[-(e as i64), 1]));
    }
    f
}

/// Writes chi - base(n) in the triangular basis base(0..n-1) and returns the
/// coordinates. The base(n-1) coordinate always vanishes for a pinned
/// exponent sum; the caller reads coordinates n-i for i = 2..n.
fn expand_triangular(chi: &Poly, base: impl Fn(usize) -> Poly, n: usize) -> Vec<Fp> {
    let prime = chi.prime();
    let mut r = chi.sub(&base(n));
    let mut w = vec![Fp::zero(prime); n];
    for k in (0..n).rev() {
        let c = r.coeff(k);
        w[k] = c;
        if !c.is_zero() {
            r = r.sub(&base(k).scale(c));
        }
    }
    debug_assert!(r.is_zero(), "triangular expansion must terminate");
    debug_assert!(n < 2 || w[n - 1].is_zero(), "pinned sum kills the top coordinate");
    w
}

struct Ansatz {
    prime: Prime,
    order: usize,
    finite: Vec<Fp>,
    /// Degree bound i(r-2) of the numerator of a_i, indexed by i - 2.
    degs: Vec<usize>,
    /// Product of (x - t) over the finite marked points.
    q: Poly,
}

impl Ansatz {
    fn build(spec: &SearchSpec) -> Ansatz {
        let r = spec.points.len();
        let finite: Vec<Fp> = spec
            .points
            .iter()
            .filter_map(|pt| match pt {
                PointP1::Finite(c) => Some(*c),
                PointP1::Infinity => None,
            })
            .collect();
        let prime = spec.prime;
        let mut q = Poly::one(prime);
        for &t in &finite {
            q = q.mul(&Poly::from_i64(prime, &[-(t.value() as i64), 1]));
        }
        let degs = (2..=spec.order).map(|i| i * (r - 2)).collect();
        Ansatz { prime, order: spec.order, finite, degs, q }
    }

    fn param_len(&self) -> usize {
        self.degs.iter().map(|d| d + 1).sum()
    }

    /// Builds the operator for one point of the parameter space.
    fn materialize(&self, coeffs: &[Fp]) -> SkewOperator {
        let n = self.order;
        let prime = self.prime;
        let mut out = vec![RationalFunction::zero(prime); n + 1];
        out[n] = RationalFunction::one(prime);
        let mut offset = 0;
        for (idx, &d) in self.degs.iter().enumerate() {
            let i = idx + 2;
            let vals: Vec<u64> = coeffs[offset..offset + d + 1].iter().map(|c| c.value()).collect();
            offset += d + 1;
            let num = Poly::new(prime, vals);
            if num.is_zero() {
                continue;
            }
            let den = self.q.pow(i as u64);
            out[n - i] = RationalFunction::new(num, den).expect("nonzero denominator");
        }
        SkewOperator::new(Gauge::Partial, prime, out)
    }

    /// The directional part of the family: coefficients read from a basis
    /// vector of the parameter space, with no monic head.
    fn materialize_direction(&self, b: &[Fp]) -> SkewOperator {
        let n = self.order;
        let prime = self.prime;
        let mut out = vec![RationalFunction::zero(prime); n + 1];
        let mut offset = 0;
        for (idx, &d) in self.degs.iter().enumerate() {
            let i = idx + 2;
            let vals: Vec<u64> = b[offset..offset + d + 1].iter().map(|c| c.value()).collect();
            offset += d + 1;
            let num = Poly::new(prime, vals);
            if num.is_zero() {
                continue;
            }
            let den = self.q.pow(i as u64);
            out[n - i] = RationalFunction::new(num, den).expect("nonzero denominator");
        }
        SkewOperator::new(Gauge::Partial, prime, out)
    }
}

struct ParamSpace {
    origin: Vec<Fp>,
    basis: Vec<Vec<Fp>>,
}

impl ParamSpace {
    fn point(&self, lambda: &[Fp]) -> Vec<Fp> {
        let mut v = self.origin.clone();
        for (l, b) in lambda.iter().zip(&self.basis) {
            if l.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = *x + *l * *y;
            }
        }
        v
    }
}

/// Solves the per-point indicial constraints for one exponent tuple. Returns
/// None when the prescription is unsatisfiable within the ansatz.
fn indicial_params(ansatz: &Ansatz, tuple: &[ExponentSet], spec: &SearchSpec) -> Option<ParamSpace> {
    let prime = ansatz.prime;
    let n = ansatz.order;
    let zero = Fp::zero(prime);

    // expansion coordinates per marked point, in spec order
    let mut finite_w: Vec<Vec<Fp>> = Vec::new();
    let mut inf_v: Option<Vec<Fp>> = None;
    for (pt, set) in spec.points.iter().zip(tuple) {
        let chi = from_roots(set);
        match pt {
            PointP1::Finite(_) => {
                finite_w.push(expand_triangular(&chi, |k| falling(prime, k), n));
            }
            PointP1::Infinity => {
                inf_v = Some(expand_triangular(&chi, |k| rising(prime, k), n));
            }
        }
    }

    let mut origin = Vec::new();
    let mut basis_blocks: Vec<(usize, Vec<Vec<Fp>>)> = Vec::new();
    let total = ansatz.param_len();
    let mut offset = 0;
    for (idx, &d) in ansatz.degs.iter().enumerate() {
        let i = idx + 2;
        let mut rows: Vec<Vec<Fp>> = Vec::new();
        let mut rhs: Vec<Fp> = Vec::new();
        for (j, &tj) in ansatz.finite.iter().enumerate() {
            let mut row = Vec::with_capacity(d + 1);
            let mut pw = Fp::one(prime);
            for _ in 0..=d {
                row.push(pw);
                pw = pw * tj;
            }
            rows.push(row);
            // P_i(t_j) = w_{n-i} * prod_{l != j} (t_j - t_l)^i
            let mut scale = Fp::one(prime);
            for (l, &tl) in ansatz.finite.iter().enumerate() {
                if l != j {
                    let diff = tj - tl;
                    for _ in 0..i {
                        scale = scale * diff;
                    }
                }
            }
            rhs.push(finite_w[j][n - i] * scale);
        }
        if let Some(v) = &inf_v {
            let mut row = vec![zero; d + 1];
            row[d] = Fp::one(prime);
            rows.push(row);
            // leading coefficient of P_i carries the sign of the gauge flip
            // at infinity
            let sign = if i % 2 == 0 { v[n - i] } else { -v[n - i] };
            rhs.push(sign);
        }
        let (part, hom) = solve_affine(&rows, &rhs, d + 1, &zero)?;
        origin.extend(part);
        basis_blocks.push((offset, hom));
        offset += d + 1;
    }
    debug_assert_eq!(origin.len(), total);

    let mut basis = Vec::new();
    for (off, hom) in basis_blocks {
        for h in hom {
            let mut v = vec![zero; total];
            v[off..off + h.len()].copy_from_slice(&h);
            basis.push(v);
        }
    }
    Some(ParamSpace { origin, basis })
}

/// Imposes adj(D) = (-1)^n D as linear conditions on the parameters. The
/// residual coefficients, cleared by q^{2n}, are affine in the parameters,
/// so two evaluations per basis vector recover the linear map exactly.
fn self_dual_reduce(ansatz: &Ansatz, space: ParamSpace) -> Option<ParamSpace> {
    let prime = ansatz.prime;
    let n = ansatz.order;
    let zero = Fp::zero(prime);
    let clear = RationalFunction::from_poly(ansatz.q.pow(2 * n as u64));
    let bound = 2 * n * ansatz.q.degree().unwrap_or(0) + ansatz.degs.last().copied().unwrap_or(0) + 1;

    let residual = |coeffs: &[Fp]| -> Vec<Fp> {
        let d = ansatz.materialize(coeffs);
        let signed = if n % 2 == 0 { d.clone() } else { d.neg() };
        let e = d.adjoint().sub(&signed);
        let mut out = vec![zero; (n + 1) * bound];
        for j in 0..=n {
            let c = e.coeff(j);
            if c.is_zero() {
                continue;
            }
            let cleared = c.mul(&clear);
            let poly = cleared.as_poly().expect("denominator divides the clearing power");
            for (k, &v) in poly.coeffs().iter().enumerate() {
                out[j * bound + k] = Fp::new(v, prime);
            }
        }
        out
    };

    let r0 = residual(&space.origin);
    let f = space.basis.len();
    if f == 0 {
        return if r0.iter().all(|x| x.is_zero()) { Some(space) } else { None };
    }
    let mut cols: Vec<Vec<Fp>> = Vec::with_capacity(f);
    for b in &space.basis {
        let shifted: Vec<Fp> = space.origin.iter().zip(b).map(|(x, y)| *x + *y).collect();
        let r = residual(&shifted);
        cols.push(r.iter().zip(&r0).map(|(a, b)| *a - *b).collect());
    }
    let rows: Vec<Vec<Fp>> = (0..r0.len())
        .map(|m| cols.iter().map(|c| c[m]).collect())
        .collect();
    let rhs: Vec<Fp> = r0.iter().map(|x| -*x).collect();
    let (l0, lb) = solve_affine(&rows, &rhs, f, &zero)?;

    let origin = space.point(&l0);
    let basis = lb.iter().map(|v| {
        let mut w = vec![zero; space.origin.len()];
        for (c, b) in v.iter().zip(&space.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(b) {
                *x = *x + *c * *y;
            }
        }
        w
    });
    Some(ParamSpace { origin, basis: basis.collect() })
}

/// A polynomial in the accessory parameter with rational-function
/// coefficients, lowest power first.
type Lambda = Vec<RationalFunction>;

fn lam_trim(v: &mut Lambda) {
    while v.last().is_some_and(|r| r.is_zero()) {
        v.pop();
    }
}

/// acc -= t^shift * c * s, where t is the accessory parameter.
fn lam_sub_scaled(acc: &mut Lambda, c: &Lambda, s: &RationalFunction, shift: usize) {
    if s.is_zero() || c.is_empty() {
        return;
    }
    let prime = s.prime();
    if acc.len() < c.len() + shift {
        acc.resize(c.len() + shift, RationalFunction::zero(prime));
    }
    for (j, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let t = cj.mul(s);
        acc[j + shift] = acc[j + shift].sub(&t);
    }
    lam_trim(acc);
}

/// Degree of the dormancy locus inside the pencil D0 + t*D1 with D0 monic
/// and D1 of lower order. The remainder of the central element on division
/// by the pencil is polynomial in t, the locus in the affine t-line is cut
/// out by the gcd of all its coefficient conditions, and the gcd degree
/// counts the points over the algebraic closure with multiplicity.
fn pencil_locus_degree(d0: &SkewOperator, d1: &SkewOperator) -> Result<u64> {
    let prime = d0.prime();
    let p = prime.get() as usize;
    let n = d0.order().expect("monic family head");
    let central = central_element(d0.gauge(), prime);
    let gen = SkewOperator::generator(d0.gauge(), prime);

    let mut m0 = vec![d0.clone()];
    let mut m1 = vec![d1.clone()];
    for _ in 0..p - n {
        m0.push(gen.mul(m0.last().unwrap()));
        m1.push(gen.mul(m1.last().unwrap()));
    }

    let mut rem: Vec<Lambda> = (0..=p)
        .map(|k| {
            let c = central.coeff(k);
            if c.is_zero() {
                Vec::new()
            } else {
                vec![c]
            }
        })
        .collect();

    for k in (n..=p).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_empty() {
            continue;
        }
        let j = k - n;
        // the leading coefficient of G^j*D0 is 1 and G^j*D1 has lower
        // order, so taking c out clears index k exactly
        for i in 0..k {
            lam_sub_scaled(&mut rem[i], &c, &m0[j].coeff(i), 0);
            lam_sub_scaled(&mut rem[i], &c, &m1[j].coeff(i), 1);
        }
    }

    let mut g: Option<Poly> = None;
    for lam in rem.iter().take(n) {
        if lam.is_empty() {
            continue;
        }
        let (nums, _) = clear_denominators(lam);
        let top = nums.iter().filter_map(|q| q.degree()).max().unwrap_or(0);
        for m in 0..=top {
            let coeffs: Vec<u64> = nums.iter().map(|q| q.coeff(m).value()).collect();
            let cond = Poly::new(prime, coeffs);
            if cond.is_zero() {
                continue;
            }
            g = Some(match g {
                None => cond,
                Some(cur) => cur.gcd(&cond),
            });
        }
    }
    match g {
        None => Err(Error::OracleDisagreement(
            "one-parameter dormancy locus is the whole line".into(),
        )),
        Some(g) => Ok(g.degree().unwrap_or(0) as u64),
    }
}

/// Number of dormant members of the family over the algebraic closure,
/// multiplicity included.
fn geometric_count(ansatz: &Ansatz, space: &ParamSpace, central: &SkewOperator) -> Result<u64> {
    match space.basis.len() {
        0 => {
            let d = ansatz.materialize(&space.origin);
            let rem = central.rem_right(&d)?;
            Ok(if rem.is_zero() { 1 } else { 0 })
        }
        1 => {
            let d0 = ansatz.materialize(&space.origin);
            let d1 = ansatz.materialize_direction(&space.basis[0]);
            pencil_locus_degree(&d0, &d1)
        }
        f => Err(Error::InvalidSpec(format!(
            "closure counting over a {f}-parameter family is unsupported; \
             use the operator enumeration instead"
        ))),
    }
}

fn validate(spec: &SearchSpec) -> Result<()> {
    let p = spec.prime.get() as usize;
    let n = spec.order;
    if n == 0 || n >= p {
        return Err(Error::OrderOutOfRange { order: n, min: 1, max: p - 1 });
    }
    let r = spec.points.len();
    if r < 3 {
        return Err(Error::InvalidSpec(format!("{r} marked points, need at least 3")));
    }
    for (a, pa) in spec.points.iter().enumerate() {
        for pb in spec.points.iter().skip(a + 1) {
            if pa == pb {
                return Err(Error::DuplicateElements);
            }
        }
    }
    if let Some(radii) = &spec.radii {
        if radii.len() != r {
            return Err(Error::InconsistentRadiiFilter(format!(
                "{} radii for {r} marked points",
                radii.len()
            )));
        }
        for class in radii {
            if class.prime() != spec.prime {
                return Err(Error::PrimeMismatch);
            }
            if class.size() != n {
                return Err(Error::InconsistentRadiiFilter(format!(
                    "class size {} does not match order {n}",
                    class.size()
                )));
            }
        }
    }
    if spec.self_dual != SelfDualityKind::None {
        let want_odd = spec.self_dual == SelfDualityKind::Orthogonal;
        if (n % 2 == 1) != want_odd {
            return Err(Error::InconsistentRadiiFilter(format!(
                "{} filter is impossible at order {n}",
                spec.self_dual
            )));
        }
        if let Some(radii) = &spec.radii {
            if let Some(bad) = radii.iter().find(|c| !c.is_symmetric()) {
                return Err(Error::InconsistentRadiiFilter(format!(
                    "{bad} is not symmetric, so no self-dual operator realizes it"
                )));
            }
        }
    }
    Ok(())
}

fn fuchs_target(spec: &SearchSpec) -> Fp {
    let prime = spec.prime;
    let p = prime.get();
    let tri = Fp::new(triangle(spec.order, p), prime);
    let mut total = Fp::zero(prime);
    for pt in &spec.points {
        match pt {
            PointP1::Finite(_) => total = total + tri,
            PointP1::Infinity => total = total - tri,
        }
    }
    total
}

struct Job {
    tuple: Vec<ExponentSet>,
    radii: Vec<RadiusClass>,
    space: ParamSpace,
}

/// Resolves every exponent tuple to its affine parameter space and totals
/// the grid work the tuples would require.
fn resolve_jobs(spec: &SearchSpec, ansatz: &Ansatz) -> Result<(Vec<Job>, u128)> {
    validate(spec)?;
    let prime = spec.prime;
    let p = prime.get();
    let n = spec.order;

    let per_point: Vec<Vec<RadiusClass>> = match &spec.radii {
        Some(radii) => radii.iter().map(|c| vec![c.clone()]).collect(),
        None => {
            let pool = if spec.self_dual != SelfDualityKind::None {
                enumerate_symmetric_classes(prime, n)?
            } else {
                enumerate_classes(prime, n)?
            };
            spec.points.iter().map(|_| pool.clone()).collect()
        }
    };

    let mut jobs: Vec<Job> = Vec::new();
    let mut needed: u128 = 0;
    let mut cursor = vec![0usize; spec.points.len()];
    'tuples: loop {
        let classes: Vec<&RadiusClass> =
            cursor.iter().zip(&per_point).map(|(&i, pool)| &pool[i]).collect();
        let tuple: Vec<ExponentSet> = classes
            .iter()
            .zip(&spec.points)
            .map(|(c, pt)| pinned_set(c, n, *pt == PointP1::Infinity))
            .collect();
        let space = indicial_params(ansatz, &tuple, spec).and_then(|s| {
            if spec.self_dual != SelfDualityKind::None {
                self_dual_reduce(ansatz, s)
            } else {
                Some(s)
            }
        });
        if let Some(space) = space {
            needed += (p as u128).pow(space.basis.len() as u32);
            jobs.push(Job { tuple, radii: classes.into_iter().cloned().collect(), space });
        }
        for slot in (0..cursor.len()).rev() {
            cursor[slot] += 1;
            if cursor[slot] < per_point[slot].len() {
                continue 'tuples;
            }
            cursor[slot] = 0;
            if slot == 0 {
                break 'tuples;
            }
        }
    }
    if needed > spec.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: needed.min(u64::MAX as u128) as u64,
            budget: spec.budget,
        });
    }
    Ok((jobs, needed))
}

/// Enumerates every dormant operator with coefficients in the base field
/// matching the spec, in a deterministic order: exponent tuples
/// lexicographically by class, then grid points lexicographically.
pub fn enumerate_dormant(spec: &SearchSpec) -> Result<Vec<DormantOper>> {
    let prime = spec.prime;
    let p = prime.get();
    let ansatz = Ansatz::build(spec);
    let (jobs, _) = resolve_jobs(spec, &ansatz)?;

    let central = central_element(Gauge::Partial, prime);
    let mut found: Vec<DormantOper> = Vec::new();
    for Job { tuple, radii, space } in jobs {
        let f = space.basis.len();
        let count = (p as u128).pow(f as u32) as u64;
        let survivors: Vec<SkewOperator> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut lambda = vec![Fp::zero(prime); f];
                let mut rest = idx;
                for k in (0..f).rev() {
                    lambda[k] = Fp::new(rest % p, prime);
                    rest /= p;
                }
                let d = ansatz.materialize(&space.point(&lambda));
                let rem = central.rem_right(&d).expect("monic divisor");
                rem.is_zero().then_some(d)
            })
            .collect();
        for d in survivors {
            found.push(DormantOper {
                operator: d,
                exponents: tuple.clone(),
                radii: radii.clone(),
            });
        }
    }

    // independent post-checks on everything emitted
    let target = fuchs_target(spec);
    for (k, item) in found.iter().enumerate() {
        let mut sum = Fp::zero(prime);
        for (pt, expect) in spec.points.iter().zip(&item.exponents) {
            let got = exponents_at(&item.operator, *pt)?;
            if got != *expect {
                return Err(Error::OracleDisagreement(format!(
                    "exponents at {pt} disagree with the prescription for {}",
                    item.operator
                )));
            }
            sum = sum + got.sum();
        }
        if sum != target {
            return Err(Error::OracleDisagreement(format!(
                "exponent sum breaks the global degree relation for {}",
                item.operator
            )));
        }
        if spec.self_dual != SelfDualityKind::None
            && self_duality_kind(&item.operator) != spec.self_dual
        {
            return Err(Error::OracleDisagreement(format!(
                "self-duality reduction leaked {}",
                item.operator
            )));
        }
        // curvature spot-check on a deterministic subsample
        let step = (found.len() / 8).max(1);
        if k % step == 0 {
            let (flag, _) = dormant_by_pcurvature(&item.operator)?;
            if !flag {
                return Err(Error::OracleDisagreement(format!(
                    "division and curvature disagree on {}",
                    item.operator
                )));
            }
        }
    }
    Ok(found)
}

/// Tabulates the degree of the dormancy locus for each multiset of radii.
/// The entry is the number of operators realizing one ordered prescription
/// of that multiset, counted over the algebraic closure with multiplicity;
/// permutation symmetry of the ordered counts makes the choice of ordering
/// immaterial. Conjugate families can make an entry exceed the number of
/// operators the enumeration lists, since the latter stays over the base
/// field.
pub fn count_by_radii(spec: &SearchSpec) -> Result<DegreeTable> {
    let ansatz = Ansatz::build(spec);
    let (jobs, _) = resolve_jobs(spec, &ansatz)?;
    let central = central_element(Gauge::Partial, spec.prime);
    let mut ordered: BTreeMap<Vec<RadiusClass>, u64> = BTreeMap::new();
    for job in &jobs {
        let count = geometric_count(&ansatz, &job.space, &central)?;
        ordered.insert(job.radii.clone(), count);
    }
    let mut entries: BTreeMap<Vec<RadiusClass>, u64> = BTreeMap::new();
    if spec.radii.is_none() {
        // unfiltered searches yield complete tables: multisets without a
        // satisfiable prescription carry an explicit zero; the sorted
        // multiset is itself one valid ordered prescription, so it indexes
        // the lookup
        let mut pool = if spec.self_dual != SelfDualityKind::None {
            enumerate_symmetric_classes(spec.prime, spec.order)?
        } else {
            enumerate_classes(spec.prime, spec.order)?
        };
        pool.sort();
        for key in itertools::Itertools::combinations_with_replacement(
            pool.into_iter(),
            spec.points.len(),
        ) {
            let count = ordered.get(&key).copied().unwrap_or(0);
            entries.insert(key, count);
        }
    } else {
        let mut key = spec.radii.clone().unwrap();
        key.sort();
        entries.insert(key, 0);
        for (key, count) in ordered {
            let mut k = key;
            k.sort();
            entries.insert(k, count);
        }
    }
    Ok(DegreeTable {
        prime: spec.prime,
        order: spec.order,
        kind: TableKind::from_filter(spec.self_dual),
        entries,
    })
}

/// Ordered-tuple counts, used to test permutation symmetry of the tables.
pub(crate) fn count_by_radii_ordered(found: &[DormantOper]) -> BTreeMap<Vec<RadiusClass>, u64> {
    let mut entries = BTreeMap::new();
    for item in found {
        *entries.entry(item.radii.clone()).or_insert(0) += 1;
    }
    entries
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcReport {
    pub prime: Prime,
    pub ell: usize,
    pub m: usize,
    pub arity: usize,
    pub so_count: usize,
    pub sp_count: usize,
    pub bijection: bool,
    /// so-side ordered radii tuple -> (so count, sp count at the transported
    /// tuple).
    pub pairs_by_radii: BTreeMap<Vec<RadiusClass>, (u64, u64)>,
    pub mismatches: Vec<String>,
}

/// Standard marked points for a bc comparison: 0, 1, ..., r-2 and infinity.
pub fn standard_points(prime: Prime, arity: usize) -> Result<Vec<PointP1>> {
    if arity < 3 || arity as u64 > prime.get() + 1 {
        return Err(Error::InvalidSpec(format!("cannot place {arity} marked points")));
    }
    let mut pts: Vec<PointP1> =
        (0..arity as u64 - 1).map(|c| PointP1::Finite(Fp::new(c, prime))).collect();
    pts.push(PointP1::Infinity);
    Ok(pts)
}

/// Enumerates the orthogonal side at order 2l+1 and the symplectic side at
/// order 2m, maps the first through duality, and checks the outcome is a
/// radii-compatible bijection.
pub fn verify_bc_bijection(
    prime: Prime,
    ell: usize,
    m: usize,
    arity: usize,
    budget: u64,
) -> Result<BcReport> {
    let p = prime.get() as usize;
    if p != 2 * (ell + m) + 1 {
        return Err(Error::ArityMismatch { p: prime.get(), ell, m });
    }
    let points = standard_points(prime, arity)?;
    let so_spec = SearchSpec {
        prime,
        order: 2 * ell + 1,
        points: points.clone(),
        radii: None,
        self_dual: SelfDualityKind::Orthogonal,
        budget,
    };
    let sp_spec = SearchSpec {
        prime,
        order: 2 * m,
        points,
        radii: None,
        self_dual: SelfDualityKind::Symplectic,
        budget,
    };
    let so = enumerate_dormant(&so_spec)?;
    let sp = enumerate_dormant(&sp_spec)?;

    let mut mismatches = Vec::new();
    let mut hit = vec![false; sp.len()];
    for item in &so {
        let dual = match bc_dualize(&item.operator) {
            Ok(pair) => pair.dual,
            Err(e) => {
                mismatches.push(format!("dualizing {} failed: {e}", item.operator));
                continue;
            }
        };
        match sp.iter().position(|s| s.operator == dual) {
            Some(j) if !hit[j] => {
                hit[j] = true;
                let transported: Vec<RadiusClass> =
                    item.radii.iter().map(|c| c.tri()).collect();
                if sp[j].radii != transported {
                    mismatches.push(format!(
                        "radii of {} do not transport to its dual",
                        item.operator
                    ));
                }
            }
            Some(_) => mismatches.push(format!("dual of {} already claimed", item.operator)),
            None => mismatches.push(format!(
                "dual of {} is missing from the symplectic side",
                item.operator
            )),
        }
    }
    for (j, used) in hit.iter().enumerate() {
        if !used {
            mismatches.push(format!("{} has no preimage", sp[j].operator));
        }
    }

    let so_ordered = count_by_radii_ordered(&so);
    let sp_ordered = count_by_radii_ordered(&sp);
    let mut pairs = BTreeMap::new();
    for (key, &count) in &so_ordered {
        let transported: Vec<RadiusClass> = key.iter().map(|c| c.tri()).collect();
        let other = sp_ordered.get(&transported).copied().unwrap_or(0);
        pairs.insert(key.clone(), (count, other));
    }
    let bijection = mismatches.is_empty()
        && so.len() == sp.len()
        && pairs.values().all(|&(a, b)| a == b);
    Ok(BcReport {
        prime,
        ell,
        m,
        arity,
        so_count: so.len(),
        sp_count: sp.len(),
        bijection,
        pairs_by_radii: pairs,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dormancy::dormant_by_division;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn spec(p: u64, n: usize, sd: SelfDualityKind) -> SearchSpec {
        let prime = pr(p);
        SearchSpec {
            prime,
            order: n,
            points: standard_points(prime, 3).unwrap(),
            radii: None,
            self_dual: sd,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Every polynomial numerator tuple within the ansatz degree bounds,
    /// with no exponent bookkeeping at all.
    fn raw_grid(s: &SearchSpec) -> Vec<SkewOperator> {
        let ansatz = Ansatz::build(s);
        let p = s.prime.get();
        let total = ansatz.param_len();
        let count = (p as u128).pow(total as u32) as u64;
        let central = central_element(Gauge::Partial, s.prime);
        let mut out = Vec::new();
        for idx in 0..count {
            let mut coeffs = vec![Fp::zero(s.prime); total];
            let mut rest = idx;
            for k in (0..total).rev() {
                coeffs[k] = Fp::new(rest % p, s.prime);
                rest /= p;
            }
            let d = ansatz.materialize(&coeffs);
            if !central.rem_right(&d).unwrap().is_zero() {
                continue;
            }
            if s.self_dual != SelfDualityKind::None && self_duality_kind(&d) != s.self_dual {
                continue;
            }
            out.push(d);
        }
        out
    }

    #[test]
    fn order_one_finds_only_the_generator() {
        for p in [3u64, 5] {
            let found = enumerate_dormant(&spec(p, 1, SelfDualityKind::None)).unwrap();
            assert_eq!(found.len(), 1);
            assert_eq!(found[0].operator, SkewOperator::generator(Gauge::Partial, pr(p)));
            let table = count_by_radii(&spec(p, 1, SelfDualityKind::None)).unwrap();
            assert_eq!(table.entries.len(), 1);
            assert_eq!(table.entries.values().copied().collect::<Vec<_>>(), vec![1]);
        }
    }

    #[test]
    fn matches_raw_grid_at_order_two() {
        let s = spec(3, 2, SelfDualityKind::None);
        let found = enumerate_dormant(&s).unwrap();
        let raw = raw_grid(&s);
        assert_eq!(found.len(), raw.len());
        for item in &found {
            assert!(raw.contains(&item.operator));
            assert!(dormant_by_division(&item.operator).unwrap());
        }
    }

    #[test]
    fn matches_raw_grid_for_self_dual() {
        let s = spec(5, 2, SelfDualityKind::Symplectic);
        let found = enumerate_dormant(&s).unwrap();
        let raw = raw_grid(&s);
        assert_eq!(found.len(), raw.len());
        for item in &found {
            assert!(raw.contains(&item.operator));
        }
    }

    #[test]
    fn radii_filter_restricts_the_output() {
        let s = spec(5, 2, SelfDualityKind::None);
        let all = enumerate_dormant(&s).unwrap();
        assert!(!all.is_empty());
        let key = all[0].radii.clone();
        let filtered = enumerate_dormant(&SearchSpec {
            radii: Some(key.clone()),
            ..s.clone()
        })
        .unwrap();
        assert!(!filtered.is_empty());
        for item in &filtered {
            assert_eq!(item.radii, key);
        }
        let expect = all.iter().filter(|o| o.radii == key).count();
        assert_eq!(filtered.len(), expect);
    }

    #[test]
    fn table_is_permutation_symmetric() {
        let s = spec(5, 2, SelfDualityKind::None);
        let found = enumerate_dormant(&s).unwrap();
        let ordered = count_by_radii_ordered(&found);
        for (key, &count) in &ordered {
            for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
                let k: Vec<RadiusClass> = perm.iter().map(|&i| key[i].clone()).collect();
                assert_eq!(ordered.get(&k).copied().unwrap_or(0), count);
            }
        }
    }

    #[test]
    fn closure_counts_see_conjugate_points() {
        // over four standard points at order two, every slot carrying the
        // class of {0,2} pins a one-parameter family whose dormancy locus
        // is an irreducible quadratic: no operator over the base field,
        // a conjugate pair in the closure
        let prime = pr(5);
        let b = RadiusClass::from_i64(prime, &[0, 2]).unwrap();
        let mut s = spec(5, 2, SelfDualityKind::None);
        s.points = standard_points(prime, 4).unwrap();
        s.radii = Some(vec![b.clone(), b.clone(), b.clone(), b.clone()]);
        assert!(enumerate_dormant(&s).unwrap().is_empty());
        let table = count_by_radii(&s).unwrap();
        assert_eq!(table.count(&[b.clone(), b.clone(), b.clone(), b]), 2);
    }

    #[test]
    fn counts_match_the_rational_enumeration_at_three_points() {
        // with three marked points the accessory dimension is zero and the
        // closure count agrees with the list of operators over the base
        // field, bucket by bucket
        for p in [3u64, 5, 7] {
            let s = spec(p, 2, SelfDualityKind::None);
            let table = count_by_radii(&s).unwrap();
            let found = enumerate_dormant(&s).unwrap();
            let ordered = count_by_radii_ordered(&found);
            for (key, &count) in &table.entries {
                assert_eq!(ordered.get(key).copied().unwrap_or(0), count);
            }
        }
    }

    #[test]
    fn budget_guard_fires_before_work() {
        let mut s = spec(5, 3, SelfDualityKind::None);
        s.budget = 2;
        match enumerate_dormant(&s) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert!(needed > budget);
                assert_eq!(budget, 2);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_filters_are_rejected() {
        let s = spec(5, 2, SelfDualityKind::Orthogonal);
        assert!(matches!(
            enumerate_dormant(&s),
            Err(Error::InconsistentRadiiFilter(_))
        ));
        // an asymmetric radius cannot carry a self-dual operator
        let asym = RadiusClass::from_i64(pr(7), &[0, 1, 3]).unwrap();
        assert!(!asym.is_symmetric());
        let prime = pr(7);
        let bad = SearchSpec {
            prime,
            order: 3,
            points: standard_points(prime, 3).unwrap(),
            radii: Some(vec![asym.clone(), asym.clone(), asym]),
            self_dual: SelfDualityKind::Orthogonal,
            budget: DEFAULT_BUDGET,
        };
        assert!(matches!(
            enumerate_dormant(&bad),
            Err(Error::InconsistentRadiiFilter(_))
        ));
    }

    #[test]
    fn pinned_representatives_have_the_right_sums() {
        let prime = pr(7);
        for n in 1..6usize {
            for class in enumerate_classes(prime, n).unwrap() {
                let fin = pinned_set(&class, n, false);
                assert_eq!(fin.sum().value(), triangle(n, 7));
                let inf = pinned_set(&class, n, true);
                assert_eq!((inf.sum() + fin.sum()).value(), 0);
                assert_eq!(RadiusClass::new(fin).unwrap(), class);
            }
        }
    }

    #[test]
    fn bc_bijection_smallest_case() {
        let report = verify_bc_bijection(pr(5), 1, 1, 3, DEFAULT_BUDGET).unwrap();
        assert!(report.bijection, "mismatches: {:?}", report.mismatches);
        assert_eq!(report.so_count, report.sp_count);
        assert!(report.so_count > 0);
        for (a, b) in report.pairs_by_radii.values() {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        assert_eq!(
            verify_bc_bijection(pr(5), 1, 2, 3, DEFAULT_BUDGET),
            Err(Error::ArityMismatch { p: 5, ell: 1, m: 2 })
        );
    }
}
