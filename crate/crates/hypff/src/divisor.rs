//! Points and divisors of P^1 over K.
//!
//! A point is a K-rational coordinate, the point at infinity, or a closed
//! point of the base curve (a monic irreducible over F_q of degree >= 2;
//! degree-1 closed points are normalized to their rational coordinate).
//! Divisors are finite integer combinations with closed points weighted by
//! their degree.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::factor::poly_factor_fq;
use crate::ff::FieldElem;
use crate::ktau::KElem;
use crate::poly::Poly;
use std::collections::BTreeMap;
use std::fmt;

type FPoly = Poly<FieldElem>;

/// A point of P^1: K-rational, at infinity, or closed over the base field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    /// The point at infinity.
    Infinity,
    /// A K-rational point with the given t-coordinate.
    Finite(KElem),
    /// A closed point: monic irreducible of degree >= 2 over the base field.
    Closed(FPoly),
}

impl Point {
    pub fn finite(x: KElem) -> Point {
        Point::Finite(x)
    }

    /// Build a closed point from a monic irreducible, normalizing degree 1
    /// to a rational point of the given curve.
    pub fn closed(curve: &Curve, p: FPoly) -> Result<Point> {
        if p.degree() < 1 {
            return Err(Error::Domain("closed point needs degree >= 1".into()));
        }
        if !p.is_monic() {
            return Err(Error::Domain("closed point polynomial must be monic".into()));
        }
        if p.degree() == 1 {
            let root = p.coeff(0).neg();
            return Ok(Point::Finite(curve.scalar(&root)));
        }
        if !crate::factor::is_irreducible(&p) {
            return Err(Error::Domain(format!(
                "closed point polynomial is reducible over F_{}",
                p.field().size()
            )));
        }
        Ok(Point::Closed(p))
    }

    /// Degree over K: 1 for rational points and infinity, deg p for closed.
    pub fn degree(&self) -> i64 {
        match self {
            Point::Infinity | Point::Finite(_) => 1,
            Point::Closed(p) => p.degree(),
        }
    }

    /// Apply n-fold twisting: rational coordinates map through Frobenius,
    /// closed points and infinity are fixed.
    pub fn twist(&self, q: u64, n: i64) -> Result<Point> {
        match self {
            Point::Finite(x) => Ok(Point::Finite(x.frobenius(q, n)?)),
            p => Ok(p.clone()),
        }
    }

    /// Whether this point is fixed by twisting (defined over F_q as a point
    /// of the scheme).
    pub fn is_rational_or_closed(&self, q: u64) -> bool {
        match self {
            Point::Infinity | Point::Closed(_) => true,
            Point::Finite(x) => x
                .as_constant()
                .map_or(false, |c| c.in_subfield(q)),
        }
    }

    /// Do two points share a geometric point? A rational point meets a
    /// closed point exactly when its coordinate is a constant root of it;
    /// a transcendental coordinate can never be.
    pub fn meets(&self, other: &Point, curve: &Curve) -> bool {
        match (self, other) {
            (Point::Closed(p), Point::Finite(x)) | (Point::Finite(x), Point::Closed(p)) => {
                match x.as_constant() {
                    Some(c) => {
                        let mut acc = curve.coeff().zero();
                        for i in (0..=p.degree() as usize).rev() {
                            let emb = embed_base_coeff(curve, &p.coeff(i));
                            acc = acc.mul(&c).add(&emb);
                        }
                        acc.is_zero()
                    }
                    None => false,
                }
            }
            (a, b) => a == b,
        }
    }
}

fn embed_base_coeff(curve: &Curve, c: &FieldElem) -> FieldElem {
    if *c.field() == *curve.coeff() {
        c.clone()
    } else {
        curve.embed().map(c)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "[inf]"),
            Point::Finite(x) => write!(f, "[{x}]"),
            Point::Closed(p) => {
                write!(f, "[")?;
                crate::ktau::fmt_poly_generic(
                    f,
                    p.degree(),
                    |i| {
                        let c = p.coeff(i as usize);
                        if FieldElem::is_zero(&c) {
                            None
                        } else {
                            Some((format!("{c}"), c.is_one()))
                        }
                    },
                    "t",
                )?;
                write!(f, "]")
            }
        }
    }
}

/// A divisor: finite formal sum of points with nonzero integer multiplicity.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    terms: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn of(terms: impl IntoIterator<Item = (Point, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    pub fn point(p: Point) -> Divisor {
        Divisor::of([(p, 1)])
    }

    pub fn add_point(&mut self, p: Point, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn multiplicity(&self, p: &Point) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in rhs.terms() {
            out.add_point(p.clone(), m);
        }
        out
    }

    pub fn sub(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in rhs.terms() {
            out.add_point(p.clone(), -m);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            terms: self.terms.iter().map(|(p, m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor {
            terms: self.terms.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }

    /// Positive part: points with multiplicity > 0.
    pub fn positive_part(&self) -> Divisor {
        Divisor {
            terms: self
                .terms
                .iter()
                .filter(|(_, &m)| m > 0)
                .map(|(p, &m)| (p.clone(), m))
                .collect(),
        }
    }

    /// Negative part, returned with positive multiplicities: D = pos - neg.
    pub fn negative_part(&self) -> Divisor {
        Divisor {
            terms: self
                .terms
                .iter()
                .filter(|(_, &m)| m < 0)
                .map(|(p, &m)| (p.clone(), -m))
                .collect(),
        }
    }

    /// n-fold twist: rational coordinates through Frobenius, multiplicities
    /// preserved.
    pub fn twist(&self, q: u64, n: i64) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (p, m) in self.terms() {
            out.add_point(p.twist(q, n)?, m);
        }
        Ok(out)
    }

    /// Whether every point is F_q-rational or closed (fixed under twisting).
    pub fn is_base_rational(&self, q: u64) -> bool {
        self.terms.keys().all(|p| p.is_rational_or_closed(q))
    }
}

/// True iff the supports are disjoint, counting a rational point whose
/// coordinate is a root of a closed point as meeting it.
pub fn supported_away(e: &Divisor, d: &Divisor, curve: &Curve) -> bool {
    for pe in e.support() {
        for pd in d.support() {
            if pe.meets(pd, curve) {
                return false;
            }
        }
    }
    true
}

/// Split a closed point into its rational points over a larger coefficient
/// field: the deg p distinct roots, in coordinate order.
pub fn splice_closed(p: &FPoly, target: &crate::ff::FieldDesc) -> Result<Vec<Point>> {
    let d = p.degree() as usize;
    let base = p.field();
    if target.p() != base.p() || target.degree() % (base.degree() * d) != 0 {
        return Err(Error::FieldTooSmall(target.size()));
    }
    let emb = crate::ff::FieldEmbed::new(&base, target)?;
    let lifted = p.map(&target.zero(), |c| emb.map(c));
    let factors = poly_factor_fq(&lifted);
    let mut roots = Vec::new();
    for (f, m) in factors {
        if f.degree() != 1 {
            return Err(Error::FieldTooSmall(target.size()));
        }
        for _ in 0..m {
            roots.push(Point::Finite(KElem::constant(f.coeff(0).neg())));
        }
    }
    roots.sort();
    debug_assert_eq!(roots.len(), d);
    Ok(roots)
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, m) in self.terms() {
            if first {
                if m < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if m < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = m.abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    fn curve_f2() -> Curve {
        Curve::new(FieldDesc::new(2, 1, None).unwrap())
    }

    fn fpoly(c: &Curve, cs: &[u64]) -> FPoly {
        Poly::from_coeffs(
            &c.base().zero(),
            cs.iter().map(|&x| c.base().from_u64(x)).collect(),
        )
    }

    #[test]
    fn degree_accounting() {
        let cv = curve_f2();
        let p2 = Point::closed(&cv, fpoly(&cv, &[1, 1, 1])).unwrap();
        let d = Divisor::of([
            (Point::Infinity, -2),
            (p2.clone(), 1),
            (Point::Finite(cv.k_one()), 3),
        ]);
        assert_eq!(d.degree(), -2 + 2 + 3);
    }

    #[test]
    fn degree_one_closed_normalizes() {
        let cv = curve_f2();
        let p = Point::closed(&cv, fpoly(&cv, &[1, 1])).unwrap(); // t + 1
        assert_eq!(p, Point::Finite(cv.k_one()));
    }

    #[test]
    fn twist_fixes_rational() {
        let cv = curve_f2();
        let d = Divisor::of([(Point::Finite(cv.k_zero()), 2), (Point::Infinity, 1)]);
        assert_eq!(d.twist(2, 5).unwrap(), d);
    }

    #[test]
    fn twist_moves_generic() {
        let cv = curve_f2();
        let tau = cv.tau();
        let d = Divisor::of([(Point::Finite(tau.clone()), 1), (Point::Infinity, -1)]);
        let d1 = d.twist(2, 1).unwrap();
        assert_eq!(d1.multiplicity(&Point::Finite(tau.mul(&tau))), 1);
        assert_eq!(d.twist(2, 1).unwrap().twist(2, -1).unwrap(), d);
        assert_eq!(d1.degree(), d.degree());
    }

    #[test]
    fn supported_away_with_closed_roots() {
        // coordinate u in F_4 is a root of t^2+t+1 over F_2
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let cv = Curve::with_coeff(f2, f4).unwrap();
        let p = Point::closed(&cv, fpoly(&cv, &[1, 1, 1])).unwrap();
        let u = KElem::constant(cv.coeff().gen());
        let e = Divisor::point(Point::Finite(u));
        let d = Divisor::point(p);
        assert!(!supported_away(&e, &d, &cv));
        // tau-dependent coordinates never meet closed points
        let e2 = Divisor::point(Point::Finite(cv.tau()));
        assert!(supported_away(&e2, &d, &cv));
    }

    #[test]
    fn splice_quadratic_into_f4() {
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let cv = Curve::with_coeff(f2.clone(), f4.clone()).unwrap();
        let p = fpoly(&cv, &[1, 1, 1]);
        let roots = splice_closed(&p, &f4).unwrap();
        let u = KElem::constant(f4.gen());
        let u1 = KElem::constant(f4.gen().add(&f4.one()));
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Point::Finite(u)));
        assert!(roots.contains(&Point::Finite(u1)));
        // too small
        assert!(matches!(
            splice_closed(&p, &f2),
            Err(Error::FieldTooSmall(2))
        ));
    }
}
