//! Rational functions in t over K: arithmetic, evaluation, twisting,
//! construction from divisors, and divisor computation.
//!
//! Canonical form is a reduced fraction with monic denominator, so equality
//! is structural. Functions built from divisors retain their divisor, which
//! is how `divisor_of` stays available for functions with generic (tau-
//! dependent) zeros and poles; products, powers, and twists propagate it.

use crate::curve::Curve;
use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::factor::poly_factor_fq;
use crate::ff::FieldElem;
use crate::ktau::KElem;
use crate::poly::{Coeff, Poly};
use std::fmt;

pub type TPoly = Poly<KElem>;

/// A rational function on P^1 with coefficients in K.
#[derive(Clone)]
pub struct RatFunc {
    num: TPoly,
    den: TPoly,
    div: Option<Divisor>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}
impl Eq for RatFunc {}

/// Embed a base-field polynomial (a closed point) into K[t].
pub fn closed_to_k(curve: &Curve, p: &Poly<FieldElem>) -> TPoly {
    p.map(&curve.k_zero(), |c| {
        if *c.field() == *curve.coeff() {
            KElem::constant(c.clone())
        } else {
            curve.scalar(c)
        }
    })
}

impl RatFunc {
    pub fn from_parts(num: TPoly, den: TPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RatFunc {
            num,
            den,
            div: None,
        };
        f.reduce();
        f
    }

    pub fn from_poly(num: TPoly) -> RatFunc {
        let den = Poly::one(num.witness());
        RatFunc {
            num,
            den,
            div: None,
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.den.witness());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let lead = self.den.leading();
        if !lead.is_one() {
            let li = lead.inv();
            self.num = self.num.scale(&li);
            self.den = self.den.scale(&li);
        }
    }

    pub fn zero(curve: &Curve) -> RatFunc {
        RatFunc::from_poly(Poly::zero(&curve.k_zero()))
    }

    pub fn one(curve: &Curve) -> RatFunc {
        RatFunc::constant(curve.k_one())
    }

    pub fn constant(c: KElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The coordinate function t.
    pub fn var(curve: &Curve) -> RatFunc {
        let mut f = RatFunc::from_poly(Poly::monomial(curve.k_one(), 1));
        f.div = Some(Divisor::of([
            (Point::Finite(curve.k_zero()), 1),
            (Point::Infinity, -1),
        ]));
        f
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den(&self) -> &TPoly {
        &self.den
    }

    pub fn retained_divisor(&self) -> Option<&Divisor> {
        self.div.as_ref()
    }

    /// Attach a known divisor (callers must supply the true divisor of the
    /// function; checked in debug builds for base-rational functions).
    pub fn set_retained_divisor(&mut self, d: Divisor) {
        debug_assert_eq!(d.degree(), 0);
        self.div = Some(d);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<KElem> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// ord_inf(f) = deg(den) - deg(num); positive means a zero at infinity.
    pub fn ord_inf(&self) -> i64 {
        if self.is_zero() {
            panic!("order of the zero function");
        }
        self.den.degree() - self.num.degree()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::from_parts(num, den)
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::from_parts(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
            div: self.div.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        let mut out = RatFunc::from_parts(self.num.mul(&rhs.num), self.den.mul(&rhs.den));
        out.div = match (&self.div, &rhs.div) {
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => None,
        };
        out
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of the zero function");
        let mut out = RatFunc::from_parts(self.den.clone(), self.num.clone());
        out.div = self.div.as_ref().map(|d| d.neg());
        out
    }

    pub fn div(&self, rhs: &RatFunc) -> RatFunc {
        self.mul(&rhs.inv())
    }

    pub fn scale(&self, c: &KElem) -> RatFunc {
        if c.is_zero() {
            let mut out = RatFunc::from_poly(Poly::zero(self.num.witness()));
            out.div = None;
            return out;
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            div: self.div.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut r = RatFunc::from_poly(Poly::one(self.num.witness()));
        r.div = Some(Divisor::zero());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Product with a single reduction at the end instead of one per factor.
    pub fn product(factors: impl IntoIterator<Item = RatFunc>) -> Option<RatFunc> {
        let mut it = factors.into_iter();
        let first = it.next()?;
        let mut num = first.num;
        let mut den = first.den;
        let mut div = first.div;
        for f in it {
            num = num.mul(&f.num);
            den = den.mul(&f.den);
            div = match (div, f.div) {
                (Some(a), Some(b)) => Some(a.add(&b)),
                _ => None,
            };
        }
        let mut out = RatFunc::from_parts(num, den);
        out.div = div;
        Some(out)
    }

    /// Evaluate at a K-rational coordinate.
    pub fn eval(&self, x: &KElem) -> Result<KElem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(x).div(&d))
    }

    /// Evaluate at a point of P^1 (Finite or Infinity).
    pub fn eval_point(&self, p: &Point) -> Result<KElem> {
        match p {
            Point::Finite(x) => self.eval(x),
            Point::Infinity => {
                if self.is_zero() {
                    return Ok(self.num.witness().clone());
                }
                match self.ord_inf() {
                    o if o > 0 => Ok(self.num.witness().clone()),
                    0 => Ok(self.num.leading()), // den is monic
                    _ => Err(Error::PoleAtPoint),
                }
            }
            Point::Closed(_) => Err(Error::Domain(
                "evaluation at a closed point is not K-valued".into(),
            )),
        }
    }

    /// Order of vanishing at a point (negative at poles).
    pub fn ord_at(&self, p: &Point, curve: &Curve) -> i64 {
        assert!(!self.is_zero(), "order of the zero function");
        match p {
            Point::Infinity => self.ord_inf(),
            Point::Finite(x) => {
                let lin = Poly::from_coeffs(
                    self.num.witness(),
                    vec![x.neg(), x.one_like()],
                );
                self.num.multiplicity(&lin) as i64 - self.den.multiplicity(&lin) as i64
            }
            Point::Closed(pc) => {
                let pk = closed_to_k(curve, pc);
                self.num.multiplicity(&pk) as i64 - self.den.multiplicity(&pk) as i64
            }
        }
    }

    /// n-fold twist: t is fixed, every coefficient maps through Frobenius.
    pub fn twist(&self, q: u64, n: i64) -> Result<RatFunc> {
        let num = poly_twist(&self.num, q, n)?;
        let den = poly_twist(&self.den, q, n)?;
        let div = match &self.div {
            Some(d) => Some(d.twist(q, n)?),
            None => None,
        };
        Ok(RatFunc { num, den, div })
    }

    /// The unique function with the given degree-zero divisor, normalized so
    /// numerator and denominator are monic (hence value 1 at infinity when
    /// regular there).
    pub fn from_divisor(curve: &Curve, e: &Divisor) -> Result<RatFunc> {
        let deg = e.degree();
        if deg != 0 {
            return Err(Error::NonzeroDegree(deg));
        }
        let mut num = Poly::one(&curve.k_zero());
        let mut den = Poly::one(&curve.k_zero());
        for (p, m) in e.terms() {
            let factor = match p {
                Point::Infinity => continue, // absorbed by the degree balance
                Point::Finite(x) => Poly::from_coeffs(
                    &curve.k_zero(),
                    vec![x.neg(), curve.k_one()],
                ),
                Point::Closed(pc) => closed_to_k(curve, pc),
            };
            if m > 0 {
                num = num.mul(&factor.pow(m as u64));
            } else {
                den = den.mul(&factor.pow((-m) as u64));
            }
        }
        let mut f = RatFunc::from_parts(num, den);
        f.div = Some(e.clone());
        Ok(f)
    }

    /// The divisor of zeros and poles. Uses the retained divisor when
    /// present; otherwise requires factorable content: linear parts over K
    /// are read off directly, higher-degree parts must have base-field
    /// coefficients.
    pub fn divisor_of(&self, curve: &Curve) -> Result<Divisor> {
        if let Some(d) = &self.div {
            return Ok(d.clone());
        }
        assert!(!self.is_zero(), "divisor of the zero function");
        let mut out = Divisor::zero();
        accumulate_poly_divisor(curve, &self.num, 1, &mut out)?;
        accumulate_poly_divisor(curve, &self.den, -1, &mut out)?;
        out.add_point(Point::Infinity, self.ord_inf());
        debug_assert_eq!(out.degree(), 0);
        Ok(out)
    }
}

fn poly_twist(p: &TPoly, q: u64, n: i64) -> Result<TPoly> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        coeffs.push(c.frobenius(q, n)?);
    }
    Ok(Poly::from_coeffs(p.witness(), coeffs))
}

fn accumulate_poly_divisor(
    curve: &Curve,
    p: &TPoly,
    sign: i64,
    out: &mut Divisor,
) -> Result<()> {
    if p.is_constant() {
        return Ok(());
    }
    if p.degree() == 1 {
        let root = p.coeff(0).neg().div(&p.coeff(1));
        out.add_point(Point::Finite(root), sign);
        return Ok(());
    }
    // Need constant coefficients; prefer base-field factorization so closed
    // points come out canonical.
    let consts: Option<Vec<FieldElem>> = p
        .coeffs()
        .iter()
        .map(|c| c.as_constant())
        .collect();
    let consts = consts.ok_or(Error::Unfactorable)?;
    let in_base: Option<Vec<FieldElem>> = consts
        .iter()
        .map(|c| curve.embed().pullback(c))
        .collect();
    match in_base {
        Some(base_coeffs) => {
            let bp = Poly::from_coeffs(&curve.base().zero(), base_coeffs);
            for (irr, mult) in poly_factor_fq(&bp) {
                let pt = Point::closed(curve, irr)?;
                out.add_point(pt, sign * mult as i64);
            }
        }
        None => {
            // constants outside F_q: factor over the coefficient field; only
            // a full splitting is representable
            let cp = Poly::from_coeffs(&curve.coeff().zero(), consts);
            for (irr, mult) in poly_factor_fq(&cp) {
                if irr.degree() != 1 {
                    return Err(Error::Unfactorable);
                }
                let root = KElem::constant(irr.coeff(0).neg());
                out.add_point(Point::Finite(root), sign * mult as i64);
            }
        }
    }
    Ok(())
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn fmt_tpoly_to(f: &mut fmt::Formatter<'_>, p: &TPoly) -> fmt::Result {
    fmt_tpoly(p, f)
}

pub(crate) fn fmt_tpoly(p: &TPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    crate::ktau::fmt_poly_generic(
        f,
        p.degree(),
        |i| {
            let c = p.coeff(i as usize);
            if c.is_zero() {
                None
            } else {
                Some((format!("{c}"), c.is_one()))
            }
        },
        "t",
    )
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct P<'a>(&'a TPoly);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_tpoly(self.0, f)
            }
        }
        if self.den.is_one() {
            return fmt_tpoly(&self.num, f);
        }
        let ns = format!("{}", P(&self.num));
        let ds = format!("{}", P(&self.den));
        let wrap = |s: &str| {
            if s.contains('+') || s.contains('-') || s.contains('*') || s.contains('/') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&ns), wrap(&ds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    fn curve_f2() -> Curve {
        Curve::new(FieldDesc::new(2, 1, None).unwrap())
    }

    fn fpoly(c: &Curve, cs: &[u64]) -> Poly<FieldElem> {
        Poly::from_coeffs(
            &c.base().zero(),
            cs.iter().map(|&x| c.base().from_u64(x)).collect(),
        )
    }

    #[test]
    fn eval_basics() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let one = RatFunc::one(&cv);
        // (t-1)/t at 1 is 0, at infinity is 1
        let f = t.sub(&one).div(&t);
        assert!(f.eval(&cv.k_one()).unwrap().is_zero());
        assert!(f.eval_point(&Point::Infinity).unwrap().is_one());
        assert!(matches!(f.eval(&cv.k_zero()), Err(Error::PoleAtPoint)));
        // t^2 + t at tau
        let g = t.mul(&t).add(&t);
        let tau = cv.tau();
        assert_eq!(g.eval(&tau).unwrap(), tau.mul(&tau).add(&tau));
    }

    #[test]
    fn twist_fixes_base_functions() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let f = t.mul(&t).add(&t).div(&t.add(&RatFunc::one(&cv)));
        assert_eq!(f.twist(2, 1).unwrap(), f);
    }

    #[test]
    fn twist_moves_tau() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let tau = RatFunc::constant(cv.tau());
        let f = t.sub(&tau);
        let f1 = f.twist(2, 1).unwrap();
        let tau2 = RatFunc::constant(cv.tau().mul(&cv.tau()));
        assert_eq!(f1, t.sub(&tau2));
        // rf_twist(f, 0) = f
        assert_eq!(f.twist(2, 0).unwrap(), f);
    }

    #[test]
    fn negative_twist_root_failure() {
        // (t - tau^2)(t - tau) has a coefficient with odd tau-exponent, so a
        // q-th root cannot exist
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let tau = cv.tau();
        let f = t
            .sub(&RatFunc::constant(tau.frobenius(2, 1).unwrap()))
            .mul(&t.sub(&RatFunc::constant(tau)));
        assert!(matches!(f.twist(2, -1), Err(Error::NoRoot { .. })));
    }

    #[test]
    fn from_divisor_examples() {
        let cv = curve_f2();
        // [0] - [inf] -> t
        let e = Divisor::of([(Point::Finite(cv.k_zero()), 1), (Point::Infinity, -1)]);
        let f = RatFunc::from_divisor(&cv, &e).unwrap();
        assert_eq!(f, RatFunc::var(&cv));
        assert_eq!(f.divisor_of(&cv).unwrap(), e);
        // closed point of degree 2: [t^2+t+1] - 2[inf]
        let p = Point::closed(&cv, fpoly(&cv, &[1, 1, 1])).unwrap();
        let e2 = Divisor::of([(p, 1), (Point::Infinity, -2)]);
        let f2 = RatFunc::from_divisor(&cv, &e2).unwrap();
        let t = RatFunc::var(&cv);
        assert_eq!(f2, t.mul(&t).add(&t).add(&RatFunc::one(&cv)));
    }

    #[test]
    fn nonzero_degree_rejected() {
        let cv = curve_f2();
        let e = Divisor::point(Point::Finite(cv.k_one()));
        assert!(matches!(
            RatFunc::from_divisor(&cv, &e),
            Err(Error::NonzeroDegree(1))
        ));
    }

    #[test]
    fn divisor_of_by_factorization() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        // (t^2+t+1)/t over F_2
        let f = t
            .mul(&t)
            .add(&t)
            .add(&RatFunc::one(&cv))
            .div(&t);
        let d = f.divisor_of(&cv).unwrap();
        let p = Point::closed(&cv, fpoly(&cv, &[1, 1, 1])).unwrap();
        assert_eq!(
            d,
            Divisor::of([
                (p, 1),
                (Point::Finite(cv.k_zero()), -1),
                (Point::Infinity, -1)
            ])
        );
    }

    #[test]
    fn divisor_of_linear_tau() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let f = t.sub(&RatFunc::constant(cv.tau()));
        assert_eq!(
            f.divisor_of(&cv).unwrap(),
            Divisor::of([(Point::Finite(cv.tau()), 1), (Point::Infinity, -1)])
        );
    }

    #[test]
    fn divisor_multiplicative() {
        let cv = curve_f2();
        let e1 = Divisor::of([(Point::Finite(cv.tau()), 1), (Point::Infinity, -1)]);
        let e2 = Divisor::of([
            (Point::Finite(cv.k_one()), 2),
            (Point::Finite(cv.k_zero()), -1),
            (Point::Infinity, -1),
        ]);
        let f1 = RatFunc::from_divisor(&cv, &e1).unwrap();
        let f2 = RatFunc::from_divisor(&cv, &e2).unwrap();
        let prod = f1.mul(&f2);
        assert_eq!(prod.divisor_of(&cv).unwrap(), e1.add(&e2));
        assert_eq!(prod.divisor_of(&cv).unwrap().degree(), 0);
    }

    #[test]
    fn twist_commutes_with_divisor() {
        let cv = curve_f2();
        let e = Divisor::of([(Point::Finite(cv.tau()), 1), (Point::Infinity, -1)]);
        let f = RatFunc::from_divisor(&cv, &e).unwrap();
        let lhs = f.twist(2, 1).unwrap().divisor_of(&cv).unwrap();
        let rhs = f.divisor_of(&cv).unwrap().twist(2, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_twist_compatibility() {
        // f^{(n)}(x^{(n)}) = (f(x))^{(n)}
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let tau = cv.tau();
        let f = t.mul(&t).add(&RatFunc::constant(tau.clone()));
        let x = tau.add(&cv.k_one());
        let lhs = f
            .twist(2, 1)
            .unwrap()
            .eval(&x.frobenius(2, 1).unwrap())
            .unwrap();
        let rhs = f.eval(&x).unwrap().frobenius(2, 1).unwrap();
        assert_eq!(lhs, rhs);
    }
}
