//! Riemann-Roch spaces, differentials, residues, and principal parts on P^1.
//!
//! Differentials are stored as a global dt-coefficient; the chart at
//! infinity (s = 1/t, dt = -s^{-2} ds) is derived on demand. Residues at
//! closed points are computed inside F_q[t]/(p^j) with a Hensel-lifted
//! coefficient section, then traced to F_q, so conductor arithmetic never
//! leaves finite F_q-algebras.

use crate::curve::Curve;
use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::ff::FieldElem;
use crate::func::{closed_to_k, RatFunc, TPoly};
use crate::ktau::KElem;
use crate::poly::{Coeff, Poly};
use std::collections::BTreeMap;
use std::fmt;

// ---- Riemann-Roch spaces ----

/// Echelonized basis of L(E) = { f : (f) + E >= 0 }, ascending numerator
/// degree, both leading coefficients 1. Size is deg E + 1 when nonnegative.
pub fn rr_basis(curve: &Curve, e: &Divisor) -> Vec<RatFunc> {
    let dim = e.degree() + 1;
    if dim <= 0 {
        return vec![];
    }
    // h collects finite poles, r the forced finite zeros
    let mut h = Poly::one(&curve.k_zero());
    let mut r = Poly::one(&curve.k_zero());
    let mut h_div = Divisor::zero();
    let mut r_div = Divisor::zero();
    let mut m_inf = 0i64;
    for (p, m) in e.terms() {
        match p {
            Point::Infinity => m_inf = m,
            _ => {
                let factor = local_poly(curve, p);
                if m > 0 {
                    h = h.mul(&factor.pow(m as u64));
                    h_div.add_point(p.clone(), m);
                } else {
                    r = r.mul(&factor.pow((-m) as u64));
                    r_div.add_point(p.clone(), -m);
                }
            }
        }
    }
    let d_max = h.degree() + m_inf;
    debug_assert_eq!(d_max - r.degree() + 1, dim);
    let mut basis = Vec::with_capacity(dim as usize);
    for j in 0..dim {
        let num = r.shift(j as usize);
        let mut f = RatFunc::from_parts(num, h.clone());
        let mut div = r_div.sub(&h_div);
        div.add_point(Point::Finite(curve.k_zero()), j);
        div.add_point(Point::Infinity, h.degree() - r.degree() - j);
        f.set_retained_divisor(div);
        basis.push(f);
    }
    basis
}

/// The monic local polynomial of a finite or closed point, in K[t].
pub(crate) fn local_poly(curve: &Curve, p: &Point) -> TPoly {
    match p {
        Point::Finite(x) => Poly::from_coeffs(
            &curve.k_zero(),
            vec![x.neg(), curve.k_one()],
        ),
        Point::Closed(pc) => closed_to_k(curve, pc),
        Point::Infinity => panic!("infinity has no finite local polynomial"),
    }
}

/// A meromorphic differential omega = coeff * dt.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Differential {
    pub coeff: RatFunc,
}

impl Differential {
    pub fn new(coeff: RatFunc) -> Differential {
        Differential { coeff }
    }

    /// (omega) = (coeff) - 2[inf] on P^1.
    pub fn divisor(&self, curve: &Curve) -> Result<Divisor> {
        let mut d = self.coeff.divisor_of(curve)?;
        d.add_point(Point::Infinity, -2);
        Ok(d)
    }

    pub fn scale(&self, c: &KElem) -> Differential {
        Differential {
            coeff: self.coeff.scale(c),
        }
    }

    pub fn mul_fn(&self, f: &RatFunc) -> Differential {
        Differential {
            coeff: self.coeff.mul(f),
        }
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dt", self.coeff)
    }
}

/// Basis of H^0(Omega(-E)) = { omega : (omega) >= E }; size -deg E - 1 when
/// deg E <= -2, via the genus-0 identification with L(-E - 2[inf]).
pub fn omega_basis(curve: &Curve, e: &Divisor) -> Vec<Differential> {
    let mut shifted = e.neg();
    shifted.add_point(Point::Infinity, -2);
    rr_basis(curve, &shifted)
        .into_iter()
        .map(Differential::new)
        .collect()
}

// ---- residues ----

/// A residue value: K-valued at rational points and infinity, a residue
/// class in F_q[t]/(p) at a closed point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ResidueValue {
    Scalar(KElem),
    Class(TPoly),
}

/// Residue of omega at a K-rational point a: the (t-a)^{-1} Laurent
/// coefficient, by exact series expansion around a.
pub fn residue_finite(omega: &Differential, a: &KElem) -> KElem {
    let c = &omega.coeff;
    if c.is_zero() {
        return a.zero_like();
    }
    let lin = Poly::from_coeffs(c.num().witness(), vec![a.neg(), a.one_like()]);
    let j = c.den().multiplicity(&lin) as usize;
    if j == 0 {
        return a.zero_like();
    }
    let num_s = c.num().shift_var(a);
    let den_s = c.den().shift_var(a);
    // strip the exact s^j factor
    debug_assert!(den_s.coeffs()[..j].iter().all(|x| x.is_zero()));
    let unit = Poly::from_coeffs(c.num().witness(), den_s.coeffs()[j..].to_vec());
    let series = num_s.mul_trunc(&unit.inv_series(j), j);
    series.coeff(j - 1)
}

/// Residue of omega at infinity, in the chart s = 1/t with dt = -s^{-2} ds.
pub fn residue_infinity(omega: &Differential) -> KElem {
    let c = &omega.coeff;
    let witness = c.num().witness().clone();
    if c.is_zero() {
        return witness;
    }
    let e = c.ord_inf();
    if e >= 2 {
        return witness;
    }
    let j = (2 - e) as usize;
    let num_rev = c.num().reversed();
    let den_rev = c.den().reversed(); // unit: constant term 1 (den monic)
    let series = num_rev.mul_trunc(&den_rev.inv_series(j), j);
    series.coeff(j - 1).neg()
}

/// Residue of omega at a closed point, as a class in F_q[t]/(p) (embedded in
/// K[t]). Requires base-field coefficients.
pub fn residue_closed_class(
    curve: &Curve,
    omega: &Differential,
    pc: &Poly<FieldElem>,
) -> Result<TPoly> {
    let c = &omega.coeff;
    let phat = closed_to_k(curve, pc);
    let zero = Poly::zero(c.num().witness());
    if c.is_zero() {
        return Ok(zero);
    }
    require_base_coeffs(curve, c)?;
    let j = c.den().multiplicity(&phat) as usize;
    if j == 0 {
        return Ok(zero);
    }
    let pj = phat.pow(j as u64);
    let h0 = c.den().div_exact(&phat.pow(j as u64));
    let h0_inv = h0.rem(&pj).inv_mod(&pj).ok_or_else(|| {
        Error::Domain("internal: cofactor not invertible at closed point".into())
    })?;
    let pd = phat.derivative();
    let pd_inv = pd
        .rem(&pj)
        .inv_mod(&pj)
        .ok_or_else(|| Error::Domain("closed point polynomial is inseparable".into()))?;
    // B = (c * p^j) / p'(t), the ds-free local coefficient against d(p)
    let mut cur = c
        .num()
        .rem(&pj)
        .mul(&h0_inv)
        .rem(&pj)
        .mul(&pd_inv)
        .rem(&pj);
    // Hensel-lift a root theta of p inside K[t]/(p^j); the map b -> b(theta)
    // is the coefficient-field section of the expansion
    let mut theta = Poly::monomial(curve.k_one(), 1).rem(&pj);
    let mut prec = 1usize;
    while prec < j {
        let val = phat.compose_mod(&theta, &pj);
        let der = pd.compose_mod(&theta, &pj);
        let der_inv = der
            .inv_mod(&pj)
            .ok_or_else(|| Error::Domain("internal: Hensel derivative not invertible".into()))?;
        theta = theta.sub(&val.mul(&der_inv).rem(&pj)).rem(&pj);
        prec *= 2;
    }
    // pi-adic expansion: peel coefficients until the pi^{j-1} slot
    for i in 0..j {
        let modulus = phat.pow((j - i) as u64);
        cur = cur.rem(&modulus);
        let bi = cur.rem(&phat);
        if i == j - 1 {
            return Ok(bi);
        }
        let lifted = bi.compose_mod(&theta, &modulus);
        let diff = cur.sub(&lifted).rem(&modulus);
        cur = diff.div_exact(&phat);
    }
    unreachable!()
}

/// Trace of a residue class from F_q[t]/(p) down to F_q, as an element of K.
pub fn trace_class(curve: &Curve, class: &TPoly, pc: &Poly<FieldElem>) -> KElem {
    let phat = closed_to_k(curve, pc);
    let q = pc.field().size();
    let d = pc.degree() as u32;
    let mut acc = Poly::zero(class.witness());
    let mut pw = class.rem(&phat);
    for i in 0..d {
        if i > 0 {
            pw = pow_mod(&pw, q, &phat);
        }
        acc = acc.add(&pw).rem(&phat);
    }
    debug_assert!(acc.is_constant(), "trace must land in the base field");
    acc.coeff(0)
}

fn pow_mod(x: &TPoly, mut e: u64, m: &TPoly) -> TPoly {
    let one = Poly::one(x.witness());
    let mut r = one;
    let mut b = x.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b).rem(m);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(m);
        }
    }
    r
}

fn require_base_coeffs(curve: &Curve, f: &RatFunc) -> Result<()> {
    for p in [f.num(), f.den()] {
        for c in p.coeffs() {
            let ok = c
                .as_constant()
                .map_or(false, |v| curve.embed().pullback(&v).is_some());
            if !ok {
                return Err(Error::Domain(
                    "closed-point residues need base-field coefficients".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Residue of omega at any point; closed points report a residue class.
pub fn residue(curve: &Curve, omega: &Differential, p: &Point) -> Result<ResidueValue> {
    match p {
        Point::Finite(a) => Ok(ResidueValue::Scalar(residue_finite(omega, a))),
        Point::Infinity => Ok(ResidueValue::Scalar(residue_infinity(omega))),
        Point::Closed(pc) => Ok(ResidueValue::Class(residue_closed_class(curve, omega, pc)?)),
    }
}

/// Residue composed with the trace at closed points, always K-valued.
pub fn residue_traced(curve: &Curve, omega: &Differential, p: &Point) -> Result<KElem> {
    match residue(curve, omega, p)? {
        ResidueValue::Scalar(v) => Ok(v),
        ResidueValue::Class(c) => match p {
            Point::Closed(pc) => Ok(trace_class(curve, &c, pc)),
            _ => unreachable!(),
        },
    }
}

/// The pairing RES_D(omega * alpha~): sum over supp D of trace-composed
/// residues against the canonical lifting of alpha. Independent of the
/// choice of lifting because omega is regular along D in every use.
pub fn res_pairing(curve: &Curve, omega: &Differential, alpha: &PrincipalPart) -> Result<KElem> {
    let lift = alpha.lift(curve);
    let prod = omega.mul_fn(&lift);
    let mut acc = curve.k_zero();
    for (p, _) in alpha.conductor().terms() {
        acc = acc.add(&residue_traced(curve, &prod, p)?);
    }
    Ok(acc)
}

/// Sum of residues over every pole of omega including infinity; always zero,
/// which the tests lean on as a cross-check of the residue paths.
pub fn residue_sum(curve: &Curve, omega: &Differential) -> Result<KElem> {
    let div = omega.divisor(curve)?;
    let mut acc = curve.k_zero();
    for (p, m) in div.terms() {
        if m < 0 {
            acc = acc.add(&residue_traced(curve, omega, p)?);
        }
    }
    Ok(acc)
}

// ---- principal parts along a conductor ----

/// Local ring data at a conductor point with multiplicity n: classes live in
/// F_q[v]/(p^n) where v is t at finite points and s = 1/t at infinity.
pub(crate) struct LocalRing {
    pub point: Point,
    pub p: TPoly,
    pub n: usize,
    pub pn: TPoly,
}

impl LocalRing {
    pub fn new(curve: &Curve, point: &Point, n: usize) -> Result<LocalRing> {
        let p = match point {
            Point::Infinity => Poly::monomial(curve.k_one(), 1),
            Point::Finite(x) => {
                if x.as_constant().is_none() {
                    return Err(Error::Domain(
                        "conductor points must be rational over the base field".into(),
                    ));
                }
                local_poly(curve, point)
            }
            Point::Closed(_) => local_poly(curve, point),
        };
        let pn = p.pow(n as u64);
        Ok(LocalRing {
            point: point.clone(),
            p,
            n,
            pn,
        })
    }

    /// f as a local fraction (a, b) in the chart variable.
    fn local_fraction(&self, f: &RatFunc) -> (TPoly, TPoly) {
        match self.point {
            Point::Infinity => {
                let e = f.ord_inf();
                let num_rev = f.num().reversed();
                let den_rev = f.den().reversed();
                if e >= 0 {
                    (num_rev.shift(e as usize), den_rev)
                } else {
                    (num_rev, den_rev.shift((-e) as usize))
                }
            }
            _ => (f.num().clone(), f.den().clone()),
        }
    }

    /// Image of f in the quotient ring, requiring f regular at the point.
    pub fn restrict(&self, f: &RatFunc) -> Result<TPoly> {
        if f.is_zero() {
            return Ok(Poly::zero(f.num().witness()));
        }
        let (a, b) = self.local_fraction(f);
        if b.multiplicity(&self.p) > 0 {
            return Err(Error::PoleOnConductor);
        }
        let b_inv = b
            .rem(&self.pn)
            .inv_mod(&self.pn)
            .ok_or(Error::PoleOnConductor)?;
        Ok(a.rem(&self.pn).mul(&b_inv).rem(&self.pn))
    }

    /// The principal-part class of f: c with f = c/p^n modulo regular germs.
    pub fn principal_class(&self, f: &RatFunc) -> Result<TPoly> {
        if f.is_zero() {
            return Ok(Poly::zero(f.num().witness()));
        }
        let (a, b) = self.local_fraction(f);
        let j = b.multiplicity(&self.p) as usize;
        if j > self.n {
            return Err(Error::Domain(format!(
                "pole order {j} exceeds conductor multiplicity {}",
                self.n
            )));
        }
        let b0 = b.div_exact(&self.p.pow(j as u64));
        let b0_inv = b0
            .rem(&self.pn)
            .inv_mod(&self.pn)
            .ok_or(Error::PoleOnConductor)?;
        let shifted = a
            .rem(&self.pn)
            .mul(&b0_inv)
            .rem(&self.pn)
            .mul(&self.p.pow((self.n - j) as u64))
            .rem(&self.pn);
        Ok(shifted)
    }
}

/// An element of H^0(O_X(D)/O_X): local pole data along the conductor D,
/// one residue class per point of supp D. Zero classes are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct PrincipalPart {
    conductor: Divisor,
    parts: BTreeMap<Point, TPoly>,
}

impl PrincipalPart {
    pub fn zero(conductor: &Divisor) -> PrincipalPart {
        PrincipalPart {
            conductor: conductor.clone(),
            parts: BTreeMap::new(),
        }
    }

    /// Validate a conductor: nonzero, effective, base-rational.
    pub fn check_conductor(curve: &Curve, d: &Divisor) -> Result<()> {
        if d.is_zero() {
            return Err(Error::Domain("the conductor must be nonzero".into()));
        }
        if !d.is_effective() {
            return Err(Error::Domain("the conductor must be effective".into()));
        }
        if !d.is_base_rational(curve.q()) {
            return Err(Error::Domain(
                "the conductor must be defined over the base field".into(),
            ));
        }
        Ok(())
    }

    pub fn conductor(&self) -> &Divisor {
        &self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn class_at(&self, p: &Point) -> Option<&TPoly> {
        self.parts.get(p)
    }

    fn insert(&mut self, p: Point, class: TPoly) {
        if class.is_zero() {
            self.parts.remove(&p);
        } else {
            self.parts.insert(p, class);
        }
    }

    /// Set the class at a point directly (reduced representative expected).
    pub fn set_class(&mut self, p: Point, class: TPoly) {
        debug_assert!(self.conductor.multiplicity(&p) > 0);
        self.insert(p, class);
    }

    /// Extract the principal part of f along D.
    pub fn of_function(curve: &Curve, f: &RatFunc, d: &Divisor) -> Result<PrincipalPart> {
        Self::check_conductor(curve, d)?;
        let mut pp = PrincipalPart::zero(d);
        for (point, n) in d.terms() {
            let ring = LocalRing::new(curve, point, n as usize)?;
            let class = ring.principal_class(f)?;
            pp.insert(point.clone(), class);
        }
        Ok(pp)
    }

    /// The canonical partial-fraction lifting: sum of class_x / p_x^{n_x}
    /// plus the forced polynomial part at infinity (no constant term).
    pub fn lift(&self, curve: &Curve) -> RatFunc {
        let mut acc = RatFunc::zero(curve);
        for (point, class) in &self.parts {
            let n = self.conductor.multiplicity(point) as usize;
            let piece = match point {
                Point::Infinity => {
                    // class c(s)/s^n = sum c_i t^{n-i}
                    let mut coeffs = vec![curve.k_zero(); n + 1];
                    for i in 0..n {
                        coeffs[n - i] = class.coeff(i);
                    }
                    RatFunc::from_poly(Poly::from_coeffs(&curve.k_zero(), coeffs))
                }
                _ => {
                    let p = local_poly(curve, point);
                    RatFunc::from_parts(class.clone(), p.pow(n as u64))
                }
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// F_q-basis of H^0(O(D)/O): per point, the classes v^k for
    /// k < n * deg(p), in point-then-degree order. Size = deg D.
    pub fn basis(curve: &Curve, d: &Divisor) -> Result<Vec<PrincipalPart>> {
        Self::check_conductor(curve, d)?;
        let mut out = Vec::new();
        for (point, n) in d.terms() {
            let len = (n * point.degree()) as usize;
            for k in 0..len {
                let mut pp = PrincipalPart::zero(d);
                pp.insert(point.clone(), Poly::monomial(curve.k_one(), k));
                out.push(pp);
            }
        }
        Ok(out)
    }

    /// Flatten to deg D coordinates over K, in basis order.
    pub fn coords(&self, curve: &Curve) -> Vec<KElem> {
        let mut out = Vec::new();
        for (point, n) in self.conductor.terms() {
            let len = (n * point.degree()) as usize;
            match self.parts.get(point) {
                Some(class) => {
                    for k in 0..len {
                        out.push(class.coeff(k));
                    }
                }
                None => out.extend(std::iter::repeat(curve.k_zero()).take(len)),
            }
        }
        out
    }

    pub fn add(&self, rhs: &PrincipalPart) -> PrincipalPart {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.parts {
            let sum = match out.parts.get(p) {
                Some(mine) => mine.add(c),
                None => c.clone(),
            };
            out.insert(p.clone(), sum);
        }
        out
    }

    pub fn neg(&self) -> PrincipalPart {
        PrincipalPart {
            conductor: self.conductor.clone(),
            parts: self.parts.iter().map(|(p, c)| (p.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &PrincipalPart) -> PrincipalPart {
        self.add(&rhs.neg())
    }

    /// Scalar action of K (in practice F_q^x) on the module.
    pub fn scale(&self, c: &KElem) -> PrincipalPart {
        if c.is_zero() {
            return PrincipalPart::zero(&self.conductor);
        }
        PrincipalPart {
            conductor: self.conductor.clone(),
            parts: self
                .parts
                .iter()
                .map(|(p, cl)| (p.clone(), cl.scale(c)))
                .collect(),
        }
    }
}

impl fmt::Debug for PrincipalPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pp[")?;
        let mut first = true;
        for (p, c) in &self.parts {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let n = self.conductor.multiplicity(p);
            write!(f, "{p}^{n}: ")?;
            crate::func::fmt_tpoly_to(f, c)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    fn curve_f2() -> Curve {
        Curve::new(FieldDesc::new(2, 1, None).unwrap())
    }

    fn curve_q(q: u64) -> Curve {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            _ => panic!(),
        };
        Curve::new(FieldDesc::new(p, m, None).unwrap())
    }

    #[test]
    fn rr_basis_poles_at_infinity() {
        let cv = curve_f2();
        let e = Divisor::of([(Point::Infinity, 2)]);
        let b = rr_basis(&cv, &e);
        let t = RatFunc::var(&cv);
        assert_eq!(b, vec![RatFunc::one(&cv), t.clone(), t.mul(&t)]);
    }

    #[test]
    fn rr_basis_negative_degree_empty() {
        let cv = curve_f2();
        let e = Divisor::of([(Point::Finite(cv.k_one()), -1)]);
        assert!(rr_basis(&cv, &e).is_empty());
    }

    #[test]
    fn rr_basis_forced_zero() {
        // L(-[0] + 2[inf]) = {t, t^2}
        let cv = curve_f2();
        let e = Divisor::of([(Point::Finite(cv.k_zero()), -1), (Point::Infinity, 2)]);
        let b = rr_basis(&cv, &e);
        let t = RatFunc::var(&cv);
        assert_eq!(b, vec![t.clone(), t.mul(&t)]);
    }

    #[test]
    fn rr_dimension_matches_riemann_roch() {
        // dim L(E) = max(deg E + 1, 0) across a small zoo of divisors
        let cv = curve_q(3);
        let two = cv.scalar(&cv.base().from_u64(2));
        let divisors = vec![
            Divisor::of([(Point::Infinity, 3)]),
            Divisor::of([(Point::Finite(cv.k_one()), 2), (Point::Infinity, -1)]),
            Divisor::of([(Point::Finite(two.clone()), -2), (Point::Infinity, 4)]),
            Divisor::of([(Point::Finite(cv.tau()), 1), (Point::Infinity, 1)]),
            Divisor::of([(Point::Finite(cv.k_zero()), -1), (Point::Finite(two), -1)]),
        ];
        for e in divisors {
            let dim = (e.degree() + 1).max(0) as usize;
            let b = rr_basis(&cv, &e);
            assert_eq!(b.len(), dim, "E = {e}");
            // spot-check membership: (f) + E >= 0
            for f in &b {
                let d = f.divisor_of(&cv).unwrap().add(&e);
                assert!(d.is_effective(), "f = {f}, E = {e}");
            }
        }
    }

    #[test]
    fn omega_basis_sizes() {
        let cv = curve_f2();
        // (dt) = -2[inf]: omega_basis(-2[inf]) = {dt}
        let e = Divisor::of([(Point::Infinity, -2)]);
        let b = omega_basis(&cv, &e);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].coeff, RatFunc::one(&cv));
        // no holomorphic differentials on P^1
        assert!(omega_basis(&cv, &Divisor::zero()).is_empty());
        // E = -3[1]: dimension 2
        let e = Divisor::of([(Point::Finite(cv.k_one()), -3)]);
        let b = omega_basis(&cv, &e);
        assert_eq!(b.len(), 2);
        for w in &b {
            let d = w.divisor(&cv).unwrap().sub(&e);
            assert!(d.is_effective());
        }
    }

    #[test]
    fn residue_dt_over_t() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let w = Differential::new(RatFunc::one(&cv).div(&t));
        assert!(residue_finite(&w, &cv.k_zero()).is_one());
        // t*dt has no residue at infinity
        let w2 = Differential::new(t.clone());
        assert!(residue_infinity(&w2).is_zero());
        // dt/t has residue -1 = 1 at infinity (char 2)
        assert!(residue_infinity(&w).is_one());
    }

    #[test]
    fn residue_closed_quadratic() {
        // dt/(t^2+t+1) at the closed point (t^2+t+1) over F_2: the local
        // residue is 1 (derivative is 1 in char 2), and Tr_{F_4/F_2}(1) = 0
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let den = t.mul(&t).add(&t).add(&RatFunc::one(&cv));
        let w = Differential::new(RatFunc::one(&cv).div(&den));
        let pc = Poly::from_coeffs(
            &cv.base().zero(),
            vec![cv.base().one(), cv.base().one(), cv.base().one()],
        );
        let class = residue_closed_class(&cv, &w, &pc).unwrap();
        assert!(class.is_one());
        let tr = trace_class(&cv, &class, &pc);
        assert!(tr.is_zero());
    }

    #[test]
    fn residue_closed_matches_splice() {
        // the trace-residue at a closed point equals the sum of residues at
        // the spliced points over the extension
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let cv = Curve::with_coeff(f2.clone(), f4.clone()).unwrap();
        let t = RatFunc::var(&cv);
        let one = RatFunc::one(&cv);
        let pc = Poly::from_coeffs(&f2.zero(), vec![f2.one(), f2.one(), f2.one()]);
        // omega with a double pole at the closed point and assorted others
        let den = t
            .mul(&t)
            .add(&t)
            .add(&one)
            .pow(2)
            .mul(&t.add(&one));
        let w = Differential::new(t.mul(&t).add(&one).div(&den));
        let traced = residue_traced(&cv, &w, &Point::Closed(pc.clone())).unwrap();
        let mut sum = cv.k_zero();
        for pt in crate::divisor::splice_closed(&pc, &f4).unwrap() {
            match pt {
                Point::Finite(a) => sum = sum.add(&residue_finite(&w, &a)),
                _ => unreachable!(),
            }
        }
        assert_eq!(traced, sum);
    }

    #[test]
    fn residue_sum_is_zero() {
        let cv = curve_q(3);
        let t = RatFunc::var(&cv);
        let two = RatFunc::constant(cv.scalar(&cv.base().from_u64(2)));
        // omega with poles at 0, 2, a closed quadratic, and infinity
        let quad = t.mul(&t).add(&RatFunc::one(&cv)); // t^2+1 irreducible over F_3
        let den = t.mul(&t.sub(&two)).mul(&quad);
        let w = Differential::new(t.pow(4).add(&RatFunc::one(&cv)).div(&den));
        assert!(residue_sum(&cv, &w).unwrap().is_zero());
    }

    #[test]
    fn principal_part_extraction_and_lift() {
        let cv = curve_f2();
        let t = RatFunc::var(&cv);
        let d = Divisor::of([(Point::Infinity, 1), (Point::Finite(cv.k_zero()), 1)]);
        // alpha_inf: class of t
        let a_inf = PrincipalPart::of_function(&cv, &t, &d).unwrap();
        assert!(!a_inf.is_zero());
        assert!(a_inf.class_at(&Point::Finite(cv.k_zero())).is_none());
        // alpha_0: class of (t-1)/t
        let f = t.sub(&RatFunc::one(&cv)).div(&t);
        let a_0 = PrincipalPart::of_function(&cv, &f, &d).unwrap();
        assert!(a_0.class_at(&Point::Infinity).is_none());
        // lifting a pp yields a function with the same pp
        for pp in [&a_inf, &a_0] {
            let lifted = pp.lift(&cv);
            let back = PrincipalPart::of_function(&cv, &lifted, &d).unwrap();
            assert_eq!(back, pp.clone());
        }
        // basis has deg D elements and lifts faithfully
        let basis = PrincipalPart::basis(&cv, &d).unwrap();
        assert_eq!(basis.len(), 2);
        for pp in &basis {
            let lifted = pp.lift(&cv);
            assert_eq!(PrincipalPart::of_function(&cv, &lifted, &d).unwrap(), *pp);
        }
    }

    #[test]
    fn principal_part_higher_multiplicity() {
        let cv = curve_q(3);
        let d = Divisor::of([(Point::Infinity, 1), (Point::Finite(cv.k_zero()), 2)]);
        let basis = PrincipalPart::basis(&cv, &d).unwrap();
        assert_eq!(basis.len(), 3);
        for pp in &basis {
            let lifted = pp.lift(&cv);
            assert_eq!(PrincipalPart::of_function(&cv, &lifted, &d).unwrap(), *pp);
        }
        // closed point of degree 2 in the conductor
        let quad = Poly::from_coeffs(
            &cv.base().zero(),
            vec![cv.base().one(), cv.base().zero(), cv.base().one()],
        );
        let p = Point::closed(&cv, quad).unwrap();
        let d2 = Divisor::of([(p, 1), (Point::Infinity, 1)]);
        let basis = PrincipalPart::basis(&cv, &d2).unwrap();
        assert_eq!(basis.len(), 3);
        for pp in &basis {
            let lifted = pp.lift(&cv);
            assert_eq!(PrincipalPart::of_function(&cv, &lifted, &d2).unwrap(), *pp);
        }
    }
}
