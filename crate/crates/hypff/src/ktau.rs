//! The coefficient field K = F_{q'}(tau): rational functions in one
//! transcendental tau over a finite field.
//!
//! Elements are kept in canonical form: monic denominator, reduced fraction.
//! Equality is therefore structural. Frobenius twisting raises an element to
//! the q^n power for n >= 0; for n < 0 it extracts the exact q^{|n|}-th root
//! when one exists in K and reports [`Error::NoRoot`] otherwise (tau itself
//! has no q-th root in K).

use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FieldElem};
use crate::poly::{Coeff, Poly};
use std::cmp::Ordering;
use std::fmt;

pub type TauPoly = Poly<FieldElem>;

/// An element of K = F_{q'}(tau): `num/den` with `den` monic and gcd 1.
#[derive(Clone, PartialEq, Eq)]
pub struct KElem {
    num: TauPoly,
    den: TauPoly,
}

impl KElem {
    pub fn from_parts(num: TauPoly, den: TauPoly) -> KElem {
        assert!(!den.is_zero(), "zero denominator");
        let mut k = KElem { num, den };
        k.reduce();
        k
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

    pub fn zero(field: &FieldDesc) -> KElem {
        KElem {
            num: Poly::zero(&field.zero()),
            den: Poly::one(&field.zero()),
        }
    }

    pub fn one(field: &FieldDesc) -> KElem {
        KElem::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> KElem {
        let den = Poly::one(&c.field().zero());
        KElem {
            num: Poly::constant(c),
            den,
        }
    }

    /// The transcendental tau.
    pub fn tau(field: &FieldDesc) -> KElem {
        KElem {
            num: Poly::monomial(field.one(), 1),
            den: Poly::one(&field.zero()),
        }
    }

    pub fn from_poly(num: TauPoly) -> KElem {
        let den = Poly::one(num.witness());
        KElem { num, den }
    }

    pub fn field(&self) -> FieldDesc {
        self.den.witness().field().clone()
    }

    pub fn num(&self) -> &TauPoly {
        &self.num
    }

    pub fn den(&self) -> &TauPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant means degree 0 in tau: numerator and denominator constants.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as a finite-field element, if constant.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &KElem) -> KElem {
        // polynomial fast path: no reduction needed
        if self.den.is_one() && rhs.den.is_one() {
            return KElem {
                num: self.num.add(&rhs.num),
                den: self.den.clone(),
            };
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        KElem::from_parts(num, den)
    }

    pub fn sub(&self, rhs: &KElem) -> KElem {
        if self.den.is_one() && rhs.den.is_one() {
            return KElem {
                num: self.num.sub(&rhs.num),
                den: self.den.clone(),
            };
        }
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        KElem::from_parts(num, den)
    }

    pub fn neg(&self) -> KElem {
        KElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &KElem) -> KElem {
        if self.den.is_one() && rhs.den.is_one() {
            return KElem {
                num: self.num.mul(&rhs.num),
                den: self.den.clone(),
            };
        }
        // cross-reduce first to limit intermediate growth
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.degree() > 0 { self.num.div_exact(&g1) } else { self.num.clone() };
        let d2 = if g1.degree() > 0 { rhs.den.div_exact(&g1) } else { rhs.den.clone() };
        let n2 = if g2.degree() > 0 { rhs.num.div_exact(&g2) } else { rhs.num.clone() };
        let d1 = if g2.degree() > 0 { self.den.div_exact(&g2) } else { self.den.clone() };
        KElem::from_parts(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> KElem {
        assert!(!self.is_zero(), "inverse of zero");
        KElem::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &KElem) -> KElem {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, e: i64) -> KElem {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut r = KElem::one(&self.field());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// x^{q^n} for n >= 0; the exact q^{|n|}-th root for n < 0.
    ///
    /// Since q is a power of the characteristic, (sum a_i tau^i)^q =
    /// sum a_i^q tau^{iq}; roots invert that shape when every exponent is
    /// divisible by q.
    pub fn frobenius(&self, q: u64, n: i64) -> Result<KElem> {
        if n == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let mut cur = self.clone();
        if n > 0 {
            for _ in 0..n {
                cur = KElem {
                    num: poly_q_power(&cur.num, q),
                    den: poly_q_power(&cur.den, q),
                };
            }
            Ok(cur)
        } else {
            for _ in 0..(-n) {
                let num = poly_q_root(&cur.num, q).ok_or(Error::NoRoot { n })?;
                let den = poly_q_root(&cur.den, q).ok_or(Error::NoRoot { n })?;
                cur = KElem { num, den };
            }
            Ok(cur)
        }
    }

    /// Degree of the numerator minus degree of the denominator.
    pub fn tau_degree(&self) -> i64 {
        self.num.degree() - self.den.degree()
    }
}

/// p(tau)^q computed coefficient-wise: exponents stretch by q, coefficients
/// are raised to the q-th power.
fn poly_q_power(p: &TauPoly, q: u64) -> TauPoly {
    if p.is_zero() {
        return p.clone();
    }
    let wit = p.witness().clone();
    let mut coeffs = vec![wit.clone(); (p.degree() as usize) * q as usize + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[i * q as usize] = c.frobenius(q, 1);
        }
    }
    Poly::from_coeffs(&wit, coeffs)
}

/// Inverse of [`poly_q_power`], when it exists.
fn poly_q_root(p: &TauPoly, q: u64) -> Option<TauPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let d = p.degree() as usize;
    if d % q as usize != 0 {
        return None;
    }
    let wit = p.witness().clone();
    let mut coeffs = vec![wit.clone(); d / q as usize + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i % q as usize != 0 {
            return None;
        }
        coeffs[i / q as usize] = c.frobenius(q, -1);
    }
    Some(Poly::from_coeffs(&wit, coeffs))
}

impl Coeff for KElem {
    fn is_zero(&self) -> bool {
        KElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        KElem::zero(&self.field())
    }
    fn one_like(&self) -> Self {
        KElem::one(&self.field())
    }
    fn add(&self, rhs: &Self) -> Self {
        KElem::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        KElem::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        KElem::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        KElem::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        KElem::inv(self)
    }
}

fn cmp_poly(a: &TauPoly, b: &TauPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for i in (0..a.coeffs().len()).rev() {
                let o = a.coeffs()[i].cmp(&b.coeffs()[i]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

impl PartialOrd for KElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KElem {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_poly(&self.den, &other.den).then_with(|| cmp_poly(&self.num, &other.num))
    }
}

pub(crate) fn fmt_tau_poly(p: &TauPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    fmt_poly_generic(f, p.degree(), |i| {
        let c = p.coeff(i as usize);
        if c.is_zero() {
            None
        } else {
            Some((format!("{c}"), c.is_one()))
        }
    }, "tau")
}

/// Shared polynomial printer: descending powers, zero terms suppressed.
/// The closure yields (coefficient string, is_one) for nonzero terms.
pub(crate) fn fmt_poly_generic(
    f: &mut fmt::Formatter<'_>,
    degree: i64,
    term: impl Fn(i64) -> Option<(String, bool)>,
    var: &str,
) -> fmt::Result {
    if degree < 0 {
        return write!(f, "0");
    }
    let mut first = true;
    for i in (0..=degree).rev() {
        let Some((cs, is_one)) = term(i) else {
            continue;
        };
        if !first {
            write!(f, "+")?;
        }
        first = false;
        let needs_paren = cs.contains('+') || cs.contains('-') || cs.contains('/');
        match (i, is_one) {
            (0, _) => {
                if needs_paren {
                    write!(f, "({cs})")?;
                } else {
                    write!(f, "{cs}")?;
                }
            }
            (1, true) => write!(f, "{var}")?,
            (1, false) => {
                if needs_paren {
                    write!(f, "({cs})*{var}")?;
                } else {
                    write!(f, "{cs}*{var}")?;
                }
            }
            (_, true) => write!(f, "{var}^{i}")?,
            (_, false) => {
                if needs_paren {
                    write!(f, "({cs})*{var}^{i}")?;
                } else {
                    write!(f, "{cs}*{var}^{i}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct P<'a>(&'a TauPoly);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_tau_poly(self.0, f)
            }
        }
        if self.den.is_one() {
            return fmt_tau_poly(&self.num, f);
        }
        let ns = format!("{}", P(&self.num));
        let ds = format!("{}", P(&self.den));
        let wrap = |s: &str| {
            if s.contains('+') || s.contains('-') || s.contains('*') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&ns), wrap(&ds))
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldDesc {
        FieldDesc::new(2, 1, None).unwrap()
    }

    fn tau() -> KElem {
        KElem::tau(&f2())
    }

    #[test]
    fn canonical_reduction() {
        let t = tau();
        // (tau^2 + tau) / tau = tau + 1
        let a = KElem::from_parts(
            t.num().mul(t.num()).add(t.num()),
            t.num().clone(),
        );
        assert_eq!(a, t.add(&KElem::one(&f2())));
    }

    #[test]
    fn frobenius_of_tau() {
        let t = tau();
        let sq = t.frobenius(2, 1).unwrap();
        assert_eq!(sq, t.mul(&t));
        // tau has no square root in K
        assert!(matches!(t.frobenius(2, -1), Err(Error::NoRoot { .. })));
        // but tau^2 does
        assert_eq!(sq.frobenius(2, -1).unwrap(), t);
    }

    #[test]
    fn frobenius_expand_char2() {
        // (tau^2 + tau)^2 = tau^4 + tau^2 over F_2
        let t = tau();
        let a = t.mul(&t).add(&t);
        let b = a.frobenius(2, 1).unwrap();
        let expect = t.pow(4).add(&t.pow(2));
        assert_eq!(b, expect);
    }

    #[test]
    fn frobenius_additive_multiplicative() {
        let t = tau();
        let one = KElem::one(&f2());
        let x = t.add(&one).div(&t); // (tau+1)/tau
        let y = t.mul(&t).add(&t);
        for n in [1i64, 2] {
            assert_eq!(
                x.mul(&y).frobenius(2, n).unwrap(),
                x.frobenius(2, n).unwrap().mul(&y.frobenius(2, n).unwrap())
            );
            assert_eq!(
                x.add(&y).frobenius(2, n).unwrap(),
                x.frobenius(2, n).unwrap().add(&y.frobenius(2, n).unwrap())
            );
        }
    }

    #[test]
    fn frobenius_composes() {
        let t = tau();
        let x = t.add(&KElem::one(&f2()));
        let a = x.frobenius(2, 2).unwrap();
        let b = x.frobenius(2, 1).unwrap().frobenius(2, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.frobenius(2, -2).unwrap(), x);
    }
}
