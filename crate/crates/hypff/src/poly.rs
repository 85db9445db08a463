//! Dense univariate polynomials over an arbitrary exact field.
//!
//! The same machinery serves three layers: polynomials in u over F_p (inside
//! [`crate::ff`]), polynomials in tau over F_{q'} (inside [`crate::ktau`]),
//! and polynomials in t over K (inside [`crate::func`]). Coefficients carry
//! their own field context, so the trait exposes zero/one "of the same kind"
//! rather than nullary constructors.

/// Coefficients forming an exact field, aware of their own context.
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl Coeff for crate::ff::FieldElem {
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, rhs: &Self) -> Self {
        FieldElem::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElem::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElem::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        FieldElem::inv(self)
    }
}

use crate::ff::FieldElem;

/// Dense polynomial; `coeffs` has no trailing zeros and `witness` supplies
/// field context even for the zero polynomial.
#[derive(Clone, Debug)]
pub struct Poly<T: Coeff> {
    witness: T,
    coeffs: Vec<T>,
}

impl<T: Coeff> PartialEq for Poly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<T: Coeff> Eq for Poly<T> {}

impl<T: Coeff + Ord> PartialOrd for Poly<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Coeff + Ord> Ord for Poly<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.coeffs.len()).rev() {
                let o = self.coeffs[i].cmp(&other.coeffs[i]);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl<T: Coeff> Poly<T> {
    pub fn zero(witness: &T) -> Self {
        Poly {
            witness: witness.zero_like(),
            coeffs: vec![],
        }
    }

    pub fn one(witness: &T) -> Self {
        Poly::constant(witness.one_like())
    }

    pub fn constant(c: T) -> Self {
        let witness = c.zero_like();
        if c.is_zero() {
            Poly {
                witness,
                coeffs: vec![],
            }
        } else {
            Poly {
                witness,
                coeffs: vec![c],
            }
        }
    }

    /// The monomial c * x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let witness = c.zero_like();
        if c.is_zero() {
            return Poly {
                witness,
                coeffs: vec![],
            };
        }
        let mut coeffs = vec![witness.clone(); k + 1];
        coeffs[k] = c;
        Poly { witness, coeffs }
    }

    pub fn from_coeffs(witness: &T, coeffs: Vec<T>) -> Self {
        let mut p = Poly {
            witness: witness.zero_like(),
            coeffs,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn witness(&self) -> &T {
        &self.witness
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.witness.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.witness.one_like()
    }

    /// Degree; the zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> T {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.witness.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| *c == self.witness.one_like())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(&self.witness, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        Poly::from_coeffs(&self.witness, coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            witness: self.witness.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.witness);
        }
        let mut coeffs = vec![self.witness.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.witness, coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.witness);
        }
        Poly {
            witness: self.witness.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.witness.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            witness: self.witness.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Poly::one(&self.witness);
        let mut b = self.clone();
        let mut e = e;
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

    /// Euclidean division; panics if rhs is zero.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let db = rhs.degree();
        if self.degree() < db {
            return (Poly::zero(&self.witness), self.clone());
        }
        let lead_inv = rhs.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.witness.clone(); (self.degree() - db + 1) as usize];
        let db = db as usize;
        while rem.len() > db {
            let d = rem.len() - 1;
            let c = rem[d].mul(&lead_inv);
            if !c.is_zero() {
                quo[d - db] = c.clone();
                for (i, b) in rhs.coeffs.iter().enumerate() {
                    rem[d - db + i] = rem[d - db + i].sub(&c.mul(b));
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        (
            Poly::from_coeffs(&self.witness, quo),
            Poly::from_coeffs(&self.witness, rem),
        )
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.divrem(rhs).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.divrem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*rhs = g and g monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let one = Poly::one(&self.witness);
        let zero = Poly::zero(&self.witness);
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.leading().inv();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    /// Inverse of self modulo m; None when not coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        if g.degree() != 0 {
            return None;
        }
        Some(s.rem(m))
    }

    /// self composed with x, reduced mod m at every step.
    pub fn compose_mod(&self, x: &Self, m: &Self) -> Self {
        let mut acc = Poly::zero(&self.witness);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Poly::constant(c.clone())).rem(m);
        }
        acc
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        if l == self.witness.one_like() {
            return self.clone();
        }
        self.scale(&l.inv())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.witness.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.witness);
        }
        let one = self.witness.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        let mut k = self.witness.clone();
        for c in &self.coeffs[1..] {
            k = k.add(&one);
            coeffs.push(c.mul(&k));
        }
        Poly::from_coeffs(&self.witness, coeffs)
    }

    /// Multiplicity of `factor` in self (0 if coprime). Panics on constants.
    pub fn multiplicity(&self, factor: &Self) -> u32 {
        assert!(factor.degree() >= 1);
        if self.is_zero() {
            return 0;
        }
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(factor);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            cur = q;
        }
    }

    /// Taylor shift: the polynomial p(x + a).
    pub fn shift_var(&self, a: &T) -> Self {
        let x_plus_a = Poly::from_coeffs(&self.witness, vec![a.clone(), self.witness.one_like()]);
        let mut acc = Poly::zero(&self.witness);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x_plus_a).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Reverse coefficients: x^{deg} * p(1/x).
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(&self.witness, coeffs)
    }

    /// Truncated product mod x^n.
    pub fn mul_trunc(&self, rhs: &Self, n: usize) -> Self {
        let mut coeffs = vec![self.witness.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.witness, coeffs)
    }

    /// Power-series inverse mod x^n; the constant term must be invertible.
    pub fn inv_series(&self, n: usize) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse needs a unit constant term");
        let mut inv = Poly::constant(c0.inv());
        let mut prec = 1;
        while prec < n {
            prec = (prec * 2).min(n);
            // Newton: inv <- inv * (2 - self * inv) mod x^prec
            let prod = self.mul_trunc(&inv, prec);
            let two_minus = Poly::constant(self.witness.one_like())
                .add(&Poly::constant(self.witness.one_like()))
                .sub(&prod);
            inv = inv.mul_trunc(&two_minus, prec);
        }
        inv
    }

    pub fn map<U: Coeff>(&self, wit: &U, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(wit, self.coeffs.iter().map(|c| f(c)).collect())
    }
}

/// Specialized helpers for polynomials over a finite field.
impl Poly<FieldElem> {
    pub fn field(&self) -> crate::ff::FieldDesc {
        self.witness.field().clone()
    }

    /// Coefficient-wise Frobenius x -> x^{q^n} (or roots for n < 0); the
    /// variable is untouched.
    pub fn coeff_frobenius(&self, q: u64, n: i64) -> Poly<FieldElem> {
        Poly {
            witness: self.witness.clone(),
            coeffs: self.coeffs.iter().map(|c| c.frobenius(q, n)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    fn fp(p: u64) -> FieldDesc {
        FieldDesc::new(p, 1, None).unwrap()
    }

    fn poly(f: &FieldDesc, cs: &[u64]) -> Poly<FieldElem> {
        Poly::from_coeffs(&f.zero(), cs.iter().map(|&c| f.from_u64(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = fp(5);
        let a = poly(&f, &[1, 2, 0, 3, 4]);
        let b = poly(&f, &[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_multiples() {
        let f = fp(3);
        let g = poly(&f, &[1, 1]); // x + 1
        let a = g.mul(&poly(&f, &[2, 1, 1]));
        let b = g.mul(&poly(&f, &[0, 1]));
        // the cofactors share no root: x^2+x+2 is nonzero at 0
        assert_eq!(a.gcd(&b), g.monic());
    }

    #[test]
    fn series_inverse() {
        let f = fp(7);
        let a = poly(&f, &[1, 3, 5, 2]);
        let inv = a.inv_series(6);
        let prod = a.mul_trunc(&inv, 6);
        assert_eq!(prod, Poly::one(&f.zero()));
    }

    #[test]
    fn derivative_char_p() {
        let f = fp(2);
        // d/dx (x^2 + x) = 1 in characteristic 2
        let a = poly(&f, &[0, 1, 1]);
        assert_eq!(a.derivative(), Poly::one(&f.zero()));
    }
}
