//! Exact arithmetic in finite fields F_{p^m}.
//!
//! A [`FieldDesc`] fixes a presentation F_p[u]/(modulus) with a monic
//! irreducible modulus of degree m. When no modulus is supplied the canonical
//! one is the monic irreducible of degree m over F_p whose non-leading
//! coefficient vector has the smallest value in base p, so presentations are
//! reproducible across runs. Elements are coefficient vectors of length m.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    m: usize,
    /// Monic modulus, length m + 1, coefficients mod p, ascending powers of u.
    modulus: Vec<u64>,
}

/// Descriptor of a finite field F_{p^m} with a fixed modulus presentation.
#[derive(Clone, Debug)]
pub struct FieldDesc(Arc<FieldInner>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldDesc {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- arithmetic on coefficient vectors over F_p ----

fn vp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn vp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0);
        out[i] = x % p;
    }
    vp_trim(&mut out);
    out
}

fn vp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    vp_trim(&mut out);
    out
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; p is small.
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Remainder of a modulo the monic polynomial q, in place.
fn vp_rem(a: &mut Vec<u64>, q: &[u64], p: u64) {
    let dq = q.len() - 1;
    while a.len() > dq {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dq;
        if lead != 0 {
            for i in 0..=dq {
                let t = (q[i] * lead) % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop();
        vp_trim(a);
        if a.len() <= dq {
            break;
        }
    }
    vp_trim(a);
}

fn vp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let lb_inv = inv_mod_p(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    vp_trim(&mut rem);
    let mut quo = vec![0u64; rem.len().saturating_sub(db)];
    while rem.len() > db || (db == 0 && !rem.is_empty()) {
        let d = rem.len() - 1;
        if d < db {
            break;
        }
        let c = (*rem.last().unwrap() * lb_inv) % p;
        quo[d - db] = c;
        for i in 0..=db {
            let t = (b[i] * c) % p;
            rem[d - db + i] = (rem[d - db + i] + p - t) % p;
        }
        vp_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    vp_trim(&mut quo);
    (quo, rem)
}

fn vp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    vp_trim(&mut x);
    vp_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = vp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = inv_mod_p(l, p);
        for c in x.iter_mut() {
            *c = *c * li % p;
        }
    }
    x
}

fn vp_powmod(base: &[u64], mut e: u128, q: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = base.to_vec();
    vp_rem(&mut b, q, p);
    while e > 0 {
        if e & 1 == 1 {
            r = vp_mul(&r, &b, p);
            vp_rem(&mut r, q, p);
        }
        b = vp_mul(&b, &b, p);
        vp_rem(&mut b, q, p);
        e >>= 1;
    }
    r
}

/// Rabin irreducibility test for a monic polynomial over F_p.
fn vp_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let u = vec![0, 1];
    // u^{p^m} == u mod f
    let top = vp_powmod(&u, (p as u128).pow(m as u32), f, p);
    if vp_sub(&top, &u, p) != Vec::<u64>::new() {
        return false;
    }
    // gcd(u^{p^{m/r}} - u, f) == 1 for every prime r | m
    let mut rest = m;
    let mut r = 2;
    let mut primes = vec![];
    while rest > 1 {
        if rest % r == 0 {
            primes.push(r);
            while rest % r == 0 {
                rest /= r;
            }
        }
        r += 1;
    }
    for r in primes {
        let e = (p as u128).pow((m / r) as u32);
        let pw = vp_powmod(&u, e, f, p);
        let diff = vp_sub(&pw, &u, p);
        let g = vp_gcd(&diff, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldDesc {
    /// Build F_{p^m}. With no modulus, the canonical irreducible is chosen.
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<FieldDesc> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::BadField("extension degree must be >= 1".into()));
        }
        let modulus = match modulus {
            Some(mut q) => {
                for c in q.iter_mut() {
                    *c %= p;
                }
                vp_trim(&mut q);
                if q.len() != m + 1 || *q.last().unwrap() != 1 {
                    return Err(Error::BadField(format!(
                        "modulus must be monic of degree {m}"
                    )));
                }
                if !vp_irreducible(&q, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                q
            }
            None => Self::canonical_modulus(p, m)?,
        };
        Ok(FieldDesc(Arc::new(FieldInner { p, m, modulus })))
    }

    /// The monic irreducible of degree m over F_p with the smallest
    /// base-p value of its non-leading coefficients.
    fn canonical_modulus(p: u64, m: usize) -> Result<Vec<u64>> {
        if m == 1 {
            return Ok(vec![0, 1]); // u itself: F_p = F_p[u]/(u)
        }
        let total = (p as u128).checked_pow(m as u32).ok_or_else(|| {
            Error::BadField("field too large for canonical modulus search".into())
        })?;
        for val in 0..total {
            let mut f = vec![0u64; m + 1];
            let mut v = val;
            for c in f.iter_mut().take(m) {
                *c = (v % p as u128) as u64;
                v /= p as u128;
            }
            f[m] = 1;
            if vp_irreducible(&f, p) {
                return Ok(f);
            }
        }
        unreachable!("an irreducible of every degree exists")
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    /// q = p^m, the number of elements.
    pub fn size(&self) -> u64 {
        self.0.p.pow(self.0.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            c: vec![0; self.0.m],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// The residue class of an integer (lands in the prime subfield).
    pub fn from_u64(&self, n: u64) -> FieldElem {
        let mut c = vec![0; self.0.m];
        c[0] = n % self.0.p;
        FieldElem {
            field: self.clone(),
            c,
        }
    }

    /// The class of u, the generator of the presentation.
    pub fn gen(&self) -> FieldElem {
        let mut c = vec![0; self.0.m];
        if self.0.m >= 2 {
            c[1] = 1;
        } else {
            // In F_p = F_p[u]/(u) the class of u is 0.
        }
        FieldElem {
            field: self.clone(),
            c,
        }
    }

    /// Element from coefficients (ascending powers of u), reduced mod p.
    pub fn elem(&self, coeffs: &[u64]) -> FieldElem {
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % self.0.p).collect();
        assert!(c.len() <= self.0.m, "coefficient vector too long");
        c.resize(self.0.m, 0);
        FieldElem {
            field: self.clone(),
            c,
        }
    }

    /// All q elements in lexicographic coefficient order (index 0 fastest).
    pub fn elements(&self) -> Vec<FieldElem> {
        let q = self.size();
        (0..q).map(|v| self.elem_from_index(v)).collect()
    }

    /// Element number v in the base-p coefficient enumeration.
    pub fn elem_from_index(&self, mut v: u64) -> FieldElem {
        let mut c = vec![0; self.0.m];
        for ci in c.iter_mut() {
            *ci = v % self.0.p;
            v /= self.0.p;
        }
        FieldElem {
            field: self.clone(),
            c,
        }
    }
}

/// An element of F_{p^m}, represented by m residues mod p.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldDesc,
    c: Vec<u64>,
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // coefficient order, most significant last; fields are expected equal
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Index of this element in the field's enumeration order.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.c.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p();
        let mut c = self.c.clone();
        for (a, b) in c.iter_mut().zip(&rhs.c) {
            *a = (*a + *b) % p;
        }
        FieldElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p();
        let mut c = self.c.clone();
        for (a, b) in c.iter_mut().zip(&rhs.c) {
            *a = (*a + p - *b) % p;
        }
        FieldElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn neg(&self) -> FieldElem {
        self.field.zero().sub(self)
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p();
        let mut prod = vp_mul(&self.c, &rhs.c, p);
        vp_rem(&mut prod, self.field.modulus(), p);
        prod.resize(self.field.degree(), 0);
        FieldElem {
            field: self.field.clone(),
            c: prod,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        // Extended Euclid over F_p[u] against the modulus.
        let p = self.field.p();
        let mut a = self.c.clone();
        vp_trim(&mut a);
        let mut b = self.field.modulus().to_vec();
        let mut s0: Vec<u64> = vec![1];
        let mut s1: Vec<u64> = vec![];
        while !b.is_empty() {
            let (q, r) = vp_divrem(&a, &b, p);
            let s2 = vp_sub(&s0, &vp_mul(&q, &s1, p), p);
            a = b;
            b = r;
            s0 = s1;
            s1 = s2;
        }
        // a = gcd (a unit of F_p since the modulus is irreducible)
        debug_assert_eq!(a.len(), 1);
        let scale = inv_mod_p(a[0], p);
        let mut c: Vec<u64> = s0.iter().map(|&x| x * scale % p).collect();
        vp_rem(&mut c, self.field.modulus(), p);
        c.resize(self.field.degree(), 0);
        FieldElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn div(&self, rhs: &FieldElem) -> FieldElem {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut r = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// x^{q^n} for n >= 0, or the unique q^{|n|}-th root for n < 0, where q
    /// is a power of the characteristic p. Roots always exist: the field is
    /// perfect and x -> x^q is an automorphism.
    pub fn frobenius(&self, q: u64, n: i64) -> FieldElem {
        assert!(is_power_of(q, self.field.p()), "q must be a power of p");
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let ord = self.field.size() - 1; // order of the multiplicative group
        if ord == 1 {
            return self.clone(); // F_2: the only nonzero element is 1
        }
        let qk = q % ord;
        let mut e: u64 = 1;
        for _ in 0..n.unsigned_abs() {
            e = e * qk % ord;
        }
        if n > 0 {
            self.pow(e)
        } else {
            // root: raise to the inverse of q^{|n|} mod (size - 1)
            let inv = mod_inverse(e % ord, ord);
            self.pow(inv)
        }
    }

    /// Whether the element lies in the subfield of q elements.
    pub fn in_subfield(&self, q: u64) -> bool {
        self.pow(q) == *self
    }
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = q;
    while x > 1 {
        if x % p != 0 {
            return false;
        }
        x /= p;
    }
    x == 1
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    // gcd(a, n) = 1 here (a is a power of the characteristic, n = q' - 1)
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    ((t % n as i128 + n as i128) % n as i128) as u64
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c[1..].iter().all(|&x| x == 0) {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (i, &ci) in self.c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, ci) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "u")?,
                (1, c) => write!(f, "{c}*u")?,
                (i, 1) => write!(f, "u^{i}")?,
                (i, c) => write!(f, "{c}*u^{i}")?,
            }
        }
        Ok(())
    }
}

/// An embedding of one finite field presentation into another, cached as a
/// full forward table (source fields are tiny). The generator of the source
/// maps to the lexicographically least root of the source modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbed {
    from: FieldDesc,
    to: FieldDesc,
    table: Vec<FieldElem>, // indexed by source element index
}

impl FieldEmbed {
    pub fn new(from: &FieldDesc, to: &FieldDesc) -> Result<FieldEmbed> {
        if from.p() != to.p() {
            return Err(Error::BadField("embeddings require equal characteristic".into()));
        }
        if to.degree() % from.degree() != 0 {
            return Err(Error::BadField(format!(
                "F_{} does not embed in F_{}",
                from.size(),
                to.size()
            )));
        }
        let gen_image = if from.degree() == 1 {
            to.zero()
        } else if from == to {
            to.gen()
        } else {
            // least root of the source modulus in the target
            let modl = from.modulus();
            let mut found = None;
            for x in to.elements() {
                let mut acc = to.zero();
                for &c in modl.iter().rev() {
                    acc = acc.mul(&x).add(&to.from_u64(c));
                }
                if acc.is_zero() {
                    found = Some(x);
                    break;
                }
            }
            found.ok_or_else(|| Error::BadField("modulus has no root in target".into()))?
        };
        let q = from.size();
        let mut table = Vec::with_capacity(q as usize);
        for v in 0..q {
            let src = from.elem_from_index(v);
            let mut acc = to.zero();
            for &c in src.coeffs().iter().rev() {
                acc = acc.mul(&gen_image).add(&to.from_u64(c));
            }
            table.push(acc);
        }
        Ok(FieldEmbed {
            from: from.clone(),
            to: to.clone(),
            table,
        })
    }

    pub fn from_field(&self) -> &FieldDesc {
        &self.from
    }

    pub fn to_field(&self) -> &FieldDesc {
        &self.to
    }

    pub fn map(&self, x: &FieldElem) -> FieldElem {
        debug_assert_eq!(*x.field(), self.from);
        self.table[x.index() as usize].clone()
    }

    /// Inverse image, if the element lies in the embedded subfield.
    pub fn pullback(&self, y: &FieldElem) -> Option<FieldElem> {
        debug_assert_eq!(*y.field(), self.to);
        self.table
            .iter()
            .position(|t| t == y)
            .map(|i| self.from.elem_from_index(i as u64))
    }
}
