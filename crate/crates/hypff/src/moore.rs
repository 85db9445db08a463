//! Moore determinants and the Moore product formula.
//!
//! Moore(x_1,...,x_n) is the determinant of the matrix whose rows carry the
//! q-power Frobenius exponents q^{n-1} (top) down to q^0 (bottom), column j
//! holding powers of x_j. The Moore identity factors it as the product of
//! x_k + a_{k+1} x_{k+1} + ... + a_n x_n over all suffix combinations with
//! coefficients in F_q; the product side here is computed by literal
//! enumeration and serves as the independent oracle for the determinant.

use crate::curve::{enumerate_span, Curve};
use crate::error::Result;
use crate::func::RatFunc;
use crate::ktau::KElem;
use crate::poly::Coeff;

/// Ring elements usable in Moore matrices: a field with an F_q-scalar action.
pub trait MooreElem: Coeff {
    fn scale_k(&self, c: &KElem) -> Self;
}

impl MooreElem for KElem {
    fn scale_k(&self, c: &KElem) -> Self {
        self.mul(c)
    }
}

impl Coeff for RatFunc {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(crate::poly::Poly::zero(self.num().witness()))
    }
    fn one_like(&self) -> Self {
        RatFunc::from_poly(crate::poly::Poly::one(self.num().witness()))
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        RatFunc::inv(self)
    }
}

impl MooreElem for RatFunc {
    fn scale_k(&self, c: &KElem) -> Self {
        self.scale(c)
    }
}

fn pow_u128<T: Coeff>(x: &T, mut e: u128) -> T {
    let mut r = x.one_like();
    let mut b = x.clone();
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

/// The Moore matrix: entry (i, j) = x_j^{q^{n-1-i}}.
pub fn moore_matrix<T: Coeff>(xs: &[T], q: u64) -> Vec<Vec<T>> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let e = (q as u128).pow((n - 1 - i) as u32);
            xs.iter().map(|x| pow_u128(x, e)).collect()
        })
        .collect()
}

/// Determinant of the Moore matrix, by Gaussian elimination over the field
/// of entries.
pub fn moore_det<T: Coeff>(xs: &[T], q: u64) -> T {
    assert!(!xs.is_empty(), "Moore determinant needs n >= 1");
    let mut m = moore_matrix(xs, q);
    det_in_place(&mut m)
}

fn det_in_place<T: Coeff>(m: &mut [Vec<T>]) -> T {
    let n = m.len();
    let mut det = m[0][0].one_like();
    let mut negate = false;
    for k in 0..n {
        let pivot_row = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(i) => i,
            None => return m[0][0].zero_like(),
        };
        if pivot_row != k {
            m.swap(k, pivot_row);
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        let pinv = pivot.inv();
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].mul(&pinv);
            for j in k..n {
                let t = m[k][j].mul(&factor);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

/// The right-hand side of the Moore identity, computed by enumeration:
/// prod_{k} prod_{a in F_q^{n-k}} (x_k + a_{k+1} x_{k+1} + ... + a_n x_n).
pub fn moore_product<T: MooreElem>(curve: &Curve, xs: &[T]) -> Result<T> {
    assert!(!xs.is_empty(), "Moore product needs n >= 1");
    let scalars = curve.base_scalars();
    let mut acc = xs[0].one_like();
    for k in 0..xs.len() {
        let tail = &xs[k + 1..];
        let combos = enumerate_span(
            tail,
            &scalars,
            xs[k].zero_like(),
            |c, v| v.scale_k(c),
            |a, b| a.add(b),
            curve.budget(),
        )?;
        for e in combos {
            acc = acc.mul(&xs[k].add(&e));
        }
    }
    Ok(acc)
}
