//! Factorization of univariate polynomials over a finite field:
//! squarefree decomposition, then distinct-degree, then Cantor-Zassenhaus
//! equal-degree splitting. Randomness is drawn from a fixed-seed ChaCha
//! stream so results are reproducible run to run.

use crate::ff::FieldElem;
use crate::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type FPoly = Poly<FieldElem>;

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted for determinism. The product of the factors times the leading
/// coefficient reproduces the input.
pub fn poly_factor_fq(g: &FPoly) -> Vec<(FPoly, u32)> {
    assert!(!g.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&g.monic()) {
        for (d, prod) in distinct_degree(&sqfree) {
            for irr in equal_degree_split(&prod, d) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| cmp_coeffs(&a.0, &b.0))
    });
    out
}

fn cmp_coeffs(a: &FPoly, b: &FPoly) -> std::cmp::Ordering {
    for i in (0..a.coeffs().len().max(b.coeffs().len())).rev() {
        let o = a.coeff(i).cmp(&b.coeff(i));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Yun-style squarefree decomposition, adapted to characteristic p: when the
/// derivative vanishes the polynomial is a p-th power and we recurse on its
/// p-th root.
fn squarefree_decomposition(f: &FPoly) -> Vec<(FPoly, u32)> {
    let mut parts: Vec<(FPoly, u32)> = Vec::new();
    squarefree_into(f, 1, &mut parts);
    parts
}

fn squarefree_into(f: &FPoly, outer_mult: u32, parts: &mut Vec<(FPoly, u32)>) {
    if f.degree() <= 0 {
        return;
    }
    let p = f.field().p() as u32;
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = h(x^p); take the p-th root and recurse
        let root = pth_root(f);
        squarefree_into(&root, outer_mult * p, parts);
        return;
    }
    // c collects repeated parts, w the factors of multiplicity prime to p
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let factor = w.div_exact(&y);
        if factor.degree() > 0 {
            parts.push((factor.monic(), i * outer_mult));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    // what remains of c is a perfect p-th power
    if c.degree() > 0 {
        squarefree_into(&pth_root(&c), outer_mult * p, parts);
    }
}

/// Exact p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &FPoly) -> FPoly {
    let field = f.field();
    let p = field.p() as usize;
    let wit = f.witness().clone();
    let mut coeffs = Vec::with_capacity(f.degree() as usize / p + 1);
    for i in (0..=f.degree() as usize).step_by(p) {
        // coefficient root: x -> x^{p^{m-1}} inverts x -> x^p on F_{p^m}
        coeffs.push(f.coeff(i).frobenius(field.p(), -1));
    }
    Poly::from_coeffs(&wit, coeffs)
}

/// Split a squarefree monic polynomial into products of irreducibles of a
/// common degree: returns (d, product of all irreducible factors of degree d).
fn distinct_degree(f: &FPoly) -> Vec<(usize, FPoly)> {
    let field = f.field();
    let q = field.size();
    let wit = f.witness().clone();
    let x = Poly::monomial(field.one(), 1);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xq = x.rem(&rest); // x^{q^d} mod rest, updated each round
    let mut d = 0usize;
    while rest.degree() > 0 {
        d += 1;
        if (rest.degree() as usize) < 2 * d {
            // what's left is irreducible
            out.push((rest.degree() as usize, rest.clone()));
            break;
        }
        xq = pow_q_mod(&xq, q, &rest);
        let g = xq.sub(&x.rem(&rest)).gcd(&rest);
        if g.degree() > 0 {
            out.push((d, g.clone()));
            rest = rest.div_exact(&g);
            xq = xq.rem(&rest);
        }
    }
    let _ = wit;
    out
}

/// h^q mod f by square-and-multiply on the exponent q.
fn pow_q_mod(h: &FPoly, q: u64, f: &FPoly) -> FPoly {
    let mut r = Poly::one(h.witness());
    let mut b = h.clone();
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b).rem(f);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(f);
        }
    }
    r
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is squarefree, monic, and a
/// product of irreducibles all of degree `d`.
fn equal_degree_split(f: &FPoly, d: usize) -> Vec<FPoly> {
    if f.degree() as usize == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let q = field.size();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d6f6f7265);
    loop {
        let deg = f.degree() as usize - 1;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            coeffs.push(field.elem_from_index(rng.gen_range(0..q)));
        }
        let r = Poly::from_coeffs(f.witness(), coeffs);
        if r.degree() < 1 {
            continue;
        }
        let g = r.gcd(f);
        let split = if g.degree() > 0 && (g.degree() as i64) < f.degree() {
            Some(g)
        } else if field.p() == 2 {
            // trace map T(r) = r + r^2 + r^4 + ... + r^{q^d / 2}
            let mut tr = r.clone().rem(f);
            let mut cur = r.clone().rem(f);
            let steps = (d as u32) * field.degree() as u32;
            for _ in 1..steps {
                cur = cur.mul(&cur).rem(f);
                tr = tr.add(&cur).rem(f);
            }
            let g = tr.gcd(f);
            if g.degree() > 0 && (g.degree() as i64) < f.degree() {
                Some(g)
            } else {
                None
            }
        } else {
            // r^{(q^d - 1)/2} - 1 splits the factors by quadratic character
            let e = ((q as u128).pow(d as u32) - 1) / 2;
            let pw = pow_u128_mod(&r, e, f);
            let g = pw.sub(&Poly::one(f.witness())).gcd(f);
            if g.degree() > 0 && (g.degree() as i64) < f.degree() {
                Some(g)
            } else {
                None
            }
        };
        if let Some(g) = split {
            let mut out = equal_degree_split(&g.monic(), d);
            out.extend(equal_degree_split(&f.div_exact(&g).monic(), d));
            return out;
        }
    }
}

fn pow_u128_mod(h: &FPoly, mut e: u128, f: &FPoly) -> FPoly {
    let mut r = Poly::one(h.witness());
    let mut b = h.rem(f);
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b).rem(f);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(f);
        }
    }
    r
}

/// Convenience: is the monic polynomial irreducible?
pub fn is_irreducible(f: &FPoly) -> bool {
    if f.degree() < 1 {
        return false;
    }
    let fs = poly_factor_fq(f);
    fs.len() == 1 && fs[0].1 == 1
}
