//! Text grammars: field specifications, rational-function expressions, and
//! divisors. The expression printer and this parser round-trip.
//!
//! Expression atoms are `t`, `tau`, `u` (the field generator), integer
//! constants, and `xi` (a caller-bound K-element, default tau); operators
//! are `+ - * / ^ ( )`. Divisors are signed terms `k*[point]` where a point
//! is `[inf]`, `[xi^(n)]` (n-fold twist of the bound xi), a K-element
//! expression, or a polynomial in t over the base field (a closed point).

use crate::curve::Curve;
use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FieldElem};
use crate::func::RatFunc;
use crate::ktau::KElem;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(dig as u64))
                            .ok_or_else(|| Error::Parse("integer too large".into()))?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            '[' => {
                it.next();
                out.push(Tok::LBracket);
            }
            ']' => {
                it.next();
                out.push(Tok::RBracket);
            }
            ',' => {
                it.next();
                out.push(Tok::Comma);
            }
            other => {
                return Err(Error::Parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    curve: &'a Curve,
    xi: KElem,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.next();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc.div(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err(Error::Parse("zero to a negative power".into()));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut neg = false;
        let mut paren = false;
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            paren = true;
        }
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            neg = true;
        }
        let v = match self.next() {
            Some(Tok::Int(v)) => v as i64,
            got => return Err(Error::Parse(format!("expected exponent, found {got:?}"))),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(RatFunc::constant(KElem::constant(
                self.curve.coeff().from_u64(v),
            ))),
            Some(Tok::Ident(name)) => match name.as_str() {
                "t" => Ok(RatFunc::var(self.curve)),
                "tau" => Ok(RatFunc::constant(self.curve.tau())),
                "u" => Ok(RatFunc::constant(KElem::constant(self.curve.coeff().gen()))),
                "xi" => Ok(RatFunc::constant(self.xi.clone())),
                other => Err(Error::Parse(format!("unknown symbol {other:?}"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            got => Err(Error::Parse(format!("unexpected token {got:?}"))),
        }
    }

    /// The contents of one divisor bracket.
    fn bracket_point(&mut self) -> Result<Point> {
        // special forms first: inf, xi, xi^(n)
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "inf" {
                self.next();
                self.expect(Tok::RBracket)?;
                return Ok(Point::Infinity);
            }
            if name == "xi" {
                // xi^(n) is a twist; bare xi is the bound coordinate
                let save = self.pos;
                self.next();
                if self.peek() == Some(&Tok::Caret) {
                    self.next();
                    if self.peek() == Some(&Tok::LParen) {
                        self.next();
                        let mut neg = false;
                        if self.peek() == Some(&Tok::Minus) {
                            self.next();
                            neg = true;
                        }
                        let n = match self.next() {
                            Some(Tok::Int(v)) => v as i64,
                            got => {
                                return Err(Error::Parse(format!(
                                    "expected twist order, found {got:?}"
                                )))
                            }
                        };
                        self.expect(Tok::RParen)?;
                        self.expect(Tok::RBracket)?;
                        let n = if neg { -n } else { n };
                        let x = self.xi.frobenius(self.curve.q(), n)?;
                        return Ok(Point::Finite(x));
                    }
                    // xi^2 etc: fall through to the expression parser
                    self.pos = save;
                } else if self.peek() == Some(&Tok::RBracket) {
                    self.next();
                    return Ok(Point::Finite(self.xi.clone()));
                } else {
                    self.pos = save;
                }
            }
        }
        let e = self.expr()?;
        self.expect(Tok::RBracket)?;
        point_from_value(self.curve, &e)
    }

    fn divisor(&mut self) -> Result<Divisor> {
        let mut out = Divisor::zero();
        let mut sign = 1i64;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            sign = -1;
        }
        loop {
            // optional multiplicity
            let mult = if let Some(Tok::Int(v)) = self.peek() {
                let v = *v;
                self.next();
                self.expect(Tok::Star)?;
                v as i64
            } else {
                1
            };
            self.expect(Tok::LBracket)?;
            let p = self.bracket_point()?;
            out.add_point(p, sign * mult);
            match self.next() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                None => return Ok(out),
                got => return Err(Error::Parse(format!("unexpected token {got:?}"))),
            }
        }
    }
}

/// Interpret an evaluated expression as a point of P^1.
fn point_from_value(curve: &Curve, v: &RatFunc) -> Result<Point> {
    if !v.den().is_one() {
        return Err(Error::Parse(
            "a divisor point must be a coordinate or a polynomial in t".into(),
        ));
    }
    let num = v.num();
    if num.degree() <= 0 {
        return Ok(Point::Finite(num.coeff(0)));
    }
    // polynomial in t: a closed point over the base field
    let mut base_coeffs = Vec::with_capacity(num.coeffs().len());
    for c in num.coeffs() {
        let k = c
            .as_constant()
            .and_then(|x| curve.embed().pullback(&x))
            .ok_or_else(|| {
                Error::Parse("closed point polynomials need base-field coefficients".into())
            })?;
        base_coeffs.push(k);
    }
    let mut p = Poly::from_coeffs(&curve.base().zero(), base_coeffs);
    if !p.is_monic() {
        p = p.monic();
    }
    Point::closed(curve, p).map_err(|e| Error::Parse(format!("bad closed point: {e}")))
}

fn run_parser<T>(
    curve: &Curve,
    xi: Option<&KElem>,
    input: &str,
    f: impl FnOnce(&mut Parser) -> Result<T>,
) -> Result<T> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        curve,
        xi: xi.cloned().unwrap_or_else(|| curve.tau()),
    };
    let v = f(&mut p)?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(v)
}

/// Parse a rational function in t over K.
pub fn parse_ratfunc(curve: &Curve, xi: Option<&KElem>, input: &str) -> Result<RatFunc> {
    run_parser(curve, xi, input, |p| p.expr())
}

/// Parse an element of K (an expression without t).
pub fn parse_kelem(curve: &Curve, xi: Option<&KElem>, input: &str) -> Result<KElem> {
    let f = parse_ratfunc(curve, xi, input)?;
    f.as_constant()
        .ok_or_else(|| Error::Parse("expected a K-element, found t-dependence".into()))
}

/// Parse a divisor: signed terms `k*[point]`.
pub fn parse_divisor(curve: &Curve, xi: Option<&KElem>, input: &str) -> Result<Divisor> {
    if input.trim() == "0" {
        return Ok(Divisor::zero());
    }
    run_parser(curve, xi, input, |p| p.divisor())
}

/// Parse a field specification `q=<p>^<m>[,modulus=<poly in u>]` or `q=<n>`
/// for a prime power n.
pub fn parse_field_spec(spec: &str) -> Result<FieldDesc> {
    let spec = spec.trim();
    let rest = spec
        .strip_prefix("q=")
        .ok_or_else(|| Error::Parse("field spec must start with q=".into()))?;
    let (qpart, modpart) = match rest.split_once(',') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (rest.trim(), None),
    };
    let (p, m) = match qpart.split_once('^') {
        Some((ps, ms)) => {
            let p: u64 = ps
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime {ps:?}")))?;
            let m: usize = ms
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad extension degree {ms:?}")))?;
            (p, m)
        }
        None => {
            let q: u64 = qpart
                .parse()
                .map_err(|_| Error::Parse(format!("bad field size {qpart:?}")))?;
            factor_prime_power(q)
                .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
        }
    };
    let modulus = match modpart {
        None => None,
        Some(ms) => {
            let body = ms
                .strip_prefix("modulus=")
                .ok_or_else(|| Error::Parse("expected modulus=<poly in u>".into()))?;
            Some(parse_u_poly(body, p)?)
        }
    };
    FieldDesc::new(p, m, modulus)
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = 0;
            let mut v = q;
            while v % p == 0 {
                v /= p;
                m += 1;
            }
            return if v == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Parse a polynomial in u with integer coefficients mod p, as modulus input.
fn parse_u_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    // reuse the expression machinery over a scratch prime field big enough
    // to hold the coefficients literally: parse terms of shape c*u^k
    let toks = lex(s)?;
    let mut coeffs: Vec<u64> = vec![];
    let mut pos = 0usize;
    let mut sign_neg = false;
    if toks.get(pos) == Some(&Tok::Minus) {
        sign_neg = true;
        pos += 1;
    }
    loop {
        // term: INT | INT '*' u ['^' INT] | u ['^' INT]
        let mut c: u64 = 1;
        let mut k: usize = 0;
        let mut got = false;
        if let Some(Tok::Int(v)) = toks.get(pos) {
            c = *v;
            pos += 1;
            got = true;
            if toks.get(pos) == Some(&Tok::Star) {
                pos += 1;
                got = false;
            }
        }
        match toks.get(pos) {
            Some(Tok::Ident(name)) if name == "u" && !got => {
                pos += 1;
                k = 1;
                if toks.get(pos) == Some(&Tok::Caret) {
                    pos += 1;
                    match toks.get(pos) {
                        Some(Tok::Int(v)) => {
                            k = *v as usize;
                            pos += 1;
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected exponent, found {other:?}"
                            )))
                        }
                    }
                }
            }
            _ if got => {}
            other => return Err(Error::Parse(format!("bad modulus term at {other:?}"))),
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        let cv = if sign_neg { (p - c % p) % p } else { c % p };
        coeffs[k] = (coeffs[k] + cv) % p;
        match toks.get(pos) {
            None => break,
            Some(Tok::Plus) => {
                sign_neg = false;
                pos += 1;
            }
            Some(Tok::Minus) => {
                sign_neg = true;
                pos += 1;
            }
            other => return Err(Error::Parse(format!("bad modulus syntax at {other:?}"))),
        }
    }
    Ok(coeffs)
}

/// Canonical display of a base-field element used in reports.
pub fn display_fq(c: &FieldElem) -> String {
    format!("{c}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(q: u64) -> Curve {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            _ => panic!(),
        };
        Curve::new(FieldDesc::new(p, m, None).unwrap())
    }

    #[test]
    fn field_specs() {
        let f = parse_field_spec("q=2^2,modulus=u^2+u+1").unwrap();
        assert_eq!(f.size(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(parse_field_spec("q=9").unwrap().size(), 9);
        assert!(parse_field_spec("q=6").is_err());
        assert!(parse_field_spec("q=2^2,modulus=u^2+1").is_err());
    }

    #[test]
    fn expression_basics() {
        let c = cv(2);
        let t = RatFunc::var(&c);
        let one = RatFunc::one(&c);
        assert_eq!(parse_ratfunc(&c, None, "t^3+t").unwrap(), t.pow(3).add(&t));
        assert_eq!(
            parse_ratfunc(&c, None, "(t-1)/t").unwrap(),
            t.sub(&one).div(&t)
        );
        assert_eq!(parse_ratfunc(&c, None, "t^-2").unwrap(), t.pow(-2));
        assert_eq!(
            parse_ratfunc(&c, None, "tau^2+tau").unwrap(),
            RatFunc::constant(c.tau().pow(2).add(&c.tau()))
        );
    }

    #[test]
    fn divisor_grammar() {
        let c = cv(2);
        let d = parse_divisor(&c, None, "-2*[1] + [t^2+t+1] + [xi^(1)]").unwrap();
        assert_eq!(d.multiplicity(&Point::Finite(c.k_one())), -2);
        let tau2 = c.tau().mul(&c.tau());
        assert_eq!(d.multiplicity(&Point::Finite(tau2)), 1);
        assert_eq!(d.degree(), -2 + 2 + 1);
        assert_eq!(parse_divisor(&c, None, "0").unwrap(), Divisor::zero());
        let d2 = parse_divisor(&c, None, "[inf] + [0]").unwrap();
        assert_eq!(d2.multiplicity(&Point::Infinity), 1);
        assert_eq!(d2.multiplicity(&Point::Finite(c.k_zero())), 1);
        // degree-1 t-polynomial folds to a rational point
        let d3 = parse_divisor(&c, None, "[t+1]").unwrap();
        assert_eq!(d3.multiplicity(&Point::Finite(c.k_one())), 1);
    }

    #[test]
    fn print_parse_roundtrip_samples() {
        let c = cv(4);
        let u = KElem::constant(c.coeff().gen());
        let t = RatFunc::var(&c);
        let samples = vec![
            t.pow(3).add(&t.scale(&u)),
            t.sub(&RatFunc::constant(c.tau())).div(&t.add(&RatFunc::one(&c))),
            RatFunc::constant(c.tau().pow(2).add(&u).div(&c.tau().add(&KElem::constant(
                c.coeff().gen().add(&c.coeff().one()),
            )))),
            RatFunc::one(&c),
            RatFunc::zero(&c),
        ];
        for f in samples {
            let printed = format!("{f}");
            let parsed = parse_ratfunc(&c, None, &printed).unwrap();
            assert_eq!(parsed, f, "roundtrip of {printed}");
        }
    }

    #[test]
    fn divisor_roundtrip() {
        let c = cv(2);
        let quad = Poly::from_coeffs(
            &c.base().zero(),
            vec![c.base().one(), c.base().one(), c.base().one()],
        );
        let d = Divisor::of([
            (Point::Infinity, -2),
            (Point::Finite(c.tau()), 1),
            (Point::closed(&c, quad).unwrap(), 3),
            (Point::Finite(c.k_one()), -1),
        ]);
        let printed = format!("{d}");
        let parsed = parse_divisor(&c, None, &printed).unwrap();
        assert_eq!(parsed, d, "roundtrip of {printed}");
    }
}
