//! Rank-one shtukas on P^1 with generic basepoint: validation,
//! nondegeneracy, the special function, canonical liftings of principal
//! parts, Drinfeld iterates, and the Catalan-Drinfeld symbol by two
//! independent routes (linear solve and the determinantal formula).
//!
//! A shtuka is a quadruple (D, xi, eta, E) with D a nonzero effective
//! conductor, xi a generic basepoint, eta the zero, E of degree g - 1 = -1,
//! and E - E^(1) ~_D -xi^(1) + eta; the certifying witness is stored.

use crate::conductor::{equivalent_mod_d, is_one_mod_d};
use crate::curve::Curve;
use crate::divisor::{splice_closed, supported_away, Divisor, Point};
use crate::error::{Error, Result};
use crate::func::RatFunc;
use crate::hyp::{hyp, lift_into};
use crate::ktau::KElem;
use crate::linalg;
use crate::rr::{rr_basis, PrincipalPart};

/// How to compute the Catalan-Drinfeld symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymbolMethod {
    /// Evaluate psi_alpha / psi_beta at the basepoint.
    Solve,
    /// Ratio of (n+1) x (n+1) node-evaluation determinants.
    Determinant,
}

/// A validated rank-one shtuka.
#[derive(Clone, Debug)]
pub struct Shtuka {
    conductor: Divisor,
    basepoint: KElem,
    eta: Point,
    e: Divisor,
    witness: RatFunc,
}

impl Shtuka {
    /// Check the quadruple and store the equivalence witness.
    pub fn validate(
        curve: &Curve,
        d: &Divisor,
        basepoint: &KElem,
        eta: &Point,
        e: &Divisor,
    ) -> Result<Shtuka> {
        PrincipalPart::check_conductor(curve, d)?;
        if basepoint.is_constant() {
            return Err(Error::NonGenericBasepoint);
        }
        if e.degree() != -1 {
            return Err(Error::BadDegree(e.degree()));
        }
        let xi_div = Divisor::point(Point::Finite(basepoint.clone()));
        let eta_div = Divisor::point(eta.clone());
        if !supported_away(&xi_div, d, curve) || !supported_away(&eta_div, d, curve) {
            return Err(Error::SupportMeetsConductor);
        }
        if !supported_away(e, d, curve) {
            return Err(Error::SupportMeetsConductor);
        }
        let q = curve.q();
        let lhs = e.sub(&e.twist(q, 1)?);
        let pole = basepoint.frobenius(q, 1)?;
        let rhs = eta_div.sub(&Divisor::point(Point::Finite(pole)));
        let witness = equivalent_mod_d(curve, &lhs, &rhs, d)?.ok_or(Error::RelationFails)?;
        Ok(Shtuka {
            conductor: d.clone(),
            basepoint: basepoint.clone(),
            eta: eta.clone(),
            e: e.clone(),
            witness,
        })
    }

    pub fn conductor(&self) -> &Divisor {
        &self.conductor
    }

    pub fn basepoint(&self) -> &KElem {
        &self.basepoint
    }

    pub fn eta(&self) -> &Point {
        &self.eta
    }

    pub fn divisor(&self) -> &Divisor {
        &self.e
    }

    /// The pole of the shtuka, xi^(1).
    pub fn pole(&self, curve: &Curve) -> KElem {
        self.basepoint.frobenius(curve.q(), 1).expect("positive twist")
    }

    /// Nondegeneracy at genus 0: eta avoids xi^(i) for
    /// i in [1 - deg(E + D), 0]. The set is empty iff deg D = 1.
    pub fn nondegenerate(&self, curve: &Curve) -> bool {
        let upper = 0i64;
        let lower = 1 - (self.e.degree() + self.conductor.degree());
        let Point::Finite(y) = &self.eta else {
            // a non-rational zero can never be a twist of a generic point
            return true;
        };
        for i in lower..=upper {
            let eq = if i >= 0 {
                match self.basepoint.frobenius(curve.q(), i) {
                    Ok(x) => x == *y,
                    Err(_) => false,
                }
            } else {
                match y.frobenius(curve.q(), -i) {
                    Ok(yl) => yl == self.basepoint,
                    Err(_) => false,
                }
            };
            if eq {
                return false;
            }
        }
        true
    }

    /// The special function f with f|_D = 1 and
    /// (f) = E^(1) - E - xi^(1) + eta.
    pub fn special_function(&self, curve: &Curve) -> RatFunc {
        let f = self.witness.inv();
        debug_assert!(is_one_mod_d(curve, &f, &self.conductor));
        f
    }

    /// The unique lifting of alpha into H^0(O(E+D)) with principal part
    /// alpha along D.
    pub fn psi_lift(&self, curve: &Curve, alpha: &PrincipalPart) -> Result<RatFunc> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        if !self.nondegenerate(curve) {
            return Err(Error::Degenerate);
        }
        let space = self.e.add(&self.conductor);
        lift_into(curve, alpha, &space)
    }

    /// The Catalan-Drinfeld symbol (psi_alpha / psi_beta)(xi).
    pub fn cd_symbol(
        &self,
        curve: &Curve,
        alpha: &PrincipalPart,
        beta: &PrincipalPart,
        method: SymbolMethod,
    ) -> Result<KElem> {
        self.cd_symbol_with(curve, alpha, beta, method, None)
    }

    /// Symbol with an explicit E = E1 - E2 decomposition for the determinant
    /// method (auto-derived when omitted: E2 is the negative part of E,
    /// spliced to geometric points).
    pub fn cd_symbol_with(
        &self,
        curve: &Curve,
        alpha: &PrincipalPart,
        beta: &PrincipalPart,
        method: SymbolMethod,
        decomp: Option<(Divisor, Divisor)>,
    ) -> Result<KElem> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::ZeroAlphaBeta);
        }
        if !self.nondegenerate(curve) {
            return Err(Error::Degenerate);
        }
        match method {
            SymbolMethod::Solve => {
                let pa = self.psi_lift(curve, alpha)?;
                let pb = self.psi_lift(curve, beta)?;
                // psi_alpha and psi_beta vanish to the same order at the
                // basepoint; compare leading Laurent coefficients rather
                // than dividing the functions
                let bp = Point::Finite(self.basepoint.clone());
                let ord = pb.ord_at(&bp, curve);
                debug_assert_eq!(pa.ord_at(&bp, curve), ord);
                let (va, vb) = if ord == 0 {
                    (pa.eval(&self.basepoint)?, pb.eval(&self.basepoint)?)
                } else {
                    let lin = RatFunc::var(curve)
                        .sub(&RatFunc::constant(self.basepoint.clone()));
                    let adj = lin.pow(-ord);
                    (
                        pa.mul(&adj).eval(&self.basepoint)?,
                        pb.mul(&adj).eval(&self.basepoint)?,
                    )
                };
                if va.is_zero() || vb.is_zero() {
                    return Err(Error::Domain(
                        "internal: symbol vanished for a nondegenerate shtuka".into(),
                    ));
                }
                Ok(va.div(&vb))
            }
            SymbolMethod::Determinant => self.symbol_determinant(curve, alpha, beta, decomp),
        }
    }

    fn symbol_determinant(
        &self,
        curve: &Curve,
        alpha: &PrincipalPart,
        beta: &PrincipalPart,
        decomp: Option<(Divisor, Divisor)>,
    ) -> Result<KElem> {
        let (e1, e2) = match decomp {
            Some(pair) => pair,
            None => {
                let neg = self.e.negative_part();
                (self.e.add(&neg), neg)
            }
        };
        if e1.sub(&e2) != self.e {
            return Err(Error::NoDecomposition("E1 - E2 must equal E".into()));
        }
        if !e2.is_effective() {
            return Err(Error::NoDecomposition("E2 must be effective".into()));
        }
        // nodes: the geometric points of E2, each of multiplicity one
        let mut nodes: Vec<Point> = Vec::new();
        for (p, m) in e2.terms() {
            if m != 1 {
                return Err(Error::NoDecomposition(format!(
                    "E2 has multiplicity {m} at {p}"
                )));
            }
            match p {
                Point::Closed(pc) => {
                    let roots = splice_closed(pc, curve.coeff()).map_err(|_| {
                        Error::NoDecomposition(format!(
                            "cannot splice {p} over F_{}",
                            curve.coeff().size()
                        ))
                    })?;
                    nodes.extend(roots);
                }
                _ => nodes.push(p.clone()),
            }
        }
        // disjointness: nodes pairwise distinct, away from E1 and the basepoint
        for (i, a) in nodes.iter().enumerate() {
            for b in nodes.iter().skip(i + 1) {
                if a.meets(b, curve) {
                    return Err(Error::NoDecomposition("E2 nodes collide".into()));
                }
            }
            if *a == Point::Finite(self.basepoint.clone()) {
                return Err(Error::NoDecomposition(
                    "the basepoint lies in supp E2".into(),
                ));
            }
            for p1 in e1.support() {
                if a.meets(p1, curve) {
                    return Err(Error::NoDecomposition(
                        "supp E1 meets supp E2".into(),
                    ));
                }
            }
        }
        let base_pt = Point::Finite(self.basepoint.clone());
        let base_mult = e1.multiplicity(&base_pt);
        if base_mult > 1 {
            return Err(Error::NoDecomposition(
                "the basepoint has multiplicity > 1 in E1".into(),
            ));
        }
        let n = e2.degree() as usize;
        let funcs = rr_basis(curve, &e1);
        debug_assert_eq!(funcs.len(), n);
        let space = e1.add(&self.conductor);
        let alpha_lift = lift_into(curve, alpha, &space)?;
        let beta_lift = lift_into(curve, beta, &space)?;
        // the column-0 functional: evaluation at the basepoint, adjusted by
        // (t - xi)^m when the basepoint carries a (simple) pole of E1
        let lead = |h: &RatFunc| -> Result<KElem> {
            if base_mult == 0 {
                h.eval(&self.basepoint)
            } else {
                let lin = RatFunc::var(curve)
                    .sub(&RatFunc::constant(self.basepoint.clone()));
                h.mul(&lin).eval(&self.basepoint)
            }
        };
        let eval_row = |f: &RatFunc| -> Result<Vec<KElem>> {
            let mut row = Vec::with_capacity(n + 1);
            row.push(lead(f)?);
            for node in &nodes {
                row.push(f.eval_point(node)?);
            }
            Ok(row)
        };
        // The two matrices differ only in row 0, so expand both determinants
        // along it and share the n x n minors of the basis-evaluation block.
        let lower: Vec<Vec<KElem>> = funcs
            .iter()
            .map(|f| eval_row(f))
            .collect::<Result<_>>()?;
        let minors: Vec<KElem> = (0..=n)
            .map(|skip| {
                if n == 0 {
                    return KElem::one(&curve.coeff().clone());
                }
                let sub: Vec<Vec<KElem>> = lower
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != skip)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                linalg::det(&sub)
            })
            .collect();
        let expand = |top: Vec<KElem>| -> KElem {
            let mut acc = KElem::zero(&curve.coeff().clone());
            for (j, (v, m)) in top.iter().zip(&minors).enumerate() {
                if v.is_zero() || m.is_zero() {
                    continue;
                }
                let term = v.mul(m);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        };
        let det_a = expand(eval_row(&alpha_lift)?);
        let det_b = expand(eval_row(&beta_lift)?);
        if det_a.is_zero() || det_b.is_zero() {
            return Err(Error::Domain(
                "internal: a Realization determinant vanished".into(),
            ));
        }
        Ok(det_a.div(&det_b))
    }

    /// Replace E by E + (h) for a function h with h|_D = 1 whose divisor is
    /// supported away from D: an equivalent shtuka with the same symbol but
    /// a different special function.
    pub fn shift_divisor(&self, curve: &Curve, h: &RatFunc) -> Result<Shtuka> {
        if !is_one_mod_d(curve, h, &self.conductor) {
            return Err(Error::Domain("shift must restrict to 1 on D".into()));
        }
        let e = self.e.add(&h.divisor_of(curve)?);
        Shtuka::validate(curve, &self.conductor, &self.basepoint, &self.eta, &e)
    }
}

/// A Realization-shape shtuka together with the data of its hypergeometric
/// comparison: the F_q-rational divisor E_0 and the untwisted generic point
/// xi where Hyp_D(alpha, beta, E_0) is evaluated.
#[derive(Clone, Debug)]
pub struct Realization {
    pub shtuka: Shtuka,
    pub e0: Divisor,
    pub xi: KElem,
    pub case: u8,
    pub n: i64,
}

impl Realization {
    /// Case 1: eta = xi^(N), E = E_0 - (xi^(1) + ... + xi^(N-1)), N > g = 0,
    /// deg E_0 = N - 2. Nondegenerate by construction.
    pub fn case1(
        curve: &Curve,
        d: &Divisor,
        xi: &KElem,
        n: i64,
        e0: &Divisor,
    ) -> Result<Realization> {
        if n <= 0 {
            return Err(Error::Domain("case 1 needs N > 0".into()));
        }
        if e0.degree() != n - 2 {
            return Err(Error::Domain(format!(
                "deg E_0 = {} but case 1 with N = {n} needs {}",
                e0.degree(),
                n - 2
            )));
        }
        let q = curve.q();
        let eta = Point::Finite(xi.frobenius(q, n)?);
        let mut e = e0.clone();
        for k in 1..n {
            e.add_point(Point::Finite(xi.frobenius(q, k)?), -1);
        }
        let shtuka = Shtuka::validate(curve, d, xi, &eta, &e)?;
        debug_assert!(shtuka.nondegenerate(curve));
        Ok(Realization {
            shtuka,
            e0: e0.clone(),
            xi: xi.clone(),
            case: 1,
            n,
        })
    }

    /// Case 2: basepoint xi^(N), eta = xi, E = E_0 + xi^(0) + ... + xi^(N),
    /// N > -2 + deg D, deg E_0 = -N - 2 (the low Hyp regime).
    pub fn case2(
        curve: &Curve,
        d: &Divisor,
        xi: &KElem,
        n: i64,
        e0: &Divisor,
    ) -> Result<Realization> {
        if n <= d.degree() - 2 {
            return Err(Error::Domain(format!(
                "case 2 needs N > deg D - 2 = {}",
                d.degree() - 2
            )));
        }
        if e0.degree() != -n - 2 {
            return Err(Error::Domain(format!(
                "deg E_0 = {} but case 2 with N = {n} needs {}",
                e0.degree(),
                -n - 2
            )));
        }
        let q = curve.q();
        let basepoint = xi.frobenius(q, n)?;
        let eta = Point::Finite(xi.clone());
        let mut e = e0.clone();
        for k in 0..=n {
            e.add_point(Point::Finite(xi.frobenius(q, k)?), 1);
        }
        let shtuka = Shtuka::validate(curve, d, &basepoint, &eta, &e)?;
        debug_assert!(shtuka.nondegenerate(curve));
        Ok(Realization {
            shtuka,
            e0: e0.clone(),
            xi: xi.clone(),
            case: 2,
            n,
        })
    }

    /// The hypergeometric route to the same value:
    /// Hyp_D(alpha, beta, E_0) evaluated at xi.
    pub fn hyp_value(
        &self,
        curve: &Curve,
        alpha: &PrincipalPart,
        beta: &PrincipalPart,
    ) -> Result<KElem> {
        let h = hyp(curve, self.shtuka.conductor(), alpha, beta, &self.e0)?;
        h.eval(&self.xi)
    }
}

/// The Drinfeld iterates psi_0 = psi, psi_{k+1} = f * psi_k^(1).
pub fn drinfeld_iterates(
    curve: &Curve,
    f: &RatFunc,
    psi: &RatFunc,
    n: i64,
) -> Result<Vec<RatFunc>> {
    assert!(n >= 0);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(psi.clone());
    for _ in 0..n {
        let prev = out.last().unwrap();
        out.push(f.mul(&prev.twist(curve.q(), 1)?));
    }
    Ok(out)
}

/// Dimension over K of the span of rational functions: clear to a common
/// denominator and row-reduce the coefficient matrix.
pub fn rank_over_k(fs: &[RatFunc]) -> usize {
    if fs.is_empty() {
        return 0;
    }
    let witness = fs[0].num().witness().clone();
    let one = crate::poly::Poly::one(&witness);
    let mut den = one;
    for f in fs {
        let g = den.gcd(f.den());
        den = den.mul(&f.den().div_exact(&g));
    }
    let cleared: Vec<crate::func::TPoly> = fs
        .iter()
        .map(|f| f.num().mul(&den.div_exact(f.den())))
        .collect();
    let ncols = cleared.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    if ncols == 0 {
        return 0;
    }
    let rows: Vec<Vec<KElem>> = cleared
        .iter()
        .map(|p| (0..ncols).map(|i| p.coeff(i)).collect())
        .collect();
    linalg::rank(&rows)
}

/// Hypothesis data for the chi = 0 rank lemma: a divisor D_1 of X, the
/// root-shift depth m >= 0, and the iterate count N >= 1.
#[derive(Clone, Debug)]
pub struct ChiZeroConfig {
    pub d1: Divisor,
    pub m: i64,
    pub n: i64,
}

/// The space H^0(O(E + D_1 - sum_{i<m} xi^(-i))) the seed must come from.
pub fn chi_zero_space(curve: &Curve, s: &Shtuka, cfg: &ChiZeroConfig) -> Result<Divisor> {
    let mut space = s.divisor().add(&cfg.d1);
    for i in 0..cfg.m {
        let pt = s.basepoint().frobenius(curve.q(), -i)?;
        space.add_point(Point::Finite(pt), -1);
    }
    Ok(space)
}

/// Check the lemma's hypotheses: m <= deg(E + D_1) and eta avoids xi^(i)
/// for i in [1 - deg(E + D_1), N - m].
pub fn chi_zero_hypotheses(curve: &Curve, s: &Shtuka, cfg: &ChiZeroConfig) -> Result<bool> {
    if cfg.m < 0 || cfg.n < 1 {
        return Ok(false);
    }
    let deg_ed1 = s.divisor().degree() + cfg.d1.degree();
    if cfg.m > deg_ed1 {
        return Ok(false);
    }
    let Point::Finite(y) = s.eta() else {
        return Ok(true);
    };
    for i in (1 - deg_ed1)..=(cfg.n - cfg.m) {
        let eq = if i >= 0 {
            match s.basepoint().frobenius(curve.q(), i) {
                Ok(x) => x == *y,
                Err(_) => false,
            }
        } else {
            match y.frobenius(curve.q(), -i) {
                Ok(yl) => yl == *s.basepoint(),
                Err(_) => false,
            }
        };
        if eq {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;
    use crate::hyp::alpha_preset;

    fn curve_q(q: u64) -> Curve {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            _ => panic!(),
        };
        Curve::new(FieldDesc::new(p, m, None).unwrap())
    }

    fn d_inf_0(cv: &Curve) -> Divisor {
        Divisor::of([(Point::Infinity, 1), (Point::Finite(cv.k_zero()), 1)])
    }

    fn e0_ones(cv: &Curve, k: i64) -> Divisor {
        Divisor::of([(Point::Finite(cv.k_one()), k)])
    }

    #[test]
    fn realization1_n1_shape() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let r = Realization::case1(&cv, &d, &cv.tau(), 1, &e0_ones(&cv, -1)).unwrap();
        assert!(r.shtuka.nondegenerate(&cv));
        // telescoped special function is 1
        assert!(r.shtuka.special_function(&cv).is_one());
        // the paper's liftings
        let a_inf = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let a_0 = alpha_preset(&cv, "alpha_0", &d).unwrap();
        let t = RatFunc::var(&cv);
        let one = RatFunc::one(&cv);
        assert_eq!(r.shtuka.psi_lift(&cv, &a_inf).unwrap(), t.sub(&one));
        assert_eq!(r.shtuka.psi_lift(&cv, &a_0).unwrap(), t.sub(&one).div(&t));
        // symbol = Hyp value = xi
        let s = r.shtuka.cd_symbol(&cv, &a_inf, &a_0, SymbolMethod::Solve).unwrap();
        assert_eq!(s, cv.tau());
        let sd = r
            .shtuka
            .cd_symbol(&cv, &a_inf, &a_0, SymbolMethod::Determinant)
            .unwrap();
        assert_eq!(sd, cv.tau());
        assert_eq!(r.hyp_value(&cv, &a_inf, &a_0).unwrap(), cv.tau());
    }

    #[test]
    fn realization1_n3_symbol_value() {
        // q=2, N=3, E_0 = [1]: symbol = t^7 at xi
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let r = Realization::case1(&cv, &d, &cv.tau(), 3, &e0_ones(&cv, 1)).unwrap();
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let b = alpha_preset(&cv, "alpha_0", &d).unwrap();
        let want = cv.tau().pow(7);
        for m in [SymbolMethod::Solve, SymbolMethod::Determinant] {
            assert_eq!(r.shtuka.cd_symbol(&cv, &a, &b, m).unwrap(), want);
        }
        assert_eq!(r.hyp_value(&cv, &a, &b).unwrap(), want);
    }

    #[test]
    fn bad_degree_rejected() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let e = e0_ones(&cv, 1); // degree +1, not -1
        assert!(matches!(
            Shtuka::validate(&cv, &d, &cv.tau(), &Point::Finite(cv.tau()), &e),
            Err(Error::BadDegree(1))
        ));
    }

    #[test]
    fn constant_basepoint_rejected() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let e = e0_ones(&cv, -1);
        assert!(matches!(
            Shtuka::validate(&cv, &d, &cv.k_one(), &Point::Finite(cv.tau()), &e),
            Err(Error::NonGenericBasepoint)
        ));
    }

    #[test]
    fn degenerate_eta_detected() {
        // eta = xi with deg(E+D) > 0 violates nondegeneracy
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let tau = cv.tau();
        // E with eta = xi: E - E^(1) ~ -xi^(1) + xi; take E = [xi] - 2[1]
        let e = Divisor::of([
            (Point::Finite(tau.clone()), 1),
            (Point::Finite(cv.k_one()), -2),
        ]);
        let s = Shtuka::validate(&cv, &d, &tau, &Point::Finite(tau.clone()), &e);
        // relation: E - E^(1) = [xi] - [xi^(1)] = -xi^(1) + eta, witness 1
        let s = s.unwrap();
        assert!(!s.nondegenerate(&cv));
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        assert!(matches!(s.psi_lift(&cv, &a), Err(Error::Degenerate)));
    }

    #[test]
    fn realization2_low_regime_solve_matches_hyp() {
        // q=2, D=[inf]+[0], N=1, E_0 = -3[1]
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let r = Realization::case2(&cv, &d, &cv.tau(), 1, &e0_ones(&cv, -3)).unwrap();
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let b = alpha_preset(&cv, "alpha_0", &d).unwrap();
        let hyp_v = r.hyp_value(&cv, &a, &b).unwrap();
        // Hyp = t^{-(q-1)/(q-1)} = t^{-1} at tau
        assert_eq!(hyp_v, cv.tau().inv());
        let solve_v = r.shtuka.cd_symbol(&cv, &a, &b, SymbolMethod::Solve).unwrap();
        assert_eq!(solve_v, hyp_v);
        // the cubed negative part admits no squarefree decomposition
        assert!(matches!(
            r.shtuka.cd_symbol(&cv, &a, &b, SymbolMethod::Determinant),
            Err(Error::NoDecomposition(_))
        ));
    }

    #[test]
    fn realization2_determinant_with_spliced_nodes() {
        // squarefree E_0 = -[1] - [t^2+t+1] needs F_4 coordinates for the
        // determinant nodes
        let f2 = FieldDesc::new(2, 1, None).unwrap();
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let cv = Curve::with_coeff(f2, f4).unwrap();
        let d = d_inf_0(&cv);
        let quad = crate::poly::Poly::from_coeffs(
            &cv.base().zero(),
            vec![cv.base().one(), cv.base().one(), cv.base().one()],
        );
        let e0 = Divisor::of([
            (Point::Finite(cv.k_one()), -1),
            (Point::closed(&cv, quad).unwrap(), -1),
        ]);
        let r = Realization::case2(&cv, &d, &cv.tau(), 1, &e0).unwrap();
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let b = alpha_preset(&cv, "alpha_0", &d).unwrap();
        let hyp_v = r.hyp_value(&cv, &a, &b).unwrap();
        let solve_v = r.shtuka.cd_symbol(&cv, &a, &b, SymbolMethod::Solve).unwrap();
        let det_v = r
            .shtuka
            .cd_symbol(&cv, &a, &b, SymbolMethod::Determinant)
            .unwrap();
        assert_eq!(solve_v, hyp_v);
        assert_eq!(det_v, hyp_v);
    }

    #[test]
    fn psi_has_simple_pole_at_case2_basepoint() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let r = Realization::case2(&cv, &d, &cv.tau(), 1, &e0_ones(&cv, -3)).unwrap();
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let psi = r.shtuka.psi_lift(&cv, &a).unwrap();
        let bp = Point::Finite(r.shtuka.basepoint().clone());
        assert_eq!(psi.ord_at(&bp, &cv), -1);
    }

    #[test]
    fn drinfeld_iterates_and_rank() {
        let cv = curve_q(2);
        let t = RatFunc::var(&cv);
        let tau = RatFunc::constant(cv.tau());
        let one = RatFunc::one(&cv);
        // [t - tau, t - tau^2] has rank 2
        let psi = t.sub(&tau);
        let its = drinfeld_iterates(&cv, &one, &psi, 1).unwrap();
        assert_eq!(rank_over_k(&its), 2);
        // duplicates have rank 1
        assert_eq!(rank_over_k(&[psi.clone(), psi.clone()]), 1);
    }

    #[test]
    fn shift_divisor_changes_special_function() {
        // h = (t-tau)(t-tau-1)/((t-tau^2-tau)(t-1)) restricts to 1 on
        // [inf]+[0] since h(0) = h(inf) = 1
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let tau = cv.tau();
        let pts = |x: KElem| Point::Finite(x);
        let shift_div = Divisor::of([
            (pts(tau.clone()), 1),
            (pts(tau.add(&cv.k_one())), 1),
            (pts(tau.mul(&tau).add(&tau)), -1),
            (pts(cv.k_one()), -1),
        ]);
        let h = RatFunc::from_divisor(&cv, &shift_div).unwrap();
        assert!(is_one_mod_d(&cv, &h, &d));
        let r = Realization::case1(&cv, &d, &tau, 2, &Divisor::zero()).unwrap();
        assert!(r.shtuka.special_function(&cv).is_one());
        let shifted = r.shtuka.shift_divisor(&cv, &h).unwrap();
        let f = shifted.special_function(&cv);
        assert!(!f.is_one());
        // f = h^(1)/h for a telescoped original
        let expect = h.twist(2, 1).unwrap().div(&h);
        assert_eq!(f, expect);
        // the symbol is a class invariant
        let a = alpha_preset(&cv, "alpha_inf", &d).unwrap();
        let b = alpha_preset(&cv, "alpha_0", &d).unwrap();
        let s0 = r.shtuka.cd_symbol(&cv, &a, &b, SymbolMethod::Solve).unwrap();
        let s1 = shifted.cd_symbol(&cv, &a, &b, SymbolMethod::Solve).unwrap();
        assert_eq!(s0, s1);
    }

    #[test]
    fn chi_zero_rank_with_nontrivial_f() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let tau = cv.tau();
        let r = Realization::case1(&cv, &d, &tau, 5, &e0_ones(&cv, 3)).unwrap();
        let cfg = ChiZeroConfig {
            d1: Divisor::of([(Point::Infinity, 2), (Point::Finite(cv.k_one()), 2)]),
            m: 0,
            n: 3,
        };
        assert!(chi_zero_hypotheses(&cv, &r.shtuka, &cfg).unwrap());
        let space = chi_zero_space(&cv, &r.shtuka, &cfg).unwrap();
        let basis = rr_basis(&cv, &space);
        assert!(!basis.is_empty());
        let f = r.shtuka.special_function(&cv);
        let its = drinfeld_iterates(&cv, &f, &basis[0], cfg.n).unwrap();
        assert_eq!(rank_over_k(&its), cfg.n as usize + 1);
    }
}
