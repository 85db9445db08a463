//! Hypergeometric ratios Hyp_D(alpha, beta, E) in both degree regimes.
//!
//! High degree (deg E > 2g-2 = -2): the product of (alpha~ + e)/(beta~ + e)
//! over e in H^0(O(E)), with liftings into H^0(O(E+D)); equivalently a ratio
//! of Moore determinants. Low degree (deg E < -deg D): a ratio of products
//! of differentials cut out by the residue functionals RES_D(omega * lift).
//! The two regimes leave an undefined gap [-deg D, -2].
//!
//! The low-degree product of differentials is interpreted as the product of
//! their dt-coefficients; the two products have equal length, so the ratio
//! does not depend on the chart.

use crate::curve::{enumerate_span, Curve};
use crate::divisor::{supported_away, Divisor};
use crate::error::{Error, Result};
use crate::func::RatFunc;
use crate::ktau::KElem;
use crate::linalg;
use crate::moore::moore_det;
use crate::rr::{omega_basis, res_pairing, rr_basis, PrincipalPart};

/// Algorithm choice for the high-degree regime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HypMethod {
    Enumerate,
    Moore,
}

fn validate_common(
    curve: &Curve,
    d: &Divisor,
    alpha: &PrincipalPart,
    beta: &PrincipalPart,
    e: &Divisor,
) -> Result<()> {
    PrincipalPart::check_conductor(curve, d)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroAlphaBeta);
    }
    assert_eq!(alpha.conductor(), d, "alpha along the wrong conductor");
    assert_eq!(beta.conductor(), d, "beta along the wrong conductor");
    if !supported_away(e, d, curve) {
        return Err(Error::SupportMeetsConductor);
    }
    if !e.is_base_rational(curve.q()) {
        return Err(Error::Domain(
            "Hyp needs E defined over the base field".into(),
        ));
    }
    Ok(())
}

/// Solve for a lifting of alpha inside L(space): the unique-up-to-L(E)
/// element whose principal part along the conductor is alpha.
pub fn lift_into(
    curve: &Curve,
    alpha: &PrincipalPart,
    space: &Divisor,
) -> Result<RatFunc> {
    let basis = rr_basis(curve, space);
    let d = alpha.conductor();
    let ncoords = d.degree() as usize;
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let pp = PrincipalPart::of_function(curve, b, d)?;
        cols.push(pp.coords(curve));
    }
    let target = alpha.coords(curve);
    let matrix: Vec<Vec<KElem>> = (0..ncoords)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let lambda = linalg::solve(&matrix, &target)?;
    let mut out = RatFunc::zero(curve);
    for (l, b) in lambda.iter().zip(&basis) {
        if !l.is_zero() {
            out = out.add(&b.scale(l));
        }
    }
    debug_assert_eq!(&PrincipalPart::of_function(curve, &out, d)?, alpha);
    Ok(out)
}

/// High-degree hypergeometric ratio.
pub fn hyp_high(
    curve: &Curve,
    d: &Divisor,
    alpha: &PrincipalPart,
    beta: &PrincipalPart,
    e: &Divisor,
    method: HypMethod,
) -> Result<RatFunc> {
    validate_common(curve, d, alpha, beta, e)?;
    if e.degree() <= -2 {
        return Err(Error::WrongRegime {
            deg_e: e.degree(),
            want: "high",
        });
    }
    let space = e.add(d);
    let alpha_lift = lift_into(curve, alpha, &space)?;
    let beta_lift = lift_into(curve, beta, &space)?;
    let basis_e = rr_basis(curve, e);
    match method {
        HypMethod::Enumerate => {
            let combos = enumerate_span(
                &basis_e,
                &curve.base_scalars(),
                RatFunc::zero(curve),
                |c, v| v.scale(c),
                |a, b| a.add(b),
                curve.budget(),
            )?;
            let num = RatFunc::product(combos.iter().map(|e| alpha_lift.add(e))).unwrap();
            let den = RatFunc::product(combos.iter().map(|e| beta_lift.add(e))).unwrap();
            Ok(num.div(&den))
        }
        HypMethod::Moore => {
            let mut xs = vec![alpha_lift];
            xs.extend(basis_e.iter().cloned());
            let num = moore_det(&xs, curve.q());
            xs[0] = beta_lift;
            let den = moore_det(&xs, curve.q());
            Ok(num.div(&den))
        }
    }
}

/// Low-degree hypergeometric ratio, by enumerating the two affine subsets of
/// H^0(Omega(-E)) cut out by the residue functionals.
pub fn hyp_low(
    curve: &Curve,
    d: &Divisor,
    alpha: &PrincipalPart,
    beta: &PrincipalPart,
    e: &Divisor,
) -> Result<RatFunc> {
    validate_common(curve, d, alpha, beta, e)?;
    if e.degree() >= -d.degree() {
        return Err(Error::WrongRegime {
            deg_e: e.degree(),
            want: "low",
        });
    }
    let omegas = omega_basis(curve, e);
    let alpha_sub = residue_one_subset(curve, alpha, &omegas)?;
    let beta_sub = residue_one_subset(curve, beta, &omegas)?;
    debug_assert_eq!(alpha_sub.len(), beta_sub.len());
    let num = RatFunc::product(beta_sub.into_iter()).unwrap();
    let den = RatFunc::product(alpha_sub.into_iter()).unwrap();
    Ok(num.div(&den))
}

/// The dt-coefficients of { omega in span : RES_D(omega * lift(pp)) = 1 }.
fn residue_one_subset(
    curve: &Curve,
    pp: &PrincipalPart,
    omegas: &[crate::rr::Differential],
) -> Result<Vec<RatFunc>> {
    // F_q-linear functional on the omega basis
    let mut vals = Vec::with_capacity(omegas.len());
    for w in omegas {
        let v = res_pairing(curve, w, pp)?;
        let c = curve
            .to_base(&v)
            .ok_or_else(|| Error::Domain("residue pairing left the base field".into()))?;
        vals.push(c);
    }
    let pivot = match vals.iter().position(|c| !c.is_zero()) {
        Some(i) => i,
        None => return Err(Error::DegenerateFunctional),
    };
    let pinv = vals[pivot].inv();
    // particular solution and a kernel basis
    let particular = omegas[pivot].coeff.scale(&curve.scalar(&pinv));
    let mut kernel = Vec::with_capacity(omegas.len() - 1);
    for (i, w) in omegas.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let coeff = vals[i].mul(&pinv);
        let adj = if coeff.is_zero() {
            w.coeff.clone()
        } else {
            w.coeff
                .sub(&omegas[pivot].coeff.scale(&curve.scalar(&coeff)))
        };
        kernel.push(adj);
    }
    let combos = enumerate_span(
        &kernel,
        &curve.base_scalars(),
        RatFunc::zero(curve),
        |c, v| v.scale(c),
        |a, b| a.add(b),
        curve.budget(),
    )?;
    Ok(combos.into_iter().map(|k| particular.add(&k)).collect())
}

/// Dispatcher over the two regimes; the closed gap between them is an error.
pub fn hyp(
    curve: &Curve,
    d: &Divisor,
    alpha: &PrincipalPart,
    beta: &PrincipalPart,
    e: &Divisor,
) -> Result<RatFunc> {
    let deg_e = e.degree();
    if deg_e > -2 {
        hyp_high(curve, d, alpha, beta, e, HypMethod::Moore)
    } else if deg_e < -d.degree() {
        hyp_low(curve, d, alpha, beta, e)
    } else {
        Err(Error::UndefinedRegime {
            deg_e,
            lo: -d.degree(),
        })
    }
}

/// Both sides of the sample interpolation identity at (q, N, c): the value
/// v = Hyp_{[inf]+[0]}(alpha_inf, alpha_0, [c] + (N-3)[1]) substituted at
/// t = tau^{q-1} is compared against c^{-1} tau^{q^N - 1}. For N > 0 the
/// returned pair is (v * tau, c^{-1} tau^{q^N}); for N < 0 both sides were
/// raised to the q^{|N|} power first, giving (v * tau^{q^{|N|}}, c^{-1} tau),
/// so no root extraction is ever needed.
pub fn tau_identity_sides(
    curve: &Curve,
    n: i64,
    c: &crate::ff::FieldElem,
) -> Result<(KElem, KElem)> {
    if n == 0 {
        return Err(Error::Domain("N must be nonzero".into()));
    }
    if c.is_zero() {
        return Err(Error::Domain("c must lie in F_q^x".into()));
    }
    let d = Divisor::of([
        (crate::divisor::Point::Infinity, 1),
        (crate::divisor::Point::Finite(curve.k_zero()), 1),
    ]);
    let alpha = alpha_preset(curve, "alpha_inf", &d)?;
    let beta = alpha_preset(curve, "alpha_0", &d)?;
    let mut e = Divisor::point(crate::divisor::Point::Finite(curve.scalar(c)));
    e.add_point(crate::divisor::Point::Finite(curve.k_one()), n - 3);
    let h = hyp(curve, &d, &alpha, &beta, &e)?;
    let q = curve.q();
    let tau = curve.tau();
    let v = h.eval(&tau.pow(q as i64 - 1))?;
    let c_inv = curve.scalar(&c.inv());
    if n > 0 {
        let lhs = v.mul(&tau);
        let rhs = c_inv.mul(&tau.frobenius(q, n)?);
        Ok((lhs, rhs))
    } else {
        let lhs = v.mul(&tau.frobenius(q, -n)?);
        let rhs = c_inv.mul(&tau);
        Ok((lhs, rhs))
    }
}

/// The three-point principal parts of the sample conductor family:
/// representatives t, 1/(1-t), (t-1)/t, restricted along the given
/// conductor. Errors when the class along D vanishes.
pub fn alpha_preset(curve: &Curve, name: &str, d: &Divisor) -> Result<PrincipalPart> {
    let t = RatFunc::var(curve);
    let one = RatFunc::one(curve);
    let rep = match name {
        "alpha_inf" => t.clone(),
        "alpha_1" => one.div(&one.sub(&t)),
        "alpha_0" => t.sub(&one).div(&t),
        _ => {
            return Err(Error::Domain(format!(
                "unknown preset {name:?} (expected alpha_inf, alpha_1, alpha_0)"
            )))
        }
    };
    let pp = PrincipalPart::of_function(curve, &rep, d)?;
    if pp.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    Ok(pp)
}
