//! The finite algebra H^0(O_D), restriction of functions to the conductor,
//! the predicate f|_D = 1, and conductor-level divisor-class equivalence
//! with explicit witnesses.
//!
//! On P^1 two functions with the same divisor differ by a constant of K^x,
//! so E_1 ~_D E_2 holds exactly when the monic witness of E_1 - E_2
//! restricts to a scalar of the conductor algebra; the witness is then
//! normalized so its restriction is identically 1.

use crate::curve::Curve;
use crate::divisor::{supported_away, Divisor, Point};
use crate::error::{Error, Result};
use crate::func::{RatFunc, TPoly};
use crate::ktau::KElem;
use crate::poly::Poly;
use crate::rr::{LocalRing, PrincipalPart};
use std::collections::BTreeMap;
use std::fmt;

/// An element of H^0(O_D) = prod_x O_x / p_x^{n_x}: one residue class per
/// conductor point (the zero class is stored explicitly here, unlike in
/// principal parts, since the algebra has a unit).
#[derive(Clone, PartialEq, Eq)]
pub struct ODElement {
    conductor: Divisor,
    comps: BTreeMap<Point, TPoly>,
}

impl ODElement {
    pub fn one(curve: &Curve, d: &Divisor) -> Result<ODElement> {
        PrincipalPart::check_conductor(curve, d)?;
        let comps = d
            .terms()
            .map(|(p, _)| (p.clone(), Poly::one(&curve.k_zero())))
            .collect();
        Ok(ODElement {
            conductor: d.clone(),
            comps,
        })
    }

    pub fn conductor(&self) -> &Divisor {
        &self.conductor
    }

    pub fn component(&self, p: &Point) -> &TPoly {
        &self.comps[p]
    }

    /// Unit test: every component invertible in its local quotient ring.
    pub fn is_unit(&self, curve: &Curve) -> bool {
        self.conductor.terms().all(|(p, n)| {
            let ring = LocalRing::new(curve, p, n as usize).expect("validated conductor");
            self.comps[p].inv_mod(&ring.pn).is_some()
        })
    }

    pub fn is_one(&self) -> bool {
        self.comps.values().all(|c| c.is_one())
    }

    /// The common constant c of K^x when every component is the image of
    /// one scalar, compared against the least point of the support.
    pub fn scalar(&self) -> Option<KElem> {
        let anchor = self.comps.values().next()?;
        if !anchor.is_constant() {
            return None;
        }
        let c = anchor.coeff(0);
        if c.is_zero() {
            return None;
        }
        for comp in self.comps.values() {
            if !comp.is_constant() || comp.coeff(0) != c {
                return None;
            }
        }
        Some(c)
    }

    pub fn mul(&self, rhs: &ODElement, curve: &Curve) -> ODElement {
        assert_eq!(self.conductor, rhs.conductor);
        let comps = self
            .conductor
            .terms()
            .map(|(p, n)| {
                let ring = LocalRing::new(curve, p, n as usize).expect("validated conductor");
                let prod = self.comps[p].mul(&rhs.comps[p]).rem(&ring.pn);
                (p.clone(), prod)
            })
            .collect();
        ODElement {
            conductor: self.conductor.clone(),
            comps,
        }
    }

    /// Module action of H^0(O_D) on H^0(O(D)/O).
    pub fn act(&self, pp: &PrincipalPart, curve: &Curve) -> PrincipalPart {
        assert_eq!(self.conductor, *pp.conductor());
        let mut out = PrincipalPart::zero(&self.conductor);
        for (p, n) in self.conductor.terms() {
            if let Some(class) = pp.class_at(p) {
                let ring = LocalRing::new(curve, p, n as usize).expect("validated conductor");
                let acted = self.comps[p].mul(class).rem(&ring.pn);
                out.set_class(p.clone(), acted);
            }
        }
        out
    }
}

impl fmt::Debug for ODElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "od[")?;
        let mut first = true;
        for (p, c) in &self.comps {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{p}: ")?;
            crate::func::fmt_tpoly_to(f, c)?;
        }
        write!(f, "]")
    }
}

/// Restriction of f to the closed subscheme D; errors if f has a pole there.
pub fn restrict_to_d(curve: &Curve, f: &RatFunc, d: &Divisor) -> Result<ODElement> {
    PrincipalPart::check_conductor(curve, d)?;
    let mut comps = BTreeMap::new();
    for (p, n) in d.terms() {
        let ring = LocalRing::new(curve, p, n as usize)?;
        comps.insert(p.clone(), ring.restrict(f)?);
    }
    Ok(ODElement {
        conductor: d.clone(),
        comps,
    })
}

/// Whether f is regular on D and restricts to the identity.
pub fn is_one_mod_d(curve: &Curve, f: &RatFunc, d: &Divisor) -> bool {
    restrict_to_d(curve, f, d).map_or(false, |u| u.is_one())
}

/// Decide E_1 ~_D E_2 and return the normalized witness: the unique f with
/// (f) = E_1 - E_2 and f|_D = 1, when one exists.
pub fn equivalent_mod_d(
    curve: &Curve,
    e1: &Divisor,
    e2: &Divisor,
    d: &Divisor,
) -> Result<Option<RatFunc>> {
    PrincipalPart::check_conductor(curve, d)?;
    if !supported_away(e1, d, curve) || !supported_away(e2, d, curve) {
        return Err(Error::SupportMeetsConductor);
    }
    let diff = e1.sub(e2);
    if diff.degree() != 0 {
        return Ok(None);
    }
    let f0 = RatFunc::from_divisor(curve, &diff)?;
    let u = restrict_to_d(curve, &f0, d)?;
    match u.scalar() {
        Some(c) => Ok(Some(f0.scale(&c.inv()))),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    fn curve_q(q: u64) -> Curve {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            _ => panic!(),
        };
        Curve::new(FieldDesc::new(p, m, None).unwrap())
    }

    fn d_inf_0(cv: &Curve) -> Divisor {
        Divisor::of([(Point::Infinity, 1), (Point::Finite(cv.k_zero()), 1)])
    }

    #[test]
    fn restrict_t_to_two_points() {
        let cv = curve_q(2);
        let t = RatFunc::var(&cv);
        let d = Divisor::of([
            (Point::Finite(cv.k_zero()), 1),
            (Point::Finite(cv.k_one()), 1),
        ]);
        let u = restrict_to_d(&cv, &t, &d).unwrap();
        assert!(u.component(&Point::Finite(cv.k_zero())).is_zero());
        assert!(u.component(&Point::Finite(cv.k_one())).is_one());
        assert!(!u.is_unit(&cv));
    }

    #[test]
    fn restrict_with_pole_rejected() {
        let cv = curve_q(2);
        let t = RatFunc::var(&cv);
        let f = RatFunc::one(&cv).div(&t);
        let d = d_inf_0(&cv);
        assert!(matches!(
            restrict_to_d(&cv, &f, &d),
            Err(Error::PoleOnConductor)
        ));
    }

    #[test]
    fn restriction_evaluates_both_charts() {
        // (t-c)/(t-1) restricted to [inf]+[0] is (1 at inf, c at 0)
        let cv = curve_q(5);
        let c = cv.scalar(&cv.base().from_u64(3));
        let t = RatFunc::var(&cv);
        let one = RatFunc::one(&cv);
        let f = t.sub(&RatFunc::constant(c.clone())).div(&t.sub(&one));
        let u = restrict_to_d(&cv, &f, &d_inf_0(&cv)).unwrap();
        assert!(u.component(&Point::Infinity).is_one());
        assert_eq!(u.component(&Point::Finite(cv.k_zero())).coeff(0), c);
        assert!(u.is_unit(&cv));
        assert!(u.scalar().is_none());
    }

    #[test]
    fn is_one_mod_d_cases() {
        let cv = curve_q(3);
        let t = RatFunc::var(&cv);
        let one = RatFunc::one(&cv);
        // constants
        assert!(is_one_mod_d(&cv, &one, &d_inf_0(&cv)));
        // t = 1 at [1] but t != 1 mod 2[1]
        let d1 = Divisor::of([(Point::Finite(cv.k_one()), 1)]);
        let d2 = Divisor::of([(Point::Finite(cv.k_one()), 2)]);
        assert!(is_one_mod_d(&cv, &t, &d1));
        assert!(!is_one_mod_d(&cv, &t, &d2));
        // Fermat: t^{q-1} = 1 at every c in F_q^x
        let d3 = Divisor::of([(Point::Finite(cv.k_one()), 1), (
            Point::Finite(cv.scalar(&cv.base().from_u64(2))),
            1,
        )]);
        assert!(is_one_mod_d(&cv, &t.pow(2), &d3));
    }

    #[test]
    fn equivalence_reflexive_and_witness_one() {
        let cv = curve_q(2);
        let e = Divisor::of([(Point::Finite(cv.k_one()), 2)]);
        let d = d_inf_0(&cv);
        let w = equivalent_mod_d(&cv, &e, &e, &d).unwrap().unwrap();
        assert!(w.is_one());
    }

    #[test]
    fn equivalence_two_point_conductor() {
        // D = [inf]+[0]: [c] ~ [1] iff c = 1 (restriction (1, c) must be a
        // single scalar)
        let cv = curve_q(5);
        let d = d_inf_0(&cv);
        let e1 = |c: u64| Divisor::point(Point::Finite(cv.scalar(&cv.base().from_u64(c))));
        let one = Divisor::point(Point::Finite(cv.k_one()));
        assert!(equivalent_mod_d(&cv, &e1(3), &one, &d).unwrap().is_none());
        assert!(equivalent_mod_d(&cv, &e1(1), &one, &d).unwrap().is_some());
    }

    #[test]
    fn equivalence_one_point_conductor_always() {
        // D = [0]: a single local condition is soaked up by the free scalar
        let cv = curve_q(5);
        let d = Divisor::point(Point::Finite(cv.k_zero()));
        let one = Divisor::point(Point::Finite(cv.k_one()));
        for c in [2u64, 3, 4] {
            let e = Divisor::point(Point::Finite(cv.scalar(&cv.base().from_u64(c))));
            let w = equivalent_mod_d(&cv, &e, &one, &d).unwrap().unwrap();
            assert!(is_one_mod_d(&cv, &w, &d));
            assert_eq!(w.divisor_of(&cv).unwrap(), e.sub(&one));
        }
    }

    #[test]
    fn degree_mismatch_not_equivalent() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let e1 = Divisor::of([(Point::Finite(cv.k_one()), 2)]);
        let e2 = Divisor::of([(Point::Finite(cv.k_one()), 1)]);
        assert!(equivalent_mod_d(&cv, &e1, &e2, &d).unwrap().is_none());
    }

    #[test]
    fn support_meeting_conductor_rejected() {
        let cv = curve_q(2);
        let d = d_inf_0(&cv);
        let e1 = Divisor::of([(Point::Finite(cv.k_zero()), 1)]);
        let e2 = Divisor::of([(Point::Finite(cv.k_one()), 1)]);
        assert!(matches!(
            equivalent_mod_d(&cv, &e1, &e2, &d),
            Err(Error::SupportMeetsConductor)
        ));
    }

    #[test]
    fn equivalence_symmetry_transitivity() {
        let cv = curve_q(3);
        let d = Divisor::point(Point::Finite(cv.k_zero()));
        let pt = |c: u64| Divisor::point(Point::Finite(cv.scalar(&cv.base().from_u64(c))));
        let (a, b, c) = (pt(1), pt(2), pt(1).add(&pt(2)).sub(&pt(1)));
        let w_ab = equivalent_mod_d(&cv, &a, &b, &d).unwrap().unwrap();
        let w_ba = equivalent_mod_d(&cv, &b, &a, &d).unwrap().unwrap();
        assert_eq!(w_ab.inv(), w_ba);
        let w_bc = equivalent_mod_d(&cv, &b, &c, &d).unwrap().unwrap();
        let w_ac = equivalent_mod_d(&cv, &a, &c, &d).unwrap().unwrap();
        assert_eq!(w_ab.mul(&w_bc), w_ac);
    }

    #[test]
    fn twist_preserves_equivalence() {
        // E_1 ~_D E_2 implies twisted witnesses still work: twist the
        // witness and check it certifies the twisted divisors
        let cv = curve_q(2);
        let d = Divisor::point(Point::Finite(cv.k_one()));
        let tau = cv.tau();
        let e1 = Divisor::of([(Point::Finite(tau.clone()), 1), (Point::Infinity, -1)]);
        let e2 = Divisor::of([(Point::Finite(tau.mul(&tau).add(&tau)), 1), (Point::Infinity, -1)]);
        let w = equivalent_mod_d(&cv, &e1, &e2, &d).unwrap().unwrap();
        for n in 1..=2 {
            let wn = w.twist(2, n).unwrap();
            assert!(is_one_mod_d(&cv, &wn, &d));
            assert_eq!(
                wn.divisor_of(&cv).unwrap(),
                e1.twist(2, n).unwrap().sub(&e2.twist(2, n).unwrap())
            );
        }
    }

    #[test]
    fn od_action_on_principal_parts() {
        let cv = curve_q(3);
        let d = d_inf_0(&cv);
        let t = RatFunc::var(&cv);
        let alpha = PrincipalPart::of_function(&cv, &t, &d).unwrap();
        let u = ODElement::one(&cv, &d).unwrap();
        assert_eq!(u.act(&alpha, &cv), alpha);
    }
}
