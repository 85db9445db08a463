//! Ambient context for computations on P^1 over F_q.
//!
//! A [`Curve`] fixes the base field F_q of the curve, the coefficient field
//! F_{q'} of K = F_{q'}(tau) (an extension of F_q; generic point coordinates
//! and spliced closed points live in K), and the enumeration budget that caps
//! product formulas.

use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FieldElem, FieldEmbed};
use crate::ktau::KElem;

/// Default cap on the number of elements any single enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct Curve {
    base: FieldDesc,
    coeff: FieldDesc,
    embed: FieldEmbed,
    budget: u64,
}

impl Curve {
    /// Curve over F_q with coefficient field equal to the base field.
    pub fn new(base: FieldDesc) -> Curve {
        Curve::with_coeff(base.clone(), base).expect("identity embedding")
    }

    /// Curve over F_q with K = F_{q'}(tau) for an extension F_{q'} of F_q.
    pub fn with_coeff(base: FieldDesc, coeff: FieldDesc) -> Result<Curve> {
        let embed = FieldEmbed::new(&base, &coeff)?;
        Ok(Curve {
            base,
            coeff,
            embed,
            budget: DEFAULT_ENUM_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Curve {
        self.budget = budget;
        self
    }

    /// q, the size of the curve's base field. Twisting raises constants to
    /// this power.
    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn base(&self) -> &FieldDesc {
        &self.base
    }

    pub fn coeff(&self) -> &FieldDesc {
        &self.coeff
    }

    pub fn embed(&self) -> &FieldEmbed {
        &self.embed
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// A base-field element as a constant of K.
    pub fn scalar(&self, c: &FieldElem) -> KElem {
        KElem::constant(self.embed.map(c))
    }

    pub fn k_zero(&self) -> KElem {
        KElem::zero(&self.coeff)
    }

    pub fn k_one(&self) -> KElem {
        KElem::one(&self.coeff)
    }

    pub fn tau(&self) -> KElem {
        KElem::tau(&self.coeff)
    }

    /// The q elements of F_q, as constants of K, in enumeration order.
    pub fn base_scalars(&self) -> Vec<KElem> {
        self.base
            .elements()
            .into_iter()
            .map(|c| self.scalar(&c))
            .collect()
    }

    /// Pull a constant of K back to the base field, if it lies there.
    pub fn to_base(&self, x: &KElem) -> Option<FieldElem> {
        let c = x.as_constant()?;
        self.embed.pullback(&c)
    }

    /// Check an enumeration of `size` elements against the budget.
    pub fn check_budget(&self, size: u128) -> Result<()> {
        if size > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                size,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Iterate all F_q-linear combinations of `basis`, exactly once each, in
/// lexicographic coefficient order (first basis coefficient varies fastest).
/// `scalars` must list the elements of F_q embedded in the module's scalar
/// ring; `zero` is the empty combination.
pub fn enumerate_span<V: Clone>(
    basis: &[V],
    scalars: &[KElem],
    zero: V,
    mul: impl Fn(&KElem, &V) -> V,
    add: impl Fn(&V, &V) -> V,
    budget: u64,
) -> Result<Vec<V>> {
    let q = scalars.len() as u128;
    let total = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            size: total,
            budget,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; basis.len()];
    loop {
        let mut acc = zero.clone();
        for (i, b) in basis.iter().enumerate() {
            if idx[i] != 0 {
                acc = add(&acc, &mul(&scalars[idx[i]], b));
            }
        }
        out.push(acc);
        // increment the mixed-radix counter, first coordinate fastest
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < scalars.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
