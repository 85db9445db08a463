//! Exact linear algebra over K = F_{q'}(tau).
//!
//! Rows are cleared to polynomial form up front, with per-row content
//! stripping; elimination then stays division-minimized. `solve` and `rank`
//! use cross-multiplication elimination (row scaling is harmless there, so
//! content can be stripped after every step), while `det` runs strict
//! Bareiss two-step elimination where every division is exact.

use crate::error::{Error, Result};
use crate::ktau::{KElem, TauPoly};
use crate::poly::Poly;

type PRow = Vec<TauPoly>;

fn lcm_poly(a: &TauPoly, b: &TauPoly) -> TauPoly {
    let g = a.gcd(b);
    a.mul(&b.div_exact(&g))
}

/// Clear denominators in a row of K-elements.
fn clear_row(row: &[KElem]) -> PRow {
    assert!(!row.is_empty());
    let mut den = Poly::one(row[0].num().witness());
    for x in row {
        den = lcm_poly(&den, x.den());
    }
    row.iter()
        .map(|x| x.num().mul(&den.div_exact(x.den())))
        .collect()
}

/// Clear denominators column-wise: entries of one column often share their
/// denominator (evaluations of a common function), so this keeps degrees far
/// smaller than row clearing. Returns the polynomial matrix and the scale
/// applied to each column.
fn clear_columns(matrix: &[Vec<KElem>]) -> (Vec<PRow>, Vec<TauPoly>) {
    let ncols = matrix[0].len();
    let one = Poly::one(matrix[0][0].num().witness());
    let mut scales = vec![one; ncols];
    for (j, s) in scales.iter_mut().enumerate() {
        for row in matrix {
            *s = lcm_poly(s, row[j].den());
        }
    }
    let rows = matrix
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, x)| x.num().mul(&scales[j].div_exact(x.den())))
                .collect()
        })
        .collect();
    (rows, scales)
}

/// Divide a polynomial row by the gcd of its entries and make the first
/// nonzero entry monic.
fn strip_content(row: &mut PRow) {
    let mut g: Option<TauPoly> = None;
    for p in row.iter() {
        if p.is_zero() {
            continue;
        }
        let next = match &g {
            None => p.monic(),
            Some(acc) => acc.gcd(p),
        };
        let done = next.degree() == 0;
        g = Some(next);
        if done {
            break;
        }
    }
    let Some(g) = g else { return };
    if g.degree() > 0 {
        for p in row.iter_mut() {
            *p = p.div_exact(&g);
        }
    }
    let lead = row.iter().find(|p| !p.is_zero()).unwrap().leading();
    if !lead.is_one() {
        let li = lead.inv();
        for p in row.iter_mut() {
            *p = p.scale(&li);
        }
    }
}

/// Echelon form by cross-multiplication with content stripping.
/// Returns the pivot column of each pivot row.
fn echelon(rows: &mut [PRow]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    for row in rows.iter_mut() {
        strip_content(row);
    }
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..ncols {
        if r0 == rows.len() {
            break;
        }
        // smallest-degree pivot limits growth
        let mut best: Option<(usize, i64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r0) {
            if !row[col].is_zero() {
                let d = row[col].degree();
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((i, d));
                }
            }
        }
        let Some((pi, _)) = best else {
            continue;
        };
        rows.swap(r0, pi);
        let pivot_row = rows[r0].clone();
        for row in rows.iter_mut().skip(r0 + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in 0..ncols {
                let a = row[j].mul(&pivot_row[col]);
                let b = pivot_row[j].mul(&factor);
                row[j] = a.sub(&b);
            }
            strip_content(row);
        }
        pivots.push(col);
        r0 += 1;
    }
    pivots
}

/// Rank over K. Column scaling preserves rank, so denominators are cleared
/// column-first.
pub fn rank(matrix: &[Vec<KElem>]) -> usize {
    if matrix.is_empty() || matrix[0].is_empty() {
        return 0;
    }
    let (mut rows, _) = clear_columns(matrix);
    echelon(&mut rows).len()
}

/// Solve M x = b over K. Inconsistent systems return [`Error::SolveFailed`];
/// free variables of underdetermined systems are set to zero. Columns are
/// cleared first (scaling column j by c_j turns the solution into c_j x_j,
/// undone at the end).
pub fn solve(matrix: &[Vec<KElem>], rhs: &[KElem]) -> Result<Vec<KElem>> {
    let nrows = matrix.len();
    assert_eq!(nrows, rhs.len());
    if nrows == 0 {
        return Ok(vec![]);
    }
    let ncols = matrix[0].len();
    let field = rhs[0].field();
    let augmented: Vec<Vec<KElem>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut aug = r.to_vec();
            aug.push(b.clone());
            aug
        })
        .collect();
    let (mut rows, scales) = clear_columns(&augmented);
    let pivots = echelon(&mut rows);
    if pivots.last() == Some(&ncols) {
        return Err(Error::SolveFailed);
    }
    let mut x = vec![KElem::zero(&field); ncols];
    for (ri, &col) in pivots.iter().enumerate().rev() {
        let row = &rows[ri];
        let mut acc = KElem::from_poly(row[ncols].clone());
        for j in (col + 1)..ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc = acc.sub(&KElem::from_poly(row[j].clone()).mul(&x[j]));
            }
        }
        x[col] = acc.div(&KElem::from_poly(row[col].clone()));
    }
    // undo the column scaling: M'_ij = M_ij * s_j / s_rhs gives
    // x_j = x'_j * s_j / s_rhs
    let rhs_scale = KElem::from_poly(scales[ncols].clone());
    for (j, xj) in x.iter_mut().enumerate() {
        if !xj.is_zero() {
            *xj = xj.mul(&KElem::from_poly(scales[j].clone())).div(&rhs_scale);
        }
    }
    Ok(x)
}

/// Determinant over K: Bareiss fraction-free elimination on the cleared
/// polynomial matrix, with the clearing factors folded back in at the end.
pub fn det(matrix: &[Vec<KElem>]) -> KElem {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|r| r.len() == n), "square matrix");
    let field = matrix[0][0].field();
    let (mut rows, scales) = clear_columns(matrix);
    let mut correction = KElem::one(&field);
    for s in &scales {
        correction = correction.div(&KElem::from_poly(s.clone()));
    }
    // strip row contents, folding them into the correction
    for row in rows.iter_mut() {
        let mut g: Option<TauPoly> = None;
        for p in row.iter() {
            if p.is_zero() {
                continue;
            }
            g = Some(match &g {
                None => p.clone(),
                Some(acc) => acc.gcd(p),
            });
        }
        if let Some(g) = g {
            if g.degree() > 0 || !g.leading().is_one() {
                for p in row.iter_mut() {
                    *p = p.div_exact(&g);
                }
                correction = correction.mul(&KElem::from_poly(g));
            }
        }
    }
    let mut sign_flip = false;
    let mut prev_pivot: TauPoly = Poly::one(rows[0][0].witness());
    for k in 0..n {
        if rows[k][k].is_zero() {
            match (k + 1..n).find(|&i| !rows[i][k].is_zero()) {
                Some(i) => {
                    rows.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return KElem::zero(&field),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = rows[i][j]
                    .mul(&rows[k][k])
                    .sub(&rows[i][k].mul(&rows[k][j]));
                rows[i][j] = t.div_exact(&prev_pivot);
            }
            rows[i][k] = Poly::zero(rows[i][k].witness());
        }
        prev_pivot = rows[k][k].clone();
    }
    let mut out = correction.mul(&KElem::from_poly(rows[n - 1][n - 1].clone()));
    if sign_flip {
        out = out.neg();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::ff::FieldDesc;

    fn cv() -> Curve {
        Curve::new(FieldDesc::new(3, 1, None).unwrap())
    }

    fn k(c: &Curve, n: u64) -> KElem {
        c.scalar(&c.base().from_u64(n))
    }

    #[test]
    fn solve_2x2_over_constants() {
        let c = cv();
        let m = vec![vec![k(&c, 1), k(&c, 2)], vec![k(&c, 1), k(&c, 1)]];
        let b = vec![k(&c, 0), k(&c, 1)];
        let x = solve(&m, &b).unwrap();
        for (row, want) in m.iter().zip(&b) {
            let got = row[0].mul(&x[0]).add(&row[1].mul(&x[1]));
            assert_eq!(got, *want);
        }
    }

    #[test]
    fn solve_with_tau_entries() {
        let c = cv();
        let t = c.tau();
        let m = vec![
            vec![t.clone(), c.k_one()],
            vec![c.k_one(), t.clone()],
        ];
        let b = vec![t.mul(&t), c.k_one()];
        let x = solve(&m, &b).unwrap();
        for (row, want) in m.iter().zip(&b) {
            let got = row[0].mul(&x[0]).add(&row[1].mul(&x[1]));
            assert_eq!(got, *want);
        }
    }

    #[test]
    fn inconsistent_system() {
        let c = cv();
        let m = vec![vec![k(&c, 1), k(&c, 1)], vec![k(&c, 2), k(&c, 2)]];
        let b = vec![k(&c, 1), k(&c, 1)];
        assert!(matches!(solve(&m, &b), Err(Error::SolveFailed)));
    }

    #[test]
    fn rank_examples() {
        let c = cv();
        let t = c.tau();
        assert_eq!(rank(&[vec![t.clone(), c.k_one()]]), 1);
        // (tau^2, tau) = tau * (tau, 1) is dependent; (tau^2, 1) is not
        assert_eq!(
            rank(&[
                vec![t.clone(), c.k_one()],
                vec![t.mul(&t), t.clone()],
            ]),
            1
        );
        assert_eq!(
            rank(&[
                vec![t.clone(), c.k_one()],
                vec![t.mul(&t), c.k_one()],
                vec![t.clone(), c.k_one()],
            ]),
            2
        );
        assert_eq!(rank(&[vec![c.k_zero(), c.k_zero()]]), 0);
    }

    #[test]
    fn det_vandermonde_tau() {
        let c = cv();
        let t = c.tau();
        let m = vec![
            vec![c.k_one(), c.k_one()],
            vec![t.clone(), t.mul(&t)],
        ];
        assert_eq!(det(&m), t.mul(&t).sub(&t));
    }

    #[test]
    fn det_with_denominators() {
        let c = cv();
        let t = c.tau();
        // [[1/tau, 1], [1, tau]] -> det = 1 - 1 = 0
        let m = vec![
            vec![c.k_one().div(&t), c.k_one()],
            vec![c.k_one(), t.clone()],
        ];
        assert!(det(&m).is_zero());
        // [[1/tau, 1], [1, 2tau]] -> det = 2 - 1 = 1
        let m2 = vec![
            vec![c.k_one().div(&t), c.k_one()],
            vec![c.k_one(), t.add(&t)],
        ];
        assert!(det(&m2).is_one());
    }

    #[test]
    fn det_3x3_matches_cofactor() {
        let c = cv();
        let t = c.tau();
        let e = |i: u64, j: u64| {
            // deterministic smallish entries mixing constants and tau
            let base = k(&c, (i * 2 + j) % 3);
            if (i + j) % 2 == 0 {
                base.add(&t.pow((1 + (i + j) % 3) as i64))
            } else {
                base
            }
        };
        let m: Vec<Vec<KElem>> = (0..3)
            .map(|i| (0..3).map(|j| e(i, j)).collect())
            .collect();
        // cofactor expansion along the first row
        let minor = |r: usize, cidx: usize| -> KElem {
            let sub: Vec<Vec<KElem>> = (0..3)
                .filter(|&i| i != r)
                .map(|i| {
                    (0..3)
                        .filter(|&j| j != cidx)
                        .map(|j| m[i][j].clone())
                        .collect()
                })
                .collect();
            sub[0][0].mul(&sub[1][1]).sub(&sub[0][1].mul(&sub[1][0]))
        };
        let mut want = m[0][0].mul(&minor(0, 0));
        want = want.sub(&m[0][1].mul(&minor(0, 1)));
        want = want.add(&m[0][2].mul(&minor(0, 2)));
        assert_eq!(det(&m), want);
    }
}
