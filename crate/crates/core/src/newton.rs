//! Newton interpolation at the geometric points `-1, -q, -q^2, ...` via the
//! classical divided-difference table, plus the closed form for the
//! coefficients of a polynomial in that basis (signed Gaussian binomials).

use crate::qfun::gauss_binomial;
use crate::series::{QSeries, SeriesError};

/// The interpolation points `-q^0, -q^1, ..., -q^{count-1}` as series.
pub fn geometric_points(count: usize, d: usize) -> Vec<QSeries> {
    (0..count)
        .map(|j| QSeries::q_power(j, d).neg())
        .collect()
}

/// Evaluate a polynomial in `x` (given by its coefficient sequence
/// `f[0] + f[1] x + ... + f[deg] x^deg`) at a series point, by Horner.
pub fn eval_x_poly(f: &[QSeries], at: &QSeries) -> QSeries {
    assert!(!f.is_empty(), "polynomial needs at least one coefficient");
    let mut acc = f[f.len() - 1].clone();
    for c in f.iter().rev().skip(1) {
        acc = acc.mul(at).add(c);
    }
    acc
}

/// Divided-difference table over the given points.
///
/// Returns the Newton coefficient sequence `c_0..c_{p-1}` (with `p` points),
/// where the interpolated function is
/// `c_0 + sum_k c_k (x - x_1)...(x - x_k)`. Each table step divides by
/// `x_j - x_{j+level}`, so at geometric points the effective order drops by
/// the valuation `min(i,j) - 1` of that difference.
pub fn divided_difference_chain(
    values: &[QSeries],
    points: &[QSeries],
) -> Result<Vec<QSeries>, SeriesError> {
    assert_eq!(
        values.len(),
        points.len(),
        "one value per interpolation point"
    );
    assert!(!values.is_empty(), "at least one point required");
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].sub(&points[j]).is_zero() {
                return Err(SeriesError::CoincidentPoints { i, j });
            }
        }
    }
    let mut current = values.to_vec();
    let mut coeffs = vec![current[0].clone()];
    let mut level = 1;
    while current.len() > 1 {
        let mut next = Vec::with_capacity(current.len() - 1);
        for j in 0..current.len() - 1 {
            let num = current[j].sub(&current[j + 1]);
            let den = points[j].sub(&points[j + level]);
            next.push(num.divide_exact(&den)?);
        }
        coeffs.push(next[0].clone());
        current = next;
        level += 1;
    }
    Ok(coeffs)
}

/// Closed form for the Newton coefficient at level `k` of a polynomial in
/// `x` with series coefficients: since `x^j` expands with coefficients
/// `(-1)^{j-k} [j k]` at geometric points, the answer is
/// `sum_j f[j] (-1)^{j-k} [j k]`.
pub fn newton_coeff_closed(f: &[QSeries], k: usize) -> QSeries {
    assert!(!f.is_empty(), "polynomial needs at least one coefficient");
    let req = f.iter().map(QSeries::requested_order).min().unwrap();
    let eff = f.iter().map(QSeries::effective_order).min().unwrap();
    let mut acc = QSeries::zero(req).truncated(eff);
    for (j, c) in f.iter().enumerate() {
        if j < k {
            continue;
        }
        let term = c.mul(&gauss_binomial(j, k as i64, req));
        acc = if (j - k).is_multiple_of(2) {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// A function expanded in the Newton basis of its interpolation points.
#[derive(Debug, Clone)]
pub struct NewtonExpansion {
    points: Vec<QSeries>,
    coeffs: Vec<QSeries>,
}

impl NewtonExpansion {
    /// Expand from values at points via the divided-difference table.
    pub fn interpolate(
        values: &[QSeries],
        points: &[QSeries],
    ) -> Result<NewtonExpansion, SeriesError> {
        let coeffs = divided_difference_chain(values, points)?;
        Ok(NewtonExpansion {
            points: points.to_vec(),
            coeffs,
        })
    }

    /// Expand a polynomial in `x` by first evaluating it at the points.
    pub fn from_x_poly(
        f: &[QSeries],
        points: &[QSeries],
    ) -> Result<NewtonExpansion, SeriesError> {
        let values: Vec<QSeries> = points.iter().map(|p| eval_x_poly(f, p)).collect();
        NewtonExpansion::interpolate(&values, points)
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn points(&self) -> &[QSeries] {
        &self.points
    }

    /// Evaluate `c_0 + sum_k c_k (at - x_1)...(at - x_k)`. At the geometric
    /// points the basis factors are `(at + 1)(at + q)...`.
    pub fn reconstruct(&self, at: &QSeries) -> QSeries {
        let mut acc = self.coeffs[0].clone();
        let mut basis = QSeries::one(at.requested_order());
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            basis = basis.mul(&at.sub(&self.points[k - 1]));
            acc = acc.add(&c.mul(&basis));
        }
        acc
    }
}
