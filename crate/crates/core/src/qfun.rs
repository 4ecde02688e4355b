//! The classical q-objects: geometric inverse factors, q-Pochhammer
//! products, the rising product `(x+1)(x+q)...(x+q^{i-1})`, and Gaussian
//! binomial coefficients.

use crate::poly::MultiPoly;
use crate::series::{QSeries, SeriesError};

/// `1/(1 - c q^k) = sum_{j>=0} c^j q^{jk}` truncated at `d`.
///
/// Exact for any polynomial `c` because `q^k` has positive valuation; this is
/// the only way a series with `x`/`z` content gets inverted.
pub fn geometric(k: usize, c: &MultiPoly, d: usize) -> QSeries {
    assert!(k >= 1, "geometric factor needs a positive q-power");
    let mut coeffs = vec![MultiPoly::zero(); d + 1];
    let mut power = MultiPoly::one();
    let mut pos = 0usize;
    loop {
        coeffs[pos] = power.clone();
        pos += k;
        if pos > d || power.is_zero() {
            break;
        }
        power = power.mul(c);
    }
    QSeries::from_coeffs(coeffs, d)
}

/// `1/(1 - q^k)` truncated at `d`.
pub fn geometric_unit(k: usize, d: usize) -> QSeries {
    geometric(k, &MultiPoly::one(), d)
}

/// `(q;q)_i = (1-q)(1-q^2)...(1-q^i)`; the empty product for `i = 0`.
pub fn pochhammer_q(i: usize, d: usize) -> QSeries {
    let mut p = QSeries::one(d);
    for j in 1..=i {
        p = p.mul(&QSeries::one(d).sub(&QSeries::q_power(j, d)));
    }
    p
}

/// `(z;q)_i = (1-z)(1-zq)...(1-zq^{i-1})` over the coefficient ring.
pub fn pochhammer_z(i: usize, d: usize) -> QSeries {
    let z = MultiPoly::var_z();
    let mut p = QSeries::one(d);
    for j in 0..i {
        p = p.mul(&QSeries::one(d).sub(&QSeries::monomial(&z, j, d)));
    }
    p
}

/// `prod_{j=0..n, j != omit} (1 - z q^j)`: the factor `(z;q)_{n+1}` with one
/// linear factor left out, formed without any division.
pub fn pochhammer_z_omit(n: usize, omit: usize, d: usize) -> Result<QSeries, SeriesError> {
    if omit > n {
        return Err(SeriesError::IndexOutOfRange {
            index: omit,
            bound: n,
        });
    }
    let z = MultiPoly::var_z();
    let mut p = QSeries::one(d);
    for j in 0..=n {
        if j == omit {
            continue;
        }
        p = p.mul(&QSeries::one(d).sub(&QSeries::monomial(&z, j, d)));
    }
    Ok(p)
}

/// `(x+1)(x+q)...(x+q^{i-1})`; the empty product for `i = 0`.
pub fn rising_x(i: usize, d: usize) -> QSeries {
    let x = MultiPoly::var_x();
    let mut p = QSeries::one(d);
    for j in 0..i {
        p = p.mul(&QSeries::from_poly(&x, d).add(&QSeries::q_power(j, d)));
    }
    p
}

/// Gaussian binomial coefficient as a polynomial in `q`, truncated at `d`
/// (exact once `d >= i(n-i)`). Zero when `i < 0` or `i > n`.
///
/// Built row by row from `[m k] = [m-1 k-1] + q^k [m-1 k]`, so no division
/// is involved.
pub fn gauss_binomial(n: usize, i: i64, d: usize) -> QSeries {
    if i < 0 || i as usize > n {
        return QSeries::zero(d);
    }
    let i = i as usize;
    let mut row: Vec<QSeries> = vec![QSeries::one(d)];
    for m in 1..=n {
        let width = m.min(i);
        let mut next: Vec<QSeries> = Vec::with_capacity(width + 1);
        for k in 0..=width {
            let mut v = if k == 0 {
                QSeries::zero(d)
            } else {
                row[k - 1].clone()
            };
            if k < row.len() {
                v = v.add(&row[k].shift_q(k));
            }
            next.push(v);
        }
        row = next;
    }
    row[i].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn geometric_examples() {
        let g = geometric_unit(1, 3);
        for k in 0..=3 {
            assert_eq!(g.coeff(k).to_string(), "1");
        }
        let gz = geometric(2, &MultiPoly::var_z(), 5);
        assert_eq!(gz.coeff(0).to_string(), "1");
        assert!(gz.coeff(1).is_zero());
        assert_eq!(gz.coeff(2).to_string(), "z");
        assert_eq!(gz.coeff(4).to_string(), "z^2");
        assert!(gz.coeff(5).is_zero());
        let g2 = geometric(3, &MultiPoly::constant(rat(2)), 7);
        assert_eq!(g2.coeff(0).to_string(), "1");
        assert_eq!(g2.coeff(3).to_string(), "2");
        assert_eq!(g2.coeff(6).to_string(), "4");
        assert!(g2.coeff(7).is_zero());
    }

    #[test]
    fn geometric_times_factor_is_one() {
        let d = 20;
        let c = MultiPoly::var_z().mul(&MultiPoly::var_x()).add(&MultiPoly::constant(rat(3)));
        let factor = QSeries::one(d).sub(&QSeries::monomial(&c, 4, d));
        let prod = geometric(4, &c, d).mul(&factor);
        assert!(prod.compare(&QSeries::one(d)).agrees());
    }

    #[test]
    fn pochhammer_q_examples() {
        assert!(pochhammer_q(0, 5).compare(&QSeries::one(5)).agrees());
        let p1 = pochhammer_q(1, 5);
        assert_eq!(p1.coeff(0).to_string(), "1");
        assert_eq!(p1.coeff(1).to_string(), "-1");
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let p2 = pochhammer_q(2, 5);
        let expect = [1i64, -1, -1, 1, 0, 0];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(p2.coeff(k), &MultiPoly::constant_i64(*e));
        }
    }

    #[test]
    fn pochhammer_q_times_geometric_product_is_one() {
        // the product of 1/(1-q^j) factors undoes (q;q)_i at every truncation
        for d in 1..=40usize {
            for i in 0..=5 {
                let mut prod = pochhammer_q(i, d);
                for j in 1..=i {
                    prod = prod.mul(&geometric_unit(j, d));
                }
                assert!(prod.compare(&QSeries::one(d)).agrees(), "i={i} d={d}");
            }
        }
    }

    #[test]
    fn pochhammer_z_examples() {
        assert!(pochhammer_z(0, 4).compare(&QSeries::one(4)).agrees());
        assert_eq!(pochhammer_z(1, 4).coeff(0).to_string(), "1 - z");
        // (1-z)(1-zq) = (1-z) + (z^2-z) q
        let p = pochhammer_z(2, 3);
        assert_eq!(p.coeff(0).to_string(), "1 - z");
        assert_eq!(p.coeff(1).to_string(), "-z + z^2");
        assert!(p.coeff(2).is_zero());
    }

    #[test]
    fn pochhammer_z_omit_examples() {
        assert!(pochhammer_z_omit(0, 0, 4).unwrap().compare(&QSeries::one(4)).agrees());
        let p = pochhammer_z_omit(1, 0, 3).unwrap(); // 1 - zq
        assert_eq!(p.coeff(0).to_string(), "1");
        assert_eq!(p.coeff(1).to_string(), "-z");
        // (1-z)(1-zq^2) = 1 - z + (z^2 - z) q^2
        let p = pochhammer_z_omit(2, 1, 3).unwrap();
        assert_eq!(p.coeff(0).to_string(), "1 - z");
        assert!(p.coeff(1).is_zero());
        assert_eq!(p.coeff(2).to_string(), "-z + z^2");
        assert_eq!(
            pochhammer_z_omit(2, 3, 3).unwrap_err(),
            SeriesError::IndexOutOfRange { index: 3, bound: 2 }
        );
    }

    #[test]
    fn rising_x_examples() {
        assert!(rising_x(0, 4).compare(&QSeries::one(4)).agrees());
        assert_eq!(rising_x(1, 4).coeff(0).to_string(), "1 + x");
        // (x+1)(x+q) = (x + x^2) + (1 + x) q
        let p = rising_x(2, 2);
        assert_eq!(p.coeff(0).to_string(), "x + x^2");
        assert_eq!(p.coeff(1).to_string(), "1 + x");
        assert!(p.coeff(2).is_zero());
    }

    #[test]
    fn gauss_binomial_examples() {
        let d = 12;
        for n in 0..=6 {
            assert!(gauss_binomial(n, 0, d).compare(&QSeries::one(d)).agrees());
        }
        let g21 = gauss_binomial(2, 1, d); // 1 + q
        assert!(g21
            .compare(&QSeries::one(d).add(&QSeries::q_power(1, d)))
            .agrees());
        assert!(gauss_binomial(3, -1, d).is_zero());
        assert!(gauss_binomial(3, 4, d).is_zero());
    }

    #[test]
    fn gauss_binomial_matches_pochhammer_quotient() {
        // independent route: (q;q)_n / ((q;q)_i (q;q)_{n-i}) via exact division
        let d = 30;
        for n in 0..=6usize {
            for i in 0..=n {
                let num = pochhammer_q(n, d);
                let den = pochhammer_q(i, d).mul(&pochhammer_q(n - i, d));
                let quotient = num.divide_exact(&den).unwrap();
                let direct = gauss_binomial(n, i as i64, d);
                assert!(direct.compare(&quotient).agrees(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn gauss_4_2_coefficients() {
        // [4 2] = 1 + q + 2q^2 + q^3 + q^4
        let g = gauss_binomial(4, 2, 10);
        let expect = [1i64, 1, 2, 1, 1, 0];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(g.coeff(k), &MultiPoly::constant_i64(*e), "k={k}");
        }
    }

    #[test]
    fn gauss_symmetry_degree_and_nonnegativity() {
        let d = 40;
        for n in 0..=12usize {
            for i in 0..=n {
                let a = gauss_binomial(n, i as i64, d);
                let b = gauss_binomial(n, (n - i) as i64, d);
                assert!(a.compare(&b).agrees(), "symmetry n={n} i={i}");
                let degree = i * (n - i);
                if degree <= d {
                    assert!(!a.coeff(degree).is_zero(), "degree n={n} i={i}");
                    for k in degree + 1..=d.min(a.effective_order()) {
                        assert!(a.coeff(k).is_zero());
                    }
                }
                for k in 0..=a.effective_order() {
                    let c = a.coeff(k).as_constant().expect("rational coefficients");
                    assert!(c >= rat(0) && c.denom() == &num_bigint::BigInt::from(1));
                }
            }
        }
    }

    #[test]
    fn gauss_pascal_recursions() {
        let d = 40;
        for n in 1..=12usize {
            for i in 0..=n {
                let lhs = gauss_binomial(n, i as i64, d);
                // [n i] = [n-1 i-1] + q^i [n-1 i]
                let r1 = gauss_binomial(n - 1, i as i64 - 1, d)
                    .add(&gauss_binomial(n - 1, i as i64, d).shift_q(i));
                assert!(lhs.compare(&r1).agrees(), "first recursion n={n} i={i}");
                // [n i] = q^{n-i} [n-1 i-1] + [n-1 i]
                let r2 = gauss_binomial(n - 1, i as i64 - 1, d)
                    .shift_q(n - i)
                    .add(&gauss_binomial(n - 1, i as i64, d));
                assert!(lhs.compare(&r2).agrees(), "second recursion n={n} i={i}");
            }
        }
    }
}
