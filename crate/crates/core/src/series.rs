//! Truncated formal power series in `q` with [`MultiPoly`] coefficients.
//!
//! A series carries two orders: `requested_order` is the truncation the
//! caller asked for, `effective_order` is the highest q-power whose
//! coefficient is still trustworthy. Division by a series of positive
//! q-valuation permanently lowers the effective order, and comparisons past
//! the trusted bound are errors rather than silent truncations, so an
//! identity check can never pass on coefficients that were never computed.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{MultiPoly, Subst};
use crate::rational::Rat;

/// Errors from series arithmetic and the operations built on top of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires a nonzero constant term.
    ZeroLeadingCoefficient,
    /// The leading coefficient involves `x` or `z` and cannot be inverted
    /// inside the polynomial coefficient ring.
    NonConstantLeadingCoefficient,
    /// Division would need a fractional power: the dividend has a nonzero
    /// coefficient below the divisor's valuation.
    InexactDivision { power: usize },
    /// Valuation losses have consumed the entire trusted range.
    PrecisionExhausted,
    /// Division by the zero series.
    ZeroDivisor,
    /// An index parameter lies outside its documented range.
    IndexOutOfRange { index: usize, bound: usize },
    /// Two interpolation points coincide as series.
    CoincidentPoints { i: usize, j: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroLeadingCoefficient => {
                write!(f, "cannot invert a series with zero constant term")
            }
            SeriesError::NonConstantLeadingCoefficient => {
                write!(f, "leading coefficient involves x or z and is not invertible")
            }
            SeriesError::InexactDivision { power } => {
                write!(f, "inexact division: nonzero coefficient at q^{power} below the divisor valuation")
            }
            SeriesError::PrecisionExhausted => {
                write!(f, "no trusted coefficients remain after valuation loss")
            }
            SeriesError::ZeroDivisor => write!(f, "division by the zero series"),
            SeriesError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            SeriesError::CoincidentPoints { i, j } => {
                write!(f, "interpolation points {i} and {j} coincide")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// First disagreeing q-power of a comparison, with both coefficient values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub power: usize,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

/// Outcome of comparing two series over their common trusted range.
#[derive(Debug, Clone)]
pub struct SeriesCompare {
    /// Highest q-power that was actually compared.
    pub trusted_order: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl SeriesCompare {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Formal power series in `q`, truncated, with polynomial coefficients.
#[derive(Debug, Clone)]
pub struct QSeries {
    /// Coefficient of `q^k` at index `k`; length is `effective_order + 1`.
    coeffs: Vec<MultiPoly>,
    effective_order: usize,
    requested_order: usize,
}

impl QSeries {
    fn build(coeffs: Vec<MultiPoly>, requested_order: usize) -> QSeries {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.len() - 1 <= requested_order);
        QSeries {
            effective_order: coeffs.len() - 1,
            coeffs,
            requested_order,
        }
    }

    pub fn zero(order: usize) -> QSeries {
        QSeries::build(vec![MultiPoly::zero(); order + 1], order)
    }

    pub fn one(order: usize) -> QSeries {
        QSeries::from_poly(&MultiPoly::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> QSeries {
        QSeries::from_poly(&MultiPoly::constant(c), order)
    }

    /// The polynomial `p` as a series: `p * q^0`.
    pub fn from_poly(p: &MultiPoly, order: usize) -> QSeries {
        QSeries::monomial(p, 0, order)
    }

    /// `q^k` truncated at `order` (the zero series when `k > order`).
    pub fn q_power(k: usize, order: usize) -> QSeries {
        QSeries::monomial(&MultiPoly::one(), k, order)
    }

    /// `p * q^k` truncated at `order`.
    pub fn monomial(p: &MultiPoly, k: usize, order: usize) -> QSeries {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        if k <= order {
            coeffs[k] = p.clone();
        }
        QSeries::build(coeffs, order)
    }

    /// Series from explicit coefficients `c_0..c_n`; the effective order is
    /// `n` and must not exceed `requested_order`.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>, requested_order: usize) -> QSeries {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        assert!(
            coeffs.len() - 1 <= requested_order,
            "effective order exceeds requested order"
        );
        QSeries::build(coeffs, requested_order)
    }

    pub fn effective_order(&self) -> usize {
        self.effective_order
    }

    pub fn requested_order(&self) -> usize {
        self.requested_order
    }

    /// Coefficient of `q^k`. Panics past the effective order: that data was
    /// never computed.
    pub fn coeff(&self, k: usize) -> &MultiPoly {
        assert!(
            k <= self.effective_order,
            "coefficient q^{k} requested beyond trusted order {}",
            self.effective_order
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Index of the first nonzero coefficient, if any within trusted range.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Largest x-degree over all trusted coefficients.
    pub fn max_deg_x(&self) -> u32 {
        self.coeffs.iter().map(MultiPoly::deg_x).max().unwrap_or(0)
    }

    /// Largest z-degree over all trusted coefficients.
    pub fn max_deg_z(&self) -> u32 {
        self.coeffs.iter().map(MultiPoly::deg_z).max().unwrap_or(0)
    }

    fn common(&self, other: &QSeries) -> (usize, usize) {
        (
            self.effective_order.min(other.effective_order),
            self.requested_order.min(other.requested_order),
        )
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (eff, req) = self.common(other);
        let coeffs = (0..=eff)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        QSeries::build(coeffs, req)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let (eff, req) = self.common(other);
        let coeffs = (0..=eff)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        QSeries::build(coeffs, req)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(MultiPoly::neg).collect(),
            ..*self
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (eff, req) = self.common(other);
        let mut coeffs = vec![MultiPoly::zero(); eff + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(eff + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(eff + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &a.mul(b);
            }
        }
        QSeries::build(coeffs, req)
    }

    /// Multiply every coefficient by a fixed polynomial (no q content).
    pub fn scale_poly(&self, p: &MultiPoly) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|v| v.scale(c)).collect(),
            ..*self
        }
    }

    /// Multiply by `q^k`. Trusted data moves up by `k`, capped at the
    /// requested order.
    pub fn shift_q(&self, k: usize) -> QSeries {
        let eff = (self.effective_order + k).min(self.requested_order);
        let mut coeffs = vec![MultiPoly::zero(); eff + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= eff {
                coeffs[i + k] = c.clone();
            }
        }
        QSeries::build(coeffs, self.requested_order)
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.requested_order).truncated(self.effective_order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Lower the effective order to `new_eff` (no-op beyond current).
    pub fn truncated(&self, new_eff: usize) -> QSeries {
        if new_eff >= self.effective_order {
            return self.clone();
        }
        QSeries::build(
            self.coeffs[..=new_eff].to_vec(),
            self.requested_order,
        )
    }

    /// Multiplicative inverse via `b_0 = 1/a_0`,
    /// `b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}`.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let a0 = self.coeffs[0]
            .as_constant()
            .ok_or(SeriesError::NonConstantLeadingCoefficient)?;
        if a0.is_zero() {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        let inv_a0 = Rat::one() / a0;
        let mut out: Vec<MultiPoly> = Vec::with_capacity(self.effective_order + 1);
        out.push(MultiPoly::constant(inv_a0.clone()));
        for n in 1..=self.effective_order {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = &acc + &self.coeffs[k].mul(&out[n - k]);
            }
            out.push(acc.scale(&inv_a0).neg());
        }
        Ok(QSeries::build(out, self.requested_order))
    }

    /// Exact division: requires the divisor's leading coefficient (at its
    /// q-valuation `v`) to be a rational constant and the dividend to vanish
    /// below `q^v`. The quotient's effective order drops by `v`.
    pub fn divide_exact(&self, divisor: &QSeries) -> Result<QSeries, SeriesError> {
        let v = divisor.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let lead = divisor.coeffs[v]
            .as_constant()
            .ok_or(SeriesError::NonConstantLeadingCoefficient)?;
        for k in 0..v.min(self.effective_order + 1) {
            if !self.coeffs[k].is_zero() {
                return Err(SeriesError::InexactDivision { power: k });
            }
        }
        let (bound, req) = self.common(divisor);
        if bound < v {
            return Err(SeriesError::PrecisionExhausted);
        }
        let new_eff = bound - v;
        let inv_lead = Rat::one() / lead;
        let num = |k: usize| &self.coeffs[k + v];
        let den = |k: usize| &divisor.coeffs[k + v];
        let mut out: Vec<MultiPoly> = Vec::with_capacity(new_eff + 1);
        for n in 0..=new_eff {
            let mut acc = num(n).clone();
            for k in 1..=n {
                if den(k).is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = &acc - &den(k).mul(&out[n - k]);
            }
            out.push(acc.scale(&inv_lead));
        }
        Ok(QSeries::build(out, req))
    }

    /// Substitute `x` and `z` within every coefficient. Substituting a
    /// monomial in `q` moves contributions to higher powers only, so the
    /// trusted order is preserved.
    pub fn substitute(&self, x_sub: &Subst, z_sub: &Subst) -> QSeries {
        let eff = self.effective_order;
        let mut coeffs = vec![MultiPoly::zero(); eff + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            for (shift, p) in c.substitute(x_sub, z_sub) {
                if k + shift <= eff {
                    coeffs[k + shift] = &coeffs[k + shift] + &p;
                }
            }
        }
        QSeries::build(coeffs, self.requested_order)
    }

    /// Return a copy with `delta` added to the coefficient of `q^k`.
    pub fn add_to_coeff(&self, k: usize, delta: &MultiPoly) -> QSeries {
        let mut out = self.clone();
        out.coeffs[k] = &out.coeffs[k] + delta;
        out
    }

    /// Compare coefficient-wise over the common trusted range.
    pub fn compare(&self, other: &QSeries) -> SeriesCompare {
        let trusted = self.effective_order.min(other.effective_order);
        let first_mismatch = (0..=trusted)
            .find(|&k| self.coeffs[k] != other.coeffs[k])
            .map(|k| Mismatch {
                power: k,
                lhs: self.coeffs[k].clone(),
                rhs: other.coeffs[k].clone(),
            });
        SeriesCompare {
            trusted_order: trusted,
            first_mismatch,
        }
    }

    /// Equality up to `q^order`. Asking past the common trusted order is an
    /// error, never a silent truncation.
    pub fn eq_up_to(&self, other: &QSeries, order: usize) -> Result<bool, SeriesError> {
        let trusted = self.effective_order.min(other.effective_order);
        if order > trusted {
            return Err(SeriesError::PrecisionExhausted);
        }
        Ok((0..=order).all(|k| self.coeffs[k] == other.coeffs[k]))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rendered = c.to_string();
            let single = c.terms().count() == 1;
            let (neg, body) = match rendered.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, rendered),
            };
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (k, single) {
                (0, _) => write!(f, "{body}")?,
                (_, true) if body == "1" => write!(f, "q^{k}")?,
                (_, true) => write!(f, "{body}*q^{k}")?,
                (_, false) => write!(f, "({body})*q^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.effective_order + 1)
    }
}
