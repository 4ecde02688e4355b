//! Both sides of every identity in the catalog as truncated series, an exact
//! comparator, and an independent divisor-count oracle.
//!
//! Each builder constructs its two (or three) sides through genuinely
//! different code paths, so agreement up to the trusted order is evidence
//! and not tautology. All infinite sums truncate at index `D`: every dropped
//! term has q-valuation beyond the truncation, so the cut is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::poly::{MultiPoly, Subst};
use crate::qfun::{
    gauss_binomial, geometric, geometric_unit, pochhammer_q, pochhammer_z, pochhammer_z_omit,
    rising_x,
};
use crate::rational::{rat, Rat};
use crate::series::{Mismatch, QSeries, SeriesError};
use crate::sym::{complete_h, Alphabet};

/// Names of the verifiable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityTag {
    Eq1,
    Eq2,
    Pascal1,
    Pasz,
    Pascal2,
    Aqq1,
    CorteelLovejoy,
    Conje1,
    Conje2,
    Conje2Closed,
    VanHamme,
    Dilcher,
    Uchimura,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 13] = [
        IdentityTag::Eq1,
        IdentityTag::Eq2,
        IdentityTag::Pascal1,
        IdentityTag::Pasz,
        IdentityTag::Pascal2,
        IdentityTag::Aqq1,
        IdentityTag::CorteelLovejoy,
        IdentityTag::Conje1,
        IdentityTag::Conje2,
        IdentityTag::Conje2Closed,
        IdentityTag::VanHamme,
        IdentityTag::Dilcher,
        IdentityTag::Uchimura,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityTag::Eq1 => "eq1",
            IdentityTag::Eq2 => "eq2",
            IdentityTag::Pascal1 => "pascal1",
            IdentityTag::Pasz => "pasz",
            IdentityTag::Pascal2 => "pascal2",
            IdentityTag::Aqq1 => "aqq1",
            IdentityTag::CorteelLovejoy => "corteel-lovejoy",
            IdentityTag::Conje1 => "conje1",
            IdentityTag::Conje2 => "conje2",
            IdentityTag::Conje2Closed => "conje2-closed",
            IdentityTag::VanHamme => "van-hamme",
            IdentityTag::Dilcher => "dilcher",
            IdentityTag::Uchimura => "uchimura",
        }
    }

    /// Parameter names the identity consumes, sorted.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            IdentityTag::Eq1
            | IdentityTag::Pascal2
            | IdentityTag::Conje1
            | IdentityTag::Dilcher
            | IdentityTag::Uchimura => &["m", "n"],
            IdentityTag::Eq2
            | IdentityTag::Pasz
            | IdentityTag::Conje2
            | IdentityTag::Conje2Closed
            | IdentityTag::VanHamme => &["n"],
            IdentityTag::Pascal1 => &["k", "m", "n"],
            IdentityTag::Aqq1 => &["l", "n"],
            IdentityTag::CorteelLovejoy => &[],
        }
    }

    /// One-line statement of what gets compared.
    pub fn description(self) -> &'static str {
        match self {
            IdentityTag::Eq1 => {
                "sum_i [n,i] (-1)^(i-1) (x+1)..(x+q^(i-1)) q^(mi)/(1-q^i)^m  =  \
                 sum_i (-1)^(i-1) (x^i-(-1)^i) q^i/(1-q^i) * h_(m-1)(q^j/(1-q^j), j=i..n)"
            }
            IdentityTag::Eq2 => {
                "(z;q)_(n+1)/(q;q)_n * sum_i [n,i] (-1)^(i-1) (x+1)..(x+q^(i-1)) q^i/(1-z q^i)  =  \
                 sum_i (-1)^(i-1) (z;q)_i/(q;q)_i x^i q^i   (sums from i = 0)"
            }
            IdentityTag::Pascal1 => {
                "sum_(i=k..n) [i,k] q^i/(1-q^i) * h_(m-1)(q^j/(1-q^j), j=i..n)  =  \
                 [n,k] q^(km)/(1-q^k)^m"
            }
            IdentityTag::Pasz => {
                "sum_(i=0..n) (z;q)_i/(q;q)_i q^i  =  (zq;q)_n/(q;q)_n"
            }
            IdentityTag::Pascal2 => "sum_(j=0..n) [m+j,m] q^j  =  [n+m+1,m+1]",
            IdentityTag::Aqq1 => {
                "1/(q;q)_n  =  sum_(i=0..n) [n-i+l,l] q^((l+1)i)/(q;q)_i"
            }
            IdentityTag::CorteelLovejoy => {
                "sum_i (-1)^(i-1) (-1;q)_i/(q;q)_i q^i/(1-q^i)  =  sum_i 2q^(2i-1)/(1-q^(2i-1))  =  \
                 sum_i 2q^i/(1-q^(2i));  coefficient of q^j is twice the odd-divisor count of j"
            }
            IdentityTag::Conje1 => {
                "sum_(i=1..2n-1) [2n-1,i] (-1)^(i-1) (-1;q)_i q^(mi)/(1-q^i)^m  =  \
                 sum_(i=1..n) 2q^(2i-1)/(1-q^(2i-1)) * h_(m-1)(q^j/(1-q^j), j=2i-1..2n-1)"
            }
            IdentityTag::Conje2 => {
                "sum_(i=1..2n) [2n,i] (-1)^(i-1) (-1;q)_i q^i/(1-q^(i+2))  =  \
                 sum_(i=1..n) 2q^(2i-1)(1-q)/((1+q^2)(1-q^(2i-1))(1-q^(2i+1)))  =  \
                 2q(1-q^(2n))/((1-q^4)(1-q^(2n+1)))"
            }
            IdentityTag::Conje2Closed => {
                "sum_(i=1..n) 2q^(2i-1)(1-q)/((1+q^2)(1-q^(2i-1))(1-q^(2i+1)))  =  \
                 2q(1-q^(2n))/((1-q^4)(1-q^(2n+1)))"
            }
            IdentityTag::VanHamme => {
                "sum_i [n,i] (-1)^(i-1) q^(i(i+1)/2)/(1-q^i)  =  sum_i q^i/(1-q^i)"
            }
            IdentityTag::Dilcher => {
                "sum_i [n,i] (-1)^(i-1) q^(i(i-1)/2 + mi)/(1-q^i)^m  =  \
                 h_m(q^j/(1-q^j), j=1..n)"
            }
            IdentityTag::Uchimura => {
                "sum_i [n,i] (-1)^(i-1) q^(i(i+1)/2)/(1-q^(i+m))  =  \
                 sum_i q^i/((1-q^i) [i+m,i])"
            }
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityTag {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<IdentityTag, IdentityError> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

/// Integer parameters for an identity, keyed by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, u32>);

impl Params {
    pub fn new() -> Params {
        Params::default()
    }

    pub fn with(mut self, name: &str, value: u32) -> Params {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: u32) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn names(&self) -> Vec<&str> {
        self.0.keys().map(String::as_str).collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{k}={v}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    UnknownIdentity(String),
    ParameterMismatch {
        tag: IdentityTag,
        expected: &'static [&'static str],
        got: Vec<String>,
    },
    InvalidParameter {
        tag: IdentityTag,
        message: String,
    },
    Series(SeriesError),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::UnknownIdentity(name) => write!(f, "unknown identity '{name}'"),
            IdentityError::ParameterMismatch { tag, expected, got } => write!(
                f,
                "identity '{tag}' takes parameters {expected:?}, got {got:?}"
            ),
            IdentityError::InvalidParameter { tag, message } => {
                write!(f, "invalid parameters for '{tag}': {message}")
            }
            IdentityError::Series(e) => write!(f, "series error: {e}"),
        }
    }
}

impl std::error::Error for IdentityError {}

impl From<SeriesError> for IdentityError {
    fn from(e: SeriesError) -> IdentityError {
        IdentityError::Series(e)
    }
}

/// Result of one verification: both sides, the comparison outcome, and the
/// minimal mismatching q-power when the sides disagree.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub tag: IdentityTag,
    pub params: Params,
    pub truncation: usize,
    pub lhs: QSeries,
    pub rhs: QSeries,
    /// Highest q-power actually compared (common trusted order).
    pub compared_order: usize,
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    /// Compare two sides over their common trusted order. Also the hook for
    /// fault-injection tests: perturb one side first, then call this.
    pub fn from_sides(
        tag: IdentityTag,
        params: Params,
        truncation: usize,
        lhs: QSeries,
        rhs: QSeries,
    ) -> IdentityCheck {
        let cmp = lhs.compare(&rhs);
        IdentityCheck {
            tag,
            params,
            truncation,
            compared_order: cmp.trusted_order,
            passed: cmp.agrees(),
            first_mismatch: cmp.first_mismatch,
            lhs,
            rhs,
        }
    }
}

/// `(-1)^(i-1)`: negate for even `i` (including `i = 0`, where the
/// convention `(-1)^(-1) = -1` is forced by the `n = 0` case of the two
/// sums that start at zero).
fn apply_sign(s: QSeries, i: u32) -> QSeries {
    if i % 2 == 1 {
        s
    } else {
        s.neg()
    }
}

fn invert_unit(s: &QSeries) -> QSeries {
    s.invert()
        .expect("constant term is a nonzero rational by construction")
}

/// The letter `q^j/(1-q^j) = q^j + q^(2j) + ...`.
pub fn divisor_letter(j: usize, d: usize) -> QSeries {
    assert!(j >= 1);
    geometric_unit(j, d).shift_q(j)
}

/// The alphabet `{ q^j/(1-q^j) : j = lo..=hi }` (empty when `lo > hi`).
pub fn suffix_alphabet(lo: u32, hi: u32, d: usize) -> Alphabet {
    let letters: Vec<QSeries> = (lo..=hi)
        .map(|j| divisor_letter(j as usize, d))
        .collect();
    Alphabet::new(letters, d)
}

/// The nested sum `sum_{i <= i_2 <= ... <= i_m <= n} q^(sum i_j) / prod (1 - q^(i_j))`
/// over `m - 1` indices, computed as `h_(m-1)` of the suffix alphabet.
/// The empty sum (`m = 1`) is 1.
pub fn inner_multi_sum(lo: u32, hi: u32, m: u32, d: usize) -> QSeries {
    assert!(m >= 1);
    complete_h((m - 1) as usize, &suffix_alphabet(lo, hi, d))
}

/// `(-1;q)_i = 2 (1+q)(1+q^2)...(1+q^(i-1))` for `i >= 1`; 1 for `i = 0`.
fn pochhammer_minus_one(i: u32, d: usize) -> QSeries {
    let mut p = QSeries::one(d);
    for j in 0..i {
        p = p.mul(&QSeries::one(d).add(&QSeries::q_power(j as usize, d)));
    }
    p
}

/// Both sides of the first main identity, parameters `n, m >= 1`.
pub fn eq1_sides(n: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    assert!(n >= 1 && m >= 1);
    let mut lhs = QSeries::zero(d);
    for i in 1..=n {
        let term = gauss_binomial(n as usize, i as i64, d)
            .mul(&rising_x(i as usize, d))
            .shift_q((m * i) as usize)
            .mul(&geometric_unit(i as usize, d).pow(m));
        lhs = lhs.add(&apply_sign(term, i));
    }
    let mut rhs = QSeries::zero(d);
    for i in 1..=n {
        // x^i - (-1)^i
        let front = MultiPoly::monomial(Rat::one(), i, 0)
            .sub(&MultiPoly::constant_i64(if i % 2 == 0 { 1 } else { -1 }));
        let term = QSeries::from_poly(&front, d)
            .shift_q(i as usize)
            .mul(&geometric_unit(i as usize, d))
            .mul(&inner_multi_sum(i, n, m, d));
        rhs = rhs.add(&apply_sign(term, i));
    }
    (lhs, rhs)
}

/// Both sides of the second main identity, parameter `n >= 0`. The left
/// side is assembled per term as
/// `[n,i] (-1)^(i-1) (x+1)..(x+q^(i-1)) q^i * prod_(j != i)(1 - z q^j) / (q;q)_n`,
/// so no division by `1 - z q^i` (in particular none by `1 - z`) ever
/// happens: the omitted-factor product realizes the cancellation
/// syntactically and all arithmetic stays in the polynomial ring.
pub fn eq2_sides(n: u32, d: usize) -> (QSeries, QSeries) {
    let nu = n as usize;
    let inv_poch_n = invert_unit(&pochhammer_q(nu, d));
    let mut lhs = QSeries::zero(d);
    for i in 0..=n {
        let term = gauss_binomial(nu, i as i64, d)
            .mul(&rising_x(i as usize, d))
            .shift_q(i as usize)
            .mul(&pochhammer_z_omit(nu, i as usize, d).expect("omit <= n"))
            .mul(&inv_poch_n);
        lhs = lhs.add(&apply_sign(term, i));
    }
    let mut rhs = QSeries::zero(d);
    for i in 0..=n {
        let xi = MultiPoly::monomial(Rat::one(), i, 0);
        let term = pochhammer_z(i as usize, d)
            .mul(&invert_unit(&pochhammer_q(i as usize, d)))
            .scale_poly(&xi)
            .shift_q(i as usize);
        rhs = rhs.add(&apply_sign(term, i));
    }
    (lhs, rhs)
}

/// Both sides of the summed Pascal-type recursion, `1 <= k <= n`, `m >= 1`.
pub fn pascal1_sides(n: u32, k: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    assert!(k >= 1 && k <= n && m >= 1);
    let mut lhs = QSeries::zero(d);
    for i in k..=n {
        let term = gauss_binomial(i as usize, k as i64, d)
            .shift_q(i as usize)
            .mul(&geometric_unit(i as usize, d))
            .mul(&inner_multi_sum(i, n, m, d));
        lhs = lhs.add(&term);
    }
    let rhs = gauss_binomial(n as usize, k as i64, d)
        .shift_q((k * m) as usize)
        .mul(&geometric_unit(k as usize, d).pow(m));
    (lhs, rhs)
}

/// Both sides of `sum_(i=0..n) (z;q)_i/(q;q)_i q^i = (zq;q)_n/(q;q)_n`.
pub fn pasz_sides(n: u32, d: usize) -> (QSeries, QSeries) {
    let mut lhs = QSeries::zero(d);
    for i in 0..=n {
        let term = pochhammer_z(i as usize, d)
            .mul(&invert_unit(&pochhammer_q(i as usize, d)))
            .shift_q(i as usize);
        lhs = lhs.add(&term);
    }
    // (zq;q)_n = prod_(j=1..n)(1 - z q^j), i.e. (z;q)_(n+1) with the j = 0
    // factor omitted
    let rhs = pochhammer_z_omit(n as usize, 0, d)
        .expect("omit 0 <= n")
        .mul(&invert_unit(&pochhammer_q(n as usize, d)));
    (lhs, rhs)
}

/// Both sides of the Gaussian-binomial column-sum recursion
/// `sum_(j=0..n) [m+j,m] q^j = [n+m+1,m+1]`.
pub fn pascal2_sides(n: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    let mut lhs = QSeries::zero(d);
    for j in 0..=n {
        lhs = lhs.add(&gauss_binomial((m + j) as usize, m as i64, d).shift_q(j as usize));
    }
    let rhs = gauss_binomial((n + m + 1) as usize, (m + 1) as i64, d);
    (lhs, rhs)
}

/// Both sides of the split of `1/(q;q)_n` along the alphabet decomposition
/// `{1, q, ..., q^l} + {q^(l+1), ...}`:
/// `1/(q;q)_n = sum_(i=0..n) [n-i+l,l] q^((l+1)i)/(q;q)_i`.
pub fn aqq1_sides(n: u32, l: u32, d: usize) -> (QSeries, QSeries) {
    let lhs = invert_unit(&pochhammer_q(n as usize, d));
    let mut rhs = QSeries::zero(d);
    for i in 0..=n {
        let term = invert_unit(&pochhammer_q(i as usize, d))
            .mul(&gauss_binomial((n - i + l) as usize, l as i64, d))
            .shift_q(((l + 1) * i) as usize);
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

/// The three equal divisor sums: the alternating Pochhammer-ratio sum, the
/// odd-index form, and the even-denominator form. Term `i` has q-valuation
/// at least `i`, so stopping at `i = D` loses nothing below the truncation.
pub fn corteel_lovejoy_terms(d: usize) -> (QSeries, QSeries, QSeries) {
    assert!(d >= 1);
    let mut s1 = QSeries::zero(d);
    for i in 1..=d as u32 {
        let term = pochhammer_minus_one(i, d)
            .mul(&invert_unit(&pochhammer_q(i as usize, d)))
            .shift_q(i as usize)
            .mul(&geometric_unit(i as usize, d));
        s1 = s1.add(&apply_sign(term, i));
    }
    let mut s2 = QSeries::zero(d);
    let mut i = 1usize;
    while 2 * i - 1 <= d {
        s2 = s2.add(&geometric_unit(2 * i - 1, d).shift_q(2 * i - 1).scale(&rat(2)));
        i += 1;
    }
    let mut s3 = QSeries::zero(d);
    for i in 1..=d {
        s3 = s3.add(&geometric_unit(2 * i, d).shift_q(i).scale(&rat(2)));
    }
    (s1, s2, s3)
}

/// `c_j = 2 * |{d odd : d divides j}|` for `j = 1..=n_max`, by trial
/// division. No series arithmetic involved: this is the independent
/// cross-check for the divisor sums.
pub fn divisor_oracle(n_max: usize) -> Vec<u64> {
    assert!(n_max >= 1);
    (1..=n_max)
        .map(|j| 2 * (1..=j).filter(|dv| j % dv == 0 && dv % 2 == 1).count() as u64)
        .collect()
}

/// Both sides of the odd-support specialization of the first identity,
/// over `2n - 1` with `(-1;q)_i` weights; `n, m >= 1`.
pub fn conje1_sides(n: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    assert!(n >= 1 && m >= 1);
    let top = 2 * n - 1;
    let mut lhs = QSeries::zero(d);
    for i in 1..=top {
        let term = gauss_binomial(top as usize, i as i64, d)
            .mul(&pochhammer_minus_one(i, d))
            .shift_q((m * i) as usize)
            .mul(&geometric_unit(i as usize, d).pow(m));
        lhs = lhs.add(&apply_sign(term, i));
    }
    let mut rhs = QSeries::zero(d);
    for i in 1..=n {
        let odd = (2 * i - 1) as usize;
        let term = geometric_unit(odd, d)
            .shift_q(odd)
            .scale(&rat(2))
            .mul(&inner_multi_sum(2 * i - 1, top, m, d));
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

/// The triple (left sum, right sum, closed form) for the second
/// specialization, `n >= 1`.
///
/// The left sum is not built literally: it is derived from the second main
/// identity specialized at `x = 1`, `z = q^2` over `2n`, with the prefactor
/// cleared and the `i = 0` term removed —
/// `lhs = rhs_eq2(x=1, z=q^2) * (1-q)/((1-q^(2n+1))(1-q^(2n+2))) + 1/(1-q^2)`.
/// [`conje2_lhs_literal`] builds the same sum directly; the two must agree.
pub fn conje2_sides(n: u32, d: usize) -> (QSeries, QSeries, QSeries) {
    assert!(n >= 1);
    let top = 2 * n as usize;
    let one_minus_q = QSeries::one(d).sub(&QSeries::q_power(1, d));

    let specialized = eq2_sides(2 * n, d)
        .1
        .substitute(&Subst::constant(rat(1)), &Subst::q_power(2));
    let lhs = specialized
        .mul(&one_minus_q)
        .mul(&geometric_unit(top + 1, d))
        .mul(&geometric_unit(top + 2, d))
        .add(&geometric_unit(2, d));

    // 1/(1+q^2) as a geometric factor with coefficient -1
    let inv_one_plus_q2 = geometric(2, &MultiPoly::constant_i64(-1), d);
    let mut rhs = QSeries::zero(d);
    for i in 1..=n as usize {
        let term = QSeries::q_power(2 * i - 1, d)
            .scale(&rat(2))
            .mul(&one_minus_q)
            .mul(&inv_one_plus_q2)
            .mul(&geometric_unit(2 * i - 1, d))
            .mul(&geometric_unit(2 * i + 1, d));
        rhs = rhs.add(&term);
    }

    let closed = QSeries::q_power(1, d)
        .scale(&rat(2))
        .mul(&QSeries::one(d).sub(&QSeries::q_power(top, d)))
        .mul(&geometric_unit(4, d))
        .mul(&geometric_unit(top + 1, d));

    (lhs, rhs, closed)
}

/// Literal term-by-term build of the left sum of the second specialization:
/// `sum_(i=1..2n) [2n,i] (-1)^(i-1) (-1;q)_i q^i/(1-q^(i+2))`.
pub fn conje2_lhs_literal(n: u32, d: usize) -> QSeries {
    assert!(n >= 1);
    let top = 2 * n;
    let mut lhs = QSeries::zero(d);
    for i in 1..=top {
        let term = gauss_binomial(top as usize, i as i64, d)
            .mul(&pochhammer_minus_one(i, d))
            .shift_q(i as usize)
            .mul(&geometric_unit(i as usize + 2, d));
        lhs = lhs.add(&apply_sign(term, i));
    }
    lhs
}

/// Both sides of Van Hamme's identity, `n >= 1`. The rising product at
/// `x = 0` collapses to `q^(i(i-1)/2)`; with the extra `q^i` the left
/// numerator is `q^(i(i+1)/2)`.
pub fn van_hamme_sides(n: u32, d: usize) -> (QSeries, QSeries) {
    assert!(n >= 1);
    let mut lhs = QSeries::zero(d);
    for i in 1..=n as usize {
        let term = gauss_binomial(n as usize, i as i64, d)
            .shift_q(i * (i + 1) / 2)
            .mul(&geometric_unit(i, d));
        lhs = lhs.add(&apply_sign(term, i as u32));
    }
    let mut rhs = QSeries::zero(d);
    for i in 1..=n as usize {
        rhs = rhs.add(&divisor_letter(i, d));
    }
    (lhs, rhs)
}

/// Both sides of Dilcher's formula, `n, m >= 1`. The right side is the
/// degree-`m` complete function of the divisor letters, i.e. the full
/// `m`-fold nested sum.
pub fn dilcher_sides(n: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    assert!(n >= 1 && m >= 1);
    let mut lhs = QSeries::zero(d);
    for i in 1..=n as usize {
        let term = gauss_binomial(n as usize, i as i64, d)
            .shift_q(i * (i - 1) / 2 + m as usize * i)
            .mul(&geometric_unit(i, d).pow(m));
        lhs = lhs.add(&apply_sign(term, i as u32));
    }
    let rhs = complete_h(m as usize, &suffix_alphabet(1, n, d));
    (lhs, rhs)
}

/// Both sides of Uchimura's identity, `n >= 1`, `m >= 0`:
/// `sum_i [n,i] (-1)^(i-1) q^(i(i+1)/2)/(1-q^(i+m)) = sum_i q^i/((1-q^i) [i+m,i])`.
pub fn uchimura_sides(n: u32, m: u32, d: usize) -> (QSeries, QSeries) {
    assert!(n >= 1);
    let mut lhs = QSeries::zero(d);
    for i in 1..=n as usize {
        let term = gauss_binomial(n as usize, i as i64, d)
            .shift_q(i * (i + 1) / 2)
            .mul(&geometric_unit(i + m as usize, d));
        lhs = lhs.add(&apply_sign(term, i as u32));
    }
    let mut rhs = QSeries::zero(d);
    for i in 1..=n as usize {
        let term = divisor_letter(i, d)
            .mul(&invert_unit(&gauss_binomial(i + m as usize, i as i64, d)));
        rhs = rhs.add(&term);
    }
    (lhs, rhs)
}

fn require(params: &Params, tag: IdentityTag, name: &str) -> Result<u32, IdentityError> {
    params
        .get(name)
        .ok_or_else(|| IdentityError::ParameterMismatch {
            tag,
            expected: tag.param_names(),
            got: params.names().iter().map(|s| s.to_string()).collect(),
        })
}

fn validate(
    tag: IdentityTag,
    condition: bool,
    message: &str,
) -> Result<(), IdentityError> {
    if condition {
        Ok(())
    } else {
        Err(IdentityError::InvalidParameter {
            tag,
            message: message.to_string(),
        })
    }
}

fn check_triple(
    tag: IdentityTag,
    params: &Params,
    d: usize,
    sides: [QSeries; 3],
) -> IdentityCheck {
    let [a, b, c] = sides;
    let pairs = [(&a, &b), (&a, &c), (&b, &c)];
    for (lhs, rhs) in pairs {
        let check =
            IdentityCheck::from_sides(tag, params.clone(), d, (*lhs).clone(), (*rhs).clone());
        if !check.passed {
            return check;
        }
    }
    IdentityCheck::from_sides(tag, params.clone(), d, a, b)
}

/// Build both sides of the identity at the given parameters and compare
/// them exactly over the common trusted order. Triple-form identities are
/// compared pairwise and the first failing pair is reported.
pub fn verify(tag: IdentityTag, params: &Params, d: usize) -> Result<IdentityCheck, IdentityError> {
    let mut got = params.names();
    got.sort_unstable();
    if got != tag.param_names() {
        return Err(IdentityError::ParameterMismatch {
            tag,
            expected: tag.param_names(),
            got: got.into_iter().map(str::to_string).collect(),
        });
    }
    let pair = |lhs: QSeries, rhs: QSeries| {
        IdentityCheck::from_sides(tag, params.clone(), d, lhs, rhs)
    };
    let check = match tag {
        IdentityTag::Eq1 => {
            let n = require(params, tag, "n")?;
            let m = require(params, tag, "m")?;
            validate(tag, n >= 1 && m >= 1, "requires n >= 1 and m >= 1")?;
            let (lhs, rhs) = eq1_sides(n, m, d);
            pair(lhs, rhs)
        }
        IdentityTag::Eq2 => {
            let n = require(params, tag, "n")?;
            let (lhs, rhs) = eq2_sides(n, d);
            pair(lhs, rhs)
        }
        IdentityTag::Pascal1 => {
            let n = require(params, tag, "n")?;
            let k = require(params, tag, "k")?;
            let m = require(params, tag, "m")?;
            validate(tag, k >= 1 && k <= n && m >= 1, "requires 1 <= k <= n and m >= 1")?;
            let (lhs, rhs) = pascal1_sides(n, k, m, d);
            pair(lhs, rhs)
        }
        IdentityTag::Pasz => {
            let n = require(params, tag, "n")?;
            let (lhs, rhs) = pasz_sides(n, d);
            pair(lhs, rhs)
        }
        IdentityTag::Pascal2 => {
            let n = require(params, tag, "n")?;
            let m = require(params, tag, "m")?;
            let (lhs, rhs) = pascal2_sides(n, m, d);
            pair(lhs, rhs)
        }
        IdentityTag::Aqq1 => {
            let n = require(params, tag, "n")?;
            let l = require(params, tag, "l")?;
            let (lhs, rhs) = aqq1_sides(n, l, d);
            pair(lhs, rhs)
        }
        IdentityTag::CorteelLovejoy => {
            validate(tag, d >= 1, "requires truncation >= 1")?;
            let (s1, s2, s3) = corteel_lovejoy_terms(d);
            check_triple(tag, params, d, [s1, s2, s3])
        }
        IdentityTag::Conje1 => {
            let n = require(params, tag, "n")?;
            let m = require(params, tag, "m")?;
            validate(tag, n >= 1 && m >= 1, "requires n >= 1 and m >= 1")?;
            let (lhs, rhs) = conje1_sides(n, m, d);
            pair(lhs, rhs)
        }
        IdentityTag::Conje2 => {
            let n = require(params, tag, "n")?;
            validate(tag, n >= 1, "requires n >= 1")?;
            let (lhs, rhs, closed) = conje2_sides(n, d);
            check_triple(tag, params, d, [lhs, rhs, closed])
        }
        IdentityTag::Conje2Closed => {
            let n = require(params, tag, "n")?;
            validate(tag, n >= 1, "requires n >= 1")?;
            let (_, rhs, closed) = conje2_sides(n, d);
            pair(rhs, closed)
        }
        IdentityTag::VanHamme => {
            let n = require(params, tag, "n")?;
            validate(tag, n >= 1, "requires n >= 1")?;
            let (lhs, rhs) = van_hamme_sides(n, d);
            pair(lhs, rhs)
        }
        IdentityTag::Dilcher => {
            let n = require(params, tag, "n")?;
            let m = require(params, tag, "m")?;
            validate(tag, n >= 1 && m >= 1, "requires n >= 1 and m >= 1")?;
            let (lhs, rhs) = dilcher_sides(n, m, d);
            pair(lhs, rhs)
        }
        IdentityTag::Uchimura => {
            let n = require(params, tag, "n")?;
            let m = require(params, tag, "m")?;
            validate(tag, n >= 1, "requires n >= 1")?;
            let (lhs, rhs) = uchimura_sides(n, m, d);
            pair(lhs, rhs)
        }
    };
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(tag: IdentityTag, params: Params, d: usize) {
        let check = verify(tag, &params, d).unwrap();
        assert!(
            check.passed,
            "{tag} {params} failed at q^{:?}",
            check.first_mismatch.map(|m| m.power)
        );
    }

    #[test]
    fn eq1_smallest_case_is_geometric() {
        // n = m = 1: both sides are q(x+1)/(1-q)
        let d = 12;
        let (lhs, rhs) = eq1_sides(1, 1, d);
        let expect = QSeries::from_poly(&MultiPoly::var_x().add(&MultiPoly::one()), d)
            .shift_q(1)
            .mul(&geometric_unit(1, d));
        assert!(lhs.compare(&expect).agrees());
        assert!(rhs.compare(&expect).agrees());
    }

    #[test]
    fn eq1_x_degree_is_n() {
        for n in 1..=4 {
            let (lhs, rhs) = eq1_sides(n, 2, 16);
            assert_eq!(lhs.max_deg_x(), n);
            assert_eq!(rhs.max_deg_x(), n);
        }
    }

    #[test]
    fn eq1_sides_agree() {
        assert_passes(IdentityTag::Eq1, Params::new().with("n", 3).with("m", 2), 30);
    }

    #[test]
    fn eq2_degenerate_case_is_minus_one() {
        let d = 8;
        let (lhs, rhs) = eq2_sides(0, d);
        let minus_one = QSeries::one(d).neg();
        assert!(lhs.compare(&minus_one).agrees());
        assert!(rhs.compare(&minus_one).agrees());
    }

    #[test]
    fn eq2_rhs_z_degree_grows_with_n() {
        let (_, rhs) = eq2_sides(4, 20);
        assert_eq!(rhs.max_deg_z(), 4);
        assert_eq!(rhs.max_deg_x(), 4);
    }

    #[test]
    fn eq2_sides_agree() {
        assert_passes(IdentityTag::Eq2, Params::new().with("n", 1), 10);
        assert_passes(IdentityTag::Eq2, Params::new().with("n", 3), 25);
    }

    #[test]
    fn pascal1_collapses_at_k_equals_n() {
        // single term i = n, inner alphabet {q^n/(1-q^n)}
        let d = 25;
        for m in 1..=3 {
            let (lhs, rhs) = pascal1_sides(3, 3, m, d);
            assert!(lhs.compare(&rhs).agrees(), "m={m}");
        }
    }

    #[test]
    fn pascal1_small_cases() {
        assert_passes(
            IdentityTag::Pascal1,
            Params::new().with("n", 2).with("k", 1).with("m", 1),
            20,
        );
        assert_passes(
            IdentityTag::Pascal1,
            Params::new().with("n", 4).with("k", 2).with("m", 3),
            30,
        );
    }

    #[test]
    fn pasz_hand_cases() {
        let d = 16;
        let (lhs, rhs) = pasz_sides(0, d);
        assert!(lhs.compare(&QSeries::one(d)).agrees());
        assert!(rhs.compare(&QSeries::one(d)).agrees());
        // n = 1: 1 + (1-z)q/(1-q) = (1-zq)/(1-q), i.e. (1-q) + (1-z)q = 1 - zq
        assert_passes(IdentityTag::Pasz, Params::new().with("n", 1), 16);
        assert_passes(IdentityTag::Pasz, Params::new().with("n", 5), 30);
    }

    #[test]
    fn pascal2_edges_and_interior() {
        assert_passes(IdentityTag::Pascal2, Params::new().with("n", 0).with("m", 5), 20);
        // m = 0: geometric sum equals [n+1, 1]
        let d = 20;
        let (lhs, rhs) = pascal2_sides(6, 0, d);
        assert!(lhs.compare(&rhs).agrees());
        assert_passes(IdentityTag::Pascal2, Params::new().with("n", 3).with("m", 2), 20);
    }

    #[test]
    fn aqq1_cases() {
        assert_passes(IdentityTag::Aqq1, Params::new().with("n", 0).with("l", 3), 12);
        assert_passes(IdentityTag::Aqq1, Params::new().with("n", 4).with("l", 0), 25);
        assert_passes(IdentityTag::Aqq1, Params::new().with("n", 4).with("l", 2), 30);
    }

    #[test]
    fn corteel_lovejoy_coefficients() {
        let d = 12;
        let (s1, s2, s3) = corteel_lovejoy_terms(d);
        for s in [&s1, &s2, &s3] {
            assert_eq!(s.coeff(1), &MultiPoly::constant_i64(2));
            assert_eq!(s.coeff(3), &MultiPoly::constant_i64(4));
            assert_eq!(s.coeff(4), &MultiPoly::constant_i64(2));
        }
        assert!(s1.compare(&s2).agrees());
        assert!(s2.compare(&s3).agrees());
    }

    #[test]
    fn divisor_oracle_values() {
        let c = divisor_oracle(12);
        assert_eq!(c[0], 2); // j = 1
        assert_eq!(c[5], 4); // j = 6: odd divisors {1, 3}
        assert_eq!(c[8], 6); // j = 9: odd divisors {1, 3, 9}
        assert_eq!(c, vec![2, 2, 4, 2, 4, 4, 4, 2, 6, 4, 4, 4]);
    }

    #[test]
    fn corteel_lovejoy_matches_divisor_oracle() {
        let d = 18;
        let (s1, _, _) = corteel_lovejoy_terms(d);
        let oracle = divisor_oracle(d);
        for j in 1..=d {
            assert_eq!(
                s1.coeff(j),
                &MultiPoly::constant_i64(oracle[j - 1] as i64),
                "j={j}"
            );
        }
    }

    #[test]
    fn conje1_single_term_case() {
        let d = 15;
        let (lhs, rhs) = conje1_sides(1, 1, d);
        let expect = geometric_unit(1, d).shift_q(1).scale(&rat(2));
        assert!(lhs.compare(&expect).agrees());
        assert!(rhs.compare(&expect).agrees());
    }

    #[test]
    fn conje1_matches_eq1_at_x_one() {
        // for odd top index 2n'-1, specializing x = 1 in the general sides
        // gives exactly the odd-support sides
        let d = 25;
        for (n, m) in [(1u32, 2u32), (2, 1), (2, 3), (3, 2)] {
            let top = 2 * n - 1;
            let (g_lhs, g_rhs) = eq1_sides(top, m, d);
            let one = Subst::constant(rat(1));
            let (c_lhs, c_rhs) = conje1_sides(n, m, d);
            assert!(g_lhs
                .substitute(&one, &Subst::Keep)
                .compare(&c_lhs)
                .agrees());
            assert!(g_rhs
                .substitute(&one, &Subst::Keep)
                .compare(&c_rhs)
                .agrees());
        }
    }

    #[test]
    fn conje1_sides_agree() {
        assert_passes(IdentityTag::Conje1, Params::new().with("n", 3).with("m", 2), 30);
    }

    #[test]
    fn conje2_closed_form_at_n_one() {
        // 2q(1-q^2)/((1-q^4)(1-q^3)) = 2q/((1+q^2)(1-q^3)) = the single
        // right-side term
        let d = 20;
        let (_, rhs, closed) = conje2_sides(1, d);
        assert!(rhs.compare(&closed).agrees());
    }

    #[test]
    fn conje2_rhs_telescopes() {
        for n in 1..=5 {
            let (_, rhs, closed) = conje2_sides(n, 30);
            assert!(rhs.compare(&closed).agrees(), "n={n}");
        }
    }

    #[test]
    fn conje2_machinery_equals_literal() {
        for n in 1..=3 {
            let (lhs, _, _) = conje2_sides(n, 25);
            let literal = conje2_lhs_literal(n, 25);
            assert!(lhs.compare(&literal).agrees(), "n={n}");
        }
    }

    #[test]
    fn conje2_triple_agrees() {
        assert_passes(IdentityTag::Conje2, Params::new().with("n", 2), 30);
        assert_passes(IdentityTag::Conje2Closed, Params::new().with("n", 4), 30);
    }

    #[test]
    fn van_hamme_cases() {
        let d = 15;
        let (lhs, rhs) = van_hamme_sides(1, d);
        let expect = divisor_letter(1, d);
        assert!(lhs.compare(&expect).agrees());
        assert!(rhs.compare(&expect).agrees());
        assert_passes(IdentityTag::VanHamme, Params::new().with("n", 4), 30);
    }

    #[test]
    fn van_hamme_rhs_counts_divisors() {
        // with n = D every divisor of j <= D is counted
        let d = 20;
        let (_, rhs) = van_hamme_sides(d as u32, d);
        for j in 1..=d {
            let count = (1..=j).filter(|dv| j % dv == 0).count() as i64;
            assert_eq!(rhs.coeff(j), &MultiPoly::constant_i64(count), "j={j}");
        }
    }

    #[test]
    fn dilcher_reduces_to_van_hamme_at_m_one() {
        let d = 25;
        for n in 1..=4 {
            let (d_lhs, d_rhs) = dilcher_sides(n, 1, d);
            let (v_lhs, v_rhs) = van_hamme_sides(n, d);
            assert!(d_lhs.compare(&v_lhs).agrees(), "n={n}");
            assert!(d_rhs.compare(&v_rhs).agrees(), "n={n}");
        }
    }

    #[test]
    fn dilcher_single_term_case() {
        // n = 1, m = 2: q^2/(1-q)^2 on both sides
        let d = 15;
        let (lhs, rhs) = dilcher_sides(1, 2, d);
        let expect = geometric_unit(1, d).pow(2).shift_q(2);
        assert!(lhs.compare(&expect).agrees());
        assert!(rhs.compare(&expect).agrees());
        assert_passes(IdentityTag::Dilcher, Params::new().with("n", 3).with("m", 3), 30);
    }

    #[test]
    fn uchimura_m_zero_is_divisor_sum() {
        let d = 20;
        let (_, rhs) = uchimura_sides(4, 0, d);
        let (_, vh_rhs) = van_hamme_sides(4, d);
        assert!(rhs.compare(&vh_rhs).agrees());
    }

    #[test]
    fn uchimura_smallest_case() {
        // n = m = 1: q^2/(1-q^2) vs q/((1-q)(1+q)); both equal q/(1-q^2)
        // shifted by one: q^2/(1-q^2)... the sides must agree exactly.
        let d = 20;
        let (lhs, rhs) = uchimura_sides(1, 1, d);
        assert!(lhs.compare(&rhs).agrees());
        assert_passes(IdentityTag::Uchimura, Params::new().with("n", 3).with("m", 2), 30);
    }

    #[test]
    fn verify_dispatch_and_errors() {
        let check = verify(IdentityTag::Pascal2, &Params::new().with("n", 3).with("m", 2), 20)
            .unwrap();
        assert!(check.passed);
        let check = verify(IdentityTag::Eq1, &Params::new().with("n", 2).with("m", 1), 25).unwrap();
        assert!(check.passed);

        assert!(matches!(
            "nope".parse::<IdentityTag>(),
            Err(IdentityError::UnknownIdentity(_))
        ));
        assert!(matches!(
            verify(IdentityTag::Eq1, &Params::new().with("n", 2), 10),
            Err(IdentityError::ParameterMismatch { .. })
        ));
        assert!(matches!(
            verify(
                IdentityTag::Eq2,
                &Params::new().with("n", 2).with("m", 1),
                10
            ),
            Err(IdentityError::ParameterMismatch { .. })
        ));
        assert!(matches!(
            verify(IdentityTag::Eq1, &Params::new().with("n", 0).with("m", 1), 10),
            Err(IdentityError::InvalidParameter { .. })
        ));
        assert!(matches!(
            verify(
                IdentityTag::Pascal1,
                &Params::new().with("n", 2).with("k", 3).with("m", 1),
                10
            ),
            Err(IdentityError::InvalidParameter { .. })
        ));
    }

    #[test]
    fn perturbed_side_is_detected_with_minimal_power() {
        let params = Params::new().with("n", 3).with("m", 2);
        let (lhs, rhs) = eq1_sides(3, 2, 20);
        let bad = lhs.add_to_coeff(5, &MultiPoly::one());
        let check = IdentityCheck::from_sides(IdentityTag::Eq1, params, 20, bad, rhs);
        assert!(!check.passed);
        assert_eq!(check.first_mismatch.as_ref().unwrap().power, 5);
    }

    #[test]
    fn params_display_is_sorted() {
        let p = Params::new().with("n", 3).with("m", 2).with("k", 1);
        assert_eq!(p.to_string(), "k=1 m=2 n=3");
    }
}
