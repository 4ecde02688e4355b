//! Complete homogeneous symmetric functions over finite alphabets of series,
//! their generating-function laws, and the suffix telescoping rule.
//!
//! The generating variable `t` used by the product laws is a transient third
//! variable: it exists only inside this module as a vector of q-series
//! indexed by t-power and never leaks into the coefficient ring.

use crate::series::QSeries;

/// Finite ordered list of series-valued letters. Order matters: the
/// telescoping law sums over suffixes. All letters share a common effective
/// order, established at construction.
#[derive(Debug, Clone)]
pub struct Alphabet {
    elements: Vec<QSeries>,
    order: usize,
    requested: usize,
}

impl Alphabet {
    /// Normalize a list of letters to their common trusted order, capped at
    /// `d` (which also fixes the order of an empty alphabet).
    pub fn new(elements: Vec<QSeries>, d: usize) -> Alphabet {
        let order = elements
            .iter()
            .map(QSeries::effective_order)
            .min()
            .unwrap_or(d)
            .min(d);
        let requested = elements
            .iter()
            .map(QSeries::requested_order)
            .min()
            .unwrap_or(d)
            .min(d);
        let elements = elements.into_iter().map(|e| e.truncated(order)).collect();
        Alphabet {
            elements,
            order,
            requested,
        }
    }

    pub fn empty(d: usize) -> Alphabet {
        Alphabet::new(Vec::new(), d)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[QSeries] {
        &self.elements
    }

    /// Common trusted order of the letters.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Letters `start..` as an alphabet (same orders).
    pub fn suffix(&self, start: usize) -> Alphabet {
        Alphabet {
            elements: self.elements[start.min(self.elements.len())..].to_vec(),
            order: self.order,
            requested: self.requested,
        }
    }

    /// This alphabet followed by `other` (the disjoint union `X + Y`).
    pub fn concat(&self, other: &Alphabet) -> Alphabet {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        Alphabet::new(elements, self.requested.min(other.requested))
    }

    fn one(&self) -> QSeries {
        QSeries::one(self.requested).truncated(self.order)
    }
}

/// All of `h_0 .. h_k` for the alphabet, by the one-letter-at-a-time
/// recurrence `h_j += letter * h_{j-1}` (ascending `j` makes the update
/// accumulate every power of the new letter).
pub fn complete_h_all(k: usize, a: &Alphabet) -> Vec<QSeries> {
    let mut hs = Vec::with_capacity(k + 1);
    hs.push(a.one());
    let zero = a.one().sub(&a.one());
    hs.resize(k + 1, zero);
    for letter in &a.elements {
        for j in 1..=k {
            let add = letter.mul(&hs[j - 1]);
            hs[j] = hs[j].add(&add);
        }
    }
    hs
}

/// The degree-`k` complete homogeneous function of the alphabet:
/// `h_k = sum_{i_1 <= ... <= i_k} x_{i_1} ... x_{i_k}`, with `h_0 = 1` and
/// `h_k = 0` for `k >= 1` on the empty alphabet.
pub fn complete_h(k: usize, a: &Alphabet) -> QSeries {
    complete_h_all(k, a).pop().expect("k+1 >= 1 entries")
}

/// Polynomial in the transient variable `t` with q-series coefficients,
/// truncated at a fixed t-degree.
struct TPoly {
    c: Vec<QSeries>,
}

impl TPoly {
    fn one(bound: usize, model: &QSeries) -> TPoly {
        let one = QSeries::one(model.requested_order()).truncated(model.effective_order());
        let zero = one.sub(&one);
        let mut c = vec![zero; bound + 1];
        c[0] = one;
        TPoly { c }
    }

    /// `self *= (1 - letter * t)`.
    fn mul_one_minus(&mut self, letter: &QSeries) {
        for k in (1..self.c.len()).rev() {
            self.c[k] = self.c[k].sub(&letter.mul(&self.c[k - 1]));
        }
    }

    /// Inverse in `t`. The t-constant coefficient is exactly 1 in every use
    /// here (products of factors `1 - letter*t`), so the recurrence
    /// `b_n = -sum_{k=1..n} a_k b_{n-k}` needs no series division at all.
    fn inverse(&self) -> TPoly {
        let mut out = Vec::with_capacity(self.c.len());
        out.push(self.c[0].clone());
        for n in 1..self.c.len() {
            let mut acc = self.c[1].mul(&out[n - 1]);
            for k in 2..=n {
                acc = acc.add(&self.c[k].mul(&out[n - k]));
            }
            out.push(acc.neg());
        }
        TPoly { c: out }
    }

    fn mul(&self, other: &TPoly) -> TPoly {
        let bound = self.c.len() - 1;
        let mut out = TPoly::one(bound, &self.c[0]);
        out.c[0] = out.c[0].sub(&out.c[0]);
        for i in 0..=bound {
            for j in 0..=bound - i {
                out.c[i + j] = out.c[i + j].add(&self.c[i].mul(&other.c[j]));
            }
        }
        out
    }
}

/// Check the generating-function law `sum_k h_k t^k = 1/prod_i (1 - x_i t)`
/// by expanding the right side in `t` and comparing term by term with the
/// direct `h_k` computation, for all `k <= min(d, order)`.
pub fn h_gf_check(a: &Alphabet, d: usize) -> bool {
    let bound = d.min(a.order);
    let mut den = TPoly::one(bound, &a.one());
    for letter in &a.elements {
        den.mul_one_minus(letter);
    }
    let gf = den.inverse();
    let hs = complete_h_all(bound, a);
    (0..=bound).all(|k| gf.c[k].compare(&hs[k]).agrees())
}

/// Check the alphabet-sum expansion
/// `h_n(X + Y) = sum_{k=0..n} h_k(X) h_{n-k}(Y)`.
pub fn h_sum_split(n: usize, a: &Alphabet, b: &Alphabet) -> bool {
    let lhs = complete_h(n, &a.concat(b));
    let ha = complete_h_all(n, a);
    let hb = complete_h_all(n, b);
    let mut rhs = ha[0].mul(&hb[n]);
    for k in 1..=n {
        rhs = rhs.add(&ha[k].mul(&hb[n - k]));
    }
    lhs.compare(&rhs).agrees()
}

/// `h_k(X - Y)`: coefficient of `t^k` in
/// `prod_{y}(1 - y t) / prod_{x}(1 - x t)`, expanded in `t`.
pub fn h_difference(k: usize, x_letters: &Alphabet, y_letters: &Alphabet) -> QSeries {
    let model = x_letters.one().mul(&y_letters.one());
    let mut num = TPoly::one(k, &model);
    for y in &y_letters.elements {
        num.mul_one_minus(y);
    }
    let mut den = TPoly::one(k, &model);
    for x in &x_letters.elements {
        den.mul_one_minus(x);
    }
    num.mul(&den.inverse()).c[k].clone()
}

/// Check the suffix telescoping law
/// `sum_i x_i h_{m-1}(x_i, ..., x_n) = h_m(x_1, ..., x_n)` for `m >= 1`.
pub fn telescope_check(m: usize, a: &Alphabet) -> bool {
    assert!(m >= 1, "telescoping needs a positive degree");
    let mut lhs = a.one().sub(&a.one());
    for i in 0..a.len() {
        let term = a.elements[i].mul(&complete_h(m - 1, &a.suffix(i)));
        lhs = lhs.add(&term);
    }
    lhs.compare(&complete_h(m, a)).agrees()
}
