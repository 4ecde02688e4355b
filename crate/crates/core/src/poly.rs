//! Sparse polynomials in the two formal variables `x` and `z` over exact
//! rationals. These are the coefficients of every q-series in the crate.
//!
//! Canonical form: the term map never stores a zero coefficient, so two
//! polynomials are equal iff their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rat;

/// Substitution target for one formal variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subst {
    /// Leave the variable in place.
    Keep,
    /// Replace the variable by `coeff * q^q_power`.
    Mono { coeff: Rat, q_power: usize },
}

impl Subst {
    /// Replace by a plain rational constant.
    pub fn constant(c: Rat) -> Self {
        Subst::Mono {
            coeff: c,
            q_power: 0,
        }
    }

    /// Replace by `q^p`.
    pub fn q_power(p: usize) -> Self {
        Subst::Mono {
            coeff: Rat::one(),
            q_power: p,
        }
    }
}

/// Polynomial in `x` and `z`, stored as a sparse map from `(deg_x, deg_z)`
/// to a nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MultiPoly::monomial(c, 0, 0)
    }

    pub fn constant_i64(c: i64) -> Self {
        MultiPoly::constant(crate::rational::rat(c))
    }

    /// The variable `x`.
    pub fn var_x() -> Self {
        MultiPoly::monomial(Rat::one(), 1, 0)
    }

    /// The variable `z`.
    pub fn var_z() -> Self {
        MultiPoly::monomial(Rat::one(), 0, 1)
    }

    /// Single term `c * x^deg_x * z^deg_z`.
    pub fn monomial(c: Rat, deg_x: u32, deg_z: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_x, deg_z), c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) iff the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(dx, _)| dx).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|&(_, dz)| dz).max().unwrap_or(0)
    }

    /// Iterate terms as `((deg_x, deg_z), coeff)` in map order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert_term(key, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert_term(key, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (&(ax, az), ac) in &self.terms {
            for (&(bx, bz), bc) in &other.terms {
                out.insert_term((ax + bx, az + bz), ac * bc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Substitute each variable independently. Because a variable may be
    /// replaced by a monomial in `q`, the result is a map from q-power shift
    /// to the polynomial contribution at that shift.
    pub fn substitute(&self, x_sub: &Subst, z_sub: &Subst) -> BTreeMap<usize, MultiPoly> {
        let mut out: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (&(dx, dz), c) in &self.terms {
            let mut coeff = c.clone();
            let mut shift = 0usize;
            let mut new_dx = 0u32;
            let mut new_dz = 0u32;
            match x_sub {
                Subst::Keep => new_dx = dx,
                Subst::Mono { coeff: xc, q_power } => {
                    coeff *= num_traits::pow(xc.clone(), dx as usize);
                    shift += q_power * dx as usize;
                }
            }
            match z_sub {
                Subst::Keep => new_dz = dz,
                Subst::Mono { coeff: zc, q_power } => {
                    coeff *= num_traits::pow(zc.clone(), dz as usize);
                    shift += q_power * dz as usize;
                }
            }
            out.entry(shift)
                .or_insert_with(MultiPoly::zero)
                .insert_term((new_dx, new_dz), coeff);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, dx: u32, dz: u32) -> fmt::Result {
    if dx > 0 {
        write!(f, "x")?;
        if dx > 1 {
            write!(f, "^{dx}")?;
        }
        if dz > 0 {
            write!(f, "*")?;
        }
    }
    if dz > 0 {
        write!(f, "z")?;
        if dz > 1 {
            write!(f, "^{dz}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    /// Graded-lexicographic term order, ascending: total degree first, then
    /// x-power before z-power within a degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(dx, dz)| (dx + dz, dz));
        for (pos, key) in keys.iter().enumerate() {
            let (dx, dz) = *key;
            let c = &self.terms[key];
            let negative = c < &Rat::zero();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            if dx == 0 && dz == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, dx, dz)?;
            }
        }
        Ok(())
    }
}
