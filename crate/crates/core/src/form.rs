//! Sparse homogeneous forms in three variables.
//!
//! A [`TernaryForm`] lives either on the primal side (variables `z0, z1, z2`)
//! or on the dual side (`a0, a1, a2`, the coordinates of a linear form
//! `a0 z0 + a1 z1 + a2 z2`). Monomials are ordered graded-lexicographically
//! with `z0 > z1 > z2`; every coefficient vector in this crate reads
//! coefficients in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Primal,
    Dual,
}

impl Space {
    pub fn var_prefix(self) -> char {
        match self {
            Space::Primal => 'z',
            Space::Dual => 'a',
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Primal => f.write_str("primal"),
            Space::Dual => f.write_str("dual"),
        }
    }
}

/// Exponent triple `(e0, e1, e2)`.
///
/// `Ord` puts the graded-lex larger monomial first, so a `BTreeMap` keyed by
/// monomials iterates in basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// Multiplicity-free index form: `z_i z_j z_k` with `i <= j <= k`.
    pub fn indices(&self) -> Vec<usize> {
        (0..3)
            .flat_map(|i| std::iter::repeat_n(i, self.0[i] as usize))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of one degree in graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    degree: u32,
    monomials: Vec<Monomial>,
}

impl BasisOrder {
    pub fn new(degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(Self::dimension(degree));
        for e0 in (0..=degree).rev() {
            for e1 in (0..=degree - e0).rev() {
                monomials.push(Monomial([e0, e1, degree - e0 - e1]));
            }
        }
        BasisOrder { degree, monomials }
    }

    /// `binomial(d + 2, 2)`.
    pub fn dimension(degree: u32) -> usize {
        let d = degree as usize;
        (d + 1) * (d + 2) / 2
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.degree() != self.degree {
            return None;
        }
        self.monomials.binary_search(m).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    space: Space,
    terms: BTreeMap<Monomial, Rational>,
}

impl TernaryForm {
    pub fn zero(degree: u32, space: Space) -> Self {
        TernaryForm {
            degree,
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, space: Space) -> Self {
        Self::monomial(Monomial::ONE, c, space)
    }

    pub fn var(i: usize, space: Space) -> Self {
        Self::monomial(Monomial::var(i), Rational::one(), space)
    }

    pub fn monomial(m: Monomial, c: Rational, space: Space) -> Self {
        let mut f = Self::zero(m.degree(), space);
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// Builds a form from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(degree: u32, space: Space, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut f = Self::zero(degree, space);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: m.degree(),
                });
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Inverse of [`TernaryForm::coefficient_vector`].
    pub fn from_coefficients(basis: &BasisOrder, space: Space, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::Dimension(format!(
                "expected {} coefficients for degree {}, got {}",
                basis.len(),
                basis.degree(),
                coeffs.len()
            )));
        }
        Self::from_terms(
            basis.degree(),
            space,
            basis.monomials().iter().copied().zip(coeffs.iter().cloned()),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn with_space(mut self, space: Space) -> Self {
        self.space = space;
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree, self.space);
        }
        TernaryForm {
            degree: self.degree,
            space: self.space,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one(), self.space);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        assert!(i < 3, "variable index out of range");
        let mut out = Self::zero(self.degree.saturating_sub(1), self.space);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.add_term(Monomial(e), c * Rational::from_integer(m.0[i].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (x, &e) in point.iter().zip(m.0.iter()) {
                    for _ in 0..e {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `z_i -> images[i]`; the images must share one degree and space.
    pub fn substitute(&self, images: &[TernaryForm; 3]) -> Self {
        let k = images[0].degree;
        let space = images[0].space;
        let mut out = Self::zero(self.degree * k, space);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), space);
            for (img, &e) in images.iter().zip(m.0.iter()) {
                t = &t * &img.pow(e);
            }
            out = &out + &t;
        }
        out.degree = self.degree * k;
        out
    }

    /// Coefficients read in `basis` order.
    pub fn coefficient_vector(&self, basis: &BasisOrder) -> Result<Vec<Rational>> {
        if basis.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: basis.degree(),
                got: self.degree,
            });
        }
        Ok(basis.monomials().iter().map(|m| self.coeff(m)).collect())
    }

    /// Exact projective equality: `self = c * other` for some nonzero rational `c`.
    /// Two zero forms are considered equal.
    pub fn projectively_equal(&self, other: &TernaryForm) -> bool {
        if self.degree != other.degree || self.space != other.space {
            return false;
        }
        let Some((pivot, a)) = self.terms.iter().next() else {
            return other.is_zero();
        };
        let b = other.coeff(pivot);
        if b.is_zero() || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .all(|(m, c)| c * &b == other.coeff(m) * a)
    }

    /// Scales so that the first nonzero coefficient in basis order is 1.
    pub fn monic(&self) -> Self {
        match self.terms.values().next() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    fn assert_compatible(&self, other: &TernaryForm) {
        assert_eq!(self.space, other.space, "forms live in different spaces");
    }

    fn sum_degree(&self, other: &TernaryForm) -> u32 {
        if self.is_zero() {
            other.degree
        } else if other.is_zero() {
            self.degree
        } else {
            assert_eq!(self.degree, other.degree, "adding forms of different degree");
            self.degree
        }
    }
}

impl Add for &TernaryForm {
    type Output = TernaryForm;

    fn add(self, rhs: &TernaryForm) -> TernaryForm {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        out.degree = self.sum_degree(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &TernaryForm {
    type Output = TernaryForm;

    fn sub(self, rhs: &TernaryForm) -> TernaryForm {
        self + &(-rhs)
    }
}

impl Neg for &TernaryForm {
    type Output = TernaryForm;

    fn neg(self) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &TernaryForm {
    type Output = TernaryForm;

    fn mul(self, rhs: &TernaryForm) -> TernaryForm {
        self.assert_compatible(rhs);
        let mut out = TernaryForm::zero(self.degree + rhs.degree, self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for TernaryForm {
            type Output = TernaryForm;
            fn $method(self, rhs: TernaryForm) -> TernaryForm {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TernaryForm {
    type Output = TernaryForm;
    fn neg(self) -> TernaryForm {
        -&self
    }
}

/// Canonical text: terms in basis order, coefficients as `p/q`.
/// The output parses back with [`crate::parse::parse_form`].
impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let prefix = self.space.var_prefix();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(format_rational(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{prefix}{i}")),
                    _ => factors.push(format!("{prefix}{i}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
