//! Sparse bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Coordinate direction: `X` is axis 1, `Y` is axis 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::X, Axis::Y];

    /// 1 for `X`, 2 for `Y`.
    pub fn index(self) -> u8 {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
        }
    }

    pub fn from_index(j: u8) -> Option<Axis> {
        match j {
            1 => Some(Axis::X),
            2 => Some(Axis::Y),
            _ => None,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// The monomial `x^x y^y`.
///
/// Ordered by total degree, then by the power of `y`. Within one degree this
/// is the position in the monomial vector `(x^n, x^{n-1}y, ..., y^n)`, so the
/// map iteration order matches the wire format and the vector layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    fn key(self) -> (u32, u32) {
        (self.degree(), self.y)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in `x, y`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, 0, c)
    }

    pub fn x() -> Self {
        Self::term(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::term(0, 1, Rational::one())
    }

    /// `c x^i y^j`.
    pub fn term(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// Builds a polynomial from `(i, j, c)` triples, summing repeated monomials.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// The variable selected by `axis`.
    pub fn var(axis: Axis) -> Self {
        match axis {
            Axis::X => Self::x(),
            Axis::Y => Self::y(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, axis: Axis) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match axis {
                Axis::X => m.x,
                Axis::Y => m.y,
            })
            .max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in the graded order and its coefficient.
    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Smallest monomial in the graded order and its coefficient.
    pub fn trailing_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    /// The sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (Monomial::new(k.x + m.x, k.y + m.y), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative.
    pub fn diff(&self, axis: Axis) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            match axis {
                Axis::X if m.x > 0 => {
                    out.add_term(Monomial::new(m.x - 1, m.y), c * Rational::from_integer(m.x.into()))
                }
                Axis::Y if m.y > 0 => {
                    out.add_term(Monomial::new(m.x, m.y - 1), c * Rational::from_integer(m.y.into()))
                }
                _ => {}
            }
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * num::pow(x.clone(), m.x as usize) * num::pow(y.clone(), m.y as usize);
        }
        acc
    }

    /// Substitutes polynomials for `x` and `y`.
    pub fn compose(&self, x: &BivariatePoly, y: &BivariatePoly) -> Self {
        let max_x = self.degree_in(Axis::X).unwrap_or(0);
        let max_y = self.degree_in(Axis::Y).unwrap_or(0);
        let mut xp = vec![Self::one()];
        for k in 1..=max_x as usize {
            let next = &xp[k - 1] * x;
            xp.push(next);
        }
        let mut yp = vec![Self::one()];
        for k in 1..=max_y as usize {
            let next = &yp[k - 1] * y;
            yp.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out += &(&xp[m.x as usize] * &yp[m.y as usize]).scale(c);
        }
        out
    }

    /// Returns `r` with `self = q * r`.
    pub fn exact_div(&self, q: &BivariatePoly) -> Result<Self> {
        let (lm, lc) = match q.leading_term() {
            Some((m, c)) => (m, c.clone()),
            None => return Err(Error::DivisionByZeroPoly),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let shift = Monomial::new(m.x - lm.x, m.y - lm.y);
            let coef = c / &lc;
            rem -= &q.mul_monomial(shift, &coef);
            quot.add_term(shift, coef);
        }
        Ok(quot)
    }

    /// Scales so that the coefficient of the smallest monomial is 1.
    pub fn normalize_trailing(&self) -> Self {
        match self.trailing_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Some `c` with `self = c * other`, if the two are proportional.
    /// Both zero gives `Some(1)`; exactly one zero gives `None`.
    pub fn ratio_to(&self, other: &BivariatePoly) -> Option<Rational> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Rational::one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        let (m, c) = other.leading_term()?;
        let k = self.coeff(m.x, m.y) / c;
        if &other.scale(&k) == self {
            Some(k)
        } else {
            None
        }
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(format_rational(&mag));
            }
            for (v, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BivariatePoly> for BivariatePoly {
    fn sub_assign(&mut self, rhs: &BivariatePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self += &rhs;
        self
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(Monomial::new(m1.x + m2.x, m1.y + m2.y), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        // leading term first, matching the printed form
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&(m.x, m.y, format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = BivariatePoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of [i, j, \"p/q\"] triples")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut p = BivariatePoly::zero();
                while let Some((i, j, c)) = seq.next_element::<(u32, u32, String)>()? {
                    let c = parse_rational(&c).map_err(de::Error::custom)?;
                    p.add_term(Monomial::new(i, j), c);
                }
                Ok(p)
            }
        }
        d.deserialize_seq(PolyVisitor)
    }
}
