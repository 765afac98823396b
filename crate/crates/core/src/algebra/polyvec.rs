//! Column vectors of polynomials and their monomial expansions.

use std::ops::Index;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::poly::{Axis, BivariatePoly, Monomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Ordered list of polynomials, e.g. the degree-`n` family vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyVector(pub Vec<BivariatePoly>);

impl PolyVector {
    pub fn new(entries: Vec<BivariatePoly>) -> Self {
        PolyVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        PolyVector(vec![BivariatePoly::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BivariatePoly> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(BivariatePoly::is_zero)
    }

    /// Index of the first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|p| !p.is_zero())
    }

    pub fn diff(&self, axis: Axis) -> Self {
        PolyVector(self.0.iter().map(|p| p.diff(axis)).collect())
    }

    pub fn mul_poly(&self, q: &BivariatePoly) -> Self {
        PolyVector(self.0.iter().map(|p| p * q).collect())
    }

    pub fn try_add(&self, other: &PolyVector) -> Result<Self> {
        self.check_len(other)?;
        Ok(PolyVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &PolyVector) -> Result<Self> {
        self.check_len(other)?;
        Ok(PolyVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    fn check_len(&self, other: &PolyVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl Index<usize> for PolyVector {
    type Output = BivariatePoly;
    fn index(&self, i: usize) -> &BivariatePoly {
        &self.0[i]
    }
}

impl FromIterator<BivariatePoly> for PolyVector {
    fn from_iter<I: IntoIterator<Item = BivariatePoly>>(iter: I) -> Self {
        PolyVector(iter.into_iter().collect())
    }
}

impl RationalMatrix {
    /// Matrix times polynomial vector.
    pub fn apply(&self, v: &PolyVector) -> Result<PolyVector> {
        if self.cols() != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows(),
                self.cols(),
                v.len()
            )));
        }
        Ok((0..self.rows())
            .map(|i| {
                let mut acc = BivariatePoly::zero();
                for (j, p) in v.iter().enumerate() {
                    let c = self.get(i, j);
                    if !c.is_zero() {
                        acc += &p.scale(c);
                    }
                }
                acc
            })
            .collect())
    }
}

/// The monomial vector `(x^n, x^{n-1}y, ..., y^n)`.
pub fn monomial_vector(n: u32) -> PolyVector {
    (0..=n)
        .map(|k| BivariatePoly::term(n - k, k, Rational::from_integer(1.into())))
        .collect()
}

/// Coefficient matrices `G_{n,k}`, returned indexed by `k` (so `out[n]` is the
/// leading matrix), such that `v = sum_k G_{n,k} x^k`.
pub fn expansion_matrices(v: &PolyVector, n: u32) -> Result<Vec<RationalMatrix>> {
    for (entry, p) in v.iter().enumerate() {
        if let Some(d) = p.degree() {
            if d > n {
                return Err(Error::DegreeOverflow { entry, degree: d, bound: n });
            }
        }
    }
    let mut out: Vec<RationalMatrix> = (0..=n)
        .map(|k| RationalMatrix::zeros(v.len(), k as usize + 1))
        .collect();
    for (row, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out[m.degree() as usize].set(row, m.y as usize, c.clone());
        }
    }
    Ok(out)
}

/// Inverse of [`expansion_matrices`]: `sum_k G[k] x^k`.
pub fn reconstruct(g: &[RationalMatrix]) -> Result<PolyVector> {
    let len = g.first().map_or(0, RationalMatrix::rows);
    let mut out = PolyVector::zeros(len);
    for (k, gk) in g.iter().enumerate() {
        if gk.rows() != len || gk.cols() != k + 1 {
            return Err(Error::Dimension(format!(
                "expansion block {k} has shape {:?}",
                gk.shape()
            )));
        }
        for (i, j, c) in gk.entries() {
            out.0[i].add_term(Monomial::new((k - j) as u32, j as u32), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn degree_one_expansion() {
        let third = BivariatePoly::constant(rat(1, 3));
        let v = PolyVector::new(vec![&BivariatePoly::x() - &third, &BivariatePoly::y() - &third]);
        let g = expansion_matrices(&v, 1).unwrap();
        assert_eq!(g[1], RationalMatrix::identity(2));
        assert_eq!(g[0].get(0, 0), &rat(-1, 3));
        assert_eq!(g[0].get(1, 0), &rat(-1, 3));
        assert_eq!(reconstruct(&g).unwrap(), v);
    }

    #[test]
    fn monomials_expand_to_identity() {
        let g = expansion_matrices(&monomial_vector(2), 2).unwrap();
        assert_eq!(g[2], RationalMatrix::identity(3));
        assert!(g[1].is_zero() && g[0].is_zero());
    }

    #[test]
    fn overflow_is_reported() {
        let v = PolyVector::new(vec![BivariatePoly::one(), BivariatePoly::term(1, 2, rat(1, 1))]);
        assert_eq!(
            expansion_matrices(&v, 2),
            Err(Error::DegreeOverflow { entry: 1, degree: 3, bound: 2 })
        );
    }
}
