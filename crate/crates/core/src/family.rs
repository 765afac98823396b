//! A vector polynomial family indexed by total degree, with its expansions.

use serde::Serialize;

use crate::algebra::{expansion_matrices, Axis, PolyVector, RationalMatrix};
use crate::algebra::structural::shift_matrix;
use crate::error::{Error, Result};

/// Vectors `P_0 .. P_N`, where `P_n` has `n + 1` entries of degree at most
/// `n`, together with all expansion matrices `G_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    vectors: Vec<PolyVector>,
    #[serde(skip)]
    expansions: Vec<Vec<RationalMatrix>>,
}

impl Family {
    pub fn new(vectors: Vec<PolyVector>) -> Result<Self> {
        let mut expansions = Vec::with_capacity(vectors.len());
        for (n, v) in vectors.iter().enumerate() {
            if v.len() != n + 1 {
                return Err(Error::Dimension(format!(
                    "degree {n} vector has {} entries, expected {}",
                    v.len(),
                    n + 1
                )));
            }
            expansions.push(expansion_matrices(v, n as u32)?);
        }
        Ok(Family { vectors, expansions })
    }

    /// Highest degree present; `None` for an empty family.
    pub fn max_degree(&self) -> Option<usize> {
        self.vectors.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[PolyVector] {
        &self.vectors
    }

    /// `P_n`, with `P_{-1}` the empty vector.
    pub fn vector(&self, n: i64) -> Result<PolyVector> {
        if n < 0 {
            return Ok(PolyVector::default());
        }
        self.vectors
            .get(n as usize)
            .cloned()
            .ok_or(Error::FamilyTooShort { available: self.len(), needed: n as usize + 1 })
    }

    /// `G_{n,k}`. Out-of-range `k` gives the zero matrix of the right shape,
    /// with zero columns when `k < 0`.
    pub fn g(&self, n: i64, k: i64) -> Result<RationalMatrix> {
        let rows = if n < 0 { 0 } else { n as usize + 1 };
        let cols = if k < 0 { 0 } else { k as usize + 1 };
        if n < 0 || k < 0 || k > n {
            return Ok(RationalMatrix::zeros(rows, cols));
        }
        self.expansions
            .get(n as usize)
            .map(|e| e[k as usize].clone())
            .ok_or(Error::FamilyTooShort { available: self.len(), needed: n as usize + 1 })
    }

    /// The first `count` degrees.
    pub fn truncated(&self, count: usize) -> Family {
        Family {
            vectors: self.vectors.iter().take(count).cloned().collect(),
            expansions: self.expansions.iter().take(count).cloned().collect(),
        }
    }

    /// `Q_n = L_{n,j} d/dx_j P_{n+1}` for `n = 0 .. N-1`.
    pub fn derivative_family(&self, axis: Axis) -> Result<Family> {
        let q = self
            .vectors
            .iter()
            .skip(1)
            .enumerate()
            .map(|(n, p)| shift_matrix(n, axis).apply(&p.diff(axis)))
            .collect::<Result<Vec<_>>>()?;
        Family::new(q)
    }
}

/// `L_{n,j}` extended to `n < 0` as the empty-row matrix, so that boundary
/// terms in the general formulas vanish without special-casing.
pub fn shift(n: i64, axis: Axis) -> RationalMatrix {
    if n < 0 {
        RationalMatrix::zeros(0, (n + 2).max(0) as usize)
    } else {
        shift_matrix(n as usize, axis)
    }
}

/// `E_{n,j}` extended to `n <= 0` as a matrix with no columns.
pub fn derivative(n: i64, axis: Axis) -> RationalMatrix {
    if n <= 0 {
        RationalMatrix::zeros((n + 1).max(0) as usize, 0)
    } else {
        crate::algebra::structural::derivative_matrix(n as usize, axis).expect("n >= 1")
    }
}
