//! Shift, derivative and joint matrices acting on monomial vectors.

use num::One;

use super::matrix::RationalMatrix;
use super::poly::Axis;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `L_{n,j}`: the (n+1)x(n+2) 0/1 matrix with `L x^{n+1} = x_j x^n`.
pub fn shift_matrix(n: usize, axis: Axis) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n + 1, n + 2);
    let offset = match axis {
        Axis::X => 0,
        Axis::Y => 1,
    };
    for i in 0..=n {
        m.set(i, i + offset, Rational::one());
    }
    m
}

/// `E_{n,j}`: the (n+1)xn matrix with `d/dx_j x^n = E x^{n-1}`.
pub fn derivative_matrix(n: usize, axis: Axis) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut m = RationalMatrix::zeros(n + 1, n);
    for i in 0..n {
        match axis {
            // d/dx x^{n-i} y^i = (n-i) x^{n-1-i} y^i
            Axis::X => m.set(i, i, Rational::from_integer((n - i).into())),
            // d/dy x^{n-i-1} y^{i+1} = (i+1) x^{n-1-i} y^i
            Axis::Y => m.set(i + 1, i, Rational::from_integer((i + 1).into())),
        }
    }
    Ok(m)
}

/// `L_n`: `L_{n,1}` stacked over `L_{n,2}`, size (2n+2)x(n+2).
pub fn joint_shift(n: usize) -> RationalMatrix {
    shift_matrix(n, Axis::X)
        .vstack(&shift_matrix(n, Axis::Y))
        .expect("shift matrices share a column count")
}

/// `D_n^+ = (L_n^T L_n)^{-1} L_n^T`, the left inverse of [`joint_shift`].
pub fn joint_left_inverse(n: usize) -> RationalMatrix {
    let l = joint_shift(n);
    let lt = l.transpose();
    let gram = &lt * &l;
    // The Gram matrix is diagonal with entries 1, 2, ..., 2, 1 (1 when n = 0).
    let inv = gram.inverse().expect("joint shift matrix has full column rank");
    &inv * &lt
}
