//! Exact scalars, polynomials, matrices and the structural matrices.

pub mod matrix;
pub mod poly;
pub mod polyvec;
pub mod rational;
pub mod structural;

pub use matrix::RationalMatrix;
pub use poly::{Axis, BivariatePoly, Monomial};
pub use polyvec::{expansion_matrices, monomial_vector, reconstruct, PolyVector};
pub use rational::{format_rational, parse_rational, pochhammer, Rational};
pub use structural::{derivative_matrix, joint_left_inverse, joint_shift, shift_matrix};
