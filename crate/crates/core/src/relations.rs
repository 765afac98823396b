//! Recurrence, structure and derivative-representation matrices computed
//! from expansion coefficients, and the exact identity residuals.

use std::ops::Index;

use serde::Serialize;

use crate::algebra::rational::Rational;
use crate::algebra::structural::{derivative_matrix, shift_matrix};
use crate::algebra::{Axis, BivariatePoly, PolyVector, RationalMatrix};
use crate::error::{Error, Result};
use crate::family::{derivative, shift, Family};
use crate::weight::PhiCase;

/// Anything that can supply expansion matrices `G_{n,k}`.
pub trait Expansions {
    fn g(&self, n: i64, k: i64) -> Result<RationalMatrix>;
}

impl Expansions for Family {
    fn g(&self, n: i64, k: i64) -> Result<RationalMatrix> {
        Family::g(self, n, k)
    }
}

/// One value per axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerAxis<T> {
    pub x: T,
    pub y: T,
}

impl<T> PerAxis<T> {
    pub fn try_build(mut f: impl FnMut(Axis) -> Result<T>) -> Result<Self> {
        Ok(PerAxis { x: f(Axis::X)?, y: f(Axis::Y)? })
    }
}

impl<T> Index<Axis> for PerAxis<T> {
    type Output = T;
    fn index(&self, axis: Axis) -> &T {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }
}

/// `x_j P_n = A P_{n+1} + B P_n + C P_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ttrr {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub c: RationalMatrix,
}

/// `phi_j d/dx_j P_n = W P_{n+1} + S P_n + T P_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub w: RationalMatrix,
    pub s: RationalMatrix,
    pub t: RationalMatrix,
}

/// `P_n = V Q_n + Y Q_{n-1} + Z Q_{n-2}` with `Q_k = L_{k,j} d/dx_j P_{k+1}`.
///
/// Stored against the `Q` vectors, so `V` is square. Since
/// `d/dx_j P_{k+1} = L_{k,j}^T Q_k`, the same relation in terms of the
/// derivative vectors themselves is obtained with [`DerivRep::derivative_form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivRep {
    pub v: RationalMatrix,
    pub y: RationalMatrix,
    pub z: RationalMatrix,
}

impl DerivRep {
    /// Matrices multiplying `d/dx_j P_{n+1}, d/dx_j P_n, d/dx_j P_{n-1}`.
    pub fn derivative_form(&self, n: usize, axis: Axis) -> DerivRep {
        let n = n as i64;
        DerivRep {
            v: &self.v * &shift(n, axis),
            y: &self.y * &shift(n - 1, axis),
            z: &self.z * &shift(n - 2, axis),
        }
    }

    /// Inverse of [`DerivRep::derivative_form`].
    pub fn from_derivative_form(d: &DerivRep, n: usize, axis: Axis) -> DerivRep {
        let n = n as i64;
        DerivRep {
            v: &d.v * &shift(n, axis).transpose(),
            y: &d.y * &shift(n - 1, axis).transpose(),
            z: &d.z * &shift(n - 2, axis).transpose(),
        }
    }
}

fn invert(m: &RationalMatrix, degree: usize) -> Result<RationalMatrix> {
    m.inverse().ok_or(Error::SingularLeading { degree })
}

/// Recurrence matrices from the three leading expansion blocks.
///
/// Boundary terms with negative indices are empty matrices, so `n = 0`
/// gives `B_0 = -A_0 G_{1,0} G_{0,0}^{-1}` and `n = 1` gives
/// `C_1 = -(A_1 G_{2,0} + B_1 G_{1,0}) G_{0,0}^{-1}`.
pub fn general_ttrr(g: &impl Expansions, n: usize, axis: Axis) -> Result<Ttrr> {
    let n = n as i64;
    let gnn_inv = invert(&g.g(n, n)?, n as usize)?;
    let gup_inv = invert(&g.g(n + 1, n + 1)?, n as usize + 1)?;
    let glo_inv = if n >= 1 {
        invert(&g.g(n - 1, n - 1)?, n as usize - 1)?
    } else {
        RationalMatrix::identity(0)
    };
    let a = &(&g.g(n, n)? * &shift(n, axis)) * &gup_inv;
    let b = &(&(&g.g(n, n - 1)? * &shift(n - 1, axis)) - &(&a * &g.g(n + 1, n)?)) * &gnn_inv;
    let c = &(&(&(&g.g(n, n - 2)? * &shift(n - 2, axis)) - &(&a * &g.g(n + 1, n - 1)?))
        - &(&b * &g.g(n, n - 1)?))
        * &glo_inv;
    Ok(Ttrr { a, b, c })
}

/// Both axes of [`general_ttrr`].
pub fn general_ttrr_both(g: &impl Expansions, n: usize) -> Result<PerAxis<Ttrr>> {
    PerAxis::try_build(|axis| general_ttrr(g, n, axis))
}

/// The recurrence of `Q_n^{(j)} = L_{n,j} d/dx_j P_{n+1}`, computed from the
/// expansions of the `Q` family itself. Requires `P` through degree `n + 2`.
pub fn derivative_ttrr(fam: &Family, n: usize, axis: Axis) -> Result<Ttrr> {
    let needed = n + 3;
    if fam.len() < needed {
        return Err(Error::FamilyTooShort { available: fam.len(), needed });
    }
    let q = fam.truncated(needed).derivative_family(axis)?;
    general_ttrr(&q, n, axis)
}

/// `Gd_{n,k} = G_{n+1,k+1} E_{k+1,j}`, the expansion of `d/dx_j P_{n+1}`.
pub fn derivative_expansion(g: &impl Expansions, n: usize, k: usize, axis: Axis) -> Result<RationalMatrix> {
    Ok(&g.g(n as i64 + 1, k as i64 + 1)? * &derivative_matrix(k + 1, axis)?)
}

/// `(x^2, xy, y^2)`-part of `phi` acting on `x^{m-1}`: an m x (m+2) matrix.
fn quad_part(q: &[Rational; 6], m: i64) -> RationalMatrix {
    let l = |k, axis| shift(k, axis);
    let xx = &l(m - 1, Axis::X) * &l(m, Axis::X);
    let xy = &l(m - 1, Axis::X) * &l(m, Axis::Y);
    let yy = &l(m - 1, Axis::Y) * &l(m, Axis::Y);
    &(&xx.scale(&q[0]) + &xy.scale(&q[1])) + &yy.scale(&q[2])
}

/// `(x, y)`-part of `phi` acting on `x^{m-1}`: an m x (m+1) matrix.
fn lin_part(q: &[Rational; 6], m: i64) -> RationalMatrix {
    &shift(m - 1, Axis::X).scale(&q[3]) + &shift(m - 1, Axis::Y).scale(&q[4])
}

/// Structure-relation matrices from the leading expansion blocks and the
/// quadratic factor `phi_j`.
pub fn structure_matrices(g: &impl Expansions, phi: &PhiCase, n: usize, axis: Axis) -> Result<Structure> {
    let q = phi.quadratic_coefficients(axis)?;
    let n = n as i64;
    let e = |k: i64| derivative(k, axis);
    let inv = |k: i64| -> Result<RationalMatrix> {
        if k < 0 {
            Ok(RationalMatrix::identity(0))
        } else {
            invert(&g.g(k, k)?, k as usize)
        }
    };
    let gnn = g.g(n, n)?;
    let g1 = g.g(n, n - 1)?;
    let g2 = g.g(n, n - 2)?;
    let w = &(&(&gnn * &e(n)) * &quad_part(&q, n)) * &inv(n + 1)?;
    let s_rhs = &(&(&(&gnn * &e(n)) * &lin_part(&q, n)) - &(&w * &g.g(n + 1, n)?))
        + &(&(&g1 * &e(n - 1)) * &quad_part(&q, n - 1));
    let s = &s_rhs * &inv(n)?;
    let t_rhs = &(&(&(&(&gnn * &e(n)).scale(&q[5]) - &(&w * &g.g(n + 1, n - 1)?)) - &(&s * &g1))
        + &(&(&g1 * &e(n - 1)) * &lin_part(&q, n - 1)))
        + &(&(&g2 * &e(n - 2)) * &quad_part(&q, n - 2));
    let t = &t_rhs * &inv(n - 1)?;
    Ok(Structure { w, s, t })
}

/// Derivative representation as differences of recurrence matrices,
/// `V = A_n - A^{(j)}_{n-1}` and so on, using the canonical choice
/// `A^{(j)}_{n-1} = L_{n-1}^T A~_{n-1} L_n` built from the `Q` recurrence.
/// Requires `n >= 1` and the family through degree `n + 1`.
pub fn derivative_representation(fam: &Family, n: usize, axis: Axis) -> Result<DerivRep> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let needed = n + 2;
    if fam.len() < needed {
        return Err(Error::FamilyTooShort { available: fam.len(), needed });
    }
    let fam = fam.truncated(needed);
    let ttrr = general_ttrr(&fam, n, axis)?;
    let q = fam.derivative_family(axis)?;
    let qt = general_ttrr(&q, n - 1, axis)?;
    let ni = n as i64;
    let lt = shift(ni - 1, axis).transpose();
    let d = DerivRep {
        v: &ttrr.a - &(&(&lt * &qt.a) * &shift(ni, axis)),
        y: &ttrr.b - &(&(&lt * &qt.b) * &shift(ni - 1, axis)),
        z: &ttrr.c - &(&(&lt * &qt.c) * &shift(ni - 2, axis)),
    };
    Ok(DerivRep::from_derivative_form(&d, n, axis))
}

/// `lhs - (M1 v1 + M2 v2 + M3 v3)`.
pub fn three_term_residual(
    lhs: &PolyVector,
    terms: [(&RationalMatrix, &PolyVector); 3],
) -> Result<PolyVector> {
    let mut out = lhs.clone();
    for (m, v) in terms {
        out = out.try_sub(&m.apply(v)?)?;
    }
    Ok(out)
}

/// Residual of `x_j P_n = A P_{n+1} + B P_n + C P_{n-1}`.
pub fn ttrr_residual(fam: &Family, t: &Ttrr, n: usize, axis: Axis) -> Result<PolyVector> {
    let n = n as i64;
    let lhs = fam.vector(n)?.mul_poly(&BivariatePoly::var(axis));
    three_term_residual(
        &lhs,
        [(&t.a, &fam.vector(n + 1)?), (&t.b, &fam.vector(n)?), (&t.c, &fam.vector(n - 1)?)],
    )
}

/// Residual of `phi_j d/dx_j P_n = W P_{n+1} + S P_n + T P_{n-1}`.
pub fn structure_residual(
    fam: &Family,
    phi: &PhiCase,
    st: &Structure,
    n: usize,
    axis: Axis,
) -> Result<PolyVector> {
    let n = n as i64;
    let lhs = fam.vector(n)?.diff(axis).mul_poly(phi.phi(axis));
    three_term_residual(
        &lhs,
        [(&st.w, &fam.vector(n + 1)?), (&st.s, &fam.vector(n)?), (&st.t, &fam.vector(n - 1)?)],
    )
}

/// Residual of `P_n = V Q_n + Y Q_{n-1} + Z Q_{n-2}`.
pub fn derivrep_residual(fam: &Family, d: &DerivRep, n: usize, axis: Axis) -> Result<PolyVector> {
    let n = n as i64;
    let q = |k: i64| -> Result<PolyVector> {
        if k < 0 {
            Ok(PolyVector::default())
        } else {
            shift(k, axis).apply(&fam.vector(k + 1)?.diff(axis))
        }
    };
    three_term_residual(
        &fam.vector(n)?,
        [(&d.v, &q(n)?), (&d.y, &q(n - 1)?), (&d.z, &q(n - 2)?)],
    )
}

/// Residual of `x_j Q_n = A~ Q_{n+1} + B~ Q_n + C~ Q_{n-1}`.
pub fn derivative_ttrr_residual(fam: &Family, t: &Ttrr, n: usize, axis: Axis) -> Result<PolyVector> {
    let q = fam.derivative_family(axis)?;
    ttrr_residual(&q, t, n, axis)
}

/// Checks `d/dx_j P_{n+1} = L_{n,j}^T Q_n`, i.e. that the entry dropped by
/// `L_{n,j}` vanishes.
pub fn derivative_embedding_holds(fam: &Family, n: usize, axis: Axis) -> Result<bool> {
    let d = fam.vector(n as i64 + 1)?.diff(axis);
    let q = shift_matrix(n, axis).apply(&d)?;
    Ok(shift_matrix(n, axis).transpose().apply(&q)? == d)
}

/// Rank of the stacked matrix `(M_x; M_y)`.
pub fn joint_rank(mx: &RationalMatrix, my: &RationalMatrix) -> Result<usize> {
    Ok(mx.vstack(my)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    // Monic vectors up to degree 2 for the uniform weight on the triangle.
    fn uniform_family() -> Family {
        let c = |p, q| BivariatePoly::constant(rat(p, q));
        let x = BivariatePoly::x;
        let y = BivariatePoly::y;
        let p1 = PolyVector::new(vec![&x() - &c(1, 3), &y() - &c(1, 3)]);
        let p20 = &(&x().pow(2) - &x().scale(&rat(4, 5))) + &c(1, 10);
        let p11 = &(&(&(&x() * &y()) - &x().scale(&rat(1, 5))) - &y().scale(&rat(1, 5))) + &c(1, 20);
        let p02 = &(&y().pow(2) - &y().scale(&rat(4, 5))) + &c(1, 10);
        Family::new(vec![
            PolyVector::new(vec![BivariatePoly::one()]),
            p1,
            PolyVector::new(vec![p20, p11, p02]),
        ])
        .unwrap()
    }

    #[test]
    fn ttrr_at_zero() {
        let f = uniform_family();
        let t = general_ttrr(&f, 0, Axis::X).unwrap();
        assert_eq!(t.a, shift_matrix(0, Axis::X));
        assert_eq!(t.b.get(0, 0), &rat(1, 3));
        assert_eq!(t.c.shape(), (1, 0));
        assert!(ttrr_residual(&f, &t, 0, Axis::X).unwrap().is_zero());
    }

    #[test]
    fn singular_leading_block() {
        let f = Family::new(vec![
            PolyVector::new(vec![BivariatePoly::one()]),
            PolyVector::new(vec![BivariatePoly::x(), BivariatePoly::x()]),
        ])
        .unwrap();
        assert_eq!(general_ttrr(&f, 0, Axis::X), Err(Error::SingularLeading { degree: 1 }));
    }

    #[test]
    fn form_conversion_roundtrip() {
        let d = DerivRep {
            v: RationalMatrix::identity(3),
            y: RationalMatrix::from_i64(&[&[1, 0], &[0, 2], &[3, 0]]),
            z: RationalMatrix::zeros(3, 1),
        };
        for axis in Axis::BOTH {
            let back = DerivRep::from_derivative_form(&d.derivative_form(2, axis), 2, axis);
            assert_eq!(back, d);
        }
    }
}
