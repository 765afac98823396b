//! Monic vector polynomial solutions built from the equation coefficients.
//!
//! Two independent constructions are provided: the joint recurrence seeded
//! by closed-form recurrence matrices ([`build_monic`]) and a direct
//! degree-by-degree solve of the eigen-equation ([`solve_monic_direct`]).

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{int, Rational};
use crate::algebra::structural::{derivative_matrix, joint_left_inverse, shift_matrix};
use crate::algebra::{Axis, BivariatePoly, PolyVector, RationalMatrix};
use crate::error::{Error, Result};
use crate::family::{shift, Family};
use crate::pde::HypergeometricPde;
use crate::relations::{self, DerivRep, Expansions, PerAxis, Structure, Ttrr};
use crate::weight::PhiCase;

fn r(k: usize) -> Rational {
    Rational::from_integer(k.into())
}

fn nonzero_varpi(pde: &HypergeometricPde, k: i64) -> Result<Rational> {
    let w = pde.varpi(k.max(0) as u64);
    if w.is_zero() {
        Err(Error::NotAdmissible { k: k.max(0) as u64 })
    } else {
        Ok(w)
    }
}

/// Which form of the `g_{i+1,i}` entry of `G_{n,n-2}` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdiagonalForm {
    /// Valid for every admissible equation.
    Corrected,
    /// The tabulated form; it agrees with the corrected one exactly when
    /// `(n-1-i) ((b1 - 1) X + 4 b3 c3) = 0`, e.g. whenever `b1 = 1`, `b3 = 0`.
    Tabulated,
}

/// `G^_{n,n-1}` in closed form, an (n+1) x n lower-bidiagonal matrix.
pub fn subleading_first(pde: &HypergeometricPde, n: usize) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let w2 = nonzero_varpi(pde, 2 * n as i64 - 2)?;
    let p = pde;
    let mut m = RationalMatrix::zeros(n + 1, n);
    // 1-based i from the closed form; entry (i,i) is stored at (i-1,i-1).
    for i in 1..=n {
        let gii = r(n + 1 - i) * (r(n - i) * &p.b1 + r(2 * (i - 1)) * &p.c3 + &p.f1) / &w2;
        let gi1 = r(i) * (r(i - 1) * &p.b2 + r(2 * (n - i)) * &p.b3 + &p.f2) / &w2;
        m.set(i - 1, i - 1, gii);
        m.set(i, i - 1, gi1);
    }
    Ok(m)
}

/// `G^_{n,n-2}` in closed form, an (n+1) x (n-1) banded matrix (`n >= 2`).
pub fn subleading_second(pde: &HypergeometricPde, n: usize, form: SubdiagonalForm) -> Result<RationalMatrix> {
    if n < 2 {
        return Err(Error::InvalidDegree(n as u32));
    }
    let p = pde;
    let w2 = nonzero_varpi(pde, 2 * n as i64 - 2)?;
    let w3 = nonzero_varpi(pde, 2 * n as i64 - 3)?;
    let ww = &w2 * &w3;
    let mut m = RationalMatrix::zeros(n + 1, n - 1);
    // 1-based i in 1..=n-1, signed arithmetic for the (i-2) factor.
    for i in 1..n {
        let (ii, nn) = (int(i as i64), int(n as i64));
        let u1 = r(n - i) * &p.b1 + r(2 * (i - 1)) * &p.c3 + &p.f1;
        let u2 = r(n - i - 1) * &p.b1 + r(2 * (i - 1)) * &p.c3 + &p.f1;
        let gii = r((n - i) * (n + 1 - i)) / (int(2) * &ww) * (&w2 * &p.c1 + &u1 * &u2);

        let x = r(i - 1) * &p.b2 + r(2 * n - 2 * i - 1) * &p.b3 + &p.f2;
        let tail = match form {
            SubdiagonalForm::Tabulated => x.clone(),
            SubdiagonalForm::Corrected => &p.b1 * &x + int(4) * &p.b3 * &p.c3,
        };
        let inner = &p.f1 * &p.f2
            + &p.d3 * &w2
            + &p.b3
                * (int(2) * (&nn - int(2) + int(2) * (&ii - int(2)) * (&nn - &ii - int(1))) * &p.c3
                    + r(2 * n - 2 * i - 1) * &p.f1)
            + r(2 * i - 1) * &p.c3 * &p.f2
            + r(i - 1) * &p.b2 * (r(2 * i - 1) * &p.c3 + &p.f1)
            + r(n - 1 - i) * tail;
        let gi1 = r(i * (n - i)) / &ww * inner;

        let v1 = r(i - 1) * &p.b2 + r(2 * (n - i - 1)) * &p.b3 + &p.f2;
        let v2 = r(i) * &p.b2 + r(2 * (n - i - 1)) * &p.b3 + &p.f2;
        let gi2 = r(i * (i + 1)) / (int(2) * &ww) * (&w2 * &p.c2 + &v1 * &v2);

        m.set(i - 1, i - 1, gii);
        m.set(i, i - 1, gi1);
        m.set(i + 1, i - 1, gi2);
    }
    Ok(m)
}

/// `(G^_{n,n-1}, G^_{n,n-2})`, the second absent for `n = 1`.
pub fn subleading_matrices(pde: &HypergeometricPde, n: usize) -> Result<(RationalMatrix, Option<RationalMatrix>)> {
    let first = subleading_first(pde, n)?;
    let second = if n >= 2 {
        Some(subleading_second(pde, n, SubdiagonalForm::Corrected)?)
    } else {
        None
    };
    Ok((first, second))
}

/// Closed-form expansion blocks of the monic family: identity on the
/// diagonal and the two subleading blocks below it.
#[derive(Debug, Clone)]
pub struct ClosedForm<'a> {
    pub pde: &'a HypergeometricPde,
}

impl Expansions for ClosedForm<'_> {
    fn g(&self, n: i64, k: i64) -> Result<RationalMatrix> {
        let rows = if n < 0 { 0 } else { n as usize + 1 };
        if n < 0 || k < 0 || k > n {
            return Ok(RationalMatrix::zeros(rows, if k < 0 { 0 } else { k as usize + 1 }));
        }
        let nu = n as usize;
        match n - k {
            0 => Ok(RationalMatrix::identity(rows)),
            1 => subleading_first(self.pde, nu),
            2 => subleading_second(self.pde, nu, SubdiagonalForm::Corrected),
            _ => Err(Error::InvalidDegree(k as u32)),
        }
    }
}

/// `B_{0,j} = (-f_j / e)`.
pub fn b0(pde: &HypergeometricPde, axis: Axis) -> Result<RationalMatrix> {
    let e = nonzero_varpi(pde, 0)?;
    let f = match axis {
        Axis::X => &pde.f1,
        Axis::Y => &pde.f2,
    };
    Ok(RationalMatrix::from_rows(vec![vec![-f / e]]).expect("1x1"))
}

/// `C_{1,j}` in closed form. The off-diagonal entry is shared by both axes.
pub fn c1(pde: &HypergeometricPde, axis: Axis) -> Result<RationalMatrix> {
    let p = pde;
    nonzero_varpi(pde, 0)?;
    nonzero_varpi(pde, 1)?;
    let e2 = &p.e * &p.e;
    let den = &e2 * (&p.a + &p.e);
    let mixed = (-&p.d3 * &e2 + &p.b3 * &p.e * &p.f1 + &p.c3 * &p.e * &p.f2 - &p.a * &p.f1 * &p.f2) / &den;
    let col = match axis {
        Axis::X => vec![(-&p.c1 * &e2 + &p.f1 * (&p.b1 * &p.e - &p.a * &p.f1)) / &den, mixed],
        Axis::Y => vec![mixed, (-&p.c2 * &e2 + &p.f2 * (&p.b2 * &p.e - &p.a * &p.f2)) / &den],
    };
    RationalMatrix::from_rows(col.into_iter().map(|v| vec![v]).collect())
}

/// The tabulated top entry of `C_{1,2}`, which has `-d3 f1^2` where the
/// consistent value has `-d3 e^2`. Kept only for the errata tests.
pub fn c1_tabulated_top_y(pde: &HypergeometricPde) -> Rational {
    let p = pde;
    (-&p.d3 * &p.f1 * &p.f1 + &p.b3 * &p.e * &p.f1 + &p.c3 * &p.e * &p.f2 - &p.a * &p.f1 * &p.f2)
        / (&p.e * &p.e * (&p.a + &p.e))
}

/// Monic recurrence matrices at degree `n` from the equation coefficients.
pub fn monic_ttrr(pde: &HypergeometricPde, n: usize) -> Result<PerAxis<Ttrr>> {
    pde.check_admissible(n as u64 + 1)?;
    let g = ClosedForm { pde };
    PerAxis::try_build(|axis| {
        let mut t = relations::general_ttrr(&g, n, axis)?;
        if n == 0 {
            t.b = b0(pde, axis)?;
        }
        if n == 1 {
            t.c = c1(pde, axis)?;
        }
        Ok(t)
    })
}

/// Monic structure matrices; `n >= 3` uses the closed-form blocks directly,
/// smaller `n` goes through the same formulas with the built family.
pub fn monic_structure(fam: &MonicFamily, phi: &PhiCase, n: usize, axis: Axis) -> Result<Structure> {
    if n >= 3 {
        relations::structure_matrices(&ClosedForm { pde: &fam.pde }, phi, n, axis)
    } else {
        relations::structure_matrices(&fam.family, phi, n, axis)
    }
}

/// Monic derivative representation in closed form (`n >= 2`):
/// `V = (L_n E_{n+1})^{-1}`, `Y = (G_{n,n-1} - V L_n G_{n+1,n} E_n) V_{n-1}`,
/// `Z = (G_{n,n-2} - V L_n G_{n+1,n-1} E_{n-1} - Y L_{n-1} G_{n,n-1} E_{n-1}) V_{n-2}`.
pub fn monic_derivrep(pde: &HypergeometricPde, n: usize, axis: Axis) -> Result<DerivRep> {
    if n < 2 {
        return Err(Error::InvalidDegree(n as u32));
    }
    let g = ClosedForm { pde };
    let ni = n as i64;
    let v_of = |k: usize| -> Result<RationalMatrix> {
        (&shift_matrix(k, axis) * &derivative_matrix(k + 1, axis)?)
            .inverse()
            .ok_or(Error::SingularLeading { degree: k })
    };
    let e = |k: usize| derivative_matrix(k, axis);
    let v = v_of(n)?;
    let vl = &v * &shift(ni, axis);
    let y = &(&g.g(ni, ni - 1)? - &(&(&vl * &g.g(ni + 1, ni)?) * &e(n)?)) * &v_of(n - 1)?;
    let z_rhs = &(&g.g(ni, ni - 2)? - &(&(&vl * &g.g(ni + 1, ni - 1)?) * &e(n - 1)?))
        - &(&(&(&y * &shift(ni - 1, axis)) * &g.g(ni, ni - 1)?) * &e(n - 1)?);
    let z = &z_rhs * &v_of(n - 2)?;
    Ok(DerivRep { v, y, z })
}

/// A monic family together with the equation it solves.
#[derive(Debug, Clone, Serialize)]
pub struct MonicFamily {
    #[serde(skip)]
    pub pde: HypergeometricPde,
    pub family: Family,
}

impl MonicFamily {
    pub fn max_degree(&self) -> usize {
        self.family.max_degree().unwrap_or(0)
    }

    pub fn vector(&self, n: usize) -> &PolyVector {
        &self.family.vectors()[n]
    }
}

/// Runs the joint recurrence
/// `P_{n+1} = D_n^+ [(x; y) (x) I - B_n] P_n - D_n^+ C_n P_{n-1}`
/// from `P_0 = 1` up to degree `max_n`.
pub fn build_monic(pde: &HypergeometricPde, max_n: usize) -> Result<MonicFamily> {
    pde.check_admissible(max_n as u64 + 1)?;
    if !pde.is_potentially_self_adjoint(0, 0)? {
        return Err(Error::NotSelfAdjoint);
    }
    let mut vectors = vec![PolyVector::new(vec![BivariatePoly::one()])];
    for n in 0..max_n {
        let t = monic_ttrr(pde, n)?;
        let prev = if n == 0 { PolyVector::default() } else { vectors[n - 1].clone() };
        let cur = &vectors[n];
        let mut stacked = Vec::with_capacity(2 * n + 2);
        for axis in Axis::BOTH {
            let part = relations::three_term_residual(
                &cur.mul_poly(&BivariatePoly::var(axis)),
                [
                    (&t[axis].b, cur),
                    (&t[axis].c, &prev),
                    (&RationalMatrix::zeros(n + 1, 0), &PolyVector::default()),
                ],
            )?;
            stacked.extend(part.0);
        }
        let next = joint_left_inverse(n).apply(&PolyVector::new(stacked))?;
        vectors.push(next);
    }
    let family = Family::new(vectors)?;
    Ok(MonicFamily { pde: pde.clone(), family })
}

/// `D P_n + lambda_n P_n`, entrywise.
pub fn pde_residual(fam: &MonicFamily, n: usize) -> PolyVector {
    fam.vector(n).iter().map(|p| fam.pde.residual(p, n as u64)).collect()
}

/// Monic degree-`n` solutions by solving the eigen-equation one degree at a
/// time. On degree-`d` monomials the operator plus `lambda_n` is diagonal
/// with value `lambda_n - lambda_d = -(n-d) varpi_{n+d-1}` modulo lower terms.
pub fn solve_monic_direct(pde: &HypergeometricPde, n: usize) -> Result<PolyVector> {
    let nu = n as u64;
    (0..=n)
        .map(|k| {
            let mut p = BivariatePoly::term((n - k) as u32, k as u32, Rational::one());
            let mut res = pde.residual(&p, nu);
            for d in (0..n).rev() {
                let pivot = pde.eigenvalue(nu) - pde.eigenvalue(d as u64);
                let layer = res.homogeneous_part(d as u32);
                if layer.is_zero() {
                    continue;
                }
                if pivot.is_zero() {
                    return Err(Error::NotAdmissible { k: (n + d - 1) as u64 });
                }
                for (m, c) in layer.terms() {
                    let u = -c / &pivot;
                    let t = BivariatePoly::term(m.x, m.y, u);
                    res += &pde.residual(&t, nu);
                    p += &t;
                }
            }
            debug_assert!(res.is_zero());
            Ok(p)
        })
        .collect()
}

/// Whether entry `k` of every vector has leading part exactly `x^{n-k} y^k`.
pub fn is_monic(fam: &Family) -> bool {
    fam.vectors().iter().enumerate().all(|(n, v)| {
        v.iter().enumerate().all(|(k, p)| {
            let top = p.homogeneous_part(n as u32);
            top == BivariatePoly::term((n - k) as u32, k as u32, Rational::one())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn appell(al: Rational, be: Rational) -> HypergeometricPde {
        HypergeometricPde {
            a: int(-1),
            b1: int(1),
            b2: int(1),
            e: -(&al + &be + int(1)),
            f1: al,
            f2: be,
            ..Default::default()
        }
    }

    #[test]
    fn degree_one_subleading() {
        let (al, be) = (rat(3, 2), int(4));
        let g = subleading_first(&appell(al.clone(), be.clone()), 1).unwrap();
        let s = &al + &be + int(1);
        assert_eq!(g.get(0, 0), &(-&al / &s));
        assert_eq!(g.get(1, 0), &(-&be / &s));
        let g11 = subleading_first(&appell(int(1), int(1)), 1).unwrap();
        assert_eq!(g11, RationalMatrix::from_rows(vec![vec![rat(-1, 3)], vec![rat(-1, 3)]]).unwrap());
    }

    #[test]
    fn degree_two_second_block() {
        let g = subleading_second(&appell(int(1), int(1)), 2, SubdiagonalForm::Corrected).unwrap();
        assert_eq!(g.get(0, 0), &rat(1, 10));
        assert_eq!(g.get(1, 0), &rat(1, 20));
    }

    #[test]
    fn spot_recurrence_values() {
        let t0 = monic_ttrr(&appell(int(1), int(1)), 0).unwrap();
        assert_eq!(t0.x.b.get(0, 0), &rat(1, 3));
        assert_eq!(t0.y.b.get(0, 0), &rat(1, 3));
        let t1 = monic_ttrr(&appell(int(1), int(1)), 1).unwrap();
        assert_eq!(t1.x.c.get(0, 0), &rat(1, 18));
        assert_eq!(t1.x.a, shift_matrix(1, Axis::X));
    }

    #[test]
    fn degree_one_vector() {
        let fam = build_monic(&appell(int(1), int(1)), 2).unwrap();
        let t = BivariatePoly::constant(rat(1, 3));
        assert_eq!(
            fam.vector(1),
            &PolyVector::new(vec![&BivariatePoly::x() - &t, &BivariatePoly::y() - &t])
        );
        assert_eq!(fam.vector(0), &PolyVector::new(vec![BivariatePoly::one()]));
        assert!(pde_residual(&fam, 0).is_zero());
    }

    #[test]
    fn routes_agree_on_appell() {
        let p = appell(int(2), int(3));
        let fam = build_monic(&p, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(fam.vector(n), &solve_monic_direct(&p, n).unwrap(), "n = {n}");
            assert!(pde_residual(&fam, n).is_zero());
        }
        assert!(is_monic(&fam.family));
    }

    #[test]
    fn not_admissible_direct() {
        let p = HypergeometricPde { a: int(1), e: int(-2), f1: int(1), ..Default::default() };
        assert!(matches!(solve_monic_direct(&p, 3), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn not_self_adjoint_rejected() {
        let q = HypergeometricPde {
            b1: int(1),
            c2: int(1),
            e: int(-1),
            f1: int(1),
            d3: int(1),
            ..Default::default()
        };
        assert_eq!(build_monic(&q, 2).unwrap_err(), Error::NotSelfAdjoint);
    }
}
