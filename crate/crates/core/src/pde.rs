//! The second-order hypergeometric-type equation in two variables.
//!
//! The operator is
//!
//! ```text
//! D u = A u_xx + 2 B u_xy + C u_yy + (e x + f1) u_x + (e y + f2) u_y
//! A = a x^2 + b1 x + c1,  B = a x y + b3 x + c3 y + d3,  C = a y^2 + b2 y + c2
//! ```
//!
//! and the eigenvalue attached to degree `n` is `lambda_n = -n((n-1)a + e)`.
//! The stored `b3, c3, d3` are the coefficients of `B`; the factor 2 on the
//! mixed derivative is applied by the operator, never folded into the fields.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, serde_str, Rational};
use crate::algebra::{Axis, BivariatePoly};
use crate::error::{Error, Result};

fn zero() -> Rational {
    Rational::zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergeometricPde {
    #[serde(with = "serde_str", default = "zero")]
    pub a: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub b1: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub c1: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub b2: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub c2: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub b3: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub c3: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub d3: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub e: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub f1: Rational,
    #[serde(with = "serde_str", default = "zero")]
    pub f2: Rational,
}

impl Default for HypergeometricPde {
    fn default() -> Self {
        HypergeometricPde {
            a: zero(),
            b1: zero(),
            c1: zero(),
            b2: zero(),
            c2: zero(),
            b3: zero(),
            c3: zero(),
            d3: zero(),
            e: zero(),
            f1: zero(),
            f2: zero(),
        }
    }
}

fn c(r: &Rational) -> BivariatePoly {
    BivariatePoly::constant(r.clone())
}

fn x() -> BivariatePoly {
    BivariatePoly::x()
}

fn y() -> BivariatePoly {
    BivariatePoly::y()
}

impl HypergeometricPde {
    /// `varpi_k = a k + e`.
    pub fn varpi(&self, k: u64) -> Rational {
        &self.a * Rational::from_integer(k.into()) + &self.e
    }

    /// Lists `varpi_0 .. varpi_{2 n_max}` and fails on the first vanishing one.
    ///
    /// When `a != 0` and `-e/a` is a nonnegative integer the equation is not
    /// admissible at all, and that index is reported even if it lies past the
    /// listed prefix.
    pub fn check_admissible(&self, n_max: u64) -> Result<Vec<Rational>> {
        let ws: Vec<Rational> = (0..=2 * n_max).map(|k| self.varpi(k)).collect();
        if let Some(k) = ws.iter().position(Zero::is_zero) {
            return Err(Error::NotAdmissible { k: k as u64 });
        }
        if let Some(k) = self.global_obstruction() {
            return Err(Error::NotAdmissible { k });
        }
        Ok(ws)
    }

    /// The unique `k >= 0` with `varpi_k = 0`, if one exists.
    pub fn global_obstruction(&self) -> Option<u64> {
        if self.a.is_zero() {
            return self.e.is_zero().then_some(0);
        }
        let k = -&self.e / &self.a;
        if k.is_integer() && !k.is_negative() {
            k.to_integer().try_into().ok()
        } else {
            None
        }
    }

    pub fn eigenvalue(&self, n: u64) -> Rational {
        let n = Rational::from_integer(n.into());
        -(&n * ((&n - int(1)) * &self.a + &self.e))
    }

    /// `A = a x^2 + b1 x + c1`.
    pub fn coef_a(&self) -> BivariatePoly {
        &(&x().pow(2).scale(&self.a) + &x().scale(&self.b1)) + &c(&self.c1)
    }

    /// `B = a x y + b3 x + c3 y + d3`.
    pub fn coef_b(&self) -> BivariatePoly {
        let xy = &x() * &y();
        let lin = &x().scale(&self.b3) + &y().scale(&self.c3);
        &(&xy.scale(&self.a) + &lin) + &c(&self.d3)
    }

    /// `C = a y^2 + b2 y + c2`.
    pub fn coef_c(&self) -> BivariatePoly {
        &(&y().pow(2).scale(&self.a) + &y().scale(&self.b2)) + &c(&self.c2)
    }

    /// `alpha = A C - B^2`.
    pub fn discriminant(&self) -> BivariatePoly {
        &(&self.coef_a() * &self.coef_c()) - &self.coef_b().pow(2)
    }

    /// `omega = 2 A B_x - B A_x`.
    pub fn omega(&self) -> BivariatePoly {
        let (a, b) = (self.coef_a(), self.coef_b());
        &(&a * &b.diff(Axis::X)).scale(&int(2)) - &(&b * &a.diff(Axis::X))
    }

    /// `theta = 2 C B_y - B C_y`.
    pub fn theta(&self) -> BivariatePoly {
        let (cc, b) = (self.coef_c(), self.coef_b());
        &(&cc * &b.diff(Axis::Y)).scale(&int(2)) - &(&b * &cc.diff(Axis::Y))
    }

    /// Numerator of `rho_x / rho` over the discriminant.
    pub fn beta(&self) -> BivariatePoly {
        let three_a = &self.a * int(3);
        // (-b1 - c3 + f1 + (e - 3a) x) C - (-b2 - b3 + f2 + (e - 3a) y) B
        let px = &c(&(&self.f1 - &self.b1 - &self.c3)) + &x().scale(&(&self.e - &three_a));
        let py = &c(&(&self.f2 - &self.b2 - &self.b3)) + &y().scale(&(&self.e - &three_a));
        &(&px * &self.coef_c()) - &(&py * &self.coef_b())
    }

    /// Numerator of `rho_y / rho` over the discriminant.
    pub fn gamma(&self) -> BivariatePoly {
        let three_a = &self.a * int(3);
        // -A (b2 + b3 - f2 + (3a - e) y) + (b1 + c3 - f1 + (3a - e) x) B
        let py = &c(&(&self.b2 + &self.b3 - &self.f2)) + &y().scale(&(&three_a - &self.e));
        let px = &c(&(&self.b1 + &self.c3 - &self.f1)) + &x().scale(&(&three_a - &self.e));
        &(&px * &self.coef_b()) - &(&self.coef_a() * &py)
    }

    /// `(beta^{(r,s)}, gamma^{(r,s)})`, the Pearson numerators of the weight
    /// attached to the `(r, s)` derivatives.
    pub fn pearson_numerators(&self, r: u32, s: u32) -> (BivariatePoly, BivariatePoly) {
        let alpha = self.discriminant();
        let (r, s) = (int(r.into()), int(s.into()));
        let beta = &(&self.beta() + &alpha.diff(Axis::X).scale(&r)) + &self.theta().scale(&s);
        let gamma = &(&self.gamma() + &self.omega().scale(&r)) + &alpha.diff(Axis::Y).scale(&s);
        (beta, gamma)
    }

    /// Integrability of the Pearson system for the `(r, s)` weight, tested as
    /// `gamma_x alpha - gamma alpha_x = beta_y alpha - beta alpha_y`.
    pub fn is_potentially_self_adjoint(&self, r: u32, s: u32) -> Result<bool> {
        let alpha = self.nondegenerate_discriminant()?;
        let (beta, gamma) = self.pearson_numerators(r, s);
        Ok(quotient_derivative_numerator(&gamma, &alpha, Axis::X)
            == quotient_derivative_numerator(&beta, &alpha, Axis::Y))
    }

    /// `alpha^2` times
    /// `r (omega/alpha)_x + (s - r) (alpha_y/alpha)_x - s (theta/alpha)_y`.
    ///
    /// The `(r, s)` integrability condition with the `(0, 0)` part removed;
    /// given the `(0, 0)` condition it vanishes iff the `(r, s)` one holds.
    pub fn shifted_adjointness_residual(&self, r: u32, s: u32) -> Result<BivariatePoly> {
        let alpha = self.nondegenerate_discriminant()?;
        let (r, s) = (int(r.into()), int(s.into()));
        let t1 = quotient_derivative_numerator(&self.omega(), &alpha, Axis::X).scale(&r);
        let t2 = quotient_derivative_numerator(&alpha.diff(Axis::Y), &alpha, Axis::X).scale(&(&s - &r));
        let t3 = quotient_derivative_numerator(&self.theta(), &alpha, Axis::Y).scale(&s);
        Ok(&(&t1 + &t2) - &t3)
    }

    pub fn nondegenerate_discriminant(&self) -> Result<BivariatePoly> {
        let alpha = self.discriminant();
        if alpha.is_zero() {
            Err(Error::DegenerateDiscriminant)
        } else {
            Ok(alpha)
        }
    }

    /// The equation satisfied by the `(r, s)` partial derivatives of degree-`n`
    /// solutions.
    pub fn derived(&self, r: u32, s: u32, n: u64) -> DerivedEquation {
        let rs = int((r + s).into());
        let (ri, si) = (int(r.into()), int(s.into()));
        let lead = &self.e + &(&self.a * int(2)) * &rs;
        let tau_x = &x().scale(&lead)
            + &c(&(&self.f1 + &ri * &self.b1 + &si * int(2) * &self.c3));
        let tau_y = &y().scale(&lead)
            + &c(&(&self.f2 + &ri * int(2) * &self.b3 + &si * &self.b2));
        let mu = self.eigenvalue(n) + &rs * &self.e + &rs * (&rs - int(1)) * &self.a;
        DerivedEquation {
            pde: self.clone(),
            r,
            s,
            n,
            tau_x,
            tau_y,
            mu,
        }
    }

    /// `D p + lambda_n p`.
    pub fn residual(&self, p: &BivariatePoly, n: u64) -> BivariatePoly {
        self.derived(0, 0, n).apply(p)
    }
}

/// `f_axis * g - f * g_axis`, i.e. `g^2 (f/g)_axis`.
fn quotient_derivative_numerator(f: &BivariatePoly, g: &BivariatePoly, axis: Axis) -> BivariatePoly {
    &(&f.diff(axis) * g) - &(f * &g.diff(axis))
}

/// The operator `D^{(r,s)} + mu` for fixed `(r, s, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedEquation {
    pub pde: HypergeometricPde,
    pub r: u32,
    pub s: u32,
    pub n: u64,
    pub tau_x: BivariatePoly,
    pub tau_y: BivariatePoly,
    pub mu: Rational,
}

impl DerivedEquation {
    pub fn apply(&self, p: &BivariatePoly) -> BivariatePoly {
        if p.is_zero() {
            return BivariatePoly::zero();
        }
        let px = p.diff(Axis::X);
        let py = p.diff(Axis::Y);
        let mut out = &self.pde.coef_a() * &px.diff(Axis::X);
        out += &(&self.pde.coef_b() * &px.diff(Axis::Y)).scale(&int(2));
        out += &(&self.pde.coef_c() * &py.diff(Axis::Y));
        out += &(&self.tau_x * &px);
        out += &(&self.tau_y * &py);
        out += &p.scale(&self.mu);
        out
    }
}
