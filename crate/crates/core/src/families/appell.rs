use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{factorial, int, parse_rational, pochhammer, serde_str, sign_power, Rational};
use crate::algebra::{BivariatePoly, PolyVector, RationalMatrix};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::pde::HypergeometricPde;
use crate::weight::{phi_for_case, PhiCase, PhiCaseId, WeightSpec};

/// Parameters of the weight `x^(alpha-1) y^(beta-1)` on `x, y > 0, x + y < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppellParams {
    #[serde(with = "serde_str")]
    pub alpha: Rational,
    #[serde(with = "serde_str")]
    pub beta: Rational,
}

impl AppellParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "alpha and beta must be positive, got {alpha} and {beta}"
            )));
        }
        Ok(AppellParams { alpha, beta })
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(int(alpha), int(beta))
    }

    pub fn parse(alpha: &str, beta: &str) -> Result<Self> {
        Self::new(parse_rational(alpha)?, parse_rational(beta)?)
    }
}

impl FromStr for AppellParams {
    type Err = Error;

    /// `"alpha,beta"`, e.g. `"2,3"` or `"1/2,5/3"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected 'alpha,beta', got {s:?}")))?;
        Self::parse(a.trim(), b.trim())
    }
}

/// `x(1-x) u_xx - 2xy u_xy + y(1-y) u_yy + (alpha - (alpha+beta+1) x) u_x
/// + (beta - (alpha+beta+1) y) u_y`.
pub fn appell_pde(p: &AppellParams) -> HypergeometricPde {
    HypergeometricPde {
        a: int(-1),
        b1: int(1),
        b2: int(1),
        e: -(&p.alpha + &p.beta + int(1)),
        f1: p.alpha.clone(),
        f2: p.beta.clone(),
        ..Default::default()
    }
}

fn triangle_edge() -> BivariatePoly {
    &(&BivariatePoly::one() - &BivariatePoly::x()) - &BivariatePoly::y()
}

/// The weight, with the edge factor `1 - x - y` carried at exponent 0 so
/// that it is part of the factor basis.
pub fn appell_weight(p: &AppellParams) -> WeightSpec {
    WeightSpec::monomial(&p.alpha - int(1), &p.beta - int(1)).with_factor(triangle_edge(), Rational::zero())
}

/// `(x(1-x-y), y(1-x-y))`.
pub fn appell_case(p: &AppellParams) -> PhiCase {
    phi_for_case(&appell_pde(p), PhiCaseId::X).expect("the Appell equation is in case (x)")
}

/// `L[x^i y^j] = (alpha)_i (beta)_j / (alpha+beta+1)_{i+j}`, normalized so
/// that `L[1] = 1`.
pub fn moment(p: &AppellParams, i: u32, j: u32) -> Rational {
    pochhammer(&p.alpha, i) * pochhammer(&p.beta, j) / pochhammer(&(&p.alpha + &p.beta + int(1)), i + j)
}

/// The moment functional extended linearly to polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFunctional {
    pub params: AppellParams,
}

impl MomentFunctional {
    pub fn new(params: AppellParams) -> Self {
        MomentFunctional { params }
    }

    pub fn apply(&self, q: &BivariatePoly) -> Rational {
        q.terms().map(|(m, c)| c * moment(&self.params, m.x, m.y)).sum()
    }
}

/// `L[x_m P_n^T]`, an `(m+1) x (n+1)` matrix with rows indexed by the
/// degree-`m` monomials.
pub fn orthogonality_blocks(p: &AppellParams, fam: &Family, n: usize, m: usize) -> Result<RationalMatrix> {
    let l = MomentFunctional::new(p.clone());
    let pn = fam.vector(n as i64)?;
    let mut out = RationalMatrix::zeros(m + 1, n + 1);
    for r in 0..=m {
        let mono = BivariatePoly::term((m - r) as u32, r as u32, Rational::one());
        for (c, q) in pn.iter().enumerate() {
            out.set(r, c, l.apply(&(&mono * q)));
        }
    }
    Ok(out)
}

/// Monic `A_{n,m}` from its terminating double hypergeometric sum.
pub fn monic_appell_series(p: &AppellParams, n: u32, m: u32) -> BivariatePoly {
    let big = n + m;
    let s = &p.alpha + &p.beta + int(big.into());
    let pre = sign_power(big) * pochhammer(&p.alpha, n) * pochhammer(&p.beta, m) / pochhammer(&s, big);
    let (mn, mm) = (-int(n.into()), -int(m.into()));
    let mut out = BivariatePoly::zero();
    for j in 0..=n {
        for k in 0..=m {
            let c = pochhammer(&s, j + k) * pochhammer(&mn, j) * pochhammer(&mm, k)
                / (pochhammer(&p.alpha, j) * pochhammer(&p.beta, k) * factorial(j) * factorial(k));
            out.add_term(crate::algebra::Monomial::new(j, k), &pre * c);
        }
    }
    out
}

/// `(A_{N,0}, A_{N-1,1}, ..., A_{0,N})`.
pub fn monic_appell_vector(p: &AppellParams, degree: u32) -> PolyVector {
    (0..=degree).map(|k| monic_appell_series(p, degree - k, k)).collect()
}
