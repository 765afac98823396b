//! Rodrigues-type formulas evaluated exactly for weights of the form
//! `x^u y^v prod Q_i^{w_i}`.
//!
//! Expressions `prod F_i^{e_i} * poly` over a fixed factor basis are closed
//! under differentiation, so the high-order derivative is computed without
//! any rational-function arithmetic. Normalizing constants are fixed to 1.

use num::{One, Signed, Zero};

use crate::algebra::rational::{is_nonneg_integer, Rational};
use crate::algebra::{Axis, BivariatePoly, PolyVector, RationalMatrix};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::weight::{PhiCase, WeightSpec};

/// The factor polynomials `[x, y, Q_1, ..., Q_k]` shared by all expressions
/// of one computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBasis {
    factors: Vec<BivariatePoly>,
}

impl Default for FactorBasis {
    fn default() -> Self {
        FactorBasis { factors: vec![BivariatePoly::x(), BivariatePoly::y()] }
    }
}

impl FactorBasis {
    pub fn factors(&self) -> &[BivariatePoly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Splits `q` into basis factors with multiplicities, a constant and a
    /// remainder that no basis factor divides. A non-constant remainder is
    /// appended to the basis and reported with multiplicity 1.
    fn decompose(&mut self, q: &BivariatePoly) -> (Vec<(usize, u32)>, Rational) {
        let mut rest = q.clone();
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if f.is_constant() {
                continue;
            }
            let mut k = 0;
            while let Ok(next) = rest.exact_div(f) {
                rest = next;
                k += 1;
            }
            if k > 0 {
                out.push((i, k));
            }
        }
        if rest.is_constant() {
            return (out, rest.coeff(0, 0));
        }
        // Keep the constant outside so that the new factor is normalized.
        let c = rest.trailing_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
        self.factors.push(rest.scale(&c.recip()));
        out.push((self.factors.len() - 1, 1));
        (out, c)
    }
}

/// `prod F_i^{exponents[i]} * poly` over a [`FactorBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedExpr {
    pub exponents: Vec<Rational>,
    pub poly: BivariatePoly,
}

impl WeightedExpr {
    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut e = self.exponents.clone();
        e.resize(len, Rational::zero());
        e
    }
}

/// Exact partial derivative. Only factors with a nonzero exponent that
/// depend on `axis` are decremented; the others are unaffected.
pub fn weighted_diff(basis: &FactorBasis, expr: &WeightedExpr, axis: Axis) -> WeightedExpr {
    let exps = expr.padded(basis.len());
    let active: Vec<usize> = (0..basis.len())
        .filter(|&i| !exps[i].is_zero() && basis.factors[i].degree_in(axis).unwrap_or(0) > 0)
        .collect();
    let prod_except = |skip: Option<usize>| {
        active
            .iter()
            .filter(|&&i| Some(i) != skip)
            .fold(BivariatePoly::one(), |acc, &i| &acc * &basis.factors[i])
    };
    let mut poly = &prod_except(None) * &expr.poly.diff(axis);
    for &i in &active {
        let term = &(&basis.factors[i].diff(axis) * &prod_except(Some(i))) * &expr.poly;
        poly += &term.scale(&exps[i]);
    }
    let mut exponents = exps;
    for &i in &active {
        exponents[i] -= Rational::one();
    }
    WeightedExpr { exponents, poly }
}

fn weight_exponents(basis: &mut FactorBasis, w: &WeightSpec) -> Vec<Rational> {
    let mut e = vec![w.u.clone(), w.v.clone()];
    for (q, wq) in &w.factors {
        // Constants of the weight cancel against the division by it.
        let (parts, _) = basis.decompose(q);
        for (i, k) in parts {
            if e.len() <= i {
                e.resize(i + 1, Rational::zero());
            }
            e[i] += wq * Rational::from_integer(k.into());
        }
    }
    e
}

/// `rho * phi10^n * phi01^m` together with the exponents of `rho` alone.
fn seed(w: &WeightSpec, case: &PhiCase, n: u32, m: u32) -> (FactorBasis, WeightedExpr, Vec<Rational>) {
    let mut basis = FactorBasis::default();
    let rho = weight_exponents(&mut basis, w);
    let mut exps = rho.clone();
    let mut poly = BivariatePoly::one();
    for (phi, k) in [(&case.phi10, n), (&case.phi01, m)] {
        if k == 0 {
            continue;
        }
        let (parts, c) = basis.decompose(phi);
        for (i, mult) in parts {
            if exps.len() <= i {
                exps.resize(i + 1, Rational::zero());
            }
            exps[i] += Rational::from_integer((mult * k).into());
        }
        poly = poly.scale(&pow_rational(&c, k));
    }
    (basis, WeightedExpr { exponents: exps, poly }, rho)
}

fn pow_rational(c: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * c)
}

/// Divides by the weight with exponents `rho` and expands what remains into
/// a polynomial.
fn divide_by_weight(basis: &FactorBasis, expr: &WeightedExpr, rho: &[Rational]) -> Result<BivariatePoly> {
    let exps = expr.padded(basis.len());
    let mut poly = expr.poly.clone();
    for (i, f) in basis.factors.iter().enumerate() {
        let d = &exps[i] - rho.get(i).cloned().unwrap_or_else(Rational::zero);
        if d.is_zero() {
            continue;
        }
        if !d.is_integer() {
            return Err(Error::NotReducible(format!("factor {f} keeps exponent {d}")));
        }
        let k: u32 = d
            .abs()
            .to_integer()
            .try_into()
            .map_err(|_| Error::NotReducible(format!("exponent {d} too large")))?;
        if is_nonneg_integer(&d) {
            poly = &poly * &f.pow(k);
        } else {
            poly = poly
                .exact_div(&f.pow(k))
                .map_err(|_| Error::NotReducible(format!("{f}^{k} does not divide the derivative")))?;
        }
    }
    Ok(poly)
}

fn differentiate(basis: &FactorBasis, mut expr: WeightedExpr, n: u32, m: u32) -> WeightedExpr {
    for _ in 0..n {
        expr = weighted_diff(basis, &expr, Axis::X);
    }
    for _ in 0..m {
        expr = weighted_diff(basis, &expr, Axis::Y);
    }
    expr
}

/// `(1/rho) d^{n+m}/dx^n dy^m [rho phi10^n phi01^m]`.
pub fn rodrigues_eval(w: &WeightSpec, case: &PhiCase, n: u32, m: u32) -> Result<BivariatePoly> {
    let (basis, expr, rho) = seed(w, case, n, m);
    let out = divide_by_weight(&basis, &differentiate(&basis, expr, n, m), &rho)?;
    let expected = n + m;
    if out.degree() != Some(expected) {
        return Err(Error::DegreeMismatch { expected, found: out.degree() });
    }
    Ok(out)
}

/// `(1/rho^{(r,s)}) d^{n+m-r-s}/dx^{n-r} dy^{m-s} [rho phi10^n phi01^m]`
/// with `rho^{(r,s)} = phi10^r phi01^s rho`; proportional to
/// `d^{r+s}/dx^r dy^s` of [`rodrigues_eval`].
pub fn rodrigues_derivative_eval(
    w: &WeightSpec,
    case: &PhiCase,
    n: u32,
    m: u32,
    r: u32,
    s: u32,
) -> Result<BivariatePoly> {
    if r > n || s > m {
        return Err(Error::InvalidParameter(format!("(r, s) = ({r}, {s}) exceeds (n, m) = ({n}, {m})")));
    }
    rodrigues_eval(&w.shifted(case, r, s), case, n - r, m - s)
}

/// `(R_{N,0}, R_{N-1,1}, ..., R_{0,N})`.
pub fn rodrigues_vector(w: &WeightSpec, case: &PhiCase, degree: u32, exec: Execution) -> Result<PolyVector> {
    let ks: Vec<u32> = (0..=degree).collect();
    exec.map(&ks, |&k| rodrigues_eval(w, case, degree - k, k)).into_iter().collect()
}

/// The matrix `M` with `target = M basis`, for vectors of degree `n` whose
/// leading block is invertible. Fails with `NotInSpan` when the coefficient
/// match leaves a nonzero remainder.
pub fn connection_solve(target: &PolyVector, basis: &PolyVector) -> Result<RationalMatrix> {
    let n = basis.len().checked_sub(1).ok_or_else(|| Error::Dimension("empty basis".into()))?;
    let lead = |v: &PolyVector| -> Result<RationalMatrix> {
        Ok(crate::algebra::expansion_matrices(v, n as u32)?.pop().expect("n + 1 blocks"))
    };
    let inv = lead(basis)?.inverse().ok_or(Error::SingularLeading { degree: n })?;
    let m = &lead(target)? * &inv;
    let rest = target.try_sub(&m.apply(basis)?)?;
    if let Some(k) = rest.first_nonzero() {
        return Err(Error::NotInSpan(format!("entry {k} leaves {}", rest[k])));
    }
    Ok(m)
}
