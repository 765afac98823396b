//! Closed-form weight factors: the ten coefficient cases, the factor
//! polynomials `phi^{(1,0)}, phi^{(0,1)}`, and Pearson checks of weights.

use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, int, parse_rational, Rational};
use crate::algebra::{Axis, BivariatePoly};
use crate::error::{Error, Result};
use crate::pde::HypergeometricPde;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhiCaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl PhiCaseId {
    pub const ALL: [PhiCaseId; 10] = [
        PhiCaseId::I,
        PhiCaseId::II,
        PhiCaseId::III,
        PhiCaseId::IV,
        PhiCaseId::V,
        PhiCaseId::VI,
        PhiCaseId::VII,
        PhiCaseId::VIII,
        PhiCaseId::IX,
        PhiCaseId::X,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            PhiCaseId::I => "i",
            PhiCaseId::II => "ii",
            PhiCaseId::III => "iii",
            PhiCaseId::IV => "iv",
            PhiCaseId::V => "v",
            PhiCaseId::VI => "vi",
            PhiCaseId::VII => "vii",
            PhiCaseId::VIII => "viii",
            PhiCaseId::IX => "ix",
            PhiCaseId::X => "x",
        }
    }

    /// The coefficient conditions defining the case, tested exactly.
    pub fn matches(self, p: &HypergeometricPde) -> bool {
        let z = |r: &Rational| r.is_zero();
        let two = int(2);
        match self {
            PhiCaseId::I => p.b1 == &two * &p.c3 && p.b2 == &two * &p.b3,
            PhiCaseId::II => {
                !z(&p.c3)
                    && !z(&p.d3)
                    && !z(&p.b3)
                    && p.a == &p.b3 * &p.c3 / &p.d3
                    && p.c1 == (&p.b1 - &p.c3) * &p.d3 / &p.b3
                    && p.c2 == (&p.b2 - &p.b3) * &p.d3 / &p.c3
            }
            PhiCaseId::III => z(&p.a) && z(&p.b1) && z(&p.c1) && z(&p.c3),
            PhiCaseId::IV => z(&p.a) && z(&p.b2) && z(&p.b3) && z(&p.c2),
            PhiCaseId::V => z(&p.a) && z(&p.b3) && z(&p.c3) && z(&p.d3),
            PhiCaseId::VI => {
                !z(&p.a) && z(&p.b3) && z(&p.c2) && z(&p.d3) && p.c1 == (&p.b1 - &p.c3) * &p.c3 / &p.a
            }
            PhiCaseId::VII => {
                !z(&p.c3) && z(&p.a) && z(&p.b3) && p.b1 == p.c3 && p.c2 == &p.b2 * &p.d3 / &p.c3
            }
            PhiCaseId::VIII => {
                !z(&p.b3) && z(&p.a) && z(&p.c3) && p.b2 == p.b3 && p.c1 == &p.b1 * &p.d3 / &p.b3
            }
            PhiCaseId::IX => {
                !z(&p.a) && z(&p.c1) && z(&p.c3) && z(&p.d3) && p.c2 == (&p.b2 - &p.b3) * &p.b3 / &p.a
            }
            PhiCaseId::X => z(&p.c1) && z(&p.c2) && z(&p.d3) && z(&p.b3) && z(&p.c3),
        }
    }

    /// The divisors `(q10, q01)` with `phi10 = alpha / q10`, `phi01 = alpha / q01`;
    /// `None` means the factor is the constant 1 rather than a quotient.
    fn divisors(self, p: &HypergeometricPde) -> (Option<BivariatePoly>, Option<BivariatePoly>) {
        let x = BivariatePoly::x;
        let y = BivariatePoly::y;
        let k = |r: &Rational| BivariatePoly::constant(r.clone());
        let one = || Some(BivariatePoly::one());
        match self {
            PhiCaseId::I => (one(), one()),
            PhiCaseId::II => (
                Some(&k(&p.d3) + &y().scale(&p.c3)),
                Some(&k(&p.d3) + &x().scale(&p.b3)),
            ),
            PhiCaseId::III => (one(), None),
            PhiCaseId::IV => (None, one()),
            PhiCaseId::V => (
                Some(&k(&p.c2) + &y().scale(&p.b2)),
                Some(&k(&p.c1) + &x().scale(&p.b1)),
            ),
            PhiCaseId::VI => (Some(y()), Some(&k(&p.c3) + &x().scale(&p.a))),
            PhiCaseId::VII => (Some(&k(&p.d3) + &y().scale(&p.c3)), one()),
            PhiCaseId::VIII => (one(), Some(&k(&p.d3) + &x().scale(&p.b3))),
            PhiCaseId::IX => (Some(&k(&p.b3) + &y().scale(&p.a)), Some(x())),
            PhiCaseId::X => (Some(y()), Some(x())),
        }
    }

    /// The discriminant exactly as it is tabulated for this case.
    ///
    /// For cases iii and iv this is the negative of the true discriminant,
    /// and for case viii the table's `(d3 + b3) x` term does not reproduce it;
    /// see `ERRATA.md`. Factors are always built from the true discriminant.
    pub fn tabulated_discriminant(self, p: &HypergeometricPde) -> BivariatePoly {
        let x = BivariatePoly::x();
        let y = BivariatePoly::y();
        let k = |r: &Rational| BivariatePoly::constant(r.clone());
        let xy = &x * &y;
        match self {
            PhiCaseId::I => {
                let b = &(&(&k(&p.d3) + &x.scale(&p.b3)) + &y.scale(&p.c3)) + &xy.scale(&p.a);
                let aa = &k(&p.c1) + &(&x * &(&k(&(&p.c3 * int(2))) + &x.scale(&p.a)));
                let cc = &k(&p.c2) + &(&y * &(&k(&(&p.b3 * int(2))) + &y.scale(&p.a)));
                &(&aa * &cc) - &b.pow(2)
            }
            PhiCaseId::II => {
                let dbx = &k(&p.d3) + &x.scale(&p.b3);
                let dcy = &k(&p.d3) + &y.scale(&p.c3);
                let inner1 = &k(&(&p.b2 * &p.d3 - &p.b3 * &p.d3)) + &y.scale(&(&p.b3 * &p.c3));
                let inner2 = &k(&(&p.b2 * &p.d3)) - &x.scale(&(&p.b2 * &p.b3));
                let inner3 = (&x.scale(&p.b3) + &y.scale(&p.c3)).scale(&(&p.b3 * int(2)));
                let bracket = &inner1.scale(&-p.b1.clone()) + &(&inner2 + &inner3).scale(&p.c3);
                let scale = -(&p.b3 * &p.c3 * &p.d3).recip();
                (&(&dbx * &dcy) * &bracket).scale(&scale)
            }
            PhiCaseId::III => (&k(&p.d3) + &x.scale(&p.b3)).pow(2),
            PhiCaseId::IV => (&k(&p.d3) + &y.scale(&p.c3)).pow(2),
            PhiCaseId::V => &(&k(&p.c1) + &x.scale(&p.b1)) * &(&k(&p.c2) + &y.scale(&p.b2)),
            PhiCaseId::VI => {
                let f = &k(&p.c3) + &x.scale(&p.a);
                let g = &(&k(&(&p.b1 - &p.c3)) + &x.scale(&p.a)).scale(&p.b2)
                    + &y.scale(&(&p.a * (&p.b1 - &p.c3 * int(2))));
                (&(&f * &y) * &g).scale(&p.a.recip())
            }
            PhiCaseId::VII => {
                let dcy = &k(&p.d3) + &y.scale(&p.c3);
                let g = &(&k(&p.c1) + &x.scale(&p.c3)).scale(&p.b2) - &dcy.scale(&p.c3);
                (&dcy * &g).scale(&p.c3.recip())
            }
            PhiCaseId::VIII => {
                let dbx = &k(&p.d3) + &x.scale(&p.b3);
                // Transcribed as printed: -b3 (d3 + b3) x + b1 (c2 + b3 y).
                let g = &x.scale(&-(&p.b3 * (&p.d3 + &p.b3))) + &(&k(&p.c2) + &y.scale(&p.b3)).scale(&p.b1);
                (&dbx * &g).scale(&p.b3.recip())
            }
            PhiCaseId::IX => {
                let f = &k(&p.b3) + &y.scale(&p.a);
                let g = &x.scale(&(&p.a * (&p.b2 - &p.b3 * int(2))))
                    + &(&k(&(&p.b2 - &p.b3)) + &y.scale(&p.a)).scale(&p.b1);
                (&(&x * &f) * &g).scale(&p.a.recip())
            }
            PhiCaseId::X => {
                let g = &x.scale(&(&p.a * &p.b2)) + &(&k(&p.b2) + &y.scale(&p.a)).scale(&p.b1);
                &xy * &g
            }
        }
    }
}

impl fmt::Display for PhiCaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.roman())
    }
}

/// A matched case with its two factor polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCase {
    pub id: PhiCaseId,
    pub phi10: BivariatePoly,
    pub phi01: BivariatePoly,
}

impl PhiCase {
    pub fn phi(&self, axis: Axis) -> &BivariatePoly {
        match axis {
            Axis::X => &self.phi10,
            Axis::Y => &self.phi01,
        }
    }

    /// `phi10^r phi01^s`.
    pub fn phi_rs(&self, r: u32, s: u32) -> BivariatePoly {
        &self.phi10.pow(r) * &self.phi01.pow(s)
    }

    /// Coefficients `[x^2, xy, y^2, x, y, 1]` of the factor for `axis`.
    pub fn quadratic_coefficients(&self, axis: Axis) -> Result<[Rational; 6]> {
        let phi = self.phi(axis);
        match phi.degree() {
            Some(d) if d > 2 => Err(Error::PhiNotQuadratic { axis: axis.index(), degree: d }),
            _ => Ok([
                phi.coeff(2, 0),
                phi.coeff(1, 1),
                phi.coeff(0, 2),
                phi.coeff(1, 0),
                phi.coeff(0, 1),
                phi.coeff(0, 0),
            ]),
        }
    }

    /// Whether both factors solve their defining first-order equations
    /// `phi_x alpha = phi (r alpha_x + s theta)`,
    /// `phi_y alpha = phi (r omega + s alpha_y)` at `(1,0)` and `(0,1)`.
    pub fn is_consistent_with(&self, pde: &HypergeometricPde) -> bool {
        let alpha = pde.discriminant();
        let (omega, theta) = (pde.omega(), pde.theta());
        let check = |phi: &BivariatePoly, sx: &BivariatePoly, sy: &BivariatePoly| {
            &phi.diff(Axis::X) * &alpha == phi * sx && &phi.diff(Axis::Y) * &alpha == phi * sy
        };
        check(&self.phi10, &alpha.diff(Axis::X), &omega) && check(&self.phi01, &theta, &alpha.diff(Axis::Y))
    }
}

fn quotient(alpha: &BivariatePoly, q: Option<BivariatePoly>, id: PhiCaseId) -> Result<BivariatePoly> {
    match q {
        None => Ok(BivariatePoly::one()),
        Some(q) => alpha
            .exact_div(&q)
            .map(|p| p.normalize_trailing())
            .map_err(|_| Error::NonPolynomialPhi { case: id.roman().to_string() }),
    }
}

/// Builds the factors of one case, whether or not its conditions hold.
pub fn phi_for_case(pde: &HypergeometricPde, id: PhiCaseId) -> Result<PhiCase> {
    let alpha = pde.nondegenerate_discriminant()?;
    let (q10, q01) = id.divisors(pde);
    Ok(PhiCase {
        id,
        phi10: quotient(&alpha, q10, id)?,
        phi01: quotient(&alpha, q01, id)?,
    })
}

/// Every case whose conditions the equation satisfies, in case order.
///
/// Factors are normalized so the coefficient of their lowest monomial
/// (lowest degree, then highest power of `x`) is 1.
pub fn classify_phi(pde: &HypergeometricPde) -> Result<Vec<PhiCase>> {
    let ids: Vec<PhiCaseId> = PhiCaseId::ALL.into_iter().filter(|id| id.matches(pde)).collect();
    if ids.is_empty() {
        return Err(Error::NoCaseMatches);
    }
    ids.into_iter().map(|id| phi_for_case(pde, id)).collect()
}

/// A weight `x^u y^v prod Q_i^{w_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightSpecWire", into = "WeightSpecWire")]
pub struct WeightSpec {
    pub u: Rational,
    pub v: Rational,
    pub factors: Vec<(BivariatePoly, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct WeightSpecWire {
    u: String,
    v: String,
    #[serde(default)]
    factors: Vec<(BivariatePoly, String)>,
}

impl TryFrom<WeightSpecWire> for WeightSpec {
    type Error = Error;
    fn try_from(w: WeightSpecWire) -> Result<Self> {
        let factors = w
            .factors
            .into_iter()
            .map(|(q, e)| {
                if q.is_zero() {
                    Err(Error::InvalidParameter("weight factor is the zero polynomial".into()))
                } else {
                    Ok((q, parse_rational(&e)?))
                }
            })
            .collect::<Result<_>>()?;
        Ok(WeightSpec { u: parse_rational(&w.u)?, v: parse_rational(&w.v)?, factors })
    }
}

impl From<WeightSpec> for WeightSpecWire {
    fn from(w: WeightSpec) -> Self {
        WeightSpecWire {
            u: format_rational(&w.u),
            v: format_rational(&w.v),
            factors: w.factors.iter().map(|(q, e)| (q.clone(), format_rational(e))).collect(),
        }
    }
}

impl WeightSpec {
    pub fn monomial(u: Rational, v: Rational) -> Self {
        WeightSpec { u, v, factors: Vec::new() }
    }

    pub fn with_factor(mut self, q: BivariatePoly, w: Rational) -> Self {
        self.factors.push((q, w));
        self
    }

    /// `phi^{(r,s)} rho`, appending the factors of `case`; constant factors
    /// and zero exponents are dropped.
    pub fn shifted(&self, case: &PhiCase, r: u32, s: u32) -> Self {
        let mut out = self.clone();
        for (phi, k) in [(&case.phi10, r), (&case.phi01, s)] {
            if k > 0 && !phi.is_constant() {
                out.factors.push((phi.clone(), int(k.into())));
            }
        }
        out
    }
}

/// `rho_axis / rho` as an unreduced fraction `(num, den)`.
///
/// The denominator is the product of `x` (resp. `y`) and those `Q_i` that
/// contribute a nonzero term; with no contributing terms the result is `(0, 1)`.
pub fn log_derivative(w: &WeightSpec, axis: Axis) -> (BivariatePoly, BivariatePoly) {
    // (coefficient times derivative of the denominator, denominator)
    let mut terms: Vec<(BivariatePoly, BivariatePoly)> = Vec::new();
    let own = match axis {
        Axis::X => &w.u,
        Axis::Y => &w.v,
    };
    if !own.is_zero() {
        terms.push((BivariatePoly::constant(own.clone()), BivariatePoly::var(axis)));
    }
    for (q, e) in &w.factors {
        let dq = q.diff(axis);
        if !e.is_zero() && !dq.is_zero() {
            terms.push((dq.scale(e), q.clone()));
        }
    }
    let den = terms.iter().fold(BivariatePoly::one(), |acc, (_, d)| &acc * d);
    let mut num = BivariatePoly::zero();
    for (i, (t, _)) in terms.iter().enumerate() {
        let others = terms
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(BivariatePoly::one(), |acc, (_, (_, d))| &acc * d);
        num += &(t * &others);
    }
    (num, den)
}

/// Checks the Pearson system for `phi^{(r,s)} w` with a given factor case.
pub fn verify_pearson_with(
    pde: &HypergeometricPde,
    w: &WeightSpec,
    case: &PhiCase,
    r: u32,
    s: u32,
) -> Result<bool> {
    let alpha = pde.nondegenerate_discriminant()?;
    let (beta, gamma) = pde.pearson_numerators(r, s);
    let shifted = w.shifted(case, r, s);
    let holds = |axis: Axis, target: &BivariatePoly| {
        let (num, den) = log_derivative(&shifted, axis);
        &num * &alpha == target * &den
    };
    Ok(holds(Axis::X, &beta) && holds(Axis::Y, &gamma))
}

/// Checks the Pearson system for `phi^{(r,s)} w`, classifying the equation to
/// obtain the factors when `(r, s) != (0, 0)`.
pub fn verify_pearson(pde: &HypergeometricPde, w: &WeightSpec, r: u32, s: u32) -> Result<bool> {
    let case = if r == 0 && s == 0 {
        PhiCase { id: PhiCaseId::I, phi10: BivariatePoly::one(), phi01: BivariatePoly::one() }
    } else {
        classify_phi(pde)?.into_iter().next().ok_or(Error::NoCaseMatches)?
    };
    verify_pearson_with(pde, w, &case, r, s)
}

/// The trivial pair `phi10 = phi01 = 1`.
impl Default for PhiCase {
    fn default() -> Self {
        PhiCase { id: PhiCaseId::I, phi10: BivariatePoly::one(), phi01: BivariatePoly::one() }
    }
}

/// Whether each factor of `a` is a nonzero multiple of the same factor of `b`.
pub fn proportional_pairs(a: &PhiCase, b: &PhiCase) -> bool {
    a.phi10.ratio_to(&b.phi10).is_some_and(|k| !k.is_zero())
        && a.phi01.ratio_to(&b.phi01).is_some_and(|k| !k.is_zero())
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

    fn x() -> BivariatePoly {
        BivariatePoly::x()
    }
    fn y() -> BivariatePoly {
        BivariatePoly::y()
    }
    fn tri() -> BivariatePoly {
        &(&BivariatePoly::one() - &x()) - &y()
    }

    #[test]
    fn appell_cases() {
        let cases = classify_phi(&appell(int(2), int(3))).unwrap();
        let ids: Vec<_> = cases.iter().map(|c| c.id).collect();
        assert_eq!(ids, vec![PhiCaseId::VI, PhiCaseId::IX, PhiCaseId::X]);
        for c in &cases {
            assert_eq!(c.phi10, &x() * &tri());
            assert_eq!(c.phi01, &y() * &tri());
        }
    }

    #[test]
    fn case_one_example() {
        let p = HypergeometricPde { a: int(-1), c1: int(1), c2: int(1), ..Default::default() };
        let cases = classify_phi(&p).unwrap();
        assert_eq!(cases[0].id, PhiCaseId::I);
        let alpha = p.discriminant();
        assert_eq!(cases[0].phi10, alpha);
        assert_eq!(cases[0].phi01, alpha);
        assert_eq!(cases[0].phi_rs(1, 1), alpha.pow(2));
    }

    #[test]
    fn case_three_example() {
        let p = HypergeometricPde { b3: int(1), d3: int(1), ..Default::default() };
        let cases = classify_phi(&p).unwrap();
        let c3 = cases.iter().find(|c| c.id == PhiCaseId::III).unwrap();
        assert_eq!(c3.phi10, (&BivariatePoly::one() + &x()).pow(2));
        assert_eq!(c3.phi01, BivariatePoly::one());
        // The tabulated discriminant has the opposite sign.
        assert_eq!(PhiCaseId::III.tabulated_discriminant(&p), -p.discriminant());
        assert!(c3.is_consistent_with(&p));
    }

    #[test]
    fn no_case() {
        let p = HypergeometricPde {
            a: int(1),
            b1: int(1),
            c1: int(1),
            b2: int(5),
            c2: int(1),
            b3: int(1),
            c3: int(2),
            d3: int(1),
            ..Default::default()
        };
        assert_eq!(classify_phi(&p), Err(Error::NoCaseMatches));
    }

    #[test]
    fn phi_powers() {
        let c = &classify_phi(&appell(int(1), int(1))).unwrap()[0];
        assert_eq!(c.phi_rs(0, 0), BivariatePoly::one());
        let expected = &(&x().pow(2) * &y()) * &tri().pow(3);
        assert_eq!(c.phi_rs(2, 1), expected);
        assert_eq!(&c.phi_rs(1, 2) * &c.phi_rs(2, 0), c.phi_rs(3, 2));
    }

    #[test]
    fn log_derivatives() {
        let (al, be) = (rat(7, 2), int(3));
        let w = WeightSpec::monomial(&al - int(1), &be - int(1));
        assert_eq!(log_derivative(&w, Axis::X), (BivariatePoly::constant(&al - int(1)), x()));
        let c = rat(2, 3);
        let t = WeightSpec::monomial(int(0), int(0)).with_factor(tri(), c.clone());
        assert_eq!(log_derivative(&t, Axis::X), (BivariatePoly::constant(-c.clone()), tri()));
        let both = w.clone().with_factor(tri(), c.clone());
        let num = &tri().scale(&(&be - int(1))) - &y().scale(&c);
        assert_eq!(log_derivative(&both, Axis::Y), (num, &y() * &tri()));
        assert_eq!(
            log_derivative(&WeightSpec::monomial(int(0), int(0)), Axis::X),
            (BivariatePoly::zero(), BivariatePoly::one())
        );
    }

    #[test]
    fn pearson_checks() {
        let (al, be) = (int(2), int(3));
        let p = appell(al.clone(), be.clone());
        let w = WeightSpec::monomial(&al - int(1), &be - int(1));
        for r in 0..=3 {
            for s in 0..=3 {
                assert!(verify_pearson(&p, &w, r, s).unwrap(), "(r,s)=({r},{s})");
            }
        }
        let wrong = WeightSpec::monomial(al, &be - int(1));
        assert!(!verify_pearson(&p, &wrong, 0, 0).unwrap());
    }

    #[test]
    fn quadratic_coefficients() {
        let c = &classify_phi(&appell(int(1), int(1))).unwrap()[0];
        // x (1 - x - y) = -x^2 - xy + x
        let q = c.quadratic_coefficients(Axis::X).unwrap();
        assert_eq!(q, [int(-1), int(-1), int(0), int(1), int(0), int(0)]);
        let cubic = PhiCase { phi10: x().pow(3), ..PhiCase::default() };
        assert_eq!(
            cubic.quadratic_coefficients(Axis::X),
            Err(Error::PhiNotQuadratic { axis: 1, degree: 3 })
        );
    }

    #[test]
    fn weight_json() {
        let w = WeightSpec::monomial(rat(1, 2), int(0)).with_factor(tri(), int(2));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<WeightSpec>(&s).unwrap(), w);
        assert!(serde_json::from_str::<WeightSpec>(r#"{"u":"1","v":"0","factors":[[[],"1"]]}"#).is_err());
    }
}
