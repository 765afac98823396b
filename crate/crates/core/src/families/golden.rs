//! Tabulated closed forms of the monic Appell recurrence, structure and
//! derivative-representation matrices, entered verbatim and independently
//! of the general constructions they are compared against.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::Zero;

use super::appell::AppellParams;
use crate::algebra::rational::{int, Rational};
use crate::algebra::RationalMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoldenMatrix {
    B1,
    B2,
    C1,
    C2,
    W1,
    W2,
    S1,
    S2,
    T1,
    T2,
    V1,
    V2,
    Y1,
    Y2,
    Z1,
    Z2,
}

impl GoldenMatrix {
    pub const ALL: [GoldenMatrix; 16] = [
        Self::B1,
        Self::B2,
        Self::C1,
        Self::C2,
        Self::W1,
        Self::W2,
        Self::S1,
        Self::S2,
        Self::T1,
        Self::T2,
        Self::V1,
        Self::V2,
        Self::Y1,
        Self::Y2,
        Self::Z1,
        Self::Z2,
    ];

    /// Smallest degree for which the table gives the matrix.
    pub fn min_degree(self) -> usize {
        use GoldenMatrix::*;
        match self {
            B1 | B2 => 0,
            C1 | C2 | W1 | W2 | S1 | S2 | T1 | T2 => 1,
            V1 | V2 | Y1 | Y2 | Z1 | Z2 => 2,
        }
    }

    /// 1 for the x-axis matrices, 2 for the y-axis ones.
    pub fn axis_index(self) -> u8 {
        if (self as u8).is_multiple_of(2) {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for GoldenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for GoldenMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GoldenMatrix::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown matrix name {s:?}")))
    }
}

/// Rational with mixed-integer operators, to keep the formulas legible.
/// Division with a zero numerator yields zero, which is the intended value
/// of the one degenerate printed term (`n = 0` with `alpha + beta = 1`).
#[derive(Clone)]
struct Q(Rational);

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q(self.0.$m(o.0))
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q(self.0.$m(&o.0))
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q((&self.0).$m(o.0))
            }
        }
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q((&self.0).$m(&o.0))
            }
        }
        impl $tr<i64> for Q {
            type Output = Q;
            fn $m(self, o: i64) -> Q {
                Q(self.0.$m(int(o)))
            }
        }
        impl $tr<i64> for &Q {
            type Output = Q;
            fn $m(self, o: i64) -> Q {
                Q((&self.0).$m(int(o)))
            }
        }
        impl $tr<Q> for i64 {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q(int(self).$m(o.0))
            }
        }
        impl $tr<&Q> for i64 {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q(int(self).$m(&o.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<T: Into<Q>> Div<T> for Q {
    type Output = Q;
    fn div(self, o: T) -> Q {
        if self.0.is_zero() {
            self
        } else {
            Q(self.0 / o.into().0)
        }
    }
}

impl From<i64> for Q {
    fn from(k: i64) -> Q {
        Q(int(k))
    }
}

impl From<&Q> for Q {
    fn from(q: &Q) -> Q {
        q.clone()
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

fn band(rows: usize, cols: usize) -> (RationalMatrix, impl FnMut(&mut RationalMatrix, i64, i64, Q)) {
    (RationalMatrix::zeros(rows, cols), |m: &mut RationalMatrix, r: i64, c: i64, v: Q| {
        m.set(r as usize, c as usize, v.0)
    })
}

/// The tabulated matrix `which` at degree `n`, with zeros off its band.
pub fn golden_matrices(p: &AppellParams, n: usize, which: GoldenMatrix) -> Result<RationalMatrix> {
    use GoldenMatrix::*;
    if n < which.min_degree() {
        return Err(Error::IndexOutOfPrintedRange { which: which.to_string(), n });
    }
    let a = &Q(p.alpha.clone());
    let b = &Q(p.beta.clone());
    let ab = &(a + b);
    let nu = n;
    let n = n as i64;
    let d1 = &((ab + (2 * n - 1)) * (ab + (2 * n + 1)));
    let d2 = &((ab + 2 * n) * (ab + (2 * n - 1)) * (ab + (2 * n - 1)) * (ab + (2 * n - 2)));

    let out = match which {
        B1 => {
            let (mut m, mut set) = band(nu + 1, nu + 1);
            for i in 0..=n {
                let v = -(n - i) * (a + (n - 1 - i)) / (ab + (2 * n - 1))
                    + (n + 1 - i) * (a + (n - i)) / (ab + (2 * n + 1));
                set(&mut m, i, i, v);
            }
            for i in 0..n {
                set(&mut m, i + 1, i, -2 * (i + 1) * (b + i) / d1);
            }
            m
        }
        B2 => {
            let (mut m, mut set) = band(nu + 1, nu + 1);
            for i in 0..=n {
                let v = Q::from(1) + i * (a + (2 * n - i)) / (ab + (2 * n - 1))
                    - (i + 1) * (a + (2 * n + 1 - i)) / (ab + (2 * n + 1));
                set(&mut m, i, i, v);
            }
            for i in 0..n {
                set(&mut m, i, i + 1, -2 * (n - i) * (a + (n - 1 - i)) / d1);
            }
            m
        }
        C1 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 0..n {
                set(&mut m, i, i, (n - i) * (a + (n - 1 - i)) * (b + (n + i)) * (ab + (n - 1 + i)) / d2);
                let inner = 2 * (n - i - 1) * (b + (n + i)) + a * (ab + (2 * n - 2));
                set(&mut m, i + 1, i, -(i + 1) * (b + i) * inner / d2);
            }
            for i in 0..n - 1 {
                set(&mut m, i + 2, i, (i + 2) * (i + 1) * (b + i) * (b + (i + 1)) / d2);
            }
            m
        }
        C2 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 0..n {
                let inner = b * (b + (2 * n - 2)) + a * (b + 2 * i) + 2 * i * (2 * n - 1 - i);
                set(&mut m, i, i, -(n - i) * (a + (n - 1 - i)) * inner / d2);
                set(&mut m, i + 1, i, (i + 1) * (a + (2 * n - 1 - i)) * (b + i) * (ab + (2 * n - 2 - i)) / d2);
            }
            for i in 0..n - 1 {
                set(&mut m, i, i + 1, (n - i) * (n - 1 - i) * (a + (n - 1 - i)) * (a + (n - 2 - i)) / d2);
            }
            m
        }
        W1 | W2 => {
            let (mut m, mut set) = band(nu + 1, nu + 2);
            for i in 0..=n {
                let v = if which == W1 { i - n } else { -i };
                set(&mut m, i, i, Q::from(v));
                set(&mut m, i, i + 1, Q::from(v));
            }
            m
        }
        S1 => {
            let (mut m, mut set) = band(nu + 1, nu + 1);
            for i in 0..n {
                let inner = Q::from(-n + (2 * n - 1) * i - 4 * i * i) + (n - 2 - 3 * i) * b + a * (ab + (n - 1 + i));
                set(&mut m, i, i, -(n - i) * inner / d1);
                set(&mut m, i, i + 1, -(n - i) * (a + (n - 1 - i)) * (ab + (2 * i + 1)) / d1);
            }
            for i in 0..n - 1 {
                set(&mut m, i + 1, i, 2 * (i + 1) * (n - 1 - i) * (b + i) / d1);
            }
            m
        }
        S2 => {
            let (mut m, mut set) = band(nu + 1, nu + 1);
            for i in 1..=n {
                let inner = b - b * b - i + b * i + 4 * i * i - a * (b + (-2 + 3 * i - 2 * n))
                    - 2 * (b + (-1 + 3 * i)) * n
                    + 2 * n * n;
                set(&mut m, i, i, i * inner / d1);
            }
            for i in 0..n {
                set(&mut m, i + 1, i, -(1 + i) * (b + i) * (ab + (-1 - 2 * i + 2 * n)) / d1);
                set(&mut m, i, i + 1, 2 * i * (n - i) * (a + (-1 - i + n)) / d1);
            }
            m
        }
        T1 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 0..n {
                let inner = b * b * (1 + i)
                    + i * i * (1 + 3 * i)
                    + a * b * (1 + n)
                    + a * a * (n - i)
                    + b * (i * (3 + 4 * i) + n * (n - 2 * i))
                    + n * (-(i - 2) * i + n * (n - 1 - i))
                    + a * (i * (2 + i) + n * (2 * n - 1 - 2 * i));
                set(&mut m, i, i, (n - i) * (a + (n - 1 - i)) / d2 * inner);
            }
            for i in 0..n - 1 {
                set(&mut m, i, i + 1, (n - i) * (n - i - 1) * (a + (n - 2 - i)) * (a + (n - i - 1)) * (ab + (n + i)) / d2);
                let inner = a * (ab + (n + i - 1)) + b * (n - 2 * i - 3) + (-2 + (2 * n - 5) * i - 3 * i * i);
                set(&mut m, i + 1, i, (b + i) * (n - i - 1) * (i + 1) / d2 * inner);
            }
            for i in 0..n - 2 {
                set(&mut m, i + 2, i, -(b + i) * (b + (i + 1)) * (n - i - 2) * (i + 1) * (i + 2) / d2);
            }
            m
        }
        T2 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 1..n {
                let inner = a * b + b * b - i * (1 + 3 * i - 4 * n) - b * (2 + i - 2 * n) + a * (-1 + 2 * i - n)
                    - n * (1 + n);
                set(&mut m, i, i, i * (n - i) * (a + (-1 - i + n)) / d2 * inner);
            }
            for i in 1..n - 1 {
                set(&mut m, i, i + 1, -i * (n - 1 - i) * (n - i) * (a + (-2 - i + n)) * (a + (-1 - i + n)) / d2);
            }
            for i in 0..n {
                let j = 1 + i;
                let inner = -3 * j * j * j + (1 + n) * (a + n) * (ab + 2 * n) + j * j * (4 * a + b + (1 + 8 * n))
                    - j * (a * (a + 3) - (b - 2) * b + (4 * n + 6 * n * n) + 6 * n * a);
                set(&mut m, i + 1, i, j * (b + i) / d2 * inner);
            }
            for i in 0..n - 1 {
                set(&mut m, i + 2, i, (1 + i) * (2 + i) * (b + i) * (b + (1 + i)) * (ab + (-2 - i + 2 * n)) / d2);
            }
            m
        }
        V1 | V2 => {
            let (mut m, mut set) = band(nu + 1, nu + 1);
            for i in 0..=n {
                let d = if which == V1 { n + 1 - i } else { i + 1 };
                set(&mut m, i, i, Q::from(1) / d);
            }
            m
        }
        Y1 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 0..n {
                set(&mut m, i, i, (b - a + (2 * i + 1)) / d1);
                set(&mut m, i + 1, i, -2 * (i + 1) * (b + i) / ((n - i) * d1));
            }
            m
        }
        Y2 => {
            let (mut m, mut set) = band(nu + 1, nu);
            for i in 0..n {
                set(&mut m, i, i, -2 * (n - i) * (a + (n - 1 - i)) / ((1 + i) * d1));
                set(&mut m, i + 1, i, (a - b + (2 * n - 1 - 2 * i)) / d1);
            }
            m
        }
        Z1 => {
            let (mut m, mut set) = band(nu + 1, nu - 1);
            for i in 0..n - 1 {
                set(&mut m, i, i, -(n - i) * (a + (n - 1 - i)) * (b + (n + i)) / d2);
                set(&mut m, i + 1, i, (i + 1) * (a - b - 2 * (i + 1)) * (b + i) / d2);
                set(&mut m, i + 2, i, (i + 1) * (i + 2) * (b + i) * (b + (i + 1)) / ((n - 1 - i) * d2));
            }
            m
        }
        Z2 => {
            let (mut m, mut set) = band(nu + 1, nu - 1);
            for i in 0..n - 1 {
                set(&mut m, i, i, (n - 1 - i) * (n - i) * (a + (n - 2 - i)) * (a + (n - 1 - i)) / ((1 + i) * d2));
                set(&mut m, i + 1, i, -(n - 1 - i) * (a + (n - 2 - i)) * (a - b + 2 * (n - 1 - i)) / d2);
                set(&mut m, i + 2, i, -(2 + i) * (b + (1 + i)) * (a + (2 * n - 2 - i)) / d2);
            }
            m
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn pt(a: i64, b: i64) -> AppellParams {
        AppellParams::from_ints(a, b).unwrap()
    }

    #[test]
    fn spot_entries() {
        let c = golden_matrices(&pt(1, 1), 1, GoldenMatrix::C1).unwrap();
        assert_eq!(c.get(0, 0), &rat(1, 18));
        let v = golden_matrices(&pt(1, 1), 2, GoldenMatrix::V1).unwrap();
        assert_eq!(v, RationalMatrix::diagonal(vec![rat(1, 3), rat(1, 2), int(1)]));
        let b = golden_matrices(&pt(2, 3), 0, GoldenMatrix::B1).unwrap();
        assert_eq!(b.get(0, 0), &rat(2, 6));
    }

    #[test]
    fn w_band() {
        for n in 1..5 {
            let w = golden_matrices(&pt(2, 3), n, GoldenMatrix::W1).unwrap();
            for i in 0..=n {
                assert_eq!(w.get(i, i), &-int((n - i) as i64));
                assert_eq!(w.get(i, i + 1), &-int((n - i) as i64));
            }
        }
    }

    #[test]
    fn printed_ranges() {
        assert!(matches!(
            golden_matrices(&pt(1, 1), 1, GoldenMatrix::Z2),
            Err(Error::IndexOutOfPrintedRange { n: 1, .. })
        ));
        assert!(golden_matrices(&pt(1, 1), 0, GoldenMatrix::C1).is_err());
    }

    #[test]
    fn degenerate_denominator_at_degree_zero() {
        let p = AppellParams::new(rat(1, 2), rat(1, 2)).unwrap();
        let b = golden_matrices(&p, 0, GoldenMatrix::B1).unwrap();
        assert_eq!(b.get(0, 0), &rat(1, 4));
    }

    #[test]
    fn names_roundtrip() {
        for g in GoldenMatrix::ALL {
            assert_eq!(g.to_string().parse::<GoldenMatrix>().unwrap(), g);
        }
        assert_eq!(GoldenMatrix::T2.axis_index(), 2);
        assert_eq!(GoldenMatrix::S1.axis_index(), 1);
    }
}
