use super::appell::{appell_case, appell_weight, AppellParams};
use crate::algebra::rational::{binomial, factorial, int, pochhammer, rat, sign_power, Rational};
use crate::algebra::{BivariatePoly, PolyVector, RationalMatrix};
use crate::error::Result;
use crate::exec::Execution;
use crate::rodrigues::rodrigues_eval;

/// Jacobi polynomial `P_n^{(a,b)}(x)`, classical normalization, from
/// `sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`.
pub fn jacobi(a: &Rational, b: &Rational, n: u32) -> BivariatePoly {
    let half = rat(1, 2);
    let minus = BivariatePoly::from_terms([(1, 0, half.clone()), (0, 0, -half.clone())]);
    let plus = BivariatePoly::from_terms([(1, 0, half.clone()), (0, 0, half)]);
    let na = a + int(n.into());
    let nb = b + int(n.into());
    let mut out = BivariatePoly::zero();
    for s in 0..=n {
        let c = binomial(&na, n - s) * binomial(&nb, s);
        out += &(&minus.pow(s) * &plus.pow(n - s)).scale(&c);
    }
    out
}

fn two_x_minus_one() -> BivariatePoly {
    BivariatePoly::from_terms([(1, 0, int(2)), (0, 0, int(-1))])
}

/// `P_n^{(2m+beta, alpha-1)}(2x-1) (1-x)^m P_m^{(0, beta-1)}(2y/(1-x) - 1)`,
/// with the inner factor expanded as `sum_i c_i (2y - 1 + x)^i (1-x)^(m-i)`.
pub fn koornwinder(p: &AppellParams, n: u32, m: u32) -> BivariatePoly {
    let outer = jacobi(&(&p.beta + int((2 * m).into())), &(&p.alpha - int(1)), n)
        .compose(&two_x_minus_one(), &BivariatePoly::y());
    let inner_t = jacobi(&Rational::from_integer(0.into()), &(&p.beta - int(1)), m);
    let num = BivariatePoly::from_terms([(0, 1, int(2)), (1, 0, int(1)), (0, 0, int(-1))]);
    let one_minus_x = &BivariatePoly::one() - &BivariatePoly::x();
    let mut inner = BivariatePoly::zero();
    for (mono, c) in inner_t.terms() {
        let i = mono.x;
        inner += &(&num.pow(i) * &one_minus_x.pow(m - i)).scale(c);
    }
    &outer * &inner
}

/// `(K_{N,0}, K_{N-1,1}, ..., K_{0,N})`.
pub fn koornwinder_vector(p: &AppellParams, degree: u32) -> PolyVector {
    (0..=degree).map(|k| koornwinder(p, degree - k, k)).collect()
}

/// `F_{n,m} = x^(1-alpha) y^(1-beta) / ((alpha)_n (beta)_m)
/// d^{n+m}/dx^n dy^m [x^(n+alpha-1) y^(m+beta-1) (1-x-y)^(n+m)]`.
pub fn nonmonic_f(p: &AppellParams, n: u32, m: u32) -> Result<BivariatePoly> {
    let r = rodrigues_eval(&appell_weight(p), &appell_case(p), n, m)?;
    Ok(r.scale(&(pochhammer(&p.alpha, n) * pochhammer(&p.beta, m)).recip()))
}

/// `(F_{N,0}, F_{N-1,1}, ..., F_{0,N})`.
pub fn f_vector(p: &AppellParams, degree: u32, exec: Execution) -> Result<PolyVector> {
    let ks: Vec<u32> = (0..=degree).collect();
    exec.map(&ks, |&k| nonmonic_f(p, degree - k, k)).into_iter().collect()
}

/// `G^F_n` with `F_n = G^F_n A_n`: entries
/// `(-1)^n C(n,j) (alpha+n-i)_{n-j} (beta+i)_j / ((alpha)_{n-j} (beta)_j)`.
pub fn connection_f(p: &AppellParams, n: u32) -> RationalMatrix {
    let nu = n as usize;
    let mut m = RationalMatrix::zeros(nu + 1, nu + 1);
    for i in 0..=n {
        for j in 0..=n {
            let v = sign_power(n)
                * binomial(&int(n.into()), j)
                * pochhammer(&(&p.alpha + int((n - i).into())), n - j)
                * pochhammer(&(&p.beta + int(i.into())), j)
                / (pochhammer(&p.alpha, n - j) * pochhammer(&p.beta, j));
            m.set(i as usize, j as usize, v);
        }
    }
    m
}

/// `G^K_n` with `K_n = G^K_n A_n`: lower triangular with entries
/// `(alpha+beta+n+i)_{n-i} (beta+j)_i / ((n-i)! j! (i-j)!)`.
pub fn connection_k(p: &AppellParams, n: u32) -> RationalMatrix {
    let nu = n as usize;
    let s = &p.alpha + &p.beta + int(n.into());
    let mut m = RationalMatrix::zeros(nu + 1, nu + 1);
    for i in 0..=n {
        for j in 0..=i {
            let v = pochhammer(&(&s + int(i.into())), n - i) * pochhammer(&(&p.beta + int(j.into())), i)
                / (factorial(n - i) * factorial(j) * factorial(i - j));
            m.set(i as usize, j as usize, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::appell::monic_appell_vector;

    fn pt(a: i64, b: i64) -> AppellParams {
        AppellParams::from_ints(a, b).unwrap()
    }

    fn lin(cx: i64, cy: i64, c0: i64) -> BivariatePoly {
        BivariatePoly::from_terms([(1, 0, int(cx)), (0, 1, int(cy)), (0, 0, int(c0))])
    }

    /// Classical three-term recurrence, as an independent oracle.
    fn jacobi_recurrence(a: &Rational, b: &Rational, n: u32) -> BivariatePoly {
        let x = BivariatePoly::x();
        let p1 = (&x.scale(&(a + b + int(2))) + &BivariatePoly::constant(a - b)).scale(&rat(1, 2));
        if n == 0 {
            return BivariatePoly::one();
        }
        let (mut prev, mut cur) = (BivariatePoly::one(), p1);
        for k in 2..=n {
            let k = int(k.into());
            let s = &k * int(2) + a + b;
            let c0 = int(2) * &k * (&k + a + b) * (&s - int(2));
            let c1 = (&s - int(1)) * &s * (&s - int(2));
            let c2 = (&s - int(1)) * (a * a - b * b);
            let c3 = int(2) * (&k + a - int(1)) * (&k + b - int(1)) * &s;
            let next = &(&x.scale(&c1) + &BivariatePoly::constant(c2)) * &cur;
            let next = (&next - &prev.scale(&c3)).scale(&c0.recip());
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    #[test]
    fn jacobi_values() {
        let p = jacobi(&int(1), &int(0), 1);
        assert_eq!(p, BivariatePoly::from_terms([(1, 0, rat(3, 2)), (0, 0, rat(1, 2))]));
        assert_eq!(jacobi(&rat(1, 3), &int(2), 0), BivariatePoly::one());
        assert_eq!(jacobi(&int(0), &int(0), 2).eval(&int(1), &int(0)), int(1));
        for (a, b) in [(rat(1, 2), rat(-1, 3)), (int(3), int(0)), (rat(-1, 2), rat(-1, 2))] {
            for n in 0..6 {
                assert_eq!(jacobi(&a, &b, n), jacobi_recurrence(&a, &b, n));
                let at_one = pochhammer(&(&a + int(1)), n) / factorial(n);
                assert_eq!(jacobi(&a, &b, n).eval(&int(1), &int(0)), at_one);
            }
        }
    }

    #[test]
    fn koornwinder_values() {
        let p = pt(1, 1);
        assert_eq!(koornwinder(&p, 0, 1), lin(1, 2, -1));
        assert_eq!(koornwinder(&p, 1, 0), lin(3, 0, -1));
        assert_eq!(koornwinder(&pt(2, 3), 0, 0), BivariatePoly::one());
    }

    #[test]
    fn f_values() {
        let p = pt(1, 1);
        assert_eq!(nonmonic_f(&p, 1, 0).unwrap(), lin(-2, -1, 1));
        assert_eq!(nonmonic_f(&p, 0, 1).unwrap(), lin(-1, -2, 1));
        assert_eq!(nonmonic_f(&pt(2, 3), 0, 0).unwrap(), BivariatePoly::one());
    }

    #[test]
    fn connection_matrices() {
        let p = pt(1, 1);
        assert_eq!(connection_f(&p, 1), RationalMatrix::from_i64(&[&[-2, -1], &[-1, -2]]));
        assert_eq!(connection_f(&pt(2, 3), 0), RationalMatrix::identity(1));
        assert_eq!(connection_k(&p, 1), RationalMatrix::from_i64(&[&[3, 0], &[1, 2]]));
        let a1 = monic_appell_vector(&p, 1);
        assert_eq!(connection_k(&p, 1).apply(&a1).unwrap(), koornwinder_vector(&p, 1));
        assert_eq!(
            connection_f(&p, 1).apply(&a1).unwrap(),
            f_vector(&p, 1, Execution::Sequential).unwrap()
        );
    }
}
