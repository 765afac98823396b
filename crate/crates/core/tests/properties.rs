use num::Zero;
use opde::algebra::rational::{int, rat, Rational};
use opde::algebra::{Axis, BivariatePoly, RationalMatrix};
use opde::pde::HypergeometricPde;
use opde::rodrigues::{weighted_diff, FactorBasis, WeightedExpr};
use opde::weight::WeightSpec;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly() -> impl Strategy<Value = BivariatePoly> {
    proptest::collection::vec((0u32..4, 0u32..4, small()), 0..6).prop_map(BivariatePoly::from_terms)
}

fn matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(small(), n * n)
        .prop_map(move |v| RationalMatrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect()).unwrap())
}

fn pde() -> impl Strategy<Value = HypergeometricPde> {
    proptest::collection::vec(small(), 11).prop_map(|v| HypergeometricPde {
        a: v[0].clone(),
        b1: v[1].clone(),
        c1: v[2].clone(),
        b2: v[3].clone(),
        c2: v[4].clone(),
        b3: v[5].clone(),
        c3: v[6].clone(),
        d3: v[7].clone(),
        e: v[8].clone(),
        f1: v[9].clone(),
        f2: v[10].clone(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &BivariatePoly::one(), p.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn product_rule(p in poly(), q in poly()) {
        for axis in Axis::BOTH {
            let lhs = (&p * &q).diff(axis);
            let rhs = &(&p.diff(axis) * &q) + &(&p * &q.diff(axis));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), x in small(), y in small()) {
        prop_assert_eq!((&p * &q).eval(&x, &y), p.eval(&x, &y) * q.eval(&x, &y));
        prop_assert_eq!((&p + &q).eval(&x, &y), p.eval(&x, &y) + q.eval(&x, &y));
    }

    #[test]
    fn inverse_and_determinant(a in matrix(3), b in matrix(3)) {
        let da = a.det().unwrap();
        let db = b.det().unwrap();
        prop_assert_eq!(a.try_mul(&b).unwrap().det().unwrap(), &da * &db);
        prop_assert_eq!(a.rank() == 3, !da.is_zero());
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.try_mul(&inv).unwrap(), RationalMatrix::identity(3)),
            None => prop_assert!(da.is_zero()),
        }
        prop_assert_eq!(a.transpose().det().unwrap(), da);
    }

    #[test]
    fn json_roundtrips(p in poly(), m in matrix(2), e in pde(), u in small(), v in small(), q in poly(), w in small()) {
        let back: BivariatePoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
        let back: RationalMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
        let back: HypergeometricPde = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
        prop_assume!(!q.is_zero());
        let ws = WeightSpec::monomial(u, v).with_factor(q, w);
        let back: WeightSpec = serde_json::from_str(&serde_json::to_string(&ws).unwrap()).unwrap();
        prop_assert_eq!(back, ws);
    }

    /// With nonnegative integer exponents the weighted expression is a
    /// polynomial, so its derivative can be checked directly.
    #[test]
    fn weighted_diff_matches_direct(a in 1u32..4, b in 1u32..4, p in poly()) {
        let basis = FactorBasis::default();
        let expr = WeightedExpr { exponents: vec![int(a.into()), int(b.into())], poly: p };
        let expand = |e: &WeightedExpr| {
            let pow = |k: &Rational, f: BivariatePoly| f.pow(k.to_integer().try_into().unwrap());
            let mut out = e.poly.clone();
            let ex: Vec<Rational> = (0..2).map(|i| e.exponents.get(i).cloned().unwrap_or_else(Rational::zero)).collect();
            out = &out * &pow(&ex[0], BivariatePoly::x());
            &out * &pow(&ex[1], BivariatePoly::y())
        };
        for axis in Axis::BOTH {
            let d = weighted_diff(&basis, &expr, axis);
            prop_assert_eq!(expand(&d), expand(&expr).diff(axis));
        }
    }
}
