//! One line per acceptance criterion; runs without the test harness so the
//! lines always appear.

use std::process::Command;
use std::time::{Duration, Instant};

use num::Zero;
use opde::algebra::rational::{int, rat};
use opde::algebra::{expansion_matrices, Axis};
use opde::exec::Execution;
use opde::families::*;
use opde::monic::{
    build_monic, c1, monic_derivrep, monic_structure, monic_ttrr, pde_residual, subleading_first,
    subleading_second, MonicFamily, SubdiagonalForm,
};
use opde::relations::{
    derivative_representation, derivative_ttrr, derivative_ttrr_residual, derivrep_residual, structure_matrices,
    structure_residual, ttrr_residual,
};
use opde::weight::{classify_phi, verify_pearson, PhiCaseId};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn points() -> Vec<AppellParams> {
    vec![AppellParams::from_ints(1, 1).unwrap(), AppellParams::from_ints(2, 3).unwrap()]
}

fn family(p: &AppellParams, n: usize) -> Result<MonicFamily, String> {
    build_monic(&appell_pde(p), n).map_err(|e| e.to_string())
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn eigen_residual() -> Check {
    let start = Instant::now();
    for p in points() {
        let fam = family(&p, 8)?;
        for n in 0..=8 {
            ensure(pde_residual(&fam, n).is_zero(), || format!("nonzero residual at n={n}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))
}

fn closed_form_blocks() -> Check {
    for p in points() {
        let pde = appell_pde(&p);
        let fam = family(&p, 8)?;
        for n in 1..=8 {
            let g = expansion_matrices(fam.vector(n), n as u32).map_err(err)?;
            ensure(g[n - 1] == subleading_first(&pde, n).map_err(err)?, || format!("first block, n={n}"))?;
            if n >= 2 {
                let s = subleading_second(&pde, n, SubdiagonalForm::Corrected).map_err(err)?;
                ensure(g[n - 2] == s, || format!("second block, n={n}"))?;
            }
        }
    }
    Ok(())
}

fn golden_agreement() -> Check {
    use GoldenMatrix::*;
    for p in points() {
        let fam = family(&p, 8)?;
        let case = appell_case(&p);
        for g in GoldenMatrix::ALL {
            let axis = Axis::from_index(g.axis_index()).unwrap();
            for n in g.min_degree()..=7 {
                let got = match g {
                    B1 | B2 => monic_ttrr(&fam.pde, n).map_err(err)?[axis].b.clone(),
                    C1 | C2 => monic_ttrr(&fam.pde, n).map_err(err)?[axis].c.clone(),
                    W1 | W2 => monic_structure(&fam, &case, n, axis).map_err(err)?.w,
                    S1 | S2 => monic_structure(&fam, &case, n, axis).map_err(err)?.s,
                    T1 | T2 => monic_structure(&fam, &case, n, axis).map_err(err)?.t,
                    V1 | V2 => monic_derivrep(&fam.pde, n, axis).map_err(err)?.v,
                    Y1 | Y2 => monic_derivrep(&fam.pde, n, axis).map_err(err)?.y,
                    Z1 | Z2 => monic_derivrep(&fam.pde, n, axis).map_err(err)?.z,
                };
                ensure(got == golden_matrices(&p, n, g).map_err(err)?, || format!("{g} at n={n}"))?;
            }
        }
    }
    Ok(())
}

fn spot_values() -> Check {
    for p in points() {
        let b = monic_ttrr(&appell_pde(&p), 0).map_err(err)?;
        let expected = &p.alpha / (&p.alpha + &p.beta + int(1));
        ensure(b.x.b.get(0, 0) == &expected, || format!("B_0,1 = {}", b.x.b.get(0, 0)))?;
    }
    let top = c1(&appell_pde(&points()[0]), Axis::X).map_err(err)?.get(0, 0).clone();
    ensure(top == rat(1, 18), || format!("C_1,1 top = {top}"))
}

fn orthogonality() -> Check {
    for p in points() {
        let fam = family(&p, 6)?;
        for n in 0..=6 {
            for m in 0..n {
                let blk = orthogonality_blocks(&p, &fam.family, n, m).map_err(err)?;
                ensure(blk.is_zero(), || format!("block m={m} n={n}"))?;
            }
            let h = orthogonality_blocks(&p, &fam.family, n, n).map_err(err)?;
            ensure(!h.det().map_err(err)?.is_zero(), || format!("singular H_{n}"))?;
        }
        let l = MomentFunctional::new(p.clone());
        let idx: Vec<(u32, u32)> = (0..=4u32).flat_map(|d| (0..=d).map(move |m| (d - m, m))).collect();
        for &(n, m) in &idx {
            let f = nonmonic_f(&p, n, m).map_err(err)?;
            for &(k, j) in &idx {
                let v = l.apply(&(&f * &monic_appell_series(&p, k, j)));
                ensure(v.is_zero() == ((n, m) != (k, j)), || format!("F({n},{m}) against A({k},{j})"))?;
            }
        }
    }
    Ok(())
}

fn identity_suites() -> Check {
    for p in points() {
        let fam = family(&p, 9)?;
        let f = &fam.family;
        let case = appell_case(&p);
        for axis in Axis::BOTH {
            for n in 0..=7 {
                let t = monic_ttrr(&fam.pde, n).map_err(err)?;
                ensure(ttrr_residual(f, &t[axis], n, axis).map_err(err)?.is_zero(), || format!("TTRR n={n} {axis}"))?;
                let q = derivative_ttrr(f, n, axis).map_err(err)?;
                ensure(derivative_ttrr_residual(f, &q, n, axis).map_err(err)?.is_zero(), || format!("Q TTRR n={n}"))?;
                let s = structure_matrices(f, &case, n, axis).map_err(err)?;
                ensure(structure_residual(f, &case, &s, n, axis).map_err(err)?.is_zero(), || format!("structure n={n}"))?;
                if n >= 1 {
                    let d = derivative_representation(f, n, axis).map_err(err)?;
                    ensure(derivrep_residual(f, &d, n, axis).map_err(err)?.is_zero(), || format!("derivrep n={n}"))?;
                }
            }
        }
    }
    Ok(())
}

fn classification() -> Check {
    for p in points() {
        let pde = appell_pde(&p);
        let cases = classify_phi(&pde).map_err(err)?;
        let ids: Vec<PhiCaseId> = cases.iter().map(|c| c.id).collect();
        ensure(ids == [PhiCaseId::VI, PhiCaseId::IX, PhiCaseId::X], || format!("cases {ids:?}"))?;
        let edge = opde::algebra::BivariatePoly::from_terms([(1, 0, int(-1)), (0, 1, int(-1)), (0, 0, int(1))]);
        for c in &cases {
            ensure(c.phi10 == &opde::algebra::BivariatePoly::x() * &edge, || format!("phi10 in case {}", c.id))?;
            ensure(c.phi01 == &opde::algebra::BivariatePoly::y() * &edge, || format!("phi01 in case {}", c.id))?;
        }
        for r in 0..=3 {
            for s in 0..=3 {
                ensure(verify_pearson(&pde, &appell_weight(&p), r, s).map_err(err)?, || format!("Pearson ({r},{s})"))?;
            }
        }
    }
    Ok(())
}

fn rodrigues_chain() -> Check {
    use opde::algebra::BivariatePoly as P;
    let lin = |a, b, c| P::from_terms([(1, 0, int(a)), (0, 1, int(b)), (0, 0, int(c))]);
    let p = &points()[0];
    ensure(nonmonic_f(p, 1, 0).map_err(err)? == lin(-2, -1, 1), || "F(1,0)".into())?;
    ensure(koornwinder(p, 1, 0) == lin(3, 0, -1), || "K(1,0)".into())?;
    ensure(koornwinder(p, 0, 1) == lin(1, 2, -1), || "K(0,1)".into())?;
    for p in points() {
        for n in 0..=5 {
            let a = monic_appell_vector(&p, n);
            let f = f_vector(&p, n, Execution::Parallel).map_err(err)?;
            ensure(connection_f(&p, n).apply(&a).map_err(err)? == f, || format!("F route, n={n}"))?;
            ensure(connection_k(&p, n).apply(&a).map_err(err)? == koornwinder_vector(&p, n), || format!("K route, n={n}"))?;
        }
    }
    Ok(())
}

fn series_route() -> Check {
    for p in points() {
        let fam = family(&p, 6)?;
        for big in 0..=6u32 {
            for m in 0..=big {
                let s = monic_appell_series(&p, big - m, m);
                ensure(s == fam.vector(big as usize)[m as usize], || format!("({}, {m})", big - m))?;
            }
        }
    }
    Ok(())
}

fn cli_verify() -> Check {
    let start = Instant::now();
    for (a, b) in [("1", "1"), ("2", "3")] {
        let out = Command::new(env!("CARGO_BIN_EXE_opde"))
            .args(["verify", "--alpha", a, "--beta", b, "-N", "6"])
            .env_remove("OPDE_MAX_DEGREE")
            .output()
            .map_err(err)?;
        ensure(out.status.success(), || {
            format!("({a},{b}) exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("eigen-residual, n <= 8", eigen_residual),
        ("closed-form expansion blocks, n <= 8", closed_form_blocks),
        ("tabulated matrices, n <= 7", golden_agreement),
        ("spot values B_0 and C_1", spot_values),
        ("orthogonality and biorthogonality", orthogonality),
        ("identity suites, n <= 7", identity_suites),
        ("weight-factor classification and Pearson", classification),
        ("Rodrigues, connection and Koornwinder routes", rodrigues_chain),
        ("series route, n + m <= 6", series_route),
        ("cli verify at N = 6 under 60 s", cli_verify),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1} s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
