//! Exact verification suites over a built monic family.
//!
//! Every suite checks polynomial or matrix identities with exact equality and
//! records the first offending entry of each failed check.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{Axis, PolyVector, RationalMatrix};
use crate::error::Result;
use crate::exec::Execution;
use crate::families::{
    appell_case, appell_pde, connection_f, connection_k, f_vector, golden_matrices, koornwinder_vector,
    monic_appell_series, monic_appell_vector, nonmonic_f, orthogonality_blocks, AppellParams, GoldenMatrix,
    MomentFunctional,
};
use crate::monic::{
    build_monic, monic_derivrep, monic_structure, monic_ttrr, pde_residual, solve_monic_direct,
    subleading_first, subleading_second, MonicFamily, SubdiagonalForm,
};
use crate::pde::HypergeometricPde;
use crate::relations::{self, DerivRep, Ttrr};
use crate::rodrigues::{connection_solve, rodrigues_derivative_eval, rodrigues_eval};
use crate::weight::{classify_phi, verify_pearson_with, PhiCase, PhiCaseId};

/// Deliberate corruption of a computed quantity, to exercise failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1 to the top-left entry of `B_{1,1}` before checking the recurrence.
    CorruptB1,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_degree: usize,
    pub exec: Execution,
    pub fault: Option<Fault>,
}

impl VerifyOptions {
    pub fn new(max_degree: usize) -> Self {
        VerifyOptions { max_degree, exec: Execution::default(), fault: None }
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub n: usize,
    pub axis: Option<u8>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, n={}", self.identity, self.n)?;
        if let Some(j) = self.axis {
            write!(f, ", axis {j}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok".to_string() } else { format!("{} FAILED", self.failures.len()) };
        write!(f, "{}: {} checks, {}", self.name, self.checks, verdict)?;
        for note in &self.notes {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.suites.iter().flat_map(|s| &s.failures).next()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    identity: &'a str,
    n: usize,
    axis: Option<Axis>,
}

impl Ctx<'_> {
    fn fail(&self, detail: impl Into<String>) -> Failure {
        Failure {
            identity: self.identity.to_string(),
            n: self.n,
            axis: self.axis.map(Axis::index),
            detail: detail.into(),
        }
    }

    fn zero(&self, r: Result<PolyVector>) -> Outcome {
        match r {
            Err(e) => Err(self.fail(e.to_string())),
            Ok(v) => match v.first_nonzero() {
                None => Ok(()),
                Some(k) => Err(self.fail(format!("entry {k} leaves {}", v[k]))),
            },
        }
    }

    fn same(&self, got: Result<RationalMatrix>, want: Result<RationalMatrix>) -> Outcome {
        let (got, want) = match (got, want) {
            (Ok(g), Ok(w)) => (g, w),
            (Err(e), _) | (_, Err(e)) => return Err(self.fail(e.to_string())),
        };
        if got.shape() != want.shape() {
            return Err(self.fail(format!("shape {:?} != {:?}", got.shape(), want.shape())));
        }
        for r in 0..got.rows() {
            for c in 0..got.cols() {
                if got.get(r, c) != want.get(r, c) {
                    return Err(self.fail(format!("entry ({r},{c}): {} != {}", got.get(r, c), want.get(r, c))));
                }
            }
        }
        Ok(())
    }

    fn holds(&self, ok: Result<bool>, detail: impl FnOnce() -> String) -> Outcome {
        match ok {
            Ok(true) => Ok(()),
            Ok(false) => Err(self.fail(detail())),
            Err(e) => Err(self.fail(e.to_string())),
        }
    }
}

fn ctx(identity: &str, n: usize, axis: Option<Axis>) -> Ctx<'_> {
    Ctx { identity, n, axis }
}

fn suite<T, F>(name: &str, exec: Execution, items: &[T], f: F) -> SuiteReport
where
    T: Sync,
    F: Fn(&T) -> Vec<Outcome> + Sync + Send,
{
    let results: Vec<Outcome> = exec.map(items, f).into_iter().flatten().collect();
    SuiteReport {
        name: name.to_string(),
        checks: results.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
        notes: Vec::new(),
    }
}

fn degree_axis_grid(degrees: impl Iterator<Item = usize>) -> Vec<(usize, Axis)> {
    degrees.flat_map(|n| Axis::BOTH.map(|a| (n, a))).collect()
}

/// Distinct factor pairs among the matching cases.
fn distinct_cases(pde: &HypergeometricPde) -> Result<Vec<PhiCase>> {
    let mut seen = BTreeSet::new();
    Ok(classify_phi(pde)?
        .into_iter()
        .filter(|c| seen.insert((c.phi10.to_string(), c.phi01.to_string())))
        .collect())
}

fn corrupted(t: Ttrr, fault: Option<Fault>, n: usize, axis: Axis) -> Ttrr {
    match fault {
        Some(Fault::CorruptB1) if n == 1 && axis == Axis::X => {
            let mut t = t;
            let v = t.b.get(0, 0) + crate::algebra::Rational::one();
            t.b.set(0, 0, v);
            t
        }
        _ => t,
    }
}

/// Suites that apply to any admissible, potentially self-adjoint equation.
pub fn monic_suites(fam: &MonicFamily, opts: &VerifyOptions) -> Vec<SuiteReport> {
    let pde = &fam.pde;
    let top = fam.max_degree();
    let exec = opts.exec;
    let all: Vec<usize> = (0..=top).collect();
    let mut out = Vec::new();

    out.push(suite("eigen-residual", exec, &all, |&n| vec![ctx("eigen-residual", n, None).zero(Ok(pde_residual(fam, n)))]));

    out.push(suite("direct solve", exec, &all, |&n| {
        let c = ctx("direct solve", n, None);
        vec![match solve_monic_direct(pde, n) {
            Ok(v) if &v == fam.vector(n) => Ok(()),
            Ok(v) => c.zero(v.try_sub(fam.vector(n))),
            Err(e) => Err(c.fail(e.to_string())),
        }]
    }));

    let pos: Vec<usize> = (1..=top).collect();
    out.push(suite("closed-form expansions", exec, &pos, |&n| {
        let ni = n as i64;
        let mut v = vec![ctx("closed-form G(n,n-1)", n, None).same(fam.family.g(ni, ni - 1), subleading_first(pde, n))];
        if n >= 2 {
            v.push(
                ctx("closed-form G(n,n-2)", n, None)
                    .same(fam.family.g(ni, ni - 2), subleading_second(pde, n, SubdiagonalForm::Corrected)),
            );
        }
        v
    }));

    let grid = degree_axis_grid(0..top);
    out.push(suite("TTRR", exec, &grid, |&(n, axis)| {
        let c = ctx("TTRR identity", n, Some(axis));
        let t = monic_ttrr(pde, n).map(|t| corrupted(t[axis].clone(), opts.fault, n, axis));
        vec![match t {
            Ok(t) => c.zero(relations::ttrr_residual(&fam.family, &t, n, axis)),
            Err(e) => Err(c.fail(e.to_string())),
        }]
    }));

    let qgrid = degree_axis_grid(0..top.saturating_sub(1));
    out.push(suite("Q-family TTRR", exec, &qgrid, |&(n, axis)| {
        let c = ctx("Q-family TTRR identity", n, Some(axis));
        vec![match relations::derivative_ttrr(&fam.family, n, axis) {
            Ok(t) => c.zero(relations::derivative_ttrr_residual(&fam.family, &t, n, axis)),
            Err(e) => Err(c.fail(e.to_string())),
        }]
    }));

    out.push(structure_suite(fam, exec, &grid));

    let dgrid = degree_axis_grid(1..top);
    out.push(suite("derivative representation", exec, &dgrid, |&(n, axis)| {
        let c = ctx("derivative representation", n, Some(axis));
        let d = match relations::derivative_representation(&fam.family, n, axis) {
            Ok(d) => d,
            Err(e) => return vec![Err(c.fail(e.to_string()))],
        };
        let mut v = vec![c.zero(relations::derivrep_residual(&fam.family, &d, n, axis))];
        if n >= 2 {
            let cf = ctx("closed-form derivative representation", n, Some(axis));
            let closed = monic_derivrep(pde, n, axis);
            let pick = |f: fn(&DerivRep) -> &RationalMatrix| {
                closed.as_ref().map(|d| f(d).clone()).map_err(Clone::clone)
            };
            v.push(cf.same(pick(|d| &d.v), Ok(d.v.clone())));
            v.push(cf.same(pick(|d| &d.y), Ok(d.y.clone())));
            v.push(cf.same(pick(|d| &d.z), Ok(d.z.clone())));
        }
        v
    }));
    out
}

fn structure_suite(fam: &MonicFamily, exec: Execution, grid: &[(usize, Axis)]) -> SuiteReport {
    let cases = match distinct_cases(&fam.pde) {
        Ok(c) => c,
        Err(e) => {
            return SuiteReport {
                name: "structure".into(),
                checks: 0,
                failures: Vec::new(),
                notes: vec![format!("skipped: {e}")],
            }
        }
    };
    let mut notes = Vec::new();
    let mut usable = Vec::new();
    for case in cases {
        match case.quadratic_coefficients(Axis::X).and(case.quadratic_coefficients(Axis::Y)) {
            Ok(_) => usable.push(case),
            Err(e) => notes.push(format!("case ({}) skipped: {e}", case.id.roman())),
        }
    }
    let items: Vec<(usize, Axis, usize)> =
        grid.iter().flat_map(|&(n, a)| (0..usable.len()).map(move |k| (n, a, k))).collect();
    let mut rep = suite("structure", exec, &items, |&(n, axis, k)| {
        let case = &usable[k];
        let c = ctx("structure identity", n, Some(axis));
        let st = match relations::structure_matrices(&fam.family, case, n, axis) {
            Ok(s) => s,
            Err(e) => return vec![Err(c.fail(e.to_string()))],
        };
        let mut v = vec![c.zero(relations::structure_residual(&fam.family, case, &st, n, axis))];
        if n >= 3 {
            let cf = ctx("closed-form structure", n, Some(axis));
            match monic_structure(fam, case, n, axis) {
                Ok(m) => {
                    v.push(cf.same(Ok(m.w), Ok(st.w.clone())));
                    v.push(cf.same(Ok(m.s), Ok(st.s.clone())));
                    v.push(cf.same(Ok(m.t), Ok(st.t.clone())));
                }
                Err(e) => v.push(Err(cf.fail(e.to_string()))),
            }
        }
        v
    });
    rep.notes = notes;
    rep
}

/// Builds the monic family and runs [`monic_suites`].
pub fn verify_pde(pde: &HypergeometricPde, opts: &VerifyOptions) -> Result<VerifyReport> {
    let fam = build_monic(pde, opts.max_degree)?;
    Ok(VerifyReport { suites: monic_suites(&fam, opts) })
}

/// Largest total degree used by the biorthogonality and Rodrigues grids.
const SMALL_DEGREE: usize = 4;

/// All monic suites plus the Appell-specific ones.
pub fn verify_appell(p: &AppellParams, opts: &VerifyOptions) -> Result<VerifyReport> {
    let pde = appell_pde(p);
    let fam = build_monic(&pde, opts.max_degree)?;
    let mut suites = monic_suites(&fam, opts);
    suites.extend(appell_suites(p, &fam, opts));
    Ok(VerifyReport { suites })
}

pub fn appell_suites(p: &AppellParams, fam: &MonicFamily, opts: &VerifyOptions) -> Vec<SuiteReport> {
    let top = fam.max_degree();
    let exec = opts.exec;
    let all: Vec<usize> = (0..=top).collect();
    let case = appell_case(p);
    let mut out = Vec::new();

    out.push(classification_suite(p));

    out.push(suite("orthogonality", exec, &all, |&n| {
        let mut v: Vec<Outcome> = (0..n)
            .map(|m| {
                let c = ctx("orthogonality", n, None);
                c.same(orthogonality_blocks(p, &fam.family, n, m), Ok(RationalMatrix::zeros(m + 1, n + 1)))
                    .map_err(|f| Failure { detail: format!("m={m}: {}", f.detail), ..f })
            })
            .collect();
        let c = ctx("orthogonality H_n", n, None);
        v.push(c.holds(orthogonality_blocks(p, &fam.family, n, n).and_then(|h| h.det()).map(|d| !d.is_zero()), || {
            "H_n is singular".into()
        }));
        v
    }));

    out.push(suite("series route", exec, &all, |&n| {
        let c = ctx("series route", n, None);
        let v = monic_appell_vector(p, n as u32);
        vec![c.zero(v.try_sub(fam.vector(n)))]
    }));

    out.push(golden_suite(p, fam, exec));

    let conn_top = top.min(5);
    let cdeg: Vec<usize> = (0..=conn_top).collect();
    out.push(suite("connections", exec, &cdeg, |&n| {
        let nu = n as u32;
        let a = fam.vector(n);
        let cf = ctx("F connection", n, None);
        let ck = ctx("K connection", n, None);
        let cr = ctx("Rodrigues connection", n, None);
        let f = f_vector(p, nu, Execution::Sequential);
        let mut v = vec![ck.zero(connection_k(p, nu).apply(a).and_then(|x| x.try_sub(&koornwinder_vector(p, nu))))];
        match f {
            Ok(f) => {
                v.push(cf.zero(connection_f(p, nu).apply(a).and_then(|x| x.try_sub(&f))));
                v.push(cr.same(connection_solve(&f, a), Ok(connection_f(p, nu))));
            }
            Err(e) => v.push(Err(cf.fail(e.to_string()))),
        }
        v
    }));

    let small = top.min(SMALL_DEGREE);
    let pairs: Vec<((u32, u32), (u32, u32))> = index_pairs(small);
    let l = MomentFunctional::new(p.clone());
    out.push(suite("biorthogonality", exec, &pairs, |&((n, m), (k, j))| {
        let c = ctx("biorthogonality", (n + m) as usize, None);
        let val = nonmonic_f(p, n, m).map(|f| l.apply(&(&f * &monic_appell_series(p, k, j))));
        let diagonal = (n, m) == (k, j);
        vec![c.holds(val.map(|v| v.is_zero() != diagonal), || {
            format!("L[F({n},{m}) A({k},{j})] has the wrong vanishing pattern")
        })]
    }));

    out.push(rodrigues_suite(p, fam, &case, exec, small));
    out
}

fn index_pairs(top: usize) -> Vec<((u32, u32), (u32, u32))> {
    let idx: Vec<(u32, u32)> =
        (0..=top as u32).flat_map(|d| (0..=d).map(move |m| (d - m, m))).collect();
    idx.iter().flat_map(|&a| idx.iter().map(move |&b| (a, b))).collect()
}

fn classification_suite(p: &AppellParams) -> SuiteReport {
    let pde = appell_pde(p);
    let case = appell_case(p);
    let mut checks = 1;
    let mut failures = Vec::new();
    let c = ctx("classification", 0, None);
    match classify_phi(&pde) {
        Ok(cases) => {
            let ids: Vec<PhiCaseId> = cases.iter().map(|c| c.id).collect();
            if ids != [PhiCaseId::VI, PhiCaseId::IX, PhiCaseId::X] {
                failures.push(c.fail(format!("cases {ids:?}")));
            }
            for k in &cases {
                checks += 1;
                if k.phi10 != case.phi10 || k.phi01 != case.phi01 {
                    failures.push(c.fail(format!("case ({}) gives ({}, {})", k.id.roman(), k.phi10, k.phi01)));
                }
            }
        }
        Err(e) => failures.push(c.fail(e.to_string())),
    }
    let w = crate::families::appell_weight(p);
    for r in 0..=3 {
        for s in 0..=3 {
            checks += 1;
            let c = ctx("Pearson", (r + s) as usize, None);
            if let Err(f) = c.holds(verify_pearson_with(&pde, &w, &case, r, s), || format!("(r,s) = ({r},{s})")) {
                failures.push(f);
            }
        }
    }
    SuiteReport { name: "classification".into(), checks, failures, notes: Vec::new() }
}

fn golden_suite(p: &AppellParams, fam: &MonicFamily, exec: Execution) -> SuiteReport {
    use GoldenMatrix::*;
    let top = fam.max_degree();
    let case = appell_case(p);
    let items: Vec<(GoldenMatrix, usize)> = GoldenMatrix::ALL
        .into_iter()
        // below degree 3 the structure blocks read P_{n+1} from the family
        .flat_map(|g| (g.min_degree()..=top).map(move |n| (g, n)))
        .filter(|&(g, n)| n < top || n >= 3 || !matches!(g, W1 | W2 | S1 | S2 | T1 | T2))
        .collect();
    suite("golden", exec, &items, |&(g, n)| {
        let axis = Axis::from_index(g.axis_index()).expect("1 or 2");
        let name = format!("golden {g}");
        let c = ctx(&name, n, Some(axis));
        let computed: Result<RationalMatrix> = match g {
            B1 | B2 => monic_ttrr(&fam.pde, n).map(|t| t[axis].b.clone()),
            C1 | C2 => monic_ttrr(&fam.pde, n).map(|t| t[axis].c.clone()),
            W1 | W2 => monic_structure(fam, &case, n, axis).map(|s| s.w),
            S1 | S2 => monic_structure(fam, &case, n, axis).map(|s| s.s),
            T1 | T2 => monic_structure(fam, &case, n, axis).map(|s| s.t),
            V1 | V2 => monic_derivrep(&fam.pde, n, axis).map(|d| d.v),
            Y1 | Y2 => monic_derivrep(&fam.pde, n, axis).map(|d| d.y),
            Z1 | Z2 => monic_derivrep(&fam.pde, n, axis).map(|d| d.z),
        };
        vec![c.same(computed, golden_matrices(p, n, g))]
    })
}

fn rodrigues_suite(p: &AppellParams, fam: &MonicFamily, case: &PhiCase, exec: Execution, top: usize) -> SuiteReport {
    let w = crate::families::appell_weight(p);
    let degrees: Vec<usize> = (0..=top).collect();
    let mut rep = suite("rodrigues", exec, &degrees, |&big| {
        let nu = big as u32;
        let c = ctx("Rodrigues span", big, None);
        let mut v = Vec::new();
        let vecs: Result<Vec<_>> = (0..=nu).map(|k| rodrigues_eval(&w, case, nu - k, k)).collect();
        let vecs = match vecs {
            Ok(r) => PolyVector::new(r),
            Err(e) => return vec![Err(c.fail(e.to_string()))],
        };
        v.push(c.zero(Ok(vecs.iter().map(|q| fam.pde.residual(q, big as u64)).collect())));
        v.push(c.holds(
            connection_solve(&vecs, fam.vector(big)).and_then(|m| m.det()).map(|d| !d.is_zero()),
            || "connection matrix is singular".into(),
        ));
        // The derivative formula gives solutions of the derived equation; it
        // is proportional to the differentiated polynomial only for pure or
        // extreme indices, so mixed indices are compared through a connection.
        for r in 0..=nu {
            for s in 0..=nu - r {
                let cd = ctx("Rodrigues derivative", big, None);
                let derived = fam.pde.derived(r, s, big as u64);
                let ms: Vec<u32> = (s..=nu - r).collect();
                let rod: Result<Vec<_>> =
                    ms.iter().map(|&m| rodrigues_derivative_eval(&w, case, nu - m, m, r, s)).collect();
                let rod = match rod {
                    Ok(x) => PolyVector::new(x),
                    Err(e) => {
                        v.push(Err(cd.fail(e.to_string())));
                        continue;
                    }
                };
                let diffd: PolyVector = ms.iter().map(|&m| partial(&vecs[m as usize], r, s)).collect();
                v.push(cd.zero(Ok(rod.iter().map(|q| derived.apply(q)).collect())));
                v.push(cd.holds(connection_solve(&diffd, &rod).and_then(|m| m.det()).map(|d| !d.is_zero()), || {
                    format!("(r,s) = ({r},{s}): derivatives and formula span different spaces")
                }));
                for (k, &m) in ms.iter().enumerate() {
                    let n = nu - m;
                    if n == 0 || m == 0 || (r, s) == (0, 0) || (r, s) == (n, m) {
                        v.push(cd.holds(Ok(rod[k].ratio_to(&diffd[k]).is_some_and(|q| !q.is_zero())), || {
                            format!("(n,m,r,s) = ({n},{m},{r},{s}) not proportional")
                        }));
                    }
                }
            }
        }
        v
    });
    rep.notes.push(format!("degrees <= {top}"));
    rep
}

fn partial(p: &crate::algebra::BivariatePoly, r: u32, s: u32) -> crate::algebra::BivariatePoly {
    let mut out = p.clone();
    for _ in 0..r {
        out = out.diff(Axis::X);
    }
    for _ in 0..s {
        out = out.diff(Axis::Y);
    }
    out
}
