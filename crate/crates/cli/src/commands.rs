use opde::algebra::{Axis, RationalMatrix};
use opde::families::{appell_case, appell_weight, connection_f, connection_k, f_vector, koornwinder_vector};
use opde::monic::{build_monic, monic_structure, monic_ttrr};
use opde::relations::derivative_representation;
use opde::rodrigues::rodrigues_vector;
use opde::verify::{verify_appell, verify_pde, Fault, VerifyOptions};
use opde::weight::{classify_phi, verify_pearson, verify_pearson_with, PhiCase};

use crate::render::Node;
use crate::{CliError, Config, FamilyKind, Format, Source};

type Outcome = Result<(), CliError>;

fn per_axis(f: impl Fn(Axis) -> RationalMatrix) -> Node {
    Node::map([("x", Node::Matrix(f(Axis::X))), ("y", Node::Matrix(f(Axis::Y)))])
}

/// The report is produced even when a verdict fails; the outcome carries
/// the exit status.
pub fn check(cfg: &Config) -> (Node, Outcome) {
    let pde = cfg.source.pde();
    let varpi: Vec<Node> = (0..=2 * cfg.n as u64).map(|k| Node::Rational(pde.varpi(k))).collect();
    let admissible = pde.check_admissible(cfg.n as u64);
    let adjoint = pde.is_potentially_self_adjoint(0, 0);
    let mut doc = vec![
        ("varpi".to_string(), Node::List(varpi)),
        ("admissible".to_string(), Node::Bool(admissible.is_ok())),
    ];
    if let Err(opde::Error::NotAdmissible { k }) = &admissible {
        doc.push(("vanishing_index".into(), Node::Int(*k)));
    }
    doc.push((
        "self_adjoint".into(),
        match &adjoint {
            Ok(b) => Node::Bool(*b),
            Err(e) => Node::text(e.to_string()),
        },
    ));
    doc.push(("discriminant".into(), Node::Poly(pde.discriminant())));
    let outcome = match (admissible, adjoint) {
        (Err(e), _) | (Ok(_), Err(e)) => Err(e.into()),
        (Ok(_), Ok(false)) => Err(opde::Error::NotSelfAdjoint.into()),
        (Ok(_), Ok(true)) => Ok(()),
    };
    (Node::Map(doc), outcome)
}

fn case_node(c: &PhiCase) -> Node {
    Node::map([
        ("case", Node::text(c.id.roman())),
        ("phi10", Node::Poly(c.phi10.clone())),
        ("phi01", Node::Poly(c.phi01.clone())),
    ])
}

pub fn classify(cfg: &Config) -> Result<(Node, Outcome), CliError> {
    let cases = classify_phi(&cfg.source.pde())?;
    Ok((Node::map([("cases", Node::List(cases.iter().map(case_node).collect()))]), Ok(())))
}

pub fn build(cfg: &Config) -> Result<Node, CliError> {
    match (&cfg.source, cfg.family) {
        (_, FamilyKind::Monic) => build_monic_doc(cfg),
        (Source::Appell(p), kind) => {
            let degrees = (0..=cfg.n as u32)
                .map(|n| {
                    let (v, g) = match kind {
                        FamilyKind::AppellF => (f_vector(p, n, cfg.exec)?, connection_f(p, n)),
                        _ => (koornwinder_vector(p, n), connection_k(p, n)),
                    };
                    Ok(Node::map([("n", Node::Int(n.into())), ("P", Node::Vector(v)), ("connection", Node::Matrix(g))]))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let name = if kind == FamilyKind::AppellF { "appell-F" } else { "koornwinder" };
            Ok(Node::map([("family", Node::text(name)), ("degrees", Node::List(degrees))]))
        }
        (Source::Pde(_), _) => unreachable!("rejected while resolving options"),
    }
}

fn build_monic_doc(cfg: &Config) -> Result<Node, CliError> {
    let pde = cfg.source.pde();
    let fam = build_monic(&pde, cfg.n + 1)?;
    let case = classify_phi(&pde).ok().and_then(|cs| cs.into_iter().next());
    let mut degrees = Vec::with_capacity(cfg.n + 1);
    for n in 0..=cfg.n {
        let t = monic_ttrr(&pde, n)?;
        let mut d = vec![("n".to_string(), Node::Int(n as u64)), ("P".into(), Node::Vector(fam.vector(n).clone()))];
        if n == 0 {
            d.push(("B".into(), per_axis(|a| t[a].b.clone())));
            degrees.push(Node::Map(d));
            continue;
        }
        d.push(("A".into(), per_axis(|a| t[a].a.clone())));
        d.push(("B".into(), per_axis(|a| t[a].b.clone())));
        d.push(("C".into(), per_axis(|a| t[a].c.clone())));
        // Structure matrices need quadratic factors; other cases are left out.
        if let Some(c) = &case {
            if let (Ok(sx), Ok(sy)) = (monic_structure(&fam, c, n, Axis::X), monic_structure(&fam, c, n, Axis::Y)) {
                let both = [sx, sy];
                let pick = |f: fn(&opde::relations::Structure) -> &RationalMatrix| {
                    Node::map([("x", Node::Matrix(f(&both[0]).clone())), ("y", Node::Matrix(f(&both[1]).clone()))])
                };
                d.push(("W".into(), pick(|s| &s.w)));
                d.push(("S".into(), pick(|s| &s.s)));
                d.push(("T".into(), pick(|s| &s.t)));
            }
        }
        let rx = derivative_representation(&fam.family, n, Axis::X)?;
        let ry = derivative_representation(&fam.family, n, Axis::Y)?;
        d.push(("V".into(), Node::map([("x", Node::Matrix(rx.v)), ("y", Node::Matrix(ry.v))])));
        d.push(("Y".into(), Node::map([("x", Node::Matrix(rx.y)), ("y", Node::Matrix(ry.y))])));
        d.push(("Z".into(), Node::map([("x", Node::Matrix(rx.z)), ("y", Node::Matrix(ry.z))])));
        degrees.push(Node::Map(d));
    }
    let mut doc = vec![("family".to_string(), Node::text("monic"))];
    if let Some(c) = &case {
        doc.push(("phi".into(), case_node(c)));
    }
    doc.push(("degrees".into(), Node::List(degrees)));
    Ok(Node::Map(doc))
}

pub fn rodrigues(cfg: &Config) -> Result<Node, CliError> {
    if let (Source::Appell(p), FamilyKind::AppellF, None) = (&cfg.source, cfg.family, &cfg.weight) {
        let degrees = (0..=cfg.n as u32)
            .map(|n| Ok(Node::map([("n", Node::Int(n.into())), ("F", Node::Vector(f_vector(p, n, cfg.exec)?))])))
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(Node::map([("family", Node::text("appell-F")), ("degrees", Node::List(degrees))]));
    }
    let pde = cfg.source.pde();
    let (weight, case) = match (&cfg.source, &cfg.weight) {
        (Source::Appell(p), None) => (appell_weight(p), appell_case(p)),
        (_, Some(w)) => {
            if !verify_pearson(&pde, w, 0, 0)? {
                return Err(CliError::Usage("the weight does not satisfy the Pearson system of the equation".into()));
            }
            let case = classify_phi(&pde)?
                .into_iter()
                .find(|c| verify_pearson_with(&pde, w, c, 1, 1).unwrap_or(false))
                .ok_or(opde::Error::NoCaseMatches)?;
            (w.clone(), case)
        }
        (Source::Pde(_), None) => return Err(CliError::Usage("rodrigues with --pde needs --weight <file>".into())),
    };
    let degrees = (0..=cfg.n as u32)
        .map(|n| {
            let v = rodrigues_vector(&weight, &case, n, cfg.exec)?;
            Ok(Node::map([("n", Node::Int(n.into())), ("R", Node::Vector(v))]))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Node::map([("phi", case_node(&case)), ("degrees", Node::List(degrees))]))
}

pub fn verify(cfg: &Config) -> Result<(Node, Outcome), CliError> {
    let opts = VerifyOptions::new(cfg.n)
        .with_exec(cfg.exec)
        .with_fault(cfg.fault.then_some(Fault::CorruptB1));
    let report = match &cfg.source {
        Source::Appell(p) => verify_appell(p, &opts)?,
        Source::Pde(pde) => verify_pde(pde, &opts)?,
    };
    let doc = if cfg.format == Format::Pretty {
        Node::Map(report.suites.iter().map(|s| (s.name.clone(), Node::text(summary(s)))).collect())
    } else {
        let suites = report
            .suites
            .iter()
            .map(|s| {
                Node::map([
                    ("name", Node::text(&s.name)),
                    ("checks", Node::Int(s.checks as u64)),
                    ("passed", Node::Bool(s.passed())),
                    ("failures", Node::List(s.failures.iter().map(|f| Node::text(f.to_string())).collect())),
                    ("notes", Node::List(s.notes.iter().map(Node::text).collect())),
                ])
            })
            .collect();
        Node::map([("passed", Node::Bool(report.passed())), ("suites", Node::List(suites))])
    };
    let outcome = match report.first_failure() {
        Some(f) => Err(CliError::Verify(f.clone())),
        None => Ok(()),
    };
    Ok((doc, outcome))
}

/// The suite line without its name, which the pretty renderer prints as the key.
fn summary(s: &opde::verify::SuiteReport) -> String {
    let line = s.to_string();
    line.strip_prefix(&format!("{}: ", s.name)).unwrap_or(&line).to_string()
}

