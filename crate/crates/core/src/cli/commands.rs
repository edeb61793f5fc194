//! Subcommand handlers.

use serde_json::{json, Value};

use super::{read_arg, CliError, Command, Outcome, Report, RunConfig};
use crate::almostinv::{
    basis_family, householder_family, orthogonalize, parse_sequence, scale_and_witness,
    sparsify_weak_null, windows_family, Family, WitnessOutcome,
};
use crate::duality::{
    dual_conjugacy_transport, fixed_counts, parse_matrices, toral_ergodicity, AutoAction,
    ErgodicVerdict, FiniteAbelian, IntMatrix,
};
use crate::exactalg::{IntPoly, Rational};
use crate::groups::{
    validate_measure, GenMeasure, GroupElem, GroupSpec, DEFAULT_BALL_CAP, DEFAULT_ORDER_CAP,
};
use crate::markov::{
    gap_bound_audit, kesten_verdict, spectral_radius_truncated, top_eigenvalue, Verdict,
    DEFAULT_TOL,
};
use crate::reps::{inner, Label, MatrixRep, Rep, Scalar, VectorH};
use crate::zconj::{build_xi, decide_conjugacy, UnitAlgebraic};

const DEFAULT_RADII: &[usize] = &[2, 3, 4, 5, 6, 7, 8];
const DEFAULT_SAMPLES: usize = 10_000;
const FLOAT_HALF_TOL: f64 = 1e-9;

pub(super) fn dispatch(config: &RunConfig, report: &mut Report) -> Result<Outcome, CliError> {
    match &config.command {
        Command::Amenable { theta } => amenable(config, *theta, report),
        Command::Spectral { rep } => spectral(config, rep.as_deref(), report),
        Command::Orthogonalize {
            sequence,
            rep,
            target,
        } => orthogonalize_cmd(config, sequence, rep.as_deref(), *target, report),
        Command::Witness {
            sequence,
            rep,
            n,
            float,
        } => witness_cmd(config, sequence, rep.as_deref(), *n, *float, report),
        Command::Sparsify {
            sequence,
            rep,
            elems,
            n,
            float,
        } => sparsify_cmd(config, sequence, rep.as_deref(), elems.as_deref(), *n, *float, report),
        Command::Duality {
            abelian,
            action,
            transport,
            action2,
        } => duality_cmd(config, abelian, action, transport.as_deref(), action2.as_deref(), report),
        Command::Ergodic { matrix } => ergodic_cmd(matrix, report),
        Command::Zconj { z, w, trace } => zconj_cmd(z, w, trace.as_deref(), report),
        Command::Audit { rep } => audit_cmd(config, rep, report),
    }
}

fn scalar_json<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.to_string())
    } else {
        json!(x.to_float())
    }
}

fn group_or(config: &RunConfig, default: &str) -> Result<GroupSpec, CliError> {
    Ok(config.group.as_deref().unwrap_or(default).parse()?)
}

fn required_group(config: &RunConfig) -> Result<GroupSpec, CliError> {
    match &config.group {
        Some(g) => Ok(g.parse()?),
        None => Err(CliError::Usage("--group is required".to_string())),
    }
}

fn measure(config: &RunConfig, group: &GroupSpec) -> Result<GenMeasure, CliError> {
    let mu = match config.measure.as_deref() {
        None | Some("lazy-uniform") | Some("lazy") => GenMeasure::lazy_uniform(group),
        Some(m) => {
            let text = read_arg(m)?.unwrap_or_else(|| m.replace(';', "\n"));
            GenMeasure::parse(group, &text)?
        }
    };
    Ok(validate_measure(group, &mu)?)
}

/// Matrix text from a file, or inline with `/` between rows and `--`
/// between matrices.
fn matrix_text(arg: &str) -> Result<String, CliError> {
    if let Some(t) = read_arg(arg)? {
        return Ok(t);
    }
    let parts: Vec<String> = arg.split("--").map(|p| p.replace('/', "\n")).collect();
    Ok(parts.join("\n--\n"))
}

fn single_matrix(arg: &str) -> Result<IntMatrix, CliError> {
    let mut ms = parse_matrices(&matrix_text(arg)?)?;
    if ms.len() != 1 {
        return Err(CliError::Usage(format!("expected one matrix, found {}", ms.len())));
    }
    Ok(ms.remove(0))
}

/// A representation with its sequence, exact when the input allows.
enum Loaded {
    Float(Rep<f64>, Vec<VectorH<f64>>),
    Exact(Rep<Rational>, Vec<VectorH<Rational>>),
}

impl Loaded {
    fn into_float(self) -> Result<(Rep<f64>, Vec<VectorH<f64>>), CliError> {
        match self {
            Loaded::Float(r, v) => Ok((r, v)),
            Loaded::Exact(r, v) => Ok((r.to_f64()?, v.iter().map(VectorH::to_f64).collect())),
        }
    }

    fn group(&self) -> &GroupSpec {
        match self {
            Loaded::Float(r, _) => r.group(),
            Loaded::Exact(r, _) => r.group(),
        }
    }
}

fn elem_length(g: &GroupElem) -> usize {
    match g {
        GroupElem::Word(w) => w.len(),
        GroupElem::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
        GroupElem::Perm(_) => 0,
    }
}

fn parse_matrix_rep<S: Scalar>(group: &GroupSpec, text: &str) -> Result<Rep<S>, CliError> {
    Ok(Rep::Matrix(MatrixRep::parse(group.clone(), text)?))
}

fn rep_text(arg: &str) -> Result<String, CliError> {
    Ok(read_arg(arg)?.unwrap_or_else(|| arg.replace('/', "\n")))
}

fn load_file_sequence<S: Scalar>(
    config: &RunConfig,
    group: &GroupSpec,
    text: &str,
    rep: Option<&str>,
) -> Result<(Rep<S>, Vec<VectorH<S>>), CliError> {
    match rep {
        Some(r) => {
            let rep = parse_matrix_rep::<S>(group, &rep_text(r)?)?;
            let seq = parse_sequence::<S>(text, |s| {
                s.parse::<usize>().map(Label::Index).map_err(|_| crate::reps::RepError::Parse {
                    what: "coordinate index",
                    input: s.to_string(),
                })
            })?;
            Ok((rep, seq))
        }
        None => {
            let seq = parse_sequence::<S>(text, |s| Ok(Label::Elem(group.parse_elem(s)?)))?;
            let cap = config.cap_or(DEFAULT_BALL_CAP)?;
            let radius = if group.is_finite() {
                group.order(cap)?.unwrap_or(cap)
            } else {
                let longest = seq
                    .iter()
                    .flat_map(|v| v.entries().map(|(l, _)| l.clone()).collect::<Vec<_>>())
                    .map(|l| match l {
                        Label::Elem(g) => elem_length(&g),
                        Label::Index(_) => 0,
                    })
                    .max()
                    .unwrap_or(0);
                longest + 1
            };
            Ok((Rep::regular(group.clone(), radius, cap)?, seq))
        }
    }
}

fn load_sequence(
    config: &RunConfig,
    sequence: &str,
    rep: Option<&str>,
    float: bool,
) -> Result<Loaded, CliError> {
    let loaded = match read_arg(sequence)? {
        Some(text) => {
            let group = group_or(config, "z:1")?;
            if float {
                let (r, v) = load_file_sequence::<f64>(config, &group, &text, rep)?;
                return Ok(Loaded::Float(r, v));
            }
            match load_file_sequence::<Rational>(config, &group, &text, rep) {
                Ok((r, v)) => Loaded::Exact(r, v),
                Err(_) => {
                    let (r, v) = load_file_sequence::<f64>(config, &group, &text, rep)?;
                    Loaded::Float(r, v)
                }
            }
        }
        None => {
            let family: Family = sequence.parse()?;
            if rep.is_some() {
                return Err(CliError::Usage(
                    "--rep applies to sequence files, not named families".to_string(),
                ));
            }
            match family {
                Family::Windows(n) => {
                    let (r, v) = windows_family(n)?;
                    Loaded::Float(r, v)
                }
                Family::Basis(n) if float => {
                    let (r, v) = basis_family::<f64>(n)?;
                    Loaded::Float(r, v)
                }
                Family::Basis(n) => {
                    let (r, v) = basis_family::<Rational>(n)?;
                    Loaded::Exact(r, v)
                }
                Family::Householder(n) => {
                    let (r, v) = householder_family(n)?;
                    if float {
                        Loaded::Exact(r, v).into_float().map(|(r, v)| Loaded::Float(r, v))?
                    } else {
                        Loaded::Exact(r, v)
                    }
                }
            }
        }
    };
    if let Some(g) = &config.group {
        let g: GroupSpec = g.parse()?;
        if &g != loaded.group() {
            return Err(CliError::Usage(format!(
                "sequence {sequence} lives on {}, not {g}",
                loaded.group()
            )));
        }
    }
    Ok(loaded)
}

fn amenable(config: &RunConfig, theta: f64, report: &mut Report) -> Result<Outcome, CliError> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(CliError::Usage(format!("threshold {theta} must lie in (0, 1]")));
    }
    let group = required_group(config)?;
    let mu = measure(config, &group)?;
    let radii = config
        .radii
        .as_ref()
        .map(|r| r.0.clone())
        .unwrap_or_else(|| DEFAULT_RADII.to_vec());
    let tol = config.tol_or(DEFAULT_TOL)?;
    let cap = config.cap_or(DEFAULT_BALL_CAP)?;
    let rep = kesten_verdict(&group, &mu, &radii, theta, tol, cap)?;
    for (r, e) in rep.radii.iter().zip(&rep.estimates) {
        report.emit(json!({"radius": r, "estimate": e}))?;
    }
    if let Some((order, top, second)) = rep.finite {
        report.emit(json!({"order": order, "top": top, "second": second}))?;
    }
    let amenable = if rep.finite.is_some() {
        Some(true)
    } else {
        match rep.verdict {
            Verdict::Gap => Some(false),
            Verdict::NoGap => Some(true),
            Verdict::Inconclusive => None,
        }
    };
    report.emit(json!({
        "verdict": rep.verdict.as_str(),
        "margin": rep.margin,
        "plateau": rep.plateau,
        "amenable": amenable,
        "inconclusive": rep.verdict == Verdict::Inconclusive,
    }))?;
    Ok(Outcome::negative_if(amenable == Some(false)))
}

fn spectral(config: &RunConfig, rep: Option<&str>, report: &mut Report) -> Result<Outcome, CliError> {
    let tol = config.tol_or(DEFAULT_TOL)?;
    if let Some(r) = rep {
        let group = group_or(config, "z:1")?;
        let mu = measure(config, &group)?;
        let rep = parse_matrix_rep::<f64>(&group, &rep_text(r)?)?;
        let top = top_eigenvalue(&rep, &mu, tol)?;
        report.emit(json!({"dim": rep.dim(), "estimate": top}))?;
        return Ok(Outcome::Success);
    }
    let group = required_group(config)?;
    let mu = measure(config, &group)?;
    let cap = config.cap_or(DEFAULT_BALL_CAP)?;
    let radii = config
        .radii
        .as_ref()
        .map(|r| r.0.clone())
        .unwrap_or_else(|| DEFAULT_RADII.to_vec());
    for r in radii {
        let rep = Rep::<f64>::regular(group.clone(), r, cap)?;
        let e = spectral_radius_truncated(&rep, &mu, r, tol)?;
        report.emit(json!({"radius": r, "ball": rep.dim(), "estimate": e}))?;
    }
    Ok(Outcome::Success)
}

fn orthogonalize_cmd(
    config: &RunConfig,
    sequence: &str,
    rep: Option<&str>,
    target: Option<usize>,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    let (rep, seq) = load_sequence(config, sequence, rep, true)?.into_float()?;
    let mu = measure(config, rep.group())?;
    let out = orthogonalize(&rep, &mu, &seq, target)?;
    let mut holds = true;
    for step in &out.steps {
        for d in &step.defects {
            let ok = d.output <= d.bound;
            holds &= ok;
            report.emit(json!({
                "k": step.k,
                "m": step.m,
                "g": d.g.to_string(),
                "projection": step.projection_norm,
                "source_defect": d.source,
                "output_defect": d.output,
                "bound": d.bound,
                "holds": ok,
            }))?;
        }
    }
    let mut gram_error: f64 = 0.0;
    for (i, a) in out.vectors.iter().enumerate() {
        for (j, b) in out.vectors.iter().enumerate().skip(i) {
            let expected = if i == j { 1.0 } else { 0.0 };
            gram_error = gram_error.max((inner(a, b)? - expected).abs());
        }
    }
    report.emit(json!({
        "outputs": out.vectors.len(),
        "sources": out.sources,
        "gram_error": gram_error,
        "exhausted_at": out.exhausted_at,
        "bound_holds": holds,
    }))?;
    Ok(Outcome::negative_if(!holds))
}

fn witness_report<S: Scalar>(
    config: &RunConfig,
    rep: &Rep<S>,
    seq: &[VectorH<S>],
    n: usize,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    let mu = measure(config, rep.group())?;
    match scale_and_witness(rep, &mu, seq, n)? {
        WitnessOutcome::Invariant { index, vector } => {
            report.emit(json!({"invariant_index": index, "witness_nnz": vector.nnz()}))?;
        }
        WitnessOutcome::Bundle(b) => {
            let half = S::from_rational(&Rational::new(1.into(), 2.into()));
            let mut all_half = true;
            for (i, (idx, (eps, pairing))) in b
                .indices
                .iter()
                .zip(b.epsilons.iter().zip(&b.pairings))
                .enumerate()
            {
                all_half &= if S::EXACT {
                    *pairing == half
                } else {
                    (pairing.to_float() - 0.5).abs() <= FLOAT_HALF_TOL
                };
                report.emit(json!({
                    "n": i + 1,
                    "index": idx,
                    "epsilon": scalar_json(eps),
                    "pairing": scalar_json(pairing),
                }))?;
            }
            report.emit(json!({
                "selected": b.indices.len(),
                "exact": S::EXACT,
                "witness_nnz": b.witness.nnz(),
                "pairings_half": all_half,
            }))?;
        }
    }
    Ok(Outcome::Success)
}

fn witness_cmd(
    config: &RunConfig,
    sequence: &str,
    rep: Option<&str>,
    n: usize,
    float: bool,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    match load_sequence(config, sequence, rep, float)? {
        Loaded::Float(r, v) => witness_report(config, &r, &v, n, report),
        Loaded::Exact(r, v) => witness_report(config, &r, &v, n, report),
    }
}

fn sparsify_report<S: Scalar>(
    rep: &Rep<S>,
    seq: &[VectorH<S>],
    elems: Option<&str>,
    n: usize,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    let group = rep.group();
    let elems: Vec<GroupElem> = match elems {
        Some(text) => text
            .split(',')
            .map(|s| group.parse_elem(s.trim()))
            .collect::<Result<_, _>>()?,
        None => group.standard_generators(),
    };
    let out = sparsify_weak_null(rep, seq, &elems, n)?;
    for c in &out.checks {
        report.emit(json!({
            "n": c.n,
            "j": c.j,
            "g": c.g.to_string(),
            "value": scalar_json(&c.value),
            "bound": scalar_json(&c.bound),
        }))?;
    }
    report.emit(json!({"indices": out.indices, "combined_nnz": out.combined.nnz()}))?;
    Ok(Outcome::Success)
}

fn sparsify_cmd(
    config: &RunConfig,
    sequence: &str,
    rep: Option<&str>,
    elems: Option<&str>,
    n: usize,
    float: bool,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    match load_sequence(config, sequence, rep, float)? {
        Loaded::Float(r, v) => sparsify_report(&r, &v, elems, n, report),
        Loaded::Exact(r, v) => sparsify_report(&r, &v, elems, n, report),
    }
}

fn action_from(
    config: &RunConfig,
    a: &FiniteAbelian,
    arg: &str,
) -> Result<AutoAction, CliError> {
    let ms = parse_matrices(&matrix_text(arg)?)?;
    Ok(match &config.group {
        Some(g) => AutoAction::new(g.parse()?, a.clone(), ms)?,
        None => AutoAction::with_default_group(a.clone(), ms)?,
    })
}

fn duality_cmd(
    config: &RunConfig,
    abelian: &str,
    action: &str,
    transport: Option<&str>,
    action2: Option<&str>,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    let text = read_arg(abelian)?.unwrap_or_else(|| abelian.to_string());
    let parsed: FiniteAbelian = text.parse()?;
    let cap = config.cap_or(DEFAULT_ORDER_CAP)?;
    let a = FiniteAbelian::with_cap(parsed.factors().to_vec(), cap as u64)?;
    let act = action_from(config, &a, action)?;
    let (fixed, fixed_dual) = fixed_counts(&act);
    report.emit(json!({
        "order": a.order(),
        "fixed_elements": fixed,
        "fixed_characters": fixed_dual,
        "equal": fixed == fixed_dual,
    }))?;
    if let Some(xi) = transport {
        let xi = single_matrix(xi)?;
        let act2 = match action2 {
            Some(t) => action_from(config, &a, t)?,
            None => act.clone(),
        };
        let t = dual_conjugacy_transport(&xi, &act, &act2)?;
        report.emit(json!({"transport_verified": t.verified}))?;
    }
    Ok(Outcome::negative_if(fixed != fixed_dual))
}

fn ergodic_cmd(matrix: &str, report: &mut Report) -> Result<Outcome, CliError> {
    let m = single_matrix(matrix)?;
    match toral_ergodicity(&m)? {
        ErgodicVerdict::Ergodic { char_poly } => {
            report.emit(json!({
                "verdict": "Ergodic",
                "char_poly": char_poly.to_string(),
                "k": null,
                "witness": null,
                "orbit": null,
            }))?;
            Ok(Outcome::Success)
        }
        ErgodicVerdict::NotErgodic {
            k,
            char_poly,
            witness,
        } => {
            let (w, orbit) = match witness {
                Some((w, o)) => (json!(w), json!(o)),
                None => (Value::Null, Value::Null),
            };
            report.emit(json!({
                "verdict": "NotErgodic",
                "char_poly": char_poly.to_string(),
                "k": k,
                "witness": w,
                "orbit": orbit,
            }))?;
            Ok(Outcome::Negative)
        }
    }
}

fn zconj_cmd(z: &str, w: &str, trace: Option<&str>, report: &mut Report) -> Result<Outcome, CliError> {
    let zu: UnitAlgebraic = z.parse()?;
    let wu: UnitAlgebraic = w.parse()?;
    let verdict = decide_conjugacy(&zu, &wu);
    report.emit(json!({
        "conjugate": verdict.conjugate,
        "certificate": verdict.certificate.to_string(),
    }))?;
    if let (Some(p), true) = (trace, verdict.conjugate) {
        let xi = build_xi(&zu, &wu)?;
        let p: IntPoly = p.parse()?;
        let a = xi.domain().reduce_int(&p);
        let b = xi.apply(&a)?;
        let (at_z, at_w) = xi.trace(&a)?;
        report.emit(json!({
            "element": a.to_string(),
            "image": b.to_string(),
            "value_re": at_z.re,
            "value_im": at_z.im,
            "image_re": at_w.re,
            "image_im": at_w.im,
        }))?;
    }
    Ok(Outcome::negative_if(!verdict.conjugate))
}

fn audit_report<S: Scalar>(
    config: &RunConfig,
    rep: &Rep<S>,
    report: &mut Report,
) -> Result<Outcome, CliError> {
    let mu = measure(config, rep.group())?;
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let a = gap_bound_audit(rep, &mu, samples, config.seed)?;
    report.emit(json!({
        "dim": rep.dim(),
        "epsilon": a.epsilon,
        "epsilon_upper": a.epsilon_upper,
        "bound": a.bound,
        "samples": a.samples,
        "max_observed": a.max_observed,
        "passed": a.passed,
    }))?;
    Ok(Outcome::negative_if(!a.passed))
}

fn audit_cmd(config: &RunConfig, rep: &str, report: &mut Report) -> Result<Outcome, CliError> {
    let group = group_or(config, "z:1")?;
    let text = rep_text(rep)?;
    match parse_matrix_rep::<Rational>(&group, &text) {
        Ok(r) => audit_report(config, &r, report),
        Err(CliError::Rep(crate::reps::RepError::Parse { .. })) => {
            let r = parse_matrix_rep::<f64>(&group, &text)?;
            audit_report(config, &r, report)
        }
        Err(e) => Err(e),
    }
}
