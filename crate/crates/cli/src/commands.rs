//! The subcommands. Each one builds a [`Report`]; precondition failures are
//! usage errors.

use rayon::prelude::*;
use serde_json::{json, Value};

use starshape::algebra::rational::to_f64;
use starshape::algebra::rat;
use starshape::characters::{gamma_form, special_character, sum_highest_defect, ts_eigen_defect};
use starshape::graph::{classify, hypothesis_residual, solve_positive_roots, star_graphs};
use starshape::independence::{certify_infinite_dimensional, minimal_hyperbolic_graphs, solution_field};
use starshape::locally_scalar::{
    closed_form_iterate, coxeter_step, decompose, iterate, limit_target, normalize, parity_evolution, rho,
    sigma_reflect, special_ls_character, vertex_parity, vertices, IterateKind, Parity,
};
use starshape::{Certificate, GraphClass, GraphKind, Rational, RootChoice, Scalar, StarGraph};

use crate::report::{enclosure, object, rational, rationals, Report, Status};

pub enum CliError {
    /// Bad arguments or an unmet precondition: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Internal(String),
}

impl From<starshape::Error> for CliError {
    fn from(e: starshape::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Root enclosures feeding floating-point checks are far finer than any
/// verification tolerance.
fn root_precision() -> Rational {
    rat(1, 1_000_000_000_000_000)
}

/// Residual allowed when accepting a floating root as a solution.
const SOLUTION_TOL: f64 = 1e-9;

/// Residual above which the sweep records a counterexample.
const HYPOTHESIS_TOL: f64 = 1e-8;

fn class_label(class: &GraphClass) -> String {
    match class.name() {
        Some(name) => format!("{} {name}", class.kind()),
        None => class.kind().to_string(),
    }
}

pub fn classify_cmd(g: &StarGraph, precision: &Rational) -> CliResult<Report> {
    let class = classify(g);
    let mut entries = vec![("kind", json!(class.kind().to_string())), ("name", json!(class.name()))];
    match class.kind() {
        GraphKind::Dynkin => {}
        GraphKind::ExtendedDynkin => entries.push(("t", json!("1"))),
        GraphKind::Hyperbolic => {
            let roots = solve_positive_roots(g, precision)?;
            entries.push(("t1", enclosure(&roots.t1, precision)));
            entries.push(("t2", enclosure(&roots.t2, precision)));
            entries.push(("precision", rational(precision)));
        }
    }
    Ok(Report {
        command: "classify",
        graph: Some(g.clone()),
        class: Some(class_label(&class)),
        results: object(entries),
        status: Status::Reported,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    TsEigen,
    Gamma,
    Eq5,
    Prop5,
    Rho,
    Limits,
    Sigma,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::TsEigen => "ts-eigen",
            Check::Gamma => "gamma",
            Check::Eq5 => "eq5",
            Check::Prop5 => "prop5",
            Check::Rho => "rho",
            Check::Limits => "limits",
            Check::Sigma => "sigma",
        }
    }
}

struct Outcome {
    ok: bool,
    deviation: f64,
}

fn size<S: Scalar>(x: &S) -> f64 {
    if x.is_zero_within(0.0) {
        0.0
    } else {
        x.magnitude().unwrap_or(f64::INFINITY)
    }
}

fn check_at<S: Scalar>(which: Check, g: &StarGraph, t: &S, tol: f64, max_j: usize) -> CliResult<Outcome> {
    let worst = |values: &mut dyn Iterator<Item = f64>| values.fold(0.0, f64::max);
    let outcome = match which {
        Check::TsEigen => {
            let defect = ts_eigen_defect(g, t, SOLUTION_TOL)?;
            let ok = defect.components().all(|c| c.is_zero_within(tol));
            let deviation = worst(&mut defect.components().map(size));
            Outcome { ok, deviation }
        }
        Check::Gamma => {
            let value = gamma_form(&special_character(g, t, SOLUTION_TOL)?);
            Outcome { ok: value.is_zero_within(tol), deviation: size(&value) }
        }
        Check::Eq5 => {
            let value = sum_highest_defect(g, t, SOLUTION_TOL)?;
            Outcome { ok: value.is_zero_within(tol), deviation: size(&value) }
        }
        Check::Prop5 => prop5_at(g, t, tol, max_j)?,
        Check::Rho => {
            let one = t.one_like();
            let lambda = t.clone() + t.try_inv()?;
            let weight = t.try_div(&((one.clone() + t.clone()) * (one + t.clone())))?;
            let mut ok = true;
            let mut deviation: f64 = 0.0;
            for n in 0..=(2 * max_j as u32) {
                let lhs = rho(n + 1, t)?.try_inv()?;
                let rhs = weight.clone() * (lambda.clone() + t.int_like(2) - rho(n, t)?);
                let d = lhs - rhs;
                ok &= d.is_zero_within(tol);
                deviation = deviation.max(size(&d));
            }
            Outcome { ok, deviation }
        }
        Check::Sigma => {
            let u = special_ls_character(g, t, SOLUTION_TOL)?;
            let t_inv = t.try_inv()?;
            let mut ok = true;
            let mut deviation: f64 = 0.0;
            for v in vertices(g) {
                let factor = match vertex_parity(g, v)? {
                    Parity::Odd => t_inv.clone(),
                    Parity::Even => t.clone(),
                };
                let d = sigma_reflect(&u, v)?.get(v)?.clone() - factor * u.get(v)?.clone();
                ok &= d.is_zero_within(tol);
                deviation = deviation.max(size(&d));
            }
            Outcome { ok, deviation }
        }
        Check::Limits => unreachable!("limits are checked separately"),
    };
    Ok(outcome)
}

/// Closed forms against simultaneous reflections of the assembled
/// character and against the coefficient recurrence. Floating tolerances
/// are relative to the size of the coefficients.
fn prop5_at<S: Scalar>(g: &StarGraph, t: &S, tol: f64, max_j: usize) -> CliResult<Outcome> {
    let (odd, even) = decompose(&special_ls_character(g, t, SOLUTION_TOL)?);
    let mut ok = true;
    let mut deviation: f64 = 0.0;
    for kind in IterateKind::ALL {
        for j in 0..=max_j {
            let mut u = match kind.start_part() {
                Parity::Odd => odd.clone(),
                Parity::Even => even.clone(),
            };
            for step in kind.word(j) {
                u = coxeter_step(&u, step);
            }
            let closed = closed_form_iterate(kind, j, t)?;
            let scale = size(&closed.odd).max(size(&closed.even)).max(1.0);
            let assembled = odd.combine(&closed.odd, &even, &closed.even);
            let rel = u.max_deviation(&assembled) / scale;
            let evolved = iterate(kind, j, t)?;
            ok &= u.approx_eq(&assembled, tol * scale) && evolved.approx_eq(&closed, tol * scale);
            deviation = deviation.max(rel).max(evolved.distance(&closed) / scale);
        }
    }
    Ok(Outcome { ok, deviation })
}

enum Regime {
    Rational,
    Field(starshape::NumberField),
    Numeric([f64; 2]),
}

fn regime_for(g: &StarGraph) -> CliResult<Regime> {
    match g.kind() {
        GraphKind::Dynkin => Err(CliError::Usage(format!("{g} is a Dynkin graph: the graph equation has no positive solution"))),
        GraphKind::ExtendedDynkin => Ok(Regime::Rational),
        GraphKind::Hyperbolic if minimal_hyperbolic_graphs().contains(g) => {
            Ok(Regime::Field(solution_field(g, RootChoice::T2)?))
        }
        GraphKind::Hyperbolic => {
            let roots = solve_positive_roots(g, &root_precision())?;
            Ok(Regime::Numeric([roots.t1.midpoint_f64(), roots.t2.midpoint_f64()]))
        }
    }
}

fn case(label: &str, outcome: &Outcome) -> Value {
    json!({"t": label, "ok": outcome.ok, "max_deviation": outcome.deviation})
}

pub fn verify_cmd(g: &StarGraph, which: Check, max_j: usize, precision: &Rational) -> CliResult<Report> {
    let tol = to_f64(precision);
    let class = classify(g);
    if which == Check::Limits {
        return limits_cmd(g, &class, max_j);
    }
    let (regime_name, modulus, cases) = match regime_for(g)? {
        Regime::Rational => {
            let outcome = check_at(which, g, &Rational::from_integer(1.into()), tol, max_j)?;
            ("exact-rational", None, vec![case("1", &outcome)])
        }
        Regime::Field(field) => {
            let outcome = check_at(which, g, &field.generator(), tol, max_j)?;
            ("exact-field", Some(field.modulus().to_string()), vec![case("root of minimal polynomial", &outcome)])
        }
        Regime::Numeric([t1, t2]) => {
            let a = check_at(which, g, &t1, tol, max_j)?;
            let b = check_at(which, g, &t2, tol, max_j)?;
            ("numeric", None, vec![case("t1", &a), case("t2", &b)])
        }
    };
    let ok = cases.iter().all(|c| c["ok"] == json!(true));
    Ok(Report {
        command: "verify",
        graph: Some(g.clone()),
        class: Some(class_label(&class)),
        results: object(vec![
            ("check", json!(which.name())),
            ("regime", json!(regime_name)),
            ("field_modulus", json!(modulus)),
            ("tolerance", rational(precision)),
            ("max_j", json!(max_j)),
            ("cases", Value::Array(cases)),
        ]),
        status: Status::from_pass(ok),
    })
}

/// Distances of the normalized iterates to their predicted limits at both
/// roots; passes when every sequence decreases to below its start.
fn limits_cmd(g: &StarGraph, class: &GraphClass, max_j: usize) -> CliResult<Report> {
    if g.kind() != GraphKind::Hyperbolic {
        return Err(CliError::Usage(format!("{g} is not hyperbolic: limits need t different from 1")));
    }
    let roots = solve_positive_roots(g, &root_precision())?;
    let mut ok = true;
    let mut cases = Vec::new();
    for (label, t) in [("t1", roots.t1.midpoint_f64()), ("t2", roots.t2.midpoint_f64())] {
        for kind in IterateKind::ALL {
            let target = limit_target(kind, &t)?;
            let distances: Vec<f64> = (0..=max_j)
                .filter_map(|j| normalize(&closed_form_iterate(kind, j, &t).ok()?).ok())
                .map(|n| n.distance(&target))
                .collect();
            let monotone = distances.windows(2).all(|w| w[1] <= w[0] + 1e-15);
            let first = distances.first().copied().unwrap_or(0.0);
            let last = distances.last().copied().unwrap_or(0.0);
            let converging = monotone && (last < first || last == 0.0);
            ok &= converging;
            cases.push(json!({
                "t": label,
                "kind": kind.to_string(),
                "target_even_coefficient": target.even,
                "final_distance": last,
                "monotone": monotone,
                "ok": converging,
            }));
        }
    }
    Ok(Report {
        command: "verify",
        graph: Some(g.clone()),
        class: Some(class_label(class)),
        results: object(vec![
            ("check", json!(Check::Limits.name())),
            ("regime", json!("numeric")),
            ("max_j", json!(max_j)),
            ("cases", Value::Array(cases)),
        ]),
        status: Status::from_pass(ok),
    })
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "graph": c.graph.branch_lengths(),
        "kind": c.kind.to_string(),
        "p_gamma": c.p_gamma.to_string(),
        "p_gamma_coefficients": rationals(c.p_gamma.coeffs()),
        "irreducible": c.irreducible,
        "one_in_span": c.one_in_span,
        "basis_dimension": c.basis_dimension,
        "component_vectors": c.component_vectors.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
        "span_witness": c.span_witness.as_ref().map(|w| rationals(w)),
        "certifies_infinite_dimensional": c.certifies_infinite_dimensional(),
    })
}

/// Certificate, or the reason none could be produced.
fn certify_one(g: &StarGraph) -> (Value, Option<Certificate>) {
    if g.kind() == GraphKind::Dynkin {
        let note = json!({"graph": g.branch_lengths(), "kind": "Dynkin", "note": "no positive solution"});
        return (note, None);
    }
    match certify_infinite_dimensional(g) {
        Ok(c) => (certificate_json(&c), Some(c)),
        Err(e) => (json!({"graph": g.branch_lengths(), "kind": g.kind().to_string(), "incomplete": e.to_string()}), None),
    }
}

pub fn certify_cmd(g: Option<&StarGraph>) -> CliResult<Report> {
    let minimal = minimal_hyperbolic_graphs();
    match g {
        None => {
            let outcomes: Vec<(Value, Option<Certificate>)> = minimal.par_iter().map(certify_one).collect();
            let ok = outcomes
                .iter()
                .all(|(_, c)| c.as_ref().is_some_and(Certificate::certifies_infinite_dimensional));
            Ok(Report {
                command: "certify",
                graph: None,
                class: None,
                results: json!({"certificates": outcomes.into_iter().map(|(v, _)| v).collect::<Vec<_>>()}),
                status: Status::from_pass(ok),
            })
        }
        Some(g) => {
            let (value, cert) = certify_one(g);
            let status = match &cert {
                Some(c) if c.certifies_infinite_dimensional() => Status::Pass,
                _ if minimal.contains(g) => Status::Fail,
                _ => Status::Reported,
            };
            Ok(Report {
                command: "certify",
                graph: Some(g.clone()),
                class: Some(class_label(&classify(g))),
                results: json!({"certificates": [value]}),
                status,
            })
        }
    }
}

pub fn hypothesis_cmd(max_branches: usize, max_k: usize, precision: &Rational) -> CliResult<Report> {
    if max_branches < 3 || max_k < 1 {
        return Err(CliError::Usage("need --max-branches >= 3 and --max-k >= 1".into()));
    }
    let graphs: Vec<StarGraph> = star_graphs(max_branches, max_k)
        .into_iter()
        .filter(|g| g.kind() != GraphKind::Dynkin)
        .collect();
    let checks = graphs
        .par_iter()
        .map(|g| hypothesis_residual(g, precision))
        .collect::<Result<Vec<_>, _>>()?;
    let mut max_residual: f64 = 0.0;
    let mut worst = None;
    let mut counterexamples = Vec::new();
    for (g, h) in graphs.iter().zip(&checks) {
        if h.residual > max_residual || worst.is_none() {
            max_residual = max_residual.max(h.residual);
            worst = Some(g.branch_lengths().to_vec());
        }
        if h.residual >= HYPOTHESIS_TOL {
            counterexamples.push(json!({
                "graph": g.branch_lengths(),
                "t": enclosure(&h.t, precision),
                "spectral_radius": h.spectral_radius,
                "residual": h.residual,
            }));
        }
    }
    Ok(Report {
        command: "hypothesis",
        graph: None,
        class: None,
        results: json!({
            "max_branches": max_branches,
            "max_k": max_k,
            "graphs_checked": graphs.len(),
            "max_residual": max_residual,
            "worst_graph": worst,
            "threshold": HYPOTHESIS_TOL,
            "counterexamples": counterexamples,
            "precision": rational(precision),
        }),
        status: Status::Reported,
    })
}

pub fn orbit_cmd(g: &StarGraph, start: Parity, steps: usize, which: RootChoice, precision: &Rational) -> CliResult<Report> {
    if g.kind() != GraphKind::Hyperbolic {
        return Err(CliError::Usage(format!("{g} is not hyperbolic")));
    }
    let roots = solve_positive_roots(g, &root_precision())?;
    let t = roots.get(which).midpoint_f64();
    let mut pair = IterateKind::after(start, 0).0.start(&t);
    let mut rows = Vec::with_capacity(steps + 1);
    let mut last_distance = None;
    for s in 0..=steps {
        if s > 0 {
            // alternate, beginning with the parity opposite to the start
            let step = if s % 2 == 1 { start.flip() } else { start };
            pair = parity_evolution(&pair, &[step], &t)?;
        }
        let (kind, _) = IterateKind::after(start, s);
        let target = limit_target(kind, &t)?;
        let normalized = normalize(&pair).ok();
        let distance = normalized.as_ref().map(|n| n.distance(&target));
        last_distance = distance;
        rows.push(json!({
            "step": s,
            "odd": pair.odd,
            "even": pair.even,
            "normalized_even": normalized.map(|n| n.even),
            "target_even": target.even,
            "distance": distance,
        }));
    }
    Ok(Report {
        command: "orbit",
        graph: Some(g.clone()),
        class: Some(class_label(&classify(g))),
        results: json!({
            "start": start.to_string(),
            "root": which.to_string(),
            "t": enclosure(roots.get(which), precision),
            "steps": rows,
            "final_distance": last_distance,
            "precision": rational(precision),
        }),
        status: Status::Reported,
    })
}
