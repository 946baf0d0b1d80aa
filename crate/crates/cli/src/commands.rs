use bricklayer::dynamics::{
    effective_growth, evolve, predicted_growth, DynamicsError, MutationParams, PopulationState,
};
use bricklayer::graphs::Adjacency;
use bricklayer::graphs::{bricklayer, AnyGraph, GraphError};
use bricklayer::polynomials::{
    all_real_roots, ball_poly, cube_minus_poly, cube_plus_poly, cube_poly, f_poly, PolyError, Polynomial,
};
use bricklayer::search::{exhaustive_max_eig, sample_max_eig, SearchError, SearchRecord};
use bricklayer::spectra::{
    ball_eigenvalue_reduced, char_poly_eigenvalue, principal_eigenvalue, SpectraError, DEFAULT_TOL,
};
use bricklayer::theorem::{
    asymptotic_probe, check_conjecture, check_minus_chain, check_plus_chain, check_staircase, check_theorem,
    staircase_induction, BoundReport, ChainReport, Summary, TheoremError,
};
use serde_json::{json, Value};

use crate::args::{GraphArg, Span};
use crate::output::{Report, Table};
use crate::{Command, EigMethod, Failure, Family, Scope, SearchMode};

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Convergence { .. } => Failure::NonConvergence(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Spectra(e) => e.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Spectra(e) => e.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<DynamicsError> for Failure {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::NotStabilized(_) | DynamicsError::Degenerate(_) => Failure::NonConvergence(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Shortest round-trip form, switching to exponent notation for very small
/// or very large magnitudes.
fn num(x: f64) -> String {
    let m = x.abs();
    if m == 0.0 || (1e-4..1e15).contains(&m) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn small(v: u64, what: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure::Usage(format!("{what} {v} is too large")))
}

pub fn dispatch(command: &Command, seed: u64) -> Result<Report, Failure> {
    match command {
        Command::Figure1 { n_max } => figure1(*n_max),
        Command::Verify { scope } => verify(scope),
        Command::Search { d, n, mode, samples } => search(*d, *n, *mode, *samples, seed),
        Command::Simulate { graph, mu, fitness, generations } => simulate(graph, *mu, *fitness, *generations),
        Command::Poly { family, d, r } => poly(*family, *d, *r),
        Command::Eig { graph, method, vector } => eig(graph, *method, *vector),
        Command::Graph { graph } => graph_dump(graph),
    }
}

fn figure1(n_max: u64) -> Result<Report, Failure> {
    if n_max < 1 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let headers = ["n", "lambda", "log2_n", "margin"];
    let mut report = Report { table: Table::new(&headers), display: Some(Table::new(&headers)), ..Report::default() };
    for n in 1..=n_max {
        let lambda = principal_eigenvalue(&bricklayer(n, 2)?)?.lambda;
        let log = (n as f64).log2();
        let margin = log - lambda;
        report.lines.push(json!({"n": n, "lambda": lambda, "log2_n": log, "margin": margin}));
        report.table.push(vec![n.to_string(), num(lambda), num(log), num(margin)]);
        if let Some(t) = report.display.as_mut() {
            t.push(vec![n.to_string(), format!("{lambda:.6}"), format!("{log:.6}"), format!("{margin:.9}")]);
        }
    }
    Ok(report)
}

fn bound_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new(&["check", "n", "d", "a", "lambda", "bound", "margin", "verdict", "comparison", "asserted"]);
    for r in reports {
        t.push(vec![
            r.check.clone(),
            opt(r.n),
            opt(r.d),
            opt(r.a),
            num(r.lambda),
            num(r.bound),
            num(r.margin),
            to_value(&r.verdict).as_str().unwrap_or_default().to_string(),
            to_value(&r.comparison).as_str().unwrap_or_default().to_string(),
            r.asserted.to_string(),
        ]);
    }
    t
}

/// JSON lines of the reports, a summary line, the table and the summary
/// note.
fn bound_report(reports: &[BoundReport], extra: Value) -> Report {
    let summary = Summary::of(reports);
    let mut lines: Vec<Value> = reports.iter().map(to_value).collect();
    let mut tail = json!({"summary": summary});
    if let (Value::Object(tail), Value::Object(extra)) = (&mut tail, extra) {
        tail.extend(extra);
    }
    lines.push(tail);
    Report {
        lines,
        table: bound_table(reports),
        display: None,
        notes: vec![summary.to_string()],
        violated: summary.violated > 0,
    }
}

fn chains(span: Span, check: fn(u32) -> Result<ChainReport, TheoremError>) -> Result<Report, Failure> {
    if span.lo < 2 || span.hi > 62 {
        return Err(Failure::Usage(format!("dimension range {span} outside 2..=62")));
    }
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for d in span.iter() {
        let chain = check(d as u32)?;
        if !chain.holds() {
            failed.push(d);
        }
        reports.extend(chain.links);
    }
    let mut report = bound_report(&reports, json!({"failed_dimensions": failed}));
    if !failed.is_empty() {
        report.notes.push(format!("chains failing at d = {failed:?}"));
    }
    Ok(report)
}

fn verify(scope: &Scope) -> Result<Report, Failure> {
    match scope {
        Scope::Theorem { n_max } => Ok(bound_report(&check_theorem(*n_max)?, json!({}))),
        Scope::Staircase { k } => {
            let s = check_staircase(*k)?;
            let mut reports = s.condition.clone();
            reports.extend(s.doubled.iter().cloned());
            reports.extend(s.next_condition.iter().cloned());
            let chains_hold = s.chains.iter().all(|c| c.holds);
            let mut report = bound_report(
                &reports,
                json!({"k": s.k, "shift_error": s.shift_error, "chains_hold": chains_hold, "holds": s.holds}),
            );
            let tail = report.lines.pop();
            report.lines.extend(s.chains.iter().map(|c| json!({"chain": c})));
            report.lines.extend(tail);
            report.notes.push(format!(
                "k {} shift error {:.3e}, {} of {} chains hold, level holds: {}",
                s.k,
                s.shift_error,
                s.chains.iter().filter(|c| c.holds).count(),
                s.chains.len(),
                s.holds
            ));
            report.violated = !s.holds;
            Ok(report)
        }
        Scope::Induction { k_max } => induction(*k_max),
        Scope::Minus { d } => chains(*d, check_minus_chain),
        Scope::Plus { d } => chains(*d, check_plus_chain),
        Scope::Conjecture { a, n_max } => {
            let n_max = match n_max {
                Some(n) => *n,
                None => (*a as u64).checked_pow(4).ok_or_else(|| Failure::Usage(format!("alphabet {a} too large")))?,
            };
            let c = check_conjecture(*a, n_max)?;
            let mut report = bound_report(&c.reports, json!({"counterexamples": c.counterexamples.len()}));
            let tail = report.lines.pop();
            report.lines.extend(c.counterexamples.iter().map(|x| json!({"counterexample": x})));
            report.lines.extend(tail);
            report.notes.push(format!("{} counterexamples", c.counterexamples.len()));
            report.violated = false;
            Ok(report)
        }
        Scope::Asymptotic { offset, eps, d } => {
            let r = asymptotic_probe(*offset, *eps, small(d.lo, "dimension")?, small(d.hi, "dimension")?)?;
            let mut table = Table::new(&["d", "minus_margin", "minus_holds", "plus_margin", "plus_holds"]);
            let mut lines = Vec::new();
            for row in &r.rows {
                lines.push(to_value(row));
                table.push(vec![
                    row.d.to_string(),
                    num(row.minus_margin),
                    row.minus_holds.to_string(),
                    num(row.plus_margin),
                    row.plus_holds.to_string(),
                ]);
            }
            lines.push(json!({"summary": {
                "offset": r.offset, "eps": r.eps, "minus_from": r.minus_from, "plus_from": r.plus_from,
            }}));
            Ok(Report {
                lines,
                table,
                display: None,
                notes: vec![format!(
                    "minus holds from d = {}, plus holds from d = {}",
                    opt(r.minus_from),
                    opt(r.plus_from)
                )],
                violated: false,
            })
        }
    }
}

fn induction(k_max: u32) -> Result<Report, Failure> {
    let r = staircase_induction(k_max)?;
    let mut table = Table::new(&["n", "bound_arg", "rule", "implies"]);
    let mut lines = Vec::new();
    for b in r.bounds.values() {
        let arg = b.arg.as_ref().map(|a| a.to_string());
        let rule = to_value(&b.rule);
        lines.push(json!({"n": b.n, "bound_arg": arg, "rule": rule, "implies_theorem": b.implies_theorem()}));
        table.push(vec![
            b.n.to_string(),
            arg.unwrap_or_else(|| "equal".into()),
            rule.as_str().unwrap_or_default().to_string(),
            b.implies_theorem().to_string(),
        ]);
    }
    let certified = r.certified_up_to();
    lines.push(json!({"summary": {
        "base_holds": r.base_holds,
        "levels": r.levels,
        "failed_level": r.failed_level,
        "certified_up_to": certified,
    }}));
    Ok(Report {
        lines,
        table,
        display: None,
        notes: vec![format!(
            "base holds: {}, certified for n <= {certified}, failed level: {}",
            r.base_holds,
            opt(r.failed_level)
        )],
        violated: !r.base_holds || r.failed_level.is_some(),
    })
}

fn search(d: u32, span: Span, mode: SearchMode, samples: u64, seed: u64) -> Result<Report, Failure> {
    if span.lo < 1 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let mut table =
        Table::new(&["n", "best_lambda", "bricklayer_lambda", "is_bricklayer", "explored", "ties", "witness"]);
    let mut lines = Vec::new();
    for n in span.iter() {
        let record: SearchRecord = match mode {
            SearchMode::Exhaustive => exhaustive_max_eig(d, n)?,
            SearchMode::Sample => sample_max_eig(d, n, samples, seed)?,
        };
        let witness: Vec<String> = record.witness.iter().map(|l| l.to_string()).collect();
        table.push(vec![
            n.to_string(),
            record.best_lambda.map(num).unwrap_or_default(),
            num(record.bricklayer_lambda),
            record.is_bricklayer.to_string(),
            record.explored.to_string(),
            record.ties.to_string(),
            witness.join(" "),
        ]);
        lines.push(to_value(&record));
    }
    Ok(Report { lines, table, display: None, notes: Vec::new(), violated: false })
}

fn simulate(graph: &GraphArg, mu: f64, fitness: f64, generations: u64) -> Result<Report, Failure> {
    let any = graph.load().map_err(Failure::Usage)?;
    let AnyGraph::Labeled(g) = any else {
        return Err(Failure::Usage(format!("{graph} has no genotype labels; use ball:n,1 for a star")));
    };
    let (d, a) = (g.dimension(), g.alphabet());
    let params = MutationParams { mu, f: fitness };
    let (_, trajectory) = evolve(&g, d, a, &params, &PopulationState::uniform(g.order()), generations)?;
    let lambda = principal_eigenvalue(&g)?.lambda;
    let growth = effective_growth(&trajectory).ok();
    let predicted = predicted_growth(lambda, d, a, &params);
    let robustness = lambda / (d as f64 * (a - 1) as f64);
    let mut table = Table::new(&["generation", "measured_robustness", "growth_factor", "log_scale"]);
    let mut lines = Vec::with_capacity(trajectory.rows.len() + 1);
    for row in &trajectory.rows {
        table.push(vec![
            row.generation.to_string(),
            num(row.measured_robustness),
            num(row.growth_factor),
            num(row.log_scale),
        ]);
        lines.push(to_value(row));
    }
    let last = trajectory.rows.last().map(|r| r.measured_robustness);
    lines.push(json!({"summary": {
        "graph": graph.to_string(),
        "order": g.order(),
        "d": d,
        "a": a,
        "lambda": lambda,
        "predicted_robustness": robustness,
        "final_robustness": last,
        "effective_growth": growth,
        "predicted_growth": predicted,
    }}));
    let notes = vec![
        format!("lambda {lambda}, predicted robustness {robustness}, final robustness {}", opt(last)),
        match growth {
            Some(g) => format!("growth factor {g}, predicted {predicted}"),
            None => format!("growth factor not yet stable, predicted {predicted}"),
        },
    ];
    Ok(Report { lines, table, display: None, notes, violated: false })
}

fn univariate(family: Family, d: u32, r: Option<u32>) -> Result<Polynomial, Failure> {
    Ok(match family {
        Family::Minus => cube_minus_poly(d)?,
        Family::Plus => cube_plus_poly(d)?,
        Family::Cube => cube_poly(d),
        Family::Ball => ball_poly(d, r.ok_or_else(|| Failure::Usage("--family ball needs --r".into()))?)?,
        Family::F => unreachable!("f is bivariate"),
    })
}

fn poly(family: Family, d: u32, r: Option<u32>) -> Result<Report, Failure> {
    let name = format!("{family:?}").to_lowercase();
    if family == Family::F {
        let f = f_poly(d)?;
        let mut table = Table::new(&["x_power", "d_power", "coefficient"]);
        let mut coeffs = Vec::new();
        for j in 0..=f.degree_in_x().unwrap_or(0) {
            let col: Vec<String> = f.coeff_in_d(j).iter().map(|c| c.to_string()).collect();
            for (i, c) in col.iter().enumerate().filter(|(_, c)| c.as_str() != "0") {
                table.push(vec![j.to_string(), i.to_string(), c.clone()]);
            }
            coeffs.push(col);
        }
        return Ok(Report {
            lines: vec![json!({"family": name, "k": d, "display": f.to_string(), "coeffs": coeffs})],
            table,
            display: None,
            notes: vec![f.to_string()],
            violated: false,
        });
    }
    if r.is_some() && family != Family::Ball {
        return Err(Failure::Usage("--r applies to --family ball only".into()));
    }
    let p = univariate(family, d, r)?;
    let root = all_real_roots(&p, 1e-12).ok().and_then(|roots| roots.last().copied());
    let mut table = Table::new(&["power", "coefficient"]);
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        table.push(vec![i.to_string(), c.to_string()]);
    }
    let mut line = json!({
        "family": name,
        "d": d,
        "degree": p.degree(),
        "display": p.to_string(),
        "coeffs": p.to_json().coeffs,
        "largest_root": root,
    });
    if let Some(r) = r {
        line["r"] = json!(r);
    }
    Ok(Report {
        lines: vec![line],
        table,
        display: None,
        notes: vec![p.to_string(), format!("largest root {}", opt(root))],
        violated: false,
    })
}

fn eig(graph: &GraphArg, method: EigMethod, vector: bool) -> Result<Report, Failure> {
    let (result, order) = match method {
        EigMethod::DistanceClass => {
            let (d, r) = graph.ball().ok_or_else(|| Failure::Usage("distance-class needs a ball:d,r graph".into()))?;
            let b = ball_eigenvalue_reduced(d, r, DEFAULT_TOL)?;
            let order: u128 = (0..=r as u128).fold((0, 1), |(sum, c), k| (sum + c, c * (d as u128 - k) / (k + 1))).0;
            (b.result, Some(order))
        }
        EigMethod::Power | EigMethod::CharPoly => {
            let g = graph.load().map_err(Failure::Usage)?;
            let result = match method {
                EigMethod::Power => principal_eigenvalue(&g)?,
                _ => char_poly_eigenvalue(&g)?,
            };
            (result, Some(g.order() as u128))
        }
    };
    let mut line = json!({"graph": graph.to_string(), "order": order});
    if let (Value::Object(line), Value::Object(rest)) = (&mut line, result.to_json(vector)) {
        line.extend(rest);
    }
    let mut table = Table::new(&["graph", "lambda", "residual", "method", "iterations"]);
    table.push(vec![
        graph.to_string(),
        num(result.lambda),
        num(result.residual),
        result.method.as_str().to_string(),
        result.iterations.to_string(),
    ]);
    Ok(Report { lines: vec![line], table, display: None, notes: Vec::new(), violated: false })
}

fn graph_dump(graph: &GraphArg) -> Result<Report, Failure> {
    let g = graph.load().map_err(Failure::Usage)?;
    let mut table = Table::new(&["i", "j"]);
    for (i, j) in g.edges() {
        table.push(vec![i.to_string(), j.to_string()]);
    }
    let line = match &g {
        AnyGraph::Labeled(l) => to_value(&l.to_json()),
        AnyGraph::Star(_) => json!({"order": g.order(), "edges": g.edges()}),
    };
    Ok(Report {
        lines: vec![line],
        table,
        display: None,
        notes: vec![format!("{} vertices, {} edges", g.order(), g.edge_count())],
        violated: false,
    })
}
