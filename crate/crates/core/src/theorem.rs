//! Mechanical checks of the eigenvalue bound `λ(G(n)) ≤ log2 n`, the
//! dyadic staircase induction behind it, the two polynomial bound chains for
//! `n = 2^d ± 1`, the star counterexample and the general-alphabet
//! conjecture `λ(G(n, a)) ≤ (a - 1) log_a n`.
//!
//! Every strict inequality is first decided in double precision with a
//! margin of [`MARGIN`]. When the margin is smaller, the comparison is
//! redone with certified rational enclosures (see [`crate::certify`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{compare, Quantity};
use crate::graphs::{bricklayer, star, Adjacency, GraphError, GraphJson, LabeledGraph};
use crate::polynomials::{
    cube_minus_poly, cube_plus_poly, newton_step, rational, tangent_bound_minus, tangent_bound_plus, PolyError,
};
use crate::spectra::{char_poly_exact, principal_eigenvalue, SpectraError, CHAR_POLY_LIMIT};

/// Smallest float margin accepted without certified escalation.
pub const MARGIN: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid range: {0}")]
    Range(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsStrict,
    HoldsEqual,
    Violated,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Both sides exact rationals.
    Exact,
    /// Double precision with margin at least [`MARGIN`].
    Float,
    /// Certified rational enclosures after the float margin was too small.
    Certified,
    /// Enclosures still overlapped after the refinement budget.
    Undecided,
}

/// One checked inequality `lambda ≤ bound` (or `<`, or `=`).
///
/// `lambda` is the quantity being bounded: an eigenvalue for the direct
/// checks, the left member of a link for the bound chains. `asserted` is
/// false for results outside the hypothesis of the claim; those are
/// reported but never count as violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<u32>,
    pub lambda: f64,
    pub bound: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub comparison: Comparison,
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<GraphJson>,
}

impl BoundReport {
    fn new(check: &str, lambda: f64, bound: f64, verdict: Verdict, comparison: Comparison) -> Self {
        BoundReport {
            check: check.to_string(),
            n: None,
            d: None,
            a: None,
            lambda,
            bound,
            margin: bound - lambda,
            verdict,
            comparison,
            asserted: true,
            witness: None,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.asserted && self.verdict == Verdict::Violated
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Violated
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: usize,
    pub holds_strict: usize,
    pub holds_equal: usize,
    pub violated: usize,
}

impl Summary {
    /// Counts over asserted reports; unasserted ones are informational.
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a BoundReport>) -> Self {
        let mut s = Summary::default();
        for r in reports.into_iter().filter(|r| r.asserted) {
            s.checked += 1;
            match r.verdict {
                Verdict::HoldsStrict => s.holds_strict += 1,
                Verdict::HoldsEqual => s.holds_equal += 1,
                Verdict::Violated => s.violated += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {} strict {} equal {} violated {}",
            self.checked, self.holds_strict, self.holds_equal, self.violated
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Less,
    LessEq,
    Equal,
}

impl Relation {
    fn verdict(self, ord: std::cmp::Ordering) -> Verdict {
        use std::cmp::Ordering::*;
        match (self, ord) {
            (_, Greater) => Verdict::Violated,
            (Relation::Equal, Less) => Verdict::Violated,
            (_, Less) => Verdict::HoldsStrict,
            (Relation::Less, Equal) => Verdict::Violated,
            (_, Equal) => Verdict::HoldsEqual,
        }
    }
}

/// Double-precision value of a quantity, from an enclosure of width at
/// most `2^-60`.
fn float_value(q: &Quantity) -> f64 {
    let mut q = q.clone();
    let width = BigRational::new(BigInt::one(), BigInt::one() << 60u32);
    while q.interval().width() > width && q.refine() {}
    q.approx()
}

/// Decides `lhs rel rhs` under the comparison discipline.
fn decide(check: &str, lhs: &Quantity, rhs: &Quantity, rel: Relation) -> BoundReport {
    let (l, r) = (float_value(lhs), float_value(rhs));
    if let (Quantity::Exact(x), Quantity::Exact(y)) = (lhs, rhs) {
        return BoundReport::new(check, l, r, rel.verdict(x.cmp(y)), Comparison::Exact);
    }
    if rel != Relation::Equal && r - l >= MARGIN {
        return BoundReport::new(check, l, r, Verdict::HoldsStrict, Comparison::Float);
    }
    match compare(lhs, rhs) {
        Some(ord) => BoundReport::new(check, l, r, rel.verdict(ord), Comparison::Certified),
        None => {
            let verdict =
                if rel != Relation::Less && (r - l).abs() <= MARGIN { Verdict::HoldsEqual } else { Verdict::Violated };
            BoundReport::new(check, l, r, verdict, Comparison::Undecided)
        }
    }
}

/// A float eigenvalue against a bound; when the margin is below [`MARGIN`]
/// the exact route supplied by `exact` decides.
fn decide_float(
    check: &str,
    lambda: f64,
    bound: f64,
    exact: impl FnOnce() -> Option<(Quantity, Quantity)>,
) -> BoundReport {
    if bound - lambda >= MARGIN {
        return BoundReport::new(check, lambda, bound, Verdict::HoldsStrict, Comparison::Float);
    }
    match exact() {
        Some((l, r)) => {
            let ord = compare(&l, &r);
            let (verdict, comparison) = match ord {
                Some(std::cmp::Ordering::Less) => (Verdict::HoldsStrict, Comparison::Certified),
                Some(_) => (Verdict::Violated, Comparison::Certified),
                None => (Verdict::Violated, Comparison::Undecided),
            };
            BoundReport::new(check, lambda, bound, verdict, comparison)
        }
        None => BoundReport::new(check, lambda, bound, Verdict::Violated, Comparison::Float),
    }
}

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(d: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << d)
}

/// Largest eigenvalue of a small graph as an exact algebraic number, when
/// the characteristic polynomial is affordable.
fn exact_lambda<G: Adjacency + ?Sized>(g: &G) -> Option<Quantity> {
    if g.order() > CHAR_POLY_LIMIT {
        return None;
    }
    let p = char_poly_exact(g).ok()?;
    Quantity::root(p, BigRational::zero(), q(g.max_degree() as u64)).ok()
}

/// `k` with `base^k = n`, by repeated division.
pub fn exact_log(n: u64, base: u64) -> Option<u32> {
    if n == 0 || base < 2 {
        return None;
    }
    let (mut m, mut k) = (n, 0);
    while m % base == 0 {
        m /= base;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn par_map<T: Send, F>(items: Vec<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

fn lambdas(ns: Vec<u64>) -> Result<BTreeMap<u64, f64>, TheoremError> {
    par_map(ns, |n| -> Result<(u64, f64), TheoremError> {
        let g = bricklayer(n, 2)?;
        Ok((n, principal_eigenvalue(&g)?.lambda))
    })
    .into_iter()
    .collect()
}

fn theorem_report(n: u64) -> Result<BoundReport, TheoremError> {
    let g = bricklayer(n, 2)?;
    let lambda = principal_eigenvalue(&g)?.lambda;
    let mut report = match exact_log(n, 2) {
        Some(k) => {
            let bound = k as f64;
            let verdict = if (lambda - bound).abs() <= MARGIN { Verdict::HoldsEqual } else { Verdict::Violated };
            BoundReport::new("theorem", lambda, bound, verdict, Comparison::Float)
        }
        None => decide_float("theorem", lambda, (n as f64).log2(), || Some((exact_lambda(&g)?, Quantity::log2(q(n))))),
    };
    report.n = Some(n);
    if report.verdict == Verdict::Violated {
        report.witness = Some(g.to_json());
    }
    Ok(report)
}

/// `λ(G(n)) ≤ log2 n` for `1 ≤ n ≤ n_max`, equality expected exactly at
/// powers of two.
pub fn check_theorem(n_max: u64) -> Result<Vec<BoundReport>, TheoremError> {
    if n_max < 1 {
        return Err(TheoremError::Range("n_max must be at least 1".into()));
    }
    par_map((1..=n_max).collect(), theorem_report).into_iter().collect()
}

/// One row of the six-term chain
/// `λ(2n-2) < λ(2n-1) < λ(2n) < log2(2n-2) < log2(2n-1) < log2(2n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub n: u64,
    pub values: [f64; 6],
    pub min_gap: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaircaseReport {
    pub k: u32,
    /// `λ(n) < log2(n - 1)` for `2^k + 2 ≤ n ≤ 2^(k+1) - 1`.
    pub condition: Vec<BoundReport>,
    /// `λ(2n) < log2(2n - 2)` over the same range.
    pub doubled: Vec<BoundReport>,
    /// Largest `|λ(2n) - λ(n) - 1|` over the range.
    pub shift_error: f64,
    pub chains: Vec<ChainRow>,
    /// The condition one level up, `2^(k+1) + 2 ≤ m ≤ 2^(k+2) - 1`.
    pub next_condition: Vec<BoundReport>,
    pub holds: bool,
}

fn strong_report(check: &str, n: u64, lambda: f64) -> BoundReport {
    let bound = ((n - 1) as f64).log2();
    let mut r = decide_float(check, lambda, bound, || {
        let g = bricklayer(n, 2).ok()?;
        Some((exact_lambda(&g)?, Quantity::log2(q(n - 1))))
    });
    r.n = Some(n);
    r
}

/// Numerical check of one level of the staircase induction.
pub fn check_staircase(k: u32) -> Result<StaircaseReport, TheoremError> {
    if !(3..=20).contains(&k) {
        return Err(TheoremError::Range(format!("staircase level {k} outside 3..=20")));
    }
    let (lo, hi) = ((1u64 << k) + 2, (1u64 << (k + 1)) - 1);
    let lam = lambdas((lo..=2 * hi + 1).collect())?;
    let condition: Vec<_> = (lo..=hi).map(|n| strong_report("staircase_condition", n, lam[&n])).collect();
    let doubled: Vec<_> = (lo..=hi)
        .map(|n| {
            let m = 2 * n;
            let mut r = decide_float("staircase_doubled", lam[&m], ((m - 2) as f64).log2(), || {
                let g = bricklayer(m, 2).ok()?;
                Some((exact_lambda(&g)?, Quantity::log2(q(m - 2))))
            });
            r.n = Some(n);
            r
        })
        .collect();
    let shift_error = (lo..=hi).map(|n| (lam[&(2 * n)] - lam[&n] - 1.0).abs()).fold(0.0, f64::max);
    let chains: Vec<_> = (lo..=hi)
        .map(|n| {
            let m = 2 * n;
            let values = [
                lam[&(m - 2)],
                lam[&(m - 1)],
                lam[&m],
                ((m - 2) as f64).log2(),
                ((m - 1) as f64).log2(),
                (m as f64).log2(),
            ];
            let min_gap = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            ChainRow { n, values, min_gap, holds: min_gap >= MARGIN }
        })
        .collect();
    let next_condition: Vec<_> =
        (2 * lo - 2..=2 * hi + 1).map(|m| strong_report("staircase_next_condition", m, lam[&m])).collect();
    let holds = condition.iter().chain(&doubled).chain(&next_condition).all(BoundReport::holds)
        && chains.iter().all(|c| c.holds)
        && shift_error <= MARGIN;
    Ok(StaircaseReport { k, condition, doubled, shift_error, chains, next_condition, holds })
}

/// How a bound in the staircase induction was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Direct numerical check at the base of the induction.
    Base,
    /// All vertices have degree `log2 n`, so `λ = log2 n`.
    Regular,
    /// `λ(2n) = λ(n) + 1` applied to a bound on `λ(n)`.
    Doubling,
    /// `λ(2n - 1) < λ(2n)` applied to a bound on `λ(2n)`.
    Monotone,
    /// Root of the polynomial for `2^d - 1` below `log2(2^d - 2)`.
    MinusPoint,
    /// Root of the polynomial for `2^d + 1` below `log2(2^d + 1/2)`.
    PlusPoint,
}

/// `λ(n) < log2(arg)`, or `λ(n) = log2 n` when `arg` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedBound {
    pub n: u64,
    pub arg: Option<BigRational>,
    pub rule: Rule,
}

impl DerivedBound {
    /// True when this bound implies the theorem at `n`.
    pub fn implies_theorem(&self) -> bool {
        match &self.arg {
            None => self.n.is_power_of_two(),
            Some(arg) => arg <= &q(self.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InductionReport {
    pub base_holds: bool,
    pub levels: Vec<u32>,
    pub bounds: BTreeMap<u64, DerivedBound>,
    /// First level whose hypotheses could not be established.
    pub failed_level: Option<u32>,
}

impl InductionReport {
    /// Largest `N` such that the theorem is derived for every `n ≤ N`.
    pub fn certified_up_to(&self) -> u64 {
        let mut n = 0;
        while self.bounds.get(&(n + 1)).is_some_and(DerivedBound::implies_theorem) {
            n += 1;
        }
        n
    }
}

/// Certified `λ(2^d - 1) < log2(2^d - 2)` from the polynomial root.
pub fn minus_point_holds(d: u32) -> Result<bool, TheoremError> {
    if d < 2 {
        return Ok(false);
    }
    let root = Quantity::root(cube_minus_poly(d)?, BigRational::zero(), rational(d as i64))?;
    Ok(compare(&root, &Quantity::log2(pow2(d) - rational(2))) == Some(std::cmp::Ordering::Less))
}

/// Certified `λ(2^d + 1) < log2(2^d + 1/2)` from the polynomial root.
pub fn plus_point_holds(d: u32) -> Result<bool, TheoremError> {
    let root = plus_root(d)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(compare(&root, &Quantity::log2(pow2(d) + half)) == Some(std::cmp::Ordering::Less))
}

fn plus_root(d: u32) -> Result<Quantity, TheoremError> {
    let p = cube_plus_poly(d)?;
    let dd = rational(d as i64);
    match Quantity::root(p.clone(), dd.clone(), dd + BigRational::one()) {
        Ok(root) => Ok(root),
        Err(_) => Ok(Quantity::root(p, BigRational::zero(), rational(d as i64 + 2))?),
    }
}

fn is_regular(n: u64) -> Result<bool, TheoremError> {
    let g = bricklayer(n, 2)?;
    let k = n.trailing_zeros() as usize;
    Ok((0..g.order()).all(|v| g.degree(v) == k))
}

/// Derives the theorem level by level from a numerically verified base
/// (`n ≤ 16` and the strong condition at `k = 3`), using only the doubling
/// and subgraph-monotonicity rules plus the polynomial facts for
/// `n = 2^d ± 1`. Level `k` covers `2^(k+1) ≤ n ≤ 2^(k+2)`.
pub fn staircase_induction(k_max: u32) -> Result<InductionReport, TheoremError> {
    let k0 = 3;
    let mut bounds: BTreeMap<u64, DerivedBound> = BTreeMap::new();
    let base = lambdas((1..=16).collect())?;
    let mut base_holds = true;
    for (&n, &lambda) in &base {
        if n.is_power_of_two() {
            base_holds &= (lambda - (n.trailing_zeros() as f64)).abs() <= MARGIN;
            bounds.insert(n, DerivedBound { n, arg: None, rule: Rule::Base });
        } else {
            let strong = (1u64 << k0) + 2 <= n && n < (1 << (k0 + 1));
            let r = if strong { strong_report("base", n, lambda) } else { theorem_report(n)? };
            base_holds &= r.holds();
            let arg = if strong { q(n - 1) } else { q(n) };
            bounds.insert(n, DerivedBound { n, arg: Some(arg), rule: Rule::Base });
        }
    }
    let mut report = InductionReport { base_holds, levels: Vec::new(), bounds, failed_level: None };
    if !base_holds {
        report.failed_level = Some(k0);
        return Ok(report);
    }
    for k in k0..=k_max {
        let (lo, hi) = ((1u64 << k) + 2, (1u64 << (k + 1)) - 1);
        // Hypothesis: the strong condition at level k.
        let hypothesis = (lo..=hi).all(|n| report.bounds[&n].arg.as_ref().is_some_and(|arg| arg <= &q(n - 1)));
        let plus_here = plus_point_holds(k)?;
        let plus_next = plus_point_holds(k + 1)?;
        let minus_next = minus_point_holds(k + 2)?;
        let top = 1u64 << (k + 2);
        if !(hypothesis && plus_here && plus_next && minus_next && is_regular(top / 2)? && is_regular(top)?) {
            report.failed_level = Some(k);
            break;
        }
        let mut derived = Vec::new();
        for n in lo..=hi {
            let doubled = rational(2) * report.bounds[&n].arg.clone().expect("strong bound");
            derived.push(DerivedBound { n: 2 * n, arg: Some(doubled.clone()), rule: Rule::Doubling });
            derived.push(DerivedBound { n: 2 * n - 1, arg: Some(doubled), rule: Rule::Monotone });
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        derived.push(DerivedBound { n: top / 2 + 2, arg: Some(rational(2) * (pow2(k) + &half)), rule: Rule::Doubling });
        derived.push(DerivedBound { n: top / 2 + 1, arg: Some(pow2(k + 1) + half), rule: Rule::PlusPoint });
        derived.push(DerivedBound { n: top - 1, arg: Some(q(top - 2)), rule: Rule::MinusPoint });
        for n in [top / 2, top] {
            derived.push(DerivedBound { n, arg: None, rule: Rule::Regular });
        }
        for b in derived {
            report.bounds.insert(b.n, b);
        }
        report.levels.push(k);
    }
    Ok(report)
}

/// The links of one polynomial bound chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub d: u32,
    pub lambda: f64,
    pub links: Vec<BoundReport>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| !l.is_violation())
    }

    pub fn link(&self, check: &str) -> Option<&BoundReport> {
        self.links.iter().find(|l| l.check == check)
    }
}

fn chain_link(d: u32, check: &str, lhs: &Quantity, rhs: &Quantity, rel: Relation, asserted: bool) -> BoundReport {
    let mut r = decide(check, lhs, rhs, rel);
    r.d = Some(d);
    r.asserted = asserted;
    r
}

/// `λ(2^d - 1) < d - 1/Σ < d - (2/3) d/2^d ≤ d - 3/2^d < log2(2^d - 2)`.
/// Links beyond the tangent bound are asserted for `d ≥ 5` only.
pub fn check_minus_chain(d: u32) -> Result<ChainReport, TheoremError> {
    if d < 2 {
        return Err(TheoremError::Range(format!("minus chain needs d >= 2, got {d}")));
    }
    let p = cube_minus_poly(d)?;
    let dd = rational(d as i64);
    let root = Quantity::root(p.clone(), BigRational::zero(), dd.clone())?;
    let tangent = tangent_bound_minus(d);
    let step = newton_step(&p, &dd).unwrap_or_else(BigRational::zero);
    let sum_bound = &dd - rational(2) * &dd / (rational(3) * pow2(d));
    let log_step = &dd - rational(3) / pow2(d);
    let log = Quantity::log2(pow2(d) - rational(2));
    let full = d >= 5;
    let exact = Quantity::Exact;
    let links = vec![
        chain_link(d, "root_below_tangent", &root, &exact(tangent.clone()), Relation::Less, true),
        chain_link(d, "tangent_is_newton_step", &exact(tangent.clone()), &exact(step), Relation::Equal, true),
        chain_link(d, "tangent_below_log", &exact(tangent.clone()), &log, Relation::Less, full),
        chain_link(d, "tangent_below_sum_bound", &exact(tangent), &exact(sum_bound.clone()), Relation::Less, full),
        chain_link(d, "sum_bound_below_log_step", &exact(sum_bound), &exact(log_step.clone()), Relation::LessEq, full),
        chain_link(d, "log_step_below_log", &exact(log_step), &log, Relation::Less, full),
        chain_link(d, "conclusion", &root, &log, Relation::Less, full),
    ];
    Ok(ChainReport { d, lambda: float_value(&root), links })
}

/// `λ(2^d + 1) < d + 1/(d 2^d - Σ) < d + 1/((d - 3/(2d)) 2^d) ≤ d + (1/2)/2^d
/// < log2(2^d + 1/2)`. The last link is asserted from `d = 3`, the others
/// from `d = 5`; smaller dimensions are reported.
pub fn check_plus_chain(d: u32) -> Result<ChainReport, TheoremError> {
    if d < 2 {
        return Err(TheoremError::Range(format!("plus chain needs d >= 2, got {d}")));
    }
    let p = cube_plus_poly(d)?;
    let dd = rational(d as i64);
    let root = plus_root(d)?;
    let tangent = tangent_bound_plus(d);
    let step = newton_step(&p, &dd).unwrap_or_else(BigRational::zero);
    let reduced = &dd - rational(3) / (rational(2) * &dd);
    let sum_bound = &dd + (reduced * pow2(d)).recip();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let log_step = &dd + &half / pow2(d);
    let log = Quantity::log2(pow2(d) + half);
    let full = d >= 5;
    let exact = Quantity::Exact;
    let links = vec![
        chain_link(d, "root_below_tangent", &root, &exact(tangent.clone()), Relation::Less, full),
        chain_link(d, "tangent_is_newton_step", &exact(tangent.clone()), &exact(step), Relation::Equal, true),
        chain_link(d, "tangent_below_log", &exact(tangent.clone()), &log, Relation::Less, full),
        chain_link(d, "tangent_below_sum_bound", &exact(tangent), &exact(sum_bound.clone()), Relation::Less, full),
        chain_link(d, "sum_bound_below_log_step", &exact(sum_bound), &exact(log_step.clone()), Relation::LessEq, full),
        chain_link(d, "log_step_below_log", &exact(log_step), &log, Relation::Less, d >= 3),
        chain_link(d, "conclusion", &root, &log, Relation::Less, full),
    ];
    Ok(ChainReport { d, lambda: float_value(&root), links })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Star,
    Bricklayer,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarRow {
    pub n: u64,
    pub star: f64,
    pub log2_n: f64,
    pub winner: Winner,
    /// Power-iteration eigenvalue of the star with `n - 1` leaves.
    pub star_power: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarCrossover {
    pub rows: Vec<StarRow>,
    pub first_star_win: Option<u64>,
    /// Least `n` from which the star wins for the rest of the range.
    pub star_wins_from: Option<u64>,
    pub max_power_error: f64,
}

/// `sqrt(n - 1)` (star on `n` vertices) against `log2 n` for
/// `2 ≤ n ≤ n_max`.
pub fn star_crossover(n_max: u64) -> Result<StarCrossover, TheoremError> {
    if n_max < 2 {
        return Err(TheoremError::Range("n_max must be at least 2".into()));
    }
    let rows: Vec<StarRow> = par_map((2..=n_max).collect(), |n| -> Result<StarRow, TheoremError> {
        let s = Quantity::sqrt(q(n - 1));
        let l = Quantity::log2(q(n));
        let winner = match compare(&s, &l) {
            Some(std::cmp::Ordering::Greater) => Winner::Star,
            Some(std::cmp::Ordering::Less) => Winner::Bricklayer,
            _ => Winner::Tie,
        };
        let g = star(usize::try_from(n - 1).map_err(|_| TheoremError::Range("star too large".into()))?)?;
        Ok(StarRow {
            n,
            star: ((n - 1) as f64).sqrt(),
            log2_n: (n as f64).log2(),
            winner,
            star_power: principal_eigenvalue(&g)?.lambda,
        })
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let first_star_win = rows.iter().find(|r| r.winner == Winner::Star).map(|r| r.n);
    let star_wins_from =
        rows.iter().rposition(|r| r.winner != Winner::Star).map_or(Some(2), |i| rows.get(i + 1).map(|r| r.n));
    let max_power_error = rows.iter().map(|r| (r.star_power - r.star).abs()).fold(0.0, f64::max);
    Ok(StarCrossover { rows, first_star_win, star_wins_from, max_power_error })
}

/// A report of `λ(G(n, a)) > (a - 1) log_a n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub a: u32,
    pub n: u64,
    pub lambda: f64,
    pub bound: f64,
    pub margin: f64,
    pub graph: GraphJson,
    /// Outcome of the exact characteristic-polynomial recheck: `Some(true)`
    /// confirms the violation, `None` when the graph is too large.
    pub confirmed_exactly: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub a: u32,
    pub reports: Vec<BoundReport>,
    pub counterexamples: Vec<Counterexample>,
}

fn conjecture_bound(n: u64, a: u32) -> Quantity {
    Quantity::log(q(n), q(a as u64), q(a as u64 - 1))
}

fn confirm_counterexample(g: &LabeledGraph, n: u64, a: u32) -> Option<bool> {
    let exact = exact_lambda(g)?;
    match compare(&exact, &conjecture_bound(n, a)) {
        Some(std::cmp::Ordering::Greater) => Some(true),
        Some(_) => Some(false),
        None => None,
    }
}

/// Empirical check of `λ(G(n, a)) ≤ (a - 1) log_a n` for `1 ≤ n ≤ n_max`.
/// Violations become [`Counterexample`] artifacts rather than errors.
pub fn check_conjecture(a: u32, n_max: u64) -> Result<ConjectureReport, TheoremError> {
    if a < 3 {
        return Err(TheoremError::Range(format!("alphabet {a} must be at least 3")));
    }
    if n_max < 1 {
        return Err(TheoremError::Range("n_max must be at least 1".into()));
    }
    let rows = par_map((1..=n_max).collect(), |n| -> Result<(BoundReport, Option<Counterexample>), TheoremError> {
        let g = bricklayer(n, a)?;
        let lambda = principal_eigenvalue(&g)?.lambda;
        let scale = (a - 1) as f64;
        let mut r = match exact_log(n, a as u64) {
            Some(k) => {
                let bound = scale * k as f64;
                let verdict = if (lambda - bound).abs() <= MARGIN { Verdict::HoldsEqual } else { Verdict::Violated };
                BoundReport::new("conjecture", lambda, bound, verdict, Comparison::Float)
            }
            None => decide_float("conjecture", lambda, scale * (n as f64).ln() / (a as f64).ln(), || {
                Some((exact_lambda(&g)?, conjecture_bound(n, a)))
            }),
        };
        r.n = Some(n);
        r.a = Some(a);
        let counterexample = (r.verdict == Verdict::Violated).then(|| {
            r.witness = Some(g.to_json());
            Counterexample {
                a,
                n,
                lambda,
                bound: r.bound,
                margin: r.margin,
                graph: g.to_json(),
                confirmed_exactly: confirm_counterexample(&g, n, a),
            }
        });
        Ok((r, counterexample))
    });
    let mut reports = Vec::new();
    let mut counterexamples = Vec::new();
    for row in rows {
        let (r, c) = row?;
        reports.push(r);
        counterexamples.extend(c);
    }
    Ok(ConjectureReport { a, reports, counterexamples })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub d: u32,
    /// `log2(2^d - N) - λ(2^d - 1)`; NaN when `2^d ≤ N`.
    pub minus_margin: f64,
    pub minus_holds: bool,
    /// `log2(2^d + eps) - λ(2^d + 1)`.
    pub plus_margin: f64,
    pub plus_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub offset: u64,
    pub eps: f64,
    pub rows: Vec<AsymptoticRow>,
    /// Least `d` from which `λ(2^d - 1) < log2(2^d - N)` holds through the
    /// end of the range.
    pub minus_from: Option<u32>,
    pub plus_from: Option<u32>,
}

fn holds_from(rows: &[AsymptoticRow], pick: impl Fn(&AsymptoticRow) -> bool) -> Option<u32> {
    match rows.iter().rposition(|r| !pick(r)) {
        None => rows.first().map(|r| r.d),
        Some(i) => rows.get(i + 1).map(|r| r.d),
    }
}

/// For each `d` in range: does `λ(2^d - 1) < log2(2^d - N)` and
/// `λ(2^d + 1) < log2(2^d + eps)` hold? A numeric trend check.
pub fn asymptotic_probe(offset: u64, eps: f64, d_lo: u32, d_hi: u32) -> Result<AsymptoticReport, TheoremError> {
    if offset < 1 || !(eps > 0.0) || !eps.is_finite() {
        return Err(TheoremError::Range("need N >= 1 and eps > 0".into()));
    }
    if d_lo < 2 || d_lo > d_hi || d_hi > 62 {
        return Err(TheoremError::Range(format!("dimension range {d_lo}..={d_hi} outside 2..=62")));
    }
    let eps_q = BigRational::from_float(eps).expect("finite");
    let rows = par_map((d_lo as u64..=d_hi as u64).collect(), |d| -> Result<AsymptoticRow, TheoremError> {
        let d = d as u32;
        let minus_root = Quantity::root(cube_minus_poly(d)?, BigRational::zero(), rational(d as i64))?;
        let (minus_margin, minus_holds) = if pow2(d) > q(offset) {
            let r = decide("minus", &minus_root, &Quantity::log2(pow2(d) - q(offset)), Relation::Less);
            (r.margin, r.holds())
        } else {
            (f64::NAN, false)
        };
        let r = decide("plus", &plus_root(d)?, &Quantity::log2(pow2(d) + &eps_q), Relation::Less);
        Ok(AsymptoticRow { d, minus_margin, minus_holds, plus_margin: r.margin, plus_holds: r.holds() })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(AsymptoticReport {
        offset,
        eps,
        minus_from: holds_from(&rows, |r| r.minus_holds),
        plus_from: holds_from(&rows, |r| r.plus_holds),
        rows,
    })
}
