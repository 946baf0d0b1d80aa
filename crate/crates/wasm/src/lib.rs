//! Browser bindings for the demo page in `www/`. Every export returns a
//! JSON string; the plain functions behind them run natively as well.

use bricklayer::dynamics::{evolve, predicted_growth, MutationParams, PopulationState};
use bricklayer::graphs::{bricklayer, Adjacency, AnyGraph, GraphError, GraphSpec};
use bricklayer::spectra::principal_eigenvalue;
use bricklayer::theorem::{star_crossover, Winner};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` the page may request for the eigenvalue series.
pub const MAX_SERIES: u64 = 4096;
/// Largest generation count for one simulation.
pub const MAX_GENERATIONS: u64 = 100_000;
/// Trajectories are thinned to at most this many points.
pub const MAX_POINTS: usize = 1000;

#[derive(Debug, Serialize)]
struct SeriesPoint {
    n: u64,
    lambda: f64,
    log2_n: f64,
}

#[derive(Debug, Serialize)]
struct StarPoint {
    n: u64,
    star: f64,
    log2_n: f64,
    star_wins: bool,
}

#[derive(Debug, Serialize)]
struct Crossover {
    points: Vec<StarPoint>,
    first_star_win: Option<u64>,
}

#[derive(Debug, Serialize)]
struct TrajectoryPoint {
    generation: u64,
    robustness: f64,
    growth: f64,
}

#[derive(Debug, Serialize)]
struct Simulation {
    order: usize,
    d: u32,
    a: u32,
    lambda: f64,
    predicted_robustness: f64,
    predicted_growth: f64,
    points: Vec<TrajectoryPoint>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo types serialize")
}

/// `λ(G(n))` and `log2 n` for `1 ≤ n ≤ n_max`.
pub fn eigenvalue_series_json(n_max: u64) -> Result<String, String> {
    if !(1..=MAX_SERIES).contains(&n_max) {
        return Err(format!("n must be between 1 and {MAX_SERIES}"));
    }
    let mut points = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let g = bricklayer(n, 2).map_err(|e| e.to_string())?;
        let lambda = principal_eigenvalue(&g).map_err(|e| e.to_string())?.lambda;
        points.push(SeriesPoint { n, lambda, log2_n: (n as f64).log2() });
    }
    Ok(to_json(&points))
}

/// The star on `n` vertices against `log2 n`.
pub fn star_crossover_json(n_max: u64) -> Result<String, String> {
    if !(2..=MAX_SERIES).contains(&n_max) {
        return Err(format!("n must be between 2 and {MAX_SERIES}"));
    }
    let c = star_crossover(n_max).map_err(|e| e.to_string())?;
    let points = c
        .rows
        .iter()
        .map(|r| StarPoint { n: r.n, star: r.star, log2_n: r.log2_n, star_wins: r.winner == Winner::Star })
        .collect();
    Ok(to_json(&Crossover { points, first_star_win: c.first_star_win }))
}

/// Mutation-selection trajectory on the graph described by `spec`.
pub fn simulate_json(spec: &str, mu: f64, fitness: f64, generations: u64) -> Result<String, String> {
    if !(1..=MAX_GENERATIONS).contains(&generations) {
        return Err(format!("generations must be between 1 and {MAX_GENERATIONS}"));
    }
    let spec: GraphSpec = spec.trim().parse().map_err(|e: GraphError| e.to_string())?;
    let AnyGraph::Labeled(g) = spec.build().map_err(|e| e.to_string())? else {
        return Err("stars have no genotype labels; use ball:n,1".into());
    };
    if g.order() > 1 << 14 {
        return Err(format!("{} vertices is too many for the demo", g.order()));
    }
    let (d, a) = (g.dimension(), g.alphabet());
    let params = MutationParams { mu, f: fitness };
    let (_, trajectory) =
        evolve(&g, d, a, &params, &PopulationState::uniform(g.order()), generations).map_err(|e| e.to_string())?;
    let lambda = principal_eigenvalue(&g).map_err(|e| e.to_string())?.lambda;
    let stride = trajectory.rows.len().div_ceil(MAX_POINTS).max(1);
    let last = trajectory.rows.len() - 1;
    let points = trajectory
        .rows
        .iter()
        .enumerate()
        .filter(|(i, _)| i % stride == 0 || *i == last)
        .map(|(_, r)| TrajectoryPoint {
            generation: r.generation,
            robustness: r.measured_robustness,
            growth: r.growth_factor,
        })
        .collect();
    Ok(to_json(&Simulation {
        order: g.order(),
        d,
        a,
        lambda,
        predicted_robustness: lambda / (d as f64 * (a - 1) as f64),
        predicted_growth: predicted_growth(lambda, d, a, &params),
        points,
    }))
}

#[wasm_bindgen]
pub fn eigenvalue_series(n_max: u32) -> Result<String, JsValue> {
    eigenvalue_series_json(n_max as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn star_series(n_max: u32) -> Result<String, JsValue> {
    star_crossover_json(n_max as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(spec: &str, mu: f64, fitness: f64, generations: u32) -> Result<String, JsValue> {
    simulate_json(spec, mu, fitness, generations as u64).map_err(|e| JsValue::from_str(&e))
}
