//! Deterministic mutation-selection dynamics on a neutral network.
//!
//! A population spread over the genotypes of a neutral network `G` inside
//! `H(d, a)` evolves by `n(t+1) = f M n(t)` with the mutation matrix
//! `M = (1 - μ d (a-1)) I + μ A`. Mutations that leave the network are
//! lost. In the long run the population shape approaches the Perron vector
//! of `A` and the mean genotype robustness approaches `λ / (d (a-1))`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::Adjacency;

/// `μ d (a-1)` above which a warning is logged: the linear mutation model
/// assumes it is much smaller than one.
pub const WEAK_MUTATION_LIMIT: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("mutation rate {0} outside [0, 1]")]
    Rate(f64),
    #[error("fitness {0} must be positive and finite")]
    Fitness(f64),
    #[error("mu d (a-1) = {0} exceeds 1, so M has negative entries")]
    Overload(f64),
    #[error("population vector has {got} entries, graph has {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("population must be finite, nonnegative and not all zero")]
    InvalidState,
    #[error("population died out at generation {0}")]
    Degenerate(u64),
    #[error("growth factor has not stabilized (relative change {0:e})")]
    NotStabilized(f64),
    #[error("trajectory too short")]
    ShortTrajectory,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutationParams {
    pub mu: f64,
    pub f: f64,
}

impl Default for MutationParams {
    fn default() -> Self {
        MutationParams { mu: 0.01, f: 1.0 }
    }
}

impl MutationParams {
    /// Checks the parameters against `H(d, a)`; `mu = 0` is accepted as the
    /// no-mutation limit.
    pub fn validate(&self, d: u32, a: u32) -> Result<(), DynamicsError> {
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(DynamicsError::Rate(self.mu));
        }
        if !(self.f > 0.0 && self.f.is_finite()) {
            return Err(DynamicsError::Fitness(self.f));
        }
        let load = self.load(d, a);
        if load > 1.0 {
            return Err(DynamicsError::Overload(load));
        }
        if load > WEAK_MUTATION_LIMIT {
            log::warn!("mu d (a-1) = {load} is not small; the linear mutation model is a poor approximation");
        }
        Ok(())
    }

    /// Expected number of mutations per genotype per generation.
    pub fn load(&self, d: u32, a: u32) -> f64 {
        self.mu * d as f64 * (a as f64 - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationState {
    /// Population shape; the true population is `exp(log_scale) * n`.
    pub n: Vec<f64>,
    pub generation: u64,
    pub log_scale: f64,
}

impl PopulationState {
    pub fn uniform(order: usize) -> Self {
        PopulationState { n: vec![1.0 / order as f64; order], generation: 0, log_scale: 0.0 }
    }

    pub fn from_vector(n: Vec<f64>) -> Result<Self, DynamicsError> {
        let s = PopulationState { n, generation: 0, log_scale: 0.0 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let ok = self.n.iter().all(|x| x.is_finite() && *x >= 0.0) && self.n.iter().any(|x| *x > 0.0);
        if ok {
            Ok(())
        } else {
            Err(DynamicsError::InvalidState)
        }
    }

    pub fn total(&self) -> f64 {
        self.n.iter().sum()
    }

    /// Shape scaled to unit sum.
    pub fn normalized(&self) -> Vec<f64> {
        let t = self.total();
        self.n.iter().map(|x| x / t).collect()
    }
}

/// Fraction of each genotype's `d (a-1)` single mutations that stay on the
/// network.
pub fn genotype_robustness<G: Adjacency + ?Sized>(g: &G, d: u32, a: u32) -> Vec<f64> {
    let full = d as f64 * (a as f64 - 1.0);
    (0..g.order()).map(|v| g.degree(v) as f64 / full).collect()
}

/// `M v = (1 - μ d (a-1)) v + μ A v`.
pub fn mutation_matrix_apply<G: Adjacency + ?Sized>(g: &G, d: u32, a: u32, mu: f64, v: &[f64]) -> Vec<f64> {
    let stay = 1.0 - mu * d as f64 * (a as f64 - 1.0);
    (0..g.order()).map(|i| stay * v[i] + mu * g.neighbors(i).iter().map(|&j| v[j]).sum::<f64>()).collect()
}

/// Population-weighted mean genotype robustness.
pub fn measured_robustness<G: Adjacency + ?Sized>(
    g: &G,
    d: u32,
    a: u32,
    state: &PopulationState,
) -> Result<f64, DynamicsError> {
    let total = state.total();
    if !(total > 0.0) {
        return Err(DynamicsError::InvalidState);
    }
    let r = genotype_robustness(g, d, a);
    Ok(state.n.iter().zip(&r).map(|(n, r)| n * r).sum::<f64>() / total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub generation: u64,
    pub measured_robustness: f64,
    /// Total population after this generation over the total before it.
    pub growth_factor: f64,
    pub log_scale: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
}

impl Trajectory {
    pub const CSV_HEADER: &'static str = "generation,measured_robustness,growth_factor,log_scale";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.17e},{:.17e},{:.17e}",
                r.generation, r.measured_robustness, r.growth_factor, r.log_scale
            );
        }
        out
    }
}

/// Runs `t` generations of `n ← f M n`, renormalizing to unit sum each
/// generation and accumulating the logarithm of the scale in `log_scale`.
pub fn evolve<G: Adjacency + ?Sized>(
    g: &G,
    d: u32,
    a: u32,
    params: &MutationParams,
    n0: &PopulationState,
    t: u64,
) -> Result<(PopulationState, Trajectory), DynamicsError> {
    params.validate(d, a)?;
    if n0.n.len() != g.order() {
        return Err(DynamicsError::Length { expected: g.order(), got: n0.n.len() });
    }
    n0.validate()?;
    let mut state = n0.clone();
    let mut trajectory = Trajectory { rows: Vec::with_capacity(t as usize) };
    for _ in 0..t {
        let before = state.total();
        let mut next = mutation_matrix_apply(g, d, a, params.mu, &state.n);
        next.iter_mut().for_each(|x| *x *= params.f);
        let after: f64 = next.iter().sum();
        state.generation += 1;
        if !(after > 0.0) || !after.is_finite() {
            return Err(DynamicsError::Degenerate(state.generation));
        }
        next.iter_mut().for_each(|x| *x /= after);
        state.n = next;
        state.log_scale += after.ln();
        trajectory.rows.push(TrajectoryRow {
            generation: state.generation,
            measured_robustness: measured_robustness(g, d, a, &state)?,
            growth_factor: after / before,
            log_scale: state.log_scale,
        });
    }
    Ok((state, trajectory))
}

/// Relative change of the growth factor over the last generation below
/// which it counts as stabilized.
pub const STABLE_GROWTH: f64 = 1e-10;

/// The stabilized per-generation growth factor of a trajectory.
pub fn effective_growth(trajectory: &Trajectory) -> Result<f64, DynamicsError> {
    let rows = &trajectory.rows;
    if rows.len() < 2 {
        return Err(DynamicsError::ShortTrajectory);
    }
    let (prev, last) = (rows[rows.len() - 2].growth_factor, rows[rows.len() - 1].growth_factor);
    let change = ((last - prev) / last).abs();
    if change < STABLE_GROWTH {
        Ok(last)
    } else {
        Err(DynamicsError::NotStabilized(change))
    }
}

/// Long-run growth factor `f (1 - μ d (a-1) (1 - λ / (d (a-1))))`.
pub fn predicted_growth(lambda: f64, d: u32, a: u32, params: &MutationParams) -> f64 {
    let full = d as f64 * (a as f64 - 1.0);
    params.f * (1.0 - params.mu * full * (1.0 - lambda / full))
}
