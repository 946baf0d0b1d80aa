//! Searches for the induced subgraph of the hypercube `Q_d` with the
//! largest principal eigenvalue among those with `n` vertices.
//!
//! For `d ≤ 4` the search is exhaustive over connected subgraphs up to
//! hypercube symmetry. A vertex set of `Q_d` with `d ≤ 6` fits in a `u64`
//! bitmask, and classes are represented by their lexicographically least
//! image under the `d! 2^d` automorphisms. Larger `d` falls back to random
//! connected growth.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{compare, Quantity};
use crate::graphs::{induced_subgraph, GraphError};
use crate::polynomials::rational;
use crate::spectra::{ball_eigenvalue_reduced, principal_eigenvalue, SpectraError, DEFAULT_TOL};

/// Eigenvalue difference below which two candidates tie.
pub const TIE_TOL: f64 = 1e-9;
/// Largest dimension handled by [`canonical_form`].
pub const MAX_CANONICAL_DIM: u32 = 6;
/// Largest dimension handled by [`exhaustive_max_eig`].
pub const MAX_EXHAUSTIVE_DIM: u32 = 4;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("dimension {d} outside 1..={max} for {what}")]
    Dimension { d: u32, max: u32, what: &'static str },
    #[error("vertex count {n} outside 1..={max}")]
    Count { n: u64, max: u64 },
    #[error("label {0} outside the hypercube")]
    Label(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sample,
    Unrestricted,
}

/// Best subgraph found for one `(d, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub mode: Mode,
    pub d: u32,
    pub n: u64,
    /// `None` when nothing was explored.
    pub best_lambda: Option<f64>,
    /// Sorted labels of the best subgraph; its canonical form when
    /// `d ≤ 6`.
    pub witness: Vec<u64>,
    pub is_bricklayer: bool,
    /// Canonical classes (exhaustive) or samples (sampling) examined.
    pub explored: u64,
    /// Candidates within [`TIE_TOL`] of the best.
    pub ties: u64,
    pub bricklayer_lambda: f64,
}

/// The automorphism group of `Q_d` as vertex permutations.
#[derive(Debug, Clone)]
pub struct CubeGroup {
    d: u32,
    maps: Vec<Vec<u8>>,
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographic order on sorted label sets, read off their bitmasks: the
/// smaller set owns the lowest label where they differ.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

impl CubeGroup {
    pub fn new(d: u32) -> Result<Self, SearchError> {
        if d == 0 || d > MAX_CANONICAL_DIM {
            return Err(SearchError::Dimension { d, max: MAX_CANONICAL_DIM, what: "canonical forms" });
        }
        let size = 1usize << d;
        let mut maps = Vec::new();
        for perm in permutations(d as usize) {
            for flip in 0..size {
                let map = (0..size)
                    .map(|x| {
                        let permuted = perm.iter().enumerate().fold(0, |acc, (i, &p)| acc | (((x >> i) & 1) << p));
                        (permuted ^ flip) as u8
                    })
                    .collect();
                maps.push(map);
            }
        }
        Ok(CubeGroup { d, maps })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    fn image(map: &[u8], mut mask: u64) -> u64 {
        let mut out = 0u64;
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            out |= 1u64 << map[v];
            mask &= mask - 1;
        }
        out
    }

    /// Image of a vertex bitmask under the `i`-th automorphism.
    pub fn apply(&self, i: usize, mask: u64) -> u64 {
        Self::image(&self.maps[i], mask)
    }

    /// Lexicographically least image of a vertex bitmask.
    pub fn canonical_mask(&self, mask: u64) -> u64 {
        self.maps
            .iter()
            .map(|m| Self::image(m, mask))
            .fold(mask, |best, img| if lex_less(img, best) { img } else { best })
    }
}

pub fn mask_of(labels: &[u64], d: u32) -> Result<u64, SearchError> {
    labels.iter().try_fold(
        0u64,
        |acc, &l| {
            if l >= 1u64 << d {
                Err(SearchError::Label(l))
            } else {
                Ok(acc | 1u64 << l)
            }
        },
    )
}

pub fn labels_of(mut mask: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as u64);
        mask &= mask - 1;
    }
    out
}

/// Lexicographically least image of a label set under the hypercube
/// automorphisms (coordinate permutations and complementations).
pub fn canonical_form(labels: &[u64], d: u32) -> Result<Vec<u64>, SearchError> {
    let group = CubeGroup::new(d)?;
    Ok(labels_of(group.canonical_mask(mask_of(labels, d)?)))
}

fn neighbor_mask(mask: u64, d: u32) -> u64 {
    let mut out = 0u64;
    for v in labels_of(mask) {
        for b in 0..d {
            out |= 1u64 << (v ^ (1 << b));
        }
    }
    out & !mask
}

fn lambda_of(labels: &[u64], d: u32) -> Result<f64, SearchError> {
    let g = induced_subgraph(d, 2, labels)?;
    Ok(principal_eigenvalue(&g)?.lambda)
}

fn par_map<T: Send, U: Sync, F>(items: &[U], f: F) -> Vec<T>
where
    F: Fn(&U) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Canonical representatives of all connected `n`-vertex induced subgraphs
/// of `Q_d`, sorted. Each level grows the previous one by a vertex adjacent
/// to the set; every connected graph has a vertex whose removal keeps it
/// connected, so no class is missed.
pub fn connected_classes(group: &CubeGroup, n: u64) -> Vec<u64> {
    let d = group.dimension();
    let mut level: Vec<u64> = vec![1];
    for _ in 1..n {
        let grown: Vec<Vec<u64>> = par_map(&level, |&mask| {
            labels_of(neighbor_mask(mask, d)).into_iter().map(|v| group.canonical_mask(mask | 1u64 << v)).collect()
        });
        let set: HashSet<u64> = grown.into_iter().flatten().collect();
        level = set.into_iter().collect();
        level.sort_unstable_by(|a, b| {
            if lex_less(*a, *b) {
                std::cmp::Ordering::Less
            } else if a == b {
                std::cmp::Ordering::Equal
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }
    level
}

/// Picks the largest eigenvalue, breaking ties within [`TIE_TOL`] by the
/// lexicographically least label set. Input order does not matter.
fn best_of(candidates: &[(f64, Vec<u64>)]) -> Option<(f64, Vec<u64>, u64)> {
    let top = candidates.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<&(f64, Vec<u64>)> = candidates.iter().filter(|c| c.0 >= top - TIE_TOL).collect();
    let winner = tied.iter().min_by(|a, b| a.1.cmp(&b.1))?;
    Some((winner.0, winner.1.clone(), tied.len() as u64))
}

fn check_count(d: u32, n: u64) -> Result<(), SearchError> {
    let max = 1u64 << d;
    if n == 0 || n > max {
        return Err(SearchError::Count { n, max });
    }
    Ok(())
}

fn bricklayer_labels(n: u64) -> Vec<u64> {
    (0..n).collect()
}

/// Maximum principal eigenvalue over connected `n`-vertex induced
/// subgraphs of `Q_d`, `d ≤ 4`, one representative per symmetry class.
pub fn exhaustive_max_eig(d: u32, n: u64) -> Result<SearchRecord, SearchError> {
    if d == 0 || d > MAX_EXHAUSTIVE_DIM {
        return Err(SearchError::Dimension { d, max: MAX_EXHAUSTIVE_DIM, what: "exhaustive search" });
    }
    check_count(d, n)?;
    let group = CubeGroup::new(d)?;
    let classes = connected_classes(&group, n);
    let scored: Vec<Result<(f64, Vec<u64>), SearchError>> = par_map(&classes, |&mask| {
        let labels = labels_of(mask);
        Ok((lambda_of(&labels, d)?, labels))
    });
    let scored: Vec<(f64, Vec<u64>)> = scored.into_iter().collect::<Result<_, _>>()?;
    let (best, witness, ties) = best_of(&scored).expect("at least one class");
    let brick = labels_of(group.canonical_mask(mask_of(&bricklayer_labels(n), d)?));
    Ok(SearchRecord {
        mode: Mode::Exhaustive,
        d,
        n,
        best_lambda: Some(best),
        is_bricklayer: witness == brick,
        witness,
        explored: classes.len() as u64,
        ties,
        bricklayer_lambda: lambda_of(&bricklayer_labels(n), d)?,
    })
}

/// Maximum principal eigenvalue over every `n`-subset of `Q_d`, connected
/// or not, by brute force. Used to confirm that restricting to connected
/// subgraphs loses nothing.
pub fn unrestricted_max_eig(d: u32, n: u64) -> Result<SearchRecord, SearchError> {
    if d == 0 || d > 3 {
        return Err(SearchError::Dimension { d, max: 3, what: "unrestricted search" });
    }
    check_count(d, n)?;
    let size = 1u64 << d;
    let masks: Vec<u64> = (0..1u64 << size).filter(|m| m.count_ones() as u64 == n).collect();
    let scored: Vec<Result<(f64, Vec<u64>), SearchError>> = par_map(&masks, |&mask| {
        let labels = labels_of(mask);
        Ok((lambda_of(&labels, d)?, labels))
    });
    let scored: Vec<(f64, Vec<u64>)> = scored.into_iter().collect::<Result<_, _>>()?;
    let (best, witness, ties) = best_of(&scored).expect("at least one subset");
    let bricklayer_lambda = lambda_of(&bricklayer_labels(n), d)?;
    Ok(SearchRecord {
        mode: Mode::Unrestricted,
        d,
        n,
        best_lambda: Some(best),
        is_bricklayer: best <= bricklayer_lambda + TIE_TOL,
        witness,
        explored: masks.len() as u64,
        ties,
        bricklayer_lambda,
    })
}

/// Random connected growth: a uniform start vertex, then repeatedly a
/// uniform vertex among those adjacent to the current set.
pub fn grow_random(d: u32, n: u64, rng: &mut impl Rng) -> Vec<u64> {
    let size = 1u64 << d;
    let mut set: HashSet<u64> = HashSet::new();
    let mut members = vec![rng.random_range(0..size)];
    set.insert(members[0]);
    let mut frontier: Vec<u64> = Vec::new();
    let mut in_frontier: HashSet<u64> = HashSet::new();
    let push_neighbors = |v: u64, set: &HashSet<u64>, frontier: &mut Vec<u64>, in_frontier: &mut HashSet<u64>| {
        for b in 0..d {
            let w = v ^ (1 << b);
            if !set.contains(&w) && in_frontier.insert(w) {
                frontier.push(w);
            }
        }
    };
    push_neighbors(members[0], &set, &mut frontier, &mut in_frontier);
    while (members.len() as u64) < n {
        let i = rng.random_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        in_frontier.remove(&v);
        set.insert(v);
        members.push(v);
        push_neighbors(v, &set, &mut frontier, &mut in_frontier);
    }
    members.sort_unstable();
    members
}

/// Best of `samples` randomly grown connected subgraphs. Sample `i` draws
/// from stream `i` of a ChaCha8 generator keyed by `seed`, so the result
/// does not depend on how samples are spread over threads.
pub fn sample_max_eig(d: u32, n: u64, samples: u64, seed: u64) -> Result<SearchRecord, SearchError> {
    if d == 0 || d > 20 {
        return Err(SearchError::Dimension { d, max: 20, what: "sampling" });
    }
    check_count(d, n)?;
    let bricklayer_lambda = lambda_of(&bricklayer_labels(n), d)?;
    let indices: Vec<u64> = (0..samples).collect();
    let scored: Vec<Result<(f64, Vec<u64>), SearchError>> = par_map(&indices, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let labels = grow_random(d, n, &mut rng);
        Ok((lambda_of(&labels, d)?, labels))
    });
    let scored: Vec<(f64, Vec<u64>)> = scored.into_iter().collect::<Result<_, _>>()?;
    let Some((best, witness, ties)) = best_of(&scored) else {
        return Ok(SearchRecord {
            mode: Mode::Sample,
            d,
            n,
            best_lambda: None,
            witness: Vec::new(),
            is_bricklayer: false,
            explored: 0,
            ties: 0,
            bricklayer_lambda,
        });
    };
    let witness = if d <= MAX_CANONICAL_DIM { canonical_form(&witness, d)? } else { witness };
    Ok(SearchRecord {
        mode: Mode::Sample,
        d,
        n,
        best_lambda: Some(best),
        witness,
        is_bricklayer: best >= bricklayer_lambda - TIE_TOL,
        explored: samples,
        ties,
        bricklayer_lambda,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarRow {
    pub d: u32,
    pub n: u64,
    /// `λ(B(d, 1)) = sqrt(d)` from the distance-class reduction.
    pub ball_lambda: f64,
    pub log2_n: f64,
    pub ball_wins: bool,
}

/// The radius-one ball `B(d, 1)` (a star with `d` leaves, `n = d + 1`
/// vertices) against the bound `log2 n` that bricklayer's graphs meet.
pub fn star_vs_bricklayer_table(d_max: u32) -> Result<Vec<StarRow>, SearchError> {
    (1..=d_max)
        .map(|d| {
            let n = d as u64 + 1;
            let ball = ball_eigenvalue_reduced(d, 1, DEFAULT_TOL)?;
            let wins = compare(&Quantity::sqrt(rational(d as i64)), &Quantity::log2(rational(n as i64)))
                == Some(std::cmp::Ordering::Greater);
            Ok(StarRow { d, n, ball_lambda: ball.result.lambda, log2_n: (n as f64).log2(), ball_wins: wins })
        })
        .collect()
}
