//! Hamming graphs `H(d, a)` and the subgraph families built inside them.
//!
//! A vertex is identified by its integer label in `[0, a^d)`, read as a
//! `d`-digit base-`a` string. Two labels are adjacent when their base-`a`
//! digits differ in exactly one position. Every graph here is an induced
//! subgraph of some `H(d, a)`, except [`StarGraph`], which is kept as a
//! separate type.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count (and largest label space for full cubes) we will
/// materialize.
pub const MAX_VERTICES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("capacity exceeded: {what} needs {requested} vertices, limit is {limit}")]
    Capacity { what: &'static str, requested: u128, limit: u64 },
    #[error("alphabet size must be at least 2, got {0}")]
    Alphabet(u32),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("vertex count must be positive")]
    Empty,
    #[error("label {label} is outside [0, {bound})")]
    LabelOutOfRange { label: u64, bound: u128 },
    #[error("duplicate label {0}")]
    DuplicateLabel(u64),
    #[error("radius {r} exceeds dimension {d}")]
    Radius { d: u32, r: u32 },
    #[error("dimension {d} is too small to hold {n} labels in base {a}")]
    DimensionTooSmall { n: u64, a: u32, d: u32 },
    #[error("cartesian product with K2 is only defined for binary graphs")]
    NotBinary,
    #[error("invalid graph description: {0}")]
    Parse(String),
}

/// Read-only adjacency access shared by every graph type in the crate.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    fn mean_degree(&self) -> f64 {
        if self.order() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.order() as f64
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted lexicographically.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.order() {
            for &j in self.neighbors(i) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A subgraph of `H(d, a)` induced by a set of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    d: u32,
    a: u32,
    labels: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
    dimension_overridden: bool,
}

/// Wire format: `{"d", "a", "labels", "edges"}` with sorted `i < j` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub d: u32,
    pub a: u32,
    pub labels: Vec<u64>,
    pub edges: Vec<[usize; 2]>,
}

fn label_space(d: u32, a: u32) -> u128 {
    (a as u128).checked_pow(d).unwrap_or(u128::MAX)
}

fn check_params(d: u32, a: u32) -> Result<u128, GraphError> {
    if a < 2 {
        return Err(GraphError::Alphabet(a));
    }
    if d == 0 {
        return Err(GraphError::ZeroDimension);
    }
    let space = label_space(d, a);
    if space > u64::MAX as u128 {
        return Err(GraphError::Capacity { what: "label space", requested: space, limit: u64::MAX });
    }
    Ok(space)
}

/// Whether two labels differ in exactly one base-`a` digit.
pub fn labels_adjacent(u: u64, v: u64, a: u32) -> bool {
    if a == 2 {
        return (u ^ v).count_ones() == 1;
    }
    let a = a as u64;
    let (mut u, mut v) = (u, v);
    let mut mismatches = 0;
    while u > 0 || v > 0 {
        if u % a != v % a {
            mismatches += 1;
            if mismatches > 1 {
                return false;
            }
        }
        u /= a;
        v /= a;
    }
    mismatches == 1
}

/// Calls `f` with every label at Hamming distance one from `label`.
fn for_each_mutant(label: u64, d: u32, a: u32, mut f: impl FnMut(u64)) {
    if a == 2 {
        for bit in 0..d {
            f(label ^ (1u64 << bit));
        }
        return;
    }
    let a = a as u64;
    let mut place = 1u64;
    for _ in 0..d {
        let digit = (label / place) % a;
        let base = label - digit * place;
        for other in 0..a {
            if other != digit {
                f(base + other * place);
            }
        }
        place = place.saturating_mul(a);
    }
}

impl LabeledGraph {
    fn build(d: u32, a: u32, labels: Vec<u64>) -> Self {
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let adjacency = labels
            .iter()
            .map(|&label| {
                let mut nbrs = Vec::new();
                for_each_mutant(label, d, a, |m| {
                    if let Some(&j) = index.get(&m) {
                        nbrs.push(j);
                    }
                });
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        LabeledGraph { d, a, labels, adjacency, dimension_overridden: false }
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn alphabet(&self) -> u32 {
        self.a
    }

    /// Number of mutational directions per vertex, `d(a-1)`.
    pub fn mutation_directions(&self) -> usize {
        self.d as usize * (self.a as usize - 1)
    }

    /// True when the embedding dimension was set larger than the minimum.
    pub fn dimension_overridden(&self) -> bool {
        self.dimension_overridden
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// The same vertex set viewed inside a larger `H(d', a)`.
    pub fn with_dimension(&self, d: u32) -> Result<Self, GraphError> {
        if d < self.d {
            let n = self.labels.last().map_or(0, |&l| l + 1);
            return Err(GraphError::DimensionTooSmall { n, a: self.a, d });
        }
        check_params(d, self.a)?;
        let mut g = self.clone();
        g.dimension_overridden = g.dimension_overridden || d > self.d;
        g.d = d;
        Ok(g)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            d: self.d,
            a: self.a,
            labels: self.labels.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// Rebuilds the graph from its labels; the edge list must match the
    /// induced edges exactly.
    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let g = induced_subgraph(json.d, json.a, &json.labels)?;
        let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(i, j)| [i, j]).collect();
        let mut given = json.edges.clone();
        given.sort_unstable();
        if given != edges {
            return Err(GraphError::Parse("edge list is not the induced edge set of the labels".into()));
        }
        Ok(g)
    }
}

impl Adjacency for LabeledGraph {
    fn order(&self) -> usize {
        self.labels.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

/// Star `K(1, n)`: vertex 0 is the centre, vertices `1..=n` are leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    leaves: usize,
    adjacency: Vec<Vec<usize>>,
}

impl StarGraph {
    pub fn leaves(&self) -> usize {
        self.leaves
    }
}

impl Adjacency for StarGraph {
    fn order(&self) -> usize {
        self.leaves + 1
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

/// The full Hamming graph `H(d, a) = K_a □ ... □ K_a`.
pub fn hamming_graph(d: u32, a: u32) -> Result<LabeledGraph, GraphError> {
    let space = check_params(d, a)?;
    if space > MAX_VERTICES as u128 {
        return Err(GraphError::Capacity { what: "hamming graph", requested: space, limit: MAX_VERTICES });
    }
    Ok(LabeledGraph::build(d, a, (0..space as u64).collect()))
}

/// Least `d >= 1` with `a^d >= n`.
pub fn minimal_dimension(n: u64, a: u32) -> u32 {
    let mut d = 1;
    while label_space(d, a) < n as u128 {
        d += 1;
    }
    d
}

/// Bricklayer's graph `G(n, a)`: the subgraph induced by labels `0..n` in
/// the smallest Hamming graph that holds them.
pub fn bricklayer(n: u64, a: u32) -> Result<LabeledGraph, GraphError> {
    if a < 2 {
        return Err(GraphError::Alphabet(a));
    }
    bricklayer_in(n, a, minimal_dimension(n.max(1), a)).map(|mut g| {
        g.dimension_overridden = false;
        g
    })
}

/// Bricklayer's graph embedded in `H(d, a)` for a caller-chosen `d`.
pub fn bricklayer_in(n: u64, a: u32, d: u32) -> Result<LabeledGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let space = check_params(d, a)?;
    if space < n as u128 {
        return Err(GraphError::DimensionTooSmall { n, a, d });
    }
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity { what: "bricklayer graph", requested: n as u128, limit: MAX_VERTICES });
    }
    let mut g = LabeledGraph::build(d, a, (0..n).collect());
    g.dimension_overridden = d > minimal_dimension(n, a);
    Ok(g)
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Hamming ball of radius `r` around label 0 in `H(d, 2)`.
///
/// Labels are generated by popcount, so the ambient cube is never built.
pub fn hamming_ball(d: u32, r: u32) -> Result<LabeledGraph, GraphError> {
    check_params(d, 2)?;
    if r > d {
        return Err(GraphError::Radius { d, r });
    }
    let size: u128 = (0..=r).map(|i| binomial(d, i)).sum();
    if size > MAX_VERTICES as u128 {
        return Err(GraphError::Capacity { what: "hamming ball", requested: size, limit: MAX_VERTICES });
    }
    let mut labels = Vec::with_capacity(size as usize);
    for weight in 0..=r {
        push_combinations(d, weight, &mut labels);
    }
    labels.sort_unstable();
    Ok(LabeledGraph::build(d, 2, labels))
}

/// Appends every `d`-bit word with exactly `k` set bits (Gosper's hack).
fn push_combinations(d: u32, k: u32, out: &mut Vec<u64>) {
    if k == 0 {
        out.push(0);
        return;
    }
    let limit = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut x: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        let next = (((r ^ x) >> 2) / c) | r;
        if next > limit || next < x {
            break;
        }
        x = next;
    }
}

/// The star `S_n` with `n` leaves.
pub fn star(n: usize) -> Result<StarGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut adjacency = vec![(1..=n).collect::<Vec<_>>()];
    adjacency.extend((0..n).map(|_| vec![0]));
    Ok(StarGraph { leaves: n, adjacency })
}

/// Subgraph of `H(d, a)` induced by an arbitrary label set.
pub fn induced_subgraph(d: u32, a: u32, labels: &[u64]) -> Result<LabeledGraph, GraphError> {
    let space = check_params(d, a)?;
    if labels.len() as u64 > MAX_VERTICES {
        return Err(GraphError::Capacity {
            what: "induced subgraph",
            requested: labels.len() as u128,
            limit: MAX_VERTICES,
        });
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::DuplicateLabel(w[0]));
        }
    }
    if let Some(&max) = sorted.last() {
        if max as u128 >= space {
            return Err(GraphError::LabelOutOfRange { label: max, bound: space });
        }
    }
    Ok(LabeledGraph::build(d, a, sorted))
}

/// `G □ K_2`, realised inside `H(d+1, 2)` by appending the new coordinate
/// as the least significant bit: each label `l` becomes `2l` and `2l + 1`.
/// With this placement the product of `G(n)` is literally `G(2n)`.
pub fn cartesian_product_k2(g: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    if g.a != 2 {
        return Err(GraphError::NotBinary);
    }
    if g.d >= 63 {
        return Err(GraphError::Capacity { what: "cartesian product", requested: 1u128 << (g.d + 1), limit: u64::MAX });
    }
    let labels: Vec<u64> = g.labels.iter().flat_map(|&l| [2 * l, 2 * l + 1]).collect();
    induced_subgraph(g.d + 1, 2, &labels)
}

/// Connected components as sorted vertex-index lists, ordered by their
/// smallest member.
pub fn connected_components<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected<G: Adjacency + ?Sized>(g: &G) -> bool {
    g.order() > 0 && connected_components(g).len() == 1
}

/// Command-line graph description: `bricklayer:n[,a]`, `ball:d,r`,
/// `star:n`, `hamming:d,a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSpec {
    Bricklayer { n: u64, a: u32 },
    Ball { d: u32, r: u32 },
    Star { leaves: usize },
    Hamming { d: u32, a: u32 },
}

/// A constructed graph of either kind.
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Labeled(LabeledGraph),
    Star(StarGraph),
}

impl AnyGraph {
    pub fn as_labeled(&self) -> Option<&LabeledGraph> {
        match self {
            AnyGraph::Labeled(g) => Some(g),
            AnyGraph::Star(_) => None,
        }
    }
}

impl Adjacency for AnyGraph {
    fn order(&self) -> usize {
        match self {
            AnyGraph::Labeled(g) => g.order(),
            AnyGraph::Star(s) => s.order(),
        }
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        match self {
            AnyGraph::Labeled(g) => g.neighbors(v),
            AnyGraph::Star(s) => s.neighbors(v),
        }
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<AnyGraph, GraphError> {
        Ok(match *self {
            GraphSpec::Bricklayer { n, a } => AnyGraph::Labeled(bricklayer(n, a)?),
            GraphSpec::Ball { d, r } => AnyGraph::Labeled(hamming_ball(d, r)?),
            GraphSpec::Star { leaves } => AnyGraph::Star(star(leaves)?),
            GraphSpec::Hamming { d, a } => AnyGraph::Labeled(hamming_graph(d, a)?),
        })
    }
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse(s.to_string());
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> =
            args.split(',').map(|t| t.trim().parse::<u64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let small = |x: u64| u32::try_from(x).map_err(|_| bad());
        match (kind, nums.as_slice()) {
            ("bricklayer", [n]) => Ok(GraphSpec::Bricklayer { n: *n, a: 2 }),
            ("bricklayer", [n, a]) => Ok(GraphSpec::Bricklayer { n: *n, a: small(*a)? }),
            ("ball", [d, r]) => Ok(GraphSpec::Ball { d: small(*d)?, r: small(*r)? }),
            ("star", [n]) => Ok(GraphSpec::Star { leaves: usize::try_from(*n).map_err(|_| bad())? }),
            ("hamming", [d, a]) => Ok(GraphSpec::Hamming { d: small(*d)?, a: small(*a)? }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Bricklayer { n, a } => write!(f, "bricklayer:{n},{a}"),
            GraphSpec::Ball { d, r } => write!(f, "ball:{d},{r}"),
            GraphSpec::Star { leaves } => write!(f, "star:{leaves}"),
            GraphSpec::Hamming { d, a } => write!(f, "hamming:{d},{a}"),
        }
    }
}
