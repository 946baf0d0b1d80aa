//! Principal eigenvalues of neutral networks: induced subgraphs of Hamming
//! graphs, in particular the bricklayer's graphs `G(n, a)` spanned by the
//! labels `0..n`, which interpolate between consecutive Hamming graphs.
//!
//! * [`graphs`]: Hamming graphs, bricklayer's graphs, Hamming balls, stars.
//! * [`spectra`]: principal eigenvalues by power iteration, distance-class
//!   reduction and exact characteristic polynomials.
//! * [`polynomials`]: exact rational polynomials and the recursions whose
//!   largest roots are `λ(G(2^d ± 1))`.
//! * [`certify`]: rigorous comparisons of roots and logarithms.
//! * [`theorem`]: checks of `λ(G(n)) ≤ log2 n` and its supporting bounds.
//! * [`search`]: exhaustive and sampled searches for optimal subgraphs.
//! * [`dynamics`]: the mutation-selection model linking `λ` to robustness.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod dynamics;
pub mod graphs;
pub mod polynomials;
pub mod search;
pub mod spectra;
pub mod theorem;
