//! Principal eigenvalues by three independent routes.
//!
//! * [`principal_eigenvalue_power`]: power iteration on `A + I`, component
//!   by component, stopped on the residual `|Ax - λx|`.
//! * [`ball_eigenvalue_reduced`]: the Hamming ball `B(d, r)` collapsed to a
//!   `(r+1)`-dimensional tridiagonal problem over distance classes.
//! * [`char_poly_eigenvalue`]: the exact integer characteristic polynomial
//!   and an exact-sign bisection for its largest root.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{connected_components, Adjacency, LabeledGraph};
use crate::polynomials::{self, PolyError, Polynomial};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;
/// Width of the exact bracket used for characteristic-polynomial roots.
pub const ROOT_TOL: f64 = 1e-13;
/// Vertex limit for [`char_poly_exact`].
pub const CHAR_POLY_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:e}, lambda {lambda})")]
    Convergence { lambda: f64, residual: f64, iterations: usize, eigenvector: Vec<f64> },
    #[error("graph has {order} vertices, exact characteristic polynomial limit is {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("radius {r} exceeds dimension {d}")]
    Radius { d: u32, r: u32 },
    #[error("hypercube dimension {0} out of range 1..=62")]
    Dimension(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Power,
    DistanceClass,
    CharPoly,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Power => "power",
            Method::DistanceClass => "distance_class",
            Method::CharPoly => "char_poly",
        }
    }
}

/// A principal eigenvalue estimate.
///
/// For the power route `eigenvector` is the unit Perron vector aligned with
/// the graph's vertex order. The distance-class route stores the unit
/// eigenvector of the symmetrized class matrix (one entry per class), and
/// the characteristic-polynomial route stores no vector; its `residual` is
/// the width of the exact root bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub lambda: f64,
    pub eigenvector: Vec<f64>,
    pub residual: f64,
    pub method: Method,
    pub iterations: usize,
}

#[derive(Debug, Serialize)]
struct SpectralJson<'a> {
    lambda: f64,
    residual: f64,
    method: Method,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvector: Option<&'a [f64]>,
}

impl SpectralResult {
    pub fn to_json(&self, with_vector: bool) -> serde_json::Value {
        serde_json::to_value(SpectralJson {
            lambda: self.lambda,
            residual: self.residual,
            method: self.method,
            iterations: self.iterations,
            eigenvector: with_vector.then_some(self.eigenvector.as_slice()),
        })
        .expect("spectral result serializes")
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Power iteration on one connected component, in local indices.
fn component_power(
    adjacency: &[Vec<usize>],
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>, f64, usize), SpectraError> {
    let m = adjacency.len();
    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut y = vec![0.0; m];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        for (i, nbrs) in adjacency.iter().enumerate() {
            y[i] = nbrs.iter().map(|&j| x[j]).sum();
        }
        // Adding 0.0 turns the empty sum's -0.0 into 0.0.
        lambda = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() + 0.0;
        residual = x.iter().zip(&y).map(|(a, b)| (b - lambda * a).powi(2)).sum::<f64>().sqrt();
        if residual <= tol {
            return Ok((lambda, x, residual, it));
        }
        // Step with A + I: bipartite graphs have -λ in the spectrum too.
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
        }
        let s = norm(&x);
        x.iter_mut().for_each(|xi| *xi /= s);
    }
    Err(SpectraError::Convergence { lambda, residual, iterations: max_iter, eigenvector: x })
}

/// Largest adjacency eigenvalue by shifted power iteration.
///
/// Disconnected graphs are handled per component and the largest value is
/// returned; the eigenvector is zero outside the winning component.
pub fn principal_eigenvalue_power<G: Adjacency + ?Sized>(
    g: &G,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, SpectraError> {
    if g.order() == 0 {
        return Err(SpectraError::Empty);
    }
    if !(tol > 0.0) {
        return Err(SpectraError::Tolerance(tol));
    }
    let mut local = vec![usize::MAX; g.order()];
    let mut best: Option<(f64, Vec<usize>, Vec<f64>, f64)> = None;
    let mut iterations = 0;
    for comp in connected_components(g) {
        for (k, &v) in comp.iter().enumerate() {
            local[v] = k;
        }
        let adjacency: Vec<Vec<usize>> =
            comp.iter().map(|&v| g.neighbors(v).iter().map(|&w| local[w]).collect()).collect();
        let (lambda, x, residual, its) = component_power(&adjacency, tol, max_iter)?;
        iterations += its;
        if best.as_ref().is_none_or(|b| lambda > b.0) {
            best = Some((lambda, comp, x, residual));
        }
    }
    let (lambda, comp, x, residual) = best.expect("nonempty graph has a component");
    let mut eigenvector = vec![0.0; g.order()];
    for (&v, xi) in comp.iter().zip(x) {
        eigenvector[v] = xi.abs();
    }
    Ok(SpectralResult { lambda, eigenvector, residual, method: Method::Power, iterations })
}

/// [`principal_eigenvalue_power`] with the default tolerance and budget.
pub fn principal_eigenvalue<G: Adjacency + ?Sized>(g: &G) -> Result<SpectralResult, SpectraError> {
    principal_eigenvalue_power(g, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// Spectrum of the hypercube `Q_d`: eigenvalue `d - 2i` with multiplicity
/// `C(d, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeSpectrum {
    pub d: u32,
    pub pairs: Vec<(i64, u64)>,
}

impl HypercubeSpectrum {
    pub fn total_multiplicity(&self) -> u128 {
        self.pairs.iter().map(|&(_, m)| m as u128).sum()
    }

    /// `prod (x - e)^m`; only sensible for small `d`.
    pub fn char_poly(&self) -> Polynomial {
        self.pairs
            .iter()
            .fold(Polynomial::one(), |acc, &(e, m)| &acc * &Polynomial::linear(polynomials::rational(e)).pow(m as u32))
    }
}

pub fn hypercube_spectrum(d: u32) -> Result<HypercubeSpectrum, SpectraError> {
    if !(1..=62).contains(&d) {
        return Err(SpectraError::Dimension(d));
    }
    let mut pairs = Vec::with_capacity(d as usize + 1);
    let mut binom: u64 = 1;
    for i in 0..=d {
        pairs.push((d as i64 - 2 * i as i64, binom));
        if i < d {
            binom = (binom as u128 * (d - i) as u128 / (i + 1) as u128) as u64;
        }
    }
    Ok(HypercubeSpectrum { d, pairs })
}

/// Eigenvector of a Hamming ball, one value per distance class: `w[k]` is
/// the component on every vertex at distance `k` from the centre, scaled so
/// the full vertex vector has unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    pub d: u32,
    pub w: Vec<f64>,
}

impl DistanceProfile {
    /// Largest violation of the class equations
    /// `λ w_0 = d w_1`, `λ w_k = k w_{k-1} + (d-k) w_{k+1}`, `λ w_r = r w_{r-1}`.
    pub fn max_equation_error(&self, lambda: f64) -> f64 {
        let r = self.w.len() - 1;
        let d = self.d as f64;
        (0..=r)
            .map(|k| {
                let kf = k as f64;
                let down = if k > 0 { kf * self.w[k - 1] } else { 0.0 };
                let up = if k < r { (d - kf) * self.w[k + 1] } else { 0.0 };
                (lambda * self.w[k] - down - up).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Expands the profile to a vertex vector for the given ball graph.
    pub fn to_vertex_vector(&self, ball: &LabeledGraph) -> Vec<f64> {
        ball.labels().iter().map(|l| self.w[l.count_ones() as usize]).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallSpectrum {
    pub result: SpectralResult,
    pub profile: DistanceProfile,
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of eigenvalues of the zero-diagonal symmetric tridiagonal matrix
/// with squared off-diagonals `e2` that are less than `x` (Sturm count).
fn sturm_count_below(e2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = -x;
    if q < 0.0 {
        count += 1;
    }
    for &e in e2 {
        let prev = if q == 0.0 { f64::MIN_POSITIVE } else { q };
        q = -x - e / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Principal eigenvalue of `B(d, r)` from the distance-class reduction.
///
/// The class matrix `T` (`T[k][k-1] = k`, `T[k][k+1] = d - k`) is similar to
/// the symmetric tridiagonal `S` with off-diagonal `sqrt((k+1)(d-k))`; the
/// similarity is the diagonal of `sqrt(C(d,k))`, which is also what maps a
/// class vector to a unit vertex vector. `λ` comes from Sturm bisection on
/// `S` and the eigenvector from inverse iteration.
pub fn ball_eigenvalue_reduced(d: u32, r: u32, tol: f64) -> Result<BallSpectrum, SpectraError> {
    if r > d {
        return Err(SpectraError::Radius { d, r });
    }
    if !(tol > 0.0) {
        return Err(SpectraError::Tolerance(tol));
    }
    let n = r as usize + 1;
    let e2: Vec<f64> = (0..r).map(|k| ((k + 1) as f64) * ((d - k) as f64)).collect();
    let e: Vec<f64> = e2.iter().map(|v| v.sqrt()).collect();

    let mut hi = (0..n)
        .map(|k| {
            let left = if k > 0 { e[k - 1] } else { 0.0 };
            let right = if k + 1 < n { e[k] } else { 0.0 };
            left + right
        })
        .fold(0.0, f64::max)
        + 1.0;
    let mut lo = 0.0;
    let mut steps = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        if sturm_count_below(&e2, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lambda = if n == 1 { 0.0 } else { 0.5 * (lo + hi) };

    let y = if n == 1 { vec![1.0] } else { inverse_iteration(&e, lambda) };
    let mut residual = 0.0;
    for k in 0..n {
        let left = if k > 0 { e[k - 1] * y[k - 1] } else { 0.0 };
        let right = if k + 1 < n { e[k] * y[k + 1] } else { 0.0 };
        residual += (left + right - lambda * y[k]).powi(2);
    }
    let residual = residual.sqrt();
    if residual > tol {
        return Err(SpectraError::Convergence { lambda, residual, iterations: steps, eigenvector: y });
    }
    let w = y.iter().enumerate().map(|(k, yk)| yk / binomial_f64(d, k as u32).sqrt()).collect();
    Ok(BallSpectrum {
        result: SpectralResult { lambda, eigenvector: y, residual, method: Method::DistanceClass, iterations: steps },
        profile: DistanceProfile { d, w },
    })
}

/// Perron vector of the zero-diagonal tridiagonal `S` (off-diagonal `e`)
/// for its largest eigenvalue `lambda`. `(λ + δ)I - S` is positive
/// definite, so the tridiagonal solve needs no pivoting.
fn inverse_iteration(e: &[f64], lambda: f64) -> Vec<f64> {
    let n = e.len() + 1;
    let shift = lambda + 1e-9 * lambda.max(1.0);
    let mut y = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..3 {
        // Solve (shift I - S) z = y; sub/super diagonals are -e.
        let mut diag = vec![shift; n];
        let mut rhs = y.clone();
        for k in 1..n {
            let factor = -e[k - 1] / diag[k - 1];
            diag[k] -= factor * -e[k - 1];
            rhs[k] -= factor * rhs[k - 1];
        }
        let mut z = vec![0.0; n];
        z[n - 1] = rhs[n - 1] / diag[n - 1];
        for k in (0..n - 1).rev() {
            z[k] = (rhs[k] + e[k] * z[k + 1]) / diag[k];
        }
        let s = norm(&z);
        y = z.iter().map(|v| v.abs() / s).collect();
    }
    y
}

/// Exact characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
/// trace recursion over big integers (every division is exact).
pub fn char_poly_exact<G: Adjacency + ?Sized>(g: &G) -> Result<Polynomial, SpectraError> {
    char_poly_exact_with_limit(g, CHAR_POLY_LIMIT)
}

pub fn char_poly_exact_with_limit<G: Adjacency + ?Sized>(g: &G, limit: usize) -> Result<Polynomial, SpectraError> {
    let n = g.order();
    if n > limit {
        return Err(SpectraError::TooLarge { order: n, limit });
    }
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // M_1 = I; A M_k gives c_{n-k} = -tr(A M_k) / k; M_{k+1} = A M_k + c_{n-k} I.
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect();
    for k in 1..=n {
        let mut am: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in am.iter_mut().enumerate() {
            for &l in g.neighbors(i) {
                for (dst, src) in row.iter_mut().zip(&m[l]) {
                    if !src.is_zero() {
                        *dst += src;
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let ck = -trace / BigInt::from(k);
        if k < n {
            for (i, row) in am.iter_mut().enumerate() {
                row[i] += &ck;
            }
            m = am;
        }
        c[n - k] = ck;
    }
    Ok(Polynomial::from_big_ints(c))
}

/// Largest root of the exact characteristic polynomial, bracketed by the
/// mean and maximum degree.
pub fn char_poly_eigenvalue<G: Adjacency + ?Sized>(g: &G) -> Result<SpectralResult, SpectraError> {
    if g.order() == 0 {
        return Err(SpectraError::Empty);
    }
    let p = char_poly_exact(g)?;
    largest_root_result(&p, g.mean_degree(), g.max_degree() as f64)
}

/// Largest root of a characteristic polynomial with a known bracket.
pub fn largest_root_result(p: &Polynomial, lo: f64, hi: f64) -> Result<SpectralResult, SpectraError> {
    use num_traits::ToPrimitive;
    let lo_q = num_rational::BigRational::from_float(lo).ok_or(PolyError::NonFinite)?;
    let hi_q = num_rational::BigRational::from_float(hi).ok_or(PolyError::NonFinite)?;
    let width = num_rational::BigRational::from_float(ROOT_TOL).expect("finite");
    let (a, b) = polynomials::largest_root_bracket(p, &lo_q, &hi_q, &width)?;
    let residual = (&b - &a).to_f64().unwrap_or(f64::NAN);
    let mid = (a + b) / polynomials::rational(2);
    Ok(SpectralResult {
        lambda: mid.to_f64().unwrap_or(f64::NAN),
        eigenvector: Vec::new(),
        residual,
        method: Method::CharPoly,
        iterations: 0,
    })
}

/// Every eigenvalue of the graph, ascending, from the exact characteristic
/// polynomial.
pub fn exact_spectrum<G: Adjacency + ?Sized>(g: &G, tol: f64) -> Result<Vec<f64>, SpectraError> {
    let p = char_poly_exact(g)?;
    Ok(polynomials::all_real_roots(&p, tol)?)
}

/// Robustness `λ / (d(a-1))` of a neutral network.
pub fn robustness(g: &LabeledGraph) -> Result<f64, SpectraError> {
    let lambda = principal_eigenvalue(g)?.lambda;
    Ok(robustness_from_lambda(lambda, g.dimension(), g.alphabet()))
}

pub fn robustness_from_lambda(lambda: f64, d: u32, a: u32) -> f64 {
    lambda / (d as f64 * (a as f64 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{bricklayer, bricklayer_in, hamming_ball, hamming_graph, induced_subgraph, star};

    const LAMBDA5: f64 = 2.135_779_205_069_857_4; // sqrt((5 + sqrt 17) / 2)

    #[test]
    fn power_small_cases() {
        let square = principal_eigenvalue(&bricklayer(4, 2).unwrap()).unwrap();
        assert!((square.lambda - 2.0).abs() < 1e-12);
        assert!(square.residual <= DEFAULT_TOL);
        assert_eq!(square.method, Method::Power);

        let point = principal_eigenvalue(&bricklayer(1, 2).unwrap()).unwrap();
        assert_eq!(point.lambda, 0.0);
        assert_eq!(point.eigenvector, vec![1.0]);

        let five = principal_eigenvalue(&bricklayer(5, 2).unwrap()).unwrap();
        assert!((five.lambda - ((5.0 + 17f64.sqrt()) / 2.0).sqrt()).abs() < 1e-11);
        assert!((five.lambda - LAMBDA5).abs() < 1e-11);
        assert!(five.eigenvector.iter().all(|&x| x >= 0.0));
        assert!((norm(&five.eigenvector) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_rejects_bad_input() {
        let g = bricklayer(3, 2).unwrap();
        assert_eq!(principal_eigenvalue_power(&g, 0.0, 10), Err(SpectraError::Tolerance(0.0)));
        assert!(matches!(
            principal_eigenvalue_power(&bricklayer(7, 2).unwrap(), 1e-14, 2),
            Err(SpectraError::Convergence { iterations: 2, .. })
        ));
    }

    #[test]
    fn disconnected_takes_largest_component() {
        // An edge {0, 1} and a path 12-14-15 in Q4.
        let g = induced_subgraph(4, 2, &[0, 1, 12, 14, 15]).unwrap();
        let res = principal_eigenvalue(&g).unwrap();
        assert!((res.lambda - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(res.eigenvector[0], 0.0);
        assert_eq!(res.eigenvector[1], 0.0);
    }

    #[test]
    fn hypercube_spectra() {
        assert_eq!(hypercube_spectrum(1).unwrap().pairs, vec![(1, 1), (-1, 1)]);
        assert_eq!(hypercube_spectrum(3).unwrap().pairs, vec![(3, 1), (1, 3), (-1, 3), (-3, 1)]);
        let s5 = hypercube_spectrum(5).unwrap();
        let mults: Vec<u64> = s5.pairs.iter().map(|p| p.1).collect();
        assert_eq!(mults, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(s5.total_multiplicity(), 32);
        assert_eq!(hypercube_spectrum(40).unwrap().total_multiplicity(), 1u128 << 40);
        assert!(hypercube_spectrum(0).is_err());
    }

    #[test]
    fn reduced_ball() {
        for d in 1..=25 {
            let res = ball_eigenvalue_reduced(d, 1, 1e-12).unwrap();
            assert!((res.result.lambda - (d as f64).sqrt()).abs() < 1e-12);
            let zero = ball_eigenvalue_reduced(d, 0, 1e-12).unwrap();
            assert_eq!(zero.result.lambda, 0.0);
        }
        let b42 = ball_eigenvalue_reduced(4, 2, 1e-12).unwrap();
        assert!((b42.result.lambda - 10f64.sqrt()).abs() < 1e-12);
        assert!(b42.profile.max_equation_error(b42.result.lambda) < 1e-12);
        assert!(ball_eigenvalue_reduced(3, 4, 1e-12).is_err());
    }

    #[test]
    fn reduced_ball_matches_power_on_materialized_ball() {
        for d in 1..=8 {
            for r in 0..=d {
                let reduced = ball_eigenvalue_reduced(d, r, 1e-12).unwrap();
                let ball = hamming_ball(d, r).unwrap();
                let power = principal_eigenvalue(&ball).unwrap();
                assert!((reduced.result.lambda - power.lambda).abs() < 1e-11, "d={d} r={r}");
                let v = reduced.profile.to_vertex_vector(&ball);
                assert!((norm(&v) - 1.0).abs() < 1e-12);
                for (a, b) in v.iter().zip(&power.eigenvector) {
                    assert!((a - b).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn char_polys() {
        let k2 = char_poly_exact(&bricklayer(2, 2).unwrap()).unwrap();
        assert_eq!(k2, Polynomial::from_ints(&[-1, 0, 1]));
        let p3 = char_poly_exact(&bricklayer(3, 2).unwrap()).unwrap();
        assert_eq!(p3, Polynomial::from_ints(&[0, -2, 0, 1]));
        let cube = char_poly_exact(&bricklayer(8, 2).unwrap()).unwrap();
        assert_eq!(cube, Polynomial::from_roots([3, 1, 1, 1, -1, -1, -1, -3]));
        assert_eq!(cube, hypercube_spectrum(3).unwrap().char_poly());
        let p5 = char_poly_exact(&bricklayer(5, 2).unwrap()).unwrap();
        assert_eq!(p5, Polynomial::from_ints(&[0, 2, 0, -5, 0, 1]));
        assert!(matches!(
            char_poly_exact(&bricklayer(257, 2).unwrap()),
            Err(SpectraError::TooLarge { order: 257, limit: 256 })
        ));
    }

    #[test]
    fn char_poly_route_agrees_with_power() {
        for n in 1..=32 {
            let g = bricklayer(n, 2).unwrap();
            let exact = char_poly_eigenvalue(&g).unwrap();
            let power = principal_eigenvalue(&g).unwrap();
            assert!((exact.lambda - power.lambda).abs() < 1e-9, "n={n}");
            assert!(exact.residual <= ROOT_TOL);
        }
        let s = star(7).unwrap();
        assert!((char_poly_eigenvalue(&s).unwrap().lambda - 7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn robustness_values() {
        assert!((robustness(&hamming_graph(3, 2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!((robustness(&bricklayer(4, 2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let r5 = robustness(&bricklayer(5, 2).unwrap()).unwrap();
        assert!((r5 - LAMBDA5 / 3.0).abs() < 1e-11);
        assert!((r5 - 0.711_93).abs() < 1e-5);
        let wide = robustness(&bricklayer_in(4, 2, 4).unwrap()).unwrap();
        assert!((wide - 0.5).abs() < 1e-12);
    }

    #[test]
    fn json_output() {
        let res = principal_eigenvalue(&bricklayer(2, 2).unwrap()).unwrap();
        let plain = res.to_json(false);
        assert_eq!(plain["method"], "power");
        assert!(plain.get("eigenvector").is_none());
        assert_eq!(res.to_json(true)["eigenvector"].as_array().unwrap().len(), 2);
    }
}
