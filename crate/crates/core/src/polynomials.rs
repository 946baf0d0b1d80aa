//! Exact polynomial arithmetic over arbitrary-precision rationals.
//!
//! Besides the usual ring operations this module builds the families whose
//! largest roots are the principal eigenvalues studied in this crate:
//!
//! * [`ball_poly`]: the distance-class polynomial `p_r` of the Hamming ball
//!   `B(d, r)`, from `p_0 = x`, `p_1 = x^2 - d` and
//!   `p_r = x p_{r-1} - r(d - r + 1) p_{r-2}`;
//! * [`f_poly`]: the same recursion with `d` left symbolic;
//! * [`cube_poly`], [`cube_minus_poly`], [`cube_plus_poly`]: the reduced
//!   characteristic polynomials of `G(2^d)`, `G(2^d - 1)` and `G(2^d + 1)`.
//!
//! Roots are located by bisection on dyadic rationals with an exact sign
//! test, so no floating-point cancellation can flip a comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("radius {r} exceeds dimension {d}")]
    Radius { d: u32, r: u32 },
    #[error("parameter must be at least 1")]
    ZeroIndex,
    #[error("invalid root bracket [{lo}, {hi}]: {reason}")]
    Bracket { lo: f64, hi: f64, reason: &'static str },
    #[error("bracket endpoint is not a finite number")]
    NonFinite,
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. No trailing
/// zero coefficient is stored, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Polynomial { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational(c)).collect())
    }

    pub fn from_big_ints(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// `x - root`.
    pub fn linear(root: BigRational) -> Self {
        Self::from_coeffs(vec![-root, BigRational::one()])
    }

    /// Monic polynomial with the given integer roots, repeated as listed.
    pub fn from_roots(roots: impl IntoIterator<Item = i64>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| &acc * &Self::linear(rational(r)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coeffs.iter().map(BigRational::to_integer).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rational(x))
    }

    /// Floating-point Horner evaluation; only reliable away from
    /// cancellation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rational(i as i64)).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson { coeffs: self.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect() }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, PolyError> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(|_| PolyError::Json(n.clone()))?;
                let d: BigInt = d.parse().map_err(|_| PolyError::Json(d.clone()))?;
                if d.is_zero() {
                    return Err(PolyError::Json("zero denominator".into()));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

/// `{"coeffs": [["num", "den"], ...]}`, index = power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<[String; 2]>,
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigRational, var: &str, power: usize) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let show_coeff = power == 0 || !mag.is_one();
    if show_coeff {
        write!(f, "{mag}")?;
    }
    match power {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{power}"),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, "x", i)?;
            first = false;
        }
        Ok(())
    }
}

/// Polynomial in `x` (the eigenvalue variable) whose coefficients are
/// integer polynomials in `d`: `coeffs[j][i]` multiplies `x^j d^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<BigInt>>,
}

fn trim_ints(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl BivariatePoly {
    fn from_coeffs(mut coeffs: Vec<Vec<BigInt>>) -> Self {
        coeffs.iter_mut().for_each(trim_ints);
        while coeffs.last().is_some_and(Vec::is_empty) {
            coeffs.pop();
        }
        BivariatePoly { coeffs }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![vec![BigInt::one()]])
    }

    /// The coefficient of `x^j` as integer coefficients in `d`.
    pub fn coeff_in_d(&self, j: usize) -> &[BigInt] {
        self.coeffs.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn degree_in_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn mul_x(&self) -> Self {
        let mut coeffs = vec![Vec::new()];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// Multiplies by `c0 + c1 * d`.
    fn mul_linear_d(&self, c0: &BigInt, c1: &BigInt) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|col| {
                let mut out = vec![BigInt::zero(); col.len() + 1];
                for (i, a) in col.iter().enumerate() {
                    out[i] += a * c0;
                    out[i + 1] += a * c1;
                }
                out
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|j| {
                let (a, b) = (self.coeff_in_d(j), rhs.coeff_in_d(j));
                let m = a.len().max(b.len());
                (0..m).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect()
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Partial derivative with respect to `x`.
    pub fn derivative_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, col)| col.iter().map(|c| c * BigInt::from(j)).collect())
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Fixes `d` and returns the resulting polynomial in `x`.
    pub fn substitute_d(&self, d: &BigInt) -> Polynomial {
        Polynomial::from_big_ints(
            self.coeffs.iter().map(|col| col.iter().rev().fold(BigInt::zero(), |acc, c| acc * d + c)).collect(),
        )
    }

    pub fn eval(&self, d: &BigInt, x: &BigInt) -> BigInt {
        self.substitute_d(d).eval(&BigRational::from_integer(x.clone())).to_integer()
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, col) in self.coeffs.iter().enumerate().rev() {
            let nonzero: Vec<(usize, &BigInt)> = col.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            match nonzero.as_slice() {
                [] => continue,
                [(i, c)] => {
                    let term = BigRational::from_integer((*c).clone());
                    let var = match (*i, j) {
                        (0, _) => String::new(),
                        (1, _) => "d".to_string(),
                        (i, _) => format!("d^{i}"),
                    };
                    if j == 0 {
                        write_term(f, first, &term, &var, if *i == 0 { 0 } else { 1 })?;
                    } else if var.is_empty() {
                        write_term(f, first, &term, "x", j)?;
                    } else {
                        write_term(f, first, &term, &var, 1)?;
                        match j {
                            1 => write!(f, "x")?,
                            _ => write!(f, "x^{j}")?,
                        }
                    }
                }
                _ => {
                    let inner = Polynomial::from_big_ints(col.clone()).to_string().replace('x', "d");
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "({inner})")?;
                    match j {
                        0 => {}
                        1 => write!(f, "x")?,
                        _ => write!(f, "x^{j}")?,
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Distance-class polynomial `p_r` for the ball `B(d, r)`; its largest root
/// is the ball's principal eigenvalue.
pub fn ball_poly(d: u32, r: u32) -> Result<Polynomial, PolyError> {
    if r > d {
        return Err(PolyError::Radius { d, r });
    }
    let d = d as i64;
    let x = Polynomial::x();
    let mut prev = Polynomial::x();
    let mut cur = Polynomial::from_ints(&[-d, 0, 1]);
    if r == 0 {
        return Ok(prev);
    }
    for k in 2..=r as i64 {
        let next = &(&x * &cur) - &prev.scale(&rational(k * (d - k + 1)));
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `f_k(d, x)`: `f_1 = x`, `f_2 = x^2 - d`,
/// `f_k = x f_{k-1} - (k-1)(d-k+2) f_{k-2}`.
pub fn f_poly(k: u32) -> Result<BivariatePoly, PolyError> {
    if k == 0 {
        return Err(PolyError::ZeroIndex);
    }
    // f_0 = 1 makes the recursion reproduce f_2 = x^2 - d.
    let mut prev = BivariatePoly::one();
    let mut cur = BivariatePoly::one().mul_x();
    for k in 2..=k as i64 {
        // (k-1)(d-k+2) = (k-1)(2-k) + (k-1) d
        let c0 = BigInt::from((k - 1) * (2 - k));
        let c1 = BigInt::from(k - 1);
        let next = cur.mul_x().sub(&prev.mul_linear_d(&c0, &c1));
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `prod_{i=0}^{d} (x - (d - 2i))`: the hypercube characteristic polynomial
/// with every repeated factor reduced to a simple one.
pub fn cube_poly(d: u32) -> Polynomial {
    let d = d as i64;
    Polynomial::from_roots((0..=d).map(|i| d - 2 * i))
}

/// Reduced characteristic polynomial of `G(2^d - 1)`, i.e. `f_d(d, x)`.
pub fn cube_minus_poly(d: u32) -> Result<Polynomial, PolyError> {
    Ok(f_poly(d)?.substitute_d(&BigInt::from(d)))
}

/// Reduced characteristic polynomial of `G(2^d + 1)`:
/// `x * cube_poly(d) - cube_minus_poly(d)`.
pub fn cube_plus_poly(d: u32) -> Result<Polynomial, PolyError> {
    Ok(&(&Polynomial::x() * &cube_poly(d)) - &cube_minus_poly(d)?)
}

/// `prod_{i=1}^{d-1} (x - (d - 2i))^{C(d,i) - 1}`, the factor shared by the
/// characteristic polynomials of `G(2^d)` and `G(2^d +- 1)`.
pub fn cube_shared_factor(d: u32) -> Polynomial {
    let mut out = Polynomial::one();
    let mut binom = BigInt::one();
    for i in 1..d {
        binom = binom * BigInt::from(d - i + 1) / BigInt::from(i);
        let mult = (&binom - 1u32).to_u32().expect("multiplicity fits in u32");
        out = &out * &Polynomial::linear(rational(d as i64 - 2 * i as i64)).pow(mult);
    }
    out
}

/// `sum_{j=0}^{d-1} 2^j / (j+1)`.
pub fn lemma_sum(d: u32) -> BigRational {
    (0..d)
        .map(|j| BigRational::new(BigInt::one() << j, BigInt::from(j + 1)))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// `d - 1 / lemma_sum(d)`, the tangent-line bound on the largest root of
/// [`cube_minus_poly`].
pub fn tangent_bound_minus(d: u32) -> BigRational {
    rational(d as i64) - lemma_sum(d).recip()
}

/// `d + 1 / (d 2^d - lemma_sum(d))`, the tangent-line bound on the largest
/// root of [`cube_plus_poly`].
pub fn tangent_bound_plus(d: u32) -> BigRational {
    let dd = rational(d as i64);
    let denom = &dd * BigRational::from_integer(BigInt::one() << d) - lemma_sum(d);
    dd + denom.recip()
}

/// `x - p(x) / p'(x)` evaluated exactly: the root of the tangent line at `x`.
pub fn newton_step(p: &Polynomial, x: &BigRational) -> Option<BigRational> {
    let slope = p.derivative().eval(x);
    (!slope.is_zero()).then(|| x - p.eval(x) / slope)
}

/// Position of a point relative to the largest root of a real-rooted
/// polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSide {
    Below,
    At,
    Above,
}

/// Integer coefficients of a positive multiple of `p` with positive leading
/// coefficient.
fn normalized_integer_coeffs(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let flip = p.leading().is_negative();
    p.coeffs
        .iter()
        .map(|c| {
            let v = (c * BigRational::from_integer(lcm.clone())).to_integer();
            if flip {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Signs of `p(x), p'(x), p''(x), ...` at `x = u / v` (`v > 0`), from the
/// Taylor expansion of `v^n p((u + s) / v)` in `s`.
fn taylor_signs(coeffs: &[BigInt], u: &BigInt, v: &BigInt) -> Vec<Sign> {
    let n = coeffs.len() - 1;
    // Horner over integer polynomials in s; r holds coefficients of s^k.
    let mut r: Vec<BigInt> = vec![coeffs[n].clone()];
    let mut vpow = BigInt::one();
    for i in (0..n).rev() {
        vpow *= v;
        let mut next = vec![BigInt::zero(); r.len() + 1];
        for (k, c) in r.iter().enumerate() {
            next[k] += c * u;
            next[k + 1] += c;
        }
        next[0] += &coeffs[i] * &vpow;
        r = next;
    }
    r.iter().map(BigInt::sign).collect()
}

/// Where `x` lies relative to the largest real root of `p`.
///
/// For a polynomial with only real roots, `x` is at or above the largest
/// root exactly when `p` and all its derivatives are nonnegative at `x`
/// (after normalizing the leading coefficient to be positive). The test is
/// exact; the caller guarantees real-rootedness.
pub fn root_side(p: &Polynomial, x: &BigRational) -> RootSide {
    if p.degree().unwrap_or(0) == 0 {
        return RootSide::Above;
    }
    let coeffs = normalized_integer_coeffs(p);
    let signs = taylor_signs(&coeffs, x.numer(), x.denom());
    if signs.contains(&Sign::Minus) {
        RootSide::Below
    } else if signs[0] == Sign::NoSign {
        RootSide::At
    } else {
        RootSide::Above
    }
}

/// Exact bracket `(lo, hi]` of width at most `width` containing the largest
/// real root of a real-rooted `p`. Returns `(r, r)` when the root is hit
/// exactly.
pub fn largest_root_bracket(
    p: &Polynomial,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<(BigRational, BigRational), PolyError> {
    let invalid = |reason| PolyError::Bracket {
        lo: lo.to_f64().unwrap_or(f64::NAN),
        hi: hi.to_f64().unwrap_or(f64::NAN),
        reason,
    };
    if p.degree().unwrap_or(0) == 0 {
        return Err(invalid("polynomial has no roots"));
    }
    if lo > hi {
        return Err(invalid("lower end exceeds upper end"));
    }
    match root_side(p, hi) {
        RootSide::Below => return Err(invalid("largest root lies above the bracket")),
        RootSide::At => return Ok((hi.clone(), hi.clone())),
        RootSide::Above => {}
    }
    match root_side(p, lo) {
        RootSide::At => return Ok((lo.clone(), lo.clone())),
        RootSide::Above => return Err(invalid("largest root lies below the bracket")),
        RootSide::Below => {}
    }
    let two = rational(2);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        match root_side(p, &mid) {
            RootSide::Below => lo = mid,
            RootSide::Above => hi = mid,
            RootSide::At => return Ok((mid.clone(), mid)),
        }
    }
    Ok((lo, hi))
}

fn to_rational(x: f64) -> Result<BigRational, PolyError> {
    BigRational::from_float(x).ok_or(PolyError::NonFinite)
}

/// Largest real root of a real-rooted `p`, given a bracket `[lo, hi]` whose
/// upper end is at or above it and whose lower end is at or below it.
/// The result is within `tol` of the true root.
pub fn largest_real_root(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Result<f64, PolyError> {
    if !(tol > 0.0) {
        return Err(PolyError::Bracket { lo, hi, reason: "tolerance must be positive" });
    }
    let (lo_q, hi_q) = largest_root_bracket(p, &to_rational(lo)?, &to_rational(hi)?, &to_rational(tol)?)?;
    let mid = (lo_q + hi_q) / rational(2);
    Ok(mid.to_f64().unwrap_or(f64::NAN))
}

/// Number of roots (with multiplicity) strictly greater than `x`, for a
/// real-rooted `p`. For such polynomials the sign variations of
/// `p(x), p'(x), ..., p^(n)(x)` count the roots above `x` exactly.
pub fn roots_above(p: &Polynomial, x: &BigRational) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let coeffs = normalized_integer_coeffs(p);
    let signs = taylor_signs(&coeffs, x.numer(), x.denom());
    signs.iter().filter(|s| **s != Sign::NoSign).collect::<Vec<_>>().windows(2).filter(|w| w[0] != w[1]).count()
}

/// Every root of a real-rooted `p`, with multiplicity, in ascending order,
/// each within `tol` of the true value.
pub fn all_real_roots(p: &Polynomial, tol: f64) -> Result<Vec<f64>, PolyError> {
    let Some(n) = p.degree() else {
        return Ok(Vec::new());
    };
    let bound = root_magnitude_bound(p);
    let width = to_rational(tol)?;
    let two = rational(2);
    let mut roots = Vec::with_capacity(n);
    // k-th largest root r_k: roots_above(lo) >= k and roots_above(hi) < k.
    for k in 1..=n {
        let (mut lo, mut hi) = (-bound.clone(), bound.clone());
        while (&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            if roots_above(p, &mid) >= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(((lo + hi) / &two).to_f64().unwrap_or(f64::NAN));
    }
    roots.reverse();
    Ok(roots)
}

/// Upper bound on every root magnitude (Cauchy's bound), as an integer.
pub fn root_magnitude_bound(p: &Polynomial) -> BigRational {
    let lead = p.leading().abs();
    let max =
        p.coeffs
            .iter()
            .rev()
            .skip(1)
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    (BigRational::one() + max).ceil()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
        assert_eq!((&p - &p), Polynomial::zero());
    }

    #[test]
    fn arithmetic_and_display() {
        let p = poly(&[-1, 0, 1]);
        let q = poly(&[1, 1]);
        assert_eq!(&p * &q, poly(&[-1, -1, 1, 1]));
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(poly(&[0, -7, 0, 1]).to_string(), "x^3 - 7x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(poly(&[3]).to_string(), "3");
    }

    #[test]
    fn division() {
        let p = poly(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&poly(&[-1, 1])).unwrap();
        assert_eq!((q, r), (poly(&[1, 1]), Polynomial::zero()));
        let (q, r) = poly(&[1, 0, 1]).div_rem(&poly(&[0, 2])).unwrap();
        assert_eq!(q, Polynomial::from_coeffs(vec![rational(0), ratio(1, 2)]));
        assert_eq!(r, poly(&[1]));
        assert_eq!(p.div_rem(&Polynomial::zero()), Err(PolyError::DivisionByZero));
        assert_eq!(poly(&[1, 1]).exact_div(&p).unwrap(), None);
    }

    #[test]
    fn eval_and_derivative() {
        assert_eq!(poly(&[-1, 0, 1]).eval_int(1), rational(0));
        assert_eq!(poly(&[-1, 0, 1]).derivative(), poly(&[0, 2]));
        assert_eq!(cube_poly(3).derivative().eval_int(3), rational(48));
        assert_eq!(cube_minus_poly(5).unwrap().eval_int(5), rational(120));
        assert_eq!(cube_plus_poly(4).unwrap().eval_int(4), rational(-24));
        assert_eq!(cube_minus_poly(4).unwrap().derivative().eval_int(4), rational(128));
    }

    #[test]
    fn ball_polys() {
        assert_eq!(ball_poly(7, 0).unwrap(), Polynomial::x());
        assert_eq!(ball_poly(7, 1).unwrap(), poly(&[-7, 0, 1]));
        assert_eq!(ball_poly(4, 2).unwrap(), poly(&[0, -10, 0, 1]));
        assert_eq!(ball_poly(3, 4), Err(PolyError::Radius { d: 3, r: 4 }));
    }

    #[test]
    fn f_polys() {
        let f2 = f_poly(2).unwrap();
        assert_eq!(f2.coeff_in_d(2), &[BigInt::one()]);
        assert_eq!(f2.coeff_in_d(0), &[BigInt::zero(), BigInt::from(-1)]);
        let f3 = f_poly(3).unwrap();
        // x^3 - (3d - 2) x
        assert_eq!(f3.coeff_in_d(1), &[BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(f3.substitute_d(&BigInt::from(3)), poly(&[0, -7, 0, 1]));
        assert_eq!(f3.to_string(), "x^3 + (-3d + 2)x");
        assert_eq!(f_poly(1).unwrap().to_string(), "x");
        assert_eq!(f_poly(0), Err(PolyError::ZeroIndex));
    }

    #[test]
    fn ball_and_f_recursions_agree() {
        for d in 1..=9u32 {
            for r in 0..=d {
                assert_eq!(ball_poly(d, r).unwrap(), f_poly(r + 1).unwrap().substitute_d(&BigInt::from(d)));
            }
        }
    }

    #[test]
    fn cube_family() {
        assert_eq!(cube_poly(1), poly(&[-1, 0, 1]));
        assert_eq!(cube_poly(2), poly(&[0, -4, 0, 1]));
        assert_eq!(cube_plus_poly(2).unwrap(), poly(&[2, 0, -5, 0, 1]));
        assert_eq!(cube_minus_poly(3).unwrap(), poly(&[0, -7, 0, 1]));
        for d in 1..=8 {
            let p = cube_poly(d);
            assert!(p.is_monic() && p.is_integral());
            assert_eq!(p.degree(), Some(d as usize + 1));
            assert_eq!(cube_minus_poly(d).unwrap().degree(), Some(d as usize));
            assert_eq!(cube_plus_poly(d).unwrap().degree(), Some(d as usize + 2));
        }
    }

    #[test]
    fn derivative_closed_forms_small() {
        // d = 3: 6 (1 + 1 + 4/3) = 20 and 6 (24 - 10/3) = 124.
        assert_eq!(cube_minus_poly(3).unwrap().derivative().eval_int(3), rational(20));
        assert_eq!(cube_plus_poly(3).unwrap().derivative().eval_int(3), rational(124));
    }

    #[test]
    fn tangent_bounds() {
        assert_eq!(tangent_bound_minus(3), ratio(27, 10));
        assert_eq!(tangent_bound_minus(5), rational(5) - ratio(15, 128));
        assert_eq!(lemma_sum(5), ratio(128, 15));
        assert_eq!(tangent_bound_plus(3), rational(3) + ratio(3, 62));
        assert_eq!(tangent_bound_plus(2), ratio(13, 6));
        assert_eq!(tangent_bound_plus(5), rational(5) + ratio(15, 2272));
        for d in 1..=10 {
            let pm = cube_minus_poly(d).unwrap();
            assert_eq!(newton_step(&pm, &rational(d as i64)).unwrap(), tangent_bound_minus(d));
            let pp = cube_plus_poly(d).unwrap();
            assert_eq!(newton_step(&pp, &rational(d as i64)).unwrap(), tangent_bound_plus(d));
        }
    }

    #[test]
    fn largest_roots() {
        let r = largest_real_root(&poly(&[-9, 0, 1]), 0.0, 9.0, 1e-13).unwrap();
        assert!((r - 3.0).abs() < 1e-13);
        let r = largest_real_root(&cube_minus_poly(3).unwrap(), 0.0, 3.0, 1e-13).unwrap();
        assert!((r - 7f64.sqrt()).abs() < 1e-12);
        let r = largest_real_root(&cube_plus_poly(2).unwrap(), 2.0, 3.0, 1e-13).unwrap();
        let expected = ((5.0 + 17f64.sqrt()) / 2.0).sqrt();
        assert!((r - expected).abs() < 1e-12, "{r} vs {expected}");
        assert!(tangent_bound_minus(3).to_f64().unwrap() > r.min(7f64.sqrt()));
        assert!(ratio(13, 6).to_f64().unwrap() > r);
    }

    #[test]
    fn repeated_roots_do_not_break_bisection() {
        // (x^3 - 2x)^2: double roots, no sign change at the largest.
        let p = poly(&[0, -2, 0, 1]).pow(2);
        let r = largest_real_root(&p, 1.0, 2.0, 1e-13).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let p = poly(&[-1, 0, 1]).pow(2);
        assert_eq!(largest_real_root(&p, 1.0, 1.0, 1e-13).unwrap(), 1.0);
    }

    #[test]
    fn invalid_brackets() {
        let p = poly(&[-9, 0, 1]);
        assert!(matches!(largest_real_root(&p, 0.0, 2.0, 1e-12), Err(PolyError::Bracket { .. })));
        assert!(matches!(largest_real_root(&p, 4.0, 5.0, 1e-12), Err(PolyError::Bracket { .. })));
        assert!(largest_real_root(&p, 0.0, 5.0, 0.0).is_err());
        assert_eq!(largest_real_root(&p, f64::NAN, 5.0, 1e-3), Err(PolyError::NonFinite));
    }

    #[test]
    fn root_side_is_exact() {
        let p = poly(&[-2, 0, 1]);
        assert_eq!(root_side(&p, &ratio(141421, 100000)), RootSide::Below);
        assert_eq!(root_side(&p, &ratio(141422, 100000)), RootSide::Above);
        assert_eq!(root_side(&poly(&[-4, 0, 1]), &rational(2)), RootSide::At);
        // Smaller roots do not fool the test: between the roots of (x-1)(x-3).
        assert_eq!(root_side(&Polynomial::from_roots([1, 3]), &rational(0)), RootSide::Below);
        assert_eq!(root_side(&Polynomial::from_roots([1, 3]), &rational(2)), RootSide::Below);
    }

    #[test]
    fn shared_factor_small() {
        assert_eq!(cube_shared_factor(1), Polynomial::one());
        assert_eq!(cube_shared_factor(2), Polynomial::linear(rational(0)));
        // d = 3: (x - 1)^2 (x + 1)^2
        assert_eq!(cube_shared_factor(3), Polynomial::from_roots([1, 1, -1, -1]));
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::from_coeffs(vec![ratio(-1, 3), rational(0), rational(2)]);
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(text, r#"{"coeffs":[["-1","3"],["0","1"],["2","1"]]}"#);
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Polynomial::from_json(&back).unwrap(), p);
        let bad = PolyJson { coeffs: vec![["1".into(), "0".into()]] };
        assert!(Polynomial::from_json(&bad).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn root_counting() {
        let p = Polynomial::from_roots([-2, 1, 1, 3]);
        assert_eq!(roots_above(&p, &rational(-3)), 4);
        assert_eq!(roots_above(&p, &rational(0)), 3);
        assert_eq!(roots_above(&p, &rational(1)), 1);
        assert_eq!(roots_above(&p, &ratio(3, 2)), 1);
        assert_eq!(roots_above(&p, &rational(3)), 0);
        let roots = all_real_roots(&p, 1e-12).unwrap();
        for (got, want) in roots.iter().zip([-2.0, 1.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-11, "{roots:?}");
        }
        let roots = all_real_roots(&cube_plus_poly(2).unwrap(), 1e-13).unwrap();
        let big = ((5.0 + 17f64.sqrt()) / 2.0).sqrt();
        let small = ((5.0 - 17f64.sqrt()) / 2.0).sqrt();
        for (got, want) in roots.iter().zip([-big, -small, small, big]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = cube_plus_poly(4).unwrap();
        let b = root_magnitude_bound(&p);
        assert_eq!(root_side(&p, &b), RootSide::Above);
    }
}
