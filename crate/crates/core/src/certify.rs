//! Certified comparisons between real quantities.
//!
//! Each [`Quantity`] can produce a rational interval containing its value
//! and can tighten that interval on demand. [`compare`] refines both sides
//! until the intervals separate, so a strict inequality that a double
//! cannot resolve (margins near `2^-40`) is still decided rigorously.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polynomials::{self, rational, root_side, Polynomial, RootSide};

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / rational(2)).to_f64().unwrap_or(f64::NAN)
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Quotient by an interval of strictly positive numbers.
    fn div_positive(&self, d: &Interval) -> Interval {
        let candidates = [&self.lo / &d.lo, &self.lo / &d.hi, &self.hi / &d.lo, &self.hi / &d.hi];
        let lo = candidates.iter().min().cloned().expect("nonempty");
        let hi = candidates.iter().max().cloned().expect("nonempty");
        Interval { lo, hi }
    }
}

/// Natural logarithm of `m` in `[2/3, 4/3]` from `2 atanh(z)`,
/// `z = (m - 1)/(m + 1)`, summing terms until the tail is below `2^-bits`.
fn ln_near_one(m: &BigRational, bits: u32) -> Interval {
    let one = BigRational::one();
    let z = (m - &one) / (m + &one);
    if z.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let z2 = &z * &z;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    let mut k: u32 = 0;
    loop {
        sum += &power / rational(2 * k as i64 + 1);
        power *= &z2;
        k += 1;
        // |tail| <= 2 |z|^(2k+1) / ((2k+1)(1 - z^2)) after the factor 2.
        let tail = rational(2) * power.abs() / (rational(2 * k as i64 + 1) * (&one - &z2));
        if tail < tol {
            let center = rational(2) * &sum;
            return Interval { lo: &center - &tail, hi: center + tail };
        }
    }
}

/// Rational interval containing `log2(x)` for rational `x > 0`, of width
/// about `2^-bits`.
pub fn log2_interval(x: &BigRational, bits: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a nonpositive number");
    // x = m 2^e with m in [2/3, 4/3].
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let pow2 = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut m = x / pow2(e);
    let (lower, upper) = (rational(2) / rational(3), rational(4) / rational(3));
    while m > upper {
        e += 1;
        m = x / pow2(e);
    }
    while m < lower {
        e -= 1;
        m = x / pow2(e);
    }
    let ln_m = ln_near_one(&m, bits + 4);
    // ln 2 = 2 atanh(1/3), and m = 2 sits outside [2/3, 4/3]; use 4/3 * 3/2.
    let ln2 =
        ln_near_one(&(rational(4) / rational(3)), bits + 4).add(&ln_near_one(&(rational(3) / rational(2)), bits + 4));
    Interval::point(rational(e)).add(&ln_m.div_positive(&ln2))
}

/// A real number that can be enclosed to any requested precision.
#[derive(Debug, Clone)]
pub enum Quantity {
    Exact(BigRational),
    /// `factor * log_base(arg)`.
    Log {
        arg: BigRational,
        base: BigRational,
        factor: BigRational,
        bits: u32,
    },
    /// Largest root of a real-rooted polynomial, bracketed by `[lo, hi]`.
    Root {
        poly: Polynomial,
        lo: BigRational,
        hi: BigRational,
    },
}

impl Quantity {
    pub fn log2(arg: BigRational) -> Self {
        Quantity::Log { arg, base: rational(2), factor: BigRational::one(), bits: 64 }
    }

    pub fn log(arg: BigRational, base: BigRational, factor: BigRational) -> Self {
        Quantity::Log { arg, base, factor, bits: 64 }
    }

    /// `sqrt(m)` as the largest root of `x^2 - m`.
    pub fn sqrt(m: BigRational) -> Self {
        let hi = &m + BigRational::one();
        Quantity::Root {
            poly: Polynomial::from_coeffs(vec![-m, BigRational::zero(), BigRational::one()]),
            lo: BigRational::zero(),
            hi,
        }
    }

    /// Largest root of `poly` inside `[lo, hi]`; fails if the bracket does
    /// not contain it.
    pub fn root(poly: Polynomial, lo: BigRational, hi: BigRational) -> Result<Self, polynomials::PolyError> {
        let width = &hi - &lo;
        let (lo, hi) = polynomials::largest_root_bracket(&poly, &lo, &hi, &width)?;
        Ok(Quantity::Root { poly, lo, hi })
    }

    pub fn interval(&self) -> Interval {
        match self {
            Quantity::Exact(x) => Interval::point(x.clone()),
            Quantity::Log { arg, base, factor, bits } => {
                log2_interval(arg, *bits).div_positive(&log2_interval(base, *bits)).scale(factor)
            }
            Quantity::Root { lo, hi, .. } => Interval { lo: lo.clone(), hi: hi.clone() },
        }
    }

    /// Tightens the enclosure; returns false when no further progress is
    /// possible.
    pub fn refine(&mut self) -> bool {
        match self {
            Quantity::Exact(_) => false,
            Quantity::Log { bits, .. } => {
                *bits += 64;
                true
            }
            Quantity::Root { poly, lo, hi } => {
                if lo == hi {
                    return false;
                }
                for _ in 0..16 {
                    let mid = (&*lo + &*hi) / rational(2);
                    match root_side(poly, &mid) {
                        RootSide::Below => *lo = mid,
                        RootSide::Above => *hi = mid,
                        RootSide::At => {
                            *lo = mid.clone();
                            *hi = mid;
                            break;
                        }
                    }
                }
                true
            }
        }
    }

    pub fn approx(&self) -> f64 {
        self.interval().midpoint_f64()
    }
}

/// Refinement rounds before [`compare`] gives up.
pub const MAX_ROUNDS: usize = 12;

/// Rigorous ordering of two quantities, or `None` when their enclosures
/// still overlap after [`MAX_ROUNDS`] refinements (in particular when the
/// values are equal and not both exact).
pub fn compare(a: &Quantity, b: &Quantity) -> Option<Ordering> {
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..=MAX_ROUNDS {
        let (ia, ib) = (a.interval(), b.interval());
        if ia.hi < ib.lo {
            return Some(Ordering::Less);
        }
        if ia.lo > ib.hi {
            return Some(Ordering::Greater);
        }
        if ia.lo == ia.hi && ib.lo == ib.hi && ia.lo == ib.lo {
            return Some(Ordering::Equal);
        }
        let progressed = a.refine() | b.refine();
        if !progressed {
            return None;
        }
    }
    None
}

/// True when `a < b` is certified.
pub fn certainly_less(a: &Quantity, b: &Quantity) -> bool {
    compare(a, b) == Some(Ordering::Less)
}
