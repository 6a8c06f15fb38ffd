//! Triangular fuzzy numbers.
//!
//! A [`Tfn`] `(lo, mid, hi)` has a piecewise-linear membership function that
//! rises from 0 at `lo` to 1 at `mid` and falls back to 0 at `hi`. Addition and
//! subtraction are exact (they follow interval arithmetic on every α-cut).
//! Multiplication and division use the usual vertex approximation
//! `(a.lo*b.lo, a.mid*b.mid, a.hi*b.hi)` and `(a.lo/b.hi, a.mid/b.mid, a.hi/b.lo)`,
//! which is only defined here for positive operands. The fuzzy DEA models are
//! derived from exactly these rules.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Triangular fuzzy number with `lo <= mid <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Tfn {
    lo: f64,
    mid: f64,
    hi: f64,
}

/// Closed real interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, w: f64) -> bool {
        self.lower <= w && w <= self.upper
    }

    /// `true` when `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

impl Tfn {
    pub fn new(lo: f64, mid: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && mid.is_finite() && hi.is_finite()) {
            return Err(Error::NonFinite("triangular fuzzy number"));
        }
        if lo > mid || mid > hi {
            return Err(Error::Domain(format!(
                "triangular fuzzy number must satisfy lo <= mid <= hi, got ({lo}, {mid}, {hi})"
            )));
        }
        Ok(Tfn { lo, mid, hi })
    }

    /// Degenerate number `(x, x, x)`.
    pub fn crisp(x: f64) -> Result<Self> {
        Tfn::new(x, x, x)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn mid(&self) -> f64 {
        self.mid
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Components as `[lo, mid, hi]`.
    pub fn to_array(&self) -> [f64; 3] {
        [self.lo, self.mid, self.hi]
    }

    pub fn is_crisp(&self) -> bool {
        self.lo == self.mid && self.mid == self.hi
    }

    pub fn is_non_negative(&self) -> bool {
        self.lo >= 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    /// Approximate product of two positive numbers.
    pub fn mul(&self, other: &Tfn) -> Result<Tfn> {
        require_positive(self, other, "multiplication")?;
        Tfn::new(self.lo * other.lo, self.mid * other.mid, self.hi * other.hi)
    }

    /// Approximate quotient of two positive numbers.
    pub fn div(&self, other: &Tfn) -> Result<Tfn> {
        require_positive(self, other, "division")?;
        Tfn::new(self.lo / other.hi, self.mid / other.mid, self.hi / other.lo)
    }

    /// Membership grade of `w`.
    ///
    /// A degenerate left side (`lo == mid`) uses only the right branch and a
    /// degenerate right side only the left branch, so `membership(mid) == 1`
    /// always holds.
    pub fn membership(&self, w: f64) -> f64 {
        if w == self.mid {
            return 1.0;
        }
        if w > self.lo && w < self.mid {
            (w - self.lo) / (self.mid - self.lo)
        } else if w > self.mid && w < self.hi {
            (self.hi - w) / (self.hi - self.mid)
        } else {
            0.0
        }
    }

    /// The α-cut `{w : membership(w) >= α}`.
    ///
    /// At `α = 0` this returns the closed support `[lo, hi]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Range(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(Interval {
            lower: self.lo + alpha * (self.mid - self.lo),
            upper: self.hi - alpha * (self.hi - self.mid),
        })
    }

    /// `(min, mean, max)` of a list of observations.
    pub fn from_observations(samples: &[f64]) -> Result<Tfn> {
        if samples.is_empty() {
            return Err(Error::Empty("observation list"));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("observation list"));
        }
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // sort before summing so the mean does not depend on input order
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
        // rounding in the mean can fall a ulp outside [min, max]
        Tfn::new(min, mean.clamp(min, max), max)
    }
}

fn require_positive(a: &Tfn, b: &Tfn, op: &str) -> Result<()> {
    if a.is_positive() && b.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "fuzzy {op} is only defined for positive operands, got {a} and {b}"
        )))
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn {
            lo: self.lo + rhs.lo,
            mid: self.mid + rhs.mid,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Sub for Tfn {
    type Output = Tfn;

    fn sub(self, rhs: Tfn) -> Tfn {
        Tfn {
            lo: self.lo - rhs.hi,
            mid: self.mid - rhs.mid,
            hi: self.hi - rhs.lo,
        }
    }
}

impl TryFrom<[f64; 3]> for Tfn {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Tfn::new(v[0], v[1], v[2])
    }
}

impl From<Tfn> for [f64; 3] {
    fn from(t: Tfn) -> Self {
        t.to_array()
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lo, self.mid, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn t(lo: f64, mid: f64, hi: f64) -> Tfn {
        Tfn::new(lo, mid, hi).unwrap()
    }

    fn close(a: Tfn, b: [f64; 3]) -> bool {
        a.to_array().iter().zip(b).all(|(x, y)| (x - y).abs() <= TOL)
    }

    #[test]
    fn rejects_unordered() {
        assert!(Tfn::new(2.0, 1.0, 3.0).is_err());
        assert!(Tfn::new(1.0, 3.0, 2.0).is_err());
        assert!(Tfn::new(f64::NAN, 1.0, 2.0).is_err());
    }

    #[test]
    fn addition() {
        assert!(close(t(3.5, 4.0, 4.5) + t(1.9, 2.1, 2.3), [5.4, 6.1, 6.8]));
        assert!(close(t(0.0, 0.0, 0.0) + t(1.0, 2.0, 3.0), [1.0, 2.0, 3.0]));
        assert!(close(t(1.0, 2.0, 3.0) + t(2.0, 3.0, 4.0), [3.0, 5.0, 7.0]));
    }

    #[test]
    fn subtraction() {
        assert!(close(t(3.0, 5.0, 7.0) - t(1.0, 2.0, 3.0), [0.0, 3.0, 6.0]));
        assert!(close(t(1.0, 2.0, 3.0) - t(0.0, 0.0, 0.0), [1.0, 2.0, 3.0]));
        assert!(close(t(1.0, 2.0, 3.0) - t(1.0, 2.0, 3.0), [-2.0, 0.0, 2.0]));
    }

    #[test]
    fn multiplication() {
        assert!(close(
            t(1.0, 2.0, 3.0).mul(&t(2.0, 3.0, 4.0)).unwrap(),
            [2.0, 6.0, 12.0]
        ));
        assert!(close(t(1.0, 1.0, 1.0).mul(&t(2.0, 3.0, 4.0)).unwrap(), [2.0, 3.0, 4.0]));
        assert!(close(
            t(0.5, 1.0, 2.0).mul(&t(0.5, 1.0, 2.0)).unwrap(),
            [0.25, 1.0, 4.0]
        ));
        assert!(t(0.0, 1.0, 2.0).mul(&t(1.0, 2.0, 3.0)).is_err());
    }

    #[test]
    fn division() {
        let q = t(2.4, 2.6, 2.8).div(&t(3.5, 4.0, 4.5)).unwrap();
        assert!(close(q, [2.4 / 4.5, 0.65, 0.8]));
        assert!((q.lo() - 0.533_333_333_3).abs() < 1e-9);
        assert!(close(t(2.0, 3.0, 4.0).div(&t(1.0, 1.0, 1.0)).unwrap(), [2.0, 3.0, 4.0]));
        assert!(close(t(2.0, 4.0, 6.0).div(&t(1.0, 2.0, 4.0)).unwrap(), [0.5, 2.0, 6.0]));
        assert!(t(1.0, 2.0, 3.0).div(&t(-1.0, 2.0, 3.0)).is_err());
    }

    #[test]
    fn membership_values() {
        let a = t(1.0, 2.0, 3.0);
        assert_eq!(a.membership(2.0), 1.0);
        assert!((a.membership(1.5) - 0.5).abs() < TOL);
        assert!((a.membership(2.5) - 0.5).abs() < TOL);
        assert_eq!(a.membership(4.0), 0.0);
        assert_eq!(a.membership(1.0), 0.0);
        assert_eq!(a.membership(3.0), 0.0);
    }

    #[test]
    fn membership_degenerate_sides() {
        let left = t(2.0, 2.0, 4.0);
        assert_eq!(left.membership(2.0), 1.0);
        assert!((left.membership(3.0) - 0.5).abs() < TOL);
        assert_eq!(left.membership(1.9), 0.0);

        let right = t(0.0, 2.0, 2.0);
        assert_eq!(right.membership(2.0), 1.0);
        assert!((right.membership(1.0) - 0.5).abs() < TOL);
        assert_eq!(right.membership(2.1), 0.0);

        let crisp = Tfn::crisp(5.0).unwrap();
        assert_eq!(crisp.membership(5.0), 1.0);
        assert_eq!(crisp.membership(5.000_001), 0.0);
    }

    #[test]
    fn alpha_cuts() {
        let a = t(1.0, 2.0, 3.0);
        assert_eq!(a.alpha_cut(1.0).unwrap(), Interval { lower: 2.0, upper: 2.0 });
        assert_eq!(a.alpha_cut(0.5).unwrap(), Interval { lower: 1.5, upper: 2.5 });
        assert_eq!(a.alpha_cut(0.0).unwrap(), Interval { lower: 1.0, upper: 3.0 });
        assert!(a.alpha_cut(1.5).is_err());
        assert!(a.alpha_cut(-0.1).is_err());
    }

    #[test]
    fn observations() {
        assert!(close(
            Tfn::from_observations(&[1.0, 2.0, 3.0, 6.0]).unwrap(),
            [1.0, 3.0, 6.0]
        ));
        assert!(close(Tfn::from_observations(&[5.0]).unwrap(), [5.0, 5.0, 5.0]));
        assert!(Tfn::from_observations(&[]).is_err());
    }

    #[test]
    fn crisp_arithmetic_matches_reals() {
        let a = Tfn::crisp(3.0).unwrap();
        let b = Tfn::crisp(1.5).unwrap();
        assert_eq!((a + b).to_array(), [4.5; 3]);
        assert_eq!((a - b).to_array(), [1.5; 3]);
        assert_eq!(a.mul(&b).unwrap().to_array(), [4.5; 3]);
        assert_eq!(a.div(&b).unwrap().to_array(), [2.0; 3]);
    }

    #[test]
    fn serde_as_triple() {
        let a = t(1.0, 2.0, 3.0);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[1.0,2.0,3.0]");
        assert_eq!(serde_json::from_str::<Tfn>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Tfn>("[3.0,2.0,1.0]").is_err());
    }
}
