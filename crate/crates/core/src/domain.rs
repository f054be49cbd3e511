//! Intervals, rectangles, and basis specifications.

use crate::error::{Error, Result};

/// Highest polynomial degree a basis specification may request.
///
/// Keeps the √(n+1/2) amplitude growth and the recurrence cost bounded.
pub const MAX_DEGREE_CAP: usize = 512;

/// A finite interval [a, b] with a < b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::argument(format!(
                "interval endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if a >= b {
            return Err(Error::argument(format!(
                "interval requires a < b, got [{a}, {b}]"
            )));
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// Affine map onto [-1, 1]: t = 2x/(b-a) - (b+a)/(b-a).
    pub fn to_unit(&self, x: f64) -> f64 {
        let w = self.b - self.a;
        2.0 * x / w - (self.b + self.a) / w
    }

    /// Inverse of [`to_unit`](Self::to_unit).
    pub fn from_unit(&self, t: f64) -> f64 {
        self.midpoint() + 0.5 * self.width() * t
    }

    /// True if x lies in [a, b] up to `slack` on either side.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        x >= self.a - slack && x <= self.b + slack
    }
}

/// A finite family {W_0, ..., W_N} of basis functions on one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec1D {
    interval: Interval,
    max_degree: usize,
}

impl BasisSpec1D {
    pub fn new(interval: Interval, max_degree: usize) -> Result<Self> {
        if max_degree > MAX_DEGREE_CAP {
            return Err(Error::argument(format!(
                "max_degree {max_degree} exceeds cap {MAX_DEGREE_CAP}"
            )));
        }
        Ok(BasisSpec1D {
            interval,
            max_degree,
        })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of basis functions, N + 1.
    pub fn len(&self) -> usize {
        self.max_degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An axis-aligned rectangle in n dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct RectDomain {
    intervals: Vec<Interval>,
}

impl RectDomain {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::argument("rectangle needs at least one axis"));
        }
        Ok(RectDomain { intervals })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, axis: usize) -> Interval {
        self.intervals[axis]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && self
                .intervals
                .iter()
                .zip(x)
                .all(|(iv, &xi)| iv.contains(xi, 1e-9 * iv.width()))
    }

    /// Product of the axis widths.
    pub fn volume(&self) -> f64 {
        self.intervals.iter().map(|iv| iv.width()).product()
    }
}

/// Tensor-product basis: a rectangle plus one maximum degree per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpecND {
    domain: RectDomain,
    max_degrees: Vec<usize>,
}

impl BasisSpecND {
    pub fn new(domain: RectDomain, max_degrees: Vec<usize>) -> Result<Self> {
        if max_degrees.len() != domain.dim() {
            return Err(Error::argument(format!(
                "got {} degrees for a {}-dimensional domain",
                max_degrees.len(),
                domain.dim()
            )));
        }
        if let Some(&n) = max_degrees.iter().find(|&&n| n > MAX_DEGREE_CAP) {
            return Err(Error::argument(format!(
                "max_degree {n} exceeds cap {MAX_DEGREE_CAP}"
            )));
        }
        Ok(BasisSpecND {
            domain,
            max_degrees,
        })
    }

    pub fn dim(&self) -> usize {
        self.max_degrees.len()
    }

    pub fn domain(&self) -> &RectDomain {
        &self.domain
    }

    pub fn max_degrees(&self) -> &[usize] {
        &self.max_degrees
    }

    /// Coefficient-tensor shape, (N_1+1, ..., N_n+1).
    pub fn shape(&self) -> Vec<usize> {
        self.max_degrees.iter().map(|&n| n + 1).collect()
    }

    /// Total number of coefficients in the degree box.
    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The 1D basis along one axis.
    pub fn axis_spec(&self, axis: usize) -> BasisSpec1D {
        BasisSpec1D {
            interval: self.domain.interval(axis),
            max_degree: self.max_degrees[axis],
        }
    }
}
