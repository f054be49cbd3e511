//! Legendre polynomials and their rescaled, orthonormal relatives.
//!
//! Three families, each evaluated by the stable three-term recurrence
//! (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}:
//!
//! * `legendre`            — classical P_n on [-1, 1]
//! * `legendre_normalized` — K_n = sqrt(n + 1/2) P_n, orthonormal on [-1, 1]
//! * `eval`                — W_n(a,b,x) = sqrt(2/(b-a)) K_n(t(x)), an
//!   orthonormal basis of L2[a, b], where t is the affine map onto [-1, 1]
//!
//! Derivatives come from the derivative recurrence
//! P'_{n+1} = P'_{n-1} + (2n+1) P_n run alongside the value recurrence,
//! with the chain factor 2/(b-a) per derivative order.

use crate::domain::BasisSpec1D;
use crate::error::{Error, Result};

/// Relative slack (times interval width) admitted outside [a, b].
const DOMAIN_SLACK: f64 = 1e-9;

/// Classical Legendre polynomial P_n(x).
pub fn legendre(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut p_prev = 1.0;
            let mut p_curr = x;
            for k in 1..n {
                let kf = k as f64;
                let p_next = ((2.0 * kf + 1.0) * x * p_curr - kf * p_prev) / (kf + 1.0);
                p_prev = p_curr;
                p_curr = p_next;
            }
            p_curr
        }
    }
}

/// P_n(x) together with P'_n(x).
pub fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let (p, d, _) = legendre_jet(n, x);
    (p, d)
}

/// P_n, P'_n and P''_n in one recurrence pass.
///
/// The derivative recurrences are the value recurrence differentiated once
/// and twice: P'_{n+1} = P'_{n-1} + (2n+1) P_n and
/// P''_{n+1} = P''_{n-1} + (2n+1) P'_n.
pub fn legendre_jet(n: usize, x: f64) -> (f64, f64, f64) {
    match n {
        0 => (1.0, 0.0, 0.0),
        1 => (x, 1.0, 0.0),
        _ => {
            let (mut p0, mut p1) = (1.0, x);
            let (mut d0, mut d1) = (0.0, 1.0);
            let (mut s0, mut s1) = (0.0, 0.0);
            for k in 1..n {
                let kf = k as f64;
                let c = 2.0 * kf + 1.0;
                let p2 = (c * x * p1 - kf * p0) / (kf + 1.0);
                let d2 = d0 + c * p1;
                let s2 = s0 + c * d1;
                p0 = p1;
                p1 = p2;
                d0 = d1;
                d1 = d2;
                s0 = s1;
                s1 = s2;
            }
            (p1, d1, s1)
        }
    }
}

/// Normalization constant sqrt(n + 1/2).
fn norm_factor(n: usize) -> f64 {
    (n as f64 + 0.5).sqrt()
}

/// Normalized Legendre polynomial K_n(x) = sqrt(n + 1/2) P_n(x).
pub fn legendre_normalized(n: usize, x: f64) -> f64 {
    norm_factor(n) * legendre(n, x)
}

/// Amplitude scale of W_n on its interval: sqrt(2/width).
pub fn interval_scale(spec: &BasisSpec1D) -> f64 {
    (2.0 / spec.interval().width()).sqrt()
}

fn check_degree(spec: &BasisSpec1D, n: usize) -> Result<()> {
    if n > spec.max_degree() {
        return Err(Error::argument(format!(
            "degree {n} exceeds basis max_degree {}",
            spec.max_degree()
        )));
    }
    Ok(())
}

/// Maps x into the reference variable t, rejecting points outside the
/// interval by more than `DOMAIN_SLACK * width` and clamping the remaining
/// floating-point drift of the affine map to [-1, 1].
fn mapped(spec: &BasisSpec1D, x: f64) -> Result<f64> {
    let iv = spec.interval();
    if !iv.contains(x, DOMAIN_SLACK * iv.width()) {
        return Err(Error::domain(format!(
            "x = {x} outside [{}, {}]",
            iv.a(),
            iv.b()
        )));
    }
    Ok(iv.to_unit(x).clamp(-1.0, 1.0))
}

/// W_n(a, b, x).
pub fn eval(spec: &BasisSpec1D, n: usize, x: f64) -> Result<f64> {
    check_degree(spec, n)?;
    let t = mapped(spec, x)?;
    Ok(interval_scale(spec) * legendre_normalized(n, t))
}

/// d/dx W_n(a, b, x).
pub fn eval_deriv(spec: &BasisSpec1D, n: usize, x: f64) -> Result<f64> {
    let (_, d, _) = eval_jet(spec, n, x)?;
    Ok(d)
}

/// (W_n, W'_n, W''_n) at x.
pub fn eval_jet(spec: &BasisSpec1D, n: usize, x: f64) -> Result<(f64, f64, f64)> {
    check_degree(spec, n)?;
    let t = mapped(spec, x)?;
    let chain = 2.0 / spec.interval().width();
    let scale = interval_scale(spec) * norm_factor(n);
    let (p, d, s) = legendre_jet(n, t);
    Ok((scale * p, scale * d * chain, scale * s * chain * chain))
}

/// All of W_0(x), ..., W_N(x) in a single recurrence pass.
pub fn eval_all(spec: &BasisSpec1D, x: f64) -> Result<Vec<f64>> {
    let t = mapped(spec, x)?;
    let scale = interval_scale(spec);
    let n_max = spec.max_degree();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p_prev = 1.0;
    let mut p_curr = t;
    out.push(scale * norm_factor(0));
    if n_max >= 1 {
        out.push(scale * norm_factor(1) * t);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * t * p_curr - kf * p_prev) / (kf + 1.0);
        p_prev = p_curr;
        p_curr = p_next;
        out.push(scale * norm_factor(k + 1) * p_next);
    }
    Ok(out)
}

/// Maximum absolute residuals of the two degree-shift relations
///
/// ```text
/// (2/(b-a)) sqrt((n+3/2)/(n+1/2)) [ (x-a)(x-b) W'_n + (n+1)(x - (a+b)/2) W_n ] = (n+1) W_{n+1}
/// (2/(b-a)) sqrt((n-1/2)/(n+1/2)) [-(x-a)(x-b) W'_n +     n(x - (a+b)/2) W_n ] =     n W_{n-1}
/// ```
///
/// over the given points. Requires 1 <= n <= max_degree - 1 so both
/// neighbors exist.
pub fn recurrence_residuals(spec: &BasisSpec1D, n: usize, points: &[f64]) -> Result<(f64, f64)> {
    if n == 0 || n + 1 > spec.max_degree() {
        return Err(Error::argument(format!(
            "recurrence needs 1 <= n <= {}, got {n}",
            spec.max_degree().saturating_sub(1)
        )));
    }
    let iv = spec.interval();
    let (a, b) = (iv.a(), iv.b());
    let chain = 2.0 / iv.width();
    let nf = n as f64;
    let up_factor = chain * ((nf + 1.5) / (nf + 0.5)).sqrt();
    let down_factor = chain * ((nf - 0.5) / (nf + 0.5)).sqrt();
    let mut up_res: f64 = 0.0;
    let mut down_res: f64 = 0.0;
    for &x in points {
        let (w, wp, _) = eval_jet(spec, n, x)?;
        let q = (x - a) * (x - b);
        let xm = x - iv.midpoint();
        let up = up_factor * (q * wp + (nf + 1.0) * xm * w);
        let down = down_factor * (-q * wp + nf * xm * w);
        up_res = up_res.max((up - (nf + 1.0) * eval(spec, n + 1, x)?).abs());
        down_res = down_res.max((down - nf * eval(spec, n - 1, x)?).abs());
    }
    Ok((up_res, down_res))
}

/// Uniformly spaced points covering [a, b] inclusive.
pub fn uniform_points(spec: &BasisSpec1D, count: usize) -> Vec<f64> {
    let iv = spec.interval();
    if count == 1 {
        return vec![iv.midpoint()];
    }
    (0..count)
        .map(|j| iv.a() + iv.width() * j as f64 / (count - 1) as f64)
        .collect()
}

/// A basis family sampled on a fixed point set, with optional derivatives.
#[derive(Debug, Clone)]
pub struct EvalTable {
    spec: BasisSpec1D,
    points: Vec<f64>,
    /// values[n][j] = W_n(points[j])
    values: Vec<Vec<f64>>,
    derivs: Option<Vec<Vec<f64>>>,
}

impl EvalTable {
    pub fn build(spec: BasisSpec1D, points: Vec<f64>, with_derivs: bool) -> Result<Self> {
        let n_max = spec.max_degree();
        let mut values = vec![Vec::with_capacity(points.len()); n_max + 1];
        let mut derivs = if with_derivs {
            Some(vec![Vec::with_capacity(points.len()); n_max + 1])
        } else {
            None
        };
        for &x in &points {
            if let Some(d) = derivs.as_mut() {
                for n in 0..=n_max {
                    let (w, wp, _) = eval_jet(&spec, n, x)?;
                    values[n].push(w);
                    d[n].push(wp);
                }
            } else {
                for (n, w) in eval_all(&spec, x)?.into_iter().enumerate() {
                    values[n].push(w);
                }
            }
        }
        Ok(EvalTable {
            spec,
            points,
            values,
            derivs,
        })
    }

    pub fn spec(&self) -> &BasisSpec1D {
        &self.spec
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn derivs(&self) -> Option<&[Vec<f64>]> {
        self.derivs.as_deref()
    }

    /// How far the sampled values exceed sqrt(2/(b-a)); diagnostic only.
    /// The true amplitude bound carries an extra sqrt(n+1/2) per degree,
    /// so this is positive for every n >= 1 family that reaches an endpoint.
    pub fn bound_defect(&self) -> f64 {
        let bound = interval_scale(&self.spec);
        self.values
            .iter()
            .flatten()
            .map(|v| v.abs() - bound)
            .fold(0.0, f64::max)
    }

    /// CSV with header `x,W0,...,WN`, one row per point, 17 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        write!(out, "x")?;
        for n in 0..=self.spec.max_degree() {
            write!(out, ",W{n}")?;
        }
        writeln!(out)?;
        for (j, &x) in self.points.iter().enumerate() {
            write!(out, "{}", fmt_g17(x))?;
            for col in &self.values {
                write!(out, ",{}", fmt_g17(col[j]))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// 17 significant digits; round-trips any f64 exactly.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}
