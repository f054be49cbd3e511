//! su(1,1) ladder operators on the basis index, in two pictures.
//!
//! Spectral picture, acting on coefficient sequences:
//!
//! ```text
//! J+ e_n = (n+1) e_{n+1}     J- e_n = n e_{n-1}
//! N  e_n = n e_n             J3 e_n = (n+1/2) e_n
//! ```
//!
//! These close [J3, J±] = ±J±, [J+, J-] = -2 J3, with quadratic Casimir
//! C = J3^2 - {J+,J-}/2 = -1/4 on every vector. Differential picture, acting
//! on functions of x: first-order operators whose action on W_n reproduces
//! the spectral shifts; their products give the second-order equation
//! annihilating W_n. Consistency of the two pictures is what the checks in
//! this module quantify.
//!
//! On a finite coefficient space the raising operator pushes the top index
//! out of range; that term is dropped and flagged rather than wrapped, and
//! diagonal operators are computed analytically on indices so the algebra
//! checks stay exact away from the boundary.

use crate::coeff::CoeffVector;
use crate::domain::BasisSpec1D;
use crate::error::{Error, Result};
use crate::glp;

/// Which operator a [`LadderAction`] applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Raise,
    Lower,
    J3,
    Number,
    Casimir,
}

/// Result of applying one operator to a coefficient vector.
#[derive(Debug, Clone)]
pub struct LadderAction {
    pub kind: LadderKind,
    pub input: CoeffVector,
    pub output: CoeffVector,
    /// True when a raised top coefficient fell outside the basis and was dropped.
    pub truncated: bool,
}

/// J+ : output^{m+1} = (m+1) c^m. A nonzero top coefficient is truncated.
pub fn apply_jplus(c: &CoeffVector) -> LadderAction {
    let n = c.len();
    let mut out = vec![0.0; n];
    for m in 0..n - 1 {
        out[m + 1] = (m as f64 + 1.0) * c.coeffs()[m];
    }
    let truncated = c.coeffs()[n - 1] != 0.0;
    LadderAction {
        kind: LadderKind::Raise,
        input: c.clone(),
        output: CoeffVector::new(*c.spec(), out).expect("same length"),
        truncated,
    }
}

/// J- : output^{m-1} = m c^m; annihilates e_0.
pub fn apply_jminus(c: &CoeffVector) -> LadderAction {
    let n = c.len();
    let mut out = vec![0.0; n];
    for m in 1..n {
        out[m - 1] = m as f64 * c.coeffs()[m];
    }
    LadderAction {
        kind: LadderKind::Lower,
        input: c.clone(),
        output: CoeffVector::new(*c.spec(), out).expect("same length"),
        truncated: false,
    }
}

fn apply_diagonal(kind: LadderKind, c: &CoeffVector, f: impl Fn(f64) -> f64) -> LadderAction {
    let out = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, &cm)| f(m as f64) * cm)
        .collect();
    LadderAction {
        kind,
        input: c.clone(),
        output: CoeffVector::new(*c.spec(), out).expect("same length"),
        truncated: false,
    }
}

/// J3 = N + 1/2: output^m = (m + 1/2) c^m.
pub fn apply_j3(c: &CoeffVector) -> LadderAction {
    apply_diagonal(LadderKind::J3, c, |m| m + 0.5)
}

/// Number operator: output^m = m c^m.
pub fn apply_number(c: &CoeffVector) -> LadderAction {
    apply_diagonal(LadderKind::Number, c, |m| m)
}

/// Casimir C = J3^2 - {J+,J-}/2, evaluated analytically per index
/// ((m+1/2)^2 - (m^2 + (m+1)^2)/2 = -1/4 identically).
pub fn apply_casimir(c: &CoeffVector) -> LadderAction {
    apply_diagonal(LadderKind::Casimir, c, |m| {
        (m + 0.5).powi(2) - 0.5 * (m * m + (m + 1.0) * (m + 1.0))
    })
}

/// Norm of (C + 1/4) c with the analytic diagonal convention; zero for
/// every c up to rounding.
pub fn casimir_defect(c: &CoeffVector) -> f64 {
    c.coeffs()
        .iter()
        .enumerate()
        .map(|(m, &cm)| {
            let mf = m as f64;
            let diag = (mf + 0.5).powi(2) - 0.5 * (mf * mf + (mf + 1.0) * (mf + 1.0)) + 0.25;
            (diag * cm).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

fn spectral_spec(n_max: usize) -> Result<BasisSpec1D> {
    // the spectral picture never evaluates basis functions; any interval works
    BasisSpec1D::new(crate::domain::Interval::new(-1.0, 1.0)?, n_max)
}

/// Max commutator defects over unit vectors e_0..e_{N-2}, where no
/// truncation occurs: (max ||([J3,J±] ∓ J±) e_m||, max ||([J+,J-] + 2 J3) e_m||).
pub fn commutator_defects(n_max: usize) -> Result<(f64, f64)> {
    if n_max < 2 {
        return Err(Error::argument(format!(
            "commutator check needs N >= 2, got {n_max}"
        )));
    }
    let spec = spectral_spec(n_max)?;
    let mut ladder_defect: f64 = 0.0;
    let mut pair_defect: f64 = 0.0;
    for m in 0..=n_max - 2 {
        let e = CoeffVector::unit(spec, m)?;
        let jp = |v: &CoeffVector| apply_jplus(v).output;
        let jm = |v: &CoeffVector| apply_jminus(v).output;
        let j3 = |v: &CoeffVector| apply_j3(v).output;

        // [J3, J+] - J+
        let d_plus = j3(&jp(&e))
            .sub(&jp(&j3(&e)))?
            .sub(&jp(&e))?;
        // [J3, J-] + J-
        let d_minus = j3(&jm(&e))
            .sub(&jm(&j3(&e)))?
            .add(&jm(&e))?;
        ladder_defect = ladder_defect.max(d_plus.norm()).max(d_minus.norm());

        // [J+, J-] + 2 J3
        let d_pair = jp(&jm(&e))
            .sub(&jm(&jp(&e)))?
            .add(&j3(&e).scale(2.0))?;
        pair_defect = pair_defect.max(d_pair.norm());
    }
    Ok((ladder_defect, pair_defect))
}

/// Max over non-truncating unit vectors of ||({J+,J-} - 2 J3^2 - 1/2) e_m||.
///
/// From the ladder actions, {J+,J-} e_m = (m^2 + (m+1)^2) e_m = (2 J3^2 + 1/2) e_m.
pub fn anticommutator_defect(n_max: usize) -> Result<f64> {
    if n_max < 1 {
        return Err(Error::argument("anticommutator check needs N >= 1"));
    }
    let spec = spectral_spec(n_max)?;
    let mut worst: f64 = 0.0;
    for m in 0..=n_max - 1 {
        let e = CoeffVector::unit(spec, m)?;
        let jp = |v: &CoeffVector| apply_jplus(v).output;
        let jm = |v: &CoeffVector| apply_jminus(v).output;
        let j3sq = apply_j3(&apply_j3(&e).output).output;
        let anti = jp(&jm(&e)).add(&jm(&jp(&e)))?;
        let defect = anti.sub(&j3sq.scale(2.0))?.sub(&e.scale(0.5))?;
        worst = worst.max(defect.norm());
    }
    Ok(worst)
}

/// Differential raising operator applied to W_n, evaluated at `points`:
///
/// ```text
/// (2/(b-a)) sqrt((n+3/2)/(n+1/2)) [ (x-a)(x-b) W'_n + (n+1)(x-(a+b)/2) W_n ]
/// ```
///
/// Equals (n+1) W_{n+1} pointwise.
pub fn apply_jplus_differential(
    spec: &BasisSpec1D,
    n: usize,
    points: &[f64],
) -> Result<Vec<f64>> {
    if n + 1 > spec.max_degree() {
        return Err(Error::argument(format!(
            "raising degree {n} leaves the basis (max_degree {})",
            spec.max_degree()
        )));
    }
    let iv = spec.interval();
    let nf = n as f64;
    let factor = (2.0 / iv.width()) * ((nf + 1.5) / (nf + 0.5)).sqrt();
    points
        .iter()
        .map(|&x| {
            let (w, wp, _) = glp::eval_jet(spec, n, x)?;
            let q = (x - iv.a()) * (x - iv.b());
            Ok(factor * (q * wp + (nf + 1.0) * (x - iv.midpoint()) * w))
        })
        .collect()
}

/// Differential lowering operator applied to W_n (n >= 1); equals n W_{n-1}.
pub fn apply_jminus_differential(
    spec: &BasisSpec1D,
    n: usize,
    points: &[f64],
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::argument("lowering operator needs n >= 1"));
    }
    if n > spec.max_degree() {
        return Err(Error::argument(format!(
            "degree {n} exceeds basis max_degree {}",
            spec.max_degree()
        )));
    }
    let iv = spec.interval();
    let nf = n as f64;
    let factor = (2.0 / iv.width()) * ((nf - 0.5) / (nf + 0.5)).sqrt();
    points
        .iter()
        .map(|&x| {
            let (w, wp, _) = glp::eval_jet(spec, n, x)?;
            let q = (x - iv.a()) * (x - iv.b());
            Ok(factor * (-q * wp + nf * (x - iv.midpoint()) * w))
        })
        .collect()
}

/// Max normalized residual of the second-order equation annihilating W_n:
///
/// ```text
/// | -(x-a)(x-b) W''_n - 2 (x-(a+b)/2) W'_n + n(n+1) W_n | / (1 + |W_n|)
/// ```
///
/// over interior points.
pub fn ode_residual(spec: &BasisSpec1D, n: usize, points: &[f64]) -> Result<f64> {
    let iv = spec.interval();
    let nf = n as f64;
    let mut worst: f64 = 0.0;
    for &x in points {
        if x <= iv.a() || x >= iv.b() {
            return Err(Error::domain(format!(
                "ode residual needs interior points, got {x}"
            )));
        }
        let (w, wp, wpp) = glp::eval_jet(spec, n, x)?;
        let q = (x - iv.a()) * (x - iv.b());
        let res = -q * wpp - 2.0 * (x - iv.midpoint()) * wp + nf * (nf + 1.0) * w;
        worst = worst.max(res.abs() / (1.0 + w.abs()));
    }
    Ok(worst)
}
