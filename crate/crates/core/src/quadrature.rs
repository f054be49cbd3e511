//! Gauss-Legendre quadrature on arbitrary intervals.
//!
//! An order-n rule integrates polynomials of degree <= 2n-1 exactly, which
//! turns every inner product of two basis polynomials into an exact
//! (machine-precision) computation at finite order.

use crate::coeff::CoeffVector;
use crate::domain::{BasisSpec1D, Interval};
use crate::error::{Error, Result};
use crate::glp;

pub const MAX_ORDER: usize = 2048;
const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_STEPS: usize = 100;

/// Nodes and weights for exact polynomial integration on one interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    interval: Interval,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Builds the order-point Gauss-Legendre rule on `interval`.
///
/// Roots of P_order are found by Newton iteration from the Chebyshev-type
/// initial guesses cos(pi (i + 3/4)/(order + 1/2)), converged to 1e-15 in
/// the reference variable, then mapped affinely. Weights are
/// (b-a) / ((1 - t_i^2) P'_order(t_i)^2).
pub fn gauss_legendre(interval: Interval, order: usize) -> Result<QuadratureRule> {
    if order < 1 || order > MAX_ORDER {
        return Err(Error::argument(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {order}"
        )));
    }
    let n = order as f64;
    let mut t = vec![0.0; order];
    let mut wt = vec![0.0; order];
    for i in 0..order.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut converged = false;
        for _ in 0..NEWTON_MAX_STEPS {
            let (p, dp) = glp::legendre_with_deriv(order, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!(
                "Newton iteration for node {i} of order {order} did not converge"
            )));
        }
        let (_, dp) = glp::legendre_with_deriv(order, z);
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        // i counts down from the largest root; store symmetrically so the
        // node list comes out ascending and exactly antisymmetric
        t[i] = -z;
        t[order - 1 - i] = z;
        wt[i] = w;
        wt[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        t[order / 2] = 0.0;
    }
    for i in 1..order {
        if t[i] <= t[i - 1] {
            return Err(Error::Numerical(format!(
                "order-{order} nodes are not strictly increasing"
            )));
        }
    }
    let half = 0.5 * interval.width();
    let mid = interval.midpoint();
    let nodes = t.iter().map(|&ti| mid + half * ti).collect();
    let weights = wt.iter().map(|&wi| half * wi).collect();
    Ok(QuadratureRule {
        interval,
        nodes,
        weights,
    })
}

/// Integral of f over the rule's interval.
pub fn integrate(f: impl Fn(f64) -> f64, rule: &QuadratureRule) -> f64 {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * f(x))
        .sum()
}

/// Inner product of two functions: sum_i w_i f(x_i) g(x_i).
pub fn inner_product(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    rule: &QuadratureRule,
) -> f64 {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * f(x) * g(x))
        .sum()
}

/// Expansion coefficients of f in the basis family of `spec`.
///
/// Exact (up to rounding) whenever f is a polynomial of degree <= max_degree,
/// which requires order >= max_degree + 1.
pub fn project_1d(
    f: impl Fn(f64) -> f64,
    spec: &BasisSpec1D,
    rule: &QuadratureRule,
) -> Result<CoeffVector> {
    if rule.order() < spec.max_degree() + 1 {
        return Err(Error::argument(format!(
            "rule order {} too small for max_degree {} (needs >= {})",
            rule.order(),
            spec.max_degree(),
            spec.max_degree() + 1
        )));
    }
    let mut coeffs = vec![0.0; spec.len()];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fx = f(x) * w;
        for (m, wm) in glp::eval_all(spec, x)?.into_iter().enumerate() {
            coeffs[m] += fx * wm;
        }
    }
    CoeffVector::new(*spec, coeffs)
}

/// Max entrywise deviation of the basis Gram matrix from the identity.
pub fn gram_defect(spec: &BasisSpec1D, rule: &QuadratureRule) -> Result<f64> {
    if rule.order() < spec.max_degree() + 1 {
        return Err(Error::argument(format!(
            "rule order {} too small for max_degree {}",
            rule.order(),
            spec.max_degree()
        )));
    }
    let table: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|&x| glp::eval_all(spec, x))
        .collect::<Result<_>>()?;
    let size = spec.len();
    let mut worst: f64 = 0.0;
    for n in 0..size {
        for m in n..size {
            let g: f64 = table
                .iter()
                .zip(&rule.weights)
                .map(|(row, &w)| w * row[n] * row[m])
                .sum();
            let target = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn spec(a: f64, b: f64, n: usize) -> BasisSpec1D {
        BasisSpec1D::new(iv(a, b), n).unwrap()
    }

    #[test]
    fn order_one_is_midpoint() {
        let rule = gauss_legendre(iv(-1.0, 1.0), 1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert_eq!(rule.weights(), &[2.0]);
    }

    #[test]
    fn order_two_reference() {
        let rule = gauss_legendre(iv(-1.0, 1.0), 2).unwrap();
        let r = 0.577_350_269_189_625_7;
        assert!((rule.nodes()[0] + r).abs() < 1e-15);
        assert!((rule.nodes()[1] - r).abs() < 1e-15);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-14);
        assert!((rule.weights()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn order_two_mapped() {
        let rule = gauss_legendre(iv(3.0, 7.0), 2).unwrap();
        assert!((rule.nodes()[0] - 3.845_299_461_620_748_5).abs() < 1e-13);
        assert!((rule.nodes()[1] - 6.154_700_538_379_251_5).abs() < 1e-13);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-13);
        assert!((rule.weights()[1] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_width() {
        for order in [1, 2, 3, 7, 16, 64, 257] {
            let rule = gauss_legendre(iv(3.0, 7.0), order).unwrap();
            let sum: f64 = rule.weights().iter().sum();
            assert!((sum - 4.0).abs() < 1e-12, "order {order}: {sum}");
            assert!(rule
                .nodes()
                .iter()
                .all(|&x| x > 3.0 && x < 7.0));
        }
    }

    #[test]
    fn large_order_converges() {
        let rule = gauss_legendre(iv(0.0, 1.0), MAX_ORDER).unwrap();
        assert_eq!(rule.order(), MAX_ORDER);
        let sum: f64 = rule.weights().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        // nodes strictly increasing was validated during construction
        let integral = integrate(|x| x * x, &rule);
        assert!((integral - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn order_guard() {
        assert!(gauss_legendre(iv(0.0, 1.0), 0).is_err());
        assert!(gauss_legendre(iv(0.0, 1.0), MAX_ORDER + 1).is_err());
    }

    #[test]
    fn basis_orthonormality() {
        let s = spec(3.0, 7.0, 8);
        let rule = gauss_legendre(s.interval(), 32).unwrap();
        let w2 = |x| glp::eval(&s, 2, x).unwrap();
        let w5 = |x| glp::eval(&s, 5, x).unwrap();
        assert!((inner_product(&w2, &w2, &rule) - 1.0).abs() < 1e-12);
        assert!(inner_product(&w2, &w5, &rule).abs() < 1e-12);
    }

    #[test]
    fn constant_inner_product_is_width() {
        let rule = gauss_legendre(iv(3.0, 7.0), 4).unwrap();
        assert!((inner_product(|_| 1.0, |_| 1.0, &rule) - 4.0).abs() < 1e-13);
    }

    #[test]
    fn exactness_on_random_polynomials() {
        // oracle: analytic integration of the coefficient form
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let interval = iv(2.0, 5.0);
        for order in [2usize, 5, 9] {
            let rule = gauss_legendre(interval, order).unwrap();
            for _ in 0..20 {
                let deg = rng.gen_range(0..=(2 * order - 1));
                let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let p = |x: f64| {
                    coeffs
                        .iter()
                        .rev()
                        .fold(0.0, |acc, &c| acc * x + c)
                };
                let exact: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        c * (5.0f64.powi(k as i32 + 1) - 2.0f64.powi(k as i32 + 1))
                            / (k as f64 + 1.0)
                    })
                    .sum();
                let got = integrate(p, &rule);
                assert!(
                    (got - exact).abs() <= 1e-11 * (1.0 + exact.abs()),
                    "deg {deg} order {order}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn project_constant() {
        let s = spec(3.0, 7.0, 4);
        let rule = gauss_legendre(s.interval(), 8).unwrap();
        let c = project_1d(|_| 1.0, &s, &rule).unwrap();
        assert!((c.coeffs()[0] - 2.0).abs() < 1e-12);
        for m in 1..=4 {
            assert!(c.coeffs()[m].abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn project_basis_function_gives_unit_coordinate() {
        let s = spec(3.0, 7.0, 5);
        let rule = gauss_legendre(s.interval(), 8).unwrap();
        let c = project_1d(|x| glp::eval(&s, 3, x).unwrap(), &s, &rule).unwrap();
        for m in 0..=5 {
            let expect = if m == 3 { 1.0 } else { 0.0 };
            assert!((c.coeffs()[m] - expect).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn project_identity_function() {
        let s = spec(-1.0, 1.0, 3);
        let rule = gauss_legendre(s.interval(), 6).unwrap();
        let c = project_1d(|x| x, &s, &rule).unwrap();
        assert!(c.coeffs()[0].abs() < 1e-13);
        assert!((c.coeffs()[1] - 0.816_496_580_927_726).abs() < 1e-13);
        assert!(c.coeffs()[2].abs() < 1e-13);
        assert!(c.coeffs()[3].abs() < 1e-13);
    }

    #[test]
    fn project_rejects_small_rule() {
        let s = spec(0.0, 1.0, 8);
        let rule = gauss_legendre(s.interval(), 8).unwrap();
        assert!(matches!(
            project_1d(|_| 1.0, &s, &rule),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn gram_identity() {
        let s = spec(3.0, 7.0, 40);
        let rule = gauss_legendre(s.interval(), 64).unwrap();
        let defect = gram_defect(&s, &rule).unwrap();
        assert!(defect <= 1e-10, "gram defect {defect}");
    }

    #[test]
    fn projection_idempotence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let s = spec(3.0, 7.0, 40);
        let rule = gauss_legendre(s.interval(), 48).unwrap();
        let coeffs: Vec<f64> = (0..s.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c = CoeffVector::new(s, coeffs).unwrap();
        let back = project_1d(|x| c.synthesize(x).unwrap(), &s, &rule).unwrap();
        for m in 0..s.len() {
            assert!(
                (back.coeffs()[m] - c.coeffs()[m]).abs() < 1e-10,
                "m={m}"
            );
        }
    }
}
