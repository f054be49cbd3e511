//! Self-contained numerical verification suite.
//!
//! Each check computes a worst-case defect for one identity or inequality
//! and compares it against a pinned tolerance. Randomized checks draw from
//! a seeded generator so reports are reproducible byte for byte.

use crate::coeff::CoeffVector;
use crate::domain::{BasisSpec1D, BasisSpecND, Interval, RectDomain};
use crate::error::Result;
use crate::glp;
use crate::quadrature;
use crate::seminorms;
use crate::su11;
use crate::tensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Multiplies every tolerance; 0 turns the suite into a negative control.
    pub tol_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1234,
            tol_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn result(name: &'static str, defect: f64, tolerance: f64, cfg: &VerifyConfig) -> CheckResult {
    CheckResult {
        name,
        defect,
        tolerance,
        pass: defect <= tolerance * cfg.tol_scale,
    }
}

fn rng_for(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ stream)
}

fn spec(a: f64, b: f64, n: usize) -> Result<BasisSpec1D> {
    BasisSpec1D::new(Interval::new(a, b)?, n)
}

fn interior_points(s: &BasisSpec1D, count: usize) -> Vec<f64> {
    let iv = s.interval();
    (1..=count)
        .map(|j| iv.a() + iv.width() * j as f64 / (count + 1) as f64)
        .collect()
}

fn random_coeffs(rng: &mut ChaCha8Rng, s: BasisSpec1D) -> CoeffVector {
    let coeffs: Vec<f64> = (0..s.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    CoeffVector::new(s, coeffs).expect("length matches")
}

/// Runs every check with the configured seed and tolerance scale.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    // ---- basis evaluation ----
    {
        let s = spec(-1.0, 1.0, 40)?;
        let mut defect: f64 = 0.0;
        for &x in &glp::uniform_points(&s, 201) {
            for n in 0..=40 {
                defect =
                    defect.max((glp::eval(&s, n, x)? - glp::legendre_normalized(n, x)).abs());
            }
        }
        out.push(result("glp/affine-reduction", defect, 1e-14, cfg));
    }
    {
        let s = spec(3.0, 7.0, 50)?;
        let scale = glp::interval_scale(&s);
        let mut defect: f64 = 0.0;
        for n in 0..=50 {
            let expect = scale * (n as f64 + 0.5).sqrt();
            defect = defect.max((glp::eval(&s, n, 7.0)? - expect).abs());
        }
        out.push(result("glp/endpoint-value", defect, 1e-12, cfg));
    }
    {
        // |W_m| <= sqrt(2/(b-a)) sqrt(m+1/2), tight at the endpoints
        let s = spec(3.0, 7.0, 60)?;
        let scale = glp::interval_scale(&s);
        let mut defect: f64 = f64::NEG_INFINITY;
        for &x in &glp::uniform_points(&s, 2001) {
            for (m, w) in glp::eval_all(&s, x)?.into_iter().enumerate() {
                defect = defect.max(w.abs() - scale * (m as f64 + 0.5).sqrt());
            }
        }
        out.push(result("glp/amplitude-bound", defect, 1e-9, cfg));
    }
    {
        let s = spec(3.0, 7.0, 51)?;
        let pts = glp::uniform_points(&s, 201);
        let mut defect: f64 = 0.0;
        for n in 1..=50 {
            let (up, down) = glp::recurrence_residuals(&s, n, &pts)?;
            defect = defect.max(up).max(down);
        }
        out.push(result("glp/recurrence", defect, 1e-8, cfg));
    }
    {
        let s = spec(3.0, 7.0, 40)?;
        let c = s.interval().midpoint();
        let mut defect: f64 = 0.0;
        for n in 0..=40 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for j in 0..100 {
                let u = s.interval().width() * 0.5 * j as f64 / 99.0;
                defect = defect
                    .max((glp::eval(&s, n, c + u)? - sign * glp::eval(&s, n, c - u)?).abs());
            }
        }
        out.push(result("glp/parity", defect, 1e-10, cfg));
    }

    // ---- quadrature ----
    {
        let iv = Interval::new(3.0, 7.0)?;
        let mut defect: f64 = 0.0;
        for order in [1usize, 8, 64, 257] {
            let rule = quadrature::gauss_legendre(iv, order)?;
            let sum: f64 = rule.weights().iter().sum();
            defect = defect.max((sum - 4.0).abs());
        }
        out.push(result("quad/weight-sum", defect, 1e-12, cfg));
    }
    {
        let mut rng = rng_for(cfg, 1);
        let iv = Interval::new(2.0, 5.0)?;
        let mut defect: f64 = 0.0;
        for order in [4usize, 16] {
            let rule = quadrature::gauss_legendre(iv, order)?;
            for _ in 0..25 {
                let deg = rng.gen_range(0..=(2 * order - 1));
                let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let p = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
                let exact: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        c * (5.0f64.powi(k as i32 + 1) - 2.0f64.powi(k as i32 + 1))
                            / (k as f64 + 1.0)
                    })
                    .sum();
                defect =
                    defect.max((quadrature::integrate(p, &rule) - exact).abs() / (1.0 + exact.abs()));
            }
        }
        out.push(result("quad/exactness", defect, 1e-11, cfg));
    }
    {
        let s = spec(3.0, 7.0, 40)?;
        let rule = quadrature::gauss_legendre(s.interval(), 64)?;
        out.push(result(
            "quad/gram-1d",
            quadrature::gram_defect(&s, &rule)?,
            1e-10,
            cfg,
        ));
    }
    {
        let mut rng = rng_for(cfg, 2);
        let s = spec(3.0, 7.0, 40)?;
        let rule = quadrature::gauss_legendre(s.interval(), 48)?;
        let c = random_coeffs(&mut rng, s);
        let back = quadrature::project_1d(|x| c.synthesize(x).unwrap(), &s, &rule)?;
        let defect = back
            .coeffs()
            .iter()
            .zip(c.coeffs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        out.push(result("quad/projection-idempotence", defect, 1e-10, cfg));
    }

    // ---- ladder operators ----
    {
        let mut defect: f64 = 0.0;
        for (a, b) in [(3.0, 7.0), (0.0, 1.0)] {
            let s = spec(a, b, 31)?;
            let pts = interior_points(&s, 101);
            for n in 0..=30 {
                let raised = su11::apply_jplus_differential(&s, n, &pts)?;
                for (j, &x) in pts.iter().enumerate() {
                    let expect = (n as f64 + 1.0) * glp::eval(&s, n + 1, x)?;
                    defect = defect.max((raised[j] - expect).abs());
                }
                if n >= 1 {
                    let lowered = su11::apply_jminus_differential(&s, n, &pts)?;
                    for (j, &x) in pts.iter().enumerate() {
                        let expect = n as f64 * glp::eval(&s, n - 1, x)?;
                        defect = defect.max((lowered[j] - expect).abs());
                    }
                }
            }
        }
        out.push(result("su11/ladder-consistency", defect, 1e-8, cfg));
    }
    {
        let (ladder, pair) = su11::commutator_defects(128)?;
        out.push(result("su11/commutators", ladder.max(pair), 1e-12, cfg));
    }
    {
        let mut rng = rng_for(cfg, 3);
        let s = spec(3.0, 7.0, 40)?;
        let mut defect: f64 = 0.0;
        for _ in 0..100 {
            let c = random_coeffs(&mut rng, s);
            defect = defect.max(su11::casimir_defect(&c) / c.norm().max(1e-300));
        }
        out.push(result("su11/casimir", defect, 1e-11, cfg));
    }
    out.push(result(
        "su11/anticommutator",
        su11::anticommutator_defect(128)?,
        1e-12,
        cfg,
    ));
    {
        let s = spec(3.0, 7.0, 20)?;
        let pts = interior_points(&s, 51);
        let mut defect: f64 = 0.0;
        for n in 0..=20 {
            defect = defect.max(su11::ode_residual(&s, n, &pts)?);
        }
        out.push(result("su11/ode", defect, 1e-7, cfg));
    }

    // ---- tensor bases ----
    {
        let mut rng = rng_for(cfg, 4);
        let mut defect: f64 = 0.0;
        for dim in [2usize, 3] {
            let intervals: Vec<Interval> = (0..dim)
                .map(|_| {
                    let a = rng.gen_range(-3.0..2.0);
                    Interval::new(a, a + rng.gen_range(0.5..4.0))
                })
                .collect::<Result<_>>()?;
            let degrees: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..8)).collect();
            let nd = BasisSpecND::new(RectDomain::new(intervals)?, degrees.clone())?;
            for _ in 0..50 {
                let x: Vec<f64> = (0..dim)
                    .map(|axis| {
                        let iv = nd.domain().interval(axis);
                        iv.a() + iv.width() * rng.gen_range(0.0..1.0)
                    })
                    .collect();
                let m: Vec<usize> = degrees.iter().map(|&n| rng.gen_range(0..=n)).collect();
                let mut product = 1.0;
                for axis in 0..dim {
                    product *= glp::eval(&nd.axis_spec(axis), m[axis], x[axis])?;
                }
                let joint = tensor::eval_nd(&nd, &m, &x)?;
                defect = defect.max((joint - product).abs() / (1.0 + product.abs()));
            }
        }
        out.push(result("tensor/separability", defect, 1e-14, cfg));
    }
    {
        let ivx = Interval::new(2.0, 7.0)?;
        let ivy = Interval::new(2.0, 5.0)?;
        let nd = BasisSpecND::new(RectDomain::new(vec![ivx, ivy])?, vec![13, 12])?;
        let rules = vec![
            quadrature::gauss_legendre(ivx, 32)?,
            quadrature::gauss_legendre(ivy, 32)?,
        ];
        out.push(result(
            "tensor/gram-2d",
            tensor::gram_defect_nd(&nd, &rules)?,
            1e-10,
            cfg,
        ));
    }
    {
        let mut rng = rng_for(cfg, 5);
        let iv = Interval::new(3.0, 7.0)?;
        let box_spec = BasisSpecND::new(RectDomain::new(vec![iv, iv])?, vec![8, 8])?;
        let poly_spec = BasisSpecND::new(RectDomain::new(vec![iv, iv])?, vec![5, 7])?;
        let coeffs: Vec<f64> = (0..poly_spec.len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let poly = tensor::CoeffTensor::new(poly_spec.clone(), coeffs)?;
        let rule = quadrature::gauss_legendre(iv, 16)?;
        let projected = tensor::project_nd(
            |x| {
                let grids = vec![vec![x[0]], vec![x[1]]];
                tensor::synthesize_nd(&poly, &grids).unwrap()[0]
            },
            &box_spec,
            &[rule.clone(), rule],
        )?;
        let mut err2 = 0.0;
        for m in tensor::MultiIndexIter::new(&box_spec.shape()) {
            let expect = if m[0] <= 5 && m[1] <= 7 {
                poly.get(&m)?
            } else {
                0.0
            };
            err2 += (projected.get(&m)? - expect).powi(2);
        }
        out.push(result(
            "tensor/round-trip-2d",
            err2.sqrt() / poly.norm(),
            1e-9,
            cfg,
        ));
    }
    {
        // captured energy equals the quadrature norm for in-box polynomials
        let mut rng = rng_for(cfg, 6);
        let ivx = Interval::new(2.0, 5.0)?;
        let ivy = Interval::new(0.0, 1.0)?;
        let nd = BasisSpecND::new(RectDomain::new(vec![ivx, ivy])?, vec![6, 5])?;
        let coeffs: Vec<f64> = (0..nd.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let poly = tensor::CoeffTensor::new(nd.clone(), coeffs)?;
        let rules = vec![
            quadrature::gauss_legendre(ivx, 16)?,
            quadrature::gauss_legendre(ivy, 16)?,
        ];
        let mut norm2 = 0.0;
        for (&x, &wx) in rules[0].nodes().iter().zip(rules[0].weights()) {
            for (&y, &wy) in rules[1].nodes().iter().zip(rules[1].weights()) {
                let grids = vec![vec![x], vec![y]];
                let v = tensor::synthesize_nd(&poly, &grids)?[0];
                norm2 += wx * wy * v * v;
            }
        }
        let defect = (poly.energy() - norm2).abs() / norm2;
        out.push(result("tensor/parseval-poly", defect, 1e-8, cfg));
    }

    // ---- seminorms ----
    {
        let mut rng = rng_for(cfg, 7);
        let s = spec(3.0, 7.0, 30)?;
        let rule = quadrature::gauss_legendre(s.interval(), 40)?;
        let mut defect: f64 = 0.0;
        for _ in 0..10 {
            let c = random_coeffs(&mut rng, s);
            let f = |x: f64| c.synthesize(x).unwrap();
            let l2 = quadrature::inner_product(&f, &f, &rule).sqrt();
            defect = defect.max((seminorms::seminorm(&c, 0)? - l2).abs());
        }
        out.push(result("seminorm/norm-consistency", defect, 1e-10, cfg));
    }
    {
        let mut rng = rng_for(cfg, 8);
        let s = spec(3.0, 7.0, 40)?;
        let mut defect: f64 = f64::NEG_INFINITY;
        for _ in 0..20 {
            let c = random_coeffs(&mut rng, s);
            for k in 0..=15 {
                defect =
                    defect.max(seminorms::seminorm(&c, k)? - seminorms::seminorm(&c, k + 1)?);
            }
        }
        out.push(result("seminorm/monotonicity", defect, 0.0, cfg));
    }
    {
        let mut rng = rng_for(cfg, 9);
        let s = spec(3.0, 7.0, 40)?;
        let mut defect: f64 = f64::NEG_INFINITY;
        for _ in 0..100 {
            let c = random_coeffs(&mut rng, s);
            for k in 0..=3 {
                let check = seminorms::continuity_check(&c, k)?;
                defect = defect
                    .max(check.raise.lhs - check.raise.rhs)
                    .max(check.lower.lhs - check.lower.rhs)
                    .max(check.j3.lhs - check.j3.rhs);
            }
        }
        out.push(result("seminorm/continuity", defect, 0.0, cfg));
    }
    {
        // sup_x |sum c^m W_m| <= sqrt(2/(b-a)) p_1(c) sqrt(sum (m+1)^-2)
        let mut rng = rng_for(cfg, 10);
        let s = spec(3.0, 7.0, 40)?;
        let pts = glp::uniform_points(&s, 1001);
        let tail: f64 = (0..=40)
            .map(|m| 1.0 / ((m as f64 + 1.0) * (m as f64 + 1.0)))
            .sum::<f64>()
            .sqrt();
        let scale = glp::interval_scale(&s);
        let mut defect: f64 = f64::NEG_INFINITY;
        for _ in 0..100 {
            let c = random_coeffs(&mut rng, s);
            let sup = pts
                .iter()
                .map(|&x| c.synthesize(x).unwrap().abs())
                .fold(0.0, f64::max);
            let rhs = scale * seminorms::seminorm(&c, 1)? * tail;
            defect = defect.max(sup - rhs);
        }
        out.push(result("seminorm/pointwise-bound", defect, 0.0, cfg));
    }

    Ok(out)
}
