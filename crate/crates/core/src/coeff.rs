//! Expansion coefficients of a function in one basis family.

use crate::domain::BasisSpec1D;
use crate::error::{Error, Result};
use crate::glp;

/// Coefficients f^m, m = 0..=max_degree, of a 1D expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    spec: BasisSpec1D,
    coeffs: Vec<f64>,
}

impl CoeffVector {
    pub fn new(spec: BasisSpec1D, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != spec.len() {
            return Err(Error::argument(format!(
                "coefficient count {} does not match basis size {}",
                coeffs.len(),
                spec.len()
            )));
        }
        Ok(CoeffVector { spec, coeffs })
    }

    pub fn zeros(spec: BasisSpec1D) -> Self {
        CoeffVector {
            spec,
            coeffs: vec![0.0; spec.len()],
        }
    }

    /// The unit vector e_m.
    pub fn unit(spec: BasisSpec1D, m: usize) -> Result<Self> {
        if m >= spec.len() {
            return Err(Error::argument(format!(
                "unit index {m} outside basis of size {}",
                spec.len()
            )));
        }
        let mut coeffs = vec![0.0; spec.len()];
        coeffs[m] = 1.0;
        Ok(CoeffVector { spec, coeffs })
    }

    pub fn spec(&self) -> &BasisSpec1D {
        &self.spec
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// l2 norm of the coefficient sequence.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        CoeffVector {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::argument(
                "coefficient vectors live on different bases",
            ));
        }
        Ok(CoeffVector {
            spec: self.spec,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Value of the expansion sum_m f^m W_m(x).
    pub fn synthesize(&self, x: f64) -> Result<f64> {
        let basis = glp::eval_all(&self.spec, x)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&basis)
            .map(|(&c, &w)| c * w)
            .sum())
    }

    pub fn synthesize_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.synthesize(x)).collect()
    }
}
