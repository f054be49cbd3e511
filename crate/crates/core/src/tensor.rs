//! Tensor-product bases on rectangles: evaluation, projection, synthesis.
//!
//! Every n-dimensional operation is separable. Projection and synthesis
//! contract one axis at a time (the first axis is contracted and rotated to
//! the back), so the cost stays near `prod(N_i+1) * sum(order_i)` instead of
//! the naive full product.

use crate::domain::BasisSpecND;
use crate::error::{Error, Result};
use crate::glp::{self, fmt_g17};
use crate::quadrature::QuadratureRule;

/// Dense coefficient tensor over a degree box, row-major with the first
/// axis slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTensor {
    spec: BasisSpecND,
    coeffs: Vec<f64>,
}

impl CoeffTensor {
    pub fn new(spec: BasisSpecND, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != spec.len() {
            return Err(Error::argument(format!(
                "coefficient count {} does not match degree box size {}",
                coeffs.len(),
                spec.len()
            )));
        }
        Ok(CoeffTensor { spec, coeffs })
    }

    pub fn zeros(spec: BasisSpecND) -> Self {
        let len = spec.len();
        CoeffTensor {
            spec,
            coeffs: vec![0.0; len],
        }
    }

    pub fn spec(&self) -> &BasisSpecND {
        &self.spec
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn shape(&self) -> Vec<usize> {
        self.spec.shape()
    }

    pub fn flat_index(&self, m: &[usize]) -> Result<usize> {
        let shape = self.spec.shape();
        if m.len() != shape.len() {
            return Err(Error::argument(format!(
                "multi-index rank {} does not match dimension {}",
                m.len(),
                shape.len()
            )));
        }
        let mut idx = 0;
        for (axis, (&mi, &size)) in m.iter().zip(&shape).enumerate() {
            if mi >= size {
                return Err(Error::argument(format!(
                    "index {mi} out of range for axis {axis} (size {size})"
                )));
            }
            idx = idx * size + mi;
        }
        Ok(idx)
    }

    pub fn get(&self, m: &[usize]) -> Result<f64> {
        Ok(self.coeffs[self.flat_index(m)?])
    }

    pub fn set(&mut self, m: &[usize], value: f64) -> Result<()> {
        let idx = self.flat_index(m)?;
        self.coeffs[idx] = value;
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::argument("tensors live on different bases"));
        }
        Ok(CoeffTensor {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Iterates all multi-indices of a shape in row-major order.
pub struct MultiIndexIter {
    shape: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl MultiIndexIter {
    pub fn new(shape: &[usize]) -> Self {
        MultiIndexIter {
            shape: shape.to_vec(),
            current: vec![0; shape.len()],
            done: shape.iter().any(|&s| s == 0),
        }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        for axis in (0..self.shape.len()).rev() {
            self.current[axis] += 1;
            if self.current[axis] < self.shape[axis] {
                return Some(out);
            }
            self.current[axis] = 0;
        }
        self.done = true;
        Some(out)
    }
}

/// W_m(x) = prod_i W_{m_i}(a_i, b_i, x_i).
pub fn eval_nd(spec: &BasisSpecND, m: &[usize], x: &[f64]) -> Result<f64> {
    if m.len() != spec.dim() || x.len() != spec.dim() {
        return Err(Error::argument(format!(
            "expected rank-{} index and point, got {} and {}",
            spec.dim(),
            m.len(),
            x.len()
        )));
    }
    let mut value = 1.0;
    for axis in 0..spec.dim() {
        value *= glp::eval(&spec.axis_spec(axis), m[axis], x[axis])?;
    }
    Ok(value)
}

/// Contracts the first axis of `data` (shape `shape`) against `matrix`
/// (rows x shape[0]) and rotates that axis to the back:
/// out[rest..., r] = sum_j matrix[r][j] data[j, rest...].
fn contract_first_axis(data: &[f64], shape: &[usize], matrix: &[Vec<f64>]) -> Vec<f64> {
    debug_assert!(matrix.iter().all(|row| row.len() == shape[0]));
    let rest: usize = shape[1..].iter().product();
    let rows = matrix.len();
    let mut out = vec![0.0; rest * rows];
    for (r, row) in matrix.iter().enumerate() {
        for (j, &weight) in row.iter().enumerate() {
            if weight == 0.0 {
                continue;
            }
            let src = &data[j * rest..(j + 1) * rest];
            for (k, &v) in src.iter().enumerate() {
                out[k * rows + r] += weight * v;
            }
        }
    }
    out
}

fn check_rules(spec: &BasisSpecND, rules: &[QuadratureRule]) -> Result<()> {
    if rules.len() != spec.dim() {
        return Err(Error::argument(format!(
            "got {} rules for a {}-dimensional basis",
            rules.len(),
            spec.dim()
        )));
    }
    for (axis, rule) in rules.iter().enumerate() {
        let need = spec.max_degrees()[axis] + 1;
        if rule.order() < need {
            return Err(Error::argument(format!(
                "axis {axis}: rule order {} < required {need}",
                rule.order()
            )));
        }
        if rule.interval() != spec.domain().interval(axis) {
            return Err(Error::argument(format!(
                "axis {axis}: rule interval does not match the domain"
            )));
        }
    }
    Ok(())
}

/// Basis samples along one axis: matrix[m][j] = W_m(node_j), optionally
/// times the node weight.
fn axis_basis_matrix(
    spec: &BasisSpecND,
    axis: usize,
    points: &[f64],
    weights: Option<&[f64]>,
) -> Result<Vec<Vec<f64>>> {
    let axis_spec = spec.axis_spec(axis);
    let mut rows = vec![Vec::with_capacity(points.len()); axis_spec.len()];
    for (j, &x) in points.iter().enumerate() {
        let w = weights.map_or(1.0, |ws| ws[j]);
        for (m, v) in glp::eval_all(&axis_spec, x)?.into_iter().enumerate() {
            rows[m].push(v * w);
        }
    }
    Ok(rows)
}

/// Expansion coefficients of `f` over the degree box, by separable tensor
/// quadrature: coefficient at m is the rule-weighted sum of f * W_m.
pub fn project_nd(
    f: impl Fn(&[f64]) -> f64,
    spec: &BasisSpecND,
    rules: &[QuadratureRule],
) -> Result<CoeffTensor> {
    check_rules(spec, rules)?;
    let grid_shape: Vec<usize> = rules.iter().map(|r| r.order()).collect();
    let total: usize = grid_shape.iter().product();
    let mut data = Vec::with_capacity(total);
    let mut point = vec![0.0; spec.dim()];
    for idx in MultiIndexIter::new(&grid_shape) {
        for (axis, &j) in idx.iter().enumerate() {
            point[axis] = rules[axis].nodes()[j];
        }
        data.push(f(&point));
    }
    let mut shape = grid_shape;
    for (axis, rule) in rules.iter().enumerate() {
        let matrix = axis_basis_matrix(spec, axis, rule.nodes(), Some(rule.weights()))?;
        data = contract_first_axis(&data, &shape, &matrix);
        shape.remove(0);
        shape.push(matrix.len());
    }
    CoeffTensor::new(spec.clone(), data)
}

/// Values of the truncated expansion on the tensor grid spanned by
/// `grids[i]` along axis i, row-major with axis 0 slowest.
pub fn synthesize_nd(c: &CoeffTensor, grids: &[Vec<f64>]) -> Result<Vec<f64>> {
    let spec = c.spec();
    if grids.len() != spec.dim() {
        return Err(Error::argument(format!(
            "got {} grids for a {}-dimensional basis",
            grids.len(),
            spec.dim()
        )));
    }
    let mut data = c.coeffs().to_vec();
    let mut shape = spec.shape();
    for (axis, grid) in grids.iter().enumerate() {
        let basis = axis_basis_matrix(spec, axis, grid, None)?;
        // rows = points: matrix[x_j][m] = W_m(x_j)
        let rows = grid.len();
        let cols = shape[0];
        let mut matrix = vec![vec![0.0; cols]; rows];
        for (m, basis_row) in basis.iter().enumerate() {
            for (j, &v) in basis_row.iter().enumerate() {
                matrix[j][m] = v;
            }
        }
        data = contract_first_axis(&data, &shape, &matrix);
        shape.remove(0);
        shape.push(rows);
    }
    Ok(data)
}

/// Max entrywise deviation of the tensor-basis Gram matrix from identity.
pub fn gram_defect_nd(spec: &BasisSpecND, rules: &[QuadratureRule]) -> Result<f64> {
    check_rules(spec, rules)?;
    // per-axis Gram; the nD Gram factors across axes
    let mut axis_grams = Vec::with_capacity(spec.dim());
    for (axis, rule) in rules.iter().enumerate() {
        let basis = axis_basis_matrix(spec, axis, rule.nodes(), None)?;
        let size = basis.len();
        let mut g = vec![vec![0.0; size]; size];
        for n in 0..size {
            for m in 0..size {
                g[n][m] = basis[n]
                    .iter()
                    .zip(&basis[m])
                    .zip(rule.weights())
                    .map(|((&a, &b), &w)| w * a * b)
                    .sum();
            }
        }
        axis_grams.push(g);
    }
    let shape = spec.shape();
    let mut worst: f64 = 0.0;
    for row in MultiIndexIter::new(&shape) {
        for col in MultiIndexIter::new(&shape) {
            let mut g = 1.0;
            for axis in 0..spec.dim() {
                g *= axis_grams[axis][row[axis]][col[axis]];
            }
            let target = if row == col { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    Ok(worst)
}

const TENSOR_MAGIC: &str = "glp-tensor 1";

impl CoeffTensor {
    /// Self-describing text block: dimension, per-axis endpoints and max
    /// degree, then the coefficients row-major, 17 significant digits.
    pub fn write_block<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{TENSOR_MAGIC}")?;
        writeln!(out, "dim {}", self.spec.dim())?;
        for axis in 0..self.spec.dim() {
            let iv = self.spec.domain().interval(axis);
            writeln!(
                out,
                "axis {} {} {}",
                fmt_g17(iv.a()),
                fmt_g17(iv.b()),
                self.spec.max_degrees()[axis]
            )?;
        }
        writeln!(out, "coeffs {}", self.coeffs.len())?;
        for c in &self.coeffs {
            writeln!(out, "{}", fmt_g17(*c))?;
        }
        Ok(())
    }

    /// Parses one block from `cursor`, leaving it positioned after the block.
    pub fn parse_block(cursor: &mut TextCursor) -> Result<Self> {
        let start = cursor.pos();
        let magic = cursor.line("tensor header")?;
        if magic.trim() != TENSOR_MAGIC {
            return Err(Error::format(start, "expected `glp-tensor 1` header"));
        }
        let dim: usize = cursor.keyed_value("dim")?;
        if dim == 0 || dim > 16 {
            return Err(Error::format(cursor.pos(), "dimension must be in 1..=16"));
        }
        let mut intervals = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        for _ in 0..dim {
            let at = cursor.pos();
            let line = cursor.line("axis line")?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some("axis") {
                return Err(Error::format(at, "expected `axis a b N`"));
            }
            let a: f64 = parse_field(parts.next(), at, "axis lower endpoint")?;
            let b: f64 = parse_field(parts.next(), at, "axis upper endpoint")?;
            let n: usize = parse_field(parts.next(), at, "axis max degree")?;
            intervals.push(
                crate::domain::Interval::new(a, b)
                    .map_err(|e| Error::format(at, e.to_string()))?,
            );
            degrees.push(n);
        }
        let count: usize = cursor.keyed_value("coeffs")?;
        let spec = BasisSpecND::new(
            crate::domain::RectDomain::new(intervals)
                .map_err(|e| Error::format(start, e.to_string()))?,
            degrees,
        )
        .map_err(|e| Error::format(start, e.to_string()))?;
        if count != spec.len() {
            return Err(Error::format(
                cursor.pos(),
                format!("coeff count {count} does not match degree box {}", spec.len()),
            ));
        }
        let mut coeffs = Vec::with_capacity(count);
        for _ in 0..count {
            let at = cursor.pos();
            let line = cursor.line("coefficient")?;
            let v: f64 = line
                .trim()
                .parse()
                .map_err(|_| Error::format(at, format!("bad coefficient `{}`", line.trim())))?;
            coeffs.push(v);
        }
        CoeffTensor::new(spec, coeffs)
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut cursor = TextCursor::new(input);
        let tensor = Self::parse_block(&mut cursor)?;
        cursor.expect_end()?;
        Ok(tensor)
    }
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    offset: usize,
    what: &str,
) -> Result<T> {
    field
        .ok_or_else(|| Error::format(offset, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::format(offset, format!("bad {what}")))
}

/// Line-oriented reader that tracks byte offsets for error reporting.
/// Blank lines and lines starting with `#` are skipped.
pub struct TextCursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> TextCursor<'a> {
    pub fn new(input: &'a str) -> Self {
        TextCursor { input, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_blank();
        self.pos >= self.input.len()
    }

    fn skip_blank(&mut self) {
        loop {
            let rest = &self.input[self.pos..];
            let line_end = rest.find('\n').map_or(rest.len(), |i| i + 1);
            let line = &rest[..line_end];
            let trimmed = line.trim();
            if (trimmed.is_empty() || trimmed.starts_with('#')) && !rest.is_empty() {
                self.pos += line_end;
            } else {
                break;
            }
        }
    }

    /// Next contentful line.
    pub fn line(&mut self, what: &str) -> Result<&'a str> {
        self.skip_blank();
        if self.pos >= self.input.len() {
            return Err(Error::format(self.pos, format!("unexpected end, wanted {what}")));
        }
        let rest = &self.input[self.pos..];
        let line_end = rest.find('\n').map_or(rest.len(), |i| i + 1);
        let line = rest[..line_end].trim_end_matches(['\n', '\r']);
        self.pos += line_end;
        Ok(line)
    }

    /// Parses a `key value` line, checking the key.
    pub fn keyed_value<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let at = self.pos;
        let line = self.line(key)?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(Error::format(at, format!("expected `{key} <value>`")));
        }
        parse_field(parts.next(), at, key)
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if !self.at_end() {
            return Err(Error::format(self.pos, "trailing content"));
        }
        Ok(())
    }
}
