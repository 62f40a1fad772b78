use crate::error::{Error, Result};
use crate::fmt::g15;

/// Sampled function on strictly increasing nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::Grid(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::Grid(format!(
                "nodes not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(GridFunction { nodes, values })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(nodes: Vec<f64>, f: F) -> Result<Self> {
        let values = nodes.iter().map(|&t| f(t)).collect();
        Self::new(nodes, values)
    }

    /// Uniform nodes -L, -L+h, ..., L (both ends included).
    pub fn uniform_nodes(halfwidth: f64, step: f64) -> Vec<f64> {
        let n = (2.0 * halfwidth / step).round() as i64;
        (0..=n).map(|j| -halfwidth + j as f64 * step).collect()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.values.iter().copied())
    }

    /// Local Lagrange interpolation through up to six neighbouring nodes;
    /// constant extension outside the node range.
    pub fn interpolate(&self, t: f64) -> f64 {
        let n = self.nodes.len();
        if n == 1 || t <= self.nodes[0] {
            return self.values[0];
        }
        if t >= self.nodes[n - 1] {
            return self.values[n - 1];
        }
        let cell = self.nodes.partition_point(|&x| x <= t) - 1;
        let width = n.min(6);
        let start = cell.saturating_sub(width / 2 - 1).min(n - width);
        lagrange(
            &self.nodes[start..start + width],
            &self.values[start..start + width],
            t,
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (t, v) in self.iter() {
            out.push_str(&g15(t));
            out.push(',');
            out.push_str(&g15(v));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let get = |k: usize| -> Result<f64> {
                rec.get(k)
                    .ok_or_else(|| Error::Parse(format!("row {i}: missing column {k}")))?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("row {i}: {e}")))
            };
            nodes.push(get(0)?);
            values.push(get(1)?);
        }
        Self::new(nodes, values)
    }
}

pub(crate) fn lagrange(xs: &[f64], ys: &[f64], t: f64) -> f64 {
    xs.iter()
        .enumerate()
        .map(|(j, &xj)| {
            let basis: f64 = xs
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| (t - xk) / (xj - xk))
                .product();
            ys[j] * basis
        })
        .sum()
}
