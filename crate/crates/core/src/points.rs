//! Flat storage for samples of fixed-dimension real vectors.

use crate::error::{Error, Result};

/// `len` points of dimension `dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    data: Vec<f64>,
    dim: usize,
}

impl Points {
    pub fn from_flat(data: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("point dimension must be positive".into()));
        }
        if data.len() % dim != 0 {
            return Err(Error::Config(format!(
                "flat buffer of length {} is not a multiple of dimension {dim}",
                data.len()
            )));
        }
        Ok(Self { data, dim })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(1, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Config(format!(
                    "row {i} has dimension {}, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(data, dim)
    }

    /// One-dimensional points.
    pub fn scalar(values: Vec<f64>) -> Self {
        Self {
            data: values,
            dim: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Keeps only the first `dim` coordinates of every point.
    pub fn leading_coordinates(&self, dim: usize) -> Result<Self> {
        if dim == 0 || dim > self.dim {
            return Err(Error::Config(format!(
                "cannot take {dim} leading coordinates of {}-dimensional points",
                self.dim
            )));
        }
        let data = self.iter().flat_map(|p| p[..dim].iter().copied()).collect();
        Ok(Self { data, dim })
    }

    /// Concatenates coordinates point-by-point.
    pub fn concat(&self, other: &Points) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Config(format!(
                "cannot join samples of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        let dim = self.dim + other.dim;
        let mut data = Vec::with_capacity(self.len() * dim);
        for (a, b) in self.iter().zip(other.iter()) {
            data.extend_from_slice(a);
            data.extend_from_slice(b);
        }
        Ok(Self { data, dim })
    }
}

/// Chebyshev distance.
#[inline]
pub fn max_norm_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}
