use super::digamma::{digamma_positive, DigammaTable};
use super::knn::{kth_neighbour_distances, strict_counts, NeighbourSearch};
use crate::error::{Error, Result};
use crate::points::Points;

/// KSG (algorithm 1) mutual information estimate in nats.
///
/// With `eps_i` the max-norm distance from `(x_i, y_i)` to its `k`-th
/// neighbour in the joint space, and `n_x(i)`, `n_y(i)` the number of other
/// points strictly within `eps_i` in each marginal space:
///
/// `I = psi(k) + psi(N) - mean_i [psi(n_x(i) + 1) + psi(n_y(i) + 1)]`
pub fn ksg_mutual_information(x: &Points, y: &Points, k: usize) -> Result<f64> {
    ksg_mutual_information_with(x, y, k, NeighbourSearch::default())
}

pub fn ksg_mutual_information_with(
    x: &Points,
    y: &Points,
    k: usize,
    search: NeighbourSearch,
) -> Result<f64> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::Config(format!(
            "x and y must have equal length, got {n} and {}",
            y.len()
        )));
    }
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if k >= n {
        return Err(Error::Config(format!(
            "k = {k} must be smaller than the sample size {n}"
        )));
    }

    let joint = x.concat(y)?;
    let eps = kth_neighbour_distances(&joint, k, search);
    if let Some(i) = eps.iter().position(|e| *e <= 0.0) {
        return Err(Error::DegenerateSample(format!(
            "joint point {i} has {k} coincident neighbours"
        )));
    }
    let nx = strict_counts(x, &eps, search);
    let ny = strict_counts(y, &eps, search);

    let table = DigammaTable::new(n + 1);
    let marginal: f64 = nx
        .iter()
        .zip(&ny)
        .map(|(&a, &b)| table.get(a + 1) + table.get(b + 1))
        .sum::<f64>()
        / n as f64;
    Ok(digamma_positive(k as f64) + digamma_positive(n as f64) - marginal)
}
