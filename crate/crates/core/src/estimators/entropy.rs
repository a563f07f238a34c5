use super::digamma::digamma_positive;
use super::knn::{kth_neighbour_distances, NeighbourSearch};
use crate::error::{Error, Result};
use crate::points::Points;

/// Kozachenko–Leonenko differential entropy in nats, max-norm version:
///
/// `H = psi(N) - psi(k) + d ln 2 + (d / N) sum_i ln eps_i`
///
/// where `eps_i` is the distance from point `i` to its `k`-th neighbour.
pub fn kl_entropy(sample: &Points, k: usize) -> Result<f64> {
    kl_entropy_with(sample, k, NeighbourSearch::default())
}

pub fn kl_entropy_with(sample: &Points, k: usize, search: NeighbourSearch) -> Result<f64> {
    let n = sample.len();
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if n <= k {
        return Err(Error::Config(format!(
            "entropy estimation needs more than k = {k} points, got {n}"
        )));
    }
    let eps = kth_neighbour_distances(sample, k, search);
    if let Some(i) = eps.iter().position(|e| *e <= 0.0) {
        return Err(Error::DegenerateSample(format!(
            "point {i} has {k} coincident neighbours"
        )));
    }
    let d = sample.dim() as f64;
    let mean_log = eps.iter().map(|e| e.ln()).sum::<f64>() / n as f64;
    Ok(digamma_positive(n as f64) - digamma_positive(k as f64)
        + d * std::f64::consts::LN_2
        + d * mean_log)
}
