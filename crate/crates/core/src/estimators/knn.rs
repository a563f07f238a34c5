//! Max-norm neighbour queries: k-th neighbour distance and strict-radius
//! counts, each with a brute-force and a kd-tree implementation.
//!
//! Both implementations measure distance with the same function, so they
//! return bit-identical results.

use crate::points::{max_norm_distance, Points};

const LEAF_SIZE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighbourSearch {
    /// O(N^2) scan.
    BruteForce,
    /// kd-tree with bounding-box pruning.
    #[default]
    KdTree,
}

/// Distance from every point to its `k`-th nearest other point.
pub fn kth_neighbour_distances(points: &Points, k: usize, search: NeighbourSearch) -> Vec<f64> {
    match search {
        NeighbourSearch::BruteForce => (0..points.len()).map(|i| brute_kth(points, i, k)).collect(),
        NeighbourSearch::KdTree => {
            let tree = KdTree::build(points);
            let mut best = Vec::with_capacity(k);
            (0..points.len())
                .map(|i| tree.kth_distance(i, k, &mut best))
                .collect()
        }
    }
}

/// For each point, the number of other points strictly closer than `radii[i]`.
pub fn strict_counts(points: &Points, radii: &[f64], search: NeighbourSearch) -> Vec<usize> {
    debug_assert_eq!(points.len(), radii.len());
    match search {
        NeighbourSearch::BruteForce => (0..points.len())
            .map(|i| {
                let q = points.point(i);
                (0..points.len())
                    .filter(|&j| j != i && max_norm_distance(q, points.point(j)) < radii[i])
                    .count()
            })
            .collect(),
        NeighbourSearch::KdTree => {
            let tree = KdTree::build(points);
            (0..points.len())
                .map(|i| tree.count_within(i, radii[i]))
                .collect()
        }
    }
}

fn brute_kth(points: &Points, i: usize, k: usize) -> f64 {
    let q = points.point(i);
    let mut best: Vec<f64> = Vec::with_capacity(k + 1);
    for j in 0..points.len() {
        if j == i {
            continue;
        }
        push_candidate(&mut best, k, max_norm_distance(q, points.point(j)));
    }
    best[k - 1]
}

/// Keeps `best` as the sorted `k` smallest distances seen so far.
#[inline]
fn push_candidate(best: &mut Vec<f64>, k: usize, d: f64) {
    if best.len() == k {
        if d >= best[k - 1] {
            return;
        }
        best.pop();
    }
    let pos = best.partition_point(|&b| b <= d);
    best.insert(pos, d);
}

struct Node {
    start: usize,
    end: usize,
    /// `[lo_0, hi_0, lo_1, hi_1, ...]`
    bounds: Vec<f64>,
    children: Option<(usize, usize)>,
}

pub(crate) struct KdTree<'a> {
    points: &'a Points,
    order: Vec<usize>,
    nodes: Vec<Node>,
}

impl<'a> KdTree<'a> {
    pub fn build(points: &'a Points) -> Self {
        let mut tree = Self {
            points,
            order: (0..points.len()).collect(),
            nodes: Vec::new(),
        };
        if !points.is_empty() {
            tree.build_node(0, points.len());
        }
        tree
    }

    fn build_node(&mut self, start: usize, end: usize) -> usize {
        let dim = self.points.dim();
        let mut bounds = vec![0.0; 2 * dim];
        for d in 0..dim {
            let (lo, hi) = self.order[start..end].iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), &i| {
                    let v = self.points.point(i)[d];
                    (lo.min(v), hi.max(v))
                },
            );
            bounds[2 * d] = lo;
            bounds[2 * d + 1] = hi;
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            start,
            end,
            bounds,
            children: None,
        });
        if end - start > LEAF_SIZE {
            let bounds = &self.nodes[id].bounds;
            let split_dim = (0..dim)
                .max_by(|&a, &b| {
                    let wa = bounds[2 * a + 1] - bounds[2 * a];
                    let wb = bounds[2 * b + 1] - bounds[2 * b];
                    wa.total_cmp(&wb)
                })
                .unwrap_or(0);
            let mid = start + (end - start) / 2;
            let points = self.points;
            self.order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
                points.point(a)[split_dim].total_cmp(&points.point(b)[split_dim])
            });
            let left = self.build_node(start, mid);
            let right = self.build_node(mid, end);
            self.nodes[id].children = Some((left, right));
        }
        id
    }

    /// Max-norm distance from `q` to the node's bounding box.
    #[inline]
    fn box_distance(node: &Node, q: &[f64]) -> f64 {
        q.iter().enumerate().fold(0.0_f64, |acc, (d, &v)| {
            let lo = node.bounds[2 * d];
            let hi = node.bounds[2 * d + 1];
            acc.max(lo - v).max(v - hi)
        })
    }

    /// Largest max-norm distance from `q` to any corner of the box.
    #[inline]
    fn box_far_distance(node: &Node, q: &[f64]) -> f64 {
        q.iter().enumerate().fold(0.0_f64, |acc, (d, &v)| {
            let lo = node.bounds[2 * d];
            let hi = node.bounds[2 * d + 1];
            acc.max((v - lo).abs()).max((hi - v).abs())
        })
    }

    pub fn kth_distance(&self, i: usize, k: usize, best: &mut Vec<f64>) -> f64 {
        best.clear();
        let q = self.points.point(i);
        self.knn_visit(0, i, q, k, best);
        best[k - 1]
    }

    fn knn_visit(&self, id: usize, exclude: usize, q: &[f64], k: usize, best: &mut Vec<f64>) {
        let node = &self.nodes[id];
        match node.children {
            None => {
                for &j in &self.order[node.start..node.end] {
                    if j != exclude {
                        push_candidate(best, k, max_norm_distance(q, self.points.point(j)));
                    }
                }
            }
            Some((l, r)) => {
                let dl = Self::box_distance(&self.nodes[l], q);
                let dr = Self::box_distance(&self.nodes[r], q);
                let (first, d_first, second, d_second) = if dl <= dr {
                    (l, dl, r, dr)
                } else {
                    (r, dr, l, dl)
                };
                if best.len() < k || d_first < best[k - 1] {
                    self.knn_visit(first, exclude, q, k, best);
                }
                if best.len() < k || d_second < best[k - 1] {
                    self.knn_visit(second, exclude, q, k, best);
                }
            }
        }
    }

    pub fn count_within(&self, i: usize, radius: f64) -> usize {
        let q = self.points.point(i);
        // the query point itself is always inside a box it belongs to
        let mut count = 0usize;
        self.count_visit(0, i, q, radius, &mut count);
        count
    }

    fn count_visit(&self, id: usize, exclude: usize, q: &[f64], radius: f64, count: &mut usize) {
        let node = &self.nodes[id];
        if Self::box_distance(node, q) >= radius {
            return;
        }
        if Self::box_far_distance(node, q) < radius {
            // every point in the box is strictly inside; the corner bound
            // dominates each point's distance
            let contains_self = self.order[node.start..node.end].contains(&exclude);
            *count += node.end - node.start - usize::from(contains_self);
            return;
        }
        match node.children {
            None => {
                for &j in &self.order[node.start..node.end] {
                    if j != exclude && max_norm_distance(q, self.points.point(j)) < radius {
                        *count += 1;
                    }
                }
            }
            Some((l, r)) => {
                self.count_visit(l, exclude, q, radius, count);
                self.count_visit(r, exclude, q, radius, count);
            }
        }
    }
}
