//! Combinatorial recognition of star-like configurations from their
//! incidence structure.

use std::collections::BTreeMap;

use super::point::{collinear, line_through, ProjectiveLine, ProjectivePoint};
use crate::scalar::Scalar;

/// A maximal collinear subset: a line together with the indices of every
/// configuration point on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearSubset<T> {
    pub line: ProjectiveLine<T>,
    pub indices: Vec<usize>,
}

/// All lines carrying at least `min_size` (≥ 2) of the points, sorted by their
/// point indices.
pub fn collinear_subsets<T: Scalar>(points: &[ProjectivePoint<T>], min_size: usize) -> Vec<CollinearSubset<T>> {
    let min_size = min_size.max(2);
    let mut by_first_pair: BTreeMap<Vec<usize>, ProjectiveLine<T>> = BTreeMap::new();
    let mut covered = vec![vec![false; points.len()]; points.len()];
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if covered[i][j] {
                continue;
            }
            let Ok(line) = line_through(&points[i], &points[j]) else {
                continue;
            };
            let on: Vec<usize> = (0..points.len()).filter(|&k| points[k].lies_on(&line)).collect();
            for (a, &u) in on.iter().enumerate() {
                for &v in &on[a + 1..] {
                    covered[u][v] = true;
                }
            }
            if on.len() >= min_size {
                by_first_pair.insert(on, line);
            }
        }
    }
    by_first_pair
        .into_iter()
        .map(|(indices, line)| CollinearSubset { line, indices })
        .collect()
}

/// Searches for `count` candidate lines such that every point lies on at most
/// two of them, handing each complete choice to `accept`.
fn search_families(
    n_points: usize,
    candidates: &[Vec<usize>],
    count: usize,
    accept: &mut dyn FnMut(&[usize], &[u8]) -> bool,
) -> bool {
    fn rec(
        start: usize,
        chosen: &mut Vec<usize>,
        cover: &mut [u8],
        candidates: &[Vec<usize>],
        count: usize,
        accept: &mut dyn FnMut(&[usize], &[u8]) -> bool,
    ) -> bool {
        if chosen.len() == count {
            return accept(chosen, cover);
        }
        for c in start..candidates.len() {
            if candidates.len() - c < count - chosen.len() {
                break;
            }
            if candidates[c].iter().any(|&i| cover[i] >= 2) {
                continue;
            }
            for &i in &candidates[c] {
                cover[i] += 1;
            }
            chosen.push(c);
            if rec(c + 1, chosen, cover, candidates, count, accept) {
                return true;
            }
            chosen.pop();
            for &i in &candidates[c] {
                cover[i] -= 1;
            }
        }
        false
    }
    let mut cover = vec![0u8; n_points];
    rec(0, &mut Vec::new(), &mut cover, candidates, count, accept)
}

/// Whether the points are exactly the pairwise intersections of `d` lines,
/// no three of them concurrent.
pub fn is_star<T: Scalar>(points: &[ProjectivePoint<T>], d: usize) -> bool {
    if d < 2 || points.len() != d * (d - 1) / 2 {
        return false;
    }
    if d == 2 {
        return true;
    }
    let candidates: Vec<Vec<usize>> = collinear_subsets(points, 2)
        .into_iter()
        .filter(|s| s.indices.len() == d - 1)
        .map(|s| s.indices)
        .collect();
    // d lines with d-1 points each give d(d-1) incidences; each point must take
    // exactly two of them.
    search_families(points.len(), &candidates, d, &mut |_, cover| {
        cover.iter().all(|&c| c == 2)
    })
}

/// Whether the points form a `d`-star plus exactly one further point on each
/// of its lines, the further points not collinear.
pub fn is_quasi_star<T: Scalar>(points: &[ProjectivePoint<T>], d: usize) -> bool {
    if d < 3 || points.len() != d * (d + 1) / 2 {
        return false;
    }
    let candidates: Vec<Vec<usize>> = collinear_subsets(points, 3)
        .into_iter()
        .filter(|s| s.indices.len() == d)
        .map(|s| s.indices)
        .collect();
    search_families(points.len(), &candidates, d, &mut |chosen, cover| {
        if cover.contains(&0) {
            return false;
        }
        let extras: Vec<usize> = (0..points.len()).filter(|&i| cover[i] == 1).collect();
        if extras.len() != d {
            return false;
        }
        let one_extra_per_line = chosen
            .iter()
            .all(|&c| candidates[c].iter().filter(|&&i| cover[i] == 1).count() == 1);
        let extra_points: Vec<ProjectivePoint<T>> = extras.iter().map(|&i| points[i].clone()).collect();
        one_extra_per_line && !collinear(&extra_points)
    })
}

/// `Some(k)` when all but one of the `k + 1 ≥ 3` points lie on a line that
/// misses the remaining point.
pub fn collinear_plus_one<T: Scalar>(points: &[ProjectivePoint<T>]) -> Option<usize> {
    let s = points.len();
    if s < 3 || collinear(points) {
        return None;
    }
    collinear_subsets(points, 2)
        .iter()
        .any(|sub| sub.indices.len() == s - 1)
        .then_some(s - 1)
}
