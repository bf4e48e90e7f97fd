//! Seeded realizations of the named configurations.
//!
//! "General position" is operationalized as: draw integer data uniformly from
//! `[-bound, bound]`, build the configuration, and accept it only if an
//! explicit list of genericity predicates holds. Failed draws are retried
//! from the same random stream, so a seed always yields the same output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::PointConfiguration;
use super::point::{collinear, line_through, meet, on_common_conic, ProjectiveLine, ProjectivePoint};
use super::recognize::{collinear_subsets, is_quasi_star, is_star};
use crate::error::{Error, Result};
use crate::interpolation::{build_condition_matrix, FatPointScheme};
use crate::linalg::rank_fraction_free;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Numerators and denominators are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub max_attempts: usize,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        Self {
            bound: 1000,
            max_attempts: 64,
        }
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    fn new(seed: u64, opts: &GeneratorOptions) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: opts.bound.max(1),
        }
    }

    fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    fn triple(&mut self) -> [i64; 3] {
        loop {
            let t = [self.int(), self.int(), self.int()];
            if t != [0, 0, 0] {
                return t;
            }
        }
    }

    fn rational<T: Scalar>(&mut self) -> T {
        let den = self.rng.gen_range(1..=self.bound);
        T::from_ratio(self.int(), den)
    }

    fn point<T: Scalar>(&mut self) -> ProjectivePoint<T> {
        let [x, y, z] = self.triple();
        ProjectivePoint::from_ints(x, y, z).expect("nonzero triple")
    }

    fn line<T: Scalar>(&mut self) -> ProjectiveLine<T> {
        let [a, b, c] = self.triple();
        ProjectiveLine::from_ints(a, b, c).expect("nonzero triple")
    }

    /// A random point of `line`.
    fn point_on<T: Scalar>(&mut self, line: &ProjectiveLine<T>) -> ProjectivePoint<T> {
        loop {
            if let Ok(p) = meet(line, &self.line()) {
                return p;
            }
        }
    }
}

fn retry<T: Scalar>(
    what: &str,
    seed: u64,
    opts: &GeneratorOptions,
    mut attempt: impl FnMut(&mut Sampler) -> Option<Vec<ProjectivePoint<T>>>,
) -> Result<PointConfiguration<T>> {
    let mut sampler = Sampler::new(seed, opts);
    for _ in 0..opts.max_attempts.max(1) {
        if let Some(points) = attempt(&mut sampler) {
            if let Ok(cfg) = PointConfiguration::new(points) {
                return Ok(cfg.with_label(what));
            }
        }
    }
    Err(Error::Genericity {
        what: what.to_string(),
        attempts: opts.max_attempts,
    })
}

fn distinct<T: PartialEq>(items: &[T]) -> bool {
    items
        .iter()
        .enumerate()
        .all(|(i, a)| items[i + 1..].iter().all(|b| a != b))
}

/// `d` random lines, pairwise distinct and no three concurrent.
fn general_lines<T: Scalar>(s: &mut Sampler, d: usize) -> Option<Vec<ProjectiveLine<T>>> {
    let lines: Vec<ProjectiveLine<T>> = (0..d).map(|_| s.line()).collect();
    if !distinct(&lines) {
        return None;
    }
    for i in 0..d {
        for j in i + 1..d {
            let p = meet(&lines[i], &lines[j]).ok()?;
            if lines
                .iter()
                .enumerate()
                .any(|(k, l)| k != i && k != j && l.contains(&p))
            {
                return None;
            }
        }
    }
    Some(lines)
}

fn pairwise_meets<T: Scalar>(lines: &[ProjectiveLine<T>]) -> Vec<ProjectivePoint<T>> {
    let mut out = Vec::with_capacity(lines.len() * lines.len().saturating_sub(1) / 2);
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            out.push(meet(&lines[i], &lines[j]).expect("distinct lines"));
        }
    }
    out
}

/// All `d(d-1)/2` intersection points of `d` general lines, ordered by line pair.
pub fn gen_star<T: Scalar>(d: usize, seed: u64, opts: &GeneratorOptions) -> Result<PointConfiguration<T>> {
    if d < 2 {
        return Err(Error::Precondition(format!("star needs d >= 2, got {d}")));
    }
    retry(&format!("{d}-star"), seed, opts, |s| {
        let lines = general_lines::<T>(s, d)?;
        let points = pairwise_meets(&lines);
        is_star(&points, d).then_some(points)
    })
}

/// A `d`-star followed by one extra point on each of its lines (in line order).
pub fn gen_quasi_star<T: Scalar>(d: usize, seed: u64, opts: &GeneratorOptions) -> Result<PointConfiguration<T>> {
    if d < 3 {
        return Err(Error::Precondition(format!("quasi-star needs d >= 3, got {d}")));
    }
    retry(&format!("{d}-quasi-star"), seed, opts, |s| {
        let lines = general_lines::<T>(s, d)?;
        let mut points = pairwise_meets(&lines);
        for (i, line) in lines.iter().enumerate() {
            let extra = s.point_on(line);
            let on_other = lines.iter().enumerate().any(|(k, l)| k != i && l.contains(&extra));
            if on_other || points.contains(&extra) {
                return None;
            }
            points.push(extra);
        }
        if collinear(&points[d * (d - 1) / 2..]) {
            return None;
        }
        is_quasi_star(&points, d).then_some(points)
    })
}

/// `k` points on a line followed by one point off it.
pub fn gen_collinear_plus_point<T: Scalar>(
    k: usize,
    seed: u64,
    opts: &GeneratorOptions,
) -> Result<PointConfiguration<T>> {
    if k < 1 {
        return Err(Error::Precondition("collinear-plus-point needs k >= 1".into()));
    }
    retry(&format!("{k}-collinear-plus-point"), seed, opts, |s| {
        let line = s.line::<T>();
        let mut points: Vec<ProjectivePoint<T>> = (0..k).map(|_| s.point_on(&line)).collect();
        let q = s.point::<T>();
        if !distinct(&points) || line.contains(&q) {
            return None;
        }
        points.push(q);
        Some(points)
    })
}

/// `s` points with no three collinear and no six on a conic.
pub fn gen_general_points<T: Scalar>(
    count: usize,
    seed: u64,
    opts: &GeneratorOptions,
) -> Result<PointConfiguration<T>> {
    if count < 1 {
        return Err(Error::Precondition("need at least one point".into()));
    }
    retry(&format!("{count}-general-points"), seed, opts, |s| {
        let points: Vec<ProjectivePoint<T>> = (0..count).map(|_| s.point()).collect();
        if !distinct(&points) || !collinear_subsets(&points, 3).is_empty() {
            return None;
        }
        if count >= 6
            && subsets_of_six(count)
                .any(|six| on_common_conic(&six.iter().map(|&i| points[i].clone()).collect::<Vec<_>>()))
        {
            return None;
        }
        Some(points)
    })
}

fn subsets_of_six(n: usize) -> impl Iterator<Item = [usize; 6]> {
    let mut idx = [0, 1, 2, 3, 4, 5];
    let mut done = n < 6;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx;
        // advance to the next 6-subset in lexicographic order
        let mut i = 6;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - 6 + i {
                idx[i] += 1;
                for j in i + 1..6 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Ten points: the vertices `P1 = L1∩L2, P2 = L2∩L3, P3 = L1∩L3` of three
/// general lines, two further points on each line (`P4, P5` on `L1`, `P6, P7`
/// on `L2`, `P8, P9` on `L3`) and a general point `P10`. Accepted only if the
/// only lines with three or more of the points are `L1, L2, L3`, and no cubic
/// passes through all ten points.
pub fn gen_prop42<T: Scalar>(seed: u64, opts: &GeneratorOptions) -> Result<PointConfiguration<T>> {
    retry("prop42", seed, opts, |s| {
        let lines = general_lines::<T>(s, 3)?;
        let mut points = vec![
            meet(&lines[0], &lines[1]).ok()?,
            meet(&lines[1], &lines[2]).ok()?,
            meet(&lines[0], &lines[2]).ok()?,
        ];
        for line in &lines {
            for _ in 0..2 {
                points.push(s.point_on(line));
            }
        }
        points.push(s.point());
        if !distinct(&points) {
            return None;
        }
        let rich = collinear_subsets(&points, 3);
        if rich.len() != 3 || rich.iter().any(|l| l.indices.len() != 4 || !lines.contains(&l.line)) {
            return None;
        }
        if lines.iter().any(|l| l.contains(&points[9])) {
            return None;
        }
        // alpha(Z) = 4: the 10x10 matrix of cubic conditions is nonsingular
        let cfg = PointConfiguration::new(points.clone()).ok()?;
        let cubic = build_condition_matrix(&FatPointScheme::new(cfg, 1).ok()?, 3);
        (rank_fraction_free(cubic.matrix()) == 10).then_some(points)
    })
}

/// The ten-point configuration built on seven points `[t² : t : 1]` of the
/// conic `xz = y²`: `P8 = L12 ∩ L67`, `P10 = L23 ∩ L45`, `P9 = L1,10 ∩ L67`.
/// Points are returned in the order `P1, …, P10`.
pub fn gen_conic_example<T: Scalar>(seed: u64, opts: &GeneratorOptions) -> Result<PointConfiguration<T>> {
    retry("conic-example", seed, opts, |s| {
        let ts: Vec<T> = (0..7).map(|_| s.rational()).collect();
        if !distinct(&ts) {
            return None;
        }
        let conic_pts: Vec<ProjectivePoint<T>> = ts
            .iter()
            .map(|t| ProjectivePoint::new(t.clone() * t.clone(), t.clone(), T::one()).expect("z = 1"))
            .collect();
        let l = |i: usize, j: usize, pts: &[ProjectivePoint<T>]| line_through(&pts[i - 1], &pts[j - 1]).ok();
        let p8 = meet(&l(1, 2, &conic_pts)?, &l(6, 7, &conic_pts)?).ok()?;
        let p10 = meet(&l(2, 3, &conic_pts)?, &l(4, 5, &conic_pts)?).ok()?;
        let l1_10 = line_through(&conic_pts[0], &p10).ok()?;
        let p9 = meet(&l1_10, &l(6, 7, &conic_pts)?).ok()?;
        let mut points = conic_pts;
        points.extend([p8, p9, p10]);
        if !distinct(&points) {
            return None;
        }
        let on_conic = |p: &ProjectivePoint<T>| {
            let [x, y, z] = p.coords();
            (x.clone() * z.clone() - y.clone() * y.clone()).is_zero()
        };
        if points[7..].iter().any(on_conic) {
            return None;
        }
        // the forced collinearities and nothing else (1-based labels)
        let mut rich: Vec<Vec<usize>> = collinear_subsets(&points, 3)
            .into_iter()
            .map(|sub| sub.indices.iter().map(|i| i + 1).collect())
            .collect();
        rich.sort();
        let expected = vec![
            vec![1, 2, 8],
            vec![1, 9, 10],
            vec![2, 3, 10],
            vec![4, 5, 10],
            vec![6, 7, 8, 9],
        ];
        (rich == expected).then_some(points)
    })
}
