//! Independent oracles and shared generators for the integration suites.
//!
//! The oracles never call the library's elimination, derivative or detector code:
//! ranks come from minor bordering with exact determinants, multiplicity
//! conditions from a Taylor expansion in an affine chart.

#![allow(dead_code)]

pub mod suites;

use fatpoint::bezout::{CurveClass, DivisorClass};
use fatpoint::geometry::{PointConfiguration, ProjectivePoint};
use fatpoint::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub type Config = PointConfiguration<Rational>;

pub fn config(points: &[[i64; 3]]) -> Option<Config> {
    let pts = points
        .iter()
        .map(|&[x, y, z]| ProjectivePoint::from_ints(x, y, z).ok())
        .collect::<Option<Vec<_>>>()?;
    PointConfiguration::new(pts).ok()
}

/// Configurations of `1..=max_points` distinct points with coordinates in
/// `[-bound, bound]`.
pub fn small_config(max_points: usize, bound: i64) -> impl Strategy<Value = (Vec<[i64; 3]>, Config)> {
    prop::collection::vec(prop::array::uniform3(-bound..=bound), 1..=max_points)
        .prop_filter_map("zero or repeated points", |pts| config(&pts).map(|c| (pts, c)))
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Exponents of the degree-`d` monomials, in the library's column order.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Conditions for vanishing to order `m` at the integer point `p`: the
/// coefficients of `s^a t^b` (`a + b < m`) in `F(p + s·e_u + t·e_v)`, where
/// `e_u, e_v` are the unit vectors other than a chart coordinate with
/// `p_c ≠ 0`.
pub fn taylor_rows(p: [i64; 3], m: usize, d: usize) -> Vec<Vec<i128>> {
    let c = p.iter().position(|&v| v != 0).expect("nonzero point");
    let (u, v) = match c {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let pow = |base: i64, e: usize| (0..e).fold(1i128, |acc, _| acc * base as i128);
    let mut rows = Vec::new();
    for a in 0..m {
        for b in 0..m - a {
            rows.push(
                monomials(d)
                    .iter()
                    .map(|e| {
                        if e[u] < a || e[v] < b {
                            return 0;
                        }
                        binomial(e[u], a)
                            * pow(p[u], e[u] - a)
                            * binomial(e[v], b)
                            * pow(p[v], e[v] - b)
                            * pow(p[c], e[c])
                    })
                    .collect(),
            );
        }
    }
    rows
}

pub fn taylor_matrix(points: &[[i64; 3]], m: usize, d: usize) -> Vec<Vec<i128>> {
    points.iter().flat_map(|&p| taylor_rows(p, m, d)).collect()
}

/// Determinant of the square submatrix on `rows` × `cols` by Laplace
/// expansion over column subsets, in checked `i128`.
pub fn minor(a: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    let k = rows.len();
    assert_eq!(k, cols.len());
    if k == 0 {
        return 1;
    }
    // dp[S] = det of the first |S| chosen rows against the columns in S
    let mut dp = vec![0i128; 1 << k];
    dp[0] = 1;
    for s in 1usize..(1 << k) {
        let r = rows[s.count_ones() as usize - 1];
        let mut acc = 0i128;
        for j in 0..k {
            if s & (1 << j) == 0 {
                continue;
            }
            // sign from the position of column j among the chosen columns
            let higher = (s >> (j + 1)).count_ones();
            let sign = if higher % 2 == 0 { 1 } else { -1 };
            let term = a[r][cols[j]]
                .checked_mul(dp[s & !(1 << j)])
                .and_then(|t| t.checked_mul(sign))
                .expect("determinant overflow");
            acc = acc.checked_add(term).expect("determinant overflow");
        }
        dp[s] = acc;
    }
    dp[(1 << k) - 1]
}

/// Rank by minor bordering: grow a nonzero minor one row and column at a
/// time until no bordered minor is nonzero.
pub fn rank_by_minors(a: &[Vec<i128>]) -> usize {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    'grow: loop {
        for r in (0..n_rows).filter(|r| !rows.contains(r)) {
            for c in (0..n_cols).filter(|c| !cols.contains(c)) {
                let mut rr = rows.clone();
                rr.push(r);
                let mut cc = cols.clone();
                cc.push(c);
                if minor(a, &rr, &cc) != 0 {
                    rows = rr;
                    cols = cc;
                    continue 'grow;
                }
            }
        }
        return rows.len();
    }
}

/// `dim I^{(m)}_d` by brute force.
pub fn brute_force_dimension(points: &[[i64; 3]], m: usize, d: usize) -> usize {
    let a = taylor_matrix(points, m, d);
    monomials(d).len() - rank_by_minors(&a)
}

/// Whether the integer coefficient vector vanishes to order `m` at every
/// point, checked through the Taylor conditions.
pub fn form_vanishes(coeffs: &[BigInt], points: &[[BigInt; 3]], m: usize, d: usize) -> bool {
    let mons = monomials(d);
    points.iter().all(|p| {
        let c = p.iter().position(|v| !v.is_zero()).expect("nonzero point");
        let (u, v) = match c {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let pow = |base: &BigInt, e: usize| (0..e).fold(BigInt::one(), |acc, _| acc * base);
        (0..m).all(|a| {
            (0..m - a).all(|b| {
                let value: BigInt = mons
                    .iter()
                    .zip(coeffs)
                    .filter(|(e, _)| e[u] >= a && e[v] >= b)
                    .map(|(e, f)| {
                        f * BigInt::from(binomial(e[u], a))
                            * pow(&p[u], e[u] - a)
                            * BigInt::from(binomial(e[v], b))
                            * pow(&p[v], e[v] - b)
                            * pow(&p[c], e[c])
                    })
                    .sum();
                value.is_zero()
            })
        })
    })
}

fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Collinearity of the whole set from all 3×3 determinants.
pub fn collinear_oracle(points: &[[BigInt; 3]]) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if !det3(&points[i], &points[j], &points[k]).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn big_det(m: &[Vec<BigInt>]) -> BigInt {
    let k = m.len();
    let mut dp = vec![BigInt::zero(); 1 << k];
    dp[0] = BigInt::one();
    for s in 1usize..(1 << k) {
        let r = s.count_ones() as usize - 1;
        let mut acc = BigInt::zero();
        for j in 0..k {
            if s & (1 << j) == 0 || dp[s & !(1 << j)].is_zero() {
                continue;
            }
            let term = &m[r][j] * &dp[s & !(1 << j)];
            if (s >> (j + 1)).count_ones() % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        dp[s] = acc;
    }
    dp[(1 << k) - 1].clone()
}

/// A common conic exists iff every 6×6 minor of the quadratic evaluation
/// matrix vanishes.
pub fn conic_oracle(points: &[[BigInt; 3]]) -> bool {
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|[x, y, z]| vec![x * x, x * y, x * z, y * y, y * z, z * z])
        .collect();
    let n = rows.len();
    if n < 6 {
        return true;
    }
    let mut idx = [0usize; 6];
    fn rec(start: usize, depth: usize, n: usize, idx: &mut [usize; 6], rows: &[Vec<BigInt>]) -> bool {
        if depth == 6 {
            let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| rows[i].clone()).collect();
            return big_det(&sub).is_zero();
        }
        for i in start..n {
            idx[depth] = i;
            if !rec(i + 1, depth + 1, n, idx, rows) {
                return false;
            }
        }
        true
    }
    rec(0, 0, n, &mut idx, &rows)
}

pub fn integer_points(cfg: &Config) -> Vec<[BigInt; 3]> {
    cfg.points().iter().map(|p| p.integer_coords()).collect()
}

/// Strict increase, subadditivity, Chudnovsky and the `n ≤ m` bound, stated
/// directly on a candidate α-list.
pub fn alpha_inequalities(values: &[usize]) -> Result<(), String> {
    let a = |m: usize| values[m - 1] as i128;
    let n = values.len();
    for m in 1..n {
        if a(m + 1) < a(m) + 1 {
            return Err(format!("α({}) < α({m}) + 1", m + 1));
        }
    }
    for p in 1..=n {
        for q in 1..=n {
            if p + q <= n && a(p + q) > a(p) + a(q) {
                return Err(format!("α({}) > α({p}) + α({q})", p + q));
            }
        }
    }
    for m in 1..=n {
        // (α(1)+1)/2 ≤ α(m)/m
        if (a(1) + 1) * m as i128 > 2 * a(m) {
            return Err(format!("Chudnovsky fails at m = {m}"));
        }
        for k in 1..=m {
            if (a(k) + 1) * m as i128 > a(m) * (k as i128 + 1) {
                return Err(format!("(α({k})+1)/({k}+1) > α({m})/{m}"));
            }
        }
    }
    Ok(())
}

/// A realizable Bezout input: lines through pairs of points (with their true
/// incidences), and `D = Σ b_i L_i + R` with `R` a union of `r` further
/// general lines, `ρ_j` of them through `P_j`.
pub fn realizable_bezout(
    points: &[[i64; 3]],
    pairs: &[(usize, usize)],
    coeffs: &[i64],
    spare: i64,
    through: &[i64],
) -> Option<(DivisorClass, Vec<CurveClass>)> {
    let cfg = config(points)?;
    let ints = integer_points(&cfg);
    let s = ints.len();
    let mut lines: Vec<Vec<i64>> = Vec::new();
    for &(i, j) in pairs {
        let (i, j) = (i % s, j % s);
        if i == j {
            continue;
        }
        let mults: Vec<i64> = (0..s)
            .map(|k| i64::from(det3(&ints[i], &ints[j], &ints[k]).is_zero()))
            .collect();
        if !lines.contains(&mults) {
            lines.push(mults);
        }
    }
    let curves: Vec<CurveClass> = lines
        .iter()
        .enumerate()
        .map(|(i, m)| CurveClass::new(1, m.clone(), Some(format!("L{i}"))).expect("valid line"))
        .collect();
    let rho: Vec<i64> = (0..s).map(|j| through.get(j).copied().unwrap_or(0)).collect();
    let r = spare.max(rho.iter().sum());
    let mut d = DivisorClass::new(r, rho);
    for (c, &b) in curves.iter().zip(coeffs.iter().cycle()) {
        d.degree += b * c.degree;
        for (m, cm) in d.mults.iter_mut().zip(&c.mults) {
            *m += b * cm;
        }
    }
    Some((d, curves))
}
