//! Independent oracles shared by the integration tests. Nothing here calls
//! into the solver, projection or sorting code it is used to check.
#![allow(dead_code)]

use ggi_bandit::env::{stream_rng, SimRng};
use rand::Rng;

pub fn rng(seed: u64) -> SimRng {
    stream_rng(seed, 0xdead_beef)
}

pub fn uniform_vec(rng: &mut SimRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

/// Non-increasing weights in `[0, 1]`.
pub fn random_weights(rng: &mut SimRng, d: usize) -> Vec<f64> {
    let mut w = uniform_vec(rng, d, 0.0, 1.0);
    w.sort_by(|a, b| b.partial_cmp(a).unwrap());
    w
}

/// Uniform point of the simplex via normalized exponentials.
pub fn random_simplex(rng: &mut SimRng, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// `max_π wᵀx_π` by enumerating every permutation.
pub fn max_over_permutations(w: &[f64], x: &[f64]) -> f64 {
    fn rec(w: &[f64], x: &[f64], used: &mut Vec<bool>, depth: usize, acc: f64, best: &mut f64) {
        if depth == x.len() {
            *best = best.max(acc);
            return;
        }
        for i in 0..x.len() {
            if !used[i] {
                used[i] = true;
                rec(w, x, used, depth + 1, acc + w[depth] * x[i], best);
                used[i] = false;
            }
        }
    }
    let mut best = f64::NEG_INFINITY;
    rec(w, x, &mut vec![false; x.len()], 0, 0.0, &mut best);
    best
}

/// GGI by the plain definition: selection of the running maximum.
pub fn ggi_naive(w: &[f64], x: &[f64]) -> f64 {
    let mut rest = x.to_vec();
    let mut total = 0.0;
    for wd in w {
        let (i, v) = rest
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |b, (i, v)| if v > b.1 { (i, v) } else { b });
        total += wd * v;
        rest.remove(i);
    }
    total
}

/// `μα` for column-major `cols` (one vector per arm).
pub fn mix(cols: &[Vec<f64>], alpha: &[f64]) -> Vec<f64> {
    let d = cols[0].len();
    (0..d).map(|j| cols.iter().zip(alpha).map(|(c, a)| c[j] * a).sum()).collect()
}

/// Visits every point `p` of the grid `{p ∈ Δ_K : p_k ∈ step·ℕ}` for `K ≤ 3`.
pub fn for_each_simplex_grid(k: usize, step: f64, mut f: impl FnMut(&[f64])) {
    let n = (1.0 / step).round() as usize;
    match k {
        1 => f(&[1.0]),
        2 => {
            for i in 0..=n {
                let a = i as f64 / n as f64;
                f(&[a, 1.0 - a]);
            }
        }
        3 => {
            for i in 0..=n {
                for j in 0..=(n - i) {
                    let a = i as f64 / n as f64;
                    let b = j as f64 / n as f64;
                    f(&[a, b, (1.0 - a - b).max(0.0)]);
                }
            }
        }
        _ => panic!("grid oracle supports K ≤ 3"),
    }
}

/// Minimum of `obj` over the truncated simplex `β/K + (1−β)Δ_K` on a grid.
pub fn grid_min_truncated(k: usize, beta: f64, step: f64, obj: impl Fn(&[f64]) -> f64) -> (f64, Vec<f64>) {
    let floor = beta / k as f64;
    let mut best = (f64::INFINITY, vec![]);
    let mut alpha = vec![0.0; k];
    for_each_simplex_grid(k, step, |p| {
        for (a, pk) in alpha.iter_mut().zip(p) {
            *a = floor + (1.0 - beta) * pk;
        }
        let v = obj(&alpha);
        if v < best.0 {
            best = (v, alpha.clone());
        }
    });
    best
}

/// Nearest point of `Δ_K^β` to `x` (`K ≤ 3`) by grid search with spacing
/// `step` in the simplex parameterization. For `K = 3` a `100·step` pass
/// locates the basin and a `step` pass searches a window around it; the
/// objective is a strictly convex quadratic, so the basin is unique.
pub fn grid_projection(x: &[f64], beta: f64, step: f64) -> Vec<f64> {
    let k = x.len();
    let floor = beta / k as f64;
    let scale = 1.0 - beta;
    let to_alpha = |p: &[f64]| -> Vec<f64> { p.iter().map(|pk| floor + scale * pk).collect() };
    let dist = |a: &[f64]| -> f64 { a.iter().zip(x).map(|(u, v)| (u - v).powi(2)).sum() };
    if k < 3 || scale == 0.0 {
        let a = grid_min_truncated(k, beta, step, dist).1;
        return a;
    }
    let (_, coarse) = grid_min_truncated(3, beta, step * 100.0, dist);
    let centre: Vec<f64> = coarse.iter().map(|a| (a - floor) / scale).collect();
    let n = (1.0 / step).round() as i64;
    let c0 = (centre[0] * n as f64).round() as i64;
    let c1 = (centre[1] * n as f64).round() as i64;
    let radius = 300;
    let mut best = (f64::INFINITY, vec![]);
    for i in (c0 - radius).max(0)..=(c0 + radius).min(n) {
        for j in (c1 - radius).max(0)..=(c1 + radius).min(n - i) {
            let p = [i as f64 / n as f64, j as f64 / n as f64, ((n - i - j) as f64 / n as f64).max(0.0)];
            let a = to_alpha(&p);
            let v = dist(&a);
            if v < best.0 {
                best = (v, a);
            }
        }
    }
    best.1
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt()
}

/// Solves the square system `m·x = rhs` with partial pivoting; `None` if singular.
pub fn gauss_solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap())?;
        if m[p][c].abs() < 1e-10 {
            return None;
        }
        m.swap(c, p);
        rhs.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                if f != 0.0 {
                    for cc in c..n {
                        m[r][cc] -= f * m[c][cc];
                    }
                    rhs[r] -= f * rhs[c];
                }
            }
        }
    }
    Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

/// `Σ coeff·z rel rhs` with rel in {-1: ≤, 0: =, 1: ≥}.
#[derive(Clone, Debug)]
pub struct Halfspace {
    pub coeffs: Vec<f64>,
    pub rel: i8,
    pub rhs: f64,
}

/// Minimum of `cᵀz` over a bounded polyhedron by enumerating every basic
/// solution (intersection of `n` tight constraints). `None` if infeasible.
pub fn vertex_enumeration(c: &[f64], rows: &[Halfspace], lower: &[f64], upper: &[f64]) -> Option<f64> {
    let n = c.len();
    let mut planes: Vec<(Vec<f64>, f64)> = rows.iter().map(|h| (h.coeffs.clone(), h.rhs)).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e.clone(), lower[j]));
        planes.push((e, upper[j]));
    }
    let feasible = |z: &[f64]| {
        let tol = 1e-9;
        rows.iter().all(|h| {
            let lhs: f64 = h.coeffs.iter().zip(z).map(|(a, v)| a * v).sum();
            match h.rel {
                -1 => lhs <= h.rhs + tol,
                1 => lhs >= h.rhs - tol,
                _ => (lhs - h.rhs).abs() <= tol,
            }
        }) && z.iter().zip(lower).zip(upper).all(|((v, l), u)| *v >= l - tol && *v <= u + tol)
    };
    let mut best: Option<f64> = None;
    let mut pick = Vec::with_capacity(n);
    fn combos(start: usize, total: usize, need: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if pick.len() == need {
            visit(pick);
            return;
        }
        for i in start..total {
            if total - i < need - pick.len() {
                break;
            }
            pick.push(i);
            combos(i + 1, total, need, pick, visit);
            pick.pop();
        }
    }
    combos(0, planes.len(), n, &mut pick, &mut |sel| {
        let m: Vec<Vec<f64>> = sel.iter().map(|&i| planes[i].0.clone()).collect();
        let r: Vec<f64> = sel.iter().map(|&i| planes[i].1).collect();
        if let Some(z) = gauss_solve(m, r) {
            if feasible(&z) {
                let v: f64 = c.iter().zip(&z).map(|(a, b)| a * b).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
    });
    best
}
