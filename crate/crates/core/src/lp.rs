//! Dense two-phase simplex.
//!
//! Problems are stated as `minimize cᵀz` subject to rows `aᵢᵀz {≤, =, ≥} bᵢ`
//! and per-variable bounds `lⱼ ≤ zⱼ ≤ uⱼ` (either side may be infinite).
//! Internally every variable is shifted, mirrored or split so the tableau
//! only sees non-negative columns, rows are scaled by their largest
//! coefficient, and Bland's rule picks both the entering and the leaving
//! column so that degenerate pivots cannot cycle.
//!
//! Phase 1 only introduces artificial columns for rows that have no usable
//! starting basic column: a `≤` row starts on its slack, and a row with a
//! structural column that appears nowhere else starts on that column.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};

/// Smallest magnitude accepted as a pivot element.
pub const PIVOT_TOL: f64 = 1e-10;
/// Residual allowed on constraint rows of an optimal point.
pub const FEAS_TOL: f64 = 1e-8;
/// Reduced costs above `-OPT_TOL` are treated as non-negative.
const OPT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Self::Le => Self::Ge,
            Self::Eq => Self::Eq,
            Self::Ge => Self::Le,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSolution {
    Optimal { z: Vec<f64>, objective_value: f64 },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            Self::Optimal { .. } => LpStatus::Optimal,
            Self::Infeasible => LpStatus::Infeasible,
            Self::Unbounded => LpStatus::Unbounded,
        }
    }

    /// Point and value of an optimal solution, or the status as an error.
    pub fn into_optimal(self) -> Result<(Vec<f64>, f64)> {
        match self {
            Self::Optimal { z, objective_value } => Ok((z, objective_value)),
            other => Err(Error::Solver(other.status())),
        }
    }
}

/// Dense linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    relations: Vec<Relation>,
    rhs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl LpProblem {
    /// A problem with the given objective, no rows and bounds `0 ≤ z < ∞`.
    pub fn new(objective: Vec<f64>) -> Result<Self> {
        if objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("objective"));
        }
        let n = objective.len();
        Ok(Self {
            objective,
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        })
    }

    pub fn from_dense(
        objective: Vec<f64>,
        matrix: Vec<Vec<f64>>,
        relations: Vec<Relation>,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        let mut p = Self::new(objective)?;
        check_dim(matrix.len(), relations.len())?;
        check_dim(matrix.len(), rhs.len())?;
        check_dim(p.num_vars(), lower.len())?;
        check_dim(p.num_vars(), upper.len())?;
        for (j, (l, u)) in lower.into_iter().zip(upper).enumerate() {
            p.set_bounds(j, l, u)?;
        }
        for ((row, rel), b) in matrix.into_iter().zip(relations).zip(rhs) {
            p.add_constraint(row, rel, b)?;
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn bounds(&self, j: usize) -> (f64, f64) {
        (self.lower[j], self.upper[j])
    }

    /// Use `f64::NEG_INFINITY` / `f64::INFINITY` for missing bounds.
    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: f64) -> Result<()> {
        if j >= self.num_vars() {
            return Err(Error::DimensionMismatch { expected: self.num_vars(), found: j + 1 });
        }
        if lower.is_nan() || upper.is_nan() || lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(Error::InvalidParameter(format!(
                "invalid bounds [{lower}, {upper}] for variable {j}"
            )));
        }
        self.lower[j] = lower;
        self.upper[j] = upper;
        Ok(())
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        check_dim(self.num_vars(), coeffs.len())?;
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("constraint coefficients"));
        }
        if !rhs.is_finite() {
            return Err(Error::NonFinite("constraint right-hand side"));
        }
        self.rows.push(coeffs);
        self.relations.push(relation);
        self.rhs.push(rhs);
        Ok(())
    }

    /// Adds a row given as `(variable, coefficient)` pairs.
    pub fn add_sparse_constraint(
        &mut self,
        terms: &[(usize, f64)],
        relation: Relation,
        rhs: f64,
    ) -> Result<()> {
        let mut row = vec![0.0; self.num_vars()];
        for &(j, a) in terms {
            if j >= row.len() {
                return Err(Error::DimensionMismatch { expected: row.len(), found: j + 1 });
            }
            row[j] += a;
        }
        self.add_constraint(row, relation, rhs)
    }

    /// Largest violation of any row or bound at `z`.
    pub fn max_violation(&self, z: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for ((row, rel), b) in self.rows.iter().zip(&self.relations).zip(&self.rhs) {
            let lhs: f64 = row.iter().zip(z).map(|(a, v)| a * v).sum();
            let v = match rel {
                Relation::Le => lhs - b,
                Relation::Ge => b - lhs,
                Relation::Eq => (lhs - b).abs(),
            };
            worst = worst.max(v);
        }
        for ((v, l), u) in z.iter().zip(&self.lower).zip(&self.upper) {
            worst = worst.max(l - v).max(v - u);
        }
        worst
    }

    pub fn objective_at(&self, z: &[f64]) -> f64 {
        self.objective.iter().zip(z).map(|(c, v)| c * v).sum()
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve(self)
    }
}

/// How an original variable maps onto non-negative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `z = offset + y`
    Shift { offset: f64, col: usize },
    /// `z = offset − y`
    Mirror { offset: f64, col: usize },
    /// `z = y⁺ − y⁻`
    Free { pos: usize, neg: usize },
}

struct StdRow {
    coeffs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

/// Solves `p`; `Infeasible` and `Unbounded` are regular outcomes, not errors.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    if p.lower.iter().zip(&p.upper).any(|(l, u)| l > u) {
        return Ok(LpSolution::Infeasible);
    }

    // Column layout for the structural part.
    let mut maps = Vec::with_capacity(p.num_vars());
    let mut ncols = 0;
    let mut cost = Vec::new();
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..p.num_vars() {
        let (l, u, c) = (p.lower[j], p.upper[j], p.objective[j]);
        if l.is_finite() {
            maps.push(VarMap::Shift { offset: l, col: ncols });
            cost.push(c);
            if u.is_finite() {
                bound_rows.push((ncols, u - l));
            }
            ncols += 1;
        } else if u.is_finite() {
            maps.push(VarMap::Mirror { offset: u, col: ncols });
            cost.push(-c);
            ncols += 1;
        } else {
            maps.push(VarMap::Free { pos: ncols, neg: ncols + 1 });
            cost.push(c);
            cost.push(-c);
            ncols += 2;
        }
    }

    let mut rows: Vec<StdRow> = Vec::with_capacity(p.num_constraints() + bound_rows.len());
    for ((orig, rel), b) in p.rows.iter().zip(&p.relations).zip(&p.rhs) {
        let mut coeffs = vec![0.0; ncols];
        let mut rhs = *b;
        for (a, map) in orig.iter().zip(&maps) {
            if *a == 0.0 {
                continue;
            }
            match *map {
                VarMap::Shift { offset, col } => {
                    coeffs[col] += a;
                    rhs -= a * offset;
                }
                VarMap::Mirror { offset, col } => {
                    coeffs[col] -= a;
                    rhs -= a * offset;
                }
                VarMap::Free { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        rows.push(StdRow { coeffs, relation: *rel, rhs });
    }
    for (col, width) in bound_rows {
        let mut coeffs = vec![0.0; ncols];
        coeffs[col] = 1.0;
        rows.push(StdRow { coeffs, relation: Relation::Le, rhs: width });
    }

    // Scale rows, drop empty ones, make right-hand sides non-negative.
    let mut kept = Vec::with_capacity(rows.len());
    for mut row in rows {
        let scale = row.coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            let ok = match row.relation {
                Relation::Le => row.rhs >= -FEAS_TOL,
                Relation::Ge => row.rhs <= FEAS_TOL,
                Relation::Eq => row.rhs.abs() <= FEAS_TOL,
            };
            if !ok {
                return Ok(LpSolution::Infeasible);
            }
            continue;
        }
        row.coeffs.iter_mut().for_each(|v| *v /= scale);
        row.rhs /= scale;
        if row.rhs < 0.0 {
            row.coeffs.iter_mut().for_each(|v| *v = -*v);
            row.rhs = -row.rhs;
            row.relation = row.relation.flipped();
        }
        kept.push(row);
    }
    let rows = kept;

    let mut tableau = Tableau::build(&rows, ncols);
    let n_real = tableau.n_real;

    // Phase 1.
    if tableau.n_art > 0 {
        let mut phase1 = vec![0.0; tableau.width()];
        phase1[n_real..n_real + tableau.n_art].iter_mut().for_each(|v| *v = 1.0);
        tableau.set_objective(&phase1);
        tableau.iterate(tableau.width())?;
        let infeasibility = -tableau.obj[tableau.width()];
        let scale = 1.0 + rows.iter().map(|r| r.rhs).fold(0.0, f64::max);
        if infeasibility > FEAS_TOL * scale {
            return Ok(LpSolution::Infeasible);
        }
        tableau.drive_out_artificials();
    }

    // Phase 2.
    let mut phase2 = vec![0.0; tableau.width()];
    phase2[..ncols].copy_from_slice(&cost);
    tableau.set_objective(&phase2);
    if !tableau.iterate(n_real)? {
        return Ok(LpSolution::Unbounded);
    }

    let mut y = vec![0.0; tableau.width()];
    for (i, &b) in tableau.basis.iter().enumerate() {
        y[b] = tableau.rhs(i).max(0.0);
    }
    let z: Vec<f64> = maps
        .iter()
        .enumerate()
        .map(|(j, map)| {
            let v = match *map {
                VarMap::Shift { offset, col } => offset + y[col],
                VarMap::Mirror { offset, col } => offset - y[col],
                VarMap::Free { pos, neg } => y[pos] - y[neg],
            };
            v.clamp(p.lower[j], p.upper[j])
        })
        .collect();
    let objective_value = p.objective_at(&z);
    Ok(LpSolution::Optimal { z, objective_value })
}

struct Tableau {
    /// Row-major `m × (width + 1)`; the last entry of each row is the rhs.
    a: Vec<f64>,
    m: usize,
    /// Structural plus slack columns.
    n_real: usize,
    n_art: usize,
    basis: Vec<usize>,
    /// Reduced costs; last entry is minus the current objective value.
    obj: Vec<f64>,
    iterations: usize,
}

impl Tableau {
    fn build(rows: &[StdRow], ncols: usize) -> Self {
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let n_real = ncols + n_slack;

        // Structural columns that are non-zero in exactly one row.
        let mut touched = vec![0usize; ncols];
        let mut owner = vec![usize::MAX; ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.coeffs.iter().enumerate() {
                if *v != 0.0 {
                    touched[j] += 1;
                    owner[j] = i;
                }
            }
        }
        let mut basis = vec![usize::MAX; m];
        let mut used = vec![false; ncols];
        let mut slack = ncols;
        let mut slack_of = vec![usize::MAX; m];
        for (i, row) in rows.iter().enumerate() {
            match row.relation {
                Relation::Le => {
                    slack_of[i] = slack;
                    basis[i] = slack;
                    slack += 1;
                }
                Relation::Ge => {
                    slack_of[i] = slack;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            if basis[i] == usize::MAX {
                if let Some(j) = (0..ncols)
                    .find(|&j| !used[j] && touched[j] == 1 && owner[j] == i && row.coeffs[j] > 0.0)
                {
                    used[j] = true;
                    basis[i] = j;
                }
            }
        }
        let n_art = basis.iter().filter(|b| **b == usize::MAX).count();
        let width = n_real + n_art;
        let stride = width + 1;
        let mut a = vec![0.0; m * stride];
        let mut art = n_real;
        for (i, row) in rows.iter().enumerate() {
            let r = &mut a[i * stride..(i + 1) * stride];
            r[..ncols].copy_from_slice(&row.coeffs);
            r[width] = row.rhs;
            match row.relation {
                Relation::Le => r[slack_of[i]] = 1.0,
                Relation::Ge => r[slack_of[i]] = -1.0,
                Relation::Eq => {}
            }
            if basis[i] == usize::MAX {
                r[art] = 1.0;
                basis[i] = art;
                art += 1;
            } else if basis[i] < ncols {
                let piv = r[basis[i]];
                r.iter_mut().for_each(|v| *v /= piv);
            }
        }
        Self { a, m, n_real, n_art, basis, obj: vec![0.0; stride], iterations: 0 }
    }

    fn width(&self) -> usize {
        self.n_real + self.n_art
    }

    fn stride(&self) -> usize {
        self.width() + 1
    }

    fn rhs(&self, i: usize) -> f64 {
        self.a[i * self.stride() + self.width()]
    }

    fn set_objective(&mut self, cost: &[f64]) {
        let stride = self.stride();
        let mut obj = vec![0.0; stride];
        obj[..cost.len()].copy_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = obj[b];
            if cb != 0.0 {
                let row = &self.a[i * stride..(i + 1) * stride];
                for (o, v) in obj.iter_mut().zip(row) {
                    *o -= cb * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland-rule pivots over entering columns `0..limit`.
    /// Returns `false` if an improving direction is unbounded.
    fn iterate(&mut self, limit: usize) -> Result<bool> {
        let max_iter = 50_000 + 100 * (self.m + self.width());
        let stride = self.stride();
        let width = self.width();
        loop {
            let Some(enter) = (0..limit).find(|&j| self.obj[j] < -OPT_TOL) else {
                return Ok(true);
            };
            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.m {
                let aij = self.a[i * stride + enter];
                if aij > PIVOT_TOL {
                    let ratio = self.a[i * stride + width].max(0.0) / aij;
                    best = match best {
                        Some((r, _)) if r <= ratio => best,
                        _ => Some((ratio, i)),
                    };
                }
            }
            let Some((min_ratio, _)) = best else {
                return Ok(false);
            };
            let tie = min_ratio + 1e-12 * (1.0 + min_ratio);
            let leave = (0..self.m)
                .filter(|&i| {
                    let aij = self.a[i * stride + enter];
                    aij > PIVOT_TOL && self.a[i * stride + width].max(0.0) / aij <= tie
                })
                .min_by_key(|&i| self.basis[i])
                .expect("minimum ratio row exists");
            self.pivot(leave, enter);
            self.iterations += 1;
            if self.iterations > max_iter {
                return Err(Error::IterationLimit(max_iter));
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let stride = self.stride();
        let piv = self.a[row * stride + col];
        {
            let r = &mut self.a[row * stride..(row + 1) * stride];
            r.iter_mut().for_each(|v| *v /= piv);
            r[col] = 1.0;
        }
        let (before, rest) = self.a.split_at_mut(row * stride);
        let (prow, after) = rest.split_at_mut(stride);
        for other in before.chunks_mut(stride).chain(after.chunks_mut(stride)) {
            let f = other[col];
            if f != 0.0 {
                for (o, p) in other.iter_mut().zip(prow.iter()) {
                    *o -= f * p;
                }
                other[col] = 0.0;
            }
        }
        let f = self.obj[col];
        if f != 0.0 {
            for (o, p) in self.obj.iter_mut().zip(prow.iter()) {
                *o -= f * p;
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Pivots basic artificials out, deletes redundant rows and artificial columns.
    fn drive_out_artificials(&mut self) {
        let stride = self.stride();
        let mut redundant = Vec::new();
        for i in 0..self.m {
            if self.basis[i] < self.n_real {
                continue;
            }
            let row = &self.a[i * stride..(i + 1) * stride];
            let candidate = (0..self.n_real)
                .filter(|&j| row[j].abs() > PIVOT_TOL)
                .max_by(|&x, &y| row[x].abs().total_cmp(&row[y].abs()));
            match candidate {
                Some(j) => self.pivot(i, j),
                None => redundant.push(i),
            }
        }
        let new_stride = self.n_real + 1;
        let mut a = Vec::with_capacity((self.m - redundant.len()) * new_stride);
        let mut basis = Vec::with_capacity(self.m - redundant.len());
        for i in 0..self.m {
            if redundant.contains(&i) {
                continue;
            }
            let row = &self.a[i * stride..(i + 1) * stride];
            a.extend_from_slice(&row[..self.n_real]);
            a.push(row[stride - 1]);
            basis.push(self.basis[i]);
        }
        self.a = a;
        self.m = basis.len();
        self.basis = basis;
        self.n_art = 0;
        self.obj = vec![0.0; new_stride];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn single_variable_box() {
        let mut p = LpProblem::new(vec![-1.0]).unwrap();
        p.add_constraint(vec![1.0], Relation::Le, 1.0).unwrap();
        let (z, v) = p.solve().unwrap().into_optimal().unwrap();
        assert!((z[0] - 1.0).abs() < 1e-12);
        assert!((v + 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_feasible_set() {
        let mut p = LpProblem::new(vec![1.0]).unwrap();
        p.add_constraint(vec![1.0], Relation::Ge, 1.0).unwrap();
        p.add_constraint(vec![1.0], Relation::Le, 0.0).unwrap();
        assert_eq!(p.solve().unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn improving_ray() {
        let p = LpProblem::new(vec![-1.0]).unwrap();
        assert_eq!(p.solve().unwrap(), LpSolution::Unbounded);
        let mut q = LpProblem::new(vec![1.0, -1.0]).unwrap();
        q.set_bounds(0, -INF, INF).unwrap();
        q.add_constraint(vec![1.0, -1.0], Relation::Eq, 0.0).unwrap();
        assert_eq!(q.solve().unwrap().status(), LpStatus::Optimal);
        let mut r = LpProblem::new(vec![1.0]).unwrap();
        r.set_bounds(0, -INF, 3.0).unwrap();
        assert_eq!(r.solve().unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // minimize x − y, x free with x ≥ −2 via a row, y ≤ 4
        let mut p = LpProblem::new(vec![1.0, -1.0]).unwrap();
        p.set_bounds(0, -INF, INF).unwrap();
        p.set_bounds(1, -INF, 4.0).unwrap();
        p.add_constraint(vec![1.0, 0.0], Relation::Ge, -2.0).unwrap();
        let (z, v) = p.solve().unwrap().into_optimal().unwrap();
        assert!((z[0] + 2.0).abs() < 1e-10 && (z[1] - 4.0).abs() < 1e-10);
        assert!((v + 6.0).abs() < 1e-10);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LpProblem::new(vec![1.0, 2.0]).unwrap();
        p.add_constraint(vec![1.0, 1.0], Relation::Eq, 1.0).unwrap();
        p.add_constraint(vec![2.0, 2.0], Relation::Eq, 2.0).unwrap();
        let (z, v) = p.solve().unwrap().into_optimal().unwrap();
        assert!((z[0] - 1.0).abs() < 1e-10 && z[1].abs() < 1e-10);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn crossed_bounds_are_infeasible() {
        let mut p = LpProblem::new(vec![1.0]).unwrap();
        p.set_bounds(0, 2.0, 1.0).unwrap();
        assert_eq!(p.solve().unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn zero_row_handling() {
        let mut p = LpProblem::new(vec![1.0]).unwrap();
        p.add_constraint(vec![0.0], Relation::Le, 1.0).unwrap();
        assert_eq!(p.solve().unwrap().status(), LpStatus::Optimal);
        p.add_constraint(vec![0.0], Relation::Ge, 1.0).unwrap();
        assert_eq!(p.solve().unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn malformed_input() {
        assert!(LpProblem::new(vec![f64::NAN]).is_err());
        let mut p = LpProblem::new(vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            p.add_constraint(vec![1.0], Relation::Le, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(p.add_constraint(vec![1.0, f64::NAN], Relation::Le, 1.0).is_err());
        assert!(p.add_constraint(vec![1.0, 1.0], Relation::Le, f64::NAN).is_err());
        assert!(p.set_bounds(0, f64::NAN, 1.0).is_err());
        assert!(p.set_bounds(5, 0.0, 1.0).is_err());
        assert!(LpProblem::from_dense(
            vec![1.0],
            vec![vec![1.0]],
            vec![],
            vec![1.0],
            vec![0.0],
            vec![INF]
        )
        .is_err());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut p = LpProblem::new(vec![-0.75, 150.0, -0.02, 6.0]).unwrap();
        p.add_constraint(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0).unwrap();
        p.add_constraint(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0).unwrap();
        p.add_constraint(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0).unwrap();
        let (z, v) = p.solve().unwrap().into_optimal().unwrap();
        assert!((v + 0.05).abs() < 1e-9, "{v} {z:?}");
        assert!(p.max_violation(&z) < FEAS_TOL);
    }
}
