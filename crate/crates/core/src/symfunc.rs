//! Numeric evaluation of symmetric functions at real points.
//!
//! `h_r` is the complete homogeneous symmetric sum (the sum of all degree-`r`
//! monomials), not the power sum `p_r`.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::kronecker::KroneckerEngine;
use crate::partitions::{enumerate_partitions, CycleType, Partition};

/// An evaluation point `(x_1, ..., x_d)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymPoint(pub Vec<f64>);

impl SymPoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("evaluation point has non-finite entries".into()));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for SymPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SymPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SymPoint::new(values)
    }
}

/// `p_r(x) = Σ x_i^r`.
pub fn power_sum(r: u32, x: &SymPoint) -> f64 {
    x.0.iter().map(|v| v.powi(r as i32)).sum()
}

/// `p_τ(x) = ∏_j p_{τ_j}(x)`.
pub fn power_sum_cycle(tau: &CycleType, x: &SymPoint) -> f64 {
    tau.partition().parts().iter().map(|&r| power_sum(r, x)).product()
}

/// `h_0, ..., h_{max}` by adding one variable at a time.
pub fn homog_all(max: usize, x: &SymPoint) -> Vec<f64> {
    let mut h = vec![0.0; max + 1];
    h[0] = 1.0;
    for &xi in &x.0 {
        for j in 1..=max {
            h[j] += xi * h[j - 1];
        }
    }
    h
}

/// Complete homogeneous sum `h_r(x)`; `h_0 = 1`.
pub fn homog(r: usize, x: &SymPoint) -> f64 {
    homog_all(r, x)[r]
}

/// Schur function via the Jacobi–Trudi determinant `det(h_{λ_i − i + j})`.
/// Zero when `λ` has more rows than `x` has coordinates.
pub fn schur(lambda: &Partition, x: &SymPoint) -> f64 {
    let rows = lambda.len();
    if rows > x.len() {
        return 0.0;
    }
    if rows == 0 {
        return 1.0;
    }
    let h = homog_all(lambda.weight() + rows, x);
    let entry = |i: usize, j: usize| -> f64 {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            0.0
        } else {
            h[idx as usize]
        }
    };
    let mut m: Vec<Vec<f64>> = (0..rows).map(|i| (0..rows).map(|j| entry(i, j)).collect()).collect();
    determinant(&mut m)
}

/// Gaussian elimination with partial pivoting; destroys `m`.
fn determinant(m: &mut [Vec<f64>]) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            if factor != 0.0 {
                let (top, bottom) = m.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= factor * y;
                }
            }
        }
    }
    det
}

/// Schur function via the branching rule
/// `s_λ(x_1..x_n) = Σ_μ s_μ(x_1..x_{n−1}) x_n^{|λ/μ|}` over `μ` interlacing
/// `λ`. Every term is non-negative for non-negative `x`, so there is no
/// cancellation; this is the evaluator to use when `k` is large.
pub fn schur_branching(lambda: &Partition, x: &SymPoint) -> f64 {
    if lambda.len() > x.len() {
        return 0.0;
    }
    let mut memo = HashMap::new();
    branch(lambda.parts(), &x.0, &mut memo)
}

fn branch(lambda: &[u32], x: &[f64], memo: &mut HashMap<(Vec<u32>, usize), f64>) -> f64 {
    let n = x.len();
    if lambda.is_empty() {
        return 1.0;
    }
    if lambda.len() > n {
        return 0.0;
    }
    if n == 1 {
        return x[0].powi(lambda[0] as i32);
    }
    let key = (lambda.to_vec(), n);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let total_weight: u32 = lambda.iter().sum();
    let last = x[n - 1];
    // interlacing is a box of independent ranges: λ_{i+1} ≤ μ_i ≤ λ_i
    let slots = (n - 1).min(lambda.len());
    let mut mu = Vec::with_capacity(slots);
    let mut sum = 0.0;
    interlace(lambda, slots, &mut mu, &mut |mu| {
        let mut trimmed = mu.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let weight: u32 = trimmed.iter().sum();
        let inner = branch(&trimmed, &x[..n - 1], memo);
        if inner != 0.0 {
            sum += inner * last.powi((total_weight - weight) as i32);
        }
    });
    memo.insert(key, sum);
    sum
}

fn interlace(lambda: &[u32], slots: usize, mu: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    let i = mu.len();
    if i == slots {
        visit(mu);
        return;
    }
    let lo = lambda.get(i + 1).copied().unwrap_or(0);
    for v in lo..=lambda[i] {
        mu.push(v);
        interlace(lambda, slots, mu, visit);
        mu.pop();
    }
}

/// `|p_τ(x) − Σ_λ χ_λ(τ) s_λ(x)|` using a prebuilt table of degree `|τ|`.
pub fn frobenius_residual(table: &CharacterTable, tau: &CycleType, x: &SymPoint) -> Result<f64> {
    let col = table
        .classes()
        .iter()
        .position(|c| c == tau)
        .ok_or(Error::IncomparableWeights(tau.degree(), table.degree()))?;
    let rhs: f64 = table
        .rows()
        .iter()
        .enumerate()
        .map(|(i, lam)| table.value(i, col).to_f64().unwrap() * schur(lam, x))
        .sum();
    Ok((power_sum_cycle(tau, x) - rhs).abs())
}

/// Frobenius character formula check for one class.
pub fn frobenius_check(tau: &CycleType, x: &SymPoint) -> Result<f64> {
    let table = CharacterTable::build(tau.degree())?;
    frobenius_residual(&table, tau, x)
}

/// All pairwise products `x_i y_j`, sorted non-increasing.
pub fn product_point(x: &SymPoint, y: &SymPoint) -> SymPoint {
    let mut v: Vec<f64> = x.0.iter().flat_map(|a| y.0.iter().map(move |b| a * b)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    SymPoint(v)
}

/// `|s_λ(xy) − Σ_{μ,ν} g_{λμν} s_μ(x) s_ν(y)|`, with `μ` restricted to
/// `len(x)` rows and `ν` to `len(y)` rows.
pub fn content_expansion_residual(
    engine: &KroneckerEngine,
    lambda: &Partition,
    x: &SymPoint,
    y: &SymPoint,
) -> Result<f64> {
    let k = lambda.weight();
    let lhs = schur(lambda, &product_point(x, y));
    let mus = enumerate_partitions(k, x.len());
    let nus = enumerate_partitions(k, y.len());
    let mut rhs = 0.0;
    for mu in &mus {
        let sx = schur(mu, x);
        for nu in &nus {
            let g = engine.kron(lambda, mu, nu)?;
            if g.bits() > 0 {
                rhs += g.to_f64().unwrap() * sx * schur(nu, y);
            }
        }
    }
    Ok((lhs - rhs).abs())
}

/// Content expansion check with a fresh engine for degree `|λ|`.
pub fn content_expansion_check(lambda: &Partition, x: &SymPoint, y: &SymPoint) -> Result<f64> {
    let engine = KroneckerEngine::new(lambda.weight())?;
    content_expansion_residual(&engine, lambda, x, y)
}
