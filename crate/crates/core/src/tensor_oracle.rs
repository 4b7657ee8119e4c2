//! Brute-force realization of Schur–Weyl duality on `(C^d)^{⊗k}` for small
//! `k` and `d`.
//!
//! Every operator here is a real linear combination of permutation matrices,
//! so operators are stored as real matrices. Basis vectors
//! `e_{i_1} ⊗ ... ⊗ e_{i_k}` are indexed with the first tensor factor most
//! significant.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::characters::CharacterTable;
use crate::dimensions::dim_u;
use crate::error::{Error, Result};
use crate::kronecker::KroneckerEngine;
use crate::linalg::{tensor_power, CMatrix};
use crate::partitions::{factorial, CycleType, Partition};
use crate::quantum::DensityMatrix;

pub type OperatorMatrix = DMatrix<f64>;

/// Largest tensor-space dimension `d^k` the oracle will build.
pub const DEFAULT_ORACLE_CAP: usize = 4096;
/// Largest `k` for operations that sum over all of `S_k`.
pub const GROUP_SUM_MAX_K: usize = 6;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOLERANCE: f64 = 1e-8;
/// Overlap threshold on the operator norm.
pub const OVERLAP_TOLERANCE: f64 = 1e-10;
const NOISE_FLOOR: f64 = 1e-14;
const SVD_MAX_ITERATIONS: usize = 10_000;

/// A permutation of `0..k`, stored as its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(k: usize) -> Self {
        Self((0..k).collect())
    }

    /// Swaps `a` and `b`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(a, b);
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn cycle_type(&self) -> CycleType {
        let k = self.0.len();
        let mut seen = vec![false; k];
        let mut lengths = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len as u32);
        }
        CycleType(Partition::from_unsorted(lengths))
    }

    pub fn sign(&self) -> i64 {
        self.cycle_type().sign() as i64
    }
}

/// All `k!` permutations in lexicographic order of their image vectors.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(Permutation(current.clone()));
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

fn checked_space_dim(d: usize, k: usize, cap: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..k {
        dim = dim.saturating_mul(d);
        if dim > cap {
            return Err(Error::CapExceeded { what: "d^k", value: dim, cap });
        }
    }
    Ok(dim)
}

/// Digits of basis index `idx` in base `d`, first factor first.
fn digits(mut idx: usize, d: usize, k: usize, out: &mut [usize]) {
    for slot in (0..k).rev() {
        out[slot] = idx % d;
        idx /= d;
    }
}

/// For every basis index `i`, the index of `π e_i`. The tensor factor in slot
/// `s` moves to slot `π(s)`.
fn permuted_indices(pi: &Permutation, d: usize, dim: usize) -> Vec<usize> {
    let k = pi.degree();
    let mut input = vec![0; k];
    let mut output = vec![0; k];
    (0..dim)
        .map(|i| {
            digits(i, d, k, &mut input);
            for s in 0..k {
                output[pi.apply(s)] = input[s];
            }
            output.iter().fold(0, |acc, &x| acc * d + x)
        })
        .collect()
}

/// Accumulates `Σ coeff(π) · M(π)` into a fresh matrix.
fn group_algebra_operator<'a>(
    terms: impl IntoIterator<Item = (&'a Permutation, f64)>,
    d: usize,
    dim: usize,
) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(dim, dim);
    for (pi, coeff) in terms {
        if coeff == 0.0 {
            continue;
        }
        for (col, row) in permuted_indices(pi, d, dim).into_iter().enumerate() {
            m[(row, col)] += coeff;
        }
    }
    m
}

/// The 0/1 matrix of `π` acting on `(C^d)^{⊗k}` by permuting tensor factors.
pub fn perm_operator(pi: &Permutation, d: usize) -> Result<OperatorMatrix> {
    perm_operator_with_cap(pi, d, DEFAULT_ORACLE_CAP)
}

pub fn perm_operator_with_cap(pi: &Permutation, d: usize, cap: usize) -> Result<OperatorMatrix> {
    let dim = checked_space_dim(d, pi.degree(), cap)?;
    Ok(group_algebra_operator([(pi, 1.0)], d, dim))
}

/// A standard Young tableau: rows of the frame filled with `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    frame: Partition,
    filling: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(filling: Vec<Vec<usize>>) -> Result<Self> {
        let frame = Partition::new(filling.iter().map(|r| r.len() as u32).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let k = frame.weight();
        let mut seen = vec![false; k + 1];
        for &v in filling.iter().flatten() {
            if v == 0 || v > k || seen[v] {
                return Err(Error::InvalidTableau(format!("{filling:?} is not a filling by 1..={k}")));
            }
            seen[v] = true;
        }
        for (i, row) in filling.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if j > 0 && row[j - 1] >= v {
                    return Err(Error::InvalidTableau(format!("row {i} not increasing")));
                }
                if i > 0 && filling[i - 1][j] >= v {
                    return Err(Error::InvalidTableau(format!("column {j} not increasing")));
                }
            }
        }
        Ok(Self { frame, filling })
    }

    /// Boxes numbered row by row, left to right.
    pub fn canonical(frame: &Partition) -> Self {
        let mut next = 1;
        let filling = frame
            .parts()
            .iter()
            .map(|&r| {
                let row: Vec<usize> = (next..next + r as usize).collect();
                next += r as usize;
                row
            })
            .collect();
        Self { frame: frame.clone(), filling }
    }

    pub fn frame(&self) -> &Partition {
        &self.frame
    }

    pub fn filling(&self) -> &[Vec<usize>] {
        &self.filling
    }

    fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.frame.part(0) as usize)
            .map(|j| self.filling.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }
}

/// Permutations of `0..k` that only move entries within each block.
fn block_group(blocks: &[Vec<usize>], k: usize) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(k)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = all_permutations(block.len());
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for l in &local {
                let mut images = g.images().to_vec();
                for (a, &src) in block.iter().enumerate() {
                    images[src - 1] = block[l.apply(a)] - 1;
                }
                next.push(Permutation(images));
            }
        }
        group = next;
    }
    group
}

type GroupAlgebra = HashMap<Permutation, i64>;

fn multiply(a: &GroupAlgebra, b: &GroupAlgebra) -> GroupAlgebra {
    let mut out = GroupAlgebra::new();
    for (x, cx) in a {
        for (y, cy) in b {
            *out.entry(x.compose(y)).or_insert(0) += cx * cy;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Young symmetrizer `e(T)` with its scalar `r` (`e(T)² = r e(T)`) and the
/// idempotent `p(T) = e(T)/r`.
#[derive(Clone, Debug)]
pub struct YoungSymmetrizer {
    pub tableau: Tableau,
    pub r: i64,
    pub symmetrizer: OperatorMatrix,
    pub idempotent: OperatorMatrix,
    pub rank: usize,
    /// `max |e² − r e|` on the tensor space.
    pub residual: f64,
}

/// Builds `e(T) = (Σ_{C(T)} sgn(π) π)(Σ_{R(T)} π)` on `(C^d)^{⊗k}`.
///
/// `r` is measured in the group algebra, where `e(T)²` is computed exactly;
/// the tensor-space residual of `e² = r e` is reported alongside.
pub fn young_symmetrizer(tableau: &Tableau, d: usize) -> Result<YoungSymmetrizer> {
    young_symmetrizer_with_cap(tableau, d, DEFAULT_ORACLE_CAP)
}

pub fn young_symmetrizer_with_cap(tableau: &Tableau, d: usize, cap: usize) -> Result<YoungSymmetrizer> {
    let k = tableau.frame().weight();
    let dim = checked_space_dim(d, k, cap)?;
    let rows: GroupAlgebra = block_group(tableau.filling(), k).into_iter().map(|p| (p, 1)).collect();
    let cols: GroupAlgebra = block_group(&tableau.columns(), k)
        .into_iter()
        .map(|p| {
            let s = p.sign();
            (p, s)
        })
        .collect();
    let e = multiply(&cols, &rows);
    let e2 = multiply(&e, &e);
    let r = e2.get(&Permutation::identity(k)).copied().unwrap_or(0);
    let exact = e.iter().all(|(p, c)| e2.get(p).copied().unwrap_or(0) == r * c) && e2.len() == e.len();
    if r <= 0 || !exact {
        return Err(Error::Inconsistent(format!("e(T)^2 is not a positive multiple of e(T) (r = {r})")));
    }
    let terms: Vec<(Permutation, f64)> = e.iter().map(|(p, &c)| (p.clone(), c as f64)).collect();
    let symmetrizer = group_algebra_operator(terms.iter().map(|(p, c)| (p, *c)), d, dim);
    let square = &symmetrizer * &symmetrizer;
    let residual = (square - &symmetrizer * r as f64).amax();
    let idempotent = &symmetrizer / r as f64;
    let rank = numerical_rank(&idempotent);
    Ok(YoungSymmetrizer { tableau: tableau.clone(), r, symmetrizer, idempotent, rank, residual })
}

/// Count of singular values above `RANK_TOLERANCE` times the largest one,
/// floored at one so that rounding noise in a vanishing operator has rank 0.
pub fn numerical_rank(m: &OperatorMatrix) -> usize {
    let sv = singular_values(m);
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * top.max(1.0)).count()
}

/// Largest singular value.
pub fn operator_norm(m: &OperatorMatrix) -> f64 {
    singular_values(m).iter().cloned().fold(0.0, f64::max)
}

/// Entries below `NOISE_FLOOR` (relative to the largest entry, floored at 1)
/// are set to zero first: the bidiagonal QR iteration can fail to converge
/// on matrices made only of rounding residue. If the iteration still fails,
/// the singular values are taken from the eigenvalues of `MᵀM`.
fn singular_values(m: &OperatorMatrix) -> Vec<f64> {
    let floor = NOISE_FLOOR * m.amax().max(1.0);
    let clean = m.map(|x| if x.abs() < floor { 0.0 } else { x });
    if clean.iter().all(|&x| x == 0.0) {
        return vec![0.0; clean.nrows().min(clean.ncols())];
    }
    match clean.clone().try_svd(false, false, f64::EPSILON, SVD_MAX_ITERATIONS) {
        Some(svd) => svd.singular_values.iter().copied().collect(),
        None => {
            let gram = clean.transpose() * &clean;
            gram.symmetric_eigenvalues().iter().map(|&e| e.max(0.0).sqrt()).collect()
        }
    }
}

/// Isotypic projector `P_λ = (dim U_λ / k!) Σ_π χ_λ(π) π` onto
/// `U_λ ⊗ V_λ` inside `(C^d)^{⊗k}`.
pub fn central_projector(lambda: &Partition, d: usize) -> Result<OperatorMatrix> {
    central_projector_with_cap(lambda, d, DEFAULT_ORACLE_CAP)
}

pub fn central_projector_with_cap(lambda: &Partition, d: usize, cap: usize) -> Result<OperatorMatrix> {
    let k = lambda.weight();
    if k > GROUP_SUM_MAX_K {
        return Err(Error::CapExceeded { what: "k for a group sum", value: k, cap: GROUP_SUM_MAX_K });
    }
    let dim = checked_space_dim(d, k, cap)?;
    let table = CharacterTable::build(k.max(1))?;
    central_projector_from_table(&table, lambda, d, dim)
}

fn central_projector_from_table(
    table: &CharacterTable,
    lambda: &Partition,
    d: usize,
    dim: usize,
) -> Result<OperatorMatrix> {
    let k = lambda.weight();
    if k == 0 {
        return Ok(OperatorMatrix::identity(dim, dim));
    }
    let row = table.row(lambda).ok_or(Error::IncomparableWeights(k, table.degree()))?;
    let chi: HashMap<&CycleType, f64> = table
        .classes()
        .iter()
        .zip(row)
        .map(|(c, v)| (c, v.to_f64().unwrap()))
        .collect();
    let scale = dim_u(lambda).to_f64().unwrap() / factorial(k).to_f64().unwrap();
    let perms = all_permutations(k);
    let terms: Vec<(&Permutation, f64)> = perms
        .iter()
        .map(|p| (p, scale * chi[&p.cycle_type()]))
        .collect();
    Ok(group_algebra_operator(terms, d, dim))
}

/// `tr(P · ρ^{⊗k})` for a real `P` and complex `ρ^{⊗k}`.
fn trace_product(p: &OperatorMatrix, r: &CMatrix) -> f64 {
    let n = p.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let pij = p[(i, j)];
            if pij != 0.0 {
                acc += r[(j, i)] * pij;
            }
        }
    }
    acc.re
}

/// `tr(P_λ ρ^{⊗k})` by explicit matrices.
pub fn exact_trace(rho: &DensityMatrix, lambda: &Partition) -> Result<f64> {
    let d = rho.dim();
    let p = central_projector(lambda, d)?;
    let power = tensor_power(rho.matrix(), lambda.weight());
    Ok(trace_product(&p, &power))
}

/// Index of a basis vector of `((C^m)⊗(C^n))^{⊗k}` (local index `a·n + b`)
/// in the ordering `(C^m)^{⊗k} ⊗ (C^n)^{⊗k}`.
fn split_index(idx: usize, m: usize, n: usize, k: usize) -> usize {
    let mut pair = vec![0; k];
    digits(idx, m * n, k, &mut pair);
    let a = pair.iter().fold(0, |acc, &c| acc * m + c / n);
    let b = pair.iter().fold(0, |acc, &c| acc * n + c % n);
    a * n.pow(k as u32) + b
}

/// Rewrites an operator on `(C^m)^{⊗k} ⊗ (C^n)^{⊗k}` in the pair ordering.
pub fn to_pair_order(op: &OperatorMatrix, m: usize, n: usize, k: usize) -> OperatorMatrix {
    let dim = op.nrows();
    let sigma: Vec<usize> = (0..dim).map(|i| split_index(i, m, n, k)).collect();
    OperatorMatrix::from_fn(dim, dim, |i, j| op[(sigma[i], sigma[j])])
}

/// Inverse of [`to_pair_order`].
pub fn to_split_order(op: &OperatorMatrix, m: usize, n: usize, k: usize) -> OperatorMatrix {
    let dim = op.nrows();
    let sigma: Vec<usize> = (0..dim).map(|i| split_index(i, m, n, k)).collect();
    let mut out = OperatorMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(sigma[i], sigma[j])] = op[(i, j)];
        }
    }
    out
}

/// Outcome of [`overlap_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapReport {
    pub norm: f64,
    pub overlaps: bool,
    pub kronecker_nonzero: bool,
}

impl OverlapReport {
    pub fn agrees(&self) -> bool {
        self.overlaps == self.kronecker_nonzero
    }
}

/// Whether `(P^A_μ ⊗ P^B_ν) P^{AB}_λ ≠ 0` on `((C^m)⊗(C^n))^{⊗k}`, compared
/// with `g_{λμν} ≠ 0`.
pub fn overlap_check(lambda: &Partition, m: usize, n: usize, mu: &Partition, nu: &Partition) -> Result<OverlapReport> {
    let k = lambda.weight();
    if mu.weight() != k || nu.weight() != k {
        return Err(Error::IncomparableWeights(k, if mu.weight() != k { mu.weight() } else { nu.weight() }));
    }
    let dim = checked_space_dim(m * n, k, DEFAULT_ORACLE_CAP)?;
    if k > GROUP_SUM_MAX_K {
        return Err(Error::CapExceeded { what: "k for a group sum", value: k, cap: GROUP_SUM_MAX_K });
    }
    let table = CharacterTable::build(k)?;
    let p_ab = central_projector_from_table(&table, lambda, m * n, dim)?;
    let p_a = central_projector_from_table(&table, mu, m, m.pow(k as u32))?;
    let p_b = central_projector_from_table(&table, nu, n, n.pow(k as u32))?;
    let local = to_pair_order(&p_a.kronecker(&p_b), m, n, k);
    let norm = operator_norm(&(local * p_ab));
    let g = KroneckerEngine::from_table(std::sync::Arc::new(table)).kron(lambda, mu, nu)?;
    Ok(OverlapReport { norm, overlaps: norm > OVERLAP_TOLERANCE, kronecker_nonzero: g.bits() > 0 })
}

/// Converts a real operator to a complex one.
pub fn complexify(op: &OperatorMatrix) -> CMatrix {
    op.map(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::dim_v;
    use crate::linalg::{random_density_matrix, random_unitary};
    use crate::partitions::enumerate_partitions;
    use rand::{seq::SliceRandom, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn binomial(n: usize, r: usize) -> usize {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0).len(), 1);
        let t = Permutation::transposition(3, 0, 2);
        assert_eq!(t.sign(), -1);
        assert_eq!(t.compose(&t), Permutation::identity(3));
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(c.cycle_type(), "3".parse().unwrap());
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn perm_operator_examples() {
        assert_eq!(perm_operator(&Permutation::identity(3), 2).unwrap(), OperatorMatrix::identity(8, 8));
        let swap = perm_operator(&Permutation::transposition(2, 0, 1), 2).unwrap();
        let expected = OperatorMatrix::from_row_slice(
            4,
            4,
            &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.],
        );
        assert_eq!(swap, expected);
        assert!(matches!(perm_operator(&Permutation::identity(13), 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn perm_operator_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut perms = all_permutations(3);
        for _ in 0..10 {
            perms.shuffle(&mut rng);
            let (a, b) = (&perms[0], &perms[1]);
            let lhs = perm_operator(a, 2).unwrap() * perm_operator(b, 2).unwrap();
            assert_eq!(lhs, perm_operator(&a.compose(b), 2).unwrap());
        }
    }

    #[test]
    fn permutation_moves_factors() {
        // π = (0 1 2) ↦ (1 2 0): slot s goes to slot π(s)
        let pi = Permutation::new(vec![1, 2, 0]).unwrap();
        let m = perm_operator(&pi, 3).unwrap();
        // e_0 ⊗ e_1 ⊗ e_2 (index 0·9 + 1·3 + 2 = 5) ↦ e_2 ⊗ e_0 ⊗ e_1 (index 18 + 0 + 1)
        assert_eq!(m[(19, 5)], 1.0);
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(matches!(Tableau::new(vec![vec![2, 1]]), Err(Error::InvalidTableau(_))));
        assert!(Tableau::new(vec![vec![1, 2], vec![3, 2]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert_eq!(Tableau::canonical(&p("2,1")).filling(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn symmetrizer_ranks() {
        for d in 2..=3usize {
            for k in 1..=4usize {
                let y = young_symmetrizer(&Tableau::canonical(&Partition::row(k)), d).unwrap();
                assert_eq!(y.rank, binomial(d + k - 1, k));
                assert!(y.residual <= 1e-8 * y.r as f64);
                if k <= d {
                    let y = young_symmetrizer(&Tableau::canonical(&Partition::column(k)), d).unwrap();
                    assert_eq!(y.rank, binomial(d, k));
                }
            }
        }
        let y = young_symmetrizer(&Tableau::canonical(&p("2,1")), 2).unwrap();
        assert_eq!(y.rank, 2);
        assert_eq!(y.r, 3);
    }

    #[test]
    fn symmetrizer_scalar_is_hook_product() {
        for k in 1..=5 {
            for lam in enumerate_partitions(k, k) {
                let y = young_symmetrizer(&Tableau::canonical(&lam), 2).unwrap();
                let hooks = factorial(k) / dim_u(&lam);
                assert_eq!(y.r, hooks.to_i64().unwrap());
                assert_eq!(y.rank, dim_v(&lam, 2).to_usize().unwrap());
                let p2 = &y.idempotent * &y.idempotent;
                assert!((p2 - &y.idempotent).amax() <= 1e-8);
            }
        }
        // a non-canonical standard tableau gives an equivalent module
        let t = Tableau::new(vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(young_symmetrizer(&t, 3).unwrap().rank, dim_v(&p("2,2"), 3).to_usize().unwrap());
    }

    #[test]
    fn central_projector_examples() {
        assert_eq!(numerical_rank(&central_projector(&p("2"), 2).unwrap()), 3);
        assert_eq!(numerical_rank(&central_projector(&p("1,1"), 2).unwrap()), 1);
        assert!(central_projector(&p("1,1,1"), 2).unwrap().amax() < 1e-12);
        assert!(central_projector(&p("7"), 2).is_err());
    }

    #[test]
    fn projectors_resolve_identity_with_correct_ranks() {
        for (d, kmax) in [(2usize, 5usize), (3, 4)] {
            for k in 1..=kmax {
                let dim = d.pow(k as u32);
                let mut total = OperatorMatrix::zeros(dim, dim);
                for lam in enumerate_partitions(k, k) {
                    let pl = central_projector(&lam, d).unwrap();
                    assert!((&pl * &pl - &pl).amax() <= 1e-10);
                    assert!((&pl - pl.transpose()).amax() <= 1e-10);
                    let expected = (dim_u(&lam) * dim_v(&lam, d)).to_usize().unwrap();
                    assert_eq!(numerical_rank(&pl), expected, "{lam} d={d}");
                    total += pl;
                }
                assert!((total - OperatorMatrix::identity(dim, dim)).amax() <= 1e-9);
            }
        }
    }

    #[test]
    fn projectors_commute_with_both_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 2..=4 {
            let u = random_unitary(2, &mut rng);
            let uk = tensor_power(&u, k);
            for lam in enumerate_partitions(k, 2) {
                let pl = central_projector(&lam, 2).unwrap();
                for pi in all_permutations(k) {
                    let m = perm_operator(&pi, 2).unwrap();
                    assert!((&pl * &m - &m * &pl).amax() <= 1e-9);
                }
                let pc = complexify(&pl);
                assert!((&pc * &uk - &uk * &pc).camax() <= 1e-9);
            }
        }
    }

    #[test]
    fn exact_trace_examples() {
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((exact_trace(&mixed, &p("2")).unwrap() - 0.75).abs() < 1e-12);
        assert!((exact_trace(&mixed, &p("1,1")).unwrap() - 0.25).abs() < 1e-12);
        let pure = DensityMatrix::pure(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        for k in 1..=5 {
            assert!((exact_trace(&pure, &Partition::row(k)).unwrap() - 1.0).abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = DensityMatrix::new(random_density_matrix(2, &mut rng), None).unwrap();
        let total: f64 = enumerate_partitions(4, 4).iter().map(|l| exact_trace(&rho, l).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reordering_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let dim = 6usize.pow(2);
        let op = OperatorMatrix::from_fn(dim, dim, |_, _| rand::Rng::random_range(&mut rng, -1.0..1.0));
        let back = to_split_order(&to_pair_order(&op, 2, 3, 2), 2, 3, 2);
        assert_eq!(back, op);
        assert_eq!(to_pair_order(&to_split_order(&op, 3, 2, 2), 3, 2, 2), op);
    }

    #[test]
    fn reordering_takes_product_operators_to_local_products() {
        // (A ⊗ B) on the pair ordering at k = 1 is just the Kronecker product
        let a = OperatorMatrix::from_row_slice(2, 2, &[1., 2., 3., 4.]);
        let b = OperatorMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.]);
        assert_eq!(to_pair_order(&a.kronecker(&b), 2, 2, 1), a.kronecker(&b));
        // k = 2: (A⊗A) ⊗ (B⊗B) reorders to (A⊗B) ⊗ (A⊗B)
        let split = a.kronecker(&a).kronecker(&b.kronecker(&b));
        let ab = a.kronecker(&b);
        assert_eq!(to_pair_order(&split, 2, 2, 2), ab.kronecker(&ab));
    }

    #[test]
    fn overlap_examples() {
        let r = overlap_check(&p("2"), 2, 2, &p("1,1"), &p("1,1")).unwrap();
        assert!(r.overlaps && r.agrees());
        let r = overlap_check(&p("1,1"), 2, 2, &p("2"), &p("2")).unwrap();
        assert!(!r.overlaps && r.agrees());
        for (m, n) in [(1, 2), (2, 2), (2, 3)] {
            assert!(overlap_check(&p("2"), m, n, &p("2"), &p("2")).unwrap().overlaps);
        }
    }

    #[test]
    fn vanishing_overlap_terminates() {
        // the product is pure rounding residue here
        let r = overlap_check(&p("1,1,1"), 2, 2, &p("3"), &p("2,1")).unwrap();
        assert!(r.norm < OVERLAP_TOLERANCE && r.agrees());
        let noise = OperatorMatrix::from_fn(8, 8, |i, j| 1e-17 * ((i * 8 + j) as f64).sin());
        assert_eq!(numerical_rank(&noise), 0);
    }
}
