//! Density operators, marginals and spectra, entropies, spectrum-estimation
//! bounds, and the search for partition triples with nonzero Kronecker
//! coefficient that approximate the spectra of a bipartite state and its
//! marginals.

use std::fs;
use std::path::Path;

use nalgebra::DVector;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimensions::dim_u;
use crate::display_serde;
use crate::error::{Error, Result};
use crate::kronecker::KroneckerEngine;
use crate::linalg::{eigenvalues_desc, hermitian_residual, random_density_matrix, CMatrix};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfunc::{schur_branching, SymPoint};

/// Validation tolerance for density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Largest `k` for Young-frame distributions. No character tables are
/// involved there, only hook lengths and Schur values.
pub const DEFAULT_YOUNG_CAP: usize = 256;
/// Largest `k` accepted by [`compat_search`].
pub const DEFAULT_COMPAT_CAP: usize = 20;
/// Slack for the Keyl–Werner style bound comparisons.
pub const BOUND_SLACK: f64 = 1e-12;
/// Distances closer than this are treated as ties in [`compat_search`].
pub const DISTANCE_RESOLUTION: f64 = 1e-12;

/// Which tensor factor to keep in a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// A validated density operator, optionally split as `C^m ⊗ C^n` with local
/// index `a·n + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    bipartition: Option<(usize, usize)>,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity, each within
    /// [`DENSITY_TOLERANCE`].
    pub fn new(matrix: CMatrix, bipartition: Option<(usize, usize)>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(Error::InvalidDensity { invariant: "square shape", residual: matrix.ncols() as f64 - dim as f64 });
        }
        if let Some((m, n)) = bipartition {
            if m * n != dim {
                return Err(Error::InvalidDensity {
                    invariant: "bipartition m*n == dim",
                    residual: (m * n) as f64 - dim as f64,
                });
            }
        }
        let herm = hermitian_residual(&matrix);
        if herm > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity { invariant: "hermitian", residual: herm });
        }
        let tr = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if tr > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity { invariant: "unit trace", residual: tr });
        }
        let min = eigenvalues_desc(&matrix).last().copied().unwrap_or(0.0);
        if min < -DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity { invariant: "positive semidefinite", residual: -min });
        }
        Ok(Self { matrix, bipartition })
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let diag = DVector::from_iterator(probs.len(), probs.iter().map(|&p| Complex64::new(p, 0.0)));
        Self::new(CMatrix::from_diagonal(&diag), None)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self { matrix: CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0), bipartition: None }
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v = v / Complex64::new(norm, 0.0);
        Self::new(&v * v.adjoint(), None)
    }

    /// `(|00⟩ + |11⟩)/√2` on two qubits.
    pub fn bell() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let psi = [Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)];
        Self::pure(&psi).unwrap().with_bipartition(2, 2).unwrap()
    }

    /// Ginibre-random state on `C^d`, reproducible from `seed`.
    pub fn random(d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { matrix: random_density_matrix(d, &mut rng), bipartition: None }
    }

    /// `ρ_A ⊗ ρ_B`, with the bipartition recorded.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        Self {
            matrix: a.matrix.kronecker(&b.matrix),
            bipartition: Some((a.dim(), b.dim())),
        }
    }

    pub fn with_bipartition(mut self, m: usize, n: usize) -> Result<Self> {
        if m * n != self.dim() {
            return Err(Error::InvalidDensity {
                invariant: "bipartition m*n == dim",
                residual: (m * n) as f64 - self.dim() as f64,
            });
        }
        self.bipartition = Some((m, n));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn bipartition(&self) -> Option<(usize, usize)> {
        self.bipartition
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        Self::new(u * &self.matrix * u.adjoint(), self.bipartition)
    }

    /// Traces out the other factor of the bipartition.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityMatrix> {
        let (m, n) = self.bipartition.ok_or(Error::MissingBipartition)?;
        let out = match keep {
            Subsystem::A => CMatrix::from_fn(m, m, |a, a2| (0..n).map(|b| self.matrix[(a * n + b, a2 * n + b)]).sum()),
            Subsystem::B => CMatrix::from_fn(n, n, |b, b2| (0..m).map(|a| self.matrix[(a * n + b, a * n + b2)]).sum()),
        };
        // hermitian/trace/PSD are inherited from the parent up to rounding
        Ok(DensityMatrix { matrix: out, bipartition: None })
    }

    /// Eigenvalues, sorted non-increasing and clipped into `[0, 1]`.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let vals = eigenvalues_desc(&self.matrix);
        if let Some(&min) = vals.last() {
            if min < -DENSITY_TOLERANCE {
                return Err(Error::InvalidDensity { invariant: "positive semidefinite", residual: -min });
            }
        }
        Ok(Spectrum { probabilities: vals.into_iter().map(|v| v.clamp(0.0, 1.0)).collect() })
    }

    pub fn entropy(&self) -> Result<f64> {
        Ok(shannon_entropy(&self.spectrum()?.probabilities))
    }

    pub fn from_file_format(file: &DensityFile) -> Result<Self> {
        let d = file.dim;
        if file.re.len() != d * d {
            return Err(Error::InvalidDensity {
                invariant: "re has dim*dim entries",
                residual: file.re.len() as f64 - (d * d) as f64,
            });
        }
        if let Some(im) = &file.im {
            if im.len() != d * d {
                return Err(Error::InvalidDensity {
                    invariant: "im has dim*dim entries",
                    residual: im.len() as f64 - (d * d) as f64,
                });
            }
        }
        let bipartition = match (file.m, file.n) {
            (Some(m), Some(n)) => Some((m, n)),
            (None, None) => None,
            _ => return Err(Error::InvalidArgument("bipartition needs both m and n".into())),
        };
        let matrix = CMatrix::from_fn(d, d, |i, j| {
            let idx = i * d + j;
            Complex64::new(file.re[idx], file.im.as_ref().map_or(0.0, |im| im[idx]))
        });
        Self::new(matrix, bipartition)
    }

    pub fn to_file_format(&self) -> DensityFile {
        let d = self.dim();
        let entries: Vec<Complex64> = (0..d * d).map(|idx| self.matrix[(idx / d, idx % d)]).collect();
        DensityFile {
            dim: d,
            m: self.bipartition.map(|b| b.0),
            n: self.bipartition.map(|b| b.1),
            re: entries.iter().map(|c| c.re).collect(),
            im: Some(entries.iter().map(|c| c.im).collect()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DensityFile = serde_json::from_str(text)?;
        Self::from_file_format(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_format()).expect("density file serializes")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// On-disk layout of a density matrix: row-major real and imaginary parts.
///
/// ```json
/// { "dim": 4, "m": 2, "n": 2, "re": [ ...16 values... ], "im": [ ...16 values... ] }
/// ```
///
/// `im` may be omitted for real matrices; `m`/`n` may be omitted together.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

/// Eigenvalues of a density operator, non-increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub probabilities: Vec<f64>,
}

impl Spectrum {
    pub fn as_point(&self) -> SymPoint {
        SymPoint(self.probabilities.clone())
    }
}

/// `−Σ p_i ln p_i` with `0 ln 0 = 0`, in nats.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    // the + 0.0 turns a -0.0 from a point mass into 0.0
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>() + 0.0
}

pub fn nats_to_bits(h: f64) -> f64 {
    h / std::f64::consts::LN_2
}

fn padded(v: &[f64], len: usize) -> impl Iterator<Item = f64> + '_ {
    v.iter().copied().chain(std::iter::repeat(0.0)).take(len)
}

/// `Σ p_i (ln p_i − ln q_i)`, after zero-padding to a common length;
/// `+∞` when `q_i = 0 < p_i`.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let mut total = 0.0;
    for (pi, qi) in padded(p, len).zip(padded(q, len)) {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return f64::INFINITY;
        }
        total += pi * (pi.ln() - qi.ln());
    }
    total.max(0.0)
}

/// `Σ |p_i − q_i|` after zero-padding.
pub fn l1_distance(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    padded(p, len).zip(padded(q, len)).map(|(a, b)| (a - b).abs()).sum()
}

/// Probability of the Young frame `λ` when measuring `ρ^{⊗k}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameWeight {
    pub lambda: Partition,
    pub weight: f64,
}

/// `tr(P_λ ρ^{⊗k}) = dim U_λ · s_λ(spec ρ)` over every `λ ⊢ k` with at most
/// `dim ρ` rows, in decreasing lexicographic order.
pub fn young_distribution(rho: &DensityMatrix, k: usize) -> Result<Vec<FrameWeight>> {
    young_distribution_of(&rho.spectrum()?, k)
}

pub fn young_distribution_of(spectrum: &Spectrum, k: usize) -> Result<Vec<FrameWeight>> {
    if k > DEFAULT_YOUNG_CAP {
        return Err(Error::CapExceeded { what: "k", value: k, cap: DEFAULT_YOUNG_CAP });
    }
    let x = spectrum.as_point();
    Ok(enumerate_partitions(k, x.len())
        .into_iter()
        .map(|lambda| {
            let s = schur_branching(&lambda, &x);
            let weight = if s == 0.0 { 0.0 } else { dim_u(&lambda).to_f64().unwrap() * s };
            FrameWeight { lambda, weight }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KwEntry {
    pub lambda: Partition,
    pub weight: f64,
    pub divergence: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KwReport {
    pub k: usize,
    pub d: usize,
    pub entries: Vec<KwEntry>,
    /// Total weight of frames with `‖λ̄ − r‖₁ ≥ eps`.
    pub outside_weight: f64,
    /// Smallest divergence over those frames (`+∞` if there are none).
    pub outside_min_divergence: f64,
    /// `(k+1)^{d(d+1)/2} exp(−k · outside_min_divergence)`.
    pub outside_bound: f64,
    pub outside_holds: bool,
    pub all_hold: bool,
}

/// Checks `tr(P_λ ρ^{⊗k}) ≤ (k+1)^{d(d−1)/2} exp(−k D(λ̄‖r))` for every frame,
/// and the aggregated bound for the frames outside the `eps`-ball around `r`.
pub fn kw_bound_check(rho: &DensityMatrix, k: usize, eps: f64) -> Result<KwReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let spectrum = rho.spectrum()?;
    let d = spectrum.probabilities.len();
    let r = &spectrum.probabilities;
    let per_frame = (k as f64 + 1.0).powf((d * (d - 1)) as f64 / 2.0);
    let mut entries = Vec::new();
    let mut outside_weight = 0.0;
    let mut outside_min = f64::INFINITY;
    for fw in young_distribution_of(&spectrum, k)? {
        let lbar = fw.lambda.normalize()?.entries;
        let divergence = kl_divergence(&lbar, r);
        let bound = per_frame * (-(k as f64) * divergence).exp();
        let holds = if divergence.is_infinite() {
            fw.weight == 0.0
        } else {
            fw.weight <= bound + BOUND_SLACK
        };
        if l1_distance(&lbar, r) >= eps {
            outside_weight += fw.weight;
            outside_min = outside_min.min(divergence);
        }
        entries.push(KwEntry { lambda: fw.lambda, weight: fw.weight, divergence, bound, holds });
    }
    let outside_bound = (k as f64 + 1.0).powf((d * (d + 1)) as f64 / 2.0) * (-(k as f64) * outside_min).exp();
    let outside_holds = outside_weight <= outside_bound + BOUND_SLACK;
    Ok(KwReport {
        k,
        d,
        all_hold: outside_holds && entries.iter().all(|e| e.holds),
        entries,
        outside_weight,
        outside_min_divergence: outside_min,
        outside_bound,
        outside_holds,
    })
}

/// Total weight of frames whose normalized shape lies strictly inside the
/// L1 ball of radius `eps` around `spec ρ`.
pub fn ball_probability(rho: &DensityMatrix, k: usize, eps: f64) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let spectrum = rho.spectrum()?;
    let mut total = 0.0;
    for fw in young_distribution_of(&spectrum, k)? {
        if l1_distance(&fw.lambda.normalize()?.entries, &spectrum.probabilities) < eps {
            total += fw.weight;
        }
    }
    Ok(total)
}

/// Best triple found for one `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatEntry {
    pub k: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub distance: f64,
    #[serde(with = "display_serde")]
    pub g: BigUint,
    /// Radius of the `λ` pre-filter when the search stopped.
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatReport {
    pub m: usize,
    pub n: usize,
    pub spectrum_ab: Vec<f64>,
    pub spectrum_a: Vec<f64>,
    pub spectrum_b: Vec<f64>,
    pub entries: Vec<CompatEntry>,
}

pub fn compat_search(rho_ab: &DensityMatrix, k_list: &[usize], eps: f64) -> Result<CompatReport> {
    compat_search_with_cap(rho_ab, k_list, eps, DEFAULT_COMPAT_CAP)
}

/// For each `k`, the triple `(λ, μ, ν)` with `g_{λμν} ≠ 0`, `λ` at most
/// `mn` rows, `μ` at most `m`, `ν` at most `n`, that minimizes
/// `‖λ̄ − r^{AB}‖₁ + ‖μ̄ − r^A‖₁ + ‖ν̄ − r^B‖₁`.
///
/// Candidates `λ` are first limited to the `eps`-ball around `r^{AB}`. The
/// radius doubles until the best distance found is below the radius (no
/// excluded `λ` could then do better) or every `λ` is admitted. Ties are
/// broken by enumeration order of `λ`, then `μ`, then `ν`.
pub fn compat_search_with_cap(rho_ab: &DensityMatrix, k_list: &[usize], eps: f64, cap: usize) -> Result<CompatReport> {
    let (m, n) = rho_ab.bipartition().ok_or(Error::MissingBipartition)?;
    if eps <= 0.0 {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if let Some(&k) = k_list.iter().find(|&&k| k > cap || k == 0) {
        return Err(if k == 0 {
            Error::InvalidArgument("k must be at least 1".into())
        } else {
            Error::TableTooLarge { k, cap }
        });
    }
    let r_ab = rho_ab.spectrum()?.probabilities;
    let r_a = rho_ab.partial_trace(Subsystem::A)?.spectrum()?.probabilities;
    let r_b = rho_ab.partial_trace(Subsystem::B)?.spectrum()?.probabilities;
    let entries = k_list
        .par_iter()
        .map(|&k| best_triple(k, m, n, &r_ab, &r_a, &r_b, eps, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompatReport { m, n, spectrum_ab: r_ab, spectrum_a: r_a, spectrum_b: r_b, entries })
}

#[allow(clippy::too_many_arguments)]
fn best_triple(
    k: usize,
    m: usize,
    n: usize,
    r_ab: &[f64],
    r_a: &[f64],
    r_b: &[f64],
    eps: f64,
    cap: usize,
) -> Result<CompatEntry> {
    let engine = KroneckerEngine::with_cap(k, cap)?;
    let with_distance = |rows: usize, r: &[f64]| -> Result<Vec<(Partition, f64)>> {
        enumerate_partitions(k, rows)
            .into_iter()
            .map(|p| {
                let d = l1_distance(&p.normalize()?.entries, r);
                Ok((p, d))
            })
            .collect()
    };
    let lambdas = with_distance(m * n, r_ab)?;
    let mus = with_distance(m, r_a)?;
    let nus = with_distance(n, r_b)?;
    let quantize = |d: f64| (d / DISTANCE_RESOLUTION).round() as i64;

    let mut radius = eps;
    loop {
        let admitted: Vec<usize> = (0..lambdas.len()).filter(|&i| lambdas[i].1 < radius).collect();
        let everything = admitted.len() == lambdas.len();
        let mut order: Vec<(i64, usize, usize, usize)> = Vec::new();
        for &a in &admitted {
            for (b, (_, mu_dist)) in mus.iter().enumerate() {
                for (c, (_, nu_dist)) in nus.iter().enumerate() {
                    let total = lambdas[a].1 + mu_dist + nu_dist;
                    order.push((quantize(total), a, b, c));
                }
            }
        }
        order.sort_unstable();
        for &(_, a, b, c) in &order {
            let g = engine.kron(&lambdas[a].0, &mus[b].0, &nus[c].0)?;
            if g.is_zero() {
                continue;
            }
            let distance = lambdas[a].1 + mus[b].1 + nus[c].1;
            if distance < radius || everything {
                return Ok(CompatEntry {
                    k,
                    lambda: lambdas[a].0.clone(),
                    mu: mus[b].0.clone(),
                    nu: nus[c].0.clone(),
                    distance,
                    g,
                    radius,
                });
            }
            break;
        }
        if everything {
            return Err(Error::NoCandidate(k));
        }
        radius *= 2.0;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyInequalityReport {
    pub s_ab: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub subadditive: bool,
    pub triangle: bool,
    pub k: usize,
    pub triple: CompatEntry,
    #[serde(with = "display_serde")]
    pub dim_lambda: BigUint,
    #[serde(with = "display_serde")]
    pub dim_mu_nu: BigUint,
    pub dimension_inequality: bool,
}

/// Slack for the entropy inequalities.
pub const ENTROPY_INEQUALITY_SLACK: f64 = 1e-10;

/// Subadditivity and the Araki–Lieb triangle inequality for `ρ^{AB}`, plus
/// `dim U_λ ≤ dim U_μ · dim U_ν` for the best compatible triple at `k`.
pub fn entropy_inequality_report(rho_ab: &DensityMatrix, k: usize) -> Result<EntropyInequalityReport> {
    let s_ab = rho_ab.entropy()?;
    let s_a = rho_ab.partial_trace(Subsystem::A)?.entropy()?;
    let s_b = rho_ab.partial_trace(Subsystem::B)?.entropy()?;
    let triple = compat_search(rho_ab, &[k], 0.5)?.entries.remove(0);
    let dim_lambda = dim_u(&triple.lambda);
    let dim_mu_nu = dim_u(&triple.mu) * dim_u(&triple.nu);
    Ok(EntropyInequalityReport {
        s_ab,
        s_a,
        s_b,
        subadditive: s_ab <= s_a + s_b + ENTROPY_INEQUALITY_SLACK,
        triangle: s_ab >= (s_a - s_b).abs() - ENTROPY_INEQUALITY_SLACK,
        k,
        dimension_inequality: dim_lambda <= dim_mu_nu,
        triple,
        dim_lambda,
        dim_mu_nu,
    })
}

/// `tr((P⊗Q) ξ) − (tr(P ξ^A) + tr(Q ξ^B) − 1)` for projectors `P` on the
/// first factor and `Q` on the second. Non-negative for all projectors.
pub fn trace_product_gap(p: &CMatrix, q: &CMatrix, xi: &DensityMatrix) -> Result<f64> {
    let xa = xi.partial_trace(Subsystem::A)?;
    let xb = xi.partial_trace(Subsystem::B)?;
    let joint = (p.kronecker(q) * xi.matrix()).trace().re;
    let marginal = (p * xa.matrix()).trace().re + (q * xb.matrix()).trace().re - 1.0;
    Ok(joint - marginal)
}
