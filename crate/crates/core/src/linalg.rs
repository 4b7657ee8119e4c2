//! Small dense complex linear algebra: a cyclic Jacobi eigen-solver for
//! Hermitian matrices and seeded random states, unitaries and projectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

/// Stop once the off-diagonal Frobenius mass drops below this (scaled by
/// `max(1, ‖A‖_F)`).
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigh {
    /// Unsorted, in the order of the columns of `vectors`.
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
    pub converged: bool,
}

fn off_diagonal_mass(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi method. Each rotation first removes the phase of the pivot
/// `a_pq`, then applies a real Givens rotation that zeroes it. Only the
/// Hermitian part of `a` is used.
pub fn eigh(a: &CMatrix) -> Eigh {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigh needs a square matrix");
    let mut m = (a + a.adjoint()).scale(0.5);
    let mut v = CMatrix::identity(n, n);
    let threshold = JACOBI_TOLERANCE * m.norm().max(1.0);
    let mut sweeps = 0;
    let mut converged = off_diagonal_mass(&m) < threshold;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_mass(&m) < threshold;
    }
    Eigh { values: (0..n).map(|i| m[(i, i)].re).collect(), vectors: v, sweeps, converged }
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let g = m[(p, q)];
    let mag = g.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = g / mag; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = 0.5 * (2.0 * mag).atan2(aqq - app);
    let (s, c) = theta.sin_cos();
    // V = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
    let v_pp = Complex64::new(c, 0.0);
    let v_pq = Complex64::new(s, 0.0);
    let v_qp = -phase.conj() * s;
    let v_qq = phase.conj() * c;
    let n = m.nrows();
    for i in 0..n {
        let (x, y) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = x * v_pp + y * v_qp;
        m[(i, q)] = x * v_pq + y * v_qq;
        let (x, y) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = x * v_pp + y * v_qp;
        v[(i, q)] = x * v_pq + y * v_qq;
    }
    for j in 0..n {
        let (x, y) = (m[(p, j)], m[(q, j)]);
        m[(p, j)] = v_pp.conj() * x + v_qp.conj() * y;
        m[(q, j)] = v_pq.conj() * x + v_qq.conj() * y;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}

/// Eigenvalues sorted non-increasing.
pub fn eigenvalues_desc(a: &CMatrix) -> Vec<f64> {
    let mut vals = eigh(a).values;
    vals.sort_by(|x, y| y.total_cmp(x));
    vals
}

/// Largest entry of `|A − A†|`.
pub fn hermitian_residual(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `k`-fold tensor power.
pub fn tensor_power(a: &CMatrix, k: usize) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for _ in 0..k {
        out = out.kronecker(a);
    }
    out
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G† / tr(G G†)` for a complex Ginibre matrix `G`.
pub fn random_density_matrix(d: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    rho / tr
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with
/// the phases of `R`'s diagonal absorbed into `Q`.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Orthogonal projector of random rank onto a Haar-random subspace.
pub fn random_projector(d: usize, rng: &mut impl Rng) -> CMatrix {
    let rank = rng.random_range(0..=d);
    let u = random_unitary(d, rng);
    let cols = u.columns(0, rank);
    cols * cols.adjoint()
}
