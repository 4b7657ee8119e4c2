//! Kronecker coefficients `g_{λμν}`, the multiplicity of `U_λ` in
//! `U_μ ⊗ U_ν`, from the class-weighted character sum
//! `g = (1/k!) Σ_τ |τ| χ_λ(τ) χ_μ(τ) χ_ν(τ)`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{CharacterTable, DEFAULT_TABLE_CAP};
use crate::dimensions::dim_u;
use crate::display_serde;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, factorial, Partition};
use crate::quantum::shannon_entropy;

/// Default largest degree for Kronecker evaluation.
pub const DEFAULT_KRON_CAP: usize = 12;

/// One coefficient together with its labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KroneckerTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    #[serde(with = "display_serde")]
    pub g: BigUint,
}

/// Kronecker coefficients of a fixed degree, backed by an immutable
/// character table.
#[derive(Clone, Debug)]
pub struct KroneckerEngine {
    table: Arc<CharacterTable>,
    sizes: Vec<BigInt>,
    kfact: BigInt,
}

impl KroneckerEngine {
    pub fn new(k: usize) -> Result<Self> {
        Self::with_cap(k, DEFAULT_KRON_CAP)
    }

    pub fn with_cap(k: usize, cap: usize) -> Result<Self> {
        if k > cap {
            return Err(Error::TableTooLarge { k, cap });
        }
        let table = CharacterTable::build_with_cap(k, cap.max(DEFAULT_TABLE_CAP))?;
        Ok(Self::from_table(Arc::new(table)))
    }

    pub fn from_table(table: Arc<CharacterTable>) -> Self {
        let sizes = table.class_sizes().iter().map(|s| BigInt::from(s.clone())).collect();
        let kfact = BigInt::from(factorial(table.degree()));
        Self { table, sizes, kfact }
    }

    pub fn degree(&self) -> usize {
        self.table.degree()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    fn index(&self, p: &Partition) -> Result<usize> {
        self.table
            .row_index(p)
            .ok_or(Error::IncomparableWeights(p.weight(), self.degree()))
    }

    /// `Σ_τ |τ| χ_λ(τ) χ_μ(τ) χ_ν(τ)`, before division by `k!`.
    pub fn raw_class_sum(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigInt> {
        let (a, b, c) = (self.index(lambda)?, self.index(mu)?, self.index(nu)?);
        Ok(self.raw_by_index(a, b, c))
    }

    fn raw_by_index(&self, a: usize, b: usize, c: usize) -> BigInt {
        let v = self.table.values();
        let mut sum = BigInt::zero();
        for (t, size) in self.sizes.iter().enumerate() {
            let x = &v[a][t];
            if x.is_zero() {
                continue;
            }
            let y = &v[b][t];
            let z = &v[c][t];
            if y.is_zero() || z.is_zero() {
                continue;
            }
            sum += size * x * y * z;
        }
        sum
    }

    fn divide(&self, raw: BigInt, labels: impl FnOnce() -> String) -> Result<BigUint> {
        let (q, r) = raw.div_rem(&self.kfact);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!(
                "class sum for {} not divisible by {}!",
                labels(),
                self.degree()
            )));
        }
        match q.sign() {
            Sign::Minus => Err(Error::Inconsistent(format!("negative multiplicity for {}", labels()))),
            _ => Ok(q.magnitude().clone()),
        }
    }

    /// Exact `g_{λμν}`.
    pub fn kron(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
        let raw = self.raw_class_sum(lambda, mu, nu)?;
        self.divide(raw, || format!("({lambda}), ({mu}), ({nu})"))
    }

    fn kron_by_index(&self, a: usize, b: usize, c: usize) -> Result<BigUint> {
        let rows = self.table.rows();
        // tensoring with the trivial representation is the identity
        let trivial = 0;
        if c == trivial {
            return Ok(if a == b { BigUint::one() } else { BigUint::zero() });
        }
        if b == trivial {
            return Ok(if a == c { BigUint::one() } else { BigUint::zero() });
        }
        if a == trivial {
            return Ok(if b == c { BigUint::one() } else { BigUint::zero() });
        }
        let raw = self.raw_by_index(a, b, c);
        self.divide(raw, || format!("({}), ({}), ({})", rows[a], rows[b], rows[c]))
    }

    /// All triples with `g ≠ 0` whose rows are bounded by `max_rows`
    /// (for `λ`, `μ`, `ν` respectively), ordered by `λ`, then `μ`, then `ν`
    /// in decreasing lexicographic order.
    pub fn nonzero_triples(&self, max_rows: (usize, usize, usize)) -> Result<Vec<KroneckerTriple>> {
        let k = self.degree();
        let idx = |rows: usize| -> Vec<usize> {
            enumerate_partitions(k, rows)
                .iter()
                .map(|p| self.table.row_index(p).unwrap())
                .collect()
        };
        let (ls, ms, ns) = (idx(max_rows.0), idx(max_rows.1), idx(max_rows.2));
        let mut triples = Vec::with_capacity(ls.len() * ms.len() * ns.len());
        for &a in &ls {
            for &b in &ms {
                for &c in &ns {
                    triples.push((a, b, c));
                }
            }
        }
        let values = triples
            .par_iter()
            .map(|&(a, b, c)| self.kron_by_index(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        let rows = self.table.rows();
        Ok(triples
            .into_iter()
            .zip(values)
            .filter(|(_, g)| !g.is_zero())
            .map(|((a, b, c), g)| KroneckerTriple {
                lambda: rows[a].clone(),
                mu: rows[b].clone(),
                nu: rows[c].clone(),
                g,
            })
            .collect())
    }

    /// `dim U_μ · dim U_ν == Σ_λ g_{λμν} dim U_λ`.
    pub fn cg_dimension_check(&self, mu: &Partition, nu: &Partition) -> Result<bool> {
        let lhs = dim_u(mu) * dim_u(nu);
        let mut rhs = BigUint::zero();
        for lam in self.table.rows() {
            let g = self.kron(lam, mu, nu)?;
            if !g.is_zero() {
                rhs += g * dim_u(lam);
            }
        }
        Ok(lhs == rhs)
    }
}

/// Exact `g_{λμν}` with a fresh engine and the default cap.
pub fn kron(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let k = lambda.weight();
    if mu.weight() != k || nu.weight() != k {
        return Err(Error::IncomparableWeights(k, if mu.weight() != k { mu.weight() } else { nu.weight() }));
    }
    KroneckerEngine::new(k)?.kron(lambda, mu, nu)
}

/// Nonzero triples of degree `k` under the row restrictions.
pub fn kron_table(k: usize, max_rows: (usize, usize, usize)) -> Result<Vec<KroneckerTriple>> {
    KroneckerEngine::new(k)?.nonzero_triples(max_rows)
}

/// Clebsch–Gordan dimension identity for `U_μ ⊗ U_ν`.
pub fn cg_dimension_check(mu: &Partition, nu: &Partition) -> Result<bool> {
    if mu.weight() != nu.weight() {
        return Err(Error::IncomparableWeights(mu.weight(), nu.weight()));
    }
    KroneckerEngine::new(mu.weight())?.cg_dimension_check(mu, nu)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchEntry {
    pub factor: usize,
    #[serde(with = "display_serde")]
    pub g: BigUint,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub entries: Vec<StretchEntry>,
    pub all_nonzero: bool,
}

/// Evaluates `g_{Nλ,Nμ,Nν}` for `N = 1..=max_factor`. Requires `g_{λμν} ≠ 0`.
pub fn stretch_nonvanishing_check(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    max_factor: usize,
    cap: usize,
) -> Result<StretchReport> {
    let k = lambda.weight();
    if max_factor == 0 {
        return Err(Error::InvalidArgument("stretch bound must be at least 1".into()));
    }
    if max_factor * k > cap {
        return Err(Error::CapExceeded { what: "N_max * k", value: max_factor * k, cap });
    }
    let base = KroneckerEngine::with_cap(k, cap)?.kron(lambda, mu, nu)?;
    if base.is_zero() {
        return Err(Error::InvalidArgument(format!("g_({lambda}),({mu}),({nu}) is zero")));
    }
    let mut entries = Vec::with_capacity(max_factor);
    for n in 1..=max_factor {
        let s = |p: &Partition| p.stretch(n as i64);
        let g = KroneckerEngine::with_cap(n * k, cap)?.kron(&s(lambda)?, &s(mu)?, &s(nu)?)?;
        entries.push(StretchEntry { factor: n, nonzero: !g.is_zero(), g });
    }
    Ok(StretchReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: nu.clone(),
        all_nonzero: entries.iter().all(|e| e.nonzero),
        entries,
    })
}

/// One assignment `H(first) ≤ H(second) + H(third)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyComparison {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyTripleReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    #[serde(with = "display_serde")]
    pub g: BigUint,
    /// Empty when `g = 0`; otherwise the three cyclic assignments starting
    /// with `H(λ) ≤ H(μ) + H(ν)`.
    pub comparisons: Vec<EntropyComparison>,
    pub holds: bool,
}

/// Entropy slack for [`entropy_triple_check`].
pub const ENTROPY_SLACK: f64 = 1e-12;

pub fn entropy_triple_report(
    engine: &KroneckerEngine,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<EntropyTripleReport> {
    let g = engine.kron(lambda, mu, nu)?;
    let mut comparisons = Vec::new();
    if !g.is_zero() {
        let h = |p: &Partition| -> Result<f64> { Ok(shannon_entropy(&p.normalize()?.entries)) };
        let (hl, hm, hn) = (h(lambda)?, h(mu)?, h(nu)?);
        for (lhs, rhs) in [(hl, hm + hn), (hm, hn + hl), (hn, hl + hm)] {
            comparisons.push(EntropyComparison { lhs, rhs, holds: lhs <= rhs + ENTROPY_SLACK });
        }
    }
    Ok(EntropyTripleReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: nu.clone(),
        holds: comparisons.iter().all(|c| c.holds),
        g,
        comparisons,
    })
}

/// `g ≠ 0 ⇒ H(λ̄) ≤ H(μ̄) + H(ν̄)`, in all three cyclic assignments.
pub fn entropy_triple_check(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<EntropyTripleReport> {
    let k = lambda.weight();
    if mu.weight() != k || nu.weight() != k {
        return Err(Error::IncomparableWeights(k, if mu.weight() != k { mu.weight() } else { nu.weight() }));
    }
    entropy_triple_report(&KroneckerEngine::new(k)?, lambda, mu, nu)
}
