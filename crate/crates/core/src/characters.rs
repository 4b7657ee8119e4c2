//! Irreducible characters of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule: strip a border strip whose
//! length equals the largest remaining cycle, with sign `(-1)^{height}`, and
//! recurse. Border strips are found on the beta-set (first-column hook
//! lengths) of the frame, where removing a strip of length `r` is moving one
//! bead down by `r` onto an empty position.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{cycle_types, enumerate_partitions, factorial, CycleType, Partition};

/// Default largest degree for a full character table.
pub const DEFAULT_TABLE_CAP: usize = 20;

/// Memoizing Murnaghan–Nakayama evaluator. Subresults are keyed on the
/// remaining frame and the remaining cycle lengths, so one evaluator can be
/// reused across many characters of the same or smaller degree.
#[derive(Default)]
pub struct CharacterEvaluator {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn character(&mut self, lambda: &Partition, tau: &CycleType) -> Result<BigInt> {
        if lambda.weight() != tau.degree() {
            return Err(Error::IncomparableWeights(lambda.weight(), tau.degree()));
        }
        Ok(self.eval(lambda.parts(), tau.partition().parts()))
    }

    fn eval(&mut self, lambda: &[u32], cycles: &[u32]) -> BigInt {
        if cycles.is_empty() {
            return BigInt::one();
        }
        // a single cycle left: nonzero only for hooks
        if cycles.len() == 1 {
            return hook_value(lambda);
        }
        let key = (lambda.to_vec(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r = cycles[0];
        let rest = &cycles[1..];
        let mut total = BigInt::zero();
        for (smaller, negative) in remove_border_strips(lambda, r) {
            let v = self.eval(&smaller, rest);
            if negative {
                total -= v;
            } else {
                total += v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Character on a single cycle of full length: `(-1)^{leg}` for a hook
/// `(a, 1^b)`, zero otherwise.
fn hook_value(lambda: &[u32]) -> BigInt {
    if lambda.len() <= 1 || lambda[1..].iter().all(|&p| p == 1) {
        let leg = lambda.len().saturating_sub(1);
        if leg.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    } else {
        BigInt::zero()
    }
}

/// Every frame obtained by deleting a border strip of length `r`, with a flag
/// that is `true` when the strip has odd height.
pub(crate) fn remove_border_strips(lambda: &[u32], r: u32) -> Vec<(Vec<u32>, bool)> {
    let rows = lambda.len();
    let beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (rows - 1 - i) as u32)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (rows - 1 - j) as u32)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        out.push((parts, crossed % 2 == 1));
    }
    out
}

/// `χ_λ(τ)` with a fresh evaluator.
pub fn character(lambda: &Partition, tau: &CycleType) -> Result<BigInt> {
    CharacterEvaluator::new().character(lambda, tau)
}

/// Full character table of `S_k`: rows are irreducibles, columns are
/// conjugacy classes, both in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    degree: usize,
    rows: Vec<Partition>,
    classes: Vec<CycleType>,
    sizes: Vec<BigUint>,
    values: Vec<Vec<BigInt>>,
    row_index: HashMap<Partition, usize>,
}

impl CharacterTable {
    /// Builds the table for `S_k` with the default cap.
    pub fn build(k: usize) -> Result<Self> {
        Self::build_with_cap(k, DEFAULT_TABLE_CAP)
    }

    /// Columns are evaluated in parallel, each with its own evaluator, so the
    /// result does not depend on scheduling.
    pub fn build_with_cap(k: usize, cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("character table degree must be at least 1".into()));
        }
        if k > cap {
            return Err(Error::TableTooLarge { k, cap });
        }
        let rows = enumerate_partitions(k, k);
        let classes = cycle_types(k);
        let columns: Vec<Vec<BigInt>> = classes
            .par_iter()
            .map(|tau| {
                let mut ev = CharacterEvaluator::new();
                rows.iter().map(|lam| ev.eval(lam.parts(), tau.partition().parts())).collect()
            })
            .collect();
        let values = (0..rows.len())
            .map(|i| columns.iter().map(|col| col[i].clone()).collect())
            .collect();
        let sizes = classes.iter().map(CycleType::class_size).collect();
        Ok(Self::assemble(k, rows, classes, sizes, values))
    }

    fn assemble(
        degree: usize,
        rows: Vec<Partition>,
        classes: Vec<CycleType>,
        sizes: Vec<BigUint>,
        values: Vec<Vec<BigInt>>,
    ) -> Self {
        let row_index = rows.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self { degree, rows, classes, sizes, values, row_index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> &[Partition] {
        &self.rows
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn row_index(&self, lambda: &Partition) -> Option<usize> {
        self.row_index.get(lambda).copied()
    }

    /// Character values of `lambda` across all classes.
    pub fn row(&self, lambda: &Partition) -> Option<&[BigInt]> {
        self.row_index(lambda).map(|i| self.values[i].as_slice())
    }

    pub fn value(&self, row: usize, class: usize) -> &BigInt {
        &self.values[row][class]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// Index of the identity class `(1^k)`, always the last column.
    pub fn identity_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// `Σ_τ |τ| χ_λ(τ) χ_μ(τ)` for two rows.
    pub fn inner_product_raw(&self, a: usize, b: usize) -> BigInt {
        self.sizes
            .iter()
            .zip(self.values[a].iter().zip(&self.values[b]))
            .map(|(s, (x, y))| BigInt::from(s.clone()) * x * y)
            .sum()
    }

    /// First orthogonality: the raw inner product of rows `a`, `b` is
    /// `k! δ_ab`, exactly.
    pub fn verify_orthogonality(&self) -> bool {
        let kfact = BigInt::from(factorial(self.degree));
        (0..self.rows.len()).all(|a| {
            (a..self.rows.len()).all(|b| {
                let ip = self.inner_product_raw(a, b);
                if a == b {
                    ip == kfact
                } else {
                    ip.is_zero()
                }
            })
        })
    }

    /// Plain-text serialization; see [`TableCache`].
    pub fn to_text(&self) -> String {
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(";");
        let mut out = String::new();
        writeln!(out, "# schur-weyl character table v1").unwrap();
        writeln!(out, "degree {}", self.degree).unwrap();
        writeln!(out, "classes {}", join(&mut self.classes.iter().map(|c| c.to_string()))).unwrap();
        writeln!(out, "sizes {}", join(&mut self.sizes.iter().map(|c| c.to_string()))).unwrap();
        for (lam, vals) in self.rows.iter().zip(&self.values) {
            let vals: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            writeln!(out, "row {}: {}", lam, vals.join(" ")).unwrap();
        }
        out
    }

    /// Parses [`CharacterTable::to_text`] output. Labels must match the
    /// canonical enumeration and the values must satisfy orthogonality.
    pub fn from_text(text: &str) -> std::result::Result<Self, String> {
        let mut degree = None;
        let mut classes = None;
        let mut sizes = None;
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (tag, rest) = line.split_once(' ').ok_or_else(|| format!("bad line {line:?}"))?;
            match tag {
                "degree" => degree = Some(rest.trim().parse::<usize>().map_err(|e| e.to_string())?),
                "classes" => {
                    classes = Some(
                        rest.split(';')
                            .map(|c| c.parse::<CycleType>().map_err(|e| e.to_string()))
                            .collect::<std::result::Result<Vec<_>, _>>()?,
                    )
                }
                "sizes" => {
                    sizes = Some(
                        rest.split(';')
                            .map(|c| c.trim().parse::<BigUint>().map_err(|e| e.to_string()))
                            .collect::<std::result::Result<Vec<_>, _>>()?,
                    )
                }
                "row" => {
                    let (label, vals) = rest.split_once(':').ok_or("row without ':'")?;
                    rows.push(label.parse::<Partition>().map_err(|e| e.to_string())?);
                    values.push(
                        vals.split_whitespace()
                            .map(|v| v.parse::<BigInt>().map_err(|e| e.to_string()))
                            .collect::<std::result::Result<Vec<_>, _>>()?,
                    );
                }
                other => return Err(format!("unknown tag {other:?}")),
            }
        }
        let degree = degree.ok_or("missing degree")?;
        let classes = classes.ok_or("missing classes")?;
        let sizes = sizes.ok_or("missing sizes")?;
        if rows != enumerate_partitions(degree, degree) {
            return Err("row labels do not match the canonical enumeration".into());
        }
        if classes != cycle_types(degree) {
            return Err("class labels do not match the canonical enumeration".into());
        }
        if sizes.iter().zip(&classes).any(|(s, c)| *s != c.class_size()) {
            return Err("class sizes are wrong".into());
        }
        if values.iter().any(|r| r.len() != classes.len()) {
            return Err("ragged value rows".into());
        }
        let table = Self::assemble(degree, rows, classes, sizes, values);
        if !table.verify_orthogonality() {
            return Err("orthogonality check failed".into());
        }
        Ok(table)
    }
}

/// Character table of `S_k` with the default cap.
pub fn character_table(k: usize) -> Result<CharacterTable> {
    CharacterTable::build(k)
}

/// On-disk cache of character tables, one file `chartable-<k>.txt` per
/// degree. Files are re-verified against orthogonality when read.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
    cap: usize,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into(), cap: DEFAULT_TABLE_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn path_for(&self, k: usize) -> PathBuf {
        self.dir.join(format!("chartable-{k}.txt"))
    }

    pub fn load(&self, k: usize) -> Result<Option<CharacterTable>> {
        let path = self.path_for(k);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let table = CharacterTable::from_text(&text).map_err(|reason| cache_err(&path, reason))?;
        if table.degree() != k {
            return Err(cache_err(&path, format!("holds degree {}", table.degree())));
        }
        Ok(Some(table))
    }

    pub fn store(&self, table: &CharacterTable) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        fs::write(self.path_for(table.degree()), table.to_text())?;
        Ok(())
    }

    /// Loads a cached table, or builds and stores it.
    pub fn get_or_build(&self, k: usize) -> Result<CharacterTable> {
        if let Some(t) = self.load(k)? {
            return Ok(t);
        }
        let table = CharacterTable::build_with_cap(k, self.cap)?;
        self.store(&table)?;
        Ok(table)
    }
}

fn cache_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Cache { path: path.display().to_string(), reason: reason.into() }
}
