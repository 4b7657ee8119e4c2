//! Density-matrix arguments: a JSON file path or one of the built-in forms
//!
//! - `bell`
//! - `mixed:D` or `mixed:M,N`
//! - `diag:p1,p2,...`
//! - `random:D` or `random:M,N` (Ginibre, drawn from `--seed`)

use std::path::Path;

use schur_weyl::{DensityMatrix, Error};

fn dims(rest: &str) -> Result<(usize, Option<(usize, usize)>), Error> {
    let parts: Vec<usize> = rest
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|e| Error::InvalidArgument(format!("dimension {v:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [d] if *d > 0 => Ok((*d, None)),
        [m, n] if *m > 0 && *n > 0 => Ok((m * n, Some((*m, *n)))),
        _ => Err(Error::InvalidArgument(format!("expected D or M,N with positive entries, got {rest:?}"))),
    }
}

fn split(rho: DensityMatrix, bip: Option<(usize, usize)>) -> Result<DensityMatrix, Error> {
    match bip {
        Some((m, n)) => rho.with_bipartition(m, n),
        None => Ok(rho),
    }
}

pub fn load(spec: &str, seed: u64) -> Result<DensityMatrix, Error> {
    if spec == "bell" {
        return Ok(DensityMatrix::bell());
    }
    if let Some(rest) = spec.strip_prefix("mixed:") {
        let (d, bip) = dims(rest)?;
        return split(DensityMatrix::maximally_mixed(d), bip);
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let (d, bip) = dims(rest)?;
        return split(DensityMatrix::random(d, seed), bip);
    }
    if let Some(rest) = spec.strip_prefix("diag:") {
        let probs: Vec<f64> = rest
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| Error::InvalidArgument(format!("probability {v:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        return DensityMatrix::diagonal(&probs);
    }
    DensityMatrix::read(Path::new(spec)).map_err(|e| match e {
        Error::Io(io) => Error::InvalidArgument(format!("cannot read {spec}: {io}")),
        other => other,
    })
}
