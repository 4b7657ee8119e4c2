//! Dimensions of the irreducible `S_k` module `U_λ` (hook-length formula)
//! and the `SU(d)` module `V_λ` (Weyl's product formula), with the standard
//! upper and lower bounds used by the spectrum-estimation argument.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::display_serde;
use crate::partitions::{factorial, Partition};

/// `dim U_λ = k! / ∏ hook(i)`, the number of standard Young tableaux.
pub fn dim_u(lambda: &Partition) -> BigUint {
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            hooks *= BigUint::from(lambda.hook(i, j));
        }
    }
    factorial(lambda.weight()) / hooks
}

/// `dim V_λ` for `SU(d)`: `∏_{i<j} (λ_i − λ_j − i + j) / ∏_{m<d} m!`, with
/// `λ` padded by zeros to `d` rows. Zero when `λ` has more than `d` rows.
pub fn dim_v(lambda: &Partition, d: usize) -> BigUint {
    if lambda.len() > d {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    for i in 0..d {
        for j in i + 1..d {
            let diff = lambda.part(i) as u64 + (j - i) as u64 - lambda.part(j) as u64;
            num *= BigUint::from(diff);
        }
    }
    let denom = (1..d).fold(BigUint::one(), |acc, m| acc * factorial(m));
    num / denom
}

/// Natural logarithm of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact dimensions of `U_λ` and `V_λ` together with the hook and Weyl
/// bounds and whether each sandwich holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub lambda: Partition,
    pub d: usize,
    #[serde(with = "display_serde")]
    pub dim_u: BigUint,
    #[serde(with = "display_serde")]
    pub dim_v: BigUint,
    /// `(k+1)^{d(d-1)/2}`
    #[serde(with = "display_serde")]
    pub v_upper: BigUint,
    /// `k! / ∏_i (λ_i + d − i)!`
    #[serde(with = "display_serde")]
    pub u_lower: BigRational,
    /// `k! / ∏_i λ_i!`
    #[serde(with = "display_serde")]
    pub u_upper: BigRational,
    pub v_bound_holds: bool,
    pub u_bounds_hold: bool,
}

/// Computes the report for `lambda` against `SU(d)`.
///
/// The lower bound on `dim U_λ` needs at least as many rows as `λ` has; when
/// `λ` is taller than `d` the bound is taken with `d` replaced by the row
/// count (`V_λ` vanishes there anyway).
pub fn bounds(lambda: &Partition, d: usize) -> DimensionReport {
    let k = lambda.weight();
    let du = dim_u(lambda);
    let dv = dim_v(lambda, d);
    let exponent = (d * d.saturating_sub(1) / 2) as u32;
    let v_upper = BigUint::from(k + 1).pow(exponent);

    let rows = d.max(lambda.len());
    let kfact = BigInt::from(factorial(k));
    let lower_denom = (0..rows).fold(BigUint::one(), |acc, i| {
        acc * factorial(lambda.part(i) as usize + rows - 1 - i)
    });
    let upper_denom = lambda
        .parts()
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * factorial(p as usize));
    let u_lower = BigRational::new(kfact.clone(), BigInt::from(lower_denom));
    let u_upper = BigRational::new(kfact, BigInt::from(upper_denom));
    let du_rat = BigRational::from_integer(BigInt::from(du.clone()));

    DimensionReport {
        lambda: lambda.clone(),
        d,
        v_bound_holds: dv <= v_upper,
        u_bounds_hold: u_lower <= du_rat && du_rat <= u_upper,
        dim_u: du,
        dim_v: dv,
        v_upper,
        u_lower,
        u_upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::quantum::shannon_entropy;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dim_u_examples() {
        assert_eq!(dim_u(&p("2,1")), BigUint::from(2u32));
        assert_eq!(dim_u(&p("9")), BigUint::one());
        assert_eq!(dim_u(&p("2,2")), BigUint::from(2u32));
        assert_eq!(dim_u(&p("3,2,1")), BigUint::from(16u32));
    }

    /// Counts standard Young tableaux by removing the box holding `k`.
    fn count_syt(parts: &mut Vec<u32>) -> u64 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let corner = parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
            if corner {
                parts[i] -= 1;
                total += count_syt(parts);
                parts[i] += 1;
            }
        }
        total
    }

    #[test]
    fn hook_formula_counts_tableaux() {
        for k in 1..=9 {
            for lam in enumerate_partitions(k, k) {
                let mut parts = lam.parts().to_vec();
                assert_eq!(dim_u(&lam), BigUint::from(count_syt(&mut parts)), "{lam}");
            }
        }
    }

    #[test]
    fn dim_v_examples() {
        assert_eq!(dim_v(&p("2,1"), 2), BigUint::from(2u32));
        assert_eq!(dim_v(&p("1,1,1"), 2), BigUint::zero());
        assert_eq!(dim_v(&p("3"), 2), BigUint::from(4u32));
        // symmetric and antisymmetric powers
        assert_eq!(dim_v(&p("3"), 3), BigUint::from(10u32));
        assert_eq!(dim_v(&p("1,1"), 3), BigUint::from(3u32));
        assert_eq!(dim_v(&Partition::empty(), 3), BigUint::one());
    }

    #[test]
    fn schur_weyl_completeness() {
        for d in 1..=4usize {
            for k in 1..=10usize {
                let total: BigUint = enumerate_partitions(k, d)
                    .iter()
                    .map(|lam| dim_u(lam) * dim_v(lam, d))
                    .sum();
                assert_eq!(total, BigUint::from(d).pow(k as u32), "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn dim_u_conjugation_symmetry() {
        for k in 1..=12 {
            for lam in enumerate_partitions(k, k) {
                assert_eq!(dim_u(&lam), dim_u(&lam.conjugate()));
            }
        }
    }

    #[test]
    fn bound_examples() {
        let r = bounds(&p("2,1"), 2);
        assert_eq!(r.v_upper, BigUint::from(4u32));
        assert_eq!(r.dim_v, BigUint::from(2u32));
        assert!(r.v_bound_holds && r.u_bounds_hold);

        let r = bounds(&p("5"), 1);
        assert_eq!(r.v_upper, BigUint::one());
        assert_eq!(r.dim_v, BigUint::one());
        assert_eq!(r.u_lower, BigRational::one());
        assert_eq!(r.u_upper, BigRational::one());

        let r = bounds(&p("2,2"), 2);
        assert_eq!(r.u_upper, BigRational::from_integer(BigInt::from(6)));
        assert_eq!(r.dim_u, BigUint::from(2u32));
    }

    #[test]
    fn bound_sandwich_exhaustive() {
        for k in 1..=12 {
            for d in 1..=4 {
                for lam in enumerate_partitions(k, k) {
                    let r = bounds(&lam, d);
                    assert!(r.u_bounds_hold, "{lam} d={d}");
                    assert!(r.v_bound_holds, "{lam} d={d}");
                }
            }
        }
    }

    #[test]
    fn log_dimension_approaches_entropy() {
        let base = p("2,1");
        let h = shannon_entropy(&base.normalize().unwrap().entries);
        let gaps: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&n| {
                let lam = base.stretch(n).unwrap();
                (ln_biguint(&dim_u(&lam)) / (n as f64 * 3.0) - h).abs()
            })
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "{gaps:?}");
        }
    }

    #[test]
    fn ln_of_large_integers() {
        let big = factorial(400);
        let direct: f64 = (1..=400).map(|i| (i as f64).ln()).sum();
        assert!((ln_biguint(&big) - direct).abs() < 1e-9 * direct);
    }
}
