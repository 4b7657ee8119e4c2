//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_weyl::dimensions::{dim_u, dim_v};
use schur_weyl::kronecker::{entropy_triple_report, KroneckerEngine};
use schur_weyl::linalg::random_projector;
use schur_weyl::partitions::{enumerate_partitions, factorial, Partition};
use schur_weyl::quantum::{
    ball_probability, compat_search, entropy_inequality_report, kw_bound_check, trace_product_gap,
    young_distribution, DensityMatrix,
};
use schur_weyl::symfunc::{content_expansion_residual, schur, SymPoint};
use schur_weyl::tensor_oracle::{exact_trace, overlap_check};
use schur_weyl::CharacterTable;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn completeness() -> Outcome {
    let mut checked = 0;
    for d in 1..=4usize {
        for k in 1..=10usize {
            let total: BigUint = enumerate_partitions(k, usize::MAX)
                .iter()
                .map(|l| dim_u(l) * dim_v(l, d))
                .sum();
            ensure(total == BigUint::from(d).pow(k as u32), || format!("d={d} k={k}: sum {total}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (d, k) pairs"))
}

fn orthogonality() -> Outcome {
    for k in 1..=10 {
        let t = CharacterTable::build(k).map_err(|e| e.to_string())?;
        let kf = factorial(k);
        for a in 0..t.rows().len() {
            for b in 0..t.rows().len() {
                let ip = t.inner_product_raw(a, b);
                let want = if a == b { kf.clone().into() } else { Zero::zero() };
                ensure(ip == want, || format!("k={k} rows {a},{b}: {ip}"))?;
            }
        }
    }
    Ok("k = 1..=10, all row pairs".into())
}

fn kronecker_integrality() -> Outcome {
    let mut triples = 0;
    for k in 1..=6 {
        let e = KroneckerEngine::new(k).map_err(|e| e.to_string())?;
        let ps = enumerate_partitions(k, usize::MAX);
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    let g = e.kron(a, b, c).map_err(|e| format!("k={k}: {e}"))?;
                    for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        let h = e.kron(x, y, z).map_err(|e| e.to_string())?;
                        ensure(h == g, || format!("asymmetry at ({a}),({b}),({c})"))?;
                    }
                    triples += 1;
                }
            }
        }
    }
    for k in 1..=8 {
        let e = KroneckerEngine::new(k).map_err(|e| e.to_string())?;
        let kf = num_bigint::BigInt::from(factorial(k));
        let ps = enumerate_partitions(k, usize::MAX);
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    let raw = e.raw_class_sum(a, b, c).map_err(|e| e.to_string())?;
                    ensure((&raw % &kf).is_zero(), || format!("k={k}: class sum {raw} at ({a}),({b}),({c})"))?;
                }
            }
        }
    }
    Ok(format!("{triples} triples symmetric for k<=6, divisibility for k<=8"))
}

fn clebsch_gordan() -> Outcome {
    let mut pairs = 0;
    for k in 1..=7 {
        let e = KroneckerEngine::new(k).map_err(|e| e.to_string())?;
        let ps = enumerate_partitions(k, usize::MAX);
        for mu in &ps {
            for nu in &ps {
                ensure(e.cg_dimension_check(mu, nu).map_err(|e| e.to_string())?, || {
                    format!("({mu}) x ({nu})")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn content_expansion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = SymPoint::new(vec![rng.random(), rng.random()]).unwrap();
        let y = SymPoint::new(vec![rng.random(), rng.random()]).unwrap();
        for k in 1..=5 {
            let e = KroneckerEngine::new(k).map_err(|e| e.to_string())?;
            for lambda in enumerate_partitions(k, 4) {
                let r = content_expansion_residual(&e, &lambda, &x, &y).map_err(|e| e.to_string())?;
                worst = worst.max(r);
            }
        }
    }
    ensure(worst <= 1e-8, || format!("worst residual {worst:e}"))?;
    Ok(format!("worst residual {worst:.2e}"))
}

fn keyl_werner() -> Outcome {
    let mut frames = 0;
    for d in [2, 3] {
        for seed in 0..10 {
            let rho = DensityMatrix::random(d, 600 + seed);
            for k in 1..=10 {
                let rep = kw_bound_check(&rho, k, 0.1).map_err(|e| e.to_string())?;
                ensure(rep.all_hold, || format!("d={d} seed={seed} k={k}"))?;
                frames += rep.entries.len();
            }
        }
    }
    let rep = kw_bound_check(&DensityMatrix::maximally_mixed(2), 2, 0.1).map_err(|e| e.to_string())?;
    let top = rep.entries.iter().find(|e| e.lambda == p("2")).unwrap();
    ensure((top.weight - 0.75).abs() < 1e-12 && (top.bound - 0.75).abs() < 1e-12, || {
        format!("equality case {} vs {}", top.weight, top.bound)
    })?;
    Ok(format!("{frames} frames; equality case 0.75 == 0.75"))
}

fn oracle_agreement() -> Outcome {
    let mut worst = 0.0f64;
    for (d, kmax) in [(2usize, 6usize), (3, 4)] {
        for seed in 0..5 {
            let rho = DensityMatrix::random(d, 700 + seed);
            let x = rho.spectrum().unwrap().as_point();
            for k in 1..=kmax {
                for lambda in enumerate_partitions(k, usize::MAX) {
                    let exact = exact_trace(&rho, &lambda).map_err(|e| e.to_string())?;
                    let formula = dim_u(&lambda).to_f64().unwrap() * schur(&lambda, &x);
                    worst = worst.max((exact - formula).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-10, || format!("worst gap {worst:e}"))?;
    Ok(format!("worst gap {worst:.2e}"))
}

fn overlap_equivalence() -> Outcome {
    let mut triples = 0;
    for k in 1..=3 {
        for lambda in enumerate_partitions(k, 4) {
            for mu in enumerate_partitions(k, 2) {
                for nu in enumerate_partitions(k, 2) {
                    let r = overlap_check(&lambda, 2, 2, &mu, &nu).map_err(|e| e.to_string())?;
                    ensure(r.agrees(), || format!("({lambda}),({mu}),({nu}): {r:?}"))?;
                    triples += 1;
                }
            }
        }
    }
    let r = overlap_check(&p("1,1,1,1"), 2, 2, &p("2,2"), &p("2,2")).map_err(|e| e.to_string())?;
    ensure(r.overlaps && r.kronecker_nonzero, || format!("k=4 triple: {r:?}"))?;
    Ok(format!("{triples} triples at k<=3 plus the k=4 triple"))
}

fn compatibility() -> Outcome {
    let bell = compat_search(&DensityMatrix::bell(), &[2], 0.5).map_err(|e| e.to_string())?;
    let e = &bell.entries[0];
    ensure(e.distance < 1e-12, || format!("bell distance {}", e.distance))?;
    ensure((e.lambda.clone(), e.mu.clone(), e.nu.clone()) == (p("2"), p("1,1"), p("1,1")), || {
        format!("bell triple ({}),({}),({})", e.lambda, e.mu, e.nu)
    })?;
    let mixed = DensityMatrix::maximally_mixed(4).with_bipartition(2, 2).unwrap();
    let m = compat_search(&mixed, &[4], 0.5).map_err(|e| e.to_string())?;
    ensure(m.entries[0].distance < 1e-12, || format!("mixed distance {}", m.entries[0].distance))?;
    let mut trend = Vec::new();
    for seed in 0..3 {
        let rho = DensityMatrix::random(4, 900 + seed).with_bipartition(2, 2).unwrap();
        let rep = compat_search(&rho, &[4, 16], 0.5).map_err(|e| e.to_string())?;
        let (d4, d16) = (rep.entries[0].distance, rep.entries[1].distance);
        ensure(d16 <= d4, || format!("seed {seed}: k=16 {d16} > k=4 {d4}"))?;
        trend.push(format!("{d4:.3}->{d16:.3}"));
    }
    Ok(format!("bell and mixed at distance 0; random {}", trend.join(" ")))
}

fn ball_trend() -> Outcome {
    let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
    let prob = |k| ball_probability(&rho, k, 0.2).map_err(|e| e.to_string());
    let mut reached = None;
    for k in 1..=200 {
        if prob(k)? > 0.99 {
            reached = Some(k);
            break;
        }
    }
    let k = reached.ok_or_else(|| format!("never above 0.99, k=200 gives {}", prob(200).unwrap()))?;
    let (p8, p64) = (prob(8)?, prob(64)?);
    ensure(p64 > p8, || format!("k=64 {p64} <= k=8 {p8}"))?;
    Ok(format!("above 0.99 from k={k}; k=8 {p8:.4}, k=64 {p64:.4}"))
}

fn entropy_sweep() -> Outcome {
    let mut nonzero = 0;
    for k in 1..=6 {
        let e = KroneckerEngine::new(k).map_err(|e| e.to_string())?;
        for t in e.nonzero_triples((usize::MAX, usize::MAX, usize::MAX)).map_err(|e| e.to_string())? {
            let r = entropy_triple_report(&e, &t.lambda, &t.mu, &t.nu).map_err(|e| e.to_string())?;
            ensure(r.holds && r.comparisons.len() == 3, || format!("({}),({}),({})", t.lambda, t.mu, t.nu))?;
            nonzero += 1;
        }
    }
    Ok(format!("{nonzero} nonzero triples"))
}

fn entropy_inequalities() -> Outcome {
    for seed in 0..20 {
        let rho = DensityMatrix::random(4, 1000 + seed).with_bipartition(2, 2).unwrap();
        let r = entropy_inequality_report(&rho, 8).map_err(|e| e.to_string())?;
        ensure(r.subadditive && r.triangle, || format!("seed {seed}: {r:?}"))?;
        ensure(r.dimension_inequality, || format!("seed {seed}: dim {} > {}", r.dim_lambda, r.dim_mu_nu))?;
    }
    Ok("20 states, compat triple at k=8".into())
}

fn trace_product() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = f64::INFINITY;
    for i in 0..100 {
        let pa = random_projector(2, &mut rng);
        let qb = random_projector(2, &mut rng);
        let xi = DensityMatrix::random(4, rng.random()).with_bipartition(2, 2).unwrap();
        let gap = trace_product_gap(&pa, &qb, &xi).map_err(|e| e.to_string())?;
        ensure(gap >= -1e-10, || format!("instance {i}: gap {gap:e}"))?;
        worst = worst.min(gap);
    }
    Ok(format!("smallest gap {worst:.2e}"))
}

fn young_sanity() -> Outcome {
    // not a numbered criterion: the Young distribution must sum to one
    let rho = DensityMatrix::random(3, 1);
    let s: f64 = young_distribution(&rho, 30).unwrap().iter().map(|f| f.weight).sum();
    ensure((s - 1.0).abs() < 1e-10, || format!("sum {s}"))?;
    Ok(format!("sum {s:.12}"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("AC01 Schur-Weyl completeness", completeness),
        ("AC02 character orthogonality", orthogonality),
        ("AC03 Kronecker integrality and symmetry", kronecker_integrality),
        ("AC04 Clebsch-Gordan dimension identity", clebsch_gordan),
        ("AC05 content expansion", content_expansion),
        ("AC06 Keyl-Werner bound", keyl_werner),
        ("AC07 oracle agreement", oracle_agreement),
        ("AC08 overlap vs Kronecker", overlap_equivalence),
        ("AC09 spectral compatibility", compatibility),
        ("AC10 ball probability trend", ball_trend),
        ("AC11 entropy sweep", entropy_sweep),
        ("AC12 entropy and dimension inequalities", entropy_inequalities),
        ("AC13 trace-product inequality", trace_product),
    ];
    let mut failed = 0;
    for (name, f) in criteria.iter().chain([("sanity young distribution", young_sanity as fn() -> Outcome)].iter()) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
