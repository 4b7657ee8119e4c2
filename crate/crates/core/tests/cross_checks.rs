use num_traits::ToPrimitive;

use schur_weyl::dimensions::dim_u;
use schur_weyl::kronecker::stretch_nonvanishing_check;
use schur_weyl::linalg::{random_unitary, tensor_power};
use schur_weyl::partitions::{enumerate_partitions, Partition};
use schur_weyl::quantum::{compat_search, young_distribution, DensityMatrix};
use schur_weyl::tensor_oracle::{central_projector, complexify, exact_trace};
use schur_weyl::TableCache;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn tensor_power_is_block_diagonal() {
    for seed in 0..3 {
        let rho = DensityMatrix::random(2, 40 + seed);
        for k in 1..=4 {
            let power = tensor_power(rho.matrix(), k);
            let frames = enumerate_partitions(k, 2);
            let projectors: Vec<_> = frames.iter().map(|l| complexify(&central_projector(l, 2).unwrap())).collect();
            for (i, a) in projectors.iter().enumerate() {
                for (j, b) in projectors.iter().enumerate() {
                    if i != j {
                        let block = a * &power * b;
                        assert!(block.norm() < 1e-12, "k={k} ({}) ({})", frames[i], frames[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn young_distribution_matches_explicit_trace() {
    for (d, kmax) in [(2, 5), (3, 3)] {
        let rho = DensityMatrix::random(d, 77);
        for k in 1..=kmax {
            for fw in young_distribution(&rho, k).unwrap() {
                let exact = exact_trace(&rho, &fw.lambda).unwrap();
                assert!((exact - fw.weight).abs() < 1e-10, "d={d} ({}) {exact} vs {}", fw.lambda, fw.weight);
            }
        }
    }
}

#[test]
fn frame_weights_are_unitarily_invariant() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    let rho = DensityMatrix::random(3, 5);
    let u = random_unitary(3, &mut rng);
    let turned = rho.conjugate_by(&u).unwrap();
    for l in enumerate_partitions(3, 3) {
        let a = exact_trace(&rho, &l).unwrap();
        let b = exact_trace(&turned, &l).unwrap();
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn compat_distance_does_not_grow_under_doubling() {
    // a triple with g ≠ 0 stays nonzero when doubled, with the same shapes
    for seed in 0..3 {
        let rho = DensityMatrix::random(4, 300 + seed).with_bipartition(2, 2).unwrap();
        let rep = compat_search(&rho, &[2, 4, 8, 16], 0.5).unwrap();
        let d: Vec<f64> = rep.entries.iter().map(|e| e.distance).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-12), "seed {seed}: {d:?}");
    }
}

#[test]
fn product_states_find_product_triples() {
    let a = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
    let b = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
    let rep = compat_search(&DensityMatrix::product(&a, &b), &[8], 0.5).unwrap();
    let e = &rep.entries[0];
    assert_eq!((e.lambda.clone(), e.mu.clone(), e.nu.clone()), (p("3,3,1,1"), p("6,2"), p("4,4")));
    assert!(e.distance < 1e-12);
}

#[test]
fn stretched_triples_stay_nonzero() {
    for (l, m, n) in [("2,1", "2,1", "2,1"), ("2,2", "2,2", "1,1,1,1"), ("3,1", "2,1,1", "2,2")] {
        let rep = stretch_nonvanishing_check(&p(l), &p(m), &p(n), 3, 12).unwrap();
        assert!(rep.all_nonzero, "{l} {m} {n}: {rep:?}");
    }
}

#[test]
fn cached_tables_feed_the_same_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let fresh = cache.get_or_build(7).unwrap();
    let loaded = cache.get_or_build(7).unwrap();
    assert_eq!(fresh, loaded);
    let id = loaded.identity_class();
    for (i, l) in loaded.rows().iter().enumerate() {
        assert_eq!(loaded.value(i, id).to_u64().unwrap(), dim_u(l).to_u64().unwrap());
    }
}
