use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swan_core::random::{random_double_complex, DoubleComplexShape};
use swan_core::spectral::*;

#[test]
fn random_double_complexes_obey_page_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let shape = DoubleComplexShape::default();
    let mut higher = 0;
    for i in 0..30 {
        let d = random_double_complex(&mut rng, &shape).unwrap();
        let stable = stable_page_index(&d);
        let ps = pages(&d, 0, stable).unwrap();
        for w in ps.windows(2) {
            let (e, next) = (&w[0], &w[1]);
            assert!(e.d_squared_vanishes(), "complex {i}: d_{}² ≠ 0", e.r());
            for p in 0..=d.p_max() as i64 {
                for q in 0..=d.q_max() as i64 {
                    assert_eq!(e.page_cohomology(p, q).unwrap(), next.entry(p, q), "complex {i}: H(E_{}) at ({p},{q})", e.r());
                    if e.r() >= 2 && !e.differential_vanishes(p, q) {
                        higher += 1;
                    }
                }
            }
        }
        let tot = total_complex(&d).unwrap();
        for n in 0..=d.max_total_degree() {
            let g = associated_graded_check(&d, n).unwrap();
            assert_eq!(g.graded_rank, tot.cohomology(n as i64).unwrap().rank(), "complex {i}, degree {n}");
            assert!(g.verdict, "complex {i}, degree {n}: {g:?}");
        }
    }
    assert!(higher > 0, "no differential beyond d_1 was exercised");
}

#[test]
fn pages_stop_changing() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = random_double_complex(&mut rng, &DoubleComplexShape::default()).unwrap();
    let s = stable_page_index(&d);
    let ps = pages(&d, s, s + 2).unwrap();
    assert!(ps[0].same_entries(&ps[1]) && ps[1].same_entries(&ps[2]));
}
