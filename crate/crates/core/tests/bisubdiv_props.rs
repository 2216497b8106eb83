use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swan_core::bisubdiv::*;
use swan_core::random::{random_bichain, random_cover};

fn check(seed: u64, p: usize, q: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_bichain(&mut rng, p, q, 1, 1);
    let m = c.mixed();
    assert!(boundary_total(&boundary_total(m)).is_zero(), "∂∂ ≠ 0 for seed {seed}");
    let lhs = m - &subdivide_total(m);
    let rhs = &boundary_total(&rho_total(m)) + &rho_total(&boundary_total(m));
    assert_eq!(lhs, rhs, "1 − Sd ≠ ∂ρ + ρ∂ for seed {seed}");

    let cover = random_cover(&mut rng, &c);
    let sc = SmallChains::new(&cover);
    let tau = sc.tau(m).unwrap();
    assert!(cover.is_small_chain(&tau), "τ not small for seed {seed}");
    assert_eq!(sc.tau(&tau).unwrap(), tau, "τ∘inc ≠ 1 for seed {seed}");
    let d = sc.homotopy(m).unwrap();
    let lhs = &boundary_total(&d) + &sc.homotopy(&boundary_total(m)).unwrap();
    assert_eq!(lhs, m - &tau, "∂D + D∂ ≠ 1 − τ for seed {seed}");
    assert_eq!(boundary_total(&tau), sc.tau(&boundary_total(m)).unwrap(), "τ not a chain map for seed {seed}");
    m.terms().map(|(s, _)| sc.index(s).unwrap()).max().unwrap()
}

#[test]
fn random_bichains_satisfy_subdivision_identities() {
    let mut deepest = 0;
    for seed in 0..36u64 {
        let (p, q) = ((seed % 3) as usize, ((seed / 3) % 3) as usize);
        deepest = deepest.max(check(seed, p, q));
    }
    assert!(deepest >= 1, "no instance needed subdivision");
}

#[test]
fn sd_term_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, q, n) in [(0, 0, 1), (1, 0, 2), (0, 2, 6), (1, 1, 4), (2, 1, 12), (2, 2, 36)] {
        let s = swan_core::random::random_bisimplex(&mut rng, p, q, 1, 2);
        let c = BiChain::from_simplex(s);
        assert_eq!(subdivide(&c).len(), n);
    }
}

#[test]
fn primed_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_bichain(&mut rng, 2, 2, 1, 1).into_mixed();
    assert_eq!(boundary_base(&subdivide_base(&m)), subdivide_base(&boundary_base(&m)));
    assert_eq!(boundary_fiber(&subdivide_fiber(&m)), subdivide_fiber(&boundary_fiber(&m)));
    assert!((&boundary_fiber(&rho_base(&m)) + &rho_base(&boundary_fiber(&m))).is_zero());
    assert!((&boundary_base(&rho_fiber(&m)) + &rho_fiber(&boundary_base(&m))).is_zero());
    let lhs = &m - &subdivide_fiber(&m);
    assert_eq!(lhs, &boundary_fiber(&rho_fiber(&m)) + &rho_fiber(&boundary_fiber(&m)));
}
