//! Randomized invariants across the shipped fixtures. Seeds come from
//! proptest; the samplers are the library's own.

use gaugelike::fixture::builtin;
use gaugelike::gauge::{gauge_flow, gauge_to_additive, GaugeElement};
use gaugelike::homotopy::{same_morphism, theta, theta_inverse};
use gaugelike::random::{random_gl, random_gs, random_mc, random_vector, seeded, Sampler};
use gaugelike::{chevalley_eilenberg, gs_act, CEPresentation, CdgaMorphism, DgAlgebra, Element, FreeCdga, Ground};
use proptest::prelude::*;

const SOURCES: &[&str] = &["heisenberg", "free_odd_y", "heis3", "filiform", "heis3_module"];

fn ce(name: &str) -> CEPresentation {
    chevalley_eilenberg(&builtin(name).unwrap().algebra).unwrap()
}

/// A sum of sampled homogeneous pieces in a few degrees.
fn mixed(a: &FreeCdga, rng: &mut gaugelike::random::ChaCha8Rng) -> Element {
    (-1..=3).fold(a.zero(), |acc, d| a.add(&acc, &a.sample(d, rng)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiply_is_associative(seed in any::<u64>(), k in 0..SOURCES.len()) {
        let p = ce(SOURCES[k]);
        let a = p.algebra();
        let mut rng = seeded(seed);
        let (x, y, z) = (mixed(a, &mut rng), mixed(a, &mut rng), mixed(a, &mut rng));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        // Leibniz on homogeneous pieces.
        let u = a.sample(1, &mut rng);
        let v = a.sample(2, &mut rng);
        let lhs = a.d(&a.mul(&u, &v));
        let rhs = a.add(&a.mul(&a.d(&u), &v), &a.neg(&a.mul(&u, &a.d(&v))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn certified_morphisms_respect_products_and_d(seed in any::<u64>(), k in 0..SOURCES.len()) {
        let p = ce(SOURCES[k]);
        let a = p.algebra();
        let mut rng = seeded(seed);
        let phi = p.mc_to_morphism(&random_mc(p.lie(), &mut rng)).unwrap();
        prop_assert!(phi.certificate().passed);
        let (x, y) = (mixed(a, &mut rng), mixed(a, &mut rng));
        prop_assert_eq!(phi.apply(&a.mul(&x, &y)), phi.apply(&x) * phi.apply(&y));
        prop_assert_eq!(phi.apply(&a.d(&x)), Ground.d(&phi.apply(&x)));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_round_trips_both_ways(seed in any::<u64>(), k in 0..SOURCES.len()) {
        let p = ce(SOURCES[k]);
        let a = p.algebra();
        let mut rng = seeded(seed);
        let phi = CdgaMorphism::identity(a);
        let gl = random_gl(&mut rng, a, a, 2);
        let h = theta(&gl, &phi, p.order()).unwrap();
        let (gl2, phi2) = theta_inverse(&h);
        prop_assert_eq!(&gl2, &gl);
        let h2 = theta(&gl2, &phi2, p.order()).unwrap();
        prop_assert_eq!(h2.morphism().images(), h.morphism().images());
        // −j α_j = d β_{j−1} + β_{j−1} d on generators and on products.
        for v in 0..a.num_generators() {
            prop_assert!(h.check_decomposition(&a.generator(v), 5));
        }
        // Sampled elements can carry high powers of degree-zero generators,
        // so products are taken between generators.
        let n = a.num_generators();
        let (i, j) = ((seed % n as u64) as usize, ((seed >> 8) % n as u64) as usize);
        prop_assert!(h.check_decomposition(&a.mul(&a.generator(i), &a.generator(j)), 4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn additive_moves_are_witnessed_by_homotopies(seed in any::<u64>(), k in 0..SOURCES.len()) {
        let p = ce(SOURCES[k]);
        let mut rng = seeded(seed);
        let phi = p.mc_to_morphism(&random_mc(p.lie(), &mut rng)).unwrap();
        let b = random_gs(&mut rng, p.algebra(), &Ground);
        let psi = gs_act(&b, &phi, p.order()).unwrap();
        let h = theta(&b.to_gl(&Ground), &phi, p.order()).unwrap();
        prop_assert!(h.morphism().is_dg_morphism());
        prop_assert!(same_morphism(&h.start(), &phi));
        prop_assert!(same_morphism(&h.end(), &psi));
        // The endpoint is again a Maurer–Cartan point.
        prop_assert!(p.morphism_to_mc(&psi).unwrap().is_certified());
    }

    #[test]
    fn gauge_witnesses_verify(seed in any::<u64>(), module in any::<bool>()) {
        let p = ce(if module { "heis3_module" } else { "heisenberg" });
        let g = p.lie();
        let mut rng = seeded(seed);
        let x = random_mc(g, &mut rng);
        let xi = GaugeElement(random_vector(&mut rng, g.slice(0).len()));
        let path = gauge_flow(g, &xi, &x).unwrap();
        prop_assert!(g.mc_residual_path(&path).unwrap().is_zero());
        prop_assert_eq!(path.start(), x.coefficients().to_vec());
        let b = gauge_to_additive(&p, &xi, &x).unwrap();
        let moved = gs_act(&b, &p.mc_to_morphism(&x).unwrap(), p.order()).unwrap();
        let end = p.mc_to_morphism(&g.certify(&path.end()).unwrap()).unwrap();
        prop_assert!(same_morphism(&moved, &end));
    }
}

#[test]
fn lower_central_series_decreases_and_truncation_is_idempotent() {
    for &(name, _) in gaugelike::fixture::BUILTIN {
        let Ok(f) = builtin(name) else { continue };
        let g = f.algebra;
        let lcs = g.lower_central_series().unwrap();
        for k in 2..=lcs.len() + 1 {
            assert!(lcs.term(k).is_subspace_of(&lcs.term(k - 1)), "{name}: Γ^{k}");
        }
        let t = g.brutal_truncate();
        assert_eq!(t.brutal_truncate(), t, "{name}");
    }
}

#[test]
fn filtration_orders_pass_the_stage_condition() {
    for name in SOURCES.iter().chain(&["abelian", "truncation"]) {
        let p = ce(name);
        p.order().validate(p.algebra()).unwrap();
        let greedy = p.greedy_order().unwrap();
        greedy.validate(p.algebra()).unwrap();
        assert!(greedy.refines_earlier_than(p.order()), "{name}");
    }
}
