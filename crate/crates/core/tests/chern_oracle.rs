//! Chern-calculus checks against a brute-force dense oracle: products of
//! h(x_i) and their elementary-symmetric expansions, the multiplicativity
//! fixture grid, and the Whitney factorization of Thom polynomials.

mod common;

use common::{DenseMulti, DensePoly};
use fgl_core::chern::{
    expand_product_h, multiplicativity_check, substitute_elementary, thom_class_poly, ChernRing,
};
use fgl_core::rational::{rat, rat_int};
use fgl_core::ring::{make_ring, p_local_integers, rationals};
use fgl_core::{FormalGroupLaw, GradedPolynomial, RingBase, RingRef, TruncatedSeries};
use itertools::Itertools;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Oracle product prod_{i=1..n} h(x_i) via dense multivariate arithmetic.
fn oracle_product(h: &DensePoly, n: usize, trunc: u32) -> DenseMulti {
    let mut acc = DenseMulti::constant(n, rat_int(1));
    for i in 0..n {
        acc = acc.mul_mod(&DenseMulti::univariate_in(h, n, i), trunc);
    }
    acc
}

/// Oracle elementary symmetric polynomial e_i(x_1..x_n).
fn oracle_elementary(n: usize, i: usize) -> DenseMulti {
    let mut acc = DenseMulti::zero(n);
    for subset in (0..n).combinations(i) {
        let mut exps = vec![0u32; n];
        for j in subset {
            exps[j] = 1;
        }
        acc.insert(exps, rat_int(1));
    }
    acc
}

/// Evaluate a c-polynomial (over a ring whose generators are exactly
/// c_1..c_n) at the oracle elementary symmetric polynomials.
fn oracle_substitute(p: &GradedPolynomial, n: usize, trunc: u32) -> DenseMulti {
    let elementary: Vec<DenseMulti> = (1..=n).map(|i| oracle_elementary(n, i)).collect();
    let mut acc = DenseMulti::zero(n);
    for (exps, c) in p.iter() {
        let mut term = DenseMulti::constant(n, c.clone());
        for (i, &e) in exps.as_slice().iter().enumerate() {
            for _ in 0..e {
                term = term.mul_mod(&elementary[i], trunc);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

fn series_from_dense(h: &DensePoly, ring: &RingRef, trunc: u32) -> TruncatedSeries {
    let terms = h
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (vec![i as u32], GradedPolynomial::constant(ring, c.clone()).unwrap()))
        .collect();
    TruncatedSeries::from_terms(ring, 1, trunc, terms).unwrap()
}

#[test]
fn product_expansion_matches_brute_force() {
    let q = rationals();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for n in 1..=4usize {
        for trial in 0..3 {
            let d = rng.gen_range(2..=8u32);
            // random h = 1 + up to 4 terms with small rational coefficients
            let mut coeffs = vec![rat_int(1)];
            for _ in 0..rng.gen_range(1..=4) {
                coeffs.push(rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)));
            }
            let h_oracle = DensePoly { coeffs };
            let h = series_from_dense(&h_oracle, &q, h_oracle.coeffs.len() as u32);

            let (chern, expansion) = expand_product_h(&h, n, d).unwrap();
            let direct = oracle_product(&h_oracle, n, d);

            // the claimed c-polynomial, evaluated at the oracle elementary
            // symmetric polynomials, reproduces the brute-force product
            assert_eq!(
                oracle_substitute(&expansion, n, d).terms,
                direct.terms,
                "n = {n}, D = {d}, trial {trial}"
            );

            // and the library substitution agrees with the library product
            let round = substitute_elementary(&expansion, &chern, d).unwrap();
            assert!(direct.matches(&round), "round trip at n = {n}, D = {d}");
        }
    }
}

#[test]
fn multiplicativity_fixture_grid() {
    // h-coefficients drawn from {0, +-1, +-1/2, generator}
    let base = make_ring(RingBase::Rationals, vec![("a", 1)]).unwrap();
    let a = GradedPolynomial::generator(&base, 0).unwrap();
    let coeff_pool: Vec<GradedPolynomial> = vec![
        GradedPolynomial::zero(&base),
        GradedPolynomial::one(&base),
        GradedPolynomial::one(&base).neg(),
        GradedPolynomial::constant(&base, rat(1, 2)).unwrap(),
        GradedPolynomial::constant(&base, rat(-1, 2)).unwrap(),
        a,
    ];
    let mut fixtures: Vec<TruncatedSeries> = Vec::new();
    let one = TruncatedSeries::one(&base, 1, 5);
    let t = TruncatedSeries::variable(&base, 1, 0, 5);
    fixtures.push(one.clone());
    for (i, c1) in coeff_pool.iter().enumerate() {
        for c2 in coeff_pool.iter().skip(i % 2) {
            let h = one
                .add(&t.poly_scale(c1).unwrap())
                .unwrap()
                .add(&t.pow(2).unwrap().poly_scale(c2).unwrap())
                .unwrap();
            fixtures.push(h);
        }
    }
    for h in &fixtures {
        for (n, m) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3)] {
            let d = 4;
            assert!(
                multiplicativity_check(h, n, m, d).unwrap(),
                "h = {h}, n = {n}, m = {m}"
            );
        }
    }
}

#[test]
fn idempotent_series_is_multiplicative_h() {
    // h(t) = eps(t)/t for the 2-typification of the multiplicative law:
    // constant term 1 and the product expansion is multiplicative
    let ring = p_local_integers(2).unwrap();
    let law = FormalGroupLaw::multiplicative(&ring, 7).unwrap();
    let (_, eps) = fgl_core::p_typify(&law, 2).unwrap();
    let h = eps.series().shift_down().unwrap();
    assert_eq!(h.constant_coeff(), GradedPolynomial::one(&ring));
    assert!(multiplicativity_check(&h, 2, 2, 6).unwrap());
    let (_, expansion) = expand_product_h(&h, 2, 6).unwrap();
    assert!(!expansion.is_zero());
}

/// Elementary symmetric polynomial over a subset of ring generators.
fn elementary_of_generators(ring: &RingRef, indices: &[usize], i: usize) -> GradedPolynomial {
    let mut acc = GradedPolynomial::zero(ring);
    for subset in indices.iter().combinations(i) {
        let mut term = GradedPolynomial::one(ring);
        for &&idx in &subset {
            term = term.mul(&GradedPolynomial::generator(ring, idx).unwrap()).unwrap();
        }
        acc = acc.add(&term).unwrap();
    }
    acc
}

#[test]
fn thom_polynomial_whitney_factorization() {
    // the rank-(n+m) Thom polynomial, with c_i specialized to the Chern
    // classes of a direct sum, factors as the product of the group factors
    // prod (t + x_i)
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let total = n + m;
        let gens: Vec<(String, u32)> = (1..=total).map(|i| (format!("x{i}"), 1)).collect();
        let root_ring = make_ring(RingBase::Rationals, gens).unwrap();

        let chern = ChernRing::new(&rationals(), total, total as u32).unwrap();
        let thom = thom_class_poly(total, &chern).unwrap();

        // specialize c_i to e_i of all the roots
        let all: Vec<usize> = (0..total).collect();
        let images: Vec<GradedPolynomial> =
            (1..=total).map(|i| elementary_of_generators(&root_ring, &all, i)).collect();
        let specialized = thom
            .polynomial()
            .map_coeffs(&root_ring, |p| p.substitute(&root_ring, &images))
            .unwrap();

        // product of the linear factors t + x_i, grouped
        let t = TruncatedSeries::variable(&root_ring, 1, 0, total as u32);
        let linear_factor = |idx: usize| {
            let x = GradedPolynomial::generator(&root_ring, idx).unwrap();
            t.add(&TruncatedSeries::from_terms(&root_ring, 1, total as u32, vec![(vec![0], x)]).unwrap())
                .unwrap()
        };
        let mut first_group = TruncatedSeries::one(&root_ring, 1, total as u32);
        for i in 0..n {
            first_group = first_group.mul(&linear_factor(i)).unwrap();
        }
        let mut second_group = TruncatedSeries::one(&root_ring, 1, total as u32);
        for i in n..total {
            second_group = second_group.mul(&linear_factor(i)).unwrap();
        }
        assert_eq!(specialized, first_group.mul(&second_group).unwrap(), "n = {n}, m = {m}");

        // each group factor is the smaller Thom polynomial at its own roots
        let chern_n = ChernRing::new(&rationals(), n, n as u32).unwrap();
        let thom_n = thom_class_poly(n, &chern_n).unwrap();
        let group: Vec<usize> = (0..n).collect();
        let images_n: Vec<GradedPolynomial> =
            (1..=n).map(|i| elementary_of_generators(&root_ring, &group, i)).collect();
        let specialized_n = thom_n
            .polynomial()
            .map_coeffs(&root_ring, |p| p.substitute(&root_ring, &images_n))
            .unwrap();
        assert_eq!(specialized_n, first_group.truncated(n as u32), "rank-n factor at n = {n}");
    }
}

#[test]
fn tensor_first_chern_from_universal_law() {
    let ctx = fgl_core::universal_fgl(5).unwrap();
    let c1 = fgl_core::chern::tensor_first_chern(ctx.law(), 3);
    // symmetric and strict in both slots
    assert_eq!(c1, c1.swap_vars(0, 1));
    assert_eq!(c1.coeff_at(&[1, 0]), GradedPolynomial::one(ctx.ring()));
    let m1 = GradedPolynomial::generator(ctx.ring(), 0).unwrap();
    assert_eq!(c1.coeff_at(&[1, 1]), m1.scalar_mul_unchecked(&rat_int(-2)));
}

#[test]
fn projective_reduction_random_homomorphism() {
    let q = rationals();
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for _ in 0..40 {
        let deg = rng.gen_range(3..=8u32);
        let n = rng.gen_range(0..=4u32);
        let random_poly = |rng: &mut StdRng| {
            let mut terms = Vec::new();
            for k in 0..=deg {
                if rng.gen_bool(0.6) {
                    let c = rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3));
                    terms.push((vec![k], GradedPolynomial::constant(&q, c).unwrap()));
                }
            }
            TruncatedSeries::from_terms(&q, 1, deg, terms).unwrap()
        };
        // widen the truncation so the polynomial product is exact
        let a = random_poly(&mut rng).truncated(2 * deg);
        let b = random_poly(&mut rng).truncated(2 * deg);
        let direct = fgl_core::chern::projective_ring_reduce(&a.mul(&b).unwrap(), n).unwrap();
        let staged = fgl_core::chern::projective_ring_reduce(
            &fgl_core::chern::projective_ring_reduce(&a, n)
                .unwrap()
                .mul(&fgl_core::chern::projective_ring_reduce(&b, n).unwrap())
                .unwrap(),
            n,
        )
        .unwrap();
        assert_eq!(direct, staged);
    }
}

#[test]
fn expansion_stability_in_variable_count() {
    let q = rationals();
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for _ in 0..3 {
        let d = 6u32;
        let mut coeffs = vec![rat_int(1)];
        for _ in 0..3 {
            coeffs.push(rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)));
        }
        let h_oracle = DensePoly { coeffs };
        let h = series_from_dense(&h_oracle, &q, d);
        for n in 1..=3usize {
            let (small, p_small) = expand_product_h(&h, n, d).unwrap();
            let (large, p_large) = expand_product_h(&h, n + 1, d).unwrap();
            let _ = small;
            let lifted = p_small.reindex(large.ring()).unwrap();
            let weights = large.ring().weights();
            let bound = n as u64;
            let low = |p: &GradedPolynomial| {
                p.iter()
                    .filter(|(e, _)| e.weight(&weights) <= bound)
                    .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
                    .collect::<Vec<_>>()
            };
            assert_eq!(low(&lifted), low(&p_large), "n = {n}");
        }
    }
}
