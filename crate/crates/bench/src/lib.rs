//! Shared fixtures for the benchmark targets.

use fgl_core::rational::rat;
use fgl_core::ring::{p_local_integers, rationals};
use fgl_core::{FormalGroupLaw, GradedPolynomial, OrientationSeries, TruncatedSeries};

/// The multiplicative law over Z_(p) at a truncation.
pub fn local_multiplicative(p: u64, trunc: u32) -> FormalGroupLaw {
    let ring = p_local_integers(p).expect("prime");
    FormalGroupLaw::multiplicative(&ring, trunc).expect("valid truncation")
}

/// A dense strict series with small rational coefficients, deterministic.
pub fn dense_orientation(trunc: u32) -> OrientationSeries {
    let q = rationals();
    let mut terms = vec![(vec![1u32], GradedPolynomial::one(&q))];
    for d in 2..=trunc {
        let c = rat(if d % 2 == 0 { -(d as i64) } else { d as i64 }, d as i64 + 1);
        terms.push((vec![d], GradedPolynomial::constant(&q, c).expect("rational base")));
    }
    OrientationSeries::new(TruncatedSeries::from_terms(&q, 1, trunc, terms).expect("strict"))
        .expect("strict")
}

/// h = 1 + t + t^2/2 + 2t^3 over the rationals.
pub fn sample_h(trunc: u32) -> TruncatedSeries {
    let q = rationals();
    let t = TruncatedSeries::variable(&q, 1, 0, trunc);
    TruncatedSeries::one(&q, 1, trunc)
        .add(&t)
        .unwrap()
        .add(&t.pow(2).unwrap().scalar_mul(&rat(1, 2)).unwrap())
        .unwrap()
        .add(&t.pow(3).unwrap().scalar_mul(&rat(2, 1)).unwrap())
        .unwrap()
}
