//! Symmetric-function Chern calculus: expansion of symmetric series in the
//! elementary symmetric classes c_1, ..., c_n, products prod h(x_i) and
//! their multiplicativity, Thom-class polynomials, and truncated projective
//! coordinate rings.
//!
//! Chern roots x_1, ..., x_n are the series variables of an n-variable
//! truncated series; the classes c_i are ring generators of weight i
//! appended to the coefficient ring, so that expanding a symmetric series
//! turns series variables into ring generators.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::poly::GradedPolynomial;
use crate::series::TruncatedSeries;
use crate::ring::RingRef;

/// A coefficient ring extended with Chern classes c_1..c_n of weights 1..n,
/// with elements bounded at total weight D.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernRing {
    classes: usize,
    degree_bound: u32,
    base: RingRef,
    ring: RingRef,
}

impl ChernRing {
    pub fn new(base: &RingRef, classes: usize, degree_bound: u32) -> Result<Self> {
        let extra: Vec<(String, u32)> =
            (1..=classes).map(|i| (format!("c{i}"), i as u32)).collect();
        let ring = base.extended(extra)?;
        Ok(ChernRing { classes, degree_bound, base: base.clone(), ring })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// The extended ring carrying both the base generators and the classes.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// The ring the Chern roots live over.
    pub fn base(&self) -> &RingRef {
        &self.base
    }

    /// The class c_i (1-based).
    pub fn chern_class(&self, i: usize) -> Result<GradedPolynomial> {
        if i == 0 || i > self.classes {
            return Err(Error::RankTooLarge { rank: i, available: self.classes });
        }
        GradedPolynomial::generator(&self.ring, self.base.num_generators() + i - 1)
    }

    /// The i-th elementary symmetric series in the n Chern roots.
    pub fn elementary_symmetric(&self, i: usize, trunc: u32) -> Result<TruncatedSeries> {
        elementary_symmetric(&self.base, self.classes, i, trunc)
    }
}

/// e_i(x_1, ..., x_vars) as an n-variable series: the sum of all squarefree
/// degree-i monomials.
pub fn elementary_symmetric(
    ring: &RingRef,
    vars: usize,
    i: usize,
    trunc: u32,
) -> Result<TruncatedSeries> {
    if i > vars {
        return Err(Error::RankTooLarge { rank: i, available: vars });
    }
    if i as u32 > trunc {
        // every squarefree degree-i monomial vanishes at this truncation
        return Ok(TruncatedSeries::zero(ring, vars, trunc));
    }
    let terms = (0..vars)
        .combinations(i)
        .map(|subset| {
            let mut exps = vec![0u32; vars];
            for j in subset {
                exps[j] = 1;
            }
            (exps, GradedPolynomial::one(ring))
        })
        .collect();
    TruncatedSeries::from_terms(ring, vars, trunc, terms)
}

/// Verify symmetry under variable permutations: every permutation for up to
/// four variables, adjacent transpositions beyond that.
pub fn is_symmetric(s: &TruncatedSeries) -> bool {
    let n = s.vars();
    if n <= 1 {
        return true;
    }
    if n <= 4 {
        (0..n).permutations(n).all(|perm| s.permute_vars(&perm) == *s)
    } else {
        (0..n - 1).all(|i| s.swap_vars(i, i + 1) == *s)
    }
}

/// Write a symmetric n-variable series as a polynomial in the classes
/// c_1..c_n (with the base-ring generators carried along), by repeatedly
/// cancelling the graded-lex leading monomial against a product of
/// elementary symmetric series.
pub fn expand_in_elementary(s: &TruncatedSeries, chern: &ChernRing) -> Result<GradedPolynomial> {
    let n = chern.classes();
    if s.vars() != n {
        return Err(Error::ArityMismatch);
    }
    if s.ring() != chern.base() {
        return Err(Error::RingMismatch);
    }
    if !is_symmetric(s) {
        return Err(Error::NotSymmetric);
    }
    let trunc = s.truncation();
    let elementary: Vec<TruncatedSeries> = (1..=n)
        .map(|i| elementary_symmetric(chern.base(), n, i, trunc))
        .collect::<Result<_>>()?;

    let base_gens = chern.base().num_generators();
    let mut out = GradedPolynomial::zero(chern.ring());
    let mut work = s.clone();
    loop {
        let (lead, coeff) = {
            match work.iter().next_back() {
                Some((e, p)) => (e.clone(), p.clone()),
                None => break,
            }
        };
        let lambda = lead.as_slice();
        // the leading monomial of a symmetric series is weakly decreasing
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        // c-exponents are the successive differences of the partition
        let mut exps = vec![0u32; base_gens + n];
        for i in 0..n {
            let next = if i + 1 < n { lambda[i + 1] } else { 0 };
            exps[base_gens + i] = lambda[i] - next;
        }
        let c_monomial = GradedPolynomial::monomial(chern.ring(), exps, num_traits::One::one())?;
        out = out.add(&coeff.reindex(chern.ring())?.mul(&c_monomial)?)?;

        // subtract coeff * prod e_i^{gamma_i}; same leading term, so the
        // leading monomial strictly decreases
        let mut cancel = TruncatedSeries::one(chern.base(), n, trunc);
        for i in 0..n {
            let next = if i + 1 < n { lambda[i + 1] } else { 0 };
            let gamma = lambda[i] - next;
            if gamma > 0 {
                cancel = cancel.mul(&elementary[i].pow(gamma)?)?;
            }
        }
        work = work.sub(&cancel.poly_scale(&coeff)?)?;
    }
    Ok(out)
}

/// Substitute c_i -> e_i(x_1..x_n) (and base generators to themselves),
/// inverse to [`expand_in_elementary`].
pub fn substitute_elementary(
    p: &GradedPolynomial,
    chern: &ChernRing,
    trunc: u32,
) -> Result<TruncatedSeries> {
    let n = chern.classes();
    let base = chern.base();
    let mut images = Vec::with_capacity(base.num_generators() + n);
    for idx in 0..base.num_generators() {
        images.push(TruncatedSeries::from_terms(
            base,
            n,
            trunc,
            vec![(vec![0; n], GradedPolynomial::generator(base, idx)?)],
        )?);
    }
    for i in 1..=n {
        images.push(elementary_symmetric(base, n, i, trunc)?);
    }
    crate::series::poly_at_series(p, &images)
}

/// The product prod_{i=1..n} h(x_i) as an n-variable series truncated at
/// weight `degree_bound`; h is treated as exact polynomial data.
fn product_of_h(h: &TruncatedSeries, n: usize, degree_bound: u32) -> Result<TruncatedSeries> {
    if h.vars() != 1 {
        return Err(Error::ArityMismatch);
    }
    if h.constant_coeff() != GradedPolynomial::one(h.ring()) {
        return Err(Error::NonUnitConstantTerm);
    }
    let h = h.truncated(degree_bound);
    let mut product = TruncatedSeries::one(h.ring(), n, degree_bound);
    for i in 0..n {
        let x_i = TruncatedSeries::variable(h.ring(), n, i, degree_bound);
        product = product.mul(&h.substitute(std::slice::from_ref(&x_i))?)?;
    }
    Ok(product)
}

/// Expand prod_{i=1..n} h(x_i) in the classes c_1..c_n, truncated at weight
/// D. The weight-d part is independent of n once n >= d.
pub fn expand_product_h(
    h: &TruncatedSeries,
    n: usize,
    degree_bound: u32,
) -> Result<(ChernRing, GradedPolynomial)> {
    if n == 0 || degree_bound == 0 {
        return Err(Error::DegreeTooSmall);
    }
    let chern = ChernRing::new(h.ring(), n, degree_bound)?;
    let expansion = expand_in_elementary(&product_of_h(h, n, degree_bound)?, &chern)?;
    Ok((chern, expansion))
}

/// Whether prod_{i<=n} h(x_i) * prod_{j<=m} h(y_j) equals the product over
/// the interleaved n+m variables x_1, y_1, x_2, y_2, ..., as polynomials
/// truncated at D.
pub fn multiplicativity_check(
    h: &TruncatedSeries,
    n: usize,
    m: usize,
    degree_bound: u32,
) -> Result<bool> {
    if n == 0 || m == 0 || degree_bound == 0 {
        return Err(Error::DegreeTooSmall);
    }
    if h.vars() != 1 {
        return Err(Error::ArityMismatch);
    }
    if h.constant_coeff() != GradedPolynomial::one(h.ring()) {
        return Err(Error::NonUnitConstantTerm);
    }
    let h = h.truncated(degree_bound);
    let total = n + m;
    let factor = |i: usize| -> Result<TruncatedSeries> {
        let v = TruncatedSeries::variable(h.ring(), total, i, degree_bound);
        h.substitute(std::slice::from_ref(&v))
    };

    // separate products: x-group times y-group
    let mut lhs = TruncatedSeries::one(h.ring(), total, degree_bound);
    for i in 0..n {
        lhs = lhs.mul(&factor(i)?)?;
    }
    let mut y_part = TruncatedSeries::one(h.ring(), total, degree_bound);
    for j in n..total {
        y_part = y_part.mul(&factor(j)?)?;
    }
    lhs = lhs.mul(&y_part)?;

    // one product over the interleaving x1, y1, x2, y2, ...
    let mut order: Vec<usize> = Vec::with_capacity(total);
    for k in 0..n.max(m) {
        if k < n {
            order.push(k);
        }
        if k < m {
            order.push(n + k);
        }
    }
    let mut rhs = TruncatedSeries::one(h.ring(), total, degree_bound);
    for i in order {
        rhs = rhs.mul(&factor(i)?)?;
    }

    Ok(lhs == rhs)
}

/// F(x1, x2) truncated at D: the first Chern class of a tensor product of
/// line bundles in the two-variable Chern-root ring.
pub fn tensor_first_chern(law: &FormalGroupLaw, degree_bound: u32) -> TruncatedSeries {
    law.series().truncated(degree_bound.min(law.truncation()))
}

/// The monic polynomial t^r + c_1 t^{r-1} + ... + c_r representing the
/// universal Thom class of a rank-r bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomClassPolynomial {
    rank: usize,
    poly: TruncatedSeries,
}

impl ThomClassPolynomial {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The polynomial, as a univariate series in t of truncation r.
    pub fn polynomial(&self) -> &TruncatedSeries {
        &self.poly
    }

    /// Kill all Chern classes; the Thom polynomial of the trivial bundle is
    /// the pure power t^r.
    pub fn chern_classes_to_zero(&self, chern: &ChernRing) -> Result<TruncatedSeries> {
        let base = chern.base();
        let mut images = Vec::with_capacity(chern.ring().num_generators());
        for idx in 0..base.num_generators() {
            images.push(GradedPolynomial::generator(base, idx)?);
        }
        for _ in 0..chern.classes() {
            images.push(GradedPolynomial::zero(base));
        }
        self.poly.map_coeffs(base, |p| p.substitute(base, &images))
    }
}

/// Build the rank-r Thom-class polynomial over a Chern ring with at least r
/// classes, verifying that killing the classes reduces it to t^r.
pub fn thom_class_poly(rank: usize, chern: &ChernRing) -> Result<ThomClassPolynomial> {
    if rank == 0 || rank > chern.classes() {
        return Err(Error::RankTooLarge { rank, available: chern.classes() });
    }
    let ring = chern.ring();
    let mut terms = vec![(vec![rank as u32], GradedPolynomial::one(ring))];
    for i in 1..=rank {
        terms.push((vec![(rank - i) as u32], chern.chern_class(i)?));
    }
    let poly = TruncatedSeries::from_terms(ring, 1, rank as u32, terms)?;
    let thom = ThomClassPolynomial { rank, poly };

    // exact-sequence membership in polynomial form: trivial-bundle reduction
    let reduced = thom.chern_classes_to_zero(chern)?;
    let t_pow_r = TruncatedSeries::variable(chern.base(), 1, 0, rank as u32).pow(rank as u32)?;
    debug_assert_eq!(reduced, t_pow_r, "Thom polynomial must reduce to t^r");
    if reduced != t_pow_r {
        return Err(Error::RankTooLarge { rank, available: chern.classes() });
    }
    Ok(thom)
}

/// Reduce a univariate polynomial modulo x^{n+1}, the coordinate ring of
/// n-dimensional projective space.
pub fn projective_ring_reduce(a: &TruncatedSeries, n: u32) -> Result<TruncatedSeries> {
    if a.vars() != 1 {
        return Err(Error::ArityMismatch);
    }
    Ok(a.truncated(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int, Rat};
    use crate::ring::{make_ring, rationals, RingBase};

    fn x_vars(n: usize, trunc: u32) -> Vec<TruncatedSeries> {
        (0..n)
            .map(|i| TruncatedSeries::variable(&rationals(), n, i, trunc))
            .collect()
    }

    #[test]
    fn power_sums_in_elementary_basis() {
        let q = rationals();
        let chern = ChernRing::new(&q, 2, 4).unwrap();
        let v = x_vars(2, 4);

        // x1 + x2 -> c1
        let e1 = v[0].add(&v[1]).unwrap();
        assert_eq!(expand_in_elementary(&e1, &chern).unwrap(), chern.chern_class(1).unwrap());

        // x1^2 + x2^2 -> c1^2 - 2 c2
        let p2 = v[0].pow(2).unwrap().add(&v[1].pow(2).unwrap()).unwrap();
        let c1 = chern.chern_class(1).unwrap();
        let c2 = chern.chern_class(2).unwrap();
        let expected = c1.pow(2).sub(&c2.scalar_mul_unchecked(&rat_int(2))).unwrap();
        assert_eq!(expand_in_elementary(&p2, &chern).unwrap(), expected);

        // x1^2 x2^2 -> c2^2
        let m = v[0].pow(2).unwrap().mul(&v[1].pow(2).unwrap()).unwrap();
        assert_eq!(expand_in_elementary(&m, &chern).unwrap(), c2.pow(2));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let q = rationals();
        let chern = ChernRing::new(&q, 2, 3).unwrap();
        let v = x_vars(2, 3);
        let s = v[0].pow(2).unwrap().add(&v[1]).unwrap();
        assert_eq!(expand_in_elementary(&s, &chern).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn expansion_round_trips_through_substitution() {
        let q = rationals();
        let chern = ChernRing::new(&q, 3, 6).unwrap();
        let v = x_vars(3, 6);
        // (x1+x2+x3)^2 + x1 x2 x3
        let s = v[0]
            .add(&v[1])
            .unwrap()
            .add(&v[2])
            .unwrap()
            .pow(2)
            .unwrap()
            .add(&v[0].mul(&v[1]).unwrap().mul(&v[2]).unwrap())
            .unwrap();
        let p = expand_in_elementary(&s, &chern).unwrap();
        assert_eq!(substitute_elementary(&p, &chern, 6).unwrap(), s);
    }

    #[test]
    fn product_expansion_trivial_and_linear() {
        let q = rationals();
        let one = TruncatedSeries::one(&q, 1, 4);
        let (_, p) = expand_product_h(&one, 2, 4).unwrap();
        assert!(p.is_constant());
        assert_eq!(p.constant_term(), Rat::from_integer(1.into()));

        // h = 1 + t, n = 2: (1+x1)(1+x2) = 1 + c1 + c2
        let t = TruncatedSeries::variable(&q, 1, 0, 4);
        let h = one.add(&t).unwrap();
        let (chern, p) = expand_product_h(&h, 2, 4).unwrap();
        let expected = GradedPolynomial::one(chern.ring())
            .add(&chern.chern_class(1).unwrap())
            .unwrap()
            .add(&chern.chern_class(2).unwrap())
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn product_expansion_with_symbolic_coefficient() {
        // h = 1 + a t^2, n = 2 -> 1 + a(c1^2 - 2 c2) + a^2 c2^2
        let base = make_ring(RingBase::Rationals, vec![("a", 1)]).unwrap();
        let a = GradedPolynomial::generator(&base, 0).unwrap();
        let t = TruncatedSeries::variable(&base, 1, 0, 4);
        let h = TruncatedSeries::one(&base, 1, 4)
            .add(&t.pow(2).unwrap().poly_scale(&a).unwrap())
            .unwrap();
        let (chern, p) = expand_product_h(&h, 2, 4).unwrap();

        let a_ext = a.reindex(chern.ring()).unwrap();
        let c1 = chern.chern_class(1).unwrap();
        let c2 = chern.chern_class(2).unwrap();
        let expected = GradedPolynomial::one(chern.ring())
            .add(&a_ext.mul(&c1.pow(2).sub(&c2.scalar_mul_unchecked(&rat_int(2))).unwrap()).unwrap())
            .unwrap()
            .add(&a_ext.pow(2).mul(&c2.pow(2)).unwrap())
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn nonunit_constant_term_rejected() {
        let q = rationals();
        let t = TruncatedSeries::variable(&q, 1, 0, 3);
        assert_eq!(expand_product_h(&t, 2, 3).unwrap_err(), Error::NonUnitConstantTerm);
        let two = TruncatedSeries::constant(&q, 1, 3, rat_int(2)).unwrap();
        assert_eq!(
            multiplicativity_check(&two, 1, 1, 3).unwrap_err(),
            Error::NonUnitConstantTerm
        );
    }

    #[test]
    fn multiplicativity_simple_cases() {
        let q = rationals();
        let one = TruncatedSeries::one(&q, 1, 4);
        assert!(multiplicativity_check(&one, 2, 3, 4).unwrap());
        let t = TruncatedSeries::variable(&q, 1, 0, 4);
        let h = one.add(&t).unwrap();
        assert!(multiplicativity_check(&h, 1, 1, 2).unwrap());
        assert!(multiplicativity_check(&h, 2, 2, 4).unwrap());
    }

    #[test]
    fn tensor_first_chern_reads_the_law() {
        let q = rationals();
        let mult = FormalGroupLaw::multiplicative(&q, 6).unwrap();
        let c1 = tensor_first_chern(&mult, 3);
        assert_eq!(c1.truncation(), 3);
        assert_eq!(c1.coeff_at(&[1, 1]).constant_term(), rat_int(1));
        assert_eq!(c1, c1.swap_vars(0, 1));

        let add = FormalGroupLaw::additive(&q, 6).unwrap();
        let c1 = tensor_first_chern(&add, 4);
        assert_eq!(c1.iter().count(), 2);
    }

    #[test]
    fn thom_polynomials_match_the_monic_formula() {
        let q = rationals();
        let chern = ChernRing::new(&q, 3, 6).unwrap();
        for r in 1..=3usize {
            let thom = thom_class_poly(r, &chern).unwrap();
            let poly = thom.polynomial();
            assert_eq!(poly.coeff_at(&[r as u32]), GradedPolynomial::one(chern.ring()));
            for i in 1..=r {
                assert_eq!(
                    poly.coeff_at(&[(r - i) as u32]),
                    chern.chern_class(i).unwrap(),
                    "coefficient of t^{} at rank {r}",
                    r - i
                );
            }
            let reduced = thom.chern_classes_to_zero(&chern).unwrap();
            let t_r = TruncatedSeries::variable(&q, 1, 0, r as u32).pow(r as u32).unwrap();
            assert_eq!(reduced, t_r);
        }
        assert!(matches!(
            thom_class_poly(4, &chern).unwrap_err(),
            Error::RankTooLarge { rank: 4, available: 3 }
        ));
    }

    #[test]
    fn projective_reduction() {
        let q = rationals();
        let x = TruncatedSeries::variable(&q, 1, 0, 5);
        // x^3 dies in P^2
        assert!(projective_ring_reduce(&x.pow(3).unwrap(), 2).unwrap().is_zero());
        // 1 + x is already reduced in P^1
        let s = TruncatedSeries::one(&q, 1, 1).add(&x.truncated(1)).unwrap();
        assert_eq!(projective_ring_reduce(&s, 1).unwrap(), s);
        // (1+x)^3 = 1 + 3x in P^1
        let cube = TruncatedSeries::one(&q, 1, 5).add(&x).unwrap().pow(3).unwrap();
        let reduced = projective_ring_reduce(&cube, 1).unwrap();
        assert_eq!(reduced.coeff_at(&[0]).constant_term(), rat_int(1));
        assert_eq!(reduced.coeff_at(&[1]).constant_term(), rat_int(3));
        assert_eq!(reduced.iter().count(), 2);
        // idempotent
        assert_eq!(projective_ring_reduce(&reduced, 1).unwrap(), reduced);
    }

    #[test]
    fn projective_reduction_is_ring_homomorphic() {
        let q = rationals();
        let x = TruncatedSeries::variable(&q, 1, 0, 6);
        let a = TruncatedSeries::one(&q, 1, 6)
            .add(&x.scalar_mul(&rat(3, 2)).unwrap())
            .unwrap()
            .add(&x.pow(2).unwrap())
            .unwrap();
        let b = x.add(&x.pow(3).unwrap().scalar_mul(&rat(-1, 5)).unwrap()).unwrap();
        let n = 2;
        let direct = projective_ring_reduce(&a.mul(&b).unwrap(), n).unwrap();
        let staged = projective_ring_reduce(
            &projective_ring_reduce(&a, n)
                .unwrap()
                .mul(&projective_ring_reduce(&b, n).unwrap())
                .unwrap(),
            n,
        )
        .unwrap();
        assert_eq!(direct, staged);
    }

    #[test]
    fn stability_of_product_expansion() {
        // weight-d part independent of n for n >= d: compare n and n+1 up to
        // weight n by reindexing the smaller expansion into the larger ring
        let q = rationals();
        let t = TruncatedSeries::variable(&q, 1, 0, 6);
        let h = TruncatedSeries::one(&q, 1, 6)
            .add(&t).unwrap()
            .add(&t.pow(2).unwrap().scalar_mul(&rat(1, 2)).unwrap()).unwrap()
            .add(&t.pow(3).unwrap().scalar_mul(&rat_int(-2)).unwrap()).unwrap();
        for n in 1..=3usize {
            let d = 6u32;
            let (small, p_small) = expand_product_h(&h, n, d).unwrap();
            let (large, p_large) = expand_product_h(&h, n + 1, d).unwrap();
            let lifted = p_small.reindex(large.ring()).unwrap();
            let bound = n as u64;
            let weights = large.ring().weights();
            let filter = |p: &GradedPolynomial, limit: u64| {
                p.iter()
                    .filter(|(e, _)| e.weight(&weights) <= limit)
                    .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
                    .collect::<Vec<_>>()
            };
            assert_eq!(filter(&lifted, bound), filter(&p_large, bound), "n = {n}");
            let _ = small;
        }
    }
}
