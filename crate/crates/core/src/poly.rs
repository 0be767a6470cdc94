//! Sparse multivariate polynomials over a described coefficient ring.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded-lexicographic order (total degree first, then the exponent vector
//! lexicographically), so iteration order is the canonical serialization
//! order. Zero coefficients are never stored, and every exponent vector has
//! one entry per ring generator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rat};
use crate::ring::RingRef;

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zeros(len: usize) -> Self {
        Exponents(vec![0; len])
    }

    /// All zero except a 1 in position `idx`.
    pub fn unit(len: usize, idx: usize) -> Self {
        let mut v = vec![0; len];
        v[idx] = 1;
        Exponents(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum (degrees add under multiplication).
    pub fn plus(&self, other: &Exponents) -> Exponents {
        debug_assert_eq!(self.0.len(), other.0.len());
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Weighted degree against a weight per position.
    pub fn weight(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in the generators of a [`RingRef`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    ring: RingRef,
    terms: BTreeMap<Exponents, Rat>,
}

impl GradedPolynomial {
    pub fn zero(ring: &RingRef) -> Self {
        GradedPolynomial { ring: Arc::clone(ring), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rat::one()).expect("1 lies in every base")
    }

    /// A constant polynomial; the scalar must lie in the base ring.
    pub fn constant(ring: &RingRef, c: Rat) -> Result<Self> {
        if !ring.base().contains(&c) {
            return Err(Error::ScalarOutsideBase(rational::format_rat(&c)));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::zeros(ring.num_generators()), c);
        }
        Ok(GradedPolynomial { ring: Arc::clone(ring), terms })
    }

    /// The `idx`-th generator as a polynomial.
    pub fn generator(ring: &RingRef, idx: usize) -> Result<Self> {
        if idx >= ring.num_generators() {
            return Err(Error::NoSuchGenerator(idx));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Exponents::unit(ring.num_generators(), idx), Rat::one());
        Ok(GradedPolynomial { ring: Arc::clone(ring), terms })
    }

    /// A single term c * prod(gen_i^{e_i}).
    pub fn monomial(ring: &RingRef, exps: Vec<u32>, c: Rat) -> Result<Self> {
        if exps.len() != ring.num_generators() {
            return Err(Error::ArityMismatch);
        }
        if !ring.base().contains(&c) {
            return Err(Error::ScalarOutsideBase(rational::format_rat(&c)));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::new(exps), c);
        }
        Ok(GradedPolynomial { ring: Arc::clone(ring), terms })
    }

    /// Build from raw terms, dropping zeros. Exponent lengths must match.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let mut acc = Self::zero(ring);
        for (exps, c) in terms {
            acc = acc.add(&Self::monomial(ring, exps, c)?)?;
        }
        Ok(acc)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at an exponent vector (zero when absent).
    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.ring.num_generators()])
    }

    /// True iff the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// Canonical iteration (graded-lex on exponent vectors).
    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(GradedPolynomial { ring: Arc::clone(&self.ring), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        GradedPolynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.plus(eb);
                let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Ok(GradedPolynomial { ring: Arc::clone(&self.ring), terms })
    }

    /// Multiply by a scalar that must lie in the base ring.
    pub fn scalar_mul(&self, c: &Rat) -> Result<Self> {
        if !self.ring.base().contains(c) {
            return Err(Error::ScalarOutsideBase(rational::format_rat(c)));
        }
        Ok(self.scalar_mul_unchecked(c))
    }

    /// Multiply by an arbitrary rational (used where the result is known to
    /// land back in the base, or over rationalized rings).
    pub fn scalar_mul_unchecked(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        GradedPolynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// True iff every coefficient's denominator is coprime to p.
    pub fn is_p_local(&self, p: u64) -> bool {
        self.terms.values().all(|c| rational::is_p_integral(c, p))
    }

    /// If every monomial has the same weighted degree, return it.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let weights = self.ring.weights();
        let mut it = self.terms.keys().map(|e| e.weight(&weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// True iff zero or homogeneous of exactly weight w.
    pub fn is_homogeneous_of_weight(&self, w: u64) -> bool {
        self.is_zero() || self.homogeneous_weight() == Some(w)
    }

    /// Largest weighted degree among the monomials (zero polynomial: 0).
    pub fn max_weight(&self) -> u64 {
        let weights = self.ring.weights();
        self.terms.keys().map(|e| e.weight(&weights)).max().unwrap_or(0)
    }

    /// Evaluate the generator-substitution homomorphism sending the i-th
    /// generator to `images[i]`; coefficients map through unchanged, so the
    /// target base must contain them.
    pub fn substitute(&self, target: &RingRef, images: &[GradedPolynomial]) -> Result<Self> {
        if images.len() != self.ring.num_generators() {
            return Err(Error::ArityMismatch);
        }
        for img in images {
            if img.ring() != target && !Arc::ptr_eq(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut acc = GradedPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = GradedPolynomial::constant(target, c.clone())?;
            for (i, &exp) in e.as_slice().iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].pow(exp))?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Re-express over a ring that contains generators with the same names
    /// (e.g. an extension of this polynomial's ring).
    pub fn reindex(&self, target: &RingRef) -> Result<Self> {
        let images: Vec<GradedPolynomial> = self
            .ring
            .generators()
            .iter()
            .map(|g| {
                let idx = target.generator_index(&g.name).ok_or(Error::RingMismatch)?;
                GradedPolynomial::generator(target, idx)
            })
            .collect::<Result<_>>()?;
        self.substitute(target, &images)
    }

    /// Same terms over a different base (membership rechecked).
    pub fn rebase(&self, target: &RingRef) -> Result<Self> {
        if target.generators() != self.ring.generators() {
            return Err(Error::RingMismatch);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if !target.base().contains(c) {
                return Err(Error::ScalarOutsideBase(rational::format_rat(c)));
            }
            terms.insert(e.clone(), c.clone());
        }
        Ok(GradedPolynomial { ring: Arc::clone(target), terms })
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let gens = self.ring.generators();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.is_zero();
            if is_const || !c.abs().is_one() {
                factors.push(rational::format_rat(&c.abs()));
            }
            for (g, &exp) in gens.iter().zip(e.as_slice()) {
                match exp {
                    0 => {}
                    1 => factors.push(g.name.clone()),
                    _ => factors.push(format!("{}^{}", g.name, exp)),
                }
            }
            let sign = if c < &Rat::zero() { "-" } else { "+" };
            match (i, sign) {
                (0, "+") => {}
                (0, s) => write!(f, "{s}")?,
                (_, s) => write!(f, " {s} ")?,
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::ring::{make_ring, rationals, RingBase};

    fn two_gen_ring() -> RingRef {
        make_ring(RingBase::Rationals, vec![("m1", 1), ("m2", 2)]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = two_gen_ring();
        let m1 = GradedPolynomial::generator(&r, 0).unwrap();
        let m2 = GradedPolynomial::generator(&r, 1).unwrap();
        let sum = m1.add(&m2).unwrap();
        let diff = m1.sub(&m2).unwrap();
        let product = sum.mul(&diff).unwrap();
        let expected = m1.mul(&m1).unwrap().sub(&m2.mul(&m2).unwrap()).unwrap();
        assert_eq!(product, expected);
    }

    #[test]
    fn additive_inverse_gives_empty_term_map() {
        let r = two_gen_ring();
        let p = GradedPolynomial::from_terms(
            &r,
            vec![(vec![1, 0], rat_int(2)), (vec![0, 1], rat(-1, 3))],
        )
        .unwrap();
        let z = p.add(&p.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn scalar_action_over_rationals() {
        let r = two_gen_ring();
        let p = GradedPolynomial::monomial(&r, vec![1, 0], rat_int(3)).unwrap();
        let half = p.scalar_mul(&rat(1, 2)).unwrap();
        assert_eq!(half.coefficient(&[1, 0]), rat(3, 2));
    }

    #[test]
    fn scalar_outside_integer_base_rejected() {
        let r = make_ring(RingBase::Integers, vec![("a", 1)]).unwrap();
        let p = GradedPolynomial::generator(&r, 0).unwrap();
        assert!(matches!(p.scalar_mul(&rat(1, 2)), Err(Error::ScalarOutsideBase(_))));
        assert!(GradedPolynomial::constant(&r, rat(1, 2)).is_err());
    }

    #[test]
    fn ring_mismatch_detected() {
        let a = GradedPolynomial::one(&two_gen_ring());
        let b = GradedPolynomial::one(&rationals());
        assert_eq!(a.add(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn p_locality_predicate() {
        let q = rationals();
        let third = GradedPolynomial::constant(&q, rat(1, 3)).unwrap();
        let half = GradedPolynomial::constant(&q, rat(1, 2)).unwrap();
        let zero = GradedPolynomial::zero(&q);
        assert!(third.is_p_local(2));
        assert!(!half.is_p_local(2));
        assert!(zero.is_p_local(2));
        assert!(zero.is_p_local(97));
    }

    #[test]
    fn homogeneity_and_weights() {
        let r = two_gen_ring();
        // m1^2 and m2 both have weight 2
        let p = GradedPolynomial::from_terms(
            &r,
            vec![(vec![2, 0], rat_int(1)), (vec![0, 1], rat_int(-5))],
        )
        .unwrap();
        assert_eq!(p.homogeneous_weight(), Some(2));
        let q = p.add(&GradedPolynomial::one(&r)).unwrap();
        assert_eq!(q.homogeneous_weight(), None);
        assert_eq!(q.max_weight(), 2);
    }

    #[test]
    fn substitution_specializes_generators() {
        let r = two_gen_ring();
        let q = rationals();
        // m1^2 + m2 at m1 = 2, m2 = -1/3
        let p = GradedPolynomial::from_terms(
            &r,
            vec![(vec![2, 0], rat_int(1)), (vec![0, 1], rat_int(1))],
        )
        .unwrap();
        let images = vec![
            GradedPolynomial::constant(&q, rat_int(2)).unwrap(),
            GradedPolynomial::constant(&q, rat(-1, 3)).unwrap(),
        ];
        let v = p.substitute(&q, &images).unwrap();
        assert_eq!(v.constant_term(), rat(11, 3));
    }

    #[test]
    fn graded_lex_order() {
        let mut keys = [
            Exponents::new(vec![2, 0]),
            Exponents::new(vec![0, 1]),
            Exponents::new(vec![1, 1]),
            Exponents::new(vec![0, 0]),
            Exponents::new(vec![0, 2]),
        ];
        keys.sort();
        let sorted: Vec<&[u32]> = keys.iter().map(|e| e.as_slice()).collect();
        assert_eq!(sorted, [&[0, 0][..], &[0, 1], &[0, 2], &[1, 1], &[2, 0]]);
    }

    #[test]
    fn display_is_readable() {
        let r = two_gen_ring();
        let p = GradedPolynomial::from_terms(
            &r,
            vec![(vec![0, 0], rat_int(1)), (vec![1, 0], rat(-3, 2)), (vec![0, 1], rat_int(1))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1 + m2 - 3/2*m1");
    }
}
