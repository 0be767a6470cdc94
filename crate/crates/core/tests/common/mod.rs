//! Test-only oracles, independent of the library's sparse series code.
//!
//! `DensePoly` is a dense univariate polynomial over exact rationals with
//! schoolbook arithmetic mod t^{N+1}; `DenseMulti` is a dense multivariate
//! polynomial keyed by exponent vectors. Expected values asserted in the
//! test suites are computed (or cross-checked) with these.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fgl_core::rational::{rat_int, Rat};
use fgl_core::{GradedPolynomial, TruncatedSeries};
use num_traits::Zero;

/// Dense univariate polynomial; coeffs[i] is the t^i coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly {
    pub coeffs: Vec<Rat>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: vec![] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        DensePoly { coeffs: coeffs.iter().map(|&c| rat_int(c)).collect() }
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        DensePoly { coeffs }
    }

    pub fn mul_mod(&self, other: &Self, trunc: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > trunc || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > trunc {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        DensePoly { coeffs }
    }

    /// Brute-force substitution f(g) mod t^{trunc+1}; g must have zero
    /// constant term.
    pub fn compose_mod(&self, g: &Self, trunc: usize) -> Self {
        assert!(g.coeff(0).is_zero(), "oracle composition needs g(0) = 0");
        let mut result = DensePoly::zero();
        let mut power = DensePoly { coeffs: vec![Rat::from_integer(1.into())] };
        for (n, a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                power = power.mul_mod(g, trunc);
            }
            if !a.is_zero() {
                let term = DensePoly { coeffs: power.coeffs.iter().map(|c| c * a).collect() };
                result = result.add(&term);
            }
        }
        result
    }

    /// Convert a univariate series with constant (scalar) coefficients.
    pub fn from_series(s: &TruncatedSeries) -> Self {
        assert_eq!(s.vars(), 1);
        let mut coeffs = vec![Rat::zero(); s.truncation() as usize + 1];
        for (e, p) in s.iter() {
            assert!(p.is_constant(), "oracle comparison needs scalar coefficients");
            coeffs[e.as_slice()[0] as usize] = p.constant_term();
        }
        DensePoly { coeffs }
    }

    /// Equality against a univariate series up to its truncation.
    pub fn matches(&self, s: &TruncatedSeries) -> bool {
        let other = Self::from_series(s);
        let n = s.truncation() as usize;
        (0..=n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

/// Dense multivariate polynomial over exact rationals, keyed by exponent
/// vectors of a fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMulti {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl DenseMulti {
    pub fn zero(vars: usize) -> Self {
        DenseMulti { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn variable(vars: usize, idx: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps, Rat::from_integer(1.into()));
        p
    }

    pub fn insert(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.vars);
        let entry = self.terms.entry(exps.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn mul_mod(&self, other: &Self, trunc: u32) -> Self {
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() > trunc {
                    continue;
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }

    /// Substitute variable i by the univariate polynomial h in that same
    /// variable: used to form h(x_i) from h(t).
    pub fn univariate_in(h: &DensePoly, vars: usize, idx: usize) -> Self {
        let mut out = Self::zero(vars);
        for (n, c) in h.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0; vars];
            exps[idx] = n as u32;
            out.insert(exps, c.clone());
        }
        out
    }

    /// Compare against an n-variable series with scalar coefficients.
    pub fn matches(&self, s: &TruncatedSeries) -> bool {
        assert_eq!(s.vars(), self.vars);
        let mut other = Self::zero(self.vars);
        for (e, p) in s.iter() {
            assert!(p.is_constant());
            other.insert(e.as_slice().to_vec(), p.constant_term());
        }
        self.terms == other.terms
    }
}

/// Scalar coefficient of a series, for frozen-value assertions.
pub fn scalar_at(s: &TruncatedSeries, exps: &[u32]) -> Rat {
    let c = s.coeff_at(exps);
    assert!(c.is_constant(), "coefficient at {exps:?} is not scalar: {c}");
    c.constant_term()
}

/// Shorthand for comparing a polynomial coefficient with a rational.
pub fn poly_is_const(p: &GradedPolynomial, v: &Rat) -> bool {
    p.is_constant() && &p.constant_term() == v
}
