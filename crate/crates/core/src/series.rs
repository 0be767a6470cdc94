//! Power series in finitely many formal variables, truncated at a stated
//! total degree, with [`GradedPolynomial`] coefficients.
//!
//! Invariants:
//! - every stored exponent tuple has total degree <= `trunc`
//! - no stored zero coefficients
//! - keys iterate in graded-lexicographic order (the canonical order)
//!
//! Truncation counts the formal series variables only; generator weights on
//! the coefficient ring are metadata for homogeneity checks and play no role
//! in truncation. Public constructors make series in one or two variables
//! (`t`, or `x` and `y`); higher arities arise internally, e.g. when an
//! associativity check introduces a third variable.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Exponents, GradedPolynomial};
use crate::rational::Rat;
use crate::ring::RingRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: RingRef,
    vars: usize,
    trunc: u32,
    coeffs: BTreeMap<Exponents, GradedPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(ring: &RingRef, vars: usize, trunc: u32) -> Self {
        assert!(vars >= 1, "series need at least one variable");
        TruncatedSeries { ring: Arc::clone(ring), vars, trunc, coeffs: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, vars: usize, trunc: u32, c: Rat) -> Result<Self> {
        let mut s = Self::zero(ring, vars, trunc);
        s.set_coeff(Exponents::zeros(vars), GradedPolynomial::constant(ring, c)?);
        Ok(s)
    }

    pub fn one(ring: &RingRef, vars: usize, trunc: u32) -> Self {
        Self::constant(ring, vars, trunc, Rat::one()).expect("1 lies in every base")
    }

    /// The coordinate series for variable `idx`.
    pub fn variable(ring: &RingRef, vars: usize, idx: usize, trunc: u32) -> Self {
        assert!(idx < vars, "variable index out of range");
        let mut s = Self::zero(ring, vars, trunc);
        s.set_coeff(Exponents::unit(vars, idx), GradedPolynomial::one(ring));
        s
    }

    /// Build from explicit (exponents, coefficient) pairs; terms beyond the
    /// truncation are rejected rather than silently dropped.
    pub fn from_terms(
        ring: &RingRef,
        vars: usize,
        trunc: u32,
        terms: Vec<(Vec<u32>, GradedPolynomial)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ring, vars, trunc);
        for (exps, poly) in terms {
            if exps.len() != vars {
                return Err(Error::ArityMismatch);
            }
            if poly.ring() != ring {
                return Err(Error::RingMismatch);
            }
            let key = Exponents::new(exps);
            if key.total_degree() > trunc {
                return Err(Error::TermBeyondTruncation { degree: key.total_degree(), truncation: trunc });
            }
            let sum = s.coeff(&key).add(&poly)?;
            s.set_coeff(key, sum);
        }
        Ok(s)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient polynomial at an exponent tuple (zero when absent).
    pub fn coeff(&self, exps: &Exponents) -> GradedPolynomial {
        self.coeffs
            .get(exps)
            .cloned()
            .unwrap_or_else(|| GradedPolynomial::zero(&self.ring))
    }

    /// Coefficient by slice, for convenience in tests and callers.
    pub fn coeff_at(&self, exps: &[u32]) -> GradedPolynomial {
        self.coeff(&Exponents::new(exps.to_vec()))
    }

    /// Scalar coefficient at an exponent tuple; None when the coefficient is
    /// not a constant polynomial.
    pub fn scalar_coeff_at(&self, exps: &[u32]) -> Option<Rat> {
        let c = self.coeff_at(exps);
        c.is_constant().then(|| c.constant_term())
    }

    pub fn constant_coeff(&self) -> GradedPolynomial {
        self.coeff(&Exponents::zeros(self.vars))
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &GradedPolynomial)> {
        self.coeffs.iter()
    }

    fn set_coeff(&mut self, exps: Exponents, poly: GradedPolynomial) {
        debug_assert_eq!(exps.len(), self.vars);
        if exps.total_degree() > self.trunc || poly.is_zero() {
            self.coeffs.remove(&exps);
        } else {
            self.coeffs.insert(exps, poly);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ArityMismatch);
        }
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(&self.ring, self.vars, trunc);
        for (e, p) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if e.total_degree() > trunc {
                continue;
            }
            let sum = out.coeff(e).add(p)?;
            out.set_coeff(e.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, p)| (e.clone(), p.neg())).collect();
        TruncatedSeries { ring: Arc::clone(&self.ring), vars: self.vars, trunc: self.trunc, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut acc: BTreeMap<Exponents, GradedPolynomial> = BTreeMap::new();
        for (ea, pa) in &self.coeffs {
            let da = ea.total_degree();
            if da > trunc {
                continue;
            }
            // keys ascend by total degree, so once over the bound we stop
            for (eb, pb) in &other.coeffs {
                if da + eb.total_degree() > trunc {
                    break;
                }
                let e = ea.plus(eb);
                let prod = pa.mul(pb)?;
                match acc.get_mut(&e) {
                    Some(entry) => *entry = entry.add(&prod)?,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(TruncatedSeries { ring: Arc::clone(&self.ring), vars: self.vars, trunc, coeffs: acc })
    }

    /// Multiply every coefficient by a polynomial from the same ring.
    pub fn poly_scale(&self, p: &GradedPolynomial) -> Result<Self> {
        if p.ring() != &self.ring && !Arc::ptr_eq(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(&self.ring, self.vars, self.trunc);
        for (e, q) in &self.coeffs {
            out.set_coeff(e.clone(), q.mul(p)?);
        }
        Ok(out)
    }

    /// Multiply by a scalar from the base ring.
    pub fn scalar_mul(&self, c: &Rat) -> Result<Self> {
        let mut out = Self::zero(&self.ring, self.vars, self.trunc);
        for (e, q) in &self.coeffs {
            out.set_coeff(e.clone(), q.scalar_mul(c)?);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring, self.vars, self.trunc);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit constant of
    /// the base ring (any nonzero rational over the rationals).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_coeff();
        if !c0.is_constant() {
            return Err(Error::NonInvertibleLeadingTerm);
        }
        let u = c0.constant_term();
        if !self.ring.base().is_unit(&u) {
            return Err(Error::NonInvertibleLeadingTerm);
        }
        let u_inv = u.recip();
        // 1/(u + q) = (1/u) * sum_k (-q/u)^k
        let mut tail = self.clone();
        tail.set_coeff(Exponents::zeros(self.vars), GradedPolynomial::zero(&self.ring));
        let step = tail.scalar_mul_raw(&-u_inv.clone());
        let mut acc = Self::one(&self.ring, self.vars, self.trunc);
        let mut result = Self::one(&self.ring, self.vars, self.trunc);
        for _ in 1..=self.trunc {
            acc = acc.mul(&step)?;
            if acc.is_zero() {
                break;
            }
            result = result.add(&acc)?;
        }
        Ok(result.scalar_mul_raw(&u_inv))
    }

    /// Scalar multiple without base-membership checks; callers guarantee the
    /// result stays in the ring (e.g. dividing by a unit).
    fn scalar_mul_raw(&self, c: &Rat) -> Self {
        let mut out = Self::zero(&self.ring, self.vars, self.trunc);
        for (e, q) in &self.coeffs {
            out.set_coeff(e.clone(), q.scalar_mul_unchecked(c));
        }
        out
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        self.mul(&other.inverse()?)
    }

    /// Substitute one series per variable of `self`. All arguments must live
    /// over the same ring and variable set as each other and have zero
    /// constant term; the result is truncated at the minimum truncation in
    /// sight.
    pub fn substitute(&self, args: &[TruncatedSeries]) -> Result<Self> {
        if args.len() != self.vars {
            return Err(Error::ArityMismatch);
        }
        let first = args.first().ok_or(Error::ArityMismatch)?;
        let mut trunc = self.trunc;
        for a in args {
            first.check_compatible(a)?;
            if a.ring != self.ring {
                return Err(Error::RingMismatch);
            }
            if !a.constant_coeff().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
            trunc = trunc.min(a.trunc);
        }
        let vars = first.vars;

        // cache arg powers; arg^e vanishes for e > trunc since min degree >= 1
        let mut max_exp = vec![0u32; self.vars];
        for e in self.coeffs.keys() {
            for (m, &x) in max_exp.iter_mut().zip(e.as_slice()) {
                *m = (*m).max(x.min(trunc + 1));
            }
        }
        let mut powers: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(self.vars);
        for (j, a) in args.iter().enumerate() {
            let a = a.truncated(trunc);
            let mut table = vec![Self::one(&self.ring, vars, trunc)];
            for e in 1..=max_exp[j].min(trunc) {
                let next = table[(e - 1) as usize].mul(&a)?;
                table.push(next);
            }
            powers.push(table);
        }

        let mut out = Self::zero(&self.ring, vars, trunc);
        for (e, p) in &self.coeffs {
            if e.total_degree() > trunc {
                continue;
            }
            let mut term: Option<TruncatedSeries> = None;
            let mut vanished = false;
            for (j, &exp) in e.as_slice().iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if exp > trunc {
                    vanished = true;
                    break;
                }
                let factor = &powers[j][exp as usize];
                if factor.is_zero() {
                    vanished = true;
                    break;
                }
                term = Some(match term {
                    None => factor.clone(),
                    Some(t) => t.mul(factor)?,
                });
            }
            if vanished {
                continue;
            }
            let term = match term {
                None => Self::one(&self.ring, vars, trunc).poly_scale(p)?,
                Some(t) => t.poly_scale(p)?,
            };
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Composition f(g) for univariate f.
    pub fn compose(&self, g: &TruncatedSeries) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::ArityMismatch);
        }
        self.substitute(std::slice::from_ref(g))
    }

    /// Compositional inverse of a univariate series u*t + O(t^2) with u a
    /// unit of the base ring.
    pub fn revert(&self) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::ArityMismatch);
        }
        if !self.constant_coeff().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let lin = self.coeff_at(&[1]);
        if !lin.is_constant() {
            return Err(Error::NonInvertibleLinearCoefficient);
        }
        let u = lin.constant_term();
        if !self.ring.base().is_unit(&u) {
            return Err(Error::NonInvertibleLinearCoefficient);
        }
        let u_inv = u.recip();

        // g starts as t/u; each pass kills the lowest-degree defect of
        // f(g) - t, which moves up by at least one degree per step.
        let t = Self::variable(&self.ring, 1, 0, self.trunc);
        let mut g = t.scalar_mul_raw(&u_inv);
        for d in 2..=self.trunc {
            let defect = self.substitute(std::slice::from_ref(&g))?.sub(&t)?;
            let delta = defect.coeff_at(&[d]);
            if delta.is_zero() {
                continue;
            }
            let mut corr = Self::zero(&self.ring, 1, self.trunc);
            corr.set_coeff(Exponents::new(vec![d]), delta.scalar_mul_unchecked(&-u_inv.clone()));
            g = g.add(&corr)?;
        }
        Ok(g)
    }

    /// Termwise d/dt for univariate series.
    pub fn differentiate(&self) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::ArityMismatch);
        }
        let mut out = Self::zero(&self.ring, 1, self.trunc);
        for (e, p) in &self.coeffs {
            let n = e.as_slice()[0];
            if n == 0 {
                continue;
            }
            out.set_coeff(
                Exponents::new(vec![n - 1]),
                p.scalar_mul_unchecked(&Rat::from_integer(n.into())),
            );
        }
        Ok(out)
    }

    /// Termwise integral with zero constant of integration. The result lives
    /// over the rationalized ring and keeps the stated truncation (a t^{N+1}
    /// term is dropped).
    pub fn integrate(&self) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::ArityMismatch);
        }
        let qring = self.ring.rationalized();
        let mut out = Self::zero(&qring, 1, self.trunc);
        for (e, p) in &self.coeffs {
            let n = e.as_slice()[0];
            if n + 1 > self.trunc {
                continue;
            }
            let p = p.rebase(&qring)?;
            out.set_coeff(
                Exponents::new(vec![n + 1]),
                p.scalar_mul_unchecked(&Rat::new(1.into(), (n + 1).into())),
            );
        }
        Ok(out)
    }

    /// Drop terms above `trunc` and lower the stated truncation. Raising the
    /// truncation reinterprets exact polynomial data at higher precision and
    /// is the caller's responsibility.
    pub fn truncated(&self, trunc: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| e.total_degree() <= trunc)
            .map(|(e, p)| (e.clone(), p.clone()))
            .collect();
        TruncatedSeries { ring: Arc::clone(&self.ring), vars: self.vars, trunc, coeffs }
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.ring, self.vars, self.trunc);
        for (e, p) in &self.coeffs {
            let mut v = e.as_slice().to_vec();
            v.swap(i, j);
            out.set_coeff(Exponents::new(v), p.clone());
        }
        out
    }

    /// Apply a permutation to the variables: new exponent of position
    /// `perm[i]` is the old exponent of position `i`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars);
        let mut out = Self::zero(&self.ring, self.vars, self.trunc);
        for (e, p) in &self.coeffs {
            let mut v = vec![0u32; self.vars];
            for (i, &x) in e.as_slice().iter().enumerate() {
                v[perm[i]] = x;
            }
            out.set_coeff(Exponents::new(v), p.clone());
        }
        out
    }

    /// View this series inside a larger variable set, placing variable i at
    /// position `slots[i]`.
    pub fn embed(&self, vars: usize, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), self.vars);
        assert!(slots.iter().all(|&s| s < vars));
        let mut out = Self::zero(&self.ring, vars, self.trunc);
        for (e, p) in &self.coeffs {
            let mut v = vec![0u32; vars];
            for (i, &x) in e.as_slice().iter().enumerate() {
                v[slots[i]] = x;
            }
            out.set_coeff(Exponents::new(v), p.clone());
        }
        out
    }

    /// Transform every coefficient; used for rebasing and specialization.
    /// The closure must produce polynomials over `target`.
    pub fn map_coeffs<F>(&self, target: &RingRef, f: F) -> Result<Self>
    where
        F: Fn(&GradedPolynomial) -> Result<GradedPolynomial>,
    {
        let mut out = Self::zero(target, self.vars, self.trunc);
        for (e, p) in &self.coeffs {
            let q = f(p)?;
            if q.ring() != target && !Arc::ptr_eq(q.ring(), target) {
                return Err(Error::RingMismatch);
            }
            let sum = out.coeff(e).add(&q)?;
            out.set_coeff(e.clone(), sum);
        }
        Ok(out)
    }

    /// The same series over the rationalized ring.
    pub fn rationalized(&self) -> Self {
        let qring = self.ring.rationalized();
        self.map_coeffs(&qring, |p| p.rebase(&qring))
            .expect("rationalization cannot lose membership")
    }

    /// Every coefficient of every coefficient polynomial is p-integral.
    pub fn is_p_local(&self, p: u64) -> bool {
        self.coeffs.values().all(|q| q.is_p_local(p))
    }

    /// Divide a univariate series with zero constant term by t.
    pub fn shift_down(&self) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::ArityMismatch);
        }
        if !self.constant_coeff().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::zero(&self.ring, 1, self.trunc.saturating_sub(1));
        for (e, p) in &self.coeffs {
            let n = e.as_slice()[0];
            if n >= 1 {
                out.set_coeff(Exponents::new(vec![n - 1]), p.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var_name = |i: usize| -> String {
            match (self.vars, i) {
                (1, _) => "t".into(),
                (2, 0) => "x".into(),
                (2, 1) => "y".into(),
                (_, i) => format!("x{}", i + 1),
            }
        };
        if self.is_zero() {
            write!(f, "0")?;
        }
        for (i, (e, p)) in self.coeffs.iter().enumerate() {
            let mono: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| if x == 1 { var_name(j) } else { format!("{}^{}", var_name(j), x) })
                .collect();
            let mut coeff = format!("{p}");
            let needs_parens = coeff.contains(' ');
            // pull a plain leading sign out of the coefficient
            let mut sign = "+";
            if !needs_parens {
                if let Some(stripped) = coeff.strip_prefix('-') {
                    sign = "-";
                    coeff = stripped.to_string();
                }
            }
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                (_, s) => write!(f, " {s} ")?,
            }
            match (mono.is_empty(), needs_parens, coeff.as_str()) {
                (true, _, _) => write!(f, "{coeff}")?,
                (false, false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, false, _) => write!(f, "{}*{}", coeff, mono.join("*"))?,
                (false, true, _) => write!(f, "({})*{}", coeff, mono.join("*"))?,
            }
        }
        write!(f, " + O(deg {})", self.trunc + 1)
    }
}

/// Evaluate a polynomial at series values: generator i goes to `images[i]`.
/// Coefficients of the polynomial map to constants of the image ring, so the
/// image base must contain them.
pub fn poly_at_series(
    poly: &GradedPolynomial,
    images: &[TruncatedSeries],
) -> Result<TruncatedSeries> {
    let first = images.first().ok_or(Error::ArityMismatch)?;
    if images.len() != poly.ring().num_generators() {
        return Err(Error::ArityMismatch);
    }
    let (ring, vars, mut trunc) = (first.ring().clone(), first.vars(), first.truncation());
    for img in images {
        first.check_compatible(img)?;
        trunc = trunc.min(img.truncation());
    }
    let mut acc = TruncatedSeries::zero(&ring, vars, trunc);
    for (e, c) in poly.iter() {
        let mut term = TruncatedSeries::constant(&ring, vars, trunc, c.clone())?;
        for (i, &exp) in e.as_slice().iter().enumerate() {
            if exp > 0 {
                term = term.mul(&images[i].pow(exp)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
