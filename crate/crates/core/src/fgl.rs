//! Formal group laws as data: axiom checking, logarithm and exponential,
//! n-series, strict isomorphisms, and transport along a change of
//! orientation.
//!
//! A law is a bivariate truncated series F with F(x,0) = x, F(0,y) = y,
//! F(x,y) = F(y,x), and F(F(x,y),z) = F(x,F(y,z)), all up to the stated
//! truncation. Associativity is checked by substitution with a third formal
//! variable, realized internally by extending the series arity.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Exponents, GradedPolynomial};
use crate::rational::Rat;
use crate::series::TruncatedSeries;
use crate::ring::RingRef;

/// The four defining axioms, for violation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    LeftUnit,
    RightUnit,
    Commutativity,
    Associativity,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::LeftUnit => "left_unit",
            Axiom::RightUnit => "right_unit",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
        }
    }

    /// Unitality groups the two unit axioms.
    pub fn is_unitality(&self) -> bool {
        matches!(self, Axiom::LeftUnit | Axiom::RightUnit)
    }
}

/// One failed axiom with the first failing coefficient as evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Exponent tuple of the first nonzero defect coefficient (three entries
    /// for associativity, two otherwise).
    pub exponents: Vec<u32>,
    /// The nonzero defect value at that tuple.
    pub defect: GradedPolynomial,
}

/// Result of checking the axioms; empty means the series is a formal group
/// law to its truncation degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "all axioms hold");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} fails at {:?} with defect {}", v.axiom.name(), v.exponents, v.defect))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn first_nonzero(s: &TruncatedSeries) -> Option<(Vec<u32>, GradedPolynomial)> {
    s.iter()
        .next()
        .map(|(e, p)| (e.as_slice().to_vec(), p.clone()))
}

/// Check the formal-group-law axioms of a bivariate series, reporting each
/// failed axiom with its first failing coefficient in canonical order.
pub fn check_fgl_axioms(series: &TruncatedSeries) -> Result<AxiomReport> {
    if series.vars() != 2 {
        return Err(Error::ArityMismatch);
    }
    if series.truncation() < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let ring = series.ring();
    let n = series.truncation();
    let mut violations = Vec::new();

    // F(x,0) and F(0,y) are coefficient extractions, no substitution needed
    for (axiom, keep_var) in [(Axiom::LeftUnit, 0usize), (Axiom::RightUnit, 1usize)] {
        let mut defect = TruncatedSeries::zero(ring, 2, n);
        for (e, p) in series.iter() {
            let exps = e.as_slice();
            if exps[1 - keep_var] != 0 {
                continue;
            }
            let mut expected = GradedPolynomial::zero(ring);
            if exps[keep_var] == 1 {
                expected = GradedPolynomial::one(ring);
            }
            let diff = p.sub(&expected)?;
            if !diff.is_zero() {
                defect = defect.add(&TruncatedSeries::from_terms(
                    ring,
                    2,
                    n,
                    vec![(exps.to_vec(), diff)],
                )?)?;
            }
        }
        // a missing linear term is also a violation
        if series.coeff(&Exponents::unit(2, keep_var)).is_zero() {
            let minus_one = GradedPolynomial::one(ring).neg();
            defect = defect.add(&TruncatedSeries::from_terms(
                ring,
                2,
                n,
                vec![(Exponents::unit(2, keep_var).as_slice().to_vec(), minus_one)],
            )?)?;
        }
        if let Some((exponents, defect)) = first_nonzero(&defect) {
            violations.push(AxiomViolation { axiom, exponents, defect });
        }
    }

    let comm_defect = series.sub(&series.swap_vars(0, 1))?;
    if let Some((exponents, defect)) = first_nonzero(&comm_defect) {
        violations.push(AxiomViolation { axiom: Axiom::Commutativity, exponents, defect });
    }

    // associativity via a third variable
    let x3 = TruncatedSeries::variable(ring, 3, 0, n);
    let y3 = TruncatedSeries::variable(ring, 3, 1, n);
    let z3 = TruncatedSeries::variable(ring, 3, 2, n);
    let xy = series.substitute(&[x3.clone(), y3.clone()])?;
    let yz = series.substitute(&[y3, z3.clone()])?;
    let lhs = series.substitute(&[xy, z3])?;
    let rhs = series.substitute(&[x3, yz])?;
    if let Some((exponents, defect)) = first_nonzero(&lhs.sub(&rhs)?) {
        violations.push(AxiomViolation { axiom: Axiom::Associativity, exponents, defect });
    }

    Ok(AxiomReport { violations })
}

/// A validated formal group law over a described coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalGroupLaw {
    series: TruncatedSeries,
}

impl FormalGroupLaw {
    /// Validate a bivariate series as a formal group law. The truncation
    /// must be at least 2 (below that the axioms are vacuous).
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        let report = check_fgl_axioms(&series)?;
        if !report.is_empty() {
            return Err(Error::NotAFormalGroupLaw(report.to_string()));
        }
        Ok(FormalGroupLaw { series })
    }

    /// Wrap a series that is a law by construction (conjugation or a
    /// logarithm-based build); axiom checking is skipped.
    pub(crate) fn from_series_unchecked(series: TruncatedSeries) -> Self {
        debug_assert_eq!(series.vars(), 2);
        FormalGroupLaw { series }
    }

    /// x + y.
    pub fn additive(ring: &RingRef, trunc: u32) -> Result<Self> {
        if trunc < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let x = TruncatedSeries::variable(ring, 2, 0, trunc);
        let y = TruncatedSeries::variable(ring, 2, 1, trunc);
        Ok(FormalGroupLaw { series: x.add(&y)? })
    }

    /// x + y + xy.
    pub fn multiplicative(ring: &RingRef, trunc: u32) -> Result<Self> {
        if trunc < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let x = TruncatedSeries::variable(ring, 2, 0, trunc);
        let y = TruncatedSeries::variable(ring, 2, 1, trunc);
        Ok(FormalGroupLaw { series: x.add(&y)?.add(&x.mul(&y)?)? })
    }

    /// Build the law with the given logarithm: exp(log x + log y). The
    /// logarithm must be a strict univariate series; the result lives over
    /// the logarithm's (rationalized) ring and is a law by construction.
    pub fn from_log(log: &TruncatedSeries) -> Result<Self> {
        if log.vars() != 1 {
            return Err(Error::ArityMismatch);
        }
        if log.truncation() < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let one = GradedPolynomial::one(log.ring());
        if log.coeff_at(&[1]) != one || !log.constant_coeff().is_zero() {
            return Err(Error::NotStrict);
        }
        let exp = log.revert()?;
        let lx = log.embed(2, &[0]);
        let ly = log.embed(2, &[1]);
        let series = exp.substitute(&[lx.add(&ly)?])?;
        Ok(FormalGroupLaw { series })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn ring(&self) -> &RingRef {
        self.series.ring()
    }

    pub fn truncation(&self) -> u32 {
        self.series.truncation()
    }

    /// F(a, b) for univariate series arguments with zero constant term.
    pub fn plus(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.series.substitute(&[a.clone(), b.clone()])
    }

    /// The logarithm: the strict series l over the rationalized ring with
    /// l(F(x,y)) = l(x) + l(y). Computed from l'(t) = 1 / (dF/dy)(t, 0) by
    /// termwise integration.
    pub fn log(&self) -> Result<TruncatedSeries> {
        let ring = self.ring();
        let n = self.truncation();
        // (dF/dy)(t, 0) picks out the x^i y^1 coefficients
        let mut slope = TruncatedSeries::zero(ring, 1, n);
        for (e, p) in self.series.iter() {
            let exps = e.as_slice();
            if exps[1] == 1 {
                slope = slope.add(&TruncatedSeries::from_terms(
                    ring,
                    1,
                    n,
                    vec![(vec![exps[0]], p.clone())],
                )?)?;
            }
        }
        slope.inverse()?.integrate()
    }

    /// The exponential: compositional inverse of the logarithm.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        self.log()?.revert()
    }

    /// The formal inverse i(t) with F(t, i(t)) = 0, solved degree by degree.
    pub fn formal_inverse(&self) -> Result<TruncatedSeries> {
        let ring = self.ring();
        let n = self.truncation();
        let t = TruncatedSeries::variable(ring, 1, 0, n);
        let mut inv = t.neg();
        for d in 2..=n {
            let defect = self.plus(&t, &inv)?;
            let delta = defect.coeff_at(&[d]);
            if delta.is_zero() {
                continue;
            }
            let corr = TruncatedSeries::from_terms(ring, 1, n, vec![(vec![d], delta.neg())])?;
            inv = inv.add(&corr)?;
        }
        Ok(inv)
    }

    /// The n-series [n](t): [0] = 0, [n+1](t) = F([n](t), t), negative
    /// multiples through the formal inverse.
    pub fn n_series(&self, n: i64) -> Result<TruncatedSeries> {
        let ring = self.ring();
        let trunc = self.truncation();
        let t = TruncatedSeries::variable(ring, 1, 0, trunc);
        let mut s = TruncatedSeries::zero(ring, 1, trunc);
        for _ in 0..n.unsigned_abs() {
            s = self.plus(&s, &t)?;
        }
        if n < 0 {
            s = s.compose(&self.formal_inverse()?)?;
        }
        Ok(s)
    }

    /// Transport along a change of orientation: the law
    /// F'(x,y) = f(F(f^{-1}(x), f^{-1}(y))), for which f is a strict
    /// isomorphism F -> F'. Conjugation preserves the axioms, so the result
    /// is a law by construction.
    pub fn transport(&self, f: &OrientationSeries) -> Result<FormalGroupLaw> {
        let f_inv = f.series().revert()?;
        let inner = self.plus(&f_inv.embed(2, &[0]), &f_inv.embed(2, &[1]))?;
        let series = f.series().substitute(&[inner])?;
        Ok(FormalGroupLaw::from_series_unchecked(series))
    }

    /// True iff the coefficient of x^i y^j is homogeneous of weight i+j-1
    /// whenever the ring has graded generators.
    pub fn is_weight_homogeneous(&self) -> bool {
        if self.ring().num_generators() == 0 {
            return true;
        }
        self.series.iter().all(|(e, p)| {
            let d = e.total_degree() as u64;
            p.is_homogeneous_of_weight(d - 1)
        })
    }
}

/// A strict univariate series t + a2 t^2 + ... acting as a change of
/// orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientationSeries {
    series: TruncatedSeries,
}

impl OrientationSeries {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        if series.vars() != 1 {
            return Err(Error::ArityMismatch);
        }
        if !series.constant_coeff().is_zero() {
            return Err(Error::NotStrict);
        }
        let lin = series.coeff_at(&[1]);
        if !(lin.is_constant() && lin.constant_term() == Rat::one()) {
            return Err(Error::NotStrict);
        }
        Ok(OrientationSeries { series })
    }

    /// The identity orientation change t.
    pub fn identity(ring: &RingRef, trunc: u32) -> Self {
        OrientationSeries { series: TruncatedSeries::variable(ring, 1, 0, trunc) }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn is_identity(&self) -> bool {
        self.series == TruncatedSeries::variable(self.series.ring(), 1, 0, self.series.truncation())
    }

    /// True iff the coefficient of t^i is homogeneous of weight i-1 whenever
    /// the ring has graded generators.
    pub fn is_weight_homogeneous(&self) -> bool {
        if self.series.ring().num_generators() == 0 {
            return true;
        }
        self.series.iter().all(|(e, p)| {
            let d = e.total_degree() as u64;
            p.is_homogeneous_of_weight(d - 1)
        })
    }
}

/// Whether f(source(x,y)) = target(f(x), f(y)) up to the common truncation.
pub fn intertwines(
    f: &TruncatedSeries,
    source: &FormalGroupLaw,
    target: &FormalGroupLaw,
) -> Result<bool> {
    let lhs = f.substitute(std::slice::from_ref(source.series()))?;
    let rhs = target.plus(&f.embed(2, &[0]), &f.embed(2, &[1]))?;
    Ok(lhs == rhs)
}

/// A strict isomorphism of formal group laws: a strict series f with
/// f(source(x,y)) = target(f(x), f(y)).
#[derive(Debug, Clone, PartialEq)]
pub struct StrictIso {
    series: TruncatedSeries,
    source: FormalGroupLaw,
    target: FormalGroupLaw,
}

impl StrictIso {
    pub fn new(
        series: TruncatedSeries,
        source: FormalGroupLaw,
        target: FormalGroupLaw,
    ) -> Result<Self> {
        let strict = OrientationSeries::new(series)?;
        let series = strict.series().clone();
        if !intertwines(&series, &source, &target)? {
            return Err(Error::NotAStrictIso);
        }
        Ok(StrictIso { series, source, target })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn source(&self) -> &FormalGroupLaw {
        &self.source
    }

    pub fn target(&self) -> &FormalGroupLaw {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.series
            == TruncatedSeries::variable(self.series.ring(), 1, 0, self.series.truncation())
    }

    /// The orientation series recovered from the pair (target, iso) is the
    /// iso's own series.
    pub fn as_orientation(&self) -> OrientationSeries {
        OrientationSeries { series: self.series.clone() }
    }
}

/// The two directions of the orientation <-> (law, iso) correspondence:
/// transport F along f, recover the orientation from the resulting strict
/// isomorphism, and check it is f again; then transport back along f^{-1}
/// and check F returns. True iff both hold to the working degree.
pub fn orientation_roundtrip(f: &OrientationSeries, law: &FormalGroupLaw) -> Result<bool> {
    let transported = law.transport(f)?;
    if !intertwines(f.series(), law, &transported)? {
        return Ok(false);
    }
    let iso = StrictIso::new(f.series().clone(), law.clone(), transported.clone())?;
    if iso.as_orientation() != *f {
        return Ok(false);
    }
    let back = OrientationSeries::new(f.series().revert()?)?;
    let recovered = transported.transport(&back)?;
    Ok(recovered == *law)
}
