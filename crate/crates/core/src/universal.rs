//! The universal formal group law over Q[m1, m2, ...] (truncated), its
//! p-typification, and the Hazewinkel generators v_n.
//!
//! The coefficient ring is the rationalized model: generators m_i of weight
//! i with log = t + m1 t^2 + m2 t^3 + ..., so every coefficient of the law
//! at x^i y^j is homogeneous of weight i+j-1. Hazewinkel generators are
//! solved from the recursion p*l_n = sum_{0<=i<n} l_i * v_{n-i}^{p^i} with
//! l_0 = 1 and l_n = m_{p^n - 1}.

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, StrictIso};
use crate::poly::GradedPolynomial;
use crate::rational::{is_prime, rat_int, Rat};
use crate::ring::{make_ring, rationals, RingBase, RingRef};
use crate::series::TruncatedSeries;
use crate::typical::p_typify;

/// The universal ring Q[m1, ..., m_{N-1}] with weight(m_i) = i.
pub fn universal_ring(trunc: u32) -> Result<RingRef> {
    if trunc < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let gens: Vec<(String, u32)> = (1..trunc).map(|i| (format!("m{i}"), i)).collect();
    make_ring(RingBase::Rationals, gens)
}

/// The universal law, its logarithm, and their ring, at one truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct UniversalContext {
    trunc: u32,
    ring: RingRef,
    law: FormalGroupLaw,
    log: TruncatedSeries,
}

impl UniversalContext {
    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn log(&self) -> &TruncatedSeries {
        &self.log
    }

    /// Specialize the generators m_i to rational values in any series over
    /// the universal ring, landing over the plain rationals.
    pub fn specialize_series(
        &self,
        series: &TruncatedSeries,
        values: &[Rat],
    ) -> Result<TruncatedSeries> {
        if values.len() != self.ring.num_generators() {
            return Err(Error::ArityMismatch);
        }
        if series.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let target = rationals();
        let images: Vec<GradedPolynomial> = values
            .iter()
            .map(|v| GradedPolynomial::constant(&target, v.clone()))
            .collect::<Result<_>>()?;
        series.map_coeffs(&target, |p| p.substitute(&target, &images))
    }

    /// Specialize the generators m_i to rational values, yielding a law
    /// over the plain rationals.
    pub fn specialize(&self, values: &[Rat]) -> Result<FormalGroupLaw> {
        let series = self.specialize_series(self.law.series(), values)?;
        Ok(FormalGroupLaw::from_series_unchecked(series))
    }
}

/// Build the universal context at truncation N: log = t + sum m_i t^{i+1}
/// and the law exp(log x + log y).
pub fn universal_fgl(trunc: u32) -> Result<UniversalContext> {
    let ring = universal_ring(trunc)?;
    let mut terms = vec![(vec![1u32], GradedPolynomial::one(&ring))];
    for i in 1..trunc {
        terms.push((vec![i + 1], GradedPolynomial::generator(&ring, (i - 1) as usize)?));
    }
    let log = TruncatedSeries::from_terms(&ring, 1, trunc, terms)?;
    let law = FormalGroupLaw::from_log(&log)?;
    Ok(UniversalContext { trunc, ring, law, log })
}

/// p-typify the universal law; the output logarithm is supported on p-power
/// exponents with the t^{p^k} coefficient equal to m_{p^k - 1}.
pub fn universal_p_typical(trunc: u32, p: u64) -> Result<(FormalGroupLaw, StrictIso)> {
    let ctx = universal_fgl(trunc)?;
    p_typify(ctx.law(), p)
}

/// Hazewinkel generators and the p-typical logarithm coefficients they are
/// solved from.
#[derive(Debug, Clone, PartialEq)]
pub struct HazewinkelData {
    pub prime: u64,
    /// v_1, ..., v_k as polynomials in the m-generators; weight(v_n) = p^n - 1.
    pub generators: Vec<GradedPolynomial>,
    /// l_0 = 1, l_1, ..., l_k with l_n = m_{p^n - 1}.
    pub log_coeffs: Vec<GradedPolynomial>,
}

impl HazewinkelData {
    /// p*l_n - sum_{0<=i<n} l_i * v_{n-i}^{p^i}; exactly zero for n <= k.
    pub fn recursion_residual(&self, n: usize) -> Result<GradedPolynomial> {
        let p = self.prime;
        let mut residual = self.log_coeffs[n].scalar_mul_unchecked(&rat_int(p as i64));
        for i in 0..n {
            let power = (p as u32).pow(i as u32);
            let term = self.log_coeffs[i].mul(&self.generators[n - i - 1].pow(power))?;
            residual = residual.sub(&term)?;
        }
        Ok(residual)
    }
}

/// Solve the first k Hazewinkel generators at prime p over the universal
/// ring of truncation N; requires p^k - 1 <= N - 1 so every needed
/// m-generator exists.
pub fn hazewinkel_generators(p: u64, k: usize, trunc: u32) -> Result<HazewinkelData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ring = universal_ring(trunc)?;
    let needed = p.checked_pow(k as u32).and_then(|n| n.checked_sub(1)).unwrap_or(u64::MAX);
    if needed > (trunc - 1) as u64 {
        return Err(Error::DegreeTooSmall);
    }

    let mut log_coeffs = vec![GradedPolynomial::one(&ring)];
    for n in 1..=k {
        let idx = (p.pow(n as u32) - 2) as usize; // m_{p^n - 1} is generator index p^n - 2
        log_coeffs.push(GradedPolynomial::generator(&ring, idx)?);
    }

    let mut generators: Vec<GradedPolynomial> = Vec::with_capacity(k);
    for n in 1..=k {
        // v_n = p*l_n - sum_{1<=i<n} l_i * v_{n-i}^{p^i}
        let mut v = log_coeffs[n].scalar_mul_unchecked(&rat_int(p as i64));
        for i in 1..n {
            let power = (p as u32).pow(i as u32);
            let term = log_coeffs[i].mul(&generators[n - i - 1].pow(power))?;
            v = v.sub(&term)?;
        }
        generators.push(v);
    }

    Ok(HazewinkelData { prime: p, generators, log_coeffs })
}
