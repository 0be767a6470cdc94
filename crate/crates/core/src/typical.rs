//! Cartier p-typification and the idempotent it induces.
//!
//! Over a torsion-free p-local coefficient ring the construction runs
//! through the logarithm: keep exactly the t^{p^k} coefficients of log F,
//! exponentiate the result back into a law F_typ, and connect the two by the
//! canonical strict isomorphism eps(t) = exp_F(log_typ(t)), directed
//! F_typ -> F. Applying the construction to a law that is already p-typical
//! returns the law itself with the identity isomorphism, which is the
//! idempotency recorded by [`quillen_idempotent`].

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, OrientationSeries, StrictIso};
use crate::rational::is_prime;
use crate::ring::RingBase;
use crate::series::TruncatedSeries;

fn is_p_power(n: u32, p: u64) -> bool {
    let mut n = n as u64;
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn require_p_local_base(law: &FormalGroupLaw, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match law.ring().base() {
        RingBase::Rationals => Ok(()),
        RingBase::PLocalIntegers(q) if q == p => Ok(()),
        _ => Err(Error::NotPLocalRing(p)),
    }
}

/// Keep exactly the coefficients of t^{p^k} (including t itself).
fn p_typical_part(log: &TruncatedSeries, p: u64) -> Result<TruncatedSeries> {
    let terms = log
        .iter()
        .filter(|(e, _)| is_p_power(e.as_slice()[0], p))
        .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
        .collect();
    TruncatedSeries::from_terms(log.ring(), 1, log.truncation(), terms)
}

/// Cartier p-typification: the canonical p-typical law together with the
/// canonical strict isomorphism eps: F_typ -> F.
///
/// Over `PLocalIntegers(p)` every coefficient of both outputs is checked to
/// be p-local; a failure would be an implementation bug, not bad input.
pub fn p_typify(law: &FormalGroupLaw, p: u64) -> Result<(FormalGroupLaw, StrictIso)> {
    require_p_local_base(law, p)?;
    let log = law.log()?;
    let log_typ = p_typical_part(&log, p)?;
    let typ_rational = FormalGroupLaw::from_log(&log_typ)?;
    let eps_rational = log.revert()?.compose(&log_typ)?;

    let (typ_series, eps_series) = match law.ring().base() {
        RingBase::PLocalIntegers(_) => {
            if !typ_rational.series().is_p_local(p) || !eps_rational.is_p_local(p) {
                return Err(Error::CartierIntegralityFailure(p));
            }
            let ring = law.ring();
            (
                typ_rational.series().map_coeffs(ring, |c| c.rebase(ring))?,
                eps_rational.map_coeffs(ring, |c| c.rebase(ring))?,
            )
        }
        _ => (typ_rational.series().clone(), eps_rational),
    };

    let typ = FormalGroupLaw::from_series_unchecked(typ_series);
    let eps = StrictIso::new(eps_series, typ.clone(), law.clone())?;
    Ok((typ, eps))
}

/// Over a torsion-free base a law is p-typical iff its logarithm is
/// supported on exponents p^k.
pub fn is_p_typical(law: &FormalGroupLaw, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let log = law.log()?;
    let typical = log.iter().all(|(e, _)| is_p_power(e.as_slice()[0], p));
    Ok(typical)
}

/// Both passes of the p-typification, recording that the second pass is
/// trivial: same law, identity isomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotencyCertificate {
    pub first_pass: (FormalGroupLaw, StrictIso),
    pub second_pass: (FormalGroupLaw, StrictIso),
    pub verdict: bool,
}

/// The orientation change attached to p-typification, certified idempotent:
/// p-typifying the p-typical output again returns it unchanged with the
/// identity isomorphism. A false verdict is an implementation bug and is
/// reported as [`Error::IdempotencyFailure`].
pub fn quillen_idempotent(
    law: &FormalGroupLaw,
    p: u64,
) -> Result<(OrientationSeries, IdempotencyCertificate)> {
    let (typ, eps) = p_typify(law, p)?;
    let (typ2, eps2) = p_typify(&typ, p)?;
    let verdict = typ2 == typ && eps2.is_identity();
    let orientation = eps.as_orientation();
    let certificate = IdempotencyCertificate {
        first_pass: (typ, eps),
        second_pass: (typ2, eps2),
        verdict,
    };
    if !certificate.verdict {
        return Err(Error::IdempotencyFailure);
    }
    Ok((orientation, certificate))
}
