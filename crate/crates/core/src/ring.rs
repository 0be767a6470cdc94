//! Coefficient ring descriptors.
//!
//! A `RingDescriptor` is a base number system (integers, rationals, or the
//! p-local integers) together with an ordered list of weighted polynomial
//! generators. Every polynomial and series in the crate carries a shared
//! reference to its descriptor, and binary operations insist the descriptors
//! agree.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{self, Rat};

/// The base number system of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingBase {
    Integers,
    Rationals,
    /// Rationals whose reduced denominator is coprime to the prime p.
    PLocalIntegers(u64),
}

impl RingBase {
    /// Membership test for scalars.
    pub fn contains(&self, r: &Rat) -> bool {
        match self {
            RingBase::Integers => rational::is_integer(r),
            RingBase::Rationals => true,
            RingBase::PLocalIntegers(p) => rational::is_p_integral(r, *p),
        }
    }

    /// Unit test for scalars (invertibility inside the base).
    pub fn is_unit(&self, r: &Rat) -> bool {
        match self {
            RingBase::Integers => rational::is_integer_unit(r),
            RingBase::Rationals => !num_traits::Zero::is_zero(r),
            RingBase::PLocalIntegers(p) => rational::is_p_unit(r, *p),
        }
    }
}

impl fmt::Display for RingBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingBase::Integers => write!(f, "Z"),
            RingBase::Rationals => write!(f, "Q"),
            RingBase::PLocalIntegers(p) => write!(f, "Z_({p})"),
        }
    }
}

/// A named polynomial generator with a nonnegative integer weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

/// A coefficient ring: base number system plus ordered weighted generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    base: RingBase,
    generators: Vec<Generator>,
}

/// Rings are shared immutably; cheap to clone, compared by value.
pub type RingRef = Arc<RingDescriptor>;

/// Validate and build a ring descriptor. Generator order is preserved.
pub fn make_ring<S: Into<String>>(base: RingBase, generators: Vec<(S, u32)>) -> Result<RingRef> {
    if let RingBase::PLocalIntegers(p) = base {
        if !rational::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let generators: Vec<Generator> = generators
        .into_iter()
        .map(|(name, weight)| Generator { name: name.into(), weight })
        .collect();
    for (i, g) in generators.iter().enumerate() {
        if g.name.is_empty() {
            return Err(Error::EmptyName);
        }
        if generators[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::DuplicateGenerator(g.name.clone()));
        }
    }
    Ok(Arc::new(RingDescriptor { base, generators }))
}

impl RingDescriptor {
    pub fn base(&self) -> RingBase {
        self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Weights of the generators, in order.
    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    /// The same generators over the rationals.
    pub fn rationalized(self: &Arc<Self>) -> RingRef {
        if self.base == RingBase::Rationals {
            return Arc::clone(self);
        }
        Arc::new(RingDescriptor { base: RingBase::Rationals, generators: self.generators.clone() })
    }

    /// The same base with extra generators appended.
    pub fn extended<S: Into<String>>(self: &Arc<Self>, extra: Vec<(S, u32)>) -> Result<RingRef> {
        let mut gens: Vec<(String, u32)> =
            self.generators.iter().map(|g| (g.name.clone(), g.weight)).collect();
        gens.extend(extra.into_iter().map(|(n, w)| (n.into(), w)));
        make_ring(self.base, gens)
    }
}

/// The rationals with no generators.
pub fn rationals() -> RingRef {
    make_ring::<String>(RingBase::Rationals, vec![]).expect("no generators to validate")
}

/// The integers with no generators.
pub fn integers() -> RingRef {
    make_ring::<String>(RingBase::Integers, vec![]).expect("no generators to validate")
}

/// The p-local integers with no generators.
pub fn p_local_integers(p: u64) -> Result<RingRef> {
    make_ring::<String>(RingBase::PLocalIntegers(p), vec![])
}
