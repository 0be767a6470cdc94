//! Exact-arithmetic engine for formal group laws.
//!
//! Everything is computed over exact rationals with arbitrary-precision
//! integer parts; there are no floating-point modes. The crate is organized
//! around four layers:
//!
//! - [`ring`], [`poly`], [`series`]: coefficient rings, graded sparse
//!   polynomials, and truncated power series — the substrate.
//! - [`fgl`]: formal group laws as data, with axiom checking, logarithm and
//!   exponential, n-series, strict isomorphisms, and orientation transport.
//! - [`typical`]: Cartier p-typification with its canonical strict
//!   isomorphism, and the idempotent it induces.
//! - [`universal`], [`chern`]: the universal group law over Q[m1, m2, ...],
//!   Hazewinkel generators, and the symmetric-function Chern/Thom calculus.
//!
//! All values are immutable after construction and safe to share across
//! threads; no operation mutates its inputs.

pub mod chern;
pub mod error;
pub mod fgl;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;
pub mod typical;
pub mod universal;

pub use error::{Error, Result};
pub use fgl::{check_fgl_axioms, orientation_roundtrip, Axiom, AxiomReport, AxiomViolation,
    FormalGroupLaw, OrientationSeries, StrictIso};
pub use poly::{Exponents, GradedPolynomial};
pub use rational::Rat;
pub use ring::{make_ring, RingBase, RingDescriptor, RingRef};
pub use series::TruncatedSeries;
pub use typical::{is_p_typical, p_typify, quillen_idempotent, IdempotencyCertificate};
pub use universal::{hazewinkel_generators, universal_fgl, universal_p_typical, HazewinkelData,
    UniversalContext};
