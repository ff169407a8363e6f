//! Exact construction of orthogonal polynomial bases on spheroidal domains.
//!
//! The domain family is parametrized by a single exact rational τ = μ²:
//! prolate spheroids for 0 < τ < 1, the unit ball at τ = 0, and oblate
//! spheroids for τ < 0. On each domain Ω the crate builds, over exact
//! rational arithmetic,
//!
//! * the orthogonal harmonic basis `V` (and the underlying family `U`),
//! * the monogenic basis `X` (solutions of the Riesz system, quaternion form),
//! * the orthogonal ambigenic basis `Y` (monogenic + antimonogenic span),
//! * the contragenic basis `Z` (harmonic, orthogonal to all ambigenic
//!   functions — a domain-dependent family),
//!
//! together with closed-form L²(Ω) norms, exact Gram matrices, dimension
//! counts, and the orthogonal decomposition of harmonic ℝ³-valued
//! polynomials into monogenic + antimonogenic + contragenic parts.
//!
//! Everything in the construction path is exact: coefficients are
//! arbitrary-precision rationals, the spheroid shape enters symbolically as
//! a polynomial variable τ until it is pinned by substitution, and inner
//! products over Ω evaluate in closed form as rational multiples of π.
//! Floating point appears only at the evaluation boundary (`numeval`).

pub mod contragenics;
pub mod exact;
pub mod harmonics;
pub mod integrate;
pub mod legendre;
pub mod monogenics;
pub mod numeval;
pub mod tables;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation (invalid index,
    /// out-of-range order, malformed shape, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact-arithmetic capacity limit was exceeded (total degree bound).
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A quaternion-valued polynomial was expected to be ℝ³-valued
    /// (identically zero e3 component) and is not.
    #[error("not an R^3-valued polynomial: e3 component is {e3}")]
    NotR3Valued { e3: String },
    /// An input to a harmonic-only operation failed the Laplacian test.
    /// Carries the offending component and its (nonzero) Laplacian.
    #[error("component {component} is not harmonic: Laplacian is {laplacian}")]
    NotHarmonic { component: String, laplacian: String },
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
