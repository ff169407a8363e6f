//! Exact arithmetic foundation.
//!
//! Rationals are arbitrary-precision (`num_rational::BigRational`), kept
//! reduced with positive denominator by the underlying crate. On top of
//! them this module provides
//!
//! * [`RatPoly`] — dense univariate polynomials over the rationals, used
//!   both for polynomials in the shape parameter τ ([`TauPoly`]) and for
//!   Legendre cores in `t`;
//! * [`Monomial3`] / [`ScalarPoly`] — sparse multivariate polynomials in
//!   x0, x1, x2 with `TauPoly` coefficients, canonically ordered
//!   (graded-lex) for deterministic serialization;
//! * [`QPoly`] — quaternion-valued polynomials (components e0, e1, e2, e3),
//!   with conjugation and the first-order operators `D`, `Dbar` that factor
//!   the Laplacian;
//! * [`SpheroidShape`] — the exact rational τ = μ² with its derived
//!   classification (prolate / sphere / oblate).
//!
//! All values are immutable after construction and freely shareable
//! between threads; every operation is a pure function.

mod poly;
mod quaternion;
mod scalar;
mod shape;

pub use poly::RatPoly;
pub use quaternion::{fueter_apply, FueterVariant, QPoly};
pub use scalar::{Axis, Monomial3, ScalarPoly, MAX_TOTAL_DEGREE};
pub(crate) use scalar::eval_lowered;
pub use shape::{ShapeKind, SpheroidShape};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Polynomial in τ = μ² over exact rationals; carries the spheroid shape
/// symbolically. Index k is the coefficient of τ^k.
pub type TauPoly = RatPoly;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Exact n! as a rational (convenient for norm formulas).
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from(acc)
}

/// Render a rational as `num/den` (or just `num` for integers).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `num`, `num/den`, or the alias `sphere` (= 0) as an exact rational.
pub fn rational_from_str(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("sphere") {
        return Ok(Rational::from(BigInt::from(0)));
    }
    let parse_int = |p: &str| -> crate::Result<BigInt> {
        p.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::Parse(format!("bad integer {p:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_string_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = rational_from_str(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(rational_from_str("sphere").unwrap(), rat_int(0));
        assert_eq!(rational_from_str("6/8").unwrap(), rat(3, 4));
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        assert!(!factorial(20).is_zero());
    }
}
