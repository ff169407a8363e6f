//! The spheroid family, parametrized by an exact rational τ = μ².

use std::fmt;

use num_traits::Zero;

use super::{rat_int, rational_from_str, rational_to_string, Rational};
use crate::{Error, Result};

/// Classification of the domain by the sign of τ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    /// 0 < τ < 1: prolate spheroid.
    Prolate,
    /// τ = 0: the unit ball.
    Sphere,
    /// τ < 0: oblate spheroid.
    Oblate,
}

/// The domain x0² + (x1² + x2²)/w² < 1 with w² = 1 − τ.
///
/// τ < 1 always; the semi-axes are (1, w, w), so w < 1 is prolate,
/// w = 1 the ball, w > 1 oblate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpheroidShape {
    tau: Rational,
    kind: ShapeKind,
    wsq: Rational,
}

impl SpheroidShape {
    pub fn new(tau: Rational) -> Result<Self> {
        if tau >= rat_int(1) {
            return Err(Error::Domain(format!(
                "tau must be < 1, got {}",
                rational_to_string(&tau)
            )));
        }
        let kind = if tau.is_zero() {
            ShapeKind::Sphere
        } else if tau > rat_int(0) {
            ShapeKind::Prolate
        } else {
            ShapeKind::Oblate
        };
        let wsq = rat_int(1) - &tau;
        Ok(SpheroidShape { tau, kind, wsq })
    }

    pub fn sphere() -> Self {
        SpheroidShape::new(rat_int(0)).expect("0 < 1")
    }

    /// Parse `sphere`, an integer, or `num/den`.
    pub fn parse(s: &str) -> Result<Self> {
        SpheroidShape::new(rational_from_str(s)?)
    }

    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    /// w² = 1 − τ (> 0), the squared equatorial semi-axis.
    pub fn wsq(&self) -> &Rational {
        &self.wsq
    }

    pub fn is_sphere(&self) -> bool {
        self.kind == ShapeKind::Sphere
    }

    pub fn tau_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.tau).expect("tau fits in f64")
    }

    /// w as a float.
    pub fn w_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.wsq)
            .expect("wsq fits in f64")
            .sqrt()
    }

    /// True for points strictly inside the domain.
    pub fn contains_f64(&self, x: [f64; 3]) -> bool {
        let wsq = num_traits::ToPrimitive::to_f64(&self.wsq).expect("wsq fits in f64");
        x[0] * x[0] + (x[1] * x[1] + x[2] * x[2]) / wsq < 1.0
    }
}

impl fmt::Display for SpheroidShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational_to_string(&self.tau))
    }
}
