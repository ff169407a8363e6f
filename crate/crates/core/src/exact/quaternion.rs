//! Quaternion-valued polynomials and the Fueter operators.
//!
//! ℝ³ sits inside the quaternions as the span of 1, e1, e2 (with
//! e3 = e1e2); a polynomial is "ℝ³-valued" when its e3 component is
//! identically zero. The operators
//!
//! ```text
//!   D    = ∂0 − e1·∂1 − e2·∂2
//!   Dbar = ∂0 + e1·∂1 + e2·∂2
//! ```
//!
//! factor the Laplacian (Δ = D∘Dbar on scalars). A function is monogenic
//! when Dbar annihilates it — equivalently it solves the Riesz system —
//! and antimonogenic when D does.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Axis, Rational, ScalarPoly, SpheroidShape, TauPoly};
use crate::{Error, Result};

/// Quaternion-valued polynomial: e0 + e1·(…) + e2·(…) + e3·(…).
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QPoly {
    pub e0: ScalarPoly,
    pub e1: ScalarPoly,
    pub e2: ScalarPoly,
    pub e3: ScalarPoly,
}

/// Which of the two conjugate Fueter operators to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FueterVariant {
    D,
    Dbar,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn from_scalar(e0: ScalarPoly) -> Self {
        QPoly {
            e0,
            ..QPoly::default()
        }
    }

    pub fn from_components(
        e0: ScalarPoly,
        e1: ScalarPoly,
        e2: ScalarPoly,
        e3: ScalarPoly,
    ) -> Self {
        QPoly { e0, e1, e2, e3 }
    }

    pub fn is_zero(&self) -> bool {
        self.e0.is_zero() && self.e1.is_zero() && self.e2.is_zero() && self.e3.is_zero()
    }

    /// ℝ³-valued ⇔ e3 ≡ 0.
    pub fn is_r3_valued(&self) -> bool {
        self.e3.is_zero()
    }

    pub fn ensure_r3_valued(&self) -> Result<()> {
        if self.is_r3_valued() {
            Ok(())
        } else {
            Err(Error::NotR3Valued {
                e3: self.e3.to_string(),
            })
        }
    }

    /// Quaternion conjugation: fixes e0, negates e1, e2, e3.
    pub fn conj(&self) -> Self {
        QPoly {
            e0: self.e0.clone(),
            e1: -&self.e1,
            e2: -&self.e2,
            e3: -&self.e3,
        }
    }

    pub fn components(&self) -> [&ScalarPoly; 4] {
        [&self.e0, &self.e1, &self.e2, &self.e3]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QPoly {
            e0: self.e0.scale(c),
            e1: self.e1.scale(c),
            e2: self.e2.scale(c),
            e3: self.e3.scale(c),
        }
    }

    pub fn scale_tau(&self, f: &TauPoly) -> Self {
        QPoly {
            e0: self.e0.scale_tau(f),
            e1: self.e1.scale_tau(f),
            e2: self.e2.scale_tau(f),
            e3: self.e3.scale_tau(f),
        }
    }

    pub fn substitute_tau(&self, shape: &SpheroidShape) -> Self {
        QPoly {
            e0: self.e0.substitute_tau(shape),
            e1: self.e1.substitute_tau(shape),
            e2: self.e2.substitute_tau(shape),
            e3: self.e3.substitute_tau(shape),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.components()
            .iter()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(-1)
    }

    /// Componentwise float evaluation.
    pub fn eval_f64(&self, x: [f64; 3], tau: f64) -> [f64; 4] {
        [
            self.e0.eval_f64(x, tau),
            self.e1.eval_f64(x, tau),
            self.e2.eval_f64(x, tau),
            self.e3.eval_f64(x, tau),
        ]
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        QPoly {
            e0: &self.e0 + &rhs.e0,
            e1: &self.e1 + &rhs.e1,
            e2: &self.e2 + &rhs.e2,
            e3: &self.e3 + &rhs.e3,
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        QPoly {
            e0: &self.e0 - &rhs.e0,
            e1: &self.e1 - &rhs.e1,
            e2: &self.e2 - &rhs.e2,
            e3: &self.e3 - &rhs.e3,
        }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            e0: -&self.e0,
            e1: -&self.e1,
            e2: -&self.e2,
            e3: -&self.e3,
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.e0.is_zero() {
            parts.push(format!("({})", self.e0));
        }
        for (p, name) in [(&self.e1, "e1"), (&self.e2, "e2"), (&self.e3, "e3")] {
            if !p.is_zero() {
                parts.push(format!("({})*{name}", p));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Apply a Fueter operator to an ℝ³-valued polynomial, producing the full
/// quaternion result. For f = f0 + e1 f1 + e2 f2,
///
/// ```text
///   Dbar f = (∂0f0 − ∂1f1 − ∂2f2) + e1(∂0f1 + ∂1f0)
///          + e2(∂0f2 + ∂2f0)      + e3(∂1f2 − ∂2f1)
/// ```
///
/// and `D` flips the sign of every ∂1, ∂2 contribution.
pub fn fueter_apply(q: &QPoly, variant: FueterVariant) -> Result<QPoly> {
    q.ensure_r3_valued()?;
    let sign = match variant {
        FueterVariant::D => -1i64,
        FueterVariant::Dbar => 1i64,
    };
    let s = super::rat_int(sign);
    let d0 = |p: &ScalarPoly| p.partial_derivative(Axis::X0);
    let d1 = |p: &ScalarPoly| p.partial_derivative(Axis::X1).scale(&s);
    let d2 = |p: &ScalarPoly| p.partial_derivative(Axis::X2).scale(&s);

    Ok(QPoly {
        e0: &(&d0(&q.e0) - &d1(&q.e1)) - &d2(&q.e2),
        e1: &d0(&q.e1) + &d1(&q.e0),
        e2: &d0(&q.e2) + &d2(&q.e0),
        e3: &d1(&q.e2) - &d2(&q.e1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Monomial3};

    fn x(axis: Axis) -> ScalarPoly {
        ScalarPoly::var(axis)
    }

    #[test]
    fn constants_are_two_sided_monogenic() {
        let one = QPoly::from_scalar(ScalarPoly::one());
        assert!(fueter_apply(&one, FueterVariant::D).unwrap().is_zero());
        assert!(fueter_apply(&one, FueterVariant::Dbar).unwrap().is_zero());
    }

    #[test]
    fn degree_one_monogenic_polynomial() {
        // 2x0 + x1·e1 + x2·e2 solves the Riesz system
        let f = QPoly::from_components(
            x(Axis::X0).scale(&rat_int(2)),
            x(Axis::X1),
            x(Axis::X2),
            ScalarPoly::zero(),
        );
        assert!(fueter_apply(&f, FueterVariant::Dbar).unwrap().is_zero());
        assert!(!fueter_apply(&f, FueterVariant::D).unwrap().is_zero());
    }

    #[test]
    fn laplacian_factorization_on_scalars() {
        let f = QPoly::from_scalar(&x(Axis::X0) * &x(Axis::X0));
        let step = fueter_apply(&f, FueterVariant::Dbar).unwrap();
        let dd = fueter_apply(&step, FueterVariant::D).unwrap();
        assert_eq!(dd.e0, ScalarPoly::constant(rat_int(2)));
        assert!(dd.e1.is_zero() && dd.e2.is_zero() && dd.e3.is_zero());
    }

    #[test]
    fn rejects_non_r3_input() {
        let bad = QPoly::from_components(
            ScalarPoly::zero(),
            ScalarPoly::zero(),
            ScalarPoly::zero(),
            ScalarPoly::one(),
        );
        assert!(matches!(
            fueter_apply(&bad, FueterVariant::D),
            Err(Error::NotR3Valued { .. })
        ));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let f = QPoly::from_components(
            x(Axis::X0),
            ScalarPoly::term(Monomial3::new(0, 1, 1), crate::exact::TauPoly::one()),
            x(Axis::X2),
            ScalarPoly::zero(),
        );
        assert_eq!(f.conj().conj(), f);
        assert_eq!(f.conj().e1, -&f.e1);
        assert_eq!(f.conj().e0, f.e0);
    }
}
