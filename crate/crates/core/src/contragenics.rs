//! Basic contragenic polynomials.
//!
//! Contragenic functions are square-integrable harmonics orthogonal to
//! every monogenic and antimonogenic function on the domain. Unlike
//! harmonicity and monogenicity this is not a local property: the family
//! depends on the shape parameter, and distinct spheroids have distinct
//! contragenic spaces.
//!
//! The basis elements are pure-vector combinations of the harmonic basis:
//! for 1 ≤ m ≤ n−1,
//!
//! ```text
//!   Z[n,m,±] = ( a·V[n,m−1,∓] + V[n,m+1,∓]/(n+m+2) )·e1
//!            ± ( a·V[n,m−1,±] − V[n,m+1,±]/(n+m+2) )·e2
//! ```
//!
//! with the shape-dependent ratio a(n,m) of harmonic norms, and for m = 0
//! the single element Z[n,0] = (V[n,1,−]·e1 − V[n,1,+]·e2)/(n+2). There
//! are n² of them up to degree n, an orthogonal basis of the contragenic
//! subspace.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{rat_int, QPoly, Rational, ScalarPoly, SpheroidShape};
use crate::harmonics::{v_norm_sq, v_or_zero, HarmonicIndex, Parity};
use crate::{Error, Result};

/// Index of a contragenic basis element: n ≥ 1 with either the m = 0
/// singleton (no parity) or 1 ≤ m ≤ n−1 with a parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ContragenicIndex {
    pub n: u32,
    pub m: u32,
    pub parity: Option<Parity>,
}

impl ContragenicIndex {
    pub fn new(n: u32, m: u32, parity: Option<Parity>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("contragenic index needs n >= 1".into()));
        }
        match (m, parity) {
            (0, None) => Ok(ContragenicIndex { n, m, parity }),
            (0, Some(_)) => Err(Error::Domain(
                "the m = 0 contragenic element carries no parity".into(),
            )),
            (_, Some(_)) if m <= n - 1 => Ok(ContragenicIndex { n, m, parity }),
            (_, None) => Err(Error::Domain(format!(
                "contragenic index ({n},{m}) needs a parity"
            ))),
            _ => Err(Error::Domain(format!(
                "contragenic index needs m <= n-1, got ({n},{m})"
            ))),
        }
    }
}

impl fmt::Display for ContragenicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Some(p) => write!(f, "{},{},{}", self.n, self.m, p),
            None => write!(f, "{},0", self.n),
        }
    }
}

/// A contragenic basis polynomial at a fixed shape: zero scalar and e3
/// parts, harmonic components.
#[derive(Clone, Debug)]
pub struct ContragenicBasisElement {
    pub index: ContragenicIndex,
    pub qpoly: QPoly,
    /// The norm-ratio coefficient a(n,m) used (zero for the m = 0 case,
    /// which does not involve it).
    pub a_used: Rational,
}

impl ContragenicBasisElement {
    pub fn label(&self) -> String {
        format!("Z:{}", self.index)
    }
}

impl Serialize for ContragenicBasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ContragenicBasisElement", 5)?;
        s.serialize_field("family", "Z")?;
        s.serialize_field("n", &self.index.n)?;
        s.serialize_field("m", &self.index.m)?;
        s.serialize_field("parity", &self.index.parity.map(Parity::symbol))?;
        s.serialize_field("qpoly", &self.qpoly)?;
        s.end()
    }
}

/// The building-block ratio a(n,m) =
/// (1+δ₁ₘ)·‖V[n,m+1]‖² / ((n+m+1)(n+m+2)²·‖V[n,m−1]‖²), exact at the
/// shape (the π factors cancel). Defined for 1 ≤ m ≤ n−1; positive on
/// every valid shape.
///
/// The factor at m = 1 compensates the doubled angular measure inside
/// ‖V[n,0]‖² (the order-0 azimuthal factor integrates to 2π, every other
/// one to π); the orthogonality relation fixing a(n,m) pairs the e1/e2
/// components against the order-(m−1) element of the *negative* parity,
/// which is identically zero at order 0. Without the factor the m = 1
/// elements fail ⟨Z[n,1,±], X[n,1,∓]⟩ = 0, exactly and testably.
pub fn a_coeff(n: u32, m: u32, shape: &SpheroidShape) -> Result<Rational> {
    if !(1..=n.saturating_sub(1)).contains(&m) {
        return Err(Error::Domain(format!(
            "a coefficient needs 1 <= m <= n-1, got ({n},{m})"
        )));
    }
    let hi = v_norm_sq(&HarmonicIndex::new(n, m + 1, Parity::Plus)?, shape)?;
    let lo = v_norm_sq(&HarmonicIndex::new(n, m - 1, Parity::Plus)?, shape)?;
    let nm = n as i64 + m as i64;
    let denom = rat_int(nm + 1) * rat_int(nm + 2) * rat_int(nm + 2);
    let delta = if m == 1 { rat_int(2) } else { rat_int(1) };
    Ok(delta * hi.ratio(&lo)? / denom)
}

/// Which sign of the companion coefficient A to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A±(n,m) = (a(n,m) ± (n+m+1)) / (n+m+1); the e1/e2 expansion
/// coefficients of the basic contragenic polynomials.
pub fn a_upper_coeff(n: u32, m: u32, sign: Sign, shape: &SpheroidShape) -> Result<Rational> {
    let a = a_coeff(n, m, shape)?;
    let p = rat_int(n as i64 + m as i64 + 1);
    let num = match sign {
        Sign::Plus => a + &p,
        Sign::Minus => a - &p,
    };
    Ok(num / p)
}

/// Build the basic contragenic polynomial at a fixed shape.
pub fn build_z(index: &ContragenicIndex, shape: &SpheroidShape) -> Result<ContragenicBasisElement> {
    let n = index.n;
    let m = index.m;
    let at = |mm: i64, p: Parity| v_or_zero(n, mm, p).substitute_tau(shape);
    let (e1, e2, a_used) = match index.parity {
        None => {
            let scale = rat_int(1) / rat_int(n as i64 + 2);
            (
                at(1, Parity::Minus).scale(&scale),
                at(1, Parity::Plus).scale(&-scale),
                rat_int(0),
            )
        }
        Some(p) => {
            let a = a_coeff(n, m, shape)?;
            let q = match p {
                Parity::Plus => Parity::Minus,
                Parity::Minus => Parity::Plus,
            };
            let upper = rat_int(1) / rat_int(n as i64 + m as i64 + 2);
            let e1 = &at(m as i64 - 1, q).scale(&a) + &at(m as i64 + 1, q).scale(&upper);
            let mut e2 = &at(m as i64 - 1, p).scale(&a) - &at(m as i64 + 1, p).scale(&upper);
            if p == Parity::Minus {
                e2 = -&e2;
            }
            (e1, e2, a)
        }
    };
    Ok(ContragenicBasisElement {
        index: *index,
        qpoly: QPoly::from_components(ScalarPoly::zero(), e1, e2, ScalarPoly::zero()),
        a_used,
    })
}

/// dim of the contragenic space of polynomials of degree ≤ n: n².
pub fn contragenic_dim(n: u32) -> usize {
    (n as usize) * (n as usize)
}

/// All contragenic indices of degree ≤ nmax in canonical order
/// (2k−1 per degree k ≥ 1).
pub fn all_indices(nmax: u32) -> Vec<ContragenicIndex> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        out.push(ContragenicIndex { n, m: 0, parity: None });
        for m in 1..n {
            out.push(ContragenicIndex { n, m, parity: Some(Parity::Plus) });
            out.push(ContragenicIndex { n, m, parity: Some(Parity::Minus) });
        }
    }
    out
}

/// The full contragenic basis of degree ≤ nmax at a shape.
pub fn basis_up_to(nmax: u32, shape: &SpheroidShape) -> Result<Vec<ContragenicBasisElement>> {
    all_indices(nmax).iter().map(|i| build_z(i, shape)).collect()
}

/// Operational witness that contragenicity depends on the domain: the
/// degree-2 contragenic element of the first shape fails orthogonality
/// against the ambigenic space of the second. Returns true when a nonzero
/// inner product is found.
pub fn shape_distinguishing_check(
    shape1: &SpheroidShape,
    shape2: &SpheroidShape,
) -> Result<bool> {
    if shape1.tau() == shape2.tau() {
        return Err(Error::Domain(
            "shape distinction needs two distinct values of tau".into(),
        ));
    }
    let z = build_z(
        &ContragenicIndex::new(2, 1, Some(Parity::Plus))?,
        shape1,
    )?;
    for y in crate::monogenics::ambigenic_basis(2, shape2)? {
        let ip = crate::integrate::inner_product(&z.qpoly, &y.qpoly, shape2)?;
        if !ip.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Axis, Monomial3, TauPoly};
    use crate::integrate::{gram, inner_product};

    fn quarter() -> SpheroidShape {
        SpheroidShape::new(rat(1, 4)).unwrap()
    }

    #[test]
    fn index_validation() {
        assert!(ContragenicIndex::new(0, 0, None).is_err());
        assert!(ContragenicIndex::new(1, 0, None).is_ok());
        assert!(ContragenicIndex::new(1, 0, Some(Parity::Plus)).is_err());
        assert!(ContragenicIndex::new(3, 2, Some(Parity::Minus)).is_ok());
        assert!(ContragenicIndex::new(3, 3, Some(Parity::Plus)).is_err());
        assert!(ContragenicIndex::new(3, 1, None).is_err());
    }

    #[test]
    fn dimension_and_enumeration() {
        assert_eq!(contragenic_dim(0), 0);
        assert_eq!(contragenic_dim(1), 1);
        assert_eq!(contragenic_dim(3), 9);
        for n in 0..=8 {
            assert_eq!(all_indices(n).len(), contragenic_dim(n));
        }
    }

    #[test]
    fn low_degree_elements() {
        let shape = quarter();
        // Z[1,0] = −x2·e1 + x1·e2
        let z10 = build_z(&ContragenicIndex::new(1, 0, None).unwrap(), &shape).unwrap();
        assert_eq!(z10.qpoly.e1, ScalarPoly::var(Axis::X2).scale(&rat_int(-1)));
        assert_eq!(z10.qpoly.e2, ScalarPoly::var(Axis::X1));
        // Z[2,0] = −3x0x2·e1 + 3x0x1·e2
        let z20 = build_z(&ContragenicIndex::new(2, 0, None).unwrap(), &shape).unwrap();
        assert_eq!(
            z20.qpoly.e1,
            ScalarPoly::term(Monomial3::new(1, 0, 1), TauPoly::constant(rat_int(-3)))
        );
        assert_eq!(
            z20.qpoly.e2,
            ScalarPoly::term(Monomial3::new(1, 1, 0), TauPoly::constant(rat_int(3)))
        );
    }

    #[test]
    fn a_coeff_positive_and_in_range() {
        for tau in ["1/4", "-1", "0", "-1/2"] {
            let shape = SpheroidShape::parse(tau).unwrap();
            for n in 2..=6u32 {
                for m in 1..n {
                    let a = a_coeff(n, m, &shape).unwrap();
                    assert!(a > rat_int(0), "a({n},{m}) not positive at tau={tau}");
                }
            }
        }
        assert!(a_coeff(2, 0, &quarter()).is_err());
        assert!(a_coeff(2, 2, &quarter()).is_err());
    }

    #[test]
    fn a_coeff_closed_form_value() {
        // a(2,1) = 10(1−τ)²/(15−10τ+3τ²)
        let tau = rat(1, 4);
        let shape = SpheroidShape::new(tau.clone()).unwrap();
        let expect = rat_int(10) * rat(9, 16)
            / (rat_int(15) - rat_int(10) * &tau + rat_int(3) * &tau * &tau);
        assert_eq!(a_coeff(2, 1, &shape).unwrap(), expect);
    }

    #[test]
    fn order_one_elements_are_orthogonal_to_opposite_parity_monogenics() {
        // the check that pins the doubled a(n,1)
        let shape = quarter();
        for n in 2..=5u32 {
            let z = build_z(&ContragenicIndex::new(n, 1, Some(Parity::Plus)).unwrap(), &shape)
                .unwrap();
            let x = crate::monogenics::build_x(
                &crate::monogenics::MonogenicIndex::new(n, 1, Parity::Minus).unwrap(),
            )
            .unwrap();
            let ip = inner_product(&z.qpoly, &x.qpoly, &shape).unwrap();
            assert!(ip.is_zero(), "<Z[{n},1,+], X[{n},1,-]> = {ip}");
        }
    }

    #[test]
    fn a_upper_identities() {
        let shape = quarter();
        for n in 2..=5u32 {
            for m in 1..n {
                let plus = a_upper_coeff(n, m, Sign::Plus, &shape).unwrap();
                let minus = a_upper_coeff(n, m, Sign::Minus, &shape).unwrap();
                assert_eq!(&plus - &minus, rat_int(2));
                let a = a_coeff(n, m, &shape).unwrap();
                let p = rat_int(n as i64 + m as i64 + 1);
                assert_eq!(&plus + &minus, rat_int(2) * a / p);
            }
        }
    }

    #[test]
    fn zero_scalar_and_e3_harmonic_components() {
        for tau in ["1/4", "-1/2"] {
            let shape = SpheroidShape::parse(tau).unwrap();
            for index in all_indices(6) {
                let z = build_z(&index, &shape).unwrap();
                assert!(z.qpoly.e0.is_zero());
                assert!(z.qpoly.e3.is_zero());
                assert!(z.qpoly.e1.laplacian().is_zero());
                assert!(z.qpoly.e2.laplacian().is_zero());
                assert!(!z.qpoly.is_zero(), "Z[{index}] is identically zero");
            }
        }
    }

    #[test]
    fn orthogonal_to_every_ambigenic_element() {
        let shape = quarter();
        let ys = crate::monogenics::ambigenic_basis(4, &shape).unwrap();
        for index in all_indices(4) {
            let z = build_z(&index, &shape).unwrap();
            for y in &ys {
                let ip = inner_product(&z.qpoly, &y.qpoly, &shape).unwrap();
                assert!(
                    ip.is_zero(),
                    "Z[{index}] not orthogonal to {}",
                    y.label()
                );
            }
        }
    }

    #[test]
    fn mutually_orthogonal() {
        let shape = SpheroidShape::new(rat(-1, 2)).unwrap();
        let basis: Vec<(String, QPoly)> = basis_up_to(4, &shape)
            .unwrap()
            .into_iter()
            .map(|z| (z.label(), z.qpoly))
            .collect();
        let g = gram(&basis, &shape).unwrap();
        assert!(g.is_diagonal(), "violation: {:?}", g.offdiagonal_violation());
        assert_eq!(g.rank(), contragenic_dim(4));
    }

    #[test]
    fn shape_distinction() {
        let a = SpheroidShape::parse("1/4").unwrap();
        let b = SpheroidShape::parse("1/2").unwrap();
        let c = SpheroidShape::parse("-1/2").unwrap();
        assert!(shape_distinguishing_check(&a, &b).unwrap());
        assert!(shape_distinguishing_check(&a, &c).unwrap());
        assert!(shape_distinguishing_check(&a, &a).is_err());
    }
}
