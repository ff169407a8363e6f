//! Basic monogenic spheroidal polynomials and the ambigenic basis.
//!
//! `X[n,m,±]` is the result of applying the Fueter operator `D` to the
//! degree-(n+1) harmonic `U`; equivalently it expands over the harmonic
//! basis as
//!
//! ```text
//!   X[n,m,±] = V[n,m,±]
//!            + (e1/2)·( (n+m+1)·V[n,m−1,±] − V[n,m+1,±]/(n+m+2) )
//!            ∓ (e2/2)·( (n+m+1)·V[n,m−1,∓] + V[n,m+1,∓]/(n+m+2) )
//! ```
//!
//! with out-of-range orders treated as zero and m = −1 through the
//! negative-order extension. Both constructions are implemented; their
//! exact agreement is a standing cross-check.
//!
//! The elements with m = n+1 have no scalar part and do not depend on x0:
//! they are monogenic constants. Together with the conjugates (the
//! antimonogenic family) one obtains the ambigenic space, for which an
//! orthogonal basis `Y` requires a single correction coefficient c(n,m)
//! on the conjugate side.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{
    fueter_apply, rat_int, FueterVariant, QPoly, Rational, ScalarPoly, SpheroidShape,
};
use crate::harmonics::{self, v_or_zero, HarmonicIndex, Parity};
use crate::integrate::{scalar_inner_product, PiRational};
use crate::legendre::{double_factorial, i_symbolic_ext};
use crate::{Error, Result};

/// Index (n, m, ±) of a monogenic basis polynomial; 0 ≤ m ≤ n+1, and the
/// `−` parity needs m ≥ 1. m = n+1 marks a monogenic constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonogenicIndex {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
}

impl MonogenicIndex {
    pub fn new(n: u32, m: u32, parity: Parity) -> Result<Self> {
        if m > n + 1 {
            return Err(Error::Domain(format!(
                "monogenic index needs m <= n+1, got ({n},{m})"
            )));
        }
        if m == 0 && parity == Parity::Minus {
            return Err(Error::Domain(format!(
                "index ({n},0,-) is identically zero and excluded"
            )));
        }
        Ok(MonogenicIndex { n, m, parity })
    }

    /// Monogenic constants: independent of x0, conjugate again monogenic.
    pub fn is_monogenic_constant(&self) -> bool {
        self.m == self.n + 1
    }
}

impl fmt::Display for MonogenicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.m, self.parity)
    }
}

/// A constructed monogenic basis polynomial (τ-symbolic, ℝ³-valued).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogenicBasisElement {
    pub index: MonogenicIndex,
    pub qpoly: QPoly,
}

impl Serialize for MonogenicBasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MonogenicBasisElement", 5)?;
        s.serialize_field("family", "X")?;
        s.serialize_field("n", &self.index.n)?;
        s.serialize_field("m", &self.index.m)?;
        s.serialize_field("parity", self.index.parity.symbol())?;
        s.serialize_field("qpoly", &self.qpoly)?;
        s.end()
    }
}

fn opposite(p: Parity) -> Parity {
    match p {
        Parity::Plus => Parity::Minus,
        Parity::Minus => Parity::Plus,
    }
}

/// Build X[n,m,±] from the harmonic basis expansion.
pub fn build_x(index: &MonogenicIndex) -> Result<MonogenicBasisElement> {
    let (n, m) = (index.n, index.m);
    let p = index.parity;
    let q = opposite(p);
    let nm = n as i64 + m as i64;
    let half = crate::exact::rat(1, 2);
    let lower = rat_int(nm + 1);
    let upper = rat_int(1) / rat_int(nm + 2);

    let e0 = v_or_zero(n, m as i64, p);
    let e1 = (&v_or_zero(n, m as i64 - 1, p).scale(&lower)
        - &v_or_zero(n, m as i64 + 1, p).scale(&upper))
        .scale(&half);
    let mut e2 = (&v_or_zero(n, m as i64 - 1, q).scale(&lower)
        + &v_or_zero(n, m as i64 + 1, q).scale(&upper))
        .scale(&half);
    e2 = match p {
        Parity::Plus => -&e2,
        Parity::Minus => e2,
    };
    Ok(MonogenicBasisElement {
        index: *index,
        qpoly: QPoly::from_components(e0, e1, e2, ScalarPoly::zero()),
    })
}

/// Build X[n,m,±] by applying the Fueter operator `D` to the harmonic
/// U[n+1,m,±]. Must agree with [`build_x`] exactly.
pub fn build_x_via_operator(index: &MonogenicIndex) -> Result<MonogenicBasisElement> {
    let u = harmonics::build_u(&HarmonicIndex::new(index.n + 1, index.m, index.parity)?)?;
    let applied = fueter_apply(&QPoly::from_scalar(u.poly), FueterVariant::D)?;
    debug_assert!(applied.e3.is_zero());
    Ok(MonogenicBasisElement {
        index: *index,
        qpoly: applied,
    })
}

/// ‖X[n,m,±]‖² over the spheroid in closed form, as a rational multiple
/// of π. Oblate shapes stay inside real rational arithmetic because only
/// the scaled integrals μ^{2n+3}·I enter.
pub fn x_norm_sq(index: &MonogenicIndex, shape: &SpheroidShape) -> Result<PiRational> {
    let n = index.n as i64;
    let m = index.m as i64;
    let tau = shape.tau();
    let fact = |k: i64| -> Rational {
        debug_assert!(k >= 0);
        crate::exact::factorial(k as u64)
    };
    let i_at = |order: i64| -> Result<Rational> {
        Ok(i_symbolic_ext(index.n, order)?.eval(tau))
    };
    let delta0 = if m == 0 { rat_int(1) } else { rat_int(0) };

    let t1 = rat_int((n + 2) * (n + m) * (n + m + 1))
        * fact(n - m + 3)
        * fact(n + m + 2)
        * i_at(m - 1)?;
    let t2 = rat_int(2) * &delta0 * rat_int(n + m + 2) * fact(n + 1) * fact(n + 2) * i_at(1)?;
    let inner = i_at(m + 1)?
        + rat_int(2 * (n - m + 2) * (n + m + 1)) * (rat_int(1) + &delta0) * i_at(m)?;
    let t3 = rat_int(n + 2) * fact(n - m + 1) * fact(n + m + 2) * inner;

    let den = rat_int((n + 2) * (n + m + 2))
        * Rational::from(double_factorial(2 * n + 1)?)
        * Rational::from(double_factorial(2 * n + 3)?);
    Ok(PiRational::new((t1 + t2 + t3) / den))
}

/// The orthogonalization coefficient c(n,m) = ⟨X⁺, conj X⁺⟩ / ‖X⁺‖²,
/// computed by exact integration (primary path). Zero at m = n+1.
pub fn c_coeff(n: u32, m: u32, shape: &SpheroidShape) -> Result<Rational> {
    if m > n + 1 {
        return Err(Error::Domain(format!("c coefficient needs m <= n+1, got ({n},{m})")));
    }
    if m == n + 1 {
        return Ok(rat_int(0));
    }
    let x = build_x(&MonogenicIndex::new(n, m, Parity::Plus)?)?
        .qpoly
        .substitute_tau(shape);
    // ⟨X, conj X⟩ = ‖Sc X‖² − ‖Vec X‖²
    let sc = scalar_inner_product(&x.e0, &x.e0, shape);
    let vec = &scalar_inner_product(&x.e1, &x.e1, shape)
        + &scalar_inner_product(&x.e2, &x.e2, shape);
    let num = &sc - &vec;
    let den = &sc + &vec;
    num.ratio(&den)
}

/// c(n,m) from the closed-form norms: (2‖V[n,m]‖² − ‖X‖²)/‖X‖². Serves as
/// a cross-check of the integration path.
pub fn c_coeff_closed_form(n: u32, m: u32, shape: &SpheroidShape) -> Result<Rational> {
    if m == n + 1 {
        return Ok(rat_int(0));
    }
    let x_norm = x_norm_sq(&MonogenicIndex::new(n, m, Parity::Plus)?, shape)?;
    let v_norm = harmonics::v_norm_sq(&HarmonicIndex::new(n, m, Parity::Plus)?, shape)?;
    (&v_norm.scale(&rat_int(2)) - &x_norm).ratio(&x_norm)
}

/// Scalar / vector split (Sc f, Vec f) of an ℝ³-valued polynomial.
pub fn sc_vec_split(q: &QPoly) -> Result<(ScalarPoly, QPoly)> {
    q.ensure_r3_valued()?;
    Ok((
        q.e0.clone(),
        QPoly::from_components(
            ScalarPoly::zero(),
            q.e1.clone(),
            q.e2.clone(),
            ScalarPoly::zero(),
        ),
    ))
}

/// All monogenic indices of degree ≤ nmax in canonical order; 2n+3 per
/// degree n.
pub fn all_indices(nmax: u32) -> Vec<MonogenicIndex> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=n + 1 {
            out.push(MonogenicIndex { n, m, parity: Parity::Plus });
            if m >= 1 {
                out.push(MonogenicIndex { n, m, parity: Parity::Minus });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Ambigenic basis
// ---------------------------------------------------------------------------

/// The four kinds of ambigenic basis elements: `±+` are the monogenic
/// X[n,m,±] themselves, `±−` the orthogonalized conjugates
/// conj(X[n,m,±]) − c(n,m)·X[n,m,±].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbigenicKind {
    PlusPlus,
    MinusPlus,
    PlusMinus,
    MinusMinus,
}

impl AmbigenicKind {
    pub fn symbol(self) -> &'static str {
        match self {
            AmbigenicKind::PlusPlus => "++",
            AmbigenicKind::MinusPlus => "-+",
            AmbigenicKind::PlusMinus => "+-",
            AmbigenicKind::MinusMinus => "--",
        }
    }
}

/// One element of the orthogonal ambigenic basis at a fixed shape.
#[derive(Clone, Debug)]
pub struct AmbigenicBasisElement {
    pub kind: AmbigenicKind,
    pub n: u32,
    pub m: u32,
    /// The basis polynomial itself, τ substituted at the shape.
    pub qpoly: QPoly,
    /// Orthogonalization coefficient used (zero for the `±+` kinds and
    /// for monogenic constants).
    pub c_used: Rational,
    /// The underlying monogenic X at the shape; `qpoly = conj(base) −
    /// c_used·base` for the `±−` kinds and `qpoly = base` otherwise.
    pub base: QPoly,
}

impl AmbigenicBasisElement {
    pub fn label(&self) -> String {
        format!("Y:{}:{},{}", self.kind.symbol(), self.n, self.m)
    }
}

impl Serialize for AmbigenicBasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AmbigenicBasisElement", 5)?;
        s.serialize_field("family", "Y")?;
        s.serialize_field("kind", self.kind.symbol())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("qpoly", &self.qpoly)?;
        s.end()
    }
}

/// The orthogonal ambigenic basis of degree ≤ nmax at a fixed shape:
/// 2·nmax·(nmax+3)+3 elements, pairwise orthogonal.
///
/// Degree 0 contributes the three special elements 1, e1, e2. For k ≥ 1
/// the ranges are `++`: m = 0..k+1, `−+`: m = 1..k, `+−`: m = 0..k,
/// `−−`: m = 1..k+1; identically-zero entries of the raw four-fold list
/// (order 0 with `−` angular parity) and the dependent conjugate of the
/// `+` monogenic constant are excluded.
pub fn ambigenic_basis(nmax: u32, shape: &SpheroidShape) -> Result<Vec<AmbigenicBasisElement>> {
    let mut out = Vec::new();
    let at_shape = |i: &MonogenicIndex| -> Result<QPoly> {
        Ok(build_x(i)?.qpoly.substitute_tau(shape))
    };
    // degree 0: 1, e1, e2
    for (kind, m, parity) in [
        (AmbigenicKind::PlusPlus, 0, Parity::Plus),
        (AmbigenicKind::PlusPlus, 1, Parity::Plus),
        (AmbigenicKind::MinusPlus, 1, Parity::Minus),
    ] {
        let x = at_shape(&MonogenicIndex::new(0, m, parity)?)?;
        out.push(AmbigenicBasisElement {
            kind,
            n: 0,
            m,
            qpoly: x.clone(),
            c_used: rat_int(0),
            base: x,
        });
    }
    for k in 1..=nmax {
        for m in 0..=k + 1 {
            let x = at_shape(&MonogenicIndex::new(k, m, Parity::Plus)?)?;
            out.push(AmbigenicBasisElement {
                kind: AmbigenicKind::PlusPlus,
                n: k,
                m,
                qpoly: x.clone(),
                c_used: rat_int(0),
                base: x,
            });
        }
        for m in 1..=k {
            let x = at_shape(&MonogenicIndex::new(k, m, Parity::Minus)?)?;
            out.push(AmbigenicBasisElement {
                kind: AmbigenicKind::MinusPlus,
                n: k,
                m,
                qpoly: x.clone(),
                c_used: rat_int(0),
                base: x,
            });
        }
        for m in 0..=k {
            let x = at_shape(&MonogenicIndex::new(k, m, Parity::Plus)?)?;
            let c = c_coeff(k, m, shape)?;
            out.push(AmbigenicBasisElement {
                kind: AmbigenicKind::PlusMinus,
                n: k,
                m,
                qpoly: &x.conj() - &x.scale(&c),
                c_used: c,
                base: x,
            });
        }
        for m in 1..=k + 1 {
            let x = at_shape(&MonogenicIndex::new(k, m, Parity::Minus)?)?;
            let c = c_coeff(k, m, shape)?;
            out.push(AmbigenicBasisElement {
                kind: AmbigenicKind::MinusMinus,
                n: k,
                m,
                qpoly: &x.conj() - &x.scale(&c),
                c_used: c,
                base: x,
            });
        }
    }
    Ok(out)
}
