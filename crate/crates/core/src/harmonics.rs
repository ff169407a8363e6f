//! Spheroidal harmonic polynomials.
//!
//! The family `U[n,m,±]` is built from a product of two associated
//! Legendre factors in the focal coordinates (one on the segment branch,
//! one on the ray branch) scaled by γ(n,m)·μⁿ and an angular factor
//! cos(mφ) / sin(mφ). The orthogonal basis of L² harmonic polynomials is
//! `V[n,m,±] = ∂U[n+1,m,±]/∂x0`.
//!
//! Construction is fully exact and never leaves polynomial arithmetic:
//! with t1·t2 = x0/μ and t1² + t2² = 1 + |x|²/μ², the product of the two
//! Legendre cores is a symmetric polynomial and rewrites in terms of
//! those two invariants (mixed powers reduce through the power-sum
//! recurrence); the two half-power factors pair with the angular factor
//! into Re/Im((x1 + i·x2)ᵐ), computed by a real two-term recursion. All
//! μ powers cancel into powers of τ = μ², so every coefficient is a
//! `TauPoly` and the sphere is literal substitution τ = 0 rather than a
//! limit.
//!
//! Sign convention: the segment-branch Legendre factor carries the
//! (−1)ᵐ phase. This is the convention under which the low-degree
//! monogenic tables in [`crate::tables`] hold verbatim.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{
    rat_int, Axis, Monomial3, Rational, RatPoly, ScalarPoly, SpheroidShape, TauPoly,
};
use crate::integrate::PiRational;
use crate::legendre::{double_factorial, gamma_coeff, legendre_core};
use crate::{Error, Result};

/// Angular parity: `Plus` pairs with cos(mφ), `Minus` with sin(mφ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Parity::Plus),
            "-" => Ok(Parity::Minus),
            _ => Err(Error::Parse(format!("parity must be '+' or '-', got {s:?}"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Index (n, m, ±) of a harmonic basis function.
///
/// Indices of identically-zero functions are rejected at construction:
/// sin(0·φ) kills every (n, 0, −), and m > n kills the Legendre factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
}

impl HarmonicIndex {
    pub fn new(n: u32, m: u32, parity: Parity) -> Result<Self> {
        if m > n {
            return Err(Error::Domain(format!(
                "harmonic index needs m <= n, got ({n},{m})"
            )));
        }
        if m == 0 && parity == Parity::Minus {
            return Err(Error::Domain(format!(
                "index ({n},0,-) is identically zero and excluded"
            )));
        }
        Ok(HarmonicIndex { n, m, parity })
    }
}

impl fmt::Display for HarmonicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.m, self.parity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicFamily {
    U,
    V,
}

/// A constructed harmonic basis polynomial (τ-symbolic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasisElement {
    pub index: HarmonicIndex,
    pub family: HarmonicFamily,
    pub poly: ScalarPoly,
}

impl Serialize for HarmonicBasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HarmonicBasisElement", 5)?;
        s.serialize_field(
            "family",
            match self.family {
                HarmonicFamily::U => "U",
                HarmonicFamily::V => "V",
            },
        )?;
        s.serialize_field("n", &self.index.n)?;
        s.serialize_field("m", &self.index.m)?;
        s.serialize_field("parity", self.index.parity.symbol())?;
        s.serialize_field("poly", &self.poly)?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Cartesianization
// ---------------------------------------------------------------------------

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = rat_int(1);
    for i in 0..k {
        acc = acc * rat_int((n - i) as i64) / rat_int((i + 1) as i64);
    }
    acc
}

/// Polynomials in s = t1·t2 and q = t1² + t2², as (s-exp, q-exp) → coeff.
type SqPoly = std::collections::BTreeMap<(u32, u32), Rational>;

/// Power sums π_{2r} = t1^{2r} + t2^{2r} as polynomials in (s², q):
/// π_0 = 2, π_2 = q, π_{2r} = q·π_{2r−2} − s²·π_{2r−4}.
fn power_sums(max_r: usize) -> Vec<SqPoly> {
    let mut out: Vec<SqPoly> = Vec::with_capacity(max_r + 1);
    out.push(SqPoly::from([((0, 0), rat_int(2))]));
    if max_r >= 1 {
        out.push(SqPoly::from([((0, 1), rat_int(1))]));
    }
    for r in 2..=max_r {
        let mut next = SqPoly::new();
        for (&(a, b), c) in &out[r - 1] {
            *next.entry((a, b + 1)).or_insert_with(|| rat_int(0)) += c;
        }
        for (&(a, b), c) in &out[r - 2] {
            *next.entry((a + 2, b)).or_insert_with(|| rat_int(0)) -= c;
        }
        next.retain(|_, c| !num_traits::Zero::is_zero(c));
        out.push(next);
    }
    out
}

/// core(t1)·core(t2) expressed in s and q. The core's fixed parity makes
/// every mixed power difference even, so the power-sum reduction closes.
fn symmetric_core_product(core: &RatPoly) -> SqPoly {
    let cs = core.coeffs();
    let deg = core.degree().max(0) as usize;
    let pis = power_sums(deg / 2 + 1);
    let mut out = SqPoly::new();
    for j in 0..cs.len() {
        if num_traits::Zero::is_zero(&cs[j]) {
            continue;
        }
        *out.entry((j as u32, 0)).or_insert_with(|| rat_int(0)) += &cs[j] * &cs[j];
        for k in 0..j {
            if num_traits::Zero::is_zero(&cs[k]) {
                continue;
            }
            debug_assert!((j - k) % 2 == 0, "core parity broken");
            let prod = &cs[j] * &cs[k];
            for (&(pa, pb), pc) in &pis[(j - k) / 2] {
                *out.entry((k as u32 + pa, pb)).or_insert_with(|| rat_int(0)) += &prod * pc;
            }
        }
    }
    out.retain(|_, c| !num_traits::Zero::is_zero(c));
    out
}

/// Re((x1+i·x2)ᵐ) for `Plus`, Im for `Minus`; equals ρᵐ·cos/sin(mφ).
pub(crate) fn angular_power(m: u32, parity: Parity) -> ScalarPoly {
    let x1 = ScalarPoly::var(Axis::X1);
    let x2 = ScalarPoly::var(Axis::X2);
    let mut re = ScalarPoly::one();
    let mut im = ScalarPoly::zero();
    for _ in 0..m {
        let next_re = &(&x1 * &re) - &(&x2 * &im);
        let next_im = &(&x1 * &im) + &(&x2 * &re);
        re = next_re;
        im = next_im;
    }
    match parity {
        Parity::Plus => re,
        Parity::Minus => im,
    }
}

/// μ^{deg}·core(t1)·core(t2) in Cartesian form, where deg = degree of the
/// core. Every monomial s^α·q^β satisfies α + 2β ≤ deg with matching
/// parity, so μ clears into powers of τ.
fn radial_part(core: &RatPoly, deg: u32) -> ScalarPoly {
    let sym = symmetric_core_product(core);
    let r2 = {
        let x0 = ScalarPoly::var(Axis::X0);
        let x1 = ScalarPoly::var(Axis::X1);
        let x2 = ScalarPoly::var(Axis::X2);
        &(&(&x0 * &x0) + &(&x1 * &x1)) + &(&x2 * &x2)
    };
    let max_beta = sym.keys().map(|&(_, b)| b).max().unwrap_or(0);
    let mut r2_pows = vec![ScalarPoly::one()];
    for i in 1..=max_beta as usize {
        r2_pows.push(&r2_pows[i - 1] * &r2);
    }
    let mut out = ScalarPoly::zero();
    for (&(alpha, beta), coef) in &sym {
        for i in 0..=beta {
            let rem = deg as i64 - alpha as i64 - 2 * i as i64;
            debug_assert!(rem >= 0 && rem % 2 == 0, "mu power must clear into tau");
            let tau_exp = (rem / 2) as usize;
            let c = coef * &binomial(beta, i);
            let term = ScalarPoly::term(
                Monomial3::new(alpha, 0, 0),
                TauPoly::monomial(c, tau_exp),
            );
            out = &out + &(&term * &r2_pows[i as usize]);
        }
    }
    out
}

fn build_u_poly(n: u32, m: u32, parity: Parity) -> Result<ScalarPoly> {
    let core = legendre_core(n, m)?;
    let radial = radial_part(&core, n - m);
    let angular = angular_power(m, parity);
    let mut scale = gamma_coeff(n, m)?;
    if m % 2 == 1 {
        scale = -scale;
    }
    Ok((&radial * &angular).scale(&scale))
}

/// The order-(−1) companion U[n,−1,±], defined through the standard
/// negative-order extension of the Legendre factors. It reuses the m = 1
/// core with scale γ(n,−1)/(n(n+1))² and flips the sign of the `Minus`
/// angular factor (sin(−φ) = −sin(φ)).
fn build_u_neg1_poly(n: u32, parity: Parity) -> Result<ScalarPoly> {
    if n < 1 {
        return Ok(ScalarPoly::zero());
    }
    let core = legendre_core(n, 1)?;
    let radial = radial_part(&core, n - 1);
    let angular = angular_power(1, parity);
    let gamma_neg = crate::exact::factorial(n as u64 + 1)
        / Rational::from(double_factorial(2 * n as i64 - 1)?);
    let nn = rat_int(n as i64);
    let mut scale = gamma_neg / (&nn * &nn * (&nn + rat_int(1)) * (&nn + rat_int(1)));
    if parity == Parity::Minus {
        scale = -scale;
    }
    Ok((&radial * &angular).scale(&scale))
}

// ---------------------------------------------------------------------------
// Public constructors
// ---------------------------------------------------------------------------

/// The harmonic polynomial U[n,m,±], τ-symbolic.
pub fn build_u(index: &HarmonicIndex) -> Result<HarmonicBasisElement> {
    Ok(HarmonicBasisElement {
        index: *index,
        family: HarmonicFamily::U,
        poly: build_u_poly(index.n, index.m, index.parity)?,
    })
}

/// The orthogonal basis harmonic V[n,m,±] = ∂U[n+1,m,±]/∂x0, τ-symbolic.
pub fn build_v(index: &HarmonicIndex) -> Result<HarmonicBasisElement> {
    let upper = build_u_poly(index.n + 1, index.m, index.parity)?;
    Ok(HarmonicBasisElement {
        index: *index,
        family: HarmonicFamily::V,
        poly: upper.partial_derivative(Axis::X0),
    })
}

/// V[n,m,±] extended to out-of-range orders: identically-zero indices give
/// the zero polynomial and m = −1 resolves through the negative-order
/// extension. The monogenic and contragenic constructors consume this.
pub(crate) fn v_or_zero(n: u32, m: i64, parity: Parity) -> ScalarPoly {
    if m > n as i64 {
        return ScalarPoly::zero();
    }
    if m >= 0 {
        let m = m as u32;
        if m == 0 && parity == Parity::Minus {
            return ScalarPoly::zero();
        }
        return build_v(&HarmonicIndex { n, m, parity })
            .expect("validated index")
            .poly;
    }
    debug_assert_eq!(m, -1);
    if n < 1 {
        return ScalarPoly::zero();
    }
    // V[n,−1,±] = ∓ V[n,1,±] / ((n+1)(n+2)); the assembled form is
    // cross-checked by `v_neg_relation_check`.
    let base = v_or_zero(n, 1, parity);
    let scale = rat_int(1) / rat_int((n as i64 + 1) * (n as i64 + 2));
    match parity {
        Parity::Plus => base.scale(&-scale),
        Parity::Minus => base.scale(&scale),
    }
}

/// ‖V[n,m,±]‖² over the spheroid, exactly, as a rational multiple of π.
pub fn v_norm_sq(index: &HarmonicIndex, shape: &SpheroidShape) -> Result<PiRational> {
    let (n, m) = (index.n as i64, index.m as i64);
    let sigma = v_norm_sigma(index.n, index.m)?;
    let scaled_integral = crate::legendre::i_symbolic(index.n, index.m)?.eval(shape.tau());
    let delta = if m == 0 { rat_int(2) } else { rat_int(1) };
    let _ = n;
    Ok(PiRational::new(delta * sigma * scaled_integral))
}

/// The π-free norm coefficient 2(n+m+1)(n−m+2)!(n+m+1)! /
/// ((2n+1)!!(2n+3)!!).
///
/// The constant factor is a plain 2: the exact-integration oracle pins it
/// for every index, and the monogenic norm formula (whose scalar-part term
/// reduces to exactly this coefficient) independently confirms it.
fn v_norm_sigma(n: u32, m: u32) -> Result<Rational> {
    if m > n {
        return Err(Error::Domain(format!("norm coefficient needs m <= n, got ({n},{m})")));
    }
    let n64 = n as u64;
    let m64 = m as u64;
    let num = rat_int(2)
        * rat_int((n64 + m64 + 1) as i64)
        * crate::exact::factorial(n64 - m64 + 2)
        * crate::exact::factorial(n64 + m64 + 1);
    let den = Rational::from(double_factorial(2 * n as i64 + 1)?)
        * Rational::from(double_factorial(2 * n as i64 + 3)?);
    Ok(num / den)
}

/// Exact residuals of the three-term recurrence
/// V[n,m] = (n+m+1)·U[n,m] + τ·(n+m+1)(n+m)/((2n+1)(2n−1))·V[n−2,m],
/// one per valid parity. All must be identically zero.
pub fn check_recurrence(n: u32, m: u32) -> Result<Vec<ScalarPoly>> {
    if n < 2 || m > n - 2 {
        return Err(Error::Domain(format!(
            "recurrence needs n >= 2 and m <= n-2, got ({n},{m})"
        )));
    }
    let coef = rat_int((n as i64 + m as i64 + 1) * (n as i64 + m as i64))
        / rat_int((2 * n as i64 + 1) * (2 * n as i64 - 1));
    let parities: &[Parity] = if m == 0 {
        &[Parity::Plus]
    } else {
        &[Parity::Plus, Parity::Minus]
    };
    let mut residuals = Vec::new();
    for &parity in parities {
        let v_n = build_v(&HarmonicIndex::new(n, m, parity)?)?.poly;
        let u_n = build_u(&HarmonicIndex::new(n, m, parity)?)?.poly;
        let v_lo = build_v(&HarmonicIndex::new(n - 2, m, parity)?)?.poly;
        let rhs = &u_n.scale(&rat_int(n as i64 + m as i64 + 1))
            + &v_lo.scale_tau(&TauPoly::monomial(coef.clone(), 1));
        residuals.push(&v_n - &rhs);
    }
    Ok(residuals)
}

/// Verify that the assembled order-(−1) function is the stated multiple
/// −1/((n+1)(n+2)) of the order-1 function, for both parities, exactly.
pub fn v_neg_relation_check(n: u32) -> Result<bool> {
    let factor = rat_int(1) / rat_int((n as i64 + 1) * (n as i64 + 2));
    for parity in [Parity::Plus, Parity::Minus] {
        let assembled = build_u_neg1_poly(n + 1, parity)?.partial_derivative(Axis::X0);
        let reference = v_or_zero(n, 1, parity);
        let scaled = match parity {
            Parity::Plus => reference.scale(&-factor.clone()),
            Parity::Minus => reference.scale(&factor),
        };
        if assembled != scaled {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solid spherical harmonic |x|ⁿ·Pₙᵐ(x0/|x|)·cos/sin(mφ), built from the
/// explicit binomial expansion of the Legendre polynomial — an
/// independent construction of the τ = 0 member of the family.
pub fn solid_spherical_harmonic(n: u32, m: u32, parity: Parity) -> Result<ScalarPoly> {
    let index = HarmonicIndex::new(n, m, parity)?;
    let _ = index;
    let r2 = {
        let x0 = ScalarPoly::var(Axis::X0);
        let x1 = ScalarPoly::var(Axis::X1);
        let x2 = ScalarPoly::var(Axis::X2);
        &(&(&x0 * &x0) + &(&x1 * &x1)) + &(&x2 * &x2)
    };
    let mut r2_pows = vec![ScalarPoly::one()];
    for i in 1..=(n / 2) as usize {
        r2_pows.push(&r2_pows[i - 1] * &r2);
    }
    let half = rat_int(1) / Rational::from(num_bigint::BigInt::from(2u8).pow(n));
    let mut radial = ScalarPoly::zero();
    for k in 0..=(n / 2) {
        let e = n - 2 * k;
        if e < m {
            continue;
        }
        // coefficient of t^e in Pₙ, differentiated m times
        let mut c = &half * &binomial(n, k) * binomial(2 * n - 2 * k, n);
        if k % 2 == 1 {
            c = -c;
        }
        for j in 0..m {
            c = c * rat_int((e - j) as i64);
        }
        let term = ScalarPoly::term(Monomial3::new(e - m, 0, 0), TauPoly::constant(c));
        radial = &radial + &(&term * &r2_pows[k as usize]);
    }
    let mut out = &radial * &angular_power(m, parity);
    if m % 2 == 1 {
        out = -&out;
    }
    Ok(out)
}

/// All valid V (equivalently U) indices of degree ≤ nmax, in canonical
/// order: by degree, then order, `+` before `−`.
pub fn all_indices(nmax: u32) -> Vec<HarmonicIndex> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=n {
            out.push(HarmonicIndex { n, m, parity: Parity::Plus });
            if m >= 1 {
                out.push(HarmonicIndex { n, m, parity: Parity::Minus });
            }
        }
    }
    out
}
