//! Sparse multivariate polynomials in x0, x1, x2 with τ-polynomial
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rat_int, Rational, SpheroidShape, TauPoly};
use crate::{Error, Result};

/// Total-degree cap for exact multivariate arithmetic.
pub const MAX_TOTAL_DEGREE: u32 = 64;

/// Coordinate axis of ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X0 = 0,
    X1 = 1,
    X2 = 2,
}

/// Monomial x0^a · x1^b · x2^c.
///
/// Ordered graded-lexicographically: first by total degree, then by
/// (a, b, c). This ordering is the canonical serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial3 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial3 {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial3 { a, b, c }
    }

    pub fn total_degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    fn exponent(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X0 => self.a,
            Axis::X1 => self.b,
            Axis::X2 => self.c,
        }
    }

    fn with_exponent(&self, axis: Axis, e: u32) -> Self {
        let mut m = *self;
        match axis {
            Axis::X0 => m.a = e,
            Axis::X1 => m.b = e,
            Axis::X2 => m.c = e,
        }
        m
    }

    fn mul(&self, other: &Monomial3) -> Monomial3 {
        Monomial3::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }
}

impl Ord for Monomial3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total_degree(), self.a, self.b, self.c).cmp(&(
            other.total_degree(),
            other.a,
            other.b,
            other.c,
        ))
    }
}

impl PartialOrd for Monomial3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial in x0, x1, x2 with `TauPoly` coefficients.
///
/// Invariants: no stored coefficient is the zero `TauPoly`; every monomial
/// obeys the total-degree cap. Equality is exact term-wise equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial3, TauPoly>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        ScalarPoly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::constant(c))
    }

    /// The coordinate polynomial x0, x1 or x2.
    pub fn var(axis: Axis) -> Self {
        let m = Monomial3::new(0, 0, 0).with_exponent(axis, 1);
        ScalarPoly::term(m, TauPoly::one())
    }

    /// Single term coef(τ)·x0^a x1^b x2^c. Panics past the degree cap;
    /// exact-construction code never approaches it.
    pub fn term(m: Monomial3, coeff: TauPoly) -> Self {
        let mut p = ScalarPoly::zero();
        p.add_term(m, coeff).expect("degree cap exceeded");
        p
    }

    fn add_term(&mut self, m: Monomial3, coeff: TauPoly) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if m.total_degree() > MAX_TOTAL_DEGREE {
            return Err(Error::Capacity(format!(
                "monomial degree {} exceeds cap {}",
                m.total_degree(),
                MAX_TOTAL_DEGREE
            )));
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial3, &TauPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial3) -> TauPoly {
        self.terms.get(m).cloned().unwrap_or_else(TauPoly::zero)
    }

    /// Total degree in x, with −1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Largest τ-degree over all coefficients (−1 when τ-free or zero).
    pub fn tau_degree(&self) -> i64 {
        self.terms.values().map(TauPoly::degree).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ScalarPoly::zero();
        }
        ScalarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, t)| (*m, t.scale(c)))
                .collect(),
        }
    }

    /// Multiply every coefficient by a polynomial in τ.
    pub fn scale_tau(&self, f: &TauPoly) -> Self {
        if f.is_zero() {
            return ScalarPoly::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(m, t)| (*m, t * f)).collect(),
        }
    }

    /// Product with the total-degree cap surfaced as a capacity error.
    pub fn checked_mul(&self, rhs: &ScalarPoly) -> Result<ScalarPoly> {
        let mut out = ScalarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2)?;
            }
        }
        Ok(out)
    }

    /// Formal partial derivative; τ is treated as a constant.
    pub fn partial_derivative(&self, axis: Axis) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(axis);
            if e == 0 {
                continue;
            }
            let dm = m.with_exponent(axis, e - 1);
            out.add_term(dm, c.scale(&rat_int(e as i64)))
                .expect("derivative cannot raise degree");
        }
        out
    }

    /// ∂²/∂x0² + ∂²/∂x1² + ∂²/∂x2².
    pub fn laplacian(&self) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for axis in [Axis::X0, Axis::X1, Axis::X2] {
            let second = self.partial_derivative(axis).partial_derivative(axis);
            out = &out + &second;
        }
        out
    }

    /// Evaluate every τ-coefficient at the shape's τ; the result has
    /// constant coefficients.
    pub fn substitute_tau(&self, shape: &SpheroidShape) -> ScalarPoly {
        self.substitute_tau_value(shape.tau())
    }

    pub fn substitute_tau_value(&self, tau: &Rational) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, TauPoly::constant(c.eval(tau)))
                .expect("substitution cannot raise degree");
        }
        out
    }

    /// True when no coefficient involves τ.
    pub fn is_tau_free(&self) -> bool {
        self.terms.values().all(TauPoly::is_constant)
    }

    /// Exact evaluation at a rational point and τ value.
    pub fn eval_exact(&self, x: &[Rational; 3], tau: &Rational) -> Rational {
        let mut acc = rat_int(0);
        for (m, c) in &self.terms {
            let mut term = c.eval(tau);
            for (exp, xi) in [(m.a, &x[0]), (m.b, &x[1]), (m.c, &x[2])] {
                for _ in 0..exp {
                    term *= xi;
                }
            }
            acc += term;
        }
        acc
    }

    /// Floating evaluation: Horner in x0, then x1, then x2.
    pub fn eval_f64(&self, x: [f64; 3], tau: f64) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        // Nested dense tables indexed [a][b][c] keep the evaluation a pure
        // sequence of Horner steps.
        let da = self.terms.keys().map(|m| m.a).max().unwrap() as usize;
        let db = self.terms.keys().map(|m| m.b).max().unwrap() as usize;
        let dc = self.terms.keys().map(|m| m.c).max().unwrap() as usize;
        let mut table = vec![vec![vec![0.0f64; dc + 1]; db + 1]; da + 1];
        for (m, coeff) in &self.terms {
            table[m.a as usize][m.b as usize][m.c as usize] = coeff.eval_f64(tau);
        }
        let mut acc_a = 0.0;
        for plane in table.iter().rev() {
            let mut acc_b = 0.0;
            for row in plane.iter().rev() {
                let mut acc_c = 0.0;
                for v in row.iter().rev() {
                    acc_c = acc_c * x[2] + v;
                }
                acc_b = acc_b * x[1] + acc_c;
            }
            acc_a = acc_a * x[0] + acc_b;
        }
        acc_a
    }

    /// Lower to a flat `(a, b, c, coefficient)` list with f64 coefficients
    /// at a fixed τ, for fast repeated evaluation.
    pub fn lower_f64(&self, tau: f64) -> Vec<(u32, u32, u32, f64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.a, m.b, m.c, c.eval_f64(tau)))
            .filter(|(_, _, _, v)| *v != 0.0)
            .collect()
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone()).expect("degree cap exceeded");
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c).expect("degree cap exceeded");
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        self.checked_mul(rhs).expect("degree cap exceeded")
    }
}

// ---------------------------------------------------------------------------
// Canonical JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    a: u32,
    b: u32,
    c: u32,
    tau: Vec<[String; 2]>,
}

fn tau_to_json(t: &TauPoly) -> Vec<[String; 2]> {
    t.coeffs()
        .iter()
        .map(|c| [c.numer().to_string(), c.denom().to_string()])
        .collect()
}

fn tau_from_json(pairs: &[[String; 2]]) -> Result<TauPoly> {
    let mut coeffs = Vec::with_capacity(pairs.len());
    for [num, den] in pairs {
        let n = num
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
        let d = den
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        coeffs.push(Rational::new(n, d));
    }
    Ok(TauPoly::from_coeffs(coeffs))
}

impl Serialize for ScalarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // BTreeMap iteration is already graded-lex.
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                a: m.a,
                b: m.b,
                c: m.c,
                tau: tau_to_json(c),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = ScalarPoly::zero();
        for t in terms {
            let coeff = tau_from_json(&t.tau).map_err(D::Error::custom)?;
            out.add_term(Monomial3::new(t.a, t.b, t.c), coeff)
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Pretty printing
// ---------------------------------------------------------------------------

fn fmt_monomial(m: &Monomial3) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x0", m.a), ("x1", m.b), ("x2", m.c)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn fmt_tau_single(c: &Rational, k: usize) -> String {
    // one τ^k term rendered as a coefficient string in μ²
    let mut parts = Vec::new();
    if !c.is_one() || k == 0 {
        parts.push(super::rational_to_string(c));
    }
    if k > 0 {
        parts.push(format!("mu^{}", 2 * k));
    }
    parts.join("*")
}

impl fmt::Display for ScalarPoly {
    /// Human-readable form: terms in descending graded-lex order, τ written
    /// as powers of μ².
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, coeff) in self.terms.iter().rev() {
            let nonzero: Vec<(usize, Rational)> = coeff
                .coeffs()
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let mono = fmt_monomial(m);
            let single = nonzero.len() == 1;
            let lead_neg = single && nonzero[0].1.is_negative();
            if first {
                first = false;
                if lead_neg {
                    write!(f, "-")?;
                }
            } else if lead_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if single {
                let (k, c) = &nonzero[0];
                let cs = fmt_tau_single(&c.abs(), *k);
                match (cs.is_empty(), mono.is_empty()) {
                    (true, true) => write!(f, "1")?,
                    (true, false) => write!(f, "{mono}")?,
                    (false, true) => write!(f, "{cs}")?,
                    (false, false) => write!(f, "{cs}*{mono}")?,
                }
            } else {
                let inner = nonzero
                    .iter()
                    .map(|(k, c)| fmt_tau_single(c, *k))
                    .collect::<Vec<_>>()
                    .join(" + ");
                if mono.is_empty() {
                    write!(f, "({inner})")?;
                } else {
                    write!(f, "({inner})*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

// For pretty-printed τ values the formatter above promises μ-notation; give
// rationals a helper for -1 handling in tests.
impl ScalarPoly {
    /// p(x0, −x1, −x2, ...) style sign flips: substitute xᵢ → −xᵢ on the
    /// given axis. Used by parity tests.
    pub fn negate_axis(&self, axis: Axis) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let flip = m.exponent(axis) % 2 == 1;
            let coeff = if flip { -c } else { c.clone() };
            out.add_term(*m, coeff).expect("negation preserves degree");
        }
        out
    }

    /// Evaluate the coefficient of the constant monomial.
    pub fn constant_term(&self) -> TauPoly {
        self.coeff(&Monomial3::new(0, 0, 0))
    }

    /// Convert a τ-free polynomial's coefficients to plain rationals.
    pub fn constant_coeff(&self, m: &Monomial3) -> Rational {
        let c = self.coeff(m);
        debug_assert!(c.is_constant());
        c.coeff(0)
    }
}

/// Convert a canonically-ordered monomial assignment to f64 at a point,
/// used by hot Monte-Carlo loops.
pub(crate) fn eval_lowered(terms: &[(u32, u32, u32, f64)], x: [f64; 3]) -> f64 {
    let mut acc = 0.0;
    for &(a, b, c, coef) in terms {
        acc += coef * x[0].powi(a as i32) * x[1].powi(b as i32) * x[2].powi(c as i32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x(axis: Axis) -> ScalarPoly {
        ScalarPoly::var(axis)
    }

    #[test]
    fn add_and_mul_examples() {
        let x0 = x(Axis::X0);
        let two_x0 = &x0 + &x0;
        assert_eq!(two_x0, x0.scale(&rat_int(2)));

        let x1 = x(Axis::X1);
        let sq = &x1 * &x1;
        assert_eq!(sq, ScalarPoly::term(Monomial3::new(0, 2, 0), TauPoly::one()));

        let tau = TauPoly::monomial(rat_int(1), 1);
        let scaled = (&x0 * &x0).scale_tau(&tau);
        assert_eq!(
            scaled,
            ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::monomial(rat_int(1), 1))
        );
    }

    #[test]
    fn capacity_error_surfaces() {
        let mut big = ScalarPoly::one();
        let x0 = x(Axis::X0);
        for _ in 0..MAX_TOTAL_DEGREE {
            big = &big * &x0;
        }
        assert!(matches!(big.checked_mul(&x0), Err(Error::Capacity(_))));
    }

    #[test]
    fn derivative_examples() {
        // u = x0² − (x1²+x2²)/2 − τ/3 has ∂u/∂x0 = 2x0 and Δu = 0
        let mut u = ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::one());
        u = &u - &ScalarPoly::term(Monomial3::new(0, 2, 0), TauPoly::constant(rat(1, 2)));
        u = &u - &ScalarPoly::term(Monomial3::new(0, 0, 2), TauPoly::constant(rat(1, 2)));
        u = &u - &ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::monomial(rat(1, 3), 1));

        assert_eq!(u.partial_derivative(Axis::X0), x(Axis::X0).scale(&rat_int(2)));
        assert!(u.laplacian().is_zero());
        assert!(ScalarPoly::constant(rat_int(7))
            .partial_derivative(Axis::X1)
            .is_zero());
        let x1x2 = &x(Axis::X1) * &x(Axis::X2);
        assert_eq!(x1x2.partial_derivative(Axis::X2), x(Axis::X1));
        assert_eq!(x(Axis::X0).laplacian(), ScalarPoly::zero());
        assert_eq!(
            (&x(Axis::X0) * &x(Axis::X0)).laplacian(),
            ScalarPoly::constant(rat_int(2))
        );
    }

    #[test]
    fn substitute_tau_examples() {
        // 3x0² − (3/5)τ
        let p = &ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::constant(rat_int(3)))
            - &ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::monomial(rat(3, 5), 1));
        let sphere = SpheroidShape::sphere();
        let at0 = p.substitute_tau(&sphere);
        assert_eq!(
            at0,
            ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::constant(rat_int(3)))
        );
        let quarter = SpheroidShape::new(rat(1, 4)).unwrap();
        let at_q = p.substitute_tau(&quarter);
        assert_eq!(at_q.constant_coeff(&Monomial3::new(0, 0, 0)), rat(-3, 20));
        let oblate = SpheroidShape::new(rat_int(-1)).unwrap();
        // x0² − τ/3 at τ = −1 → x0² + 1/3
        let q = &ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::one())
            - &ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::monomial(rat(1, 3), 1));
        assert_eq!(
            q.substitute_tau(&oblate).constant_coeff(&Monomial3::new(0, 0, 0)),
            rat(1, 3)
        );
    }

    #[test]
    fn eval_f64_examples() {
        let x0 = x(Axis::X0);
        assert_eq!(x0.eval_f64([0.5, 0.0, 0.0], 0.0), 0.5);
        let mut u = ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::one());
        u = &u - &ScalarPoly::term(Monomial3::new(0, 2, 0), TauPoly::constant(rat(1, 2)));
        u = &u - &ScalarPoly::term(Monomial3::new(0, 0, 2), TauPoly::constant(rat(1, 2)));
        u = &u - &ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::monomial(rat(1, 3), 1));
        assert!((u.eval_f64([1.0, 0.0, 0.0], 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip_and_order() {
        let p = &(&x(Axis::X1) * &x(Axis::X1)).scale_tau(&TauPoly::monomial(rat(2, 3), 1))
            + &x(Axis::X0).scale(&rat(-7, 2));
        let s = serde_json::to_string(&p).unwrap();
        let q: ScalarPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        // canonical order: degree-1 x0 term precedes the degree-2 x1² term
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v[0]["a"], 1);
        assert_eq!(v[1]["b"], 2);
        assert_eq!(v[1]["tau"][1][0], "2");
        assert_eq!(v[1]["tau"][1][1], "3");
    }

    #[test]
    fn display_reads_like_a_table_entry() {
        let mut p = ScalarPoly::term(Monomial3::new(2, 0, 0), TauPoly::constant(rat_int(3)));
        p = &p - &ScalarPoly::term(Monomial3::new(0, 2, 0), TauPoly::constant(rat(3, 2)));
        p = &p - &ScalarPoly::term(Monomial3::new(0, 0, 0), TauPoly::monomial(rat(3, 5), 1));
        assert_eq!(p.to_string(), "3*x0^2 - 3/2*x1^2 - 3/5*mu^2");
    }
}
