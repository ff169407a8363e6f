//! Exact L² inner products over the spheroid, Gram matrices, and the
//! orthogonal decomposition of harmonic ℝ³-valued polynomials.
//!
//! Monomial integrals over the domain with semi-axes (1, w, w) have the
//! closed form
//!
//! ```text
//!   ∫ x0^a x1^b x2^c dx = 4π·(a−1)!!(b−1)!!(c−1)!!/(a+b+c+3)!! · (w²)^{(b+c+2)/2}
//! ```
//!
//! for even exponents (zero otherwise), so every inner product of
//! polynomials is an exact rational multiple of π. Monte-Carlo validation
//! of the formula lives with the numeric layer's tests.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::contragenics;
use crate::exact::{
    rat_int, rational_to_string, QPoly, Rational, ScalarPoly, SpheroidShape,
};
use crate::legendre::double_factorial;
use crate::monogenics::{self, AmbigenicKind};
use crate::{Error, Result};

/// An exact value r·π.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PiRational {
    coefficient: Rational,
}

impl PiRational {
    pub fn new(coefficient: Rational) -> Self {
        PiRational { coefficient }
    }

    pub fn zero() -> Self {
        PiRational::new(rat_int(0))
    }

    /// The rational r in r·π.
    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiRational::new(&self.coefficient * c)
    }

    /// Exact quotient of two values; the π factors cancel.
    pub fn ratio(&self, other: &PiRational) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::Domain("division by zero norm".into()));
        }
        Ok(&self.coefficient / &other.coefficient)
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }
}

impl Add for &PiRational {
    type Output = PiRational;
    fn add(self, rhs: &PiRational) -> PiRational {
        PiRational::new(&self.coefficient + &rhs.coefficient)
    }
}

impl Sub for &PiRational {
    type Output = PiRational;
    fn sub(self, rhs: &PiRational) -> PiRational {
        PiRational::new(&self.coefficient - &rhs.coefficient)
    }
}

impl Neg for &PiRational {
    type Output = PiRational;
    fn neg(self) -> PiRational {
        PiRational::new(-&self.coefficient)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi", rational_to_string(&self.coefficient))
    }
}

impl Serialize for PiRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_to_string(&self.coefficient).serialize(s)
    }
}

// ---------------------------------------------------------------------------
// Monomial integration and inner products
// ---------------------------------------------------------------------------

/// ∫ x0^a x1^b x2^c over the spheroid, exactly.
pub fn monomial_integral(a: u32, b: u32, c: u32, shape: &SpheroidShape) -> PiRational {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return PiRational::zero();
    }
    let num = Rational::from(
        double_factorial(a as i64 - 1).expect("a >= 0")
            * double_factorial(b as i64 - 1).expect("b >= 0")
            * double_factorial(c as i64 - 1).expect("c >= 0"),
    ) * rat_int(4);
    let den = Rational::from(double_factorial((a + b + c) as i64 + 3).expect("sum >= 0"));
    let mut w_pow = rat_int(1);
    for _ in 0..(b + c + 2) / 2 {
        w_pow *= shape.wsq();
    }
    PiRational::new(num / den * w_pow)
}

/// ∫ p·q over the spheroid for scalar polynomials (τ substituted at the
/// shape first). Term pairs with an odd combined exponent integrate to
/// zero and are skipped before any coefficient work; the monomial weights
/// are memoized per call.
pub fn scalar_inner_product(p: &ScalarPoly, q: &ScalarPoly, shape: &SpheroidShape) -> PiRational {
    let p = if p.is_tau_free() { p.clone() } else { p.substitute_tau(shape) };
    let q = if q.is_tau_free() { q.clone() } else { q.substitute_tau(shape) };
    let mut weights: std::collections::HashMap<(u32, u32, u32), Rational> =
        std::collections::HashMap::new();
    let mut acc = rat_int(0);
    for (m1, c1) in p.terms() {
        for (m2, c2) in q.terms() {
            let (a, b, c) = (m1.a + m2.a, m1.b + m2.b, m1.c + m2.c);
            if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
                continue;
            }
            let w = weights
                .entry((a, b, c))
                .or_insert_with(|| monomial_integral(a, b, c, shape).coefficient);
            if w.is_zero() {
                continue;
            }
            acc += c1.coeff(0) * c2.coeff(0) * &*w;
        }
    }
    PiRational::new(acc)
}

/// L²(Ω, ℝ³) inner product Σᵢ ∫ [f]ᵢ[g]ᵢ dx for ℝ³-valued polynomials.
pub fn inner_product(f: &QPoly, g: &QPoly, shape: &SpheroidShape) -> Result<PiRational> {
    f.ensure_r3_valued()?;
    g.ensure_r3_valued()?;
    let mut acc = scalar_inner_product(&f.e0, &g.e0, shape);
    acc = &acc + &scalar_inner_product(&f.e1, &g.e1, shape);
    acc = &acc + &scalar_inner_product(&f.e2, &g.e2, shape);
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Gram matrices and exact rank
// ---------------------------------------------------------------------------

/// Symmetric matrix of pairwise inner products.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<PiRational>>,
}

/// Assemble the Gram matrix of a labelled family at a shape. Entries are
/// computed in parallel; exact arithmetic makes the result independent of
/// scheduling.
pub fn gram(basis: &[(String, QPoly)], shape: &SpheroidShape) -> Result<GramMatrix> {
    let substituted: Vec<QPoly> = basis
        .iter()
        .map(|(_, q)| {
            q.ensure_r3_valued()?;
            Ok(q.substitute_tau(shape))
        })
        .collect::<Result<_>>()?;
    let n = substituted.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let computed: Vec<((usize, usize), PiRational)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let v = inner_product(&substituted[i], &substituted[j], shape)
                .expect("components checked R^3-valued");
            ((i, j), v)
        })
        .collect();
    let mut entries = vec![vec![PiRational::zero(); n]; n];
    for ((i, j), v) in computed {
        entries[i][j] = v.clone();
        entries[j][i] = v;
    }
    Ok(GramMatrix {
        labels: basis.iter().map(|(l, _)| l.clone()).collect(),
        entries,
    })
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// First off-diagonal nonzero entry, if any.
    pub fn offdiagonal_violation(&self) -> Option<(String, String)> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.entries[i][j].is_zero() {
                    return Some((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        None
    }

    pub fn is_diagonal(&self) -> bool {
        self.offdiagonal_violation().is_none()
    }

    pub fn diagonal(&self) -> Vec<PiRational> {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// Exact rank over the rationals (the common π factor cancels).
    pub fn rank(&self) -> usize {
        self.rank_prefix(self.dim())
    }

    /// Exact rank of the leading k×k block.
    pub fn rank_prefix(&self, k: usize) -> usize {
        let rows: Vec<Vec<Rational>> = self.entries[..k]
            .iter()
            .map(|row| row[..k].iter().map(|e| e.coefficient.clone()).collect())
            .collect();
        rational_matrix_rank(rows)
    }

    /// CSV export: header of labels, entries as the rational coefficient of
    /// π in `num/den` form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("label");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            out.push_str(&self.labels[i]);
            for e in row {
                out.push(',');
                out.push_str(&rational_to_string(&e.coefficient));
            }
            out.push('\n');
        }
        out
    }
}

/// Exact rank of a rational matrix by fraction-free (Bareiss) elimination:
/// rows are cleared to integers, then eliminated with exact divisions only.
pub fn rational_matrix_rank(rows: Vec<Vec<Rational>>) -> usize {
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|r| r.denom().clone())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            row.into_iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect()
        })
        .collect();
    bigint_rank(int_rows)
}

fn bigint_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        for r in (pivot_row + 1)..rows {
            for c in (col + 1)..cols {
                let num = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                m[r][c] = num / &prev; // exact by the Bareiss identity
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Orthogonal decomposition
// ---------------------------------------------------------------------------

/// Result of projecting a harmonic ℝ³-valued polynomial onto the
/// orthogonal ambigenic ∪ contragenic basis.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    /// (basis label, exact Fourier coefficient), nonzero entries only.
    pub coefficients: Vec<(String, String)>,
    pub monogenic: QPoly,
    pub antimonogenic: QPoly,
    pub contragenic: QPoly,
    pub residual: QPoly,
}

fn check_harmonic(f: &QPoly) -> Result<()> {
    for (p, name) in [(&f.e0, "e0"), (&f.e1, "e1"), (&f.e2, "e2")] {
        let lap = p.laplacian();
        if !lap.is_zero() {
            return Err(Error::NotHarmonic {
                component: name.into(),
                laplacian: lap.to_string(),
            });
        }
    }
    Ok(())
}

/// Precomputed orthogonal basis (ambigenic ∪ contragenic) with norms,
/// reusable across many decompositions at one shape and degree bound.
pub struct DecompositionContext {
    nmax: u32,
    shape: SpheroidShape,
    ambigenic: Vec<monogenics::AmbigenicBasisElement>,
    ambigenic_norms: Vec<PiRational>,
    contragenic: Vec<contragenics::ContragenicBasisElement>,
    contragenic_norms: Vec<PiRational>,
}

impl DecompositionContext {
    pub fn new(nmax: u32, shape: &SpheroidShape) -> Result<Self> {
        let ambigenic = monogenics::ambigenic_basis(nmax, shape)?;
        let contragenic = contragenics::basis_up_to(nmax, shape)?;
        let ambigenic_norms = ambigenic
            .iter()
            .map(|y| inner_product(&y.qpoly, &y.qpoly, shape))
            .collect::<Result<_>>()?;
        let contragenic_norms = contragenic
            .iter()
            .map(|z| inner_product(&z.qpoly, &z.qpoly, shape))
            .collect::<Result<_>>()?;
        Ok(DecompositionContext {
            nmax,
            shape: shape.clone(),
            ambigenic,
            ambigenic_norms,
            contragenic,
            contragenic_norms,
        })
    }

    /// Decompose a harmonic ℝ³-valued polynomial of degree ≤ nmax into
    /// monogenic + antimonogenic + contragenic parts by exact Fourier
    /// coefficients over the orthogonal basis of Ω.
    ///
    /// Canonical split: the `+−`/`−−` elements conj(X) − c·X contribute
    /// conj(X) to the antimonogenic part and −c·X to the monogenic part;
    /// monogenic constants (order n+1 elements, fixed by conjugation up
    /// to sign) are assigned to the monogenic part.
    pub fn decompose(&self, f: &QPoly) -> Result<DecompositionResult> {
        f.ensure_r3_valued()?;
        let f = f.substitute_tau(&self.shape);
        check_harmonic(&f)?;
        if f.total_degree() > self.nmax as i64 {
            return Err(Error::Domain(format!(
                "input degree {} exceeds requested nmax {}",
                f.total_degree(),
                self.nmax
            )));
        }

        let mut coefficients = Vec::new();
        let mut monogenic = QPoly::zero();
        let mut antimonogenic = QPoly::zero();
        let mut contragenic = QPoly::zero();

        for (y, norm) in self.ambigenic.iter().zip(&self.ambigenic_norms) {
            let coeff = inner_product(&f, &y.qpoly, &self.shape)?.ratio(norm)?;
            if coeff.is_zero() {
                continue;
            }
            coefficients.push((y.label(), rational_to_string(&coeff)));
            match y.kind {
                AmbigenicKind::PlusPlus | AmbigenicKind::MinusPlus => {
                    monogenic = &monogenic + &y.qpoly.scale(&coeff);
                }
                AmbigenicKind::PlusMinus | AmbigenicKind::MinusMinus => {
                    if y.m == y.n + 1 {
                        // conj of a monogenic constant is again monogenic
                        monogenic = &monogenic + &y.qpoly.scale(&coeff);
                    } else {
                        let conj_x = &y.qpoly + &y.base.scale(&y.c_used);
                        antimonogenic = &antimonogenic + &conj_x.scale(&coeff);
                        monogenic = &monogenic - &y.base.scale(&(&coeff * &y.c_used));
                    }
                }
            }
        }
        for (z, norm) in self.contragenic.iter().zip(&self.contragenic_norms) {
            let coeff = inner_product(&f, &z.qpoly, &self.shape)?.ratio(norm)?;
            if coeff.is_zero() {
                continue;
            }
            coefficients.push((z.label(), rational_to_string(&coeff)));
            contragenic = &contragenic + &z.qpoly.scale(&coeff);
        }

        let reconstructed = &(&monogenic + &antimonogenic) + &contragenic;
        let residual = &f - &reconstructed;
        Ok(DecompositionResult {
            coefficients,
            monogenic,
            antimonogenic,
            contragenic,
            residual,
        })
    }
}

/// One-shot convenience wrapper around [`DecompositionContext`].
pub fn decompose(f: &QPoly, nmax: u32, shape: &SpheroidShape) -> Result<DecompositionResult> {
    DecompositionContext::new(nmax, shape)?.decompose(f)
}

// ---------------------------------------------------------------------------
// Dimension report
// ---------------------------------------------------------------------------

/// Computed vs. closed-form dimension of one space at one degree.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct DimEntry {
    pub computed: usize,
    pub expected: usize,
}

impl DimEntry {
    pub fn ok(&self) -> bool {
        self.computed == self.expected
    }
}

/// One row of the dimension table (polynomials of degree ≤ n).
#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub n: u32,
    /// Scalar harmonics: (n+1)².
    pub harmonic_scalar: DimEntry,
    /// ℝ³-valued harmonics: 3(n+1)².
    pub harmonic_r3: DimEntry,
    /// Monogenic polynomials: (n+3)(n+1).
    pub monogenic: DimEntry,
    /// Monogenic constants: 2n+3.
    pub monogenic_constants: DimEntry,
    /// Ambigenic polynomials: 2n(n+3)+3.
    pub ambigenic: DimEntry,
    /// Contragenic polynomials: n².
    pub contragenic: DimEntry,
}

impl DimensionRow {
    pub fn ok(&self) -> bool {
        self.harmonic_scalar.ok()
            && self.harmonic_r3.ok()
            && self.monogenic.ok()
            && self.monogenic_constants.ok()
            && self.ambigenic.ok()
            && self.contragenic.ok()
    }
}

/// Compute Gram ranks of the constructed families and compare against the
/// closed-form dimensions, for every degree ≤ nmax.
pub fn rank_dimension_report(nmax: u32, shape: &SpheroidShape) -> Result<Vec<DimensionRow>> {
    // scalar harmonics: V elements as scalar quaternions, ordered by degree
    let v_basis: Vec<(String, QPoly)> = crate::harmonics::all_indices(nmax)
        .into_iter()
        .map(|i| {
            let poly = crate::harmonics::build_v(&i)?.poly;
            Ok((format!("V:{i}"), QPoly::from_scalar(poly)))
        })
        .collect::<Result<_>>()?;
    let v_gram = gram(&v_basis, shape)?;

    // monogenic family and its conjugates, interleaved by degree so that
    // degree-≤-n prefixes are contiguous
    let x_elements: Vec<(u32, String, QPoly)> = monogenics::all_indices(nmax)
        .into_iter()
        .map(|i| {
            let x = monogenics::build_x(&i)?.qpoly;
            Ok((i.n, format!("X:{i}"), x))
        })
        .collect::<Result<_>>()?;
    let x_basis: Vec<(String, QPoly)> =
        x_elements.iter().map(|(_, l, q)| (l.clone(), q.clone())).collect();
    let x_gram = gram(&x_basis, shape)?;

    let mut xc_basis: Vec<(u32, String, QPoly)> = Vec::new();
    for (n, l, q) in &x_elements {
        xc_basis.push((*n, l.clone(), q.clone()));
        xc_basis.push((*n, format!("conj {l}"), q.conj()));
    }
    xc_basis.sort_by_key(|(n, _, _)| *n);
    let xc_gram = gram(
        &xc_basis.iter().map(|(_, l, q)| (l.clone(), q.clone())).collect::<Vec<_>>(),
        shape,
    )?;

    let amb = monogenics::ambigenic_basis(nmax, shape)?;
    let contra = contragenics::basis_up_to(nmax, shape)?;
    let mut full: Vec<(u32, String, QPoly)> = amb
        .iter()
        .map(|y| (y.n, y.label(), y.qpoly.clone()))
        .chain(contra.iter().map(|z| (z.index.n, z.label(), z.qpoly.clone())))
        .collect();
    full.sort_by_key(|(n, _, _)| *n);
    let full_gram = gram(
        &full.iter().map(|(_, l, q)| (l.clone(), q.clone())).collect::<Vec<_>>(),
        shape,
    )?;

    let z_basis: Vec<(String, QPoly)> = contra
        .iter()
        .map(|z| (z.label(), z.qpoly.clone()))
        .collect();
    let z_gram = gram(&z_basis, shape)?;

    let count_le = |ns: &[u32], n: u32| ns.iter().filter(|&&k| k <= n).count();
    let v_ns: Vec<u32> = crate::harmonics::all_indices(nmax).iter().map(|i| i.n).collect();
    let x_ns: Vec<u32> = x_elements.iter().map(|(n, _, _)| *n).collect();
    let xc_ns: Vec<u32> = xc_basis.iter().map(|(n, _, _)| *n).collect();
    let full_ns: Vec<u32> = full.iter().map(|(n, _, _)| *n).collect();
    let z_ns: Vec<u32> = contra.iter().map(|z| z.index.n).collect();

    let mut rows = Vec::new();
    for n in 0..=nmax {
        let nn = n as usize;
        let m_rank = x_gram.rank_prefix(count_le(&x_ns, n));
        let amb_rank = xc_gram.rank_prefix(count_le(&xc_ns, n));
        rows.push(DimensionRow {
            n,
            harmonic_scalar: DimEntry {
                computed: v_gram.rank_prefix(count_le(&v_ns, n)),
                expected: (nn + 1) * (nn + 1),
            },
            harmonic_r3: DimEntry {
                computed: full_gram.rank_prefix(count_le(&full_ns, n)),
                expected: 3 * (nn + 1) * (nn + 1),
            },
            monogenic: DimEntry {
                computed: m_rank,
                expected: (nn + 3) * (nn + 1),
            },
            monogenic_constants: DimEntry {
                computed: 2 * m_rank - amb_rank,
                expected: 2 * nn + 3,
            },
            ambigenic: DimEntry {
                computed: amb_rank,
                expected: 2 * nn * (nn + 3) + 3,
            },
            contragenic: DimEntry {
                computed: z_gram.rank_prefix(count_le(&z_ns, n)),
                expected: nn * nn,
            },
        });
    }
    Ok(rows)
}
