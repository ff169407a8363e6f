//! Floating-point coordinate transforms and basis evaluation.
//!
//! This layer exists for cross-validation and data export. Basis values
//! are computed through the focal-coordinate product formula with Legendre
//! recurrences — an algorithmically independent path from the exact
//! Cartesian polynomials — and through Monte-Carlo integration with
//! reproducible seeding.
//!
//! The ray-branch Legendre factor is evaluated in the scaled form
//! gₖ = μᵏ·Pₖᵐ(t₂), which stays real for oblate shapes (μ² < 0): its
//! recurrence only involves ω/2 = μ·t₂ and τ = μ², both real. The sphere
//! is excluded here — its focal coordinates degenerate — and is served by
//! the exact path alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::contragenics::ContragenicIndex;
use crate::exact::{QPoly, ShapeKind, SpheroidShape};
use crate::harmonics::{HarmonicIndex, Parity};
use crate::monogenics::MonogenicIndex;
use crate::{Error, Result};

/// A point of ℝ³ in floats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointR3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl PointR3 {
    pub fn new(x0: f64, x1: f64, x2: f64) -> Self {
        PointR3 { x0, x1, x2 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    pub fn norm_sq(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2
    }
}

/// Focal coordinates (u, v, φ) with the branch they belong to.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpheroidalCoords {
    pub u: f64,
    pub v: f64,
    pub phi: f64,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Prolate,
    Oblate,
}

/// ω(x) = √((x0+μ)² + ρ²) + √((x0−μ)² + ρ²) continued to both branches:
/// ω² = 2(A + √(A² − 4τ·x0²)) with A = |x|² + τ.
pub fn omega(p: PointR3, shape: &SpheroidShape) -> f64 {
    let tau = shape.tau_f64();
    let a = p.norm_sq() + tau;
    let disc = (a * a - 4.0 * tau * p.x0 * p.x0).max(0.0);
    (2.0 * (a + disc.sqrt())).max(0.0).sqrt()
}

/// Forward transform. Points must lie strictly inside the domain; the
/// sphere is rejected (degenerate focal set). On-axis points take the
/// u ∈ {0, π} limit with φ = 0.
pub fn to_spheroidal(p: PointR3, shape: &SpheroidShape) -> Result<SpheroidalCoords> {
    if shape.is_sphere() {
        return Err(Error::Domain(
            "focal coordinates degenerate on the sphere; use the exact path".into(),
        ));
    }
    if !shape.contains_f64(p.to_array()) {
        return Err(Error::Domain(format!("point {p:?} is not interior to the spheroid")));
    }
    let w = omega(p, shape);
    let t1 = (2.0 * p.x0 / w).clamp(-1.0, 1.0);
    let u = t1.acos();
    let rho = (p.x1 * p.x1 + p.x2 * p.x2).sqrt();
    let phi = if rho == 0.0 {
        0.0
    } else {
        let raw = p.x2.atan2(p.x1);
        if raw < 0.0 {
            raw + 2.0 * std::f64::consts::PI
        } else {
            raw
        }
    };
    let tau = shape.tau_f64();
    match shape.kind() {
        ShapeKind::Prolate => {
            let mu = tau.sqrt();
            let cosh_v = (w / (2.0 * mu)).max(1.0);
            Ok(SpheroidalCoords {
                u,
                v: cosh_v.acosh(),
                phi,
                branch: Branch::Prolate,
            })
        }
        ShapeKind::Oblate => {
            let am = (-tau).sqrt();
            let sinh_v = w / (2.0 * am);
            Ok(SpheroidalCoords {
                u,
                v: sinh_v.asinh(),
                phi,
                branch: Branch::Oblate,
            })
        }
        ShapeKind::Sphere => unreachable!("rejected above"),
    }
}

/// Inverse transform.
pub fn from_spheroidal(c: &SpheroidalCoords, shape: &SpheroidShape) -> Result<PointR3> {
    let tau = shape.tau_f64();
    match (shape.kind(), c.branch) {
        (ShapeKind::Prolate, Branch::Prolate) => {
            let mu = tau.sqrt();
            let rho = mu * c.u.sin() * c.v.sinh();
            Ok(PointR3::new(
                mu * c.u.cos() * c.v.cosh(),
                rho * c.phi.cos(),
                rho * c.phi.sin(),
            ))
        }
        (ShapeKind::Oblate, Branch::Oblate) => {
            let am = (-tau).sqrt();
            let rho = am * c.u.sin() * c.v.cosh();
            Ok(PointR3::new(
                am * c.u.cos() * c.v.sinh(),
                rho * c.phi.cos(),
                rho * c.phi.sin(),
            ))
        }
        _ => Err(Error::Domain("coordinate branch does not match the shape".into())),
    }
}

// ---------------------------------------------------------------------------
// Product-formula evaluation
// ---------------------------------------------------------------------------

/// Which basis element to evaluate.
#[derive(Clone, Copy, Debug)]
pub enum BasisSelector {
    U(HarmonicIndex),
    V(HarmonicIndex),
    X(MonogenicIndex),
    Z(ContragenicIndex),
}

struct CoordData {
    t1: f64,
    /// ω/2 = μ·t₂, real on both branches.
    h: f64,
    /// √(h² − τ) = μ·(t₂²−1)^{1/2}, real on both branches.
    sigma: f64,
    phi: f64,
    tau: f64,
}

fn coord_data(p: PointR3, shape: &SpheroidShape) -> CoordData {
    let w = omega(p, shape);
    let tau = shape.tau_f64();
    let h = w / 2.0;
    CoordData {
        t1: (2.0 * p.x0 / w).clamp(-1.0, 1.0),
        h,
        sigma: (h * h - tau).max(0.0).sqrt(),
        phi: p.x2.atan2(p.x1),
        tau,
    }
}

/// Segment-branch Pₖᵐ(t1) for k = m..=n by upward recurrence (no phase).
fn ferrers_values(n: u32, m: u32, t1: f64) -> Vec<f64> {
    let half = (1.0 - t1 * t1).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * half;
    }
    let mut vals = vec![pmm];
    if n == m {
        return vals;
    }
    vals.push((2 * m + 1) as f64 * t1 * pmm);
    for k in (m + 1)..n {
        let len = vals.len();
        let next = ((2 * k + 1) as f64 * t1 * vals[len - 1]
            - (k + m) as f64 * vals[len - 2])
            / (k - m + 1) as f64;
        vals.push(next);
    }
    vals
}

/// Scaled ray-branch values gₖ = μᵏ·Pₖᵐ(t₂) for k = m..=n:
/// gₘ = (2m−1)!!·σᵐ, and (k−m+1)·g_{k+1} = (2k+1)·h·gₖ − (k+m)·τ·g_{k−1}.
fn scaled_ray_values(n: u32, m: u32, cd: &CoordData) -> Vec<f64> {
    let mut gmm = 1.0;
    for k in 1..=m {
        gmm *= (2 * k - 1) as f64 * cd.sigma;
    }
    let mut vals = vec![gmm];
    if n == m {
        return vals;
    }
    vals.push((2 * m + 1) as f64 * cd.h * gmm);
    for k in (m + 1)..n {
        let len = vals.len();
        let next = ((2 * k + 1) as f64 * cd.h * vals[len - 1]
            - (k + m) as f64 * cd.tau * vals[len - 2])
            / (k - m + 1) as f64;
        vals.push(next);
    }
    vals
}

fn gamma_f64(n: u32, m: u32) -> f64 {
    num_traits::ToPrimitive::to_f64(&crate::legendre::gamma_coeff(n, m).expect("m <= n"))
        .expect("gamma fits in f64")
}

fn angular(m: u32, parity: Parity, phi: f64) -> f64 {
    match parity {
        Parity::Plus => (m as f64 * phi).cos(),
        Parity::Minus => (m as f64 * phi).sin(),
    }
}

/// U[k,m,±](x) for all k = m..=n at one point.
fn u_values(n: u32, m: u32, parity: Parity, cd: &CoordData) -> Vec<f64> {
    let seg = ferrers_values(n, m, cd.t1);
    let ray = scaled_ray_values(n, m, cd);
    let ang = angular(m, parity, cd.phi);
    let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
    (m..=n)
        .map(|k| {
            let i = (k - m) as usize;
            sign * gamma_f64(k, m) * seg[i] * ray[i] * ang
        })
        .collect()
}

fn u_numeric(n: u32, m: u32, parity: Parity, cd: &CoordData) -> f64 {
    if m > n || (m == 0 && parity == Parity::Minus) {
        return 0.0;
    }
    *u_values(n, m, parity, cd).last().expect("nonempty")
}

/// V[n,m,±](x) through the degree recurrence
/// V[k,m] = (k+m+1)·U[k,m] + τ·(k+m+1)(k+m)/((2k+1)(2k−1))·V[k−2,m],
/// seeded by V[m,m] and V[m+1,m] where the lower term is absent.
fn v_numeric(n: u32, m: u32, parity: Parity, cd: &CoordData) -> f64 {
    if m > n || (m == 0 && parity == Parity::Minus) {
        return 0.0;
    }
    let us = u_values(n, m, parity, cd);
    let mut v_prev2 = 0.0;
    let mut v_prev = 0.0;
    let mut current = 0.0;
    for k in m..=n {
        let km = (k + m) as f64;
        current = (km + 1.0) * us[(k - m) as usize];
        if k >= m + 2 {
            let denom = (2 * k + 1) as f64 * (2 * k - 1) as f64;
            current += cd.tau * (km + 1.0) * km / denom * v_prev2;
        }
        v_prev2 = v_prev;
        v_prev = current;
    }
    current
}

fn v_numeric_ext(n: u32, m: i64, parity: Parity, cd: &CoordData) -> f64 {
    if m >= 0 {
        return v_numeric(n, m as u32, parity, cd);
    }
    debug_assert_eq!(m, -1);
    if n < 1 {
        return 0.0;
    }
    let scale = 1.0 / ((n as f64 + 1.0) * (n as f64 + 2.0));
    match parity {
        Parity::Plus => -scale * v_numeric(n, 1, parity, cd),
        Parity::Minus => scale * v_numeric(n, 1, parity, cd),
    }
}

fn x_numeric(index: &MonogenicIndex, cd: &CoordData) -> [f64; 4] {
    let (n, m) = (index.n, index.m as i64);
    let p = index.parity;
    let q = match p {
        Parity::Plus => Parity::Minus,
        Parity::Minus => Parity::Plus,
    };
    let nm = n as f64 + m as f64;
    let e0 = v_numeric_ext(n, m, p, cd);
    let e1 = 0.5 * ((nm + 1.0) * v_numeric_ext(n, m - 1, p, cd)
        - v_numeric_ext(n, m + 1, p, cd) / (nm + 2.0));
    let mut e2 = 0.5 * ((nm + 1.0) * v_numeric_ext(n, m - 1, q, cd)
        + v_numeric_ext(n, m + 1, q, cd) / (nm + 2.0));
    if p == Parity::Plus {
        e2 = -e2;
    }
    [e0, e1, e2, 0.0]
}

fn z_numeric(index: &ContragenicIndex, shape: &SpheroidShape, cd: &CoordData) -> Result<[f64; 4]> {
    let n = index.n;
    match index.parity {
        None => {
            let s = 1.0 / (n as f64 + 2.0);
            Ok([
                0.0,
                s * v_numeric(n, 1, Parity::Minus, cd),
                -s * v_numeric(n, 1, Parity::Plus, cd),
                0.0,
            ])
        }
        Some(p) => {
            let m = index.m as i64;
            let q = match p {
                Parity::Plus => Parity::Minus,
                Parity::Minus => Parity::Plus,
            };
            let a = num_traits::ToPrimitive::to_f64(&crate::contragenics::a_coeff(
                n, index.m, shape,
            )?)
            .expect("a fits in f64");
            let upper = 1.0 / (n as f64 + m as f64 + 2.0);
            let e1 = a * v_numeric_ext(n, m - 1, q, cd) + upper * v_numeric_ext(n, m + 1, q, cd);
            let mut e2 = a * v_numeric_ext(n, m - 1, p, cd) - upper * v_numeric_ext(n, m + 1, p, cd);
            if p == Parity::Minus {
                e2 = -e2;
            }
            Ok([0.0, e1, e2, 0.0])
        }
    }
}

/// Evaluate a basis element at a batch of interior points through the
/// focal-coordinate product formula. Returns quaternion components
/// (scalar families fill only the first slot).
pub fn eval_basis_numeric(
    selector: &BasisSelector,
    points: &[PointR3],
    shape: &SpheroidShape,
) -> Result<Vec<[f64; 4]>> {
    if shape.is_sphere() {
        return Err(Error::Domain(
            "the coordinate-product path degenerates on the sphere; use the exact path".into(),
        ));
    }
    for p in points {
        if !shape.contains_f64(p.to_array()) {
            return Err(Error::Domain(format!("point {p:?} is not interior to the spheroid")));
        }
    }
    points
        .iter()
        .map(|&p| {
            let cd = coord_data(p, shape);
            Ok(match selector {
                BasisSelector::U(i) => [u_numeric(i.n, i.m, i.parity, &cd), 0.0, 0.0, 0.0],
                BasisSelector::V(i) => [v_numeric(i.n, i.m, i.parity, &cd), 0.0, 0.0, 0.0],
                BasisSelector::X(i) => x_numeric(i, &cd),
                BasisSelector::Z(i) => z_numeric(i, shape, &cd)?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Monte-Carlo inner products
// ---------------------------------------------------------------------------

/// Result of a Monte-Carlo inner-product estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

/// Reproducible RNG for the (seed, stream) split contract: independent
/// streams of one logical experiment.
pub fn mc_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const MC_CHUNK: u64 = 1 << 16;

/// ⟨f, g⟩ estimated by uniform rejection sampling in the bounding box
/// [−1,1]×[−w,w]². Deterministic for a fixed seed: the sample space is
/// split into fixed-size chunks, chunk i drawing from stream i, and the
/// partial sums are reduced in chunk order regardless of scheduling.
pub fn mc_inner_product(
    f: &QPoly,
    g: &QPoly,
    shape: &SpheroidShape,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if n_samples == 0 {
        return Err(Error::Domain("need at least one Monte-Carlo sample".into()));
    }
    f.ensure_r3_valued()?;
    g.ensure_r3_valued()?;
    let tau = shape.tau_f64();
    let fs = f.substitute_tau(shape);
    let gs = g.substitute_tau(shape);
    let terms: Vec<(Vec<(u32, u32, u32, f64)>, Vec<(u32, u32, u32, f64)>)> = [
        (&fs.e0, &gs.e0),
        (&fs.e1, &gs.e1),
        (&fs.e2, &gs.e2),
    ]
    .iter()
    .map(|(a, b)| (a.lower_f64(tau), b.lower_f64(tau)))
    .collect();

    let w = shape.w_f64();
    let wsq = w * w;
    let box_volume = 8.0 * wsq;

    let n_chunks = n_samples.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = mc_rng(seed, chunk);
            let lo = chunk * MC_CHUNK;
            let hi = (lo + MC_CHUNK).min(n_samples);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in lo..hi {
                let x = [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-w..w),
                    rng.gen_range(-w..w),
                ];
                if x[0] * x[0] + (x[1] * x[1] + x[2] * x[2]) / wsq >= 1.0 {
                    continue;
                }
                let mut h = 0.0;
                for (ft, gt) in &terms {
                    h += crate::exact::eval_lowered(ft, x) * crate::exact::eval_lowered(gt, x);
                }
                sum += h;
                sum_sq += h * h;
            }
            (sum, sum_sq)
        })
        .collect();

    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, ss)| (a + s, b + ss));
    let nf = n_samples as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    Ok(McEstimate {
        estimate: box_volume * mean,
        stderr: box_volume * (var / nf).sqrt(),
        n: n_samples,
        seed,
    })
}

/// Draw a uniformly random interior point (rejection from the box).
pub fn random_interior_point(shape: &SpheroidShape, rng: &mut impl Rng) -> PointR3 {
    let w = shape.w_f64();
    let wsq = w * w;
    loop {
        let p = PointR3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-w..w),
            rng.gen_range(-w..w),
        );
        // stay strictly interior with a small margin so coordinate
        // transforms remain well-conditioned
        if p.x0 * p.x0 + (p.x1 * p.x1 + p.x2 * p.x2) / wsq < 0.999 {
            return p;
        }
    }
}
