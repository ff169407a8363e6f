//! Verification suites: each suite runs one family of structural checks
//! and reports machine-readable pass/fail results. The CLI `verify`
//! command and the acceptance tests both dispatch through here, so no
//! check exists only at the command-line layer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contragenics;
use crate::exact::{
    fueter_apply, rat_int, FueterVariant, QPoly, Rational, ScalarPoly, SpheroidShape,
};
use crate::harmonics::{self, Parity};
use crate::integrate::{self, gram, inner_product};
use crate::monogenics::{self, AmbigenicKind};
use crate::numeval::{self, BasisSelector, PointR3};
use crate::{Error, Result};

/// Outcome of a single named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass: true, detail: detail.into() }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass: false, detail: detail.into() }
    }

    fn expect(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            CheckResult::pass(name, "")
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

/// Δ annihilates U, V and every component of X (τ-symbolic) and of Y, Z
/// (shape-dependent families, checked at the given shapes).
pub fn suite_harmonicity(nmax: u32, shapes: &[SpheroidShape]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut bad_uv = Vec::new();
    for index in harmonics::all_indices(nmax) {
        if !harmonics::build_u(&index)?.poly.laplacian().is_zero() {
            bad_uv.push(format!("U[{index}]"));
        }
        if !harmonics::build_v(&index)?.poly.laplacian().is_zero() {
            bad_uv.push(format!("V[{index}]"));
        }
    }
    out.push(CheckResult::expect(
        format!("harmonicity of U,V up to n={nmax} (symbolic)"),
        bad_uv.is_empty(),
        bad_uv.join(", "),
    ));
    let mut bad_x = Vec::new();
    for index in monogenics::all_indices(nmax) {
        let x = monogenics::build_x(&index)?.qpoly;
        if x.components().iter().any(|p| !p.laplacian().is_zero()) {
            bad_x.push(format!("X[{index}]"));
        }
    }
    out.push(CheckResult::expect(
        format!("harmonicity of X components up to n={nmax} (symbolic)"),
        bad_x.is_empty(),
        bad_x.join(", "),
    ));
    for shape in shapes {
        let mut bad_yz = Vec::new();
        for y in monogenics::ambigenic_basis(nmax, shape)? {
            if y.qpoly.components().iter().any(|p| !p.laplacian().is_zero()) {
                bad_yz.push(y.label());
            }
        }
        for z in contragenics::basis_up_to(nmax, shape)? {
            if z.qpoly.components().iter().any(|p| !p.laplacian().is_zero()) {
                bad_yz.push(z.label());
            }
        }
        out.push(CheckResult::expect(
            format!("harmonicity of Y,Z components up to n={nmax} (tau={shape})"),
            bad_yz.is_empty(),
            bad_yz.join(", "),
        ));
    }
    Ok(out)
}

/// Dbar annihilates every X (all four quaternion components, τ-symbolic),
/// and both constructions of X agree exactly.
pub fn suite_monogenicity(nmax: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    let mut mismatch = Vec::new();
    for index in monogenics::all_indices(nmax) {
        let x = monogenics::build_x(&index)?;
        if !fueter_apply(&x.qpoly, FueterVariant::Dbar)?.is_zero() {
            bad.push(format!("X[{index}]"));
        }
        if x.qpoly != monogenics::build_x_via_operator(&index)?.qpoly {
            mismatch.push(format!("X[{index}]"));
        }
    }
    out.push(CheckResult::expect(
        format!("Dbar annihilates X up to n={nmax} (symbolic, all components)"),
        bad.is_empty(),
        bad.join(", "),
    ));
    out.push(CheckResult::expect(
        format!("dual construction of X agrees up to n={nmax}"),
        mismatch.is_empty(),
        mismatch.join(", "),
    ));
    Ok(out)
}

fn v_family(nmax: u32) -> Result<Vec<(String, QPoly)>> {
    harmonics::all_indices(nmax)
        .into_iter()
        .map(|i| Ok((format!("V:{i}"), QPoly::from_scalar(harmonics::build_v(&i)?.poly))))
        .collect()
}

fn x_family(nmax: u32) -> Result<Vec<(String, QPoly)>> {
    monogenics::all_indices(nmax)
        .into_iter()
        .map(|i| Ok((format!("X:{i}"), monogenics::build_x(&i)?.qpoly)))
        .collect()
}

/// Exact Gram diagonality of {V}, {X} and {ambigenic ∪ Z} at the given
/// shapes.
pub fn suite_orthogonality(nmax: u32, shapes: &[SpheroidShape]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shape in shapes {
        for (name, basis) in [("V", v_family(nmax)?), ("X", x_family(nmax)?)] {
            let g = gram(&basis, shape)?;
            out.push(CheckResult::expect(
                format!("{name} family Gram diagonal, n<={nmax}, tau={shape}"),
                g.is_diagonal(),
                format!("{:?}", g.offdiagonal_violation()),
            ));
        }
        let mut combined: Vec<(String, QPoly)> = monogenics::ambigenic_basis(nmax, shape)?
            .into_iter()
            .map(|y| (y.label(), y.qpoly))
            .collect();
        combined.extend(
            contragenics::basis_up_to(nmax, shape)?
                .into_iter()
                .map(|z| (z.label(), z.qpoly)),
        );
        let g = gram(&combined, shape)?;
        out.push(CheckResult::expect(
            format!("ambigenic+Z Gram diagonal, n<={nmax}, tau={shape}"),
            g.is_diagonal(),
            format!("{:?}", g.offdiagonal_violation()),
        ));
    }
    Ok(out)
}

/// Closed-form norms equal the exact-integration oracle, and the constant
/// basis element's norm is the spheroid volume.
pub fn suite_norms(nmax: u32, shapes: &[SpheroidShape]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shape in shapes {
        let mut bad_v = Vec::new();
        for index in harmonics::all_indices(nmax) {
            let v = QPoly::from_scalar(harmonics::build_v(&index)?.poly);
            let oracle = inner_product(&v, &v, shape)?;
            if oracle != harmonics::v_norm_sq(&index, shape)? {
                bad_v.push(format!("V[{index}]"));
            }
        }
        out.push(CheckResult::expect(
            format!("V norm closed form = oracle, n<={nmax}, tau={shape}"),
            bad_v.is_empty(),
            bad_v.join(", "),
        ));
        let mut bad_x = Vec::new();
        for index in monogenics::all_indices(nmax) {
            let x = monogenics::build_x(&index)?.qpoly;
            let oracle = inner_product(&x, &x, shape)?;
            if oracle != monogenics::x_norm_sq(&index, shape)? {
                bad_x.push(format!("X[{index}]"));
            }
        }
        out.push(CheckResult::expect(
            format!("X norm closed form = oracle, n<={nmax}, tau={shape}"),
            bad_x.is_empty(),
            bad_x.join(", "),
        ));
        let volume_index = harmonics::HarmonicIndex::new(0, 0, Parity::Plus)?;
        let vol = harmonics::v_norm_sq(&volume_index, shape)?;
        let expected = rat_int(4) * shape.wsq() / rat_int(3);
        out.push(CheckResult::expect(
            format!("constant norm is the volume, tau={shape}"),
            vol.coefficient() == &expected,
            format!("{vol}"),
        ));
    }
    Ok(out)
}

/// The degree recurrence, the order-(−1) relation, and the conjugate
/// pairing symmetry across parity.
pub fn suite_recurrence(nmax: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for n in 2..=nmax {
        for m in 0..=n - 2 {
            if harmonics::check_recurrence(n, m)?.iter().any(|r| !r.is_zero()) {
                bad.push(format!("({n},{m})"));
            }
        }
    }
    out.push(CheckResult::expect(
        format!("degree recurrence residuals vanish, 2<=n<={nmax}"),
        bad.is_empty(),
        bad.join(", "),
    ));
    let mut bad_neg = Vec::new();
    for n in 0..=nmax.min(6) {
        if !harmonics::v_neg_relation_check(n)? {
            bad_neg.push(format!("n={n}"));
        }
    }
    out.push(CheckResult::expect(
        "order-(-1) relation with factor -1/((n+1)(n+2))",
        bad_neg.is_empty(),
        bad_neg.join(", "),
    ));
    let shape = SpheroidShape::parse("1/4")?;
    let mut bad_pair = Vec::new();
    for n in 1..=nmax.min(6) {
        for m in 1..=n {
            let xp = monogenics::build_x(&monogenics::MonogenicIndex::new(n, m, Parity::Plus)?)?;
            let xm = monogenics::build_x(&monogenics::MonogenicIndex::new(n, m, Parity::Minus)?)?;
            let a = inner_product(&xp.qpoly, &xp.qpoly.conj(), &shape)?;
            let b = inner_product(&xm.qpoly, &xm.qpoly.conj(), &shape)?;
            if a != b {
                bad_pair.push(format!("({n},{m})"));
            }
        }
    }
    out.push(CheckResult::expect(
        format!("conjugate pairing equal across parity, 1<=m<=n<={}", nmax.min(6)),
        bad_pair.is_empty(),
        bad_pair.join(", "),
    ));
    Ok(out)
}

/// Computed Gram ranks equal the closed-form dimension formulas.
pub fn suite_dims(nmax: u32, shapes: &[SpheroidShape]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shape in shapes {
        let rows = integrate::rank_dimension_report(nmax, shape)?;
        let bad: Vec<String> = rows
            .iter()
            .filter(|r| !r.ok())
            .map(|r| format!("n={}: {r:?}", r.n))
            .collect();
        out.push(CheckResult::expect(
            format!("dimension table reproduced, n<={nmax}, tau={shape}"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(out)
}

/// Regression against the low-degree closed-form tables.
pub fn suite_tables() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for (index, expected) in crate::tables::monogenic_reference() {
        if monogenics::build_x(&index)?.qpoly != expected {
            bad.push(format!("X[{index}]"));
        }
    }
    out.push(CheckResult::expect(
        "monogenic table regression (degree <= 3, symbolic)",
        bad.is_empty(),
        bad.join(", "),
    ));
    for tau in ["1/4", "-1/2"] {
        let shape = SpheroidShape::parse(tau)?;
        let mut bad = Vec::new();
        for (index, expected) in crate::tables::contragenic_reference(&shape)? {
            if contragenics::build_z(&index, &shape)?.qpoly != expected {
                bad.push(format!("Z[{index}]"));
            }
        }
        out.push(CheckResult::expect(
            format!("contragenic table regression (degree <= 3, tau={tau})"),
            bad.is_empty(),
            bad.join(", "),
        ));
    }
    Ok(out)
}

/// Coordinate-product evaluation agrees with the exact polynomials at
/// random interior points, for every family, prolate and oblate.
pub fn suite_dualpath(nmax: u32, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for tau in ["1/4", "-1"] {
        let shape = SpheroidShape::parse(tau)?;
        let tau_f = shape.tau_f64();
        let mut rng = numeval::mc_rng(seed, 0);
        let points: Vec<PointR3> = (0..100)
            .map(|_| numeval::random_interior_point(&shape, &mut rng))
            .collect();
        let mut worst: (f64, String) = (0.0, String::new());
        let mut check = |label: String, exact: &QPoly, sel: &BasisSelector| -> Result<()> {
            let numeric = numeval::eval_basis_numeric(sel, &points, &shape)?;
            for (p, num) in points.iter().zip(&numeric) {
                let ex = exact.eval_f64(p.to_array(), tau_f);
                for k in 0..4 {
                    let scale = ex[k].abs().max(num[k].abs()).max(1.0);
                    let rel = (ex[k] - num[k]).abs() / scale;
                    if rel > worst.0 {
                        worst = (rel, label.clone());
                    }
                }
            }
            Ok(())
        };
        for index in harmonics::all_indices(nmax) {
            check(
                format!("U[{index}]"),
                &QPoly::from_scalar(harmonics::build_u(&index)?.poly),
                &BasisSelector::U(index),
            )?;
            check(
                format!("V[{index}]"),
                &QPoly::from_scalar(harmonics::build_v(&index)?.poly),
                &BasisSelector::V(index),
            )?;
        }
        for index in monogenics::all_indices(nmax) {
            check(
                format!("X[{index}]"),
                &monogenics::build_x(&index)?.qpoly,
                &BasisSelector::X(index),
            )?;
        }
        for index in contragenics::all_indices(nmax) {
            check(
                format!("Z[{index}]"),
                &contragenics::build_z(&index, &shape)?.qpoly,
                &BasisSelector::Z(index),
            )?;
        }
        out.push(CheckResult::expect(
            format!("dual-path agreement <= 1e-9 relative, n<={nmax}, tau={tau}"),
            worst.0 < 1e-9,
            format!("worst {} at {}", worst.0, worst.1),
        ));
    }
    Ok(out)
}

/// Monte-Carlo estimates of random basis inner products agree with the
/// exact values within 4 standard errors.
pub fn suite_mc(nmax: u32, samples: u64, seed: u64, pairs: usize) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for tau in ["1/4", "-1"] {
        let shape = SpheroidShape::parse(tau)?;
        let mut pool: Vec<(String, QPoly)> = v_family(nmax.min(3))?;
        pool.extend(x_family(nmax.min(3))?);
        for z in contragenics::basis_up_to(nmax.min(3), &shape)? {
            pool.push((z.label(), z.qpoly.clone()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        for k in 0..pairs {
            let i = rng.gen_range(0..pool.len());
            let j = rng.gen_range(0..pool.len());
            let exact = inner_product(&pool[i].1, &pool[j].1, &shape)?.to_f64();
            let est = numeval::mc_inner_product(
                &pool[i].1,
                &pool[j].1,
                &shape,
                samples,
                seed.wrapping_add(k as u64),
            )?;
            let tol = 4.0 * est.stderr.max(1e-12);
            if (est.estimate - exact).abs() > tol {
                bad.push(format!(
                    "<{},{}> = {} vs exact {exact} (sigma {})",
                    pool[i].0, pool[j].0, est.estimate, est.stderr
                ));
            }
        }
        out.push(CheckResult::expect(
            format!("MC within 4 sigma for {pairs} random pairs, tau={tau}"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(out)
}

/// Draw a random harmonic ℝ³-valued polynomial of degree ≤ nmax as an
/// integer combination of harmonic basis elements per component.
pub fn random_harmonic_qpoly(nmax: u32, rng: &mut impl Rng) -> QPoly {
    let mut components = Vec::new();
    for _ in 0..3 {
        let mut acc = ScalarPoly::zero();
        for index in harmonics::all_indices(nmax) {
            let c = rng.gen_range(-4i64..=4);
            if c == 0 {
                continue;
            }
            let v = harmonics::build_v(&index).expect("valid index").poly;
            acc = &acc + &v.scale(&rat_int(c));
        }
        components.push(acc);
    }
    let [e0, e1, e2]: [ScalarPoly; 3] = components.try_into().expect("three components");
    QPoly::from_components(e0, e1, e2, ScalarPoly::zero())
}

/// Decomposition round-trip on random harmonic inputs: exact
/// reconstruction and the three parts land in the right kernels.
pub fn suite_decompose(
    nmax: u32,
    shapes: &[SpheroidShape],
    seed: u64,
    count: usize,
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shape in shapes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        let ambigenic = monogenics::ambigenic_basis(nmax, shape)?;
        let ctx = integrate::DecompositionContext::new(nmax, shape)?;
        for trial in 0..count {
            let f = random_harmonic_qpoly(nmax, &mut rng).substitute_tau(shape);
            let d = ctx.decompose(&f)?;
            if !d.residual.is_zero() {
                bad.push(format!("trial {trial}: nonzero residual"));
                continue;
            }
            if !fueter_apply(&d.monogenic, FueterVariant::Dbar)?.is_zero() {
                bad.push(format!("trial {trial}: monogenic part not in ker Dbar"));
            }
            if !fueter_apply(&d.antimonogenic, FueterVariant::D)?.is_zero() {
                bad.push(format!("trial {trial}: antimonogenic part not in ker D"));
            }
            for y in &ambigenic {
                if !inner_product(&d.contragenic, &y.qpoly, shape)?.is_zero() {
                    bad.push(format!("trial {trial}: contragenic part not orthogonal"));
                    break;
                }
            }
        }
        out.push(CheckResult::expect(
            format!("decomposition round-trip, {count} random inputs, tau={shape}"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(out)
}

/// The ambigenic split canonicalization: +−/−− elements decompose into a
/// monogenic and an antimonogenic summand.
pub fn ambigenic_split_sound(nmax: u32, shape: &SpheroidShape) -> Result<bool> {
    for y in monogenics::ambigenic_basis(nmax, shape)? {
        match y.kind {
            AmbigenicKind::PlusPlus | AmbigenicKind::MinusPlus => {
                if !fueter_apply(&y.qpoly, FueterVariant::Dbar)?.is_zero() {
                    return Ok(false);
                }
            }
            _ => {
                let conj_x = &y.qpoly + &y.base.scale(&y.c_used);
                if !fueter_apply(&conj_x, FueterVariant::D)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Shape-dependence of the contragenic space for random pairs τ1 ≠ τ2.
pub fn suite_shape_dependence(seed: u64, pairs: usize) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut tried = Vec::new();
    for _ in 0..pairs {
        // random exact rationals in (−1, 1) \ {equal}
        let draw = |rng: &mut ChaCha8Rng| -> Rational {
            let den = rng.gen_range(2i64..12);
            let num = rng.gen_range(-den + 1..den);
            crate::exact::rat(num, den)
        };
        let (t1, mut t2) = (draw(&mut rng), draw(&mut rng));
        while t2 == t1 {
            t2 = draw(&mut rng);
        }
        let s1 = SpheroidShape::new(t1.clone())?;
        let s2 = SpheroidShape::new(t2.clone())?;
        tried.push(format!("({s1},{s2})"));
        if !contragenics::shape_distinguishing_check(&s1, &s2)? {
            bad.push(format!("({s1},{s2})"));
        }
    }
    Ok(vec![CheckResult::expect(
        format!("contragenic spaces distinguish shapes: {}", tried.join(" ")),
        bad.is_empty(),
        bad.join(", "),
    )])
}

/// Named suite dispatch used by the CLI.
pub fn run_suite(
    suite: &str,
    nmax: u32,
    shapes: &[SpheroidShape],
    seed: u64,
    samples: u64,
) -> Result<Vec<CheckResult>> {
    match suite {
        "harmonicity" => suite_harmonicity(nmax, shapes),
        "monogenicity" => suite_monogenicity(nmax),
        "orthogonality" => suite_orthogonality(nmax, shapes),
        "norms" => suite_norms(nmax, shapes),
        "recurrence" => suite_recurrence(nmax),
        "dims" => suite_dims(nmax, shapes),
        "tables" => suite_tables(),
        "dualpath" => suite_dualpath(nmax, seed),
        "mc" => suite_mc(nmax, samples, seed, 20),
        "decompose" => suite_decompose(nmax, shapes, seed, 10),
        "shapes" => suite_shape_dependence(seed, 5),
        other => Err(Error::Domain(format!(
            "unknown suite {other:?}; expected one of harmonicity, monogenicity, \
             orthogonality, norms, recurrence, dims, tables, dualpath, mc, decompose, shapes"
        ))),
    }
}

pub const SUITES: &[&str] = &[
    "harmonicity",
    "monogenicity",
    "orthogonality",
    "norms",
    "recurrence",
    "dims",
    "tables",
    "dualpath",
    "mc",
    "decompose",
    "shapes",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for r in suite_tables().unwrap() {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
        for r in suite_recurrence(5).unwrap() {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn random_harmonic_is_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let f = random_harmonic_qpoly(4, &mut rng);
            assert!(f.is_r3_valued());
            for p in [&f.e0, &f.e1, &f.e2] {
                assert!(p.laplacian().is_zero());
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nonsense", 2, &[], 1, 10).is_err());
    }
}
