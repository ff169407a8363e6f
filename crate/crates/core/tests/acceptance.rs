//! Acceptance suite: one test per top-level claim, each printing a
//! pass/fail line. Every tolerance is pinned here; the exact checks are
//! zero-tolerance by construction.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use spheroidal_core::contragenics;
use spheroidal_core::exact::SpheroidShape;
use spheroidal_core::harmonics;
use spheroidal_core::verify::{self, CheckResult};

fn shapes(list: &[&str]) -> Vec<SpheroidShape> {
    list.iter().map(|s| SpheroidShape::parse(s).unwrap()).collect()
}

fn report(criterion: &str, results: &[CheckResult]) {
    let ok = verify::all_pass(results);
    println!(
        "acceptance: {criterion} ... {}",
        if ok { "PASS" } else { "FAIL" }
    );
    for r in results {
        if !r.pass {
            println!("  FAIL {} :: {}", r.name, r.detail);
        }
    }
    assert!(ok, "{criterion} failed");
}

#[test]
fn criterion_01_table_regression() {
    // Exact rational equality of the generated X (degree <= 3, symbolic
    // tau) and Z (degree <= 3 at tau = 1/4 and -1/2) against the
    // closed-form reference tables. Zero tolerance.
    let results = verify::suite_tables().unwrap();
    report("criterion 1 (table regression)", &results);
}

#[test]
fn criterion_02_harmonicity_and_monogenicity() {
    // Laplacian annihilates U, V and every component of X, Y, Z up to
    // n = 8; Dbar annihilates every X up to n = 8, all four quaternion
    // components, tau-symbolic. Zero tolerance.
    let mut results = verify::suite_harmonicity(8, &shapes(&["0", "1/4", "-1"])).unwrap();
    results.extend(verify::suite_monogenicity(8).unwrap());
    report("criterion 2 (harmonicity and monogenicity, n <= 8)", &results);
}

#[test]
fn criterion_03_orthogonality() {
    // Exact Gram diagonality of {V}, {X} and {ambigenic ∪ Z} for degree
    // <= 6 at the sphere, a prolate and an oblate shape. Zero tolerance.
    let results = verify::suite_orthogonality(6, &shapes(&["0", "1/4", "-1"])).unwrap();
    report("criterion 3 (orthogonality, n <= 6, tau in {0, 1/4, -1})", &results);
}

#[test]
fn criterion_04_norm_formulas() {
    // Closed-form norms of V and X equal the exact-integration oracle for
    // n <= 5 at tau = 1/4 and -1; the constant's norm is the spheroid
    // volume (4π/3)(1−τ). Zero tolerance.
    let results = verify::suite_norms(5, &shapes(&["1/4", "-1"])).unwrap();
    report("criterion 4 (norm formulas, n <= 5)", &results);
}

#[test]
fn criterion_05_recurrence_and_relations() {
    // Degree recurrence residuals vanish for 2 <= n <= 8; the
    // order-(-1) relation holds with factor -1/((n+1)(n+2)) for n <= 6;
    // the conjugate pairing is parity-symmetric for 1 <= m <= n <= 6.
    // Zero tolerance.
    let results = verify::suite_recurrence(8).unwrap();
    report("criterion 5 (recurrences and relations)", &results);
}

#[test]
fn criterion_06_dimension_tables() {
    // Computed Gram ranks equal (n+1)², 3(n+1)², (n+3)(n+1), 2n+3,
    // 2n(n+3)+3 and n² for n <= 5 at tau in {0, 1/4, -1}. Zero tolerance.
    let results = verify::suite_dims(5, &shapes(&["0", "1/4", "-1"])).unwrap();
    report("criterion 6 (dimension tables, n <= 5)", &results);
}

#[test]
fn criterion_07_spherical_embedding() {
    // Substituting tau = 0 into U reproduces the independently built solid
    // spherical harmonics for n <= 8. Zero tolerance.
    let sphere = SpheroidShape::sphere();
    let mut bad = Vec::new();
    for index in harmonics::all_indices(8) {
        let u0 = harmonics::build_u(&index).unwrap().poly.substitute_tau(&sphere);
        let solid =
            harmonics::solid_spherical_harmonic(index.n, index.m, index.parity).unwrap();
        if u0 != solid {
            bad.push(format!("U[{index}]"));
        }
    }
    let results = vec![CheckResult {
        name: "spherical embedding, n <= 8".into(),
        pass: bad.is_empty(),
        detail: bad.join(", "),
    }];
    report("criterion 7 (spherical embedding)", &results);
}

#[test]
fn criterion_08_decomposition_round_trip() {
    // 50 random harmonic R^3-valued polynomials of degree <= 5 per shape
    // decompose with exact reconstruction; the monogenic part lies in
    // ker(Dbar), the antimonogenic in ker(D), and the contragenic part is
    // orthogonal to every ambigenic element. All exact.
    let results =
        verify::suite_decompose(5, &shapes(&["0", "1/4", "-1"]), 20260810, 50).unwrap();
    report("criterion 8 (decomposition round-trip, 50 inputs per shape)", &results);
}

#[test]
fn criterion_09_dual_path_numerics() {
    // Coordinate-product evaluation agrees with the exact polynomials to
    // 1e-9 relative at 100 random interior points per index for n <= 8,
    // prolate and oblate; Monte-Carlo inner products with 1e6 samples
    // match exact values within 4 standard errors for 20 random pairs.
    let mut results = verify::suite_dualpath(8, 424242).unwrap();
    results.extend(verify::suite_mc(3, 1_000_000, 424242, 10).unwrap());
    report("criterion 9 (dual-path numerics and Monte-Carlo)", &results);
}

#[test]
fn criterion_10_shape_dependence() {
    // The degree-2 contragenic element of one spheroid fails
    // orthogonality against the ambigenic space of any other: 5 random
    // pairs tau1 != tau2.
    let results = verify::suite_shape_dependence(77, 5).unwrap();
    report("criterion 10 (contragenic spaces distinguish shapes)", &results);
}

#[test]
fn precondition_examples_still_rejected() {
    // the operational error paths named alongside the criteria
    let a = SpheroidShape::parse("1/4").unwrap();
    assert!(contragenics::shape_distinguishing_check(&a, &a).is_err());
    assert!(harmonics::HarmonicIndex::new(3, 0, harmonics::Parity::Minus).is_err());
}
