//! Closed-form basis polynomials of low degree, used as regression
//! fixtures by the verification suites.
//!
//! Every entry was derived by hand from the defining formulas and
//! double-checked against the structural invariants (harmonic components,
//! kernel of the Fueter operator, orthogonality). Two derivations worth
//! flagging:
//!
//! * the e2 component of X[3,1,−] has leading term 10·x0³ — the value
//!   forced by harmonicity (Δ of that component with any other
//!   coefficient is nonzero) and by X = D U;
//! * the order-1 contragenic entries Z[2,1,±] and Z[3,1,±] use the
//!   doubled coefficient a(n,1) (see [`crate::contragenics::a_coeff`]);
//!   with the undoubled ratio the entries fail the defining orthogonality
//!   ⟨Z[n,1,±], X[n,1,∓]⟩ = 0 by an exactly computable margin.

use crate::contragenics::ContragenicIndex;
use crate::exact::{rat, Monomial3, QPoly, ScalarPoly, SpheroidShape, TauPoly};
use crate::harmonics::Parity;
use crate::monogenics::MonogenicIndex;
use crate::Result;

/// Term list → ScalarPoly: (num, den, [a,b,c], τ-power).
fn s(terms: &[(i64, i64, [u32; 3], usize)]) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for &(num, den, [a, b, c], k) in terms {
        let t = ScalarPoly::term(Monomial3::new(a, b, c), TauPoly::monomial(rat(num, den), k));
        out = &out + &t;
    }
    out
}

fn q(
    e0: &[(i64, i64, [u32; 3], usize)],
    e1: &[(i64, i64, [u32; 3], usize)],
    e2: &[(i64, i64, [u32; 3], usize)],
) -> QPoly {
    QPoly::from_components(s(e0), s(e1), s(e2), ScalarPoly::zero())
}

fn xi(n: u32, m: u32, parity: Parity) -> MonogenicIndex {
    MonogenicIndex::new(n, m, parity).expect("table index valid")
}

/// The monogenic basis polynomials of degree ≤ 3, τ-symbolic.
pub fn monogenic_reference() -> Vec<(MonogenicIndex, QPoly)> {
    use Parity::{Minus as M, Plus as P};
    let o = |v: i64| (v, 1);
    let _ = o;
    vec![
        (xi(0, 0, P), q(&[(1, 1, [0, 0, 0], 0)], &[], &[])),
        (xi(0, 1, P), q(&[], &[(1, 1, [0, 0, 0], 0)], &[])),
        (xi(0, 1, M), q(&[], &[], &[(1, 1, [0, 0, 0], 0)])),
        (
            xi(1, 0, P),
            q(
                &[(2, 1, [1, 0, 0], 0)],
                &[(1, 1, [0, 1, 0], 0)],
                &[(1, 1, [0, 0, 1], 0)],
            ),
        ),
        (
            xi(1, 1, P),
            q(&[(-3, 1, [0, 1, 0], 0)], &[(3, 1, [1, 0, 0], 0)], &[]),
        ),
        (
            xi(1, 1, M),
            q(&[(-3, 1, [0, 0, 1], 0)], &[], &[(3, 1, [1, 0, 0], 0)]),
        ),
        (
            xi(1, 2, P),
            q(&[], &[(-6, 1, [0, 1, 0], 0)], &[(6, 1, [0, 0, 1], 0)]),
        ),
        (
            xi(1, 2, M),
            q(&[], &[(-6, 1, [0, 0, 1], 0)], &[(-6, 1, [0, 1, 0], 0)]),
        ),
        (
            xi(2, 0, P),
            q(
                &[
                    (3, 1, [2, 0, 0], 0),
                    (-3, 2, [0, 2, 0], 0),
                    (-3, 2, [0, 0, 2], 0),
                    (-3, 5, [0, 0, 0], 1),
                ],
                &[(3, 1, [1, 1, 0], 0)],
                &[(3, 1, [1, 0, 1], 0)],
            ),
        ),
        (
            xi(2, 1, P),
            q(
                &[(-12, 1, [1, 1, 0], 0)],
                &[
                    (6, 1, [2, 0, 0], 0),
                    (-9, 2, [0, 2, 0], 0),
                    (-3, 2, [0, 0, 2], 0),
                    (-6, 5, [0, 0, 0], 1),
                ],
                &[(-3, 1, [0, 1, 1], 0)],
            ),
        ),
        (
            xi(2, 1, M),
            q(
                &[(-12, 1, [1, 0, 1], 0)],
                &[(-3, 1, [0, 1, 1], 0)],
                &[
                    (6, 1, [2, 0, 0], 0),
                    (-3, 2, [0, 2, 0], 0),
                    (-9, 2, [0, 0, 2], 0),
                    (-6, 5, [0, 0, 0], 1),
                ],
            ),
        ),
        (
            xi(2, 2, P),
            q(
                &[(15, 1, [0, 2, 0], 0), (-15, 1, [0, 0, 2], 0)],
                &[(-30, 1, [1, 1, 0], 0)],
                &[(30, 1, [1, 0, 1], 0)],
            ),
        ),
        (
            xi(2, 2, M),
            q(
                &[(30, 1, [0, 1, 1], 0)],
                &[(-30, 1, [1, 0, 1], 0)],
                &[(-30, 1, [1, 1, 0], 0)],
            ),
        ),
        (
            xi(2, 3, P),
            q(
                &[],
                &[(45, 1, [0, 2, 0], 0), (-45, 1, [0, 0, 2], 0)],
                &[(-90, 1, [0, 1, 1], 0)],
            ),
        ),
        (
            xi(2, 3, M),
            q(
                &[],
                &[(90, 1, [0, 1, 1], 0)],
                &[(45, 1, [0, 2, 0], 0), (-45, 1, [0, 0, 2], 0)],
            ),
        ),
        (
            xi(3, 0, P),
            q(
                &[
                    (4, 1, [3, 0, 0], 0),
                    (-6, 1, [1, 2, 0], 0),
                    (-6, 1, [1, 0, 2], 0),
                    (-12, 7, [1, 0, 0], 1),
                ],
                &[
                    (6, 1, [2, 1, 0], 0),
                    (-3, 2, [0, 3, 0], 0),
                    (-3, 2, [0, 1, 2], 0),
                    (-6, 7, [0, 1, 0], 1),
                ],
                &[
                    (6, 1, [2, 0, 1], 0),
                    (-3, 2, [0, 2, 1], 0),
                    (-3, 2, [0, 0, 3], 0),
                    (-6, 7, [0, 0, 1], 1),
                ],
            ),
        ),
        (
            xi(3, 1, P),
            q(
                &[
                    (-30, 1, [2, 1, 0], 0),
                    (15, 2, [0, 3, 0], 0),
                    (15, 2, [0, 1, 2], 0),
                    (30, 7, [0, 1, 0], 1),
                ],
                &[
                    (10, 1, [3, 0, 0], 0),
                    (-45, 2, [1, 2, 0], 0),
                    (-15, 2, [1, 0, 2], 0),
                    (-30, 7, [1, 0, 0], 1),
                ],
                &[(-15, 1, [1, 1, 1], 0)],
            ),
        ),
        (
            xi(3, 1, M),
            q(
                &[
                    (-30, 1, [2, 0, 1], 0),
                    (15, 2, [0, 2, 1], 0),
                    (15, 2, [0, 0, 3], 0),
                    (30, 7, [0, 0, 1], 1),
                ],
                &[(-15, 1, [1, 1, 1], 0)],
                &[
                    (10, 1, [3, 0, 0], 0),
                    (-15, 2, [1, 2, 0], 0),
                    (-45, 2, [1, 0, 2], 0),
                    (-30, 7, [1, 0, 0], 1),
                ],
            ),
        ),
        (
            xi(3, 2, P),
            q(
                &[(90, 1, [1, 2, 0], 0), (-90, 1, [1, 0, 2], 0)],
                &[
                    (-90, 1, [2, 1, 0], 0),
                    (30, 1, [0, 3, 0], 0),
                    (90, 7, [0, 1, 0], 1),
                ],
                &[
                    (90, 1, [2, 0, 1], 0),
                    (-30, 1, [0, 0, 3], 0),
                    (-90, 7, [0, 0, 1], 1),
                ],
            ),
        ),
        (
            xi(3, 2, M),
            q(
                &[(180, 1, [1, 1, 1], 0)],
                &[
                    (-90, 1, [2, 0, 1], 0),
                    (45, 1, [0, 2, 1], 0),
                    (15, 1, [0, 0, 3], 0),
                    (90, 7, [0, 0, 1], 1),
                ],
                &[
                    (-90, 1, [2, 1, 0], 0),
                    (15, 1, [0, 3, 0], 0),
                    (45, 1, [0, 1, 2], 0),
                    (90, 7, [0, 1, 0], 1),
                ],
            ),
        ),
        (
            xi(3, 3, P),
            q(
                &[(-105, 1, [0, 3, 0], 0), (315, 1, [0, 1, 2], 0)],
                &[(315, 1, [1, 2, 0], 0), (-315, 1, [1, 0, 2], 0)],
                &[(-630, 1, [1, 1, 1], 0)],
            ),
        ),
        (
            xi(3, 3, M),
            q(
                &[(-315, 1, [0, 2, 1], 0), (105, 1, [0, 0, 3], 0)],
                &[(630, 1, [1, 1, 1], 0)],
                &[(315, 1, [1, 2, 0], 0), (-315, 1, [1, 0, 2], 0)],
            ),
        ),
        (
            xi(3, 4, P),
            q(
                &[],
                &[(-420, 1, [0, 3, 0], 0), (1260, 1, [0, 1, 2], 0)],
                &[(1260, 1, [0, 2, 1], 0), (-420, 1, [0, 0, 3], 0)],
            ),
        ),
        (
            xi(3, 4, M),
            q(
                &[],
                &[(-1260, 1, [0, 2, 1], 0), (420, 1, [0, 0, 3], 0)],
                &[(-420, 1, [0, 3, 0], 0), (1260, 1, [0, 1, 2], 0)],
            ),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Contragenic fixtures
// ---------------------------------------------------------------------------

/// Quadric bracket x0²·p(τ) + x1²·q(τ) + x2²·r(τ) + s(τ), coefficients as
/// integer τ-polynomials (index = τ power), optionally multiplied by an
/// outer monomial.
fn quad(
    outer: (i64, i64, [u32; 3]),
    x0sq: &[i64],
    x1sq: &[i64],
    x2sq: &[i64],
    cst: &[i64],
) -> ScalarPoly {
    let tau_poly = |cs: &[i64]| {
        TauPoly::from_coeffs(cs.iter().map(|&v| rat(v, 1)).collect())
    };
    let mut inner = ScalarPoly::zero();
    for (mono, cs) in [
        (Monomial3::new(2, 0, 0), x0sq),
        (Monomial3::new(0, 2, 0), x1sq),
        (Monomial3::new(0, 0, 2), x2sq),
        (Monomial3::new(0, 0, 0), cst),
    ] {
        let t = tau_poly(cs);
        if !t.is_zero() {
            inner = &inner + &ScalarPoly::term(mono, t);
        }
    }
    let (num, den, [a, b, c]) = outer;
    let outer = ScalarPoly::term(Monomial3::new(a, b, c), TauPoly::constant(rat(num, den)));
    &outer * &inner
}

fn zi(n: u32, m: u32, parity: Option<Parity>) -> ContragenicIndex {
    ContragenicIndex::new(n, m, parity).expect("table index valid")
}

/// The contragenic basis polynomials of degree ≤ 3 at a fixed shape.
/// Entries with the norm-ratio coefficient carry a τ-polynomial
/// denominator and are only tabulated after substitution.
pub fn contragenic_reference(
    shape: &SpheroidShape,
) -> Result<Vec<(ContragenicIndex, QPoly)>> {
    use Parity::{Minus as M, Plus as P};
    let tau = shape.tau();
    let den21 = TauPoly::from_coeffs(vec![rat(30, 1), rat(-20, 1), rat(6, 1)]).eval(tau);
    let den31 = TauPoly::from_coeffs(vec![rat(70, 1), rat(-84, 1), rat(30, 1)]).eval(tau);
    let den32 = TauPoly::from_coeffs(vec![rat(35, 1), rat(-14, 1), rat(3, 1)]).eval(tau);
    let inv21 = rat(1, 1) / den21;
    let inv31 = rat(1, 1) / den31;
    let inv32 = rat(1, 1) / den32;
    let fix = |p: &ScalarPoly| p.substitute_tau(shape);
    let zq = |e1: ScalarPoly, e2: ScalarPoly| {
        QPoly::from_components(ScalarPoly::zero(), fix(&e1), fix(&e2), ScalarPoly::zero())
    };

    let mut out = Vec::new();
    // Z[1,0] = −x2 e1 + x1 e2
    out.push((
        zi(1, 0, None),
        zq(s(&[(-1, 1, [0, 0, 1], 0)]), s(&[(1, 1, [0, 1, 0], 0)])),
    ));
    // Z[2,0] = −3 x0 x2 e1 + 3 x0 x1 e2
    out.push((
        zi(2, 0, None),
        zq(s(&[(-3, 1, [1, 0, 1], 0)]), s(&[(3, 1, [1, 1, 0], 0)])),
    ));
    // Z[2,1,±], denominator 30 − 20τ + 6τ²
    out.push((
        zi(2, 1, Some(P)),
        zq(
            s(&[(6, 1, [0, 1, 1], 0)]),
            quad(
                (3, 1, [0, 0, 0]),
                &[20, -40, 20],
                &[-40, 40, -16],
                &[20, 0, -4],
                &[0, -4, 8, -4],
            )
            .scale(&inv21),
        ),
    ));
    out.push((
        zi(2, 1, Some(M)),
        zq(
            quad(
                (3, 1, [0, 0, 0]),
                &[20, -40, 20],
                &[20, 0, -4],
                &[-40, 40, -16],
                &[0, -4, 8, -4],
            )
            .scale(&inv21),
            s(&[(6, 1, [0, 1, 1], 0)]),
        ),
    ));
    // Z[3,0] = (3/14)x2(−28x0² + 7x1² + 7x2² + 4τ)e1 − (3/14)x1(...)e2
    out.push((
        zi(3, 0, None),
        zq(
            quad((3, 14, [0, 0, 1]), &[-28], &[7], &[7], &[0, 4]),
            quad((-3, 14, [0, 1, 0]), &[-28], &[7], &[7], &[0, 4]),
        ),
    ));
    // Z[3,1,±], denominator 70 − 84τ + 30τ²
    out.push((
        zi(3, 1, Some(P)),
        zq(
            s(&[(30, 1, [1, 1, 1], 0)]),
            quad(
                (15, 1, [1, 0, 0]),
                &[28, -56, 28],
                &[-112, 168, -72],
                &[28, 0, -12],
                &[0, -12, 24, -12],
            )
            .scale(&inv31),
        ),
    ));
    out.push((
        zi(3, 1, Some(M)),
        zq(
            quad(
                (15, 1, [1, 0, 0]),
                &[28, -56, 28],
                &[28, 0, -12],
                &[-112, 168, -72],
                &[0, -12, 24, -12],
            )
            .scale(&inv31),
            s(&[(30, 1, [1, 1, 1], 0)]),
        ),
    ));
    // Z[3,2,±], denominator 35 − 14τ + 3τ²
    out.push((
        zi(3, 2, Some(P)),
        zq(
            quad(
                (-30, 1, [0, 0, 1]),
                &[14, -28, 14],
                &[49, -14, 1],
                &[-21, 14, -5],
                &[0, -2, 4, -2],
            )
            .scale(&inv32),
            quad(
                (-30, 1, [0, 1, 0]),
                &[14, -28, 14],
                &[-21, 14, -5],
                &[49, -14, 1],
                &[0, -2, 4, -2],
            )
            .scale(&inv32),
        ),
    ));
    out.push((
        zi(3, 2, Some(M)),
        zq(
            quad(
                (60, 1, [0, 1, 0]),
                &[-7, 14, -7],
                &[-7, 0, 1],
                &[28, -14, 4],
                &[0, 1, -2, 1],
            )
            .scale(&inv32),
            quad(
                (-60, 1, [0, 0, 1]),
                &[-7, 14, -7],
                &[28, -14, 4],
                &[-7, 0, 1],
                &[0, 1, -2, 1],
            )
            .scale(&inv32),
        ),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{fueter_apply, FueterVariant};

    #[test]
    fn reference_monogenics_are_monogenic() {
        for (index, q) in monogenic_reference() {
            let db = fueter_apply(&q, FueterVariant::Dbar).unwrap();
            assert!(db.is_zero(), "table entry X[{index}] is not monogenic");
        }
    }

    #[test]
    fn reference_contragenics_have_harmonic_components() {
        for tau in ["1/4", "-1/2"] {
            let shape = SpheroidShape::parse(tau).unwrap();
            for (index, q) in contragenic_reference(&shape).unwrap() {
                assert!(q.e0.is_zero() && q.e3.is_zero());
                assert!(
                    q.e1.laplacian().is_zero() && q.e2.laplacian().is_zero(),
                    "table entry Z[{index}] has a non-harmonic component"
                );
            }
        }
    }

    #[test]
    fn built_monogenics_match_reference_exactly() {
        for (index, expected) in monogenic_reference() {
            let built = crate::monogenics::build_x(&index).unwrap().qpoly;
            assert_eq!(built, expected, "X[{index}] differs from the reference table");
        }
    }

    #[test]
    fn built_contragenics_match_reference_exactly() {
        for tau in ["1/4", "-1/2"] {
            let shape = SpheroidShape::parse(tau).unwrap();
            for (index, expected) in contragenic_reference(&shape).unwrap() {
                let built = crate::contragenics::build_z(&index, &shape).unwrap().qpoly;
                assert_eq!(
                    built, expected,
                    "Z[{index}] differs from the reference table at tau={tau}"
                );
            }
        }
    }
}
