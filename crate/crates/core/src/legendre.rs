//! Associated Legendre functions of the first kind, exactly and in floats.
//!
//! Everything is organized around the *core* polynomial
//! `core(n, m) = dᵐPₙ/dtᵐ`: on the segment |t| ≤ 1 the function is
//! `(1−t²)^{m/2}·core(t)`, on the ray t ≥ 1 it is `(t²−1)^{m/2}·core(t)`.
//! The half-power factor is never expanded symbolically; exact consumers
//! pair two of them into a polynomial. The core has positive leading
//! coefficient (no Condon–Shortley phase here; the basis constructors
//! attach their own (−1)ᵐ where needed).
//!
//! The module also provides the exact product integral
//! `∫₁^{1/μ} Pₙᵐ(t) Pₙ₊₂ᵐ(t) dt` in the scaled form `μ^{2n+3}·I[n,m]`,
//! which is a polynomial in τ = μ² and is the only combination the norm
//! formulas consume.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{factorial, rat_int, RatPoly, Rational, SpheroidShape, TauPoly};
use crate::{Error, Result};

/// k(k−2)(k−4)···, with (−1)!! = 0!! = 1 by the empty-product convention.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::Domain(format!("double factorial needs k >= -1, got {k}")));
    }
    let mut acc = BigInt::from(1);
    let mut j = k;
    while j >= 2 {
        acc *= BigInt::from(j);
        j -= 2;
    }
    Ok(acc)
}

fn double_factorial_rat(k: i64) -> Rational {
    Rational::from(double_factorial(k).expect("k >= -1"))
}

/// Rescale coefficient (n−m)!/(2n−1)!!; it makes the spherical limit of the
/// spheroidal harmonics finite.
pub fn gamma_coeff(n: u32, m: u32) -> Result<Rational> {
    if m > n {
        return Err(Error::Domain(format!("gamma coefficient needs m <= n, got ({n},{m})")));
    }
    Ok(factorial((n - m) as u64) / double_factorial_rat(2 * n as i64 - 1))
}

/// Legendre polynomial Pₙ via the three-term recurrence, exact.
pub fn legendre_polynomial(n: u32) -> RatPoly {
    let mut prev = RatPoly::one();
    if n == 0 {
        return prev;
    }
    let t = RatPoly::monomial(rat_int(1), 1);
    let mut cur = t.clone();
    for k in 1..n {
        // (k+1)·P_{k+1} = (2k+1)·t·P_k − k·P_{k−1}
        let next = &(&t * &cur).scale(&rat_int(2 * k as i64 + 1)) - &prev.scale(&rat_int(k as i64));
        let next = next.scale(&(rat_int(1) / rat_int(k as i64 + 1)));
        prev = cur;
        cur = next;
    }
    cur
}

/// dᵐPₙ/dtᵐ, the polynomial part shared by both branches of Pₙᵐ.
pub fn legendre_core(n: u32, m: u32) -> Result<RatPoly> {
    if m > n {
        return Err(Error::Domain(format!("legendre core needs m <= n, got ({n},{m})")));
    }
    let mut p = legendre_polynomial(n);
    for _ in 0..m {
        p = p.derivative();
    }
    Ok(p)
}

/// Exact decomposition of Pₙᵐ into half-power factor × core polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreDecomp {
    pub n: u32,
    pub m: u32,
    /// dᵐPₙ/dtᵐ; degree n−m, parity (−1)^{n−m}, leading coefficient
    /// (2n−1)!!/(n−m)!.
    pub core: RatPoly,
}

/// Which branch of the associated Legendre function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// |t| ≤ 1, factor (1−t²)^{m/2}.
    Segment,
    /// t ≥ 1, factor (t²−1)^{m/2}.
    Ray,
}

pub fn legendre_decomp(n: u32, m: u32) -> Result<LegendreDecomp> {
    Ok(LegendreDecomp {
        n,
        m,
        core: legendre_core(n, m)?,
    })
}

impl LegendreDecomp {
    /// Floating evaluation on a chosen branch.
    pub fn eval_f64(&self, t: f64, branch: Branch) -> f64 {
        let half = match branch {
            Branch::Segment => (1.0 - t * t).max(0.0),
            Branch::Ray => (t * t - 1.0).max(0.0),
        };
        half.powf(self.m as f64 / 2.0) * self.core.eval_f64(t)
    }
}

/// Pₙᵐ(t) by stable upward recurrence in n, both branches
/// ((−1, 1) and [1, ∞)); no Condon–Shortley phase.
pub fn legendre_eval(n: u32, m: u32, t: f64) -> f64 {
    if m > n {
        return 0.0;
    }
    let half_sq = if t.abs() <= 1.0 { 1.0 - t * t } else { t * t - 1.0 };
    let half = half_sq.max(0.0).sqrt();
    // P_m^m = (2m−1)!!·half^m
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * half;
    }
    if n == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = (2 * m + 1) as f64 * t * pmm;
    for k in (m + 1)..n {
        // (k−m+1)·P_{k+1} = (2k+1)·t·P_k − (k+m)·P_{k−1}
        let next = ((2 * k + 1) as f64 * t * cur - (k + m) as f64 * prev) / (k - m + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// μ^{2n+3}·∫₁^{1/μ} Pₙᵐ Pₙ₊₂ᵐ dt as a polynomial in τ = μ².
///
/// The integrand ((t²−1)ᵐ × the two cores) is an even polynomial; its
/// antiderivative F is odd and vanishes at 1, so the scaled integral
/// μ^{2n+3}·F(1/μ) collapses to a polynomial in μ². The vanishing F(1) = 0
/// is verified here and reported as a domain error should it ever fail.
pub fn i_symbolic(n: u32, m: u32) -> Result<TauPoly> {
    if m > n {
        // Pₙᵐ vanishes identically
        return Ok(TauPoly::zero());
    }
    let core_a = legendre_core(n, m)?;
    let core_b = legendre_core(n + 2, m)?;
    let half_sq = RatPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]); // t² − 1
    let mut integrand = &core_a * &core_b;
    for _ in 0..m {
        integrand = &integrand * &half_sq;
    }
    let f = integrand.antiderivative();
    if !f.eval(&rat_int(1)).is_zero() {
        return Err(Error::Domain(format!(
            "antiderivative of the Legendre product integrand does not vanish at 1 for (n,m)=({n},{m})"
        )));
    }
    // μ^{2n+3}·F(1/μ) = Σ_k f_k·μ^{2n+3−k}; F odd ⇒ exponents even.
    let top = 2 * n as i64 + 3;
    let mut coeffs = vec![rat_int(0); (n as usize) + 2];
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = top - k as i64;
        debug_assert!(e >= 0 && e % 2 == 0, "scaled integral must be polynomial in tau");
        coeffs[(e / 2) as usize] = c.clone();
    }
    Ok(TauPoly::from_coeffs(coeffs))
}

/// Extension of [`i_symbolic`] to order −1 (used by the monogenic norm at
/// m = 0), via Pₙ⁻¹ = Pₙ¹/(n(n+1)) on the ray branch. For n = 0 the
/// consuming coefficient vanishes, so the zero polynomial is returned.
pub fn i_symbolic_ext(n: u32, m: i64) -> Result<TauPoly> {
    if m >= 0 {
        return i_symbolic(n, m as u32);
    }
    if m != -1 {
        return Err(Error::Domain(format!("scaled integral defined for m >= -1, got {m}")));
    }
    if n == 0 {
        return Ok(TauPoly::zero());
    }
    let nn = n as i64;
    let denom = rat_int(nn * (nn + 1) * (nn + 2) * (nn + 3));
    Ok(i_symbolic(n, 1)?.scale(&(rat_int(1) / denom)))
}

/// The bare integral I[n,m] = ∫₁^{1/μ} Pₙᵐ Pₙ₊₂ᵐ dt at a concrete shape.
///
/// For a prolate shape this needs a rational μ (τ a square of a rational);
/// other prolate values have an irrational endpoint 1/μ and are rejected —
/// norm formulas use the polynomial combination μ^{2n+3}·I instead. For an
/// oblate shape the function follows the analytic continuation and returns
/// the real combination μ^{2n+3}·I[n,m] evaluated at τ, which is what every
/// consumer uses.
pub fn i_integral(n: u32, m: u32, shape: &SpheroidShape) -> Result<Rational> {
    if m > n {
        return Err(Error::Domain(format!("I[n,m] needs m <= n, got ({n},{m})")));
    }
    let tau = shape.tau();
    if tau.is_zero() {
        return Err(Error::Domain(
            "I[n,m] diverges coordinate-wise at the sphere; use the scaled polynomial form".into(),
        ));
    }
    let scaled = i_symbolic(n, m)?.eval(tau);
    if tau.is_negative() {
        return Ok(scaled);
    }
    // prolate: divide by μ^{2n+3} when μ = sqrt(τ) is rational
    let sqrt_exact = |x: &BigInt| -> Option<BigInt> {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    let (num, den) = (tau.numer(), tau.denom());
    let (sn, sd) = match (sqrt_exact(num), sqrt_exact(den)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Domain(format!(
                "I[n,m] is irrational for tau = {} (mu is not rational); use the scaled form",
                crate::exact::rational_to_string(tau)
            )))
        }
    };
    let mu = Rational::new(sn, sd);
    let mut mu_pow = rat_int(1);
    for _ in 0..(2 * n + 3) {
        mu_pow *= &mu;
    }
    Ok(scaled / mu_pow)
}

/// Proxy for legendre_eval that picks the branch by |t|; convenience for
/// dual-path tests.
pub fn legendre_eval_checked(n: u32, m: u32, t: f64) -> Result<f64> {
    if m > n {
        return Err(Error::Domain(format!("need m <= n, got ({n},{m})")));
    }
    if !(-1.0..).contains(&t) {
        return Err(Error::Domain(format!("t must lie in (-1,1) or [1,inf), got {t}")));
    }
    Ok(legendre_eval(n, m, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(6).unwrap(), BigInt::from(48));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn gamma_coeff_examples() {
        assert_eq!(gamma_coeff(0, 0).unwrap(), rat_int(1));
        assert_eq!(gamma_coeff(2, 0).unwrap(), rat(2, 3));
        assert_eq!(gamma_coeff(2, 1).unwrap(), rat(1, 3));
        assert!(gamma_coeff(1, 2).is_err());
        for n in 0..10u32 {
            for m in 0..=n {
                assert!(gamma_coeff(n, m).unwrap() > rat_int(0));
            }
        }
    }

    #[test]
    fn low_degree_cores() {
        assert_eq!(legendre_core(1, 0).unwrap(), RatPoly::monomial(rat_int(1), 1));
        assert_eq!(
            legendre_core(2, 0).unwrap(),
            RatPoly::from_coeffs(vec![rat(-1, 2), rat_int(0), rat(3, 2)])
        );
        assert_eq!(legendre_core(1, 1).unwrap(), RatPoly::one());
        assert!(legendre_core(1, 2).is_err());
    }

    #[test]
    fn recurrence_in_n_holds_on_cores() {
        // (n−m+1)·core_{n+1,m} = (2n+1)·t·core_{n,m} − (n+m)·core_{n−1,m}
        let t = RatPoly::monomial(rat_int(1), 1);
        for n in 1..=15u32 {
            for m in 0..n {
                let lhs = legendre_core(n + 1, m)
                    .unwrap()
                    .scale(&rat_int((n - m + 1) as i64));
                let rhs = &(&t * &legendre_core(n, m).unwrap()).scale(&rat_int(2 * n as i64 + 1))
                    - &legendre_core(n - 1, m).unwrap().scale(&rat_int((n + m) as i64));
                assert_eq!(lhs, rhs, "recurrence failed at ({n},{m})");
            }
        }
    }

    #[test]
    fn derivative_relation_holds_on_cores_both_branches() {
        // (1−t²)(P_{n+1}^m)′ = (n+m+1)Pₙᵐ − (n+1)tP_{n+1}ᵐ, reduced to core
        // form on each branch.
        let t = RatPoly::monomial(rat_int(1), 1);
        let seg = RatPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)]); // 1 − t²
        let ray = RatPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]); // t² − 1
        for n in 0..15u32 {
            for m in 0..=n {
                let hi = legendre_core(n + 1, m).unwrap();
                let lo = legendre_core(n, m).unwrap();
                let m_t_hi = (&t * &hi).scale(&rat_int(m as i64));
                let rhs = &lo.scale(&rat_int((n + m + 1) as i64))
                    - &(&t * &hi).scale(&rat_int(n as i64 + 1));
                // segment: (1−t²)·core′ − m·t·core = rhs
                let lhs_seg = &(&seg * &hi.derivative()) - &m_t_hi;
                assert_eq!(lhs_seg, rhs, "segment relation failed at ({n},{m})");
                // ray: −(t²−1)·core′ − m·t·core = rhs
                let lhs_ray = &(-&(&ray * &hi.derivative())) - &m_t_hi;
                assert_eq!(lhs_ray, rhs, "ray relation failed at ({n},{m})");
            }
        }
    }

    #[test]
    fn core_parity_and_leading_coefficient() {
        for n in 0..=12u32 {
            for m in 0..=n {
                let core = legendre_core(n, m).unwrap();
                assert_eq!(core.degree(), (n - m) as i64);
                assert!(core.has_parity(((n - m) % 2) as u8), "parity failed at ({n},{m})");
                let expected = rat_int(1) / gamma_coeff(n, m).unwrap();
                assert_eq!(core.leading_coeff(), expected, "leading coeff failed at ({n},{m})");
            }
        }
    }

    #[test]
    fn eval_matches_exact_decomposition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..=15u32 {
            for m in 0..=n {
                let d = legendre_decomp(n, m).unwrap();
                for _ in 0..100 {
                    // segment branch
                    let t: f64 = rng.gen_range(-0.999..0.999);
                    let a = legendre_eval(n, m, t);
                    let b = d.eval_f64(t, Branch::Segment);
                    let scale = a.abs().max(b.abs()).max(1.0);
                    assert!((a - b).abs() / scale < 1e-10, "segment ({n},{m}) at {t}: {a} vs {b}");
                    // ray branch
                    let t: f64 = rng.gen_range(1.0..4.0);
                    let a = legendre_eval(n, m, t);
                    let b = d.eval_f64(t, Branch::Ray);
                    let scale = a.abs().max(b.abs()).max(1.0);
                    assert!((a - b).abs() / scale < 1e-10, "ray ({n},{m}) at {t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn eval_pins() {
        assert!((legendre_eval(2, 0, 1.0) - 1.0).abs() < 1e-14);
        assert!((legendre_eval(1, 0, 0.5) - 0.5).abs() < 1e-14);
        // P₂¹(2) = 3t·sqrt(t²−1) = 6·sqrt(3)
        let expect = 6.0 * 3.0f64.sqrt();
        assert!((legendre_eval(2, 1, 2.0) - expect).abs() < 1e-12);
        assert!(
            (legendre_decomp(2, 1).unwrap().eval_f64(2.0, Branch::Ray) - expect).abs() < 1e-12
        );
    }

    #[test]
    fn antiderivative_vanishes_at_one() {
        for n in 0..=10u32 {
            for m in 0..=n {
                assert!(i_symbolic(n, m).is_ok(), "F(1)=0 failed at ({n},{m})");
            }
        }
    }

    #[test]
    fn scaled_integral_examples() {
        // μ³·I[0,0] = (1−τ)/2
        let p = i_symbolic(0, 0).unwrap();
        assert_eq!(p.eval(&rat(1, 4)), rat(3, 8));
        assert_eq!(p, TauPoly::from_coeffs(vec![rat(1, 2), rat(-1, 2)]));
        // I[1,0]: antiderivative of (5t⁴−3t²)/2 is (t⁵−t³)/2, so the
        // scaled integral is again (1−τ)/2
        let p = i_symbolic(1, 0).unwrap();
        assert_eq!(p, TauPoly::from_coeffs(vec![rat(1, 2), rat(-1, 2)]));
        // spherical limit picks the leading antiderivative coefficient
        assert_eq!(i_symbolic(0, 0).unwrap().eval(&rat_int(0)), rat(1, 2));
    }

    #[test]
    fn bare_integral_at_rational_mu() {
        // I[0,0] at μ = 1/2: ∫₁² (3t²−1)/2 dt = 3
        let shape = SpheroidShape::new(rat(1, 4)).unwrap();
        assert_eq!(i_integral(0, 0, &shape).unwrap(), rat_int(3));
        // irrational μ rejected
        let odd = SpheroidShape::new(rat(1, 2)).unwrap();
        assert!(i_integral(0, 0, &odd).is_err());
        // sphere rejected
        assert!(i_integral(0, 0, &SpheroidShape::sphere()).is_err());
        // oblate returns the scaled combination
        let ob = SpheroidShape::new(rat_int(-1)).unwrap();
        assert_eq!(i_integral(0, 0, &ob).unwrap(), rat_int(1));
        assert!(i_integral(0, 1, &shape).is_err());
    }

    #[test]
    fn order_extension() {
        // n = 0 consumer coefficient vanishes; defined as zero
        assert!(i_symbolic_ext(0, -1).unwrap().is_zero());
        let v = i_symbolic_ext(2, -1).unwrap();
        let expected = i_symbolic(2, 1).unwrap().scale(&rat(1, 120));
        assert_eq!(v, expected);
        assert!(i_symbolic_ext(2, -2).is_err());
    }

    #[test]
    fn asymptotic_normalization_against_gamma() {
        // leading coefficient of Pₙᵐ on the ray is 1/γ — the half-power
        // factor contributes tᵐ asymptotically
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..=8u32 {
            for m in 0..=n {
                let g = gamma_coeff(n, m).unwrap().to_f64().unwrap();
                let t: f64 = rng.gen_range(1e5..1e6);
                let approx = legendre_eval(n, m, t) * g / t.powi(n as i32);
                assert!((approx - 1.0).abs() < 1e-3, "asymptotics failed at ({n},{m})");
            }
        }
    }
}
