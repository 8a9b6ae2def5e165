//! Closed-form spectra: the reduced cubic/quartic roots and the per-family
//! energy formulas, with their small/large-β reference expansions.
//!
//! Root conventions: F(Y) is the positive root of x³ + 3x − 2Y = 0, G±(Y) the
//! positive root of 4x⁴ ± 8x − 3Y = 0. Both are evaluated through
//! cancellation-free seeds and finished with Newton steps so the residual gate
//! |poly(root)| < 1e−12·(1+|Y|) holds over Y ∈ [0, 10⁶].

use crate::engine::NValue;
use crate::error::{Error, Result};
use crate::potentials::{Family, Formulation, QuantumNumbers, ReducedProblem, Sign};

/// A polynomial root together with the defining polynomial evaluated at it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDiagnostics {
    pub value: f64,
    pub residual: f64,
}

const ROOT_GATE: f64 = 1e-12;

fn check_gate(value: f64, residual: f64, y: f64) -> Result<RootDiagnostics> {
    if residual.abs() >= ROOT_GATE * (1.0 + y.abs()) {
        return Err(Error::Convergence(format!(
            "root residual {residual:.3e} exceeds gate at Y = {y}"
        )));
    }
    Ok(RootDiagnostics { value, residual })
}

fn require_y(y: f64, strict: bool) -> Result<()> {
    let ok = y.is_finite() && if strict { y > 0.0 } else { y >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::ClosedFormDomain(format!(
            "Y must be {} and finite, got {y}",
            if strict { "> 0" } else { "≥ 0" }
        )))
    }
}

/// F(Y): positive root of x³ + 3x − 2Y = 0 for Y ≥ 0.
/// Evaluated as 2·sinh(asinh(Y)/3), which equals the surd form
/// [Y+√(1+Y²)]^{1/3} − [Y+√(1+Y²)]^{−1/3} without cancellation.
pub fn cubic_root_f(y: f64) -> Result<RootDiagnostics> {
    require_y(y, false)?;
    let mut x = 2.0 * (y.asinh() / 3.0).sinh();
    for _ in 0..2 {
        let f = (x * x + 3.0) * x - 2.0 * y;
        x -= f / (3.0 * x * x + 3.0);
    }
    let residual = (x * x + 3.0) * x - 2.0 * y;
    check_gate(x, residual, y)
}

/// Resolvent V(Y): positive root of v³ + 3Yv − 4 = 0. Decreasing from
/// V(0) = 4^{1/3} toward 4/(3Y); the Cardano difference loses digits for
/// large Y, where the sinh parameterization v = 2√Y·sinh(asinh(2Y^{−3/2})/3)
/// takes over.
fn resolvent_v(y: f64) -> f64 {
    let mut v = if y <= 1.0 {
        let t = 2.0 + (4.0 + y.powi(3)).sqrt();
        let c = t.cbrt();
        c - y / c
    } else {
        2.0 * y.sqrt() * ((2.0 * y.powf(-1.5)).asinh() / 3.0).sinh()
    };
    for _ in 0..2 {
        let f = (v * v + 3.0 * y) * v - 4.0;
        v -= f / (3.0 * v * v + 3.0 * y);
    }
    v
}

fn quartic_polish(mut x: f64, y: f64, sign: f64) -> f64 {
    for _ in 0..3 {
        let f = 4.0 * x.powi(4) + sign * 8.0 * x - 3.0 * y;
        let fp = 16.0 * x.powi(3) + sign * 8.0;
        if fp == 0.0 {
            break;
        }
        x -= f / fp;
    }
    x
}

/// G₊(Y): positive root of 4x⁴ + 8x − 3Y = 0 for Y > 0.
/// The surd −√V/2 + √(4V^{−1/2} − V)/2 cancels badly for small Y, where the
/// linear term dominates and 3Y/8 seeds the polish instead.
pub fn quartic_root_g_plus(y: f64) -> Result<RootDiagnostics> {
    require_y(y, true)?;
    let seed = if y < 0.5 {
        3.0 * y / 8.0
    } else {
        let v = resolvent_v(y);
        let s = v.sqrt();
        0.5 * (-s + (4.0 / s - v).sqrt())
    };
    let x = quartic_polish(seed, y, 1.0);
    let residual = 4.0 * x.powi(4) + 8.0 * x - 3.0 * y;
    check_gate(x, residual, y)
}

/// G₋(Y): positive root of 4x⁴ − 8x − 3Y = 0 for Y ≥ 0. The surd
/// √V/2 + √(4V^{−1/2} − V)/2 adds positive terms, so it is stable everywhere.
pub fn quartic_root_g_minus(y: f64) -> Result<RootDiagnostics> {
    require_y(y, false)?;
    let v = resolvent_v(y);
    let s = v.sqrt();
    let seed = 0.5 * (s + (4.0 / s - v).sqrt());
    let x = quartic_polish(seed, y, -1.0);
    let residual = 4.0 * x.powi(4) - 8.0 * x - 3.0 * y;
    check_gate(x, residual, y)
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::ClosedFormDomain(format!("{name} must be > 0, got {v}")))
    }
}

/// Exact Kratzer level: −2ma² / [n + 1/2 + √((l+1/2)² + 2ma²)]².
pub fn kratzer_exact(m: f64, a: f64, q: QuantumNumbers) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("a", a)?;
    let beta = 2.0 * m * a * a;
    let l = f64::from(q.l) + 0.5;
    let d = f64::from(q.n) + 0.5 + (l * l + beta).sqrt();
    Ok(-beta / (d * d))
}

/// AFM Kratzer level: −2ma² / [2ma² + (n+l+1)²].
pub fn kratzer_afm(m: f64, a: f64, q: QuantumNumbers) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("a", a)?;
    let beta = 2.0 * m * a * a;
    let n = f64::from(q.n) + f64::from(q.l) + 1.0;
    Ok(-beta / (beta + n * n))
}

/// Difference between the AFM and exact Kratzer denominators:
/// δ = (2n+1)(l+1/2)[1 − √(1 + 2ma²/(l+1/2)²)].
pub fn kratzer_delta(m: f64, a: f64, q: QuantumNumbers) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("a", a)?;
    let beta = 2.0 * m * a * a;
    let l = f64::from(q.l) + 0.5;
    Ok((2.0 * f64::from(q.n) + 1.0) * l * (1.0 - (1.0 + beta / (l * l)).sqrt()))
}

/// Large-l / small-intensity limit of `kratzer_delta`: −(2n+1)·ma²/(l+1/2).
pub fn kratzer_delta_limit(m: f64, a: f64, q: QuantumNumbers) -> f64 {
    -(2.0 * f64::from(q.n) + 1.0) * m * a * a / (f64::from(q.l) + 0.5)
}

/// Exact level of H = p² + r² ± β/r²: 2(2n+1) + √((2l+1)² ± 4β).
pub fn quad_centrifugal_exact(beta: f64, sign: Sign, q: QuantumNumbers) -> Result<f64> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::ClosedFormDomain(format!("β must be ≥ 0, got {beta}")));
    }
    let l = 2.0 * f64::from(q.l) + 1.0;
    let arg = l * l + sign.value() * 4.0 * beta;
    if arg <= 0.0 {
        return Err(Error::FallingToCenter(format!(
            "(2l+1)² − 4β = {arg} ≤ 0: the attractive r⁻² term unbinds the spectrum"
        )));
    }
    Ok(2.0 * (2.0 * f64::from(q.n) + 1.0) + arg.sqrt())
}

/// AFM level of H = p² + r² ± β/r²: 2√(N² ± β).
pub fn quad_centrifugal_afm(beta: f64, sign: Sign, n: NValue) -> Result<f64> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::ClosedFormDomain(format!("β must be ≥ 0, got {beta}")));
    }
    let arg = n.value() * n.value() + sign.value() * beta;
    if arg <= 0.0 {
        return Err(Error::FallingToCenter(format!(
            "N² − β = {arg} ≤ 0: the attractive r⁻² term unbinds the spectrum"
        )));
    }
    Ok(2.0 * arg.sqrt())
}

/// AFM level of the reduced anharmonic problem: 2βY(G₋² + 1/G₋), Y = (N/β)^{2/3}.
pub fn anharmonic_afm(beta: f64, n: NValue) -> Result<f64> {
    require_positive("β", beta)?;
    let y = (n.value() / beta).powf(2.0 / 3.0);
    let g = quartic_root_g_minus(y)?.value;
    Ok(2.0 * beta * y * (g * g + 1.0 / g))
}

/// AFM level of the reduced quadratic-plus-Coulomb problem.
/// ε-form: (3β/8)[Y/G₊² − 4/G₊] with Y = (N/β)²;
/// η-form: (3β²/4)[same] with Y = (Nβ)².
pub fn quad_coulomb_afm(beta: f64, n: NValue, formulation: Formulation) -> Result<f64> {
    require_positive("β", beta)?;
    let (y, prefactor) = match formulation {
        Formulation::Epsilon => ((n.value() / beta).powi(2), 3.0 * beta / 8.0),
        Formulation::Eta => ((n.value() * beta).powi(2), 3.0 * beta * beta / 4.0),
    };
    let g = quartic_root_g_plus(y)?.value;
    Ok(prefactor * (y / (g * g) - 4.0 / g))
}

/// AFM level of the reduced funnel problem.
/// ε-form: β^{2/3}[Y/F² − 2/F] with Y = (N/β)²;
/// η-form: 3^{2/3}β²[same] with Y = (Nβ)².
pub fn funnel_afm(beta: f64, n: NValue, formulation: Formulation) -> Result<f64> {
    require_positive("β", beta)?;
    let (y, prefactor) = match formulation {
        Formulation::Epsilon => ((n.value() / beta).powi(2), beta.powf(2.0 / 3.0)),
        Formulation::Eta => ((n.value() * beta).powi(2), 3f64.powf(2.0 / 3.0) * beta * beta),
    };
    let f = cubic_root_f(y)?.value;
    Ok(prefactor * (y / (f * f) - 2.0 / f))
}

/// ε-form funnel level in the hyperbolic-angle variable: with Y = sinh 3θ,
/// Y/F² − 2/F = sinh θ − 1/(4 sinh θ). Alternate path used as a self-check.
pub fn funnel_afm_sinh(beta: f64, n: NValue) -> Result<f64> {
    require_positive("β", beta)?;
    let y = (n.value() / beta).powi(2);
    let s = (y.asinh() / 3.0).sinh();
    Ok(beta.powf(2.0 / 3.0) * (s - 0.25 / s))
}

/// AFM energy of a reduced problem at a given N value. For Kratzer this is
/// −β/(β + N²), the N = n+l+1 formula continued to arbitrary N.
pub fn reduced_afm_energy(red: &ReducedProblem, n: NValue) -> Result<f64> {
    match red.family {
        Family::Kratzer => {
            let nn = n.value() * n.value();
            Ok(-red.beta / (red.beta + nn))
        }
        Family::QuadCentrifugal => quad_centrifugal_afm(red.beta, red.centrifugal_sign, n),
        Family::Anharmonic => anharmonic_afm(red.beta, n),
        Family::QuadCoulomb => quad_coulomb_afm(red.beta, n, red.formulation),
        Family::Funnel => funnel_afm(red.beta, n, red.formulation),
        f => Err(Error::UnsupportedReduction(format!("{f} has no β-reduction"))),
    }
}

/// Exact energy of a reduced problem where one exists (Kratzer, quadratic
/// plus centrifugal).
pub fn reduced_exact_energy(red: &ReducedProblem, q: QuantumNumbers) -> Result<f64> {
    match red.family {
        Family::Kratzer => {
            if red.beta <= 0.0 {
                return Err(Error::ClosedFormDomain("kratzer needs β > 0".into()));
            }
            kratzer_exact(red.beta / 2.0, 1.0, q)
        }
        Family::QuadCentrifugal => quad_centrifugal_exact(red.beta, red.centrifugal_sign, q),
        f => Err(Error::ClosedFormDomain(format!("{f} has no exact closed form"))),
    }
}

/// ε(β) = duality_factor(β) · η(1/β) for the two-scale Coulombic families.
pub fn duality_factor(family: Family, beta: f64) -> Result<f64> {
    require_positive("β", beta)?;
    match family {
        Family::QuadCoulomb => Ok(beta.powi(3) / 2.0),
        Family::Funnel => Ok(beta.powf(8.0 / 3.0) / 3f64.powf(2.0 / 3.0)),
        f => Err(Error::ClosedFormDomain(format!("{f} has no ε/η duality"))),
    }
}

/// First-order and dominant-term reference expansions. These are comparison
/// targets for tests and diagnostics, never substituted into the formula
/// paths; no domain checks.
pub mod asymptotics {
    use crate::potentials::{Formulation, Sign};

    pub fn cubic_root_small(y: f64) -> f64 {
        2.0 * y / 3.0
    }

    pub fn cubic_root_large(y: f64) -> f64 {
        (2.0 * y).cbrt()
    }

    pub fn quartic_plus_small(y: f64) -> f64 {
        3.0 * y / 8.0
    }

    pub fn quartic_minus_small(y: f64) -> f64 {
        2f64.cbrt() + y / 8.0
    }

    pub fn quartic_large(y: f64) -> f64 {
        (0.75 * y).powf(0.25)
    }

    /// √3·N + 4√(2βN/√3)
    pub fn anharmonic_small(beta: f64, n: f64) -> f64 {
        3f64.sqrt() * n + 4.0 * (2.0 * beta * n / 3f64.sqrt()).sqrt()
    }

    /// 3(4βN²)^{1/3}
    pub fn anharmonic_large(beta: f64, n: f64) -> f64 {
        3.0 * (4.0 * beta * n * n).cbrt()
    }

    /// 2N ± β/N
    pub fn quad_centrifugal_small(beta: f64, sign: Sign, n: f64) -> f64 {
        2.0 * n + sign.value() * beta / n
    }

    /// ε: (√3/4)N − √(2β³/(N√3));  η: −8/(3N²) + 9β⁶N⁴/128
    pub fn quad_coulomb_small(beta: f64, n: f64, formulation: Formulation) -> f64 {
        match formulation {
            Formulation::Epsilon => {
                3f64.sqrt() / 4.0 * n - (2.0 * beta.powi(3) / (n * 3f64.sqrt())).sqrt()
            }
            Formulation::Eta => -8.0 / (3.0 * n * n) + 9.0 * beta.powi(6) * n.powi(4) / 128.0,
        }
    }

    /// ε: −4β³/(3N²);  η: (√3/2)β³N
    pub fn quad_coulomb_large(beta: f64, n: f64, formulation: Formulation) -> f64 {
        match formulation {
            Formulation::Epsilon => -4.0 * beta.powi(3) / (3.0 * n * n),
            Formulation::Eta => 3f64.sqrt() / 2.0 * beta.powi(3) * n,
        }
    }

    /// ε: N^{2/3}/2^{2/3} − (β⁴/(2N²))^{1/3};  η: −3^{5/3}/(4N²) + 2N²β⁴/3^{4/3}
    pub fn funnel_small(beta: f64, n: f64, formulation: Formulation) -> f64 {
        match formulation {
            Formulation::Epsilon => {
                (n * n).cbrt() / 4f64.cbrt() - (beta.powi(4) / (2.0 * n * n)).cbrt()
            }
            Formulation::Eta => {
                -3f64.powf(5.0 / 3.0) / (4.0 * n * n)
                    + 2.0 * n * n * beta.powi(4) / 3f64.powf(4.0 / 3.0)
            }
        }
    }

    /// ε: −3β^{8/3}/(4N²);  η: ((3/2)β⁴N)^{2/3}
    pub fn funnel_large(beta: f64, n: f64, formulation: Formulation) -> f64 {
        match formulation {
            Formulation::Epsilon => -3.0 * beta.powf(8.0 / 3.0) / (4.0 * n * n),
            Formulation::Eta => (1.5 * beta.powi(4) * n).powf(2.0 / 3.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / x.abs().max(y.abs()).max(1.0)
    }

    fn nv(v: f64) -> NValue {
        NValue::new(v).unwrap()
    }

    #[test]
    fn root_anchors_and_frozen_values() {
        assert!((cubic_root_f(2.0).unwrap().value - 1.0).abs() < 1e-14);
        assert_eq!(cubic_root_f(0.0).unwrap().value, 0.0);
        assert!(rel(cubic_root_f(4.0).unwrap().value, 1.5127453266183286) < 1e-14);

        assert!((quartic_root_g_plus(4.0).unwrap().value - 1.0).abs() < 1e-14);
        assert!(rel(quartic_root_g_plus(2.25).unwrap().value, 0.7138865730523108) < 1e-14);

        assert!((quartic_root_g_minus(0.0).unwrap().value - 2f64.cbrt()).abs() < 1e-14);
        assert!(rel(quartic_root_g_minus(4.0).unwrap().value, 1.5747430738870216) < 1e-14);

        assert!(cubic_root_f(-1.0).is_err());
        assert!(quartic_root_g_plus(0.0).is_err());
        assert!(quartic_root_g_minus(-0.5).is_err());
    }

    #[test]
    fn root_residuals_stay_under_gate_across_scales() {
        for &y in &[0.0, 1e-8, 1e-3, 0.1, 1.0, 2.0, 4.0, 1e3, 1e6] {
            let gate = 1e-12 * (1.0 + y);
            assert!(cubic_root_f(y).unwrap().residual.abs() < gate, "F at {y}");
            assert!(quartic_root_g_minus(y).unwrap().residual.abs() < gate, "G₋ at {y}");
            if y > 0.0 {
                assert!(quartic_root_g_plus(y).unwrap().residual.abs() < gate, "G₊ at {y}");
            }
        }
    }

    #[test]
    fn root_asymptotics_bracket_the_exact_curves() {
        assert!(rel(cubic_root_f(1e-3).unwrap().value, asymptotics::cubic_root_small(1e-3)) < 1e-3);
        assert!(rel(cubic_root_f(1e6).unwrap().value, asymptotics::cubic_root_large(1e6)) < 1e-3);
        assert!(
            rel(quartic_root_g_plus(1e-4).unwrap().value, asymptotics::quartic_plus_small(1e-4))
                < 1e-3
        );
        assert!(
            rel(quartic_root_g_minus(1e-4).unwrap().value, asymptotics::quartic_minus_small(1e-4))
                < 1e-3
        );
        assert!(
            rel(quartic_root_g_plus(1e6).unwrap().value, asymptotics::quartic_large(1e6)) < 1e-3
        );
        assert!(
            rel(quartic_root_g_minus(1e6).unwrap().value, asymptotics::quartic_large(1e6)) < 1e-3
        );
    }

    #[test]
    fn kratzer_formulas() {
        let q00 = QuantumNumbers::new(0, 0);
        assert!(rel(kratzer_exact(0.5, 1.0, q00).unwrap(), -0.38196601125010515) < 1e-14);
        assert!(rel(kratzer_afm(0.5, 1.0, q00).unwrap(), -0.5) < 1e-15);

        // δ equals the difference of the two denominators −2ma²/E.
        for (m, a) in [(0.5, 1.0), (1.0, 2.0), (0.2, 0.7)] {
            for q in QuantumNumbers::window(3, 3) {
                let beta = 2.0 * m * a * a;
                let d_exact = -beta / kratzer_exact(m, a, q).unwrap();
                let d_afm = -beta / kratzer_afm(m, a, q).unwrap();
                let delta = kratzer_delta(m, a, q).unwrap();
                assert!(rel(d_afm - d_exact, delta) < 1e-12, "{q} at m={m}, a={a}");
            }
        }
        let far = QuantumNumbers::new(2, 400);
        assert!(
            rel(kratzer_delta(1.0, 1.0, far).unwrap(), kratzer_delta_limit(1.0, 1.0, far)) < 1e-2
        );
    }

    #[test]
    fn quad_centrifugal_values_and_gates() {
        let q00 = QuantumNumbers::new(0, 0);
        assert_eq!(quad_centrifugal_exact(0.0, Sign::Plus, q00).unwrap(), 3.0);
        assert_eq!(quad_centrifugal_afm(0.0, Sign::Plus, nv(1.5)).unwrap(), 3.0);
        assert!(
            rel(quad_centrifugal_exact(1.0, Sign::Plus, q00).unwrap(), 2.0 + 5f64.sqrt()) < 1e-15
        );
        assert!(
            rel(quad_centrifugal_afm(1.0, Sign::Plus, nv(1.5)).unwrap(), 2.0 * 3.25f64.sqrt())
                < 1e-15
        );

        assert!(matches!(
            quad_centrifugal_exact(0.3, Sign::Minus, q00),
            Err(Error::FallingToCenter(_))
        ));
        assert!(matches!(
            quad_centrifugal_afm(2.3, Sign::Minus, nv(1.5)),
            Err(Error::FallingToCenter(_))
        ));
        assert!(quad_centrifugal_exact(0.2, Sign::Minus, q00).is_ok());
    }

    #[test]
    fn reduced_family_anchor_energies() {
        assert!(rel(anharmonic_afm(1.0, nv(1.5)).unwrap(), 6.9690994355733357) < 1e-13);
        assert!(
            rel(
                quad_coulomb_afm(1.0, nv(1.5), Formulation::Epsilon).unwrap(),
                -0.44557435751718825
            ) < 1e-13
        );
        assert!(
            rel(funnel_afm(0.5, nv(1.0), Formulation::Epsilon).unwrap(), 0.26826727960826987)
                < 1e-13
        );
        assert!(
            rel(funnel_afm(0.5, nv(7.0), Formulation::Epsilon).unwrap(), 2.218328021058705) < 1e-13
        );
        assert!(anharmonic_afm(0.0, nv(1.0)).is_err());
    }

    #[test]
    fn sinh_path_equals_root_path() {
        for beta in [0.1, 0.5, 1.0, 2.0, 10.0] {
            for n in [1.0, 1.5, 2.5, 7.0] {
                let a = funnel_afm(beta, nv(n), Formulation::Epsilon).unwrap();
                let b = funnel_afm_sinh(beta, nv(n)).unwrap();
                assert!(rel(a, b) < 1e-13, "β={beta}, N={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn duality_identities_hold_for_closed_forms() {
        for beta in [0.1, 0.5, 1.0, 2.0, 10.0] {
            for n in [1.0, 1.5, 3.5] {
                let lhs = quad_coulomb_afm(beta, nv(n), Formulation::Epsilon).unwrap();
                let rhs = duality_factor(Family::QuadCoulomb, beta).unwrap()
                    * quad_coulomb_afm(1.0 / beta, nv(n), Formulation::Eta).unwrap();
                assert!(rel(lhs, rhs) < 1e-13, "qC β={beta}, N={n}");

                let lhs = funnel_afm(beta, nv(n), Formulation::Epsilon).unwrap();
                let rhs = duality_factor(Family::Funnel, beta).unwrap()
                    * funnel_afm(1.0 / beta, nv(n), Formulation::Eta).unwrap();
                assert!(rel(lhs, rhs) < 1e-13, "funnel β={beta}, N={n}");
            }
        }
    }

    #[test]
    fn family_asymptotics_spot_checks() {
        let n = 1.5;
        assert!(
            rel(anharmonic_afm(1e-4, nv(n)).unwrap(), asymptotics::anharmonic_small(1e-4, n))
                < 1e-3
        );
        assert!(
            rel(anharmonic_afm(1e4, nv(n)).unwrap(), asymptotics::anharmonic_large(1e4, n)) < 1e-2
        );
        assert!(
            rel(
                funnel_afm(1e4, nv(n), Formulation::Eta).unwrap(),
                asymptotics::funnel_large(1e4, n, Formulation::Eta)
            ) < 1e-2
        );
    }

    #[test]
    fn reduced_dispatch_matches_direct_calls() {
        let red = ReducedProblem::new(Family::Anharmonic, 2.0, Formulation::Epsilon).unwrap();
        assert_eq!(
            reduced_afm_energy(&red, nv(2.5)).unwrap(),
            anharmonic_afm(2.0, nv(2.5)).unwrap()
        );
        let red = ReducedProblem::new(Family::Kratzer, 1.0, Formulation::Epsilon).unwrap();
        assert!(rel(reduced_afm_energy(&red, nv(1.0)).unwrap(), -0.5) < 1e-15);
        assert!(
            rel(
                reduced_exact_energy(&red, QuantumNumbers::new(0, 0)).unwrap(),
                kratzer_exact(0.5, 1.0, QuantumNumbers::new(0, 0)).unwrap()
            ) < 1e-15
        );
    }
}
