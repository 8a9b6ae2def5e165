//! Generic auxiliary-field machinery.
//!
//! The method replaces V(r) by ν·P(r) + g(ν) with P(r) = sgn(η)·r^η, solves
//! the P-problem through its power-law spectrum e(x), and eliminates ν by
//! minimizing E_a(ν) = e(a + ν) + g(ν). Since dE_a/dν = e′(a+ν) − P(J(ν))
//! exactly (the J-dependent pieces of g cancel), the stationary point is found
//! on the mean-point axis: h(r) = e′(a + K(r)) − P(r) changes sign once on the
//! admissible set {r : a + K(r) > 0} for every potential handled here, and
//! ν₀ = K(r₀) at the sign change. Working in r instead of ν keeps one code
//! path for kernels of either sign (attractive 1/r² pieces drive ν₀ < 0).

use crate::error::{Error, Result};
use crate::potentials::{PotentialSpec, PowerTerm, QuantumNumbers, Sign};

/// Analytically solvable base P(r) = sgn(η)·r^η plus the fixed coefficient
/// `a` of the a·P(r) part of the Hamiltonian (`a = 0` for the plain method,
/// `a > 0` when part of the potential is kept out of the auxiliary field).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartingPotential {
    pub eta: f64,
    pub a: f64,
}

impl StartingPotential {
    pub fn new(eta: f64, a: f64) -> Result<Self> {
        if !eta.is_finite() || eta == 0.0 || eta <= -2.0 {
            return Err(Error::EngineDomain(format!(
                "start exponent must be finite, nonzero, and > −2, got {eta}"
            )));
        }
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::EngineDomain(format!("start coefficient must be ≥ 0, got {a}")));
        }
        Ok(StartingPotential { eta, a })
    }

    pub fn plain(eta: f64) -> Result<Self> {
        Self::new(eta, 0.0)
    }

    fn sign(&self) -> f64 {
        Sign::of(self.eta).value()
    }

    /// P(r) = sgn(η)·r^η.
    pub fn evaluate(&self, r: f64) -> f64 {
        self.sign() * r.powf(self.eta)
    }
}

/// Quantum-number combination N entering the power-law spectrum, N > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NValue(f64);

impl NValue {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::EngineDomain(format!("N must be > 0, got {value}")));
        }
        Ok(NValue(value))
    }

    /// N^(ho) = 2n + l + 3/2.
    pub fn harmonic(q: QuantumNumbers) -> NValue {
        NValue(2.0 * f64::from(q.n) + f64::from(q.l) + 1.5)
    }

    /// N^(C) = n + l + 1.
    pub fn coulomb(q: QuantumNumbers) -> NValue {
        NValue(f64::from(q.n) + f64::from(q.l) + 1.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Result of an auxiliary-field minimization.
/// `nu0` carries the sign of the kernel K = V′/P′ at the mean point; it is
/// negative whenever the residual interaction softens the start (e.g. a
/// repulsive 1/r² remainder over a Coulomb start).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfmSolution {
    pub nu0: f64,
    pub mean_point: f64,
    pub energy: f64,
    pub stationarity_residual: f64,
}

/// Eigenvalue of H = p²/2m + sgn(λ)·a·r^λ:
/// (2+λ)/(2λ) · (a|λ|)^{2/(λ+2)} · (N²/m)^{λ/(λ+2)}.
pub fn power_law_energy(m: f64, a: f64, lambda: f64, n: NValue) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::EngineDomain(format!("mass must be > 0, got {m}")));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::EngineDomain(format!("power-law coefficient must be > 0, got {a}")));
    }
    if !lambda.is_finite() || lambda == 0.0 || lambda <= -2.0 {
        return Err(Error::EngineDomain(format!(
            "power-law exponent must be in (−2, 0) ∪ (0, ∞), got {lambda}"
        )));
    }
    let nn = n.value() * n.value();
    Ok((2.0 + lambda) / (2.0 * lambda)
        * (a * lambda.abs()).powf(2.0 / (lambda + 2.0))
        * (nn / m).powf(lambda / (lambda + 2.0)))
}

/// W(x) = (N²/(m|η|x))^{1/(η+2)}, the radius with P(W) = e′(x).
fn w_radius(m: f64, x: f64, eta: f64, n: NValue) -> f64 {
    let nn = n.value() * n.value();
    (nn / (m * eta.abs() * x)).powf(1.0 / (eta + 2.0))
}

/// e′(x) = sgn(η)·W(x)^η for x > 0.
fn energy_slope(m: f64, x: f64, eta: f64, n: NValue) -> f64 {
    Sign::of(eta).value() * w_radius(m, x, eta, n).powf(eta)
}

/// K(r) = V′(r)/P′(r) = Σ s·c·(λ/|η|)·r^{λ−η} over the given terms.
fn kernel(terms: &[PowerTerm], eta: f64, r: f64) -> f64 {
    terms.iter().map(|t| t.sign.value() * t.coeff * (t.exp / eta.abs()) * r.powf(t.exp - eta)).sum()
}

fn terms_value(terms: &[PowerTerm], r: f64) -> f64 {
    terms.iter().map(|t| t.evaluate(r)).sum()
}

const LOG_R_LO: f64 = -40.0;
const LOG_R_HI: f64 = 40.0;
const SCAN_POINTS: usize = 641;

/// Sign-change brackets of `f` in log-radius, up to `max_needed` of them.
/// `admissible` masks points where `f` is undefined; a bracket never spans an
/// inadmissible gap. A crossing can hide in a sliver next to a gap edge,
/// narrower than the scan step (strong repulsive residuals pin it at relative
/// distance N²/(8mc) from the edge), so every gap edge is located by bisection
/// and probed geometrically before the scan moves on.
fn scan_brackets(
    f: &dyn Fn(f64) -> f64,
    admissible: &dyn Fn(f64) -> bool,
    max_needed: usize,
) -> Vec<(f64, f64)> {
    let step = (LOG_R_HI - LOG_R_LO) / (SCAN_POINTS - 1) as f64;
    let usable = |t: f64| {
        let r = t.exp();
        admissible(r) && f(r).is_finite()
    };
    let mut out = Vec::new();
    let mut prev_ok: Option<(f64, f64)> = None;
    let mut prev_t = f64::NAN;
    for i in 0..SCAN_POINTS {
        let t = LOG_R_LO + step * i as f64;
        if usable(t) {
            let v = f(t.exp());
            if let Some((tp, vp)) = prev_ok {
                if vp * v <= 0.0 && (vp != 0.0 || v != 0.0) {
                    out.push((tp, t));
                }
            } else if i > 0 {
                if let Some(b) = edge_bracket(f, &usable, prev_t, t) {
                    out.push(b);
                }
            }
            prev_ok = Some((t, v));
        } else {
            if let Some((tp, _)) = prev_ok {
                if let Some(b) = edge_bracket(f, &usable, t, tp) {
                    out.push(b);
                }
            }
            prev_ok = None;
        }
        if out.len() >= max_needed {
            return out;
        }
        prev_t = t;
    }
    out
}

/// Sign change pinned against the admissibility edge inside the cell
/// (`t_bad`, `t_good`), where only `t_good` is usable. Bisects the edge, then
/// probes geometrically toward it from `t_good`; None when the sign of
/// `t_good` holds all the way in.
fn edge_bracket(
    f: &dyn Fn(f64) -> f64,
    usable: &dyn Fn(f64) -> bool,
    t_bad: f64,
    t_good: f64,
) -> Option<(f64, f64)> {
    let (mut bad, mut good) = (t_bad, t_good);
    for _ in 0..80 {
        let mid = 0.5 * (bad + good);
        if usable(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let s_ref = f(t_good.exp()).signum();
    let mut outer = t_good;
    let mut frac = 0.5f64;
    for _ in 0..60 {
        let probe = good + (t_good - good) * frac;
        frac *= 0.5;
        if !usable(probe) {
            continue;
        }
        let v = f(probe.exp());
        if v == 0.0 || v.signum() != s_ref {
            return Some((outer.min(probe), outer.max(probe)));
        }
        outer = probe;
    }
    if usable(good) {
        let v = f(good.exp());
        if v == 0.0 || v.signum() != s_ref {
            return Some((outer.min(good), outer.max(good)));
        }
    }
    None
}

/// Bisect one bracket to log-radius width 1e−15 (relative r precision).
fn bisect_bracket(f: &dyn Fn(f64) -> f64, bracket: (f64, f64)) -> f64 {
    let (mut lo, mut hi) = bracket;
    let sign_lo = f(lo.exp()).signum();
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        let v = f(mid.exp());
        if v == 0.0 {
            return mid.exp();
        }
        if v.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() < 1e-15 {
            break;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// Invert K(r) = V′(r)/P′(r) at the value `nu`: the mean point J(ν).
/// For a single power term sgn-s·b·r^λ this is the closed form
/// (|η|ν/(sλb))^{1/(λ−η)}; otherwise the monotone kernel is bisected.
pub fn mean_point_j(v: &PotentialSpec, eta: f64, nu: f64) -> Result<f64> {
    StartingPotential::plain(eta)?;
    if !nu.is_finite() || nu == 0.0 {
        return Err(Error::EngineDomain(format!(
            "auxiliary field must be finite and nonzero, got {nu}"
        )));
    }
    if v.terms.iter().all(|t| t.exp == eta) {
        let c = kernel(&v.terms, eta, 1.0);
        return Err(Error::DegenerateKernel(format!(
            "V ∝ P: K(r) ≡ {c} for every r, J is undefined"
        )));
    }
    if v.terms.len() == 1 {
        let t = v.terms[0];
        let ratio = nu * eta.abs() / (t.sign.value() * t.exp * t.coeff);
        if ratio <= 0.0 {
            return Err(Error::InversionFailed(format!(
                "ν = {nu} is outside the range of K for this term"
            )));
        }
        return Ok(ratio.powf(1.0 / (t.exp - eta)));
    }
    let terms = v.terms.clone();
    let f = move |r: f64| kernel(&terms, eta, r) - nu;
    let brackets = scan_brackets(&f, &|_| true, 2);
    match brackets.len() {
        0 => Err(Error::InversionFailed(format!(
            "K(r) − ν has no sign change on the search bracket (ν = {nu})"
        ))),
        1 => Ok(bisect_bracket(&f, brackets[0])),
        _ => Err(Error::InversionFailed("K(r) is not monotone on the search bracket".into())),
    }
}

/// V_res = V − a·P: the part of the potential handled through the auxiliary
/// field. `start.a` must be backed by an r^η term actually present in V.
fn residual_terms(v: &PotentialSpec, start: &StartingPotential) -> Result<Vec<PowerTerm>> {
    if start.a == 0.0 {
        return Ok(v.terms.clone());
    }
    let idx = v.terms.iter().position(|t| t.exp == start.eta).ok_or_else(|| {
        Error::EngineDomain(format!(
            "start.a = {} but V has no r^{} term to carry it",
            start.a, start.eta
        ))
    })?;
    let mut out: Vec<PowerTerm> =
        v.terms.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, t)| *t).collect();
    let t = v.terms[idx];
    let signed = t.sign.value() * t.coeff - start.a * start.sign();
    if signed.abs() > 1e-12 * t.coeff.max(start.a).max(1.0) {
        out.push(PowerTerm::new(
            if signed > 0.0 { Sign::Plus } else { Sign::Minus },
            signed.abs(),
            start.eta,
        )?);
    }
    Ok(out)
}

fn solve_terms(
    terms: &[PowerTerm],
    start: &StartingPotential,
    n: NValue,
    m: f64,
) -> Result<AfmSolution> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::EngineDomain(format!("mass must be > 0, got {m}")));
    }
    let eta = start.eta;
    let exact = |nu0: f64| -> Result<AfmSolution> {
        let x = start.a + nu0;
        if x <= 0.0 {
            return Err(Error::NoMinimum(format!(
                "effective start coefficient a + ν₀ = {x} is not positive"
            )));
        }
        Ok(AfmSolution {
            nu0,
            mean_point: w_radius(m, x, eta, n),
            energy: power_law_energy(m, x, eta, n)?,
            stationarity_residual: 0.0,
        })
    };
    // V_res ∝ P (or vanishes): the field is a constant and the result exact.
    if terms.is_empty() {
        return exact(0.0);
    }
    if terms.iter().all(|t| t.exp == eta) {
        return exact(kernel(terms, eta, 1.0));
    }

    let owned = terms.to_vec();
    let h = {
        let owned = owned.clone();
        move |r: f64| energy_slope(m, start.a + kernel(&owned, eta, r), eta, n) - start.evaluate(r)
    };
    let admissible = {
        let owned = owned.clone();
        move |r: f64| {
            let x = start.a + kernel(&owned, eta, r);
            x.is_finite() && x > 0.0
        }
    };
    let brackets = scan_brackets(&h, &admissible, 1);
    let r0 = match brackets.first() {
        Some(b) => bisect_bracket(&h, *b),
        None => {
            return Err(Error::NoMinimum(
                "E′(ν) has no admissible sign change; the potential/start pairing leaves no bound minimum"
                    .into(),
            ))
        }
    };

    let nu0 = kernel(&owned, eta, r0);
    let x = start.a + nu0;
    let energy =
        power_law_energy(m, x, eta, n)? + terms_value(&owned, r0) - nu0 * start.evaluate(r0);
    let residual = (energy_slope(m, x, eta, n) - start.evaluate(r0)).abs();
    if residual >= 1e-9 * energy.abs().max(1.0) {
        return Err(Error::Convergence(format!(
            "stationarity residual {residual:.3e} exceeds gate at r₀ = {r0:.6e}"
        )));
    }
    Ok(AfmSolution { nu0, mean_point: r0, energy, stationarity_residual: residual })
}

/// Minimize E_a(ν) = e(a+ν) + g(ν) for the full potential `v` (which contains
/// the a·P part when `start.a > 0`). The `m` argument governs the kinetic
/// term; `v.mass` is not consulted.
pub fn solve(
    v: &PotentialSpec,
    start: &StartingPotential,
    n: NValue,
    m: f64,
) -> Result<AfmSolution> {
    let residual = residual_terms(v, start)?;
    solve_terms(&residual, start, n, m)
}

/// First-order energy e(a) + σ·v(J(ν₀)) for H = p²/2m + a·P + σ·v(r),
/// with ν₀ taken from the full minimization. Agrees with `solve` to O(σ²).
pub fn perturbative_energy(
    v_small: &PotentialSpec,
    sigma: f64,
    start: &StartingPotential,
    n: NValue,
    m: f64,
) -> Result<f64> {
    if start.a <= 0.0 {
        return Err(Error::EngineDomain(
            "perturbative evaluation needs a fixed start part, start.a > 0".into(),
        ));
    }
    if !sigma.is_finite() {
        return Err(Error::EngineDomain(format!("sigma must be finite, got {sigma}")));
    }
    let base = power_law_energy(m, start.a, start.eta, n)?;
    if sigma == 0.0 {
        return Ok(base);
    }
    let scaled: Vec<PowerTerm> = v_small
        .terms
        .iter()
        .map(|t| {
            let flip = sigma < 0.0;
            PowerTerm::new(
                match (t.sign, flip) {
                    (s, false) => s,
                    (Sign::Plus, true) => Sign::Minus,
                    (Sign::Minus, true) => Sign::Plus,
                },
                sigma.abs() * t.coeff,
                t.exp,
            )
        })
        .collect::<Result<_>>()?;
    let sol = solve_terms(&scaled, start, n, m)?;
    Ok(base + sigma * terms_value(&v_small.terms, sol.mean_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Formulation;
    use crate::potentials::{Family, ReducedProblem};

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / x.abs().max(y.abs()).max(1.0)
    }

    #[test]
    fn power_law_energy_matches_solvable_cases() {
        // V = a·r²: E = √(2a/m)·N.
        let ho = power_law_energy(1.0, 0.5, 2.0, NValue::new(1.5).unwrap()).unwrap();
        assert!(rel(ho, 1.5) < 1e-15);
        // V = −a/r: E = −m a²/(2N²).
        let hy = power_law_energy(1.0, 1.0, -1.0, NValue::new(1.0).unwrap()).unwrap();
        assert!(rel(hy, -0.5) < 1e-15);
        // V = r with the calibrated ground-state N = √3π/4.
        let n = NValue::new(3f64.sqrt() * std::f64::consts::PI / 4.0).unwrap();
        let lin = power_law_energy(1.0, 1.0, 1.0, n).unwrap();
        assert!(rel(lin, 1.8415842761764333) < 1e-14);

        assert!(power_law_energy(1.0, 1.0, 0.0, NValue::new(1.0).unwrap()).is_err());
        assert!(power_law_energy(1.0, 1.0, -2.0, NValue::new(1.0).unwrap()).is_err());
        assert!(power_law_energy(1.0, 0.0, 1.0, NValue::new(1.0).unwrap()).is_err());
    }

    #[test]
    fn mean_point_closed_forms() {
        // V = b·r, η=−1: J = (ν/b)^{1/2}.
        let v = PotentialSpec::pure_power(1.0, Sign::Plus, 2.0, 1.0).unwrap();
        assert!(rel(mean_point_j(&v, -1.0, 3.0).unwrap(), (1.5f64).sqrt()) < 1e-14);
        // V = −b/r, η=2: J = (b/2ν)^{1/3}.
        let v = PotentialSpec::pure_power(1.0, Sign::Minus, 3.0, -1.0).unwrap();
        assert!(rel(mean_point_j(&v, 2.0, 0.5).unwrap(), 3f64.powf(1.0 / 3.0)) < 1e-14);
        // Repulsive 1/r² over η=−1 inverts at negative ν: J = −2a²/ν.
        let v = PotentialSpec::pure_power(1.0, Sign::Plus, 1.0, -2.0).unwrap();
        assert!(rel(mean_point_j(&v, -1.0, -0.5).unwrap(), 4.0) < 1e-14);
        assert!(mean_point_j(&v, -1.0, 0.5).is_err());
        // V ∝ P is degenerate.
        let v = PotentialSpec::pure_power(1.0, Sign::Plus, 1.0, 2.0).unwrap();
        assert!(matches!(mean_point_j(&v, 2.0, 1.0), Err(Error::DegenerateKernel(_))));
    }

    #[test]
    fn mean_point_bisection_matches_two_term_closed_form() {
        // Funnel a·r − b/r over η=−1: K(r) = a·r² + b, so J(ν) = √((ν−b)/a).
        let v = PotentialSpec::funnel(1.0, 2.0, 3.0).unwrap();
        let j = mean_point_j(&v, -1.0, 11.0).unwrap();
        assert!(rel(j, 2.0) < 1e-12, "J = {j}");
    }

    #[test]
    fn degenerate_start_is_exact() {
        let v = PotentialSpec::pure_power(1.0, Sign::Plus, 3.0, 2.0).unwrap();
        let start = StartingPotential::plain(2.0).unwrap();
        let n = NValue::new(1.5).unwrap();
        let sol = solve(&v, &start, n, 1.0).unwrap();
        assert_eq!(sol.nu0, 3.0);
        assert_eq!(sol.stationarity_residual, 0.0);
        assert!(rel(sol.energy, power_law_energy(1.0, 3.0, 2.0, n).unwrap()) < 1e-15);
        // Mean point satisfies P(J) = e′(ν₀).
        assert!(rel(sol.mean_point, w_radius(1.0, 3.0, 2.0, n)) < 1e-15);
    }

    #[test]
    fn kratzer_solve_plain_and_extended_agree() {
        // m=1/2, a=1, N=1: energy −2ma²/(2ma²+N²) = −1/2 either way.
        let v = PotentialSpec::kratzer(0.5, 1.0).unwrap();
        let n = NValue::new(1.0).unwrap();
        let plain = solve(&v, &StartingPotential::plain(-1.0).unwrap(), n, 0.5).unwrap();
        assert!(rel(plain.energy, -0.5) < 1e-11, "plain {}", plain.energy);
        assert!(rel(plain.nu0, 1.0) < 1e-10);
        assert!(rel(plain.mean_point, 2.0) < 1e-10);

        let ext = solve(&v, &StartingPotential::new(-1.0, 2.0).unwrap(), n, 0.5).unwrap();
        assert!(rel(ext.energy, -0.5) < 1e-11, "extended {}", ext.energy);
        assert!(rel(ext.nu0, -1.0) < 1e-10, "ν₀ = {}", ext.nu0);
        assert!(rel(ext.mean_point, 2.0) < 1e-10);
    }

    #[test]
    fn funnel_reduced_anchor_energy() {
        let red = ReducedProblem::new(Family::Funnel, 0.5, Formulation::Epsilon).unwrap();
        let spec = red.embed().unwrap();
        let start = StartingPotential::plain(-1.0).unwrap();
        let sol = solve(&spec, &start, NValue::new(1.0).unwrap(), spec.mass).unwrap();
        assert!(
            rel(sol.energy, 0.26826727960826987) < 1e-10,
            "funnel β=0.5 ground: {}",
            sol.energy
        );
    }

    #[test]
    fn switching_between_starts_changes_nothing_but_nu() {
        let red = ReducedProblem::new(Family::QuadCoulomb, 1.0, Formulation::Epsilon).unwrap();
        let spec = red.embed().unwrap();
        for q in QuantumNumbers::window(2, 2) {
            let n = NValue::harmonic(q);
            let a = solve(&spec, &StartingPotential::plain(2.0).unwrap(), n, spec.mass).unwrap();
            let b = solve(&spec, &StartingPotential::plain(-1.0).unwrap(), n, spec.mass).unwrap();
            assert!(rel(a.energy, b.energy) < 1e-10, "{q}: {} vs {}", a.energy, b.energy);
        }
    }

    #[test]
    fn mean_point_identity_for_power_law_base() {
        // |η|(a+ν₀)·J^{η+2} = N²/m at any solution.
        let cases = [
            (PotentialSpec::funnel(1.5, 1.0 / 3.0, 0.5).unwrap(), -1.0, 0.0, 1.5),
            (PotentialSpec::anharmonic(2.0, 3.0, 4.0).unwrap(), 2.0, 0.0, 2.0),
            (PotentialSpec::kratzer(0.5, 1.0).unwrap(), -1.0, 2.0, 0.5),
        ];
        for (spec, eta, a, m) in cases {
            let n = NValue::new(2.5).unwrap();
            let start = StartingPotential::new(eta, a).unwrap();
            let sol = solve(&spec, &start, n, m).unwrap();
            let lhs = eta.abs() * (a + sol.nu0) * sol.mean_point.powf(eta + 2.0);
            let rhs = n.value() * n.value() / m;
            assert!(rel(lhs, rhs) < 1e-10, "η={eta}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn perturbative_energy_tracks_solve_to_second_order() {
        let n = NValue::new(1.5).unwrap();
        let start = StartingPotential::new(2.0, 1.0).unwrap();
        let base = power_law_energy(0.5, 1.0, 2.0, n).unwrap();
        let v = PotentialSpec::pure_power(0.5, Sign::Plus, 1.0, 1.0).unwrap();
        assert_eq!(perturbative_energy(&v, 0.0, &start, n, 0.5).unwrap(), base);

        let sigma = 1e-3;
        let full = PotentialSpec::anharmonic(0.5, 1.0, sigma / 2.0).unwrap();
        let exact = solve(&full, &start, n, 0.5).unwrap().energy;
        let pert = perturbative_energy(&v, sigma, &start, n, 0.5).unwrap();
        assert!((exact - pert).abs() < 20.0 * sigma * sigma, "gap {}", exact - pert);
        assert!((exact - pert).abs() > 0.0);
    }

    #[test]
    fn missing_start_term_is_rejected() {
        let v = PotentialSpec::funnel(1.0, 1.0, 1.0).unwrap();
        let start = StartingPotential::new(2.0, 0.5).unwrap();
        assert!(matches!(
            solve(&v, &start, NValue::new(1.0).unwrap(), 1.0),
            Err(Error::EngineDomain(_))
        ));
    }

    #[test]
    fn unbound_pairing_reports_no_minimum() {
        // Pure repulsive 1/r² over a Coulomb start never balances.
        let v = PotentialSpec::pure_power(1.0, Sign::Plus, 1.0, -2.0).unwrap();
        let start = StartingPotential::plain(-1.0).unwrap();
        assert!(matches!(
            solve(&v, &start, NValue::new(1.0).unwrap(), 1.0),
            Err(Error::NoMinimum(_))
        ));
    }
}
