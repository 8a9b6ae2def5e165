//! Power-law potential descriptions and their dimensionless reductions.
//!
//! A potential is a sum of one or two signed power terms acting on a particle
//! of reduced mass `m` (units with ħ = 1). The five named families carry exact
//! scaling reductions to a single control parameter β, so every spectrum needs
//! to be computed only once per β and rescaled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Overall sign of a power term. Stored explicitly instead of being derived
/// from the exponent: the repulsive 1/r² piece of the Kratzer and centrifugal
/// potentials has a positive sign with a negative exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Sign convention of a starting-potential exponent: sgn(η).
    pub fn of(x: f64) -> Sign {
        if x >= 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

/// Potential family. The five named families have closed-form AFM energies and
/// a defined β-reduction; `PurePower`/`TwoPower` cover everything else the
/// generic engine can handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PurePower,
    TwoPower,
    /// a²/r² − 2a/r
    Kratzer,
    /// ar² ± b/r²
    QuadCentrifugal,
    /// ar² + 2br
    Anharmonic,
    /// ar² − b/r
    QuadCoulomb,
    /// ar − b/r
    Funnel,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PurePower => "pure-power",
            Family::TwoPower => "two-power",
            Family::Kratzer => "kratzer",
            Family::QuadCentrifugal => "quad-centrifugal",
            Family::Anharmonic => "anharmonic",
            Family::QuadCoulomb => "quad-coulomb",
            Family::Funnel => "funnel",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure-power" => Ok(Family::PurePower),
            "two-power" => Ok(Family::TwoPower),
            "kratzer" => Ok(Family::Kratzer),
            "quad-centrifugal" => Ok(Family::QuadCentrifugal),
            "anharmonic" => Ok(Family::Anharmonic),
            "quad-coulomb" => Ok(Family::QuadCoulomb),
            "funnel" => Ok(Family::Funnel),
            other => Err(Error::PotentialDomain(format!("unknown family {other:?}"))),
        }
    }
}

/// One term sign·coeff·r^exp. `coeff` > 0; the sign lives in `sign`.
/// Exponents below −2 have no bound spectrum and are rejected; −2 itself is
/// admitted (attractive r⁻² strength is gated per l sector by the solver).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coeff: f64,
    pub exp: f64,
    pub sign: Sign,
}

impl PowerTerm {
    pub fn new(sign: Sign, coeff: f64, exp: f64) -> Result<Self> {
        if !(coeff.is_finite() && coeff > 0.0) {
            return Err(Error::PotentialDomain(format!(
                "term coefficient must be positive and finite, got {coeff}"
            )));
        }
        if !exp.is_finite() || exp == 0.0 {
            return Err(Error::PotentialDomain(format!(
                "term exponent must be finite and nonzero, got {exp}"
            )));
        }
        if exp < -2.0 {
            return Err(Error::PotentialDomain(format!("term exponent must be ≥ −2, got {exp}")));
        }
        Ok(PowerTerm { coeff, exp, sign })
    }

    pub fn evaluate(&self, r: f64) -> f64 {
        self.sign.value() * self.coeff * r.powf(self.exp)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.sign.value() * self.coeff * self.exp * r.powf(self.exp - 1.0)
    }
}

/// A radial potential V(r) = Σ sign·coeff·r^exp with the particle's reduced mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub family: Family,
    pub terms: Vec<PowerTerm>,
    pub mass: f64,
}

// Deserialization funnels through `new` so JSON input cannot bypass the
// family-consistency checks.
impl<'de> Deserialize<'de> for PotentialSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            family: Family,
            terms: Vec<PowerTerm>,
            mass: f64,
        }
        let raw = Raw::deserialize(d)?;
        PotentialSpec::new(raw.family, raw.terms, raw.mass).map_err(serde::de::Error::custom)
    }
}

impl PotentialSpec {
    pub fn new(family: Family, terms: Vec<PowerTerm>, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::PotentialDomain(format!(
                "mass must be positive and finite, got {mass}"
            )));
        }
        if terms.is_empty() || terms.len() > 2 {
            return Err(Error::PotentialDomain(format!(
                "a potential has 1 or 2 terms, got {}",
                terms.len()
            )));
        }
        for t in &terms {
            // Re-run the term checks: deserialized terms bypass PowerTerm::new.
            PowerTerm::new(t.sign, t.coeff, t.exp)?;
        }
        let spec = PotentialSpec { family, terms, mass };
        spec.check_family()?;
        Ok(spec)
    }

    fn check_family(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::FamilyMismatch(msg));
        let require = |cond: bool, msg: &str| {
            if cond {
                Ok(())
            } else {
                fail(format!("{}: {msg}", self.family))
            }
        };
        match self.family {
            Family::PurePower => require(self.terms.len() == 1, "expects exactly one term"),
            Family::TwoPower => {
                require(self.terms.len() == 2, "expects exactly two terms")?;
                require(self.terms[0].exp != self.terms[1].exp, "exponents must differ")
            }
            Family::Kratzer => {
                let sq = self.find_term(-2.0, Sign::Plus);
                let cl = self.find_term(-1.0, Sign::Minus);
                match (sq, cl) {
                    (Some(sq), Some(cl)) => {
                        let a = cl.coeff / 2.0;
                        let want = a * a;
                        require(
                            (sq.coeff - want).abs() <= 1e-12 * want.max(1.0),
                            "terms must be a²/r² − 2a/r for a single a",
                        )
                    }
                    _ => fail(format!("{}: expects +coeff·r⁻² and −coeff·r⁻¹ terms", self.family)),
                }
            }
            Family::QuadCentrifugal => {
                let quad = self.find_term(2.0, Sign::Plus);
                require(quad.is_some(), "expects a +a·r² term")?;
                match self.terms.len() {
                    1 => Ok(()),
                    _ => require(
                        self.terms.iter().any(|t| t.exp == -2.0),
                        "second term must be ±b/r²",
                    ),
                }
            }
            Family::Anharmonic => require(
                self.find_term(2.0, Sign::Plus).is_some()
                    && self.find_term(1.0, Sign::Plus).is_some()
                    && self.terms.len() == 2,
                "expects +a·r² and +2b·r terms",
            ),
            Family::QuadCoulomb => require(
                self.find_term(2.0, Sign::Plus).is_some()
                    && self.find_term(-1.0, Sign::Minus).is_some()
                    && self.terms.len() == 2,
                "expects +a·r² and −b/r terms",
            ),
            Family::Funnel => require(
                self.find_term(1.0, Sign::Plus).is_some()
                    && self.find_term(-1.0, Sign::Minus).is_some()
                    && self.terms.len() == 2,
                "expects +a·r and −b/r terms",
            ),
        }
    }

    pub fn pure_power(mass: f64, sign: Sign, coeff: f64, exp: f64) -> Result<Self> {
        Self::new(Family::PurePower, vec![PowerTerm::new(sign, coeff, exp)?], mass)
    }

    pub fn two_power(mass: f64, first: PowerTerm, second: PowerTerm) -> Result<Self> {
        Self::new(Family::TwoPower, vec![first, second], mass)
    }

    /// V(r) = a²/r² − 2a/r.
    pub fn kratzer(mass: f64, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::PotentialDomain(format!("kratzer a must be > 0, got {a}")));
        }
        Self::new(
            Family::Kratzer,
            vec![
                PowerTerm::new(Sign::Plus, a * a, -2.0)?,
                PowerTerm::new(Sign::Minus, 2.0 * a, -1.0)?,
            ],
            mass,
        )
    }

    /// V(r) = a·r² ± b/r²; `b = 0` drops the centrifugal-like term.
    pub fn quad_centrifugal(mass: f64, a: f64, b: f64, sign: Sign) -> Result<Self> {
        let mut terms = vec![PowerTerm::new(Sign::Plus, a, 2.0)?];
        if b < 0.0 || !b.is_finite() {
            return Err(Error::PotentialDomain(format!("quad-centrifugal b must be ≥ 0, got {b}")));
        }
        if b > 0.0 {
            terms.push(PowerTerm::new(sign, b, -2.0)?);
        }
        Self::new(Family::QuadCentrifugal, terms, mass)
    }

    /// V(r) = a·r² + 2b·r (the linear coefficient is stored as 2b).
    pub fn anharmonic(mass: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(
            Family::Anharmonic,
            vec![PowerTerm::new(Sign::Plus, a, 2.0)?, PowerTerm::new(Sign::Plus, 2.0 * b, 1.0)?],
            mass,
        )
    }

    /// V(r) = a·r² − b/r.
    pub fn quad_coulomb(mass: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(
            Family::QuadCoulomb,
            vec![PowerTerm::new(Sign::Plus, a, 2.0)?, PowerTerm::new(Sign::Minus, b, -1.0)?],
            mass,
        )
    }

    /// V(r) = a·r − b/r.
    pub fn funnel(mass: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(
            Family::Funnel,
            vec![PowerTerm::new(Sign::Plus, a, 1.0)?, PowerTerm::new(Sign::Minus, b, -1.0)?],
            mass,
        )
    }

    pub fn find_term(&self, exp: f64, sign: Sign) -> Option<&PowerTerm> {
        self.terms.iter().find(|t| t.exp == exp && t.sign == sign)
    }

    fn coeff_of(&self, exp: f64) -> Option<f64> {
        self.terms.iter().find(|t| t.exp == exp).map(|t| t.coeff)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("potential spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::PotentialDomain(format!("potential JSON: {e}")))
    }
}

/// V(r) for r > 0.
pub fn evaluate(spec: &PotentialSpec, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::PotentialDomain(format!("r must be > 0, got {r}")));
    }
    Ok(spec.terms.iter().map(|t| t.evaluate(r)).sum())
}

/// V′(r) for r > 0.
pub fn derivative(spec: &PotentialSpec, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::PotentialDomain(format!("r must be > 0, got {r}")));
    }
    Ok(spec.terms.iter().map(|t| t.derivative(r)).sum())
}

/// Which term of a two-scale family carries the control parameter β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formulation {
    Epsilon,
    Eta,
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Formulation::Epsilon => "epsilon",
            Formulation::Eta => "eta",
        })
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(Formulation::Epsilon),
            "eta" => Ok(Formulation::Eta),
            other => Err(Error::PotentialDomain(format!("unknown formulation {other:?}"))),
        }
    }
}

/// Radial quantum numbers (n radial, l orbital).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }

    /// The 4×4 window n, l ∈ 0..=3 used by the calibration measure.
    pub fn window(n_max: u32, l_max: u32) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for l in 0..=l_max {
            for n in 0..=n_max {
                out.push(QuantumNumbers::new(n, l));
            }
        }
        out
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// Dimensionless one-parameter problem obtained from a named family by the
/// exact scaling reduction: E(m, a, b; n, l) = scale · ε(β; n, l).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedProblem {
    pub family: Family,
    pub beta: f64,
    pub formulation: Formulation,
    /// Sign of the r⁻² term; meaningful only for QuadCentrifugal.
    pub centrifugal_sign: Sign,
}

impl ReducedProblem {
    pub fn new(family: Family, beta: f64, formulation: Formulation) -> Result<Self> {
        Self::with_sign(family, beta, formulation, Sign::Plus)
    }

    pub fn with_sign(
        family: Family,
        beta: f64,
        formulation: Formulation,
        centrifugal_sign: Sign,
    ) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::PotentialDomain(format!("beta must be ≥ 0, got {beta}")));
        }
        match family {
            Family::PurePower | Family::TwoPower => {
                return Err(Error::UnsupportedReduction(format!("{family} has no β-reduction")));
            }
            Family::QuadCoulomb | Family::Funnel => {}
            _ => {
                if formulation == Formulation::Eta {
                    return Err(Error::UnsupportedReduction(format!(
                        "{family} has only the epsilon form"
                    )));
                }
            }
        }
        Ok(ReducedProblem { family, beta, formulation, centrifugal_sign })
    }

    /// Materialize the canonical reduced Hamiltonian as a PotentialSpec.
    /// `reduce(embed(p))` returns β and scale = 1 exactly.
    pub fn embed(&self) -> Result<PotentialSpec> {
        let beta = self.beta;
        let positive = |family: Family| {
            if beta > 0.0 {
                Ok(())
            } else {
                Err(Error::PotentialDomain(format!(
                    "{family} reduced problem needs β > 0 to embed"
                )))
            }
        };
        match (self.family, self.formulation) {
            (Family::Kratzer, _) => {
                positive(Family::Kratzer)?;
                PotentialSpec::kratzer(beta / 2.0, 1.0)
            }
            (Family::QuadCentrifugal, _) => {
                PotentialSpec::quad_centrifugal(0.5, 1.0, beta, self.centrifugal_sign)
            }
            (Family::Anharmonic, _) => {
                positive(Family::Anharmonic)?;
                PotentialSpec::anharmonic(2.0, 3.0, 4.0 * beta.sqrt())
            }
            (Family::QuadCoulomb, Formulation::Epsilon) => {
                positive(Family::QuadCoulomb)?;
                PotentialSpec::quad_coulomb(8.0 / 3.0, 0.25, beta.powf(1.5))
            }
            (Family::QuadCoulomb, Formulation::Eta) => {
                positive(Family::QuadCoulomb)?;
                PotentialSpec::quad_coulomb(8.0 / 3.0, beta.powi(6), std::f64::consts::SQRT_2)
            }
            (Family::Funnel, Formulation::Epsilon) => {
                positive(Family::Funnel)?;
                PotentialSpec::funnel(1.5, 1.0 / 3.0, beta.powf(4.0 / 3.0))
            }
            (Family::Funnel, Formulation::Eta) => {
                positive(Family::Funnel)?;
                PotentialSpec::funnel(1.5, beta.powi(4), 3f64.powf(1.0 / 3.0))
            }
            (f, _) => Err(Error::UnsupportedReduction(format!("{f} has no β-reduction"))),
        }
    }
}

/// Reduce a named-family potential to its dimensionless problem.
/// Returns the reduced problem and the energy scale with
/// E(m, a, b; n, l) = scale · ε(β; n, l).
pub fn reduce(spec: &PotentialSpec, formulation: Formulation) -> Result<(ReducedProblem, f64)> {
    let m = spec.mass;
    let need = |exp: f64| {
        spec.coeff_of(exp)
            .ok_or_else(|| Error::FamilyMismatch(format!("{} lacks the r^{exp} term", spec.family)))
    };
    match spec.family {
        Family::PurePower | Family::TwoPower => {
            Err(Error::UnsupportedReduction(format!("{} has no β-reduction", spec.family)))
        }
        Family::Kratzer => {
            if formulation == Formulation::Eta {
                return Err(Error::UnsupportedReduction(
                    "kratzer has only the epsilon form".into(),
                ));
            }
            // E depends on (m, a) only through 2ma²; the reference problem is
            // the unit-strength Kratzer at mass β/2, and the scale is exactly 1.
            let a = need(-1.0)? / 2.0;
            let beta = 2.0 * m * a * a;
            Ok((ReducedProblem::new(Family::Kratzer, beta, formulation)?, 1.0))
        }
        Family::QuadCentrifugal => {
            if formulation == Formulation::Eta {
                return Err(Error::UnsupportedReduction(
                    "quad-centrifugal has only the epsilon form".into(),
                ));
            }
            let a = need(2.0)?;
            let (b, sign) = match spec.terms.iter().find(|t| t.exp == -2.0) {
                Some(t) => (t.coeff, t.sign),
                None => (0.0, Sign::Plus),
            };
            let beta = 2.0 * m * b;
            let scale = (a / (2.0 * m)).sqrt();
            Ok((
                ReducedProblem::with_sign(Family::QuadCentrifugal, beta, formulation, sign)?,
                scale,
            ))
        }
        Family::Anharmonic => {
            if formulation == Formulation::Eta {
                return Err(Error::UnsupportedReduction(
                    "anharmonic has only the epsilon form".into(),
                ));
            }
            let a = need(2.0)?;
            let b = need(1.0)? / 2.0;
            let beta = (3.0 * b * b / 16.0) * (3.0 * m / (2.0 * a.powi(3))).sqrt();
            let scale = (2.0 * a / (3.0 * m)).sqrt();
            Ok((ReducedProblem::new(Family::Anharmonic, beta, formulation)?, scale))
        }
        Family::QuadCoulomb => {
            let a = need(2.0)?;
            let b = need(-1.0)?;
            match formulation {
                Formulation::Epsilon => {
                    let beta = 0.25 * (54.0 * m.powi(3) * b.powi(4) / a).powf(1.0 / 6.0);
                    let scale = 4.0 * (2.0 * a / (3.0 * m)).sqrt();
                    Ok((ReducedProblem::new(Family::QuadCoulomb, beta, formulation)?, scale))
                }
                Formulation::Eta => {
                    let beta = 4.0 * (a / (54.0 * m.powi(3) * b.powi(4))).powf(1.0 / 6.0);
                    let scale = 3.0 * m * b * b / 16.0;
                    Ok((ReducedProblem::new(Family::QuadCoulomb, beta, formulation)?, scale))
                }
            }
        }
        Family::Funnel => {
            let a = need(1.0)?;
            let b = need(-1.0)?;
            match formulation {
                Formulation::Epsilon => {
                    let beta = (4.0 * m * m * b.powi(3) / (27.0 * a)).powf(0.25);
                    let scale = 3.0 * (a * a / (2.0 * m)).powf(1.0 / 3.0);
                    Ok((ReducedProblem::new(Family::Funnel, beta, formulation)?, scale))
                }
                Formulation::Eta => {
                    let beta = (27.0 * a / (4.0 * m * m * b.powi(3))).powf(0.25);
                    let scale = 2.0 * m * b * b / 3f64.powf(5.0 / 3.0);
                    Ok((ReducedProblem::new(Family::Funnel, beta, formulation)?, scale))
                }
            }
        }
    }
}

/// Scaling law for energies: given E_ref = E(m_ref, m·g/(m_ref·a²), 1),
/// returns E(m, g, a) = (m_ref·a²/m)·E_ref. `a` is the inverse length scale
/// of the argument transformation V(r) = g·v(a·r).
pub fn scale_energy(e_ref: f64, m: f64, _g: f64, a: f64, m_ref: f64) -> Result<f64> {
    for (name, v) in [("m", m), ("a", a), ("m_ref", m_ref)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::PotentialDomain(format!("{name} must be > 0, got {v}")));
        }
    }
    Ok((m_ref * a * a / m) * e_ref)
}

/// Coupling of the unit-scale reference problem in the scaling law:
/// E(m, g, a) = (m_ref·a²/m) · E(m_ref, scaled_coupling(m, g, a, m_ref), 1).
pub fn scaled_coupling(m: f64, g: f64, a: f64, m_ref: f64) -> f64 {
    m * g / (m_ref * a * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
    }

    #[test]
    fn evaluate_sums_terms() {
        let kr = PotentialSpec::kratzer(0.5, 1.0).unwrap();
        assert_eq!(evaluate(&kr, 1.0).unwrap(), -1.0);
        let fun = PotentialSpec::funnel(1.0, 1.0, 1.0).unwrap();
        assert_eq!(evaluate(&fun, 2.0).unwrap(), 1.5);
        let pp = PotentialSpec::pure_power(1.0, Sign::Plus, 3.0, 2.0).unwrap();
        assert_eq!(evaluate(&pp, 2.0).unwrap(), 12.0);
        assert!(evaluate(&pp, 0.0).is_err());
        assert!(evaluate(&pp, -1.0).is_err());
    }

    #[test]
    fn funnel_reduction_matches_closed_scale() {
        // (4m²b³/27a)^{1/4} = 0.5 exactly for m=1, a=1, b=3/4.
        let spec = PotentialSpec::funnel(1.0, 1.0, 0.75).unwrap();
        let (red, scale) = reduce(&spec, Formulation::Epsilon).unwrap();
        assert_eq!(red.beta, 0.5);
        assert!(close(scale, 3.0 * (0.5f64).powf(1.0 / 3.0), 1e-15));
    }

    #[test]
    fn quad_centrifugal_without_second_term_reduces_to_beta_zero() {
        let spec = PotentialSpec::quad_centrifugal(0.7, 1.3, 0.0, Sign::Plus).unwrap();
        let (red, scale) = reduce(&spec, Formulation::Epsilon).unwrap();
        assert_eq!(red.beta, 0.0);
        assert!(close(scale, (1.3 / 1.4f64).sqrt(), 1e-15));
    }

    #[test]
    fn reduce_embed_round_trips_beta() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let beta = rng.gen_range(0.05..8.0);
            for (family, formulation) in [
                (Family::Kratzer, Formulation::Epsilon),
                (Family::QuadCentrifugal, Formulation::Epsilon),
                (Family::Anharmonic, Formulation::Epsilon),
                (Family::QuadCoulomb, Formulation::Epsilon),
                (Family::QuadCoulomb, Formulation::Eta),
                (Family::Funnel, Formulation::Epsilon),
                (Family::Funnel, Formulation::Eta),
            ] {
                let red = ReducedProblem::new(family, beta, formulation).unwrap();
                let spec = red.embed().unwrap();
                let (red2, scale) = reduce(&spec, formulation).unwrap();
                assert!(
                    close(red2.beta, beta, 1e-12),
                    "{family} {formulation}: β {beta} → {}",
                    red2.beta
                );
                assert!(close(scale, 1.0, 1e-12), "{family} {formulation}: scale {scale}");
            }
        }
    }

    #[test]
    fn epsilon_and_eta_betas_are_reciprocal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (m, a, b) =
                (rng.gen_range(0.2..4.0), rng.gen_range(0.2..4.0), rng.gen_range(0.2..4.0));
            for spec in [
                PotentialSpec::quad_coulomb(m, a, b).unwrap(),
                PotentialSpec::funnel(m, a, b).unwrap(),
            ] {
                let (eps, _) = reduce(&spec, Formulation::Epsilon).unwrap();
                let (eta, _) = reduce(&spec, Formulation::Eta).unwrap();
                assert!(
                    (eps.beta * eta.beta - 1.0).abs() < 1e-12,
                    "{}: β_ε·β_η = {}",
                    spec.family,
                    eps.beta * eta.beta
                );
            }
        }
    }

    #[test]
    fn scale_energy_identity_case() {
        assert_eq!(scale_energy(2.5, 1.7, 0.3, 1.0, 1.7).unwrap(), 2.5);
    }

    // Scaling law against the two exact closed forms:
    //   Coulomb  V = −g·(ar)⁻¹·a·…  i.e. g·v(ar), v(x) = −1/x → E = −m g²/(2 a² N²)
    //   HO       v(x) = x²                → E = √(2 g a²/m)·N
    #[test]
    fn scale_energy_reproduces_coulomb_and_ho() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let nval = 1.0;
        for _ in 0..100 {
            let (m, g, a, m_ref) = (
                rng.gen_range(0.1..5.0),
                rng.gen_range(0.1..5.0),
                rng.gen_range(0.1..5.0),
                rng.gen_range(0.1..5.0),
            );
            let g_ref = scaled_coupling(m, g, a, m_ref);

            let coulomb = |mm: f64, kappa: f64| -mm * kappa * kappa / (2.0 * nval * nval);
            let direct = coulomb(m, g / a);
            let scaled = scale_energy(coulomb(m_ref, g_ref), m, g, a, m_ref).unwrap();
            assert!(close(direct, scaled, 1e-12), "coulomb {direct} vs {scaled}");

            let ho = |mm: f64, strength: f64| (2.0 * strength / mm).sqrt() * nval;
            let direct = ho(m, g * a * a);
            let scaled = scale_energy(ho(m_ref, g_ref), m, g, a, m_ref).unwrap();
            assert!(close(direct, scaled, 1e-12), "ho {direct} vs {scaled}");
        }
    }

    #[test]
    fn family_consistency_is_enforced() {
        // Kratzer coefficients must satisfy c₂ = (c₁/2)².
        let bad = PotentialSpec::new(
            Family::Kratzer,
            vec![
                PowerTerm::new(Sign::Plus, 2.0, -2.0).unwrap(),
                PowerTerm::new(Sign::Minus, 2.0, -1.0).unwrap(),
            ],
            1.0,
        );
        assert!(bad.is_err());
        // λ = −2 is admitted; anything below is not.
        assert!(PotentialSpec::pure_power(1.0, Sign::Plus, 1.0, -2.0).is_ok());
        assert!(PowerTerm::new(Sign::Plus, 1.0, -2.5).is_err());
        assert!(PowerTerm::new(Sign::Plus, -1.0, 2.0).is_err());
        assert!(PotentialSpec::kratzer(1.0, 0.0).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let spec = PotentialSpec::quad_coulomb(8.0 / 3.0, 0.25, 2.0).unwrap();
        let text = spec.to_json();
        let back = PotentialSpec::from_json(&text).unwrap();
        assert_eq!(spec, back);
        assert!(text.contains("\"family\": \"quad-coulomb\""));
        assert!(text.contains("\"sign\": -1"));

        // Schema violations and family mismatches fail to parse.
        assert!(
            PotentialSpec::from_json("{\"family\":\"funnel\",\"terms\":[],\"mass\":1}").is_err()
        );
        let wrong_family = r#"{"family":"kratzer","terms":[{"coeff":2.0,"exp":-2.0,"sign":1},
            {"coeff":2.0,"exp":-1.0,"sign":-1}],"mass":1.0}"#;
        assert!(PotentialSpec::from_json(wrong_family).is_err());
    }

    #[test]
    fn eta_form_limited_to_two_scale_coulomb_families() {
        let an = PotentialSpec::anharmonic(2.0, 3.0, 4.0).unwrap();
        assert!(matches!(reduce(&an, Formulation::Eta), Err(Error::UnsupportedReduction(_))));
        let pp = PotentialSpec::pure_power(1.0, Sign::Plus, 1.0, 2.0).unwrap();
        assert!(matches!(reduce(&pp, Formulation::Epsilon), Err(Error::UnsupportedReduction(_))));
    }
}
