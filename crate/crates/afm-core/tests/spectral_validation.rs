//! The finite-difference solver against problems with known spectra, plus the
//! virial and mesh-consistency checks that certify its accuracy contract.

use afm_core::closed_form::{kratzer_exact, quad_centrifugal_exact};
use afm_core::potentials::{
    Family, Formulation, PotentialSpec, QuantumNumbers, ReducedProblem, Sign,
};
use afm_core::spectral::{eigenvalues, expectation_r_power, Problem, SolverConfig};

const EIGEN_REL: f64 = 1e-6;
const VIRIAL_REL: f64 = 1e-5;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn kratzer_window_matches_exact_spectrum() {
    let (m, a) = (0.5, 1.0);
    let problem = Problem::Physical(PotentialSpec::kratzer(m, a).unwrap());
    let window = QuantumNumbers::window(3, 3);
    let table = eigenvalues(&problem, &window, &SolverConfig::default()).unwrap();
    for q in window {
        let exact = kratzer_exact(m, a, q).unwrap();
        let num = table.energy(q).unwrap();
        assert!(rel(num, exact) <= EIGEN_REL, "{q}: numeric {num} vs exact {exact}");
    }
}

#[test]
fn quad_centrifugal_spectrum_both_signs() {
    // The attractive branch needs (2l+1)² − 4β ≥ 1 to keep the origin
    // exponent at or above the solver's floor, so it skips l = 0.
    for (sign, beta, l_min) in [(Sign::Plus, 1.2, 0), (Sign::Minus, 0.2, 1)] {
        let red =
            ReducedProblem::with_sign(Family::QuadCentrifugal, beta, Formulation::Epsilon, sign)
                .unwrap();
        let problem = Problem::Reduced(red);
        let levels: Vec<QuantumNumbers> =
            QuantumNumbers::window(3, 3).into_iter().filter(|q| q.l >= l_min).collect();
        let table = eigenvalues(&problem, &levels, &SolverConfig::default()).unwrap();
        for q in levels {
            let exact = quad_centrifugal_exact(beta, sign, q).unwrap();
            let num = table.energy(q).unwrap();
            assert!(
                rel(num, exact) <= EIGEN_REL,
                "sign {sign:?} {q}: numeric {num} vs exact {exact}"
            );
        }
    }
}

#[test]
fn hydrogen_excited_level() {
    let problem =
        Problem::Physical(PotentialSpec::pure_power(1.0, Sign::Minus, 1.0, -1.0).unwrap());
    let q = QuantumNumbers::new(2, 1);
    let table = eigenvalues(&problem, &[q], &SolverConfig::default()).unwrap();
    let exact = -1.0 / 32.0;
    assert!(rel(table.energy(q).unwrap(), exact) <= EIGEN_REL);
}

/// 2⟨T⟩ = λ⟨V⟩ for V = ±c·r^λ, written as 2E = (λ+2)⟨V⟩.
#[test]
fn virial_identity_for_pure_powers() {
    let cases = [(Sign::Plus, 0.5, 2.0), (Sign::Plus, 1.0, 1.0), (Sign::Minus, 1.0, -1.0)];
    let cfg = SolverConfig::default();
    for (sign, coeff, lambda) in cases {
        let spec = PotentialSpec::pure_power(1.0, sign, coeff, lambda).unwrap();
        let problem = Problem::Physical(spec);
        for q in [QuantumNumbers::new(0, 0), QuantumNumbers::new(1, 2)] {
            let energy = eigenvalues(&problem, &[q], &cfg).unwrap().energy(q).unwrap();
            let moment = expectation_r_power(&problem, q, lambda, &cfg).unwrap();
            let v_mean = sign.value() * coeff * moment;
            assert!(
                rel(2.0 * energy, (lambda + 2.0) * v_mean) <= VIRIAL_REL,
                "λ={lambda} {q}: 2E = {} vs (λ+2)⟨V⟩ = {}",
                2.0 * energy,
                (lambda + 2.0) * v_mean
            );
        }
    }
}

/// Doubling the base mesh moves each eigenvalue by less than its advertised
/// accuracy estimate.
#[test]
fn mesh_doubling_stays_within_advertised_accuracy() {
    let problem =
        Problem::Reduced(ReducedProblem::new(Family::Funnel, 0.5, Formulation::Epsilon).unwrap());
    let window = QuantumNumbers::window(2, 2);
    let base = SolverConfig::default();
    let fine = SolverConfig { mesh_size: 2 * base.mesh_size, ..SolverConfig::default() };
    let coarse_table = eigenvalues(&problem, &window, &base).unwrap();
    let fine_table = eigenvalues(&problem, &window, &fine).unwrap();
    for q in window {
        let coarse = coarse_table.get(q).unwrap();
        let fine = fine_table.get(q).unwrap();
        let shift = (coarse.energy - fine.energy).abs();
        assert!(
            shift < coarse.accuracy.max(1e-12),
            "{q}: shift {shift:e} vs advertised {:e}",
            coarse.accuracy
        );
    }
}
