//! Level-number calibration: β-dependent models N(n, l) = b(β)·n + l + c(β),
//! the quality measure χ(β) against numeric spectra, pointwise (b, c)
//! optimization, and least-squares fits of b(β), c(β) model curves.

use serde::{Deserialize, Serialize};

use crate::closed_form::reduced_afm_energy;
use crate::engine::NValue;
use crate::error::{Error, Result};
use crate::potentials::{Family, Formulation, QuantumNumbers, ReducedProblem};
use crate::spectral::{eigenvalues, EigenTable, Problem, SolverConfig};

pub const B_HO: f64 = 2.0;
pub const C_HO: f64 = 1.5;
/// Large-quantum-number slope of the linear-potential level count, π/√3.
pub const B_LINEAR: f64 = 1.8137993642342178;
/// Its intercept companion, √3·π/4.
pub const C_LINEAR: f64 = 1.3603495231756633;

/// Shape of a one-coefficient curve over β ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// p₁
    Constant,
    /// (p₁β + p₂)/(β + p₃), pole kept off β ≥ 0 by p₃ > 0
    Hyperbola,
    /// 1 + p₁·exp(−p₂(β − p₃)³)
    ExpCubic,
    /// 1 + p₁·exp(−p₂²(β − p₃)²)
    Gaussian,
}

impl ModelKind {
    pub fn value(self, p: [f64; 3], beta: f64) -> f64 {
        match self {
            ModelKind::Constant => p[0],
            ModelKind::Hyperbola => (p[0] * beta + p[1]) / (beta + p[2]),
            ModelKind::ExpCubic => {
                let d = beta - p[2];
                1.0 + p[0] * (-p[1] * d * d * d).exp()
            }
            ModelKind::Gaussian => {
                let d = beta - p[2];
                1.0 + p[0] * (-p[1] * p[1] * d * d).exp()
            }
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(ModelKind::Constant),
            "hyperbola" => Ok(ModelKind::Hyperbola),
            "exp-cubic" => Ok(ModelKind::ExpCubic),
            "gaussian" => Ok(ModelKind::Gaussian),
            other => Err(Error::FitFailed(format!("unknown model kind {other:?}"))),
        }
    }
}

/// Per-parameter fit constraint. `ZeroAnchor(d)` ties p₂ = d·p₃ so a
/// hyperbola passes through d at β = 0; it is valid only on index 1 of a
/// hyperbola.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamConstraint {
    Free,
    Fixed(f64),
    ZeroAnchor(f64),
}

/// Level-number model: N(β; n, l) = b(β)·n + l + c(β).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NLevelModel {
    pub b_kind: ModelKind,
    pub b_params: [f64; 3],
    pub c_kind: ModelKind,
    pub c_params: [f64; 3],
}

impl NLevelModel {
    pub fn new(
        b_kind: ModelKind,
        b_params: [f64; 3],
        c_kind: ModelKind,
        c_params: [f64; 3],
    ) -> Result<Self> {
        for (kind, p, name) in [(b_kind, b_params, "b"), (c_kind, c_params, "c")] {
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::FitFailed(format!("{name} parameters must be finite")));
            }
            if kind == ModelKind::Hyperbola && p[2] <= 0.0 {
                return Err(Error::FitFailed(format!(
                    "{name} hyperbola needs p₃ > 0, got {}",
                    p[2]
                )));
            }
        }
        Ok(NLevelModel { b_kind, b_params, c_kind, c_params })
    }

    pub fn b(&self, beta: f64) -> f64 {
        self.b_kind.value(self.b_params, beta)
    }

    pub fn c(&self, beta: f64) -> f64 {
        self.c_kind.value(self.c_params, beta)
    }

    pub fn n_of(&self, beta: f64, q: QuantumNumbers) -> f64 {
        self.b(beta) * f64::from(q.n) + f64::from(q.l) + self.c(beta)
    }
}

/// Oscillator level count N = 2n + l + 3/2.
pub fn model_nho() -> NLevelModel {
    NLevelModel {
        b_kind: ModelKind::Constant,
        b_params: [B_HO, 0.0, 0.0],
        c_kind: ModelKind::Constant,
        c_params: [C_HO, 0.0, 0.0],
    }
}

/// Coulomb level count N = n + l + 1.
pub fn model_nc() -> NLevelModel {
    NLevelModel {
        b_kind: ModelKind::Constant,
        b_params: [1.0, 0.0, 0.0],
        c_kind: ModelKind::Constant,
        c_params: [1.0, 0.0, 0.0],
    }
}

/// Anchored one-free-parameter models (limits pinned to the exact β → 0 and
/// β → ∞ level counts).
pub fn model_set1(family: Family) -> Result<NLevelModel> {
    match family {
        Family::Anharmonic => NLevelModel::new(
            ModelKind::Hyperbola,
            [B_LINEAR, B_HO * 0.835, 0.835],
            ModelKind::Hyperbola,
            [C_LINEAR, C_HO * 0.445, 0.445],
        ),
        Family::QuadCoulomb => NLevelModel::new(
            ModelKind::ExpCubic,
            [1.0, 0.093, 0.0],
            ModelKind::ExpCubic,
            [0.5, 2.414, 0.0],
        ),
        Family::Funnel => NLevelModel::new(
            ModelKind::Gaussian,
            [B_LINEAR - 1.0, 0.416, 0.0],
            ModelKind::Gaussian,
            [C_LINEAR - 1.0, 1.245, 0.0],
        ),
        other => Err(Error::FamilyMismatch(format!("no calibrated model for {other}"))),
    }
}

/// Fully free three-parameter fits.
pub fn model_set2(family: Family) -> Result<NLevelModel> {
    match family {
        Family::Anharmonic => NLevelModel::new(
            ModelKind::Hyperbola,
            [1.826, 1.485, 0.747],
            ModelKind::Hyperbola,
            [1.381, 0.333, 0.222],
        ),
        Family::QuadCoulomb => NLevelModel::new(
            ModelKind::ExpCubic,
            [0.990, 0.119, 0.161],
            ModelKind::ExpCubic,
            [0.496, 1.373, -0.136],
        ),
        Family::Funnel => NLevelModel::new(
            ModelKind::Gaussian,
            [0.783, 0.459, 0.237],
            ModelKind::Gaussian,
            [0.369, 1.168, -0.062],
        ),
        other => Err(Error::FamilyMismatch(format!("no calibrated model for {other}"))),
    }
}

/// Which constraint recipe a refit uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintSet {
    Set1,
    Set2,
}

impl std::str::FromStr for ConstraintSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "set1" => Ok(ConstraintSet::Set1),
            "set2" => Ok(ConstraintSet::Set2),
            other => Err(Error::FitFailed(format!("unknown constraint set {other:?}"))),
        }
    }
}

/// Model shapes used for each family's b and c channels.
pub fn family_kinds(family: Family) -> Result<(ModelKind, ModelKind)> {
    match family {
        Family::Anharmonic => Ok((ModelKind::Hyperbola, ModelKind::Hyperbola)),
        Family::QuadCoulomb => Ok((ModelKind::ExpCubic, ModelKind::ExpCubic)),
        Family::Funnel => Ok((ModelKind::Gaussian, ModelKind::Gaussian)),
        other => Err(Error::FamilyMismatch(format!("no calibration recipe for {other}"))),
    }
}

/// Constraint arrays (b channel, c channel) for a refit.
pub fn constraint_arrays(
    family: Family,
    set: ConstraintSet,
) -> Result<([ParamConstraint; 3], [ParamConstraint; 3])> {
    use ParamConstraint::{Fixed, Free, ZeroAnchor};
    if set == ConstraintSet::Set2 {
        family_kinds(family)?;
        return Ok(([Free; 3], [Free; 3]));
    }
    match family {
        Family::Anharmonic => Ok((
            [Fixed(B_LINEAR), ZeroAnchor(B_HO), Free],
            [Fixed(C_LINEAR), ZeroAnchor(C_HO), Free],
        )),
        Family::QuadCoulomb => Ok(([Fixed(1.0), Free, Fixed(0.0)], [Fixed(0.5), Free, Fixed(0.0)])),
        Family::Funnel => Ok((
            [Fixed(B_LINEAR - 1.0), Free, Fixed(0.0)],
            [Fixed(C_LINEAR - 1.0), Free, Fixed(0.0)],
        )),
        other => Err(Error::FamilyMismatch(format!("no calibration recipe for {other}"))),
    }
}

/// Pointwise descent start: the exact level count of the family's β → 0 limit.
pub fn descent_anchor(family: Family) -> Result<(f64, f64)> {
    match family {
        Family::Anharmonic | Family::QuadCoulomb => Ok((B_HO, C_HO)),
        Family::Funnel => Ok((B_LINEAR, C_LINEAR)),
        other => Err(Error::FamilyMismatch(format!("no calibration recipe for {other}"))),
    }
}

fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (ratio * i as f64).exp()).collect()
}

/// Frozen β grids the shipped refits were produced on.
pub fn fit_grid(family: Family) -> Result<Vec<f64>> {
    match family {
        Family::Anharmonic => Ok(geometric_grid(0.2, 20.0, 15)),
        Family::QuadCoulomb | Family::Funnel => Ok(geometric_grid(0.1, 4.0, 15)),
        other => Err(Error::FamilyMismatch(format!("no calibration recipe for {other}"))),
    }
}

/// Numeric 4×4 level table of a reduced family member.
pub fn numeric_table(family: Family, beta: f64, cfg: &SolverConfig) -> Result<EigenTable> {
    let red = ReducedProblem::new(family, beta, Formulation::Epsilon)?;
    eigenvalues(&Problem::Reduced(red), &QuantumNumbers::window(3, 3), cfg)
}

/// χ(β): mean squared gap over the 4×4 window between the table's energies
/// and the closed-form energies evaluated at the model's N(n, l).
pub fn chi_beta(family: Family, beta: f64, model: &NLevelModel, table: &EigenTable) -> Result<f64> {
    let red = ReducedProblem::new(family, beta, Formulation::Epsilon)?;
    let window = QuantumNumbers::window(3, 3);
    let mut sum = 0.0;
    for q in &window {
        let e_num = table.energy(*q)?;
        let e_app = reduced_afm_energy(&red, NValue::new(model.n_of(beta, *q))?)?;
        sum += (e_app - e_num) * (e_app - e_num);
    }
    Ok(sum / window.len() as f64)
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn golden_min(f: &mut impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    (xm, f(xm))
}

/// Best constant (b, c) for one β against one numeric table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointwiseMinimum {
    pub beta: f64,
    pub b: f64,
    pub c: f64,
    pub chi: f64,
}

/// Minimize χ over constant (b, c) by golden-section coordinate descent.
/// Invalid regions (N ≤ 0 or formula domain violations) rank as +∞.
pub fn minimize_bc(
    family: Family,
    beta: f64,
    table: &EigenTable,
    start: (f64, f64),
) -> Result<PointwiseMinimum> {
    let red = ReducedProblem::new(family, beta, Formulation::Epsilon)?;
    let window = QuantumNumbers::window(3, 3);
    let mut targets = Vec::with_capacity(window.len());
    for q in &window {
        targets.push((f64::from(q.n), f64::from(q.l), table.energy(*q)?));
    }
    let chi = |b: f64, c: f64| -> f64 {
        let mut sum = 0.0;
        for &(n, l, e_num) in &targets {
            let nv = b * n + l + c;
            let e_app = match NValue::new(nv).and_then(|nv| reduced_afm_energy(&red, nv)) {
                Ok(e) => e,
                Err(_) => return f64::INFINITY,
            };
            sum += (e_app - e_num) * (e_app - e_num);
        }
        sum / targets.len() as f64
    };
    let (mut b, mut c) = start;
    let mut best = chi(b, c);
    for _ in 0..80 {
        let (nb, _) = golden_min(&mut |x| chi(x, c), (b - 0.8).max(0.05), b + 0.8, 1e-10);
        let (nc, fc) = golden_min(&mut |x| chi(nb, x), (c - 0.8).max(0.05), c + 0.8, 1e-10);
        let moved = (nb - b).abs().max((nc - c).abs());
        b = nb;
        c = nc;
        best = fc;
        if moved < 1e-9 {
            break;
        }
    }
    if !best.is_finite() {
        return Err(Error::FitFailed(format!(
            "pointwise minimum at β = {beta} did not leave the invalid region"
        )));
    }
    Ok(PointwiseMinimum { beta, b, c, chi: best })
}

fn assemble(constraints: &[ParamConstraint; 3], init: [f64; 3], free_vals: &[f64]) -> [f64; 3] {
    let mut p = init;
    let mut j = 0;
    for i in 0..3 {
        match constraints[i] {
            ParamConstraint::Free => {
                p[i] = free_vals[j];
                j += 1;
            }
            ParamConstraint::Fixed(v) => p[i] = v,
            ParamConstraint::ZeroAnchor(_) => {}
        }
    }
    if let ParamConstraint::ZeroAnchor(d) = constraints[1] {
        p[1] = d * p[2];
    }
    p
}

fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(row);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Least-squares fit of a model curve to (β, value) samples under the given
/// constraints, by damped Gauss-Newton with a numerical Jacobian. `ZeroAnchor`
/// is only accepted on p₂ of a hyperbola.
pub fn fit_model(
    samples: &[(f64, f64)],
    kind: ModelKind,
    constraints: &[ParamConstraint; 3],
    init: [f64; 3],
) -> Result<[f64; 3]> {
    if samples.len() < 2 {
        return Err(Error::FitFailed("need at least two samples".into()));
    }
    for (i, c) in constraints.iter().enumerate() {
        if matches!(c, ParamConstraint::ZeroAnchor(_)) && (i != 1 || kind != ModelKind::Hyperbola) {
            return Err(Error::FitFailed(
                "zero-anchor constraint applies only to p₂ of a hyperbola".into(),
            ));
        }
    }
    let free: Vec<usize> =
        (0..3).filter(|&i| matches!(constraints[i], ParamConstraint::Free)).collect();
    let residuals = |x: &[f64]| -> Option<Vec<f64>> {
        let p = assemble(constraints, init, x);
        let r: Vec<f64> = samples.iter().map(|&(b, y)| kind.value(p, b) - y).collect();
        r.iter().all(|v| v.is_finite()).then_some(r)
    };
    let sum_sq = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();

    let mut x: Vec<f64> = free.iter().map(|&i| init[i]).collect();
    if x.is_empty() {
        return Ok(assemble(constraints, init, &x));
    }
    let mut r = residuals(&x)
        .ok_or_else(|| Error::FitFailed("model is not finite at the initial parameters".into()))?;
    let mut ss = sum_sq(&r);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        let k = x.len();
        let mut jac = vec![vec![0.0; k]; samples.len()];
        for j in 0..k {
            let dp = 1e-6 * x[j].abs().max(1.0);
            let mut xp = x.clone();
            xp[j] += dp;
            let rp = residuals(&xp)
                .ok_or_else(|| Error::FitFailed("model left the finite region".into()))?;
            for (row, jac_row) in jac.iter_mut().enumerate() {
                jac_row[j] = (rp[row] - r[row]) / dp;
            }
        }
        let mut jtj = vec![vec![0.0; k]; k];
        let mut jtr = vec![0.0; k];
        for (row, jac_row) in jac.iter().enumerate() {
            for a in 0..k {
                jtr[a] += jac_row[a] * r[row];
                for b in 0..k {
                    jtj[a][b] += jac_row[a] * jac_row[b];
                }
            }
        }
        let mut accepted = false;
        for _ in 0..25 {
            let mut a = jtj.clone();
            for (j, row) in a.iter_mut().enumerate() {
                row[j] += lambda * jtj[j][j].max(1e-12);
            }
            let mut rhs: Vec<f64> = jtr.iter().map(|v| -v).collect();
            let Some(step) = solve_dense(&mut a, &mut rhs) else {
                lambda *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x.iter().zip(&step).map(|(xi, si)| xi + si).collect();
            if let Some(rn) = residuals(&xn) {
                let ssn = sum_sq(&rn);
                if ssn <= ss {
                    let step_norm = step.iter().map(|s| s * s).sum::<f64>().sqrt();
                    let x_norm = x.iter().map(|s| s * s).sum::<f64>().sqrt();
                    x = xn;
                    r = rn;
                    let improved = ss - ssn;
                    ss = ssn;
                    lambda = (lambda * 0.3).max(1e-14);
                    accepted = true;
                    if step_norm <= 1e-12 * (1.0 + x_norm) || improved <= 1e-20 * (1.0 + ss) {
                        return Ok(assemble(constraints, init, &x));
                    }
                    break;
                }
            }
            lambda *= 10.0;
            if lambda > 1e14 {
                return Ok(assemble(constraints, init, &x));
            }
        }
        if !accepted {
            return Ok(assemble(constraints, init, &x));
        }
    }
    Ok(assemble(constraints, init, &x))
}

/// Mean squared residual of a fitted curve against its samples.
pub fn curve_distortion(samples: &[(f64, f64)], kind: ModelKind, p: [f64; 3]) -> f64 {
    samples
        .iter()
        .map(|&(b, y)| {
            let d = kind.value(p, b) - y;
            d * d
        })
        .sum::<f64>()
        / samples.len() as f64
}

/// Full refit of one family: numeric tables over the frozen grid, pointwise
/// (b, c) minima, then constrained curve fits of both channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub family: Family,
    pub set: ConstraintSet,
    pub minima: Vec<PointwiseMinimum>,
    pub model: NLevelModel,
    pub distortion_b: f64,
    pub distortion_c: f64,
}

pub fn run_family(family: Family, set: ConstraintSet, cfg: &SolverConfig) -> Result<FitReport> {
    let grid = fit_grid(family)?;
    let (kind_b, kind_c) = family_kinds(family)?;
    let (cons_b, cons_c) = constraint_arrays(family, set)?;
    let init = model_set1(family)?;
    let mut minima = Vec::with_capacity(grid.len());
    let mut start = descent_anchor(family)?;
    for &beta in &grid {
        let table = numeric_table(family, beta, cfg)?;
        let m = minimize_bc(family, beta, &table, start)?;
        start = (m.b, m.c);
        minima.push(m);
    }
    let samples_b: Vec<(f64, f64)> = minima.iter().map(|m| (m.beta, m.b)).collect();
    let samples_c: Vec<(f64, f64)> = minima.iter().map(|m| (m.beta, m.c)).collect();
    let b_params = fit_model(&samples_b, kind_b, &cons_b, init.b_params)?;
    let c_params = fit_model(&samples_c, kind_c, &cons_c, init.c_params)?;
    Ok(FitReport {
        family,
        set,
        distortion_b: curve_distortion(&samples_b, kind_b, b_params),
        distortion_c: curve_distortion(&samples_c, kind_c, c_params),
        model: NLevelModel::new(kind_b, b_params, kind_c, c_params)?,
        minima,
    })
}
