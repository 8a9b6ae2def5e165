//! Finite-difference eigensolver for the radial equation
//! −u″/(2m) + [l(l+1)/(2mr²) + V(r)]u = Eu with u(0) = u(r_max) = 0.
//!
//! Uniform mesh, symmetric three-point stencil, Sturm-sequence bisection for
//! the (n+1)-th eigenvalue of each l sector. A mesh-doubling ladder with
//! Richardson extrapolation turns the O(h²) stencil into an O(h⁴) estimate
//! whose convergence is measured, not assumed: the reported accuracy is the
//! gap between the last two extrapolants.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::potentials::{
    evaluate, Family, Formulation, PotentialSpec, QuantumNumbers, ReducedProblem,
};

/// Mesh and convergence controls. `mesh_size` is the coarsest interior point
/// count of the doubling ladder; `domain_cutoff` overrides the automatic box
/// size when set. `target_levels` is the default level list for callers that
/// pass an empty request.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mesh_size: usize,
    pub domain_cutoff: Option<f64>,
    pub target_levels: Vec<QuantumNumbers>,
    pub richardson: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mesh_size: 512,
            domain_cutoff: None,
            target_levels: Vec::new(),
            richardson: true,
        }
    }
}

/// How an energy entry was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Numeric,
    AfmClosedForm,
    AfmGeneric,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Numeric => "numeric",
            Provenance::AfmClosedForm => "afm-closed-form",
            Provenance::AfmGeneric => "afm-generic",
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(Provenance::Numeric),
            "afm-closed-form" => Ok(Provenance::AfmClosedForm),
            "afm-generic" => Ok(Provenance::AfmGeneric),
            other => Err(Error::SpectralDomain(format!("unknown provenance {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenEntry {
    pub q: QuantumNumbers,
    pub energy: f64,
    pub accuracy: f64,
    pub provenance: Provenance,
}

/// Energies of one problem (one family, one β or one physical parameter set).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenTable {
    pub family: Family,
    pub beta: Option<f64>,
    pub formulation: Option<Formulation>,
    pub entries: Vec<EigenEntry>,
}

impl EigenTable {
    pub fn get(&self, q: QuantumNumbers) -> Option<&EigenEntry> {
        self.entries.iter().find(|e| e.q == q)
    }

    pub fn energy(&self, q: QuantumNumbers) -> Result<f64> {
        self.get(q)
            .map(|e| e.energy)
            .ok_or_else(|| Error::IncompleteTable(format!("no entry for {q}")))
    }

    /// CSV with the fixed column set; floats use the shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,beta,formulation,n,l,energy,provenance,accuracy\n");
        for e in &self.entries {
            let beta = self.beta.map(|b| b.to_string()).unwrap_or_default();
            let form = self.formulation.map(|f| f.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.family, beta, form, e.q.n, e.q.l, e.energy, e.provenance, e.accuracy
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::IncompleteTable("empty CSV".into()))?;
        if header.trim() != "family,beta,formulation,n,l,energy,provenance,accuracy" {
            return Err(Error::IncompleteTable(format!("unexpected CSV header {header:?}")));
        }
        let mut family: Option<Family> = None;
        let mut beta: Option<Option<f64>> = None;
        let mut formulation: Option<Option<Formulation>> = None;
        let mut entries = Vec::new();
        for (idx, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 8 {
                return Err(Error::IncompleteTable(format!(
                    "row {}: expected 8 columns, got {}",
                    idx + 2,
                    cols.len()
                )));
            }
            let bad = |what: &str| {
                Error::IncompleteTable(format!("row {}: cannot parse {what}", idx + 2))
            };
            let fam: Family = cols[0].parse().map_err(|_| bad("family"))?;
            let b = if cols[1].is_empty() {
                None
            } else {
                Some(cols[1].parse::<f64>().map_err(|_| bad("beta"))?)
            };
            let form = if cols[2].is_empty() {
                None
            } else {
                Some(cols[2].parse::<Formulation>().map_err(|_| bad("formulation"))?)
            };
            match (family, beta, formulation) {
                (None, _, _) => {
                    family = Some(fam);
                    beta = Some(b);
                    formulation = Some(form);
                }
                (Some(f0), Some(b0), Some(fm0)) => {
                    if f0 != fam || b0 != b || fm0 != form {
                        return Err(Error::IncompleteTable(format!(
                            "row {}: mixed problem context in one table",
                            idx + 2
                        )));
                    }
                }
                _ => unreachable!(),
            }
            entries.push(EigenEntry {
                q: QuantumNumbers::new(
                    cols[3].parse().map_err(|_| bad("n"))?,
                    cols[4].parse().map_err(|_| bad("l"))?,
                ),
                energy: cols[5].parse().map_err(|_| bad("energy"))?,
                provenance: cols[6].parse()?,
                accuracy: cols[7].parse().map_err(|_| bad("accuracy"))?,
            });
        }
        let family = family.ok_or_else(|| Error::IncompleteTable("CSV has no rows".into()))?;
        Ok(EigenTable { family, beta: beta.unwrap(), formulation: formulation.unwrap(), entries })
    }
}

/// A solvable problem: a physical potential or a reduced one-parameter family
/// member (materialized through its canonical embedding).
#[derive(Debug, Clone)]
pub enum Problem {
    Physical(PotentialSpec),
    Reduced(ReducedProblem),
}

impl Problem {
    pub fn spec(&self) -> Result<PotentialSpec> {
        match self {
            Problem::Physical(s) => Ok(s.clone()),
            Problem::Reduced(r) => r.embed(),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Problem::Physical(s) => s.family,
            Problem::Reduced(r) => r.family,
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match self {
            Problem::Physical(_) => None,
            Problem::Reduced(r) => Some(r.beta),
        }
    }

    pub fn formulation(&self) -> Option<Formulation> {
        match self {
            Problem::Physical(_) => None,
            Problem::Reduced(r) => Some(r.formulation),
        }
    }
}

/// Count of eigenvalues of the symmetric tridiagonal matrix (diagonal `d`,
/// squared off-diagonal `e2`) strictly below `x`, by Sturm sequence.
fn sturm_count(d: &[f64], e2: f64, x: f64) -> usize {
    let mut q = 1.0f64;
    let mut count = 0usize;
    for (i, &di) in d.iter().enumerate() {
        q = if i == 0 { di - x } else { di - x - e2 / q };
        if q < 0.0 {
            count += 1;
        } else if q == 0.0 {
            count += 1;
            q = -1e-300;
        }
    }
    count
}

/// k-th smallest eigenvalue (k is 0-based) by bisection. `window` is a
/// candidate bracket carried over from a coarser mesh; it is verified by
/// counting and dropped if stale.
fn kth_eigenvalue(d: &[f64], e2: f64, k: usize, window: Option<(f64, f64)>) -> f64 {
    let off = 2.0 * e2.sqrt();
    let mut lo = d.iter().cloned().fold(f64::INFINITY, f64::min) - off;
    let mut hi = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + off;
    if let Some((wlo, whi)) = window {
        if wlo < whi && sturm_count(d, e2, wlo) <= k && sturm_count(d, e2, whi) > k {
            lo = wlo;
            hi = whi;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(d, e2, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-13 * mid.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Effective potential including the centrifugal term.
fn w_eff(spec: &PotentialSpec, m: f64, l: u32, r: f64) -> f64 {
    let lf = f64::from(l);
    lf * (lf + 1.0) / (2.0 * m * r * r) + evaluate(spec, r).unwrap_or(f64::INFINITY)
}

/// Inverse-square admissibility. With D = (2l+1)² + 8m·c₂ over the signed
/// r⁻² strength c₂ (centrifugal plus any explicit ±b/r² term):
/// D ≤ 0 leaves the operator unbounded below, and 0 < D < 1 puts the origin
/// exponent s = (1 + √D)/2 below 1, where the mesh error decays as h^{2s−1}
/// (slower than first order) and the ladder cannot reach its target.
fn check_admissible(spec: &PotentialSpec, m: f64, l: u32) -> Result<()> {
    let inv_sq: f64 =
        spec.terms.iter().filter(|t| t.exp == -2.0).map(|t| t.sign.value() * t.coeff).sum();
    let lf = 2.0 * f64::from(l) + 1.0;
    let disc = lf * lf + 8.0 * m * inv_sq;
    if disc <= 0.0 {
        return Err(Error::FallingToCenter(format!(
            "(2l+1)² + 8m·c₂ = {disc} ≤ 0 at l = {l}: spectrum unbounded below"
        )));
    }
    if disc < 1.0 {
        return Err(Error::SpectralDomain(format!(
            "(2l+1)² + 8m·c₂ = {disc} < 1 at l = {l}: origin exponent {} < 1, \
             below the mesh scheme's first-order floor",
            0.5 + 0.5 * disc.sqrt()
        )));
    }
    Ok(())
}

struct SectorCache {
    spec: PotentialSpec,
    m: f64,
    r_max: f64,
    diagonals: BTreeMap<(u32, usize), (Vec<f64>, f64)>,
}

impl SectorCache {
    fn new(spec: PotentialSpec, m: f64, r_max: f64) -> Self {
        SectorCache { spec, m, r_max, diagonals: BTreeMap::new() }
    }

    fn get(&mut self, l: u32, mesh: usize) -> &(Vec<f64>, f64) {
        let (spec, m, r_max) = (&self.spec, self.m, self.r_max);
        self.diagonals.entry((l, mesh)).or_insert_with(|| {
            let h = r_max / (mesh + 1) as f64;
            let kin = 1.0 / (m * h * h);
            let d: Vec<f64> = (1..=mesh).map(|i| kin + w_eff(spec, m, l, i as f64 * h)).collect();
            let e = -0.5 * kin;
            (d, e * e)
        })
    }
}

const MAX_RUNGS: usize = 12;

/// Leading mesh-error order of an l sector. With u ~ r^s at the origin,
/// s = 1/2 + sqrt((2l+1)² + 8m·c₂)/2 over the signed r⁻² strength: integer s
/// means an analytic solution and the bulk order 2, while a fractional branch
/// point degrades the eigenvalue error to h^{2s−1} (measured on exactly
/// solvable r⁻² spectra). check_admissible keeps s ≥ 1 so the order is ≥ 1,
/// and extrapolating at the exact fractional order leaves an h² remainder.
fn sector_error_order(spec: &PotentialSpec, m: f64, l: u32) -> f64 {
    let c2: f64 =
        spec.terms.iter().filter(|t| t.exp == -2.0).map(|t| t.sign.value() * t.coeff).sum();
    let lf = 2.0 * f64::from(l) + 1.0;
    let s = 0.5 + 0.5 * (lf * lf + 8.0 * m * c2).max(0.0).sqrt();
    if (s - s.round()).abs() < 1e-6 {
        2.0
    } else {
        (2.0 * s - 1.0).min(2.0)
    }
}

/// One level through the mesh-doubling ladder. Returns (energy, accuracy,
/// final mesh size). Meshes step M → 2M+1, halving h exactly, so consecutive
/// raw values extrapolate as (f·E₂ − E₁)/(f − 1) with f = 2^order; convergence
/// is declared when two consecutive extrapolants agree to 1e−7 relative.
fn solve_level(
    cache: &mut SectorCache,
    q: QuantumNumbers,
    cfg: &SolverConfig,
) -> Result<(f64, f64, usize)> {
    let k = q.n as usize;
    let factor = 2f64.powf(sector_error_order(&cache.spec, cache.m, q.l));
    let mut mesh = cfg.mesh_size;
    let mut raw_prev: Option<f64> = None;
    let mut extrap_prev: Option<f64> = None;
    let mut window: Option<(f64, f64)> = None;
    for _ in 0..MAX_RUNGS {
        let (d, e2) = cache.get(q.l, mesh);
        let raw = kth_eigenvalue(d, *e2, k, window);
        let slack = 0.02 * raw.abs().max(1.0);
        window = Some((raw - slack, raw + slack));
        if let Some(prev) = raw_prev {
            let extrap = (factor * raw - prev) / (factor - 1.0);
            let reference = if cfg.richardson { extrap } else { raw };
            let est = match (cfg.richardson, extrap_prev) {
                (true, Some(xp)) => Some((extrap - xp).abs()),
                (true, None) => None,
                (false, _) => Some((raw - prev).abs()),
            };
            if let Some(est) = est {
                if est <= 1e-7 * reference.abs().max(1e-3) {
                    return Ok((reference, est, mesh));
                }
            }
            extrap_prev = Some(extrap);
        }
        raw_prev = Some(raw);
        mesh = 2 * mesh + 1;
    }
    Err(Error::Convergence(format!(
        "level {q} did not reach the accuracy target within {MAX_RUNGS} mesh doublings"
    )))
}

/// Potentials with no confining term keep exponential tails set by the energy
/// rather than by a turning wall; they get a wider box.
fn coulombic_tail(spec: &PotentialSpec) -> bool {
    spec.terms.iter().all(|t| t.exp < 0.0)
}

/// Outer classical turning point for energy `e`: the largest r where
/// W(r) = e, located by a downward logarithmic scan.
fn outer_turning_point(spec: &PotentialSpec, m: f64, l: u32, e: f64, r_hi: f64) -> Option<f64> {
    let t_hi = (8.0 * r_hi).ln();
    let t_lo = -14.0f64;
    let steps = 400;
    let dt = (t_hi - t_lo) / steps as f64;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let t = t_hi - dt * i as f64;
        let g = w_eff(spec, m, l, t.exp()) - e;
        if let Some((tp, gp)) = prev {
            if g <= 0.0 && gp > 0.0 {
                let (mut lo, mut hi) = (t, tp);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if w_eff(spec, m, l, mid.exp()) - e <= 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Some((0.5 * (lo + hi)).exp());
            }
        }
        prev = Some((t, g));
    }
    None
}

/// Box size: 3× the outer turning point of the highest requested level
/// (minimum 20), twice that for purely attractive tails. A coarse solve
/// estimates the top energy; the box grows until it stops binding it.
fn auto_r_max(spec: &PotentialSpec, m: f64, q_list: &[QuantumNumbers]) -> Result<f64> {
    let n_top = q_list.iter().map(|q| q.n).max().unwrap_or(0);
    let l_top = q_list.iter().map(|q| q.l).max().unwrap_or(0);
    let tail_factor = if coulombic_tail(spec) { 2.0 } else { 1.0 };
    let mut r_max = 60.0;
    for _ in 0..6 {
        let h = r_max / 258.0;
        let kin = 1.0 / (m * h * h);
        let d: Vec<f64> = (1..=257).map(|i| kin + w_eff(spec, m, l_top, i as f64 * h)).collect();
        let e = -0.5 * kin;
        let e_top = kth_eigenvalue(&d, e * e, n_top as usize, None);
        let tp = match outer_turning_point(spec, m, l_top, e_top, r_max) {
            Some(tp) => tp,
            // No crossing on an attractive tail means the box squeezed the
            // top level above the tail limit; the turning point fallback
            // would freeze the box exactly there.
            None if coulombic_tail(spec) => {
                r_max *= 2.0;
                continue;
            }
            None => r_max / 6.0,
        };
        let needed = (3.0 * tp).max(20.0) * tail_factor;
        if needed <= r_max * 1.001 {
            return Ok(needed);
        }
        r_max = needed * 1.25;
    }
    Ok(r_max)
}

fn prepare(
    problem: &Problem,
    cfg: &SolverConfig,
    q_list: &[QuantumNumbers],
) -> Result<SectorCache> {
    if cfg.mesh_size < 64 {
        return Err(Error::SpectralDomain(format!(
            "mesh_size must be ≥ 64, got {}",
            cfg.mesh_size
        )));
    }
    let spec = problem.spec()?;
    let m = spec.mass;
    for l in q_list.iter().map(|q| q.l).collect::<std::collections::BTreeSet<_>>() {
        check_admissible(&spec, m, l)?;
    }
    let r_max = match cfg.domain_cutoff {
        Some(r) if r > 0.0 && r.is_finite() => r,
        Some(r) => {
            return Err(Error::SpectralDomain(format!("domain_cutoff must be > 0, got {r}")))
        }
        None => auto_r_max(&spec, m, q_list)?,
    };
    Ok(SectorCache::new(spec, m, r_max))
}

/// Numeric eigenvalues for the requested levels (falling back to
/// `cfg.target_levels` when `q_list` is empty).
pub fn eigenvalues(
    problem: &Problem,
    q_list: &[QuantumNumbers],
    cfg: &SolverConfig,
) -> Result<EigenTable> {
    let levels: Vec<QuantumNumbers> =
        if q_list.is_empty() { cfg.target_levels.clone() } else { q_list.to_vec() };
    if levels.is_empty() {
        return Err(Error::SpectralDomain("no levels requested".into()));
    }
    let mut cache = prepare(problem, cfg, &levels)?;
    let mut entries = Vec::with_capacity(levels.len());
    for &q in &levels {
        let (energy, accuracy, _) = solve_level(&mut cache, q, cfg)?;
        entries.push(EigenEntry { q, energy, accuracy, provenance: Provenance::Numeric });
    }
    Ok(EigenTable {
        family: problem.family(),
        beta: problem.beta(),
        formulation: problem.formulation(),
        entries,
    })
}

/// Solve the shifted tridiagonal system (T − σ)x = b in place (Thomas
/// algorithm; σ sits a safe distance off the eigenvalue so the system stays
/// well conditioned for inverse iteration).
fn shifted_solve(d: &[f64], e: f64, sigma: f64, b: &mut [f64]) {
    let n = d.len();
    let mut c_prime = vec![0.0; n];
    let mut denom = d[0] - sigma;
    b[0] /= denom;
    for i in 1..n {
        c_prime[i - 1] = e / denom;
        denom = (d[i] - sigma) - e * c_prime[i - 1];
        b[i] = (b[i] - e * b[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        b[i] -= c_prime[i] * b[i + 1];
    }
}

/// ⟨r^k⟩ in the (n, l) eigenstate, by inverse iteration at the converged
/// energy and trapezoidal quadrature, Richardson-extrapolated over two meshes.
pub fn expectation_r_power(
    problem: &Problem,
    q: QuantumNumbers,
    k: f64,
    cfg: &SolverConfig,
) -> Result<f64> {
    if !k.is_finite() {
        return Err(Error::SpectralDomain(format!("moment exponent must be finite, got {k}")));
    }
    // u ~ r^{l+1} at the origin, so u²r^k is integrable only for k > −(2l+3).
    if k <= -(2.0 * f64::from(q.l) + 3.0) {
        return Err(Error::SpectralDomain(format!(
            "⟨r^{k}⟩ diverges at the origin for l = {}",
            q.l
        )));
    }
    let mut cache = prepare(problem, cfg, std::slice::from_ref(&q))?;
    let (energy, accuracy, mesh) = solve_level(&mut cache, q, cfg)?;
    let mesh = mesh.min(2 * cfg.mesh_size + 1).max(cfg.mesh_size);
    let moment_on = |cache: &mut SectorCache, mesh: usize| -> f64 {
        let r_max = cache.r_max;
        let (d, e2) = cache.get(q.l, mesh);
        let h = r_max / (mesh + 1) as f64;
        let e_off = -e2.sqrt();
        let sigma = energy - accuracy.max(1e-8 * energy.abs().max(1.0));
        let mut u = vec![1.0; d.len()];
        for _ in 0..4 {
            shifted_solve(d, e_off, sigma, &mut u);
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            u.iter_mut().for_each(|x| *x /= norm);
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, &ui) in u.iter().enumerate() {
            let r = (i + 1) as f64 * h;
            num += ui * ui * r.powf(k);
            den += ui * ui;
        }
        num / den
    };
    let coarse = moment_on(&mut cache, mesh);
    let fine = moment_on(&mut cache, 2 * mesh + 1);
    Ok((4.0 * fine - coarse) / 3.0)
}
