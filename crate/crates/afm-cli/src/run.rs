//! The five commands. Each returns the rendered artifact as a string;
//! every numeric path is sequential and deterministic, so identical
//! configurations produce byte-identical output.

use afm_core::calibration::{
    chi_beta, model_nc, model_nho, model_set1, model_set2, run_family, ConstraintSet, FitReport,
    ModelKind, NLevelModel,
};
use afm_core::closed_form::reduced_afm_energy;
use afm_core::engine::NValue;
use afm_core::potentials::{
    reduce, Family, Formulation, PotentialSpec, QuantumNumbers, ReducedProblem, Sign,
};
use afm_core::spectral::{eigenvalues, EigenTable, Problem, SolverConfig};
use afm_core::{Error, Result};
use serde_json::json;

use crate::config::{Command, ModelChoice, OutputFormat, ProblemInput, RunConfig};
use crate::render::{csv, format_sig, text_table};

pub fn run(cfg: &RunConfig) -> Result<String> {
    match cfg.command {
        Command::Spectrum => cmd_spectrum(cfg),
        Command::Afm => cmd_afm(cfg),
        Command::Compare => cmd_compare(cfg),
        Command::Fit => cmd_fit(cfg),
        Command::Tables => cmd_tables(cfg),
    }
}

/// Solvable target: the reduced problem, the factor taking reduced energies
/// back to the caller's units (1 for β input), and the physical potential
/// when the input was physical.
struct Target {
    red: ReducedProblem,
    scale: f64,
    physical: Option<PotentialSpec>,
}

impl Target {
    fn beta_label(&self) -> String {
        if self.physical.is_some() {
            String::new()
        } else {
            self.red.beta.to_string()
        }
    }
}

fn physical_spec(
    family: Family,
    m: f64,
    a: f64,
    b: Option<f64>,
    sign: Sign,
) -> Result<PotentialSpec> {
    match family {
        Family::Kratzer => PotentialSpec::kratzer(m, a),
        Family::QuadCentrifugal => {
            PotentialSpec::quad_centrifugal(m, a, b.expect("validated"), sign)
        }
        Family::Anharmonic => PotentialSpec::anharmonic(m, a, b.expect("validated")),
        Family::QuadCoulomb => PotentialSpec::quad_coulomb(m, a, b.expect("validated")),
        Family::Funnel => PotentialSpec::funnel(m, a, b.expect("validated")),
        other => Err(Error::UnsupportedReduction(format!("{other} has no single-parameter form"))),
    }
}

fn target(cfg: &RunConfig) -> Result<Target> {
    let family = cfg.family.expect("validated");
    match cfg.problem.expect("validated") {
        ProblemInput::Beta(beta) => {
            let red = ReducedProblem::with_sign(family, beta, cfg.formulation, cfg.sign)?;
            Ok(Target { red, scale: 1.0, physical: None })
        }
        ProblemInput::Physical { m, a, b } => {
            let spec = physical_spec(family, m, a, b, cfg.sign)?;
            let (red, scale) = reduce(&spec, cfg.formulation)?;
            Ok(Target { red, scale, physical: Some(spec) })
        }
    }
}

fn levels(cfg: &RunConfig) -> Vec<QuantumNumbers> {
    match cfg.level {
        Some(q) => vec![q],
        None => QuantumNumbers::window(cfg.window.0, cfg.window.1),
    }
}

fn solver_config(cfg: &RunConfig) -> SolverConfig {
    SolverConfig { mesh_size: cfg.mesh_size, ..SolverConfig::default() }
}

/// The base-problem level count is the default: Coulomb counting for the
/// Coulomb-started families, oscillator counting otherwise.
fn resolve_model(cfg: &RunConfig, family: Family) -> Result<(String, NLevelModel)> {
    match &cfg.nmodel {
        None => Ok(match (family, cfg.formulation) {
            (Family::Kratzer | Family::Funnel, _) | (Family::QuadCoulomb, Formulation::Eta) => {
                ("nc".to_string(), model_nc())
            }
            _ => ("nho".to_string(), model_nho()),
        }),
        Some(ModelChoice::Named(name)) => {
            let model = match name.as_str() {
                "nho" => model_nho(),
                "nc" => model_nc(),
                "set1" => model_set1(family)?,
                "set2" => model_set2(family)?,
                other => return Err(Error::FitFailed(format!("unknown model name {other:?}"))),
            };
            Ok((name.clone(), model))
        }
        Some(ModelChoice::Explicit(m)) => Ok(("custom".to_string(), m.clone())),
    }
}

fn solve_numeric(t: &Target, q: &[QuantumNumbers], scfg: &SolverConfig) -> Result<EigenTable> {
    match &t.physical {
        Some(spec) => eigenvalues(&Problem::Physical(spec.clone()), q, scfg),
        None => eigenvalues(&Problem::Reduced(t.red), q, scfg),
    }
}

fn context_lines(cfg: &RunConfig, t: &Target, model: Option<&str>) -> String {
    let mut out = format!("family = {}\n", t.red.family);
    match &t.physical {
        Some(spec) => {
            let mut parts = vec![format!("mass = {}", spec.mass)];
            for term in &spec.terms {
                parts.push(format!("{}r^{}: {}", term.sign.value(), term.exp, term.coeff));
            }
            out.push_str(&format!("potential: {}\n", parts.join(", ")));
        }
        None => out.push_str(&format!("beta = {}\n", t.red.beta)),
    }
    out.push_str(&format!("formulation = {}\n", t.red.formulation));
    if t.red.family == Family::QuadCentrifugal {
        out.push_str(&format!(
            "sign = {}\n",
            if cfg.sign == Sign::Plus { "plus" } else { "minus" }
        ));
    }
    if let Some(name) = model {
        out.push_str(&format!("model = {name}\n"));
    }
    out
}

fn json_context(cfg: &RunConfig, t: &Target) -> serde_json::Value {
    json!({
        "family": t.red.family,
        "beta": t.physical.is_none().then_some(t.red.beta),
        "formulation": t.red.formulation,
        "sign": (t.red.family == Family::QuadCentrifugal)
            .then_some(if cfg.sign == Sign::Plus { "plus" } else { "minus" }),
        "physical": t.physical.as_ref().map(|s| json!({
            "mass": s.mass,
            "terms": s.terms.iter().map(|term| json!({
                "sign": term.sign.value(),
                "coeff": term.coeff,
                "exp": term.exp,
            })).collect::<Vec<_>>(),
        })),
    })
}

fn cmd_spectrum(cfg: &RunConfig) -> Result<String> {
    let t = target(cfg)?;
    let table = solve_numeric(&t, &levels(cfg), &solver_config(cfg))?;
    Ok(match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => {
            let mut ctx = json_context(cfg, &t);
            ctx["entries"] = table
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "n": e.q.n,
                        "l": e.q.l,
                        "energy": e.energy,
                        "accuracy": e.accuracy,
                        "provenance": e.provenance.name(),
                    })
                })
                .collect();
            pretty(&ctx)
        }
        OutputFormat::Text => {
            let rows: Vec<Vec<String>> = table
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.q.n.to_string(),
                        e.q.l.to_string(),
                        format_sig(e.energy, cfg.digits),
                        format_sig(e.accuracy, cfg.digits),
                    ]
                })
                .collect();
            format!(
                "{}\n{}",
                context_lines(cfg, &t, None),
                text_table(&["n", "l", "energy", "accuracy"], &rows)
            )
        }
    })
}

struct AfmRow {
    q: QuantumNumbers,
    nvalue: f64,
    energy: f64,
}

fn afm_rows(t: &Target, model: &NLevelModel, q_list: &[QuantumNumbers]) -> Result<Vec<AfmRow>> {
    q_list
        .iter()
        .map(|&q| {
            let nv = NValue::new(model.n_of(t.red.beta, q))?;
            let eps = reduced_afm_energy(&t.red, nv)?;
            Ok(AfmRow { q, nvalue: nv.value(), energy: t.scale * eps })
        })
        .collect()
}

fn cmd_afm(cfg: &RunConfig) -> Result<String> {
    let t = target(cfg)?;
    let (model_name, model) = resolve_model(cfg, t.red.family)?;
    let rows = afm_rows(&t, &model, &levels(cfg))?;
    Ok(match cfg.format {
        OutputFormat::Csv => {
            let beta = t.beta_label();
            let data: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        t.red.family.to_string(),
                        beta.clone(),
                        t.red.formulation.to_string(),
                        model_name.clone(),
                        r.q.n.to_string(),
                        r.q.l.to_string(),
                        r.nvalue.to_string(),
                        r.energy.to_string(),
                    ]
                })
                .collect();
            csv("family,beta,formulation,model,n,l,nvalue,energy", &data)
        }
        OutputFormat::Json => {
            let mut ctx = json_context(cfg, &t);
            ctx["model-name"] = json!(model_name);
            ctx["model"] = serde_json::to_value(&model).expect("model serializes");
            ctx["entries"] = rows
                .iter()
                .map(|r| json!({"n": r.q.n, "l": r.q.l, "nvalue": r.nvalue, "energy": r.energy}))
                .collect();
            pretty(&ctx)
        }
        OutputFormat::Text => {
            // A single requested level prints as a bare number.
            if cfg.level.is_some() {
                format!("{}\n", format_sig(rows[0].energy, cfg.digits))
            } else {
                let data: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.q.n.to_string(),
                            r.q.l.to_string(),
                            format_sig(r.nvalue, cfg.digits),
                            format_sig(r.energy, cfg.digits),
                        ]
                    })
                    .collect();
                format!(
                    "{}\n{}",
                    context_lines(cfg, &t, Some(&model_name)),
                    text_table(&["n", "l", "N", "energy"], &data)
                )
            }
        }
    })
}

fn load_numeric(path: &std::path::Path, t: &Target) -> Result<EigenTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::IncompleteTable(format!("cannot read {}: {e}", path.display())))?;
    let table = EigenTable::from_csv(&text)?;
    let want_beta = t.physical.is_none().then_some(t.red.beta);
    let want_form = t.physical.is_none().then_some(t.red.formulation);
    if table.family != t.red.family || table.beta != want_beta || table.formulation != want_form {
        return Err(Error::IncompleteTable(format!(
            "table context mismatch: file has family={}, beta={:?}, formulation={:?}; \
             the run asks for family={}, beta={:?}, formulation={:?}",
            table.family, table.beta, table.formulation, t.red.family, want_beta, want_form
        )));
    }
    Ok(table)
}

fn cmd_compare(cfg: &RunConfig) -> Result<String> {
    let t = target(cfg)?;
    let (model_name, model) = resolve_model(cfg, t.red.family)?;
    let q_list = levels(cfg);
    let numeric = match &cfg.numeric_csv {
        Some(path) => load_numeric(path, &t)?,
        None => solve_numeric(&t, &q_list, &solver_config(cfg))?,
    };
    let approx = afm_rows(&t, &model, &q_list)?;
    let mut rows = Vec::with_capacity(q_list.len());
    let mut sum = 0.0;
    for r in &approx {
        let e_num = numeric.energy(r.q)?;
        let dev = r.energy - e_num;
        sum += dev * dev;
        rows.push((r.q, e_num, r.energy, dev, dev / e_num.abs().max(1e-300)));
    }
    let chi = sum / rows.len() as f64;
    Ok(match cfg.format {
        OutputFormat::Csv => {
            let beta = t.beta_label();
            let data: Vec<Vec<String>> = rows
                .iter()
                .map(|(q, num, app, dev, rel)| {
                    vec![
                        t.red.family.to_string(),
                        beta.clone(),
                        t.red.formulation.to_string(),
                        model_name.clone(),
                        q.n.to_string(),
                        q.l.to_string(),
                        num.to_string(),
                        app.to_string(),
                        dev.to_string(),
                        rel.to_string(),
                        chi.to_string(),
                    ]
                })
                .collect();
            csv("family,beta,formulation,model,n,l,numeric,approx,abs-dev,rel-dev,chi", &data)
        }
        OutputFormat::Json => {
            let mut ctx = json_context(cfg, &t);
            ctx["model-name"] = json!(model_name);
            ctx["rows"] = rows
                .iter()
                .map(|(q, num, app, dev, rel)| {
                    json!({
                        "n": q.n,
                        "l": q.l,
                        "numeric": num,
                        "approx": app,
                        "abs-dev": dev,
                        "rel-dev": rel,
                    })
                })
                .collect();
            ctx["chi"] = json!(chi);
            pretty(&ctx)
        }
        OutputFormat::Text => {
            let data: Vec<Vec<String>> = rows
                .iter()
                .map(|(q, num, app, dev, rel)| {
                    vec![
                        q.n.to_string(),
                        q.l.to_string(),
                        format_sig(*num, cfg.digits),
                        format_sig(*app, cfg.digits),
                        format_sig(*dev, cfg.digits),
                        format_sig(*rel, cfg.digits),
                    ]
                })
                .collect();
            format!(
                "{}\n{}chi = {}\n",
                context_lines(cfg, &t, Some(&model_name)),
                text_table(&["n", "l", "numeric", "approx", "abs-dev", "rel-dev"], &data),
                format_sig(chi, cfg.digits)
            )
        }
    })
}

fn cmd_fit(cfg: &RunConfig) -> Result<String> {
    let family = cfg.family.expect("validated");
    let report = run_family(family, cfg.constraints, &solver_config(cfg))?;
    Ok(match cfg.format {
        OutputFormat::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
        // Plot data: the pointwise minima next to the fitted curves.
        OutputFormat::Csv => {
            let data: Vec<Vec<String>> = report
                .minima
                .iter()
                .map(|m| {
                    vec![
                        m.beta.to_string(),
                        m.b.to_string(),
                        m.c.to_string(),
                        m.chi.to_string(),
                        report.model.b(m.beta).to_string(),
                        report.model.c(m.beta).to_string(),
                    ]
                })
                .collect();
            csv("beta,b-min,c-min,chi-min,b-fit,c-fit", &data)
        }
        OutputFormat::Text => fit_text(cfg, &report),
    })
}

fn fit_text(cfg: &RunConfig, report: &FitReport) -> String {
    let d = cfg.digits;
    let params = |p: [f64; 3]| p.iter().map(|x| format_sig(*x, d)).collect::<Vec<_>>().join(", ");
    let kind = |k: ModelKind| match k {
        ModelKind::Constant => "constant",
        ModelKind::Hyperbola => "hyperbola",
        ModelKind::ExpCubic => "exp-cubic",
        ModelKind::Gaussian => "gaussian",
    };
    format!(
        "family = {}\nconstraints = {}\n\
         b channel: {} with p = [{}], distortion = {}\n\
         c channel: {} with q = [{}], distortion = {}\n",
        report.family,
        if report.set == ConstraintSet::Set1 { "set1" } else { "set2" },
        kind(report.model.b_kind),
        params(report.model.b_params),
        format_sig(report.distortion_b, d),
        kind(report.model.c_kind),
        params(report.model.c_params),
        format_sig(report.distortion_c, d),
    )
}

type ModelColumns = Vec<(&'static str, NLevelModel)>;

/// β rows and model columns of the printed deviation summaries.
fn chi_models(family: Family) -> Result<(ModelColumns, Vec<f64>)> {
    let models = match family {
        Family::Anharmonic => {
            vec![("nho", model_nho()), ("set1", model_set1(family)?), ("set2", model_set2(family)?)]
        }
        Family::QuadCoulomb => vec![
            ("nho", model_nho()),
            ("nc", model_nc()),
            ("set1", model_set1(family)?),
            ("set2", model_set2(family)?),
        ],
        Family::Funnel => {
            vec![("nc", model_nc()), ("set1", model_set1(family)?), ("set2", model_set2(family)?)]
        }
        other => return Err(Error::FamilyMismatch(format!("no calibration recipe for {other}"))),
    };
    let betas = match family {
        Family::Anharmonic => vec![0.1, 1.0, 10.0],
        _ => vec![0.5, 1.0, 2.0],
    };
    Ok((models, betas))
}

fn cmd_tables(cfg: &RunConfig) -> Result<String> {
    let families = match cfg.family {
        Some(f) => vec![f],
        None => vec![Family::Anharmonic, Family::QuadCoulomb, Family::Funnel],
    };
    let scfg = solver_config(cfg);
    let mut blocks = Vec::new();
    for family in families {
        let (models, betas) = chi_models(family)?;
        let mut rows = Vec::new();
        for &beta in &betas {
            let red = ReducedProblem::new(family, beta, Formulation::Epsilon)?;
            let numeric =
                eigenvalues(&Problem::Reduced(red), &QuantumNumbers::window(3, 3), &scfg)?;
            let chis = models
                .iter()
                .map(|(_, m)| chi_beta(family, beta, m, &numeric))
                .collect::<Result<Vec<f64>>>()?;
            rows.push((beta, chis));
        }
        blocks.push((family, models, rows));
    }
    Ok(match cfg.format {
        OutputFormat::Csv => {
            let mut data = Vec::new();
            for (family, models, rows) in &blocks {
                for (beta, chis) in rows {
                    for ((name, _), chi) in models.iter().zip(chis) {
                        data.push(vec![
                            family.to_string(),
                            beta.to_string(),
                            name.to_string(),
                            chi.to_string(),
                        ]);
                    }
                }
            }
            csv("family,beta,model,chi", &data)
        }
        OutputFormat::Json => {
            let value: Vec<serde_json::Value> = blocks
                .iter()
                .map(|(family, models, rows)| {
                    json!({
                        "family": family.name(),
                        "models": models.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
                        "rows": rows.iter().map(|(beta, chis)| {
                            json!({"beta": beta, "chi": chis})
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&json!(value))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (i, (family, models, rows)) in blocks.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("family = {family}\n"));
                let mut headers = vec!["beta"];
                headers.extend(models.iter().map(|(n, _)| *n));
                let data: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(beta, chis)| {
                        let mut row = vec![beta.to_string()];
                        row.extend(chis.iter().map(|c| format_sig(*c, cfg.digits)));
                        row
                    })
                    .collect();
                out.push_str(&text_table(&headers, &data));
            }
            out
        }
    })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json serializes");
    out.push('\n');
    out
}
