//! One function per subcommand. Grid points are evaluated in parallel and
//! collected in order, so output is independent of the thread count.

use ctqmc_core::analysis::{
    optimal_initial_state, recurrence_classify, state_return_integral, Classification, IntegralValue,
};
use ctqmc_core::channels::{
    eigenbasis, half_identity_residual, superop_of, BasisOrigin, EigenChannelBasis, QubitDensity,
};
use ctqmc_core::generators::{default_truncation, Boundary, Geometry};
use ctqmc_core::kernels::{
    evolve_oracle, kernels_for, km_quadrature_oracle, scalar_kernel, site_block, site_probability, state_probability,
    KernelRequest,
};
use ctqmc_core::spectra::{scalar_measure, spectral_matrix_line, MeasureForm};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ProbMode, Resolved};
use crate::error::CliError;
use crate::output::{Cell, Report};

/// Largest oracle discrepancy accepted by `oracle-compare`.
pub const ORACLE_TOL: f64 = 1e-8;

/// Default number of density samples for `measure`.
pub const MEASURE_SAMPLES: usize = 101;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub verbose: bool,
    pub truncation: Option<usize>,
    pub mode: Option<ProbMode>,
}

/// A report, plus a failure to signal after the report has been written.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<CliError>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, failure: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

fn common_meta(report: &mut Report, r: &Resolved) {
    report.meta("channel", r.config.channel.name());
    report.meta("geometry", r.geometry.to_string());
    report.meta("config", serde_json::to_value(&r.config).unwrap_or(Value::Null));
}

fn origin_label(o: BasisOrigin) -> &'static str {
    match o {
        BasisOrigin::PqLabeled => "closed_form",
        BasisOrigin::Numeric => "numeric",
    }
}

fn lambdas_meta(basis: &EigenChannelBasis) -> Value {
    json!(basis.lambdas.to_vec())
}

fn bloch_meta(rho: &QubitDensity) -> Value {
    json!(rho.bloch().to_vec())
}

fn integral_cell(v: IntegralValue) -> Cell {
    match v {
        IntegralValue::Finite(x) => Cell::Num(x),
        IntegralValue::Infinite => Cell::Num(f64::INFINITY),
    }
}

pub fn channel_inspect(r: &Resolved, _opts: &Options) -> Result<Outcome, CliError> {
    let s = superop_of(&r.channel)?;
    let mut report = Report::new(&["quantity", "row", "col", "re", "im"]);
    common_meta(&mut report, r);
    report.meta("hermitian", s.is_hermitian);
    report.meta("pq", s.is_pq);
    for a in 0..4 {
        for b in 0..4 {
            let z = s.rep[(a, b)];
            report.push(vec!["rep".into(), (a as i64).into(), (b as i64).into(), z.re.into(), z.im.into()]);
        }
    }
    let scalar = |name: &str, v: f64| vec![name.into(), Cell::Int(0), Cell::Int(0), v.into(), 0.0.into()];
    report.push(scalar("hermitian_deviation", s.rep.hermitian_deviation()));
    report.push(scalar("normalization_residual", r.channel.normalization_residual()));
    report.push(scalar("half_identity_residual", half_identity_residual(&s.rep)));
    report.push(scalar("pq", if s.is_pq { 1.0 } else { 0.0 }));
    match eigenbasis(&s) {
        Ok(basis) => {
            report.meta("lambdas", lambdas_meta(&basis));
            report.meta("basis_origin", origin_label(basis.origin));
            for (k, &l) in basis.lambdas.iter().enumerate() {
                report.push(vec!["lambda".into(), (k as i64).into(), Cell::Int(0), l.into(), 0.0.into()]);
            }
            for a in 0..4 {
                for b in 0..4 {
                    let z = basis.basis[(a, b)];
                    report.push(vec!["basis".into(), (a as i64).into(), (b as i64).into(), z.re.into(), z.im.into()]);
                }
            }
        }
        Err(e) => report.warnings.push(format!("no eigenbasis: {e}")),
    }
    Ok(report.into())
}

pub fn prob(r: &Resolved, opts: &Options) -> Result<Outcome, CliError> {
    let basis = r.basis()?;
    let mode = opts.mode.unwrap_or(r.config.mode);
    let (i, j) = (r.config.sites.i, r.config.sites.j);
    let g = r.geometry;
    let mut cols = vec!["t", "value"];
    if opts.verbose {
        cols.extend(["kernel_1", "kernel_2", "kernel_3", "kernel_4"]);
    }
    let mut report = Report::new(&cols);
    common_meta(&mut report, r);
    report.meta("mode", if mode == ProbMode::Site { "site" } else { "state" });
    report.meta("i", i);
    report.meta("j", j);
    report.meta("density_bloch", bloch_meta(&r.density));
    report.meta("lambdas", lambdas_meta(&basis));
    let times = r.config.time.values();
    let raw: Vec<(f64, f64, [f64; 4])> = times
        .par_iter()
        .map(|&t| {
            let v = match mode {
                ProbMode::Site => site_probability(&basis, &g, &r.density, j, i, t)?,
                ProbMode::State => state_probability(&basis, &g, &r.density, j, i, &r.goal, t)?,
            };
            Ok((t, v, kernels_for(&basis.lambdas, &g, i, j, t)?))
        })
        .collect::<Result<_, CliError>>()?;
    for (t, v, k) in raw {
        let v = report.probability(v, || format!("t={t}"));
        let mut row = vec![Cell::Num(t), Cell::Num(v)];
        if opts.verbose {
            row.extend(k.iter().map(|&x| Cell::Num(x)));
        }
        report.push(row);
    }
    Ok(report.into())
}

pub fn recurrence(r: &Resolved, _opts: &Options) -> Result<Outcome, CliError> {
    let basis = r.basis()?;
    let i = r.config.sites.i;
    let v = recurrence_classify(&basis, &r.geometry, i, &r.density)?;
    let state = state_return_integral(&basis, &r.geometry, i, &r.density, &r.goal)?;
    let mut report = Report::new(&["site", "classification", "integral", "state_integral"]);
    common_meta(&mut report, r);
    report.meta("density_bloch", bloch_meta(&r.density));
    report.meta(
        "contributing_lambdas",
        Value::Array(v.contributing_lambdas.iter().map(|&(l, w)| json!([l, w])).collect()),
    );
    let class = match v.classification {
        Classification::Recurrent => "recurrent",
        Classification::Transient => "transient",
    };
    report.push(vec![Cell::Int(v.site), class.into(), integral_cell(v.integral), integral_cell(state)]);
    Ok(report.into())
}

pub fn optimize(r: &Resolved, _opts: &Options) -> Result<Outcome, CliError> {
    let basis = r.basis()?;
    let (i, j) = (r.config.sites.i, r.config.sites.j);
    let g = r.geometry;
    let mut report = Report::new(&[
        "t",
        "x_plus",
        "y_plus",
        "z_plus",
        "value_plus",
        "x_minus",
        "y_minus",
        "z_minus",
        "value_minus",
        "degenerate",
    ]);
    common_meta(&mut report, r);
    report.meta("i", i);
    report.meta("j", j);
    report.meta("method", origin_label(basis.origin));
    let times = r.config.time.values();
    let rows: Vec<_> = times
        .par_iter()
        .map(|&t| Ok((t, optimal_initial_state(&basis, &g, i, j, t, &r.goal)?)))
        .collect::<Result<_, CliError>>()?;
    for (t, opt) in rows {
        let hi = report.probability(opt.value_plus, || format!("t={t} value_plus"));
        let lo = report.probability(opt.value_minus, || format!("t={t} value_minus"));
        let (p, m) = (opt.rho_plus.bloch(), opt.rho_minus.bloch());
        report.push(vec![
            t.into(),
            p[0].into(),
            p[1].into(),
            p[2].into(),
            hi.into(),
            m[0].into(),
            m[1].into(),
            m[2].into(),
            lo.into(),
            Cell::Int(opt.degenerate as i64),
        ]);
    }
    Ok(report.into())
}

fn sample_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
}

pub fn measure(r: &Resolved, _opts: &Options) -> Result<Outcome, CliError> {
    let lambdas: Vec<f64> = match r.config.lambda {
        Some(l) => vec![l],
        None => {
            let mut ls = r.basis()?.lambdas.to_vec();
            ls.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
            ls
        }
    };
    let n = r.config.samples.unwrap_or(MEASURE_SAMPLES);
    let g = r.geometry;
    let mut report = Report::new(&["lambda", "kind", "x", "value"]);
    common_meta(&mut report, r);
    report.meta("samples", n);
    for l in lambdas {
        let l = l.clamp(-0.5, 0.5);
        if l == 0.0 {
            report.warnings.push("lambda = 0 has a degenerate measure; skipped".into());
            continue;
        }
        if g == Geometry::Line {
            let m = spectral_matrix_line(l)?;
            let (lo, hi) = m.support();
            for x in sample_points(lo, hi, n) {
                report.push(vec![l.into(), "psi11".into(), x.into(), m.psi11(x).into()]);
                report.push(vec![l.into(), "psi12".into(), x.into(), m.psi12(x).into()]);
                report.push(vec![l.into(), "psi22".into(), x.into(), m.psi22(x).into()]);
            }
            continue;
        }
        let m = scalar_measure(&g, l)?;
        match m.form() {
            MeasureForm::Atomic => {
                for &(x, w) in &m.atoms {
                    report.push(vec![l.into(), "atom".into(), x.into(), w.into()]);
                }
            }
            MeasureForm::AbsolutelyContinuous => {
                let (lo, hi) = m.support;
                for x in sample_points(lo, hi, n) {
                    report.push(vec![l.into(), "density".into(), x.into(), m.density(x).into()]);
                }
            }
        }
    }
    Ok(report.into())
}

/// Closed forms against the block matrix exponential and the Karlin-McGregor
/// quadrature along the time grid.
pub fn oracle_compare(r: &Resolved, opts: &Options) -> Result<Outcome, CliError> {
    let basis = r.basis()?;
    let g = r.geometry;
    let (i, j) = (r.config.sites.i, r.config.sites.j);
    let truncation =
        opts.truncation.or(r.config.truncation).unwrap_or_else(|| default_truncation(&g, &[i, j], r.config.time.max()));
    let mut report = Report::new(&["t", "block_error", "kernel_error"]);
    common_meta(&mut report, r);
    report.meta("truncation", truncation);
    report.meta("tolerance", ORACLE_TOL);
    let reach = i.max(j) + 5;
    let lo = if g == Geometry::Line { -reach } else { 0 };
    let hi = match g {
        Geometry::Segment { sites, .. } => (sites as i64 - 1).min(reach),
        _ => reach,
    };
    let times = r.config.time.values();
    let rows: Vec<(f64, f64, f64)> = times
        .par_iter()
        .map(|&t| {
            let blocks = evolve_oracle(&r.channel, &g, &r.density, j, t, truncation)?;
            let mut block_err: f64 = 0.0;
            for b in &blocks {
                let closed = site_block(&basis, &g, &r.density, j, b.site, t)?;
                block_err = block_err.max(closed.max_abs_diff(&b.block));
            }
            let mut kernel_err: f64 = 0.0;
            for &l in &basis.lambdas {
                for site in lo..=hi {
                    let req = KernelRequest::new(g, l, site, j, t)?;
                    kernel_err = kernel_err.max((scalar_kernel(&req) - km_quadrature_oracle(&req)).abs());
                }
            }
            Ok((t, block_err, kernel_err))
        })
        .collect::<Result<_, CliError>>()?;
    let mut worst: f64 = 0.0;
    for (t, b, k) in rows {
        worst = worst.max(b).max(k);
        report.push(vec![t.into(), b.into(), k.into()]);
    }
    report.meta("max_error", worst);
    let failure = (worst > ORACLE_TOL)
        .then(|| CliError::Tolerance(format!("max oracle error {worst:.3e} exceeds {ORACLE_TOL:e}")));
    Ok(Outcome { report, failure })
}

fn figure_label(g: &Geometry) -> String {
    match g {
        Geometry::HalfLine(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// Long-format series for the probability figures: absorbing half-line
/// (fig1), absorbing vs reflecting (fig2), and absorbing, line, reflecting
/// (fig3), each at `(i, j)` and `(i, i)`.
pub fn figure(r: &Resolved, fig: Figure, _opts: &Options) -> Result<Outcome, CliError> {
    let basis = r.basis()?;
    let geoms: Vec<Geometry> = match fig {
        Figure::Fig1 => vec![Geometry::HalfLine(Boundary::Absorbing)],
        Figure::Fig2 => vec![Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)],
        Figure::Fig3 => {
            vec![Geometry::HalfLine(Boundary::Absorbing), Geometry::Line, Geometry::HalfLine(Boundary::Reflecting)]
        }
    };
    let (i, j) = (r.config.sites.i, r.config.sites.j);
    let mut pairs = vec![(i, j)];
    if i != j {
        pairs.push((i, i));
    }
    let times = r.config.time.values();
    let mut tasks = Vec::new();
    for g in &geoms {
        for &(a, b) in &pairs {
            for &t in &times {
                tasks.push((*g, a, b, t));
            }
        }
    }
    let named =
        [("uniform_plus", QubitDensity::uniform_plus()), ("e22", QubitDensity::e22()), ("e11", QubitDensity::e11())];
    let values: Vec<Vec<(&str, f64)>> = tasks
        .par_iter()
        .map(|&(g, a, b, t)| {
            let opt = optimal_initial_state(&basis, &g, a, b, t, &r.goal)?;
            let mut out = vec![("rho_plus", opt.value_plus), ("rho_minus", opt.value_minus)];
            for (name, rho) in &named {
                out.push((name, state_probability(&basis, &g, rho, b, a, &r.goal, t)?));
            }
            out.push(("site", site_probability(&basis, &g, &r.density, b, a, t)?));
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    let mut report = Report::new(&["t", "i", "j", "geometry", "rho", "value"]);
    report.meta("figure", format!("{fig:?}").to_lowercase());
    report.meta("channel", r.config.channel.name());
    report.meta("config", serde_json::to_value(&r.config).unwrap_or(Value::Null));
    for ((g, a, b, t), vals) in tasks.iter().zip(values) {
        for (name, v) in vals {
            let v = report.probability(v, || format!("{g} i={a} j={b} t={t} {name}"));
            report.push(vec![
                Cell::Num(*t),
                Cell::Int(*a),
                Cell::Int(*b),
                figure_label(g).into(),
                name.into(),
                v.into(),
            ]);
        }
    }
    Ok(report.into())
}
