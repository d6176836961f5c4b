//! Table builders behind each subcommand. Every function here is pure and
//! returns [`CsvDocument`]s; file handling lives in the dispatcher.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use crate::classical_limit::{compare_quantum_classical, gaussian_limit, vector_model_density};
use crate::cli::csv::{Cell, CsvDocument};
use crate::coarse_grain::{discrete_average, local_average_grid, QuadratureSpec, Window};
use crate::error::{Error, Result};
use crate::model_densities::{
    pib_classical, pib_density, sho_classical, sho_density, sho_turning_point, BoxSpec,
    OscillatorSpec,
};
use crate::quantum_numbers::HalfInt;
use crate::sge::{
    adjacent_separation, deflection, mass_scaled_separation, min_mass_factor_for_resolution,
    SgeConfig, DEFLECTION_SIGN,
};
use crate::wigner_d::WignerD;
use crate::wigner_prob::{distribution, ensemble_distribution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Sum,
    Jacobi,
}

/// `[j, m_prime, m, beta, d, P]`, one row per element.
pub fn dmat(w: &WignerD<f64>, j: HalfInt, beta: f64, method: Method) -> Result<CsvDocument> {
    let table = match method {
        Method::Sum => w.matrix(j, beta)?,
        Method::Jacobi => w.matrix_jacobi(j, beta)?,
    };
    let mut doc = CsvDocument::new(["j", "m_prime", "m", "beta", "d", "P"]);
    for (mp, m, d) in table.iter() {
        doc.push(vec![
            j.into(),
            mp.into(),
            m.into(),
            beta.into(),
            d.into(),
            (d * d).min(1.0).into(),
        ]);
    }
    Ok(doc)
}

/// `[j, m, beta, m_prime, P]`; `m` is `all` for the uniform ensemble.
pub fn prob(w: &WignerD<f64>, j: HalfInt, m: Option<HalfInt>, beta: f64) -> Result<CsvDocument> {
    let table = match m {
        Some(m) => distribution(w, j, m, beta)?,
        None => ensemble_distribution(w, j, beta)?,
    };
    let m_cell = || m.map_or(Cell::from("all"), Cell::from);
    let mut doc = CsvDocument::new(["j", "m", "beta", "m_prime", "P"]);
    for (mp, p) in table.iter() {
        doc.push(vec![j.into(), m_cell(), beta.into(), mp.into(), p.into()]);
    }
    Ok(doc)
}

/// Comparison points followed by two summary rows (`max` and `rms`).
pub fn compare(
    w: &WignerD<f64>,
    j: HalfInt,
    m: HalfInt,
    beta: f64,
    coarse: bool,
) -> Result<CsvDocument> {
    let report = compare_quantum_classical(w, j, m, beta, coarse)?;
    let model = report.model.name();
    let mut doc = CsvDocument::new([
        "row",
        "m_prime",
        "quantum",
        "classical",
        "abs_error",
        "rel_error",
        "interior",
        "singular",
        "classical_model",
    ]);
    let flag = |b: bool| Cell::from(if b { "1" } else { "0" });
    for p in &report.points {
        doc.push(vec![
            "point".into(),
            p.position.into(),
            p.quantum.into(),
            p.classical.into(),
            p.abs_error.into(),
            p.rel_error.into(),
            flag(p.interior),
            flag(p.singular),
            model.into(),
        ]);
    }
    doc.push(vec![
        "max".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        report.max_abs_error.into(),
        report.max_rel_error_interior.into(),
        Cell::Empty,
        Cell::Empty,
        model.into(),
    ]);
    doc.push(vec![
        "rms".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        report.rms_rel_error_interior.into(),
        Cell::Empty,
        Cell::Empty,
        model.into(),
    ]);
    Ok(doc)
}

/// Defaults used when the optional SGE inputs are omitted.
pub const DEFAULT_MASS_FACTOR: f64 = 1e6;
pub const DEFAULT_RESOLUTION: f64 = 5e-11;

/// `[quantity, value, unit]`.
pub fn sge(config: &SgeConfig, mass_factor: f64, resolution: f64) -> Result<CsvDocument> {
    let w = deflection(config, config.hbar / 2.0)?;
    let mut doc = CsvDocument::new(["quantity", "value", "unit"]);
    let mut row = |q: &str, v: f64, unit: &str| doc.push(vec![q.into(), v.into(), unit.into()]);
    row("w", w.abs(), "m");
    row("2w", 2.0 * w.abs(), "m");
    row("separation", adjacent_separation(config)?, "m");
    row("mass_factor", mass_factor, "1");
    row(
        "scaled_separation",
        mass_scaled_separation(config, mass_factor)?,
        "m",
    );
    row("resolution", resolution, "m");
    row(
        "min_mass_factor",
        min_mass_factor_for_resolution(config, resolution)?,
        "1",
    );
    row("deflection_sign", DEFLECTION_SIGN, "1");
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Box,
    Oscillator,
}

/// Grid `[0, L]` at step `L/400`.
pub fn pib_grid(length: f64) -> Vec<f64> {
    (0..=400).map(|i| length * (i as f64 / 400.0)).collect()
}

/// Symmetric grid at step `x_t/200` reaching at least `1.25 x_t` and at least
/// three oscillator lengths past the turning point, so low levels keep their
/// tails. Generated as `x_t * (k/200)` so the turning points land exactly on
/// `+-x_t`. Lengths are in units of `sqrt(hbar / (m omega))`.
pub fn sho_grid(turning_point: f64) -> Vec<f64> {
    let half_width = (1.25 * turning_point).max(turning_point + 3.0);
    let k_max = (half_width / turning_point * 200.0).ceil() as i32;
    (-k_max..=k_max)
        .map(|k| turning_point * (k as f64 / 200.0))
        .collect()
}

/// `[x, P_qm, P_avg, P_classical]` for one box or oscillator level.
pub fn coarse(
    model: Model,
    n: u32,
    length: f64,
    delta: f64,
    quad: &QuadratureSpec,
) -> Result<CsvDocument> {
    let window = Window::new(delta)?;
    let mut doc = CsvDocument::new(["x", "P_qm", "P_avg", "P_classical"]);
    match model {
        Model::Box => {
            let bx = BoxSpec::new(length)?;
            pib_density(n, &bx, 0.0)?;
            let grid = pib_grid(length);
            let avg = local_average_grid(
                |x| pib_density(n, &bx, x).unwrap_or(0.0),
                &grid,
                &window,
                quad,
                format!("pib n={n}"),
            )?;
            for (&x, &a) in grid.iter().zip(avg.rho()) {
                doc.push(vec![
                    x.into(),
                    pib_density(n, &bx, x)?.into(),
                    a.into(),
                    pib_classical(&bx).into(),
                ]);
            }
        }
        Model::Oscillator => {
            let osc = OscillatorSpec::default();
            sho_density(n, &osc, 0.0)?;
            let grid = sho_grid(sho_turning_point(n, &osc));
            let avg = local_average_grid(
                |x| sho_density(n, &osc, x).unwrap_or(f64::NAN),
                &grid,
                &window,
                quad,
                format!("sho n={n}"),
            )?;
            for (&x, &a) in grid.iter().zip(avg.rho()) {
                doc.push(vec![
                    x.into(),
                    sho_density(n, &osc, x)?.into(),
                    a.into(),
                    sho_classical(n, &osc, x).into(),
                ]);
            }
        }
    }
    Ok(doc)
}

/// Which figure dataset to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

/// Overridable figure parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureParams {
    /// Angular momentum for fig3/fig6.
    pub j: HalfInt,
    /// Rotation angles for fig3.
    pub betas: Vec<f64>,
    /// Levels for fig4/fig5; `None` selects the per-figure default.
    pub levels: Option<Vec<u32>>,
    /// Box length for fig4.
    pub length: f64,
    /// Window width; `None` selects `0.1 L` for fig4 and `1` for fig5.
    pub delta: Option<f64>,
    pub quadrature: QuadratureSpec,
}

impl Default for FigureParams {
    fn default() -> Self {
        Self {
            j: HalfInt::from_int(20),
            betas: vec![0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2],
            levels: None,
            length: 1.0,
            delta: None,
            quadrature: QuadratureSpec::default(),
        }
    }
}

pub const FIG4_LEVELS: [u32; 4] = [1, 5, 20, 50];
pub const FIG5_LEVELS: [u32; 4] = [0, 5, 20, 50];
/// fig4 window as a fraction of the box length. A multiple of `L/n` for
/// n = 20 and 50, so those curves flatten exactly.
pub const FIG4_DELTA_FRACTION: f64 = 0.1;
pub const FIG5_DELTA: f64 = 1.0;

/// Named CSV documents for one figure.
pub fn figure(
    w: &WignerD<f64>,
    which: Figure,
    params: &FigureParams,
) -> Result<Vec<(String, CsvDocument)>> {
    match which {
        Figure::Fig3 => Ok(vec![("fig3.csv".into(), fig3(w, params)?)]),
        Figure::Fig4 => {
            let levels = params.levels.clone().unwrap_or(FIG4_LEVELS.to_vec());
            let delta = params.delta.unwrap_or(FIG4_DELTA_FRACTION * params.length);
            levels
                .into_iter()
                .map(|n| {
                    let doc = coarse(Model::Box, n, params.length, delta, &params.quadrature)?;
                    Ok((format!("fig4_n{n}.csv"), doc))
                })
                .collect()
        }
        Figure::Fig5 => {
            let levels = params.levels.clone().unwrap_or(FIG5_LEVELS.to_vec());
            let delta = params.delta.unwrap_or(FIG5_DELTA);
            levels
                .into_iter()
                .map(|n| {
                    let doc = coarse(Model::Oscillator, n, 1.0, delta, &params.quadrature)?;
                    Ok((format!("fig5_n{n}.csv"), doc))
                })
                .collect()
        }
        Figure::Fig6 => {
            let j = params.j;
            let mut out = Vec::new();
            if j.is_integer() {
                out.push(("fig6_m0.csv".to_string(), fig6(w, j, HalfInt::ZERO)?));
            }
            out.push((format!("fig6_m{}.csv", file_label(j)), fig6(w, j, j)?));
            Ok(out)
        }
    }
}

fn file_label(h: HalfInt) -> String {
    h.to_string().replace('/', "_")
}

fn fig3(w: &WignerD<f64>, params: &FigureParams) -> Result<CsvDocument> {
    let j = params.j;
    let ms = if j.twice() == 0 {
        vec![j]
    } else {
        vec![HalfInt::ZERO, j]
    };
    let mut doc = CsvDocument::new(["beta", "m", "m_prime", "P"]);
    for &beta in &params.betas {
        for &m in &ms {
            if !j.is_integer() && m == HalfInt::ZERO {
                continue;
            }
            for (mp, p) in distribution(w, j, m, beta)?.iter() {
                doc.push(vec![beta.into(), m.into(), mp.into(), p.into()]);
            }
        }
    }
    Ok(doc)
}

/// Integer `m'` rows carry the raw probability; midpoint rows carry the
/// two-point average. The classical column is evaluated at each row position.
fn fig6(w: &WignerD<f64>, j: HalfInt, m: HalfInt) -> Result<CsvDocument> {
    if j.twice() == 0 {
        return Err(Error::InvalidParameter("fig6 needs j > 0".into()));
    }
    let beta = FRAC_PI_2;
    let table = distribution(w, j, m, beta)?;
    let classical = |x: f64| {
        if m == HalfInt::ZERO {
            vector_model_density(j, x, m, beta)
        } else {
            gaussian_limit(j, x)
        }
    };
    let mut rows: Vec<(f64, Option<f64>, Option<f64>)> = table
        .iter()
        .map(|(mp, p)| (mp.to_f64(), Some(p), None))
        .collect();
    rows.extend(
        discrete_average(&table)?
            .into_iter()
            .map(|(x, a)| (x, None, Some(a))),
    );
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut doc = CsvDocument::new(["m_prime_or_midpoint", "P_qm", "P_avg", "P_classical"]);
    for (x, q, a) in rows {
        doc.push(vec![x.into(), q.into(), a.into(), classical(x).into()]);
    }
    Ok(doc)
}
