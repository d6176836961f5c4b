//! Acceptance gate. Prints one `[PASS]`/`[FAIL]` line per criterion with the
//! measured quantity and exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::panic;
use std::process::{Command, ExitCode};
use std::time::Instant;

use wigcl::classical_limit::{compare_quantum_classical, gaussian_limit};
use wigcl::coarse_grain::{local_average, QuadratureSpec, Window};
use wigcl::model_densities::{pib_density, sho_classical, sho_density, sho_turning_point};
use wigcl::sge::{deflection, mass_scaled_separation, SgeConfig};
use wigcl::wigner_prob::{
    closed_form_probability, closed_form_representatives, distribution, ensemble_distribution,
    probability,
};
use wigcl::{m_range, wigner, Box1d, HalfInt, Oscillator};

const BETAS: [f64; 7] = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2, 2.0, PI];

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn criterion_01_sge_split() -> (bool, String) {
    let config = SgeConfig::default();
    let start = Instant::now();
    let w = deflection(&config, config.hbar / 2.0).unwrap();
    let elapsed = start.elapsed();
    let split_mm = 2.0 * w.abs() * 1e3;
    (
        (0.155..=0.160).contains(&split_mm) && elapsed.as_secs_f64() < 1e-3,
        format!("2|w| = {split_mm:.5} mm in {elapsed:?} (need [0.155, 0.160] mm, < 1 ms)"),
    )
}

fn criterion_02_closed_forms() -> (bool, String) {
    let w = wigner();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for tj in 1..=4 {
        let j = HalfInt::from_twice(tj);
        for (mp, m) in closed_form_representatives(j).unwrap() {
            for beta in BETAS {
                let got = probability(w, j, mp, m, beta).unwrap();
                let want = closed_form_probability(j, mp, m, beta).unwrap();
                worst = worst.max((got - want).abs());
                cases += 1;
            }
        }
    }
    (
        worst <= 1e-12,
        format!("{cases} cases, max |P - closed form| = {worst:.3e} (need <= 1e-12)"),
    )
}

fn criterion_03_unitarity() -> (bool, String) {
    let w = wigner();
    let mut worst = (0.0f64, HalfInt::ZERO, HalfInt::ZERO, 0.0);
    for tj in 0..=50 {
        let j = HalfInt::from_twice(tj);
        let mut ms = vec![-j, j];
        if j.is_integer() {
            ms.push(HalfInt::ZERO);
        } else {
            ms.extend([HalfInt::HALF, -HalfInt::HALF]);
        }
        for m in ms {
            for beta in BETAS {
                let err = (distribution(w, j, m, beta).unwrap().total() - 1.0).abs();
                if err > worst.0 {
                    worst = (err, j, m, beta);
                }
            }
        }
    }
    let (err, j, m, beta) = worst;
    (
        err <= 1e-10,
        format!("max |sum P - 1| = {err:.3e} at j={j}, m={m}, beta={beta:.4} (need <= 1e-10)"),
    )
}

fn criterion_04_cross_formula() -> (bool, String) {
    let w = wigner();
    let mut worst = 0.0f64;
    for j in [5, 10, 20] {
        let j = HalfInt::from_int(j);
        for beta in [0.3, FRAC_PI_2, 2.8] {
            let a = w.matrix(j, beta).unwrap();
            let b = w.matrix_jacobi(j, beta).unwrap();
            for (x, y) in a.elements().iter().zip(b.elements()) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    (
        worst <= 1e-8,
        format!("max |d_sum - d_jacobi| = {worst:.3e} (need <= 1e-8)"),
    )
}

fn criterion_05_gaussian_limit() -> (bool, String) {
    let j = HalfInt::from_int(20);
    let d = distribution(wigner(), j, j, FRAC_PI_2).unwrap();
    let worst = d
        .iter()
        .map(|(mp, p)| (p - gaussian_limit(j, mp.to_f64())).abs())
        .fold(0.0f64, f64::max);
    let p0 = d.get(HalfInt::ZERO).unwrap();
    let oracle = binom(40, 20) / 2f64.powi(40);
    let spot = (p0 - oracle).abs();
    (worst <= 0.005 && spot <= 1e-12,
        format!(
            "max |P - gaussian| = {worst:.3e} (need <= 0.005), P(0) = {p0:.12} vs C(40,20)/2^40, diff {spot:.1e}"
        ),
    )
}

fn criterion_06_vector_model() -> (bool, String) {
    let report = compare_quantum_classical(
        wigner(),
        HalfInt::from_int(20),
        HalfInt::ZERO,
        FRAC_PI_2,
        true,
    )
    .unwrap();
    let rel: Vec<f64> = report
        .points
        .iter()
        .filter(|p| p.position.abs() <= 16.0)
        .map(|p| p.rel_error)
        .collect();
    let max = rel.iter().copied().fold(0.0f64, f64::max);
    let rms = (rel.iter().map(|r| r * r).sum::<f64>() / rel.len() as f64).sqrt();
    (
        !rel.is_empty() && max <= 0.15 && rms <= 0.05,
        format!(
            "{} midpoints, max rel {max:.4}, rms rel {rms:.4} (need <= 0.15, <= 0.05)",
            rel.len()
        ),
    )
}

fn criterion_07_box_flattening() -> (bool, String) {
    let bx = Box1d::default();
    let quad = QuadratureSpec::default();
    let n = 20;
    let mut worst = 0.0f64;
    for k in [1.0, 2.0] {
        let delta = k / 20.0;
        let window = Window::new(delta).unwrap();
        for i in 0..50 {
            let x = delta / 2.0 + (1.0 - delta) * (i as f64 + 0.5) / 50.0;
            let avg =
                local_average(|y| pib_density(n, &bx, y).unwrap(), x, &window, &quad).unwrap();
            worst = worst.max((avg - 1.0).abs());
        }
    }
    (
        worst <= 1e-5,
        format!("max |<P> - 1/L| = {worst:.3e} over 100 points (need <= 1e-5)"),
    )
}

fn criterion_08_oscillator_convergence() -> (bool, String) {
    let osc = Oscillator::default();
    let n = 20;
    let xt = sho_turning_point(n, &osc);
    let window = Window::new(1.0).unwrap();
    let quad = QuadratureSpec::default();
    let mut worst = (0.0f64, 0.0);
    let mut count = 0;
    for k in -250..=250 {
        let x = xt * k as f64 / 200.0;
        if x.abs() > 0.8 * xt {
            continue;
        }
        let avg = local_average(|y| sho_density(n, &osc, y).unwrap(), x, &window, &quad).unwrap();
        let err = (avg - sho_classical(n, &osc, x)).abs();
        if err > worst.0 {
            worst = (err, x);
        }
        count += 1;
    }
    let (err, x) = worst;
    (err <= 0.01,
        format!(
            "{count} points, max |<P> - P_classical| = {err:.4} at x = {x:.3} ({:.3} x_t) (need <= 0.01)",
            x / xt
        ),
    )
}

fn criterion_09_ensemble_flatness() -> (bool, String) {
    let j = HalfInt::from_int(20);
    let table = ensemble_distribution(wigner(), j, FRAC_PI_2).unwrap();
    let worst = table
        .p
        .iter()
        .map(|p| (p - 1.0 / 41.0).abs())
        .fold(0.0f64, f64::max);
    (
        table.p.len() == m_range(j).unwrap().len() && worst <= 1e-10,
        format!("max |P - 1/41| = {worst:.3e} (need <= 1e-10)"),
    )
}

fn criterion_10_mass_scaling() -> (bool, String) {
    let s = mass_scaled_separation(&SgeConfig::default(), 1e6).unwrap();
    (
        (1.5e-10..=1.6e-10).contains(&s),
        format!("separation at 1e6 x mass = {s:.4e} m (need [1.5e-10, 1.6e-10])"),
    )
}

fn criterion_11_figure_determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_wigcl");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let status = Command::new(bin)
            .args(["figure", "fig6", "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    let mut names: Vec<_> = std::fs::read_dir(dirs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    let identical = !names.is_empty()
        && names.iter().all(|name| {
            let a = std::fs::read(dirs[0].path().join(name)).unwrap();
            let b = std::fs::read(dirs[1].path().join(name));
            b.map(|b| a == b).unwrap_or(false)
        });
    (
        identical,
        format!("{} fig6 files compared byte for byte", names.len()),
    )
}

type Criterion = fn() -> (bool, String);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        criterion_01_sge_split,
        criterion_02_closed_forms,
        criterion_03_unitarity,
        criterion_04_cross_formula,
        criterion_05_gaussian_limit,
        criterion_06_vector_model,
        criterion_07_box_flattening,
        criterion_08_oscillator_convergence,
        criterion_09_ensemble_flatness,
        criterion_10_mass_scaling,
        criterion_11_figure_determinism,
    ];
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let (pass, detail) =
            panic::catch_unwind(criterion).unwrap_or_else(|_| (false, "panicked".to_string()));
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {detail}", i + 1);
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
