use depol_core::kernels::{k_components, u_components, CutoffProfile, KernelRoute, ProfileShape};
use depol_core::meanfield::{
    branch_frequencies, critical_density_by_bisection, critical_density_ratio, dispersion, ContactStrength,
    DispersionInput,
};
use depol_core::microsim::{stability_scan, ScanParams};
use depol_core::physcore::dicke_density;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    KernelCheck,
    Shift,
    Dispersion,
    Critical,
    Microsim,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::KernelCheck => "kernel-check",
            Command::Shift => "shift",
            Command::Dispersion => "dispersion",
            Command::Critical => "critical",
            Command::Microsim => "microsim",
        }
    }
}

pub fn run_sweep(config: &RunConfig, command: Command) -> Result<SweepResult, CliError> {
    match command {
        Command::KernelCheck => kernel_check(config),
        Command::Shift => shift(config),
        Command::Dispersion => dispersion_sweep(config),
        Command::Critical => critical(config),
        Command::Microsim => microsim(config),
    }
}

fn error_cell(e: Option<&depol_core::Error>) -> Cell {
    Cell::Text(e.map(|e| e.to_string()).unwrap_or_default())
}

/// Fills the row with NaN outputs and records the failure.
fn failed_row(result: &mut SweepResult, mut inputs: Vec<Cell>, e: depol_core::Error) {
    let width = result.header.len();
    while inputs.len() < width - 1 {
        inputs.push(Cell::Float(f64::NAN));
    }
    inputs.push(error_cell(Some(&e)));
    result.rows.push(inputs);
    result.note_error(e.into());
}

/// The contact strength of the configured pair distribution.
fn contact(config: &RunConfig) -> Result<ContactStrength, depol_core::Error> {
    match config.rdf.distribution() {
        None => Ok(ContactStrength::none()),
        Some(g) => ContactStrength::from_model(&g, &config.profile()),
    }
}

fn kernel_check(config: &RunConfig) -> Result<SweepResult, CliError> {
    let mut result = SweepResult::new(vec![
        "shape",
        "r_over_ell",
        "kt_spectral",
        "kl_spectral",
        "kt_real",
        "kl_real",
        "trace_k",
        "two_gamma",
        "trace_residual_over_gamma0",
        "route_difference_over_gamma0",
        "ut",
        "ul",
        "error",
    ]);
    let tasks: Vec<(ProfileShape, f64)> = config
        .kernel_shapes
        .iter()
        .flat_map(|&s| {
            (0..config.kernel_samples)
                .map(move |i| (s, config.kernel_r_max_over_ell * i as f64 / (config.kernel_samples - 1) as f64))
        })
        .collect();
    let rows: Vec<_> = tasks
        .par_iter()
        .map(|&(shape, x)| {
            let p = CutoffProfile::new(shape, config.ell)?;
            let r = x * config.ell;
            let g0 = p.big_gamma_r(0.0)?;
            let spectral = k_components(&p, r, KernelRoute::Spectral)?;
            let real = k_components(&p, r, KernelRoute::RealSpace)?;
            let two_gamma = 2.0 * p.big_gamma_r(r)?;
            let u = if r > 0.0 {
                let u = u_components(&p, r, KernelRoute::RealSpace)?;
                (u.transverse, u.longitudinal)
            } else {
                (f64::NAN, f64::NAN)
            };
            let diff = (spectral.transverse - real.transverse)
                .abs()
                .max((spectral.longitudinal - real.longitudinal).abs());
            Ok(vec![
                spectral.transverse,
                spectral.longitudinal,
                real.transverse,
                real.longitudinal,
                spectral.trace(),
                two_gamma,
                (spectral.trace() - two_gamma).abs() / g0,
                diff / g0,
                u.0,
                u.1,
            ])
        })
        .collect();
    for (&(shape, x), row) in tasks.iter().zip(rows) {
        let inputs = vec![Cell::Text(shape.to_string()), Cell::Float(x)];
        match row {
            Ok(values) => {
                let mut cells = inputs;
                cells.extend(values.into_iter().map(Cell::Float));
                cells.push(error_cell(None));
                result.rows.push(cells);
            }
            Err(e) => failed_row(&mut result, inputs, e),
        }
    }
    Ok(result)
}

fn shift(config: &RunConfig) -> Result<SweepResult, CliError> {
    let mut result = SweepResult::new(vec![
        "density_over_nD",
        "overlap_J",
        "g0",
        "shift_coefficient",
        "varsigma",
        "error",
    ]);
    let c = contact(config);
    for &r in &config.density_grid {
        let row = c.clone().and_then(|c| Ok((c, c.shift(r)?)));
        match row {
            Ok((c, s)) => result.rows.push(vec![
                Cell::Float(r),
                Cell::Float(c.overlap),
                Cell::Float(c.g_at_origin),
                Cell::Float(c.shift_coefficient()),
                Cell::Float(s),
                error_cell(None),
            ]),
            Err(e) => failed_row(&mut result, vec![Cell::Float(r)], e),
        }
    }
    Ok(result)
}

fn residual(s2: f64, input: &DispersionInput) -> f64 {
    // at n = 0 the roots sit on the poles where D is undefined
    dispersion(Complex64::new(s2, 0.0), input).map_or(f64::NAN, |d| d.norm())
}

fn dispersion_sweep(config: &RunConfig) -> Result<SweepResult, CliError> {
    let mut result = SweepResult::new(vec![
        "omega",
        "Omega",
        "density_over_nD",
        "varsigma",
        "s2_plus",
        "s2_minus",
        "s2_plus_over_omega_Omega",
        "s2_minus_over_omega_Omega",
        "residual_plus",
        "residual_minus",
        "stable",
        "error",
    ]);
    let c = contact(config);
    let tasks: Vec<(f64, f64)> = config
        .mode_omegas
        .iter()
        .flat_map(|&m| config.density_grid.iter().map(move |&r| (m, r)))
        .collect();
    let rows: Vec<_> = tasks
        .par_iter()
        .map(|&(mode, r)| {
            let input = DispersionInput::self_consistent(config.omega, mode, r, c.as_ref().map_err(Clone::clone)?)?;
            let b = branch_frequencies(&input)?;
            Ok((input, b))
        })
        .collect();
    for (&(mode, r), row) in tasks.iter().zip(rows) {
        let inputs = vec![Cell::Float(config.omega), Cell::Float(mode), Cell::Float(r)];
        match row {
            Ok((input, b)) => {
                let unit = input.frequency_unit();
                let mut cells = inputs;
                cells.extend([
                    Cell::Float(input.varsigma),
                    Cell::Float(b.s2_plus),
                    Cell::Float(b.s2_minus),
                    Cell::Float(b.s2_plus / unit),
                    Cell::Float(b.s2_minus / unit),
                    Cell::Float(residual(b.s2_plus, &input)),
                    Cell::Float(residual(b.s2_minus, &input)),
                    Cell::Bool(b.stable),
                    error_cell(None),
                ]);
                result.rows.push(cells);
            }
            Err(e) => failed_row(&mut result, inputs, e),
        }
    }
    Ok(result)
}

fn critical(config: &RunConfig) -> Result<SweepResult, CliError> {
    let mut result = SweepResult::new(vec![
        "shape",
        "rdf_model",
        "overlap_J",
        "g0",
        "nc_over_nD",
        "nc_bisection_over_nD",
        "nD_m3",
        "nc_m3",
        "error",
    ]);
    let inputs = vec![Cell::Text(config.shape.to_string()), Cell::Text(config.rdf.name().into())];
    let n_d = dicke_density(&config.species, &config.constants);
    let row = contact(config).and_then(|c| {
        let nc = critical_density_ratio(&c)?;
        let bisected = critical_density_by_bisection(&c, config.omega, config.mode_omegas[0])?;
        Ok((c, nc, bisected))
    });
    match row {
        Ok((c, nc, bisected)) => {
            let mut cells = inputs;
            cells.extend([
                Cell::Float(c.overlap),
                Cell::Float(c.g_at_origin),
                Cell::Float(nc),
                Cell::Float(bisected),
                Cell::Float(n_d),
                Cell::Float(nc * n_d),
                error_cell(None),
            ]);
            result.rows.push(cells);
        }
        Err(e) => failed_row(&mut result, inputs, e),
    }
    Ok(result)
}

pub fn scan_params(config: &RunConfig) -> ScanParams {
    let m = &config.microsim;
    let mut p = ScanParams::new(
        m.atoms,
        m.box_over_ell,
        m.lambda_min_over_ell,
        m.sigma_over_ell,
        config.ell,
        config.species.omega,
    );
    p.shape = config.shape;
    p.replicas = m.replicas;
    p.master_seed = m.seed;
    p.scale_factor = config.scale_factor;
    p.equilibration_sweeps = m.equilibration_sweeps;
    p.constants = config.constants;
    p
}

fn microsim(config: &RunConfig) -> Result<SweepResult, CliError> {
    let mut result = SweepResult::new(vec![
        "density_over_nD",
        "min_eig_mean",
        "min_eig_std",
        "unstable_fraction",
        "min_eig_mean_over_omega2",
        "stage",
        "error",
    ]);
    let params = scan_params(config);
    let report = stability_scan(&config.microsim.density_grid, &params)?;
    let w2 = config.species.omega.powi(2);
    let stages = report.points.iter().map(|p| ("grid", p)).chain(report.probes.iter().map(|p| ("bisect", p)));
    for (stage, p) in stages {
        result.rows.push(vec![
            Cell::Float(p.density_ratio),
            Cell::Float(p.mean),
            Cell::Float(p.std),
            Cell::Float(p.unstable_fraction),
            Cell::Float(p.mean / w2),
            Cell::Text(stage.into()),
            Cell::Text(p.errors.join("; ")),
        ]);
        if !p.errors.is_empty() {
            result.note_error(CliError::Numerical(p.errors.join("; ")));
        }
    }
    let fmt = |x: f64| Cell::Float(x).render(config.precision);
    match report.threshold {
        Some(t) => {
            result.footer.push(("threshold_over_nD".into(), fmt(t.estimate())));
            result.footer.push(("threshold_lower_over_nD".into(), fmt(t.lower)));
            result.footer.push(("threshold_upper_over_nD".into(), fmt(t.upper)));
        }
        None => result.footer.push(("threshold_over_nD".into(), "none".into())),
    }
    result.footer.push(("number_density_m3".into(), fmt(report.number_density)));
    result.footer.push(("modes".into(), report.modes.to_string()));
    result.footer.push(("configs_per_density".into(), report.configs_per_density.to_string()));
    result.footer.push(("monotone_decreasing".into(), report.is_monotone_decreasing().to_string()));
    Ok(result)
}
