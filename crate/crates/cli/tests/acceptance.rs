//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use depol_core::kernels::{k_components, CutoffProfile, KernelRoute};
use depol_core::meanfield::{
    branch_frequencies, branch_frequencies_closed_form, critical_density, critical_density_by_bisection,
    critical_density_ratio, dispersion, overlap_integral, ContactStrength, DispersionInput, RadialDistribution,
    BISECTION_TOLERANCE,
};
use depol_core::microsim::{stability_scan, ScanParams, StabilityReport};
use depol_core::physcore::{dicke_density, AtomSpecies, CODATA_2018};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    seconds: f64,
}

fn check(id: &'static str, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    let o = Outcome {
        id,
        title,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    };
    println!(
        "{} [{}] {}: {} ({:.2} s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.id,
        o.title,
        o.detail,
        o.seconds
    );
    o
}

const ELL: f64 = 2.5e-8;

fn rb() -> AtomSpecies {
    AtomSpecies::rubidium_d1(&CODATA_2018)
}

fn rubidium_density() -> (bool, String) {
    let n_d = dicke_density(&rb(), &CODATA_2018);
    let profile = CutoffProfile::gaussian(ELL).unwrap();
    let ratio = critical_density(&RadialDistribution::hard_step(rb().core_diameter).unwrap(), &profile).unwrap();
    let n_c = ratio * n_d;
    let e1 = (n_d / 1.75e27 - 1.0).abs();
    let e2 = (n_c / 5.25e27 - 1.0).abs();
    (
        e1 <= 0.03 && e2 <= 0.03,
        format!("n_D = {n_d:.4e} m^-3 ({:.2}% off), n_c = {n_c:.4e} m^-3 ({:.2}% off)", 100.0 * e1, 100.0 * e2),
    )
}

fn shifted_criticality() -> (bool, String) {
    let profile = CutoffProfile::gaussian(ELL).unwrap();
    let omega = rb().omega;
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for sigma_over_ell in [0.02, 0.01] {
        let g = RadialDistribution::hard_step(sigma_over_ell * ELL).unwrap();
        let contact = ContactStrength::from_model(&g, &profile).unwrap();
        let closed = critical_density_ratio(&contact).unwrap();
        worst = worst.max((closed - 3.0).abs());
        for k in 0..=12 {
            let mode = omega * 10f64.powf(-1.5 + 0.25 * k as f64);
            let b = critical_density_by_bisection(&contact, omega, mode).unwrap();
            worst = worst.max((b - 3.0).abs());
            values.push(b);
        }
    }
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - values.iter().cloned().fold(f64::INFINITY, f64::min);
    (
        worst <= 1e-3,
        format!("max |n_c/n_D - 3| = {worst:.2e} over sigma/ell in {{0.02, 0.01}} and Omega/omega in [10^-1.5, 10^1.5]; spread {spread:.2e}"),
    )
}

fn bare_dicke() -> (bool, String) {
    let c = ContactStrength::none();
    let closed = critical_density_ratio(&c).unwrap();
    let omega = rb().omega;
    let mut worst = (closed - 1.0).abs();
    for ratio in [0.1, 1.0, 10.0] {
        let b = critical_density_by_bisection(&c, omega, ratio * omega).unwrap();
        worst = worst.max((b - 1.0).abs());
    }
    (worst <= 1e-9, format!("max |n_c/n_D - 1| = {worst:.2e}"))
}

fn trace_identity() -> (bool, String) {
    let mut details = Vec::new();
    let mut pass = true;
    for p in [CutoffProfile::gaussian(ELL).unwrap(), CutoffProfile::lorentzian(ELL).unwrap()] {
        let g0 = p.big_gamma_r(0.0).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let r = 8.0 * ELL * i as f64 / 19.0;
            let k = k_components(&p, r, KernelRoute::Spectral).unwrap();
            worst = worst.max((k.trace() - 2.0 * p.big_gamma_r(r).unwrap()).abs());
        }
        pass &= worst <= 1e-6 * g0;
        details.push(format!("{}: {:.2e} Gamma(0)", p.shape(), worst / g0));
    }
    (pass, format!("max |Tr K - 2 Gamma| = {}", details.join(", ")))
}

fn branch_roots() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst_d, mut worst_cf): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let omega = 10f64.powf(rng.gen_range(12.0..16.0));
        let mode = omega * 10f64.powf(rng.gen_range(-1.0..1.0));
        let r = rng.gen_range(0.0..10.0);
        if r == 0.0 {
            continue;
        }
        let varsigma = rng.gen_range(0.0..5.0);
        let input = DispersionInput::new(omega, mode, r, varsigma).unwrap();
        let b = branch_frequencies(&input).unwrap();
        for s2 in [b.s2_plus, b.s2_minus] {
            worst_d = worst_d.max(dispersion(Complex64::new(s2, 0.0), &input).unwrap().norm());
        }
        let sc = DispersionInput::new(omega, mode, r, 2.0 * r / 3.0).unwrap();
        let a = branch_frequencies(&sc).unwrap();
        let c = branch_frequencies_closed_form(&sc).unwrap();
        let unit = sc.frequency_unit();
        worst_cf = worst_cf.max((a.s2_minus - c.s2_minus).abs() / a.s2_minus.abs());
        worst_cf = worst_cf.max((a.s2_plus - c.s2_plus).abs() / a.s2_plus.abs().max(1e-6 * unit));
    }

    let profile = CutoffProfile::gaussian(ELL).unwrap();
    let contact = ContactStrength::from_model(&RadialDistribution::hard_step(0.02 * ELL).unwrap(), &profile).unwrap();
    let nc = critical_density_ratio(&contact).unwrap();
    let omega = rb().omega;
    let mut monotone = true;
    let mut worst_cross: f64 = 0.0;
    for k in 0..=6 {
        let mode = omega * 10f64.powf(-1.5 + 0.5 * k as f64);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=600 {
            let r = 6.0 * i as f64 / 600.0;
            let s = branch_frequencies(&DispersionInput::self_consistent(omega, mode, r, &contact).unwrap()).unwrap().s2_plus;
            monotone &= s > prev;
            prev = s;
        }
        let crossing = critical_density_by_bisection(&contact, omega, mode).unwrap();
        worst_cross = worst_cross.max((crossing - nc).abs() / nc);
    }
    (
        worst_d <= 1e-10 && worst_cf <= 1e-10 && monotone && worst_cross <= BISECTION_TOLERANCE,
        format!(
            "max |D| = {worst_d:.2e}, closed-form deviation {worst_cf:.2e}, s2_+ increasing: {monotone}, zero crossing off n_c by {worst_cross:.2e}"
        ),
    )
}

/// ∫₀^s 4πρ² Γ(ρ) dρ by composite Simpson, reduced units.
fn enclosed_by_simpson(profile: &CutoffProfile, s: f64) -> f64 {
    let n = 2000;
    let h = s / n as f64;
    let ell3 = profile.ell().powi(3);
    let f = |rho: f64| 4.0 * std::f64::consts::PI * rho * rho * profile.big_gamma_r(rho * profile.ell()).unwrap() * ell3;
    let mut sum = f(0.0) + f(s);
    for i in 1..n {
        sum += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

fn overlap_scaling() -> (bool, String) {
    let profile = CutoffProfile::gaussian(ELL).unwrap();
    let sigmas = [0.2, 0.1, 0.05];
    let deficits: Vec<f64> = sigmas
        .iter()
        .map(|s| 1.0 - overlap_integral(&RadialDistribution::hard_step(s * ELL).unwrap(), &profile).unwrap())
        .collect();
    let oracle: Vec<f64> = sigmas.iter().map(|&s| enclosed_by_simpson(&profile, s)).collect();
    let agree = deficits.iter().zip(&oracle).all(|(d, o)| (d - o).abs() <= 1e-8 * o);
    let ratios: Vec<f64> = deficits.windows(2).map(|w| w[0] / w[1]).collect();
    let cubic = ratios.iter().all(|&q| q >= 8.0 / 1.5 && q <= 8.0 * 1.5);
    let scaled: Vec<String> = sigmas.iter().zip(&deficits).map(|(s, d)| format!("{:.4e}", d / (s * s * s))).collect();
    (
        cubic && agree,
        format!(
            "deficit ratios per halving {:.3}, {:.3} (cubic: 8), deficit/(sigma/ell)^3 = [{}], quadrature oracle agrees: {agree}",
            ratios[0],
            ratios[1],
            scaled.join(", ")
        ),
    )
}

/// (N, L/ℓ) at fixed nℓ³ = 0.5.
const SIZES: [(usize, f64); 3] = [(256, 8.0), (384, 9.157_713), (512, 10.079_368)];
const MICRO_GRID: [f64; 10] = [0.1, 0.3, 0.5, 1.0, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0];

fn microsim_reports() -> Vec<StabilityReport> {
    SIZES
        .iter()
        .map(|&(n, l)| {
            let mut p = ScanParams::new(n, l, 4.0, 0.25, ELL, rb().omega);
            p.replicas = 10;
            p.master_seed = 2024;
            stability_scan(&MICRO_GRID, &p).unwrap()
        })
        .collect()
}

fn summarize(reports: &[StabilityReport]) -> String {
    reports
        .iter()
        .map(|r| {
            format!(
                "N={} threshold {}",
                r.params.atoms,
                r.threshold_estimate().map_or("none".to_string(), |t| format!("{t:.4}"))
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn determinism() -> (bool, String) {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.conf");
    fs::write(
        &cfg,
        "cutoff.ell_m = 2.5e-8\nmeanfield.Omega_list = [1e15, 2.4e15, 1e16]\nmicrosim.atoms = 64\nmicrosim.replicas = 4\nmicrosim.density_grid = [0.01, 0.5, 3.0]\n",
    )
    .unwrap();
    let mut identical = true;
    for command in ["kernel-check", "dispersion", "critical", "microsim"] {
        let bodies: Vec<Vec<u8>> = ["a", "b"]
            .iter()
            .map(|run| {
                let out = tmp.path().join(format!("{command}-{run}"));
                let status = Command::new(env!("CARGO_BIN_EXE_depol"))
                    .args([command, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "11"])
                    .status()
                    .unwrap();
                assert!(status.success(), "{command} failed");
                fs::read(Path::new(&out).join(format!("{command}.csv"))).unwrap()
            })
            .collect();
        identical &= bodies[0] == bodies[1];
    }
    (identical, format!("kernel-check, dispersion, critical, microsim CSV bodies identical across runs: {identical}"))
}

fn main() {
    let mut outcomes = vec![
        check("1", "Rubidium Dicke density", rubidium_density),
        check("2", "Shifted criticality n_c = 3 n_D", shifted_criticality),
        check("3", "Bare Dicke recovery", bare_dicke),
        check("4", "Trace identity Tr K = 2 Gamma", trace_identity),
        check("5", "Branch-root residuals and softening", branch_roots),
        check("6", "Overlap-integral cubic scaling", overlap_scaling),
    ];

    let start = Instant::now();
    let reports = microsim_reports();
    let scan_seconds = start.elapsed().as_secs_f64();
    println!("      microsim scans for N = 256, 384, 512 took {scan_seconds:.1} s");
    outcomes.push(check("7a", "Microsim minimal eigenvalue decreasing in n", || {
        let flags: Vec<bool> = reports.iter().map(|r| r.is_monotone_decreasing()).collect();
        (flags.iter().all(|&b| b), format!("monotone per size: {flags:?}"))
    }));
    outcomes.push(check("7b", "Microsim stable at n <= 0.5 n_D", || {
        let mut worst = f64::INFINITY;
        for r in &reports {
            for p in r.points.iter().filter(|p| p.density_ratio <= 0.5) {
                for v in p.min_eigenvalues.iter().flatten() {
                    worst = worst.min(*v / r.params.omega.powi(2));
                }
            }
        }
        (worst > 0.0, format!("smallest replica eigenvalue at n <= 0.5 n_D: {worst:.4} omega^2"))
    }));
    outcomes.push(check("7c", "Microsim threshold within 20% of 3 n_D", || {
        let ok = reports.iter().all(|r| r.threshold_estimate().is_some_and(|t| (t / 3.0 - 1.0).abs() <= 0.2));
        (ok, summarize(&reports))
    }));
    outcomes.push(check("7d", "Microsim threshold trends toward 3 n_D with size", || {
        let distance: Vec<f64> = reports
            .iter()
            .map(|r| r.threshold_estimate().map_or(f64::INFINITY, |t| (t - 3.0).abs()))
            .collect();
        let ok = distance.windows(2).all(|w| w[1] < w[0]);
        (ok, format!("|threshold - 3| by size: {distance:.4?}"))
    }));
    outcomes.push(check("7e", "Microsim runtime under 10 min", || {
        (scan_seconds < 600.0, format!("{scan_seconds:.1} s"))
    }));
    outcomes.push(check("8", "Determinism of CSV bodies", determinism));

    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!(
        "acceptance: {} passed, {} failed{}",
        outcomes.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
