use rayon::prelude::*;

use super::dynamics::assemble_dynamical_matrix;
use super::eigen::min_eigenvalue;
use super::modes::{build_mode_basis, ModeBasis};
use super::sampling::{equilibrate, sample_configuration, task_seed, Configuration};
use crate::error::{Error, Result};
use crate::kernels::{CutoffProfile, ProfileShape};
use crate::physcore::{AtomSpecies, PhysicalConstants};

/// Default minimum ratio for each of σ ≪ ℓ ≪ λ_min.
pub const DEFAULT_SCALE_FACTOR: f64 = 4.0;
/// Bisection steps after the first sign change.
pub const DEFAULT_REFINEMENT_STEPS: usize = 8;

/// Geometry and physics of a scan, lengths in units of ℓ where noted.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanParams {
    pub atoms: usize,
    pub box_over_ell: f64,
    pub lambda_min_over_ell: f64,
    pub sigma_over_ell: f64,
    /// Cutoff length ℓ, m.
    pub ell: f64,
    pub shape: ProfileShape,
    /// Transition angular frequency, rad/s.
    pub omega: f64,
    pub replicas: usize,
    pub master_seed: u64,
    pub refinement_steps: usize,
    pub scale_factor: f64,
    pub equilibration_sweeps: usize,
    pub constants: PhysicalConstants,
}

impl ScanParams {
    pub fn new(atoms: usize, box_over_ell: f64, lambda_min_over_ell: f64, sigma_over_ell: f64, ell: f64, omega: f64) -> Self {
        ScanParams {
            atoms,
            box_over_ell,
            lambda_min_over_ell,
            sigma_over_ell,
            ell,
            shape: ProfileShape::Gaussian,
            omega,
            replicas: 10,
            master_seed: 0,
            refinement_steps: DEFAULT_REFINEMENT_STEPS,
            scale_factor: DEFAULT_SCALE_FACTOR,
            equilibration_sweeps: 0,
            constants: PhysicalConstants::default(),
        }
    }

    pub fn box_length(&self) -> f64 {
        self.box_over_ell * self.ell
    }

    pub fn number_density(&self) -> f64 {
        self.atoms as f64 / self.box_length().powi(3)
    }

    /// Rejects parameter sets that violate σ ≪ ℓ ≪ λ_min ≤ L by less than
    /// the configured factor.
    pub fn check_scale_separation(&self) -> Result<()> {
        let f = self.scale_factor;
        if !(f >= 1.0) {
            return Err(Error::invalid("scale_factor", format!("must be at least 1, got {f}")));
        }
        if self.sigma_over_ell * f > 1.0 {
            return Err(Error::ScaleSeparation(format!(
                "core diameter sigma = {} ell must be at most ell/{f}",
                self.sigma_over_ell
            )));
        }
        if self.lambda_min_over_ell < f {
            return Err(Error::ScaleSeparation(format!(
                "lambda_min = {} ell must be at least {f} ell",
                self.lambda_min_over_ell
            )));
        }
        if self.box_over_ell <= self.lambda_min_over_ell {
            return Err(Error::ScaleSeparation(format!(
                "box L = {} ell must exceed lambda_min = {} ell",
                self.box_over_ell, self.lambda_min_over_ell
            )));
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.atoms == 0 {
            return Err(Error::invalid("atoms", "must be positive"));
        }
        if self.replicas == 0 {
            return Err(Error::invalid("replicas", "must be positive"));
        }
        for (name, v) in [
            ("box_over_ell", self.box_over_ell),
            ("lambda_min_over_ell", self.lambda_min_over_ell),
            ("ell", self.ell),
            ("omega", self.omega),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        if !(self.sigma_over_ell >= 0.0 && self.sigma_over_ell.is_finite()) {
            return Err(Error::invalid("sigma_over_ell", "must be non-negative"));
        }
        self.check_scale_separation()
    }
}

/// Replica statistics at one density.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPoint {
    /// n / n_D.
    pub density_ratio: f64,
    /// n, 1/m³ (fixed by the geometry).
    pub density: f64,
    /// n_D realized for this point, 1/m³.
    pub dicke_density: f64,
    /// Minimal eigenvalue per replica, rad²/s². `None` where the solve failed.
    pub min_eigenvalues: Vec<Option<f64>>,
    pub mean: f64,
    pub std: f64,
    pub unstable_fraction: f64,
    pub errors: Vec<String>,
}

impl DensityPoint {
    fn from_results(density_ratio: f64, density: f64, results: Vec<Result<f64>>) -> Self {
        let mut errors = Vec::new();
        let min_eigenvalues: Vec<Option<f64>> = results
            .into_iter()
            .map(|r| r.map_err(|e| errors.push(e.to_string())).ok())
            .collect();
        let ok: Vec<f64> = min_eigenvalues.iter().flatten().copied().collect();
        let (mean, std, unstable_fraction) = if ok.is_empty() {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            let k = ok.len() as f64;
            let mean = ok.iter().sum::<f64>() / k;
            let var = if ok.len() > 1 {
                ok.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            (mean, var.sqrt(), ok.iter().filter(|&&v| v < 0.0).count() as f64 / k)
        };
        DensityPoint {
            density_ratio,
            density,
            dicke_density: density / density_ratio,
            min_eigenvalues,
            mean,
            std,
            unstable_fraction,
            errors,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Bracketed instability threshold in units of n_D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub lower: f64,
    pub upper: f64,
}

impl Threshold {
    pub fn estimate(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub params: ScanParams,
    pub number_density: f64,
    pub modes: usize,
    pub points: Vec<DensityPoint>,
    /// Bisection probes, in evaluation order.
    pub probes: Vec<DensityPoint>,
    pub threshold: Option<Threshold>,
    pub configs_per_density: usize,
}

impl StabilityReport {
    pub fn density_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.density_ratio).collect()
    }

    pub fn mean_min_eigenvalues(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean).collect()
    }

    /// Threshold as an absolute Dicke-density ratio estimate.
    pub fn threshold_estimate(&self) -> Option<f64> {
        self.threshold.map(|t| t.estimate())
    }

    /// True when the replica-averaged minimal eigenvalue never increases along the grid.
    pub fn is_monotone_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].mean <= w[0].mean)
    }
}

struct Scan<'a> {
    params: &'a ScanParams,
    profile: CutoffProfile,
    basis: ModeBasis,
    configs: Vec<Configuration>,
    base: AtomSpecies,
    density: f64,
}

impl Scan<'_> {
    fn evaluate(&self, ratio: f64) -> DensityPoint {
        let species = self.base.with_dicke_density(self.density / ratio, &self.params.constants);
        let results: Vec<Result<f64>> = self
            .configs
            .par_iter()
            .map(|c| {
                let species = species.clone()?;
                let m = assemble_dynamical_matrix(c, &self.basis, &species, &self.profile, &self.params.constants)?;
                min_eigenvalue(&m.matrix)
            })
            .collect();
        DensityPoint::from_results(ratio, self.density, results)
    }
}

/// Scans n/n_D over `ratios` at fixed geometry. The same replica
/// configurations are reused at every density, so n/n_D is varied through
/// n_D (the transition dipole) while N, L, ℓ and ω stay fixed.
pub fn stability_scan(ratios: &[f64], params: &ScanParams) -> Result<StabilityReport> {
    if ratios.is_empty() {
        return Err(Error::invalid("density_grid", "must not be empty"));
    }
    if ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::invalid("density_grid", "entries must be positive and finite"));
    }
    if ratios.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("density_grid", "entries must be strictly increasing"));
    }
    params.validate()?;

    let ell = params.ell;
    let box_length = params.box_length();
    let profile = CutoffProfile::new(params.shape, ell)?;
    let basis = build_mode_basis(box_length, params.lambda_min_over_ell * ell, &params.constants)?;
    let density = params.number_density();
    // dipole is a placeholder; each density point sets it through n_D
    let base = AtomSpecies::new("microsim", params.omega, 1.0, params.sigma_over_ell * ell)?;

    let configs: Vec<Configuration> = (0..params.replicas)
        .into_par_iter()
        .map(|r| {
            let seed = task_seed(params.master_seed, r as u64);
            let mut c = sample_configuration(density, box_length, &base, seed)?;
            if params.equilibration_sweeps > 0 {
                let step = 0.5 * (params.sigma_over_ell * ell).max(0.1 * density.cbrt().recip());
                equilibrate(&mut c, params.equilibration_sweeps, step, seed ^ 0x9e37_79b9_7f4a_7c15);
            }
            Ok(c)
        })
        .collect::<Result<_>>()?;

    let scan = Scan {
        params,
        profile,
        basis,
        configs,
        base,
        density,
    };
    let points: Vec<DensityPoint> = ratios.iter().map(|&r| scan.evaluate(r)).collect();

    let mut probes = Vec::new();
    let threshold = match points.iter().position(|p| p.mean < 0.0) {
        None => None,
        Some(i) => {
            // below any positive ratio the uncoupled system is stable
            let mut lower = if i == 0 { 0.0 } else { points[i - 1].density_ratio };
            let mut upper = points[i].density_ratio;
            for _ in 0..params.refinement_steps {
                let mid = 0.5 * (lower + upper);
                let p = scan.evaluate(mid);
                if p.mean < 0.0 {
                    upper = mid;
                } else {
                    lower = mid;
                }
                probes.push(p);
            }
            Some(Threshold { lower, upper })
        }
    };

    Ok(StabilityReport {
        params: params.clone(),
        number_density: density,
        modes: scan.basis.len(),
        points,
        probes,
        threshold,
        configs_per_density: params.replicas,
    })
}
