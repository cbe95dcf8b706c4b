use nalgebra::Vector3;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::physcore::AtomSpecies;

/// Largest hard-sphere packing fraction the sampler accepts.
pub const MAX_PACKING_FRACTION: f64 = 0.3;

/// Insertion attempts allowed per requested sphere.
const ATTEMPTS_PER_SPHERE: usize = 2000;

/// Atomic centers in a periodic cube.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub box_length: f64,
    pub positions: Vec<Vector3<f64>>,
    pub core_diameter: f64,
    pub seed: u64,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn number_density(&self) -> f64 {
        self.len() as f64 / self.box_length.powi(3)
    }

    pub fn packing_fraction(&self) -> f64 {
        packing_fraction(self.len(), self.core_diameter, self.box_length)
    }

    /// Minimum-image displacement `x_i − x_j`.
    pub fn displacement(&self, i: usize, j: usize) -> Vector3<f64> {
        minimum_image(&(self.positions[i] - self.positions[j]), self.box_length)
    }

    /// Smallest minimum-image pair distance, or `None` with fewer than two atoms.
    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d = self.displacement(i, j).norm();
                if best.map_or(true, |b| d < b.2) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }
}

pub fn minimum_image(d: &Vector3<f64>, box_length: f64) -> Vector3<f64> {
    d.map(|c| c - box_length * (c / box_length).round())
}

fn wrap(x: &Vector3<f64>, box_length: f64) -> Vector3<f64> {
    x.map(|c| {
        let w = c.rem_euclid(box_length);
        // rem_euclid can round up to box_length itself
        if w >= box_length {
            0.0
        } else {
            w
        }
    })
}

pub fn packing_fraction(count: usize, diameter: f64, box_length: f64) -> f64 {
    std::f64::consts::PI / 6.0 * count as f64 * diameter.powi(3) / box_length.powi(3)
}

/// RNG stream for task `task` under `master_seed`.
pub fn task_rng(master_seed: u64, task: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(task);
    rng
}

/// Seed owned by task `task`, derived from the master seed.
pub fn task_seed(master_seed: u64, task: u64) -> u64 {
    task_rng(master_seed, task).next_u64()
}

fn overlaps(positions: &[Vector3<f64>], candidate: &Vector3<f64>, skip: Option<usize>, sigma2: f64, box_length: f64) -> bool {
    positions.iter().enumerate().any(|(k, p)| {
        Some(k) != skip && minimum_image(&(candidate - p), box_length).norm_squared() < sigma2
    })
}

/// Random sequential insertion of `round(n L³)` hard spheres of the species'
/// core diameter into a periodic cube of edge `box_length`.
pub fn sample_configuration(n: f64, box_length: f64, species: &AtomSpecies, seed: u64) -> Result<Configuration> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::invalid("density", format!("must be positive, got {n}")));
    }
    if !(box_length > 0.0 && box_length.is_finite()) {
        return Err(Error::invalid("box_length", format!("must be positive, got {box_length}")));
    }
    let count = (n * box_length.powi(3)).round() as usize;
    let sigma = species.core_diameter;
    if packing_fraction(count, sigma, box_length) >= MAX_PACKING_FRACTION {
        return Err(Error::InfeasiblePacking {
            placed: 0,
            requested: count,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma2 = sigma * sigma;
    let mut positions: Vec<Vector3<f64>> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    let budget = ATTEMPTS_PER_SPHERE * count.max(1);
    while positions.len() < count {
        if attempts >= budget {
            return Err(Error::InfeasiblePacking {
                placed: positions.len(),
                requested: count,
            });
        }
        attempts += 1;
        let candidate = Vector3::new(
            rng.gen_range(0.0..box_length),
            rng.gen_range(0.0..box_length),
            rng.gen_range(0.0..box_length),
        );
        if !overlaps(&positions, &candidate, None, sigma2, box_length) {
            positions.push(candidate);
        }
    }
    Ok(Configuration {
        box_length,
        positions,
        core_diameter: sigma,
        seed,
    })
}

/// Hard-sphere Metropolis sweeps: each sweep tries one uniform displacement
/// of at most `max_step` per coordinate for every sphere and accepts it if no
/// overlap results. Returns the acceptance ratio.
pub fn equilibrate(config: &mut Configuration, sweeps: usize, max_step: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma2 = config.core_diameter.powi(2);
    let (mut tried, mut accepted) = (0usize, 0usize);
    for _ in 0..sweeps {
        for i in 0..config.len() {
            let step = Vector3::new(
                rng.gen_range(-max_step..max_step),
                rng.gen_range(-max_step..max_step),
                rng.gen_range(-max_step..max_step),
            );
            let moved = wrap(&(config.positions[i] + step), config.box_length);
            tried += 1;
            if !overlaps(&config.positions, &moved, Some(i), sigma2, config.box_length) {
                config.positions[i] = moved;
                accepted += 1;
            }
        }
    }
    if tried == 0 {
        0.0
    } else {
        accepted as f64 / tried as f64
    }
}

/// Pair-correlation histogram averaged over configurations sharing box and
/// particle count: `(bin centre, ĝ)` on `[0, r_max)`.
pub fn pair_correlation(configs: &[Configuration], bins: usize, r_max: f64) -> Vec<(f64, f64)> {
    let mut counts = vec![0.0f64; bins];
    let width = r_max / bins as f64;
    let mut ideal_norm = 0.0;
    for c in configs {
        let n = c.len() as f64;
        let volume = c.box_length.powi(3);
        ideal_norm += 0.5 * n * (n - 1.0) / volume;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let d = c.displacement(i, j).norm();
                if d < r_max {
                    counts[(d / width) as usize] += 1.0;
                }
            }
        }
    }
    (0..bins)
        .map(|b| {
            let (lo, hi) = (b as f64 * width, (b + 1) as f64 * width);
            let shell = 4.0 / 3.0 * std::f64::consts::PI * (hi.powi(3) - lo.powi(3));
            (0.5 * (lo + hi), counts[b] / (ideal_norm * shell))
        })
        .collect()
}
