use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::physcore::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Cos,
    Sin,
}

/// One real transverse standing-wave mode of the periodic box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Wavevector, 1/m.
    pub k: Vector3<f64>,
    /// Unit polarization, orthogonal to `k`.
    pub polarization: Vector3<f64>,
    /// Ω = c|k|, rad/s.
    pub frequency: f64,
    pub parity: Parity,
    /// Field amplitude `√(4ħΩε₀/V)`, so that `∫ f·f dV = 2ħΩε₀`.
    pub amplitude: f64,
    /// Integer lattice vector with `k = 2π m / L`.
    pub lattice: [i64; 3],
}

impl Mode {
    /// Scalar profile `cos(k·x)` or `sin(k·x)` times the amplitude.
    pub fn profile(&self, x: &Vector3<f64>) -> f64 {
        let phase = self.k.dot(x);
        self.amplitude
            * match self.parity {
                Parity::Cos => phase.cos(),
                Parity::Sin => phase.sin(),
            }
    }

    /// Mode function f_ν(x).
    pub fn eval(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.polarization * self.profile(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    pub box_length: f64,
    pub lambda_min: f64,
    pub modes: Vec<Mode>,
}

impl ModeBasis {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.box_length.powi(3)
    }

    pub fn lowest_frequency(&self) -> f64 {
        self.modes.iter().map(|m| m.frequency).fold(f64::INFINITY, f64::min)
    }
}

/// One representative of each ±m pair: the first non-zero component is positive.
pub(crate) fn in_half_space(m: [i64; 3]) -> bool {
    m[2] > 0 || (m[2] == 0 && (m[1] > 0 || (m[1] == 0 && m[0] > 0)))
}

/// Two orthonormal vectors orthogonal to `k`.
fn transverse_pair(k: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let khat = k.normalize();
    // reference axis least aligned with k
    let abs = khat.abs();
    let axis = if abs.x <= abs.y && abs.x <= abs.z {
        Vector3::x()
    } else if abs.y <= abs.z {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let mut e1 = khat.cross(&axis).normalize();
    // remove the residual longitudinal rounding
    e1 -= khat * khat.dot(&e1);
    let e1 = e1.normalize();
    let e2 = khat.cross(&e1).normalize();
    (e1, e2)
}

/// All box-commensurate transverse modes with `0 < |k| ≤ 2π/λ_min`: two
/// polarizations and both parities per ±k pair.
pub fn build_mode_basis(box_length: f64, lambda_min: f64, constants: &PhysicalConstants) -> Result<ModeBasis> {
    if !(lambda_min > 0.0 && lambda_min.is_finite()) {
        return Err(Error::invalid("lambda_min", format!("must be positive, got {lambda_min}")));
    }
    if !(box_length > lambda_min) {
        return Err(Error::invalid(
            "box_length",
            format!("must exceed lambda_min = {lambda_min:e} m, got {box_length:e} m"),
        ));
    }
    let volume = box_length.powi(3);
    let mmax = (box_length / lambda_min).floor() as i64;
    let limit2 = (box_length / lambda_min).powi(2);
    let mut modes = Vec::new();
    for mz in -mmax..=mmax {
        for my in -mmax..=mmax {
            for mx in -mmax..=mmax {
                let m = [mx, my, mz];
                let m2 = (mx * mx + my * my + mz * mz) as f64;
                if m2 == 0.0 || m2 > limit2 * (1.0 + 1e-12) || !in_half_space(m) {
                    continue;
                }
                let k = Vector3::new(mx as f64, my as f64, mz as f64) * (2.0 * PI / box_length);
                let frequency = constants.c * k.norm();
                let amplitude = (4.0 * constants.hbar * frequency * constants.eps0 / volume).sqrt();
                let (e1, e2) = transverse_pair(&k);
                for polarization in [e1, e2] {
                    for parity in [Parity::Cos, Parity::Sin] {
                        modes.push(Mode {
                            k,
                            polarization,
                            frequency,
                            parity,
                            amplitude,
                            lattice: m,
                        });
                    }
                }
            }
        }
    }
    if modes.is_empty() {
        return Err(Error::EmptyModeBasis { box_length });
    }
    Ok(ModeBasis {
        box_length,
        lambda_min,
        modes,
    })
}
