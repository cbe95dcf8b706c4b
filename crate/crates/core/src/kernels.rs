//! Regularizing cutoff profiles and the kernels built from them.
//!
//! A profile is the pair γ(k) / Γ(r) with `Γ = γ⋆γ`, `γ(0) = 1` and
//! `∫Γ dV = 1`. From it follow the transverse contact kernel
//!
//! ```text
//! K(r) = ∫ d³k/(2π)³ γ²(k) (I − k̂∘k̂) e^{ik·r}
//!      = Γ(r) I − ∇∘∇ (Γ ⋆ G)(r),        G(r) = −1/(4π|r|)
//! ```
//!
//! and the direct atom–atom coupling `u(r) = K(r) + ∇∘∇G(r)`.
//!
//! Both kernels are isotropic tensors, `A(r) = a_T (I − r̂∘r̂) + a_L r̂∘r̂`,
//! so only two radial functions are needed. They are computed either from
//! the Fourier representation by 1D radial quadrature ([`KernelRoute::Spectral`])
//! or in real space from Γ and the enclosed fraction
//! `Q(r) = ∫_{|r'|<r} Γ dV'` ([`KernelRoute::RealSpace`]):
//!
//! ```text
//! K_T = Γ − Q/(4πr³)      K_L = 2Q/(4πr³)
//! u_T = Γ + (1−Q)/(4πr³)  u_L = −2(1−Q)/(4πr³)
//! ```
//!
//! Internally every radial function is evaluated in units of ℓ and scaled
//! by ℓ⁻³ on the way out.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::quadrature::{Estimate, Integrator};

/// Upper limit of the spectral integrals in units of 1/ℓ for profiles with
/// Gaussian decay.
pub const GAUSSIAN_SPECTRAL_LIMIT: f64 = 40.0;

/// Relative (to Γ(0)) absolute tolerance of the spectral quadrature.
pub const SPECTRAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileShape {
    /// γ(k) = exp(−k²ℓ²/2), Γ a normalized Gaussian of variance 2ℓ².
    Gaussian,
    /// γ(k) = 1/(1 + k²ℓ²), Γ(r) = exp(−r/ℓ)/(8πℓ³).
    Lorentzian,
}

impl std::str::FromStr for ProfileShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" => Ok(ProfileShape::Gaussian),
            "lorentzian" => Ok(ProfileShape::Lorentzian),
            other => Err(Error::invalid("cutoff.shape", format!("unknown profile family `{other}`"))),
        }
    }
}

impl std::fmt::Display for ProfileShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProfileShape::Gaussian => "gaussian",
            ProfileShape::Lorentzian => "lorentzian",
        })
    }
}

/// A regularizing profile with length scale `ell` (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffProfile {
    shape: ProfileShape,
    ell: f64,
}

impl CutoffProfile {
    pub fn new(shape: ProfileShape, ell: f64) -> Result<Self> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::invalid("cutoff.ell", format!("must be positive, got {ell}")));
        }
        Ok(CutoffProfile { shape, ell })
    }

    pub fn gaussian(ell: f64) -> Result<Self> {
        Self::new(ProfileShape::Gaussian, ell)
    }

    pub fn lorentzian(ell: f64) -> Result<Self> {
        Self::new(ProfileShape::Lorentzian, ell)
    }

    pub fn shape(&self) -> ProfileShape {
        self.shape
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// γ(k), dimensionless.
    pub fn gamma_k(&self, k: f64) -> Result<f64> {
        if !(k >= 0.0) {
            return Err(Error::invalid("k", format!("wavenumber must be non-negative, got {k}")));
        }
        Ok(self.reduced_gamma(k * self.ell))
    }

    /// Γ(r) in m⁻³.
    pub fn big_gamma_r(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::invalid("r", format!("radius must be non-negative, got {r}")));
        }
        Ok(self.reduced_density(r / self.ell) / self.ell.powi(3))
    }

    /// Fraction of Γ's weight inside the ball of radius `r`.
    pub fn enclosed_fraction(&self, r: f64) -> f64 {
        self.reduced_enclosed(r / self.ell)
    }

    /// Radius beyond which Γ carries less than ~1e-20 of its weight.
    pub fn support_radius(&self) -> f64 {
        self.ell * self.reduced_support()
    }

    pub(crate) fn reduced_support(&self) -> f64 {
        match self.shape {
            ProfileShape::Gaussian => 16.0,
            ProfileShape::Lorentzian => 60.0,
        }
    }

    /// Upper limit of the spectral integrals in units of 1/ℓ, or `None` when
    /// the integrand decays only algebraically and the tail must be summed.
    pub(crate) fn spectral_limit(&self) -> Option<f64> {
        match self.shape {
            ProfileShape::Gaussian => Some(GAUSSIAN_SPECTRAL_LIMIT),
            ProfileShape::Lorentzian => None,
        }
    }

    pub(crate) fn reduced_gamma(&self, x: f64) -> f64 {
        match self.shape {
            ProfileShape::Gaussian => (-0.5 * x * x).exp(),
            ProfileShape::Lorentzian => 1.0 / (1.0 + x * x),
        }
    }

    /// ℓ³ Γ(ρℓ).
    pub(crate) fn reduced_density(&self, rho: f64) -> f64 {
        match self.shape {
            ProfileShape::Gaussian => (4.0 * PI).powf(-1.5) * (-0.25 * rho * rho).exp(),
            ProfileShape::Lorentzian => (-rho).exp() / (8.0 * PI),
        }
    }

    /// Q(ρℓ), closed form with a series near the origin.
    pub(crate) fn reduced_enclosed(&self, rho: f64) -> f64 {
        match self.shape {
            ProfileShape::Gaussian => {
                if rho < 0.5 {
                    // (1/(2√π)) Σ_k (−1/4)^k ρ^(2k+3) / (k! (2k+3))
                    let x = -0.25 * rho * rho;
                    let mut term = 1.0;
                    let mut sum = 0.0;
                    for k in 0..14 {
                        sum += term / (2 * k + 3) as f64;
                        term *= x / (k + 1) as f64;
                    }
                    sum * rho.powi(3) / (2.0 * PI.sqrt())
                } else {
                    1.0 - self.reduced_exterior(rho)
                }
            }
            ProfileShape::Lorentzian => {
                if rho < 1.0 {
                    // e^{−ρ} Σ_{k≥3} ρ^k / k!
                    let mut term = rho.powi(3) / 6.0;
                    let mut sum = 0.0;
                    for k in 3..30 {
                        sum += term;
                        term *= rho / (k + 1) as f64;
                    }
                    (-rho).exp() * sum
                } else {
                    1.0 - self.reduced_exterior(rho)
                }
            }
        }
    }

    /// 1 − Q(ρℓ), evaluated without cancellation at large ρ.
    pub(crate) fn reduced_exterior(&self, rho: f64) -> f64 {
        match self.shape {
            ProfileShape::Gaussian => {
                if rho < 0.5 {
                    1.0 - self.reduced_enclosed(rho)
                } else {
                    libm::erfc(0.5 * rho) + rho / PI.sqrt() * (-0.25 * rho * rho).exp()
                }
            }
            ProfileShape::Lorentzian => (-rho).exp() * (1.0 + rho + 0.5 * rho * rho),
        }
    }
}

/// Electrostatic Green's function `G(r) = −1/(4π|r|)`, `ΔG = δ`.
pub fn greens_function(r: &Vector3<f64>) -> f64 {
    -1.0 / (4.0 * PI * r.norm())
}

/// Static dipole tensor `∇∘∇G(r) = (I − 3 r̂∘r̂)/(4π|r|³)`, m⁻³.
pub fn dipole_tensor(r: &Vector3<f64>) -> Matrix3<f64> {
    let d = r.norm();
    let rhat = r / d;
    (Matrix3::identity() - 3.0 * rhat * rhat.transpose()) / (4.0 * PI * d.powi(3))
}

/// Fourier-space integrand of K at wavevector `k` (without the e^{ik·r}
/// phase): `(I − k̂∘k̂) γ²(k)`.
pub fn spectral_integrand(profile: &CutoffProfile, k: &Vector3<f64>) -> Result<Matrix3<f64>> {
    let kn = k.norm();
    if kn == 0.0 {
        return Err(Error::invalid("k", "transverse projector is undefined at k = 0"));
    }
    let khat = k / kn;
    let g = profile.gamma_k(kn)?;
    Ok((Matrix3::identity() - khat * khat.transpose()) * (g * g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRoute {
    /// Radial quadrature of the Fourier representation.
    Spectral,
    /// Closed-form Γ and enclosed fraction in real space.
    RealSpace,
}

/// Transverse and longitudinal parts of an isotropic tensor kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialComponents {
    pub transverse: f64,
    pub longitudinal: f64,
}

impl RadialComponents {
    pub fn trace(&self) -> f64 {
        2.0 * self.transverse + self.longitudinal
    }

    fn scaled(self, factor: f64) -> Self {
        RadialComponents {
            transverse: self.transverse * factor,
            longitudinal: self.longitudinal * factor,
        }
    }

    /// Assembles `a_T (I − r̂∘r̂) + a_L r̂∘r̂`. At r = 0 the two parts must coincide.
    pub fn to_matrix(&self, r: &Vector3<f64>) -> Matrix3<f64> {
        let d = r.norm();
        if d == 0.0 {
            return Matrix3::identity() * self.transverse;
        }
        let rhat = r / d;
        let proj = rhat * rhat.transpose();
        Matrix3::identity() * self.transverse + proj * (self.longitudinal - self.transverse)
    }
}

/// A 3×3 sample of K or u at a displacement, m⁻³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMatrix {
    pub displacement: Vector3<f64>,
    pub value: Matrix3<f64>,
}

impl KernelMatrix {
    pub fn trace(&self) -> f64 {
        self.value.trace()
    }
}

fn j0(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        1.0 - y * y / 6.0
    } else {
        y.sin() / y
    }
}

/// j₁(y)/y, with its Taylor series near 0.
fn j1_over_y(y: f64) -> f64 {
    if y.abs() < 0.5 {
        let y2 = y * y;
        // 1/3 − y²/30 + y⁴/840 − y⁶/45360 + y⁸/3991680 − y¹⁰/518918400
        1.0 / 3.0 - y2 / 30.0 * (1.0 - y2 / 28.0 * (1.0 - y2 / 54.0 * (1.0 - y2 / 88.0 * (1.0 - y2 / 130.0))))
    } else {
        (y.sin() - y * y.cos()) / (y * y * y)
    }
}

/// Spectral radial integrals `(Γ̃(ρ), T̃(ρ))` in reduced units, where
/// `Γ̃ = (1/2π²)∫x²γ²j₀(xρ)dx` and `T̃ = (1/2π²)∫x²γ² j₁(xρ)/(xρ) dx`.
pub(crate) fn spectral_integrals(profile: &CutoffProfile, rho: f64) -> Result<(Estimate, Estimate)> {
    let norm = 1.0 / (2.0 * PI * PI);
    let tol = SPECTRAL_TOLERANCE * profile.reduced_density(0.0) / norm;
    let integ = Integrator {
        abs_tol: tol,
        rel_tol: 0.0,
        max_subdivisions: 5000,
    };
    let weight = |x: f64| {
        let g = profile.reduced_gamma(x);
        x * x * g * g
    };
    let f_gamma = |x: f64| weight(x) * j0(x * rho);
    let f_t = |x: f64| weight(x) * j1_over_y(x * rho);

    let (g, t) = match profile.spectral_limit() {
        Some(limit) => {
            // break the range into pieces a few oscillations long
            let pieces = ((limit * rho / (4.0 * PI)).ceil() as usize).clamp(4, 400);
            let points: Vec<f64> = (0..=pieces).map(|i| limit * i as f64 / pieces as f64).collect();
            (
                integ.integrate_with_breaks(f_gamma, &points)?,
                integ.integrate_with_breaks(f_t, &points)?,
            )
        }
        None if rho == 0.0 => (
            integ.integrate_to_infinity(f_gamma, 0.0)?,
            integ.integrate_to_infinity(f_t, 0.0)?,
        ),
        None => {
            let half_period = PI / rho;
            let start = half_period * (20.0 / half_period).ceil().max(1.0);
            let pieces = ((start / 2.0).ceil() as usize).clamp(4, 4000);
            let points: Vec<f64> = (0..=pieces).map(|i| start * i as f64 / pieces as f64).collect();
            let head_g = integ.integrate_with_breaks(f_gamma, &points)?;
            let head_t = integ.integrate_with_breaks(f_t, &points)?;
            let tail_g = integ.integrate_oscillatory_tail(f_gamma, start, half_period, 400)?;
            let tail_t = integ.integrate_oscillatory_tail(f_t, start, half_period, 400)?;
            (head_g + tail_g, head_t + tail_t)
        }
    };
    let scale = |e: Estimate| Estimate {
        value: e.value * norm,
        error: e.error * norm,
    };
    Ok((scale(g), scale(t)))
}

/// Radial components of K in reduced units (multiply by ℓ⁻³ for SI).
pub(crate) fn reduced_k_components(profile: &CutoffProfile, rho: f64, route: KernelRoute) -> Result<RadialComponents> {
    match route {
        KernelRoute::Spectral => {
            let (g, t) = spectral_integrals(profile, rho)?;
            Ok(RadialComponents {
                transverse: g.value - t.value,
                longitudinal: 2.0 * t.value,
            })
        }
        KernelRoute::RealSpace => {
            let gamma = profile.reduced_density(rho);
            let t = if rho == 0.0 {
                gamma / 3.0
            } else {
                profile.reduced_enclosed(rho) / (4.0 * PI * rho.powi(3))
            };
            Ok(RadialComponents {
                transverse: gamma - t,
                longitudinal: 2.0 * t,
            })
        }
    }
}

/// Radial components of u in reduced units; `rho` must be positive.
pub(crate) fn reduced_u_components(profile: &CutoffProfile, rho: f64, route: KernelRoute) -> Result<RadialComponents> {
    match route {
        KernelRoute::Spectral => {
            let k = reduced_k_components(profile, rho, route)?;
            let dip = 1.0 / (4.0 * PI * rho.powi(3));
            Ok(RadialComponents {
                transverse: k.transverse + dip,
                longitudinal: k.longitudinal - 2.0 * dip,
            })
        }
        KernelRoute::RealSpace => {
            let x = profile.reduced_exterior(rho) / (4.0 * PI * rho.powi(3));
            Ok(RadialComponents {
                transverse: profile.reduced_density(rho) + x,
                longitudinal: -2.0 * x,
            })
        }
    }
}

/// Radial components of K at distance `r` (m), in m⁻³.
pub fn k_components(profile: &CutoffProfile, r: f64, route: KernelRoute) -> Result<RadialComponents> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", format!("distance must be finite and non-negative, got {r}")));
    }
    Ok(reduced_k_components(profile, r / profile.ell, route)?.scaled(profile.ell.powi(-3)))
}

/// Radial components of u at distance `r > 0` (m), in m⁻³.
pub fn u_components(profile: &CutoffProfile, r: f64, route: KernelRoute) -> Result<RadialComponents> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(
            "r",
            format!("u is distributional at the origin; distance must be positive, got {r}"),
        ));
    }
    Ok(reduced_u_components(profile, r / profile.ell, route)?.scaled(profile.ell.powi(-3)))
}

/// `K(r)` at displacement `r` (m).
pub fn kernel_k(profile: &CutoffProfile, r: &Vector3<f64>, route: KernelRoute) -> Result<KernelMatrix> {
    let c = k_components(profile, r.norm(), route)?;
    Ok(KernelMatrix {
        displacement: *r,
        value: c.to_matrix(r),
    })
}

/// `u(r) = K(r) + ∇∘∇G(r)` at displacement `r ≠ 0` (m).
pub fn kernel_u(profile: &CutoffProfile, r: &Vector3<f64>, route: KernelRoute) -> Result<KernelMatrix> {
    let c = u_components(profile, r.norm(), route)?;
    Ok(KernelMatrix {
        displacement: *r,
        value: c.to_matrix(r),
    })
}
