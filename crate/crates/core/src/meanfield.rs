//! Mean-field stability of the polarization field.
//!
//! Averaging the contact interaction over the pair distribution g(r) turns
//! it into a density-dependent shift of the atomic transition,
//!
//! ```text
//! ς = (n/n_D) (⅔ ∫gΓ dV + ⅓ g(0)),
//! ```
//!
//! after which every field mode ν couples to a single collective oscillator
//! of squared frequency ω²(1+ς). The eigenfrequencies are the zeros of
//!
//! ```text
//! D(s) = 1 − (n/n_D) Ω²ω² / ([s² + Ω²][s² + ω²(1+ς)])
//! ```
//!
//! i.e. roots of a quadratic in s². The system is stable while both roots
//! s² are non-positive (purely imaginary s).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::CutoffProfile;
use crate::quadrature::Integrator;

/// Tables must end within this distance of g = 1.
pub const TABLE_TAIL_TOLERANCE: f64 = 1e-3;

/// Relative density tolerance of the bisection route.
pub const BISECTION_TOLERANCE: f64 = 1e-9;
pub const BISECTION_MAX_ITERATIONS: usize = 200;

/// Pair distribution sampled at increasing radii, linearly interpolated and
/// continued as exactly 1 beyond the last node.
#[derive(Debug, Clone, PartialEq)]
pub struct RdfTable {
    r: Vec<f64>,
    g: Vec<f64>,
}

impl RdfTable {
    pub fn new(r: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        if r.len() != g.len() || r.len() < 2 {
            return Err(Error::invalid("rdf.table", "needs at least two (r, g) pairs of equal length"));
        }
        if r[0] < 0.0 || r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("rdf.table", "radii must be non-negative and strictly increasing"));
        }
        if g.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::invalid("rdf.table", "g(r) must be finite and non-negative"));
        }
        let last = *g.last().unwrap();
        if (last - 1.0).abs() > TABLE_TAIL_TOLERANCE {
            return Err(Error::invalid(
                "rdf.table",
                format!("g(r) must tend to 1: last tabulated value {last} is not within {TABLE_TAIL_TOLERANCE} of 1"),
            ));
        }
        Ok(RdfTable { r, g })
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.g
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r <= self.r[0] {
            return self.g[0];
        }
        if r >= *self.r.last().unwrap() {
            return 1.0;
        }
        let i = self.r.partition_point(|&x| x <= r) - 1;
        let t = (r - self.r[i]) / (self.r[i + 1] - self.r[i]);
        self.g[i] + t * (self.g[i + 1] - self.g[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadialDistribution {
    /// Uncorrelated centers, g ≡ 1 (so g(0) = 1).
    Ideal,
    /// Hard spheres without further structure: g = 0 below `sigma`, 1 above.
    HardStep { sigma: f64 },
    Tabulated(RdfTable),
}

impl RadialDistribution {
    pub fn hard_step(sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::invalid("rdf.sigma", format!("must be non-negative, got {sigma}")));
        }
        Ok(RadialDistribution::HardStep { sigma })
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialDistribution::Ideal => 1.0,
            RadialDistribution::HardStep { sigma } => {
                if r < *sigma {
                    0.0
                } else {
                    1.0
                }
            }
            RadialDistribution::Tabulated(t) => t.eval(r),
        }
    }

    /// g(0): the weight of the contact δ-term.
    pub fn at_origin(&self) -> f64 {
        self.eval(0.0)
    }

    /// Length below which g differs from 1, if any.
    pub fn structure_length(&self) -> f64 {
        match self {
            RadialDistribution::Ideal => 0.0,
            RadialDistribution::HardStep { sigma } => *sigma,
            RadialDistribution::Tabulated(t) => *t.r.last().unwrap(),
        }
    }
}

/// `J = ∫ g(r) Γ(r) dV`.
pub fn overlap_integral(g: &RadialDistribution, profile: &CutoffProfile) -> Result<f64> {
    let ell = profile.ell();
    if g.structure_length() > ell {
        log::warn!(
            "pair-distribution structure length {:e} m exceeds the cutoff length {:e} m",
            g.structure_length(),
            ell
        );
    }
    let integ = Integrator::new(1e-15, 1e-14);
    let rmax = profile.reduced_support();
    let weight = |rho: f64| 4.0 * PI * rho * rho * profile.reduced_density(rho);
    let est = match g {
        // Γ is normalized to unit volume integral
        RadialDistribution::Ideal => return Ok(1.0),
        RadialDistribution::HardStep { sigma } => {
            let s = sigma / ell;
            if s >= rmax {
                return Ok(0.0);
            }
            integ.integrate(weight, s, rmax)?
        }
        RadialDistribution::Tabulated(t) => {
            let mut points: Vec<f64> = std::iter::once(0.0)
                .chain(t.r.iter().map(|r| r / ell))
                .filter(|&x| x < rmax)
                .collect();
            points.dedup();
            points.push(rmax);
            integ.integrate_with_breaks(|rho| g.eval(rho * ell) * weight(rho), &points)?
        }
    };
    Ok(est.value)
}

/// Contact-interaction content of a pair distribution and profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactStrength {
    /// `∫gΓ dV`.
    pub overlap: f64,
    /// g(0).
    pub g_at_origin: f64,
}

impl ContactStrength {
    pub fn from_model(g: &RadialDistribution, profile: &CutoffProfile) -> Result<Self> {
        Ok(ContactStrength {
            overlap: overlap_integral(g, profile)?,
            g_at_origin: g.at_origin(),
        })
    }

    /// The bare Dicke model: no contact interaction at all.
    pub fn none() -> Self {
        ContactStrength {
            overlap: 0.0,
            g_at_origin: 0.0,
        }
    }

    /// `ς / (n/n_D) = ⅔J + ⅓g(0)`.
    pub fn shift_coefficient(&self) -> f64 {
        2.0 * self.overlap / 3.0 + self.g_at_origin / 3.0
    }

    pub fn shift(&self, density_ratio: f64) -> Result<f64> {
        check_ratio(density_ratio)?;
        Ok(density_ratio * self.shift_coefficient())
    }
}

fn check_ratio(density_ratio: f64) -> Result<()> {
    if !(density_ratio >= 0.0 && density_ratio.is_finite()) {
        return Err(Error::invalid(
            "density_ratio",
            format!("n/n_D must be finite and non-negative, got {density_ratio}"),
        ));
    }
    Ok(())
}

/// Depolarization shift ς at density `n = density_ratio · n_D`.
pub fn depolarization_shift(density_ratio: f64, g: &RadialDistribution, profile: &CutoffProfile) -> Result<f64> {
    check_ratio(density_ratio)?;
    ContactStrength::from_model(g, profile)?.shift(density_ratio)
}

/// Parameters of the dispersion function for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionInput {
    /// Atomic transition frequency ω, rad/s.
    pub omega: f64,
    /// Mode frequency Ω, rad/s.
    pub mode_omega: f64,
    /// n / n_D.
    pub density_ratio: f64,
    /// ς.
    pub varsigma: f64,
}

impl DispersionInput {
    pub fn new(omega: f64, mode_omega: f64, density_ratio: f64, varsigma: f64) -> Result<Self> {
        let input = DispersionInput {
            omega,
            mode_omega,
            density_ratio,
            varsigma,
        };
        input.validate()?;
        Ok(input)
    }

    /// Input with the shift computed self-consistently from `contact`.
    pub fn self_consistent(omega: f64, mode_omega: f64, density_ratio: f64, contact: &ContactStrength) -> Result<Self> {
        Self::new(omega, mode_omega, density_ratio, contact.shift(density_ratio)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::invalid("omega", format!("must be positive, got {}", self.omega)));
        }
        if !(self.mode_omega > 0.0 && self.mode_omega.is_finite()) {
            return Err(Error::invalid("Omega", format!("must be positive, got {}", self.mode_omega)));
        }
        check_ratio(self.density_ratio)?;
        if !(self.varsigma >= 0.0 && self.varsigma.is_finite()) {
            return Err(Error::invalid("varsigma", format!("must be non-negative, got {}", self.varsigma)));
        }
        Ok(())
    }

    /// ω²(1+ς).
    fn shifted_atomic(&self) -> f64 {
        self.omega * self.omega * (1.0 + self.varsigma)
    }

    fn mode_sq(&self) -> f64 {
        self.mode_omega * self.mode_omega
    }

    /// ωΩ, the natural unit of s².
    pub fn frequency_unit(&self) -> f64 {
        self.omega * self.mode_omega
    }
}

/// D(s) as a function of s².
pub fn dispersion(s2: Complex64, input: &DispersionInput) -> Result<Complex64> {
    input.validate()?;
    let a = s2 + input.mode_sq();
    let b = s2 + input.shifted_atomic();
    if a == Complex64::new(0.0, 0.0) || b == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole { s2: s2.re });
    }
    let coupling = input.density_ratio * input.mode_sq() * input.omega * input.omega;
    Ok(Complex64::new(1.0, 0.0) - coupling / (a * b))
}

/// The two roots s²₊ ≥ s²₋ of D = 0, in rad²/s².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPair {
    pub s2_plus: f64,
    pub s2_minus: f64,
    /// True iff s²₊ ≤ 0, i.e. both eigenfrequencies are oscillatory.
    pub stable: bool,
}

impl BranchPair {
    fn new(s2_plus: f64, s2_minus: f64) -> Self {
        BranchPair {
            s2_plus,
            s2_minus,
            stable: s2_plus <= 0.0,
        }
    }

    /// Both roots divided by `unit` (usually ωΩ).
    pub fn in_units_of(&self, unit: f64) -> (f64, f64) {
        (self.s2_plus / unit, self.s2_minus / unit)
    }
}

/// Roots of `z² + z[ω²(1+ς) + Ω²] + Ω²ω²[(1+ς) − n/n_D] = 0` with `z = s²`.
///
/// The discriminant is `(ω²(1+ς) − Ω²)² + 4(n/n_D)ω²Ω² ≥ 0`, so both roots are
/// real. The smaller root is taken from the stable formula and the larger
/// one from Vieta's product to avoid cancellation near criticality.
pub fn branch_frequencies(input: &DispersionInput) -> Result<BranchPair> {
    input.validate()?;
    let w2 = input.omega * input.omega;
    let a = input.shifted_atomic();
    let m = input.mode_sq();
    let b = a + m;
    let c = m * w2 * ((1.0 + input.varsigma) - input.density_ratio);
    let detuning = a - m;
    let disc = detuning * detuning + 4.0 * input.density_ratio * w2 * m;
    let q = -0.5 * (b + disc.sqrt());
    let s2_minus = q;
    let s2_plus = c / q;
    Ok(BranchPair::new(s2_plus, s2_minus))
}

/// The closed form `s²/(ωΩ) = −S ± √(S² + n/(3n_D) − 1)`,
/// `S = [ω²(1+ς) + Ω²]/(2ωΩ)`, with s measured in units of √(ωΩ).
///
/// The constant under the root assumes the self-consistent shift
/// ς = ⅔ n/n_D; for any other ς this is not a root of D. The `+` root is
/// rewritten as `c/(S + √(S² + c))` so it stays accurate near zero.
pub fn branch_frequencies_closed_form(input: &DispersionInput) -> Result<BranchPair> {
    input.validate()?;
    let unit = input.frequency_unit();
    let s = (input.shifted_atomic() + input.mode_sq()) / (2.0 * unit);
    let c = input.density_ratio / 3.0 - 1.0;
    let root = (s * s + c).sqrt();
    let plus = c / (s + root);
    let minus = -s - root;
    Ok(BranchPair::new(plus * unit, minus * unit))
}

/// Critical density n_c/n_D solving `n/n_D = 1 + ς(n)`.
pub fn critical_density_ratio(contact: &ContactStrength) -> Result<f64> {
    let k = contact.shift_coefficient();
    if !(k < 1.0) {
        return Err(Error::NoCriticalDensity { coefficient: k });
    }
    Ok(1.0 / (1.0 - k))
}

/// Critical density for a pair distribution and profile.
pub fn critical_density(g: &RadialDistribution, profile: &CutoffProfile) -> Result<f64> {
    critical_density_ratio(&ContactStrength::from_model(g, profile)?)
}

/// Independent route: bisection in n/n_D on the sign of s²₊ for one mode.
pub fn critical_density_by_bisection(contact: &ContactStrength, omega: f64, mode_omega: f64) -> Result<f64> {
    let k = contact.shift_coefficient();
    if !(k < 1.0) {
        return Err(Error::NoCriticalDensity { coefficient: k });
    }
    let unstable = |ratio: f64| -> Result<bool> {
        let input = DispersionInput::self_consistent(omega, mode_omega, ratio, contact)?;
        Ok(!branch_frequencies(&input)?.stable)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut expansions = 0;
    while !unstable(hi)? {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NoCriticalDensity { coefficient: k });
        }
    }
    for _ in 0..BISECTION_MAX_ITERATIONS {
        if hi - lo <= BISECTION_TOLERANCE * hi {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if unstable(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::QuadratureNonConvergence {
        estimate: (hi - lo) / hi,
        tolerance: BISECTION_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gaussian() -> CutoffProfile {
        CutoffProfile::gaussian(1e-8).unwrap()
    }

    #[test]
    fn ideal_overlap_is_one() {
        for p in [gaussian(), CutoffProfile::lorentzian(1e-8).unwrap()] {
            let j = overlap_integral(&RadialDistribution::Ideal, &p).unwrap();
            assert!((j - 1.0).abs() < 1e-8);
            let j0 = overlap_integral(&RadialDistribution::hard_step(0.0).unwrap(), &p).unwrap();
            assert!((j0 - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn hard_step_deficit_is_small_and_cubic() {
        let p = gaussian();
        let ell = p.ell();
        let deficit = |s: f64| 1.0 - overlap_integral(&RadialDistribution::hard_step(s * ell).unwrap(), &p).unwrap();
        let d1 = deficit(0.1);
        assert!(d1 > 0.0 && d1 < 1e-3, "{d1}");
        // excluded-volume oracle: (4π/3)σ³Γ(0) to leading order
        let oracle = |s: f64| 4.0 * PI / 3.0 * s.powi(3) * (4.0 * PI).powf(-1.5);
        for s in [0.2, 0.1, 0.05] {
            let ratio = deficit(s) / oracle(s);
            assert!((ratio - 1.0).abs() < 0.02, "s={s} ratio={ratio}");
        }
    }

    #[test]
    fn shift_values() {
        let p = gaussian();
        let tiny = RadialDistribution::hard_step(1e-4 * p.ell()).unwrap();
        assert!((depolarization_shift(1.0, &tiny, &p).unwrap() - 2.0 / 3.0).abs() < 1e-3);
        assert_eq!(depolarization_shift(0.0, &tiny, &p).unwrap(), 0.0);
        let g = RadialDistribution::hard_step(0.2 * p.ell()).unwrap();
        let j = overlap_integral(&g, &p).unwrap();
        assert_relative_eq!(depolarization_shift(1.0, &g, &p).unwrap(), 2.0 * j / 3.0, max_relative = 1e-15);
        let c = ContactStrength::from_model(&g, &p).unwrap();
        assert_eq!(c.shift(2.6).unwrap(), 2.0 * c.shift(1.3).unwrap());
        assert!(depolarization_shift(-1.0, &g, &p).is_err());
    }

    #[test]
    fn ideal_gas_keeps_delta_term() {
        let p = gaussian();
        let c = ContactStrength::from_model(&RadialDistribution::Ideal, &p).unwrap();
        assert_eq!(c.g_at_origin, 1.0);
        assert!((c.shift_coefficient() - 1.0).abs() < 1e-8);
        assert!(matches!(critical_density_ratio(&c), Err(Error::NoCriticalDensity { .. })));
    }

    #[test]
    fn tabulated_table_validation() {
        assert!(RdfTable::new(vec![0.0, 1.0], vec![0.0, 0.9]).is_err());
        assert!(RdfTable::new(vec![0.0, 1.0], vec![-0.1, 1.0]).is_err());
        assert!(RdfTable::new(vec![1.0, 0.5], vec![0.0, 1.0]).is_err());
        let t = RdfTable::new(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 1.0005]).unwrap();
        assert_eq!(t.eval(0.5), 1.0);
        assert!((t.eval(1.5) - 1.50025).abs() < 1e-15);
        assert_eq!(t.eval(3.0), 1.0);
    }

    #[test]
    fn tabulated_step_matches_hard_step() {
        let p = gaussian();
        let sigma = 0.2 * p.ell();
        let table = RdfTable::new(vec![0.0, sigma * (1.0 - 1e-12), sigma], vec![0.0, 0.0, 1.0]).unwrap();
        let jt = overlap_integral(&RadialDistribution::Tabulated(table), &p).unwrap();
        let jh = overlap_integral(&RadialDistribution::hard_step(sigma).unwrap(), &p).unwrap();
        assert!((jt - jh).abs() < 1e-12);
    }

    #[test]
    fn dispersion_examples() {
        let w = 2.0e15;
        let free = DispersionInput::new(w, 3.0e15, 0.0, 0.0).unwrap();
        for z in [-1e30, 0.0, 5e29] {
            assert_eq!(dispersion(Complex64::new(z, 1e28), &free).unwrap(), Complex64::new(1.0, 0.0));
        }
        let crit = DispersionInput::new(w, w, 3.0, 2.0).unwrap();
        assert!(dispersion(Complex64::new(0.0, 0.0), &crit).unwrap().norm() < 1e-15);
        let one = DispersionInput::new(w, w, 1.0, 2.0 / 3.0).unwrap();
        let z = Complex64::new(-0.2792 * w * w, 0.0);
        assert!(dispersion(z, &one).unwrap().norm() <= 1e-4);
        assert!(matches!(
            dispersion(Complex64::new(-w * w, 0.0), &one),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn branch_examples() {
        let w = 1.3e15;
        let free = branch_frequencies(&DispersionInput::new(w, w, 0.0, 0.0).unwrap()).unwrap();
        assert_relative_eq!(free.s2_plus, -w * w, max_relative = 1e-15);
        assert_relative_eq!(free.s2_minus, -w * w, max_relative = 1e-15);

        // quartic oracle: z² + (8/3) z + 2/3 = 0 in units of ωΩ
        let (p, m) = (-4.0 / 3.0 + (16.0f64 / 9.0 - 2.0 / 3.0).sqrt(), -4.0 / 3.0 - (16.0f64 / 9.0 - 2.0 / 3.0).sqrt());
        let one = branch_frequencies(&DispersionInput::new(w, w, 1.0, 2.0 / 3.0).unwrap()).unwrap();
        let (bp, bm) = one.in_units_of(w * w);
        assert!((bp - p).abs() < 1e-12 && (bp + 0.2792).abs() < 1e-3);
        assert!((bm - m).abs() < 1e-12 && (bm + 2.3874).abs() < 1e-3);
        assert!(one.stable);

        let crit = branch_frequencies(&DispersionInput::new(w, w, 3.0, 2.0).unwrap()).unwrap();
        assert_eq!(crit.s2_plus, 0.0);
        assert!(crit.stable);
    }

    #[test]
    fn closed_form_agrees() {
        for &(w, big_w, r) in &[(1.0, 1.0, 1.0), (2.0, 0.3, 2.5), (1e15, 7e15, 4.0), (3.0, 3.0, 3.0)] {
            let input = DispersionInput::new(w, big_w, r, 2.0 * r / 3.0).unwrap();
            let a = branch_frequencies(&input).unwrap();
            let b = branch_frequencies_closed_form(&input).unwrap();
            let scale = a.s2_minus.abs();
            assert!((a.s2_plus - b.s2_plus).abs() <= 1e-12 * scale);
            assert!((a.s2_minus - b.s2_minus).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn critical_density_examples() {
        let p = gaussian();
        let g = RadialDistribution::hard_step(1e-4 * p.ell()).unwrap();
        let nc = critical_density(&g, &p).unwrap();
        assert!((nc - 3.0).abs() < 1e-3);
        let contact = ContactStrength::from_model(&g, &p).unwrap();
        let w = 2.37e15;
        for ratio in [0.1, 1.0, 10.0] {
            let b = critical_density_by_bisection(&contact, w, ratio * w).unwrap();
            assert_relative_eq!(b, nc, max_relative = 2e-9);
        }
        assert_eq!(critical_density_ratio(&ContactStrength::none()).unwrap(), 1.0);
        let bare = critical_density_by_bisection(&ContactStrength::none(), w, w).unwrap();
        assert!((bare - 1.0).abs() < 1e-9);
    }
}
