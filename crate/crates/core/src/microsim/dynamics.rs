use nalgebra::DMatrix;

use super::modes::ModeBasis;
use super::sampling::Configuration;
use crate::error::{Error, Result};
use crate::kernels::{u_components, CutoffProfile, KernelRoute};
use crate::physcore::{AtomSpecies, PhysicalConstants};

/// Largest matrix dimension the assembler will allocate.
pub const MAX_DIMENSION: usize = 20_000;

/// Symmetrized dynamical matrix for `[atom dipoles (3N); mode amplitudes (M)]`.
///
/// An eigenvalue `λ` corresponds to `s² = −λ`, so the system is stable when
/// the matrix is positive semidefinite.
#[derive(Debug, Clone)]
pub struct DynamicalMatrix {
    pub atoms: usize,
    pub modes: usize,
    pub matrix: DMatrix<f64>,
}

impl DynamicalMatrix {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Builds the dynamical matrix for one configuration.
///
/// Atom block: `ω² δ_ij I + (2d²ω/ħε₀) u(x_i − x_j)` with the minimum-image
/// displacement. Atom–mode block: `(d √(ωΩ_ν)/ħε₀) f_ν(x_j)`. Mode block:
/// `Ω_ν² δ_νμ`.
pub fn assemble_dynamical_matrix(
    config: &Configuration,
    basis: &ModeBasis,
    species: &AtomSpecies,
    profile: &CutoffProfile,
    constants: &PhysicalConstants,
) -> Result<DynamicalMatrix> {
    species.validate()?;
    let rel = (config.box_length - basis.box_length).abs() / basis.box_length;
    if rel > 1e-12 {
        return Err(Error::invalid(
            "box_length",
            format!(
                "configuration box {:e} m differs from mode box {:e} m",
                config.box_length, basis.box_length
            ),
        ));
    }
    let n = config.len();
    let m = basis.len();
    let dim = 3 * n + m;
    if dim > MAX_DIMENSION {
        return Err(Error::DimensionOverflow {
            dimension: dim,
            limit: MAX_DIMENSION,
        });
    }

    let omega = species.omega;
    let d = species.dipole;
    let hbar_eps0 = constants.hbar * constants.eps0;
    let pair_scale = 2.0 * d * d * omega / hbar_eps0;
    let mut a = DMatrix::<f64>::zeros(dim, dim);

    for i in 0..n {
        for c in 0..3 {
            a[(3 * i + c, 3 * i + c)] = omega * omega;
        }
    }
    let contact = config.core_diameter * (1.0 - 1e-12);
    for i in 0..n {
        for j in i + 1..n {
            let x = config.displacement(i, j);
            let r = x.norm();
            if r < contact || r == 0.0 {
                return Err(Error::OverlappingAtoms {
                    first: i,
                    second: j,
                    separation: r,
                });
            }
            let block = u_components(profile, r, KernelRoute::RealSpace)?.to_matrix(&x) * pair_scale;
            for p in 0..3 {
                for q in 0..3 {
                    a[(3 * i + p, 3 * j + q)] = block[(p, q)];
                    a[(3 * j + q, 3 * i + p)] = block[(p, q)];
                }
            }
        }
    }
    for (nu, mode) in basis.modes.iter().enumerate() {
        let col = 3 * n + nu;
        a[(col, col)] = mode.frequency * mode.frequency;
        let g = d * (omega * mode.frequency).sqrt() / hbar_eps0;
        for (j, x) in config.positions.iter().enumerate() {
            let f = mode.eval(x) * g;
            for c in 0..3 {
                a[(3 * j + c, col)] = f[c];
                a[(col, 3 * j + c)] = f[c];
            }
        }
    }
    Ok(DynamicalMatrix {
        atoms: n,
        modes: m,
        matrix: a,
    })
}
