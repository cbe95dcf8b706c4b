//! Run configuration: a flat file of `section.key = value` lines (valid TOML
//! with dotted keys), overridable through `DEPOL_SECTION__KEY` environment
//! variables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use depol_core::kernels::{CutoffProfile, ProfileShape};
use depol_core::meanfield::{RadialDistribution, RdfTable};
use depol_core::physcore::{AtomSpecies, PhysicalConstants};
use toml::Value;

use crate::error::CliError;

pub const ENV_PREFIX: &str = "DEPOL_";

/// Every accepted key. Lookups are exact; environment names match case-insensitively.
pub const KEYS: &[&str] = &[
    "species.name",
    "species.wavelength_m",
    "species.omega",
    "species.dipole_Cm",
    "species.core_diameter_m",
    "cutoff.shape",
    "cutoff.ell_m",
    "cutoff.lambda_min_m",
    "rdf.model",
    "rdf.sigma_m",
    "rdf.table",
    "meanfield.omega",
    "meanfield.Omega_list",
    "meanfield.density_grid",
    "kernel.shapes",
    "kernel.samples",
    "kernel.r_max_over_ell",
    "microsim.atoms",
    "microsim.box_over_ell",
    "microsim.lambda_min_over_ell",
    "microsim.sigma_over_ell",
    "microsim.density_grid",
    "microsim.replicas",
    "microsim.seed",
    "microsim.equilibration_sweeps",
    "output.directory",
    "output.precision",
    "validation.scale_factor",
];

const DEFAULT_WAVELENGTH: f64 = 794.98e-9;
const DEFAULT_DIPOLE: f64 = 2.537e-29;
const DEFAULT_CORE: f64 = 5.0e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum RdfModel {
    /// No contact interaction: J = 0, g(0) = 0.
    None,
    Ideal,
    HardStep { sigma: f64 },
    Table { path: PathBuf, table: RdfTable },
}

impl RdfModel {
    pub fn name(&self) -> &'static str {
        match self {
            RdfModel::None => "none",
            RdfModel::Ideal => "ideal",
            RdfModel::HardStep { .. } => "hard-step",
            RdfModel::Table { .. } => "table",
        }
    }

    /// `None` for the bare model.
    pub fn distribution(&self) -> Option<RadialDistribution> {
        match self {
            RdfModel::None => None,
            RdfModel::Ideal => Some(RadialDistribution::Ideal),
            RdfModel::HardStep { sigma } => Some(RadialDistribution::HardStep { sigma: *sigma }),
            RdfModel::Table { table, .. } => Some(RadialDistribution::Tabulated(table.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicrosimSection {
    pub atoms: usize,
    pub box_over_ell: f64,
    pub lambda_min_over_ell: f64,
    pub sigma_over_ell: f64,
    pub density_grid: Vec<f64>,
    pub replicas: usize,
    pub seed: u64,
    pub equilibration_sweeps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: PathBuf,
    pub constants: PhysicalConstants,
    pub species: AtomSpecies,
    pub shape: ProfileShape,
    pub ell: f64,
    pub lambda_min: f64,
    pub rdf: RdfModel,
    pub omega: f64,
    pub mode_omegas: Vec<f64>,
    pub density_grid: Vec<f64>,
    pub kernel_shapes: Vec<ProfileShape>,
    pub kernel_samples: usize,
    pub kernel_r_max_over_ell: f64,
    pub microsim: MicrosimSection,
    pub output_directory: Option<PathBuf>,
    pub precision: usize,
    pub scale_factor: f64,
}

impl RunConfig {
    pub fn profile(&self) -> CutoffProfile {
        CutoffProfile::new(self.shape, self.ell).expect("validated at parse time")
    }

    /// The resolved configuration in the input format, one key per line.
    pub fn resolved(&self) -> String {
        let mut out = String::new();
        let f = |v: f64| format!("{v:e}");
        let list = |v: &[f64]| format!("[{}]", v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(", "));
        let s = &self.species;
        let m = &self.microsim;
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        line("species.name", quote(&s.name));
        line("species.omega", f(s.omega));
        line("species.dipole_Cm", f(s.dipole));
        line("species.core_diameter_m", f(s.core_diameter));
        line("cutoff.shape", quote(&self.shape.to_string()));
        line("cutoff.ell_m", f(self.ell));
        line("cutoff.lambda_min_m", f(self.lambda_min));
        line("rdf.model", quote(self.rdf.name()));
        match &self.rdf {
            RdfModel::HardStep { sigma } => line("rdf.sigma_m", f(*sigma)),
            RdfModel::Table { path, .. } => line("rdf.table", quote(&path.display().to_string())),
            _ => {}
        }
        line("meanfield.omega", f(self.omega));
        line("meanfield.Omega_list", list(&self.mode_omegas));
        line("meanfield.density_grid", list(&self.density_grid));
        line(
            "kernel.shapes",
            format!(
                "[{}]",
                self.kernel_shapes.iter().map(|s| quote(&s.to_string())).collect::<Vec<_>>().join(", ")
            ),
        );
        line("kernel.samples", self.kernel_samples.to_string());
        line("kernel.r_max_over_ell", f(self.kernel_r_max_over_ell));
        line("microsim.atoms", m.atoms.to_string());
        line("microsim.box_over_ell", f(m.box_over_ell));
        line("microsim.lambda_min_over_ell", f(m.lambda_min_over_ell));
        line("microsim.sigma_over_ell", f(m.sigma_over_ell));
        line("microsim.density_grid", list(&m.density_grid));
        line("microsim.replicas", m.replicas.to_string());
        line("microsim.seed", m.seed.to_string());
        line("microsim.equilibration_sweeps", m.equilibration_sweeps.to_string());
        if let Some(d) = &self.output_directory {
            line("output.directory", quote(&d.display().to_string()));
        }
        line("output.precision", self.precision.to_string());
        line("validation.scale_factor", f(self.scale_factor));
        out
    }
}

fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

/// Flattened `dotted.key → value` map.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, Value>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(format!("cannot parse configuration: {e}")))?;
        let mut entries = BTreeMap::new();
        flatten("", &Value::Table(table), &mut entries);
        for key in entries.keys() {
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!("unknown configuration key `{key}`")));
            }
        }
        Ok(RawConfig { entries })
    }

    /// Applies `DEPOL_SECTION__KEY=value` overrides.
    pub fn apply_env<I: IntoIterator<Item = (String, String)>>(&mut self, vars: I) -> Result<(), CliError> {
        for (name, raw) in vars {
            let Some(rest) = name.strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let dotted = rest.replace("__", ".");
            let Some(key) = KEYS.iter().find(|k| k.eq_ignore_ascii_case(&dotted)) else {
                return Err(CliError::Config(format!("environment variable {name} names no configuration key")));
            };
            self.entries.insert(key.to_string(), parse_scalar(&raw));
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&Value> {
        debug_assert!(KEYS.contains(&key), "{key}");
        self.entries.get(key)
    }

    fn float(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(type_error(key, "a number", v)),
        }
    }

    fn length(&self, key: &str) -> Result<Option<f64>, CliError> {
        let v = self.float(key)?;
        if let Some(x) = v {
            if !(x > 0.0 && x.is_finite()) {
                return Err(CliError::Config(format!("`{key}` must be a positive length, got {x}")));
            }
        }
        Ok(v)
    }

    fn positive(&self, key: &str) -> Result<Option<f64>, CliError> {
        let v = self.float(key)?;
        if let Some(x) = v {
            if !(x > 0.0 && x.is_finite()) {
                return Err(CliError::Config(format!("`{key}` must be positive, got {x}")));
            }
        }
        Ok(v)
    }

    fn unsigned(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
            Some(v) => Err(type_error(key, "a non-negative integer", v)),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(type_error(key, "a string", v)),
        }
    }

    fn floats(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::Float(x) => Ok(*x),
                    Value::Integer(i) => Ok(*i as f64),
                    other => Err(type_error(key, "an array of numbers", other)),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(Value::Float(x)) => Ok(Some(vec![*x])),
            Some(Value::Integer(i)) => Ok(Some(vec![*i as f64])),
            Some(v) => Err(type_error(key, "an array of numbers", v)),
        }
    }

    fn strings(&self, key: &str) -> Result<Option<Vec<String>>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    other => Err(type_error(key, "an array of strings", other)),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(Value::String(s)) => Ok(Some(vec![s.clone()])),
            Some(v) => Err(type_error(key, "an array of strings", v)),
        }
    }
}

fn type_error(key: &str, expected: &str, got: &Value) -> CliError {
    CliError::Config(format!("`{key}` must be {expected}, got `{got}`"))
}

fn flatten(prefix: &str, value: &Value, out: &mut BTreeMap<String, Value>) {
    match value {
        Value::Table(t) => {
            for (k, v) in t {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

/// Environment values are read as TOML values, falling back to a bare string.
fn parse_scalar(raw: &str) -> Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

fn parse_shape(name: &str) -> Result<ProfileShape, CliError> {
    name.parse().map_err(|e: depol_core::Error| CliError::Config(e.to_string()))
}

fn check_grid(key: &str, grid: &[f64], allow_zero: bool) -> Result<(), CliError> {
    if grid.is_empty() {
        return Err(CliError::Config(format!("`{key}` must not be empty")));
    }
    for &x in grid {
        let ok = x.is_finite() && (x > 0.0 || (allow_zero && x == 0.0));
        if !ok {
            return Err(CliError::Config(format!("`{key}` entries must be {}, got {x}", if allow_zero { "non-negative" } else { "positive" })));
        }
    }
    Ok(())
}

/// Reads a two-column `r_m g` table; blank lines and `#` comments are skipped,
/// columns may be separated by whitespace or commas.
pub fn read_rdf_table(path: &Path) -> Result<RdfTable, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read rdf table {}: {e}", path.display())))?;
    let (mut r, mut g) = (Vec::new(), Vec::new());
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let parsed: Option<Vec<f64>> = cols.iter().map(|c| c.parse().ok()).collect();
        match parsed.as_deref() {
            Some([a, b]) => {
                r.push(*a);
                g.push(*b);
            }
            _ => {
                return Err(CliError::Config(format!(
                    "rdf table {} line {}: expected two numbers",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    RdfTable::new(r, g).map_err(|e| CliError::Config(format!("rdf table {}: {e}", path.display())))
}

fn scale_error(msg: String) -> CliError {
    CliError::Config(format!("scale separation violated: {msg}"))
}

/// Builds and validates a [`RunConfig`]. Relative table paths resolve against
/// the directory of `source`.
pub fn resolve(raw: &RawConfig, source: &Path) -> Result<RunConfig, CliError> {
    let constants = PhysicalConstants::default();

    let omega = match (raw.positive("species.omega")?, raw.length("species.wavelength_m")?) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("give either `species.omega` or `species.wavelength_m`, not both".into()))
        }
        (Some(w), None) => w,
        (None, Some(l)) => constants.angular_frequency_from_wavelength(l),
        (None, None) => constants.angular_frequency_from_wavelength(DEFAULT_WAVELENGTH),
    };
    let core = match raw.float("species.core_diameter_m")? {
        Some(x) if !(x >= 0.0 && x.is_finite()) => {
            return Err(CliError::Config(format!("`species.core_diameter_m` must be a non-negative length, got {x}")))
        }
        Some(x) => x,
        None => DEFAULT_CORE,
    };
    let species = AtomSpecies::new(
        raw.string("species.name")?.unwrap_or_else(|| "Rb-D1".into()),
        omega,
        raw.positive("species.dipole_Cm")?.unwrap_or(DEFAULT_DIPOLE),
        core,
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    let shape_name = raw.string("cutoff.shape")?.unwrap_or_else(|| "gaussian".into());
    let shape = parse_shape(&shape_name)?;
    let ell = raw
        .length("cutoff.ell_m")?
        .ok_or_else(|| CliError::Config("missing required key `cutoff.ell_m`".into()))?;
    let scale_factor = raw.float("validation.scale_factor")?.unwrap_or(4.0);
    if !(scale_factor >= 1.0 && scale_factor.is_finite()) {
        return Err(CliError::Config(format!("`validation.scale_factor` must be at least 1, got {scale_factor}")));
    }
    let lambda_min = raw.length("cutoff.lambda_min_m")?.unwrap_or(scale_factor * ell);
    if lambda_min < scale_factor * ell {
        return Err(scale_error(format!(
            "ell << lambda_min requires lambda_min >= {scale_factor} ell, got lambda_min = {lambda_min:e} m, ell = {ell:e} m"
        )));
    }
    species.check_core_against_cutoff(ell);

    let model = raw.string("rdf.model")?.unwrap_or_else(|| "hard-step".into());
    let rdf = match model.as_str() {
        "none" => RdfModel::None,
        "ideal" => RdfModel::Ideal,
        "hard-step" => {
            let sigma = match raw.float("rdf.sigma_m")? {
                Some(x) if !(x >= 0.0 && x.is_finite()) => {
                    return Err(CliError::Config(format!("`rdf.sigma_m` must be a non-negative length, got {x}")))
                }
                Some(x) => x,
                None => species.core_diameter,
            };
            if sigma * scale_factor > ell {
                return Err(scale_error(format!(
                    "sigma << ell requires sigma <= ell/{scale_factor}, got sigma = {sigma:e} m, ell = {ell:e} m"
                )));
            }
            RdfModel::HardStep { sigma }
        }
        "table" => {
            let rel = raw
                .string("rdf.table")?
                .ok_or_else(|| CliError::Config("`rdf.model = \"table\"` needs `rdf.table`".into()))?;
            let mut path = PathBuf::from(rel);
            if path.is_relative() {
                if let Some(dir) = source.parent() {
                    path = dir.join(path);
                }
            }
            let table = read_rdf_table(&path)?;
            RdfModel::Table { path, table }
        }
        other => {
            return Err(CliError::Config(format!(
                "`rdf.model` must be one of none, ideal, hard-step, table; got `{other}`"
            )))
        }
    };

    let mf_omega = raw.positive("meanfield.omega")?.unwrap_or(species.omega);
    let mode_omegas = raw.floats("meanfield.Omega_list")?.unwrap_or_else(|| vec![mf_omega]);
    check_grid("meanfield.Omega_list", &mode_omegas, false)?;
    let density_grid = raw
        .floats("meanfield.density_grid")?
        .unwrap_or_else(|| (0..=8).map(|i| 0.5 * i as f64).collect());
    check_grid("meanfield.density_grid", &density_grid, true)?;

    let kernel_shapes = match raw.strings("kernel.shapes")? {
        Some(names) => names.iter().map(|n| parse_shape(n)).collect::<Result<Vec<_>, _>>()?,
        None => vec![ProfileShape::Gaussian, ProfileShape::Lorentzian],
    };
    if kernel_shapes.is_empty() {
        return Err(CliError::Config("`kernel.shapes` must not be empty".into()));
    }
    let kernel_samples = raw.unsigned("kernel.samples")?.unwrap_or(20) as usize;
    if kernel_samples < 2 {
        return Err(CliError::Config("`kernel.samples` must be at least 2".into()));
    }
    let kernel_r_max_over_ell = raw.positive("kernel.r_max_over_ell")?.unwrap_or(8.0);

    let lambda_ratio = raw.positive("microsim.lambda_min_over_ell")?.unwrap_or(lambda_min / ell);
    let microsim = MicrosimSection {
        atoms: raw.unsigned("microsim.atoms")?.unwrap_or(256) as usize,
        box_over_ell: raw.positive("microsim.box_over_ell")?.unwrap_or(8.0),
        lambda_min_over_ell: lambda_ratio,
        sigma_over_ell: raw.float("microsim.sigma_over_ell")?.unwrap_or(0.25),
        density_grid: raw
            .floats("microsim.density_grid")?
            .unwrap_or_else(|| vec![0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0]),
        replicas: raw.unsigned("microsim.replicas")?.unwrap_or(10) as usize,
        seed: raw.unsigned("microsim.seed")?.unwrap_or(0),
        equilibration_sweeps: raw.unsigned("microsim.equilibration_sweeps")?.unwrap_or(0) as usize,
    };
    if microsim.atoms == 0 || microsim.replicas == 0 {
        return Err(CliError::Config("`microsim.atoms` and `microsim.replicas` must be positive".into()));
    }
    if !(microsim.sigma_over_ell >= 0.0 && microsim.sigma_over_ell.is_finite()) {
        return Err(CliError::Config("`microsim.sigma_over_ell` must be non-negative".into()));
    }
    check_grid("microsim.density_grid", &microsim.density_grid, false)?;
    if microsim.density_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config("`microsim.density_grid` must be strictly increasing".into()));
    }
    if microsim.sigma_over_ell * scale_factor > 1.0 {
        return Err(scale_error(format!(
            "sigma << ell requires microsim.sigma_over_ell <= 1/{scale_factor}, got {}",
            microsim.sigma_over_ell
        )));
    }
    if microsim.lambda_min_over_ell < scale_factor {
        return Err(scale_error(format!(
            "ell << lambda_min requires microsim.lambda_min_over_ell >= {scale_factor}, got {}",
            microsim.lambda_min_over_ell
        )));
    }
    if microsim.box_over_ell <= microsim.lambda_min_over_ell {
        return Err(scale_error(format!(
            "lambda_min < L requires microsim.box_over_ell > {}, got {}",
            microsim.lambda_min_over_ell, microsim.box_over_ell
        )));
    }

    let precision = raw.unsigned("output.precision")?.unwrap_or(17) as usize;
    if !(1..=17).contains(&precision) {
        return Err(CliError::Config(format!("`output.precision` must lie in 1..=17, got {precision}")));
    }

    Ok(RunConfig {
        source: source.to_path_buf(),
        constants,
        species,
        shape,
        ell,
        lambda_min,
        rdf,
        omega: mf_omega,
        mode_omegas,
        density_grid,
        kernel_shapes,
        kernel_samples,
        kernel_r_max_over_ell,
        microsim,
        output_directory: raw.string("output.directory")?.map(PathBuf::from),
        precision,
        scale_factor,
    })
}

/// Reads, overrides from the process environment, and validates.
pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read configuration {}: {e}", path.display())))?;
    let mut raw = RawConfig::parse(&text)?;
    raw.apply_env(std::env::vars())?;
    resolve(&raw, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Result<RunConfig, CliError> {
        resolve(&RawConfig::parse(text).unwrap(), Path::new("/nonexistent/run.conf"))
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = cfg("cutoff.ell_m = 2.5e-8\n").unwrap();
        assert_eq!(c.species.dipole, DEFAULT_DIPOLE);
        assert_eq!(c.lambda_min, 4.0 * 2.5e-8);
        assert_eq!(c.rdf, RdfModel::HardStep { sigma: DEFAULT_CORE });
        assert_eq!(c.mode_omegas, vec![c.species.omega]);
        assert_eq!(c.precision, 17);
        let again = cfg(&c.resolved()).unwrap();
        assert_eq!(again.resolved(), c.resolved());
    }

    #[test]
    fn sections_and_dotted_keys_are_equivalent() {
        let a = cfg("cutoff.ell_m = 3e-8\nmicrosim.atoms = 100\n").unwrap();
        let b = cfg("[cutoff]\nell_m = 3e-8\n[microsim]\natoms = 100\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejections() {
        assert!(matches!(cfg(""), Err(CliError::Config(m)) if m.contains("cutoff.ell_m")));
        assert!(matches!(cfg("cutoff.ell_m = -1e-8"), Err(CliError::Config(_))));
        assert!(matches!(cfg("cutoff.ell_m = 1e-8\ncutoff.lambda_min_m = 1e-8"), Err(CliError::Config(m)) if m.contains("scale separation")));
        assert!(matches!(cfg("cutoff.ell_m = 1e-9"), Err(CliError::Config(m)) if m.contains("sigma")));
        assert!(matches!(RawConfig::parse("cutoff.elll_m = 1e-9"), Err(CliError::Config(m)) if m.contains("unknown")));
        assert!(matches!(cfg("cutoff.ell_m = 1e-8\nrdf.model = \"bogus\""), Err(CliError::Config(_))));
        assert!(matches!(cfg("cutoff.ell_m = 1e-8\nmicrosim.box_over_ell = 3.0"), Err(CliError::Config(_))));
    }

    #[test]
    fn environment_overrides() {
        let mut raw = RawConfig::parse("cutoff.ell_m = 1e-8").unwrap();
        raw.apply_env([
            ("DEPOL_CUTOFF__ELL_M".to_string(), "2e-8".to_string()),
            ("DEPOL_MEANFIELD__OMEGA_LIST".to_string(), "[1e15, 2e15]".to_string()),
            ("DEPOL_CUTOFF__SHAPE".to_string(), "lorentzian".to_string()),
            ("UNRELATED".to_string(), "x".to_string()),
        ])
        .unwrap();
        let c = resolve(&raw, Path::new("x")).unwrap();
        assert_eq!(c.ell, 2e-8);
        assert_eq!(c.mode_omegas, vec![1e15, 2e15]);
        assert_eq!(c.shape, ProfileShape::Lorentzian);
        assert!(raw.apply_env([("DEPOL_NOPE".to_string(), "1".to_string())]).is_err());
    }
}
