use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Version tag of the CSV column layouts.
pub const FORMAT_VERSION: &str = "1";

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    pub fn render(&self, precision: usize) -> String {
        match self {
            Cell::Float(x) if x.is_nan() => "NaN".into(),
            Cell::Float(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Float(x) => format!("{:.*e}", precision.saturating_sub(1), x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

/// Rows of one command's output, in input order.
#[derive(Debug)]
pub struct SweepResult {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// `key=value` pairs written as `#` comment lines after the table.
    pub footer: Vec<(String, String)>,
    /// Worst per-row failure, if any.
    pub worst_error: Option<CliError>,
}

impl SweepResult {
    pub fn new(header: Vec<&'static str>) -> Self {
        SweepResult {
            header,
            rows: Vec::new(),
            footer: Vec::new(),
            worst_error: None,
        }
    }

    pub fn note_error(&mut self, e: CliError) {
        let rank = |e: &CliError| match e {
            CliError::Numerical(_) => 1,
            CliError::Infeasible(_) => 2,
            _ => 0,
        };
        if rank(&e) > 0 && self.worst_error.as_ref().map_or(true, |w| rank(&e) > rank(w)) {
            self.worst_error = Some(e);
        }
    }

    pub fn to_csv(&self, precision: usize) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            w.write_record(row.iter().map(|c| c.render(precision)))?;
        }
        let mut bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
        for (k, v) in &self.footer {
            writeln!(bytes, "# {k}={v}")?;
        }
        Ok(bytes)
    }
}

/// Creates `dir`, refusing to reuse an existing path.
pub fn create_output_dir(dir: &Path) -> Result<PathBuf, CliError> {
    if dir.exists() {
        return Err(CliError::Config(format!(
            "output directory {} already exists; outputs are never overwritten",
            dir.display()
        )));
    }
    if let Some(parent) = dir.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::create_dir(dir)?;
    Ok(dir.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(Cell::Float(0.1).render(17), "1.0000000000000001e-1");
        assert_eq!(Cell::Float(-3.0).render(3), "-3.00e0");
        assert_eq!(Cell::Float(f64::NAN).render(17), "NaN");
        let x = 1.0 / 3.0;
        assert_eq!(Cell::Float(x).render(17).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_layout() {
        let mut r = SweepResult::new(vec!["a", "error"]);
        r.rows.push(vec![Cell::Float(1.0), Cell::Text(String::new())]);
        r.rows.push(vec![Cell::Float(2.0), Cell::Text("bad, \"x\"".into())]);
        r.footer.push(("threshold".into(), "none".into()));
        let text = String::from_utf8(r.to_csv(2).unwrap()).unwrap();
        assert_eq!(text, "a,error\n1.0e0,\n2.0e0,\"bad, \"\"x\"\"\"\n# threshold=none\n");
    }

    #[test]
    fn output_dir_is_create_only() {
        let tmp = tempfile::tempdir().unwrap();
        let d = tmp.path().join("a/b");
        create_output_dir(&d).unwrap();
        assert!(matches!(create_output_dir(&d), Err(CliError::Config(_))));
    }
}
