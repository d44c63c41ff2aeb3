//! Deterministic CSV output. Every dataset starts with `#`-prefixed
//! provenance lines (config hash, crate versions, numerical knobs) so a
//! result file can always be traced back to the run that produced it.

use std::io::Write;
use std::path::Path;

use twotone_core::Error;

pub struct Provenance {
    pub experiment: &'static str,
    pub config_hash: u64,
    pub n_max: usize,
    pub steps_per_cycle: usize,
}

/// Values are rendered with 12 significant digits; reruns on the same
/// platform reproduce datasets byte for byte.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

pub struct Dataset {
    pub provenance: Provenance,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Optional non-numeric first column (e.g. quantity labels in tables).
    pub row_labels: Option<Vec<String>>,
}

impl Dataset {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let p = &self.provenance;
        out.push_str(&format!("# experiment: {}\n", p.experiment));
        out.push_str(&format!("# config_hash: {:016x}\n", p.config_hash));
        out.push_str(&format!(
            "# versions: twotone-core {}, twotone-cli {}\n",
            twotone_core::VERSION,
            crate::VERSION
        ));
        out.push_str(&format!("# n_max: {}\n", p.n_max));
        out.push_str(&format!("# steps_per_cycle: {}\n", p.steps_per_cycle));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let mut fields: Vec<String> = Vec::with_capacity(row.len() + 1);
            if let Some(labels) = &self.row_labels {
                fields.push(labels[i].clone());
            }
            fields.extend(row.iter().map(|&v| format_value(v)));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), Error> {
        let mut file = std::fs::File::create(path).map_err(|e| {
            Error::InvalidParam(format!("cannot create {}: {e}", path.display()))
        })?;
        file.write_all(self.render().as_bytes()).map_err(|e| {
            Error::InvalidParam(format!("cannot write {}: {e}", path.display()))
        })?;
        Ok(())
    }
}
