//! CSV ingestion for closed-bomb points, dilution runs and reference curves.

use std::path::Path;

use reduced_eos::{ClosedBombPoint, InertRunRecord};

use crate::error::{CliError, Result};

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.position() {
        Some(pos) => CliError::parse(format!("{}:{}: {e}", path.display(), pos.line())),
        None => CliError::parse(format!("{}: {e}", path.display())),
    }
}

/// Reads a two-column numeric table with the given header, returning
/// `(line, [x, y])` rows.
fn read_pairs(path: &Path, header: [&str; 2]) -> Result<Vec<(u64, [f64; 2])>> {
    let mut rdr = reader(path)?;
    let found = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    if found.is_empty() {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    if found.len() != 2 || found.get(0) != Some(header[0]) || found.get(1) != Some(header[1]) {
        return Err(CliError::parse(format!("{}:1: expected header '{},{}'", path.display(), header[0], header[1])));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let mut values = [0.0; 2];
        for (col, value) in values.iter_mut().enumerate() {
            let field = record.get(col).unwrap_or("");
            *value = field.parse::<f64>().map_err(|_| {
                CliError::parse(format!("{}:{line}:{}: '{field}' is not a number", path.display(), col + 1))
            })?;
        }
        rows.push((line, values));
    }
    if rows.is_empty() {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

/// Closed-bomb points from `rho_kg_m3,pmax_MPa`; pressures converted to Pa.
pub fn load_closed_bomb_csv(path: &Path) -> Result<Vec<ClosedBombPoint>> {
    read_pairs(path, ["rho_kg_m3", "pmax_MPa"])?
        .into_iter()
        .map(|(line, [rho, p])| {
            ClosedBombPoint::from_mpa(rho, p)
                .map_err(|e| CliError::validation(format!("{}:{line}: {e}", path.display())))
        })
        .collect()
}

/// Dilution runs from `Y,T_flame_K`.
pub fn load_inert_runs_csv(path: &Path) -> Result<Vec<InertRunRecord>> {
    read_pairs(path, ["Y", "T_flame_K"])?
        .into_iter()
        .map(|(line, [y, t])| {
            InertRunRecord::new(y, t).map_err(|e| CliError::validation(format!("{}:{line}: {e}", path.display())))
        })
        .collect()
}

/// Externally supplied curve keyed by loading density.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    /// Column names after `rho_kg_m3`.
    pub columns: Vec<String>,
    pub rows: Vec<(f64, Vec<String>)>,
}

impl ReferenceTable {
    /// Fields of the row whose density matches `rho` to 1e-9 relative.
    pub fn lookup(&self, rho: f64) -> Option<&[String]> {
        self.rows.iter().find(|(r, _)| (r - rho).abs() <= 1e-9 * rho.abs().max(1.0)).map(|(_, v)| v.as_slice())
    }
}

pub fn load_reference_csv(path: &Path) -> Result<ReferenceTable> {
    let mut rdr = reader(path)?;
    let header = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    if header.get(0) != Some("rho_kg_m3") || header.len() < 2 {
        return Err(CliError::parse(format!(
            "{}:1: reference header must start with 'rho_kg_m3' and name at least one column",
            path.display()
        )));
    }
    let columns = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let rho = record
            .get(0)
            .unwrap_or("")
            .parse::<f64>()
            .map_err(|_| CliError::parse(format!("{}:{line}:1: density is not a number", path.display())))?;
        rows.push((rho, record.iter().skip(1).map(str::to_string).collect()));
    }
    Ok(ReferenceTable { columns, rows })
}
