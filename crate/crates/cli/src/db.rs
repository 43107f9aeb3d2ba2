//! Material database in a sectioned `key = value` text format:
//!
//! ```text
//! # comment
//! [material "NC-13" model NA]
//! R = 338.9
//! b = 0.001484
//! Cv = 1637.1
//! e_s_eff_kJ = 5360.7
//! T_flame = 3275
//! rho_range = 100 150
//! ```

use std::fmt::Write as _;
use std::path::Path;

use reduced_eos::{DensityRange, EosModel, GasLaw, GasParams};

use crate::error::{CliError, Result};

/// Database shipped with the binary.
pub const BUILTIN_DB: &str = include_str!("../data/materials.db");

/// Sign of a material's oxygen balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OxygenBalance {
    Negative,
    Zero,
    Positive,
}

impl OxygenBalance {
    fn as_str(self) -> &'static str {
        match self {
            OxygenBalance::Negative => "negative",
            OxygenBalance::Zero => "zero",
            OxygenBalance::Positive => "positive",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "negative" | "-" => Some(OxygenBalance::Negative),
            "zero" | "0" => Some(OxygenBalance::Zero),
            "positive" | "+" => Some(OxygenBalance::Positive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRecord {
    pub params: GasParams,
    pub source: Option<String>,
    pub date: Option<String>,
    pub oxygen_balance: Option<OxygenBalance>,
}

impl MaterialRecord {
    pub fn new(params: GasParams) -> Self {
        MaterialRecord { params, source: None, date: None, oxygen_balance: None }
    }
}

/// Records in file order, unique per (name, model).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MaterialDatabase {
    records: Vec<MaterialRecord>,
}

impl MaterialDatabase {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_DB, "<builtin>").expect("built-in database is valid")
    }

    pub fn records(&self) -> &[MaterialRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Adds a record, replacing any existing one with the same name and model.
    pub fn upsert(&mut self, record: MaterialRecord) -> Result<()> {
        record.params.validate()?;
        match self.position(&record.params.name, record.params.model()) {
            Some(i) => self.records[i] = record,
            None => self.records.push(record),
        }
        Ok(())
    }

    fn position(&self, name: &str, model: EosModel) -> Option<usize> {
        self.records.iter().position(|r| r.params.name == name && r.params.model() == model).or_else(|| {
            self.records.iter().position(|r| r.params.name.eq_ignore_ascii_case(name) && r.params.model() == model)
        })
    }

    /// Record for `name` (exact match first, then case-insensitive) and `model`.
    pub fn get(&self, name: &str, model: EosModel) -> Result<&MaterialRecord> {
        self.position(name, model)
            .map(|i| &self.records[i])
            .ok_or_else(|| CliError::NotFound(format!("no {model} record for material '{name}' in the database")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut db = MaterialDatabase::default();
        let mut current: Option<Section> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| CliError::parse(format!("{origin}:{line_no}: {msg}"));
            if line.starts_with('[') {
                if let Some(section) = current.take() {
                    db.finish(section, origin)?;
                }
                let (name, model) = parse_header(line).map_err(at)?;
                current = Some(Section::new(name, model, line_no));
                continue;
            }
            let Some(section) = current.as_mut() else {
                return Err(at("key outside of a [material ...] section".into()));
            };
            let Some((key, value)) = line.split_once('=') else {
                return Err(at(format!("expected 'key = value', got '{line}'")));
            };
            section.set(key.trim(), value.trim()).map_err(at)?;
        }
        if let Some(section) = current.take() {
            db.finish(section, origin)?;
        }
        Ok(db)
    }

    fn finish(&mut self, section: Section, origin: &str) -> Result<()> {
        let line = section.line;
        let record = section.build().map_err(|msg| CliError::parse(format!("{origin}:{line}: {msg}")))?;
        record.params.validate().map_err(|e| CliError::validation(format!("{origin}:{line}: {e}")))?;
        if self.records.iter().any(|r| r.params.name == record.params.name && r.params.model() == record.params.model())
        {
            return Err(CliError::parse(format!(
                "{origin}:{line}: duplicate record for {} {}",
                record.params.name,
                record.params.model()
            )));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, rec) in self.records.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_record(&mut out, rec);
        }
        out
    }
}

fn scale_kj(text: &str) -> Option<f64> {
    let t = text.trim();
    if t.contains(['e', 'E']) {
        t.parse::<f64>().ok().map(|x| x * 1e3)
    } else {
        format!("{t}e3").parse::<f64>().ok()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_header(line: &str) -> std::result::Result<(String, EosModel), String> {
    let inner = line
        .strip_prefix('[')
        .and_then(|l| l.strip_suffix(']'))
        .ok_or_else(|| format!("malformed section header '{line}'"))?
        .trim();
    let rest = inner
        .strip_prefix("material")
        .ok_or_else(|| format!("section header must start with 'material': '{line}'"))?
        .trim_start();
    let rest = rest.strip_prefix('"').ok_or_else(|| format!("material name must be quoted: '{line}'"))?;
    let end = rest.find('"').ok_or_else(|| format!("unterminated material name: '{line}'"))?;
    let name = rest[..end].to_string();
    if name.is_empty() {
        return Err("empty material name".into());
    }
    let mut tail = rest[end + 1..].split_whitespace();
    match (tail.next(), tail.next(), tail.next()) {
        (Some("model"), Some(model), None) => {
            let model = model.parse::<EosModel>().map_err(|e| e.to_string())?;
            Ok((name, model))
        }
        _ => Err(format!("expected 'model NAME' after the material name: '{line}'")),
    }
}

const KEYS: &[&str] = &[
    "R",
    "b",
    "a",
    "Cv",
    "Cv0",
    "c",
    "q_kJ",
    "q",
    "e_s_eff_kJ",
    "e_s_eff",
    "T_flame",
    "gamma",
    "rho_range",
    "source",
    "date",
    "oxygen_balance",
];

struct Section {
    name: String,
    model: EosModel,
    line: usize,
    values: Vec<(&'static str, String)>,
}

impl Section {
    fn new(name: String, model: EosModel, line: usize) -> Self {
        Section { name, model, line, values: Vec::new() }
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(format!("unknown key '{key}'"));
        };
        let allowed = match known {
            "b" => self.model == EosModel::Na,
            "Cv" => self.model != EosModel::Vo1Cvt,
            "a" => self.model != EosModel::Na,
            "Cv0" | "c" => self.model == EosModel::Vo1Cvt,
            _ => true,
        };
        if !allowed {
            return Err(format!("key '{key}' does not apply to model {}", self.model));
        }
        if self.values.iter().any(|(k, _)| *k == known) {
            return Err(format!("duplicate key '{key}'"));
        }
        self.values.push((known, value.to_string()));
        Ok(())
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    fn num(&self, key: &str) -> std::result::Result<Option<f64>, String> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse::<f64>().map(Some).map_err(|_| format!("key '{key}': '{v}' is not a number")),
        }
    }

    fn required(&self, key: &str) -> std::result::Result<f64, String> {
        self.num(key)?.ok_or_else(|| format!("missing key '{key}' for {} {}", self.name, self.model))
    }

    /// SI value from either the kJ key or the SI key. The kJ text is scaled
    /// in decimal so that "5360.7" reads as exactly 5360700 J.
    fn energy(&self, kj_key: &str, si_key: &str) -> std::result::Result<Option<f64>, String> {
        let kj = match self.raw(kj_key) {
            None => None,
            Some(v) => Some(scale_kj(v).ok_or_else(|| format!("key '{kj_key}': '{v}' is not a number"))?),
        };
        match (kj, self.num(si_key)?) {
            (Some(_), Some(_)) => Err(format!("give only one of '{kj_key}' and '{si_key}'")),
            (Some(j), None) => Ok(Some(j)),
            (None, si) => Ok(si),
        }
    }

    fn build(self) -> std::result::Result<MaterialRecord, String> {
        let law = match self.model {
            EosModel::Na => GasLaw::NobleAbel { covolume: self.required("b")?, cv: self.required("Cv")? },
            EosModel::Vo1 => GasLaw::Virial { a: self.required("a")?, cv: self.required("Cv")? },
            EosModel::Vo1Cvt => {
                GasLaw::VirialCvt { a: self.required("a")?, cv0: self.required("Cv0")?, c: self.required("c")? }
            }
        };
        let rho_range = {
            let raw = self.raw("rho_range").ok_or("missing key 'rho_range'")?;
            let parts: Vec<f64> = raw
                .split_whitespace()
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| format!("rho_range '{raw}' is not two numbers"))?;
            match parts[..] {
                [lo, hi] => DensityRange { lo, hi },
                _ => return Err(format!("rho_range '{raw}' is not two numbers")),
            }
        };
        let oxygen_balance = match self.raw("oxygen_balance") {
            None => None,
            Some(v) => Some(
                OxygenBalance::parse(v)
                    .ok_or_else(|| format!("oxygen_balance '{v}' must be negative, zero or positive"))?,
            ),
        };
        let params = GasParams {
            name: self.name.clone(),
            r: self.required("R")?,
            law,
            q: self.energy("q_kJ", "q")?.unwrap_or(0.0),
            e_s_eff: self.energy("e_s_eff_kJ", "e_s_eff")?.ok_or("missing key 'e_s_eff_kJ'")?,
            t_flame: self.required("T_flame")?,
            gamma_cal: self.num("gamma")?,
            rho_range,
        };
        Ok(MaterialRecord {
            params,
            source: self.raw("source").map(str::to_string),
            date: self.raw("date").map(str::to_string),
            oxygen_balance,
        })
    }
}

/// Writes an energy under the kJ key when that representation reads back
/// bit-exactly, otherwise under the SI key.
fn write_energy(out: &mut String, kj_key: &str, si_key: &str, joules: f64) {
    let kj = joules / 1e3;
    if scale_kj(&kj.to_string()) == Some(joules) {
        let _ = writeln!(out, "{kj_key} = {kj}");
    } else {
        let _ = writeln!(out, "{si_key} = {joules}");
    }
}

fn write_record(out: &mut String, rec: &MaterialRecord) {
    let p = &rec.params;
    let _ = writeln!(out, "[material \"{}\" model {}]", p.name, p.model());
    let _ = writeln!(out, "R = {}", p.r);
    match p.law {
        GasLaw::NobleAbel { covolume, cv } => {
            let _ = writeln!(out, "b = {covolume}");
            let _ = writeln!(out, "Cv = {cv}");
        }
        GasLaw::Virial { a, cv } => {
            let _ = writeln!(out, "a = {a}");
            let _ = writeln!(out, "Cv = {cv}");
        }
        GasLaw::VirialCvt { a, cv0, c } => {
            let _ = writeln!(out, "a = {a}");
            let _ = writeln!(out, "Cv0 = {cv0}");
            let _ = writeln!(out, "c = {c}");
        }
    }
    if p.q != 0.0 {
        write_energy(out, "q_kJ", "q", p.q);
    }
    write_energy(out, "e_s_eff_kJ", "e_s_eff", p.e_s_eff);
    let _ = writeln!(out, "T_flame = {}", p.t_flame);
    if let Some(g) = p.gamma_cal {
        let _ = writeln!(out, "gamma = {g}");
    }
    let _ = writeln!(out, "rho_range = {} {}", p.rho_range.lo, p.rho_range.hi);
    if let Some(ob) = rec.oxygen_balance {
        let _ = writeln!(out, "oxygen_balance = {}", ob.as_str());
    }
    if let Some(s) = &rec.source {
        let _ = writeln!(out, "source = {s}");
    }
    if let Some(d) = &rec.date {
        let _ = writeln!(out, "date = {d}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_records() {
        let db = MaterialDatabase::builtin();
        assert_eq!(db.len(), 9);
        let nc = db.get("NC-13", EosModel::Na).unwrap();
        assert_eq!(nc.params.law, GasLaw::NobleAbel { covolume: 0.001484, cv: 1637.1 });
        assert_eq!(nc.params.e_s_eff, 5360.7e3);
        assert!(db.get("nc-13", EosModel::Vo1).is_ok());
        assert!(db.get("NC-13", EosModel::Vo1Cvt).is_ok());
        assert!(matches!(db.get("TNT", EosModel::Na), Err(CliError::NotFound(_))));
    }

    #[test]
    fn round_trip() {
        let db = MaterialDatabase::builtin();
        let again = MaterialDatabase::parse(&db.to_text(), "mem").unwrap();
        assert_eq!(db, again);
        assert_eq!(again.to_text(), db.to_text());
    }

    #[test]
    fn awkward_energies_round_trip() {
        let mut db = MaterialDatabase::default();
        let mut rec = MaterialDatabase::builtin().get("RDX", EosModel::Vo1).unwrap().clone();
        rec.params.e_s_eff = 6642.1e3 * (1.0 + f64::EPSILON);
        rec.params.q = -1234.567891234;
        db.upsert(rec).unwrap();
        assert_eq!(MaterialDatabase::parse(&db.to_text(), "mem").unwrap(), db);
    }

    #[test]
    fn unknown_key_is_named() {
        let text = "[material \"X\" model NA]\nR = 300\nfoo = 1\n";
        let err = MaterialDatabase::parse(text, "t.db").unwrap_err();
        assert!(matches!(err, CliError::Parse(ref m) if m.contains("'foo'") && m.contains("t.db:3")), "{err}");
    }

    #[test]
    fn rejects_malformed_sections() {
        for text in [
            "R = 300\n",
            "[material X model NA]\n",
            "[material \"X\" model FOO]\n",
            "[material \"X\" model NA]\nR = 300\nb = 0.001\nCv = 1500\nT_flame = 3000\nrho_range = 100 150\n",
            "[material \"X\" model VO1]\nb = 0.001\n",
            "[material \"X\" model NA]\nR = abc\n",
        ] {
            assert!(MaterialDatabase::parse(text, "t").is_err(), "{text}");
        }
    }

    #[test]
    fn invalid_values_fail_validation() {
        let text = "[material \"X\" model NA]\nR = -1\nb = 0.001\nCv = 1500\ne_s_eff_kJ = 4000\nT_flame = 3000\nrho_range = 100 150\n";
        assert!(matches!(MaterialDatabase::parse(text, "t"), Err(CliError::Validation(_))));
    }

    #[test]
    fn negative_virial_coefficient_loads() {
        let text = "[material \"NEG\" model VO1]\nR = 322\na = -0.02\nCv = 1640.5\ne_s_eff_kJ = 5371.9\nT_flame = 3275\nrho_range = 100 150\n";
        let db = MaterialDatabase::parse(text, "t").unwrap();
        assert_eq!(db.records()[0].params.law, GasLaw::Virial { a: -0.02, cv: 1640.5 });
    }
}
