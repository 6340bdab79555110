use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use hypertree::{write_complex, SimplicialComplex};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    /// Complex file, for subcommands that produce a complex.
    Cx,
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn fmt12(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 || !r.is_finite() || (1e-6..1e15).contains(&r.abs()) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.as_f64().filter(|_| n.is_f64()).map_or_else(|| n.to_string(), fmt12)),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// A table with a fixed header, written as CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// The result of one subcommand.
pub struct Report {
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
    pub body: Map<String, Value>,
    /// Replaces the generic statistic table in CSV output.
    pub table: Option<Table>,
    pub complex: Option<SimplicialComplex>,
}

impl Report {
    pub fn new(params: Map<String, Value>, seed: Option<u64>) -> Self {
        Report { params, seed, body: Map::new(), table: None, complex: None }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.body.insert(key.to_string(), serde_json::to_value(value).expect("serializable value"));
        self
    }

    /// Inserts every field of a serializable struct.
    pub fn merge(&mut self, value: impl Serialize) -> &mut Self {
        if let Value::Object(map) = serde_json::to_value(value).expect("serializable value") {
            self.body.extend(map);
        }
        self
    }

    pub fn render(&self, command: &str, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Json => {
                let mut out = Map::new();
                out.insert("command".into(), json!(command));
                out.insert("version".into(), json!(VERSION));
                if let Some(seed) = self.seed {
                    out.insert("seed".into(), json!(seed));
                }
                out.insert("params".into(), Value::Object(self.params.clone()));
                out.extend(self.body.clone());
                let mut v = Value::Object(out);
                round_value(&mut v);
                let mut bytes = serde_json::to_vec_pretty(&v).map_err(|e| e.to_string())?;
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => {
                let table = match &self.table {
                    Some(t) => t.clone(),
                    None => self.statistic_table(),
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                w.into_inner().map_err(|e| e.to_string())
            }
            Format::Cx => {
                let x = self.complex.as_ref().ok_or_else(|| format!("'{command}' does not produce a complex"))?;
                let mut buf = Vec::new();
                write_complex(x, &mut buf).map_err(|e| e.to_string())?;
                Ok(buf)
            }
        }
    }

    /// Parameter columns followed by `statistic, value, stderr`, one row per scalar
    /// result. Objects with `mean` and `stderr` fill both columns; arrays of scalars are
    /// joined with `;`.
    fn statistic_table(&self) -> Table {
        let mut header: Vec<String> = self.params.keys().cloned().collect();
        if self.seed.is_some() && !self.params.contains_key("seed") {
            header.push("seed".into());
        }
        let mut base: Vec<String> = self.params.values().map(|v| scalar_text(v).unwrap_or_default()).collect();
        if self.seed.is_some() && !self.params.contains_key("seed") {
            base.push(self.seed.unwrap().to_string());
        }
        header.extend(["statistic", "value", "stderr"].map(String::from));
        let mut rows = Vec::new();
        let mut push = |name: String, value: String, stderr: String| {
            let mut row = base.clone();
            row.extend([name, value, stderr]);
            rows.push(row);
        };
        fn walk(prefix: &str, v: &Value, push: &mut dyn FnMut(String, String, String)) {
            match v {
                Value::Object(map) if map.contains_key("mean") && map.contains_key("stderr") => {
                    push(prefix.to_string(), scalar_text(&map["mean"]).unwrap(), scalar_text(&map["stderr"]).unwrap());
                }
                Value::Object(map) => {
                    for (k, v) in map {
                        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        walk(&key, v, push);
                    }
                }
                Value::Array(items) => {
                    let parts: Option<Vec<String>> = items.iter().map(scalar_text).collect();
                    if let Some(parts) = parts {
                        push(prefix.to_string(), parts.join(";"), String::new());
                    }
                }
                other => push(prefix.to_string(), scalar_text(other).unwrap(), String::new()),
            }
        }
        let mut body = Value::Object(self.body.clone());
        round_value(&mut body);
        walk("", &body, &mut push);
        Table { header, rows }
    }
}

/// Parameters, seed, version and timing of one run; `argv` replays it.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub subcommand: &'a str,
    pub argv: Vec<String>,
    pub params: &'a Map<String, Value>,
    pub seed: Option<u64>,
    pub version: &'a str,
    pub format: Format,
    pub duration_seconds: f64,
}

impl RunManifest<'_> {
    pub fn emit(&self, out: Option<&Path>) -> std::io::Result<()> {
        let text = serde_json::to_string(self).expect("manifest serializes");
        match out {
            Some(path) => fs::write(manifest_path(path), text + "\n"),
            None => writeln!(std::io::stderr(), "{text}"),
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(2.753_805_829_974_258), "2.75380582997");
        assert_eq!(fmt12(0.1 + 0.2), "0.3");
        assert_eq!(fmt12(1.0e-9 / 3.0), "3.33333333333e-10");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(round12(-0.052_327_376_057_148_08), -0.0523273760571);
    }

    #[test]
    fn generic_csv_rows() {
        let mut params = Map::new();
        params.insert("n".into(), json!(5));
        let mut r = Report::new(params, Some(7));
        r.put("rate", json!({"mean": 0.5, "stderr": 0.25, "count": 4})).put("hits", 3).put("ok", true);
        let csv = String::from_utf8(r.render("x", Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,seed,statistic,value,stderr");
        assert!(lines.contains(&"5,7,rate,0.5,0.25"));
        assert!(lines.contains(&"5,7,hits,3,"));
        assert!(lines.contains(&"5,7,ok,true,"));
    }

    #[test]
    fn manifest_sits_next_to_output() {
        assert_eq!(manifest_path(Path::new("a/b.json")), PathBuf::from("a/b.json.manifest.json"));
    }
}
