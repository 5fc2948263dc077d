//! CSV rows `k, quantity, method, value, est_error, params_json`.

use std::io::Write;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MassRow {
    pub k: u32,
    pub quantity: String,
    pub method: String,
    pub value: f64,
    pub est_error: f64,
    pub params: serde_json::Value,
}

pub const CSV_COLUMNS: &str = "k,quantity,method,value,est_error,params_json";

impl MassRow {
    pub fn new(k: u32, quantity: &str, method: &str, value: f64, est_error: f64, params: serde_json::Value) -> Self {
        MassRow { k, quantity: quantity.into(), method: method.into(), value, est_error, params }
    }

    pub fn to_csv(&self) -> String {
        let json = self.params.to_string().replace('"', "\"\"");
        format!("{},{},{},{:.17e},{:.3e},\"{}\"", self.k, self.quantity, self.method, self.value, self.est_error, json)
    }
}

/// Writes the version banner, the column header and the rows.
pub fn write_csv<W: Write>(mut out: W, rows: &[MassRow]) -> std::io::Result<()> {
    writeln!(out, "# cuspmass v{}", crate::VERSION)?;
    writeln!(out, "{CSV_COLUMNS}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}
