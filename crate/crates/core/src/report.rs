//! Self-describing CSV tables: one header line, snake_case columns, every
//! row carrying the full parameter set that produced it.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::params::{NetworkParams, OptimizationResult};

/// One CSV row under construction, as ordered `(column, cell)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row(Vec<(&'static str, String)>);

impl Row {
    pub fn new() -> Self {
        Row::default()
    }

    pub fn text(mut self, key: &'static str, value: impl Into<String>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    fn has(&self, key: &str) -> bool {
        self.0.iter().any(|(k, _)| *k == key)
    }

    /// Like [`Row::num`] but skipped when the column is already present.
    fn num_once(self, key: &'static str, value: f64) -> Self {
        if self.has(key) {
            self
        } else {
            self.num(key, value)
        }
    }

    /// Shortest round-trip decimal form, so reruns are byte-identical.
    pub fn num(self, key: &'static str, value: f64) -> Self {
        self.text(key, format!("{value}"))
    }

    /// Empty cell when the value is absent.
    pub fn opt_num(self, key: &'static str, value: Option<f64>) -> Self {
        self.text(key, value.map(|v| format!("{v}")).unwrap_or_default())
    }

    pub fn int(self, key: &'static str, value: u64) -> Self {
        self.text(key, value.to_string())
    }

    /// All network inputs, skipping columns the row already carries.
    pub fn network(self, p: &NetworkParams) -> Self {
        self.num_once("alpha", p.alpha())
            .num_once("lambda_l", p.lambda_l())
            .num_once("lambda_e", p.lambda_e())
            .num_once("n_e", f64::from(p.n_e()))
            .num_once("r_o", p.r_o())
            .num_once("p_t", p.p_t())
            .num_once("p_j", p.p_j())
            .num_once("eta", p.eta())
            .num_once("p_c", p.p_c())
    }

    /// Optimizer output as `[q_star, objective, case_tag, residual]` under
    /// the given column names.
    pub fn optimum(self, keys: [&'static str; 4], r: &OptimizationResult) -> Self {
        self.opt_num(keys[0], r.q_star)
            .num(keys[1], r.objective)
            .text(keys[2], r.case_tag.to_string())
            .num(keys[3], r.residual)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new() -> Self {
        Table::default()
    }

    /// Append a row; the first row fixes the header and later rows must
    /// have the same columns in the same order.
    pub fn push(&mut self, row: Row) -> Result<()> {
        let keys: Vec<&'static str> = row.0.iter().map(|(k, _)| *k).collect();
        if self.header.is_empty() {
            self.header = keys;
        } else if self.header != keys {
            return Err(Error::Numerical(format!(
                "row columns {keys:?} do not match header {:?}",
                self.header
            )));
        }
        self.rows.push(row.0.into_iter().map(|(_, v)| v).collect());
        Ok(())
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn column(&self, key: &str) -> Option<Vec<&str>> {
        let idx = self.header.iter().position(|h| *h == key)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Numerical(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_fixed_by_first_row() {
        let mut t = Table::new();
        t.push(Row::new().num("q", 0.1).opt_num("x", None)).unwrap();
        t.push(Row::new().num("q", 1.0).opt_num("x", Some(2.5))).unwrap();
        assert!(t.push(Row::new().num("x", 1.0)).is_err());
        assert_eq!(t.to_csv_string().unwrap(), "q,x\n0.1,\n1,2.5\n");
        assert_eq!(t.column("x").unwrap(), vec!["", "2.5"]);
        let p = NetworkParams::new(Default::default()).unwrap();
        let row = Row::new().num("eta", 0.5).network(&p);
        assert_eq!(row.0.iter().filter(|(k, _)| *k == "eta").count(), 1);
        assert_eq!(row.get("n_e"), Some("1"));
    }
}
