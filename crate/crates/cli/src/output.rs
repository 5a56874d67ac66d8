//! Rendering of command results as JSON, CSV or matrix text.

use serde::Serialize;

use crate::{Failure, Format};

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// An array of objects; cells that parse as JSON numbers or booleans are
    /// emitted as such, empty cells as null.
    fn json(&self) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| {
                self.header
                    .iter()
                    .zip(r)
                    .map(|(h, c)| {
                        let v = if c.is_empty() {
                            serde_json::Value::Null
                        } else {
                            serde_json::from_str(c).unwrap_or_else(|_| serde_json::Value::String(c.clone()))
                        };
                        (h.clone(), v)
                    })
                    .collect()
            })
            .collect();
        let mut s = serde_json::to_string(&rows).expect("tables serialize");
        s.push('\n');
        s
    }
}

pub enum Out {
    /// Compact JSON, fields in declaration order.
    Json(String),
    /// Tabular output; CSV unless JSON is requested.
    Table(Table),
    /// A matrix or template file.
    Text(String),
}

impl Out {
    pub fn json<T: Serialize>(value: &T) -> Result<Out, Failure> {
        let mut s = serde_json::to_string(value).map_err(|e| Failure::input(e.to_string()))?;
        s.push('\n');
        Ok(Out::Json(s))
    }

    pub fn render(self, format: Option<Format>) -> Result<String, Failure> {
        match (self, format) {
            (Out::Json(s), None | Some(Format::Json)) => Ok(s),
            (Out::Json(_), Some(Format::Csv)) => Err(Failure::input("this command only produces JSON")),
            (Out::Table(t), None | Some(Format::Csv)) => Ok(t.csv()),
            (Out::Table(t), Some(Format::Json)) => Ok(t.json()),
            (Out::Text(s), _) => Ok(s),
        }
    }
}
