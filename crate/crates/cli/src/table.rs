//! Row tables rendered as CSV (17 significant digits) or a JSON array of
//! objects with the column names as keys.

use serde::Serialize;
use serde_json::{Map, Value};

pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // Non-finite numbers have no JSON form and become null.
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| e.to_string();
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> Result<String, String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&rows)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string())
    }
}

/// The serde name of a unit enum variant, e.g. `holds`.
pub fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_carry_17_digits() {
        let mut t = Table::new(&["x", "n", "ok", "note"]);
        t.push(vec![Cell::Num(0.1), Cell::Int(3), Cell::Bool(true), Cell::Empty]);
        t.push(vec![
            Cell::Num(f64::NAN),
            Cell::Int(-1),
            Cell::Bool(false),
            Cell::Text("a,b".into()),
        ]);
        assert_eq!(
            t.to_csv().unwrap(),
            "x,n,ok,note\n1.0000000000000001e-1,3,true,\nNaN,-1,false,\"a,b\"\n"
        );
    }

    #[test]
    fn json_rows_are_objects() {
        let mut t = Table::new(&["x", "pass"]);
        t.push(vec![Cell::Num(f64::NAN), Cell::Bool(true)]);
        let v: Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(v[0]["x"], Value::Null);
        assert_eq!(v[0]["pass"], Value::Bool(true));
    }
}
