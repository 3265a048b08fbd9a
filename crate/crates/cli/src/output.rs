//! Tables and their CSV/JSON renderings.

use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use pcoulomb::numeric::scalar::fraction_string;
use pcoulomb::{Rational, Scalar};
use serde_json::{json, Map, Value as Json};

pub const SIGNIFICANT_DIGITS: u32 = 12;
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Empty,
    Text(String),
    Int(i64),
    Bool(bool),
    /// Rounded value (the exact binary value of a float).
    Real(Rational),
    /// Exact rational, also rendered as `num/den` in JSON.
    Exact(Rational),
    List(Vec<Cell>),
}

impl Cell {
    pub fn real<T: Scalar>(x: &T) -> Cell {
        match x.to_rational() {
            Some(q) => Cell::Real(q),
            None => Cell::Text(x.to_f64_lossy().to_string()),
        }
    }

    pub fn f64(x: f64) -> Cell {
        Cell::real(&x)
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Int(k) => k.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Real(q) | Cell::Exact(q) => decimal(q),
            Cell::List(items) => items.iter().map(Cell::csv).collect::<Vec<_>>().join(";"),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Empty => Json::Null,
            Cell::Text(s) => Json::String(s.clone()),
            Cell::Int(k) => json!(k),
            Cell::Bool(b) => json!(b),
            Cell::Real(q) | Cell::Exact(q) => decimal_json(q),
            Cell::List(items) => Json::Array(items.iter().map(Cell::json).collect()),
        }
    }

    /// `num/den` companion for exact cells (lists only when every entry is exact).
    fn exact_json(&self) -> Option<Json> {
        match self {
            Cell::Exact(q) => Some(Json::String(fraction_string(q))),
            Cell::List(items) if !items.is_empty() => {
                items.iter().map(|c| c.exact_json()).collect::<Option<Vec<_>>>().map(Json::Array)
            }
            _ => None,
        }
    }
}

fn decimal_json(q: &Rational) -> Json {
    let s = decimal(q);
    match s.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(n) => Json::Number(n),
        None => Json::String(s),
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

fn round_half_even(x: &Rational) -> BigInt {
    let fl = x.floor();
    let frac = x - &fl;
    let half = Rational::new(1.into(), 2.into());
    let base = fl.to_integer();
    if frac > half || (frac == half && base.is_odd()) {
        base + 1
    } else {
        base
    }
}

/// `SIGNIFICANT_DIGITS` significant digits, round-half-even on the exact
/// value, trailing zeros dropped. Plain notation for exponents in
/// `[-5, 12)`, scientific otherwise.
pub fn decimal(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sig = SIGNIFICANT_DIGITS;
    let x = q.abs();
    let mut e = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    let m = loop {
        let shift = sig as i64 - 1 - e;
        let scaled = if shift >= 0 {
            &x * Rational::from_integer(pow10(shift as u32))
        } else {
            &x / Rational::from_integer(pow10((-shift) as u32))
        };
        let m = round_half_even(&scaled);
        if m >= pow10(sig) {
            e += 1;
        } else if m < pow10(sig - 1) {
            e -= 1;
        } else {
            break m;
        }
    };
    let digits = m.to_string();
    let sign = if q.is_negative() { "-" } else { "" };
    let body = if (-5..12).contains(&e) {
        if e >= 0 {
            let split = (e + 1) as usize;
            if split >= digits.len() {
                format!("{}{}", digits, "0".repeat(split - digits.len()))
            } else {
                trim(&format!("{}.{}", &digits[..split], &digits[split..]))
            }
        } else {
            trim(&format!("0.{}{}", "0".repeat((-e - 1) as usize), digits))
        }
    } else {
        let mantissa = trim(&format!("{}.{}", &digits[..1], &digits[1..]));
        format!("{mantissa}e{}{:02}", if e < 0 { "-" } else { "+" }, e.abs())
    };
    format!("{sign}{body}")
}

fn trim(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a subcommand produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub command: &'static str,
    pub config: Json,
    pub table: Table,
    pub warnings: Vec<String>,
    pub svg: Option<String>,
}

pub fn write_csv<W: Write>(doc: &Document, out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&doc.table.columns)?;
    for row in &doc.table.rows {
        w.write_record(row.iter().map(Cell::csv))?;
    }
    w.flush()
}

pub fn to_json(doc: &Document) -> Json {
    let rows: Vec<Json> = doc
        .table
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, cell) in doc.table.columns.iter().zip(row) {
                obj.insert(name.to_string(), cell.json());
                if let Some(exact) = cell.exact_json() {
                    obj.insert(format!("{name}_exact"), exact);
                }
            }
            Json::Object(obj)
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": doc.command,
        "config": doc.config,
        "rows": rows,
        "warnings": doc.warnings,
    })
}

pub fn error_json(code: u8, message: &str) -> Json {
    json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "code": code, "message": message },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcoulomb::numeric::scalar::ratio;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(decimal(&ratio(-2, 1)), "-2");
        assert_eq!(decimal(&ratio(-9, 2)), "-4.5");
        assert_eq!(decimal(&ratio(-1, 18)), "-0.0555555555556");
        assert_eq!(decimal(&ratio(1, 3)), "0.333333333333");
        assert_eq!(decimal(&ratio(2, 3)), "0.666666666667");
        assert_eq!(decimal(&ratio(123_456_789_012_345, 1)), "1.23456789012e+14");
        assert_eq!(decimal(&ratio(1, 1_000_000_000)), "1e-09");
        assert_eq!(decimal(&ratio(0, 1)), "0");
    }

    #[test]
    fn ties_round_to_even() {
        // exact ties at the twelfth digit
        assert_eq!(decimal(&ratio(1_000_000_000_005, 1_000_000_000_000)), "1");
        assert_eq!(decimal(&ratio(1_000_000_000_015, 1_000_000_000_000)), "1.00000000002");
        assert_eq!(decimal(&ratio(-1_000_000_000_025, 1_000_000_000_000)), "-1.00000000002");
    }

    #[test]
    fn carry_into_next_decade() {
        assert_eq!(decimal(&ratio(9_999_999_999_999, 1_000_000_000_000)), "10");
    }

    #[test]
    fn exact_cells_carry_fractions_in_json() {
        let mut t = Table::new(&["b", "E"]);
        t.push(vec![Cell::Exact(ratio(-3, 1)), Cell::Real(ratio(-1, 4))]);
        let doc = Document { command: "exact", config: json!({}), table: t, warnings: vec![], svg: None };
        let j = to_json(&doc);
        assert_eq!(j["rows"][0]["b_exact"], "-3/1");
        assert_eq!(j["rows"][0]["b"], -3.0);
        assert!(j["rows"][0].get("E_exact").is_none());
        let mut buf = Vec::new();
        write_csv(&doc, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "b,E\n-3,-0.25\n");
    }
}
