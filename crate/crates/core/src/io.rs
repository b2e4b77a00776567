//! Euler-characteristic tables on disk and the text/JSON/CSV renderings of
//! result series.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_ratfunc, RatFunc};
use crate::error::{Error, Result};
use crate::symfun::{partitions_of, powersum_to_schur, Partition, SymSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub n: u32,
    pub rho: Vec<u32>,
    pub count: String,
}

/// The JSON form of a table, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTable {
    pub genus: u32,
    #[serde(default = "default_true")]
    pub polynomial_count: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_to: Option<u32>,
    pub entries: Vec<RawEntry>,
}

fn default_true() -> bool {
    true
}

/// Point counts `|M_{g,n}^{ρF}|` as functions of `q`, one per `(n, ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerTable {
    pub genus: u32,
    /// Entries missing at `n ≤ complete_to` are zero.
    pub complete_to: Option<u32>,
    pub entries: BTreeMap<Partition, RatFunc>,
}

fn min_n(genus: u32) -> u32 {
    3u32.saturating_sub(2 * genus)
}

impl EulerTable {
    pub fn from_raw(raw: &RawTable) -> Result<Self> {
        if !matches!(raw.genus, 1 | 2) {
            return Err(Error::Schema(format!("genus must be 1 or 2, got {}", raw.genus)));
        }
        if !raw.polynomial_count {
            return Err(Error::Schema("only tables with \"polynomial_count\": true are supported".into()));
        }
        let mut entries = BTreeMap::new();
        for e in &raw.entries {
            let rho = Partition::new(e.rho.clone());
            if e.rho.contains(&0) || rho.parts() != e.rho.as_slice() || rho.weight() != e.n {
                return Err(Error::Schema(format!("rho {:?} is not a descending partition of {}", e.rho, e.n)));
            }
            if e.n < min_n(raw.genus) {
                return Err(Error::StabilityViolation { g: raw.genus, n: e.n });
            }
            let count = parse_ratfunc(&e.count)?;
            if !count.is_polynomial() {
                return Err(Error::Schema(format!("count for n = {}, rho = {rho} is not a polynomial: {count}", e.n)));
            }
            if entries.insert(rho.clone(), count).is_some() {
                return Err(Error::Schema(format!("duplicate entry for n = {}, rho = {rho}", e.n)));
            }
        }
        Ok(EulerTable { genus: raw.genus, complete_to: raw.complete_to, entries })
    }

    pub fn to_raw(&self) -> RawTable {
        RawTable {
            genus: self.genus,
            polynomial_count: true,
            complete_to: self.complete_to,
            entries: self
                .entries
                .iter()
                .map(|(rho, c)| RawEntry { n: rho.weight(), rho: rho.parts().to_vec(), count: c.to_string() })
                .collect(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
        EulerTable::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }
}

pub fn load_table(path: &Path) -> Result<EulerTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    EulerTable::parse(&text)
}

/// `Σ count(ρ) p_ρ/z_ρ` over `|ρ| ≤ d`.
pub fn table_to_series(t: &EulerTable, d: u32) -> Result<SymSeries> {
    let mut out = SymSeries::zero(d);
    for n in min_n(t.genus)..=d {
        for rho in partitions_of(n) {
            match t.entries.get(&rho) {
                Some(c) => out.add_term(rho.clone(), c.scale(&BigRational::new(1.into(), rho.z()))),
                None if t.complete_to.is_some_and(|c| n <= c) => {}
                None => return Err(Error::MissingEntry { n, rho: rho.parts().to_vec() }),
            }
        }
    }
    Ok(out)
}

/// Inverse of [`table_to_series`]: every nonzero fixed count through the
/// bound, declared complete to the bound.
pub fn series_to_table(f: &SymSeries, genus: u32) -> Result<EulerTable> {
    let mut entries = BTreeMap::new();
    for (rho, _) in f.terms() {
        if rho.weight() < min_n(genus) {
            return Err(Error::StabilityViolation { g: genus, n: rho.weight() });
        }
        entries.insert(rho.clone(), f.fixed_count(rho)?);
    }
    Ok(EulerTable { genus, complete_to: Some(f.bound()), entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Fixed counts `z_ρ · [p_ρ]`, one per cycle type.
    PowerSum,
    /// Coefficients of Schur functions `s_λ`.
    Schur,
}

/// One output row: degree, partition (cycle type or Schur index) and value.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub n: u32,
    pub rho: Partition,
    pub value: String,
}

fn render_value(c: &RatFunc, eval_q: Option<&BigRational>) -> Result<String> {
    match eval_q {
        Some(q) => Ok(c.eval(q)?.to_string()),
        None => Ok(c.to_string()),
    }
}

/// Nonzero rows of `f` in the chosen basis, by degree then partition.
pub fn rows(f: &SymSeries, basis: Basis, eval_q: Option<&BigRational>) -> Result<Vec<Row>> {
    let mut out = Vec::new();
    for n in 0..=f.bound() {
        let h = f.homogeneous(n);
        if h.is_zero() {
            continue;
        }
        match basis {
            Basis::PowerSum => {
                for (rho, _) in h.terms() {
                    out.push(Row { n, rho: rho.clone(), value: render_value(&f.fixed_count(rho)?, eval_q)? });
                }
            }
            Basis::Schur => {
                for (lambda, c) in powersum_to_schur(&h.truncated(n), n)? {
                    out.push(Row { n, rho: lambda, value: render_value(&c, eval_q)? });
                }
            }
        }
    }
    Ok(out)
}

/// Renders `f` with a caption line (text), an object (JSON) or a table (CSV).
pub fn render(f: &SymSeries, caption: &str, basis: Basis, format: Format, eval_q: Option<&BigRational>) -> Result<String> {
    let rows = rows(f, basis, eval_q)?;
    let label = match basis {
        Basis::PowerSum => "rho",
        Basis::Schur => "lambda",
    };
    let mut s = String::new();
    match format {
        Format::Text => {
            writeln!(s, "{caption} (through degree {})", f.bound()).unwrap();
            if rows.is_empty() {
                writeln!(s, "  0").unwrap();
            }
            for r in &rows {
                writeln!(s, "  {:<16} {}", r.rho.to_string(), r.value).unwrap();
            }
        }
        Format::Csv => {
            writeln!(s, "n,{label},value").unwrap();
            for r in &rows {
                let parts: Vec<String> = r.rho.parts().iter().map(u32::to_string).collect();
                writeln!(s, "{},{},\"{}\"", r.n, parts.join(" "), r.value).unwrap();
            }
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| serde_json::json!({ "n": r.n, label: r.rho.parts(), "value": r.value }))
                .collect();
            let v = serde_json::json!({
                "series": caption,
                "bound": f.bound(),
                "basis": label,
                "entries": entries,
            });
            writeln!(s, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
    }
    Ok(s)
}

/// Reads rows back into a series; the inverse of [`rows`] in either basis
/// when no evaluation at `q` was requested.
pub fn series_from_rows(rows: &[Row], basis: Basis, bound: u32) -> Result<SymSeries> {
    let mut out = SymSeries::zero(bound);
    for r in rows {
        let c = parse_ratfunc(&r.value)?;
        match basis {
            Basis::PowerSum => out.add_term(r.rho.clone(), c.scale(&BigRational::new(1.into(), r.rho.z()))),
            Basis::Schur => {
                let s: SymSeries = crate::symfun::schur_to_powersum(&r.rho);
                for (rho, x) in s.terms() {
                    out.add_term(rho.clone(), x.mul_ref(&c));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPoly;
    use crate::genus0::ch0;

    #[test]
    fn sample_table() {
        let t = EulerTable::parse(r#"{"genus":1, "complete_to":1, "entries":[{"n":1,"rho":[1],"count":"q"}]}"#).unwrap();
        let s = table_to_series(&t, 1).unwrap();
        assert_eq!(s, SymSeries::monomial(Partition::new(vec![1]), RatFunc::from_poly(QPoly::q()), 1));
    }

    #[test]
    fn empty_complete_table_is_zero() {
        let t = EulerTable::parse(r#"{"genus":2, "complete_to":4, "entries":[]}"#).unwrap();
        assert!(table_to_series(&t, 4).unwrap().is_zero());
    }

    #[test]
    fn schema_errors() {
        let bad = EulerTable::parse(r#"{"genus":1, "entries":[{"n":3,"rho":[2,2],"count":"1"}]}"#);
        assert!(matches!(bad, Err(Error::Schema(_))));
        let unsorted = EulerTable::parse(r#"{"genus":1, "entries":[{"n":3,"rho":[1,2],"count":"1"}]}"#);
        assert!(matches!(unsorted, Err(Error::Schema(_))));
        let unstable = EulerTable::parse(r#"{"genus":1, "entries":[{"n":0,"rho":[],"count":"1"}]}"#);
        assert_eq!(unstable, Err(Error::StabilityViolation { g: 1, n: 0 }));
        let dup = EulerTable::parse(r#"{"genus":1, "entries":[{"n":1,"rho":[1],"count":"q"},{"n":1,"rho":[1],"count":"q"}]}"#);
        assert!(matches!(dup, Err(Error::Schema(_))));
        let flag = EulerTable::parse(r#"{"genus":1, "polynomial_count": false, "entries":[]}"#);
        assert!(matches!(flag, Err(Error::Schema(_))));
        let rational = EulerTable::parse(r#"{"genus":1, "entries":[{"n":1,"rho":[1],"count":"1/(q-1)"}]}"#);
        assert!(matches!(rational, Err(Error::Schema(_))));
    }

    #[test]
    fn missing_entry_reported() {
        let t = EulerTable::parse(r#"{"genus":1, "entries":[{"n":1,"rho":[1],"count":"q"}]}"#).unwrap();
        assert_eq!(table_to_series(&t, 2), Err(Error::MissingEntry { n: 2, rho: vec![2] }));
    }

    #[test]
    fn table_roundtrip() {
        let mut s = ch0(6).truncated(5);
        // shift into a genus-2 shaped table by adding a constant count
        s.add_term(Partition::empty(), RatFunc::from_poly(QPoly::from_int_coeffs(&[1, 0, 1])));
        let t = series_to_table(&s, 2).unwrap();
        let back = EulerTable::parse(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(table_to_series(&back, 5).unwrap(), s);
    }

    #[test]
    fn rows_roundtrip_both_bases() {
        let s = ch0(6);
        for basis in [Basis::PowerSum, Basis::Schur] {
            let r = rows(&s, basis, None).unwrap();
            assert_eq!(series_from_rows(&r, basis, 6).unwrap(), s);
        }
        let csv = render(&s, "ch0", Basis::PowerSum, Format::Csv, None).unwrap();
        assert!(csv.starts_with("n,rho,value\n"));
        assert!(csv.contains("\n3,3,\"1\"\n"));
        let json = render(&s, "ch0", Basis::Schur, Format::Json, Some(&BigRational::from_integer(2.into()))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["bound"], 6);
    }
}
