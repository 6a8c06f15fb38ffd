//! Dataset file formats.
//!
//! * fuzzy CSV: `id,label` followed by `in:<name>:L,in:<name>:M,in:<name>:U`
//!   for every input and `out:<name>:L/M/U` for every output, one row per DMU.
//! * fuzzy JSON: `{"input_names": [..], "output_names": [..], "dmus": [{"id",
//!   "label", "inputs": [[l, m, u], ..], "outputs": [..]}]}`.
//! * raw observations CSV: `id,label,period` then one `in:<name>` or
//!   `out:<name>` column per variable, several rows per DMU. Each column is
//!   fuzzified to `(min, mean, max)` over the DMU's rows.
//! * external ranks CSV: `id,rank`, further columns ignored.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::models::{DmuDataset, DmuRecord};
use crate::tfn::Tfn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    FuzzyCsv,
    FuzzyJson,
    RawCsv,
}

impl DatasetFormat {
    /// `.json` files are fuzzy JSON, everything else fuzzy CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => DatasetFormat::FuzzyJson,
            _ => DatasetFormat::FuzzyCsv,
        }
    }
}

pub fn load_dataset(path: &Path, format: DatasetFormat) -> Result<DmuDataset> {
    let name = path.display().to_string();
    let file = File::open(path)?;
    match format {
        DatasetFormat::FuzzyCsv => read_fuzzy_csv(file, &name),
        DatasetFormat::FuzzyJson => read_fuzzy_json(file, &name),
        DatasetFormat::RawCsv => read_raw_csv(file, &name),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Input,
    Output,
}

fn side_of(prefix: &str) -> Option<Side> {
    match prefix {
        "in" => Some(Side::Input),
        "out" => Some(Side::Output),
        _ => None,
    }
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader)
}

fn csv_error(source: &str, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize);
    Error::parse(source, line, None, e.to_string())
}

fn parse_number(source: &str, line: usize, column: &str, text: &str) -> Result<f64> {
    let value: f64 = text
        .parse()
        .map_err(|_| Error::parse(source, Some(line), Some(column), format!("'{text}' is not a number")))?;
    if !value.is_finite() {
        return Err(Error::parse(source, Some(line), Some(column), "value must be finite"));
    }
    Ok(value)
}

/// Position of every variable column, keyed by side and name.
struct Schema {
    input_names: Vec<String>,
    output_names: Vec<String>,
    /// For fuzzy CSV: `[L, M, U]` header indices per variable.
    fuzzy: HashMap<(Side, String), [Option<usize>; 3]>,
    /// For raw CSV: single header index per variable.
    plain: HashMap<(Side, String), usize>,
}

impl Schema {
    fn new() -> Self {
        Schema {
            input_names: Vec::new(),
            output_names: Vec::new(),
            fuzzy: HashMap::new(),
            plain: HashMap::new(),
        }
    }

    fn register(&mut self, side: Side, name: &str) -> bool {
        let names = match side {
            Side::Input => &mut self.input_names,
            Side::Output => &mut self.output_names,
        };
        if names.iter().any(|n| n == name) {
            false
        } else {
            names.push(name.to_owned());
            true
        }
    }
}

fn require_leading(source: &str, headers: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    for (i, want) in expected.iter().enumerate() {
        match headers.get(i) {
            Some(h) if h == *want => {}
            other => {
                return Err(Error::parse(
                    source,
                    Some(1),
                    other,
                    format!("expected column {} to be '{want}'", i + 1),
                ))
            }
        }
    }
    Ok(())
}

fn fuzzy_schema(source: &str, headers: &csv::StringRecord) -> Result<Schema> {
    require_leading(source, headers, &["id", "label"])?;
    let mut schema = Schema::new();
    for (idx, header) in headers.iter().enumerate().skip(2) {
        let parts: Vec<&str> = header.split(':').collect();
        let bad = || {
            Error::parse(
                source,
                Some(1),
                Some(header),
                "expected 'in:<name>:L|M|U' or 'out:<name>:L|M|U'",
            )
        };
        let [prefix, name, bound] = parts[..] else {
            return Err(bad());
        };
        let side = side_of(prefix).ok_or_else(bad)?;
        let slot = match bound {
            "L" => 0,
            "M" => 1,
            "U" => 2,
            _ => return Err(bad()),
        };
        if name.is_empty() {
            return Err(bad());
        }
        schema.register(side, name);
        let entry = schema.fuzzy.entry((side, name.to_owned())).or_insert([None; 3]);
        if entry[slot].replace(idx).is_some() {
            return Err(Error::parse(source, Some(1), Some(header), "duplicate column"));
        }
    }
    for ((side, name), slots) in &schema.fuzzy {
        if slots.iter().any(Option::is_none) {
            let prefix = if *side == Side::Input { "in" } else { "out" };
            return Err(Error::parse(
                source,
                Some(1),
                Some(&format!("{prefix}:{name}")),
                "needs all three of :L, :M and :U",
            ));
        }
    }
    Ok(schema)
}

fn dataset_error(source: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(source, None, None, other.to_string()),
    }
}

pub fn read_fuzzy_csv<R: Read>(reader: R, source: &str) -> Result<DmuDataset> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let schema = fuzzy_schema(source, &headers)?;

    let mut dmus = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let read_side = |side: Side, names: &[String]| -> Result<Vec<Tfn>> {
            names
                .iter()
                .map(|name| {
                    let slots = schema.fuzzy[&(side, name.clone())];
                    let mut v = [0.0; 3];
                    for (k, slot) in slots.iter().enumerate() {
                        let idx = slot.expect("schema checked");
                        v[k] = parse_number(source, line, &headers[idx], &record[idx])?;
                    }
                    let column = format!("{}:{name}", if side == Side::Input { "in" } else { "out" });
                    Tfn::new(v[0], v[1], v[2])
                        .map_err(|e| Error::parse(source, Some(line), Some(&column), e.to_string()))
                })
                .collect()
        };
        let id = record.get(0).unwrap_or_default();
        if id.is_empty() {
            return Err(Error::parse(source, Some(line), Some("id"), "empty id"));
        }
        let dmu = DmuRecord {
            id: id.to_owned(),
            label: record.get(1).unwrap_or_default().to_owned(),
            inputs: read_side(Side::Input, &schema.input_names)?,
            outputs: read_side(Side::Output, &schema.output_names)?,
        };
        dmus.push(dmu);
    }
    DmuDataset::new(schema.input_names, schema.output_names, dmus).map_err(|e| dataset_error(source, e))
}

pub fn write_fuzzy_csv<W: Write>(dataset: &DmuDataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().from_writer(writer);
    let mut header = vec!["id".to_owned(), "label".to_owned()];
    for (prefix, names) in [("in", dataset.input_names()), ("out", dataset.output_names())] {
        for name in names {
            for b in ["L", "M", "U"] {
                header.push(format!("{prefix}:{name}:{b}"));
            }
        }
    }
    w.write_record(&header).map_err(csv_io)?;
    for dmu in dataset.dmus() {
        let mut row = vec![dmu.id.clone(), dmu.label.clone()];
        for t in dmu.inputs.iter().chain(&dmu.outputs) {
            row.extend(t.to_array().iter().map(|v| v.to_string()));
        }
        w.write_record(&row).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

pub fn read_fuzzy_json<R: Read>(reader: R, source: &str) -> Result<DmuDataset> {
    serde_json::from_reader(reader).map_err(|e| {
        let line = (e.line() > 0).then_some(e.line());
        Error::parse(source, line, None, e.to_string())
    })
}

pub fn write_fuzzy_json<W: Write>(dataset: &DmuDataset, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, dataset)?;
    Ok(())
}

/// Group repeated observation rows by `id` and fuzzify every column.
pub fn read_raw_csv<R: Read>(reader: R, source: &str) -> Result<DmuDataset> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    require_leading(source, &headers, &["id", "label", "period"])?;
    let mut schema = Schema::new();
    for (idx, header) in headers.iter().enumerate().skip(3) {
        let bad = || Error::parse(source, Some(1), Some(header), "expected 'in:<name>' or 'out:<name>'");
        let (prefix, name) = header.split_once(':').ok_or_else(bad)?;
        let side = side_of(prefix).ok_or_else(bad)?;
        if name.is_empty() || name.contains(':') {
            return Err(bad());
        }
        if !schema.register(side, name) {
            return Err(Error::parse(source, Some(1), Some(header), "duplicate column"));
        }
        schema.plain.insert((side, name.to_owned()), idx);
    }

    struct Group {
        label: String,
        periods: Vec<String>,
        columns: HashMap<usize, Vec<f64>>,
    }
    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Group> = HashMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let id = record.get(0).unwrap_or_default().to_owned();
        if id.is_empty() {
            return Err(Error::parse(source, Some(line), Some("id"), "empty id"));
        }
        let label = record.get(1).unwrap_or_default().to_owned();
        let period = record.get(2).unwrap_or_default().to_owned();
        let group = groups.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            Group {
                label: label.clone(),
                periods: Vec::new(),
                columns: HashMap::new(),
            }
        });
        if group.label != label {
            return Err(Error::parse(
                source,
                Some(line),
                Some("label"),
                format!(
                    "label '{label}' differs from '{}' given earlier for id '{id}'",
                    group.label
                ),
            ));
        }
        if group.periods.contains(&period) {
            return Err(Error::parse(
                source,
                Some(line),
                Some("period"),
                format!("period '{period}' repeated for id '{id}'"),
            ));
        }
        group.periods.push(period);
        for idx in schema.plain.values() {
            let value = parse_number(source, line, &headers[*idx], &record[*idx])?;
            group.columns.entry(*idx).or_default().push(value);
        }
    }

    let mut dmus = Vec::with_capacity(order.len());
    for id in order {
        let group = &groups[&id];
        let fuzzify = |side: Side, names: &[String]| -> Result<Vec<Tfn>> {
            names
                .iter()
                .map(|name| Tfn::from_observations(&group.columns[&schema.plain[&(side, name.clone())]]))
                .collect()
        };
        dmus.push(DmuRecord {
            id: id.clone(),
            label: group.label.clone(),
            inputs: fuzzify(Side::Input, &schema.input_names)?,
            outputs: fuzzify(Side::Output, &schema.output_names)?,
        });
    }
    DmuDataset::new(schema.input_names, schema.output_names, dmus).map_err(|e| dataset_error(source, e))
}

/// `(id, rank)` pairs in file order.
pub fn read_external_ranks<R: Read>(reader: R, source: &str) -> Result<Vec<(String, f64)>> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    require_leading(source, &headers, &["id", "rank"])?;
    let mut out: Vec<(String, f64)> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let id = record.get(0).unwrap_or_default().to_owned();
        if out.iter().any(|(seen, _)| *seen == id) {
            return Err(Error::parse(
                source,
                Some(line),
                Some("id"),
                format!("duplicate id '{id}'"),
            ));
        }
        let rank = parse_number(source, line, "rank", record.get(1).unwrap_or_default())?;
        out.push((id, rank));
    }
    Ok(out)
}

pub fn load_external_ranks(path: &Path) -> Result<Vec<(String, f64)>> {
    read_external_ranks(File::open(path)?, &path.display().to_string())
}
