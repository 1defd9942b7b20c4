//! JSON-lines files: one `{"id", "x", "label"}` record per element, with a
//! trailing `"weight"` for coresets.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::WeightedLabeledPoint;
use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPoint, LabeledPointSet, Point};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    id: u64,
    x: Vec<f64>,
    label: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightedRecord {
    id: u64,
    x: Vec<f64>,
    label: i64,
    weight: f64,
}

fn parse_error(line: usize, message: impl ToString) -> Error {
    Error::Parse { line, message: message.to_string() }
}

/// Non-blank lines with their 1-based line numbers.
fn lines(reader: impl BufRead) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| !matches!(r, Ok((_, l)) if l.trim().is_empty()))
}

fn element(line: usize, id: u64, x: Vec<f64>, label: i64, dim: &mut Option<usize>) -> Result<LabeledPoint> {
    let label = Label::from_i64(label).ok_or_else(|| parse_error(line, format!("label must be -1 or 1, got {label}")))?;
    let point = Point::new(x).map_err(|e| parse_error(line, e))?;
    match *dim {
        None => *dim = Some(point.dim()),
        Some(d) if d != point.dim() => {
            return Err(parse_error(line, format!("expected {d} coordinates, found {}", point.dim())));
        }
        Some(_) => {}
    }
    Ok(LabeledPoint { id, point, label })
}

pub fn write_dataset(mut out: impl Write, set: &LabeledPointSet) -> Result<()> {
    for e in set.elements() {
        let record = Record { id: e.id, x: e.point.coords().to_vec(), label: e.label.as_i8().into() };
        serde_json::to_writer(&mut out, &record).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_dataset(input: impl BufRead) -> Result<LabeledPointSet> {
    let mut dim = None;
    let mut elements = Vec::new();
    for item in lines(input) {
        let (line, text) = item?;
        let r: Record = serde_json::from_str(&text).map_err(|e| parse_error(line, e))?;
        elements.push(element(line, r.id, r.x, r.label, &mut dim)?);
    }
    let dim = dim.ok_or_else(|| Error::invalid("dataset file has no records"))?;
    LabeledPointSet::new(dim, elements)
}

pub fn write_coreset(mut out: impl Write, points: &[WeightedLabeledPoint]) -> Result<()> {
    for p in points {
        let record = WeightedRecord {
            id: p.id,
            x: p.point.coords().to_vec(),
            label: p.label.as_i8().into(),
            weight: p.weight,
        };
        serde_json::to_writer(&mut out, &record).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads a coreset file; returns the dimension (0 when empty) and the points.
pub fn read_coreset(input: impl BufRead) -> Result<(usize, Vec<WeightedLabeledPoint>)> {
    let mut dim = None;
    let mut points = Vec::new();
    for item in lines(input) {
        let (line, text) = item?;
        let r: WeightedRecord = serde_json::from_str(&text).map_err(|e| parse_error(line, e))?;
        if !(r.weight > 0.0 && r.weight.is_finite()) {
            return Err(parse_error(line, format!("weight must be positive, got {}", r.weight)));
        }
        let e = element(line, r.id, r.x, r.label, &mut dim)?;
        points.push(WeightedLabeledPoint { id: e.id, point: e.point, label: e.label, weight: r.weight });
    }
    Ok((dim.unwrap_or(0), points))
}

pub fn save_dataset(path: impl AsRef<Path>, set: &LabeledPointSet) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_dataset(&mut out, set)?;
    out.flush()?;
    Ok(())
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<LabeledPointSet> {
    read_dataset(BufReader::new(File::open(path)?))
}

pub fn save_coreset(path: impl AsRef<Path>, points: &[WeightedLabeledPoint]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_coreset(&mut out, points)?;
    out.flush()?;
    Ok(())
}

pub fn load_coreset(path: impl AsRef<Path>) -> Result<(usize, Vec<WeightedLabeledPoint>)> {
    read_coreset(BufReader::new(File::open(path)?))
}
