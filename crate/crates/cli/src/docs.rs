//! On-disk document model. Complex scalars are `[re, im]` pairs, arrays are
//! row-major, and every document carries its `kind` tag.

use num_complex::Complex64;
use serde::Deserialize;
use vvframe_core::{FiniteAbelianGroup, Frame, OpTable, SelectionMap, VVSignal};

use crate::jsonout::Val;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind")]
pub enum Document {
    #[serde(rename = "frame")]
    Frame {
        d: usize,
        vectors: Vec<Vec<[f64; 2]>>,
    },
    #[serde(rename = "signal")]
    Signal {
        #[serde(rename = "N")]
        n: usize,
        d: usize,
        values: Vec<Vec<[f64; 2]>>,
    },
    #[serde(rename = "optable")]
    OpTable { n: usize, table: Vec<Vec<usize>> },
    #[serde(rename = "group")]
    Group { cyclic_orders: Vec<usize> },
    #[serde(rename = "selection")]
    Selection {
        #[serde(rename = "N")]
        n: usize,
        s: Vec<usize>,
    },
}

fn to_complex(rows: &[Vec<[f64; 2]>]) -> Vec<Vec<Complex64>> {
    rows.iter()
        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid document: {}", e)))
}

pub fn read_document(path: &str) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {}", path, e)))?;
    parse_document(&text)
}

pub fn read_frame(path: &str) -> Result<Frame, CliError> {
    match read_document(path)? {
        Document::Frame { d, vectors } => {
            Frame::new(d, to_complex(&vectors)).map_err(CliError::from_core_input)
        }
        other => Err(CliError::input(format!(
            "{} holds a {} document, expected a frame",
            path,
            kind_name(&other)
        ))),
    }
}

pub fn read_signal(path: &str) -> Result<VVSignal, CliError> {
    match read_document(path)? {
        Document::Signal { n, d, values } => {
            if values.len() != n || values.iter().any(|row| row.len() != d) {
                return Err(CliError::input(format!(
                    "signal document {} does not match its declared {}x{} shape",
                    path, n, d
                )));
            }
            VVSignal::from_rows(to_complex(&values)).map_err(CliError::from_core_input)
        }
        other => Err(CliError::input(format!(
            "{} holds a {} document, expected a signal",
            path,
            kind_name(&other)
        ))),
    }
}

pub fn read_table(path: &str) -> Result<OpTable, CliError> {
    match read_document(path)? {
        Document::OpTable { n, table } => {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(CliError::input(format!(
                    "table document {} is not {}x{}",
                    path, n, n
                )));
            }
            OpTable::from_rows(table).map_err(CliError::from_core_input)
        }
        other => Err(CliError::input(format!(
            "{} holds a {} document, expected an optable",
            path,
            kind_name(&other)
        ))),
    }
}

pub fn read_group(path: &str) -> Result<FiniteAbelianGroup, CliError> {
    match read_document(path)? {
        Document::Group { cyclic_orders } => {
            FiniteAbelianGroup::new(cyclic_orders).map_err(CliError::from_core_input)
        }
        other => Err(CliError::input(format!(
            "{} holds a {} document, expected a group",
            path,
            kind_name(&other)
        ))),
    }
}

pub fn read_selection(path: &str) -> Result<SelectionMap, CliError> {
    match read_document(path)? {
        Document::Selection { n, s } => SelectionMap::new(n, s).map_err(CliError::from_core_input),
        other => Err(CliError::input(format!(
            "{} holds a {} document, expected a selection",
            path,
            kind_name(&other)
        ))),
    }
}

fn kind_name(doc: &Document) -> &'static str {
    match doc {
        Document::Frame { .. } => "frame",
        Document::Signal { .. } => "signal",
        Document::OpTable { .. } => "optable",
        Document::Group { .. } => "group",
        Document::Selection { .. } => "selection",
    }
}

pub fn frame_doc(frame: &Frame) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("frame".into())),
        ("d".into(), Val::usize(frame.dim())),
        (
            "vectors".into(),
            Val::Arr(frame.iter().map(|v| Val::complex_row(v)).collect()),
        ),
    ])
}

pub fn signal_doc(signal: &VVSignal) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("signal".into())),
        ("N".into(), Val::usize(signal.len())),
        ("d".into(), Val::usize(signal.dim())),
        (
            "values".into(),
            Val::Arr(
                (0..signal.len())
                    .map(|m| Val::complex_row(signal.row(m)))
                    .collect(),
            ),
        ),
    ])
}

pub fn table_doc(table: &OpTable) -> Val {
    let n = table.size();
    Val::Obj(vec![
        ("kind".into(), Val::Str("optable".into())),
        ("n".into(), Val::usize(n)),
        (
            "table".into(),
            Val::Arr(
                (0..n)
                    .map(|i| Val::Arr((0..n).map(|j| Val::usize(table.get(i, j))).collect()))
                    .collect(),
            ),
        ),
    ])
}

pub fn group_doc(group: &FiniteAbelianGroup) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("group".into())),
        (
            "cyclic_orders".into(),
            Val::Arr(
                group
                    .cyclic_orders()
                    .iter()
                    .map(|&n| Val::usize(n))
                    .collect(),
            ),
        ),
    ])
}

pub fn selection_doc(sel: &SelectionMap) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("selection".into())),
        ("N".into(), Val::usize(sel.modulus())),
        (
            "s".into(),
            Val::Arr(sel.values().iter().map(|&v| Val::usize(v)).collect()),
        ),
    ])
}
