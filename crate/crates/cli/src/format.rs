//! Text file formats. All indices are 1-based.
//!
//! ```text
//! tensor-pattern v1        tensor-sparse v1          matrix v1
//! order 3                  order 3                   dim 3
//! dim 3                    dim 3                     0 1 1
//! row 1: {2,3} {1}         entry 1 2 3 0.5           1 0 0
//! row 2: {1}               entry 2 1 1 2             0 1 0
//! row 3: {2}               entry 3 2 2 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. Output is
//! canonical: no comments, every row listed, sets in lexicographic order,
//! sparse entries sorted by index.

use std::fmt::Write as _;

use primdeg::dense::DenseTensor;
use primdeg::{IndexSet, PatternMatrix, PatternTensor};
use thiserror::Error;

pub const PATTERN_HEADER: &str = "tensor-pattern v1";
pub const SPARSE_HEADER: &str = "tensor-sparse v1";
pub const MATRIX_HEADER: &str = "matrix v1";

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// A sparse nonnegative tensor as listed in a `tensor-sparse` file.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseTensor {
    pub order: usize,
    pub dim: usize,
    /// Full index `(u, i2, ..., im)` and value, sorted by index, no duplicates.
    pub entries: Vec<(Vec<usize>, f64)>,
}

impl SparseTensor {
    pub fn to_pattern(&self) -> primdeg::Result<PatternTensor> {
        let positive = self.entries.iter().filter(|(_, v)| *v > 0.0);
        PatternTensor::from_entries(self.order, self.dim, positive.map(|(idx, _)| (idx[0], &idx[1..])))
    }

    pub fn to_dense(&self, cap: usize) -> primdeg::Result<DenseTensor<f64>> {
        let mut d = DenseTensor::zeros_with_cap(self.order, self.dim, cap)?;
        for (idx, v) in &self.entries {
            d.set(idx, *v)?;
        }
        Ok(d)
    }

    pub fn from_dense(d: &DenseTensor<f64>) -> Self {
        Self { order: d.order(), dim: d.dim(), entries: d.positive_entries().collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TensorDocument {
    Pattern(PatternTensor),
    Sparse(SparseTensor),
    Matrix(PatternMatrix),
}

impl TensorDocument {
    pub fn format_tag(&self) -> &'static str {
        match self {
            TensorDocument::Pattern(_) => "tensor-pattern",
            TensorDocument::Sparse(_) => "tensor-sparse",
            TensorDocument::Matrix(_) => "matrix",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TensorDocument::Pattern(t) => t.order(),
            TensorDocument::Sparse(s) => s.order,
            TensorDocument::Matrix(_) => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TensorDocument::Pattern(t) => t.dim(),
            TensorDocument::Sparse(s) => s.dim,
            TensorDocument::Matrix(m) => m.dim(),
        }
    }

    /// The zero pattern; a matrix becomes an order-2 pattern tensor.
    pub fn to_pattern(&self) -> primdeg::Result<PatternTensor> {
        match self {
            TensorDocument::Pattern(t) => Ok(t.clone()),
            TensorDocument::Sparse(s) => s.to_pattern(),
            TensorDocument::Matrix(m) => Ok(m.to_pattern_tensor()),
        }
    }

    pub fn to_dense_pattern(&self, cap: usize) -> primdeg::Result<DenseTensor<f64>> {
        match self {
            TensorDocument::Sparse(s) => s.to_dense(cap),
            other => primdeg::dense::densify_with_cap(&other.to_pattern()?, cap),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((line, header)) = lines.next() else {
            return err(1, "empty document");
        };
        match header {
            PATTERN_HEADER => parse_pattern(&mut lines).map(TensorDocument::Pattern),
            SPARSE_HEADER => parse_sparse(&mut lines).map(TensorDocument::Sparse),
            MATRIX_HEADER => parse_matrix(&mut lines).map(TensorDocument::Matrix),
            other => err(line, format!("unknown header {other:?}")),
        }
    }

    /// Canonical text form.
    pub fn write(&self) -> String {
        match self {
            TensorDocument::Pattern(t) => write_pattern(t),
            TensorDocument::Sparse(s) => write_sparse(s),
            TensorDocument::Matrix(m) => write_matrix(m),
        }
    }
}

type Lines<'a> = dyn Iterator<Item = (usize, &'a str)> + 'a;

fn keyword(lines: &mut Lines<'_>, key: &str, last_line: &mut usize) -> Result<usize, ParseError> {
    let Some((line, text)) = lines.next() else {
        return err(*last_line + 1, format!("missing `{key}` line"));
    };
    *last_line = line;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return err(line, format!("expected `{key} <value>`"));
    }
    let value = parts.next().and_then(|v| v.parse::<usize>().ok());
    match (value, parts.next()) {
        (Some(v), None) => Ok(v),
        _ => err(line, format!("expected `{key} <positive integer>`")),
    }
}

fn lib_err<T>(line: usize, r: primdeg::Result<T>) -> Result<T, ParseError> {
    r.or_else(|e| err(line, e.to_string()))
}

fn parse_index(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse::<usize>().or_else(|_| err(line, format!("bad index {token:?}")))
}

fn parse_pattern(lines: &mut Lines<'_>) -> Result<PatternTensor, ParseError> {
    let mut last = 1;
    let order = keyword(lines, "order", &mut last)?;
    let dim = keyword(lines, "dim", &mut last)?;
    let mut t = lib_err(last, PatternTensor::new(order, dim))?;
    for (line, text) in lines {
        let Some(rest) = text.strip_prefix("row ") else {
            return err(line, "expected `row U: {...} ...`");
        };
        let Some((row, sets)) = rest.split_once(':') else {
            return err(line, "missing `:` after row number");
        };
        let row = parse_index(line, row.trim())?;
        if row == 0 || row > dim {
            return err(line, format!("row {row} out of range 1..={dim}"));
        }
        let mut rest = sets.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('{') else {
                return err(line, "expected `{` to open a support set");
            };
            let Some((inner, tail)) = body.split_once('}') else {
                return err(line, "unterminated support set");
            };
            let members = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse_index(line, s))
                .collect::<Result<Vec<_>, _>>()?;
            let set = lib_err(line, IndexSet::from_indices(dim, members))?;
            lib_err(line, t.insert_support(row, set))?;
            rest = tail.trim_start();
        }
    }
    Ok(t)
}

fn parse_sparse(lines: &mut Lines<'_>) -> Result<SparseTensor, ParseError> {
    let mut last = 1;
    let order = keyword(lines, "order", &mut last)?;
    let dim = keyword(lines, "dim", &mut last)?;
    if order < 2 {
        return err(last, format!("order must be at least 2, got {order}"));
    }
    lib_err(last, IndexSet::empty(dim))?;
    let mut entries: Vec<(Vec<usize>, f64, usize)> = Vec::new();
    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.first() != Some(&"entry") {
            return err(line, "expected `entry U i2 ... im VALUE`");
        }
        if tokens.len() != order + 2 {
            return err(line, format!("expected {order} indices and a value"));
        }
        let idx = tokens[1..=order].iter().map(|t| parse_index(line, t)).collect::<Result<Vec<_>, _>>()?;
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > dim) {
            return err(line, format!("index {bad} out of range 1..={dim}"));
        }
        let value: f64 = match tokens[order + 1].parse() {
            Ok(v) => v,
            Err(_) => return err(line, format!("bad value {:?}", tokens[order + 1])),
        };
        if value.is_nan() || value < 0.0 || !value.is_finite() {
            return err(line, format!("value {value} must be finite and nonnegative"));
        }
        entries.push((idx, value, line));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
        return err(w[1].2, format!("duplicate entry {:?}", w[1].0));
    }
    Ok(SparseTensor { order, dim, entries: entries.into_iter().map(|(i, v, _)| (i, v)).collect() })
}

fn parse_matrix(lines: &mut Lines<'_>) -> Result<PatternMatrix, ParseError> {
    let mut last = 1;
    let dim = keyword(lines, "dim", &mut last)?;
    let mut m = lib_err(last, PatternMatrix::zeros(dim))?;
    let mut rows = 0;
    for (line, text) in lines {
        rows += 1;
        if rows > dim {
            return err(line, format!("more than {dim} rows"));
        }
        let cells: Vec<&str> = text.split_whitespace().collect();
        if cells.len() != dim {
            return err(line, format!("expected {dim} entries, got {}", cells.len()));
        }
        for (j, c) in cells.iter().enumerate() {
            match *c {
                "1" => lib_err(line, m.set(rows, j + 1))?,
                "0" => {}
                other => return err(line, format!("expected 0 or 1, got {other:?}")),
            }
        }
        last = line;
    }
    if rows < dim {
        return err(last + 1, format!("expected {dim} rows, got {rows}"));
    }
    Ok(m)
}

fn write_pattern(t: &PatternTensor) -> String {
    let mut out = format!("{PATTERN_HEADER}\norder {}\ndim {}\n", t.order(), t.dim());
    for u in 1..=t.dim() {
        let mut sets: Vec<Vec<usize>> = t.row(u).iter().map(IndexSet::to_vec).collect();
        sets.sort();
        out.push_str(&format!("row {u}:"));
        for s in sets {
            let body: Vec<String> = s.iter().map(usize::to_string).collect();
            let _ = write!(out, " {{{}}}", body.join(","));
        }
        out.push('\n');
    }
    out
}

fn write_sparse(s: &SparseTensor) -> String {
    let mut out = format!("{SPARSE_HEADER}\norder {}\ndim {}\n", s.order, s.dim);
    for (idx, v) in &s.entries {
        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "entry {} {v}", idx.join(" "));
    }
    out
}

fn write_matrix(m: &PatternMatrix) -> String {
    format!("{MATRIX_HEADER}\ndim {}\n{m}", m.dim())
}
