//! Grid documents and the fixture catalog.
//!
//! JSON is the canonical format; CSV is a convenience export. Values are
//! decimal integers throughout. A single grid serializes flat as
//! `{schema, rows, cols, cells, meta?}` with `cells` a row-major sorted list
//! of `[row, col, value]` triples (1-based); a set of grids serializes as
//! `{schema, grids: [...], meta?}`. Readers reject zero values, out-of-bounds
//! coordinates and duplicate cells.

use crate::{Error, Grid, HeffterParams, IhsParams};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// Optional document metadata: parameters, construction route, seed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heffter: Option<HeffterParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ihs: Option<IhsParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Meta {
    pub fn is_empty(&self) -> bool {
        self == &Meta::default()
    }
}

#[derive(Deserialize)]
struct RawGrid {
    rows: usize,
    cols: usize,
    cells: Vec<(usize, usize, i64)>,
}

#[derive(Deserialize)]
struct RawDoc {
    schema: u32,
    rows: Option<usize>,
    cols: Option<usize>,
    cells: Option<Vec<(usize, usize, i64)>>,
    grids: Option<Vec<RawGrid>>,
    meta: Option<Meta>,
}

fn raw_to_grid(raw: &RawGrid) -> Result<Grid, Error> {
    let mut g = Grid::new(raw.rows, raw.cols)
        .map_err(|e| Error::Format(format!("bad dimensions: {e}")))?;
    for &(r, c, v) in &raw.cells {
        g.set(r, c, v).map_err(|e| Error::Format(format!("cell ({r},{c}): {e}")))?;
    }
    Ok(g)
}

fn push_grid_body(g: &Grid, indent: &str, out: &mut String) {
    use std::fmt::Write;
    writeln!(out, "{indent}\"rows\": {},", g.rows()).unwrap();
    writeln!(out, "{indent}\"cols\": {},", g.cols()).unwrap();
    writeln!(out, "{indent}\"cells\": [").unwrap();
    let mut first = true;
    for (r, c, v) in g.iter() {
        if !first {
            out.push_str(",\n");
        }
        first = false;
        write!(out, "{indent}  [{r}, {c}, {v}]").unwrap();
    }
    write!(out, "\n{indent}]").unwrap();
}

/// Serializes one or more grids as a JSON document string, one cell triple
/// per line. Byte-deterministic for identical inputs.
pub fn write_json(grids: &[Grid], meta: &Meta) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"schema\": {SCHEMA_VERSION},\n"));
    if grids.len() == 1 {
        push_grid_body(&grids[0], "  ", &mut out);
    } else {
        out.push_str("  \"grids\": [\n");
        for (i, g) in grids.iter().enumerate() {
            if i > 0 {
                out.push_str(",\n");
            }
            out.push_str("    {\n");
            push_grid_body(g, "      ", &mut out);
            out.push_str("\n    }");
        }
        out.push_str("\n  ]");
    }
    if !meta.is_empty() {
        out.push_str(",\n  \"meta\": ");
        out.push_str(&serde_json::to_string(meta).expect("serializable"));
    }
    out.push_str("\n}\n");
    out
}

/// Parses a JSON document into its grids and metadata.
pub fn read_json(text: &str) -> Result<(Vec<Grid>, Meta), Error> {
    let doc: RawDoc =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Format(format!(
            "unsupported schema version {}",
            doc.schema
        )));
    }
    let meta = doc.meta.unwrap_or_default();
    match (doc.rows, doc.cols, doc.cells, doc.grids) {
        (Some(rows), Some(cols), Some(cells), None) => {
            let g = raw_to_grid(&RawGrid { rows, cols, cells })?;
            Ok((vec![g], meta))
        }
        (None, None, None, Some(raws)) => {
            let grids = raws.iter().map(raw_to_grid).collect::<Result<_, _>>()?;
            Ok((grids, meta))
        }
        _ => Err(Error::Format(
            "document must have either rows/cols/cells or grids".into(),
        )),
    }
}

/// Writes grids as CSV: one line per row, blank fields for empty cells;
/// multiple grids are separated by a single blank line.
pub fn write_csv(grids: &[Grid]) -> String {
    let mut out = String::new();
    for (i, g) in grids.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for r in 1..=g.rows() {
            let line: Vec<String> = (1..=g.cols())
                .map(|c| g.get(r, c).map(|v| v.to_string()).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
    out
}

/// Parses CSV produced by [`write_csv`]. Errors carry line and field
/// positions (1-based).
pub fn read_csv(text: &str) -> Result<Vec<Grid>, Error> {
    let mut grids = Vec::new();
    let mut block: Vec<Vec<Option<i64>>> = Vec::new();
    let mut first_line_of_block = 0usize;

    let flush = |block: &mut Vec<Vec<Option<i64>>>,
                 grids: &mut Vec<Grid>,
                 line_no: usize|
     -> Result<(), Error> {
        if block.is_empty() {
            return Ok(());
        }
        let cols = block[0].len();
        let mut g = Grid::new(block.len(), cols)
            .map_err(|e| Error::Format(format!("line {line_no}: {e}")))?;
        for (i, row) in block.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Format(format!(
                    "line {}: expected {cols} fields, got {}",
                    line_no + i,
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if let Some(v) = v {
                    g.set(i + 1, j + 1, *v).map_err(|e| {
                        Error::Format(format!("line {} field {}: {e}", line_no + i, j + 1))
                    })?;
                }
            }
        }
        grids.push(g);
        block.clear();
        Ok(())
    };

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            flush(&mut block, &mut grids, first_line_of_block)?;
            continue;
        }
        if block.is_empty() {
            first_line_of_block = line_no;
        }
        let mut row = Vec::new();
        for (j, field) in line.split(',').enumerate() {
            let field = field.trim();
            if field.is_empty() {
                row.push(None);
            } else {
                let v: i64 = field.parse().map_err(|_| {
                    Error::Format(format!(
                        "line {line_no} field {}: not an integer: {field:?}",
                        j + 1
                    ))
                })?;
                if v == 0 {
                    return Err(Error::Format(format!(
                        "line {line_no} field {}: zero entries are forbidden",
                        j + 1
                    )));
                }
                row.push(Some(v));
            }
        }
        block.push(row);
    }
    flush(&mut block, &mut grids, first_line_of_block)?;
    if grids.is_empty() {
        return Err(Error::Format("empty document".into()));
    }
    Ok(grids)
}

/// Reads a document from disk, dispatching on the `.json` / `.csv` extension.
pub fn load_path(path: &Path) -> Result<(Vec<Grid>, Meta), Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok((read_csv(&text)?, Meta::default())),
        _ => read_json(&text),
    }
}

/// Writes a document to disk in the format matching the extension.
pub fn save_path(path: &Path, grids: &[Grid], meta: &Meta) -> Result<(), Error> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => write_csv(grids),
        _ => write_json(grids, meta),
    };
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}

/// A directory of named grid documents (`<key>.json` or `<key>.csv`).
///
/// Base arrays found by the solver and probe results are stored here, keyed
/// by a stable name, so later runs skip the search.
#[derive(Debug, Clone)]
pub struct FixtureCatalog {
    dir: PathBuf,
}

impl FixtureCatalog {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureCatalog { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The key used for base five-per-line square arrays of the given order.
    pub fn base_key(order: usize) -> String {
        format!("h5-order{order}")
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        for ext in ["json", "csv"] {
            let p = self.dir.join(format!("{key}.{ext}"));
            if p.is_file() {
                return Some(p);
            }
        }
        None
    }

    pub fn load(&self, key: &str) -> Result<Option<(Vec<Grid>, Meta)>, Error> {
        match self.path_for(key) {
            Some(p) => load_path(&p).map(Some),
            None => Ok(None),
        }
    }

    pub fn store(&self, key: &str, grids: &[Grid], meta: &Meta) -> Result<PathBuf, Error> {
        fs::create_dir_all(&self.dir)
            .map_err(|e| Error::Io(format!("{}: {e}", self.dir.display())))?;
        let path = self.dir.join(format!("{key}.json"));
        save_path(&path, grids, meta)?;
        Ok(path)
    }

    /// Keys of all documents present in the catalog directory, sorted.
    pub fn list(&self) -> Vec<String> {
        let mut keys = Vec::new();
        if let Ok(entries) = fs::read_dir(&self.dir) {
            for entry in entries.flatten() {
                let path = entry.path();
                if matches!(
                    path.extension().and_then(|e| e.to_str()),
                    Some("json") | Some("csv")
                ) {
                    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                        keys.push(stem.to_string());
                    }
                }
            }
        }
        keys.sort();
        keys.dedup();
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Grid {
        let mut g = Grid::new(2, 3).unwrap();
        g.set(1, 1, 5).unwrap();
        g.set(1, 3, -5).unwrap();
        g.set(2, 2, 7).unwrap();
        g
    }

    #[test]
    fn json_round_trip() {
        let g = sample();
        let text = write_json(std::slice::from_ref(&g), &Meta::default());
        let (grids, _) = read_json(&text).unwrap();
        assert_eq!(grids, vec![g]);
    }

    #[test]
    fn reference_array_round_trips() {
        let path = std::path::Path::new(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/figure1.csv"
        ));
        let (grids, _) = load_path(path).unwrap();
        let (back, _) = read_json(&write_json(&grids, &Meta::default())).unwrap();
        assert_eq!(back, grids);
        assert_eq!(read_csv(&write_csv(&grids)).unwrap(), grids);
    }

    #[test]
    fn json_rejects_duplicate_coordinate() {
        let text = r#"{"schema":1,"rows":2,"cols":2,"cells":[[1,1,3],[1,1,4]]}"#;
        assert!(matches!(read_json(text), Err(Error::Format(_))));
    }

    #[test]
    fn json_rejects_zero_and_out_of_bounds() {
        let zero = r#"{"schema":1,"rows":2,"cols":2,"cells":[[1,1,0]]}"#;
        assert!(matches!(read_json(zero), Err(Error::Format(_))));
        let oob = r#"{"schema":1,"rows":2,"cols":2,"cells":[[3,1,5]]}"#;
        assert!(matches!(read_json(oob), Err(Error::Format(_))));
    }

    #[test]
    fn csv_round_trip_multi() {
        let a = sample();
        let b = a.negate();
        let text = write_csv(&[a.clone(), b.clone()]);
        let grids = read_csv(&text).unwrap();
        assert_eq!(grids, vec![a, b]);
    }

    #[test]
    fn csv_rejects_zero_with_position() {
        let err = read_csv("1,2\n0,4\n").unwrap_err();
        match err {
            Error::Format(msg) => assert!(msg.contains("line 2 field 1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
