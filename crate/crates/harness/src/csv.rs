//! CSV tables: comma separator, header row, LF endings.

use std::path::Path;

use daqc_core::numfmt::significant;

use crate::error::{HarnessError, Result};

/// Floats in CSV cells carry 12 significant digits.
pub fn num(x: f64) -> String {
    significant(x, 12)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        for record in std::iter::once(&self.header).chain(&self.rows) {
            w.write_record(record).expect("writing to memory cannot fail");
        }
        let bytes = w.into_inner().expect("flushing to memory cannot fail");
        String::from_utf8(bytes).expect("cells are UTF-8")
    }
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let io = |source| HarnessError::Io { path: path.display().to_string(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}
