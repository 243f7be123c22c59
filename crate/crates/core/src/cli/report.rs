//! CSV tables with a `# key=value` configuration header.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

/// One CSV cell; numbers are written in a fixed scientific format.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Self::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Every numeric cell is finite.
    pub fn all_finite(&self) -> bool {
        self.rows.iter().flatten().all(|c| match c {
            Cell::Num(v) => v.is_finite(),
            _ => true,
        })
    }

    pub fn render(&self, header: &[(String, String)]) -> String {
        let mut s = String::new();
        for (k, v) in header {
            let _ = writeln!(s, "# {k}={v}");
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format!("{v:.10e}"),
                    Cell::Int(v) => v.to_string(),
                    // text never needs quoting: labels carry no commas or quotes
                    Cell::Text(t) => t.replace(',', ";"),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path, header: &[(String, String)]) -> io::Result<()> {
        std::fs::write(path, self.render(header))
    }
}

/// The part of a CSV file after its `#` header lines.
pub fn csv_body(text: &str) -> &str {
    let mut start = 0;
    for line in text.split_inclusive('\n') {
        if !line.starts_with('#') {
            break;
        }
        start += line.len();
    }
    &text[start..]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_strip_header() {
        let mut t = Table::new(&["x", "n", "label"]);
        t.push(vec![1.5.into(), 3usize.into(), "a,b".into()]);
        let header = vec![("h".to_string(), "0.5".to_string())];
        let text = t.render(&header);
        assert_eq!(text, "# h=0.5\nx,n,label\n1.5000000000e0,3,a;b\n");
        assert_eq!(csv_body(&text), "x,n,label\n1.5000000000e0,3,a;b\n");
        assert!(t.all_finite());
        t.push(vec![f64::NAN.into(), 0usize.into(), "".into()]);
        assert!(!t.all_finite());
    }
}
