//! Records and the three output formats.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Table,
}

impl Format {
    pub const NAMES: [&'static str; 3] = ["text", "csv", "table"];

    pub fn parse(name: &str) -> Option<Format> {
        match name {
            "text" => Some(Format::Text),
            "csv" => Some(Format::Csv),
            "table" => Some(Format::Table),
            _ => None,
        }
    }
}

/// One line of output: ordered key/value pairs, the first being `kind`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record(pub Vec<(String, String)>);

impl Record {
    pub fn new(kind: &str) -> Self {
        Record(vec![("kind".into(), kind.into())])
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn keys(&self) -> Vec<&str> {
        self.0.iter().map(|(k, _)| k.as_str()).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
    /// Golden mismatches; nonzero turns into its own exit status.
    pub failures: usize,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }
}

fn text_value(v: &str) -> String {
    if v.is_empty() || v.contains([' ', '"', '=', '\\']) {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in &report.records {
                let fields: Vec<String> = r.0.iter().map(|(k, v)| format!("{k}={}", text_value(v))).collect();
                writeln!(out, "{}", fields.join(" ")).unwrap();
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            let mut header: Vec<&str> = Vec::new();
            for r in &report.records {
                if r.keys() != header {
                    header = r.keys();
                    w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.write_record(r.0.iter().map(|(_, v)| v)).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Table => {
            let mut out = String::new();
            let mut i = 0;
            while i < report.records.len() {
                let keys = report.records[i].keys();
                let mut j = i;
                while j < report.records.len() && report.records[j].keys() == keys {
                    j += 1;
                }
                let block = &report.records[i..j];
                let widths: Vec<usize> = (0..keys.len())
                    .map(|c| block.iter().map(|r| r.0[c].1.len()).chain([keys[c].len()]).max().unwrap())
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> =
                        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                if i > 0 {
                    out.push('\n');
                }
                writeln!(out, "{}", line(keys.clone())).unwrap();
                for r in block {
                    writeln!(out, "{}", line(r.0.iter().map(|(_, v)| v.as_str()).collect())).unwrap();
                }
                i = j;
            }
            Ok(out)
        }
    }
}

/// Writes next to the target and renames, so a failed run leaves no
/// partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::default();
        r.push(Record::new("a").with("x", 1).with("y", "two words"));
        r.push(Record::new("a").with("x", 22).with("y", "z"));
        r.push(Record::new("b").with("n", "1,2"));
        r
    }

    #[test]
    fn text_quotes_spaces() {
        let s = render(&sample(), Format::Text).unwrap();
        assert_eq!(s, "kind=a x=1 y=\"two words\"\nkind=a x=22 y=z\nkind=b n=1,2\n");
    }

    #[test]
    fn csv_repeats_header_on_new_shape() {
        let s = render(&sample(), Format::Csv).unwrap();
        assert_eq!(s, "kind,x,y\na,1,two words\na,22,z\nkind,n\nb,\"1,2\"\n");
    }

    #[test]
    fn table_aligns_columns() {
        let s = render(&sample(), Format::Table).unwrap();
        assert_eq!(s, "kind  x   y\na     1   two words\na     22  z\n\nkind  n\nb     1,2\n");
    }
}
