//! Bundled data files and the shared text record format.
//!
//! Every data file starts with a header line `# qgalg-<kind> v1`. Further
//! lines starting with `#` are comments; blank lines are ignored. Each
//! remaining line is one record of `|`-separated fields.

use std::path::PathBuf;

use crate::error::{Error, Result};

/// Environment variable overriding the directory data files are read from.
pub const DATA_DIR_ENV: &str = "QGALG_DATA_DIR";
pub const FORMAT_VERSION: u32 = 1;

const BUNDLED: &[(&str, &str)] = &[
    ("catalog.txt", include_str!("../data/catalog.txt")),
    ("table1.txt", include_str!("../data/table1.txt")),
    ("table2.txt", include_str!("../data/table2.txt")),
    ("table3.txt", include_str!("../data/table3.txt")),
    ("table4.txt", include_str!("../data/table4.txt")),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based line number in the source file.
    pub line: usize,
    pub fields: Vec<String>,
}

impl Record {
    pub fn field(&self, i: usize) -> &str {
        &self.fields[i]
    }

    /// Field `i` split on commas, empty entries dropped.
    pub fn list(&self, i: usize) -> Vec<String> {
        split_list(&self.fields[i])
    }
}

pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parses a record file of the given kind with exactly `nfields` fields per
/// record.
pub fn parse_records(text: &str, source: &str, kind: &str, nfields: usize) -> Result<Vec<Record>> {
    let header = format!("# qgalg-{kind} v{FORMAT_VERSION}");
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == header => {}
        Some((i, l)) => {
            return Err(Error::parse(
                format!("{source}:{}", i + 1),
                format!("expected header `{header}`, found `{}`", l.trim()),
            ))
        }
        None => return Err(Error::parse(source, "empty data file")),
    }
    let mut out = Vec::new();
    for (i, l) in lines {
        if l.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<String> = l.split('|').map(|f| f.trim().to_string()).collect();
        if fields.len() != nfields {
            return Err(Error::parse(
                format!("{source}:{}", i + 1),
                format!("expected {nfields} fields, found {}", fields.len()),
            ));
        }
        out.push(Record { line: i + 1, fields });
    }
    Ok(out)
}

/// The override directory, if the environment variable is set.
pub fn data_dir_override() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

/// Reads a data file from the override directory or the bundled copy.
pub fn read_data_file(name: &str) -> Result<(String, String)> {
    if let Some(dir) = data_dir_override() {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return Ok((text, path.display().to_string()));
    }
    bundled(name)
        .map(|t| (t.to_string(), format!("<bundled>/{name}")))
        .ok_or_else(|| Error::Io(format!("no bundled data file named {name}")))
}

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_required() {
        assert!(parse_records("a|b\n", "x", "catalog", 2).is_err());
        let r = parse_records("# qgalg-catalog v1\n# c\n\na | b\n", "x", "catalog", 2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].fields, vec!["a", "b"]);
        assert_eq!(r[0].line, 4);
        assert!(parse_records("# qgalg-catalog v1\na|b|c\n", "x", "catalog", 2).is_err());
    }

    #[test]
    fn lists_respect_brackets() {
        assert_eq!(split_list("M2(Q), (-1,-3/Q), x"), vec!["M2(Q)", "(-1,-3/Q)", "x"]);
        assert!(split_list("").is_empty());
    }
}
