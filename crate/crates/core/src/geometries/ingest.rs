//! Reading and writing invariant tables as tab-separated text.
//!
//! ```text
//! # geometry: local-p2
//! # kind: gv            (gv | gw | abc)
//! # G: local-p2         (local-p2 | abjm | xp:<p> | conifold | inferred)
//! # degrees: exhaustive (gv only; or a comma list of declared degrees)
//! 0<TAB>1<TAB>3
//! ```
//!
//! GV rows are `r d n` with integer `n`, GW rows `g d num/den`. abc tables
//! carry `# dmax: D` and rows `a d v`, `b d m v`, `c d v`. Other `#` lines
//! are comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rug::Integer;

use crate::arith::{format_rational, parse_rational};
use crate::invariants::{AbcTable, GenusBound, GvTable, GwTable};
use crate::{Error, Result};

/// A table in any of the three exact representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Table {
    Gv(GvTable),
    Gw(GwTable),
    Abc(AbcTable),
}

impl Table {
    pub fn kind(&self) -> &'static str {
        match self {
            Table::Gv(_) => "gv",
            Table::Gw(_) => "gw",
            Table::Abc(_) => "abc",
        }
    }

    pub fn geometry(&self) -> &str {
        match self {
            Table::Gv(t) => t.geometry(),
            Table::Gw(t) => t.geometry(),
            Table::Abc(t) => t.geometry(),
        }
    }
}

/// Load and validate a table file.
pub fn load_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_table(&text, path)
}

/// Parse table text; `origin` is used in error messages only.
pub fn parse_table(text: &str, origin: &Path) -> Result<Table> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut headers: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once(':') {
                let key = key.trim().to_ascii_lowercase();
                if matches!(key.as_str(), "geometry" | "kind" | "g" | "degrees" | "dmax")
                    && headers.insert(key.clone(), (line, value.trim().to_string())).is_some()
                {
                    return Err(err(line, format!("repeated header '{key}'")));
                }
            }
            continue;
        }
        rows.push((line, trimmed.split('\t').map(str::trim).collect::<Vec<_>>()));
    }

    let header = |key: &str| headers.get(key).map(|(_, v)| v.as_str());
    let kind = header("kind").ok_or_else(|| err(0, "missing '# kind:' header".into()))?;
    let geometry = header("geometry").unwrap_or("unknown").to_string();
    let bound = match headers.get("g") {
        Some((line, v)) => v.parse::<GenusBound>().map_err(|e| err(*line, e.to_string()))?,
        None => GenusBound::Inferred,
    };
    let index = |line: usize, s: &str, what: &str| -> Result<u32> {
        s.parse::<u32>().map_err(|_| err(line, format!("bad {what} '{s}'")))
    };
    let integer = |line: usize, s: &str| -> Result<Integer> {
        Integer::from_str_radix(s, 10).map_err(|_| err(line, format!("expected an integer, found '{s}'")))
    };

    match kind {
        "gv" => {
            let mut gv = GvTable::new(geometry, bound);
            match header("degrees") {
                Some("exhaustive") => gv = gv.with_exhaustive(true),
                Some(list) => {
                    let line = headers["degrees"].0;
                    for d in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        gv.declare_degree(index(line, d, "degree")?);
                    }
                }
                None => {}
            }
            for (line, cols) in rows {
                let [r, d, v] = cols[..] else {
                    return Err(err(line, "expected 'r<TAB>d<TAB>n'".into()));
                };
                let (r, d) = (index(line, r, "genus")?, index(line, d, "degree")?);
                gv.insert(r, d, integer(line, v)?).map_err(|e| err(line, e.to_string()))?;
            }
            Ok(Table::Gv(gv))
        }
        "gw" => {
            let mut gw = GwTable::new(geometry, bound);
            for (line, cols) in rows {
                let [g, d, v] = cols[..] else {
                    return Err(err(line, "expected 'g<TAB>d<TAB>num/den'".into()));
                };
                let value = parse_rational(v).ok_or_else(|| err(line, format!("bad rational '{v}'")))?;
                gw.insert(index(line, g, "genus")?, index(line, d, "degree")?, value)
                    .map_err(|e| err(line, e.to_string()))?;
            }
            Ok(Table::Gw(gw))
        }
        "abc" => {
            let (dline, dmax) = headers.get("dmax").ok_or_else(|| err(0, "abc table needs '# dmax:'".into()))?;
            let dmax = index(*dline, dmax, "dmax")?;
            let (mut a, mut b, mut c) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
            for (line, cols) in rows {
                let duplicate = || err(line, "duplicate entry".into());
                match cols[..] {
                    ["a", d, v] => {
                        if a.insert(index(line, d, "degree")?, integer(line, v)?).is_some() {
                            return Err(duplicate());
                        }
                    }
                    ["c", d, v] => {
                        if c.insert(index(line, d, "degree")?, integer(line, v)?).is_some() {
                            return Err(duplicate());
                        }
                    }
                    ["b", d, m, v] => {
                        let key = (index(line, d, "degree")?, index(line, m, "index")?);
                        if b.insert(key, integer(line, v)?).is_some() {
                            return Err(duplicate());
                        }
                    }
                    _ => return Err(err(line, "expected an a, b or c row".into())),
                }
            }
            Ok(Table::Abc(AbcTable::from_parts(geometry, dmax, a, b, c)?))
        }
        other => Err(err(headers["kind"].0, format!("unknown table kind '{other}'"))),
    }
}

/// Canonical text of a table; `notes` become extra `# key: value` lines.
pub fn format_table(table: &Table, notes: &[(&str, String)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# geometry: {}", table.geometry());
    let _ = writeln!(out, "# kind: {}", table.kind());
    for (key, value) in notes {
        let _ = writeln!(out, "# {key}: {value}");
    }
    match table {
        Table::Gv(gv) => {
            let _ = writeln!(out, "# G: {}", gv.bound());
            if gv.is_exhaustive() {
                let _ = writeln!(out, "# degrees: exhaustive");
            } else {
                let listed: Vec<String> = gv.degrees().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "# degrees: {}", listed.join(","));
            }
            for ((r, d), v) in gv.entries() {
                let _ = writeln!(out, "{r}\t{d}\t{v}");
            }
        }
        Table::Gw(gw) => {
            let _ = writeln!(out, "# G: {}", gw.bound());
            for ((g, d), v) in gw.entries() {
                let _ = writeln!(out, "{g}\t{d}\t{}", format_rational(v));
            }
        }
        Table::Abc(abc) => {
            let _ = writeln!(out, "# dmax: {}", abc.dmax());
            for (d, v) in abc.a_entries() {
                let _ = writeln!(out, "a\t{d}\t{v}");
            }
            for ((d, m), v) in abc.b_entries() {
                let _ = writeln!(out, "b\t{d}\t{m}\t{v}");
            }
            for (d, v) in abc.c_entries() {
                let _ = writeln!(out, "c\t{d}\t{v}");
            }
        }
    }
    out
}

/// Write `contents` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// Atomically write a table in canonical form.
pub fn write_table(table: &Table, path: &Path, notes: &[(&str, String)]) -> Result<()> {
    write_atomic(path, format_table(table, notes).as_bytes())
}
