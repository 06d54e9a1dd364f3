//! Line-oriented table format.
//!
//! A file holds one or more blocks separated by blank lines. Each block is
//!
//! ```text
//! variety X125
//! kind generators
//! symmetry 3-7 [hswap]
//! 0 0 1 0 0 0 0
//! ...
//! ```
//!
//! Rows are orbit representatives: the columns in the (1-based, inclusive)
//! `symmetry` range may be permuted freely, and `hswap` additionally allows
//! swapping the first two columns. Input is whitespace-tolerant; emission is
//! canonical single-space, LF.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum TableKind {
    Generators,
    Inequalities,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Generators => write!(f, "generators"),
            TableKind::Inequalities => write!(f, "inequalities"),
        }
    }
}

/// A parsed table block: orbit rows plus their symmetry annotation.
#[derive(Clone, Debug)]
pub struct RawTable {
    pub variety: String,
    pub kind: TableKind,
    /// 0-based half-open column range that may be permuted.
    pub perm_range: (usize, usize),
    pub h_swap: bool,
    pub rows: Vec<Vec<i64>>,
}

pub fn parse_tables(text: &str) -> Result<Vec<RawTable>> {
    let mut tables: Vec<RawTable> = Vec::new();
    let mut seen: BTreeSet<(String, TableKind)> = BTreeSet::new();

    let mut block: Option<RawTable> = None;
    let mut header: Vec<(usize, String, String)> = Vec::new();

    let err = |line: usize, msg: String| Error::TableParse { line, msg };

    let mut finish = |block: &mut Option<RawTable>,
                      header: &mut Vec<(usize, String, String)>,
                      line: usize|
     -> Result<()> {
        if let Some(t) = block.take() {
            if t.rows.is_empty() {
                return Err(err(line, "table block has no rows".into()));
            }
            if !seen.insert((t.variety.clone(), t.kind)) {
                return Err(err(
                    line,
                    format!("duplicate table for {} {}", t.variety, t.kind),
                ));
            }
            tables.push(t);
        } else if !header.is_empty() {
            return Err(err(line, "incomplete table header".into()));
        }
        header.clear();
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            finish(&mut block, &mut header, lineno)?;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }

        let mut parts = line.split_whitespace();
        let first = parts.next().expect("nonempty line");
        let is_header = matches!(first, "variety" | "kind" | "symmetry");

        if is_header {
            if block.is_some() {
                return Err(err(lineno, "header key after rows started".into()));
            }
            let value: Vec<&str> = parts.collect();
            if value.is_empty() {
                return Err(err(lineno, format!("missing value for `{first}`")));
            }
            header.push((lineno, first.to_string(), value.join(" ")));
            continue;
        }

        // A data row: the header must be complete by now.
        if block.is_none() {
            let mut variety = None;
            let mut kind = None;
            let mut sym = None;
            for (hline, key, value) in header.drain(..) {
                match key.as_str() {
                    "variety" => variety = Some(value),
                    "kind" => {
                        kind = Some(match value.as_str() {
                            "generators" => TableKind::Generators,
                            "inequalities" => TableKind::Inequalities,
                            other => {
                                return Err(err(hline, format!("unknown kind `{other}`")))
                            }
                        })
                    }
                    "symmetry" => {
                        let mut it = value.split_whitespace();
                        let range = it.next().unwrap_or("");
                        let h_swap = match it.next() {
                            None => false,
                            Some("hswap") => true,
                            Some(other) => {
                                return Err(err(
                                    hline,
                                    format!("unknown symmetry flag `{other}`"),
                                ))
                            }
                        };
                        let (a, b) = range
                            .split_once('-')
                            .ok_or_else(|| err(hline, format!("bad symmetry range `{range}`")))?;
                        let a: usize = a
                            .parse()
                            .map_err(|_| err(hline, format!("bad symmetry range `{range}`")))?;
                        let b: usize = b
                            .parse()
                            .map_err(|_| err(hline, format!("bad symmetry range `{range}`")))?;
                        if a == 0 || b < a {
                            return Err(err(hline, format!("bad symmetry range `{range}`")));
                        }
                        sym = Some(((a - 1, b), h_swap));
                    }
                    _ => unreachable!(),
                }
            }
            let variety =
                variety.ok_or_else(|| err(lineno, "missing `variety` header".into()))?;
            let kind = kind.ok_or_else(|| err(lineno, "missing `kind` header".into()))?;
            let ((a, b), h_swap) =
                sym.ok_or_else(|| err(lineno, "missing `symmetry` header".into()))?;
            block = Some(RawTable {
                variety,
                kind,
                perm_range: (a, b),
                h_swap,
                rows: Vec::new(),
            });
        }

        let row: Vec<i64> = std::iter::once(first)
            .chain(line.split_whitespace().skip(1))
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| err(lineno, format!("bad integer `{tok}`")))
            })
            .collect::<Result<_>>()?;

        let t = block.as_mut().expect("block initialized above");
        if let Some(prev) = t.rows.first() {
            if prev.len() != row.len() {
                return Err(err(
                    lineno,
                    format!("row has {} entries, expected {}", row.len(), prev.len()),
                ));
            }
        } else {
            let (a, b) = t.perm_range;
            if b > row.len() || a >= b {
                return Err(err(
                    lineno,
                    format!(
                        "symmetry range {}-{} does not fit a row of {} entries",
                        a + 1,
                        b,
                        row.len()
                    ),
                ));
            }
        }
        if t.rows.contains(&row) {
            return Err(err(lineno, "duplicate orbit row".into()));
        }
        t.rows.push(row);
    }
    let last = text.lines().count();
    finish(&mut block, &mut header, last)?;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_blocks() {
        let text = "\
variety X121
kind generators
symmetry 3-3
0 0 1
1 0 -1

variety X121
kind inequalities
symmetry 3-3
1 0 0
0 1 0
1 1 1
";
        let tables = parse_tables(text).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].variety, "X121");
        assert_eq!(tables[0].rows.len(), 2);
        assert_eq!(tables[1].kind, TableKind::Inequalities);
        assert_eq!(tables[1].perm_range, (2, 3));
    }

    #[test]
    fn rejects_bad_arity() {
        let text = "variety A\nkind generators\nsymmetry 2-3\n1 0 0\n1 0\n";
        match parse_tables(text) {
            Err(Error::TableParse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_rows_and_tables() {
        let text = "variety A\nkind generators\nsymmetry 1-2\n1 0\n1 0\n";
        assert!(parse_tables(text).is_err());
        let text = "variety A\nkind generators\nsymmetry 1-2\n1 0\n\nvariety A\nkind generators\nsymmetry 1-2\n0 1\n";
        assert!(parse_tables(text).is_err());
    }

    #[test]
    fn rejects_unknown_symmetry_flag() {
        let text = "variety A\nkind generators\nsymmetry 1-2 flip\n1 0\n";
        assert!(parse_tables(text).is_err());
    }
}
