//! Emission (and re-parsing) of cone input files in the `amb_space` /
//! block-count text format, for external cross-checking.
//!
//! Output is canonical: UTF-8, LF line endings, single spaces. Parsing is
//! whitespace tolerant.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::catalog::{recipe, Catalog, VarietyId};
use crate::error::{Error, Result};
use crate::exactcone::IntVector;
use crate::io::tables::TableKind;
use crate::pipeline;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Inequalities,
    Cone,
}

impl BlockKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            BlockKind::Inequalities => "inequalities",
            BlockKind::Cone => "cone",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalizInput {
    pub amb_space: usize,
    pub kind: BlockKind,
    pub rows: Vec<IntVector>,
}

impl NormalizInput {
    pub fn new(amb_space: usize, kind: BlockKind, rows: Vec<IntVector>) -> Result<Self> {
        for r in &rows {
            if r.dim() != amb_space {
                return Err(Error::DimensionMismatch {
                    expected: amb_space,
                    got: r.dim(),
                });
            }
        }
        Ok(NormalizInput {
            amb_space,
            kind,
            rows,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "amb_space {}", self.amb_space).unwrap();
        writeln!(out, "{} {}", self.kind.keyword(), self.rows.len()).unwrap();
        for row in &self.rows {
            let mut first = true;
            for e in row.entries() {
                if !first {
                    out.push(' ');
                }
                write!(out, "{e}").unwrap();
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<NormalizInput> {
        let mut tokens = text.split_whitespace().peekable();
        let expect = |tok: Option<&str>, what: &str| {
            tok.map(str::to_string)
                .ok_or_else(|| Error::Invalid(format!("missing {what}")))
        };
        let kw = expect(tokens.next(), "amb_space header")?;
        if kw != "amb_space" {
            return Err(Error::Invalid(format!("expected `amb_space`, got `{kw}`")));
        }
        let amb: usize = expect(tokens.next(), "ambient dimension")?
            .parse()
            .map_err(|_| Error::Invalid("bad ambient dimension".into()))?;
        let kind = match expect(tokens.next(), "block kind")?.as_str() {
            "inequalities" => BlockKind::Inequalities,
            "cone" => BlockKind::Cone,
            other => return Err(Error::Invalid(format!("unknown block kind `{other}`"))),
        };
        let count: usize = expect(tokens.next(), "row count")?
            .parse()
            .map_err(|_| Error::Invalid("bad row count".into()))?;
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let mut row = Vec::with_capacity(amb);
            for _ in 0..amb {
                let tok = expect(tokens.next(), "row entry")?;
                row.push(
                    tok.parse::<i64>()
                        .map_err(|_| Error::Invalid(format!("bad integer `{tok}`")))?,
                );
            }
            rows.push(IntVector::from_i64(&row));
        }
        if tokens.next().is_some() {
            return Err(Error::Invalid("trailing tokens after rows".into()));
        }
        NormalizInput::new(amb, kind, rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Ineqs,
    Gens,
}

impl Stage {
    pub fn parse(s: &str) -> Result<Stage> {
        match s {
            "ineqs" => Ok(Stage::Ineqs),
            "gens" => Ok(Stage::Gens),
            other => Err(Error::Invalid(format!("unknown stage `{other}`"))),
        }
    }
}

/// Builds the cone input of a variety at the given stage: the assembled
/// inequality battery, or the intermediate rays together with the adjoined
/// fixed classes (for base-case varieties, the reference generators).
pub fn build_input(catalog: &Catalog, variety: VarietyId, stage: Stage) -> Result<NormalizInput> {
    let dim = variety.rank();
    match stage {
        Stage::Ineqs => {
            let r = recipe(variety)?;
            let rows = pipeline::assemble_inequalities(catalog, &r)?;
            NormalizInput::new(dim, BlockKind::Inequalities, rows)
        }
        Stage::Gens => match recipe(variety) {
            Ok(r) => {
                let run = pipeline::run_cone_method(catalog, &r)?;
                let mut rows = run.restricted.rays().to_vec();
                rows.extend(pipeline::adjoined_classes(&r)?);
                let mut seen = std::collections::BTreeSet::new();
                rows.retain(|v| seen.insert(v.normalized()));
                NormalizInput::new(dim, BlockKind::Cone, rows)
            }
            Err(Error::NoRecipe(_)) => {
                let rows = catalog.expanded(variety, TableKind::Generators)?;
                NormalizInput::new(dim, BlockKind::Cone, rows)
            }
            Err(e) => Err(e),
        },
    }
}

/// Writes `<id>-ineqs.in` or `<id>-gens.in` into the directory.
pub fn emit_file(
    catalog: &Catalog,
    variety: VarietyId,
    stage: Stage,
    out_dir: &Path,
) -> Result<PathBuf> {
    let input = build_input(catalog, variety, stage)?;
    let name = match stage {
        Stage::Ineqs => format!("{variety}-ineqs.in"),
        Stage::Gens => format!("{variety}-gens.in"),
    };
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    std::fs::write(&path, input.render())?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        let input = NormalizInput::new(
            3,
            BlockKind::Inequalities,
            vec![IntVector::from_i64(&[1, 0, 0]), IntVector::from_i64(&[1, 1, -1])],
        )
        .unwrap();
        let text = input.render();
        assert_eq!(text, "amb_space 3\ninequalities 2\n1 0 0\n1 1 -1\n");
        let back = NormalizInput::parse(&text).unwrap();
        assert_eq!(back.rows, input.rows);
        assert_eq!(back.kind, BlockKind::Inequalities);

        // Whitespace tolerant.
        let messy = "amb_space   3\n inequalities 1\n\n  1\t0 0\n";
        assert_eq!(NormalizInput::parse(messy).unwrap().rows.len(), 1);
    }

    #[test]
    fn empty_block_renders() {
        let input = NormalizInput::new(4, BlockKind::Inequalities, vec![]).unwrap();
        assert_eq!(input.render(), "amb_space 4\ninequalities 0\n");
        assert!(NormalizInput::parse(&input.render()).unwrap().rows.is_empty());
    }

    #[test]
    fn stage_inputs_cover_both_kinds() {
        let c = Catalog::bundled();
        let ineqs = build_input(&c, VarietyId::X123, Stage::Ineqs).unwrap();
        assert_eq!(ineqs.kind, BlockKind::Inequalities);
        assert!(ineqs.rows.len() > 10);
        let gens = build_input(&c, VarietyId::X123, Stage::Gens).unwrap();
        assert_eq!(gens.kind, BlockKind::Cone);
        // Base case: the reference generators.
        let base = build_input(&c, VarietyId::X116, Stage::Gens).unwrap();
        assert_eq!(base.rows.len(), 56);
        assert!(build_input(&c, VarietyId::X116, Stage::Ineqs).is_err());
    }
}
