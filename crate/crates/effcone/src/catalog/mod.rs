//! Catalog of the varieties handled by the pipeline: their lattices, the
//! reference generator/inequality tables (embedded as data files), the
//! fixed-divisor rules in force, and the pipeline recipes.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::baselocus::RuleId;
use crate::error::{Error, Result};
use crate::exactcone::IntVector;
use crate::io::tables::{parse_tables, RawTable, TableKind};
use crate::lattice::Lattice;
use crate::transfer::MapId;

/// The sixteen catalogued varieties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum VarietyId {
    X115,
    X116,
    X121,
    X122,
    X123,
    X124,
    X125,
    X126,
    X035,
    X036,
    YL5,
    YL6,
    ZL4,
    X134,
    X135,
    X136,
}

impl VarietyId {
    pub const ALL: [VarietyId; 16] = [
        VarietyId::X115,
        VarietyId::X116,
        VarietyId::X121,
        VarietyId::X122,
        VarietyId::X123,
        VarietyId::X124,
        VarietyId::X125,
        VarietyId::X126,
        VarietyId::X035,
        VarietyId::X036,
        VarietyId::YL5,
        VarietyId::YL6,
        VarietyId::ZL4,
        VarietyId::X134,
        VarietyId::X135,
        VarietyId::X136,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            VarietyId::X115 => "X115",
            VarietyId::X116 => "X116",
            VarietyId::X121 => "X121",
            VarietyId::X122 => "X122",
            VarietyId::X123 => "X123",
            VarietyId::X124 => "X124",
            VarietyId::X125 => "X125",
            VarietyId::X126 => "X126",
            VarietyId::X035 => "X035",
            VarietyId::X036 => "X036",
            VarietyId::YL5 => "YL5",
            VarietyId::YL6 => "YL6",
            VarietyId::ZL4 => "ZL4",
            VarietyId::X134 => "X134",
            VarietyId::X135 => "X135",
            VarietyId::X136 => "X136",
        }
    }

    pub fn parse(s: &str) -> Result<VarietyId> {
        VarietyId::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownVariety(s.to_string()))
    }

    pub fn lattice(&self) -> Lattice {
        match self {
            VarietyId::X115 => Lattice::ProductBlowup { m: 1, n: 1, points: 5 },
            VarietyId::X116 => Lattice::ProductBlowup { m: 1, n: 1, points: 6 },
            VarietyId::X121 => Lattice::ProductBlowup { m: 1, n: 2, points: 1 },
            VarietyId::X122 => Lattice::ProductBlowup { m: 1, n: 2, points: 2 },
            VarietyId::X123 => Lattice::ProductBlowup { m: 1, n: 2, points: 3 },
            VarietyId::X124 => Lattice::ProductBlowup { m: 1, n: 2, points: 4 },
            VarietyId::X125 => Lattice::ProductBlowup { m: 1, n: 2, points: 5 },
            VarietyId::X126 => Lattice::ProductBlowup { m: 1, n: 2, points: 6 },
            VarietyId::X035 => Lattice::ProductBlowup { m: 0, n: 3, points: 5 },
            VarietyId::X036 => Lattice::ProductBlowup { m: 0, n: 3, points: 6 },
            VarietyId::YL5 => Lattice::LineBlowupP3 { points: 5 },
            VarietyId::YL6 => Lattice::LineBlowupP3 { points: 6 },
            VarietyId::ZL4 => Lattice::LineBlowupP1P2 { points: 4 },
            VarietyId::X134 => Lattice::ProductBlowup { m: 1, n: 3, points: 4 },
            VarietyId::X135 => Lattice::ProductBlowup { m: 1, n: 3, points: 5 },
            VarietyId::X136 => Lattice::ProductBlowup { m: 1, n: 3, points: 6 },
        }
    }

    pub fn rank(&self) -> usize {
        self.lattice().rank()
    }
}

impl std::fmt::Display for VarietyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A table row together with its symmetry annotation.
#[derive(Clone, Debug)]
pub struct OrbitRow {
    pub row: IntVector,
    /// Half-open coordinate range that may be permuted.
    pub perm_range: (usize, usize),
    /// Whether the first two coordinates may additionally be swapped.
    pub h_swap: bool,
}

/// All distinct images of the row under its symmetry group.
pub fn expand_orbit(orbit: &OrbitRow) -> Vec<IntVector> {
    let (a, b) = orbit.perm_range;
    let base: Vec<i64> = (0..orbit.row.dim()).map(|i| orbit.row.entry_i64(i)).collect();
    let mut block: Vec<i64> = base[a..b].to_vec();
    block.sort_unstable();

    let mut out = BTreeSet::new();
    loop {
        let mut v = base.clone();
        v[a..b].copy_from_slice(&block);
        out.insert(IntVector::from_i64(&v));
        if orbit.h_swap && v.len() >= 2 {
            v.swap(0, 1);
            out.insert(IntVector::from_i64(&v));
        }
        if !next_permutation(&mut block) {
            break;
        }
    }
    out.into_iter().collect()
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A reference table: orbit rows plus their full expansion.
#[derive(Clone, Debug)]
pub struct PaperTable {
    pub variety: String,
    pub kind: TableKind,
    pub rows: Vec<OrbitRow>,
}

impl PaperTable {
    fn from_raw(raw: &RawTable) -> Self {
        PaperTable {
            variety: raw.variety.clone(),
            kind: raw.kind,
            rows: raw
                .rows
                .iter()
                .map(|r| OrbitRow {
                    row: IntVector::from_i64(r),
                    perm_range: raw.perm_range,
                    h_swap: raw.h_swap,
                })
                .collect(),
        }
    }

    /// Fully expanded, primitive, deduplicated vector list.
    pub fn expanded(&self) -> Vec<IntVector> {
        let mut out = BTreeSet::new();
        for row in &self.rows {
            for v in expand_orbit(row) {
                out.insert(v.normalized());
            }
        }
        out.into_iter().collect()
    }
}

/// One input group of a pipeline recipe, in proof order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeInput {
    /// Inequalities of a smaller blowup, lifted at every point slot.
    LiftPoints(VarietyId),
    /// Inequalities of the blowdown forgetting the line, lifted at the
    /// line-exceptional slot.
    LiftLine(VarietyId),
    /// Effectivity inequalities of a fixed-divisor rule on the variety.
    Rule(RuleId),
    /// Inequalities of a known cone pulled back through a restriction map.
    PullMap { map: MapId, source: VarietyId },
    /// Same, but the restriction lands on the modified (line-in-fibre) side
    /// and the rows are carried over by the small modification; when
    /// `drop_consumed_point` is set, the slot of the consumed point must
    /// come out zero and is removed.
    PullMapViaModification {
        map: MapId,
        source: VarietyId,
        drop_consumed_point: bool,
    },
    /// Lift of a point-blowup inequality table to the modified side
    /// (inserting the line slot), carried over by the small modification.
    LiftLineViaModification(VarietyId),
    /// A rule generated on the modified side, carried over.
    RuleViaModification(RuleId),
}

/// Machine-readable pipeline recipe mirroring the construction of a cone.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub variety: VarietyId,
    pub inputs: Vec<RecipeInput>,
    /// Fixed-divisor families whose rays are adjoined after dualizing.
    pub adjoin: Vec<RuleId>,
    /// Further known fixed classes to adjoin. A fixed divisor used as a
    /// restriction target excludes itself from the restricted cone, so its
    /// class is added back here.
    pub adjoin_classes: Vec<IntVector>,
}

pub fn recipe(variety: VarietyId) -> Result<Recipe> {
    use RecipeInput::*;
    let inputs_and_adjoin: (Vec<RecipeInput>, Vec<RuleId>) = match variety {
        VarietyId::X123 | VarietyId::X124 | VarietyId::X125 => {
            let prev = match variety {
                VarietyId::X123 => VarietyId::X122,
                VarietyId::X124 => VarietyId::X123,
                _ => VarietyId::X124,
            };
            (
                vec![
                    LiftPoints(prev),
                    Rule(RuleId::ExcPoint),
                    Rule(RuleId::FibrePlane),
                    Rule(RuleId::PairPlane),
                ],
                vec![RuleId::ExcPoint, RuleId::FibrePlane, RuleId::PairPlane],
            )
        }
        VarietyId::X126 => (
            vec![
                PullMap {
                    map: MapId::Deg21SurfaceX126,
                    source: VarietyId::X116,
                },
                LiftPoints(VarietyId::X125),
                Rule(RuleId::ExcPoint),
                Rule(RuleId::FibrePlane),
                Rule(RuleId::PairPlane),
                Rule(RuleId::Deg11Surface),
                Rule(RuleId::Deg02Surface),
                Rule(RuleId::Deg14Surface),
            ],
            vec![
                RuleId::ExcPoint,
                RuleId::FibrePlane,
                RuleId::PairPlane,
                RuleId::Deg11Surface,
                RuleId::Deg02Surface,
                RuleId::Deg14Surface,
            ],
        ),
        VarietyId::YL5 => (
            vec![
                Rule(RuleId::ExcPoint),
                Rule(RuleId::ExcLine),
                Rule(RuleId::PointPlane),
                Rule(RuleId::LinePlane),
                LiftLine(VarietyId::X035),
                PullMapViaModification {
                    map: MapId::Deg21SurfaceZL5,
                    source: VarietyId::X115,
                    drop_consumed_point: true,
                },
            ],
            vec![
                RuleId::ExcPoint,
                RuleId::ExcLine,
                RuleId::PointPlane,
                RuleId::LinePlane,
            ],
        ),
        VarietyId::YL6 => (
            vec![
                Rule(RuleId::ExcPoint),
                Rule(RuleId::ExcLine),
                Rule(RuleId::PointPlane),
                Rule(RuleId::LinePlane),
                Rule(RuleId::NodalQuadric),
                RuleViaModification(RuleId::LineDeg11),
                PullMap {
                    map: MapId::QuadricYL6,
                    source: VarietyId::X116,
                },
                LiftPoints(VarietyId::YL5),
                LiftLine(VarietyId::X036),
                LiftLineViaModification(VarietyId::X125),
            ],
            vec![
                RuleId::ExcPoint,
                RuleId::ExcLine,
                RuleId::PointPlane,
                RuleId::LinePlane,
                RuleId::NodalQuadric,
            ],
        ),
        VarietyId::X135 | VarietyId::X136 => {
            let (prev, map) = if variety == VarietyId::X135 {
                (VarietyId::X134, MapId::Deg11DivisorX135)
            } else {
                (VarietyId::X135, MapId::Deg11DivisorX136)
            };
            let deg11_source = if variety == VarietyId::X135 {
                VarietyId::YL5
            } else {
                VarietyId::YL6
            };
            (
                vec![
                    Rule(RuleId::ExcPoint),
                    Rule(RuleId::FibrePlane),
                    Rule(RuleId::TriplePlane),
                    LiftPoints(prev),
                    PullMap {
                        map,
                        source: deg11_source,
                    },
                ],
                vec![RuleId::ExcPoint, RuleId::FibrePlane, RuleId::TriplePlane],
            )
        }
        other => return Err(Error::NoRecipe(other.as_str().to_string())),
    };
    let adjoin_classes = match variety {
        // The unique quadric through the line and all six points is fixed,
        // so the restriction to it says nothing about its own class.
        VarietyId::YL6 => vec![IntVector::from_i64(&[2, -1, -1, -1, -1, -1, -1, -1])],
        _ => Vec::new(),
    };
    Ok(Recipe {
        variety,
        inputs: inputs_and_adjoin.0,
        adjoin: inputs_and_adjoin.1,
        adjoin_classes,
    })
}

const EMBEDDED_TABLES: &[(&str, &str)] = &[
    ("x115.tbl", include_str!("data/x115.tbl")),
    ("x116.tbl", include_str!("data/x116.tbl")),
    ("x121.tbl", include_str!("data/x121.tbl")),
    ("x122.tbl", include_str!("data/x122.tbl")),
    ("x123.tbl", include_str!("data/x123.tbl")),
    ("x124.tbl", include_str!("data/x124.tbl")),
    ("x125.tbl", include_str!("data/x125.tbl")),
    ("x126.tbl", include_str!("data/x126.tbl")),
    ("x035.tbl", include_str!("data/x035.tbl")),
    ("x036.tbl", include_str!("data/x036.tbl")),
    ("yl5.tbl", include_str!("data/yl5.tbl")),
    ("yl6.tbl", include_str!("data/yl6.tbl")),
    ("zl4.tbl", include_str!("data/zl4.tbl")),
    ("x134.tbl", include_str!("data/x134.tbl")),
    ("x135.tbl", include_str!("data/x135.tbl")),
    ("x136.tbl", include_str!("data/x136.tbl")),
    ("aux.tbl", include_str!("data/aux.tbl")),
];

/// The loaded catalog: reference tables keyed by (id, kind).
#[derive(Debug)]
pub struct Catalog {
    tables: BTreeMap<(String, TableKind), PaperTable>,
}

impl Catalog {
    /// Loads the embedded data files.
    pub fn bundled() -> Catalog {
        let mut tables = BTreeMap::new();
        for (name, text) in EMBEDDED_TABLES {
            let parsed = parse_tables(text)
                .unwrap_or_else(|e| panic!("embedded table {name} is malformed: {e}"));
            for raw in &parsed {
                let table = PaperTable::from_raw(raw);
                let key = (table.variety.clone(), table.kind);
                assert!(
                    tables.insert(key, table).is_none(),
                    "duplicate embedded table in {name}"
                );
            }
        }
        let catalog = Catalog { tables };
        catalog.validate().expect("embedded catalog is consistent");
        catalog
    }

    /// Parses additional table blocks from external text into a catalog.
    pub fn from_text(text: &str) -> Result<Catalog> {
        let mut tables = BTreeMap::new();
        for raw in parse_tables(text)? {
            let table = PaperTable::from_raw(&raw);
            tables.insert((table.variety.clone(), table.kind), table);
        }
        Ok(Catalog { tables })
    }

    fn validate(&self) -> Result<()> {
        for v in VarietyId::ALL {
            for kind in [TableKind::Generators, TableKind::Inequalities] {
                let t = self.table(v, kind)?;
                let expanded = t.expanded();
                // Expanded rows must match the lattice rank and be pairwise
                // non-proportional.
                let mut seen = BTreeSet::new();
                for row in &expanded {
                    if row.dim() != v.rank() {
                        return Err(Error::DimensionMismatch {
                            expected: v.rank(),
                            got: row.dim(),
                        });
                    }
                    if !seen.insert(row.normalized()) {
                        return Err(Error::Invalid(format!(
                            "proportional rows in table {v} {kind}"
                        )));
                    }
                }
            }
            // Every generator satisfies every inequality of its own table.
            let gens = self.table(v, TableKind::Generators)?.expanded();
            let ineqs = self.table(v, TableKind::Inequalities)?.expanded();
            for g in &gens {
                for f in &ineqs {
                    if f.dot(g)? < 0.into() {
                        return Err(Error::Invalid(format!(
                            "generator {g} of {v} violates inequality {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn table(&self, variety: VarietyId, kind: TableKind) -> Result<&PaperTable> {
        self.named_table(variety.as_str(), kind)
    }

    pub fn named_table(&self, name: &str, kind: TableKind) -> Result<&PaperTable> {
        self.tables
            .get(&(name.to_string(), kind))
            .ok_or_else(|| Error::UnknownVariety(name.to_string()))
    }

    /// Fully expanded table of a catalogued variety.
    pub fn expanded(&self, variety: VarietyId, kind: TableKind) -> Result<Vec<IntVector>> {
        Ok(self.table(variety, kind)?.expanded())
    }

    pub fn table_names(&self) -> Vec<(String, TableKind)> {
        self.tables.keys().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn bundled_catalog_loads() {
        let c = Catalog::bundled();
        // 16 varieties, two tables each, plus the three auxiliary blocks.
        assert_eq!(c.table_names().len(), 35);
    }

    #[test]
    fn orbit_expansion_counts() {
        // Two slots chosen among six: 15 images.
        let row = OrbitRow {
            row: iv(&[1, 1, 1, 1, 0, 0, 0, 0]),
            perm_range: (2, 8),
            h_swap: false,
        };
        assert_eq!(expand_orbit(&row).len(), 15);

        // All-equal block, no swap: a single image.
        let row = OrbitRow {
            row: iv(&[1, 2, 1, 1, 1]),
            perm_range: (2, 5),
            h_swap: false,
        };
        assert_eq!(expand_orbit(&row).len(), 1);

        // Degree swap doubles an asymmetric row.
        let row = OrbitRow {
            row: iv(&[2, 1, -1, -1, -1, -1, -1]),
            perm_range: (2, 7),
            h_swap: true,
        };
        assert_eq!(expand_orbit(&row).len(), 2);
    }

    #[test]
    fn expanded_table_counts() {
        let c = Catalog::bundled();
        let x122 = c.expanded(VarietyId::X122, TableKind::Generators).unwrap();
        let expect = vec![
            iv(&[0, 0, 1, 0]),
            iv(&[0, 0, 0, 1]),
            iv(&[1, 0, -1, 0]),
            iv(&[1, 0, 0, -1]),
            iv(&[0, 1, -1, -1]),
        ];
        let cmp = crate::exactcone::equal_up_to_normalization(&x122, &expect);
        assert!(cmp.is_equal());

        // 21 inequality orbits of the 6-point del Pezzo expand to 702 rows.
        let x116 = c.expanded(VarietyId::X116, TableKind::Inequalities).unwrap();
        assert_eq!(x116.len(), 702);

        let x124 = c.expanded(VarietyId::X124, TableKind::Generators).unwrap();
        assert_eq!(x124.len(), 4 + 4 + 6 + 1);
    }

    #[test]
    fn recipes_exist_exactly_where_expected() {
        let with: Vec<VarietyId> = VarietyId::ALL
            .into_iter()
            .filter(|v| recipe(*v).is_ok())
            .collect();
        assert_eq!(
            with,
            vec![
                VarietyId::X123,
                VarietyId::X124,
                VarietyId::X125,
                VarietyId::X126,
                VarietyId::YL5,
                VarietyId::YL6,
                VarietyId::X135,
                VarietyId::X136,
            ]
        );
    }
}
