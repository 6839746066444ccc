// SPDX-License-Identifier: MIT OR Apache-2.0

//! Coloured Rhombille patches, the patch file format and the matching-rule
//! validator.
//!
//! A patch only records the colour of each rhomb. For a red&black rhomb the
//! file does not say which of its two 60 degree vertices carries the red
//! half; the validator solves for that as a parity constraint problem, so a
//! patch is valid iff *some* choice of red&black halves makes every shared
//! edge join red to black.

use crate::error::{Error, Result};
use crate::lattice::{edge_rhombs, Axis, HexCoord, LatticeEdge, Pt, RhombId, Site};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub const SCHEMA: &str = "aperiodic-patch/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Black,
    #[serde(rename = "redblack")]
    RedBlack,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Black, Color::RedBlack];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Black => "black",
            Color::RedBlack => "redblack",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dual tile: a hexagon of three red&black rhombs plus one red rhomb.
///
/// The hexagon is either an ordinary Rhombille hexagon or one of the
/// hexagons centred on a down site (`down == true`), which is labelled by
/// the hexagon coordinate of `d + e0 + e1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DualTile {
    #[serde(flatten)]
    pub center: HexCoord,
    #[serde(default)]
    pub down: bool,
    pub attach_dir: u8,
    pub flipped: bool,
}

impl DualTile {
    pub fn site(&self) -> Site {
        Site::from_hex(self.center, self.down)
    }

    pub fn hex_cells(&self) -> [RhombId; 3] {
        self.site().faces()
    }

    pub fn red_cell(&self) -> RhombId {
        self.site().across(self.attach_dir as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColoredPatch {
    cells: BTreeMap<RhombId, Color>,
    pub alpha_degrees: f64,
    pub tiles: Option<Vec<DualTile>>,
}

impl Default for ColoredPatch {
    fn default() -> Self {
        ColoredPatch::new(60.0)
    }
}

impl ColoredPatch {
    pub fn new(alpha_degrees: f64) -> Self {
        ColoredPatch { cells: BTreeMap::new(), alpha_degrees, tiles: None }
    }

    pub fn from_cells<I: IntoIterator<Item = (RhombId, Color)>>(cells: I) -> Self {
        let mut p = ColoredPatch::default();
        p.cells.extend(cells);
        p
    }

    /// The patch made of the given dual tiles and nothing else.
    pub fn from_tiles(tiles: &[DualTile]) -> Self {
        let mut p = ColoredPatch::default();
        for t in tiles {
            for c in t.hex_cells() {
                p.cells.insert(c, Color::RedBlack);
            }
            p.cells.insert(t.red_cell(), Color::Red);
        }
        p.tiles = Some(tiles.to_vec());
        p
    }

    pub fn insert(&mut self, id: RhombId, c: Color) -> Option<Color> {
        self.cells.insert(id, c)
    }

    pub fn remove(&mut self, id: &RhombId) -> Option<Color> {
        self.cells.remove(id)
    }

    pub fn get(&self, id: &RhombId) -> Option<Color> {
        self.cells.get(id).copied()
    }

    pub fn contains(&self, id: &RhombId) -> bool {
        self.cells.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in file order: lexicographic by `q`, `r`, `axis`.
    pub fn cells(&self) -> impl Iterator<Item = (RhombId, Color)> + '_ {
        self.cells.iter().map(|(k, v)| (*k, *v))
    }

    pub fn to_json(&self) -> String {
        let file = PatchFile {
            schema: SCHEMA.to_string(),
            alpha_degrees: self.alpha_degrees,
            cells: self
                .cells()
                .map(|(id, color)| CellRecord {
                    q: id.hex.q,
                    r: id.hex.r,
                    axis: id.axis,
                    color,
                })
                .collect(),
            tiles: self.tiles.clone(),
        };
        let mut s = serde_json::to_string(&file).expect("patch serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PatchFile = serde_json::from_str(text)?;
        if file.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", file.schema)));
        }
        if !(file.alpha_degrees > 0.0 && file.alpha_degrees <= 120.0) {
            return Err(Error::Domain(format!(
                "alpha_degrees must lie in (0, 120], got {}",
                file.alpha_degrees
            )));
        }
        let mut p = ColoredPatch::new(file.alpha_degrees);
        for c in file.cells {
            let id = RhombId::new(HexCoord::new(c.q, c.r), c.axis);
            if p.cells.insert(id, c.color).is_some() {
                return Err(Error::Parse(format!("duplicate cell {id}")));
            }
        }
        if let Some(tiles) = &file.tiles {
            if let Some(t) = tiles.iter().find(|t| t.attach_dir > 5) {
                return Err(Error::Parse(format!("attach_dir {} out of range", t.attach_dir)));
            }
        }
        p.tiles = file.tiles;
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PatchFile {
    schema: String,
    alpha_degrees: f64,
    cells: Vec<CellRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tiles: Option<Vec<DualTile>>,
}

#[derive(Serialize, Deserialize)]
struct CellRecord {
    q: i64,
    r: i64,
    axis: Axis,
    color: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Both sides of the edge would carry the same colour.
    Color,
    /// Edge arrows disagree.
    Arrow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edge: LatticeEdge,
    pub a: RhombId,
    pub b: RhombId,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ViolationKind::Color => "colour",
            ViolationKind::Arrow => "arrow",
        };
        write!(
            f,
            "{k} mismatch between {} and {} on edge {:?}-{:?}",
            self.a, self.b, self.edge.node, self.edge.site
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub edges_checked: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The edge index pairs of a rhomb that touch its arrow vertex.
pub const ARROW_EDGES: [u8; 2] = [3, 0];

/// Colour of local edge `edge` of a cell. `red_at_n1` only matters for
/// red&black cells: the red half is the one touching that vertex.
pub fn edge_is_red(color: Color, red_at_n1: bool, edge: u8) -> bool {
    match color {
        Color::Red => true,
        Color::Black => false,
        Color::RedBlack => red_at_n1 == ARROW_EDGES.contains(&edge),
    }
}

// Arrows on the 60 degree lattice point from the 3-valent end of an edge to
// its 60 degree end, so both sides of an edge always agree. Kept explicit so
// the check stays visible if the lattice ever changes.
fn arrow(e: LatticeEdge) -> (Pt, Pt) {
    (e.site, e.node)
}

/// Union-find with parity, used to solve for the red&black halves.
struct ParityDsu {
    parent: Vec<u32>,
    parity: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu { parent: (0..n as u32).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] as usize != cur {
            path.push(cur);
            cur = self.parent[cur] as usize;
        }
        let root = cur;
        // compress, walking from the node nearest the root
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root as u32;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Impose `value(x) ^ value(y) == p`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, p: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == p;
        }
        self.parent[rx] = ry as u32;
        self.parity[rx] = px ^ py ^ p;
        true
    }
}

/// Validator output plus the solved red&black halves.
#[derive(Clone, Debug, Default)]
pub struct Solution {
    pub report: ValidationReport,
    /// For every red&black cell: is the red half at the arrow vertex?
    pub red_at_n1: HashMap<RhombId, bool>,
}

/// Check every shared edge of the patch against the matching rules.
pub fn validate_matching(p: &ColoredPatch) -> ValidationReport {
    solve(p).report
}

/// Validate and solve for the orientation of each red&black cell.
///
/// Cells whose orientation is not forced by a neighbour are resolved so that
/// the smallest cell of each free group turns counterclockwise around its
/// hexagon.
pub fn solve(p: &ColoredPatch) -> Solution {
    let rb: Vec<RhombId> =
        p.cells().filter(|(_, c)| *c == Color::RedBlack).map(|(id, _)| id).collect();
    let index: HashMap<RhombId, usize> = rb.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let konst = rb.len();
    let mut dsu = ParityDsu::new(rb.len() + 1);
    let mut report = ValidationReport::default();

    for (a, ca) in p.cells() {
        for (i, e) in a.edges().into_iter().enumerate() {
            let pair = edge_rhombs(e);
            let b = if pair[0] == a { pair[1] } else { pair[0] };
            if b < a {
                continue;
            }
            let Some(cb) = p.get(&b) else { continue };
            let j = b.edges().iter().position(|x| *x == e).expect("edge shared") as u8;
            let i = i as u8;
            report.edges_checked += 1;
            if arrow(e) != arrow(b.edges()[j as usize]) {
                report.violations.push(Violation { edge: e, a, b, kind: ViolationKind::Arrow });
            }
            // red(x) = v_x ^ s_x where s_x is the colour with v_x = false.
            let sa = edge_is_red(ca, false, i);
            let sb = edge_is_red(cb, false, j);
            let ok = match (ca == Color::RedBlack, cb == Color::RedBlack) {
                (false, false) => sa != sb,
                (true, false) => dsu.union(index[&a], konst, !(sb ^ sa)),
                (false, true) => dsu.union(index[&b], konst, !(sa ^ sb)),
                (true, true) => dsu.union(index[&a], index[&b], !(sa ^ sb)),
            };
            if !ok {
                report.violations.push(Violation { edge: e, a, b, kind: ViolationKind::Color });
            }
        }
    }

    let (kroot, kpar) = dsu.find(konst);
    let mut root_value: HashMap<usize, bool> = HashMap::new();
    root_value.insert(kroot, kpar);
    let mut red_at_n1 = HashMap::with_capacity(rb.len());
    for (i, id) in rb.iter().enumerate() {
        let (root, par) = dsu.find(i);
        let rv = *root_value.entry(root).or_insert_with(|| {
            let site = Site::Up(id.up_site());
            par ^ site.regular_red_at_n1()
        });
        red_at_n1.insert(*id, par ^ rv);
    }
    Solution { report, red_at_n1 }
}
