// SPDX-License-Identifier: MIT OR Apache-2.0

//! Statistics, lattice lines and the tiling properties of assembled patches.
//!
//! Every check is restricted to instances whose full support lies inside the
//! patch; instances cut by the boundary are counted, not judged.

use crate::assemble::{assemble_tiles, Assembly};
use crate::error::Result;
use crate::lattice::{shared_edge, Axis, RhombId, Site};
use crate::patch::{Color, ColoredPatch, DualTile};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PatchStats {
    pub n_red: usize,
    pub n_black: usize,
    pub n_redblack: usize,
    pub n_flipped: usize,
    pub n_regular: usize,
    /// Sizes of the edge-connected groups of tile hexagons, ascending.
    pub cluster_sizes: Vec<usize>,
}

/// Tiles of an assembly plus the lookups the checks share.
struct Layout<'a> {
    patch: &'a ColoredPatch,
    tiles: &'a [DualTile],
    sites: Vec<Site>,
    hex_owner: HashMap<RhombId, usize>,
}

impl<'a> Layout<'a> {
    fn new(patch: &'a ColoredPatch, tiles: &'a [DualTile]) -> Self {
        let sites: Vec<Site> = tiles.iter().map(DualTile::site).collect();
        let mut hex_owner = HashMap::new();
        for (i, s) in sites.iter().enumerate() {
            for f in s.faces() {
                hex_owner.insert(f, i);
            }
        }
        Layout { patch, tiles, sites, hex_owner }
    }

    /// All six rhombs around the hexagon are in the patch.
    fn interior(&self, i: usize) -> bool {
        (0..6).all(|d| self.patch.contains(&self.sites[i].across(d)))
    }

    fn hex_neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..6)
            .filter_map(|d| self.hex_owner.get(&self.sites[i].across(d)).copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn clusters(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.tiles.len()];
        let mut out = Vec::new();
        for s in 0..self.tiles.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for j in self.hex_neighbors(comp[k]) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn color_counts(p: &ColoredPatch) -> (usize, usize, usize) {
    let mut n = (0, 0, 0);
    for (_, c) in p.cells() {
        match c {
            Color::Red => n.0 += 1,
            Color::Black => n.1 += 1,
            Color::RedBlack => n.2 += 1,
        }
    }
    n
}

/// Counts for a patch; tile counts are zero if the patch does not assemble.
pub fn stats(p: &ColoredPatch) -> PatchStats {
    let asm = assemble_tiles(p).unwrap_or_default();
    stats_with(p, &asm)
}

pub fn stats_with(p: &ColoredPatch, asm: &Assembly) -> PatchStats {
    let (n_red, n_black, n_redblack) = color_counts(p);
    let layout = Layout::new(p, &asm.tiles);
    let mut cluster_sizes: Vec<usize> = layout.clusters().iter().map(Vec::len).collect();
    cluster_sizes.sort_unstable();
    PatchStats {
        n_red,
        n_black,
        n_redblack,
        n_flipped: asm.n_flipped(),
        n_regular: asm.n_regular(),
        cluster_sizes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    /// Passes only through flipped tiles.
    Gab,
    /// Passes only through regular tiles.
    Complementary,
    /// Passes through both; never happens in a valid tiling.
    Mixed,
    /// Contains no hexagon of an assembled tile.
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GabLine {
    pub direction: Axis,
    /// Line index: the common cube coordinate of its rhombs.
    pub index: i64,
    pub cells: Vec<RhombId>,
    pub kind: LineKind,
}

// Position along a line of the given axis: hexagon by hexagon, and inside a
// hexagon the rhomb of axis `axis + 2` comes first.
fn along(axis: Axis, id: &RhombId) -> (i64, bool) {
    (id.cube()[axis.succ().index()], id.axis == axis.succ())
}

fn lines_of(p: &ColoredPatch) -> Vec<(Axis, i64, Vec<RhombId>)> {
    let mut groups: BTreeMap<(Axis, i64), Vec<RhombId>> = BTreeMap::new();
    for (id, _) in p.cells() {
        for l in id.lines() {
            groups.entry(l).or_default().push(id);
        }
    }
    let mut out = Vec::new();
    for ((axis, index), mut cells) in groups {
        cells.sort_by_key(|c| along(axis, c));
        let mut run: Vec<RhombId> = Vec::new();
        for c in cells {
            if let Some(last) = run.last() {
                if shared_edge(*last, c).is_none() {
                    out.push((axis, index, std::mem::take(&mut run)));
                }
            }
            run.push(c);
        }
        if !run.is_empty() {
            out.push((axis, index, run));
        }
    }
    out
}

fn classify(cells: &[RhombId], layout: &Layout<'_>) -> LineKind {
    let (mut flipped, mut regular) = (false, false);
    for c in cells {
        if let Some(&t) = layout.hex_owner.get(c) {
            if layout.tiles[t].flipped {
                flipped = true;
            } else {
                regular = true;
            }
        }
    }
    match (flipped, regular) {
        (true, false) => LineKind::Gab,
        (false, true) => LineKind::Complementary,
        (true, true) => LineKind::Mixed,
        (false, false) => LineKind::Candidate,
    }
}

/// Maximal lattice lines of the patch, classified by the tiles they pass.
pub fn find_gabs(p: &ColoredPatch) -> Result<Vec<GabLine>> {
    let asm = assemble_tiles(p)?;
    Ok(find_gabs_with(p, &asm))
}

pub fn find_gabs_with(p: &ColoredPatch, asm: &Assembly) -> Vec<GabLine> {
    let layout = Layout::new(p, &asm.tiles);
    lines_of(p)
        .into_iter()
        .map(|(direction, index, cells)| {
            let kind = classify(&cells, &layout);
            GabLine { direction, index, cells, kind }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Interior instances checked.
    pub instances: usize,
    /// Instances skipped because they reach past the patch boundary.
    pub boundary_incomplete: usize,
    /// Offending cells, one list per failed instance.
    pub witnesses: Vec<Vec<RhombId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub results: Vec<PropertyResult>,
    /// Sizes of the clusters whose hexagons are all interior.
    pub interior_cluster_sizes: Vec<usize>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed) && self.cluster_sizes_ok()
    }

    pub fn cluster_sizes_ok(&self) -> bool {
        self.interior_cluster_sizes.iter().all(|s| matches!(s, 1 | 3 | 6))
    }

    pub fn get(&self, property: u8) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.property == property)
    }
}

struct Tally {
    result: PropertyResult,
}

impl Tally {
    fn new(property: u8, name: &'static str) -> Self {
        Tally {
            result: PropertyResult {
                property,
                name,
                passed: true,
                instances: 0,
                boundary_incomplete: 0,
                witnesses: Vec::new(),
            },
        }
    }

    fn skip(&mut self) {
        self.result.boundary_incomplete += 1;
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Vec<RhombId>) {
        self.result.instances += 1;
        if !ok {
            self.result.passed = false;
            if self.result.witnesses.len() < 16 {
                self.result.witnesses.push(witness());
            }
        }
    }
}

pub fn check_properties(p: &ColoredPatch) -> Result<PropertyReport> {
    let asm = assemble_tiles(p)?;
    Ok(check_properties_with(p, &asm))
}

/// Properties 2 to 6 against a given assembly (which may be doctored to
/// exercise the checks).
pub fn check_properties_with(p: &ColoredPatch, asm: &Assembly) -> PropertyReport {
    let layout = Layout::new(p, &asm.tiles);
    let n = asm.tiles.len();

    // 2: every hexagon of the lattice holds a red&black rhomb
    let mut p2 = Tally::new(2, "every hexagon has a red&black rhomb");
    let mut sites = BTreeSet::new();
    for (id, _) in p.cells() {
        sites.insert(Site::Up(id.up_site()));
        sites.insert(Site::Down(id.down_site()));
    }
    for s in &sites {
        let faces = s.faces();
        if faces.iter().all(|f| p.contains(f)) {
            p2.check(faces.iter().any(|f| p.get(f) == Some(Color::RedBlack)), || faces.to_vec());
        } else {
            p2.skip();
        }
    }

    // 3: tiles on a line through a hexagon agree; tiles on the line running
    // alongside a tile (through its red rhomb) disagree with it
    let mut p3 = Tally::new(3, "orientation along bars");
    let lines = lines_of(p);
    let mut line_tiles: HashMap<(Axis, i64), BTreeSet<usize>> = HashMap::new();
    for (axis, index, cells) in &lines {
        let e = line_tiles.entry((*axis, *index)).or_default();
        e.extend(cells.iter().filter_map(|c| layout.hex_owner.get(c)));
    }
    for i in 0..n {
        let site = layout.sites[i];
        let hex_lines = site.lines();
        for l in hex_lines {
            for &j in line_tiles.get(&l).into_iter().flatten() {
                if j > i {
                    p3.check(asm.tiles[i].flipped == asm.tiles[j].flipped, || {
                        vec![layout.sites[i].faces()[0], layout.sites[j].faces()[0]]
                    });
                }
            }
        }
        let red = asm.tiles[i].red_cell();
        for l in red.lines() {
            if hex_lines.contains(&l) {
                continue;
            }
            for &j in line_tiles.get(&l).into_iter().flatten() {
                p3.check(asm.tiles[i].flipped != asm.tiles[j].flipped, || {
                    vec![red, layout.sites[j].faces()[0]]
                });
            }
        }
    }

    // 4: two edge-adjacent hexagons share a third neighbour
    let mut p4 = Tally::new(4, "adjacent hexagons come in triangles");
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| layout.hex_neighbors(i)).collect();
    for i in 0..n {
        for &j in nbrs[i].iter().filter(|&&j| j > i) {
            if !(layout.interior(i) && layout.interior(j)) {
                p4.skip();
                continue;
            }
            let third = nbrs[i].iter().any(|k| nbrs[j].contains(k));
            p4.check(third, || vec![layout.sites[i].faces()[0], layout.sites[j].faces()[0]]);
        }
    }

    // 5: all clustered tiles share one orientation
    let mut p5 = Tally::new(5, "clustered tiles share an orientation");
    let clusters = layout.clusters();
    let mut first: Option<usize> = None;
    let mut interior_cluster_sizes = Vec::new();
    for c in &clusters {
        if c.iter().all(|&i| layout.interior(i)) {
            interior_cluster_sizes.push(c.len());
        }
        if c.len() < 2 {
            continue;
        }
        for &i in c {
            match first {
                None => first = Some(i),
                Some(f) => p5.check(asm.tiles[f].flipped == asm.tiles[i].flipped, || {
                    vec![layout.sites[f].faces()[0], layout.sites[i].faces()[0]]
                }),
            }
        }
    }
    interior_cluster_sizes.sort_unstable();

    // 6: flipped tiles sit on three bars; bars cross at flipped tiles
    let mut p6 = Tally::new(6, "bars cross at flipped tiles");
    let kinds: Vec<((Axis, i64), LineKind)> = lines
        .iter()
        .map(|(a, i, cells)| ((*a, *i), classify(cells, &layout)))
        .collect();
    let mut kind_of: HashMap<(Axis, i64), LineKind> = HashMap::new();
    for (l, k) in &kinds {
        // a line split by the boundary counts as a bar only if every run is
        let e = kind_of.entry(*l).or_insert(*k);
        if *e != *k {
            *e = match (*e, *k) {
                (LineKind::Candidate, x) | (x, LineKind::Candidate) => x,
                _ => LineKind::Mixed,
            };
        }
    }
    for i in 0..n {
        if !asm.tiles[i].flipped {
            continue;
        }
        for l in layout.sites[i].lines() {
            p6.check(kind_of.get(&l) == Some(&LineKind::Gab), || layout.sites[i].faces().to_vec());
        }
    }
    let gabs: Vec<(Axis, i64)> =
        kind_of.iter().filter(|(_, k)| **k == LineKind::Gab).map(|(l, _)| *l).collect();
    let mut by_axis: [Vec<i64>; 3] = Default::default();
    for (a, i) in gabs {
        by_axis[a.index()].push(i);
    }
    for v in by_axis.iter_mut() {
        v.sort_unstable();
    }
    let cube_sum = p.cells().next().map(|(id, _)| id.cube().iter().sum::<i64>());
    if let Some(sum) = cube_sum {
        for (a, b) in [(0usize, 1usize), (1, 2), (2, 0)] {
            let c = 3 - a - b;
            for &ia in &by_axis[a] {
                for &ib in &by_axis[b] {
                    let mut cube = [0i64; 3];
                    cube[a] = ia;
                    cube[b] = ib;
                    cube[c] = sum - ia - ib;
                    let axis = Axis::ALL[c];
                    let cell = RhombId::from_up([cube[0] + 1, cube[1] + 1, cube[2] + 1], axis);
                    if !p.contains(&cell) {
                        continue;
                    }
                    match layout.hex_owner.get(&cell) {
                        Some(&t) => p6.check(asm.tiles[t].flipped, || vec![cell]),
                        None if p.get(&cell) == Some(Color::RedBlack) => p6.skip(),
                        None => p6.check(false, || vec![cell]),
                    }
                }
            }
        }
    }

    PropertyReport {
        results: vec![p2.result, p3.result, p4.result, p5.result, p6.result],
        interior_cluster_sizes,
    }
}
