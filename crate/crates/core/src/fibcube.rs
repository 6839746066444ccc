// SPDX-License-Identifier: MIT OR Apache-2.0

//! The Fibonacci cube: the product `B_n x B_n x B_n` sliced just below its
//! diagonal.
//!
//! Cell `(i, j, k)` of the slice `i + j + k = L - 1` becomes the hexagon
//! `(i, j)`, so the slice covers the same triangle as `T_n`. Rhomb colours
//! come from the prefix parities of the word along each coordinate: a 60
//! degree vertex at cube position `(x, y, z)` (hexagon corner offsets
//! included) gets the phase `F(x) ^ F(y) ^ F(z)`, where `F(m)` is the parity
//! of the number of ones among the first `m` symbols, and a rhomb is
//! red&black when its two 60 degree vertices agree.

use crate::bam::{strip_word, Strip};
use crate::error::{Error, Result};
use crate::lattice::{Axis, HexCoord, Pt, RhombId, E};
use crate::patch::{Color, ColoredPatch};
use crate::word::Word;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellType {
    Even,
    Odd,
    Gap,
}

/// The typed `L x L x L` grid; types are computed from indices on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedCube {
    pub word: Word,
    prefix: Vec<bool>,
}

impl TypedCube {
    pub fn from_word(word: Word) -> Self {
        let mut prefix = Vec::with_capacity(word.len() + 1);
        let mut acc = false;
        prefix.push(acc);
        for b in word.bits() {
            acc ^= *b == 1;
            prefix.push(acc);
        }
        TypedCube { word, prefix }
    }

    pub fn side(&self) -> usize {
        self.word.len()
    }

    pub fn cell_type(&self, i: usize, j: usize, k: usize) -> Result<CellType> {
        let w = self.word.bits();
        let l = w.len();
        if i >= l || j >= l || k >= l {
            return Err(Error::Range(format!("cell ({i}, {j}, {k}) outside a cube of side {l}")));
        }
        Ok(match (w[i], w[j], w[k]) {
            (0, 0, 0) => CellType::Even,
            (1, 1, 1) => CellType::Odd,
            _ => CellType::Gap,
        })
    }

    fn phase(&self, x: Pt) -> bool {
        // coordinates run 0..=L; clamp guards the corners of boundary hexes
        let f = |m: i64| self.prefix[m.clamp(0, self.side() as i64) as usize];
        f(x[0]) ^ f(x[1]) ^ f(x[2])
    }
}

pub fn build_cube(n: u32) -> Result<TypedCube> {
    if n == 0 {
        return Err(Error::Domain("the cube starts at level 1".into()));
    }
    Ok(TypedCube::from_word(strip_word(Strip::B, n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub cube: TypedCube,
    pub cut: usize,
}

impl Slice {
    /// Cells `(i, j, k)` with `i + j + k == cut`, lexicographic.
    pub fn cells(&self) -> Vec<[usize; 3]> {
        let l = self.cube.side();
        let mut out = Vec::new();
        for i in 0..l.min(self.cut + 1) {
            for j in 0..l.min(self.cut - i + 1) {
                let k = self.cut - i - j;
                if k < l {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.cells().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Slice `i + j + k = c`; the default cut is `L - 1`.
pub fn slice(cube: &TypedCube, cut: Option<usize>) -> Result<Slice> {
    let l = cube.side();
    if l == 0 {
        return Err(Error::Range("empty cube".into()));
    }
    let c = cut.unwrap_or(l - 1);
    if c > 3 * (l - 1) {
        return Err(Error::Range(format!("cut {c} outside 0..={}", 3 * (l - 1))));
    }
    Ok(Slice { cube: cube.clone(), cut: c })
}

/// Lower the default-cut slice to a coloured patch: one hexagon per cell.
pub fn slice_to_patch(s: &Slice) -> Result<ColoredPatch> {
    let l = s.cube.side();
    if s.cut + 1 != l {
        return Err(Error::Domain("only the default cut lowers to a patch".into()));
    }
    let mut p = ColoredPatch::default();
    for [i, j, k] in s.cells() {
        let top = [i as i64 + 1, j as i64 + 1, k as i64 + 1];
        for t in Axis::ALL {
            let n1 = sub(top, E[t.succ().index()]);
            let n2 = sub(top, E[t.pred().index()]);
            let (p1, p2) = (s.cube.phase(n1), s.cube.phase(n2));
            let c = match (p1 == p2, p1) {
                (true, _) => Color::RedBlack,
                (false, false) => Color::Red,
                (false, true) => Color::Black,
            };
            p.insert(RhombId::new(HexCoord::new(i as i64, j as i64), t), c);
        }
    }
    Ok(p)
}

fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareCategory {
    FlippedHex,
    RegularHex,
    RedRhomb,
    BlackRhomb,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionImage {
    pub axis: Axis,
    /// Square `(u, v)` indexed by the two surviving cube coordinates.
    pub squares: BTreeMap<(usize, usize), SquareCategory>,
    /// Side of the square grid.
    pub side: usize,
}

/// Tally of a projection image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionCounts {
    /// Hex images on the anti-diagonal `u + v = L - 1`.
    pub diagonal_flipped: usize,
    pub diagonal_regular: usize,
    /// Images strictly below it.
    pub below_flipped: usize,
    pub below_regular: usize,
    pub below_red: usize,
    pub below_black: usize,
}

impl PartitionCounts {
    pub fn below_hex(&self) -> usize {
        self.below_flipped + self.below_regular
    }

    pub fn below_mixed(&self) -> usize {
        self.below_red + self.below_black
    }
}

fn category(a: u8, b: u8) -> SquareCategory {
    match (a, b) {
        (1, 1) => SquareCategory::FlippedHex,
        (0, 0) => SquareCategory::RegularHex,
        (1, 0) => SquareCategory::BlackRhomb,
        _ => SquareCategory::RedRhomb,
    }
}

/// Project the slice along an axis. Each cell keeps the two other
/// coordinates; the symbol pair there picks the category.
pub fn project_slice(s: &Slice, axis: Axis) -> Result<ProjectionImage> {
    let l = s.cube.side();
    if s.cut + 1 != l {
        return Err(Error::Domain("projections are defined for the default cut".into()));
    }
    let w = s.cube.word.bits();
    let (a, b) = (axis.succ().index(), axis.pred().index());
    let mut squares = BTreeMap::new();
    for c in s.cells() {
        let (u, v) = (c[a], c[b]);
        squares.insert((u, v), category(w[u], w[v]));
    }
    Ok(ProjectionImage { axis, squares, side: l })
}

impl ProjectionImage {
    pub fn partition(&self) -> PartitionCounts {
        let mut pc = PartitionCounts::default();
        for (&(u, v), &c) in &self.squares {
            let diag = u + v + 1 == self.side;
            match (diag, c) {
                (true, SquareCategory::FlippedHex) => pc.diagonal_flipped += 1,
                (true, SquareCategory::RegularHex) => pc.diagonal_regular += 1,
                (true, _) => {}
                (false, SquareCategory::FlippedHex) => pc.below_flipped += 1,
                (false, SquareCategory::RegularHex) => pc.below_regular += 1,
                (false, SquareCategory::RedRhomb) => pc.below_red += 1,
                (false, SquareCategory::BlackRhomb) => pc.below_black += 1,
            }
        }
        pc
    }

    /// Category multiset, for comparing images along different axes.
    pub fn histogram(&self) -> BTreeMap<SquareCategory, usize> {
        let mut h = BTreeMap::new();
        for c in self.squares.values() {
            *h.entry(*c).or_insert(0) += 1;
        }
        h
    }

    /// Static SVG of the square grid, one unit per square.
    pub fn to_svg(&self) -> String {
        let n = self.side;
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {n} {n}\">\n"
        );
        for (&(u, v), &c) in &self.squares {
            let fill = match c {
                SquareCategory::FlippedHex => "#2c7fb8",
                SquareCategory::RegularHex => "#fdd49e",
                SquareCategory::RedRhomb => "#d7301f",
                SquareCategory::BlackRhomb => "#252525",
            };
            s.push_str(&format!(
                "<rect x=\"{u}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{fill}\"/>\n",
                n - 1 - v
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}

/// The same tally straight from the cube cells, without building an image.
pub fn tally_cells(s: &Slice, axis: Axis) -> PartitionCounts {
    let w = s.cube.word.bits();
    let l = s.cube.side();
    let mut pc = PartitionCounts::default();
    for c in s.cells() {
        let on_diag = c[axis.index()] == 0;
        let (x, y) = (w[c[axis.succ().index()]], w[c[axis.pred().index()]]);
        match (on_diag, x, y) {
            (true, 1, 1) => pc.diagonal_flipped += 1,
            (true, 0, 0) => pc.diagonal_regular += 1,
            (true, _, _) => {}
            (false, 1, 1) => pc.below_flipped += 1,
            (false, 0, 0) => pc.below_regular += 1,
            (false, 1, 0) => pc.below_black += 1,
            (false, _, _) => pc.below_red += 1,
        }
    }
    debug_assert_eq!(pc.diagonal_flipped + pc.diagonal_regular <= l, true);
    pc
}
