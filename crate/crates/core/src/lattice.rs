// SPDX-License-Identifier: MIT OR Apache-2.0

//! Integer coordinates for the Rhombille lattice.
//!
//! Every vertex of the lattice is an integer point `[x, y, z]` of the cubic
//! lattice, read on the plane perpendicular to `(1, 1, 1)`:
//!
//! * points with `x + y + z == 2` are hexagon centres ("up" sites),
//! * points with `x + y + z == 1` are the 60 degree vertices ("nodes"),
//! * points with `x + y + z == 0` are the remaining 3-valent vertices
//!   ("down" sites).
//!
//! The hexagon `HexCoord { q, r }` has its centre at the up site
//! `[1 + q, 1 + r, -q - r]`. The planar embedding sends `e_a` to the unit
//! vector at `120 * a` degrees and puts hexagon `(0, 0)` at the origin, so
//! the hexagon centres are `q * v1 + r * v2` with `v1 = (3/2, sqrt(3)/2)`
//! and `v2 = (0, sqrt(3))`.
//!
//! Rhomb `axis` of a hexagon is the rhomb that omits direction `axis`: its
//! two 60 degree vertices are `P - e[axis+1]` and `P - e[axis+2]`. Under the
//! projection that drops coordinate `axis` it is the only one of the three
//! that keeps its area.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of the cubic lattice; see the module docs for how it sits in the plane.
pub type Pt = [i64; 3];

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

pub(crate) const E: [Pt; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

#[inline]
pub(crate) fn add(a: Pt, b: Pt) -> Pt {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub(crate) fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Axial hexagon coordinate over the basis `v1`, `v2`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct HexCoord {
    pub q: i64,
    pub r: i64,
}

impl HexCoord {
    pub const fn new(q: i64, r: i64) -> Self {
        HexCoord { q, r }
    }

    /// The up site (hexagon centre) in cubic coordinates.
    pub fn center_pt(self) -> Pt {
        [1 + self.q, 1 + self.r, -self.q - self.r]
    }

    /// Inverse of [`HexCoord::center_pt`]; `p` must have coordinate sum 2.
    pub fn from_center_pt(p: Pt) -> Self {
        debug_assert_eq!(p[0] + p[1] + p[2], 2);
        HexCoord::new(p[0] - 1, p[1] - 1)
    }

    pub fn center(self) -> PlanarPoint {
        to_plane(self.center_pt())
    }
}

impl std::ops::Add for HexCoord {
    type Output = HexCoord;
    fn add(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q + o.q, self.r + o.r)
    }
}

impl std::ops::Sub for HexCoord {
    type Output = HexCoord;
    fn sub(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q - o.q, self.r - o.r)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.r)
    }
}

/// One of the three rhomb orientations, also naming the projections X, Y, Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        match i {
            0 => Some(Axis::X),
            1 => Some(Axis::Y),
            2 => Some(Axis::Z),
            _ => None,
        }
    }

    /// Cyclic successor.
    pub fn succ(self) -> Axis {
        Axis::ALL[(self.index() + 1) % 3]
    }

    pub fn pred(self) -> Axis {
        Axis::ALL[(self.index() + 2) % 3]
    }

    pub fn letter(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

impl From<Axis> for u8 {
    fn from(a: Axis) -> u8 {
        a as u8
    }
}

impl TryFrom<u8> for Axis {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Axis::from_index(v as usize).ok_or_else(|| format!("axis must be 0, 1 or 2, got {v}"))
    }
}

/// A rhombus of the Rhombille tiling: hexagon plus orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RhombId {
    pub hex: HexCoord,
    pub axis: Axis,
}

/// An edge of the Rhombille tiling. Every edge joins a node to a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeEdge {
    pub node: Pt,
    pub site: Pt,
}

impl RhombId {
    pub const fn new(hex: HexCoord, axis: Axis) -> Self {
        RhombId { hex, axis }
    }

    /// The rhomb of the hexagon centred at up site `p` with the given axis.
    pub fn from_up(p: Pt, axis: Axis) -> Self {
        RhombId::new(HexCoord::from_center_pt(p), axis)
    }

    /// The rhomb whose down site is `d` and whose axis is `axis`.
    pub fn from_down(d: Pt, axis: Axis) -> Self {
        let (a, b) = (axis.succ().index(), axis.pred().index());
        RhombId::from_up(add(add(d, E[a]), E[b]), axis)
    }

    pub fn up_site(self) -> Pt {
        self.hex.center_pt()
    }

    pub fn down_site(self) -> Pt {
        let p = self.up_site();
        sub(sub(p, E[self.axis.succ().index()]), E[self.axis.pred().index()])
    }

    /// The two 60 degree vertices; the first one is the arrow vertex.
    pub fn nodes(self) -> (Pt, Pt) {
        let p = self.up_site();
        (sub(p, E[self.axis.succ().index()]), sub(p, E[self.axis.pred().index()]))
    }

    /// Lattice vertices counterclockwise from the arrow vertex: node, down site, node, up site.
    pub fn lattice_vertices(self) -> [Pt; 4] {
        let (n1, n2) = self.nodes();
        [n1, self.down_site(), n2, self.up_site()]
    }

    /// Edge `i` joins vertex `i` to vertex `i + 1`.
    pub fn edges(self) -> [LatticeEdge; 4] {
        let [n1, d, n2, u] = self.lattice_vertices();
        [
            LatticeEdge { node: n1, site: d },
            LatticeEdge { node: n2, site: d },
            LatticeEdge { node: n2, site: u },
            LatticeEdge { node: n1, site: u },
        ]
    }

    /// The unit cube whose visible face this rhomb is.
    pub fn cube(self) -> Pt {
        sub(self.up_site(), [1, 1, 1])
    }

    /// The two lattice lines (de Bruijn ribbons) crossing this rhomb, as
    /// `(axis of the line, index)`. A line of axis `a` collects the rhombs of
    /// cubes whose `a` coordinate equals the index, except axis-`a` rhombs.
    pub fn lines(self) -> [(Axis, i64); 2] {
        let c = self.cube();
        let (a, b) = (self.axis.succ(), self.axis.pred());
        [(a, c[a.index()]), (b, c[b.index()])]
    }
}

impl fmt::Display for RhombId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.hex, self.axis.index())
    }
}

/// The two rhombs that contain a lattice edge.
pub fn edge_rhombs(e: LatticeEdge) -> [RhombId; 2] {
    let d = sub(e.node, e.site);
    let s = e.site[0] + e.site[1] + e.site[2];
    // node = site - e_a (up site) or site + e_a (down site)
    let a = d.iter().position(|&x| x != 0).expect("edge endpoints coincide");
    let mut out = [RhombId::new(HexCoord::default(), Axis::X); 2];
    let mut k = 0;
    for t in Axis::ALL {
        if t.index() == a {
            continue;
        }
        out[k] = if s == 2 {
            RhombId::from_up(e.site, t)
        } else {
            RhombId::from_down(e.site, t)
        };
        k += 1;
    }
    out
}

/// A 3-valent vertex of the Rhombille tiling: the centre of a hexagon made
/// of three rhombs. Up sites are the centres of [`HexCoord`] hexagons; down
/// sites are the centres of the hexagons of the complementary (shifted) hex
/// grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Up(Pt),
    Down(Pt),
}

impl Site {
    pub fn pt(self) -> Pt {
        match self {
            Site::Up(p) | Site::Down(p) => p,
        }
    }

    pub fn is_down(self) -> bool {
        matches!(self, Site::Down(_))
    }

    /// The hexagon label used in patch files: up sites use their own
    /// coordinate, a down site `d` uses the up site `d + e0 + e1`.
    pub fn hex_coord(self) -> HexCoord {
        match self {
            Site::Up(p) => HexCoord::from_center_pt(p),
            Site::Down(d) => HexCoord::from_center_pt(add(add(d, E[0]), E[1])),
        }
    }

    pub fn from_hex(h: HexCoord, down: bool) -> Site {
        let p = h.center_pt();
        if down {
            Site::Down(sub(sub(p, E[0]), E[1]))
        } else {
            Site::Up(p)
        }
    }

    /// The three rhombs meeting at this site, indexed by axis.
    pub fn faces(self) -> [RhombId; 3] {
        match self {
            Site::Up(p) => Axis::ALL.map(|t| RhombId::from_up(p, t)),
            Site::Down(d) => Axis::ALL.map(|t| RhombId::from_down(d, t)),
        }
    }

    /// Whether a rhomb of this site with its red vertex at `n1` turns
    /// counterclockwise around the site (the regular orientation).
    pub(crate) fn regular_red_at_n1(self) -> bool {
        self.is_down()
    }

    /// The outer boundary, counterclockwise from the vertex at 0 degrees.
    /// Edge `d` runs from vertex `d` to vertex `d + 1`; its midpoint sits at
    /// `30 + 60 d` degrees from the centre.
    pub fn boundary(self) -> [Pt; 6] {
        match self {
            Site::Up(p) => [
                sub(sub(p, E[1]), E[2]),
                sub(p, E[2]),
                sub(sub(p, E[0]), E[2]),
                sub(p, E[0]),
                sub(sub(p, E[0]), E[1]),
                sub(p, E[1]),
            ],
            Site::Down(d) => [
                add(d, E[0]),
                add(add(d, E[0]), E[1]),
                add(d, E[1]),
                add(add(d, E[1]), E[2]),
                add(d, E[2]),
                add(add(d, E[0]), E[2]),
            ],
        }
    }

    /// Outer edge `dir` as a lattice edge.
    pub fn outer_edge(self, dir: usize) -> LatticeEdge {
        let b = self.boundary();
        let (x, y) = (b[dir % 6], b[(dir + 1) % 6]);
        if (x[0] + x[1] + x[2]) == 1 {
            LatticeEdge { node: x, site: y }
        } else {
            LatticeEdge { node: y, site: x }
        }
    }

    /// The rhomb outside this hexagon across outer edge `dir`.
    pub fn across(self, dir: usize) -> RhombId {
        let faces = self.faces();
        let rs = edge_rhombs(self.outer_edge(dir));
        if faces.contains(&rs[0]) {
            rs[1]
        } else {
            rs[0]
        }
    }

    /// The three lattice lines through this hexagon, one per axis.
    pub fn lines(self) -> [(Axis, i64); 3] {
        match self {
            Site::Up(p) => Axis::ALL.map(|a| (a, p[a.index()] - 1)),
            Site::Down(d) => Axis::ALL.map(|a| (a, d[a.index()])),
        }
    }

    pub fn center(self) -> PlanarPoint {
        to_plane(self.pt())
    }
}

/// A point of the Euclidean plane, unit rhomb edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    pub fn dist(self, o: PlanarPoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

/// Planar position of a cubic lattice point.
pub fn to_plane(p: Pt) -> PlanarPoint {
    // u0 = (1, 0), u1 = (-1/2, sqrt3/2), u2 = (-1/2, -sqrt3/2); shift so that
    // hexagon (0, 0) sits at the origin.
    let (x, y, z) = (p[0] as f64, p[1] as f64, p[2] as f64);
    PlanarPoint::new(x - 0.5 * y - 0.5 * z - 0.5, SQRT3_2 * (y - z) - SQRT3_2)
}

const NEIGHBOR_DIRS: [HexCoord; 6] = [
    HexCoord::new(1, 0),
    HexCoord::new(0, 1),
    HexCoord::new(-1, 1),
    HexCoord::new(-1, 0),
    HexCoord::new(0, -1),
    HexCoord::new(1, -1),
];

/// The six edge-adjacent hexagons, counterclockwise starting from `v1`.
pub fn hex_neighbors(h: HexCoord) -> [HexCoord; 6] {
    NEIGHBOR_DIRS.map(|d| h + d)
}

/// The four vertices of a rhomb, counterclockwise from its arrow vertex.
pub fn rhomb_vertices(id: RhombId) -> [PlanarPoint; 4] {
    id.lattice_vertices().map(to_plane)
}

/// Which local edge of each rhomb carries a shared edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeDescriptor {
    pub a_edge: u8,
    pub b_edge: u8,
    pub edge: LatticeEdge,
}

pub fn shared_edge(a: RhombId, b: RhombId) -> Option<EdgeDescriptor> {
    if a == b {
        return None;
    }
    let ea = a.edges();
    let eb = b.edges();
    for (i, x) in ea.iter().enumerate() {
        if let Some(j) = eb.iter().position(|y| y == x) {
            return Some(EdgeDescriptor { a_edge: i as u8, b_edge: j as u8, edge: *x });
        }
    }
    None
}

/// Image of a rhomb under one of the three axis projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Projection {
    /// Unit square with lower corner `(u, v)`.
    Square { u: i64, v: i64 },
    /// Degenerate image with integer endpoints.
    Segment { from: [i64; 2], to: [i64; 2] },
}

/// Projection along `axis`: drop that cubic coordinate of every vertex.
pub fn project(axis: Axis, id: RhombId) -> Projection {
    let (a, b) = (axis.succ().index(), axis.pred().index());
    let vs = id.lattice_vertices().map(|p| [p[a], p[b]]);
    if id.axis == axis {
        let u = vs.iter().map(|v| v[0]).min().unwrap_or(0);
        let v = vs.iter().map(|v| v[1]).min().unwrap_or(0);
        Projection::Square { u, v }
    } else {
        let mut pts = vs.to_vec();
        pts.sort();
        pts.dedup();
        Projection::Segment { from: pts[0], to: pts[pts.len() - 1] }
    }
}

/// True iff `n = x^2 + xy + y^2` for some nonnegative integers.
pub fn is_loschian(n: u64) -> bool {
    let mut x: u64 = 0;
    while x * x <= n {
        // y^2 + x y + (x^2 - n) = 0  =>  y = (-x + sqrt(4n - 3x^2)) / 2
        let disc = 4 * n - 3 * x * x;
        let s = isqrt(disc);
        if s * s == disc && s >= x && (s - x) % 2 == 0 {
            return true;
        }
        x += 1;
    }
    false
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
