// SPDX-License-Identifier: MIT OR Apache-2.0

//! Monotile geometry: from a dual tile to a polygon of the family.
//!
//! A dual tile has eight unit edges: five left on the hexagon and three on
//! the red rhomb. Each edge runs from a node to a site and is replaced by
//! two half-diagonals of the black rhomb `R_alpha` standing on it: length
//! `cos(alpha/2)` from the node, `sin(alpha/2)` from the site, meeting at a
//! right angle. The pair bulges out of the tile on red edges and into it on
//! black ones, so the black hole rhomb collapses to a cross.
//!
//! Of the sixteen segments two fold back onto each other into the centre
//! of a hole, leaving a simple 14-gon with one straight angle: a 13-sided
//! shape that can also be read as having 14 sides.
//!
//! The hexagon keeps its shape for every angle. The red rhomb keeps the
//! edge it shares with the hexagon and opens to `120 - alpha` at its nodes.
//! Tiles are placed in the frame of the rhomb lattice, which is exact at
//! `alpha = 60`; other angles give each tile the right shape and area but
//! the neighbours no longer meet edge to edge.

use crate::assemble::assemble_tiles;
use crate::error::{Error, Result};
use crate::lattice::{to_plane, LatticeEdge, PlanarPoint, Pt, Site};
use crate::patch::{edge_is_red, validate_matching, Color, ColoredPatch, DualTile};
use serde::Serialize;
use std::fmt::Write as _;

/// A member of the family, in degrees.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct FamilyAngle(f64);

impl FamilyAngle {
    pub fn new(alpha_degrees: f64) -> Result<Self> {
        if !(alpha_degrees > 0.0 && alpha_degrees <= 120.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 120], got {alpha_degrees}")));
        }
        Ok(FamilyAngle(alpha_degrees))
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    fn half(self) -> f64 {
        (self.0 / 2.0).to_radians()
    }
}

/// One unit edge of a dual tile before substitution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualEdge {
    pub from: PlanarPoint,
    pub to: PlanarPoint,
    /// `from` is the node end.
    pub from_is_node: bool,
    pub red: bool,
}

/// A tile of the family.
///
/// `boundary` is the substituted outline, two segments per dual edge. At the
/// joint where the red rhomb meets the hexagon in a site, both neighbouring
/// segments run to the centre of the same collapsed hole, so the outline
/// doubles back on itself there. `vertices` drops that spike and is the
/// simple polygon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotilePolygon {
    #[serde(skip)]
    pub boundary: Vec<PlanarPoint>,
    pub vertices: Vec<PlanarPoint>,
    pub flipped: bool,
    /// Indices into `vertices` where the boundary runs straight on.
    #[serde(skip)]
    pub collinear: Vec<usize>,
}

impl MonotilePolygon {
    fn new(boundary: Vec<PlanarPoint>, flipped: bool) -> Self {
        let vertices = remove_spikes(&boundary, 1e-9);
        let collinear = straight_vertices(&vertices, 1e-9);
        MonotilePolygon { boundary, vertices, flipped, collinear }
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Lengths of the substituted segments, spike included.
    pub fn segment_lengths(&self) -> Vec<f64> {
        let n = self.boundary.len();
        (0..n).map(|i| self.boundary[i].dist(self.boundary[(i + 1) % n])).collect()
    }

    /// Sides of the simple polygon, before merging straight runs.
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// Sides left after merging runs of collinear segments.
    pub fn side_count(&self) -> usize {
        self.vertices.len() - self.collinear.len()
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.vertices)
    }
}

fn pt_sub(a: PlanarPoint, b: PlanarPoint) -> (f64, f64) {
    (a.x - b.x, a.y - b.y)
}

fn rotate(v: (f64, f64), theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (c * v.0 - s * v.1, s * v.0 + c * v.1)
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Shoelace area, positive for counterclockwise order.
pub fn signed_area(v: &[PlanarPoint]) -> f64 {
    let n = v.len();
    (0..n).map(|i| cross((v[i].x, v[i].y), (v[(i + 1) % n].x, v[(i + 1) % n].y))).sum::<f64>() / 2.0
}

/// Drop vertices whose two neighbours coincide, together with one of them.
fn remove_spikes(v: &[PlanarPoint], tol: f64) -> Vec<PlanarPoint> {
    let mut v = v.to_vec();
    loop {
        let n = v.len();
        if n < 4 {
            return v;
        }
        let Some(i) = (0..n).find(|&i| v[(i + n - 1) % n].dist(v[(i + 1) % n]) < tol) else {
            return v;
        };
        let j = (i + 1) % n;
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        v.remove(hi);
        v.remove(lo);
    }
}

fn straight_vertices(v: &[PlanarPoint], tol: f64) -> Vec<usize> {
    let n = v.len();
    (0..n)
        .filter(|&i| {
            let a = pt_sub(v[i], v[(i + n - 1) % n]);
            let b = pt_sub(v[(i + 1) % n], v[i]);
            cross(a, b).abs() < tol && a.0 * b.0 + a.1 * b.1 > 0.0
        })
        .collect()
}

fn is_site(p: Pt) -> bool {
    (p[0] + p[1] + p[2]) != 1
}

/// The eight unit edges of a dual tile, counterclockwise, in the lattice
/// frame. The red rhomb opens to `120 - alpha` at its nodes.
pub fn dual_outline(tile: &DualTile, alpha: FamilyAngle) -> Vec<DualEdge> {
    let site = tile.site();
    let dir = tile.attach_dir as usize % 6;
    let b = site.boundary();
    let red_at_n1 = site_red_at_n1(site, tile.flipped);
    let mut out = Vec::with_capacity(8);
    for k in 0..6 {
        let d = (dir + 1 + k) % 6;
        let (p, q) = (b[d], b[(d + 1) % 6]);
        let (from, to) = (to_plane(p), to_plane(q));
        if d != dir {
            let red = hex_edge_red(site, d, red_at_n1);
            out.push(DualEdge { from, to, from_is_node: !is_site(p), red });
            continue;
        }
        // replace the attach edge by the three outer edges of the red rhomb
        let (node, site_end) = if is_site(p) { (to, from) } else { (from, to) };
        let u = pt_sub(site_end, node);
        // away from the hexagon: the hexagon lies left of p -> q
        let sense = if is_site(p) { 1.0 } else { -1.0 };
        let w = rotate(u, sense * (120.0 - alpha.degrees()).to_radians());
        let far_site = PlanarPoint::new(node.x + w.0, node.y + w.1);
        let far_node = PlanarPoint::new(site_end.x + w.0, site_end.y + w.1);
        let path = if is_site(p) {
            // site_end -> far_node -> far_site -> node
            [(from, far_node, false), (far_node, far_site, true), (far_site, to, false)]
        } else {
            // node -> far_site -> far_node -> site_end
            [(from, far_site, true), (far_site, far_node, false), (far_node, to, true)]
        };
        for (a, c, a_node) in path {
            out.push(DualEdge { from: a, to: c, from_is_node: a_node, red: true });
        }
    }
    out
}

fn site_red_at_n1(site: Site, flipped: bool) -> bool {
    // regular hexagons have their red vertex at the counterclockwise end
    let reg = site.is_down();
    reg ^ flipped
}

fn hex_edge_red(site: Site, dir: usize, red_at_n1: bool) -> bool {
    let e: LatticeEdge = site.outer_edge(dir);
    for f in site.faces() {
        if let Some(i) = f.edges().iter().position(|x| *x == e) {
            return edge_is_red(Color::RedBlack, red_at_n1, i as u8);
        }
    }
    unreachable!("outer edge belongs to the hexagon")
}

/// Apply the edge substitution to a counterclockwise dual outline.
pub fn substitute(edges: &[DualEdge], alpha: FamilyAngle) -> Vec<PlanarPoint> {
    let h = alpha.half();
    let mut out = Vec::with_capacity(2 * edges.len());
    for e in edges {
        let (node, site) = if e.from_is_node { (e.from, e.to) } else { (e.to, e.from) };
        let u = pt_sub(site, node);
        // interior lies left of from -> to
        let left = if e.from_is_node { 1.0 } else { -1.0 };
        let outward = if e.red { -left } else { left };
        let m = rotate(u, outward * h);
        let c = h.cos();
        out.push(e.from);
        out.push(PlanarPoint::new(node.x + c * m.0, node.y + c * m.1));
    }
    out
}

/// Polygon of one dual tile; flipped tiles come out clockwise.
pub fn tile_polygon(tile: &DualTile, alpha: FamilyAngle) -> MonotilePolygon {
    let mut v = substitute(&dual_outline(tile, alpha), alpha);
    if tile.flipped {
        v.reverse();
    }
    MonotilePolygon::new(v, tile.flipped)
}

/// The reference tile: a regular dual tile on the hexagon at the origin.
pub fn reference_tile() -> DualTile {
    let site = Site::from_hex(Default::default(), false);
    (0..6u8).map(|d| DualTile::at(site, d)).find(|t| !t.flipped).expect("some side takes a regular tile")
}

/// The 16-segment monotile outline for `alpha`.
pub fn monotile_outline(alpha: f64) -> Result<MonotilePolygon> {
    Ok(tile_polygon(&reference_tile(), FamilyAngle::new(alpha)?))
}

/// Area of one tile plus its share of holes: `3 sin 60 + sin a + sin(120 - a)`.
pub fn tile_area(alpha: f64) -> Result<f64> {
    let a = FamilyAngle::new(alpha)?.degrees();
    Ok(3.0 * 60f64.to_radians().sin() + a.to_radians().sin() + (120.0 - a).to_radians().sin())
}

fn orient(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> f64 {
    cross(pt_sub(b, a), pt_sub(c, a))
}

fn on_segment(a: PlanarPoint, b: PlanarPoint, p: PlanarPoint, eps: f64) -> bool {
    orient(a, b, p).abs() <= eps
        && p.x >= a.x.min(b.x) - eps
        && p.x <= a.x.max(b.x) + eps
        && p.y >= a.y.min(b.y) - eps
        && p.y <= a.y.max(b.y) + eps
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_touch(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint, d: PlanarPoint, eps: f64) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)) {
        return true;
    }
    on_segment(c, d, a, eps) || on_segment(c, d, b, eps) || on_segment(a, b, c, eps) || on_segment(a, b, d, eps)
}

/// Segments cross at a single point interior to both.
pub fn segments_cross(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint, d: PlanarPoint, eps: f64) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

/// No two non-adjacent edges touch, and adjacent ones meet only at their
/// shared vertex.
pub fn is_simple(v: &[PlanarPoint]) -> bool {
    let n = v.len();
    let eps = 1e-12;
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b, c, d) = (v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
            if adjacent {
                // folding back onto the previous edge
                let (p, q, r) = if j == i + 1 { (a, b, d) } else { (c, a, b) };
                let (u, w) = (pt_sub(q, p), pt_sub(r, q));
                if cross(u, w).abs() <= eps && u.0 * w.0 + u.1 * w.1 < 0.0 {
                    return false;
                }
            } else if segments_touch(a, b, c, d, eps) {
                return false;
            }
        }
    }
    true
}

/// Even-odd test; points on the boundary count as outside.
pub fn strictly_inside(v: &[PlanarPoint], p: PlanarPoint, eps: f64) -> bool {
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        if on_segment(a, b, p, eps) {
            return false;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Interiors of two simple polygons are disjoint: no proper edge crossing,
/// and no point just inside an edge of one lies strictly inside the other.
pub fn interiors_disjoint(a: &[PlanarPoint], b: &[PlanarPoint]) -> bool {
    let eps = 1e-9;
    for i in 0..a.len() {
        for j in 0..b.len() {
            if segments_cross(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()], eps) {
                return false;
            }
        }
    }
    let probes = |v: &[PlanarPoint]| -> Vec<PlanarPoint> {
        let ccw = signed_area(v) > 0.0;
        let n = v.len();
        (0..n)
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % n]);
                let d = pt_sub(q, p);
                let len = d.0.hypot(d.1);
                let s = if ccw { 1.0 } else { -1.0 };
                let off = 1e-6 / len;
                PlanarPoint::new((p.x + q.x) / 2.0 - s * d.1 * off, (p.y + q.y) / 2.0 + s * d.0 * off)
            })
            .collect()
    };
    !probes(a).into_iter().any(|p| strictly_inside(b, p, eps))
        && !probes(b).into_iter().any(|p| strictly_inside(a, p, eps))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Json,
}

/// Rendered tiles plus the collapsed holes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rendering {
    pub alpha: f64,
    pub tiles: Vec<MonotilePolygon>,
    /// Centres of the black rhombs, which collapse to zero-area crosses.
    pub holes: Vec<PlanarPoint>,
}

impl Rendering {
    pub fn total_area(&self) -> f64 {
        self.tiles.iter().map(|t| t.signed_area().abs()).sum()
    }
}

/// Polygons for every dual tile of a valid patch, in assembly order.
pub fn render_tiles(p: &ColoredPatch, alpha: f64) -> Result<Rendering> {
    let a = FamilyAngle::new(alpha)?;
    let report = validate_matching(p);
    if !report.is_valid() {
        return Err(Error::InvalidPatch(report.violations.len()));
    }
    let tiles = match &p.tiles {
        Some(t) => t.clone(),
        None => assemble_tiles(p)?.tiles,
    };
    let holes = p
        .cells()
        .filter(|(_, c)| *c == Color::Black)
        .map(|(id, _)| {
            let [a, _, c, _] = crate::lattice::rhomb_vertices(id);
            PlanarPoint::new((a.x + c.x) / 2.0, (a.y + c.y) / 2.0)
        })
        .collect();
    Ok(Rendering { alpha, tiles: tiles.iter().map(|t| tile_polygon(t, a)).collect(), holes })
}

/// Fixed-precision coordinate text; `-0` prints as `0`.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

pub fn render_patch(p: &ColoredPatch, alpha: f64, format: Format) -> Result<String> {
    let r = render_tiles(p, alpha)?;
    Ok(match format {
        Format::Json => to_json(&r),
        Format::Svg => to_svg(&r),
    })
}

pub fn to_json(r: &Rendering) -> String {
    let mut s = String::new();
    let _ = write!(s, "{{\"alpha\":{},\"tiles\":[", num(r.alpha));
    for (i, t) in r.tiles.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{{\"flipped\":{},\"vertices\":[", t.flipped);
        let pts: Vec<String> = t.vertices.iter().map(|v| format!("[{},{}]", num(v.x), num(v.y))).collect();
        s.push_str(&pts.join(","));
        s.push_str("]}");
    }
    s.push_str("],\"holes\":[");
    let holes: Vec<String> = r.holes.iter().map(|v| format!("[{},{}]", num(v.x), num(v.y))).collect();
    s.push_str(&holes.join(","));
    s.push_str("]}\n");
    s
}

pub fn to_svg(r: &Rendering) -> String {
    let pts = r.tiles.iter().flat_map(|t| t.vertices.iter());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(-p.y);
        y1 = y1.max(-p.y);
    }
    if r.tiles.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let pad = 0.5;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(x0 - pad),
        num(y0 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad)
    );
    for t in &r.tiles {
        let fill = if t.flipped { "#3b6fb6" } else { "#f2c14e" };
        let mut d = String::new();
        for (i, v) in t.vertices.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(v.x), num(-v.y));
        }
        d.push('Z');
        let _ = writeln!(s, "<path d=\"{d}\" fill=\"{fill}\" stroke=\"#000\" stroke-width=\"0.02\"/>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_domain() {
        assert!(FamilyAngle::new(0.0).is_err());
        assert!(FamilyAngle::new(120.5).is_err());
        assert!(FamilyAngle::new(f64::NAN).is_err());
        assert!(FamilyAngle::new(120.0).is_ok());
    }

    #[test]
    fn reference_outline_has_six_red_edges() {
        let e = dual_outline(&reference_tile(), FamilyAngle::new(60.0).unwrap());
        assert_eq!(e.len(), 8);
        assert_eq!(e.iter().filter(|e| e.red).count(), 6);
    }
}
