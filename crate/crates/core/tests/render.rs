// SPDX-License-Identifier: MIT OR Apache-2.0

use monotile::bam::{build_metatile, MetatileKind};
use monotile::lattice::PlanarPoint;
use monotile::patch::{Color, ColoredPatch};
use monotile::render::*;
use monotile::Error;
use proptest::prelude::*;
use std::sync::OnceLock;

const OUTLINE_60: &str = include_str!("fixtures/outline60.json");

fn t2() -> &'static ColoredPatch {
    static T2: OnceLock<ColoredPatch> = OnceLock::new();
    T2.get_or_init(|| build_metatile(MetatileKind::T, 2).unwrap())
}

fn grid() -> impl Iterator<Item = f64> {
    (1..=120).map(f64::from)
}

#[test]
fn angle_domain() {
    for bad in [0.0, -5.0, 120.000_1, f64::NAN, f64::INFINITY] {
        assert!(matches!(FamilyAngle::new(bad), Err(Error::Domain(_))), "{bad}");
        assert!(monotile_outline(bad).is_err());
        assert!(tile_area(bad).is_err());
    }
    assert_eq!(FamilyAngle::new(120.0).unwrap().degrees(), 120.0);
}

#[test]
fn dual_outline_has_six_red_and_two_black_edges() {
    for a in grid() {
        let edges = dual_outline(&reference_tile(), FamilyAngle::new(a).unwrap());
        assert_eq!(edges.len(), 8);
        assert_eq!(edges.iter().filter(|e| e.red).count(), 6);
        for e in &edges {
            assert!((e.from.dist(e.to) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn outlines_close() {
    for a in grid() {
        let edges = dual_outline(&reference_tile(), FamilyAngle::new(a).unwrap());
        for i in 0..edges.len() {
            let next = edges[(i + 1) % edges.len()];
            assert!(edges[i].to.dist(next.from) < 1e-12, "alpha {a}");
        }
        let p = monotile_outline(a).unwrap();
        assert_eq!(p.boundary.len(), 16);
        let n = p.boundary.len();
        let (dx, dy) = (0..n).fold((0.0, 0.0), |(x, y), i| {
            let (u, v) = (p.boundary[i], p.boundary[(i + 1) % n]);
            (x + v.x - u.x, y + v.y - u.y)
        });
        assert!(dx.abs() < 1e-12 && dy.abs() < 1e-12);
    }
}

#[test]
fn substituted_segments_are_half_diagonals() {
    for a in grid() {
        let h = (a / 2.0).to_radians();
        for l in monotile_outline(a).unwrap().segment_lengths() {
            assert!((l - h.cos()).abs() < 1e-12 || (l - h.sin()).abs() < 1e-12, "alpha {a}: {l}");
        }
    }
}

#[test]
fn outlines_are_simple_on_a_one_degree_grid() {
    for a in grid() {
        let p = monotile_outline(a).unwrap();
        assert!(p.is_simple(), "alpha {a}");
        assert_eq!(p.edge_count(), 14, "alpha {a}");
        assert_eq!(p.side_count(), 13, "alpha {a}");
        assert!(p.signed_area() > 0.0);
    }
}

#[test]
fn ninety_degrees_gives_equal_segments() {
    let p = monotile_outline(90.0).unwrap();
    let l = p.segment_lengths();
    assert_eq!(l.len(), 16);
    let r = 0.5f64.sqrt();
    assert_eq!(l.iter().filter(|x| (*x - r).abs() < 1e-12).count(), 16);
}

#[test]
fn hundred_twenty_degrees_has_the_root_three_ratio() {
    let l = monotile_outline(120.0).unwrap().segment_lengths();
    let (short, long): (Vec<f64>, Vec<f64>) = l.iter().partition(|x| (*x - 0.5).abs() < 1e-12);
    assert!(!short.is_empty() && !long.is_empty());
    assert!(long.iter().all(|x| (x - 3f64.sqrt() / 2.0).abs() < 1e-12));
    assert!((long[0] / short[0] - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn sixty_degrees_matches_the_fixture() {
    let want: Vec<[f64; 2]> = serde_json::from_str(OUTLINE_60).unwrap();
    let got = monotile_outline(60.0).unwrap().vertices;
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(&want) {
        assert!(g.dist(PlanarPoint::new(w[0], w[1])) < 1e-12);
    }
}

#[test]
fn area_law() {
    let s60 = 60f64.to_radians().sin();
    assert!((tile_area(60.0).unwrap() - 5.0 * s60).abs() < 1e-12);
    assert!((tile_area(120.0).unwrap() - 4.0 * s60).abs() < 1e-12);
    assert!((tile_area(120.0).unwrap() / tile_area(60.0).unwrap() - 0.8).abs() < 1e-12);
    for a in grid() {
        let p = monotile_outline(a).unwrap();
        assert!((p.signed_area() - tile_area(a).unwrap()).abs() < 1e-9, "alpha {a}");
    }
}

#[test]
fn rendered_tiles_follow_the_area_law() {
    for a in [15.0, 60.0, 90.0, 120.0] {
        let r = render_tiles(t2(), a).unwrap();
        let want = tile_area(a).unwrap();
        for t in &r.tiles {
            assert!((t.signed_area().abs() - want).abs() < 1e-9);
            // flipped tiles are mirror images, wound the other way
            assert_eq!(t.signed_area() < 0.0, t.flipped);
        }
    }
    let (r60, r120) = (render_tiles(t2(), 60.0).unwrap(), render_tiles(t2(), 120.0).unwrap());
    assert!((r120.total_area() / r60.total_area() - 0.8).abs() < 1e-9);
}

#[test]
fn single_tile_area() {
    let p = ColoredPatch::from_tiles(&[reference_tile()]);
    let r = render_tiles(&p, 60.0).unwrap();
    assert_eq!(r.tiles.len(), 1);
    assert!((r.total_area() - 2.5 * 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn t2_tiles_are_interior_disjoint() {
    let r = render_tiles(t2(), 60.0).unwrap();
    assert_eq!(r.tiles.len(), 73);
    assert_eq!(r.holes.len(), t2().cells().filter(|(_, c)| *c == Color::Black).count());
    for (i, a) in r.tiles.iter().enumerate() {
        assert!(a.is_simple());
        for b in &r.tiles[i + 1..] {
            assert!(interiors_disjoint(&a.vertices, &b.vertices));
        }
    }
}

#[test]
fn geometry_predicates() {
    let sq = |x: f64, y: f64| {
        vec![
            PlanarPoint::new(x, y),
            PlanarPoint::new(x + 1.0, y),
            PlanarPoint::new(x + 1.0, y + 1.0),
            PlanarPoint::new(x, y + 1.0),
        ]
    };
    assert!((signed_area(&sq(0.0, 0.0)) - 1.0).abs() < 1e-15);
    assert!(is_simple(&sq(0.0, 0.0)));
    let bow = vec![
        PlanarPoint::new(0.0, 0.0),
        PlanarPoint::new(1.0, 1.0),
        PlanarPoint::new(1.0, 0.0),
        PlanarPoint::new(0.0, 1.0),
    ];
    assert!(!is_simple(&bow));
    assert!(interiors_disjoint(&sq(0.0, 0.0), &sq(1.0, 0.0)));
    assert!(!interiors_disjoint(&sq(0.0, 0.0), &sq(0.5, 0.5)));
    assert!(!interiors_disjoint(&sq(0.0, 0.0), &sq(0.0, 0.0)));
    assert!(strictly_inside(&sq(0.0, 0.0), PlanarPoint::new(0.5, 0.5), 1e-9));
    assert!(!strictly_inside(&sq(0.0, 0.0), PlanarPoint::new(1.0, 0.5), 1e-9));
}

#[test]
fn render_rejects_invalid_patches() {
    let mut p = t2().clone();
    let (id, _) = p.cells().find(|(_, c)| *c == Color::Red).unwrap();
    p.insert(id, Color::Black);
    assert!(matches!(render_patch(&p, 60.0, Format::Svg), Err(Error::InvalidPatch(_))));
    assert!(render_patch(t2(), 130.0, Format::Json).is_err());
}

#[test]
fn documents() {
    let json = render_patch(t2(), 60.0, Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let tiles = v["tiles"].as_array().unwrap();
    assert_eq!(tiles.len(), 73);
    assert!(tiles.iter().all(|t| t["flipped"].is_boolean() && t["vertices"].as_array().unwrap().len() == 14));
    assert_eq!(v["holes"].as_array().unwrap().len(), 80);
    assert!(!json.contains("-0.000000"));

    let svg = render_patch(t2(), 60.0, Format::Svg).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 73);
    assert_eq!(svg.matches("#3b6fb6").count(), 10);
    assert!(svg.contains("stroke-width=\"0.02\""));
    assert_eq!(svg, render_patch(t2(), 60.0, Format::Svg).unwrap());
}

proptest! {
    #[test]
    fn any_angle_gives_a_simple_closed_tile(a in 0.01f64..=120.0) {
        let p = monotile_outline(a).unwrap();
        prop_assert!(p.is_simple());
        prop_assert!((p.signed_area() - tile_area(a).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn mirrored_tiles_have_opposite_area(a in 1.0f64..=120.0, d in 0u8..6) {
        let site = monotile::lattice::Site::from_hex(Default::default(), false);
        let t = monotile::patch::DualTile::at(site, d);
        let p = tile_polygon(&t, FamilyAngle::new(a).unwrap());
        prop_assert_eq!(p.signed_area() < 0.0, t.flipped);
        prop_assert!((p.signed_area().abs() - tile_area(a).unwrap()).abs() < 1e-9);
    }
}
