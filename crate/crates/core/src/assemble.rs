// SPDX-License-Identifier: MIT OR Apache-2.0

//! Grouping a valid coloured patch into dual tiles.
//!
//! Two steps. First the red&black rhombs are covered by hexagons whose three
//! rhombs all turn the same way around the hexagon centre. Then every hexagon
//! is paired with a red rhomb across one of its outer edges; the hexagon/red
//! graph is a forest in practice, so the pairing is forced leaf by leaf and
//! only falls back to augmenting paths for leftover cycles.

use crate::error::{Error, Result};
use crate::lattice::{RhombId, Site};
use crate::patch::{edge_is_red, solve, Color, ColoredPatch, DualTile};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assembly {
    pub tiles: Vec<DualTile>,
    /// Every cell not used by a tile, in file order.
    pub unassigned: Vec<RhombId>,
}

impl Assembly {
    pub fn n_flipped(&self) -> usize {
        self.tiles.iter().filter(|t| t.flipped).count()
    }

    pub fn n_regular(&self) -> usize {
        self.tiles.len() - self.n_flipped()
    }
}

/// Orientation a hexagon must have for a red rhomb to attach across `dir`.
pub fn attach_is_flipped(site: Site, dir: u8) -> bool {
    let e = site.outer_edge(dir as usize);
    let faces = site.faces();
    for f in faces {
        if let Some(i) = f.edges().iter().position(|x| *x == e) {
            // a regular hexagon must show black here, otherwise only the
            // mirrored one can take the red rhomb
            return edge_is_red(Color::RedBlack, site.regular_red_at_n1(), i as u8);
        }
    }
    unreachable!("outer edge belongs to the hexagon")
}

impl DualTile {
    /// Tile with its orientation derived from the attachment side.
    pub fn at(site: Site, attach_dir: u8) -> DualTile {
        DualTile {
            center: site.hex_coord(),
            down: site.is_down(),
            attach_dir,
            flipped: attach_is_flipped(site, attach_dir),
        }
    }
}

/// Hexagons of red&black rhombs with a consistent orientation, and whether
/// each is flipped.
pub(crate) fn hex_candidates(
    p: &ColoredPatch,
    red_at_n1: &HashMap<RhombId, bool>,
) -> BTreeMap<Site, bool> {
    let mut sites = BTreeSet::new();
    for (id, c) in p.cells() {
        if c == Color::RedBlack {
            sites.insert(Site::Up(id.up_site()));
            sites.insert(Site::Down(id.down_site()));
        }
    }
    let mut out = BTreeMap::new();
    for s in sites {
        let faces = s.faces();
        if !faces.iter().all(|f| p.get(f) == Some(Color::RedBlack)) {
            continue;
        }
        let reg = s.regular_red_at_n1();
        let n_reg = faces.iter().filter(|f| red_at_n1[*f] == reg).count();
        match n_reg {
            3 => {
                out.insert(s, false);
            }
            0 => {
                out.insert(s, true);
            }
            _ => {}
        }
    }
    out
}

fn cover(cands: &BTreeMap<Site, bool>) -> Vec<(Site, bool)> {
    let list: Vec<(Site, bool)> = cands.iter().map(|(s, f)| (*s, *f)).collect();
    let mut by_face: HashMap<RhombId, Vec<usize>> = HashMap::new();
    for (i, (s, _)) in list.iter().enumerate() {
        for f in s.faces() {
            by_face.entry(f).or_default().push(i);
        }
    }
    // connected components of the overlap graph
    let mut comp = vec![usize::MAX; list.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..list.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            k += 1;
            for f in list[i].0.faces() {
                for &j in &by_face[&f] {
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let greedy = |members: &[usize], flipped_first: bool| -> Vec<usize> {
        let mut used: BTreeSet<RhombId> = BTreeSet::new();
        let mut chosen = Vec::new();
        for pass in [flipped_first, !flipped_first] {
            for &i in members.iter().filter(|&&i| list[i].1 == pass) {
                let faces = list[i].0.faces();
                if faces.iter().all(|f| !used.contains(f)) {
                    used.extend(faces);
                    chosen.push(i);
                }
            }
        }
        chosen
    };

    let mut out = Vec::new();
    for members in comps {
        let a = greedy(&members, false);
        let b = greedy(&members, true);
        let pick = if b.len() > a.len() { b } else { a };
        out.extend(pick.into_iter().map(|i| list[i]));
    }
    out.sort();
    out
}

/// Group the cells of a valid patch into dual tiles.
pub fn assemble_tiles(p: &ColoredPatch) -> Result<Assembly> {
    let sol = solve(p);
    if !sol.report.is_valid() {
        return Err(Error::InvalidPatch(sol.report.violations.len()));
    }
    let hexes = cover(&hex_candidates(p, &sol.red_at_n1));

    // bipartite graph hexagon -> (dir, red rhomb)
    let mut reds: Vec<RhombId> = Vec::new();
    let mut red_index: HashMap<RhombId, usize> = HashMap::new();
    let mut adj: Vec<Vec<(u8, usize)>> = Vec::with_capacity(hexes.len());
    for (site, flipped) in &hexes {
        let mut opts = Vec::new();
        for dir in 0..6u8 {
            let r = site.across(dir as usize);
            if p.get(&r) == Some(Color::Red) && attach_is_flipped(*site, dir) == *flipped {
                let k = *red_index.entry(r).or_insert_with(|| {
                    reds.push(r);
                    reds.len() - 1
                });
                opts.push((dir, k));
            }
        }
        adj.push(opts);
    }
    let mut red_adj: Vec<Vec<usize>> = vec![Vec::new(); reds.len()];
    for (h, opts) in adj.iter().enumerate() {
        for &(_, r) in opts {
            red_adj[r].push(h);
        }
    }

    let mut hex_match: Vec<Option<usize>> = vec![None; hexes.len()];
    let mut red_match: Vec<Option<usize>> = vec![None; reds.len()];
    force_leaves(&adj, &red_adj, &mut hex_match, &mut red_match);
    augment(&adj, &mut hex_match, &mut red_match);

    let mut tiles = Vec::new();
    let mut used: BTreeSet<RhombId> = BTreeSet::new();
    for (h, (site, flipped)) in hexes.iter().enumerate() {
        match hex_match[h] {
            Some(r) => {
                let dir = adj[h].iter().find(|(_, k)| *k == r).map(|(d, _)| *d).unwrap_or(0);
                let t = DualTile::at(*site, dir);
                debug_assert_eq!(t.flipped, *flipped);
                used.extend(site.faces());
                used.insert(reds[r]);
                tiles.push(t);
            }
            None => {
                let interior = (0..6).all(|d| p.contains(&site.across(d)));
                if interior {
                    let reason = if adj[h].is_empty() {
                        "no red rhomb can attach"
                    } else {
                        "every red partner is taken"
                    };
                    return Err(Error::AmbiguousAssembly {
                        hex: site.hex_coord(),
                        down: site.is_down(),
                        reason: reason.to_string(),
                    });
                }
            }
        }
    }
    let unassigned = p.cells().map(|(id, _)| id).filter(|id| !used.contains(id)).collect();
    Ok(Assembly { tiles, unassigned })
}

fn force_leaves(
    adj: &[Vec<(u8, usize)>],
    red_adj: &[Vec<usize>],
    hex_match: &mut [Option<usize>],
    red_match: &mut [Option<usize>],
) {
    let mut hex_deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut red_deg: Vec<usize> = red_adj.iter().map(Vec::len).collect();
    let mut queue: VecDeque<(bool, usize)> = VecDeque::new();
    for (h, d) in hex_deg.iter().enumerate() {
        if *d == 1 {
            queue.push_back((true, h));
        }
    }
    for (r, d) in red_deg.iter().enumerate() {
        if *d == 1 {
            queue.push_back((false, r));
        }
    }
    while let Some((is_hex, x)) = queue.pop_front() {
        let (h, r) = if is_hex {
            if hex_match[x].is_some() || hex_deg[x] != 1 {
                continue;
            }
            match adj[x].iter().find(|(_, r)| red_match[*r].is_none()) {
                Some(&(_, r)) => (x, r),
                None => continue,
            }
        } else {
            if red_match[x].is_some() || red_deg[x] != 1 {
                continue;
            }
            match red_adj[x].iter().find(|h| hex_match[**h].is_none()) {
                Some(&h) => (h, x),
                None => continue,
            }
        };
        hex_match[h] = Some(r);
        red_match[r] = Some(h);
        // removing h and r lowers the degree of their other neighbours
        for &(_, r2) in &adj[h] {
            if red_match[r2].is_none() {
                red_deg[r2] -= 1;
                if red_deg[r2] == 1 {
                    queue.push_back((false, r2));
                }
            }
        }
        for &h2 in &red_adj[r] {
            if hex_match[h2].is_none() {
                hex_deg[h2] -= 1;
                if hex_deg[h2] == 1 {
                    queue.push_back((true, h2));
                }
            }
        }
    }
}

/// Kuhn's augmenting paths, iterative, in index order.
fn augment(
    adj: &[Vec<(u8, usize)>],
    hex_match: &mut [Option<usize>],
    red_match: &mut [Option<usize>],
) {
    let mut stamp = vec![0usize; red_match.len()];
    let mut round = 0;
    for start in 0..adj.len() {
        if hex_match[start].is_some() || adj[start].is_empty() {
            continue;
        }
        round += 1;
        // stack of (hex, next option index); parents recorded per red
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        let mut via: Vec<(usize, usize)> = Vec::new();
        let mut found = None;
        while let Some(&mut (h, ref mut i)) = stack.last_mut() {
            if *i >= adj[h].len() {
                stack.pop();
                via.pop();
                continue;
            }
            let r = adj[h][*i].1;
            *i += 1;
            if stamp[r] == round {
                continue;
            }
            stamp[r] = round;
            via.push((h, r));
            match red_match[r] {
                None => {
                    found = Some(());
                    break;
                }
                Some(h2) => stack.push((h2, 0)),
            }
        }
        if found.is_some() {
            for (h, r) in via {
                hex_match[h] = Some(r);
                red_match[r] = Some(h);
            }
        }
    }
}
