// SPDX-License-Identifier: MIT OR Apache-2.0

//! Bricks and Mortar: the strips `J`, `A_n`, `B_n`, the Fibonacci words, the
//! tile count recursions and the triangular and parallelogram metatiles.
//!
//! Metatiles are cut out of the line-grid tiling of [`crate::tiling`]:
//! `T_n` is the triangle of hexagons `q, r >= 0, q + r < |B_n|` and `P_n` the
//! parallelogram `0 <= q < |B_n|`, `0 <= r < |A_n|`. With the default line
//! model the lines crossing the bottom edge of both read `B_n`, and the lines
//! crossing the left side of `P_n` read `A_n`.

use crate::analysis::find_gabs_with;
use crate::assemble::Assembly;
use crate::error::{Error, Result};
use crate::lattice::{Axis, HexCoord, RhombId};
use crate::patch::ColoredPatch;
use crate::tiling::LineModel;
use crate::word::{fibonacci, Word};
use serde::Serialize;
use std::fmt;

/// Deepest metatile [`build_metatile`] agrees to build. `T_7` has about
/// 2.4 million hexagons.
pub const DEPTH_LIMIT: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strip {
    A,
    B,
    J,
}

/// `J = 01`, `A_0 = B_0 = 0`, `A_{n+1} = B_n J A_n`, `B_{n+1} = A_{n+1} B_n`.
pub fn strip_word(kind: Strip, n: u32) -> Word {
    let j = Word::from_bits(vec![0, 1]);
    if kind == Strip::J {
        return j;
    }
    let (mut a, mut b) = (Word::from_bits(vec![0]), Word::from_bits(vec![0]));
    for _ in 0..n {
        let a2 = Word::concat([&b, &j, &a]);
        let b2 = Word::concat([&a2, &b]);
        a = a2;
        b = b2;
    }
    match kind {
        Strip::A => a,
        _ => b,
    }
}

/// `F_1 = 0`, `F_2 = 001`, `F_n = F_{n-1} F_{n-2}`.
pub fn fib_word(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::Domain("Fibonacci words start at n = 1".into()));
    }
    let (mut prev, mut cur) = (Word::from_bits(vec![0]), Word::from_bits(vec![0, 0, 1]));
    if n == 1 {
        return Ok(prev);
    }
    for _ in 2..n {
        let next = Word::concat([&cur, &prev]);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Both readings of the Fibonacci/strip identities for one `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FibStripIdentity {
    /// `F_{2k-1} = A_k` and `F_{2k} = B_k 01` as literally indexed.
    pub literal: (bool, bool),
    /// `F_{2k-1} = A_{k-1}` and `F_{2k} = B_{k-1} 01`, the indexing the
    /// listed words satisfy (`F_3 = 0010 = A_1`, `F_5 = A_2`).
    pub shifted: (bool, bool),
}

pub fn fib_strip_identity(k: u32) -> Result<FibStripIdentity> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let j = strip_word(Strip::J, 0);
    let odd = fib_word(2 * k - 1)?;
    let even = fib_word(2 * k)?;
    let check = |n: u32| {
        (
            odd == strip_word(Strip::A, n),
            even == Word::concat([&strip_word(Strip::B, n), &j]),
        )
    };
    Ok(FibStripIdentity { literal: check(k), shifted: check(k - 1) })
}

/// Symbol counts of `B_n` against Fibonacci numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StripCounts {
    pub zeros: usize,
    pub ones: usize,
    /// `|B_n|_0 = F_{2n+1} - 1` and `|B_n|_1 = F_{2n-1} - 1`, as literally indexed.
    pub literal: bool,
    /// `|B_n|_0 = F_{2n+3} - 1` and `|B_n|_1 = F_{2n+1} - 1`.
    pub shifted: bool,
}

pub fn strip_counts(n: u32) -> StripCounts {
    let b = strip_word(Strip::B, n);
    let (zeros, ones) = (b.zeros(), b.ones());
    let f = |i: u32| fibonacci(i) as i128 - 1;
    let lit = zeros as i128 == f(2 * n + 1) && n >= 1 && ones as i128 == f(2 * n - 1);
    let shifted = zeros as i128 == f(2 * n + 3) && ones as i128 == f(2 * n + 1);
    StripCounts { zeros, ones, literal: lit, shifted }
}

/// Cassini: `F_{j-1} F_{j+1} = F_j^2 + (-1)^j`.
pub fn cassini(j: u32) -> bool {
    if j == 0 {
        return false;
    }
    let lhs = fibonacci(j - 1) as i128 * fibonacci(j + 1) as i128;
    let fj = fibonacci(j) as i128;
    lhs == fj * fj + if j % 2 == 0 { 1 } else { -1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Palindromes {
    pub b: bool,
    pub ja: bool,
}

pub fn palindrome_report(n: u32) -> Palindromes {
    let ja = Word::concat([&strip_word(Strip::J, 0), &strip_word(Strip::A, n)]);
    Palindromes { b: strip_word(Strip::B, n).is_palindrome(), ja: ja.is_palindrome() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountLedger {
    pub t: Vec<u64>,
    pub p: Vec<u64>,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

/// Tile counts of `T_n` and `P_n` through level `n`, from the recursions
///
/// `t_{n+1} = 3 t_n + 3 p_n + t_{n-1} + 6 b_n`,
/// `p_{n+1} = 2 t_n + 5 p_n + 2 t_{n-1} + 8 b_n`,
///
/// with `t_0 = p_0 = 0` and the level 1 counts `(t1, p1)` supplied by the caller.
pub fn counts(n: u32, t1: u64, p1: u64) -> CountLedger {
    let mut l = CountLedger { t: vec![0], p: vec![0], a: vec![1], b: vec![1] };
    for k in 1..=n {
        l.a.push(strip_word(Strip::A, k).len() as u64);
        l.b.push(strip_word(Strip::B, k).len() as u64);
        if k == 1 {
            l.t.push(t1);
            l.p.push(p1);
        } else {
            let i = (k - 1) as usize;
            l.t.push(3 * l.t[i] + 3 * l.p[i] + l.t[i - 1] + 6 * l.b[i]);
            l.p.push(2 * l.t[i] + 5 * l.p[i] + 2 * l.t[i - 1] + 8 * l.b[i]);
        }
    }
    l
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MetatileKind {
    T,
    P,
}

impl fmt::Display for MetatileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetatileKind::T => "T",
            MetatileKind::P => "P",
        })
    }
}

/// A metatile as a region of the line-grid tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metatile {
    pub kind: MetatileKind,
    pub level: u32,
}

impl Metatile {
    pub fn new(kind: MetatileKind, level: u32) -> Result<Self> {
        if level == 0 || level > DEPTH_LIMIT {
            return Err(Error::Depth { requested: level, limit: DEPTH_LIMIT });
        }
        Ok(Metatile { kind, level })
    }

    /// Bottom edge length in hexagons, `|B_n|`.
    pub fn width(&self) -> i64 {
        strip_word(Strip::B, self.level).len() as i64
    }

    pub fn hexes(&self) -> Vec<HexCoord> {
        let l = self.width();
        let mut out = Vec::new();
        match self.kind {
            MetatileKind::T => {
                for q in 0..l {
                    for r in 0..l - q {
                        out.push(HexCoord::new(q, r));
                    }
                }
            }
            MetatileKind::P => {
                let h = strip_word(Strip::A, self.level).len() as i64;
                for q in 0..l {
                    for r in 0..h {
                        out.push(HexCoord::new(q, r));
                    }
                }
            }
        }
        out
    }

    pub fn cells(&self) -> impl Iterator<Item = RhombId> {
        self.hexes().into_iter().flat_map(|h| Axis::ALL.map(|a| RhombId::new(h, a)))
    }

    pub fn to_patch(&self) -> ColoredPatch {
        LineModel::default().patch(self.cells())
    }
}

pub fn build_metatile(kind: MetatileKind, n: u32) -> Result<ColoredPatch> {
    Ok(Metatile::new(kind, n)?.to_patch())
}

/// For each of the first `len` lines of the given axis, the orientation of
/// the tiles the assembled patch has on it (`None` if it has none).
pub fn edge_word(p: &ColoredPatch, asm: &Assembly, axis: Axis, len: usize) -> Vec<Option<u8>> {
    let lines = find_gabs_with(p, asm);
    (0..len as i64)
        .map(|i| {
            let kind = lines.iter().find(|l| l.direction == axis && l.index == i)?.kind;
            match kind {
                crate::analysis::LineKind::Gab => Some(1),
                crate::analysis::LineKind::Complementary => Some(0),
                _ => None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_strips() {
        assert_eq!(strip_word(Strip::B, 1).to_string(), "00100");
        assert_eq!(strip_word(Strip::A, 2).to_string(), "00100010010");
        assert_eq!(strip_word(Strip::B, 2).to_string(), "0010001001000100");
    }

    #[test]
    fn fib_words() {
        assert_eq!(fib_word(4).unwrap().to_string(), "0010001");
        assert_eq!(fib_word(6).unwrap().to_string(), "001000100100010001");
        assert!(fib_word(0).is_err());
    }
}
