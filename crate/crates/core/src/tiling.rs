// SPDX-License-Identifier: MIT OR Apache-2.0

//! The dual Turtle tiling as a cut-and-project (line grid) pattern.
//!
//! Every lattice line of axis `a` and index `m` gets a type
//! `w_a(m) = floor((m + 1 + k_a) alpha + eps_a) - floor((m + k_a) alpha + eps_a)`
//! with `alpha = (5 - sqrt 5) / 10`: type 1 lines carry flipped tiles, type 0
//! lines regular ones. The infinitesimal offsets `eps_a` make the intercepts
//! generic so that no line passes through a lattice point.
//!
//! A 60 degree vertex `n` gets the phase `phi(n) = F_0(n_0) ^ F_1(n_1) ^ F_2(n_2)`
//! where `F_a(m)` is the parity of the number of type 1 lines of axis `a`
//! between 0 and `m`. The colour of a rhomb follows from the phases of its
//! two 60 degree vertices: equal phases give red&black, otherwise the phase
//! of the arrow vertex picks red (0) or black (1).
//!
//! All arithmetic is exact: `floor(x alpha)` only needs `isqrt(5 x^2)`.

use crate::lattice::{isqrt, Pt, RhombId};
use crate::patch::{Color, ColoredPatch};

/// Intercept shifts and offset signs of the three line families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineModel {
    pub shift: [i64; 3],
    pub eps_positive: [bool; 3],
}

impl Default for LineModel {
    fn default() -> Self {
        // With these intercepts the x and y words start with the strip
        // words B_n, and the three intercepts add up to the value that
        // makes the pattern a valid tiling (no three lines concurrent).
        LineModel { shift: [1, 1, -3], eps_positive: [true, true, false] }
    }
}

/// `floor(x * alpha + eps)` for `alpha = (5 - sqrt 5) / 10` and an
/// infinitesimal `eps` of the given sign.
pub fn floor_alpha(x: i64, eps_positive: bool) -> i64 {
    if x == 0 {
        return if eps_positive { 0 } else { -1 };
    }
    let s = isqrt((5 * x as i128 * x as i128) as u64) as i64;
    // x sqrt 5 is irrational, so it lies strictly between s and s + 1
    if x > 0 {
        (5 * x - s - 1).div_euclid(10)
    } else {
        (5 * x + s).div_euclid(10)
    }
}

impl LineModel {
    fn fl(&self, axis: usize, m: i64) -> i64 {
        floor_alpha(m + self.shift[axis], self.eps_positive[axis])
    }

    /// Type of line `m` of the given axis: 1 for a golden Ammann bar.
    pub fn line_type(&self, axis: usize, m: i64) -> u8 {
        (self.fl(axis, m + 1) - self.fl(axis, m)) as u8
    }

    fn prefix_parity(&self, axis: usize, m: i64) -> bool {
        (self.fl(axis, m) - self.fl(axis, 0)).rem_euclid(2) == 1
    }

    pub fn phase(&self, n: Pt) -> bool {
        (0..3).fold(false, |acc, a| acc ^ self.prefix_parity(a, n[a]))
    }

    pub fn color(&self, id: RhombId) -> Color {
        let (n1, n2) = id.nodes();
        let (p1, p2) = (self.phase(n1), self.phase(n2));
        match (p1 == p2, p1) {
            (true, _) => Color::RedBlack,
            (false, false) => Color::Red,
            (false, true) => Color::Black,
        }
    }

    /// Red&black orientation the model assigns: red half at the arrow vertex?
    pub fn red_at_n1(&self, id: RhombId) -> bool {
        !self.phase(id.nodes().0)
    }

    /// The first `len` line types of an axis as a 0/1 word.
    pub fn word(&self, axis: usize, len: usize) -> Vec<u8> {
        (0..len as i64).map(|m| self.line_type(axis, m)).collect()
    }

    /// Patch covering the given rhombs.
    pub fn patch<I: IntoIterator<Item = RhombId>>(&self, ids: I) -> ColoredPatch {
        ColoredPatch::from_cells(ids.into_iter().map(|id| (id, self.color(id))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_alpha_matches_floats_away_from_zero() {
        let a = (5.0 - 5f64.sqrt()) / 10.0;
        for x in -2000i64..2000 {
            if x == 0 {
                continue;
            }
            let f = (x as f64 * a).floor() as i64;
            assert_eq!(floor_alpha(x, true), f, "{x}");
            assert_eq!(floor_alpha(x, false), f, "{x}");
        }
    }

    #[test]
    fn x_word_is_fibonacci_like() {
        let m = LineModel::default();
        let w: String = m.word(0, 16).iter().map(|b| char::from(b'0' + b)).collect();
        assert_eq!(w, "0010001001000100");
    }
}
