// SPDX-License-Identifier: MIT OR Apache-2.0

//! Spectre combinatorics: Conway worms, shape counts and substitution matrices.
//!
//! Worm words mark odd tiles with 1 and even tiles with 0. The mystics are
//! `E = 10` and `O = 01`, and both systems share the recursions
//!
//! ```text
//! I_{k+1} = O S I S I S E
//! S_{k+1} = S I S I S E S I S O S I S I S
//! N_{k+1} = S I S
//! M_{k+1} = S I S I M_k
//! ```
//!
//! with the right-hand sides at level `k`.

use crate::error::{Error, Result};
use crate::word::Word;
use num_rational::Ratio;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Deepest worm level; `S_7` already has about 1.4 * 10^7 symbols.
pub const WORM_DEPTH_LIMIT: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WormSystem {
    Articulated,
    Wriggly,
}

impl WormSystem {
    pub const ALL: [WormSystem; 2] = [WormSystem::Articulated, WormSystem::Wriggly];

    pub fn seeds(self) -> (Word, Word) {
        match self {
            WormSystem::Articulated => (Word::new(), Word::from_bits(vec![0])),
            WormSystem::Wriggly => (Word::from_bits(vec![0, 0]), Word::from_bits(vec![0, 1, 0])),
        }
    }
}

impl fmt::Display for WormSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WormSystem::Articulated => "articulated",
            WormSystem::Wriggly => "wriggly",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WormKind {
    S,
    I,
    N,
    M,
}

pub fn mystic_e() -> Word {
    Word::from_bits(vec![1, 0])
}

pub fn mystic_o() -> Word {
    Word::from_bits(vec![0, 1])
}

type Cache = Mutex<HashMap<(WormSystem, WormKind, u32), Arc<Word>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn build(system: WormSystem, kind: WormKind, k: u32) -> Arc<Word> {
    if let Some(w) = cache().lock().expect("worm cache poisoned").get(&(system, kind, k)) {
        return w.clone();
    }
    let (e, o) = (mystic_e(), mystic_o());
    let word = match (kind, k) {
        (WormKind::S, 0) => system.seeds().0,
        (WormKind::I, 0) => system.seeds().1,
        // the level-0 M strip is taken to be empty
        (WormKind::M, 0) => Word::new(),
        (WormKind::N, 0) => Word::new(),
        (kind, k) => {
            let s = build(system, WormKind::S, k - 1);
            let i = build(system, WormKind::I, k - 1);
            match kind {
                WormKind::S => Word::concat([
                    &*s, &*i, &*s, &*i, &*s, &e, &*s, &*i, &*s, &o, &*s, &*i, &*s, &*i, &*s,
                ]),
                WormKind::I => Word::concat([&o, &*s, &*i, &*s, &*i, &*s, &e]),
                WormKind::N => Word::concat([&*s, &*i, &*s]),
                WormKind::M => {
                    let m = build(system, WormKind::M, k - 1);
                    Word::concat([&*s, &*i, &*s, &*i, &*m])
                }
            }
        }
    };
    let word = Arc::new(word);
    cache().lock().expect("worm cache poisoned").insert((system, kind, k), word.clone());
    word
}

/// Worm word of a system. `N` and `M` start at level 1.
pub fn worm(system: WormSystem, kind: WormKind, k: u32) -> Result<Arc<Word>> {
    if k > WORM_DEPTH_LIMIT {
        return Err(Error::Depth { requested: k, limit: WORM_DEPTH_LIMIT });
    }
    if matches!(kind, WormKind::N | WormKind::M) && k == 0 {
        return Err(Error::Domain("N and M worms start at level 1".into()));
    }
    Ok(build(system, kind, k))
}

/// `O S_k I_k == I_k S_k E`.
pub fn worm_identity(system: WormSystem, k: u32) -> Result<bool> {
    let s = worm(system, WormKind::S, k)?;
    let i = worm(system, WormKind::I, k)?;
    Ok(Word::concat([&mystic_o(), &*s, &*i]) == Word::concat([&*i, &*s, &mystic_e()]))
}

/// Share of odd tiles in a worm.
pub fn odd_frequency(system: WormSystem, kind: WormKind, k: u32) -> Result<Ratio<u64>> {
    let w = worm(system, kind, k)?;
    if w.is_empty() {
        return Err(Error::Domain("empty worm has no frequency".into()));
    }
    Ok(Ratio::new(w.ones() as u64, w.len() as u64))
}

/// Tile counts of the six 2D shapes and the three growing worms at one level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShapeCounts {
    pub td: u128,
    pub pa: u128,
    pub tb: u128,
    pub tc: u128,
    pub pb: u128,
    pub ta: u128,
    pub s: u128,
    pub n: u128,
    pub m: u128,
}

impl ShapeCounts {
    /// The three groups the substitution matrix acts on.
    pub fn groups(&self) -> [[u128; 3]; 3] {
        [[self.td, self.pa, 0], [self.tb, self.tc, self.pa], [self.pb, self.ta, self.tc]]
    }
}

fn worm_len(system: WormSystem, kind: WormKind, k: u32) -> Result<u128> {
    Ok(worm(system, kind, k)?.len() as u128)
}

/// One step of the six recursions, from the shapes at level `k - 1`.
pub fn shape_step(system: WormSystem, prev: &ShapeCounts, k: u32) -> Result<ShapeCounts> {
    let s = worm_len(system, WormKind::S, k)?;
    let n = worm_len(system, WormKind::N, k)?;
    let m = worm_len(system, WormKind::M, k)?;
    let td = 3 * prev.pb + prev.tc + 3 * n;
    let pa = prev.pb + 2 * prev.ta + 2 * n;
    let tb = 3 * td + 3 * pa + prev.ta + 6 * m;
    let tc = td + 3 * pa + 3 * m;
    let pb = 2 * tb + 2 * tc + pa + 4 * s;
    let ta = tb + 3 * tc + 3 * s;
    Ok(ShapeCounts { td, pa, tb, tc, pb, ta, s, n, m })
}

/// Level 1 counts obtained by running the recursions once from empty
/// level 0 shapes (`TD_1` is then three tiles and `PA_1` two, for the
/// articulated system).
pub fn derived_base(system: WormSystem) -> Result<ShapeCounts> {
    shape_step(system, &ShapeCounts::default(), 1)
}

/// Counts at level `k >= 1`, starting from the given level 1 counts.
pub fn shape_counts(system: WormSystem, k: u32, base: &ShapeCounts) -> Result<ShapeCounts> {
    if k == 0 {
        return Err(Error::Domain("shape counts start at level 1".into()));
    }
    let mut cur = *base;
    for level in 2..=k {
        cur = shape_step(system, &cur, level)?;
    }
    Ok(cur)
}

pub type Mat3 = [[i128; 3]; 3];

pub const BLOCK_A: Mat3 = [[3, 0, 1], [1, 2, 0], [0, 1, 0]];
pub const BLOCK_B: Mat3 = [[3, 3, 1], [1, 3, 0], [0, 1, 0]];
pub const BLOCK_C: Mat3 = [[2, 2, 1], [1, 3, 0], [0, 1, 0]];

/// Dense integer matrix product.
pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn to_dense(m: &Mat3) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let p = mat_mul(&to_dense(a), &to_dense(b));
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = p[i][j];
        }
    }
    out
}

/// The 9x9 block-cyclic matrix `[[0, 0, A], [B, 0, 0], [0, C, 0]]`.
pub fn substitution_matrix() -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; 9]; 9];
    let place = |m: &mut Vec<Vec<i128>>, bi: usize, bj: usize, blk: &Mat3| {
        for i in 0..3 {
            for j in 0..3 {
                m[3 * bi + i][3 * bj + j] = blk[i][j];
            }
        }
    };
    place(&mut m, 0, 2, &BLOCK_A);
    place(&mut m, 1, 0, &BLOCK_B);
    place(&mut m, 2, 1, &BLOCK_C);
    m
}

/// Characteristic polynomial `det(x I - M)`, highest degree first, by
/// Berkowitz's division-free algorithm.
pub fn char_poly(a: &[Vec<i128>]) -> Vec<i128> {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    let mut c = vec![1, -a[0][0]];
    for r in 1..n {
        let row: Vec<i128> = a[r][..r].to_vec();
        let col: Vec<i128> = (0..r).map(|i| a[i][r]).collect();
        // q = [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S]
        let mut q = vec![1, -a[r][r]];
        let mut v = col;
        for _ in 0..r {
            q.push(-row.iter().zip(&v).map(|(x, y)| x * y).sum::<i128>());
            v = (0..r).map(|i| (0..r).map(|j| a[i][j] * v[j]).sum()).collect();
        }
        let mut next = vec![0i128; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(i + 1) {
                *slot += q[i - j] * cj;
            }
        }
        c = next;
    }
    c
}

/// Polynomial product, highest degree first.
pub fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(p: &[i128], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, c| acc * x + *c as f64)
}

/// A real eigenvalue with a rigorous bracket from a sign change of the
/// characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub error_bound: f64,
}

/// Perron root of a nonnegative primitive matrix: power iteration for a
/// guess, bisection on the characteristic polynomial for the bound. When no
/// sign change brackets the guess (an imprimitive matrix, say) the bound is
/// infinite.
pub fn dominant_eigenvalue(a: &[Vec<i128>]) -> Eigenvalue {
    let n = a.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w: Vec<f64> =
            (0..n).map(|i| (0..n).map(|j| a[i][j] as f64 * v[j]).sum::<f64>()).collect();
        let norm = w.iter().cloned().fold(0.0, f64::max);
        lambda = norm;
        v = w.iter().map(|x| x / norm).collect();
    }
    let p = char_poly(a);
    let (mut lo, mut hi) = (lambda * (1.0 - 1e-6), lambda * (1.0 + 1e-6));
    let (flo, fhi) = (poly_eval(&p, lo), poly_eval(&p, hi));
    if flo.signum() == fhi.signum() {
        return Eigenvalue { value: lambda, error_bound: f64::INFINITY };
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if poly_eval(&p, mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Eigenvalue { value: 0.5 * (lo + hi), error_bound: hi - lo }
}

/// `M^3` and its three diagonal blocks. Tracing `M` three times round the
/// cycle gives the products `ACB`, `BAC` and `CBA`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubedBlocks {
    pub cube: Vec<Vec<i128>>,
    pub acb: Mat3,
    pub bac: Mat3,
    pub cba: Mat3,
}

impl CubedBlocks {
    /// All off-diagonal 3x3 blocks of `M^3` vanish.
    pub fn is_block_diagonal(&self) -> bool {
        (0..9).all(|i| (0..9).all(|j| i / 3 == j / 3 || self.cube[i][j] == 0))
    }
}

pub fn matrix_cubed_blocks() -> CubedBlocks {
    let m = substitution_matrix();
    let cube = mat_mul(&mat_mul(&m, &m), &m);
    let (a, b, c) = (BLOCK_A, BLOCK_B, BLOCK_C);
    CubedBlocks {
        cube,
        acb: mat3_mul(&mat3_mul(&a, &c), &b),
        bac: mat3_mul(&mat3_mul(&b, &a), &c),
        cba: mat3_mul(&mat3_mul(&c, &b), &a),
    }
}

impl CubedBlocks {
    pub fn blocks(&self) -> [Mat3; 3] {
        [self.acb, self.bac, self.cba]
    }

    /// The diagonal block of `M^3` at position `i`, read off the cube itself.
    pub fn diagonal_block(&self, i: usize) -> Mat3 {
        let mut out = [[0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                out[r][c] = self.cube[3 * i + r][3 * i + c];
            }
        }
        out
    }
}

/// Dominant eigenvalue of `M`. `M` is block cyclic, so its spectral radius
/// is the cube root of that of `ACB`; power iteration on `M` itself would
/// oscillate.
pub fn substitution_eigenvalue() -> Eigenvalue {
    let acb = dominant_eigenvalue(&to_dense(&matrix_cubed_blocks().acb));
    let value = acb.value.cbrt();
    // |d cbrt(x)/dx| = 1 / (3 x^{2/3}) bounds the propagated error
    Eigenvalue { value, error_bound: acb.error_bound / (3.0 * value * value) + f64::EPSILON * value }
}

pub fn det3(m: &Mat3) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn format_poly(p: &[i128]) -> String {
    let deg = p.len().saturating_sub(1);
    let mut s = String::new();
    for (i, c) in p.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let e = deg - i;
        let sign = if *c < 0 { "-" } else { "+" };
        if s.is_empty() {
            if *c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match (a, e) {
            (_, 0) => s.push_str(&a.to_string()),
            (1, 1) => s.push('x'),
            (1, _) => s.push_str(&format!("x^{e}")),
            (_, 1) => s.push_str(&format!("{a}x")),
            _ => s.push_str(&format!("{a}x^{e}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
