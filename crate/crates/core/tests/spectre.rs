// SPDX-License-Identifier: MIT OR Apache-2.0

use monotile::spectre::*;
use monotile::word::{w, Word};
use monotile::Error;
use num_rational::Ratio;

use WormKind::{I, M, N, S};
use WormSystem::{Articulated, Wriggly};

fn get(sys: WormSystem, kind: WormKind, k: u32) -> Word {
    (*worm(sys, kind, k).unwrap()).clone()
}

fn surd_15() -> f64 {
    31.0 + 8.0 * 15f64.sqrt()
}

#[test]
fn listed_worms() {
    assert_eq!(get(Articulated, S, 1), w("001000100"));
    assert_eq!(get(Articulated, I, 1), w("010010"));
    assert_eq!(Word::concat([&get(Wriggly, S, 0), &get(Wriggly, I, 0)]), w("00010"));
    assert_eq!(get(Articulated, S, 0), Word::new());
    assert_eq!(get(Articulated, I, 0), w("0"));
    assert_eq!(mystic_e(), w("10"));
    assert_eq!(mystic_o(), w("01"));
}

#[test]
fn worm_domain() {
    assert!(matches!(worm(Articulated, N, 0), Err(Error::Domain(_))));
    assert!(matches!(worm(Wriggly, M, 0), Err(Error::Domain(_))));
    assert!(matches!(worm(Articulated, S, WORM_DEPTH_LIMIT + 1), Err(Error::Depth { .. })));
}

#[test]
fn identity_and_palindromes() {
    for sys in WormSystem::ALL {
        for k in 0..=5 {
            assert!(worm_identity(sys, k).unwrap(), "{sys} k = {k}");
            assert!(get(sys, S, k).is_palindrome(), "{sys} S{k}");
            assert!(get(sys, I, k).is_palindrome(), "{sys} I{k}");
        }
    }
    // k = 0 spelled out: O S0 I0 = 010 = I0 S0 E
    assert_eq!(Word::concat([&mystic_o(), &get(Articulated, S, 0), &get(Articulated, I, 0)]), w("010"));
}

#[test]
fn n_and_m_recursions() {
    for sys in WormSystem::ALL {
        for k in 1..=5 {
            let (s, i) = (get(sys, S, k - 1), get(sys, I, k - 1));
            assert_eq!(get(sys, N, k), Word::concat([&s, &i, &s]));
            if k >= 2 {
                assert_eq!(get(sys, M, k), Word::concat([&s, &i, &s, &i, &get(sys, M, k - 1)]));
            }
        }
        // with the empty level 0 strip, M_1 = S_0 I_0 S_0 I_0
        let (s, i) = (get(sys, S, 0), get(sys, I, 0));
        assert_eq!(get(sys, M, 1), Word::concat([&s, &i, &s, &i]));
    }
}

#[test]
fn worm_lengths() {
    assert_eq!((get(Articulated, S, 1).len(), get(Articulated, I, 1).len()), (9, 6));
    assert_eq!(get(Articulated, S, 2).len(), 8 * 9 + 5 * 6 + 4);
    assert_eq!(get(Articulated, S, 2).len(), 106);
    for sys in WormSystem::ALL {
        for k in 0..6 {
            let (s, i) = (get(sys, S, k).len(), get(sys, I, k).len());
            assert_eq!(get(sys, S, k + 1).len(), 8 * s + 5 * i + 4);
            assert_eq!(get(sys, I, k + 1).len(), 3 * s + 2 * i + 4);
        }
    }
}

#[test]
fn odd_frequencies() {
    assert_eq!(odd_frequency(Articulated, S, 1).unwrap(), Ratio::new(2, 9));
    assert!(odd_frequency(Articulated, S, 0).is_err());
    let art = 2.0 / 19.0 * (5.0 - 6f64.sqrt());
    let wri = (9.0 - 2.0 * 6f64.sqrt()) / 19.0;
    for (sys, slope) in [(Articulated, art), (Wriggly, wri)] {
        let f = odd_frequency(sys, S, 5).unwrap();
        let f = *f.numer() as f64 / *f.denom() as f64;
        assert!((f / slope - 1.0).abs() < 0.01, "{sys}: {f} vs {slope}");
    }
    assert_eq!(odd_frequency(Wriggly, S, 5).unwrap(), Ratio::new(109, 505));
}

#[test]
fn derived_level_one_counts() {
    let a = derived_base(Articulated).unwrap();
    assert_eq!((a.td, a.pa), (3, 2));
    let b = derived_base(Wriggly).unwrap();
    assert_eq!((b.td, b.pa, b.tb, b.tc, b.pb, b.ta), (21, 14, 165, 93, 670, 549));
    assert!(shape_counts(Articulated, 0, &a).is_err());
    assert_eq!(shape_counts(Articulated, 1, &a).unwrap(), a);
}

fn apply(m: &Mat3, v: [u128; 3]) -> [u128; 3] {
    let mut out = [0u128; 3];
    for (r, row) in m.iter().enumerate() {
        out[r] = row.iter().zip(v).map(|(c, x)| *c as u128 * x).sum();
    }
    out
}

fn add(a: [u128; 3], b: [u128; 3]) -> [u128; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

// The recursions chain through the blocks: B takes (td, pa, ta') to
// (tb, tc, pa), C takes that to (pb, ta, tc), and A takes (pb, ta, tc) to the
// next level's (td, pa, ta). Each step adds a worm term.
#[test]
fn counts_chain_through_the_blocks() {
    for sys in WormSystem::ALL {
        let mut prev = ShapeCounts::default();
        let mut cur = derived_base(sys).unwrap();
        for k in 1..=6 {
            let g1 = [cur.td, cur.pa, prev.ta];
            let g2 = [cur.tb, cur.tc, cur.pa];
            let g3 = [cur.pb, cur.ta, cur.tc];
            assert_eq!(g2, add(apply(&BLOCK_B, g1), [6 * cur.m, 3 * cur.m, 0]));
            assert_eq!(g3, add(apply(&BLOCK_C, g2), [4 * cur.s, 3 * cur.s, 0]));
            let next = shape_step(sys, &cur, k + 1).unwrap();
            assert_eq!([next.td, next.pa, cur.ta], add(apply(&BLOCK_A, g3), [3 * next.n, 2 * next.n, 0]));
            prev = cur;
            cur = next;
        }
    }
}

// Read literally, "v_{k+1} = M v_k" with the worm terms dropped does not
// hold for the counts; see the decisions ledger.
#[test]
fn one_step_map_is_not_literal() {
    let m = substitution_matrix();
    let c0 = ShapeCounts::default();
    let c1 = derived_base(Articulated).unwrap();
    let c2 = shape_counts(Articulated, 2, &c1).unwrap();
    // (td_k, pa_k, ta_{k-1}, tb_k, tc_k, pa_{k-1}, pb_k, ta_k, tc_{k-1})
    let v = |c: &ShapeCounts, p: &ShapeCounts| [c.td, c.pa, p.ta, c.tb, c.tc, p.pa, c.pb, c.ta, p.tc];
    let (v1, v2) = (v(&c1, &c0), v(&c2, &c1));
    let mv: Vec<u128> = (0..9).map(|i| (0..9).map(|j| m[i][j] as u128 * v1[j]).sum()).collect();
    assert_ne!(mv, v2.to_vec());
}

#[test]
fn td_growth() {
    let base = derived_base(Wriggly).unwrap();
    let a = shape_counts(Wriggly, 5, &base).unwrap();
    let b = shape_counts(Wriggly, 6, &base).unwrap();
    let ratio = b.td as f64 / a.td as f64;
    // one level is a full trip round the cycle: (4 + sqrt 15)^2 per level,
    // (4 + sqrt 15)^(2/3) per block
    assert!((ratio / surd_15() - 1.0).abs() < 1e-3, "{ratio}");
}

#[test]
fn acb_as_printed() {
    let b = matrix_cubed_blocks();
    assert_eq!(b.acb, [[25, 42, 6], [20, 37, 4], [6, 12, 1]]);
    assert!(b.is_block_diagonal());
    for i in 0..3 {
        assert_eq!(b.diagonal_block(i), b.blocks()[i]);
    }
}

// The third printed block is labelled CAB, but its entries are those of the
// product C B A, which is what actually sits on the diagonal of M^3.
#[test]
fn third_block_is_cba() {
    let printed = [[37, 28, 8], [30, 25, 6], [6, 6, 1]];
    let b = matrix_cubed_blocks();
    assert_eq!(b.cba, printed);
    let cab = mat3_mul(&mat3_mul(&BLOCK_C, &BLOCK_A), &BLOCK_B);
    assert_ne!(cab, printed);
    assert_eq!(cab, [[29, 41, 8], [24, 37, 6], [5, 9, 1]]);
    assert_eq!(char_poly(&to_dense(&cab)), vec![1, -67, 61, -1]);
}

#[test]
fn characteristic_polynomials() {
    let m = substitution_matrix();
    assert_eq!(m.len(), 9);
    let want = poly_mul(&[1, 0, 0, -1], &[1, 0, 0, -62, 0, 0, 1]);
    assert_eq!(char_poly(&m), want);
    assert_eq!(format_poly(&char_poly(&m)), "x^9 - 63x^6 + 63x^3 - 1");
    let block = poly_mul(&[1, -1], &[1, -62, 1]);
    for blk in matrix_cubed_blocks().blocks() {
        assert_eq!(char_poly(&to_dense(&blk)), block);
        assert_eq!(det3(&blk), 1);
        assert_eq!(blk[0][0] + blk[1][1] + blk[2][2], 63);
    }
    for blk in [BLOCK_A, BLOCK_B, BLOCK_C] {
        assert_eq!(det3(&blk).abs(), 1);
    }
}

#[test]
fn eigenvalues() {
    let e = dominant_eigenvalue(&to_dense(&matrix_cubed_blocks().acb));
    assert!(e.error_bound < 1e-9);
    assert!((e.value - surd_15()).abs() < 1e-9, "{}", e.value);
    let m = substitution_eigenvalue();
    assert!((m.value - (4.0 + 15f64.sqrt()).powf(2.0 / 3.0)).abs() < 1e-9);
    assert!(m.error_bound < 1e-9);
}

#[test]
fn polynomial_helpers() {
    assert_eq!(char_poly(&[vec![2, 1], vec![1, 2]]), vec![1, -4, 3]);
    assert_eq!(poly_eval(&[1, -4, 3], 3.0), 0.0);
    assert_eq!(format_poly(&[1, 0, -20, 4]), "x^3 - 20x + 4");
    assert_eq!(format_poly(&[-1, 1]), "-x + 1");
}

#[test]
fn cache_is_shared_across_threads() {
    let handles: Vec<_> = (0..4)
        .map(|_| std::thread::spawn(|| worm(Wriggly, S, 4).unwrap()))
        .collect();
    let words: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(words.windows(2).all(|p| p[0] == p[1]));
}
