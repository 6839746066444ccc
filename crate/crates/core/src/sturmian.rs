// SPDX-License-Identifier: MIT OR Apache-2.0

//! Continued fractions, standard sequences and exact slopes.
//!
//! A slope `a = [0; c1, c2, ...]` gives the standard sequence
//! `s0 = 1`, `s1 = 0`, `s_{k+1} = s_k^{d_k} s_{k-1}` with `d1 = c1 - 1` and
//! `d_k = c_k` afterwards. For `c1 = 1` the first exponent is zero and
//! `s2 = s0`; the words from `s2` on are still prefixes of the
//! characteristic word, so that case is accepted.
//!
//! Continued fractions are written `0;3,(1,2,1,1)`: a leading `0;`, then
//! comma separated partial quotients, with an optional parenthesised
//! period at the end. Square brackets around the whole are allowed.

use crate::error::{Error, Result};
use crate::spectre::{mystic_e, mystic_o, worm, WormKind, WormSystem};
use crate::word::Word;
use num_rational::Ratio;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|c| *c == 0) {
            return Err(Error::Domain("partial quotients must be positive".into()));
        }
        if preperiod.is_empty() && period.is_empty() {
            return Err(Error::Domain("empty continued fraction".into()));
        }
        if period.is_empty() && preperiod == [1] {
            return Err(Error::Domain("[0;1] = 1 is not a slope in (0, 1)".into()));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Partial quotient `c_i`, `i >= 1`.
    pub fn term(&self, i: usize) -> Option<u64> {
        assert!(i >= 1, "partial quotients are numbered from 1");
        let i = i - 1;
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }

    /// Same value with at least `n` preperiod terms.
    fn unrolled(&self, n: usize) -> ContinuedFraction {
        let mut cf = self.clone();
        while cf.preperiod.len() < n && !cf.period.is_empty() {
            let c = cf.period.remove(0);
            cf.preperiod.push(c);
            cf.period.push(c);
        }
        cf
    }

    /// Expansion of `1 - a`.
    pub fn complement(&self) -> ContinuedFraction {
        let cf = self.unrolled(2);
        let mut pre = cf.preperiod.clone();
        if pre[0] >= 2 {
            pre[0] -= 1;
            pre.insert(0, 1);
        } else {
            // [0; 1, c2, c3, ...] -> [0; c2 + 1, c3, ...]
            pre.remove(0);
            pre[0] += 1;
        }
        ContinuedFraction { preperiod: pre, period: cf.period }.canonical()
    }

    /// Shortest period, and as little preperiod as possible.
    pub fn canonical(&self) -> ContinuedFraction {
        let mut cf = self.clone();
        let n = cf.period.len();
        if let Some(p) = (1..=n).find(|p| n % p == 0 && (0..n).all(|i| cf.period[i] == cf.period[i % p])) {
            cf.period.truncate(p);
        }
        while !cf.period.is_empty() && cf.preperiod.last() == cf.period.last() {
            cf.preperiod.pop();
            cf.period.rotate_right(1);
        }
        cf
    }

    /// Exponent `d_k` of the standard sequence.
    pub fn exponent(&self, k: usize) -> Option<u64> {
        let c = self.term(k)?;
        Some(if k == 1 { c - 1 } else { c })
    }

    /// Convergents `p_i / q_i` for `i = 1..=n`.
    pub fn convergents(&self, n: usize) -> Vec<(i128, i128)> {
        let (mut h, mut h1) = (0i128, 1i128);
        let (mut k, mut k1) = (1i128, 0i128);
        let mut out = Vec::new();
        for i in 1..=n {
            let Some(c) = self.term(i) else { break };
            let c = c as i128;
            let (nh, nk) = (c * h + h1, c * k + k1);
            h1 = h;
            k1 = k;
            h = nh;
            k = nk;
            out.push((h, k));
        }
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "0;{}", join(&self.preperiod))?;
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                f.write_str(",")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        Ok(())
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("continued fraction {s:?}: {why}"));
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('[') && t.ends_with(']') {
            t = t[1..t.len() - 1].to_string();
        }
        let rest = t.strip_prefix("0;").ok_or_else(|| bad("expected a leading \"0;\""))?;
        let (pre, per) = match rest.find('(') {
            Some(i) => {
                let body = rest[i + 1..].strip_suffix(')').ok_or_else(|| bad("unclosed period"))?;
                (rest[..i].trim_end_matches(','), body)
            }
            None => (rest, ""),
        };
        let nums = |part: &str| -> Result<Vec<u64>> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.parse::<u64>().map_err(|_| bad(&format!("bad partial quotient {x:?}"))))
                .collect()
        };
        let (pre, per) = (nums(pre)?, nums(per)?);
        if rest.contains('(') && per.is_empty() {
            return Err(bad("empty period"));
        }
        ContinuedFraction::new(pre, per)
    }
}

/// `s_0, ..., s_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardSequence {
    pub words: Vec<Word>,
}

impl StandardSequence {
    pub fn last(&self) -> &Word {
        self.words.last().expect("s0 and s1 always exist")
    }
}

pub fn standard_sequence(cf: &ContinuedFraction, k: usize) -> Result<StandardSequence> {
    let mut words = vec![Word::from_bits(vec![1]), Word::from_bits(vec![0])];
    for j in 1..k {
        let d = cf.exponent(j).ok_or_else(|| {
            Error::Domain(format!("{cf} has no partial quotient c{j} for s{}", j + 1))
        })?;
        let next = Word::concat([&words[j].repeat(d as usize), &words[j - 1]]);
        words.push(next);
    }
    words.truncate(k + 1);
    Ok(StandardSequence { words })
}

/// The first `n` symbols of the characteristic word. A finite expansion
/// has a periodic word: its last standard word repeated.
pub fn characteristic_prefix(cf: &ContinuedFraction, n: usize) -> Result<Word> {
    let mut words = vec![Word::from_bits(vec![1]), Word::from_bits(vec![0])];
    let mut j = 1;
    while words.len() < 3 || words[j].len() < n {
        match cf.exponent(j) {
            Some(d) => {
                let next = Word::concat([&words[j].repeat(d as usize), &words[j - 1]]);
                words.push(next);
                j += 1;
            }
            None => {
                let last = &words[j];
                return Ok(last.repeat(n / last.len() + 1).truncated(n));
            }
        }
    }
    Ok(words[j].truncated(n))
}

/// An element `a + b sqrt(d)` of a real quadratic field, `d` squarefree.
/// Rationals have `b = 0` and `d = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub a: Q,
    pub b: Q,
    pub d: i128,
}

impl QuadSurd {
    pub fn rational(a: Q) -> Self {
        QuadSurd { a, b: Q::from_integer(0), d: 1 }
    }

    /// `(p + s sqrt(disc)) / q` with the square part of `disc` pulled out.
    pub fn from_parts(p: i128, s: i128, disc: i128, q: i128) -> Self {
        assert!(disc >= 0 && q != 0);
        let (sq, free) = square_split(disc);
        let a = Q::new(p, q);
        let b = Q::new(s * sq, q);
        if free == 1 || b == Q::from_integer(0) {
            QuadSurd::rational(a + if free == 1 { b } else { Q::from_integer(0) })
        } else {
            QuadSurd { a, b, d: free }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b == Q::from_integer(0)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
        f(self.a) + f(self.b) * (self.d as f64).sqrt()
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd { b: -self.b, ..*self }
    }

    fn field(&self, other: &Self) -> i128 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "surds from different fields");
                self.d
            }
        }
    }

    fn normalized(self) -> Self {
        if self.is_rational() {
            QuadSurd::rational(self.a)
        } else {
            self
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.field(o);
        QuadSurd { a: self.a + o.a, b: self.b + o.b, d }.normalized()
    }

    pub fn neg(&self) -> Self {
        QuadSurd { a: -self.a, b: -self.b, d: self.d }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.field(o);
        let dq = Q::from_integer(d);
        QuadSurd { a: self.a * o.a + self.b * o.b * dq, b: self.a * o.b + self.b * o.a, d }.normalized()
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Q {
        self.a * self.a - self.b * self.b * Q::from_integer(self.d)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let n = o.norm();
        if n == Q::from_integer(0) {
            return Err(Error::Domain("division by zero surd".into()));
        }
        let num = self.mul(&o.conjugate());
        Ok(QuadSurd { a: num.a / n, b: num.b / n, d: num.d }.normalized())
    }

    /// Primitive integer `[A, B, C]` with `A x^2 + B x + C = 0`, `A > 0`;
    /// `[0, den, -num]` for a rational.
    pub fn minimal_polynomial(&self) -> [i128; 3] {
        if self.is_rational() {
            return [0, *self.a.denom(), -*self.a.numer()];
        }
        // x^2 - 2a x + (a^2 - d b^2)
        let coeffs = [Q::from_integer(1), -self.a * 2, self.norm()];
        let l = coeffs.iter().fold(1i128, |acc, c| lcm(acc, *c.denom()));
        let ints: Vec<i128> = coeffs.iter().map(|c| (c * l).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, c| gcd(acc, *c));
        [ints[0] / g, ints[1] / g, ints[2] / g]
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        // (p + s sqrt(d)) / q over a common denominator
        let q = lcm(*self.a.denom(), *self.b.denom());
        let p = (self.a * q).to_integer();
        let s = (self.b * q).to_integer();
        let sign = if s < 0 { "-" } else { "+" };
        let mag = s.abs();
        let root = if mag == 1 { format!("sqrt({})", self.d) } else { format!("{mag}sqrt({})", self.d) };
        if q == 1 {
            write!(f, "{p} {sign} {root}")
        } else {
            write!(f, "({p} {sign} {root})/{q}")
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// `n = sq^2 * free` with `free` squarefree.
fn square_split(n: i128) -> (i128, i128) {
    if n == 0 {
        return (0, 1);
    }
    let (mut sq, mut free, mut rest) = (1i128, 1i128, n);
    let mut p = 2i128;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        sq *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (sq, free * rest)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeValue {
    #[serde(serialize_with = "ser_surd")]
    pub exact: QuadSurd,
    pub approx: f64,
}

fn ser_surd<S: serde::Serializer>(q: &QuadSurd, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// The exact value of a finite or eventually periodic expansion.
pub fn slope_value(cf: &ContinuedFraction) -> Result<SlopeValue> {
    let one = |x: i128| QuadSurd::rational(Q::from_integer(x));
    // tail value: the purely periodic part, or nothing for a finite expansion
    let tail = if cf.period.is_empty() {
        None
    } else {
        // y = [p1; p2, ..., pr, y] = (P y + P') / (Q y + Q')
        let (mut p, mut p1, mut q, mut q1) = (1i128, 0i128, 0i128, 1i128);
        for c in &cf.period {
            let c = *c as i128;
            let (np, nq) = (c * p + p1, c * q + q1);
            p1 = p;
            q1 = q;
            p = np;
            q = nq;
        }
        // Q y^2 + (Q' - P) y - P' = 0, positive root
        let disc = (q1 - p) * (q1 - p) + 4 * q * p1;
        Some(QuadSurd::from_parts(p - q1, 1, disc, 2 * q))
    };
    // x = [0; c1, ..., cm, tail]
    let mut x = match tail {
        Some(y) => y,
        None => {
            let last = *cf.preperiod.last().ok_or_else(|| Error::Domain("empty expansion".into()))?;
            one(last as i128)
        }
    };
    let pre: &[u64] = if tail.is_some() { &cf.preperiod } else { &cf.preperiod[..cf.preperiod.len() - 1] };
    for c in pre.iter().rev() {
        x = one(*c as i128).add(&one(1).div(&x)?);
    }
    let exact = one(1).div(&x)?;
    Ok(SlopeValue { exact, approx: exact.to_f64() })
}

/// First `n` symbols of the characteristic words of `cf` and `cf2` are
/// complements of each other. The slopes must add up to one.
pub fn conjugate_complement_check(
    cf: &ContinuedFraction,
    cf2: &ContinuedFraction,
    n: usize,
) -> Result<bool> {
    let (a, b) = (slope_value(cf)?.approx, slope_value(cf2)?.approx);
    if (a + b - 1.0).abs() > 1e-9 {
        return Err(Error::SlopeMismatch { a, b });
    }
    Ok(characteristic_prefix(cf, n)?.complement() == characteristic_prefix(cf2, n)?)
}

/// The slope whose standard sequence lines up with a worm system.
pub fn worm_slope(system: WormSystem) -> ContinuedFraction {
    match system {
        WormSystem::Articulated => ContinuedFraction { preperiod: vec![3], period: vec![1, 2, 1, 1] },
        WormSystem::Wriggly => ContinuedFraction { preperiod: vec![4], period: vec![1, 1, 1, 2] },
    }
}

/// One aligned row: `s_index` equals the listed worm expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub index: usize,
    pub expression: String,
    pub holds: bool,
}

/// Rows for worm levels `0..k`: four standard words per level.
pub fn worm_table(system: WormSystem, k: u32) -> Result<Vec<TableRow>> {
    let cf = worm_slope(system);
    let seq = standard_sequence(&cf, 4 * k as usize + 2)?;
    let (e, o) = (mystic_e(), mystic_o());
    let mut rows = Vec::new();
    for j in 0..k {
        let s = worm(system, WormKind::S, j)?;
        let i = worm(system, WormKind::I, j)?;
        let s1 = worm(system, WormKind::S, j + 1)?;
        let i1 = worm(system, WormKind::I, j + 1)?;
        let base = 4 * j as usize + 3;
        let (n, m) = (j, j + 1);
        let expected: [(String, Word); 4] = match system {
            WormSystem::Articulated => [
                (format!("S{n}I{n}S{n}I{n}S{n}E"), Word::concat([&*s, &*i, &*s, &*i, &*s, &e])),
                (format!("S{m}O"), Word::concat([&*s1, &o])),
                (format!("S{m}I{m}"), Word::concat([&*s1, &*i1])),
                (format!("S{m}I{m}S{m}O"), Word::concat([&*s1, &*i1, &*s1, &o])),
            ],
            WormSystem::Wriggly => [
                (format!("S{n}I{n}"), Word::concat([&*s, &*i])),
                (format!("S{n}I{n}S{n}O"), Word::concat([&*s, &*i, &*s, &o])),
                (format!("S{n}I{n}S{n}I{n}S{n}E"), Word::concat([&*s, &*i, &*s, &*i, &*s, &e])),
                (format!("S{m}O"), Word::concat([&*s1, &o])),
            ],
        };
        for (off, (expression, word)) in expected.into_iter().enumerate() {
            let index = base + off;
            rows.push(TableRow { index, expression, holds: seq.words[index] == word });
        }
    }
    Ok(rows)
}

/// Every aligned row for worm levels below `k` holds.
pub fn worm_sturmian_check(system: WormSystem, k: u32) -> Result<bool> {
    Ok(worm_table(system, k)?.iter().all(|r| r.holds))
}
