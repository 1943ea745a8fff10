//! The extended affine Weyl group `W = W0 ⋉ Z^3` of type B̃3.
//!
//! An element acts on `R^3` by `x ↦ σ(x) + λ` with `σ` a signed permutation
//! and `λ ∈ Z^3`. The affine reflections of the subgroup `W'` generated by
//! `s0..s3` are the reflections in the hyperplanes `x_i = k` and
//! `x_i ± x_j = k`; its fundamental alcove is
//! `x1 > x2 > x3 > 0, x1 + x2 < 1`, with walls
//!
//! * `s1`: `x1 = x2`
//! * `s2`: `x2 = x3`
//! * `s3`: `x3 = 0`
//! * `s0`: `x1 + x2 = 1`
//!
//! and `τ: x ↦ (1 - x1, x2, x3)` is the non-trivial element stabilizing the
//! alcove. `W'` is the set of elements whose translation has even coordinate
//! sum; the odd ones form the coset `τW'`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S0,
    S1,
    S2,
    S3,
    Tau,
}

impl Generator {
    /// The simple reflections, in label order.
    pub const SIMPLE: [Generator; 4] = [Generator::S0, Generator::S1, Generator::S2, Generator::S3];

    pub fn index(self) -> usize {
        match self {
            Generator::S0 => 0,
            Generator::S1 => 1,
            Generator::S2 => 2,
            Generator::S3 => 3,
            Generator::Tau => 4,
        }
    }

    pub fn simple(i: usize) -> Generator {
        Self::SIMPLE[i]
    }

    pub fn label(self) -> char {
        match self {
            Generator::S0 => '0',
            Generator::S1 => '1',
            Generator::S2 => '2',
            Generator::S3 => '3',
            Generator::Tau => 't',
        }
    }

    pub fn from_label(c: char) -> Option<Generator> {
        Some(match c {
            '0' => Generator::S0,
            '1' => Generator::S1,
            '2' => Generator::S2,
            '3' => Generator::S3,
            't' | 'τ' => Generator::Tau,
            _ => return None,
        })
    }

    pub fn length(self) -> u32 {
        if self == Generator::Tau {
            0
        } else {
            1
        }
    }

    /// `τ s τ`.
    pub fn tau_conjugate(self) -> Generator {
        match self {
            Generator::S0 => Generator::S1,
            Generator::S1 => Generator::S0,
            g => g,
        }
    }

    /// Order of `s t` in the Coxeter group.
    pub fn coxeter_order(self, other: Generator) -> u32 {
        use Generator::*;
        if self == other {
            return 1;
        }
        match (self.min(other), self.max(other)) {
            (S0, S2) | (S1, S2) => 3,
            (S2, S3) => 4,
            (S0, S1) | (S0, S3) | (S1, S3) => 2,
            _ => panic!("coxeter_order is defined on simple reflections only"),
        }
    }

    pub fn as_element(self) -> WeylElement {
        match self {
            Generator::S0 => WeylElement {
                perm: [1, 0, 2],
                signs: [-1, -1, 1],
                trans: [1, 1, 0],
            },
            Generator::S1 => WeylElement {
                perm: [1, 0, 2],
                signs: [1, 1, 1],
                trans: [0, 0, 0],
            },
            Generator::S2 => WeylElement {
                perm: [0, 2, 1],
                signs: [1, 1, 1],
                trans: [0, 0, 0],
            },
            Generator::S3 => WeylElement {
                perm: [0, 1, 2],
                signs: [1, 1, -1],
                trans: [0, 0, 0],
            },
            Generator::Tau => WeylElement {
                perm: [0, 1, 2],
                signs: [-1, 1, 1],
                trans: [1, 0, 0],
            },
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tau => write!(f, "tau"),
            g => write!(f, "s{}", g.label()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A set of simple reflections, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u8);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_gens<I: IntoIterator<Item = Generator>>(gens: I) -> GenSet {
        let mut bits = 0u8;
        for g in gens {
            debug_assert!(g != Generator::Tau);
            bits |= 1 << g.index();
        }
        GenSet(bits)
    }

    /// Parses a label string such as `"013"`.
    pub fn from_labels(labels: &str) -> Option<GenSet> {
        let mut gens = Vec::new();
        for c in labels.chars() {
            match Generator::from_label(c)? {
                Generator::Tau => return None,
                g => gens.push(g),
            }
        }
        Some(GenSet::from_gens(gens))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, g: Generator) -> bool {
        g != Generator::Tau && self.0 & (1 << g.index()) != 0
    }

    pub fn insert(&mut self, g: Generator) {
        self.0 |= 1 << g.index();
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Generator> {
        Generator::SIMPLE.into_iter().filter(move |g| self.contains(*g))
    }

    /// Labels in increasing order, e.g. `"013"`.
    pub fn labels(self) -> String {
        self.iter().map(Generator::label).collect()
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A word over `{0,1,2,3,t}`; evaluation is left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self) -> WeylElement {
        self.0
            .iter()
            .fold(WeylElement::identity(), |acc, g| acc.mul(&g.as_element()))
    }

    /// Number of letters other than `t`.
    pub fn simple_len(&self) -> usize {
        self.0.iter().filter(|g| **g != Generator::Tau).count()
    }

    /// A word is reduced when its non-`τ` letters count the length of its value.
    pub fn is_reduced(&self) -> bool {
        self.simple_len() as u32 == self.evaluate().length()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.label())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        let s = if s == "e" { "" } else { s };
        s.chars()
            .map(|c| Generator::from_label(c).ok_or_else(|| Error::InvalidWord(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Parses a word and evaluates it.
pub fn evaluate(word: &str) -> Result<WeylElement> {
    Ok(word.parse::<Word>()?.evaluate())
}

/// Element of `W`: `x ↦ σ(x) + λ` with `σ(e_j) = signs[j]·e_{perm[j]}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: [u8; 3],
    signs: [i8; 3],
    trans: [i32; 3],
}

// Interior point (1/2, 1/3, 1/6) of the fundamental alcove, scaled by 6.
const ALCOVE_POINT: [i32; 3] = [3, 2, 1];
const ALCOVE_SCALE: i32 = 6;

impl WeylElement {
    pub const fn identity() -> WeylElement {
        WeylElement {
            perm: [0, 1, 2],
            signs: [1, 1, 1],
            trans: [0, 0, 0],
        }
    }

    pub fn from_parts(perm: [u8; 3], signs: [i8; 3], trans: [i32; 3]) -> Option<WeylElement> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p as usize] {
                return None;
            }
            seen[p as usize] = true;
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return None;
        }
        Some(WeylElement { perm, signs, trans })
    }

    pub fn tau() -> WeylElement {
        Generator::Tau.as_element()
    }

    /// The finite part as `(perm, signs)`.
    pub fn finite_part(&self) -> ([u8; 3], [i8; 3]) {
        (self.perm, self.signs)
    }

    pub fn translation(&self) -> [i32; 3] {
        self.trans
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity()
    }

    fn apply_linear(&self, x: [i32; 3]) -> [i32; 3] {
        let mut y = [0; 3];
        for j in 0..3 {
            y[self.perm[j] as usize] = self.signs[j] as i32 * x[j];
        }
        y
    }

    /// Image of an integer point.
    pub fn act(&self, x: [i32; 3]) -> [i32; 3] {
        let y = self.apply_linear(x);
        [y[0] + self.trans[0], y[1] + self.trans[1], y[2] + self.trans[2]]
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let mut perm = [0u8; 3];
        let mut signs = [1i8; 3];
        for j in 0..3 {
            let k = other.perm[j] as usize;
            perm[j] = self.perm[k];
            signs[j] = other.signs[j] * self.signs[k];
        }
        let lt = self.apply_linear(other.trans);
        WeylElement {
            perm,
            signs,
            trans: [lt[0] + self.trans[0], lt[1] + self.trans[1], lt[2] + self.trans[2]],
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = [0u8; 3];
        let mut signs = [1i8; 3];
        for j in 0..3 {
            perm[self.perm[j] as usize] = j as u8;
            signs[self.perm[j] as usize] = self.signs[j];
        }
        let inv = WeylElement {
            perm,
            signs,
            trans: [0; 3],
        };
        let t = inv.apply_linear(self.trans);
        WeylElement {
            perm,
            signs,
            trans: [-t[0], -t[1], -t[2]],
        }
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }

    pub fn left_mul(&self, g: Generator) -> WeylElement {
        g.as_element().mul(self)
    }

    pub fn right_mul(&self, g: Generator) -> WeylElement {
        self.mul(&g.as_element())
    }

    pub fn mul_side(&self, g: Generator, side: Side) -> WeylElement {
        match side {
            Side::Left => self.left_mul(g),
            Side::Right => self.right_mul(g),
        }
    }

    /// Whether the element lies in the coset `τW'`.
    pub fn in_tau_coset(&self) -> bool {
        (self.trans[0] + self.trans[1] + self.trans[2]).rem_euclid(2) == 1
    }

    /// Splits `w = τ^ε·w'` with `w' ∈ W'`.
    pub fn split_tau(&self) -> (bool, WeylElement) {
        if self.in_tau_coset() {
            (true, WeylElement::tau().mul(self))
        } else {
            (false, *self)
        }
    }

    /// Number of affine hyperplanes separating the fundamental alcove from
    /// its image.
    pub fn length(&self) -> u32 {
        let y = self.act_scaled();
        let forms = [
            y[0],
            y[1],
            y[2],
            y[0] - y[1],
            y[0] - y[2],
            y[1] - y[2],
            y[0] + y[1],
            y[0] + y[2],
            y[1] + y[2],
        ];
        forms.iter().map(|v| v.div_euclid(ALCOVE_SCALE).unsigned_abs()).sum()
    }

    fn act_scaled(&self) -> [i32; 3] {
        let y = self.apply_linear(ALCOVE_POINT);
        [
            y[0] + ALCOVE_SCALE * self.trans[0],
            y[1] + ALCOVE_SCALE * self.trans[1],
            y[2] + ALCOVE_SCALE * self.trans[2],
        ]
    }

    pub fn has_descent(&self, g: Generator, side: Side) -> bool {
        if g == Generator::Tau {
            return false;
        }
        self.mul_side(g, side).length() < self.length()
    }

    pub fn descents(&self, side: Side) -> GenSet {
        let l = self.length();
        GenSet::from_gens(
            Generator::SIMPLE
                .into_iter()
                .filter(|g| self.mul_side(*g, side).length() < l),
        )
    }

    pub fn left_descents(&self) -> GenSet {
        self.descents(Side::Left)
    }

    pub fn right_descents(&self) -> GenSet {
        self.descents(Side::Right)
    }

    /// Lexicographically least reduced word; a leading `t` marks the τ-coset.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::new();
        let (tau, mut w) = self.split_tau();
        if tau {
            letters.push(Generator::Tau);
        }
        let mut l = w.length();
        while l > 0 {
            let g = Generator::SIMPLE
                .into_iter()
                .find(|g| w.left_mul(*g).length() < l)
                .expect("element of positive length has a left descent");
            letters.push(g);
            w = w.left_mul(g);
            l -= 1;
        }
        Word(letters)
    }

    /// Bruhat order, by the descent recursion: for a left descent `s` of `w`,
    /// `y ≤ w` iff `min(y, sy) ≤ sw`.
    pub fn bruhat_leq(&self, w: &WeylElement) -> bool {
        if self.in_tau_coset() != w.in_tau_coset() {
            return false;
        }
        let (_, mut y) = self.split_tau();
        let (_, mut w) = w.split_tau();
        let mut ly = y.length();
        let mut lw = w.length();
        loop {
            if ly > lw {
                return false;
            }
            if ly == lw {
                return y == w;
            }
            let s = Generator::SIMPLE
                .into_iter()
                .find(|g| w.left_mul(*g).length() < lw)
                .expect("lw > ly >= 0");
            w = w.left_mul(s);
            lw -= 1;
            let sy = y.left_mul(s);
            if ly > 0 && sy.length() < ly {
                y = sy;
                ly -= 1;
            }
        }
    }

    pub fn bruhat_lt(&self, w: &WeylElement) -> bool {
        self != w && self.bruhat_leq(w)
    }

    /// Sort key used for all user-visible orderings.
    pub fn sort_key(&self) -> (u32, Word) {
        (self.length(), self.reduced_word())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{w}")
        }
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{self}]")
    }
}

impl FromStr for WeylElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<WeylElement> {
        evaluate(s)
    }
}

/// All elements of length at most `radius` (in `W'`, and also in `τW'` when
/// `include_tau_coset`), sorted by length and then by reduced word.
pub fn ball(radius: u32, include_tau_coset: bool) -> Vec<WeylElement> {
    let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let e = WeylElement::identity();
    seen.insert(e);
    queue.push_back((e, 0u32));
    while let Some((w, l)) = queue.pop_front() {
        out.push(w);
        if l == radius {
            continue;
        }
        for g in Generator::SIMPLE {
            let ws = w.right_mul(g);
            if ws.length() == l + 1 && seen.insert(ws) {
                queue.push_back((ws, l + 1));
            }
        }
    }
    if include_tau_coset {
        let tau = WeylElement::tau();
        let twisted: Vec<_> = out.iter().map(|w| tau.mul(w)).collect();
        out.extend(twisted);
    }
    let mut keyed: Vec<_> = out.into_iter().map(|w| (w.sort_key(), w)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, w)| w).collect()
}

/// The lower Bruhat interval `{y : y ≤ w}`, as all products of subwords of
/// a reduced word of `w`, sorted by length and reduced word.
pub fn lower_interval(w: &WeylElement) -> Vec<WeylElement> {
    let word = w.reduced_word();
    let mut set: FxHashSet<WeylElement> = FxHashSet::default();
    let mut start = WeylElement::identity();
    let mut letters = word.letters();
    if letters.first() == Some(&Generator::Tau) {
        start = WeylElement::tau();
        letters = &letters[1..];
    }
    set.insert(start);
    for g in letters {
        let ext: Vec<_> = set.iter().map(|x| x.right_mul(*g)).collect();
        set.extend(ext);
    }
    let mut keyed: Vec<_> = set.into_iter().map(|x| (x.sort_key(), x)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, x)| x).collect()
}

/// Longest element of the finite parabolic subgroup generated by `gens`,
/// found by enumerating the subgroup. Returns `None` for the whole of `S`.
pub fn parabolic_longest(gens: GenSet) -> Option<WeylElement> {
    if gens.len() == 4 {
        return None;
    }
    let mut w = WeylElement::identity();
    loop {
        let l = w.length();
        match gens.iter().find(|g| w.left_mul(*g).length() > l) {
            Some(g) => w = w.left_mul(g),
            None => return Some(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylElement {
        evaluate(s).unwrap()
    }

    fn pow(x: WeylElement, n: u32) -> WeylElement {
        (0..n).fold(WeylElement::identity(), |acc, _| acc.mul(&x))
    }

    #[test]
    fn defining_relations() {
        use Generator::*;
        let e = WeylElement::identity();
        for g in Generator::SIMPLE {
            assert_eq!(pow(g.as_element(), 2), e);
            for h in Generator::SIMPLE {
                if g != h {
                    let m = g.coxeter_order(h);
                    let gh = g.as_element().mul(&h.as_element());
                    assert_eq!(pow(gh, m), e, "({g}{h})^{m}");
                    for k in 1..m {
                        assert_ne!(pow(gh, k), e);
                    }
                }
            }
        }
        let tau = Tau.as_element();
        assert_eq!(tau.mul(&tau), e);
        assert_eq!(tau.mul(&S0.as_element()).mul(&tau), S1.as_element());
        assert_eq!(tau.mul(&S2.as_element()).mul(&tau), S2.as_element());
        assert_eq!(tau.mul(&S3.as_element()).mul(&tau), S3.as_element());
    }

    #[test]
    fn mul_examples() {
        let e = WeylElement::identity();
        let x = w("0132");
        assert_eq!(e.mul(&x), x);
        assert_eq!(w("00"), e);
        assert_eq!(w("t0t"), w("1"));
        assert_eq!(x.mul(&x.inverse()), e);
    }

    #[test]
    fn lengths() {
        assert_eq!(WeylElement::identity().length(), 0);
        assert_eq!(WeylElement::tau().length(), 0);
        assert_eq!(w("01321320").length(), 8);
        for g in Generator::SIMPLE {
            assert_eq!(g.as_element().length(), 1);
        }
    }

    #[test]
    fn descent_examples() {
        assert!(WeylElement::identity().right_descents().is_empty());
        assert_eq!(w("013").right_descents().labels(), "013");
        assert_eq!(w("0132").right_descents().labels(), "2");
    }

    #[test]
    fn reduced_word_examples() {
        assert_eq!(WeylElement::identity().reduced_word().to_string(), "");
        assert_eq!(w("31").reduced_word().to_string(), "13");
        assert_eq!(w("t0t").reduced_word().to_string(), "1");
        assert_eq!(w("t").reduced_word().to_string(), "t");
    }

    #[test]
    fn bruhat_examples() {
        assert!(WeylElement::identity().bruhat_leq(&w("0132")));
        assert!(w("121").bruhat_leq(&w("1210321")));
        assert!(!w("3").bruhat_leq(&w("121")));
        assert!(!WeylElement::identity().bruhat_leq(&WeylElement::tau()));
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball(0, false), vec![WeylElement::identity()]);
        let b1 = ball(1, false);
        assert_eq!(b1.len(), 5);
        assert_eq!(ball(3, false).len(), 31);
        assert_eq!(ball(3, true).len(), 62);
    }

    // Poincaré series of B̃3: prod over exponents e in {1,3,5} of
    // (1 + q + ... + q^e) / (1 - q^e).
    fn poincare_series(n: usize) -> Vec<u64> {
        let mul = |a: &[u64], b: &[u64]| {
            let mut c = vec![0u64; n];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if i + j < n {
                        c[i + j] += x * y;
                    }
                }
            }
            c
        };
        let mut s = vec![0u64; n];
        s[0] = 1;
        for e in [1usize, 3, 5] {
            let trunc: Vec<u64> = (0..n).map(|i| (i <= e) as u64).collect();
            let geo: Vec<u64> = (0..n).map(|i| (i % e == 0) as u64).collect();
            s = mul(&s, &mul(&trunc, &geo));
        }
        s
    }

    #[test]
    fn ball_matches_poincare_series() {
        let series = poincare_series(11);
        let b = ball(10, false);
        let mut counts = vec![0u64; 11];
        for w in &b {
            counts[w.length() as usize] += 1;
        }
        assert_eq!(counts, series);
    }

    #[test]
    fn length_is_word_distance() {
        // BFS distance in the Cayley graph versus the hyperplane count.
        let mut dist = rustc_hash::FxHashMap::default();
        let mut queue = VecDeque::new();
        dist.insert(WeylElement::identity(), 0u32);
        queue.push_back(WeylElement::identity());
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == 6 {
                continue;
            }
            for g in Generator::SIMPLE {
                let y = x.right_mul(g);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        for (x, d) in &dist {
            if *d <= 5 {
                assert_eq!(x.length(), *d, "{x:?}");
            }
        }
    }

    #[test]
    fn parabolic_longest_lengths() {
        let len = |l: &str| parabolic_longest(GenSet::from_labels(l).unwrap()).unwrap().length();
        assert_eq!(len("23"), 4);
        assert_eq!(len("012"), 6);
        assert_eq!(len("023"), 9);
        assert_eq!(len("123"), 9);
        assert_eq!(len("013"), 3);
        assert_eq!(len("02"), 3);
        assert!(parabolic_longest(GenSet::from_labels("0123").unwrap()).is_none());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("01x".parse::<Word>().is_err());
        assert_eq!("".parse::<Word>().unwrap().evaluate(), WeylElement::identity());
    }
}
