//! Strings and star operations for pairs of simple reflections whose product
//! has order 3 or 4.

use std::fmt;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::weyl::{GenSet, Generator, Side, WeylElement};

/// Unordered pair `{s, t}` of simple reflections with `st` of order `m ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarPair {
    s: Generator,
    t: Generator,
}

impl StarPair {
    /// The three pairs available in this group: `{s0,s2}`, `{s1,s2}`, `{s2,s3}`.
    pub const ALL: [StarPair; 3] = [
        StarPair {
            s: Generator::S0,
            t: Generator::S2,
        },
        StarPair {
            s: Generator::S1,
            t: Generator::S2,
        },
        StarPair {
            s: Generator::S2,
            t: Generator::S3,
        },
    ];

    pub fn new(a: Generator, b: Generator) -> Result<StarPair> {
        let (s, t) = (a.min(b), a.max(b));
        if t == Generator::Tau || s == t || s.coxeter_order(t) < 3 {
            return Err(Error::Config(format!("{{{a},{b}}} is not a braid pair")));
        }
        Ok(StarPair { s, t })
    }

    /// Parses two labels, e.g. `"02"` or `"23"`.
    pub fn from_labels(labels: &str) -> Result<StarPair> {
        let gens: Vec<_> = labels.chars().filter_map(Generator::from_label).collect();
        match gens.as_slice() {
            [a, b] if labels.chars().count() == 2 => StarPair::new(*a, *b),
            _ => Err(Error::Config(format!("bad generator pair {labels:?}"))),
        }
    }

    pub fn gens(self) -> (Generator, Generator) {
        (self.s, self.t)
    }

    pub fn as_set(self) -> GenSet {
        GenSet::from_gens([self.s, self.t])
    }

    /// Order `m` of `st`; strings have `m - 1` elements.
    pub fn order(self) -> u32 {
        self.s.coxeter_order(self.t)
    }

    fn other(self, g: Generator) -> Generator {
        if g == self.s {
            self.t
        } else {
            self.s
        }
    }
}

impl fmt::Display for StarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.s, self.t)
    }
}

/// Position of an element inside a left or right string: on the right side
/// the string is `base·a1, base·a1a2, …` with letters alternating in the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringContext {
    pub pair: StarPair,
    pub side: Side,
    pub base: WeylElement,
    pub first: Generator,
    /// 1-based position in the string.
    pub position: u32,
}

impl StringContext {
    pub fn order(&self) -> u32 {
        self.pair.order()
    }

    /// The `i`-th element of the string, `1 ≤ i ≤ m - 1`.
    pub fn element(&self, i: u32) -> WeylElement {
        let mut w = self.base;
        let mut g = self.first;
        for _ in 0..i {
            w = w.mul_side(g, self.side);
            g = self.pair.other(g);
        }
        w
    }

    pub fn elements(&self) -> Vec<WeylElement> {
        (1..self.order()).map(|i| self.element(i)).collect()
    }
}

/// Locates `w` in its string for `pair` on `side`; `None` unless exactly one
/// of the two generators is a descent of `w` on that side.
pub fn string_context(w: &WeylElement, pair: StarPair, side: Side) -> Option<StringContext> {
    let (s, t) = pair.gens();
    if w.has_descent(s, side) == w.has_descent(t, side) {
        return None;
    }
    let mut base = *w;
    let mut last = s;
    let mut position = 0;
    while let Some(g) = [s, t].into_iter().find(|g| base.has_descent(*g, side)) {
        base = base.mul_side(g, side);
        last = g;
        position += 1;
    }
    Some(StringContext {
        pair,
        side,
        base,
        first: last,
        position,
    })
}

pub fn in_string(w: &WeylElement, pair: StarPair, side: Side) -> bool {
    let (s, t) = pair.gens();
    w.has_descent(s, side) != w.has_descent(t, side)
}

/// `*w` (left) or `w*` (right): the `(m - i)`-th element of the string whose
/// `i`-th element is `w`.
pub fn star(w: &WeylElement, pair: StarPair, side: Side) -> Result<WeylElement> {
    let ctx = string_context(w, pair, side).ok_or_else(|| Error::NotInString {
        elem: w.to_string(),
        pair: pair.to_string(),
        side: side.name(),
    })?;
    Ok(ctx.element(ctx.order() - ctx.position))
}

/// Right star operations preserve left cells, so two elements whose right
/// descent sets can be driven apart by a common sequence of right stars lie
/// in different left cells. Returns such a sequence (possibly empty) when
/// one of length at most `depth` exists.
pub fn separating_right_stars(x: &WeylElement, y: &WeylElement, depth: usize) -> Option<Vec<StarPair>> {
    let mut frontier = vec![(*x, *y, Vec::new())];
    let mut seen: FxHashSet<(WeylElement, WeylElement)> = FxHashSet::default();
    seen.insert((*x, *y));
    for _ in 0..=depth {
        let mut next = Vec::new();
        for (a, b, path) in frontier {
            if a.right_descents() != b.right_descents() {
                return Some(path);
            }
            for pair in StarPair::ALL {
                if let (Ok(a2), Ok(b2)) = (star(&a, pair, Side::Right), star(&b, pair, Side::Right)) {
                    if seen.insert((a2, b2)) {
                        let mut p = path.clone();
                        p.push(pair);
                        next.push((a2, b2, p));
                    }
                }
            }
        }
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{ball, evaluate};

    fn w(s: &str) -> WeylElement {
        evaluate(s).unwrap()
    }

    #[test]
    fn star_examples() {
        let p12 = StarPair::from_labels("12").unwrap();
        assert_eq!(star(&w("013"), p12, Side::Right).unwrap(), w("0132"));
        assert_eq!(star(&w("0132"), p12, Side::Right).unwrap(), w("013"));
        let p23 = StarPair::from_labels("23").unwrap();
        let ctx = string_context(&w("0132"), p23, Side::Right).unwrap();
        assert_eq!(ctx.elements(), vec![w("013"), w("0132"), w("01323")]);
        assert_eq!(ctx.position, 2);
        assert_eq!(star(&w("0132"), p23, Side::Right).unwrap(), w("0132"));
        assert_eq!(star(&w("01323"), p23, Side::Right).unwrap(), w("013"));
        assert!(star(&w("2323"), p23, Side::Right).is_err());
        assert!(star(&w("01"), p23, Side::Right).is_err());
        assert!(StarPair::from_labels("01").is_err());
    }

    #[test]
    fn star_is_an_involution_and_commutes_across_sides() {
        for x in ball(6, true) {
            for p in StarPair::ALL {
                for side in [Side::Left, Side::Right] {
                    if let Ok(y) = star(&x, p, side) {
                        assert_eq!(star(&y, p, side).unwrap(), x);
                        assert!(in_string(&y, p, side));
                    }
                }
                for q in StarPair::ALL {
                    if let (Ok(l), Ok(r)) = (star(&x, p, Side::Left), star(&x, q, Side::Right)) {
                        let lr = star(&l, q, Side::Right).unwrap();
                        let rl = star(&r, p, Side::Left).unwrap();
                        assert_eq!(lr, rl, "{x} {p} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn left_star_is_inverse_of_right_star() {
        for x in ball(6, false) {
            for p in StarPair::ALL {
                let l = star(&x, p, Side::Left).ok();
                let r = star(&x.inverse(), p, Side::Right).ok().map(|y| y.inverse());
                assert_eq!(l, r);
            }
        }
    }
}
