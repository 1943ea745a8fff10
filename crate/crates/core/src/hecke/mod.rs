//! The Hecke algebra over `Z[v, v^-1]`, `v = q^(1/2)`, in the normalized
//! standard basis `T̃_w = v^{-l(w)} T_w` and the Kazhdan-Lusztig basis
//! `C_w = Σ_{y ≤ w} v^{l(y)-l(w)} P_{y,w}(v^2) T̃_y`.
//!
//! In these bases `T̃_s T̃_w = T̃_{sw}` when `sw > w` and
//! `T̃_{sw} + ζ T̃_w` otherwise, with `ζ = v - v^-1`; `T̃_τ` and `C_τ` simply
//! translate by `τ`.

pub mod kl;

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::num::Int;
use crate::weyl::{Generator, Side, WeylElement};

pub use kl::{kl_poly_right_recursion, CacheStats, KLCache, CACHE_HEADER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `T̃_w = v^{-l(w)} T_w`.
    T,
    /// Kazhdan-Lusztig basis `C_w`.
    C,
}

/// Finite `Z[v, v^-1]`-combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    basis: Basis,
    terms: FxHashMap<WeylElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(basis: Basis) -> HeckeElement {
        HeckeElement {
            basis,
            terms: FxHashMap::default(),
        }
    }

    pub fn basis_element(basis: Basis, w: WeylElement) -> HeckeElement {
        Self::monomial(basis, w, LaurentPoly::one())
    }

    pub fn monomial(basis: Basis, w: WeylElement, c: LaurentPoly) -> HeckeElement {
        let mut h = Self::zero(basis);
        h.add_term(w, &c);
        h
    }

    /// `T̃_w`.
    pub fn t(w: WeylElement) -> HeckeElement {
        Self::basis_element(Basis::T, w)
    }

    /// `C_w` as a formal element of the C basis.
    pub fn c(w: WeylElement) -> HeckeElement {
        Self::basis_element(Basis::C, w)
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> HeckeElement
    where
        I: IntoIterator<Item = (WeylElement, LaurentPoly)>,
    {
        let mut h = Self::zero(basis);
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &WeylElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Terms sorted by length, then reduced word.
    pub fn terms(&self) -> Vec<(WeylElement, LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_by_cached_key(|(w, _)| w.sort_key());
        v
    }

    pub fn support(&self) -> Vec<WeylElement> {
        self.terms().into_iter().map(|(w, _)| w).collect()
    }

    fn add_term(&mut self, w: WeylElement, c: &LaurentPoly) {
        self.add_scaled_term(w, c, &Int::ONE, 0);
    }

    fn add_scaled_term(&mut self, w: WeylElement, c: &LaurentPoly, k: &Int, shift: i32) {
        if c.is_zero() || k.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(LaurentPoly::zero);
        entry.add_scaled(c, k, shift);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `self += k·v^shift·other`; both must be in the same basis.
    pub fn add_scaled(&mut self, other: &HeckeElement, k: &Int, shift: i32) {
        assert_eq!(self.basis, other.basis, "mixing bases");
        for (w, c) in &other.terms {
            self.add_scaled_term(*w, c, k, shift);
        }
    }

    /// `self += p·other`.
    pub fn add_mul(&mut self, other: &HeckeElement, p: &LaurentPoly) {
        for (e, k) in p.terms() {
            self.add_scaled(other, k, e);
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> HeckeElement {
        let mut h = Self::zero(self.basis);
        h.add_mul(self, p);
        h
    }

    /// Left multiplication by `T̃_g` (T basis only).
    pub fn t_left_mul_gen(&self, g: Generator) -> HeckeElement {
        self.t_mul_gen(g, Side::Left)
    }

    /// Multiplication by `T̃_g` on the given side (T basis only).
    pub fn t_mul_gen(&self, g: Generator, side: Side) -> HeckeElement {
        assert_eq!(self.basis, Basis::T);
        let zeta = LaurentPoly::zeta();
        let mut out = Self::zero(Basis::T);
        for (w, c) in &self.terms {
            let sw = w.mul_side(g, side);
            out.add_term(sw, c);
            if g != Generator::Tau && sw.length() < w.length() {
                out.add_term(*w, &(&zeta * c));
            }
        }
        out
    }

    /// Drops the terms whose element fails `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&WeylElement) -> bool) -> HeckeElement {
        HeckeElement {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Add<&HeckeElement> for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut h = self.clone();
        h.add_scaled(rhs, &Int::ONE, 0);
        h
    }
}

impl std::ops::Sub<&HeckeElement> for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        let mut h = self.clone();
        h.add_scaled(rhs, &Int::from(-1), 0);
        h
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::T => "T",
            Basis::C => "C",
        };
        for (i, (w, c)) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{sym}[{w}]")?;
            } else {
                write!(f, "({c}){sym}[{w}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `T̃_x·h` for every `x` in `xs`, sharing work along reduced words: each
/// `T̃_x h` is `T̃_s (T̃_{sx} h)` for the first letter `s` of `x`.
struct LeftAction<'a> {
    h: &'a HeckeElement,
    memo: FxHashMap<WeylElement, HeckeElement>,
}

impl<'a> LeftAction<'a> {
    fn new(h: &'a HeckeElement) -> Self {
        LeftAction {
            h,
            memo: FxHashMap::default(),
        }
    }

    fn apply(&mut self, x: &WeylElement) -> HeckeElement {
        if x.is_identity() {
            return self.h.clone();
        }
        if let Some(r) = self.memo.get(x) {
            return r.clone();
        }
        let s = x.reduced_word().letters()[0];
        let rest = x.left_mul(s);
        let r = self.apply(&rest).t_left_mul_gen(s);
        self.memo.insert(*x, r.clone());
        r
    }
}

/// Product of two elements of the T basis.
pub fn t_mul(h1: &HeckeElement, h2: &HeckeElement) -> HeckeElement {
    assert_eq!(h1.basis, Basis::T);
    assert_eq!(h2.basis, Basis::T);
    let mut xs: Vec<_> = h1.terms.keys().copied().collect();
    xs.sort_by_key(|x| x.length());
    let mut action = LeftAction::new(h2);
    let mut out = HeckeElement::zero(Basis::T);
    for x in xs {
        let tx = action.apply(&x);
        out.add_mul(&tx, &h1.terms[&x]);
    }
    out
}

/// `C_w` written in the T basis.
pub fn c_expand(w: &WeylElement, cache: &KLCache) -> HeckeElement {
    let lw = w.length() as i32;
    let mut h = HeckeElement::zero(Basis::T);
    for (y, p) in cache.column(w) {
        h.add_scaled_term(y, &p, &Int::ONE, y.length() as i32 - lw);
    }
    h
}

/// Rewrites an element of the T basis in the C basis by peeling off the
/// longest terms: the T̃_w-coefficient of `C_w` is 1 and all its other terms
/// are shorter.
pub fn to_c_basis(h: &HeckeElement, cache: &KLCache) -> HeckeElement {
    assert_eq!(h.basis, Basis::T);
    let mut rest = h.clone();
    let mut out = HeckeElement::zero(Basis::C);
    while let Some(top) = rest.terms.keys().map(|w| w.length()).max() {
        let level: Vec<_> = rest
            .terms
            .iter()
            .filter(|(w, _)| w.length() == top)
            .map(|(w, c)| (*w, c.clone()))
            .collect();
        for (w, c) in level {
            let cw = c_expand(&w, cache);
            let mut sub = HeckeElement::zero(Basis::T);
            sub.add_mul(&cw, &c);
            rest.add_scaled(&sub, &Int::from(-1), 0);
            out.add_term(w, &c);
        }
    }
    out
}

/// Rewrites an element of the C basis in the T basis.
pub fn to_t_basis(h: &HeckeElement, cache: &KLCache) -> HeckeElement {
    assert_eq!(h.basis, Basis::C);
    let mut out = HeckeElement::zero(Basis::T);
    for (w, c) in &h.terms {
        out.add_mul(&c_expand(w, cache), c);
    }
    out
}

/// `C_s C_w` (left) or `C_w C_s` (right) in the C basis:
/// `ξ C_w` if `s` is a descent of `w` on that side, otherwise
/// `C_{sw} + Σ μ(z,w) C_z` over `z < w` having `s` as a descent on that side.
pub fn mult_c_s(s: Generator, w: &WeylElement, side: Side, cache: &KLCache) -> HeckeElement {
    assert!(s != Generator::Tau, "C_τ is a translation, not a KL generator");
    if w.has_descent(s, side) {
        return HeckeElement::monomial(Basis::C, *w, LaurentPoly::xi());
    }
    let mut h = HeckeElement::c(w.mul_side(s, side));
    for (z, m) in cache.mu_list(w) {
        if z.has_descent(s, side) {
            h.add_term(z, &LaurentPoly::monomial(m, 0));
        }
    }
    h
}

/// `C_g·h` or `h·C_g` for `h` in the C basis, including `g = τ`.
pub fn c_mul_gen(g: Generator, h: &HeckeElement, side: Side, cache: &KLCache) -> HeckeElement {
    assert_eq!(h.basis, Basis::C);
    let mut out = HeckeElement::zero(Basis::C);
    for (w, c) in &h.terms {
        if g == Generator::Tau {
            out.add_term(w.mul_side(g, side), c);
        } else {
            out.add_mul(&mult_c_s(g, w, side, cache), c);
        }
    }
    out
}

/// `Σ_z f_{x,y,z} T̃_z = T̃_x T̃_y`.
pub fn f_coeffs(x: &WeylElement, y: &WeylElement) -> Vec<(WeylElement, LaurentPoly)> {
    t_mul(&HeckeElement::t(*x), &HeckeElement::t(*y)).terms()
}

/// `C_x C_y` in the C basis, computed by multiplying the T-basis expansions
/// and eliminating.
pub fn c_product(x: &WeylElement, y: &WeylElement, cache: &KLCache) -> HeckeElement {
    let p = t_mul(&c_expand(x, cache), &c_expand(y, cache));
    to_c_basis(&p, cache)
}

/// `Σ_z h_{x,y,z} C_z = C_x C_y`.
pub fn h_coeffs(x: &WeylElement, y: &WeylElement, cache: &KLCache) -> Vec<(WeylElement, LaurentPoly)> {
    c_product(x, y, cache).terms()
}

/// `C_x C_y` computed inside the C basis only: `C_x = C_s C_{sx} - Σ μ(z,sx) C_z`
/// over `z < sx` with `sz < z`, applied recursively to `C_{x'} C_y`.
pub fn c_product_by_generators(x: &WeylElement, y: &WeylElement, cache: &KLCache) -> HeckeElement {
    let mut memo = FxHashMap::default();
    c_left_product(x, &HeckeElement::c(*y), cache, &mut memo)
}

fn c_left_product(
    x: &WeylElement,
    h: &HeckeElement,
    cache: &KLCache,
    memo: &mut FxHashMap<WeylElement, HeckeElement>,
) -> HeckeElement {
    if let Some(r) = memo.get(x) {
        return r.clone();
    }
    let word = x.reduced_word();
    let r = match word.letters().first() {
        None => h.clone(),
        Some(&Generator::Tau) => {
            let rest = x.left_mul(Generator::Tau);
            c_mul_gen(
                Generator::Tau,
                &c_left_product(&rest, h, cache, memo),
                Side::Left,
                cache,
            )
        }
        Some(&s) => {
            let sx = x.left_mul(s);
            let mut r = c_mul_gen(s, &c_left_product(&sx, h, cache, memo), Side::Left, cache);
            for (z, m) in cache.mu_list(&sx) {
                if z.has_descent(s, Side::Left) {
                    let cz = c_left_product(&z, h, cache, memo);
                    r.add_scaled(&cz, &-&m, 0);
                }
            }
            r
        }
    };
    memo.insert(*x, r.clone());
    r
}

/// Decision returned by an a-value oracle for [`reduce_mod_high_a`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdCheck {
    AtLeast,
    Below,
    Unknown,
}

/// Result of truncating modulo the span of `C_w` with large `a(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub kept: HeckeElement,
    /// Elements whose terms were dropped, sorted.
    pub dropped: Vec<WeylElement>,
}

/// Drops every term `C_w` with `a(w) ≥ threshold` as certified by `bound`,
/// keeps those certified below it, and fails on anything undecided.
pub fn reduce_mod_high_a(
    h: &HeckeElement,
    threshold: u32,
    mut bound: impl FnMut(&WeylElement, u32) -> ThresholdCheck,
) -> Result<Reduced> {
    assert_eq!(h.basis, Basis::C);
    let mut kept = HeckeElement::zero(Basis::C);
    let mut dropped = Vec::new();
    for (w, c) in h.terms() {
        match bound(&w, threshold) {
            ThresholdCheck::AtLeast => dropped.push(w),
            ThresholdCheck::Below => kept.add_term(w, &c),
            ThresholdCheck::Unknown => {
                return Err(crate::Error::Uncertifiable {
                    elem: w.to_string(),
                    threshold,
                })
            }
        }
    }
    Ok(Reduced { kept, dropped })
}
