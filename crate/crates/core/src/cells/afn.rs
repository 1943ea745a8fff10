//! Lusztig's a-function: certified lower and upper bounds, `δ`, and
//! distinguished involutions.
//!
//! Lower bounds come from parabolic factors (`w = x·w_J·y` reduced implies
//! `a(w) ≥ l(w_J)`) and from observed degrees of `h_{x,y,w}`. Upper bounds
//! come from `a(w) ≤ min(l(w), 9)` and from monotonicity: if `y ≤_LR w` then
//! `a(w) ≤ a(y)`, and such `y` are found by following the products `C_s C_w`,
//! `C_w C_s` and `τ`-translations downward.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::cells::star::{string_context, StarPair};
use crate::error::{Error, Result};
use crate::hecke::{c_product_by_generators, mult_c_s, KLCache, ThresholdCheck};
use crate::reference::{self, A_OF_D, D_LEFT_CELLS};
use crate::weyl::{parabolic_longest, GenSet, Generator, Side, WeylElement};

/// `a(w) ≤ l(w_0) = 9` for every `w`.
pub const A_GLOBAL_BOUND: u32 = 9;

/// Largest `l(w_J)` over `J ⊆ L(w)` and `J ⊆ R(w)`.
pub fn a_lower_bound(w: &WeylElement) -> u32 {
    descent_bound(w.left_descents()).max(descent_bound(w.right_descents()))
}

fn descent_bound(d: GenSet) -> u32 {
    subsets(d)
        .filter_map(|j| parabolic_longest(j).map(|x| x.length()))
        .max()
        .unwrap_or(0)
}

fn subsets(d: GenSet) -> impl Iterator<Item = GenSet> {
    let bits = d.bits();
    (0..=bits)
        .filter(move |b| b & !bits == 0)
        .map(|b| GenSet::from_gens(Generator::SIMPLE.into_iter().filter(|g| b & (1 << g.index()) != 0)))
}

/// Largest `l(w_J)` over reduced factorizations `w = x·w_J·y`, with the `J`
/// that attains it. Every suffix `v` of `w` (`w = x·v` reduced) is visited
/// and `J ⊆ L(v)` is tried; the search stops once `stop_at` is reached.
pub fn a_factor_bound(w: &WeylElement, stop_at: Option<u32>) -> (u32, GenSet) {
    let (_, w) = w.split_tau();
    let mut best = (0, GenSet::default());
    let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
    let mut stack = vec![w];
    seen.insert(w);
    while let Some(v) = stack.pop() {
        let l = v.left_descents();
        for j in subsets(l) {
            if let Some(wj) = parabolic_longest(j) {
                if wj.length() > best.0 {
                    best = (wj.length(), j);
                }
            }
        }
        if stop_at.is_some_and(|t| best.0 >= t) || best.0 == A_GLOBAL_BOUND {
            break;
        }
        for g in l.iter() {
            let sv = v.left_mul(g);
            if seen.insert(sv) {
                stack.push(sv);
            }
        }
    }
    best
}

/// Why a bound holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// `l(w) = 0`.
    LengthZero,
    /// Parabolic factor `w_J` with `J` as given.
    Factor(GenSet),
    /// `deg h_{x,y,w}` observed in `C_x C_y`.
    Degree { x: WeylElement, y: WeylElement },
    /// `a(w) ≤ l(w)`.
    Length,
    /// `a(w) ≤ 9`.
    Global,
    /// Element of the cell `D`: a pinned representative or reached from one
    /// by strings and `τ`.
    PinnedCell,
    /// Member of one of the pinned families in `Γ ∩ Γ⁻¹`, `Γ ∈ {D12, D013}`.
    PinnedFamily,
    /// `y ≤_LR w` for the given `y`, whose bound is inherited.
    Below(WeylElement),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::LengthZero => write!(f, "length 0"),
            Reason::Factor(j) => write!(f, "parabolic factor w_{}", j.labels()),
            Reason::Degree { x, y } => write!(f, "degree of h in C_{x}·C_{y}"),
            Reason::Length => write!(f, "a <= length"),
            Reason::Global => write!(f, "a <= 9"),
            Reason::PinnedCell => write!(f, "pinned cell D"),
            Reason::PinnedFamily => write!(f, "pinned family"),
            Reason::Below(y) => write!(f, "{y} <=_LR w"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AStatus {
    Certified,
    Heuristic,
}

/// Value of `a(w)` with the bracket that supports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AValue {
    pub elem: WeylElement,
    pub value: u32,
    pub lower: u32,
    pub upper: u32,
    pub lower_reason: Reason,
    pub upper_reason: Reason,
    pub status: AStatus,
}

impl AValue {
    /// The value, or an error when the bracket is not closed.
    pub fn certified(&self) -> Result<u32> {
        match self.status {
            AStatus::Certified => Ok(self.value),
            AStatus::Heuristic => Err(Error::AUncertified {
                elem: self.elem.to_string(),
                lower: self.lower,
                upper: self.upper,
            }),
        }
    }
}

/// Elements of `D` obtained from the pinned representatives by moving along
/// left and right strings and multiplying by `τ` on either side. All of them
/// have `a = 3`.
pub fn d_string_closure() -> FxHashSet<WeylElement> {
    let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
    let mut stack: Vec<WeylElement> = D_LEFT_CELLS.iter().map(|c| c.element()).collect();
    seen.extend(stack.iter().copied());
    let t = WeylElement::tau();
    while let Some(x) = stack.pop() {
        let mut next = vec![t.mul(&x), x.mul(&t)];
        for p in StarPair::ALL {
            for side in [Side::Left, Side::Right] {
                if let Some(ctx) = string_context(&x, p, side) {
                    next.extend(ctx.elements());
                }
            }
        }
        for y in next {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Whether `w` is `x_k`, `x'_k`, `u_k` or `u'_k` for some `k`.
pub fn is_pinned_family_member(w: &WeylElement) -> bool {
    let l = w.length() as usize;
    if l == 5 && *w == reference::x_prime_k(0) {
        return true;
    }
    if l < 3 || !(l - 3).is_multiple_of(4) {
        return false;
    }
    let k = (l - 3) / 4;
    [reference::x_k(k), reference::u_k(k), reference::u_prime_k(k)].contains(w)
        || (k >= 1 && *w == reference::x_prime_k(k))
}

/// Settings for [`ACertifier`].
#[derive(Clone, Copy, Debug)]
pub struct CertifierConfig {
    /// How far above `l(w)` the downward search may climb.
    pub slack: u32,
    /// Maximum number of elements expanded per search.
    pub budget: usize,
    /// Accept membership of the pinned families in `D`.
    pub pinned_families: bool,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig {
            slack: 2,
            budget: 4000,
            pinned_families: true,
        }
    }
}

/// Decides `a(w)` or its position relative to a threshold, with reasons.
pub struct ACertifier {
    cache: Arc<KLCache>,
    config: CertifierConfig,
    d_seed: FxHashSet<WeylElement>,
    upper_memo: Mutex<FxHashMap<WeylElement, (u32, Reason)>>,
    lower_memo: Mutex<FxHashMap<WeylElement, (u32, Reason)>>,
}

impl ACertifier {
    pub fn new(cache: Arc<KLCache>) -> ACertifier {
        Self::with_config(cache, CertifierConfig::default())
    }

    pub fn with_config(cache: Arc<KLCache>, config: CertifierConfig) -> ACertifier {
        ACertifier {
            cache,
            config,
            d_seed: d_string_closure(),
            upper_memo: Mutex::new(FxHashMap::default()),
            lower_memo: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn cache(&self) -> &Arc<KLCache> {
        &self.cache
    }

    pub fn config(&self) -> CertifierConfig {
        self.config
    }

    /// Elements of `D` known without any search.
    pub fn d_seed(&self) -> &FxHashSet<WeylElement> {
        &self.d_seed
    }

    /// Upper bound available for `w` without searching.
    fn local_upper(&self, w: &WeylElement) -> (u32, Reason) {
        let l = w.length();
        if l == 0 {
            (0, Reason::LengthZero)
        } else if self.d_seed.contains(w) {
            (A_OF_D, Reason::PinnedCell)
        } else if self.config.pinned_families && is_pinned_family_member(w) {
            (A_OF_D, Reason::PinnedFamily)
        } else if l < A_GLOBAL_BOUND {
            (l, Reason::Length)
        } else {
            (A_GLOBAL_BOUND, Reason::Global)
        }
    }

    /// Lower bound without computing products.
    pub fn lower(&self, w: &WeylElement) -> (u32, Reason) {
        if let Some(r) = self.lower_memo.lock().get(w) {
            return r.clone();
        }
        let (f, j) = a_factor_bound(w, None);
        let mut r = (f, Reason::Factor(j));
        if self.d_seed.contains(w) || (self.config.pinned_families && is_pinned_family_member(w)) {
            let reason = if self.d_seed.contains(w) {
                Reason::PinnedCell
            } else {
                Reason::PinnedFamily
            };
            if A_OF_D > r.0 {
                r = (A_OF_D, reason);
            }
        }
        self.lower_memo.lock().insert(*w, r.clone());
        r
    }

    /// Raises the recorded lower bound of `z` after observing `deg h_{x,y,z}`.
    pub fn observe_degree(&self, x: &WeylElement, y: &WeylElement, z: &WeylElement, degree: i32) {
        if degree <= 0 {
            return;
        }
        let current = self.lower(z);
        if degree as u32 > current.0 {
            self.lower_memo
                .lock()
                .insert(*z, (degree as u32, Reason::Degree { x: *x, y: *y }));
        }
    }

    /// Upper bound on `a(w)` by a downward search that stops as soon as the
    /// bound drops below `stop_below`.
    pub fn upper(&self, w: &WeylElement, stop_below: u32) -> (u32, Reason) {
        if let Some(r) = self.upper_memo.lock().get(w) {
            if r.0 < stop_below {
                return r.clone();
            }
        }
        let r = self.search_upper(w, stop_below);
        let mut memo = self.upper_memo.lock();
        let keep = memo.get(w).is_none_or(|old| r.0 < old.0);
        if keep {
            memo.insert(*w, r.clone());
        }
        r
    }

    fn search_upper(&self, w: &WeylElement, stop_below: u32) -> (u32, Reason) {
        let mut best = self.local_upper(w);
        if best.0 < stop_below {
            return best;
        }
        let limit = w.length() + self.config.slack;
        let tau = WeylElement::tau();
        let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
        let mut heap = BinaryHeap::new();
        seen.insert(*w);
        heap.push(Reverse((w.length(), *w)));
        let mut expanded = 0;
        while let Some(Reverse((_, y))) = heap.pop() {
            expanded += 1;
            if expanded > self.config.budget {
                break;
            }
            let mut next = vec![tau.mul(&y), y.mul(&tau)];
            for s in Generator::SIMPLE {
                for side in [Side::Left, Side::Right] {
                    if !y.has_descent(s, side) {
                        next.extend(mult_c_s(s, &y, side, &self.cache).support());
                    }
                }
            }
            for z in next {
                if z.length() > limit || !seen.insert(z) {
                    continue;
                }
                let (u, _) = self.local_upper(&z);
                if u < best.0 {
                    best = (u, Reason::Below(z));
                    if best.0 < stop_below {
                        return best;
                    }
                }
                heap.push(Reverse((z.length(), z)));
            }
        }
        best
    }

    /// Places `a(w)` relative to `threshold`.
    pub fn threshold(&self, w: &WeylElement, threshold: u32) -> ThresholdCheck {
        if self.lower(w).0 >= threshold {
            return ThresholdCheck::AtLeast;
        }
        if self.upper(w, threshold).0 < threshold {
            return ThresholdCheck::Below;
        }
        ThresholdCheck::Unknown
    }

    /// `Some(true)` if `a(w) = 3` is certified (so `w ∈ D`), `Some(false)` if
    /// `a(w) ≠ 3` is certified, `None` otherwise.
    pub fn in_cell_d(&self, w: &WeylElement) -> Option<bool> {
        let (lo, _) = self.lower(w);
        if lo > A_OF_D {
            return Some(false);
        }
        let (hi, _) = self.upper(w, A_OF_D + 1);
        if hi < A_OF_D {
            return Some(false);
        }
        if hi == A_OF_D && lo == A_OF_D {
            return Some(true);
        }
        None
    }

    /// `a(w)`: the lower bound is raised by scanning `C_w C_d` for
    /// involutions `d` of length at most `radius` with `R(d) = R(w)`, since
    /// `γ_{w,d,w} = 1` for the distinguished involution `d` of the left cell
    /// of `w`.
    pub fn a_value(&self, w: &WeylElement, radius: u32) -> AValue {
        let (mut lower, mut lower_reason) = self.lower(w);
        let (upper, upper_reason) = self.upper(w, lower + 1);
        if lower < upper {
            let r = w.right_descents();
            for d in crate::weyl::ball(radius, false) {
                if lower >= upper {
                    break;
                }
                if !d.is_involution() || d.left_descents() != r {
                    continue;
                }
                let h = c_product_by_generators(w, &d, &self.cache);
                if let Some(deg) = h.coeff(w).degree() {
                    self.observe_degree(w, &d, w, deg);
                    if deg > lower as i32 {
                        lower = deg as u32;
                        lower_reason = Reason::Degree { x: *w, y: d };
                    }
                }
            }
        }
        let status = if lower == upper {
            AStatus::Certified
        } else {
            AStatus::Heuristic
        };
        AValue {
            elem: *w,
            value: lower,
            lower,
            upper,
            lower_reason,
            upper_reason,
            status,
        }
    }

    /// `δ(w) = deg_q P_{e,w}`; `None` off the identity component.
    pub fn delta(&self, w: &WeylElement) -> Option<u32> {
        self.cache.delta(w)
    }

    /// `l(w) - a(w) - 2δ(w) = 0`, with `a(w)` certified.
    pub fn is_distinguished(&self, w: &WeylElement, radius: u32) -> Result<bool> {
        if !w.is_involution() {
            return Ok(false);
        }
        let Some(delta) = self.delta(w) else {
            return Ok(false);
        };
        let a = self.a_value(w, radius).certified()?;
        Ok(w.length() == a + 2 * delta)
    }
}
