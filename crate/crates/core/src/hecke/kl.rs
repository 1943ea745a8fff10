//! Memoized Kazhdan-Lusztig polynomials.
//!
//! Polynomials are computed a whole column `{P_{y,w} : y ≤ w}` at a time
//! with the left recursion: for the smallest left descent `s` of `w` and
//! `v = sw`,
//!
//! ```text
//! P_{y,w} = q^{1-c} P_{sy,v} + q^c P_{y,v} - Σ_{z ≺ v, sz < z} μ(z,v) q^{(l(w)-l(z))/2} P_{y,z}
//! ```
//!
//! with `c = 1` if `sy < y`, else `0`. Elements of `τW'` are reduced to `W'`
//! through `P_{τy,τw} = P_{y,w}`. Columns store interned polynomial indices,
//! since only a few thousand distinct polynomials occur.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Arc;

use parking_lot::RwLock;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::num::Int;
use crate::weyl::{lower_interval, Generator, WeylElement, Word};

pub const CACHE_HEADER: &str = "# sp6cells kl-cache v1";

const NONE: u32 = u32::MAX;

/// Polynomial in `q` as its coefficient list, trimmed of trailing zeros.
type QPoly = Vec<Int>;

struct Column {
    /// Ids of all `y ≤ w`, sorted.
    elems: Vec<u32>,
    /// Pool index of `P_{y,w}`, aligned with `elems`.
    polys: Vec<u32>,
    /// `(z, μ(z,w))` for `z < w` with `μ ≠ 0`.
    mu: Vec<(u32, Int)>,
}

impl Column {
    fn lookup(&self, y: u32) -> Option<u32> {
        self.elems.binary_search(&y).ok().map(|i| self.polys[i])
    }
}

#[derive(Default)]
struct Inner {
    elems: Vec<WeylElement>,
    index: FxHashMap<WeylElement, u32>,
    lens: Vec<u32>,
    lmul: Vec<[u32; 4]>,
    columns: Vec<Option<Arc<Column>>>,
    pool: Vec<QPoly>,
    pool_index: FxHashMap<QPoly, u32>,
    computed: usize,
    loaded: usize,
    /// Columns read from (or already written to) the backing cache file.
    persisted: FxHashSet<u32>,
}

/// Counters describing the work done by a cache.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub columns_computed: usize,
    pub columns_loaded: usize,
    pub columns_total: usize,
    pub distinct_polys: usize,
}

impl Inner {
    fn new() -> Inner {
        let mut inner = Inner::default();
        inner.intern_poly(vec![Int::ONE]);
        inner
    }

    fn id(&mut self, w: &WeylElement) -> u32 {
        debug_assert!(!w.in_tau_coset());
        if let Some(&i) = self.index.get(w) {
            return i;
        }
        let i = self.elems.len() as u32;
        self.elems.push(*w);
        self.index.insert(*w, i);
        self.lens.push(w.length());
        self.lmul.push([NONE; 4]);
        self.columns.push(None);
        i
    }

    fn lmul(&mut self, id: u32, g: Generator) -> u32 {
        let k = g.index();
        let cached = self.lmul[id as usize][k];
        if cached != NONE {
            return cached;
        }
        let sw = self.elems[id as usize].left_mul(g);
        let j = self.id(&sw);
        self.lmul[id as usize][k] = j;
        self.lmul[j as usize][k] = id;
        j
    }

    fn has_left_descent(&mut self, id: u32, g: Generator) -> bool {
        let j = self.lmul(id, g);
        self.lens[j as usize] < self.lens[id as usize]
    }

    fn intern_poly(&mut self, p: QPoly) -> u32 {
        if let Some(&i) = self.pool_index.get(&p) {
            return i;
        }
        let i = self.pool.len() as u32;
        self.pool.push(p.clone());
        self.pool_index.insert(p, i);
        i
    }

    fn column(&mut self, w: u32) -> Arc<Column> {
        if let Some(c) = &self.columns[w as usize] {
            return c.clone();
        }
        let col = Arc::new(self.build_column(w));
        self.columns[w as usize] = Some(col.clone());
        self.computed += 1;
        col
    }

    fn build_column(&mut self, w: u32) -> Column {
        let lw = self.lens[w as usize];
        if lw == 0 {
            return Column {
                elems: vec![w],
                polys: vec![0],
                mu: Vec::new(),
            };
        }
        let s = Generator::SIMPLE
            .into_iter()
            .find(|g| self.has_left_descent(w, *g))
            .expect("positive length");
        let v = self.lmul(w, s);
        let cv = self.column(v);

        let mut terms: Vec<(u32, Int, u32, Arc<Column>)> = Vec::new();
        for (z, m) in cv.mu.clone() {
            if self.has_left_descent(z, s) {
                let shift = (lw - self.lens[z as usize]) / 2;
                let cz = self.column(z);
                terms.push((z, m, shift, cz));
            }
        }

        let mut elems: Vec<u32> = Vec::with_capacity(2 * cv.elems.len());
        for &y in &cv.elems {
            elems.push(y);
            let sy = self.lmul(y, s);
            elems.push(sy);
        }
        elems.sort_unstable();
        elems.dedup();

        let mut polys = vec![NONE; elems.len()];
        let mut acc: QPoly = Vec::new();
        for (i, &y) in elems.iter().enumerate() {
            let sy = self.lmul(y, s);
            if self.lens[sy as usize] < self.lens[y as usize] {
                continue;
            }
            acc.clear();
            // q·P_{sy,v} + P_{y,v}
            if let Some(p) = cv.lookup(sy) {
                add_shifted(&mut acc, &self.pool[p as usize], &Int::ONE, 1);
            }
            if let Some(p) = cv.lookup(y) {
                add_shifted(&mut acc, &self.pool[p as usize], &Int::ONE, 0);
            }
            for (_, m, shift, cz) in &terms {
                if let Some(p) = cz.lookup(y) {
                    add_shifted(&mut acc, &self.pool[p as usize], &-m, *shift as usize);
                }
            }
            trim(&mut acc);
            let pi = self.intern_poly(acc.clone());
            polys[i] = pi;
            // P_{sy,w} = P_{y,w}
            let j = elems.binary_search(&sy).expect("interval is closed under s");
            polys[j] = pi;
        }
        debug_assert!(polys.iter().all(|p| *p != NONE));
        let mu = self.mu_entries(lw, &elems, &polys);
        Column { elems, polys, mu }
    }

    fn mu_entries(&self, lw: u32, elems: &[u32], polys: &[u32]) -> Vec<(u32, Int)> {
        let mut mu = Vec::new();
        for (&y, &p) in elems.iter().zip(polys) {
            let ly = self.lens[y as usize];
            if ly < lw && (lw - ly) % 2 == 1 {
                let top = ((lw - ly - 1) / 2) as usize;
                let poly = &self.pool[p as usize];
                if poly.len() == top + 1 {
                    mu.push((y, poly[top].clone()));
                }
            }
        }
        mu
    }

    fn poly_of(&mut self, y: &WeylElement, w: &WeylElement) -> Option<u32> {
        let wi = self.id(w);
        let yi = self.id(y);
        self.column(wi).lookup(yi)
    }
}

fn add_shifted(acc: &mut QPoly, p: &[Int], c: &Int, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, Int::ZERO);
    }
    for (k, x) in p.iter().enumerate() {
        if !x.is_zero() {
            acc[k + shift] += &(x * c);
        }
    }
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_to_laurent(p: &[Int]) -> LaurentPoly {
    LaurentPoly::from_q_coeffs(p)
}

/// Shared memo of Kazhdan-Lusztig polynomials.
///
/// Reads take a shared lock; computing a missing column takes the exclusive
/// lock, so concurrent callers always see the same values.
pub struct KLCache {
    inner: RwLock<Inner>,
}

impl Default for KLCache {
    fn default() -> Self {
        Self::new()
    }
}

impl KLCache {
    pub fn new() -> KLCache {
        KLCache {
            inner: RwLock::new(Inner::new()),
        }
    }

    fn with_column<T>(&self, w: &WeylElement, f: impl FnOnce(&Inner, &Column) -> T) -> T {
        {
            let inner = self.inner.read();
            if let Some(&wi) = inner.index.get(w) {
                if let Some(col) = &inner.columns[wi as usize] {
                    return f(&inner, col);
                }
            }
        }
        let mut inner = self.inner.write();
        let wi = inner.id(w);
        let col = inner.column(wi);
        f(&inner, &col)
    }

    /// `P_{y,w}` as a Laurent polynomial in `v` (even exponents only); zero
    /// unless `y ≤ w`.
    pub fn kl_poly(&self, y: &WeylElement, w: &WeylElement) -> LaurentPoly {
        if y.in_tau_coset() != w.in_tau_coset() {
            return LaurentPoly::zero();
        }
        let (_, y) = y.split_tau();
        let (_, w) = w.split_tau();
        self.with_column(&w, |inner, col| {
            match inner.index.get(&y).and_then(|yi| col.lookup(*yi)) {
                Some(p) => qpoly_to_laurent(&inner.pool[p as usize]),
                None => LaurentPoly::zero(),
            }
        })
    }

    /// `μ(y,w)`: coefficient of `q^{(l(w)-l(y)-1)/2}` in `P_{y,w}` when
    /// `y < w`, else `0`.
    pub fn mu(&self, y: &WeylElement, w: &WeylElement) -> Int {
        let (ly, lw) = (y.length(), w.length());
        if ly >= lw || (lw - ly) % 2 == 0 {
            return Int::ZERO;
        }
        let p = self.kl_poly(y, w);
        p.coeff_at((lw - ly - 1) as i32)
    }

    /// `μ̃(y,w)`: `μ(y,w)` if `y < w`, `μ(w,y)` if `w < y`, else `0`.
    pub fn mu_tilde(&self, y: &WeylElement, w: &WeylElement) -> Int {
        if y.length() < w.length() {
            self.mu(y, w)
        } else if w.length() < y.length() {
            self.mu(w, y)
        } else {
            Int::ZERO
        }
    }

    /// All `z < w` with `μ(z,w) ≠ 0`, in the coset of `w`.
    pub fn mu_list(&self, w: &WeylElement) -> Vec<(WeylElement, Int)> {
        let (tau, w0) = w.split_tau();
        let t = WeylElement::tau();
        self.with_column(&w0, |inner, col| {
            col.mu
                .iter()
                .map(|(z, m)| {
                    let z = inner.elems[*z as usize];
                    (if tau { t.mul(&z) } else { z }, m.clone())
                })
                .collect()
        })
    }

    /// `{(y, P_{y,w}) : y ≤ w}`, sorted by length then reduced word.
    pub fn column(&self, w: &WeylElement) -> Vec<(WeylElement, LaurentPoly)> {
        let (tau, w0) = w.split_tau();
        let t = WeylElement::tau();
        let mut out: Vec<_> = self.with_column(&w0, |inner, col| {
            col.elems
                .iter()
                .zip(&col.polys)
                .map(|(y, p)| {
                    let y = inner.elems[*y as usize];
                    let y = if tau { t.mul(&y) } else { y };
                    (y, qpoly_to_laurent(&inner.pool[*p as usize]))
                })
                .collect()
        });
        out.sort_by_cached_key(|(y, _)| y.sort_key());
        out
    }

    /// Degree in `q` of `P_{e,w}` (`δ(w)`); `None` when `P_{e,w} = 0`, which
    /// only happens off the identity component.
    pub fn delta(&self, w: &WeylElement) -> Option<u32> {
        if w.in_tau_coset() {
            return None;
        }
        self.kl_poly(&WeylElement::identity(), w)
            .degree()
            .map(|d| (d / 2) as u32)
    }

    pub fn stats(&self) -> CacheStats {
        let inner = self.inner.read();
        CacheStats {
            columns_computed: inner.computed,
            columns_loaded: inner.loaded,
            columns_total: inner.columns.iter().filter(|c| c.is_some()).count(),
            distinct_polys: inner.pool.len(),
        }
    }

    /// Appends every column not yet in `path` as `y_word|w_word|poly` lines.
    /// A new file starts with the version header; an existing file must
    /// carry the same header.
    pub fn save(&self, path: &Path) -> Result<usize> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let exists = path.exists();
        let mut already: FxHashSet<WeylElement> = FxHashSet::default();
        if exists {
            let file = fs::File::open(path).map_err(io)?;
            let mut lines = BufReader::new(file).lines();
            check_header(lines.next().transpose().map_err(io)?.as_deref())?;
            for line in lines {
                let line = line.map_err(io)?;
                if let Some((_, w, _)) = split_record(&line) {
                    already.insert(parse_word(w)?);
                }
            }
        }
        let mut inner = self.inner.write();
        let mut out = String::new();
        if !exists {
            out.push_str(CACHE_HEADER);
            out.push('\n');
        }
        let mut ids: Vec<u32> = (0..inner.columns.len() as u32)
            .filter(|i| inner.columns[*i as usize].is_some())
            .filter(|i| !inner.persisted.contains(i))
            .filter(|i| !already.contains(&inner.elems[*i as usize]))
            .collect();
        ids.sort_by_key(|i| inner.elems[*i as usize].sort_key());
        let mut written = 0;
        for &wi in &ids {
            let col = inner.columns[wi as usize].clone().unwrap();
            let ww = inner.elems[wi as usize].reduced_word();
            for (y, p) in col.elems.iter().zip(&col.polys) {
                let yw = inner.elems[*y as usize].reduced_word();
                let poly = qpoly_to_laurent(&inner.pool[*p as usize]);
                out.push_str(&format!("{yw}|{ww}|{}\n", poly.to_sparse_string()));
            }
            written += 1;
        }
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io)?;
        file.write_all(out.as_bytes()).map_err(io)?;
        inner.persisted.extend(ids);
        Ok(written)
    }

    /// Loads columns from a cache file, validating each one: the recorded
    /// `y` must be exactly the Bruhat interval below `w`, `P_{w,w} = 1`, and
    /// `deg_q P_{y,w} ≤ (l(w) - l(y) - 1)/2` for `y < w`.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let file = fs::File::open(path).map_err(io)?;
        let mut lines = BufReader::new(file).lines();
        check_header(lines.next().transpose().map_err(io)?.as_deref())?;
        let mut grouped: Vec<(WeylElement, Vec<(WeylElement, LaurentPoly)>)> = Vec::new();
        let mut pos: FxHashMap<WeylElement, usize> = FxHashMap::default();
        for (n, line) in lines.enumerate() {
            let line = line.map_err(io)?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (y, w, p) =
                split_record(&line).ok_or_else(|| Error::Cache(format!("line {}: malformed record", n + 2)))?;
            let (y, w) = (parse_word(y)?, parse_word(w)?);
            if y.in_tau_coset() || w.in_tau_coset() {
                return Err(Error::Cache(format!("line {}: τ-coset element", n + 2)));
            }
            let p = LaurentPoly::parse_sparse(p)?;
            let k = *pos.entry(w).or_insert_with(|| {
                grouped.push((w, Vec::new()));
                grouped.len() - 1
            });
            grouped[k].1.push((y, p));
        }
        let mut inner = self.inner.write();
        let mut count = 0;
        for (w, records) in grouped {
            validate_column(&w, &records)?;
            let wi = inner.id(&w);
            if inner.columns[wi as usize].is_some() {
                inner.persisted.insert(wi);
                continue;
            }
            let lw = w.length();
            let mut entries: Vec<(u32, u32)> = Vec::with_capacity(records.len());
            for (y, p) in &records {
                let yi = inner.id(y);
                let q: QPoly = (0..=p.degree().unwrap_or(0) / 2).map(|k| p.coeff_at(2 * k)).collect();
                let mut q = q;
                trim(&mut q);
                let pi = inner.intern_poly(q);
                entries.push((yi, pi));
            }
            entries.sort_unstable();
            let elems: Vec<u32> = entries.iter().map(|e| e.0).collect();
            let polys: Vec<u32> = entries.iter().map(|e| e.1).collect();
            let mu = inner.mu_entries(lw, &elems, &polys);
            inner.columns[wi as usize] = Some(Arc::new(Column { elems, polys, mu }));
            inner.loaded += 1;
            inner.persisted.insert(wi);
            count += 1;
        }
        Ok(count)
    }

    /// Index of `P_{y,w}` in the interned pool, for tests of sharing.
    #[doc(hidden)]
    pub fn poly_index(&self, y: &WeylElement, w: &WeylElement) -> Option<u32> {
        self.inner.write().poly_of(y, w)
    }
}

fn check_header(line: Option<&str>) -> Result<()> {
    match line {
        Some(h) if h.trim() == CACHE_HEADER => Ok(()),
        Some(h) => Err(Error::Cache(format!("unsupported cache version header {h:?}"))),
        None => Err(Error::Cache("empty cache file".into())),
    }
}

fn split_record(line: &str) -> Option<(&str, &str, &str)> {
    let mut it = line.splitn(3, '|');
    Some((it.next()?, it.next()?, it.next()?))
}

fn parse_word(s: &str) -> Result<WeylElement> {
    Ok(s.parse::<Word>()?.evaluate())
}

fn validate_column(w: &WeylElement, records: &[(WeylElement, LaurentPoly)]) -> Result<()> {
    let bad = |msg: String| Err(Error::Cache(format!("column {w}: {msg}")));
    let interval: FxHashSet<WeylElement> = lower_interval(w).into_iter().collect();
    let seen: FxHashSet<WeylElement> = records.iter().map(|r| r.0).collect();
    if seen.len() != records.len() {
        return bad("duplicate records".into());
    }
    if seen != interval {
        return bad("recorded elements are not the Bruhat interval".into());
    }
    let lw = w.length() as i32;
    for (y, p) in records {
        if y == w {
            if !p.is_one() {
                return bad("P_{w,w} != 1".into());
            }
            continue;
        }
        let ly = y.length() as i32;
        if p.is_zero() || p.low_degree().unwrap() < 0 || p.terms().any(|(e, _)| e % 2 != 0) {
            return bad(format!("P_{{{y},{w}}} is not a nonzero polynomial in q"));
        }
        if p.degree().unwrap() > lw - ly - 1 {
            return bad(format!("P_{{{y},{w}}} violates the degree bound"));
        }
    }
    Ok(())
}

/// Independent evaluation of `P_{y,w}` by the right-handed recursion,
/// memoized in a plain map. Slow; used to cross-check [`KLCache`].
pub fn kl_poly_right_recursion(
    y: &WeylElement,
    w: &WeylElement,
    memo: &mut FxHashMap<(WeylElement, WeylElement), LaurentPoly>,
) -> LaurentPoly {
    if !y.bruhat_leq(w) {
        return LaurentPoly::zero();
    }
    if y == w {
        return LaurentPoly::one();
    }
    if let Some(p) = memo.get(&(*y, *w)) {
        return p.clone();
    }
    let lw = w.length();
    let s = Generator::SIMPLE
        .into_iter()
        .find(|g| w.right_mul(*g).length() < lw)
        .expect("w > y has a right descent");
    let ws = w.right_mul(s);
    let ys = y.right_mul(s);
    let c = if ys.length() < y.length() { 1 } else { 0 };
    let q = LaurentPoly::q();
    let mut p = &q.pow(1 - c) * &kl_poly_right_recursion(&ys, &ws, memo);
    p += &(&q.pow(c) * &kl_poly_right_recursion(y, &ws, memo));
    let lws = ws.length();
    for z in lower_interval(&ws) {
        let lz = z.length();
        if lz >= lws || (lws - lz).is_multiple_of(2) || z.right_mul(s).length() > lz || !y.bruhat_leq(&z) {
            continue;
        }
        let pz = kl_poly_right_recursion(&z, &ws, memo);
        let mu = pz.coeff_at((lws - lz - 1) as i32);
        if mu.is_zero() {
            continue;
        }
        let pyz = kl_poly_right_recursion(y, &z, memo);
        p.add_scaled(&pyz, &-&mu, (lw - lz) as i32);
    }
    memo.insert((*y, *w), p.clone());
    p
}
