//! Structure constants `γ_{x,y,z}` of the asymptotic ring on the cell `D`.
//!
//! `γ_{x,y,z}` is the coefficient of `v^{a(z)}` in `h_{x,y,z}`. A row of the
//! table holds every nonzero `γ_{x,y,z}` with `z ∈ D` for one pair `(x, y)`
//! of elements of `D`. Rows are computed from the generator expansion of
//! `C_x C_y`; when every `f_{x,y,z}` has degree at most `a(D)` the row is
//! recomputed from the leading `T̃`-coefficients and the two must agree.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::cells::afn::ACertifier;
use crate::error::{Error, Result};
use crate::hecke::{c_product_by_generators, f_coeffs};
use crate::num::Int;
use crate::reference::A_OF_D;
use crate::weyl::WeylElement;

/// How a row was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowRoute {
    /// From `h_{x,y,z}` only.
    Canonical,
    /// From `h_{x,y,z}`, confirmed by the leading terms of `f_{x,y,z}`.
    Confirmed,
    /// From the leading terms of `f_{x,y,z}` alone, every `f_{x,y,z}` having
    /// degree at most `a(D)`.
    LeadingT,
}

impl RowRoute {
    pub fn name(self) -> &'static str {
        match self {
            RowRoute::Canonical => "canonical",
            RowRoute::Confirmed => "confirmed",
            RowRoute::LeadingT => "leading-t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRow {
    pub x: WeylElement,
    pub y: WeylElement,
    /// Nonzero `γ_{x,y,z}` with `z ∈ D`, sorted by `z`.
    pub terms: Vec<(WeylElement, Int)>,
    /// Terms of `C_x C_y` with a nonzero `v^3` coefficient whose index has
    /// certified `a ≥ 4`.
    pub dropped: Vec<WeylElement>,
    pub route: RowRoute,
}

impl GammaRow {
    pub fn gamma(&self, z: &WeylElement) -> Int {
        self.terms
            .iter()
            .find(|(w, _)| w == z)
            .map_or(Int::ZERO, |(_, c)| c.clone())
    }

    pub fn support(&self) -> Vec<WeylElement> {
        self.terms.iter().map(|(z, _)| *z).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaConfig {
    /// Rows with `l(x) + l(y)` up to this bound are confirmed through the
    /// `T̃`-basis product.
    pub confirm_max_len: u32,
}

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig { confirm_max_len: 22 }
    }
}

/// Rows of `γ` for explicitly covered pairs. Products of uncovered pairs are
/// errors rather than zero.
#[derive(Clone, Debug, Default)]
pub struct GammaTable {
    rows: FxHashMap<(WeylElement, WeylElement), GammaRow>,
    config: GammaConfig,
}

impl GammaTable {
    pub fn new() -> GammaTable {
        GammaTable::default()
    }

    pub fn with_config(config: GammaConfig) -> GammaTable {
        GammaTable {
            rows: FxHashMap::default(),
            config,
        }
    }

    pub fn is_covered(&self, x: &WeylElement, y: &WeylElement) -> bool {
        self.rows.contains_key(&(*x, *y))
    }

    pub fn row(&self, x: &WeylElement, y: &WeylElement) -> Result<&GammaRow> {
        self.rows.get(&(*x, *y)).ok_or_else(|| Error::MissingGamma {
            x: x.to_string(),
            y: y.to_string(),
        })
    }

    pub fn get(&self, x: &WeylElement, y: &WeylElement, z: &WeylElement) -> Result<Int> {
        Ok(self.row(x, y)?.gamma(z))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Computes and stores the row of `(x, y)` if it is not already present.
    pub fn cover(&mut self, x: &WeylElement, y: &WeylElement, cert: &ACertifier) -> Result<&GammaRow> {
        if !self.rows.contains_key(&(*x, *y)) {
            let row = compute_row(x, y, cert, self.config)?;
            self.rows.insert((*x, *y), row);
        }
        Ok(&self.rows[&(*x, *y)])
    }

    /// Like [`GammaTable::cover`], but uses only the `T̃`-basis product when
    /// its degrees allow it. This avoids Kazhdan-Lusztig polynomials of long
    /// elements.
    pub fn cover_fast(&mut self, x: &WeylElement, y: &WeylElement, cert: &ACertifier) -> Result<&GammaRow> {
        if !self.rows.contains_key(&(*x, *y)) {
            let row = match leading_row(x, y, cert)? {
                Some(row) => row,
                None => compute_row(x, y, cert, self.config)?,
            };
            self.rows.insert((*x, *y), row);
        }
        Ok(&self.rows[&(*x, *y)])
    }

    pub fn cover_all<'a, I>(&mut self, pairs: I, cert: &ACertifier) -> Result<()>
    where
        I: IntoIterator<Item = (&'a WeylElement, &'a WeylElement)>,
    {
        for (x, y) in pairs {
            self.cover(x, y, cert)?;
        }
        Ok(())
    }

    /// Covered rows in canonical order.
    pub fn rows(&self) -> Vec<&GammaRow> {
        let mut rows: Vec<&GammaRow> = self.rows.values().collect();
        rows.sort_by_cached_key(|r| (r.x.sort_key(), r.y.sort_key()));
        rows
    }

    /// Nonzero triples in canonical order.
    pub fn triples(&self) -> Vec<(WeylElement, WeylElement, WeylElement, Int)> {
        self.rows()
            .into_iter()
            .flat_map(|r| r.terms.iter().map(move |(z, g)| (r.x, r.y, *z, g.clone())))
            .collect()
    }

    /// One line per nonzero triple: `x|y|z|gamma|a`.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (x, y, z, g) in self.triples() {
            out.push_str(&format!("{x}|{y}|{z}|{g}|{A_OF_D}\n"));
        }
        out
    }
}

fn require_d(w: &WeylElement, cert: &ACertifier) -> Result<()> {
    match cert.in_cell_d(w) {
        Some(true) => Ok(()),
        Some(false) => Err(Error::NotInCell {
            elem: w.to_string(),
            cell: "D",
        }),
        None => Err(Error::Uncertifiable {
            elem: w.to_string(),
            threshold: A_OF_D + 1,
        }),
    }
}

fn compute_row(x: &WeylElement, y: &WeylElement, cert: &ACertifier, config: GammaConfig) -> Result<GammaRow> {
    require_d(x, cert)?;
    require_d(y, cert)?;
    let top = A_OF_D as i32;
    let h = c_product_by_generators(x, y, cert.cache());
    let mut terms = BTreeMap::new();
    let mut dropped = Vec::new();
    for (z, p) in h.terms() {
        if let Some(deg) = p.degree() {
            cert.observe_degree(x, y, &z, deg);
        }
        let c = p.coeff_at(top);
        if c.is_zero() {
            continue;
        }
        match cert.in_cell_d(&z) {
            Some(true) => {
                if p.degree() > Some(top) {
                    return Err(Error::FactMismatch(format!(
                        "deg h_{{{x},{y},{z}}} exceeds a(D) although {z} is in D"
                    )));
                }
                terms.insert(z.sort_key(), (z, c));
            }
            Some(false) => dropped.push(z),
            None => {
                return Err(Error::Uncertifiable {
                    elem: z.to_string(),
                    threshold: A_OF_D + 1,
                })
            }
        }
    }
    let terms: Vec<(WeylElement, Int)> = terms.into_values().collect();
    let mut route = RowRoute::Canonical;
    if x.length() + y.length() <= config.confirm_max_len {
        if let Some(leading) = leading_t_coefficients(x, y) {
            let lookup = |list: &[(WeylElement, Int)], z: &WeylElement| {
                list.iter().find(|(w, _)| w == z).map_or(Int::ZERO, |(_, c)| c.clone())
            };
            let mut zs: Vec<WeylElement> = terms.iter().map(|(z, _)| *z).collect();
            zs.extend(
                leading
                    .iter()
                    .map(|(z, _)| *z)
                    .filter(|z| cert.in_cell_d(z) == Some(true)),
            );
            for z in zs {
                let (from_h, from_f) = (lookup(&terms, &z), lookup(&leading, &z));
                if from_h != from_f {
                    return Err(Error::FactMismatch(format!(
                        "gamma({x},{y},{z}): canonical route gives {from_h}, T route gives {from_f}"
                    )));
                }
            }
            route = RowRoute::Confirmed;
        }
    }
    dropped.sort_by_cached_key(|w| w.sort_key());
    Ok(GammaRow {
        x: *x,
        y: *y,
        terms,
        dropped,
        route,
    })
}

fn leading_row(x: &WeylElement, y: &WeylElement, cert: &ACertifier) -> Result<Option<GammaRow>> {
    require_d(x, cert)?;
    require_d(y, cert)?;
    let Some(leading) = leading_t_coefficients(x, y) else {
        return Ok(None);
    };
    let mut terms = Vec::new();
    let mut dropped = Vec::new();
    for (z, c) in leading {
        match cert.in_cell_d(&z) {
            Some(true) => terms.push((z, c)),
            Some(false) => dropped.push(z),
            None => {
                return Err(Error::Uncertifiable {
                    elem: z.to_string(),
                    threshold: A_OF_D + 1,
                })
            }
        }
    }
    terms.sort_by_cached_key(|(z, _)| z.sort_key());
    dropped.sort_by_cached_key(|w| w.sort_key());
    Ok(Some(GammaRow {
        x: *x,
        y: *y,
        terms,
        dropped,
        route: RowRoute::LeadingT,
    }))
}

/// Coefficients of `v^{a(D)}` in `T̃_x T̃_y` when every `f_{x,y,z}` has
/// degree at most `a(D)`, the situation in which they equal `γ_{x,y,z}` for
/// `z` in the cell of `x` and `y`.
pub fn leading_t_coefficients(x: &WeylElement, y: &WeylElement) -> Option<Vec<(WeylElement, Int)>> {
    let top = A_OF_D as i32;
    let f = f_coeffs(x, y);
    if f.iter().any(|(_, p)| p.degree() > Some(top)) {
        return None;
    }
    Some(
        f.into_iter()
            .filter_map(|(z, p)| {
                let c = p.coeff_at(top);
                (!c.is_zero()).then_some((z, c))
            })
            .collect(),
    )
}

/// `γ_{x,y,z}` as the coefficient of `v^{a(z)}` in `h_{x,y,z}`, with `a(z)`
/// certified by a scan of radius `radius`.
pub fn gamma(x: &WeylElement, y: &WeylElement, z: &WeylElement, cert: &ACertifier, radius: u32) -> Result<Int> {
    let a = cert.a_value(z, radius).certified()?;
    let h = c_product_by_generators(x, y, cert.cache());
    Ok(h.coeff(z).coeff_at(a as i32))
}
