//! The asymptotic ring `J_D` on a computed fragment of the cell `D`.
//!
//! `t_x t_y = Σ_z γ_{x,y,z} t_z`, with `γ` read from a [`GammaTable`]. The
//! identity suites for the families `x_k, x'_k` (left cell `D12`) and
//! `u_k, u'_k` (left cell `D013`) live here, together with the truncated
//! homomorphism `φ_D : H → J_D ⊗ A`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cells::{left_cells, star, ACertifier, GammaTable, StarPair};
use crate::error::{Error, Result};
use crate::hecke::{c_product_by_generators, KLCache};
use crate::laurent::LaurentPoly;
use crate::num::Int;
use crate::reference::{u_k, u_prime_k, x_k, x_prime_k, A_OF_D, D_LEFT_CELLS};
use crate::weyl::{evaluate, Side, WeylElement, Word};

type Key = (u32, Word);

/// A finite `Z`-combination of basis elements `t_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JElement {
    terms: BTreeMap<Key, (WeylElement, Int)>,
}

impl JElement {
    pub fn zero() -> JElement {
        JElement::default()
    }

    pub fn t(w: WeylElement) -> JElement {
        let mut j = JElement::zero();
        j.add_term(w, &Int::ONE);
        j
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylElement, Int)>>(terms: I) -> JElement {
        let mut j = JElement::zero();
        for (w, c) in terms {
            j.add_term(w, &c);
        }
        j
    }

    pub fn sum<I: IntoIterator<Item = WeylElement>>(elems: I) -> JElement {
        JElement::from_terms(elems.into_iter().map(|w| (w, Int::ONE)))
    }

    pub fn add_term(&mut self, w: WeylElement, c: &Int) {
        if c.is_zero() {
            return;
        }
        let key = w.sort_key();
        let entry = self.terms.entry(key.clone()).or_insert((w, Int::ZERO));
        entry.1 = &entry.1 + c;
        if entry.1.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &JElement, c: &Int) {
        for (w, d) in other.terms() {
            self.add_term(w, &(c * &d));
        }
    }

    pub fn coeff(&self, w: &WeylElement) -> Int {
        self.terms.get(&w.sort_key()).map_or(Int::ZERO, |(_, c)| c.clone())
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

    /// Terms by increasing length.
    pub fn terms(&self) -> Vec<(WeylElement, Int)> {
        self.terms.values().cloned().collect()
    }

    pub fn support(&self) -> Vec<WeylElement> {
        self.terms.values().map(|(w, _)| *w).collect()
    }

    /// Longest terms first, each basis element rendered by `name`.
    pub fn format_with(&self, name: impl Fn(&WeylElement) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.values().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&name(w));
        }
        out
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|w| format!("t[{w}]")))
    }
}

/// Bilinear product through the table; an uncovered pair is an error.
pub fn j_mul(a: &JElement, b: &JElement, table: &GammaTable) -> Result<JElement> {
    let mut out = JElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            let row = table.row(&x, &y)?;
            let c = &cx * &cy;
            for (z, g) in &row.terms {
                out.add_term(*z, &(&c * g));
            }
        }
    }
    Ok(out)
}

/// Covers every pair of the two supports, then multiplies.
pub fn j_mul_covering(a: &JElement, b: &JElement, table: &mut GammaTable, cert: &ACertifier) -> Result<JElement> {
    for x in a.support() {
        for y in b.support() {
            table.cover(&x, &y, cert)?;
        }
    }
    j_mul(a, b, table)
}

/// The two parametrized families of involutions in `Γ ∩ Γ⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellFamily {
    /// `x_k = (s1s2s3s0)^k s1s2s1` and `x'_k`, in `D12 ∩ D12⁻¹`.
    D12,
    /// `u_k = (s0s1s3s2)^k s0s1s3` and `u'_k = τu_k`, in `D013 ∩ D013⁻¹`.
    D013,
}

impl CellFamily {
    pub const ALL: [CellFamily; 2] = [CellFamily::D12, CellFamily::D013];

    pub fn label(self) -> &'static str {
        match self {
            CellFamily::D12 => "D12",
            CellFamily::D013 => "D013",
        }
    }

    pub fn parse(s: &str) -> Result<CellFamily> {
        match s {
            "D12" | "d12" => Ok(CellFamily::D12),
            "D013" | "d013" => Ok(CellFamily::D013),
            _ => Err(Error::Config(format!("unknown family {s:?}: expected D12 or D013"))),
        }
    }

    fn letter(self) -> char {
        match self {
            CellFamily::D12 => 'x',
            CellFamily::D013 => 'u',
        }
    }

    /// `x_k` or `x'_k` (resp. `u_k`, `u'_k`).
    pub fn element(self, k: usize, primed: bool) -> WeylElement {
        match (self, primed) {
            (CellFamily::D12, false) => x_k(k),
            (CellFamily::D12, true) => x_prime_k(k),
            (CellFamily::D013, false) => u_k(k),
            (CellFamily::D013, true) => u_prime_k(k),
        }
    }

    /// Inverse of [`CellFamily::element`].
    pub fn index_of(self, w: &WeylElement) -> Option<(usize, bool)> {
        let l = w.length() as usize;
        let mut candidates = Vec::new();
        if l >= 3 && (l - 3).is_multiple_of(4) {
            let k = (l - 3) / 4;
            candidates.push((k, false));
            candidates.push((k, true));
        }
        if self == CellFamily::D12 && l == 5 {
            candidates.push((0, true));
        }
        candidates.into_iter().find(|&(k, p)| self.element(k, p) == *w)
    }

    pub fn name(self, k: usize, primed: bool) -> String {
        format!("{}{}{k}", self.letter(), if primed { "'" } else { "" })
    }

    /// Family name of `w` if it is a member, else its reduced word.
    pub fn name_of(self, w: &WeylElement) -> String {
        match self.index_of(w) {
            Some((k, p)) => self.name(k, p),
            None => w.to_string(),
        }
    }

    pub fn equations(self) -> [FamilyEq; 3] {
        match self {
            CellFamily::D12 => [FamilyEq::XX, FamilyEq::XpXp, FamilyEq::XXp],
            CellFamily::D013 => [FamilyEq::UU, FamilyEq::UpUp, FamilyEq::UUp],
        }
    }

    /// `Σ_{|k-l| ≤ m ≤ k+l} t_{g_m}` with `g` plain or primed.
    pub fn interval_sum(self, k: usize, l: usize, primed: bool) -> JElement {
        JElement::sum((k.abs_diff(l)..=k + l).map(|m| self.element(m, primed)))
    }
}

impl fmt::Display for CellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The product identities `t_{g_k} t_{g_l} = Σ_m t_{g_m}` for the two
/// families, named by the shape of the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyEq {
    /// `t_{x_k} t_{x_l} = Σ t_{x_m}`.
    XX,
    /// `t_{x'_k} t_{x'_l} = Σ t_{x_m}`.
    XpXp,
    /// `t_{x_k} t_{x'_l} = Σ t_{x'_m}`.
    XXp,
    /// `t_{u_k} t_{u_l} = Σ t_{u_m}`.
    UU,
    /// `t_{u'_k} t_{u'_l} = Σ t_{u_m}`.
    UpUp,
    /// `t_{u_k} t_{u'_l} = Σ t_{u'_m}`, also checked against the variant
    /// right side `Σ t_{x'_m}`.
    UUp,
}

impl FamilyEq {
    pub const ALL: [FamilyEq; 6] = [
        FamilyEq::XX,
        FamilyEq::XpXp,
        FamilyEq::XXp,
        FamilyEq::UU,
        FamilyEq::UpUp,
        FamilyEq::UUp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FamilyEq::XX => "x.x",
            FamilyEq::XpXp => "x'.x'",
            FamilyEq::XXp => "x.x'",
            FamilyEq::UU => "u.u",
            FamilyEq::UpUp => "u'.u'",
            FamilyEq::UUp => "u.u'",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyEq> {
        FamilyEq::ALL.into_iter().find(|e| e.label() == s)
    }

    pub fn family(self) -> CellFamily {
        match self {
            FamilyEq::XX | FamilyEq::XpXp | FamilyEq::XXp => CellFamily::D12,
            _ => CellFamily::D013,
        }
    }

    /// (left factor primed, right factor primed, right side primed).
    pub fn shape(self) -> (bool, bool, bool) {
        match self {
            FamilyEq::XX | FamilyEq::UU => (false, false, false),
            FamilyEq::XpXp | FamilyEq::UpUp => (true, true, false),
            FamilyEq::XXp | FamilyEq::UUp => (false, true, true),
        }
    }

    pub fn factors(self, k: usize, l: usize) -> (WeylElement, WeylElement) {
        let (pk, pl, _) = self.shape();
        let f = self.family();
        (f.element(k, pk), f.element(l, pl))
    }

    /// The right side the identity should have.
    pub fn expected(self, k: usize, l: usize) -> JElement {
        let (_, _, pr) = self.shape();
        self.family().interval_sum(k, l, pr)
    }

    /// The variant right side checked alongside [`FamilyEq::expected`].
    pub fn variant(self, k: usize, l: usize) -> Option<JElement> {
        (self == FamilyEq::UUp).then(|| CellFamily::D12.interval_sum(k, l, true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Each product computed from its own row of `γ`.
    Direct,
    /// `t_{g_k} = t_{g_1} t_{g_{k-1}} - t_{g_{k-1}} - t_{g_{k-2}}` plus
    /// associativity, seeded by the rows of `t_{g_1} t_{g_m}`.
    Recursive,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Direct => "direct",
            Mode::Recursive => "recursive",
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "direct" => Ok(Mode::Direct),
            "recursive" => Ok(Mode::Recursive),
            _ => Err(Error::Config(format!(
                "unknown mode {s:?}: expected direct or recursive"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Matches the expected right side but not the variant one.
    PassVariantDiffers,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::PassVariantDiffers => "pass-variant-differs",
            Status::Fail => "fail",
        }
    }

    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

/// One instance `(eq, k, l)` of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    pub eq: FamilyEq,
    pub k: usize,
    pub l: usize,
    pub mode: Mode,
    pub lhs: JElement,
    pub rhs: JElement,
    pub variant_rhs: Option<JElement>,
    pub status: Status,
}

impl IdentityInstance {
    fn new(eq: FamilyEq, k: usize, l: usize, mode: Mode, lhs: JElement) -> IdentityInstance {
        let rhs = eq.expected(k, l);
        let variant_rhs = eq.variant(k, l);
        let status = if lhs != rhs {
            Status::Fail
        } else if variant_rhs.as_ref().is_some_and(|lit| *lit != lhs) {
            Status::PassVariantDiffers
        } else {
            Status::Pass
        };
        IdentityInstance {
            eq,
            k,
            l,
            mode,
            lhs,
            rhs,
            variant_rhs,
            status,
        }
    }

    /// `eq|family|k|l|status|lhs-support|rhs-support`.
    pub fn line(&self) -> String {
        let family = self.eq.family();
        let name = |w: &WeylElement| family.name_of(w);
        let mut line = format!(
            "{}|{}|{}|{}|{}|{}|{}",
            self.eq.label(),
            family,
            self.k,
            self.l,
            self.status.name(),
            self.lhs.format_with(name),
            self.rhs.format_with(name)
        );
        if self.status == Status::PassVariantDiffers {
            if let Some(lit) = &self.variant_rhs {
                let lit_name = |w: &WeylElement| CellFamily::D12.name_of(w);
                line.push_str(&format!(" (variant: {})", lit.format_with(lit_name)));
            }
        }
        line
    }
}

/// Checks one identity from the row of its two factors.
pub fn verify_identity(
    eq: FamilyEq,
    k: usize,
    l: usize,
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<IdentityInstance> {
    let (a, b) = eq.factors(k, l);
    let lhs = j_mul_covering(&JElement::t(a), &JElement::t(b), table, cert)?;
    Ok(IdentityInstance::new(eq, k, l, Mode::Direct, lhs))
}

#[derive(Clone, Debug, Default)]
pub struct FamilyReport {
    pub instances: Vec<IdentityInstance>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.status.passed())
    }

    pub fn failures(&self) -> Vec<&IdentityInstance> {
        self.instances.iter().filter(|i| !i.status.passed()).collect()
    }

    pub fn report(&self) -> String {
        self.instances.iter().map(|i| i.line() + "\n").collect()
    }
}

/// Direct mode checks all three identities of the family for `k + l ≤ bound`.
/// Recursive mode checks the unprimed identity for `k, l ≤ bound`.
pub fn verify_family_identities(
    family: CellFamily,
    bound: usize,
    mode: Mode,
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<FamilyReport> {
    let mut instances = Vec::new();
    match mode {
        Mode::Direct => {
            for eq in family.equations() {
                for k in 0..=bound {
                    for l in 0..=bound - k {
                        instances.push(verify_identity(eq, k, l, table, cert)?);
                    }
                }
            }
        }
        Mode::Recursive => {
            let eq = family.equations()[0];
            for l in 0..=bound {
                for (k, lhs) in recursive_products(family, bound, l, table, cert)?
                    .into_iter()
                    .enumerate()
                {
                    instances.push(IdentityInstance::new(eq, k, l, Mode::Recursive, lhs));
                }
            }
        }
    }
    Ok(FamilyReport { instances })
}

/// `t_{g_k} t_{g_l}` for `k = 0..=k_max`, using only the products
/// `t_{g_0} t_{g_l}` and `t_{g_1} t_z`.
fn recursive_products(
    family: CellFamily,
    k_max: usize,
    l: usize,
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<Vec<JElement>> {
    let g = |m: usize| family.element(m, false);
    let g1 = g(1);
    let left_by_g1 = |h: &JElement, table: &mut GammaTable| -> Result<JElement> {
        let mut out = JElement::zero();
        for (z, c) in h.terms() {
            let row = table.cover_fast(&g1, &z, cert)?;
            for (w, gamma) in &row.terms {
                out.add_term(*w, &(&c * gamma));
            }
        }
        Ok(out)
    };
    let first = {
        let row = table.cover_fast(&g(0), &g(l), cert)?;
        JElement::from_terms(row.terms.iter().cloned())
    };
    let mut out = vec![first];
    if k_max >= 1 {
        let p1 = left_by_g1(&JElement::t(g(l)), table)?;
        out.push(p1);
    }
    for k in 2..=k_max {
        let mut p = left_by_g1(&out[k - 1], table)?;
        p.add_scaled(&out[k - 1], &Int::from(-1));
        p.add_scaled(&out[k - 2], &Int::from(-1));
        out.push(p);
    }
    Ok(out)
}

/// `t_x t_y = t_y t_x` for every pair from `elems`.
pub fn commutativity_check(
    elems: &[WeylElement],
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<Vec<(WeylElement, WeylElement, bool)>> {
    let mut out = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            let xy = j_mul_covering(&JElement::t(*x), &JElement::t(*y), table, cert)?;
            let yx = j_mul_covering(&JElement::t(*y), &JElement::t(*x), table, cert)?;
            out.push((*x, *y, xy == yx));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitReport {
    pub unit: JElement,
    /// `(x, 1·t_x == t_x, t_x·1 == t_x)`.
    pub actions: Vec<(WeylElement, bool, bool)>,
    pub idempotent: bool,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.actions.iter().all(|(_, l, r)| *l && *r)
    }
}

/// `Σ t_d` over `distinguished` acts as the identity on each `t_x`.
pub fn unit_check(
    elems: &[WeylElement],
    distinguished: &[WeylElement],
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<UnitReport> {
    let unit = JElement::sum(distinguished.iter().copied());
    let mut actions = Vec::new();
    for x in elems {
        let tx = JElement::t(*x);
        let left = j_mul_covering(&unit, &tx, table, cert)? == tx;
        let right = j_mul_covering(&tx, &unit, table, cert)? == tx;
        actions.push((*x, left, right));
    }
    let idempotent = j_mul_covering(&unit, &unit, table, cert)? == unit;
    Ok(UnitReport {
        unit,
        actions,
        idempotent,
    })
}

/// `x'_k = τ·(#(*x_k)) = ((x_k*)#)·τ` with `* = {s2,s0}`, `# = {s1,s2}`.
pub fn star_transport_check(k: usize) -> Result<bool> {
    let first = StarPair::from_labels("02")?;
    let second = StarPair::from_labels("12")?;
    let x = x_k(k);
    let tau = WeylElement::tau();
    let left = tau.mul(&star(&star(&x, first, Side::Left)?, second, Side::Left)?);
    let right = star(&star(&x, first, Side::Right)?, second, Side::Right)?.mul(&tau);
    let target = x_prime_k(k);
    Ok(left == target && right == target)
}

/// Image of `C_x` under `φ_D`, restricted to a fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub x: WeylElement,
    /// `(z, Σ_d h_{x,d,z})` for `z ∈ D`, by increasing length.
    pub terms: Vec<(WeylElement, LaurentPoly)>,
    /// Set when fewer distinguished involutions than left cells were given.
    pub truncated: Option<String>,
}

impl PhiImage {
    pub fn coeff(&self, z: &WeylElement) -> LaurentPoly {
        self.terms
            .iter()
            .find(|(w, _)| w == z)
            .map_or_else(LaurentPoly::zero, |(_, p)| p.clone())
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        for (z, p) in &self.terms {
            out.push_str(&format!("{}|{}\n", z, p.to_sparse_string()));
        }
        if let Some(t) = &self.truncated {
            out.push_str(&format!("# truncated: {t}\n"));
        }
        out
    }
}

/// Number of left cells in `D`.
pub const D_LEFT_CELL_COUNT: usize = 12;

/// Involutions `d` with `l(d) = 3 + 2δ(d)` in the left cells of the pinned
/// representatives, computed on `ball(radius)`. Cells that have not yet
/// reached their distinguished involution at this radius contribute nothing,
/// so fewer than [`D_LEFT_CELL_COUNT`] elements may come back.
pub fn distinguished_in_d(radius: u32, cache: &KLCache) -> Vec<WeylElement> {
    let partition = left_cells(radius, cache);
    let mut out = Vec::new();
    for rep in &D_LEFT_CELLS {
        let Some(cell) = partition.cell_of(&rep.element()) else {
            continue;
        };
        out.extend(
            cell.members
                .iter()
                .filter(|x| x.is_involution() && cache.delta(x).is_some_and(|d| x.length() == A_OF_D + 2 * d)),
        );
    }
    out
}

/// `φ_D(C_x) = Σ_{d ∈ 𝒟 ∩ D} Σ_{z ∈ D} h_{x,d,z} t_z`. A nonzero
/// `h_{x,d,z}` with `z ∈ D` forces `z ≤_L d` with equal a-values, hence
/// `z ~_L d`.
pub fn lusztig_phi(x: &WeylElement, distinguished: &[WeylElement], cert: &ACertifier) -> Result<PhiImage> {
    let mut acc: BTreeMap<Key, (WeylElement, LaurentPoly)> = BTreeMap::new();
    for d in distinguished {
        let h = c_product_by_generators(x, d, cert.cache());
        for (z, p) in h.terms() {
            match cert.in_cell_d(&z) {
                Some(true) => {
                    let e = acc.entry(z.sort_key()).or_insert((z, LaurentPoly::zero()));
                    e.1 = &e.1 + &p;
                }
                Some(false) => {}
                None => {
                    return Err(Error::Uncertifiable {
                        elem: z.to_string(),
                        threshold: crate::reference::A_OF_D + 1,
                    })
                }
            }
        }
    }
    let truncated = (distinguished.len() < D_LEFT_CELL_COUNT).then(|| {
        format!(
            "{} of {D_LEFT_CELL_COUNT} distinguished involutions of D supplied",
            distinguished.len()
        )
    });
    Ok(PhiImage {
        x: *x,
        terms: acc.into_values().filter(|(_, p)| !p.is_zero()).collect(),
        truncated,
    })
}

/// Product in `J_D ⊗ A` of two images.
pub fn phi_mul(
    a: &[(WeylElement, LaurentPoly)],
    b: &[(WeylElement, LaurentPoly)],
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<Vec<(WeylElement, LaurentPoly)>> {
    let mut acc: BTreeMap<Key, (WeylElement, LaurentPoly)> = BTreeMap::new();
    for (x, p) in a {
        for (y, q) in b {
            let row = table.cover(x, y, cert)?;
            let pq = p * q;
            for (z, g) in &row.terms {
                let e = acc.entry(z.sort_key()).or_insert((*z, LaurentPoly::zero()));
                e.1.add_scaled(&pq, g, 0);
            }
        }
    }
    Ok(acc.into_values().filter(|(_, p)| !p.is_zero()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiProductCheck {
    pub x: WeylElement,
    pub y: WeylElement,
    /// `φ_D(C_x) φ_D(C_y)`.
    pub product_of_images: Vec<(WeylElement, LaurentPoly)>,
    /// `Σ_z h_{x,y,z} φ_D(C_z)`.
    pub image_of_product: Vec<(WeylElement, LaurentPoly)>,
}

impl PhiProductCheck {
    pub fn holds(&self) -> bool {
        self.product_of_images == self.image_of_product
    }
}

/// `φ_D(C_x C_y) = φ_D(C_x) φ_D(C_y)`. Terms `z` of `C_x C_y` outside `D`
/// satisfy `a(z) > 3` and contribute nothing to `φ_D`.
pub fn phi_multiplicativity(
    x: &WeylElement,
    y: &WeylElement,
    distinguished: &[WeylElement],
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<PhiProductCheck> {
    let px = lusztig_phi(x, distinguished, cert)?;
    let py = lusztig_phi(y, distinguished, cert)?;
    let product_of_images = phi_mul(&px.terms, &py.terms, table, cert)?;
    let mut acc: BTreeMap<Key, (WeylElement, LaurentPoly)> = BTreeMap::new();
    for (z, h) in c_product_by_generators(x, y, cert.cache()).terms() {
        if cert.in_cell_d(&z) != Some(true) {
            continue;
        }
        for (w, p) in lusztig_phi(&z, distinguished, cert)?.terms {
            let e = acc.entry(w.sort_key()).or_insert((w, LaurentPoly::zero()));
            e.1 = &e.1 + &(&h * &p);
        }
    }
    Ok(PhiProductCheck {
        x: *x,
        y: *y,
        product_of_images,
        image_of_product: acc.into_values().filter(|(_, p)| !p.is_zero()).collect(),
    })
}

/// Parses a family element name such as `x2`, `x'0`, `u1`, `u'3`, or a word.
pub fn parse_family_element(s: &str) -> Result<WeylElement> {
    let (family, rest) = match s.chars().next() {
        Some('x') => (CellFamily::D12, &s[1..]),
        Some('u') => (CellFamily::D013, &s[1..]),
        _ => return evaluate(s),
    };
    let (primed, digits) = match rest.strip_prefix('\'') {
        Some(d) => (true, d),
        None => (false, rest),
    };
    let k: usize = digits.parse().map_err(|_| Error::InvalidWord(s.to_string()))?;
    Ok(family.element(k, primed))
}
