//! The representation ring of `O3(C) = Z/2 × SO3(C)`, the bijections from
//! the family involutions to its irreducibles, and the four-case test of
//! whether `J_D` can be `K_F(Y × Y)` for a finite `F`-set `Y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cells::{ACertifier, GammaTable};
use crate::error::{Error, Result};
use crate::jring::{j_mul_covering, CellFamily, JElement};
use crate::num::Int;
use crate::weyl::{evaluate, WeylElement};

/// `V(2k)`, or `εV(2k)` when `sign` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Irrep {
    /// Half the highest weight.
    pub k: u32,
    pub sign: bool,
}

impl Irrep {
    pub const TRIVIAL: Irrep = Irrep { k: 0, sign: false };
    pub const EPSILON: Irrep = Irrep { k: 0, sign: true };

    pub fn new(k: u32, sign: bool) -> Irrep {
        Irrep { k, sign }
    }

    pub fn highest_weight(self) -> u32 {
        2 * self.k
    }

    pub fn dim(self) -> u64 {
        2 * self.k as u64 + 1
    }

    pub fn dual(self) -> Irrep {
        self
    }

    /// Clebsch-Gordan: `V(2k) ⊗ V(2l) = ⊕_{|k-l| ≤ m ≤ k+l} V(2m)`, signs
    /// multiplying.
    pub fn tensor(self, other: Irrep) -> ORepClass {
        let sign = self.sign != other.sign;
        ORepClass::from_irreps((self.k.abs_diff(other.k)..=self.k + other.k).map(|m| Irrep::new(m, sign)))
    }

    /// Parses `V(2k)`, `eV(2k)` or `e`.
    pub fn parse(s: &str) -> Result<Irrep> {
        let bad = || Error::Config(format!("invalid irreducible {s:?}: expected V(2k), eV(2k) or e"));
        let t = s.trim();
        if t == "e" || t == "ε" {
            return Ok(Irrep::EPSILON);
        }
        let (sign, rest) = match t.strip_prefix('e').or_else(|| t.strip_prefix('ε')) {
            Some(r) => (true, r),
            None => (false, t),
        };
        let inner = rest
            .strip_prefix("V(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let w: u32 = inner.parse().map_err(|_| bad())?;
        if !w.is_multiple_of(2) {
            return Err(bad());
        }
        Ok(Irrep::new(w / 2, sign))
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}V({})", if self.sign { "e" } else { "" }, self.highest_weight())
    }
}

/// A class in the representation ring with nonnegative multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ORepClass {
    mult: BTreeMap<Irrep, u64>,
}

impl ORepClass {
    pub fn zero() -> ORepClass {
        ORepClass::default()
    }

    pub fn irrep(r: Irrep) -> ORepClass {
        ORepClass::from_irreps([r])
    }

    pub fn from_irreps<I: IntoIterator<Item = Irrep>>(irreps: I) -> ORepClass {
        let mut c = ORepClass::zero();
        for r in irreps {
            c.add(r, 1);
        }
        c
    }

    pub fn add(&mut self, r: Irrep, n: u64) {
        if n > 0 {
            *self.mult.entry(r).or_insert(0) += n;
        }
    }

    pub fn multiplicity(&self, r: &Irrep) -> u64 {
        self.mult.get(r).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Irrep, u64)> + '_ {
        self.mult.iter().map(|(r, n)| (*r, *n))
    }

    pub fn dim(&self) -> u64 {
        self.terms().map(|(r, n)| r.dim() * n).sum()
    }

    /// Number of irreducible summands, with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn dual(&self) -> ORepClass {
        ORepClass::from_terms(self.terms().map(|(r, n)| (r.dual(), n)))
    }

    fn from_terms<I: IntoIterator<Item = (Irrep, u64)>>(terms: I) -> ORepClass {
        let mut c = ORepClass::zero();
        for (r, n) in terms {
            c.add(r, n);
        }
        c
    }

    pub fn sum(&self, other: &ORepClass) -> ORepClass {
        ORepClass::from_terms(self.terms().chain(other.terms()))
    }
}

impl fmt::Display for ORepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .mult
            .iter()
            .rev()
            .map(|(r, n)| if *n == 1 { r.to_string() } else { format!("{n}{r}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bilinear extension of [`Irrep::tensor`].
pub fn tensor(a: &ORepClass, b: &ORepClass) -> ORepClass {
    let mut out = ORepClass::zero();
    for (r, n) in a.terms() {
        for (s, m) in b.terms() {
            for (t, c) in r.tensor(s).terms() {
                out.add(t, n * m * c);
            }
        }
    }
    out
}

/// `x_k ↦ V(2k)`, `x'_k ↦ εV(2k)`, and likewise for `u_k`, `u'_k`.
pub fn pi_map(family: CellFamily, w: &WeylElement) -> Result<Irrep> {
    let (k, primed) = family
        .index_of(w)
        .ok_or_else(|| Error::NotInFamily(format!("{w} in {family}")))?;
    Ok(Irrep::new(k as u32, primed))
}

/// Inverse of [`pi_map`].
pub fn pi_inverse(family: CellFamily, r: Irrep) -> WeylElement {
    family.element(r.k as usize, r.sign)
}

/// Image of a `J`-element with nonnegative coefficients.
pub fn pi_image(family: CellFamily, j: &JElement) -> Result<ORepClass> {
    let mut out = ORepClass::zero();
    for (w, c) in j.terms() {
        let n = c
            .to_i64()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::FactMismatch(format!("coefficient {c} of t[{w}] is not a positive count")))?;
        out.add(pi_map(family, &w)?, n as u64);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningCheck {
    pub a: WeylElement,
    pub b: WeylElement,
    pub product: JElement,
    pub image: Option<ORepClass>,
    pub expected: ORepClass,
}

impl IntertwiningCheck {
    pub fn holds(&self) -> bool {
        self.image.as_ref() == Some(&self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub family: CellFamily,
    pub bound: usize,
    pub checks: Vec<IntertwiningCheck>,
    /// `π` is injective on the checked elements and hits every irreducible of
    /// weight at most `2 * bound`.
    pub bijective: bool,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.checks.iter().all(IntertwiningCheck::holds)
    }

    /// One line per pair: `family|a|b|status|π(t_a t_b)|π(a)⊗π(b)`.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{}|{}|{}|{}|{}|{}\n",
                self.family,
                self.family.name_of(&c.a),
                self.family.name_of(&c.b),
                if c.holds() { "pass" } else { "fail" },
                c.image.as_ref().map_or("-".to_string(), |i| i.to_string()),
                c.expected
            ));
        }
        out.push_str(&format!(
            "{}|bijection|{}\n",
            self.family,
            if self.bijective { "pass" } else { "fail" }
        ));
        out
    }
}

/// `π(t_a t_b) = π(a) ⊗ π(b)` for all `a, b` among `g_k, g'_k` with
/// `k_a + k_b ≤ bound`.
pub fn verify_isomorphism(
    family: CellFamily,
    bound: usize,
    table: &mut GammaTable,
    cert: &ACertifier,
) -> Result<IsomorphismReport> {
    let mut checks = Vec::new();
    for k in 0..=bound {
        for l in 0..=bound - k {
            for pk in [false, true] {
                for pl in [false, true] {
                    let (a, b) = (family.element(k, pk), family.element(l, pl));
                    let product = j_mul_covering(&JElement::t(a), &JElement::t(b), table, cert)?;
                    let expected = pi_map(family, &a)?.tensor(pi_map(family, &b)?);
                    checks.push(IntertwiningCheck {
                        a,
                        b,
                        image: pi_image(family, &product).ok(),
                        product,
                        expected,
                    });
                }
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut injective = true;
    for k in 0..=bound {
        for p in [false, true] {
            injective &= seen.insert(pi_map(family, &family.element(k, p))?);
        }
    }
    let onto = (0..=bound as u32).all(|k| seen.contains(&Irrep::new(k, false)) && seen.contains(&Irrep::new(k, true)));
    Ok(IsomorphismReport {
        family,
        bound,
        checks,
        bijective: injective && onto,
    })
}

/// Computed products that decide the four cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureFacts {
    /// `w` with `w ∈ D12`, `w⁻¹ ∈ D013`.
    pub w: WeylElement,
    /// `t_{w⁻¹} t_w`.
    pub inverse_product: JElement,
    /// The distinguished involution in the support of `t_{w⁻¹} t_w`.
    pub distinguished: WeylElement,
    /// `t_v t_v` for the other element `v` of that support.
    pub square: JElement,
    /// Every irreducible of `SO3(C)` has odd dimension.
    pub so3_dims_odd: bool,
}

impl ConjectureFacts {
    /// Computes the facts from the table.
    pub fn compute(table: &mut GammaTable, cert: &ACertifier) -> Result<ConjectureFacts> {
        let w = evaluate("01321")?;
        let distinguished = evaluate("121")?;
        let inverse_product = j_mul_covering(&JElement::t(w.inverse()), &JElement::t(w), table, cert)?;
        let v = inverse_product
            .support()
            .into_iter()
            .find(|z| *z != distinguished)
            .ok_or_else(|| Error::FactMismatch("t_{w^-1} t_w has no second term".to_string()))?;
        let square = j_mul_covering(&JElement::t(v), &JElement::t(v), table, cert)?;
        let so3_dims_odd = (0..=10).all(|k| Irrep::new(k, false).dim() % 2 == 1);
        Ok(ConjectureFacts {
            w,
            inverse_product,
            distinguished,
            square,
            so3_dims_odd,
        })
    }

    pub fn v(&self) -> Option<WeylElement> {
        self.inverse_product
            .support()
            .into_iter()
            .find(|z| *z != self.distinguished)
    }

    fn expect(&self) -> Result<()> {
        let e = |s: &str| evaluate(s).expect("valid word");
        let expected_inverse = JElement::sum([e("1210321"), e("121")]);
        let expected_square = JElement::sum([e("12103210321"), e("1210321"), e("121")]);
        if self.w != e("01321") || self.distinguished != e("121") {
            return Err(Error::FactMismatch(
                "unexpected w or distinguished involution".to_string(),
            ));
        }
        if self.inverse_product != expected_inverse {
            return Err(Error::FactMismatch(format!(
                "t_{{w^-1}} t_w = {}, expected {expected_inverse}",
                self.inverse_product
            )));
        }
        if self.square != expected_square {
            return Err(Error::FactMismatch(format!(
                "t_v t_v = {}, expected {expected_square}",
                self.square
            )));
        }
        if !self.so3_dims_odd {
            return Err(Error::FactMismatch("SO3 dimensions must be odd".to_string()));
        }
        Ok(())
    }
}

/// Where the pair `(x, y)` with `π(w⁻¹)` supported on its orbit sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitCase {
    /// `x` and `y` are both `F`-fixed; the stabilizer is `O3`.
    BothFixed,
    /// Neither is fixed; the stabilizer is `SO3`.
    NeitherFixed,
    /// `x` moves, `y` is fixed.
    FirstMoves,
    /// `x` is fixed, `y` moves.
    SecondMoves,
}

impl OrbitCase {
    pub const ALL: [OrbitCase; 4] = [
        OrbitCase::BothFixed,
        OrbitCase::NeitherFixed,
        OrbitCase::FirstMoves,
        OrbitCase::SecondMoves,
    ];

    pub fn index(self) -> u32 {
        match self {
            OrbitCase::BothFixed => 1,
            OrbitCase::NeitherFixed => 2,
            OrbitCase::FirstMoves => 3,
            OrbitCase::SecondMoves => 4,
        }
    }

    /// Number of irreducible bundles in `π(w⁻¹) * π(w)` when the stalk
    /// representation has dimension `dim`, and whether the decomposition has
    /// exactly two summands `U ⊕ U'` with `U' * U' = U`.
    fn summands(self, dim: u64) -> (u64, bool) {
        match self {
            OrbitCase::BothFixed | OrbitCase::NeitherFixed => (dim, false),
            OrbitCase::FirstMoves => (2 * dim, dim == 1),
            OrbitCase::SecondMoves => (2 * dim, dim == 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseVerdict {
    pub case: OrbitCase,
    pub rejected: bool,
    pub reason: String,
}

/// Runs the four cases against the computed facts. Each case predicts
/// `Σ_u γ_{w⁻¹,w,u}` as a function of `dim ρ` (odd, increasing), and in the
/// cases with two summands predicts `t_v t_v = t_d`.
pub fn falsify_conjecture(facts: &ConjectureFacts) -> Result<Vec<CaseVerdict>> {
    facts.expect()?;
    let total: Int = facts
        .inverse_product
        .terms()
        .into_iter()
        .fold(Int::ZERO, |acc, (_, c)| &acc + &c);
    let total = total
        .to_i64()
        .filter(|t| *t > 0)
        .ok_or_else(|| Error::FactMismatch("nonpositive coefficient sum".to_string()))? as u64;
    let v = facts.v().ok_or_else(|| Error::FactMismatch("missing v".to_string()))?;
    let square_is_unit = facts.square == JElement::t(facts.distinguished);
    let mut verdicts = Vec::new();
    for case in OrbitCase::ALL {
        let dims = (0..).map(|k| 2 * k + 1).take_while(|d| case.summands(*d).0 <= total);
        let consistent: Vec<u64> = dims.filter(|d| case.summands(*d).0 == total).collect();
        let (rejected, reason) = if consistent.is_empty() {
            let smallest_over = (0..)
                .map(|k| 2 * k + 1)
                .map(|d| case.summands(d).0)
                .find(|n| *n > total)
                .unwrap_or(0);
            let why = match case {
                OrbitCase::BothFixed | OrbitCase::NeitherFixed => {
                    format!("sum of gamma would be dim rho, which is odd; computed sum is {total}")
                }
                _ => format!("sum of gamma would be 2 dim rho >= {smallest_over}; computed sum is {total}"),
            };
            (true, why)
        } else if consistent.iter().all(|d| case.summands(*d).1) {
            if square_is_unit {
                (
                    false,
                    format!("dim rho = 1 is consistent and t_v t_v = t_{}", facts.distinguished),
                )
            } else {
                (
                    true,
                    format!(
                        "dim rho = 1 forces t_v t_v = t_{} for v = {v}, but t_v t_v has {} terms",
                        facts.distinguished,
                        facts.square.len()
                    ),
                )
            }
        } else {
            (
                false,
                format!("dim rho in {consistent:?} is consistent with the sum {total}"),
            )
        };
        let reason = match (case, rejected) {
            (OrbitCase::SecondMoves, true) if !consistent.is_empty() => {
                format!("positive weight: sum of gamma would be 2 dim rho >= 6; weight 0: {reason}")
            }
            _ => reason,
        };
        verdicts.push(CaseVerdict { case, rejected, reason });
    }
    Ok(verdicts)
}

/// `case|rejected|reason` lines.
pub fn falsification_report(verdicts: &[CaseVerdict]) -> String {
    verdicts
        .iter()
        .map(|v| {
            format!(
                "case {}|{}|{}\n",
                v.case.index(),
                if v.rejected { "rejected" } else { "open" },
                v.reason
            )
        })
        .collect()
}
