//! The left multiplications that produce `C_{u_1} C_{u_l}` for the family
//! `u_l = (s0s1s3s2)^l s0s1s3`, checked exactly or modulo the span of the
//! `C_w` with `a(w) ≥ 4`.

use crate::cells::ACertifier;
use crate::error::Result;
use crate::hecke::{c_mul_gen, c_product_by_generators, mult_c_s, reduce_mod_high_a, HeckeElement, KLCache};
use crate::laurent::LaurentPoly;
use crate::num::Int;
use crate::reference::u_k;
use crate::weyl::{evaluate, Generator, Side, WeylElement};

/// Terms with `a ≥ HIGH_A` are dropped.
pub const HIGH_A: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub name: String,
    pub l: usize,
    /// Computed value with the high-a terms removed.
    pub kept: HeckeElement,
    pub expected: HeckeElement,
    /// Dropped terms with their certified lower bound on `a`.
    pub dropped: Vec<(WeylElement, u32)>,
}

impl StepCheck {
    pub fn holds(&self) -> bool {
        self.kept == self.expected && self.dropped.iter().all(|(_, a)| *a >= HIGH_A)
    }

    pub fn line(&self) -> String {
        let dropped: Vec<String> = self.dropped.iter().map(|(w, a)| format!("{w}:a>={a}")).collect();
        format!(
            "{}|l={}|{}|{}|{}|dropped={}",
            self.name,
            self.l,
            if self.holds() { "pass" } else { "fail" },
            self.kept,
            self.expected,
            if dropped.is_empty() {
                "-".to_string()
            } else {
                dropped.join(",")
            }
        )
    }
}

fn c(w: WeylElement) -> HeckeElement {
    HeckeElement::c(w)
}

fn xi_pow(n: u32) -> LaurentPoly {
    LaurentPoly::xi().pow(n)
}

fn sum(elems: &[WeylElement]) -> HeckeElement {
    let mut h = HeckeElement::zero(crate::hecke::Basis::C);
    for w in elems {
        h.add_scaled(&c(*w), &Int::ONE, 0);
    }
    h
}

/// `C_{u_1} = C_0 C_1 C_3 C_2 C_{013} - (ξ² + 1) C_{013}`, exactly.
pub fn u1_generator_expansion(cache: &KLCache) -> (HeckeElement, HeckeElement) {
    let u0 = u_k(0);
    let mut h = c(u0);
    for g in [Generator::S2, Generator::S3, Generator::S1, Generator::S0] {
        h = c_mul_gen(g, &h, Side::Left, cache);
    }
    h.add_mul(&c(u0), &-(&xi_pow(2) + &LaurentPoly::one()));
    (h, c(u_k(1)))
}

/// `C_{013} C_{u_l} = ξ³ C_{u_l}`, exactly.
pub fn u0_absorbs(l: usize, cache: &KLCache) -> (HeckeElement, HeckeElement) {
    let ul = u_k(l);
    (c_product_by_generators(&u_k(0), &ul, cache), c(ul).scale(&xi_pow(3)))
}

fn reduced(name: &str, l: usize, h: &HeckeElement, expected: HeckeElement, cert: &ACertifier) -> Result<StepCheck> {
    let r = reduce_mod_high_a(h, HIGH_A, |w, t| cert.threshold(w, t))?;
    let dropped = r.dropped.iter().map(|w| (*w, cert.lower(w).0)).collect();
    Ok(StepCheck {
        name: name.to_string(),
        l,
        kept: r.kept,
        expected,
        dropped,
    })
}

/// The four left multiplications by `C_2`, `C_3`, `C_1`, `C_0` applied to
/// `C_{u_l}`, then the assembled product `C_{u_1} C_{u_l}`, all modulo
/// high-a terms. Steps involving `u_{l-1}` need `l ≥ 1`.
pub fn u_family_steps(l: usize, cert: &ACertifier) -> Result<Vec<StepCheck>> {
    let cache = cert.cache();
    let (s0, s1, s2, s3) = (Generator::S0, Generator::S1, Generator::S2, Generator::S3);
    let ul = u_k(l);
    let s2u = ul.left_mul(s2);
    let s3s2u = s2u.left_mul(s3);
    let s1s3s2u = s3s2u.left_mul(s1);
    let mut out = vec![
        reduced("C2*C[u_l]", l, &mult_c_s(s2, &ul, Side::Left, cache), c(s2u), cert)?,
        reduced(
            "C3*C[s2u_l]",
            l,
            &mult_c_s(s3, &s2u, Side::Left, cache),
            sum(&[s3s2u, ul]),
            cert,
        )?,
    ];
    let prev = l.checked_sub(1).map(|m| u_k(m).left_mul(s2).left_mul(s3).left_mul(s1));
    let mut expected = vec![s1s3s2u];
    expected.extend(prev);
    out.push(reduced(
        "C1*C[s3s2u_l]",
        l,
        &mult_c_s(s1, &s3s2u, Side::Left, cache),
        sum(&expected),
        cert,
    )?);
    out.push(reduced(
        "C0*C[s1s3s2u_l]",
        l,
        &mult_c_s(s0, &s1s3s2u, Side::Left, cache),
        sum(&[u_k(l + 1), ul]),
        cert,
    )?);
    if let Some(p) = prev {
        out.push(reduced(
            "C0*C[s1s3s2u_(l-1)]",
            l,
            &mult_c_s(s0, &p, Side::Left, cache),
            sum(&[ul, u_k(l - 1)]),
            cert,
        )?);
        let mut expected = sum(&[u_k(l + 1), ul, u_k(l - 1)]);
        expected = expected.scale(&xi_pow(3));
        out.push(reduced(
            "C[u_1]*C[u_l]",
            l,
            &c_product_by_generators(&u_k(1), &ul, cache),
            expected,
            cert,
        )?);
    }
    Ok(out)
}

/// `C_{w⁻¹} C_w = ξ³(C_{1210321} + C_{121})` for `w = s0s1s3s2s1`, exactly.
pub fn inverse_product_check(cache: &KLCache) -> Result<(HeckeElement, HeckeElement)> {
    let w = evaluate("01321")?;
    let expected = sum(&[evaluate("1210321")?, evaluate("121")?]).scale(&xi_pow(3));
    Ok((c_product_by_generators(&w.inverse(), &w, cache), expected))
}
