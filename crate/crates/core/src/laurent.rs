//! The ring `Z[v, v^-1]` with `v = q^(1/2)`.
//!
//! Exponents are always counted in units of `v`, so a polynomial in `q`
//! lives in the even-exponent subring.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::num::Int;

/// Sparse Laurent polynomial: `(exponent, coefficient)` pairs sorted by
/// exponent, no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: Vec<(i32, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<Int>, exp: i32) -> Self {
        let c = coeff.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// `v = q^(1/2)`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `ξ = v + v^-1`.
    pub fn xi() -> Self {
        Self::from_pairs([(1, 1), (-1, 1)])
    }

    /// `ζ = v - v^-1`.
    pub fn zeta() -> Self {
        Self::from_pairs([(1, 1), (-1, -1)])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<Int>,
    {
        let mut terms: Vec<(i32, Int)> = pairs.into_iter().map(|(e, c)| (e, c.into())).collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Int)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentPoly { terms: out }
    }

    /// Polynomial in `q` from its coefficient list `[c0, c1, ...]`.
    pub fn from_q_coeffs(coeffs: &[Int]) -> Self {
        LaurentPoly {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (2 * i as i32, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Highest exponent, `None` standing for `-∞` on the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn low_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coeff_at(&self, exp: i32) -> Int {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn leading_coeff(&self) -> Int {
        self.terms.last().map(|t| t.1.clone()).unwrap_or(Int::ZERO)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Int)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution `v ↦ v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Keeps only the terms of exponent `>= min_exp`.
    pub fn truncate_below(&self, min_exp: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 >= min_exp).cloned().collect(),
        }
    }

    /// `self += c·v^k·other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Int, k: i32) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(e, x)| (e + k, x)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, _)), Some((eb, _))) if *ea < *eb => out.push(a.next().unwrap().clone()),
                (Some((ea, _)), Some((eb, _))) if *ea > *eb => {
                    let (eb, xb) = b.next().unwrap();
                    out.push((eb, xb * c));
                }
                (Some(_), Some(_)) => {
                    let (ea, xa) = a.next().unwrap();
                    let (_, xb) = b.next().unwrap();
                    let s = xa + &(xb * c);
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (eb, xb) = b.next().unwrap();
                    out.push((eb, xb * c));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// Sparse text form: `c:e` pairs by decreasing exponent joined by `+`,
    /// `0` for the zero polynomial.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| format!("{c}:{e}"))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn parse_sparse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let bad = || Error::InvalidPoly(s.to_string());
        let mut pairs = Vec::new();
        for part in s.split('+') {
            let (c, e) = part.split_once(':').ok_or_else(bad)?;
            let c: Int = c.trim().parse().map_err(|_| bad())?;
            let e: i32 = e.trim().parse().map_err(|_| bad())?;
            pairs.push((e, c));
        }
        Ok(Self::from_pairs(pairs))
    }
}

impl fmt::Display for LaurentPoly {
    /// Human-readable form in `v`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "v")?,
                e => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_sparse(s)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Int::ONE, 0);
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Int::from(-1), 0);
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = LaurentPoly::zero();
        for (e, c) in &small.terms {
            out.add_scaled(large, c, *e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &Int::ONE, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, &Int::from(-1), 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn squares() {
        let xi = LaurentPoly::xi();
        let zeta = LaurentPoly::zeta();
        assert_eq!(&xi * &xi, lp(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&zeta * &zeta, lp(&[(2, 1), (0, -2), (-2, 1)]));
        assert!((&xi * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn degrees_and_coefficients() {
        let xi3 = LaurentPoly::xi().pow(3);
        assert_eq!(LaurentPoly::zero().degree(), None);
        assert_eq!(xi3.degree(), Some(3));
        assert_eq!((&LaurentPoly::q().pow(2) * &LaurentPoly::v()).degree(), Some(5));
        assert_eq!(xi3.coeff_at(3), 1);
        assert_eq!(xi3.coeff_at(1), 3);
        assert_eq!(LaurentPoly::zero().coeff_at(7), 0);
    }

    #[test]
    fn sparse_text_form() {
        let xi3 = LaurentPoly::xi().pow(3);
        assert_eq!(xi3.to_sparse_string(), "1:3+3:1+3:-1+1:-3");
        assert_eq!(LaurentPoly::parse_sparse("1:3+3:1+3:-1+1:-3").unwrap(), xi3);
        assert_eq!(LaurentPoly::parse_sparse("0").unwrap(), LaurentPoly::zero());
        let z = LaurentPoly::zeta();
        assert_eq!(LaurentPoly::parse_sparse(&z.to_sparse_string()).unwrap(), z);
        assert!(LaurentPoly::parse_sparse("1:").is_err());
        assert!(LaurentPoly::parse_sparse("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::xi().pow(3).to_string(), "v^3 + 3v + 3v^-1 + v^-3");
        assert_eq!(LaurentPoly::zeta().to_string(), "v - v^-1");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn distributive(p in arb_poly(), r in arb_poly(), s in arb_poly()) {
            prop_assert_eq!(&(&p + &r) * &s, &(&p * &s) + &(&r * &s));
        }

        #[test]
        fn ring_laws(p in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &r, &r * &p);
            prop_assert_eq!(&(&p + &r) - &r, p.clone());
            prop_assert!((&p + &(-&p)).is_zero());
            if !p.is_zero() && !r.is_zero() {
                prop_assert_eq!((&p * &r).degree(), Some(p.degree().unwrap() + r.degree().unwrap()));
            }
        }

        #[test]
        fn bar_is_ring_automorphism(p in arb_poly(), r in arb_poly()) {
            prop_assert_eq!((&p * &r).bar(), &p.bar() * &r.bar());
            prop_assert_eq!((&p + &r).bar(), &p.bar() + &r.bar());
            prop_assert_eq!(p.bar().bar(), p);
        }
    }
}
