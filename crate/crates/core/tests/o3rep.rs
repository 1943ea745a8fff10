use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use sp6cells::cells::{ACertifier, CertifierConfig, GammaTable};
use sp6cells::hecke::KLCache;
use sp6cells::jring::{CellFamily, JElement};
use sp6cells::o3rep::*;
use sp6cells::weyl::evaluate;

fn certifier() -> ACertifier {
    ACertifier::with_config(
        Arc::new(KLCache::new()),
        CertifierConfig {
            pinned_families: false,
            ..CertifierConfig::default()
        },
    )
}

/// Weight multiset of a class: `V(2k)` has weights `-k..=k` (halved), and
/// the sign is carried as a second coordinate.
fn character(c: &ORepClass) -> BTreeMap<(i64, bool), u64> {
    let mut out = BTreeMap::new();
    for (r, n) in c.terms() {
        for m in -(r.k as i64)..=r.k as i64 {
            *out.entry((m, r.sign)).or_insert(0) += n;
        }
    }
    out
}

fn product_character(a: Irrep, b: Irrep) -> BTreeMap<(i64, bool), u64> {
    let mut out = BTreeMap::new();
    for i in -(a.k as i64)..=a.k as i64 {
        for j in -(b.k as i64)..=b.k as i64 {
            *out.entry((i + j, a.sign != b.sign)).or_insert(0) += 1;
        }
    }
    out
}

fn irrep() -> impl Strategy<Value = Irrep> {
    (0u32..8, any::<bool>()).prop_map(|(k, s)| Irrep::new(k, s))
}

proptest! {
    #[test]
    fn tensor_matches_weight_characters(a in irrep(), b in irrep()) {
        prop_assert_eq!(character(&a.tensor(b)), product_character(a, b));
    }

    #[test]
    fn tensor_is_commutative(a in irrep(), b in irrep()) {
        prop_assert_eq!(a.tensor(b), b.tensor(a));
    }

    #[test]
    fn tensor_is_associative(a in irrep(), b in irrep(), c in irrep()) {
        let (ra, rb, rc) = (ORepClass::irrep(a), ORepClass::irrep(b), ORepClass::irrep(c));
        prop_assert_eq!(tensor(&tensor(&ra, &rb), &rc), tensor(&ra, &tensor(&rb, &rc)));
    }

    #[test]
    fn dimension_is_multiplicative(a in irrep(), b in irrep()) {
        prop_assert_eq!(a.tensor(b).dim(), a.dim() * b.dim());
    }

    #[test]
    fn irreps_round_trip_through_text(a in irrep()) {
        prop_assert_eq!(Irrep::parse(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn tensor_summand_counts_are_odd() {
    for k in 0..=5 {
        for l in 0..=5 {
            let n = Irrep::new(k, false).tensor(Irrep::new(l, true)).summand_count();
            assert_eq!(n, 2 * k.min(l) as u64 + 1);
            assert_eq!(n % 2, 1);
        }
    }
}

#[test]
fn irrep_text() {
    assert_eq!(Irrep::parse("V(4)").unwrap(), Irrep::new(2, false));
    assert_eq!(Irrep::parse("eV(0)").unwrap(), Irrep::EPSILON);
    assert_eq!(Irrep::parse("e").unwrap(), Irrep::EPSILON);
    assert!(Irrep::parse("V(3)").is_err());
    assert!(Irrep::parse("W(2)").is_err());
    let c = ORepClass::from_irreps([Irrep::new(1, false), Irrep::new(1, false), Irrep::EPSILON]);
    assert_eq!(c.to_string(), "2V(2) + eV(0)");
    assert_eq!(ORepClass::zero().to_string(), "0");
}

#[test]
fn pi_sends_family_members_to_irreducibles() {
    for f in CellFamily::ALL {
        for k in 0..4 {
            for p in [false, true] {
                let r = pi_map(f, &f.element(k, p)).unwrap();
                assert_eq!(r, Irrep::new(k as u32, p));
                assert_eq!(pi_inverse(f, r), f.element(k, p));
            }
        }
    }
    assert!(pi_map(CellFamily::D12, &evaluate("0132").unwrap()).is_err());
    let j = JElement::sum([CellFamily::D12.element(0, false), CellFamily::D12.element(1, true)]);
    assert_eq!(pi_image(CellFamily::D12, &j).unwrap().to_string(), "eV(2) + V(0)");
}

#[test]
fn families_are_isomorphic_to_the_representation_ring() {
    let cert = certifier();
    let mut table = GammaTable::new();
    for f in CellFamily::ALL {
        let r = verify_isomorphism(f, 2, &mut table, &cert).unwrap();
        assert!(r.passed(), "{}", r.report());
        assert_eq!(r.checks.len(), 4 * 6);
    }
}

#[test]
fn every_case_of_the_conjecture_is_rejected() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let facts = ConjectureFacts::compute(&mut table, &cert).unwrap();
    let e = |s| evaluate(s).unwrap();
    assert_eq!(facts.inverse_product, JElement::sum([e("1210321"), e("121")]));
    assert_eq!(facts.v(), Some(e("1210321")));
    assert_eq!(facts.square, JElement::sum([e("12103210321"), e("1210321"), e("121")]));
    let verdicts = falsify_conjecture(&facts).unwrap();
    assert_eq!(verdicts.len(), 4);
    assert!(verdicts.iter().all(|v| v.rejected));
    let report = falsification_report(&verdicts);
    assert_eq!(report.lines().filter(|l| l.contains("|rejected|")).count(), 4);
}

#[test]
fn falsification_refuses_wrong_facts() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let mut facts = ConjectureFacts::compute(&mut table, &cert).unwrap();
    facts.square = JElement::t(facts.distinguished);
    assert!(falsify_conjecture(&facts).is_err());
}
