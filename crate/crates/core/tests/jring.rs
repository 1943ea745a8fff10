use std::sync::Arc;

use sp6cells::cells::{ACertifier, CertifierConfig, GammaTable};
use sp6cells::hecke::KLCache;
use sp6cells::jring::*;
use sp6cells::num::Int;
use sp6cells::weyl::{evaluate, WeylElement};

const DISTINGUISHED: [&str; 12] = [
    "013",
    "20132",
    "020",
    "121",
    "3201323",
    "03203",
    "01201",
    "13213",
    "2032032",
    "2132132",
    "120320321",
    "021321320",
];

fn w(s: &str) -> WeylElement {
    evaluate(s).unwrap()
}

fn certifier() -> ACertifier {
    ACertifier::with_config(
        Arc::new(KLCache::new()),
        CertifierConfig {
            pinned_families: false,
            ..CertifierConfig::default()
        },
    )
}

fn distinguished() -> Vec<WeylElement> {
    DISTINGUISHED.iter().map(|s| w(s)).collect()
}

#[test]
fn x1_squared() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let x = |k| CellFamily::D12.element(k, false);
    let p = j_mul_covering(&JElement::t(x(1)), &JElement::t(x(1)), &mut table, &cert).unwrap();
    assert_eq!(p, JElement::sum([x(0), x(1), x(2)]));
    assert_eq!(p.format_with(|z| CellFamily::D12.name_of(z)), "x2 + x1 + x0");
}

#[test]
fn family_members_by_name() {
    assert_eq!(parse_family_element("x0").unwrap(), w("121"));
    assert_eq!(parse_family_element("u0").unwrap(), w("013"));
    assert_eq!(parse_family_element("x1").unwrap(), w("1210321"));
    assert_eq!(parse_family_element("u'0").unwrap(), WeylElement::tau().mul(&w("013")));
    assert_eq!(parse_family_element("0132").unwrap(), w("0132"));
    assert!(parse_family_element("xq").is_err());
    for f in CellFamily::ALL {
        for k in 0..4 {
            for p in [false, true] {
                let e = f.element(k, p);
                assert_eq!(f.index_of(&e), Some((k, p)));
                assert_eq!(parse_family_element(&f.name(k, p)).unwrap(), e);
                assert!(e.is_involution());
            }
        }
    }
}

#[test]
fn direct_identities_for_small_indices() {
    let cert = certifier();
    let mut table = GammaTable::new();
    for f in CellFamily::ALL {
        let r = verify_family_identities(f, 2, Mode::Direct, &mut table, &cert).unwrap();
        assert!(r.passed(), "{}", r.report());
        assert_eq!(r.instances.len(), 3 * 6);
    }
}

#[test]
fn recursive_identities_match_direct() {
    // Long family members need the pinned a-values.
    let cert = ACertifier::new(Arc::new(KLCache::new()));
    let mut table = GammaTable::new();
    let r = verify_family_identities(CellFamily::D12, 3, Mode::Recursive, &mut table, &cert).unwrap();
    assert!(r.passed(), "{}", r.report());
    for i in r.instances.iter().filter(|i| i.k + i.l <= 3) {
        let direct = verify_identity(i.eq, i.k, i.l, &mut table, &cert).unwrap();
        assert_eq!(direct.lhs, i.lhs, "{} {}", i.k, i.l);
    }
}

#[test]
fn mixed_product_of_u_families_differs_from_the_variant() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let i = verify_identity(FamilyEq::UUp, 1, 1, &mut table, &cert).unwrap();
    assert_eq!(i.status, Status::PassVariantDiffers);
    assert!(i.line().contains("variant"));
}

#[test]
fn family_products_commute() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let elems: Vec<WeylElement> = (0..2)
        .flat_map(|k| [CellFamily::D12.element(k, false), CellFamily::D12.element(k, true)])
        .collect();
    for (x, y, ok) in commutativity_check(&elems, &mut table, &cert).unwrap() {
        assert!(ok, "{x} {y}");
    }
}

#[test]
fn distinguished_sum_is_a_unit() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let elems = [w("121"), w("1210321"), w("013"), w("0132"), w("12310")];
    let r = unit_check(&elems, &distinguished(), &mut table, &cert).unwrap();
    assert!(r.passed(), "{:?}", r.actions);
}

#[test]
fn primed_members_are_star_images() {
    for k in 0..5 {
        assert!(star_transport_check(k).unwrap(), "{k}");
    }
}

#[test]
fn uncovered_products_are_errors() {
    let table = GammaTable::new();
    assert!(j_mul(&JElement::t(w("121")), &JElement::t(w("121")), &table).is_err());
}

#[test]
fn j_element_arithmetic() {
    let mut a = JElement::t(w("121"));
    a.add_scaled(&JElement::t(w("121")), &Int::from(-1));
    assert!(a.is_zero());
    let b = JElement::from_terms([(w("121"), Int::from(2)), (w("013"), Int::from(-1))]);
    assert_eq!(b.len(), 2);
    assert_eq!(b.coeff(&w("013")), Int::from(-1));
    assert_eq!(b.to_string(), "2t[121] - t[013]");
}

#[test]
fn phi_is_multiplicative_on_samples() {
    let cert = certifier();
    let ds = distinguished();
    let mut table = GammaTable::new();
    for (a, b) in [("1", "121"), ("121", "121"), ("013", "2"), ("0", "013")] {
        let c = phi_multiplicativity(&w(a), &w(b), &ds, &mut table, &cert).unwrap();
        assert!(c.holds(), "{a} {b}");
        assert!(!c.product_of_images.is_empty(), "{a} {b}");
    }
}

#[test]
fn phi_of_a_distinguished_involution() {
    let cert = certifier();
    let ds = distinguished();
    let p = lusztig_phi(&w("121"), &ds, &cert).unwrap();
    assert!(p.truncated.is_none());
    assert!(!p.coeff(&w("121")).is_zero());
    let partial = lusztig_phi(&w("121"), &ds[..2], &cert).unwrap();
    assert!(partial.truncated.is_some());
    assert!(partial.report().contains("# truncated"));
}

#[test]
fn distinguished_involutions_of_d_at_radius_12() {
    let cache = KLCache::new();
    let mut got: Vec<String> = distinguished_in_d(12, &cache).iter().map(|d| d.to_string()).collect();
    let mut expected: Vec<String> = distinguished().iter().map(|d| d.to_string()).collect();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
}
