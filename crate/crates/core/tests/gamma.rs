use std::sync::Arc;

use sp6cells::cells::laws::{gamma_cell_relations, gamma_star_transport, gamma_symmetries, gamma_tau_twists};
use sp6cells::cells::*;
use sp6cells::hecke::{h_coeffs, KLCache};
use sp6cells::num::Int;
use sp6cells::weyl::{evaluate, WeylElement};
use sp6cells::Error;

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

/// Coefficient of `v^3` in `h_{x,y,z}`, read from a plain scan of `C_x C_y`.
fn top_coefficient_by_scan(x: &WeylElement, y: &WeylElement, z: &WeylElement, cache: &KLCache) -> Int {
    h_coeffs(x, y, cache)
        .into_iter()
        .find(|(u, _)| u == z)
        .map_or(Int::ZERO, |(_, p)| p.coeff_at(3))
}

#[test]
fn gamma_of_a_distinguished_involution_with_itself() {
    let cert = certifier();
    let d = w("121");
    assert_eq!(gamma(&d, &d, &d, &cert, 8).unwrap(), Int::ONE);
    let u0 = w("013");
    assert_eq!(gamma(&u0, &u0, &u0, &cert, 8).unwrap(), Int::ONE);
}

#[test]
fn gamma_examples_match_a_scan_of_h() {
    let cert = certifier();
    let (x, y) = (w("12310"), w("01321"));
    for z in ["1210321", "121", "0132"] {
        let z = w(z);
        assert_eq!(
            gamma(&x, &y, &z, &cert, 8).unwrap(),
            top_coefficient_by_scan(&x, &y, &z, cert.cache())
        );
    }
    assert_eq!(gamma(&x, &y, &w("1210321"), &cert, 8).unwrap(), Int::ONE);
    assert_eq!(gamma(&x, &y, &w("0132"), &cert, 8).unwrap(), Int::ZERO);
}

#[test]
fn rows_from_both_routes_agree() {
    let cert = certifier();
    let mut slow = GammaTable::new();
    let mut fast = GammaTable::new();
    for (a, b) in [
        ("121", "121"),
        ("12310", "01321"),
        ("1210321", "1210321"),
        ("013", "0132013"),
    ] {
        let (x, y) = (w(a), w(b));
        let r1 = slow.cover(&x, &y, &cert).unwrap().clone();
        let r2 = fast.cover_fast(&x, &y, &cert).unwrap().clone();
        assert_eq!(r1.terms, r2.terms, "{a} {b}");
        assert_eq!(r1.route, RowRoute::Confirmed);
        assert_eq!(r2.route, RowRoute::LeadingT);
    }
}

#[test]
fn leading_t_coefficients_refuse_high_degrees() {
    assert!(leading_t_coefficients(&w("121"), &w("121")).is_some());
    assert!(leading_t_coefficients(&w("2323"), &w("2323")).is_none());
}

#[test]
fn uncovered_pairs_are_errors() {
    let table = GammaTable::new();
    let err = table.get(&w("121"), &w("121"), &w("121")).unwrap_err();
    assert!(matches!(err, Error::MissingGamma { .. }));
}

#[test]
fn factors_outside_d_are_rejected() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let err = table.cover(&w("1"), &w("121"), &cert).unwrap_err();
    assert!(matches!(err, Error::NotInCell { .. }));
}

#[test]
fn report_has_one_line_per_triple() {
    let cert = certifier();
    let mut table = GammaTable::new();
    table.cover(&w("12310"), &w("01321"), &cert).unwrap();
    assert_eq!(table.report(), "12013|01321|121|1|3\n12013|01321|1201321|1|3\n");
    assert_eq!(table.triples().len(), 2);
}

fn seeded_table(cert: &ACertifier) -> GammaTable {
    let mut table = GammaTable::new();
    let elems = ["121", "013", "0132", "01321", "12310", "1210321", "0132013", "t20121"];
    for a in elems {
        for b in elems {
            let (x, y) = (w(a), w(b));
            if x.right_descents() == y.inverse().right_descents() {
                table.cover_fast(&x, &y, cert).unwrap();
            }
        }
    }
    table
}

#[test]
fn gamma_symmetries_hold_on_a_seeded_table() {
    let cert = certifier();
    let mut table = seeded_table(&cert);
    assert!(!table.triples().is_empty());
    let r = gamma_symmetries(&mut table, &cert, 22);
    assert!(r.holds(), "{r}");
    let r = gamma_tau_twists(&mut table, &cert, 22);
    assert!(r.holds(), "{r}");
    let r = gamma_star_transport(&mut table, &cert, 22);
    assert!(r.holds(), "{r}");
}

#[test]
fn nonzero_gamma_respects_cells() {
    let cert = certifier();
    let table = seeded_table(&cert);
    let cache = cert.cache();
    let (l, r) = (left_cells(10, cache), right_cells(10, cache));
    let report = gamma_cell_relations(&table, &l, &r);
    assert!(report.holds(), "{report}");
}

#[test]
fn distinguished_involution_acts_as_unit_on_its_cell() {
    let cert = certifier();
    let mut table = GammaTable::new();
    let d = w("121");
    for x in ["121", "1210321", "t20121"] {
        let x = w(x);
        if x.right_descents() != d.left_descents() {
            continue;
        }
        let row = table.cover(&x, &d, &cert).unwrap();
        assert_eq!(row.gamma(&x), Int::ONE, "{x}");
    }
}
