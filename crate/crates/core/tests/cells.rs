use std::sync::Arc;

use proptest::prelude::*;
use rustc_hash::FxHashMap;
use sp6cells::cells::laws::{descent_monotonicity, left_strings, string_identities};
use sp6cells::cells::*;
use sp6cells::hecke::{kl_poly_right_recursion, mult_c_s, KLCache};
use sp6cells::laurent::LaurentPoly;
use sp6cells::reference::{D_LEFT_CELLS, D_STAR_EDGES};
use sp6cells::weyl::{ball, evaluate, parabolic_longest, GenSet, Generator, Side, WeylElement};

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

#[test]
fn parabolic_lower_bounds() {
    assert_eq!(a_lower_bound(&WeylElement::identity()), 0);
    assert_eq!(a_lower_bound(&w("2323")), 4);
    let w012 = parabolic_longest(GenSet::from_labels("012").unwrap()).unwrap();
    assert_eq!(w012.length(), 6);
    assert_eq!(a_lower_bound(&w012), 6);
    assert_eq!(a_lower_bound(&w("121")), 3);
    assert_eq!(a_lower_bound(&w("013")), 3);
}

#[test]
fn a_values_on_d() {
    let cert = certifier();
    assert_eq!(cert.a_value(&WeylElement::identity(), 6).certified().unwrap(), 0);
    assert_eq!(cert.a_value(&w("121"), 8).certified().unwrap(), 3);
    assert_eq!(cert.a_value(&w("013"), 8).certified().unwrap(), 3);
    assert_eq!(cert.in_cell_d(&w("0132")), Some(true));
    assert_eq!(cert.in_cell_d(&w("2323")), Some(false));
    assert_eq!(cert.in_cell_d(&w("1")), Some(false));
}

#[test]
fn delta_matches_right_recursion() {
    let cache = KLCache::new();
    let mut memo = FxHashMap::default();
    let e = WeylElement::identity();
    for s in ["121", "013", "0132", "1210321", "020", "3201323"] {
        let x = w(s);
        let p = kl_poly_right_recursion(&e, &x, &mut memo);
        let deg = p.degree().unwrap() as u32;
        assert_eq!(cache.delta(&x), Some(deg / 2), "{s}");
    }
    assert_eq!(cache.delta(&w("121")), Some(0));
    assert_eq!(cache.delta(&w("013")), Some(0));
    assert_eq!(cache.delta(&e), Some(0));
    assert_eq!(cache.delta(&w("t013")), None);
}

#[test]
fn distinguished_involutions() {
    let cert = certifier();
    assert!(cert.is_distinguished(&WeylElement::identity(), 6).unwrap());
    assert!(cert.is_distinguished(&w("121"), 8).unwrap());
    assert!(cert.is_distinguished(&w("013"), 8).unwrap());
    assert!(!cert.is_distinguished(&w("0132"), 8).unwrap());
    assert!(!w("0132").is_involution());
    assert!(!cert.is_distinguished(&w("t013"), 8).unwrap());
}

#[test]
fn length_zero_elements_form_one_left_cell() {
    let cache = KLCache::new();
    let p = left_cells(6, &cache);
    let cell = p.cell_of(&WeylElement::identity()).unwrap();
    assert_eq!(cell.members, vec![WeylElement::identity(), WeylElement::tau()]);
    assert!(!cell.provisional);
}

#[test]
fn partition_covers_the_ball_once() {
    let cache = KLCache::new();
    let p = left_cells(6, &cache);
    let elems = ball(6, true);
    assert_eq!(p.elements().count(), elems.len());
    for x in &elems {
        assert!(p.cell_of(x).unwrap().contains(x));
    }
}

#[test]
fn d_representatives_in_distinct_cells_with_matching_r_sets() {
    let cache = KLCache::new();
    let p = left_cells(8, &cache);
    let mut seen = Vec::new();
    for rep in &D_LEFT_CELLS {
        let x = rep.element();
        let i = p.cell_index(&x).unwrap();
        assert!(!seen.contains(&i), "{} shares a cell", rep.name);
        seen.push(i);
        assert_eq!(x.right_descents(), rep.r_set(), "{}", rep.name);
    }
    let c013 = p.cell_of(&w("013")).unwrap();
    assert_eq!(c013.r_set, Some(GenSet::from_labels("013").unwrap()));
    assert!(!c013.provisional);
    assert_eq!(
        p.cell_of(&w("0132")).unwrap().r_set,
        Some(GenSet::from_labels("2").unwrap())
    );
}

#[test]
fn non_provisional_left_cells_share_r_set() {
    let cache = KLCache::new();
    let p = left_cells(8, &cache);
    for c in p.cells.iter().filter(|c| !c.provisional) {
        let r = c.members[0].right_descents();
        assert!(c.members.iter().all(|x| x.right_descents() == r));
        assert_eq!(c.r_set, Some(r));
    }
}

#[test]
fn right_cells_are_inverses_of_left_cells() {
    let cache = KLCache::new();
    let (l, r) = (left_cells(7, &cache), right_cells(7, &cache));
    for x in ball(7, true) {
        let mut inv: Vec<WeylElement> = l.cell_of(&x).unwrap().members.iter().map(|y| y.inverse()).collect();
        inv.sort_by_cached_key(|y| y.sort_key());
        assert_eq!(inv, r.cell_of(&x.inverse()).unwrap().members);
    }
}

#[test]
fn two_sided_cells_join_left_and_right() {
    let cache = KLCache::new();
    let (l, t) = (left_cells(7, &cache), two_sided_cells(7, &cache));
    for x in ball(7, true) {
        let two = t.cell_of(&x).unwrap();
        assert!(l.cell_of(&x).unwrap().members.iter().all(|y| two.contains(y)));
    }
}

#[test]
fn partition_report_lists_every_cell() {
    let cache = KLCache::new();
    let p = left_cells(4, &cache);
    let report = p.report();
    assert_eq!(report.lines().filter(|l| l.starts_with("cell ")).count(), p.cells.len());
    assert!(report.contains("kind=left"));
    assert_eq!(report, p.to_string());
}

#[test]
fn star_graph_reproduces_the_d_diagrams() {
    let cache = KLCache::new();
    let p = left_cells(10, &cache);
    let seeds: Vec<usize> = D_LEFT_CELLS
        .iter()
        .map(|r| p.cell_index(&r.element()).unwrap())
        .collect();
    let edges = cell_star_graph(&p, &seeds, &StarPair::ALL).unwrap();
    let name = |i: usize| seeds.iter().position(|s| *s == i).map(|j| D_LEFT_CELLS[j].name);
    for (a, pair, b) in D_STAR_EDGES {
        let pair = StarPair::from_labels(pair).unwrap();
        assert!(
            edges
                .iter()
                .any(|e| e.pair == pair && name(e.from) == Some(a) && name(e.to) == Some(b)),
            "{a} {pair} {b}"
        );
        assert!(
            edges
                .iter()
                .any(|e| e.pair == pair && name(e.from) == Some(b) && name(e.to) == Some(a)),
            "{b} {pair} {a}"
        );
    }
}

#[test]
fn star_graph_needs_left_cells() {
    let cache = KLCache::new();
    let p = right_cells(4, &cache);
    assert!(cell_star_graph(&p, &[0], &StarPair::ALL).is_err());
}

#[test]
fn representatives_with_equal_r_sets_are_separated_by_stars() {
    for (a, b) in [("0132", "0132032"), ("0132", "0132132"), ("0132032", "0132132")] {
        let path = separating_right_stars(&w(a), &w(b), 3).unwrap();
        assert!(!path.is_empty());
    }
    assert_eq!(separating_right_stars(&w("013"), &w("0132"), 3), Some(Vec::new()));
}

#[test]
fn strings_have_m_minus_one_elements() {
    for pair in StarPair::ALL {
        for s in left_strings(5, pair) {
            assert_eq!(s.len() as u32, pair.order() - 1);
            for x in &s {
                assert!(in_string(x, pair, Side::Left));
            }
        }
    }
}

#[test]
fn string_identities_on_ball_7() {
    let cache = KLCache::new();
    let r = string_identities(7, &cache);
    assert!(r.holds(), "{r}");
    assert!(r.checked > 1000);
}

#[test]
fn descent_sets_grow_down_the_preorder() {
    let cache = KLCache::new();
    let r = descent_monotonicity(7, &cache);
    assert!(r.holds(), "{r}");
}

#[test]
fn right_multiplication_by_s2_extends_013() {
    let cache = KLCache::new();
    let x = w("013");
    let h = mult_c_s(Generator::S2, &x, Side::Right, &cache);
    assert_eq!(h.support(), vec![w("0132")]);
    assert_eq!(h.coeff(&w("0132")), LaurentPoly::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_bound_is_inverse_invariant(i in 0usize..400) {
        let elems = ball(6, false);
        let x = elems[i % elems.len()];
        prop_assert_eq!(a_lower_bound(&x), a_lower_bound(&x.inverse()));
        prop_assert!(a_lower_bound(&x) <= x.length());
    }

    #[test]
    fn tau_multiples_share_cells(i in 0usize..400) {
        let cache = KLCache::new();
        let elems = ball(5, false);
        let x = elems[i % elems.len()];
        let p = left_cells(5, &cache);
        prop_assert!(p.same_cell(&x, &WeylElement::tau().mul(&x)));
    }
}
