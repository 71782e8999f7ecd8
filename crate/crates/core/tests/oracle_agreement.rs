//! Closed-form spectra, torsion codes and cardinalities against exhaustive
//! enumeration on small rings.

use std::sync::Arc;

use constadepth::factor::factor_binomial;
use constadepth::io::parse_elem_str;
use constadepth::spectra::{distribution_oracle, spectrum_dispatch};
use constadepth::{Code, Ring, DEFAULT_ENUMERATION_CAP};

fn exponent_vectors(bounds: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bounds).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every code of length `n` over `ring` with the given lambda; returns the
/// number of codes checked.
fn check_family(ring: &Arc<Ring>, lambda: &str, n: usize) -> usize {
    let lambda = parse_elem_str(ring, lambda).unwrap();
    let split = constadepth::factor::teichmuller_base_root(ring, lambda, n).unwrap();
    let fact = factor_binomial(ring, split.n, split.alpha0).unwrap();
    let bound = ring.e() as usize * split.p_pow_s(ring);
    let mut checked = 0;
    for k in exponent_vectors(bound, fact.len()) {
        let code = Code::with_factorization(ring, split.clone(), fact.clone(), n, &k).unwrap();
        let basis = code.echelon_basis();
        let card = code.cardinality();
        assert_eq!(card, basis.cardinality(), "{code:?}");
        if card.exceeds(DEFAULT_ENUMERATION_CAP) {
            continue;
        }
        for i in 0..ring.e() {
            if !code.formulas_apply() {
                break;
            }
            let formula = code.torsion_formula(i).unwrap();
            let oracle = code.torsion_oracle(&basis, i).unwrap();
            assert_eq!(formula.generator, oracle.generator, "{code:?} Tor_{i}");
        }
        let dist = distribution_oracle(&code, DEFAULT_ENUMERATION_CAP, 0).unwrap();
        assert_eq!(dist.total().to_string(), card.decimal(), "{code:?}");
        let (case, spectrum) = spectrum_dispatch(&code, DEFAULT_ENUMERATION_CAP, 0).unwrap();
        assert_eq!(dist.spectrum(), spectrum, "{code:?} {case}");
        checked += 1;
    }
    checked
}

#[test]
fn z4_negacyclic() {
    let z4 = Ring::parse("GR(4,1)").unwrap();
    for n in [2, 4, 8] {
        assert_eq!(check_family(&z4, "3", n), 2 * n + 1);
    }
}

#[test]
fn z9_two_constacyclic() {
    let z9 = Ring::parse("GR(9,1)").unwrap();
    assert!(check_family(&z9, "2", 2) > 0);
    assert!(check_family(&z9, "2", 6) > 0);
}

#[test]
fn z9_four_constacyclic() {
    let z9 = Ring::parse("GR(9,1)").unwrap();
    assert!(check_family(&z9, "4", 2) > 0);
    assert!(check_family(&z9, "4", 6) > 0);
}

#[test]
fn fu22_one_plus_u() {
    let fu = Ring::parse("FU(2,2)").unwrap();
    assert!(check_family(&fu, "[1,1]", 2) > 0);
    assert!(check_family(&fu, "[1,1]", 4) > 0);
}

#[test]
fn gr42_negacyclic() {
    let gr = Ring::parse("GR(4,2)").unwrap();
    assert!(check_family(&gr, "3", 2) > 0);
    assert!(check_family(&gr, "3", 4) > 0);
}

#[test]
fn oracle_only_rings_agree_with_echelon() {
    let z4 = Ring::parse("GR(4,1)").unwrap();
    assert_eq!(check_family(&z4, "1", 4), 9);
    let z8 = Ring::parse("GR(8,1)").unwrap();
    assert!(check_family(&z8, "5", 4) > 0);
}

#[test]
fn small_fields() {
    for (spec, lambdas) in [("F(2)", vec!["1"]), ("F(3)", vec!["1", "2"]), ("F(4)", vec!["1", "[0,1]"])] {
        let f = Ring::parse(spec).unwrap();
        for l in lambdas {
            for n in 1..=6 {
                assert!(check_family(&f, l, n) > 0);
            }
        }
    }
}
