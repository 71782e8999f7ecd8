use std::sync::Arc;

use constadepth::depth::{depth, depth_via_shift, iterated_derivative};
use constadepth::{Code, Poly, Ring, RingElem};
use proptest::prelude::*;

const RINGS: &[&str] = &["GR(4,1)", "GR(9,1)", "GR(8,1)", "GR(4,2)", "GR(27,1)", "FU(2,2)", "FU(2,3)", "FU(3,2)", "FU(4,2)", "F(4)", "F(5)"];

fn ring(i: usize) -> Arc<Ring> {
    Ring::parse(RINGS[i % RINGS.len()]).unwrap()
}

fn elem(r: &Ring, raw: u64) -> RingElem {
    r.elem((raw % r.size()) as u32).unwrap()
}

fn vector(r: &Ring, raw: &[u64]) -> Vec<RingElem> {
    raw.iter().map(|&x| elem(r, x)).collect()
}

#[test]
fn exhaustive_ring_laws_on_small_rings() {
    for spec in RINGS {
        let r = Ring::parse(spec).unwrap();
        if r.size() > 256 {
            continue;
        }
        let field = r.residue_field();
        let e = r.e();
        let tset = r.teichmuller_set();
        for a in r.elements() {
            let digits = r.teichmuller_decompose(a);
            assert!(digits.iter().all(|d| tset.contains(d)), "{spec}");
            assert_eq!(r.teichmuller_recompose(&digits), a, "{spec}");
            for b in r.elements() {
                let ab = r.mul(a, b);
                assert_eq!(r.project(ab), field.mul(r.project(a), r.project(b)), "{spec}");
                assert_eq!(r.project(r.add(a, b)), field.add(r.project(a), r.project(b)), "{spec}");
                assert_eq!(r.valuation(ab), (r.valuation(a) + r.valuation(b)).min(e), "{spec}");
                assert_eq!(r.sub(r.add(a, b), b), a, "{spec}");
            }
        }
        for &t in tset.iter().skip(1) {
            for s in 0..4 {
                let root = r.teichmuller_root(t, s).unwrap();
                assert!(r.is_teichmuller(root));
                assert_eq!(r.pow(root, r.p().pow(s)), t, "{spec}");
            }
        }
    }
}

#[test]
fn prop_2_3_exhaustive_over_z4() {
    let z4 = Ring::parse("GR(4,1)").unwrap();
    let lambdas = [z4.one(), z4.from_int(3)];
    for n in 1..=6usize {
        for idx in 0..4u64.pow(n as u32) {
            let raw: Vec<u64> = (0..n).map(|j| (idx >> (2 * j)) & 3).collect();
            let a = vector(&z4, &raw);
            let c = Poly::new(&z4, a.clone());
            for &lambda in &lambdas {
                for i in 0..n {
                    assert_eq!(
                        depth_via_shift(&c, n, lambda, i).unwrap(),
                        iterated_derivative(&z4, &a, i).unwrap()
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shift_identity(ri in 0usize..11, raw in prop::collection::vec(any::<u64>(), 1..12), lraw in any::<u64>()) {
        let r = ring(ri);
        let units: Vec<_> = r.elements().filter(|&x| r.is_unit(x)).collect();
        let lambda = units[(lraw % units.len() as u64) as usize];
        let a = vector(&r, &raw);
        let c = Poly::new(&r, a.clone());
        for i in 0..a.len() {
            prop_assert_eq!(depth_via_shift(&c, a.len(), lambda, i).unwrap(), iterated_derivative(&r, &a, i).unwrap());
        }
    }

    #[test]
    fn derivative_is_linear(ri in 0usize..11, raw in prop::collection::vec(any::<(u64, u64)>(), 2..10), craw in any::<u64>()) {
        let r = ring(ri);
        let a: Vec<_> = raw.iter().map(|p| elem(&r, p.0)).collect();
        let b: Vec<_> = raw.iter().map(|p| elem(&r, p.1)).collect();
        let c = elem(&r, craw);
        let comb: Vec<_> = a.iter().zip(&b).map(|(&x, &y)| r.add(r.mul(c, x), y)).collect();
        let da = constadepth::derivative(&r, &a).unwrap();
        let db = constadepth::derivative(&r, &b).unwrap();
        let expect: Vec<_> = da.iter().zip(&db).map(|(&x, &y)| r.add(r.mul(c, x), y)).collect();
        prop_assert_eq!(constadepth::derivative(&r, &comb).unwrap(), expect);
    }

    #[test]
    fn derivative_lowers_depth_by_one(ri in 0usize..11, raw in prop::collection::vec(any::<u64>(), 2..12)) {
        let r = ring(ri);
        let a = vector(&r, &raw);
        let d = depth(&r, &a).depth;
        let dd = depth(&r, &constadepth::derivative(&r, &a).unwrap()).depth;
        prop_assert!(d <= a.len());
        if d >= 1 && d < a.len() {
            prop_assert_eq!(dd, d - 1);
        }
    }

    #[test]
    fn witness_is_last_nonzero_derivative(ri in 0usize..11, raw in prop::collection::vec(any::<u64>(), 1..12)) {
        let r = ring(ri);
        let a = vector(&r, &raw);
        let res = depth(&r, &a);
        if res.depth >= 1 {
            let last = iterated_derivative(&r, &a, res.depth - 1).unwrap();
            let w = res.witness.unwrap();
            prop_assert!(!w.is_zero());
            prop_assert!(last.iter().all(|&x| x == w));
        } else {
            prop_assert!(a.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn gamma_multiples_keep_residue_depth(ri in 0usize..11, raw in prop::collection::vec(any::<u64>(), 1..10), l in 0u32..4) {
        let r = ring(ri);
        let e = r.e();
        let l = l % e;
        let field = r.residue_field();
        let a = vector(&r, &raw);
        let abar: Vec<_> = a.iter().map(|&x| r.project(x)).collect();
        prop_assume!(abar.iter().any(|x| !x.is_zero()));
        let g = r.gamma_pow(l);
        let c: Vec<_> = a.iter().map(|&x| r.mul(g, x)).collect();
        let dc = depth(&r, &c).depth;
        let dbar = depth(&field, &abar).depth;
        prop_assert!(dc >= dbar);
        if l == e - 1 {
            prop_assert_eq!(dc, dbar);
        }
    }

    #[test]
    fn divmod_round_trip(ri in 0usize..11, a in prop::collection::vec(any::<u64>(), 0..10), b in prop::collection::vec(any::<u64>(), 0..5)) {
        let r = ring(ri);
        let mut bc = vector(&r, &b);
        bc.push(r.one());
        let bp = Poly::new(&r, bc);
        let ap = Poly::new(&r, vector(&r, &a));
        let (q, rem) = ap.divmod_monic(&bp).unwrap();
        prop_assert!(rem.degree() < bp.degree());
        prop_assert_eq!(q.mul(&bp).unwrap().add(&rem).unwrap(), ap);
    }

    #[test]
    fn codes_are_closed_under_the_shift(which in 0usize..4, k in prop::collection::vec(0usize..64, 3), coeffs in prop::collection::vec(any::<u64>(), 16)) {
        let (spec, lambda, n) = [("GR(4,1)", "3", 8), ("GR(9,1)", "2", 6), ("FU(2,2)", "[1,1]", 4), ("GR(4,2)", "3", 4)][which];
        let r = Ring::parse(spec).unwrap();
        let lambda = constadepth::io::parse_elem_str(&r, lambda).unwrap();
        let split = constadepth::factor::teichmuller_base_root(&r, lambda, n).unwrap();
        let fact = constadepth::factor::factor_binomial(&r, split.n, split.alpha0).unwrap();
        let bound = r.e() as usize * split.p_pow_s(&r);
        let k: Vec<_> = k.iter().take(fact.len()).map(|&x| x % (bound + 1)).collect();
        let code = Code::with_factorization(&r, split, fact, n, &k).unwrap();
        let basis = code.echelon_basis();
        let mut word = vec![r.zero(); n];
        for (row, &c) in basis.rows().iter().zip(&coeffs) {
            let c = elem(&r, c);
            for (w, &x) in word.iter_mut().zip(&row.entries) {
                *w = r.add(*w, r.mul(c, x));
            }
        }
        prop_assert!(basis.contains(&word));
        prop_assert!(basis.contains(&code.shift(&word)));
        prop_assert!(basis.contains(&code.generator().to_vector(n)));

        let e = r.e();
        let top = code.torsion_formula(e - 1).unwrap().generator;
        for i in 0..e {
            let gi = code.torsion_formula(i).unwrap().generator;
            prop_assert!(gi.div_rem(&top).unwrap().1.is_zero());
        }
        for (l, &kl) in k.iter().enumerate() {
            let total: usize = (0..e).map(|i| code.tau(l, i).unwrap()).sum();
            prop_assert_eq!(total, kl);
            prop_assert!((0..e).all(|i| code.tau(l, i).unwrap() <= code.p_pow_s()));
        }
    }
}
