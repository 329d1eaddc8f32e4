//! Randomized structural invariants across modules.

use std::sync::Arc;

use proptest::prelude::*;

use gradalg::constructions::{central_g, preset, superpotential, CentralKind, ParamPoint};
use gradalg::cyclotomic::{CycNum, FieldCtx};
use gradalg::engine::{subspace_dims, Engine};
use gradalg::freealg::{NcPoly, Word};
use gradalg::group::{self, builtin_group, CharacterTable};
use gradalg::io::{presentation_from_json, presentation_to_json};
use gradalg::points::{phi_squared, ProjPoint};

fn k() -> Arc<FieldCtx> {
    FieldCtx::new(3).unwrap()
}

fn num(k: &Arc<FieldCtx>, (a, b): (i64, i64)) -> CycNum {
    &CycNum::from_int(k, a) + &(&CycNum::omega(k).unwrap() * &CycNum::from_int(k, b))
}

fn arb_coeff() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..4, prop_oneof![3 => Just(0i64), 1 => -2i64..3])
}

fn arb_nonzero() -> impl Strategy<Value = (i64, i64)> {
    arb_coeff().prop_filter("nonzero", |&(a, b)| (a, b) != (0, 0))
}

fn arb_poly(degree: usize) -> impl Strategy<Value = Vec<(Vec<u8>, (i64, i64))>> {
    proptest::collection::vec((proptest::collection::vec(0u8..3, degree), arb_nonzero()), 1..5)
}

fn build(k: &Arc<FieldCtx>, degree: usize, terms: &[(Vec<u8>, (i64, i64))]) -> NcPoly {
    let mut p = NcPoly::from_terms(k, degree, Vec::new()).unwrap();
    for (w, c) in terms {
        p = p.add(&NcPoly::from_terms(k, degree, vec![(Word(w.clone()), num(k, *c))]).unwrap()).unwrap();
    }
    p
}

/// Sklyanin parameters away from the twelve non-regular points.
fn arb_sklyanin() -> impl Strategy<Value = [i64; 3]> {
    [1i64..6, -4i64..5, -4i64..5].prop_filter("regular", |p| p[1] != 0 && p[2] != 0 && p[1] != p[2])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dimension_bookkeeping(p in arb_sklyanin()) {
        let k = k();
        let mut e = Engine::new(preset(&k, "sklyanin", &p.map(|v| CycNum::from_int(&k, v))).unwrap());
        e.extend_to_degree(5).unwrap();
        for d in 0..=5 {
            let s = e.slice(d).unwrap();
            prop_assert_eq!(s.basis_words().len() as u128 + s.ideal_dim(), 3u128.pow(d as u32));
        }
    }

    #[test]
    fn normal_form_is_idempotent(terms in arb_poly(4), t in arb_nonzero()) {
        let k = k();
        let mut e = Engine::new(preset(&k, "T", &[CycNum::one(&k), num(&k, t)]).unwrap());
        e.extend_to_degree(4).unwrap();
        let p = build(&k, 4, &terms);
        let once = e.normal_form(&p).unwrap();
        prop_assert_eq!(e.normal_form(&once).unwrap(), once.clone());
        // p - NF(p) lies in the ideal
        prop_assert!(e.normal_form(&p.sub(&once).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_multiplicative(a in arb_poly(2), b in arb_poly(3), p in arb_sklyanin()) {
        let k = k();
        let mut e = Engine::new(preset(&k, "sklyanin", &p.map(|v| CycNum::from_int(&k, v))).unwrap());
        e.extend_to_degree(5).unwrap();
        let (pa, pb) = (build(&k, 2, &a), build(&k, 3, &b));
        let direct = e.reduce(&pa.mul(&pb).unwrap()).unwrap();
        let via = e.mul(&e.reduce(&pa).unwrap(), &e.reduce(&pb).unwrap()).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn center_basis_is_exactly_central(t in arb_nonzero(), m_family in any::<bool>()) {
        let k = k();
        let name = if m_family { "M" } else { "T" };
        let mut e = Engine::new(preset(&k, name, &[CycNum::one(&k), num(&k, t)]).unwrap());
        e.extend_to_degree(7).unwrap();
        for deg in 1..=4 {
            for c in e.center_basis(deg).unwrap() {
                for wd in 1..=3 {
                    for w in Word::all(3, wd) {
                        let wp = NcPoly::word(&k, w);
                        let comm = c.mul(&wp).unwrap().sub(&wp.mul(&c).unwrap()).unwrap();
                        prop_assert!(e.normal_form(&comm).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn central_cubic_and_regularity(t in arb_nonzero()) {
        let k = k();
        let tt = num(&k, t);
        let mut e = Engine::new(preset(&k, "T", &[CycNum::one(&k), tt.clone()]).unwrap());
        let h = e.hilbert(7).unwrap();
        prop_assert!(e.is_central(&central_g(&k, CentralKind::T, &tt)).unwrap());
        let m = Engine::new(preset(&k, "M", &[CycNum::one(&k), tt]).unwrap()).hilbert(7).unwrap();
        for d in 3..=7 {
            prop_assert_eq!(h[d] - m[d], h[d - 3]);
        }
    }

    #[test]
    fn t_family_characters_match_polynomial_ring(t in arb_nonzero()) {
        let k = k();
        let mut e = Engine::new(preset(&k, "T", &[CycNum::one(&k), num(&k, t)]).unwrap());
        let mut p = Engine::new(preset(&k, "poly", &[]).unwrap());
        for g in CharacterTable::h3(&k).unwrap().class_reps {
            prop_assert_eq!(group::character_series(&mut e, &g, 5).unwrap(), group::character_series(&mut p, &g, 5).unwrap());
        }
    }

    #[test]
    fn multiplicities_account_for_dimension(p in arb_sklyanin(), d in 0usize..7) {
        let k = k();
        let g = builtin_group(&k, "H3").unwrap();
        let table = CharacterTable::h3(&k).unwrap();
        let mut e = Engine::new(preset(&k, "sklyanin", &p.map(|v| CycNum::from_int(&k, v))).unwrap());
        let m = group::isotypic_multiplicities(&g, &table, &mut e, d).unwrap();
        let total: usize = m.iter().map(|(name, mult)| mult * if name.starts_with('V') { 3 } else { 1 }).sum();
        prop_assert_eq!(total, e.dim(d).unwrap());
    }

    #[test]
    fn presets_round_trip(t in arb_nonzero(), p in arb_sklyanin()) {
        let k = k();
        let tt = num(&k, t);
        let sk: Vec<CycNum> = p.iter().map(|&v| CycNum::from_int(&k, v)).collect();
        for (name, params) in [("T", vec![CycNum::one(&k), tt.clone()]), ("M", vec![tt.clone(), CycNum::one(&k)]), ("zhang", vec![tt.clone()]), ("sklyanin", sk)] {
            let pres = preset(&k, name, &params).unwrap();
            for r in pres.relations() {
                let d = r.degree();
                prop_assert!(r.support().all(|w| w.len() == d));
            }
            let text = presentation_to_json(&pres);
            let back = presentation_from_json(&text).unwrap();
            prop_assert_eq!(presentation_to_json(&back), text);
            prop_assert_eq!(back, pres);
        }
    }

    #[test]
    fn rotated_superpotential_gives_same_relations(p in arb_sklyanin()) {
        let k = k();
        let s = superpotential(&ParamPoint::from_ints(&k, &p).unwrap());
        // move the first letter of every word to the end
        let rotated = NcPoly::from_terms(
            &k,
            3,
            s.terms().iter().map(|(w, c)| (Word(vec![w.0[1], w.0[2], w.0[0]]), c.clone())).collect::<Vec<_>>(),
        )
        .unwrap();
        for g in 0..3 {
            let a = [s.cyclic_derivative(g)];
            let b = [rotated.cyclic_derivative(g)];
            let dims = subspace_dims(&a, &b).unwrap();
            prop_assert_eq!((dims.dim1, dims.dim_sum), (1, 1));
        }
    }

    #[test]
    fn phi_squared_inverts_with_reciprocal(t in arb_nonzero(), y in arb_nonzero(), z in arb_nonzero()) {
        let k = k();
        let tt = num(&k, t);
        let q = ProjPoint::new([CycNum::zero(&k), num(&k, y), num(&k, z)]).unwrap();
        let there = phi_squared(&q, &tt).unwrap();
        prop_assert_eq!(phi_squared(&there, &tt.inv().unwrap()).unwrap(), q);
    }
}

#[test]
fn bad_quotients_differ_only_in_degree_three() {
    let k = k();
    let c = Engine::new(preset(&k, "badC", &[]).unwrap()).hilbert(9).unwrap();
    let a = Engine::new(preset(&k, "badA", &[]).unwrap()).hilbert(9).unwrap();
    for d in 0..=9 {
        assert_eq!(c[d], a[d] + usize::from(d == 3), "degree {d}");
    }
}

#[test]
fn h3_table_shape() {
    let k = k();
    let g = builtin_group(&k, "H3").unwrap();
    let t = CharacterTable::h3(&k).unwrap();
    t.check(&g).unwrap();
    assert_eq!(t.class_names.len(), 11);
    assert_eq!(t.irreps.len(), 11);
    let classes = g.conjugacy_classes();
    let mut sizes: Vec<usize> = (0..11).map(|c| classes.iter().filter(|&&x| x == c).count()).collect();
    sizes.sort();
    assert_eq!(sizes, [1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
    let degrees: usize = t.irreps.iter().map(|s| if s.name.starts_with('V') { 9 } else { 1 }).sum();
    assert_eq!(degrees, 27);
}
