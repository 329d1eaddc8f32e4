//! The eighteen acceptance criteria, written directly against the library
//! rather than through the bundled corpus. Prints one line per criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use gradalg::constructions::{
    blowup_condition, central_g, central_preimage_line, clifford_commutator, cubic_pair, invariant_cubics,
    nonregular_points, preset, sklyanin_relations, CentralKind, ParamPoint, PluckerLine,
};
use gradalg::cyclotomic::{CycNum, FieldCtx};
use gradalg::engine::{intersection_basis, subspace_dims, Engine, EngineConfig};
use gradalg::freealg::{default_gens, NcPoly, Word};
use gradalg::group::{self, builtin_group, h3_sample_elements, CharacterTable, Mat};
use gradalg::linalg;
use gradalg::oracle;
use gradalg::parallel::ExecMode;
use gradalg::points::{next_point, phi_order, phi_squared, Next, ProjPoint, TriangleState};
use gradalg::series::guess_rational_series;

type Outcome = Result<(), String>;

fn k() -> Arc<FieldCtx> {
    FieldCtx::new(3).unwrap()
}

fn n(k: &Arc<FieldCtx>, v: i64) -> CycNum {
    CycNum::from_int(k, v)
}

fn w(k: &Arc<FieldCtx>) -> CycNum {
    CycNum::omega(k).unwrap()
}

fn engine(k: &Arc<FieldCtx>, name: &str, params: &[CycNum]) -> Engine {
    Engine::new(preset(k, name, params).unwrap())
}

fn poly(k: &Arc<FieldCtx>, s: &str) -> NcPoly {
    NcPoly::parse(k, &default_gens(3), s).unwrap()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn equal<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn c1_sklyanin() -> Outcome {
    let k = k();
    let mut e = engine(&k, "sklyanin", &[n(&k, 1), n(&k, 2), n(&k, 3)]);
    equal(e.hilbert(6).unwrap(), vec![1, 3, 6, 10, 15, 21, 28], "hilbert")
}

fn c2_degenerate() -> Outcome {
    let k = k();
    let mut e = engine(&k, "degenerate", &[n(&k, 0), n(&k, 0), n(&k, 1)]);
    equal(e.hilbert(6).unwrap(), vec![1, 3, 6, 12, 24, 48, 96], "hilbert")
}

fn products(k: &Arc<FieldCtx>, p: [i64; 3]) -> (Vec<NcPoly>, Vec<NcPoly>) {
    let rels = sklyanin_relations(k, &n(k, p[0]), &n(k, p[1]), &n(k, p[2]));
    let mut wv = Vec::new();
    let mut vw = Vec::new();
    for r in &rels {
        for l in 0..3 {
            let x = NcPoly::word(k, Word::letter(l));
            wv.push(r.mul(&x).unwrap());
            vw.push(x.mul(r).unwrap());
        }
    }
    (wv, vw)
}

fn c3_intersections() -> Outcome {
    let k = k();
    let (a, b) = products(&k, [1, 2, 3]);
    equal(subspace_dims(&a, &b).unwrap().dim_intersection, 1, "dim at [1:2:3]")?;
    for v in [[0, 0, 1], [1, 0, 0], [0, 1, 0]] {
        let (a, b) = products(&k, v);
        equal(subspace_dims(&a, &b).unwrap().dim_intersection, 3, "dim at a vertex")?;
    }
    let (a, b) = products(&k, [0, 0, 1]);
    let cubes = ["xxx", "yyy", "zzz"].map(|s| poly(&k, s));
    let both = subspace_dims(&intersection_basis(&a, &b).unwrap(), &cubes).unwrap();
    equal(both.dim_sum, 3, "span at [0:0:1] equals the cubes")?;
    let h3 = builtin_group(&k, "H3").unwrap();
    let mut points = nonregular_points(&k).unwrap();
    points.push(ParamPoint::from_ints(&k, &[1, 2, 3]).unwrap());
    for p in points {
        let x = p.coords();
        let rels = sklyanin_relations(&k, &x[0], &x[1], &x[2]);
        let mut a = Vec::new();
        let mut b = Vec::new();
        for r in &rels {
            for l in 0..3 {
                let y = NcPoly::word(&k, Word::letter(l));
                a.push(r.mul(&y).unwrap());
                b.push(y.mul(r).unwrap());
            }
        }
        let fixed = group::invariant_dim(&h3, &intersection_basis(&a, &b).unwrap()).unwrap();
        equal(fixed, 1, &format!("invariant part at {p}"))?;
    }
    Ok(())
}

fn c4_isotypic() -> Outcome {
    let k = k();
    let mut e = engine(&k, "degenerate", &[n(&k, 0), n(&k, 0), n(&k, 1)]);
    let g = builtin_group(&k, "H3").unwrap();
    let table = CharacterTable::h3(&k).unwrap();
    let m = group::isotypic_multiplicities(&g, &table, &mut e, 3).unwrap();
    let get = |name: &str| m.iter().find(|(n, _)| n == name).map(|(_, k)| *k);
    for (name, want) in [("chi10", 2), ("chi20", 2), ("chi00", 2), ("V1", 0), ("V2", 0)] {
        equal(get(name), Some(want), name)?;
    }
    for a in 0..3 {
        for b in 1..3 {
            equal(get(&format!("chi{a}{b}")), Some(1), "other linear characters")?;
        }
    }
    Ok(())
}

fn c5_diagonal() -> Outcome {
    let k = k();
    let dim4 = |p: [i64; 4]| {
        let mut e = engine(&k, "T", &p.map(|v| n(&k, v)));
        e.extend_to_degree(4).unwrap();
        e.dim(4).unwrap()
    };
    let mut s = engine(&k, "degenerate", &[n(&k, 0), n(&k, 0), n(&k, 1)]);
    equal(s.hilbert(4).unwrap()[4], 24, "baseline")?;
    for p in [[1, 1, 1, 1], [1, -1, 1, -1], [2, 3, 4, 6]] {
        equal(dim4(p), 15, &format!("{p:?}"))?;
    }
    // off the diagonal the intersection vanishes, leaving 24 - 12
    for p in [[1, 1, 1, 2], [1, 0, 0, 1]] {
        let d = dim4(p);
        ensure(d != 15, || format!("{p:?} has the correct dimension"))?;
        equal(d, 12, &format!("{p:?}"))?;
    }
    Ok(())
}

fn c6_t_family() -> Outcome {
    let k = k();
    for t in [n(&k, 2), n(&k, -1), w(&k)] {
        let mut e = engine(&k, "T", &[n(&k, 1), t.clone()]);
        equal(e.hilbert(7).unwrap(), vec![1, 3, 6, 10, 15, 21, 28, 36], &format!("t = {t}"))?;
    }
    Ok(())
}

fn c7_t_characters() -> Outcome {
    let k = k();
    let mut t2 = engine(&k, "T", &[n(&k, 1), n(&k, 2)]);
    let mut p = engine(&k, "poly", &[]);
    for (name, g) in h3_sample_elements(&k).unwrap() {
        let a = group::character_series(&mut t2, &g, 6).unwrap();
        let b = group::character_series(&mut p, &g, 6).unwrap();
        equal(a, b, &name)?;
    }
    let c = Mat::scalar(&w(&k), 3);
    let s = group::character_series(&mut t2, &c, 6).unwrap();
    let h = t2.hilbert(6).unwrap();
    for d in 0..=6 {
        let want = &CycNum::omega_pow(&k, d as i64).unwrap() * &n(&k, h[d] as i64);
        equal(&s[d], &want, &format!("central twist in degree {d}"))?;
    }
    Ok(())
}

fn c8_clifford() -> Outcome {
    let k = k();
    let mut c = engine(&k, "clifford", &[]);
    let mut p = engine(&k, "poly", &[]);
    for g in CharacterTable::h3(&k).unwrap().class_reps {
        equal(group::character_series(&mut c, &g, 6).unwrap(), group::character_series(&mut p, &g, 6).unwrap(), "class")?;
    }
    let mut s = engine(&k, "degenerate", &[n(&k, 0), n(&k, 0), n(&k, 1)]);
    s.extend_to_degree(3).unwrap();
    let pair = cubic_pair(&k, &n(&k, 1), &n(&k, -1), &n(&k, 1), &n(&k, -1)).unwrap();
    ensure(s.in_span_mod_ideal(&clifford_commutator(&k), &pair).unwrap(), || "commutator outside the span".into())
}

fn c9_central_cubic() -> Outcome {
    let k = k();
    for t in [n(&k, 2), n(&k, -1), w(&k)] {
        let mut e = engine(&k, "T", &[n(&k, 1), t.clone()]);
        e.extend_to_degree(4).unwrap();
        let g = central_g(&k, CentralKind::T, &t);
        ensure(e.is_central(&g).unwrap(), || format!("g_t not central at t = {t}"))?;
        if t == n(&k, 2) {
            equal(e.center_basis(3).unwrap().len(), 1, "center in degree 3")?;
        }
    }
    for t in [1, 2] {
        let mut e = engine(&k, "zhang", &[n(&k, t)]);
        e.extend_to_degree(4).unwrap();
        let g = central_g(&k, CentralKind::Zhang, &n(&k, t));
        ensure(e.is_central(&g).unwrap() && !e.normal_form(&g).unwrap().is_zero(), || format!("zhang t = {t}"))?;
    }
    Ok(())
}

fn mixed_parity(w: &Word) -> bool {
    let mut even = [false; 3];
    let mut odd = [false; 3];
    for (i, l) in w.letters().enumerate() {
        if i % 2 == 0 {
            even[l] = true;
        } else {
            odd[l] = true;
        }
    }
    (0..3).any(|l| even[l] && odd[l])
}

fn c10_m_basis() -> Outcome {
    let k = k();
    let mut m = engine(&k, "M", &[n(&k, 1), n(&k, 2)]);
    equal(m.hilbert(7).unwrap(), vec![1, 3, 6, 9, 12, 15, 18, 21], "hilbert")?;
    let words = ["xyxy", "xyzy", "zyzy", "xzxz", "xzyz", "yzyz", "yxyx", "yxzx", "zxzx", "yxyz", "zxzy", "xyxz"];
    let polys: Vec<NcPoly> = words.iter().map(|s| poly(&k, s)).collect();
    for (s, p) in words.iter().zip(&polys) {
        ensure(!m.normal_form(p).unwrap().is_zero(), || format!("{s} vanishes"))?;
    }
    equal(m.rank_in_quotient(&polys).unwrap(), 12, "rank of the listed words")?;
    for b in m.quotient_basis(4).unwrap() {
        ensure(!mixed_parity(b), || "basis word with mixed parity".into())?;
    }
    Ok(())
}

fn c11_regularity() -> Outcome {
    let k = k();
    let t = engine(&k, "T", &[n(&k, 1), n(&k, 2)]).hilbert(7).unwrap();
    let m = engine(&k, "M", &[n(&k, 1), n(&k, 2)]).hilbert(7).unwrap();
    for d in 3..=7 {
        equal(t[d] - m[d], t[d - 3], &format!("degree {d}"))?;
    }
    Ok(())
}

fn c12_m1_center() -> Outcome {
    let k = k();
    let cfg = EngineConfig { degree_cap: 12, ..Default::default() };
    let mut m = Engine::with_config(preset(&k, "M", &[n(&k, 1), n(&k, 1)]).unwrap(), cfg);
    m.extend_to_degree(12).unwrap();
    for d in [1, 3, 5] {
        equal(m.center_basis(d).unwrap().len(), 0, &format!("center in degree {d}"))?;
    }
    let c4 = m.center_basis(4).unwrap();
    equal(c4.len(), 3, "center in degree 4")?;
    for s in ["x + y", "y + z", "x + z"] {
        let p = poly(&k, s).pow(4).unwrap();
        ensure(m.in_span_mod_ideal(&p, &c4).unwrap(), || format!("({s})^4 not central"))?;
    }
    let sq = |s: &str| poly(&k, s).pow(2).unwrap();
    let prod = sq("xy + yx").mul(&sq("yz + zy")).unwrap().mul(&sq("zx + xz")).unwrap();
    ensure(m.normal_form(&prod).unwrap().is_zero(), || "product does not vanish".into())
}

fn c13_t1_center() -> Outcome {
    let k = k();
    let one = n(&k, 1);
    let cfg = EngineConfig { degree_cap: 12, ..Default::default() };
    let mut e = Engine::with_config(preset(&k, "T", &[one.clone(), one.clone()]).unwrap(), cfg);
    e.extend_to_degree(12).unwrap();
    equal(e.center_basis(3).unwrap().len(), 1, "center in degree 3")?;
    equal(e.center_basis(4).unwrap().len(), 3, "center in degree 4")?;
    let lifts: Vec<NcPoly> = ["x + y", "y + z", "x + z"].iter().map(|s| poly(&k, s).pow(4).unwrap()).collect();
    for l in &lifts {
        ensure(e.is_central(l).unwrap(), || "lift not central".into())?;
    }
    let uvw = lifts[0].mul(&lifts[1]).unwrap().mul(&lifts[2]).unwrap();
    let g4 = central_g(&k, CentralKind::T, &one).pow(4).unwrap();
    let alpha = CycNum::parse(&k, "-1/81").unwrap();
    let diff = uvw.sub(&g4.scale(&alpha)).unwrap();
    ensure(e.normal_form(&diff).unwrap().is_zero(), || "uvw != -1/81 g^4".into())?;
    ensure(!e.normal_form(&g4).unwrap().is_zero(), || "g^4 vanishes".into())
}

fn c14_bad_case() -> Outcome {
    let k = k();
    let mut c = engine(&k, "badC", &[]);
    c.extend_to_degree(4).unwrap();
    ensure(c.annihilator_check(&central_g(&k, CentralKind::T, &n(&k, 0))).unwrap(), || "g0 does not annihilate".into())?;
    let a = engine(&k, "badA", &[]).hilbert(9).unwrap();
    equal(a.clone(), vec![1, 3, 6, 9, 15, 24, 39, 63, 102, 165], "hilbert")?;
    for i in 4..a.len() {
        equal(a[i] + a[i - 3], 2 * a[i - 1], "a_n = 2a_{n-1} - a_{n-3}")?;
    }
    for i in 3..a.len() {
        equal(a[i], a[i - 1] + a[i - 2], "a_n = a_{n-1} + a_{n-2}")?;
    }
    let ints: Vec<i64> = a.iter().map(|&v| v as i64).collect();
    let r = guess_rational_series(&ints).ok_or("no rational fit")?;
    equal(r.to_string().as_str(), "(1 + 2t + 2t^2) / (1 - t - t^2)", "closed form")
}

fn c15_fibonacci() -> Outcome {
    let k = k();
    let mut a = engine(&k, "badA", &[]);
    let e1 = builtin_group(&k, "H3-e1").unwrap();
    equal(group::fixed_subalgebra_dims(&e1, &mut a, 6).unwrap(), vec![1, 1, 2, 3, 5, 8, 13], "fixed dims")
}

fn c16_points() -> Outcome {
    let k = k();
    let p = |c: [i64; 3]| ProjPoint::from_ints(&k, c).unwrap();
    let t = n(&k, 2);
    let step = |a: [i64; 3], b: [i64; 3]| next_point(&TriangleState { prev: Some(p(a)), cur: p(b) }, Some(&t)).unwrap();
    equal(step([0, 1, 1], [1, 0, 0]), Next::Point(p([0, 1, -2])), "after q0")?;
    equal(step([1, 0, 0], [0, 1, 1]), Next::Point(p([1, 0, 0])), "back to q0")?;
    equal(phi_squared(&p([0, 1, 1]), &t).unwrap(), p([0, 1, -2]), "phi^2")?;
    equal(phi_order(&-&w(&k), 50).unwrap(), Some(3), "t = -w")?;
    equal(phi_order(&n(&k, -1), 50).unwrap(), Some(1), "t = -1")?;
    equal(phi_order(&n(&k, 2), 50).unwrap(), None, "t = 2")
}

fn c17_blowup() -> Outcome {
    let k = k();
    let w = w(&k);
    let w2 = &w * &w;
    let mut holds = 0;
    for i in 0..20i64 {
        let (a, b) = (n(&k, i % 4 - 1), n(&k, 3 - i % 5));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let p = ParamPoint::new(vec![a.clone(), b.clone(), n(&k, 1)]).unwrap();
        let r1 = [n(&k, 1), &a * &w2, &b * &w];
        let r2 = [n(&k, 1), &a * &w, &b * &w2];
        let other = [n(&k, 2), n(&k, i), n(&k, 1)];
        let line = if i % 3 == 0 { PluckerLine::through(&r1, &other) } else { PluckerLine::through(&r1, &r2) };
        let r = blowup_condition(&p, &line).map_err(|e| e.to_string())?;
        ensure((r.rank <= 2) == r.eqs_hold, || format!("sample {i}: rank {} vs equations {}", r.rank, r.eqs_hold))?;
        ensure(!r.eqs_hold || r.plucker_relation, || format!("sample {i}: relation fails"))?;
        holds += usize::from(r.eqs_hold);
    }
    ensure(holds > 0, || "no sample satisfies the equations".into())
}

fn c18_preimage() -> Outcome {
    let k = k();
    let p = ParamPoint::from_ints(&k, &[1, 2, 3]).unwrap();
    let out = central_preimage_line(&p).map_err(|e| e.to_string())?;
    equal(out.dim, 2, "preimage dimension")?;
    ensure(out.line.contains(p.coords()), || "line misses p".into())?;
    let mut e = engine(&k, "sklyanin", p.coords());
    e.extend_to_degree(3).unwrap();
    let cols: Vec<_> = invariant_cubics(&k).iter().map(|c| e.reduce(c).unwrap().coords).collect();
    let ker = linalg::kernel(&cols, e.dim(3).unwrap(), &k);
    equal(ker.len(), 1, "relations among the invariant cubics")?;
    ensure(out.line.contains(&ker[0].to_dense(3, &k)), || "line misses the kernel".into())
}

/// Id, name, check and time limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

const CRITERIA: [Criterion; 18] = [
    (1, "sklyanin Hilbert series", c1_sklyanin, 60),
    (2, "degenerate Hilbert series", c2_degenerate, 60),
    (3, "intersection dimensions", c3_intersections, 10),
    (4, "degree-3 isotypic decomposition", c4_isotypic, 30),
    (5, "diagonal lemma", c5_diagonal, 60),
    (6, "T family Hilbert series", c6_t_family, 300),
    (7, "character series of T2", c7_t_characters, 300),
    (8, "Clifford checks", c8_clifford, 300),
    (9, "central cubic", c9_central_cubic, 120),
    (10, "M2 series and basis", c10_m_basis, 60),
    (11, "regularity of the central cubic", c11_regularity, 1),
    (12, "center of M1", c12_m1_center, 300),
    (13, "center of T1", c13_t1_center, 1800),
    (14, "bad case", c14_bad_case, 300),
    (15, "Fibonacci invariants", c15_fibonacci, 120),
    (16, "point dynamics", c16_points, 1),
    (17, "blow-up condition", c17_blowup, 1),
    (18, "central preimage line", c18_preimage, 120),
];

fn engine_agrees_with_full_tensor_oracle() -> Outcome {
    let k = k();
    for (name, params) in [("sklyanin", vec![n(&k, 1), n(&k, 2), n(&k, 3)]), ("degenerate", vec![n(&k, 0), n(&k, 0), n(&k, 1)])] {
        let mut e = engine(&k, name, &params);
        let h = e.hilbert(5).unwrap();
        equal(oracle::hilbert(e.presentation(), 5), h, name)?;
    }
    Ok(())
}

/// Runs outside the libtest harness so the per-criterion lines always show.
fn main() {
    let results = ExecMode::default().map(&CRITERIA, |(id, name, f, limit)| {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let r = r.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*limit), || format!("took {elapsed:?}, limit {limit}s"))
        });
        (*id, *name, r, elapsed)
    });
    let mut failed = 0;
    for (id, name, r, elapsed) in &results {
        match r {
            Ok(()) => println!("criterion {id:>2}: PASS {name} ({:.3}s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL {name} ({:.3}s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    match engine_agrees_with_full_tensor_oracle() {
        Ok(()) => println!("engine vs full-tensor oracle: PASS"),
        Err(e) => {
            failed += 1;
            println!("engine vs full-tensor oracle: FAIL {e}");
        }
    }
    let passed = results.iter().filter(|r| r.2.is_ok()).count();
    println!("{passed} of {} criteria passed", CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
