//! The verification suite: every corpus entry is recomputed from scratch and
//! compared with its recorded value.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    self, blowup_condition, central_g, central_preimage_line, cubic_pair, invariant_cubics, nonregular_points, preset,
    CentralKind, ParamPoint, PluckerLine,
};
use crate::cyclotomic::{CycNum, FieldCtx};
use crate::engine::{intersection_basis, subspace_dims, Engine, EngineConfig};
use crate::freealg::{default_gens, NcPoly, Word};
use crate::group::{self, builtin_group, CharacterTable, Mat};
use crate::linalg::{self, SparseVec};
use crate::oracle;
use crate::parallel::ExecMode;
use crate::points::{next_point, phi_order, phi_squared, Next, ProjPoint, TriangleState};
use crate::series::guess_rational_series;

const CORPUS: &str = include_str!("../data/corpus.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Slow,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusValue {
    pub key: String,
    pub expected: String,
    /// `published`, `derived` or `definitional`.
    pub origin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: u32,
    pub name: String,
    pub suite: Suite,
    pub limit_s: f64,
    pub values: Vec<CorpusValue>,
}

pub fn corpus() -> Vec<CorpusEntry> {
    serde_json::from_str(CORPUS).expect("bundled corpus is valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueResult {
    pub key: String,
    pub expected: String,
    pub origin: String,
    pub computed: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: String,
    pub suite: Suite,
    pub values: Vec<ValueResult>,
    pub error: Option<String>,
    pub elapsed_s: f64,
    pub limit_s: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    Fast,
    Slow,
}

impl SuiteSelection {
    fn includes(self, s: Suite) -> bool {
        match self {
            SuiteSelection::All => true,
            SuiteSelection::Fast => s == Suite::Fast,
            SuiteSelection::Slow => s == Suite::Slow,
        }
    }
}

/// Runs the selected checks concurrently; results are sorted by id.
pub fn run_suite(sel: SuiteSelection, mode: ExecMode) -> VerifyReport {
    let entries: Vec<CorpusEntry> = corpus().into_iter().filter(|e| sel.includes(e.suite)).collect();
    let mut checks = mode.map(&entries, run_entry);
    checks.sort_by_key(|c| c.id);
    VerifyReport { checks }
}

pub fn run_check(id: u32) -> Option<CheckResult> {
    corpus().iter().find(|e| e.id == id).map(run_entry)
}

fn run_entry(entry: &CorpusEntry) -> CheckResult {
    let start = Instant::now();
    let outcome = compute(entry.id);
    let elapsed_s = start.elapsed().as_secs_f64();
    let (computed, error) = match outcome {
        Ok(v) => (v, None),
        Err(e) => (Vec::new(), Some(e)),
    };
    let values: Vec<ValueResult> = entry
        .values
        .iter()
        .map(|v| {
            let c = computed.iter().find(|(k, _)| *k == v.key).map(|(_, c)| c.clone());
            ValueResult {
                key: v.key.clone(),
                expected: v.expected.clone(),
                origin: v.origin.clone(),
                passed: c.as_deref() == Some(v.expected.as_str()),
                computed: c,
            }
        })
        .collect();
    let passed = error.is_none() && values.iter().all(|v| v.passed) && elapsed_s <= entry.limit_s;
    CheckResult {
        id: entry.id,
        name: entry.name.clone(),
        suite: entry.suite,
        values,
        error,
        elapsed_s,
        limit_s: entry.limit_s,
        passed,
    }
}

type Values = Vec<(String, String)>;

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Ctx {
    k: Arc<FieldCtx>,
}

impl Ctx {
    fn new() -> Ctx {
        Ctx { k: FieldCtx::new(3).expect("m = 3") }
    }

    fn n(&self, v: i64) -> CycNum {
        CycNum::from_int(&self.k, v)
    }

    fn w(&self) -> CycNum {
        CycNum::omega(&self.k).expect("3 | m")
    }

    fn engine(&self, name: &str, params: &[CycNum]) -> Result<Engine, String> {
        Ok(Engine::new(preset(&self.k, name, params).map_err(err)?))
    }

    fn poly(&self, s: &str) -> NcPoly {
        NcPoly::parse(&self.k, &default_gens(3), s).expect("valid literal")
    }
}

fn compute(id: u32) -> Result<Values, String> {
    let c = Ctx::new();
    match id {
        1 => check_sklyanin(&c),
        2 => check_degenerate(&c),
        3 => check_intersections(&c),
        4 => check_isotypic(&c),
        5 => check_diagonal(&c),
        6 => check_t_family(&c),
        7 => check_t_characters(&c),
        8 => check_clifford(&c),
        9 => check_central_cubic(&c),
        10 => check_m_basis(&c),
        11 => check_regularity(&c),
        12 => check_m1_center(&c),
        13 => check_t1_center(&c),
        14 => check_bad_case(&c),
        15 => check_fibonacci(&c),
        16 => check_points(&c),
        17 => check_blowup(&c),
        18 => check_preimage(&c),
        _ => Err(format!("no check with id {id}")),
    }
}

fn check_sklyanin(c: &Ctx) -> Result<Values, String> {
    let mut e = c.engine("sklyanin", &[c.n(1), c.n(2), c.n(3)])?;
    let h = e.hilbert(6).map_err(err)?;
    let full = oracle::hilbert(e.presentation(), 5);
    Ok(vec![kv("hilbert_0_6", list(&h)), kv("full_tensor_agrees_0_5", full == h[..=5])])
}

fn check_degenerate(c: &Ctx) -> Result<Values, String> {
    let mut e = c.engine("degenerate", &[c.n(0), c.n(0), c.n(1)])?;
    let h = e.hilbert(6).map_err(err)?;
    let full = oracle::ideal_slice(e.presentation(), 3, ExecMode::default()).rref.rank();
    let engine_dim = e.slice(3).map_err(err)?.ideal_dim() as usize;
    let dim = if full == engine_dim { full.to_string() } else { format!("{engine_dim} (oracle {full})") };
    Ok(vec![kv("hilbert_0_6", list(&h)), kv("ideal_dim_3", dim)])
}

/// `W V` and `V W` for the relation space of `sklyanin(p)`.
fn relation_products(c: &Ctx, p: &ParamPoint) -> (Vec<NcPoly>, Vec<NcPoly>) {
    let x = p.coords();
    let rels = constructions::sklyanin_relations(&c.k, &x[0], &x[1], &x[2]);
    let letters: Vec<NcPoly> = (0..3).map(|l| NcPoly::word(&c.k, Word::letter(l))).collect();
    let mut wv = Vec::new();
    let mut vw = Vec::new();
    for r in &rels {
        for l in &letters {
            wv.push(r.mul(l).expect("same field"));
            vw.push(l.mul(r).expect("same field"));
        }
    }
    (wv, vw)
}

fn check_intersections(c: &Ctx) -> Result<Values, String> {
    let h3 = builtin_group(&c.k, "H3").map_err(err)?;
    let generic = ParamPoint::from_ints(&c.k, &[1, 2, 3]).map_err(err)?;
    let (wv, vw) = relation_products(c, &generic);
    let d = subspace_dims(&wv, &vw).map_err(err)?;
    let mut vertex_dims = Vec::new();
    let mut cubes = false;
    for v in [[0, 0, 1], [1, 0, 0], [0, 1, 0]] {
        let p = ParamPoint::from_ints(&c.k, &v).map_err(err)?;
        let (a, b) = relation_products(c, &p);
        vertex_dims.push(subspace_dims(&a, &b).map_err(err)?.dim_intersection);
        if v == [0, 0, 1] {
            let basis = intersection_basis(&a, &b).map_err(err)?;
            let target = ["xxx", "yyy", "zzz"].map(|s| c.poly(s));
            let both = subspace_dims(&basis, &target).map_err(err)?;
            cubes = both.dim1 == 3 && both.dim_sum == 3;
        }
    }
    let mut points = nonregular_points(&c.k).map_err(err)?;
    points.push(generic);
    let mut inv = Vec::new();
    for p in &points {
        let (a, b) = relation_products(c, p);
        let basis = intersection_basis(&a, &b).map_err(err)?;
        inv.push(group::invariant_dim(&h3, &basis).map_err(err)?);
    }
    Ok(vec![
        kv("dims_123", list(&[d.dim1, d.dim2, d.dim_sum, d.dim_intersection])),
        kv("intersection_123", d.dim_intersection),
        kv("intersection_vertices", list(&vertex_dims)),
        kv("vertex_001_is_cubes", cubes),
        kv("invariant_dims", list(&inv)),
    ])
}

fn check_isotypic(c: &Ctx) -> Result<Values, String> {
    let mut e = c.engine("degenerate", &[c.n(0), c.n(0), c.n(1)])?;
    let h3 = builtin_group(&c.k, "H3").map_err(err)?;
    let table = CharacterTable::h3(&c.k).map_err(err)?;
    table.check(&h3).map_err(err)?;
    let m = group::isotypic_multiplicities(&h3, &table, &mut e, 3).map_err(err)?;
    let text: Vec<String> = m.iter().map(|(name, k)| format!("{name}:{k}")).collect();
    Ok(vec![kv("multiplicities", text.join(" "))])
}

/// `dim A_4` from the engine and from the full-tensor oracle.
fn dim4_of_pair(c: &Ctx, p: [i64; 4]) -> Result<(usize, usize), String> {
    let mut e = c.engine("T", &p.map(|v| c.n(v)))?;
    e.extend_to_degree(4).map_err(err)?;
    Ok((e.dim(4).map_err(err)?, oracle::hilbert(e.presentation(), 4)[4]))
}

fn check_diagonal(c: &Ctx) -> Result<Values, String> {
    let mut s = c.engine("degenerate", &[c.n(0), c.n(0), c.n(1)])?;
    s.extend_to_degree(4).map_err(err)?;
    let on = [[1, 1, 1, 1], [1, -1, 1, -1], [2, 3, 4, 6]]
        .iter()
        .map(|p| dim4_of_pair(c, *p).map(|d| d.0))
        .collect::<Result<Vec<_>, _>>()?;
    let off = [[1, 1, 1, 2], [1, 0, 0, 1]].iter().map(|p| dim4_of_pair(c, *p)).collect::<Result<Vec<_>, _>>()?;
    let agree = off.iter().all(|(e, o)| e == o);
    let off_dims: Vec<usize> = off.iter().map(|d| d.0).collect();
    Ok(vec![
        kv("baseline_dim4", s.dim(4).map_err(err)?),
        kv("on_diagonal_dim4", list(&on)),
        kv("off_diagonal_differs_from_15", list(&off_dims.iter().map(|&d| d != 15).collect::<Vec<_>>())),
        kv("off_diagonal_dim4", if agree { list(&off_dims) } else { format!("{off:?}") }),
    ])
}

fn check_t_family(c: &Ctx) -> Result<Values, String> {
    let mut out = Vec::new();
    for (label, t) in [("t=2", c.n(2)), ("t=-1", c.n(-1)), ("t=w", c.w())] {
        let mut e = c.engine("T", &[c.n(1), t])?;
        out.push(kv(label, list(&e.hilbert(7).map_err(err)?)));
    }
    Ok(out)
}

fn series_equal(c: &Ctx, a: &mut Engine, b: &mut Engine, elems: &[Mat], max: usize) -> Result<bool, String> {
    for g in elems {
        let sa = group::character_series(a, g, max).map_err(err)?;
        let sb = group::character_series(b, g, max).map_err(err)?;
        if sa != sb {
            return Ok(false);
        }
    }
    let _ = c;
    Ok(true)
}

fn check_t_characters(c: &Ctx) -> Result<Values, String> {
    let mut t2 = c.engine("T", &[c.n(1), c.n(2)])?;
    let mut poly = c.engine("poly", &[])?;
    let elems: Vec<Mat> = group::h3_sample_elements(&c.k).map_err(err)?.into_iter().map(|(_, m)| m).collect();
    let equal = series_equal(c, &mut t2, &mut poly, &elems, 6)?;
    let cz = Mat::scalar(&c.w(), 3);
    let s = group::character_series(&mut t2, &cz, 6).map_err(err)?;
    let h = t2.hilbert(6).map_err(err)?;
    let mut twist = true;
    for (d, (chi, dim)) in s.iter().zip(&h).enumerate() {
        let want = CycNum::omega_pow(&c.k, d as i64).map_err(err)?.scale(&num_rational::BigRational::from_integer((*dim).into()));
        twist &= *chi == want;
    }
    Ok(vec![kv("equals_poly_0_6", equal), kv("central_twist", twist)])
}

fn check_clifford(c: &Ctx) -> Result<Values, String> {
    let mut cl = c.engine("clifford", &[])?;
    let mut poly = c.engine("poly", &[])?;
    let reps = CharacterTable::h3(&c.k).map_err(err)?.class_reps;
    let equal = series_equal(c, &mut cl, &mut poly, &reps, 6)?;
    let mut s = c.engine("degenerate", &[c.n(0), c.n(0), c.n(1)])?;
    s.extend_to_degree(3).map_err(err)?;
    let pair = cubic_pair(&c.k, &c.n(1), &c.n(-1), &c.n(1), &c.n(-1)).map_err(err)?;
    let inside = s.in_span_mod_ideal(&constructions::clifford_commutator(&c.k), &pair).map_err(err)?;
    Ok(vec![kv("equals_poly_0_6", equal), kv("commutator_in_span", inside)])
}

fn check_central_cubic(c: &Ctx) -> Result<Values, String> {
    let mut central = Vec::new();
    let mut dim_t2 = 0;
    for t in [c.n(2), c.n(-1), c.w()] {
        let mut e = c.engine("T", &[c.n(1), t.clone()])?;
        e.extend_to_degree(4).map_err(err)?;
        let basis = e.center_basis(3).map_err(err)?;
        let g = central_g(&c.k, CentralKind::T, &t);
        central.push(e.is_central(&g).map_err(err)? && e.in_span_mod_ideal(&g, &basis).map_err(err)?);
        if t == c.n(2) {
            dim_t2 = basis.len();
        }
    }
    let mut zhang = Vec::new();
    for t in [c.n(1), c.n(2)] {
        let mut e = c.engine("zhang", std::slice::from_ref(&t))?;
        e.extend_to_degree(4).map_err(err)?;
        let basis = e.center_basis(3).map_err(err)?;
        let g = central_g(&c.k, CentralKind::Zhang, &t);
        zhang.push(e.in_span_mod_ideal(&g, &basis).map_err(err)? && !e.normal_form(&g).map_err(err)?.is_zero());
    }
    Ok(vec![kv("T_central", list(&central)), kv("T2_center_dim_3", dim_t2), kv("zhang_central", list(&zhang))])
}

/// True when no letter sits at both an even and an odd position.
pub fn parity_separated(w: &Word) -> bool {
    let mut seen = [[false; 2]; 256];
    for (i, l) in w.letters().enumerate() {
        seen[l][i % 2] = true;
    }
    seen.iter().all(|s| !(s[0] && s[1]))
}

pub const M_DEGREE4_WORDS: [&str; 12] =
    ["xyxy", "xyzy", "zyzy", "xzxz", "xzyz", "yzyz", "yxyx", "yxzx", "zxzx", "yxyz", "zxzy", "xyxz"];

fn check_m_basis(c: &Ctx) -> Result<Values, String> {
    let mut m = c.engine("M", &[c.n(1), c.n(2)])?;
    let h = m.hilbert(7).map_err(err)?;
    let listed: Vec<NcPoly> = M_DEGREE4_WORDS.iter().map(|w| c.poly(w)).collect();
    let nonzero = listed.iter().all(|p| m.normal_form(p).map(|q| !q.is_zero()).unwrap_or(false));
    let rank = if nonzero { m.rank_in_quotient(&listed).map_err(err)? } else { 0 };
    let parity = m.quotient_basis(4).map_err(err)?.iter().all(parity_separated);
    let mut lemma = true;
    for w in Word::all(3, 4) {
        let zero = m.reduce_word(&w).map_err(err)?.is_zero();
        lemma &= zero != parity_separated(&w);
    }
    Ok(vec![
        kv("hilbert_0_7", list(&h)),
        kv("listed_words_rank", rank),
        kv("basis_parity", parity),
        kv("monomial_lemma_deg4", lemma),
    ])
}

fn check_regularity(c: &Ctx) -> Result<Values, String> {
    let t = c.engine("T", &[c.n(1), c.n(2)])?.hilbert(7).map_err(err)?;
    let m = c.engine("M", &[c.n(1), c.n(2)])?.hilbert(7).map_err(err)?;
    let ok = (3..=7).all(|d| t[d] - m[d] == t[d - 3]);
    Ok(vec![kv("differences_3_7", ok)])
}

fn check_m1_center(c: &Ctx) -> Result<Values, String> {
    let cfg = EngineConfig { degree_cap: 12, ..Default::default() };
    let mut m = Engine::with_config(preset(&c.k, "M", &[c.n(1), c.n(1)]).map_err(err)?, cfg);
    m.extend_to_degree(6).map_err(err)?;
    let odd = [1, 3, 5].iter().map(|&k| m.center_basis(k).map(|b| b.len())).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let c4 = m.center_basis(4).map_err(err)?;
    let mut contains = true;
    for s in ["x + y", "y + z", "x + z"] {
        let p = c.poly(s).pow(4).map_err(err)?;
        contains &= m.in_span_mod_ideal(&p, &c4).map_err(err)?;
    }
    m.extend_to_degree(12).map_err(err)?;
    let prod = c
        .poly("xy + yx")
        .pow(2)
        .and_then(|a| a.mul(&c.poly("yz + zy").pow(2)?))
        .and_then(|a| a.mul(&c.poly("zx + xz").pow(2)?))
        .map_err(err)?;
    let vanishes = m.normal_form(&prod).map_err(err)?.is_zero();
    Ok(vec![
        kv("odd_center_dims", list(&odd)),
        kv("center_dim_4", c4.len()),
        kv("contains_powers", contains),
        kv("product_vanishes", vanishes),
    ])
}

/// Solves `uvw = alpha g^4` in degree 12 of `T_1` for
/// `u, v, w = (x+y)^4, (y+z)^4, (x+z)^4`.
pub fn t1_alpha(k: &Arc<FieldCtx>) -> Result<(usize, usize, bool, Option<CycNum>), String> {
    let one = CycNum::one(k);
    let cfg = EngineConfig { degree_cap: 12, ..Default::default() };
    let mut e = Engine::with_config(preset(k, "T", &[one.clone(), one.clone()]).map_err(err)?, cfg);
    e.extend_to_degree(12).map_err(err)?;
    let c3 = e.center_basis(3).map_err(err)?.len();
    let c4 = e.center_basis(4).map_err(err)?;
    let gens = default_gens(3);
    let lifts: Vec<NcPoly> = ["x + y", "y + z", "x + z"]
        .iter()
        .map(|s| NcPoly::parse(k, &gens, s).and_then(|p| p.pow(4)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut central = true;
    for l in &lifts {
        central &= e.is_central(l).map_err(err)? && e.in_span_mod_ideal(l, &c4).map_err(err)?;
    }
    let red = lifts.iter().map(|l| e.reduce(l)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let uvw = e.mul(&e.mul(&red[0], &red[1]).map_err(err)?, &red[2]).map_err(err)?;
    let g = e.reduce(&central_g(k, CentralKind::T, &one)).map_err(err)?;
    let g4 = e.pow(&g, 4).map_err(err)?;
    // uvw - alpha g^4 = 0 as a one-column system in alpha
    let ker = linalg::kernel(&[g4.coords.clone(), uvw.coords.scale(&-&one)], e.dim(12).map_err(err)?, k);
    let alpha = match ker.as_slice() {
        [v] => {
            let d = v.to_dense(2, k);
            (!d[1].is_zero()).then(|| d[0].checked_div(&d[1]).expect("nonzero"))
        }
        _ => None,
    };
    Ok((c3, c4.len(), central, alpha))
}

fn check_t1_center(c: &Ctx) -> Result<Values, String> {
    let (c3, c4, central, alpha) = t1_alpha(&c.k)?;
    let alpha = match alpha {
        Some(a) if !a.is_zero() => a.to_string(),
        Some(_) => "0".into(),
        None => "none".into(),
    };
    Ok(vec![kv("center_dim_3", c3), kv("center_dim_4", c4), kv("lifts_central", central), kv("alpha", alpha)])
}

fn check_bad_case(c: &Ctx) -> Result<Values, String> {
    let mut bc = c.engine("badC", &[])?;
    bc.extend_to_degree(4).map_err(err)?;
    let ann = bc.annihilator_check(&central_g(&c.k, CentralKind::T, &c.n(0))).map_err(err)?;
    let a = c.engine("badA", &[])?.hilbert(9).map_err(err)?;
    let ai: Vec<i64> = a.iter().map(|&v| v as i64).collect();
    let rec = (4..ai.len()).all(|n| ai[n] == 2 * ai[n - 1] - ai[n - 3]) && (3..ai.len()).all(|n| ai[n] == ai[n - 1] + ai[n - 2]);
    let form = guess_rational_series(&ai).map_or("none".to_string(), |r| r.to_string());
    let hc = bc.hilbert(9).map_err(err)?;
    let extra = (0..=9).all(|d| hc[d] == a[d] + usize::from(d == 3));
    Ok(vec![
        kv("annihilates", ann),
        kv("hilbert_0_9", list(&a)),
        kv("recurrences", rec),
        kv("rational_form", form),
        kv("extra_dim_at_3", extra),
    ])
}

fn check_fibonacci(c: &Ctx) -> Result<Values, String> {
    let mut a = c.engine("badA", &[])?;
    let e1 = builtin_group(&c.k, "H3-e1").map_err(err)?;
    Ok(vec![kv("fixed_dims_0_6", list(&group::fixed_subalgebra_dims(&e1, &mut a, 6).map_err(err)?))])
}

fn check_points(c: &Ctx) -> Result<Values, String> {
    let pt = |v: [i64; 3]| ProjPoint::from_ints(&c.k, v).expect("nonzero");
    let t = c.n(2);
    let step = |prev: [i64; 3], cur: [i64; 3]| {
        next_point(&TriangleState { prev: Some(pt(prev)), cur: pt(cur) }, Some(&t)).map_err(err)
    };
    let next_ok = step([0, 1, 1], [1, 0, 0])? == Next::Point(pt([0, 1, -2]))
        && step([1, 0, 0], [0, 1, 1])? == Next::Point(pt([1, 0, 0]))
        && step([1, 0, 0], [0, 1, 0])? == Next::Point(pt([1, 0, 0]));
    // two forced steps from [0:1:1] through q0 land on phi^2([0:1:1])
    let two_steps = step([0, 1, 1], [1, 0, 0])?;
    let phi_ok = Next::Point(phi_squared(&pt([0, 1, 1]), &t).map_err(err)?) == two_steps
        && phi_squared(&pt([1, 0, 0]), &t).map_err(err)? == pt([1, 0, 0])
        && phi_squared(&pt([0, 1, 5]), &c.n(-1)).map_err(err)? == pt([0, 1, 5]);
    let show = |o: Option<usize>| o.map_or("none".to_string(), |k| k.to_string());
    Ok(vec![
        kv("next_point_examples", next_ok),
        kv("phi_squared_examples", phi_ok),
        kv("order_minus_w", show(phi_order(&-&c.w(), 50).map_err(err)?)),
        kv("order_minus_1", show(phi_order(&c.n(-1), 50).map_err(err)?)),
        kv("order_2", show(phi_order(&c.n(2), 50).map_err(err)?)),
    ])
}

/// Twenty points of the chart `c = 1` with lines that alternately do and do
/// not satisfy the two linear conditions.
pub fn blowup_samples(k: &Arc<FieldCtx>) -> Vec<(ParamPoint, PluckerLine)> {
    let n = |v: i64| CycNum::from_int(k, v);
    let w = CycNum::omega(k).expect("3 | m");
    let w2 = &w * &w;
    (0..20i64)
        .map(|i| {
            let a = if i % 5 == 0 { n(0) } else { &n(i - 7) * &(if i % 3 == 0 { w.clone() } else { n(1) }) };
            let b = if i % 7 == 3 && i % 5 != 0 { n(0) } else { n(2 * i - 9) };
            let p = ParamPoint::new(vec![a.clone(), b.clone(), n(1)]).expect("c = 1");
            let r1 = vec![n(1), &a * &w2, &b * &w];
            let r2 = vec![n(1), &a * &w, &b * &w2];
            let line = if i % 2 == 0 {
                PluckerLine::through(&r1, &r2)
            } else {
                PluckerLine::through(&r1, &[n(i), n(1), n(-2)])
            };
            (p, line)
        })
        .collect()
}

fn check_blowup(c: &Ctx) -> Result<Values, String> {
    let samples = blowup_samples(&c.k);
    let mut consistent = 0;
    let mut implied = true;
    for (p, line) in &samples {
        let r = blowup_condition(p, line).map_err(err)?;
        if (r.rank <= 2) == r.eqs_hold {
            consistent += 1;
        }
        if r.eqs_hold && !r.plucker_relation {
            implied = false;
        }
    }
    Ok(vec![kv("samples_consistent", format!("{consistent}/{}", samples.len())), kv("relation_implied", implied)])
}

fn check_preimage(c: &Ctx) -> Result<Values, String> {
    let p = ParamPoint::from_ints(&c.k, &[1, 2, 3]).map_err(err)?;
    let out = central_preimage_line(&p).map_err(err)?;
    let mut e = c.engine("sklyanin", p.coords())?;
    e.extend_to_degree(3).map_err(err)?;
    let cols: Vec<SparseVec> =
        invariant_cubics(&c.k).iter().map(|w| e.reduce(w).map(|a| a.coords)).collect::<Result<_, _>>().map_err(err)?;
    let ker = linalg::kernel(&cols, e.dim(3).map_err(err)?, &c.k);
    let kernel_on_line = ker.len() == 1 && out.line.contains(&ker[0].to_dense(3, &c.k));
    Ok(vec![
        kv("preimage_dim", out.dim),
        kv("contains_point", out.line.contains(p.coords())),
        kv("contains_kernel", kernel_on_line),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_eighteen_sorted_entries() {
        let c = corpus();
        assert_eq!(c.iter().map(|e| e.id).collect::<Vec<_>>(), (1..=18).collect::<Vec<_>>());
        for e in &c {
            for v in &e.values {
                assert!(["published", "derived", "definitional"].contains(&v.origin.as_str()));
                assert_eq!(v.origin == "derived", v.oracle.is_some(), "{} {}", e.id, v.key);
            }
        }
    }

    #[test]
    fn parity() {
        let g = default_gens(3);
        assert!(parity_separated(&Word::parse("xyxz", &g).unwrap()));
        assert!(!parity_separated(&Word::parse("xyzx", &g).unwrap()));
    }

    #[test]
    fn unknown_check() {
        assert!(run_check(99).is_none());
    }
}
