//! Named presentations, invariant cubics, central elements and the
//! projective-geometry checks around the parameter plane.

use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx};
use crate::engine::{Engine, EngineError, Presentation};
use crate::freealg::{default_gens, NcPoly, Word};
use crate::group::{self, GroupError};
use crate::linalg::{self, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("bad parameters for {preset}: {reason}")]
    BadParams { preset: String, reason: String },
    #[error("point {0} is outside the allowed domain")]
    Domain(String),
    #[error("degenerate line: all Plücker coordinates vanish")]
    DegenerateLine,
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub const PRESET_NAMES: [&str; 9] = ["poly", "sklyanin", "degenerate", "T", "M", "clifford", "badC", "badA", "zhang"];

/// Projective point, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    coords: Vec<CycNum>,
}

impl ParamPoint {
    pub fn new(coords: Vec<CycNum>) -> Result<ParamPoint, ConstructionError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| ConstructionError::Domain("all coordinates are zero".into()))?
            .inv()?;
        Ok(ParamPoint { coords: coords.iter().map(|c| c * &lead).collect() })
    }

    pub fn from_ints(ctx: &Arc<FieldCtx>, coords: &[i64]) -> Result<ParamPoint, ConstructionError> {
        Self::new(coords.iter().map(|&c| CycNum::from_int(ctx, c)).collect())
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.coords[0].ctx()
    }
}

impl std::fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// A 2-plane in a 3-space, or equivalently a line in the projective plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerLine {
    pub p01: CycNum,
    pub p20: CycNum,
    pub p12: CycNum,
}

impl PluckerLine {
    /// Line through the points `r` and `s`.
    pub fn through(r: &[CycNum], s: &[CycNum]) -> PluckerLine {
        PluckerLine {
            p01: &(&r[0] * &s[1]) - &(&r[1] * &s[0]),
            p20: &(&r[2] * &s[0]) - &(&r[0] * &s[2]),
            p12: &(&r[1] * &s[2]) - &(&r[2] * &s[1]),
        }
    }

    /// `(p12, p20, p01)`, orthogonal to every point of the line.
    pub fn normal(&self) -> [CycNum; 3] {
        [self.p12.clone(), self.p20.clone(), self.p01.clone()]
    }

    pub fn is_degenerate(&self) -> bool {
        self.p01.is_zero() && self.p20.is_zero() && self.p12.is_zero()
    }

    pub fn contains(&self, p: &[CycNum]) -> bool {
        dot(&self.normal(), p).is_zero()
    }
}

fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero(a[0].ctx());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

fn poly(ctx: &Arc<FieldCtx>, terms: &[(&str, &CycNum)]) -> NcPoly {
    let gens = default_gens(3);
    let degree = terms[0].0.len();
    let mut p = NcPoly::zero(ctx, degree);
    for (w, c) in terms {
        p.add_term(Word::parse(w, &gens).expect("preset word"), c);
    }
    p
}

fn ints(ctx: &Arc<FieldCtx>, terms: &[(&str, i64)]) -> NcPoly {
    NcPoly::from_int_terms(ctx, &default_gens(3), terms).expect("preset word")
}

fn sum(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a.add(b).expect("same degree")
}

fn need(name: &str, params: &[CycNum], counts: &[usize]) -> Result<(), ConstructionError> {
    if counts.contains(&params.len()) {
        Ok(())
    } else {
        Err(ConstructionError::BadParams {
            preset: name.into(),
            reason: format!("expected {counts:?} parameters, got {}", params.len()),
        })
    }
}

fn nonzero_pair(name: &str, a: &CycNum, b: &CycNum) -> Result<(), ConstructionError> {
    if a.is_zero() && b.is_zero() {
        return Err(ConstructionError::BadParams { preset: name.into(), reason: "[0:0] is not a point".into() });
    }
    Ok(())
}

pub fn sklyanin_relations(ctx: &Arc<FieldCtx>, a: &CycNum, b: &CycNum, c: &CycNum) -> Vec<NcPoly> {
    vec![
        poly(ctx, &[("yz", a), ("zy", b), ("xx", c)]),
        poly(ctx, &[("zx", a), ("xz", b), ("yy", c)]),
        poly(ctx, &[("xy", a), ("yx", b), ("zz", c)]),
    ]
}

fn twisted_cubics(ctx: &Arc<FieldCtx>, k: i64) -> Result<(NcPoly, NcPoly), CycError> {
    let one = CycNum::one(ctx);
    let w1 = CycNum::omega_pow(ctx, k)?;
    let w2 = CycNum::omega_pow(ctx, 2 * k)?;
    Ok((
        poly(ctx, &[("zxy", &one), ("xyz", &w1), ("yzx", &w2)]),
        poly(ctx, &[("yxz", &one), ("zyx", &w1), ("xzy", &w2)]),
    ))
}

/// `v_1 = A1 (zxy + w xyz + w^2 yzx) + B1 (yxz + w zyx + w^2 xzy)` and
/// `v_2` with `w` replaced by `w^2`.
pub fn cubic_pair(
    ctx: &Arc<FieldCtx>,
    a1: &CycNum,
    b1: &CycNum,
    a2: &CycNum,
    b2: &CycNum,
) -> Result<[NcPoly; 2], CycError> {
    let (p1, q1) = twisted_cubics(ctx, 1)?;
    let (p2, q2) = twisted_cubics(ctx, 2)?;
    Ok([sum(&p1.scale(a1), &q1.scale(b1)), sum(&p2.scale(a2), &q2.scale(b2))])
}

fn squares(ctx: &Arc<FieldCtx>) -> Vec<NcPoly> {
    ["xx", "yy", "zz"].iter().map(|w| ints(ctx, &[(w, 1)])).collect()
}

fn anticomm_comm(ctx: &Arc<FieldCtx>, a: &str, b: &str, c: &str) -> NcPoly {
    // [{a,b},c] = abc + bac - cab - cba
    ints(ctx, &[(&format!("{a}{b}{c}"), 1), (&format!("{b}{a}{c}"), 1), (&format!("{c}{a}{b}"), -1), (&format!("{c}{b}{a}"), -1)])
}

/// `[{x,y},z]`.
pub fn clifford_commutator(ctx: &Arc<FieldCtx>) -> NcPoly {
    anticomm_comm(ctx, "x", "y", "z")
}

/// Builds a named presentation on `x, y, z`.
///
/// * `poly`: the three commutators.
/// * `sklyanin(a, b, c)`: `a yz + b zy + c x^2` and its cyclic shifts.
/// * `degenerate(vertex)`: sklyanin at a coordinate vertex.
/// * `T(A, B)` or `T(A1, B1, A2, B2)`: `x^2, y^2, z^2` plus the cubic pair.
/// * `M(A, B)`: `x^2, y^2, z^2, A zxy + B yxz` and its cyclic shifts.
/// * `clifford`: squares and the three `[{x_i, x_i+1}, x_i+2]`.
/// * `badC`: `T(1, 0)`. `badA`: squares and `xyz, yzx, zxy`.
/// * `zhang(t)`: `yz, zx, xy` plus the twisted cubic pair.
pub fn preset(ctx: &Arc<FieldCtx>, name: &str, params: &[CycNum]) -> Result<Presentation, ConstructionError> {
    let relations = match name {
        "poly" => {
            need(name, params, &[0])?;
            vec![ints(ctx, &[("xy", 1), ("yx", -1)]), ints(ctx, &[("yz", 1), ("zy", -1)]), ints(ctx, &[("zx", 1), ("xz", -1)])]
        }
        "sklyanin" => {
            need(name, params, &[3])?;
            ParamPoint::new(params.to_vec())
                .map_err(|_| ConstructionError::BadParams { preset: name.into(), reason: "all coordinates zero".into() })?;
            sklyanin_relations(ctx, &params[0], &params[1], &params[2])
        }
        "degenerate" => {
            need(name, params, &[3])?;
            let nonzero = params.iter().filter(|c| !c.is_zero()).count();
            if nonzero != 1 {
                return Err(ConstructionError::BadParams {
                    preset: name.into(),
                    reason: "expected a vertex [0:0:1], [1:0:0] or [0:1:0]".into(),
                });
            }
            sklyanin_relations(ctx, &params[0], &params[1], &params[2])
        }
        "T" | "badC" => {
            let owned;
            let p = if name == "badC" {
                need(name, params, &[0])?;
                owned = vec![CycNum::one(ctx), CycNum::zero(ctx)];
                &owned[..]
            } else {
                need(name, params, &[2, 4])?;
                params
            };
            let (a1, b1, a2, b2) = if p.len() == 2 { (&p[0], &p[1], &p[0], &p[1]) } else { (&p[0], &p[1], &p[2], &p[3]) };
            nonzero_pair(name, a1, b1)?;
            nonzero_pair(name, a2, b2)?;
            let mut rels = squares(ctx);
            rels.extend(cubic_pair(ctx, a1, b1, a2, b2)?);
            rels
        }
        "M" => {
            need(name, params, &[2])?;
            let (a, b) = (&params[0], &params[1]);
            nonzero_pair(name, a, b)?;
            let mut rels = squares(ctx);
            for (u, v) in [("zxy", "yxz"), ("xyz", "zyx"), ("yzx", "xzy")] {
                rels.push(poly(ctx, &[(u, a), (v, b)]));
            }
            rels
        }
        "clifford" => {
            need(name, params, &[0])?;
            let mut rels = squares(ctx);
            rels.push(anticomm_comm(ctx, "x", "y", "z"));
            rels.push(anticomm_comm(ctx, "y", "z", "x"));
            rels.push(anticomm_comm(ctx, "z", "x", "y"));
            rels
        }
        "badA" => {
            need(name, params, &[0])?;
            let mut rels = squares(ctx);
            for w in ["xyz", "yzx", "zxy"] {
                rels.push(ints(ctx, &[(w, 1)]));
            }
            rels
        }
        "zhang" => {
            need(name, params, &[1])?;
            let t = &params[0];
            let one = CycNum::one(ctx);
            let mut rels: Vec<NcPoly> = ["yz", "zx", "xy"].iter().map(|w| ints(ctx, &[(w, 1)])).collect();
            for k in [1, 2] {
                let w1 = CycNum::omega_pow(ctx, k)?;
                let w2 = CycNum::omega_pow(ctx, 2 * k)?;
                let base = poly(ctx, &[("zyx", &one), ("xzy", &w1), ("yxz", &w2)]);
                let cubes = poly(ctx, &[("yyy", &one), ("zzz", &w1), ("xxx", &w2)]);
                rels.push(sum(&base, &cubes.scale(t)));
            }
            rels
        }
        _ => return Err(ConstructionError::UnknownPreset(name.to_string())),
    };
    Ok(Presentation::new(ctx, default_gens(3), relations)?)
}

/// `a (zxy + xyz + yzx) + b (yxz + zyx + xzy) + c (x^3 + y^3 + z^3)`.
pub fn superpotential(p: &ParamPoint) -> NcPoly {
    let ctx = p.ctx();
    let [w1, w2, w3] = invariant_cubics(ctx);
    let c = p.coords();
    sum(&sum(&w1.scale(&c[0]), &w2.scale(&c[1])), &w3.scale(&c[2]))
}

/// `zxy + xyz + yzx`, `yxz + zyx + xzy`, `x^3 + y^3 + z^3`.
pub fn invariant_cubics(ctx: &Arc<FieldCtx>) -> [NcPoly; 3] {
    [
        ints(ctx, &[("zxy", 1), ("xyz", 1), ("yzx", 1)]),
        ints(ctx, &[("yxz", 1), ("zyx", 1), ("xzy", 1)]),
        ints(ctx, &[("xxx", 1), ("yyy", 1), ("zzz", 1)]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralKind {
    T,
    Zhang,
}

/// Degree-3 central candidates of the `T` and `zhang` families.
pub fn central_g(ctx: &Arc<FieldCtx>, kind: CentralKind, t: &CycNum) -> NcPoly {
    let (a, b) = match kind {
        CentralKind::T => (
            ints(ctx, &[("zxy", 1), ("xyz", 1), ("yzx", 1)]),
            ints(ctx, &[("yxz", 1), ("zyx", 1), ("xzy", 1)]),
        ),
        CentralKind::Zhang => (
            ints(ctx, &[("zyx", 1), ("xzy", 1), ("yxz", 1)]),
            ints(ctx, &[("yyy", 1), ("zzz", 1), ("xxx", 1)]),
        ),
    };
    sum(&a, &b.scale(t))
}

/// The three vertices and the nine points `[1 : w^i : w^j]`.
pub fn nonregular_points(ctx: &Arc<FieldCtx>) -> Result<Vec<ParamPoint>, ConstructionError> {
    let mut out = vec![
        ParamPoint::from_ints(ctx, &[0, 0, 1])?,
        ParamPoint::from_ints(ctx, &[0, 1, 0])?,
        ParamPoint::from_ints(ctx, &[1, 0, 0])?,
    ];
    for i in 0..3 {
        for j in 0..3 {
            out.push(ParamPoint::new(vec![CycNum::one(ctx), CycNum::omega_pow(ctx, i)?, CycNum::omega_pow(ctx, j)?])?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupResult {
    pub rank: usize,
    pub eqs_hold: bool,
    pub plucker_relation: bool,
}

/// Rank of the 4x3 matrix with rows `(c, a w^2, b w)`, `(c, a w, b w^2)` and
/// two rows spanning `line`, together with the two linear conditions that
/// put both rows on the line and the relation `a p20 = b p01`.
pub fn blowup_condition(p: &ParamPoint, line: &PluckerLine) -> Result<BlowupResult, ConstructionError> {
    if line.is_degenerate() {
        return Err(ConstructionError::DegenerateLine);
    }
    let c = p.coords();
    if c.len() != 3 || c[2].is_zero() {
        return Err(ConstructionError::Domain(format!("{p} is not in the chart c = 1")));
    }
    let ctx = p.ctx();
    let inv_c = c[2].inv()?;
    let (a, b) = (&c[0] * &inv_c, &c[1] * &inv_c);
    let one = CycNum::one(ctx);
    let w = CycNum::omega(ctx)?;
    let w2 = CycNum::omega_pow(ctx, 2)?;
    let r1 = vec![one.clone(), &a * &w2, &b * &w];
    let r2 = vec![one, &a * &w, &b * &w2];
    let n = line.normal();
    let spanning = linalg::kernel(
        &n.iter().map(|x| SparseVec::from_dense(vec![x.clone()])).collect::<Vec<_>>(),
        1,
        ctx,
    );
    let mut rows = vec![SparseVec::from_dense(r1.clone()), SparseVec::from_dense(r2.clone())];
    rows.extend(spanning);
    let rank = linalg::rank(&rows, 3, ctx);
    let eqs_hold = dot(&r1, &n).is_zero() && dot(&r2, &n).is_zero();
    let plucker_relation = (&a * &line.p20) == (&b * &line.p01);
    Ok(BlowupResult { rank, eqs_hold, plucker_relation })
}

pub fn is_nonregular(p: &ParamPoint) -> Result<bool, ConstructionError> {
    Ok(p.coords().len() == 3 && nonregular_points(p.ctx())?.contains(p))
}

/// The preimage plane inside `span(w1, w2, w3)` of the invariant central cubic.
#[derive(Clone, Debug)]
pub struct PreimageLine {
    pub line: PluckerLine,
    /// Dimension of the preimage space; the line is only meaningful when this is 2.
    pub dim: usize,
    /// Normal form of the invariant central cubic.
    pub central: NcPoly,
}

pub fn central_preimage_line(p: &ParamPoint) -> Result<PreimageLine, ConstructionError> {
    if p.coords().len() != 3 {
        return Err(ConstructionError::Domain(format!("{p} is not a point of the plane")));
    }
    if is_nonregular(p)? {
        return Err(ConstructionError::Domain(format!("{p} is a non-regular point")));
    }
    let ctx = Arc::clone(p.ctx());
    let c = p.coords();
    let mut engine = Engine::new(preset(&ctx, "sklyanin", c)?);
    engine.extend_to_degree(4)?;
    let h3 = group::builtin_group(&ctx, "H3")?;
    for (_, g) in h3.generators() {
        group::check_stable(&mut engine, g)?;
    }
    let center = engine.center_basis(3)?;
    // averaging over H3 projects the centre onto its invariant part
    let mut invariant = Vec::new();
    for z in &center {
        let mut acc = SparseVec::new();
        for g in h3.elements() {
            acc = acc.add(&engine.reduce_substituted(z, &g.images())?.coords, &ctx);
        }
        if !acc.is_zero() {
            invariant.push(acc);
        }
    }
    let central = invariant
        .into_iter()
        .next()
        .ok_or_else(|| ConstructionError::Internal("no invariant central cubic".into()))?;
    let dim3 = engine.dim(3)?;
    let mut cols: Vec<SparseVec> = invariant_cubics(&ctx)
        .iter()
        .map(|w| engine.reduce(w).map(|e| e.coords))
        .collect::<Result<_, _>>()?;
    cols.push(central.scale(&CycNum::from_int(&ctx, -1)));
    let ker = linalg::kernel(&cols, dim3, &ctx);
    let alphas: Vec<Vec<CycNum>> = ker.iter().map(|v| v.to_dense(4, &ctx)[..3].to_vec()).collect();
    let alpha_rows: Vec<SparseVec> = alphas.iter().map(|a| SparseVec::from_dense(a.clone())).collect();
    let dim = linalg::rank(&alpha_rows, 3, &ctx);
    if dim != 2 {
        return Err(ConstructionError::Internal(format!("preimage has dimension {dim}")));
    }
    let basis = linalg::Rref::new(alpha_rows, 3, &ctx, linalg::Elimination::Auto);
    let r = basis.rows()[0].to_dense(3, &ctx);
    let s = basis.rows()[1].to_dense(3, &ctx);
    let central = engine.to_poly(&crate::engine::AlgElem { degree: 3, coords: central });
    Ok(PreimageLine { line: PluckerLine::through(&r, &s), dim, central })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(3).unwrap()
    }

    fn n(k: &Arc<FieldCtx>, v: i64) -> CycNum {
        CycNum::from_int(k, v)
    }

    #[test]
    fn sklyanin_text() {
        let k = ctx();
        let p = preset(&k, "sklyanin", &[n(&k, 1), n(&k, 2), n(&k, 3)]).unwrap();
        let g = default_gens(3);
        let texts: Vec<String> = p.relations().iter().map(|r| r.to_text(&g)).collect();
        assert_eq!(texts, vec!["3*xx + 1*yz + 2*zy", "2*xz + 3*yy + 1*zx", "1*xy + 2*yx + 3*zz"]);
    }

    #[test]
    fn m_and_bad_presets() {
        let k = ctx();
        let g = default_gens(3);
        let m = preset(&k, "M", &[n(&k, 1), n(&k, 1)]).unwrap();
        assert_eq!(m.relations().len(), 6);
        assert_eq!(m.relations()[3].to_text(&g), "1*yxz + 1*zxy");
        let a = preset(&k, "badA", &[]).unwrap();
        let texts: Vec<String> = a.relations().iter().map(|r| r.to_text(&g)).collect();
        assert_eq!(texts, vec!["1*xx", "1*yy", "1*zz", "1*xyz", "1*yzx", "1*zxy"]);
    }

    #[test]
    fn preset_errors() {
        let k = ctx();
        assert!(matches!(preset(&k, "nope", &[]), Err(ConstructionError::UnknownPreset(_))));
        assert!(preset(&k, "sklyanin", &[n(&k, 1)]).is_err());
        assert!(preset(&k, "sklyanin", &[n(&k, 0), n(&k, 0), n(&k, 0)]).is_err());
        assert!(preset(&k, "degenerate", &[n(&k, 1), n(&k, 1), n(&k, 0)]).is_err());
        assert!(preset(&k, "T", &[n(&k, 0), n(&k, 0)]).is_err());
        let k4 = FieldCtx::new(4).unwrap();
        assert!(matches!(preset(&k4, "badC", &[]), Err(ConstructionError::Field(_))));
        assert!(preset(&k4, "badA", &[]).is_ok());
    }

    #[test]
    fn superpotential_derivatives_give_relations() {
        let k = ctx();
        let p = ParamPoint::from_ints(&k, &[1, 2, 3]).unwrap();
        let s = superpotential(&p);
        let rels = sklyanin_relations(&k, &n(&k, 1), &n(&k, 2), &n(&k, 3));
        assert_eq!(s.cyclic_derivative(0), rels[0].scale(&n(&k, 3)));
        assert_eq!(s.cyclic_derivative(1), rels[1].scale(&n(&k, 3)));
        assert_eq!(s.cyclic_derivative(2), rels[2].scale(&n(&k, 3)));
        let g = default_gens(3);
        let vertex = superpotential(&ParamPoint::from_ints(&k, &[1, 0, 0]).unwrap());
        assert_eq!(vertex.to_text(&g), "1*xyz + 1*yzx + 1*zxy");
    }

    #[test]
    fn central_elements() {
        let k = ctx();
        let g = default_gens(3);
        assert_eq!(central_g(&k, CentralKind::T, &n(&k, 0)).to_text(&g), "1*xyz + 1*yzx + 1*zxy");
        assert_eq!(
            central_g(&k, CentralKind::T, &n(&k, -1)).to_text(&g),
            "1*xyz - 1*xzy - 1*yxz + 1*yzx + 1*zxy - 1*zyx"
        );
        assert_eq!(central_g(&k, CentralKind::Zhang, &n(&k, 1)).num_terms(), 6);
    }

    #[test]
    fn twelve_points() {
        let k = ctx();
        let pts = nonregular_points(&k).unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.contains(&ParamPoint::from_ints(&k, &[0, 0, 1]).unwrap()));
        let w = CycNum::omega(&k).unwrap();
        assert!(pts.contains(&ParamPoint::new(vec![n(&k, 1), w.clone(), &w * &w]).unwrap()));
        assert!(nonregular_points(&FieldCtx::new(4).unwrap()).is_err());
    }

    #[test]
    fn normalization() {
        let k = ctx();
        let p = ParamPoint::from_ints(&k, &[0, 2, 4]).unwrap();
        assert_eq!(p, ParamPoint::from_ints(&k, &[0, 1, 2]).unwrap());
        assert!(ParamPoint::from_ints(&k, &[0, 0, 0]).is_err());
    }

    #[test]
    fn blowup_examples() {
        let k = ctx();
        let p = ParamPoint::from_ints(&k, &[1, 1, 1]).unwrap();
        let good = PluckerLine { p01: n(&k, 1), p20: n(&k, 1), p12: n(&k, 1) };
        let r = blowup_condition(&p, &good).unwrap();
        assert_eq!(r, BlowupResult { rank: 2, eqs_hold: true, plucker_relation: true });
        let bad = PluckerLine { p01: n(&k, 1), p20: n(&k, 0), p12: n(&k, 0) };
        let r = blowup_condition(&p, &bad).unwrap();
        assert!(!r.eqs_hold);
        assert!(r.rank > 2);
        let zero = PluckerLine { p01: n(&k, 0), p20: n(&k, 0), p12: n(&k, 0) };
        assert_eq!(blowup_condition(&p, &zero), Err(ConstructionError::DegenerateLine));
    }

    #[test]
    fn preimage_line_at_123() {
        let k = ctx();
        let p = ParamPoint::from_ints(&k, &[1, 2, 3]).unwrap();
        let out = central_preimage_line(&p).unwrap();
        assert_eq!(out.dim, 2);
        assert!(out.line.contains(p.coords()));
        assert!(central_preimage_line(&ParamPoint::from_ints(&k, &[1, 1, 1]).unwrap()).is_err());
    }
}
