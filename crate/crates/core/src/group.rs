//! Finite matrix groups acting on the generators, characters of graded
//! pieces, isotypic decompositions and the Heisenberg group of order 27.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx, Rat};
use crate::engine::{Engine, EngineError};
use crate::freealg::NcPoly;
use crate::linalg::{self, SparseVec};
use crate::parallel::ExecMode;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded {0} elements")]
    OrderCap(usize),
    #[error("matrix {0} is not square of the expected size or not invertible")]
    BadMatrix(String),
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
    #[error("inconsistent character data: {0}")]
    Inconsistent(String),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// Square matrix; column `j` holds the image of generator `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    entries: Vec<CycNum>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        write!(f, "Mat{rows:?}")
    }
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Mat, GroupError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadMatrix("rows".into()));
        }
        Ok(Mat { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Mat {
        Mat::scalar(&CycNum::one(ctx), n)
    }

    pub fn scalar(c: &CycNum, n: usize) -> Mat {
        let z = CycNum::zero(c.ctx());
        let entries = (0..n * n).map(|k| if k / n == k % n { c.clone() } else { z.clone() }).collect();
        Mat { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<CycNum>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `images[l][m]`: coefficient of `x_m` in the image of `x_l`.
    pub fn images(&self) -> Vec<Vec<CycNum>> {
        (0..self.n).map(|l| (0..self.n).map(|m| self.get(m, l).clone()).collect()).collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let ctx = self.entries[0].ctx();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycNum::zero(ctx);
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Mat { n, entries }
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero(self.entries[0].ctx());
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        *self == Mat::scalar(self.get(0, 0), self.n)
    }

    fn rank(&self) -> usize {
        let ctx = self.entries[0].ctx();
        let rows: Vec<SparseVec> = self.rows().into_iter().map(SparseVec::from_dense).collect();
        linalg::rank(&rows, self.n, ctx)
    }

    /// `g . p` expanded in the free algebra.
    pub fn act_on_poly(&self, p: &NcPoly) -> NcPoly {
        crate::oracle::substitute(p.ctx(), &self.rows(), p)
    }
}

/// A finite group given by generator matrices, closed by breadth-first search.
#[derive(Clone, Debug)]
pub struct MatAction {
    ctx: Arc<FieldCtx>,
    n: usize,
    gens: Vec<(String, Mat)>,
    elements: Vec<Mat>,
    words: Vec<Vec<usize>>,
    index: HashMap<Mat, usize>,
}

impl MatAction {
    pub fn close(ctx: &Arc<FieldCtx>, n: usize, gens: Vec<(String, Mat)>, cap: usize) -> Result<MatAction, GroupError> {
        for (name, g) in &gens {
            if g.n != n || g.entries.iter().any(|c| c.ctx().m() != ctx.m()) || g.rank() != n {
                return Err(GroupError::BadMatrix(name.clone()));
            }
        }
        let id = Mat::identity(ctx, n);
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, (_, g)) in gens.iter().enumerate() {
                let h = elements[i].mul(g);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(GroupError::OrderCap(cap));
                }
                let mut w = words[i].clone();
                w.push(gi);
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
                words.push(w);
            }
        }
        Ok(MatAction { ctx: Arc::clone(ctx), n, gens, elements, words, index })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[(String, Mat)] {
        &self.gens
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    /// Generator indices whose product is element `i`.
    pub fn element_word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn position(&self, g: &Mat) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Conjugacy class id of every element; ids follow first appearance.
    pub fn conjugacy_classes(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.order()];
        let mut next = 0;
        let inverses: Vec<Mat> = self.gens.iter().map(|(_, g)| self.inverse(g)).collect();
        for start in 0..self.order() {
            if class[start] != usize::MAX {
                continue;
            }
            class[start] = next;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for ((_, g), gi) in self.gens.iter().zip(&inverses) {
                    let h = gi.mul(&self.elements[i]).mul(g);
                    let j = self.index[&h];
                    if class[j] == usize::MAX {
                        class[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        class
    }

    pub fn inverse(&self, g: &Mat) -> Mat {
        let mut p = g.clone();
        loop {
            let q = p.mul(g);
            if q == Mat::identity(&self.ctx, self.n) {
                return p;
            }
            p = q;
        }
    }
}

fn omega_pow(ctx: &Arc<FieldCtx>, k: i64) -> Result<CycNum, GroupError> {
    Ok(CycNum::omega_pow(ctx, k)?)
}

/// Standard generators `e1: x -> z, y -> x, z -> y` and `e2 = diag(1, w, w^2)`.
pub fn h3_generators(ctx: &Arc<FieldCtx>) -> Result<(Mat, Mat), GroupError> {
    let o = CycNum::zero(ctx);
    let l = CycNum::one(ctx);
    let e1 = Mat::from_rows(vec![
        vec![o.clone(), l.clone(), o.clone()],
        vec![o.clone(), o.clone(), l.clone()],
        vec![l.clone(), o.clone(), o.clone()],
    ])?;
    let e2 = Mat::from_rows(vec![
        vec![l.clone(), o.clone(), o.clone()],
        vec![o.clone(), omega_pow(ctx, 1)?, o.clone()],
        vec![o.clone(), o.clone(), omega_pow(ctx, 2)?],
    ])?;
    Ok((e1, e2))
}

pub const BUILTIN_GROUPS: [&str; 4] = ["H3", "H3-e1", "H3-e2", "H3-center"];

/// `H3`, its cyclic subgroups `<e1>`, `<e2>` and the centre `<w I>`.
pub fn builtin_group(ctx: &Arc<FieldCtx>, name: &str) -> Result<MatAction, GroupError> {
    let (e1, e2) = h3_generators(ctx)?;
    let gens = match name {
        "H3" => vec![("e1".to_string(), e1), ("e2".to_string(), e2)],
        "H3-e1" => vec![("e1".to_string(), e1)],
        "H3-e2" => vec![("e2".to_string(), e2)],
        "H3-center" => vec![("c".to_string(), Mat::scalar(&omega_pow(ctx, 1)?, 3))],
        _ => return Err(GroupError::UnknownGroup(name.to_string())),
    };
    MatAction::close(ctx, 3, gens, DEFAULT_ORDER_CAP)
}

/// The H3 elements `1, e1, e2, e1 e2, c, c^2` with `c = [e1, e2] = w I`.
pub fn h3_sample_elements(ctx: &Arc<FieldCtx>) -> Result<Vec<(String, Mat)>, GroupError> {
    let (e1, e2) = h3_generators(ctx)?;
    let c = Mat::scalar(&omega_pow(ctx, 1)?, 3);
    Ok(vec![
        ("1".into(), Mat::identity(ctx, 3)),
        ("e1".into(), e1.clone()),
        ("e2".into(), e2.clone()),
        ("e1e2".into(), e1.mul(&e2)),
        ("c".into(), c.clone()),
        ("c^2".into(), c.mul(&c)),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub name: String,
    pub degree: usize,
    /// One value per class, in the order of `class_reps`.
    pub values: Vec<CycNum>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub class_names: Vec<String>,
    pub class_reps: Vec<Mat>,
    pub irreps: Vec<Irrep>,
}

impl CharacterTable {
    pub fn trivial(ctx: &Arc<FieldCtx>, n: usize) -> CharacterTable {
        CharacterTable {
            class_names: vec!["1".into()],
            class_reps: vec![Mat::identity(ctx, n)],
            irreps: vec![Irrep { name: "trivial".into(), degree: 1, values: vec![CycNum::one(ctx)] }],
        }
    }

    /// Eleven classes: `c^k` for k = 0, 1, 2 and `e1^i e2^j` for `(i, j) != (0, 0)`.
    /// `chi_{a,b}(e1^i e2^j c^k) = w^(a i + b j)`, `V1` is the defining
    /// representation and `V2` its dual.
    pub fn h3(ctx: &Arc<FieldCtx>) -> Result<CharacterTable, GroupError> {
        let (e1, e2) = h3_generators(ctx)?;
        let id = Mat::identity(ctx, 3);
        let c = Mat::scalar(&omega_pow(ctx, 1)?, 3);
        let pw = |m: &Mat, k: usize| (0..k).fold(id.clone(), |acc, _| acc.mul(m));
        let mut class_names = Vec::new();
        let mut class_reps = Vec::new();
        let mut labels = Vec::new();
        for k in 0..3 {
            class_names.push(match k {
                0 => "1".to_string(),
                1 => "c".to_string(),
                _ => "c^2".to_string(),
            });
            class_reps.push(pw(&c, k));
            labels.push((0i64, 0i64, k as i64));
        }
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 0) {
                    class_names.push(format!("e1^{i}e2^{j}"));
                    class_reps.push(pw(&e1, i).mul(&pw(&e2, j)));
                    labels.push((i as i64, j as i64, -1));
                }
            }
        }
        let zero = CycNum::zero(ctx);
        let mut irreps = Vec::new();
        for a in 0..3i64 {
            for b in 0..3i64 {
                let values = labels
                    .iter()
                    .map(|&(i, j, _)| omega_pow(ctx, a * i + b * j))
                    .collect::<Result<Vec<_>, _>>()?;
                irreps.push(Irrep { name: format!("chi{a}{b}"), degree: 1, values });
            }
        }
        for (name, s) in [("V1", 1i64), ("V2", 2)] {
            let values = labels
                .iter()
                .map(|&(_, _, k)| {
                    if k < 0 {
                        Ok(zero.clone())
                    } else {
                        Ok(omega_pow(ctx, s * k)?.scale(&Rat::from_integer(3.into())))
                    }
                })
                .collect::<Result<Vec<_>, GroupError>>()?;
            irreps.push(Irrep { name: name.into(), degree: 3, values });
        }
        Ok(CharacterTable { class_names, class_reps, irreps })
    }

    /// Maps every element of `group` to its column in the table.
    pub fn element_columns(&self, group: &MatAction) -> Result<Vec<usize>, GroupError> {
        let classes = group.conjugacy_classes();
        let nclasses = classes.iter().max().map_or(0, |m| m + 1);
        if nclasses != self.class_reps.len() {
            return Err(GroupError::Inconsistent(format!(
                "group has {nclasses} classes, table lists {}",
                self.class_reps.len()
            )));
        }
        let mut column_of_class = vec![usize::MAX; nclasses];
        for (col, rep) in self.class_reps.iter().enumerate() {
            let i = group
                .position(rep)
                .ok_or_else(|| GroupError::Inconsistent(format!("class {} not in group", self.class_names[col])))?;
            if column_of_class[classes[i]] != usize::MAX {
                return Err(GroupError::Inconsistent("two representatives share a class".into()));
            }
            column_of_class[classes[i]] = col;
        }
        Ok(classes.iter().map(|&k| column_of_class[k]).collect())
    }

    /// Checks `sum deg^2 = |G|` and orthonormality of the rows.
    pub fn check(&self, group: &MatAction) -> Result<(), GroupError> {
        let ctx = group.ctx();
        let cols = self.element_columns(group)?;
        let mut sizes = vec![0i64; self.class_reps.len()];
        for c in cols {
            sizes[c] += 1;
        }
        let deg2: usize = self.irreps.iter().map(|r| r.degree * r.degree).sum();
        if deg2 != group.order() {
            return Err(GroupError::Inconsistent(format!("sum of squared degrees {deg2} != {}", group.order())));
        }
        for (i, r) in self.irreps.iter().enumerate() {
            if r.values[0] != CycNum::from_int(ctx, r.degree as i64) {
                return Err(GroupError::Inconsistent(format!("{} has wrong value at 1", r.name)));
            }
            for (j, s) in self.irreps.iter().enumerate() {
                let mut acc = CycNum::zero(ctx);
                for (k, size) in sizes.iter().enumerate() {
                    acc = &acc + &(&r.values[k] * &s.values[k].conj()).scale(&Rat::from_integer((*size).into()));
                }
                let expect = if i == j { group.order() as i64 } else { 0 };
                if acc != CycNum::from_int(ctx, expect) {
                    return Err(GroupError::Inconsistent(format!("rows {} and {} not orthogonal", r.name, s.name)));
                }
            }
        }
        Ok(())
    }
}

/// Fails with the offending image unless every relation is mapped into the ideal.
pub fn check_stable(engine: &mut Engine, g: &Mat) -> Result<(), GroupError> {
    let top = engine.presentation().relation_degrees().into_iter().max().unwrap_or(0);
    engine.extend_to_degree(top)?;
    let images = g.images();
    for r in engine.presentation().relations() {
        let img = engine.reduce_substituted(r, &images)?;
        if !img.is_zero() {
            let gens = engine.presentation().gens().to_vec();
            return Err(GroupError::SymmetryViolation(format!(
                "{} maps to {} modulo the ideal",
                r.to_text(&gens),
                engine.to_poly(&img).to_text(&gens)
            )));
        }
    }
    Ok(())
}

/// `chi_{A_d}(g)` for `d = 0..=max`. The action on `A_d` is built on the
/// standard words `b l` as `g(b) g(l)`, reduced through the right
/// multiplication tables.
pub fn character_series(engine: &mut Engine, g: &Mat, max: usize) -> Result<Vec<CycNum>, GroupError> {
    check_stable(engine, g)?;
    engine.extend_to_degree(max)?;
    Ok(character_series_unchecked(engine, g, max))
}

fn character_series_unchecked(engine: &Engine, g: &Mat, max: usize) -> Vec<CycNum> {
    let ctx = engine.ctx();
    let images = g.images();
    let mut out = vec![CycNum::one(ctx)];
    let mut prev: Vec<SparseVec> = vec![SparseVec::unit(0, ctx)];
    for d in 1..=max {
        let slice = engine.slice(d).expect("extended");
        let mut cur = Vec::with_capacity(slice.dim());
        let mut trace = CycNum::zero(ctx);
        for i in 0..slice.dim() {
            let (p, l) = slice.parent(i);
            let mut v = SparseVec::new();
            for (m, a) in images[l].iter().enumerate() {
                if !a.is_zero() {
                    v = v.axpy(a, &engine.right_mul_vec(d - 1, &prev[p], m));
                }
            }
            if let Some(t) = v.get(i) {
                trace = &trace + t;
            }
            cur.push(v);
        }
        out.push(trace);
        prev = cur;
    }
    out
}

pub fn char_on_slice(engine: &mut Engine, g: &Mat, d: usize) -> Result<CycNum, GroupError> {
    Ok(character_series(engine, g, d)?.pop().expect("nonempty"))
}

/// Character series of every element of `group`, in element order.
pub fn group_character_series(
    engine: &mut Engine,
    group: &MatAction,
    max: usize,
    mode: ExecMode,
) -> Result<Vec<Vec<CycNum>>, GroupError> {
    for (_, g) in group.generators() {
        check_stable(engine, g)?;
    }
    engine.extend_to_degree(max)?;
    let e: &Engine = engine;
    Ok(mode.map(group.elements(), |g| character_series_unchecked(e, g, max)))
}

fn to_natural(c: &CycNum, what: &str) -> Result<usize, GroupError> {
    c.as_integer()
        .and_then(|i| usize::try_from(i).ok())
        .ok_or_else(|| GroupError::Inconsistent(format!("{what} = {c} is not a non-negative integer")))
}

/// Multiplicity of every irrep of `table` in `A_d`, in table order.
pub fn isotypic_multiplicities(
    group: &MatAction,
    table: &CharacterTable,
    engine: &mut Engine,
    d: usize,
) -> Result<Vec<(String, usize)>, GroupError> {
    let cols = table.element_columns(group)?;
    let mode = engine.config().mode;
    let chars = group_character_series(engine, group, d, mode)?;
    let ctx = Arc::clone(group.ctx());
    let order = Rat::from_integer((group.order() as i64).into());
    table
        .irreps
        .iter()
        .map(|s| {
            let mut acc = CycNum::zero(&ctx);
            for (i, series) in chars.iter().enumerate() {
                acc = &acc + &(&s.values[cols[i]].conj() * &series[d]);
            }
            let m = acc.scale(&(Rat::from_integer(1.into()) / &order));
            Ok((s.name.clone(), to_natural(&m, &s.name)?))
        })
        .collect()
}

/// `dim A_d^H` for `d = 0..=max`, averaging characters over the group.
pub fn fixed_subalgebra_dims(group: &MatAction, engine: &mut Engine, max: usize) -> Result<Vec<usize>, GroupError> {
    let mode = engine.config().mode;
    let chars = group_character_series(engine, group, max, mode)?;
    let inv = Rat::from_integer(1.into()) / Rat::from_integer((group.order() as i64).into());
    (0..=max)
        .map(|d| {
            let mut acc = CycNum::zero(group.ctx());
            for s in &chars {
                acc = &acc + &s[d];
            }
            to_natural(&acc.scale(&inv), &format!("fixed dimension in degree {d}"))
        })
        .collect()
}

/// Dimension of the fixed part of `span(vectors)`, which must be stable.
pub fn invariant_dim(group: &MatAction, vectors: &[NcPoly]) -> Result<usize, GroupError> {
    let vectors: Vec<&NcPoly> = vectors.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = vectors.first() else { return Ok(0) };
    let ctx = Arc::clone(first.ctx());
    let base: Vec<NcPoly> = vectors.iter().map(|p| (*p).clone()).collect();
    let span_dim = crate::engine::subspace_dims(&base, &[])?.dim1;
    for (name, g) in group.generators() {
        let imgs: Vec<NcPoly> = base.iter().map(|p| g.act_on_poly(p)).collect();
        if crate::engine::subspace_dims(&base, &imgs)?.dim_sum != span_dim {
            return Err(GroupError::SymmetryViolation(format!("span is not stable under {name}")));
        }
    }
    let averaged: Vec<NcPoly> = base
        .iter()
        .map(|p| {
            let mut acc = NcPoly::zero(&ctx, p.degree());
            for g in group.elements() {
                acc = acc.add(&g.act_on_poly(p)).expect("same degree");
            }
            acc
        })
        .collect();
    if averaged.iter().all(NcPoly::is_zero) {
        return Ok(0);
    }
    Ok(crate::engine::subspace_dims(&averaged, &[])?.dim1)
}

impl From<crate::freealg::FreeAlgError> for GroupError {
    fn from(e: crate::freealg::FreeAlgError) -> Self {
        GroupError::Engine(e.into())
    }
}
