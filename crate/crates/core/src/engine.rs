//! Degree-by-degree linear algebra for `A = T(V) / (R)`.
//!
//! Slice `d` is stored relative to `A_{d-1} (x) V = T_d / (I_{d-1} V)`: the
//! columns are the words `b l` with `b` a standard word of degree `d - 1`,
//! and the echelon rows span the image of `I_d`, which is generated by the
//! products `b r` with `b` standard and `r` a relation. Because the
//! standard words of `I_d` are closed under taking prefixes, the non-pivot
//! columns are exactly the standard words of degree `d` under deg-lex order,
//! so the quotient basis agrees with a full reduction inside `V^{(x) d}`
//! while the matrices only have `dim A_{d-1} * n` columns.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx};
use crate::freealg::{FreeAlgError, NcPoly, Word};
use crate::linalg::{self, Elimination, Rref, SparseVec};
use crate::parallel::ExecMode;

/// Default degree cap for three generators.
pub const DEFAULT_DEGREE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("degree {requested} exceeds the configured cap {cap}")]
    DegreeCap { requested: usize, cap: usize },
    #[error("degree {0} has not been computed")]
    NotComputed(usize),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Field(#[from] CycError),
}

/// Generators, homogeneous relations and the word order used for pivoting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ctx: Arc<FieldCtx>,
    gens: Vec<String>,
    relations: Vec<NcPoly>,
    /// `rank[letter]`; rank 0 is the largest letter.
    rank: Vec<usize>,
}

impl Presentation {
    pub fn new(ctx: &Arc<FieldCtx>, gens: Vec<String>, relations: Vec<NcPoly>) -> Result<Self, EngineError> {
        let n = gens.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(EngineError::InvalidPresentation(format!("unsupported generator count {n}")));
        }
        for (i, r) in relations.iter().enumerate() {
            if r.ctx().m() != ctx.m() {
                return Err(CycError::ContextMismatch(ctx.m(), r.ctx().m()).into());
            }
            if r.is_zero() {
                return Err(EngineError::InvalidPresentation(format!("relation {i} is zero")));
            }
            if r.degree() == 0 {
                return Err(EngineError::InvalidPresentation(format!("relation {i} has degree 0")));
            }
            for w in r.support() {
                w.slice_index(n)?;
            }
        }
        Ok(Presentation { ctx: Arc::clone(ctx), gens, relations, rank: (0..n).collect() })
    }

    pub fn free(ctx: &Arc<FieldCtx>, gens: Vec<String>) -> Result<Self, EngineError> {
        Self::new(ctx, gens, Vec::new())
    }

    /// Sets the letter order, largest letter first.
    pub fn with_order(mut self, largest_first: &[usize]) -> Result<Self, EngineError> {
        let n = self.gens.len();
        let mut seen = vec![false; n];
        if largest_first.len() != n {
            return Err(EngineError::InvalidPresentation("order must list every generator once".into()));
        }
        for (r, &l) in largest_first.iter().enumerate() {
            if l >= n || seen[l] {
                return Err(EngineError::InvalidPresentation("order must list every generator once".into()));
            }
            seen[l] = true;
            self.rank[l] = r;
        }
        Ok(self)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> Vec<usize> {
        self.relations.iter().map(NcPoly::degree).collect()
    }

    /// Letters from largest to smallest.
    pub fn order(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n()).collect();
        v.sort_by_key(|&l| self.rank[l]);
        v
    }

    pub fn letter_rank(&self, letter: usize) -> usize {
        self.rank[letter]
    }

    /// Deg-lex comparison under the presentation's letter order.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.letters().zip(b.letters()) {
                match self.rank[y].cmp(&self.rank[x]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Column index of `w` in `V^{(x) d}` such that larger words get smaller indices.
    pub fn order_index(&self, w: &Word) -> u64 {
        let n = self.n() as u64;
        w.letters().fold(0u64, |acc, l| acc * n + self.rank[l] as u64)
    }

    /// Adds relations, keeping the letter order.
    pub fn extended(&self, extra: Vec<NcPoly>) -> Result<Self, EngineError> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        let p = Presentation::new(&self.ctx, self.gens.clone(), rels)?;
        p.with_order(&self.order())
    }
}

/// One graded piece: the standard words of degree `d` plus the echelon data
/// that reduces `A_{d-1} (x) V` onto them.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    degree: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    /// For every basis word `b l`: index of `b` in the previous slice and `l`.
    parent: Vec<(usize, usize)>,
    rref: Rref,
    /// Normal form of `b l`, indexed by `prev_index * n + letter`.
    right_mult: Vec<SparseVec>,
    ideal_dim: u128,
}

impl DegreeSlice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim I_d = n^d - dim A_d`.
    pub fn ideal_dim(&self) -> u128 {
        self.ideal_dim
    }

    /// Standard words, largest first.
    pub fn basis_words(&self) -> &[Word] {
        &self.basis
    }

    pub fn basis_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Echelon rows over the columns `b l` of `A_{d-1} (x) V`. Words with a
    /// non-standard prefix are pivots of `I_{d-1} V` and carry no row here.
    pub fn reduction_rows(&self) -> &[SparseVec] {
        self.rref.rows()
    }

    pub fn parent(&self, i: usize) -> (usize, usize) {
        self.parent[i]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub degree_cap: usize,
    pub mode: ExecMode,
    pub elimination: Elimination,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { degree_cap: DEFAULT_DEGREE_CAP, mode: ExecMode::default(), elimination: Elimination::Auto }
    }
}

/// Element of a single graded piece `A_d`, in coordinates of its standard words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    pub degree: usize,
    pub coords: SparseVec,
}

impl AlgElem {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// Incrementally computed graded quotient.
#[derive(Clone, Debug)]
pub struct Engine {
    pres: Presentation,
    config: EngineConfig,
    /// `rank_letter[r]` is the letter of rank `r`.
    rank_letter: Vec<usize>,
    slices: Vec<DegreeSlice>,
}

impl Engine {
    pub fn new(pres: Presentation) -> Self {
        Self::with_config(pres, EngineConfig::default())
    }

    pub fn with_config(pres: Presentation, config: EngineConfig) -> Self {
        let rank_letter = pres.order();
        let unit = DegreeSlice {
            degree: 0,
            basis: vec![Word::empty()],
            index: HashMap::from([(Word::empty(), 0)]),
            parent: vec![(0, 0)],
            rref: Rref::empty(0),
            right_mult: Vec::new(),
            ideal_dim: 0,
        };
        Engine { pres, config, rank_letter, slices: vec![unit] }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.pres.ctx()
    }

    pub fn n(&self) -> usize {
        self.pres.n()
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn set_mode(&mut self, mode: ExecMode) {
        self.config.mode = mode;
    }

    pub fn max_degree(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, d: usize) -> Result<&DegreeSlice, EngineError> {
        self.slices.get(d).ok_or(EngineError::NotComputed(d))
    }

    pub fn slices(&self) -> &[DegreeSlice] {
        &self.slices
    }

    pub fn dim(&self, d: usize) -> Result<usize, EngineError> {
        Ok(self.slice(d)?.dim())
    }

    /// Makes slices `0..=max` available.
    pub fn extend_to_degree(&mut self, max: usize) -> Result<(), EngineError> {
        if max > self.config.degree_cap {
            return Err(EngineError::DegreeCap { requested: max, cap: self.config.degree_cap });
        }
        while self.max_degree() < max {
            let d = self.max_degree() + 1;
            let s = self.build_slice(d)?;
            self.slices.push(s);
        }
        Ok(())
    }

    fn build_slice(&self, d: usize) -> Result<DegreeSlice, EngineError> {
        let n = self.n();
        let ctx = Arc::clone(self.ctx());
        let prev = &self.slices[d - 1];
        let ncols = prev.dim() * n;

        // spanning set {b r : b standard of degree d - deg r}
        let mut jobs: Vec<(usize, usize)> = Vec::new();
        for (ri, r) in self.pres.relations().iter().enumerate() {
            if r.degree() <= d {
                let lower = d - r.degree();
                jobs.extend((0..self.slices[lower].dim()).map(|bi| (ri, bi)));
            }
        }
        let rows: Vec<SparseVec> = self.config.mode.map(&jobs, |&(ri, bi)| {
            let r = &self.pres.relations()[ri];
            let lower = d - r.degree();
            let mut entries = Vec::new();
            for (w, c) in r.terms() {
                let (head, last) = w.0.split_at(w.len() - 1);
                let mut v = SparseVec::unit(bi, &ctx);
                for (k, &l) in head.iter().enumerate() {
                    v = self.right_mul_vec(lower + k, &v, l as usize);
                }
                let col_letter = self.pres.letter_rank(last[0] as usize);
                for (j, a) in v.entries() {
                    entries.push((j * n + col_letter, a * c));
                }
            }
            SparseVec::from_entries(entries)
        });
        let rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
        let rref = Rref::new(rows, ncols, &ctx, self.config.elimination);
        Ok(self.finish_slice(d, rref))
    }

    /// Reads off standard words and right multiplication from the echelon rows.
    fn finish_slice(&self, d: usize, rref: Rref) -> DegreeSlice {
        let n = self.n();
        let ctx = Arc::clone(self.ctx());
        let prev = &self.slices[d - 1];
        let ncols = prev.dim() * n;

        let mut basis = Vec::new();
        let mut parent = Vec::new();
        let mut col_pos = vec![usize::MAX; ncols];
        for col in rref.free_columns() {
            let (pi, letter) = (col / n, self.rank_letter[col % n]);
            col_pos[col] = basis.len();
            basis.push(prev.basis[pi].concat(&Word::letter(letter)));
            parent.push((pi, letter));
        }
        let mut right_mult = vec![SparseVec::new(); ncols];
        for pi in 0..prev.dim() {
            for letter in 0..n {
                let col = pi * n + self.pres.letter_rank(letter);
                let v = match rref.pivot_row(col) {
                    None => SparseVec::unit(col_pos[col], &ctx),
                    Some(row) => SparseVec::from_entries(
                        row.entries()[1..].iter().map(|(c, a)| (col_pos[*c], -a)).collect(),
                    ),
                };
                right_mult[pi * n + letter] = v;
            }
        }
        let total = (n as u128).pow(d as u32);
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        DegreeSlice { degree: d, ideal_dim: total - basis.len() as u128, basis, index, parent, rref, right_mult }
    }

    /// `v * letter` for `v` in `A_deg`; needs slice `deg + 1`.
    pub fn right_mul_vec(&self, deg: usize, v: &SparseVec, letter: usize) -> SparseVec {
        let next = &self.slices[deg + 1];
        let n = self.n();
        let mut acc = SparseVec::new();
        for (i, c) in v.entries() {
            acc = acc.axpy(c, &next.right_mult[i * n + letter]);
        }
        acc
    }

    fn require(&self, d: usize) -> Result<(), EngineError> {
        if d > self.max_degree() {
            return Err(EngineError::NotComputed(d));
        }
        Ok(())
    }

    /// Hilbert function `dim A_0, ..., dim A_max`.
    pub fn hilbert(&mut self, max: usize) -> Result<Vec<usize>, EngineError> {
        self.extend_to_degree(max)?;
        Ok(self.slices[..=max].iter().map(DegreeSlice::dim).collect())
    }

    pub fn quotient_basis(&self, d: usize) -> Result<&[Word], EngineError> {
        Ok(self.slice(d)?.basis_words())
    }

    pub fn reduce_word(&self, w: &Word) -> Result<SparseVec, EngineError> {
        self.require(w.len())?;
        let mut v = SparseVec::unit(0, self.ctx());
        for (k, l) in w.letters().enumerate() {
            if l >= self.n() {
                return Err(FreeAlgError::LetterOutOfRange { letter: l, n: self.n() }.into());
            }
            v = self.right_mul_vec(k, &v, l);
            if v.is_zero() {
                break;
            }
        }
        Ok(v)
    }

    /// Class of `p` in `A_{deg p}`.
    pub fn reduce(&self, p: &NcPoly) -> Result<AlgElem, EngineError> {
        self.require(p.degree())?;
        let mut memo: HashMap<&[u8], SparseVec> = HashMap::new();
        let mut acc = SparseVec::new();
        for (w, c) in p.terms() {
            let v = self.reduce_prefix(&w.0, &mut memo)?;
            acc = acc.axpy(c, &v);
        }
        Ok(AlgElem { degree: p.degree(), coords: acc })
    }

    fn reduce_prefix<'a>(&self, w: &'a [u8], memo: &mut HashMap<&'a [u8], SparseVec>) -> Result<SparseVec, EngineError> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let v = match w.split_last() {
            None => SparseVec::unit(0, self.ctx()),
            Some((&l, head)) => {
                if l as usize >= self.n() {
                    return Err(FreeAlgError::LetterOutOfRange { letter: l as usize, n: self.n() }.into());
                }
                let h = self.reduce_prefix(head, memo)?;
                self.right_mul_vec(head.len(), &h, l as usize)
            }
        };
        memo.insert(w, v.clone());
        Ok(v)
    }

    pub fn to_poly(&self, e: &AlgElem) -> NcPoly {
        let basis = &self.slices[e.degree].basis;
        let mut p = NcPoly::zero(self.ctx(), e.degree);
        for (i, c) in e.coords.entries() {
            p.add_term(basis[*i].clone(), c);
        }
        p
    }

    /// Normal form: supported on standard words, zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, EngineError> {
        Ok(self.to_poly(&self.reduce(p)?))
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem, EngineError> {
        let degree = a.degree + b.degree;
        self.require(degree)?;
        let basis = &self.slices[b.degree].basis;
        let mut acc = SparseVec::new();
        for (j, c) in b.coords.entries() {
            let mut v = a.coords.clone();
            for (k, l) in basis[*j].letters().enumerate() {
                v = self.right_mul_vec(a.degree + k, &v, l);
            }
            acc = acc.axpy(c, &v);
        }
        Ok(AlgElem { degree, coords: acc })
    }

    pub fn pow(&self, a: &AlgElem, e: usize) -> Result<AlgElem, EngineError> {
        let mut acc = AlgElem { degree: 0, coords: SparseVec::unit(0, self.ctx()) };
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn letter_elem(&self, l: usize) -> Result<AlgElem, EngineError> {
        self.require(1)?;
        Ok(AlgElem { degree: 1, coords: self.reduce_word(&Word::letter(l))? })
    }

    /// `letter * a`.
    pub fn left_mul_letter(&self, a: &AlgElem, letter: usize) -> Result<AlgElem, EngineError> {
        self.mul(&self.letter_elem(letter)?, a)
    }

    pub fn right_mul_letter(&self, a: &AlgElem, letter: usize) -> Result<AlgElem, EngineError> {
        self.require(a.degree + 1)?;
        Ok(AlgElem { degree: a.degree + 1, coords: self.right_mul_vec(a.degree, &a.coords, letter) })
    }

    /// Image of `p` under the graded automorphism sending generator `l` to
    /// `sum_m images[l][m] x_m`, reduced into `A_{deg p}`.
    pub fn reduce_substituted(&self, p: &NcPoly, images: &[Vec<CycNum>]) -> Result<AlgElem, EngineError> {
        self.require(p.degree())?;
        let mut acc = SparseVec::new();
        for (w, c) in p.terms() {
            let mut v = SparseVec::unit(0, self.ctx());
            for (k, l) in w.letters().enumerate() {
                let mut next = SparseVec::new();
                for (m, a) in images[l].iter().enumerate() {
                    if !a.is_zero() {
                        next = next.axpy(a, &self.right_mul_vec(k, &v, m));
                    }
                }
                v = next;
                if v.is_zero() {
                    break;
                }
            }
            acc = acc.axpy(c, &v);
        }
        Ok(AlgElem { degree: p.degree(), coords: acc })
    }

    /// Commutator images `(c x_i - x_i c)_i` stacked in `A_{d+1}^n`.
    fn commutator_column(&self, c: &AlgElem) -> Result<SparseVec, EngineError> {
        let dim_next = self.dim(c.degree + 1)?;
        let mut entries = Vec::new();
        for l in 0..self.n() {
            let right = self.right_mul_letter(c, l)?;
            let left = self.left_mul_letter(c, l)?;
            let diff = right.coords.sub(&left.coords, self.ctx());
            entries.extend(diff.into_entries().into_iter().map(|(i, a)| (l * dim_next + i, a)));
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// Basis (as normal forms) of the degree-`k` central elements; needs slice `k + 1`.
    pub fn center_basis(&self, k: usize) -> Result<Vec<NcPoly>, EngineError> {
        self.require(k + 1)?;
        let ctx = self.ctx();
        let cols = self.config.mode.map_range(self.dim(k)?, |i| {
            self.commutator_column(&AlgElem { degree: k, coords: SparseVec::unit(i, ctx) })
        });
        let cols = cols.into_iter().collect::<Result<Vec<_>, _>>()?;
        let ker = linalg::kernel(&cols, self.n() * self.dim(k + 1)?, ctx);
        Ok(ker.into_iter().map(|v| self.to_poly(&AlgElem { degree: k, coords: v })).collect())
    }

    pub fn is_central(&self, c: &NcPoly) -> Result<bool, EngineError> {
        self.require(c.degree() + 1)?;
        let e = self.reduce(c)?;
        Ok(self.commutator_column(&e)?.is_zero())
    }

    /// True iff `c x_i` and `x_i c` vanish for every generator.
    pub fn annihilator_check(&self, c: &NcPoly) -> Result<bool, EngineError> {
        self.require(c.degree() + 1)?;
        let e = self.reduce(c)?;
        for l in 0..self.n() {
            if !self.right_mul_letter(&e, l)?.is_zero() || !self.left_mul_letter(&e, l)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rank of the classes of `polys` (all of one degree) in the quotient.
    pub fn rank_in_quotient(&self, polys: &[NcPoly]) -> Result<usize, EngineError> {
        let Some(first) = polys.first() else { return Ok(0) };
        let d = first.degree();
        let vs = polys
            .iter()
            .map(|p| {
                if p.degree() != d && !p.is_zero() {
                    return Err(EngineError::Input("mixed degrees".into()));
                }
                Ok(self.reduce(p)?.coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(linalg::rank(&vs, self.dim(d)?, self.ctx()))
    }

    /// Whether `p` lies in the span of `span` modulo the ideal.
    pub fn in_span_mod_ideal(&self, p: &NcPoly, span: &[NcPoly]) -> Result<bool, EngineError> {
        let r = self.rank_in_quotient(span)?;
        let mut all = span.to_vec();
        all.push(p.clone());
        Ok(self.rank_in_quotient(&all)? == r)
    }

    /// Rebuilds slices `1..` from stored echelon rows. Stops at the first
    /// degree whose rows do not fit; returns the last degree installed.
    pub fn install_rows(&mut self, stored: Vec<(usize, Vec<SparseVec>)>) -> usize {
        self.slices.truncate(1);
        for (ncols, rows) in stored {
            let d = self.max_degree() + 1;
            if d > self.config.degree_cap || ncols != self.slices[d - 1].dim() * self.n() {
                break;
            }
            let Some(rref) = Rref::from_reduced(rows, ncols) else { break };
            let s = self.finish_slice(d, rref);
            self.slices.push(s);
        }
        self.max_degree()
    }
}

/// Dimensions of two subspaces of one tensor slice, their sum and intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceDims {
    pub dim1: usize,
    pub dim2: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
}

fn to_columns(sets: &[&[NcPoly]]) -> Result<(Vec<Vec<SparseVec>>, Vec<Word>), EngineError> {
    let mut degree = None;
    let mut cols: HashMap<Word, usize> = HashMap::new();
    let mut words = Vec::new();
    for set in sets {
        for p in set.iter() {
            if p.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(p.degree()),
                Some(d) if d != p.degree() => {
                    return Err(EngineError::Input(format!("mixed degrees {d} and {}", p.degree())))
                }
                _ => {}
            }
            for w in p.support() {
                if !cols.contains_key(w) {
                    cols.insert(w.clone(), words.len());
                    words.push(w.clone());
                }
            }
        }
    }
    let vecs = sets
        .iter()
        .map(|set| {
            set.iter()
                .map(|p| SparseVec::from_entries(p.terms().iter().map(|(w, c)| (cols[w], c.clone())).collect()))
                .collect()
        })
        .collect();
    Ok((vecs, words))
}

/// Exact ranks of two families of homogeneous tensors of one degree.
pub fn subspace_dims(v1: &[NcPoly], v2: &[NcPoly]) -> Result<SubspaceDims, EngineError> {
    let (vecs, words) = to_columns(&[v1, v2])?;
    let Some(ctx) = v1.iter().chain(v2).map(|p| Arc::clone(p.ctx())).next() else {
        return Ok(SubspaceDims { dim1: 0, dim2: 0, dim_sum: 0, dim_intersection: 0 });
    };
    let ncols = words.len();
    let dim1 = linalg::rank(&vecs[0], ncols, &ctx);
    let dim2 = linalg::rank(&vecs[1], ncols, &ctx);
    let all: Vec<SparseVec> = vecs[0].iter().chain(&vecs[1]).cloned().collect();
    let dim_sum = linalg::rank(&all, ncols, &ctx);
    Ok(SubspaceDims { dim1, dim2, dim_sum, dim_intersection: dim1 + dim2 - dim_sum })
}

/// Basis of `span(v1) ∩ span(v2)`, in reduced echelon form.
pub fn intersection_basis(v1: &[NcPoly], v2: &[NcPoly]) -> Result<Vec<NcPoly>, EngineError> {
    let (vecs, words) = to_columns(&[v1, v2])?;
    let Some(first) = v1.iter().chain(v2).find(|p| !p.is_zero()) else {
        return Ok(Vec::new());
    };
    let ctx = Arc::clone(first.ctx());
    let degree = first.degree();
    // a in ker [v1 | -v2]  =>  sum a_i v1_i lies in both spans
    let minus = CycNum::from_int(&ctx, -1);
    let cols: Vec<SparseVec> = vecs[0].iter().cloned().chain(vecs[1].iter().map(|v| v.scale(&minus))).collect();
    let ker = linalg::kernel(&cols, words.len(), &ctx);
    let k1 = vecs[0].len();
    let images: Vec<SparseVec> = ker
        .iter()
        .map(|a| {
            let head = SparseVec::from_entries(a.entries().iter().filter(|(j, _)| *j < k1).cloned().collect());
            linalg::combine(&head, &vecs[0])
        })
        .collect();
    let rref = Rref::new(images, words.len(), &ctx, Elimination::Auto);
    Ok(rref
        .rows()
        .iter()
        .map(|r| {
            let mut p = NcPoly::zero(&ctx, degree);
            for (i, c) in r.entries() {
                p.add_term(words[*i].clone(), c);
            }
            p
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::default_gens;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(3).unwrap()
    }

    fn pres(rels: &[&str]) -> Presentation {
        let k = ctx();
        let g = default_gens(3);
        let rels = rels.iter().map(|s| NcPoly::parse(&k, &g, s).unwrap()).collect();
        Presentation::new(&k, g, rels).unwrap()
    }

    #[test]
    fn free_algebra_has_no_ideal() {
        let mut e = Engine::new(pres(&[]));
        e.extend_to_degree(5).unwrap();
        for d in 0..=5 {
            assert_eq!(e.slice(d).unwrap().ideal_dim(), 0);
        }
        assert_eq!(e.hilbert(4).unwrap(), vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn degenerate_monomial_slices() {
        let mut e = Engine::new(pres(&["xx", "yy", "zz"]));
        assert_eq!(e.hilbert(5).unwrap(), vec![1, 3, 6, 12, 24, 48]);
        assert_eq!(e.slice(3).unwrap().ideal_dim(), 15);
        let b2: Vec<String> = e.quotient_basis(2).unwrap().iter().map(|w| w.to_text(&default_gens(3))).collect();
        assert_eq!(b2, vec!["xy", "xz", "yx", "yz", "zx", "zy"]);
    }

    #[test]
    fn degree_zero_basis_is_unit() {
        let e = Engine::new(pres(&["xy - yx"]));
        assert_eq!(e.quotient_basis(0).unwrap(), &[Word::empty()]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let cfg = EngineConfig { degree_cap: 3, ..Default::default() };
        let mut e = Engine::with_config(pres(&["xx"]), cfg);
        assert_eq!(e.extend_to_degree(4), Err(EngineError::DegreeCap { requested: 4, cap: 3 }));
        assert!(e.extend_to_degree(3).is_ok());
    }

    #[test]
    fn relations_reduce_to_zero_and_normal_form_is_idempotent() {
        let rels = ["yz + 2*zy + 3*xx", "zx + 2*xz + 3*yy", "xy + 2*yx + 3*zz"];
        let mut e = Engine::new(pres(&rels));
        e.extend_to_degree(4).unwrap();
        let k = ctx();
        let g = default_gens(3);
        for r in rels {
            assert!(e.normal_form(&NcPoly::parse(&k, &g, r).unwrap()).unwrap().is_zero());
        }
        let p = NcPoly::parse(&k, &g, "zyxz + 2*xxyy - 5*zzzx").unwrap();
        let nf = e.normal_form(&p).unwrap();
        assert_eq!(e.normal_form(&nf).unwrap(), nf);
        // p - nf lies in the ideal
        assert!(e.normal_form(&p.sub(&nf).unwrap()).unwrap().is_zero());
        for w in nf.support() {
            assert!(e.slice(4).unwrap().basis_index(w).is_some());
        }
    }

    #[test]
    fn center_of_free_algebra_in_degree_one_is_trivial() {
        let mut e = Engine::new(pres(&[]));
        e.extend_to_degree(2).unwrap();
        assert!(e.center_basis(1).unwrap().is_empty());
        assert_eq!(e.center_basis(0).unwrap().len(), 1);
    }

    #[test]
    fn polynomial_ring_center_is_everything() {
        let mut e = Engine::new(pres(&["xy - yx", "yz - zy", "zx - xz"]));
        e.extend_to_degree(3).unwrap();
        assert_eq!(e.center_basis(2).unwrap().len(), 6);
    }

    #[test]
    fn annihilators() {
        let mut e = Engine::new(pres(&[]));
        e.extend_to_degree(3).unwrap();
        let k = ctx();
        let g = default_gens(3);
        assert!(!e.annihilator_check(&NcPoly::parse(&k, &g, "xy").unwrap()).unwrap());
        let mut e = Engine::new(pres(&["xx", "yy", "zz", "xyz", "yzx", "zxy"]));
        e.extend_to_degree(4).unwrap();
        assert!(!e.annihilator_check(&NcPoly::parse(&k, &g, "x").unwrap()).unwrap());
    }

    #[test]
    fn subspace_dimensions() {
        let k = ctx();
        let g = default_gens(3);
        let p = |s: &str| NcPoly::parse(&k, &g, s).unwrap();
        let d = subspace_dims(&[p("xy"), p("yx")], &[]).unwrap();
        assert_eq!(d, SubspaceDims { dim1: 2, dim2: 0, dim_sum: 2, dim_intersection: 0 });
        let d = subspace_dims(&[p("xy"), p("yx")], &[p("xy + yx"), p("zz")]).unwrap();
        assert_eq!(d.dim_intersection, 1);
        let b = intersection_basis(&[p("xy"), p("yx")], &[p("xy + yx"), p("zz")]).unwrap();
        assert_eq!(b, vec![p("xy + yx")]);
        assert!(subspace_dims(&[p("x")], &[p("xy")]).is_err());
    }

    #[test]
    fn custom_order_changes_basis_not_dimension() {
        let rels = ["yz + 2*zy + 3*xx", "zx + 2*xz + 3*yy", "xy + 2*yx + 3*zz"];
        let mut a = Engine::new(pres(&rels));
        let mut b = Engine::new(pres(&rels).with_order(&[2, 1, 0]).unwrap());
        assert_eq!(a.hilbert(5).unwrap(), b.hilbert(5).unwrap());
        assert_ne!(a.quotient_basis(2).unwrap(), b.quotient_basis(2).unwrap());
    }
}
