//! Brute-force reference computations inside the full tensor slice
//! `V^{(x) d}`. Nothing here touches the incremental engine; the functions
//! exist to cross-check it.

use std::sync::Arc;

use crate::cyclotomic::{CycNum, FieldCtx};
use crate::engine::Presentation;
use crate::freealg::{NcPoly, Word};
use crate::linalg::{Elimination, Rref, SparseVec};
use crate::parallel::ExecMode;

/// `I_d` as an echelon basis over all `n^d` words; column `j` is the word
/// with `Presentation::order_index == j`, so pivots are the largest words.
pub struct FullSlice {
    pub degree: usize,
    pub rref: Rref,
}

fn column_word(pres: &Presentation, col: usize, d: usize) -> Word {
    let order = pres.order();
    let n = pres.n();
    let mut letters = vec![0usize; d];
    let mut c = col;
    for k in (0..d).rev() {
        letters[k] = order[c % n];
        c /= n;
    }
    Word::from_letters(&letters)
}

fn poly_row(pres: &Presentation, p: &NcPoly) -> SparseVec {
    SparseVec::from_entries(p.terms().iter().map(|(w, c)| (pres.order_index(w) as usize, c.clone())).collect())
}

/// Span of every product `u r v` with `u, v` words and `r` a relation.
pub fn ideal_slice(pres: &Presentation, d: usize, mode: ExecMode) -> FullSlice {
    let n = pres.n();
    let ctx = pres.ctx();
    let mut jobs = Vec::new();
    for (ri, r) in pres.relations().iter().enumerate() {
        if r.degree() > d {
            continue;
        }
        let rest = d - r.degree();
        for left in 0..=rest {
            jobs.push((ri, left, rest - left));
        }
    }
    let blocks: Vec<Vec<SparseVec>> = mode.map(&jobs, |&(ri, left, right)| {
        let r = &pres.relations()[ri];
        let mut rows = Vec::new();
        for u in Word::all(n, left) {
            for v in Word::all(n, right) {
                let p = NcPoly::word(ctx, u.clone()).mul(r).and_then(|q| q.mul(&NcPoly::word(ctx, v.clone())));
                rows.push(poly_row(pres, &p.expect("same context")));
            }
        }
        rows
    });
    let rows = blocks.into_iter().flatten().collect();
    FullSlice { degree: d, rref: Rref::new(rows, n.pow(d as u32), ctx, Elimination::Auto) }
}

pub fn hilbert(pres: &Presentation, max: usize) -> Vec<usize> {
    let n = pres.n();
    (0..=max).map(|d| n.pow(d as u32) - ideal_slice(pres, d, ExecMode::default()).rref.rank()).collect()
}

/// Non-pivot words, largest first.
pub fn standard_words(pres: &Presentation, slice: &FullSlice) -> Vec<Word> {
    slice.rref.free_columns().map(|c| column_word(pres, c, slice.degree)).collect()
}

/// Remainder of `p` modulo `I_d` on the non-pivot words.
pub fn normal_form(pres: &Presentation, slice: &FullSlice, p: &NcPoly) -> NcPoly {
    let v = slice.rref.reduce(poly_row(pres, p));
    let mut out = NcPoly::zero(pres.ctx(), p.degree());
    for (c, a) in v.entries() {
        out.add_term(column_word(pres, *c, slice.degree), a);
    }
    out
}

pub fn in_ideal(pres: &Presentation, slice: &FullSlice, p: &NcPoly) -> bool {
    slice.rref.contains(&poly_row(pres, p))
}

/// `g . p` for the linear substitution `x_l -> sum_m mat[m][l] x_m`, expanded
/// in the free algebra.
pub fn substitute(ctx: &Arc<FieldCtx>, mat: &[Vec<CycNum>], p: &NcPoly) -> NcPoly {
    let n = mat.len();
    let images: Vec<NcPoly> = (0..n)
        .map(|l| {
            let mut q = NcPoly::zero(ctx, 1);
            for (m, row) in mat.iter().enumerate() {
                q.add_term(Word::letter(m), &row[l]);
            }
            q
        })
        .collect();
    let mut out = NcPoly::zero(ctx, p.degree());
    for (w, c) in p.terms() {
        let mut acc = NcPoly::one(ctx);
        for l in w.letters() {
            acc = acc.mul(&images[l]).expect("same context");
        }
        out = out.add(&acc.scale(c)).expect("same degree");
    }
    out
}

/// `chi_{A_d}(g) = tr(g | V^{(x) d}) - tr(g | I_d)`. The trace on `I_d`
/// reads each image `g . row_i` in the echelon basis: its coordinate on
/// row `i` is its entry at that row's pivot.
pub fn char_on_slice(pres: &Presentation, slice: &FullSlice, mat: &[Vec<CycNum>]) -> CycNum {
    let ctx = pres.ctx();
    let d = slice.degree;
    let mut tr_v = CycNum::zero(ctx);
    for (i, row) in mat.iter().enumerate() {
        tr_v = &tr_v + &row[i];
    }
    let tr_t = tr_v.pow(d as i64).expect("nonzero exponent base");
    let mut tr_i = CycNum::zero(ctx);
    for row in slice.rref.rows() {
        let (pivot, _) = row.leading().expect("nonzero row");
        let mut p = NcPoly::zero(ctx, d);
        for (c, a) in row.entries() {
            p.add_term(column_word(pres, *c, d), a);
        }
        let img = poly_row(pres, &substitute(ctx, mat, &p));
        if let Some(a) = img.get(pivot) {
            tr_i = &tr_i + a;
        }
    }
    &tr_t - &tr_i
}
