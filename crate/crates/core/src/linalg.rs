//! Exact reduced row-echelon forms over `Q(zeta_m)`.
//!
//! Rows are sparse vectors sorted by column. The pivot of a row is its
//! smallest column index; callers order columns so that this is the largest
//! word under their monomial order.

use std::sync::Arc;

use crate::cyclotomic::{CycNum, FieldCtx};

/// Fill ratio above which elimination switches to dense Gauss-Jordan.
pub const DENSE_FILL_THRESHOLD: f64 = 0.25;
/// Dense elimination is never used above this column count.
pub const DENSE_MAX_COLS: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, CycNum)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, ctx: &Arc<FieldCtx>) -> Self {
        SparseVec { entries: vec![(i, CycNum::one(ctx))] }
    }

    /// Builds a vector from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, CycNum)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, CycNum)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn entries(&self) -> &[(usize, CycNum)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, CycNum)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &CycNum)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Option<&CycNum> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &CycNum) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &CycNum, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec, ctx: &Arc<FieldCtx>) -> SparseVec {
        self.axpy(&CycNum::one(ctx), other)
    }

    pub fn sub(&self, other: &SparseVec, ctx: &Arc<FieldCtx>) -> SparseVec {
        self.axpy(&CycNum::from_int(ctx, -1), other)
    }

    pub fn to_dense(&self, n: usize, ctx: &Arc<FieldCtx>) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(ctx); n];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: Vec<CycNum>) -> SparseVec {
        SparseVec { entries: v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

/// Which elimination kernel to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Elimination {
    #[default]
    Auto,
    Sparse,
    Dense,
}

/// Reduced row-echelon form: leading coefficient 1, pivot columns cleared in every other row.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Rref {
    pub fn empty(ncols: usize) -> Self {
        Rref { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    /// Accepts rows that are already in reduced echelon form, sorted by
    /// pivot; `None` if they are not.
    pub fn from_reduced(rows: Vec<SparseVec>, ncols: usize) -> Option<Self> {
        let mut pivot_row = vec![None; ncols];
        let mut last = None;
        for (i, r) in rows.iter().enumerate() {
            let (c, lead) = r.leading()?;
            if c >= ncols || !lead.is_one() || last.is_some_and(|l| l >= c) {
                return None;
            }
            last = Some(c);
            pivot_row[c] = Some(i);
        }
        for r in &rows {
            if r.entries().last().is_some_and(|(c, _)| *c >= ncols) {
                return None;
            }
            if r.entries()[1..].iter().any(|(c, _)| pivot_row[*c].is_some()) {
                return None;
            }
        }
        Some(Rref { ncols, rows, pivot_row })
    }

    pub fn new(rows: Vec<SparseVec>, ncols: usize, ctx: &Arc<FieldCtx>, mode: Elimination) -> Self {
        let mode = match mode {
            Elimination::Auto => {
                let nnz: usize = rows.iter().map(SparseVec::nnz).sum();
                let fill = nnz as f64 / ((rows.len().max(1) * ncols.max(1)) as f64);
                if fill > DENSE_FILL_THRESHOLD && ncols <= DENSE_MAX_COLS && rows.len() > 1 {
                    Elimination::Dense
                } else {
                    Elimination::Sparse
                }
            }
            m => m,
        };
        match mode {
            Elimination::Dense => Self::dense(rows, ncols, ctx),
            _ => Self::sparse(rows, ncols),
        }
    }

    fn sparse(input: Vec<SparseVec>, ncols: usize) -> Self {
        let mut out = Rref::empty(ncols);
        for row in input {
            let r = out.reduce_from(row, 0);
            if let Some((lead, c)) = r.leading() {
                let r = r.scale(&c.inv().expect("nonzero leading coefficient"));
                out.pivot_row[lead] = Some(out.rows.len());
                out.rows.push(r);
            }
        }
        // back substitution, largest pivot first
        let mut order: Vec<usize> = (0..out.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(out.rows[i].leading().unwrap().0));
        for i in order {
            let row = std::mem::take(&mut out.rows[i]);
            out.rows[i] = out.reduce_from(row, 1);
        }
        out.sort_rows();
        out
    }

    fn dense(input: Vec<SparseVec>, ncols: usize, ctx: &Arc<FieldCtx>) -> Self {
        let mut m: Vec<Vec<CycNum>> = input.iter().map(|r| r.to_dense(ncols, ctx)).collect();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            for c in col..ncols {
                m[rank][c] = &m[rank][c] * &inv;
            }
            for r in 0..m.len() {
                if r == rank || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in col..ncols {
                    if !m[rank][c].is_zero() {
                        m[r][c] = &m[r][c] - &(&f * &m[rank][c]);
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        m.truncate(rank);
        let mut out = Rref::empty(ncols);
        for row in m {
            let v = SparseVec::from_dense(row);
            out.pivot_row[v.leading().unwrap().0] = Some(out.rows.len());
            out.rows.push(v);
        }
        out
    }

    fn sort_rows(&mut self) {
        self.rows.sort_by_key(|r| r.leading().unwrap().0);
        self.pivot_row.iter_mut().for_each(|p| *p = None);
        for (i, r) in self.rows.iter().enumerate() {
            self.pivot_row[r.leading().unwrap().0] = Some(i);
        }
    }

    /// Eliminates pivot columns of `v` at positions `>= start`.
    fn reduce_from(&self, mut v: SparseVec, start: usize) -> SparseVec {
        let mut pos = start;
        while pos < v.entries.len() {
            let (col, ref coef) = v.entries[pos];
            match self.pivot_row[col] {
                Some(r) => {
                    let f = -coef;
                    v = v.axpy(&f, &self.rows[r]);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Remainder of `v` modulo the row space; supported on non-pivot columns.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_from(v, 0)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    pub fn free_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none())
    }

    /// Basis of the null space `{x : sum_c x_c * column_c = 0}` of the matrix
    /// whose rows are this echelon form.
    pub fn null_space(&self, ctx: &Arc<FieldCtx>) -> Vec<SparseVec> {
        self.free_columns()
            .map(|f| {
                let mut entries = vec![(f, CycNum::one(ctx))];
                for row in &self.rows {
                    if let Some(c) = row.get(f) {
                        entries.push((row.leading().unwrap().0, -c));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect()
    }
}

pub fn rank(vectors: &[SparseVec], ncols: usize, ctx: &Arc<FieldCtx>) -> usize {
    Rref::new(vectors.to_vec(), ncols, ctx, Elimination::Auto).rank()
}

/// Basis of `{a : sum_j a_j * columns[j] = 0}`, vectors indexed by column position.
pub fn kernel(columns: &[SparseVec], nrows: usize, ctx: &Arc<FieldCtx>) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.entries() {
            rows[*i].push((j, c.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).map(SparseVec::from_entries).collect();
    Rref::new(rows, columns.len(), ctx, Elimination::Auto).null_space(ctx)
}

/// Linear combination `sum_j coeffs_j * vectors[j]`.
pub fn combine(coeffs: &SparseVec, vectors: &[SparseVec]) -> SparseVec {
    let mut acc = SparseVec::new();
    for (j, c) in coeffs.entries() {
        acc = acc.axpy(c, &vectors[*j]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k() -> Arc<FieldCtx> {
        FieldCtx::new(3).unwrap()
    }

    fn v(ctx: &Arc<FieldCtx>, xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(xs.iter().map(|&x| CycNum::from_int(ctx, x)).collect())
    }

    #[test]
    fn simple_rank_and_null_space() {
        let c = k();
        let rows = vec![v(&c, &[1, 2, 3]), v(&c, &[2, 4, 6]), v(&c, &[0, 1, 1])];
        let r = Rref::new(rows, 3, &c, Elimination::Sparse);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.rows()[0], v(&c, &[1, 0, 1]));
        assert_eq!(r.rows()[1], v(&c, &[0, 1, 1]));
        let ns = r.null_space(&c);
        assert_eq!(ns, vec![v(&c, &[-1, -1, 1])]);
    }

    #[test]
    fn kernel_of_columns() {
        let c = k();
        let cols = vec![v(&c, &[1, 0]), v(&c, &[0, 1]), v(&c, &[1, 1])];
        let ker = kernel(&cols, 2, &c);
        assert_eq!(ker.len(), 1);
        assert!(combine(&ker[0], &cols).is_zero());
    }

    #[test]
    fn omega_entries() {
        let c = k();
        let w = CycNum::root_of_unity(&c, 1);
        let one = CycNum::one(&c);
        // rows (1, w) and (w^2, 1) are proportional since w^3 = 1
        let r1 = SparseVec::from_dense(vec![one.clone(), w.clone()]);
        let r2 = SparseVec::from_dense(vec![&w * &w, one]);
        assert_eq!(rank(&[r1, r2], 2, &c), 1);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..8).prop_flat_map(|(r, cols)| {
            proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], cols), r)
        })
    }

    proptest! {
        #[test]
        fn sparse_and_dense_agree(m in arb_matrix()) {
            let c = k();
            let ncols = m[0].len();
            let rows: Vec<SparseVec> = m.iter().map(|r| v(&c, r)).collect();
            let a = Rref::new(rows.clone(), ncols, &c, Elimination::Sparse);
            let b = Rref::new(rows.clone(), ncols, &c, Elimination::Dense);
            prop_assert_eq!(a.rows(), b.rows());
            for row in &rows {
                prop_assert!(a.contains(row));
            }
            for x in a.null_space(&c) {
                for row in &rows {
                    let dot = row.entries().iter().fold(CycNum::zero(&c), |acc, (i, y)| {
                        &acc + &(y * x.get(*i).cloned().as_ref().unwrap_or(&CycNum::zero(&c)))
                    });
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
