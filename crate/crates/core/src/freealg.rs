//! Words and homogeneous noncommutative polynomials over a fixed generator set.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeAlgError {
    #[error("letter {letter} out of range for {n} generators")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("inhomogeneous polynomial: degree {expected} expected, word of length {found}")]
    Inhomogeneous { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(char),
    #[error("generator names must be single characters in text form, got `{0}`")]
    NonCharGenerator(String),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Field(#[from] CycError),
}

/// A word in the generators, stored as letter indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u8])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Base-`n` encoding of a word among the words of its length.
    pub fn slice_index(&self, n: usize) -> Result<u64, FreeAlgError> {
        let mut idx = 0u64;
        for l in self.letters() {
            if l >= n {
                return Err(FreeAlgError::LetterOutOfRange { letter: l, n });
            }
            idx = idx * n as u64 + l as u64;
        }
        Ok(idx)
    }

    /// Inverse of [`Word::slice_index`] for words of length `d`.
    pub fn from_slice_index(mut idx: u64, d: usize, n: usize) -> Word {
        let mut v = vec![0u8; d];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n as u64) as u8;
            idx /= n as u64;
        }
        Word(v)
    }

    /// All `n^d` words of length `d`, in slice-index order.
    pub fn all(n: usize, d: usize) -> impl Iterator<Item = Word> {
        let total = (n as u64).pow(d as u32);
        (0..total).map(move |i| Word::from_slice_index(i, d, n))
    }

    pub fn to_text(&self, gens: &[String]) -> String {
        self.letters().map(|l| gens[l].as_str()).collect()
    }

    pub fn parse(text: &str, gens: &[String]) -> Result<Word, FreeAlgError> {
        let table = char_table(gens)?;
        let mut v = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let idx = table.iter().position(|&c| c == ch).ok_or(FreeAlgError::UnknownGenerator(ch))?;
            v.push(idx as u8);
        }
        Ok(Word(v))
    }
}

fn char_table(gens: &[String]) -> Result<Vec<char>, FreeAlgError> {
    gens.iter()
        .map(|g| {
            let mut it = g.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(FreeAlgError::NonCharGenerator(g.clone())),
            }
        })
        .collect()
}

/// Homogeneous element of the free algebra: a finite map from words of one
/// length to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly {
    ctx: Arc<FieldCtx>,
    degree: usize,
    terms: BTreeMap<Word, CycNum>,
}

impl NcPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, degree: usize) -> Self {
        NcPoly { ctx: Arc::clone(ctx), degree, terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, word: Word, coeff: CycNum) -> Self {
        let mut p = Self::zero(ctx, word.len());
        if !coeff.is_zero() {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn word(ctx: &Arc<FieldCtx>, word: Word) -> Self {
        Self::monomial(ctx, word, CycNum::one(ctx))
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::word(ctx, Word::empty())
    }

    /// Sums the given terms; every word must have length `degree`.
    pub fn from_terms<I>(ctx: &Arc<FieldCtx>, degree: usize, terms: I) -> Result<Self, FreeAlgError>
    where
        I: IntoIterator<Item = (Word, CycNum)>,
    {
        let mut p = Self::zero(ctx, degree);
        for (w, c) in terms {
            if w.len() != degree {
                return Err(FreeAlgError::Inhomogeneous { expected: degree, found: w.len() });
            }
            if c.ctx().m() != ctx.m() {
                return Err(CycError::ContextMismatch(ctx.m(), c.ctx().m()).into());
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    /// Homogeneous polynomial from `(word text, integer coefficient)` pairs; a
    /// convenience for tests and presets.
    pub fn from_int_terms(ctx: &Arc<FieldCtx>, gens: &[String], terms: &[(&str, i64)]) -> Result<Self, FreeAlgError> {
        let degree = terms.first().map_or(0, |(w, _)| w.chars().count());
        let parsed = terms
            .iter()
            .map(|(w, c)| Ok((Word::parse(w, gens)?, CycNum::from_int(ctx, *c))))
            .collect::<Result<Vec<_>, FreeAlgError>>()?;
        Self::from_terms(ctx, degree, parsed)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycNum> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(|| CycNum::zero(&self.ctx))
    }

    /// Adds `c * w`; `w` must have the polynomial's degree.
    pub fn add_term(&mut self, w: Word, c: &CycNum) {
        debug_assert_eq!(w.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &NcPoly) -> Result<(), FreeAlgError> {
        if self.ctx.m() != other.ctx.m() {
            return Err(CycError::ContextMismatch(self.ctx.m(), other.ctx.m()).into());
        }
        Ok(())
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(FreeAlgError::Inhomogeneous { expected: self.degree, found: other.degree });
        }
        let mut out = if self.is_zero() { Self::zero(&self.ctx, other.degree) } else { self.clone() };
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.add(&other.scale(&CycNum::from_int(&self.ctx, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> NcPoly {
        let mut out = Self::zero(&self.ctx, self.degree);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.terms.insert(w.clone(), v * c);
        }
        out
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ctx, self.degree + other.degree);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<NcPoly, FreeAlgError> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Cyclic derivative with respect to generator `g`: every occurrence
    /// `u g v` of `g` in a word contributes `v u`.
    pub fn cyclic_derivative(&self, g: usize) -> NcPoly {
        let mut out = Self::zero(&self.ctx, self.degree.saturating_sub(1));
        for (w, c) in &self.terms {
            for (pos, l) in w.letters().enumerate() {
                if l == g {
                    let mut v = w.0[pos + 1..].to_vec();
                    v.extend_from_slice(&w.0[..pos]);
                    out.add_term(Word(v), c);
                }
            }
        }
        out
    }

    /// Rotates every word one letter to the left (`a w -> w a`).
    pub fn cyclic_shift(&self) -> NcPoly {
        let mut out = Self::zero(&self.ctx, self.degree);
        for (w, c) in &self.terms {
            let mut v = w.0.clone();
            if !v.is_empty() {
                v.rotate_left(1);
            }
            out.add_term(Word(v), c);
        }
        out
    }

    /// Text form `coeff*word` joined by `+`/`-`; non-rational coefficients are
    /// parenthesized.
    pub fn to_text(&self, gens: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let wt = w.to_text(gens);
            let (neg, body) = match c.as_rat() {
                Some(r) => {
                    let a = r.abs();
                    let rs = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
                    (r.is_negative(), rs)
                }
                None => (false, format!("({c})")),
            };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&body);
            if !wt.is_empty() {
                let _ = write!(s, "*{wt}");
            }
        }
        s
    }

    pub fn parse(ctx: &Arc<FieldCtx>, gens: &[String], text: &str) -> Result<NcPoly, FreeAlgError> {
        let err = |reason: &str| FreeAlgError::Parse { input: text.to_string(), reason: reason.to_string() };
        let table = char_table(gens)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        if compact == "0" {
            return Err(err("the zero polynomial has no degree; give it explicitly"));
        }
        // split at top-level signs
        let mut terms = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        let chars: Vec<char> = compact.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && chars[i - 1] != '^' => {
                    terms.push(chars[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(chars[start..].iter().collect::<String>());
        let mut parsed = Vec::new();
        for term in terms {
            let (neg, body) = match term.chars().next() {
                Some('-') => (true, term[1..].to_string()),
                Some('+') => (false, term[1..].to_string()),
                _ => (false, term.clone()),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, word_text) = if let Some(rest) = body.strip_prefix('(') {
                let close = rest.rfind(')').ok_or_else(|| err("unbalanced parenthesis"))?;
                let coef = CycNum::parse(ctx, &rest[..close])?;
                let tail = &rest[close + 1..];
                let word = match tail.strip_prefix('*') {
                    Some(w) => w,
                    None if tail.is_empty() => "",
                    None => return Err(err("expected `*` after coefficient")),
                };
                (coef, word.to_string())
            } else if let Some((c, w)) = body.rsplit_once('*') {
                (CycNum::parse(ctx, c)?, w.to_string())
            } else if body.chars().all(|ch| table.contains(&ch)) {
                (CycNum::one(ctx), body.clone())
            } else {
                (CycNum::parse(ctx, &body)?, String::new())
            };
            let coef = if neg { -coef } else { coef };
            parsed.push((Word::parse(&word_text, gens)?, coef));
        }
        let degree = parsed[0].0.len();
        Self::from_terms(ctx, degree, parsed)
    }
}

/// Default generator names `x, y, z` (or `x0, x1, ...` beyond three).
pub fn default_gens(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

impl NcPoly {
    /// `Some(r)` with `self == r * other` when the two are proportional.
    pub fn ratio_to(&self, other: &NcPoly) -> Option<CycNum> {
        let (w, c) = other.terms.iter().next()?;
        let a = self.terms.get(w)?;
        let ratio = a.checked_div(c).ok()?;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}
