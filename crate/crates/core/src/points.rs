//! Point sequences on the coordinate triangle `XYZ = 0` and the shift map.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("{0} is not on the coordinate triangle")]
    OffTriangle(String),
    #[error("the zero point is not projective")]
    ZeroPoint,
    #[error("t must be nonzero")]
    ZeroParameter,
    #[error("illegal state: {0}")]
    Illegal(String),
    #[error(transparent)]
    Field(#[from] CycError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [CycNum; 3],
}

impl ProjPoint {
    pub fn new(coords: [CycNum; 3]) -> Result<ProjPoint, PointError> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(PointError::ZeroPoint)?.inv()?;
        Ok(ProjPoint { coords: coords.map(|c| &c * &lead) })
    }

    pub fn from_ints(ctx: &Arc<FieldCtx>, c: [i64; 3]) -> Result<ProjPoint, PointError> {
        Self::new(c.map(|v| CycNum::from_int(ctx, v)))
    }

    /// Intersection point `q_k`, the vertex off the line `X_k = 0`.
    pub fn vertex(ctx: &Arc<FieldCtx>, k: usize) -> ProjPoint {
        let mut c = [0, 0, 0];
        c[k] = 1;
        Self::from_ints(ctx, c).expect("nonzero")
    }

    pub fn coords(&self) -> &[CycNum; 3] {
        &self.coords
    }

    /// `lines()[k]` is true when the point lies on `X_k = 0`.
    pub fn lines(&self) -> [bool; 3] {
        [0, 1, 2].map(|k| self.coords[k].is_zero())
    }

    pub fn on_triangle(&self) -> bool {
        self.lines().iter().any(|&b| b)
    }

    /// `Some(k)` when the point is `q_k`.
    pub fn vertex_index(&self) -> Option<usize> {
        let zeros = self.lines();
        (zeros.iter().filter(|&&b| b).count() == 2).then(|| zeros.iter().position(|&b| !b).expect("one nonzero"))
    }

    /// `Some(k)` when the point lies on `X_k = 0` and is not a vertex.
    pub fn generic_line(&self) -> Option<usize> {
        let zeros = self.lines();
        (zeros.iter().filter(|&&b| b).count() == 1).then(|| zeros.iter().position(|&b| b).expect("one zero"))
    }

    /// `(a, b, c) -> (c, a, b)`, the action of `e1` on points.
    pub fn rotate(&self) -> ProjPoint {
        let [a, b, c] = self.coords.clone();
        ProjPoint::new([c, a, b]).expect("nonzero")
    }

    fn require_triangle(&self) -> Result<(), PointError> {
        if self.on_triangle() {
            Ok(())
        } else {
            Err(PointError::OffTriangle(self.to_string()))
        }
    }

    /// Multiplies coordinate `k` by `s`.
    fn scaled(&self, k: usize, s: &CycNum) -> ProjPoint {
        let mut c = self.coords.clone();
        c[k] = &c[k] * s;
        ProjPoint::new(c).expect("nonzero")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleState {
    pub prev: Option<ProjPoint>,
    pub cur: ProjPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Next {
    Point(ProjPoint),
    /// Any point of the line `X_line = 0` may follow.
    FreeChoice { line: usize },
}

fn check_t(t: Option<&CycNum>) -> Result<(), PointError> {
    if t.is_some_and(CycNum::is_zero) {
        return Err(PointError::ZeroParameter);
    }
    Ok(())
}

/// Successor of `state.cur`. With `t = None` the unconstrained rule applies:
/// after a vertex any point of the opposite line may follow.
pub fn next_point(state: &TriangleState, t: Option<&CycNum>) -> Result<Next, PointError> {
    check_t(t)?;
    let cur = &state.cur;
    cur.require_triangle()?;
    if let Some(p) = &state.prev {
        p.require_triangle()?;
        if p == cur {
            return Err(PointError::Illegal("repeated point".into()));
        }
    }
    let ctx = cur.coords[0].ctx();
    if let Some(k) = cur.generic_line() {
        if let Some(prev) = &state.prev {
            if let Some(j) = prev.generic_line() {
                return Err(PointError::Illegal(format!("two generic points in a row on lines {j} and {k}")));
            }
        }
        return Ok(Next::Point(ProjPoint::vertex(ctx, k)));
    }
    let k = cur.vertex_index().expect("vertex");
    let Some(t) = t else { return Ok(Next::FreeChoice { line: k }) };
    match &state.prev {
        None => Ok(Next::FreeChoice { line: k }),
        Some(prev) => match prev.generic_line() {
            Some(j) if j == k => Ok(Next::Point(prev.scaled((k + 2) % 3, &-t))),
            Some(j) => Err(PointError::Illegal(format!("a point on line {j} is followed by q{j}, not q{k}"))),
            None => Ok(Next::Point(prev.clone())),
        },
    }
}

/// Two steps of the shift: on `X_k = 0` coordinate `k + 2` is scaled by `-t`.
pub fn phi_squared(p: &ProjPoint, t: &CycNum) -> Result<ProjPoint, PointError> {
    check_t(Some(t))?;
    p.require_triangle()?;
    Ok(match p.generic_line() {
        Some(k) => p.scaled((k + 2) % 3, &-t),
        None => p.clone(),
    })
}

fn sample_points(ctx: &Arc<FieldCtx>) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for k in 0..3 {
        for (u, v) in [(1, 1), (1, 2), (2, -3)] {
            let mut c = [0; 3];
            c[(k + 1) % 3] = u;
            c[(k + 2) % 3] = v;
            out.push(ProjPoint::from_ints(ctx, c).expect("nonzero"));
        }
    }
    out
}

/// Least `k <= bound` with `(phi^2)^k = id` on three sample points per line.
pub fn phi_order(t: &CycNum, bound: usize) -> Result<Option<usize>, PointError> {
    check_t(Some(t))?;
    let start = sample_points(t.ctx());
    let mut cur = start.clone();
    for k in 1..=bound {
        cur = cur.iter().map(|p| phi_squared(p, t)).collect::<Result<_, _>>()?;
        if cur == start {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `p_0, p_1, ...` starting from `(prev, cur)`; stops at a free choice.
pub fn orbit(state: &TriangleState, t: Option<&CycNum>, steps: usize) -> Result<Vec<ProjPoint>, PointError> {
    let mut out: Vec<ProjPoint> = state.prev.iter().cloned().collect();
    out.push(state.cur.clone());
    let mut s = state.clone();
    for _ in 0..steps {
        match next_point(&s, t)? {
            Next::Point(p) => {
                out.push(p.clone());
                s = TriangleState { prev: Some(s.cur), cur: p };
            }
            Next::FreeChoice { .. } => break,
        }
    }
    Ok(out)
}
