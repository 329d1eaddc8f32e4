//! Rational generating functions fitted to integer sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `P(t) / Q(t)` with integer coefficients, lowest degree first, `Q(0) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalSeries {
    /// First `len` power-series coefficients.
    pub fn expand(&self, len: usize) -> Vec<BigRational> {
        let q0 = BigRational::from_integer(self.denominator[0].clone());
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = BigRational::from_integer(self.numerator.get(k).cloned().unwrap_or_default());
            for j in 1..self.denominator.len().min(k + 1) {
                acc -= BigRational::from_integer(self.denominator[j].clone()) * &out[k - j];
            }
            out.push(acc / &q0);
        }
        out
    }
}

fn poly_text(c: &[BigInt]) -> String {
    let mut s = String::new();
    for (k, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if s.is_empty() {
            if a.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if a.is_negative() { " - " } else { " + " });
        }
        match k {
            0 => s.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                }
                s.push('t');
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl std::fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", poly_text(&self.numerator), poly_text(&self.denominator))
    }
}

/// Solves `m x = rhs` exactly; `None` if inconsistent.
fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>, unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..unknowns {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
                let v = &rhs[r] * &f;
                rhs[i] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

fn integerize(num: Vec<BigRational>, den: Vec<BigRational>) -> RationalSeries {
    let lcm = num.iter().chain(&den).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_int = |v: Vec<BigRational>| -> Vec<BigInt> { v.into_iter().map(|c| (c * &lcm).to_integer()).collect() };
    let (mut numerator, mut denominator) = (to_int(num), to_int(den));
    let g = numerator.iter().chain(&denominator).fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in numerator.iter_mut().chain(denominator.iter_mut()) {
        *c /= &g;
    }
    while numerator.len() > 1 && numerator.last().is_some_and(Zero::is_zero) {
        numerator.pop();
    }
    while denominator.len() > 1 && denominator.last().is_some_and(Zero::is_zero) {
        denominator.pop();
    }
    RationalSeries { numerator, denominator }
}

/// Smallest `deg P + deg Q` rational function reproducing every coefficient,
/// with at least one equation to spare so the fit is a genuine prediction.
/// Needs six or more coefficients.
pub fn guess_rational_series(coeffs: &[i64]) -> Option<RationalSeries> {
    let n = coeffs.len();
    if n < 6 {
        return None;
    }
    let h: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    for s in 0..n {
        for q in 0..=s {
            let p = s - q;
            // equations: [t^k] Q H = 0 for p < k < n
            if n <= p + 1 || n - p - 1 < q + 1 {
                continue;
            }
            let mut m = Vec::new();
            let mut rhs = Vec::new();
            for k in p + 1..n {
                m.push((1..=q).map(|j| if j <= k { h[k - j].clone() } else { BigRational::zero() }).collect());
                rhs.push(-h[k].clone());
            }
            let Some(x) = solve(m, rhs, q) else { continue };
            let mut den = vec![BigRational::one()];
            den.extend(x);
            let num: Vec<BigRational> = (0..=p)
                .map(|k| (0..=q.min(k)).map(|j| &den[j] * &h[k - j]).fold(BigRational::zero(), |a, b| a + b))
                .collect();
            let series = integerize(num, den);
            let check = series.expand(n);
            if check == h {
                return Some(series);
            }
        }
    }
    None
}
