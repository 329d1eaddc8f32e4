//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)` with
//! rational coordinates and every product is reduced modulo the `m`-th
//! cyclotomic polynomial, so the ring is a field for every `m`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Normalized rational number (`num_rational` keeps gcd 1 and a positive denominator).
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("field context mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ContextMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("root-of-unity order must be positive")]
    InvalidOrder,
    #[error("Q(zeta_{m}) contains no primitive {k}-th root of unity")]
    MissingRoot { m: u32, k: u32 },
    #[error("cannot parse coefficient `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Field context for `Q(zeta_m)`.
#[derive(Debug)]
pub struct FieldCtx {
    m: u32,
    /// Coefficients of the cyclotomic polynomial, lowest degree first (monic).
    phi: Vec<BigInt>,
    /// `zeta^k` reduced to the power basis for `0 <= k < m`.
    powers: Vec<Vec<Rat>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(m: u32) -> Result<Arc<Self>, CycError> {
        if m == 0 {
            return Err(CycError::InvalidOrder);
        }
        let phi = cyclotomic_poly(m);
        let degree = phi.len() - 1;
        let phi_rat: Vec<Rat> = phi.iter().cloned().map(Rat::from_integer).collect();
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![Rat::zero(); degree];
        cur[0] = Rat::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow coefficient with x^degree = -sum phi_i x^i
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rat::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi_rat[i];
                }
            }
        }
        Ok(Arc::new(FieldCtx { m, phi, powers }))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree of the field over `Q`, i.e. Euler's totient of `m`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi_coeffs(&self) -> &[BigInt] {
        &self.phi
    }

    /// Fails unless `k` divides `m`.
    pub fn require_root(&self, k: u32) -> Result<(), CycError> {
        if k == 0 || !self.m.is_multiple_of(k) {
            return Err(CycError::MissingRoot { m: self.m, k });
        }
        Ok(())
    }
}

/// Coefficients (low first) of the `m`-th cyclotomic polynomial.
fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<FieldCtx>,
    coords: Vec<Rat>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coords == other.coords
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.m.hash(state);
        self.coords.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[m={}]({})", self.ctx.m, self)
    }
}

impl CycNum {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        CycNum { ctx: Arc::clone(ctx), coords: vec![Rat::zero(); ctx.degree()] }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_rat(ctx, Rat::one())
    }

    pub fn from_rat(ctx: &Arc<FieldCtx>, r: Rat) -> Self {
        let mut z = Self::zero(ctx);
        z.coords[0] = r;
        z
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        Self::from_rat(ctx, Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_coords(ctx: &Arc<FieldCtx>, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), ctx.degree(), "coordinate vector has wrong length");
        CycNum { ctx: Arc::clone(ctx), coords }
    }

    /// `zeta_m^k`, exponent taken modulo `m`.
    pub fn root_of_unity(ctx: &Arc<FieldCtx>, k: i64) -> Self {
        let e = k.rem_euclid(ctx.m as i64) as usize;
        CycNum { ctx: Arc::clone(ctx), coords: ctx.powers[e].clone() }
    }

    /// Primitive cube root of unity `omega = zeta_m^(m/3)`; needs `3 | m`.
    pub fn omega(ctx: &Arc<FieldCtx>) -> Result<Self, CycError> {
        ctx.require_root(3)?;
        Ok(Self::root_of_unity(ctx, (ctx.m / 3) as i64))
    }

    /// `omega^k` for a cube root of unity.
    pub fn omega_pow(ctx: &Arc<FieldCtx>, k: i64) -> Result<Self, CycError> {
        ctx.require_root(3)?;
        Ok(Self::root_of_unity(ctx, k.rem_euclid(3) * (ctx.m / 3) as i64))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Integer value if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rat().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn check_ctx(&self, other: &Self) -> Result<(), CycError> {
        if self.ctx.m != other.ctx.m {
            return Err(CycError::ContextMismatch(self.ctx.m, other.ctx.m));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_ctx(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(CycNum { ctx: Arc::clone(&self.ctx), coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_ctx(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(CycNum { ctx: Arc::clone(&self.ctx), coords })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check_ctx(other)?;
        let d = self.ctx.degree();
        if d == 1 {
            return Ok(CycNum {
                ctx: Arc::clone(&self.ctx),
                coords: vec![&self.coords[0] * &other.coords[0]],
            });
        }
        if let Some(r) = other.as_rat() {
            return Ok(self.scale(r));
        }
        if let Some(r) = self.as_rat() {
            return Ok(other.scale(r));
        }
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rat> = prod[..d].to_vec();
        let m = self.ctx.m as usize;
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (t, p) in self.ctx.powers[k % m].iter().enumerate() {
                if !p.is_zero() {
                    coords[t] += c * p;
                }
            }
        }
        Ok(CycNum { ctx: Arc::clone(&self.ctx), coords })
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum { ctx: Arc::clone(&self.ctx), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Phi_m`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Self::from_rat(&self.ctx, r.recip()));
        }
        let phi: Vec<Rat> = self.ctx.phi.iter().cloned().map(Rat::from_integer).collect();
        // invariant: s * self == r (mod phi)
        let (mut r0, mut r1) = (phi, trim(self.coords.clone()));
        let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since self is coprime to the irreducible phi
        let c = r1[0].recip();
        let mut coords = vec![Rat::zero(); self.ctx.degree()];
        for (i, v) in s1.iter().enumerate() {
            coords[i] = v * &c;
        }
        Ok(CycNum { ctx: Arc::clone(&self.ctx), coords })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = Self::root_of_unity(&self.ctx, -(k as i64)).scale(c);
            acc = &acc + &img;
        }
        acc
    }

    /// Parses the coefficient grammar: signed sums of `R` or `R*w^K`, `R` an
    /// integer or `int/int`, `w` standing for `zeta_m`.
    pub fn parse(ctx: &Arc<FieldCtx>, s: &str) -> Result<Self, CycError> {
        let err = |reason: &str| CycError::Parse { input: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty coefficient"));
        }
        let mut acc = Self::zero(ctx);
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut terms = Vec::new();
        while i <= bytes.len() {
            let at_split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
            if at_split {
                terms.push(&compact[start..i]);
                start = i;
            }
            i += 1;
        }
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef_str, power) = match body.find('w') {
                None => (body, 0i64),
                Some(pos) => {
                    let head = &body[..pos];
                    let tail = &body[pos + 1..];
                    let coef = match head {
                        "" => "1",
                        h if h.ends_with('*') && h.len() > 1 => &h[..h.len() - 1],
                        _ => return Err(err("expected `*` before `w`")),
                    };
                    let power = match tail {
                        "" => 1,
                        t if t.starts_with('^') => t[1..].parse::<i64>().map_err(|_| err("bad exponent"))?,
                        _ => return Err(err("unexpected text after `w`")),
                    };
                    (coef, power)
                }
            };
            let mut r = parse_rat(coef_str).ok_or_else(|| err("bad rational"))?;
            if neg {
                r = -r;
            }
            acc = &acc + &Self::root_of_unity(ctx, power).scale(&r);
        }
        Ok(acc)
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || d.is_empty() || d.starts_with(['-', '+']) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

fn fmt_rat_abs(r: &Rat) -> String {
    let a = r.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for CycNum {
    /// Canonical form: descending powers, `R*w^K` for `K >= 1`, `" + "`/`" - "` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            f.write_str(&fmt_rat_abs(c))?;
            if k > 0 {
                write!(f, "*w^{k}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.checked_add(rhs).expect("cyclotomic addition")
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self.checked_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.checked_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { ctx: Arc::clone(&self.ctx), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

// dense univariate helpers over Q, lowest degree first

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

/// Euler's totient, used to sanity check the field degree.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// Converts an exact integer-valued element to `u64`, if it is one.
pub fn to_natural(x: &CycNum) -> Option<u64> {
    x.as_integer().and_then(|n| n.to_u64())
}
