//! Exact coefficient arithmetic: rationals, Gaussian rationals, and the
//! small ring/field traits the linear algebra is generic over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rat = BigRational;

/// Commutative ring with exact division test. Everything the
/// division-free algorithms (Berkowitz, Bareiss) need.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Exact division: `Some(q)` with `self == q * d`, `None` if no such
    /// element exists (or `d` is zero).
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

/// Ring whose invertible elements can serve as elimination pivots.
/// `Dual` and `SymScalar` are not literal fields but expose enough of one.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on non-units.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
    /// Usable as an elimination pivot.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    /// Complex conjugation where meaningful, identity otherwise.
    fn conj(&self) -> Self {
        self.clone()
    }
    /// Pivot-selection cost; elimination prefers low-complexity pivots.
    fn complexity(&self) -> usize {
        0
    }
}

pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Ring for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        rat_int(v)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if <BigRational as Zero>::is_zero(d) {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!<BigRational as Zero>::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Gaussian rational a + b·i with both components exact rationals.
/// Plain rationals embed as b = 0; the `field` tag on serialized data
/// decides whether a nonzero imaginary part is legal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }
    pub fn from_rat(re: Rat) -> Self {
        GRat {
            re,
            im: Ring::zero(),
        }
    }
    pub fn int(v: i64) -> Self {
        GRat::from_rat(rat_int(v))
    }
    pub fn frac(num: i64, den: i64) -> Self {
        GRat::from_rat(rat(num, den))
    }
    pub fn i() -> Self {
        GRat {
            re: Ring::zero(),
            im: Ring::one(),
        }
    }
    pub fn is_rational(&self) -> bool {
        Ring::is_zero(&self.im)
    }
    /// |z|² = z·conj(z), always a plain rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    /// Total order on Q(i) by (re, im); used for canonical sorting only,
    /// it is not compatible with the field structure.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Add for GRat {
    type Output = GRat;
    fn add(self, rhs: GRat) -> GRat {
        GRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GRat {
    type Output = GRat;
    fn sub(self, rhs: GRat) -> GRat {
        GRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GRat {
    type Output = GRat;
    fn mul(self, rhs: GRat) -> GRat {
        GRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Ring for GRat {
    fn zero() -> Self {
        GRat {
            re: Ring::zero(),
            im: Ring::zero(),
        }
    }
    fn one() -> Self {
        GRat {
            re: Ring::one(),
            im: Ring::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.re) && Ring::is_zero(&self.im)
    }
    fn from_i64(v: i64) -> Self {
        GRat::int(v)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Ring::is_zero(d) {
            None
        } else {
            Some(self.clone() * Field::inv(d))
        }
    }
}

impl Field for GRat {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!<Rat as Zero>::is_zero(&n), "inverse of zero");
        GRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
    fn conj(&self) -> Self {
        GRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GRat {
    /// "a/b" for rationals, "a/b+c/d*i" otherwise. Round-trips through
    /// `parse_scalar`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = fmt_rat(&self.im.abs());
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if Ring::is_zero(&self.re) {
            if self.im.is_negative() {
                write!(f, "-{}*i", im_abs)
            } else {
                write!(f, "{}*i", im_abs)
            }
        } else {
            write!(f, "{}{}{}*i", fmt_rat(&self.re), sign, im_abs)
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ScalarParseError {
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
    #[error("imaginary part not allowed over Q: {0:?}")]
    NotRational(String),
}

/// Parse "a/b", "a/b+c/d*i", "i", "-i", "3*i", "1-i", etc.
pub fn parse_scalar(text: &str) -> Result<GRat, ScalarParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ScalarParseError::Malformed(text.to_string()));
    }
    // split into signed terms at top-level + and -
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 && !matches!(s.as_bytes()[k - 1], b'+' | b'-' | b'/')
        {
            terms.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut re: Rat = Ring::zero();
    let mut im: Rat = Ring::zero();
    for t in &terms {
        let (imag, body) = if let Some(stripped) = t.strip_suffix("*i") {
            (true, stripped.to_string())
        } else if t.ends_with('i') {
            let head = &t[..t.len() - 1];
            let coeff = match head {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                _ => head.to_string(),
            };
            (true, coeff)
        } else {
            (false, t.clone())
        };
        let val = Rat::from_str(body.trim_start_matches('+'))
            .map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
        if imag {
            im += val;
        } else {
            re += val;
        }
    }
    Ok(GRat { re, im })
}
