//! Arbitrary-precision ball arithmetic: dyadic floats with rigorous
//! midpoint-radius error tracking, real and complex.
//!
//! Midpoints are exact dyadic numbers (BigInt mantissa times a power of
//! two) rounded to the working precision; every rounding contributes one
//! ulp to the radius, and radii are propagated with outward rounding. The
//! true value of any computation lies inside every computed ball as long
//! as the inputs did.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ring::Ring;

/// Radii are kept short: rounded up to this many mantissa bits.
const RAD_BITS: u64 = 32;

#[derive(Debug, Error)]
pub enum BallError {
    #[error("denominator ball contains zero")]
    DivisionByZeroBall,
    #[error("Im(tau) must be strictly positive")]
    DomainError,
    #[error("precision unattainable: series needs more than {cap} terms")]
    PrecisionError { cap: usize },
}

/// Exact dyadic number: `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Float {
    mant: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Self {
        Float {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn pow2(exp: i64) -> Self {
        Float {
            mant: BigInt::one(),
            exp,
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Float {
            mant: v.clone(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Float {
            mant: BigInt::from(v),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exponent bound: |value| < 2^mag (None for zero).
    pub fn mag(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 + self.exp)
        }
    }

    pub fn abs(&self) -> Self {
        Float {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Self {
        Float {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// Exact sum. The operands are aligned to the smaller exponent, so this
    /// is only used where exponent gaps are modest (they are, throughout:
    /// gaps are bounded by the working precision plus a few guard bits).
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Float { mant: a + b, exp }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        Float {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Float {
            mant: &self.mant * BigInt::from(k),
            exp: self.exp,
        }
    }

    /// Exact halving-free scaling by 2^k.
    pub fn scale2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds toward zero to at most `prec` mantissa bits; returns the
    /// rounded value and true if any bits were discarded (error < 1 ulp).
    pub fn round_trunc(&self, prec: u64) -> (Self, bool) {
        let bits = self.mant.bits();
        if bits <= prec {
            return (self.clone(), false);
        }
        let shift = bits - prec;
        let mant = &self.mant >> shift;
        let inexact = (&mant << shift) != self.mant;
        (
            Float {
                mant,
                exp: self.exp + shift as i64,
            },
            inexact,
        )
    }

    /// One ulp of the value after `round_trunc(prec)`.
    fn ulp_after(&self, prec: u64) -> Self {
        let bits = self.mant.bits();
        let exp = if bits <= prec {
            self.exp
        } else {
            self.exp + (bits - prec) as i64
        };
        Float::pow2(exp)
    }

    /// Rounds the magnitude up to at most `bits` mantissa bits (values
    /// assumed nonnegative; used for radii).
    pub fn round_up(&self, bits: u64) -> Self {
        debug_assert!(!self.is_negative());
        let n = self.mant.bits();
        if n <= bits {
            return self.clone();
        }
        let shift = n - bits;
        let t = &self.mant >> shift;
        let exact = (&t << shift) == self.mant;
        Float {
            mant: if exact { t } else { t + 1 },
            exp: self.exp + shift as i64,
        }
    }

    /// Magnitude rounded up to RAD_BITS; an upper bound of |self|.
    pub fn abs_up(&self) -> Self {
        self.abs().round_up(RAD_BITS)
    }

    /// Quotient rounded toward zero to `prec` bits; error < 1 ulp of the
    /// result. `other` must be nonzero.
    pub fn div_trunc(&self, other: &Self, prec: u64) -> Self {
        assert!(!other.is_zero(), "division by zero Float");
        if self.is_zero() {
            return Float::zero();
        }
        let na = self.mant.bits() as i64;
        let nb = other.mant.bits() as i64;
        let k = (prec as i64 + 2 + nb - na).max(0) as u64;
        let mant = (&self.mant << k) / &other.mant;
        Float {
            mant,
            exp: self.exp - other.exp - k as i64,
        }
    }

    /// Upper bound of self/other for nonnegative self, positive other.
    fn div_up(&self, other: &Self) -> Self {
        debug_assert!(!self.is_negative() && other.mant.is_positive());
        if self.is_zero() {
            return Float::zero();
        }
        let q = self.div_trunc(other, RAD_BITS);
        q.add(&Float::pow2(q.ulp_after(RAD_BITS).exp)).round_up(RAD_BITS)
    }

    /// Upper bound of sqrt(self) for nonnegative self.
    pub fn sqrt_up(&self) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Float::zero();
        }
        let r = self.round_up(96);
        let mut m = r.mant;
        let mut e = r.exp;
        if e.rem_euclid(2) == 1 {
            m <<= 1;
            e -= 1;
        }
        let s = m.sqrt();
        let s = if &s * &s >= m { s } else { s + 1 };
        Float { mant: s, exp: e / 2 }.round_up(RAD_BITS)
    }

    /// Exact comparison.
    pub fn cmp_val(&self, other: &Self) -> std::cmp::Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            std::cmp::Ordering::Equal
        } else if d.is_negative() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }

    /// Approximate value as f64 (for diagnostics only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (t, _) = self.round_trunc(53);
        let m: f64 = t.mant.to_string().parse().unwrap_or(f64::NAN);
        m * 2f64.powi(t.exp.clamp(-2000, 2000) as i32)
    }

    /// Decimal rendering with `sig` significant digits (round-to-nearest in
    /// the last digit is not guaranteed; the final digit may be off by one
    /// unit, which is irrelevant for reporting).
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let m = self.mant.abs();
        // d approx floor(log10 |v|)
        let mag = m.bits() as i64 + self.exp; // |v| < 2^mag
        let mut d = ((mag as f64 - 0.5) * std::f64::consts::LOG10_2).floor() as i64;
        let mut t: BigInt;
        loop {
            let p = sig as i64 - 1 - d;
            // t = |v| * 10^p, truncated
            let mut num = m.clone();
            let mut den = BigInt::one();
            if p >= 0 {
                num *= BigInt::from(10u32).pow(p as u32);
            } else {
                den *= BigInt::from(10u32).pow((-p) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            t = num / den;
            let ndigits = t.to_string().len() as i64;
            if ndigits == sig as i64 {
                break;
            }
            d += ndigits - sig as i64;
        }
        let digits = t.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&d.to_string());
        out
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

/// Real ball: a dyadic midpoint with a nonnegative dyadic error radius.
#[derive(Clone, Debug)]
pub struct BallReal {
    pub mid: Float,
    pub rad: Float,
}

impl BallReal {
    pub fn exact(mid: Float) -> Self {
        BallReal {
            mid,
            rad: Float::zero(),
        }
    }

    pub fn zero() -> Self {
        BallReal::exact(Float::zero())
    }

    pub fn one() -> Self {
        BallReal::exact(Float::from_i64(1))
    }

    pub fn from_i64(v: i64) -> Self {
        BallReal::exact(Float::from_i64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        BallReal::exact(Float::from_bigint(v))
    }

    /// Parses a decimal string (optional sign, optional fraction, optional
    /// `e` exponent) into a ball of width <= 1 ulp at `prec` bits.
    pub fn from_decimal_str(s: &str, prec: u64) -> Result<Self, String> {
        let s = s.trim();
        let (mant_part, exp10) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|e| e.to_string())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match mant_part.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant_part, ""),
        };
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || digits == "-" || digits == "+" {
            return Err(format!("bad decimal `{s}`"));
        }
        let value: BigInt = digits.parse().map_err(|_| format!("bad decimal `{s}`"))?;
        let p = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        if p >= 0 {
            let v = value * ten.pow(p as u32);
            return Ok(BallReal::exact(Float::from_bigint(&v)));
        }
        // value / 10^-p rounded to prec bits; exact when it lands on a
        // dyadic of at most prec bits
        let num = Float::from_bigint(&value);
        let den = Float::from_bigint(&ten.pow((-p) as u32));
        let q = num.div_trunc(&den, prec);
        if q.mul(&den).cmp_val(&num) == std::cmp::Ordering::Equal {
            return Ok(BallReal::exact(q));
        }
        let rad = Float::pow2(q.ulp_after(prec).exp);
        Ok(BallReal { mid: q, rad })
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs().cmp_val(&self.rad) != std::cmp::Ordering::Greater
    }

    /// Upper bound of |self|.
    pub fn abs_upper(&self) -> Float {
        self.mid.abs_up().add(&self.rad).round_up(RAD_BITS)
    }

    /// Lower bound of |self| (zero if the ball straddles zero).
    pub fn abs_lower(&self) -> Float {
        let lo = self.mid.abs().sub(&self.rad);
        if lo.is_negative() {
            Float::zero()
        } else {
            lo
        }
    }

    /// True when every point of the ball is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        !self.mid.is_negative()
            && self.mid.cmp_val(&self.rad) == std::cmp::Ordering::Greater
    }

    pub fn neg(&self) -> Self {
        BallReal {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Self, prec: u64) -> Self {
        let sum = self.mid.add(&other.mid);
        let (mid, inexact) = sum.round_trunc(prec);
        let mut rad = self.rad.add(&other.rad);
        if inexact {
            rad = rad.add(&sum.ulp_after(prec));
        }
        BallReal {
            mid,
            rad: rad.round_up(RAD_BITS),
        }
    }

    pub fn sub(&self, other: &Self, prec: u64) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u64) -> Self {
        let prod = self.mid.mul(&other.mid);
        let (mid, inexact) = prod.round_trunc(prec);
        // |a||rb| + |b||ra| + ra*rb  (upper bounds throughout)
        let mut rad = self
            .mid
            .abs_up()
            .mul(&other.rad)
            .add(&other.mid.abs_up().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        if inexact {
            rad = rad.add(&prod.ulp_after(prec));
        }
        BallReal {
            mid,
            rad: rad.round_up(RAD_BITS),
        }
    }

    /// Exact scaling by an integer.
    pub fn mul_i64(&self, k: i64) -> Self {
        BallReal {
            mid: self.mid.mul_i64(k),
            rad: self.rad.mul_i64(k.abs()).round_up(RAD_BITS),
        }
    }

    /// Exact scaling by 2^k.
    pub fn scale2(&self, k: i64) -> Self {
        BallReal {
            mid: self.mid.scale2(k),
            rad: self.rad.scale2(k),
        }
    }

    /// Reciprocal ball; errors if the ball contains zero.
    pub fn recip(&self, prec: u64) -> Result<Self, BallError> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return Err(BallError::DivisionByZeroBall);
        }
        let one = Float::from_i64(1);
        let q = one.div_trunc(&self.mid, prec);
        let ulp = Float::pow2(q.ulp_after(prec).exp);
        // rad / (|mid| * lo), upper bound
        let den = self.mid.abs().mul(&lo);
        let rad = self.rad.round_up(RAD_BITS).div_up(&den).add(&ulp);
        Ok(BallReal {
            mid: q,
            rad: rad.round_up(RAD_BITS),
        })
    }

    pub fn div(&self, other: &Self, prec: u64) -> Result<Self, BallError> {
        Ok(self.mul(&other.recip(prec)?, prec))
    }

    /// Division by a positive machine integer.
    pub fn div_u64(&self, k: u64, prec: u64) -> Self {
        let kf = Float::from_i64(k as i64);
        let q = self.mid.div_trunc(&kf, prec);
        let mut rad = self.rad.div_up(&kf);
        if !self.mid.is_zero() {
            rad = rad.add(&Float::pow2(q.ulp_after(prec).exp));
        }
        BallReal {
            mid: q,
            rad: rad.round_up(RAD_BITS),
        }
    }

    /// Widens the radius by `extra`.
    pub fn widen(&self, extra: &Float) -> Self {
        BallReal {
            mid: self.mid.clone(),
            rad: self.rad.add(extra).round_up(RAD_BITS),
        }
    }
}

/// Complex ball as a pair of real balls (rectangular enclosure).
#[derive(Clone, Debug)]
pub struct BallComplex {
    pub re: BallReal,
    pub im: BallReal,
}

impl BallComplex {
    pub fn new(re: BallReal, im: BallReal) -> Self {
        BallComplex { re, im }
    }

    pub fn zero() -> Self {
        BallComplex::new(BallReal::zero(), BallReal::zero())
    }

    pub fn one() -> Self {
        BallComplex::new(BallReal::one(), BallReal::zero())
    }

    pub fn from_real(re: BallReal) -> Self {
        BallComplex::new(re, BallReal::zero())
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        BallComplex::from_real(BallReal::from_bigint(v))
    }

    pub fn neg(&self) -> Self {
        BallComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, other: &Self, prec: u64) -> Self {
        BallComplex::new(self.re.add(&other.re, prec), self.im.add(&other.im, prec))
    }

    pub fn sub(&self, other: &Self, prec: u64) -> Self {
        BallComplex::new(self.re.sub(&other.re, prec), self.im.sub(&other.im, prec))
    }

    pub fn mul(&self, other: &Self, prec: u64) -> Self {
        let re = self
            .re
            .mul(&other.re, prec)
            .sub(&self.im.mul(&other.im, prec), prec);
        let im = self
            .re
            .mul(&other.im, prec)
            .add(&self.im.mul(&other.re, prec), prec);
        BallComplex::new(re, im)
    }

    pub fn mul_real(&self, other: &BallReal, prec: u64) -> Self {
        BallComplex::new(self.re.mul(other, prec), self.im.mul(other, prec))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BallComplex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    pub fn conj(&self) -> Self {
        BallComplex::new(self.re.clone(), self.im.neg())
    }

    /// |z|^2 as a real ball.
    pub fn norm_sqr(&self, prec: u64) -> BallReal {
        self.re
            .mul(&self.re, prec)
            .add(&self.im.mul(&self.im, prec), prec)
    }

    pub fn div(&self, other: &Self, prec: u64) -> Result<Self, BallError> {
        let inv_norm = other.norm_sqr(prec).recip(prec)?;
        Ok(self.mul(&other.conj(), prec).mul_real(&inv_norm, prec))
    }

    /// z^k by binary exponentiation.
    pub fn pow_u64(&self, mut k: u64, prec: u64) -> Self {
        let mut acc = BallComplex::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Upper bound of |z|: sqrt(re^2 + im^2) with all roundings outward.
    pub fn abs_upper(&self) -> Float {
        let r = self.re.abs_upper();
        let i = self.im.abs_upper();
        r.mul(&r).add(&i.mul(&i)).sqrt_up()
    }

    /// Upper bound on the enclosure radius: rad(re) + rad(im).
    pub fn radius_upper(&self) -> Float {
        self.re.rad.add(&self.im.rad).round_up(RAD_BITS)
    }

    /// True when 0 lies in the rectangular enclosure.
    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Widens both component radii.
    pub fn widen(&self, extra: &Float) -> Self {
        BallComplex::new(self.re.widen(extra), self.im.widen(extra))
    }
}

/// The commutative ring of complex balls at a fixed working precision, for
/// generic polynomial evaluation.
#[derive(Clone, Copy, Debug)]
pub struct ComplexBallRing {
    pub prec: u64,
}

impl Ring for ComplexBallRing {
    type Elem = BallComplex;

    fn zero(&self) -> BallComplex {
        BallComplex::zero()
    }
    fn one(&self) -> BallComplex {
        BallComplex::one()
    }
    fn add(&self, a: &BallComplex, b: &BallComplex) -> BallComplex {
        a.add(b, self.prec)
    }
    fn neg(&self, a: &BallComplex) -> BallComplex {
        a.neg()
    }
    fn mul(&self, a: &BallComplex, b: &BallComplex) -> BallComplex {
        a.mul(b, self.prec)
    }
    fn from_bigint(&self, c: &BigInt) -> BallComplex {
        BallComplex::from_bigint(c)
    }
}

/// Ball enclosure of pi via Machin's formula
/// pi = 16 arctan(1/5) - 4 arctan(1/239), summed in fixed point with
/// per-term and tail error accounting.
pub fn pi_ball(prec: u64) -> BallReal {
    let w = prec + 32;
    fn arctan_inv(m: u64, w: u64) -> (BigInt, u64) {
        // arctan(1/m) * 2^w with error <= (#terms + 1) in units of 2^-w
        let m2 = BigInt::from(m) * BigInt::from(m);
        let mut denom = BigInt::from(m); // m^(2k+1)
        let mut k = 0u64;
        let mut acc = BigInt::zero();
        let mut terms = 0u64;
        let scale = BigInt::one() << w;
        loop {
            let q = &scale / (&denom * BigInt::from(2 * k + 1));
            if q.is_zero() {
                break;
            }
            if k % 2 == 0 {
                acc += q;
            } else {
                acc -= q;
            }
            terms += 1;
            denom *= &m2;
            k += 1;
        }
        (acc, terms + 1)
    }
    let (a, ea) = arctan_inv(5, w);
    let (b, eb) = arctan_inv(239, w);
    let mid = BigInt::from(16) * a - BigInt::from(4) * b;
    let err = 16 * ea + 4 * eb;
    BallReal {
        mid: Float {
            mant: mid,
            exp: -(w as i64),
        },
        rad: Float {
            mant: BigInt::from(err),
            exp: -(w as i64),
        }
        .round_up(RAD_BITS),
    }
}

/// exp of a real ball: argument halved until small, Taylor-summed in ball
/// arithmetic, then squared back up.
pub fn exp_ball(x: &BallReal, prec: u64) -> BallReal {
    let w = prec + 32;
    let mag = x.abs_upper().mag().unwrap_or(i64::MIN);
    let j = (mag + 2).max(0) as u64; // |x| / 2^j <= 1/2
    let s = x.scale2(-(j as i64));
    let mut sum = BallReal::one();
    let mut term = BallReal::one();
    let mut k = 1u64;
    loop {
        term = term.mul(&s, w).div_u64(k, w);
        sum = sum.add(&term, w);
        let tmag = term.abs_upper().mag().unwrap_or(i64::MIN);
        if tmag < -((w + 4) as i64) {
            break;
        }
        k += 1;
        assert!(k < 10_000, "exp series failed to converge");
    }
    // Tail: |s| <= 1/2, so the remainder is < 2 * (first omitted term
    // bound) <= 2 * |term|.
    let tail = term.abs_upper().scale2(1);
    let mut result = sum.widen(&tail);
    for _ in 0..j {
        result = result.mul(&result, w);
    }
    let (mid, inexact) = result.mid.round_trunc(prec);
    let mut rad = result.rad;
    if inexact {
        rad = rad.add(&result.mid.ulp_after(prec));
    }
    BallReal {
        mid,
        rad: rad.round_up(RAD_BITS),
    }
}

/// sin and cos of a real ball, with range reduction modulo 2*pi.
pub fn sincos_ball(x: &BallReal, prec: u64) -> (BallReal, BallReal) {
    let w = prec + 32;
    let pi = pi_ball(w);
    // k = nearest integer to mid / (2 pi)
    let two_pi_mid = pi.mid.scale2(1);
    let q = x.mid.div_trunc(&two_pi_mid, 64);
    let k = round_to_integer(&q);
    let reduced = if k.is_zero() {
        x.clone()
    } else {
        // x - k * 2pi, ball arithmetic (k exact integer)
        let kpi2 = BallReal {
            mid: pi.mid.mul(&Float::from_bigint(&k)).scale2(1),
            rad: pi
                .rad
                .mul(&Float::from_bigint(&k.abs()))
                .scale2(1)
                .round_up(RAD_BITS),
        };
        x.sub(&kpi2, w)
    };
    // |reduced| <= pi + slack; Taylor terms shrink fast once 2k+1 > |x|.
    let s2 = reduced.mul(&reduced, w).neg();
    let mut sin_sum = reduced.clone();
    let mut sin_term = reduced.clone();
    let mut cos_sum = BallReal::one();
    let mut cos_term = BallReal::one();
    let mut k2 = 1u64;
    loop {
        cos_term = cos_term.mul(&s2, w).div_u64((2 * k2 - 1) * (2 * k2), w);
        cos_sum = cos_sum.add(&cos_term, w);
        sin_term = sin_term.mul(&s2, w).div_u64((2 * k2) * (2 * k2 + 1), w);
        sin_sum = sin_sum.add(&sin_term, w);
        let tmag = sin_term
            .abs_upper()
            .add(&cos_term.abs_upper())
            .mag()
            .unwrap_or(i64::MIN);
        if tmag < -((w + 4) as i64) && k2 >= 4 {
            break;
        }
        k2 += 1;
        assert!(k2 < 10_000, "sin/cos series failed to converge");
    }
    // After k2 >= 4 the term ratio |x|^2/((2k+2)(2k+3)) < 1/2 for |x| < 4.3,
    // so the tail is < 2 * (next term bound) <= 2 * |last term|.
    let tail_s = sin_term.abs_upper().scale2(1);
    let tail_c = cos_term.abs_upper().scale2(1);
    (sin_sum.widen(&tail_s), cos_sum.widen(&tail_c))
}

fn round_to_integer(f: &Float) -> BigInt {
    if f.exp >= 0 {
        &f.mant << f.exp as u64
    } else {
        let shift = (-f.exp) as u64;
        if shift > f.mant.bits() + 1 {
            return BigInt::zero();
        }
        // add half before truncating to get round-to-nearest
        let half = BigInt::one() << (shift - 1);
        let adj = if f.mant.is_negative() {
            &f.mant - half
        } else {
            &f.mant + half
        };
        adj >> shift
    }
}

/// exp(i * theta) for a real ball theta.
pub fn exp_i_ball(theta: &BallReal, prec: u64) -> BallComplex {
    let (s, c) = sincos_ball(theta, prec);
    BallComplex::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f64_of(b: &BallReal) -> f64 {
        b.mid.to_f64()
    }

    #[test]
    fn pi_matches_reference() {
        let pi = pi_ball(128);
        assert!((f64_of(&pi) - std::f64::consts::PI).abs() < 1e-15);
        assert!(pi.rad.mag().unwrap() < -120);
        // first 30 digits of the midpoint
        assert!(pi
            .mid
            .to_decimal(30)
            .starts_with("3.1415926535897932384626433832"));
    }

    #[test]
    fn exp_values() {
        let one = BallReal::one();
        let e = exp_ball(&one, 128);
        assert!((f64_of(&e) - std::f64::consts::E).abs() < 1e-15);
        assert!(e.rad.mag().unwrap() < -120);

        let neg = BallReal::from_i64(-10);
        let v = exp_ball(&neg, 192);
        assert!((f64_of(&v) - (-10f64).exp()).abs() < 1e-18);

        let zero = BallReal::zero();
        let v = exp_ball(&zero, 64);
        assert!((f64_of(&v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sincos_values() {
        let prec = 128;
        for x in [0.0f64, 0.5, 1.0, -2.5, 3.0, 10.0, -31.4] {
            let xb = BallReal::from_decimal_str(&format!("{x}"), prec + 16).unwrap();
            let (s, c) = sincos_ball(&xb, prec);
            assert!((f64_of(&s) - x.sin()).abs() < 1e-14, "sin {x}");
            assert!((f64_of(&c) - x.cos()).abs() < 1e-14, "cos {x}");
            assert!(s.rad.mag().unwrap_or(i64::MIN) < -100, "sin rad {x}");
        }
    }

    #[test]
    fn sincos_pythagorean() {
        let prec = 192;
        let xb = BallReal::from_decimal_str("1.7724538509", prec).unwrap();
        let (s, c) = sincos_ball(&xb, prec);
        let unit = s.mul(&s, prec).add(&c.mul(&c, prec), prec);
        let resid = unit.sub(&BallReal::one(), prec);
        assert!(resid.contains_zero());
        assert!(resid.rad.mag().unwrap() < -170);
    }

    #[test]
    fn division_and_enclosure() {
        let prec = 128;
        let a = BallReal::from_i64(1);
        let b = BallReal::from_i64(3);
        let q = a.div(&b, prec).unwrap();
        assert!((f64_of(&q) - 1.0 / 3.0).abs() < 1e-15);
        // 3 * (1/3) contains 1
        let back = q.mul(&b, prec).sub(&BallReal::one(), prec);
        assert!(back.contains_zero());
    }

    #[test]
    fn division_by_zero_ball() {
        let z = BallReal {
            mid: Float::pow2(-100),
            rad: Float::pow2(-50),
        };
        assert!(matches!(
            z.recip(128),
            Err(BallError::DivisionByZeroBall)
        ));
    }

    #[test]
    fn complex_mul_div_roundtrip() {
        let prec = 128;
        let z = BallComplex::new(
            BallReal::from_decimal_str("1.25", prec).unwrap(),
            BallReal::from_decimal_str("-0.75", prec).unwrap(),
        );
        let w = BallComplex::new(
            BallReal::from_decimal_str("0.5", prec).unwrap(),
            BallReal::from_decimal_str("2.0", prec).unwrap(),
        );
        let prod = z.mul(&w, prec);
        let back = prod.div(&w, prec).unwrap();
        let diff = back.sub(&z, prec);
        assert!(diff.contains_zero());
        assert!(diff.radius_upper().mag().unwrap() < -100);
    }

    #[test]
    fn pow_u64_matches_repeated_mul() {
        let prec = 128;
        let z = BallComplex::new(BallReal::from_i64(3), BallReal::from_i64(-2));
        let p = z.pow_u64(7, prec);
        let mut q = BallComplex::one();
        for _ in 0..7 {
            q = q.mul(&z, prec);
        }
        assert!(p.sub(&q, prec).contains_zero());
    }

    #[test]
    fn decimal_roundtrip() {
        let prec = 192;
        let b = BallReal::from_decimal_str("3.14159265358979323846", prec).unwrap();
        let s = b.mid.to_decimal(20);
        assert!(s.starts_with("3.141592653589793238"));
        let neg = BallReal::from_decimal_str("-0.001953125", prec).unwrap(); // exact dyadic
        assert!(neg.rad.is_zero());
        assert!(neg.mid.to_decimal(8).starts_with("-1.953125"));
    }

    #[test]
    fn exp_enclosure_monotone_in_prec() {
        let x = BallReal::from_decimal_str("0.3", 256).unwrap();
        let lo = exp_ball(&x, 96);
        let hi = exp_ball(&x, 192);
        assert!(hi.rad.cmp_val(&lo.rad) != std::cmp::Ordering::Greater);
    }
}
