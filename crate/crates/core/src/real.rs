//! Arbitrary-precision real arithmetic over a decimal mantissa.
//!
//! A [`Real`] is `mant * 10^exp` with the mantissa normalized to exactly the
//! bound precision in significant decimal digits, so every operation rounds
//! once (half away from zero) and carries relative error at most
//! `10^(1 - working_digits)`. A decimal mantissa keeps report formatting and
//! byte-for-byte determinism trivial: the printed digits *are* the number.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// Requested precision: `target_digits` significant digits certified to the
/// caller, computed with `guard_digits` extra working digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecisionError {
    #[error("target_digits must be at least 1 (got {0})")]
    TargetTooSmall(u32),
    #[error("guard_digits must be at least 10 (got {0})")]
    GuardTooSmall(u32),
}

impl PrecisionContext {
    pub const DEFAULT_TARGET: u32 = 30;
    pub const DEFAULT_GUARD: u32 = 15;

    pub fn new(target_digits: u32, guard_digits: u32) -> Result<Self, PrecisionError> {
        if target_digits < 1 {
            return Err(PrecisionError::TargetTooSmall(target_digits));
        }
        if guard_digits < 10 {
            return Err(PrecisionError::GuardTooSmall(guard_digits));
        }
        Ok(PrecisionContext { target_digits, guard_digits })
    }

    /// Context with the default 15 guard digits.
    pub fn with_target(target_digits: u32) -> Self {
        PrecisionContext::new(target_digits.max(1), Self::DEFAULT_GUARD).expect("valid guard")
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(Self::DEFAULT_TARGET, Self::DEFAULT_GUARD).expect("valid defaults")
    }
}

/// Arbitrary-precision real: `mant * 10^exp`, mantissa held at exactly `prec`
/// significant digits (or zero). Immutable after construction.
#[derive(Clone, Debug)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

thread_local! {
    static POW10: RefCell<Vec<BigInt>> = RefCell::new(vec![BigInt::from(1u8)]);
    static PI_CACHE: RefCell<HashMap<u32, Real>> = RefCell::new(HashMap::new());
    static LN2_CACHE: RefCell<HashMap<u32, Real>> = RefCell::new(HashMap::new());
    static LN10_CACHE: RefCell<HashMap<u32, Real>> = RefCell::new(HashMap::new());
}

/// `10^k` as a `BigInt`, from a per-thread table.
pub(crate) fn pow10(k: u32) -> BigInt {
    POW10.with(|cell| {
        let mut table = cell.borrow_mut();
        while table.len() <= k as usize {
            let next = table.last().expect("nonempty") * 10u8;
            table.push(next);
        }
        table[k as usize].clone()
    })
}

/// Number of decimal digits of `|m|`; 0 for zero.
pub(crate) fn digits10(m: &BigInt) -> u32 {
    if m.is_zero() {
        return 0;
    }
    let bits = m.bits();
    // log10(2) low estimate, then fix up by exact comparison.
    let mut d = ((bits.saturating_sub(1)) as f64 * 0.301_029_995_663_981_2).floor() as u32 + 1;
    let m_abs = m.abs();
    while m_abs >= pow10(d) {
        d += 1;
    }
    while d > 1 && m_abs < pow10(d - 1) {
        d -= 1;
    }
    d
}

/// Round-half-away-from-zero to `prec` significant digits.
fn make(mut mant: BigInt, mut exp: i64, prec: u32) -> Real {
    debug_assert!(prec >= 1);
    if mant.is_zero() {
        return Real { mant, exp: 0, prec };
    }
    let d = digits10(&mant);
    if d > prec {
        let cut = d - prec;
        let unit = pow10(cut);
        let (mut q, r) = mant.div_rem(&unit);
        if r.abs() * 2u8 >= unit {
            q += r.signum();
        }
        // Rounding can carry 999..9 to 10^prec; drop one more digit exactly.
        if digits10(&q) > prec {
            q /= 10;
            exp += 1;
        }
        mant = q;
        exp += cut as i64;
    } else if d < prec {
        let scale = prec - d;
        mant *= pow10(scale);
        exp -= scale as i64;
    }
    Real { mant, exp, prec }
}

impl Real {
    pub fn zero(prec: u32) -> Real {
        Real { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Real {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Real {
        make(BigInt::from(v), 0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Real {
        make(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Real {
        make(v, 0, prec)
    }

    /// Exact `10^k`.
    pub fn from_pow10(k: i64, prec: u32) -> Real {
        make(BigInt::from(1u8), k, prec)
    }

    /// Exact scaled integer `mant * 10^exp`, rounded once to `prec` digits.
    pub fn from_scaled(mant: BigInt, exp: i64, prec: u32) -> Real {
        make(mant, exp, prec)
    }

    /// Convert an exact rational; relative error below `10^(1-prec)`.
    pub fn from_rational(q: &Rational, prec: u32) -> Real {
        if q.is_zero() {
            return Real::zero(prec);
        }
        let num = q.numerator();
        let den = q.denominator();
        let scale = prec + 4 + digits10(den);
        let m = num * pow10(scale) / den;
        make(m, -(scale as i64), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// `floor(log10(|x|))`; panics on zero.
    pub fn magnitude10(&self) -> i64 {
        assert!(!self.is_zero(), "magnitude of zero");
        self.exp + self.prec as i64 - 1
    }

    /// `floor(-log10(x))` for positive `x`, exact.
    pub fn floor_neg_log10(&self) -> i64 {
        assert!(self.is_positive(), "floor_neg_log10 needs a positive value");
        let mag = self.magnitude10();
        if self.mant == pow10(self.prec - 1) {
            -mag
        } else {
            -(mag + 1)
        }
    }

    pub fn abs(&self) -> Real {
        Real { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Exact integrality test (the representation is a scaled integer).
    pub fn is_integer(&self) -> bool {
        if self.is_zero() || self.exp >= 0 {
            return true;
        }
        if self.magnitude10() < 0 {
            return false;
        }
        let frac_digits = (-self.exp) as u32;
        (&self.mant % pow10(frac_digits)).is_zero()
    }

    pub fn neg(&self) -> Real {
        Real { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    /// Same value re-rounded to a different precision.
    pub fn with_precision(&self, prec: u32) -> Real {
        make(self.mant.clone(), self.exp, prec)
    }

    pub fn add(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return make(other.mant.clone(), other.exp, prec);
        }
        if other.is_zero() {
            return make(self.mant.clone(), self.exp, prec);
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let delta = (hi.exp - lo.exp) as u64;
        let bound = 2 * prec as u64 + 8;
        if delta > bound {
            // The low part is far below half an ulp of the result.
            return make(hi.mant.clone(), hi.exp, prec);
        }
        let m = &hi.mant * pow10(delta as u32) + &lo.mant;
        make(m, lo.exp, prec)
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        if self.is_zero() || other.is_zero() {
            return Real::zero(prec);
        }
        make(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    pub fn div(&self, other: &Real) -> Real {
        assert!(!other.is_zero(), "division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Real::zero(prec);
        }
        let scale = prec + 4 + other.prec - self.prec.min(prec);
        let q = &self.mant * pow10(scale) / &other.mant;
        make(q, self.exp - other.exp - scale as i64, prec)
    }

    pub fn mul_small(&self, k: i64) -> Real {
        if k == 0 || self.is_zero() {
            return Real::zero(self.prec);
        }
        make(&self.mant * BigInt::from(k), self.exp, self.prec)
    }

    pub fn div_small(&self, k: i64) -> Real {
        assert!(k != 0, "division by zero");
        if self.is_zero() {
            return Real::zero(self.prec);
        }
        let q = &self.mant * pow10(4) / BigInt::from(k);
        make(q, self.exp - 4, self.prec)
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Real {
        if k.is_zero() || self.is_zero() {
            return Real::zero(self.prec);
        }
        make(&self.mant * k, self.exp, self.prec)
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        let ls = self.mant.sign();
        let rs = other.mant.sign();
        if ls != rs {
            return ls.cmp(&rs);
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        let lm = self.magnitude10();
        let rm = other.magnitude10();
        if lm != rm {
            let mag_ord = lm.cmp(&rm);
            return if self.is_positive() { mag_ord } else { mag_ord.reverse() };
        }
        // Equal magnitudes: exponents differ by at most the precision gap.
        let delta = self.exp - other.exp;
        if delta >= 0 {
            (&self.mant * pow10(delta as u32)).cmp(&other.mant)
        } else {
            self.mant.cmp(&(&other.mant * pow10((-delta) as u32)))
        }
    }

    /// Exact integer nearest to the value (ties away from zero).
    pub fn to_i64_nearest(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let v = if self.exp >= 0 {
            &self.mant * pow10(self.exp as u32)
        } else {
            let unit = pow10((-self.exp).min(i64::from(u32::MAX)) as u32);
            let (mut q, r) = self.mant.div_rem(&unit);
            if r.abs() * 2u8 >= unit {
                q += r.signum();
            }
            q
        };
        v.to_i64().expect("integer part fits in i64")
    }

    /// Lossy f64 view, for heuristics only.
    pub fn to_f64_lossy(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.to_decimal_string(17).parse().unwrap_or(f64::NAN)
    }

    /// Decimal string with exactly `sig` significant digits, round to nearest
    /// (ties away from zero). `'.'` separator regardless of locale.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut digits_int = if sig <= self.prec {
            let cut = self.prec - sig;
            if cut == 0 {
                self.mant.abs()
            } else {
                let unit = pow10(cut);
                let (mut q, r) = self.mant.abs().div_rem(&unit);
                if &r * 2u8 >= unit {
                    q += 1u8;
                }
                q
            }
        } else {
            self.mant.abs() * pow10(sig - self.prec)
        };
        let mut e = self.magnitude10();
        if digits10(&digits_int) > sig {
            digits_int /= 10u8;
            e += 1;
        }
        let digits = digits_int.to_string();
        debug_assert_eq!(digits.len(), sig as usize);

        let sign = if self.is_negative() { "-" } else { "" };
        let sig_i = sig as i64;
        if (-6..=sig_i + 5).contains(&e) {
            if e >= sig_i - 1 {
                let zeros = "0".repeat((e - sig_i + 1) as usize);
                format!("{sign}{digits}{zeros}")
            } else if e >= 0 {
                let (int_part, frac_part) = digits.split_at((e + 1) as usize);
                format!("{sign}{int_part}.{frac_part}")
            } else {
                let zeros = "0".repeat((-e - 1) as usize);
                format!("{sign}0.{zeros}{digits}")
            }
        } else if sig == 1 {
            format!("{sign}{digits}e{e}")
        } else {
            let (head, tail) = digits.split_at(1);
            format!("{sign}{head}.{tail}e{e}")
        }
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec;
        let mut shift = 2 * p + 10 - digits10(&self.mant).min(2 * p + 9);
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let t = &self.mant * pow10(shift);
        let root = num_integer::Roots::sqrt(&t);
        make(root, (self.exp - shift as i64) / 2, p)
    }

    /// Natural logarithm; panics unless strictly positive.
    pub fn ln(&self) -> Real {
        assert!(self.is_positive(), "ln needs a positive value");
        let p = self.prec;
        let pi_ = p + 12;
        // x = y * 10^k with y in [1, 10)
        let k = self.magnitude10();
        let mut y = make(self.mant.clone(), -(self.prec as i64 - 1), pi_);
        // y / 2^j in [0.75, 1.5)
        let three_halves = Real::from_rational(&Rational::new(3, 2), pi_);
        let mut j = 0i64;
        while y.cmp_value(&three_halves) != Ordering::Less {
            y = y.div_small(2);
            j += 1;
        }
        let one = Real::one(pi_);
        let u = y.sub(&one).div(&y.add(&one));
        let mut acc = atanh_series(&u, pi_).mul_small(2);
        if j != 0 {
            acc = acc.add(&ln2(pi_).mul_small(j));
        }
        if k != 0 {
            acc = acc.add(&ln10(pi_).mul_small(k));
        }
        acc.with_precision(p)
    }

    /// Exponential. The argument magnitude must stay below ~10^6.
    pub fn exp(&self) -> Real {
        let p = self.prec;
        if self.is_zero() {
            return Real::one(p);
        }
        let pi_ = p + 18;
        let x = self.with_precision(pi_);
        let ln2_v = ln2(pi_);
        let n = x.div(&ln2_v).to_i64_nearest();
        assert!(n.unsigned_abs() < 4_000_000, "exp argument out of supported range");
        let mut r = x.sub(&ln2_v.mul_small(n));
        // Halve 10 times, series, then square back.
        for _ in 0..10 {
            r = r.div_small(2);
        }
        let mut term = r.clone();
        let mut sum = Real::one(pi_).add(&r);
        let mut i = 2i64;
        let stop_mag = r.magnitude10() - (pi_ as i64) - 2;
        loop {
            term = term.mul(&r).div_small(i);
            if term.is_zero() || term.magnitude10() < stop_mag {
                break;
            }
            sum = sum.add(&term);
            i += 1;
        }
        for _ in 0..10 {
            sum = sum.mul(&sum);
        }
        // Multiply by 2^n: shift left for n >= 0, else scale by 5^|n| in the
        // mantissa and 10^-|n| in the exponent.
        let result = if n >= 0 {
            make(&sum.mant << (n as u64), sum.exp, pi_)
        } else {
            let m = -n as u32;
            make(&sum.mant * BigInt::from(5u8).pow(m), sum.exp - m as i64, pi_)
        };
        result.with_precision(p)
    }

    /// Sine. Exact-range callers should prefer [`sin_pi_rational`].
    pub fn sin(&self) -> Real {
        let p = self.prec;
        if self.is_zero() {
            return Real::zero(p);
        }
        let extra = self.magnitude10().max(0) as u32;
        let pi_ = p + 12 + extra;
        let x = self.with_precision(pi_);
        let two_pi = pi(pi_).mul_small(2);
        let n = x.div(&two_pi).to_i64_nearest();
        let mut r = x.sub(&two_pi.mul_small(n));
        let mut sign = 1i64;
        if r.is_negative() {
            r = r.neg();
            sign = -1;
        }
        let half_pi = pi(pi_).div_small(2);
        if r.cmp_value(&half_pi) == Ordering::Greater {
            r = pi(pi_).sub(&r);
            // sin(pi - r) = sin(r); r may now be negative if input was near pi.
            if r.is_negative() {
                r = r.neg();
                sign = -sign;
            }
        }
        taylor_sin(&r, pi_).mul_small(sign).with_precision(p)
    }

    /// Integer power via binary exponentiation.
    pub fn powi(&self, k: i64) -> Real {
        let p = self.prec;
        if k == 0 {
            return Real::one(p);
        }
        let pi_ = p + 8 + 64 - k.unsigned_abs().leading_zeros();
        let mut base = self.with_precision(pi_);
        let mut e = k.unsigned_abs();
        let mut acc = Real::one(pi_);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if k < 0 {
            acc = Real::one(pi_).div(&acc);
        }
        acc.with_precision(p)
    }

    /// `x^(p/q)` for positive `x` (any `x` when the exponent is an integer).
    pub fn pow_rational(&self, e: &Rational) -> Real {
        if let Some(k) = e.to_i64() {
            return self.powi(k);
        }
        assert!(self.is_positive(), "rational power of a non-positive value");
        let p = self.prec;
        if e.denominator() == &BigInt::from(2u8) {
            let k = e
                .numerator()
                .to_i64()
                .expect("half-integer exponent numerator fits in i64");
            return self.with_precision(p + 8).sqrt().powi(k).with_precision(p);
        }
        let pi_ = p + 12;
        let e_real = Real::from_rational(e, pi_);
        self.with_precision(pi_).ln().mul(&e_real).exp().with_precision(p)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.prec))
    }
}

/// atanh power series; requires `|u| <= 1/4` for fast convergence.
fn atanh_series(u: &Real, prec: u32) -> Real {
    if u.is_zero() {
        return Real::zero(prec);
    }
    let u2 = u.mul(u);
    let mut term = u.clone();
    let mut sum = u.clone();
    let stop_mag = u.magnitude10() - (prec as i64) - 2;
    let mut i = 1i64;
    loop {
        term = term.mul(&u2);
        if term.is_zero() || term.magnitude10() < stop_mag {
            break;
        }
        sum = sum.add(&term.div_small(2 * i + 1));
        i += 1;
    }
    sum
}

/// Sine by Taylor series for `x` in `[0, pi/2]`.
fn taylor_sin(x: &Real, prec: u32) -> Real {
    if x.is_zero() {
        return Real::zero(prec);
    }
    let x2 = x.mul(x).neg();
    let mut term = x.clone();
    let mut sum = x.clone();
    let stop_mag = x.magnitude10() - (prec as i64) - 2;
    let mut i = 1i64;
    loop {
        term = term.mul(&x2).div_small(2 * i).div_small(2 * i + 1);
        if term.is_zero() || term.magnitude10() < stop_mag {
            break;
        }
        sum = sum.add(&term);
        i += 1;
    }
    sum
}

/// `sin(pi * q)` with the range reduction done exactly on the rational, so
/// the result keeps full relative precision arbitrarily close to the zeros.
pub fn sin_pi_rational(q: &Rational, prec: u32) -> Real {
    // Reduce q mod 2 exactly.
    let two = Rational::from_integer(2);
    let floored = &(q / &two);
    let mut r = q - &(&Rational::from_big(floored.floor_bigint(), 1u8.into()) * &two);
    let mut sign = 1i64;
    if r > Rational::one() {
        r = &r - &Rational::one();
        sign = -1;
    }
    if &r + &r > Rational::one() {
        r = &Rational::one() - &r;
    }
    if r.is_zero() {
        return Real::zero(prec);
    }
    let pi_ = prec + 10;
    let x = pi(pi_).mul(&Real::from_rational(&r, pi_));
    taylor_sin(&x, pi_).mul_small(sign).with_precision(prec)
}

/// Scaled arctan(1/q) * 10^p as an integer (error a few last-place units).
fn arctan_inv_scaled(q: u64, p: u32) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut t = pow10(p) / q;
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    while !t.is_zero() {
        let term = &t / (2 * k + 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        t = &t / &q2;
        k += 1;
    }
    acc
}

/// Scaled atanh(1/q) * 10^p as an integer.
fn atanh_inv_scaled(q: u64, p: u32) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut t = pow10(p) / q;
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    while !t.is_zero() {
        acc += &t / (2 * k + 1);
        t = &t / &q2;
        k += 1;
    }
    acc
}

/// pi to `prec` significant digits (Machin: 16 atan(1/5) - 4 atan(1/239)).
pub fn pi(prec: u32) -> Real {
    PI_CACHE.with(|cell| {
        if let Some(v) = cell.borrow().get(&prec) {
            return v.clone();
        }
        let p = prec + 10;
        let scaled = arctan_inv_scaled(5, p) * 16 - arctan_inv_scaled(239, p) * 4;
        let value = make(scaled, -(p as i64), prec);
        cell.borrow_mut().insert(prec, value.clone());
        value
    })
}

/// ln 2 = 2 atanh(1/3).
pub(crate) fn ln2(prec: u32) -> Real {
    LN2_CACHE.with(|cell| {
        if let Some(v) = cell.borrow().get(&prec) {
            return v.clone();
        }
        let p = prec + 10;
        let value = make(atanh_inv_scaled(3, p) * 2, -(p as i64), prec);
        cell.borrow_mut().insert(prec, value.clone());
        value
    })
}

/// ln 10 = 3 ln 2 + 2 atanh(1/9).
pub(crate) fn ln10(prec: u32) -> Real {
    LN10_CACHE.with(|cell| {
        if let Some(v) = cell.borrow().get(&prec) {
            return v.clone();
        }
        let p = prec + 10;
        let scaled = atanh_inv_scaled(3, p) * 6 + atanh_inv_scaled(9, p) * 2;
        let value = make(scaled, -(p as i64), prec);
        cell.borrow_mut().insert(prec, value.clone());
        value
    })
}

/// Spec operation: rational -> Real under a context's working precision.
pub fn to_real(q: &Rational, ctx: &PrecisionContext) -> Real {
    Real::from_rational(q, ctx.working_digits())
}

/// Spec operation: pi under a context's working precision.
pub fn pi_ctx(ctx: &PrecisionContext) -> Real {
    pi(ctx.working_digits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn pi_matches_published_digits() {
        // Cross-check against published digits of pi.
        assert_eq!(pi(20).to_decimal_string(20), "3.1415926535897932385");
        assert_eq!(
            pi(35).to_decimal_string(35),
            "3.1415926535897932384626433832795029"
        );
        let p2 = pi(25).mul(&pi(25));
        assert_eq!(p2.to_decimal_string(10), "9.869604401");
        let p32 = pi(25).pow_rational(&q("3/2"));
        assert_eq!(p32.to_decimal_string(10), "5.568327997");
    }

    #[test]
    fn rational_conversions_are_exact_or_tight() {
        let ctx = PrecisionContext::with_target(30);
        assert_eq!(to_real(&q("1/2"), &ctx).to_decimal_string(5), "0.50000");
        assert_eq!(to_real(&q("5/4"), &ctx).to_decimal_string(5), "1.2500");
        let third = to_real(&q("1/3"), &PrecisionContext::with_target(10));
        assert_eq!(third.to_decimal_string(10), "0.3333333333");
    }

    #[test]
    fn to_real_is_monotone_in_precision() {
        let v20 = Real::from_rational(&q("22/7"), 20).to_decimal_string(15);
        let v45 = Real::from_rational(&q("22/7"), 45).to_decimal_string(15);
        assert_eq!(v20, v45);
    }

    #[test]
    fn arithmetic_round_trips() {
        let p = 40;
        let x = Real::from_rational(&q("355/113"), p);
        let y = Real::from_rational(&q("-7/8"), p);
        let z = x.mul(&y).div(&y);
        let rel = z.sub(&x).abs().div(&x.abs());
        assert!(rel.is_zero() || rel.magnitude10() < -(p as i64 - 3));
    }

    #[test]
    fn subtraction_cancellation_is_exact_before_rounding() {
        let p = 30;
        let a = Real::from_rational(&q("1000000001/1000000000"), p);
        let b = Real::one(p);
        let d = a.sub(&b);
        assert_eq!(d.to_decimal_string(5), "1.0000e-9");
    }

    #[test]
    fn sqrt_squares_back() {
        let p = 40;
        let x = Real::from_u64(2, p);
        let s = x.sqrt();
        let rel = s.mul(&s).sub(&x).abs().div(&x);
        assert!(rel.is_zero() || rel.magnitude10() < -(p as i64 - 3));
        assert_eq!(
            Real::from_u64(2, 35).sqrt().to_decimal_string(30),
            "1.41421356237309504880168872421"
        );
    }

    #[test]
    fn exp_ln_inverse() {
        let p = 40;
        for s in ["1/3", "7/2", "99/7", "1/1000"] {
            let x = Real::from_rational(&q(s), p);
            let y = x.ln().exp();
            let rel = y.sub(&x).abs().div(&x);
            assert!(rel.is_zero() || rel.magnitude10() < -(p as i64 - 4), "failed for {s}");
        }
    }

    #[test]
    fn ln_of_e_is_one() {
        let p = 45;
        let e = Real::one(p).exp();
        let one = e.ln();
        let err = one.sub(&Real::one(p)).abs();
        assert!(err.is_zero() || err.magnitude10() < -(p as i64 - 4));
        assert_eq!(e.to_decimal_string(30), "2.71828182845904523536028747135");
    }

    #[test]
    fn sin_pi_rational_special_points() {
        let p = 40;
        assert!(sin_pi_rational(&q("0"), p).is_zero());
        assert!(sin_pi_rational(&q("1"), p).is_zero());
        assert!(sin_pi_rational(&q("2"), p).is_zero());
        let half = sin_pi_rational(&q("1/2"), p);
        assert_eq!(half.to_decimal_string(10), "1.000000000");
        let neg = sin_pi_rational(&q("3/2"), p);
        assert_eq!(neg.to_decimal_string(10), "-1.000000000");
        // sin(pi/6) = 1/2
        let sixth = sin_pi_rational(&q("1/6"), p);
        assert_eq!(sixth.to_decimal_string(12), "0.500000000000");
        // sin(pi/4) = sqrt(2)/2
        let quarter = sin_pi_rational(&q("1/4"), p);
        let expect = Real::from_u64(2, p).sqrt().div_small(2);
        let rel = quarter.sub(&expect).abs().div(&expect);
        assert!(rel.is_zero() || rel.magnitude10() < -(p as i64 - 4));
    }

    #[test]
    fn sin_agrees_with_sin_pi_rational() {
        let p = 40;
        let r = q("7/5");
        let via_general = pi(p).mul(&Real::from_rational(&r, p)).sin();
        let via_exact = sin_pi_rational(&r, p);
        let diff = via_general.sub(&via_exact).abs();
        assert!(diff.is_zero() || diff.magnitude10() < -(p as i64 - 5));
    }

    #[test]
    fn pow_rational_cases() {
        let p = 40;
        let two = Real::from_u64(2, p);
        assert_eq!(two.powi(10).to_decimal_string(6), "1024.00");
        assert_eq!(two.powi(-1).to_decimal_string(6), "0.500000");
        let r = two.pow_rational(&q("-3/2"));
        let expect = Real::one(p).div(&two.sqrt().powi(3));
        let rel = r.sub(&expect).abs().div(&expect);
        assert!(rel.is_zero() || rel.magnitude10() < -(p as i64 - 4));
        let cube = Real::from_u64(8, p).pow_rational(&q("1/3"));
        let rel2 = cube.sub(&two).abs().div(&two);
        assert!(rel2.is_zero() || rel2.magnitude10() < -(p as i64 - 4));
    }

    #[test]
    fn decimal_string_formats() {
        let p = 30;
        let x = Real::from_rational(&q("1311/1000"), p);
        assert_eq!(x.to_decimal_string(4), "1.311");
        assert_eq!(x.to_decimal_string(6), "1.31100");
        let tiny = Real::from_rational(&q("32/10000000000000000000000000000"), p);
        assert_eq!(tiny.to_decimal_string(2), "3.2e-27");
        assert_eq!(tiny.to_decimal_string(1), "3e-27");
        let big = Real::from_u64(123_456, p);
        assert_eq!(big.to_decimal_string(3), "123000");
        assert_eq!(Real::zero(p).to_decimal_string(10), "0");
        let neg = Real::from_i64(-25, p);
        assert_eq!(neg.to_decimal_string(3), "-25.0");
        // Rounding carries across the leading digit.
        let near_ten = Real::from_rational(&q("9999/1000"), p);
        assert_eq!(near_ten.to_decimal_string(3), "10.0");
    }

    #[test]
    fn floor_neg_log10_is_exact_at_powers() {
        let p = 20;
        assert_eq!(Real::from_pow10(-7, p).floor_neg_log10(), 7);
        // 1.01e-7: -log10 = 6.99..., floor 6. 9.9e-8: -log10 = 7.004..., floor 7.
        let just_above = Real::from_rational(&q("101/100"), p).mul(&Real::from_pow10(-7, p));
        assert_eq!(just_above.floor_neg_log10(), 6);
        let just_below = Real::from_rational(&q("99/100"), p).mul(&Real::from_pow10(-7, p));
        assert_eq!(just_below.floor_neg_log10(), 7);
    }

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(30, 15).is_ok());
        assert_eq!(
            PrecisionContext::new(30, 5),
            Err(PrecisionError::GuardTooSmall(5))
        );
        assert_eq!(
            PrecisionContext::new(0, 15),
            Err(PrecisionError::TargetTooSmall(0))
        );
        assert_eq!(PrecisionContext::default().working_digits(), 45);
    }
}
