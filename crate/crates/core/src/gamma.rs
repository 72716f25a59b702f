//! Arbitrary-precision Gamma function, Pochhammer symbols, and Gamma ratios.
//!
//! The evaluation contract is accuracy, not a fixed algorithm: arguments are
//! promoted with the functional equation until an asymptotic log-Gamma
//! expansion (exact Bernoulli coefficients, next-term truncation bound)
//! converges below the working precision; negative non-integer arguments go
//! through the reflection formula with exact rational range reduction.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::real::{pi, sin_pi_rational, PrecisionContext, Real};

/// Argument outside the Gamma domain: zero or a negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("gamma pole at {argument}")]
pub struct PoleError {
    pub argument: String,
}

/// Real argument to Gamma, either exact or already rounded.
#[derive(Clone, Debug)]
pub enum GammaArgument {
    Rational(Rational),
    Real(Real),
}

/// Domain classification of a [`GammaArgument`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgumentClass {
    Positive,
    NegativeNonInteger,
    Pole,
}

impl GammaArgument {
    pub fn classification(&self) -> ArgumentClass {
        match self {
            GammaArgument::Rational(q) => {
                if q.is_nonpositive_integer() {
                    ArgumentClass::Pole
                } else if q.is_positive() {
                    ArgumentClass::Positive
                } else {
                    ArgumentClass::NegativeNonInteger
                }
            }
            GammaArgument::Real(x) => {
                if x.is_zero() || (!x.is_positive() && x.is_integer()) {
                    ArgumentClass::Pole
                } else if x.is_positive() {
                    ArgumentClass::Positive
                } else {
                    ArgumentClass::NegativeNonInteger
                }
            }
        }
    }
}

impl From<Rational> for GammaArgument {
    fn from(q: Rational) -> Self {
        GammaArgument::Rational(q)
    }
}

impl From<Real> for GammaArgument {
    fn from(x: Real) -> Self {
        GammaArgument::Real(x)
    }
}

// Exact Bernoulli numbers B_0, B_1, ... via the binomial recurrence,
// grown on demand. Exact values keep every precision deterministic.
static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn bernoulli(m: usize) -> Rational {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache");
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= m {
        let n = cache.len(); // computing B_n
        // B_n = -1/(n+1) * sum_{k=0}^{n-1} C(n+1, k) B_k
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (k, b_k) in cache.iter().enumerate() {
            if !b_k.is_zero() {
                acc = &acc + &(&Rational::from_big(binom.clone(), BigInt::one()) * b_k);
            }
            // C(n+1, k+1) = C(n+1, k) * (n+1-k) / (k+1)
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        let b_n = -(&acc / &Rational::from_integer(n as i64 + 1));
        cache.push(b_n);
    }
    cache[m].clone()
}

/// log Gamma by the asymptotic expansion, valid once `y` is large enough for
/// the requested precision. Returns `None` if the series bottoms out before
/// reaching the bound (caller promotes further and retries).
fn ln_gamma_asymptotic(y: &Real, prec: u32) -> Option<Real> {
    let half = Real::from_rational(&Rational::new(1, 2), prec);
    let ln_y = y.ln();
    let two_pi = pi(prec).mul_small(2);
    let mut acc = y.sub(&half).mul(&ln_y).sub(y).add(&two_pi.ln().mul(&half));

    let y_inv = Real::one(prec).div(y);
    let y_inv2 = y_inv.mul(&y_inv);
    let mut pw = y_inv;
    let stop_mag = -(prec as i64) - 2;
    let mut prev_mag = i64::MAX;
    let mut n = 1usize;
    loop {
        let b = bernoulli(2 * n);
        let coeff = &b / &Rational::from_integer((2 * n * (2 * n - 1)) as i64);
        let term = Real::from_rational(&coeff, prec).mul(&pw);
        if term.is_zero() {
            return Some(acc);
        }
        let mag = term.magnitude10();
        if mag < stop_mag {
            return Some(acc);
        }
        if mag >= prev_mag {
            // Divergent tail reached before the bound: y was too small.
            return None;
        }
        prev_mag = mag;
        acc = acc.add(&term);
        pw = pw.mul(&y_inv2);
        n += 1;
    }
}

/// Promotion threshold: the asymptotic series reaches `10^-(prec+2)` once
/// `y >= ~0.367 * prec`; keep a margin.
fn promotion_threshold(prec: u32) -> u32 {
    (2 * prec) / 5 + 6
}

/// log Gamma of a positive rational, with the promotion product returned as
/// an exact rational: `Gamma(x) = exp(ln_gamma) / product`.
fn ln_gamma_promoted(x: &Rational, prec: u32) -> (Real, Rational) {
    let mut threshold = promotion_threshold(prec);
    loop {
        let mut product = Rational::one();
        let mut shift = 0i64;
        // smallest k with x + k >= threshold
        let x_f = x.to_f64_lossy();
        if x_f < threshold as f64 {
            shift = (threshold as f64 - x_f).ceil() as i64;
        }
        for i in 0..shift {
            product = &product * &(x + &Rational::from_integer(i));
        }
        let y = Real::from_rational(&(x + &Rational::from_integer(shift)), prec);
        match ln_gamma_asymptotic(&y, prec) {
            Some(ln_g) => return (ln_g, product),
            None => threshold += 8,
        }
    }
}

/// Gamma of a positive Real, promoting in Real arithmetic.
fn gamma_positive_real(x: &Real, prec: u32) -> Real {
    let mut threshold = promotion_threshold(prec);
    loop {
        let mut product = Real::one(prec);
        let mut y = x.with_precision(prec);
        let x_f = x.to_f64_lossy();
        let shift = if x_f < threshold as f64 {
            (threshold as f64 - x_f).ceil() as i64
        } else {
            0
        };
        for i in 0..shift {
            product = product.mul(&y.add(&Real::from_i64(i, prec)));
        }
        y = y.add(&Real::from_i64(shift, prec));
        if let Some(ln_g) = ln_gamma_asymptotic(&y, prec) {
            return ln_g.exp().div(&product);
        }
        threshold += 8;
    }
}

/// Gamma function. Negative non-integer arguments use the reflection formula
/// `Gamma(z) Gamma(1-z) = pi / sin(pi z)`.
pub fn gamma(x: &GammaArgument, ctx: &PrecisionContext) -> Result<Real, PoleError> {
    let w = ctx.working_digits();
    match x.classification() {
        ArgumentClass::Pole => Err(PoleError {
            argument: match x {
                GammaArgument::Rational(q) => q.to_string(),
                GammaArgument::Real(v) => v.to_string(),
            },
        }),
        ArgumentClass::Positive => Ok(match x {
            GammaArgument::Rational(q) => gamma_positive_rational(q, w + 8).with_precision(w),
            GammaArgument::Real(v) => gamma_positive_real(v, w + 8).with_precision(w),
        }),
        ArgumentClass::NegativeNonInteger => {
            let p = w + 8;
            let value = match x {
                GammaArgument::Rational(q) => {
                    let sin_term = sin_pi_rational(q, p);
                    let complement = &Rational::one() - q;
                    pi(p).div(&sin_term.mul(&gamma_positive_rational(&complement, p)))
                }
                GammaArgument::Real(v) => {
                    let sin_term = pi(p).mul(&v.with_precision(p)).sin();
                    let complement = Real::one(p).sub(v);
                    pi(p).div(&sin_term.mul(&gamma_positive_real(&complement, p)))
                }
            };
            Ok(value.with_precision(w))
        }
    }
}

fn gamma_positive_rational(x: &Rational, prec: u32) -> Real {
    debug_assert!(x.is_positive());
    // Positive integers are exact factorials.
    if let Some(n) = x.to_i64() {
        if n <= 10_000 {
            let mut f = BigInt::one();
            for i in 2..n {
                f *= i;
            }
            return Real::from_bigint(f, prec);
        }
    }
    let (ln_g, product) = ln_gamma_promoted(x, prec);
    ln_g.exp().div(&Real::from_rational(&product, prec))
}

/// Convenience entry for exact rational arguments.
pub fn gamma_rational(x: &Rational, ctx: &PrecisionContext) -> Result<Real, PoleError> {
    gamma(&GammaArgument::Rational(x.clone()), ctx)
}

/// `Gamma(x)/Gamma(y)` computed in log space, so nearby arguments do not
/// cancel: the log-space error is absolute, hence relative after exp.
pub fn gamma_ratio(x: &Rational, y: &Rational, ctx: &PrecisionContext) -> Result<Real, PoleError> {
    for v in [x, y] {
        if v.is_nonpositive_integer() {
            return Err(PoleError { argument: v.to_string() });
        }
    }
    let w = ctx.working_digits();
    let p = w + 8;
    if x.is_positive() && y.is_positive() {
        let (ln_x, prod_x) = ln_gamma_promoted(x, p);
        let (ln_y, prod_y) = ln_gamma_promoted(y, p);
        let bracket = &prod_y / &prod_x;
        Ok(ln_x
            .sub(&ln_y)
            .exp()
            .mul(&Real::from_rational(&bracket, p))
            .with_precision(w))
    } else {
        let gx = gamma(&GammaArgument::Rational(x.clone()), ctx)?;
        let gy = gamma(&GammaArgument::Rational(y.clone()), ctx)?;
        Ok(gx.div(&gy))
    }
}

/// Largest `n` for which Pochhammer symbols go through the exact rational
/// product; beyond this, `gamma_ratio` is both faster and stable.
pub const POCHHAMMER_EXACT_LIMIT: u64 = 1_000_000;

/// Product of `(num + i*den)` over `i in [lo, hi)`, by balanced splitting.
fn range_product(num: &BigInt, den: &BigInt, lo: u64, hi: u64) -> BigInt {
    debug_assert!(lo < hi);
    if hi - lo <= 8 {
        let mut acc = BigInt::one();
        for i in lo..hi {
            acc *= num + den * BigInt::from(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(num, den, lo, mid) * range_product(num, den, mid, hi)
}

/// Exact rising factorial `(a)_n` as a rational.
pub fn pochhammer_exact(a: &Rational, n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if a.is_nonpositive_integer() {
        if let Some(k) = (&-a).to_i64() {
            if n > k as u64 {
                return Rational::zero();
            }
        }
    }
    let num = range_product(a.numerator(), a.denominator(), 0, n);
    let den = num_traits::Pow::pow(a.denominator(), n as usize);
    Rational::from_big(num, den)
}

/// `(a)_n` rounded once from the exact product for moderate `n`, else via
/// `Gamma(a+n)/Gamma(a)`.
pub fn pochhammer(a: &Rational, n: u64, ctx: &PrecisionContext) -> Real {
    let w = ctx.working_digits();
    if n == 0 {
        return Real::one(w);
    }
    if n <= POCHHAMMER_EXACT_LIMIT || !a.is_positive() {
        return Real::from_rational(&pochhammer_exact(a, n), w);
    }
    let shifted = a + &Rational::from_big(BigInt::from(n), BigInt::one());
    gamma_ratio(&shifted, a, ctx).expect("positive arguments have no poles")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ctx30() -> PrecisionContext {
        PrecisionContext::with_target(30)
    }

    fn rel_err(a: &Real, b: &Real) -> Real {
        a.sub(b).abs().div(&b.abs())
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let ctx = ctx30();
        let g = gamma_rational(&q("1/2"), &ctx).unwrap();
        assert_eq!(
            g.to_decimal_string(30),
            "1.77245385090551602729816748334"
        );
        let sqrt_pi = pi(ctx.working_digits()).sqrt();
        let rel = rel_err(&g, &sqrt_pi);
        assert!(rel.is_zero() || rel.magnitude10() < -40);
    }

    #[test]
    fn gamma_integers_are_factorials() {
        let ctx = ctx30();
        let g5 = gamma_rational(&q("5"), &ctx).unwrap();
        assert_eq!(g5.to_decimal_string(10), "24.00000000");
        let g1 = gamma_rational(&q("1"), &ctx).unwrap();
        assert_eq!(g1.to_decimal_string(5), "1.0000");
    }

    #[test]
    fn gamma_three_quarters_frozen_digits() {
        // Oracle: reflection pair Gamma(1/4)Gamma(3/4) = pi*sqrt(2), checked
        // below; digits cross-checked against an independent evaluation.
        let ctx = ctx30();
        let g = gamma_rational(&q("3/4"), &ctx).unwrap();
        assert_eq!(g.to_decimal_string(11), "1.2254167025");
        assert_eq!(
            g.to_decimal_string(30),
            "1.22541670246517764512909830336"
        );
        let g14 = gamma_rational(&q("1/4"), &ctx).unwrap();
        let w = ctx.working_digits();
        let lhs = g.mul(&g14);
        let rhs = pi(w).mul(&Real::from_u64(2, w).sqrt());
        let rel = rel_err(&lhs, &rhs);
        assert!(rel.is_zero() || rel.magnitude10() < -(w as i64 - 4));
    }

    #[test]
    fn gamma_pole_errors() {
        let ctx = ctx30();
        for s in ["0", "-1", "-7"] {
            assert!(gamma_rational(&q(s), &ctx).is_err(), "no pole for {s}");
        }
        assert!(gamma_rational(&q("-1/2"), &ctx).is_ok());
    }

    #[test]
    fn reflection_at_negative_arguments() {
        let ctx = ctx30();
        let w = ctx.working_digits();
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma_rational(&q("-1/2"), &ctx).unwrap();
        let expect = pi(w).sqrt().mul_small(-2);
        let rel = rel_err(&g, &expect);
        assert!(rel.magnitude10() < -(ctx.target_digits() as i64 + 2));
    }

    #[test]
    fn functional_equation_spot_checks() {
        let ctx = ctx30();
        for s in ["1/3", "7/5", "29/7", "41/3", "99/8"] {
            let x = q(s);
            let left = gamma_rational(&(&x + &Rational::one()), &ctx).unwrap();
            let right = gamma_rational(&x, &ctx).unwrap().mul(&Real::from_rational(
                &x,
                ctx.working_digits(),
            ));
            let rel = rel_err(&left, &right);
            assert!(
                rel.is_zero() || rel.magnitude10() < -(ctx.target_digits() as i64 + 2),
                "functional equation fails at {s}: rel 10^{}",
                rel.magnitude10()
            );
        }
    }

    #[test]
    fn gamma_ratio_functional_equation() {
        let ctx = ctx30();
        // Gamma(z+1)/Gamma(z) = z
        let r = gamma_ratio(&q("9/4"), &q("5/4"), &ctx).unwrap();
        assert_eq!(r.to_decimal_string(10), "1.250000000");
        let r2 = gamma_ratio(&q("5/4"), &q("1/4"), &ctx).unwrap();
        assert_eq!(r2.to_decimal_string(10), "0.2500000000");
    }

    #[test]
    fn gamma_ratio_close_arguments() {
        // Gamma(9/4)/Gamma(7/4): frozen from the direct-evaluation oracle.
        let ctx = ctx30();
        let r = gamma_ratio(&q("9/4"), &q("7/4"), &ctx).unwrap();
        assert_eq!(r.to_decimal_string(20), "1.2327812996619328718");
        let g1 = gamma_rational(&q("9/4"), &ctx).unwrap();
        let g2 = gamma_rational(&q("7/4"), &ctx).unwrap();
        let rel = rel_err(&r, &g1.div(&g2));
        assert!(rel.is_zero() || rel.magnitude10() < -(ctx.target_digits() as i64 + 4));
    }

    #[test]
    fn pochhammer_small_cases() {
        let ctx = ctx30();
        assert_eq!(pochhammer(&q("7/3"), 0, &ctx).to_decimal_string(5), "1.0000");
        assert_eq!(pochhammer(&q("1"), 5, &ctx).to_decimal_string(6), "120.000");
        assert_eq!(pochhammer_exact(&q("1/2"), 2), q("3/4"));
        assert_eq!(pochhammer_exact(&q("-3"), 2), q("6"));
        assert_eq!(pochhammer_exact(&q("-3"), 4), q("0"));
        assert_eq!(pochhammer_exact(&q("-3"), 5), q("0"));
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let ctx = ctx30();
        let a = q("3/7");
        let n = 250u64;
        let direct = pochhammer(&a, n, &ctx);
        let shifted = &a + &Rational::from_integer(n as i64);
        let via_gamma = gamma_ratio(&shifted, &a, &ctx).unwrap();
        let rel = direct.sub(&via_gamma).abs().div(&via_gamma);
        assert!(rel.is_zero() || rel.magnitude10() < -(ctx.target_digits() as i64 + 2));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q("1"));
        assert_eq!(bernoulli(1), q("-1/2"));
        assert_eq!(bernoulli(2), q("1/6"));
        assert_eq!(bernoulli(4), q("-1/30"));
        assert_eq!(bernoulli(12), q("-691/2730"));
        assert_eq!(bernoulli(3), q("0"));
    }
}
