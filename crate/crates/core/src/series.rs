//! Unit-argument generalized hypergeometric series: construction, direct
//! summation with tail bounds, and convergence acceleration.
//!
//! Terms follow the ratio recurrence
//! `t_{n+1} = t_n * prod(a_i + n) / (prod(b_j + n) * (n + 1))`, `t_0 = 1`.
//! For `p = q + 1` the terms decay algebraically, `t_n ~ C n^-tau` with
//! `tau = 1 + sigma`, and the partial-sum remainder follows the exponent
//! ladder `N^(1-tau), N^-tau, ...` — which is exactly what the Richardson
//! table cancels and the Levin u-transform models.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gamma::pochhammer_exact;
use crate::rational::Rational;
use crate::real::{digits10, pow10, PrecisionContext, Real};

/// Default per-sum budget of term evaluations.
pub const TERM_BUDGET: u64 = 5_000_000;

/// First Richardson checkpoint and maximum doubling depth
/// (N_max = 32 * 2^16, about 2e6 terms).
pub const RICHARDSON_BASE: u64 = 32;
pub const RICHARDSON_MAX_DEPTH: u32 = 16;

/// Terminating series longer than this are summed in fixed point rather
/// than exact rationals.
const EXACT_TERMINATING_LIMIT: u64 = 10_000;

/// How a [`SumResult`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMethod {
    Direct,
    Richardson,
    Levin,
    ExactTerminating,
}

impl SumMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            SumMethod::Direct => "direct",
            SumMethod::Richardson => "richardson",
            SumMethod::Levin => "levin",
            SumMethod::ExactTerminating => "exact-terminating",
        }
    }
}

/// Value of a summed series with its (heuristic, absolute) error estimate.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Real,
    pub error_estimate: Real,
    pub terms_used: u64,
    pub method: SumMethod,
}

#[derive(Debug, Clone, Error)]
pub enum SumError {
    #[error("series has {num_params} numerator and {den_params} denominator parameters; the tail exponent needs p = q + 1")]
    WrongShape { num_params: usize, den_params: usize },
    #[error("series diverges at unit argument: parameter excess sigma = {sigma} is not positive")]
    Diverges { sigma: Rational },
    #[error("denominator parameter {param} hits a pole in term {index} before the series terminates")]
    PoleInTerms { param: Rational, index: u64 },
    #[error("term budget exhausted after {} terms (error estimate {})", partial.terms_used, partial.error_estimate)]
    BudgetExceeded { partial: SumResult },
    #[error("extrapolation stopped improving at estimate {} after {} terms", best.error_estimate, best.terms_used)]
    NoConvergence { best: SumResult },
}

/// A unit-argument pFq description: numerator and denominator parameter
/// lists; the argument is fixed at 1 for every theorem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    nums: Vec<Rational>,
    dens: Vec<Rational>,
}

impl SeriesSpec {
    /// Validates that no denominator parameter reaches a pole before a
    /// numerator parameter terminates the series.
    pub fn new(nums: Vec<Rational>, dens: Vec<Rational>) -> Result<Self, SumError> {
        let spec = SeriesSpec { nums, dens };
        let termination = spec.termination_index();
        for b in &spec.dens {
            if b.is_nonpositive_integer() {
                let pole_at = (&-b).to_i64().expect("small integer") as u64 + 1;
                // The term recurrence reaches index k+1 to observe termination,
                // so the zero must land strictly before the pole.
                let ok = matches!(termination, Some(k) if k + 1 < pole_at);
                if !ok {
                    return Err(SumError::PoleInTerms { param: b.clone(), index: pole_at });
                }
            }
        }
        Ok(spec)
    }

    pub fn numerator_params(&self) -> &[Rational] {
        &self.nums
    }

    pub fn denominator_params(&self) -> &[Rational] {
        &self.dens
    }

    /// Parameter excess `sigma = sum(dens) - sum(nums)`.
    pub fn sigma(&self) -> Rational {
        let mut s = Rational::zero();
        for b in &self.dens {
            s = &s + b;
        }
        for a in &self.nums {
            s = &s - a;
        }
        s
    }

    /// Tail exponent `tau = 1 + sigma`; requires `p = q + 1`.
    pub fn tail_exponent(&self) -> Result<Rational, SumError> {
        if self.nums.len() != self.dens.len() + 1 {
            return Err(SumError::WrongShape {
                num_params: self.nums.len(),
                den_params: self.dens.len(),
            });
        }
        Ok(&Rational::one() + &self.sigma())
    }

    /// Smallest `k` such that a numerator parameter equals `-k`
    /// (so `t_n = 0` for all `n > k`), if any.
    pub fn termination_index(&self) -> Option<u64> {
        self.nums
            .iter()
            .filter(|a| a.is_nonpositive_integer())
            .map(|a| (&-a).to_i64().expect("termination index fits") as u64)
            .min()
    }

    /// Exact rational term `t_n` from Pochhammer products (the independent
    /// cross-check for the running recurrence).
    pub fn term_exact(&self, n: u64) -> Rational {
        let mut num = Rational::one();
        for a in &self.nums {
            num = &num * &pochhammer_exact(a, n);
        }
        let mut den = pochhammer_exact(&Rational::one(), n); // n!
        for b in &self.dens {
            den = &den * &pochhammer_exact(b, n);
        }
        &num / &den
    }
}

/// Fixed-point term stream: term and running sum are integers scaled by
/// `10^frac_digits`, advanced by the exact integer ratio
/// `prod(p_i + n q_i) * prod(s_j) / (prod(r_j + n s_j) * prod(q_i) * (n+1))`
/// with one truncating division per term. Absolute error after N terms is
/// below `N` quanta. Single-consumer, sequential.
pub struct TermStream {
    num_factors: Vec<(BigInt, BigInt)>,
    den_factors: Vec<(BigInt, BigInt)>,
    ratio_num_const: BigInt,
    ratio_den_const: BigInt,
    frac_digits: u32,
    n: u64,
    term: BigInt,
    sum: BigInt,
}

impl TermStream {
    pub fn new(spec: &SeriesSpec, frac_digits: u32) -> TermStream {
        let num_factors: Vec<_> = spec
            .nums
            .iter()
            .map(|a| (a.numerator().clone(), a.denominator().clone()))
            .collect();
        let den_factors: Vec<_> = spec
            .dens
            .iter()
            .map(|b| (b.numerator().clone(), b.denominator().clone()))
            .collect();
        let mut ratio_num_const = BigInt::one();
        for (_, s) in &den_factors {
            ratio_num_const *= s;
        }
        let mut ratio_den_const = BigInt::one();
        for (_, q) in &num_factors {
            ratio_den_const *= q;
        }
        let term = pow10(frac_digits);
        TermStream {
            num_factors,
            den_factors,
            ratio_num_const,
            ratio_den_const,
            frac_digits,
            n: 0,
            term: term.clone(),
            sum: term,
        }
    }

    /// Index of the term currently held.
    pub fn index(&self) -> u64 {
        self.n
    }

    /// Step to term `n+1`; the running sum includes it afterwards.
    pub fn advance(&mut self) {
        let n = BigInt::from(self.n);
        let mut u = self.ratio_num_const.clone();
        for (p, q) in &self.num_factors {
            u *= p + q * &n;
        }
        let mut v = &self.ratio_den_const * (self.n + 1);
        for (r, s) in &self.den_factors {
            v *= r + s * &n;
        }
        self.term = if v.is_negative() {
            // Keep truncation direction independent of sign bookkeeping.
            (&self.term * -u) / -v
        } else {
            (&self.term * u) / v
        };
        self.n += 1;
        self.sum += &self.term;
    }

    pub fn term_is_zero(&self) -> bool {
        self.term.is_zero()
    }

    /// Current term as a Real at the given precision.
    pub fn term_real(&self, prec: u32) -> Real {
        Real::from_scaled(self.term.clone(), -(self.frac_digits as i64), prec)
    }

    /// Partial sum through the current term, as a Real.
    pub fn sum_real(&self, prec: u32) -> Real {
        Real::from_scaled(self.sum.clone(), -(self.frac_digits as i64), prec)
    }

    fn term_scaled(&self) -> &BigInt {
        &self.term
    }
}

/// `S_N = sum_{n=0}^{N-1} t_n` with per-term roundoff inside the working
/// precision.
pub fn partial_sum(spec: &SeriesSpec, n_terms: u64, ctx: &PrecisionContext) -> Result<Real, SumError> {
    assert!(n_terms >= 1, "partial sums need at least one term");
    let w = ctx.working_digits();
    let mut stream = TermStream::new(spec, w + 14);
    for _ in 0..n_terms - 1 {
        stream.advance();
        if stream.term_is_zero() {
            break;
        }
    }
    Ok(stream.sum_real(w))
}

/// Exact rational sum of a terminating series.
fn exact_terminating(spec: &SeriesSpec, k: u64, w: u32) -> SumResult {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for n in 0..k {
        let n_rat = Rational::from_big(BigInt::from(n), BigInt::one());
        let mut ratio_num = Rational::one();
        for a in &spec.nums {
            ratio_num = &ratio_num * &(a + &n_rat);
        }
        let mut ratio_den = Rational::from_integer(n as i64 + 1);
        for b in &spec.dens {
            ratio_den = &ratio_den * &(b + &n_rat);
        }
        term = &term * &(&ratio_num / &ratio_den);
        sum = &sum + &term;
    }
    SumResult {
        value: Real::from_rational(&sum, w),
        error_estimate: Real::zero(w),
        terms_used: k + 1,
        method: SumMethod::ExactTerminating,
    }
}

/// Terminating series: exact when short, fixed-point beyond
/// [`EXACT_TERMINATING_LIMIT`].
fn sum_terminating(spec: &SeriesSpec, k: u64, w: u32) -> Result<SumResult, SumError> {
    if k <= EXACT_TERMINATING_LIMIT {
        return Ok(exact_terminating(spec, k, w));
    }
    if k >= TERM_BUDGET {
        let partial = stream_first_terms(spec, TERM_BUDGET, w);
        return Err(SumError::BudgetExceeded { partial });
    }
    Ok(stream_first_terms(spec, k + 1, w))
}

fn stream_first_terms(spec: &SeriesSpec, n_terms: u64, w: u32) -> SumResult {
    let mut stream = TermStream::new(spec, w + 14);
    for _ in 0..n_terms - 1 {
        stream.advance();
    }
    SumResult {
        value: stream.sum_real(w),
        // n_terms truncation quanta, expressed at the value's scale.
        error_estimate: Real::from_scaled(BigInt::from(n_terms), -((w + 14) as i64), w),
        terms_used: n_terms,
        method: SumMethod::Direct,
    }
}

/// Index past any sign churn from negative non-integer numerator
/// parameters: all ratio factors positive from here on.
fn sign_stable_index(spec: &SeriesSpec) -> u64 {
    let mut idx = 0u64;
    for param in spec.nums.iter().chain(spec.dens.iter()) {
        if param.is_negative() {
            let ceil = -param.to_f64_lossy();
            idx = idx.max(ceil.ceil() as u64 + 1);
        }
    }
    idx
}

/// Direct summation with the integral-comparison tail bound
/// `|tail| <= t_N * (N/(tau-1) + 1)`.
pub fn direct_sum(spec: &SeriesSpec, ctx: &PrecisionContext, eps: &Real) -> Result<SumResult, SumError> {
    direct_sum_with_budget(spec, ctx, eps, TERM_BUDGET)
}

pub fn direct_sum_with_budget(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    eps: &Real,
    budget: u64,
) -> Result<SumResult, SumError> {
    let w = ctx.working_digits();
    if let Some(k) = spec.termination_index() {
        return sum_terminating(spec, k, w);
    }
    let sigma = spec.sigma();
    let p_gt_q = spec.nums.len() > spec.dens.len();
    if p_gt_q && !sigma.is_positive() {
        return Err(SumError::Diverges { sigma });
    }
    if spec.nums.len() > spec.dens.len() + 1 {
        return Err(SumError::Diverges { sigma });
    }

    let frac = w + 14;
    let mut stream = TermStream::new(spec, frac);
    // eps as a scaled integer; zero means "run to the budget".
    let eps_scaled = real_to_scaled(eps, frac);
    let stable_from = sign_stable_index(spec);

    // tau - 1 = sigma = sn/sd for the p = q+1 shape.
    let (sn, sd) = (sigma.numerator().clone(), sigma.denominator().clone());

    loop {
        if stream.index() + 1 >= budget {
            let value = stream.sum_real(w);
            let bound = tail_bound_scaled(&stream, p_gt_q, &sn, &sd);
            let partial = SumResult {
                value,
                error_estimate: Real::from_scaled(bound, -(frac as i64), w),
                terms_used: stream.index() + 1,
                method: SumMethod::Direct,
            };
            return Err(SumError::BudgetExceeded { partial });
        }
        stream.advance();
        let n = stream.index();
        if n >= stable_from && n % 32 == 0 {
            let bound = tail_bound_scaled(&stream, p_gt_q, &sn, &sd);
            if bound <= eps_scaled {
                return Ok(SumResult {
                    value: stream.sum_real(w),
                    error_estimate: Real::from_scaled(bound, -(frac as i64), w),
                    terms_used: n + 1,
                    method: SumMethod::Direct,
                });
            }
        }
    }
}

/// Scaled tail bound at the current stream position.
fn tail_bound_scaled(stream: &TermStream, p_eq_q1: bool, sn: &BigInt, sd: &BigInt) -> BigInt {
    let t = stream.term_scaled().abs();
    if p_eq_q1 {
        // t_N * (N * sd / sn + 1), rounded up.
        let n = BigInt::from(stream.index());
        (&t * (n * sd + sn)) / sn + 1u8 + &t
    } else {
        // Factorial-like decay: the tail is below a couple of further terms.
        t * 4u8
    }
}

fn real_to_scaled(x: &Real, frac: u32) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    // floor(|x| * 10^frac)
    let s = x.to_decimal_string(frac + 20);
    scaled_from_decimal(&s, frac)
}

fn scaled_from_decimal(s: &str, frac: u32) -> BigInt {
    // Parse our own decimal output: optional sign, digits, optional '.',
    // optional exponent.
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: BigInt = format!("{int_part}{frac_part}").parse().expect("digits");
    let shift = exp10 - frac_part.len() as i64 + frac as i64;
    if shift >= 0 {
        digits * pow10(shift as u32)
    } else {
        digits / pow10((-shift) as u32)
    }
}

/// Validated inputs for the accelerated paths.
fn acceleration_preflight(spec: &SeriesSpec) -> Result<Rational, SumError> {
    let tau = spec.tail_exponent()?;
    let sigma = spec.sigma();
    if !sigma.is_positive() {
        return Err(SumError::Diverges { sigma });
    }
    Ok(tau)
}

/// Richardson extrapolation of partial sums at checkpoints `32 * 2^j`
/// against the exact exponent ladder `tau-1+k`. Terms are eventually of one
/// sign for every convergent rational-parameter spec, which is what the
/// ladder model needs.
pub fn richardson_sum(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    target_digits: u32,
) -> Result<SumResult, SumError> {
    richardson_sum_with_depth(spec, ctx, target_digits, RICHARDSON_MAX_DEPTH)
}

pub fn richardson_sum_with_depth(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    target_digits: u32,
    max_depth: u32,
) -> Result<SumResult, SumError> {
    let w = ctx.working_digits();
    if let Some(k) = spec.termination_index() {
        return sum_terminating(spec, k, w);
    }
    let tau = acceleration_preflight(spec)?;

    let table_prec = w + 18;
    let frac = table_prec + 14;
    let mut stream = TermStream::new(spec, frac);

    // 2^(tau-1+m) for each ladder level.
    let two = Real::from_u64(2, table_prec);
    let ladder_pow = |m: u32| -> Real {
        let e = &(&tau - &Rational::one()) + &Rational::from_integer(m as i64);
        two.pow_rational(&e)
    };

    let tol = Real::from_pow10(-(target_digits as i64), table_prec);
    let floor_mag = -(w as i64) - 6;
    let one = Real::one(table_prec);

    let mut diag: Vec<Real> = Vec::new();
    let mut pows: Vec<Real> = Vec::new();
    let mut best: Option<(Real, Real, u64)> = None; // (value, est, terms)
    let mut worse_streak = 0u32;

    for depth in 0..=max_depth {
        let checkpoint = RICHARDSON_BASE << depth;
        while stream.index() < checkpoint - 1 {
            stream.advance();
        }
        let x = stream.sum_real(table_prec);

        let mut column = Vec::with_capacity(diag.len() + 1);
        column.push(x);
        for m in 0..diag.len() {
            if pows.len() <= m {
                pows.push(ladder_pow(m as u32));
            }
            let p = &pows[m];
            let next = p
                .mul(&column[m])
                .sub(&diag[m])
                .div(&p.sub(&one));
            column.push(next);
        }

        if column.len() >= 2 {
            let value = column.last().expect("nonempty").clone();
            let prev = &column[column.len() - 2];
            let raw = value.sub(prev).abs();
            let floor = value.abs().mul(&Real::from_pow10(floor_mag, table_prec));
            let est = raw.mul_small(8).add(&floor);
            let terms = stream.index() + 1;
            let improved = match &best {
                Some((_, best_est, _)) => est.cmp_value(best_est) == std::cmp::Ordering::Less,
                None => true,
            };
            if improved {
                best = Some((value.clone(), est.clone(), terms));
                worse_streak = 0;
            } else {
                worse_streak += 1;
            }
            let tol_abs = value.abs().mul(&tol);
            if est.cmp_value(&tol_abs) != std::cmp::Ordering::Greater {
                return Ok(SumResult {
                    value: value.with_precision(w),
                    error_estimate: est.with_precision(w),
                    terms_used: terms,
                    method: SumMethod::Richardson,
                });
            }
            if worse_streak >= 3 {
                break;
            }
        }
        diag = column;
    }

    let (value, est, terms) = best.expect("depth >= 1 produced an estimate");
    Err(SumError::NoConvergence {
        best: SumResult {
            value: value.with_precision(w),
            error_estimate: est.with_precision(w),
            terms_used: terms,
            method: SumMethod::Richardson,
        },
    })
}

/// Levin u-transform on the leading partial sums: remainder model
/// `omega_n = (1+n) t_n`, diagonal at n = 0. Independent of the Richardson
/// route in both sampling and remainder model, which is why the verifier
/// uses it as the second opinion.
pub fn levin_sum(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    target_digits: u32,
) -> Result<SumResult, SumError> {
    let w = ctx.working_digits();
    if let Some(k) = spec.termination_index() {
        return sum_terminating(spec, k, w);
    }
    acceleration_preflight(spec)?;

    let max_order = ((14 * (target_digits + 15)) / 10 + 8).clamp(24, 160) as usize;
    // Binomial-weight cancellation costs ~0.65 digits per order.
    let internal = w + (65 * max_order as u32) / 100 + 10;
    let frac = internal + 14;

    let mut stream = TermStream::new(spec, frac);
    let mut inv_omega: Vec<Real> = Vec::with_capacity(max_order + 1);
    let mut s_over_omega: Vec<Real> = Vec::with_capacity(max_order + 1);
    let one = Real::one(internal);
    for j in 0..=max_order {
        let t = stream.term_real(internal);
        assert!(!t.is_zero(), "non-terminating series has nonzero terms");
        let omega = t.mul_small(j as i64 + 1);
        let s = stream.sum_real(internal);
        inv_omega.push(one.div(&omega));
        s_over_omega.push(s.div(&omega));
        stream.advance();
    }
    let terms_used = stream.index() + 1;

    let tol = Real::from_pow10(-(target_digits as i64), internal);
    let floor_mag = -(w as i64) - 6;
    let mut prev: Option<Real> = None;
    let mut best: Option<(Real, Real)> = None;
    let mut worse_streak = 0u32;

    for k in 1..=max_order {
        let mut num = Real::zero(internal);
        let mut den = Real::zero(internal);
        let mut binom = BigInt::one();
        for j in 0..=k {
            // (-1)^j C(k,j) (1+j)^(k-1)
            let mut c = &binom * BigInt::from(j as u64 + 1).pow(k as u32 - 1);
            if j % 2 == 1 {
                c = -c;
            }
            num = num.add(&s_over_omega[j].mul_bigint(&c));
            den = den.add(&inv_omega[j].mul_bigint(&c));
            binom = binom * BigInt::from((k - j) as u64) / BigInt::from(j as u64 + 1);
        }
        if den.is_zero() {
            continue;
        }
        let value = num.div(&den);
        if let Some(p) = prev {
            let raw = value.sub(&p).abs();
            let floor = value.abs().mul(&Real::from_pow10(floor_mag, internal));
            let est = raw.mul_small(8).add(&floor);
            let improved = match &best {
                Some((_, best_est)) => est.cmp_value(best_est) == std::cmp::Ordering::Less,
                None => true,
            };
            if improved {
                best = Some((value.clone(), est.clone()));
                worse_streak = 0;
            } else {
                worse_streak += 1;
            }
            let tol_abs = value.abs().mul(&tol);
            if est.cmp_value(&tol_abs) != std::cmp::Ordering::Greater {
                return Ok(SumResult {
                    value: value.with_precision(w),
                    error_estimate: est.with_precision(w),
                    terms_used,
                    method: SumMethod::Levin,
                });
            }
            if worse_streak >= 4 {
                break;
            }
        }
        prev = Some(value);
    }

    let (value, est) = best.expect("at least one order evaluated");
    Err(SumError::NoConvergence {
        best: SumResult {
            value: value.with_precision(w),
            error_estimate: est.with_precision(w),
            terms_used,
            method: SumMethod::Levin,
        },
    })
}

/// Driver: exact for terminating series, direct summation when the tail
/// decays fast enough to hit the target inside the budget, otherwise
/// Richardson with a Levin cross-check folded into the error estimate.
pub fn sum_unit_argument(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    target_digits: u32,
) -> Result<SumResult, SumError> {
    let w = ctx.working_digits();
    if let Some(k) = spec.termination_index() {
        return sum_terminating(spec, k, w);
    }
    let eps = Real::from_pow10(-(target_digits as i64 + 2), w);
    if spec.nums.len() <= spec.dens.len() {
        return direct_sum(spec, ctx, &eps);
    }
    let tau = acceleration_preflight(spec)?;

    // Estimated direct-summation cost: N ~ ((tau-1) eps)^(-1/(tau-1)).
    let sigma_f = (&tau - &Rational::one()).to_f64_lossy();
    let log10_n = ((target_digits as f64 + 2.0) - sigma_f.log10()) / sigma_f;
    if sigma_f >= 3.0 && log10_n <= (TERM_BUDGET as f64).log10() {
        return direct_sum(spec, ctx, &eps);
    }

    let richardson = richardson_sum(spec, ctx, target_digits);
    let levin = levin_sum(spec, ctx, target_digits);
    match (richardson, levin) {
        (Ok(r), Ok(l)) => {
            let discrepancy = r.value.sub(&l.value).abs();
            let est = max_real(&max_real(&r.error_estimate, &l.error_estimate), &discrepancy);
            Ok(SumResult {
                value: r.value,
                error_estimate: est,
                terms_used: r.terms_used + l.terms_used,
                method: SumMethod::Richardson,
            })
        }
        (Ok(r), Err(SumError::NoConvergence { best })) => {
            let discrepancy = r.value.sub(&best.value).abs();
            let est = max_real(&r.error_estimate, &discrepancy);
            Ok(SumResult {
                value: r.value,
                error_estimate: est,
                terms_used: r.terms_used + best.terms_used,
                method: SumMethod::Richardson,
            })
        }
        (Ok(_), Err(e)) => Err(e),
        (Err(SumError::NoConvergence { best }), Ok(l)) => {
            let discrepancy = l.value.sub(&best.value).abs();
            let est = max_real(&l.error_estimate, &discrepancy);
            Ok(SumResult {
                value: l.value,
                error_estimate: est,
                terms_used: l.terms_used + best.terms_used,
                method: SumMethod::Levin,
            })
        }
        (Err(e), _) => Err(e),
    }
}

fn max_real(a: &Real, b: &Real) -> Real {
    if a.cmp_value(b) == std::cmp::Ordering::Less {
        b.clone()
    } else {
        a.clone()
    }
}

/// Exposed for tests: digit count of the scaled accumulator type.
#[doc(hidden)]
pub fn scaled_digits(x: &BigInt) -> u32 {
    digits10(x)
}
