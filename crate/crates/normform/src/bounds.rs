//! Rigorous evaluation of the linear form in logarithms and the derived
//! search caps.
//!
//! With s the real cube root of t^3 - 1 and w a primitive cube root of unity,
//! the ratio alpha = (t - w*s)/(t - w^2*s) has unit modulus, and the argument
//! of (-1/w) * alpha^m measures how close the conjugate terms of the unit
//! equation come to cancelling. The linear form
//!
//! ```text
//! Lambda_1 = m*log(alpha) + i*pi/3 - b*(2*pi*i/3)
//! ```
//!
//! (principal branch, b the integer minimizing |Lambda_1|) obeys two bounds:
//! an elementary upper bound that collapses, for pairs coming from the unit
//! equation, to `6/3^(m/4) * s^(2-m) + 2(t-s)^m/(sqrt(3) s^m)`, and a lower
//! bound from Laurent's two-variable theorem with degree D = 3,
//! log A1 = log(t^2+s^2+st)/2 and log A2 = 2*pi/9. Combining the two caps the
//! exponent at m <= 225676, and the congruence conditions then cap the
//! parameter at t <= 2942 and finally t <= 352. All float work here is
//! outward-rounded; every inequality verdict requires the enclosures to
//! separate, with the working precision doubling up to [`MAX_PREC`] before
//! the operation reports failure.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, RealCtx};

/// Default working precision in bits of mantissa.
pub const DEFAULT_PREC: usize = 160;
/// Precision ceiling for automatic escalation.
pub const MAX_PREC: usize = 2048;
/// The exponent cap [`derive_m_max`] computes; callers may assume it to skip
/// the derivation.
pub const DERIVED_M_MAX: u64 = 225_676;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    /// The enclosures would not separate (or an integer could not be pinned
    /// down) even at [`MAX_PREC`] bits.
    #[error("interval enclosures inconclusive at {0} bits")]
    InconclusivePrecision(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Working precisions to try, doubling from `start` up to [`MAX_PREC`].
pub(crate) fn escalation(start: usize) -> impl Iterator<Item = usize> {
    let mut p = start.max(32);
    std::iter::from_fn(move || {
        if p == 0 {
            return None;
        }
        let cur = p;
        p = if cur >= MAX_PREC { 0 } else { (cur * 2).min(MAX_PREC) };
        Some(cur)
    })
}

/// Enclosure of s = (t^3 - 1)^(1/3).
pub(crate) fn s_interval(cx: &mut RealCtx, t: u64) -> Interval {
    let d = BigUint::from(t).pow(3) - 1u32;
    let d = cx.bigint(&d.into());
    cx.cbrt(&d)
}

/// Enclosure of u = t^2 + s^2 + s*t = |t - w*s|^2.
pub(crate) fn u_interval(cx: &mut RealCtx, t: u64) -> Interval {
    let s = s_interval(cx, t);
    let t_i = cx.uint(t);
    let t2 = cx.mul(&t_i, &t_i);
    let s2 = cx.mul(&s, &s);
    let st = cx.mul(&s, &t_i);
    cx.add(&cx.add(&t2, &s2), &st)
}

/// One evaluation of the linear form at a pair (t, m).
#[derive(Debug, Clone)]
pub struct Lambda1Evaluation {
    pub t: u64,
    pub m: u64,
    /// The integer multiple of 2*pi/3 minimizing |Lambda_1|; always
    /// |b| <= m/2 + 1.
    pub b: i64,
    /// Enclosure of |Lambda_1|.
    pub lambda1_abs: Interval,
    /// Enclosure of the unconditional upper bound
    /// 2|w(t-ws)^m + w^2(t-w^2 s)^m| / (t^2+s^2+st)^(m/2), the first member
    /// of the upper-bound chain; |Lambda_1| never exceeds it.
    pub upper_bound: Interval,
    /// Enclosure of Laurent's lower bound for log|Lambda_1|.
    pub laurent_lower: Interval,
    /// Precision (bits) at which the evaluation converged.
    pub precision: usize,
}

/// Evaluate the linear form. `prec` sets both the starting precision and the
/// width tolerance 2^(58 - prec) on the |Lambda_1| enclosure.
pub fn eval_lambda1(t: u64, m: u64, prec: usize) -> Result<Lambda1Evaluation, BoundsError> {
    if t < 2 || m < 1 {
        return Err(BoundsError::InvalidInput(format!("need t >= 2, m >= 1, got t={t}, m={m}")));
    }
    let tol_exp = prec.saturating_sub(58).max(32) as u64;
    let mut last = prec;
    for p in escalation(prec) {
        last = p;
        let mut cx = RealCtx::new(p);
        let tol = cx.pow2_neg(tol_exp);

        // theta = arg((t - w*s)/(t - w^2*s)) = -2*atan(s*sqrt(3)/(2t + s))
        let s = s_interval(&mut cx, t);
        let sqrt3 = cx.sqrt(&cx.int(3));
        let num = cx.mul(&s, &sqrt3);
        let den = cx.add(&cx.uint(2 * t), &s);
        let half_arg = cx.atan(&cx.div(&num, &den));
        let theta = cx.neg(&cx.mul(&cx.int(2), &half_arg));

        let pi = cx.pi();
        let third_pi = cx.div(&pi, &cx.int(3));
        let two_third_pi = cx.mul(&third_pi, &cx.int(2));
        let two_pi = cx.mul(&pi, &cx.int(2));

        // psi = m*theta + pi/3, the total argument including the -1/w factor
        let m_i = cx.uint(m);
        let psi = cx.add(&cx.mul(&m_i, &theta), &third_pi);

        let Some(b) = cx.nearest_int(&cx.div(&psi, &two_third_pi)) else {
            continue;
        };
        let lambda = cx.sub_multiple(&psi, b, &two_third_pi);
        let lambda1_abs = cx.abs(&lambda);
        if !(cx.width(&lambda1_abs) < *tol.hi()) {
            continue;
        }

        // Unconditional upper bound: 4|sin(psi/2)| with psi reduced mod 2*pi
        // into (-pi, pi], so the half-angle stays on a branch where the sine
        // enclosure is tight.
        let Some(j) = cx.nearest_int(&cx.div(&psi, &two_pi)) else {
            continue;
        };
        let psi_reduced = cx.sub_multiple(&psi, j, &two_pi);
        let half = cx.div(&psi_reduced, &cx.int(2));
        let sin_half = cx.sin(&half);
        let upper_bound = cx.mul(&cx.int(4), &cx.abs(&sin_half));

        let laurent = laurent_lower_in(&mut cx, t, m);

        debug_assert!(b.unsigned_abs() <= m / 2 + 1, "|b| <= m/2 + 1 violated");
        return Ok(Lambda1Evaluation {
            t,
            m,
            b,
            lambda1_abs,
            upper_bound,
            laurent_lower: laurent,
            precision: p,
        });
    }
    Err(BoundsError::InconclusivePrecision(last))
}

/// Closed-form member of the upper-bound chain,
/// `6/3^(m/4) * s^(2-m) + 2(t-s)^m / (sqrt(3) s^m)`. For pairs satisfying
/// the unit equation this also bounds |Lambda_1|; for arbitrary pairs only
/// the [`Lambda1Evaluation::upper_bound`] member does.
pub fn lambda1_upper(t: u64, m: u64, prec: usize) -> Interval {
    assert!(t >= 2 && m >= 3, "defined for t >= 2, m >= 3");
    let mut cx = RealCtx::new(prec);
    let s = s_interval(&mut cx, t);
    let ln_s = cx.ln(&s);
    let m_i = i64::try_from(m).expect("m fits i64");

    // 6 * 3^(-m/4) * s^(2-m)
    let three_pow = cx.pow_ratio(&cx.int(3), -m_i, 4);
    let s_pow = {
        let e = cx.mul(&cx.int(2 - m_i), &ln_s);
        cx.exp(&e)
    };
    let term1 = cx.mul(&cx.int(6), &cx.mul(&three_pow, &s_pow));

    // 2 * (t-s)^m / (sqrt(3) * s^m) = (2/sqrt(3)) * exp(m*(ln(t-s) - ln s))
    let t_minus_s = cx.sub(&cx.uint(t), &s);
    let ln_ts = cx.ln(&t_minus_s);
    let diff = cx.sub(&ln_ts, &ln_s);
    let pow = {
        let e = cx.mul(&cx.int(m_i), &diff);
        cx.exp(&e)
    };
    let sqrt3 = cx.sqrt(&cx.int(3));
    let term2 = cx.div(&cx.mul(&cx.int(2), &pow), &sqrt3);

    cx.add(&term1, &term2)
}

/// Laurent's lower bound for log|Lambda_1| with the specialization D = 3,
/// log A1 = log(t^2+s^2+st)/2, log A2 = 2*pi/9 and
/// b' = 2m/(3 log(t^2+s^2+st)) + 3m/(2*pi):
///
/// ```text
/// -22.8 * 3^4 * max{log b' + 0.21, 30/D, 1}^2 * log A1 * log A2
/// ```
pub fn laurent_lower(t: u64, m: u64, prec: usize) -> Interval {
    assert!(t >= 2 && m >= 1, "defined for t >= 2, m >= 1");
    let mut cx = RealCtx::new(prec);
    laurent_lower_in(&mut cx, t, m)
}

fn laurent_lower_in(cx: &mut RealCtx, t: u64, m: u64) -> Interval {
    let u = u_interval(cx, t);
    let ln_u = cx.ln(&u);
    let m_i = cx.uint(m);

    let b1 = cx.div(&cx.mul(&cx.int(2), &m_i), &cx.mul(&cx.int(3), &ln_u));
    let two_pi = {
        let pi = cx.pi();
        cx.mul(&pi, &cx.int(2))
    };
    let b2 = cx.div(&cx.mul(&cx.int(3), &m_i), &two_pi);
    let b_prime = cx.add(&b1, &b2);

    let log_term = {
        let l = cx.ln(&b_prime);
        let c = cx.dec("0.21");
        cx.add(&l, &c)
    };
    // 30/D = 10 with D = 3
    let g = cx.max(&cx.max(&log_term, &cx.int(10)), &cx.int(1));
    let g2 = cx.mul(&g, &g);

    let log_a1 = cx.div(&ln_u, &cx.int(2));
    let log_a2 = cx.div(&two_pi, &cx.int(9));
    let c = cx.dec("22.8");
    let coeff = cx.mul(&c, &cx.int(81));
    let prod = cx.mul(&cx.mul(&cx.mul(&coeff, &g2), &log_a1), &log_a2);
    cx.neg(&prod)
}

/// Derived search caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivedBounds {
    pub m_max: u64,
    pub t_max_coarse: u64,
    pub t_max: u64,
}

/// Largest integer m with m/2 <= 644.66*(ln(2m) + 0.21)^2 + 1.3, located by
/// bisection on rigorous enclosures. Equals 225676.
pub fn derive_m_max() -> Result<u64, BoundsError> {
    derive_m_max_at(DEFAULT_PREC)
}

pub fn derive_m_max_at(prec: usize) -> Result<u64, BoundsError> {
    // The right-hand side grows like log^2 while m/2 is linear, so the
    // predicate is true then false over the bracket; bisection applies.
    let holds = |m: u64| -> Result<bool, BoundsError> {
        let mut last = prec;
        for p in escalation(prec) {
            last = p;
            let mut cx = RealCtx::new(p);
            let lhs = cx.div(&cx.uint(m), &cx.int(2));
            let rhs = {
                let ln_2m = cx.ln(&cx.uint(2 * m));
                let c21 = cx.dec("0.21");
                let base = cx.add(&ln_2m, &c21);
                let sq = cx.mul(&base, &base);
                let c = cx.dec("644.66");
                let c13 = cx.dec("1.3");
                cx.add(&cx.mul(&c, &sq), &c13)
            };
            if lhs.hi() <= rhs.lo() {
                return Ok(true);
            }
            if lhs.lo() > rhs.hi() {
                return Ok(false);
            }
        }
        Err(BoundsError::InconclusivePrecision(last))
    };

    let mut lo: u64 = 3;
    if !holds(lo)? {
        return Err(BoundsError::InvalidInput("inequality false at m = 3".into()));
    }
    let mut hi: u64 = 1 << 20;
    while holds(hi)? {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| BoundsError::InvalidInput("no upper crossing found".into()))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Invert the growth inequalities in exact integer arithmetic:
/// `t_max_coarse` is the largest t with 2t^3 <= m^2 (i.e. sqrt(2) t^(3/2) <= m),
/// `t_max` the largest t with 6t^6 <= m^3 (i.e. 6^(1/3) t^2 <= m).
pub fn derive_t_bounds(m_max: u64) -> DerivedBounds {
    let m = BigUint::from(m_max);
    let m2 = &m * &m;
    let m3 = &m2 * &m;

    let largest = |rhs: &BigUint, coeff: u64, power: u32| -> u64 {
        let mut t = (rhs / BigUint::from(coeff)).nth_root(power);
        // nth_root truncates; fix up both directions to be safe
        while BigUint::from(coeff) * (&t + 1u32).pow(power) <= *rhs {
            t += 1u32;
        }
        while !t.is_zero() && BigUint::from(coeff) * t.pow(power) > *rhs {
            t -= 1u32;
        }
        u64::try_from(&t).expect("t bound fits u64")
    };

    DerivedBounds {
        m_max,
        t_max_coarse: largest(&m2, 2, 3),
        t_max: largest(&m3, 6, 6),
    }
}

use num_traits::Zero;

/// Enclosure of |Im log(t - w*s)| = atan(s*sqrt(3)/(2t + s)); always below
/// pi/3.
pub fn im_log_conjugate(t: u64, prec: usize) -> Interval {
    let mut cx = RealCtx::new(prec);
    let s = s_interval(&mut cx, t);
    let sqrt3 = cx.sqrt(&cx.int(3));
    let num = cx.mul(&s, &sqrt3);
    let den = cx.add(&cx.uint(2 * t), &s);
    cx.atan(&cx.div(&num, &den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_max_is_the_paper_cap() {
        assert_eq!(derive_m_max().unwrap(), 225676);
    }

    #[test]
    fn m_max_is_precision_independent() {
        for prec in [160, 256, 512] {
            assert_eq!(derive_m_max_at(prec).unwrap(), 225676);
        }
    }

    #[test]
    fn t_bounds_from_m_max() {
        let b = derive_t_bounds(225676);
        assert_eq!(b.t_max_coarse, 2942);
        assert_eq!(b.t_max, 352);
    }

    #[test]
    fn t_bounds_small_example() {
        // 2*3^3 = 54 <= 100 < 128 = 2*4^3 and 6*2^6 = 384 <= 1000 < 4374
        let b = derive_t_bounds(10);
        assert_eq!(b.t_max_coarse, 3);
        assert_eq!(b.t_max, 2);
    }

    #[test]
    fn laurent_constant_is_below_644_66() {
        // 22.8 * 3^4 * (2*pi/9) * (1/2) = 644.6548... < 644.66
        let mut cx = RealCtx::new(160);
        let pi = cx.pi();
        let two_pi = cx.mul(&pi, &cx.int(2));
        let log_a2 = cx.div(&two_pi, &cx.int(9));
        let c = cx.dec("22.8");
        let prod = cx.mul(&cx.mul(&c, &cx.int(81)), &log_a2);
        let half = cx.div(&prod, &cx.int(2));
        let target = cx.dec("644.66");
        assert!(half.certainly_lt(&target));
        // and it is above 644.65, so the paper's constant is tight
        let floor = cx.dec("644.65");
        assert!(floor.certainly_lt(&half));
    }

    #[test]
    fn max_term_switch_at_8928() {
        // ln(2m) + 0.21 crosses 10 exactly between m = 8927 and m = 8928
        let mut cx = RealCtx::new(160);
        let ten = cx.int(10);
        let at = |cx: &mut RealCtx, m: u64| {
            let l = cx.ln(&cx.uint(2 * m));
            let c = cx.dec("0.21");
            cx.add(&l, &c)
        };
        let below = at(&mut cx, 8927);
        let above = at(&mut cx, 8928);
        assert!(below.certainly_lt(&ten));
        assert!(ten.certainly_lt(&above));
    }

    #[test]
    fn lambda1_at_2_2_is_tight() {
        let e = eval_lambda1(2, 2, 160).unwrap();
        assert!(e.b.unsigned_abs() <= 2);
        // width below 2^-100
        let cx = RealCtx::new(160);
        let w = cx.width(&e.lambda1_abs);
        let tol = cx.pow2_neg(100);
        assert!(w < *tol.lo());
        // |Lambda_1| = 0.99581260477... (from a 300-bit complex-log evaluation)
        let mut cx = RealCtx::new(160);
        let lo = cx.dec("0.9958126047");
        let hi = cx.dec("0.9958126048");
        assert!(lo.certainly_lt(&e.lambda1_abs));
        assert!(e.lambda1_abs.certainly_lt(&hi));
    }

    #[test]
    fn lambda1_at_search_boundary() {
        let e = eval_lambda1(352, 225676, 256).unwrap();
        assert!(e.b.unsigned_abs() as u64 <= 225676 / 2 + 1);
        assert_eq!(e.b, -112837);
        assert!(e.lambda1_abs.is_strictly_positive());
    }

    #[test]
    fn lambda1_abs_respects_unconditional_bound() {
        for (t, m) in [(2u64, 3u64), (2, 10), (5, 100), (352, 3), (352, 8928)] {
            let e = eval_lambda1(t, m, 160).unwrap();
            assert!(
                e.lambda1_abs.certainly_le(&e.upper_bound) || e.lambda1_abs.intersects(&e.upper_bound),
                "containment violated at ({t}, {m})"
            );
            // the bound can never drop below |Lambda_1|
            assert!(!e.upper_bound.certainly_lt(&e.lambda1_abs), "bound below |L1| at ({t}, {m})");
        }
    }

    #[test]
    fn upper_closed_form_at_2_3() {
        // 6*3^(-3/4)/s + 2(2-s)^3/(sqrt(3) s^3) = 1.37608521148...
        let up = lambda1_upper(2, 3, 160);
        let mut cx = RealCtx::new(160);
        let lo = cx.dec("1.3760852114");
        let hi = cx.dec("1.3760852115");
        assert!(lo.certainly_lt(&up) && up.certainly_lt(&hi));
    }

    #[test]
    fn upper_closed_form_monotone_in_m() {
        let a = lambda1_upper(2, 10, 160);
        let b = lambda1_upper(2, 3, 160);
        assert!(a.certainly_lt(&b));
    }

    #[test]
    fn upper_closed_form_at_boundary_is_finite_and_tiny() {
        let up = lambda1_upper(352, 225676, 256);
        assert!(up.is_strictly_positive());
        let mut cx = RealCtx::new(256);
        // far below 10^-1000
        let tiny = {
            let ln10 = cx.ln(&cx.int(10));
            let e = cx.mul(&cx.int(-1000), &ln10);
            cx.exp(&e)
        };
        assert!(up.certainly_lt(&tiny));
    }

    #[test]
    fn b_prime_stays_below_2m() {
        // b'/m = 2/(3 ln u(2)) + 3/(2 pi) = 0.75057... < 2
        let mut cx = RealCtx::new(160);
        let u = u_interval(&mut cx, 2);
        let ln_u = cx.ln(&u);
        let b1 = cx.div(&cx.int(2), &cx.mul(&cx.int(3), &ln_u));
        let pi = cx.pi();
        let b2 = cx.div(&cx.int(3), &cx.mul(&pi, &cx.int(2)));
        let ratio = cx.add(&b1, &b2);
        let lo = cx.dec("0.7505");
        let hi = cx.dec("0.7506");
        assert!(lo.certainly_lt(&ratio) && ratio.certainly_lt(&hi));
    }

    #[test]
    fn im_log_below_pi_third() {
        let mut cx = RealCtx::new(96);
        let pi = cx.pi();
        let third = cx.div(&pi, &cx.int(3));
        for t in [2u64, 3, 10, 100, 1000] {
            let im = im_log_conjugate(t, 96);
            assert!(im.certainly_lt(&third), "t = {t}");
        }
    }

    #[test]
    fn b_invariant_over_m_sweep() {
        for t in [2u64, 7, 352] {
            for m in (1u64..=10_000).step_by(997) {
                let e = eval_lambda1(t, m, 160).unwrap();
                assert!(e.b.unsigned_abs() <= m / 2 + 1, "t={t} m={m} b={}", e.b);
            }
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(eval_lambda1(1, 5, 160), Err(BoundsError::InvalidInput(_))));
        assert!(matches!(eval_lambda1(2, 0, 160), Err(BoundsError::InvalidInput(_))));
    }
}
