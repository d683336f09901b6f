//! Unit-group facts behind the solution classification.
//!
//! The element t - s (s the real cube root of t^3 - 1) is a unit with
//! inverse t^2 + t*s + s^2. Artin's inequality for a complex cubic field of
//! discriminant -27(t^3-1)^2 certifies that it is in fact a fundamental
//! unit: it suffices that `4*(t^2+s^2+st)^(3/2) + 27 < 27*(t^3-1)^2`, which
//! [`verify_fundamental_unit`] checks with outward-rounded intervals.
//!
//! Any unit value of the norm form therefore comes from
//! `x - s*y + s^2 = (-1)^delta * (t-s)^m`, and the exponent classifies the
//! solution:
//!
//! * `m = -1`: `(t-s)^(-1) = t^2 + t*s + s^2` gives `(x, y) = (t^2, -t)`;
//! * `m = 2`: `(t-s)^2 = t^2 - 2*t*s + s^2` gives `(x, y) = (t^2, 2t)`;
//! * `m = 0, 1`: would force s = 0, impossible for t > 1;
//! * `m <= -2`: impossible because the real conjugate term alone exceeds
//!   `9s^4 - 2/(3s^2) > 3s^2`, the largest the right-hand side can be;
//! * `m >= 3`: no closed-form exclusion; these go to the sieve.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bounds::{escalation, s_interval, u_interval, BoundsError};
use crate::interval::RealCtx;
use crate::ring::{self, RingContext, RingElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("parameter t must be at least 2, got {0}")]
    InvalidT(i64),
    #[error("interval enclosures inconclusive at {0} bits")]
    InconclusivePrecision(usize),
    /// The polynomial identity check needs 28 distinct sample points (the
    /// two sides have degree 27).
    #[error("need at least 28 distinct sample points, got {0}")]
    InsufficientPoints(usize),
}

/// A solution of the norm-form equation together with its unit exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub t: u64,
    pub x: BigInt,
    pub y: BigInt,
    /// Sign exponent: the unit value is (-1)^delta.
    pub delta: u8,
    /// Exponent of the fundamental unit.
    pub m: i64,
}

/// Classification of a unit exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentClass {
    /// m = -1, the functional solution (t^2, -t).
    FunctionalMinus1,
    /// m = 2, the functional solution (t^2, 2t).
    Functional2,
    /// m in {0, 1} would force s = 0.
    ImpossibleZeroOne,
    /// m <= -2, excluded by the conjugate-size argument.
    ImpossibleNegative,
    /// m >= 3, handled by the congruence sieve.
    SieveCandidate,
}

/// Classify an exponent. The tag is a function of m alone; for m <= -2 the
/// size argument it relies on is re-verified rigorously in debug builds and
/// by [`negative_exclusion_witness`].
pub fn classify_exponent(m: i64, ctx: &RingContext) -> ExponentClass {
    match m {
        -1 => ExponentClass::FunctionalMinus1,
        2 => ExponentClass::Functional2,
        0 | 1 => ExponentClass::ImpossibleZeroOne,
        _ if m <= -2 => {
            debug_assert!(
                u64::try_from(ctx.t()).ok().map_or(true, |t| {
                    negative_exclusion_witness(t, 96) == Ok(true)
                }),
                "negative-exponent witness failed"
            );
            ExponentClass::ImpossibleNegative
        }
        _ => ExponentClass::SieveCandidate,
    }
}

/// Rigorous check of the witness inequality `9s^4 - 2/(3s^2) > 3s^2` that
/// excludes exponents m <= -2.
pub fn negative_exclusion_witness(t: u64, prec: usize) -> Result<bool, BoundsError> {
    let mut last = prec;
    for p in escalation(prec) {
        last = p;
        let mut cx = RealCtx::new(p);
        let s = s_interval(&mut cx, t);
        let s2 = cx.mul(&s, &s);
        let s4 = cx.mul(&s2, &s2);
        let lhs = {
            let a = cx.mul(&cx.int(9), &s4);
            let b = cx.div(&cx.int(2), &cx.mul(&cx.int(3), &s2));
            cx.sub(&a, &b)
        };
        let rhs = cx.mul(&cx.int(3), &s2);
        if rhs.certainly_lt(&lhs) {
            return Ok(true);
        }
        if lhs.certainly_le(&rhs) {
            return Ok(false);
        }
    }
    Err(BoundsError::InconclusivePrecision(last))
}

/// Verify via Artin's inequality that t - s is a fundamental unit:
/// `4*(t^2+s^2+st)^(3/2) + 27 < 27*(t^3-1)^2` in rigorous intervals.
pub fn verify_fundamental_unit(t: u64) -> Result<bool, UnitError> {
    verify_fundamental_unit_at(t, 128)
}

pub fn verify_fundamental_unit_at(t: u64, prec: usize) -> Result<bool, UnitError> {
    if t < 2 {
        return Err(UnitError::InvalidT(t as i64));
    }
    let mut last = prec;
    for p in escalation(prec) {
        last = p;
        let mut cx = RealCtx::new(p);
        let u = u_interval(&mut cx, t);
        let lhs = {
            let u32_ = cx.mul(&u, &cx.sqrt(&u)); // u^(3/2)
            cx.add(&cx.mul(&cx.int(4), &u32_), &cx.int(27))
        };
        let rhs = {
            let d = BigInt::from(t).pow(3) - 1;
            let sq = cx.bigint(&(&d * &d * BigInt::from(27)));
            sq
        };
        if lhs.certainly_lt(&rhs) {
            return Ok(true);
        }
        if rhs.certainly_le(&lhs) {
            return Ok(false);
        }
    }
    Err(UnitError::InconclusivePrecision(last))
}

/// Map an exponent to its solution, if any: compute
/// `e = (-1)^delta * (t-s)^m` and read off `(x, y) = (e.a0, -e.a1)` when the
/// s^2-coefficient is exactly 1.
pub fn solution_from_exponent(t: u64, m: i64, delta: u8) -> Result<Option<SolutionRecord>, UnitError> {
    assert!(delta <= 1, "delta is a sign exponent");
    if t < 2 {
        return Err(UnitError::InvalidT(t as i64));
    }
    let ctx = RingContext::new(t).expect("t >= 2");
    let mut e = ring::pow(&ctx.unit(), m, &ctx).expect("base is the unit");
    if delta == 1 {
        e = e.neg();
    }
    if !e.a2.is_one() {
        return Ok(None);
    }
    let record = SolutionRecord {
        t,
        x: e.a0.clone(),
        y: -e.a1.clone(),
        delta,
        m,
    };
    debug_assert!(record_invariants_hold(&record, &ctx, &e));
    Ok(Some(record))
}

fn record_invariants_hold(r: &SolutionRecord, ctx: &RingContext, e: &RingElement) -> bool {
    // norm-form value must be (-1)^delta, and e must be the asserted power
    let n = ring::norm(e, ctx);
    let expected = if r.delta == 0 { BigInt::one() } else { -BigInt::one() };
    if n != expected {
        return false;
    }
    let p = ring::pow(&ctx.unit(), r.m, ctx).expect("unit base");
    let signed = if r.delta == 0 { p } else { p.neg() };
    signed == *e
}

/// Check the degree-27 polynomial identity
/// `x(x - t*y)(x - (t^4 + 3t)*y) + y^3 = 1` with
/// `x = t^9 + 3t^6 + 4t^3 + 1`, `y = t^8 + 3t^5 + 3t^2`
/// by exact evaluation at the sample points. Agreement at 28 distinct points
/// proves the identity since both sides have degree at most 27.
pub fn verify_ziegler_identity(sample_points: &[i64]) -> Result<bool, UnitError> {
    let mut distinct: Vec<i64> = sample_points.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 28 {
        return Err(UnitError::InsufficientPoints(distinct.len()));
    }
    for &t in &distinct {
        if !ziegler_holds_at(t) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ziegler_holds_at(t: i64) -> bool {
    let t = BigInt::from(t);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    let t4 = &t3 * &t;
    let x = {
        let t6 = &t3 * &t3;
        let t9 = &t6 * &t3;
        &t9 + BigInt::from(3) * &t6 + BigInt::from(4) * &t3 + 1
    };
    let y = {
        let t5 = &t4 * &t;
        let t8 = &t5 * &t3;
        &t8 + BigInt::from(3) * &t5 + BigInt::from(3) * &t2
    };
    let a1 = &t;
    let a2 = &t4 + BigInt::from(3) * &t;
    let value: BigInt = &x * (&x - a1 * &y) * (&x - &a2 * &y) + &y * &y * &y;
    value.is_one()
}

/// The norm-form value associated with a candidate (x, y); delegated to the
/// ring norm at (x, -y, 1).
pub fn norm_form_value(t: u64, x: &BigInt, y: &BigInt) -> BigInt {
    let ctx = RingContext::new(t).expect("t >= 2");
    let e = RingElement::new(x.clone(), -y.clone(), BigInt::one());
    ring::norm(&e, &ctx)
}

/// Convenience: is the norm-form value +1 or -1?
pub fn is_unit_value(v: &BigInt) -> bool {
    v.abs().is_one()
}

#[allow(unused)]
fn _suppress(v: &BigInt) -> bool {
    v.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: i64) -> RingContext {
        RingContext::new(t).unwrap()
    }

    #[test]
    fn classification_table() {
        let c = ctx(5);
        assert_eq!(classify_exponent(-1, &c), ExponentClass::FunctionalMinus1);
        assert_eq!(classify_exponent(2, &c), ExponentClass::Functional2);
        assert_eq!(classify_exponent(0, &c), ExponentClass::ImpossibleZeroOne);
        assert_eq!(classify_exponent(1, &c), ExponentClass::ImpossibleZeroOne);
        assert_eq!(classify_exponent(-7, &ctx(2)), ExponentClass::ImpossibleNegative);
        assert_eq!(classify_exponent(3, &c), ExponentClass::SieveCandidate);
        assert_eq!(classify_exponent(225676, &c), ExponentClass::SieveCandidate);
    }

    #[test]
    fn negative_witness_holds() {
        for t in [2u64, 3, 10, 100] {
            assert_eq!(negative_exclusion_witness(t, 96), Ok(true));
        }
    }

    #[test]
    fn fundamental_unit_small_t() {
        assert_eq!(verify_fundamental_unit(2), Ok(true));
        assert_eq!(verify_fundamental_unit(3), Ok(true));
        assert_eq!(verify_fundamental_unit(1), Err(UnitError::InvalidT(1)));
    }

    #[test]
    fn functional_solutions_from_exponents() {
        // m = -1 gives (t^2, -t): (t-s)^(-1) = t^2 + t*s + s^2
        let r = solution_from_exponent(3, -1, 0).unwrap().unwrap();
        assert_eq!(r.x, BigInt::from(9));
        assert_eq!(r.y, BigInt::from(-3));
        // m = 2 gives (t^2, 2t): (t-s)^2 = t^2 - 2*t*s + s^2
        let r = solution_from_exponent(3, 2, 0).unwrap().unwrap();
        assert_eq!(r.x, BigInt::from(9));
        assert_eq!(r.y, BigInt::from(6));
    }

    #[test]
    fn large_exponents_are_not_solutions() {
        // (2-s)^5 has s^2-coefficient 73, not 1
        assert_eq!(solution_from_exponent(2, 5, 0).unwrap(), None);
        for m in 3..=20 {
            assert_eq!(solution_from_exponent(2, m, 0).unwrap(), None, "m = {m}");
            assert_eq!(solution_from_exponent(2, m, 1).unwrap(), None, "m = {m}, delta = 1");
        }
    }

    #[test]
    fn functional_pairs_for_a_range_of_t() {
        for t in 2u64..=50 {
            let a = solution_from_exponent(t, -1, 0).unwrap().unwrap();
            assert_eq!(a.x, BigInt::from(t * t));
            assert_eq!(a.y, BigInt::from(-(t as i64)));
            let b = solution_from_exponent(t, 2, 0).unwrap().unwrap();
            assert_eq!(b.x, BigInt::from(t * t));
            assert_eq!(b.y, BigInt::from(2 * t));
            // both have norm-form value +1
            assert!(norm_form_value(t, &a.x, &a.y).is_one());
            assert!(norm_form_value(t, &b.x, &b.y).is_one());
        }
    }

    #[test]
    fn ziegler_identity_at_28_points() {
        let points: Vec<i64> = (-14..14).collect();
        assert_eq!(verify_ziegler_identity(&points), Ok(true));
    }

    #[test]
    fn ziegler_value_at_2() {
        // x = 737, y = 364: 737 * 9 * (-7271) + 364^3 = 1
        assert!(ziegler_holds_at(2));
        assert!(ziegler_holds_at(0));
        let t = BigInt::from(2);
        let x = BigInt::from(737);
        let y = BigInt::from(364);
        let a2 = BigInt::from(22);
        let lhs = &x * (&x - &t * &y) * (&x - &a2 * &y);
        assert_eq!(lhs, BigInt::from(-48228543i64));
        assert_eq!(&y * &y * &y, BigInt::from(48228544i64));
    }

    #[test]
    fn ziegler_rejects_too_few_points() {
        let points: Vec<i64> = (0..27).collect();
        assert_eq!(verify_ziegler_identity(&points), Err(UnitError::InsufficientPoints(27)));
        // duplicates do not count
        let mut dupes: Vec<i64> = (0..27).collect();
        dupes.push(26);
        assert_eq!(verify_ziegler_identity(&dupes), Err(UnitError::InsufficientPoints(27)));
    }
}
