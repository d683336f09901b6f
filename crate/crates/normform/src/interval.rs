//! Outward-rounded interval arithmetic on arbitrary-precision floats.
//!
//! Every operation rounds the lower endpoint toward -inf and the upper
//! endpoint toward +inf, so the true real value of an expression is always
//! contained in the computed enclosure. An inequality verdict is only
//! reported when the two enclosures are disjoint; callers escalate precision
//! otherwise (see [`crate::bounds`]).

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// A closed enclosure `[lo, hi]` of a real number.
#[derive(Debug, Clone)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    fn new(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        debug_assert!(lo <= hi, "inverted interval: {lo} > {hi}");
        Interval { lo, hi }
    }

    /// Degenerate enclosure of a single float (used to restart an evaluation
    /// from one rigorous endpoint, e.g. `exp` of a verified lower bound).
    pub fn point(x: BigFloat) -> Self {
        Interval::new(x.clone(), x)
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    /// True if every point of `self` is strictly below every point of `rhs`:
    /// a rigorous `<` verdict.
    pub fn certainly_lt(&self, rhs: &Interval) -> bool {
        self.hi < rhs.lo
    }

    /// Rigorous `<=` verdict.
    pub fn certainly_le(&self, rhs: &Interval) -> bool {
        self.hi <= rhs.lo
    }

    /// True if the enclosures share at least one point. Two enclosures of the
    /// same real number always do.
    pub fn intersects(&self, rhs: &Interval) -> bool {
        !(self.certainly_lt(rhs) || rhs.certainly_lt(self))
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    /// Best-effort midpoint as `f64`; used only to pick integer candidates
    /// that are then verified rigorously.
    pub fn midpoint_f64(&self) -> f64 {
        // Display emits round-trippable scientific notation.
        let lo: f64 = format!("{}", self.lo).parse().unwrap_or(f64::NAN);
        let hi: f64 = format!("{}", self.hi).parse().unwrap_or(f64::NAN);
        (lo + hi) / 2.0
    }
}

/// Shared evaluation context: working precision plus the constants cache
/// astro-float needs for pi and the elementary functions.
pub struct RealCtx {
    prec: usize,
    cc: Consts,
}

impl RealCtx {
    pub fn new(prec: usize) -> Self {
        RealCtx {
            prec,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn int(&self, v: i64) -> Interval {
        let x = BigFloat::from_i64(v, self.prec.max(64));
        Interval::new(x.clone(), x)
    }

    pub fn uint(&self, v: u64) -> Interval {
        let x = BigFloat::from_u64(v, self.prec.max(64));
        Interval::new(x.clone(), x)
    }

    /// Exact enclosure of an arbitrary-precision integer (outward-rounded
    /// once the value exceeds the working precision).
    pub fn bigint(&mut self, v: &BigInt) -> Interval {
        self.dec(&v.to_string())
    }

    /// Enclosure of a decimal literal such as "644.66" (not exactly
    /// representable in binary, so the endpoints differ by one ulp).
    pub fn dec(&mut self, s: &str) -> Interval {
        let lo = BigFloat::parse(s, astro_float::Radix::Dec, self.prec, DOWN, &mut self.cc);
        let hi = BigFloat::parse(s, astro_float::Radix::Dec, self.prec, UP, &mut self.cc);
        Interval::new(lo, hi)
    }

    pub fn pi(&mut self) -> Interval {
        Interval::new(self.cc.pi(self.prec, DOWN), self.cc.pi(self.prec, UP))
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Interval {
        Interval::new(
            a.lo.add(&b.lo, self.prec, DOWN),
            a.hi.add(&b.hi, self.prec, UP),
        )
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        Interval::new(
            a.lo.sub(&b.hi, self.prec, DOWN),
            a.hi.sub(&b.lo, self.prec, UP),
        )
    }

    pub fn neg(&self, a: &Interval) -> Interval {
        Interval::new(a.hi.neg(), a.lo.neg())
    }

    pub fn abs(&self, a: &Interval) -> Interval {
        if !a.lo.is_negative() {
            a.clone()
        } else if a.hi.is_negative() || a.hi.is_zero() {
            self.neg(a)
        } else {
            let hi = if a.hi < a.lo.neg() { a.lo.neg() } else { a.hi.clone() };
            Interval::new(BigFloat::from_i64(0, self.prec), hi)
        }
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let lo = [
            a.lo.mul(&b.lo, self.prec, DOWN),
            a.lo.mul(&b.hi, self.prec, DOWN),
            a.hi.mul(&b.lo, self.prec, DOWN),
            a.hi.mul(&b.hi, self.prec, DOWN),
        ];
        let hi = [
            a.lo.mul(&b.lo, self.prec, UP),
            a.lo.mul(&b.hi, self.prec, UP),
            a.hi.mul(&b.lo, self.prec, UP),
            a.hi.mul(&b.hi, self.prec, UP),
        ];
        Interval::new(min4(lo), max4(hi))
    }

    /// Division; the divisor enclosure must not contain zero.
    pub fn div(&self, a: &Interval, b: &Interval) -> Interval {
        assert!(
            b.is_strictly_positive() || (b.hi.is_negative() && !b.hi.is_zero()),
            "division by an interval containing zero"
        );
        let lo = [
            a.lo.div(&b.lo, self.prec, DOWN),
            a.lo.div(&b.hi, self.prec, DOWN),
            a.hi.div(&b.lo, self.prec, DOWN),
            a.hi.div(&b.hi, self.prec, DOWN),
        ];
        let hi = [
            a.lo.div(&b.lo, self.prec, UP),
            a.lo.div(&b.hi, self.prec, UP),
            a.hi.div(&b.lo, self.prec, UP),
            a.hi.div(&b.hi, self.prec, UP),
        ];
        Interval::new(min4(lo), max4(hi))
    }

    /// Square root; requires a non-negative enclosure.
    pub fn sqrt(&self, a: &Interval) -> Interval {
        assert!(!a.lo.is_negative(), "sqrt of a negative interval");
        Interval::new(a.lo.sqrt(self.prec, DOWN), a.hi.sqrt(self.prec, UP))
    }

    /// Real cube root (monotone on all of R).
    pub fn cbrt(&self, a: &Interval) -> Interval {
        Interval::new(a.lo.cbrt(self.prec, DOWN), a.hi.cbrt(self.prec, UP))
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    pub fn ln(&mut self, a: &Interval) -> Interval {
        assert!(a.is_strictly_positive(), "ln of a non-positive interval");
        Interval::new(
            a.lo.ln(self.prec, DOWN, &mut self.cc),
            a.hi.ln(self.prec, UP, &mut self.cc),
        )
    }

    pub fn exp(&mut self, a: &Interval) -> Interval {
        Interval::new(
            a.lo.exp(self.prec, DOWN, &mut self.cc),
            a.hi.exp(self.prec, UP, &mut self.cc),
        )
    }

    /// arctangent (monotone increasing).
    pub fn atan(&mut self, a: &Interval) -> Interval {
        Interval::new(
            a.lo.atan(self.prec, DOWN, &mut self.cc),
            a.hi.atan(self.prec, UP, &mut self.cc),
        )
    }

    /// Sine on an interval contained in (-pi - 1, pi + 1), where the only
    /// interior extrema are +-pi/2. Endpoint evaluation is used on monotone
    /// stretches; an enclosure that may contain an extremum gets the exact
    /// bound +-1 on that side.
    pub fn sin(&mut self, a: &Interval) -> Interval {
        let half_pi = {
            let pi = self.pi();
            self.div(&pi, &self.int(2))
        };
        let lo_candidates = [a.lo.sin(self.prec, DOWN, &mut self.cc), a.hi.sin(self.prec, DOWN, &mut self.cc)];
        let hi_candidates = [a.lo.sin(self.prec, UP, &mut self.cc), a.hi.sin(self.prec, UP, &mut self.cc)];
        let mut lo = if lo_candidates[0] < lo_candidates[1] {
            lo_candidates[0].clone()
        } else {
            lo_candidates[1].clone()
        };
        let mut hi = if hi_candidates[0] < hi_candidates[1] {
            hi_candidates[1].clone()
        } else {
            hi_candidates[0].clone()
        };
        // may the interval contain +pi/2 (a maximum)?
        if a.lo <= *half_pi.hi() && *half_pi.lo() <= a.hi {
            hi = BigFloat::from_i64(1, self.prec);
        }
        // may it contain -pi/2 (a minimum)?
        let neg_half = self.neg(&half_pi);
        if a.lo <= *neg_half.hi() && *neg_half.lo() <= a.hi {
            lo = BigFloat::from_i64(-1, self.prec);
        }
        Interval::new(lo, hi)
    }

    /// Integer power of a non-negative base (monotone in the base).
    pub fn powi(&self, a: &Interval, n: u64) -> Interval {
        assert!(!a.lo.is_negative(), "powi expects a non-negative base");
        if n == 0 {
            return self.int(1);
        }
        Interval::new(
            a.lo.powi(n as usize, self.prec, DOWN),
            a.hi.powi(n as usize, self.prec, UP),
        )
    }

    /// x^(n/d) for a strictly positive base, via exp((n/d) ln x).
    pub fn pow_ratio(&mut self, a: &Interval, num: i64, den: u64) -> Interval {
        let l = self.ln(a);
        let scaled = self.div(&self.mul(&l, &self.int(num)), &self.uint(den));
        self.exp(&scaled)
    }

    /// Nearest integer to the (point-like) enclosure `q`, verified rigorously:
    /// returns `Some(b)` only when `q` is certainly inside `[b - 1/2, b + 1/2]`.
    /// Candidates are tried smallest-|b| first, which resolves half-integer
    /// ties toward the smaller magnitude when both neighbours verify.
    pub fn nearest_int(&self, q: &Interval) -> Option<i64> {
        let guess = q.midpoint_f64();
        if !guess.is_finite() || guess.abs() > 4.0e18 {
            return None;
        }
        let b0 = guess.round() as i64;
        let mut candidates = [b0, b0 - 1, b0 + 1];
        candidates.sort_by_key(|b| b.unsigned_abs());
        let half = {
            let one = BigFloat::from_i64(1, self.prec);
            one.div(&BigFloat::from_i64(2, self.prec), self.prec, DOWN)
        };
        for b in candidates {
            let bf = BigFloat::from_i64(b, self.prec);
            // q - b must certainly lie in [-1/2, 1/2]
            let lo_shift = q.lo.sub(&bf, self.prec, DOWN);
            let hi_shift = q.hi.sub(&bf, self.prec, UP);
            if lo_shift >= half.neg() && hi_shift <= half {
                return Some(b);
            }
        }
        None
    }

    /// Subtract `b * step` from `a` (used for range reduction by multiples of
    /// 2*pi/3 and 2*pi).
    pub fn sub_multiple(&self, a: &Interval, b: i64, step: &Interval) -> Interval {
        let prod = self.mul(&self.int(b), step);
        self.sub(a, &prod)
    }

    /// Enclosure of the pointwise maximum.
    pub fn max(&self, a: &Interval, b: &Interval) -> Interval {
        let lo = if a.lo < b.lo { b.lo.clone() } else { a.lo.clone() };
        let hi = if a.hi < b.hi { b.hi.clone() } else { a.hi.clone() };
        Interval::new(lo, hi)
    }

    /// 2^(-k), exactly representable.
    pub fn pow2_neg(&self, k: u64) -> Interval {
        let half = BigFloat::from_f64(0.5, self.prec);
        let x = half.powi(k as usize, self.prec, DOWN);
        Interval::new(x.clone(), x)
    }

    /// Upper bound on the enclosure width, rounded up.
    pub fn width(&self, a: &Interval) -> BigFloat {
        a.hi.sub(&a.lo, self.prec, UP)
    }
}

fn min4(v: [BigFloat; 4]) -> BigFloat {
    let mut best = v[0].clone();
    for x in &v[1..] {
        if *x < best {
            best = x.clone();
        }
    }
    best
}

fn max4(v: [BigFloat; 4]) -> BigFloat {
    let mut best = v[0].clone();
    for x in &v[1..] {
        if *x > best {
            best = x.clone();
        }
    }
    best
}
