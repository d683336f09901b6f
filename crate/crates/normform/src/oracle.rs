//! Independent brute-force verification of the solution set.
//!
//! [`norm_value`] evaluates the norm form directly from its coefficients (not
//! through the ring norm it must agree with), and [`brute_force`] enumerates
//! every `(x, y)` in a window, so the sieve's conclusion can be checked
//! against ground truth for small t.
//!
//! For fixed y the norm form is a cubic in x with derivative
//! `3x^2 + 3*d*y`, so it is monotone on at most three integer segments and
//! each target value +-1 can be located by bisection instead of scanning all
//! x. The O(B^2) scan remains available as [`brute_force_naive`] and the two
//! are cross-checked in the tests.

use num_bigint::BigInt;
use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// The window must contain both functional solutions: B >= 2t^2.
    #[error("window bound {bound} is below 2*t^2 = {required}")]
    InvalidWindow { bound: u64, required: u64 },
    /// Guard for the i128 fast path.
    #[error("search exceeds the supported range: {0}")]
    TooLarge(String),
}

/// Search region |x| <= bound, |y| <= bound for a fixed t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchWindow {
    pub t: u64,
    pub bound: u64,
}

impl SearchWindow {
    /// Window with the default bound max(2t^2, 1000).
    pub fn default_for(t: u64) -> Self {
        SearchWindow {
            t,
            bound: (2 * t * t).max(1000),
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        let required = 2 * self.t * self.t;
        if self.bound < required {
            return Err(OracleError::InvalidWindow {
                bound: self.bound,
                required,
            });
        }
        if self.t > 300_000 || self.bound > 2_000_000 {
            return Err(OracleError::TooLarge(format!(
                "t = {}, bound = {} (need t <= 3e5, bound <= 2e6)",
                self.t, self.bound
            )));
        }
        Ok(())
    }
}

/// A solution found by exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FoundSolution {
    pub x: i64,
    pub y: i64,
    /// The attained norm-form value, +1 or -1.
    pub norm: i8,
}

/// Exact value of `x^3 - (t^3-1)*y^3 + 3*(t^3-1)*x*y + (t^3-1)^2`, computed
/// term by term.
pub fn norm_value(t: u64, x: &BigInt, y: &BigInt) -> BigInt {
    assert!(t >= 2, "norm form defined for t >= 2");
    let d = BigInt::from(t).pow(3) - 1;
    x.pow(3) - &d * y.pow(3) + BigInt::from(3) * &d * x * y + &d * &d
}

fn f(x: i128, three_dy: i128, c0: i128) -> i128 {
    x * x * x + three_dy * x + c0
}

/// Bisect a monotone integer segment for f(x) = target.
fn bisect_segment(
    mut lo: i128,
    mut hi: i128,
    increasing: bool,
    three_dy: i128,
    c0: i128,
    target: i128,
) -> Option<i128> {
    if lo > hi {
        return None;
    }
    let (mut flo, fhi) = (f(lo, three_dy, c0), f(hi, three_dy, c0));
    let (min_v, max_v) = if increasing { (flo, fhi) } else { (fhi, flo) };
    if target < min_v || target > max_v {
        return None;
    }
    // invariant: f(lo) and f(hi) bracket the target
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let fm = f(mid, three_dy, c0);
        if fm == target {
            return Some(mid);
        }
        let go_right = if increasing { fm < target } else { fm > target };
        if go_right {
            lo = mid + 1;
            flo = f(lo, three_dy, c0);
        } else {
            hi = mid;
        }
    }
    let _ = flo;
    (f(lo, three_dy, c0) == target).then_some(lo)
}

/// All (x, y) in the window with norm-form value +-1, sorted
/// lexicographically by (x, y). For each y the cubic in x is solved by
/// bisection on its monotone segments.
pub fn brute_force(t: u64, window: &SearchWindow) -> Result<Vec<FoundSolution>, OracleError> {
    window.validate()?;
    let b = window.bound as i128;
    let d = (t as i128).pow(3) - 1;
    let mut found = Vec::new();
    for y in -b..=b {
        let three_dy = 3 * d * y;
        let c0 = d * d - d * y * y * y;
        let mut roots: Vec<(i128, i128)> = Vec::new();
        for target in [1i128, -1] {
            if y >= 0 {
                if let Some(x) = bisect_segment(-b, b, true, three_dy, c0, target) {
                    roots.push((x, target));
                }
            } else {
                // critical points at +-sqrt(d*|y|)
                let r = ((d * -y) as u128).sqrt() as i128;
                for (lo, hi, inc) in [(-b, -r - 1, true), (-r.min(b), r.min(b), false), (r + 1, b, true)] {
                    let lo = lo.max(-b);
                    let hi = hi.min(b);
                    if let Some(x) = bisect_segment(lo, hi, inc, three_dy, c0, target) {
                        roots.push((x, target));
                    }
                }
            }
        }
        for (x, target) in roots {
            found.push(FoundSolution {
                x: x as i64,
                y: y as i64,
                norm: target as i8,
            });
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Reference O(B^2) scan of the whole window.
pub fn brute_force_naive(t: u64, window: &SearchWindow) -> Result<Vec<FoundSolution>, OracleError> {
    window.validate()?;
    let b = window.bound as i128;
    let d = (t as i128).pow(3) - 1;
    let mut found = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            let v = x * x * x - d * y * y * y + 3 * d * x * y + d * d;
            if v == 1 || v == -1 {
                found.push(FoundSolution {
                    x: x as i64,
                    y: y as i64,
                    norm: v as i8,
                });
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Outcome of comparing brute-force results against the functional solutions
/// over a range of t.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub t_min: u64,
    pub t_max: u64,
    pub bound: u64,
    pub all_match: bool,
    pub mismatches: Vec<String>,
}

/// For every t in the range, the window search must find exactly
/// {(t^2, 2t), (t^2, -t)}, both of norm value +1, and these must agree with
/// the exponent map at m = -1 and m = 2.
pub fn cross_check(t_min: u64, t_max: u64, bound: u64) -> Result<CrossCheckReport, OracleError> {
    let mut mismatches = Vec::new();
    for t in t_min..=t_max {
        let window = SearchWindow { t, bound };
        let found = brute_force(t, &window)?;
        let expected = vec![
            FoundSolution {
                x: (t * t) as i64,
                y: -(t as i64),
                norm: 1,
            },
            FoundSolution {
                x: (t * t) as i64,
                y: 2 * t as i64,
                norm: 1,
            },
        ];
        if found != expected {
            mismatches.push(format!("t = {t}: found {found:?}"));
            continue;
        }
        for (m, y_expected) in [(-1i64, -(t as i64)), (2, 2 * t as i64)] {
            let rec = crate::units::solution_from_exponent(t, m, 0)
                .expect("t >= 2")
                .expect("functional exponent");
            if rec.x != BigInt::from(t * t) || rec.y != BigInt::from(y_expected) {
                mismatches.push(format!("t = {t}, m = {m}: exponent map disagrees"));
            }
        }
    }
    Ok(CrossCheckReport {
        t_min,
        t_max,
        bound,
        all_match: mismatches.is_empty(),
        mismatches,
    })
}
