//! Congruence sieve over the exponent pairs and the final modular
//! elimination.
//!
//! Writing the s^2-coefficient of `(t-s)^m` as a binomial sum shows that a
//! solution with exponent m >= 3 forces, with d = t^3 - 1:
//!
//! * `m = 2 (mod 3)` — all other residues kill the sum mod 3;
//! * `C(m,2) = 1 (mod d)` — reduce the sum mod d, writing
//!   `C(m,2) = k*d + 1` for a positive integer k;
//! * `k*(m-2)/3 = 0 (mod t^3)` — reduce mod t^6;
//! * `m^3 > 6*t^6` — else the quantity `k*(m-2)/3` is too small to be a
//!   positive multiple of t^3.
//!
//! [`enumerate_candidates`] lists every pair passing all four filters and
//! [`final_coefficient_check`] eliminates a pair by exhibiting a prime p with
//! coefficient residue different from the unit target. An elimination
//! verdict is unconditionally rigorous; a pair that survives every witness
//! prime is recomputed exactly when the exponent is small enough, and
//! reported for review otherwise.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::primes::{default_prime_set, is_prime_u64};
use crate::ring::{self, RingContext, RingError};

/// Largest parameters accepted by the u128 fast path; far beyond anything
/// the derived caps allow.
const T_CAP: u64 = 1_000_000;
const M_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SieveError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("the witness prime set is empty")]
    EmptyPrimeSet,
    #[error("witness primes must be pairwise distinct: {0} repeats")]
    DuplicatePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Outcome of the four admissibility conditions for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub t: u64,
    pub m: u64,
    /// m = 2 (mod 3)
    pub passes_mod3: bool,
    /// C(m,2) = 1 (mod t^3 - 1)
    pub passes_smallhammer: bool,
    /// The multiplier with C(m,2) = k*(t^3-1) + 1; present iff
    /// `passes_smallhammer`.
    pub k: Option<BigUint>,
    /// k*(m-2)/3 = 0 (mod t^3); evaluated only when the first two conditions
    /// hold, false otherwise.
    pub passes_hammer: bool,
    /// m^3 > 6*t^6
    pub passes_growth: bool,
    pub admissible: bool,
}

/// Evaluate all four conditions in exact arbitrary-precision arithmetic.
pub fn admissible(t: u64, m: u64) -> Result<AdmissibilityReport, SieveError> {
    if t < 2 || m < 3 {
        return Err(SieveError::InvalidRange(format!(
            "need t >= 2 and m >= 3, got t={t}, m={m}"
        )));
    }
    let t_big = BigUint::from(t);
    let t3 = t_big.pow(3);
    let d = &t3 - 1u32;
    let m_big = BigUint::from(m);

    let passes_mod3 = m % 3 == 2;
    let c2 = &m_big * (&m_big - 1u32) / 2u32;
    let passes_smallhammer = (&c2 % &d).is_one();
    let k = passes_smallhammer.then(|| (&c2 - 1u32) / &d);
    let passes_hammer = if passes_mod3 && passes_smallhammer {
        let k = k.as_ref().expect("k present when smallhammer passes");
        (k * ((m - 2) / 3) % &t3).is_zero()
    } else {
        false
    };
    let passes_growth = m_big.pow(3) > BigUint::from(6u32) * t3.pow(2);

    Ok(AdmissibilityReport {
        t,
        m,
        passes_mod3,
        passes_smallhammer,
        k,
        passes_hammer,
        passes_growth,
        admissible: passes_mod3 && passes_smallhammer && passes_hammer && passes_growth,
    })
}

/// Word-sized admissibility used inside the enumeration loop; agrees with
/// [`admissible`] everywhere below the caps (property-tested).
fn admissible_fast(m: u64, d: u128, t3: u128, six_t6: u128) -> bool {
    debug_assert!(m % 3 == 2 && m >= 3);
    let m = m as u128;
    if m * m * m <= six_t6 {
        return false;
    }
    let c2 = m * (m - 1) / 2;
    if c2 % d != 1 {
        return false;
    }
    let k = (c2 - 1) / d;
    k * ((m - 2) / 3) % t3 == 0
}

/// Row of the per-parameter candidate count table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub t: u64,
    pub count: u64,
}

/// All admissible pairs in a rectangle, with their per-t counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTable {
    /// (t, count) for every t with at least one admissible m, sorted by t.
    pub rows: Vec<TableRow>,
    /// All pairs sorted lexicographically by (t, m).
    pub pairs: Vec<(u64, u64)>,
}

/// Enumerate every admissible pair with `t_min <= t <= t_max` and
/// `3 <= m <= m_max`. Work is parallel across t; the output order is
/// deterministic regardless of scheduling.
pub fn enumerate_candidates(t_min: u64, t_max: u64, m_max: u64) -> Result<CandidateTable, SieveError> {
    if t_min < 2 || t_min > t_max || m_max < 3 {
        return Err(SieveError::InvalidRange(format!(
            "need 2 <= t_min <= t_max and m_max >= 3, got t_min={t_min}, t_max={t_max}, m_max={m_max}"
        )));
    }
    if t_max > T_CAP || m_max > M_CAP {
        return Err(SieveError::InvalidRange(format!(
            "search rectangle exceeds the supported caps t <= {T_CAP}, m <= {M_CAP}"
        )));
    }
    let per_t: Vec<(u64, Vec<u64>)> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| {
            let t3 = (t as u128).pow(3);
            let d = t3 - 1;
            let six_t6 = 6 * t3 * t3;
            let ms: Vec<u64> = (5..=m_max)
                .step_by(3)
                .filter(|&m| admissible_fast(m, d, t3, six_t6))
                .collect();
            (t, ms)
        })
        .collect();

    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for (t, ms) in per_t {
        if !ms.is_empty() {
            rows.push(TableRow { t, count: ms.len() as u64 });
            pairs.extend(ms.into_iter().map(|m| (t, m)));
        }
    }
    Ok(CandidateTable { rows, pairs })
}

/// Which coefficient residues count as "consistent with a solution".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignTarget {
    /// Only c = +1: the residue argument already forces the "+" sign.
    PlusOnly,
    /// Strict mode: c = +1 or c = -1, re-verifying the sign elimination.
    PlusMinus,
}

impl SignTarget {
    fn consistent(&self, r: &ring::ModularRingElement) -> bool {
        match self {
            SignTarget::PlusOnly => r.s2_matches_sign(1),
            SignTarget::PlusMinus => r.s2_matches_sign(1) || r.s2_matches_sign(-1),
        }
    }
}

/// How one candidate pair was disposed of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EliminationStatus {
    /// The s^2-coefficient of (t-s)^m is inconsistent with every unit target:
    /// witnessed modulo the given prime, or by exact recomputation when the
    /// witness is absent.
    Eliminated { witness_prime: Option<u64> },
    /// Every witness prime was consistent with a unit coefficient.
    Survives { primes_tested: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationResult {
    pub t: u64,
    pub m: u64,
    pub status: EliminationStatus,
}

/// Test one pair against the witness primes. Exponents up to
/// `exact_recheck_max` that survive all primes are settled by computing the
/// exact integer coefficient.
pub fn final_coefficient_check(
    t: u64,
    m: u64,
    primes: &[u64],
    target: SignTarget,
    exact_recheck_max: u64,
) -> Result<EliminationResult, SieveError> {
    if primes.is_empty() {
        return Err(SieveError::EmptyPrimeSet);
    }
    let mut seen = primes.to_vec();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(SieveError::DuplicatePrime(w[0]));
    }
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(SieveError::NotPrime(p));
        }
    }
    let ctx = RingContext::new(t).map_err(SieveError::Ring)?;
    let unit = ctx.unit();
    for &p in primes {
        let r = ring::pow_mod_prime(&unit, m, &ctx, p)?;
        if !target.consistent(&r) {
            return Ok(EliminationResult {
                t,
                m,
                status: EliminationStatus::Eliminated { witness_prime: Some(p) },
            });
        }
    }
    if m <= exact_recheck_max {
        let c = ring::unit_power_s2_coefficient(&ctx, m);
        let unit_valued = match target {
            SignTarget::PlusOnly => c.is_one(),
            SignTarget::PlusMinus => c.magnitude().is_one(),
        };
        if !unit_valued {
            return Ok(EliminationResult {
                t,
                m,
                status: EliminationStatus::Eliminated { witness_prime: None },
            });
        }
    }
    Ok(EliminationResult {
        t,
        m,
        status: EliminationStatus::Survives { primes_tested: primes.len() },
    })
}

/// Configuration of the end-to-end verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Exponent cap; derived rigorously when absent.
    pub m_max: Option<u64>,
    pub t_min: u64,
    /// Parameter cap; derived from the exponent cap when absent.
    pub t_max: Option<u64>,
    pub primes: Vec<u64>,
    /// Working precision for the bound derivation.
    pub precision: usize,
    pub sign_target: SignTarget,
    pub exact_recheck_max: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            m_max: None,
            t_min: 2,
            t_max: None,
            primes: default_prime_set(),
            precision: bounds::DEFAULT_PREC,
            sign_target: SignTarget::PlusOnly,
            exact_recheck_max: 4096,
        }
    }
}

/// JSON-facing outcome for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub t: u64,
    pub m: u64,
    pub status: &'static str,
    pub witness_prime: Option<u64>,
}

/// Machine-readable report of a full verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub m_max: u64,
    pub t_max_coarse: u64,
    pub t_max: u64,
    pub table: Vec<TableRow>,
    pub pairs: Vec<PairOutcome>,
    pub verdict: &'static str,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.verdict == "verified"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The (t, count) table as CSV with header `t,count`.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("t,count\n");
        for row in &self.table {
            out.push_str(&format!("{},{}\n", row.t, row.count));
        }
        out
    }

    pub fn survivors(&self) -> impl Iterator<Item = &PairOutcome> {
        self.pairs.iter().filter(|p| p.status == "survives")
    }
}

/// Run the whole pipeline: derive (or accept) the caps, enumerate the
/// admissible pairs, and eliminate each one.
pub fn verify_theorem(cfg: &VerifyConfig) -> Result<VerificationReport, SieveError> {
    if cfg.primes.is_empty() {
        return Err(SieveError::EmptyPrimeSet);
    }
    let m_max = match cfg.m_max {
        Some(m) => m,
        None => bounds::derive_m_max_at(cfg.precision)?,
    };
    let derived = bounds::derive_t_bounds(m_max);
    let t_max = cfg.t_max.unwrap_or(derived.t_max);

    let table = enumerate_candidates(cfg.t_min, t_max, m_max)?;
    let outcomes: Result<Vec<PairOutcome>, SieveError> = table
        .pairs
        .par_iter()
        .map(|&(t, m)| {
            let r = final_coefficient_check(t, m, &cfg.primes, cfg.sign_target, cfg.exact_recheck_max)?;
            Ok(match r.status {
                EliminationStatus::Eliminated { witness_prime } => PairOutcome {
                    t,
                    m,
                    status: "eliminated",
                    witness_prime,
                },
                EliminationStatus::Survives { .. } => PairOutcome {
                    t,
                    m,
                    status: "survives",
                    witness_prime: None,
                },
            })
        })
        .collect();
    let outcomes = outcomes?;
    let verdict = if outcomes.iter().all(|o| o.status == "eliminated") {
        "verified"
    } else {
        "unverified"
    };
    Ok(VerificationReport {
        schema_version: 1,
        m_max,
        t_max_coarse: derived.t_max_coarse,
        t_max,
        table: table.rows,
        pairs: outcomes,
        verdict,
    })
}

/// C(m, r) mod 3 by Lucas' theorem: the product of digitwise binomials in
/// base 3. Used to validate the residue-class restriction on m.
pub fn binomial_mod3_lucas(mut m: u64, mut r: u64) -> u8 {
    let mut acc = 1u8;
    while r > 0 || m > 0 {
        let (md, rd) = (m % 3, r % 3);
        if rd > md {
            return 0;
        }
        // digit binomials over {0,1,2}: only C(2,1) = 2 is not 1
        if md == 2 && rd == 1 {
            acc = (acc * 2) % 3;
        }
        m /= 3;
        r /= 3;
    }
    acc
}

/// t^e mod n for arbitrary-precision operands (helper for the congruence
/// identities relating the filters).
pub fn pow_mod_big(base: &BigUint, exp: u64, n: &BigUint) -> BigUint {
    base.modpow(&BigUint::from(exp), n)
}

#[allow(unused)]
fn _to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
