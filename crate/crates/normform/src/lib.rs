//! Complete solution of the pencil of cubic norm-form equations
//!
//! ```text
//! x^3 - (t^3-1)*y^3 + 3*(t^3-1)*x*y + (t^3-1)^2 = +-1,   t > 1
//! ```
//!
//! whose only integer solutions are the functional pairs `(x, y) = (t^2, 2t)`
//! and `(t^2, -t)`. The crate mechanizes every step of the argument:
//!
//! * [`ring`] — exact and modular arithmetic in Z[s]/(s^3 - (t^3-1)),
//!   including the norm form and fast powers of the unit t - s;
//! * [`units`] — the Artin-inequality certificate that t - s is fundamental,
//!   the classification of unit exponents, and the degree-27 functional
//!   identity check;
//! * [`bounds`] — rigorous interval evaluation of the linear form in
//!   logarithms, its upper bound, Laurent's lower bound, and the derived
//!   caps m <= 225676, t <= 2942, t <= 352;
//! * [`sieve`] — the congruence filters, candidate enumeration, and modular
//!   elimination of every remaining pair;
//! * [`oracle`] — an independent brute-force search used as ground truth for
//!   small t;
//! * [`interval`] — outward-rounded arbitrary-precision interval arithmetic
//!   backing all analytic verdicts;
//! * [`primes`] — deterministic primality testing and the default witness
//!   prime set.
//!
//! The full pipeline is [`sieve::verify_theorem`]; the `normform` binary in
//! the companion CLI crate exposes it together with each sub-computation.

pub mod bounds;
pub mod interval;
pub mod oracle;
pub mod primes;
pub mod ring;
pub mod sieve;
pub mod units;

pub use bounds::{derive_m_max, derive_t_bounds, eval_lambda1, lambda1_upper, laurent_lower,
    BoundsError, DerivedBounds, Lambda1Evaluation, DEFAULT_PREC};
pub use interval::{Interval, RealCtx};
pub use oracle::{brute_force, brute_force_naive, cross_check, norm_value, CrossCheckReport,
    FoundSolution, OracleError, SearchWindow};
pub use primes::{default_prime_set, is_prime_u64};
pub use ring::{ModularRingElement, RingContext, RingElement, RingError};
pub use sieve::{admissible, enumerate_candidates, final_coefficient_check, verify_theorem,
    AdmissibilityReport, CandidateTable, EliminationResult, EliminationStatus, PairOutcome,
    SieveError, SignTarget, TableRow, VerificationReport, VerifyConfig};
pub use units::{classify_exponent, solution_from_exponent, verify_fundamental_unit,
    verify_ziegler_identity, ExponentClass, SolutionRecord, UnitError};
