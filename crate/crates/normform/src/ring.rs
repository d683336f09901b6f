//! Exact and modular arithmetic in the cubic ring Z[s]/(s^3 - d), d = t^3 - 1.
//!
//! Elements are coefficient triples `a0 + a1*s + a2*s^2`. The multiplication
//! rule follows from `s^3 = d`:
//!
//! ```text
//! w0 = u0*v0 + d*(u1*v2 + u2*v1)
//! w1 = u0*v1 + u1*v0 + d*u2*v2
//! w2 = u0*v2 + u1*v1 + u2*v0
//! ```
//!
//! The norm of `a + b*s + c*s^2` is the product over the three embeddings
//! `s -> s*w^j` (`w` a primitive cube root of unity), which collapses to the
//! integer closed form `a^3 + d*b^3 + d^2*c^3 - 3*d*a*b*c`. At
//! `(a, b, c) = (x, -y, 1)` this is the norm form
//! `x^3 - d*y^3 + 3*d*x*y + d^2` whose unit values the crate classifies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    /// The ring is only defined for t >= 2.
    #[error("ring parameter t must be at least 2, got {0}")]
    InvalidParameter(BigInt),
    /// Inversion is only implemented for the unit t - s.
    #[error("negative exponent requires the base to be the unit (t, -1, 0)")]
    NegativePowerOfNonUnit,
    /// Modular arithmetic needs p > 3 and p coprime to d.
    #[error("modulus {0} is not admissible (need p > 3 and p not dividing t^3 - 1)")]
    BadModulus(u64),
}

/// The parameter t > 1 together with d = t^3 - 1, fixing the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    t: BigInt,
    d: BigInt,
}

impl RingContext {
    pub fn new(t: impl Into<BigInt>) -> Result<Self, RingError> {
        let t: BigInt = t.into();
        if t < BigInt::from(2) {
            return Err(RingError::InvalidParameter(t));
        }
        let d = &t * &t * &t - 1;
        Ok(RingContext { t, d })
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    /// d = t^3 - 1
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// The fundamental unit t - s as a ring element.
    pub fn unit(&self) -> RingElement {
        RingElement::new(self.t.clone(), BigInt::from(-1), BigInt::zero())
    }

    /// The exact inverse (t - s)^-1 = t^2 + t*s + s^2.
    pub fn unit_inverse(&self) -> RingElement {
        RingElement::new(&self.t * &self.t, self.t.clone(), BigInt::one())
    }
}

/// Coefficient triple a0 + a1*s + a2*s^2; equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub a0: BigInt,
    pub a1: BigInt,
    pub a2: BigInt,
}

impl RingElement {
    pub fn new(a0: impl Into<BigInt>, a1: impl Into<BigInt>, a2: impl Into<BigInt>) -> Self {
        RingElement {
            a0: a0.into(),
            a1: a1.into(),
            a2: a2.into(),
        }
    }

    pub fn one() -> Self {
        RingElement::new(1, 0, 0)
    }

    pub fn neg(&self) -> Self {
        RingElement {
            a0: -&self.a0,
            a1: -&self.a1,
            a2: -&self.a2,
        }
    }
}

/// Product of two elements under s^3 = d.
pub fn mul(u: &RingElement, v: &RingElement, ctx: &RingContext) -> RingElement {
    let d = &ctx.d;
    RingElement {
        a0: &u.a0 * &v.a0 + d * (&u.a1 * &v.a2 + &u.a2 * &v.a1),
        a1: &u.a0 * &v.a1 + &u.a1 * &v.a0 + d * (&u.a2 * &v.a2),
        a2: &u.a0 * &v.a2 + &u.a1 * &v.a1 + &u.a2 * &v.a0,
    }
}

/// Binary exponentiation. Negative exponents are only defined for the
/// fundamental unit t - s, whose inverse t^2 + t*s + s^2 is exact.
pub fn pow(base: &RingElement, m: i64, ctx: &RingContext) -> Result<RingElement, RingError> {
    let (mut base, mut e) = if m < 0 {
        if *base != ctx.unit() {
            return Err(RingError::NegativePowerOfNonUnit);
        }
        (ctx.unit_inverse(), m.unsigned_abs())
    } else {
        (base.clone(), m as u64)
    };
    let mut acc = RingElement::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base, ctx);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, ctx);
        }
    }
    Ok(acc)
}

/// Multiplicative norm N(a + b*s + c*s^2) = a^3 + d*b^3 + d^2*c^3 - 3*d*a*b*c.
pub fn norm(u: &RingElement, ctx: &RingContext) -> BigInt {
    let d = &ctx.d;
    let (a, b, c) = (&u.a0, &u.a1, &u.a2);
    a * a * a + d * (b * b * b) + d * d * (c * c * c) - BigInt::from(3) * d * (a * b * c)
}

/// Componentwise image of an element mod a word-sized prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularRingElement {
    pub r0: u64,
    pub r1: u64,
    pub r2: u64,
    pub p: u64,
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    // mod_floor of a BigInt by a positive word always fits a word
    u64::try_from(&r).expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn modular_mul(u: &ModularRingElement, v: &ModularRingElement, d: u64, p: u64) -> ModularRingElement {
    let cross = (mul_mod(u.r1, v.r2, p) + mul_mod(u.r2, v.r1, p)) % p;
    let r0 = (mul_mod(u.r0, v.r0, p) + mul_mod(d, cross, p)) % p;
    let r1 = ((mul_mod(u.r0, v.r1, p) + mul_mod(u.r1, v.r0, p)) % p + mul_mod(d, mul_mod(u.r2, v.r2, p), p)) % p;
    let r2 = ((mul_mod(u.r0, v.r2, p) + mul_mod(u.r1, v.r1, p)) % p + mul_mod(u.r2, v.r0, p)) % p;
    ModularRingElement { r0, r1, r2, p }
}

/// `pow(base, m, ctx)` reduced componentwise mod p, in O(log m) ring products
/// on word-sized residues. Requires p > 3 and p coprime to d.
pub fn pow_mod_prime(
    base: &RingElement,
    m: u64,
    ctx: &RingContext,
    p: u64,
) -> Result<ModularRingElement, RingError> {
    if p <= 3 || ctx.d.mod_floor(&BigInt::from(p)).is_zero() {
        return Err(RingError::BadModulus(p));
    }
    let d = reduce(&ctx.d, p);
    let mut base = ModularRingElement {
        r0: reduce(&base.a0, p),
        r1: reduce(&base.a1, p),
        r2: reduce(&base.a2, p),
        p,
    };
    let mut acc = ModularRingElement { r0: 1, r1: 0, r2: 0, p };
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = modular_mul(&acc, &base, d, p);
        }
        e >>= 1;
        if e > 0 {
            base = modular_mul(&base, &base, d, p);
        }
    }
    Ok(acc)
}

/// Exact s^2-coefficient of (t - s)^m. Only practical for m up to a few
/// thousand; the sieve switches to `pow_mod_prime` beyond that.
pub fn unit_power_s2_coefficient(ctx: &RingContext, m: u64) -> BigInt {
    pow(&ctx.unit(), m as i64, ctx)
        .expect("non-negative exponent cannot fail")
        .a2
}

impl ModularRingElement {
    /// True when the s^2-coefficient residue equals `target` mod p, with
    /// `target` given as +1 or -1.
    pub fn s2_matches_sign(&self, target: i8) -> bool {
        match target {
            1 => self.r2 == 1 % self.p,
            -1 => self.r2 == self.p - 1,
            _ => unreachable!("target is a sign"),
        }
    }
}

#[allow(unused)]
pub(crate) fn norm_is_unit(u: &RingElement, ctx: &RingContext) -> bool {
    norm(u, ctx).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: i64) -> RingContext {
        RingContext::new(t).unwrap()
    }

    #[test]
    fn context_rejects_small_t() {
        assert!(matches!(RingContext::new(1), Err(RingError::InvalidParameter(_))));
        assert!(matches!(RingContext::new(-5), Err(RingError::InvalidParameter(_))));
        assert_eq!(ctx(2).d(), &BigInt::from(7));
    }

    #[test]
    fn unit_times_inverse_is_one() {
        // (2, -1, 0) * (4, 2, 1) = (1, 0, 0) over t = 2
        let c = ctx(2);
        let prod = mul(&c.unit(), &c.unit_inverse(), &c);
        assert_eq!(prod, RingElement::one());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (4, -4, 1)^2 = (-40, -25, 24) over t = 2, via brute-force
        // polynomial multiplication reduced by s^3 = 7
        let c = ctx(2);
        let u = RingElement::new(4, -4, 1);
        assert_eq!(mul(&u, &u, &c), RingElement::new(-40, -25, 24));
    }

    #[test]
    fn mul_identity_and_commutativity() {
        let c = ctx(3);
        let u = RingElement::new(17, -5, 9);
        let v = RingElement::new(-2, 11, 4);
        assert_eq!(mul(&u, &RingElement::one(), &c), u);
        assert_eq!(mul(&u, &v, &c), mul(&v, &u, &c));
    }

    #[test]
    fn pow_small_cases() {
        let c = ctx(2);
        assert_eq!(pow(&c.unit(), 0, &c).unwrap(), RingElement::one());
        assert_eq!(pow(&c.unit(), 2, &c).unwrap(), RingElement::new(4, -4, 1));
        assert_eq!(pow(&c.unit(), 5, &c).unwrap(), RingElement::new(-248, -10, 73));
    }

    #[test]
    fn pow_negative_exponent() {
        let c = ctx(3);
        assert_eq!(pow(&c.unit(), -1, &c).unwrap(), RingElement::new(9, 3, 1));
        let not_unit = RingElement::new(3, -1, 1);
        assert_eq!(pow(&not_unit, -2, &c), Err(RingError::NegativePowerOfNonUnit));
    }

    #[test]
    fn norm_examples() {
        let c = ctx(2);
        assert_eq!(norm(&RingElement::new(4, -4, 1), &c), BigInt::one());
        assert_eq!(norm(&RingElement::new(0, 1, 0), &c), BigInt::from(7));
        assert_eq!(norm(&RingElement::new(4, 2, 1), &c), BigInt::one());
        assert_eq!(norm(&RingElement::one(), &c), BigInt::one());
    }

    #[test]
    fn pow_mod_prime_examples() {
        let c = ctx(2);
        let r = pow_mod_prime(&c.unit(), 5, &c, 101).unwrap();
        assert_eq!((r.r0, r.r1, r.r2), (55, 91, 73));
        let r = pow_mod_prime(&c.unit(), 0, &c, 101).unwrap();
        assert_eq!((r.r0, r.r1, r.r2), (1, 0, 0));
        let r = pow_mod_prime(&c.unit(), 2, &c, 5).unwrap();
        assert_eq!((r.r0, r.r1, r.r2), (4, 1, 1));
    }

    #[test]
    fn bad_moduli_rejected() {
        let c = ctx(2);
        assert_eq!(pow_mod_prime(&c.unit(), 5, &c, 3), Err(RingError::BadModulus(3)));
        // 7 divides d = 7
        assert_eq!(pow_mod_prime(&c.unit(), 5, &c, 7), Err(RingError::BadModulus(7)));
    }

    #[test]
    fn s2_sign_matching() {
        let c = ctx(2);
        let r = pow_mod_prime(&c.unit(), 2, &c, 101).unwrap();
        assert!(r.s2_matches_sign(1));
        assert!(!r.s2_matches_sign(-1));
    }
}
