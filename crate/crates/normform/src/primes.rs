//! Deterministic 64-bit primality testing and the default witness-prime set
//! used by the modular elimination stage.

/// Strong-pseudoprime bases that make Miller-Rabin deterministic for all
/// `n < 3.317e24`, which covers the whole `u64` range.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the fixed base set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes strictly below `limit`, in descending order.
pub fn largest_primes_below(limit: u64, count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut n = limit - 1;
    if n % 2 == 0 {
        n -= 1;
    }
    while primes.len() < count && n > 2 {
        if is_prime_u64(n) {
            primes.push(n);
        }
        n -= 2;
    }
    primes
}

/// Default witness primes for the coefficient check: the 16 largest primes
/// below 2^62. Word-sized so that ring products stay inside `u128`, and all
/// far larger than any modulus `t^3 - 1` or `t^3` in range, hence coprime to
/// both.
pub fn default_prime_set() -> Vec<u64> {
    largest_primes_below(1 << 62, 16)
}
