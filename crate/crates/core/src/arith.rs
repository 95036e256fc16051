//! Small machine-integer number theory used throughout the crate.

use num_integer::Integer;

/// Positive divisors of `n` in ascending order (trial division).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function; `mobius(0)` is defined as 0.
pub fn mobius(mut n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Mathematical residue of `x` modulo `n`, in `[0, n)`.
pub fn modn(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// `x ≡ y (mod n)`.
pub fn congruent(x: i128, y: i128, n: u64) -> bool {
    modn(x - y, n) == 0
}

pub fn gcd(a: i128, b: i128) -> u64 {
    a.gcd(&b) as u64
}

/// Inverse of `a` modulo `m` in `[0, m)`, if `gcd(a, m) = 1`. For `m = 1` returns 0.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let ext = (a as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(modn(ext.x, m))
}
