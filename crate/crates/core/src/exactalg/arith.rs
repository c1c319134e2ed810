//! Elementary number theory on machine integers: divisors, prime
//! factorizations, the Möbius function and p-adic valuations.
//!
//! Group orders and divisor indices stay small (well below `u32::MAX`), so
//! these helpers work on `u64` and leave arbitrary precision to polynomial
//! and matrix code.

use std::collections::HashMap;

/// All positive divisors of `n` in ascending order. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization of `n >= 1` by trial division, as `(prime, exponent)`
/// pairs with primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Returns `Some((p, k))` with `n = p^k`, `k >= 1`, when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Classical Möbius function via factorization.
pub fn moebius_nt(m: u64) -> i64 {
    assert!(m >= 1, "moebius_nt: m must be positive");
    let mut sign = 1;
    for (_, e) in factorize(m) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Möbius function from its defining recursion `μ(1) = 1`,
/// `Σ_{d | m} μ(d) = 0` for `m > 1`.
///
/// Kept independent of [`moebius_nt`]: it never factors anything.
pub fn moebius_recursive(m: u64) -> i64 {
    assert!(m >= 1, "moebius_recursive: m must be positive");
    fn go(m: u64, memo: &mut HashMap<u64, i64>) -> i64 {
        if m == 1 {
            return 1;
        }
        if let Some(&v) = memo.get(&m) {
            return v;
        }
        let mut sum = 0;
        for d in divisors(m) {
            if d != m {
                sum += go(d, memo);
            }
        }
        memo.insert(m, -sum);
        -sum
    }
    go(m, &mut HashMap::new())
}

/// Largest `i` with `p^i | n`.
pub fn p_adic_valuation(p: u64, n: u64) -> u32 {
    assert!(p >= 2, "p_adic_valuation: p must be at least 2");
    assert!(n >= 1, "p_adic_valuation: n must be positive");
    let mut n = n;
    let mut i = 0;
    while n.is_multiple_of(p) {
        n /= p;
        i += 1;
    }
    i
}

/// Euler's totient, which is also the degree of the `l`-th cyclotomic polynomial.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert!(divisors(0).is_empty());
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius_nt(1), 1);
        assert_eq!(moebius_nt(4), 0);
        assert_eq!(moebius_nt(6), 1);
        assert_eq!(moebius_nt(30), -1);
        assert_eq!(moebius_recursive(1), 1);
        assert_eq!(moebius_recursive(2), -1);
        assert_eq!(moebius_recursive(12), 0);
    }

    #[test]
    fn valuations() {
        assert_eq!(p_adic_valuation(2, 12), 2);
        assert_eq!(p_adic_valuation(3, 12), 1);
        assert_eq!(p_adic_valuation(5, 12), 0);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn totient_small() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(totient(i as u64 + 1), e);
        }
    }
}
