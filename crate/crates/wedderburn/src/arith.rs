//! Small integer utilities: gcd, modular powers, primality and factorization.
//!
//! Everything here is deterministic.  Factorization uses trial division
//! followed by Brent's variant of Pollard rho with a fixed probe sequence;
//! the sizes that occur in practice (`q^o - 1` for ambient fields) are far
//! below the point where this becomes slow.

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn gcd_u128(a: u128, b: u128) -> u128 {
    num_integer::gcd(a, b)
}

/// `base^exp mod m` for `m > 0`, without overflow for `m < 2^64`.
pub fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `a * b mod m` avoiding overflow for moduli up to 2^127.
pub fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    // Russian-peasant fallback for large moduli; direct product when safe.
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let mut a = a % m;
    let mut b = b % m;
    let mut acc: u128 = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = acc.checked_add(a).map(|s| s % m).unwrap_or_else(|| {
                // acc + a wrapped past 2^128; both < m < 2^127 so this cannot happen.
                unreachable!("modulus out of supported range")
            });
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `n < 2^64` and strong enough
/// beyond that for the field sizes used here.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    // Brent's cycle detection with a fixed sequence of polynomial offsets.
    debug_assert!(n > 1 && !is_prime_u128(n) && n % 2 == 1);
    for c in 1u128.. {
        let f = |x: u128| (mul_mod_u128(x, x, n) + c) % n;
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
pub fn factorize_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, m)) => *m += 1,
        None => out.push((p, 1)),
    };
    for p in [2u128, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d: u128 = 7;
    let mut stack: Vec<u128> = Vec::new();
    while d * d <= n && d < 100_000 {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            push(m, &mut out);
            continue;
        }
        let f = pollard_rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    out
}

/// Writes `n` as `p^m` for a prime `p`, if possible.
pub fn as_prime_power(n: u128) -> Option<(u128, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize_u128(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Euler's totient of `k`.
pub fn euler_phi(k: u64) -> u64 {
    let mut phi = k as u128;
    for (p, _) in factorize_u128(k as u128) {
        phi = phi / p * (p - 1);
    }
    phi as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u128> = (0u128..60).filter(|&n| is_prime_u128(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize_u128(1), vec![]);
        assert_eq!(factorize_u128(1000), vec![(2, 3), (5, 3)]);
        // 2^28 - 1 = 3 * 5 * 29 * 43 * 113 * 127
        assert_eq!(
            factorize_u128((1u128 << 28) - 1),
            vec![(3, 1), (5, 1), (29, 1), (43, 1), (113, 1), (127, 1)]
        );
        // A product of two large-ish primes exercises the rho path.
        assert_eq!(factorize_u128(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(as_prime_power(9), Some((3, 2)));
        assert_eq!(as_prime_power(41), Some((41, 1)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(as_prime_power(1), None);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(10), 4);
        assert_eq!(euler_phi(30), 8);
    }
}
