//! Integer helpers: primality, factorization, and arithmetic functions.
//!
//! Everything here is exact. Factorization is trial division plus Brent's
//! cycle-finding variant of Pollard rho, which is ample for the magnitudes
//! this library meets (orders divide p^k - 1 for small p and moderate k).

use num_integer::Integer;

/// Largest `e` such that `p^e` divides `n`. `v_adic(p, 0)` is undefined and
/// panics; callers only evaluate it at positive `n`.
pub fn v_adic(p: u64, n: u64) -> u32 {
    assert!(n > 0, "p-adic valuation of 0");
    assert!(p >= 2);
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `base^exp` if it fits in `u128`.
pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // Fast path: no overflow possible below 2^64.
    if a < (1 << 64) && b < (1 << 64) {
        return (a * b) % m;
    }
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a + a) % m;
        b >>= 1;
    }
    acc
}

fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `n < 3_317_044_064_679_887_385_961_981`,
/// which covers every magnitude produced in this crate.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for machine-word inputs (moduli of prime fields).
pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn pollard_rho(n: u128) -> u128 {
    // Brent's variant; n must be odd, composite, and not a prime power of a
    // small prime (trial division has already run).
    let mut c: u128 = 1;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = if x > y { x - y } else { y - x }.gcd(&n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization with multiplicities, ascending primes.
pub fn factor_u128(n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "factorization of 0");
    let mut n = n;
    let mut out: Vec<(u128, u32)> = Vec::new();
    for q in [2u128, 3, 5] {
        let mut e = 0;
        while n % q == 0 {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    }
    // Wheel over residues coprime to 30.
    let mut q: u128 = 7;
    let steps = [4u128, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while q * q <= n && q < 1_000_000 {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += steps[i];
        i = (i + 1) % steps.len();
    }
    let mut stack = vec![n];
    let mut rest: Vec<u128> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            rest.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    rest.sort_unstable();
    for m in rest {
        match out.last_mut() {
            Some((q, e)) if *q == m => *e += 1,
            _ => out.push((m, 1)),
        }
    }
    out.sort_unstable_by_key(|&(q, _)| q);
    out
}

/// Moebius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n > 0);
    let mut mu = 1i64;
    for (_, e) in factor_u128(n as u128) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0);
    let mut divs: Vec<u64> = vec![1];
    for (q, e) in factor_u128(n as u128) {
        let q = q as u64;
        let base = divs.clone();
        let mut power = 1u64;
        for _ in 0..e {
            power *= q;
            divs.extend(base.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    divs
}

/// Multiplicative order of `a` modulo the group order `group`, given that
/// `a^group = 1` is already known to hold via `pow`. `pow(e)` must compute
/// `a^e`; `is_one(x)` tests the result against the identity.
///
/// Factors `group` and strips primes, so it runs in time polynomial in
/// `log(group)` plus the cost of the callback powerings.
pub fn order_from_group<F, T, G>(group: u128, pow: F, is_one: G) -> u128
where
    F: Fn(u128) -> T,
    G: Fn(&T) -> bool,
{
    debug_assert!(is_one(&pow(group)));
    let mut m = group;
    for (q, _) in factor_u128(group) {
        while m % q == 0 && is_one(&pow(m / q)) {
            m /= q;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(v_adic(2, 12), 2);
        assert_eq!(v_adic(3, 12), 1);
        assert_eq!(v_adic(5, 12), 0);
        assert_eq!(v_adic(2, 1), 0);
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn primality_large() {
        assert!(is_prime_u128(2u128.pow(61) - 1));
        assert!(!is_prime_u128(2u128.pow(67) - 1));
    }

    #[test]
    fn factor_mersenne() {
        // 2^40 - 1 = 3 * 5^2 * 11 * 17 * 31 * 41 * 61681
        let f = factor_u128((1u128 << 40) - 1);
        assert_eq!(f, vec![(3, 1), (5, 2), (11, 1), (17, 1), (31, 1), (41, 1), (61681, 1)]);
    }

    #[test]
    fn factor_with_large_prime_pair() {
        let n = 1_000_003u128 * 1_000_033u128;
        assert_eq!(factor_u128(n), vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn moebius_values() {
        let mu: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn divisors_of_60() {
        assert_eq!(divisors(60), vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
    }

    #[test]
    fn order_stripping() {
        // order of 2 mod 31 divides 30 and equals 5
        let ord = order_from_group(30, |e| powmod(2, e, 31), |x| *x == 1);
        assert_eq!(ord, 5);
    }
}
