//! Small exact-integer helpers shared by the rest of the crate.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`.
pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
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

/// Miller-Rabin over the first twelve prime bases; exact below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, k)` with `q = p^k` and `p` prime, or `None`.
pub fn prime_power(q: &BigUint) -> Option<(BigUint, u32)> {
    if q < &BigUint::from(2u32) {
        return None;
    }
    const TRIAL: u64 = 1 << 16;
    for p in 2..TRIAL {
        let pb = BigUint::from(p);
        if q.is_multiple_of(&pb) {
            let mut rest = q.clone();
            let mut k = 0;
            while rest.is_multiple_of(&pb) {
                rest /= &pb;
                k += 1;
            }
            return rest.is_one().then_some((pb, k));
        }
        if pb.pow(2) > *q {
            return Some((q.clone(), 1));
        }
    }
    // every prime factor exceeds TRIAL, so the exponent is small
    let max_k = (q.bits() / 16).max(1) as u32;
    for k in (1..=max_k).rev() {
        let r = q.nth_root(k);
        if r.pow(k) == *q && is_probable_prime(&r) {
            return Some((r, k));
        }
    }
    None
}

/// Exponent of the prime `p` in `n` (`n > 0`).
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigUint::from(p);
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Writes `n = rest * p^e` with `p` not dividing `rest`; returns `(rest, e)`.
pub fn split_prime_part(mut n: u64, p: u64) -> (u64, u32) {
    assert!(n > 0 && p > 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n, e)
}

pub fn valuation_u64(n: u64, p: u64) -> u32 {
    split_prime_part(n, p).1
}

/// Inverse of `a` modulo `m` for coprime `a`, `m` (`m >= 1`).
pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime_u64(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let got: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&BigUint::from(9u32)), Some((BigUint::from(3u32), 2)));
        assert_eq!(prime_power(&BigUint::from(49u32)), Some((BigUint::from(7u32), 2)));
        assert_eq!(prime_power(&BigUint::from(12u32)), None);
        assert_eq!(prime_power(&BigUint::from(1u32)), None);
        let big = BigUint::from(65_537u32).pow(3);
        assert_eq!(prime_power(&big), Some((BigUint::from(65_537u32), 3)));
        let q = BigUint::from(49u32).pow(24);
        assert_eq!(prime_power(&q), Some((BigUint::from(7u32), 48)));
    }

    #[test]
    fn valuations_and_inverses() {
        assert_eq!(valuation(&BigUint::from(728u32), 2), 3);
        assert_eq!(valuation(&BigUint::from(728u32), 7), 1);
        assert_eq!(split_prime_part(12, 3), (4, 1));
        assert_eq!(split_prime_part(8, 2), (1, 3));
        assert_eq!(mod_inverse_u64(7, 104), Some(15));
        assert_eq!(mod_inverse_u64(2, 4), None);
        assert_eq!(mod_inverse_u64(5, 1), Some(0));
    }
}
