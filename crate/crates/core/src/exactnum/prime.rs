//! Primality testing.
//!
//! Numbers below the trial-division bound are decided by the sieve. Above it we
//! run Miller-Rabin on the first twelve prime bases, which is a proof for
//! `n < 3.18 * 10^23`, followed by a strong Lucas test (Baillie-PSW) for
//! anything larger. No BPSW pseudoprime is known.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Primes below this bound are found by trial division in [`super::factorize`].
pub const TRIAL_BOUND: u32 = 1 << 16;

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n];
        let mut out = Vec::new();
        for i in 2..n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Deterministic primality test (see module docs).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small < TRIAL_BOUND as u64 {
            return small_primes().binary_search(&(small as u32)).is_ok();
        }
    }
    for &p in small_primes().iter().take(64) {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !MR_BASES.iter().all(|&a| miller_rabin(n, &BigUint::from(a))) {
        return false;
    }
    // Smallest strong pseudoprime to all twelve bases.
    let proven_bound = BigUint::parse_bytes(b"318665857834031151167461", 10).unwrap();
    if n < &proven_bound {
        return true;
    }
    strong_lucas(n)
}

fn miller_rabin(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Jacobi symbol (a / n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().unwrap();
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                // gcd(D, n) > 1; n is not prime unless n == |D|, excluded by size.
                return false;
            }
            _ => {
                d = if d.sign() == Sign::Plus {
                    -(d + BigInt::from(2))
                } else {
                    -d + BigInt::from(2)
                };
            }
        }
    }
    let modulus = BigInt::from_biguint(Sign::Plus, n.clone());
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let reduce = |x: BigInt| x.mod_floor(&modulus);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &modulus } else { x };
        reduce(x / 2)
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = reduce(q.clone());
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = reduce(&u * &v);
        v = reduce(&v * &v - 2 * &qk);
        qk = reduce(&qk * &qk);
        if k.bit(i) {
            let u_next = half(&p * &u + &v);
            let v_next = half(&d * &u + &p * &v);
            u = u_next;
            v = v_next;
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = reduce(&qk * &qk);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
        for n in (1u64 << 32)..(1u64 << 32) + 2_000 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
    }

    #[test]
    fn rejects_strong_pseudoprimes() {
        // Strong pseudoprime to the first twelve prime bases.
        let psp = BigUint::parse_bytes(b"318665857834031151167461", 10).unwrap();
        assert!(!is_prime(&psp));
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(2_047));
    }

    #[test]
    fn large_primes_beyond_mr_proof_range() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        let r = BigUint::parse_bytes(b"303309617049998388989376043", 10).unwrap();
        assert!(is_prime(&r));
        assert!(!is_prime(&(&m127 * &r)));
    }

    #[test]
    fn lucas_alone_on_known_values() {
        for p in [1_000_003u64, 999_999_937, 2_147_483_647] {
            assert!(strong_lucas(&BigUint::from(p)));
        }
        for c in [1_000_001u64, 1_000_000_005, 99_990_001 * 3] {
            assert!(!strong_lucas(&BigUint::from(c)));
        }
        // Strong Lucas pseudoprimes; base-2 Miller-Rabin catches them.
        for c in [5_459u64, 5_777, 10_877] {
            assert!(strong_lucas(&BigUint::from(c)));
            assert!(!miller_rabin(&BigUint::from(c), &BigUint::from(2u32)));
        }
    }
}
