//! Exact integer arithmetic: p-parts, multiplicative orders, cyclotomic
//! values, factorization and primitive prime divisors.

mod factor;
mod prime;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

pub use factor::{factorize, NatFactored, DEFAULT_EFFORT};
pub use prime::{is_prime, is_prime_u64, TRIAL_BOUND};

/// A prime power `p^f` with `f >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    f: u32,
    value: u64,
}

impl PrimePower {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(invalid!("{value} is not a prime power"));
        }
        let p = (2..)
            .take_while(|d| d * d <= value)
            .find(|d| value.is_multiple_of(*d))
            .unwrap_or(value);
        let mut rest = value;
        let mut f = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(invalid!("{value} is not a prime power"));
        }
        Ok(PrimePower { p, f, value })
    }

    pub fn from_parts(p: u64, f: u32) -> Result<Self> {
        if !is_prime_u64(p) || f == 0 {
            return Err(invalid!("{p}^{f} is not a prime power"));
        }
        let value = p
            .checked_pow(f)
            .ok_or_else(|| invalid!("{p}^{f} overflows"))?;
        Ok(PrimePower { p, f, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn big(&self) -> BigUint {
        BigUint::from(self.value)
    }

    /// All prime powers in `2..=max`, ascending.
    pub fn up_to(max: u64) -> Vec<PrimePower> {
        (2..=max).filter_map(|v| PrimePower::new(v).ok()).collect()
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Splits `n` as `p_part * p_prime_part` with `p_part` a power of `p`.
pub fn p_part_split(n: &BigUint, p: u64) -> Result<(BigUint, BigUint)> {
    if !is_prime_u64(p) {
        return Err(invalid!("{p} is not prime"));
    }
    if n.is_zero() {
        return Err(invalid!("p-part of zero"));
    }
    let mut rest = n.clone();
    let mut part = BigUint::one();
    while (&rest % p).is_zero() {
        rest /= p;
        part *= p;
    }
    Ok((part, rest))
}

pub fn p_part(n: &BigUint, p: u64) -> Result<BigUint> {
    p_part_split(n, p).map(|(part, _)| part)
}

/// Exponent of `p` in `n`.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let mut rest = n.clone();
    let mut v = 0;
    while !rest.is_zero() && (&rest % p).is_zero() {
        rest /= p;
        v += 1;
    }
    v
}

/// Least `d >= 1` with `q^d = 1 (mod p)`.
///
/// Needs the factorization of `p - 1`; fails with
/// [`Error::IncompleteFactorization`] if rho gives up on it.
pub fn mult_order(q: &BigUint, p: &BigUint) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(invalid!("{p} is not prime"));
    }
    if (q % p).is_zero() {
        return Err(invalid!("{p} divides {q}"));
    }
    let p_minus_1 = p - 1u32;
    let fac = factorize(&p_minus_1, DEFAULT_EFFORT);
    if !fac.is_complete() {
        return Err(Error::IncompleteFactorization(fac.residue.to_string()));
    }
    let q = q % p;
    let mut order = p_minus_1;
    for (s, &e) in &fac.factors {
        for _ in 0..e {
            let candidate = &order / s;
            if q.modpow(&candidate, p).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

pub fn mult_order_u64(q: u64, p: u64) -> Result<u64> {
    mult_order(&BigUint::from(q), &BigUint::from(p)).map(|d| d.to_u64().unwrap())
}

/// True iff `q` has multiplicative order exactly `e` modulo `r`.
/// Only needs the prime factors of `e`, not of `r - 1`.
pub fn has_order(q: &BigUint, r: &BigUint, e: u64) -> bool {
    if e == 0 || !q.modpow(&BigUint::from(e), r).is_one() {
        return false;
    }
    prime_divisors(e)
        .into_iter()
        .all(|s| !q.modpow(&BigUint::from(e / s), r).is_one())
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(|d| [d, n / d])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&d| is_prime_u64(d))
        .collect()
}

pub fn mobius(n: u64) -> i32 {
    let mut rest = n;
    let mut sign = 1;
    for s in prime_divisors(n) {
        rest /= s;
        if rest.is_multiple_of(s) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// `Phi_d(q)`, from `prod_{k | d} (q^k - 1)^{mu(d/k)}`.
pub fn cyclo_eval(d: u64, q: &BigUint) -> BigUint {
    assert!(d >= 1, "cyclotomic index must be positive");
    assert!(
        q >= &BigUint::from(2u32),
        "cyclotomic argument must be at least 2"
    );
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in divisors(d) {
        let term = q.pow(k as u32) - 1u32;
        match mobius(d / k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

pub fn cyclo_eval_u64(d: u64, q: u64) -> BigUint {
    cyclo_eval(d, &BigUint::from(q))
}

/// Every prime `r` with `ord_r(q) = e`, i.e. dividing `q^e - 1` but no
/// `q^m - 1` for `m < e`. Empty exactly for `(e, q) = (6, 2)`.
pub fn zsigmondy_primes(e: u64, q: &PrimePower) -> Result<BTreeSet<BigUint>> {
    if e < 3 {
        return Err(invalid!(
            "primitive prime divisors are only tracked for e >= 3, got {e}"
        ));
    }
    // Every primitive prime divisor divides Phi_e(q); the only other prime
    // factor Phi_e(q) can have is the largest prime dividing e.
    let value = cyclo_eval(e, &q.big());
    let fac = factorize(&value, DEFAULT_EFFORT);
    if !fac.is_complete() {
        return Err(Error::IncompleteFactorization(fac.residue.to_string()));
    }
    let qb = q.big();
    Ok(fac
        .factors
        .into_keys()
        .filter(|r| has_order(&qb, r, e))
        .collect())
}

/// The largest primitive prime divisor, if one exists.
pub fn zsigmondy_largest(e: u64, q: &PrimePower) -> Result<Option<BigUint>> {
    Ok(zsigmondy_primes(e, q)?.into_iter().next_back())
}

pub fn gcd_big(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
