//! Trial division followed by Pollard-Brent rho.
//!
//! Cofactors below 2^126 run rho in Montgomery form over `u128`; larger ones
//! fall back to `BigUint`. All seeds are fixed so a given `(n, effort_cap)`
//! always produces the same result.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::{is_prime, small_primes};

/// Rho iteration budget used by callers that do not care.
pub const DEFAULT_EFFORT: u64 = 1 << 26;

/// A natural number together with as much of its factorization as was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatFactored {
    pub value: BigUint,
    pub factors: BTreeMap<BigUint, u32>,
    /// Unfactored composite cofactor; 1 when the factorization is complete.
    pub residue: BigUint,
}

impl NatFactored {
    pub fn is_complete(&self) -> bool {
        self.residue.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.keys()
    }

    pub fn reconstruct(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.residue.clone(), |acc, (p, &e)| acc * p.pow(e))
    }
}

pub fn factorize(n: &BigUint, effort_cap: u64) -> NatFactored {
    let mut factors = BTreeMap::new();
    if n.is_zero() {
        return NatFactored {
            value: n.clone(),
            factors,
            residue: BigUint::zero(),
        };
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.insert(p_big, e);
        }
    }

    let mut residue = BigUint::one();
    let mut stack = vec![rest];
    let mut budget = effort_cap;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        match find_factor(&m, &mut budget) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => residue *= m,
        }
    }
    NatFactored {
        value: n.clone(),
        factors,
        residue,
    }
}

fn find_factor(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let root = num_integer::Roots::sqrt(n);
    if &(&root * &root) == n {
        return Some(root);
    }
    for c in 1..=16u64 {
        if *budget == 0 {
            return None;
        }
        let found = match n.to_u128() {
            Some(small) if small < 1 << 126 => rho_u128(small, c, budget).map(BigUint::from),
            _ => rho_big(n, c, budget),
        };
        if let Some(d) = found {
            if !d.is_one() && &d != n {
                return Some(d);
            }
        }
    }
    None
}

/// 128 x 128 -> 256 bit product as (hi, lo).
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & mask);
    let (b_hi, b_lo) = (b >> 64, b & mask);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & mask) + (hl & mask);
    let lo = (ll & mask) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery arithmetic modulo an odd `n < 2^126` with R = 2^128.
struct Montgomery {
    n: u128,
    n_neg_inv: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        Montgomery {
            n,
            n_neg_inv: inv.wrapping_neg(),
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mn_hi, mn_lo) = mul_wide(m, self.n);
        let carry = lo.overflowing_add(mn_lo).1 as u128;
        let t = hi + mn_hi + carry;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's cycle finding with batched gcds. Works on Montgomery residues
/// directly; the map x -> x^2 + c is still a pseudo-random polynomial map.
fn rho_u128(n: u128, c: u64, budget: &mut u64) -> Option<u128> {
    let mont = Montgomery::new(n);
    let c = c as u128 % n;
    let f = |x: u128| mont.add(mont.mul(x, x), c);
    const BATCH: u64 = 128;
    let mut y: u128 = 2;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let (mut x, mut ys);
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                let diff = x.abs_diff(y);
                q = mont.mul(q, diff);
            }
            *budget = budget.saturating_sub(steps);
            let g = gcd_u128(q, n);
            if g != 1 {
                if g != n {
                    return Some(g);
                }
                // Overshot: replay this batch one step at a time.
                loop {
                    ys = f(ys);
                    let diff = x.abs_diff(ys);
                    let g = gcd_u128(diff, n);
                    if g != 1 {
                        return if g == n { None } else { Some(g) };
                    }
                }
            }
            if *budget == 0 {
                return None;
            }
            k += steps;
        }
        r *= 2;
    }
}

fn rho_big(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    const BATCH: u64 = 128;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    loop {
        let x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r {
            let mut ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            *budget = budget.saturating_sub(steps);
            let g = q.gcd(n);
            if !g.is_one() {
                if &g != n {
                    return Some(g);
                }
                loop {
                    ys = f(&ys);
                    let diff = if x > ys { &x - &ys } else { &ys - &x };
                    let g = diff.gcd(n);
                    if !g.is_one() {
                        return if &g == n { None } else { Some(g) };
                    }
                }
            }
            if *budget == 0 {
                return None;
            }
            k += steps;
        }
        r *= 2;
    }
}
