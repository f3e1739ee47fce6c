use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{invalid, Result};
use crate::exactnum::cyclo_eval;

/// One of the irrational factors of `Phi_8`, `Phi_12` or `Phi_24` over
/// `Q = q^2` that occur in Suzuki and Ree groups. `plus` selects the `''`
/// factor, the one with positive square-root terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedFactor {
    d: u64,
    plus: bool,
}

impl TwistedFactor {
    pub fn new(d: u64, plus: bool) -> Result<Self> {
        if !matches!(d, 8 | 12 | 24) {
            return Err(invalid!("no twisted factor of Phi{d}"));
        }
        Ok(TwistedFactor { d, plus })
    }

    pub fn index(&self) -> u64 {
        self.d
    }

    pub fn is_plus(&self) -> bool {
        self.plus
    }

    /// The radicand `c` of `r = sqrt(c Q)`.
    pub fn radicand(&self) -> u64 {
        if self.d == 12 {
            3
        } else {
            2
        }
    }

    /// Value at `Q` given the exact root `r = sqrt(c Q)`.
    pub fn eval_with_root(&self, big_q: &BigInt, r: &BigInt) -> BigInt {
        let s = if self.plus { r.clone() } else { -r.clone() };
        match self.d {
            8 | 12 => big_q + &s + 1,
            _ => big_q * big_q + &s * big_q + big_q + &s + 1,
        }
    }
}

impl fmt::Display for TwistedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi{}{}", self.d, if self.plus { "''" } else { "'" })
    }
}

/// `q^N * prod Phi_d(q)^a(d)`, times twisted factors for Suzuki and Ree groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloProduct {
    pub q_exponent: u32,
    pub factors: BTreeMap<u64, u32>,
    pub twisted_factors: Vec<TwistedFactor>,
}

impl CycloProduct {
    /// Product of `q^k - sign` over the given `(k, sign)` pairs, with `sign = +-1`.
    pub fn from_degrees(q_exponent: u32, degrees: &[(u64, i8)]) -> Self {
        let mut factors = BTreeMap::new();
        for &(k, sign) in degrees {
            // q^k - 1 = prod_{d | k} Phi_d, q^k + 1 = prod_{d | 2k, d not | k} Phi_d.
            let divs = if sign > 0 {
                crate::exactnum::divisors(k)
            } else {
                crate::exactnum::divisors(2 * k)
                    .into_iter()
                    .filter(|d| k % d != 0)
                    .collect()
            };
            for d in divs {
                *factors.entry(d).or_insert(0) += 1;
            }
        }
        CycloProduct {
            q_exponent,
            factors,
            twisted_factors: Vec::new(),
        }
    }

    pub fn from_factors(
        q_exponent: u32,
        factors: &[(u64, u32)],
        twisted: &[TwistedFactor],
    ) -> Self {
        CycloProduct {
            q_exponent,
            factors: factors.iter().copied().collect(),
            twisted_factors: twisted.to_vec(),
        }
    }

    /// Every factor value with its multiplicity, `Phi_d(q)` first and then
    /// twisted factors (which need the root `r`).
    pub fn factor_values(&self, q: &BigUint, r: Option<&BigInt>) -> Vec<(String, BigUint, u32)> {
        let mut out: Vec<(String, BigUint, u32)> = self
            .factors
            .iter()
            .map(|(&d, &a)| (format!("Phi{d}"), cyclo_eval(d, q), a))
            .collect();
        if let Some(r) = r {
            let q_int = BigInt::from(q.clone());
            for tf in &self.twisted_factors {
                let v = tf.eval_with_root(&q_int, r).to_biguint().unwrap();
                out.push((tf.to_string(), v, 1));
            }
        }
        out
    }

    /// The prime-to-`q` part, i.e. the product of all cyclotomic factors.
    pub fn eval_torus_part(&self, q: &BigUint, r: Option<&BigInt>) -> BigUint {
        self.factor_values(q, r)
            .into_iter()
            .fold(BigUint::one(), |acc, (_, v, a)| acc * v.pow(a))
    }

    pub fn eval(&self, q: &BigUint, r: Option<&BigInt>) -> BigUint {
        q.pow(self.q_exponent) * self.eval_torus_part(q, r)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.q_exponent)?;
        for (d, a) in &self.factors {
            if *a == 1 {
                write!(f, " Phi{d}")?;
            } else {
                write!(f, " Phi{d}^{a}")?;
            }
        }
        for tf in &self.twisted_factors {
            write!(f, " {tf}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_to_factors() {
        let sl3 = CycloProduct::from_degrees(3, &[(2, 1), (3, 1)]);
        assert_eq!(sl3.factors, [(1, 2), (2, 1), (3, 1)].into_iter().collect());
        let plus = CycloProduct::from_degrees(0, &[(3, -1)]);
        assert_eq!(plus.factors, [(2, 1), (6, 1)].into_iter().collect());
        assert_eq!(sl3.to_string(), "q^3 Phi1^2 Phi2 Phi3");
    }

    #[test]
    fn twisted_products() {
        // Phi8' Phi8'' = Q^2 + 1, Phi12' Phi12'' = Q^2 - Q + 1,
        // Phi24' Phi24'' = Q^4 - Q^2 + 1.
        for (d, c, qs) in [
            (8u64, 2i64, [8i64, 32, 128]),
            (12, 3, [27, 243, 2187]),
            (24, 2, [8, 32, 128]),
        ] {
            for big_q in qs {
                let r = BigInt::from(((c * big_q) as f64).sqrt().round() as i64);
                assert_eq!(&r * &r, BigInt::from(c * big_q));
                let qb = BigInt::from(big_q);
                let prod = TwistedFactor::new(d, true).unwrap().eval_with_root(&qb, &r)
                    * TwistedFactor::new(d, false)
                        .unwrap()
                        .eval_with_root(&qb, &r);
                let phi = match d {
                    8 => 4,
                    12 => 6,
                    _ => 12,
                };
                assert_eq!(
                    prod,
                    BigInt::from(cyclo_eval(phi, &BigUint::from(big_q as u64)))
                );
            }
        }
    }
}
