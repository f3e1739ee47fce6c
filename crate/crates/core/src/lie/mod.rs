//! Finite groups of Lie type in their simply connected form: order formulas,
//! centres, Weyl groups, Sylow cyclicity and the maximal torus tables.

mod cyclo;
mod expr;
mod tables;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::exactnum::{factorial, mult_order, p_part, p_part_split, PrimePower};

pub use cyclo::{CycloProduct, TwistedFactor};
pub use expr::{Env, Expr};
pub use tables::{torus_entries, TorusEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    Triality,
    Suzuki,
    ReeG2,
    ReeF4,
    G2,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::TwistedA,
        Family::B,
        Family::C,
        Family::D,
        Family::TwistedD,
        Family::Triality,
        Family::Suzuki,
        Family::ReeG2,
        Family::ReeF4,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::TwistedE6,
        Family::E7,
        Family::E8,
    ];

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            Family::A | Family::TwistedA | Family::B | Family::C | Family::D | Family::TwistedD
        )
    }

    /// The rank parameter for the exceptional families, which have no choice.
    pub fn fixed_rank(self) -> Option<u32> {
        Some(match self {
            Family::Triality | Family::F4 | Family::ReeF4 => 4,
            Family::Suzuki | Family::ReeG2 | Family::G2 => 2,
            Family::E6 | Family::TwistedE6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            _ => return None,
        })
    }

    fn min_rank(self) -> u32 {
        match self {
            Family::A | Family::B | Family::C => 2,
            Family::TwistedA => 3,
            Family::D | Family::TwistedD => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    /// Suzuki and Ree groups, whose field parameter is an odd power of 2 or 3.
    pub fn is_very_twisted(self) -> bool {
        matches!(self, Family::Suzuki | Family::ReeG2 | Family::ReeF4)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::Triality => "3D4",
            Family::Suzuki => "2B2",
            Family::ReeG2 => "2G2",
            Family::ReeF4 => "2F4",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::TwistedE6 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.symbol().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid!("unknown family {s:?}"))
    }
}

/// A simply connected group `G^F`. The rank parameter follows the torus
/// tables: type `A` with `rank = n` is `SL_n`. Suzuki and Ree groups store
/// `Q = q^2` in `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    family: Family,
    rank: u32,
    q: PrimePower,
}

impl GroupSpec {
    pub fn new(family: Family, rank: u32, q: PrimePower) -> Result<Self> {
        if let Some(fixed) = family.fixed_rank() {
            if rank != fixed {
                return Err(invalid!("{family} has rank parameter {fixed}, not {rank}"));
            }
        } else if rank < family.min_rank() {
            return Err(invalid!(
                "{family} needs rank parameter at least {}, got {rank}",
                family.min_rank()
            ));
        }
        let (p, min_q) = match family {
            Family::Suzuki => (2, 8),
            Family::ReeG2 => (3, 27),
            Family::ReeF4 => (2, 2),
            _ => (q.p(), 2),
        };
        if family.is_very_twisted() && (q.p() != p || q.f().is_multiple_of(2) || q.value() < min_q)
        {
            return Err(invalid!(
                "{family} needs Q an odd power of {p} with Q >= {min_q}, got {q}"
            ));
        }
        Ok(GroupSpec { family, rank, q })
    }

    pub fn classical(family: Family, rank: u32, q: u64) -> Result<Self> {
        GroupSpec::new(family, rank, PrimePower::new(q)?)
    }

    pub fn exceptional(family: Family, q: u64) -> Result<Self> {
        let rank = family
            .fixed_rank()
            .ok_or_else(|| invalid!("{family} is not an exceptional family"))?;
        GroupSpec::new(family, rank, PrimePower::new(q)?)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn q_big(&self) -> BigUint {
        self.q.big()
    }

    /// Defining characteristic.
    pub fn p(&self) -> u64 {
        self.q.p()
    }

    /// Rank of the algebraic group.
    pub fn lie_rank(&self) -> u32 {
        match self.family {
            Family::A | Family::TwistedA => self.rank - 1,
            _ => self.rank,
        }
    }

    /// `sqrt(2Q)` or `sqrt(3Q)` for Suzuki and Ree groups.
    pub fn twist_root(&self) -> Option<BigInt> {
        let c = match self.family {
            Family::Suzuki | Family::ReeF4 => 2u64,
            Family::ReeG2 => 3,
            _ => return None,
        };
        let rr = BigUint::from(c * self.q.value());
        let r = rr.sqrt();
        debug_assert_eq!(&r * &r, rr);
        Some(BigInt::from(r))
    }

    /// Binding of `q`, `n` and `r` for table expressions.
    pub fn env(&self) -> Env {
        Env {
            q: BigInt::from(self.q.value()),
            n: BigInt::from(self.rank),
            r: self.twist_root(),
            t: None,
        }
    }

    /// Order formula `q^N prod Phi_d(q)^a(d)` (`q` meaning `Q` for Suzuki/Ree).
    pub fn order_formula(&self) -> CycloProduct {
        let n = self.rank as u64;
        let n32 = self.rank;
        let even = |ks: std::ops::RangeInclusive<u64>| ks.map(|k| (2 * k, 1i8)).collect::<Vec<_>>();
        let plain = |ds: &[u64]| ds.iter().map(|&d| (d, 1i8)).collect::<Vec<_>>();
        match self.family {
            Family::A => CycloProduct::from_degrees(
                n32 * (n32 - 1) / 2,
                &(2..=n).map(|k| (k, 1)).collect::<Vec<_>>(),
            ),
            Family::TwistedA => CycloProduct::from_degrees(
                n32 * (n32 - 1) / 2,
                &(2..=n)
                    .map(|k| (k, if k % 2 == 0 { 1 } else { -1 }))
                    .collect::<Vec<_>>(),
            ),
            Family::B | Family::C => CycloProduct::from_degrees(n32 * n32, &even(1..=n)),
            Family::D | Family::TwistedD => {
                let mut degs = even(1..=n - 1);
                degs.push((n, if self.family == Family::D { 1 } else { -1 }));
                CycloProduct::from_degrees(n32 * (n32 - 1), &degs)
            }
            Family::Triality => {
                CycloProduct::from_factors(12, &[(1, 2), (2, 2), (3, 2), (6, 2), (12, 1)], &[])
            }
            Family::G2 => CycloProduct::from_degrees(6, &plain(&[2, 6])),
            Family::F4 => CycloProduct::from_degrees(24, &plain(&[2, 6, 8, 12])),
            Family::E6 => CycloProduct::from_degrees(36, &plain(&[2, 5, 6, 8, 9, 12])),
            Family::TwistedE6 => {
                CycloProduct::from_degrees(36, &[(2, 1), (5, -1), (6, 1), (8, 1), (9, -1), (12, 1)])
            }
            Family::E7 => CycloProduct::from_degrees(63, &plain(&[2, 6, 8, 10, 12, 14, 18])),
            Family::E8 => CycloProduct::from_degrees(120, &plain(&[2, 8, 12, 14, 18, 20, 24, 30])),
            Family::Suzuki => CycloProduct::from_factors(
                2,
                &[(1, 1)],
                &[
                    TwistedFactor::new(8, false).unwrap(),
                    TwistedFactor::new(8, true).unwrap(),
                ],
            ),
            Family::ReeG2 => CycloProduct::from_factors(
                3,
                &[(1, 1), (2, 1)],
                &[
                    TwistedFactor::new(12, false).unwrap(),
                    TwistedFactor::new(12, true).unwrap(),
                ],
            ),
            Family::ReeF4 => CycloProduct::from_factors(
                12,
                &[(1, 2), (2, 2), (4, 2), (6, 1)],
                &[
                    TwistedFactor::new(24, false).unwrap(),
                    TwistedFactor::new(24, true).unwrap(),
                ],
            ),
        }
    }

    /// Number of positive roots, which is also `log_q` of the Steinberg degree.
    pub fn positive_roots(&self) -> u32 {
        self.order_formula().q_exponent
    }

    pub fn display_name(&self) -> String {
        let n = self.rank;
        let q = self.q.value();
        match self.family {
            Family::A => format!("SL{n}({q})"),
            Family::TwistedA => format!("SU{n}({q})"),
            Family::B => format!("Spin{}({q})", 2 * n + 1),
            Family::C => format!("Sp{}({q})", 2 * n),
            Family::D => format!("Spin{}+({q})", 2 * n),
            Family::TwistedD => format!("Spin{}-({q})", 2 * n),
            other => format!("{}({q})", other.symbol()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// `|G^F|` of the simply connected group.
pub fn order(spec: &GroupSpec) -> BigUint {
    spec.order_formula()
        .eval(&spec.q_big(), spec.twist_root().as_ref())
}

/// `|Z(G_sc^F)|`.
pub fn center_order(spec: &GroupSpec) -> u64 {
    let q = spec.q.value();
    let n = spec.rank as u64;
    let qn = BigUint::from(q).pow(spec.rank);
    let g = |a: u64, b: u64| a.gcd(&b);
    match spec.family {
        Family::A => g(n, q - 1),
        Family::TwistedA => g(n, q + 1),
        Family::B | Family::C | Family::E7 => g(2, q - 1),
        Family::D => (qn - 1u32).gcd(&BigUint::from(4u32)).try_into().unwrap(),
        Family::TwistedD => (qn + 1u32).gcd(&BigUint::from(4u32)).try_into().unwrap(),
        Family::E6 => g(3, q - 1),
        Family::TwistedE6 => g(3, q + 1),
        _ => 1,
    }
}

/// Order of the Weyl group of the untwisted root system.
pub fn weyl_order(spec: &GroupSpec) -> BigUint {
    let n = spec.rank as u64;
    match spec.family {
        Family::A | Family::TwistedA => factorial(n),
        Family::B | Family::C => (BigUint::one() << n) * factorial(n),
        Family::D | Family::TwistedD | Family::Triality => {
            (BigUint::one() << (n - 1)) * factorial(n)
        }
        Family::G2 | Family::ReeG2 => BigUint::from(12u32),
        Family::Suzuki => BigUint::from(8u32),
        Family::F4 | Family::ReeF4 => BigUint::from(1152u32),
        Family::E6 | Family::TwistedE6 => BigUint::from(51_840u32),
        Family::E7 => BigUint::from(2_903_040u32),
        Family::E8 => BigUint::from(696_729_600u32),
    }
}

/// Whether a Sylow `p`-subgroup is cyclic, for `p` not the defining prime:
/// true iff the full `p`-part of `|G|` already sits in one factor value.
pub fn sylow_cyclic(spec: &GroupSpec, p: u64) -> Result<bool> {
    if spec.q.value().is_multiple_of(p) {
        return Err(invalid!("{p} is the defining characteristic of {spec}"));
    }
    let (full, _) = p_part_split(&order(spec), p)?;
    let formula = spec.order_formula();
    let best = formula
        .factor_values(&spec.q_big(), spec.twist_root().as_ref())
        .into_iter()
        .map(|(_, v, _)| p_part(&v, p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or_else(BigUint::one);
    Ok(full == best)
}

/// `ord_p(q)` for the defining field of `spec`, convenience for callers
/// working with torus orders.
pub fn order_mod(spec: &GroupSpec, p: u64) -> Result<u64> {
    let d = mult_order(&spec.q_big(), &BigUint::from(p))?;
    Ok(d.try_into().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyclo_eval_u64;

    fn spec(f: Family, n: u32, q: u64) -> GroupSpec {
        GroupSpec::new(f, n, PrimePower::new(q).unwrap()).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(order(&spec(Family::A, 2, 5)), BigUint::from(120u32));
        assert_eq!(order(&spec(Family::C, 2, 3)), BigUint::from(51_840u32));
        assert_eq!(order(&spec(Family::Suzuki, 2, 8)), BigUint::from(29_120u32));
        assert_eq!(
            order(&spec(Family::ReeG2, 2, 27)),
            BigUint::from(10_073_444_472u64)
        );
        assert_eq!(order(&spec(Family::G2, 2, 3)), BigUint::from(4_245_696u32));
        assert_eq!(
            order(&spec(Family::TwistedA, 3, 3)),
            BigUint::from(6_048u32)
        );
        assert_eq!(
            order(&spec(Family::Triality, 4, 2)),
            BigUint::from(211_341_312u64)
        );
        assert_eq!(
            order(&spec(Family::ReeF4, 4, 2)),
            BigUint::from(35_942_400u64)
        );
    }

    #[test]
    fn centre_examples() {
        assert_eq!(center_order(&spec(Family::A, 3, 4)), 3);
        assert_eq!(center_order(&spec(Family::C, 2, 3)), 2);
        assert_eq!(center_order(&spec(Family::E7, 7, 2)), 1);
        assert_eq!(center_order(&spec(Family::D, 4, 3)), 4);
        assert_eq!(center_order(&spec(Family::TwistedD, 5, 3)), 4);
        assert_eq!(center_order(&spec(Family::D, 5, 3)), 2);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_order(&spec(Family::A, 4, 2)), BigUint::from(24u32));
        assert_eq!(weyl_order(&spec(Family::C, 2, 2)), BigUint::from(8u32));
        assert_eq!(weyl_order(&spec(Family::G2, 2, 3)), BigUint::from(12u32));
    }

    #[test]
    fn sylow_examples() {
        assert!(sylow_cyclic(&spec(Family::C, 2, 3), 5).unwrap());
        assert!(!sylow_cyclic(&spec(Family::C, 2, 3), 2).unwrap());
        // The example is phrased for SL3; check both that and SL2(4).
        assert!(sylow_cyclic(&spec(Family::A, 3, 4), 7).unwrap());
        assert!(sylow_cyclic(&spec(Family::A, 2, 4), 7).unwrap());
        assert!(sylow_cyclic(&spec(Family::A, 2, 4), 3).unwrap());
        assert!(sylow_cyclic(&spec(Family::C, 2, 3), 3).is_err());
    }

    #[test]
    fn validation() {
        let q = |v| PrimePower::new(v).unwrap();
        assert!(GroupSpec::new(Family::A, 1, q(5)).is_err());
        assert!(GroupSpec::new(Family::TwistedA, 2, q(5)).is_err());
        assert!(GroupSpec::new(Family::D, 3, q(5)).is_err());
        assert!(GroupSpec::new(Family::Suzuki, 2, q(2)).is_err());
        assert!(GroupSpec::new(Family::Suzuki, 2, q(32)).is_ok());
        assert!(GroupSpec::new(Family::Suzuki, 2, q(4)).is_err());
        assert!(GroupSpec::new(Family::ReeG2, 2, q(3)).is_err());
        assert!(GroupSpec::new(Family::ReeF4, 4, q(2)).is_ok());
        assert!(GroupSpec::new(Family::E8, 7, q(2)).is_err());
        assert_eq!("2e6".parse::<Family>().unwrap(), Family::TwistedE6);
    }

    #[test]
    fn names() {
        assert_eq!(spec(Family::C, 6, 2).to_string(), "Sp12(2)");
        assert_eq!(spec(Family::TwistedD, 4, 2).to_string(), "Spin8-(2)");
        assert_eq!(spec(Family::Suzuki, 2, 8).to_string(), "2B2(8)");
    }

    #[test]
    fn e8_torus_value() {
        assert_eq!(cyclo_eval_u64(24, 2), BigUint::from(241u32));
    }
}
