//! Lower bounds for the number of regular semisimple classes meeting a
//! maximal torus, and the "two regular classes" consequence.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{not_applicable, unsupported, Error, Result};
use crate::exactnum::{zsigmondy_primes, PrimePower};
use crate::lie::{center_order, torus_entries, Family, GroupSpec, TorusEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundSource {
    TableFormula,
    ExceptionTable,
    Zsigmondy62Table,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::TableFormula => "table_formula",
            BoundSource::ExceptionTable => "exception_table",
            BoundSource::Zsigmondy62Table => "zsigmondy_6_2_table",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct RegBound {
    pub spec: GroupSpec,
    pub torus_position: usize,
    pub torus_order: BigUint,
    pub e: u64,
    /// Floored bound; 0 for exception-table placeholders.
    pub bound: BigUint,
    /// The unrounded table value, when a formula was used.
    pub exact: Option<BigRational>,
    pub source: BoundSource,
}

/// Groups excluded from the table bounds; their character tables are known.
pub const EXCLUDED_GROUPS: [&str; 6] = ["SU4(2)", "Sp4(2)", "Sp6(2)", "O8+(2)", "O8-(2)", "SU3(3)"];

/// Groups where the Zsigmondy prime `z_6(2)` does not exist, with the
/// stored torus order and class count: `(name, |T|, n_reg)`.
pub const ZSIGMONDY_6_2: [(&str, u64, u64); 8] = [
    ("SL6(2)", 63, 9),
    ("SL7(2)", 63, 9),
    ("SU4(2)", 9, 2),
    ("SU6(2)", 21, 3),
    ("SU7(2)", 63, 9),
    ("Sp6(2)", 9, 1),
    ("O8+(2)", 27, 3),
    ("O8-(2)", 9, 1),
];

/// Name of `spec` as it appears in the stored tables, if it appears at all.
/// Types `B_n` and `C_n` coincide in characteristic 2.
pub fn table_name(spec: &GroupSpec) -> Option<&'static str> {
    let q = spec.q().value();
    Some(match (spec.family(), spec.rank(), q) {
        (Family::A, 6, 2) => "SL6(2)",
        (Family::A, 7, 2) => "SL7(2)",
        (Family::TwistedA, 3, 3) => "SU3(3)",
        (Family::TwistedA, 4, 2) => "SU4(2)",
        (Family::TwistedA, 6, 2) => "SU6(2)",
        (Family::TwistedA, 7, 2) => "SU7(2)",
        (Family::B | Family::C, 2, 2) => "Sp4(2)",
        (Family::B | Family::C, 3, 2) => "Sp6(2)",
        (Family::D, 4, 2) => "O8+(2)",
        (Family::TwistedD, 4, 2) => "O8-(2)",
        _ => return None,
    })
}

pub fn excluded(spec: &GroupSpec) -> Option<&'static str> {
    table_name(spec).filter(|name| EXCLUDED_GROUPS.contains(name))
}

/// Simply connected groups whose quotient by the centre is not simple:
/// `SL2(2)`, `SL2(3)`, `SU3(2)`, `G2(2)` and `2F4(2)` (whose derived group is
/// the Tits group).
pub fn not_quasi_simple(spec: &GroupSpec) -> bool {
    let q = spec.q().value();
    matches!(
        (spec.family(), spec.rank(), q),
        (Family::A, 2, 2 | 3)
            | (Family::TwistedA, 3, 2)
            | (Family::G2, _, 2)
            | (Family::ReeF4, _, 2)
    )
}

fn stored_62(spec: &GroupSpec, entry: &TorusEntry) -> Option<(u64, u64)> {
    if entry.e != 6 || spec.q().value() != 2 {
        return None;
    }
    let name = table_name(spec)?;
    ZSIGMONDY_6_2
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, t, nreg)| (t, nreg))
}

pub fn nreg_lower_bound(spec: &GroupSpec, entry: &TorusEntry) -> Result<RegBound> {
    let base = |bound: BigUint, exact, source| RegBound {
        spec: *spec,
        torus_position: entry.position,
        torus_order: entry.order.clone(),
        e: entry.e,
        bound,
        exact,
        source,
    };
    if let Some((_, nreg)) = stored_62(spec, entry) {
        return Ok(base(
            BigUint::from(nreg),
            None,
            BoundSource::Zsigmondy62Table,
        ));
    }
    if let Some(name) = excluded(spec) {
        return Err(unsupported!(
            "{name} is excluded from the table bounds and has no stored value for the torus of order {}",
            entry.order
        ));
    }
    let exact = entry.bound()?;
    let bound = entry.bound_floor()?;
    Ok(base(bound, Some(exact), BoundSource::TableFormula))
}

/// Whether `entry` carries a Zsigmondy prime, and if so whether every such
/// prime divides the torus order. `None` when no Zsigmondy prime is
/// promised (`e < 3` or `(e, q) = (6, 2)`).
pub fn zsigmondy_divides(entry: &TorusEntry) -> Result<Option<(bool, Vec<BigUint>)>> {
    let q = entry.spec.q();
    if entry.e < 3 || (entry.e == 6 && q.value() == 2) {
        return Ok(None);
    }
    let primes: Vec<BigUint> = zsigmondy_primes(entry.e, &q)?.into_iter().collect();
    let ok = !primes.is_empty() && primes.iter().all(|r| (&entry.order % r).is_zero());
    Ok(Some((ok, primes)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoClassesMethod {
    /// Two non-conjugate tori each meet a regular class.
    TwoTori,
    /// One torus meets more regular classes than there are central elements.
    ExceedsCentre,
    /// A stored verdict for a group without usable table bounds.
    Stored(&'static str),
    /// Certified through an isomorphic simple quotient.
    Isomorphic(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoClassesOutcome {
    pub certified: bool,
    pub method: TwoClassesMethod,
    pub bounds: Vec<BigUint>,
    pub center: u64,
}

impl TwoClassesOutcome {
    pub fn provenance_stored(&self) -> bool {
        matches!(
            self.method,
            TwoClassesMethod::Stored(_) | TwoClassesMethod::Isomorphic(_)
        )
    }
}

/// At least two classes of `G^F / Z` with centraliser order prime to the
/// defining characteristic.
pub fn two_classes(spec: &GroupSpec) -> Result<TwoClassesOutcome> {
    let center = center_order(spec);
    let stored = |method| TwoClassesOutcome {
        certified: true,
        method,
        bounds: Vec::new(),
        center,
    };
    if spec.family() == Family::ReeF4 && spec.q().value() == 2 {
        return Ok(stored(TwoClassesMethod::Stored("2F4(2)'")));
    }
    if not_quasi_simple(spec) {
        return Err(not_applicable!(
            "{spec} does not have a simple central quotient"
        ));
    }
    if let Some(name) = excluded(spec) {
        return Ok(stored(TwoClassesMethod::Stored(name)));
    }
    let q = spec.q().value();
    match (spec.family(), spec.rank(), q) {
        // PSL2(4) = PSL2(5).
        (Family::A, 2, 4) => {
            let other = GroupSpec::new(Family::A, 2, PrimePower::new(5)?)?;
            let via = two_classes(&other)?;
            return Ok(TwoClassesOutcome {
                certified: via.certified,
                method: TwoClassesMethod::Isomorphic("SL2(5)"),
                bounds: via.bounds,
                center,
            });
        }
        // PSp4(3) = PSU4(2).
        (Family::B | Family::C, 2, 3) => return Ok(stored(TwoClassesMethod::Isomorphic("SU4(2)"))),
        _ => {}
    }
    let entries = torus_entries(spec)?;
    let mut bounds = Vec::with_capacity(entries.len());
    for entry in &entries {
        bounds.push(nreg_lower_bound(spec, entry)?.bound);
    }
    let z = BigUint::from(center);
    let (certified, method) = if bounds.len() >= 2 && bounds.iter().all(|b| !b.is_zero()) {
        (true, TwoClassesMethod::TwoTori)
    } else {
        (
            bounds.iter().any(|b| b > &z),
            TwoClassesMethod::ExceedsCentre,
        )
    };
    Ok(TwoClassesOutcome {
        certified,
        method,
        bounds,
        center,
    })
}

pub fn two_regular_classes_check(spec: &GroupSpec) -> Result<bool> {
    two_classes(spec).map(|o| o.certified)
}

/// Every group in the grid, ordered by family, rank and `q`. Classical
/// families run over rank parameters up to `rank_max`; exceptional ones are
/// included when their rank is at most `rank_max`. For Suzuki and Ree groups
/// `q_max` bounds `Q`.
pub fn grid(rank_max: u32, q_max: u64) -> Vec<GroupSpec> {
    let qs = PrimePower::up_to(q_max);
    let mut out = Vec::new();
    for family in Family::ALL {
        let ranks: Vec<u32> = match family.fixed_rank() {
            Some(r) if r <= rank_max => vec![r],
            Some(_) => vec![],
            None => (2..=rank_max).collect(),
        };
        for rank in ranks {
            for q in &qs {
                if let Ok(spec) = GroupSpec::new(family, rank, *q) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// All bounds over the grid in order (family, rank, q, torus position).
/// Groups without a simple quotient are left out; tori of excluded groups
/// without a stored value appear as `exception_table` placeholders.
pub fn scan_all(rank_max: u32, q_max: u64) -> Vec<RegBound> {
    let mut out = Vec::new();
    for spec in grid(rank_max, q_max) {
        if not_quasi_simple(&spec) {
            continue;
        }
        let Ok(entries) = torus_entries(&spec) else {
            continue;
        };
        for entry in &entries {
            match nreg_lower_bound(&spec, entry) {
                Ok(b) => out.push(b),
                Err(Error::Unsupported(_)) => out.push(RegBound {
                    spec,
                    torus_position: entry.position,
                    torus_order: entry.order.clone(),
                    e: entry.e,
                    bound: BigUint::zero(),
                    exact: None,
                    source: BoundSource::ExceptionTable,
                }),
                Err(other) => panic!("table evaluation failed for {spec}: {other}"),
            }
        }
    }
    out
}

/// The bound as a small integer, for tests and reports.
pub fn bound_u64(b: &RegBound) -> u64 {
    b.bound.to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: u32, q: u64) -> GroupSpec {
        GroupSpec::new(f, n, PrimePower::new(q).unwrap()).unwrap()
    }

    fn bounds(s: &GroupSpec) -> Vec<(u64, u64, BoundSource)> {
        torus_entries(s)
            .unwrap()
            .iter()
            .map(|t| {
                let b = nreg_lower_bound(s, t).unwrap();
                (b.torus_order.to_u64().unwrap(), bound_u64(&b), b.source)
            })
            .collect()
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            bounds(&spec(Family::A, 2, 5))[0],
            (6, 2, BoundSource::TableFormula)
        );
        assert_eq!(
            bounds(&spec(Family::Suzuki, 2, 8))[0],
            (13, 3, BoundSource::TableFormula)
        );
        let e8 = bounds(&spec(Family::E8, 8, 2));
        assert_eq!(e8, [(241, 10, BoundSource::TableFormula)]);
    }

    #[test]
    fn stored_six_two_table() {
        let sp6 = spec(Family::C, 3, 2);
        let t = torus_entries(&sp6).unwrap();
        let b = nreg_lower_bound(&sp6, &t[0]).unwrap();
        assert_eq!(
            (bound_u64(&b), b.source),
            (1, BoundSource::Zsigmondy62Table)
        );
        assert!(matches!(
            nreg_lower_bound(&sp6, &t[1]),
            Err(Error::Unsupported(_))
        ));

        let expected_orders = [63u64, 63, 9, 21, 63, 9, 27, 9];
        let specs = [
            spec(Family::A, 6, 2),
            spec(Family::A, 7, 2),
            spec(Family::TwistedA, 4, 2),
            spec(Family::TwistedA, 6, 2),
            spec(Family::TwistedA, 7, 2),
            spec(Family::B, 3, 2),
            spec(Family::D, 4, 2),
            spec(Family::TwistedD, 4, 2),
        ];
        for ((s, (name, t, nreg)), want) in specs.iter().zip(ZSIGMONDY_6_2).zip(expected_orders) {
            assert_eq!(table_name(s), Some(name));
            let entry = torus_entries(s)
                .unwrap()
                .into_iter()
                .find(|e| e.e == 6)
                .unwrap();
            assert_eq!(entry.order.to_u64(), Some(t));
            assert_eq!(t, want);
            let b = nreg_lower_bound(s, &entry).unwrap();
            assert_eq!(bound_u64(&b), nreg);
        }
    }

    #[test]
    fn two_classes_examples() {
        assert!(two_regular_classes_check(&spec(Family::E8, 8, 2)).unwrap());
        let a1 = two_classes(&spec(Family::A, 2, 5)).unwrap();
        assert_eq!(a1.bounds, [BigUint::from(2u32), BigUint::from(1u32)]);
        assert_eq!(a1.method, TwoClassesMethod::TwoTori);
        let sp4 = two_classes(&spec(Family::C, 2, 2)).unwrap();
        assert_eq!(sp4.method, TwoClassesMethod::Stored("Sp4(2)"));
        assert!(matches!(
            two_classes(&spec(Family::A, 2, 3)),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(
            two_classes(&spec(Family::A, 2, 4)).unwrap().method,
            TwoClassesMethod::Isomorphic("SL2(5)")
        );
    }

    #[test]
    fn scan_examples() {
        let s = scan_all(4, 5);
        assert!(s
            .iter()
            .any(|b| b.spec == spec(Family::A, 2, 5) && bound_u64(b) == 2));
        let s = scan_all(2, 2);
        assert!(s
            .iter()
            .any(|b| table_name(&b.spec) == Some("Sp4(2)")
                && b.source == BoundSource::ExceptionTable));
        let s = scan_all(4, 3);
        assert!(s.iter().any(|b| b.spec == spec(Family::TwistedD, 4, 3)
            && b.torus_order == BigUint::from(82u32)
            && b.e == 8
            && bound_u64(b) == 18));
    }
}
