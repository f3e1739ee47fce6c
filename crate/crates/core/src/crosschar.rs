//! Defect-zero Deligne-Lusztig characters in non-defining characteristic:
//! the inequality
//!
//! `n_reg(T) >= |G|_q |T|^2 / (|G|_{q'} |P|)`
//!
//! for a torus `T` with `|T|_p = |Z|_p` and `P` a Sylow `p`-subgroup.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{invalid, not_applicable, unsupported, Error, Result};
use crate::exactnum::{factorize, p_part, DEFAULT_EFFORT};
use crate::lie::{center_order, order, sylow_cyclic, torus_entries, Family, GroupSpec, TorusEntry};
use crate::regclasses::{excluded, not_quasi_simple, table_name};

#[derive(Debug, Clone)]
pub struct StarCheck {
    pub spec: GroupSpec,
    pub p: u64,
    pub torus_order: BigUint,
    /// The unrounded table bound, clamped at 0.
    pub nreg_bound: BigRational,
    /// `|G : T|_{q'}`.
    pub dl_degree: BigUint,
    /// Exact `p`-part of `|G|`.
    pub sylow_order: BigUint,
    pub generic_sylow_lb: u64,
    pub use_exact_sylow: bool,
    /// Cross-multiplied sides for the selected `|P|`:
    /// `num(n_reg) |G|_{q'} |P|` against `den(n_reg) |G|_q |T|^2`.
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub pass_generic: bool,
    pub pass_exact: bool,
}

impl StarCheck {
    pub fn pass(&self) -> bool {
        if self.use_exact_sylow {
            self.pass_exact
        } else {
            self.pass_generic
        }
    }
}

/// The a priori lower bound for a non-cyclic Sylow subgroup: `(l+1)^2` for
/// classical groups of Lie rank `l`, 121 for `E8` and 25 otherwise.
pub fn generic_sylow_lb(spec: &GroupSpec) -> u64 {
    if spec.family().is_classical() {
        let l = spec.lie_rank() as u64;
        (l + 1) * (l + 1)
    } else if spec.family() == Family::E8 {
        121
    } else {
        25
    }
}

fn check_prime(spec: &GroupSpec, p: u64) -> Result<()> {
    if !crate::exactnum::is_prime_u64(p) {
        return Err(invalid!("{p} is not prime"));
    }
    if p == spec.p() {
        return Err(invalid!("{p} is the defining characteristic of {spec}"));
    }
    Ok(())
}

pub fn select_torus(spec: &GroupSpec, p: u64) -> Result<TorusEntry> {
    check_prime(spec, p)?;
    let z = p_part(&BigUint::from(center_order(spec)), p)?;
    torus_entries(spec)?
        .into_iter()
        .find(|t| p_part(&t.order, p).is_ok_and(|tp| tp == z))
        .ok_or_else(|| unsupported!("no torus of {spec} has {p}-part equal to that of the centre"))
}

/// Errors with `NotApplicable` when Sylow `p`-subgroups are cyclic.
pub fn star_check(spec: &GroupSpec, p: u64, use_exact_sylow: bool) -> Result<StarCheck> {
    check_prime(spec, p)?;
    if sylow_cyclic(spec, p)? {
        return Err(not_applicable!("Sylow {p}-subgroups of {spec} are cyclic"));
    }
    let torus = select_torus(spec, p)?;
    let g = order(spec);
    let q_prime_part = spec
        .order_formula()
        .eval_torus_part(&spec.q_big(), spec.twist_root().as_ref());
    let q_part = &g / &q_prime_part;
    let t = &torus.order;
    let dl_degree = &q_prime_part / t;
    if !(&dl_degree * t == q_prime_part) {
        return Err(Error::Internal(format!(
            "torus order {t} does not divide |{spec}|_q'"
        )));
    }
    let mut nreg = torus.bound()?;
    if nreg.is_negative() {
        nreg = BigRational::zero();
    }
    let num = nreg.numer().to_biguint().unwrap();
    let den = nreg.denom().to_biguint().unwrap();
    let sylow_order = p_part(&g, p)?;
    let generic = generic_sylow_lb(spec);

    let rhs = &den * &q_part * t * t;
    let side = |sylow: &BigUint| &num * &q_prime_part * sylow;
    let lhs_exact = side(&sylow_order);
    let lhs_generic = side(&BigUint::from(generic));
    let pass_exact = lhs_exact >= rhs;
    let pass_generic = lhs_generic >= rhs;

    // Same inequality as a degree sum: n_reg * |G:T|_{q'}^2 >= |G| / |P|.
    for (sylow, verdict) in [
        (sylow_order.clone(), pass_exact),
        (BigUint::from(generic), pass_generic),
    ] {
        let contribution = &nreg * BigRational::from_integer(BigInt::from(&dl_degree * &dl_degree));
        let target = BigRational::new(BigInt::from(g.clone()), BigInt::from(sylow));
        if (contribution >= target) != verdict {
            return Err(Error::Internal(format!(
                "degree-sum form disagrees for {spec}, p = {p}"
            )));
        }
    }

    let lhs = if use_exact_sylow {
        lhs_exact
    } else {
        lhs_generic
    };
    Ok(StarCheck {
        spec: *spec,
        p,
        torus_order: t.clone(),
        nreg_bound: nreg,
        dl_degree,
        sylow_order,
        generic_sylow_lb: generic,
        use_exact_sylow,
        lhs,
        rhs,
        pass_generic,
        pass_exact,
    })
}

/// Non-defining primes dividing `|G|`, from the factored cyclotomic values.
/// The error carries any cofactor that could not be split.
pub fn candidate_primes(spec: &GroupSpec) -> Result<Vec<u64>> {
    let mut primes = BTreeSet::new();
    let formula = spec.order_formula();
    for (name, value, _) in formula.factor_values(&spec.q_big(), spec.twist_root().as_ref()) {
        let f = factorize(&value, DEFAULT_EFFORT);
        if !f.is_complete() {
            return Err(Error::IncompleteFactorization(format!(
                "{} in {name} for {spec}",
                f.residue
            )));
        }
        for r in f.factors.keys() {
            let r = u64::try_from(r)
                .map_err(|_| unsupported!("prime {r} of {spec} exceeds 64 bits"))?;
            primes.insert(r);
        }
    }
    primes.remove(&spec.p());
    Ok(primes.into_iter().collect())
}

/// Groups the argument does not treat, with the reason.
pub fn special_case(spec: &GroupSpec) -> Option<&'static str> {
    let q = spec.q().value();
    if spec.family() == Family::A && spec.rank() == 3 && q == 2 {
        return Some("SL3(2)");
    }
    excluded(spec).or_else(|| match table_name(spec) {
        Some("Sp4(2)") => Some("Sp4(2)"),
        _ => None,
    })
}

/// `(family, n, q, p)` points that fail with exact `|P|` but are closed by a
/// character-table computation.
pub const STORED_VERDICTS: [(Family, u32, u64, u64); 2] =
    [(Family::B, 6, 2, 5), (Family::C, 6, 2, 5)];

pub fn stored_verdict(spec: &GroupSpec, p: u64) -> bool {
    STORED_VERDICTS.iter().any(|&(f, n, q, r)| {
        spec.family() == f && spec.rank() == n && spec.q().value() == q && p == r
    })
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Checked { generic: StarCheck },
    SkippedCyclic,
    Special(&'static str),
    Unsupported(String),
}

#[derive(Debug, Clone)]
pub struct PointResult {
    pub spec: GroupSpec,
    pub p: u64,
    pub outcome: Outcome,
}

/// Every non-defining prime of `spec`, classified. Groups without a simple
/// quotient give nothing.
pub fn scan_group(spec: &GroupSpec) -> Vec<PointResult> {
    if not_quasi_simple(spec) {
        return Vec::new();
    }
    let point = |p, outcome| PointResult {
        spec: *spec,
        p,
        outcome,
    };
    let primes = match candidate_primes(spec) {
        Ok(ps) => ps,
        Err(e) => return vec![point(0, Outcome::Unsupported(e.to_string()))],
    };
    primes
        .into_iter()
        .map(|p| {
            if let Some(name) = special_case(spec) {
                return point(p, Outcome::Special(name));
            }
            let outcome = match star_check(spec, p, false) {
                Ok(generic) => Outcome::Checked { generic },
                Err(Error::NotApplicable(_)) => Outcome::SkippedCyclic,
                Err(e) => Outcome::Unsupported(e.to_string()),
            };
            point(p, outcome)
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct ResidualScan {
    /// `(n, q, p)` failing with the generic Sylow estimate.
    pub generic_failures: BTreeSet<(u32, u64, u64)>,
    /// Failures that pass once the exact `|P|` is used.
    pub rescued: BTreeSet<(u32, u64, u64)>,
    pub unrescued: BTreeSet<(u32, u64, u64)>,
    /// Failures where `p` does not divide the `q^n + 1` torus.
    pub off_first_torus: BTreeSet<(u32, u64, u64)>,
    pub specials: BTreeSet<&'static str>,
    pub points: Vec<PointResult>,
}

/// Scan of types `B_n` and `C_n` for `2 <= n <= n_max`, `q <= q_max`.
/// Both types share their order and tori, so triples are merged.
pub fn residual_scan(n_max: u32, q_max: u64) -> Result<ResidualScan> {
    let mut out = ResidualScan::default();
    for spec in crate::regclasses::grid(n_max, q_max)
        .into_iter()
        .filter(|s| matches!(s.family(), Family::B | Family::C))
    {
        for point in scan_group(&spec) {
            let key = (spec.rank(), spec.q().value(), point.p);
            match &point.outcome {
                Outcome::Special(name) => {
                    out.specials.insert(name);
                }
                Outcome::Checked { generic } if !generic.pass_generic => {
                    out.generic_failures.insert(key);
                    if generic.pass_exact {
                        out.rescued.insert(key);
                    } else {
                        out.unrescued.insert(key);
                    }
                    let first = &torus_entries(&spec)?[0].order;
                    if !(first % point.p).is_zero() {
                        out.off_first_torus.insert(key);
                    }
                }
                Outcome::Unsupported(reason) => {
                    return Err(unsupported!("{spec}, p = {}: {reason}", point.p));
                }
                _ => {}
            }
            out.points.push(point);
        }
    }
    Ok(out)
}

/// The six triples the argument leaves after the generic estimate.
pub const PAPER_RESIDUALS: [(u32, u64, u64); 6] = [
    (6, 2, 5),
    (6, 3, 5),
    (6, 4, 17),
    (10, 2, 5),
    (10, 3, 5),
    (12, 2, 17),
];
