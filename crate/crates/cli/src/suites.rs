use std::collections::BTreeSet;
use std::fmt;

use charbound_core::crosschar::{self, Outcome, PAPER_RESIDUALS};
use charbound_core::exactnum::{mult_order, zsigmondy_primes, PrimePower};
use charbound_core::lie::{center_order, torus_entries, Family, GroupSpec};
use charbound_core::regclasses::{self, BoundSource, TwoClassesMethod, ZSIGMONDY_6_2};
use charbound_core::{defchar, oracle, symspin, Error};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;

use crate::report::{Check, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Regclasses,
    Crosschar,
    Defchar,
    Symspin,
    Oracle,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [
        Suite::Regclasses,
        Suite::Crosschar,
        Suite::Defchar,
        Suite::Symspin,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Regclasses => "regclasses",
            Suite::Crosschar => "crosschar",
            Suite::Defchar => "defchar",
            Suite::Symspin => "symspin",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

/// Grid flags; `None` falls back to the suite default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GridConfig {
    pub rank_max: Option<u32>,
    pub q_max: Option<u64>,
    pub p_max: Option<u64>,
    pub l_max: Option<u64>,
    pub n_max: Option<u64>,
}

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Compute(Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage: {m}"),
            RunError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Compute(e)
    }
}

type Run = Result<VerificationReport, RunError>;

fn usage(msg: String) -> RunError {
    RunError::Usage(msg)
}

fn at_least<T: PartialOrd + fmt::Display>(name: &str, v: T, min: T) -> Result<T, RunError> {
    if v < min {
        return Err(usage(format!("--{name} must be at least {min}, got {v}")));
    }
    Ok(v)
}

pub fn run(suite: Suite, grid: &GridConfig) -> Run {
    match suite {
        Suite::Regclasses => run_regclasses(grid),
        Suite::Crosschar => run_crosschar(grid),
        Suite::Defchar => run_defchar(grid),
        Suite::Symspin => run_symspin(grid),
        Suite::Oracle => run_oracle(grid),
        Suite::All => {
            let parts: Vec<Run> = std::thread::scope(|s| {
                let handles: Vec<_> = Suite::SINGLE
                    .iter()
                    .map(|&x| {
                        let mut g = *grid;
                        // Brute force only reaches small fields.
                        if x == Suite::Oracle {
                            g.q_max = g.q_max.map(|q| q.min(oracle::Q_MAX));
                        }
                        s.spawn(move || run(x, &g))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("suite worker panicked"))
                    .collect()
            });
            let parts = parts.into_iter().collect::<Result<Vec<_>, _>>()?;
            Ok(VerificationReport::merge("all", parts))
        }
    }
}

fn group_check(
    id: &str,
    spec: &GroupSpec,
    lhs: impl ToString,
    rhs: impl ToString,
    pass: bool,
) -> Check {
    Check::new(id, lhs, rhs, pass).param("group", spec)
}

fn named_spec(family: Family, rank: u32, q: u64) -> Result<GroupSpec, RunError> {
    Ok(GroupSpec::new(family, rank, PrimePower::new(q)?)?)
}

/// The groups behind the names used by the stored tables.
fn spec_for_name(name: &str) -> Result<GroupSpec, RunError> {
    let (family, rank, q) = match name {
        "SL6(2)" => (Family::A, 6, 2),
        "SL7(2)" => (Family::A, 7, 2),
        "SU4(2)" => (Family::TwistedA, 4, 2),
        "SU6(2)" => (Family::TwistedA, 6, 2),
        "SU7(2)" => (Family::TwistedA, 7, 2),
        "SU3(3)" => (Family::TwistedA, 3, 3),
        "Sp4(2)" => (Family::C, 2, 2),
        "Sp6(2)" => (Family::C, 3, 2),
        "O8+(2)" => (Family::D, 4, 2),
        "O8-(2)" => (Family::TwistedD, 4, 2),
        other => {
            return Err(RunError::Compute(Error::Internal(format!(
                "no group for {other}"
            ))))
        }
    };
    named_spec(family, rank, q)
}

fn run_regclasses(grid: &GridConfig) -> Run {
    let rank_max = at_least("rank-max", grid.rank_max.unwrap_or(8), 2)?;
    let q_max = at_least("q-max", grid.q_max.unwrap_or(9), 2)?;
    let mut checks = Vec::new();
    let mut unsupported = 0;

    for q in PrimePower::up_to(q_max) {
        for e in 3..=30u64 {
            let primes = zsigmondy_primes(e, &q)?;
            let mut valid = true;
            for r in &primes {
                valid &= *r >= BigUint::from(e + 1) && mult_order(&q.big(), r)? == BigUint::from(e);
            }
            let expect_empty = (e, q.value()) == (6, 2);
            let pass = valid && primes.is_empty() == expect_empty;
            checks.push(
                Check::new(
                    "zsigmondy-primitive",
                    primes.len(),
                    u8::from(!expect_empty),
                    pass,
                )
                .param("e", e)
                .param("q", q),
            );
        }
    }

    for spec in regclasses::grid(rank_max, q_max) {
        if spec.family().is_classical() {
            let entries = torus_entries(&spec)?;
            if entries.len() >= 2 {
                let g = entries[0].order.gcd(&entries[1].order);
                let z = center_order(&spec);
                checks.push(group_check(
                    "center-gcd",
                    &spec,
                    &g,
                    z,
                    g == BigUint::from(z),
                ));
            }
        }
        if regclasses::not_quasi_simple(&spec) && spec.family() != Family::ReeF4 {
            continue;
        }
        let outcome = regclasses::two_classes(&spec)?;
        let (lhs, rhs, computed): (BigUint, BigUint, bool) = match &outcome.method {
            TwoClassesMethod::TwoTori => (
                outcome
                    .bounds
                    .iter()
                    .filter(|b| **b >= BigUint::from(1u8))
                    .count()
                    .into(),
                2u64.into(),
                true,
            ),
            TwoClassesMethod::ExceedsCentre => (
                outcome.bounds.iter().max().cloned().unwrap_or_default(),
                BigUint::from(outcome.center + 1),
                true,
            ),
            TwoClassesMethod::Isomorphic(_) if !outcome.bounds.is_empty() => (
                outcome
                    .bounds
                    .iter()
                    .filter(|b| **b >= BigUint::from(1u8))
                    .count()
                    .into(),
                2u64.into(),
                true,
            ),
            TwoClassesMethod::Stored(_) | TwoClassesMethod::Isomorphic(_) => {
                (BigUint::from(2u8), BigUint::from(2u8), false)
            }
        };
        let method = match &outcome.method {
            TwoClassesMethod::TwoTori => "two_tori".to_string(),
            TwoClassesMethod::ExceedsCentre => "exceeds_centre".to_string(),
            TwoClassesMethod::Stored(name) => format!("stored:{name}"),
            TwoClassesMethod::Isomorphic(name) => format!("isomorphic:{name}"),
        };
        checks.push(
            group_check("two-regular-classes", &spec, lhs, rhs, outcome.certified)
                .param("method", method)
                .stored(!computed),
        );
        if spec.family() == Family::ReeF4 && spec.q().value() == 2 {
            continue;
        }
        for entry in torus_entries(&spec)? {
            match regclasses::nreg_lower_bound(&spec, &entry) {
                Ok(b) if b.source == BoundSource::TableFormula => {
                    let exact = b.exact.clone().expect("formula bounds carry their value");
                    let pass = !exact.is_negative()
                        && exact.floor().to_integer() == BigInt::from(b.bound.clone());
                    checks.push(
                        group_check("table-bound", &spec, &b.bound, 0, pass)
                            .param("torus", entry.position)
                            .param("torus_order", &entry.order)
                            .param("exact", exact),
                    );
                }
                Ok(_) => {}
                Err(Error::Unsupported(_)) => unsupported += 1,
                Err(e) => return Err(e.into()),
            }
            if let Some((divides, primes)) = regclasses::zsigmondy_divides(&entry)? {
                checks.push(
                    group_check(
                        "zsigmondy-divides-torus",
                        &spec,
                        primes.len(),
                        1,
                        divides && !primes.is_empty(),
                    )
                    .param("torus", entry.position)
                    .param("e", entry.e),
                );
            }
        }
    }

    for (i, &(name, t, nreg)) in ZSIGMONDY_6_2.iter().enumerate() {
        let spec = spec_for_name(name)?;
        let entry = torus_entries(&spec)?
            .into_iter()
            .find(|e| e.e == 6)
            .ok_or_else(|| Error::Internal(format!("{name} has no torus with e = 6")))?;
        let b = regclasses::nreg_lower_bound(&spec, &entry)?;
        let pass = entry.order == BigUint::from(t) && b.bound == BigUint::from(nreg);
        checks.push(
            Check::new("zsigmondy-6-2-table", &entry.order, t, pass)
                .param("entry", i + 1)
                .param("group", name)
                .param("n_reg", nreg)
                .stored(true),
        );
    }
    for name in regclasses::EXCLUDED_GROUPS {
        let spec = spec_for_name(name)?;
        let outcome = regclasses::two_classes(&spec)?;
        let routed = outcome.method == TwoClassesMethod::Stored(name);
        checks.push(
            Check::new(
                "excluded-group",
                u8::from(outcome.certified),
                1,
                routed && outcome.certified,
            )
            .param("group", name)
            .stored(true),
        );
    }
    Ok(VerificationReport::new(
        "regclasses",
        checks,
        0,
        unsupported,
    ))
}

fn triple((n, q, p): (u32, u64, u64)) -> String {
    format!("({n},{q},{p})")
}

fn triples(set: &BTreeSet<(u32, u64, u64)>) -> String {
    set.iter()
        .copied()
        .map(triple)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_crosschar(grid: &GridConfig) -> Run {
    let n_max = at_least("rank-max", grid.rank_max.unwrap_or(12), 2)?;
    let q_max = at_least("q-max", grid.q_max.unwrap_or(5), 2)?;
    let scan = crosschar::residual_scan(n_max, q_max)?;
    let mut checks = Vec::new();
    let mut skipped = 0;
    let mut unsupported = 0;
    for point in &scan.points {
        let spec = &point.spec;
        match &point.outcome {
            Outcome::SkippedCyclic => skipped += 1,
            Outcome::Unsupported(_) => unsupported += 1,
            Outcome::Special(_) => {}
            Outcome::Checked { generic } => {
                let exact = crosschar::star_check(spec, point.p, true)?;
                let sound = BigUint::from(generic.generic_sylow_lb) <= generic.sylow_order;
                checks.push(
                    group_check(
                        "sylow-lower-bound",
                        spec,
                        &generic.sylow_order,
                        generic.generic_sylow_lb,
                        sound,
                    )
                    .param("p", point.p),
                );
                let (row, sylow, pass, stored) = if generic.pass_generic && sound {
                    (generic, "generic", true, false)
                } else if exact.pass_exact {
                    (&exact, "exact", true, false)
                } else if crosschar::stored_verdict(spec, point.p) {
                    (&exact, "character_table", true, true)
                } else {
                    (&exact, "exact", false, false)
                };
                checks.push(
                    group_check("star", spec, &row.lhs, &row.rhs, pass)
                        .param("p", point.p)
                        .param("torus_order", &row.torus_order)
                        .param("sylow", sylow)
                        .stored(stored),
                );
            }
        }
    }
    for name in &scan.specials {
        checks.push(
            Check::new("special-case", 1, 1, true)
                .param("group", name)
                .stored(true),
        );
    }
    let expected: BTreeSet<_> = PAPER_RESIDUALS
        .iter()
        .copied()
        .filter(|&(n, q, _)| n <= n_max && q <= q_max)
        .collect();
    checks.push(
        Check::new(
            "residual-set",
            scan.generic_failures.len(),
            expected.len(),
            scan.generic_failures == expected,
        )
        .param("found", triples(&scan.generic_failures))
        .param("expected", triples(&expected))
        .stored(true),
    );
    let closing: BTreeSet<_> = expected
        .iter()
        .copied()
        .filter(|&t| t == (6, 2, 5))
        .collect();
    checks.push(
        Check::new(
            "residual-exact-sylow",
            scan.unrescued.len(),
            closing.len(),
            scan.unrescued == closing,
        )
        .param("unrescued", triples(&scan.unrescued)),
    );
    checks.push(
        Check::new(
            "residual-first-torus",
            scan.off_first_torus.len(),
            0,
            scan.off_first_torus.is_empty(),
        )
        .param("off_first_torus", triples(&scan.off_first_torus)),
    );
    Ok(VerificationReport::new(
        "crosschar",
        checks,
        skipped,
        unsupported,
    ))
}

fn run_defchar(grid: &GridConfig) -> Run {
    let rank_max = at_least("rank-max", grid.rank_max.unwrap_or(8), 2)?;
    let q_max = at_least("q-max", grid.q_max.unwrap_or(9), 2)?;
    let p_max = at_least("p-max", grid.p_max.unwrap_or(199), 2)?;
    let suite = defchar::run_suite(rank_max, q_max, p_max)?;
    let checks = suite
        .checks
        .iter()
        .map(|c| {
            let mut row = Check::new(c.check_id, &c.lhs, &c.rhs, c.pass).stored(c.stored);
            for (k, v) in &c.params {
                row = row.param(k, v);
            }
            if c.strict {
                row = row.param("strict", "true");
            }
            row
        })
        .collect();
    Ok(VerificationReport::new(
        "defchar",
        checks,
        0,
        suite.open.len() as u64,
    ))
}

const CLAIMED_FROM: u64 = 8;

fn run_symspin(grid: &GridConfig) -> Run {
    let l_max = at_least("l-max", grid.l_max.unwrap_or(50), 1)?;
    let n_max = grid.n_max.unwrap_or(119);
    if !(5..120).contains(&n_max) {
        return Err(usage(format!("--n-max must lie in 5..=119, got {n_max}")));
    }
    let mut checks = Vec::new();
    for l in 1..=l_max {
        for family in [1u8, 2] {
            let (lhs, rhs) = symspin::ratio_identity_sides(l, family)?;
            let pass = lhs == rhs;
            checks.push(
                Check::new("ratio-identity", lhs, rhs, pass)
                    .param("l", l)
                    .param("family", family),
            );
        }
        let sides = symspin::star_sides(l)?;
        let holds = sides.holds();
        for (family, (lhs, rhs), h) in [(1u8, sides.first, holds.0), (2, sides.second, holds.1)] {
            checks.push(
                Check::new("star", lhs, rhs, h || l < CLAIMED_FROM)
                    .param("l", l)
                    .param("family", family)
                    .param("holds", h),
            );
        }
    }
    let thresholds = symspin::star_thresholds(l_max)?;
    for (family, t) in [(1u8, thresholds.0), (2, thresholds.1)] {
        checks.push(
            Check::new("star-threshold", t, CLAIMED_FROM, t <= CLAIMED_FROM)
                .param("family", family)
                .param("l_max", l_max),
        );
    }
    let two = symspin::SpinFamilyIndex::new(2)?;
    let d = symspin::spin_degree(&two.p1)?;
    checks.push(
        Check::new("spin-degree", &d, 16, d == BigUint::from(16u8))
            .param("family", 1)
            .param("l", 2)
            .param("partition", &two.p1),
    );
    let eight = symspin::SpinFamilyIndex::new(CLAIMED_FROM)?;
    checks
        .push(Check::new("family-index", eight.n1, 120, eight.n1 == 120).param("l", CLAIMED_FROM));
    let mut coverage: Vec<(u64, Result<symspin::CoverageReport, Error>)> = Vec::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = (5..=n_max)
            .map(|n| (n, s.spawn(move || symspin::coverage_check(n))))
            .collect();
        for (n, h) in handles {
            coverage.push((n, h.join().expect("coverage worker panicked")));
        }
    });
    for (n, r) in coverage {
        let r = r?;
        checks.push(
            Check::new("coverage", &r.max_degree * &r.max_degree, &r.target, r.pass)
                .param("n", n)
                .param("witness", &r.witness)
                .param("scope", symspin::CoverageReport::LABEL),
        );
    }
    Ok(VerificationReport::new("symspin", checks, 0, 0))
}

fn run_oracle(grid: &GridConfig) -> Run {
    let q_max = at_least("q-max", grid.q_max.unwrap_or(oracle::Q_MAX), 3)?;
    if q_max > oracle::Q_MAX {
        return Err(usage(format!(
            "oracle groups need --q-max <= {}, got {q_max}",
            oracle::Q_MAX
        )));
    }
    let mut checks = Vec::new();
    for r in oracle::run_suite(q_max)? {
        let q = r.q;
        checks.push(
            Check::new(
                "oracle-order",
                r.order,
                &r.registry_order,
                r.order_matches(),
            )
            .param("q", q),
        );
        checks.push(
            Check::new(
                "oracle-class-equation",
                r.class_size_sum,
                r.order,
                r.class_equation,
            )
            .param("q", q)
            .param("classes", r.class_count),
        );
        let expected = r.expected_p_prime();
        checks.push(
            Check::new(
                "oracle-p-prime-part",
                &r.p_prime_part,
                &expected,
                r.p_prime_part == expected,
            )
            .param("q", q),
        );
        if let Some(c) = &r.comparison {
            for t in &c.tori {
                checks.push(
                    Check::new("oracle-torus-count", t.count, &t.bound, t.pass())
                        .param("q", q)
                        .param("torus_order", t.torus_order),
                );
            }
            let pass =
                (c.regular_classes >= 2) == c.two_classes_certified && c.two_classes_certified;
            checks.push(Check::new("oracle-two-classes", c.regular_classes, 2, pass).param("q", q));
        }
    }
    Ok(VerificationReport::new("oracle", checks, 0, 0))
}
