//! Maximal tori with bounds on the regular semisimple classes they meet,
//! one row per torus. Expressions are kept as printed in the literature.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::expr::Expr;
use super::{Family, GroupSpec};
use crate::error::{unsupported, Error, Result};

/// Condition under which a row applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cond {
    Always,
    RankIs(u32),
    RankAtLeast(u32),
    OddRank,
    EvenRank,
    EvenRankAtLeast4,
    QMod3Is1,
    QMod3Not1,
    QAtLeast(u64),
}

impl Cond {
    fn holds(self, spec: &GroupSpec) -> bool {
        let n = spec.rank();
        let q = spec.q().value();
        match self {
            Cond::Always => true,
            Cond::RankIs(k) => n == k,
            Cond::RankAtLeast(k) => n >= k,
            Cond::OddRank => n % 2 == 1,
            Cond::EvenRank => n.is_multiple_of(2),
            Cond::EvenRankAtLeast4 => n >= 4 && n.is_multiple_of(2),
            Cond::QMod3Is1 => q % 3 == 1,
            Cond::QMod3Not1 => q % 3 != 1,
            Cond::QAtLeast(k) => q >= k,
        }
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::Always => write!(f, "always"),
            Cond::RankIs(k) => write!(f, "n={k}"),
            Cond::RankAtLeast(k) => write!(f, "n>={k}"),
            Cond::OddRank => write!(f, "n odd"),
            Cond::EvenRank => write!(f, "n even"),
            Cond::EvenRankAtLeast4 => write!(f, "4<=n even"),
            Cond::QMod3Is1 => write!(f, "q=1 mod 3"),
            Cond::QMod3Not1 => write!(f, "q!=1 mod 3"),
            Cond::QAtLeast(k) => write!(f, "q>={k}"),
        }
    }
}

struct Row {
    families: &'static [Family],
    cond: Cond,
    order: Expr,
    e: Expr,
    index: Expr,
    bound: Expr,
    image_noncyclic: bool,
}

const RAW: &[(&[Family], Cond, &str, &str, &str, &str, bool)] = {
    use Cond::*;
    use Family::*;
    &[
        (&[A], RankIs(2), "q+1", "2", "2", "(q-1)/2", false),
        (&[A], RankIs(2), "q-1", "1", "2", "(q-3)/2", false),
        (
            &[A],
            RankAtLeast(3),
            "(q^n-1)/(q-1)",
            "n",
            "n",
            "|T|/(n+1)",
            false,
        ),
        (
            &[A],
            RankAtLeast(3),
            "q^(n-1)-1",
            "n-1",
            "n-1",
            "|T|/n",
            false,
        ),
        (
            &[TwistedA],
            OddRank,
            "(q^n+1)/(q+1)",
            "2n",
            "n",
            "2|T|/(2n+1)",
            false,
        ),
        (
            &[TwistedA],
            OddRank,
            "q^(n-1)-1",
            "n-1",
            "n-1",
            "|T|/n",
            false,
        ),
        (
            &[TwistedA],
            EvenRank,
            "q^(n-1)+1",
            "2n-2",
            "n-1",
            "2|T|/(2n-1)",
            false,
        ),
        (
            &[TwistedA],
            EvenRank,
            "(q^n-1)/(q+1)",
            "n",
            "n",
            "|T|/(n+1)",
            false,
        ),
        (&[B, C], Always, "q^n+1", "2n", "2n", "|T|/(2n+1)", false),
        (&[B, C], RankIs(2), "q^2-1", "2", "4", "(q-1)(q-2)/4", false),
        (
            &[B, C],
            EvenRankAtLeast4,
            "(q^(n-1)-1)(q+1)",
            "n-1",
            "4n-4",
            "(q^(n-1)-1)(q-1)/(4n)",
            false,
        ),
        (&[B, C], OddRank, "q^n-1", "n", "2n", "|T|/(2n+2)", false),
        (
            &[D],
            Always,
            "(q^(n-1)+1)(q+1)",
            "2n-2",
            "2n-2",
            "|T|/(2n-1)",
            true,
        ),
        (
            &[D],
            EvenRank,
            "(q^(n-1)-1)(q-1)",
            "n-1",
            "2n-2",
            "|T|/(2n)",
            true,
        ),
        (&[D], OddRank, "q^n-1", "n", "n", "|T|/(n+1)", false),
        (
            &[TwistedD],
            Always,
            "q^n+1",
            "2n",
            "n",
            "2|T|/(2n+1)",
            false,
        ),
        (
            &[TwistedD],
            Always,
            "(q^(n-1)+1)(q-1)",
            "2n-2",
            "2n-2",
            "|T|/(2n-1)",
            false,
        ),
        (&[Suzuki], Always, "Phi8''", "0", "4", "(|T|-1)/4", false),
        (&[ReeG2], Always, "Phi12''", "0", "6", "(|T|-1)/6", false),
        (&[G2], QMod3Is1, "Phi6", "6", "6", "(|T|-1)/6", false),
        (&[G2], QMod3Not1, "Phi3", "3", "6", "(|T|-1)/6", false),
        (&[Triality], Always, "Phi12", "12", "4", "(|T|-1)/4", false),
        (
            &[ReeF4],
            QAtLeast(8),
            "Phi24''",
            "0",
            "12",
            "(|T|-1)/12",
            false,
        ),
        (&[F4], Always, "Phi12", "12", "12", "(|T|-1)/12", false),
        (&[E6], Always, "Phi9", "9", "9", "(|T|-gcd(3,q-1))/9", false),
        (
            &[TwistedE6],
            Always,
            "Phi18",
            "18",
            "9",
            "(|T|-gcd(3,q+1))/9",
            false,
        ),
        (&[E7], Always, "Phi2Phi14", "14", "14", "(q^7-q)/14", false),
        (&[E7], Always, "Phi1Phi7", "7", "14", "(q^7-q)/14", false),
        (&[E8], Always, "Phi24", "24", "24", "(|T|-1)/24", false),
    ]
};

fn rows() -> &'static [Row] {
    static ROWS: OnceLock<Vec<Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        RAW.iter()
            .map(
                |&(families, cond, order, e, index, bound, image_noncyclic)| Row {
                    families,
                    cond,
                    order: Expr::parse(order).unwrap(),
                    e: Expr::parse(e).unwrap(),
                    index: Expr::parse(index).unwrap(),
                    bound: Expr::parse(bound).unwrap(),
                    image_noncyclic,
                },
            )
            .collect()
    })
}

/// One table row instantiated at a group.
#[derive(Debug, Clone)]
pub struct TorusEntry {
    pub spec: GroupSpec,
    /// Position among the rows applying to `spec`.
    pub position: usize,
    pub condition: String,
    pub order_expr: Expr,
    pub bound_expr: Expr,
    /// Zsigmondy index; 0 when none applies.
    pub e: u64,
    pub normalizer_index: u64,
    /// The image in `G/Z` is not cyclic (first two tori of type `D_n`).
    pub image_noncyclic: bool,
    pub order: BigUint,
}

impl TorusEntry {
    /// The last table column, exactly.
    pub fn bound(&self) -> Result<BigRational> {
        let mut env = self.spec.env();
        env.t = Some(BigRational::from_integer(BigInt::from(self.order.clone())));
        self.bound_expr.eval(&env)
    }

    /// `nreg_bound` rounded down, clamped at 0.
    pub fn bound_floor(&self) -> Result<BigUint> {
        let b = self.bound()?.floor().to_integer();
        Ok(b.to_biguint().unwrap_or_default())
    }
}

fn small(v: BigUint, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Internal(format!("{what} does not fit in 64 bits")))
}

/// The applicable rows for `spec`, in table order.
pub fn torus_entries(spec: &GroupSpec) -> Result<Vec<TorusEntry>> {
    let env = spec.env();
    let mut out = Vec::new();
    for row in rows()
        .iter()
        .filter(|r| r.families.contains(&spec.family()) && r.cond.holds(spec))
    {
        out.push(TorusEntry {
            spec: *spec,
            position: out.len(),
            condition: row.cond.to_string(),
            order_expr: row.order.clone(),
            bound_expr: row.bound.clone(),
            e: small(row.e.eval_nat(&env)?, "e")?,
            normalizer_index: small(row.index.eval_nat(&env)?, "normaliser index")?,
            image_noncyclic: row.image_noncyclic,
            order: row.order.eval_nat(&env)?,
        });
    }
    if out.is_empty() {
        return Err(unsupported!("no torus row covers {spec}"));
    }
    Ok(out)
}
