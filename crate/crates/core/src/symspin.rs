//! Spin characters of the double covers `2.S_n`, labelled by strict
//! partitions, and their degrees against `n!_{2'}`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{binomial, factorial};

/// Factorials below this bound are served from a table built once.
const TABLE_LEN: usize = 256;

fn fact(n: u64) -> BigUint {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LEN);
        t.push(BigUint::one());
        for k in 1..TABLE_LEN as u64 {
            let next = t.last().unwrap() * k;
            t.push(next);
        }
        t
    });
    match table.get(n as usize) {
        Some(f) => f.clone(),
        None => factorial(n),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<u64>,
}

impl StrictPartition {
    pub fn new(parts: &[u64]) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid!(
                "{parts:?} is not a strictly decreasing list of positive parts"
            ));
        }
        Ok(StrictPartition {
            parts: parts.to_vec(),
        })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `2^{floor((n-m)/2)} n! / prod lambda_i! * prod_{i<j} (lambda_i - lambda_j)/(lambda_i + lambda_j)`.
pub fn spin_degree(lambda: &StrictPartition) -> Result<BigUint> {
    let (num, den) = degree_fraction(lambda);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "spin degree of {lambda} is not an integer"
        )));
    }
    Ok(q)
}

fn degree_fraction(lambda: &StrictPartition) -> (BigUint, BigUint) {
    let parts = lambda.parts();
    let n = lambda.n();
    let m = parts.len() as u64;
    let mut num = fact(n) << ((n - m) / 2);
    let mut den = BigUint::one();
    for &p in parts {
        den *= fact(p);
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            num *= parts[i] - parts[j];
            den *= parts[i] + parts[j];
        }
    }
    (num, den)
}

pub fn odd_part_factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 1..=n {
        acc *= k >> k.trailing_zeros();
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinFamilyIndex {
    pub l: u64,
    pub n1: u64,
    pub n2: u64,
    pub p1: StrictPartition,
    pub p2: StrictPartition,
}

impl SpinFamilyIndex {
    pub fn new(l: u64) -> Result<Self> {
        if l == 0 {
            return Err(invalid!("l must be positive"));
        }
        let p1: Vec<u64> = (0..l).map(|k| 4 * l - 3 - 4 * k).collect();
        let p2: Vec<u64> = (0..l).map(|k| 4 * l - 1 - 4 * k).collect();
        Ok(SpinFamilyIndex {
            l,
            n1: l * (2 * l - 1),
            n2: l * (2 * l + 1),
            p1: StrictPartition::new(&p1)?,
            p2: StrictPartition::new(&p2)?,
        })
    }

    pub fn partition(&self, family: u8) -> &StrictPartition {
        if family == 1 {
            &self.p1
        } else {
            &self.p2
        }
    }
}

fn check_family(family: u8) -> Result<()> {
    if matches!(family, 1 | 2) {
        Ok(())
    } else {
        Err(invalid!("family must be 1 or 2, got {family}"))
    }
}

/// Both sides of the ratio identity, cross-multiplied:
/// `chi_{l+1} * C(4l-1, 2l)` against `chi_l * 2^{4l-1} * C(n_{l+1,1}, 4l+1)` for
/// family 1 and the analogue with `2^{4l+1}`, `C(n_{l+1,2}, 4l+3)`,
/// `C(4l+1, 2l+1)` for family 2.
pub fn ratio_identity_sides(l: u64, family: u8) -> Result<(BigUint, BigUint)> {
    check_family(family)?;
    let this = SpinFamilyIndex::new(l)?;
    let next = SpinFamilyIndex::new(l + 1)?;
    let a = spin_degree(this.partition(family))?;
    let b = spin_degree(next.partition(family))?;
    let (shift, top, bottom) = if family == 1 {
        (
            4 * l - 1,
            binomial(next.n1, 4 * l + 1),
            binomial(4 * l - 1, 2 * l),
        )
    } else {
        (
            4 * l + 1,
            binomial(next.n2, 4 * l + 3),
            binomial(4 * l + 1, 2 * l + 1),
        )
    };
    Ok((b * bottom, (a << shift) * top))
}

pub fn ratio_identity_check(l: u64, family: u8) -> Result<bool> {
    let (lhs, rhs) = ratio_identity_sides(l, family)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSides {
    pub l: u64,
    /// `chi_l^1(1)^2` and `(n_{l,2} - 1)!_{2'}`.
    pub first: (BigUint, BigUint),
    /// `chi_l^2(1)^2` and `(n_{l+1,1} - 1)!_{2'}`.
    pub second: (BigUint, BigUint),
}

impl StarSides {
    pub fn holds(&self) -> (bool, bool) {
        (self.first.0 >= self.first.1, self.second.0 >= self.second.1)
    }
}

pub fn star_sides(l: u64) -> Result<StarSides> {
    let idx = SpinFamilyIndex::new(l)?;
    let next = SpinFamilyIndex::new(l + 1)?;
    let c1 = spin_degree(&idx.p1)?;
    let c2 = spin_degree(&idx.p2)?;
    Ok(StarSides {
        l,
        first: (&c1 * &c1, odd_part_factorial(idx.n2 - 1)),
        second: (&c2 * &c2, odd_part_factorial(next.n1 - 1)),
    })
}

pub fn star_inequality(l: u64) -> Result<(bool, bool)> {
    Ok(star_sides(l)?.holds())
}

/// Least `l0 <= l_max` such that both inequalities hold for every
/// `l0 <= l <= l_max`, per family.
pub fn star_thresholds(l_max: u64) -> Result<(u64, u64)> {
    let mut t = (l_max + 1, l_max + 1);
    let mut ok = (true, true);
    for l in (1..=l_max).rev() {
        let (a, b) = star_inequality(l)?;
        ok.0 &= a;
        ok.1 &= b;
        if ok.0 {
            t.0 = l;
        }
        if ok.1 {
            t.1 = l;
        }
    }
    Ok(t)
}

/// Strict partitions of `n`, lexicographically decreasing.
pub fn strict_partitions(n: u64) -> Vec<StrictPartition> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<StrictPartition>) {
        if rest == 0 {
            out.push(StrictPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub n: u64,
    pub witness: StrictPartition,
    pub max_degree: BigUint,
    pub target: BigUint,
    pub pass: bool,
    /// Leaves reached by the pruned search.
    pub partitions_searched: u64,
}

impl CoverageReport {
    pub const LABEL: &'static str = "degree-level only";
}

struct Search {
    n: u64,
    ln_fact: Vec<f64>,
    ln_int: Vec<f64>,
    /// `completion[r][m]`: the largest `-sum ln mu_i!` over strict partitions
    /// `mu` of `r` with parts at most `m`.
    completion: Vec<Vec<f64>>,
    best: f64,
    candidates: Vec<(f64, Vec<u64>)>,
    count: u64,
}

const LOG_SLACK: f64 = 1e-6;

impl Search {
    /// `inv` is the sum of `1/q` over the parts in `cur`.
    fn visit(&mut self, rest: u64, max: u64, cur: &mut Vec<u64>, log_partial: f64, inv: f64) {
        if rest == 0 {
            self.count += 1;
            let m = cur.len() as u64;
            let value = log_partial + ((self.n - m) / 2) as f64 * std::f64::consts::LN_2;
            if value > self.best {
                self.best = value;
            }
            if value >= self.best - LOG_SLACK {
                self.candidates.push((value, cur.clone()));
            }
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            let mut step = -self.ln_fact[p as usize];
            for &q in cur.iter() {
                step += self.ln_int[(q - p) as usize] - self.ln_int[(q + p) as usize];
            }
            let next = log_partial + step;
            let left = rest - p;
            let inv_next = inv + 1.0 / p as f64;
            if left > 0 {
                // ln((q-p)/(q+p)) = -2 artanh(p/q) <= -2p/q, so each part q
                // already placed costs at least 2 left/q; the remaining cross
                // terms are dropped.
                let len = cur.len() as u64 + 2;
                let ceiling = next - 2.0 * left as f64 * inv_next
                    + self.completion[left as usize][(p - 1).min(left) as usize]
                    + (self.n.saturating_sub(len) / 2) as f64 * std::f64::consts::LN_2;
                if ceiling < self.best - LOG_SLACK {
                    continue;
                }
            }
            cur.push(p);
            self.visit(left, p - 1, cur, next, inv_next);
            cur.pop();
        }
    }
}

/// `(k, k-1, ..., 1)` with the leftover spread over the largest parts.
fn staircase(n: u64) -> Vec<u64> {
    let mut k = 0;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    let mut parts: Vec<u64> = (1..=k).rev().collect();
    let extra = n - k * (k + 1) / 2;
    for p in parts.iter_mut().take(extra as usize) {
        *p += 1;
    }
    parts
}

/// Moves single units between parts while the log degree improves.
fn hill_climb(mut parts: Vec<u64>, ln_fact: &[f64]) -> f64 {
    let mut best = log_degree(&parts, ln_fact);
    loop {
        let mut improved = false;
        let k = parts.len();
        for i in 0..k {
            for j in 0..=k {
                if i == j {
                    continue;
                }
                let mut cand = parts.clone();
                cand[i] -= 1;
                if j == k {
                    cand.push(1);
                } else {
                    cand[j] += 1;
                }
                cand.retain(|&p| p > 0);
                cand.sort_unstable_by(|a, b| b.cmp(a));
                if cand.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let v = log_degree(&cand, ln_fact);
                if v > best + LOG_SLACK {
                    best = v;
                    parts = cand;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            return best;
        }
    }
}

fn log_degree(parts: &[u64], ln_fact: &[f64]) -> f64 {
    let n: u64 = parts.iter().sum();
    let mut v =
        ln_fact[n as usize] + ((n - parts.len() as u64) / 2) as f64 * std::f64::consts::LN_2;
    for (i, &a) in parts.iter().enumerate() {
        v -= ln_fact[a as usize];
        for &b in &parts[i + 1..] {
            v += ((a - b) as f64).ln() - ((a + b) as f64).ln();
        }
    }
    v
}

/// Largest spin degree among strict partitions of `n`, compared with
/// `n!_{2'}`. A double-precision search keeps near-maximal candidates, which
/// are then compared exactly; ties go to the lexicographically largest
/// partition. Says nothing about 2-modular irreducibility.
pub fn coverage_check(n: u64) -> Result<CoverageReport> {
    if !(5..120).contains(&n) {
        return Err(invalid!("coverage_check needs 5 <= n < 120, got {n}"));
    }
    let mut ln_fact = vec![0.0f64; n as usize + 1];
    for k in 1..=n as usize {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    let size = n as usize + 1;
    let mut completion = vec![vec![f64::NEG_INFINITY; size]; size];
    completion[0].fill(0.0);
    for r in 1..size {
        for m in 1..size {
            let mut v = completion[r][m - 1];
            if m <= r {
                v = v.max(completion[r - m][m - 1] - ln_fact[m]);
            }
            completion[r][m] = v;
        }
    }
    let mut search = Search {
        n,
        completion,
        ln_int: (0..=2 * n).map(|k| (k as f64).ln()).collect(),
        best: f64::NEG_INFINITY,
        candidates: Vec::new(),
        count: 0,
        ln_fact,
    };
    search.best = hill_climb(staircase(n), &search.ln_fact);
    let start = search.ln_fact[n as usize];
    search.visit(n, n, &mut Vec::new(), start, 0.0);
    let cutoff = search.best - LOG_SLACK;
    let mut best: Option<(BigUint, StrictPartition)> = None;
    for (value, parts) in search.candidates {
        if value < cutoff {
            continue;
        }
        let lambda = StrictPartition { parts };
        let d = spin_degree(&lambda)?;
        let better = match &best {
            None => true,
            Some((bd, bl)) => d > *bd || (d == *bd && lambda > *bl),
        };
        if better {
            best = Some((d, lambda));
        }
    }
    let (max_degree, witness) = best.expect("every n >= 1 has a strict partition");
    let target = odd_part_factorial(n);
    Ok(CoverageReport {
        n,
        pass: &max_degree * &max_degree >= target,
        witness,
        max_degree,
        target,
        partitions_searched: search.count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u64]) -> StrictPartition {
        StrictPartition::new(parts).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(spin_degree(&sp(&[3, 2, 1])).unwrap(), BigUint::from(4u32));
        for n in 1..20u64 {
            assert_eq!(
                spin_degree(&sp(&[n])).unwrap(),
                BigUint::one() << ((n - 1) / 2)
            );
        }
        assert_eq!(spin_degree(&sp(&[3])).unwrap(), BigUint::from(2u32));
        assert_eq!(spin_degree(&sp(&[5, 1])).unwrap(), BigUint::from(16u32));
        assert!(StrictPartition::new(&[2, 2]).is_err());
        assert!(StrictPartition::new(&[1, 2]).is_err());
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part_factorial(6), BigUint::from(45u32));
        assert_eq!(odd_part_factorial(0), BigUint::one());
        assert_eq!(odd_part_factorial(9), BigUint::from(2835u32));
    }

    #[test]
    fn family_indices() {
        let i = SpinFamilyIndex::new(8).unwrap();
        assert_eq!(i.n1, 120);
        assert_eq!(i.p1.n(), i.n1);
        assert_eq!(i.p2.n(), i.n2);
        assert_eq!(SpinFamilyIndex::new(1).unwrap().p2, sp(&[3]));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            spin_degree(&SpinFamilyIndex::new(1).unwrap().p1).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            spin_degree(&SpinFamilyIndex::new(2).unwrap().p1).unwrap(),
            BigUint::from(16u32)
        );
        assert!(ratio_identity_check(1, 1).unwrap());
        assert!(ratio_identity_check(2, 1).unwrap());
        assert!(ratio_identity_check(1, 2).unwrap());
        assert!(ratio_identity_check(1, 3).is_err());
    }

    #[test]
    fn star_examples() {
        let s = star_sides(2).unwrap();
        assert_eq!(s.first, (BigUint::from(256u32), BigUint::from(2835u32)));
        assert!(!s.holds().0);
        assert_eq!(star_inequality(8).unwrap(), (true, true));
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(
            strict_partitions(6),
            [sp(&[6]), sp(&[5, 1]), sp(&[4, 2]), sp(&[3, 2, 1])]
        );
        assert_eq!(strict_partitions(10).len(), 10);
    }

    #[test]
    fn coverage_examples() {
        let r = coverage_check(6).unwrap();
        assert_eq!(
            (r.max_degree.clone(), r.witness.clone()),
            (BigUint::from(20u32), sp(&[4, 2]))
        );
        assert_eq!(r.target, BigUint::from(45u32));
        assert!(r.pass);
        let r = coverage_check(10).unwrap();
        assert!(r.partitions_searched <= 10);
        let exhaustive = strict_partitions(10)
            .iter()
            .map(|l| spin_degree(l).unwrap())
            .max()
            .unwrap();
        assert_eq!(r.max_degree, exhaustive);
        assert!(coverage_check(4).is_err());
        assert!(coverage_check(120).is_err());
    }

    #[test]
    fn pruned_search_matches_enumeration() {
        for n in 5..=45 {
            let r = coverage_check(n).unwrap();
            let best = strict_partitions(n)
                .into_iter()
                .map(|l| (spin_degree(&l).unwrap(), l))
                .max()
                .unwrap();
            assert_eq!((r.max_degree, r.witness), best, "n = {n}");
        }
    }
}
