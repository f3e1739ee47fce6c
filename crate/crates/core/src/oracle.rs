//! Brute-force conjugacy classes of `SL2(q)` for `q <= 11`.
//!
//! Fields of order 4, 8 and 9 are built from the polynomials `x^2 + x + 1`,
//! `x^3 + x + 1` and `x^2 + 1`. An element is coded by its coefficient
//! vector read as a base-`p` integer, constant term first.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{invalid, not_applicable, Error, Result};
use crate::exactnum::{p_part_split, PrimePower};
use crate::lie::{order, torus_entries, Family, GroupSpec};
use crate::regclasses::{not_quasi_simple, nreg_lower_bound, two_classes};

pub const Q_MAX: u64 = 11;

#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn modulus(q: u64) -> Option<&'static [u64]> {
    // Monic, lowest degree first, leading coefficient omitted.
    match q {
        4 => Some(&[1, 1]),
        8 => Some(&[1, 1, 0]),
        9 => Some(&[1, 0]),
        _ => None,
    }
}

impl Field {
    pub fn new(q: PrimePower) -> Result<Self> {
        let (p, f, n) = (q.p(), q.f() as usize, q.value() as usize);
        if n > Q_MAX as usize {
            return Err(invalid!(
                "field of order {n} exceeds the oracle limit {Q_MAX}"
            ));
        }
        let digits = |mut x: usize| -> Vec<u64> {
            let mut d = vec![0; f];
            for slot in d.iter_mut() {
                *slot = (x % p as usize) as u64;
                x /= p as usize;
            }
            d
        };
        let code = |d: &[u64]| {
            d.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let poly_mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut prod = vec![0u64; 2 * f];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            if let Some(m) = modulus(n as u64) {
                for k in (f..2 * f).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &mi) in m.iter().enumerate() {
                        prod[k - f + i] = (prod[k - f + i] + (p - c) * mi) % p;
                    }
                }
            }
            prod.truncate(f);
            prod
        };
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = code(&sum) as u8;
                mul[a * n + b] = code(&poly_mul(&da, &db)) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..n)
                    .find(|&b| mul[a * n + b] == 1)
                    .ok_or_else(|| Error::Internal(format!("GF({n}) table is not a field")))?
                    as u8;
            }
        }
        Ok(Field {
            q: n,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
}

/// `[a, b, c, d]` is the matrix with rows `(a, b)` and `(c, d)`.
pub type Mat = [u8; 4];

fn mat_mul(k: &Field, x: &Mat, y: &Mat) -> Mat {
    let dot = |a, b, c, d| k.add(k.mul(a, b), k.mul(c, d));
    [
        dot(x[0], y[0], x[1], y[2]),
        dot(x[0], y[1], x[1], y[3]),
        dot(x[2], y[0], x[3], y[2]),
        dot(x[2], y[1], x[3], y[3]),
    ]
}

/// Inverse of a determinant-one matrix.
fn mat_inv(k: &Field, x: &Mat) -> Mat {
    [x[3], k.neg(x[1]), k.neg(x[2]), x[0]]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Mat,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
}

#[derive(Debug, Clone)]
pub struct SmallGroup {
    pub q: PrimePower,
    pub field: Field,
    pub elements: Vec<Mat>,
    /// Ordered by the position of the representative in `elements`.
    pub classes: Vec<ClassInfo>,
}

impl SmallGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn class_equation_holds(&self) -> bool {
        self.classes.iter().map(|c| c.size).sum::<u64>() == self.order()
            && self
                .classes
                .iter()
                .all(|c| c.size * c.centralizer_order == self.order())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn enumerate(q: PrimePower) -> Result<SmallGroup> {
    let k = Field::new(q)?;
    let n = k.order();
    let code = |m: &Mat| m.iter().fold(0usize, |acc, &x| acc * n + x as usize);
    let mut elements = Vec::new();
    let mut index = vec![usize::MAX; n.pow(4)];
    for a in 0..n as u8 {
        for b in 0..n as u8 {
            for c in 0..n as u8 {
                for d in 0..n as u8 {
                    if k.sub(k.mul(a, d), k.mul(b, c)) == 1 {
                        let m = [a, b, c, d];
                        index[code(&m)] = elements.len();
                        elements.push(m);
                    }
                }
            }
        }
    }
    // The elementary matrices generate SL2(q).
    let mut gens = Vec::new();
    for t in 1..n as u8 {
        gens.push([1, t, 0, 1]);
        gens.push([1, 0, t, 1]);
    }
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    for h in &gens {
        let hi = mat_inv(&k, h);
        for (i, g) in elements.iter().enumerate() {
            let c = mat_mul(&k, &mat_mul(&k, h, g), &hi);
            let j = index[code(&c)];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for i in 0..elements.len() {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let total = elements.len() as u64;
    let identity: Mat = [1, 0, 0, 1];
    let classes = sizes
        .into_iter()
        .map(|(root, size)| {
            let rep = elements[root];
            let mut power = rep;
            let mut element_order = 1;
            while power != identity {
                power = mat_mul(&k, &power, &rep);
                element_order += 1;
            }
            ClassInfo {
                representative: rep,
                size,
                centralizer_order: total / size,
                element_order,
            }
        })
        .collect();
    Ok(SmallGroup {
        q,
        field: k,
        elements,
        classes,
    })
}

/// Classes whose centraliser order is prime to the defining characteristic.
pub fn regular_ss_classes(g: &SmallGroup) -> usize {
    let p = g.q.p();
    g.classes
        .iter()
        .filter(|c| c.centralizer_order.gcd(&p) == 1)
        .count()
}

#[derive(Debug, Clone)]
pub struct TorusComparison {
    pub torus_order: u64,
    pub count: u64,
    pub bound: BigUint,
    pub exact: Option<BigRational>,
}

impl TorusComparison {
    pub fn pass(&self) -> bool {
        BigUint::from(self.count) >= self.bound
    }
}

#[derive(Debug, Clone)]
pub struct TableComparison {
    pub q: PrimePower,
    pub tori: Vec<TorusComparison>,
    pub regular_classes: usize,
    pub two_classes_certified: bool,
}

fn sl2(q: PrimePower) -> Result<GroupSpec> {
    GroupSpec::new(Family::A, 2, q)
}

/// The registry order of `SL2(q)` and its `p'`-part.
pub fn registry_order(q: PrimePower) -> Result<(BigUint, BigUint)> {
    let registry = order(&sl2(q)?);
    let (_, p_prime) = p_part_split(&registry, q.p())?;
    Ok((registry, p_prime))
}

/// Regular classes split by the torus whose order divides the centraliser
/// order, against the table bounds.
pub fn compare_with_tables(g: &SmallGroup) -> Result<TableComparison> {
    let spec = sl2(g.q)?;
    if not_quasi_simple(&spec) {
        return Err(not_applicable!(
            "{} is not quasi-simple",
            spec.display_name()
        ));
    }
    let p = g.q.p();
    let regular: Vec<&ClassInfo> = g
        .classes
        .iter()
        .filter(|c| c.centralizer_order.gcd(&p) == 1)
        .collect();
    let mut tori = Vec::new();
    for entry in torus_entries(&spec)? {
        let t = u64::try_from(&entry.order)
            .map_err(|_| Error::Internal("torus order overflow".into()))?;
        let bound = nreg_lower_bound(&spec, &entry)?;
        tori.push(TorusComparison {
            torus_order: t,
            count: regular
                .iter()
                .filter(|c| c.centralizer_order % t == 0)
                .count() as u64,
            bound: bound.bound,
            exact: bound.exact,
        });
    }
    Ok(TableComparison {
        q: g.q,
        tori,
        regular_classes: regular.len(),
        two_classes_certified: two_classes(&spec)?.certified,
    })
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub q: PrimePower,
    pub order: u64,
    pub class_count: usize,
    pub class_size_sum: u64,
    pub class_equation: bool,
    pub registry_order: BigUint,
    pub p_prime_part: BigUint,
    pub regular_classes: usize,
    /// `None` for groups that are not quasi-simple.
    pub comparison: Option<TableComparison>,
}

impl OracleResult {
    pub fn order_matches(&self) -> bool {
        self.registry_order == BigUint::from(self.order)
    }

    /// `q^2 - 1`.
    pub fn expected_p_prime(&self) -> BigUint {
        let q = self.q.value();
        BigUint::from(q * q - 1)
    }
}

fn run_one(q: PrimePower) -> Result<OracleResult> {
    let g = enumerate(q)?;
    let (registry_order, p_prime_part) = registry_order(q)?;
    let comparison = match compare_with_tables(&g) {
        Ok(c) => Some(c),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(OracleResult {
        q,
        order: g.order(),
        class_count: g.classes.len(),
        class_size_sum: g.classes.iter().map(|c| c.size).sum(),
        class_equation: g.class_equation_holds(),
        registry_order,
        p_prime_part,
        regular_classes: regular_ss_classes(&g),
        comparison,
    })
}

/// Every `q` with `3 <= q <= q_max`, one thread per group.
pub fn run_suite(q_max: u64) -> Result<Vec<OracleResult>> {
    if q_max > Q_MAX {
        return Err(invalid!(
            "oracle groups are limited to q <= {Q_MAX}, got {q_max}"
        ));
    }
    let qs: Vec<PrimePower> = PrimePower::up_to(q_max)
        .into_iter()
        .filter(|q| q.value() >= 3)
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = qs.iter().map(|&q| s.spawn(move || run_one(q))).collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| Error::Internal("oracle worker panicked".into()))?
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11] {
            let k = Field::new(pp(q)).unwrap();
            for a in 1..q as u8 {
                assert_eq!(k.mul(a, k.inv(a)), 1);
                for b in 0..q as u8 {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                }
            }
        }
        assert!(Field::new(pp(13)).is_err());
        let k = Field::new(pp(4)).unwrap();
        // x * x = x + 1
        assert_eq!(k.mul(2, 2), 3);
    }

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate(pp(2)).unwrap().order(), 6);
        assert_eq!(enumerate(pp(3)).unwrap().order(), 24);
        let g = enumerate(pp(5)).unwrap();
        assert_eq!(g.order(), 120);
        assert!(g.class_equation_holds());
        assert_eq!(g.classes.len(), 9);
        assert!(enumerate(pp(13)).is_err());
    }

    #[test]
    fn regular_classes() {
        let g = enumerate(pp(5)).unwrap();
        assert_eq!(regular_ss_classes(&g), 3);
        let mut orders: Vec<u64> = g
            .classes
            .iter()
            .filter(|c| c.centralizer_order % 5 != 0)
            .map(|c| c.element_order)
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, [3, 4, 6]);
        assert!(regular_ss_classes(&enumerate(pp(4)).unwrap()) >= 2);
    }

    #[test]
    fn table_comparison() {
        let counts = |q| {
            let c = compare_with_tables(&enumerate(pp(q)).unwrap()).unwrap();
            c.tori
                .iter()
                .map(|t| (t.torus_order, t.count, u64::try_from(&t.bound).unwrap()))
                .collect::<Vec<_>>()
        };
        assert_eq!(counts(5), [(6, 2, 2), (4, 1, 1)]);
        assert_eq!(counts(7), [(8, 3, 3), (6, 2, 2)]);
        assert_eq!(counts(9), [(10, 4, 4), (8, 3, 3)]);
        assert_eq!(counts(4), [(5, 2, 1), (3, 1, 0)]);
        assert!(compare_with_tables(&enumerate(pp(3)).unwrap()).is_err());
    }

    #[test]
    fn suite() {
        let results = run_suite(9).unwrap();
        let qs: Vec<u64> = results.iter().map(|r| r.q.value()).collect();
        assert_eq!(qs, [3, 4, 5, 7, 8, 9]);
        for r in &results {
            assert!(r.class_equation && r.order_matches());
            assert_eq!(r.p_prime_part, r.expected_p_prime());
        }
        assert!(run_suite(12).is_err());
    }
}
