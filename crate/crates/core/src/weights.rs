//! Weights of the root systems `A1`, `A2`, `A3` and `C2` in fundamental-weight
//! coordinates: Weyl orbits, subdominant weights and the orbit-sum lower
//! bound for `dim L(lambda)` coming from Premet's theorem.
//!
//! For `C2` the second fundamental weight is the natural module, so a highest
//! weight `(i, j)` is faithful on the centre of `Sp4` exactly when `j` is odd.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A1,
    A2,
    A3,
    C2,
}

impl RootType {
    pub const ALL: [RootType; 4] = [RootType::A1, RootType::A2, RootType::A3, RootType::C2];

    pub fn rank(self) -> usize {
        match self {
            RootType::A1 => 1,
            RootType::A2 | RootType::C2 => 2,
            RootType::A3 => 3,
        }
    }

    /// Rows are the simple roots in fundamental-weight coordinates.
    fn cartan(self) -> Vec<Vec<i64>> {
        match self {
            RootType::A1 => vec![vec![2]],
            RootType::A2 => vec![vec![2, -1], vec![-1, 2]],
            RootType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            RootType::C2 => vec![vec![2, -2], vec![-1, 2]],
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RootType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid!("unknown root system {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(coords.to_vec())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

type Matrix = Vec<Vec<i64>>;

fn apply(w: &[i64], m: &Matrix) -> Vec<i64> {
    (0..m.len())
        .map(|j| w.iter().zip(m).map(|(a, row)| a * row[j]).sum())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().map(|row| apply(row, b)).collect()
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub kind: RootType,
    pub simple_roots: Matrix,
    /// Every Weyl group element, acting on row vectors from the right.
    pub weyl_group: Vec<Matrix>,
}

impl RootSystem {
    pub fn new(kind: RootType) -> Self {
        let simple_roots = kind.cartan();
        let n = kind.rank();
        let identity: Matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        // s_i(w) = w - w_i alpha_i
        let reflections: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut m = identity.clone();
                for j in 0..n {
                    m[i][j] -= simple_roots[i][j];
                }
                m
            })
            .collect();
        let mut seen = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for s in &reflections {
                let h = mat_mul(&g, s);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        RootSystem {
            kind,
            simple_roots,
            weyl_group: seen.into_iter().collect(),
        }
    }

    pub fn get(kind: RootType) -> &'static RootSystem {
        static SYSTEMS: OnceLock<Vec<RootSystem>> = OnceLock::new();
        let all =
            SYSTEMS.get_or_init(|| RootType::ALL.iter().map(|&k| RootSystem::new(k)).collect());
        &all[RootType::ALL.iter().position(|&k| k == kind).unwrap()]
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.0.len() != self.rank() {
            return Err(invalid!(
                "weight {w} has the wrong length for {}",
                self.kind
            ));
        }
        Ok(())
    }

    /// Coordinates of `w` in the basis of simple roots, scaled by the
    /// determinant of the Cartan matrix so that they are integers.
    fn root_coords_scaled(&self, w: &[i64]) -> (Vec<i64>, i64) {
        let (adj, det): (Matrix, i64) = match self.kind {
            RootType::A1 => (vec![vec![1]], 2),
            RootType::A2 => (vec![vec![2, 1], vec![1, 2]], 3),
            RootType::A3 => (vec![vec![3, 2, 1], vec![2, 4, 2], vec![1, 2, 3]], 4),
            RootType::C2 => (vec![vec![2, 2], vec![1, 2]], 2),
        };
        (apply(w, &adj), det)
    }

    /// `lambda - mu` as a combination of simple roots, if it is integral.
    pub fn root_difference(&self, lambda: &Weight, mu: &Weight) -> Option<Vec<i64>> {
        let diff: Vec<i64> = lambda.0.iter().zip(&mu.0).map(|(a, b)| a - b).collect();
        let (scaled, det) = self.root_coords_scaled(&diff);
        scaled
            .iter()
            .map(|c| (c % det == 0).then(|| c / det))
            .collect()
    }
}

pub fn weyl_orbit(rs: &RootSystem, w: &Weight) -> Result<BTreeSet<Weight>> {
    rs.check(w)?;
    if !w.is_dominant() {
        return Err(invalid!("{w} is not dominant"));
    }
    Ok(rs
        .weyl_group
        .iter()
        .map(|g| Weight(apply(&w.0, g)))
        .collect())
}

pub fn weyl_orbit_size(rs: &RootSystem, w: &Weight) -> Result<u64> {
    Ok(weyl_orbit(rs, w)?.len() as u64)
}

/// Dominant weights `mu <= lambda` in the dominance order, with orbit sizes,
/// ordered by weight.
pub fn subdominant_weights(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Weight, u64)>> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(invalid!("{lambda} is not dominant"));
    }
    // A dominant mu has nonnegative root coordinates, so the subtracted
    // combination is bounded by the root coordinates of lambda.
    let (limit, det) = rs.root_coords_scaled(&lambda.0);
    let n = rs.rank();
    let start = vec![0i64; n];
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = BTreeMap::new();
    while let Some(c) = queue.pop_front() {
        let mu: Vec<i64> = (0..n)
            .map(|j| lambda.0[j] - (0..n).map(|i| c[i] * rs.simple_roots[i][j]).sum::<i64>())
            .collect();
        let mu = Weight(mu);
        if mu.is_dominant() {
            let size = weyl_orbit_size(rs, &mu)?;
            out.insert(mu, size);
        }
        for i in 0..n {
            let mut next = c.clone();
            next[i] += 1;
            if next[i] * det <= limit[i] && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of weights of the characteristic-zero module `V(lambda)` counted
/// without multiplicity; every one of them occurs in `L(lambda)` for
/// restricted `lambda`.
pub fn premet_bound(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    Ok(subdominant_weights(rs, lambda)?
        .iter()
        .map(|(_, s)| s)
        .sum())
}

/// `lambda` restricted to the centre of the simply connected group, as a
/// residue modulo its order.
pub fn central_character(kind: RootType, lambda: &Weight) -> Result<u64> {
    let m = &lambda.0;
    let (value, modulus) = match (kind, m.len()) {
        (RootType::A2, 2) => (m[0] + 2 * m[1], 3),
        (RootType::A3, 3) => (m[0] + 2 * m[1] + 3 * m[2], 4),
        (RootType::C2, 2) => (m[1], 2),
        _ => {
            return Err(invalid!(
                "no central character for {kind} and weight {lambda}"
            ))
        }
    };
    Ok(value.rem_euclid(modulus) as u64)
}

/// `premet_bound` as a polynomial in the coordinates of `lambda`. The count
/// is that of lattice points in a Minkowski sum of lattice polytopes dilated
/// by the coordinates, hence polynomial of degree at most the rank; it is
/// interpolated on a grid and checked against enumeration on a larger one.
#[derive(Debug, Clone)]
pub struct PremetPolynomial {
    pub kind: RootType,
    /// Monomial exponents with integer coefficients over `denominator`.
    pub terms: Vec<(Vec<u32>, i128)>,
    pub denominator: i128,
    pub validated_points: usize,
}

/// Coefficients of the Lagrange basis on nodes `0..=d`.
fn lagrange_basis(d: usize) -> Vec<Vec<BigRational>> {
    (0..=d)
        .map(|k| {
            let mut poly = vec![BigRational::one()];
            for m in (0..=d).filter(|&m| m != k) {
                let scale = BigRational::from_integer(BigInt::from(k as i64 - m as i64));
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c / &scale;
                    next[i] -= c * BigRational::from_integer(BigInt::from(m)) / &scale;
                }
                poly = next;
            }
            poly
        })
        .collect()
}

fn grid_points(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts
}

impl PremetPolynomial {
    pub fn fit(kind: RootType) -> Result<Self> {
        let rs = RootSystem::get(kind);
        let n = kind.rank();
        let d = n;
        let basis = lagrange_basis(d);
        let mut coeffs: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for node in grid_points(n, d as i64) {
            let value =
                BigRational::from_integer(BigInt::from(premet_bound(rs, &Weight(node.clone()))?));
            // Expand value * prod_i L_{node_i}(x_i).
            let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(vec![], value)];
            for &k in &node {
                partial = partial
                    .into_iter()
                    .flat_map(|(exp, c)| {
                        basis[k as usize].iter().enumerate().map(move |(a, b)| {
                            let mut e = exp.clone();
                            e.push(a as u32);
                            (e, &c * b)
                        })
                    })
                    .collect();
            }
            for (exp, c) in partial {
                *coeffs.entry(exp).or_insert_with(BigRational::zero) += c;
            }
        }
        let denominator = coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms: Vec<(Vec<u32>, i128)> = coeffs
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                (
                    e,
                    (c.numer() * (&denominator / c.denom())).to_i128().unwrap(),
                )
            })
            .collect();
        let mut poly = PremetPolynomial {
            kind,
            terms,
            denominator: denominator.to_i128().unwrap(),
            validated_points: 0,
        };
        for pt in grid_points(n, d as i64 + 3) {
            let direct = premet_bound(rs, &Weight(pt.clone()))?;
            if poly.eval(&pt)? != direct as i128 {
                return Err(Error::Internal(format!(
                    "orbit-sum polynomial for {kind} disagrees with enumeration at {pt:?}"
                )));
            }
            poly.validated_points += 1;
        }
        Ok(poly)
    }

    pub fn get(kind: RootType) -> &'static PremetPolynomial {
        static POLYS: OnceLock<Vec<PremetPolynomial>> = OnceLock::new();
        let all = POLYS.get_or_init(|| {
            RootType::ALL
                .iter()
                .map(|&k| PremetPolynomial::fit(k).expect("orbit-sum polynomial fit"))
                .collect()
        });
        &all[RootType::ALL.iter().position(|&k| k == kind).unwrap()]
    }

    pub fn eval(&self, lambda: &[i64]) -> Result<i128> {
        let mut acc: i128 = 0;
        for (exp, c) in &self.terms {
            let mono: i128 = exp
                .iter()
                .zip(lambda)
                .map(|(&e, &x)| (x as i128).pow(e))
                .product();
            acc += c * mono;
        }
        if acc % self.denominator != 0 {
            return Err(Error::Internal(format!(
                "orbit-sum polynomial not integral at {lambda:?}"
            )));
        }
        Ok(acc / self.denominator)
    }
}
