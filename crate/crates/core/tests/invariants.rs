use charbound_core::exactnum::{
    cyclo_eval, divisors, factorize, mult_order, p_part_split, zsigmondy_primes, PrimePower,
    DEFAULT_EFFORT,
};
use charbound_core::lie::{center_order, order, sylow_cyclic, torus_entries, Family, GroupSpec};
use charbound_core::symspin::{spin_degree, strict_partitions, StrictPartition};
use charbound_core::weights::{
    central_character, subdominant_weights, weyl_orbit_size, RootSystem, RootType, Weight,
};
use charbound_core::{crosschar, exactnum};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

fn prime_powers(max: u64) -> Vec<u64> {
    PrimePower::up_to(max).iter().map(|q| q.value()).collect()
}

fn spec(family: Family, rank: u32, q: u64) -> Option<GroupSpec> {
    GroupSpec::new(family, rank, PrimePower::new(q).ok()?).ok()
}

fn any_spec(rank_max: u32, q_max: u64) -> impl Strategy<Value = GroupSpec> {
    (
        prop::sample::select(Family::ALL.to_vec()),
        2..=rank_max,
        prop::sample::select(prime_powers(q_max)),
    )
        .prop_filter_map("no such group", |(f, n, q)| {
            spec(f, f.fixed_rank().unwrap_or(n), q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclotomic_product(m in 1u64..=30, q in 2u64..=20) {
        let q = BigUint::from(q);
        let prod = divisors(m).iter().fold(BigUint::one(), |acc, &d| acc * cyclo_eval(d, &q));
        prop_assert_eq!(prod, q.pow(m as u32) - 1u32);
    }

    #[test]
    fn p_part_round_trip(n in 1u64..u64::MAX, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 1_000_003])) {
        let n = BigUint::from(n);
        let (pp, rest) = p_part_split(&n, p).unwrap();
        prop_assert_eq!(&pp * &rest, n);
        prop_assert!(!(rest % p).is_zero());
        prop_assert_eq!(exactnum::p_part(&(&pp * 1u32), p).unwrap(), pp);
    }

    #[test]
    fn factorization_reconstructs(a in 1u64..u64::MAX, b in 1u64..1u64 << 40) {
        let n = BigUint::from(a) * BigUint::from(b);
        let f = factorize(&n, DEFAULT_EFFORT);
        prop_assert_eq!(f.reconstruct(), n);
        prop_assert!(f.primes().all(exactnum::is_prime));
    }

    #[test]
    fn tori_divide_the_order(s in any_spec(12, 16)) {
        let g = order(&s);
        // 2F4(2) has no table rows.
        let entries = torus_entries(&s).unwrap_or_default();
        for entry in entries {
            prop_assert!((&g % &entry.order).is_zero(), "{} torus {}", s, entry.order);
        }
    }

    #[test]
    fn cyclic_sylow_sits_in_one_factor(s in any_spec(8, 9), p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 31, 43, 73])) {
        prop_assume!(s.p() != p);
        if sylow_cyclic(&s, p).unwrap() {
            let (full, _) = p_part_split(&order(&s), p).unwrap();
            let root = s.twist_root();
            let hit = s
                .order_formula()
                .factor_values(&s.q_big(), root.as_ref())
                .iter()
                .any(|(_, v, _)| p_part_split(v, p).unwrap().0 == full);
            prop_assert!(hit, "{} p = {}", s, p);
        }
    }

    #[test]
    fn orbit_sizes_divide_weyl_order(kind in prop::sample::select(RootType::ALL.to_vec()), raw in prop::collection::vec(0i64..=6, 3)) {
        let rs = RootSystem::get(kind);
        let w = Weight::new(&raw[..kind.rank()]);
        let size = weyl_orbit_size(rs, &w).unwrap();
        prop_assert_eq!(rs.weyl_group.len() as u64 % size, 0);
    }

    #[test]
    fn subdominant_differences_are_positive_root_sums(kind in prop::sample::select(RootType::ALL.to_vec()), raw in prop::collection::vec(0i64..=5, 3)) {
        let rs = RootSystem::get(kind);
        let lambda = Weight::new(&raw[..kind.rank()]);
        for (mu, _) in subdominant_weights(rs, &lambda).unwrap() {
            let coeffs = rs.root_difference(&lambda, &mu).expect("subdominant weight");
            prop_assert!(coeffs.iter().all(|&c| c >= 0));
        }
    }

    #[test]
    fn central_character_is_additive(kind in prop::sample::select(vec![RootType::A2, RootType::A3, RootType::C2]), a in prop::collection::vec(0i64..=20, 3), b in prop::collection::vec(0i64..=20, 3)) {
        let r = kind.rank();
        let sum: Vec<i64> = a[..r].iter().zip(&b[..r]).map(|(x, y)| x + y).collect();
        let modulus = match kind {
            RootType::A2 => 3,
            RootType::A3 => 4,
            _ => 2,
        };
        let ca = central_character(kind, &Weight::new(&a[..r])).unwrap();
        let cb = central_character(kind, &Weight::new(&b[..r])).unwrap();
        prop_assert_eq!(central_character(kind, &Weight::new(&sum)).unwrap(), (ca + cb) % modulus);
    }

    #[test]
    fn spin_degrees_are_bounded(n in 1u64..=60, pick in any::<prop::sample::Index>()) {
        let all = strict_partitions(n);
        let lambda = pick.get(&all);
        let d = spin_degree(lambda).unwrap();
        let m = lambda.m() as u64;
        let mut ceiling = exactnum::factorial(n) << ((n - m) / 2);
        for &p in lambda.parts() {
            ceiling /= exactnum::factorial(p);
        }
        prop_assert!(!d.is_zero() && d <= ceiling);
    }
}

#[test]
fn zsigmondy_sets() {
    for q in PrimePower::up_to(20) {
        for e in 3..=30u64 {
            let set = zsigmondy_primes(e, &q).unwrap();
            if (e, q.value()) == (6, 2) {
                assert!(set.is_empty());
                continue;
            }
            assert!(!set.is_empty(), "e = {e}, q = {q}");
            for r in &set {
                assert!(*r >= BigUint::from(e + 1));
                assert!((r % e).is_one());
                assert_eq!(mult_order(&q.big(), r).unwrap(), BigUint::from(e));
            }
        }
    }
    assert!(zsigmondy_primes(2, &PrimePower::new(3).unwrap()).is_err());
}

#[test]
fn centre_is_gcd_of_first_two_tori() {
    let classical = Family::ALL.iter().filter(|f| f.is_classical());
    for &family in classical {
        for rank in 2..=12 {
            for q in prime_powers(16) {
                let Some(s) = spec(family, rank, q) else {
                    continue;
                };
                let entries = torus_entries(&s).unwrap();
                if entries.len() < 2 {
                    continue;
                }
                let g = entries[0].order.gcd(&entries[1].order);
                assert_eq!(g, BigUint::from(center_order(&s)), "{s}");
            }
        }
    }
}

#[test]
fn generic_sylow_bound_holds_beyond_the_weyl_primes() {
    let scan = crosschar::residual_scan(12, 5).unwrap();
    for point in &scan.points {
        let crosschar::Outcome::Checked { generic } = &point.outcome else {
            continue;
        };
        let sound = BigUint::from(generic.generic_sylow_lb) <= generic.sylow_order;
        if point.p > point.spec.lie_rank() as u64 {
            assert!(sound, "{} p = {}", point.spec, point.p);
        }
        if generic.pass_generic && sound {
            assert!(generic.pass_exact, "{} p = {}", point.spec, point.p);
        }
    }
}

#[test]
fn cyclic_points_are_filtered() {
    let s = spec(Family::C, 6, 2).unwrap();
    for point in crosschar::scan_group(&s) {
        let cyclic = sylow_cyclic(&s, point.p).unwrap();
        assert_eq!(
            matches!(point.outcome, crosschar::Outcome::SkippedCyclic),
            cyclic,
            "p = {}",
            point.p
        );
    }
}

#[test]
fn strict_partitions_are_strict() {
    for n in 1..=30 {
        for lambda in strict_partitions(n) {
            assert_eq!(lambda.n(), n);
            assert!(StrictPartition::new(lambda.parts()).is_ok());
        }
    }
}
