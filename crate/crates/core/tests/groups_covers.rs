use galcover::covers::{
    artin_schreier_genus, class_count_bound, count_invariant_covers_with, minimal_genus,
    ramification_filtration, ramification_jump_series_check, rh_genus_from_filtration,
    unramified_cover_genus, CoverParameters,
};
use galcover::group_theory::{
    canonical_group, element_order, has_coprime_quotient, minimal_rank, quasi_p_check,
    SemidirectDescriptor,
};
use galcover::matrix_fp::EnumerationMode;
use galcover::prime_field::{is_prime, ord_mod, Prime};
use num_bigint::BigUint;
use proptest::prelude::*;

fn pr(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

fn small_groups() -> Vec<SemidirectDescriptor> {
    let mut out = Vec::new();
    for p in primes_up_to(13) {
        for l in primes_up_to(7).into_iter().filter(|&l| l != p) {
            for b in 1..=4 {
                let g = canonical_group(pr(l), b, pr(p)).unwrap();
                if g.order() <= 2000 {
                    out.push(g);
                }
            }
        }
    }
    out
}

#[test]
fn group_axioms_on_small_groups() {
    for g in small_groups() {
        let n = g.order() as usize;
        let e = g.identity();
        // sample a grid of triples; exhaustive associativity is cubic
        let step = (n / 23).max(1);
        for i in (0..n).step_by(step) {
            let x = g.element_at(i);
            assert_eq!(g.index_of(&x), i);
            assert_eq!(g.mul(&x, &e), x);
            assert_eq!(g.mul(&e, &x), x);
            assert_eq!(g.mul(&x, &g.inverse(&x)), e);
            let ord = element_order(&x, &g);
            assert_eq!(g.pow(&x, ord), e);
            assert_eq!((g.order() as u64) % ord, 0);
            for j in (0..n).step_by(step * 3 + 1) {
                let y = g.element_at(j);
                for k in (0..n).step_by(step * 5 + 2) {
                    let z = g.element_at(k);
                    assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
                }
            }
        }
    }
}

#[test]
fn canonical_groups_of_rank_a_are_quasi_p() {
    for p in primes_up_to(23) {
        for l in primes_up_to(23).into_iter().filter(|&l| l != p) {
            let a = ord_mod(pr(l), pr(p)).unwrap();
            let order = (l as u128).pow(a as u32) * p as u128;
            if order > 100_000 {
                continue;
            }
            assert_eq!(minimal_rank(pr(l), pr(p)).unwrap(), a as usize);
            let g = canonical_group(pr(l), a as usize, pr(p)).unwrap();
            assert!(!g.is_direct_product());
            assert_eq!(
                g.action().pow(p).unwrap(),
                galcover::matrix_fp::MatrixFp::identity(a as usize, pr(l))
            );
            let r = quasi_p_check(&g, order).unwrap();
            assert!(r.is_quasi_p, "(Z/{l})^{a} x| Z/{p}");
            assert_eq!(r.closure_size, order);
        }
    }
}

#[test]
fn direct_products_are_not_quasi_p() {
    for p in primes_up_to(13) {
        for l in primes_up_to(7).into_iter().filter(|&l| l != p) {
            for b in 1..=3 {
                let g = SemidirectDescriptor::direct_product(pr(l), b, pr(p)).unwrap();
                if g.order() > 50_000 {
                    continue;
                }
                let r = quasi_p_check(&g, g.order()).unwrap();
                assert!(!r.is_quasi_p);
                assert_eq!(r.closure_size, p as u128);
            }
        }
    }
}

#[test]
fn quasi_p_iff_no_coprime_quotient() {
    for g in small_groups() {
        if g.order() > 600 {
            continue;
        }
        let q = quasi_p_check(&g, g.order()).unwrap();
        let c = has_coprime_quotient(&g, g.order()).unwrap();
        assert_eq!(
            q.is_quasi_p,
            !c,
            "l = {}, b = {}, p = {}",
            g.l(),
            g.rank(),
            g.p()
        );
    }
}

#[test]
fn genus_grid_matches_riemann_hurwitz() {
    for p in primes_up_to(23) {
        for s in 1..=11u64 {
            if s % p == 0 {
                assert!(artin_schreier_genus(pr(p), s).is_err());
                continue;
            }
            let g = artin_schreier_genus(pr(p), s).unwrap();
            assert_eq!(2 * g, (p - 1) * (s - 1));
            let f = ramification_filtration(pr(p), s).unwrap();
            assert_eq!(rh_genus_from_filtration(&f).unwrap(), g);
            assert_eq!(f.last_jump(), Some(s as i64));
        }
    }
}

#[test]
fn genus_is_monotone_in_s_and_p() {
    for p in primes_up_to(23) {
        let gs: Vec<u64> = (1..=11)
            .filter(|s| s % p != 0)
            .map(|s| artin_schreier_genus(pr(p), s).unwrap())
            .collect();
        assert!(gs.windows(2).all(|w| w[0] < w[1]));
    }
    for s in [2u64, 3, 5] {
        let gs: Vec<u64> = primes_up_to(23)
            .into_iter()
            .filter(|p| s % p != 0)
            .map(|p| artin_schreier_genus(pr(p), s).unwrap())
            .collect();
        assert!(gs.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn jump_grid() {
    for p in primes_up_to(13) {
        for s in primes_up_to(11).into_iter().filter(|&s| s != p) {
            for n in [s as usize + 2, 2 * s as usize + 3] {
                let j = ramification_jump_series_check(pr(p), s, n).unwrap();
                assert_eq!(j.valuation as u64, s + 1);
                // leading coefficient c satisfies s * c = -1
                assert_eq!(
                    (j.leading_coeff.value() * (s % p)) % p,
                    p - 1,
                    "p = {p}, s = {s}"
                );
            }
        }
    }
}

#[test]
fn minimal_genus_grid() {
    for p in primes_up_to(23) {
        for l in primes_up_to(13).into_iter().filter(|&l| l != p) {
            let a = ord_mod(pr(l), pr(p)).unwrap() as u32;
            let g = minimal_genus(pr(p), pr(l)).unwrap();
            let g_y = BigUint::from((p - 1) * (CoverParameters::minimal_s(pr(p)) - 1) / 2);
            assert_eq!(g, unramified_cover_genus(&g_y, pr(l), a).unwrap());
            if p == 2 {
                assert_eq!(g, BigUint::from(1u32));
            }
        }
    }
}

#[test]
fn class_count_bound_matches_brute_force_where_affordable() {
    for p in primes_up_to(13) {
        for l in primes_up_to(13).into_iter().filter(|&l| l != p) {
            let a = ord_mod(pr(l), pr(p)).unwrap() as u32;
            let n = (p - 1) * (CoverParameters::minimal_s(pr(p)) - 1);
            let params = CoverParameters::minimal(pr(p), pr(l)).unwrap();
            let bound = class_count_bound(pr(p), pr(l)).unwrap();
            let alg = count_invariant_covers_with(params, EnumerationMode::Algebraic, 10_000_000)
                .unwrap();
            assert_eq!(alg, bound, "p = {p}, l = {l}");
            let candidates =
                galcover::matrix_fp::gaussian_binomial(n as usize, a as usize, l as u128);
            if candidates <= 300_000 {
                let brute =
                    count_invariant_covers_with(params, EnumerationMode::BruteForce, candidates)
                        .unwrap();
                assert_eq!(brute, bound, "p = {p}, l = {l}");
            }
        }
    }
}

proptest! {
    #[test]
    fn unramified_genus_is_multiplicative(g in 1u64..1000, b in 0u32..6, l in prop::sample::select(vec![2u64, 3, 5, 7])) {
        // a tower of rank-1 steps has the same genus as one rank-b step
        let mut step = BigUint::from(g);
        for _ in 0..b {
            step = unramified_cover_genus(&step, pr(l), 1).unwrap();
        }
        prop_assert_eq!(step, unramified_cover_genus(&BigUint::from(g), pr(l), b).unwrap());
    }
}
