use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use sandpile_core::arith::{abs_pow_minus_one, gcd, multiplicative_order, nu_p_big, signed_pow};
use sandpile_core::closed_form::*;
use sandpile_core::{smith_group, AbelianGroup, Digraph};

fn family(n: u64, d: i64) -> Digraph {
    if d > 0 {
        Digraph::de_bruijn(n, d as u64).unwrap()
    } else {
        Digraph::kautz(n, d.unsigned_abs()).unwrap()
    }
}

#[test]
fn closed_forms_match_snf_on_small_grid() {
    for n in 2..=30u64 {
        for d in [-5i64, -4, -3, -2, 2, 3, 4, 5] {
            let g = family(n, d);
            let s = sandpile_group(n, d).unwrap();
            assert_eq!(s, g.sandpile_group_snf(0).unwrap(), "S({n},{d})");
            let sigma = sand_dune_group(n, d).unwrap();
            let rel = smith_group(&sigma_relation_matrix(n, d).unwrap());
            assert_eq!(rel.free_rank, 0);
            assert_eq!(sigma, rel.torsion, "Sigma({n},{d})");
            assert_eq!(sigma.order(), s.order() * BigUint::from(n));
        }
    }
}

#[test]
fn order_recursion() {
    for n in 1..=60u64 {
        for d in [-8i64, -6, -3, -2, 2, 3, 6, 8] {
            let n1 = n / gcd(n, d.unsigned_abs());
            let lhs = sand_dune_group(n, d).unwrap().order();
            let factor: BigUint = num_traits::pow(BigUint::from(d.unsigned_abs()), (n - n1) as usize);
            assert_eq!(lhs, factor * sand_dune_group(n1, d).unwrap().order());
        }
    }
}

#[test]
fn crt_split() {
    for n in 1..=60u64 {
        for d in [-6i64, -4, -2, 2, 4, 6, 8] {
            let m = d_sequence(n, d).unwrap().m();
            let k = kernel_parts(n, d).unwrap();
            assert_eq!(
                sand_dune_group(n, d).unwrap(),
                k.sigma0.direct_sum(&sand_dune_group(m, d).unwrap())
            );
            assert_eq!(
                sandpile_group(n, d).unwrap(),
                k.s0.direct_sum(&sandpile_group(m, d).unwrap())
            );
        }
    }
}

#[test]
fn coprime_coset_formula() {
    for m in 1..=60u64 {
        for d in [-7i64, -5, -3, -2, 2, 3, 5, 7] {
            if gcd(m, d.unsigned_abs()) != 1 {
                continue;
            }
            let c = cyclotomic_cosets(m, d).unwrap();
            let orders = c
                .orbits()
                .iter()
                .map(|o| abs_pow_minus_one(d, o.len() as u64));
            assert_eq!(
                sand_dune_group(m, d).unwrap(),
                AbelianGroup::from_cyclic_orders(orders).unwrap()
            );
        }
    }
}

/// `|d^f (d^e - 1)|`, or `|d|^f` when the cycle reached is `{0}`.
fn e_v_order_from_type(v: u64, n: u64, d: i64) -> BigUint {
    let t = d_type(v, n, d);
    let abs_d = BigUint::from(d.unsigned_abs());
    let tail: BigUint = num_traits::pow(abs_d, t.tail as usize);
    let mut x = v;
    let dm = d.rem_euclid(n as i64) as u64;
    for _ in 0..t.tail {
        x = x * dm % n;
    }
    if x == 0 {
        tail
    } else {
        tail * abs_pow_minus_one(d, t.period)
    }
}

#[test]
fn basis_element_orders_agree_with_types() {
    for n in 2..=40u64 {
        for d in [-6i64, -3, -2, 2, 3, 4, 6] {
            for v in 1..n {
                assert_eq!(
                    element_order_in_sigma(v, n, d).unwrap(),
                    e_v_order_from_type(v, n, d),
                    "e_{v} in Sigma({n},{d})"
                );
            }
        }
    }
}

#[test]
fn order_gap_bound() {
    for m in 2..=60u64 {
        for d in (-8i64..=8).filter(|d| d.abs() >= 2) {
            if gcd(m, d.unsigned_abs()) != 1 {
                continue;
            }
            let c = cyclotomic_cosets(m, d).unwrap();
            let exceptional = d.rem_euclid(4) == 3;
            for pd in c.primes() {
                let top = if pd.p == 2 && exceptional {
                    pd.nu.saturating_sub(1)
                } else {
                    pd.nu
                };
                let base = nu_p_big(&(signed_pow(d, c.orbit_size(pd.cofactor)) - 1), pd.p).unwrap();
                for t in 1..top {
                    let v = pd.p.pow(t) * pd.cofactor;
                    let here = nu_p_big(&(signed_pow(d, c.orbit_size(v)) - 1), pd.p).unwrap();
                    assert!(base - here <= t, "m={m} d={d} p={} t={t}", pd.p);
                }
            }
        }
    }
}

#[test]
fn orbit_sizes_are_orders_modulo_quotients() {
    for m in 2..=60u64 {
        for d in [-5i64, -2, 2, 3, 7] {
            if gcd(m, d.unsigned_abs()) != 1 {
                continue;
            }
            let c = cyclotomic_cosets(m, d).unwrap();
            for v in 1..m {
                let modulus = m / gcd(m, v);
                assert_eq!(c.orbit_size(v), multiplicative_order(d, modulus).unwrap());
            }
        }
    }
}

#[test]
fn generators_of_small_coprime_sandpiles() {
    for m in 1..=40u64 {
        for d in [-8i64, -5, -3, -2, 2, 3, 5, 7] {
            if gcd(m, d.unsigned_abs()) != 1 {
                continue;
            }
            let gens = sandpile_generators(m, d).unwrap();
            let mut product = BigUint::one();
            for (v, g) in &gens {
                assert!(membership_in_sandpile(&g.element), "m={m} d={d} v={v}");
                assert_eq!(g.element.order(), g.claimed_order, "m={m} d={d} v={v}");
                product *= &g.claimed_order;
            }
            assert_eq!(product, sandpile_group(m, d).unwrap().order());
        }
    }
}

proptest! {
    #[test]
    fn membership_matches_weight(n in 2u64..30, d in prop_oneof![-6i64..=-2, 2i64..=6],
                                 coeffs in proptest::collection::vec(-20i64..20, 29)) {
        let mut a = SigmaElement::zero(n, d);
        let mut weight = 0i64;
        for v in 1..n {
            let c = coeffs[(v - 1) as usize];
            a.add_term(v, c);
            weight += c * v as i64;
        }
        prop_assert_eq!(membership_in_sandpile(&a), weight.rem_euclid(n as i64) == 0);
    }

    #[test]
    fn orders_divide_the_group_exponent(n in 2u64..25, d in prop_oneof![-5i64..=-2, 2i64..=5],
                                        coeffs in proptest::collection::vec(-9i64..9, 24)) {
        let mut a = SigmaElement::zero(n, d);
        for v in 1..n {
            a.add_term(v, coeffs[(v - 1) as usize]);
        }
        let exp = sand_dune_group(n, d).unwrap().exponent();
        let ord = a.order();
        prop_assert!((&exp % &ord).is_zero());
        prop_assert!(ord.to_u64().is_none_or(|o| o >= 1));
    }
}
