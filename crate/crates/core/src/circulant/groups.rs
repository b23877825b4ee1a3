use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::pow;

use crate::abelian::{structure_from_torsion_counts, AbelianGroup};
use crate::arith::{gcd, is_prime, prime_power};
use crate::closed_form::CosetSystem;
use crate::error::{Error, Result};
use crate::linalg::{smith_group, IntMatrix};

/// `n = p^k m` with `gcd(m, p) = 1`.
fn split(n: u64, p: u64) -> (u32, u64) {
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (k, m)
}

fn coprime_cosets(m: u64, q: u64) -> Result<CosetSystem> {
    let (p, _) = prime_power(q)?;
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    if m.is_multiple_of(p) {
        return Err(Error::NotCoprime { a: q as i64, b: m });
    }
    CosetSystem::new(m, q as i64)
}

fn q_pow_minus_one(q: u64, e: u64) -> BigUint {
    pow(BigUint::from(q), e as usize) - 1u32
}

/// `C'(m, q)` for `gcd(m, q) = 1`: one `Z_{q^o(v) - 1}` per nonzero
/// cyclotomic coset of `q` modulo `m`.
pub fn circulant_group_coprime(m: u64, q: u64) -> Result<AbelianGroup> {
    let c = coprime_cosets(m, q)?;
    AbelianGroup::from_cyclic_orders(
        c.representatives()
            .into_iter()
            .map(|v| q_pow_minus_one(q, c.orbit_size(v))),
    )
}

/// The exponents `r_v = (q^o(v) - 1) / (m / gcd(m, v))` for which the image
/// of `x` in `F_{q^o(v)}` is `beta_v^{r_v}`, keyed by representative.
pub fn circulant_exponents(m: u64, q: u64) -> Result<Vec<(u64, BigUint)>> {
    let c = coprime_cosets(m, q)?;
    Ok(c.representatives()
        .into_iter()
        .map(|v| (v, q_pow_minus_one(q, c.orbit_size(v)) / (m / gcd(m, v))))
        .collect())
}

/// `C'(m, q) / <x>` for `gcd(m, q) = 1`, from the presentation with
/// generators `beta_v` of order `q^o(v) - 1` and the single relation
/// `prod beta_v^{r_v} = 1`.
pub fn circulant_quotient_coprime(m: u64, q: u64) -> Result<AbelianGroup> {
    let c = coprime_cosets(m, q)?;
    let exps = circulant_exponents(m, q)?;
    let size = exps.len();
    let mut rel = IntMatrix::zeros(size + 1, size);
    for (j, (v, r)) in exps.iter().enumerate() {
        rel[(j, j)] = BigInt::from(q_pow_minus_one(q, c.orbit_size(*v)));
        rel[(size, j)] = BigInt::from(r.clone());
    }
    Ok(smith_group(&rel).torsion)
}

/// Sylow-p tower of `C'(p^k m, p)`:
/// `(+)_{i=0}^{k-2} Z_{p^{k-1-i}}^{p^i (p-1)^2 m} (+) Z_{p^k}^{(p-1)m - top_drop}`.
fn prime_tower(k: u32, m: u64, p: u64, top_drop: u64) -> Result<AbelianGroup> {
    let mut g = AbelianGroup::trivial();
    if k == 0 {
        return Ok(g);
    }
    for i in 0..k.saturating_sub(1) {
        let order = pow(BigUint::from(p), (k - 1 - i) as usize);
        let count = p.pow(i) * (p - 1) * (p - 1) * m;
        g = g.direct_sum(&AbelianGroup::power_of_cyclic(order, count)?);
    }
    let top = pow(BigUint::from(p), k as usize);
    g = g.direct_sum(&AbelianGroup::power_of_cyclic(top, (p - 1) * m - top_drop)?);
    Ok(g)
}

/// `C'(n, p)` for a prime `p` and any `n`, from the Sylow-p tower plus the
/// coprime part `C'(m, p)`.
pub fn circulant_star_group_prime(n: u64, p: u64) -> Result<AbelianGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (k, m) = split(n, p);
    Ok(prime_tower(k, m, p, 0)?.direct_sum(&circulant_group_coprime(m, p)?))
}

/// `C'(n, p) / <x>` for a prime `p`: the tower with one top summand
/// removed, plus `C'(m, p) / <x>`.
pub fn circulant_quotient_prime(n: u64, p: u64) -> Result<AbelianGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (k, m) = split(n, p);
    let drop = u64::from(k > 0);
    Ok(prime_tower(k, m, p, drop)?.direct_sum(&circulant_quotient_coprime(m, p)?))
}

/// `N_i = #{u in C'(n, q) : u^{p^i} = 1} = q^{n - m p^{max(0, k - i)}}` for
/// `i = 0..=max_i`, where `q = p^r` and `n = p^k m`. The p-power map is a
/// ring endomorphism, so `u^{p^i} = 1` exactly when `(x^m - 1)^{p^{k-i}}`
/// divides `u - 1`.
pub fn p_torsion_counts(n: u64, q: u64, max_i: u32) -> Result<Vec<BigUint>> {
    let (p, _) = prime_power(q)?;
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let (k, m) = split(n, p);
    Ok((0..=max_i)
        .map(|i| {
            let fixed = m * p.pow(k.saturating_sub(i));
            pow(BigUint::from(q), (n - fixed) as usize)
        })
        .collect())
}

/// Torsion counts of the Sylow-p part of `C'(n, q) / <x>`.
///
/// A coset `u <x>` has `p^i`-torsion when `u^{p^i} = x^j` for some `j`. The
/// image of `u -> u^{p^i}` consists of polynomials in `x^{p^i}`, so the
/// monomial `x^{m j}` generating part of the Sylow-p subgroup of `<x>` is a
/// `p^i`-th power exactly when `gcd(p^i, n)` divides `j`. Each such power has
/// `N_i` preimages, hence `Q_i = N_i p^{k - min(i, k)} / p^k = N_i / gcd(p^i, n)`.
pub fn quotient_p_torsion_counts(n: u64, q: u64, max_i: u32) -> Result<Vec<BigUint>> {
    let (p, _) = prime_power(q)?;
    let counts = p_torsion_counts(n, q, max_i)?;
    let (k, _) = split(n, p);
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| c / p.pow((i as u32).min(k)))
        .collect())
}

/// `C'(n, q)` for any prime power `q`: the Sylow-p part rebuilt from
/// [`p_torsion_counts`] plus `C'(m, q)`.
pub fn circulant_star_group(n: u64, q: u64) -> Result<AbelianGroup> {
    let (p, _) = prime_power(q)?;
    let (k, m) = split(n, p);
    let sylow = structure_from_torsion_counts(p, &p_torsion_counts(n, q, k + 1)?)?;
    Ok(sylow.direct_sum(&circulant_group_coprime(m, q)?))
}

/// `C'(n, q) / <x>` for any prime power `q`.
pub fn circulant_quotient(n: u64, q: u64) -> Result<AbelianGroup> {
    let (p, _) = prime_power(q)?;
    let (k, m) = split(n, p);
    let sylow = structure_from_torsion_counts(p, &quotient_p_torsion_counts(n, q, k + 1)?)?;
    Ok(sylow.direct_sum(&circulant_quotient_coprime(m, q)?))
}

/// `C(n, q) = C'(n, q) (+) F_q^*`.
pub fn circulant_full_group(n: u64, q: u64) -> Result<AbelianGroup> {
    let mut g = circulant_star_group(n, q)?;
    g.push_cyclic(BigUint::from(q - 1))?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(orders.iter().copied()).unwrap()
    }

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn coprime_groups() {
        assert_eq!(circulant_group_coprime(3, 2).unwrap(), g(&[3]));
        assert_eq!(circulant_group_coprime(4, 3).unwrap(), g(&[8, 2]));
        assert!(circulant_group_coprime(1, 7).unwrap().is_trivial());
        assert!(matches!(circulant_group_coprime(4, 2), Err(Error::NotCoprime { .. })));
        assert!(matches!(circulant_group_coprime(3, 6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn coprime_quotients() {
        assert!(circulant_quotient_coprime(3, 2).unwrap().is_trivial());
        assert_eq!(circulant_quotient_coprime(4, 3).unwrap(), g(&[4]));
        let r = circulant_exponents(4, 3).unwrap();
        assert_eq!(r, vec![(1, BigUint::from(2u32)), (2, BigUint::from(1u32))]);
    }

    #[test]
    fn prime_towers() {
        assert_eq!(circulant_star_group_prime(4, 2).unwrap(), g(&[2, 4]));
        assert_eq!(circulant_star_group_prime(3, 2).unwrap(), g(&[3]));
        assert_eq!(circulant_star_group_prime(9, 3).unwrap(), g(&[3, 3, 3, 3, 9, 9]));
        assert_eq!(circulant_quotient_prime(4, 2).unwrap(), g(&[2]));
        assert!(circulant_quotient_prime(3, 2).unwrap().is_trivial());
        assert_eq!(circulant_quotient_prime(9, 3).unwrap(), g(&[3, 3, 3, 3, 9]));
        assert_eq!(
            circulant_quotient_prime(9, 3).unwrap(),
            crate::closed_form::sandpile_group(9, 3).unwrap()
        );
        assert_eq!(circulant_star_group_prime(4, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn torsion_counts() {
        assert_eq!(
            p_torsion_counts(9, 9, 3).unwrap(),
            big(&[1, 3u64.pow(12), 3u64.pow(16), 3u64.pow(16)])
        );
        assert_eq!(p_torsion_counts(4, 2, 3).unwrap(), big(&[1, 4, 8, 8]));
        assert_eq!(p_torsion_counts(5, 7, 2).unwrap(), big(&[1, 1, 1]));
        assert_eq!(p_torsion_counts(4, 6, 2), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn general_forms_agree_with_prime_forms() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=64u64 {
                assert_eq!(circulant_star_group(n, p).unwrap(), circulant_star_group_prime(n, p).unwrap());
                assert_eq!(circulant_quotient(n, p).unwrap(), circulant_quotient_prime(n, p).unwrap());
            }
        }
    }

    #[test]
    fn full_group_order() {
        let c = circulant_full_group(6, 4).unwrap();
        assert_eq!(c.order(), circulant_star_group(6, 4).unwrap().order() * 3u32);
    }
}
