//! Small number theory: valuations, factorization of machine integers,
//! multiplicative orders, and exact powers of signed multipliers.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Splits a prime power `q = p^r` into `(p, r)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, r)] => Ok((*p, *r)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

/// The p-adic valuation `nu_p(x)`, the exponent of the largest power of `p`
/// dividing `x`.
pub fn nu_p(x: i64, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut x = x.unsigned_abs();
    let mut e = 0;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    Ok(e)
}

/// `nu_p` for arbitrary-precision integers.
pub fn nu_p_big(x: &BigInt, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigUint::from(p);
    let mut x = x.magnitude().clone();
    let mut e = 0;
    loop {
        let (quot, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(e);
        }
        x = quot;
        e += 1;
    }
}

/// `pi_p(x)`: the largest power of `p` dividing `x` (`x > 0`).
pub fn pi_p(mut x: u64, p: u64) -> u64 {
    debug_assert!(x > 0 && p >= 2);
    let mut out = 1;
    while x.is_multiple_of(p) {
        x /= p;
        out *= p;
    }
    out
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `0..m`.
pub fn residue(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `d` modulo `modulus`: the least `e > 0` with
/// `d^e = 1 (mod modulus)`.
pub fn multiplicative_order(d: i64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::InvalidOrder);
    }
    if modulus == 1 {
        return Ok(1);
    }
    let base = residue(d, modulus);
    if gcd(base, modulus) != 1 {
        return Err(Error::NotCoprime { a: d, b: modulus });
    }
    let mut order = totient(modulus);
    for (p, _) in factorize(order) {
        while order.is_multiple_of(p) && pow_mod(base, order / p, modulus) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Exact `d^e` for a signed base.
pub fn signed_pow(d: i64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(d), e as usize)
}

/// `|d^e - 1|`, the order of the cyclic pieces in the closed forms.
pub fn abs_pow_minus_one(d: i64, e: u64) -> BigUint {
    (signed_pow(d, e) - BigInt::one()).abs().to_biguint().unwrap()
}

/// Modular inverse of `a` modulo `m` for coprime `a`, `m`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let ext = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}
