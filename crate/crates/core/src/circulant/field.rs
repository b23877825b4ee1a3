use alloc::vec;
use alloc::vec::Vec;

use crate::arith::prime_power;
use crate::error::{Error, Result};

/// `F_q` for `q = p^r <= 256`, realised as `F_p[t] / (f)` with `f` the
/// lexicographically least monic irreducible of degree `r`. Elements are
/// the integers `0..q`, read as base-`p` coefficient vectors of polynomials
/// in `t` (least significant digit = constant term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: u32,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if q > 256 {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, r) = prime_power(q)?;
        let modulus = least_irreducible(p as u8, r as usize);
        let qs = q as usize;
        let digits: Vec<Vec<u8>> = (0..qs).map(|a| to_digits(a, p as usize, r as usize)).collect();
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u8> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| ((*x as u64 + *y as u64) % p) as u8)
                    .collect();
                add[a * qs + b] = from_digits(&s, p as usize) as u8;
                let prod = poly_mul_mod(&digits[a], &digits[b], &modulus, p as u8);
                mul[a * qs + b] = from_digits(&prod, p as usize) as u8;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8
                }
            })
            .collect();
        Ok(Self {
            p,
            r,
            q: qs,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero element; `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

fn to_digits(mut a: usize, p: usize, r: usize) -> Vec<u8> {
    let mut out = vec![0u8; r];
    for d in out.iter_mut() {
        *d = (a % p) as u8;
        a /= p;
    }
    out
}

fn from_digits(ds: &[u8], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

/// Product modulo the monic `modulus` over `F_p`.
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u8) -> Vec<u8> {
    let r = modulus.len() - 1;
    let p16 = p as u16;
    let mut prod = vec![0u16; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p16;
        }
    }
    for deg in (r..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for k in 0..=r {
            let idx = deg - r + k;
            prod[idx] = (prod[idx] + (p16 - c) * modulus[k] as u16) % p16;
        }
    }
    prod.truncate(r);
    prod.resize(r, 0);
    prod.into_iter().map(|c| c as u8).collect()
}

/// Remainder of `a` modulo the monic `b` over `F_p`.
fn poly_rem(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    let p16 = p as u16;
    let mut rem: Vec<u16> = a.iter().map(|&c| c as u16).collect();
    let db = b.len() - 1;
    while rem.len() > db {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - db;
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                rem[shift + k] = (rem[shift + k] + (p16 - c) * bk as u16) % p16;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|c| c as u8).collect()
}

/// The `index`-th monic polynomial of degree `deg`, ordered lexicographically
/// from the leading coefficient down.
fn monic(deg: usize, p: u8, index: usize) -> Vec<u8> {
    let mut coeffs = vec![0u8; deg + 1];
    coeffs[deg] = 1;
    let mut x = index;
    for c in coeffs[..deg].iter_mut() {
        *c = (x % p as usize) as u8;
        x /= p as usize;
    }
    coeffs
}

fn least_irreducible(p: u8, r: usize) -> Vec<u8> {
    let count = (p as usize).pow(r as u32);
    (0..count)
        .map(|i| monic(r, p, i))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[u8], p: u8) -> bool {
    let r = f.len() - 1;
    for deg in 1..=r / 2 {
        for i in 0..(p as usize).pow(deg as u32) {
            let g = monic(deg, p, i);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
