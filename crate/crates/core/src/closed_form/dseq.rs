use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, residue};
use crate::error::{Error, Result};

/// The chain `n_0 = n > n_1 > ... > n_k = n_{k+1}` with
/// `n_{i+1} = n_i / gcd(n_i, |d|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSequence {
    d: i64,
    chain: Vec<u64>,
    divisors: Vec<u64>,
}

impl DSequence {
    pub fn new(n: u64, d: i64) -> Result<Self> {
        if d.unsigned_abs() < 2 {
            return Err(Error::DegenerateMultiplier { d });
        }
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        let abs_d = d.unsigned_abs();
        let mut chain = vec![n];
        let mut divisors = Vec::new();
        loop {
            let cur = *chain.last().unwrap();
            let g = gcd(cur, abs_d);
            divisors.push(g);
            chain.push(cur / g);
            if g == 1 {
                break;
            }
        }
        Ok(Self { d, chain, divisors })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.chain[0]
    }

    /// `n_0, ..., n_{k+1}`; the last two entries coincide.
    pub fn chain(&self) -> &[u64] {
        &self.chain
    }

    /// `d_0, ..., d_k` with `d_i = gcd(n_i, |d|)` and `d_k = 1`.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// First index with `d_k = 1`.
    pub fn k(&self) -> usize {
        self.divisors.len() - 1
    }

    /// `m = n_k`, coprime to `d`.
    pub fn m(&self) -> u64 {
        self.chain[self.k()]
    }

    /// `delta = d_0 ... d_{k-1} = n / m`.
    pub fn delta(&self) -> u64 {
        self.n() / self.m()
    }

    /// Exponent `n_i - 2 n_{i+1} + n_{i+2}` of `Z_{|d|^{i+1}}` in the kernel part.
    pub fn layer_multiplicity(&self, i: usize) -> u64 {
        let c = &self.chain;
        c[i] + c[i + 2] - 2 * c[i + 1]
    }
}

/// Tail length and period of `v` under `x -> d x` on `Z_n`: the values
/// `d^i v` are distinct for `i < tail + period` and `d^(tail + period) v = d^tail v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DType {
    pub tail: u64,
    pub period: u64,
}

/// The orbit `v, d v, d^2 v, ...` up to (excluding) the first repeat,
/// together with the d-type.
pub(crate) fn orbit_walk(v: u64, n: u64, d: i64) -> (Vec<u64>, DType) {
    let dm = residue(d, n);
    let mut seen: Vec<u64> = Vec::new();
    let mut x = v % n;
    loop {
        if let Some(pos) = seen.iter().position(|&y| y == x) {
            let dtype = DType {
                tail: pos as u64,
                period: (seen.len() - pos) as u64,
            };
            return (seen, dtype);
        }
        seen.push(x);
        x = ((x as u128 * dm as u128) % n as u128) as u64;
    }
}

pub fn d_type(v: u64, n: u64, d: i64) -> DType {
    orbit_walk(v, n, d).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        let s = DSequence::new(12, 2).unwrap();
        assert_eq!(s.chain(), &[12, 6, 3, 3]);
        assert_eq!((s.k(), s.m(), s.delta()), (2, 3, 4));

        let s = DSequence::new(5, 2).unwrap();
        assert_eq!(s.chain(), &[5, 5]);
        assert_eq!((s.k(), s.m(), s.delta()), (0, 5, 1));

        let s = DSequence::new(9, 9).unwrap();
        assert_eq!(s.chain(), &[9, 1, 1]);
        assert_eq!((s.k(), s.m(), s.delta()), (1, 1, 9));

        let s = DSequence::new(12, -2).unwrap();
        assert_eq!(s.chain(), &[12, 6, 3, 3]);
        assert_eq!(DSequence::new(7, 1), Err(Error::DegenerateMultiplier { d: 1 }));
        assert_eq!(DSequence::new(7, -1), Err(Error::DegenerateMultiplier { d: -1 }));
    }

    #[test]
    fn types() {
        assert_eq!(d_type(1, 4, 3), DType { tail: 0, period: 2 });
        assert_eq!(d_type(1, 12, 2), DType { tail: 2, period: 2 });
        assert_eq!(d_type(0, 7, 3), DType { tail: 0, period: 1 });
        assert_eq!(d_type(0, 1, -5), DType { tail: 0, period: 1 });
    }
}
