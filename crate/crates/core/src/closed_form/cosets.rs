use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorize, gcd, residue};
use crate::error::{Error, Result};

/// `pi_p(m)`, `nu_p(m)` and `M_p = m / pi_p(m)` for a prime `p | m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeData {
    pub p: u64,
    pub nu: u32,
    pub pi: u64,
    pub cofactor: u64,
}

/// Orbits of `x -> d x` on `Z_m \ {0}` for `gcd(m, d) = 1`, each listed as
/// `v, d v, d^2 v, ...` from its least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSystem {
    m: u64,
    d: i64,
    orbits: Vec<Vec<u64>>,
    orbit_of: Vec<usize>,
    primes: Vec<PrimeData>,
}

impl CosetSystem {
    pub fn new(m: u64, d: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder);
        }
        let dm = residue(d, m);
        if gcd(dm, m) != 1 && m > 1 {
            return Err(Error::NotCoprime { a: d, b: m });
        }
        let mut orbit_of = vec![usize::MAX; m as usize];
        let mut orbits = Vec::new();
        for v in 1..m {
            if orbit_of[v as usize] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = v;
            while orbit_of[x as usize] == usize::MAX {
                orbit_of[x as usize] = orbits.len();
                orbit.push(x);
                x = ((x as u128 * dm as u128) % m as u128) as u64;
            }
            orbits.push(orbit);
        }
        let primes = factorize(m)
            .into_iter()
            .map(|(p, nu)| {
                let pi = p.pow(nu);
                PrimeData {
                    p,
                    nu,
                    pi,
                    cofactor: m / pi,
                }
            })
            .collect();
        Ok(Self {
            m,
            d,
            orbits,
            orbit_of,
            primes,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn multiplier(&self) -> i64 {
        self.d
    }

    pub fn orbits(&self) -> &[Vec<u64>] {
        &self.orbits
    }

    /// Least element of every nonzero orbit, ascending.
    pub fn representatives(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn is_representative(&self, v: u64) -> bool {
        v > 0 && v < self.m && self.orbit(v)[0] == v
    }

    /// The orbit containing `v` (`v` nonzero modulo `m`).
    pub fn orbit(&self, v: u64) -> &[u64] {
        &self.orbits[self.orbit_of[(v % self.m) as usize]]
    }

    /// `o(v)`, the size of the orbit of `v`.
    pub fn orbit_size(&self, v: u64) -> u64 {
        if v.is_multiple_of(self.m) {
            1
        } else {
            self.orbit(v).len() as u64
        }
    }

    pub fn primes(&self) -> &[PrimeData] {
        &self.primes
    }

    /// `V* = { p^i M_p : p | m, 0 <= i < nu_p(m) }`, ascending. These are
    /// divisors of `m` and hence least in their orbits.
    pub fn distinguished(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .primes
            .iter()
            .flat_map(|pd| (0..pd.nu).map(move |i| pd.p.pow(i) * pd.cofactor))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether `d = 3 (mod 4)` and `4 | m`, the case where the 2-part
    /// behaves differently. The congruence is taken on the signed `d`.
    pub fn two_exceptional(&self) -> bool {
        self.d.rem_euclid(4) == 3 && self.m.is_multiple_of(4)
    }

    /// The correction `c(v)` dividing `|d^o(v) - 1|` in the sandpile closed form.
    pub fn c_value(&self, v: u64) -> Result<u64> {
        if !self.is_representative(v) {
            return Err(Error::NotRepresentative { v, m: self.m });
        }
        let exceptional = self.two_exceptional();
        for pd in &self.primes {
            if v == pd.cofactor {
                return Ok(if pd.p == 2 && exceptional {
                    pd.pi / 2
                } else {
                    pd.pi
                });
            }
        }
        if exceptional && v == self.m / 2 {
            return Ok(2);
        }
        Ok(1)
    }
}

pub fn cyclotomic_cosets(m: u64, d: i64) -> Result<CosetSystem> {
    CosetSystem::new(m, d)
}

pub fn c_value(v: u64, m: u64, d: i64) -> Result<u64> {
    CosetSystem::new(m, d)?.c_value(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_mod_four_by_three() {
        let c = cyclotomic_cosets(4, 3).unwrap();
        assert_eq!(c.orbits(), &[vec![1, 3], vec![2]]);
        assert_eq!(c.representatives(), vec![1, 2]);
        assert_eq!(c.distinguished(), vec![1, 2]);
        assert_eq!(c.orbit_size(3), 2);
    }

    #[test]
    fn cosets_mod_three_by_two() {
        let c = cyclotomic_cosets(3, 2).unwrap();
        assert_eq!(c.orbits(), &[vec![1, 2]]);
        assert_eq!(c.distinguished(), vec![1]);
    }

    #[test]
    fn trivial_modulus() {
        let c = cyclotomic_cosets(1, 7).unwrap();
        assert!(c.orbits().is_empty());
        assert!(c.distinguished().is_empty());
    }

    #[test]
    fn coprimality_required() {
        assert!(matches!(
            cyclotomic_cosets(4, 2),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn c_table() {
        assert_eq!(c_value(1, 4, 3), Ok(2));
        assert_eq!(c_value(2, 4, 3), Ok(2));
        assert_eq!(c_value(1, 3, 2), Ok(3));
        // 4 does not divide 6: non-exceptional even for d = 3 (mod 4)
        assert_eq!(c_value(3, 6, 7), Ok(2));
        assert_eq!(c_value(2, 6, 7), Ok(3));
        assert_eq!(c_value(1, 6, 7), Ok(1));
        // d = 1 (mod 4) with 8 | m
        assert_eq!(c_value(1, 8, 5), Ok(8));
        assert_eq!(c_value(4, 8, 5), Ok(1));
        // signed convention: -5 = 3 (mod 4)
        assert_eq!(c_value(1, 8, -5), Ok(4));
        assert_eq!(c_value(4, 8, -5), Ok(2));
        assert_eq!(c_value(3, 4, 3), Err(Error::NotRepresentative { v: 3, m: 4 }));
    }

    #[test]
    fn distinguished_elements_are_representatives() {
        for m in 1..=60u64 {
            for d in [-8i64, -7, -5, -3, -2, 2, 3, 5, 7, 8] {
                let Ok(c) = cyclotomic_cosets(m, d) else { continue };
                let reps = c.representatives();
                for v in c.distinguished() {
                    assert!(reps.contains(&v), "m={m} d={d} v={v}");
                }
                let covered: usize = c.orbits().iter().map(Vec::len).sum();
                assert_eq!(covered as u64, m - 1);
            }
        }
    }
}
