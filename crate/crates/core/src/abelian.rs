//! Finite abelian groups in canonical invariant-factor form.
//!
//! A group is stored as its divisor chain `s_1 | s_2 | ... | s_r` with every
//! `s_i >= 2`. Adding a cyclic summand uses the gcd/lcm merge
//! `Z_m + Z_n = Z_gcd(m,n) + Z_lcm(m,n)` extended along the chain, so no
//! factorization of the (often several hundred bit) orders is needed. The
//! prime-power view is derived per prime on demand.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroup {
    factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(order: impl Into<BigUint>) -> Result<Self> {
        let mut g = Self::trivial();
        g.push_cyclic(order.into())?;
        Ok(g)
    }

    /// Canonical form of the direct sum of cyclic groups of the given
    /// orders. Orders equal to 1 contribute nothing.
    pub fn from_cyclic_orders<I, T>(orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut g = Self::trivial();
        for order in orders {
            g.push_cyclic(order.into())?;
        }
        Ok(g)
    }

    /// `Z_m^count` as a group.
    pub fn power_of_cyclic(order: impl Into<BigUint>, count: u64) -> Result<Self> {
        let order = order.into();
        let mut g = Self::trivial();
        for _ in 0..count {
            g.push_cyclic(order.clone())?;
        }
        Ok(g)
    }

    /// Appends a cyclic summand `Z_m`: with chain `s_1 | ... | s_r` the new
    /// chain is `(s_1, m), (s_2, [s_1, m]), ..., (s_r, [s_{r-1}, m]), [s_r, m]`,
    /// dropping a leading 1.
    pub fn push_cyclic(&mut self, m: BigUint) -> Result<()> {
        if m.is_zero() {
            return Err(Error::InvalidOrder);
        }
        if m.is_one() {
            return Ok(());
        }
        let mut merged = Vec::with_capacity(self.factors.len() + 1);
        let mut carry = m;
        for s in &self.factors {
            merged.push(s.gcd(&carry));
            carry = s.lcm(&carry);
        }
        merged.push(carry);
        if merged[0].is_one() {
            merged.remove(0);
        }
        self.factors = merged;
        Ok(())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let (mut big, small) = if self.factors.len() >= other.factors.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for s in &small.factors {
            big.push_cyclic(s.clone())
                .expect("invariant factors are at least 2");
        }
        big
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.factors
    }

    /// Number of cyclic factors in the invariant-factor decomposition.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().product()
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self == other
    }

    /// Exponent of the group (its largest invariant factor).
    pub fn exponent(&self) -> BigUint {
        self.factors.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// Exponents `j` of the cyclic summands `Z_{p^j}` of the Sylow p-subgroup,
    /// ascending.
    pub fn sylow_exponents(&self, p: u64) -> Vec<u32> {
        let p = BigUint::from(p);
        self.factors
            .iter()
            .map(|s| valuation(s, &p))
            .filter(|&e| e > 0)
            .collect()
    }

    pub fn sylow(&self, p: u64) -> AbelianGroup {
        let pb = BigUint::from(p);
        AbelianGroup::from_cyclic_orders(
            self.sylow_exponents(p)
                .into_iter()
                .map(|e| num_traits::pow(pb.clone(), e as usize)),
        )
        .expect("prime powers are positive")
    }

    /// The part of the group of order coprime to `p`.
    pub fn remove_prime(&self, p: u64) -> AbelianGroup {
        let pb = BigUint::from(p);
        AbelianGroup::from_cyclic_orders(self.factors.iter().map(|s| {
            let e = valuation(s, &pb);
            s / num_traits::pow(pb.clone(), e as usize)
        }))
        .expect("cofactors are positive")
    }

    /// `N_i = #{g : p^i g = 0}` for `i = 0..=max_i`.
    pub fn torsion_counts(&self, p: u64, max_i: u32) -> Vec<BigUint> {
        let exps = self.sylow_exponents(p);
        let pb = BigUint::from(p);
        (0..=max_i)
            .map(|i| {
                let total: u64 = exps.iter().map(|&e| e.min(i) as u64).sum();
                num_traits::pow(pb.clone(), total as usize)
            })
            .collect()
    }

    /// Primary decomposition: prime to the ascending exponents of its cyclic
    /// summands. Factors the invariant factors, so it is only practical when
    /// they split into primes below about 2^40 plus at most one large prime.
    pub fn prime_powers(&self) -> Result<BTreeMap<BigUint, Vec<u32>>> {
        let mut out: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for s in &self.factors {
            for (p, e) in factor_biguint(s)? {
                out.entry(p).or_default().push(e);
            }
        }
        for exps in out.values_mut() {
            exps.sort_unstable();
        }
        Ok(out)
    }
}

/// Reconstructs the abelian p-group with `N_i = #{g : p^i g = 0}` equal to
/// `counts[i]`. The number of cyclic summands of exponent at least `i` is
/// `log_p(N_i / N_{i-1})`.
pub fn structure_from_torsion_counts(p: u64, counts: &[BigUint]) -> Result<AbelianGroup> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bad = |msg: alloc::string::String| Err(Error::InconsistentTorsionCounts(msg));
    if counts.first().map(|c| c.is_one()) != Some(true) {
        return bad("N_0 must be 1".into());
    }
    if counts.len() < 2 || counts[counts.len() - 1] != counts[counts.len() - 2] {
        return bad("counts have not stabilized".into());
    }
    let pb = BigUint::from(p);
    // at_least[i - 1] = number of cyclic summands of exponent >= i
    let mut at_least: Vec<u64> = Vec::new();
    for i in 1..counts.len() {
        let (ratio, rem) = counts[i].div_rem(&counts[i - 1]);
        if !rem.is_zero() || ratio.is_zero() {
            return bad(format!("N_{} does not divide N_{}", i - 1, i));
        }
        let k = valuation(&ratio, &pb);
        if num_traits::pow(pb.clone(), k as usize) != ratio {
            return bad(format!("N_{i}/N_{} is not a power of {p}", i - 1));
        }
        if let Some(&prev) = at_least.last() {
            if (k as u64) > prev {
                return bad(format!(
                    "step {i} adds {k} summands after only {prev} at step {}",
                    i - 1
                ));
            }
        }
        at_least.push(k as u64);
    }
    let mut g = AbelianGroup::trivial();
    for (idx, &count) in at_least.iter().enumerate() {
        let next = at_least.get(idx + 1).copied().unwrap_or(0);
        let order = num_traits::pow(pb.clone(), idx + 1);
        for _ in 0..(count - next) {
            g.push_cyclic(order.clone())?;
        }
    }
    Ok(g)
}

fn valuation(s: &BigUint, p: &BigUint) -> u32 {
    let mut s = s.clone();
    let mut e = 0;
    loop {
        let (q, r) = s.div_rem(p);
        if !r.is_zero() || s.is_zero() {
            return e;
        }
        s = q;
        e += 1;
    }
}

fn factor_biguint(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < 1 << 20 {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let e = valuation(&rest, &pb);
        if e > 0 {
            rest /= num_traits::pow(pb.clone(), e as usize);
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    if rest.to_u64().is_some() || is_probable_prime(&rest) {
        // either below 2^40 after trial division to 2^20, or prime
        out.push((rest, 1));
        return Ok(out);
    }
    Err(Error::Internal("prime-power view needs a composite factor above 2^40"))
}

fn is_probable_prime(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        // group equal consecutive factors as powers
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "Z_{}", self.factors[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}
