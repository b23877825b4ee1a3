use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::pow;

use super::cosets::CosetSystem;
use super::dseq::DSequence;
use crate::abelian::AbelianGroup;
use crate::arith::{abs_pow_minus_one, residue};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The parts of `Sigma(n, d)` and `S(n, d)` carried by the non-coprime
/// layers of the d-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelParts {
    pub sigma0: AbelianGroup,
    pub s0: AbelianGroup,
}

pub fn kernel_parts(n: u64, d: i64) -> Result<KernelParts> {
    let seq = DSequence::new(n, d)?;
    let abs_d = BigUint::from(d.unsigned_abs());
    let mut sigma0 = AbelianGroup::trivial();
    let mut s0 = AbelianGroup::trivial();
    for i in 0..seq.k() {
        let q: BigUint = pow(abs_d.clone(), i + 1);
        let mult = seq.layer_multiplicity(i);
        if mult == 0 {
            return Err(Error::Internal("empty kernel layer"));
        }
        sigma0 = sigma0.direct_sum(&AbelianGroup::power_of_cyclic(q.clone(), mult)?);
        s0.push_cyclic(&q / seq.divisors()[i])?;
        s0 = s0.direct_sum(&AbelianGroup::power_of_cyclic(q, mult - 1)?);
    }
    Ok(KernelParts { sigma0, s0 })
}

/// `Sigma(m, d)` for `gcd(m, d) = 1`: one `Z_{|d^o(v) - 1|}` per orbit.
pub fn sand_dune_coprime(m: u64, d: i64) -> Result<AbelianGroup> {
    let cosets = CosetSystem::new(m, d)?;
    AbelianGroup::from_cyclic_orders(
        cosets
            .representatives()
            .into_iter()
            .map(|v| abs_pow_minus_one(d, cosets.orbit_size(v))),
    )
}

/// `S(m, d)` for `gcd(m, d) = 1`: one `Z_{|d^o(v) - 1| / c(v)}` per orbit.
pub fn sandpile_coprime(m: u64, d: i64) -> Result<AbelianGroup> {
    let cosets = CosetSystem::new(m, d)?;
    let mut orders = Vec::new();
    for v in cosets.representatives() {
        orders.push(abs_pow_minus_one(d, cosets.orbit_size(v)) / cosets.c_value(v)?);
    }
    AbelianGroup::from_cyclic_orders(orders)
}

/// The sand dune group `Sigma(n, d)`: of `DB(n, d)` for `d >= 2`, of
/// `Ktz(n, |d|)` for `d <= -2`.
pub fn sand_dune_group(n: u64, d: i64) -> Result<AbelianGroup> {
    let seq = DSequence::new(n, d)?;
    let parts = kernel_parts(n, d)?;
    Ok(parts.sigma0.direct_sum(&sand_dune_coprime(seq.m(), d)?))
}

/// The sandpile group `S(n, d)` from the closed form.
pub fn sandpile_group(n: u64, d: i64) -> Result<AbelianGroup> {
    let seq = DSequence::new(n, d)?;
    let parts = kernel_parts(n, d)?;
    Ok(parts.s0.direct_sum(&sandpile_coprime(seq.m(), d)?))
}

/// The `(n-1) x (n-1)` matrix whose row `v` expresses `eps_v = d e_v - e_{dv}`
/// in the basis `e_1, ..., e_{n-1}`.
pub fn sigma_relation_matrix(n: u64, d: i64) -> Result<IntMatrix> {
    if d.unsigned_abs() < 2 {
        return Err(Error::DegenerateMultiplier { d });
    }
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let size = (n - 1) as usize;
    let mut mat = IntMatrix::zeros(size, size);
    let dm = residue(d, n);
    for v in 1..n {
        let row = (v - 1) as usize;
        mat[(row, row)] += BigInt::from(d);
        let w = ((v as u128 * dm as u128) % n as u128) as u64;
        if w != 0 {
            mat[(row, (w - 1) as usize)] -= 1;
        }
    }
    Ok(mat)
}
