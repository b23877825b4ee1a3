use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::ring::{CirculantRing, GcdScratch};
use crate::abelian::{structure_from_torsion_counts, AbelianGroup};
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Default limit on the number `q^n` of ring elements enumerated.
pub const DEFAULT_BRUTE_CAP: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// Unit group of `F_q[x] / (x^n - 1)` by exhaustive enumeration: `C(n, q)`,
/// or `C'(n, q)` when `restricted`, optionally modulo `<x>`. The structure
/// is read off from torsion counts for every prime dividing the order.
pub fn unit_group_brute(
    n: u64,
    q: u64,
    restricted: bool,
    modulo_x: bool,
    cap: u64,
) -> Result<AbelianGroup> {
    let ring = CirculantRing::new(n, q)?;
    let size = ring.size();
    if size > cap as u128 {
        return Err(Error::EnumerationCap { size, cap });
    }
    let Enumeration { units, position } = enumerate_units(&ring, restricted);
    let order = units.len() as u64;
    let n_len = ring.n();

    let x_powers = {
        let mut marks = vec![false; units.len()];
        let mut c = vec![0u8; n_len];
        c[0] = 1;
        let x = ring.x();
        let mut next = vec![0u8; n_len];
        for _ in 0..n {
            marks[position[encode(&c, q) as usize] as usize] = true;
            ring.mul_into(&c, x.coefficients(), &mut next);
            core::mem::swap(&mut c, &mut next);
        }
        marks
    };
    let target = if modulo_x {
        if !order.is_multiple_of(n) {
            return Err(Error::Internal("<x> does not divide the unit group"));
        }
        order / n
    } else {
        order
    };
    let identity = position[1];

    let mut group = AbelianGroup::trivial();
    for (l, e) in factorize(target) {
        if e == 1 {
            group.push_cyclic(BigUint::from(l))?;
            continue;
        }
        let power = power_map(&ring, &units, &position, l);
        let mut cur: Vec<u32> = (0..units.len() as u32).collect();
        let mut counts = Vec::with_capacity(e as usize + 2);
        for i in 0..=e + 1 {
            if i > 0 {
                for c in cur.iter_mut() {
                    *c = power[*c as usize];
                }
            }
            let hits = if modulo_x {
                cur.iter().filter(|&&c| x_powers[c as usize]).count() as u64 / n
            } else {
                cur.iter().filter(|&&c| c == identity).count() as u64
            };
            counts.push(BigUint::from(hits));
        }
        group = group.direct_sum(&structure_from_torsion_counts(l, &counts)?);
    }
    Ok(group)
}

struct Enumeration {
    /// Ring indices of the units, ascending.
    units: Vec<u32>,
    /// Ring index to position in `units`, or `NONE`.
    position: Vec<u32>,
}

fn encode(c: &[u8], q: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * q + d as u64)
}

fn decode(mut idx: u64, q: u64, out: &mut [u8]) {
    for d in out.iter_mut() {
        *d = (idx % q) as u8;
        idx /= q;
    }
}

fn enumerate_units(ring: &CirculantRing, restricted: bool) -> Enumeration {
    let q = ring.field().order();
    let size = ring.size() as usize;
    let mut position = vec![NONE; size];
    let mut units = Vec::new();
    let mut scratch = GcdScratch::default();
    let mut c = vec![0u8; ring.n()];
    for idx in 0..size {
        if idx > 0 {
            // odometer increment
            for d in c.iter_mut() {
                *d += 1;
                if *d as u64 == q {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        if restricted && ring.value_at_one(&c) != 1 {
            continue;
        }
        if ring.is_unit_slice(&c, &mut scratch) {
            position[idx] = units.len() as u32;
            units.push(idx as u32);
        }
    }
    Enumeration { units, position }
}

/// Position of `u^l` for every unit `u`.
fn power_map(ring: &CirculantRing, units: &[u32], position: &[u32], l: u64) -> Vec<u32> {
    let q = ring.field().order();
    let n = ring.n();
    let mut base = vec![0u8; n];
    let mut acc = vec![0u8; n];
    let mut tmp = vec![0u8; n];
    units
        .iter()
        .map(|&idx| {
            decode(idx as u64, q, &mut base);
            acc.fill(0);
            acc[0] = 1;
            let mut e = l;
            while e > 0 {
                if e & 1 == 1 {
                    ring.mul_into(&acc, &base, &mut tmp);
                    core::mem::swap(&mut acc, &mut tmp);
                }
                e >>= 1;
                if e > 0 {
                    ring.mul_into(&base, &base, &mut tmp);
                    core::mem::swap(&mut base, &mut tmp);
                }
            }
            position[encode(&acc, q) as usize]
        })
        .collect()
}
