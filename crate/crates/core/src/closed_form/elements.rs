use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::cosets::CosetSystem;
use super::dseq::orbit_walk;
use crate::arith::{abs_pow_minus_one, inverse_mod, pi_p, signed_pow};
use crate::error::{Error, Result};
use crate::linalg::magnitude;

/// An element `sum a_v e_v` of the sand dune group `Sigma(n, d)`, where
/// `e_v = x^v - 1`. Index 0 is never stored since `e_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaElement {
    n: u64,
    d: i64,
    coeffs: Vec<BigInt>,
}

impl SigmaElement {
    pub fn zero(n: u64, d: i64) -> Self {
        Self {
            n,
            d,
            coeffs: vec![BigInt::zero(); n.saturating_sub(1) as usize],
        }
    }

    /// `e_v`, with `v` read modulo `n`.
    pub fn basis(n: u64, d: i64, v: u64) -> Self {
        let mut a = Self::zero(n, d);
        a.add_term(v, BigInt::one());
        a
    }

    pub fn from_coefficients(n: u64, d: i64, coeffs: Vec<BigInt>) -> Result<Self> {
        let expected = n.saturating_sub(1) as usize;
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { n, d, coeffs })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `a_1, ..., a_{n-1}`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, v: u64) -> BigInt {
        let v = v % self.n;
        if v == 0 {
            BigInt::zero()
        } else {
            self.coeffs[v as usize - 1].clone()
        }
    }

    /// Adds `c e_v`; terms on `e_0` vanish.
    pub fn add_term(&mut self, v: u64, c: impl Into<BigInt>) {
        let v = v % self.n;
        if v != 0 {
            self.coeffs[v as usize - 1] += c.into();
        }
    }

    pub fn is_zero_vector(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coordinates in the basis `eps_w = d e_w - e_{dw}` of `Q[x] mod x^n - 1`,
    /// obtained by expanding every `e_v` along its orbit under `x -> d x`.
    pub fn epsilon_coordinates(&self) -> BTreeMap<u64, BigRational> {
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        let d = BigInt::from(self.d);
        for (idx, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = idx as u64 + 1;
            let (walk, ty) = orbit_walk(v, self.n, self.d);
            let mut dpow = BigInt::one();
            for &w in &walk[..ty.tail as usize] {
                dpow *= &d;
                add_coord(&mut out, w, BigRational::new(a.clone(), dpow.clone()));
            }
            let df = signed_pow(self.d, ty.tail);
            let denom = df * (signed_pow(self.d, ty.period) - BigInt::one());
            let mut dj = BigInt::one();
            for &w in &walk[ty.tail as usize..] {
                add_coord(&mut out, w, BigRational::new(a * &dj, denom.clone()));
                dj *= &d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Order in `Sigma(n, d)`: the least common multiple of the denominators
    /// of the epsilon coordinates.
    pub fn order(&self) -> BigUint {
        self.epsilon_coordinates()
            .values()
            .fold(BigUint::one(), |acc, c| acc.lcm(&magnitude(c.denom())))
    }

    /// Whether the element lies in the sandpile subgroup: `sum v a_v = 0 (mod n)`.
    pub fn is_in_sandpile(&self) -> bool {
        let n = BigInt::from(self.n);
        let weight: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigInt::from(i as u64 + 1))
            .sum();
        weight.mod_floor(&n).is_zero()
    }
}

fn add_coord(out: &mut BTreeMap<u64, BigRational>, w: u64, c: BigRational) {
    if w == 0 {
        return;
    }
    *out.entry(w).or_insert_with(BigRational::zero) += c;
}

pub fn membership_in_sandpile(a: &SigmaElement) -> bool {
    a.is_in_sandpile()
}

/// Order of `e_v` in `Sigma(n, d)`.
pub fn element_order_in_sigma(v: u64, n: u64, d: i64) -> Result<BigUint> {
    if d.unsigned_abs() < 2 {
        return Err(Error::DegenerateMultiplier { d });
    }
    if v == 0 || v >= n {
        return Err(Error::VertexOutOfRange {
            vertex: v as usize,
            n: n as usize,
        });
    }
    Ok(SigmaElement::basis(n, d, v).order())
}

/// A modified generator of `S(m, d)` together with the order the closed
/// form assigns to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub element: SigmaElement,
    pub claimed_order: BigUint,
}

/// The generators `e~_v`, `v` in `V`, of `S(m, d)` for `gcd(m, d) = 1`.
pub fn sandpile_generators(m: u64, d: i64) -> Result<BTreeMap<u64, Generator>> {
    if d.unsigned_abs() < 2 {
        return Err(Error::DegenerateMultiplier { d });
    }
    let cosets = CosetSystem::new(m, d)?;
    let distinguished = cosets.distinguished();
    let exceptional = cosets.two_exceptional();
    let mut out = BTreeMap::new();

    for v in cosets.representatives() {
        let mut el = SigmaElement::basis(m, d, v);
        if !distinguished.contains(&v) {
            for pd in cosets.primes() {
                let eta = inverse_mod(pd.cofactor % pd.pi, pd.pi)
                    .ok_or(Error::Internal("cofactor not invertible"))?;
                let pv = pi_p(v, pd.p);
                let lambda = eta as u128 * (v / pv) as u128;
                let target = (pv as u128 * pd.cofactor as u128 % m as u128) as u64;
                el.add_term(target, -BigInt::from(lambda));
            }
        }
        let claimed_order = abs_pow_minus_one(d, cosets.orbit_size(v)) / cosets.c_value(v)?;
        out.insert(
            v,
            Generator {
                element: el,
                claimed_order,
            },
        );
    }

    for pd in cosets.primes() {
        let special = pd.p == 2 && exceptional;
        let mp = pd.cofactor;
        let top = if special { pd.nu - 1 } else { pd.nu };
        for t in 1..top {
            let v = pd.p.pow(t) * mp;
            let lambda = lambda_pt(&cosets, pd.p, t)?;
            let mut el = SigmaElement::basis(m, d, v);
            el.add_term(mp, -lambda);
            out.get_mut(&v).ok_or(Error::Internal("missing V* element"))?.element = el;
        }
        let base = if special {
            let half = m / 2;
            let mut el = SigmaElement::basis(m, d, half);
            el.add_term(mp, -BigInt::from(pd.pi / 2));
            let mut top_el = SigmaElement::zero(m, d);
            top_el.add_term(half, 2);
            out.get_mut(&half)
                .ok_or(Error::Internal("missing m/2"))?
                .element = top_el;
            el
        } else {
            let mut el = SigmaElement::zero(m, d);
            el.add_term(mp, BigInt::from(pd.pi));
            el
        };
        out.get_mut(&mp).ok_or(Error::Internal("missing M_p"))?.element = base;
    }
    Ok(out)
}

/// `lambda_{p,t} = R mu` with `R = (d^o(M_p) - 1) / (d^o(p^t M_p) - 1)` and
/// `lambda = p^t (mod pi_p(m))`.
fn lambda_pt(cosets: &CosetSystem, p: u64, t: u32) -> Result<BigInt> {
    let pd = cosets
        .primes()
        .iter()
        .find(|pd| pd.p == p)
        .ok_or(Error::Internal("prime does not divide m"))?;
    let d = cosets.multiplier();
    let o_base = cosets.orbit_size(pd.cofactor);
    let o_t = cosets.orbit_size(p.pow(t) * pd.cofactor);
    let r = (signed_pow(d, o_base) - BigInt::one()) / (signed_pow(d, o_t) - BigInt::one());
    let modulus = BigInt::from(pd.pi);
    let r_mod = r.mod_floor(&modulus).to_u64().unwrap_or(0);
    let goal = p.pow(t) % pd.pi;
    for mu in 0..pd.pi {
        if (r_mod as u128 * mu as u128 % pd.pi as u128) as u64 == goal {
            return Ok(r * BigInt::from(mu));
        }
    }
    Err(Error::NoLambda { p, t })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(n: u64, d: i64, terms: &[(u64, i64)]) -> SigmaElement {
        let mut a = SigmaElement::zero(n, d);
        for &(v, c) in terms {
            a.add_term(v, c);
        }
        a
    }

    #[test]
    fn membership() {
        assert!(membership_in_sandpile(&elem(4, 3, &[(1, 1), (3, 1)])));
        assert!(!membership_in_sandpile(&elem(4, 3, &[(1, 1), (3, -1)])));
        assert!(membership_in_sandpile(&elem(4, 3, &[(2, 1), (1, -2)])));
    }

    #[test]
    fn basis_orders() {
        assert_eq!(element_order_in_sigma(1, 4, 3).unwrap(), BigUint::from(8u32));
        assert_eq!(element_order_in_sigma(1, 12, 2).unwrap(), BigUint::from(12u32));
        assert_eq!(element_order_in_sigma(2, 4, 3).unwrap(), BigUint::from(2u32));
        // 1 -> 2 -> 0 in Z_4: the cycle is {0}, leaving only the tail
        assert_eq!(element_order_in_sigma(1, 4, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(element_order_in_sigma(0, 4, 2), Err(Error::VertexOutOfRange { vertex: 0, n: 4 }));
    }

    #[test]
    fn zero_has_order_one() {
        assert_eq!(SigmaElement::zero(6, 5).order(), BigUint::one());
        assert_eq!(elem(4, 3, &[(2, 2)]).order(), BigUint::one());
    }

    #[test]
    fn generators_mod_four() {
        let g = sandpile_generators(4, 3).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[&1].element, elem(4, 3, &[(2, 1), (1, -2)]));
        assert_eq!(g[&1].claimed_order, BigUint::from(4u32));
        assert_eq!(g[&2].element, elem(4, 3, &[(2, 2)]));
        assert_eq!(g[&2].claimed_order, BigUint::one());
        for gen in g.values() {
            assert_eq!(gen.element.order(), gen.claimed_order);
        }
    }

    #[test]
    fn generators_mod_three() {
        let g = sandpile_generators(3, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&1].element, elem(3, 2, &[(1, 3)]));
        assert_eq!(g[&1].claimed_order, BigUint::one());
    }

    #[test]
    fn generators_need_coprime() {
        assert!(matches!(sandpile_generators(6, 2), Err(Error::NotCoprime { .. })));
    }
}
