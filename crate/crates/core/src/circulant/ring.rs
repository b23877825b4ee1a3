use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::FiniteField;
use crate::error::{Error, Result};

/// `R = F_q[x] / (x^n - 1)`, the ring of `n x n` circulant matrices over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantRing {
    field: Arc<FiniteField>,
    n: usize,
}

/// `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` in a [`CirculantRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: CirculantRing,
    coeffs: Vec<u8>,
}

impl CirculantRing {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self {
            field: Arc::new(FiniteField::new(q)?),
            n: n as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `q^n`, the number of ring elements.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).saturating_pow(self.n as u32)
    }

    pub fn element(&self, coeffs: Vec<u8>) -> Result<RingElement> {
        if coeffs.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: coeffs.len(),
            });
        }
        let q = self.field.order();
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= q) {
            return Err(Error::CoefficientOutOfRange { value: c as u64, q });
        }
        Ok(RingElement {
            ring: self.clone(),
            coeffs,
        })
    }

    pub fn constant(&self, c: u8) -> Result<RingElement> {
        let mut coeffs = vec![0u8; self.n];
        coeffs[0] = c;
        self.element(coeffs)
    }

    pub fn one(&self) -> RingElement {
        self.constant(1).expect("1 is a field element")
    }

    /// The generator `x`, the cyclic shift matrix.
    pub fn x(&self) -> RingElement {
        let mut coeffs = vec![0u8; self.n];
        coeffs[1 % self.n] = 1;
        RingElement {
            ring: self.clone(),
            coeffs,
        }
    }

    /// `out = a b` on raw coefficient slices of length `n`.
    pub(crate) fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let f = &*self.field;
        let n = self.n;
        out.fill(0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mut k = i;
            for &y in b {
                if y != 0 {
                    out[k] = f.add(out[k], f.mul(x, y));
                }
                k += 1;
                if k == n {
                    k = 0;
                }
            }
        }
    }

    /// `c(1)` for a raw coefficient slice.
    pub(crate) fn value_at_one(&self, c: &[u8]) -> u8 {
        c.iter().fold(0, |acc, &x| self.field.add(acc, x))
    }

    /// Whether `gcd(c(x), x^n - 1) = 1`, by the Euclidean algorithm.
    pub(crate) fn is_unit_slice(&self, c: &[u8], scratch: &mut GcdScratch) -> bool {
        let f = &*self.field;
        let a = &mut scratch.a;
        let b = &mut scratch.b;
        a.clear();
        a.resize(self.n + 1, 0);
        a[0] = f.neg(1);
        a[self.n] = 1;
        b.clear();
        b.extend_from_slice(c);
        trim(b);
        if b.is_empty() {
            return false;
        }
        loop {
            if b.is_empty() {
                return a.len() == 1;
            }
            rem_in_place(f, a, b);
            core::mem::swap(a, b);
        }
    }
}

/// Reusable buffers for [`CirculantRing::is_unit_slice`].
#[derive(Debug, Default)]
pub(crate) struct GcdScratch {
    a: Vec<u8>,
    b: Vec<u8>,
}

fn trim(p: &mut Vec<u8>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// `a = a mod b` for nonzero, trimmed `b`.
fn rem_in_place(f: &FiniteField, a: &mut Vec<u8>, b: &[u8]) {
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    trim(a);
    while a.len() > db {
        let top = a.len() - 1;
        let c = f.mul(a[top], lead_inv);
        let shift = top - db;
        for (k, &bk) in b.iter().enumerate() {
            a[shift + k] = f.sub(a[shift + k], f.mul(c, bk));
        }
        trim(a);
    }
}

impl RingElement {
    pub fn ring(&self) -> &CirculantRing {
        &self.ring
    }

    pub fn coefficients(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        let mut out = vec![0u8; self.ring.n];
        self.ring.mul_into(&self.coeffs, &other.coeffs, &mut out);
        RingElement {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// `c(1)`, the eigenvalue on the all-ones vector.
    pub fn value_at_one(&self) -> u8 {
        self.ring.value_at_one(&self.coeffs)
    }

    pub fn is_unit(&self) -> bool {
        self.ring
            .is_unit_slice(&self.coeffs, &mut GcdScratch::default())
    }

    /// Membership in `C'(n, q)`: a unit with `c(1) = 1`.
    pub fn is_restricted_unit(&self) -> bool {
        self.value_at_one() == 1 && self.is_unit()
    }
}

pub fn is_unit(c: &RingElement) -> bool {
    c.is_unit()
}

pub fn is_restricted_unit(c: &RingElement) -> bool {
    c.is_restricted_unit()
}
