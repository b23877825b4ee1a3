//! Dense arbitrary-precision integer matrices, Smith normal form,
//! determinants, and Smith groups.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, x) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    /// Builds a matrix from rows of equal length. The column count of an empty
    /// row list is zero.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows reordered so that row `i` of the result is row `perm[i]` here.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &src) in perm.iter().enumerate() {
            for j in 0..self.cols {
                out[(i, j)] = self[(src, j)].clone();
            }
        }
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &src) in perm.iter().enumerate() {
                out[(i, j)] = self[(i, src)].clone();
            }
        }
        out
    }

    /// Deletes row `k` and column `k` of a square matrix.
    pub fn delete_row_col(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if k >= self.rows {
            return Err(Error::VertexOutOfRange {
                vertex: k,
                n: self.rows,
            });
        }
        let n = self.rows - 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in (0..self.rows).filter(|&i| i != k) {
            for j in (0..self.cols).filter(|&j| j != k) {
                entries.push(self[(i, j)].clone());
            }
        }
        Ok(Self {
            rows: n,
            cols: n,
            entries,
        })
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Smith normal form `P * M * Q = diag(s_1, ..., s_r, 0, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
    /// Unimodular `(P, Q)` when requested.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    /// The full diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let diag: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .map(|s| BigInt::from(s.clone()))
            .collect();
        IntMatrix::diagonal(rows, cols, &diag)
    }
}

/// Scalar used by the elimination. Every operation reports overflow with
/// `None`, so a machine-width pass can fall back to arbitrary precision.
trait Scalar: Clone + PartialEq + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn below_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn checked_neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn checked_div(&self, other: &Self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn below_zero(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        i128::checked_div(*self, *other)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn divides(&self, other: &Self) -> bool {
        // self != 0
        other.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn below_zero(&self) -> bool {
        self.sign() == Sign::Minus
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    p: Option<Vec<T>>,
    q: Option<Vec<T>>,
}

impl<T: Scalar> Work<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
        if let Some(p) = self.p.as_mut() {
            for j in 0..self.rows {
                p.swap(i * self.rows + j, k * self.rows + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
        if let Some(q) = self.q.as_mut() {
            let n = self.cols;
            for i in 0..n {
                q.swap(i * n + j, i * n + k);
            }
        }
    }

    /// row_i -= factor * row_t, touching columns `from..` of the working matrix.
    fn row_sub(&mut self, i: usize, t: usize, factor: &T, from: usize) -> Option<()> {
        let c = self.cols;
        for j in from..c {
            let src = &self.a[t * c + j];
            if src.is_nil() {
                continue;
            }
            let v = self.a[i * c + j].sub_mul(factor, src)?;
            self.a[i * c + j] = v;
        }
        if let Some(p) = self.p.as_mut() {
            let r = self.rows;
            for j in 0..r {
                let src = &p[t * r + j];
                if src.is_nil() {
                    continue;
                }
                let v = p[i * r + j].sub_mul(factor, src)?;
                p[i * r + j] = v;
            }
        }
        Some(())
    }

    /// col_j -= factor * col_t over rows `from..`.
    fn col_sub(&mut self, j: usize, t: usize, factor: &T, from: usize) -> Option<()> {
        let c = self.cols;
        for i in from..self.rows {
            let src = &self.a[i * c + t];
            if src.is_nil() {
                continue;
            }
            let v = self.a[i * c + j].sub_mul(factor, src)?;
            self.a[i * c + j] = v;
        }
        if let Some(q) = self.q.as_mut() {
            for i in 0..c {
                let src = &q[i * c + t];
                if src.is_nil() {
                    continue;
                }
                let v = q[i * c + j].sub_mul(factor, src)?;
                q[i * c + j] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            self.a[t * c + j] = self.a[t * c + j].checked_neg()?;
        }
        if let Some(p) = self.p.as_mut() {
            let r = self.rows;
            for j in 0..r {
                p[t * r + j] = p[t * r + j].checked_neg()?;
            }
        }
        Some(())
    }

    fn add_row(&mut self, t: usize, i: usize) -> Option<()> {
        let minus_one = T::unit().checked_neg()?;
        self.row_sub(t, i, &minus_one, 0)
    }

    /// Position of the nonzero entry of least magnitude in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_nil() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if x.cmp_abs(self.at(bi, bj)) != Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn eliminate(mut self) -> Option<(Vec<T>, usize, Option<Vec<T>>, Option<Vec<T>>)> {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.at(i, t).is_nil() {
                        continue;
                    }
                    let factor = self.at(i, t).checked_div(&pivot)?;
                    if !factor.is_nil() {
                        self.row_sub(i, t, &factor, t)?;
                    }
                    clean &= self.at(i, t).is_nil();
                }
                for j in t + 1..self.cols {
                    if self.at(t, j).is_nil() {
                        continue;
                    }
                    let factor = self.at(t, j).checked_div(&pivot)?;
                    if !factor.is_nil() {
                        self.col_sub(j, t, &factor, t)?;
                    }
                    clean &= self.at(t, j).is_nil();
                }
                if !clean {
                    // a remainder smaller than the pivot survived; promote it
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let x = self.at(i, t);
                        if !x.is_nil() && x.cmp_abs(self.at(best.0, best.1)) == Ordering::Less {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.at(t, j);
                        if !x.is_nil() && x.cmp_abs(self.at(best.0, best.1)) == Ordering::Less {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // pivot must divide the whole trailing block
                let mut offender = None;
                'scan: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        let x = self.at(i, j);
                        if !x.is_nil() && !pivot.divides(x) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i)?,
                    None => break,
                }
            }
            if self.at(t, t).below_zero() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Some((self.a, t, self.p, self.q))
    }
}

fn identity_vec<T: Scalar>(n: usize) -> Vec<T> {
    let mut v = vec![T::nil(); n * n];
    for i in 0..n {
        v[i * n + i] = T::unit();
    }
    v
}

fn run_snf<T: Scalar>(m: &IntMatrix, want_transforms: bool) -> Option<SnfResult> {
    let a = m
        .entries
        .iter()
        .map(T::from_big)
        .collect::<Option<Vec<T>>>()?;
    let work = Work {
        rows: m.rows,
        cols: m.cols,
        a,
        p: want_transforms.then(|| identity_vec(m.rows)),
        q: want_transforms.then(|| identity_vec(m.cols)),
    };
    let (a, rank, p, q) = work.eliminate()?;
    let invariant_factors = (0..rank)
        .map(|t| a[t * m.cols + t].to_big().to_biguint().unwrap())
        .collect();
    let to_matrix = |n: usize, v: Vec<T>| IntMatrix {
        rows: n,
        cols: n,
        entries: v.iter().map(T::to_big).collect(),
    };
    let transforms = match (p, q) {
        (Some(p), Some(q)) => Some((to_matrix(m.rows, p), to_matrix(m.cols, q))),
        _ => None,
    };
    Some(SnfResult {
        invariant_factors,
        rank,
        transforms,
    })
}

/// Smith normal form by minimal-pivot elimination.
///
/// Runs in `i128` first and restarts in arbitrary precision if any
/// intermediate value overflows, so the result is always exact.
pub fn smith_normal_form(m: &IntMatrix, want_transforms: bool) -> SnfResult {
    run_snf::<i128>(m, want_transforms)
        .or_else(|| run_snf::<BigInt>(m, want_transforms))
        .expect("arbitrary-precision elimination cannot overflow")
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.entries.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    Ok(sign * &a[n * n - 1])
}

/// The Smith group `Z^cols / Z^rows M` split into free rank and torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithGroup {
    pub free_rank: usize,
    pub torsion: AbelianGroup,
}

pub fn smith_group(m: &IntMatrix) -> SmithGroup {
    let snf = smith_normal_form(m, false);
    SmithGroup {
        free_rank: m.cols - snf.rank,
        torsion: AbelianGroup::from_cyclic_orders(snf.invariant_factors)
            .expect("invariant factors are positive"),
    }
}

/// Absolute value of an integer as a natural number.
pub(crate) fn magnitude(x: &BigInt) -> BigUint {
    x.abs().to_biguint().unwrap_or_default()
}

/// `gcd` over a slice of integers, used by determinantal-divisor checks.
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn factors(snf: &SnfResult) -> Vec<u64> {
        snf.invariant_factors
            .iter()
            .map(|s| s.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn two_by_two() {
        let snf = smith_normal_form(&m(&[&[2, 4], &[4, 2]]), true);
        assert_eq!(factors(&snf), vec![2, 6]);
        let (p, q) = snf.transforms.clone().unwrap();
        let d = p.mul(&m(&[&[2, 4], &[4, 2]])).unwrap().mul(&q).unwrap();
        assert_eq!(d, snf.diagonal_matrix(2, 2));
    }

    #[test]
    fn identity_and_degenerate_shapes() {
        assert_eq!(factors(&smith_normal_form(&IntMatrix::identity(3), false)), vec![1, 1, 1]);
        let empty = smith_normal_form(&IntMatrix::zeros(0, 0), true);
        assert_eq!(empty.rank, 0);
        let wide = smith_normal_form(&IntMatrix::zeros(2, 3), false);
        assert_eq!(wide.rank, 0);
        let g = smith_group(&IntMatrix::zeros(2, 3));
        assert_eq!(g.free_rank, 3);
        assert!(g.torsion.is_trivial());
        let zero_rows = smith_group(&IntMatrix::zeros(0, 4));
        assert_eq!(zero_rows.free_rank, 4);
    }

    #[test]
    fn smith_group_of_diagonal() {
        let g = smith_group(&m(&[&[1, 0], &[0, 6]]));
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, AbelianGroup::cyclic(6u32).unwrap());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, -1], &[-1, 2]])), Ok(BigInt::from(3)));
        assert_eq!(determinant(&IntMatrix::zeros(2, 2)), Ok(BigInt::zero()));
        assert_eq!(
            determinant(&m(&[&[2, -1, -1], &[-1, 2, 0], &[0, -1, 1]])),
            Ok(BigInt::from(2))
        );
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]])),
            Ok(BigInt::from(-1))
        );
        assert!(matches!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn overflowing_entries_fall_back_to_big_integers() {
        let big: BigInt = BigInt::from(1u8) << 100;
        let a = IntMatrix::new(
            2,
            2,
            vec![big.clone(), BigInt::from(3), BigInt::from(5), big.clone()],
        )
        .unwrap();
        let snf = smith_normal_form(&a, true);
        let det = determinant(&a).unwrap();
        let product: BigUint = snf.invariant_factors.iter().product();
        assert_eq!(product, magnitude(&det));
        let (p, q) = snf.transforms.unwrap();
        assert_eq!(p.mul(&a).unwrap().mul(&q).unwrap(), {
            let d: Vec<BigInt> = snf.invariant_factors.iter().cloned().map(BigInt::from).collect();
            IntMatrix::diagonal(2, 2, &d)
        });
    }
}
