//! Consecutive-d digraphs on `Z_n` (generalized de Bruijn and Kautz graphs),
//! their Laplacians, spanning-tree counts, and sandpile groups computed
//! through the Smith normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::abelian::AbelianGroup;
use crate::arith::residue;
use crate::error::{Error, Result};
use crate::linalg::{determinant, magnitude, smith_group, IntMatrix};

/// Multidigraph on `Z_n` stored as a dense multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    adjacency: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adjacency: vec![0; n * n],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        for v in [from, to] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        self.adjacency[from * self.n + to] += 1;
        Ok(())
    }

    /// `G(d, n, q, r)`: edges `v -> q v + r + i (mod n)` for `0 <= i < d`.
    /// Negative `q` and `r` are reduced modulo `n`.
    pub fn consecutive_d(d: u64, n: u64, q: i64, r: i64) -> Result<Self> {
        if n > 1 && residue(q, n) == 0 {
            return Err(Error::ZeroMultiplier { n });
        }
        Self::build(d, n, q, r)
    }

    fn build(d: u64, n: u64, q: i64, r: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexOutOfRange { vertex: 0, n: 0 });
        }
        let q = residue(q, n);
        let r = residue(r, n);
        let size = n as usize;
        let mut g = Self::empty(size);
        for v in 0..n {
            let base = ((q as u128 * v as u128 + r as u128) % n as u128) as u64;
            // d edges cycle through all residues d / n times, then the rest
            let full = d / n;
            let rest = d % n;
            let row = v as usize * size;
            if full > 0 {
                for w in &mut g.adjacency[row..row + size] {
                    *w += full;
                }
            }
            for i in 0..rest {
                let w = ((base + i) % n) as usize;
                g.adjacency[row + w] += 1;
            }
        }
        Ok(g)
    }

    /// `DB(n, d)`: edges `v -> d v + i`. Unlike the general constructor,
    /// `d = 0 (mod n)` is allowed.
    pub fn de_bruijn(n: u64, d: u64) -> Result<Self> {
        Self::build(d, n, d as i64, 0)
    }

    /// `Ktz(n, d)`: edges `v -> -d (v + 1) + i`.
    pub fn kautz(n: u64, d: u64) -> Result<Self> {
        Self::build(d, n, -(d as i64), -(d as i64))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> u64 {
        self.adjacency[from * self.n + to]
    }

    pub fn edge_count(&self) -> u64 {
        self.adjacency.iter().sum()
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.adjacency[v * self.n..(v + 1) * self.n].iter().sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        (0..self.n).map(|u| self.multiplicity(u, v)).sum()
    }

    pub fn is_eulerian(&self) -> bool {
        (0..self.n).all(|v| self.in_degree(v) == self.out_degree(v))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `D - A` with `D` the out-degree diagonal, or the reduced Laplacian
    /// with row and column `reduce_at` removed.
    pub fn laplacian(&self, reduce_at: Option<usize>) -> Result<IntMatrix> {
        if let Some(v) = reduce_at {
            self.check_vertex(v)?;
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for v in 0..n {
            let deg = self.out_degree(v);
            for w in 0..n {
                let a = self.multiplicity(v, w) as i128;
                let x = if v == w { deg as i128 - a } else { -a };
                entries.push(BigInt::from(x));
            }
        }
        let full = IntMatrix::new(n, n, entries)?;
        match reduce_at {
            Some(v) => full.delete_row_col(v),
            None => Ok(full),
        }
    }

    /// Number of spanning trees oriented towards `root`, by the matrix tree
    /// theorem.
    pub fn spanning_tree_count(&self, root: usize) -> Result<BigUint> {
        let reduced = self.laplacian(Some(root))?;
        Ok(magnitude(&determinant(&reduced)?))
    }

    /// Torsion of the Smith group of the reduced Laplacian at `root`.
    pub fn sandpile_group_snf(&self, root: usize) -> Result<AbelianGroup> {
        Ok(smith_group(&self.laplacian(Some(root))?).torsion)
    }

    /// Torsion of the Smith group of the full Laplacian.
    pub fn critical_group_snf(&self) -> AbelianGroup {
        smith_group(&self.laplacian(None).expect("no reduction requested")).torsion
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn lap(g: &Digraph, at: Option<usize>) -> Vec<Vec<i64>> {
        let m = g.laplacian(at).unwrap();
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn de_bruijn_edges() {
        let g = Digraph::de_bruijn(4, 2).unwrap();
        assert_eq!(g.multiplicity(1, 2), 1);
        assert_eq!(g.multiplicity(1, 3), 1);
        assert_eq!(g.out_degree(1), 2);
        assert_eq!(Digraph::de_bruijn(4, 3).unwrap().edge_count(), 12);
    }

    #[test]
    fn kautz_edges() {
        let k = Digraph::kautz(3, 2).unwrap();
        assert_eq!(k.multiplicity(0, 1), 1);
        assert_eq!(k.multiplicity(0, 2), 1);
        for v in 0..3 {
            for w in 0..3 {
                assert_eq!(k.multiplicity(v, w), u64::from(v != w));
            }
        }
    }

    #[test]
    fn wrapped_multi_edges() {
        let g = Digraph::consecutive_d(3, 2, 1, 0).unwrap();
        assert_eq!(g.multiplicity(0, 0), 2);
        assert_eq!(g.multiplicity(0, 1), 1);
        let single = Digraph::de_bruijn(1, 5).unwrap();
        assert_eq!(single.multiplicity(0, 0), 5);
        assert!(single.critical_group_snf().is_trivial());
    }

    #[test]
    fn zero_multiplier_rejected() {
        assert_eq!(
            Digraph::consecutive_d(2, 4, 8, 0),
            Err(Error::ZeroMultiplier { n: 4 })
        );
    }

    #[test]
    fn laplacians() {
        assert_eq!(
            lap(&Digraph::de_bruijn(2, 2).unwrap(), None),
            vec![vec![1, -1], vec![-1, 1]]
        );
        assert_eq!(
            lap(&Digraph::de_bruijn(4, 2).unwrap(), Some(0)),
            vec![vec![2, -1, -1], vec![-1, 2, 0], vec![0, -1, 1]]
        );
        assert!(matches!(
            Digraph::de_bruijn(4, 2).unwrap().laplacian(Some(4)),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn eulerian() {
        let mut g = Digraph::empty(2);
        g.add_edge(0, 1).unwrap();
        assert!(!g.is_eulerian());
        assert!(Digraph::de_bruijn(6, 4).unwrap().is_eulerian());
        assert!(Digraph::kautz(7, 3).unwrap().is_eulerian());
    }

    #[test]
    fn spanning_trees() {
        let count = |g: Digraph| g.spanning_tree_count(0).unwrap().to_u64().unwrap();
        assert_eq!(count(Digraph::de_bruijn(4, 2).unwrap()), 2);
        assert_eq!(count(Digraph::de_bruijn(3, 2).unwrap()), 1);
        assert_eq!(count(Digraph::kautz(3, 2).unwrap()), 3);
    }

    #[test]
    fn sandpile_groups_by_snf() {
        let z = |n: u32| AbelianGroup::cyclic(n).unwrap();
        let db43 = Digraph::de_bruijn(4, 3).unwrap();
        assert_eq!(db43.sandpile_group_snf(0).unwrap(), z(4));
        assert_eq!(db43.critical_group_snf(), z(4));
        let k32 = Digraph::kautz(3, 2).unwrap();
        assert_eq!(k32.sandpile_group_snf(0).unwrap(), z(3));
        assert_eq!(k32.critical_group_snf(), z(3));
        for n in 1..8 {
            let g = Digraph::de_bruijn(n, 1).unwrap();
            for root in 0..n as usize {
                assert!(g.sandpile_group_snf(root).unwrap().is_trivial());
            }
        }
        let edgeless = Digraph::de_bruijn(3, 0).unwrap();
        assert!(edgeless.sandpile_group_snf(0).unwrap().is_trivial());
    }
}
