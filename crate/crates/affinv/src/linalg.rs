//! Row reduction over F_p on plain coefficient rows.
//!
//! Rows are coordinate vectors of field elements (length n, entries in
//! 0..p). The reduced-row-echelon invariant kept here is what makes
//! subspace equality syntactic everywhere else in the crate.

use crate::poly::mod_inv;

/// An RREF basis under incremental insertion: rows sorted by strictly
/// increasing pivot column, pivot entries 1, pivot columns clear elsewhere.
#[derive(Debug, Clone)]
pub(crate) struct RrefBasis {
    p: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RrefBasis {
    pub fn new(p: u64, n: usize) -> Self {
        RrefBasis {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(p: u64, n: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut basis = RrefBasis::new(p, n);
        for r in rows {
            basis.insert(r);
        }
        basis
    }

    /// Wraps rows that are already in RREF with the given pivot columns.
    /// Used by the enumerators, whose construction yields echelon form
    /// directly.
    pub fn from_rref_unchecked(p: u64, n: usize, rows: Vec<Vec<u64>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        debug_assert!(rows
            .iter()
            .zip(&pivots)
            .all(|(r, &piv)| r.len() == n && r[piv] == 1));
        RrefBasis { p, n, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts basis multiples from `v` so every pivot coordinate of `v`
    /// becomes zero. The result is the canonical residue of `v` modulo the
    /// row space.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.n);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + (self.p - c) * ri) % self.p;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut tmp = v.to_vec();
        self.reduce(&mut tmp);
        tmp.iter().all(|&c| c == 0)
    }

    /// Inserts `v` into the basis; returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = mod_inv(v[piv], self.p);
        for c in v.iter_mut() {
            *c = *c * inv % self.p;
        }
        // Clear the new pivot column from the existing rows.
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = (*ri + (self.p - c) * vi) % self.p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }
}

/// Basis of the kernel { x : M x = 0 } of an n x n matrix over F_p given by
/// rows. Returned vectors are not themselves in RREF order; feed them to an
/// [`RrefBasis`] if canonical form is needed.
pub(crate) fn kernel_basis(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.first().map_or(0, Vec::len);
    let reduced = RrefBasis::from_rows(p, n, rows.iter().cloned());
    let pivot_set: Vec<usize> = reduced.pivots().to_vec();
    let mut out = Vec::new();
    for j in 0..n {
        if pivot_set.contains(&j) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[j] = 1;
        for (row, &piv) in reduced.rows().iter().zip(reduced.pivots()) {
            v[piv] = (p - row[j]) % p;
        }
        out.push(v);
    }
    out
}

/// Rank of a matrix over F_p.
pub(crate) fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    RrefBasis::from_rows(p, n, rows.iter().cloned()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_shape_invariants() {
        let mut b = RrefBasis::new(5, 4);
        b.insert(vec![2, 1, 3, 0]);
        b.insert(vec![4, 2, 1, 1]);
        b.insert(vec![1, 3, 0, 2]);
        assert_eq!(b.rank(), 3);
        for (i, (row, &piv)) in b.rows().iter().zip(b.pivots()).enumerate() {
            assert_eq!(row[piv], 1);
            for (other, (orow, &opiv)) in b.rows().iter().zip(b.pivots()).enumerate() {
                if other != i {
                    assert_eq!(orow[piv], 0, "pivot column must be clear");
                }
                let _ = opiv;
            }
        }
        let pivs = b.pivots().to_vec();
        assert!(pivs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dependent_rows_do_not_grow_rank() {
        let mut b = RrefBasis::new(2, 3);
        assert!(b.insert(vec![1, 1, 0]));
        assert!(!b.insert(vec![1, 1, 0]));
        assert!(b.insert(vec![0, 1, 1]));
        assert!(!b.insert(vec![1, 0, 1])); // sum of the first two
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn kernel_annihilates_matrix() {
        let rows = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]];
        let p = 5;
        let ker = kernel_basis(&rows, p);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for r in &rows {
                let dot: u64 = r.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p;
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(rank(&rows, p), 2);
    }
}
