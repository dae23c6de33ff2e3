//! Incremental exact row reduction.
//!
//! The forward pass keeps rows in primitive integer form (coprime integer
//! entries, positive leading coefficient) so that coefficient growth stays
//! bounded by row content rather than compounding fractions. Canonical
//! reduced row-echelon form is produced only at the boundary.

use std::collections::BTreeMap;

use num_traits::One;

use super::sparse::{sv_axpy, sv_get, sv_primitive, sv_scale, SparseVec};
use crate::Rat;

/// A row-space echelon basis that rows can be inserted into one at a time.
#[derive(Debug, Clone)]
pub struct Echelon {
    ambient: usize,
    /// pivot column -> primitive row with that leading column.
    rows: BTreeMap<u32, SparseVec>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce `v` against the current rows; the residual has no support
    /// on any current pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        let mut from_col = 0u32;
        loop {
            // Eliminating at column c only touches columns > c, so the scan
            // never has to revisit the prefix.
            let start = cur.partition_point(|(c, _)| *c < from_col);
            let hit = cur[start..]
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            match hit {
                None => return cur,
                Some((col, coeff)) => {
                    let row = &self.rows[&col];
                    let pivot = sv_get(row, col).expect("pivot present");
                    let c = -(coeff / pivot);
                    cur = sv_axpy(&cur, &c, row);
                    from_col = col + 1;
                }
            }
        }
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        if red.is_empty() {
            return false;
        }
        let prim = sv_primitive(&red);
        let pivot = prim[0].0;
        debug_assert!((pivot as usize) < self.ambient);
        self.rows.insert(pivot, prim);
        true
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.keys().copied().collect()
    }

    /// Canonical reduced row-echelon rows: unit pivots, pivot columns cleared
    /// elsewhere, rows ordered by pivot.
    pub fn into_rref(self) -> (Vec<SparseVec>, Vec<u32>) {
        let pivots: Vec<u32> = self.rows.keys().copied().collect();
        let mut rows: Vec<SparseVec> = self
            .rows
            .into_values()
            .map(|r| {
                let inv = Rat::one() / r[0].1.clone();
                sv_scale(&r, &inv)
            })
            .collect();
        // Back-eliminate, deepest pivot first.
        for i in (0..rows.len()).rev() {
            let pivot = pivots[i];
            for j in 0..i {
                if let Some(c) = sv_get(&rows[j], pivot).cloned() {
                    let sub = sv_scale(&rows[i], &c);
                    rows[j] = sv_axpy(&rows[j], &-Rat::one(), &sub);
                }
            }
        }
        (rows, pivots)
    }
}

/// Canonical RREF of an arbitrary row collection.
pub fn rref_rows(
    ambient: usize,
    rows: impl IntoIterator<Item = SparseVec>,
) -> (Vec<SparseVec>, Vec<u32>) {
    let mut ech = Echelon::new(ambient);
    for r in rows {
        ech.insert(&r);
    }
    ech.into_rref()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rref_is_canonical_under_row_permutation() {
        let rows = vec![
            vec![(0, rat(2)), (1, rat(4))],
            vec![(0, rat(1)), (2, rat(3))],
            vec![(1, rat(2)), (2, rat(-3))],
        ];
        let mut rev = rows.clone();
        rev.reverse();
        let a = rref_rows(3, rows);
        let b = rref_rows(3, rev);
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_kills_dependent_rows() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&vec![(0, rat(1)), (3, rat(2))]));
        assert!(e.insert(&vec![(1, rat(5))]));
        assert!(!e.insert(&vec![(0, rat(2)), (1, rat(5)), (3, rat(4))]));
        assert_eq!(e.rank(), 2);
    }
}
