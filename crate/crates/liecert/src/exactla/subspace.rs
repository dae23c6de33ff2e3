//! Canonical subspaces of an indexed coordinate space.
//!
//! A `Subspace` is stored as its reduced row-echelon basis with strictly
//! increasing unit pivots, so two values are equal as sets exactly when they
//! are equal as data. Every subspace produced anywhere in the engine goes
//! through this normal form, which is what makes cross-seed determinism
//! checks meaningful.

use num_traits::{One, Zero};

use super::rref::{rref_rows, Echelon};
use super::sparse::{sv_axpy, sv_collect, sv_get, sv_scale, SparseMat, SparseVec};
use crate::{Error, Rat, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    /// Canonicalize an arbitrary spanning set.
    pub fn from_rows(ambient: usize, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let (basis, pivots) = rref_rows(ambient, rows);
        Self {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| vec![(i as u32, Rat::one())]).collect();
        Self {
            ambient,
            basis,
            pivots: (0..ambient as u32).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Residual of `v` after reduction by the basis; zero iff contained.
    pub fn reduce_vec(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        for (row, pivot) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = sv_get(&cur, *pivot).cloned() {
                cur = sv_axpy(&cur, &-c, row);
            }
        }
        cur
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        self.reduce_vec(v).is_empty()
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self
            .pivots
            .iter()
            .map(|p| sv_get(v, *p).cloned().unwrap_or_else(Rat::zero))
            .collect();
        let mut residual = v.clone();
        for (c, row) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                residual = sv_axpy(&residual, &-c.clone(), row);
            }
        }
        residual.is_empty().then_some(coords)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                have: other.ambient,
                want: self.ambient,
            });
        }
        Ok(other.basis.iter().all(|v| self.contains_vec(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                have: other.ambient,
                want: self.ambient,
            });
        }
        Ok(Subspace::from_rows(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Intersection via the kernel of the stacked coefficient matrix: a
    /// vector in both spaces is a combination of either basis.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                have: other.ambient,
                want: self.ambient,
            });
        }
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Rows indexed by ambient coordinates, columns by (u, v) coefficients
        // of  sum u_i a_i - sum v_j b_j = 0.
        let mut rows: Vec<Vec<(u32, Rat)>> = vec![Vec::new(); self.ambient];
        for (i, a) in self.basis.iter().enumerate() {
            for (c, x) in a {
                rows[*c as usize].push((i as u32, x.clone()));
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for (c, x) in b {
                rows[*c as usize].push(((da + j) as u32, -x.clone()));
            }
        }
        let stacked = SparseMat::from_rows(
            da + db,
            rows.into_iter().map(sv_collect).filter(|r| !r.is_empty()).collect(),
        );
        let ker = kernel(&stacked);
        let vectors = ker.basis().iter().map(|k| {
            let mut terms = Vec::new();
            for (idx, coeff) in k {
                if (*idx as usize) < da {
                    for (c, x) in &self.basis[*idx as usize] {
                        terms.push((*c, coeff * x));
                    }
                }
            }
            sv_collect(terms)
        });
        Ok(Subspace::from_rows(self.ambient, vectors))
    }
}

/// Connected components of the bipartite row/column incidence graph.
///
/// Rank, kernel, and image all decompose over components, and the operator
/// matrices in this engine are weight-graded, so splitting first turns one
/// large elimination into many small independent ones.
fn column_components(m: &SparseMat) -> Vec<(Vec<usize>, Vec<u32>)> {
    let cols = m.cols();
    let mut parent: Vec<u32> = (0..cols as u32).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut root = x;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }
    for row in m.row_iter() {
        if let Some((first, _)) = row.first() {
            let rf = find(&mut parent, *first);
            for (c, _) in &row[1..] {
                let rc = find(&mut parent, *c);
                parent[rc as usize] = rf;
            }
        }
    }
    let mut comp_of_root = std::collections::BTreeMap::new();
    let mut comps: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
    for c in 0..cols as u32 {
        let root = find(&mut parent, c);
        let idx = *comp_of_root.entry(root).or_insert_with(|| {
            comps.push((Vec::new(), Vec::new()));
            comps.len() - 1
        });
        comps[idx].1.push(c);
    }
    for (r, row) in m.row_iter().enumerate() {
        if let Some((first, _)) = row.first() {
            let root = find(&mut parent, *first);
            comps[comp_of_root[&root]].0.push(r);
        }
    }
    comps
}

/// Exact kernel (null space of `M v = 0`), canonical.
pub fn kernel(m: &SparseMat) -> Subspace {
    let mut vectors: Vec<SparseVec> = Vec::new();
    for (rows, cols) in column_components(m) {
        if rows.is_empty() {
            // untouched columns are free
            for c in cols {
                vectors.push(vec![(c, Rat::one())]);
            }
            continue;
        }
        let local_of: std::collections::BTreeMap<u32, u32> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i as u32))
            .collect();
        let mut ech = Echelon::new(cols.len());
        for r in &rows {
            let local: SparseVec = m.row(*r).iter().map(|(c, v)| (local_of[c], v.clone())).collect();
            ech.insert(&local);
        }
        let (rref, pivots) = ech.into_rref();
        let pivot_set: std::collections::BTreeSet<u32> = pivots.iter().copied().collect();
        for f in 0..cols.len() as u32 {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut terms = vec![(cols[f as usize], Rat::one())];
            for (row, p) in rref.iter().zip(&pivots) {
                if let Some(x) = sv_get(row, f) {
                    terms.push((cols[*p as usize], -x.clone()));
                }
            }
            vectors.push(sv_collect(terms));
        }
    }
    Subspace::from_rows(m.cols(), vectors)
}

/// Column space, canonical.
pub fn image(m: &SparseMat) -> Subspace {
    Subspace::from_rows(m.rows(), m.transpose().row_iter().cloned())
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMat) -> usize {
    let mut total = 0;
    for (rows, cols) in column_components(m) {
        if rows.is_empty() {
            continue;
        }
        let local_of: std::collections::BTreeMap<u32, u32> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i as u32))
            .collect();
        let mut ech = Echelon::new(cols.len());
        for r in rows {
            let local: SparseVec = m.row(r).iter().map(|(c, v)| (local_of[c], v.clone())).collect();
            ech.insert(&local);
        }
        total += ech.rank();
    }
    total
}

/// Scale `v` so its first nonzero coordinate is one (canonical generator of a
/// line). Errors on the zero vector.
pub fn normalize_line(v: &SparseVec) -> Result<SparseVec> {
    if v.is_empty() {
        return Err(Error::ZeroVector("line generator".into()));
    }
    let inv = Rat::one() / v[0].1.clone();
    Ok(sv_scale(v, &inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let m = SparseMat::zero(3, 4);
        let k = kernel(&m);
        assert_eq!(k.dim(), 4);
        assert_eq!(k, Subspace::full(4));
    }

    #[test]
    fn rank_of_identity() {
        let m = SparseMat::identity(5);
        assert_eq!(rank(&m), 5);
        assert_eq!(kernel(&m).dim(), 0);
        assert_eq!(image(&m).dim(), 5);
    }

    #[test]
    fn rank_nullity_image() {
        let m = SparseMat::from_triples(
            3,
            4,
            vec![
                (0, 0, rat(1)),
                (0, 1, rat(2)),
                (1, 2, rat(1)),
                (2, 0, rat(2)),
                (2, 1, rat(4)),
            ],
        )
        .unwrap();
        assert_eq!(rank(&m), 2);
        assert_eq!(kernel(&m).dim(), 2);
        assert_eq!(image(&m).dim(), 2);
    }

    #[test]
    fn lattice_dimension_formula() {
        // span{e0, e1} and span{e1, e2} in Q^3
        let a = Subspace::from_rows(3, vec![vec![(0, rat(1))], vec![(1, rat(1))]]);
        let b = Subspace::from_rows(3, vec![vec![(1, rat(1))], vec![(2, rat(1))]]);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vec(&vec![(1, rat(7))]));
    }

    #[test]
    fn intersect_self_is_identity() {
        let v = Subspace::from_rows(
            4,
            vec![
                vec![(0, rat(1)), (2, rat(2))],
                vec![(1, rat(1)), (3, rat(-1))],
            ],
        );
        assert_eq!(v.intersect(&v).unwrap(), v);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = Subspace::full(3);
        let b = Subspace::full(4);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn kernel_membership_criterion() {
        let m = SparseMat::from_triples(2, 3, vec![(0, 0, rat(1)), (0, 1, rat(-1)), (1, 2, rat(1))])
            .unwrap();
        let k = kernel(&m);
        let v = vec![(0, rat(3)), (1, rat(3))];
        assert!(k.contains_vec(&v));
        assert_eq!(m.mul_vec(&v).unwrap(), Vec::new());
        let w = vec![(0, rat(1))];
        assert!(!k.contains_vec(&w));
        assert!(!m.mul_vec(&w).unwrap().is_empty());
    }
}
