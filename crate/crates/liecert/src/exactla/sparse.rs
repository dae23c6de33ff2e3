//! Sparse rational vectors and matrices in coordinate form.

use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Sparse vector: entries sorted by column index, no stored zeros.
pub type SparseVec = Vec<(u32, Rat)>;

/// Merge-add `dst + c * src` into a fresh vector.
pub fn sv_axpy(dst: &SparseVec, c: &Rat, src: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return dst.clone();
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi + c * vj;
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, c * vj));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, c * vj));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn sv_dot(a: &SparseVec, b: &SparseVec) -> Rat {
    let mut acc = Rat::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn sv_scale(v: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(col, x)| (*col, x * c)).collect()
}

pub fn sv_get(v: &SparseVec, col: u32) -> Option<&Rat> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|i| &v[i].1)
}

pub fn sv_from_dense(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn sv_to_dense(v: &SparseVec, len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (col, x) in v {
        out[*col as usize] = x.clone();
    }
    out
}

/// Collect unsorted (col, value) terms, summing duplicates and dropping zeros.
pub fn sv_collect(mut terms: Vec<(u32, Rat)>) -> SparseVec {
    terms.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (col, v) in terms {
        if let Some(last) = out.last_mut() {
            if last.0 == col {
                last.1 += v;
                continue;
            }
        }
        out.push((col, v));
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Sparse rational matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i as u32, Rat::one())]).collect();
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Build from coordinate triples. Duplicate positions are rejected,
    /// explicit zeros are dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Self> {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange(format!(
                    "({r}, {c}) outside {rows}x{cols}"
                )));
            }
            if v.is_zero() {
                continue;
            }
            let row = &mut m.data[r];
            match row.binary_search_by_key(&(c as u32), |e| e.0) {
                Ok(_) => return Err(Error::DuplicateEntry { row: r, col: c }),
                Err(pos) => row.insert(pos, (c as u32, v)),
            }
        }
        Ok(m)
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
                && r.iter().all(|(c, v)| (*c as usize) < cols && !v.is_zero())));
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &SparseVec> {
        self.data.iter()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        sv_get(&self.data[r], c as u32).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c as usize].push((r as u32, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix-vector product `M v` where `v` lives in the column space.
    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec> {
        if let Some((c, _)) = v.last() {
            if *c as usize >= self.cols {
                return Err(Error::AmbientMismatch {
                    have: *c as usize + 1,
                    want: self.cols,
                });
            }
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let d = sv_dot(row, v);
            if !d.is_zero() {
                out.push((r as u32, d));
            }
        }
        Ok(out)
    }

    /// Entries as sorted triples, for serialization.
    pub fn triples(&self) -> Vec<(usize, usize, Rat)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.push((r, *c as usize, v.clone()));
            }
        }
        out
    }
}

/// Scale a vector to a primitive integer form: entries become coprime
/// integers and the leading entry positive. Used to tame coefficient growth
/// inside eliminations; canonical forms renormalize pivots to one afterward.
pub fn sv_primitive(v: &SparseVec) -> SparseVec {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if v.is_empty() {
        return Vec::new();
    }
    let mut den_lcm = BigInt::one();
    for (_, x) in v {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let mut num_gcd = BigInt::zero();
    for (_, x) in v {
        num_gcd = num_gcd.gcd(&(x.numer() * (&den_lcm / x.denom())));
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    if (&v[0].1 * &scale).is_negative() {
        scale = -scale;
    }
    sv_scale(v, &scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn axpy_merges_and_drops_zeros() {
        let a = vec![(0, rat(1)), (2, rat(3))];
        let b = vec![(1, rat(2)), (2, rat(-3))];
        let s = sv_axpy(&a, &rat(1), &b);
        assert_eq!(s, vec![(0, rat(1)), (1, rat(2))]);
    }

    #[test]
    fn duplicate_triples_rejected() {
        let t = vec![(0, 0, rat(1)), (0, 0, rat(2))];
        assert!(SparseMat::from_triples(1, 1, t).is_err());
    }

    #[test]
    fn zero_triples_dropped() {
        let m = SparseMat::from_triples(2, 2, vec![(0, 1, rat(0)), (1, 0, rat(5))]).unwrap();
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = vec![(0, crate::ratio(2, 3)), (3, crate::ratio(-4, 9))];
        let p = sv_primitive(&v);
        assert_eq!(p, vec![(0, rat(3)), (3, rat(-2))]);
    }
}
