//! Indexed tensor bases and the Spencer / Bianchi operators as sparse
//! rational matrices.
//!
//! Coordinate order on Hom spaces is domain-major, codomain-minor, so kernel
//! generators are comparable across runs. The extended algebra
//! `ghat = ad g + C Id` is kept abstract as n+1 coordinates with an action on
//! basis vectors; columns of the big operators are assembled by evaluating on
//! coordinate homomorphisms, which keeps assembly proportional to the number
//! of structure constants.

use num_traits::One;
#[allow(unused_imports)]
use num_traits::Zero;

use crate::exactla::{
    certify_nullity, kernel, sv_collect, CertifiedNullity, NullityOutcome,
    SparseMat, SparseVec, Subspace,
};
use crate::liealg::LieAlgebra;
use crate::{rat, Rat, Result};

/// Index of ordered pairs i < j over n coordinates, lexicographic.
#[derive(Debug, Clone, Copy)]
pub struct Wedge2Index {
    pub n: usize,
}

impl Wedge2Index {
    pub fn total(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        let n = self.n;
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize) {
        let n = self.n;
        let mut i = 0;
        let mut base = 0;
        loop {
            let width = n - i - 1;
            if idx < base + width {
                return (i, idx - base + i + 1);
            }
            base += width;
            i += 1;
        }
    }

    /// Wedge coordinates of `x ^ y` for sparse vectors.
    pub fn wedge(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                match i.cmp(j) {
                    std::cmp::Ordering::Less => {
                        terms.push((self.index(*i as usize, *j as usize) as u32, xi * yj))
                    }
                    std::cmp::Ordering::Greater => {
                        terms.push((self.index(*j as usize, *i as usize) as u32, -(xi * yj)))
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        sv_collect(terms)
    }
}

/// Index of ordered triples i < j < k, lexicographic.
#[derive(Debug, Clone)]
pub struct Wedge3Index {
    pub n: usize,
    offsets: Vec<usize>,
    w2: Wedge2Index,
}

impl Wedge3Index {
    pub fn new(n: usize) -> Self {
        // offset of the block of triples starting at i: sum over t < i of C(n-1-t, 2)
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0usize;
        for i in 0..n {
            offsets.push(acc);
            let m = n - 1 - i;
            acc += m * m.saturating_sub(1) / 2;
        }
        Self {
            n,
            offsets,
            w2: Wedge2Index { n },
        }
    }

    pub fn total(&self) -> usize {
        let n = self.n;
        n * (n - 1) * (n - 2) / 6
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < j && j < k && k < self.n);
        // triples above i are pairs (j, k) in the remaining n-1-i coordinates
        let m = self.n - 1 - i;
        let local = Wedge2Index { n: m };
        self.offsets[i] + local.index(j - i - 1, k - i - 1)
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let i = match self.offsets.binary_search(&idx) {
            Ok(mut p) => {
                while p + 1 < self.offsets.len() && self.offsets[p + 1] == idx {
                    p += 1;
                }
                p
            }
            Err(p) => p - 1,
        };
        let local = Wedge2Index { n: self.n - 1 - i };
        let (a, b) = local.unindex(idx - self.offsets[i]);
        (i, a + i + 1, b + i + 1)
    }

    pub fn w2(&self) -> Wedge2Index {
        self.w2
    }
}

/// Index of unordered pairs i <= j (symmetric squares), lexicographic.
#[derive(Debug, Clone, Copy)]
pub struct Sym2Index {
    pub n: usize,
}

impl Sym2Index {
    pub fn total(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.n);
        let n = self.n;
        i * (2 * n - i + 1) / 2 + (j - i)
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize) {
        let n = self.n;
        let mut i = 0;
        let mut base = 0;
        loop {
            let width = n - i;
            if idx < base + width {
                return (i, idx - base + i);
            }
            base += width;
            i += 1;
        }
    }
}

/// Domain-major, codomain-minor index on Hom(A, B).
#[derive(Debug, Clone, Copy)]
pub struct HomIndex {
    pub dom: usize,
    pub cod: usize,
}

impl HomIndex {
    pub fn total(&self) -> usize {
        self.dom * self.cod
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.dom && b < self.cod);
        a * self.cod + b
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize) {
        (idx / self.cod, idx % self.cod)
    }
}

/// The extended linear Lie algebra `ghat = ad g + C Id` inside End(g),
/// realized abstractly as n + 1 coordinates: 0..n-1 are `ad e_k`, n is Id.
#[derive(Debug, Clone, Copy)]
pub struct HatAlgebra {
    pub n: usize,
}

impl HatAlgebra {
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn id_slot(&self) -> usize {
        self.n
    }

    /// Action of the a-th hat coordinate on the k-th algebra basis vector.
    pub fn act_basis(&self, alg: &LieAlgebra, a: usize, k: usize) -> SparseVec {
        if a == self.n {
            vec![(k as u32, Rat::one())]
        } else {
            alg.bracket_basis(a, k)
                .iter()
                .map(|(m, c)| (*m, rat(*c)))
                .collect()
        }
    }

    /// Evaluate hat coordinates to an n x n matrix (tests and witnesses).
    pub fn eval(&self, alg: &LieAlgebra, coords: &SparseVec) -> Result<SparseMat> {
        let n = self.n;
        let mut cols: Vec<Vec<(u32, Rat)>> = vec![Vec::new(); n];
        for (a, c) in coords {
            for k in 0..n {
                for (m, v) in self.act_basis(alg, *a as usize, k) {
                    cols[k].push((m, c * &v));
                }
            }
        }
        let mut triples = Vec::new();
        for (k, col) in cols.into_iter().enumerate() {
            for (m, v) in sv_collect(col) {
                triples.push((m as usize, k, v));
            }
        }
        SparseMat::from_triples(n, n, triples)
    }
}

/// Codomain choice for the Spencer operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpencerCodomain {
    /// h takes values in ghat = ad g + C Id (n + 1 coordinates per slot).
    Hat,
    /// h takes values in ad g only (n coordinates per slot).
    Adjoint,
}

/// Matrix of the Spencer operator
/// `d h (v1, v2) = h(v1) . v2 - h(v2) . v1`
/// from Hom(g, cod) to Hom(wedge^2 g, g).
pub fn spencer_matrix(alg: &LieAlgebra, cod: SpencerCodomain) -> Result<SparseMat> {
    let n = alg.dim;
    let hat = HatAlgebra { n };
    let cod_dim = match cod {
        SpencerCodomain::Hat => n + 1,
        SpencerCodomain::Adjoint => n,
    };
    let dom_idx = HomIndex {
        dom: n,
        cod: cod_dim,
    };
    let w2 = Wedge2Index { n };
    let out_idx = HomIndex {
        dom: w2.total(),
        cod: n,
    };
    let mut rows: Vec<SparseVec> = vec![Vec::new(); out_idx.total()];
    for v in 0..n {
        for c in 0..cod_dim {
            let col = dom_idx.index(v, c);
            for q in 0..n {
                if q == v {
                    continue;
                }
                // h = E_{v -> c}: d h(e_v, e_q) = c . e_q
                let action = hat.act_basis(alg, c, q);
                let (pair, sign) = if v < q {
                    (w2.index(v, q), Rat::one())
                } else {
                    (w2.index(q, v), -Rat::one())
                };
                for (m, val) in &action {
                    rows[out_idx.index(pair, *m as usize)].push((col as u32, &sign * val));
                }
            }
        }
    }
    Ok(SparseMat::from_rows(
        dom_idx.total(),
        rows.into_iter().map(sv_collect).collect(),
    ))
}

/// Matrix of the cyclic-sum (first Bianchi) operator
/// `h# (u, v, w) = h(u,v) . w + h(v,w) . u + h(w,u) . v`
/// from Hom(wedge^2 g, ghat) to Hom(wedge^3 g, g).
pub fn bianchi_matrix(alg: &LieAlgebra) -> Result<SparseMat> {
    let n = alg.dim;
    let hat = HatAlgebra { n };
    let w2 = Wedge2Index { n };
    let w3 = Wedge3Index::new(n);
    let dom_idx = HomIndex {
        dom: w2.total(),
        cod: n + 1,
    };
    let out_idx = HomIndex {
        dom: w3.total(),
        cod: n,
    };
    let mut rows: Vec<SparseVec> = vec![Vec::new(); out_idx.total()];
    for i in 0..n {
        for j in (i + 1)..n {
            let pair = w2.index(i, j);
            for a in 0..=n {
                let col = dom_idx.index(pair, a) as u32;
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    // h = E_{(i,j) -> a} contributes a . e_k to the triple
                    // {i, j, k}: positively when the cyclic order matches
                    // (k outside [i, j]), negatively when i < k < j.
                    let (tri, positive) = if k < i {
                        (w3.index(k, i, j), true)
                    } else if k > j {
                        (w3.index(i, j, k), true)
                    } else {
                        (w3.index(i, k, j), false)
                    };
                    let action = hat.act_basis(alg, a, k);
                    for (m, val) in &action {
                        let v = if positive { val.clone() } else { -val };
                        rows[out_idx.index(tri, *m as usize)].push((col, v));
                    }
                }
            }
        }
    }
    Ok(SparseMat::from_rows(
        dom_idx.total(),
        rows.into_iter().map(sv_collect).collect(),
    ))
}

/// The Lie bracket as a vector in Hom(wedge^2 g, ghat) coordinates: ad-part
/// `[e_i, e_j]`, Id-part zero.
pub fn bracket_element(alg: &LieAlgebra) -> SparseVec {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let dom_idx = HomIndex {
        dom: w2.total(),
        cod: n + 1,
    };
    let mut terms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for (a, c) in alg.bracket_basis(i, j) {
                terms.push((dom_idx.index(w2.index(i, j), *a as usize) as u32, rat(*c)));
            }
        }
    }
    sv_collect(terms)
}

/// Same vector restricted to Hom(wedge^2 g, g) coordinates (no Id slot).
pub fn bracket_sigma(alg: &LieAlgebra) -> SparseVec {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let idx = HomIndex {
        dom: w2.total(),
        cod: n,
    };
    let mut terms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for (a, c) in alg.bracket_basis(i, j) {
                terms.push((idx.index(w2.index(i, j), *a as usize) as u32, rat(*c)));
            }
        }
    }
    sv_collect(terms)
}

/// Evaluate a Hom(wedge^2 g, ghat) vector on a pair of algebra vectors,
/// returning hat coordinates.
pub fn evaluate_hat_hom(alg: &LieAlgebra, h: &SparseVec, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let dom_idx = HomIndex {
        dom: w2.total(),
        cod: n + 1,
    };
    let wedge = w2.wedge(x, y);
    let mut terms = Vec::new();
    for (widx, wval) in &wedge {
        // h entries for this wedge coordinate occupy a contiguous block
        let lo = dom_idx.index(*widx as usize, 0) as u32;
        let hi = lo + (n as u32);
        let from = h.partition_point(|(c, _)| *c < lo);
        for (c, v) in &h[from..] {
            if *c > hi {
                break;
            }
            terms.push((c - lo, wval * v));
        }
    }
    sv_collect(terms)
}

/// Evaluate a Hom(wedge^2 g, g) vector on a pair of algebra vectors.
pub fn evaluate_sigma(alg: &LieAlgebra, sigma: &SparseVec, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let idx = HomIndex {
        dom: w2.total(),
        cod: n,
    };
    let wedge = w2.wedge(x, y);
    let mut terms = Vec::new();
    for (widx, wval) in &wedge {
        let lo = idx.index(*widx as usize, 0) as u32;
        let hi = lo + (n as u32) - 1;
        let from = sigma.partition_point(|(c, _)| *c < lo);
        for (c, v) in &sigma[from..] {
            if *c > hi {
                break;
            }
            terms.push((c - lo, wval * v));
        }
    }
    sv_collect(terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureMode {
    Exact,
    Modular,
}

/// Result of computing the formal curvature space K(ghat).
#[derive(Debug, Clone)]
pub enum CurvatureOutcome {
    /// Exact kernel, with the scalar relating its generator to the bracket
    /// when the kernel is the bracket line.
    Exact {
        kernel: Subspace,
        bracket_scalar: Option<Rat>,
    },
    /// Modular certification against the bracket line.
    Modular { certified: CertifiedNullity },
    /// The matrix would exceed the elimination workspace budget.
    ResourceLimit {
        rows: usize,
        cols: usize,
        needed_bytes: u64,
        budget_bytes: u64,
    },
}

/// Conservative elimination workspace estimate for an r x c matrix.
pub fn elimination_workspace_bytes(rows: usize, cols: usize) -> u64 {
    let m = rows.min(cols) as u64;
    m.saturating_mul(m).saturating_mul(8)
}

/// Dimensions of the Bianchi operator for an n-dimensional algebra.
pub fn bianchi_dims(n: usize) -> (usize, usize) {
    let w2 = n * (n - 1) / 2;
    let w3 = n * (n - 1) * (n - 2) / 6;
    (w3 * n, w2 * (n + 1))
}

/// Compute K(ghat) = ker(h -> h#), exactly or modularly certified against the
/// bracket line, refusing inputs over the workspace budget.
pub fn formal_curvature_space(
    alg: &LieAlgebra,
    mode: CurvatureMode,
    budget_bytes: u64,
    prime_attempts: usize,
    next_prime: impl FnMut() -> u64,
) -> Result<CurvatureOutcome> {
    let (rows, cols) = bianchi_dims(alg.dim);
    let needed = elimination_workspace_bytes(rows, cols);
    if needed > budget_bytes {
        return Ok(CurvatureOutcome::ResourceLimit {
            rows,
            cols,
            needed_bytes: needed,
            budget_bytes,
        });
    }
    let m = bianchi_matrix(alg)?;
    let bracket = bracket_element(alg);
    match mode {
        CurvatureMode::Exact => {
            let ker = kernel(&m);
            let scalar = if ker.dim() == 1 {
                let gen = &ker.basis()[0];
                let line = Subspace::from_rows(m.cols(), vec![bracket.clone()]);
                if line.contains_vec(gen) {
                    // gen = s * bracket; scalars are never normalized away silently
                    crate::exactla::sv_get(&bracket, gen[0].0).map(|b0| &gen[0].1 / b0)
                } else {
                    None
                }
            } else {
                None
            };
            Ok(CurvatureOutcome::Exact {
                kernel: ker,
                bracket_scalar: scalar,
            })
        }
        CurvatureMode::Modular => {
            let line = Subspace::from_rows(m.cols(), vec![bracket]);
            let certified = certify_nullity(&m, &line, prime_attempts, next_prime)?;
            Ok(CurvatureOutcome::Modular { certified })
        }
    }
}

/// Convenience: does a curvature outcome certify a one-dimensional kernel
/// generated by the bracket?
pub fn curvature_is_bracket_line(out: &CurvatureOutcome) -> bool {
    match out {
        CurvatureOutcome::Exact {
            kernel,
            bracket_scalar,
        } => kernel.dim() == 1 && bracket_scalar.is_some(),
        CurvatureOutcome::Modular { certified } => {
            certified.known_kernel_dim == 1
                && matches!(certified.outcome, NullityOutcome::Certified { .. })
        }
        CurvatureOutcome::ResourceLimit { .. } => false,
    }
}
