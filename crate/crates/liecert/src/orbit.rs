//! Exact sampling of the minimal nilpotent orbit and the subspaces it cuts
//! out: the torsion-compatibility spaces, the quadric ideal, and the Spencer
//! source space, together with span and summand counts.
//!
//! Orbit points are produced by words of exponentials `exp(t ad x_{+-a})`
//! applied to the highest root vector; every exponential is a finite
//! polynomial because ad of a root vector is nilpotent, so all arithmetic is
//! exact. Sampled conditions only ever over-approximate the target subspace;
//! equality is certified either by a pincer against a verified lower bound or
//! by exact invariance plus the base-point condition (a subspace closed under
//! the algebra action whose elements satisfy the condition at the base point
//! satisfies it on the whole orbit).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{
    image, kernel, sv_axpy, sv_collect, sv_dot, sv_get, sv_primitive, sv_scale, Echelon,
    SparseMat, SparseVec, Subspace,
};
use crate::grading::ContactGrading;
use crate::liealg::{Element, LieAlgebra};
use crate::operators::{evaluate_sigma, HomIndex, Sym2Index, Wedge2Index};
use crate::rootsys::RootVec;
use crate::{rat, ratio, Error, Rat, Result};

/// One step of a generator word: `exp(param * ad x_root)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WordStep {
    pub root: RootVec,
    pub param_num: i64,
    pub param_den: i64,
}

impl WordStep {
    pub fn param(&self) -> Rat {
        ratio(self.param_num, self.param_den)
    }
}

/// An exact point of the punctured minimal nilpotent orbit together with its
/// tangent space.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    pub point: SparseVec,
    pub word: Vec<WordStep>,
    /// T_z = image(ad_z) = [g, z], canonical.
    pub tangent: Subspace,
}

/// Apply `exp(t ad x_root)` to a vector, exactly.
pub fn exp_ad_apply(alg: &LieAlgebra, root_idx: usize, t: &Rat, v: &SparseVec) -> SparseVec {
    let mut acc = v.clone();
    let mut term = v.clone();
    let mut k = 1i64;
    loop {
        term = sv_scale(&alg.ad_basis_apply(root_idx, &term), &(t / rat(k)));
        if term.is_empty() {
            return acc;
        }
        acc = sv_axpy(&acc, &Rat::one(), &term);
        k += 1;
        if k > 64 {
            // ad of a root vector is nilpotent; reaching this is a bug
            panic!("exp series did not terminate");
        }
    }
}

impl OrbitSample {
    /// Evaluate a word on x_theta and record the tangent space.
    pub fn from_word(alg: &LieAlgebra, word: Vec<WordStep>) -> Result<Self> {
        let mut point: SparseVec = vec![(alg.theta_index() as u32, Rat::one())];
        for step in &word {
            let idx = alg
                .root_vector(&step.root)
                .ok_or_else(|| Error::IndexOutOfRange(format!("{:?} is not a root", step.root)))?;
            point = exp_ad_apply(alg, idx, &step.param(), &point);
        }
        if point.is_empty() {
            return Err(Error::Internal("orbit point became zero".into()));
        }
        let tangent = image(&alg.ad_matrix(&Element::from_sparse(alg.dim, point.clone()))?);
        Ok(OrbitSample {
            point,
            word,
            tangent,
        })
    }

    /// Rows of the projector onto the coordinate complement of the tangent
    /// space along the tangent space: one row per free coordinate `c`,
    /// vanishing on T_z, equal to the c-th coordinate of the residual.
    pub fn complement_rows(&self) -> Vec<(u32, SparseVec)> {
        complement_rows_of(&self.tangent)
    }
}

/// Projector rows for an arbitrary subspace in RREF (used for both tangent
/// spaces and lines).
pub fn complement_rows_of(sub: &Subspace) -> Vec<(u32, SparseVec)> {
    let pivot_set: BTreeSet<u32> = sub.pivots().iter().copied().collect();
    let mut out = Vec::new();
    for c in 0..sub.ambient() as u32 {
        if pivot_set.contains(&c) {
            continue;
        }
        let mut row: Vec<(u32, Rat)> = vec![(c, Rat::one())];
        for (b, p) in sub.basis().iter().zip(sub.pivots()) {
            if let Some(v) = sv_get(b, c) {
                row.push((*p, -v.clone()));
            }
        }
        row.sort_by_key(|e| e.0);
        out.push((c, row));
    }
    out
}

/// Deterministic random orbit samples.
///
/// Each word starts with a Weyl-reflection prefix moving the base point to a
/// random long-root vector and continues with random exponential steps,
/// parameters drawn from a fixed small-height pool. The suffix length covers
/// the orbit dimension (dim g_1 + 2); anything shorter sweeps a proper
/// subvariety whose constraints can leave a dimension of the sampled kernels
/// uncut. Spreading base points over the Weyl orbit keeps the needed suffix
/// length minimal. The certification pincer never relies on genericity, only
/// on the constraints being necessary, so the schedule affects speed and not
/// soundness.
pub fn sample_orbit(
    alg: &LieAlgebra,
    cg: &ContactGrading,
    count: usize,
    seed: u64,
) -> Result<Vec<OrbitSample>> {
    const POOL: [(i64, i64); 8] = [
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (1, 3),
        (-1, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expected_tangent_dim = cg.level(1).dim() + 2;
    let weyl = weyl_orbit_samples(alg)?;
    let word_len = (2 * alg.rank).max(expected_tangent_dim + 2);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut word = weyl[rng.random_range(0..weyl.len())].word.clone();
        for _ in 0..word_len {
            let i = rng.random_range(0..alg.rank);
            let lower = rng.random_bool(0.5);
            let (num, den) = POOL[rng.random_range(0..POOL.len())];
            let mut root = vec![0i64; alg.rank];
            root[i] = if lower { -1 } else { 1 };
            word.push(WordStep {
                root,
                param_num: num,
                param_den: den,
            });
        }
        let sample = OrbitSample::from_word(alg, word)?;
        if sample.tangent.dim() != expected_tangent_dim {
            return Err(Error::Internal(format!(
                "orbit sample tangent dim {} != expected {}",
                sample.tangent.dim(),
                expected_tangent_dim
            )));
        }
        out.push(sample);
    }
    Ok(out)
}

/// Orbit points at every long root: x_theta moved by simple reflection words
/// `n_i = exp(ad x_i) exp(-ad x_{-i}) exp(ad x_i)`. These points are weight
/// vectors, so the constraints they impose are weight-homogeneous and cheap.
pub fn weyl_orbit_samples(alg: &LieAlgebra) -> Result<Vec<OrbitSample>> {
    let rs = &alg.rs;
    let theta = rs.highest_root.clone();
    let mut words: BTreeMap<RootVec, Vec<WordStep>> = BTreeMap::new();
    words.insert(theta.clone(), Vec::new());
    let mut frontier = vec![theta];
    while let Some(beta) = frontier.pop() {
        let base_word = words[&beta].clone();
        for i in 0..rs.rank {
            let c = rs.pairing(&beta, &rs.simple_root(i)).unwrap_or(0);
            let mut refl = beta.clone();
            refl[i] -= c;
            if words.contains_key(&refl) || !rs.is_root(&refl) {
                continue;
            }
            let mut word = base_word.clone();
            let pos = rs.simple_root(i);
            let neg: RootVec = pos.iter().map(|x| -x).collect();
            word.push(WordStep {
                root: pos.clone(),
                param_num: 1,
                param_den: 1,
            });
            word.push(WordStep {
                root: neg,
                param_num: -1,
                param_den: 1,
            });
            word.push(WordStep {
                root: pos,
                param_num: 1,
                param_den: 1,
            });
            words.insert(refl.clone(), word);
            frontier.push(refl);
        }
    }
    let mut out = Vec::new();
    for (root, word) in words {
        let sample = OrbitSample::from_word(alg, word)?;
        // the point must be +- the root vector of the reflected root
        let idx = alg.root_vector(&root).unwrap() as u32;
        if sample.point.len() != 1 || sample.point[0].0 != idx || !sample.point[0].1.numer().abs().is_one() {
            return Err(Error::Internal(format!(
                "Weyl word for {root:?} did not land on a root vector"
            )));
        }
        out.push(sample);
    }
    Ok(out)
}

/// The base point x_theta as a sample (empty word).
pub fn base_sample(alg: &LieAlgebra) -> Result<OrbitSample> {
    OrbitSample::from_word(alg, Vec::new())
}

/// Deterministic short-word samples: every Weyl point extended by `depth`
/// exponential steps with parameters enumerated from a small pool.
///
/// Points reached by short words have few nonzero coordinates, so their
/// constraint rows stay sparse and the accumulators process them orders of
/// magnitude faster than rows from generic points. Feeding these before the
/// random samples pins most of the kernel cheaply; soundness never depends
/// on the schedule.
pub fn structured_samples(alg: &LieAlgebra, depth: usize, seed: u64) -> Result<Vec<OrbitSample>> {
    const PARAMS: [(i64, i64); 4] = [(1, 1), (-1, 1), (1, 2), (-1, 3)];
    let weyl = weyl_orbit_samples(alg)?;
    if depth == 0 {
        return Ok(weyl);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let mut out = Vec::new();
    for w in &weyl {
        for i in 0..alg.rank {
            for lower in [false, true] {
                for (num, den) in PARAMS {
                    let mut word = w.word.clone();
                    let mut root = vec![0i64; alg.rank];
                    root[i] = if lower { -1 } else { 1 };
                    word.push(WordStep {
                        root,
                        param_num: num,
                        param_den: den,
                    });
                    for _ in 1..depth {
                        let j = rng.random_range(0..alg.rank);
                        let lower2 = rng.random_bool(0.5);
                        let (n2, d2) = PARAMS[rng.random_range(0..PARAMS.len())];
                        let mut root = vec![0i64; alg.rank];
                        root[j] = if lower2 { -1 } else { 1 };
                        word.push(WordStep {
                            root,
                            param_num: n2,
                            param_den: d2,
                        });
                    }
                    out.push(OrbitSample::from_word(alg, word)?);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// constraint accumulation
// ---------------------------------------------------------------------------

/// Accumulates linear constraint rows and maintains the shrinking kernel.
///
/// The kernel basis starts at the full coordinate basis and loses exactly one
/// dimension per independent constraint; every accumulated row annihilates
/// the current kernel by construction.
pub struct ConstraintAccumulator {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
    col_index: HashMap<u32, BTreeSet<usize>>,
    pub rows_added: usize,
    pub rows_independent: usize,
}

impl ConstraintAccumulator {
    pub fn new(ambient: usize) -> Self {
        let mut rows = BTreeMap::new();
        let mut col_index: HashMap<u32, BTreeSet<usize>> = HashMap::new();
        for i in 0..ambient {
            rows.insert(i, vec![(i as u32, Rat::one())]);
            col_index.entry(i as u32).or_default().insert(i);
        }
        Self {
            ambient,
            rows,
            col_index,
            rows_added: 0,
            rows_independent: 0,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.rows.len()
    }

    fn unindex_row(&mut self, id: usize) {
        if let Some(row) = self.rows.get(&id) {
            for (c, _) in row {
                if let Some(set) = self.col_index.get_mut(c) {
                    set.remove(&id);
                }
            }
        }
    }

    fn index_row(&mut self, id: usize) {
        let cols: Vec<u32> = self.rows[&id].iter().map(|(c, _)| *c).collect();
        for c in cols {
            self.col_index.entry(c).or_default().insert(id);
        }
    }

    /// Impose one constraint row; returns true if the kernel shrank.
    pub fn add_constraint(&mut self, row: &SparseVec) -> bool {
        self.rows_added += 1;
        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        for (c, _) in row {
            if let Some(set) = self.col_index.get(c) {
                candidates.extend(set.iter().copied());
            }
        }
        let mut hits: Vec<(usize, Rat)> = Vec::new();
        for id in candidates {
            let d = sv_dot(&self.rows[&id], row);
            if !d.is_zero() {
                hits.push((id, d));
            }
        }
        if hits.is_empty() {
            return false;
        }
        // pivot on the sparsest hit for fill control (deterministic tie-break)
        let (pid, pd) = hits
            .iter()
            .min_by_key(|(id, _)| (self.rows[id].len(), *id))
            .map(|(id, d)| (*id, d.clone()))
            .unwrap();
        self.unindex_row(pid);
        let prow = self.rows.remove(&pid).unwrap();
        for (id, d) in hits {
            if id == pid {
                continue;
            }
            let coef = -(d / pd.clone());
            self.unindex_row(id);
            let newr = sv_primitive(&sv_axpy(&self.rows[&id], &coef, &prow));
            self.rows.insert(id, newr);
            self.index_row(id);
        }
        self.rows_independent += 1;
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rows(self.ambient, self.rows.into_values())
    }

    pub fn snapshot_subspace(&self) -> Subspace {
        Subspace::from_rows(self.ambient, self.rows.values().cloned())
    }
}

/// Mod-p twin of the accumulator, used to pin kernel dimensions of the big
/// sampled systems. Rank mod p bounds rational rank from below, so the
/// nullity computed here bounds the rational kernel dimension from above;
/// combined with a verified exact subspace of the kernel the dimension is
/// exact. Entries whose denominator is divisible by p surface as errors so
/// the caller can resample the prime.
pub struct ModConstraintAccumulator {
    p: u64,
    rows: BTreeMap<usize, Vec<(u32, u64)>>,
    col_index: HashMap<u32, BTreeSet<usize>>,
    pub rows_added: usize,
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rat_mod(x: &Rat, p: u64) -> Result<u64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = num_bigint::BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64().expect("fits");
    if den == 0 {
        return Err(Error::PrimeDividesDenominator(p));
    }
    let num = x.numer().mod_floor(&pb).to_u64().expect("fits");
    Ok(num * mod_pow(den, p - 2, p) % p)
}

impl ModConstraintAccumulator {
    pub fn new(ambient: usize, p: u64) -> Self {
        assert!(p > 2 && p < 1 << 31);
        let mut rows = BTreeMap::new();
        let mut col_index: HashMap<u32, BTreeSet<usize>> = HashMap::new();
        for i in 0..ambient {
            rows.insert(i, vec![(i as u32, 1u64)]);
            col_index.entry(i as u32).or_default().insert(i);
        }
        Self {
            p,
            rows,
            col_index,
            rows_added: 0,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn add_constraint(&mut self, row: &SparseVec) -> Result<bool> {
        let p = self.p;
        let mrow: Vec<(u32, u64)> = row
            .iter()
            .map(|(c, v)| Ok((*c, rat_mod(v, p)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .collect();
        self.rows_added += 1;
        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        for (c, _) in &mrow {
            if let Some(set) = self.col_index.get(c) {
                candidates.extend(set.iter().copied());
            }
        }
        let dot = |a: &[(u32, u64)], b: &[(u32, u64)]| -> u64 {
            let (mut i, mut j, mut acc) = (0usize, 0usize, 0u64);
            while i < a.len() && j < b.len() {
                match a[i].0.cmp(&b[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        acc = (acc + a[i].1 * b[j].1) % p;
                        i += 1;
                        j += 1;
                    }
                }
            }
            acc
        };
        let mut hits: Vec<(usize, u64)> = Vec::new();
        for id in candidates {
            let d = dot(&self.rows[&id], &mrow);
            if d != 0 {
                hits.push((id, d));
            }
        }
        if hits.is_empty() {
            return Ok(false);
        }
        let (pid, pd) = hits
            .iter()
            .min_by_key(|(id, _)| (self.rows[id].len(), *id))
            .map(|(id, d)| (*id, *d))
            .unwrap();
        let prow = self.rows.remove(&pid).unwrap();
        for (c, _) in &prow {
            if let Some(set) = self.col_index.get_mut(c) {
                set.remove(&pid);
            }
        }
        let pd_inv = mod_pow(pd, p - 2, p);
        for (id, d) in hits {
            if id == pid {
                continue;
            }
            // new = old - (d / pd) * prow
            let coef = (p - d % p) * pd_inv % p;
            let old = &self.rows[&id];
            let mut merged: Vec<(u32, u64)> = Vec::with_capacity(old.len() + prow.len());
            let (mut i, mut j) = (0usize, 0usize);
            while i < old.len() || j < prow.len() {
                match (old.get(i), prow.get(j)) {
                    (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                        let v = (va + coef * vb) % p;
                        if v != 0 {
                            merged.push((*ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some((ca, va)), Some((cb, _))) if ca < cb => {
                        merged.push((*ca, *va));
                        i += 1;
                    }
                    (Some(_), Some((cb, vb))) => {
                        merged.push((*cb, coef * vb % p));
                        j += 1;
                    }
                    (Some((ca, va)), None) => {
                        merged.push((*ca, *va));
                        i += 1;
                    }
                    (None, Some((cb, vb))) => {
                        merged.push((*cb, coef * vb % p));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            let old_cols: Vec<u32> = self.rows[&id].iter().map(|(c, _)| *c).collect();
            for c in old_cols {
                if let Some(set) = self.col_index.get_mut(&c) {
                    set.remove(&id);
                }
            }
            for (c, _) in &merged {
                self.col_index.entry(*c).or_default().insert(id);
            }
            self.rows.insert(id, merged);
        }
        Ok(true)
    }
}

/// Upper bound on the sampled kernel dimension via one prime, with the same
/// batch stabilization rule as the exact path.
pub fn modular_sampled_nullity(
    ambient: usize,
    stream: &mut SampleStream,
    mut rows_of: impl FnMut(&OrbitSample) -> Vec<SparseVec>,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
    p: u64,
) -> Result<StabilizationInfo> {
    let mut acc = ModConstraintAccumulator::new(ambient, p);
    let mut batch_dims = Vec::new();
    let mut quiet = 0usize;
    let mut used = 0usize;
    let mut done = false;
    for _ in 0..max_batches {
        let before = acc.kernel_dim();
        for _ in 0..batch_size.max(1) {
            let s = stream.next_sample()?;
            for row in rows_of(&s) {
                if !row.is_empty() {
                    acc.add_constraint(&row)?;
                }
            }
            used += 1;
        }
        let after = acc.kernel_dim();
        batch_dims.push(after);
        if after == before {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= PLATEAU_BATCHES && lower_bound_dim.map(|d| after == d).unwrap_or(true) {
            done = true;
            break;
        }
    }
    let final_dim = acc.kernel_dim();
    Ok(StabilizationInfo {
        plateau: done || quiet >= PLATEAU_BATCHES,
        hit_lower_bound: lower_bound_dim.map(|d| final_dim == d),
        samples_used: used,
        rows_added: acc.rows_added,
        batch_dims,
        final_dim,
    })
}

/// Mod-p nullity of the sampled torsion-compatibility system.
pub fn xi_nullity_mod_p(
    alg: &LieAlgebra,
    stream: &mut SampleStream,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
    p: u64,
) -> Result<StabilizationInfo> {
    let n = alg.dim;
    let ambient = (n * (n - 1) / 2) * n;
    modular_sampled_nullity(
        ambient,
        stream,
        |s| xi_rows(alg, s),
        batch_size,
        max_batches,
        lower_bound_dim,
        p,
    )
}

/// Mod-p nullity of the sampled strict (line-valued) system.
pub fn xi_prime_nullity_mod_p(
    alg: &LieAlgebra,
    stream: &mut SampleStream,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
    p: u64,
) -> Result<StabilizationInfo> {
    let n = alg.dim;
    let ambient = (n * (n - 1) / 2) * n;
    modular_sampled_nullity(
        ambient,
        stream,
        |s| xi_prime_rows(alg, s),
        batch_size,
        max_batches,
        lower_bound_dim,
        p,
    )
}

/// Batch bookkeeping for the stabilization rule: batches of `batch_size`
/// samples, stabilized after three consecutive batches with no kernel drop,
/// and (when a lower bound is supplied) only once the kernel dimension equals
/// the bound.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct StabilizationInfo {
    pub batch_dims: Vec<usize>,
    pub plateau: bool,
    pub hit_lower_bound: Option<bool>,
    pub samples_used: usize,
    pub rows_added: usize,
    pub final_dim: usize,
}

impl StabilizationInfo {
    pub fn stabilized(&self) -> bool {
        self.plateau && self.hit_lower_bound.unwrap_or(true)
    }
}

/// A sampled subspace together with how it stabilized.
#[derive(Debug, Clone)]
pub struct SampledSpace {
    pub space: Subspace,
    pub stab: StabilizationInfo,
}

const PLATEAU_BATCHES: usize = 3;

/// A deterministic stream of orbit samples: a finite structured prefix
/// followed by an endless seeded random tail.
pub struct SampleStream<'a> {
    alg: &'a LieAlgebra,
    cg: &'a ContactGrading,
    prefix: std::vec::IntoIter<OrbitSample>,
    seed: u64,
    drawn: usize,
}

impl<'a> SampleStream<'a> {
    pub fn new(
        alg: &'a LieAlgebra,
        cg: &'a ContactGrading,
        prefix: Vec<OrbitSample>,
        seed: u64,
    ) -> Self {
        Self {
            alg,
            cg,
            prefix: prefix.into_iter(),
            seed,
            drawn: 0,
        }
    }

    /// Weyl points followed by random samples; right for generic conditions.
    pub fn generic(alg: &'a LieAlgebra, cg: &'a ContactGrading, seed: u64) -> Result<Self> {
        Ok(Self::new(alg, cg, weyl_orbit_samples(alg)?, seed))
    }

    /// Weyl points, then depth-1 and depth-2 short words, then random
    /// samples; right for the big Hom-space systems where sparse rows pay.
    pub fn structured(alg: &'a LieAlgebra, cg: &'a ContactGrading, seed: u64) -> Result<Self> {
        let mut prefix = weyl_orbit_samples(alg)?;
        prefix.extend(structured_samples(alg, 1, seed)?);
        prefix.extend(structured_samples(alg, 2, seed.wrapping_add(1))?);
        Ok(Self::new(alg, cg, prefix, seed))
    }

    pub fn next_sample(&mut self) -> Result<OrbitSample> {
        if let Some(s) = self.prefix.next() {
            return Ok(s);
        }
        let chunk = sample_orbit(
            self.alg,
            self.cg,
            1,
            self.seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(self.drawn as u64 + 1)),
        )?;
        self.drawn += 1;
        Ok(chunk.into_iter().next().unwrap())
    }
}

fn stabilized_kernel(
    ambient: usize,
    stream: &mut SampleStream,
    mut rows_of: impl FnMut(&OrbitSample) -> Vec<SparseVec>,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
) -> Result<SampledSpace> {
    let mut acc = ConstraintAccumulator::new(ambient);
    let mut batch_dims = Vec::new();
    let mut quiet = 0usize;
    let mut used = 0usize;
    let mut done = false;
    for _ in 0..max_batches {
        let before = acc.kernel_dim();
        for _ in 0..batch_size.max(1) {
            let s = stream.next_sample()?;
            for row in rows_of(&s) {
                if !row.is_empty() {
                    acc.add_constraint(&row);
                }
            }
            used += 1;
        }
        let after = acc.kernel_dim();
        assert!(after <= before, "kernel dimension must be monotone");
        batch_dims.push(after);
        if after == before {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let bound_ok = lower_bound_dim.map(|d| after == d);
        if quiet >= PLATEAU_BATCHES && bound_ok.unwrap_or(true) {
            done = true;
            break;
        }
        if let Some(d) = lower_bound_dim {
            if after < d {
                return Err(Error::Internal(format!(
                    "sampled kernel dim {after} fell below the verified lower bound {d}"
                )));
            }
        }
    }
    let final_dim = acc.kernel_dim();
    let stab = StabilizationInfo {
        plateau: done || quiet >= PLATEAU_BATCHES,
        hit_lower_bound: lower_bound_dim.map(|d| final_dim == d),
        samples_used: used,
        rows_added: acc.rows_added,
        batch_dims,
        final_dim,
    };
    Ok(SampledSpace {
        space: acc.into_subspace(),
        stab,
    })
}

// ---------------------------------------------------------------------------
// sampled spaces
// ---------------------------------------------------------------------------

/// Constraint rows at one sample for the torsion-compatibility space:
/// the residual of `sigma(z, w)` off the tangent space vanishes, for every
/// tangent basis vector w and complement coordinate.
fn xi_rows(alg: &LieAlgebra, s: &OrbitSample) -> Vec<SparseVec> {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let proj = s.complement_rows();
    let mut out = Vec::new();
    for w in s.tangent.basis() {
        let wedge = w2.wedge(&s.point, w);
        if wedge.is_empty() {
            continue;
        }
        for (_, prow) in &proj {
            let mut row: SparseVec = Vec::with_capacity(wedge.len() * prow.len());
            for (widx, wval) in &wedge {
                let base = (*widx as usize * n) as u32;
                for (m, pv) in prow {
                    row.push((base + m, wval * pv));
                }
            }
            out.push(row);
        }
    }
    out
}

/// Constraint rows for the strict space: `sigma(z, w)` lands on the line C z.
fn xi_prime_rows(alg: &LieAlgebra, s: &OrbitSample) -> Vec<SparseVec> {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let line = Subspace::from_rows(n, vec![s.point.clone()]);
    let proj = complement_rows_of(&line);
    let mut out = Vec::new();
    for w in s.tangent.basis() {
        let wedge = w2.wedge(&s.point, w);
        if wedge.is_empty() {
            continue;
        }
        for (_, prow) in &proj {
            let mut row: SparseVec = Vec::with_capacity(wedge.len() * prow.len());
            for (widx, wval) in &wedge {
                let base = (*widx as usize * n) as u32;
                for (m, pv) in prow {
                    row.push((base + m, wval * pv));
                }
            }
            out.push(row);
        }
    }
    out
}

/// Constraint rows for the quadric ideal: `q(z, z) = 0` and its orbit
/// derivatives `q(z, w) = 0` for tangent w (differentiating the vanishing
/// along the orbit), which sharpen stabilization at no soundness cost.
fn sigma_rows(alg: &LieAlgebra, s: &OrbitSample) -> Vec<SparseVec> {
    let n = alg.dim;
    let s2 = Sym2Index { n };
    let mut out = Vec::new();
    let quad = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut terms = Vec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                let (a, b) = if i <= j { (*i, *j) } else { (*j, *i) };
                let half = if a == b { Rat::one() } else { ratio(1, 2) };
                terms.push((s2.index(a as usize, b as usize) as u32, xi * yj * half));
            }
        }
        sv_collect(terms)
    };
    out.push(quad(&s.point, &s.point));
    for w in s.tangent.basis() {
        let mut row = quad(&s.point, w);
        row = sv_scale(&row, &rat(2));
        if !row.is_empty() {
            out.push(row);
        }
    }
    out
}

/// Stabilized kernel of the sampled torsion-compatibility conditions in
/// Hom(wedge^2 g, g).
pub fn xi_space(
    alg: &LieAlgebra,
    stream: &mut SampleStream,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
) -> Result<SampledSpace> {
    let n = alg.dim;
    let ambient = (n * (n - 1) / 2) * n;
    stabilized_kernel(
        ambient,
        stream,
        |s| xi_rows(alg, s),
        batch_size,
        max_batches,
        lower_bound_dim,
    )
}

/// Stabilized kernel of the strict (line-valued) conditions.
pub fn xi_prime_space(
    alg: &LieAlgebra,
    stream: &mut SampleStream,
    batch_size: usize,
    max_batches: usize,
    lower_bound_dim: Option<usize>,
) -> Result<SampledSpace> {
    let n = alg.dim;
    let ambient = (n * (n - 1) / 2) * n;
    stabilized_kernel(
        ambient,
        stream,
        |s| xi_prime_rows(alg, s),
        batch_size,
        max_batches,
        lower_bound_dim,
    )
}

/// Stabilized space of quadrics vanishing on the orbit cone.
pub fn sigma_quadrics(
    alg: &LieAlgebra,
    stream: &mut SampleStream,
    batch_size: usize,
    max_batches: usize,
) -> Result<SampledSpace> {
    let n = alg.dim;
    let ambient = n * (n + 1) / 2;
    stabilized_kernel(
        ambient,
        stream,
        |s| sigma_rows(alg, s),
        batch_size,
        max_batches,
        None,
    )
}

// ---------------------------------------------------------------------------
// module actions and invariance certificates
// ---------------------------------------------------------------------------

/// Tensor spaces the algebra acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    /// wedge^2 g with the diagonal action.
    Wedge2,
    /// Sym^2 g* with the dual action; coordinates are monomial coefficients.
    Sym2Dual,
    /// Hom(wedge^2 g, g), domain-major coordinates.
    HomW2G,
    /// Hom(g, ghat) with ghat = ad g + C Id.
    HomGHat,
}

impl TensorKind {
    pub fn ambient(&self, n: usize) -> usize {
        match self {
            TensorKind::Wedge2 => n * (n - 1) / 2,
            TensorKind::Sym2Dual => n * (n + 1) / 2,
            TensorKind::HomW2G => (n * (n - 1) / 2) * n,
            TensorKind::HomGHat => n * (n + 1),
        }
    }
}

/// For fixed generator g: map t -> [(p, c)] with `[e_g, e_p] = sum c e_t`.
fn reverse_ad(alg: &LieAlgebra, g: usize) -> Vec<Vec<(usize, i64)>> {
    let mut rev = vec![Vec::new(); alg.dim];
    for p in 0..alg.dim {
        for (t, c) in alg.bracket_basis(g, p) {
            rev[*t as usize].push((p, *c));
        }
    }
    rev
}

/// Action of the basis generator `e_g` on a vector of the given tensor kind.
pub fn act(alg: &LieAlgebra, kind: TensorKind, g: usize, v: &SparseVec) -> SparseVec {
    let n = alg.dim;
    match kind {
        TensorKind::Wedge2 => {
            let w2 = Wedge2Index { n };
            let mut terms = Vec::new();
            for (idx, val) in v {
                let (i, j) = w2.unindex(*idx as usize);
                for (t, c) in alg.bracket_basis(g, i) {
                    let t = *t as usize;
                    match t.cmp(&j) {
                        std::cmp::Ordering::Less => {
                            terms.push((w2.index(t, j) as u32, val * rat(*c)))
                        }
                        std::cmp::Ordering::Greater => {
                            terms.push((w2.index(j, t) as u32, -(val * rat(*c))))
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
                for (t, c) in alg.bracket_basis(g, j) {
                    let t = *t as usize;
                    match i.cmp(&t) {
                        std::cmp::Ordering::Less => {
                            terms.push((w2.index(i, t) as u32, val * rat(*c)))
                        }
                        std::cmp::Ordering::Greater => {
                            terms.push((w2.index(t, i) as u32, -(val * rat(*c))))
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            sv_collect(terms)
        }
        TensorKind::Sym2Dual => {
            let s2 = Sym2Index { n };
            // dense symmetric matrix route: N = -(A^T M + M A)
            let mut m = vec![vec![Rat::zero(); n]; n];
            for (idx, val) in v {
                let (i, j) = s2.unindex(*idx as usize);
                if i == j {
                    m[i][i] = val.clone();
                } else {
                    let half = val * ratio(1, 2);
                    m[i][j] = half.clone();
                    m[j][i] = half;
                }
            }
            // P = M A, column j of A is [e_g, e_j]
            let mut p = vec![vec![Rat::zero(); n]; n];
            for j in 0..n {
                for (t, c) in alg.bracket_basis(g, j) {
                    let t = *t as usize;
                    for r in 0..n {
                        if !m[r][t].is_zero() {
                            let add = &m[r][t] * rat(*c);
                            p[r][j] += add;
                        }
                    }
                }
            }
            // N = -(P^T + P)
            let mut terms = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let nij = -(&p[j][i] + &p[i][j]);
                    if !nij.is_zero() {
                        let coeff = if i == j { nij } else { nij * rat(2) };
                        terms.push((s2.index(i, j) as u32, coeff));
                    }
                }
            }
            sv_collect(terms)
        }
        TensorKind::HomW2G => {
            let w2 = Wedge2Index { n };
            let hom = HomIndex {
                dom: w2.total(),
                cod: n,
            };
            let rev = reverse_ad(alg, g);
            let mut terms = Vec::new();
            let mut push = |a: usize, b: usize, k: usize, v: Rat| {
                match a.cmp(&b) {
                    std::cmp::Ordering::Less => {
                        terms.push((hom.index(w2.index(a, b), k) as u32, v))
                    }
                    std::cmp::Ordering::Greater => {
                        terms.push((hom.index(w2.index(b, a), k) as u32, -v))
                    }
                    std::cmp::Ordering::Equal => {}
                }
            };
            for (idx, val) in v {
                let (widx, k) = hom.unindex(*idx as usize);
                let (i, j) = w2.unindex(widx);
                // value slot: [e_g, e_k]
                for (mm, c) in alg.bracket_basis(g, k) {
                    push(i, j, *mm as usize, val * rat(*c));
                }
                // argument slots; the sign-flipped storage of unsorted pairs
                // already routes second-slot terms, so only the first-slot
                // enumeration may appear or every term doubles
                for (pp, c) in &rev[i] {
                    push(*pp, j, k, -(val * rat(*c)));
                }
                for (pp, c) in &rev[j] {
                    push(*pp, i, k, val * rat(*c));
                }
            }
            sv_collect(terms)
        }
        TensorKind::HomGHat => {
            let hom = HomIndex { dom: n, cod: n + 1 };
            let rev = reverse_ad(alg, g);
            let mut terms = Vec::new();
            for (idx, val) in v {
                let (vslot, a) = hom.unindex(*idx as usize);
                if a < n {
                    for (mm, c) in alg.bracket_basis(g, a) {
                        terms.push((hom.index(vslot, *mm as usize) as u32, val * rat(*c)));
                    }
                }
                for (pp, c) in &rev[vslot] {
                    terms.push((hom.index(*pp, a) as u32, -(val * rat(*c))));
                }
            }
            sv_collect(terms)
        }
    }
}

/// Basis indices of the simple raising and lowering root vectors, which
/// generate the algebra.
pub fn simple_generators(alg: &LieAlgebra) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..alg.rank {
        let pos = alg.rs.simple_root(i);
        let neg: RootVec = pos.iter().map(|x| -x).collect();
        out.push(alg.root_vector(&pos).unwrap());
        out.push(alg.root_vector(&neg).unwrap());
    }
    out
}

/// Exact invariance of a subspace under the algebra action: closed under
/// every simple raising and lowering generator.
pub fn is_invariant(alg: &LieAlgebra, kind: TensorKind, sub: &Subspace) -> bool {
    for g in simple_generators(alg) {
        for b in sub.basis() {
            if !sub.contains_vec(&act(alg, kind, g, b)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// base-point conditions
// ---------------------------------------------------------------------------

/// sigma(x_theta, T) inside T, checked exactly.
pub fn xi_condition_at_base(alg: &LieAlgebra, base: &OrbitSample, sigma: &SparseVec) -> bool {
    base.tangent.basis().iter().all(|w| {
        let v = evaluate_sigma(alg, sigma, &base.point, w);
        base.tangent.contains_vec(&v)
    })
}

/// sigma(x_theta, T) inside the line C x_theta.
pub fn xi_prime_condition_at_base(alg: &LieAlgebra, base: &OrbitSample, sigma: &SparseVec) -> bool {
    let line = Subspace::from_rows(alg.dim, vec![base.point.clone()]);
    base.tangent.basis().iter().all(|w| {
        let v = evaluate_sigma(alg, sigma, &base.point, w);
        line.contains_vec(&v)
    })
}

/// q(x_theta, x_theta) = 0 for a quadric in monomial coordinates.
pub fn sigma_condition_at_base(alg: &LieAlgebra, q: &SparseVec) -> bool {
    let s2 = Sym2Index { n: alg.dim };
    let ti = alg.theta_index();
    sv_get(q, s2.index(ti, ti) as u32).is_none()
}

// ---------------------------------------------------------------------------
// the Spencer source space S and its image
// ---------------------------------------------------------------------------

/// Assemble `S = Hom(g, C Id) + ad-pattern summand + flats of the quadric
/// ideal` inside Hom(g, ghat). Hard-errors if the three summands overlap.
pub fn build_s(alg: &LieAlgebra, sigma: &Subspace) -> Result<Subspace> {
    let n = alg.dim;
    let hom = HomIndex { dom: n, cod: n + 1 };
    let s2 = Sym2Index { n };
    if sigma.ambient() != s2.total() {
        return Err(Error::AmbientMismatch {
            have: sigma.ambient(),
            want: s2.total(),
        });
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    // Id summand: v -> v_i Id
    for i in 0..n {
        rows.push(vec![(hom.index(i, n) as u32, Rat::one())]);
    }
    // ad pattern: for w = e_k, v -> ad_{[e_k, v]}
    for k in 0..n {
        let mut terms = Vec::new();
        for j in 0..n {
            for (a, c) in alg.bracket_basis(k, j) {
                terms.push((hom.index(j, *a as usize) as u32, rat(*c)));
            }
        }
        rows.push(sv_collect(terms));
    }
    // flats of quadrics: v -> ad_{q_flat(v)}
    for q in sigma.basis() {
        let mut mq = vec![vec![Rat::zero(); n]; n];
        for (idx, val) in q {
            let (i, j) = s2.unindex(*idx as usize);
            if i == j {
                mq[i][i] = val.clone();
            } else {
                let half = val * ratio(1, 2);
                mq[i][j] = half.clone();
                mq[j][i] = half;
            }
        }
        let phi = alg.flat(&mq)?;
        let mut terms = Vec::new();
        for (a, row) in phi.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((hom.index(j, a) as u32, c.clone()));
                }
            }
        }
        rows.push(sv_collect(terms));
    }
    let expected = 2 * n + sigma.dim();
    let s = Subspace::from_rows(hom.total(), rows);
    if s.dim() != expected {
        return Err(Error::Internal(format!(
            "S summands overlap: dim {} != {}",
            s.dim(),
            expected
        )));
    }
    Ok(s)
}

/// Image of a subspace of Hom(g, ghat) under the Spencer operator.
pub fn spencer_image_of(alg: &LieAlgebra, s: &Subspace) -> Result<Subspace> {
    let sp = crate::operators::spencer_matrix(alg, crate::operators::SpencerCodomain::Hat)?;
    let rows: Vec<SparseVec> = s
        .basis()
        .iter()
        .map(|h| sp.mul_vec(h))
        .collect::<Result<_>>()?;
    Ok(Subspace::from_rows(sp.rows(), rows))
}

// ---------------------------------------------------------------------------
// spans, summand counts, pointwise checks
// ---------------------------------------------------------------------------

/// Accumulate the span of tangent-line wedges `z ^ w` in wedge^2 g.
pub fn tangent_lines_span(alg: &LieAlgebra, samples: &[OrbitSample]) -> (usize, bool) {
    let n = alg.dim;
    let w2 = Wedge2Index { n };
    let full = w2.total();
    let mut ech = Echelon::new(full);
    let mut last = 0;
    for s in samples {
        for w in s.tangent.basis() {
            let wedge = w2.wedge(&s.point, w);
            if !wedge.is_empty() {
                ech.insert(&wedge);
            }
        }
        assert!(ech.rank() >= last, "span must be monotone");
        last = ech.rank();
        if last == full {
            break;
        }
    }
    (ech.rank(), ech.rank() == full)
}

/// Number of irreducible summands of an invariant subspace: the dimension of
/// the joint kernel of the simple raising actions restricted to the module.
pub fn count_summands(alg: &LieAlgebra, kind: TensorKind, module: &Subspace) -> Result<usize> {
    let k = module.dim();
    if module.ambient() != kind.ambient(alg.dim) {
        return Err(Error::AmbientMismatch {
            have: module.ambient(),
            want: kind.ambient(alg.dim),
        });
    }
    // invariance is a precondition; failure signals a bug in the module
    if !is_invariant(alg, kind, module) {
        return Err(Error::NotInvariant(format!(
            "module of dim {k} is not invariant under the algebra action"
        )));
    }
    let mut stacked_rows: Vec<SparseVec> = Vec::new();
    for i in 0..alg.rank {
        let g = alg.root_vector(&alg.rs.simple_root(i)).unwrap();
        // restricted action columns: for the stacked matrix we need rows;
        // build the k x k matrix row-wise from column data
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(k);
        for b in module.basis() {
            let img = act(alg, kind, g, b);
            let coords = module.coordinates(&img).ok_or_else(|| {
                Error::NotInvariant("raising action leaves the module".into())
            })?;
            cols.push(coords);
        }
        for r in 0..k {
            let mut row: SparseVec = Vec::new();
            for (c, col) in cols.iter().enumerate() {
                if !col[r].is_zero() {
                    row.push((c as u32, col[r].clone()));
                }
            }
            stacked_rows.push(row);
        }
    }
    let stacked = SparseMat::from_rows(k, stacked_rows.into_iter().filter(|r| !r.is_empty()).collect());
    Ok(kernel(&stacked).dim())
}

/// Pointwise orbit conditions at each sample, verified exactly:
/// (i) the tangent space has the expected constant dimension,
/// (ii) `[T_z, z]` lies on the line C z,
/// (iii) `[(T_z)^perp, T_z]` lies back in T_z (perp via the Killing form),
/// (iv) the contact hyperplane `D_z = {v in T_z : [v, z] = 0}` has
///      codimension one in T_z and `[z, D_z] = 0`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct GuSampleReport {
    pub sample: usize,
    pub tangent_dim: usize,
    pub clause_i: bool,
    pub clause_ii: bool,
    pub clause_iii: bool,
    pub clause_iv: bool,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct GuReport {
    pub samples: Vec<GuSampleReport>,
}

impl GuReport {
    pub fn all_pass(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.clause_i && s.clause_ii && s.clause_iii && s.clause_iv)
    }
}

pub fn gu_pointwise_checks(
    alg: &LieAlgebra,
    cg: &ContactGrading,
    samples: &[OrbitSample],
) -> Result<GuReport> {
    let expected = cg.level(1).dim() + 2;
    let n = alg.dim;
    let mut out = Vec::new();
    for (si, s) in samples.iter().enumerate() {
        let z = Element::from_sparse(n, s.point.clone());
        let clause_i = s.tangent.dim() == expected;
        let line = Subspace::from_rows(n, vec![s.point.clone()]);
        let mut clause_ii = true;
        for w in s.tangent.basis() {
            let v = alg.bracket(&Element::from_sparse(n, w.clone()), &z)?;
            if !line.contains_vec(&v.coords) {
                clause_ii = false;
            }
        }
        // perp of the tangent space under the Killing form
        let mut gram_rows = Vec::new();
        for t in s.tangent.basis() {
            let mut row: Vec<(u32, Rat)> = Vec::new();
            for j in 0..n {
                let mut acc = Rat::zero();
                for (k, tv) in t {
                    let g = &alg.killing[*k as usize][j];
                    if !g.is_zero() {
                        acc += tv * g;
                    }
                }
                if !acc.is_zero() {
                    row.push((j as u32, acc));
                }
            }
            gram_rows.push(row);
        }
        let perp = kernel(&SparseMat::from_rows(n, gram_rows));
        let mut clause_iii = true;
        for p in perp.basis() {
            for t in s.tangent.basis() {
                let v = alg.bracket(
                    &Element::from_sparse(n, p.clone()),
                    &Element::from_sparse(n, t.clone()),
                )?;
                if !s.tangent.contains_vec(&v.coords) {
                    clause_iii = false;
                }
            }
        }
        // contact hyperplane inside the tangent space
        let mut dz_rows = Vec::new();
        for (ti, t) in s.tangent.basis().iter().enumerate() {
            let v = alg.bracket(&Element::from_sparse(n, t.clone()), &z)?;
            for (c, val) in v.coords {
                dz_rows.push((c as usize, ti, val));
            }
        }
        let map = SparseMat::from_triples(n, s.tangent.dim(), dz_rows)?;
        let dz_coords = kernel(&map);
        let mut clause_iv = dz_coords.dim() == s.tangent.dim().saturating_sub(1);
        for coords in dz_coords.basis() {
            let mut terms = Vec::new();
            for (ti, c) in coords {
                for (col, v) in &s.tangent.basis()[*ti as usize] {
                    terms.push((*col, c * v));
                }
            }
            let d = sv_collect(terms);
            let v = alg.bracket(&z, &Element::from_sparse(n, d))?;
            if !v.is_zero() {
                clause_iv = false;
            }
        }
        out.push(GuSampleReport {
            sample: si,
            tangent_dim: s.tangent.dim(),
            clause_i,
            clause_ii,
            clause_iii,
            clause_iv,
        });
    }
    Ok(GuReport { samples: out })
}

/// The contact hyperplane at a sample, as a subspace of g.
pub fn contact_hyperplane(alg: &LieAlgebra, s: &OrbitSample) -> Result<Subspace> {
    let n = alg.dim;
    let z = Element::from_sparse(n, s.point.clone());
    let mut dz_rows = Vec::new();
    for (ti, t) in s.tangent.basis().iter().enumerate() {
        let v = alg.bracket(&Element::from_sparse(n, t.clone()), &z)?;
        for (c, val) in v.coords {
            dz_rows.push((c as usize, ti, val));
        }
    }
    let map = SparseMat::from_triples(n, s.tangent.dim(), dz_rows)?;
    let coords = kernel(&map);
    let vectors = coords.basis().iter().map(|cv| {
        let mut terms = Vec::new();
        for (ti, c) in cv {
            for (col, v) in &s.tangent.basis()[*ti as usize] {
                terms.push((*col, c * v));
            }
        }
        sv_collect(terms)
    });
    Ok(Subspace::from_rows(n, vectors))
}
