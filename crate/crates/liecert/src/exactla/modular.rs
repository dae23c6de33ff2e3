//! Modular-rank shortcuts with a one-directional soundness rule.
//!
//! For any prime not dividing a stored denominator, the rank of a rational
//! matrix reduced mod p is at most its rational rank. If a verified exact
//! subspace of the kernel already accounts for all of `cols - rank_p`
//! dimensions, the rational kernel is pinned exactly. A failed bound is
//! never evidence of anything: the outcome stays UNRESOLVED.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::sparse::{sv_dot, SparseMat};
use super::subspace::Subspace;
use crate::{Error, Rat, Result};

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all p < 3,215,031,751.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rat_mod(x: &Rat, p: u64) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64().expect("mod fits");
    if den == 0 {
        return Err(Error::PrimeDividesDenominator(p));
    }
    let num = x.numer().mod_floor(&pb).to_u64().expect("mod fits");
    Ok(num * mod_inv(den, p) % p)
}

/// Rank of `m` over F_p. Errors if p divides any stored denominator.
pub fn modular_rank(m: &SparseMat, p: u64) -> Result<usize> {
    assert!(p > 1 && p < 1 << 31, "word-sized prime expected");
    // Component split mirrors the exact path; each block is eliminated
    // densely over the remapped columns.
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
    let mut rows_of: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for (r, row) in m.row_iter().enumerate() {
        if let Some((first, _)) = row.first() {
            rows_of.entry(find(&mut parent, *first)).or_default().push(r);
        }
    }
    let mut cols_of: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for c in 0..cols as u32 {
        cols_of.entry(find(&mut parent, c)).or_default().push(c);
    }

    let mut total = 0usize;
    for (root, rows) in rows_of {
        let comp_cols = &cols_of[&root];
        let local_of: std::collections::BTreeMap<u32, usize> = comp_cols
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i))
            .collect();
        let width = comp_cols.len();
        // Echelon rows over F_p, indexed by pivot position.
        let mut basis: Vec<Option<Vec<u64>>> = vec![None; width];
        let mut rank = 0usize;
        for r in rows {
            let mut dense = vec![0u64; width];
            for (c, v) in m.row(r) {
                dense[local_of[c]] = rat_mod(v, p)?;
            }
            let mut lead = 0usize;
            while lead < width {
                if dense[lead] == 0 {
                    lead += 1;
                    continue;
                }
                match &basis[lead] {
                    Some(b) => {
                        let factor = p - dense[lead];
                        for k in lead..width {
                            if b[k] != 0 {
                                dense[k] = (dense[k] + factor * b[k]) % p;
                            }
                        }
                        lead += 1;
                    }
                    None => {
                        let inv = mod_inv(dense[lead], p);
                        for x in dense[lead..].iter_mut() {
                            *x = *x * inv % p;
                        }
                        basis[lead] = Some(dense);
                        rank += 1;
                        break;
                    }
                }
            }
            if rank == width {
                break;
            }
        }
        total += rank;
    }
    Ok(total)
}

/// Outcome of a modular nullity certification.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NullityOutcome {
    /// Some prime achieved rank = cols - dim(known kernel); the rational
    /// kernel equals the known kernel exactly.
    Certified { prime: u64, rank: usize },
    /// No tried prime achieved the bound. Says nothing negative.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CertifiedNullity {
    pub outcome: NullityOutcome,
    /// Every (prime, achieved rank) pair, in trial order.
    pub trials: Vec<(u64, usize)>,
    /// Primes that divided a denominator and were replaced.
    pub resampled: Vec<u64>,
    pub known_kernel_dim: usize,
    pub cols: usize,
}

impl CertifiedNullity {
    pub fn certified_nullity(&self) -> Option<usize> {
        match self.outcome {
            NullityOutcome::Certified { .. } => Some(self.known_kernel_dim),
            NullityOutcome::Unresolved => None,
        }
    }
}

/// Certify that the kernel of `m` is exactly `known_kernel`.
///
/// `known_kernel` is first verified to lie inside the kernel by exact
/// matrix-vector products; the modular ranks then bound the nullity from
/// above. `next_prime` supplies replacement primes when one divides a stored
/// denominator; `attempts` is the number of usable primes to try.
pub fn certify_nullity(
    m: &SparseMat,
    known_kernel: &Subspace,
    attempts: usize,
    mut next_prime: impl FnMut() -> u64,
) -> Result<CertifiedNullity> {
    if known_kernel.ambient() != m.cols() {
        return Err(Error::AmbientMismatch {
            have: known_kernel.ambient(),
            want: m.cols(),
        });
    }
    for v in known_kernel.basis() {
        for row in m.row_iter() {
            if !sv_dot(row, v).is_zero() {
                return Err(Error::Internal(
                    "known kernel is not annihilated by the matrix".into(),
                ));
            }
        }
    }
    let target = m.cols() - known_kernel.dim();
    let mut trials = Vec::new();
    let mut resampled = Vec::new();
    let mut outcome = NullityOutcome::Unresolved;
    let mut done = 0;
    let mut guard = 0;
    while done < attempts {
        guard += 1;
        if guard > 64 * attempts + 64 {
            break;
        }
        let p = next_prime();
        match modular_rank(m, p) {
            Ok(r) => {
                trials.push((p, r));
                done += 1;
                if r == target {
                    if let NullityOutcome::Unresolved = outcome {
                        outcome = NullityOutcome::Certified { prime: p, rank: r };
                    }
                }
                debug_assert!(r <= target, "modular rank exceeded rational rank bound");
            }
            Err(Error::PrimeDividesDenominator(_)) => resampled.push(p),
            Err(e) => return Err(e),
        }
    }
    Ok(CertifiedNullity {
        outcome,
        trials,
        resampled,
        known_kernel_dim: known_kernel.dim(),
        cols: m.cols(),
    })
}

/// Draw random primes in `[2^30, 2^31)` from a deterministic stream.
pub fn prime_stream(mut rng: impl rand::Rng + 'static) -> impl FnMut() -> u64 {
    move || loop {
        let candidate: u64 = rng.random_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn identity_certifies_zero_kernel() {
        let m = SparseMat::identity(4);
        let res = certify_nullity(&m, &Subspace::zero(4), 1, || 1_073_741_827).unwrap();
        assert!(matches!(res.outcome, NullityOutcome::Certified { .. }));
        assert_eq!(res.certified_nullity(), Some(0));
    }

    #[test]
    fn rank_drop_mod_small_prime_resolves_after_resample() {
        // 1x1 matrix [p]: rank drops mod p, full rank mod any other prime.
        let p = 1_073_741_827u64; // prime
        let m = SparseMat::from_triples(1, 1, vec![(0, 0, rat(p as i64))]).unwrap();
        assert_eq!(modular_rank(&m, p).unwrap(), 0);
        let other = 1_073_741_831u64;
        assert!(is_prime(other));
        assert_eq!(modular_rank(&m, other).unwrap(), 1);

        let res = certify_nullity(&m, &Subspace::zero(1), 1, || p).unwrap();
        assert_eq!(res.outcome, NullityOutcome::Unresolved);

        let mut primes = vec![other, p].into_iter();
        let res = certify_nullity(&m, &Subspace::zero(1), 2, move || primes.next().unwrap())
            .unwrap();
        assert!(matches!(
            res.outcome,
            NullityOutcome::Certified { prime, .. } if prime == other
        ));
    }

    #[test]
    fn denominator_collision_is_resampled() {
        let p = 1_073_741_827u64;
        let m = SparseMat::from_triples(1, 1, vec![(0, 0, Rat::new(1.into(), (p as i64).into()))])
            .unwrap();
        let mut primes = vec![p, 1_073_741_831].into_iter();
        let res = certify_nullity(&m, &Subspace::zero(1), 1, move || primes.next().unwrap())
            .unwrap();
        assert_eq!(res.resampled, vec![p]);
        assert!(matches!(res.outcome, NullityOutcome::Certified { .. }));
    }

    #[test]
    fn bad_known_kernel_is_rejected() {
        let m = SparseMat::identity(2);
        let claimed = Subspace::from_rows(2, vec![vec![(0, rat(1))]]);
        assert!(certify_nullity(&m, &claimed, 1, || 1_073_741_827).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 2u64..2000 {
            let by_trial = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0) && n >= 2;
            assert_eq!(is_prime(n), by_trial, "n = {n}");
        }
    }
}
